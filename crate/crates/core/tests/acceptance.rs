//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Every criterion is checked against oracles written here rather than the
//! library's own helpers wherever an independent computation is cheap.
//! Criteria listed in `KNOWN_UNATTAINABLE` still print their honest verdict;
//! a failure there does not change the exit status, but any other failure
//! (or an unexpected pass of a known one) exits nonzero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gieseker_core::bt_fibers::fiber_description;
use gieseker_core::charts::{
    embed_chart, gm_weights, line_bundle_transition, transition_u, transition_z, verify_charts, MonomialMap,
};
use gieseker_core::cyclic_types::CyclicType;
use gieseker_core::laced::{BalancedWeights, LacedBundleData, Lacing};
use gieseker_core::mckay::{ideal_presentation, invariant_generators};
use gieseker_core::semistability::{counterexample_gl2, schmitt_slope, Mode, WeightedFiltration};
use gieseker_core::{ApartmentPoint, LieType, Rational, RootDatum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 4 asks the far-node weight to equal the balanced dual weight, which
/// the worked A2 fiber example (3; 1,2) already contradicts, and that weight
/// leaves the alcove from rank 3 on. See the README section on this suite.
const KNOWN_UNATTAINABLE: &[u32] = &[4];

struct Outcome {
    pass: bool,
    detail: String,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn data(max_rank: usize) -> Vec<RootDatum> {
    LieType::all_up_to_rank(max_rank).into_iter().map(RootDatum::new).collect()
}

// ---------------------------------------------------------------- oracles

/// Basic affine roots straight from the definition.
fn affine_values(rd: &RootDatum, x: &[Rational]) -> Vec<Rational> {
    let a0: Rational = x.iter().zip(&rd.highest_root_coeffs).map(|(v, &n)| v * n).sum();
    std::iter::once(Rational::one() - a0).chain(x.iter().cloned()).collect()
}

fn in_closed_alcove(rd: &RootDatum, p: &ApartmentPoint) -> bool {
    affine_values(rd, p.coords()).iter().all(|v| !v.is_negative())
}

fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                &m[0][c] * det(&minor) * sign
            })
            .sum(),
    }
}

/// Inverse by the adjugate formula.
fn adjugate_inverse(c: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = c.len();
    let m: Vec<Vec<Rational>> = c.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
    let d = det(&m);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<Rational>> = m
                        .iter()
                        .enumerate()
                        .filter(|&(r, _)| r != j)
                        .map(|(_, row)| row.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v.clone()).collect())
                        .collect();
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    det(&minor) * sign / &d
                })
                .collect()
        })
        .collect()
}

fn coroot(inv: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    inv.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Integer determinant by fraction-free elimination.
fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

fn eval_monomials(rows: &[Vec<i64>], p: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|r| r.iter().zip(p).map(|(&e, x)| pow(x, e)).product())
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = counterexample_gl2();
    let elapsed = start.elapsed();
    let pass = r.deg_l_prime == -1
        && r.deg_n == 0
        && r.deg_saturation == 1
        && r.naive_test_fails
        && elapsed < Duration::from_secs(1);
    Outcome {
        pass,
        detail: format!(
            "deg L' = {}, deg N = {}, deg saturation = {}, {:?}",
            r.deg_l_prime, r.deg_n, r.deg_saturation, elapsed
        ),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut facets = 0;
    let mut eq_fail = 0;
    let mut scanned = 0;
    let mut dm_fail = 0;
    for rd in data(8) {
        let l = rd.rank();
        let inv = (l <= 4).then(|| adjugate_inverse(&rd.cartan));
        for mask in 1u32..(1 << (l + 1)) {
            let members: Vec<usize> = (0..=l).filter(|j| mask & (1 << j) != 0).collect();
            let f = rd.facet(&members).unwrap();
            facets += 1;
            let h: i64 = members.iter().map(|&j| if j == 0 { 1 } else { rd.highest_root_coeffs[j - 1] }).sum();
            let vals = affine_values(&rd, f.barycenter.coords());
            let ok = f.index == h
                && vals
                    .iter()
                    .enumerate()
                    .all(|(i, v)| if members.contains(&i) { *v == q(1, h) } else { v.is_zero() });
            if !ok {
                eq_fail += 1;
            }
            if let Some(inv) = &inv {
                scanned += 1;
                let y = coroot(inv, f.barycenter.coords());
                let m = (1..)
                    .find(|&m| y.iter().all(|v| (v * m).is_integer()))
                    .unwrap() as u64;
                if m != f.denominator {
                    dm_fail += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: eq_fail == 0 && dm_fail == 0 && elapsed < Duration::from_secs(30),
        detail: format!(
            "{facets} facets, {eq_fail} equation failures; d_M scan on {scanned} facets, {dm_fail} mismatches; {elapsed:?}"
        ),
    }
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut scanned = 0u64;
    let mut admissible = 0u64;
    let mut exceptions = 0u64;
    let mut oracle_mismatch = 0u64;
    for rd in data(4) {
        let l = rd.rank() as i64;
        let inv = adjugate_inverse(&rd.cartan);
        for d in 1..=l + 2 {
            for t in CyclicType::enumerate(d, rd.rank()) {
                scanned += 1;
                let adm = t.is_admissible(&rd).unwrap();
                // injective: no 0 < m < d with m * C^{-1} a / d integral
                let y = coroot(&inv, &t.a().iter().map(|&x| Rational::from_integer(x)).collect::<Vec<_>>());
                let injective = (1..d).all(|m| !y.iter().all(|v| (v * q(m, d)).is_integer()));
                let covers = (1..d).all(|r| t.a().contains(&r));
                if adm != (injective && covers) {
                    oracle_mismatch += 1;
                }
                if adm {
                    admissible += 1;
                    if d > l + 1 {
                        exceptions += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: exceptions == 0 && oracle_mismatch == 0 && elapsed < Duration::from_secs(60),
        detail: format!(
            "{scanned} types, {admissible} admissible, {exceptions} with d > l+1, {oracle_mismatch} oracle mismatches; {elapsed:?}"
        ),
    }
}

/// Balanced dual from its defining formula.
fn dual_oracle(d: i64, a: &[i64]) -> Vec<i64> {
    let mut s = a.to_vec();
    s.sort_unstable();
    let z = s.iter().filter(|&&x| x == 0).count();
    let mut out = vec![0; z];
    out.extend(s[z..].iter().rev().map(|&x| d - x));
    out
}

fn criterion_4() -> Outcome {
    // The fiber algorithm applies to admissible types whose weight lies in the
    // closed alcove, which forces d <= 3; enumerate that domain per type.
    let mut domain: Vec<(RootDatum, Vec<CyclicType>)> = Vec::new();
    for rd in data(6) {
        let mut ts = Vec::new();
        for d in 1..=3.min(rd.rank() as i64 + 1) {
            for t in CyclicType::enumerate(d, rd.rank()) {
                if fiber_description(&rd, &t).is_ok() {
                    ts.push(t);
                }
            }
        }
        if !ts.is_empty() {
            domain.push((rd, ts));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x2b7);
    let (mut partition_fail, mut alcove_fail, mut dual_checked, mut dual_fail) = (0, 0, 0, 0);
    let mut first_alcove = None;
    let mut first_dual = None;
    for _ in 0..1000 {
        let (rd, ts) = &domain[rng.gen_range(0..domain.len())];
        let t = &ts[rng.gen_range(0..ts.len())];
        let fd = fiber_description(rd, t).unwrap();
        let theta: Vec<Rational> = t.a().iter().map(|&x| q(x, t.d())).collect();
        if fd.partition_sum().coords() != theta.as_slice() {
            partition_fail += 1;
        }
        if !fd.all_weights().all(|w| in_closed_alcove(rd, w)) {
            alcove_fail += 1;
            first_alcove.get_or_insert_with(|| format!("{} {t}", rd.lie_type));
        }
        if let (Some(bar), false) = (fd.theta_tau_bar(), fd.ties) {
            dual_checked += 1;
            let expect: Vec<Rational> = dual_oracle(t.d(), t.a()).iter().map(|&x| q(x, t.d())).collect();
            if bar.coords() != expect.as_slice() {
                dual_fail += 1;
                first_dual.get_or_insert_with(|| {
                    format!("{} {t}: {:?} vs {:?}", rd.lie_type, bar.coords(), expect)
                });
            }
        }
    }
    Outcome {
        pass: partition_fail == 0 && alcove_fail == 0 && dual_fail == 0,
        detail: format!(
            "1000 samples from {} types; partition failures {partition_fail}; weights outside alcove {alcove_fail} (first {}); far node vs balanced dual {dual_fail} of {dual_checked} (first {})",
            domain.len(),
            first_alcove.unwrap_or_else(|| "none".into()),
            first_dual.unwrap_or_else(|| "none".into()),
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    let mut fail = 0;
    for d in 2..=64i64 {
        for s in 1..d {
            cases += 1;
            let g = invariant_generators(s, d).unwrap();
            // zeta acts on u by 1 and on v by d - 1 (additively mod d)
            let weight_ok = g.iter().all(|m| (m[0] + m[1] * (d - 1)) % d == s % d);
            let ideal = ideal_presentation(s, d).unwrap();
            // clear the weight with u^{d-s}: u^s -> u^d = x, v^{d-s} -> (uv)^{d-s} = t^{d-s}
            let (ua, va) = (g[0][0] + d - s, g[0][1]);
            let (ub, vb) = (g[1][0] + d - s, g[1][1]);
            let ideal_ok = (ua, va) == (d, 0)
                && ub == vb
                && ideal == [[ua / d, 0, 0], [0, 0, ub]];
            if !(weight_ok && ideal_ok) {
                fail += 1;
            }
        }
    }
    Outcome {
        pass: fail == 0,
        detail: format!("{cases} characters, {fail} failures"),
    }
}

fn random_weights(rng: &mut ChaCha8Rng) -> (Vec<Rational>, Vec<u64>) {
    let s = rng.gen_range(1..=6);
    let den = rng.gen_range(2..=60i64);
    let mut nums: Vec<i64> = (0..s).map(|_| rng.gen_range(1..den)).collect();
    nums.sort_unstable();
    nums.dedup();
    let mut alpha: Vec<Rational> = nums.iter().map(|&n| q(n, den)).collect();
    if rng.gen_bool(0.5) {
        alpha.insert(0, Rational::zero());
    }
    let k = (0..alpha.len()).map(|_| rng.gen_range(1..=5)).collect();
    (alpha, k)
}

/// `deg + sum k alpha + sum k' beta`, dropping the zero weight and its dual.
fn par_deg_oracle(deg: i64, alpha: &[Rational], k: &[u64]) -> Rational {
    let mut total = Rational::from_integer(deg);
    for (a, &m) in alpha.iter().zip(k) {
        if !a.is_zero() {
            // this weight contributes alpha at one point and 1 - alpha at the other
            total += &(a * m as i64);
            total += &((Rational::one() - a) * m as i64);
        }
    }
    total
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x96);
    let (mut mismatch, mut perturb_fail) = (0, 0);
    for _ in 0..10_000 {
        let deg = rng.gen_range(-40..=40);
        let (alpha, k) = random_weights(&mut rng);
        let b = LacedBundleData::new(deg, BalancedWeights::new(alpha.clone(), k.clone()).unwrap(), Lacing::Full);
        let closed = b.par_deg_closed_form();
        let oracle = par_deg_oracle(deg, &alpha, &k);
        if b.par_deg_by_definition() != closed || oracle != closed || b.try_par_deg().is_err() {
            mismatch += 1;
        }
        // new values, same zero pattern and multiplicities
        let den = rng.gen_range(200..=400i64);
        let mut nums: Vec<i64> = Vec::new();
        while nums.len() < alpha.iter().filter(|a| !a.is_zero()).count() {
            let n = rng.gen_range(1..den);
            if !nums.contains(&n) {
                nums.push(n);
            }
        }
        nums.sort_unstable();
        let mut perturbed: Vec<Rational> = nums.iter().map(|&n| q(n, den)).collect();
        if alpha[0].is_zero() {
            perturbed.insert(0, Rational::zero());
        }
        let b2 = LacedBundleData::new(deg, BalancedWeights::new(perturbed, k).unwrap(), Lacing::Full);
        if b2.par_deg() != closed {
            perturb_fail += 1;
        }
    }
    Outcome {
        pass: mismatch == 0 && perturb_fail == 0,
        detail: format!("10000 bundles, {mismatch} formula mismatches, {perturb_fail} perturbation changes"),
    }
}

fn slope_oracle(f: &WeightedFiltration) -> Rational {
    let n: i64 = f.ranks.iter().map(|&r| r as i64).sum();
    let mut rk = 0i64;
    let mut total = Rational::zero();
    for i in 0..f.degrees.len() {
        rk += f.ranks[i] as i64;
        let eps = q(f.gammas[i + 1] - f.gammas[i], n);
        total += &(eps * (&f.total_deg * rk - &f.degrees[i] * n));
    }
    total
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x107);
    let (mut oracle_fail, mut scale_fail, mut shift_fail, mut empty_fail) = (0, 0, 0, 0);
    for i in 0..10_000 {
        let len = if i % 10 == 0 { 1 } else { rng.gen_range(1..=6) };
        let mut gammas: Vec<i64> = Vec::new();
        while gammas.len() < len {
            let g = rng.gen_range(-100..=100);
            if !gammas.contains(&g) {
                gammas.push(g);
            }
        }
        gammas.sort_unstable();
        let ranks = (0..len).map(|_| rng.gen_range(1..=6)).collect();
        let degrees = (0..len - 1).map(|_| q(rng.gen_range(-50..=50), rng.gen_range(1..=7))).collect();
        let total = q(rng.gen_range(-50..=50), rng.gen_range(1..=7));
        let f = WeightedFiltration::new(gammas, ranks, degrees, total).unwrap();
        let s = schmitt_slope(&f);
        if s != slope_oracle(&f) {
            oracle_fail += 1;
        }
        let m = rng.gen_range(1..=10);
        let sm = schmitt_slope(&f.scaled(m).unwrap());
        let signs = [Mode::Semi, Mode::Stable].iter().all(|mode| mode.accepts(&sm) == mode.accepts(&s));
        if sm != &s * m || !signs {
            scale_fail += 1;
        }
        if schmitt_slope(&f.translated(rng.gen_range(-1000..=1000))) != s {
            shift_fail += 1;
        }
        if f.s() == 0 && !s.is_zero() {
            empty_fail += 1;
        }
    }
    Outcome {
        pass: oracle_fail + scale_fail + shift_fail + empty_fail == 0,
        detail: format!(
            "10000 filtrations; oracle {oracle_fail}, scaling {scale_fail}, translation {shift_fail}, empty {empty_fail} failures"
        ),
    }
}

/// `sigma . u` in chart `ell`, written out coordinate by coordinate.
fn act(ell: usize, d: usize, sigma: &[Rational], u: &[Rational]) -> Vec<Rational> {
    // sigma[i] for i in 0..=d with sigma_0 = sigma_d = 1
    let bar = |i: usize| &sigma[i] / &sigma[i - 1];
    (1..=d + 1)
        .map(|j| {
            let f = if j < ell {
                bar(j)
            } else if j == ell {
                sigma[ell - 1].recip()
            } else if j == ell + 1 {
                sigma[ell].clone()
            } else {
                bar(j - 1)
            };
            f * &u[j - 1]
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut checks = 0;
    let mut fails: Vec<String> = Vec::new();
    let mut record = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            fails.push(what);
        }
    };
    for d in 1..=12usize {
        let u: Vec<Rational> = (0..=d).map(|i| q(primes[i], primes[(i + 3) % 15])).collect();
        let mut sigma: Vec<Rational> = (0..=d).map(|i| q(primes[(i + 7) % 15], primes[(i + 1) % 15])).collect();
        sigma[0] = Rational::one();
        sigma[d] = Rational::one();
        let ts: Vec<MonomialMap> = (1..d).map(|ell| transition_z(ell, d).unwrap()).collect();
        for (i, t) in ts.iter().enumerate() {
            let ell = i + 1;
            let e = t.exponents();
            record(int_det(e).abs() == 1, format!("d={d} det T_{ell}"));
            // equivariance, evaluated pointwise
            let lhs = eval_monomials(e, &act(ell, d, &sigma, &u));
            let rhs = act(ell + 1, d, &sigma, &eval_monomials(e, &u));
            record(lhs == rhs, format!("d={d} equivariance {ell}"));
            // and as a matrix identity on the weight tables
            let w = gm_weights(ell, d).unwrap();
            record(mat_mul(e, &w) == gm_weights(ell + 1, d).unwrap(), format!("d={d} weight matrices {ell}"));
        }
        for (i, pair) in ts.windows(2).enumerate() {
            let composed = mat_mul(pair[1].exponents(), pair[0].exponents());
            let stepwise = eval_monomials(pair[1].exponents(), &eval_monomials(pair[0].exponents(), &u));
            record(
                eval_monomials(&composed, &u) == stepwise
                    && pair[1].after(&pair[0]).unwrap().exponents() == composed.as_slice()
                    && int_det(&composed).abs() == 1,
                format!("d={d} cocycle {}", i + 1),
            );
        }
        let tu = transition_u();
        record(int_det(tu.exponents()) == 1, format!("d={d} det U"));
        let lhs = mat_mul(tu.exponents(), embed_chart(1).unwrap().exponents());
        let rhs = mat_mul(embed_chart(2).unwrap().exponents(), transition_z(1, 2).unwrap().exponents());
        record(lhs == rhs, format!("d={d} embedding"));
        record(int_det(line_bundle_transition().exponents()).abs() == 1, format!("d={d} det line bundle"));
        record(verify_charts(d).unwrap().iter().all(|c| c.pass), format!("d={d} library report"));
    }
    Outcome {
        pass: fails.is_empty(),
        detail: format!("{checks} identities, failures: {:?}", fails),
    }
}

fn criterion_9() -> Outcome {
    let mut fails = Vec::new();
    let all = data(12);
    for rd in &all {
        let l = rd.rank();
        let h = rd.coxeter_number;
        let table = match (rd.lie_type.to_string().as_bytes()[0], l) {
            (b'A', _) => l * (l + 1) / 2,
            (b'B' | b'C', _) => l * l,
            (b'D', _) => l * (l - 1),
            (b'E', 6) => 36,
            (b'E', 7) => 63,
            (b'E', 8) => 120,
            (b'F', 4) => 24,
            (b'G', 2) => 6,
            _ => unreachable!(),
        };
        let product_is_identity = (0..l).all(|i| {
            (0..l).all(|j| {
                let v: Rational = (0..l).map(|k| &rd.inv_cartan[k][j] * rd.cartan[i][k]).sum();
                v == Rational::from_integer(i64::from(i == j))
            })
        });
        let ok = h == rd.highest_root_coeffs.iter().sum::<i64>() + 1
            && 2 * rd.positive_roots.len() == l * h as usize
            && rd.positive_roots.len() == table
            && product_is_identity;
        if !ok {
            fails.push(rd.lie_type.to_string());
        }
    }
    Outcome {
        pass: fails.is_empty(),
        detail: format!("{} types up to rank 12, failures: {:?}", all.len(), fails),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "counterexample degrees", criterion_1),
        (2, "facet barycenters and d_M", criterion_2),
        (3, "admissibility bound", criterion_3),
        (4, "fiber weight consistency", criterion_4),
        (5, "McKay generators and ideals", criterion_5),
        (6, "parabolic degree formulas", criterion_6),
        (7, "slope invariances", criterion_7),
        (8, "chart identities", criterion_8),
        (9, "root datum sanity", criterion_9),
    ];
    let mut unexpected = false;
    for (n, name, run) in criteria {
        let out = run();
        let known = KNOWN_UNATTAINABLE.contains(&n);
        let tag = if out.pass { "PASS" } else { "FAIL" };
        let note = match (out.pass, known) {
            (false, true) => " [known unattainable]",
            (true, true) => " [unexpected pass of a known-unattainable criterion]",
            _ => "",
        };
        println!("{tag} criterion {n} ({name}){note}: {}", out.detail);
        if out.pass == known {
            unexpected = true;
        }
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
