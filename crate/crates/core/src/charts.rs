//! Monomial atlases of the expanded degeneration `Z[d-1]` and of the minimal
//! resolution `U^(d)`.
//!
//! A [`MonomialMap`] is stored as its exponent matrix: row `i` lists the
//! exponents of the source coordinates in the `i`-th target coordinate, so
//! composition is matrix multiplication and Laurent inverses are integer
//! matrix inverses.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{invert, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MonomialMap {
    exponents: Vec<Vec<i64>>,
}

impl MonomialMap {
    pub fn new(exponents: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = exponents.first() else {
            return Err(Error::InvalidInput("monomial map with no target coordinates".into()));
        };
        let width = first.len();
        if let Some(row) = exponents.iter().find(|r| r.len() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: row.len(),
            });
        }
        Ok(MonomialMap { exponents })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap {
            exponents: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    pub fn source_dim(&self) -> usize {
        self.exponents[0].len()
    }

    pub fn target_dim(&self) -> usize {
        self.exponents.len()
    }

    /// `self` after `first`: the exponent matrix `self * first`.
    pub fn after(&self, first: &MonomialMap) -> Result<MonomialMap> {
        if self.source_dim() != first.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                got: first.target_dim(),
            });
        }
        let exponents = self
            .exponents
            .iter()
            .map(|row| {
                (0..first.source_dim())
                    .map(|j| row.iter().zip(&first.exponents).map(|(a, r)| a * r[j]).sum())
                    .collect()
            })
            .collect();
        Ok(MonomialMap { exponents })
    }

    fn as_rational(&self) -> Vec<Vec<Rational>> {
        self.exponents
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
            .collect()
    }

    /// Determinant of a square exponent matrix.
    pub fn determinant(&self) -> Option<i64> {
        let n = self.target_dim();
        if n != self.source_dim() {
            return None;
        }
        let mut m = self.as_rational();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Some(0);
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = &m[r][col] / &pivot;
                for c in col..n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= &delta;
                }
            }
        }
        det.to_i64()
    }

    /// Invertible over Laurent monomials: square with determinant `+-1`.
    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Some(1) | Some(-1))
    }

    pub fn inverse(&self) -> Option<MonomialMap> {
        if !self.is_unimodular() {
            return None;
        }
        let inv = invert(&self.as_rational())?;
        let exponents = inv
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(MonomialMap { exponents })
    }

    /// Evaluates the map at a point with nonzero rational coordinates.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        if point.len() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                got: point.len(),
            });
        }
        if point.iter().any(Rational::is_zero) {
            return Err(Error::InvalidInput("Laurent monomials need nonzero coordinates".into()));
        }
        Ok(self
            .exponents
            .iter()
            .map(|row| {
                row.iter()
                    .zip(point)
                    .map(|(&e, x)| {
                        let base = if e < 0 { x.recip() } else { x.clone() };
                        (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
                    })
                    .product()
            })
            .collect())
    }
}

fn check_chart(ell: usize, d: usize) -> Result<()> {
    if d < 2 || !(1..d).contains(&ell) {
        return Err(Error::OutOfRange(format!(
            "transition index {ell} not in 1..={} (d = {d})",
            d.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Transition from chart `ell` to chart `ell + 1` of `Z[d-1]` on the
/// coordinates `u_1, ..., u_{d+1}`:
/// `u_ell u_{ell+1}`, `u_{ell+1}^{-1}`, `u_{ell+1} u_{ell+2}`, identity elsewhere.
pub fn transition_z(ell: usize, d: usize) -> Result<MonomialMap> {
    check_chart(ell, d)?;
    let mut m = MonomialMap::identity(d + 1).exponents;
    let (a, b, c) = (ell - 1, ell, ell + 1);
    m[a][b] = 1;
    m[b][b] = -1;
    m[c][b] = 1;
    Ok(MonomialMap { exponents: m })
}

/// Transition `(a, b) -> (a^2 b, a^{-1})` between consecutive charts of `U^(d)`.
pub fn transition_u() -> MonomialMap {
    MonomialMap {
        exponents: vec![vec![2, 1], vec![-1, 0]],
    }
}

/// The chart maps `Z -> U` for `ell = 1, 2`:
/// `(a_1, b_1) = (u_2, u_1 u_3)` and `(a_2, b_2) = (u_1 u_3, u_2)`.
pub fn embed_chart(ell: usize) -> Result<MonomialMap> {
    let rows = match ell {
        1 => vec![vec![0, 1, 0], vec![1, 0, 1]],
        2 => vec![vec![1, 0, 1], vec![0, 1, 0]],
        _ => return Err(Error::OutOfRange(format!("embedding chart {ell} not in 1..=2"))),
    };
    Ok(MonomialMap { exponents: rows })
}

/// Transition `(b_0, z_1, z_2) -> (b_0^{-1}, z_1 b_0, z_2 b_0)` of the
/// tautological line bundle charts.
pub fn line_bundle_transition() -> MonomialMap {
    MonomialMap {
        exponents: vec![vec![-1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]],
    }
}

/// Weights of `G_m^d` on the coordinates of chart `ell` (`1..=d`).
///
/// Row `j` is the character of `u_j` in the basis `sigma_1, ..., sigma_d`,
/// with `sigma_0 = sigma_d = 1`, so the last column is always zero:
///
/// * `j < ell`: `sigma_j / sigma_{j-1}`
/// * `j = ell`: `sigma_{ell-1}^{-1}`
/// * `j = ell + 1`: `sigma_ell`
/// * `j > ell + 1`: `sigma_{j-1} / sigma_{j-2}`
pub fn gm_weights(ell: usize, d: usize) -> Result<Vec<Vec<i64>>> {
    if d < 1 || !(1..=d).contains(&ell) {
        return Err(Error::OutOfRange(format!("chart {ell} not in 1..={d}")));
    }
    let e = |i: usize| -> Vec<i64> {
        let mut v = vec![0; d];
        if (1..d).contains(&i) {
            v[i - 1] = 1;
        }
        v
    };
    let diff = |a: usize, b: usize| -> Vec<i64> { e(a).iter().zip(e(b)).map(|(x, y)| x - y).collect() };
    Ok((1..=d + 1)
        .map(|j| {
            if j < ell {
                diff(j, j - 1)
            } else if j == ell {
                e(ell - 1).iter().map(|x| -x).collect()
            } else if j == ell + 1 {
                e(ell)
            } else {
                diff(j - 1, j - 2)
            }
        })
        .collect())
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartCheck {
    pub name: String,
    pub pass: bool,
    /// The offending matrix when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending: Option<Vec<Vec<i64>>>,
}

impl ChartCheck {
    fn new(name: String, pass: bool, offending: impl FnOnce() -> Vec<Vec<i64>>) -> Self {
        let offending = (!pass).then(offending);
        ChartCheck { name, pass, offending }
    }
}

/// A generic point with distinct prime coordinates.
fn sample_point(n: usize) -> Vec<Rational> {
    const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    (0..n)
        .map(|i| Rational::new(PRIMES[i % 16], PRIMES[(i + 5) % 16]))
        .collect()
}

/// Checks every chart identity for `Z[d-1]`: unimodularity and inverses of
/// the transitions, the cocycle on consecutive pairs (matrix product against
/// evaluation at a generic point), compatibility of the chart maps to `U`,
/// and equivariance of the torus weights.
pub fn verify_charts(d: usize) -> Result<Vec<ChartCheck>> {
    if d < 1 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    let mut out = Vec::new();
    let ts: Vec<MonomialMap> = (1..d).map(|ell| transition_z(ell, d)).collect::<Result<_>>()?;

    for (i, t) in ts.iter().enumerate() {
        let ell = i + 1;
        out.push(ChartCheck::new(format!("unimodular Z transition {ell}"), t.is_unimodular(), || {
            t.exponents.clone()
        }));
        let round = t.inverse().map(|inv| inv.after(t)).transpose()?;
        let ok = round.as_ref() == Some(&MonomialMap::identity(d + 1));
        out.push(ChartCheck::new(format!("inverse Z transition {ell}"), ok, || {
            round.map(|r| r.exponents).unwrap_or_else(|| t.exponents.clone())
        }));
    }

    let p = sample_point(d + 1);
    for (i, pair) in ts.windows(2).enumerate() {
        let ell = i + 1;
        let direct = pair[1].after(&pair[0])?;
        let ok = direct.evaluate(&p)? == pair[1].evaluate(&pair[0].evaluate(&p)?)?
            && direct.is_unimodular();
        out.push(ChartCheck::new(format!("cocycle charts {ell} -> {}", ell + 2), ok, || {
            direct.exponents.clone()
        }));
    }
    if let Some(first) = ts.first() {
        let chain = ts[1..].iter().try_fold(first.clone(), |acc, t| t.after(&acc))?;
        let ok = chain.is_unimodular()
            && chain.evaluate(&p)? == ts.iter().try_fold(p.clone(), |x, t| t.evaluate(&x))?;
        out.push(ChartCheck::new(format!("cocycle charts 1 -> {d}"), ok, || chain.exponents.clone()));
    }

    let tu = transition_u();
    out.push(ChartCheck::new("unimodular U transition".into(), tu.determinant() == Some(1), || {
        tu.exponents.clone()
    }));
    let lhs = tu.after(&embed_chart(1)?)?;
    let rhs = embed_chart(2)?.after(&transition_z(1, 2)?)?;
    out.push(ChartCheck::new("embedding compatibility".into(), lhs == rhs, || {
        lhs.exponents.iter().chain(rhs.exponents.iter()).cloned().collect()
    }));
    let lb = line_bundle_transition();
    let lb2 = lb.after(&lb)?;
    out.push(ChartCheck::new(
        "line bundle transition is an involution".into(),
        lb2 == MonomialMap::identity(3),
        || lb2.exponents.clone(),
    ));

    let weights: Vec<Vec<Vec<i64>>> = (1..=d).map(|ell| gm_weights(ell, d)).collect::<Result<_>>()?;
    for (ell, w) in weights.iter().enumerate() {
        let sums: Vec<i64> = (0..d).map(|c| w.iter().map(|r| r[c]).sum()).collect();
        out.push(ChartCheck::new(
            format!("torus weight of the product of coordinates, chart {}", ell + 1),
            sums.iter().all(|&s| s == 0),
            || vec![sums.clone()],
        ));
    }
    for (i, t) in ts.iter().enumerate() {
        let pushed = mat_mul(&t.exponents, &weights[i]);
        out.push(ChartCheck::new(
            format!("torus equivariance {} -> {}", i + 1, i + 2),
            pushed == weights[i + 1],
            || pushed.clone(),
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainBundleReport {
    pub standard: bool,
    pub strictly_standard: bool,
    /// Entries `(row, column, value)` outside `[0, 1]`.
    pub violations: Vec<(usize, usize, i64)>,
    /// Rows with no entry equal to 1.
    pub rows_without_one: Vec<usize>,
    /// Torsion-free direct image is not a numerical condition.
    pub admissible: &'static str,
}

/// Standard: every `a_ij` in `[0, 1]`. Strictly standard: additionally every
/// component has some `a_ij = 1`.
pub fn chain_bundle_check(bidegrees: &[Vec<i64>]) -> ChainBundleReport {
    let violations: Vec<(usize, usize, i64)> = bidegrees
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &a)| !(0..=1).contains(&a))
                .map(move |(j, &a)| (i, j, a))
        })
        .collect();
    let rows_without_one: Vec<usize> = bidegrees
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.contains(&1))
        .map(|(i, _)| i)
        .collect();
    let standard = violations.is_empty();
    ChainBundleReport {
        standard,
        strictly_standard: standard && rows_without_one.is_empty(),
        violations,
        rows_without_one,
        admissible: "not checked",
    }
}
