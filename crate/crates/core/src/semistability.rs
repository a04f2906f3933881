//! Weighted filtrations, Schmitt slopes and semistability verdicts.
//!
//! A one-parameter subgroup `lambda` of the torus splits a representation
//! into eigenspaces with weights `gamma_1 < ... < gamma_{s+1}`. The partial
//! sums `W_1 < ... < W_s < W` carry the weights
//! `eps_i = (gamma_{i+1} - gamma_i) / n`, and the Schmitt slope of the
//! filtration is
//!
//! ```text
//! L = sum_i eps_i (deg W * rk W_i - deg W_i * rk W)
//! ```
//!
//! with parabolic degrees in place of degrees for the parabolic slope.
//! A family of filtrations is semistable when every slope is `>= 0` and
//! stable when every slope is `> 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic_types::RepresentationWeights;
use crate::error::{Error, Result};
use crate::laced::{descend_rank1, pullback_mod_torsion, LocalType, Rank1NodalSheaf};
use crate::rational::Rational;

/// A cocharacter `G_m -> T`, in coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneParamSubgroup(pub Vec<i64>);

/// Eigenvalue data of `lambda` acting on a representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationShape {
    pub gammas: Vec<i64>,
    pub ranks: Vec<u64>,
    pub epsilons: Vec<Rational>,
}

fn epsilons(gammas: &[i64], n: u64) -> Vec<Rational> {
    gammas
        .windows(2)
        .map(|w| Rational::new(w[1] - w[0], n as i64))
        .collect()
}

/// Distinct values of `<chi_k, lambda>` in ascending order, their
/// multiplicities and the resulting weights `eps_i`.
pub fn filtration_shape(lambda: &OneParamSubgroup, rep: &RepresentationWeights) -> Result<FiltrationShape> {
    if lambda.0.len() != rep.rank() {
        return Err(Error::DimensionMismatch {
            expected: rep.rank(),
            got: lambda.0.len(),
        });
    }
    let mut values: Vec<i64> = rep
        .weights
        .iter()
        .map(|w| w.iter().zip(&lambda.0).map(|(a, b)| a * b).sum())
        .collect();
    values.sort_unstable();
    let mut gammas: Vec<i64> = Vec::new();
    let mut ranks: Vec<u64> = Vec::new();
    for v in values {
        if gammas.last() == Some(&v) {
            *ranks.last_mut().unwrap() += 1;
        } else {
            gammas.push(v);
            ranks.push(1);
        }
    }
    let epsilons = epsilons(&gammas, rep.dim() as u64);
    Ok(FiltrationShape {
        gammas,
        ranks,
        epsilons,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    #[default]
    Plain,
    Parabolic,
}

/// A weighted filtration `0 < W_1 < ... < W_s < W` with the degrees of its
/// proper steps and of `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFiltration")]
pub struct WeightedFiltration {
    pub gammas: Vec<i64>,
    /// Eigenspace dimensions `r^1, ..., r^{s+1}`.
    pub ranks: Vec<u64>,
    /// `deg W_1, ..., deg W_s`.
    pub degrees: Vec<Rational>,
    pub total_deg: Rational,
    #[serde(default)]
    pub kind: DegreeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Deserialize)]
struct RawFiltration {
    gammas: Vec<i64>,
    ranks: Vec<u64>,
    degrees: Vec<Rational>,
    total_deg: Rational,
    #[serde(default)]
    kind: DegreeKind,
    #[serde(default)]
    label: Option<String>,
}

impl TryFrom<RawFiltration> for WeightedFiltration {
    type Error = Error;

    fn try_from(r: RawFiltration) -> Result<Self> {
        let mut f = WeightedFiltration::new(r.gammas, r.ranks, r.degrees, r.total_deg)?;
        f.kind = r.kind;
        f.label = r.label;
        Ok(f)
    }
}

impl WeightedFiltration {
    pub fn new(
        gammas: Vec<i64>,
        ranks: Vec<u64>,
        degrees: Vec<Rational>,
        total_deg: Rational,
    ) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::InvalidInput("a filtration needs at least one weight".into()));
        }
        if gammas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("gammas must be strictly ascending".into()));
        }
        if ranks.len() != gammas.len() {
            return Err(Error::DimensionMismatch {
                expected: gammas.len(),
                got: ranks.len(),
            });
        }
        if ranks.contains(&0) {
            return Err(Error::InvalidInput("eigenspace ranks must be positive".into()));
        }
        if degrees.len() + 1 != gammas.len() {
            return Err(Error::DimensionMismatch {
                expected: gammas.len() - 1,
                got: degrees.len(),
            });
        }
        Ok(WeightedFiltration {
            gammas,
            ranks,
            degrees,
            total_deg,
            kind: DegreeKind::Plain,
            label: None,
        })
    }

    pub fn with_kind(mut self, kind: DegreeKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Number of proper steps.
    pub fn s(&self) -> usize {
        self.degrees.len()
    }

    pub fn n(&self) -> u64 {
        self.ranks.iter().sum()
    }

    /// `rk W_1, ..., rk W_s`.
    pub fn step_ranks(&self) -> Vec<u64> {
        self.ranks[..self.s()]
            .iter()
            .scan(0, |acc, r| {
                *acc += r;
                Some(*acc)
            })
            .collect()
    }

    pub fn epsilons(&self) -> Vec<Rational> {
        epsilons(&self.gammas, self.n())
    }

    /// The same filtration for `lambda^m`: every gamma multiplied by `m > 0`.
    pub fn scaled(&self, m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::InvalidInput(format!("scale must be positive, got {m}")));
        }
        let mut f = self.clone();
        f.gammas.iter_mut().for_each(|g| *g *= m);
        Ok(f)
    }

    /// Every gamma shifted by `c`.
    pub fn translated(&self, c: i64) -> Self {
        let mut f = self.clone();
        f.gammas.iter_mut().for_each(|g| *g += c);
        f
    }
}

/// The Schmitt slope `sum eps_i (deg W * rk W_i - deg W_i * rk W)`.
pub fn schmitt_slope(f: &WeightedFiltration) -> Rational {
    let n = f.n() as i64;
    f.epsilons()
        .iter()
        .zip(f.step_ranks())
        .zip(&f.degrees)
        .map(|((e, rk), deg)| e * (&f.total_deg * rk as i64 - deg * n))
        .sum()
}

/// Schmitt slope of a filtration whose degrees are parabolic degrees.
pub fn parabolic_schmitt_slope(f: &WeightedFiltration) -> Result<Rational> {
    if f.kind != DegreeKind::Parabolic {
        return Err(Error::InvalidInput(
            "parabolic slope requested for a filtration with plain degrees".into(),
        ));
    }
    Ok(schmitt_slope(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Semi,
    Stable,
}

impl Mode {
    pub fn accepts(self, slope: &Rational) -> bool {
        match self {
            Mode::Semi => !slope.is_negative(),
            Mode::Stable => slope.is_positive(),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semi" | "semistable" => Ok(Mode::Semi),
            "stable" => Ok(Mode::Stable),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// Verdict on `r * slope`; only the sign matters, so this agrees with the
/// verdict on `slope` for every `r > 0`.
pub fn char_scale_verdict(slope: &Rational, r: &Rational, mode: Mode) -> Result<bool> {
    if !r.is_positive() {
        return Err(Error::InvalidInput(format!("scale must be positive, got {r}")));
    }
    Ok(mode.accepts(&(slope * r)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TfVerdict {
    pub mode: Mode,
    pub pass: bool,
    /// No filtration was supplied.
    pub vacuous: bool,
    pub slopes: Vec<Rational>,
    /// Index of the failing filtration with the most negative slope, first
    /// in input order on ties.
    pub witness: Option<usize>,
    pub witness_slope: Option<Rational>,
}

/// Tests every filtration; slopes are evaluated in parallel.
pub fn tf_semistability_verdict(filtrations: &[WeightedFiltration], mode: Mode) -> TfVerdict {
    let slopes: Vec<Rational> = filtrations.par_iter().map(schmitt_slope).collect();
    let witness = slopes
        .iter()
        .enumerate()
        .filter(|(_, s)| !mode.accepts(s))
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i);
    TfVerdict {
        mode,
        pass: witness.is_none(),
        vacuous: filtrations.is_empty(),
        witness_slope: witness.map(|i| slopes[i].clone()),
        witness,
        slopes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub name: &'static str,
    pub value: i64,
    pub note: &'static str,
}

/// Degree bookkeeping showing that `V (x) V*` of a rank-2 torsion-free sheaf
/// `V = L + M` with `L, M` of local type `m` and degree 0 is not semistable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub deg_l_prime: i64,
    pub deg_m_prime: i64,
    pub deg_l_twisted: i64,
    pub deg_m_twisted: i64,
    pub deg_tensor: i64,
    pub deg_n: i64,
    pub deg_saturation: i64,
    pub steps: Vec<Step>,
    pub filtrations: Vec<WeightedFiltration>,
    pub verdict: TfVerdict,
    /// The degree-1 subsheaf of the degree-0 sheaf `V (x) V*` violates the
    /// slope inequality.
    pub naive_test_fails: bool,
}

pub fn counterexample_gl2() -> CounterexampleReport {
    let l = Rank1NodalSheaf {
        deg_c: 0,
        local_type: LocalType::Maximal,
    };
    let deg_l_prime = pullback_mod_torsion(&l);
    let deg_m_prime = pullback_mod_torsion(&l);
    // twisting by y_1 + y_2 adds 2
    let deg_l_twisted = deg_l_prime + 2;
    let deg_m_twisted = deg_m_prime + 2;
    let deg_tensor = deg_l_twisted + deg_m_twisted;
    let deg_n = deg_tensor - 2;
    let deg_saturation = descend_rank1(deg_n, LocalType::Maximal).deg_c;

    let steps = vec![
        Step { name: "deg L'", value: deg_l_prime, note: "pullback of L modulo torsion" },
        Step { name: "deg M'", value: deg_m_prime, note: "pullback of M* modulo torsion" },
        Step { name: "deg L'(y1+y2)", value: deg_l_twisted, note: "twist by both preimages of the node" },
        Step { name: "deg M'(y1+y2)", value: deg_m_twisted, note: "twist by both preimages of the node" },
        Step { name: "deg L'(y1+y2) (x) M'(y1+y2)", value: deg_tensor, note: "tensor product" },
        Step { name: "deg N", value: deg_n, note: "twist by -y1-y2" },
        Step { name: "deg saturation of L (x) M*", value: deg_saturation, note: "descent of N with local type m" },
    ];

    let half = |deg: i64, label: &str| {
        WeightedFiltration::new(vec![-1, 1], vec![1, 1], vec![Rational::from_integer(deg)], Rational::zero())
            .expect("valid filtration")
            .with_kind(DegreeKind::Parabolic)
            .with_label(label)
    };
    let filtrations = vec![
        half(l.deg_c, "L in V"),
        half(deg_saturation, "L in V, through the saturation of L (x) M* in V (x) V*"),
    ];
    let verdict = tf_semistability_verdict(&filtrations, Mode::Semi);

    CounterexampleReport {
        deg_l_prime,
        deg_m_prime,
        deg_l_twisted,
        deg_m_twisted,
        deg_tensor,
        deg_n,
        deg_saturation,
        steps,
        filtrations,
        naive_test_fails: deg_saturation > 0,
        verdict,
    }
}
