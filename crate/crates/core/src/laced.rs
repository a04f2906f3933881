//! Balanced parabolic weights, laced bundles and rank-1 torsion-free sheaves
//! on a nodal curve.
//!
//! Flags are carried only as multiplicities; every degree formula here
//! depends on nothing else.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Strictly ascending weights `0 <= alpha_1 < ... < alpha_s < 1` with
/// multiplicities `k_1, ..., k_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedWeights {
    alpha: Vec<Rational>,
    k: Vec<u64>,
}

impl BalancedWeights {
    pub fn new(alpha: Vec<Rational>, k: Vec<u64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidInput("at least one weight is required".into()));
        }
        if alpha.len() != k.len() {
            return Err(Error::DimensionMismatch {
                expected: alpha.len(),
                got: k.len(),
            });
        }
        if k.contains(&0) {
            return Err(Error::InvalidInput("multiplicities must be positive".into()));
        }
        if let Some(a) = alpha
            .iter()
            .find(|a| a.is_negative() || **a >= Rational::one())
        {
            return Err(Error::OutOfRange(format!("weight {a} not in [0, 1)")));
        }
        if alpha.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("weights must be strictly ascending".into()));
        }
        Ok(BalancedWeights { alpha, k })
    }

    /// Parses `"0:1,1/2:3"` as weight `0` with multiplicity 1 and weight `1/2`
    /// with multiplicity 3.
    pub fn parse(s: &str) -> Result<Self> {
        let mut alpha = Vec::new();
        let mut k = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (w, m) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected weight:multiplicity, got {item:?}")))?;
            alpha.push(w.trim().parse()?);
            k.push(
                m.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad multiplicity {m:?}")))?,
            );
        }
        BalancedWeights::new(alpha, k)
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn k(&self) -> &[u64] {
        &self.k
    }

    pub fn s(&self) -> usize {
        self.alpha.len()
    }

    /// Total rank `n = sum k_m`.
    pub fn n(&self) -> u64 {
        self.k.iter().sum()
    }

    fn starts_at_zero(&self) -> bool {
        self.alpha[0].is_zero()
    }

    /// `(1 - alpha_s, ..., 1 - alpha_1)` if `alpha_1 != 0`, otherwise
    /// `(0, 1 - alpha_s, ..., 1 - alpha_2)`.
    pub fn dual_weights(&self) -> Vec<Rational> {
        let flip = |a: &Rational| Rational::one() - a;
        if self.starts_at_zero() {
            std::iter::once(Rational::zero())
                .chain(self.alpha[1..].iter().rev().map(flip))
                .collect()
        } else {
            self.alpha.iter().rev().map(flip).collect()
        }
    }

    /// Multiplicities matching [`dual_weights`](Self::dual_weights).
    pub fn dual_multiplicities(&self) -> Vec<u64> {
        if self.starts_at_zero() {
            std::iter::once(self.k[0])
                .chain(self.k[1..].iter().rev().copied())
                .collect()
        } else {
            self.k.iter().rev().copied().collect()
        }
    }

    pub fn dual(&self) -> BalancedWeights {
        BalancedWeights {
            alpha: self.dual_weights(),
            k: self.dual_multiplicities(),
        }
    }

    /// The number `l` of the closed form: `n - k_1` when `alpha_1 = 0`, else `n`.
    pub fn l(&self) -> u64 {
        if self.starts_at_zero() {
            self.n() - self.k[0]
        } else {
            self.n()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lacing {
    /// An `s`-lacing identifying every graded piece.
    Full,
    /// A single identification.
    Uni,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LacedBundleData {
    /// Degree of the underlying bundle on the normalization.
    pub deg: i64,
    pub weights: BalancedWeights,
    pub lacing: Lacing,
}

impl LacedBundleData {
    pub fn new(deg: i64, weights: BalancedWeights, lacing: Lacing) -> Self {
        LacedBundleData { deg, weights, lacing }
    }

    pub fn lacing_arity(&self) -> usize {
        match self.lacing {
            Lacing::Full => self.weights.s(),
            Lacing::Uni => 1,
        }
    }

    /// `deg V + sum k_m alpha_m + sum k'_m beta_m` over both marked points,
    /// dropping the zero weight and its dual when `alpha_1 = 0`.
    pub fn par_deg_by_definition(&self) -> Rational {
        let w = &self.weights;
        let skip = usize::from(w.starts_at_zero());
        let at_first: Rational = w.alpha[skip..]
            .iter()
            .zip(&w.k[skip..])
            .map(|(a, &k)| a * k as i64)
            .sum();
        let at_second: Rational = w
            .dual_weights()
            .iter()
            .zip(w.dual_multiplicities())
            .skip(skip)
            .map(|(b, k)| b * k as i64)
            .sum();
        Rational::from_integer(self.deg) + at_first + at_second
    }

    /// `deg V + l`.
    pub fn par_deg_closed_form(&self) -> Rational {
        Rational::from_integer(self.deg + self.weights.l() as i64)
    }

    /// Parabolic degree, checked against the definition.
    pub fn try_par_deg(&self) -> Result<Rational> {
        let closed = self.par_deg_closed_form();
        let direct = self.par_deg_by_definition();
        if closed == direct {
            Ok(closed)
        } else {
            Err(Error::InvariantViolation(format!(
                "par.deg closed form {closed} differs from definition {direct}"
            )))
        }
    }

    /// Parabolic degree. Panics if the two formulas disagree, which would be a
    /// bug in this module rather than bad input.
    pub fn par_deg(&self) -> Rational {
        self.try_par_deg().expect("par.deg formulas agree")
    }
}

/// Local type of a rank-1 torsion-free sheaf at the node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalType {
    /// Locally free at the node.
    Free,
    /// Isomorphic to the maximal ideal `m` at the node.
    #[serde(rename = "m")]
    Maximal,
}

impl LocalType {
    /// The multiplicity `l` of `m` in the local decomposition.
    pub fn l(self) -> i64 {
        match self {
            LocalType::Free => 0,
            LocalType::Maximal => 1,
        }
    }
}

impl std::str::FromStr for LocalType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "free" => Ok(LocalType::Free),
            "m" | "maximal" => Ok(LocalType::Maximal),
            _ => Err(Error::Parse(format!("unknown local type {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank1NodalSheaf {
    pub deg_c: i64,
    pub local_type: LocalType,
}

/// Descends a line bundle of degree `deg_y` on the normalization to a rank-1
/// torsion-free sheaf of the given local type: `deg_C = deg_Y + l`.
pub fn descend_rank1(deg_y: i64, local_type: LocalType) -> Rank1NodalSheaf {
    Rank1NodalSheaf {
        deg_c: deg_y + local_type.l(),
        local_type,
    }
}

/// Degree on the normalization of the pullback modulo torsion:
/// `deg_Y = deg_C - l`.
pub fn pullback_mod_torsion(s: &Rank1NodalSheaf) -> i64 {
    s.deg_c - s.local_type.l()
}
