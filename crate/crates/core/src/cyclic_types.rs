//! Local types `tau = (d; a_1, ..., a_l)` of homomorphisms `Gamma_d -> T`.
//!
//! A type determines the cocharacter `alpha_rho^* = sum a_j alpha_j^*` modulo
//! `d * Y(T)` and the weight `theta_tau = alpha_rho^* / d`.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::alcove::ApartmentPoint;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::root_datum::RootDatum;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicType {
    d: i64,
    a: Vec<i64>,
}

impl CyclicType {
    /// Builds a type, reducing each `a_j` into `[0, d)`.
    pub fn new(d: i64, a: Vec<i64>) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidInput(format!("d must be positive, got {d}")));
        }
        let a = a.into_iter().map(|x| x.rem_euclid(d)).collect();
        Ok(CyclicType { d, a })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// `theta_tau = (a_1/d, ..., a_l/d)` in fundamental-coweight coordinates.
    pub fn type_to_weight(&self) -> ApartmentPoint {
        ApartmentPoint::new(self.a.iter().map(|&x| Rational::new(x, self.d)).collect())
    }

    /// The same type with its entries sorted ascending.
    pub fn sorted(&self) -> CyclicType {
        let mut a = self.a.clone();
        a.sort_unstable();
        CyclicType { d: self.d, a }
    }

    /// The balanced dual `tau-bar`. Entries are sorted first; leading zeros
    /// stay in place and the nonzero block becomes `d - a` in reverse order.
    pub fn balanced_dual(&self) -> CyclicType {
        let s = self.sorted();
        let zeros = s.a.iter().take_while(|&&x| x == 0).count();
        let a = std::iter::repeat_n(0, zeros)
            .chain(s.a[zeros..].iter().rev().map(|&x| self.d - x))
            .collect();
        CyclicType { d: self.d, a }
    }

    fn check(&self, rd: &RootDatum) -> Result<()> {
        if self.rank() != rd.rank() {
            return Err(Error::DimensionMismatch {
                expected: rd.rank(),
                got: self.rank(),
            });
        }
        Ok(())
    }

    /// Least `m > 0` with `m * alpha_rho^*` in `d Y(T)`, i.e. with
    /// `m * C^{-1} a` in `d Z^l`.
    ///
    /// Writing `C^{-1} a = p / D` with integer `p` and common denominator `D`,
    /// the condition is `dD | m * gcd(p)`, so the order is `dD / gcd(dD, gcd(p))`.
    pub fn order(&self, rd: &RootDatum) -> Result<i64> {
        self.check(rd)?;
        let coroot = rd.to_coroot_coords(&ApartmentPoint::from_integers(&self.a));
        let denom = coroot
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let g = coroot.iter().fold(num_bigint::BigInt::zero(), |acc, x| {
            acc.gcd(&(x.numer() * (&denom / x.denom())))
        });
        let dd = &denom * self.d;
        let m = &dd / dd.gcd(&g.abs());
        Ok(i64::try_from(m).expect("order fits in i64"))
    }

    /// True when no `0 < m < d` has `m * alpha_rho^*` in `d Y(T)`.
    ///
    /// `alpha_rho^*` lies in the coweight lattice, so its order may exceed `d`.
    pub fn is_injective(&self, rd: &RootDatum) -> Result<bool> {
        Ok(self.order(rd)? >= self.d)
    }

    pub fn admissibility(&self, rd: &RootDatum) -> Result<Admissibility> {
        let injective = self.is_injective(rd)?;
        let missing_residues = (1..self.d).filter(|r| !self.a.contains(r)).collect();
        Ok(Admissibility {
            injective,
            missing_residues,
        })
    }

    /// Injective and every residue `1..d-1` occurs among the `a_j`.
    pub fn is_admissible(&self, rd: &RootDatum) -> Result<bool> {
        Ok(self.admissibility(rd)?.is_admissible())
    }

    /// Residues `<chi_k, alpha_rho^*> mod d`, one per weight of `rep`: the
    /// `GL(V)`-type of the composite `Gamma_d -> T -> GL(V)`.
    pub fn push_type(&self, rep: &RepresentationWeights) -> Result<Vec<i64>> {
        if rep.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: rep.rank(),
            });
        }
        Ok(rep
            .weights
            .iter()
            .map(|w| {
                w.iter()
                    .zip(&self.a)
                    .map(|(x, y)| x * y)
                    .sum::<i64>()
                    .rem_euclid(self.d)
            })
            .collect())
    }

    /// Every type of level `d` in rank `l`, in lexicographic order of `a`.
    pub fn enumerate(d: i64, rank: usize) -> impl Iterator<Item = CyclicType> {
        let total = (d as u64).pow(rank as u32);
        (0..total).map(move |mut idx| {
            let mut a = vec![0; rank];
            for slot in a.iter_mut().rev() {
                *slot = (idx % d as u64) as i64;
                idx /= d as u64;
            }
            CyclicType { d, a }
        })
    }
}

impl std::fmt::Display for CyclicType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.a.iter().map(i64::to_string).collect();
        write!(f, "({}; {})", self.d, a.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub injective: bool,
    /// Residues in `1..d-1` that no `a_j` hits.
    pub missing_residues: Vec<i64>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.injective && self.missing_residues.is_empty()
    }

    /// Human readable reason for rejection, `None` when admissible.
    pub fn reason(&self) -> Option<String> {
        match (self.injective, self.missing_residues.is_empty()) {
            (true, true) => None,
            (false, true) => Some("not injective".into()),
            (true, false) => Some(format!("missing residues {:?}", self.missing_residues)),
            (false, false) => Some(format!(
                "not injective; missing residues {:?}",
                self.missing_residues
            )),
        }
    }
}

/// Torus weights of a representation, each given by its integer pairings
/// with the coroot basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationWeights {
    pub weights: Vec<Vec<i64>>,
}

impl RepresentationWeights {
    pub fn new(weights: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = weights.first() else {
            return Err(Error::InvalidInput("representation has no weights".into()));
        };
        let l = first.len();
        if let Some(w) = weights.iter().find(|w| w.len() != l) {
            return Err(Error::DimensionMismatch {
                expected: l,
                got: w.len(),
            });
        }
        Ok(RepresentationWeights { weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.weights[0].len()
    }

    pub fn trivial(rank: usize, dim: usize) -> Self {
        RepresentationWeights {
            weights: vec![vec![0; rank]; dim.max(1)],
        }
    }

    /// The standard representation of `SL(l+1)`: `omega_1`,
    /// `omega_k - omega_{k-1}` and `-omega_l`.
    pub fn sl_standard(rank: usize) -> Self {
        let weights = (0..=rank)
            .map(|k| {
                let mut w = vec![0; rank];
                if k < rank {
                    w[k] += 1;
                }
                if k > 0 {
                    w[k - 1] -= 1;
                }
                w
            })
            .collect();
        RepresentationWeights { weights }
    }

    /// The adjoint representation: every root plus `l` zero weights, roots
    /// written in the simple-root basis.
    pub fn adjoint(rd: &RootDatum) -> Self {
        let mut weights = rd.all_roots();
        weights.extend(std::iter::repeat_n(vec![0; rd.rank()], rd.rank()));
        RepresentationWeights { weights }
    }
}
