//! Affine roots, the fundamental alcove, facet barycenters, lattice
//! denominators and parahoric index functions.
//!
//! The basic affine roots are `theta_j = alpha_j` for `j = 1..l` and
//! `theta_0 = 1 - alpha_0` with `alpha_0 = sum n_j alpha_j` the highest root.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{lcm_of_denominators, Rational};
use crate::root_datum::RootDatum;

/// A rational point of the apartment in fundamental-coweight coordinates.
/// No normalization is imposed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ApartmentPoint(Vec<Rational>);

impl ApartmentPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        ApartmentPoint(coords)
    }

    pub fn zero(dim: usize) -> Self {
        ApartmentPoint(vec![Rational::zero(); dim])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        ApartmentPoint(coords.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        ApartmentPoint(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &ApartmentPoint) -> Self {
        ApartmentPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

/// A facet `F_M` of the alcove together with its weighted barycenter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Facet {
    /// The index set `M`, sorted, a subset of `{0, ..., l}`.
    pub members: Vec<usize>,
    /// `h_M = sum_{j in M} n_j` with `n_0 = 1`.
    pub index: i64,
    pub barycenter: ApartmentPoint,
    /// Smallest positive `d` with `d * barycenter` in `Y(T)`.
    pub denominator: u64,
}

impl RootDatum {
    /// `theta_{r,n}(theta) = (theta, r) + n`.
    pub fn affine_root_eval(&self, root: &[i64], n: i64, theta: &ApartmentPoint) -> Result<Rational> {
        Ok(self.pairing(theta, root)? + n)
    }

    /// `alpha_0(theta) = sum n_j x_j`.
    pub fn highest_root_pairing(&self, theta: &ApartmentPoint) -> Result<Rational> {
        self.pairing(theta, &self.highest_root_coeffs)
    }

    /// The basic affine root `theta_j`, `j in 0..=l`, evaluated at `theta`.
    pub fn basic_affine_root(&self, j: usize, theta: &ApartmentPoint) -> Result<Rational> {
        self.check_dim(theta.dim())?;
        match j {
            0 => Ok(Rational::one() - self.highest_root_pairing(theta)?),
            j if j <= self.rank() => Ok(theta.coords()[j - 1].clone()),
            _ => Err(Error::OutOfRange(format!(
                "basic affine root index {j} exceeds rank {}",
                self.rank()
            ))),
        }
    }

    /// All `l + 1` basic affine roots at `theta`.
    pub fn basic_affine_roots(&self, theta: &ApartmentPoint) -> Result<Vec<Rational>> {
        (0..=self.rank())
            .map(|j| self.basic_affine_root(j, theta))
            .collect()
    }

    /// Membership in the closed fundamental alcove.
    pub fn in_alcove(&self, theta: &ApartmentPoint) -> Result<bool> {
        Ok(self
            .basic_affine_roots(theta)?
            .iter()
            .all(|v| !v.is_negative()))
    }

    /// Vertices `theta_{alpha_j} = alpha_j^* / n_j`, with `theta_{alpha_0} = 0`.
    pub fn alcove_vertices(&self) -> Vec<ApartmentPoint> {
        let l = self.rank();
        std::iter::once(ApartmentPoint::zero(l))
            .chain((1..=l).map(|j| self.alcove_vertex(j)))
            .collect()
    }

    pub(crate) fn alcove_vertex(&self, j: usize) -> ApartmentPoint {
        let l = self.rank();
        let mut v = vec![Rational::zero(); l];
        if j > 0 {
            v[j - 1] = Rational::new(1, self.highest_root_coeffs[j - 1]);
        }
        ApartmentPoint::new(v)
    }

    /// Smallest positive integer `d` with `d * theta` in `Y(T)`: the lcm of
    /// the denominators of the coroot coordinates.
    pub fn lattice_denominator(&self, theta: &ApartmentPoint) -> u64 {
        lcm_of_denominators(self.to_coroot_coords(theta).iter())
    }

    /// The facet `F_M` with its weighted barycenter: `theta_i(theta_M) = 1/h_M`
    /// for `i` in `M`, zero otherwise.
    pub fn facet(&self, members: &[usize]) -> Result<Facet> {
        let l = self.rank();
        if members.is_empty() {
            return Err(Error::InvalidInput("facet index set M is empty".into()));
        }
        if let Some(&bad) = members.iter().find(|&&j| j > l) {
            return Err(Error::OutOfRange(format!(
                "facet index {bad} not in 0..={l}"
            )));
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        let marks = self.marks();
        let index: i64 = members.iter().map(|&j| marks[j]).sum();
        let w = Rational::new(1, index);
        let coords = (1..=l)
            .map(|j| {
                if members.contains(&j) {
                    w.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let barycenter = ApartmentPoint::new(coords);
        let denominator = self.lattice_denominator(&barycenter);
        Ok(Facet {
            members,
            index,
            barycenter,
            denominator,
        })
    }

    /// Every facet of the alcove, one per nonempty subset of `{0..l}`, ordered
    /// by the bitmask of `M`.
    pub fn all_facets(&self) -> Vec<Facet> {
        let l = self.rank();
        (1u32..(1u32 << (l + 1)))
            .map(|mask| {
                let m: Vec<usize> = (0..=l).filter(|j| mask & (1 << j) != 0).collect();
                self.facet(&m).expect("nonempty in-range subset")
            })
            .collect()
    }

    /// Parahoric depths `m_r = -floor(min_{theta in Theta} (theta, r))` for every
    /// root `r` (positive and negative), keyed by the root vector.
    pub fn parahoric_indices(&self, thetas: &[ApartmentPoint]) -> Result<BTreeMap<Vec<i64>, i64>> {
        if thetas.is_empty() {
            return Err(Error::InvalidInput("Theta must be nonempty".into()));
        }
        for t in thetas {
            self.check_dim(t.dim())?;
        }
        let mut out = BTreeMap::new();
        for r in self.all_roots() {
            let min = thetas
                .iter()
                .map(|t| self.pairing(t, &r))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .expect("nonempty");
            out.insert(r, -min.floor_i64());
        }
        Ok(out)
    }
}
