//! Simple root systems: Cartan matrices in Bourbaki numbering, positive roots
//! generated from root strings, highest root, Coxeter number and the exact
//! inverse Cartan matrix.
//!
//! Conventions used throughout the crate:
//!
//! * `cartan[i][j] = <alpha_i, alpha_j^vee>` (Bourbaki), so for `G2` the first
//!   simple root is short and `cartan = [[2, -1], [-3, 2]]`.
//! * Roots are integer vectors in the simple-root basis.
//! * Points of the apartment are given in the basis of fundamental coweights
//!   `alpha_j^*` (dual to the simple roots), so `<alpha_i, theta> = theta[i]`.
//! * Coroot coordinates are obtained by applying the inverse Cartan matrix.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::alcove::ApartmentPoint;
use crate::error::{Error, Result};
use crate::rational::{invert, lcm_of_denominators, mat_vec, to_rational_matrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Lie type such as `A2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidLieType(format!(
                "{family:?}{rank} is not a simple Lie type"
            )))
        }
    }

    /// Every supported simple type with rank in `1..=max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        let families = [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ];
        families
            .iter()
            .flat_map(|&f| (1..=max_rank).filter_map(move |r| LieType::new(f, r).ok()))
            .collect()
    }

    /// Number of positive roots, from the classification tables.
    pub fn positive_root_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1) / 2,
            Family::B | Family::C => l * l,
            Family::D => l * (l - 1),
            Family::E => match l {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidLieType(format!("unknown family in {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::InvalidLieType(format!("bad rank in {s:?}")))?;
        LieType::new(family, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dynkin diagram edges, 1-indexed, as `(i, j, cartan[i][j], cartan[j][i])`.
fn dynkin_edges(t: LieType) -> Vec<(usize, usize, i64, i64)> {
    let l = t.rank;
    let chain = |n: usize| (1..n).map(|i| (i, i + 1, -1, -1)).collect::<Vec<_>>();
    match t.family {
        Family::A => chain(l),
        Family::B => {
            let mut e = chain(l - 1);
            e.push((l - 1, l, -2, -1));
            e
        }
        Family::C => {
            let mut e = chain(l - 1);
            e.push((l - 1, l, -1, -2));
            e
        }
        Family::D => {
            let mut e = chain(l - 1);
            e.push((l - 2, l, -1, -1));
            e
        }
        Family::E => {
            let mut e = vec![(1, 3, -1, -1), (2, 4, -1, -1)];
            e.extend((3..l).map(|i| (i, i + 1, -1, -1)));
            e
        }
        Family::F => vec![(1, 2, -1, -1), (2, 3, -2, -1), (3, 4, -1, -1)],
        Family::G => vec![(1, 2, -1, -3)],
    }
}

/// Cartan matrix in Bourbaki numbering, `cartan[i][j] = <alpha_i, alpha_j^vee>`.
pub fn cartan_matrix(t: LieType) -> Vec<Vec<i64>> {
    let l = t.rank;
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j, cij, cji) in dynkin_edges(t) {
        c[i - 1][j - 1] = cij;
        c[j - 1][i - 1] = cji;
    }
    c
}

/// Positive roots from the Cartan matrix by root-string closure, sorted by
/// height and then lexicographically.
pub fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let simple: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut known: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut all = simple.clone();
    let mut frontier = simple;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..l {
                // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        all.push(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    all
}

/// Exact data attached to a simple Lie type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub lie_type: LieType,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    /// Coefficients `n_1..n_l` of the highest root.
    pub highest_root_coeffs: Vec<i64>,
    pub coxeter_number: i64,
    pub inv_cartan: Vec<Vec<Rational>>,
    /// Exponent of `P^vee / Q^vee`: lcm of the denominators of `inv_cartan`.
    pub center_exponent: u64,
}

impl RootDatum {
    pub fn new(lie_type: LieType) -> Self {
        let cartan = cartan_matrix(lie_type);
        let positive_roots = generate_positive_roots(&cartan);
        // the highest root is the unique root of maximal height
        let highest_root_coeffs = positive_roots
            .last()
            .expect("root system is never empty")
            .clone();
        let coxeter_number = highest_root_coeffs.iter().sum::<i64>() + 1;
        let inv_cartan =
            invert(&to_rational_matrix(&cartan)).expect("Cartan matrices are nonsingular");
        let center_exponent = lcm_of_denominators(inv_cartan.iter().flatten());
        RootDatum {
            lie_type,
            cartan,
            positive_roots,
            highest_root_coeffs,
            coxeter_number,
            inv_cartan,
            center_exponent,
        }
    }

    /// Parses a label like `"A2"` and builds the datum.
    pub fn from_label(label: &str) -> Result<Self> {
        Ok(RootDatum::new(label.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    /// Marks `n_0, n_1, ..., n_l` of the extended diagram, with `n_0 = 1`.
    pub fn marks(&self) -> Vec<i64> {
        std::iter::once(1)
            .chain(self.highest_root_coeffs.iter().copied())
            .collect()
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let neg = self
            .positive_roots
            .iter()
            .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>());
        self.positive_roots.iter().cloned().chain(neg).collect()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r == v || *r == neg)
    }

    pub(crate) fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got,
            })
        }
    }

    /// `(theta, r) = sum_j m_j(r) x_j` for `r` in simple-root coordinates and
    /// `theta` in fundamental-coweight coordinates.
    pub fn pairing(&self, theta: &ApartmentPoint, root: &[i64]) -> Result<Rational> {
        self.check_dim(theta.dim())?;
        self.check_dim(root.len())?;
        Ok(theta
            .coords()
            .iter()
            .zip(root)
            .map(|(x, &m)| x * m)
            .sum())
    }

    /// Coordinates of `theta` in the coroot basis. `theta` lies in `Y(T) = Q^vee`
    /// exactly when all of them are integers.
    pub fn to_coroot_coords(&self, theta: &ApartmentPoint) -> Vec<Rational> {
        mat_vec(&self.inv_cartan, theta.coords())
    }

    pub fn in_coroot_lattice(&self, theta: &ApartmentPoint) -> bool {
        self.to_coroot_coords(theta).iter().all(Rational::is_integer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_label(s).unwrap()
    }

    #[test]
    fn parses_labels() {
        assert_eq!("A2".parse::<LieType>().unwrap().rank, 2);
        assert_eq!("e8".parse::<LieType>().unwrap().family, Family::E);
        assert_eq!("G_2".parse::<LieType>().unwrap().to_string(), "G2");
        for bad in ["", "H3", "A0", "E9", "D3", "F3", "G3", "B1", "Ax"] {
            assert!(bad.parse::<LieType>().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn small_examples() {
        let a1 = datum("A1");
        assert_eq!(a1.highest_root_coeffs, vec![1]);
        assert_eq!(a1.coxeter_number, 2);
        assert_eq!(a1.positive_roots.len(), 1);

        let a2 = datum("A2");
        assert_eq!(a2.highest_root_coeffs, vec![1, 1]);
        assert_eq!(a2.coxeter_number, 3);
        assert_eq!(a2.positive_roots.len(), 3);

        let g2 = datum("G2");
        assert_eq!(g2.highest_root_coeffs, vec![3, 2]);
        assert_eq!(g2.coxeter_number, 6);
        assert_eq!(g2.positive_roots.len(), 6);
        // |R| / l
        assert_eq!(2 * g2.positive_roots.len() as i64 / 2, g2.coxeter_number);
    }

    #[test]
    fn highest_roots_match_tables() {
        let cases: &[(&str, &[i64])] = &[
            ("B4", &[1, 2, 2, 2]),
            ("C4", &[2, 2, 2, 1]),
            ("D5", &[1, 2, 2, 1, 1]),
            ("E6", &[1, 2, 2, 3, 2, 1]),
            ("E7", &[2, 2, 3, 4, 3, 2, 1]),
            ("E8", &[2, 3, 4, 6, 5, 4, 3, 2]),
            ("F4", &[2, 3, 4, 2]),
        ];
        for (label, n) in cases {
            assert_eq!(datum(label).highest_root_coeffs, n.to_vec(), "{label}");
        }
    }

    #[test]
    fn center_exponents() {
        let cases = [
            ("A1", 2),
            ("A4", 5),
            ("B3", 2),
            ("C5", 2),
            ("D4", 2),
            ("D5", 4),
            ("E6", 3),
            ("E7", 2),
            ("E8", 1),
            ("F4", 1),
            ("G2", 1),
        ];
        for (label, e) in cases {
            assert_eq!(datum(label).center_exponent, e, "{label}");
        }
    }

    #[test]
    fn pairing_examples() {
        let a1 = datum("A1");
        let a2 = datum("A2");
        let zero = ApartmentPoint::zero(2);
        assert_eq!(a2.pairing(&zero, &[1, 1]).unwrap(), Rational::zero());
        let half = ApartmentPoint::new(vec![Rational::new(1, 2)]);
        assert_eq!(a1.pairing(&half, &[1]).unwrap(), Rational::new(1, 2));
        let t = ApartmentPoint::new(vec![Rational::new(1, 3), Rational::new(2, 3)]);
        assert_eq!(a2.pairing(&t, &[1, 1]).unwrap(), Rational::one());
        assert!(matches!(
            a2.pairing(&half, &[1, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coroot_coordinates() {
        let a1 = datum("A1");
        let c = a1.to_coroot_coords(&ApartmentPoint::new(vec![Rational::one()]));
        assert_eq!(c, vec![Rational::new(1, 2)]);

        let a2 = datum("A2");
        let p = ApartmentPoint::new(vec![Rational::one(), Rational::zero()]);
        assert_eq!(
            a2.to_coroot_coords(&p),
            vec![Rational::new(2, 3), Rational::new(1, 3)]
        );
        assert!(!a2.in_coroot_lattice(&p));
        assert!(a2.in_coroot_lattice(&ApartmentPoint::zero(2)));
    }
}
