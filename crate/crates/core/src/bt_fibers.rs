//! Fiber weights of the two-dimensional Bruhat-Tits group scheme attached to
//! an admissible type.
//!
//! The closed fiber of the resolved `A_{d-1}` singularity is a chain
//! `R_0 = left branch, R_1, ..., R_{d-1}, R_d = right branch`. The group scheme
//! is constant on both branches, has weight `theta_{psi_t}` at the generic
//! point of `R_t`, and weights `theta_tau`, `theta_{tau_1}`, ...,
//! `theta_{tau_{d-2}}`, `theta_{tau-bar}` at the `d` nodes of the chain.

use serde::Serialize;

use crate::alcove::ApartmentPoint;
use crate::cyclic_types::CyclicType;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::root_datum::RootDatum;

/// Coordinates `c_0, ..., c_l` with `theta = sum c_j theta_{alpha_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BarycentricCoords(pub Vec<Rational>);

impl BarycentricCoords {
    pub fn c(&self) -> &[Rational] {
        &self.0
    }

    pub fn reconstruct(&self, rd: &RootDatum) -> ApartmentPoint {
        combine(rd, self.0.iter().cloned().enumerate())
    }
}

/// `sum coeff_j theta_{alpha_j}` over `(j, coeff_j)` pairs.
fn combine(rd: &RootDatum, terms: impl IntoIterator<Item = (usize, Rational)>) -> ApartmentPoint {
    let mut acc = ApartmentPoint::zero(rd.rank());
    for (j, c) in terms {
        if j > 0 && !c.is_zero() {
            acc = acc.add(&rd.alcove_vertex(j).scaled(&c));
        }
    }
    acc
}

/// `c_j = n_j theta_j(theta)` with `n_0 = 1`. Rejects points outside the
/// closed alcove.
pub fn barycentric(rd: &RootDatum, theta: &ApartmentPoint) -> Result<BarycentricCoords> {
    if !rd.in_alcove(theta)? {
        return Err(Error::OutsideAlcove(format!("{:?}", theta.coords())));
    }
    let c = rd
        .basic_affine_roots(theta)?
        .into_iter()
        .zip(rd.marks())
        .map(|(v, n)| v * n)
        .collect();
    Ok(BarycentricCoords(c))
}

/// Affine node characters: `j >= 1` has exponent `a_j`, and `j = 0` has
/// `-sum n_j a_j`, all modulo `d`. Entry `t` lists the `j` in `0..=l` whose
/// character is `psi_t`.
pub fn group_characters(rd: &RootDatum, tau: &CyclicType) -> Result<Vec<Vec<usize>>> {
    if tau.rank() != rd.rank() {
        return Err(Error::DimensionMismatch {
            expected: rd.rank(),
            got: tau.rank(),
        });
    }
    let d = tau.d();
    let e0 = -tau
        .a()
        .iter()
        .zip(&rd.highest_root_coeffs)
        .map(|(a, n)| a * n)
        .sum::<i64>();
    let mut groups = vec![Vec::new(); d as usize];
    groups[e0.rem_euclid(d) as usize].push(0);
    for (j, a) in tau.a().iter().enumerate() {
        groups[*a as usize].push(j + 1);
    }
    Ok(groups)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberDescription {
    pub lie_type: String,
    pub tau: CyclicType,
    pub barycentric: BarycentricCoords,
    /// `groups[t]` lists the affine nodes whose character is `psi_t`.
    pub groups: Vec<Vec<usize>>,
    /// `c(t) = sum_{j in group t} c_j` for `t = 0..d-1`.
    pub group_mass: Vec<Rational>,
    /// Nontrivial characters ordered by `c(t)`, ties by index.
    pub character_order: Vec<usize>,
    /// Set when two nontrivial characters share a `c(t)` value.
    pub ties: bool,
    pub left_branch: &'static str,
    /// `theta_{psi_0}`, the trivial-character part of `theta_tau`.
    pub trivial_weight: ApartmentPoint,
    /// `theta_{psi_t}` at the generic point of `R_t`, `t = 1..d-1`.
    pub chain_weights: Vec<ApartmentPoint>,
    /// `[theta_tau, theta_{tau_1}, ..., theta_{tau_{d-2}}, theta_{tau-bar}]`;
    /// only `[theta_tau]` when `d = 1`.
    pub node_weights: Vec<ApartmentPoint>,
    pub right_branch: &'static str,
}

impl FiberDescription {
    pub fn theta_tau(&self) -> &ApartmentPoint {
        &self.node_weights[0]
    }

    /// The weight at the far node, `None` when `d = 1`.
    pub fn theta_tau_bar(&self) -> Option<&ApartmentPoint> {
        (self.node_weights.len() > 1).then(|| self.node_weights.last().unwrap())
    }

    /// Every emitted weight: trivial part, chain, then nodes.
    pub fn all_weights(&self) -> impl Iterator<Item = &ApartmentPoint> {
        std::iter::once(&self.trivial_weight)
            .chain(&self.chain_weights)
            .chain(&self.node_weights)
    }

    /// `sum_t theta_{psi_t}` over all characters including the trivial one.
    pub fn partition_sum(&self) -> ApartmentPoint {
        self.chain_weights
            .iter()
            .fold(self.trivial_weight.clone(), |acc, w| acc.add(w))
    }
}

/// Computes the fiber weights for an admissible `tau` whose weight
/// `theta_tau` lies in the closed alcove.
pub fn fiber_description(rd: &RootDatum, tau: &CyclicType) -> Result<FiberDescription> {
    let adm = tau.admissibility(rd)?;
    if let Some(reason) = adm.reason() {
        return Err(Error::NotAdmissible(format!("{tau}: {reason}")));
    }
    let theta_tau = tau.type_to_weight();
    let bary = barycentric(rd, &theta_tau).map_err(|_| {
        Error::OutsideAlcove(format!("theta_tau of {tau} is {:?}", theta_tau.coords()))
    })?;
    let c = bary.c();
    let d = tau.d() as usize;
    let groups = group_characters(rd, tau)?;

    let weight = |t: usize| combine(rd, groups[t].iter().map(|&j| (j, c[j].clone())));
    let weight_prime = |t: usize| combine(rd, groups[t].iter().map(|&j| (j, Rational::one())));
    let group_mass: Vec<Rational> = groups
        .iter()
        .map(|g| g.iter().map(|&j| &c[j]).sum())
        .collect();

    let mut order: Vec<usize> = (1..d).collect();
    order.sort_by(|&x, &y| group_mass[x].cmp(&group_mass[y]).then(x.cmp(&y)));
    let ties = order
        .windows(2)
        .any(|w| group_mass[w[0]] == group_mass[w[1]]);

    let mut node_weights = vec![theta_tau.clone()];
    if d > 1 {
        for s in 0..d.saturating_sub(2) {
            let base = &group_mass[order[s]];
            let w = order[s + 1..]
                .iter()
                .map(|&t| weight_prime(t).scaled(&(&group_mass[t] - base)))
                .fold(ApartmentPoint::zero(rd.rank()), |acc, p| acc.add(&p));
            node_weights.push(w);
        }
        let bar = combine(
            rd,
            (1..=rd.rank()).map(|j| (j, Rational::one() - &c[j])),
        );
        node_weights.push(bar);
    }

    Ok(FiberDescription {
        lie_type: rd.lie_type.to_string(),
        tau: tau.clone(),
        barycentric: bary.clone(),
        group_mass,
        character_order: order,
        ties,
        left_branch: "G",
        trivial_weight: weight(0),
        chain_weights: (1..d).map(weight).collect(),
        node_weights,
        right_branch: "G",
        groups,
    })
}

/// `sum_t c(t) theta'_{psi_t}`. It reproduces `theta_tau` exactly when
/// [`groups_have_single_support`] holds.
pub fn grouped_expansion(rd: &RootDatum, fd: &FiberDescription) -> ApartmentPoint {
    fd.groups
        .iter()
        .zip(&fd.group_mass)
        .flat_map(|(g, m)| g.iter().map(move |&j| (j, m.clone())))
        .fold(ApartmentPoint::zero(rd.rank()), |acc, (j, m)| {
            if j == 0 {
                acc
            } else {
                acc.add(&rd.alcove_vertex(j).scaled(&m))
            }
        })
}

/// True when each simple node `j >= 1` carries the whole mass of its group,
/// i.e. `c(t) = c_j` for every `j >= 1` in group `t`.
pub fn groups_have_single_support(fd: &FiberDescription) -> bool {
    let c = fd.barycentric.c();
    fd.groups.iter().zip(&fd.group_mass).all(|(g, m)| {
        g.iter().all(|&j| j == 0 || c[j] == *m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pt(v: &[(i64, i64)]) -> ApartmentPoint {
        ApartmentPoint::new(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_label(s).unwrap()
    }

    #[test]
    fn barycentric_examples() {
        let a2 = datum("A2");
        let b = barycentric(&a2, &ApartmentPoint::zero(2)).unwrap();
        assert_eq!(b.c(), &[q(1, 1), q(0, 1), q(0, 1)]);
        let b = barycentric(&a2, &pt(&[(1, 3), (2, 3)])).unwrap();
        assert_eq!(b.c(), &[q(0, 1), q(1, 3), q(2, 3)]);

        // A1 in fundamental-coweight coordinates: theta = c_1 * (1), c_0 = 1 - c_1
        let a1 = datum("A1");
        assert_eq!(barycentric(&a1, &pt(&[(1, 2)])).unwrap().c(), &[q(1, 2), q(1, 2)]);
        assert_eq!(barycentric(&a1, &pt(&[(1, 4)])).unwrap().c(), &[q(3, 4), q(1, 4)]);
        assert!(barycentric(&a1, &pt(&[(3, 2)])).is_err());
    }

    #[test]
    fn barycentric_reconstructs() {
        for label in ["B3", "C4", "F4", "G2", "E6"] {
            let rd = datum(label);
            for f in rd.all_facets() {
                let b = barycentric(&rd, &f.barycenter).unwrap();
                assert_eq!(b.c().iter().sum::<Rational>(), Rational::one());
                assert_eq!(b.reconstruct(&rd), f.barycenter);
            }
        }
    }

    #[test]
    fn grouping_examples() {
        let a2 = datum("A2");
        let tau = CyclicType::new(3, vec![1, 2]).unwrap();
        assert_eq!(group_characters(&a2, &tau).unwrap(), vec![vec![0], vec![1], vec![2]]);
        let tau = CyclicType::new(4, vec![0, 0]).unwrap();
        assert_eq!(
            group_characters(&a2, &tau).unwrap(),
            vec![vec![0, 1, 2], vec![], vec![], vec![]]
        );
        let a3 = datum("A3");
        let tau = CyclicType::new(2, vec![1, 0, 1]).unwrap();
        assert_eq!(group_characters(&a3, &tau).unwrap(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn a2_worked_example() {
        let a2 = datum("A2");
        let fd = fiber_description(&a2, &CyclicType::new(3, vec![1, 2]).unwrap()).unwrap();
        assert_eq!(fd.barycentric.c(), &[q(0, 1), q(1, 3), q(2, 3)]);
        assert_eq!(fd.group_mass, vec![q(0, 1), q(1, 3), q(2, 3)]);
        assert_eq!(fd.character_order, vec![1, 2]);
        assert!(!fd.ties);
        assert_eq!(fd.chain_weights, vec![pt(&[(1, 3), (0, 1)]), pt(&[(0, 1), (2, 3)])]);
        assert_eq!(
            fd.node_weights,
            vec![pt(&[(1, 3), (2, 3)]), pt(&[(0, 1), (1, 3)]), pt(&[(2, 3), (1, 3)])]
        );
        assert_eq!(fd.partition_sum(), *fd.theta_tau());
        assert_eq!(fd.left_branch, "G");
        assert_eq!(fd.right_branch, "G");
    }

    #[test]
    fn a1_worked_example() {
        let a1 = datum("A1");
        let fd = fiber_description(&a1, &CyclicType::new(2, vec![1]).unwrap()).unwrap();
        assert_eq!(fd.barycentric.c(), &[q(1, 2), q(1, 2)]);
        assert_eq!(fd.chain_weights, vec![pt(&[(1, 2)])]);
        assert_eq!(fd.node_weights, vec![pt(&[(1, 2)]), pt(&[(1, 2)])]);
    }

    #[test]
    fn trivial_level() {
        let e6 = datum("E6");
        let fd = fiber_description(&e6, &CyclicType::new(1, vec![0; 6]).unwrap()).unwrap();
        assert!(fd.chain_weights.is_empty());
        assert_eq!(fd.node_weights, vec![ApartmentPoint::zero(6)]);
        assert_eq!(fd.theta_tau_bar(), None);
    }

    #[test]
    fn rejections() {
        let a2 = datum("A2");
        let err = fiber_description(&a2, &CyclicType::new(3, vec![1, 1]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible(ref m) if m.contains("missing residues [2]")));
        let err = fiber_description(&a2, &CyclicType::new(3, vec![0, 0]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotAdmissible(_)));
        // admissible, but theta_tau is outside the alcove
        let a3 = datum("A3");
        let t = CyclicType::new(4, vec![1, 2, 3]).unwrap();
        assert!(t.is_admissible(&a3).unwrap());
        assert!(matches!(fiber_description(&a3, &t), Err(Error::OutsideAlcove(_))));
    }

    #[test]
    fn partition_identity_small_types() {
        for label in ["A1", "A2", "A3", "B3", "C3", "D4", "G2", "F4"] {
            let rd = datum(label);
            for d in 1..=3 {
                for t in CyclicType::enumerate(d, rd.rank()) {
                    if let Ok(fd) = fiber_description(&rd, &t) {
                        assert_eq!(fd.partition_sum(), *fd.theta_tau(), "{label} {t}");
                        assert_eq!(fd.chain_weights.len(), (d - 1) as usize);
                        assert_eq!(fd.node_weights.len(), d as usize);
                        for w in fd.chain_weights.iter().chain([&fd.trivial_weight]) {
                            assert!(rd.in_alcove(w).unwrap());
                        }
                        if groups_have_single_support(&fd) {
                            assert_eq!(grouped_expansion(&rd, &fd), *fd.theta_tau());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn far_node_coefficients() {
        // the far-node coefficients 1 - c_j sum to l - 1 + c_0
        for label in ["A2", "A3", "A4", "D4"] {
            let rd = datum(label);
            for d in 2..=3 {
                for t in CyclicType::enumerate(d, rd.rank()) {
                    let Ok(fd) = fiber_description(&rd, &t) else { continue };
                    let c = fd.barycentric.c();
                    let total: Rational = (1..=rd.rank()).map(|j| Rational::one() - &c[j]).sum();
                    assert_eq!(total, Rational::from_integer(rd.rank() as i64 - 1) + &c[0]);
                }
            }
        }
    }
}
