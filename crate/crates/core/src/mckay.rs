//! McKay correspondence for `Gamma_d` acting on the plane through `SL(2)`.
//!
//! `zeta` acts by `(u, v) -> (zeta u, zeta^{d-1} v)`. The invariants are
//! generated by `x = u^d`, `y = v^d`, `t = uv`, and the semi-invariants of
//! character `psi_s` form the module generated by `u^s` and `v^{d-s}`. The
//! nontrivial character `psi_s` corresponds to the exceptional curve `R_s` of
//! the minimal resolution.

use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent vector `(i, j)` of the monomial `u^i v^j`.
pub type UvMonomial = [i64; 2];

/// Exponent vector `(i, j, k)` of the monomial `x^i y^j t^k`.
pub type XytMonomial = [i64; 3];

fn check_range(s: i64, d: i64) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("d must be at least 2, got {d}")));
    }
    if !(1..d).contains(&s) {
        return Err(Error::OutOfRange(format!(
            "character index {s} not in 1..={}",
            d - 1
        )));
    }
    Ok(())
}

/// The exponent `e` with `zeta . u^i v^j = zeta^e u^i v^j`.
pub fn character_exponent(m: UvMonomial, d: i64) -> i64 {
    (m[0] + (d - 1) * m[1]).rem_euclid(d)
}

/// Generators `(u^s, v^{d-s})` of the `psi_s` semi-invariants.
pub fn invariant_generators(s: i64, d: i64) -> Result<[UvMonomial; 2]> {
    check_range(s, d)?;
    Ok([[s, 0], [0, d - s]])
}

/// The ideal `(x, t^{d-s})` cut out on `Spec R` by the sheaf attached to `psi_s`.
pub fn ideal_presentation(s: i64, d: i64) -> Result<[XytMonomial; 2]> {
    check_range(s, d)?;
    Ok([[1, 0, 0], [0, 0, d - s]])
}

/// Rewrites an invariant monomial `u^i v^j` in `x, y, t`, if it is one of the
/// form `x^a y^b t^c`.
pub fn to_xyt(m: UvMonomial, d: i64) -> Option<XytMonomial> {
    let c = m[0].min(m[1]);
    let (i, j) = (m[0] - c, m[1] - c);
    (i % d == 0 && j % d == 0).then_some([i / d, j / d, c])
}

/// `c_1(L_psi_s) . R_j`: the identity under `psi_s -> R_s`.
pub fn mckay_matrix(d: i64) -> Result<Vec<Vec<i64>>> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("d must be at least 2, got {d}")));
    }
    let n = (d - 1) as usize;
    Ok((0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect())
}

/// Intersection matrix of the exceptional chain `R_1, ..., R_{d-1}`.
pub fn resolution_intersection_matrix(d: i64) -> Result<Vec<Vec<i64>>> {
    let mut m = mckay_matrix(d)?;
    let n = m.len();
    for i in 0..n {
        for j in 0..n {
            m[i][j] = match i.abs_diff(j) {
                0 => -2,
                1 => 1,
                _ => 0,
            };
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McKayRow {
    pub s: i64,
    pub generators: [UvMonomial; 2],
    pub ideal: [XytMonomial; 2],
    /// Index `j` of the exceptional component `R_j`.
    pub component: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McKayData {
    pub d: i64,
    pub rows: Vec<McKayRow>,
    pub mckay_matrix: Vec<Vec<i64>>,
    pub intersection_matrix: Vec<Vec<i64>>,
}

impl McKayData {
    pub fn new(d: i64) -> Result<Self> {
        let rows = (1..d)
            .map(|s| {
                Ok(McKayRow {
                    s,
                    generators: invariant_generators(s, d)?,
                    ideal: ideal_presentation(s, d)?,
                    component: s,
                })
            })
            .collect::<Result<_>>()?;
        Ok(McKayData {
            d,
            rows,
            mckay_matrix: mckay_matrix(d)?,
            intersection_matrix: resolution_intersection_matrix(d)?,
        })
    }
}
