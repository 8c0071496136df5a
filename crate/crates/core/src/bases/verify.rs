use std::collections::BTreeSet;

use serde::Serialize;

use super::maps::{gen_fixed_classes, phi_e, phi_fixed};
use super::rw::{exterior_poincare, gen_rw_words};
use crate::coeffs::BiDegree;
use crate::error::Result;
use crate::hopf::CircleMono;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Underlying,
    Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

/// One degree of one comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BwRow {
    pub side: Side,
    pub degree: i64,
    pub expected: u64,
    pub got: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BwReport {
    pub space: BiDegree,
    pub deg_max: i64,
    pub status: Status,
    pub rows: Vec<BwRow>,
}

impl BwReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_failure(&self) -> Option<&BwRow> {
        self.rows.iter().find(|r| r.status == Status::Fail)
    }
}

fn compare(side: Side, expected: &[u64], got: &[u64], clash: Option<(i64, String)>) -> Vec<BwRow> {
    let mut rows: Vec<BwRow> = expected
        .iter()
        .zip(got)
        .enumerate()
        .map(|(d, (&e, &g))| BwRow {
            side,
            degree: d as i64,
            expected: e,
            got: g,
            status: if e == g { Status::Pass } else { Status::Fail },
            note: None,
        })
        .collect();
    if let Some((d, what)) = clash {
        let row = &mut rows[d as usize];
        row.status = Status::Fail;
        row.note = Some(format!("not injective: {what}"));
    }
    rows
}

/// Freeness check: the candidates generate a free `M2`-module basis of
/// `H⋆K_V` if their underlying and fixed-point images are generating sets of
/// exterior algebras with the right Poincaré series, with no two candidates
/// sharing an image. Everything is compared through degree `deg_max`.
///
/// The candidate list must be complete on both sides: generators of fixed
/// degree `≤ deg_max` may have underlying degree up to about `2·deg_max + |V|`.
pub fn verify_bw(candidates: &[CircleMono], v: BiDegree, deg_max: i64) -> Result<BwReport> {
    let mut under_imgs = BTreeSet::new();
    let mut under_degs = Vec::new();
    let mut under_clash = None;
    let mut fixed_imgs = BTreeSet::new();
    let mut fixed_degs = Vec::new();
    let mut fixed_clash = None;
    for c in candidates {
        let d = c.bidegree();
        if d.p <= deg_max {
            match phi_e(c) {
                Some(w) if w.degree() == d.p && w.len() as i64 == v.p => {
                    if !under_imgs.insert(w.clone()) && under_clash.is_none() {
                        under_clash = Some((d.p, format!("{c} ↦ {w}")));
                    }
                    under_degs.push(d.p);
                }
                _ => {
                    under_clash =
                        under_clash.or(Some((d.p, format!("{c} has no underlying image"))))
                }
            }
        }
        if d.fixed_dim() <= deg_max {
            match phi_fixed(c) {
                Some(f) if f.degree() == d.fixed_dim() => {
                    if !fixed_imgs.insert(f.clone()) && fixed_clash.is_none() {
                        fixed_clash = Some((d.fixed_dim(), format!("{c} ↦ {f}")));
                    }
                    fixed_degs.push(d.fixed_dim());
                }
                _ => {
                    fixed_clash = fixed_clash.or(Some((
                        d.fixed_dim(),
                        format!("{c} has no fixed-point image"),
                    )))
                }
            }
        }
    }
    let want_under: Vec<i64> = gen_rw_words(v.p.max(0) as u32, deg_max)
        .iter()
        .map(|w| w.degree())
        .collect();
    let want_fixed: Vec<i64> = gen_fixed_classes(v, deg_max)?
        .iter()
        .map(|c| c.degree())
        .collect();

    let mut rows = compare(
        Side::Underlying,
        &exterior_poincare(want_under, deg_max),
        &exterior_poincare(under_degs, deg_max),
        under_clash,
    );
    rows.extend(compare(
        Side::Fixed,
        &exterior_poincare(want_fixed, deg_max),
        &exterior_poincare(fixed_degs, deg_max),
        fixed_clash,
    ));
    let status = if rows.iter().all(|r| r.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(BwReport {
        space: v,
        deg_max,
        status,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{gen_sigma_plus_basis, gen_signed_basis};

    #[test]
    fn k_sigma_passes() {
        let c = gen_signed_basis(1, 40);
        let r = verify_bw(&c, BiDegree::SIGMA, 12).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn k_rho_passes() {
        let c = gen_sigma_plus_basis(1, 40);
        let r = verify_bw(&c, BiDegree::RHO, 10).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn duplicate_is_caught() {
        let mut c = gen_signed_basis(1, 40);
        c.push(c[1].clone());
        let r = verify_bw(&c, BiDegree::SIGMA, 8).unwrap();
        assert!(!r.passed());
    }
}
