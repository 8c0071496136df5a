use serde::Serialize;

use super::may_reach;
use super::page::{Page, PageMatrices};
use super::tor::TorKind;
use super::word::BarWord;
use crate::coeffs::{BiDegree, BitMatrix, Region};
use crate::hopf::{CircleMono, Gen, HopfPresentation, StarMono};

/// A surviving `s(g)` or `φ^(k)(g)` class of the equivariant bar `E²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivariantTorClass {
    pub kind: TorKind,
    pub k: u32,
    pub of: CircleMono,
    /// Filtration `2^k`.
    pub t: usize,
    pub bidegree: BiDegree,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleMatch {
    pub class: EquivariantTorClass,
    pub monomial: CircleMono,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub matches: Vec<CycleMatch>,
    pub unidentified: Vec<EquivariantTorClass>,
    /// Candidates the rules produced but the catalog lacks.
    pub missing: Vec<String>,
}

/// Whether the witness word is a cycle that is not a boundary, checked at a
/// bidegree of `region` where its cone is nonzero.
fn witness_survives(page: &Page, mats: &PageMatrices, w: &BarWord, region: &Region) -> Option<bool> {
    let label = w.to_string();
    let (t, s) = page.find(&label)?;
    let x = region.points().find(|&x| s.dim_at(x) > 0)?;
    let f = &page.filtrations[&t];
    let active: Vec<&str> = f.summands.iter().filter(|s| s.dim_at(x) > 0).map(|s| s.label.as_str()).collect();
    let row: Vec<bool> = active.iter().map(|l| *l == label).collect();
    let out = mats.matrix(t, x);
    let mut probe = BitMatrix::zeros(0, out.rows());
    probe.push_row(&row);
    if !probe.mul(&out).is_zero() {
        return Some(false);
    }
    let mut bounds = mats.matrix(t + 1, x + BiDegree::ONE);
    let before = bounds.rank();
    bounds.push_row(&row);
    Some(bounds.rank() > before)
}

fn shift_index(g: Gen, k: u32) -> Gen {
    match g {
        Gen::AlphaBar(j) => Gen::AlphaBar(j + k),
        other => other,
    }
}

/// The circle monomial a suspension or transpotence class is expected to
/// represent, or `None` when no identification is available (two or more
/// `e_σ` factors under a transpotence).
pub fn expected_monomial(g: &CircleMono, k: u32) -> Option<CircleMono> {
    let mut letters = g.letters().to_vec();
    if k == 0 {
        letters.push(Gen::E1);
        return Some(CircleMono::new(letters));
    }
    let signs = g.count(Gen::ESigma);
    let rest: Vec<Gen> = letters.drain(..).filter(|&l| l != Gen::ESigma).map(|l| shift_index(l, k)).collect();
    let mut out = rest;
    match signs {
        0 => out.push(Gen::Alpha(k - 1)),
        1 => out.push(Gen::BetaBar(k)),
        _ => return None,
    }
    Some(CircleMono::new(out))
}

/// Circle monomials with one trivial and `n` sign units: `e₁` or `α_(k)`
/// times `n` letters from `e_σ, ᾱ_(j)`, or `β̄_(k)` times `n - 1` of them,
/// kept if their cone can meet `region`.
pub fn sigma_plus_catalog(n: u32, region: &Region) -> Vec<CircleMono> {
    let reach = |d: BiDegree| may_reach(d, region);
    let mut signs: Vec<Gen> = vec![Gen::ESigma];
    let mut j = 0;
    while reach(Gen::AlphaBar(j).bidegree()) {
        signs.push(Gen::AlphaBar(j));
        j += 1;
    }
    let mut heads = vec![(Gen::E1, n)];
    let mut k = 0;
    while reach(Gen::Alpha(k).bidegree()) {
        heads.push((Gen::Alpha(k), n));
        k += 1;
    }
    let mut k = 0;
    while n >= 1 && reach(Gen::BetaBar(k).bidegree()) {
        heads.push((Gen::BetaBar(k), n - 1));
        k += 1;
    }
    fn multisets(alpha: &[Gen], start: usize, left: u32, cur: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..alpha.len() {
            cur.push(alpha[i]);
            multisets(alpha, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for (head, m) in heads {
        let mut tails = Vec::new();
        multisets(&signs, 0, m, &mut Vec::new(), &mut tails);
        for mut t in tails {
            t.push(head);
            let c = CircleMono::new(t);
            if reach(c.bidegree()) {
                out.push(c);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Finds the surviving `s(g) = [g]` and `φ^(k)(g) = [g|…|g]` classes for the
/// generators of `a`, and matches them to circle monomials: `[x] ↦ e₁∘x`,
/// transpotences of `ᾱ`-products to `α_(k-1)∘ᾱ…`, transpotences of
/// `e_σ∘R` to `β̄_(k)∘R`. Anything else is returned unidentified.
pub fn identify_permanent_cycles(
    a: &HopfPresentation,
    page: &Page,
    region: &Region,
    catalog: &[CircleMono],
) -> Identification {
    let mats = PageMatrices::new(page);
    let mut out = Identification::default();
    let t_max = page.t_max();
    for g in &a.generators {
        let mut k = 0u32;
        while (1usize << k) <= t_max {
            let t = 1usize << k;
            let Some(w) = BarWord::new(vec![StarMono::single(g.clone()); t]) else { break };
            match witness_survives(page, &mats, &w, region) {
                None => break,
                Some(false) => {
                    k += 1;
                    continue;
                }
                Some(true) => {}
            }
            let class = EquivariantTorClass {
                kind: if k == 0 { TorKind::Suspension } else { TorKind::Transpotence },
                k,
                of: g.clone(),
                t,
                bidegree: w.bidegree(),
                witness: w.to_string(),
            };
            match expected_monomial(g, k) {
                Some(m) if m.bidegree() == class.bidegree && catalog.contains(&m) => {
                    out.matches.push(CycleMatch { class, monomial: m })
                }
                Some(m) => {
                    out.missing.push(format!("{} ↦ {m}", class.witness));
                    out.unidentified.push(class);
                }
                None => out.unidentified.push(class),
            }
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(gs: &[Gen]) -> CircleMono {
        CircleMono::new(gs.to_vec())
    }

    #[test]
    fn rules() {
        let ea = cm(&[Gen::ESigma, Gen::AlphaBar(0)]);
        assert_eq!(expected_monomial(&ea, 0), Some(cm(&[Gen::E1, Gen::ESigma, Gen::AlphaBar(0)])));
        assert_eq!(expected_monomial(&ea, 2), Some(cm(&[Gen::BetaBar(2), Gen::AlphaBar(2)])));
        let aa = cm(&[Gen::AlphaBar(0), Gen::AlphaBar(1)]);
        let m = expected_monomial(&aa, 1).unwrap();
        assert_eq!(m, cm(&[Gen::Alpha(0), Gen::AlphaBar(1), Gen::AlphaBar(2)]));
        assert_eq!(m.bidegree(), BiDegree::new(2, 0) + 2 * aa.bidegree());
        let ee = cm(&[Gen::ESigma, Gen::ESigma]);
        assert_eq!(expected_monomial(&ee, 1), None);
        assert!(expected_monomial(&ee, 0).is_some());
    }

    #[test]
    fn transpotence_degrees_match() {
        for g in [cm(&[Gen::ESigma, Gen::AlphaBar(1)]), cm(&[Gen::AlphaBar(0), Gen::AlphaBar(0)])] {
            for k in 0..4u32 {
                let t = 1i64 << k;
                let want = BiDegree::new(t, 0) + t * g.bidegree();
                assert_eq!(expected_monomial(&g, k).unwrap().bidegree(), want);
            }
        }
    }

    #[test]
    fn catalog_contents() {
        let c = sigma_plus_catalog(2, &Region::new(0, 10, 0, 10));
        assert!(c.contains(&cm(&[Gen::E1, Gen::ESigma, Gen::ESigma])));
        assert!(c.contains(&cm(&[Gen::BetaBar(1), Gen::AlphaBar(1)])));
        let heads = |m: &CircleMono| {
            m.letters()
                .iter()
                .filter(|l| matches!(l, Gen::E1 | Gen::Alpha(_) | Gen::BetaBar(_)))
                .count()
        };
        assert!(c.iter().all(|m| heads(m) == 1));
    }
}
