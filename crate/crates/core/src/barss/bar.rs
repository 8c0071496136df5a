use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::page::{next_page, E2Table, MapKind, Page, SummandMap};
use super::word::BarWord;
use crate::coeffs::{BiDegree, GradedModule, M2Element, Region, Summand};
use crate::hopf::{HopfPresentation, StarMono};

/// The window widened by one column each way, so that both ends of every
/// differential touching `region` are present.
pub fn padded(region: &Region) -> Region {
    Region::new(
        region.p_min - 1,
        region.p_max + 1,
        region.q_min,
        region.q_max,
    )
}

/// A word (or entry) of bidegree `d` can still grow into something that
/// meets the window: either its negative cone or its positive cone reaches.
/// Monotone as long as generators have `p ≥ 0` and `p - q ≥ 0`.
pub(crate) fn may_reach(d: BiDegree, r: &Region) -> bool {
    d.p <= r.p_max || d.p - d.q <= r.p_max - r.q_min
}

/// Bar words of length `1..=t_max` built from `entries` whose cone meets
/// `r`. Prefixes are kept as index lists while they can still reach `r`.
pub(crate) fn enumerate_words(entries: &[StarMono], t_max: usize, r: &Region) -> Vec<BarWord> {
    let degs: Vec<BiDegree> = entries.iter().map(|e| e.bidegree() + BiDegree::ONE).collect();
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<u32>, BiDegree)> = vec![(Vec::new(), BiDegree::ZERO)];
    for _ in 0..t_max {
        let mut next = Vec::new();
        for (w, d) in &layer {
            for (i, e) in degs.iter().enumerate() {
                let d2 = *d + *e;
                if may_reach(d2, r) {
                    let mut v = w.clone();
                    v.push(i as u32);
                    next.push((v, d2));
                }
            }
        }
        out.extend(
            next.iter()
                .filter(|(_, d)| Summand::cone(*d, String::new()).meets(r))
                .filter_map(|(v, _)| BarWord::new(v.iter().map(|&i| entries[i as usize].clone()).collect())),
        );
        layer = next;
    }
    out
}

/// `E¹_t = H̃⋆(S^t) ⊗ H⋆(A)^{⊗t}`: one cone per bar word, at `(t,0)` plus
/// the entry degrees, for every word whose cone meets `region` (widened by
/// one column on each side).
pub fn bar_e1_equivariant(a: &HopfPresentation, t_max: usize, region: &Region) -> Page {
    let build = padded(region);
    let entries: Vec<StarMono> = a
        .basis_where(|d| may_reach(d + BiDegree::ONE, &build))
        .into_iter()
        .filter(|m| !m.is_unit())
        .collect();
    let mut filtrations: BTreeMap<usize, GradedModule> = BTreeMap::new();
    let mut words = HashMap::new();
    filtrations.insert(
        0,
        GradedModule::new(vec![Summand::cone(BiDegree::ZERO, "[]")]),
    );
    words.insert("[]".to_string(), BarWord::empty());
    for w in enumerate_words(&entries, t_max, &build) {
        let s = Summand::cone(w.bidegree(), w.to_string());
        filtrations.entry(w.len()).or_default().summands.push(s);
        words.insert(w.to_string(), w);
    }
    for t in 0..=t_max {
        filtrations.entry(t).or_default();
    }
    Page {
        r: 1,
        filtrations,
        d: Vec::new(),
        annotations: Vec::new(),
        region: Some(build),
        t_max: Some(t_max),
        words,
        ..Page::default()
    }
}

/// Installs the bar differential `d₁[k_1|…|k_t] = Σ [… | k_i k_{i+1} | …]`
/// as unit cone-to-cone components.
pub fn bar_d1(page: &Page) -> Page {
    let d = ordered_words(page)
        .par_iter()
        .flat_map_iter(|w| {
            let mut counts: BTreeMap<BarWord, u32> = BTreeMap::new();
            for f in w.faces() {
                *counts.entry(f).or_default() += 1;
            }
            let from = w.to_string();
            counts.into_iter().filter_map(move |(f, n)| {
                let label = f.to_string();
                (n % 2 == 1 && page.words.contains_key(&label)).then(|| SummandMap {
                    from: from.clone(),
                    to: label,
                    coeff: M2Element::one(),
                    kind: MapKind::ConeCone,
                    flag: None,
                })
            })
        })
        .collect();
    Page { d, ..page.clone() }
}

fn ordered_words(page: &Page) -> Vec<&BarWord> {
    page.summands()
        .filter_map(|(_, s)| page.words.get(&s.label))
        .collect()
}

/// `E²` ranks per `(t, p, q)` in `region`, with the cone reconstruction.
pub fn bar_e2(page: &Page, region: &Region) -> E2Table {
    next_page(page, region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::make_presentation;

    fn k_sigma_page() -> Page {
        let a = make_presentation("K_sigma", 2).unwrap();
        bar_e1_equivariant(&a, 3, &Region::new(0, 8, 0, 8))
    }

    #[test]
    fn unit_cone_at_origin() {
        let a = make_presentation("K_sigma", 2).unwrap();
        let page = bar_e1_equivariant(&a, 0, &Region::new(-2, 4, -2, 4));
        assert_eq!(
            page.filtrations[&0].summands,
            vec![Summand::cone(BiDegree::ZERO, "[]")]
        );
        assert_eq!(page.filtrations.len(), 1);
    }

    #[test]
    fn length_one_cones() {
        let page = k_sigma_page();
        let f1 = &page.filtrations[&1];
        let shift = |l: &str| {
            f1.summands
                .iter()
                .find(|s| s.label == l)
                .unwrap()
                .cone_shift()
                .unwrap()
        };
        assert_eq!(shift("[e_σ]"), BiDegree::new(2, 1));
        assert_eq!(shift("[ᾱ_(0)]"), BiDegree::new(3, 1));
    }

    #[test]
    fn d1_multiplies() {
        let page = bar_d1(&k_sigma_page());
        let has = |f: &str, t: &str| {
            page.d
                .iter()
                .any(|m| m.from == f && m.to == t && m.coeff.is_one())
        };
        assert!(has("[e_σ|ᾱ_(0)]", "[e_σᾱ_(0)]"));
        assert!(!page.d.iter().any(|m| m.from == "[e_σ|e_σ]"));
        assert!(!page.d.iter().any(|m| m.from.matches('|').count() == 0));
    }

    #[test]
    fn circle_group_collapses() {
        let a = make_presentation("S1", 2).unwrap();
        let page = bar_d1(&bar_e1_equivariant(&a, 9, &Region::new(0, 18, -2, 2)));
        let e2 = bar_e2(&page, &Region::new(0, 16, -2, 2));
        for t in 0..=8usize {
            let m = &e2.module[&t];
            assert_eq!(m.summands.len(), 1);
            assert_eq!(
                m.summands[0].cone_shift(),
                Some(BiDegree::new(2 * t as i64, 0))
            );
        }
        assert!(e2.unresolved.is_empty(), "{:?}", e2.unresolved);
    }
}
