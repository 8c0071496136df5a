use std::collections::{BTreeMap, HashMap};

use super::words::{sphere_degree, TwistedWord};
use crate::barss::{may_reach, next_page, padded, BarWord, E2Table, MapKind, Page, SummandMap};
use crate::coeffs::{BiDegree, GradedModule, M2Basis, M2Element, Orbit, Region, Summand, SummandKind};
use crate::error::{Error, Result};
use crate::hopf::{HopfPresentation, StarMono};

/// Fixed words `h · [m] · γ(h)^rev` of length `1..=t_max` whose cone can meet `r`,
/// built half by half; the shift only grows as the half grows.
fn fixed_words(entries: &[StarMono], conj: &dyn Fn(&StarMono) -> StarMono, t_max: usize, r: &Region) -> Vec<TwistedWord> {
    let mids: Vec<&StarMono> = entries.iter().filter(|m| conj(m) == **m).collect();
    let mut out = Vec::new();
    let mut halves: Vec<(Vec<StarMono>, BiDegree)> = vec![(Vec::new(), BiDegree::ZERO)];
    for h in 0..=t_max / 2 {
        let mut next = Vec::new();
        for (half, d) in &halves {
            let close = |mid: Option<&StarMono>| {
                let mut e = half.clone();
                e.extend(mid.cloned());
                e.extend(half.iter().rev().map(conj));
                TwistedWord::new(e)
            };
            if h > 0 && 2 * h <= t_max && may_reach(*d + sphere_degree(2 * h), r) {
                out.push(close(None));
            }
            if 2 * h < t_max {
                let base = *d + sphere_degree(2 * h + 1);
                for m in &mids {
                    if may_reach(base + m.bidegree(), r) {
                        out.push(close(Some(m)));
                    }
                }
            }
            if 2 * h + 2 <= t_max {
                for e in entries {
                    let d2 = *d + e.bidegree().p * BiDegree::RHO;
                    if may_reach(d2 + sphere_degree(2 * h + 2), r) {
                        let mut v = half.clone();
                        v.push(e.clone());
                        next.push((v, d2));
                    }
                }
            }
        }
        halves = next;
    }
    out
}

/// Representatives of free orbits with tower degree `p0` in `p_min..=p_max`.
fn free_words(entries: &[StarMono], conj: &dyn Fn(&StarMono) -> StarMono, t_max: usize, r: &Region) -> Vec<(TwistedWord, TwistedWord)> {
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<StarMono>, i64)> = vec![(Vec::new(), 0)];
    for _ in 0..t_max {
        let mut next = Vec::new();
        for (w, p) in &layer {
            for e in entries {
                let p2 = p + 1 + e.bidegree().p;
                if p2 <= r.p_max {
                    let mut v = w.clone();
                    v.push(e.clone());
                    next.push((v, p2));
                }
            }
        }
        for (v, p) in &next {
            if *p < r.p_min {
                continue;
            }
            let w = TwistedWord::new(v.clone());
            let g = w.gamma(conj);
            if w < g {
                out.push((w, g));
            }
        }
        layer = next;
    }
    out
}

/// `E¹_t = H̃⋆(S^{⌈t/2⌉σ+⌊t/2⌋} ∧ A^{∧t})`, one summand per orbit of words:
/// a cone for each fixed word and a tower `H⋆(C2+)` for each free orbit.
pub fn twisted_e1(a: &HopfPresentation, t_max: usize, region: &Region) -> Page {
    let build = padded(region);
    let conj = |m: &StarMono| a.conjugate(m);
    let entries: Vec<StarMono> = a
        .basis_where(|d| may_reach(d, &build))
        .into_iter()
        .filter(|m| !m.is_unit())
        .collect();
    let mut filtrations: BTreeMap<usize, GradedModule> = BTreeMap::new();
    let mut words = HashMap::new();
    let mut aliases = HashMap::new();
    for t in 0..=t_max {
        filtrations.entry(t).or_default();
    }
    filtrations.insert(
        0,
        GradedModule::new(vec![Summand::cone(BiDegree::ZERO, "[]").with_orbit(Orbit::Fixed)]),
    );
    words.insert("[]".to_string(), BarWord::empty());
    let mut add = |w: &TwistedWord, s: Summand, words: &mut HashMap<String, BarWord>| {
        if let Some(bw) = w.bar_word() {
            filtrations.entry(w.t()).or_default().summands.push(s);
            words.insert(w.to_string(), bw);
        }
    };
    for w in fixed_words(&entries, &conj, t_max, &build) {
        let s = w.summand(true).with_orbit(Orbit::Fixed);
        if s.meets(&build) {
            add(&w, s, &mut words);
        }
    }
    for (w, g) in free_words(&entries, &conj, t_max, &build) {
        add(&w, w.summand(false).with_orbit(Orbit::Free), &mut words);
        aliases.insert(g.to_string(), w.to_string());
    }
    for m in filtrations.values_mut() {
        m.summands.sort_by(|x, y| x.label.cmp(&y.label));
    }
    Page {
        r: 1,
        filtrations,
        region: Some(build),
        t_max: Some(t_max),
        words,
        aliases,
        ..Page::default()
    }
}

/// The lifted `d₁`: the underlying bar differential counted orbitwise, each
/// nonzero component typed by its source and target summands.
pub fn twisted_d1(page: &Page) -> Result<Page> {
    let kinds: HashMap<&str, SummandKind> = page.summands().map(|(_, s)| (s.label.as_str(), s.kind)).collect();
    let mut d = Vec::new();
    for (_, s) in page.summands() {
        let Some(w) = page.words.get(&s.label) else { continue };
        let mut counts: BTreeMap<String, u32> = BTreeMap::new();
        for f in w.faces() {
            let l = f.to_string();
            let l = page.aliases.get(&l).cloned().unwrap_or(l);
            *counts.entry(l).or_default() += 1;
        }
        for (to, n) in counts {
            if n % 2 == 0 {
                continue;
            }
            let Some(&tk) = kinds.get(to.as_str()) else { continue };
            d.push(template(&s.label, s.kind, &to, tk)?);
        }
    }
    Ok(Page { d, ..page.clone() })
}

fn template(from: &str, fk: SummandKind, to: &str, tk: SummandKind) -> Result<SummandMap> {
    let err = |reason: String| Error::Template {
        from: from.to_string(),
        to: to.to_string(),
        reason,
    };
    let map = |kind, coeff, flag: Option<&str>| SummandMap {
        from: from.to_string(),
        to: to.to_string(),
        coeff,
        kind,
        flag: flag.map(str::to_string),
    };
    use SummandKind::*;
    Ok(match (fk, tk) {
        (InducedTower { p0 }, InducedTower { p0: p1 }) => {
            if p1 != p0 - 1 {
                return Err(err(format!("towers at {p0} and {p1}")));
            }
            map(MapKind::TowerTower, M2Element::one(), None)
        }
        (InducedTower { p0 }, FreeCone { shift }) => {
            if shift.p != p0 - 1 {
                return Err(err(format!("tower at {p0} cannot reach the column of a cone at {shift}")));
            }
            map(MapKind::TowerCone, M2Element::one(), None)
        }
        (FreeCone { shift: s }, FreeCone { shift: s2 }) => {
            let deg = s - s2 - BiDegree::ONE;
            let b = M2Basis::at(deg).ok_or_else(|| err(format!("no M2 monomial in degree {deg}")))?;
            map(MapKind::ConeCone, M2Element::from(b), None)
        }
        (FreeCone { .. }, InducedTower { .. }) => map(
            MapKind::ConeTower,
            M2Element::one(),
            Some("cone to tower component carried as zero"),
        ),
    })
}

/// `E²` ranks of the twisted bar SS with the reconstructed module and its
/// hidden-extension annotations.
pub fn twisted_e2_dims(page: &Page, region: &Region) -> E2Table {
    next_page(page, region)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barss::d_squared_failures;
    use crate::hopf::make_presentation;

    fn shifts(page: &Page, t: usize) -> Vec<BiDegree> {
        page.filtrations[&t].cones().map(|s| s.cone_shift().unwrap()).collect()
    }

    #[test]
    fn group_ring_ladder() {
        let a = make_presentation("F2", 0).unwrap();
        let page = twisted_d1(&twisted_e1(&a, 10, &Region::new(-2, 12, -4, 8))).unwrap();
        for t in 0..=10 {
            assert_eq!(shifts(&page, t), vec![sphere_degree(t)]);
            assert_eq!(page.filtrations[&t].towers().count(), 0);
        }
        assert!(page.d.is_empty());
    }

    #[test]
    fn k_sigma_twisted_e1() {
        let a = make_presentation("K_sigma", 0).unwrap();
        let page = twisted_e1(&a, 4, &Region::new(0, 12, 0, 8));
        let find = |l: &str| page.find(l).map(|(_, s)| s.kind);
        assert_eq!(find("[e_σᾱ_(0)]"), Some(SummandKind::FreeCone { shift: BiDegree::new(4, 3) }));
        assert_eq!(
            find("[e_σᾱ_(0)|e_σᾱ_(0)]"),
            Some(SummandKind::FreeCone { shift: BiDegree::new(8, 4) })
        );
        assert_eq!(
            find("[e_σ|ᾱ_(0)|ᾱ_(0)|e_σ]"),
            Some(SummandKind::FreeCone { shift: BiDegree::new(10, 5) })
        );
        assert_eq!(find("[e_σ|ᾱ_(0)]"), Some(SummandKind::InducedTower { p0: 5 }));
        assert_eq!(find("[ᾱ_(0)|e_σ]"), None);
        assert_eq!(page.aliases["[ᾱ_(0)|e_σ]"], "[e_σ|ᾱ_(0)]");
        assert_eq!(find("[e_σ|ᾱ_(0)|e_σᾱ_(0)]"), Some(SummandKind::InducedTower { p0: 9 }));
        let rep = &page.aliases["[ᾱ_(0)|e_σ|e_σᾱ_(0)]"];
        assert_eq!(find(rep), Some(SummandKind::InducedTower { p0: 9 }));
    }

    #[test]
    fn k_sigma_twisted_d1() {
        let a = make_presentation("K_sigma", 0).unwrap();
        let r = Region::new(0, 12, 0, 8);
        let page = twisted_d1(&twisted_e1(&a, 5, &r)).unwrap();
        let rep = |l: &str| page.aliases.get(l).cloned().unwrap_or(l.to_string());
        let into = |l: &str| {
            let mut v: Vec<String> = page.d.iter().filter(|m| m.to == l).map(|m| m.from.clone()).collect();
            v.sort();
            v
        };
        assert_eq!(into("[e_σᾱ_(0)]"), vec!["[e_σ|ᾱ_(0)]".to_string()]);
        assert_eq!(
            into("[e_σᾱ_(0)|e_σᾱ_(0)]"),
            {
                let mut v = vec![rep("[e_σ|ᾱ_(0)|e_σᾱ_(0)]"), rep("[ᾱ_(0)|e_σ|e_σᾱ_(0)]")];
                v.sort();
                v
            }
        );
        assert!(page.d.iter().all(|m| m.from != "[e_σ|ᾱ_(0)|ᾱ_(0)|e_σ]"));
        assert!(page.d.iter().all(|m| m.from != "[e_σ|e_σ]"));
        assert!(d_squared_failures(&page, &r).is_empty());
        let e2 = twisted_e2_dims(&page, &r);
        let ann = e2.annotations.iter().find(|n| n.target == "[e_σᾱ_(0)|e_σᾱ_(0)]").unwrap();
        assert_eq!(ann.kind, "hidden-extension");
        let cone = e2.module[&2].summands.iter().find(|s| s.label == "[e_σᾱ_(0)|e_σᾱ_(0)]").unwrap();
        assert_eq!(cone.cone_shift(), Some(BiDegree::new(9, 5)));
    }

    #[test]
    fn tower_into_wrong_column_is_an_error() {
        let e = template("w", SummandKind::InducedTower { p0: 5 }, "v", SummandKind::FreeCone { shift: BiDegree::new(3, 1) });
        assert!(matches!(e, Err(Error::Template { .. })));
        let c = template("w", SummandKind::FreeCone { shift: BiDegree::new(3, 3) }, "v", SummandKind::FreeCone { shift: BiDegree::new(2, 2) });
        assert!(matches!(c, Err(Error::Template { .. })));
    }

    #[test]
    fn sign_sphere_has_no_differential() {
        let a = make_presentation("S_sigma", 0).unwrap();
        let page = twisted_d1(&twisted_e1(&a, 6, &Region::new(0, 12, 0, 8))).unwrap();
        assert!(page.d.is_empty());
        for t in 0..=6 {
            assert_eq!(page.filtrations[&t].summands.len(), 1);
        }
    }
}
