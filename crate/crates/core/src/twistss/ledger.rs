use std::collections::BTreeMap;

use serde::Serialize;

use super::words::TwistedWord;
use crate::barss::{Annotation, BarWord, E2Table, Page};
use crate::coeffs::{BiDegree, BitMatrix, GradedModule, SummandKind};
use crate::error::{Error, Result};
use crate::hopf::{CircleMono, HopfPresentation, StarMono};

/// What happens to a word in the underlying nonequivariant bar complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnderlyingFate {
    Survives,
    Boundary,
    NotCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MustDie {
    pub label: String,
    pub t: usize,
    pub fate: UnderlyingFate,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MustDieLedger {
    pub entries: Vec<MustDie>,
    /// `(degree, E² count, answer count)` where the underlying `E²` count of
    /// classes exceeds that of the answer.
    pub excess: Vec<(i64, usize, usize)>,
}

impl MustDieLedger {
    pub fn contains(&self, label: &str) -> bool {
        self.entries.iter().any(|e| e.label == label)
    }
}

/// Bar words of length `t` over `basis` with entry degrees summing to `internal`.
fn words_of_degree(basis: &[StarMono], t: usize, internal: i64) -> Vec<BarWord> {
    let mut layer: Vec<(Vec<StarMono>, i64)> = vec![(Vec::new(), 0)];
    for _ in 0..t {
        let mut next = Vec::new();
        for (w, p) in &layer {
            for e in basis {
                let p2 = p + e.bidegree().p;
                if p2 <= internal {
                    let mut v = w.clone();
                    v.push(e.clone());
                    next.push((v, p2));
                }
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .filter(|(_, p)| *p == internal)
        .filter_map(|(v, _)| BarWord::new(v))
        .collect()
}

/// Decides the fate of `w` in the bar complex of the underlying algebra of `a`.
pub fn underlying_fate(a: &HopfPresentation, w: &BarWord) -> UnderlyingFate {
    let mut odd: BTreeMap<BarWord, bool> = BTreeMap::new();
    for f in w.faces() {
        *odd.entry(f).or_default() ^= true;
    }
    if odd.values().any(|&b| b) {
        return UnderlyingFate::NotCycle;
    }
    let internal = w.internal().p;
    let basis: Vec<StarMono> = a.basis_up_to(internal).into_iter().filter(|m| !m.is_unit()).collect();
    let cols = words_of_degree(&basis, w.len(), internal);
    let col: BTreeMap<&BarWord, usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut m = BitMatrix::zeros(0, cols.len());
    for src in words_of_degree(&basis, w.len() + 1, internal) {
        let mut row = vec![false; cols.len()];
        for f in src.faces() {
            if let Some(&j) = col.get(&f) {
                row[j] ^= true;
            }
        }
        m.push_row(&row);
    }
    let before = m.rank();
    let mut row = vec![false; cols.len()];
    row[col[w]] = true;
    m.push_row(&row);
    if m.rank() == before {
        UnderlyingFate::Boundary
    } else {
        UnderlyingFate::Survives
    }
}

fn underlying_counts(m: &GradedModule) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for s in &m.summands {
        match s.kind {
            SummandKind::FreeCone { shift } => *out.entry(shift.p).or_default() += 1,
            SummandKind::InducedTower { p0 } => *out.entry(p0).or_default() += 2,
        }
    }
    out
}

/// Cone summands of `E²` whose underlying class dies (is a boundary) or
/// never was one (is not a cycle) in the nonequivariant bar complex: these
/// must be hit by, or support, a longer differential. `answer` is the expected
/// abutment; degrees where `E²` forgets to more classes than the answer are
/// listed as excess.
pub fn must_die_ledger(a: &HopfPresentation, page: &Page, e2: &E2Table, answer: &GradedModule) -> MustDieLedger {
    let mut out = MustDieLedger::default();
    let mut all = GradedModule::default();
    for (&t, m) in &e2.module {
        all = all.concat(m);
        for s in m.cones() {
            let Some(w) = page.words.get(&s.label) else { continue };
            let fate = underlying_fate(a, w);
            if fate != UnderlyingFate::Survives {
                out.entries.push(MustDie {
                    label: s.label.clone(),
                    t,
                    fate,
                });
            }
        }
    }
    if let Some(r) = e2.region {
        let have = underlying_counts(&all);
        let want = underlying_counts(answer);
        for p in r.p_min..=r.p_max {
            let (h, w) = (have.get(&p).copied().unwrap_or(0), want.get(&p).copied().unwrap_or(0));
            if h > w {
                out.excess.push((p, h, w));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormCandidate {
    pub word: TwistedWord,
    /// `r` of the would-be `d_r`.
    pub r: usize,
    pub source_shift: BiDegree,
    /// Target cone shifts tried: as on `E¹` and after recorded extensions.
    pub target_shifts: Vec<BiDegree>,
    pub degree_compatible: bool,
}

/// Ordered factorizations of `m` into at least two nonunit factors.
fn ordered_factorizations(m: &StarMono) -> Vec<Vec<StarMono>> {
    fn rec(left: &[usize], facs: &[CircleMono], cur: &mut Vec<StarMono>, out: &mut Vec<Vec<StarMono>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        // nonempty subsets of the remaining factors, as the next block
        let n = left.len();
        for mask in 1u32..(1 << n) {
            let block: Vec<_> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| facs[left[i]].clone()).collect();
            let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| left[i]).collect();
            cur.push(StarMono::from_factors(block).expect("distinct factors"));
            rec(&rest, facs, cur, out);
            cur.pop();
        }
    }
    let facs = m.factors();
    let idx: Vec<usize> = (0..facs.len()).collect();
    let mut out = Vec::new();
    rec(&idx, facs, &mut Vec::new(), &mut out);
    out.retain(|f| f.len() >= 2);
    out
}

/// Norm-type sources for a longer differential into the fixed word `w`:
/// each mirror-pair entry is split into an ordered factorization and the
/// halves are mirrored, e.g. `[xy|xy] ↦ [x|y|y|x]`. The first candidate
/// keeps factor order. A candidate is degree compatible when its cone
/// sits exactly one total degree above `w`'s cone, either as on `E¹` or as
/// moved by an annotation on `w`.
pub fn norm_candidate(a: &HopfPresentation, w: &TwistedWord, annotations: &[Annotation]) -> Result<Vec<NormCandidate>> {
    let conj = |m: &StarMono| a.conjugate(m);
    if !w.is_fixed(conj) {
        return Err(Error::NoCandidate(format!("{w} is not fixed")));
    }
    let t = w.t();
    let half = &w.entries[..t / 2];
    let mid = (t % 2 == 1).then(|| w.entries[t / 2].clone());
    let options: Vec<Vec<Vec<StarMono>>> = half
        .iter()
        .map(|e| {
            let mut v = vec![vec![e.clone()]];
            v.extend(ordered_factorizations(e));
            v
        })
        .collect();
    let label = w.to_string();
    let mut targets = vec![w.fixed_shift()];
    targets.extend(annotations.iter().filter(|n| n.target == label).map(|n| w.fixed_shift() + n.shift));
    let mut out = Vec::new();
    let mut choice = vec![0usize; options.len()];
    loop {
        if choice.iter().any(|&c| c > 0) {
            let mut left: Vec<StarMono> = Vec::new();
            for (i, &c) in choice.iter().enumerate() {
                left.extend(options[i][c].iter().cloned());
            }
            let mut e = left.clone();
            e.extend(mid.clone());
            e.extend(left.iter().rev().map(conj));
            let c = TwistedWord::new(e);
            let s = c.fixed_shift();
            let r = c.t() - t;
            out.push(NormCandidate {
                degree_compatible: r >= 2 && targets.iter().any(|&d| s - BiDegree::ONE == d),
                word: c,
                r,
                source_shift: s,
                target_shifts: targets.clone(),
            });
        }
        let mut k = options.len();
        loop {
            if k == 0 {
                if out.is_empty() {
                    return Err(Error::NoCandidate(label));
                }
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barss::Annotation;
    use crate::hopf::{make_presentation, Gen};

    fn xy() -> (HopfPresentation, StarMono, StarMono) {
        let a = make_presentation("K_sigma", 0).unwrap();
        (a, StarMono::from(Gen::ESigma), StarMono::from(Gen::AlphaBar(0)))
    }

    #[test]
    fn fates() {
        let (a, x, y) = xy();
        let xym = x.mul(&y).unwrap();
        let bw = |v: Vec<StarMono>| BarWord::new(v).unwrap();
        assert_eq!(underlying_fate(&a, &bw(vec![xym.clone(), xym.clone()])), UnderlyingFate::Boundary);
        assert_eq!(underlying_fate(&a, &bw(vec![x.clone(), y.clone(), y.clone(), x.clone()])), UnderlyingFate::NotCycle);
        assert_eq!(underlying_fate(&a, &bw(vec![y.clone(), y.clone(), y])), UnderlyingFate::Survives);
        assert_eq!(underlying_fate(&a, &bw(vec![x])), UnderlyingFate::Survives);
    }

    #[test]
    fn doubled_word() {
        let (a, x, y) = xy();
        let xym = x.mul(&y).unwrap();
        let w = TwistedWord::new(vec![xym.clone(), xym]);
        let ann = Annotation {
            kind: "hidden-extension".into(),
            target: w.to_string(),
            shift: BiDegree::SIGMA,
        };
        let c = norm_candidate(&a, &w, &[ann]).unwrap();
        assert_eq!(c[0].word, TwistedWord::new(vec![x.clone(), y.clone(), y.clone(), x.clone()]));
        assert_eq!(c[0].r, 2);
        assert!(c[0].degree_compatible);
        let bare = norm_candidate(&a, &w, &[]).unwrap();
        assert!(!bare[0].degree_compatible);
        assert!(c.iter().any(|n| n.word == TwistedWord::new(vec![y.clone(), x.clone(), x.clone(), y.clone()])));
    }

    #[test]
    fn generators_have_no_candidate() {
        let (a, x, _) = xy();
        let w = TwistedWord::new(vec![x.clone(), x]);
        assert!(matches!(norm_candidate(&a, &w, &[]), Err(Error::NoCandidate(_))));
    }

    #[test]
    fn triple_product_unfoldings() {
        let a = make_presentation("K_sigma", 1).unwrap();
        let x = StarMono::from(Gen::ESigma);
        let y = StarMono::from(Gen::AlphaBar(0));
        let z = StarMono::from(Gen::AlphaBar(1));
        let xyz = x.mul(&y).unwrap().mul(&z).unwrap();
        let w = TwistedWord::new(vec![xyz.clone(), xyz]);
        let c = norm_candidate(&a, &w, &[]).unwrap();
        // 6 orders into three blocks, 6 into two
        assert_eq!(c.len(), 12);
        let yz = y.mul(&z).unwrap();
        assert!(c.iter().any(|n| n.word == TwistedWord::new(vec![x.clone(), yz.clone(), yz.clone(), x.clone()])));
    }
}
