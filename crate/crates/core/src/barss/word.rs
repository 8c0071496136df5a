use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coeffs::{BiDegree, M2Element};
use crate::hopf::calculus::{circle, star_coproduct};
use crate::hopf::StarMono;

/// `[k_1|…|k_t]` with nonunit star monomial entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarWord(Vec<StarMono>);

impl BarWord {
    /// `None` if some entry is the unit (a degenerate word).
    pub fn new(entries: Vec<StarMono>) -> Option<Self> {
        entries
            .iter()
            .all(|e| !e.is_unit())
            .then_some(BarWord(entries))
    }

    pub fn empty() -> Self {
        BarWord(Vec::new())
    }

    pub fn entries(&self) -> &[StarMono] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the entry bidegrees.
    pub fn internal(&self) -> BiDegree {
        self.0.iter().fold(BiDegree::ZERO, |d, e| d + e.bidegree())
    }

    /// `(t, 0) + Σ |k_i|`: where the word's cone starts on the `E¹` page.
    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.len() as i64, 0) + self.internal()
    }

    /// Total underlying degree `t + Σ p(k_i)`.
    pub fn underlying_degree(&self) -> i64 {
        self.bidegree().p
    }

    /// Nonzero inner faces `[…|k_i k_{i+1}|…]`.
    pub fn faces(&self) -> Vec<BarWord> {
        let mut out = Vec::new();
        for i in 0..self.len().saturating_sub(1) {
            if let Some(k) = self.0[i].mul(&self.0[i + 1]) {
                let mut v = self.0[..i].to_vec();
                v.push(k);
                v.extend_from_slice(&self.0[i + 2..]);
                out.push(BarWord(v));
            }
        }
        out
    }

    pub fn reversed(&self) -> BarWord {
        BarWord(self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

impl Serialize for BarWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|e| e.tokens()))
    }
}

/// An `M2`-linear combination of bar words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSum(BTreeMap<BarWord, M2Element>);

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn word(w: BarWord) -> Self {
        let mut s = WordSum::zero();
        s.add_term(w, &M2Element::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, &M2Element)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, w: BarWord, c: &M2Element) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &WordSum) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c);
        }
    }

    /// The bar differential, extended `M2`-linearly.
    pub fn d1(&self) -> WordSum {
        let mut out = WordSum::zero();
        for (w, c) in self.terms() {
            for f in w.faces() {
                out.add_term(f, c);
            }
        }
        out
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| {
                if c.is_one() {
                    w.to_string()
                } else {
                    format!("({c}){w}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `ψ^(t)(k) = Σ k' ⊗ … ⊗ k^(t)`, the `(t-1)`-fold iterated coproduct.
fn iterated_coproduct(k: &StarMono, t: usize) -> Vec<(Vec<StarMono>, M2Element)> {
    let mut acc = vec![(vec![k.clone()], M2Element::one())];
    for _ in 1..t {
        let mut next = Vec::new();
        for (parts, c) in acc {
            let (last, head) = parts.split_last().expect("nonempty");
            for (l, r, d) in star_coproduct(last).terms() {
                let mut v = head.to_vec();
                v.push(l.clone());
                v.push(r.clone());
                next.push((v, c.mul(d)));
            }
        }
        acc = next;
    }
    acc
}

/// `[k_1|…|k_t] ∘ k = Σ [k_1∘k'|…|k_t∘k^(t)]`; words with a unit entry are
/// degenerate and dropped.
pub fn circle_on_bar_word(w: &BarWord, k: &StarMono) -> WordSum {
    let mut out = WordSum::zero();
    if w.is_empty() {
        if k.counit() {
            out.add_term(BarWord::empty(), &M2Element::one());
        }
        return out;
    }
    for (parts, c) in iterated_coproduct(k, w.len()) {
        // expand Π (k_i ∘ k^(i)) entrywise
        let mut partial: Vec<(Vec<StarMono>, M2Element)> = vec![(Vec::new(), c)];
        for (ki, kk) in w.entries().iter().zip(&parts) {
            let e = circle(ki, kk);
            let mut next = Vec::new();
            for (v, c) in &partial {
                for (m, d) in e.terms() {
                    if m.is_unit() {
                        continue;
                    }
                    let cd = c.mul(d);
                    if cd.is_zero() {
                        continue;
                    }
                    let mut v2 = v.clone();
                    v2.push(m.clone());
                    next.push((v2, cd));
                }
            }
            partial = next;
            if partial.is_empty() {
                break;
            }
        }
        for (v, c) in partial {
            out.add_term(BarWord(v), &c);
        }
    }
    out
}

/// [`circle_on_bar_word`] extended linearly.
pub fn circle_on_sum(s: &WordSum, k: &StarMono) -> WordSum {
    let mut out = WordSum::zero();
    for (w, c) in s.terms() {
        for (v, d) in circle_on_bar_word(w, k).terms() {
            out.add_term(v.clone(), &c.mul(d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{CircleMono, Gen};

    fn g(x: Gen) -> StarMono {
        StarMono::from(x)
    }

    #[test]
    fn word_degrees() {
        let w = BarWord::new(vec![g(Gen::ESigma), g(Gen::AlphaBar(0))]).unwrap();
        assert_eq!(w.bidegree(), BiDegree::new(5, 2));
        assert!(BarWord::new(vec![StarMono::unit()]).is_none());
    }

    #[test]
    fn faces_multiply_neighbours() {
        let x = g(Gen::ESigma);
        let y = g(Gen::AlphaBar(0));
        let w = BarWord::new(vec![x.clone(), y.clone()]).unwrap();
        let f = w.faces();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].entries(), &[x.mul(&y).unwrap()]);
        assert!(BarWord::new(vec![x.clone(), x]).unwrap().faces().is_empty());
    }

    #[test]
    fn circle_single_entry() {
        let w = BarWord::new(vec![g(Gen::AlphaBar(0))]).unwrap();
        let k = g(Gen::ESigma);
        let got = circle_on_bar_word(&w, &k);
        let want = StarMono::single(CircleMono::new(vec![Gen::ESigma, Gen::AlphaBar(0)]));
        assert_eq!(got, WordSum::word(BarWord::new(vec![want]).unwrap()));
    }

    #[test]
    fn circle_with_unit() {
        let w = BarWord::new(vec![g(Gen::ESigma), g(Gen::AlphaBar(1))]).unwrap();
        let one = StarMono::single(CircleMono::unit());
        assert_eq!(circle_on_bar_word(&w, &one), WordSum::word(w));
    }

    #[test]
    fn sign_square_picks_up_a() {
        // only the a·e⊗e part of ψ(e_σ) survives on a length two word
        let e = g(Gen::ESigma);
        let w = BarWord::new(vec![e.clone(), e.clone()]).unwrap();
        let ee = StarMono::single(CircleMono::new(vec![Gen::ESigma, Gen::ESigma]));
        let got = circle_on_bar_word(&w, &e);
        let mut want = WordSum::zero();
        want.add_term(BarWord::new(vec![ee.clone(), ee]).unwrap(), &M2Element::a());
        assert_eq!(got, want);
    }
}
