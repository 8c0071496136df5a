use std::fmt;

use serde::Serialize;

use crate::barss::BarWord;
use crate::coeffs::{BiDegree, Summand};
use crate::hopf::StarMono;

/// A word `[z_1|…|z_t]` of the twisted bar construction, on which the group
/// acts by `γ[z_1|…|z_t] = [γz_t|…|γz_1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwistedWord {
    pub entries: Vec<StarMono>,
}

impl TwistedWord {
    pub fn new(entries: Vec<StarMono>) -> Self {
        TwistedWord { entries }
    }

    pub fn t(&self) -> usize {
        self.entries.len()
    }

    pub fn gamma(&self, conj: impl Fn(&StarMono) -> StarMono) -> TwistedWord {
        TwistedWord::new(self.entries.iter().rev().map(conj).collect())
    }

    pub fn is_fixed(&self, conj: impl Fn(&StarMono) -> StarMono) -> bool {
        let t = self.t();
        (0..t).all(|i| self.entries[i] == conj(&self.entries[t - 1 - i]))
    }

    /// Total underlying degree `t + Σ p(z_i)`.
    pub fn underlying_degree(&self) -> i64 {
        self.t() as i64 + self.entries.iter().map(|e| e.bidegree().p).sum::<i64>()
    }

    /// `(⌈t/2⌉σ + ⌊t/2⌋) + Σ_{i<mid} ρ·p(z_i) + |z_mid|`, the cone shift of a
    /// fixed word: mirror pairs contribute a norm, the middle entry its own
    /// degree.
    pub fn fixed_shift(&self) -> BiDegree {
        let t = self.t();
        let mut d = sphere_degree(t);
        for e in &self.entries[..t / 2] {
            d = d + e.bidegree().p * BiDegree::RHO;
        }
        if t % 2 == 1 {
            d = d + self.entries[t / 2].bidegree();
        }
        d
    }

    /// The `E¹` summand: a cone for a fixed word, a tower for a free one.
    pub fn summand(&self, fixed: bool) -> Summand {
        if fixed {
            Summand::cone(self.fixed_shift(), self.to_string())
        } else {
            Summand::tower(self.underlying_degree(), self.to_string())
        }
    }

    /// `None` if an entry is the unit.
    pub fn bar_word(&self) -> Option<BarWord> {
        BarWord::new(self.entries.clone())
    }
}

/// `⌈t/2⌉σ + ⌊t/2⌋`.
pub fn sphere_degree(t: usize) -> BiDegree {
    let t = t as i64;
    BiDegree::from_rep((t + 1) / 2, t / 2)
}

impl fmt::Display for TwistedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

impl From<&BarWord> for TwistedWord {
    fn from(w: &BarWord) -> Self {
        TwistedWord::new(w.entries().to_vec())
    }
}

/// Words of length `t` over `basis`, split into fixed words and free orbits
/// `(representative, partner)` with the lexicographically least member first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TwistedOrbits {
    pub fixed: Vec<TwistedWord>,
    pub free: Vec<(TwistedWord, TwistedWord)>,
}

/// Every length `t` word over `basis`, classified by the flip action.
pub fn twisted_words(
    basis: &[StarMono],
    t: usize,
    conj: impl Fn(&StarMono) -> StarMono,
) -> TwistedOrbits {
    let mut out = TwistedOrbits::default();
    let n = basis.len();
    if n == 0 && t > 0 {
        return out;
    }
    let mut idx = vec![0usize; t];
    loop {
        let w = TwistedWord::new(idx.iter().map(|&i| basis[i].clone()).collect());
        let g = w.gamma(&conj);
        if g == w {
            out.fixed.push(w);
        } else if w < g {
            out.free.push((w, g));
        }
        // odometer
        let mut k = t;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{CircleMono, Gen};
    use proptest::prelude::*;

    fn g(x: Gen) -> StarMono {
        StarMono::from(x)
    }

    fn xy() -> (StarMono, StarMono) {
        (g(Gen::ESigma), g(Gen::AlphaBar(0)))
    }

    #[test]
    fn two_letters_length_two() {
        let (x, y) = xy();
        let o = twisted_words(&[x.clone(), y.clone()], 2, |m| m.clone());
        assert_eq!(
            o.fixed,
            vec![
                TwistedWord::new(vec![x.clone(), x.clone()]),
                TwistedWord::new(vec![y.clone(), y.clone()])
            ]
        );
        assert_eq!(o.free.len(), 1);
        let (r, p) = &o.free[0];
        assert_eq!(r.gamma(|m| m.clone()), *p);
        assert!(r < p);
    }

    #[test]
    fn unit_basis_gives_one_fixed_word() {
        for t in 0..5 {
            let o = twisted_words(&[StarMono::unit()], t, |m| m.clone());
            assert_eq!((o.fixed.len(), o.free.len()), (1, 0));
        }
    }

    #[test]
    fn k_sigma_word_degrees() {
        let (x, y) = xy();
        let xym = x.mul(&y).unwrap();
        let w = |v: &[&StarMono]| TwistedWord::new(v.iter().map(|m| (*m).clone()).collect());
        assert_eq!(w(&[&xym]).fixed_shift(), BiDegree::new(4, 3));
        assert_eq!(w(&[&xym, &xym]).fixed_shift(), BiDegree::new(8, 4));
        assert_eq!(w(&[&x, &y, &y, &x]).fixed_shift(), BiDegree::new(10, 5));
        assert_eq!(w(&[&x, &y]).underlying_degree(), 5);
        assert_eq!(w(&[&x, &y, &xym]).underlying_degree(), 9);
    }

    #[test]
    fn sphere_degrees() {
        assert_eq!(sphere_degree(0), BiDegree::ZERO);
        assert_eq!(sphere_degree(1), BiDegree::SIGMA);
        assert_eq!(sphere_degree(2), BiDegree::RHO);
        assert_eq!(sphere_degree(5), BiDegree::new(5, 3));
    }

    fn small_basis() -> Vec<StarMono> {
        let (x, y) = xy();
        vec![x.clone(), y.clone(), x.mul(&y).unwrap(), g(Gen::AlphaBar(1))]
    }

    proptest! {
        #[test]
        fn orbit_count_identity(n in 1usize..=4, t in 0usize..=5, swap in any::<bool>()) {
            let basis = small_basis()[..n].to_vec();
            // optionally let the conjugation swap the first two basis elements
            let conj = |m: &StarMono| {
                if swap && n >= 2 {
                    if *m == basis[0] { return basis[1].clone(); }
                    if *m == basis[1] { return basis[0].clone(); }
                }
                m.clone()
            };
            let o = twisted_words(&basis, t, conj);
            prop_assert_eq!(o.fixed.len() + 2 * o.free.len(), n.pow(t as u32));
            for w in &o.fixed {
                prop_assert!(w.is_fixed(conj));
            }
        }

        #[test]
        fn fixed_cones_forget_to_word_degree(idx in proptest::collection::vec(0usize..4, 0..4), mid in proptest::option::of(0usize..4)) {
            let b = small_basis();
            let mut e: Vec<StarMono> = idx.iter().map(|&i| b[i].clone()).collect();
            let back: Vec<StarMono> = e.iter().rev().cloned().collect();
            if let Some(m) = mid { e.push(b[m].clone()); }
            e.extend(back);
            let w = TwistedWord::new(e);
            prop_assert!(w.is_fixed(|m| m.clone()));
            prop_assert_eq!(w.fixed_shift().p, w.underlying_degree());
        }
    }

    #[test]
    fn circle_products_as_entries() {
        let e = StarMono::single(CircleMono::new(vec![Gen::ESigma, Gen::ESigma]));
        let w = TwistedWord::new(vec![e.clone(), e]);
        assert_eq!(w.fixed_shift(), BiDegree::RHO + 2 * BiDegree::RHO);
    }
}
