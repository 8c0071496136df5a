//! Fixed-point bases and the comparison maps `Φ^e` and `Φ^{C2}`.

use std::fmt;

use serde::Serialize;

use super::rw::{gen_rw_words, RwWord};
use crate::coeffs::BiDegree;
use crate::error::{Error, Result};
use crate::hopf::{CircleMono, Gen};

/// The `K(F2, k)` factors `[m, m+1, …, m+n]` of the fixed points of `K_V`
/// for `V = m + n·σ`.
pub fn caruso_factors(v: BiDegree) -> Result<Vec<u32>> {
    let (n, m) = (v.q, v.p - v.q);
    if n <= 0 || m < 0 {
        return Err(Error::NotFixedPointFree(v.to_string()));
    }
    Ok((m as u32..=(m + n) as u32).collect())
}

/// A generator of `H_*(K_V^{C2})` in the `e₀`, `a_(i)` alphabet: an RW word
/// for one Künneth factor, optionally marked by `e₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FixedClass {
    pub e0: bool,
    pub word: RwWord,
}

impl FixedClass {
    /// Which factor `K_level` the class lives in.
    pub fn level(&self) -> usize {
        self.word.len()
    }

    pub fn degree(&self) -> i64 {
        self.word.degree()
    }

    /// `e₀∘a_(i₁)∘…`, where RW index `k` is written `a_(k+1)`.
    pub fn to_mono(&self) -> CircleMono {
        let mut letters: Vec<Gen> = self
            .word
            .indices()
            .iter()
            .map(|&k| Gen::A((k + 1) as u32))
            .collect();
        if self.e0 {
            letters.push(Gen::E0);
        }
        CircleMono::new(letters)
    }
}

impl fmt::Display for FixedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mono())
    }
}

/// Künneth generators of `H_*(K_V^{C2})` through degree `deg_max`.
///
/// For `V = nσ` the factor `K_k` with `k < n` is marked by `e₀` (the image of
/// `e_σ^{∘(n-k)}`), and `K_0` contributes `e₀` itself.
pub fn gen_fixed_classes(v: BiDegree, deg_max: i64) -> Result<Vec<FixedClass>> {
    let factors = caruso_factors(v)?;
    let top = *factors.last().expect("nonempty");
    let signed = factors[0] == 0;
    let mut out = Vec::new();
    for &k in &factors {
        let e0 = signed && k < top;
        for word in gen_rw_words(k, deg_max) {
            out.push(FixedClass { e0, word });
        }
    }
    out.sort_by_key(|c| (c.degree(), c.clone()));
    Ok(out)
}

pub fn gen_fixed_basis(v: BiDegree, deg_max: i64) -> Result<Vec<CircleMono>> {
    Ok(gen_fixed_classes(v, deg_max)?
        .iter()
        .map(FixedClass::to_mono)
        .collect())
}

/// Generator monomials for the `fixed_points(V)` presentation.
pub fn fixed_generators(v: BiDegree, deg_max: i64) -> Result<Vec<CircleMono>> {
    gen_fixed_basis(v, deg_max)
}

fn phi_e_letter(g: Gen) -> Option<Vec<i32>> {
    Some(match g {
        Gen::ESigma | Gen::E1 => vec![-1],
        Gen::AlphaBar(k) | Gen::Alpha(k) => vec![k as i32],
        Gen::BetaBar(k) | Gen::Beta(k) => vec![k as i32 - 1; 2],
        Gen::E0 | Gen::A(_) | Gen::E2Sigma | Gen::XBar(_) => return None,
    })
}

/// The underlying map: `e_σ ↦ e₁`, `ᾱ_(k) ↦ α_(k)`, `β̄_(k) ↦ β_(k)`, with
/// `β_(0) = e₁∘e₁` and `β_(k) = α_(k-1)∘α_(k-1)`.
pub fn phi_e(m: &CircleMono) -> Option<RwWord> {
    let mut idx = Vec::new();
    for &g in m.letters() {
        idx.extend(phi_e_letter(g)?);
    }
    Some(RwWord::new(idx))
}

/// The fixed-point map: `e_σ ↦ e₀`, `ᾱ_(k), β̄_(k) ↦ a_(k)`; unbarred
/// classes go to their RW words.
pub fn phi_fixed(m: &CircleMono) -> Option<FixedClass> {
    let mut e0 = false;
    let mut idx = Vec::new();
    for &g in m.letters() {
        match g {
            Gen::ESigma | Gen::E0 => e0 = true,
            Gen::AlphaBar(k) | Gen::BetaBar(k) | Gen::A(k) => idx.push(k as i32 - 1),
            Gen::E1 | Gen::Alpha(_) | Gen::Beta(_) => idx.extend(phi_e_letter(g)?),
            Gen::E2Sigma | Gen::XBar(_) => return None,
        }
    }
    Some(FixedClass {
        e0,
        word: RwWord::new(idx),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(gs: &[Gen]) -> CircleMono {
        CircleMono::new(gs.to_vec())
    }

    #[test]
    fn caruso() {
        assert_eq!(
            caruso_factors(BiDegree::new(3, 3)).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            caruso_factors(BiDegree::from_rep(1, 2)).unwrap(),
            vec![2, 3]
        );
        assert_eq!(caruso_factors(BiDegree::SIGMA).unwrap(), vec![0, 1]);
        assert!(matches!(
            caruso_factors(BiDegree::new(2, 0)),
            Err(Error::NotFixedPointFree(_))
        ));
    }

    #[test]
    fn fixed_bases() {
        let s = gen_fixed_basis(BiDegree::SIGMA, 4).unwrap();
        assert_eq!(
            s,
            vec![
                c(&[Gen::E0]),
                c(&[Gen::A(0)]),
                c(&[Gen::A(1)]),
                c(&[Gen::A(2)])
            ]
        );
        let t = gen_fixed_basis(BiDegree::new(2, 2), 2).unwrap();
        assert!(t.contains(&c(&[Gen::E0])));
        assert!(t.contains(&c(&[Gen::E0, Gen::A(0)])));
        assert!(t.contains(&c(&[Gen::A(0), Gen::A(0)])));
        assert!(t.contains(&c(&[Gen::E0, Gen::A(1)])));
        assert_eq!(t.len(), 4);
        assert_eq!(
            gen_fixed_basis(BiDegree::SIGMA, 0).unwrap(),
            vec![c(&[Gen::E0])]
        );
    }

    #[test]
    fn comparison_maps() {
        let ea = c(&[Gen::ESigma, Gen::AlphaBar(0)]);
        assert_eq!(phi_e(&ea).unwrap().to_mono(), c(&[Gen::E1, Gen::Alpha(0)]));
        assert_eq!(phi_e(&CircleMono::unit()), Some(RwWord::default()));
        let e_a1 = c(&[Gen::ESigma, Gen::AlphaBar(1)]);
        assert_eq!(
            phi_fixed(&e_a1).unwrap().to_mono(),
            c(&[Gen::E0, Gen::A(1)])
        );
        let wyb = c(&[Gen::Alpha(0), Gen::BetaBar(2)]);
        assert_eq!(
            phi_fixed(&wyb).unwrap().to_mono(),
            c(&[Gen::A(1), Gen::A(2)])
        );
        let e0s = CircleMono::new(vec![Gen::E0, Gen::E0, Gen::E0]);
        assert_eq!(phi_fixed(&e0s).unwrap().to_mono(), c(&[Gen::E0]));
        // degrees line up with the fixed-point dimension
        for g in [ea, e_a1, wyb, c(&[Gen::E1, Gen::AlphaBar(2)])] {
            assert_eq!(phi_fixed(&g).unwrap().degree(), g.bidegree().fixed_dim());
            assert_eq!(phi_e(&g).unwrap().degree(), g.bidegree().p);
        }
    }
}
