//! Coproduct and circle-product calculus on the global alphabet.
//!
//! Coproducts of letters come from fixed tables; everything else follows
//! from the Hopf ring rules
//! `ψ(x∘y) = Σ (x'∘y') ⊗ (x''∘y'')`, `x∘(y*z) = Σ (x'∘y) * (x''∘z)`,
//! `x∘[0] = ε(x)[0]` and `x∘[1] = x`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::coeffs::M2Element;

use super::{divided, CircleMono, Element, Gen, StarMono, Tensor};

/// `Σ_{i=0}^n g_{n-i} ⊗ g_i` for a divided-power family.
pub fn divided_coproduct(family: impl Fn(u32) -> Gen + Copy, n: u64) -> Tensor {
    let mut t = Tensor::zero();
    for i in 0..=n {
        t.add_term(
            divided(family, n - i),
            divided(family, i),
            &M2Element::one(),
        );
    }
    t
}

/// The closed formula for `ψ(ᾱ_n)`, including the `u(e_σ ᾱ ⊗ e_σ ᾱ)` terms.
pub fn alpha_bar_coproduct(n: u64) -> Tensor {
    let mut t = divided_coproduct(Gen::AlphaBar, n);
    let e = StarMono::from(Gen::ESigma);
    for i in 0..n {
        let l = e
            .mul(&divided(Gen::AlphaBar, n - 1 - i))
            .expect("e_σ is not an ᾱ factor");
        let r = e
            .mul(&divided(Gen::AlphaBar, i))
            .expect("e_σ is not an ᾱ factor");
        t.add_term(l, r, &M2Element::u());
    }
    t
}

fn primitive(g: Gen) -> Tensor {
    let x = StarMono::from(g);
    let mut t = Tensor::simple(x.clone(), StarMono::unit());
    t.add_term(StarMono::unit(), x, &M2Element::one());
    t
}

/// Coproduct of a single letter.
pub fn letter_coproduct(g: Gen) -> Tensor {
    let pow = |k: u32| 1u64 << k;
    match g {
        Gen::E0 => {
            let mut t = primitive(g);
            t.add_term(g.into(), g.into(), &M2Element::one());
            t
        }
        Gen::ESigma => {
            let mut t = primitive(g);
            t.add_term(g.into(), g.into(), &M2Element::a());
            t
        }
        Gen::AlphaBar(k) => alpha_bar_coproduct(pow(k)),
        Gen::BetaBar(k) => divided_coproduct(Gen::BetaBar, pow(k)),
        Gen::Alpha(k) => divided_coproduct(Gen::Alpha, pow(k)),
        Gen::Beta(k) => divided_coproduct(Gen::Beta, pow(k)),
        Gen::XBar(k) => divided_coproduct(Gen::XBar, pow(k)),
        Gen::E1 | Gen::E2Sigma | Gen::A(0) => primitive(g),
        Gen::A(k) => divided_coproduct(|j| Gen::A(j + 1), pow(k - 1)),
    }
}

thread_local! {
    static PSI: RefCell<HashMap<CircleMono, Tensor>> = RefCell::new(HashMap::new());
    static CIRCLE: RefCell<HashMap<(StarMono, StarMono), Element>> = RefCell::new(HashMap::new());
}

/// `ψ` of a circle monomial.
pub fn coproduct(c: &CircleMono) -> Tensor {
    if let Some(t) = PSI.with(|m| m.borrow().get(c).cloned()) {
        return t;
    }
    let t = match c.letters() {
        [] => {
            let one = StarMono::single(CircleMono::unit());
            Tensor::simple(one.clone(), one)
        }
        [g] => letter_coproduct(*g),
        [g, rest @ ..] => {
            let head = letter_coproduct(*g);
            let tail = coproduct(&CircleMono::new(rest.to_vec()));
            let mut out = Tensor::zero();
            for (l1, r1, c1) in head.terms() {
                for (l2, r2, c2) in tail.terms() {
                    let left = circle(l1, l2);
                    if left.is_zero() {
                        continue;
                    }
                    let right = circle(r1, r2);
                    out.add_assign(&Tensor::of(&left, &right).scale(&c1.mul(c2)));
                }
            }
            out
        }
    };
    PSI.with(|m| m.borrow_mut().insert(c.clone(), t.clone()));
    t
}

/// `ψ` of a star monomial, multiplicatively.
pub fn star_coproduct(m: &StarMono) -> Tensor {
    let mut t = Tensor::simple(StarMono::unit(), StarMono::unit());
    for c in m.factors() {
        t = t.mul(&coproduct(c));
    }
    t
}

fn unit_if(b: bool) -> Element {
    if b {
        Element::unit()
    } else {
        Element::zero()
    }
}

/// `x ∘ y` for star monomials, expanded with the distributive law.
pub fn circle(x: &StarMono, y: &StarMono) -> Element {
    if y.is_unit() {
        return unit_if(x.counit());
    }
    if x.is_unit() {
        return unit_if(y.counit());
    }
    if let ([cx], [cy]) = (x.factors(), y.factors()) {
        return Element::from(StarMono::single(cx.circle(cy)));
    }
    let key = (x.clone(), y.clone());
    if let Some(e) = CIRCLE.with(|m| m.borrow().get(&key).cloned()) {
        return e;
    }
    let mut out = Element::zero();
    if y.len() >= 2 {
        let (y1, rest) = split_first(y);
        for (l, r, c) in star_coproduct(x).terms() {
            let a = circle(l, &y1);
            if a.is_zero() {
                continue;
            }
            out.add_assign(&a.star(&circle(r, &rest)).scale(c));
        }
    } else {
        let (x1, rest) = split_first(x);
        for (l, r, c) in star_coproduct(y).terms() {
            let a = circle(&x1, l);
            if a.is_zero() {
                continue;
            }
            out.add_assign(&a.star(&circle(&rest, r)).scale(c));
        }
    }
    CIRCLE.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

fn split_first(m: &StarMono) -> (StarMono, StarMono) {
    let (first, rest) = m.factors().split_first().expect("nonempty");
    let rest =
        StarMono::from_factors(rest.iter().cloned()).expect("factors of a monomial are distinct");
    (StarMono::single(first.clone()), rest)
}

/// Bilinear extension of [`circle`] to elements.
pub fn circle_elements(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (a, c) in x.terms() {
        for (b, d) in y.terms() {
            out.add_assign(&circle(a, b).scale(&c.mul(d)));
        }
    }
    out
}

/// `Σ (x'∘y) * (x''∘z)` over a given `ψ(x) = Σ x' ⊗ x''`.
pub fn distribute(psi_x: &Tensor, y: &StarMono, z: &StarMono) -> Element {
    let mut out = Element::zero();
    for (l, r, c) in psi_x.terms() {
        let a = circle(l, y);
        if a.is_zero() {
            continue;
        }
        out.add_assign(&a.star(&circle(r, z)).scale(c));
    }
    out
}

/// Formal circle product of two circle monomials.
pub fn circle_product(m1: &CircleMono, m2: &CircleMono) -> CircleMono {
    m1.circle(m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::BiDegree;

    fn sm(gs: &[Gen]) -> StarMono {
        StarMono::from_factors(gs.iter().map(|&g| CircleMono::letter(g))).unwrap()
    }

    fn cm(gs: &[Gen]) -> CircleMono {
        CircleMono::new(gs.to_vec())
    }

    #[test]
    fn e_sigma_table() {
        let t = letter_coproduct(Gen::ESigma);
        let e = sm(&[Gen::ESigma]);
        assert_eq!(t.len(), 3);
        let mut want = Tensor::simple(e.clone(), StarMono::unit());
        want.add_term(StarMono::unit(), e.clone(), &M2Element::one());
        want.add_term(e.clone(), e, &M2Element::a());
        assert_eq!(t, want);
    }

    #[test]
    fn alpha_bar_one() {
        // ψ(ᾱ₁) = ᾱ₁⊗1 + 1⊗ᾱ₁ + u(e_σ⊗e_σ)
        let t = letter_coproduct(Gen::AlphaBar(0));
        let a = sm(&[Gen::AlphaBar(0)]);
        let e = sm(&[Gen::ESigma]);
        let mut want = Tensor::simple(a.clone(), StarMono::unit());
        want.add_term(StarMono::unit(), a, &M2Element::one());
        want.add_term(e.clone(), e, &M2Element::u());
        assert_eq!(t, want);
    }

    #[test]
    fn closed_form_is_multiplicative() {
        for n in 1..16u64 {
            let mut prod = Tensor::simple(StarMono::unit(), StarMono::unit());
            for i in 0..4 {
                if n >> i & 1 == 1 {
                    prod = prod.mul(&letter_coproduct(Gen::AlphaBar(i)));
                }
            }
            assert_eq!(prod, alpha_bar_coproduct(n), "ψ(ᾱ_{n})");
        }
    }

    #[test]
    fn circle_units() {
        let x = sm(&[Gen::ESigma, Gen::AlphaBar(0)]);
        let one = StarMono::single(CircleMono::unit());
        assert_eq!(circle(&one, &x), Element::from(x.clone()));
        assert_eq!(circle(&StarMono::unit(), &x), Element::zero());
        assert_eq!(
            circle(&StarMono::unit(), &StarMono::unit()),
            Element::unit()
        );
        let c = circle_product(&cm(&[Gen::ESigma]), &cm(&[Gen::AlphaBar(0)]));
        assert_eq!(c.bidegree(), BiDegree::new(3, 2));
        assert_eq!(circle_product(&CircleMono::unit(), &c), c);
    }

    #[test]
    fn circle_coproduct_of_e_alpha() {
        // ψ(e_σ∘ᾱ₁) = 1⊗eᾱ + eᾱ⊗1 + au (e∘e)⊗(e∘e)
        let ea = cm(&[Gen::ESigma, Gen::AlphaBar(0)]);
        let ee = StarMono::single(cm(&[Gen::ESigma, Gen::ESigma]));
        let mut want = Tensor::simple(StarMono::single(ea.clone()), StarMono::unit());
        want.add_term(
            StarMono::unit(),
            StarMono::single(ea.clone()),
            &M2Element::one(),
        );
        want.add_term(ee.clone(), ee, &M2Element::pos(1, 1));
        assert_eq!(coproduct(&ea), want);
    }

    #[test]
    fn distribute_primitive_and_counit() {
        let p = letter_coproduct(Gen::E1);
        let y = sm(&[Gen::Alpha(0)]);
        let z = sm(&[Gen::Alpha(1)]);
        let got = distribute(&p, &y, &z);
        let mut want = Element::zero();
        want.add_assign(&circle(&sm(&[Gen::E1]), &y).star(&circle(&StarMono::unit(), &z)));
        want.add_assign(&circle(&StarMono::unit(), &y).star(&circle(&sm(&[Gen::E1]), &z)));
        assert_eq!(got, want);
        // e_σ against [0] and [1] collapses to e_σ
        let one = StarMono::single(CircleMono::unit());
        let e = letter_coproduct(Gen::ESigma);
        assert_eq!(
            distribute(&e, &StarMono::unit(), &one),
            Element::from(sm(&[Gen::ESigma]))
        );
        assert_eq!(
            distribute(&e, &StarMono::unit(), &StarMono::unit()),
            Element::zero()
        );
    }

    #[test]
    fn signed_squares_vanish() {
        // (e_σᾱ)^J * (e_σᾱ)^J via e_σ∘(ᾱ*ᾱ) expansions
        for j in [
            cm(&[Gen::AlphaBar(0)]),
            cm(&[Gen::ESigma, Gen::AlphaBar(1)]),
        ] {
            let m = StarMono::single(j);
            for g in [Gen::ESigma, Gen::AlphaBar(0), Gen::AlphaBar(1)] {
                assert!(distribute(&letter_coproduct(g), &m, &m).is_zero());
            }
        }
    }

    #[test]
    fn e0_circle_idempotent_on_coproduct() {
        let e0 = cm(&[Gen::E0]);
        assert_eq!(coproduct(&e0.circle(&e0)), coproduct(&e0));
    }

    #[test]
    fn star_is_respected_by_circle() {
        // (x*y)∘z = Σ (x∘z')*(y∘z'')
        let x = sm(&[Gen::ESigma]);
        let y = sm(&[Gen::AlphaBar(0)]);
        let z = StarMono::single(cm(&[Gen::AlphaBar(1)]));
        let lhs = circle(&x.mul(&y).unwrap(), &z);
        let mut rhs = Element::zero();
        for (l, r, c) in star_coproduct(&z).terms() {
            rhs.add_assign(&circle(&x, l).star(&circle(&y, r)).scale(c));
        }
        assert_eq!(lhs, rhs);
    }
}
