//! Elements and tensors: finite `M2`-combinations of star monomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffs::M2Element;

use super::StarMono;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<StarMono, M2Element>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::from(StarMono::unit())
    }

    pub fn term(m: StarMono, c: M2Element) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StarMono, &M2Element)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &StarMono) -> M2Element {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: StarMono, c: &M2Element) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, c: &M2Element) -> Element {
        let mut out = Element::zero();
        for (m, d) in self.terms() {
            out.add_term(m.clone(), &d.mul(c));
        }
        out
    }

    /// Star product, extended bilinearly.
    pub fn star(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (x, c) in self.terms() {
            for (y, d) in other.terms() {
                if let Some(z) = x.mul(y) {
                    out.add_term(z, &c.mul(d));
                }
            }
        }
        out
    }

    pub fn counit(&self) -> M2Element {
        let mut out = M2Element::zero();
        for (m, c) in self.terms() {
            if m.counit() {
                out.add_assign(c);
            }
        }
        out
    }
}

impl From<StarMono> for Element {
    fn from(m: StarMono) -> Self {
        Element::term(m, M2Element::one())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_coeff(f, c)?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &M2Element) -> fmt::Result {
    if c.is_one() {
        Ok(())
    } else if c.terms().count() == 1 {
        write!(f, "{c}·")
    } else {
        write!(f, "({c})·")
    }
}

/// An element of `A ⊗_{M2} A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<(StarMono, StarMono), M2Element>,
}

impl Tensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn simple(l: StarMono, r: StarMono) -> Self {
        let mut t = Self::zero();
        t.add_term(l, r, &M2Element::one());
        t
    }

    /// `x ⊗ y` for elements.
    pub fn of(x: &Element, y: &Element) -> Self {
        let mut t = Self::zero();
        for (l, c) in x.terms() {
            for (r, d) in y.terms() {
                t.add_term(l.clone(), r.clone(), &c.mul(d));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StarMono, &StarMono, &M2Element)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn add_term(&mut self, l: StarMono, r: StarMono, c: &M2Element) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let slot = self.terms.entry(key.clone()).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        for (l, r, c) in other.terms() {
            self.add_term(l.clone(), r.clone(), c);
        }
    }

    /// Removes one term entirely; returns whether it was present.
    pub fn remove_term(&mut self, l: &StarMono, r: &StarMono) -> bool {
        self.terms.remove(&(l.clone(), r.clone())).is_some()
    }

    pub fn scale(&self, c: &M2Element) -> Tensor {
        let mut out = Tensor::zero();
        for (l, r, d) in self.terms() {
            out.add_term(l.clone(), r.clone(), &d.mul(c));
        }
        out
    }

    /// Product in the tensor-square algebra (signs are trivial mod 2).
    pub fn mul(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (l1, r1, c1) in self.terms() {
            for (l2, r2, c2) in other.terms() {
                if let (Some(l), Some(r)) = (l1.mul(l2), r1.mul(r2)) {
                    out.add_term(l, r, &c1.mul(c2));
                }
            }
        }
        out
    }

    /// `(ε ⊗ id)`.
    pub fn counit_left(&self) -> Element {
        let mut out = Element::zero();
        for (l, r, c) in self.terms() {
            if l.counit() {
                out.add_term(r.clone(), c);
            }
        }
        out
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> Element {
        let mut out = Element::zero();
        for (l, r, c) in self.terms() {
            if r.counit() {
                out.add_term(l.clone(), c);
            }
        }
        out
    }

    /// Star-multiplies the two tensor factors together.
    pub fn multiply_out(&self) -> Element {
        let mut out = Element::zero();
        for (l, r, c) in self.terms() {
            if let Some(m) = l.mul(r) {
                out.add_term(m, c);
            }
        }
        out
    }

    pub fn flip(&self) -> Tensor {
        let mut out = Tensor::zero();
        for (l, r, c) in self.terms() {
            out.add_term(r.clone(), l.clone(), c);
        }
        out
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (l, r, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_coeff(f, c)?;
            write!(f, "{l}⊗{r}")?;
        }
        Ok(())
    }
}

/// An element of `A ⊗ A ⊗ A`, for coassociativity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor3 {
    terms: BTreeMap<(StarMono, StarMono, StarMono), M2Element>,
}

impl Tensor3 {
    pub fn add_term(&mut self, a: StarMono, b: StarMono, c: StarMono, k: &M2Element) {
        if k.is_zero() {
            return;
        }
        let key = (a, b, c);
        let slot = self.terms.entry(key.clone()).or_default();
        slot.add_assign(k);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((a, b, c), m)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_coeff(f, m)?;
            write!(f, "{a}⊗{b}⊗{c}")?;
        }
        Ok(())
    }
}
