//! The coefficient ring `M2 = H⋆(pt; F2)`.
//!
//! As an F2-vector space `M2` has basis the positive cone `a^i u^j`
//! (bidegree `(-i, -i-j)`) and the negative cone `θ/(a^i u^j)` (bidegree
//! `(i, i+j+2)`). Multiplication: positive monomials multiply by adding
//! exponents; `a^i u^j · θ/(a^k u^l) = θ/(a^(k-i) u^(l-j))` when `k ≥ i` and
//! `l ≥ j`, zero otherwise; two negative-cone classes multiply to zero.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::BiDegree;

/// One basis element of `M2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum M2Basis {
    /// `a^i u^j`
    Pos(u32, u32),
    /// `θ / (a^i u^j)`
    Neg(u32, u32),
}

impl M2Basis {
    pub const ONE: M2Basis = M2Basis::Pos(0, 0);
    pub const A: M2Basis = M2Basis::Pos(1, 0);
    pub const U: M2Basis = M2Basis::Pos(0, 1);
    pub const THETA: M2Basis = M2Basis::Neg(0, 0);

    pub fn bidegree(self) -> BiDegree {
        match self {
            M2Basis::Pos(i, j) => BiDegree::new(-(i as i64), -(i as i64) - j as i64),
            M2Basis::Neg(i, j) => BiDegree::new(i as i64, i as i64 + j as i64 + 2),
        }
    }

    /// The unique basis element in bidegree `d`, if any.
    pub fn at(d: BiDegree) -> Option<M2Basis> {
        if d.p <= 0 && d.q <= d.p {
            let i = -d.p;
            let j = d.p - d.q;
            Some(M2Basis::Pos(i as u32, j as u32))
        } else if d.p >= 0 && d.q >= d.p + 2 {
            Some(M2Basis::Neg(d.p as u32, (d.q - d.p - 2) as u32))
        } else {
            None
        }
    }

    pub fn mul(self, other: M2Basis) -> Option<M2Basis> {
        use M2Basis::*;
        match (self, other) {
            (Pos(i, j), Pos(k, l)) => Some(Pos(i + k, j + l)),
            (Pos(i, j), Neg(k, l)) | (Neg(k, l), Pos(i, j)) => {
                (k >= i && l >= j).then(|| Neg(k - i, l - j))
            }
            (Neg(..), Neg(..)) => None,
        }
    }
}

impl fmt::Display for M2Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn mono(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
            let mut wrote = false;
            for (sym, e) in [("a", i), ("u", j)] {
                match e {
                    0 => {}
                    1 => {
                        write!(f, "{sym}")?;
                        wrote = true;
                    }
                    _ => {
                        write!(f, "{sym}^{e}")?;
                        wrote = true;
                    }
                }
            }
            if !wrote {
                write!(f, "1")?;
            }
            Ok(())
        }
        match *self {
            M2Basis::Pos(i, j) => mono(f, i, j),
            M2Basis::Neg(0, 0) => write!(f, "θ"),
            M2Basis::Neg(i, j) => {
                write!(f, "θ/")?;
                mono(f, i, j)
            }
        }
    }
}

/// `1` iff bidegree `d` carries a copy of F2 in `M2`.
pub fn m2_dim(d: BiDegree) -> usize {
    M2Basis::at(d).is_some() as usize
}

/// An element of `M2`: a finite F2-combination of basis monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct M2Element {
    terms: BTreeSet<M2Basis>,
}

impl M2Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(M2Basis::ONE)
    }

    pub fn a() -> Self {
        Self::from(M2Basis::A)
    }

    pub fn u() -> Self {
        Self::from(M2Basis::U)
    }

    pub fn theta() -> Self {
        Self::from(M2Basis::THETA)
    }

    pub fn pos(i: u32, j: u32) -> Self {
        Self::from(M2Basis::Pos(i, j))
    }

    pub fn neg(i: u32, j: u32) -> Self {
        Self::from(M2Basis::Neg(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains(&M2Basis::ONE)
    }

    pub fn terms(&self) -> impl Iterator<Item = M2Basis> + '_ {
        self.terms.iter().copied()
    }

    /// Bidegree of a homogeneous element; `None` for zero or mixed degree.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.iter().map(|t| t.bidegree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Adds one basis term (F2: toggles it).
    pub fn add_term(&mut self, t: M2Basis) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &M2Element) {
        for t in other.terms() {
            self.add_term(t);
        }
    }

    pub fn add(&self, other: &M2Element) -> M2Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &M2Element) -> M2Element {
        let mut out = M2Element::zero();
        for x in self.terms() {
            for y in other.terms() {
                if let Some(z) = x.mul(y) {
                    out.add_term(z);
                }
            }
        }
        out
    }
}

impl From<M2Basis> for M2Element {
    fn from(b: M2Basis) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(b);
        M2Element { terms }
    }
}

/// Bilinear product on `M2`.
pub fn m2_mul(x: &M2Element, y: &M2Element) -> M2Element {
    x.mul(y)
}

impl fmt::Display for M2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct M2Json {
    pos: Vec<[u32; 2]>,
    neg: Vec<[u32; 2]>,
}

impl Serialize for M2Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut j = M2Json {
            pos: vec![],
            neg: vec![],
        };
        for t in self.terms() {
            match t {
                M2Basis::Pos(a, b) => j.pos.push([a, b]),
                M2Basis::Neg(a, b) => j.neg.push([a, b]),
            }
        }
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for M2Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = M2Json::deserialize(d)?;
        let mut out = M2Element::zero();
        for [a, b] in j.pos {
            if !out.terms.insert(M2Basis::Pos(a, b)) {
                return Err(serde::de::Error::custom("duplicate M2 term"));
            }
        }
        for [a, b] in j.neg {
            if !out.terms.insert(M2Basis::Neg(a, b)) {
                return Err(serde::de::Error::custom("duplicate M2 term"));
            }
        }
        Ok(out)
    }
}
