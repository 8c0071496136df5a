use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An RO(C2) degree `(p, q)`: topological dimension `p` and weight `q`,
/// i.e. the virtual representation `(p - q) + q·σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct BiDegree {
    pub p: i64,
    pub q: i64,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { p: 0, q: 0 };
    /// The trivial one-dimensional representation.
    pub const ONE: BiDegree = BiDegree { p: 1, q: 0 };
    /// The sign representation.
    pub const SIGMA: BiDegree = BiDegree { p: 1, q: 1 };
    /// The regular representation `1 + σ`.
    pub const RHO: BiDegree = BiDegree { p: 2, q: 1 };

    pub const fn new(p: i64, q: i64) -> Self {
        BiDegree { p, q }
    }

    /// Dimension of the fixed points, `p - q`.
    pub fn fixed_dim(self) -> i64 {
        self.p - self.q
    }

    /// `k·σ + l` written the usual way.
    pub fn from_rep(sigmas: i64, trivial: i64) -> Self {
        BiDegree::new(sigmas + trivial, sigmas)
    }

    /// Parses a representation written as a sum of terms `kσ`, `kρ` and
    /// integers (`sigma`, `2sigma+1`, `rho`, `3`), or a literal `(p,q)`.
    pub fn parse_rep(s: &str) -> Option<BiDegree> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let (p, q) = inner.split_once(',')?;
            return Some(BiDegree::new(
                p.trim().parse().ok()?,
                q.trim().parse().ok()?,
            ));
        }
        let mut total = BiDegree::ZERO;
        for term in s.split('+') {
            let term = term.trim();
            let (coef, unit) = match term.find(|c: char| !c.is_ascii_digit()) {
                Some(0) => ("1", term),
                Some(k) => (&term[..k], &term[k..]),
                None => (term, ""),
            };
            let k: i64 = coef.parse().ok()?;
            total = total
                + k * match unit {
                    "" => BiDegree::ONE,
                    "sigma" | "σ" => BiDegree::SIGMA,
                    "rho" | "ρ" => BiDegree::RHO,
                    _ => return None,
                };
        }
        Some(total)
    }
}

impl From<(i64, i64)> for BiDegree {
    fn from((p, q): (i64, i64)) -> Self {
        BiDegree { p, q }
    }
}

impl From<BiDegree> for (i64, i64) {
    fn from(d: BiDegree) -> Self {
        (d.p, d.q)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.p + o.p, self.q + o.q)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.p - o.p, self.q - o.q)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.p, -self.q)
    }
}

impl Mul<BiDegree> for i64 {
    type Output = BiDegree;
    fn mul(self, d: BiDegree) -> BiDegree {
        BiDegree::new(self * d.p, self * d.q)
    }
}

impl std::iter::Sum for BiDegree {
    fn sum<I: Iterator<Item = BiDegree>>(iter: I) -> BiDegree {
        iter.fold(BiDegree::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A rectangular truncation window `p_min..=p_max × q_min..=q_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub p_min: i64,
    pub p_max: i64,
    pub q_min: i64,
    pub q_max: i64,
}

impl Region {
    pub fn new(p_min: i64, p_max: i64, q_min: i64, q_max: i64) -> Self {
        Region {
            p_min,
            p_max,
            q_min,
            q_max,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.p_min > self.p_max || self.q_min > self.q_max
    }

    pub fn contains(&self, d: BiDegree) -> bool {
        (self.p_min..=self.p_max).contains(&d.p) && (self.q_min..=self.q_max).contains(&d.q)
    }

    /// Bidegrees in row-major order (p outer, q inner).
    pub fn points(&self) -> impl Iterator<Item = BiDegree> + '_ {
        (self.p_min..=self.p_max)
            .flat_map(move |p| (self.q_min..=self.q_max).map(move |q| BiDegree::new(p, q)))
    }
}

impl std::str::FromStr for Region {
    type Err = String;

    /// Parses `pMin:pMax:qMin:qMax`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(format!("region must be pMin:pMax:qMin:qMax, got {s:?}"));
        }
        let mut v = [0i64; 4];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| format!("bad integer {part:?} in region {s:?}"))?;
        }
        let r = Region::new(v[0], v[1], v[2], v[3]);
        if r.is_empty() {
            return Err(format!("region {s:?} is empty"));
        }
        Ok(r)
    }
}
