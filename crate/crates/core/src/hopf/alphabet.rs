//! The global generator alphabet and circle/star monomials over it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeffs::BiDegree;
use crate::error::Error;

/// One letter of the global Hopf-ring alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// `e₀ = [1] + [0]` in `H₀K₀`.
    E0,
    ESigma,
    AlphaBar(u32),
    BetaBar(u32),
    E1,
    Alpha(u32),
    Beta(u32),
    E2Sigma,
    XBar(u32),
    /// Fixed-point classes `a_(i)` in degree `2^i`.
    A(u32),
}

impl Gen {
    pub fn bidegree(self) -> BiDegree {
        let pow = |i: u32| 1i64 << i;
        match self {
            Gen::E0 => BiDegree::ZERO,
            Gen::ESigma => BiDegree::SIGMA,
            Gen::AlphaBar(i) | Gen::BetaBar(i) => pow(i) * BiDegree::RHO,
            Gen::E1 => BiDegree::ONE,
            Gen::Alpha(i) | Gen::Beta(i) => BiDegree::new(pow(i + 1), 0),
            Gen::E2Sigma => 2 * BiDegree::SIGMA,
            Gen::XBar(i) => pow(i + 1) * BiDegree::RHO,
            Gen::A(i) => BiDegree::new(pow(i), 0),
        }
    }

    pub fn index(self) -> Option<u32> {
        match self {
            Gen::AlphaBar(i)
            | Gen::BetaBar(i)
            | Gen::Alpha(i)
            | Gen::Beta(i)
            | Gen::XBar(i)
            | Gen::A(i) => Some(i),
            _ => None,
        }
    }

    /// ASCII token used in JSON and on the command line.
    pub fn token(self) -> String {
        match self {
            Gen::E0 => "e_0".into(),
            Gen::ESigma => "e_sigma".into(),
            Gen::AlphaBar(i) => format!("abar_({i})"),
            Gen::BetaBar(i) => format!("bbar_({i})"),
            Gen::E1 => "e_1".into(),
            Gen::Alpha(i) => format!("alpha_({i})"),
            Gen::Beta(i) => format!("beta_({i})"),
            Gen::E2Sigma => "e_2sigma".into(),
            Gen::XBar(i) => format!("xbar_({i})"),
            Gen::A(i) => format!("a_({i})"),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::E0 => write!(f, "e₀"),
            Gen::ESigma => write!(f, "e_σ"),
            Gen::AlphaBar(i) => write!(f, "ᾱ_({i})"),
            Gen::BetaBar(i) => write!(f, "β̄_({i})"),
            Gen::E1 => write!(f, "e₁"),
            Gen::Alpha(i) => write!(f, "α_({i})"),
            Gen::Beta(i) => write!(f, "β_({i})"),
            Gen::E2Sigma => write!(f, "e_2σ"),
            Gen::XBar(i) => write!(f, "x̄_({i})"),
            Gen::A(i) => write!(f, "a_({i})"),
        }
    }
}

impl FromStr for Gen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("unknown generator token {s:?}"));
        match s {
            "e_0" => return Ok(Gen::E0),
            "e_sigma" => return Ok(Gen::ESigma),
            "e_1" => return Ok(Gen::E1),
            "e_2sigma" => return Ok(Gen::E2Sigma),
            _ => {}
        }
        let (head, rest) = s.split_once("_(").ok_or_else(bad)?;
        let idx: u32 = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if idx > 30 {
            return Err(bad());
        }
        Ok(match head {
            "abar" => Gen::AlphaBar(idx),
            "bbar" => Gen::BetaBar(idx),
            "alpha" => Gen::Alpha(idx),
            "beta" => Gen::Beta(idx),
            "xbar" => Gen::XBar(idx),
            "a" => Gen::A(idx),
            _ => return Err(bad()),
        })
    }
}

/// A circle product of letters. The empty monomial is the class `[1] ∈ H₀K₀`,
/// the unit for `∘`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleMono(Vec<Gen>);

impl CircleMono {
    pub fn unit() -> Self {
        CircleMono(Vec::new())
    }

    pub fn letter(g: Gen) -> Self {
        CircleMono(vec![g])
    }

    /// Sorts and applies `e₀∘e₀ = e₀`.
    pub fn new(mut letters: Vec<Gen>) -> Self {
        letters.sort();
        let e0s = letters.iter().take_while(|&&g| g == Gen::E0).count();
        if e0s > 1 {
            letters.drain(1..e0s);
        }
        CircleMono(letters)
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bidegree(&self) -> BiDegree {
        self.0.iter().map(|g| g.bidegree()).sum()
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&h| h == g).count()
    }

    pub fn circle(&self, other: &CircleMono) -> CircleMono {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CircleMono::new(v)
    }

    pub fn token(&self) -> String {
        if self.0.is_empty() {
            return "[1]".into();
        }
        self.0
            .iter()
            .map(|g| g.token())
            .collect::<Vec<_>>()
            .join(" o ")
    }
}

impl fmt::Display for CircleMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[1]");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "∘")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for CircleMono {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "[1]" {
            return Ok(CircleMono::unit());
        }
        let letters = s
            .split_whitespace()
            .filter(|t| *t != "o")
            .map(str::parse)
            .collect::<Result<Vec<Gen>, _>>()?;
        if letters.is_empty() {
            return Err(Error::Parse("empty circle monomial".into()));
        }
        Ok(CircleMono::new(letters))
    }
}

impl From<Gen> for CircleMono {
    fn from(g: Gen) -> Self {
        CircleMono::letter(g)
    }
}

/// A star product of distinct circle monomials; the empty product is the
/// star unit `[0]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarMono(Vec<CircleMono>);

impl StarMono {
    pub fn unit() -> Self {
        StarMono(Vec::new())
    }

    pub fn single(c: impl Into<CircleMono>) -> Self {
        StarMono(vec![c.into()])
    }

    /// Builds the exterior product of `factors`; `None` if it vanishes.
    pub fn from_factors(factors: impl IntoIterator<Item = CircleMono>) -> Option<Self> {
        factors
            .into_iter()
            .try_fold(StarMono::unit(), |acc, c| acc.mul(&StarMono::single(c)))
    }

    pub fn factors(&self) -> &[CircleMono] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bidegree(&self) -> BiDegree {
        self.0.iter().map(|c| c.bidegree()).sum()
    }

    /// Augmentation: `1` on `[0]` and on `[1]` (both grouplike in `H₀K₀`).
    pub fn counit(&self) -> bool {
        self.0.iter().all(|c| c.is_unit())
    }

    /// Exterior star product. `[1]*[1] = [2] = [0]` in the group ring of `Z/2`;
    /// any other repeated factor kills the product.
    pub fn mul(&self, other: &StarMono) -> Option<StarMono> {
        let mut v = self.0.clone();
        for c in &other.0 {
            match v.binary_search(c) {
                Ok(pos) if c.is_unit() => {
                    v.remove(pos);
                }
                Ok(_) => return None,
                Err(pos) => v.insert(pos, c.clone()),
            }
        }
        Some(StarMono(v))
    }

    pub fn tokens(&self) -> Vec<String> {
        self.0.iter().map(|c| c.token()).collect()
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, Error> {
        let mut out = StarMono::unit();
        for t in tokens {
            let c: CircleMono = t.as_ref().parse()?;
            out = out
                .mul(&StarMono::single(c))
                .ok_or_else(|| Error::Parse("repeated factor in exterior monomial".into()))?;
        }
        Ok(out)
    }
}

impl fmt::Display for StarMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let many = self.0.len() > 1;
        for c in &self.0 {
            if many && c.len() > 1 {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl From<CircleMono> for StarMono {
    fn from(c: CircleMono) -> Self {
        StarMono::single(c)
    }
}

impl From<Gen> for StarMono {
    fn from(g: Gen) -> Self {
        StarMono::single(CircleMono::letter(g))
    }
}

impl Serialize for StarMono {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.tokens().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StarMono {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        StarMono::from_tokens(&v).map_err(serde::de::Error::custom)
    }
}

impl Serialize for CircleMono {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.token().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CircleMono {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `g_n` for a divided-power family: the star product of `family(i)` over the
/// binary digits `2^i` of `n`.
pub fn divided(family: impl Fn(u32) -> Gen, n: u64) -> StarMono {
    let mut factors = Vec::new();
    for i in 0..64 {
        if n >> i & 1 == 1 {
            factors.push(CircleMono::letter(family(i)));
        }
    }
    StarMono::from_factors(factors).expect("binary digits are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(Gen::ESigma.bidegree(), BiDegree::new(1, 1));
        assert_eq!(Gen::AlphaBar(2).bidegree(), BiDegree::new(8, 4));
        assert_eq!(Gen::Alpha(1).bidegree(), BiDegree::new(4, 0));
        assert_eq!(Gen::XBar(0).bidegree(), BiDegree::new(4, 2));
        assert_eq!(Gen::A(0).bidegree(), BiDegree::new(1, 0));
        let c = CircleMono::new(vec![Gen::AlphaBar(0), Gen::ESigma]);
        assert_eq!(c.bidegree(), BiDegree::new(3, 2));
    }

    #[test]
    fn e0_idempotent() {
        let c = CircleMono::new(vec![Gen::E0, Gen::A(1), Gen::E0, Gen::E0]);
        assert_eq!(c.letters(), &[Gen::E0, Gen::A(1)]);
    }

    #[test]
    fn tokens_round_trip() {
        for g in [
            Gen::E0,
            Gen::ESigma,
            Gen::AlphaBar(3),
            Gen::BetaBar(0),
            Gen::E1,
            Gen::Alpha(2),
        ] {
            assert_eq!(g.token().parse::<Gen>().unwrap(), g);
        }
        for g in [Gen::Beta(1), Gen::E2Sigma, Gen::XBar(4), Gen::A(5)] {
            assert_eq!(g.token().parse::<Gen>().unwrap(), g);
        }
        let c = CircleMono::new(vec![Gen::ESigma, Gen::AlphaBar(1)]);
        assert_eq!(c.token(), "e_sigma o abar_(1)");
        assert_eq!(c.token().parse::<CircleMono>().unwrap(), c);
        assert!("abar_(x)".parse::<Gen>().is_err());
        assert!("zeta".parse::<Gen>().is_err());
    }

    #[test]
    fn exterior_star() {
        let e = StarMono::from(Gen::ESigma);
        let a = StarMono::from(Gen::AlphaBar(0));
        let ea = e.mul(&a).unwrap();
        assert_eq!(ea.len(), 2);
        assert_eq!(e.mul(&e), None);
        assert_eq!(StarMono::unit().mul(&a), Some(a.clone()));
        let one = StarMono::single(CircleMono::unit());
        assert_eq!(one.mul(&one), Some(StarMono::unit()));
    }

    #[test]
    fn divided_powers() {
        let d = divided(Gen::AlphaBar, 5);
        assert_eq!(
            d.factors(),
            &[
                CircleMono::letter(Gen::AlphaBar(0)),
                CircleMono::letter(Gen::AlphaBar(2))
            ]
        );
        assert_eq!(d.bidegree(), 5 * BiDegree::RHO);
        assert!(divided(Gen::AlphaBar, 0).is_unit());
    }
}
