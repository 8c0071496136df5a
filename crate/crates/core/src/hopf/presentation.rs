use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bases;
use crate::coeffs::{BiDegree, M2Element};
use crate::error::{Error, Result};

use super::calculus::{alpha_bar_coproduct, coproduct, divided_coproduct};
use super::{divided, CircleMono, Gen, StarMono, Tensor};

/// A Hopf algebra over `M2`, exterior on its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPresentation {
    pub name: String,
    pub generators: Vec<CircleMono>,
    /// `ψ` on each generator.
    pub coproduct: BTreeMap<CircleMono, Tensor>,
    /// Independently stored closed formulas `ψ(g_n)` for divided-power
    /// classes, checked against the multiplicative extension of the table.
    pub closed_forms: BTreeMap<StarMono, Tensor>,
    /// Non-identity part of the conjugation action on generators.
    pub conjugation: BTreeMap<CircleMono, CircleMono>,
}

impl HopfPresentation {
    /// Builds a presentation whose coproducts come from the circle calculus.
    pub fn from_generators(name: impl Into<String>, mut generators: Vec<CircleMono>) -> Self {
        generators.sort();
        generators.dedup();
        let coproduct = generators
            .iter()
            .map(|g| (g.clone(), coproduct(g)))
            .collect();
        HopfPresentation {
            name: name.into(),
            generators,
            coproduct,
            closed_forms: BTreeMap::new(),
            conjugation: BTreeMap::new(),
        }
    }

    pub fn generator_bidegrees(&self) -> Vec<BiDegree> {
        self.generators.iter().map(|g| g.bidegree()).collect()
    }

    /// Exterior product of two basis monomials.
    pub fn star_product(&self, m1: &StarMono, m2: &StarMono) -> Option<StarMono> {
        m1.mul(m2)
    }

    /// `ψ(m)`, extending the generator table multiplicatively.
    pub fn coproduct(&self, m: &StarMono) -> Tensor {
        let mut t = Tensor::simple(StarMono::unit(), StarMono::unit());
        for c in m.factors() {
            let psi = self
                .coproduct
                .get(c)
                .cloned()
                .unwrap_or_else(|| coproduct(c));
            t = t.mul(&psi);
        }
        t
    }

    pub fn conjugate(&self, m: &StarMono) -> StarMono {
        let imgs = m
            .factors()
            .iter()
            .map(|c| self.conjugation.get(c).unwrap_or(c).clone());
        StarMono::from_factors(imgs).expect("conjugation permutes generators")
    }

    /// All exterior monomials whose bidegree satisfies `keep`. `keep` must be
    /// monotone: if it fails on `m` it fails on every multiple of `m`.
    pub fn basis_where(&self, keep: impl Fn(BiDegree) -> bool) -> Vec<StarMono> {
        let mut out = Vec::new();
        fn rec(
            gens: &[CircleMono],
            start: usize,
            cur: &mut Vec<CircleMono>,
            deg: BiDegree,
            keep: &dyn Fn(BiDegree) -> bool,
            out: &mut Vec<StarMono>,
        ) {
            out.push(StarMono::from_factors(cur.iter().cloned()).expect("distinct generators"));
            for i in start..gens.len() {
                let d = deg + gens[i].bidegree();
                if keep(d) {
                    cur.push(gens[i].clone());
                    rec(gens, i + 1, cur, d, keep, out);
                    cur.pop();
                }
            }
        }
        rec(
            &self.generators,
            0,
            &mut Vec::new(),
            BiDegree::ZERO,
            &keep,
            &mut out,
        );
        out.sort();
        out
    }

    /// Basis monomials with underlying degree at most `p_max`.
    pub fn basis_up_to(&self, p_max: i64) -> Vec<StarMono> {
        self.basis_where(|d| d.p <= p_max)
    }

    /// Degree of the largest generator; handy for truncation checks.
    pub fn max_generator_p(&self) -> i64 {
        self.generators
            .iter()
            .map(|g| g.bidegree().p)
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationJson::from(self)).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PresentationJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        HopfPresentation::try_from(j)
    }
}

fn pow2(k: u32) -> u64 {
    1u64 << k
}

fn letters(gs: impl IntoIterator<Item = Gen>) -> Vec<CircleMono> {
    gs.into_iter().map(CircleMono::letter).collect()
}

fn with_divided_closed_forms(
    mut p: HopfPresentation,
    family: impl Fn(u32) -> Gen + Copy,
    max_index: u32,
    closed: impl Fn(u64) -> Tensor,
) -> HopfPresentation {
    for n in 1..pow2(max_index + 1) {
        p.closed_forms.insert(divided(family, n), closed(n));
    }
    p
}

/// Looks up a built-in presentation, truncated at generator index `max_index`.
///
/// Names: `K_sigma`, `K_Z_rho`, `classical_K1`, `classical_CP`, `S1`,
/// `S_sigma`, `F2`, `K_nsigma(n)`, `fixed_points(V)`.
pub fn make_presentation(name: &str, max_index: u32) -> Result<HopfPresentation> {
    let idx = 0..=max_index;
    let p = match name {
        "K_sigma" => {
            let mut gens = letters([Gen::ESigma]);
            gens.extend(letters(idx.map(Gen::AlphaBar)));
            let p = HopfPresentation::from_generators(name, gens);
            with_divided_closed_forms(p, Gen::AlphaBar, max_index, alpha_bar_coproduct)
        }
        "K_Z_rho" => {
            let p = HopfPresentation::from_generators(name, letters(idx.map(Gen::BetaBar)));
            with_divided_closed_forms(p, Gen::BetaBar, max_index, |n| {
                divided_coproduct(Gen::BetaBar, n)
            })
        }
        "classical_K1" => {
            let mut gens = letters([Gen::E1]);
            gens.extend(letters(idx.map(Gen::Alpha)));
            let p = HopfPresentation::from_generators(name, gens);
            with_divided_closed_forms(p, Gen::Alpha, max_index, |n| {
                divided_coproduct(Gen::Alpha, n)
            })
        }
        "classical_CP" => {
            let p = HopfPresentation::from_generators(name, letters(idx.map(Gen::Beta)));
            with_divided_closed_forms(p, Gen::Beta, max_index, |n| divided_coproduct(Gen::Beta, n))
        }
        "S1" => HopfPresentation::from_generators(name, letters([Gen::E1])),
        "S_sigma" => HopfPresentation::from_generators(name, letters([Gen::ESigma])),
        "F2" => HopfPresentation::from_generators(name, letters([Gen::E0])),
        _ => return parametrized(name, max_index),
    };
    Ok(p)
}

fn parametrized(name: &str, max_index: u32) -> Result<HopfPresentation> {
    let unknown = || Error::Name(name.to_string());
    let (head, arg) = name.split_once('(').ok_or_else(unknown)?;
    let arg = arg.strip_suffix(')').ok_or_else(unknown)?;
    match head {
        "K_nsigma" => {
            let n: u32 = arg.trim().parse().map_err(|_| unknown())?;
            if n == 0 {
                return Ok(HopfPresentation {
                    name: name.into(),
                    ..make_presentation("F2", 0)?
                });
            }
            Ok(HopfPresentation::from_generators(
                name,
                bases::signed_generators(n, max_index),
            ))
        }
        "fixed_points" => {
            let v = BiDegree::parse_rep(arg).ok_or_else(unknown)?;
            let gens = bases::fixed_generators(v, 1i64 << (max_index + 1))?;
            Ok(HopfPresentation::from_generators(name, gens))
        }
        _ => Err(unknown()),
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<u32>,
    bidegree: BiDegree,
    underlying: i64,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: M2Element,
    left: StarMono,
    right: StarMono,
}

#[derive(Serialize, Deserialize)]
struct ClosedJson {
    arg: StarMono,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    name: String,
    generators: Vec<GeneratorJson>,
    mult: String,
    coproduct: BTreeMap<String, Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    closed: Vec<ClosedJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    conjugation: BTreeMap<String, String>,
}

fn terms_json(t: &Tensor) -> Vec<TermJson> {
    t.terms()
        .map(|(l, r, c)| TermJson {
            coeff: c.clone(),
            left: l.clone(),
            right: r.clone(),
        })
        .collect()
}

fn tensor_from(terms: Vec<TermJson>) -> Tensor {
    let mut t = Tensor::zero();
    for TermJson { coeff, left, right } in terms {
        t.add_term(left, right, &coeff);
    }
    t
}

impl From<&HopfPresentation> for PresentationJson {
    fn from(p: &HopfPresentation) -> Self {
        PresentationJson {
            name: p.name.clone(),
            generators: p
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    name: g.token(),
                    index: match g.letters() {
                        [x] => x.index(),
                        _ => None,
                    },
                    bidegree: g.bidegree(),
                    underlying: g.bidegree().p,
                })
                .collect(),
            mult: "exterior".into(),
            coproduct: p
                .coproduct
                .iter()
                .map(|(g, t)| (g.token(), terms_json(t)))
                .collect(),
            closed: p
                .closed_forms
                .iter()
                .map(|(m, t)| ClosedJson {
                    arg: m.clone(),
                    terms: terms_json(t),
                })
                .collect(),
            conjugation: p
                .conjugation
                .iter()
                .map(|(a, b)| (a.token(), b.token()))
                .collect(),
        }
    }
}

impl TryFrom<PresentationJson> for HopfPresentation {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        if j.mult != "exterior" {
            return Err(Error::Parse(format!(
                "unsupported multiplication {:?}",
                j.mult
            )));
        }
        let mut generators = Vec::new();
        for g in &j.generators {
            let c: CircleMono = g.name.parse()?;
            if c.bidegree() != g.bidegree || g.underlying != g.bidegree.p {
                return Err(Error::Parse(format!(
                    "degree mismatch for generator {}",
                    g.name
                )));
            }
            generators.push(c);
        }
        let mut coproduct = BTreeMap::new();
        for (k, terms) in j.coproduct {
            coproduct.insert(k.parse::<CircleMono>()?, tensor_from(terms));
        }
        let closed_forms = j
            .closed
            .into_iter()
            .map(|c| (c.arg, tensor_from(c.terms)))
            .collect();
        let mut conjugation = BTreeMap::new();
        for (a, b) in j.conjugation {
            conjugation.insert(a.parse::<CircleMono>()?, b.parse::<CircleMono>()?);
        }
        Ok(HopfPresentation {
            name: j.name,
            generators,
            coproduct,
            closed_forms,
            conjugation,
        })
    }
}
