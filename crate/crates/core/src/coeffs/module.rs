use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{m2_dim, BiDegree, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SummandKind {
    /// A shifted copy of `M2` with its unit at `shift`.
    #[serde(rename = "cone")]
    FreeCone { shift: BiDegree },
    /// A copy of `H⋆(C2+) = F2[u^±]{ι}`: one class at every `(p0, q)`.
    #[serde(rename = "tower")]
    InducedTower { p0: i64 },
}

/// Whether a twisted-bar summand came from a fixed word or a free orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orbit {
    Fixed,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    #[serde(flatten)]
    pub kind: SummandKind,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<Orbit>,
}

impl Summand {
    pub fn cone(shift: BiDegree, label: impl Into<String>) -> Self {
        Summand {
            kind: SummandKind::FreeCone { shift },
            label: label.into(),
            orbit: None,
        }
    }

    pub fn tower(p0: i64, label: impl Into<String>) -> Self {
        Summand {
            kind: SummandKind::InducedTower { p0 },
            label: label.into(),
            orbit: None,
        }
    }

    pub fn with_orbit(mut self, orbit: Orbit) -> Self {
        self.orbit = Some(orbit);
        self
    }

    pub fn dim_at(&self, d: BiDegree) -> usize {
        match self.kind {
            SummandKind::FreeCone { shift } => m2_dim(d - shift),
            SummandKind::InducedTower { p0 } => (d.p == p0) as usize,
        }
    }

    /// Whether the summand is nonzero somewhere in `r`.
    pub fn meets(&self, r: &Region) -> bool {
        if r.is_empty() {
            return false;
        }
        match self.kind {
            SummandKind::InducedTower { p0 } => (r.p_min..=r.p_max).contains(&p0),
            SummandKind::FreeCone { shift: s } => {
                // positive cone: best column is the rightmost one left of the apex
                let p = r.p_max.min(s.p);
                let pos = p >= r.p_min && r.q_min <= r.q_max.min(s.q - (s.p - p));
                // negative cone: leftmost column right of the apex
                let p = r.p_min.max(s.p);
                let neg = p <= r.p_max && r.q_max >= r.q_min.max(s.q + (p - s.p) + 2);
                pos || neg
            }
        }
    }

    pub fn cone_shift(&self) -> Option<BiDegree> {
        match self.kind {
            SummandKind::FreeCone { shift } => Some(shift),
            SummandKind::InducedTower { .. } => None,
        }
    }

    pub fn tower_p0(&self) -> Option<i64> {
        match self.kind {
            SummandKind::InducedTower { p0 } => Some(p0),
            SummandKind::FreeCone { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedModule {
    pub summands: Vec<Summand>,
}

impl GradedModule {
    pub fn new(summands: Vec<Summand>) -> Self {
        GradedModule { summands }
    }

    pub fn dim_at(&self, d: BiDegree) -> usize {
        self.summands.iter().map(|s| s.dim_at(d)).sum()
    }

    pub fn concat(&self, other: &GradedModule) -> GradedModule {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        GradedModule { summands }
    }

    pub fn cones(&self) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(|s| s.cone_shift().is_some())
    }

    pub fn towers(&self) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(|s| s.tower_p0().is_some())
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

/// The free module `M2 ⊗ E[g_1, …, g_n]` on generators `(label, degree,
/// filtration)`, as cones grouped by total filtration. Only monomials whose
/// cone meets `region` are kept; generators must have `p ≥ 0` and
/// `p - q ≥ 0` so that the search can prune.
pub fn exterior_cones(gens: &[(String, BiDegree, usize)], region: &Region) -> BTreeMap<usize, GradedModule> {
    fn rec(
        gens: &[(String, BiDegree, usize)],
        start: usize,
        cur: &mut Vec<usize>,
        deg: BiDegree,
        t: usize,
        region: &Region,
        out: &mut BTreeMap<usize, GradedModule>,
    ) {
        let label = if cur.is_empty() {
            "1".to_string()
        } else {
            cur.iter().map(|&i| gens[i].0.as_str()).collect::<Vec<_>>().join("·")
        };
        let s = Summand::cone(deg, label);
        if s.meets(region) {
            out.entry(t).or_default().summands.push(s);
        }
        for i in start..gens.len() {
            let d = deg + gens[i].1;
            if d.p <= region.p_max || d.p - d.q <= region.p_max - region.q_min {
                cur.push(i);
                rec(gens, i + 1, cur, d, t + gens[i].2, region, out);
                cur.pop();
            }
        }
    }
    debug_assert!(gens.iter().all(|(_, d, _)| d.p >= 0 && d.p >= d.q));
    let mut out = BTreeMap::new();
    rec(gens, 0, &mut Vec::new(), BiDegree::ZERO, 0, region, &mut out);
    out
}

/// Per-bidegree dimension of a graded module.
pub fn module_dim(m: &GradedModule, d: BiDegree) -> usize {
    m.dim_at(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn summand_dims() {
        let cone = GradedModule::new(vec![Summand::cone(BiDegree::ZERO, "1")]);
        assert_eq!(module_dim(&cone, BiDegree::ZERO), 1);
        let tower = GradedModule::new(vec![Summand::tower(5, "[x|y]")]);
        assert_eq!(module_dim(&tower, BiDegree::new(5, 100)), 1);
        assert_eq!(module_dim(&tower, BiDegree::new(4, 100)), 0);
        let sig = GradedModule::new(vec![Summand::cone(BiDegree::SIGMA, "e")]);
        assert_eq!(module_dim(&sig, BiDegree::new(1, 0)), 1);
        assert_eq!(module_dim(&sig, BiDegree::new(2, 0)), 0);
    }

    #[test]
    fn exterior_on_two() {
        let gens = vec![("x".to_string(), BiDegree::SIGMA, 1), ("y".to_string(), BiDegree::RHO, 1)];
        let m = exterior_cones(&gens, &Region::new(0, 6, 0, 6));
        assert_eq!(m[&0].summands.len(), 1);
        assert_eq!(m[&1].summands.len(), 2);
        assert_eq!(m[&2].summands[0].cone_shift(), Some(BiDegree::new(3, 2)));
    }

    #[test]
    fn meets_region() {
        let r = Region::new(0, 4, 0, 4);
        assert!(Summand::cone(BiDegree::new(6, 3), "c").meets(&r));
        assert!(!Summand::cone(BiDegree::new(6, 1), "c").meets(&r));
        assert!(Summand::cone(BiDegree::new(-3, -3), "c").meets(&r));
        assert!(!Summand::cone(BiDegree::new(-3, 0), "c").meets(&r));
        assert!(!Summand::tower(5, "t").meets(&r));
        let brute = |s: &Summand| r.points().any(|x| s.dim_at(x) > 0);
        for p in -8..10 {
            for q in -8..10 {
                let c = Summand::cone(BiDegree::new(p, q), "c");
                assert_eq!(c.meets(&r), brute(&c), "({p},{q})");
            }
        }
    }

    #[test]
    fn json_schema() {
        let m = GradedModule::new(vec![
            Summand::cone(BiDegree::new(2, 1), "[e]"),
            Summand::tower(5, "[x|y]"),
        ]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"summands":[{"kind":"cone","shift":[2,1],"label":"[e]"},{"kind":"tower","p0":5,"label":"[x|y]"}]}"#
        );
        assert_eq!(serde_json::from_str::<GradedModule>(&s).unwrap(), m);
    }

    fn summand() -> impl Strategy<Value = Summand> {
        (-5i64..5, -5i64..5, any::<bool>()).prop_map(|(p, q, t)| {
            if t {
                Summand::tower(p, "t")
            } else {
                Summand::cone(BiDegree::new(p, q), "c")
            }
        })
    }

    proptest! {
        #[test]
        fn additive_under_concat(
            a in proptest::collection::vec(summand(), 0..6),
            b in proptest::collection::vec(summand(), 0..6),
            p in -10i64..10, q in -10i64..10,
        ) {
            let (ma, mb) = (GradedModule::new(a), GradedModule::new(b));
            let d = BiDegree::new(p, q);
            prop_assert_eq!(ma.concat(&mb).dim_at(d), ma.dim_at(d) + mb.dim_at(d));
        }
    }
}
