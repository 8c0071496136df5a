use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::word::BarWord;
use crate::coeffs::{
    BiDegree, BitMatrix, GradedModule, M2Basis, M2Element, Region, Summand, SummandKind,
};

/// How a differential component acts, by source and target summand type.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    /// Multiplication by an `M2` element.
    #[default]
    ConeCone,
    /// Isomorphism of `u`-periodic towers.
    TowerTower,
    /// Zero below, isomorphism onto the upper column of the target cone.
    TowerCone,
    /// Transfer type; carried as zero.
    ConeTower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandMap {
    pub from: String,
    pub to: String,
    pub coeff: M2Element,
    #[serde(default)]
    pub kind: MapKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub kind: String,
    pub target: String,
    pub shift: BiDegree,
}

/// One page of a spectral sequence: summands by filtration and the
/// differential as summand-to-summand components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub r: u32,
    pub filtrations: BTreeMap<usize, GradedModule>,
    pub d: Vec<SummandMap>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
    /// Window the page was built to be complete on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Region>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<usize>,
    #[serde(skip)]
    pub words: HashMap<String, BarWord>,
    /// Labels of non-representative orbit members, mapped to their
    /// representative.
    #[serde(skip)]
    pub aliases: HashMap<String, String>,
}

impl Page {
    pub fn t_max(&self) -> usize {
        self.t_max
            .unwrap_or_else(|| self.filtrations.keys().copied().max().unwrap_or(0))
    }

    pub fn summands(&self) -> impl Iterator<Item = (usize, &Summand)> {
        self.filtrations
            .iter()
            .flat_map(|(&t, m)| m.summands.iter().map(move |s| (t, s)))
    }

    pub fn find(&self, label: &str) -> Option<(usize, &Summand)> {
        self.summands().find(|(_, s)| s.label == label)
    }

    /// E¹ dimension at filtration `t` and bidegree `x`.
    pub fn dim_at(&self, t: usize, x: BiDegree) -> usize {
        self.filtrations.get(&t).map_or(0, |m| m.dim_at(x))
    }
}

/// Differential data that could not be computed inside the window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TruncationWarning {
    pub clipped: Vec<String>,
}

impl TruncationWarning {
    pub fn is_empty(&self) -> bool {
        self.clipped.is_empty()
    }
}

impl fmt::Display for TruncationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "truncation: {} clipped map(s)", self.clipped.len())?;
        for c in &self.clipped {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

/// Whether the component `src → tgt` is nonzero on the class of `src` in
/// bidegree `x`. The target lives in `x - (1,0)`.
pub fn component_at(
    kind: MapKind,
    coeff: &M2Element,
    src: &Summand,
    tgt: &Summand,
    x: BiDegree,
) -> bool {
    let y = x - BiDegree::ONE;
    if src.dim_at(x) == 0 || tgt.dim_at(y) == 0 || coeff.is_zero() {
        return false;
    }
    match (kind, src.kind, tgt.kind) {
        (
            MapKind::ConeCone,
            SummandKind::FreeCone { shift: s },
            SummandKind::FreeCone { shift: s2 },
        ) => {
            let (Some(b), Some(b2)) = (M2Basis::at(x - s), M2Basis::at(y - s2)) else {
                return false;
            };
            coeff.terms().filter(|c| c.mul(b) == Some(b2)).count() % 2 == 1
        }
        (
            MapKind::TowerTower,
            SummandKind::InducedTower { .. },
            SummandKind::InducedTower { .. },
        ) => true,
        (MapKind::TowerCone, SummandKind::InducedTower { .. }, SummandKind::FreeCone { shift }) => {
            matches!(M2Basis::at(y - shift), Some(M2Basis::Neg(..)))
        }
        _ => false,
    }
}

/// Per-bidegree matrices of a page's differential.
pub struct PageMatrices<'a> {
    page: &'a Page,
    /// (filtration, index) of every label
    pos: HashMap<&'a str, (usize, usize)>,
    /// outgoing components per (filtration, index)
    out: HashMap<(usize, usize), Vec<(usize, &'a SummandMap)>>,
}

impl<'a> PageMatrices<'a> {
    pub fn new(page: &'a Page) -> Self {
        let mut pos = HashMap::new();
        for (&t, m) in &page.filtrations {
            for (i, s) in m.summands.iter().enumerate() {
                pos.insert(s.label.as_str(), (t, i));
            }
        }
        let mut out: HashMap<(usize, usize), Vec<(usize, &SummandMap)>> = HashMap::new();
        for map in &page.d {
            if let (Some(&a), Some(&(_, j))) =
                (pos.get(map.from.as_str()), pos.get(map.to.as_str()))
            {
                out.entry(a).or_default().push((j, map));
            }
        }
        PageMatrices { page, pos, out }
    }

    fn active(&self, t: usize, x: BiDegree) -> Vec<usize> {
        self.page
            .filtrations
            .get(&t)
            .map(|m| {
                (0..m.summands.len())
                    .filter(|&i| m.summands[i].dim_at(x) > 0)
                    .collect()
            })
            .unwrap_or_default()
    }

    /// `d: E_{t}(x) → E_{t-1}(x - (1,0))`, rows indexed by active sources.
    pub fn matrix(&self, t: usize, x: BiDegree) -> BitMatrix {
        let src = self.active(t, x);
        if t == 0 {
            return BitMatrix::zeros(src.len(), 0);
        }
        let y = x - BiDegree::ONE;
        let tgt = self.active(t - 1, y);
        let col: HashMap<usize, usize> = tgt.iter().enumerate().map(|(c, &j)| (j, c)).collect();
        let mut m = BitMatrix::zeros(src.len(), tgt.len());
        let (Some(sm), Some(tm)) = (
            self.page.filtrations.get(&t),
            self.page.filtrations.get(&(t - 1)),
        ) else {
            return m;
        };
        for (r, &i) in src.iter().enumerate() {
            for &(j, map) in self.out.get(&(t, i)).map_or(&[][..], |v| v.as_slice()) {
                if let Some(&c) = col.get(&j) {
                    if component_at(map.kind, &map.coeff, &sm.summands[i], &tm.summands[j], x) {
                        m.flip(r, c);
                    }
                }
            }
        }
        m
    }

    pub fn label_position(&self, label: &str) -> Option<(usize, usize)> {
        self.pos.get(label).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct E2Row {
    pub p: i64,
    pub q: i64,
    pub t: usize,
    pub dim: usize,
}

/// `E²` dimensions inside a window, with a module reconstruction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct E2Table {
    pub region: Option<Region>,
    pub rows: Vec<E2Row>,
    pub module: BTreeMap<usize, GradedModule>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
    /// Reasons the reconstruction is incomplete or disagrees with the ranks.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unresolved: Vec<String>,
    #[serde(skip_serializing_if = "TruncationWarning::is_empty")]
    pub warning: TruncationWarning,
}

impl E2Table {
    pub fn dim(&self, t: usize, x: BiDegree) -> usize {
        self.rows
            .iter()
            .find(|r| r.t == t && r.p == x.p && r.q == x.q)
            .map_or(0, |r| r.dim)
    }

    /// Dimension summed over filtrations.
    pub fn total(&self, x: BiDegree) -> usize {
        self.rows
            .iter()
            .filter(|r| r.p == x.p && r.q == x.q)
            .map(|r| r.dim)
            .sum()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,q,t,dim\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{}\n", r.p, r.q, r.t, r.dim));
        }
        s
    }
}

/// Exact next-page dimensions at every `(t, x)` with `x` in `region`.
pub fn page_ranks(page: &Page, region: &Region) -> Vec<E2Row> {
    let mats = PageMatrices::new(page);
    let cells: Vec<(usize, BiDegree)> = page
        .filtrations
        .keys()
        .flat_map(|&t| region.points().map(move |x| (t, x)))
        .collect();
    let mut rows: Vec<E2Row> = cells
        .par_iter()
        .filter_map(|&(t, x)| {
            let n = page.dim_at(t, x);
            if n == 0 {
                return None;
            }
            let out = mats.matrix(t, x).rank();
            let inc = mats.matrix(t + 1, x + BiDegree::ONE).rank();
            let dim = n - out - inc;
            (dim > 0).then_some(E2Row {
                p: x.p,
                q: x.q,
                t,
                dim,
            })
        })
        .collect();
    rows.sort_by_key(|r| (r.t, r.p, r.q));
    rows
}

/// Checks `d∘d = 0` at every `(t, x)` in `region`; returns the failures.
pub fn d_squared_failures(page: &Page, region: &Region) -> Vec<(usize, BiDegree)> {
    let mats = PageMatrices::new(page);
    let cells: Vec<(usize, BiDegree)> = page
        .filtrations
        .keys()
        .filter(|&&t| t >= 2)
        .flat_map(|&t| region.points().map(move |x| (t, x)))
        .collect();
    let mut bad: Vec<(usize, BiDegree)> = cells
        .par_iter()
        .filter(|&&(t, x)| {
            let a = mats.matrix(t, x);
            let b = mats.matrix(t - 1, x - BiDegree::ONE);
            a.rows() > 0 && b.cols() > 0 && !a.mul(&b).is_zero()
        })
        .copied()
        .collect();
    bad.sort();
    bad
}

/// Warnings for filtrations whose incoming differential was never built.
pub fn truncation_warnings(page: &Page, region: &Region, rows: &[E2Row]) -> TruncationWarning {
    let mut clipped = BTreeSet::new();
    let t_max = page.t_max();
    if rows.iter().any(|r| r.t == t_max) && t_max > 0 {
        clipped.insert(format!("d1: E1[t={}] → E1[t={t_max}] not built", t_max + 1));
    }
    if let Some(b) = page.region {
        let need = Region::new(
            region.p_min - 1,
            region.p_max + 1,
            region.q_min,
            region.q_max,
        );
        if need.p_min < b.p_min
            || need.p_max > b.p_max
            || need.q_min < b.q_min
            || need.q_max > b.q_max
        {
            clipped.insert(format!(
                "window {}:{}:{}:{} exceeds the page's build window {}:{}:{}:{}",
                need.p_min, need.p_max, need.q_min, need.q_max, b.p_min, b.p_max, b.q_min, b.q_max
            ));
        }
    }
    TruncationWarning {
        clipped: clipped.into_iter().collect(),
    }
}

/// Summand-level reconstruction: cancel isomorphism components by Gaussian
/// elimination, then resolve the tower-to-cone pattern as a shift by `σ`
/// with a hidden extension. What cannot be resolved is reported.
pub fn reconstruct(page: &Page) -> (BTreeMap<usize, GradedModule>, Vec<Annotation>, Vec<String>) {
    type Node = (usize, usize);
    let mut summands: BTreeMap<Node, Summand> = BTreeMap::new();
    let mut pos: HashMap<&str, Node> = HashMap::new();
    for (&t, m) in &page.filtrations {
        for (i, s) in m.summands.iter().enumerate() {
            summands.insert((t, i), s.clone());
            pos.insert(s.label.as_str(), (t, i));
        }
    }
    let mut out: HashMap<Node, BTreeMap<Node, (MapKind, M2Element)>> = HashMap::new();
    let mut inc: HashMap<Node, BTreeSet<Node>> = HashMap::new();
    for map in &page.d {
        if map.kind == MapKind::ConeTower || map.coeff.is_zero() {
            continue;
        }
        let (Some(&a), Some(&b)) = (pos.get(map.from.as_str()), pos.get(map.to.as_str())) else {
            continue;
        };
        toggle(&mut out, &mut inc, a, b, map.kind, &map.coeff);
    }

    let is_iso = |summands: &BTreeMap<Node, Summand>,
                  a: Node,
                  b: Node,
                  kind: MapKind,
                  c: &M2Element|
     -> bool {
        match kind {
            MapKind::TowerTower => true,
            MapKind::ConeCone => {
                let (sa, sb) = (summands[&a].cone_shift(), summands[&b].cone_shift());
                c.is_one() && matches!((sa, sb), (Some(x), Some(y)) if x - y == BiDegree::ONE)
            }
            _ => false,
        }
    };

    let nodes: Vec<Node> = summands.keys().copied().collect();
    loop {
        let mut changed = false;
        for &a in &nodes {
            let Some(targets) = out.get(&a) else { continue };
            let pick = targets
                .iter()
                .find(|(b, (k, c))| is_iso(&summands, a, **b, *k, c))
                .map(|(b, _)| *b);
            let Some(b) = pick else { continue };
            changed = true;
            // c → b and a → d give c → d
            let ins: Vec<Node> = inc
                .get(&b)
                .map(|s| s.iter().copied().filter(|&c| c != a).collect())
                .unwrap_or_default();
            let outs: Vec<(Node, MapKind, M2Element)> = out[&a]
                .iter()
                .filter(|(d, _)| **d != b)
                .map(|(d, (k, c))| (*d, *k, c.clone()))
                .collect();
            for &c in &ins {
                let (kcb, ccb) = out[&c][&b].clone();
                for (d, kad, cad) in &outs {
                    let kind = compose_kind(kcb, *kad);
                    toggle(&mut out, &mut inc, c, *d, kind, &ccb.mul(cad));
                }
            }
            for n in [a, b] {
                remove_node(&mut out, &mut inc, n);
                summands.remove(&n);
            }
        }
        if !changed {
            break;
        }
    }

    let mut annotations = Vec::new();
    let mut unresolved = Vec::new();
    let mut dropped: BTreeSet<Node> = BTreeSet::new();
    let mut shifted: BTreeMap<Node, BiDegree> = BTreeMap::new();
    let cones: Vec<Node> = summands
        .keys()
        .copied()
        .filter(|n| summands[n].cone_shift().is_some())
        .collect();
    for b in cones {
        let Some(sources) = inc.get(&b).cloned() else {
            continue;
        };
        if sources.is_empty() {
            continue;
        }
        let clean = out.get(&b).is_none_or(|o| o.is_empty())
            && sources.iter().all(|c| {
                out[c].len() == 1
                    && out[c][&b].0 == MapKind::TowerCone
                    && inc.get(c).is_none_or(|i| i.is_empty())
            });
        if !clean {
            continue;
        }
        let first = *sources.iter().next().expect("nonempty");
        dropped.insert(first);
        for c in &sources {
            remove_node_edges_out(&mut out, &mut inc, *c);
        }
        let label = summands[&b].label.clone();
        shifted.insert(b, BiDegree::SIGMA);
        annotations.push(Annotation {
            kind: "hidden-extension".into(),
            target: label,
            shift: BiDegree::SIGMA,
        });
    }
    for (a, targets) in &out {
        for (b, (k, c)) in targets {
            if summands.contains_key(a) && summands.contains_key(b) {
                unresolved.push(format!(
                    "{} → {} ({k:?}, {c})",
                    summands[a].label, summands[b].label
                ));
            }
        }
    }
    unresolved.sort();

    let mut module: BTreeMap<usize, GradedModule> = BTreeMap::new();
    for (n, mut s) in summands {
        if dropped.contains(&n) {
            continue;
        }
        if let (Some(sh), SummandKind::FreeCone { shift }) = (shifted.get(&n), s.kind) {
            s.kind = SummandKind::FreeCone { shift: shift + *sh };
        }
        module.entry(n.0).or_default().summands.push(s);
    }
    (module, annotations, unresolved)
}

fn compose_kind(first: MapKind, second: MapKind) -> MapKind {
    use MapKind::*;
    match (first, second) {
        (TowerTower, TowerTower) => TowerTower,
        (TowerTower, TowerCone) | (TowerCone, ConeCone) => TowerCone,
        (ConeCone, ConeCone) => ConeCone,
        _ => ConeTower,
    }
}

type Edges = HashMap<(usize, usize), BTreeMap<(usize, usize), (MapKind, M2Element)>>;
type Ins = HashMap<(usize, usize), BTreeSet<(usize, usize)>>;

fn toggle(
    out: &mut Edges,
    inc: &mut Ins,
    a: (usize, usize),
    b: (usize, usize),
    kind: MapKind,
    c: &M2Element,
) {
    if c.is_zero() || kind == MapKind::ConeTower {
        return;
    }
    let targets = out.entry(a).or_default();
    let gone = match targets.get_mut(&b) {
        Some((_, old)) => {
            // towers carry coefficient 1, so over F2 two hits cancel
            if kind == MapKind::ConeCone {
                old.add_assign(c);
                old.is_zero()
            } else {
                true
            }
        }
        None => {
            targets.insert(
                b,
                (
                    kind,
                    if kind == MapKind::ConeCone {
                        c.clone()
                    } else {
                        M2Element::one()
                    },
                ),
            );
            false
        }
    };
    if gone {
        targets.remove(&b);
        if let Some(s) = inc.get_mut(&b) {
            s.remove(&a);
        }
    } else {
        inc.entry(b).or_default().insert(a);
    }
}

fn remove_node_edges_out(out: &mut Edges, inc: &mut Ins, n: (usize, usize)) {
    if let Some(targets) = out.remove(&n) {
        for b in targets.keys() {
            if let Some(s) = inc.get_mut(b) {
                s.remove(&n);
            }
        }
    }
}

fn remove_node(out: &mut Edges, inc: &mut Ins, n: (usize, usize)) {
    remove_node_edges_out(out, inc, n);
    if let Some(sources) = inc.remove(&n) {
        for a in sources {
            if let Some(t) = out.get_mut(&a) {
                t.remove(&n);
            }
        }
    }
}

/// Compares a reconstructed module with the exact ranks in `region`.
pub fn reconstruction_mismatches(
    module: &BTreeMap<usize, GradedModule>,
    rows: &[E2Row],
    region: &Region,
) -> Vec<String> {
    let exact: HashMap<(usize, i64, i64), usize> =
        rows.iter().map(|r| ((r.t, r.p, r.q), r.dim)).collect();
    let mut ts: BTreeSet<usize> = module.keys().copied().collect();
    ts.extend(rows.iter().map(|r| r.t));
    let mut bad = Vec::new();
    for t in ts {
        for x in region.points() {
            let want = exact.get(&(t, x.p, x.q)).copied().unwrap_or(0);
            let got = module.get(&t).map_or(0, |m| m.dim_at(x));
            if want != got {
                bad.push(format!(
                    "t={t} at {x}: ranks give {want}, reconstruction gives {got}"
                ));
            }
        }
    }
    bad
}

/// Ranks, reconstruction and warnings for the page after `page`.
pub fn next_page(page: &Page, region: &Region) -> E2Table {
    let rows = page_ranks(page, region);
    let warning = truncation_warnings(page, region, &rows);
    let (mut module, annotations, mut unresolved) = reconstruct(page);
    // summands outside the window may be missing their d1 partners
    for m in module.values_mut() {
        m.summands.retain(|s| s.meets(region));
    }
    module.retain(|_, m| !m.is_empty());
    unresolved.extend(reconstruction_mismatches(&module, &rows, region));
    E2Table {
        region: Some(*region),
        rows,
        module,
        annotations,
        unresolved,
        warning,
    }
}
