use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::algebra::F2Algebra;
use crate::coeffs::BitMatrix;

/// The normalized bar complex of an [`F2Algebra`]: words `[k_1|…|k_s]` of
/// nonunit basis elements, bigraded by length and internal degree.
#[derive(Clone, Debug)]
pub struct BarComplexF2<'a> {
    pub algebra: &'a F2Algebra,
    words: BTreeMap<(usize, i64), Vec<Vec<usize>>>,
}

impl<'a> BarComplexF2<'a> {
    /// Words of length `s` in internal degree `d`.
    pub fn words(&self, s: usize, d: i64) -> &[Vec<usize>] {
        self.words.get(&(s, d)).map_or(&[], |w| w.as_slice())
    }

    pub fn label(&self, w: &[usize]) -> String {
        let parts: Vec<&str> = w.iter().map(|&i| self.algebra.label(i)).collect();
        format!("[{}]", parts.join("|"))
    }

    /// `d(k_1|…|k_s) = Σ (…|k_i k_{i+1}|…)` as a matrix from words `(s, d)`
    /// to words `(s-1, d)`.
    pub fn differential(&self, s: usize, d: i64) -> BitMatrix {
        let src = self.words(s, d);
        if s == 0 {
            return BitMatrix::zeros(src.len(), 0);
        }
        let tgt = self.words(s - 1, d);
        let pos: HashMap<&[usize], usize> = tgt
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i))
            .collect();
        let mut m = BitMatrix::zeros(src.len(), tgt.len());
        for (r, w) in src.iter().enumerate() {
            for image in bar_faces(self.algebra, w) {
                m.flip(r, pos[image.as_slice()]);
            }
        }
        m
    }
}

/// Nonzero inner faces of a word.
fn bar_faces(a: &F2Algebra, w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        if let Some(k) = a.mul(w[i], w[i + 1]) {
            let mut v = Vec::with_capacity(w.len() - 1);
            v.extend_from_slice(&w[..i]);
            v.push(k);
            v.extend_from_slice(&w[i + 2..]);
            out.push(v);
        }
    }
    out
}

/// All bar words of length at most `t_max` and internal degree at most
/// `deg_max`.
pub fn bar_complex_f2(a: &F2Algebra, t_max: usize, deg_max: i64) -> BarComplexF2<'_> {
    let nonunit: Vec<usize> = (1..a.dim()).filter(|&i| a.degree(i) <= deg_max).collect();
    let mut words: BTreeMap<(usize, i64), Vec<Vec<usize>>> = BTreeMap::new();
    words.insert((0, 0), vec![Vec::new()]);
    let mut layer: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 0)];
    for s in 1..=t_max {
        let mut next = Vec::new();
        for (w, d) in &layer {
            for &k in &nonunit {
                let e = d + a.degree(k);
                if e <= deg_max {
                    let mut v = w.clone();
                    v.push(k);
                    next.push((v, e));
                }
            }
        }
        for (w, d) in &next {
            words.entry((s, *d)).or_default().push(w.clone());
        }
        layer = next;
    }
    for ws in words.values_mut() {
        ws.sort();
    }
    BarComplexF2 { algebra: a, words }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TorKind {
    Suspension,
    Transpotence,
}

/// A named homology class together with its bar word representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorClass {
    pub kind: TorKind,
    /// `k` in `φ^(k)`; zero for suspensions.
    pub k: u32,
    pub of: String,
    pub s: usize,
    pub degree: i64,
    pub witness: String,
}

/// `dim Tor_{s,t}` with `t` the total degree `s + internal`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorRow {
    pub s: usize,
    pub t: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorTable {
    pub algebra: String,
    pub rows: Vec<TorRow>,
    pub classes: Vec<TorClass>,
}

impl TorTable {
    pub fn dim(&self, s: usize, t: i64) -> usize {
        self.rows
            .iter()
            .find(|r| r.s == s && r.t == t)
            .map_or(0, |r| r.dim)
    }
}

/// Whether `v` is a cycle that is not a boundary.
fn survives(cx: &BarComplexF2, s: usize, d: i64, row: &[bool]) -> bool {
    let out = cx.differential(s, d);
    let mut probe = BitMatrix::zeros(0, out.rows());
    probe.push_row(row);
    if !probe.mul(&out).is_zero() {
        return false;
    }
    let mut bounds = cx.differential(s + 1, d);
    let before = bounds.rank();
    bounds.push_row(row);
    bounds.rank() > before
}

/// `Tor^A(F2, F2)` through total degree `deg_max` and `s ≤ s_max`, by rank
/// computations on the bar complex, with suspension and transpotence
/// witnesses picked out among the surviving classes.
pub fn tor_f2(a: &F2Algebra, s_max: usize, deg_max: i64) -> TorTable {
    let cx = bar_complex_f2(a, s_max + 1, deg_max);
    let cells: Vec<(usize, i64)> = (0..=s_max)
        .flat_map(|s| (0..=deg_max - s as i64).map(move |d| (s, d)))
        .collect();
    let rows: Vec<TorRow> = cells
        .par_iter()
        .filter_map(|&(s, d)| {
            let n = cx.words(s, d).len();
            if n == 0 {
                return None;
            }
            let out = cx.differential(s, d).rank();
            let inc = cx.differential(s + 1, d).rank();
            let dim = n - out - inc;
            (dim > 0).then_some(TorRow {
                s,
                t: s as i64 + d,
                dim,
            })
        })
        .collect();

    let mut classes = Vec::new();
    for x in a.indecomposables() {
        let mut k = 0u32;
        loop {
            let s = 1usize << k;
            let d = a.degree(x) * s as i64;
            if s > s_max || s as i64 + d > deg_max {
                break;
            }
            let w = vec![x; s];
            let row: Vec<bool> = cx.words(s, d).iter().map(|v| *v == w).collect();
            if survives(&cx, s, d, &row) {
                classes.push(TorClass {
                    kind: if k == 0 {
                        TorKind::Suspension
                    } else {
                        TorKind::Transpotence
                    },
                    k,
                    of: a.label(x).to_string(),
                    s,
                    degree: s as i64 + d,
                    witness: cx.label(&w),
                });
            }
            k += 1;
        }
    }
    TorTable {
        algebra: a.name.clone(),
        rows,
        classes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_square_is_a_cycle() {
        let a = F2Algebra::exterior(&[1]);
        let cx = bar_complex_f2(&a, 2, 4);
        assert!(cx.differential(2, 2).is_zero());
    }

    #[test]
    fn adjacent_product() {
        let a = F2Algebra::exterior(&[1, 1]);
        let cx = bar_complex_f2(&a, 2, 2);
        let words = cx.words(2, 2);
        let xy = words.iter().position(|w| *w == vec![1, 2]).unwrap();
        let m = cx.differential(2, 2);
        let tgt = cx.words(1, 2);
        let hits: Vec<String> = (0..tgt.len())
            .filter(|&j| m.get(xy, j))
            .map(|j| cx.label(&tgt[j]))
            .collect();
        assert_eq!(hits, vec!["[x1x2]"]);
    }

    #[test]
    fn polynomial_square() {
        let a = F2Algebra::truncated_polynomial(1, 3);
        let cx = bar_complex_f2(&a, 2, 2);
        let m = cx.differential(2, 2);
        assert_eq!(m.rows(), 1);
        assert!(m.get(0, 0));
        assert_eq!(cx.label(&cx.words(1, 2)[0]), "[x^2]");
    }

    #[test]
    fn exterior_gives_divided_powers() {
        for n in 1..=3i64 {
            let t = tor_f2(&F2Algebra::exterior(&[n]), 6, 24);
            for s in 0..=6usize {
                for deg in 0..=24 {
                    let want = usize::from(deg == s as i64 * (n + 1));
                    assert_eq!(t.dim(s, deg), want, "|x|={n} s={s} t={deg}");
                }
            }
            let phis: Vec<u32> = t.classes.iter().map(|c| c.k).collect();
            assert_eq!(phis, vec![0, 1, 2]);
        }
    }

    #[test]
    fn trivial_algebra() {
        let t = tor_f2(&F2Algebra::trivial(), 4, 8);
        assert_eq!(t.rows, vec![TorRow { s: 0, t: 0, dim: 1 }]);
    }

    #[test]
    fn truncated_polynomial_has_no_square_transpotence() {
        // F2[x]/x^3: [x|x] is not a cycle
        let t = tor_f2(&F2Algebra::truncated_polynomial(2, 3), 4, 20);
        assert!(t.classes.iter().all(|c| c.kind == TorKind::Suspension));
        assert_eq!(t.dim(1, 3), 1);
        assert_eq!(t.dim(2, 8), 1);
    }
}
