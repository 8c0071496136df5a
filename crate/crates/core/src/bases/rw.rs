//! Classical mod 2 generators `(e₁α)^I` of `H_*K_n`, encoded as multisets of
//! indices: `-1` stands for `e₁` (degree 1) and `k ≥ 0` for `α_(k)`
//! (degree `2^(k+1)`).

use std::fmt;

use serde::Serialize;

use crate::hopf::{CircleMono, Gen};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RwWord(Vec<i32>);

pub fn rw_index_degree(k: i32) -> i64 {
    if k < 0 {
        1
    } else {
        1i64 << (k + 1)
    }
}

impl RwWord {
    pub fn new(mut idx: Vec<i32>) -> Self {
        assert!(idx.iter().all(|&k| k >= -1), "RW indices start at -1");
        idx.sort();
        RwWord(idx)
    }

    pub fn indices(&self) -> &[i32] {
        &self.0
    }

    /// The `n` with `(e₁α)^I ∈ H_*K_n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&k| rw_index_degree(k)).sum()
    }

    pub fn extend(&mut self, more: &[i32]) {
        self.0.extend_from_slice(more);
        self.0.sort();
    }

    /// As a circle monomial in `e₁` and `α_(k)`.
    pub fn to_mono(&self) -> CircleMono {
        CircleMono::new(
            self.0
                .iter()
                .map(|&k| if k < 0 { Gen::E1 } else { Gen::Alpha(k as u32) })
                .collect(),
        )
    }
}

impl fmt::Display for RwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mono())
    }
}

/// Nondecreasing sequences of length `n` from `lo..` with total degree at
/// most `deg_max`.
pub fn multisets(
    n: usize,
    lo: i32,
    deg_max: i64,
    degree: impl Fn(i32) -> i64 + Copy,
) -> Vec<Vec<i32>> {
    fn rec(
        n: usize,
        lo: i32,
        budget: i64,
        degree: &dyn Fn(i32) -> i64,
        cur: &mut Vec<i32>,
        out: &mut Vec<Vec<i32>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let left = (n - cur.len()) as i64;
        let mut k = lo;
        // degrees are nondecreasing in k, so the remaining slots cost at least left·degree(k)
        while left * degree(k) <= budget {
            cur.push(k);
            rec(n, k, budget - degree(k), degree, cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, lo, deg_max, &degree, &mut Vec::new(), &mut out);
    out
}

/// Generators `(e₁α)^I` of `H_*K_n` with `Σ i_k = n`, through degree
/// `deg_max`. For `n = 0` this is the class `[1]`.
pub fn gen_rw_words(n: u32, deg_max: i64) -> Vec<RwWord> {
    let mut v: Vec<RwWord> = multisets(n as usize, -1, deg_max, rw_index_degree)
        .into_iter()
        .map(RwWord::new)
        .collect();
    v.sort_by_key(|w| (w.degree(), w.clone()));
    v
}

/// [`gen_rw_words`] as circle monomials.
pub fn gen_rw_basis(n: u32, deg_max: i64) -> Vec<CircleMono> {
    gen_rw_words(n, deg_max)
        .iter()
        .map(RwWord::to_mono)
        .collect()
}

/// Degreewise dimensions `0..=deg_max` of the exterior algebra on generators
/// of the given degrees (degree-0 generators double the count).
pub fn exterior_poincare(degrees: impl IntoIterator<Item = i64>, deg_max: i64) -> Vec<u64> {
    let len = deg_max.max(0) as usize + 1;
    let mut series = vec![0u64; len];
    series[0] = 1;
    for d in degrees {
        if d < 0 || d > deg_max {
            continue;
        }
        let d = d as usize;
        for k in (d..len).rev() {
            series[k] += series[k - d];
        }
    }
    series
}
