//! Generator families for `H⋆K_{nσ}` and `H⋆K_{σ+i}`.

use serde::Serialize;

use super::rw::multisets;
use crate::hopf::{CircleMono, Gen};

/// Every `(e_σᾱ)^J` with `‖J‖ = n` and `ᾱ` indices at most `max_index`.
pub fn signed_generators(n: u32, max_index: u32) -> Vec<CircleMono> {
    if n == 0 {
        return vec![CircleMono::unit()];
    }
    // code -1 for e_σ, k for ᾱ_(k)
    let deg = |k: i32| if k < 0 { 1 } else { 1i64 << (k + 1) };
    let cap = n as i64 * deg(max_index as i32);
    multisets(n as usize, -1, cap, deg)
        .into_iter()
        .filter(|m| m.iter().all(|&k| k <= max_index as i32))
        .map(|m| CircleMono::new(m.into_iter().map(signed_letter).collect()))
        .collect()
}

fn signed_letter(k: i32) -> Gen {
    if k < 0 {
        Gen::ESigma
    } else {
        Gen::AlphaBar(k as u32)
    }
}

fn sort_by_degree(v: &mut [CircleMono]) {
    v.sort_by_key(|c| (c.bidegree().p, c.bidegree().q, c.clone()));
}

/// Generators `(e_σᾱ)^J`, `‖J‖ = n`, of underlying degree at most `p_max`.
pub fn gen_signed_basis(n: u32, p_max: i64) -> Vec<CircleMono> {
    let max_index = (0..62)
        .take_while(|&k| (1i64 << (k + 1)) <= p_max)
        .last()
        .unwrap_or(0);
    let mut v: Vec<CircleMono> = signed_generators(n, max_index)
        .into_iter()
        .filter(|c| c.bidegree().p <= p_max)
        .collect();
    sort_by_degree(&mut v);
    v
}

/// The top factor of a `σ+i` generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Top {
    AlphaBar(u32),
    BetaBar(u32),
}

/// `(e₁αβ)^{I,J} ∘ ᾱ_(m)` or `(e₁αβ)^{W,Y} ∘ β̄_(t)` in index form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SigmaPlusWord {
    /// `j_{-1}`, the exponent of `e₁`.
    pub e1: u32,
    /// The `α` indices `I` (or `W`).
    pub alphas: Vec<u32>,
    /// `β` exponents `j_0, j_1, …` (or `y_0, …`).
    pub betas: Vec<u32>,
    pub top: Top,
}

impl SigmaPlusWord {
    /// `j_{-1} + |I| + 2‖J‖`; `‖J‖` here counts only the `β` exponents.
    pub fn weight(&self) -> u32 {
        self.e1 + self.alphas.len() as u32 + 2 * self.betas.iter().sum::<u32>()
    }

    /// Index of the last nonzero `β` exponent.
    pub fn ell(&self) -> Option<u32> {
        self.betas.iter().rposition(|&j| j > 0).map(|k| k as u32)
    }

    /// Whether this word is a generator of `H⋆K_{σ+i}`.
    pub fn is_valid(&self, i: u32) -> bool {
        let strictly_increasing = self.alphas.windows(2).all(|w| w[0] < w[1]);
        if self.e1 > 1 || !strictly_increasing {
            return false;
        }
        let (top, need) = match self.top {
            Top::AlphaBar(m) => (m, i),
            Top::BetaBar(t) => (t, i.wrapping_sub(1)),
        };
        if i == 0 && matches!(self.top, Top::BetaBar(_)) {
            return false;
        }
        self.weight() == need
            && self.alphas.last().is_none_or(|&a| top > a)
            && self.ell().is_none_or(|l| top >= l)
    }

    pub fn to_mono(&self) -> CircleMono {
        let mut letters = vec![Gen::E1; self.e1 as usize];
        letters.extend(self.alphas.iter().map(|&k| Gen::Alpha(k)));
        for (k, &j) in self.betas.iter().enumerate() {
            letters.extend(std::iter::repeat_n(Gen::Beta(k as u32), j as usize));
        }
        letters.push(match self.top {
            Top::AlphaBar(m) => Gen::AlphaBar(m),
            Top::BetaBar(t) => Gen::BetaBar(t),
        });
        CircleMono::new(letters)
    }
}

fn underlying(lett: i64, k: u32) -> i64 {
    lett * (1i64 << (k + 1))
}

/// All prefixes `(e₁αβ)` of the given weight and underlying degree at most `p_max`.
fn prefixes(weight: u32, p_max: i64) -> Vec<(u32, Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for e1 in 0..=weight.min(1) {
        let rest = weight - e1;
        let budget = p_max - e1 as i64;
        for beta_total in 0..=rest / 2 {
            let n_alpha = rest - 2 * beta_total;
            // β multiset as nondecreasing indices
            for betas in multisets(beta_total as usize, 0, budget, |k| underlying(1, k as u32)) {
                let bdeg: i64 = betas.iter().map(|&k| underlying(1, k as u32)).sum();
                for alphas in strict_sets(n_alpha as usize, budget - bdeg) {
                    let mut counts = vec![];
                    for &b in &betas {
                        let b = b as usize;
                        if counts.len() <= b {
                            counts.resize(b + 1, 0);
                        }
                        counts[b] += 1;
                    }
                    out.push((e1, alphas, counts));
                }
            }
        }
    }
    out
}

/// Strictly increasing `α` index sets of size `n` with total degree at most `budget`.
fn strict_sets(n: usize, budget: i64) -> Vec<Vec<u32>> {
    fn rec(n: usize, lo: u32, budget: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let mut k = lo;
        while underlying(1, k) <= budget {
            cur.push(k);
            rec(n, k + 1, budget - underlying(1, k), cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    if budget >= 0 {
        rec(n, 0, budget, &mut Vec::new(), &mut out);
    }
    out
}

/// Generator words of `H⋆K_{σ+i}` with underlying degree at most `p_max`.
pub fn sigma_plus_words(i: u32, p_max: i64) -> Vec<SigmaPlusWord> {
    let mut out = Vec::new();
    let families: [(u32, fn(u32) -> Top); 2] =
        [(i, Top::AlphaBar), (i.wrapping_sub(1), Top::BetaBar)];
    for (weight, top) in families {
        if weight > i {
            continue;
        }
        for (e1, alphas, betas) in prefixes(weight, p_max) {
            let pre = e1 as i64
                + alphas.iter().map(|&k| underlying(1, k)).sum::<i64>()
                + betas
                    .iter()
                    .enumerate()
                    .map(|(k, &j)| underlying(j as i64, k as u32))
                    .sum::<i64>();
            let mut m = 0;
            while pre + underlying(1, m) <= p_max {
                let w = SigmaPlusWord {
                    e1,
                    alphas: alphas.clone(),
                    betas: betas.clone(),
                    top: top(m),
                };
                if w.is_valid(i) {
                    out.push(w);
                }
                m += 1;
            }
        }
    }
    out
}

/// Generators of `H⋆K_{σ+i}` of underlying degree at most `p_max`; for
/// `i = 0` these are the generators of `H⋆K_σ`.
pub fn gen_sigma_plus_basis(i: u32, p_max: i64) -> Vec<CircleMono> {
    if i == 0 {
        return gen_signed_basis(1, p_max);
    }
    let mut v: Vec<CircleMono> = sigma_plus_words(i, p_max)
        .iter()
        .map(SigmaPlusWord::to_mono)
        .collect();
    sort_by_degree(&mut v);
    v
}
