use std::collections::BTreeMap;

use crate::hopf::{HopfPresentation, StarMono};

/// A connected augmented algebra over F2 with a monomial basis: the product
/// of two basis elements is a basis element or zero. Index 0 is the unit.
#[derive(Clone, Debug)]
pub struct F2Algebra {
    pub name: String,
    labels: Vec<String>,
    degrees: Vec<i64>,
    products: Vec<Vec<Option<usize>>>,
}

impl F2Algebra {
    /// Builds the algebra from monomials (unit first) and their product.
    pub fn from_monomials<M: Clone + Ord>(
        name: impl Into<String>,
        monos: Vec<(M, String, i64)>,
        mul: impl Fn(&M, &M) -> Option<M>,
    ) -> Self {
        let index: BTreeMap<M, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, (m, _, _))| (m.clone(), i))
            .collect();
        let products = monos
            .iter()
            .map(|(a, _, _)| {
                monos
                    .iter()
                    .map(|(b, _, _)| mul(a, b).and_then(|c| index.get(&c).copied()))
                    .collect()
            })
            .collect();
        let (labels, degrees) = monos.into_iter().map(|(_, l, d)| (l, d)).unzip();
        F2Algebra {
            name: name.into(),
            labels,
            degrees,
            products,
        }
    }

    /// `E[x_1, …, x_n]` with `|x_i| = degrees[i]`.
    pub fn exterior(degrees: &[i64]) -> Self {
        let n = degrees.len();
        let label = |mask: u32| -> String {
            if mask == 0 {
                return "1".into();
            }
            let names: Vec<String> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| {
                    if n == 1 {
                        "x".into()
                    } else {
                        format!("x{}", i + 1)
                    }
                })
                .collect();
            names.join("")
        };
        let monos = (0..1u32 << n)
            .map(|mask| {
                let d = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| degrees[i])
                    .sum();
                (mask, label(mask), d)
            })
            .collect();
        F2Algebra::from_monomials(format!("E{degrees:?}"), monos, |a, b| {
            (a & b == 0).then_some(a | b)
        })
    }

    /// `F2[x]/(x^height)` with `|x| = degree`.
    pub fn truncated_polynomial(degree: i64, height: u32) -> Self {
        let monos = (0..height)
            .map(|k| {
                let l = match k {
                    0 => "1".into(),
                    1 => "x".into(),
                    _ => format!("x^{k}"),
                };
                (k, l, k as i64 * degree)
            })
            .collect();
        F2Algebra::from_monomials(format!("P({degree})/{height}"), monos, |a, b| {
            (a + b < height).then_some(a + b)
        })
    }

    /// The ground field.
    pub fn trivial() -> Self {
        F2Algebra::from_monomials("F2", vec![((), "1".into(), 0)], |_, _| Some(()))
    }

    /// Underlying algebra of a presentation, graded by topological degree.
    pub fn from_presentation(a: &HopfPresentation, deg_max: i64) -> Self {
        let monos = a
            .basis_up_to(deg_max)
            .into_iter()
            .map(|m: StarMono| {
                let l = m.to_string();
                let d = m.bidegree().p;
                (m, l, d)
            })
            .collect();
        F2Algebra::from_monomials(a.name.clone(), monos, |x, y| x.mul(y))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> Option<usize> {
        self.products[i][j]
    }

    /// Nonunit basis elements that are not products of two nonunits.
    pub fn indecomposables(&self) -> Vec<usize> {
        let n = self.dim();
        let mut hit = vec![false; n];
        for i in 1..n {
            for j in 1..n {
                if let Some(k) = self.products[i][j] {
                    hit[k] = true;
                }
            }
        }
        (1..n).filter(|&i| !hit[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::make_presentation;

    #[test]
    fn exterior_products() {
        let e = F2Algebra::exterior(&[1, 2]);
        assert_eq!(e.dim(), 4);
        assert_eq!(e.mul(1, 1), None);
        assert_eq!(e.label(e.mul(1, 2).unwrap()), "x1x2");
        assert_eq!(e.indecomposables(), vec![1, 2]);
    }

    #[test]
    fn truncated() {
        let p = F2Algebra::truncated_polynomial(2, 3);
        assert_eq!(p.mul(1, 1), Some(2));
        assert_eq!(p.mul(1, 2), None);
        assert_eq!(p.degree(2), 4);
        assert_eq!(p.indecomposables(), vec![1]);
    }

    #[test]
    fn group_algebra() {
        let a = F2Algebra::from_presentation(&make_presentation("F2", 2).unwrap(), 4);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.mul(1, 1), None);
    }
}
