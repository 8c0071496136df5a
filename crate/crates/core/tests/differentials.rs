use std::time::Instant;

use equicones::barss::*;
use equicones::coeffs::{BiDegree, Region};
use equicones::hopf::{make_presentation, HopfPresentation, StarMono};
use equicones::twistss::{twisted_d1, twisted_e1};
use proptest::prelude::*;

const BUILT_IN: &[(&str, u32)] = &[
    ("F2", 0),
    ("S1", 0),
    ("S_sigma", 0),
    ("K_sigma", 3),
    ("K_Z_rho", 3),
    ("classical_K1", 3),
    ("classical_CP", 3),
    ("K_nsigma(2)", 3),
];

#[test]
fn bar_d1_squares_to_zero() {
    let r = Region::new(0, 12, 0, 12);
    for &(name, mi) in BUILT_IN {
        let now = Instant::now();
        let a = make_presentation(name, mi).unwrap();
        let page = bar_d1(&bar_e1_equivariant(&a, 8, &r));
        assert!(d_squared_failures(&page, &r).is_empty(), "{name}");
        println!("{name}: {:?}", now.elapsed());
    }
}

#[test]
fn twisted_d1_squares_to_zero() {
    let r = Region::new(0, 12, 0, 12);
    for &(name, mi) in BUILT_IN {
        let a = make_presentation(name, mi).unwrap();
        let page = twisted_d1(&twisted_e1(&a, 6, &r)).unwrap();
        assert!(d_squared_failures(&page, &r).is_empty(), "{name}");
    }
}

#[test]
fn e2_is_a_subquotient() {
    let r = Region::new(0, 10, 0, 10);
    let a = make_presentation("K_sigma", 3).unwrap();
    let page = bar_d1(&bar_e1_equivariant(&a, 7, &r));
    let e2 = bar_e2(&page, &r);
    for row in &e2.rows {
        assert!(row.dim <= page.dim_at(row.t, BiDegree::new(row.p, row.q)));
    }
    assert!(e2.rows.iter().any(|row| row.dim < page.dim_at(row.t, BiDegree::new(row.p, row.q))));
}

fn k_sigma() -> HopfPresentation {
    make_presentation("K_sigma", 2).unwrap()
}

fn small_basis() -> Vec<StarMono> {
    k_sigma()
        .basis_up_to(6)
        .into_iter()
        .filter(|m| !m.is_unit())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]
    #[test]
    fn circle_commutes_with_d1(idx in proptest::collection::vec(any::<prop::sample::Index>(), 1..=3), k in any::<prop::sample::Index>()) {
        let basis = small_basis();
        let w = BarWord::new(idx.iter().map(|i| basis[i.index(basis.len())].clone()).collect()).unwrap();
        let k = &basis[k.index(basis.len())];
        let lhs = circle_on_sum(&WordSum::word(w.clone()), k).d1();
        let rhs = circle_on_sum(&WordSum::word(w).d1(), k);
        prop_assert_eq!(lhs, rhs);
    }
}
