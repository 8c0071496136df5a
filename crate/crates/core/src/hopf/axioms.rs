use std::fmt;

use serde::Serialize;

use super::calculus::distribute;
use super::{Element, HopfPresentation, StarMono, Tensor, Tensor3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomCheck {
    Degree,
    Counit,
    Coassociativity,
    StarSquare,
    ClosedForm,
    Distributive,
}

impl fmt::Display for AxiomCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomCheck::Degree => "degree",
            AxiomCheck::Counit => "counit",
            AxiomCheck::Coassociativity => "coassociativity",
            AxiomCheck::StarSquare => "star-square",
            AxiomCheck::ClosedForm => "closed-form",
            AxiomCheck::Distributive => "distributive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub subject: String,
    pub check: AxiomCheck,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub presentation: String,
    pub checked: usize,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn fail(
    subject: &StarMono,
    check: AxiomCheck,
    lhs: impl fmt::Display,
    rhs: impl fmt::Display,
) -> AxiomFailure {
    AxiomFailure {
        subject: subject.to_string(),
        check,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn check_degree(x: &StarMono, psi: &Tensor) -> Result<(), AxiomFailure> {
    let d = x.bidegree();
    for (l, r, c) in psi.terms() {
        let ok = c
            .terms()
            .all(|b| b.bidegree() + l.bidegree() + r.bidegree() == d);
        if !ok {
            return Err(fail(x, AxiomCheck::Degree, format!("{c}·{l}⊗{r}"), d));
        }
    }
    Ok(())
}

fn check_counit(x: &StarMono, psi: &Tensor) -> Result<(), AxiomFailure> {
    let want = Element::from(x.clone());
    for side in [psi.counit_left(), psi.counit_right()] {
        if side != want {
            return Err(fail(x, AxiomCheck::Counit, side, &want));
        }
    }
    Ok(())
}

fn check_coassoc(a: &HopfPresentation, x: &StarMono, psi: &Tensor) -> Result<(), AxiomFailure> {
    let mut left = Tensor3::default();
    let mut right = Tensor3::default();
    for (l, r, c) in psi.terms() {
        for (ll, lr, d) in a.coproduct(l).terms() {
            left.add_term(ll.clone(), lr.clone(), r.clone(), &c.mul(d));
        }
        for (rl, rr, d) in a.coproduct(r).terms() {
            right.add_term(l.clone(), rl.clone(), rr.clone(), &c.mul(d));
        }
    }
    if left != right {
        return Err(fail(x, AxiomCheck::Coassociativity, left, right));
    }
    Ok(())
}

/// Checks the presentation's Hopf algebra axioms on everything of
/// underlying degree at most `p_max`, lowest degree first, and reports the
/// first failure.
pub fn verify_hopf_axioms(a: &HopfPresentation, p_max: i64) -> AxiomReport {
    let mut checked = 0;
    let failure = run(a, p_max, &mut checked).err();
    AxiomReport {
        presentation: a.name.clone(),
        checked,
        failure,
    }
}

fn run(a: &HopfPresentation, p_max: i64, checked: &mut usize) -> Result<(), AxiomFailure> {
    // generators and closed forms, in degree order
    let mut subjects: Vec<(StarMono, Option<&Tensor>)> = a
        .generators
        .iter()
        .map(|g| (StarMono::single(g.clone()), None))
        .chain(a.closed_forms.iter().map(|(m, t)| (m.clone(), Some(t))))
        .filter(|(m, _)| m.bidegree().p <= p_max)
        .collect();
    subjects
        .sort_by_key(|(m, closed)| (m.bidegree().p, m.bidegree().q, m.clone(), closed.is_some()));
    for (x, closed) in subjects {
        let psi = a.coproduct(&x);
        *checked += 1;
        if let Some(t) = closed {
            if &psi != t {
                return Err(fail(&x, AxiomCheck::ClosedForm, psi, t));
            }
            continue;
        }
        check_degree(&x, &psi)?;
        check_counit(&x, &psi)?;
        check_coassoc(a, &x, &psi)?;
        let sq = psi.multiply_out();
        if !sq.is_zero() {
            return Err(fail(&x, AxiomCheck::StarSquare, sq, 0));
        }
    }

    let basis = a.basis_up_to(p_max);
    for m in &basis {
        let psi = a.coproduct(m);
        *checked += 1;
        check_degree(m, &psi)?;
        check_counit(m, &psi)?;
        check_coassoc(a, m, &psi)?;
    }

    // g∘(m*m) = 0 through the distributive law
    for g in &a.generators {
        let gs = StarMono::single(g.clone());
        let psi = a.coproduct(&gs);
        for m in basis.iter().filter(|m| !m.is_unit()) {
            if g.bidegree().p + 2 * m.bidegree().p > p_max {
                continue;
            }
            *checked += 1;
            let e = distribute(&psi, m, m);
            if !e.is_zero() {
                return Err(fail(
                    &gs,
                    AxiomCheck::Distributive,
                    format!("{g}∘({m}*{m}) = {e}"),
                    0,
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{make_presentation, Gen};

    #[test]
    fn built_ins_pass() {
        for name in [
            "K_sigma",
            "K_Z_rho",
            "classical_K1",
            "classical_CP",
            "S1",
            "S_sigma",
            "F2",
            "K_nsigma(2)",
            "K_nsigma(3)",
            "fixed_points(sigma)",
            "fixed_points(2sigma)",
            "fixed_points(sigma+1)",
        ] {
            let p = make_presentation(name, 3).unwrap();
            let r = verify_hopf_axioms(&p, 12);
            assert!(r.passed(), "{name}: {:?}", r.failure);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn corrupted_alpha_bar_fails() {
        let mut p = make_presentation("K_sigma", 2).unwrap();
        let a1 = crate::hopf::CircleMono::letter(Gen::AlphaBar(0));
        let e = StarMono::from(Gen::ESigma);
        assert!(p.coproduct.get_mut(&a1).unwrap().remove_term(&e, &e));
        let r = verify_hopf_axioms(&p, 8);
        let f = r.failure.expect("must fail");
        assert_eq!(f.subject, "ᾱ_(0)");
        assert_eq!(f.check, AxiomCheck::ClosedForm);
    }
}
