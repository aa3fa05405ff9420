//! Bundled example proofs, mirrored by the `corpus/` files in the repository
//! root. Handy as integration fixtures and as documentation of the rule API.

use crate::logic::{Formula, Signature};
use crate::proofs::{OneSided, Side, TwoSided};
use crate::term::Term;

/// Constants `c`, `d`; functions `f/1`, `g/2`; predicates `P/1`, `Q/1`, `R/2`.
pub fn standard_signature() -> Signature {
    Signature::new(
        vec!["c".into(), "d".into()],
        vec![("f".into(), 1), ("g".into(), 2)],
        vec![("P".into(), 1), ("Q".into(), 1), ("R".into(), 2)],
    )
    .expect("valid signature")
}

fn p(t: Term) -> Formula {
    Formula::atom("P", vec![t])
}

fn c() -> Term {
    Term::cnst("c")
}

fn f(t: Term) -> Term {
    Term::FnApp("f".into(), vec![t])
}

/// The excluded-middle axiom as a proof: `⊢ ¬P(c), P(c)`.
pub fn lem() -> OneSided {
    OneSided::Lem(p(c()))
}

/// `⊢ ∃x (P(x) ∨ ¬P(x))` with the single witness `c`.
pub fn x1() -> OneSided {
    let matrix = Formula::or(p(Term::ivar("x")), Formula::not(p(Term::ivar("x"))));
    let or_left = OneSided::Or {
        side: Side::Left,
        other: Formula::not(p(c())),
        premise: Box::new(OneSided::Lem(p(c()))),
    };
    let swapped = OneSided::Perm { order: vec![1, 0], premise: Box::new(or_left) };
    let or_right =
        OneSided::Or { side: Side::Right, other: p(c()), premise: Box::new(swapped) };
    OneSided::Ex {
        witness: c(),
        var: "x".into(),
        matrix,
        premise: Box::new(OneSided::Contract { premise: Box::new(or_right) }),
    }
}

/// `⊢ ∃x (P(x) ∨ ¬P(f(x)))`, the drinker-style statement that needs the two
/// witnesses `c` and `f(c)`; no single witness suffices.
pub fn x2() -> OneSided {
    let matrix = Formula::or(p(Term::ivar("x")), Formula::not(p(f(Term::ivar("x")))));
    let start = OneSided::Perm {
        order: vec![1, 0],
        premise: Box::new(OneSided::Lem(p(f(c())))),
    };
    let or_right =
        OneSided::Or { side: Side::Right, other: p(c()), premise: Box::new(start) };
    let first = OneSided::Ex {
        witness: c(),
        var: "x".into(),
        matrix: matrix.clone(),
        premise: Box::new(or_right),
    };
    let swapped = OneSided::Perm { order: vec![1, 0], premise: Box::new(first) };
    let or_left = OneSided::Or {
        side: Side::Left,
        other: Formula::not(p(f(f(c())))),
        premise: Box::new(swapped),
    };
    let second = OneSided::Ex {
        witness: f(c()),
        var: "x".into(),
        matrix,
        premise: Box::new(or_left),
    };
    OneSided::Contract { premise: Box::new(second) }
}

/// `⊢ ∃x (P(x) ∨ ¬P(x))` again, but routed through a cut on `P(c)`, so the
/// realizer has to compute through the cut instead of eliminating it.
pub fn x3() -> OneSided {
    let matrix = Formula::or(p(Term::ivar("x")), Formula::not(p(Term::ivar("x"))));
    let right = OneSided::Perm {
        order: vec![1, 0],
        premise: Box::new(OneSided::Ex {
            witness: c(),
            var: "x".into(),
            matrix: matrix.clone(),
            premise: Box::new(OneSided::Or {
                side: Side::Left,
                other: Formula::not(p(c())),
                premise: Box::new(OneSided::Lem(p(c()))),
            }),
        }),
    };
    let cut = OneSided::Cut {
        formula: p(c()),
        left: Box::new(OneSided::Lem(p(c()))),
        right: Box::new(right),
    };
    let swapped = OneSided::Perm { order: vec![1, 0], premise: Box::new(cut) };
    let or_right =
        OneSided::Or { side: Side::Right, other: p(c()), premise: Box::new(swapped) };
    let second = OneSided::Ex {
        witness: c(),
        var: "x".into(),
        matrix,
        premise: Box::new(or_right),
    };
    OneSided::Contract { premise: Box::new(second) }
}

/// `P(c) ⊢ P(c)` in the two-sided calculus.
pub fn two_sided_id() -> TwoSided {
    TwoSided::Id(p(c()))
}

/// `P(c) ∨ P(f(c)) ⊢ ∃x P(x)`: an additive or-left joining two witnesses.
pub fn two_sided_demo() -> TwoSided {
    let by_witness = |t: Term| TwoSided::ExR {
        witness: crate::logic::FoTerm::from_term(&t).expect("first-order"),
        var: "x".into(),
        matrix: p(Term::ivar("x")),
        premise: Box::new(TwoSided::Id(p(t.clone()))),
    };
    TwoSided::OrL {
        left: Box::new(by_witness(c())),
        right: Box::new(by_witness(f(c()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Sequent;
    use crate::proofs::{check_one_sided, check_two_sided};

    #[test]
    fn all_one_sided_samples_check() {
        let goal = Formula::exists(
            "x",
            Formula::or(p(Term::ivar("x")), Formula::not(p(Term::ivar("x")))),
        );
        assert_eq!(
            check_one_sided(&lem()).unwrap(),
            Sequent(vec![Formula::not(p(c())), p(c())])
        );
        assert_eq!(check_one_sided(&x1()).unwrap(), Sequent(vec![goal.clone()]));
        assert_eq!(check_one_sided(&x3()).unwrap(), Sequent(vec![goal]));
        let goal2 = Formula::exists(
            "x",
            Formula::or(p(Term::ivar("x")), Formula::not(p(f(Term::ivar("x"))))),
        );
        assert_eq!(check_one_sided(&x2()).unwrap(), Sequent(vec![goal2]));
    }

    #[test]
    fn two_sided_samples_check() {
        let s = check_two_sided(&two_sided_id()).unwrap();
        assert_eq!(s.antecedent, vec![p(c())]);
        let s = check_two_sided(&two_sided_demo()).unwrap();
        assert_eq!(s.antecedent, vec![Formula::or(p(c()), p(f(c())))]);
        assert_eq!(
            s.succedent,
            vec![Formula::exists("x", p(Term::ivar("x")))]
        );
    }
}
