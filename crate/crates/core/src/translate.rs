//! Translation of two-sided proofs into the one-sided calculus.
//!
//! A two-sided sequent `Γ ⊢ Δ` maps to the one-sided `⊢ ¬Γ, Δ` with the
//! antecedent negated in source order. Each rule maps to its one-sided
//! counterpart: identity axioms to `lem`, right rules to the positive rules,
//! left rules to the negative ones, with `¬¬` standing in for the move of a
//! formula across the turnstile. Since the one-sided rules only work at the
//! last position, every clause wraps its payload in permutations; `∨`-left is
//! multiplicative on the one-sided side, so its additive contexts come back
//! duplicated and are merged by one contraction per context formula.
//!
//! The output is regularized, so it passes the one-sided checker even when
//! distinct `∃`-left nodes of the input shared an eigenvariable name.

use crate::logic::{Formula, Sequent, TwoSequent};
use crate::proofs::{check_two_sided, regularize, CheckError, OneSided, TwoSided};

/// The one-sided image of a two-sided sequent.
pub fn sequent_image(s: &TwoSequent) -> Sequent {
    let mut out: Vec<Formula> = s.antecedent.iter().cloned().map(Formula::not).collect();
    out.extend(s.succedent.iter().cloned());
    Sequent(out)
}

fn perm_or_skip(order: Vec<usize>, premise: OneSided) -> OneSided {
    if order.iter().enumerate().all(|(j, &i)| j == i) {
        premise
    } else {
        OneSided::Perm { order, premise: Box::new(premise) }
    }
}

/// Sends premise position `i` to the last conclusion position.
fn move_to_end(i: usize, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    order.push(i);
    order
}

/// Sends the last premise position to conclusion position `i`.
fn move_from_end(i: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|j| {
            if j < i {
                j
            } else if j == i {
                n - 1
            } else {
                j - 1
            }
        })
        .collect()
}

/// Applies a length-preserving one-sided rule to the formula at position `i`
/// by rotating it to the end, applying `rule` there, and rotating back.
fn at_position(
    i: usize,
    n: usize,
    premise: OneSided,
    rule: impl FnOnce(OneSided) -> OneSided,
) -> OneSided {
    let rotated = perm_or_skip(move_to_end(i, n), premise);
    let applied = rule(rotated);
    perm_or_skip(move_from_end(i, n), applied)
}

pub fn translate(p: &TwoSided) -> Result<OneSided, CheckError> {
    check_two_sided(p)?;
    let (q, _) = tr(p);
    Ok(regularize(&q))
}

fn tr(p: &TwoSided) -> (OneSided, TwoSequent) {
    match p {
        TwoSided::Id(a) => (
            OneSided::Lem(a.clone()),
            TwoSequent { antecedent: vec![a.clone()], succedent: vec![a.clone()] },
        ),
        TwoSided::NegR { premise } => {
            // ¬Γ, ¬A, Δ is already the image of both the premise Γ, A ⊢ Δ and
            // the conclusion Γ ⊢ ¬A, Δ; nothing to do.
            let (q, mut s) = tr(premise);
            let a = s.antecedent.pop().expect("checked");
            s.succedent.insert(0, Formula::not(a));
            (q, s)
        }
        TwoSided::NegL { premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len();
            let n = k + s.succedent.len();
            let q = at_position(k, n, q, |sub| OneSided::NegNeg { premise: Box::new(sub) });
            let a = s.succedent.remove(0);
            s.antecedent.push(Formula::not(a));
            (q, s)
        }
        TwoSided::OrR { side, other, premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len();
            let n = k + s.succedent.len();
            let q = at_position(
                k,
                n,
                q,
                |sub| OneSided::Or { side: *side, other: other.clone(), premise: Box::new(sub) },
            );
            let first = s.succedent.remove(0);
            let disjunction = match side {
                crate::proofs::Side::Left => Formula::or(first, other.clone()),
                crate::proofs::Side::Right => Formula::or(other.clone(), first),
            };
            s.succedent.insert(0, disjunction);
            (q, s)
        }
        TwoSided::OrL { left, right } => {
            let (ql, mut sl) = tr(left);
            let (qr, mut sr) = tr(right);
            let a = sl.antecedent.pop().expect("checked");
            let b = sr.antecedent.pop().expect("checked");
            let k = sl.antecedent.len();
            let m = sl.succedent.len();
            let n = k + m;
            // Rotate the negated principals to the end and join.
            let ql = perm_or_skip(move_to_end(k, n + 1), ql);
            let qr = perm_or_skip(move_to_end(k, n + 1), qr);
            let mut q = OneSided::NegOr { left: Box::new(ql), right: Box::new(qr) };
            // Layout: C_0..C_{n-1}, C_0..C_{n-1}, R with C = ¬Γ, Δ. Merge the
            // copies pairwise, parking merged formulas behind R.
            for j in 0..n {
                let rem = n - j;
                let len = 2 * rem + 1 + j;
                let mut order: Vec<usize> = Vec::with_capacity(len);
                order.extend(1..rem);
                order.extend(rem + 1..2 * rem);
                order.push(2 * rem);
                order.extend(2 * rem + 1..len);
                order.push(0);
                order.push(rem);
                q = OneSided::Contract { premise: Box::new(perm_or_skip(order, q)) };
            }
            // Layout: R, C_0..C_{n-1}; restore ¬Γ, R, Δ.
            let mut order: Vec<usize> = (1..=k).collect();
            order.push(0);
            order.extend(k + 1..=n);
            q = perm_or_skip(order, q);
            sl.antecedent.push(Formula::or(a, b));
            (q, sl)
        }
        TwoSided::ExR { witness, var, matrix, premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len();
            let n = k + s.succedent.len();
            let q = at_position(
                k,
                n,
                q,
                |sub| OneSided::Ex {
                    witness: witness.to_term(),
                    var: var.clone(),
                    matrix: matrix.clone(),
                    premise: Box::new(sub),
                },
            );
            s.succedent[0] = Formula::exists(var.clone(), matrix.clone());
            (q, s)
        }
        TwoSided::ExL { eigen, premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len() - 1;
            let n = k + 1 + s.succedent.len();
            let q = at_position(
                k,
                n,
                q,
                |sub| OneSided::NegEx { eigen: eigen.clone(), premise: Box::new(sub) },
            );
            // Mirror the checker's abstraction of the eigenvariable.
            let inst = s.antecedent.pop().expect("checked");
            let mut avoid = std::collections::HashSet::new();
            inst.all_names(&mut avoid);
            let x = crate::term::fresh_name("x", &avoid);
            let matrix = crate::logic::subst_formula(&inst, eigen, &crate::term::Term::ivar(x.clone()));
            s.antecedent.push(Formula::exists(x, matrix));
            (q, s)
        }
        TwoSided::ContractR { premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len();
            let m = s.succedent.len();
            let n = k + m;
            // Bring both copies (positions k, k+1) to the end, contract, put
            // the survivor back at k.
            let mut order: Vec<usize> = (0..k).collect();
            order.extend(k + 2..n);
            order.push(k);
            order.push(k + 1);
            let q = perm_or_skip(order, q);
            let q = OneSided::Contract { premise: Box::new(q) };
            let q = perm_or_skip(move_from_end(k, n - 1), q);
            s.succedent.remove(0);
            (q, s)
        }
        TwoSided::ContractL { premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len() - 2;
            let m = s.succedent.len();
            let n = k + 2 + m;
            let mut order: Vec<usize> = (0..k).collect();
            order.extend(k + 2..n);
            order.push(k);
            order.push(k + 1);
            let q = perm_or_skip(order, q);
            let q = OneSided::Contract { premise: Box::new(q) };
            let q = perm_or_skip(move_from_end(k, n - 1), q);
            s.antecedent.pop();
            (q, s)
        }
        TwoSided::WeakR { formula, premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len();
            let n = k + s.succedent.len();
            let q = OneSided::Weak { formula: formula.clone(), premise: Box::new(q) };
            let q = perm_or_skip(move_from_end(k, n + 1), q);
            s.succedent.insert(0, formula.clone());
            (q, s)
        }
        TwoSided::WeakL { formula, premise } => {
            let (q, mut s) = tr(premise);
            let k = s.antecedent.len();
            let n = k + s.succedent.len();
            let q = OneSided::Weak { formula: Formula::not(formula.clone()), premise: Box::new(q) };
            let q = perm_or_skip(move_from_end(k, n + 1), q);
            s.antecedent.push(formula.clone());
            (q, s)
        }
        TwoSided::Cut { formula, left, right } => {
            let (ql, mut sl) = tr(left);
            let (qr, mut sr) = tr(right);
            let k1 = sl.antecedent.len();
            let m1 = sl.succedent.len() - 1;
            let k2 = sr.antecedent.len() - 1;
            let m2 = sr.succedent.len();
            let ql = perm_or_skip(move_to_end(k1, k1 + 1 + m1), ql);
            let qr = perm_or_skip(move_to_end(k2, k2 + 1 + m2), qr);
            let q = OneSided::Cut {
                formula: formula.clone(),
                left: Box::new(ql),
                right: Box::new(qr),
            };
            // Layout: ¬Γ1, Δ1, ¬Γ2, Δ2; interleave to ¬Γ1, ¬Γ2, Δ1, Δ2.
            let mut order: Vec<usize> = (0..k1).collect();
            order.extend(k1 + m1..k1 + m1 + k2);
            order.extend(k1..k1 + m1);
            order.extend(k1 + m1 + k2..k1 + m1 + k2 + m2);
            let q = perm_or_skip(order, q);
            sl.succedent.remove(0);
            sr.antecedent.pop();
            (
                q,
                TwoSequent {
                    antecedent: sl.antecedent.into_iter().chain(sr.antecedent).collect(),
                    succedent: sl.succedent.into_iter().chain(sr.succedent).collect(),
                },
            )
        }
        TwoSided::Perm { ante, succ, premise } => {
            let (q, s) = tr(premise);
            let k = s.antecedent.len();
            let mut order: Vec<usize> = ante.clone();
            order.extend(succ.iter().map(|&i| i + k));
            let q = perm_or_skip(order, q);
            (
                q,
                TwoSequent {
                    antecedent: ante.iter().map(|&i| s.antecedent[i].clone()).collect(),
                    succedent: succ.iter().map(|&i| s.succedent[i].clone()).collect(),
                },
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Formula;
    use crate::proofs::{check_one_sided, TwoSided};
    use crate::term::Term;

    fn pc() -> Formula {
        Formula::atom("P", vec![Term::cnst("c")])
    }

    fn count_rule(p: &OneSided, name: &str) -> usize {
        let here = |n: &str| usize::from(n == name);
        match p {
            OneSided::Lem(_) => here("lem"),
            OneSided::Or { premise, .. } => here("or") + count_rule(premise, name),
            OneSided::NegOr { left, right } => {
                here("nor") + count_rule(left, name) + count_rule(right, name)
            }
            OneSided::Ex { premise, .. } => here("ex") + count_rule(premise, name),
            OneSided::NegEx { premise, .. } => here("nex") + count_rule(premise, name),
            OneSided::Contract { premise } => here("c") + count_rule(premise, name),
            OneSided::Weak { premise, .. } => here("w") + count_rule(premise, name),
            OneSided::NegNeg { premise } => here("nn") + count_rule(premise, name),
            OneSided::Cut { left, right, .. } => {
                here("cut") + count_rule(left, name) + count_rule(right, name)
            }
            OneSided::Perm { premise, .. } => here("perm") + count_rule(premise, name),
        }
    }

    fn assert_translates(p: &TwoSided) {
        let image = sequent_image(&check_two_sided(p).unwrap());
        let q = translate(p).unwrap();
        assert_eq!(check_one_sided(&q).unwrap(), image);
    }

    #[test]
    fn identity_becomes_lem() {
        let q = translate(&TwoSided::Id(pc())).unwrap();
        assert_eq!(q, OneSided::Lem(pc()));
    }

    #[test]
    fn neg_right_adds_nothing() {
        let p = TwoSided::NegR { premise: Box::new(TwoSided::Id(pc())) };
        let q = translate(&p).unwrap();
        assert_eq!(q, OneSided::Lem(pc()));
        assert_translates(&p);
    }

    #[test]
    fn neg_left_inserts_double_negation() {
        let p = TwoSided::NegL { premise: Box::new(TwoSided::Id(pc())) };
        let q = translate(&p).unwrap();
        assert_eq!(count_rule(&q, "nn"), 1);
        assert_translates(&p);
    }

    #[test]
    fn or_left_contracts_once_per_context_formula() {
        // P(c), ¬P(c) ⊢ and P(c), ¬P(c) ⊢ joined by or-left: context size 1.
        let mk = || TwoSided::NegL { premise: Box::new(TwoSided::Id(pc())) };
        let p = TwoSided::OrL { left: Box::new(mk()), right: Box::new(mk()) };
        let q = translate(&p).unwrap();
        assert_eq!(count_rule(&q, "c"), 1);
        assert_eq!(count_rule(&q, "nor"), 1);
        assert_translates(&p);
    }

    #[test]
    fn or_left_with_succedent_context() {
        // P(c) ⊢ ∃x P(x) twice, via different witnesses, joined by or-left.
        let by_witness = |t: Term| TwoSided::ExR {
            witness: crate::logic::FoTerm::from_term(&t).unwrap(),
            var: "x".into(),
            matrix: Formula::atom("P", vec![Term::ivar("x")]),
            premise: Box::new(TwoSided::Id(Formula::atom("P", vec![t.clone()]))),
        };
        let fc = Term::FnApp("f".into(), vec![Term::cnst("c")]);
        let p = TwoSided::OrL {
            left: Box::new(by_witness(Term::cnst("c"))),
            right: Box::new(by_witness(fc)),
        };
        let q = translate(&p).unwrap();
        assert_eq!(count_rule(&q, "c"), 1);
        assert_translates(&p);
    }

    #[test]
    fn structural_rules_translate() {
        let base = TwoSided::Id(pc());
        let p = TwoSided::WeakR {
            formula: Formula::not(pc()),
            premise: Box::new(TwoSided::WeakL { formula: pc(), premise: Box::new(base) }),
        };
        assert_translates(&p);
        let p = TwoSided::ContractL {
            premise: Box::new(TwoSided::WeakL { formula: pc(), premise: Box::new(TwoSided::WeakL { formula: pc(), premise: Box::new(TwoSided::Id(pc())) }) }),
        };
        assert_translates(&p);
        let p = TwoSided::ContractR {
            premise: Box::new(TwoSided::WeakR { formula: pc(), premise: Box::new(TwoSided::Id(pc())) }),
        };
        assert_translates(&p);
    }

    #[test]
    fn cut_translates() {
        let p = TwoSided::Cut {
            formula: pc(),
            left: Box::new(TwoSided::Id(pc())),
            right: Box::new(TwoSided::Id(pc())),
        };
        assert_translates(&p);
    }

    #[test]
    fn perm_translates() {
        let p = TwoSided::Perm {
            ante: vec![1, 0],
            succ: vec![0],
            premise: Box::new(TwoSided::WeakL {
                formula: Formula::not(pc()),
                premise: Box::new(TwoSided::Id(pc())),
            }),
        };
        assert_translates(&p);
    }

    #[test]
    fn quantifier_rules_translate() {
        let matrix = Formula::atom("P", vec![Term::ivar("x")]);
        let exr = TwoSided::ExR {
            witness: crate::logic::FoTerm::Const("c".into()),
            var: "x".into(),
            matrix: matrix.clone(),
            premise: Box::new(TwoSided::Id(pc())),
        };
        assert_translates(&exr);
        let exl = TwoSided::ExL {
            eigen: "a".into(),
            premise: Box::new(TwoSided::Id(Formula::atom("P", vec![Term::ivar("a")]))),
        };
        // Eigenvariable occurs in the succedent, so this must fail to check.
        assert!(translate(&exl).is_err());
        // P(a) ⊢ ∃x P(x), then ex-left: a is gone from the conclusion.
        let exl_ok = TwoSided::ExL {
            eigen: "a".into(),
            premise: Box::new(TwoSided::ExR {
                witness: crate::logic::FoTerm::Var("a".into()),
                var: "x".into(),
                matrix: matrix.clone(),
                premise: Box::new(TwoSided::Id(Formula::atom("P", vec![Term::ivar("a")]))),
            }),
        };
        assert_translates(&exl_ok);
    }

    #[test]
    fn translated_eigenvariables_are_regular() {
        // Two ex-left nodes sharing an eigenvariable name translate to a
        // proof that still checks, thanks to regularization.
        let matrix = Formula::atom("P", vec![Term::ivar("x")]);
        let branch = || TwoSided::ExL {
            eigen: "a".into(),
            premise: Box::new(TwoSided::ExR {
                witness: crate::logic::FoTerm::Var("a".into()),
                var: "x".into(),
                matrix: matrix.clone(),
                premise: Box::new(TwoSided::Id(Formula::atom("P", vec![Term::ivar("a")]))),
            }),
        };
        let p = TwoSided::OrL { left: Box::new(branch()), right: Box::new(branch()) };
        assert_translates(&p);
    }
}
