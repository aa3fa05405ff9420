//! Herbrand disjunction extraction: from a proof of a single closed
//! existential goal `∃x A` with quantifier-free `A` to a verified disjunction
//! `A[t₁/x] ∨ … ∨ A[tₙ/x]` over closed first-order witness terms.
//!
//! The pipeline interprets the proof at its only position against a canonical
//! counter-evidence term, normalizes the resulting realizer, reads the
//! witnesses off the normal form's case/pair structure, and checks the
//! assembled disjunction with the tautology verifier. No part of it inspects
//! the proof's cuts: extraction works uniformly whether or not the proof is
//! cut-free.

use thiserror::Error;

use crate::interp::{canonical_evidence, evidence_type, transform, InterpError};
use crate::logic::{subst_formula, FoTerm, Formula, Signature};
use crate::proofs::{check_one_sided, OneSided};
use crate::reduce::{normalize_with_fuel, StepBudgetExceeded};
use crate::term::{Ident, Prop, Term};
use crate::verify::{tautology, VerifyError};

#[derive(Debug, Error)]
pub enum HerbrandError {
    #[error("end sequent is not a single closed existential with a quantifier-free matrix")]
    NotHerbrandGoal,
    /// The normal form stepped outside the case/pair shapes a closed normal
    /// realizer of existential evidence type can take. Reaching this is a
    /// kernel bug, not an input error.
    #[error("normal form has no witness shape at a {0}")]
    MalformedNormalForm(&'static str),
    #[error(transparent)]
    Budget(#[from] StepBudgetExceeded),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// A verified Herbrand disjunction.
#[derive(Debug, Clone)]
pub struct HerbrandResult {
    /// Closed first-order witnesses, deduplicated, in first-seen order.
    pub witnesses: Vec<FoTerm>,
    /// The disjunction of matrix instances, one per witness.
    pub disjunction: Prop,
    /// The normalized realizer the witnesses were read off.
    pub realizer: Term,
    /// Whether the disjunction is a tautology. Soundness of the
    /// interpretation predicts `true` for every accepted proof.
    pub verified: bool,
    /// Reduction steps spent normalizing the realizer.
    pub steps: u64,
}

/// Reads the witness list off a closed normal realizer of existential
/// evidence type `ι × ⟨¬A⟩`: the term is a case tree whose leaves are pairs,
/// each pair's first component is itself a case tree over first-order terms,
/// and the witnesses are those terms in left-to-right branch order.
pub fn read_off(u: &Term) -> Result<Vec<FoTerm>, HerbrandError> {
    match u {
        Term::Case(_, yes, no) => {
            let mut out = read_off(yes)?;
            out.extend(read_off(no)?);
            Ok(out)
        }
        Term::Pair(t, _) => read_off_witness(t),
        other => Err(HerbrandError::MalformedNormalForm(shape_of(other))),
    }
}

fn read_off_witness(t: &Term) -> Result<Vec<FoTerm>, HerbrandError> {
    if let Some(fo) = FoTerm::from_term(t) {
        return Ok(vec![fo]);
    }
    match t {
        Term::Case(_, yes, no) => {
            let mut out = read_off_witness(yes)?;
            out.extend(read_off_witness(no)?);
            Ok(out)
        }
        other => Err(HerbrandError::MalformedNormalForm(shape_of(other))),
    }
}

fn shape_of(t: &Term) -> &'static str {
    match t {
        Term::Epsilon => "unit constant",
        Term::Const(_) => "constant",
        Term::Var(..) => "variable",
        Term::FnApp(..) => "function application",
        Term::Pair(..) => "pair",
        Term::Proj(..) => "projection",
        Term::Abs(..) => "lambda",
        Term::App(..) => "application",
        Term::Case(..) => "case",
    }
}

/// Extracts and verifies a Herbrand disjunction using the canonical
/// counter-evidence term for the goal.
pub fn extract(sig: &Signature, p: &OneSided, fuel: u64) -> Result<HerbrandResult, HerbrandError> {
    let (goal, _, matrix) = herbrand_goal(p)?;
    let counter = Term::abs(
        "z",
        evidence_type(&goal),
        canonical_evidence(sig, &Formula::not(matrix)),
    );
    extract_with_counter(sig, p, &counter, fuel)
}

/// The same pipeline against an explicit counter-evidence term. Any closed
/// term of the goal's counter-evidence type works; the witness list may
/// differ between choices but the disjunction stays verified.
pub fn extract_with_counter(
    sig: &Signature,
    p: &OneSided,
    counter: &Term,
    fuel: u64,
) -> Result<HerbrandResult, HerbrandError> {
    let (_, x, matrix) = herbrand_goal(p)?;
    let raw = transform(sig, p, 1, std::slice::from_ref(counter))?;
    let (realizer, steps) = normalize_with_fuel(&raw, fuel)?;
    let mut witnesses: Vec<FoTerm> = Vec::new();
    for w in read_off(&realizer)? {
        if !witnesses.contains(&w) {
            witnesses.push(w);
        }
    }
    let disjuncts =
        witnesses.iter().map(|t| qf_prop(&subst_formula(&matrix, &x, &t.to_term()))).collect();
    let disjunction = Prop::ors(disjuncts);
    let verified = tautology(&disjunction, fuel)?;
    Ok(HerbrandResult { witnesses, disjunction, realizer, verified, steps })
}

fn herbrand_goal(p: &OneSided) -> Result<(Formula, Ident, Formula), HerbrandError> {
    let sequent = check_one_sided(p).map_err(InterpError::from)?;
    if sequent.0.len() != 1 {
        return Err(HerbrandError::NotHerbrandGoal);
    }
    let goal = &sequent.0[0];
    match goal {
        Formula::Exists(x, a) if a.is_quantifier_free() && goal.is_closed() => {
            Ok((goal.clone(), x.clone(), (**a).clone()))
        }
        _ => Err(HerbrandError::NotHerbrandGoal),
    }
}

/// A quantifier-free formula read as a proposition.
fn qf_prop(a: &Formula) -> Prop {
    match a {
        Formula::Atom(p, args) => Prop::Atom(p.clone(), args.clone()),
        Formula::Or(l, r) => Prop::or(qf_prop(l), qf_prop(r)),
        Formula::Not(b) => Prop::not(qf_prop(b)),
        Formula::Exists(..) => unreachable!("herbrand goals have quantifier-free matrices"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::{OneSided, Side};
    use crate::reduce::{is_normal, DEFAULT_FUEL};
    use crate::samples;
    use crate::term::Type;

    fn c() -> Term {
        Term::cnst("c")
    }

    fn f(t: Term) -> Term {
        Term::FnApp("f".into(), vec![t])
    }

    fn p_atom(t: Term) -> Prop {
        Prop::atom("P", vec![t])
    }

    fn fo(t: &Term) -> FoTerm {
        FoTerm::from_term(t).unwrap()
    }

    #[test]
    fn reading_a_plain_pair_yields_its_first_component() {
        let u = Term::pair(c(), Term::abs("z", Type::Null, Term::Epsilon));
        assert_eq!(read_off(&u).unwrap(), vec![fo(&c())]);
    }

    #[test]
    fn case_trees_concatenate_their_branches() {
        let w = Term::abs("z", Type::Null, Term::Epsilon);
        let u = Term::case(
            p_atom(c()),
            Term::pair(c(), w.clone()),
            Term::pair(f(c()), w.clone()),
        );
        assert_eq!(read_off(&u).unwrap(), vec![fo(&c()), fo(&f(c()))]);

        let split_first = Term::pair(Term::case(p_atom(c()), c(), f(c())), w);
        assert_eq!(read_off(&split_first).unwrap(), vec![fo(&c()), fo(&f(c()))]);
    }

    #[test]
    fn foreign_shapes_are_reported_as_malformed() {
        let lambda = Term::abs("z", Type::Iota, Term::ivar("z"));
        assert!(matches!(
            read_off(&lambda),
            Err(HerbrandError::MalformedNormalForm("lambda"))
        ));
        assert!(matches!(
            read_off(&Term::pair(Term::Epsilon, c())),
            Err(HerbrandError::MalformedNormalForm("unit constant"))
        ));
    }

    #[test]
    fn the_direct_existence_proof_yields_its_witness() {
        let sig = samples::standard_signature();
        let result = extract(&sig, &samples::x1(), DEFAULT_FUEL).unwrap();
        assert_eq!(result.witnesses, vec![fo(&c())]);
        assert_eq!(result.disjunction, Prop::or(p_atom(c()), Prop::not(p_atom(c()))));
        assert!(result.verified);
        assert!(is_normal(&result.realizer));
        assert!(result.realizer.is_closed());
        assert!(result.steps > 0);
    }

    #[test]
    fn the_drinker_style_proof_needs_two_witnesses() {
        let sig = samples::standard_signature();
        let result = extract(&sig, &samples::x2(), DEFAULT_FUEL).unwrap();
        assert!(result.verified);
        assert!(result.witnesses.contains(&fo(&c())));
        assert!(result.witnesses.contains(&fo(&f(c()))));
        // No single candidate suffices: every one-witness disjunction over
        // the relevant atoms is falsifiable.
        let matrix =
            Formula::or(Formula::atom("P", vec![Term::ivar("x")]), Formula::not(Formula::atom("P", vec![f(Term::ivar("x"))])));
        for candidate in [c(), f(c()), f(f(c()))] {
            let one = qf_prop(&subst_formula(&matrix, &"x".to_string(), &candidate));
            assert!(!tautology(&one, DEFAULT_FUEL).unwrap());
        }
    }

    #[test]
    fn extraction_works_through_a_cut() {
        let sig = samples::standard_signature();
        let result = extract(&sig, &samples::x3(), DEFAULT_FUEL).unwrap();
        assert!(result.verified);
        assert!(!result.witnesses.is_empty());
    }

    #[test]
    fn multi_formula_sequents_are_rejected() {
        let sig = samples::standard_signature();
        assert!(matches!(
            extract(&sig, &samples::lem(), DEFAULT_FUEL),
            Err(HerbrandError::NotHerbrandGoal)
        ));
    }

    /// The single-goal proof pattern of `samples::x1` over an arbitrary
    /// formula: `∃x (B ∨ ¬B)` with `x` vacuous.
    fn excluded_middle_goal(b: Formula) -> OneSided {
        OneSided::Ex {
            witness: c(),
            var: "x".into(),
            matrix: Formula::or(b.clone(), Formula::not(b.clone())),
            premise: Box::new(OneSided::Contract {
                premise: Box::new(OneSided::Or {
                    side: Side::Right,
                    other: b.clone(),
                    premise: Box::new(OneSided::Perm {
                        order: vec![1, 0],
                        premise: Box::new(OneSided::Or {
                            side: Side::Left,
                            other: Formula::not(b.clone()),
                            premise: Box::new(OneSided::Lem(b)),
                        }),
                    }),
                }),
            }),
        }
    }

    #[test]
    fn quantified_matrices_are_rejected() {
        let sig = samples::standard_signature();
        let inner = Formula::exists("y", Formula::atom("P", vec![Term::ivar("y")]));
        let proof = excluded_middle_goal(inner);
        check_one_sided(&proof).unwrap();
        assert!(matches!(
            extract(&sig, &proof, DEFAULT_FUEL),
            Err(HerbrandError::NotHerbrandGoal)
        ));
    }

    #[test]
    fn open_goals_are_rejected() {
        let sig = samples::standard_signature();
        let proof = excluded_middle_goal(Formula::atom("P", vec![Term::ivar("y")]));
        check_one_sided(&proof).unwrap();
        assert!(matches!(
            extract(&sig, &proof, DEFAULT_FUEL),
            Err(HerbrandError::NotHerbrandGoal)
        ));
    }

    #[test]
    fn extraction_is_independent_of_the_counter_evidence_choice() {
        let sig = samples::standard_signature();
        let proof = samples::x1();
        let goal = Formula::exists(
            "x",
            Formula::or(
                Formula::atom("P", vec![Term::ivar("x")]),
                Formula::not(Formula::atom("P", vec![Term::ivar("x")])),
            ),
        );
        let matrix_not = Formula::not(Formula::or(
            Formula::atom("P", vec![Term::ivar("x")]),
            Formula::not(Formula::atom("P", vec![Term::ivar("x")])),
        ));
        let canonical_body = canonical_evidence(&sig, &matrix_not);

        // A branching counter: picks the same inhabitant either way, but
        // routes the realizer through extra case operators.
        let branching = Term::abs(
            "z",
            evidence_type(&goal),
            Term::case(Prop::atom("Q", vec![c()]), canonical_body.clone(), canonical_body.clone()),
        );
        let result = extract_with_counter(&sig, &proof, &branching, DEFAULT_FUEL).unwrap();
        assert!(result.verified);
        assert_eq!(result.witnesses, vec![fo(&c())]);

        // A beta-convertible variant of the canonical counter.
        let ev = evidence_type(&goal);
        let indirect = Term::abs(
            "z",
            ev.clone(),
            Term::app(
                Term::abs("w", ev.clone(), canonical_body.clone()),
                Term::Var("z".into(), ev),
            ),
        );
        let result = extract_with_counter(&sig, &proof, &indirect, DEFAULT_FUEL).unwrap();
        assert!(result.verified);
        assert_eq!(result.witnesses, vec![fo(&c())]);
    }
}
