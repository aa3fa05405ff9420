//! Case elimination and tautology checking for quantifier-free propositions,
//! plus the end-to-end soundness check for interpreted proofs.
//!
//! The pipeline has three layers:
//!
//! * [`eliminate_cases`] removes every case operator from a proposition by
//!   splitting on its guard, justified by the equivalences
//!   `B → case[B]{s}{s'} ≡ s` and `¬B → case[B]{s}{s'} ≡ s'`.
//! * [`tautology`] decides case-free propositions. Distinct normalized atoms
//!   are independent propositional variables; an equation between convertible
//!   terms is true outright, while one between distinct normal forms becomes
//!   an opaque variable rather than false, because the equational theory
//!   proves equations but never refutes them.
//! * [`check_soundness`] interprets a proof, forms the disjunction of winning
//!   conditions over its end sequent, and verifies that it is a tautology.
//!
//! [`eval_with_cases`] is the reference semantics the rewrites are tested
//! against: it evaluates a proposition under an atom assignment directly,
//! resolving each case operator by first evaluating its guard.

use std::collections::HashMap;

use thiserror::Error;

use crate::interp::{transform_all, winning_normalized, InterpError};
use crate::logic::Signature;
use crate::proofs::{check_one_sided, OneSided};
use crate::reduce::{normalize_prop_args, normalize_with_fuel, StepBudgetExceeded};
use crate::term::{Ident, Prop, Term};

#[derive(Debug, Error)]
pub enum VerifyError {
    /// A term embedded in the proposition kept a free variable after
    /// normalization, so no truth value can be assigned to its atom.
    #[error("free variable {0} survives normalization")]
    NonClosedTerm(Ident),
    /// A case operator reached the tautology checker. Case operators under a
    /// lambda are the one kind elimination leaves behind; they cannot occur
    /// in closed normal terms of first-order type.
    #[error("case operator survives case elimination")]
    ResidualCase,
    #[error(transparent)]
    Budget(#[from] StepBudgetExceeded),
    #[error(transparent)]
    Interp(#[from] InterpError),
}

/// Result of deciding a proposition, with a counterexample on failure. The
/// assignment lists every propositional variable as a canonical atom (a
/// predicate applied to normalized arguments, or an undecided equation)
/// paired with the truth value that falsifies the proposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TautologyOutcome {
    Tautology,
    Falsified(Vec<(Prop, bool)>),
}

impl TautologyOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, TautologyOutcome::Tautology)
    }
}

/// Reference evaluator. Computes the truth value of `p` under `assign`,
/// which maps canonical atoms (normalized, case-free) to truth values; it
/// must be a pure function of its argument. Case operators inside atom
/// arguments are resolved by evaluating their guards recursively, and
/// equations between convertible sides are true regardless of `assign`.
pub fn eval_with_cases(
    p: &Prop,
    assign: &mut dyn FnMut(&Prop) -> bool,
    fuel: u64,
) -> Result<bool, VerifyError> {
    match p {
        Prop::Or(a, b) => {
            // No short-circuiting: both sides are evaluated so the result
            // cannot depend on evaluation order for impure assignments.
            let l = eval_with_cases(a, assign, fuel)?;
            let r = eval_with_cases(b, assign, fuel)?;
            Ok(l || r)
        }
        Prop::Not(a) => Ok(!eval_with_cases(a, assign, fuel)?),
        Prop::Atom(name, args) => {
            let mut resolved = Vec::with_capacity(args.len());
            for a in args {
                let r = resolve_cases(a, assign, fuel)?;
                resolved.push(closed_normal(&r, fuel)?);
            }
            Ok(assign(&Prop::Atom(name.clone(), resolved)))
        }
        Prop::Eq(a, b) => {
            let ra = resolve_cases(a, assign, fuel)?;
            let rb = resolve_cases(b, assign, fuel)?;
            let na = closed_normal(&ra, fuel)?;
            let nb = closed_normal(&rb, fuel)?;
            if na == nb {
                Ok(true)
            } else {
                Ok(assign(&Prop::eq(na, nb)))
            }
        }
    }
}

/// Replaces every case operator in `t` by the branch its guard selects.
fn resolve_cases(
    t: &Term,
    assign: &mut dyn FnMut(&Prop) -> bool,
    fuel: u64,
) -> Result<Term, VerifyError> {
    Ok(match t {
        Term::Case(guard, yes, no) => {
            let taken = if eval_with_cases(guard, assign, fuel)? { yes } else { no };
            resolve_cases(taken, assign, fuel)?
        }
        Term::Epsilon | Term::Const(_) | Term::Var(..) => t.clone(),
        Term::FnApp(f, args) => Term::FnApp(
            f.clone(),
            args.iter().map(|a| resolve_cases(a, assign, fuel)).collect::<Result<_, _>>()?,
        ),
        Term::Pair(a, b) => {
            Term::pair(resolve_cases(a, assign, fuel)?, resolve_cases(b, assign, fuel)?)
        }
        Term::Proj(i, a) => Term::proj(*i, resolve_cases(a, assign, fuel)?),
        Term::Abs(x, ty, body) => {
            Term::abs(x.clone(), ty.clone(), resolve_cases(body, assign, fuel)?)
        }
        Term::App(f, a) => {
            Term::app(resolve_cases(f, assign, fuel)?, resolve_cases(a, assign, fuel)?)
        }
    })
}

fn closed_normal(t: &Term, fuel: u64) -> Result<Term, VerifyError> {
    let (n, _) = normalize_with_fuel(t, fuel)?;
    if let Some((name, _)) = n.free_vars().into_iter().next() {
        return Err(VerifyError::NonClosedTerm(name));
    }
    Ok(n)
}

/// Case elimination duplicates a disjunct per split, so inputs with many
/// case operators in one disjunct are exponentially out of reach regardless;
/// a fixed split budget turns runaway growth into an error.
const SPLIT_LIMIT: u64 = 10_000;

/// Rewrites `p` into a case-free proposition true under exactly the same
/// atom assignments. Atom arguments and equation sides are normalized first.
/// Then, working over the top-level disjuncts of `p` from left to right, the
/// leftmost case operator of the first disjunct `d` still containing one is
/// split: `d` becomes `(B ∧ d[yes]) ∨ (¬B ∧ d[no])`, where the guard `B` has
/// its own cases eliminated before it enters the output. Splitting only the
/// enclosing disjunct is what makes the fixpoint terminate: each split
/// replaces one disjunct by two with strictly fewer case operators each.
///
/// Case operators under a lambda stay put: they cannot occur in closed
/// normal arguments of first-order type, and splitting one out would move
/// terms containing the bound variable out of scope.
pub fn eliminate_cases(p: &Prop, fuel: u64) -> Result<Prop, VerifyError> {
    let mut splits = 0u64;
    // Case distribution during normalization copies one guard to many sites,
    // so elimination results are cached per guard text.
    let mut memo = HashMap::new();
    let r = eliminate_worker(p, fuel, &mut splits, &mut memo);
    eprintln!("[dbg] eliminate done: splits {splits}, memo {}", memo.len());
    r
}

fn eliminate_worker(
    p: &Prop,
    fuel: u64,
    splits: &mut u64,
    memo: &mut HashMap<String, Prop>,
) -> Result<Prop, VerifyError> {
    let cur = normalize_prop_args(p, fuel)?;
    if let Some((name, _)) = cur.free_vars().into_iter().next() {
        return Err(VerifyError::NonClosedTerm(name));
    }
    if case_free(&cur) {
        return Ok(cur);
    }
    let mut pending = Vec::new();
    flatten_or(cur, &mut pending);
    pending.reverse();
    let mut done: Vec<Prop> = Vec::new();
    while let Some(d) = pending.pop() {
        match split_prop(&d) {
            None => done.push(d),
            Some((guard, yes, no)) => {
                *splits += 1;
                if *splits > SPLIT_LIMIT {
                    return Err(VerifyError::Budget(StepBudgetExceeded(SPLIT_LIMIT)));
                }
                let key = format!("{guard:?}");
                let guard = match memo.get(&key) {
                    Some(g) => g.clone(),
                    None => {
                        let g = eliminate_worker(&guard, fuel, splits, memo)?;
                        memo.insert(key, g.clone());
                        g
                    }
                };
                pending.push(Prop::and(Prop::not(guard.clone()), no));
                pending.push(Prop::and(guard, yes));
            }
        }
    }
    Ok(Prop::ors(done))
}

/// Leaves of the top-level disjunction spine, left to right.
fn flatten_or(p: Prop, out: &mut Vec<Prop>) {
    match p {
        Prop::Or(a, b) => {
            flatten_or((*a).clone(), out);
            flatten_or((*b).clone(), out);
        }
        other => out.push(other),
    }
}

/// Finds the leftmost case operator in an atom argument or equation side and
/// returns its guard together with the whole proposition with that operator
/// replaced by each branch.
fn split_prop(p: &Prop) -> Option<(Prop, Prop, Prop)> {
    match p {
        Prop::Atom(name, args) => split_term_list(args).map(|(g, ya, na)| {
            (g, Prop::Atom(name.clone(), ya), Prop::Atom(name.clone(), na))
        }),
        Prop::Or(a, b) => split_prop(a)
            .map(|(g, y, n)| (g, Prop::or(y, (**b).clone()), Prop::or(n, (**b).clone())))
            .or_else(|| {
                split_prop(b)
                    .map(|(g, y, n)| (g, Prop::or((**a).clone(), y), Prop::or((**a).clone(), n)))
            }),
        Prop::Not(a) => split_prop(a).map(|(g, y, n)| (g, Prop::not(y), Prop::not(n))),
        Prop::Eq(a, b) => split_term(a)
            .map(|(g, y, n)| (g, Prop::eq(y, (**b).clone()), Prop::eq(n, (**b).clone())))
            .or_else(|| {
                split_term(b)
                    .map(|(g, y, n)| (g, Prop::eq((**a).clone(), y), Prop::eq((**a).clone(), n)))
            }),
    }
}

fn split_term_list(ts: &[Term]) -> Option<(Prop, Vec<Term>, Vec<Term>)> {
    for (i, t) in ts.iter().enumerate() {
        if let Some((g, y, n)) = split_term(t) {
            let mut ya = ts.to_vec();
            let mut na = ts.to_vec();
            ya[i] = y;
            na[i] = n;
            return Some((g, ya, na));
        }
    }
    None
}

/// Leftmost-outermost case operator in `t`, skipping lambda bodies and the
/// inert guards of deeper case operators.
fn split_term(t: &Term) -> Option<(Prop, Term, Term)> {
    match t {
        Term::Case(guard, yes, no) => Some((guard.clone(), (**yes).clone(), (**no).clone())),
        Term::Epsilon | Term::Const(_) | Term::Var(..) | Term::Abs(..) => None,
        Term::FnApp(f, args) => split_term_list(args)
            .map(|(g, ya, na)| (g, Term::FnApp(f.clone(), ya), Term::FnApp(f.clone(), na))),
        Term::Pair(a, b) => split_term(a)
            .map(|(g, y, n)| (g, Term::pair(y, (**b).clone()), Term::pair(n, (**b).clone())))
            .or_else(|| {
                split_term(b).map(|(g, y, n)| {
                    (g, Term::pair((**a).clone(), y), Term::pair((**a).clone(), n))
                })
            }),
        Term::Proj(i, a) => {
            split_term(a).map(|(g, y, n)| (g, Term::proj(*i, y), Term::proj(*i, n)))
        }
        Term::App(f, a) => split_term(f)
            .map(|(g, y, n)| (g, Term::app(y, (**a).clone()), Term::app(n, (**a).clone())))
            .or_else(|| {
                split_term(a).map(|(g, y, n)| {
                    (g, Term::app((**f).clone(), y), Term::app((**f).clone(), n))
                })
            }),
    }
}

pub fn case_free(p: &Prop) -> bool {
    match p {
        Prop::Atom(_, args) => args.iter().all(term_case_free),
        Prop::Or(a, b) => case_free(a) && case_free(b),
        Prop::Not(a) => case_free(a),
        Prop::Eq(a, b) => term_case_free(a) && term_case_free(b),
    }
}

fn term_case_free(t: &Term) -> bool {
    match t {
        Term::Case(..) => false,
        Term::Epsilon | Term::Const(_) | Term::Var(..) => true,
        Term::FnApp(_, args) => args.iter().all(term_case_free),
        Term::Pair(a, b) | Term::App(a, b) => term_case_free(a) && term_case_free(b),
        Term::Proj(_, a) | Term::Abs(_, _, a) => term_case_free(a),
    }
}

/// Propositional skeleton over interned atoms.
enum BExpr {
    Const(bool),
    Key(usize),
    Or(Box<BExpr>, Box<BExpr>),
    Not(Box<BExpr>),
}

fn intern(keys: &mut Vec<Prop>, key: Prop) -> usize {
    match keys.iter().position(|k| *k == key) {
        Some(i) => i,
        None => {
            keys.push(key);
            keys.len() - 1
        }
    }
}

fn compile(p: &Prop, keys: &mut Vec<Prop>) -> Result<BExpr, VerifyError> {
    Ok(match p {
        Prop::Atom(name, args) => {
            if !args.iter().all(term_case_free) {
                return Err(VerifyError::ResidualCase);
            }
            BExpr::Key(intern(keys, Prop::Atom(name.clone(), args.clone())))
        }
        Prop::Or(a, b) => BExpr::Or(Box::new(compile(a, keys)?), Box::new(compile(b, keys)?)),
        Prop::Not(a) => BExpr::Not(Box::new(compile(a, keys)?)),
        Prop::Eq(a, b) => {
            if !term_case_free(a) || !term_case_free(b) {
                return Err(VerifyError::ResidualCase);
            }
            // Both sides are already normal, so convertibility is alpha
            // equality of the sides.
            if a == b {
                BExpr::Const(true)
            } else {
                BExpr::Key(intern(keys, Prop::eq((**a).clone(), (**b).clone())))
            }
        }
    })
}

fn eval_bexpr(e: &BExpr, assign: &dyn Fn(usize) -> bool) -> bool {
    match e {
        BExpr::Const(b) => *b,
        BExpr::Key(k) => assign(*k),
        BExpr::Or(a, b) => eval_bexpr(a, assign) || eval_bexpr(b, assign),
        BExpr::Not(a) => !eval_bexpr(a, assign),
    }
}

/// Substitutes one key and folds constants.
fn assume(e: &BExpr, key: usize, val: bool) -> BExpr {
    match e {
        BExpr::Const(b) => BExpr::Const(*b),
        BExpr::Key(k) => {
            if *k == key {
                BExpr::Const(val)
            } else {
                BExpr::Key(*k)
            }
        }
        BExpr::Or(a, b) => match (assume(a, key, val), assume(b, key, val)) {
            (BExpr::Const(true), _) | (_, BExpr::Const(true)) => BExpr::Const(true),
            (BExpr::Const(false), r) => r,
            (l, BExpr::Const(false)) => l,
            (l, r) => BExpr::Or(Box::new(l), Box::new(r)),
        },
        BExpr::Not(a) => match assume(a, key, val) {
            BExpr::Const(b) => BExpr::Const(!b),
            x => BExpr::Not(Box::new(x)),
        },
    }
}

fn first_key(e: &BExpr) -> Option<usize> {
    match e {
        BExpr::Const(_) => None,
        BExpr::Key(k) => Some(*k),
        BExpr::Or(a, b) => first_key(a).or_else(|| first_key(b)),
        BExpr::Not(a) => first_key(a),
    }
}

/// Depth-first search for a falsifying assignment, pruning branches whose
/// partial evaluation is already decided.
fn falsify_by_search(e: &BExpr, assign: &mut [Option<bool>]) -> bool {
    match e {
        BExpr::Const(b) => !*b,
        _ => {
            let k = first_key(e).expect("undecided expression mentions a key");
            for val in [false, true] {
                assign[k] = Some(val);
                if falsify_by_search(&assume(e, k, val), assign) {
                    return true;
                }
            }
            assign[k] = None;
            false
        }
    }
}

const TRUTH_TABLE_LIMIT: usize = 20;

/// Decides a case-free proposition with closed atom arguments: true exactly
/// when every assignment of truth values to its distinct normalized atoms
/// satisfies it. Up to [`TRUTH_TABLE_LIMIT`] atoms the table is enumerated
/// outright; beyond that a pruning search looks for a falsifying assignment.
pub fn tautology_outcome(p: &Prop, fuel: u64) -> Result<TautologyOutcome, VerifyError> {
    let p = normalize_prop_args(p, fuel)?;
    if let Some((name, _)) = p.free_vars().into_iter().next() {
        return Err(VerifyError::NonClosedTerm(name));
    }
    let mut keys = Vec::new();
    let e = compile(&p, &mut keys)?;
    let k = keys.len();
    if k <= TRUTH_TABLE_LIMIT {
        for mask in 0u64..(1u64 << k) {
            if !eval_bexpr(&e, &|i| mask >> i & 1 == 1) {
                let assignment =
                    keys.into_iter().enumerate().map(|(i, key)| (key, mask >> i & 1 == 1));
                return Ok(TautologyOutcome::Falsified(assignment.collect()));
            }
        }
        Ok(TautologyOutcome::Tautology)
    } else {
        let mut partial = vec![None; k];
        if falsify_by_search(&e, &mut partial) {
            let assignment = keys
                .into_iter()
                .zip(partial)
                .map(|(key, val)| (key, val.unwrap_or(false)));
            Ok(TautologyOutcome::Falsified(assignment.collect()))
        } else {
            Ok(TautologyOutcome::Tautology)
        }
    }
}

pub fn tautology(p: &Prop, fuel: u64) -> Result<bool, VerifyError> {
    Ok(tautology_outcome(p, fuel)?.holds())
}

/// The disjunction of winning conditions and its verdict for one proof.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    /// Case-eliminated disjunction of winning conditions, one per position.
    pub disjunction: Prop,
    pub outcome: TautologyOutcome,
}

/// Interprets `p` at every end-sequent position and decides the disjunction
/// of the winning conditions. Soundness of the interpretation predicts
/// [`TautologyOutcome::Tautology`] for every checked regular proof with a
/// closed end sequent and closed well-typed arguments; a falsifying
/// assignment is a reproducible counterexample to this implementation.
pub fn check_soundness_report(
    sig: &Signature,
    p: &OneSided,
    args: &[Term],
    fuel: u64,
) -> Result<SoundnessReport, VerifyError> {
    let sequent = check_one_sided(p).map_err(InterpError::from)?;
    if sequent.0.is_empty() {
        return Err(InterpError::BadIndex { index: 1, len: 0 }.into());
    }
    let evidence = transform_all(sig, p, args)?;
    let t0 = std::time::Instant::now();
    let mut disjuncts = Vec::with_capacity(sequent.0.len());
    for (i, a) in sequent.0.iter().enumerate() {
        disjuncts.push(winning_normalized(a, &evidence[i], &args[i], fuel));
    }
    let raw = Prop::ors(disjuncts);
    eprintln!("[dbg] winning: {:?}, prop nodes {}", t0.elapsed(), raw.size());
    let t1 = std::time::Instant::now();
    let disjunction = eliminate_cases(&raw, fuel)?;
    eprintln!("[dbg] eliminate: {:?}, prop nodes {}", t1.elapsed(), disjunction.size());
    let t2 = std::time::Instant::now();
    let outcome = tautology_outcome(&disjunction, fuel)?;
    eprintln!("[dbg] tautology: {:?}", t2.elapsed());
    Ok(SoundnessReport { disjunction, outcome })
}

pub fn check_soundness(
    sig: &Signature,
    p: &OneSided,
    args: &[Term],
    fuel: u64,
) -> Result<bool, VerifyError> {
    Ok(check_soundness_report(sig, p, args, fuel)?.outcome.holds())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::interp::canonical_counter_args;
    use crate::reduce::DEFAULT_FUEL;
    use crate::samples;
    use crate::term::Type;

    fn p(t: Term) -> Prop {
        Prop::atom("P", vec![t])
    }

    fn q_c() -> Prop {
        Prop::atom("Q", vec![Term::cnst("c")])
    }

    fn f(t: Term) -> Term {
        Term::FnApp("f".into(), vec![t])
    }

    fn c() -> Term {
        Term::cnst("c")
    }

    #[test]
    fn elimination_leaves_case_free_propositions_alone() {
        let prop = Prop::or(p(c()), Prop::not(q_c()));
        assert_eq!(eliminate_cases(&prop, DEFAULT_FUEL).unwrap(), prop);
    }

    #[test]
    fn a_single_case_splits_on_its_guard() {
        let prop = p(Term::case(q_c(), c(), f(c())));
        let expected = Prop::or(
            Prop::and(q_c(), p(c())),
            Prop::and(Prop::not(q_c()), p(f(c()))),
        );
        assert_eq!(eliminate_cases(&prop, DEFAULT_FUEL).unwrap(), expected);
    }

    #[test]
    fn guards_are_eliminated_before_they_enter_the_output() {
        let inner = Term::case(Prop::atom("R", vec![c(), c()]), c(), f(c()));
        let prop = p(Term::case(Prop::atom("Q", vec![inner]), c(), f(f(c()))));
        let out = eliminate_cases(&prop, DEFAULT_FUEL).unwrap();
        assert!(case_free(&out));
        // The guard Q(case[R(c,c)]{c}{f(c)}) splits into a disjunction before
        // it guards the outer branches.
        let guard = Prop::or(
            Prop::and(Prop::atom("R", vec![c(), c()]), Prop::atom("Q", vec![c()])),
            Prop::and(Prop::not(Prop::atom("R", vec![c(), c()])), Prop::atom("Q", vec![f(c())])),
        );
        let expected = Prop::or(
            Prop::and(guard.clone(), p(c())),
            Prop::and(Prop::not(guard), p(f(f(c())))),
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn elimination_is_idempotent() {
        let props = [
            p(Term::case(q_c(), c(), f(c()))),
            Prop::or(p(Term::case(q_c(), c(), f(c()))), p(Term::case(p(c()), f(c()), c()))),
            Prop::eq(Term::case(q_c(), c(), f(c())), c()),
        ];
        for prop in props {
            let once = eliminate_cases(&prop, DEFAULT_FUEL).unwrap();
            let twice = eliminate_cases(&once, DEFAULT_FUEL).unwrap();
            assert!(case_free(&once));
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn elimination_rejects_open_terms() {
        let prop = p(Term::ivar("x"));
        match eliminate_cases(&prop, DEFAULT_FUEL) {
            Err(VerifyError::NonClosedTerm(name)) => assert_eq!(name, "x"),
            other => panic!("expected NonClosedTerm, got {other:?}"),
        }
    }

    #[test]
    fn tautology_accepts_excluded_middle() {
        let prop = Prop::or(p(c()), Prop::not(p(c())));
        assert!(tautology(&prop, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn tautology_rejects_independent_atoms() {
        let prop = Prop::or(p(c()), Prop::not(p(f(c()))));
        match tautology_outcome(&prop, DEFAULT_FUEL).unwrap() {
            TautologyOutcome::Falsified(assignment) => {
                // The returned assignment really falsifies the proposition.
                let value = |atom: &Prop| {
                    assignment
                        .iter()
                        .find(|(k, _)| k == atom)
                        .map(|(_, v)| *v)
                        .expect("assignment covers every atom")
                };
                assert!(!value(&p(c())));
                assert!(value(&p(f(c()))));
            }
            TautologyOutcome::Tautology => panic!("independent atoms are not a tautology"),
        }
    }

    #[test]
    fn tautology_identifies_atoms_up_to_normalization() {
        let projected = Term::proj(1, Term::pair(c(), Term::Epsilon));
        let prop = Prop::or(p(c()), Prop::not(p(projected)));
        assert!(tautology(&prop, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn convertible_equations_are_true() {
        let projected = Term::proj(1, Term::pair(c(), Term::Epsilon));
        assert!(tautology(&Prop::eq(projected, c()), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn distinct_normal_forms_make_an_equation_opaque_not_false() {
        let eq = Prop::eq(c(), Term::cnst("d"));
        // Not provable: the equation is an unknown, so it can be false.
        assert!(!tautology(&eq, DEFAULT_FUEL).unwrap());
        // Not refutable either: its negation is just as unknown.
        assert!(!tautology(&Prop::not(eq.clone()), DEFAULT_FUEL).unwrap());
        // Both occurrences name the same unknown.
        assert!(tautology(&Prop::or(eq.clone(), Prop::not(eq)), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn search_and_table_agree_past_the_table_limit() {
        // 21 independent atoms force the search path; the proposition is a
        // tautology in the last atom only.
        let mut disjuncts: Vec<Prop> =
            (0..21).map(|i| p(Term::cnst(format!("c{i}")))).collect();
        let last = disjuncts.last().unwrap().clone();
        disjuncts.push(Prop::not(last));
        assert!(tautology(&Prop::ors(disjuncts.clone()), DEFAULT_FUEL).unwrap());
        disjuncts.pop();
        assert!(!tautology(&Prop::ors(disjuncts), DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn soundness_holds_for_the_sample_proofs() {
        let sig = samples::standard_signature();
        for proof in [samples::lem(), samples::x1(), samples::x2(), samples::x3()] {
            let sequent = check_one_sided(&proof).unwrap();
            let args = canonical_counter_args(&sig, &sequent.0);
            let report = check_soundness_report(&sig, &proof, &args, DEFAULT_FUEL).unwrap();
            assert!(
                report.outcome.holds(),
                "disjunction {:?} falsified by {:?}",
                report.disjunction,
                report.outcome,
            );
        }
    }

    #[test]
    fn soundness_rejects_wrongly_typed_arguments() {
        let sig = samples::standard_signature();
        let proof = samples::lem();
        let args = vec![Term::Epsilon, Term::Epsilon];
        assert!(matches!(
            check_soundness(&sig, &proof, &args, DEFAULT_FUEL),
            Err(VerifyError::Interp(InterpError::ArgType { position: 1, .. }))
        ));
    }

    /// Assignments for the oracle comparison: a deterministic pseudo-random
    /// predicate on the canonical atom, salted so different tables disagree.
    fn hashed_assignment(salt: u64) -> impl FnMut(&Prop) -> bool {
        move |key: &Prop| {
            use std::collections::hash_map::DefaultHasher;
            use std::hash::{Hash, Hasher};
            let mut h = DefaultHasher::new();
            // Debug form is canonical here: tautology keys of first-order
            // type contain no binders.
            format!("{key:?}").hash(&mut h);
            salt.hash(&mut h);
            h.finish() & 1 == 1
        }
    }

    fn base_term() -> BoxedStrategy<Term> {
        prop_oneof![
            Just(Term::cnst("c")),
            Just(Term::cnst("d")),
            Just(f(Term::cnst("c"))),
        ]
        .boxed()
    }

    /// Case-free guards over the base vocabulary.
    fn flat_guard() -> BoxedStrategy<Prop> {
        let atom = prop_oneof![
            base_term().prop_map(|t| Prop::atom("P", vec![t])),
            base_term().prop_map(|t| Prop::atom("Q", vec![t])),
            (base_term(), base_term()).prop_map(|(a, b)| Prop::eq(a, b)),
        ];
        atom.prop_recursive(2, 6, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Prop::or(a, b)),
                inner.prop_map(Prop::not),
            ]
        })
        .boxed()
    }

    /// Terms with up to two levels of case operators; guards may themselves
    /// mention a cased term one level down.
    fn small_term() -> BoxedStrategy<Term> {
        let level1 =
            (flat_guard(), base_term(), base_term()).prop_map(|(g, a, b)| Term::case(g, a, b));
        let cased_guard = prop_oneof![
            flat_guard(),
            level1.clone().prop_map(|t| Prop::atom("Q", vec![t])),
        ];
        prop_oneof![
            base_term(),
            level1,
            (cased_guard, base_term(), base_term()).prop_map(|(g, a, b)| Term::case(g, a, b)),
        ]
        .boxed()
    }

    /// At most two atoms: elimination duplicates the whole proposition per
    /// case operator, so sample sizes must stay deliberately small.
    fn small_guard(term: BoxedStrategy<Term>) -> BoxedStrategy<Prop> {
        let atom = prop_oneof![
            term.clone().prop_map(|t| Prop::atom("P", vec![t])),
            term.clone().prop_map(|t| Prop::atom("Q", vec![t])),
            (term.clone(), term).prop_map(|(a, b)| Prop::eq(a, b)),
        ];
        prop_oneof![
            atom.clone(),
            atom.clone().prop_map(Prop::not),
            (atom.clone(), atom.clone()).prop_map(|(a, b)| Prop::or(a, b)),
            (atom.clone(), atom).prop_map(|(a, b)| Prop::or(Prop::not(a), b)),
        ]
        .boxed()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn case_elimination_matches_direct_evaluation(
            prop in small_guard(small_term()),
            salt in 0u64..64,
        ) {
            let eliminated = eliminate_cases(&prop, DEFAULT_FUEL).unwrap();
            prop_assert!(case_free(&eliminated));
            let direct =
                eval_with_cases(&prop, &mut hashed_assignment(salt), DEFAULT_FUEL).unwrap();
            let rewritten =
                eval_with_cases(&eliminated, &mut hashed_assignment(salt), DEFAULT_FUEL).unwrap();
            prop_assert_eq!(direct, rewritten);
        }

        #[test]
        fn tautologies_are_true_under_every_assignment(
            prop in small_guard(small_term()),
            salt in 0u64..16,
        ) {
            let eliminated = eliminate_cases(&prop, DEFAULT_FUEL).unwrap();
            if tautology(&eliminated, DEFAULT_FUEL).unwrap() {
                let value =
                    eval_with_cases(&eliminated, &mut hashed_assignment(salt), DEFAULT_FUEL)
                        .unwrap();
                prop_assert!(value);
            }
        }
    }

    #[test]
    fn quantifier_free_proofs_verify_trivially() {
        // For a quantifier-free end sequent the winning disjunction is the
        // sequent itself, so verification reduces to its propositional truth.
        let sig = samples::standard_signature();
        let proof = OneSided::Weak {
            formula: crate::logic::Formula::atom("Q", vec![c()]),
            premise: Box::new(samples::lem()),
        };
        let sequent = check_one_sided(&proof).unwrap();
        let args = canonical_counter_args(&sig, &sequent.0);
        let report = check_soundness_report(&sig, &proof, &args, DEFAULT_FUEL).unwrap();
        let expected = Prop::ors(vec![
            Prop::not(p(c())),
            p(c()),
            Prop::atom("Q", vec![c()]),
        ]);
        assert_eq!(report.disjunction, expected);
        assert!(report.outcome.holds());
    }

    #[test]
    fn residual_cases_under_binders_are_reported() {
        let under_lambda = Term::abs("z", Type::Iota, Term::case(q_c(), Term::ivar("z"), c()));
        let eq = Prop::eq(under_lambda.clone(), under_lambda);
        let eliminated = eliminate_cases(&eq, DEFAULT_FUEL).unwrap();
        assert!(matches!(
            tautology_outcome(&eliminated, DEFAULT_FUEL),
            Err(VerifyError::ResidualCase)
        ));
    }
}
