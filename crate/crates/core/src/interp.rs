//! The interpretation of one-sided proofs as realizer programs.
//!
//! Every formula gets an evidence type and a counter-evidence type. A proof
//! of `⊢ A_1, …, A_n` yields, for each position `i`, a term transformer: feed
//! it counter-evidence for every position and it builds evidence for `A_i`.
//! The transformers compose structurally over the last rule of the proof, so
//! no cut elimination or other preprocessing happens; a cut turns into a
//! function application, and a contraction turns into a case split on the
//! winning condition of its principal formula.

use std::collections::HashSet;
use std::rc::Rc;

use crate::logic::{subst_formula, Formula, Signature};
use crate::proofs::{
    check_one_sided_annotated, eigenvariables, proof_names, Annotated, CheckError, OneSided, Side,
};
use crate::term::{inhabitant, subst, Ident, Prop, Term, Type};
use crate::typecheck::typecheck_open;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpError {
    #[error("proof does not check: {0}")]
    Proof(#[from] CheckError),
    #[error("position {index} out of range for an end sequent of length {len}")]
    BadIndex { index: usize, len: usize },
    #[error("expected {expected} counter-evidence arguments, got {found}")]
    WrongArgCount { expected: usize, found: usize },
    #[error("argument {position} must have type {expected}: {detail}")]
    ArgType { position: usize, expected: Type, detail: String },
    #[error("argument {position} mentions the eigenvariable {name}")]
    EigenvariableInArg { position: usize, name: Ident },
    #[error("{role} term must have type {expected}: {detail}")]
    EvidenceType { role: &'static str, expected: Type, detail: String },
    #[error("eigenvariable {0} occurs outside the subproof that introduces it")]
    EigenEscape(Ident),
}

/// The type of evidence for `a`. Structural: two formulas with the same
/// connective skeleton share evidence and counter-evidence types.
pub fn evidence_type(a: &Formula) -> Type {
    match a {
        Formula::Atom(..) => Type::Null,
        Formula::Or(l, r) => Type::prod(neg_counter(l), neg_counter(r)),
        Formula::Not(b) => Type::arrow(neg_counter(b), counter_type(b)),
        Formula::Exists(_, b) => Type::prod(Type::Iota, neg_counter(b)),
    }
}

/// The type of counter-evidence against `a`.
pub fn counter_type(a: &Formula) -> Type {
    match a {
        Formula::Atom(..) => Type::Null,
        Formula::Or(l, r) => Type::prod(
            Type::arrow(neg_counter(l), neg_evidence(l)),
            Type::arrow(neg_counter(r), neg_evidence(r)),
        ),
        Formula::Not(b) => neg_counter(b),
        Formula::Exists(_, b) => Type::arrow(
            Type::prod(Type::Iota, neg_counter(b)),
            neg_evidence(b),
        ),
    }
}

/// Counter-evidence against `¬a`, inlined to keep the mutual recursion flat.
fn neg_counter(a: &Formula) -> Type {
    Type::arrow(counter_type(a), evidence_type(a))
}

/// Evidence for `¬a`.
fn neg_evidence(a: &Formula) -> Type {
    Type::arrow(neg_counter(a), counter_type(a))
}

/// The designated closed inhabitant of the evidence type of `a`, built from
/// the signature's first constant.
pub fn canonical_evidence(sig: &Signature, a: &Formula) -> Term {
    inhabitant(&evidence_type(a), sig.designated_constant())
}

/// One designated counter-evidence term per sequent position: the inhabitant
/// of each formula's counter-evidence type.
pub fn canonical_counter_args(sig: &Signature, sequent: &[Formula]) -> Vec<Term> {
    sequent
        .iter()
        .map(|a| inhabitant(&counter_type(a), sig.designated_constant()))
        .collect()
}

/// The winning condition: a quantifier-free proposition expressing that
/// evidence `u` beats counter-evidence `v` at formula `a`. Quantifier-free
/// formulas are their own winning condition; the quantifier clause plugs the
/// first component of `u` into the matrix.
pub fn winning(a: &Formula, u: &Term, v: &Term) -> Result<Prop, InterpError> {
    expect_type("evidence", u, evidence_type(a))?;
    expect_type("counter-evidence", v, counter_type(a))?;
    Ok(winning_unchecked(a, u, v))
}

fn expect_type(role: &'static str, t: &Term, expected: Type) -> Result<(), InterpError> {
    match typecheck_open(t) {
        Ok(found) if found == expected => Ok(()),
        Ok(found) => {
            Err(InterpError::EvidenceType { role, expected, detail: format!("found {found}") })
        }
        Err(e) => Err(InterpError::EvidenceType { role, expected, detail: e.to_string() }),
    }
}

pub(crate) fn winning_unchecked(a: &Formula, u: &Term, v: &Term) -> Prop {
    match a {
        Formula::Atom(p, ts) => Prop::Atom(p.clone(), ts.clone()),
        Formula::Or(l, r) => {
            let cl = Term::app(
                Term::app(Term::proj(1, v.clone()), Term::proj(1, u.clone())),
                Term::proj(1, u.clone()),
            );
            let el = Term::app(Term::proj(1, u.clone()), cl.clone());
            let cr = Term::app(
                Term::app(Term::proj(2, v.clone()), Term::proj(2, u.clone())),
                Term::proj(2, u.clone()),
            );
            let er = Term::app(Term::proj(2, u.clone()), cr.clone());
            Prop::or(winning_unchecked(l, &el, &cl), winning_unchecked(r, &er, &cr))
        }
        Formula::Not(b) => {
            let cb = Term::app(u.clone(), v.clone());
            let eb = Term::app(v.clone(), cb.clone());
            Prop::not(winning_unchecked(b, &eb, &cb))
        }
        Formula::Exists(x, b) => {
            let inst = subst_formula(b, x, &Term::proj(1, u.clone()));
            let cb = Term::app(Term::app(v.clone(), u.clone()), Term::proj(2, u.clone()));
            let eb = Term::app(Term::proj(2, u.clone()), cb.clone());
            winning_unchecked(&inst, &eb, &cb)
        }
    }
}

/// Same proposition as [`winning_unchecked`] up to convertibility of the
/// embedded terms, but with evidence and counter-evidence normalized at each
/// layer. The raw recursion compounds term sizes geometrically in the
/// formula depth; closed inputs have small normal forms, so this variant
/// stays cheap. Exceeding the step budget falls back to the raw term, which
/// only costs speed, never meaning.
pub(crate) fn winning_normalized(a: &Formula, u: &Term, v: &Term, fuel: u64) -> Prop {
    let tidy = |t: &Term| {
        crate::reduce::normalize_bounded(t, fuel, 100_000).unwrap_or_else(|| t.clone())
    };
    let u = tidy(u);
    let v = tidy(v);
    match a {
        Formula::Atom(p, ts) => Prop::Atom(p.clone(), ts.clone()),
        Formula::Or(l, r) => {
            let cl = Term::app(
                Term::app(Term::proj(1, v.clone()), Term::proj(1, u.clone())),
                Term::proj(1, u.clone()),
            );
            let el = Term::app(Term::proj(1, u.clone()), cl.clone());
            let cr = Term::app(
                Term::app(Term::proj(2, v.clone()), Term::proj(2, u.clone())),
                Term::proj(2, u.clone()),
            );
            let er = Term::app(Term::proj(2, u.clone()), cr.clone());
            Prop::or(winning_normalized(l, &el, &cl, fuel), winning_normalized(r, &er, &cr, fuel))
        }
        Formula::Not(b) => {
            let cb = Term::app(u.clone(), v.clone());
            let eb = Term::app(v.clone(), cb.clone());
            Prop::not(winning_normalized(b, &eb, &cb, fuel))
        }
        Formula::Exists(x, b) => {
            let inst = subst_formula(b, x, &tidy(&Term::proj(1, u.clone())));
            let cb = Term::app(Term::app(v.clone(), u.clone()), Term::proj(2, u.clone()));
            let eb = Term::app(Term::proj(2, u.clone()), cb.clone());
            winning_normalized(&inst, &eb, &cb, fuel)
        }
    }
}

/// [`winning_unchecked`] with the embedded chains funneled through beta
/// redexes: each layer binds the pair of the layer above once instead of
/// repeating it per occurrence, so the proposition stays linear in the
/// formula where the raw recursion is exponential. Every embedded term is
/// convertible to its raw counterpart, and guard consumers normalize before
/// comparing, so the two constructions are interchangeable as case guards.
fn winning_shared(a: &Formula, w: &Term, names: &mut NameSource) -> Prop {
    match a {
        Formula::Atom(p, ts) => Prop::Atom(p.clone(), ts.clone()),
        Formula::Or(l, r) => {
            let zty = Type::prod(evidence_type(a), counter_type(a));
            let branch = |side: u8, names: &mut NameSource| {
                let z = names.fresh("w");
                let zvar = Term::Var(z.clone(), zty.clone());
                let u = Term::proj(1, zvar.clone());
                let v = Term::proj(2, zvar);
                let c = Term::app(
                    Term::app(Term::proj(side, v), Term::proj(side, u.clone())),
                    Term::proj(side, u.clone()),
                );
                let e = Term::app(Term::proj(side, u), c.clone());
                Term::app(Term::abs(z, zty.clone(), Term::pair(e, c)), w.clone())
            };
            let wl = branch(1, names);
            let wr = branch(2, names);
            Prop::or(
                winning_shared(l, &wl, names),
                winning_shared(r, &wr, names),
            )
        }
        Formula::Not(b) => {
            let zty = Type::prod(evidence_type(a), counter_type(a));
            let z = names.fresh("w");
            let zvar = Term::Var(z.clone(), zty.clone());
            let u = Term::proj(1, zvar.clone());
            let v = Term::proj(2, zvar);
            let c = Term::app(u, v.clone());
            let e = Term::app(v, c.clone());
            let wb = Term::app(Term::abs(z, zty, Term::pair(e, c)), w.clone());
            Prop::not(winning_shared(b, &wb, names))
        }
        Formula::Exists(x, b) => {
            let witness = Term::proj(1, Term::proj(1, w.clone()));
            let inst = subst_formula(b, x, &witness);
            let zty = Type::prod(evidence_type(a), counter_type(a));
            let z = names.fresh("w");
            let zvar = Term::Var(z.clone(), zty.clone());
            let u = Term::proj(1, zvar.clone());
            let v = Term::proj(2, zvar);
            let c = Term::app(
                Term::app(v, u.clone()),
                Term::proj(2, u.clone()),
            );
            let e = Term::app(Term::proj(2, u), c.clone());
            let wb = Term::app(Term::abs(z, zty, Term::pair(e, c)), w.clone());
            winning_shared(&inst, &wb, names)
        }
    }
}

/// Runs the term transformer of proof `p` at 1-based position `index`,
/// applied to one counter-evidence term per end-sequent position.
///
/// The proof must check; the arguments must have the counter-evidence types
/// of the end sequent and must not mention any eigenvariable of the proof.
/// Eigenvariables must also stay inside the subproofs that introduce them
/// (vacuous quantifier witnesses are the one way a checkable proof can leak
/// one), since the quantifier cases substitute for them globally.
pub fn transform(
    sig: &Signature,
    p: &OneSided,
    index: usize,
    args: &[Term],
) -> Result<Term, InterpError> {
    let (ann, shared) = validate(p, args)?;
    let n = ann.sequent.0.len();
    if index == 0 || index > n {
        return Err(InterpError::BadIndex { index, len: n });
    }
    let mut names = NameSource::new(p, args);
    Ok(go(&ann, index - 1, &shared, sig, &mut names))
}

/// [`transform`] at every end-sequent position at once, checking the proof
/// and the arguments a single time.
pub fn transform_all(
    sig: &Signature,
    p: &OneSided,
    args: &[Term],
) -> Result<Vec<Term>, InterpError> {
    let (ann, shared) = validate(p, args)?;
    let mut names = NameSource::new(p, args);
    Ok((0..ann.sequent.0.len()).map(|i| go(&ann, i, &shared, sig, &mut names)).collect())
}

fn validate<'a>(
    p: &'a OneSided,
    args: &[Term],
) -> Result<(Annotated<'a>, Vec<Rc<Term>>), InterpError> {
    let ann = check_one_sided_annotated(p)?;
    let n = ann.sequent.0.len();
    if args.len() != n {
        return Err(InterpError::WrongArgCount { expected: n, found: args.len() });
    }
    let eigens: HashSet<Ident> = eigenvariables(p).into_iter().collect();
    for (j, arg) in args.iter().enumerate() {
        let expected = counter_type(&ann.sequent.0[j]);
        match typecheck_open(arg) {
            Ok(found) if found == expected => {}
            Ok(found) => {
                return Err(InterpError::ArgType {
                    position: j + 1,
                    expected,
                    detail: format!("found {found}"),
                })
            }
            Err(e) => {
                return Err(InterpError::ArgType {
                    position: j + 1,
                    expected,
                    detail: e.to_string(),
                })
            }
        }
        for (name, _) in arg.free_vars() {
            if eigens.contains(&name) {
                return Err(InterpError::EigenvariableInArg { position: j + 1, name });
            }
        }
    }
    check_eigen_scope(p, &HashSet::new())?;
    Ok((ann, args.iter().cloned().map(Rc::new).collect()))
}

/// Identifiers a node mentions directly, excluding its premises.
fn node_surface_names(p: &OneSided, out: &mut HashSet<Ident>) {
    match p {
        OneSided::Lem(a) => a.all_names(out),
        OneSided::Or { other, .. } => other.all_names(out),
        OneSided::Ex { witness, var, matrix, .. } => {
            witness.all_names(out);
            out.insert(var.clone());
            matrix.all_names(out);
        }
        OneSided::Weak { formula, .. } | OneSided::Cut { formula, .. } => formula.all_names(out),
        OneSided::NegOr { .. }
        | OneSided::NegEx { .. }
        | OneSided::Contract { .. }
        | OneSided::NegNeg { .. }
        | OneSided::Perm { .. } => {}
    }
}

fn immediate_premises(p: &OneSided) -> Vec<&OneSided> {
    match p {
        OneSided::Lem(_) => vec![],
        OneSided::Or { premise, .. }
        | OneSided::Ex { premise, .. }
        | OneSided::NegEx { premise, .. }
        | OneSided::Contract { premise }
        | OneSided::Weak { premise, .. }
        | OneSided::NegNeg { premise }
        | OneSided::Perm { premise, .. } => vec![premise],
        OneSided::NegOr { left, right } | OneSided::Cut { left, right, .. } => {
            vec![left, right]
        }
    }
}

fn check_eigen_scope(p: &OneSided, outside: &HashSet<Ident>) -> Result<(), InterpError> {
    if let OneSided::NegEx { eigen, .. } = p {
        if outside.contains(eigen) {
            return Err(InterpError::EigenEscape(eigen.clone()));
        }
    }
    let premises = immediate_premises(p);
    for (i, q) in premises.iter().enumerate() {
        let mut o = outside.clone();
        node_surface_names(p, &mut o);
        for (j, sibling) in premises.iter().enumerate() {
            if j != i {
                o.extend(proof_names(sibling));
            }
        }
        check_eigen_scope(q, &o)?;
    }
    Ok(())
}

/// Globally unique binder names for the constructed realizers, distinct from
/// everything in the proof and the arguments. Uniqueness means the
/// substitutions in the quantifier cases never need to rename.
struct NameSource {
    avoid: HashSet<Ident>,
    counter: u64,
}

impl NameSource {
    fn new(p: &OneSided, args: &[Term]) -> NameSource {
        let mut avoid = proof_names(p);
        for a in args {
            a.all_names(&mut avoid);
        }
        NameSource { avoid, counter: 0 }
    }

    fn fresh(&mut self, stem: &str) -> Ident {
        loop {
            let candidate = format!("{}{}", stem, self.counter);
            self.counter += 1;
            if self.avoid.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

fn with_last(prefix: &[Rc<Term>], last: Term) -> Vec<Rc<Term>> {
    let mut out = prefix.to_vec();
    out.push(Rc::new(last));
    out
}

// Arguments travel behind `Rc` because every recursive call carries the whole
// vector and several clauses re-traverse a premise; only the occurrences that
// end up embedded in the output are deep-cloned.
fn go(
    node: &Annotated,
    i: usize,
    args: &[Rc<Term>],
    sig: &Signature,
    names: &mut NameSource,
) -> Term {
    let n = node.sequent.0.len();
    match node.node {
        OneSided::Lem(_) => {
            if i == 1 {
                Term::app((*args[0]).clone(), (*args[1]).clone())
            } else {
                let z = names.fresh("z");
                Term::abs(z, counter_type(&node.sequent.0[0]), (*args[1]).clone())
            }
        }
        OneSided::Or { side, .. } => {
            let premise = &node.premises[0];
            let k = n - 1;
            let (a, b) = match &node.sequent.0[k] {
                Formula::Or(a, b) => (a.as_ref(), b.as_ref()),
                _ => unreachable!("checked"),
            };
            let proved = &premise.sequent.0[k];
            let z = names.fresh("z");
            let zty = counter_type(proved);
            let body = go(premise, k, &with_last(&args[..k], Term::Var(z.clone(), zty.clone())), sig, names);
            let active = Term::abs(z, zty, body);
            let lazy_of = |names: &mut NameSource, f: &Formula| {
                let z = names.fresh("z");
                Term::abs(z, counter_type(f), canonical_evidence(sig, f))
            };
            let q = match side {
                Side::Left => Term::pair(active, lazy_of(names, b)),
                Side::Right => Term::pair(lazy_of(names, a), active),
            };
            if i == k {
                q
            } else {
                let pi = match side {
                    Side::Left => 1,
                    Side::Right => 2,
                };
                let v = (*args[k]).clone();
                let c = Term::app(
                    Term::app(Term::proj(pi, v), Term::proj(pi, q.clone())),
                    Term::proj(pi, q),
                );
                go(premise, i, &with_last(&args[..k], c), sig, names)
            }
        }
        OneSided::NegOr { .. } => {
            let left = &node.premises[0];
            let right = &node.premises[1];
            let k = left.sequent.0.len() - 1;
            let m = right.sequent.0.len() - 1;
            let neg_a = &left.sequent.0[k];
            let neg_b = &right.sequent.0[m];
            let y1 = names.fresh("y");
            let y1ty = counter_type(neg_a);
            let body1 = go(left, k, &with_last(&args[..k], Term::Var(y1.clone(), y1ty.clone())), sig, names);
            let q1 = Term::abs(y1, y1ty, body1);
            let y2 = names.fresh("y");
            let y2ty = counter_type(neg_b);
            let body2 =
                go(right, m, &with_last(&args[k..k + m], Term::Var(y2.clone(), y2ty.clone())), sig, names);
            let q2 = Term::abs(y2, y2ty, body2);
            let z = names.fresh("z");
            let q = Term::abs(z, counter_type(&node.sequent.0[n - 1]), Term::pair(q1, q2));
            if i == n - 1 {
                q
            } else {
                let w = (*args[n - 1]).clone();
                let base = Term::app(w.clone(), Term::app(q, w));
                if i < k {
                    go(left, i, &with_last(&args[..k], Term::proj(1, base)), sig, names)
                } else {
                    go(right, i - k, &with_last(&args[k..k + m], Term::proj(2, base)), sig, names)
                }
            }
        }
        OneSided::Ex { witness, .. } => {
            let premise = &node.premises[0];
            let k = n - 1;
            let inst = &premise.sequent.0[k];
            let z = names.fresh("z");
            let zty = counter_type(inst);
            let body = go(premise, k, &with_last(&args[..k], Term::Var(z.clone(), zty.clone())), sig, names);
            let h = Term::abs(z, zty, body);
            if i == k {
                Term::pair(witness.clone(), h)
            } else {
                let c = Term::app(
                    Term::app((*args[k]).clone(), Term::pair(witness.clone(), h.clone())),
                    h,
                );
                go(premise, i, &with_last(&args[..k], c), sig, names)
            }
        }
        OneSided::NegEx { eigen, .. } => {
            let premise = &node.premises[0];
            let k = n - 1;
            let conclusion = &node.sequent.0[k];
            let ex = match conclusion {
                Formula::Not(inner) => inner.as_ref(),
                _ => unreachable!("checked"),
            };
            let y = names.fresh("y");
            let yty = evidence_type(ex);
            let yvar = Term::Var(y.clone(), yty.clone());
            let body =
                go(premise, k, &with_last(&args[..k], Term::proj(2, yvar.clone())), sig, names);
            let h = Term::abs(y, yty, subst(&body, eigen, &Term::proj(1, yvar)));
            if i == k {
                let z = names.fresh("z");
                Term::abs(z, counter_type(conclusion), h)
            } else {
                let vh = Term::app((*args[k]).clone(), h);
                let raw =
                    go(premise, i, &with_last(&args[..k], Term::proj(2, vh.clone())), sig, names);
                subst(&raw, eigen, &Term::proj(1, vh))
            }
        }
        OneSided::Contract { .. } => {
            let premise = &node.premises[0];
            let k = n - 1;
            let v = args[k].clone();
            let mut doubled = args.to_vec();
            doubled.push(v.clone());
            if i == k {
                let e1 = go(premise, k, &doubled, sig, names);
                let e2 = go(premise, k + 1, &doubled, sig, names);
                let w = Term::pair(e1.clone(), (*v).clone());
                let guard = winning_shared(&node.sequent.0[k], &w, names);
                Term::case(guard, e1, e2)
            } else {
                go(premise, i, &doubled, sig, names)
            }
        }
        OneSided::Weak { .. } => {
            if i == n - 1 {
                canonical_evidence(sig, &node.sequent.0[n - 1])
            } else {
                go(&node.premises[0], i, &args[..n - 1], sig, names)
            }
        }
        OneSided::NegNeg { .. } => {
            let premise = &node.premises[0];
            let k = n - 1;
            let a = &premise.sequent.0[k];
            let y = names.fresh("y");
            let yty = counter_type(a);
            let body = go(premise, k, &with_last(&args[..k], Term::Var(y.clone(), yty.clone())), sig, names);
            let q = Term::abs(y, yty, body);
            if i == k {
                let z = names.fresh("z");
                Term::abs(z, counter_type(&node.sequent.0[k]), q)
            } else {
                let c = Term::app(Term::app((*args[k]).clone(), q.clone()), q);
                go(premise, i, &with_last(&args[..k], c), sig, names)
            }
        }
        OneSided::Cut { formula, .. } => {
            let left = &node.premises[0];
            let right = &node.premises[1];
            let k = left.sequent.0.len() - 1;
            let m = right.sequent.0.len() - 1;
            let z = names.fresh("z");
            let zty = counter_type(formula);
            let body = go(left, k, &with_last(&args[..k], Term::Var(z.clone(), zty.clone())), sig, names);
            let h = Term::abs(z, zty, body);
            if i < k {
                let neg_evidence = go(right, m, &with_last(&args[k..], h.clone()), sig, names);
                let c = Term::app(neg_evidence, h);
                go(left, i, &with_last(&args[..k], c), sig, names)
            } else {
                go(right, i - k, &with_last(&args[k..], h), sig, names)
            }
        }
        OneSided::Perm { order, .. } => {
            let premise = &node.premises[0];
            let mut permuted = vec![Rc::new(Term::Epsilon); n];
            for (j, &src) in order.iter().enumerate() {
                permuted[src] = args[j].clone();
            }
            go(premise, order[i], &permuted, sig, names)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::FoTerm;
    use crate::reduce::normalize;
    use crate::samples;
    use crate::term::Term;

    fn pc() -> Formula {
        Formula::atom("P", vec![Term::cnst("c")])
    }

    fn exists_p() -> Formula {
        Formula::exists("x", Formula::atom("P", vec![Term::ivar("x")]))
    }

    #[test]
    fn types_of_atoms_are_null() {
        assert_eq!(evidence_type(&pc()), Type::Null);
        assert_eq!(counter_type(&pc()), Type::Null);
    }

    #[test]
    fn types_follow_the_connective_skeleton() {
        let nn = || Type::arrow(Type::Null, Type::Null);
        // ⟨¬P⟩ = □ → □ and [¬P] = (□ → □) → □.
        assert_eq!(counter_type(&Formula::not(pc())), nn());
        assert_eq!(evidence_type(&Formula::not(pc())), Type::arrow(nn(), Type::Null));
        // [∃x P(x)] = ι × (□ → □).
        assert_eq!(evidence_type(&exists_p()), Type::prod(Type::Iota, nn()));
        // ⟨∃x P(x)⟩ = (ι × (□ → □)) → ((□ → □) → □).
        assert_eq!(
            counter_type(&exists_p()),
            Type::arrow(Type::prod(Type::Iota, nn()), Type::arrow(nn(), Type::Null))
        );
        // [P ∨ P] = (□ → □) × (□ → □).
        let orf = Formula::or(pc(), pc());
        assert_eq!(evidence_type(&orf), Type::prod(nn(), nn()));
        // Evidence and counter-evidence types ignore the terms inside.
        let other = Formula::exists("y", Formula::atom("Q", vec![Term::ivar("y")]));
        assert_eq!(evidence_type(&exists_p()), evidence_type(&other));
    }

    #[test]
    fn canonical_evidence_inhabits_the_evidence_type() {
        let sig = samples::standard_signature();
        for f in [
            pc(),
            Formula::not(pc()),
            exists_p(),
            Formula::or(pc(), Formula::not(pc())),
            Formula::not(exists_p()),
        ] {
            let e = canonical_evidence(&sig, &f);
            assert!(e.is_closed());
            assert_eq!(crate::typecheck::typecheck_closed(&e).unwrap(), evidence_type(&f));
        }
    }

    #[test]
    fn canonical_evidence_for_negated_atom_discards_its_argument() {
        let sig = samples::standard_signature();
        let e = canonical_evidence(&sig, &Formula::not(pc()));
        assert_eq!(e, Term::abs("z", Type::arrow(Type::Null, Type::Null), Term::Epsilon));
    }

    #[test]
    fn winning_is_identity_on_quantifier_free_formulas() {
        let sig = samples::standard_signature();
        let f = Formula::or(pc(), Formula::not(Formula::atom("Q", vec![Term::cnst("d")])));
        let u = canonical_evidence(&sig, &f);
        let v = inhabitant(&counter_type(&f), "c");
        let w = winning(&f, &u, &v).unwrap();
        let expected = Prop::or(
            Prop::atom("P", vec![Term::cnst("c")]),
            Prop::not(Prop::atom("Q", vec![Term::cnst("d")])),
        );
        assert_eq!(w, expected);
    }

    #[test]
    fn winning_substitutes_the_witness_into_the_matrix() {
        let f = exists_p();
        let h = Term::abs("w", Type::Null, Term::Epsilon);
        let u = Term::pair(Term::cnst("c"), h);
        let v = inhabitant(&counter_type(&f), "c");
        let w = winning(&f, &u, &v).unwrap();
        match w {
            Prop::Atom(name, args) => {
                assert_eq!(name, "P");
                // The witness arrives as a projection of the evidence pair.
                assert_eq!(normalize(&args[0]).unwrap(), Term::cnst("c"));
            }
            other => panic!("expected an atom, got {other}"),
        }
    }

    #[test]
    fn winning_rejects_ill_typed_evidence() {
        let f = exists_p();
        let v = inhabitant(&counter_type(&f), "c");
        assert!(matches!(
            winning(&f, &Term::Epsilon, &v),
            Err(InterpError::EvidenceType { role: "evidence", .. })
        ));
    }

    #[test]
    fn excluded_middle_transformers() {
        let sig = samples::standard_signature();
        let p = OneSided::Lem(pc());
        let u = Term::Var("u".into(), Type::arrow(Type::Null, Type::Null));
        let v = Term::Var("v".into(), Type::Null);
        let f2 = transform(&sig, &p, 2, &[u.clone(), v.clone()]).unwrap();
        assert_eq!(f2, Term::app(u.clone(), v.clone()));
        let f1 = transform(&sig, &p, 1, &[u, v.clone()]).unwrap();
        assert_eq!(f1, Term::abs("z", Type::arrow(Type::Null, Type::Null), v));
    }

    #[test]
    fn weakening_principal_is_canonical_evidence() {
        let sig = samples::standard_signature();
        let p = OneSided::Weak {
            formula: Formula::not(pc()),
            premise: Box::new(OneSided::Lem(pc())),
        };
        let nn = Type::arrow(Type::Null, Type::Null);
        let args = vec![
            Term::Var("u".into(), nn.clone()),
            Term::Var("v".into(), Type::Null),
            Term::Var("w".into(), nn.clone()),
        ];
        let principal = transform(&sig, &p, 3, &args).unwrap();
        assert_eq!(principal, canonical_evidence(&sig, &Formula::not(pc())));
        // Context positions ignore the weakened argument.
        let f2 = transform(&sig, &p, 2, &args).unwrap();
        assert_eq!(f2, Term::app(args[0].clone(), args[1].clone()));
    }

    #[test]
    fn transformers_typecheck_at_every_position() {
        let sig = samples::standard_signature();
        for p in [samples::x1(), samples::x2(), samples::x3()] {
            let seq = crate::proofs::check_one_sided(&p).unwrap();
            let args: Vec<Term> =
                seq.0.iter().map(|f| inhabitant(&counter_type(f), "c")).collect();
            for i in 1..=seq.0.len() {
                let t = transform(&sig, &p, i, &args).unwrap();
                assert_eq!(
                    typecheck_open(&t).unwrap(),
                    evidence_type(&seq.0[i - 1]),
                    "position {i}"
                );
            }
        }
    }

    #[test]
    fn extracted_realizer_normalizes_to_a_witness_pair() {
        let sig = samples::standard_signature();
        let p = samples::x1();
        let goal = crate::proofs::check_one_sided(&p).unwrap().0[0].clone();
        let v = inhabitant(&counter_type(&goal), "c");
        let t = transform(&sig, &p, 1, &[v]).unwrap();
        let nf = normalize(&t).unwrap();
        match nf {
            Term::Pair(first, _) => assert_eq!(*first, Term::cnst("c")),
            other => panic!("expected a pair, got {other}"),
        }
    }

    #[test]
    fn argument_validation() {
        let sig = samples::standard_signature();
        let p = OneSided::Lem(pc());
        let nn = Type::arrow(Type::Null, Type::Null);
        let u = Term::Var("u".into(), nn.clone());
        let v = Term::Var("v".into(), Type::Null);
        assert!(matches!(
            transform(&sig, &p, 3, &[u.clone(), v.clone()]),
            Err(InterpError::BadIndex { index: 3, len: 2 })
        ));
        assert!(matches!(
            transform(&sig, &p, 1, &[u.clone()]),
            Err(InterpError::WrongArgCount { expected: 2, found: 1 })
        ));
        assert!(matches!(
            transform(&sig, &p, 1, &[v.clone(), v.clone()]),
            Err(InterpError::ArgType { position: 1, .. })
        ));
    }

    /// `⊢ ¬Q(c), Q(c), ¬∃x P(x)`, abstracting the eigenvariable `a` out of a
    /// weakened `¬P(a)`.
    fn neg_ex_proof() -> OneSided {
        OneSided::NegEx {
            eigen: "a".into(),
            premise: Box::new(OneSided::Weak {
                formula: Formula::not(Formula::atom("P", vec![Term::ivar("a")])),
                premise: Box::new(OneSided::Lem(Formula::atom("Q", vec![Term::cnst("c")]))),
            }),
        }
    }

    #[test]
    fn arguments_may_not_mention_eigenvariables() {
        let sig = samples::standard_signature();
        let p = neg_ex_proof();
        let seq = crate::proofs::check_one_sided(&p).unwrap();
        let mut args: Vec<Term> =
            seq.0.iter().map(|f| inhabitant(&counter_type(f), "c")).collect();
        assert!(transform(&sig, &p, 3, &args).is_ok());
        // Smuggle the eigenvariable into a counter-evidence term of the
        // right type.
        args[0] = Term::app(Term::abs("x", Type::Iota, args[0].clone()), Term::ivar("a"));
        assert!(matches!(
            transform(&sig, &p, 3, &args),
            Err(InterpError::EigenvariableInArg { position: 1, .. })
        ));
    }

    #[test]
    fn eigenvariables_must_stay_inside_their_subproof() {
        let sig = samples::standard_signature();
        // A vacuous witness leaks the eigenvariable a above its inference.
        let leaky = OneSided::Ex {
            witness: Term::ivar("a"),
            var: "w".into(),
            matrix: Formula::not(exists_p()),
            premise: Box::new(neg_ex_proof()),
        };
        let seq = crate::proofs::check_one_sided(&leaky).unwrap();
        let args: Vec<Term> =
            seq.0.iter().map(|f| inhabitant(&counter_type(f), "c")).collect();
        assert!(matches!(
            transform(&sig, &leaky, 1, &args),
            Err(InterpError::EigenEscape(name)) if name == "a"
        ));
    }

    #[test]
    fn substitution_commutes_with_transformation() {
        let sig = samples::standard_signature();
        // ⊢ ¬P(b), ∃x P(x) with b free; substituting f(c) for b commutes.
        let pb = Formula::atom("P", vec![Term::ivar("b")]);
        let p = OneSided::Ex {
            witness: Term::ivar("b"),
            var: "x".into(),
            matrix: Formula::atom("P", vec![Term::ivar("x")]),
            premise: Box::new(OneSided::Lem(pb)),
        };
        let seq = crate::proofs::check_one_sided(&p).unwrap();
        let args: Vec<Term> =
            seq.0.iter().map(|f| inhabitant(&counter_type(f), "c")).collect();
        let t = FoTerm::Fun("f".into(), vec![FoTerm::Const("c".into())]).to_term();
        for i in 1..=2 {
            let before = subst(&transform(&sig, &p, i, &args).unwrap(), &"b".into(), &t);
            let substituted = crate::proofs::proof_subst(&p, &"b".into(), &t).unwrap();
            let after = transform(&sig, &substituted, i, &args).unwrap();
            assert_eq!(before, after, "position {i}");
        }
    }
}
