//! Seed-deterministic random generators for types, closed well-typed terms,
//! propositions, and checkable proofs. All randomness flows from a ChaCha8
//! stream, so any failure reproduces from its seed.
//!
//! Proofs are built bottom-up: start from a seed proof (an axiom, an
//! eigenvariable template, or an existential schema) and wrap random rule
//! applications around the root, tracking the end sequent as it evolves.
//! Every generated one-sided proof is regular, checks, and, unless stated
//! otherwise, has a closed end sequent.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::logic::{FoTerm, Formula, Signature};
use crate::proofs::{OneSided, Side, TwoSided};
use crate::term::{Ident, Prop, Term, Type};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_type(rng: &mut ChaCha8Rng, max_depth: usize) -> Type {
    if max_depth == 0 || rng.gen_bool(0.35) {
        return if rng.gen_bool(0.5) { Type::Iota } else { Type::Null };
    }
    let a = random_type(rng, max_depth - 1);
    let b = random_type(rng, max_depth - 1);
    if rng.gen_bool(0.5) {
        Type::prod(a, b)
    } else {
        Type::arrow(a, b)
    }
}

/// Every type of depth at most `max_depth` (depth 0 is a base type). The
/// count is 2, 10, 202, 81610, ... so this is only meant for `max_depth <= 3`.
pub fn all_types(max_depth: usize) -> Vec<Type> {
    let mut out = vec![Type::Iota, Type::Null];
    if max_depth == 0 {
        return out;
    }
    let inner = all_types(max_depth - 1);
    for a in &inner {
        for b in &inner {
            out.push(Type::prod(a.clone(), b.clone()));
            out.push(Type::arrow(a.clone(), b.clone()));
        }
    }
    out.sort_by_key(|t| format!("{t}"));
    out.dedup();
    out
}

/// A first-order term over the signature; `vars` may contribute variables.
pub fn random_fo_term(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    vars: &[Ident],
    depth: usize,
) -> Term {
    if depth > 0 && !sig.functions().is_empty() && rng.gen_bool(0.45) {
        let (f, arity) = sig.functions().choose(rng).unwrap().clone();
        let args = (0..arity).map(|_| random_fo_term(rng, sig, vars, depth - 1)).collect();
        return Term::FnApp(f, args);
    }
    if !vars.is_empty() && rng.gen_bool(0.4) {
        return Term::ivar(vars.choose(rng).unwrap().clone());
    }
    Term::cnst(sig.constants().choose(rng).unwrap().clone())
}

/// A closed well-typed term of the requested type. `env` supplies bound
/// variables already in scope (used when the caller wants one designated free
/// variable); `depth` bounds the tree height.
pub fn random_term_in(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    env: &mut Vec<(Ident, Type)>,
    ty: &Type,
    depth: usize,
    junk: &mut u32,
) -> Term {
    let vars: Vec<Ident> =
        env.iter().filter(|(_, t)| t == ty).map(|(x, _)| x.clone()).collect();
    if !vars.is_empty() && rng.gen_bool(0.3) {
        return Term::Var(vars.choose(rng).unwrap().clone(), ty.clone());
    }
    // Redexes and case splits multiply normalization work downstream, so a
    // shared budget keeps any one term from compounding them.
    if depth > 0 && *junk > 0 {
        match rng.gen_range(0..10u8) {
            // A projection from a freshly built pair.
            0 => {
                *junk -= 1;
                let filler = random_type(rng, 1);
                let index = if rng.gen_bool(0.5) { 1 } else { 2 };
                let pair_ty = if index == 1 {
                    Type::prod(ty.clone(), filler)
                } else {
                    Type::prod(filler, ty.clone())
                };
                let p = random_term_in(rng, sig, env, &pair_ty, depth - 1, junk);
                return Term::proj(index, p);
            }
            // A beta redex.
            1 => {
                *junk -= 1;
                let arg_ty = random_type(rng, 1);
                let x = format!("r{}", env.len());
                env.push((x.clone(), arg_ty.clone()));
                let body = random_term_in(rng, sig, env, ty, depth - 1, junk);
                env.pop();
                let arg = random_term_in(rng, sig, env, &arg_ty, depth - 1, junk);
                return Term::app(Term::abs(x, arg_ty, body), arg);
            }
            // A case split.
            2 => {
                *junk -= 1;
                let guard = random_guard(rng, sig, env, depth.saturating_sub(1));
                let yes = random_term_in(rng, sig, env, ty, depth - 1, junk);
                let no = random_term_in(rng, sig, env, ty, depth - 1, junk);
                return Term::case(guard, yes, no);
            }
            _ => {}
        }
    }
    match ty {
        Type::Iota => {
            let ivars: Vec<Ident> = env
                .iter()
                .filter(|(_, t)| *t == Type::Iota)
                .map(|(x, _)| x.clone())
                .collect();
            random_fo_term(rng, sig, &ivars, depth.min(2))
        }
        Type::Null => Term::Epsilon,
        Type::Prod(a, b) => Term::pair(
            random_term_in(rng, sig, env, a, depth.saturating_sub(1), junk),
            random_term_in(rng, sig, env, b, depth.saturating_sub(1), junk),
        ),
        Type::Arrow(a, b) => {
            let x = format!("r{}", env.len());
            env.push((x.clone(), (**a).clone()));
            let body = random_term_in(rng, sig, env, b, depth.saturating_sub(1), junk);
            env.pop();
            Term::abs(x, (**a).clone(), body)
        }
    }
}

pub fn random_closed_term(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    ty: &Type,
    depth: usize,
) -> Term {
    random_term_in(rng, sig, &mut Vec::new(), ty, depth, &mut 6)
}

fn random_guard(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    env: &mut Vec<(Ident, Type)>,
    depth: usize,
) -> Prop {
    let ivars: Vec<Ident> =
        env.iter().filter(|(_, t)| *t == Type::Iota).map(|(x, _)| x.clone()).collect();
    let atom = |rng: &mut ChaCha8Rng| {
        let (p, arity) = sig.predicates().choose(rng).unwrap().clone();
        let args = (0..arity).map(|_| random_fo_term(rng, sig, &ivars, 1)).collect();
        Prop::Atom(p, args)
    };
    match rng.gen_range(0..5u8) {
        0 if depth > 0 => Prop::not(atom(rng)),
        1 if depth > 0 => Prop::or(atom(rng), atom(rng)),
        _ => atom(rng),
    }
}

/// A case-free proposition drawing from at most `max_atoms` distinct atoms.
pub fn random_flat_prop(rng: &mut ChaCha8Rng, sig: &Signature, max_atoms: usize) -> Prop {
    let pool: Vec<Prop> = (0..rng.gen_range(1..=max_atoms))
        .map(|_| {
            if rng.gen_bool(0.15) {
                let t = random_fo_term(rng, sig, &[], 1);
                let u = random_fo_term(rng, sig, &[], 1);
                Prop::eq(t, u)
            } else {
                let (p, arity) = sig.predicates().choose(rng).unwrap().clone();
                let args = (0..arity).map(|_| random_fo_term(rng, sig, &[], 1)).collect();
                Prop::Atom(p, args)
            }
        })
        .collect();
    random_prop_over(rng, &pool, 4)
}

fn random_prop_over(rng: &mut ChaCha8Rng, pool: &[Prop], depth: usize) -> Prop {
    if depth == 0 || rng.gen_bool(0.35) {
        return pool.choose(rng).unwrap().clone();
    }
    if rng.gen_bool(0.4) {
        Prop::not(random_prop_over(rng, pool, depth - 1))
    } else {
        Prop::or(random_prop_over(rng, pool, depth - 1), random_prop_over(rng, pool, depth - 1))
    }
}

/// A proposition whose atom arguments contain a few closed case terms, so
/// case elimination has real work to do. Keeps the case count small: each
/// split doubles one disjunct.
pub fn random_cased_prop(rng: &mut ChaCha8Rng, sig: &Signature) -> Prop {
    let mut cases = 0usize;
    let mut arg = |rng: &mut ChaCha8Rng| -> Term {
        let base = random_fo_term(rng, sig, &[], 1);
        if cases < 3 && rng.gen_bool(0.6) {
            cases += 1;
            let guard = random_guard(rng, sig, &mut Vec::new(), 1);
            Term::case(guard, base, random_fo_term(rng, sig, &[], 1))
        } else {
            base
        }
    };
    let pool: Vec<Prop> = (0..rng.gen_range(1..=3usize))
        .map(|_| {
            let (p, arity) = sig.predicates().choose(rng).unwrap().clone();
            let args = (0..arity).map(|_| arg(rng)).collect();
            Prop::Atom(p, args)
        })
        .collect();
    random_prop_over(rng, &pool, 3)
}

/// Quantifier-free formula; `vars` may appear as atom arguments.
pub fn random_qf_formula(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    vars: &[Ident],
    depth: usize,
) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        let (p, arity) = sig.predicates().choose(rng).unwrap().clone();
        let args = (0..arity).map(|_| random_fo_term(rng, sig, vars, 1)).collect();
        return Formula::Atom(p, args);
    }
    if rng.gen_bool(0.4) {
        Formula::not(random_qf_formula(rng, sig, vars, depth - 1))
    } else {
        Formula::or(
            random_qf_formula(rng, sig, vars, depth - 1),
            random_qf_formula(rng, sig, vars, depth - 1),
        )
    }
}

/// A closed formula, possibly with quantifiers.
pub fn random_formula(rng: &mut ChaCha8Rng, sig: &Signature, depth: usize) -> Formula {
    if depth > 0 && rng.gen_bool(0.25) {
        let x = format!("q{}", rng.gen_range(0..100u32));
        return Formula::exists(x.clone(), random_qf_formula(rng, sig, &[x], depth - 1));
    }
    random_qf_formula(rng, sig, &[], depth)
}

/// Bottom-up proof builder: wraps rules around a seed while tracking the end
/// sequent and handing out globally fresh eigenvariables.
struct Builder<'a> {
    sig: &'a Signature,
    fresh: usize,
}

impl<'a> Builder<'a> {
    fn new(sig: &'a Signature) -> Builder<'a> {
        Builder { sig, fresh: 0 }
    }

    fn fresh(&mut self, stem: &str) -> Ident {
        self.fresh += 1;
        format!("{stem}{}", self.fresh)
    }
}

/// Replaces every occurrence of the closed first-order term `t` inside `u`.
fn replace_in_term(u: &Term, t: &Term, x: &Ident) -> Term {
    if u == t {
        return Term::ivar(x.clone());
    }
    match u {
        Term::FnApp(f, args) => {
            Term::FnApp(f.clone(), args.iter().map(|a| replace_in_term(a, t, x)).collect())
        }
        other => other.clone(),
    }
}

fn replace_in_formula(f: &Formula, t: &Term, x: &Ident) -> Formula {
    match f {
        Formula::Atom(p, args) => {
            Formula::Atom(p.clone(), args.iter().map(|a| replace_in_term(a, t, x)).collect())
        }
        Formula::Or(a, b) => {
            Formula::or(replace_in_formula(a, t, x), replace_in_formula(b, t, x))
        }
        Formula::Not(a) => Formula::not(replace_in_formula(a, t, x)),
        Formula::Exists(y, a) => Formula::Exists(y.clone(), Box::new(replace_in_formula(a, t, x))),
    }
}

fn closed_fo_subterms(f: &Formula, out: &mut Vec<Term>) {
    fn from_term(u: &Term, out: &mut Vec<Term>) {
        if FoTerm::from_term(u).map(|t| t.is_closed()).unwrap_or(false) {
            out.push(u.clone());
        }
        if let Term::FnApp(_, args) = u {
            for a in args {
                from_term(a, out);
            }
        }
    }
    match f {
        Formula::Atom(_, args) => {
            for a in args {
                from_term(a, out);
            }
        }
        Formula::Or(a, b) => {
            closed_fo_subterms(a, out);
            closed_fo_subterms(b, out);
        }
        Formula::Not(a) => closed_fo_subterms(a, out),
        Formula::Exists(_, a) => closed_fo_subterms(a, out),
    }
}

fn type_size(t: &Type) -> usize {
    match t {
        Type::Iota | Type::Null => 1,
        Type::Prod(a, b) | Type::Arrow(a, b) => 1 + type_size(a) + type_size(b),
    }
}

/// Evidence and counter types grow superlinearly in negation depth, and the
/// realizers track them; moves that add interpretation layers are skipped
/// once a formula would pass this weight so generated proofs stay cheap to
/// transform and normalize.
fn interp_weight(f: &Formula) -> usize {
    type_size(&crate::interp::evidence_type(f)) + type_size(&crate::interp::counter_type(f))
}

const WEIGHT_LIMIT: usize = 400;

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// One rule application around the root of `p`, updating `seq` in place.
fn wrap_one(
    rng: &mut ChaCha8Rng,
    b: &mut Builder<'_>,
    p: OneSided,
    seq: &mut Vec<Formula>,
) -> OneSided {
    let cap = seq.len() >= 6;
    loop {
        match rng.gen_range(0..9u8) {
            0 => {
                // or
                let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                let other = random_formula(rng, b.sig, 1);
                let last = seq.pop().unwrap();
                seq.push(match side {
                    Side::Left => Formula::or(last, other.clone()),
                    Side::Right => Formula::or(other.clone(), last),
                });
                return OneSided::Or { side, other, premise: Box::new(p) };
            }
            1 => {
                // nn
                let doubled = Formula::not(Formula::not(seq.last().unwrap().clone()));
                if interp_weight(&doubled) > WEIGHT_LIMIT {
                    continue;
                }
                seq.pop();
                seq.push(doubled);
                return OneSided::NegNeg { premise: Box::new(p) };
            }
            2 if !cap => {
                // w
                let formula = random_formula(rng, b.sig, 1);
                seq.push(formula.clone());
                return OneSided::Weak { formula, premise: Box::new(p) };
            }
            3 => {
                // w then c: a no-op pair
                let dup = seq.last().unwrap().clone();
                return OneSided::Contract {
                    premise: Box::new(OneSided::Weak { formula: dup, premise: Box::new(p) }),
                };
            }
            4 => {
                // perm
                let order = random_permutation(rng, seq.len());
                *seq = order.iter().map(|&i| seq[i].clone()).collect();
                return OneSided::Perm { order, premise: Box::new(p) };
            }
            5 => {
                // ex: quantify a closed subterm of the last formula away
                let last = seq.last().unwrap().clone();
                let mut candidates = Vec::new();
                closed_fo_subterms(&last, &mut candidates);
                let witness = candidates
                    .choose(rng)
                    .cloned()
                    .unwrap_or_else(|| Term::cnst(b.sig.designated_constant()));
                let var = b.fresh("x");
                let matrix = replace_in_formula(&last, &witness, &var);
                let goal = Formula::exists(var.clone(), matrix.clone());
                if interp_weight(&goal) > WEIGHT_LIMIT {
                    continue;
                }
                seq.pop();
                seq.push(goal);
                return OneSided::Ex { witness, var, matrix, premise: Box::new(p) };
            }
            6 => {
                // nex with a vacuous eigenvariable, only over a negation
                let Some(Formula::Not(inner)) = seq.last() else { continue };
                let inner = (**inner).clone();
                let eigen = b.fresh("a");
                let var = b.fresh("x");
                let goal = Formula::not(Formula::exists(var, inner));
                if interp_weight(&goal) > WEIGHT_LIMIT {
                    continue;
                }
                seq.pop();
                seq.push(goal);
                return OneSided::NegEx { eigen, premise: Box::new(p) };
            }
            7 => {
                // cut against lem: end sequent unchanged
                let last = seq.last().unwrap().clone();
                let lem = OneSided::Lem(last.clone());
                let flipped = OneSided::Perm { order: vec![1, 0], premise: Box::new(lem) };
                return OneSided::Cut {
                    formula: last,
                    left: Box::new(p),
                    right: Box::new(flipped),
                };
            }
            8 if !cap => {
                // nor, pairing the last negation with a lem-derived side
                let Some(Formula::Not(inner)) = seq.last() else { continue };
                let a = (**inner).clone();
                let other = random_qf_formula(rng, b.sig, &[], 1);
                let side = OneSided::Perm {
                    order: vec![1, 0],
                    premise: Box::new(OneSided::Lem(other.clone())),
                };
                seq.pop();
                seq.push(other.clone());
                seq.push(Formula::not(Formula::or(a, other)));
                return OneSided::NegOr { left: Box::new(p), right: Box::new(side) };
            }
            _ => continue,
        }
    }
}

/// `⊢ ∃x A, ¬∃x A` through a genuine eigenvariable.
fn eigen_template(
    rng: &mut ChaCha8Rng,
    b: &mut Builder<'_>,
    seq: &mut Vec<Formula>,
) -> OneSided {
    let var = b.fresh("x");
    let eigen = b.fresh("a");
    let matrix = random_qf_formula(rng, b.sig, &[var.clone()], 2);
    let inst = crate::logic::subst_formula(&matrix, &var, &Term::ivar(eigen.clone()));
    let p = OneSided::Lem(inst.clone());
    let p = OneSided::Ex {
        witness: Term::ivar(eigen.clone()),
        var: var.clone(),
        matrix: matrix.clone(),
        premise: Box::new(p),
    };
    let p = OneSided::Perm { order: vec![1, 0], premise: Box::new(p) };
    let p = OneSided::NegEx { eigen, premise: Box::new(p) };
    let goal = Formula::exists(var, matrix);
    *seq = vec![goal.clone(), Formula::not(goal)];
    p
}

/// A regular one-sided proof with a closed end sequent.
pub fn random_one_sided(rng: &mut ChaCha8Rng, sig: &Signature) -> OneSided {
    let mut b = Builder::new(sig);
    let mut seq = Vec::new();
    let mut p = match rng.gen_range(0..4u8) {
        0 => eigen_template(rng, &mut b, &mut seq),
        1 => {
            let (p, goal) = exists_schema(rng, &mut b);
            seq = vec![goal];
            p
        }
        _ => {
            let a = random_formula(rng, sig, 2);
            seq = vec![Formula::not(a.clone()), a.clone()];
            OneSided::Lem(a)
        }
    };
    for _ in 0..rng.gen_range(1..=6usize) {
        p = wrap_one(rng, &mut b, p, &mut seq);
    }
    p
}

/// A proof whose end sequent has exactly one free individual variable,
/// paired with that variable. The variable is never an eigenvariable of the
/// proof, so it can be substituted for.
pub fn random_open_proof(rng: &mut ChaCha8Rng, sig: &Signature) -> (OneSided, Ident) {
    let mut b = Builder::new(sig);
    let free: Ident = "v0".into();
    let a = random_qf_formula(rng, sig, &[free.clone()], 2);
    let mut seq = vec![Formula::not(a.clone()), a.clone()];
    let mut p = OneSided::Lem(a);
    for _ in 0..rng.gen_range(1..=4usize) {
        p = wrap_one(rng, &mut b, p, &mut seq);
    }
    (p, free)
}

/// An excluded-middle schema `⊢ ∃x (B(x) ∨ ¬B(x))` at a random witness.
fn schema_middle(rng: &mut ChaCha8Rng, b: &mut Builder<'_>) -> (OneSided, Formula) {
    let var = b.fresh("x");
    let hole = random_qf_formula(rng, b.sig, &[var.clone()], 1);
    let witness_depth = rng.gen_range(0..2usize);
    let witness = random_fo_term(rng, b.sig, &[], witness_depth);
    let at = |t: &Term| crate::logic::subst_formula(&hole, &var, t);
    let bt = at(&witness);
    let matrix = Formula::or(hole.clone(), Formula::not(hole.clone()));
    let p = OneSided::Lem(bt.clone());
    let p = OneSided::Or {
        side: Side::Left,
        other: Formula::not(bt.clone()),
        premise: Box::new(p),
    };
    let p = OneSided::Perm { order: vec![1, 0], premise: Box::new(p) };
    let p = OneSided::Or { side: Side::Right, other: bt, premise: Box::new(p) };
    let p = OneSided::Contract { premise: Box::new(p) };
    let p = OneSided::Ex { witness, var: var.clone(), matrix: matrix.clone(), premise: Box::new(p) };
    (p, Formula::exists(var, matrix))
}

/// A drinker-style schema `⊢ ∃x (B(x) ∨ ¬B(f(x)))` needing two witnesses.
fn schema_drinker(rng: &mut ChaCha8Rng, b: &mut Builder<'_>) -> Option<(OneSided, Formula)> {
    let (f, _) = b.sig.functions().iter().find(|(_, arity)| *arity == 1)?.clone();
    let var = b.fresh("x");
    let hole = random_qf_formula(rng, b.sig, &[var.clone()], 1);
    let t = random_fo_term(rng, b.sig, &[], 1);
    let at = |s: &Term| crate::logic::subst_formula(&hole, &var, s);
    let ft = Term::FnApp(f.clone(), vec![t.clone()]);
    let fft = Term::FnApp(f.clone(), vec![ft.clone()]);
    let fx = Term::FnApp(f, vec![Term::ivar(var.clone())]);
    let matrix = Formula::or(hole.clone(), Formula::not(at(&fx)));
    let subst = |s: &Term| crate::logic::subst_formula(&matrix, &var, s);
    let p = OneSided::Lem(at(&ft));
    let p = OneSided::Perm { order: vec![1, 0], premise: Box::new(p) };
    let p = OneSided::Or { side: Side::Right, other: at(&t), premise: Box::new(p) };
    debug_assert_eq!(subst(&t), Formula::or(at(&t), Formula::not(at(&ft))));
    let p = OneSided::Ex {
        witness: t,
        var: var.clone(),
        matrix: matrix.clone(),
        premise: Box::new(p),
    };
    let p = OneSided::Perm { order: vec![1, 0], premise: Box::new(p) };
    let p = OneSided::Or {
        side: Side::Left,
        other: Formula::not(at(&fft)),
        premise: Box::new(p),
    };
    let p = OneSided::Ex {
        witness: ft,
        var: var.clone(),
        matrix: matrix.clone(),
        premise: Box::new(p),
    };
    let p = OneSided::Contract { premise: Box::new(p) };
    Some((p, Formula::exists(var, matrix)))
}

/// Wraps a goal proof in a cut against its own refutation-by-eigenvariable:
/// the right premise proves `⊢ ∃x M, ¬∃x M` with a genuine eigenvariable.
fn cut_through_dual(b: &mut Builder<'_>, p: OneSided, goal: &Formula) -> OneSided {
    let Formula::Exists(var, matrix) = goal else { return p };
    let eigen = b.fresh("a");
    let inst = crate::logic::subst_formula(matrix, var, &Term::ivar(eigen.clone()));
    let right = OneSided::Lem(inst);
    let right = OneSided::Ex {
        witness: Term::ivar(eigen.clone()),
        var: var.clone(),
        matrix: (**matrix).clone(),
        premise: Box::new(right),
    };
    let right = OneSided::Perm { order: vec![1, 0], premise: Box::new(right) };
    let right = OneSided::NegEx { eigen, premise: Box::new(right) };
    OneSided::Cut { formula: goal.clone(), left: Box::new(p), right: Box::new(right) }
}

fn exists_schema(rng: &mut ChaCha8Rng, b: &mut Builder<'_>) -> (OneSided, Formula) {
    let (mut p, goal) = match rng.gen_range(0..3u8) {
        0 => schema_middle(rng, b),
        1 => schema_drinker(rng, b).unwrap_or_else(|| schema_middle(rng, b)),
        _ => {
            let (p, goal) = schema_middle(rng, b);
            (cut_through_dual(b, p, &goal), goal)
        }
    };
    // decorations that keep the end sequent exactly [goal]
    for _ in 0..rng.gen_range(0..3u8) {
        p = match rng.gen_range(0..3u8) {
            0 => {
                let lem = OneSided::Lem(goal.clone());
                let flipped = OneSided::Perm { order: vec![1, 0], premise: Box::new(lem) };
                OneSided::Cut { formula: goal.clone(), left: Box::new(p), right: Box::new(flipped) }
            }
            1 => OneSided::Contract {
                premise: Box::new(OneSided::Weak { formula: goal.clone(), premise: Box::new(p) }),
            },
            _ => OneSided::Perm {
                order: vec![0],
                premise: Box::new(OneSided::Perm { order: vec![0], premise: Box::new(p) }),
            },
        };
    }
    (p, goal)
}

/// A proof of a single closed existential goal with a quantifier-free matrix.
pub fn random_exists_goal(rng: &mut ChaCha8Rng, sig: &Signature) -> OneSided {
    let mut b = Builder::new(sig);
    exists_schema(rng, &mut b).0
}

/// Closed counter-evidence for every position of a sequent.
pub fn random_counter_args(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    sequent: &[Formula],
) -> Vec<Term> {
    // One budget across the vector: transformed evidence embeds every argument,
    // so redex count must stay bounded per proof rather than per position.
    let mut junk = 3;
    sequent
        .iter()
        .map(|a| {
            let ty = crate::interp::counter_type(a);
            random_term_in(rng, sig, &mut Vec::new(), &ty, 2, &mut junk)
        })
        .collect()
}

/// One rule application around the root of a two-sided proof.
fn wrap_two(
    rng: &mut ChaCha8Rng,
    b: &mut Builder<'_>,
    p: TwoSided,
    ante: &mut Vec<Formula>,
    succ: &mut Vec<Formula>,
) -> TwoSided {
    let cap = ante.len() + succ.len() >= 6;
    loop {
        match rng.gen_range(0..11u8) {
            0 if !succ.is_empty() => {
                let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                let other = random_formula(rng, b.sig, 1);
                let first = succ.remove(0);
                succ.insert(
                    0,
                    match side {
                        Side::Left => Formula::or(first, other.clone()),
                        Side::Right => Formula::or(other.clone(), first),
                    },
                );
                return TwoSided::OrR { side, other, premise: Box::new(p) };
            }
            1 if !cap => {
                // orl over two weakened copies of the same premise
                let a = random_formula(rng, b.sig, 1);
                let c = random_formula(rng, b.sig, 1);
                let left = TwoSided::WeakL { formula: a.clone(), premise: Box::new(p.clone()) };
                let right = TwoSided::WeakL { formula: c.clone(), premise: Box::new(p) };
                ante.push(Formula::or(a, c));
                return TwoSided::OrL { left: Box::new(left), right: Box::new(right) };
            }
            2 if !ante.is_empty() => {
                let a = ante.pop().unwrap();
                succ.insert(0, Formula::not(a));
                return TwoSided::NegR { premise: Box::new(p) };
            }
            3 if !succ.is_empty() => {
                let a = succ.remove(0);
                ante.push(Formula::not(a));
                return TwoSided::NegL { premise: Box::new(p) };
            }
            4 if !succ.is_empty() => {
                let first = succ.remove(0);
                let mut candidates = Vec::new();
                closed_fo_subterms(&first, &mut candidates);
                let witness_term = candidates
                    .choose(rng)
                    .cloned()
                    .unwrap_or_else(|| Term::cnst(b.sig.designated_constant()));
                let witness = FoTerm::from_term(&witness_term).unwrap();
                let var = b.fresh("x");
                let matrix = replace_in_formula(&first, &witness_term, &var);
                succ.insert(0, Formula::exists(var.clone(), matrix.clone()));
                return TwoSided::ExR { witness, var, matrix, premise: Box::new(p) };
            }
            5 if !ante.is_empty() => {
                // exl with a vacuous eigenvariable
                let eigen = b.fresh("a");
                let var = b.fresh("x");
                let last = ante.pop().unwrap();
                ante.push(Formula::exists(var, last));
                return TwoSided::ExL { eigen, premise: Box::new(p) };
            }
            6 if !succ.is_empty() => {
                // wr then cr: a no-op pair
                let dup = succ[0].clone();
                return TwoSided::ContractR {
                    premise: Box::new(TwoSided::WeakR { formula: dup, premise: Box::new(p) }),
                };
            }
            7 if !cap => {
                if rng.gen_bool(0.5) {
                    let formula = random_formula(rng, b.sig, 1);
                    succ.insert(0, formula.clone());
                    return TwoSided::WeakR { formula, premise: Box::new(p) };
                }
                let formula = random_formula(rng, b.sig, 1);
                ante.push(formula.clone());
                return TwoSided::WeakL { formula, premise: Box::new(p) };
            }
            8 => {
                let aorder = random_permutation(rng, ante.len());
                let sorder = random_permutation(rng, succ.len());
                *ante = aorder.iter().map(|&i| ante[i].clone()).collect();
                *succ = sorder.iter().map(|&i| succ[i].clone()).collect();
                return TwoSided::Perm { ante: aorder, succ: sorder, premise: Box::new(p) };
            }
            9 => {
                // cut against id: prepend the cut formula to the antecedent
                let formula = random_formula(rng, b.sig, 1);
                let right = TwoSided::WeakL { formula: formula.clone(), premise: Box::new(p) };
                let left = TwoSided::Id(formula.clone());
                ante.insert(0, formula.clone());
                return TwoSided::Cut {
                    formula,
                    left: Box::new(left),
                    right: Box::new(right),
                };
            }
            10 if !ante.is_empty() => {
                // wl then cl: a no-op pair
                let dup = ante.last().unwrap().clone();
                return TwoSided::ContractL {
                    premise: Box::new(TwoSided::WeakL { formula: dup, premise: Box::new(p) }),
                };
            }
            _ => continue,
        }
    }
}

/// A checkable two-sided proof.
pub fn random_two_sided(rng: &mut ChaCha8Rng, sig: &Signature) -> TwoSided {
    let mut b = Builder::new(sig);
    let (mut p, mut ante, mut succ) = if rng.gen_bool(0.25) {
        // a genuine two-sided eigenvariable flow
        let var = b.fresh("x");
        let eigen = b.fresh("a");
        let matrix = random_qf_formula(rng, sig, &[var.clone()], 1);
        let inst = crate::logic::subst_formula(&matrix, &var, &Term::ivar(eigen.clone()));
        let p = TwoSided::Id(inst.clone());
        let p = TwoSided::ExR {
            witness: FoTerm::Var(eigen.clone()),
            var: var.clone(),
            matrix: matrix.clone(),
            premise: Box::new(p),
        };
        let p = TwoSided::ExL { eigen, premise: Box::new(p) };
        let goal = Formula::exists(var, matrix);
        (p, vec![goal.clone()], vec![goal])
    } else {
        let a = random_formula(rng, sig, 2);
        (TwoSided::Id(a.clone()), vec![a.clone()], vec![a])
    };
    for _ in 0..rng.gen_range(1..=6usize) {
        p = wrap_two(rng, &mut b, p, &mut ante, &mut succ);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::counter_type;
    use crate::proofs::{check_one_sided, check_two_sided};
    use crate::samples::standard_signature;
    use crate::typecheck::typecheck_closed;

    #[test]
    fn generated_terms_are_closed_and_well_typed() {
        let sig = standard_signature();
        let mut rng = seeded(7);
        for _ in 0..300 {
            let ty = random_type(&mut rng, 3);
            let t = random_closed_term(&mut rng, &sig, &ty, 5);
            assert!(t.is_closed(), "open term {t}");
            assert_eq!(typecheck_closed(&t).unwrap(), ty, "for {t}");
        }
    }

    #[test]
    fn type_enumeration_counts_match_the_recurrence() {
        assert_eq!(all_types(0).len(), 2);
        assert_eq!(all_types(1).len(), 10);
        assert_eq!(all_types(2).len(), 202);
        let three = all_types(3);
        assert_eq!(three.len(), 81_610);
        assert!(three.iter().all(|t| t.depth() <= 3));
    }

    #[test]
    fn generated_one_sided_proofs_check_closed_and_regular() {
        let sig = standard_signature();
        let mut rng = seeded(11);
        for i in 0..200 {
            let p = random_one_sided(&mut rng, &sig);
            let end = check_one_sided(&p).unwrap_or_else(|e| panic!("case {i}: {e}"));
            for a in &end.0 {
                assert!(a.is_closed(), "case {i}: open formula {a}");
            }
            assert!(!end.0.is_empty());
        }
    }

    #[test]
    fn generated_two_sided_proofs_check() {
        let sig = standard_signature();
        let mut rng = seeded(13);
        for i in 0..200 {
            let p = random_two_sided(&mut rng, &sig);
            check_two_sided(&p).unwrap_or_else(|e| panic!("case {i}: {e}"));
        }
    }

    #[test]
    fn exists_goals_are_single_closed_and_quantifier_free_inside() {
        let sig = standard_signature();
        let mut rng = seeded(17);
        for i in 0..100 {
            let p = random_exists_goal(&mut rng, &sig);
            let end = check_one_sided(&p).unwrap_or_else(|e| panic!("case {i}: {e}"));
            assert_eq!(end.0.len(), 1, "case {i}");
            let Formula::Exists(_, matrix) = &end.0[0] else {
                panic!("case {i}: not an existential: {}", end.0[0])
            };
            assert!(matrix.is_quantifier_free());
            assert!(end.0[0].is_closed());
        }
    }

    #[test]
    fn open_proofs_expose_exactly_their_designated_variable() {
        let sig = standard_signature();
        let mut rng = seeded(19);
        for _ in 0..100 {
            let (p, v) = random_open_proof(&mut rng, &sig);
            let end = check_one_sided(&p).unwrap();
            let mut free = std::collections::BTreeSet::new();
            for a in &end.0 {
                free.extend(a.free_ivars());
            }
            assert!(free.iter().all(|x| *x == v), "unexpected free vars {free:?}");
        }
    }

    #[test]
    fn counter_args_typecheck_against_the_sequent() {
        let sig = standard_signature();
        let mut rng = seeded(23);
        for _ in 0..50 {
            let p = random_one_sided(&mut rng, &sig);
            let end = check_one_sided(&p).unwrap();
            let args = random_counter_args(&mut rng, &sig, &end.0);
            for (a, arg) in end.0.iter().zip(&args) {
                assert!(arg.is_closed());
                assert_eq!(typecheck_closed(arg).unwrap(), counter_type(a));
            }
        }
    }

    #[test]
    fn flat_props_stay_within_their_atom_budget() {
        let sig = standard_signature();
        let mut rng = seeded(29);
        for _ in 0..200 {
            let p = random_flat_prop(&mut rng, &sig, 4);
            fn atoms(p: &Prop, out: &mut Vec<Prop>) {
                match p {
                    Prop::Atom(..) | Prop::Eq(..) => {
                        if !out.contains(p) {
                            out.push(p.clone());
                        }
                    }
                    Prop::Or(a, b) => {
                        atoms(a, out);
                        atoms(b, out);
                    }
                    Prop::Not(a) => atoms(a, out),
                }
            }
            let mut distinct = Vec::new();
            atoms(&p, &mut distinct);
            assert!(!distinct.is_empty() && distinct.len() <= 4);
        }
    }

    #[test]
    fn generation_is_deterministic_in_the_seed() {
        let sig = standard_signature();
        let mut a = seeded(99);
        let mut b = seeded(99);
        for _ in 0..20 {
            assert_eq!(random_one_sided(&mut a, &sig), random_one_sided(&mut b, &sig));
            assert_eq!(random_two_sided(&mut a, &sig), random_two_sided(&mut b, &sig));
            assert_eq!(
                random_cased_prop(&mut a, &sig),
                random_cased_prop(&mut b, &sig)
            );
        }
    }
}
