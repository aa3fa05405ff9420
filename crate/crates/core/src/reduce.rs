//! Single-step and full reduction of realizer terms.
//!
//! The rewrite rules:
//!
//! 1. `(λx.u) v  ⟶  u[v/x]`
//! 2. `π1⟨u,v⟩  ⟶  u` and `π2⟨u,v⟩  ⟶  v`
//! 3. `(case[A]{f}{g}) u  ⟶  case[A]{f u}{g u}`
//! 4. a case argument distributes out of any application: `f case[A]{u}{v}
//!    ⟶ case[A]{f u}{f v}`, likewise under projections and under signature
//!    function symbols (at the leftmost case argument)
//!
//! Case guards are inert: no rule rewrites inside them. The strategy is
//! leftmost-outermost, reducing under binders and inside case branches, so
//! `normalize` is deterministic. When a node admits several rules, beta wins
//! over case-function distribution, which wins over case-argument
//! distribution.

use std::rc::Rc;

use crate::term::{subst, Prop, Term};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step budget of {0} exceeded")]
pub struct StepBudgetExceeded(pub u64);

/// One leftmost-outermost step, or `None` on a normal form.
pub fn step(t: &Term) -> Option<Term> {
    match t {
        Term::Epsilon | Term::Const(_) | Term::Var(_, _) => None,
        Term::App(f, a) => {
            if let Term::Abs(x, _, body) = &**f {
                return Some(subst(body, x, a));
            }
            if let Term::Case(guard, yes, no) = &**f {
                return Some(Term::case(
                    guard.clone(),
                    Term::app((**yes).clone(), (**a).clone()),
                    Term::app((**no).clone(), (**a).clone()),
                ));
            }
            if let Term::Case(guard, yes, no) = &**a {
                return Some(Term::case(
                    guard.clone(),
                    Term::app((**f).clone(), (**yes).clone()),
                    Term::app((**f).clone(), (**no).clone()),
                ));
            }
            if let Some(f2) = step(f) {
                return Some(Term::app(f2, (**a).clone()));
            }
            step(a).map(|a2| Term::app((**f).clone(), a2))
        }
        Term::Proj(i, a) => {
            if let Term::Pair(l, r) = &**a {
                return Some(if *i == 1 { (**l).clone() } else { (**r).clone() });
            }
            if let Term::Case(guard, yes, no) = &**a {
                return Some(Term::case(
                    guard.clone(),
                    Term::proj(*i, (**yes).clone()),
                    Term::proj(*i, (**no).clone()),
                ));
            }
            step(a).map(|a2| Term::proj(*i, a2))
        }
        Term::FnApp(g, args) => {
            if let Some(j) = args.iter().position(|a| matches!(a, Term::Case(_, _, _))) {
                let Term::Case(guard, yes, no) = &args[j] else { unreachable!() };
                let mut left = args.clone();
                let mut right = args.clone();
                left[j] = (**yes).clone();
                right[j] = (**no).clone();
                return Some(Term::case(
                    guard.clone(),
                    Term::FnApp(g.clone(), left),
                    Term::FnApp(g.clone(), right),
                ));
            }
            for (j, a) in args.iter().enumerate() {
                if let Some(a2) = step(a) {
                    let mut args2 = args.clone();
                    args2[j] = a2;
                    return Some(Term::FnApp(g.clone(), args2));
                }
            }
            None
        }
        Term::Pair(a, b) => {
            if let Some(a2) = step(a) {
                return Some(Term::pair(a2, (**b).clone()));
            }
            step(b).map(|b2| Term::pair((**a).clone(), b2))
        }
        Term::Abs(x, ty, body) => {
            step(body).map(|b2| Term::Abs(x.clone(), ty.clone(), Rc::new(b2)))
        }
        Term::Case(guard, yes, no) => {
            if let Some(y2) = step(yes) {
                return Some(Term::Case(guard.clone(), Rc::new(y2), no.clone()));
            }
            step(no).map(|n2| Term::Case(guard.clone(), yes.clone(), Rc::new(n2)))
        }
    }
}

pub fn is_normal(t: &Term) -> bool {
    step(t).is_none()
}

/// Iterates `step` to a normal form, also reporting the number of steps.
pub fn normalize_with_fuel(t: &Term, fuel: u64) -> Result<(Term, u64), StepBudgetExceeded> {
    let mut cur = t.clone();
    let mut used = 0;
    while let Some(next) = step(&cur) {
        used += 1;
        if used > fuel {
            return Err(StepBudgetExceeded(fuel));
        }
        cur = next;
    }
    Ok((cur, used))
}

pub fn normalize(t: &Term) -> Result<Term, StepBudgetExceeded> {
    normalize_with_fuel(t, DEFAULT_FUEL).map(|(t, _)| t)
}

/// Like [`normalize_with_fuel`] but gives up (`None`) once an intermediate
/// term outgrows `max_nodes`. Case distribution duplicates the surrounding
/// context on every step, so a step budget alone does not bound memory.
pub fn normalize_bounded(t: &Term, fuel: u64, max_nodes: usize) -> Option<Term> {
    let mut cur = t.clone();
    let mut used = 0;
    while let Some(next) = step(&cur) {
        used += 1;
        if used > fuel || next.size() > max_nodes {
            return None;
        }
        cur = next;
    }
    Some(cur)
}

/// Two terms are convertible when they share a normal form up to alpha.
pub fn convertible(a: &Term, b: &Term, fuel: u64) -> Result<bool, StepBudgetExceeded> {
    let (na, _) = normalize_with_fuel(a, fuel)?;
    let (nb, _) = normalize_with_fuel(b, fuel)?;
    Ok(na == nb)
}

/// Normalizes every term embedded in a proposition. Guards nested inside
/// case terms of those arguments are left alone; they stay inert data.
pub fn normalize_prop_args(p: &Prop, fuel: u64) -> Result<Prop, StepBudgetExceeded> {
    Ok(match p {
        Prop::Atom(name, args) => Prop::Atom(
            name.clone(),
            args.iter()
                .map(|a| normalize_with_fuel(a, fuel).map(|(t, _)| t))
                .collect::<Result<_, _>>()?,
        ),
        Prop::Or(a, b) => Prop::or(normalize_prop_args(a, fuel)?, normalize_prop_args(b, fuel)?),
        Prop::Not(a) => Prop::not(normalize_prop_args(a, fuel)?),
        Prop::Eq(a, b) => {
            let (na, _) = normalize_with_fuel(a, fuel)?;
            let (nb, _) = normalize_with_fuel(b, fuel)?;
            Prop::eq(na, nb)
        }
    })
}
