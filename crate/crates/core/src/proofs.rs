//! The two sequent calculi and their proof checkers.
//!
//! One-sided proofs ([`OneSided`]) are the calculus the interpretation runs
//! on: `lem` axioms `⊢ ¬A, A`, introduction rules for `∨`, `¬∨`, `∃`, `¬∃`,
//! `¬¬`, contraction, weakening, cut, and explicit permutation. Sequents are
//! ordered lists; every rule introduces its principal formula at the last
//! position, so permutation is the only structural plumbing.
//!
//! Two-sided proofs ([`TwoSided`]) are a standard classical sequent calculus
//! with independent left/right rules and additive `∨`-left. Left rules keep
//! their principal formula at the end of the antecedent, right rules at the
//! front of the succedent.
//!
//! Checking is bottom-up: each node's conclusion is computed from the checked
//! premises, so a proof determines its end sequent. Eigenvariable side
//! conditions are enforced on the spot; the one-sided checker additionally
//! requires regularity (no eigenvariable is introduced by two different `¬∃`
//! nodes).

use std::collections::HashSet;

use crate::logic::{subst_formula, FoTerm, Formula, Sequent, TwoSequent};
use crate::term::{fresh_name, Ident, Term, Type};
use crate::typecheck::{typecheck, Ctx, TypeError};

/// Which disjunct the premise of a `∨` introduction provides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneSided {
    /// `⊢ ¬A, A`
    Lem(Formula),
    /// From `⊢ Γ, A_i` infer `⊢ Γ, A_1 ∨ A_2`; `other` is the missing
    /// disjunct.
    Or { side: Side, other: Formula, premise: Box<OneSided> },
    /// From `⊢ Γ, ¬A` and `⊢ Δ, ¬B` infer `⊢ Γ, Δ, ¬(A ∨ B)`.
    NegOr { left: Box<OneSided>, right: Box<OneSided> },
    /// From `⊢ Γ, A[t/x]` infer `⊢ Γ, ∃x A`. The witness may be any term of
    /// type `ι`, not only first-order syntax.
    Ex { witness: Term, var: Ident, matrix: Formula, premise: Box<OneSided> },
    /// From `⊢ Γ, ¬A` infer `⊢ Γ, ¬∃x A[x/α]`, abstracting the eigenvariable
    /// `α`, which must not occur in `Γ`.
    NegEx { eigen: Ident, premise: Box<OneSided> },
    /// From `⊢ Γ, A, A` infer `⊢ Γ, A`.
    Contract { premise: Box<OneSided> },
    /// From `⊢ Γ` infer `⊢ Γ, A`.
    Weak { formula: Formula, premise: Box<OneSided> },
    /// From `⊢ Γ, A` infer `⊢ Γ, ¬¬A`.
    NegNeg { premise: Box<OneSided> },
    /// From `⊢ Γ, A` and `⊢ Δ, ¬A` infer `⊢ Γ, Δ`.
    Cut { formula: Formula, left: Box<OneSided>, right: Box<OneSided> },
    /// Reorders the sequent: conclusion position `j` holds premise formula
    /// `order[j]`.
    Perm { order: Vec<usize>, premise: Box<OneSided> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("rule mismatch at {path}: {detail}")]
    RuleMismatch { path: String, detail: String },
    #[error("eigenvariable violation at {path}: {name} occurs in the conclusion")]
    EigenvariableViolation { path: String, name: Ident },
    #[error("irregular proof: eigenvariable {name} is introduced more than once")]
    RegularityViolation { name: Ident },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("substitution would capture eigenvariable {0}")]
    CaptureRisk(Ident),
}

fn path_str(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let mut s = "root".to_string();
        for i in path {
            s.push('.');
            s.push_str(&i.to_string());
        }
        s
    }
}

fn mismatch(path: &[usize], detail: impl Into<String>) -> CheckError {
    CheckError::RuleMismatch { path: path_str(path), detail: detail.into() }
}

/// Atom arguments must be individuals; free variables take their annotated
/// types.
fn wf_formula(f: &Formula, path: &[usize]) -> Result<(), CheckError> {
    fn args_ok(f: &Formula) -> Result<(), TypeError> {
        match f {
            Formula::Atom(_, args) => {
                for a in args {
                    let mut ctx = Ctx::from_free_vars([a])?;
                    let ty = typecheck(&mut ctx, a)?;
                    if ty != Type::Iota {
                        return Err(TypeError::Mismatch {
                            location: a.to_string(),
                            expected: Type::Iota.to_string(),
                            found: ty.to_string(),
                        });
                    }
                }
                Ok(())
            }
            Formula::Or(a, b) => {
                args_ok(a)?;
                args_ok(b)
            }
            Formula::Not(a) => args_ok(a),
            Formula::Exists(_, a) => args_ok(a),
        }
    }
    args_ok(f).map_err(|e| mismatch(path, format!("ill-formed formula {f}: {e}")))
}

/// A checked proof node: the original rule plus its computed end sequent.
#[derive(Debug)]
pub struct Annotated<'p> {
    pub node: &'p OneSided,
    pub sequent: Sequent,
    pub premises: Vec<Annotated<'p>>,
}

impl<'p> Annotated<'p> {
    pub fn rule_name(&self) -> &'static str {
        match self.node {
            OneSided::Lem(_) => "lem",
            OneSided::Or { .. } => "or",
            OneSided::NegOr { .. } => "nor",
            OneSided::Ex { .. } => "ex",
            OneSided::NegEx { .. } => "nex",
            OneSided::Contract { .. } => "c",
            OneSided::Weak { .. } => "w",
            OneSided::NegNeg { .. } => "nn",
            OneSided::Cut { .. } => "cut",
            OneSided::Perm { .. } => "perm",
        }
    }
}

fn annotate_at<'p>(p: &'p OneSided, path: &mut Vec<usize>) -> Result<Annotated<'p>, CheckError> {
    let prem = |i: usize, q: &'p OneSided, path: &mut Vec<usize>| {
        path.push(i);
        let r = annotate_at(q, path);
        path.pop();
        r
    };
    match p {
        OneSided::Lem(a) => {
            wf_formula(a, path)?;
            Ok(Annotated {
                node: p,
                sequent: Sequent(vec![Formula::not(a.clone()), a.clone()]),
                premises: vec![],
            })
        }
        OneSided::Or { side, other, premise } => {
            wf_formula(other, path)?;
            let sub = prem(0, premise, path)?;
            let mut seq = sub.sequent.0.clone();
            let last = seq.pop().ok_or_else(|| mismatch(path, "or over an empty sequent"))?;
            let disjunction = match side {
                Side::Left => Formula::or(last, other.clone()),
                Side::Right => Formula::or(other.clone(), last),
            };
            seq.push(disjunction);
            Ok(Annotated { node: p, sequent: Sequent(seq), premises: vec![sub] })
        }
        OneSided::NegOr { left, right } => {
            let l = prem(0, left, path)?;
            let r = prem(1, right, path)?;
            let mut ls = l.sequent.0.clone();
            let mut rs = r.sequent.0.clone();
            let la = match ls.pop() {
                Some(Formula::Not(a)) => *a,
                other => {
                    return Err(mismatch(
                        path,
                        format!(
                            "left premise of nor must end in a negation, found {}",
                            other.map(|f| f.to_string()).unwrap_or_else(|| "nothing".into())
                        ),
                    ))
                }
            };
            let ra = match rs.pop() {
                Some(Formula::Not(a)) => *a,
                other => {
                    return Err(mismatch(
                        path,
                        format!(
                            "right premise of nor must end in a negation, found {}",
                            other.map(|f| f.to_string()).unwrap_or_else(|| "nothing".into())
                        ),
                    ))
                }
            };
            let mut seq = ls;
            seq.extend(rs);
            seq.push(Formula::not(Formula::or(la, ra)));
            Ok(Annotated { node: p, sequent: Sequent(seq), premises: vec![l, r] })
        }
        OneSided::Ex { witness, var, matrix, premise } => {
            wf_formula(matrix, path)?;
            let mut ctx = Ctx::from_free_vars([witness])
                .map_err(|e| mismatch(path, format!("bad witness {witness}: {e}")))?;
            match typecheck(&mut ctx, witness) {
                Ok(Type::Iota) => {}
                Ok(other) => {
                    return Err(mismatch(path, format!("witness {witness} has type {other}, not ι")))
                }
                Err(e) => return Err(mismatch(path, format!("bad witness {witness}: {e}"))),
            }
            let sub = prem(0, premise, path)?;
            let mut seq = sub.sequent.0.clone();
            let last = seq.pop().ok_or_else(|| mismatch(path, "ex over an empty sequent"))?;
            let expected = subst_formula(matrix, var, witness);
            if last != expected {
                return Err(mismatch(
                    path,
                    format!("ex premise ends with {last}, expected the instance {expected}"),
                ));
            }
            seq.push(Formula::exists(var.clone(), matrix.clone()));
            Ok(Annotated { node: p, sequent: Sequent(seq), premises: vec![sub] })
        }
        OneSided::NegEx { eigen, premise } => {
            let sub = prem(0, premise, path)?;
            let mut seq = sub.sequent.0.clone();
            let last = seq.pop().ok_or_else(|| mismatch(path, "nex over an empty sequent"))?;
            let Formula::Not(inst) = last else {
                return Err(mismatch(path, format!("nex premise must end in a negation, found {last}")));
            };
            for g in &seq {
                if g.free_ivars().contains(eigen) {
                    return Err(CheckError::EigenvariableViolation {
                        path: path_str(path),
                        name: eigen.clone(),
                    });
                }
            }
            let mut avoid: HashSet<Ident> = HashSet::new();
            inst.all_names(&mut avoid);
            let x = fresh_name("x", &avoid);
            let matrix = subst_formula(&inst, eigen, &Term::ivar(x.clone()));
            seq.push(Formula::not(Formula::exists(x, matrix)));
            Ok(Annotated { node: p, sequent: Sequent(seq), premises: vec![sub] })
        }
        OneSided::Contract { premise } => {
            let sub = prem(0, premise, path)?;
            let mut seq = sub.sequent.0.clone();
            if seq.len() < 2 {
                return Err(mismatch(path, "contraction needs two formulas"));
            }
            let a = seq.pop().unwrap();
            let b = seq.pop().unwrap();
            if a != b {
                return Err(mismatch(path, format!("cannot contract {b} with {a}")));
            }
            seq.push(b);
            Ok(Annotated { node: p, sequent: Sequent(seq), premises: vec![sub] })
        }
        OneSided::Weak { formula, premise } => {
            wf_formula(formula, path)?;
            let sub = prem(0, premise, path)?;
            let mut seq = sub.sequent.0.clone();
            seq.push(formula.clone());
            Ok(Annotated { node: p, sequent: Sequent(seq), premises: vec![sub] })
        }
        OneSided::NegNeg { premise } => {
            let sub = prem(0, premise, path)?;
            let mut seq = sub.sequent.0.clone();
            let last = seq.pop().ok_or_else(|| mismatch(path, "nn over an empty sequent"))?;
            seq.push(Formula::not(Formula::not(last)));
            Ok(Annotated { node: p, sequent: Sequent(seq), premises: vec![sub] })
        }
        OneSided::Cut { formula, left, right } => {
            wf_formula(formula, path)?;
            let l = prem(0, left, path)?;
            let r = prem(1, right, path)?;
            let mut ls = l.sequent.0.clone();
            let mut rs = r.sequent.0.clone();
            match ls.pop() {
                Some(a) if a == *formula => {}
                other => {
                    return Err(mismatch(
                        path,
                        format!(
                            "left cut premise must end with {formula}, found {}",
                            other.map(|f| f.to_string()).unwrap_or_else(|| "nothing".into())
                        ),
                    ))
                }
            }
            let negated = Formula::not(formula.clone());
            match rs.pop() {
                Some(a) if a == negated => {}
                other => {
                    return Err(mismatch(
                        path,
                        format!(
                            "right cut premise must end with {negated}, found {}",
                            other.map(|f| f.to_string()).unwrap_or_else(|| "nothing".into())
                        ),
                    ))
                }
            }
            ls.extend(rs);
            Ok(Annotated { node: p, sequent: Sequent(ls), premises: vec![l, r] })
        }
        OneSided::Perm { order, premise } => {
            let sub = prem(0, premise, path)?;
            let seq = &sub.sequent.0;
            if !is_permutation(order, seq.len()) {
                return Err(mismatch(
                    path,
                    format!("perm {:?} is not a permutation of 0..{}", order, seq.len()),
                ));
            }
            let out = order.iter().map(|&i| seq[i].clone()).collect();
            Ok(Annotated { node: p, sequent: Sequent(out), premises: vec![sub] })
        }
    }
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Eigenvariables of every `¬∃` node, in traversal order, with repeats.
pub fn eigenvariables(p: &OneSided) -> Vec<Ident> {
    fn go(p: &OneSided, out: &mut Vec<Ident>) {
        match p {
            OneSided::Lem(_) => {}
            OneSided::NegEx { eigen, premise } => {
                out.push(eigen.clone());
                go(premise, out);
            }
            OneSided::Or { premise, .. }
            | OneSided::Ex { premise, .. }
            | OneSided::Contract { premise }
            | OneSided::Weak { premise, .. }
            | OneSided::NegNeg { premise }
            | OneSided::Perm { premise, .. } => go(premise, out),
            OneSided::NegOr { left, right } | OneSided::Cut { left, right, .. } => {
                go(left, out);
                go(right, out);
            }
        }
    }
    let mut out = Vec::new();
    go(p, &mut out);
    out
}

fn check_regularity(p: &OneSided) -> Result<(), CheckError> {
    let mut seen = HashSet::new();
    for name in eigenvariables(p) {
        if !seen.insert(name.clone()) {
            return Err(CheckError::RegularityViolation { name });
        }
    }
    Ok(())
}

/// Checks every rule schema, the eigenvariable conditions, and regularity,
/// returning the end sequent together with per-node sequents.
pub fn check_one_sided_annotated(p: &OneSided) -> Result<Annotated<'_>, CheckError> {
    let a = annotate_at(p, &mut Vec::new())?;
    check_regularity(p)?;
    Ok(a)
}

pub fn check_one_sided(p: &OneSided) -> Result<Sequent, CheckError> {
    check_one_sided_annotated(p).map(|a| a.sequent)
}

/// Every identifier appearing anywhere in the proof. Seeds fresh-name
/// generation for regularization.
pub fn proof_names(p: &OneSided) -> HashSet<Ident> {
    fn go(p: &OneSided, out: &mut HashSet<Ident>) {
        match p {
            OneSided::Lem(a) => a.all_names(out),
            OneSided::Or { other, premise, .. } => {
                other.all_names(out);
                go(premise, out);
            }
            OneSided::NegOr { left, right } => {
                go(left, out);
                go(right, out);
            }
            OneSided::Ex { witness, var, matrix, premise } => {
                witness.all_names(out);
                out.insert(var.clone());
                matrix.all_names(out);
                go(premise, out);
            }
            OneSided::NegEx { eigen, premise } => {
                out.insert(eigen.clone());
                go(premise, out);
            }
            OneSided::Contract { premise } | OneSided::NegNeg { premise } => go(premise, out),
            OneSided::Weak { formula, premise } => {
                formula.all_names(out);
                go(premise, out);
            }
            OneSided::Cut { formula, left, right } => {
                formula.all_names(out);
                go(left, out);
                go(right, out);
            }
            OneSided::Perm { premise, .. } => go(premise, out),
        }
    }
    let mut out = HashSet::new();
    go(p, &mut out);
    out
}

/// Substitutes a term for a free individual variable in every formula and
/// witness of the proof, stopping below any `¬∃` node that introduces the
/// same name.
fn subst_eigen_scoped(p: &OneSided, x: &Ident, t: &Term) -> OneSided {
    let sf = |f: &Formula| subst_formula(f, x, t);
    match p {
        OneSided::Lem(a) => OneSided::Lem(sf(a)),
        OneSided::Or { side, other, premise } => OneSided::Or {
            side: *side,
            other: sf(other),
            premise: Box::new(subst_eigen_scoped(premise, x, t)),
        },
        OneSided::NegOr { left, right } => OneSided::NegOr {
            left: Box::new(subst_eigen_scoped(left, x, t)),
            right: Box::new(subst_eigen_scoped(right, x, t)),
        },
        OneSided::Ex { witness, var, matrix, premise } => {
            let bound = subst_formula(&Formula::Exists(var.clone(), Box::new(matrix.clone())), x, t);
            let Formula::Exists(var2, matrix2) = bound else { unreachable!() };
            OneSided::Ex {
                witness: crate::term::subst(witness, x, t),
                var: var2,
                matrix: *matrix2,
                premise: Box::new(subst_eigen_scoped(premise, x, t)),
            }
        }
        OneSided::NegEx { eigen, premise } => {
            if eigen == x {
                p.clone()
            } else {
                OneSided::NegEx {
                    eigen: eigen.clone(),
                    premise: Box::new(subst_eigen_scoped(premise, x, t)),
                }
            }
        }
        OneSided::Contract { premise } => {
            OneSided::Contract { premise: Box::new(subst_eigen_scoped(premise, x, t)) }
        }
        OneSided::Weak { formula, premise } => OneSided::Weak {
            formula: sf(formula),
            premise: Box::new(subst_eigen_scoped(premise, x, t)),
        },
        OneSided::NegNeg { premise } => {
            OneSided::NegNeg { premise: Box::new(subst_eigen_scoped(premise, x, t)) }
        }
        OneSided::Cut { formula, left, right } => OneSided::Cut {
            formula: sf(formula),
            left: Box::new(subst_eigen_scoped(left, x, t)),
            right: Box::new(subst_eigen_scoped(right, x, t)),
        },
        OneSided::Perm { order, premise } => OneSided::Perm {
            order: order.clone(),
            premise: Box::new(subst_eigen_scoped(premise, x, t)),
        },
    }
}

/// Substitutes `t` for the free variable `x` throughout the proof. Rejected
/// when `x` is one of the proof's eigenvariables, or when `t` mentions one;
/// either would silently change what some `¬∃` node binds.
pub fn proof_subst(p: &OneSided, x: &Ident, t: &Term) -> Result<OneSided, SubstError> {
    let eigens: HashSet<Ident> = eigenvariables(p).into_iter().collect();
    if eigens.contains(x) {
        return Err(SubstError::CaptureRisk(x.clone()));
    }
    if let Some(name) = t.free_var_names().into_iter().find(|n| eigens.contains(n)) {
        return Err(SubstError::CaptureRisk(name));
    }
    Ok(subst_eigen_scoped(p, x, t))
}

/// Renames eigenvariables until each `¬∃` node introduces a distinct one.
/// Already-regular proofs come back unchanged, so this is idempotent.
pub fn regularize(p: &OneSided) -> OneSided {
    fn go(p: &OneSided, used: &mut HashSet<Ident>, allocated: &mut HashSet<Ident>) -> OneSided {
        match p {
            OneSided::NegEx { eigen, premise } => {
                let sub = go(premise, used, allocated);
                if allocated.contains(eigen) {
                    let e2 = fresh_name(eigen, used);
                    used.insert(e2.clone());
                    allocated.insert(e2.clone());
                    OneSided::NegEx {
                        eigen: e2.clone(),
                        premise: Box::new(subst_eigen_scoped(&sub, eigen, &Term::ivar(e2))),
                    }
                } else {
                    allocated.insert(eigen.clone());
                    OneSided::NegEx { eigen: eigen.clone(), premise: Box::new(sub) }
                }
            }
            OneSided::Lem(_) => p.clone(),
            OneSided::Or { side, other, premise } => OneSided::Or {
                side: *side,
                other: other.clone(),
                premise: Box::new(go(premise, used, allocated)),
            },
            OneSided::NegOr { left, right } => OneSided::NegOr {
                left: Box::new(go(left, used, allocated)),
                right: Box::new(go(right, used, allocated)),
            },
            OneSided::Ex { witness, var, matrix, premise } => OneSided::Ex {
                witness: witness.clone(),
                var: var.clone(),
                matrix: matrix.clone(),
                premise: Box::new(go(premise, used, allocated)),
            },
            OneSided::Contract { premise } => {
                OneSided::Contract { premise: Box::new(go(premise, used, allocated)) }
            }
            OneSided::Weak { formula, premise } => OneSided::Weak {
                formula: formula.clone(),
                premise: Box::new(go(premise, used, allocated)),
            },
            OneSided::NegNeg { premise } => {
                OneSided::NegNeg { premise: Box::new(go(premise, used, allocated)) }
            }
            OneSided::Cut { formula, left, right } => OneSided::Cut {
                formula: formula.clone(),
                left: Box::new(go(left, used, allocated)),
                right: Box::new(go(right, used, allocated)),
            },
            OneSided::Perm { order, premise } => OneSided::Perm {
                order: order.clone(),
                premise: Box::new(go(premise, used, allocated)),
            },
        }
    }
    let mut used = proof_names(p);
    let mut allocated = HashSet::new();
    go(p, &mut used, &mut allocated)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoSided {
    /// `A ⊢ A`
    Id(Formula),
    /// From `Γ ⊢ A_i, Δ` infer `Γ ⊢ A_1 ∨ A_2, Δ`.
    OrR { side: Side, other: Formula, premise: Box<TwoSided> },
    /// From `Γ, A ⊢ Δ` and `Γ, B ⊢ Δ` (same contexts) infer `Γ, A ∨ B ⊢ Δ`.
    OrL { left: Box<TwoSided>, right: Box<TwoSided> },
    /// From `Γ, A ⊢ Δ` infer `Γ ⊢ ¬A, Δ`.
    NegR { premise: Box<TwoSided> },
    /// From `Γ ⊢ A, Δ` infer `Γ, ¬A ⊢ Δ`.
    NegL { premise: Box<TwoSided> },
    /// From `Γ ⊢ A[t/x], Δ` infer `Γ ⊢ ∃x A, Δ`.
    ExR { witness: FoTerm, var: Ident, matrix: Formula, premise: Box<TwoSided> },
    /// From `Γ, A ⊢ Δ` infer `Γ, ∃x A[x/α] ⊢ Δ`, abstracting `α`, which must
    /// not occur in the conclusion.
    ExL { eigen: Ident, premise: Box<TwoSided> },
    ContractR { premise: Box<TwoSided> },
    ContractL { premise: Box<TwoSided> },
    WeakR { formula: Formula, premise: Box<TwoSided> },
    WeakL { formula: Formula, premise: Box<TwoSided> },
    /// From `Γ_1 ⊢ A, Δ_1` and `Γ_2, A ⊢ Δ_2` infer `Γ_1, Γ_2 ⊢ Δ_1, Δ_2`.
    Cut { formula: Formula, left: Box<TwoSided>, right: Box<TwoSided> },
    /// Reorders both sides independently.
    Perm { ante: Vec<usize>, succ: Vec<usize>, premise: Box<TwoSided> },
}

fn check_two_at(p: &TwoSided, path: &mut Vec<usize>) -> Result<TwoSequent, CheckError> {
    let prem = |i: usize, q: &TwoSided, path: &mut Vec<usize>| {
        path.push(i);
        let r = check_two_at(q, path);
        path.pop();
        r
    };
    match p {
        TwoSided::Id(a) => {
            wf_formula(a, path)?;
            Ok(TwoSequent { antecedent: vec![a.clone()], succedent: vec![a.clone()] })
        }
        TwoSided::OrR { side, other, premise } => {
            wf_formula(other, path)?;
            let mut s = prem(0, premise, path)?;
            if s.succedent.is_empty() {
                return Err(mismatch(path, "or-right over an empty succedent"));
            }
            let first = s.succedent.remove(0);
            let disjunction = match side {
                Side::Left => Formula::or(first, other.clone()),
                Side::Right => Formula::or(other.clone(), first),
            };
            s.succedent.insert(0, disjunction);
            Ok(s)
        }
        TwoSided::OrL { left, right } => {
            let mut l = prem(0, left, path)?;
            let mut r = prem(1, right, path)?;
            let a = l
                .antecedent
                .pop()
                .ok_or_else(|| mismatch(path, "or-left premise has an empty antecedent"))?;
            let b = r
                .antecedent
                .pop()
                .ok_or_else(|| mismatch(path, "or-left premise has an empty antecedent"))?;
            if l.antecedent != r.antecedent || l.succedent != r.succedent {
                return Err(mismatch(path, "or-left premises must share their contexts"));
            }
            l.antecedent.push(Formula::or(a, b));
            Ok(l)
        }
        TwoSided::NegR { premise } => {
            let mut s = prem(0, premise, path)?;
            let a = s
                .antecedent
                .pop()
                .ok_or_else(|| mismatch(path, "neg-right over an empty antecedent"))?;
            s.succedent.insert(0, Formula::not(a));
            Ok(s)
        }
        TwoSided::NegL { premise } => {
            let mut s = prem(0, premise, path)?;
            if s.succedent.is_empty() {
                return Err(mismatch(path, "neg-left over an empty succedent"));
            }
            let a = s.succedent.remove(0);
            s.antecedent.push(Formula::not(a));
            Ok(s)
        }
        TwoSided::ExR { witness, var, matrix, premise } => {
            wf_formula(matrix, path)?;
            let mut s = prem(0, premise, path)?;
            if s.succedent.is_empty() {
                return Err(mismatch(path, "ex-right over an empty succedent"));
            }
            let first = s.succedent.remove(0);
            let expected = subst_formula(matrix, var, &witness.to_term());
            if first != expected {
                return Err(mismatch(
                    path,
                    format!("ex-right premise starts with {first}, expected the instance {expected}"),
                ));
            }
            s.succedent.insert(0, Formula::exists(var.clone(), matrix.clone()));
            Ok(s)
        }
        TwoSided::ExL { eigen, premise } => {
            let mut s = prem(0, premise, path)?;
            let inst = s
                .antecedent
                .pop()
                .ok_or_else(|| mismatch(path, "ex-left over an empty antecedent"))?;
            for g in s.antecedent.iter().chain(s.succedent.iter()) {
                if g.free_ivars().contains(eigen) {
                    return Err(CheckError::EigenvariableViolation {
                        path: path_str(path),
                        name: eigen.clone(),
                    });
                }
            }
            let mut avoid: HashSet<Ident> = HashSet::new();
            inst.all_names(&mut avoid);
            let x = fresh_name("x", &avoid);
            let matrix = subst_formula(&inst, eigen, &Term::ivar(x.clone()));
            s.antecedent.push(Formula::exists(x, matrix));
            Ok(s)
        }
        TwoSided::ContractR { premise } => {
            let mut s = prem(0, premise, path)?;
            if s.succedent.len() < 2 {
                return Err(mismatch(path, "contract-right needs two succedent formulas"));
            }
            if s.succedent[0] != s.succedent[1] {
                return Err(mismatch(
                    path,
                    format!("cannot contract {} with {}", s.succedent[0], s.succedent[1]),
                ));
            }
            s.succedent.remove(0);
            Ok(s)
        }
        TwoSided::ContractL { premise } => {
            let mut s = prem(0, premise, path)?;
            let n = s.antecedent.len();
            if n < 2 {
                return Err(mismatch(path, "contract-left needs two antecedent formulas"));
            }
            if s.antecedent[n - 1] != s.antecedent[n - 2] {
                return Err(mismatch(
                    path,
                    format!("cannot contract {} with {}", s.antecedent[n - 2], s.antecedent[n - 1]),
                ));
            }
            s.antecedent.pop();
            Ok(s)
        }
        TwoSided::WeakR { formula, premise } => {
            wf_formula(formula, path)?;
            let mut s = prem(0, premise, path)?;
            s.succedent.insert(0, formula.clone());
            Ok(s)
        }
        TwoSided::WeakL { formula, premise } => {
            wf_formula(formula, path)?;
            let mut s = prem(0, premise, path)?;
            s.antecedent.push(formula.clone());
            Ok(s)
        }
        TwoSided::Cut { formula, left, right } => {
            wf_formula(formula, path)?;
            let mut l = prem(0, left, path)?;
            let mut r = prem(1, right, path)?;
            if l.succedent.is_empty() || l.succedent[0] != *formula {
                return Err(mismatch(path, format!("left cut premise must start its succedent with {formula}")));
            }
            l.succedent.remove(0);
            match r.antecedent.pop() {
                Some(a) if a == *formula => {}
                _ => {
                    return Err(mismatch(
                        path,
                        format!("right cut premise must end its antecedent with {formula}"),
                    ))
                }
            }
            Ok(TwoSequent {
                antecedent: l.antecedent.into_iter().chain(r.antecedent).collect(),
                succedent: l.succedent.into_iter().chain(r.succedent).collect(),
            })
        }
        TwoSided::Perm { ante, succ, premise } => {
            let s = prem(0, premise, path)?;
            if !is_permutation(ante, s.antecedent.len()) || !is_permutation(succ, s.succedent.len())
            {
                return Err(mismatch(path, "perm lists must permute both sides"));
            }
            Ok(TwoSequent {
                antecedent: ante.iter().map(|&i| s.antecedent[i].clone()).collect(),
                succedent: succ.iter().map(|&i| s.succedent[i].clone()).collect(),
            })
        }
    }
}

pub fn check_two_sided(p: &TwoSided) -> Result<TwoSequent, CheckError> {
    check_two_at(p, &mut Vec::new())
}
