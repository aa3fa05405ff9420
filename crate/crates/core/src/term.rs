//! Terms and propositions of the realizer calculus.
//!
//! Types are simple types over two base types: `ι` (individuals of the
//! first-order language) and `□` (the trivial type with sole inhabitant `ε`).
//! Terms extend the first-order language with pairs, projections, lambda
//! abstraction, application, and `case[A]{u}{v}`, a conditional whose guard
//! is a proposition rather than a term. Propositions and terms are mutually
//! recursive through that guard.
//!
//! Term equality throughout this crate means alpha equality; `PartialEq` is
//! implemented accordingly and there is deliberately no `Hash`.

use std::collections::HashSet;
use std::fmt;
use std::rc::Rc;

pub type Ident = String;

// Children sit behind `Rc` because types are cloned pervasively (every
// variable occurrence carries its type) and interpretation types grow large.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    Iota,
    Null,
    Prod(Rc<Type>, Rc<Type>),
    Arrow(Rc<Type>, Rc<Type>),
}

impl Type {
    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Rc::new(a), Rc::new(b))
    }

    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Rc::new(a), Rc::new(b))
    }

    pub fn depth(&self) -> usize {
        match self {
            Type::Iota | Type::Null => 0,
            Type::Prod(a, b) | Type::Arrow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Iota => write!(f, "ι"),
            Type::Null => write!(f, "□"),
            Type::Prod(a, b) => write!(f, "({} × {})", a, b),
            Type::Arrow(a, b) => write!(f, "({} → {})", a, b),
        }
    }
}

// Term and Prop children sit behind `Rc` for the same reason as `Type`'s:
// reduction rebuilds a spine per step while sharing every untouched subtree,
// which keeps stepping large terms linear instead of quadratic.
#[derive(Debug, Clone)]
pub enum Term {
    /// The inhabitant of `□`.
    Epsilon,
    /// A declared constant of the first-order signature, type `ι`.
    Const(Ident),
    /// A signature function symbol applied to `ι`-typed arguments.
    FnApp(Ident, Vec<Term>),
    /// A variable together with its annotated type. Individual variables of
    /// formulas appear as `Var(x, Iota)`.
    Var(Ident, Type),
    Pair(Rc<Term>, Rc<Term>),
    /// `index` is 1 or 2.
    Proj(u8, Rc<Term>),
    Abs(Ident, Type, Rc<Term>),
    App(Rc<Term>, Rc<Term>),
    /// `case[A]{u}{v}`: equal to `u` where the guard holds and to `v` where
    /// it does not. Guards are inert under reduction.
    Case(Prop, Rc<Term>, Rc<Term>),
}

/// Quantifier-free propositions, the guards of `case` and the output language
/// of the verifier. Atom arguments are `ι`-typed terms; equations may relate
/// terms of any one type.
#[derive(Debug, Clone)]
pub enum Prop {
    Atom(Ident, Vec<Term>),
    Or(Rc<Prop>, Rc<Prop>),
    Not(Rc<Prop>),
    Eq(Rc<Term>, Rc<Term>),
}

impl Term {
    pub fn ivar(name: impl Into<Ident>) -> Term {
        Term::Var(name.into(), Type::Iota)
    }

    pub fn cnst(name: impl Into<Ident>) -> Term {
        Term::Const(name.into())
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Rc::new(a), Rc::new(b))
    }

    pub fn proj(index: u8, t: Term) -> Term {
        debug_assert!(index == 1 || index == 2);
        Term::Proj(index, Rc::new(t))
    }

    pub fn abs(x: impl Into<Ident>, ty: Type, body: Term) -> Term {
        Term::Abs(x.into(), ty, Rc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Rc::new(f), Rc::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn case(guard: Prop, yes: Term, no: Term) -> Term {
        Term::Case(guard, Rc::new(yes), Rc::new(no))
    }

    /// Free variables with their annotated types, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<(Ident, Type)> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    pub fn free_var_names(&self) -> HashSet<Ident> {
        self.free_vars().into_iter().map(|(n, _)| n).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Node count, including terms embedded in case guards.
    pub fn size(&self) -> usize {
        match self {
            Term::Epsilon | Term::Const(_) | Term::Var(_, _) => 1,
            Term::FnApp(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Term::Pair(a, b) | Term::App(a, b) => 1 + a.size() + b.size(),
            Term::Proj(_, a) => 1 + a.size(),
            Term::Abs(_, _, body) => 1 + body.size(),
            Term::Case(guard, yes, no) => 1 + guard.size() + yes.size() + no.size(),
        }
    }

    fn collect_free(&self, bound: &mut Vec<Ident>, out: &mut Vec<(Ident, Type)>) {
        match self {
            Term::Epsilon | Term::Const(_) => {}
            Term::Var(x, ty) => {
                if !bound.iter().any(|b| b == x)
                    && !out.iter().any(|(n, t)| n == x && t == ty)
                {
                    out.push((x.clone(), ty.clone()));
                }
            }
            Term::FnApp(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Term::Pair(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Proj(_, a) => a.collect_free(bound, out),
            Term::Abs(x, _, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Case(guard, yes, no) => {
                guard.collect_free(bound, out);
                yes.collect_free(bound, out);
                no.collect_free(bound, out);
            }
        }
    }

    /// Every identifier appearing anywhere, bound or free. Used to seed fresh
    /// name generation.
    pub fn all_names(&self, out: &mut HashSet<Ident>) {
        match self {
            Term::Epsilon => {}
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::Var(x, _) => {
                out.insert(x.clone());
            }
            Term::FnApp(f, args) => {
                out.insert(f.clone());
                for a in args {
                    a.all_names(out);
                }
            }
            Term::Pair(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Term::Proj(_, a) => a.all_names(out),
            Term::Abs(x, _, body) => {
                out.insert(x.clone());
                body.all_names(out);
            }
            Term::App(f, a) => {
                f.all_names(out);
                a.all_names(out);
            }
            Term::Case(guard, yes, no) => {
                guard.all_names(out);
                yes.all_names(out);
                no.all_names(out);
            }
        }
    }
}

impl Prop {
    pub fn atom(p: impl Into<Ident>, args: Vec<Term>) -> Prop {
        Prop::Atom(p.into(), args)
    }

    pub fn or(a: Prop, b: Prop) -> Prop {
        Prop::Or(Rc::new(a), Rc::new(b))
    }

    pub fn not(a: Prop) -> Prop {
        Prop::Not(Rc::new(a))
    }

    pub fn eq(a: Term, b: Term) -> Prop {
        Prop::Eq(Rc::new(a), Rc::new(b))
    }

    /// `A ∧ B` desugared as `¬(¬A ∨ ¬B)`.
    pub fn and(a: Prop, b: Prop) -> Prop {
        Prop::not(Prop::or(Prop::not(a), Prop::not(b)))
    }

    pub fn ors(mut disjuncts: Vec<Prop>) -> Prop {
        let first = disjuncts.remove(0);
        disjuncts.into_iter().fold(first, Prop::or)
    }

    /// Node count over connectives and every embedded term.
    pub fn size(&self) -> usize {
        match self {
            Prop::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Prop::Or(a, b) => 1 + a.size() + b.size(),
            Prop::Not(a) => 1 + a.size(),
            Prop::Eq(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn collect_free(&self, bound: &mut Vec<Ident>, out: &mut Vec<(Ident, Type)>) {
        match self {
            Prop::Atom(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Prop::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Prop::Not(a) => a.collect_free(bound, out),
            Prop::Eq(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }

    pub fn free_vars(&self) -> Vec<(Ident, Type)> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    pub fn all_names(&self, out: &mut HashSet<Ident>) {
        match self {
            Prop::Atom(p, args) => {
                out.insert(p.clone());
                for a in args {
                    a.all_names(out);
                }
            }
            Prop::Or(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Prop::Not(a) => a.all_names(out),
            Prop::Eq(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
        }
    }

    /// Substitutes into every embedded term.
    pub fn subst(&self, x: &Ident, s: &Term) -> Prop {
        match self {
            Prop::Atom(p, args) => Prop::Atom(p.clone(), args.iter().map(|a| subst(a, x, s)).collect()),
            Prop::Or(a, b) => Prop::or(a.subst(x, s), b.subst(x, s)),
            Prop::Not(a) => Prop::not(a.subst(x, s)),
            Prop::Eq(a, b) => Prop::eq(subst(a, x, s), subst(b, x, s)),
        }
    }
}

/// Parallel binder stacks for alpha comparison. Formula comparison in `logic`
/// shares this so that quantified individual variables and lambda binders are
/// tracked uniformly.
#[derive(Default)]
pub struct AlphaCtx {
    left: Vec<Ident>,
    right: Vec<Ident>,
}

impl AlphaCtx {
    pub fn bind(&mut self, l: &Ident, r: &Ident) {
        self.left.push(l.clone());
        self.right.push(r.clone());
    }

    pub fn unbind(&mut self) {
        self.left.pop();
        self.right.pop();
    }

    pub fn var_eq(&self, l: &Ident, r: &Ident) -> bool {
        let li = self.left.iter().rposition(|n| n == l);
        let ri = self.right.iter().rposition(|n| n == r);
        match (li, ri) {
            (Some(a), Some(b)) => a == b,
            (None, None) => l == r,
            _ => false,
        }
    }
}

pub fn alpha_eq_term(a: &Term, b: &Term, ctx: &mut AlphaCtx) -> bool {
    match (a, b) {
        (Term::Epsilon, Term::Epsilon) => true,
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::Var(x, tx), Term::Var(y, ty)) => ctx.var_eq(x, y) && tx == ty,
        (Term::FnApp(f, xs), Term::FnApp(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_eq_term(x, y, ctx))
        }
        (Term::Pair(a1, a2), Term::Pair(b1, b2)) => {
            alpha_eq_term(a1, b1, ctx) && alpha_eq_term(a2, b2, ctx)
        }
        (Term::Proj(i, x), Term::Proj(j, y)) => i == j && alpha_eq_term(x, y, ctx),
        (Term::Abs(x, tx, bx), Term::Abs(y, ty, by)) => {
            if tx != ty {
                return false;
            }
            ctx.bind(x, y);
            let r = alpha_eq_term(bx, by, ctx);
            ctx.unbind();
            r
        }
        (Term::App(f, x), Term::App(g, y)) => alpha_eq_term(f, g, ctx) && alpha_eq_term(x, y, ctx),
        (Term::Case(p, x1, x2), Term::Case(q, y1, y2)) => {
            alpha_eq_prop(p, q, ctx) && alpha_eq_term(x1, y1, ctx) && alpha_eq_term(x2, y2, ctx)
        }
        _ => false,
    }
}

pub fn alpha_eq_prop(a: &Prop, b: &Prop, ctx: &mut AlphaCtx) -> bool {
    match (a, b) {
        (Prop::Atom(p, xs), Prop::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_eq_term(x, y, ctx))
        }
        (Prop::Or(a1, a2), Prop::Or(b1, b2)) => {
            alpha_eq_prop(a1, b1, ctx) && alpha_eq_prop(a2, b2, ctx)
        }
        (Prop::Not(x), Prop::Not(y)) => alpha_eq_prop(x, y, ctx),
        (Prop::Eq(a1, a2), Prop::Eq(b1, b2)) => {
            alpha_eq_term(a1, b1, ctx) && alpha_eq_term(a2, b2, ctx)
        }
        _ => false,
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        alpha_eq_term(self, other, &mut AlphaCtx::default())
    }
}

impl Eq for Term {}

impl PartialEq for Prop {
    fn eq(&self, other: &Self) -> bool {
        alpha_eq_prop(self, other, &mut AlphaCtx::default())
    }
}

impl Eq for Prop {}

/// Picks a name based on `stem` that avoids `avoid`. Trailing digits of the
/// stem are stripped so renaming `x1` yields `x2`, not `x11`.
pub fn fresh_name(stem: &str, avoid: &HashSet<Ident>) -> Ident {
    let base: String = {
        let trimmed = stem.trim_end_matches(|c: char| c.is_ascii_digit());
        if trimmed.is_empty() { stem.to_string() } else { trimmed.to_string() }
    };
    if base != stem && !avoid.contains(stem) {
        return stem.to_string();
    }
    if !avoid.contains(&base) {
        return base;
    }
    let mut k: u64 = 1;
    loop {
        let cand = format!("{base}{k}");
        if !avoid.contains(&cand) {
            return cand;
        }
        k += 1;
    }
}

/// Capture-avoiding substitution of `s` for the free variable `x`. Descends
/// into case guards: a guard may mention variables bound outside the case.
pub fn subst(t: &Term, x: &Ident, s: &Term) -> Term {
    match t {
        Term::Epsilon | Term::Const(_) => t.clone(),
        Term::Var(y, _) if y == x => s.clone(),
        Term::Var(_, _) => t.clone(),
        Term::FnApp(f, args) => {
            Term::FnApp(f.clone(), args.iter().map(|a| subst(a, x, s)).collect())
        }
        Term::Pair(a, b) => Term::pair(subst(a, x, s), subst(b, x, s)),
        Term::Proj(i, a) => Term::proj(*i, subst(a, x, s)),
        Term::Abs(y, ty, body) => {
            if y == x {
                return t.clone();
            }
            if s.free_var_names().contains(y) && body_mentions(body, x) {
                let mut avoid: HashSet<Ident> = body.free_var_names();
                avoid.extend(s.free_var_names());
                avoid.insert(x.clone());
                avoid.insert(y.clone());
                let y2 = fresh_name(y, &avoid);
                let renamed = subst(body, y, &Term::Var(y2.clone(), ty.clone()));
                Term::Abs(y2, ty.clone(), Rc::new(subst(&renamed, x, s)))
            } else if body_mentions(body, x) {
                Term::Abs(y.clone(), ty.clone(), Rc::new(subst(body, x, s)))
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => Term::app(subst(f, x, s), subst(a, x, s)),
        Term::Case(guard, yes, no) => {
            Term::Case(guard.subst(x, s), Rc::new(subst(yes, x, s)), Rc::new(subst(no, x, s)))
        }
    }
}

fn body_mentions(body: &Term, x: &Ident) -> bool {
    body.free_var_names().contains(x)
}

/// The canonical inhabitant of a type: `ε` at `□`, the designated constant at
/// `ι`, pairs of inhabitants at products, and constant functions at arrows.
pub fn inhabitant(ty: &Type, constant: &str) -> Term {
    match ty {
        Type::Null => Term::Epsilon,
        Type::Iota => Term::cnst(constant),
        Type::Prod(a, b) => Term::pair(inhabitant(a, constant), inhabitant(b, constant)),
        Type::Arrow(a, b) => Term::abs("z", (**a).clone(), inhabitant(b, constant)),
    }
}

fn atomic(t: &Term) -> bool {
    matches!(t, Term::Epsilon | Term::Const(_) | Term::Var(_, _) | Term::FnApp(_, _))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Epsilon => write!(f, "ε"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(x, _) => write!(f, "{x}"),
            Term::FnApp(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Term::Pair(a, b) => write!(f, "⟨{a},{b}⟩"),
            Term::Proj(i, a) => {
                if atomic(a) || matches!(**a, Term::Pair(_, _)) {
                    write!(f, "π{i} {a}")
                } else {
                    write!(f, "π{i} ({a})")
                }
            }
            Term::Abs(x, ty, body) => write!(f, "(λ{x}:{ty}. {body})"),
            Term::App(g, a) => write!(f, "({g} {a})"),
            Term::Case(guard, yes, no) => write!(f, "case[{guard}]{{{yes}}}{{{no}}}"),
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Atom(p, args) => {
                if args.is_empty() {
                    write!(f, "{p}")
                } else {
                    write!(f, "{p}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")
                }
            }
            Prop::Or(a, b) => write!(f, "({a} ∨ {b})"),
            Prop::Not(a) => write!(f, "¬{a}"),
            Prop::Eq(a, b) => write!(f, "{a} ≡ {b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_of(t: Term) -> Prop {
        Prop::atom("P", vec![t])
    }

    #[test]
    fn alpha_equality_renames_binders() {
        let a = Term::abs("x", Type::Iota, Term::ivar("x"));
        let b = Term::abs("y", Type::Iota, Term::ivar("y"));
        assert_eq!(a, b);
        let c = Term::abs("x", Type::Null, Term::Var("x".into(), Type::Null));
        assert_ne!(a, c);
    }

    #[test]
    fn alpha_equality_distinguishes_free_variables() {
        assert_ne!(Term::ivar("x"), Term::ivar("y"));
        assert_eq!(Term::ivar("x"), Term::ivar("x"));
        // Bound on one side, free on the other.
        let a = Term::abs("x", Type::Iota, Term::ivar("x"));
        let b = Term::abs("x", Type::Iota, Term::ivar("y"));
        assert_ne!(a, b);
    }

    #[test]
    fn alpha_equality_sees_case_guards() {
        let a = Term::case(p_of(Term::cnst("c")), Term::Epsilon, Term::Epsilon);
        let b = Term::case(p_of(Term::cnst("c")), Term::Epsilon, Term::Epsilon);
        let c = Term::case(p_of(Term::cnst("d")), Term::Epsilon, Term::Epsilon);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn subst_replaces_free_occurrences() {
        let t = Term::ivar("x");
        assert_eq!(subst(&t, &"x".to_string(), &Term::cnst("c")), Term::cnst("c"));
        let shadowed = Term::abs("x", Type::Iota, Term::ivar("x"));
        assert_eq!(subst(&shadowed, &"x".to_string(), &Term::cnst("c")), shadowed);
    }

    #[test]
    fn subst_avoids_capture() {
        // (λy:ι. x)[y/x] must rename the binder.
        let t = Term::abs("y", Type::Iota, Term::ivar("x"));
        let got = subst(&t, &"x".to_string(), &Term::ivar("y"));
        let want = Term::abs("w", Type::Iota, Term::ivar("y"));
        assert_eq!(got, want);
        match got {
            Term::Abs(name, _, _) => assert_ne!(name, "y"),
            _ => panic!("expected abstraction"),
        }
    }

    #[test]
    fn subst_descends_into_case_guards() {
        let t = Term::case(p_of(Term::ivar("x")), Term::Epsilon, Term::Epsilon);
        let got = subst(&t, &"x".to_string(), &Term::cnst("c"));
        assert_eq!(got, Term::case(p_of(Term::cnst("c")), Term::Epsilon, Term::Epsilon));
    }

    #[test]
    fn inhabitant_shapes() {
        assert_eq!(inhabitant(&Type::Null, "c"), Term::Epsilon);
        assert_eq!(inhabitant(&Type::Iota, "c"), Term::cnst("c"));
        assert_eq!(
            inhabitant(&Type::arrow(Type::Null, Type::Iota), "c"),
            Term::abs("z", Type::Null, Term::cnst("c"))
        );
        assert_eq!(
            inhabitant(&Type::prod(Type::Null, Type::Null), "c"),
            Term::pair(Term::Epsilon, Term::Epsilon)
        );
    }

    #[test]
    fn fresh_name_strips_digit_suffix() {
        let mut avoid = HashSet::new();
        avoid.insert("x".to_string());
        assert_eq!(fresh_name("x", &avoid), "x1");
        avoid.insert("x1".to_string());
        assert_eq!(fresh_name("x1", &avoid), "x2");
        assert_eq!(fresh_name("y", &avoid), "y");
    }

    #[test]
    fn display_forms() {
        let t = Term::app(
            Term::abs("x", Type::Iota, Term::ivar("x")),
            Term::cnst("c"),
        );
        assert_eq!(t.to_string(), "((λx:ι. x) c)");
        let c = Term::case(p_of(Term::cnst("c")), Term::Epsilon, Term::Epsilon);
        assert_eq!(c.to_string(), "case[P(c)]{ε}{ε}");
        assert_eq!(Type::arrow(Type::Null, Type::Iota).to_string(), "(□ → ι)");
    }
}
