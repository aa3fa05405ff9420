//! First-order syntax: signatures, individual terms, formulas, sequents.
//!
//! Formula atom arguments are represented as realizer terms of type `ι`, not
//! as a separate first-order grammar. Substituting realizer-level individuals
//! (projections of evidence pairs, case trees of witnesses) into formulas is
//! what the interpretation does all day, so the embedding has to be open.
//! `FoTerm` survives as the plain first-order fragment: signature-validated
//! input syntax, and the shape extraction hands back witnesses in.

use std::collections::BTreeSet;
use std::collections::HashSet;
use std::fmt;

use crate::term::{alpha_eq_term, fresh_name, subst, AlphaCtx, Ident, Term, Type};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("signature must declare at least one constant")]
    NoConstant,
    #[error("signature must declare a unary predicate")]
    NoUnaryPredicate,
    #[error("duplicate signature name {0}")]
    DuplicateName(Ident),
}

/// A first-order signature. The first declared constant is the designated
/// constant used to inhabit `ι`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    constants: Vec<Ident>,
    functions: Vec<(Ident, usize)>,
    predicates: Vec<(Ident, usize)>,
}

impl Signature {
    pub fn new(
        constants: Vec<Ident>,
        functions: Vec<(Ident, usize)>,
        predicates: Vec<(Ident, usize)>,
    ) -> Result<Signature, SignatureError> {
        if constants.is_empty() {
            return Err(SignatureError::NoConstant);
        }
        if !predicates.iter().any(|(_, arity)| *arity == 1) {
            return Err(SignatureError::NoUnaryPredicate);
        }
        let mut seen = HashSet::new();
        for name in constants
            .iter()
            .chain(functions.iter().map(|(n, _)| n))
            .chain(predicates.iter().map(|(n, _)| n))
        {
            if !seen.insert(name.clone()) {
                return Err(SignatureError::DuplicateName(name.clone()));
            }
        }
        Ok(Signature { constants, functions, predicates })
    }

    pub fn designated_constant(&self) -> &str {
        &self.constants[0]
    }

    pub fn constants(&self) -> &[Ident] {
        &self.constants
    }

    pub fn functions(&self) -> &[(Ident, usize)] {
        &self.functions
    }

    pub fn predicates(&self) -> &[(Ident, usize)] {
        &self.predicates
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }
}

/// Plain first-order terms over a signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FoTerm {
    Const(Ident),
    Var(Ident),
    Fun(Ident, Vec<FoTerm>),
}

impl FoTerm {
    pub fn to_term(&self) -> Term {
        match self {
            FoTerm::Const(c) => Term::Const(c.clone()),
            FoTerm::Var(x) => Term::Var(x.clone(), Type::Iota),
            FoTerm::Fun(f, args) => {
                Term::FnApp(f.clone(), args.iter().map(FoTerm::to_term).collect())
            }
        }
    }

    /// Reads a realizer term back as first-order syntax where possible.
    pub fn from_term(t: &Term) -> Option<FoTerm> {
        match t {
            Term::Const(c) => Some(FoTerm::Const(c.clone())),
            Term::Var(x, Type::Iota) => Some(FoTerm::Var(x.clone())),
            Term::FnApp(f, args) => Some(FoTerm::Fun(
                f.clone(),
                args.iter().map(FoTerm::from_term).collect::<Option<_>>()?,
            )),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            FoTerm::Const(_) => true,
            FoTerm::Var(_) => false,
            FoTerm::Fun(_, args) => args.iter().all(FoTerm::is_closed),
        }
    }
}

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// First-order formulas over `∨`, `¬`, `∃`. Atom arguments are `ι`-typed
/// realizer terms. Equality is alpha equality, shared with the term level.
#[derive(Debug, Clone)]
pub enum Formula {
    Atom(Ident, Vec<Term>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Exists(Ident, Box<Formula>),
}

impl Formula {
    pub fn atom(p: impl Into<Ident>, args: Vec<Term>) -> Formula {
        Formula::Atom(p.into(), args)
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn exists(x: impl Into<Ident>, a: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(a))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_, _) => true,
            Formula::Or(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::Exists(_, _) => false,
        }
    }

    /// Free individual variables, in traversal order, including those inside
    /// embedded realizer terms.
    pub fn free_ivars(&self) -> BTreeSet<Ident> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out.into_iter().filter(|(_, ty)| *ty == Type::Iota).map(|(n, _)| n).collect()
    }

    fn collect_free(&self, bound: &mut Vec<Ident>, out: &mut Vec<(Ident, Type)>) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    for (n, ty) in a.free_vars() {
                        if !bound.iter().any(|b| *b == n)
                            && !out.iter().any(|(m, t)| *m == n && *t == ty)
                        {
                            out.push((n, ty));
                        }
                    }
                }
            }
            Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_ivars().is_empty()
    }

    pub fn all_names(&self, out: &mut HashSet<Ident>) {
        match self {
            Formula::Atom(p, args) => {
                out.insert(p.clone());
                for a in args {
                    a.all_names(out);
                }
            }
            Formula::Or(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Formula::Not(a) => a.all_names(out),
            Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.all_names(out);
            }
        }
    }
}

fn alpha_eq_formula(a: &Formula, b: &Formula, ctx: &mut AlphaCtx) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| alpha_eq_term(x, y, ctx))
        }
        (Formula::Or(a1, a2), Formula::Or(b1, b2)) => {
            alpha_eq_formula(a1, b1, ctx) && alpha_eq_formula(a2, b2, ctx)
        }
        (Formula::Not(x), Formula::Not(y)) => alpha_eq_formula(x, y, ctx),
        (Formula::Exists(x, ax), Formula::Exists(y, by)) => {
            ctx.bind(x, y);
            let r = alpha_eq_formula(ax, by, ctx);
            ctx.unbind();
            r
        }
        _ => false,
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        alpha_eq_formula(self, other, &mut AlphaCtx::default())
    }
}

impl Eq for Formula {}

/// Capture-avoiding substitution of an `ι`-typed term for a free individual
/// variable.
pub fn subst_formula(a: &Formula, x: &Ident, t: &Term) -> Formula {
    match a {
        Formula::Atom(p, args) => {
            Formula::Atom(p.clone(), args.iter().map(|arg| subst(arg, x, t)).collect())
        }
        Formula::Or(l, r) => Formula::or(subst_formula(l, x, t), subst_formula(r, x, t)),
        Formula::Not(f) => Formula::not(subst_formula(f, x, t)),
        Formula::Exists(y, body) => {
            if y == x {
                return a.clone();
            }
            if !body.free_ivars().contains(x) {
                return a.clone();
            }
            if t.free_var_names().contains(y) {
                let mut avoid: HashSet<Ident> = t.free_var_names();
                avoid.extend(body.free_ivars());
                avoid.insert(x.clone());
                avoid.insert(y.clone());
                let y2 = fresh_name(y, &avoid);
                let renamed = subst_formula(body, y, &Term::ivar(y2.clone()));
                Formula::Exists(y2, Box::new(subst_formula(&renamed, x, t)))
            } else {
                Formula::Exists(y.clone(), Box::new(subst_formula(body, x, t)))
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) => {
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
            Formula::Or(a, b) => write!(f, "({a} ∨ {b})"),
            Formula::Not(a) => write!(f, "¬{a}"),
            Formula::Exists(x, a) => write!(f, "∃{x} {a}"),
        }
    }
}

/// A one-sided sequent: a list of formulas, order significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.0.iter().all(Formula::is_closed)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⊢ ")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A two-sided sequent `Γ ⊢ Δ`, both sides ordered lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl fmt::Display for TwoSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if self.antecedent.is_empty() {
            write!(f, "⊢ ")?;
        } else {
            write!(f, " ⊢ ")?;
        }
        for (i, a) in self.succedent.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: Term) -> Formula {
        Formula::atom("P", vec![t])
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(vec![], vec![], vec![("P".into(), 1)]).is_err());
        assert!(Signature::new(vec!["c".into()], vec![], vec![("P".into(), 2)]).is_err());
        assert!(Signature::new(vec!["c".into()], vec![("c".into(), 1)], vec![("P".into(), 1)]).is_err());
        let sig = Signature::new(
            vec!["c".into(), "d".into()],
            vec![("f".into(), 1)],
            vec![("P".into(), 1)],
        )
        .unwrap();
        assert_eq!(sig.designated_constant(), "c");
        assert_eq!(sig.function_arity("f"), Some(1));
    }

    #[test]
    fn subst_formula_hits_free_occurrences_only() {
        let a = p(Term::ivar("x"));
        assert_eq!(subst_formula(&a, &"x".into(), &Term::cnst("c")), p(Term::cnst("c")));
        let shadowed = Formula::exists("x", p(Term::ivar("x")));
        assert_eq!(subst_formula(&shadowed, &"x".into(), &Term::cnst("c")), shadowed);
    }

    #[test]
    fn subst_formula_avoids_capture() {
        // (∃y P(x,y))[y/x] must rename the binder.
        let a = Formula::exists("y", Formula::atom("R", vec![Term::ivar("x"), Term::ivar("y")]));
        let got = subst_formula(&a, &"x".into(), &Term::ivar("y"));
        let want = Formula::exists("w", Formula::atom("R", vec![Term::ivar("y"), Term::ivar("w")]));
        assert_eq!(got, want);
    }

    #[test]
    fn subst_formula_identity_on_same_variable() {
        let a = Formula::or(p(Term::ivar("x")), Formula::not(p(Term::ivar("x"))));
        assert_eq!(subst_formula(&a, &"x".into(), &Term::ivar("x")), a);
    }

    #[test]
    fn free_ivars_sees_into_terms() {
        let a = Formula::exists(
            "x",
            Formula::atom("R", vec![Term::ivar("x"), Term::FnApp("f".into(), vec![Term::ivar("y")])]),
        );
        let fv = a.free_ivars();
        assert!(fv.contains("y"));
        assert!(!fv.contains("x"));
    }

    #[test]
    fn alpha_equality_of_quantified_formulas() {
        let a = Formula::exists("x", p(Term::ivar("x")));
        let b = Formula::exists("y", p(Term::ivar("y")));
        assert_eq!(a, b);
        let c = Formula::exists("y", p(Term::ivar("z")));
        assert_ne!(a, c);
    }

    #[test]
    fn quantifier_free_classification() {
        let a = Formula::or(p(Term::cnst("c")), Formula::not(p(Term::cnst("c"))));
        assert!(a.is_quantifier_free());
        assert!(!Formula::exists("x", p(Term::ivar("x"))).is_quantifier_free());
    }

    #[test]
    fn fo_term_round_trip() {
        let t = FoTerm::Fun("f".into(), vec![FoTerm::Const("c".into())]);
        assert_eq!(FoTerm::from_term(&t.to_term()), Some(t));
        assert_eq!(FoTerm::from_term(&Term::Epsilon), None);
        assert_eq!(
            FoTerm::from_term(&Term::proj(1, Term::pair(Term::cnst("c"), Term::Epsilon))),
            None
        );
    }
}
