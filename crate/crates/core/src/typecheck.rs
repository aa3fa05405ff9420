//! Type assignment for realizer terms and well-formedness of propositions.

use std::fmt;

use crate::term::{Ident, Prop, Term, Type};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("type mismatch at {location}: expected {expected}, found {found}")]
    Mismatch {
        location: String,
        expected: String,
        found: String,
    },
    #[error("unbound variable {0}")]
    UnboundVariable(Ident),
    #[error("variable {name} used at both {first} and {second}")]
    ConflictingAnnotation { name: Ident, first: Type, second: Type },
}

/// Ordered typing context; lookups see the innermost binding first.
#[derive(Debug, Clone, Default)]
pub struct Ctx {
    stack: Vec<(Ident, Type)>,
}

impl Ctx {
    pub fn new() -> Ctx {
        Ctx::default()
    }

    /// Context assigning every free variable of the given terms its annotated
    /// type. Fails if one name is annotated at two different types.
    pub fn from_free_vars<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Result<Ctx, TypeError> {
        let mut ctx = Ctx::new();
        for t in terms {
            for (name, ty) in t.free_vars() {
                match ctx.stack.iter().find(|(n, _)| *n == name) {
                    Some((_, prev)) if *prev != ty => {
                        return Err(TypeError::ConflictingAnnotation {
                            name,
                            first: prev.clone(),
                            second: ty,
                        })
                    }
                    Some(_) => {}
                    None => ctx.stack.push((name, ty)),
                }
            }
        }
        Ok(ctx)
    }

    pub fn push(&mut self, name: Ident, ty: Type) {
        self.stack.push((name, ty));
    }

    pub fn pop(&mut self) {
        self.stack.pop();
    }

    pub fn lookup(&self, name: &Ident) -> Option<&Type> {
        self.stack.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }
}

fn mismatch(at: &dyn fmt::Display, expected: impl fmt::Display, found: impl fmt::Display) -> TypeError {
    TypeError::Mismatch {
        location: at.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

pub fn typecheck(ctx: &mut Ctx, t: &Term) -> Result<Type, TypeError> {
    match t {
        Term::Epsilon => Ok(Type::Null),
        Term::Const(_) => Ok(Type::Iota),
        Term::Var(x, ty) => match ctx.lookup(x) {
            None => Err(TypeError::UnboundVariable(x.clone())),
            Some(bound) if bound == ty => Ok(ty.clone()),
            Some(bound) => Err(mismatch(t, bound, ty)),
        },
        Term::FnApp(_, args) => {
            for a in args {
                let ty = typecheck(ctx, a)?;
                if ty != Type::Iota {
                    return Err(mismatch(a, Type::Iota, ty));
                }
            }
            Ok(Type::Iota)
        }
        Term::Pair(a, b) => {
            let ta = typecheck(ctx, a)?;
            let tb = typecheck(ctx, b)?;
            Ok(Type::prod(ta, tb))
        }
        Term::Proj(i, a) => match typecheck(ctx, a)? {
            Type::Prod(l, r) => Ok(if *i == 1 { (*l).clone() } else { (*r).clone() }),
            other => Err(mismatch(t, "a product type", other)),
        },
        Term::Abs(x, ty, body) => {
            ctx.push(x.clone(), ty.clone());
            let tb = typecheck(ctx, body);
            ctx.pop();
            Ok(Type::arrow(ty.clone(), tb?))
        }
        Term::App(f, a) => {
            let tf = typecheck(ctx, f)?;
            let ta = typecheck(ctx, a)?;
            match tf {
                Type::Arrow(dom, cod) => {
                    if *dom == ta {
                        Ok((*cod).clone())
                    } else {
                        Err(mismatch(t, dom, ta))
                    }
                }
                other => Err(mismatch(f, "a function type", other)),
            }
        }
        Term::Case(guard, yes, no) => {
            check_prop(ctx, guard)?;
            let ty = typecheck(ctx, yes)?;
            let tn = typecheck(ctx, no)?;
            if ty == tn {
                Ok(ty)
            } else {
                Err(mismatch(t, ty, tn))
            }
        }
    }
}

/// Well-formedness of a proposition: atom arguments are individuals, the two
/// sides of an equation share a type.
pub fn check_prop(ctx: &mut Ctx, p: &Prop) -> Result<(), TypeError> {
    match p {
        Prop::Atom(_, args) => {
            for a in args {
                let ty = typecheck(ctx, a)?;
                if ty != Type::Iota {
                    return Err(mismatch(a, Type::Iota, ty));
                }
            }
            Ok(())
        }
        Prop::Or(a, b) => {
            check_prop(ctx, a)?;
            check_prop(ctx, b)
        }
        Prop::Not(a) => check_prop(ctx, a),
        Prop::Eq(a, b) => {
            let ta = typecheck(ctx, a)?;
            let tb = typecheck(ctx, b)?;
            if ta == tb {
                Ok(())
            } else {
                Err(mismatch(p, ta, tb))
            }
        }
    }
}

/// Typechecks a term that may have free variables, taking each free
/// variable's type from its annotation.
pub fn typecheck_open(t: &Term) -> Result<Type, TypeError> {
    let mut ctx = Ctx::from_free_vars([t])?;
    typecheck(&mut ctx, t)
}

pub fn typecheck_closed(t: &Term) -> Result<Type, TypeError> {
    typecheck(&mut Ctx::new(), t)
}
