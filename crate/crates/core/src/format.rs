//! The proof file format: a `(sig ...)` header followed by a single
//! `(proof1 ...)` (one-sided) or `(proof2 ...)` (two-sided) body.
//!
//! ```text
//! (sig (const c) (fun f 1) (pred P 1))
//! (proof1
//!   (ex (witness c) (x) (or (P x) (not (P x)))
//!     (c
//!       ...)))
//! ```
//!
//! Formulas are `(P t ...)`, `(or A B)`, `(not A)`, `(exists x A)`; case
//! guards additionally allow `(eq t u)`. Individual terms are constants,
//! variables, `(f t ...)`, and the realizer forms `eps`, `(pair t u)`,
//! `(pi1 t)`, `(pi2 t)`, `(lam x T t)`, `(app t u)`, `(case A t u)` with
//! types `iota`, `unit`, `(prod T T)`, `(arrow T T)`. Permutations are
//! written 1-based: `(perm (2 1) p)` swaps a two-formula sequent.
//!
//! A bare name in term position is resolved as the nearest enclosing binder,
//! else a declared constant, else a free individual variable; binder names
//! may not shadow signature names, so the resolution is unambiguous.
//! `print_proof_file` emits the canonical layout that `parse_proof_file`
//! reads back verbatim: parse-then-print is the identity on canonical files.

use crate::logic::{FoTerm, Formula, Signature};
use crate::proofs::{OneSided, Side, TwoSided};
use crate::sexp::{end_pos, parse_many, ParseError, Pos, Sexp};
use crate::term::{Ident, Prop, Term, Type};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyProof {
    One(OneSided),
    Two(TwoSided),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofDocument {
    pub signature: Signature,
    pub proof: AnyProof,
}

pub const ONE_SIDED_RULES: &[&str] =
    &["lem", "or", "nor", "ex", "nex", "c", "w", "nn", "cut", "perm"];
pub const TWO_SIDED_RULES: &[&str] = &[
    "id", "orr", "orl", "negr", "negl", "exr", "exl", "cr", "cl", "wr", "wl", "cut", "perm",
];

/// Names with a fixed syntactic meaning; not usable as signature names or
/// binders. Rule names are not listed: they only occur in head position of a
/// proof node, so `c` stays available as a constant.
const RESERVED: &[&str] = &[
    "sig", "const", "fun", "pred", "proof1", "proof2", "or", "not", "exists", "eq", "pair",
    "pi1", "pi2", "lam", "app", "case", "eps", "iota", "unit", "prod", "arrow", "witness",
    "eigen", "ante", "succ",
];

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn atom_of<'a>(s: &'a Sexp, what: &str) -> Result<(&'a str, Pos), ParseError> {
    match s.atom() {
        Some(a) => Ok((a, s.pos())),
        None => Err(ParseError::at(s.pos(), format!("{what}, found a list"))),
    }
}

fn list_of<'a>(s: &'a Sexp, what: &str) -> Result<(&'a [Sexp], Pos), ParseError> {
    match s.list() {
        Some(items) => Ok((items, s.pos())),
        None => Err(ParseError::at(s.pos(), format!("{what}, found an atom"))),
    }
}

fn ident_of(s: &Sexp, what: &str) -> Result<Ident, ParseError> {
    let (a, pos) = atom_of(s, what)?;
    if !is_ident(a) {
        return Err(ParseError::at(pos, format!("{what}, found '{a}'")));
    }
    Ok(a.to_string())
}

fn number_of(s: &Sexp, what: &str) -> Result<usize, ParseError> {
    let (a, pos) = atom_of(s, what)?;
    a.parse::<usize>().map_err(|_| ParseError::at(pos, format!("{what}, found '{a}'")))
}

/// A name introduced by `lam`, `exists`, `ex`, `nex`, `exl`: must be a fresh
/// identifier, neither reserved nor declared, so occurrences resolve
/// unambiguously.
fn binder_of(sig: &Signature, s: &Sexp, what: &str) -> Result<Ident, ParseError> {
    let name = ident_of(s, what)?;
    if RESERVED.contains(&name.as_str()) {
        return Err(ParseError::at(
            s.pos(),
            format!("{what}, but '{name}' is a reserved word"),
        ));
    }
    if sig.is_constant(&name)
        || sig.function_arity(&name).is_some()
        || sig.predicate_arity(&name).is_some()
    {
        return Err(ParseError::at(
            s.pos(),
            format!("{what}, but '{name}' is declared in the signature"),
        ));
    }
    Ok(name)
}

fn parse_signature(s: &Sexp) -> Result<Signature, ParseError> {
    let (items, pos) = list_of(s, "a (sig ...) header")?;
    match items.first().and_then(Sexp::atom) {
        Some("sig") => {}
        _ => return Err(ParseError::at(pos, "a (sig ...) header")),
    }
    let mut constants = Vec::new();
    let mut functions = Vec::new();
    let mut predicates = Vec::new();
    for d in &items[1..] {
        let what = "a declaration (const name), (fun name arity), or (pred name arity)";
        let (parts, dpos) = list_of(d, what)?;
        let head = parts.first().and_then(Sexp::atom).unwrap_or("");
        let name_at = |i: usize| -> Result<Ident, ParseError> {
            let s = parts.get(i).ok_or_else(|| ParseError::at(dpos, what))?;
            let name = ident_of(s, "a name")?;
            if RESERVED.contains(&name.as_str()) {
                return Err(ParseError::at(
                    s.pos(),
                    format!("a name, but '{name}' is a reserved word"),
                ));
            }
            Ok(name)
        };
        match (head, parts.len()) {
            ("const", 2) => constants.push(name_at(1)?),
            ("fun", 3) => functions.push((name_at(1)?, number_of(&parts[2], "an arity")?)),
            ("pred", 3) => predicates.push((name_at(1)?, number_of(&parts[2], "an arity")?)),
            _ => return Err(ParseError::at(dpos, what)),
        }
    }
    Signature::new(constants, functions, predicates)
        .map_err(|e| ParseError::at(pos, format!("a well-formed signature ({e})")))
}

/// Lexical scope for `lam`/`exists`-style binders while parsing.
type Scope = Vec<(Ident, Type)>;

fn lookup(scope: &Scope, name: &str) -> Option<Type> {
    scope.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t.clone())
}

fn parse_type(s: &Sexp) -> Result<Type, ParseError> {
    let what = "a type: iota, unit, (prod T T), or (arrow T T)";
    match s {
        Sexp::Atom(a, pos) => match a.as_str() {
            "iota" => Ok(Type::Iota),
            "unit" => Ok(Type::Null),
            _ => Err(ParseError::at(*pos, format!("{what}, found '{a}'"))),
        },
        Sexp::List(items, pos) => {
            let head = items.first().and_then(Sexp::atom).unwrap_or("");
            if items.len() != 3 || !matches!(head, "prod" | "arrow") {
                return Err(ParseError::at(*pos, what));
            }
            let a = parse_type(&items[1])?;
            let b = parse_type(&items[2])?;
            Ok(match head {
                "prod" => Type::prod(a, b),
                _ => Type::arrow(a, b),
            })
        }
    }
}

fn parse_args(
    sig: &Signature,
    scope: &mut Scope,
    args: &[Sexp],
    arity: usize,
    kind: &str,
    name: &str,
    pos: Pos,
) -> Result<Vec<Term>, ParseError> {
    if args.len() != arity {
        return Err(ParseError::at(
            pos,
            format!("{arity} argument(s) for the {kind} '{name}', found {}", args.len()),
        ));
    }
    args.iter().map(|a| parse_term(sig, scope, a)).collect()
}

fn parse_term(sig: &Signature, scope: &mut Scope, s: &Sexp) -> Result<Term, ParseError> {
    let what = "a term: a constant, a variable, eps, or one of (f t ...), \
                (pair t u), (pi1 t), (pi2 t), (lam x T t), (app t u), (case A t u)";
    match s {
        Sexp::Atom(a, pos) => {
            if a == "eps" {
                return Ok(Term::Epsilon);
            }
            if let Some(ty) = lookup(scope, a) {
                return Ok(Term::Var(a.clone(), ty));
            }
            if sig.is_constant(a) {
                return Ok(Term::cnst(a.clone()));
            }
            if sig.function_arity(a).is_some() {
                return Err(ParseError::at(
                    *pos,
                    format!("{what}; the function '{a}' must be applied"),
                ));
            }
            if sig.predicate_arity(a).is_some() {
                return Err(ParseError::at(
                    *pos,
                    format!("{what}; '{a}' is a predicate"),
                ));
            }
            if !is_ident(a) || RESERVED.contains(&a.as_str()) {
                return Err(ParseError::at(*pos, format!("{what}, found '{a}'")));
            }
            Ok(Term::ivar(a.clone()))
        }
        Sexp::List(items, pos) => {
            let head = match items.first().and_then(Sexp::atom) {
                Some(h) => h,
                None => return Err(ParseError::at(*pos, what)),
            };
            let rest = &items[1..];
            let fixed = |n: usize, form: &str| -> Result<(), ParseError> {
                if rest.len() == n {
                    Ok(())
                } else {
                    Err(ParseError::at(*pos, format!("a term of the form {form}")))
                }
            };
            match head {
                "pair" => {
                    fixed(2, "(pair t u)")?;
                    Ok(Term::pair(
                        parse_term(sig, scope, &rest[0])?,
                        parse_term(sig, scope, &rest[1])?,
                    ))
                }
                "pi1" | "pi2" => {
                    fixed(1, "(pi1 t) or (pi2 t)")?;
                    let index = if head == "pi1" { 1 } else { 2 };
                    Ok(Term::proj(index, parse_term(sig, scope, &rest[0])?))
                }
                "lam" => {
                    fixed(3, "(lam x T t)")?;
                    let x = binder_of(sig, &rest[0], "a binder name")?;
                    let ty = parse_type(&rest[1])?;
                    scope.push((x.clone(), ty.clone()));
                    let body = parse_term(sig, scope, &rest[2]);
                    scope.pop();
                    Ok(Term::abs(x, ty, body?))
                }
                "app" => {
                    fixed(2, "(app t u)")?;
                    Ok(Term::app(
                        parse_term(sig, scope, &rest[0])?,
                        parse_term(sig, scope, &rest[1])?,
                    ))
                }
                "case" => {
                    fixed(3, "(case A t u)")?;
                    Ok(Term::case(
                        parse_prop(sig, scope, &rest[0])?,
                        parse_term(sig, scope, &rest[1])?,
                        parse_term(sig, scope, &rest[2])?,
                    ))
                }
                _ => {
                    if let Some(arity) = sig.function_arity(head) {
                        let args = parse_args(sig, scope, rest, arity, "function", head, *pos)?;
                        Ok(Term::FnApp(head.to_string(), args))
                    } else {
                        Err(ParseError::at(*pos, format!("{what}, found '{head}'")))
                    }
                }
            }
        }
    }
}

fn parse_prop(sig: &Signature, scope: &mut Scope, s: &Sexp) -> Result<Prop, ParseError> {
    let what = "a guard: (or A B), (not A), (eq t u), or a declared predicate";
    let (items, pos) = list_of(s, what)?;
    let head = match items.first().and_then(Sexp::atom) {
        Some(h) => h,
        None => return Err(ParseError::at(pos, what)),
    };
    let rest = &items[1..];
    match head {
        "or" | "eq" if rest.len() == 2 => {
            if head == "or" {
                Ok(Prop::or(parse_prop(sig, scope, &rest[0])?, parse_prop(sig, scope, &rest[1])?))
            } else {
                Ok(Prop::eq(parse_term(sig, scope, &rest[0])?, parse_term(sig, scope, &rest[1])?))
            }
        }
        "not" if rest.len() == 1 => Ok(Prop::not(parse_prop(sig, scope, &rest[0])?)),
        "or" | "not" | "eq" => Err(ParseError::at(pos, what)),
        _ => {
            if let Some(arity) = sig.predicate_arity(head) {
                let args = parse_args(sig, scope, rest, arity, "predicate", head, pos)?;
                Ok(Prop::Atom(head.to_string(), args))
            } else {
                Err(ParseError::at(pos, format!("{what}, found '{head}'")))
            }
        }
    }
}

fn parse_formula(sig: &Signature, scope: &mut Scope, s: &Sexp) -> Result<Formula, ParseError> {
    let what = "a formula: (or A B), (not A), (exists x A), or a declared predicate";
    let (items, pos) = list_of(s, what)?;
    let head = match items.first().and_then(Sexp::atom) {
        Some(h) => h,
        None => return Err(ParseError::at(pos, what)),
    };
    let rest = &items[1..];
    match head {
        "or" if rest.len() == 2 => Ok(Formula::or(
            parse_formula(sig, scope, &rest[0])?,
            parse_formula(sig, scope, &rest[1])?,
        )),
        "not" if rest.len() == 1 => Ok(Formula::not(parse_formula(sig, scope, &rest[0])?)),
        "exists" if rest.len() == 2 => {
            let x = binder_of(sig, &rest[0], "a binder name")?;
            scope.push((x.clone(), Type::Iota));
            let body = parse_formula(sig, scope, &rest[1]);
            scope.pop();
            Ok(Formula::exists(x, body?))
        }
        "or" | "not" | "exists" => Err(ParseError::at(pos, what)),
        _ => {
            if let Some(arity) = sig.predicate_arity(head) {
                let args = parse_args(sig, scope, rest, arity, "predicate", head, pos)?;
                Ok(Formula::Atom(head.to_string(), args))
            } else {
                Err(ParseError::at(pos, format!("{what}, found '{head}'")))
            }
        }
    }
}

/// `(witness t)` and `(eigen a)` wrappers.
fn unwrap_tagged<'a>(s: &'a Sexp, tag: &str) -> Result<&'a Sexp, ParseError> {
    let what = format!("a ({tag} ...) form");
    let (items, pos) = list_of(s, &what)?;
    if items.len() == 2 && items[0].atom() == Some(tag) {
        Ok(&items[1])
    } else {
        Err(ParseError::at(pos, what))
    }
}

/// `(x)`: the bound variable of an `ex`/`exr` node.
fn unwrap_var(sig: &Signature, s: &Sexp) -> Result<Ident, ParseError> {
    let what = "a (x) form naming the bound variable";
    let (items, pos) = list_of(s, what)?;
    if items.len() != 1 {
        return Err(ParseError::at(pos, what));
    }
    binder_of(sig, &items[0], "a binder name")
}

/// 1-based index list `(2 1)` to the 0-based permutation.
fn parse_order(s: &Sexp, what: &str) -> Result<Vec<usize>, ParseError> {
    let (items, _) = list_of(s, what)?;
    items
        .iter()
        .map(|i| {
            let n = number_of(i, "a 1-based position")?;
            if n == 0 {
                return Err(ParseError::at(i.pos(), "a 1-based position, found '0'"));
            }
            Ok(n - 1)
        })
        .collect()
}

fn node_parts<'a>(s: &'a Sexp) -> Result<(&'a str, &'a [Sexp], Pos), ParseError> {
    let (items, pos) = list_of(s, "a proof node")?;
    match items.first().and_then(Sexp::atom) {
        Some(head) => Ok((head, &items[1..], pos)),
        None => Err(ParseError::at(pos, "a rule name")),
    }
}

fn shaped<'a>(rest: &'a [Sexp], n: usize, pos: Pos, form: &str) -> Result<&'a [Sexp], ParseError> {
    if rest.len() == n {
        Ok(rest)
    } else {
        Err(ParseError::at(pos, format!("a node of the form {form}")))
    }
}

fn parse_side(s: &Sexp) -> Result<Side, ParseError> {
    match number_of(s, "a disjunct index, 1 or 2")? {
        1 => Ok(Side::Left),
        2 => Ok(Side::Right),
        _ => Err(ParseError::at(s.pos(), "a disjunct index, 1 or 2")),
    }
}

fn parse_one_node(sig: &Signature, s: &Sexp) -> Result<OneSided, ParseError> {
    let (head, rest, pos) = node_parts(s)?;
    let scope = &mut Vec::new();
    match head {
        "lem" => {
            let r = shaped(rest, 1, pos, "(lem A)")?;
            Ok(OneSided::Lem(parse_formula(sig, scope, &r[0])?))
        }
        "or" => {
            let r = shaped(rest, 3, pos, "(or side other-formula premise)")?;
            Ok(OneSided::Or {
                side: parse_side(&r[0])?,
                other: parse_formula(sig, scope, &r[1])?,
                premise: Box::new(parse_one_node(sig, &r[2])?),
            })
        }
        "nor" => {
            let r = shaped(rest, 2, pos, "(nor left right)")?;
            Ok(OneSided::NegOr {
                left: Box::new(parse_one_node(sig, &r[0])?),
                right: Box::new(parse_one_node(sig, &r[1])?),
            })
        }
        "ex" => {
            let r = shaped(rest, 4, pos, "(ex (witness t) (x) matrix premise)")?;
            let witness = parse_term(sig, scope, unwrap_tagged(&r[0], "witness")?)?;
            let var = unwrap_var(sig, &r[1])?;
            scope.push((var.clone(), Type::Iota));
            let matrix = parse_formula(sig, scope, &r[2]);
            scope.pop();
            Ok(OneSided::Ex {
                witness,
                var,
                matrix: matrix?,
                premise: Box::new(parse_one_node(sig, &r[3])?),
            })
        }
        "nex" => {
            let r = shaped(rest, 2, pos, "(nex (eigen a) premise)")?;
            let eigen = binder_of(sig, unwrap_tagged(&r[0], "eigen")?, "an eigenvariable name")?;
            Ok(OneSided::NegEx { eigen, premise: Box::new(parse_one_node(sig, &r[1])?) })
        }
        "c" => {
            let r = shaped(rest, 1, pos, "(c premise)")?;
            Ok(OneSided::Contract { premise: Box::new(parse_one_node(sig, &r[0])?) })
        }
        "w" => {
            let r = shaped(rest, 2, pos, "(w formula premise)")?;
            Ok(OneSided::Weak {
                formula: parse_formula(sig, scope, &r[0])?,
                premise: Box::new(parse_one_node(sig, &r[1])?),
            })
        }
        "nn" => {
            let r = shaped(rest, 1, pos, "(nn premise)")?;
            Ok(OneSided::NegNeg { premise: Box::new(parse_one_node(sig, &r[0])?) })
        }
        "cut" => {
            let r = shaped(rest, 3, pos, "(cut formula left right)")?;
            Ok(OneSided::Cut {
                formula: parse_formula(sig, scope, &r[0])?,
                left: Box::new(parse_one_node(sig, &r[1])?),
                right: Box::new(parse_one_node(sig, &r[2])?),
            })
        }
        "perm" => {
            let r = shaped(rest, 2, pos, "(perm (i ...) premise)")?;
            Ok(OneSided::Perm {
                order: parse_order(&r[0], "a list of 1-based positions")?,
                premise: Box::new(parse_one_node(sig, &r[1])?),
            })
        }
        _ => Err(ParseError::at(
            pos,
            format!("a one-sided rule, one of {}; found '{head}'", ONE_SIDED_RULES.join(", ")),
        )),
    }
}

fn parse_two_node(sig: &Signature, s: &Sexp) -> Result<TwoSided, ParseError> {
    let (head, rest, pos) = node_parts(s)?;
    let scope = &mut Vec::new();
    let sub = |s: &Sexp| parse_two_node(sig, s).map(Box::new);
    match head {
        "id" => {
            let r = shaped(rest, 1, pos, "(id A)")?;
            Ok(TwoSided::Id(parse_formula(sig, scope, &r[0])?))
        }
        "orr" => {
            let r = shaped(rest, 3, pos, "(orr side other-formula premise)")?;
            Ok(TwoSided::OrR {
                side: parse_side(&r[0])?,
                other: parse_formula(sig, scope, &r[1])?,
                premise: sub(&r[2])?,
            })
        }
        "orl" => {
            let r = shaped(rest, 2, pos, "(orl left right)")?;
            Ok(TwoSided::OrL { left: sub(&r[0])?, right: sub(&r[1])? })
        }
        "negr" => {
            let r = shaped(rest, 1, pos, "(negr premise)")?;
            Ok(TwoSided::NegR { premise: sub(&r[0])? })
        }
        "negl" => {
            let r = shaped(rest, 1, pos, "(negl premise)")?;
            Ok(TwoSided::NegL { premise: sub(&r[0])? })
        }
        "exr" => {
            let r = shaped(rest, 4, pos, "(exr (witness t) (x) matrix premise)")?;
            let wit_sexp = unwrap_tagged(&r[0], "witness")?;
            let term = parse_term(sig, scope, wit_sexp)?;
            let witness = FoTerm::from_term(&term).ok_or_else(|| {
                ParseError::at(wit_sexp.pos(), "a first-order witness in a two-sided proof")
            })?;
            let var = unwrap_var(sig, &r[1])?;
            scope.push((var.clone(), Type::Iota));
            let matrix = parse_formula(sig, scope, &r[2]);
            scope.pop();
            Ok(TwoSided::ExR { witness, var, matrix: matrix?, premise: sub(&r[3])? })
        }
        "exl" => {
            let r = shaped(rest, 2, pos, "(exl (eigen a) premise)")?;
            let eigen = binder_of(sig, unwrap_tagged(&r[0], "eigen")?, "an eigenvariable name")?;
            Ok(TwoSided::ExL { eigen, premise: sub(&r[1])? })
        }
        "cr" => {
            let r = shaped(rest, 1, pos, "(cr premise)")?;
            Ok(TwoSided::ContractR { premise: sub(&r[0])? })
        }
        "cl" => {
            let r = shaped(rest, 1, pos, "(cl premise)")?;
            Ok(TwoSided::ContractL { premise: sub(&r[0])? })
        }
        "wr" => {
            let r = shaped(rest, 2, pos, "(wr formula premise)")?;
            Ok(TwoSided::WeakR { formula: parse_formula(sig, scope, &r[0])?, premise: sub(&r[1])? })
        }
        "wl" => {
            let r = shaped(rest, 2, pos, "(wl formula premise)")?;
            Ok(TwoSided::WeakL { formula: parse_formula(sig, scope, &r[0])?, premise: sub(&r[1])? })
        }
        "cut" => {
            let r = shaped(rest, 3, pos, "(cut formula left right)")?;
            Ok(TwoSided::Cut {
                formula: parse_formula(sig, scope, &r[0])?,
                left: sub(&r[1])?,
                right: sub(&r[2])?,
            })
        }
        "perm" => {
            let r = shaped(rest, 3, pos, "(perm (ante i ...) (succ i ...) premise)")?;
            let labelled = |s: &Sexp, tag: &str| -> Result<Vec<usize>, ParseError> {
                let what = format!("a ({tag} i ...) list of 1-based positions");
                let (items, pos) = list_of(s, &what)?;
                if items.first().and_then(Sexp::atom) != Some(tag) {
                    return Err(ParseError::at(pos, what));
                }
                items[1..]
                    .iter()
                    .map(|i| match number_of(i, "a 1-based position")? {
                        0 => Err(ParseError::at(i.pos(), "a 1-based position, found '0'")),
                        n => Ok(n - 1),
                    })
                    .collect()
            };
            Ok(TwoSided::Perm {
                ante: labelled(&r[0], "ante")?,
                succ: labelled(&r[1], "succ")?,
                premise: sub(&r[2])?,
            })
        }
        _ => Err(ParseError::at(
            pos,
            format!("a two-sided rule, one of {}; found '{head}'", TWO_SIDED_RULES.join(", ")),
        )),
    }
}

pub fn parse_proof_file(text: &str) -> Result<ProofDocument, ParseError> {
    let forms = parse_many(text)?;
    let file_shape = "a (sig ...) header followed by one (proof1 ...) or (proof2 ...) form";
    if forms.len() != 2 {
        let pos = forms.get(2).map(Sexp::pos).unwrap_or_else(|| end_pos(text));
        return Err(ParseError::at(pos, file_shape));
    }
    let signature = parse_signature(&forms[0])?;
    let (head, rest, pos) = node_parts(&forms[1])?;
    let body = match (head, rest.len()) {
        ("proof1", 1) => AnyProof::One(parse_one_node(&signature, &rest[0])?),
        ("proof2", 1) => AnyProof::Two(parse_two_node(&signature, &rest[0])?),
        _ => return Err(ParseError::at(pos, file_shape)),
    };
    Ok(ProofDocument { signature, proof: body })
}

fn push_type(out: &mut String, ty: &Type) {
    match ty {
        Type::Iota => out.push_str("iota"),
        Type::Null => out.push_str("unit"),
        Type::Prod(a, b) | Type::Arrow(a, b) => {
            out.push('(');
            out.push_str(if matches!(ty, Type::Prod(..)) { "prod " } else { "arrow " });
            push_type(out, a);
            out.push(' ');
            push_type(out, b);
            out.push(')');
        }
    }
}

fn push_term(out: &mut String, t: &Term) {
    match t {
        Term::Epsilon => out.push_str("eps"),
        Term::Const(c) => out.push_str(c),
        Term::Var(x, _) => out.push_str(x),
        Term::FnApp(f, args) => {
            out.push('(');
            out.push_str(f);
            for a in args {
                out.push(' ');
                push_term(out, a);
            }
            out.push(')');
        }
        Term::Pair(a, b) => {
            out.push_str("(pair ");
            push_term(out, a);
            out.push(' ');
            push_term(out, b);
            out.push(')');
        }
        Term::Proj(i, a) => {
            out.push_str(if *i == 1 { "(pi1 " } else { "(pi2 " });
            push_term(out, a);
            out.push(')');
        }
        Term::Abs(x, ty, body) => {
            out.push_str("(lam ");
            out.push_str(x);
            out.push(' ');
            push_type(out, ty);
            out.push(' ');
            push_term(out, body);
            out.push(')');
        }
        Term::App(f, a) => {
            out.push_str("(app ");
            push_term(out, f);
            out.push(' ');
            push_term(out, a);
            out.push(')');
        }
        Term::Case(guard, yes, no) => {
            out.push_str("(case ");
            push_prop(out, guard);
            out.push(' ');
            push_term(out, yes);
            out.push(' ');
            push_term(out, no);
            out.push(')');
        }
    }
}

fn push_prop(out: &mut String, p: &Prop) {
    match p {
        Prop::Atom(name, args) => {
            out.push('(');
            out.push_str(name);
            for a in args {
                out.push(' ');
                push_term(out, a);
            }
            out.push(')');
        }
        Prop::Or(a, b) => {
            out.push_str("(or ");
            push_prop(out, a);
            out.push(' ');
            push_prop(out, b);
            out.push(')');
        }
        Prop::Not(a) => {
            out.push_str("(not ");
            push_prop(out, a);
            out.push(')');
        }
        Prop::Eq(a, b) => {
            out.push_str("(eq ");
            push_term(out, a);
            out.push(' ');
            push_term(out, b);
            out.push(')');
        }
    }
}

fn push_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Atom(name, args) => {
            out.push('(');
            out.push_str(name);
            for a in args {
                out.push(' ');
                push_term(out, a);
            }
            out.push(')');
        }
        Formula::Or(a, b) => {
            out.push_str("(or ");
            push_formula(out, a);
            out.push(' ');
            push_formula(out, b);
            out.push(')');
        }
        Formula::Not(a) => {
            out.push_str("(not ");
            push_formula(out, a);
            out.push(')');
        }
        Formula::Exists(x, a) => {
            out.push_str("(exists ");
            out.push_str(x);
            out.push(' ');
            push_formula(out, a);
            out.push(')');
        }
    }
}

fn push_fo_term(out: &mut String, t: &FoTerm) {
    push_term(out, &t.to_term());
}

fn push_side(out: &mut String, side: Side) {
    out.push(match side {
        Side::Left => '1',
        Side::Right => '2',
    });
}

fn push_order(out: &mut String, order: &[usize]) {
    out.push('(');
    for (i, n) in order.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&(n + 1).to_string());
    }
    out.push(')');
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push(' ');
    }
}

fn push_one_subs(out: &mut String, subs: &[&OneSided], depth: usize) {
    for q in subs {
        out.push('\n');
        push_one_node(out, q, depth + 2);
    }
    out.push(')');
}

fn push_one_node(out: &mut String, p: &OneSided, depth: usize) {
    indent(out, depth);
    match p {
        OneSided::Lem(a) => {
            out.push_str("(lem ");
            push_formula(out, a);
            out.push(')');
        }
        OneSided::Or { side, other, premise } => {
            out.push_str("(or ");
            push_side(out, *side);
            out.push(' ');
            push_formula(out, other);
            push_one_subs(out, &[premise], depth);
        }
        OneSided::NegOr { left, right } => {
            out.push_str("(nor");
            push_one_subs(out, &[left, right], depth);
        }
        OneSided::Ex { witness, var, matrix, premise } => {
            out.push_str("(ex (witness ");
            push_term(out, witness);
            out.push_str(") (");
            out.push_str(var);
            out.push_str(") ");
            push_formula(out, matrix);
            push_one_subs(out, &[premise], depth);
        }
        OneSided::NegEx { eigen, premise } => {
            out.push_str("(nex (eigen ");
            out.push_str(eigen);
            out.push(')');
            push_one_subs(out, &[premise], depth);
        }
        OneSided::Contract { premise } => {
            out.push_str("(c");
            push_one_subs(out, &[premise], depth);
        }
        OneSided::Weak { formula, premise } => {
            out.push_str("(w ");
            push_formula(out, formula);
            push_one_subs(out, &[premise], depth);
        }
        OneSided::NegNeg { premise } => {
            out.push_str("(nn");
            push_one_subs(out, &[premise], depth);
        }
        OneSided::Cut { formula, left, right } => {
            out.push_str("(cut ");
            push_formula(out, formula);
            push_one_subs(out, &[left, right], depth);
        }
        OneSided::Perm { order, premise } => {
            out.push_str("(perm ");
            push_order(out, order);
            push_one_subs(out, &[premise], depth);
        }
    }
}

fn push_two_subs(out: &mut String, subs: &[&TwoSided], depth: usize) {
    for q in subs {
        out.push('\n');
        push_two_node(out, q, depth + 2);
    }
    out.push(')');
}

fn push_two_node(out: &mut String, p: &TwoSided, depth: usize) {
    indent(out, depth);
    match p {
        TwoSided::Id(a) => {
            out.push_str("(id ");
            push_formula(out, a);
            out.push(')');
        }
        TwoSided::OrR { side, other, premise } => {
            out.push_str("(orr ");
            push_side(out, *side);
            out.push(' ');
            push_formula(out, other);
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::OrL { left, right } => {
            out.push_str("(orl");
            push_two_subs(out, &[left, right], depth);
        }
        TwoSided::NegR { premise } => {
            out.push_str("(negr");
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::NegL { premise } => {
            out.push_str("(negl");
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::ExR { witness, var, matrix, premise } => {
            out.push_str("(exr (witness ");
            push_fo_term(out, witness);
            out.push_str(") (");
            out.push_str(var);
            out.push_str(") ");
            push_formula(out, matrix);
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::ExL { eigen, premise } => {
            out.push_str("(exl (eigen ");
            out.push_str(eigen);
            out.push(')');
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::ContractR { premise } => {
            out.push_str("(cr");
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::ContractL { premise } => {
            out.push_str("(cl");
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::WeakR { formula, premise } => {
            out.push_str("(wr ");
            push_formula(out, formula);
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::WeakL { formula, premise } => {
            out.push_str("(wl ");
            push_formula(out, formula);
            push_two_subs(out, &[premise], depth);
        }
        TwoSided::Cut { formula, left, right } => {
            out.push_str("(cut ");
            push_formula(out, formula);
            push_two_subs(out, &[left, right], depth);
        }
        TwoSided::Perm { ante, succ, premise } => {
            out.push_str("(perm (ante");
            for n in ante {
                out.push(' ');
                out.push_str(&(n + 1).to_string());
            }
            out.push_str(") (succ");
            for n in succ {
                out.push(' ');
                out.push_str(&(n + 1).to_string());
            }
            out.push(')');
            push_two_subs(out, &[premise], depth);
        }
    }
}

fn push_signature(out: &mut String, sig: &Signature) {
    out.push_str("(sig");
    for c in sig.constants() {
        out.push_str(" (const ");
        out.push_str(c);
        out.push(')');
    }
    for (f, arity) in sig.functions() {
        out.push_str(" (fun ");
        out.push_str(f);
        out.push(' ');
        out.push_str(&arity.to_string());
        out.push(')');
    }
    for (p, arity) in sig.predicates() {
        out.push_str(" (pred ");
        out.push_str(p);
        out.push(' ');
        out.push_str(&arity.to_string());
        out.push(')');
    }
    out.push(')');
}

/// Canonical text for a document; `parse_proof_file` reads it back.
pub fn print_proof_file(doc: &ProofDocument) -> String {
    let mut out = String::new();
    push_signature(&mut out, &doc.signature);
    out.push('\n');
    match &doc.proof {
        AnyProof::One(p) => {
            out.push_str("(proof1\n");
            push_one_node(&mut out, p, 2);
        }
        AnyProof::Two(p) => {
            out.push_str("(proof2\n");
            push_two_node(&mut out, p, 2);
        }
    }
    out.push_str(")\n");
    out
}

pub fn formula_text(f: &Formula) -> String {
    let mut out = String::new();
    push_formula(&mut out, f);
    out
}

pub fn term_text(t: &Term) -> String {
    let mut out = String::new();
    push_term(&mut out, t);
    out
}

pub fn prop_text(p: &Prop) -> String {
    let mut out = String::new();
    push_prop(&mut out, p);
    out
}

pub fn type_text(ty: &Type) -> String {
    let mut out = String::new();
    push_type(&mut out, ty);
    out
}

pub fn fo_term_text(t: &FoTerm) -> String {
    term_text(&t.to_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::{check_one_sided, check_two_sided};
    use crate::samples;

    fn parse(text: &str) -> ProofDocument {
        parse_proof_file(text).unwrap()
    }

    #[test]
    fn the_smallest_file_parses_to_a_lem_proof() {
        let doc = parse("(sig (const c) (pred P 1)) (proof1 (lem (P c)))");
        match &doc.proof {
            AnyProof::One(p) => {
                assert_eq!(*p, samples::lem());
                assert_eq!(check_one_sided(p).unwrap().0.len(), 2);
            }
            AnyProof::Two(_) => panic!("expected a one-sided proof"),
        }
    }

    #[test]
    fn unknown_rule_names_list_the_valid_ones() {
        let err = parse_proof_file("(sig (const c) (pred P 1)) (proof1 (foo (P c)))").unwrap_err();
        for rule in ONE_SIDED_RULES {
            assert!(err.expected.contains(rule), "{} missing from {}", rule, err.expected);
        }
        assert!(err.expected.contains("'foo'"));
        assert_eq!((err.line, err.col), (1, 36));
    }

    #[test]
    fn all_bundled_proofs_survive_a_print_parse_round_trip() {
        let sig = samples::standard_signature();
        let docs = [
            AnyProof::One(samples::lem()),
            AnyProof::One(samples::x1()),
            AnyProof::One(samples::x2()),
            AnyProof::One(samples::x3()),
            AnyProof::Two(samples::two_sided_id()),
            AnyProof::Two(samples::two_sided_demo()),
        ];
        for proof in docs {
            let doc = ProofDocument { signature: sig.clone(), proof };
            let text = print_proof_file(&doc);
            let back = parse(&text);
            assert_eq!(back, doc, "mismatch for:\n{text}");
            assert_eq!(print_proof_file(&back), text);
        }
    }

    #[test]
    fn permutations_are_one_based_in_files() {
        let doc = parse(
            "(sig (const c) (pred P 1)) (proof1 (perm (2 1) (lem (P c))))",
        );
        let AnyProof::One(p) = &doc.proof else { panic!() };
        assert_eq!(*p, OneSided::Perm {
            order: vec![1, 0],
            premise: Box::new(samples::lem()),
        });
        let end = check_one_sided(p).unwrap();
        assert_eq!(format!("{end}"), "⊢ P(c), ¬P(c)");
    }

    #[test]
    fn extended_witness_terms_parse_with_scoped_binder_types() {
        let text = "(sig (const c) (fun f 1) (pred P 1))\n(proof1\n  (ex (witness \
                    (app (lam z iota (case (P z) (f z) c)) c)) (x) (P x)\n    (lem (P c))))";
        let AnyProof::One(OneSided::Ex { witness, .. }) = parse(text).proof else { panic!() };
        let Term::App(lam, _) = &witness else { panic!("expected an application") };
        let Term::Abs(_, ty, body) = &**lam else { panic!("expected a lambda") };
        assert_eq!(*ty, Type::Iota);
        let Term::Case(guard, yes, _) = &**body else { panic!("expected a case") };
        assert_eq!(*guard, Prop::atom("P", vec![Term::ivar("z")]));
        assert_eq!(**yes, Term::FnApp("f".into(), vec![Term::ivar("z")]));
        let printed = term_text(&witness);
        assert_eq!(printed, "(app (lam z iota (case (P z) (f z) c)) c)");
    }

    #[test]
    fn binders_may_not_shadow_signature_names() {
        let err = parse_proof_file(
            "(sig (const c) (pred P 1)) (proof1 (ex (witness c) (c) (P c) (lem (P c))))",
        )
        .unwrap_err();
        assert!(err.expected.contains("declared in the signature"), "{}", err.expected);
    }

    #[test]
    fn reserved_words_cannot_be_declared() {
        let err = parse_proof_file("(sig (const eps) (pred P 1)) (proof1 (lem (P eps)))")
            .unwrap_err();
        assert!(err.expected.contains("reserved word"), "{}", err.expected);
    }

    #[test]
    fn signature_shape_errors_carry_positions() {
        let err = parse_proof_file("(sig (pred P 1)) (proof1 (lem (P c)))").unwrap_err();
        assert!(err.expected.contains("at least one constant"), "{}", err.expected);
        let err = parse_proof_file("(sig (const c) (pred P 1) (const c)) (proof1 (lem (P c)))")
            .unwrap_err();
        assert!(err.expected.contains("duplicate"), "{}", err.expected);
    }

    #[test]
    fn predicate_arity_is_enforced_where_the_atom_sits() {
        let err = parse_proof_file("(sig (const c) (pred P 1)) (proof1 (lem (P c c)))")
            .unwrap_err();
        assert_eq!((err.line, err.col), (1, 41));
        assert!(err.expected.contains("1 argument(s)"), "{}", err.expected);
    }

    #[test]
    fn two_sided_files_parse_and_check() {
        let sig = samples::standard_signature();
        let doc = ProofDocument { signature: sig, proof: AnyProof::Two(samples::two_sided_demo()) };
        let text = print_proof_file(&doc);
        let AnyProof::Two(p) = parse(&text).proof else { panic!() };
        let s = check_two_sided(&p).unwrap();
        assert_eq!(s.succedent.len(), 1);
    }

    #[test]
    fn two_sided_witnesses_must_be_first_order() {
        let err = parse_proof_file(
            "(sig (const c) (pred P 1)) (proof2 (exr (witness (pair c c)) (x) (P x) (id (P c))))",
        )
        .unwrap_err();
        assert!(err.expected.contains("first-order"), "{}", err.expected);
    }

    #[test]
    fn a_file_needs_exactly_one_header_and_one_proof() {
        let err = parse_proof_file("(sig (const c) (pred P 1))").unwrap_err();
        assert!(err.expected.contains("(proof1 ...)"), "{}", err.expected);
        let err =
            parse_proof_file("(sig (const c) (pred P 1)) (proof1 (lem (P c))) (extra)").unwrap_err();
        assert_eq!((err.line, err.col), (1, 49));
    }

    #[test]
    fn canonical_layout_indents_premises_under_their_rule() {
        let doc = ProofDocument {
            signature: samples::standard_signature(),
            proof: AnyProof::One(samples::x1()),
        };
        let text = print_proof_file(&doc);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "(sig (const c) (const d) (fun f 1) (fun g 2) (pred P 1) (pred Q 1) (pred R 2))"
        );
        assert_eq!(lines[1], "(proof1");
        assert!(lines[2].starts_with("  (ex (witness c) (x) "));
        assert!(lines[3].starts_with("    (c"));
        assert!(text.ends_with(")\n"));
    }
}
