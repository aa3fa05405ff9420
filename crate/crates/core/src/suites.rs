//! Seeded property suites over the whole pipeline, shared by the acceptance
//! test target and the CLI `fuzz` subcommand. Each suite generates its own
//! inputs from a seed, runs one end-to-end property, and reports every
//! failing case; callers treat any failure as fatal.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::gen;
use crate::herbrand::{extract, extract_with_counter};
use crate::interp::{canonical_counter_args, counter_type, evidence_type, transform};
use crate::logic::{FoTerm, Formula, Signature};
use crate::proofs::{check_one_sided, check_two_sided, proof_subst, OneSided};
use crate::reduce::{convertible, step, StepBudgetExceeded, DEFAULT_FUEL};
use crate::samples;
use crate::term::{alpha_eq_term, inhabitant, subst, AlphaCtx, Prop, Term, Type};
use crate::translate::{sequent_image, translate};
use crate::typecheck::typecheck_closed;
use crate::verify::{
    check_soundness_report, eliminate_cases, eval_with_cases, tautology_outcome, TautologyOutcome,
};

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One human-readable verdict line.
    pub fn line(&self) -> String {
        if self.passed() {
            format!("PASS {}: {} cases", self.name, self.cases)
        } else {
            format!(
                "FAIL {}: {} of {} cases failed; first: {}",
                self.name,
                self.failures.len(),
                self.cases,
                self.failures[0]
            )
        }
    }
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Suite {
        Suite { name, cases: 0, failures: Vec::new() }
    }

    fn case(&mut self, label: impl Fn() -> String, ok: Result<(), String>) {
        self.cases += 1;
        if let Err(detail) = ok {
            self.failures.push(format!("{}: {detail}", label()));
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult { name: self.name, cases: self.cases, failures: self.failures }
    }
}

/// A deterministic pseudo-random truth assignment keyed on the atom's
/// printed form, so both the verifier path and the oracle path see the same
/// values for alpha-equal atoms.
pub fn hashed_assignment(salt: u64) -> impl FnMut(&Prop) -> bool {
    move |p: &Prop| {
        let mut h = DefaultHasher::new();
        salt.hash(&mut h);
        format!("{p:?}").hash(&mut h);
        h.finish() & 1 == 0
    }
}

/// Direct evaluation of a case-free proposition. Equations between
/// convertible terms are true; all other leaves ask the assignment.
fn eval_flat(
    p: &Prop,
    assign: &mut dyn FnMut(&Prop) -> bool,
) -> Result<bool, StepBudgetExceeded> {
    match p {
        Prop::Atom(..) => Ok(assign(p)),
        Prop::Or(a, b) => Ok(eval_flat(a, assign)? | eval_flat(b, assign)?),
        Prop::Not(a) => Ok(!eval_flat(a, assign)?),
        Prop::Eq(l, r) => {
            if convertible(l, r, DEFAULT_FUEL)? {
                Ok(true)
            } else {
                Ok(assign(p))
            }
        }
    }
}

/// The assignable leaves of a case-free proposition, deduplicated up to
/// alpha equality. Convertible equations are constants, not leaves.
fn opaque_atoms(p: &Prop, out: &mut Vec<Prop>) -> Result<(), StepBudgetExceeded> {
    match p {
        Prop::Atom(..) => {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        Prop::Or(a, b) => {
            opaque_atoms(a, out)?;
            opaque_atoms(b, out)?;
        }
        Prop::Not(a) => opaque_atoms(a, out)?,
        Prop::Eq(l, r) => {
            if !convertible(l, r, DEFAULT_FUEL)? && !out.contains(p) {
                out.push(p.clone());
            }
        }
    }
    Ok(())
}

fn is_first_order_closed(t: &Term) -> bool {
    FoTerm::from_term(t).map(|f| f.is_closed()).unwrap_or(false)
}

/// The closed normal form shapes, by type: a case tree whose leaves are
/// epsilon at the null type, closed first-order terms at individuals, pairs
/// of shaped components at products, and abstractions at arrows.
pub fn normal_shape_ok(t: &Term, ty: &Type) -> bool {
    match t {
        Term::Case(_, yes, no) => normal_shape_ok(yes, ty) && normal_shape_ok(no, ty),
        _ => match ty {
            Type::Null => matches!(t, Term::Epsilon),
            Type::Iota => is_first_order_closed(t),
            Type::Prod(a, b) => match t {
                Term::Pair(x, y) => normal_shape_ok(x, a) && normal_shape_ok(y, b),
                _ => false,
            },
            Type::Arrow(..) => matches!(t, Term::Abs(..)),
        },
    }
}

fn count_cases(t: &Term) -> usize {
    match t {
        Term::Epsilon | Term::Const(_) | Term::Var(..) => 0,
        Term::FnApp(_, args) => args.iter().map(count_cases).sum(),
        Term::Pair(a, b) | Term::App(a, b) => count_cases(a) + count_cases(b),
        Term::Proj(_, a) => count_cases(a),
        Term::Abs(_, _, a) => count_cases(a),
        Term::Case(_, yes, no) => 1 + count_cases(yes) + count_cases(no),
    }
}

/// Criterion: on seeded well-typed closed terms, every reduction step
/// preserves the type, normalization ends within the fuel, and the normal
/// form matches the shape table.
pub fn kernel_soundness(seed: u64, count: usize) -> SuiteResult {
    let sig = samples::standard_signature();
    let mut rng = gen::seeded(seed);
    let mut suite = Suite::new("kernel-soundness");
    for i in 0..count {
        let ty = gen::random_type(&mut rng, 3);
        let t = gen::random_closed_term(&mut rng, &sig, &ty, 8);
        let run = || -> Result<(), String> {
            let declared = typecheck_closed(&t).map_err(|e| format!("generator bug: {e}"))?;
            if declared != ty {
                return Err(format!("generator bug: built {declared}, wanted {ty}"));
            }
            let mut cur = t.clone();
            let mut steps = 0u64;
            while let Some(next) = step(&cur) {
                steps += 1;
                if steps > DEFAULT_FUEL {
                    return Err(format!("no normal form after {DEFAULT_FUEL} steps"));
                }
                let after = typecheck_closed(&next)
                    .map_err(|e| format!("subject reduction broke at step {steps}: {e}"))?;
                if after != ty {
                    return Err(format!(
                        "subject reduction broke at step {steps}: {ty} became {after}"
                    ));
                }
                cur = next;
            }
            if !normal_shape_ok(&cur, &ty) {
                return Err(format!("normal form {cur} does not match the {ty} shape"));
            }
            Ok(())
        };
        suite.case(|| format!("term {i} ({t})"), run());
    }
    suite.done()
}

/// Criterion: the canonical inhabitant typechecks at its type, exhaustively
/// over every type of depth at most 3 and on seeded samples up to depth 6
/// (exhaustive enumeration beyond depth 3 is astronomically large).
pub fn inhabitation(seed: u64, sampled: usize) -> SuiteResult {
    let sig = samples::standard_signature();
    let mut suite = Suite::new("inhabitation");
    let check = |suite: &mut Suite, ty: &Type| {
        let t = inhabitant(ty, sig.designated_constant());
        let run = match typecheck_closed(&t) {
            Ok(found) if found == *ty => Ok(()),
            Ok(found) => Err(format!("inhabitant {t} has type {found}")),
            Err(e) => Err(format!("inhabitant {t} does not typecheck: {e}")),
        };
        suite.case(|| format!("type {ty}"), run);
    };
    for ty in gen::all_types(3) {
        check(&mut suite, &ty);
    }
    let mut rng = gen::seeded(seed);
    for _ in 0..sampled {
        let ty = gen::random_type(&mut rng, 6);
        check(&mut suite, &ty);
    }
    suite.done()
}

fn bundled_one_sided() -> Vec<(Signature, OneSided)> {
    let sig = samples::standard_signature();
    vec![
        (sig.clone(), samples::lem()),
        (sig.clone(), samples::x1()),
        (sig.clone(), samples::x2()),
        (sig, samples::x3()),
    ]
}

/// Criterion: at every end-sequent position, the transformer applied to
/// canonical counter-evidence is closed and has the evidence type.
pub fn transformer_typing(
    seed: u64,
    count: usize,
    corpus: &[(Signature, OneSided)],
) -> SuiteResult {
    let mut suite = Suite::new("transformer-typing");
    let mut pool = bundled_one_sided();
    pool.extend(corpus.iter().cloned());
    let sig = samples::standard_signature();
    let mut rng = gen::seeded(seed);
    for _ in 0..count {
        pool.push((sig.clone(), gen::random_one_sided(&mut rng, &sig)));
    }
    for (i, (sig, p)) in pool.iter().enumerate() {
        let run = || -> Result<(), String> {
            let end = check_one_sided(p).map_err(|e| e.to_string())?;
            let args = canonical_counter_args(sig, &end.0);
            for (j, a) in end.0.iter().enumerate() {
                let evidence =
                    transform(sig, p, j + 1, &args).map_err(|e| format!("position {}: {e}", j + 1))?;
                if !evidence.is_closed() {
                    return Err(format!("position {}: open output {evidence}", j + 1));
                }
                let found = typecheck_closed(&evidence)
                    .map_err(|e| format!("position {}: {e}", j + 1))?;
                let wanted = evidence_type(a);
                if found != wanted {
                    return Err(format!("position {}: got {found}, wanted {wanted}", j + 1));
                }
            }
            Ok(())
        };
        suite.case(|| format!("proof {i}"), run());
    }
    suite.done()
}

/// Criterion: substituting a first-order term for a free variable commutes
/// with the transformer.
pub fn substitution_lemma(seed: u64, count: usize) -> SuiteResult {
    let sig = samples::standard_signature();
    let mut rng = gen::seeded(seed);
    let mut suite = Suite::new("substitution-lemma");
    for i in 0..count {
        let (p, v) = gen::random_open_proof(&mut rng, &sig);
        let t = gen::random_fo_term(&mut rng, &sig, &[], 2);
        let open_args = rng.gen_bool(0.25);
        let mut run = || -> Result<(), String> {
            let end = check_one_sided(&p).map_err(|e| e.to_string())?;
            let args: Vec<Term> = if open_args {
                let mut env = vec![(v.clone(), Type::Iota)];
                let mut junk = 3;
                end.0
                    .iter()
                    .map(|a| {
                        gen::random_term_in(&mut rng, &sig, &mut env, &counter_type(a), 2, &mut junk)
                    })
                    .collect()
            } else {
                canonical_counter_args(&sig, &end.0)
            };
            let q = proof_subst(&p, &v, &t).map_err(|e| e.to_string())?;
            let subst_args: Vec<Term> = args.iter().map(|a| subst(a, &v, &t)).collect();
            for j in 1..=end.0.len() {
                let before = transform(&sig, &p, j, &args).map_err(|e| e.to_string())?;
                let after = transform(&sig, &q, j, &subst_args)
                    .map_err(|e| format!("substituted proof at {j}: {e}"))?;
                let substituted = subst(&before, &v, &t);
                if !alpha_eq_term(&substituted, &after, &mut AlphaCtx::default()) {
                    return Err(format!(
                        "position {j}: {substituted} differs from {after}"
                    ));
                }
            }
            Ok(())
        };
        suite.case(|| format!("triple {i} ({v} := {t})"), run());
    }
    suite.done()
}

/// Criterion: the disjunction of winning conditions is a tautology for every
/// proof, under canonical counter-evidence and under alternative vectors.
pub fn soundness_theorem(
    seed: u64,
    count: usize,
    alternatives: usize,
    corpus: &[(Signature, OneSided)],
) -> SuiteResult {
    let mut suite = Suite::new("soundness-theorem");
    let mut pool = bundled_one_sided();
    pool.extend(corpus.iter().cloned());
    let sig = samples::standard_signature();
    let mut rng = gen::seeded(seed);
    for _ in 0..count {
        pool.push((sig.clone(), gen::random_one_sided(&mut rng, &sig)));
    }
    for (i, (sig, p)) in pool.iter().enumerate() {
        let end = match check_one_sided(p) {
            Ok(s) => s,
            Err(e) => {
                suite.case(|| format!("proof {i}"), Err(e.to_string()));
                continue;
            }
        };
        let mut vectors = vec![("canonical", canonical_counter_args(sig, &end.0))];
        for _ in 0..alternatives {
            vectors.push(("generated", gen::random_counter_args(&mut rng, sig, &end.0)));
        }
        for (kind, args) in vectors {
            let run = || -> Result<(), String> {
                let report = check_soundness_report(sig, p, &args, DEFAULT_FUEL)
                    .map_err(|e| e.to_string())?;
                match report.outcome {
                    TautologyOutcome::Tautology => Ok(()),
                    TautologyOutcome::Falsified(assignment) => Err(format!(
                        "disjunction {} falsified under {assignment:?}",
                        report.disjunction
                    )),
                }
            };
            suite.case(|| format!("proof {i}, {kind} counter-evidence"), run());
        }
    }
    suite.done()
}

/// Criterion: extraction yields verified Herbrand disjunctions on the
/// bundled existence proofs (with their known witness sets) and on generated
/// existential goals; witness lists are nonempty and bounded by the case
/// count of the realizer.
pub fn herbrand_extraction(seed: u64, count: usize) -> SuiteResult {
    let sig = samples::standard_signature();
    let mut suite = Suite::new("herbrand-extraction");
    let c = FoTerm::Const("c".into());
    let fc = FoTerm::Fun("f".into(), vec![c.clone()]);
    let ffc = FoTerm::Fun("f".into(), vec![fc.clone()]);

    let x1 = extract(&sig, &samples::x1(), DEFAULT_FUEL);
    suite.case(
        || "bundled excluded-middle existence proof".into(),
        match &x1 {
            Ok(r) if r.witnesses == vec![c.clone()] && r.verified => Ok(()),
            Ok(r) => Err(format!("witnesses {:?}, verified {}", r.witnesses, r.verified)),
            Err(e) => Err(e.to_string()),
        },
    );

    let x2 = extract(&sig, &samples::x2(), DEFAULT_FUEL);
    suite.case(
        || "bundled two-witness proof".into(),
        match &x2 {
            Ok(r) => {
                if !r.verified {
                    Err("disjunction did not verify".into())
                } else if !(r.witnesses.contains(&c) && r.witnesses.contains(&fc)) {
                    Err(format!("witness set {:?} misses c or f(c)", r.witnesses))
                } else {
                    Ok(())
                }
            }
            Err(e) => Err(e.to_string()),
        },
    );

    // No single witness can satisfy the two-witness goal: check every
    // candidate against the three relevant atoms by direct decision.
    let drinker = Formula::or(
        Formula::atom("P", vec![Term::ivar("x")]),
        Formula::not(Formula::atom("P", vec![Term::FnApp("f".into(), vec![Term::ivar("x")])])),
    );
    for t in [&c, &fc, &ffc] {
        let instance = crate::logic::subst_formula(&drinker, &"x".to_string(), &t.to_term());
        let prop = qf_prop(&instance);
        let run = match tautology_outcome(&prop, DEFAULT_FUEL) {
            Ok(TautologyOutcome::Tautology) => {
                Err(format!("single witness {t} unexpectedly suffices"))
            }
            Ok(TautologyOutcome::Falsified(_)) => Ok(()),
            Err(e) => Err(e.to_string()),
        };
        suite.case(|| format!("single-witness refutation at {t}"), run);
    }

    let x3 = extract(&sig, &samples::x3(), DEFAULT_FUEL);
    suite.case(
        || "bundled proof through a cut".into(),
        match &x3 {
            Ok(r) if r.verified => Ok(()),
            Ok(_) => Err("disjunction did not verify".into()),
            Err(e) => Err(e.to_string()),
        },
    );

    let mut rng = gen::seeded(seed);
    for i in 0..count {
        let p = gen::random_exists_goal(&mut rng, &sig);
        let probe_alternative = i % 10 == 0;
        let mut run = || -> Result<(), String> {
            let r = extract(&sig, &p, DEFAULT_FUEL).map_err(|e| e.to_string())?;
            if !r.verified {
                return Err(format!("unverified disjunction {}", r.disjunction));
            }
            if r.witnesses.is_empty() {
                return Err("empty witness list".into());
            }
            if r.witnesses.len() > 1 + count_cases(&r.realizer) {
                return Err(format!(
                    "{} witnesses from a realizer with {} case nodes",
                    r.witnesses.len(),
                    count_cases(&r.realizer)
                ));
            }
            if probe_alternative {
                let end = check_one_sided(&p).map_err(|e| e.to_string())?;
                let ty = counter_type(&end.0[0]);
                let counter = gen::random_closed_term(&mut rng, &sig, &ty, 2);
                let alt =
                    extract_with_counter(&sig, &p, &counter, DEFAULT_FUEL).map_err(|e| e.to_string())?;
                if !alt.verified {
                    return Err(format!(
                        "alternative counter-evidence {counter} left the disjunction unverified"
                    ));
                }
            }
            Ok(())
        };
        suite.case(|| format!("generated goal {i}"), run());
    }
    suite.done()
}

fn qf_prop(f: &Formula) -> Prop {
    match f {
        Formula::Atom(p, args) => Prop::Atom(p.clone(), args.clone()),
        Formula::Or(a, b) => Prop::or(qf_prop(a), qf_prop(b)),
        Formula::Not(a) => Prop::not(qf_prop(a)),
        Formula::Exists(..) => unreachable!("quantifier-free by construction"),
    }
}

/// Criterion: the tautology decision agrees with truth-table enumeration on
/// small flat propositions, and case elimination preserves meaning under the
/// direct case-resolving evaluator.
pub fn verifier_oracle(seed: u64, count: usize) -> SuiteResult {
    let sig = samples::standard_signature();
    let mut rng = gen::seeded(seed);
    let mut suite = Suite::new("verifier-oracle");
    for i in 0..count {
        let p = gen::random_flat_prop(&mut rng, &sig, 4);
        let run = || -> Result<(), String> {
            let mut atoms = Vec::new();
            opaque_atoms(&p, &mut atoms).map_err(|e| e.to_string())?;
            let mut all_true = true;
            let mut witness_row = None;
            for mask in 0..(1u32 << atoms.len()) {
                let mut assign = |q: &Prop| {
                    let k = atoms.iter().position(|a| a == q).expect("atom was collected");
                    mask >> k & 1 == 1
                };
                if !eval_flat(&p, &mut assign).map_err(|e| e.to_string())? {
                    all_true = false;
                    witness_row = Some(mask);
                    break;
                }
            }
            match tautology_outcome(&p, DEFAULT_FUEL).map_err(|e| e.to_string())? {
                TautologyOutcome::Tautology if all_true => Ok(()),
                TautologyOutcome::Tautology => Err(format!(
                    "verifier says tautology, table row {} disagrees",
                    witness_row.unwrap()
                )),
                TautologyOutcome::Falsified(_) if !all_true => Ok(()),
                TautologyOutcome::Falsified(assignment) => {
                    Err(format!("verifier falsified a table tautology under {assignment:?}"))
                }
            }
        };
        suite.case(|| format!("flat proposition {i}"), run());
    }
    for i in 0..count {
        let p = gen::random_cased_prop(&mut rng, &sig);
        let run = || -> Result<(), String> {
            let eliminated = eliminate_cases(&p, DEFAULT_FUEL).map_err(|e| e.to_string())?;
            for salt in 0..8u64 {
                let mut assign = hashed_assignment(salt.wrapping_add(seed));
                let direct =
                    eval_with_cases(&p, &mut assign, DEFAULT_FUEL).map_err(|e| e.to_string())?;
                let mut assign = hashed_assignment(salt.wrapping_add(seed));
                let flat = eval_flat(&eliminated, &mut assign).map_err(|e| e.to_string())?;
                if direct != flat {
                    return Err(format!(
                        "assignment {salt}: direct {direct}, eliminated {flat} on {eliminated}"
                    ));
                }
            }
            Ok(())
        };
        suite.case(|| format!("cased proposition {i}"), run());
    }
    suite.done()
}

/// Criterion: translating a two-sided proof yields a one-sided proof of the
/// negated antecedent followed by the succedent.
pub fn translation(seed: u64, count: usize) -> SuiteResult {
    let sig = samples::standard_signature();
    let mut rng = gen::seeded(seed);
    let mut suite = Suite::new("translation");
    let mut pool = vec![samples::two_sided_id(), samples::two_sided_demo()];
    for _ in 0..count {
        pool.push(gen::random_two_sided(&mut rng, &sig));
    }
    for (i, p) in pool.iter().enumerate() {
        let run = || -> Result<(), String> {
            let two = check_two_sided(p).map_err(|e| e.to_string())?;
            let image = sequent_image(&two);
            let one = translate(p).map_err(|e| format!("translation failed: {e}"))?;
            let end = check_one_sided(&one).map_err(|e| format!("output does not check: {e}"))?;
            if end != image {
                return Err(format!("end sequent {end}, wanted {image}"));
            }
            Ok(())
        };
        suite.case(|| format!("two-sided proof {i}"), run());
    }
    suite.done()
}

/// Every suite at `count` generated cases each, bundled corpus only. The
/// acceptance target calls the suites individually at their contracted
/// scales; this entry point backs the CLI fuzz subcommand.
pub fn run_all(seed: u64, count: usize) -> Vec<SuiteResult> {
    vec![
        kernel_soundness(seed, count),
        inhabitation(seed, count),
        transformer_typing(seed, count.min(200), &[]),
        substitution_lemma(seed, count.min(200)),
        soundness_theorem(seed, count.min(200), 1, &[]),
        herbrand_extraction(seed, count.min(100)),
        verifier_oracle(seed, count),
        translation(seed, count.min(200)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_clean(r: SuiteResult) {
        assert!(r.passed(), "{}", r.line());
        assert!(r.cases > 0);
    }

    #[test]
    fn kernel_suite_passes_at_smoke_scale() {
        assert_clean(kernel_soundness(1, 60));
    }

    #[test]
    fn inhabitation_suite_passes_at_smoke_scale() {
        assert_clean(inhabitation(2, 50));
    }

    #[test]
    fn transformer_suite_passes_at_smoke_scale() {
        assert_clean(transformer_typing(3, 15, &[]));
    }

    #[test]
    fn substitution_suite_passes_at_smoke_scale() {
        assert_clean(substitution_lemma(4, 15));
    }

    #[test]
    fn soundness_suite_passes_at_smoke_scale() {
        assert_clean(soundness_theorem(5, 10, 1, &[]));
    }

    #[test]
    fn herbrand_suite_passes_at_smoke_scale() {
        assert_clean(herbrand_extraction(6, 10));
    }

    #[test]
    fn verifier_suite_passes_at_smoke_scale() {
        assert_clean(verifier_oracle(7, 40));
    }

    #[test]
    fn translation_suite_passes_at_smoke_scale() {
        assert_clean(translation(8, 20));
    }

    #[test]
    fn failures_render_with_their_case_labels() {
        let mut s = Suite::new("demo");
        s.case(|| "case 0".into(), Ok(()));
        s.case(|| "case 1".into(), Err("boom".into()));
        let r = s.done();
        assert!(!r.passed());
        assert_eq!(r.cases, 2);
        assert!(r.line().contains("1 of 2"));
        assert!(r.line().contains("case 1: boom"));
    }

    #[test]
    fn shape_table_rejects_foreign_forms() {
        let iota = Type::Iota;
        assert!(normal_shape_ok(&Term::cnst("c"), &iota));
        assert!(!normal_shape_ok(&Term::Epsilon, &iota));
        assert!(normal_shape_ok(
            &Term::case(
                Prop::atom("P", vec![Term::cnst("c")]),
                Term::cnst("c"),
                Term::FnApp("f".into(), vec![Term::cnst("c")]),
            ),
            &iota
        ));
        let pair_ty = Type::prod(Type::Null, Type::Iota);
        assert!(normal_shape_ok(&Term::pair(Term::Epsilon, Term::cnst("c")), &pair_ty));
        assert!(!normal_shape_ok(&Term::pair(Term::cnst("c"), Term::cnst("c")), &pair_ty));
        assert!(!normal_shape_ok(&Term::ivar("x"), &iota));
    }
}
