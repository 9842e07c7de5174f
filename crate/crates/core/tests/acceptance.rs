//! Acceptance suite. Runs every criterion, prints one `[PASS]`/`[FAIL]`
//! line each and exits non-zero if any failed. Tolerances are the consts
//! below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tenseprove::calculus::RuleGroup;
use tenseprove::formula::parse;
use tenseprove::generate::{corpus, GenConfig};
use tenseprove::metatheory::{check, contract, cut_with_trace, to_ktstar, weaken};
use tenseprove::prover::{
    extract_model, prune, prove_sequent, search, try_prove, Budget, ProverError, Report,
    SearchNode, SearchOutcome, Status,
};
use tenseprove::semantics::{
    bounded_countermodel_search, bounded_countermodel_search_in, falsifies, falsifies_in, forces,
    forces_in, Frame, KripkeModel, DEFAULT_ORACLE_CAP,
};
use tenseprove::sequent::{merge, Side};
use tenseprove::{CalculusVariant, Derivation, Formula, LinearNestedSequent, Multiset, RuleId};

use CalculusVariant::{KtStar, Kt, KB};

const SINGLE_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 500;
const CORPUS_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_WORLDS: usize = 3;
const CUT_INSTANCES: usize = 100;
const CUT_LIMIT: Duration = Duration::from_secs(10);
const MIN_BOXR1_CUTS: usize = 20;
const MIN_PROPOSITIONAL_CUTS: usize = 10;
const MIN_BOXED_CUTS: usize = 10;
const ROUND_TRIPS: usize = 500;
const ROUND_TRIP_SEED: u64 = 7;
const KB_SAMPLE: usize = 200;
const KB_SEED: u64 = 99;

type Outcome = Result<String, String>;

fn formula(text: &str) -> Formula {
    parse(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn sequent(text: &str) -> LinearNestedSequent {
    LinearNestedSequent::parse(text)
        .unwrap_or_else(|e| panic!("{text}: {e}"))
        .desugared()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

/// Prove, re-check and time a single formula.
fn certified_valid(f: &Formula, v: CalculusVariant) -> Result<(Derivation, Duration), String> {
    let (r, took) = timed(|| try_prove(f, v, &Budget::default()));
    let r = r.map_err(|e| format!("{f} [{v}]: {e}"))?;
    match r.outcome {
        SearchOutcome::Valid(d) => {
            ensure(check(&d, v), || format!("{f} [{v}]: derivation rejected"))?;
            ensure(took < SINGLE_LIMIT, || format!("{f} [{v}]: took {took:?}"))?;
            Ok((d, took))
        }
        other => Err(format!("{f} [{v}]: expected valid, got {}", other.verdict())),
    }
}

// ---------------------------------------------------------------------------

fn c1_axioms() -> Outcome {
    let corpus = [
        "p -> p",
        "p -> (q -> p)",
        "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
        "((p -> q) -> p) -> p",
        "~~p -> p",
        "p | ~p",
        "(p & q) -> (q & p)",
        "false -> p",
        "[F](p -> q) -> ([F]p -> [F]q)",
        "[P](p -> q) -> ([P]p -> [P]q)",
        "<F>[P]p -> p",
        "<P>[F]p -> p",
    ];
    let mut slowest = Duration::ZERO;
    for text in corpus {
        let f = formula(text);
        for v in [Kt, KtStar] {
            slowest = slowest.max(certified_valid(&f, v)?.1);
        }
    }
    Ok(format!("{} formulas x 2 variants, slowest {slowest:?}", corpus.len()))
}

fn c2_interaction() -> Outcome {
    let f = formula("p -> [F]~[P]~p");
    let mut out = Vec::new();
    for v in [Kt, KtStar] {
        let (d, took) = certified_valid(&f, v)?;
        out.push(format!("{v}: {} nodes in {took:?}", d.node_count()));
    }
    Ok(out.join(", "))
}

fn c3_restart_derivation() -> Outcome {
    let s = sequent("=> [F]p, [F]q, r -> [P]~[F]~r");
    let (r, took) = timed(|| prove_sequent(&s, Kt, &Budget::default()));
    let r = r.map_err(|e| e.to_string())?;
    let SearchOutcome::Valid(d) = r.outcome else {
        return Err(format!("expected valid, got {}", r.outcome.verdict()));
    };
    ensure(check(&d, Kt), || "derivation rejected".into())?;
    ensure(d.conclusion == s, || "wrong conclusion".into())?;
    let rules = d.rule_counts();
    for needed in [RuleId::BlackBoxR2, RuleId::BoxL2] {
        ensure(rules.contains_key(&needed), || format!("no {needed} in {rules:?}"))?;
    }
    ensure(took < SINGLE_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("rules {rules:?} in {took:?}"))
}

fn invalid(r: Result<Report, ProverError>) -> Result<(KripkeModel, String, Report), String> {
    let r = r.map_err(|e| e.to_string())?;
    match &r.outcome {
        SearchOutcome::Invalid { model, root } => {
            let ok = falsifies(model, root, &r.end_sequent).map_err(|e| e.to_string())?;
            ensure(ok, || "model does not falsify the sequent".into())?;
            Ok((model.clone(), root.clone(), r))
        }
        other => Err(format!("expected invalid, got {}", other.verdict())),
    }
}

fn c4_fan_countermodel() -> Outcome {
    let s = sequent("=> [F]p, [F]q, [P]r");
    let (m, root, _) = invalid(prove_sequent(&s, Kt, &Budget::default()))?;
    let holds = |w: &str, a: &str| forces(&m, w, &formula(a)).unwrap();
    let succ = m.successors(&root);
    let no_p: Vec<_> = succ.iter().filter(|w| !holds(w, "p")).collect();
    let no_q: Vec<_> = succ.iter().filter(|w| !holds(w, "q")).collect();
    ensure(succ.len() >= 2, || format!("successors {succ:?}"))?;
    ensure(
        no_p.iter().any(|a| no_q.iter().any(|b| a != b)),
        || "no two distinct successors falsifying p and q".into(),
    )?;
    let pred = m.predecessors(&root);
    ensure(pred.iter().any(|w| !holds(w, "r")), || format!("predecessors {pred:?}"))?;

    let s2 = sequent("=> [F]p, [F]q, [P]~[F]r2");
    let (m2, _, r2) = invalid(prove_sequent(&s2, Kt, &Budget::default()))?;
    ensure(r2.statistics.restarts > 0, || "variant did not restart".into())?;
    Ok(format!(
        "{} worlds, {} successors, {} predecessors; variant: {} worlds, {} restarts",
        m.worlds().len(),
        succ.len(),
        pred.len(),
        m2.worlds().len(),
        r2.statistics.restarts
    ))
}

// ---------------------------------------------------------------------------

struct Run {
    formula: Formula,
    kt: Result<Report, ProverError>,
    ktstar: Result<Report, ProverError>,
}

struct CorpusRuns {
    runs: Vec<Run>,
    elapsed: Duration,
}

fn run_corpus() -> CorpusRuns {
    let start = Instant::now();
    let runs = corpus(CORPUS_SEED, CORPUS_SIZE, &GenConfig::default())
        .into_iter()
        .map(|f| Run {
            kt: try_prove(&f, Kt, &Budget::default()),
            ktstar: try_prove(&f, KtStar, &Budget::default()),
            formula: f,
        })
        .collect();
    CorpusRuns {
        runs,
        elapsed: start.elapsed(),
    }
}

impl Run {
    fn both(&self) -> [(CalculusVariant, &Result<Report, ProverError>); 2] {
        [(Kt, &self.kt), (KtStar, &self.ktstar)]
    }
}

fn c5_certification(c: &CorpusRuns) -> Outcome {
    let start = Instant::now();
    let (mut valid, mut invalid, mut exhausted) = (0, 0, 0);
    let mut failures = Vec::new();
    for run in &c.runs {
        for (v, r) in run.both() {
            match r {
                Err(e) => failures.push(format!("{} [{v}]: {e}", run.formula)),
                Ok(rep) => match &rep.outcome {
                    SearchOutcome::Valid(d) => {
                        valid += 1;
                        if !check(d, v) {
                            failures.push(format!("{} [{v}]: derivation rejected", run.formula));
                        }
                    }
                    SearchOutcome::Invalid { model, root } => {
                        invalid += 1;
                        if falsifies(model, root, &rep.end_sequent) != Ok(true) {
                            failures.push(format!("{} [{v}]: model rejected", run.formula));
                        }
                    }
                    SearchOutcome::ResourceLimit(_) => exhausted += 1,
                },
            }
        }
    }
    let total = c.elapsed + start.elapsed();
    ensure(failures.is_empty(), || failures.join("; "))?;
    ensure(exhausted == 0, || format!("{exhausted} budget exhaustions"))?;
    ensure(total < CORPUS_LIMIT, || format!("took {total:?}"))?;
    Ok(format!(
        "{} formulas: {valid} valid / {invalid} invalid certificates re-checked in {total:.2?}",
        c.runs.len()
    ))
}

fn c6_oracle(c: &CorpusRuns) -> Outcome {
    let (mut valid, mut invalid) = (0, 0);
    for run in &c.runs {
        let f = &run.formula;
        let Ok(rep) = &run.kt else {
            return Err(format!("{f}: no verdict"));
        };
        match &rep.outcome {
            SearchOutcome::Valid(_) => {
                valid += 1;
                let found = bounded_countermodel_search(f, ORACLE_WORLDS).map_err(|e| e.to_string())?;
                ensure(found.is_none(), || format!("{f}: oracle found a countermodel"))?;
            }
            SearchOutcome::Invalid { model, root } => {
                invalid += 1;
                ensure(forces(model, root, f) == Ok(false), || {
                    format!("{f}: countermodel forces the formula")
                })?;
            }
            SearchOutcome::ResourceLimit(_) => return Err(format!("{f}: resource limit")),
        }
    }
    Ok(format!(
        "{valid} valid with no <={ORACLE_WORLDS}-world countermodel, {invalid} models confirmed"
    ))
}

fn c7_variants(c: &CorpusRuns) -> Outcome {
    let mut translated = 0;
    for run in &c.runs {
        let f = &run.formula;
        let (Ok(kt), Ok(ks)) = (&run.kt, &run.ktstar) else {
            return Err(format!("{f}: no verdict"));
        };
        ensure(kt.outcome.verdict() == ks.outcome.verdict(), || {
            format!("{f}: {} vs {}", kt.outcome.verdict(), ks.outcome.verdict())
        })?;
        if let SearchOutcome::Valid(d) = &kt.outcome {
            let star = to_ktstar(d).map_err(|e| format!("{f}: {e}"))?;
            ensure(check(&star, KtStar) && star.conclusion == d.conclusion, || {
                format!("{f}: translated derivation rejected")
            })?;
            translated += 1;
        }
    }
    Ok(format!(
        "{} verdict pairs agree, {translated} derivations translated",
        c.runs.len()
    ))
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum CutFamily {
    Propositional,
    Boxed,
    BoxR1Principal,
}

struct CutCandidate {
    s1: String,
    s2: String,
    a: String,
}

fn cut_candidates() -> Vec<CutCandidate> {
    let mut out = vec![CutCandidate {
        s1: "p => q -> p".into(),
        s2: "q -> p, q => p".into(),
        a: "q -> p".into(),
    }];
    let pieces = [
        "p", "q", "~p", "p -> q", "p & q", "p | q", "[F]p", "[P]q", "<F>p", "[F](p -> q)",
        "~[P]p", "[F][P]p",
    ];
    for a in pieces {
        for (b, c) in [("q", "r"), ("r", "p"), ("p & r", "q | r")] {
            out.push(CutCandidate {
                s1: format!("({b}), ({b}) -> ({a}) => ({a})"),
                s2: format!("({a}), ({a}) -> ({c}) => ({c})"),
                a: a.into(),
            });
        }
    }
    let k_pattern = |b: &str, x: &str, y: &str, z: &str| {
        (
            format!("{b}(({y}) -> ({x})), {b}({y}) => {b}({x})"),
            format!("{b}({x}), {b}(({x}) -> ({z})) => {b}({z})"),
            format!("{b}({x})"),
        )
    };
    let xs = ["p", "p -> q", "~q", "[F]p", "[P]q"];
    for b in ["[F]", "[P]"] {
        for x in xs {
            for (y, z) in [("q", "r"), ("r", "q")] {
                let (s1, s2, a) = k_pattern(b, x, y, z);
                out.push(CutCandidate { s1, s2, a });
            }
        }
    }
    for (b, ctx) in [("[F]", "r => q /F/"), ("[P]", "r => q \\P\\")] {
        for x in xs {
            let (s1, s2, a) = k_pattern(b, x, "q", "r");
            out.push(CutCandidate {
                s1: format!("{ctx} {s1}"),
                s2: format!("{ctx} {s2}"),
                a,
            });
        }
    }
    let templates = [
        "q -> q",
        "p -> (q -> p)",
        "[F](p -> q) -> ([F]p -> [F]q)",
        "[P](p -> q) -> ([P]p -> [P]q)",
        "q -> [F]~[P]~q",
        "q -> [P]~[F]~q",
    ];
    let contexts = [
        ("p", "q", "r", "s"),
        ("", "p", "q", ""),
        ("q", "", "", "r"),
        ("p & q", "r", "s", "p"),
    ];
    for (b, link) in [("[F]", "\\P\\"), ("[P]", "/F/")] {
        for x in templates {
            for (psi, theta, gamma, pi) in contexts {
                out.push(CutCandidate {
                    s1: format!("{psi} => {theta} {link} {gamma} => {b}({x})"),
                    s2: format!("=> {x} {link} {b}({x}) => {pi}"),
                    a: format!("{b}({x})"),
                });
            }
        }
    }
    out
}

fn valid_derivation(s: &LinearNestedSequent) -> Option<Derivation> {
    match prove_sequent(s, Kt, &Budget::default()).ok()?.outcome {
        SearchOutcome::Valid(d) => Some(d),
        _ => None,
    }
}

fn c8_cut() -> Outcome {
    let mut instances = Vec::new();
    let candidates = cut_candidates();
    let offered = candidates.len();
    for c in candidates {
        let (s1, s2) = (sequent(&c.s1), sequent(&c.s2));
        let a = formula(&c.a).desugar();
        if let (Some(d1), Some(d2)) = (valid_derivation(&s1), valid_derivation(&s2)) {
            instances.push((d1, d2, a));
        }
    }
    ensure(instances.len() >= CUT_INSTANCES, || {
        format!("only {} instances assembled", instances.len())
    })?;
    let skipped = offered - instances.len();
    instances.truncate(CUT_INSTANCES);

    let mut counts = [0usize; 3];
    let mut calls = 0;
    let start = Instant::now();
    for (d1, d2, a) in &instances {
        let family = if matches!(d1.rule, RuleId::BoxR1 | RuleId::BlackBoxR1) {
            CutFamily::BoxR1Principal
        } else if a.modal_degree() == 0 {
            CutFamily::Propositional
        } else {
            CutFamily::Boxed
        };
        counts[family as usize] += 1;
        let (out, trace) = cut_with_trace(d1, d2, a).map_err(|e| format!("cut on {a}: {e}"))?;
        let mut left = d1.conclusion.clone();
        left.last_mut().succedent.remove_one(a);
        let mut right = d2.conclusion.clone();
        right.last_mut().antecedent.remove_one(a);
        let expected = merge(&left, &right).map_err(|e| e.to_string())?;
        ensure(check(&out, Kt), || format!("cut on {a}: output rejected"))?;
        ensure(out.conclusion == expected, || {
            format!("cut on {a}: concludes {} not {expected}", out.conclusion)
        })?;
        ensure(trace.strictly_decreasing(), || format!("cut on {a}: measure did not decrease"))?;
        calls += trace.calls.len();
    }
    let took = start.elapsed();
    let [prop, boxed, boxr1] = counts;
    ensure(prop >= MIN_PROPOSITIONAL_CUTS, || format!("{prop} propositional cuts"))?;
    ensure(boxed >= MIN_BOXED_CUTS, || format!("{boxed} boxed cuts"))?;
    ensure(boxr1 >= MIN_BOXR1_CUTS, || format!("{boxr1} BoxR1-principal cuts"))?;
    ensure(took < CUT_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{} cuts ({prop} propositional, {boxed} boxed, {boxr1} right-box principal; \
         {skipped} of {offered} candidates without a derivation), {calls} shift calls, {took:.2?}",
        instances.len()
    ))
}

// ---------------------------------------------------------------------------

fn c9_structural(c: &CorpusRuns) -> Outcome {
    let proofs: Vec<(&Derivation, CalculusVariant)> = c
        .runs
        .iter()
        .flat_map(Run::both)
        .filter_map(|(v, r)| match &r.as_ref().ok()?.outcome {
            SearchOutcome::Valid(d) => Some((d, v)),
            _ => None,
        })
        .collect();
    ensure(!proofs.is_empty(), || "no derivations".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(ROUND_TRIP_SEED);
    let mut done = 0;
    let mut deep = 0;
    while done < ROUND_TRIPS {
        let &(root, v) = proofs.choose(&mut rng).unwrap();
        let mut nodes = Vec::new();
        root.visit(&mut |d| nodes.push(d));
        let d = *nodes.choose(&mut rng).unwrap();
        let position = rng.gen_range(0..d.conclusion.len());
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        let present: Vec<&Formula> = d.conclusion.component(position).side(side).distinct().collect();
        let Some(&f) = present.choose(&mut rng) else {
            continue;
        };
        let one = Multiset::new().with(f.clone());
        let (l, r) = match side {
            Side::Left => (one, Multiset::new()),
            Side::Right => (Multiset::new(), one),
        };
        let w = weaken(d, position, &l, &r).map_err(|e| format!("weaken: {e}"))?;
        let back = contract(&w, position, side, f).map_err(|e| format!("contract: {e}"))?;
        ensure(check(&w, v) && check(&back, v), || "round trip rejected".into())?;
        ensure(w.height <= d.height && back.height <= w.height, || {
            format!("height grew: {} -> {} -> {}", d.height, w.height, back.height)
        })?;
        ensure(back.conclusion == d.conclusion, || "round trip changed the conclusion".into())?;
        deep += usize::from(position > 0);
        done += 1;
    }
    Ok(format!("{done} round trips over {} derivations, {deep} at inner components", proofs.len()))
}

fn c10_kb() -> Outcome {
    for text in ["p -> [F]~[F]~p", "[F](p -> q) -> ([F]p -> [F]q)"] {
        certified_valid(&formula(text), KB)?;
    }
    let sample = corpus(KB_SEED, KB_SAMPLE, &GenConfig::modal_only());
    let (mut valid, mut kt_valid) = (0, 0);
    for f in &sample {
        let r = try_prove(f, KB, &Budget::default()).map_err(|e| format!("{f}: {e}"))?;
        let kb_valid = match &r.outcome {
            SearchOutcome::Valid(d) => {
                ensure(check(d, KB), || format!("{f}: derivation rejected"))?;
                let found = bounded_countermodel_search_in(f, ORACLE_WORLDS, Frame::Symmetric, DEFAULT_ORACLE_CAP)
                    .map_err(|e| e.to_string())?;
                ensure(found.is_none(), || format!("{f}: symmetric oracle disagrees"))?;
                valid += 1;
                true
            }
            SearchOutcome::Invalid { model, root } => {
                let closed = model.symmetric_closure();
                ensure(forces_in(&closed, root, f, Frame::Directed) == Ok(false), || {
                    format!("{f}: closed model forces the formula")
                })?;
                ensure(
                    falsifies_in(model, root, &r.end_sequent, Frame::Symmetric) == Ok(true),
                    || format!("{f}: model rejected"),
                )?;
                false
            }
            SearchOutcome::ResourceLimit(_) => return Err(format!("{f}: resource limit")),
        };
        if let SearchOutcome::Valid(_) = try_prove(f, Kt, &Budget::default())
            .map_err(|e| format!("{f}: {e}"))?
            .outcome
        {
            kt_valid += 1;
            ensure(kb_valid, || format!("{f}: Kt-valid but not KB-valid"))?;
        }
    }
    Ok(format!(
        "axioms valid; {KB_SAMPLE} formulas certified ({valid} valid), {kt_valid} Kt-valid all KB-valid"
    ))
}

// ---------------------------------------------------------------------------

/// Restart targets reached through length-1 sequents only, and the number
/// reached otherwise.
fn restart_targets<'a>(n: &'a SearchNode, clean: bool, out: &mut (Vec<&'a SearchNode>, usize)) {
    let clean = clean && n.sequent.len() == 1;
    let restart = n.rule().is_some_and(|r| r.group() == RuleGroup::Restart);
    for c in &n.children {
        if restart {
            if clean && c.sequent.len() == 1 {
                out.0.push(c);
            } else {
                out.1 += 1;
            }
        }
        restart_targets(c, clean, out);
    }
}

fn c11_pruning() -> Outcome {
    let s = sequent("=> [F]((p & ~p) | ~[P][F]q), [F]((r & ~r) | ~[P][F]s)");
    let (status, tree, _) = search(&s, Kt, &Budget::default()).map_err(|e| e.to_string())?;
    ensure(status == Status::Failed, || format!("search ended {status:?}"))?;
    let pruned = prune(&tree);
    let mut found = (Vec::new(), 0);
    restart_targets(&pruned, true, &mut found);
    let (targets, dirty) = found;
    ensure(!targets.is_empty(), || "no restart survives pruning".into())?;
    ensure(dirty == 0, || format!("{dirty} restart targets below a longer sequent"))?;
    let (m, root) = extract_model(&pruned, Kt).map_err(|e| e.to_string())?;
    ensure(falsifies(&m, &root, &s) == Ok(true), || "model rejected".into())?;
    let shown: Vec<String> = targets.iter().map(|t| t.sequent.to_string()).collect();
    Ok(format!(
        "{} -> {} nodes; restart targets [{}]; {} worlds",
        tree.size(),
        pruned.size(),
        shown.join(" | "),
        m.worlds().len()
    ))
}

// ---------------------------------------------------------------------------

fn report(id: usize, name: &str, body: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    match &result {
        Ok(detail) => println!("[PASS] C{id:<2} {name}: {detail}"),
        Err(why) => println!("[FAIL] C{id:<2} {name}: {why}"),
    }
    result.is_ok()
}

fn main() -> ExitCode {
    let runs = run_corpus();
    let results = [
        report(1, "axiom corpus", c1_axioms),
        report(2, "interaction formula, cut-free", c2_interaction),
        report(3, "restart derivation", c3_restart_derivation),
        report(4, "fan countermodel", c4_fan_countermodel),
        report(5, "certification suite", || c5_certification(&runs)),
        report(6, "oracle consistency", || c6_oracle(&runs)),
        report(7, "variant agreement", || c7_variants(&runs)),
        report(8, "cut elimination", c8_cut),
        report(9, "structural admissibility", || c9_structural(&runs)),
        report(10, "KB", c10_kb),
        report(11, "pruning regression", c11_pruning),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
