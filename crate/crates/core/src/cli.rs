//! Command-line front end. [`run`] takes the argument list and I/O handles
//! and returns the process exit code, so it is testable without spawning.
//!
//! Exit codes: 0 valid / check passed / forced, 1 invalid / check failed /
//! not forced / corpus mismatch, 2 resource limit, 3 usage or parse error,
//! 4 internal error (a certificate that failed its re-check).

use std::collections::BTreeSet;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::calculus::CalculusVariant;
use crate::format;
use crate::formula::{parse, Formula};
use crate::generate::{self, GenConfig};
use crate::metatheory::{check_detailed, Derivation};
use crate::prover::{try_prove, Budget, Report, SearchOutcome};
use crate::semantics::{falsifies_in, forces_in, Frame, KripkeModel};

pub const EXIT_VALID: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "tenseprove", version, about = "Certified decision procedure for Kt and KB")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Logic {
    Kt,
    Kb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Calculus {
    Lns,
    LnsStar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
    Dot,
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    #[arg(long, value_enum, default_value_t = Logic::Kt, global = true)]
    pub logic: Logic,
    #[arg(long, value_enum, default_value_t = Calculus::LnsStar, global = true)]
    pub calculus: Calculus,
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    #[arg(long, default_value_t = Budget::DEFAULT_NODES, global = true)]
    pub budget_nodes: u64,
    #[arg(long, env = "TENSEPROVE_BUDGET_MS", default_value_t = Budget::DEFAULT_MS, global = true)]
    pub budget_ms: u64,
    /// Re-verify the emitted certificate from its serialized form.
    #[arg(long, global = true)]
    pub certify: bool,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Include search statistics (wall-clock times make output
    /// non-reproducible).
    #[arg(long, global = true)]
    pub stats: bool,
}

impl Config {
    pub fn variant(&self) -> Result<CalculusVariant, String> {
        match (self.logic, self.calculus) {
            (Logic::Kt, Calculus::Lns) => Ok(CalculusVariant::Kt),
            (Logic::Kt, Calculus::LnsStar) => Ok(CalculusVariant::KtStar),
            (Logic::Kb, Calculus::LnsStar) => Ok(CalculusVariant::KB),
            (Logic::Kb, Calculus::Lns) => {
                Err("--logic kb has a single rule set; drop --calculus lns".into())
            }
        }
    }

    fn budget(&self) -> Budget {
        Budget::new(self.budget_nodes, self.budget_ms)
    }

    fn frame(&self) -> Frame {
        match self.logic {
            Logic::Kt => Frame::Directed,
            Logic::Kb => Frame::Symmetric,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a formula: exit 0 valid, 1 invalid, 2 resource limit.
    Decide {
        /// Formula text, or `-` for stdin.
        formula: String,
        #[command(flatten)]
        config: Config,
    },
    /// Like decide, but only a derivation counts as success.
    Prove {
        formula: String,
        #[command(flatten)]
        config: Config,
    },
    /// Check a derivation JSON file (or `-`).
    Check {
        derivation: String,
        #[command(flatten)]
        config: Config,
    },
    /// Evaluate a formula at the root of a model JSON file.
    Modelcheck {
        model: String,
        formula: String,
        #[command(flatten)]
        config: Config,
    },
    /// Run a corpus file of `expected<TAB>formula` lines, or a seeded
    /// random corpus.
    Corpus {
        /// Corpus file or `-`; omit with --random.
        file: Option<String>,
        /// Generate this many random formulas from --seed instead.
        #[arg(long)]
        random: Option<usize>,
        #[command(flatten)]
        config: Config,
    },
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_source(&mut self, source: &str) -> Result<String, String> {
        if source == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| e.to_string())?;
            Ok(s)
        } else {
            std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))
        }
    }

    fn usage(&mut self, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        EXIT_USAGE
    }
}

/// Parse `args` (program name first) and execute.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_VALID };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut io = Io { stdin, out, err };
    match cli.command {
        Command::Decide { formula, config } => decide(&mut io, &formula, &config, false),
        Command::Prove { formula, config } => decide(&mut io, &formula, &config, true),
        Command::Check { derivation, config } => check(&mut io, &derivation, &config),
        Command::Modelcheck {
            model,
            formula,
            config,
        } => modelcheck(&mut io, &model, &formula, &config),
        Command::Corpus {
            file,
            random,
            config,
        } => corpus(&mut io, file.as_deref(), random, &config),
    }
}

fn read_formula(io: &mut Io, source: &str) -> Result<Formula, String> {
    let text = if source == "-" {
        io.read_source("-")?
    } else {
        source.to_string()
    };
    parse(text.trim()).map_err(|e| format!("cannot parse `{}`: {e}", text.trim()))
}

fn atoms_of(f: &Formula) -> BTreeSet<String> {
    f.atoms().iter().map(|a| a.to_string()).collect()
}

fn decide(io: &mut Io, source: &str, config: &Config, require_valid: bool) -> i32 {
    let v = match config.variant() {
        Ok(v) => v,
        Err(e) => return io.usage(e),
    };
    let f = match read_formula(io, source) {
        Ok(f) => f,
        Err(e) => return io.usage(e),
    };
    let report = match try_prove(&f, v, &config.budget()) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(io.err, "internal error: {e}");
            return EXIT_INTERNAL;
        }
    };
    let doc = render(&f, v, &report, config);
    if config.certify {
        if let Err(e) = certify(&f, v, &report, config) {
            let _ = writeln!(io.err, "certificate re-check failed: {e}");
            return EXIT_INTERNAL;
        }
        let _ = writeln!(io.err, "certificate re-checked");
    }
    let code = match report.outcome {
        SearchOutcome::Valid(_) => EXIT_VALID,
        SearchOutcome::Invalid { .. } => EXIT_INVALID,
        SearchOutcome::ResourceLimit(_) => EXIT_LIMIT,
    };
    if require_valid && code != EXIT_VALID {
        let _ = writeln!(io.err, "`{f}` is not provable ({})", report.outcome.verdict());
    }
    let _ = io.out.write_all(doc.as_bytes());
    code
}

/// Re-check the certificate by parsing it back from JSON, independent of
/// the in-memory objects the prover returned.
fn certify(
    f: &Formula,
    v: CalculusVariant,
    report: &Report,
    config: &Config,
) -> Result<(), String> {
    match &report.outcome {
        SearchOutcome::Valid(d) => {
            let text = format::derivation_to_json(d, Some(v)).to_string();
            let (back, _) = format::derivation_from_json(&text).map_err(|e| e.to_string())?;
            check_detailed(&back, v).map_err(|e| e.to_string())?;
            if back.conclusion != report.end_sequent {
                return Err("derivation does not conclude the end-sequent".into());
            }
            Ok(())
        }
        SearchOutcome::Invalid { model, root } => {
            let text = format::model_to_json(model, root, &atoms_of(f)).to_string();
            let (back, root) = format::model_from_json(&text).map_err(|e| e.to_string())?;
            match falsifies_in(&back, &root, &report.end_sequent, config.frame()) {
                Ok(true) => Ok(()),
                Ok(false) => Err("model does not falsify the end-sequent".into()),
                Err(e) => Err(e.to_string()),
            }
        }
        SearchOutcome::ResourceLimit(_) => Ok(()),
    }
}

fn render(f: &Formula, v: CalculusVariant, report: &Report, config: &Config) -> String {
    match config.output {
        Output::Json => {
            let mut doc = json!({
                "schema_version": format::SCHEMA_VERSION,
                "formula": f.to_ascii(),
                "variant": v.name(),
                "verdict": report.outcome.verdict(),
            });
            match &report.outcome {
                SearchOutcome::Valid(d) => {
                    doc["derivation"] = format::derivation_to_json(d, Some(v))["derivation"].clone();
                }
                SearchOutcome::Invalid { model, root } => {
                    doc["model"] = format::model_to_json(model, root, &atoms_of(f));
                }
                SearchOutcome::ResourceLimit(_) => {}
            }
            if config.stats || matches!(report.outcome, SearchOutcome::ResourceLimit(_)) {
                doc["statistics"] = stats_json(report, config.stats);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Output::Text => {
            let mut out = format!("{}: {}\n", report.outcome.verdict(), f);
            match &report.outcome {
                SearchOutcome::Valid(d) => out.push_str(&d.to_string()),
                SearchOutcome::Invalid { model, root } => out.push_str(&model_text(model, root)),
                SearchOutcome::ResourceLimit(s) => {
                    out.push_str(&format!("budget exhausted after {} nodes\n", s.nodes))
                }
            }
            if config.stats {
                out.push_str(&format!("statistics: {}\n", stats_json(report, true)));
            }
            out
        }
        Output::Latex => match &report.outcome {
            SearchOutcome::Valid(d) => format::derivation_to_latex(d),
            SearchOutcome::Invalid { model, root } => model_latex(model, root),
            SearchOutcome::ResourceLimit(s) => format!("% budget exhausted after {} nodes\n", s.nodes),
        },
        Output::Dot => match &report.outcome {
            SearchOutcome::Invalid { model, root } => format::model_to_dot(model, root),
            SearchOutcome::Valid(d) => derivation_dot(d),
            SearchOutcome::ResourceLimit(s) => format!("// budget exhausted after {} nodes\n", s.nodes),
        },
    }
}

fn stats_json(report: &Report, with_time: bool) -> Value {
    let mut s = format::statistics_to_json(&report.statistics);
    if !with_time {
        s.as_object_mut().expect("object").remove("elapsed_ms");
    }
    s
}

fn model_text(m: &KripkeModel, root: &str) -> String {
    let mut out = format!("root {root}\n");
    for w in m.worlds() {
        let atoms: Vec<_> = m
            .true_atoms(w)
            .map(|a| a.iter().map(|x| x.to_string()).collect())
            .unwrap_or_default();
        let succ = m.successors(w);
        out.push_str(&format!(
            "  {w}: true {{{}}}, R-successors [{}]\n",
            atoms.join(", "),
            succ.join(", ")
        ));
    }
    out
}

fn model_latex(m: &KripkeModel, root: &str) -> String {
    let mut out = String::from("\\begin{tabular}{lll}\nworld & true atoms & $R$-successors \\\\\n\\hline\n");
    for w in m.worlds() {
        let atoms: Vec<_> = m
            .true_atoms(w)
            .map(|a| a.iter().map(|x| x.to_string()).collect())
            .unwrap_or_default();
        let mark = if w == root { " (root)" } else { "" };
        out.push_str(&format!(
            "${w}${mark} & ${}$ & ${}$ \\\\\n",
            atoms.join(", "),
            m.successors(w).join(", ")
        ));
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn derivation_dot(d: &Derivation) -> String {
    fn go(d: &Derivation, next: &mut usize, out: &mut String) -> usize {
        let me = *next;
        *next += 1;
        let label = format!("{}\\n{}", d.rule, d.conclusion).replace('"', "\\\"");
        out.push_str(&format!("  n{me} [label=\"{label}\"];\n"));
        for p in &d.premisses {
            let child = go(p, next, out);
            out.push_str(&format!("  n{child} -> n{me};\n"));
        }
        me
    }
    let mut out = String::from("digraph derivation {\n  node [shape=box];\n");
    go(d, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

fn check(io: &mut Io, source: &str, config: &Config) -> i32 {
    let text = match io.read_source(source) {
        Ok(t) => t,
        Err(e) => return io.usage(e),
    };
    let (d, declared) = match format::derivation_from_json(&text) {
        Ok(x) => x,
        Err(e) => return io.usage(e),
    };
    let v = match declared.map_or_else(|| config.variant(), Ok) {
        Ok(v) => v,
        Err(e) => return io.usage(e),
    };
    match check_detailed(&d, v) {
        Ok(()) => {
            let _ = writeln!(io.out, "ok: {} nodes, height {}, {}", d.node_count(), d.height, v.name());
            EXIT_VALID
        }
        Err(e) => {
            let _ = writeln!(io.out, "rejected: {e}");
            EXIT_INVALID
        }
    }
}

fn modelcheck(io: &mut Io, model: &str, formula: &str, config: &Config) -> i32 {
    let text = match io.read_source(model) {
        Ok(t) => t,
        Err(e) => return io.usage(e),
    };
    // Accept a `decide --output json` document as well as a bare model.
    let text = match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(doc)) if doc.contains_key("model") => doc["model"].to_string(),
        _ => text,
    };
    let (m, root) = match format::model_from_json(&text) {
        Ok(x) => x,
        Err(e) => return io.usage(e),
    };
    let f = match read_formula(io, formula) {
        Ok(f) => f,
        Err(e) => return io.usage(e),
    };
    match forces_in(&m, &root, &f, config.frame()) {
        Ok(true) => {
            let _ = writeln!(io.out, "forced at {root}");
            EXIT_VALID
        }
        Ok(false) => {
            let _ = writeln!(io.out, "not forced at {root}");
            EXIT_INVALID
        }
        Err(e) => io.usage(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Expected {
    Valid,
    Invalid,
    Unknown,
}

fn parse_corpus(text: &str) -> Result<Vec<(Expected, Formula)>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (tag, body) = line
            .split_once('\t')
            .ok_or_else(|| format!("line {}: expected `expected<TAB>formula`", n + 1))?;
        let expected = match tag.trim() {
            "valid" => Expected::Valid,
            "invalid" => Expected::Invalid,
            "unknown" => Expected::Unknown,
            other => return Err(format!("line {}: unknown expectation `{other}`", n + 1)),
        };
        let f = parse(body.trim()).map_err(|e| format!("line {}: {e}", n + 1))?;
        out.push((expected, f));
    }
    Ok(out)
}

struct Row {
    verdict: &'static str,
    certified: bool,
    agrees: bool,
    nodes: u64,
    ms: u64,
}

fn corpus(io: &mut Io, file: Option<&str>, random: Option<usize>, config: &Config) -> i32 {
    let v = match config.variant() {
        Ok(v) => v,
        Err(e) => return io.usage(e),
    };
    let entries = match (file, random) {
        (Some(_), Some(_)) => return io.usage("give a corpus file or --random, not both"),
        (None, None) => return io.usage("give a corpus file or --random N"),
        (None, Some(n)) => {
            let cfg = if v == CalculusVariant::KB {
                GenConfig::modal_only()
            } else {
                GenConfig::default()
            };
            generate::corpus(config.seed, n, &cfg)
                .into_iter()
                .map(|f| (Expected::Unknown, f))
                .collect()
        }
        (Some(path), None) => {
            let text = match io.read_source(path) {
                Ok(t) => t,
                Err(e) => return io.usage(e),
            };
            match parse_corpus(&text) {
                Ok(e) => e,
                Err(e) => return io.usage(e),
            }
        }
    };
    let budget = config.budget();
    let rows: Vec<Row> = entries
        .par_iter()
        .map(|(expected, f)| match try_prove(f, v, &budget) {
            Ok(report) => {
                let certified = certify(f, v, &report, config).is_ok();
                let verdict = report.outcome.verdict();
                let agrees = match expected {
                    Expected::Valid => verdict == "valid",
                    Expected::Invalid => verdict == "invalid",
                    Expected::Unknown => verdict != "resource-limit",
                };
                Row {
                    verdict,
                    certified,
                    agrees,
                    nodes: report.statistics.nodes,
                    ms: report.statistics.elapsed_ms,
                }
            }
            Err(_) => Row {
                verdict: "internal-error",
                certified: false,
                agrees: false,
                nodes: 0,
                ms: 0,
            },
        })
        .collect();
    let mismatches = rows.iter().filter(|r| !r.agrees).count();
    let failures = rows.iter().filter(|r| !r.certified).count();
    if config.output == Output::Json {
        let items: Vec<Value> = entries
            .iter()
            .zip(&rows)
            .map(|((e, f), r)| {
                let mut item = json!({
                    "formula": f.to_ascii(),
                    "expected": format!("{e:?}").to_lowercase(),
                    "verdict": r.verdict,
                    "certified": r.certified,
                    "nodes": r.nodes,
                });
                if config.stats {
                    item["elapsed_ms"] = json!(r.ms);
                }
                item
            })
            .collect();
        let doc = json!({
            "schema_version": format::SCHEMA_VERSION,
            "variant": v.name(),
            "entries": items,
            "summary": {"total": rows.len(), "mismatches": mismatches, "certificate_failures": failures},
        });
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        let _ = writeln!(io.out, "{:>4}  {:<8}  {:<14}  {:<9}  {:>7}  formula", "#", "expected", "verdict", "certified", "nodes");
        for (i, ((e, f), r)) in entries.iter().zip(&rows).enumerate() {
            let mark = if r.agrees { "" } else { "  <-- mismatch" };
            let _ = writeln!(
                io.out,
                "{:>4}  {:<8}  {:<14}  {:<9}  {:>7}  {}{mark}",
                i + 1,
                format!("{e:?}").to_lowercase(),
                r.verdict,
                if r.certified { "yes" } else { "NO" },
                r.nodes,
                f
            );
        }
        let _ = writeln!(
            io.out,
            "total {}  mismatches {}  certificate failures {}",
            rows.len(),
            mismatches,
            failures
        );
        if config.stats {
            let ms: u64 = rows.iter().map(|r| r.ms).sum();
            let _ = writeln!(io.out, "search time {ms} ms");
        }
    }
    if mismatches + failures > 0 {
        EXIT_INVALID
    } else {
        EXIT_VALID
    }
}
