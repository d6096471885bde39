//! The `persilat` command line.
//!
//! Exit codes: 0 ok, 1 input error, 2 non-distributive lattice, 3 budget
//! exceeded, 4 internal check failure (including an implication whose
//! closed form disagrees with the oracle outside the recorded
//! discrepancies).

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::complete::{self, Completion, ImplicationAnswer};
use crate::diagram::{join_realize, meet_realize, persistence_rank, Diagram, LoadOptions};
use crate::error::{Error, Result};
use crate::heyting::{is_valid, law_suite, parse_formula, LawStatus};
use crate::homology::{diagram_from_filtration, load_filtration};
use crate::lattice::{hasse_dot, infinite_distributivity_check, Elem, Lattice, DEFAULT_ELEMENT_BUDGET, DEFAULT_SEED};
use crate::shapes::{uniform_chain_diagram, uniform_grid_diagram, ZigzagModule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NON_DISTRIBUTIVE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug, Clone)]
#[command(name = "persilat", version, about = "Persistence lattices and their Heyting logic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Diagram JSON, or a filtration (text or JSON) for `rank` and `ingest`.
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,

    /// Canonical shape instead of an input file: chain:N, grid:MxN or zigzag:N.
    #[arg(long, global = true)]
    pub shape: Option<ShapeSpec>,

    #[arg(long, global = true, default_value_t = 2)]
    pub prime: u32,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Maximum number of lattice elements.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BUDGET)]
    pub budget: usize,

    /// Maximum number of variables in a formula.
    #[arg(long, global = true, default_value_t = crate::heyting::DEFAULT_VAR_BUDGET)]
    pub var_budget: usize,

    /// Homology degree when the input is a filtration.
    #[arg(long, short = 'k', global = true, default_value_t = 0)]
    pub degree: usize,

    #[arg(long, global = true)]
    pub allow_noncommutative: bool,

    /// Also print the diagram the lattice was completed from.
    #[arg(long, global = true)]
    pub emit_diagram: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Complete to a lattice and summarize it.
    Complete,
    Meet { a: String, b: String },
    Join { a: String, b: String },
    /// Heyting implication, compared with the closed form when one applies.
    Implies { a: String, b: String },
    /// Pseudo-complement.
    Neg { a: String },
    /// Run the law suite and the axiom checks.
    Laws,
    /// Check a formula under every valuation.
    Valid { formula: String },
    /// Hasse diagram of the completed lattice.
    Hasse,
    /// Persistence rank of `a ∧ b → a ∨ b`.
    Rank { a: String, b: String },
    /// Homology diagram of degree K of a filtration, as diagram JSON.
    Ingest { k: Option<usize> },
    /// The (M+1) × (N+1) grid of one-dimensional spaces.
    Grid { m: usize, n: usize },
    /// The normalized zig-zag of length N.
    Zigzag { n: usize },
    /// The chain of N one-dimensional spaces.
    Chain { n: usize },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeSpec {
    Chain(usize),
    Grid(usize, usize),
    Zigzag(usize),
}

impl FromStr for ShapeSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("expected chain:N, grid:MxN or zigzag:N, got `{s}`");
        let (kind, size) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match kind {
            "chain" => Ok(ShapeSpec::Chain(num(size)?)),
            "zigzag" => Ok(ShapeSpec::Zigzag(num(size)?)),
            "grid" => {
                let (m, n) = size.split_once(['x', 'X']).ok_or_else(bad)?;
                Ok(ShapeSpec::Grid(num(m)?, num(n)?))
            }
            _ => Err(bad()),
        }
    }
}

impl ShapeSpec {
    pub fn diagram(self, prime: u32) -> Result<Diagram> {
        match self {
            ShapeSpec::Chain(n) => uniform_chain_diagram(n, prime),
            ShapeSpec::Grid(m, n) => uniform_grid_diagram(m, n, prime),
            ShapeSpec::Zigzag(n) => ZigzagModule::uniform(n, prime)?.diagram(),
        }
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonDistributive(..) => EXIT_NON_DISTRIBUTIVE,
        Error::ElementBudgetExceeded { .. } | Error::VarBudgetExceeded { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        EXIT_NON_DISTRIBUTIVE => "non-distributive",
        EXIT_BUDGET => "budget",
        EXIT_INTERNAL => "internal",
        _ => "input",
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = String::new();
    match execute(cli, &mut out) {
        Ok(code) => Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let stderr = match cli.format {
                Format::Json => {
                    let mut v = json!({"error": error_kind(&e), "message": e.to_string(), "exit_code": code});
                    if let Error::NonDistributive(x, y, z) = &e {
                        v["witness"] = json!([x, y, z]);
                    }
                    format!("{v}\n")
                }
                _ => format!("error ({}): {e}\n", error_kind(&e)),
            };
            Outcome {
                code,
                stdout: out,
                stderr,
            }
        }
    }
}

fn read_input(cli: &Cli) -> Result<String> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::Schema("no input: pass --input PATH or --shape".into()))?;
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn looks_like_diagram(text: &str) -> bool {
    serde_json::from_str::<Value>(text)
        .map(|v| v.get("nodes").is_some())
        .unwrap_or(false)
}

/// The diagram named by `--shape` or `--input`; filtrations are ingested
/// in degree `--degree`.
fn source_diagram(cli: &Cli) -> Result<Diagram> {
    if let Some(shape) = cli.shape {
        return shape.diagram(cli.prime);
    }
    let text = read_input(cli)?;
    if looks_like_diagram(&text) {
        Diagram::from_json_str_with(
            &text,
            LoadOptions {
                allow_noncommutative: cli.allow_noncommutative,
            },
        )
    } else {
        diagram_from_filtration(&load_filtration(&text, cli.prime)?, cli.degree)
    }
}

fn element(l: &Lattice, name: &str) -> Result<Elem> {
    match name {
        "top" | "⊤" => Ok(l.top()),
        "bot" | "⊥" => Ok(l.bottom()),
        _ => l.find(name),
    }
}

fn emit(cli: &Cli, out: &mut String, text: String, value: Value) {
    match cli.format {
        Format::Json => out.push_str(&format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))),
        _ => {
            out.push_str(&text);
            out.push('\n');
        }
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<i32> {
    if !crate::linalg::is_prime(cli.prime) {
        return Err(Error::NotPrime(cli.prime));
    }
    match &cli.command {
        Command::Ingest { k } => {
            let text = read_input(cli)?;
            let d = diagram_from_filtration(&load_filtration(&text, cli.prime)?, k.unwrap_or(cli.degree))?;
            out.push_str(&d.to_json());
            out.push('\n');
            Ok(EXIT_OK)
        }
        Command::Rank { a, b } => {
            let c = complete::complete(&source_diagram(cli)?, cli.budget)?;
            let r = persistence_rank(c.diagram(), a, b)?;
            emit(cli, out, r.to_string(), json!({"a": a, "b": b, "rank": r}));
            Ok(EXIT_OK)
        }
        Command::Grid { m, n } => summarize(cli, out, &uniform_grid_diagram(*m, *n, cli.prime)?),
        Command::Chain { n } => summarize(cli, out, &uniform_chain_diagram(*n, cli.prime)?),
        Command::Zigzag { n } => summarize(cli, out, &ZigzagModule::uniform(*n, cli.prime)?.diagram()?),
        Command::Complete => summarize(cli, out, &source_diagram(cli)?),
        command => {
            let c = complete::complete(&source_diagram(cli)?, cli.budget)?;
            query(cli, out, &c, command)
        }
    }
}

fn summarize(cli: &Cli, out: &mut String, d: &Diagram) -> Result<i32> {
    let c = complete::complete(d, cli.budget)?;
    let s = c.summary();
    let l = c.lattice();
    let elements: Vec<Value> = l
        .iter()
        .map(|e| json!({"label": l.label(e), "provenance": l.provenance(e).kind()}))
        .collect();
    let mut value = json!({
        "elements": s.elements,
        "original": s.original,
        "limit": s.limit,
        "colimit": s.colimit,
        "cut": s.cut,
        "distributive": s.distributive,
        "witness": s.witness.as_ref().map(|(x, y, z)| json!([x, y, z])),
        "boolean": s.boolean,
        "infinite_distributive": infinite_distributivity_check(l, 16, cli.seed),
        "lattice": elements,
    });
    let mut text = s.to_string();
    if cli.emit_diagram {
        value["diagram"] = serde_json::from_str(&c.diagram().to_json()).expect("diagram json");
        text.push('\n');
        text.push_str(&c.diagram().to_json());
    }
    emit(cli, out, text, value);
    Ok(if s.distributive { EXIT_OK } else { EXIT_NON_DISTRIBUTIVE })
}

fn query(cli: &Cli, out: &mut String, c: &Completion, command: &Command) -> Result<i32> {
    let l = c.lattice();
    match command {
        Command::Meet { a, b } | Command::Join { a, b } => {
            let is_meet = matches!(command, Command::Meet { .. });
            let (ea, eb) = (element(l, a)?, element(l, b)?);
            let r = if is_meet { l.meet(ea, eb) } else { l.join(ea, eb) };
            // Realized dimension, when both arguments are diagram nodes.
            let dim = if is_meet {
                meet_realize(c.diagram(), a, b).ok().map(|s| s.dim())
            } else {
                join_realize(c.diagram(), a, b).ok().map(|q| q.dim())
            };
            let op = if is_meet { "&" } else { "|" };
            let mut text = format!("{a} {op} {b} = {}", l.label(r));
            if let Some(d) = dim {
                text.push_str(&format!(" (dim {d})"));
            }
            emit(cli, out, text, json!({"a": a, "b": b, "result": l.label(r), "dim": dim}));
            Ok(EXIT_OK)
        }
        Command::Implies { a, b } => {
            let h = c.heyting()?;
            let (ea, eb) = (element(l, a)?, element(l, b)?);
            let ans = c.implies(&h, ea, eb)?;
            emit(cli, out, implication_text(l, a, b, &ans), implication_json(l, a, b, &ans));
            Ok(if ans.agrees() == Some(false) { EXIT_INTERNAL } else { EXIT_OK })
        }
        Command::Neg { a } => {
            let h = c.heyting()?;
            let r = h.not(element(l, a)?);
            emit(cli, out, format!("!{a} = {}", l.label(r)), json!({"a": a, "result": l.label(r)}));
            Ok(EXIT_OK)
        }
        Command::Laws => {
            let h = c.heyting()?;
            let report = law_suite(&h);
            let laws: Vec<Value> = report
                .laws
                .iter()
                .map(|law| {
                    let (status, witness) = match &law.status {
                        LawStatus::Pass => ("pass", None),
                        LawStatus::Fail { witness } => ("fail", Some(witness)),
                        LawStatus::ExpectedFail { witness } => ("expected-fail", Some(witness)),
                    };
                    json!({
                        "id": law.id,
                        "statement": law.statement,
                        "status": status,
                        "witness": witness.map(|w| w.iter().map(|&e| l.label(e)).collect::<Vec<_>>()),
                    })
                })
                .collect();
            let axioms: Vec<Value> = report
                .axioms
                .iter()
                .map(|a| json!({"id": a.id, "formula": a.formula.to_string(), "valid": a.validity.valid}))
                .collect();
            let (passed, total) = report.numbered_passed();
            emit(
                cli,
                out,
                format!("{}\n{report}", report.summary()),
                json!({"passed": passed, "total": total, "laws": laws, "axioms": axioms}),
            );
            Ok(if report.required_pass() { EXIT_OK } else { EXIT_INTERNAL })
        }
        Command::Valid { formula } => {
            let h = c.heyting()?;
            let f = parse_formula(formula)?;
            let v = is_valid(&h, &f, cli.var_budget)?;
            let counter = v.counter.as_ref().map(|c| c.describe(&h));
            let text = match &counter {
                None => format!("valid ({} valuations)", v.valuations_checked),
                Some(c) => format!("invalid; {c}"),
            };
            emit(
                cli,
                out,
                text,
                json!({"formula": f.to_string(), "valid": v.valid, "counter": counter,
                       "valuations_checked": v.valuations_checked}),
            );
            Ok(EXIT_OK)
        }
        Command::Hasse => {
            match cli.format {
                Format::Json => {
                    let covers: Vec<Value> = l
                        .covering_pairs()
                        .into_iter()
                        .map(|(a, b)| json!([l.label(a), l.label(b)]))
                        .collect();
                    let labels: Vec<&str> = l.iter().map(|e| l.label(e)).collect();
                    emit(cli, out, String::new(), json!({"elements": labels, "covers": covers}));
                }
                _ => out.push_str(&hasse_dot(l)),
            }
            Ok(EXIT_OK)
        }
        _ => unreachable!("handled before completion"),
    }
}

fn implication_text(l: &Lattice, a: &str, b: &str, ans: &ImplicationAnswer) -> String {
    let mut text = format!("{a} => {b} = {}", l.label(ans.value));
    match (ans.closed_form, ans.discrepancy) {
        (Some(cf), _) => text.push_str(&format!(
            "\nclosed form: {} ({})",
            l.label(cf),
            if cf == ans.value { "agrees" } else { "DISAGREES" }
        )),
        (None, Some(id)) => text.push_str(&format!("\nclosed form: not asserted (recorded discrepancy `{id}`)")),
        (None, None) => {}
    }
    if let Some(note) = &ans.note {
        text.push_str(&format!("\nnote: {note}"));
    }
    text
}

fn implication_json(l: &Lattice, a: &str, b: &str, ans: &ImplicationAnswer) -> Value {
    json!({
        "a": a,
        "b": b,
        "result": l.label(ans.value),
        "closed_form": ans.closed_form.map(|e| l.label(e)),
        "agrees": ans.agrees(),
        "discrepancy": ans.discrepancy,
        "note": ans.note,
    })
}

/// Parses `args` and runs; clap's own errors exit with code 1 (or 0 for
/// `--help`).
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        main_with_args(std::iter::once("persilat").chain(args.iter().copied()))
    }

    #[test]
    fn shape_specs() {
        assert_eq!("grid:3x3".parse::<ShapeSpec>(), Ok(ShapeSpec::Grid(3, 3)));
        assert_eq!("zigzag:2".parse::<ShapeSpec>(), Ok(ShapeSpec::Zigzag(2)));
        assert_eq!("chain:5".parse::<ShapeSpec>(), Ok(ShapeSpec::Chain(5)));
        assert!("grid:3".parse::<ShapeSpec>().is_err());
        assert!("cube:3".parse::<ShapeSpec>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::NonDistributive("a".into(), "b".into(), "c".into())), 2);
        assert_eq!(exit_code(&Error::ElementBudgetExceeded { budget: 1 }), 3);
        assert_eq!(exit_code(&Error::Internal("x".into())), 4);
        assert_eq!(exit_code(&Error::UnknownElement("x".into())), 1);
    }

    #[test]
    fn queries_on_shapes() {
        let o = run_args(&["neg", "X20", "--shape", "grid:3x3"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "!X20 = X03\n"));
        let o = run_args(&["implies", "X2", "X2", "--shape", "chain:3"]);
        assert!(o.stdout.starts_with("X2 => X2 = X2"));
        let o = run_args(&["meet", "X0", "nope", "--shape", "chain:3"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("error (input)"));
        let o = run_args(&["complete"]);
        assert_eq!(o.code, 1);
        let o = run_args(&["complete", "--shape", "grid:5x5", "--budget", "10"]);
        assert_eq!(o.code, 3);
    }
}
