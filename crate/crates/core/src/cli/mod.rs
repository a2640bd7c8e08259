//! The `provability` command line.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::engine::{
    oracle_prove, oracle_refute, BaseLogic, DecisionResult, EngineConfig, EngineError, Evidence, Semantics, Verdict,
};
use crate::formula::{parse, subformulas, Formula, ParseError};
use crate::registry::{
    classify_formula, decide_pl, decide_with, reduction_trace, DecideOptions, LogicId, ProvLogicId, RegistryError,
    Route,
};
use crate::translate::{TranslateError, TranslationKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_PROVABLE: i32 = 10;
pub const EXIT_REFUTED: i32 = 11;

#[derive(Debug, Parser)]
#[command(name = "provability", version, about = "Decide, translate and refute formulas of provability logics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountermodelFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Semantic,
    Premise,
}

#[derive(Debug, clap::Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// A logic name such as GL, iGL or iHsigmaSP.
    #[arg(long)]
    pub logic: Option<String>,
    /// A relative provability logic such as "PL(PA,PA)" or "Sigma1(HA,N)".
    #[arg(long)]
    pub pl: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a formula in one logic.
    Decide {
        #[command(flatten)]
        target: Target,
        formula: String,
        /// Print the proof, derivation or countermodel after the verdict.
        #[arg(long)]
        evidence: bool,
        /// Print nothing; report the verdict as exit code 10 or 11.
        #[arg(long)]
        quiet: bool,
        #[arg(long, value_enum, default_value = "semantic")]
        route: RouteArg,
    },
    /// Apply a translation.
    Translate {
        #[arg(long)]
        kind: String,
        formula: String,
    },
    /// Decide a formula in every logic of the catalog.
    Classify { formula: String },
    /// Export the countermodel of a refuted formula.
    Countermodel {
        #[arg(long)]
        logic: String,
        formula: String,
        #[arg(long, value_enum, default_value = "json")]
        format: CountermodelFormat,
    },
    /// Follow the reduction diagram to the hardest logic.
    Trace {
        #[arg(long)]
        pl: String,
        formula: String,
    },
    /// Cross-check a base logic against the brute-force oracles.
    Oracle {
        #[arg(long)]
        logic: String,
        formula: String,
        #[arg(long, default_value_t = 4)]
        max_nodes: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Check a TSV file of `logic<TAB>formula<TAB>expected` lines.
    Corpus { path: PathBuf },
}

/// A failure mapped onto the exit-code contract.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError { code: EXIT_PARSE, message: e.to_string() }
    }
}

impl From<RegistryError> for CliError {
    fn from(e: RegistryError) -> Self {
        let code = match &e {
            RegistryError::UnknownLogic(_)
            | RegistryError::BadTriple(_)
            | RegistryError::UnsupportedTriple(_)
            | RegistryError::NoPath(_) => EXIT_UNSUPPORTED,
            RegistryError::Engine(EngineError::Resource { .. })
            | RegistryError::Translate(_)
            | RegistryError::LiteralLimit(_) => EXIT_RESOURCE,
            _ => EXIT_FAILURE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<TranslateError> for CliError {
    fn from(e: TranslateError) -> Self {
        CliError { code: EXIT_RESOURCE, message: e.to_string() }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        RegistryError::Engine(e).into()
    }
}

fn failure(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_FAILURE, message: message.into() }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.message);
            e.code
        }
    }
}

fn execute(command: &Command) -> Result<(String, i32), CliError> {
    let mut text = String::new();
    let code = match command {
        Command::Decide { target, formula, evidence, quiet, route } => {
            let goal = parse(formula)?;
            let options = DecideOptions {
                route: match route {
                    RouteArg::Semantic => Route::Semantic,
                    RouteArg::Premise => Route::Premise,
                },
                ..DecideOptions::default()
            };
            let result = decide_target(target, &goal, &options)?;
            if *quiet {
                return Ok((String::new(), quiet_code(result.verdict)));
            }
            writeln!(text, "{}", result.verdict).unwrap();
            if *evidence {
                write_evidence(&mut text, &result);
            }
            EXIT_OK
        }
        Command::Translate { kind, formula } => {
            let kind: TranslationKind = kind.parse().map_err(|e: crate::translate::UnknownTranslation| CliError {
                code: EXIT_UNSUPPORTED,
                message: e.to_string(),
            })?;
            writeln!(text, "{}", kind.apply(&parse(formula)?)?).unwrap();
            EXIT_OK
        }
        Command::Classify { formula } => {
            for (logic, verdict) in classify_formula(&parse(formula)?)? {
                writeln!(text, "{logic}\t{verdict}").unwrap();
            }
            EXIT_OK
        }
        Command::Countermodel { logic, formula, format } => {
            let logic: LogicId = logic.parse()?;
            let result = decide_with(logic, &parse(formula)?, &DecideOptions::default())?;
            let cm = result.countermodel().ok_or_else(|| failure(format!("{}: no countermodel", result.verdict)))?;
            let body = match format {
                CountermodelFormat::Json => cm.to_json(),
                CountermodelFormat::Dot => cm.to_dot(),
            };
            text.push_str(&body);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            EXIT_OK
        }
        Command::Trace { pl, formula } => {
            let pl: ProvLogicId = pl.parse()?;
            for entry in reduction_trace(pl, &parse(formula)?)? {
                writeln!(text, "{}\t{}\t{}\t{}", entry.node, entry.translation, entry.formula, entry.anchor).unwrap();
            }
            EXIT_OK
        }
        Command::Oracle { logic, formula, max_nodes, depth } => {
            let goal = parse(formula)?;
            oracle(&mut text, logic.parse()?, &goal, *max_nodes, *depth)?
        }
        Command::Corpus { path } => {
            let source = fs::read_to_string(path).map_err(|e| failure(format!("{}: {e}", path.display())))?;
            corpus(&mut text, &source)?
        }
    };
    Ok((text, code))
}

fn decide_target(target: &Target, goal: &Formula, options: &DecideOptions) -> Result<DecisionResult, CliError> {
    Ok(match (&target.logic, &target.pl) {
        (Some(logic), _) => decide_with(logic.parse()?, goal, options)?,
        (None, Some(pl)) => decide_pl(pl.parse()?, goal)?,
        (None, None) => return Err(failure("one of --logic or --pl is required")),
    })
}

fn quiet_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Provable => EXIT_PROVABLE,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_RESOURCE,
    }
}

fn write_evidence(text: &mut String, result: &DecisionResult) {
    for step in &result.route {
        writeln!(text, "step {step}").unwrap();
    }
    match &result.evidence {
        Evidence::Proof(trace) => write!(text, "{trace}").unwrap(),
        Evidence::Derivation(d) => write!(text, "{d}").unwrap(),
        Evidence::Countermodel(cm) => writeln!(text, "{}", cm.to_json().trim_end()).unwrap(),
        Evidence::Parts(parts) => {
            for (i, part) in parts.iter().enumerate() {
                writeln!(text, "part {i}: {}", part.verdict).unwrap();
                write_evidence(text, part);
            }
        }
        Evidence::Bound(why) => writeln!(text, "{why}").unwrap(),
    }
    if !text.ends_with('\n') {
        text.push('\n');
    }
}

fn oracle(text: &mut String, logic: LogicId, goal: &Formula, max_nodes: usize, depth: usize) -> Result<i32, CliError> {
    let (base, semantics) = match logic {
        LogicId::GL => (BaseLogic::ClassicalGL, Semantics::CLASSICAL),
        LogicId::IGL => (BaseLogic::IntuitionisticGL, Semantics::INTUITIONISTIC),
        LogicId::IK4 => (BaseLogic::IntuitionisticK4, Semantics::INTUITIONISTIC),
        other => {
            return Err(CliError {
                code: EXIT_UNSUPPORTED,
                message: format!("the oracles only cover GL, iGL and iK4, not {other}"),
            })
        }
    };
    let cfg = EngineConfig::new(base).with_semantics(semantics);
    let decided = crate::engine::decide_base(&cfg, goal)?;
    let refuted = oracle_refute(&semantics.frame_class(base), &crate::kripke::TruthRelation::Forcing, goal, max_nodes);
    let proved = oracle_prove(&cfg, goal, &subformulas(goal), depth);
    writeln!(text, "engine\t{}", decided.verdict).unwrap();
    match refuted.countermodel() {
        Some(cm) => writeln!(text, "refute\tREFUTED ({} nodes)", cm.model.len()).unwrap(),
        None => writeln!(text, "refute\tno countermodel with at most {max_nodes} nodes").unwrap(),
    }
    writeln!(text, "prove\t{}", if proved.is_provable() { "PROVABLE" } else { "no derivation" }).unwrap();
    let agree = !(decided.is_provable() && refuted.is_refuted()) && !(decided.is_refuted() && proved.is_provable());
    writeln!(text, "{}", if agree { "AGREE" } else { "DISAGREE" }).unwrap();
    Ok(if agree { EXIT_OK } else { EXIT_FAILURE })
}

fn corpus(text: &mut String, source: &str) -> Result<i32, CliError> {
    let (mut passed, mut failed) = (0usize, 0usize);
    for (number, line) in source.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [logic, formula, expected] = fields[..] else {
            return Err(failure(format!("line {}: expected three tab-separated fields", number + 1)));
        };
        let goal = parse(formula.trim())?;
        let logic = logic.trim();
        let outcome = if logic.contains('(') {
            decide_pl(logic.parse()?, &goal)
        } else {
            logic.parse().and_then(|l| decide_with(l, &goal, &DecideOptions::default()))
        };
        let got = match outcome {
            Ok(result) => result.verdict.to_string(),
            Err(e) => format!("ERROR({e})"),
        };
        let ok = got.eq_ignore_ascii_case(expected.trim());
        if ok {
            passed += 1;
        } else {
            failed += 1;
        }
        writeln!(text, "{}\t{logic}\t{goal}\t{}\t{got}", if ok { "ok" } else { "MISMATCH" }, expected.trim()).unwrap();
    }
    writeln!(text, "{passed} passed, {failed} failed").unwrap();
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}
