//! Command-line front end.
//!
//! Exit status: 0 for an affirmative result, 1 for a negative one (formula
//! refuted, countermodel found, proof rejected, model invalid), 2 for usage,
//! input and timeout errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use cnx_core::eval::{biextension, sat};
use cnx_core::harness::{self, Connective, ConnexivityReport, Evidence, Thesis, Verdict};
use cnx_core::model::fixtures::{fixture_class, get_fixture, FIXTURE_NAMES};
use cnx_core::model::validate_model;
use cnx_core::proof::{check_proof, corpus, Proof, Registry, Theorem};
use cnx_core::search::{SearchBounds, SearchOutcome};
use cnx_core::transform::{conditional_to_modal, i_translate, modal_to_conditional, tr_phi, LiftMode};
use cnx_core::{Consecution, Formula, FrameClass, KripkeModel, Logic, Sign};
use rayon::prelude::*;

use crate::driver;
use crate::modelfile::{parse_maybe_pointed, write_model, write_pointed};
use crate::prooffile::{parse_proof, write_proof};

#[derive(Parser, Debug)]
#[command(name = "cnx", version, about = "Connexive logics C, CnK, CnCK and CnCK_R")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it fully parenthesized.
    Parse { formula: String },
    /// Evaluate a formula at a world.
    Check {
        #[arg(short = 'm', long = "model")]
        model: PathBuf,
        /// Defaults to the model's `point` line.
        #[arg(short = 'w', long = "world")]
        world: Option<String>,
        #[arg(short = 's', long = "sign", default_value = "+", value_parser = parse_sign)]
        sign: Sign,
        formula: String,
    },
    /// Print the bi-extension of a formula.
    Biext {
        #[arg(short = 'm', long = "model")]
        model: PathBuf,
        formula: String,
    },
    /// Search for a pointed model satisfying every --gamma and refuting every --delta.
    Countermodel {
        #[arg(short = 'L', long = "logic", value_parser = parse_logic)]
        logic: Logic,
        #[arg(long = "gamma")]
        gamma: Vec<String>,
        #[arg(long = "delta")]
        delta: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Bounded evidence that a formula is valid: searches for a countermodel.
    Valid {
        #[arg(short = 'L', long = "logic", value_parser = parse_logic)]
        logic: Logic,
        #[command(flatten)]
        search: SearchArgs,
        formula: String,
    },
    /// Check a proof file.
    Prove {
        file: PathBuf,
        /// Further proof files whose theorems may be cited, checked in order.
        #[arg(long = "lib")]
        lib: Vec<PathBuf>,
    },
    /// Translate formulas or models between the modal and conditional languages.
    #[command(group(ArgGroup::new("mode").required(true).args(["tr", "i", "lift", "slice"])))]
    Translate {
        /// Tr with the given anchor: modal formula to conditional formula.
        #[arg(long = "tr")]
        tr: Option<String>,
        /// The I interpretation: conditional formula to modal formula.
        #[arg(long = "i")]
        i: bool,
        /// Lift a modal model to a conditional one.
        #[arg(long = "lift", value_enum, requires = "model")]
        lift: Option<Lift>,
        /// Anchor for `--lift refl`.
        #[arg(long = "anchor")]
        anchor: Option<String>,
        /// Slice a conditional model at the anchor's bi-extension.
        #[arg(long = "slice", requires = "model")]
        slice: Option<String>,
        #[arg(short = 'm', long = "model")]
        model: Option<PathBuf>,
        formula: Option<String>,
    },
    /// Classify connectives against the connexivity theses.
    Suite {
        #[arg(short = 'L', long = "logic", value_parser = parse_logic)]
        logic: Option<Logic>,
        #[arg(short = 'c', long = "connective", value_parser = parse_connective)]
        connective: Option<Connective>,
        #[arg(long = "max-worlds", default_value_t = 2)]
        max_worlds: usize,
        /// Print the evidence behind every cell.
        #[arg(long = "evidence")]
        evidence: bool,
        /// One JSON record per cell instead of the table.
        #[arg(long = "json")]
        json: bool,
        #[arg(long = "jobs", default_value_t = 1)]
        jobs: usize,
    },
    /// Named fixture models.
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Check a model against a frame class.
    Validate {
        #[arg(short = 'm', long = "model")]
        model: PathBuf,
        #[arg(short = 'C', long = "class", value_parser = parse_class)]
        class: FrameClass,
        /// Close both valuations upward before validating.
        #[arg(long = "close")]
        close: bool,
    },
    /// The built-in proof corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    #[arg(long = "max-worlds")]
    max_worlds: usize,
    #[arg(long = "min-worlds", default_value_t = 1)]
    min_worlds: usize,
    /// Nonempty conditional indices per model.
    #[arg(long = "max-indices", default_value_t = 2)]
    max_indices: usize,
    /// Seconds.
    #[arg(long = "timeout")]
    timeout: Option<f64>,
    #[arg(long = "jobs", default_value_t = 1)]
    jobs: usize,
}

impl SearchArgs {
    fn bounds(&self) -> Result<SearchBounds, Failure> {
        let mut b = SearchBounds::new(self.max_worlds).with_max_cond_indices(self.max_indices);
        b.min_worlds = self.min_worlds;
        if let Some(t) = self.timeout {
            let limit = Duration::try_from_secs_f64(t).map_err(|e| usage(format!("bad --timeout: {e}")))?;
            b = b.with_time_limit(limit);
        }
        Ok(b)
    }
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    List,
    Show { name: String },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Write every corpus proof to DIR/<name>.prf.
    Export { dir: PathBuf },
    /// List corpus proofs with their system and kind.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Lift {
    Full,
    Closed,
    Refl,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" => Ok(Sign::Pos),
        "-" => Ok(Sign::Neg),
        _ => Err(format!("expected + or -, got '{s}'")),
    }
}

fn parse_logic(s: &str) -> Result<Logic, String> {
    Logic::from_str(s).map_err(|e| e.to_string())
}

fn parse_class(s: &str) -> Result<FrameClass, String> {
    FrameClass::from_str(s).map_err(|e| e.to_string())
}

fn parse_connective(s: &str) -> Result<Connective, String> {
    Connective::from_str(s).map_err(|()| {
        let all: Vec<&str> = Connective::ALL.iter().map(|c| c.symbol()).collect();
        format!("unknown connective '{s}' (expected one of {})", all.join(" "))
    })
}

/// A run that ends with a message on the error stream.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        usage(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        if path == Path::new("-") {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
    }

    fn model(&mut self, path: &Path) -> Result<(KripkeModel, Option<usize>), Failure> {
        let text = self.read(path)?;
        parse_maybe_pointed(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    fn print(&mut self, s: &str) -> Result<(), Failure> {
        self.out.write_all(s.as_bytes()).map_err(|e| usage(e.to_string()))
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    cnx_core::parse(text).map_err(|e| usage(format!("'{text}': {e}")))
}

fn exit(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { stdin, out };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match command {
        Command::Parse { formula: text } => {
            let f = formula(&text)?;
            io.print(&format!("{f}\nlanguage {}\n", f.language()))?;
            Ok(0)
        }
        Command::Check { model, world, sign, formula: text } => {
            let (m, point) = io.model(&model)?;
            let world = match (world, point) {
                (Some(w), _) => w,
                (None, Some(p)) => m.world_name(p).to_string(),
                (None, None) => return Err(usage("no -w given and the model has no point")),
            };
            let value = sat(&m, &world, &formula(&text)?, sign)?;
            io.print(&format!("{value}\n"))?;
            Ok(exit(value))
        }
        Command::Biext { model, formula: text } => {
            let (m, _) = io.model(&model)?;
            let b = biextension(&m, &formula(&text)?)?;
            io.print(&format!("+ {}\n- {}\n", m.show_set(b.pos), m.show_set(b.neg)))?;
            Ok(0)
        }
        Command::Countermodel { logic, gamma, delta, search } => {
            let gamma = gamma.iter().map(|t| formula(t)).collect::<Result<Vec<_>, _>>()?;
            let delta = delta.iter().map(|t| formula(t)).collect::<Result<Vec<_>, _>>()?;
            search_command(io, logic, &Consecution::new(gamma, delta), &search)
        }
        Command::Valid { logic, search, formula: text } => {
            search_command(io, logic, &Consecution::theorem(formula(&text)?), &search)
        }
        Command::Prove { file, lib } => prove(io, &file, &lib),
        Command::Translate { tr, i, lift, anchor, slice, model, formula: text } => {
            translate(io, tr, i, lift, anchor, slice, model, text)
        }
        Command::Suite { logic, connective, max_worlds, evidence, json, jobs } => {
            suite(io, logic, connective, max_worlds, evidence, json, jobs)
        }
        Command::Fixture { action: FixtureAction::List } => {
            for name in FIXTURE_NAMES {
                io.print(&format!("{name} {}\n", fixture_class(name).expect("listed")))?;
            }
            Ok(0)
        }
        Command::Fixture { action: FixtureAction::Show { name } } => {
            let pm = get_fixture(&name)?;
            io.print(&write_pointed(&pm))?;
            Ok(0)
        }
        Command::Validate { model, class, close } => {
            let (mut m, _) = io.model(&model)?;
            if close {
                m = m.close_valuations();
            }
            let report = validate_model(&m, class);
            if report.is_ok() {
                io.print(&format!("ok {class}\n"))?;
            }
            for v in &report.violations {
                io.print(&format!("violation: {v}\n"))?;
            }
            Ok(exit(report.is_ok()))
        }
        Command::Corpus { action: CorpusAction::Export { dir } } => {
            std::fs::create_dir_all(&dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
            let c = corpus::build();
            let mut count = 0;
            for p in c.proofs() {
                let name = p.name.as_deref().expect("corpus proofs are named");
                let path = dir.join(format!("{name}.prf"));
                std::fs::write(&path, write_proof(p)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                count += 1;
            }
            io.print(&format!("wrote {count} proofs to {}\n", dir.display()))?;
            Ok(0)
        }
        Command::Corpus { action: CorpusAction::List } => {
            let c = corpus::build();
            for p in c.proofs() {
                let name = p.name.as_deref().unwrap_or_default();
                io.print(&format!("{name} {} {}\n", p.system, p.kind))?;
            }
            Ok(0)
        }
    }
}

fn search_command(io: &mut Io<'_>, logic: Logic, c: &Consecution, args: &SearchArgs) -> Result<i32, Failure> {
    let bounds = args.bounds()?;
    match driver::find_countermodel(logic, c, &bounds, args.jobs)? {
        SearchOutcome::Found(pm) => {
            io.print(&write_pointed(&pm))?;
            Ok(1)
        }
        SearchOutcome::ExhaustedBounds => {
            let mut msg = format!("no countermodel within bounds ({} worlds", bounds.max_worlds);
            if logic.frame_class() != FrameClass::P && logic.frame_class() != FrameClass::FSM {
                msg.push_str(&format!(", at most {} nonempty conditional indices", bounds.max_cond_indices));
            }
            msg.push_str(")\n");
            io.print(&msg)?;
            Ok(0)
        }
        SearchOutcome::TimedOut => Err(usage("search timed out before exhausting the bounds")),
    }
}

/// Registry for checking `proof`: corpus theorems built before it (all of
/// them for proofs outside the corpus), then the library files in order.
fn registry_for(proof: &Proof, lib: &[Proof]) -> Result<Registry, Failure> {
    let c = corpus::build();
    let mut registry = Registry::new();
    for p in c.proofs() {
        if p.name.is_some() && p.name == proof.name {
            break;
        }
        if let (Some(name), Some(t)) = (&p.name, p.name.as_deref().and_then(|n| c.library.registry.get(n))) {
            registry.insert(name, Theorem { system: t.system, formula: t.formula.clone() })?;
        }
    }
    for p in lib {
        registry.register(p).map_err(|e| Failure {
            code: 1,
            msg: format!("library proof {}: {e}", p.name.as_deref().unwrap_or("(unnamed)")),
        })?;
    }
    Ok(registry)
}

fn load_proof(io: &mut Io<'_>, path: &Path) -> Result<Proof, Failure> {
    let text = io.read(path)?;
    parse_proof(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn prove(io: &mut Io<'_>, file: &Path, lib: &[PathBuf]) -> Result<i32, Failure> {
    let proof = load_proof(io, file)?;
    let lib = lib.iter().map(|p| load_proof(io, p)).collect::<Result<Vec<_>, _>>()?;
    let registry = registry_for(&proof, &lib)?;
    match check_proof(&proof, &registry) {
        Ok(()) => {
            io.print("OK\n")?;
            Ok(0)
        }
        Err(e) => {
            io.print(&format!("{e}\n"))?;
            Ok(1)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn translate(
    io: &mut Io<'_>,
    tr: Option<String>,
    i: bool,
    lift: Option<Lift>,
    anchor: Option<String>,
    slice: Option<String>,
    model: Option<PathBuf>,
    text: Option<String>,
) -> Result<i32, Failure> {
    let need_formula = || text.as_deref().ok_or_else(|| usage("a formula argument is required"));
    if let Some(a) = tr {
        let out = tr_phi(&formula(&a)?, &formula(need_formula()?)?)?;
        io.print(&format!("{out}\n"))?;
        return Ok(0);
    }
    if i {
        let out = i_translate(&formula(need_formula()?)?)?;
        io.print(&format!("{out}\n"))?;
        return Ok(0);
    }
    let path = model.expect("clap requires a model with --lift and --slice");
    let (m, _) = io.model(&path)?;
    let out = if let Some(a) = slice {
        conditional_to_modal(&m, &formula(&a)?)?
    } else {
        let mode = match lift.expect("clap requires one mode") {
            Lift::Full => LiftMode::Full,
            Lift::Closed => LiftMode::Closed,
            Lift::Refl => {
                let a = anchor.ok_or_else(|| usage("--lift refl needs --anchor"))?;
                LiftMode::Refl(formula(&a)?)
            }
        };
        modal_to_conditional(&m, &mode)?
    };
    io.print(&write_model(&out))?;
    Ok(0)
}

fn suite(
    io: &mut Io<'_>,
    logic: Option<Logic>,
    connective: Option<Connective>,
    max_worlds: usize,
    evidence: bool,
    json: bool,
    jobs: usize,
) -> Result<i32, Failure> {
    let pairs: Vec<(Logic, Connective)> = harness::suite_pairs()
        .into_iter()
        .filter(|(l, c)| logic.is_none_or(|x| x == *l) && connective.is_none_or(|x| x == *c))
        .collect();
    if pairs.is_empty() {
        if let (Some(l), Some(c)) = (logic, connective) {
            return Err(usage(format!("{c} is not expressible in {l}")));
        }
        return Err(usage("no (logic, connective) pair matches"));
    }
    let library = corpus::build().library;
    let bounds = SearchBounds::new(max_worlds);
    let cells: Vec<(Logic, Connective, Thesis)> = pairs
        .iter()
        .flat_map(|&(l, c)| Thesis::ALL.into_iter().map(move |t| (l, c, t)))
        .collect();
    let run = |&(l, c, t): &(Logic, Connective, Thesis)| harness::run_cell(l, c, t, &bounds, &library, &mut || false);
    let statuses = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| cells.par_iter().map(run).collect::<Vec<_>>())
    } else {
        cells.iter().map(run).collect()
    };
    let mut statuses = statuses.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter();
    let mut reports = Vec::new();
    for &(l, c) in &pairs {
        let mine = statuses.by_ref().take(Thesis::ALL.len()).collect();
        let report = ConnexivityReport::from_statuses(l, c, mine);
        report.recheck(&library)?;
        reports.push(report);
    }
    if json {
        for r in &reports {
            for s in &r.statuses {
                io.print(&format!("{}\n", cell_json(r, s)))?;
            }
        }
        return Ok(0);
    }
    io.print(&harness::render_table(&reports))?;
    if evidence {
        for r in &reports {
            for s in &r.statuses {
                io.print(&format!("{} {} {}: {}\n", r.logic, r.connective, s.thesis, s.evidence))?;
            }
        }
    }
    Ok(0)
}

fn cell_json(r: &ConnexivityReport, s: &harness::ThesisStatus) -> serde_json::Value {
    use serde_json::json;
    let evidence = match &s.evidence {
        Evidence::Proof(name) => json!({ "kind": "proof", "name": name }),
        Evidence::Fixture { name, model } => {
            json!({ "kind": "fixture", "name": name, "point": model.point_name() })
        }
        Evidence::Search(pm) => json!({ "kind": "search", "model": write_pointed(pm) }),
        Evidence::Bounded { bounds, exhausted } => {
            json!({ "kind": "bounded", "max_worlds": bounds.max_worlds, "exhausted": exhausted })
        }
    };
    let instance = |fs: &std::collections::BTreeSet<Formula>| -> Vec<String> {
        fs.iter().map(|f| f.to_string()).collect()
    };
    json!({
        "logic": r.logic.name(),
        "connective": r.connective.symbol(),
        "thesis": s.thesis.name(),
        "verdict": if s.verdict == Verdict::Holds { "holds" } else { "fails" },
        "gamma": instance(&s.instance.gamma),
        "delta": instance(&s.instance.delta),
        "evidence": evidence,
        "label": r.label.name(),
    })
}
