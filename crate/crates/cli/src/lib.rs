//! The `efsize` command line.
//!
//! [`run`] parses arguments, dispatches to the library and writes either a
//! plain-text report or one JSON document. Exit codes: 0 success, 1 malformed
//! input, 2 a resource cap was hit, 3 a contract violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use efsize::{
    boolcomb_instances, count_functions_up_to, density, fo_minsize, fo_separates, formula_count_bound,
    linorder_instances, measure_m, measure_n, min_size_table, minsize, oracle_minsize, parity_balanced, parity_dnf,
    repro_boolcomb, repro_linorder, repro_parity, synthesize, winner, Error, FoLimits, FoMinResult, FoPosition,
    FoSolver, GameMode, Limit, MinResult, PropFormula, PropLimits, PropPosition, ReproReport, RuleMode, StringProperty,
    StructureClass,
};

pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "efsize", version, about = "Formula-size games, certificates and reproduction tables")]
struct Cli {
    /// Print one JSON document instead of a text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Propositional separation of string properties.
    #[command(subcommand)]
    Prop(PropCommand),
    /// Brute-force ground truth for small widths.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// First-order separation of structure classes.
    #[command(subcommand)]
    Fo(FoCommand),
    /// Lower bound, construction and exact value for the worked families.
    #[command(subcommand)]
    Repro(ReproCommand),
}

#[derive(Subcommand, Debug)]
enum PropCommand {
    /// Least size of a formula separating S from R.
    Minsize {
        #[command(flatten)]
        input: PropInput,
        #[command(flatten)]
        caps: PropCaps,
        /// Also check that this formula separates S from R.
        #[arg(long, value_name = "FORMULA")]
        check: Option<String>,
    },
    /// Which player wins the game at the given rank.
    Winner {
        #[command(flatten)]
        input: PropInput,
        #[command(flatten)]
        caps: PropCaps,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = PropMode::Reduced)]
        mode: PropMode,
    },
    /// A separating formula of size at most the rank, if one exists.
    Synth {
        #[command(flatten)]
        input: PropInput,
        #[command(flatten)]
        caps: PropCaps,
        #[arg(long)]
        rank: usize,
    },
    /// Density pair and the size bound it certifies.
    Density {
        #[command(flatten)]
        input: PropInput,
    },
    /// A formula for even parity on n variables.
    Parity {
        #[arg(long)]
        n: u8,
        #[arg(long, value_enum, default_value_t = ParityForm::Balanced)]
        form: ParityForm,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Least formula size of every Boolean function of n variables.
    Table {
        #[arg(long)]
        n: u8,
    },
    /// Least separating size by truth-table search.
    Minsize {
        #[command(flatten)]
        input: PropInput,
    },
    /// Functions computed by formulas of size at most m.
    Count {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u8,
    },
}

#[derive(Subcommand, Debug)]
enum FoCommand {
    /// Which player wins the game at the given rank.
    Winner {
        #[command(flatten)]
        input: FoInput,
        #[command(flatten)]
        caps: FoCaps,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = FoMode::Full)]
        mode: FoMode,
    },
    /// Least winning rank up to a bound.
    Minsize {
        #[command(flatten)]
        input: FoInput,
        #[command(flatten)]
        caps: FoCaps,
        #[arg(long, default_value_t = 8)]
        wmax: usize,
        #[arg(long, value_enum, default_value_t = FoMode::Full)]
        mode: FoMode,
    },
    /// A separating formula of size at most the rank, if one exists.
    Synth {
        #[command(flatten)]
        input: FoInput,
        #[command(flatten)]
        caps: FoCaps,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value_t = FoMode::Full)]
        mode: FoMode,
    },
    /// The lower-bound measure of a family position.
    Measure {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<u8>,
        /// Class file for the A side (default: the family instance).
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        /// Class file for the B side.
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ReproCommand {
    Parity {
        #[arg(long)]
        n: u8,
        #[command(flatten)]
        caps: PropCaps,
    },
    Boolcomb {
        #[arg(long)]
        n: u8,
        #[command(flatten)]
        caps: FoCaps,
    },
    Linorder {
        #[arg(long)]
        n: u8,
        #[command(flatten)]
        caps: FoCaps,
    },
}

/// S and R, from one JSON file or inline lists.
#[derive(Args, Debug)]
struct PropInput {
    /// JSON file {"S": {"width": n, "strings": [...]}, "R": {...}}.
    #[arg(long, conflicts_with_all = ["s", "r"])]
    input: Option<PathBuf>,
    /// Strings of S, comma separated.
    #[arg(long, value_delimiter = ',', requires = "r")]
    s: Option<Vec<String>>,
    /// Strings of R, comma separated.
    #[arg(long, value_delimiter = ',', requires = "s")]
    r: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct PropCaps {
    /// Most strings in a reduced search.
    #[arg(long, default_value_t = PropLimits::default().max_strings)]
    cap_strings: usize,
    /// Most strings in an exact-rules game.
    #[arg(long, default_value_t = PropLimits::default().exact_max_strings)]
    cap_exact_strings: usize,
    /// Widest strings a solver accepts.
    #[arg(long, default_value_t = PropLimits::default().max_width)]
    cap_width: u8,
}

/// A and B, from class files or a built-in family.
#[derive(Args, Debug)]
struct FoInput {
    /// JSON array of structures for the A side.
    #[arg(long, requires = "right", conflicts_with = "family")]
    left: Option<PathBuf>,
    /// JSON array of structures for the B side.
    #[arg(long, requires = "left")]
    right: Option<PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    family: Option<Family>,
    #[arg(long)]
    n: Option<u8>,
}

#[derive(Args, Debug)]
struct FoCaps {
    /// Most memoized positions.
    #[arg(long, default_value_t = FoLimits::default().positions)]
    cap_positions: usize,
    /// Most choice functions for one supplementing move.
    #[arg(long, default_value_t = FoLimits::default().choice_functions)]
    cap_choice_functions: u64,
    /// Most structures in a class that is split.
    #[arg(long, default_value_t = FoLimits::default().class_size)]
    cap_class_size: usize,
    /// Most atoms over the variables of a position.
    #[arg(long, default_value_t = FoLimits::default().atoms)]
    cap_atoms: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PropMode {
    Exact,
    Reduced,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FoMode {
    Full,
    Existential,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ParityForm {
    Dnf,
    Balanced,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Boolcomb,
    Linorder,
}

impl From<PropMode> for RuleMode {
    fn from(m: PropMode) -> Self {
        match m {
            PropMode::Exact => RuleMode::Exact,
            PropMode::Reduced => RuleMode::Reduced,
        }
    }
}

impl From<FoMode> for GameMode {
    fn from(m: FoMode) -> Self {
        match m {
            FoMode::Full => GameMode::Full,
            FoMode::Existential => GameMode::Existential,
        }
    }
}

impl PropCaps {
    fn limits(&self) -> PropLimits {
        PropLimits {
            exact_max_strings: self.cap_exact_strings,
            max_strings: self.cap_strings,
            max_width: self.cap_width,
        }
    }
}

impl FoCaps {
    fn limits(&self) -> FoLimits {
        FoLimits {
            choice_functions: self.cap_choice_functions,
            positions: self.cap_positions,
            class_size: self.cap_class_size,
            atoms: self.cap_atoms,
        }
    }
}

#[derive(Deserialize)]
struct PropPair {
    #[serde(rename = "S")]
    s: StringProperty,
    #[serde(rename = "R")]
    r: StringProperty,
}

impl PropInput {
    fn load(&self) -> efsize::Result<(StringProperty, StringProperty)> {
        match (&self.input, &self.s, &self.r) {
            (Some(path), _, _) => {
                let pair: PropPair =
                    serde_json::from_str(&read(path)?).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
                Ok((pair.s, pair.r))
            }
            (None, Some(s), Some(r)) => Ok((StringProperty::parse_strings(s)?, StringProperty::parse_strings(r)?)),
            _ => Err(Error::Input("give --input FILE or both --s and --r".into())),
        }
    }
}

impl FoInput {
    fn load(&self) -> efsize::Result<(StructureClass, StructureClass)> {
        match (&self.left, &self.right, self.family, self.n) {
            (Some(l), Some(r), _, _) => {
                Ok((StructureClass::from_json_str(&read(l)?)?, StructureClass::from_json_str(&read(r)?)?))
            }
            (None, None, Some(family), Some(n)) => family_instances(family, n),
            _ => Err(Error::Input("give --left FILE --right FILE or --family F --n N".into())),
        }
    }
}

fn family_instances(family: Family, n: u8) -> efsize::Result<(StructureClass, StructureClass)> {
    match family {
        Family::Boolcomb => boolcomb_instances(n),
        Family::Linorder => linorder_instances(n),
    }
}

fn read(path: &Path) -> efsize::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// A finished command: the JSON document and its text rendering.
struct Report {
    json: Value,
    text: String,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into() }
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"))
            } else {
                writeln!(out, "{}", report.text.trim_end())
            };
            if written.is_err() {
                return EXIT_INPUT;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) => EXIT_INPUT,
        Error::Resource { .. } => EXIT_RESOURCE,
        Error::Contract(_) => EXIT_CONTRACT,
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Resource { limit, .. } => match cap_flag(*limit) {
            Some(flag) => format!("{e}; raise it with {flag}"),
            None => format!("{e}; this cap is fixed and has no flag"),
        },
        _ => e.to_string(),
    }
}

/// The flag that raises a cap, if it can be raised.
pub fn cap_flag(limit: Limit) -> Option<&'static str> {
    match limit {
        Limit::ExactStrings => Some("--cap-exact-strings"),
        Limit::Strings => Some("--cap-strings"),
        Limit::Width => Some("--cap-width"),
        Limit::ChoiceFunctions => Some("--cap-choice-functions"),
        Limit::Positions => Some("--cap-positions"),
        Limit::ClassSize => Some("--cap-class-size"),
        Limit::Atoms => Some("--cap-atoms"),
        Limit::OracleWidth
        | Limit::EvaluationPoints
        | Limit::EnumerationRank
        | Limit::OracleVocabulary
        | Limit::OracleUniverse => None,
    }
}

fn dispatch(command: &Command) -> efsize::Result<Report> {
    match command {
        Command::Prop(c) => prop(c),
        Command::Oracle(c) => oracle(c),
        Command::Fo(c) => fo(c),
        Command::Repro(c) => repro(c),
    }
}

fn min_result_json(m: MinResult) -> Value {
    match m {
        MinResult::Size(k) => json!(k),
        MinResult::Inseparable => json!("inseparable"),
    }
}

fn prop(command: &PropCommand) -> efsize::Result<Report> {
    match command {
        PropCommand::Minsize { input, caps, check } => {
            let (s, r) = input.load()?;
            let result = minsize(&s, &r, &caps.limits())?;
            let mut json = json!({ "result": min_result_json(result) });
            let mut text = format!("minsize: {result}");
            if let Some(formula) = check {
                let f: PropFormula = formula.parse()?;
                let separates = f.separates(&s, &r)?;
                json["check"] = json!({ "formula": f.to_string(), "size": f.size(), "separates": separates });
                text += &format!("\ncheck: {f} (size {}) separates: {separates}", f.size());
            }
            Ok(Report::new(json, text))
        }
        PropCommand::Winner { input, caps, rank, mode } => {
            let (s, r) = input.load()?;
            let pos = PropPosition::new(*rank, s, r)?;
            let w = winner(&pos, (*mode).into(), &caps.limits())?;
            Ok(Report::new(
                json!({ "rank": rank, "mode": RuleMode::from(*mode), "winner": w.to_string() }),
                format!("winner at rank {rank}: player {w}"),
            ))
        }
        PropCommand::Synth { input, caps, rank } => {
            let (s, r) = input.load()?;
            if *rank == 0 {
                return Err(Error::Input("rank must be at least 1".into()));
            }
            Ok(match synthesize(&s, &r, *rank, &caps.limits())? {
                Some(f) => Report::new(
                    json!({ "rank": rank, "formula": f.to_string(), "size": f.size() }),
                    format!("{f}\nsize: {}", f.size()),
                ),
                None => Report::new(
                    json!({ "rank": rank, "formula": null, "size": null }),
                    format!("no separating formula of size at most {rank}"),
                ),
            })
        }
        PropCommand::Density { input } => {
            let (s, r) = input.load()?;
            let d = density(&s, &r)?;
            let text = format!("s: {}\nr: {}\nedges: {}\nbound: {}", d.s, d.r, d.edge_count, d.bound());
            Ok(Report::new(serde_json::to_value(&d).expect("plain data"), text))
        }
        PropCommand::Parity { n, form } => {
            let f = match form {
                ParityForm::Dnf => parity_dnf(*n)?,
                ParityForm::Balanced => parity_balanced(*n)?,
            };
            let form = if *form == ParityForm::Dnf { "dnf" } else { "balanced" };
            Ok(Report::new(
                json!({ "n": n, "form": form, "formula": f.to_string(), "size": f.size() }),
                format!("{f}\nsize: {}", f.size()),
            ))
        }
    }
}

fn oracle(command: &OracleCommand) -> efsize::Result<Report> {
    match command {
        OracleCommand::Table { n } => {
            let table = min_size_table(*n)?;
            let rows: Vec<(String, u32)> = table
                .iter()
                .map(|(t, m)| {
                    let bits: String = (0..1u32 << n).map(|v| if t.bits() >> v & 1 == 1 { '1' } else { '0' }).collect();
                    (bits, m)
                })
                .collect();
            let mut text = format!("{:<w$}  size\n", "table", w = 1 << n);
            for (bits, m) in &rows {
                text += &format!("{bits}  {m}\n");
            }
            let json = json!({
                "n": n,
                "max_size": table.max_size(),
                "entries": rows.iter().map(|(bits, m)| json!({ "table": bits, "size": m })).collect::<Vec<_>>(),
            });
            Ok(Report::new(json, text))
        }
        OracleCommand::Minsize { input } => {
            let (s, r) = input.load()?;
            let result = oracle_minsize(&s, &r)?;
            Ok(Report::new(json!({ "result": min_result_json(result) }), format!("minsize: {result}")))
        }
        OracleCommand::Count { m, n } => {
            let count = count_functions_up_to(*m, *n)?;
            let bound = formula_count_bound(*m, *n);
            let bound_text = bound.map_or_else(|| "above 2^128".to_string(), |b| b.to_string());
            Ok(Report::new(
                json!({ "m": m, "n": n, "count": count, "bound": bound.map(|b| b.to_string()) }),
                format!("functions of size <= {m}: {count}\nformula bound: {bound_text}"),
            ))
        }
    }
}

fn fo_min_json(m: FoMinResult) -> Value {
    match m {
        FoMinResult::Size(k) => json!(k),
        FoMinResult::Unknown { searched_up_to } => json!({ "unknown": { "searched_up_to": searched_up_to } }),
    }
}

fn fo(command: &FoCommand) -> efsize::Result<Report> {
    match command {
        FoCommand::Winner { input, caps, rank, mode } => {
            let (a, b) = input.load()?;
            let pos = FoPosition::new(*rank, a, b)?;
            let w = efsize::fo_winner(&pos, (*mode).into(), &caps.limits())?;
            Ok(Report::new(
                json!({ "rank": rank, "mode": GameMode::from(*mode), "winner": w.to_string() }),
                format!("winner at rank {rank}: player {w}"),
            ))
        }
        FoCommand::Minsize { input, caps, wmax, mode } => {
            let (a, b) = input.load()?;
            let result = fo_minsize(&a, &b, (*mode).into(), *wmax, &caps.limits())?;
            Ok(Report::new(
                json!({ "mode": GameMode::from(*mode), "wmax": wmax, "result": fo_min_json(result) }),
                format!("minsize: {result}"),
            ))
        }
        FoCommand::Synth { input, caps, rank, mode } => {
            let (a, b) = input.load()?;
            if *rank == 0 {
                return Err(Error::Input("rank must be at least 1".into()));
            }
            let mut solver = FoSolver::new(&a, &b, (*mode).into(), &caps.limits())?;
            Ok(match solver.synthesize(*rank)? {
                Some(f) => {
                    if !fo_separates(&f, &a, &b)? {
                        return Err(Error::Contract(format!("synthesized {f} does not separate")));
                    }
                    Report::new(
                        json!({ "rank": rank, "formula": f.to_string(), "size": f.size() }),
                        format!("{f}\nsize: {}", f.size()),
                    )
                }
                None => Report::new(
                    json!({ "rank": rank, "formula": null, "size": null }),
                    format!("no separating formula of size at most {rank}"),
                ),
            })
        }
        FoCommand::Measure { family, n, left, right } => {
            let (a, b) = match (left, right, n) {
                (Some(l), Some(r), _) => {
                    (StructureClass::from_json_str(&read(l)?)?, StructureClass::from_json_str(&read(r)?)?)
                }
                (None, None, Some(n)) => family_instances(*family, *n)?,
                _ => return Err(Error::Input("give --n N or --left FILE --right FILE".into())),
            };
            let (name, value) = match family {
                Family::Boolcomb => ("M", measure_m(&a, &b)?),
                Family::Linorder => ("N", measure_n(&a, &b)?),
            };
            let family = if *family == Family::Boolcomb { "boolcomb" } else { "linorder" };
            Ok(Report::new(json!({ "family": family, "measure": name, "value": value }), format!("{name}: {value}")))
        }
    }
}

fn repro(command: &ReproCommand) -> efsize::Result<Report> {
    let report: ReproReport = match command {
        ReproCommand::Parity { n, caps } => repro_parity(*n, &caps.limits())?,
        ReproCommand::Boolcomb { n, caps } => repro_boolcomb(*n, &caps.limits())?,
        ReproCommand::Linorder { n, caps } => repro_linorder(*n, &caps.limits())?,
    };
    if !report.is_ordered() {
        return Err(Error::Contract(format!(
            "bounds out of order: certificate {}, exact {:?}, construction {}",
            report.certificate_bound, report.exact_minsize, report.construction_size
        )));
    }
    Ok(Report::new(serde_json::to_value(&report).expect("plain data"), report.to_string()))
}
