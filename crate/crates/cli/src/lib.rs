//! Command-line front end for `tubes-core`.
//!
//! [`run`] executes one invocation and returns the exit code together with
//! everything that should be written to stdout and stderr, so that the binary
//! and the tests share one code path. Exit codes: 0 success, 1 domain error
//! (or a false verdict from `equiv` / a failed `verify`), 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tubes_core::emit::{emit_dot, emit_json, quiver_from_json, render_text};
use tubes_core::interior::{normalize, Component};
use tubes_core::notation::{format_peripheral, parse_arc, Notation, ParsedArc};
use tubes_core::quiver::{quiver_from_triangulation, TranslationQuiver, Triangulation};
use tubes_core::tubes::{build_gamma, build_t1, verify_t1, verify_theorem, Check, TubeWindow};
use tubes_core::PeripheralArc;

#[derive(Debug, Parser)]
#[command(
    name = "dtube",
    version,
    about = "Arcs and exceptional tubes of affine type D"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the canonical form of an arc
    Normalize {
        arc: String,
        #[command(flatten)]
        surface: SurfaceOpts,
    },
    /// Decide whether two arcs are the same (exit 0 if so, 1 if not)
    Equiv {
        a: String,
        b: String,
        #[command(flatten)]
        surface: SurfaceOpts,
    },
    /// Apply the Auslander-Reiten translate to an arc
    Tau {
        arc: String,
        #[command(flatten)]
        surface: SurfaceOpts,
    },
    /// Emit a window of one of the exceptional tubes
    Tube {
        #[command(flatten)]
        tube: TubeOpts,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the rank-2 tubes and the peripheral tubes structurally
    Verify {
        #[arg(long, default_value_t = 10)]
        levels: u32,
        /// Check T1 only for this boundary count (default: 2 to 10)
        #[arg(long)]
        m: Option<u32>,
    },
    /// Build the quiver of a triangulation given as JSON
    QuiverFromTriangulation {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Emit DOT for a tube window, a triangulation or a quiver file
    Render {
        #[command(subcommand)]
        target: RenderTarget,
    },
}

#[derive(Debug, Args)]
pub struct SurfaceOpts {
    /// Number of boundary points (n - 2 for type D_n)
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, value_enum, default_value_t = NotationArg::Canonical)]
    pub notation: NotationArg,
}

#[derive(Debug, Args)]
pub struct TubeOpts {
    #[arg(value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub levels: u32,
    #[arg(long, value_enum, default_value_t = NotationArg::Canonical)]
    pub notation: NotationArg,
}

#[derive(Debug, Subcommand)]
pub enum RenderTarget {
    /// A tube window
    Tube {
        #[command(flatten)]
        tube: TubeOpts,
    },
    /// The quiver of a triangulation file
    Triangulation { file: PathBuf },
    /// A quiver file in the JSON wire format
    Quiver { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    T1,
    Gamma0,
    Gamma1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NotationArg {
    Canonical,
    Gamma,
}

impl From<NotationArg> for Notation {
    fn from(n: NotationArg) -> Self {
        match n {
            NotationArg::Canonical => Notation::Canonical,
            NotationArg::Gamma => Notation::Gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    /// A complete result that still signals failure through the exit code.
    Verdict(String),
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        2
                    } else {
                        0
                    },
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let text = e.to_string();
                    let line = text.lines().next().unwrap_or("error: invalid usage");
                    Outcome {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!("{line}\n"),
                    }
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => Outcome::ok(out),
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Verdict(out)) => Outcome {
            code: 1,
            stdout: out,
            stderr: String::new(),
        },
    }
}

fn execute(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Normalize { arc, surface } => {
            let parsed = parse(arc, surface.m)?;
            Ok(format!("{}\n", canonical_text(parsed, surface)?))
        }
        Command::Equiv { a, b, surface } => {
            let a = canonical_text(parse(a, surface.m)?, surface)?;
            let b = canonical_text(parse(b, surface.m)?, surface)?;
            if a == b {
                Ok("true\n".to_string())
            } else {
                Err(Failure::Verdict("false\n".to_string()))
            }
        }
        Command::Tau { arc, surface } => match parse(arc, surface.m)? {
            ParsedArc::Interior(raw) => {
                let arc = normalize(raw).map_err(Failure::domain)?;
                Ok(format!("{}\n", arc.tau()))
            }
            ParsedArc::Peripheral(p) => {
                let m = require_m(surface.m, "tau of a peripheral arc")?;
                let t = p.tau(m).map_err(Failure::domain)?;
                Ok(format!(
                    "{}\n",
                    peripheral_text(&t, Some(m), surface.notation)?
                ))
            }
        },
        Command::Tube { tube, format } => emit_tube(tube, *format),
        Command::Verify { levels, m } => verify(*levels, *m),
        Command::QuiverFromTriangulation { file, format } => {
            let tq = triangulation_quiver(file)?;
            Ok(match format {
                GraphFormat::Json => emit_json(&tq, None, |v| v.to_string()),
                GraphFormat::Dot => emit_dot(&tq, None, |v| v.to_string()),
            })
        }
        Command::Render { target } => match target {
            RenderTarget::Tube { tube } => emit_tube(tube, Format::Dot),
            RenderTarget::Triangulation { file } => {
                let tq = triangulation_quiver(file)?;
                Ok(emit_dot(&tq, None, |v| v.to_string()))
            }
            RenderTarget::Quiver { file } => {
                let text = read(file)?;
                let tq = quiver_from_json(&text).map_err(Failure::domain)?;
                Ok(emit_dot(&tq, None, |v| v.clone()))
            }
        },
    }
}

fn parse(text: &str, m: Option<u32>) -> Result<ParsedArc, Failure> {
    parse_arc(text, m).map_err(Failure::domain)
}

fn require_m(m: Option<u32>, what: &str) -> Result<u32, Failure> {
    m.ok_or_else(|| Failure::Usage(format!("{what} requires --m")))
}

fn peripheral_text(
    arc: &PeripheralArc,
    m: Option<u32>,
    notation: NotationArg,
) -> Result<String, Failure> {
    match (notation, m) {
        (NotationArg::Canonical, None) => Ok(arc.to_string()),
        (notation, Some(m)) => format_peripheral(arc, m, notation.into()).map_err(Failure::domain),
        (NotationArg::Gamma, None) => Err(Failure::Usage("--notation gamma requires --m".into())),
    }
}

fn canonical_text(parsed: ParsedArc, surface: &SurfaceOpts) -> Result<String, Failure> {
    match parsed {
        ParsedArc::Interior(raw) => normalize(raw)
            .map(|a| a.to_string())
            .map_err(Failure::domain),
        ParsedArc::Peripheral(p) => peripheral_text(&p, surface.m, surface.notation),
    }
}

fn emit_window<V: Ord + Clone + std::fmt::Debug>(
    w: &TubeWindow<V>,
    format: Format,
    label: impl Fn(&V) -> String,
) -> String {
    match format {
        Format::Text => render_text(w, label),
        Format::Dot => emit_dot(&w.tq, Some(&w.level_of), label),
        Format::Json => emit_json(&w.tq, Some(&w.level_of), label),
    }
}

fn emit_tube(opts: &TubeOpts, format: Format) -> Result<String, Failure> {
    if opts.levels == 0 {
        return Err(Failure::Usage("--levels must be at least 1".into()));
    }
    match opts.kind {
        KindArg::T1 => {
            let m = require_m(opts.m, "tube t1")?;
            let w = build_t1(m, opts.levels).map_err(Failure::domain)?;
            let notation: Notation = opts.notation.into();
            Ok(emit_window(&w, format, |v| {
                format_peripheral(v, m, notation).expect("window arcs are valid")
            }))
        }
        KindArg::Gamma0 | KindArg::Gamma1 => {
            let which = if opts.kind == KindArg::Gamma0 {
                Component::Gamma0
            } else {
                Component::Gamma1
            };
            let w = build_gamma(which, opts.levels);
            Ok(emit_window(&w, format, |v| v.to_string()))
        }
    }
}

fn verify(levels: u32, m: Option<u32>) -> Result<String, Failure> {
    if levels < 2 {
        return Err(Failure::Usage("--levels must be at least 2".into()));
    }
    let mut checks: Vec<Check> = verify_theorem(levels).checks;
    let ms: Vec<u32> = match m {
        Some(m) => vec![m],
        None => (2..=10).collect(),
    };
    for m in ms {
        checks.extend(verify_t1(m, levels).map_err(Failure::domain)?);
    }
    let mut out = String::new();
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(out, "{status} {}", c.name).expect("String");
        } else {
            writeln!(out, "{status} {}: {}", c.name, c.detail).expect("String");
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {failed} failed", checks.len()).expect("String");
    if failed == 0 {
        Ok(out)
    } else {
        Err(Failure::Verdict(out))
    }
}

fn read(file: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(file)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", file.display())))
}

fn triangulation_quiver(file: &PathBuf) -> Result<TranslationQuiver<u32>, Failure> {
    let text = read(file)?;
    let t: Triangulation = serde_json::from_str(&text)
        .map_err(|e| Failure::Domain(format!("invalid triangulation JSON: {e}")))?;
    let q = quiver_from_triangulation(&t).map_err(Failure::domain)?;
    Ok(TranslationQuiver::new(q, Default::default()).expect("empty translation"))
}
