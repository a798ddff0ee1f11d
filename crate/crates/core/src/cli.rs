//! Command-line front end.
//!
//! Documents go to the output stream and nothing else does; warnings and
//! errors go to the diagnostic stream. Exit codes: 0 success,
//! 1 verification failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::emit::{self, Format};
use crate::layout::{Layout, Point};
use crate::oracle;
use crate::sequences::{Domain, PackingCase, SideMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hexpack",
    version,
    about = "Exact sequences, tables and figures for hexagonal-lattice circle packings"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print summary table 1 (cases a, b) or 2 (cases c, d).
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        i_max: u64,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: Format,
    },
    /// Print the exact circle centers and container of one configuration.
    Layout {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "json", value_parser = parse_layout_format)]
        format: Format,
    },
    /// Draw one configuration as SVG.
    Render {
        #[command(flatten)]
        target: Target,
        /// Pixels per unit radius.
        #[arg(long, default_value_t = 20.0)]
        scale: f64,
        /// Output file; standard output when omitted.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check counts, containment and separation, and enumerate lattice
    /// circles that fit each container.
    Verify {
        /// a, b, c, d or all.
        #[arg(long, value_parser = parse_selector)]
        case: Selector,
        #[arg(long)]
        i_max: u64,
        #[arg(long, default_value = "paper", value_parser = parse_mode)]
        mode: SideMode,
        /// text or json.
        #[arg(long, default_value = "text", value_parser = parse_report_format)]
        format: ReportFormat,
    },
    /// Print signed residuals and the hexagon/triangle ratio.
    Converge {
        #[arg(long)]
        i_max: u64,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: Format,
    },
    /// Print the four density limits.
    Limits,
}

#[derive(Debug, clap::Args)]
struct Target {
    #[arg(long, value_parser = parse_case)]
    case: PackingCase,
    #[arg(long)]
    i: u64,
    #[arg(long, default_value = "paper", value_parser = parse_mode)]
    mode: SideMode,
    /// Admit i = 1 for case b and i = 0 for case d.
    #[arg(long)]
    extend_domain: bool,
}

#[derive(Debug, Clone, Copy)]
enum Selector {
    One(PackingCase),
    All,
}

#[derive(Debug, Clone, Copy)]
enum ReportFormat {
    Text,
    Json,
}

fn parse_case(s: &str) -> Result<PackingCase, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<SideMode, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_layout_format(s: &str) -> Result<Format, String> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(format!("unknown layout format `{other}` (expected json or csv)")),
    }
}

fn parse_selector(s: &str) -> Result<Selector, String> {
    if s == "all" {
        Ok(Selector::All)
    } else {
        s.parse().map(Selector::One)
    }
}

fn parse_report_format(s: &str) -> Result<ReportFormat, String> {
    match s {
        "text" => Ok(ReportFormat::Text),
        "json" => Ok(ReportFormat::Json),
        other => Err(format!("unknown report format `{other}` (expected text or json)")),
    }
}

fn point_text(p: &Point) -> String {
    format!("({}, {})", p.x, p.y)
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn build_layout(t: &Target) -> Result<Layout, String> {
    let domain = if t.extend_domain {
        Domain::Extended
    } else {
        Domain::Table
    };
    Layout::new_in(t.case, t.i, t.mode, domain).map_err(|e| e.to_string())
}

fn write_doc(out: &mut dyn Write, doc: &str) -> Result<i32, String> {
    out.write_all(doc.as_bytes()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Table {
            which,
            i_max,
            format,
        } => {
            let doc = if which == 1 {
                if i_max < 1 {
                    return Err("table 1 starts at i = 1; --i-max must be at least 1".into());
                }
                emit::emit_table1(i_max, format)
            } else {
                emit::emit_table2(i_max, format)
            };
            write_doc(out, &doc)
        }
        Command::Layout { target, format } => {
            let layout = build_layout(&target)?;
            write_doc(out, &emit::emit_layout(&layout, format))
        }
        Command::Render {
            target,
            scale,
            output,
        } => {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(format!("--scale must be a positive number, got {scale}"));
            }
            let layout = build_layout(&target)?;
            let svg = emit::render_figure(&layout, scale);
            match output {
                Some(path) => {
                    std::fs::write(&path, svg)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    Ok(EXIT_OK)
                }
                None => write_doc(out, &svg),
            }
        }
        Command::Verify {
            case,
            i_max,
            mode,
            format,
        } => verify(case, i_max, mode, format, out, err),
        Command::Converge { i_max, format } => {
            if i_max < 1 {
                return Err("--i-max must be at least 1".into());
            }
            write_doc(out, &emit::emit_convergence(&PackingCase::ALL, i_max, format))
        }
        Command::Limits => write_doc(out, &emit::limits_document()),
    }
}

fn verify(
    selector: Selector,
    i_max: u64,
    mode: SideMode,
    format: ReportFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let cases: Vec<PackingCase> = match selector {
        Selector::One(c) => vec![c],
        Selector::All => PackingCase::ALL.to_vec(),
    };
    if cases
        .iter()
        .all(|c| i_max < c.min_index(Domain::Table))
    {
        return Err(format!("--i-max {i_max} is below the domain of every selected case"));
    }
    let mut reports = Vec::new();
    for &case in &cases {
        for i in case.min_index(Domain::Table)..=i_max {
            reports.push(oracle::verify(case, i, mode).map_err(|e| e.to_string())?);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    match format {
        ReportFormat::Text => {
            for r in &reports {
                writeln!(out, "{}", emit::report_line(r)).map_err(|e| e.to_string())?;
            }
        }
        ReportFormat::Json => {
            let doc: Vec<_> = reports.iter().map(emit::report_json).collect();
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            s.push('\n');
            write_doc(out, &s)?;
        }
    }
    for r in reports.iter().filter(|r| !r.extra_points.is_empty()) {
        let pts: Vec<_> = r.extra_points.iter().map(point_text).collect();
        let _ = writeln!(
            err,
            "warning: case={} i={}: {} extra lattice circle(s) fit the container: {}",
            r.case,
            r.i,
            r.extra_points.len(),
            pts.join(" ")
        );
    }
    if failed > 0 {
        let _ = writeln!(err, "verification failed for {failed} configuration(s)");
        Ok(EXIT_VERIFY_FAILED)
    } else {
        Ok(EXIT_OK)
    }
}
