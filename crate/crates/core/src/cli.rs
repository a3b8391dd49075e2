//! Command-line front end.
//!
//! Output goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 a `verify` check failed, 2 usage or input error.
//!
//! Plain and CSV output print numbers with 12 significant digits; JSON output
//! prints shortest round-trip representations so every field parses back to
//! the same `f64`.
//!
//! `report --format csv` writes a header and one row with the columns
//! `tau_from, tau_to, lambda, teich, kappa_enumerated, kappa_gap,
//! kappa_prime_fwd, kappa_prime_rev, sorvali_d, s_kappa_prime, wp, poincare`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::PiecewiseStretchMap;
use crate::halfplane::{geodesic_point, reduce_to_fundamental_domain, HPoint};
use crate::metrics::{full_report, MetricKind, CSV_COLUMNS, DEFAULT_ENUMERATION_BOUND};
use crate::verify;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "flat-torus", version, about = "Distances on the Teichmüller space of the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Lambda,
    Teich,
    Kappa,
    KappaPrime,
    Sorvali,
    SkappaPrime,
    Wp,
    Poincare,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Lambda => MetricKind::Lambda,
            MetricArg::Teich => MetricKind::Teich,
            MetricArg::Kappa => MetricKind::Kappa,
            MetricArg::KappaPrime => MetricKind::KappaPrime,
            MetricArg::Sorvali => MetricKind::Sorvali,
            MetricArg::SkappaPrime => MetricKind::SkappaPrime,
            MetricArg::Wp => MetricKind::Wp,
            MetricArg::Poincare => MetricKind::Poincare,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Enumeration bound for curve-ratio metrics.
    #[arg(long = "N", default_value_t = DEFAULT_ENUMERATION_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
    bound: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One distance between two points.
    Dist {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, value_enum)]
        metric: MetricArg,
        #[command(flatten)]
        common: Common,
    },
    /// Every distance between two points.
    Report {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[command(flatten)]
        common: Common,
    },
    /// Distances from `from` to points sampled along the geodesic to `to`.
    Geodesic {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, value_enum, default_value_t = MetricArg::Poincare)]
        metric: MetricArg,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(2..))]
        samples: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Move a point into the modular fundamental domain.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Inspect a member of the non-affine extremal family.
    Family {
        #[arg(long)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        eps: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Run the built-in consistency checks.
    Verify {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

/// `x` with 12 significant digits in fixed notation.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { format!("{:.12}", 0.0) } else { x.to_string() };
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (11 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicRow {
    pub t: f64,
    pub tau: HPoint,
    pub distance: f64,
}

/// Rows `(t, τ(t), d(from, τ(t)))` for `samples` evenly spaced `t ∈ [0, 1]`.
pub fn geodesic_table(
    from: HPoint,
    to: HPoint,
    samples: u32,
    metric: MetricKind,
    bound: u32,
) -> Result<Vec<GeodesicRow>> {
    if from == to {
        return Err(Error::CoincidentPoints);
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("samples must be >= 2, got {samples}")));
    }
    (0..samples)
        .map(|k| {
            let t = k as f64 / (samples - 1) as f64;
            let tau = geodesic_point(from, to, t)?;
            Ok(GeodesicRow { t, tau, distance: metric.distance(from, tau, bound)? })
        })
        .collect()
}

fn point(s: &str) -> Result<HPoint> {
    s.parse()
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv output failed: {e}"))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8> {
    let mut buf = String::new();
    let mut status = EXIT_OK;
    match command {
        Command::Dist { from, to, metric, common } => {
            let kind = MetricKind::from(metric);
            let value = kind.distance(point(&from)?, point(&to)?, common.bound)?;
            buf = match common.format {
                Format::Plain => format!("{}\n", format_sig12(value)),
                Format::Csv => format!(
                    "metric,value\n{},{}\n",
                    metric.to_possible_value().expect("named").get_name(),
                    format_sig12(value)
                ),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Dist {
                        metric: MetricKind,
                        value: f64,
                    }
                    json(&Dist { metric: kind, value }) + "\n"
                }
            };
        }
        Command::Report { from, to, common } => {
            let report = full_report(point(&from)?, point(&to)?, common.bound)?;
            buf = match common.format {
                Format::Json => json(&report) + "\n",
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(CSV_COLUMNS).map_err(csv_error)?;
                    let mut row = vec![report.tau_from.to_string(), report.tau_to.to_string()];
                    row.extend(report.csv_values().iter().map(|&v| format_sig12(v)));
                    w.write_record(&row).map_err(csv_error)?;
                    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
                }
                Format::Plain => {
                    let mut s = format!("tau_from: {}\ntau_to: {}\n", report.tau_from, report.tau_to);
                    for (name, value) in CSV_COLUMNS[2..].iter().zip(report.csv_values()) {
                        s += &format!("{name}: {}\n", format_sig12(value));
                    }
                    let witness = report.kappa_witness.map_or("none".to_string(), |c| c.to_string());
                    let reach = if report.kappa_attained { "attained" } else { "approached, not attained" };
                    s += &format!("kappa_witness: {witness} ({reach})\n");
                    let convention = match (report.sorvali_holds_half_log_k, report.sorvali_holds_log_k) {
                        (true, true) => "both conventions",
                        (false, true) => "log K convention",
                        (true, false) => "half log K convention",
                        (false, false) => "neither convention",
                    };
                    s += &format!("sorvali_bound: d <= d_teich <= 2d holds for {convention}\n");
                    s
                }
            };
        }
        Command::Geodesic { from, to, metric, samples, common } => {
            let rows = geodesic_table(point(&from)?, point(&to)?, samples, metric.into(), common.bound)?;
            buf = match common.format {
                Format::Json => json(&rows) + "\n",
                Format::Csv | Format::Plain => {
                    let sep = if common.format == Format::Csv { "," } else { "\t" };
                    let mut s = ["t", "tau", "distance"].join(sep) + "\n";
                    for row in &rows {
                        s += &[format_sig12(row.t), row.tau.to_string(), format_sig12(row.distance)].join(sep);
                        s.push('\n');
                    }
                    s
                }
            };
        }
        Command::Reduce { from, format } => {
            let z = point(&from)?;
            let (w, m) = reduce_to_fundamental_domain(z);
            buf = match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Reduced {
                        input: HPoint,
                        reduced: HPoint,
                        matrix: [i64; 4],
                    }
                    json(&Reduced { input: z, reduced: w, matrix: m.entries() }) + "\n"
                }
                Format::Csv => {
                    let [a, b, c, d] = m.entries();
                    format!("input,reduced,a,b,c,d\n{z},{w},{a},{b},{c},{d}\n")
                }
                Format::Plain => format!("{w}\n{m}\n"),
            };
        }
        Command::Family { r, eps, delta, format } => {
            let f = PiecewiseStretchMap::new(r, eps, delta)?;
            let (bottom, top) = (f.bottom_block(), f.top_block());
            #[derive(Serialize)]
            struct Family {
                r: f64,
                eps: f64,
                delta: f64,
                bottom_block: [f64; 2],
                top_block: [f64; 2],
                lipschitz: f64,
                qc_distortion: f64,
                affine: bool,
            }
            let summary = Family {
                r,
                eps,
                delta,
                bottom_block: [bottom.a11, bottom.a22],
                top_block: [top.a11, top.a22],
                lipschitz: f.lipschitz_constant(),
                qc_distortion: f.qc_distortion(),
                affine: f.is_affine(1e-12),
            };
            buf = match format {
                Format::Json => json(&summary) + "\n",
                Format::Csv => format!(
                    "r,eps,delta,bottom_x,bottom_y,top_x,top_y,lipschitz,qc_distortion,affine\n{},{},{},{},{},{},{},{},{},{}\n",
                    r,
                    eps,
                    delta,
                    format_sig12(bottom.a11),
                    format_sig12(bottom.a22),
                    format_sig12(top.a11),
                    format_sig12(top.a22),
                    format_sig12(summary.lipschitz),
                    format_sig12(summary.qc_distortion),
                    summary.affine
                ),
                Format::Plain => format!(
                    "bottom_block: diag({}, {})\ntop_block: diag({}, {})\nlipschitz: {}\nqc_distortion: {}\naffine: {}\n",
                    format_sig12(bottom.a11),
                    format_sig12(bottom.a22),
                    format_sig12(top.a11),
                    format_sig12(top.a22),
                    format_sig12(summary.lipschitz),
                    format_sig12(summary.qc_distortion),
                    summary.affine
                ),
            };
        }
        Command::Verify { seed } => {
            for check in verify::run_all(seed) {
                let tag = if check.passed { "PASS" } else { "FAIL" };
                buf += &format!("{tag} {}: {}\n", check.name, check.detail);
                if !check.passed {
                    status = EXIT_CHECK_FAILED;
                }
            }
        }
    }
    out.write_all(buf.as_bytes()).map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))?;
    Ok(status)
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig12(0.0), "0.000000000000");
        assert_eq!(format_sig12(0.5 * std::f64::consts::LN_2), "0.346573590280");
        assert_eq!(format_sig12(4f64.ln()), "1.38629436112");
        assert_eq!(format_sig12(-0.00123), "-0.00123000000000");
    }
}
