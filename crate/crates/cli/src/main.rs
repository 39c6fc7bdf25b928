//! Command-line front end: evaluate bound rules for a bundle spec, run the
//! brute-force oracle against the closed forms, sweep families, and drive
//! the fibrewise planner.
//!
//! Exit codes: 0 success, 1 oracle mismatch, 2 usage or parse error.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sphere_tc::{
    bounds, complex_section_table, piece_statistics, plan_with, BaseSpace, BundleSpec,
    CoefficientRing, Direction, ErBModel, FiberConfig, PlannerParams, SphereBundleRing,
};

#[derive(Parser)]
#[command(name = "sphere-tc", version)]
#[command(about = "bounds, oracles and motion planners for sphere-bundle sequential complexity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// `eta + eps` over CP(n)
    CpEtaEps,
    /// `l*eta + eps` over RP(n)
    RpLEtaEps,
}

/// Inclusive integer range `lo..hi`, or a single value `k` meaning `k..k`.
#[derive(Clone, Copy, Debug)]
struct RangeArg {
    lo: usize,
    hi: usize,
}

impl RangeArg {
    fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad range bound `{v}`"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => Ok(RangeArg {
                lo: parse(lo)?,
                hi: parse(hi)?,
            }),
            None => {
                let v = parse(s)?;
                Ok(RangeArg { lo: v, hi: v })
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound rule for a bundle spec and combine them
    Bounds {
        /// Bundle spec, e.g. "CP(2); 1*eta+1*eps"
        spec: String,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the brute-force kernel cup-length with the closed form
    Oracle {
        /// Bundle spec; must admit a cohomology model (a trivial summand)
        spec: String,
        #[arg(long)]
        r: usize,
    },
    /// Tabulate bounds over a parametrized family
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        /// Inclusive range for n, e.g. "1..4" or "3"
        #[arg(long, default_value = "1..4")]
        n: RangeArg,
        /// Inclusive range for l (ignored by cp-eta-eps)
        #[arg(long, default_value = "1..3")]
        l: RangeArg,
        /// Inclusive range for r
        #[arg(long, default_value = "2..2")]
        r: RangeArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Plan fibrewise sphere paths through a configuration
    Plan {
        /// Fibre dimension q (even: the complex-structure section is used)
        #[arg(long)]
        q: usize,
        /// Semicolon-separated points, comma-separated coordinates,
        /// e.g. "1,0;-1,0"; the first point is the start
        #[arg(long)]
        points: String,
        /// Samples stored per path
        #[arg(long, default_value_t = 65)]
        samples: usize,
        #[arg(long, default_value = "fiber-0")]
        fiber_id: String,
    },
    /// Histogram planner piece indices over random configurations
    Stats {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((code, output)) => {
            // a consumer closing the pipe early is not our error
            if let Err(e) = write_stdout(&output) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            code
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn write_stdout(text: &str) -> std::io::Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()
}

fn run(command: Command) -> Result<(ExitCode, String), String> {
    match command {
        Command::Bounds { spec, r, format } => {
            let spec = parse_spec(&spec)?;
            check_r(r)?;
            let report = bounds::evaluate(&spec, r);
            let output = match format {
                Format::Text => render_report_text(&report),
                Format::Json => to_json(&report) + "\n",
                Format::Csv => render_report_csv(&report),
            };
            Ok((ExitCode::SUCCESS, output))
        }
        Command::Oracle { spec, r } => {
            let spec = parse_spec(&spec)?;
            check_r(r)?;
            cmd_oracle(&spec, r)
        }
        Command::Sweep {
            family,
            n,
            l,
            r,
            format,
        } => {
            let rows = sweep_rows(family, n, l, r)?;
            let output = match format {
                Format::Csv => render_sweep_csv(&rows),
                Format::Json => to_json(&rows) + "\n",
                Format::Text => render_sweep_text(&rows),
            };
            Ok((ExitCode::SUCCESS, output))
        }
        Command::Plan {
            q,
            points,
            samples,
            fiber_id,
        } => {
            let points = parse_points(&points, q)?;
            let table = complex_section_table(q).map_err(|e| e.to_string())?;
            let config = FiberConfig::new(q, points, fiber_id);
            let params = PlannerParams {
                samples_per_path: samples,
                ..PlannerParams::default()
            };
            let result = plan_with(&config, &table, &params).map_err(|e| e.to_string())?;
            Ok((ExitCode::SUCCESS, to_json(&result) + "\n"))
        }
        Command::Stats {
            q,
            r,
            samples,
            seed,
            format,
        } => {
            if r < 2 {
                return Err("need r >= 2".into());
            }
            let table = complex_section_table(q).map_err(|e| e.to_string())?;
            let histogram =
                piece_statistics(samples, q, r, &table, seed).map_err(|e| e.to_string())?;
            let summary = StatsSummary {
                q,
                r,
                samples,
                seed,
                table: "complex",
                k: table.k(),
                max_index: histogram.iter().rposition(|&c| c > 0),
                histogram,
            };
            let output = match format {
                Format::Json => to_json(&summary) + "\n",
                Format::Text | Format::Csv => {
                    let mut out = String::from("piece_index,count\n");
                    for (i, count) in summary.histogram.iter().enumerate() {
                        let _ = writeln!(out, "{i},{count}");
                    }
                    out
                }
            };
            Ok((ExitCode::SUCCESS, output))
        }
    }
}

fn parse_spec(text: &str) -> Result<BundleSpec, String> {
    text.parse::<BundleSpec>().map_err(|e| e.to_string())
}

fn check_r(r: usize) -> Result<(), String> {
    if r < 2 {
        Err("need r >= 2".into())
    } else {
        Ok(())
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report")
}

fn render_report_text(report: &bounds::BoundReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "spec:  {}", report.spec);
    let _ = writeln!(out, "r:     {}", report.r);
    let _ = writeln!(out, "rules:");
    for rule in &report.rules {
        let value = rule
            .value
            .map_or_else(|| "-".to_string(), |v| v.to_string());
        let direction = match rule.direction {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
            Direction::Exact => "exact",
        };
        let id = serde_json::to_value(rule.id)
            .expect("plain enum")
            .as_str()
            .expect("string id")
            .to_string();
        let _ = writeln!(
            out,
            "  {id:<16} {direction:<5} {value:>4}  [{}]",
            if rule.applicable { "applies" } else { "skipped" }
        );
        let _ = writeln!(out, "      {}", rule.citation);
        for condition in &rule.conditions {
            let _ = writeln!(out, "      - {condition}");
        }
    }
    let _ = writeln!(out, "lower: {}", report.lower);
    let _ = writeln!(out, "upper: {}", report.upper);
    match report.exact {
        Some(value) => {
            let _ = writeln!(out, "exact: {value}");
        }
        None => {
            let _ = writeln!(out, "exact: undetermined (width {})", report.upper - report.lower);
        }
    }
    out
}

fn render_report_csv(report: &bounds::BoundReport) -> String {
    let mut out = String::from("id,direction,value,applicable\n");
    for rule in &report.rules {
        let id = serde_json::to_value(rule.id)
            .expect("plain enum")
            .as_str()
            .expect("string id")
            .to_string();
        let direction = match rule.direction {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
            Direction::Exact => "exact",
        };
        let value = rule.value.map_or_else(String::new, |v| v.to_string());
        let _ = writeln!(out, "{id},{direction},{value},{}", rule.applicable);
    }
    out
}

#[derive(Serialize)]
struct SweepRow {
    family: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    r: usize,
    lower: usize,
    upper: usize,
    exact: Option<usize>,
}

fn sweep_rows(
    family: Family,
    n: RangeArg,
    l: RangeArg,
    r: RangeArg,
) -> Result<Vec<SweepRow>, String> {
    let mut rows = Vec::new();
    match family {
        Family::CpEtaEps => {
            for n_value in n.iter() {
                for r_value in r.iter() {
                    check_r(r_value)?;
                    let spec =
                        BundleSpec::from_counts(BaseSpace::ComplexProjective(n_value as u32), 1, 1)
                            .map_err(|e| e.to_string())?;
                    let report = bounds::evaluate(&spec, r_value);
                    rows.push(SweepRow {
                        family: "cp_eta_eps",
                        n: n_value,
                        l: None,
                        r: r_value,
                        lower: report.lower,
                        upper: report.upper,
                        exact: report.exact,
                    });
                }
            }
        }
        Family::RpLEtaEps => {
            for n_value in n.iter() {
                for l_value in l.iter() {
                    for r_value in r.iter() {
                        check_r(r_value)?;
                        let spec = BundleSpec::from_counts(
                            BaseSpace::RealProjective(n_value as u32),
                            l_value,
                            1,
                        )
                        .map_err(|e| e.to_string())?;
                        let report = bounds::evaluate(&spec, r_value);
                        rows.push(SweepRow {
                            family: "rp_l_eta_eps",
                            n: n_value,
                            l: Some(l_value),
                            r: r_value,
                            lower: report.lower,
                            upper: report.upper,
                            exact: report.exact,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn render_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("family,n,l,r,lower,upper,exact\n");
    for row in rows {
        let l = row.l.map_or_else(String::new, |v| v.to_string());
        let exact = row.exact.map_or_else(String::new, |v| v.to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.family, row.n, l, row.r, row.lower, row.upper, exact
        );
    }
    out
}

fn render_sweep_text(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:>3} {:>3} {:>3} {:>6} {:>6} {:>6}",
        "family", "n", "l", "r", "lower", "upper", "exact"
    );
    for row in rows {
        let l = row.l.map_or_else(|| "-".into(), |v: usize| v.to_string());
        let exact = row.exact.map_or_else(|| "-".into(), |v: usize| v.to_string());
        let _ = writeln!(
            out,
            "{:<14} {:>3} {:>3} {:>3} {:>6} {:>6} {:>6}",
            row.family, row.n, l, row.r, row.lower, row.upper, exact
        );
    }
    out
}

#[derive(Serialize)]
struct StatsSummary {
    q: usize,
    r: usize,
    samples: usize,
    seed: u64,
    table: &'static str,
    k: usize,
    max_index: Option<usize>,
    histogram: Vec<u64>,
}

fn cmd_oracle(spec: &BundleSpec, r: usize) -> Result<(ExitCode, String), String> {
    // real projective bases carry only the mod-2 model
    let coefficients = match spec.base() {
        BaseSpace::RealProjective(_) => CoefficientRing::ModTwo,
        _ => CoefficientRing::Integers,
    };
    let sphere = SphereBundleRing::build(spec, coefficients)
        .map_err(|e| format!("spec admits no cohomology model: {e}"))?;
    let model = ErBModel::build(sphere, r).map_err(|e| e.to_string())?;
    let oracle = model.kernel_cup_length_oracle();
    let closed_form = match coefficients {
        CoefficientRing::Integers => {
            spec.euler_height_stiefel().map_err(|e| e.to_string())? + r - 1
        }
        CoefficientRing::ModTwo => {
            let q = spec.rank();
            let relative = spec
                .sw_class(q - 1)
                .relative_height(&spec.sw_class(q))
                .map_err(|e| e.to_string())?;
            relative + r - 1
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "spec:         {spec}");
    let _ = writeln!(out, "r:            {r}");
    let _ = writeln!(
        out,
        "coefficients: {}",
        match coefficients {
            CoefficientRing::Integers => "integral",
            CoefficientRing::ModTwo => "mod-2",
        }
    );
    let _ = writeln!(out, "oracle:       {oracle}");
    let _ = writeln!(out, "closed form:  {closed_form}");
    if oracle == closed_form {
        out.push_str("MATCH\n");
        Ok((ExitCode::SUCCESS, out))
    } else {
        out.push_str("MISMATCH\n");
        Ok((ExitCode::from(1), out))
    }
}

fn parse_points(text: &str, q: usize) -> Result<Vec<Vec<f64>>, String> {
    let mut points = Vec::new();
    for (index, chunk) in text.split(';').enumerate() {
        let coords: Result<Vec<f64>, _> = chunk
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect();
        let coords = coords.map_err(|_| {
            format!("malformed point {index}: `{chunk}` (expected comma-separated numbers)")
        })?;
        if coords.len() != q {
            return Err(format!(
                "point {index} has {} coordinates, expected q = {q}",
                coords.len()
            ));
        }
        points.push(coords);
    }
    Ok(points)
}
