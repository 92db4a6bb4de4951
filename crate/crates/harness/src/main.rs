use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hadamard_core::convexity::{
    is_convex, is_geometrically_convex, is_monotone_decreasing, is_s_convex, is_s_geometrically_convex,
};
use hadamard_core::means::{mean_a, mean_l, mean_lp};
use hadamard_core::{ClassCheck, ClassCheckConfig};
use hadamard_harness::evaluate::{evaluate_proposition, evaluate_theorem, EvalSettings, HypothesisCache, PairContext};
use hadamard_harness::report::{self, Format, Summary};
use hadamard_harness::tightness::SearchSettings;
use hadamard_harness::{
    optimize_tightness, run_sweep, HarnessError, ModelSpec, ParamBox, SweepConfig, TheoremTag, Tolerances,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "hadamard", version, about = "Check trapezoid-gap bounds for s-geometrically convex derivatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Built-in family: power, exp or exp-recip.
    #[arg(long)]
    model: Option<String>,
    /// Family parameter (s for power, λ otherwise).
    #[arg(long, allow_negative_numbers = true)]
    param: Option<f64>,
    /// Expression in x, e.g. "exp(-x) + x^2".
    #[arg(long = "f")]
    f: Option<String>,
    /// Domain as lo,hi.
    #[arg(long, value_parser = parse_pair, allow_negative_numbers = true)]
    domain: Option<[f64; 2]>,
}

impl ModelArgs {
    fn spec(&self) -> hadamard_harness::Result<ModelSpec> {
        ModelSpec::from_cli(self.model.as_deref(), self.param, self.f.as_deref(), self.domain)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    Convex,
    SConvex,
    Geometric,
    SGeometric,
    Decreasing,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// The function itself.
    F,
    /// `|f'|^q`.
    Fprime,
}

#[derive(Subcommand)]
enum Command {
    /// Grid-check a convexity class on the model domain.
    CheckClass {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = ClassKind::SGeometric)]
        class: ClassKind,
        #[arg(long, value_enum, default_value_t = Target::Fprime)]
        target: Target,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[arg(long, default_value_t = 33)]
        grid_points: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate one bound at one parameter point.
    EvalBound {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        theorem: TheoremTag,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 33)]
        grid_points: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run a sweep from a config file (the shipped one by default).
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Maximize lhs/rhs over a parameter box.
    Tightness {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        theorem: TheoremTag,
        #[arg(long, value_parser = parse_pair)]
        a: [f64; 2],
        #[arg(long, value_parser = parse_pair)]
        b: [f64; 2],
        #[arg(long, value_parser = parse_pair, default_value = "1,1")]
        s: [f64; 2],
        #[arg(long, value_parser = parse_pair, default_value = "1,1")]
        q: [f64; 2],
        #[arg(long, default_value_t = 5)]
        coarse_points: usize,
        #[arg(long, default_value_t = 17)]
        grid_points: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Arithmetic, logarithmic and generalized logarithmic means.
    Means {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [lo, hi] => {
            let lo = lo.parse::<f64>().map_err(|e| format!("`{lo}`: {e}"))?;
            let hi = hi.parse::<f64>().map_err(|e| format!("`{hi}`: {e}"))?;
            Ok([lo, hi])
        }
        _ => Err(format!("expected lo,hi, got `{s}`")),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> hadamard_harness::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            let nl: &[u8] = if text.ends_with('\n') { b"" } else { b"\n" };
            match out.write_all(text.as_bytes()).and_then(|_| out.write_all(nl)) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(HarnessError::Io {
                    path: "<stdout>".into(),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
    }
}

fn class_json(c: &ClassCheck<f64>) -> serde_json::Value {
    let witnesses: Vec<_> = c
        .witnesses
        .iter()
        .map(|w| json!({"x": w.x, "y": w.y, "t": w.t, "lhs": w.lhs, "rhs": w.rhs}))
        .collect();
    json!({"holds": c.holds, "witness_count": witnesses.len(), "witnesses": witnesses})
}

fn settings(grid_points: usize) -> EvalSettings {
    EvalSettings {
        tolerances: Tolerances::default(),
        grid_points,
    }
}

/// Returns the process exit code: 0 clean, 2 violations.
fn run(cli: Cli) -> hadamard_harness::Result<u8> {
    match cli.command {
        Command::CheckClass {
            model,
            class,
            target,
            s,
            q,
            grid_points,
            output,
        } => {
            let m = model.spec()?.build()?;
            let cfg = ClassCheckConfig {
                grid_points,
                s,
                q,
                ..ClassCheckConfig::default()
            };
            let g = |x: f64| -> hadamard_core::Result<f64> {
                Ok(match target {
                    Target::F => m.value(x)?,
                    Target::Fprime => m.abs_fprime(x)?.powf(q),
                })
            };
            let d = m.domain();
            let check = match class {
                ClassKind::Convex => is_convex(g, d, &cfg)?,
                ClassKind::SConvex => is_s_convex(g, d, s, &cfg)?,
                ClassKind::Geometric => is_geometrically_convex(g, d, &cfg)?,
                ClassKind::SGeometric => is_s_geometrically_convex(g, d, s, &cfg)?,
                ClassKind::Decreasing => is_monotone_decreasing(g, d, &cfg)?,
            };
            let text = match output.format {
                OutFormat::Json => serde_json::to_string_pretty(&json!({
                    "model": m.name(),
                    "domain": [d.lo(), d.hi()],
                    "result": class_json(&check),
                }))?,
                OutFormat::Csv => {
                    let mut t = format!("holds,{}\n", check.holds);
                    t.push_str("x,y,t,lhs,rhs\n");
                    for w in &check.witnesses {
                        let cells = [w.x, w.y, w.t, w.lhs, w.rhs].map(report::fmt_float);
                        t.push_str(&cells.join(","));
                        t.push('\n');
                    }
                    t
                }
            };
            emit(&text, &output.out)?;
            Ok(0)
        }
        Command::EvalBound {
            model,
            theorem,
            a,
            b,
            s,
            q,
            grid_points,
            output,
        } => {
            let st = settings(grid_points);
            let rec = if theorem.is_proposition() {
                let s = s.ok_or_else(|| HarnessError::config("--s", format!("{theorem} needs --s")))?;
                evaluate_proposition(theorem, a, b, s, q, &st)
            } else {
                let m = model.spec()?.build()?;
                let ctx = PairContext::compute(&m, a, b, &st);
                let mut cache = HypothesisCache::new();
                let s = s.or(matches!(theorem, TheoremTag::Eq10 | TheoremTag::Eq11 | TheoremTag::Eq111).then_some(1.0));
                evaluate_theorem(theorem, &m, a, b, s, q, &ctx, &mut cache, &st)
            };
            let records = [rec];
            emit(&report::render(&records, output.format.into())?, &output.out)?;
            Ok(exit_for(&Summary::from_records(&records)))
        }
        Command::Verify { config, seed, output } => {
            let mut cfg = match config {
                Some(path) => SweepConfig::load(&path)?,
                None => SweepConfig::shipped(),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let records = run_sweep(&cfg)?;
            let summary = Summary::from_records(&records);
            emit(&report::render(&records, output.format.into())?, &output.out)?;
            for line in &summary.findings {
                eprintln!("{line}");
            }
            Ok(exit_for(&summary))
        }
        Command::Tightness {
            model,
            theorem,
            a,
            b,
            s,
            q,
            coarse_points,
            grid_points,
            output,
        } => {
            let spec = if theorem.is_proposition() { None } else { Some(model.spec()?) };
            let bx = ParamBox { a, b, s, q };
            let search = SearchSettings {
                coarse_points,
                ..SearchSettings::default()
            };
            let res = optimize_tightness(theorem, spec.as_ref(), &bx, &settings(grid_points), &search)?;
            let text = match output.format {
                OutFormat::Json => serde_json::to_string_pretty(&res)?,
                OutFormat::Csv => report::to_csv_string(std::slice::from_ref(&res.record))?,
            };
            emit(&text, &output.out)?;
            Ok(if res.violation_found { 2 } else { 0 })
        }
        Command::Means { a, b, p, output } => {
            let mut rows = vec![("A".to_string(), mean_a(a, b)?), ("L".to_string(), mean_l(a, b)?)];
            for p in p {
                rows.push((format!("L_{p}"), mean_lp(a, b, p)?));
            }
            let text = match output.format {
                OutFormat::Json => {
                    let map: serde_json::Map<_, _> = rows.into_iter().map(|(k, v)| (k, json!(v))).collect();
                    serde_json::to_string_pretty(&json!({"a": a, "b": b, "means": map}))?
                }
                OutFormat::Csv => {
                    let mut t = String::from("mean,value\n");
                    for (k, v) in rows {
                        t.push_str(&format!("{k},{}\n", report::fmt_float(v)));
                    }
                    t
                }
            };
            emit(&text, &output.out)?;
            Ok(0)
        }
    }
}

fn exit_for(summary: &Summary) -> u8 {
    if summary.violations() > 0 {
        2
    } else {
        0
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
