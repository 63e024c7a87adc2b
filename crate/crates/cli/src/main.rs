use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use polydisc::certopt::{critical_scan, grid_certify, BoundKind, Certificate, Conclusion, GridSpec};
use polydisc::metrics::{self, DirectionVector, GammaOptions, Lemma7Mode};
use polydisc::numfmt::{fmt17, parse_complex, parse_complex_vec};
use polydisc::symcore::{classify_point, membership_via_flambda, SymPoint, VerdictKind};
use polydisc::{Error, C64};

#[derive(Parser, Debug)]
#[command(name = "polydisc", version, about = "Certified computations on the symmetrized polydisc")]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Keep wall-clock timings in certificates.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Grid,
    Bb,
    #[value(name = "paper-grid")]
    ReferenceGrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Bound {
    Lipschitz,
    SecondOrder,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a point by its roots and by the f_λ criterion.
    Member {
        #[arg(long)]
        n: Option<usize>,
        /// Coordinates z_1 .. z_n as "re,im" pairs separated by spaces.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = polydisc::symcore::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Initial arcs for the f_λ maximization (default 8n).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// The norm max_λ |Σ j X_j λ^(j-1)| / n.
    Rho {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Grid estimate of the distance max_λ p(f_λ(z), f_λ(w)).
    Pdist {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Points per axis of the CSV sweep.
        #[arg(long, default_value_t = 16)]
        sweep: usize,
    },
    /// max over the distinguished boundary of |z_2 + c z_1^2|.
    Mnc {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Bounds and estimate for γ(0; e_2).
    Gamma2 {
        #[arg(long)]
        n: usize,
        /// Tolerance of the search over c.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Bracketing tolerance of each maximization (default depends on n).
        #[arg(long)]
        max_tol: Option<f64>,
    },
    /// Check extremal polynomials and strict inequalities.
    #[command(subcommand)]
    Verify(Verify),
    /// Closed-form constants of the real-c minimization on G_3.
    Lemma6 {
        /// Also compare the angular maximum with the quadratic at this c.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Certify that the weight-four competitor on G_3 stays below 1.
    Lemma7 {
        #[arg(long, value_enum, default_value_t = Mode::Bb)]
        mode: Mode,
        #[arg(long)]
        step: Option<f64>,
        /// Lipschitz constant (default: min(44.28, generic bound)).
        #[arg(long)]
        lipschitz: Option<f64>,
        #[arg(long, value_enum, default_value_t = Bound::SecondOrder)]
        bound: Bound,
        /// Confirm a paper-grid run.
        #[arg(long)]
        yes: bool,
    },
    /// Critical points of h(α, β, γ) by multi-start Newton.
    Hscan {
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Assemble reports from certified pieces.
    #[command(subcommand)]
    Report(Report),
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// γ(0; e_k) > k/n when k does not divide n.
    Prop2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// max |g_{n,ε}| on the torus against M_n.
    Prop4Lower {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Boundary points behind the upper bound for odd n.
    Prop4Upper {
        #[arg(long)]
        n: usize,
    },
    /// Second-order bounds along X_1 e_1 + X_n e_n.
    Prop8 {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        xn: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Both weight-two extremals for even n have maximum 1.
    EvenExtremals {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
enum Report {
    /// C_1 − C_0 on G_3, gated on a certified competitor bound.
    G3 {
        #[arg(long, value_enum, default_value_t = Mode::Bb)]
        mode: Mode,
        /// Grid spacing for --mode grid.
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        lipschitz: Option<f64>,
        #[arg(long)]
        yes: bool,
    },
}

/// Result of a command: a JSON value and whether everything was certified.
struct Outcome {
    value: Value,
    ok: bool,
    text: Option<String>,
    csv: Option<String>,
}

impl Outcome {
    fn new<T: Serialize>(v: &T, ok: bool) -> Result<Self, String> {
        Ok(Self {
            value: serde_json::to_value(v).map_err(|e| e.to_string())?,
            ok,
            text: None,
            csv: None,
        })
    }
}

fn usage(msg: impl Into<String>) -> String {
    msg.into()
}

fn err(e: Error) -> String {
    e.to_string()
}

fn parse_point(s: &str, n: Option<usize>) -> Result<Vec<C64>, String> {
    let z = parse_complex_vec(s)?;
    if z.is_empty() {
        return Err(usage("empty coordinate list"));
    }
    if let Some(n) = n {
        if n != z.len() {
            return Err(usage(format!("--n {n} but {} coordinates given", z.len())));
        }
    }
    Ok(z)
}

fn certified(c: &Certificate) -> bool {
    matches!(c.conclusion, Conclusion::CertifiedBelow | Conclusion::MaximumBracketed)
}

fn lemma7_mode(mode: Mode, step: Option<f64>, bound: Bound, yes: bool) -> Result<Lemma7Mode, String> {
    Ok(match mode {
        Mode::Bb => Lemma7Mode::BranchBound(match bound {
            Bound::Lipschitz => BoundKind::Lipschitz,
            Bound::SecondOrder => BoundKind::SecondOrder,
        }),
        Mode::Grid => Lemma7Mode::Grid(step),
        Mode::ReferenceGrid => {
            let points = GridSpec::reference().total_points(2);
            let rate = calibrate_grid_rate();
            eprintln!(
                "reference grid: {} evaluations, estimated {:.0} s at {:.3e} evaluations/s on {} thread(s)",
                fmt17(points),
                points / rate,
                rate,
                rayon::current_num_threads()
            );
            if !yes {
                return Err(usage("paper-grid mode needs --yes"));
            }
            Lemma7Mode::ReferenceGrid
        }
    })
}

fn calibrate_grid_rate() -> f64 {
    let g = metrics::lemma7_pullback();
    let start = Instant::now();
    let c = grid_certify(&g, g.lipschitz_bound(), 1.0, 2e-3).expect("calibration grid");
    c.evals as f64 / start.elapsed().as_secs_f64().max(1e-9)
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Member { n, z, tol, samples } => {
            let z = SymPoint::new(parse_point(z, *n)?);
            let roots = classify_point(&z, *tol).map_err(err)?;
            let samples = samples.unwrap_or(8 * z.n());
            let flambda = membership_via_flambda(&z, samples, *tol).map_err(err)?;
            let agree = roots.kind == flambda.kind
                || (roots.kind != VerdictKind::Inside && flambda.kind != VerdictKind::Inside);
            Outcome::new(
                &serde_json::json!({
                    "n": z.n(),
                    "verdict": roots.kind,
                    "roots": roots,
                    "flambda": flambda,
                    "oracles_agree": agree,
                }),
                true,
            )
        }
        Command::Rho { n, x } => {
            let x = DirectionVector::new(parse_point(x, *n)?);
            let r = metrics::rho_detailed(x.n(), &x).map_err(err)?;
            Outcome::new(&r, true)
        }
        Command::Pdist { z, w, tol, sweep } => {
            let z = SymPoint::new(parse_point(z, None)?);
            let w = SymPoint::new(parse_point(w, Some(z.n()))?);
            if cli.format == Format::Csv {
                let rows = metrics::p_distance_sweep(&z, &w, *sweep).map_err(err)?;
                let m = z.n() - 1;
                let mut s = String::new();
                let head: Vec<String> = (1..=m).map(|j| format!("lambda{j}_angle")).collect();
                s.push_str(&head.join(","));
                if m > 0 {
                    s.push(',');
                }
                s.push_str("value\n");
                for (a, v) in rows {
                    let mut cols: Vec<String> = a.iter().map(|x| fmt17(*x)).collect();
                    cols.push(fmt17(v));
                    s.push_str(&cols.join(","));
                    s.push('\n');
                }
                let mut o = Outcome::new(&Value::Null, true)?;
                o.csv = Some(s);
                return Ok(o);
            }
            let d = metrics::p_distance(&z, &w, *tol).map_err(err)?;
            Outcome::new(&d, true)
        }
        Command::Mnc { n, c, tol } => {
            let c = parse_complex(c)?;
            let r = metrics::m_nc(*n, c, *tol).map_err(err)?;
            let ok = certified(&r.certificate);
            Outcome::new(&r, ok)
        }
        Command::Gamma2 { n, tol, max_tol } => {
            let opts = GammaOptions {
                c_tol: *tol,
                max_tol: *max_tol,
            };
            let b = metrics::gamma2_bounds(*n, opts).map_err(err)?;
            Outcome::new(&b, true)
        }
        Command::Verify(v) => run_verify(v),
        Command::Lemma6 { c, samples } => {
            let k = metrics::lemma6_constants().map_err(err)?;
            match c {
                Some(c) => {
                    let chk = metrics::lemma6_fc_check(*c, *samples).map_err(err)?;
                    let ok = chk.agrees;
                    Outcome::new(&serde_json::json!({ "constants": k, "fc_check": chk }), ok)
                }
                None => Outcome::new(&k, true),
            }
        }
        Command::Lemma7 {
            mode,
            step,
            lipschitz,
            bound,
            yes,
        } => {
            let mode = lemma7_mode(*mode, *step, *bound, *yes)?;
            let r = metrics::lemma7_certify(mode, *lipschitz).map_err(err)?;
            let ok = r.certificate.is_certified_below();
            Outcome::new(&r, ok)
        }
        Command::Hscan { c, grid, tol } => {
            let c = c.unwrap_or_else(|| metrics::lemma6_constants().map(|k| k.c0).unwrap_or(f64::NAN));
            let pts = critical_scan(c, *grid, *tol).map_err(err)?;
            let mut s = String::from("alpha,beta,gamma,value\n");
            for p in &pts {
                let mut cols: Vec<String> = p.angles.iter().map(|x| fmt17(*x)).collect();
                cols.push(fmt17(p.value));
                s.push_str(&cols.join(","));
                s.push('\n');
            }
            let max = pts.iter().map(|p| p.value).fold(f64::NEG_INFINITY, f64::max);
            let mut o = Outcome::new(
                &serde_json::json!({
                    "c": fmt17(c),
                    "max_value": fmt17(max),
                    "critical_points": pts,
                }),
                true,
            )?;
            o.csv = Some(s);
            Ok(o)
        }
        Command::Report(Report::G3 {
            mode,
            step,
            lipschitz,
            yes,
        }) => {
            let mode = lemma7_mode(*mode, *step, Bound::SecondOrder, *yes)?;
            let run = metrics::lemma7_certify(mode, *lipschitz).map_err(err)?;
            match metrics::g3_separation_report(&run.certificate) {
                Ok(rep) => {
                    let mut o = Outcome::new(&rep, true)?;
                    o.text = Some(rep.render_text());
                    Ok(o)
                }
                Err(e) => {
                    eprintln!("no conclusion: {e}");
                    Outcome::new(
                        &serde_json::json!({
                            "valid": false,
                            "reason": e.to_string(),
                            "lemma7_certificate": run.certificate,
                        }),
                        false,
                    )
                }
            }
        }
    }
}

fn run_verify(v: &Verify) -> Result<Outcome, String> {
    match v {
        Verify::Prop2 { n, k, tol } => {
            let r = metrics::verify_prop2_strict(*n, *k, *tol).map_err(err)?;
            let ok = r.holds;
            Outcome::new(&r, ok)
        }
        Verify::Prop4Lower { n, eps, tol } => {
            let r = metrics::verify_prop4_lower(*n, *eps, *tol).map_err(err)?;
            let ok = r.holds;
            Outcome::new(&r, ok)
        }
        Verify::Prop4Upper { n } => {
            let r = metrics::verify_prop4_upper(*n).map_err(err)?;
            let ok = r.holds;
            Outcome::new(&r, ok)
        }
        Verify::Prop8 { n, x1, xn, tol } => {
            let x1 = x1.as_deref().map(parse_complex).transpose()?.unwrap_or(C64::new(*n as f64, 0.0));
            let xn = xn.as_deref().map(parse_complex).transpose()?.unwrap_or(C64::new(1.0, 0.0));
            let opts = GammaOptions {
                c_tol: *tol,
                ..GammaOptions::default()
            };
            let g = metrics::gamma2_bounds(*n, opts).map_err(err)?;
            let r = metrics::prop8_bound(*n, x1, xn, &g).map_err(err)?;
            Outcome::new(&r, true)
        }
        Verify::EvenExtremals { n, tol } => {
            let r = metrics::verify_even_extremals(*n, *tol).map_err(err)?;
            let ok = r.holds;
            Outcome::new(&r, ok)
        }
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_time_s");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn render(cli: &Cli, mut out: Outcome) -> Result<String, String> {
    if !cli.timing {
        strip_timing(&mut out.value);
    }
    match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.value)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => out
            .csv
            .ok_or_else(|| usage("csv output is available for hscan and pdist only")),
        Format::Text => Ok(match out.text {
            Some(t) => t,
            None => match &out.value {
                Value::Object(map) => map
                    .iter()
                    .map(|(k, v)| match v {
                        Value::String(s) => format!("{k}: {s}\n"),
                        v => format!("{k}: {v}\n"),
                    })
                    .collect(),
                other => format!("{other}\n"),
            },
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads.unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let result = pool.install(|| run(&cli).and_then(|o| {
        let ok = o.ok;
        render(&cli, o).map(|s| (s, ok))
    }));
    match result {
        Ok((s, ok)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, s.as_bytes()).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("certification inconclusive or verification failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
