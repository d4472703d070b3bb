use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qonsager::bases::{gf_coefficients, wg_enumerate, zigzag_enumerate, GfKind};
use qonsager::ncpoly::NcPoly;
use qonsager::scalar::{parse_rational, Field, Params, RatFunc, SpecializationPoint, MAX_DELTAS};
use qonsager::series::ModeLetter;
use qonsager::suites::{obtain_system, run_suite, Mode, RunConfig, Suite};
use qonsager::tower::Tower;
use qonsager::transition::{check_invertible, transition_matrix};
use qonsager::Error;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "qonsager", version, about = "Exact computations in the q-Onsager algebra and its central quotient")]
struct Cli {
    #[command(flatten)]
    g: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// symbolic (q, rho, deltas indeterminate) or specialized (rational values)
    #[arg(long, global = true, default_value = "symbolic")]
    mode: String,
    /// Value of q in specialized mode, as p or p/q
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    rho: Option<String>,
    /// Comma separated values d1,d2,...
    #[arg(long, global = true, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Generator index for gen/delta; generator bound for verify
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long = "max-degree", global = true)]
    max_degree: Option<usize>,
    #[arg(long = "max-weight", global = true)]
    max_weight: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Rewrite system cache file
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    #[value(name = "Wm")]
    Wm,
    #[value(name = "Wp")]
    Wp,
    #[value(name = "G")]
    G,
    #[value(name = "Gt")]
    Gt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DeltaForm {
    Abstract,
    Expanded,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Zigzag,
    Wg,
    Gf,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print a generator as a polynomial in A, A*
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Print Delta_{k+1} over the modes or expanded in A, A*
    Delta {
        #[arg(long, value_enum, default_value = "abstract")]
        form: DeltaForm,
    },
    /// Normal form of a polynomial given as JSON
    Reduce {
        #[arg(long)]
        expr: PathBuf,
    },
    /// Graded dimensions of the normal words
    Dims,
    /// Basis counts by weight
    Count {
        #[arg(long, value_enum)]
        which: Option<Which>,
    },
    /// Transition matrix from WG monomials to zig-zag words
    Transition {
        #[arg(long = "check-invertible")]
        check_invertible: bool,
        #[arg(long = "emit-matrix")]
        emit_matrix: Option<PathBuf>,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
    },
}

/// Result of a command: payload plus exit status.
struct Outcome {
    value: Value,
    text: String,
    code: u8,
}

fn progress(s: &str) {
    eprintln!("[qonsager] {}", s);
}

fn point_from(g: &Global, n_deltas: usize) -> Result<Option<SpecializationPoint>, Error> {
    if g.q.is_none() && g.rho.is_none() && g.delta.is_none() {
        return Ok(None);
    }
    let mut p = SpecializationPoint::default_point(n_deltas);
    if let Some(q) = &g.q {
        p.q = parse_rational(q)?;
    }
    if let Some(r) = &g.rho {
        p.rho = parse_rational(r)?;
    }
    if let Some(d) = &g.delta {
        p.deltas = d.split(',').map(|s| parse_rational(s.trim())).collect::<Result<_, _>>()?;
    }
    p.validate()?;
    Ok(Some(p))
}

fn kind_letter(k: Kind, i: usize) -> ModeLetter {
    match k {
        Kind::Wm => ModeLetter::Wm(i),
        Kind::Wp => ModeLetter::Wp(i),
        Kind::G => ModeLetter::G(i),
        Kind::Gt => ModeLetter::Gt(i),
    }
}

fn poly_out<F: Field>(p: &NcPoly<F>) -> Outcome {
    Outcome { value: serde_json::to_value(p.to_json()).expect("json"), text: format!("{}\n", p), code: 0 }
}

fn run_in<F: Field>(cmd: &Cmd, g: &Global, p: Params<F>) -> Result<Outcome, Error> {
    let k = g.k.unwrap_or(0);
    match cmd {
        Cmd::Gen { kind } => {
            let t = Tower::new(p, k.max(1))?;
            Ok(poly_out(&*t.gen(kind_letter(*kind, k))?))
        }
        Cmd::Delta { form } => {
            let t = Tower::new(p, k.max(1))?;
            let d = t.delta_abstract(k)?;
            match form {
                DeltaForm::Abstract => Ok(poly_out(&d)),
                DeltaForm::Expanded => Ok(poly_out(&t.substitute_modes(&d)?)),
            }
        }
        Cmd::Reduce { expr } => {
            let text = std::fs::read_to_string(expr)?;
            let poly = NcPoly::<F>::from_json_str(&text)?;
            let poly = if poly.alphabet().is_core() {
                poly
            } else {
                let kmax = g.k.unwrap_or(4);
                let t = Tower::new(p.clone(), kmax)?;
                if poly.alphabet() != t.modes().alphabet() {
                    return Err(Error::Usage(format!(
                        "alphabet is neither a, b nor the mode alphabet for --k {}",
                        kmax
                    )));
                }
                t.substitute_modes(&poly)?
            };
            let d = g.max_degree.unwrap_or_else(|| poly.degree().unwrap_or(0).max(4));
            let rs = obtain_system(&p, d, g.cache.as_ref(), &progress)?;
            Ok(poly_out(&rs.normal_form(&poly)?))
        }
        Cmd::Dims => {
            let d = g.max_degree.unwrap_or(8);
            let rs = obtain_system(&p, d, g.cache.as_ref(), &progress)?;
            let dims = (0..=d).map(|i| rs.graded_dim(i)).collect::<Result<Vec<_>, _>>()?;
            let text = dims.iter().enumerate().map(|(i, v)| format!("{:>3} {}\n", i, v)).collect();
            Ok(Outcome {
                value: json!({ "max_degree": d, "rules": rs.rules().len(), "dims": dims }),
                text,
                code: 0,
            })
        }
        Cmd::Transition { check_invertible: check, emit_matrix } => {
            let w = g.max_weight.unwrap_or(4);
            let d = g.max_degree.unwrap_or(w.max(4));
            if d < w {
                return Err(Error::Configuration(format!("--max-degree {} is below --max-weight {}", d, w)));
            }
            let rs = obtain_system(&p, d, g.cache.as_ref(), &progress)?;
            let t = Tower::new(p.clone(), g.k.unwrap_or(1).max(w.saturating_sub(1) / 2).max(1))?;
            progress(&format!("building transition matrix up to weight {}", w));
            let mut r = transition_matrix(w, &rs, &t)?;
            if *check {
                r.verdict = Some(check_invertible(&r, &p)?);
            }
            if let Some(path) = emit_matrix {
                std::fs::write(path, serde_json::to_string_pretty(&r.to_json())?)?;
            }
            let full = r.verdict.as_ref().is_none_or(|v| v.full_rank);
            let golden_ok = r.spot_checks.iter().all(|s| s.pass);
            let code = if !r.structural.is_empty() || !full {
                3
            } else if !golden_ok {
                1
            } else {
                0
            };
            let mut text = format!("{}x{} transition matrix up to weight {}\n", r.rows.len(), r.cols.len(), w);
            if let Some(v) = &r.verdict {
                text.push_str(&format!("rank {} of {}, full rank: {}\n", v.rank, v.size, v.full_rank));
                if let Some(d) = &v.determinant {
                    text.push_str(&format!("determinant at point: {}\n", d));
                }
            }
            let ok = r.spot_checks.iter().filter(|s| s.pass).count();
            text.push_str(&format!("reference entries: {} of {} agree\n", ok, r.spot_checks.len()));
            for s in &r.structural {
                text.push_str(&format!("structural: {}\n", s));
            }
            let mut value = json!({
                "mode": F::mode_name(),
                "max_weight": w,
                "size": [r.rows.len(), r.cols.len()],
                "rows": r.rows.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "cols": r.cols.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "verdict": r.verdict,
                "spot_checks": r.spot_checks,
                "structural": r.structural,
            });
            if let Some(path) = emit_matrix {
                value["matrix_file"] = json!(path.display().to_string());
            }
            Ok(Outcome { value, text, code })
        }
        Cmd::Count { .. } | Cmd::Verify { .. } => unreachable!("handled without a field"),
    }
}

fn count(g: &Global, which: Option<Which>) -> Outcome {
    let n = g.max_weight.unwrap_or(6);
    let zz: Vec<usize> = (0..=n).map(|w| zigzag_enumerate(w).len()).collect();
    let wg: Vec<usize> = (0..=n).map(|w| wg_enumerate(w).len()).collect();
    let g1: Vec<String> = gf_coefficients(GfKind::Overpartition, n).iter().map(|x| x.to_string()).collect();
    let g2: Vec<String> = gf_coefficients(GfKind::Verma, n).iter().map(|x| x.to_string()).collect();
    let table = |v: &Vec<usize>| -> Value { (0..=n).map(|w| (w.to_string(), json!(v[w]))).collect::<serde_json::Map<_, _>>().into() };
    let value = match which {
        None => json!({ "zigzag": table(&zz), "wg": table(&wg), "gf": { "overpartition": g1, "verma": g2 } }),
        Some(Which::Zigzag) => {
            let items: serde_json::Map<String, Value> =
                (0..=n).map(|w| (w.to_string(), json!(zigzag_enumerate(w).iter().map(|x| x.to_string()).collect::<Vec<_>>()))).collect();
            json!({ "counts": table(&zz), "items": items })
        }
        Some(Which::Wg) => {
            let items: serde_json::Map<String, Value> =
                (0..=n).map(|w| (w.to_string(), json!(wg_enumerate(w).iter().map(|x| x.to_string()).collect::<Vec<_>>()))).collect();
            json!({ "counts": table(&wg), "items": items })
        }
        Some(Which::Gf) => json!({ "overpartition": g1, "verma": g2 }),
    };
    let mut text = format!("{:>3} {:>8} {:>8} {:>8} {:>8}\n", "n", "zigzag", "wg", "gf1", "gf2");
    for w in 0..=n {
        text.push_str(&format!("{:>3} {:>8} {:>8} {:>8} {:>8}\n", w, zz[w], wg[w], g1[w], g2[w]));
    }
    Outcome { value, text, code: 0 }
}

fn verify(g: &Global, suite: &str) -> Result<Outcome, Error> {
    let suite: Suite = suite.parse()?;
    let mode: Mode = g.mode.parse()?;
    let mut cfg = RunConfig { mode, cache: g.cache.clone(), ..RunConfig::default() };
    if let Some(k) = g.k {
        cfg.kmax = k;
    }
    if let Some(d) = g.max_degree {
        cfg.max_degree = d;
    }
    if let Some(w) = g.max_weight {
        cfg.max_weight = w;
    }
    if let Some(pt) = point_from(g, MAX_DELTAS)? {
        cfg.points = vec![pt];
    }
    let r = run_suite(suite, &cfg, &progress)?;
    Ok(Outcome { value: r.to_json_with_envelope(), text: r.to_text(), code: r.exit_code() as u8 })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.g;
    match &cli.cmd {
        Cmd::Count { which } => Ok(count(g, *which)),
        Cmd::Verify { suite } => verify(g, suite),
        cmd => match g.mode.parse::<Mode>()? {
            Mode::Symbolic => {
                if g.q.is_some() || g.rho.is_some() || g.delta.is_some() {
                    return Err(Error::Usage("--q, --rho and --delta need --mode specialized".into()));
                }
                run_in(cmd, g, Params::<RatFunc>::symbolic(MAX_DELTAS)?)
            }
            Mode::Specialized => {
                let pt = point_from(g, MAX_DELTAS)?.unwrap_or_else(|| SpecializationPoint::default_point(MAX_DELTAS));
                run_in(cmd, g, Params::<BigRational>::specialized(&pt)?)
            }
        },
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::DivisionByZero => "division_by_zero",
        Error::Evaluation { .. } => "evaluation",
        Error::Validation(_) => "validation",
        Error::Usage(_) => "usage",
        Error::Configuration(_) => "configuration",
        Error::DegreeBound { .. } => "degree_bound",
        Error::Parse(_) => "parse",
        Error::Structural(_) => "structural",
        Error::Io(_) => "io",
    }
}

fn emit(g: &Global, value: &Value, text: &str) -> std::io::Result<()> {
    let body = match g.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("json")),
        Format::Text => text.to_string(),
    };
    match &g.out {
        Some(p) => std::fs::write(p, body),
        None => {
            print!("{}", body);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(o) => {
            if let Err(e) = emit(&cli.g, &o.value, &o.text) {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            let code = if matches!(e, Error::Structural(_)) { 3 } else { 2 };
            if cli.g.format == Format::Json {
                println!("{}", json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }));
            }
            ExitCode::from(code)
        }
    }
}
