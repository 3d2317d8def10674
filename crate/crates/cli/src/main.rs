//! Command-line front end: Newton polyhedra, Milnor numbers, zeta divisors,
//! generic sections, weighted-Le-Yomdin membership checks, and the curve
//! pair pipeline.
//!
//! Exit codes: 0 success/certified, 1 failed check, 2 input error,
//! 3 resource cap exceeded.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wly_core::invariants::{generic_section, milnor_weighted_homogeneous, predict_section_boundary};
use wly_core::local::OracleConfig;
use wly_core::newton::{is_convenient, NewtonPolyhedron};
use wly_core::pipeline::{
    build_weighted_pair, certify_pair, generate_torus_sextic, precondition_check, scan_family,
    CurveInput, FamilySpec, PairFile, TailSpec, Verdict, ZariskiAssertion,
};
use wly_core::poly::{parse, Polynomial};
use wly_core::weighted::{check_w_doubleprime, singularity_profile, WeightVector, WlyTriple};
use wly_core::zeta::{mo_zeta, oka_wly_zeta, standard_local_factors, varchenko_zeta, zeta_degree};
use wly_core::Error;

#[derive(Parser)]
#[command(
    name = "wly",
    about = "Exact invariants of Newton weighted-Le-Yomdin surface singularities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation cap for the rank oracle.
    #[arg(long, global = true, default_value_t = 16)]
    delta_cap: u32,
    /// Exponent cap for Newton-number stabilization.
    #[arg(long, global = true, default_value_t = 60)]
    n_cap: u32,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct PolyArg {
    /// Polynomial over the declared variables, e.g. "x^2 + y^3 - 7/2*z^6".
    poly: String,
    /// Ordered comma-separated variable names.
    #[arg(long, default_value = "x,y,z")]
    vars: String,
}

impl PolyArg {
    fn parse(&self) -> Result<Polynomial, Error> {
        let vars: Vec<&str> = self.vars.split(',').map(str::trim).collect();
        parse(&self.poly, &vars)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Newton polyhedron: vertices and all compact faces with covectors,
    /// minimum values and lattice volumes.
    Newton(PolyArg),
    /// Milnor number, by the rank oracle or by the weighted homogeneous
    /// product formula.
    Milnor {
        #[command(flatten)]
        poly: PolyArg,
        /// Stabilized truncated-Jacobian colength (default).
        #[arg(long, conflicts_with = "formula")]
        oracle: bool,
        /// Product formula (d/p1 - 1)(d/p2 - 1)(d/p3 - 1) with the weights
        /// read off the unique top face.
        #[arg(long)]
        formula: bool,
    },
    /// Monodromy zeta divisor.
    Zeta {
        /// Polynomial (required unless --mo is given).
        poly: Option<String>,
        #[arg(long, default_value = "x,y,z")]
        vars: String,
        /// Closed form from weights and degree: --mo p1,p2[,p3] d.
        #[arg(long, num_args = 2, value_names = ["WEIGHTS", "D"])]
        mo: Option<Vec<String>>,
        /// Face-sum evaluation of the given polynomial (default).
        #[arg(long)]
        varchenko: bool,
        /// Weighted-Le-Yomdin composition for a decomposition file.
        #[arg(long, value_name = "SPEC.JSON")]
        wly: Option<String>,
    },
    /// Generic plane section: Newton number and boundary across seeded
    /// draws, checked against the boundary predictor.
    Section {
        #[command(flatten)]
        poly: PolyArg,
        /// Weights p1,p2,p3.
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Weighted-Le-Yomdin membership check for a decomposition file.
    CheckWly { spec: String },
    /// Builds a candidate pair from two curve files.
    BuildPair {
        h0: String,
        h1: String,
        /// Covering exponent for the y-direction pullback.
        #[arg(long)]
        p1: u32,
        /// Tail: "auto" for z^(p1 d + m), or an explicit polynomial.
        #[arg(long, default_value = "auto")]
        tail: String,
        /// Weighted-degree gap for the auto tail.
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Record the curves as an asserted Zariski pair, with provenance.
        #[arg(long, value_name = "PROVENANCE")]
        assert_zariski: Option<String>,
        /// Output file (default pair.json).
        #[arg(short, long, default_value = "pair.json")]
        out: String,
    },
    /// Runs the full certification checklist on a pair file.
    Certify {
        pair: String,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also write the report to a file.
        #[arg(short, long)]
        out: Option<String>,
    },
    /// Scans a one-parameter family for profile jumps.
    ScanFamily {
        family: String,
        /// Bisection refinement depth around the first change.
        #[arg(long, default_value_t = 4)]
        refine: u32,
    },
    /// Generates a verified torus-type sextic curve file.
    GenSextic {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = OracleConfig {
        delta_cap: cli.delta_cap,
        ..OracleConfig::default()
    };
    match run(&cli, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_) => 3,
        Error::Parse { .. }
        | Error::Arity { .. }
        | Error::ZeroPolynomial
        | Error::InvalidInput(_)
        | Error::NonIntegral(_)
        | Error::NotConvenient { .. } => 2,
        Error::PositiveDimensional
        | Error::NotSingular
        | Error::MuDistributionAmbiguous(_)
        | Error::GenericityFailure(_) => 1,
    }
}

fn run(cli: &Cli, cfg: &OracleConfig) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Newton(arg) => {
            let f = arg.parse()?;
            let np = NewtonPolyhedron::new(&f)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&polyhedron_json(&np)).unwrap());
            } else {
                println!("convenient: {}", is_convenient(&f));
                println!("vertices:");
                for v in np.vertices() {
                    println!("  {:?}", &v.0[..np.arity()]);
                }
                println!("compact faces:");
                for face in np.faces() {
                    println!(
                        "  dim {} vertices {:?} covector {:?} d {} volume {}",
                        face.dim,
                        face.vertices
                            .iter()
                            .map(|v| v.0[..np.arity()].to_vec())
                            .collect::<Vec<_>>(),
                        face.covector,
                        face.d_value,
                        face.lattice_volume
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Milnor {
            poly,
            oracle: _,
            formula,
        } => {
            let f = poly.parse()?;
            if *formula {
                let np = NewtonPolyhedron::new(&f)?;
                let top = np.unique_top_face().ok_or_else(|| {
                    Error::InvalidInput("no unique top-dimensional face".into())
                })?;
                let w: Vec<u32> = top.covector.iter().map(|&c| c as u32).collect();
                if !f.is_weighted_homogeneous(&w) {
                    return Err(Error::InvalidInput(
                        "polynomial is not weighted homogeneous".into(),
                    ));
                }
                if f.arity() == 3 {
                    let p = WeightVector::new(w[0], w[1], w[2])?;
                    let mu = milnor_weighted_homogeneous(&p, top.d_value)?;
                    emit(cli, &serde_json::json!({"mu": mu, "route": "formula"}), || {
                        format!("mu = {mu} (product formula, weights {w:?}, degree {})", top.d_value)
                    });
                } else {
                    let mut mu = wly_core::poly::rat(1);
                    for &wi in &w {
                        mu *= wly_core::poly::Rational::new(
                            (top.d_value as i64).into(),
                            (wi as i64).into(),
                        ) - wly_core::poly::rat(1);
                    }
                    emit(cli, &serde_json::json!({"mu": mu.to_string()}), || {
                        format!("mu = {mu} (product formula)")
                    });
                }
            } else {
                let r = wly_core::local::milnor_rank_oracle(&f, cfg)?;
                match r.colength {
                    Some(mu) => emit(
                        cli,
                        &serde_json::json!({"mu": mu, "delta_used": r.delta_used, "route": "oracle"}),
                        || format!("mu = {mu} (rank oracle, stabilized at delta = {})", r.delta_used),
                    ),
                    None => {
                        return Err(Error::CapExceeded(format!(
                            "colength did not stabilize below delta = {}",
                            r.delta_used
                        )))
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Zeta {
            poly,
            vars,
            mo,
            varchenko: _,
            wly,
        } => {
            let z = if let Some(args) = mo {
                let weights: Vec<u32> = args[0]
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| bad_num(s)))
                    .collect::<Result<_, _>>()?;
                let d: u64 = args[1].parse().map_err(|_| bad_num(&args[1]))?;
                mo_zeta(&weights, d)?
            } else if let Some(path) = wly {
                let t: WlyTriple = read_json(path)?;
                let profile = singularity_profile(&t.f, &t.p, cfg)?;
                let factors = standard_local_factors(&profile, t.d, t.m)?;
                oka_wly_zeta(&t, &profile, &factors)?
            } else {
                let text = poly.as_ref().ok_or_else(|| {
                    Error::InvalidInput("a polynomial is required without --mo/--wly".into())
                })?;
                let names: Vec<&str> = vars.split(',').map(str::trim).collect();
                let f = parse(text, &names)?;
                varchenko_zeta(&f)?
            };
            emit(
                cli,
                &serde_json::json!({
                    "divisor": z,
                    "degree": zeta_degree(&z),
                    "display": z.to_string(),
                }),
                || format!("zeta = {z}\ndegree = {}", zeta_degree(&z)),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Section {
            poly,
            weights,
            trials,
            seed,
        } => {
            let g = poly.parse()?;
            let w: Vec<u32> = weights
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| bad_num(s)))
                .collect::<Result<_, _>>()?;
            if w.len() != 3 {
                return Err(Error::InvalidInput("--weights needs p1,p2,p3".into()));
            }
            let p = WeightVector::new(w[0], w[1], w[2])?;
            let f = wly_core::weighted::initial_form(&g, &p)?;
            let pred = predict_section_boundary(&f, &p)?;
            let s = generic_section(&g, &p, *trials, *seed)?;
            emit(
                cli,
                &serde_json::json!({"section": s, "prediction": pred}),
                || {
                    let mut out = format!(
                        "nu = {}\nboundary = {:?}\nconsistency = {}\n",
                        s.nu, s.boundary, s.consistency
                    );
                    out.push_str(&format!(
                        "predicted boundary = {:?} (case {:?})",
                        pred.predicted_boundary, pred.case
                    ));
                    if let Some(h) = s.hypothesis_holds {
                        out.push_str(&format!("\nboundary hypothesis holds: {h}"));
                    }
                    out
                },
            );
            if s.consistency {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::CheckWly { spec } => {
            let t: WlyTriple = read_json(spec)?;
            let report = check_w_doubleprime(&t, cfg)?;
            emit(cli, &serde_json::json!({"check": report}), || {
                if report.ok {
                    let mut s = "membership: ok".to_string();
                    for n in &report.notes {
                        s.push_str(&format!("\nnote: {n}"));
                    }
                    s
                } else {
                    format!(
                        "membership: failed ({})",
                        report.failure.clone().unwrap_or_default()
                    )
                }
            });
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::BuildPair {
            h0,
            h1,
            p1,
            tail,
            m,
            assert_zariski,
            out,
        } => {
            let c0 = CurveInput::parse_curve_file(&read_file(h0)?)?;
            let c1 = CurveInput::parse_curve_file(&read_file(h1)?)?;
            for c in [&c0, &c1] {
                let pre = precondition_check(c)?;
                if !pre.ok {
                    eprintln!(
                        "precondition failed for `{}`: {}",
                        c.role,
                        pre.failure.unwrap_or_default()
                    );
                    return Ok(ExitCode::from(1));
                }
            }
            let tail_spec = if tail == "auto" {
                TailSpec::Auto { m: *m }
            } else {
                TailSpec::Explicit(parse(tail, &["x", "y", "z"])?)
            };
            let zariski = ZariskiAssertion {
                asserted: assert_zariski.is_some(),
                provenance: assert_zariski.clone().unwrap_or_default(),
            };
            let pair = build_weighted_pair(&c0, &c1, *p1, &tail_spec, zariski, cfg)?;
            let file = PairFile {
                t0: pair.t0.clone(),
                t1: pair.t1.clone(),
                zariski: pair.zariski.clone(),
            };
            fs::write(out, serde_json::to_string_pretty(&file).unwrap())
                .map_err(|e| Error::InvalidInput(format!("cannot write {out}: {e}")))?;
            emit(
                cli,
                &serde_json::json!({
                    "out": out,
                    "d": pair.t0.d,
                    "m": pair.t0.m,
                    "k": pair.profiles[0].k,
                    "mu_tot": pair.profiles[0].mu_tot,
                }),
                || {
                    format!(
                        "pair written to {out}\nP-degree {} with k = {} singular points, \
                         mu_tot = {}",
                        pair.t0.d, pair.profiles[0].k, pair.profiles[0].mu_tot
                    )
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify {
            pair,
            trials,
            seed,
            out,
        } => {
            let file: PairFile = read_json(pair)?;
            let report = certify_pair(&file.t0, &file.t1, &file.zariski, cfg, *trials, *seed)?;
            let json = serde_json::to_string_pretty(&report).unwrap();
            if let Some(path) = out {
                fs::write(path, &json)
                    .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
            }
            if cli.json {
                println!("{json}");
            } else {
                println!("verdict: {:?}", report.verdict);
                if let Some(stars) = &report.mu_star {
                    println!("mu* = {:?} / {:?}", stars[0], stars[1]);
                }
                if let Some(z) = &report.zeta {
                    println!("zeta = {}", z[0]);
                }
                for n in &report.notes {
                    println!("note: {n}");
                }
            }
            Ok(match report.verdict {
                Verdict::CertifiedCandidate => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            })
        }
        Command::ScanFamily { family, refine } => {
            let spec: FamilySpec = read_json(family)?;
            let outcome = scan_family(&spec, cfg, *refine)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome).unwrap());
            } else {
                println!("{:<10} {:>5} {:>8} {:>4}  local", "s", "mu", "mu_tot", "k");
                for row in &outcome.rows {
                    if row.valid {
                        println!(
                            "{:<10} {:>5} {:>8} {:>4}  {:?}",
                            row.s,
                            row.mu.unwrap(),
                            row.mu_tot.unwrap(),
                            row.k.unwrap(),
                            row.local_mu.as_ref().unwrap()
                        );
                    } else {
                        println!(
                            "{:<10} invalid: {}",
                            row.s,
                            row.note.clone().unwrap_or_default()
                        );
                    }
                }
                println!("verdict: {:?}", outcome.verdict);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GenSextic { seed, out } => {
            let curve = generate_torus_sextic(*seed, cfg)?;
            let text = curve.render_curve_file();
            match out {
                Some(path) => {
                    fs::write(path, &text)
                        .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
                    println!("curve written to {path}");
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(cli: &Cli, json: &serde_json::Value, text: impl Fn() -> String) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(json).unwrap());
    } else {
        println!("{}", text());
    }
}

fn polyhedron_json(np: &NewtonPolyhedron) -> serde_json::Value {
    serde_json::json!({
        "vertices": np.vertices().iter().map(|v| v.0[..np.arity()].to_vec()).collect::<Vec<_>>(),
        "faces": np.faces().iter().map(|f| serde_json::json!({
            "dim": f.dim,
            "vertices": f.vertices.iter().map(|v| v.0[..np.arity()].to_vec()).collect::<Vec<_>>(),
            "covector": f.covector,
            "d_value": f.d_value,
            "lattice_volume": f.lattice_volume.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn read_file(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Error> {
    serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {path}: {e}")))
}

fn bad_num(s: &str) -> Error {
    Error::InvalidInput(format!("not a number: `{s}`"))
}
