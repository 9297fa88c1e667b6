//! `thetakit`: reports on theta operators, restriction and toy Eisenstein moments.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a counterexample was found.

mod args;

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use serde_json::{json, Value};
use theta_core::family::{
    kummer_certify, kummer_sample, measure_moment, ChiU, KummerTest, MomentData, ToyCM,
};
use theta_core::padic::{PAdicInt, RingCtx};
use theta_core::restriction::{builtin_witness, check_pure_commutation, extend_via_weyl};
use theta_core::schur::{lcan_column_form, lcan_expand};
use theta_core::series::{exponent_grid, ShiftedSeries};
use theta_core::theta::{
    congruence_sweep, phi_equivalence_report, theta_kappa_apply, GridSpec, ThetaKappa,
};
use theta_core::weight::{PAdicCharacterApprox, PartitionedSignature, Signature, Weight};

use args::{parse_ints, parse_part, parse_sig, parse_weight, Cli, Command, FamilyArgs, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] theta_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

struct Report {
    body: Value,
    csv: Option<String>,
    counterexample: bool,
}

impl Report {
    fn json(body: Value) -> Self {
        Report {
            body,
            csv: None,
            counterexample: false,
        }
    }
}

fn ctx(cli: &Cli, n_bound: usize) -> Result<Arc<RingCtx>, CliError> {
    Ok(RingCtx::new(cli.global.p, cli.global.precision, n_bound)?)
}

fn witness(
    ctx: &Arc<RingCtx>,
    sig: &Signature,
    kind: &str,
    cap: u32,
    bound: u32,
) -> Result<ShiftedSeries, CliError> {
    let vars = sig.variables();
    match kind {
        "builtin" => Ok(builtin_witness(ctx, sig)?),
        "grid" => {
            let terms = exponent_grid(vars.len(), bound)
                .filter(|a| a.iter().sum::<u32>() <= cap)
                .map(|a| (a, PAdicInt::one(ctx)));
            Ok(ShiftedSeries::from_terms(ctx, vars, cap, terms)?)
        }
        other => {
            let alpha = other.strip_prefix("alpha:").ok_or_else(|| {
                CliError::Usage(format!(
                    "witness is builtin, grid or alpha:<exponents>, got {other:?}"
                ))
            })?;
            let a = parse_ints(alpha)?
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| CliError::Usage("negative exponent".into())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ShiftedSeries::basis_element(ctx, vars, cap, a)?)
        }
    }
}

fn moment_data(
    f: &FamilyArgs,
    k: i64,
    nu: i64,
    psi: Option<&str>,
    kappa: Option<&str>,
) -> Result<MomentData, CliError> {
    let sig = Signature::single(f.n, f.n)?;
    let kappa = match kappa {
        Some(s) => parse_weight(&sig, s)?,
        None => Weight::zero(&sig),
    };
    let psi = match psi {
        Some(s) => parse_ints(s)?,
        None => vec![0; f.n],
    };
    Ok(MomentData {
        k,
        nu,
        chi_u: ChiU::trivial(),
        psi,
        kappa,
    })
}

fn family_part(f: &FamilyArgs) -> Result<Option<PartitionedSignature>, CliError> {
    f.part
        .as_deref()
        .map(|s| parse_part(&Signature::single(f.n, f.n)?, s))
        .transpose()
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let small_grid = g.grid_bound.unwrap_or(3);
    match &cli.command {
        Command::Lcan(w) => {
            let sig = parse_sig(&w.sig)?;
            let k = parse_weight(&sig, &w.kappa)?;
            let (f, route) = match lcan_expand(&k) {
                Ok(f) => (f, "symmetrizer"),
                Err(theta_core::Error::ExpansionTooLarge(_)) => {
                    (lcan_column_form(&k)?, "column_form")
                }
                Err(e) => return Err(e.into()),
            };
            Ok(Report::json(json!({
                "kappa": k,
                "route": route,
                "max_abs_coeff": f.max_abs_coeff().to_string(),
                "functional": f.to_json(),
                "canonical": f.canonical().to_json(),
            })))
        }
        Command::Phi(w) => {
            let sig = parse_sig(&w.sig)?;
            let k = parse_weight(&sig, &w.kappa)?;
            let t = ThetaKappa::new(&k)?;
            let equivalence = if k.is_symmetric() {
                serde_json::to_value(phi_equivalence_report(
                    &k,
                    exponent_grid(sig.variables().len(), small_grid),
                )?)
                .expect("serializable")
            } else {
                Value::Null
            };
            Ok(Report::json(json!({
                "kappa": k,
                "symmetric": k.is_symmetric(),
                "route": t.route,
                "polynomial": t.poly.to_json(),
                "equivalence": equivalence,
            })))
        }
        Command::ThetaApply {
            weight,
            witness: kind,
        } => {
            let sig = parse_sig(&weight.sig)?;
            let k = parse_weight(&sig, &weight.kappa)?;
            let c = ctx(cli, sig.n())?;
            let s = witness(&c, &sig, kind, g.degree_cap, small_grid)?;
            let out = theta_kappa_apply(&s, &k)?;
            Ok(Report::json(
                json!({"kappa": k, "input": s.to_json(), "output": out.to_json()}),
            ))
        }
        Command::Congruence {
            sig,
            kappa,
            kappa_prime,
        } => {
            let sig = parse_sig(sig)?;
            let (k, kp) = (parse_weight(&sig, kappa)?, parse_weight(&sig, kappa_prime)?);
            let c = ctx(cli, sig.n())?;
            let grid = GridSpec {
                bound: g.grid_bound.unwrap_or((g.p * g.p) as u32),
                max_points: 1_000_000,
                seed: g.seed,
            };
            let r = congruence_sweep(&c, &k, &kp, g.m, &grid)?;
            let counterexample = !r.is_ok();
            let csv = r.witness.as_ref().map(|w| {
                format!(
                    "alpha,value_kappa,value_kappa_prime\n\"{:?}\",{},{}\n",
                    w.alpha, w.value_kappa, w.value_kappa_prime
                )
            });
            let csv = csv.or_else(|| Some("alpha,value_kappa,value_kappa_prime\n".into()));
            Ok(Report {
                body: serde_json::to_value(&r).expect("serializable"),
                csv,
                counterexample,
            })
        }
        Command::Restrict(a) => {
            let sig = parse_sig(&a.sig)?;
            let part = parse_part(&sig, &a.part)?;
            let lambda = parse_weight(&sig, &a.lambda)?;
            let c = ctx(cli, sig.n())?;
            let s = witness(&c, &sig, &a.witness, g.degree_cap, small_grid)?;
            let r = check_pure_commutation(&lambda, &part, &s)?;
            let counterexample = !r.verdict;
            Ok(Report {
                body: serde_json::to_value(&r).expect("serializable"),
                csv: None,
                counterexample,
            })
        }
        Command::WeylExtend(a) => {
            let sig = parse_sig(&a.sig)?;
            let part = parse_part(&sig, &a.part)?;
            let lambda = parse_weight(&sig, &a.lambda)?;
            let c = ctx(cli, sig.n())?;
            let s = witness(&c, &sig, &a.witness, g.degree_cap, small_grid)?;
            let r = extend_via_weyl(&PAdicCharacterApprox::new(lambda, g.m), &part, &s)?;
            let counterexample = !r.verdict;
            Ok(Report {
                body: serde_json::to_value(&r).expect("serializable"),
                csv: None,
                counterexample,
            })
        }
        Command::Family(f) => {
            let c = ctx(cli, 2 * f.n)?;
            let cm = ToyCM::new(&c)?;
            let data = moment_data(f, f.k, f.nu, f.psi.as_deref(), f.kappa.as_deref())?;
            let t = measure_moment(&cm, &data, f.cap, family_part(f)?.as_ref())?;
            let mut body = t.to_json();
            body["field"] = json!({"d": cm.d(), "note": "K = Q(sqrt(-d)) with p split"});
            Ok(Report {
                body,
                csv: Some(t.to_csv()),
                counterexample: false,
            })
        }
        Command::Certify {
            first,
            k_prime,
            nu_prime,
            psi_prime,
            kappa_prime,
            samples,
        } => {
            let c = ctx(cli, 2 * first.n)?;
            let cm = ToyCM::new(&c)?;
            let a = moment_data(
                first,
                first.k,
                first.nu,
                first.psi.as_deref(),
                first.kappa.as_deref(),
            )?;
            let b = moment_data(
                first,
                *k_prime,
                *nu_prime,
                psi_prime.as_deref(),
                kappa_prime.as_deref(),
            )?;
            let sample = kummer_sample(&cm, first.n, first.cap, *samples, g.seed)?;
            let test = KummerTest {
                terms: vec![(1, a), (-1, b)],
            };
            let r = kummer_certify(
                &cm,
                &[test],
                g.m,
                &sample,
                first.cap,
                family_part(first)?.as_ref(),
            )?;
            let counterexample = r.counterexamples() > 0;
            Ok(Report {
                body: serde_json::to_value(&r).expect("serializable"),
                csv: None,
                counterexample,
            })
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("THETAKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = match cli.global.format {
        Format::Json => {
            let doc = json!({
                "config": serde_json::to_value(cli).expect("serializable"),
                "status": if report.counterexample { "counterexample" } else { "ok" },
                "report": report.body,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Csv => report.csv.clone().ok_or_else(|| {
            CliError::Usage("csv output is available for family and congruence".into())
        })?,
    };
    match &cli.global.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    configure_threads();
    match run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.counterexample)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
