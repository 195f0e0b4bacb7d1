use dunkl::extremal::{rayleigh_maximize, ProbeOptions};
use dunkl::inequalities::{admissible, verify_corpus, EvalContext, EvalOptions, InequalitySpec, CEILING_TOL};
use dunkl::measure::{generate_corpus, integrate_radial, lp_norm_of, CorpusConstraints, FunctionFamily, Infra, Op, Setting, TestFunction};
use dunkl::spectral::{dunkl_transform, SpectralConfig};
use dunkl::waveeq::{solve_linear, solve_nonlinear};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use crate::config::*;
use crate::output::{self, num, Out};
use crate::{CliError, Command, RunArgs};

struct Report {
    summary: Value,
    config: Value,
    code: u8,
}

fn load<T: DeserializeOwned + Default>(args: &RunArgs) -> Result<T, CliError> {
    match &args.config {
        Some(_) => load_required(args),
        None => Ok(T::default()),
    }
}

fn load_required<T: DeserializeOwned>(args: &RunArgs) -> Result<T, CliError> {
    let path = args.config.as_ref().ok_or_else(|| CliError::Schema(format!("`{}` needs --config", args.command.name())))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

fn echo(v: &impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn checked(spec: &InequalitySpec) -> Result<(), CliError> {
    spec.check_symbols()?;
    let rep = admissible(spec)?;
    if !rep.admissible {
        let failed: Vec<String> = rep.failed.iter().map(|c| format!("{} (residual {})", c.id, c.residual)).collect();
        return Err(CliError::Schema(format!("{} parameters are inadmissible: {}", spec.theorem, failed.join(", "))));
    }
    Ok(())
}

fn verify(args: &RunArgs, out: &mut Out) -> Result<Report, CliError> {
    let cfg: VerifyCfg = load_required(args)?;
    checked(&cfg.spec)?;
    let seed = args.seed.or(cfg.seed).ok_or_else(|| CliError::Schema("verify needs a seed (--seed or \"seed\")".into()))?;
    let corpus = cfg.corpus.generate(seed)?;
    let mut ctx = EvalContext::for_spec(&cfg.spec)?.with_options(EvalOptions { class_policy: cfg.class_policy, ..Default::default() });
    if let Some(r) = cfg.resolution {
        ctx.infra.resolution = r;
    }
    let rep = verify_corpus(&cfg.spec, &corpus, &ctx)?;
    let violations: Vec<usize> = match cfg.bound {
        Some(b) => (0..rep.records.len()).filter(|&i| rep.records[i].ratio > b * (1.0 + CEILING_TOL)).collect(),
        None => rep.violations.clone(),
    };
    out.table(&output::RECORDS, &rep.to_csv())?;
    let summary = json!({
        "spec": rep.spec,
        "admissible": true,
        "sup_ratio": rep.max_ratio,
        "ceiling": rep.ceiling,
        "bound": cfg.bound,
        "records": rep.records.len(),
        "violations": violations.iter().map(|&i| &rep.records[i].function_id).collect::<Vec<_>>(),
        "skipped": rep.skipped,
    });
    let code = if violations.is_empty() { 0 } else { 1 };
    Ok(Report { summary, config: json!({ "seed": seed, "config": echo(&cfg) }), code })
}

fn sharp(args: &RunArgs, out: &mut Out) -> Result<Report, CliError> {
    let cfg: SharpCfg = load_required(args)?;
    checked(&cfg.spec)?;
    let family = cfg.family.family();
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let opt = ProbeOptions { max_iters: cfg.probe.max_iters, tolerance: cfg.probe.tolerance, restarts: cfg.probe.restarts, seed };
    let ctx = EvalContext::for_spec(&cfg.spec)?;
    let res = rayleigh_maximize(&cfg.spec, &family, &opt, &ctx)?;
    let mut csv = format!("{}\n", output::PROBE_TRACE.columns);
    for t in &res.trace {
        csv.push_str(&format!("{},{},{},{}\n", t.restart, t.evaluation, num(t.ratio), num(t.best)));
    }
    out.table(&output::PROBE_TRACE, &csv)?;
    let result = json!({
        "spec": res.spec,
        "family": res.family,
        "best_params": res.best_params,
        "best_ratio": res.best_ratio,
        "ceiling": res.ceiling,
        "gap": res.gap,
    });
    out.json("result.json", &result)?;
    let mut summary = result;
    summary["converged"] = json!(res.converged);
    summary["all_on_boundary"] = json!(res.all_on_boundary);
    summary["restarts"] = echo(&res.restarts);
    let over = res.ceiling.is_some_and(|c| res.best_ratio > c * (1.0 + CEILING_TOL));
    Ok(Report { summary, config: json!({ "seed": seed, "config": echo(&cfg) }), code: if over { 1 } else { 0 } })
}

fn wave(args: &RunArgs, out: &mut Out) -> Result<Report, CliError> {
    let cfg: WaveCfg = load(args)?;
    let wc = cfg.wave_config()?;
    let seed = args.seed.or(cfg.seed);
    let u0 = cfg.data.u0.build(seed)?;
    let u1 = cfg.data.u1.build(seed)?;
    let sol = if wc.p.is_some() { solve_nonlinear(&wc, &u0, &u1)? } else { solve_linear(&wc, &u0, &u1)? };
    out.table(&output::NORM_TRACE, &sol.trace.to_csv())?;
    out.table(&output::SNAPSHOTS, &sol.snapshots_csv())?;
    Ok(Report { summary: echo(&sol.summary()), config: json!({ "seed": seed, "config": echo(&cfg) }), code: 0 })
}

/// (2π)^{-1/2} ∫ f(x) e^{−iξx} dx, trapezoid rule on [−L, L].
fn fourier_trapezoid(f: &dyn Fn(f64) -> f64, xi: f64, half_width: f64) -> Complex64 {
    let n = 8000;
    let h = 2.0 * half_width / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let x = -half_width + i as f64 * h;
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        acc += w * f(x) * Complex64::new(0.0, -xi * x).exp();
    }
    acc * h / (2.0 * PI).sqrt()
}

struct Check {
    name: &'static str,
    setting: String,
    id: String,
    value: f64,
    tol: f64,
}

fn label(s: &Setting) -> String {
    match s {
        Setting::Rank1 { k } => format!("rank1 k={k}"),
        Setting::Radial { dim, gamma, .. } => format!("radial N={dim} gamma={gamma}"),
    }
}

fn selftest_setting(setting: Setting, corpus: &[TestFunction], checks: &mut Vec<Check>) -> Result<(), CliError> {
    let cfg = SpectralConfig::default();
    let infra = Infra::new(setting);
    for f in corpus {
        let field = dunkl_transform(f, &setting, &cfg)?;
        let n = lp_norm_of(f, Op::Value, 2.0, 0.0, &infra)?;
        checks.push(Check { name: "plancherel", setting: label(&setting), id: f.id.clone(), value: (field.l2_norm() - n).abs() / n, tol: 1e-6 });

        // ‖∇_k f‖² = −∫ f Δ_k f dμ_k
        let g = lp_norm_of(f, Op::Gradient, 2.0, 0.0, &infra)?;
        let v = f.profile(Op::Value, &setting)?;
        let l = f.profile(Op::Laplacian(1), &setting)?;
        let pairing = integrate_radial(f, &infra, 0.0, None, |t| v.eval(t) * l.eval(t))?;
        checks.push(Check { name: "integration_by_parts", setting: label(&setting), id: f.id.clone(), value: (g * g + pairing).abs() / (g * g), tol: 1e-8 });

        if setting == (Setting::Rank1 { k: 0.0 }) {
            let (xs, vs) = field.full_grid();
            let mut worst = 0.0f64;
            for (&x, val) in xs.iter().zip(&vs).step_by(53) {
                worst = worst.max((val - fourier_trapezoid(&|y| v.eval(y), x, 20.0)).norm());
            }
            checks.push(Check { name: "fourier_k0", setting: label(&setting), id: f.id.clone(), value: worst, tol: 1e-7 });
        }
    }
    Ok(())
}

fn selftest(args: &RunArgs, out: &mut Out) -> Result<Report, CliError> {
    let cfg: SelftestCfg = load(args)?;
    let seed = args.seed.unwrap_or(cfg.seed);
    let families = [
        FunctionFamily::Gaussian,
        FunctionFamily::DilatedGaussian,
        FunctionFamily::HermiteGaussian,
        FunctionFamily::RadialBump,
        FunctionFamily::SeededSuperposition,
    ];
    let corpus = generate_corpus(seed, cfg.count, &families, CorpusConstraints { vanish_at_origin: false, radial: true })?;
    let mut settings: Vec<Setting> = cfg.ks.iter().map(|&k| Setting::Rank1 { k }).collect();
    settings.extend(cfg.radial.iter().map(|&(n, g)| Setting::radial(n, g)));
    let mut checks = Vec::new();
    for s in settings {
        selftest_setting(s, &corpus, &mut checks)?;
    }
    let mut csv = format!("{}\n", output::SELFTEST.columns);
    let mut worst: BTreeMap<&str, f64> = BTreeMap::new();
    let mut failed = Vec::new();
    for c in &checks {
        let pass = c.value <= c.tol;
        csv.push_str(&format!("{},{},{},{},{},{}\n", c.name, c.setting, c.id, num(c.value), num(c.tol), pass));
        let w = worst.entry(c.name).or_insert(0.0);
        *w = w.max(c.value);
        if !pass {
            failed.push(format!("{} [{}] {}: {:e}", c.name, c.setting, c.id, c.value));
        }
    }
    out.table(&output::SELFTEST, &csv)?;
    let summary = json!({ "checks": checks.len(), "worst": worst, "failed": failed });
    let config = json!({ "seed": seed, "config": echo(&cfg) });
    if failed.is_empty() {
        Ok(Report { summary, config, code: 0 })
    } else {
        Ok(Report { summary, config, code: 3 })
    }
}

fn corpus(args: &RunArgs, out: &mut Out) -> Result<Report, CliError> {
    let cfg: CorpusCmdCfg = load(args)?;
    let seed = args.seed.or(cfg.seed).ok_or_else(|| CliError::Schema("corpus needs a seed (--seed or \"seed\")".into()))?;
    let members = cfg.corpus.generate(seed)?;
    let mut csv = format!("{}\n", output::CORPUS.columns);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for (i, f) in members.iter().enumerate() {
        let params: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={}", num(*v))).collect();
        csv.push_str(&format!("{i},{},{},\"{}\"\n", f.id, f.family, params.join(";")));
        *counts.entry(f.family.to_string()).or_default() += 1;
    }
    out.table(&output::CORPUS, &csv)?;
    out.json("corpus.json", &members)?;
    let summary = json!({ "count": members.len(), "families": counts });
    Ok(Report { summary, config: json!({ "seed": seed, "config": echo(&cfg) }), code: 0 })
}

pub fn run(args: &RunArgs) -> u8 {
    let t0 = Instant::now();
    if let Some(n) = args.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return 2;
        }
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut out = match Out::new(&args.out) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    let result = match args.command {
        Command::Verify => verify(args, &mut out),
        Command::Sharp => sharp(args, &mut out),
        Command::Wave => wave(args, &mut out),
        Command::Selftest => selftest(args, &mut out),
        Command::Corpus => corpus(args, &mut out),
    };
    let (mut summary, config, code) = match result {
        Ok(r) => (r.summary, r.config, r.code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            (json!({ "error": e.message() }), Value::Null, e.exit_code())
        }
    };
    summary["command"] = json!(args.command.name());
    summary["exit_code"] = json!(code);
    summary["status"] = json!(match code {
        0 => "ok",
        1 => "violation",
        2 => "config_error",
        _ => "numerical_failure",
    });
    let meta = json!({
        "command": args.command.name(),
        "config_path": args.config.as_ref().map(|p| p.display().to_string()),
        "run": config,
        "jobs": args.jobs.unwrap_or_else(rayon::current_num_threads),
        "elapsed_seconds": t0.elapsed().as_secs_f64(),
    });
    let written = out.json("summary.json", &summary).and_then(|_| out.metadata(meta));
    if let Err(e) = written {
        eprintln!("error: {}", e.message());
        return e.exit_code();
    }
    println!("{}", serde_json::to_string(&summary).unwrap_or_default());
    code
}
