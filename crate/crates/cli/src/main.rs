//! `stform`: exact computations with stable exterior forms.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use stable_forms::ample::{self, HullCertificate, SixDKind, WitnessCase};
use stable_forms::builtins;
use stable_forms::hitchin;
use stable_forms::io;
use stable_forms::metric::PseudoMetric;
use stable_forms::orbit::{classify, stabilizer_algebra_dim, Family};
use stable_forms::restrict::{causal_type, restrict, restriction_survey, OrientedHyperplane};
use stable_forms::scalar::Scalar;
use stable_forms::simplicial::build_splitting;
use stable_forms::whitney::{integrate_whitney, ones_is_constant_one, whitney_form};
use stable_forms::Matrix;

#[derive(Parser)]
#[command(
    name = "stform",
    about = "Exact classification, extension and volume computations for stable exterior forms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FormArg {
    /// A form file, or `builtin:NAME` (see `stform builtins`)
    #[arg(long)]
    form: String,
    /// Parameter for the builtin families (omega+, varpi+, mu0, xi0, ...)
    #[arg(long)]
    k: Option<u32>,
}

impl FormArg {
    fn load(&self) -> Result<stable_forms::PForm> {
        Ok(io::load_form(&self.form, self.k)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a form: family, stability, certificates
    Classify {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        json: bool,
    },
    /// Restrict a form to an oriented hyperplane and classify the result
    Restrict {
        #[command(flatten)]
        form: FormArg,
        /// Basis vector of the hyperplane (repeat n-1 times), e.g. "0,1,0,0,0,0,0"
        #[arg(long = "row", required = true)]
        rows: Vec<String>,
        /// Also report the causal type for this metric: euclid | split
        #[arg(long)]
        metric: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Sample hyperplanes, classify restrictions, bucket by causal type
    Survey {
        #[command(flatten)]
        form: FormArg,
        /// Metric for causal typing: euclid | split | none
        #[arg(long, default_value = "none")]
        metric: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Extension membership, witness verification and sampling
    Ample {
        #[command(subcommand)]
        command: AmpleCommand,
    },
    /// Volume certificates, the scaling law and the dual form
    Hitchin {
        #[command(subcommand)]
        command: HitchinCommand,
    },
    /// Cochain splittings and Whitney-form checks
    Hodge {
        #[command(subcommand)]
        command: HodgeCommand,
    },
    /// Run the full acceptance suite
    Selftest {
        /// Run a single criterion (1..=11) instead of the whole suite
        #[arg(long)]
        criterion: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// List the built-in forms
    Builtins,
}

#[derive(Subcommand)]
enum AmpleCommand {
    /// Is th^1 ∧ nu + tau in the target orbit?
    Check {
        /// Target family tag, e.g. G2Tilde, Emproplectic, Osemproplectic
        #[arg(long)]
        family: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Verify a named witness set
    Witness {
        /// timelike | spacelike | null | ossymplectic-hull | ospseudo-tau0 | osempro-abundance
        #[arg(long)]
        case: String,
        #[arg(long)]
        k: Option<u32>,
        /// Rational epsilon for the null case (default 1/10)
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Rejection-sample the extension set and test its hull
    Sample {
        #[arg(long)]
        family: String,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum HitchinCommand {
    /// Exact volume certificate
    Vol {
        #[command(flatten)]
        form: FormArg,
        #[arg(long)]
        json: bool,
    },
    /// Finite-difference dual form
    Xi {
        #[command(flatten)]
        form: FormArg,
        /// Rational central-difference step (default 1/10000)
        #[arg(long)]
        step: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Exact check of vol((1+lambda) sigma) = (1+lambda)^(n/p) vol(sigma)
    Scale {
        #[command(flatten)]
        form: FormArg,
        /// Rational lambda with (1+lambda)^(n/p) rational
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum HodgeCommand {
    /// Build and verify the cochain splitting of a complex
    Split {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        json: bool,
    },
    /// Whitney-form checks on an embedded complex
    Whitney {
        #[arg(long)]
        complex: String,
        /// Run the full Kronecker check in every degree
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_family(tag: &str) -> Result<Family> {
    let t = tag.to_ascii_lowercase();
    Ok(match t.as_str() {
        "emproplectic" => Family::Emproplectic,
        "pisoplectic" => Family::Pisoplectic,
        "pseudoplectic" => Family::Pseudoplectic,
        "osemproplectic" => Family::Osemproplectic,
        "ospisoplectic" => Family::Ospisoplectic,
        "ospseudoplectic" => Family::Ospseudoplectic,
        "sl3r" => Family::Sl3R,
        "sl3c" => Family::Sl3C,
        "g2" => Family::G2,
        "g2tilde" | "g2~" => Family::G2Tilde,
        "negg2" => Family::NegG2,
        "negg2tilde" => Family::NegG2Tilde,
        _ => bail!("unknown family tag {tag:?}"),
    })
}

fn parse_metric(name: &str, n: u32) -> Result<Option<PseudoMetric>> {
    match name {
        "none" => Ok(None),
        "euclid" | "g0" => Ok(Some(PseudoMetric::new(
            Matrix::identity(n as usize),
            builtins::standard_volume(n),
        )?)),
        "split" | "gtilde0" => {
            if n != 7 {
                bail!("the split metric is defined on R^7");
            }
            Ok(Some(builtins::gtilde0()))
        }
        _ => bail!("unknown metric {name:?} (use euclid, split or none)"),
    }
}

fn parse_rational(text: &str) -> Result<Scalar> {
    Scalar::parse_rational(text).map_err(|e| anyhow!(e))
}

fn parse_plane(rows: &[String], n: u32) -> Result<OrientedHyperplane> {
    if rows.len() as u32 != n - 1 {
        bail!("expected {} basis rows for a hyperplane in R^{n}", n - 1);
    }
    let mut parsed: Vec<Vec<Scalar>> = Vec::new();
    for row in rows {
        let entries: Vec<Scalar> = row
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<_>>()?;
        if entries.len() as u32 != n {
            bail!("row {row:?} has {} entries, expected {n}", entries.len());
        }
        parsed.push(entries);
    }
    Ok(OrientedHyperplane::new(
        Matrix::from_rows(parsed).transpose(),
    )?)
}

/// FNV-1a digest of the canonical input data, for the report header.
fn fnv1a(data: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a:{h:016x}")
}

/// Attach the command echo and inputs digest, then print the report.
/// Reports are deterministic given (inputs, seed); a `pass: false` field
/// turns into exit code 1.
fn emit(
    json_mode: bool,
    inputs: &[String],
    mut value: Value,
    text: impl FnOnce(&Value) -> String,
) -> bool {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    if let Value::Object(map) = &mut value {
        map.insert("command".into(), json!(echo.join(" ")));
        map.insert("inputs_digest".into(), json!(fnv1a(&inputs.join("\n"))));
    }
    if json_mode {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        println!("{}", text(&value));
    }
    value.get("pass").and_then(Value::as_bool).unwrap_or(true)
}

fn canon(form: &stable_forms::PForm) -> String {
    serde_json::to_string(&io::form_to_json(form)).expect("serializable")
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { form, json } => {
            let f = form.load()?;
            let label = classify(&f)?;
            let info = stabilizer_algebra_dim(&f);
            let report = io::classification_report(&label, &info);
            Ok(emit(json, &[canon(&f)], report, |v| {
                format!(
                    "label: {}\nstable: {}\nstabilizer dimension: {}\ncertificates: {}",
                    v["label"].as_str().unwrap_or("?"),
                    v["stable"],
                    v["stab_dim"],
                    serde_json::to_string_pretty(&v["certificates"]).unwrap_or_default()
                )
            }))
        }
        Command::Restrict {
            form,
            rows,
            metric,
            json,
        } => {
            let f = form.load()?;
            let plane = parse_plane(&rows, f.n())?;
            let restricted = restrict(&f, &plane)?;
            let label = classify(&restricted)?;
            let info = stabilizer_algebra_dim(&restricted);
            let causal = match metric.as_deref() {
                None => None,
                Some(name) => match parse_metric(name, f.n())? {
                    None => None,
                    Some(g) => Some(causal_type(&plane, &g)?.to_string()),
                },
            };
            let mut report = json!({
                "restriction": io::form_to_json(&restricted),
                "classification": io::classification_report(&label, &info),
            });
            if let Some(ct) = causal {
                report["causal_type"] = json!(ct);
            }
            let inputs = vec![canon(&f), rows.join(";"), metric.unwrap_or_default()];
            Ok(emit(json, &inputs, report, |v| {
                let mut out = format!(
                    "restriction: {}\nlabel: {}",
                    serde_json::to_string(&v["restriction"]).unwrap_or_default(),
                    v["classification"]["label"].as_str().unwrap_or("?")
                );
                if let Some(ct) = v.get("causal_type") {
                    out.push_str(&format!("\ncausal type: {}", ct.as_str().unwrap_or("?")));
                }
                out
            }))
        }
        Command::Survey {
            form,
            metric,
            count,
            seed,
            json,
        } => {
            let f = form.load()?;
            let g = parse_metric(&metric, f.n())?;
            let survey = restriction_survey(&f, g.as_ref(), count, seed)?;
            let buckets: Vec<Value> = survey
                .buckets
                .iter()
                .map(|((ct, fam), n)| {
                    json!({
                        "causal_type": ct.map(|c| c.to_string()),
                        "label": fam,
                        "count": n,
                    })
                })
                .collect();
            let inputs = vec![
                canon(&f),
                metric.clone(),
                count.to_string(),
                seed.to_string(),
            ];
            let report = json!({ "count": survey.count, "seed": seed, "buckets": buckets });
            Ok(emit(json, &inputs, report, |v| {
                let mut out = format!("samples: {}\n", v["count"]);
                out.push_str(&format!("{:<12} {:<22} count\n", "causal", "label"));
                for b in v["buckets"].as_array().unwrap() {
                    out.push_str(&format!(
                        "{:<12} {:<22} {}\n",
                        b["causal_type"].as_str().unwrap_or("-"),
                        b["label"].as_str().unwrap_or("?"),
                        b["count"]
                    ));
                }
                out.trim_end().to_string()
            }))
        }
        Command::Ample { command } => run_ample(command),
        Command::Hitchin { command } => run_hitchin(command),
        Command::Hodge { command } => run_hodge(command),
        Command::Selftest { criterion, json } => {
            let results = match criterion {
                Some(id) => vec![stable_forms::selftest::run_criterion(id)?],
                None => stable_forms::selftest::run_all()?,
            };
            let pass = results.iter().all(|r| r.pass);
            if json {
                let v: Vec<Value> = results
                    .iter()
                    .map(|r| {
                        json!({
                            "id": r.id,
                            "title": r.title,
                            "pass": r.pass,
                            "details": r.details,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "pass": pass, "criteria": v }))?
                );
            } else {
                for r in &results {
                    println!(
                        "criterion {:2}: {:<55} {}",
                        r.id,
                        r.title,
                        if r.pass { "PASS" } else { "FAIL" }
                    );
                    for d in r.details.iter().filter(|d| d.starts_with("FAIL")) {
                        println!("    {d}");
                    }
                }
                println!("overall: {}", if pass { "PASS" } else { "FAIL" });
            }
            Ok(pass)
        }
        Command::Builtins => {
            for name in builtins::BUILTIN_NAMES {
                println!("{name}");
            }
            Ok(true)
        }
    }
}

fn run_ample(command: AmpleCommand) -> Result<bool> {
    match command {
        AmpleCommand::Check {
            family,
            tau,
            nu,
            k,
            json,
        } => {
            let family = parse_family(&family)?;
            let tau = io::load_form(&tau, k)?;
            let nu = io::load_form(&nu, k)?;
            let member = ample::membership(family, &tau, &nu)?;
            // report the matching characterization when one applies
            let characterization = if family == Family::G2Tilde && tau.n() == 6 && tau.degree() == 3
            {
                let kind = match classify(&tau)?.family {
                    Family::Sl3R => Some(SixDKind::Timelike),
                    Family::Sl3C => Some(SixDKind::Spacelike),
                    Family::Parabolic6dCandidate => Some(SixDKind::Null),
                    _ => None,
                };
                match kind {
                    Some(kd) => Some(ample::characterize(kd, &tau, &nu)?),
                    None => None,
                }
            } else {
                None
            };
            let report = json!({
                "family": family.name(),
                "member": member,
                "characterization": characterization,
                "pass": member,
            });
            let inputs = vec![family.name().to_string(), canon(&tau), canon(&nu)];
            Ok(emit(json, &inputs, report, |v| {
                format!(
                    "member of {}: {}{}",
                    v["family"].as_str().unwrap_or("?"),
                    v["member"],
                    match v.get("characterization") {
                        Some(Value::Bool(b)) => format!(" (signature characterization: {b})"),
                        _ => String::new(),
                    }
                )
            }))
        }
        AmpleCommand::Witness { case, k, eps, json } => {
            let eps = eps.map(|t| parse_rational(&t)).transpose()?;
            let case = WitnessCase::parse(&case, k, eps)?;
            let report = ample::verify_witness(&case)?;
            let pass = report.pass();
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                .collect();
            let inputs = vec![report.case.clone()];
            let v = json!({ "case": report.case, "pass": pass, "checks": checks });
            Ok(emit(json, &inputs, v, |v| {
                let mut out = format!("case {}\n", v["case"].as_str().unwrap_or("?"));
                for c in v["checks"].as_array().unwrap() {
                    out.push_str(&format!(
                        "  [{}] {}{}\n",
                        if c["pass"].as_bool().unwrap_or(false) {
                            "pass"
                        } else {
                            "FAIL"
                        },
                        c["name"].as_str().unwrap_or("?"),
                        match c["detail"].as_str() {
                            Some("") | None => String::new(),
                            Some(d) => format!(" -- {d}"),
                        }
                    ));
                }
                out.push_str(&format!(
                    "verdict: {}",
                    if v["pass"].as_bool().unwrap_or(false) {
                        "pass"
                    } else {
                        "fail"
                    }
                ));
                out
            }))
        }
        AmpleCommand::Sample {
            family,
            tau,
            k,
            count,
            seed,
            json,
        } => {
            let family = parse_family(&family)?;
            let tau = io::load_form(&tau, k)?;
            let report = ample::sample_extension_set(family, &tau, count, seed)?;
            let hull = report.hull.as_ref().map(|h| match h {
                HullCertificate::Combination { coefficients } => json!({
                    "zero_in_hull": true,
                    "coefficients": coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                }),
                HullCertificate::Refutation { min_value, .. } => json!({
                    "zero_in_hull": false,
                    "separation": min_value.to_string(),
                }),
            });
            let inputs = vec![
                family.name().to_string(),
                canon(&tau),
                count.to_string(),
                seed.to_string(),
            ];
            let v = json!({
                "family": family.name(),
                "tried": report.tried,
                "accepted": report.accepted.len(),
                "acceptance_rate": report.acceptance_rate(),
                "hull": hull,
            });
            Ok(emit(json, &inputs, v, |v| {
                format!(
                    "accepted {}/{} samples (rate {:.1}%){}",
                    v["accepted"],
                    v["tried"],
                    v["acceptance_rate"].as_f64().unwrap_or(0.0) * 100.0,
                    match v.get("hull") {
                        Some(Value::Object(h)) => format!(
                            "\nzero in hull of accepted set: {}",
                            h.get("zero_in_hull").cloned().unwrap_or(Value::Null)
                        ),
                        _ => "\nno acceptances, hull untested".to_string(),
                    }
                )
            }))
        }
    }
}

fn run_hitchin(command: HitchinCommand) -> Result<bool> {
    match command {
        HitchinCommand::Vol { form, json } => {
            let f = form.load()?;
            let cert = hitchin::hitchin_volume(&f)?;
            let v = json!({
                "family": cert.family.name(),
                "base": cert.base.to_string(),
                "root": cert.root,
                "sign": cert.sign,
                "exact": cert.exact.as_ref().map(|c| c.to_string()),
                "approx": cert.approx(),
            });
            Ok(emit(json, &[canon(&f)], v, |v| {
                format!(
                    "family: {}\nvolume coefficient: {}\n  = sign {} * ({})^(1/{}) ~ {}",
                    v["family"].as_str().unwrap_or("?"),
                    v["exact"].as_str().unwrap_or("(irrational)"),
                    v["sign"],
                    v["base"].as_str().unwrap_or("?"),
                    v["root"],
                    v["approx"]
                )
            }))
        }
        HitchinCommand::Xi { form, step, json } => {
            let f = form.load()?;
            let h = match step {
                Some(t) => parse_rational(&t)?,
                None => Scalar::ratio(1, 10_000),
            };
            let report = hitchin::xi_dual(&f, &h)?;
            let coeffs: Vec<Value> = report
                .xi
                .iter()
                .filter(|(_, v)| v.abs() > 1e-12)
                .map(|(idx, v)| json!({ "idx": idx.indices().collect::<Vec<_>>(), "coeff": v }))
                .collect();
            let candidate = report
                .candidate
                .as_ref()
                .map(|(_, c, res)| json!({ "constant": c, "residual": res }));
            let inputs = vec![canon(&f), h.to_string()];
            let v = json!({
                "family": report.family.name(),
                "xi": coeffs,
                "candidate": candidate,
            });
            Ok(emit(json, &inputs, v, |v| {
                let mut out = format!("family: {}\n", v["family"].as_str().unwrap_or("?"));
                for c in v["xi"].as_array().unwrap() {
                    let idx: Vec<String> = c["idx"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|i| i.to_string())
                        .collect();
                    out.push_str(&format!("  th^{{{}}}: {}\n", idx.join(""), c["coeff"]));
                }
                if let Some(Value::Object(c)) = v.get("candidate") {
                    out.push_str(&format!(
                        "proportional to the metric dual with constant {} (residual {})",
                        c.get("constant").cloned().unwrap_or(Value::Null),
                        c.get("residual").cloned().unwrap_or(Value::Null)
                    ));
                }
                out.trim_end().to_string()
            }))
        }
        HitchinCommand::Scale { form, lambda, json } => {
            let f = form.load()?;
            let lambda = parse_rational(&lambda)?;
            let ok = hitchin::scaling_law(&f, &lambda)?;
            let inputs = vec![canon(&f), lambda.to_string()];
            let v = json!({ "lambda": lambda.to_string(), "holds": ok, "pass": ok });
            Ok(emit(json, &inputs, v, |v| {
                format!(
                    "scaling law at lambda = {}: {}",
                    v["lambda"].as_str().unwrap(),
                    v["holds"]
                )
            }))
        }
    }
}

fn run_hodge(command: HodgeCommand) -> Result<bool> {
    match command {
        HodgeCommand::Split { complex, json } => {
            let text = std::fs::read_to_string(&complex)
                .with_context(|| format!("cannot read {complex:?}"))?;
            let (k, _) = io::complex_from_json(&text)?;
            let s = build_splitting(&k)?;
            let dims: Vec<Value> = (0..=k.dim())
                .map(|p| {
                    json!({
                        "degree": p,
                        "cochains": k.count(p),
                        "betti": s.betti[p],
                    })
                })
                .collect();
            let v = json!({ "dim": k.dim(), "degrees": dims, "pass": true });
            Ok(emit(json, &[text.clone()], v, |v| {
                let mut out = String::from(
                    "splitting verified: C^p = iota H^p + d C^(p-1) + delta C^(p+1)\n",
                );
                out.push_str("degree  #cochains  betti\n");
                for d in v["degrees"].as_array().unwrap() {
                    out.push_str(&format!(
                        "{:>6}  {:>9}  {:>5}\n",
                        d["degree"].to_string(),
                        d["cochains"].to_string(),
                        d["betti"].to_string()
                    ));
                }
                out.trim_end().to_string()
            }))
        }
        HodgeCommand::Whitney {
            complex,
            check,
            json,
        } => {
            let text = std::fs::read_to_string(&complex)
                .with_context(|| format!("cannot read {complex:?}"))?;
            let (k, embedded) = io::complex_from_json(&text)?;
            let e = embedded.ok_or_else(|| anyhow!("the complex file has no \"coords\""))?;
            let mut pass = true;
            let mut lines: Vec<String> = Vec::new();
            if check {
                for p in 0..=k.dim() {
                    let simplices = k.simplices(p).to_vec();
                    let mut ok = true;
                    for s in &simplices {
                        let w = whitney_form(&k, s)?;
                        for t in &simplices {
                            let v = integrate_whitney(&e, &w, t)?;
                            let expect = if s == t {
                                Scalar::one()
                            } else {
                                Scalar::zero()
                            };
                            if v != expect {
                                ok = false;
                            }
                        }
                    }
                    pass &= ok;
                    lines.push(format!(
                        "degree {p}: Kronecker pairing {}",
                        if ok { "exact" } else { "FAILED" }
                    ));
                }
            }
            let ones_ok = ones_is_constant_one(&e);
            pass &= ones_ok;
            lines.push(format!("unit cochain maps to the constant 1: {ones_ok}"));
            let v = json!({ "pass": pass, "checks": lines });
            Ok(emit(json, &[text.clone()], v, |v| {
                v["checks"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|l| l.as_str().unwrap_or("").to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            }))
        }
    }
}

fn main() {
    match run() {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
