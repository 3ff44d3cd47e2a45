//! One handler per subcommand. Each returns the full output envelope:
//! effective config, result payload, exit verdict, and the csv table when
//! the run has a natural one.

use crate::output::{obj, opt_int, opt_rat, rat_list, rat_str, Output, Table, Verdict};
use crate::settings::Settings;
use anyhow::{anyhow, bail, Context, Result};
use delsarte_core::codes::{hallucination_probe, realizable, GramCandidate, ProbeOutcome};
use delsarte_core::delsarte::{
    delsarte_bound, delsarte_constant, interval_delsarte, theta_min, AngleSet,
    DelsarteCertificate, StabilizeParams, ThetaOutcome,
};
use delsarte_core::hamming::{is_pd_on_cube, limit_probe, CubeFunction};
use delsarte_core::matio;
use delsarte_core::orthopoly::OrthoFamily;
use delsarte_core::preservers::{
    cone_membership, fit_preserver_form, preserver_fuzz, ConeVerdict, FiniteFunction,
    FitVerdict, PreserverForm,
};
use delsarte_core::psd::{complete_psd, CompletionMethod, CompletionStatus};
use delsarte_core::rat::{parse_rat, parse_rat_list, rat_to_string, Int, Rat};
use serde_json::{json, Map, Value};
use std::path::Path;

fn parse_angles(text: &str) -> Result<AngleSet> {
    let values = parse_rat_list(text).context("invalid angle list")?;
    Ok(AngleSet::new(values)?)
}

fn rat_text(values: &[Rat]) -> String {
    values.iter().map(rat_to_string).collect::<Vec<_>>().join(",")
}

fn angle_text(set: &AngleSet) -> String {
    rat_text(set.values())
}

fn certificate_json(cert: &DelsarteCertificate) -> Map<String, Value> {
    let residuals: Vec<Value> = cert
        .residuals
        .iter()
        .map(|(t, g)| json!([rat_to_string(t), rat_to_string(g)]))
        .collect();
    obj(json!({
        "degree_cap": cert.degree_cap,
        "gbar": rat_str(&cert.gbar),
        "bound_raw": opt_rat(&cert.bound_raw),
        "bound_floor": opt_int(&cert.bound_floor),
        "coeffs": rat_list(&cert.coeffs),
        "residuals": residuals,
    }))
}

fn schedule_json(schedule: &[(usize, Rat)]) -> Value {
    Value::Array(
        schedule
            .iter()
            .map(|(cap, gbar)| json!([cap, rat_to_string(gbar)]))
            .collect(),
    )
}

fn schedule_table(schedule: &[(usize, Rat)]) -> Table {
    Table {
        header: vec!["cap", "gbar"],
        rows: schedule
            .iter()
            .map(|(cap, gbar)| vec![cap.to_string(), rat_to_string(gbar)])
            .collect(),
    }
}

fn escalation_json(params: &StabilizeParams) -> Value {
    json!({
        "start": params.start,
        "step": params.step,
        "window": params.window,
        "hard_cap": params.hard_cap,
    })
}

pub fn bound(
    dim: usize,
    angles: &str,
    degree: Option<usize>,
    stabilize: bool,
) -> Result<Output> {
    let set = parse_angles(angles)?;
    if stabilize == degree.is_some() {
        bail!("pass exactly one of --degree N or --stabilize");
    }
    if let Some(cap) = degree {
        let cert = delsarte_constant(dim, &set, cap)?;
        return Ok(Output {
            command: "bound",
            config: obj(json!({
                "dim": dim,
                "angles": angle_text(&set),
                "degree": cap,
            })),
            result: Value::Object(certificate_json(&cert)),
            verdict: Verdict::Definitive,
            table: None,
        });
    }
    let params = StabilizeParams::for_angles(&set);
    let run = delsarte_bound(dim, &set, &params)?;
    let mut result = certificate_json(&run.certificate);
    result.insert("stabilized".into(), json!(run.stabilized));
    result.insert("schedule".into(), schedule_json(&run.schedule));
    let verdict = if run.stabilized {
        Verdict::Definitive
    } else {
        Verdict::GaveUp
    };
    Ok(Output {
        command: "bound",
        config: obj(json!({
            "dim": dim,
            "angles": angle_text(&set),
            "stabilize": true,
            "escalation": escalation_json(&params),
        })),
        result: Value::Object(result),
        verdict,
        table: Some(schedule_table(&run.schedule)),
    })
}

pub fn interval_bound(dim: usize, cos_theta: &str, degree: usize) -> Result<Output> {
    let ct = parse_rat(cos_theta).context("invalid --cos-theta")?;
    let ib = interval_delsarte(dim, &ct, degree)?;
    let mut result = certificate_json(&ib.certificate);
    result.insert("cos_theta".into(), rat_str(&ib.cos_theta));
    result.insert("certified".into(), json!(ib.certified));
    result.insert("grid_sizes".into(), json!(ib.grid_sizes));
    result.insert("witness".into(), rat_list(ib.witness.coeffs()));
    let verdict = if ib.certified {
        Verdict::Definitive
    } else {
        Verdict::GaveUp
    };
    Ok(Output {
        command: "interval-bound",
        config: obj(json!({
            "dim": dim,
            "cos_theta": rat_to_string(&ct),
            "degree": degree,
        })),
        result: Value::Object(result),
        verdict,
        table: None,
    })
}

pub fn theta(dim: usize, t: &str, kmax: usize) -> Result<Output> {
    let tv = parse_rat(t).context("invalid --t")?;
    let (result, verdict) = match theta_min(dim, &tv, kmax)? {
        ThetaOutcome::Conclusive(scan) => (
            json!({
                "outcome": "Conclusive",
                "minimum": rat_str(&scan.minimum),
                "k_argmin": scan.k_argmin,
                "theta_ratio": rat_str(&scan.theta_ratio),
                "envelope_at_cutoff": rat_str(&scan.envelope_at_cutoff),
                "envelope_heuristic": true,
            }),
            Verdict::Definitive,
        ),
        ThetaOutcome::Inconclusive {
            candidate_min,
            k_argmin,
            envelope_at_cutoff,
        } => (
            json!({
                "outcome": "Inconclusive",
                "minimum": rat_str(&candidate_min),
                "k_argmin": k_argmin,
                "envelope_at_cutoff": rat_str(&envelope_at_cutoff),
                "envelope_heuristic": true,
            }),
            Verdict::GaveUp,
        ),
    };
    Ok(Output {
        command: "theta",
        config: obj(json!({
            "dim": dim,
            "t": rat_to_string(&tv),
            "kmax": kmax,
        })),
        result,
        verdict,
        table: None,
    })
}

pub fn probe(dim: usize, angles: &str, budget: Option<u64>, st: &Settings) -> Result<Output> {
    let set = parse_angles(angles)?;
    let budget = st.budget(budget);
    let params = StabilizeParams::for_angles(&set);
    let verdict = hallucination_probe(dim, &set, &params, budget)?;
    let (outcome, witness, exit) = match &verdict.outcome {
        ProbeOutcome::Sharp(code) => (
            "Sharp",
            matio::sym_to_json(code.gram()),
            Verdict::Definitive,
        ),
        ProbeOutcome::HallucinationCandidate => {
            ("HallucinationCandidate", Value::Null, Verdict::Definitive)
        }
        ProbeOutcome::Inconclusive => ("Inconclusive", Value::Null, Verdict::GaveUp),
    };
    Ok(Output {
        command: "probe",
        config: obj(json!({
            "dim": dim,
            "angles": angle_text(&set),
            "budget": budget,
            "escalation": escalation_json(&params),
        })),
        result: json!({
            "bound_floor": opt_int(&verdict.bound_floor),
            "outcome": outcome,
            "nodes": verdict.nodes,
            "budget": verdict.budget,
            "stabilized": verdict.run.stabilized,
            "schedule": schedule_json(&verdict.run.schedule),
            "witness": witness,
        }),
        verdict: exit,
        table: Some(schedule_table(&verdict.run.schedule)),
    })
}

pub fn verify_code(dim: usize, gram: &Path, angles: Option<&str>) -> Result<Output> {
    let text = std::fs::read_to_string(gram)
        .with_context(|| format!("cannot read gram file {}", gram.display()))?;
    let matrix = matio::sym_from_str(&text)
        .with_context(|| format!("invalid gram file {}", gram.display()))?;
    let derived = angles.is_none();
    let set = match angles {
        Some(list) => parse_angles(list)?,
        None => {
            let mut values = Vec::new();
            for i in 0..matrix.dim() {
                for j in 0..i {
                    values.push(matrix.entry(i, j).clone());
                }
            }
            values.sort();
            values.dedup();
            AngleSet::new(values)?
        }
    };
    let candidate = GramCandidate::new(matrix, set.clone())?;
    let g = candidate.gram();
    let psd = g.is_psd();
    let rank = if psd {
        Some(g.psd_rank().expect("rank of a PSD matrix"))
    } else {
        None
    };
    let ok = realizable(&candidate, dim);
    assert_eq!(ok, psd && rank.is_some_and(|r| r <= dim));
    Ok(Output {
        command: "verify-code",
        config: obj(json!({
            "dim": dim,
            "gram": gram.display().to_string(),
            "angles": angle_text(&set),
            "angles_derived": derived,
        })),
        result: json!({
            "dim": dim,
            "size": candidate.size(),
            "psd": psd,
            "rank": rank,
            "realizable": ok,
        }),
        verdict: Verdict::Definitive,
        table: None,
    })
}

pub fn complete(input: &Path, output: Option<&Path>) -> Result<Output> {
    let text = std::fs::read_to_string(input)
        .with_context(|| format!("cannot read matrix file {}", input.display()))?;
    let partial = matio::partial_from_str(&text)
        .with_context(|| format!("invalid matrix file {}", input.display()))?;
    let outcome = complete_psd(&partial);
    let method = match outcome.method {
        CompletionMethod::Chordal => "Chordal",
        CompletionMethod::Projection => "Projection",
    };
    let (result, verdict) = match &outcome.status {
        CompletionStatus::Completable(witness) => {
            let witness_json = matio::sym_to_json(witness);
            let written = match output {
                Some(path) => {
                    let mut text =
                        serde_json::to_string_pretty(&witness_json).expect("serializable");
                    text.push('\n');
                    std::fs::write(path, text).with_context(|| {
                        format!("cannot write witness to {}", path.display())
                    })?;
                    Value::String(path.display().to_string())
                }
                None => Value::Null,
            };
            (
                json!({
                    "status": "Completable",
                    "method": method,
                    "witness": witness_json,
                    "written": written,
                }),
                Verdict::Definitive,
            )
        }
        CompletionStatus::Infeasible(cert) => (
            json!({
                "status": "Infeasible",
                "method": method,
                "certificate": {
                    "indices": cert.indices,
                    "block": matio::sym_to_json(&cert.block),
                },
            }),
            Verdict::Definitive,
        ),
        CompletionStatus::Unknown => (
            json!({ "status": "Unknown", "method": method }),
            Verdict::GaveUp,
        ),
    };
    Ok(Output {
        command: "complete",
        config: obj(json!({
            "in": input.display().to_string(),
            "out": output.map(|p| p.display().to_string()),
        })),
        result,
        verdict,
        table: None,
    })
}

pub fn cube_pd(n: usize, values: &str) -> Result<Output> {
    let list = parse_rat_list(values).context("invalid --values list")?;
    let f = CubeFunction::new(n, list)?;
    let (pd, expansion) = is_pd_on_cube(&f);
    Ok(Output {
        command: "cube-pd",
        config: obj(json!({
            "n": n,
            "values": rat_text(f.values()),
        })),
        result: json!({
            "n": n,
            "pd": pd,
            "coefficients": rat_list(expansion.coefficients()),
        }),
        verdict: Verdict::Definitive,
        table: None,
    })
}

fn limit_row(j: usize, u: &Rat, n: usize) -> Result<(Value, Vec<String>)> {
    let probe = limit_probe(j, u, n)?;
    let envelope = Rat::new(Int::from(10), Int::from(n));
    let within = probe.error <= envelope;
    let row = vec![
        n.to_string(),
        probe.distance.to_string(),
        rat_to_string(&probe.scaled),
        rat_to_string(&probe.error),
        rat_to_string(&envelope),
    ];
    let value = json!({
        "n": n,
        "distance": probe.distance,
        "scaled": rat_str(&probe.scaled),
        "error": rat_str(&probe.error),
        "envelope": rat_str(&envelope),
        "within_envelope": within,
    });
    Ok((value, row))
}

pub fn kraw_limit(j: usize, u: &str, n: usize, sweep: bool) -> Result<Output> {
    let uv = parse_rat(u).context("invalid --u")?;
    let config = obj(json!({
        "j": j,
        "u": rat_to_string(&uv),
        "n": n,
        "sweep": sweep,
    }));
    if !sweep {
        let (value, _) = limit_row(j, &uv, n)?;
        let mut result = obj(value);
        result.insert("j".into(), json!(j));
        result.insert("u".into(), rat_str(&uv));
        return Ok(Output {
            command: "kraw-limit",
            config,
            result: Value::Object(result),
            verdict: Verdict::Definitive,
            table: None,
        });
    }
    if n < 100 {
        bail!("--sweep needs --n of at least 100");
    }
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let mut size = 100;
    while size <= n {
        let (value, row) = limit_row(j, &uv, size)?;
        rows.push(value);
        cells.push(row);
        size *= 2;
    }
    Ok(Output {
        command: "kraw-limit",
        config,
        result: json!({
            "j": j,
            "u": rat_str(&uv),
            "rows": rows,
        }),
        verdict: Verdict::Definitive,
        table: Some(Table {
            header: vec!["n", "distance", "scaled", "error", "envelope"],
            rows: cells,
        }),
    })
}

/// Restriction of the normalized degree-k member to the points.
fn restriction(family: &OrthoFamily, k: usize, points: &[Rat]) -> Result<Vec<Rat>> {
    Ok(points
        .iter()
        .map(|x| family.normalized_value(k, x))
        .collect::<Result<Vec<_>, _>>()?)
}

pub fn cone(dim: usize, points: &str, target: &str, gens: &str) -> Result<Output> {
    let pts = parse_rat_list(points).context("invalid --points list")?;
    let family = OrthoFamily::gegenbauer(dim)?;
    let n_gens: usize = gens
        .strip_prefix("auto:")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| anyhow!("--gens must look like auto:N"))?;
    let target_values = match target.strip_prefix("deg:") {
        Some(rest) => {
            let k: usize = rest.parse().context("invalid --target degree")?;
            restriction(&family, k, &pts)?
        }
        None => parse_rat_list(target).context("invalid --target list")?,
    };
    let target_fn = FiniteFunction::new(pts.clone(), target_values)?;
    let generators: Vec<FiniteFunction> = (0..=n_gens)
        .map(|k| -> Result<FiniteFunction> {
            let values = restriction(&family, k, &pts)?;
            Ok(FiniteFunction::new(pts.clone(), values)?)
        })
        .collect::<Result<_>>()?;
    let (verdict_name, certificate_key, certificate) = match cone_membership(&target_fn, &generators)? {
        ConeVerdict::Member(lambda) => ("Member", "coefficients", rat_list(&lambda)),
        ConeVerdict::NotMember(y) => ("NotMember", "separating", rat_list(&y)),
    };
    let mut result = obj(json!({
        "dim": dim,
        "points": rat_list(target_fn.points()),
        "target": rat_list(target_fn.values()),
        "generators": n_gens + 1,
        "verdict": verdict_name,
    }));
    result.insert(certificate_key.into(), certificate);
    Ok(Output {
        command: "cone",
        config: obj(json!({
            "dim": dim,
            "points": rat_text(target_fn.points()),
            "target": target,
            "gens": format!("auto:{n_gens}"),
        })),
        result: Value::Object(result),
        verdict: Verdict::Definitive,
        table: None,
    })
}

pub fn fit_preserver(points: &str, values: &str, degree: usize) -> Result<Output> {
    let pts = parse_rat_list(points).context("invalid --points list")?;
    let vals = parse_rat_list(values).context("invalid --values list")?;
    let f = FiniteFunction::new(pts, vals)?;
    let result = match fit_preserver_form(&f, degree)? {
        FitVerdict::Member(form) => json!({
            "verdict": "Member",
            "a": rat_str(form.a()),
            "b": rat_str(form.b()),
            "c": rat_list(form.c()),
        }),
        FitVerdict::NotMember(y) => json!({
            "verdict": "NotMember",
            "separating": rat_list(&y),
        }),
    };
    Ok(Output {
        command: "fit-preserver",
        config: obj(json!({
            "points": rat_text(f.points()),
            "values": rat_text(f.values()),
            "degree": degree,
        })),
        result,
        verdict: Verdict::Definitive,
        table: None,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn fuzz(
    coeffs: &str,
    a: &str,
    b: &str,
    trials: usize,
    size: usize,
    seed: Option<u64>,
    negative_control: bool,
    st: &Settings,
) -> Result<Output> {
    let c = parse_rat_list(coeffs).context("invalid --coeffs list")?;
    let av = parse_rat(a).context("invalid --a")?;
    let bv = parse_rat(b).context("invalid --b")?;
    let form = if negative_control {
        PreserverForm::negative_control(av, bv, c)
    } else {
        PreserverForm::new(av, bv, c).context(
            "coefficients must be nonnegative; pass --negative-control to fuzz an invalid form",
        )?
    };
    let seed = st.seed(seed);
    let report = preserver_fuzz(&form, trials, size, seed);
    Ok(Output {
        command: "fuzz",
        config: obj(json!({
            "coeffs": rat_text(form.c()),
            "a": rat_to_string(form.a()),
            "b": rat_to_string(form.b()),
            "trials": trials,
            "size": size,
            "seed": seed,
            "negative_control": negative_control,
        })),
        result: json!({
            "trials": report.trials,
            "size": report.size,
            "seed": report.seed,
            "completable": report.completable,
            "unknown": report.unknown,
            "violations": report.violations,
        }),
        verdict: Verdict::Definitive,
        table: None,
    })
}
