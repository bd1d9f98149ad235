//! Subcommand implementations.

use std::path::Path;

use mosaic_core::designs::{verify_resolution, Certificate, IncidenceStructure};
use mosaic_core::families::{Family, FamilyKind, FamilySpec};
use mosaic_core::hashprops::{
    check_regular_gdd_uhf, collision_spectrum, color_array, hash_report, oa_check, stinson_floor,
};
use mosaic_core::mosaics::{check_block_rate_optimal, materialize, verify_mosaic, Mosaic, MosaicHeader};
use mosaic_core::security::{
    divergence_comparison, entropy_comparison, max_discrepancy, pa_report, prop41_check, prop42_check, wiretap_report,
    BoundParams, Channel, JointXZ, DOMINATION_TOL,
};
use mosaic_core::simkit::{pa_roundtrip, wiretap_roundtrip, Prior, SimConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::{ExactArgs, ExactCheck, FamilyArg, FamilyArgs, FamilyOnly, GenArgs, SecurityArgs, VerifyArgs};
use crate::output::{emit, envelope, Failure};

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

fn family_spec(a: &FamilyArgs) -> Result<FamilySpec, Failure> {
    let family = match a.family.ok_or_else(|| invalid("--family is required"))? {
        FamilyArg::M1 => FamilyKind::M1,
        FamilyArg::M2 => FamilyKind::M2,
        FamilyArg::M3 => FamilyKind::M3,
        FamilyArg::M4 => FamilyKind::M4,
    };
    Ok(FamilySpec { family, t: a.t, l: a.l, q: a.q, k: a.k, u: a.u })
}

fn build(a: &FamilyArgs) -> Result<(FamilySpec, Family), Failure> {
    let spec = family_spec(a)?;
    let fam = Family::build(&spec)?;
    Ok((spec, fam))
}

/// Block indices `i·a … (i+1)·a − 1`, when they resolve every member.
fn consecutive_resolution(m: &Mosaic) -> Option<Vec<Vec<usize>>> {
    let (a, b) = (m.a(), m.b());
    if b % a != 0 {
        return None;
    }
    let classes: Vec<Vec<usize>> = (0..b / a).map(|i| (i * a..(i + 1) * a).collect()).collect();
    m.members().iter().all(|d| verify_resolution(d, &classes).is_ok()).then_some(classes)
}

#[derive(Serialize, Deserialize)]
struct MosaicFile {
    header: MosaicHeader,
    certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    resolution: Option<Vec<Vec<usize>>>,
}

pub fn gen(args: &GenArgs) -> Result<(), Failure> {
    let (spec, fam) = build(&args.family)?;
    let mosaic = materialize(fam.form())?;
    let file = MosaicFile {
        header: fam.header(&spec),
        certificate: fam.certificate(),
        resolution: consecutive_resolution(&mosaic),
    };
    let doc = envelope("gen", &spec, &[], &file)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        for (alpha, d) in mosaic.members().iter().enumerate() {
            std::fs::write(dir.join(format!("member_{alpha}.csv")), d.to_csv())?;
        }
        emit(&doc, Some(&dir.join("mosaic.json")))?;
    }
    emit(&doc, None)
}

#[derive(Serialize)]
struct VerifyOutcome {
    ok: bool,
    checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<serde_json::Value>,
}

fn load_dir(dir: &Path) -> Result<(MosaicFile, Vec<IncidenceStructure>, Vec<u8>), Failure> {
    let raw = std::fs::read(dir.join("mosaic.json"))?;
    let doc: serde_json::Value = serde_json::from_slice(&raw)?;
    let file: MosaicFile = serde_json::from_value(doc.get("result").cloned().unwrap_or(doc))?;
    let mut bytes = raw;
    let mut members = Vec::with_capacity(file.header.a);
    for alpha in 0..file.header.a {
        let text = std::fs::read_to_string(dir.join(format!("member_{alpha}.csv")))?;
        members.push(IncidenceStructure::from_csv(&text)?);
        bytes.extend_from_slice(text.as_bytes());
    }
    Ok((file, members, bytes))
}

fn run_checks(file: &MosaicFile, members: Vec<IncidenceStructure>, checks: &mut Vec<String>) -> Result<(), Failure> {
    let h = &file.header;
    let mosaic = Mosaic::from_members(members)?;
    if (mosaic.v(), mosaic.b(), mosaic.a()) != (h.v, h.b, h.a) {
        return Err(Failure::Property {
            message: "header disagrees with member matrices".into(),
            witness: json!({ "header": [h.v, h.b, h.a], "matrices": [mosaic.v(), mosaic.b(), mosaic.a()] }),
        });
    }
    checks.push("header".into());
    verify_mosaic(&mosaic).map_err(mosaic_core::Error::from)?;
    checks.push("mosaic".into());
    for (alpha, d) in mosaic.members().iter().enumerate() {
        file.certificate.verify(d).map_err(|v| Failure::Property {
            message: format!("member {alpha}: {v}"),
            witness: json!({ "member": alpha, "violation": v }),
        })?;
    }
    checks.push("certificate".into());
    if let Some(classes) = &file.resolution {
        for (alpha, d) in mosaic.members().iter().enumerate() {
            verify_resolution(d, classes).map_err(|v| Failure::Property {
                message: format!("member {alpha}: {v}"),
                witness: json!({ "member": alpha, "violation": v }),
            })?;
        }
        checks.push("resolution".into());
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let (file, members, bytes, params) = match &args.input {
        Some(dir) => {
            let (file, members, bytes) = load_dir(dir)?;
            (file, members, bytes, json!({ "input": dir }))
        }
        None => {
            let (spec, fam) = build(&args.family)?;
            let mosaic = materialize(fam.form())?;
            let file = MosaicFile {
                header: fam.header(&spec),
                certificate: fam.certificate(),
                resolution: consecutive_resolution(&mosaic),
            };
            (file, mosaic.members().to_vec(), Vec::new(), serde_json::to_value(&spec)?)
        }
    };
    let mut checks = Vec::new();
    let outcome = run_checks(&file, members, &mut checks);
    let result = VerifyOutcome {
        ok: outcome.is_ok(),
        checks,
        failure: outcome.as_ref().err().map(|f| serde_json::from_str(&f.to_json()).unwrap_or_default()),
    };
    emit(&envelope("verify", &params, &[&bytes], &result)?, args.out.as_deref())?;
    outcome
}

pub fn rates(args: &FamilyOnly) -> Result<(), Failure> {
    let (spec, fam) = build(&args.family)?;
    let f = fam.form();
    let certs = vec![fam.certificate(); f.colors()];
    let report = check_block_rate_optimal(f.points(), f.blocks(), f.colors(), &certs)?;
    emit(&envelope("rates", &spec, &[], &report)?, args.out.as_deref())
}

fn parse_floats(list: &str) -> Result<Vec<f64>, Failure> {
    list.split(',').map(|s| s.trim().parse::<f64>().map_err(|e| invalid(format!("{s:?}: {e}")))).collect()
}

fn parse_count(s: &str) -> Result<usize, Failure> {
    s.parse().map_err(|e| invalid(format!("{s:?}: {e}")))
}

/// Channel on `v` inputs from a spec string; file contents are returned for hashing.
fn parse_channel(spec: &str, v: usize, rng: &mut ChaCha8Rng) -> Result<(Channel, Vec<u8>), Failure> {
    let (kind, arg) = spec.split_once(':').map_or((spec, None), |(k, a)| (k, Some(a)));
    let w = match (kind, arg) {
        ("identity", None) => Channel::identity(v),
        ("symmetric", Some(p)) => Channel::symmetric(v, p.parse().map_err(|e| invalid(format!("{p:?}: {e}")))?)?,
        ("constant", None) => Channel::constant(v, &[0.5, 0.5])?,
        ("constant", Some(q)) => Channel::constant(v, &parse_floats(q)?)?,
        ("random", None) => Channel::random(v, v, 0.0, rng),
        ("random", Some(n)) => Channel::random(v, parse_count(n)?, 0.0, rng),
        ("file", Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let w = Channel::from_csv(&text)?;
            if w.inputs() != v {
                return Err(invalid(format!("channel file has {} rows, mosaic has {v} points", w.inputs())));
            }
            return Ok((w, text.into_bytes()));
        }
        _ => return Err(invalid(format!("unrecognised channel spec {spec:?}"))),
    };
    Ok((w, Vec::new()))
}

fn parse_source(spec: &str, channel: &str, v: usize, rng: &mut ChaCha8Rng) -> Result<(JointXZ, Vec<u8>), Failure> {
    let (kind, arg) = spec.split_once(':').map_or((spec, None), |(k, a)| (k, Some(a)));
    let j = match (kind, arg) {
        ("uniform", n) => {
            let nz = n.map(parse_count).transpose()?.unwrap_or(2);
            JointXZ::new(vec![vec![1.0 / (v * nz) as f64; nz]; v])?
        }
        ("random", None) => JointXZ::random(v, v, 0.0, rng),
        ("random", Some(n)) => JointXZ::random(v, parse_count(n)?, 0.0, rng),
        ("channel", None) => {
            let (w, bytes) = parse_channel(channel, v, rng)?;
            return Ok((JointXZ::from_channel(&vec![1.0 / v as f64; v], &w)?, bytes));
        }
        ("file", Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let j = JointXZ::from_csv(&text)?;
            if j.inputs() != v {
                return Err(invalid(format!("source file has {} rows, mosaic has {v} points", j.inputs())));
            }
            return Ok((j, text.into_bytes()));
        }
        _ => return Err(invalid(format!("unrecognised source spec {spec:?}"))),
    };
    Ok((j, Vec::new()))
}

fn parse_prior(spec: &str) -> Result<Prior, Failure> {
    match spec.split_once(':') {
        None if spec == "uniform" => Ok(Prior::Uniform),
        Some(("point", a)) => Ok(Prior::PointMass { alpha: parse_count(a)? }),
        Some(("custom", p)) => Ok(Prior::Custom { p: parse_floats(p)? }),
        _ => Err(invalid(format!("unrecognised prior {spec:?}"))),
    }
}

pub fn bounds(args: &SecurityArgs) -> Result<(), Failure> {
    let (spec, fam) = build(&args.family)?;
    let f = fam.form();
    let tol = args.tol.unwrap_or(DOMINATION_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (report, bytes) = if args.pa {
        let (pxz, bytes) = parse_source(&args.source, &args.channel, f.points(), &mut rng)?;
        (pa_report(f, &fam.certificate(), &pxz, tol)?, bytes)
    } else {
        let (w, bytes) = parse_channel(&args.channel, f.points(), &mut rng)?;
        let p_a = parse_prior(&args.prior)?.resolve(f.colors())?;
        (wiretap_report(f, &fam.certificate(), &w, &p_a, tol)?, bytes)
    };
    let params = json!({ "family": spec, "args": args });
    emit(&envelope("bounds", &params, &[&bytes], &report)?, args.out.as_deref())?;
    if !report.dominates {
        return Err(Failure::Property { message: "a bound is violated".into(), witness: json!(report.violations) });
    }
    Ok(())
}

#[derive(Serialize)]
struct ExactOutcome {
    check: ExactCheck,
    trials: u64,
    members: usize,
    max_discrepancy: f64,
    tol: f64,
    /// Sandwich only: inequality failures and equality conditions that did
    /// not produce equality.
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich_failures: Option<Vec<String>>,
    passed: bool,
}

pub fn exact(args: &ExactArgs) -> Result<(), Failure> {
    let (spec, fam) = build(&args.family)?;
    let f = fam.form();
    let v = f.points();
    let params = BoundParams::from_certificate(&fam.certificate())?;
    let mosaic = materialize(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    let mut bytes = Vec::new();
    for trial in 0..args.trials {
        match args.check {
            ExactCheck::Prop41 => {
                let (w, b) = parse_channel(&args.channel, v, &mut rng)?;
                bytes = b;
                for d in mosaic.members() {
                    worst = worst.max(prop41_check(d, &params, &w)?.discrepancy);
                }
            }
            ExactCheck::Prop42 => {
                let (pxz, b) = parse_source(&args.source, &args.channel, v, &mut rng)?;
                bytes = b;
                for d in mosaic.members() {
                    worst = worst.max(max_discrepancy(&prop42_check(d, &params, &pxz)?));
                }
            }
            ExactCheck::Sandwich => {
                let (w, _) = parse_channel(&args.channel, v, &mut rng)?;
                let s = divergence_comparison(&w, &params.partition, args.tol)?;
                if !(s.lower_holds && s.upper_holds)
                    || (s.lower_condition && !s.lower_equal)
                    || (s.upper_condition && !s.upper_equal)
                {
                    failures.push(format!("trial {trial}: channel {s:?}"));
                }
                let (pxz, _) = parse_source(&args.source, &args.channel, v, &mut rng)?;
                for e in entropy_comparison(&pxz, &params.partition, args.tol)? {
                    if !(e.lower_holds && e.upper_holds)
                        || (e.lower_condition && !e.lower_equal)
                        || (e.upper_condition && !e.upper_equal)
                    {
                        failures.push(format!("trial {trial}: source {e:?}"));
                    }
                }
            }
        }
    }
    let sandwich = args.check == ExactCheck::Sandwich;
    let passed = worst <= args.tol && failures.is_empty();
    let outcome = ExactOutcome {
        check: args.check,
        trials: args.trials,
        members: mosaic.a(),
        max_discrepancy: worst,
        tol: args.tol,
        sandwich_failures: sandwich.then(|| failures.clone()),
        passed,
    };
    let p = json!({ "family": spec, "args": args });
    emit(&envelope("exact", &p, &[&bytes], &outcome)?, args.out.as_deref())?;
    if !passed {
        return Err(Failure::Property {
            message: format!("{:?} check failed", args.check),
            witness: json!({ "max_discrepancy": worst, "failures": failures }),
        });
    }
    Ok(())
}

pub fn hashprops(args: &FamilyOnly) -> Result<(), Failure> {
    let (spec, fam) = build(&args.family)?;
    let f = fam.form();
    let report = hash_report(f);
    let spectrum = collision_spectrum(f);
    let oa = oa_check(&color_array(f), f.colors());
    let gdd = match fam.certificate() {
        Certificate::Gdd(p) => Some(check_regular_gdd_uhf(&p)),
        Certificate::Bibd(_) => None,
    };
    let result = json!({
        "report": report,
        "histogram": spectrum.histogram,
        "stinson_floor": stinson_floor(f.points(), f.colors()),
        "gdd_verdict": gdd,
        "orthogonal_array": oa,
    });
    emit(&envelope("hashprops", &spec, &[], &result)?, args.out.as_deref())
}

pub fn simulate(args: &SecurityArgs) -> Result<(), Failure> {
    let (spec, fam) = build(&args.family)?;
    let f = fam.form();
    let mut cfg = SimConfig::new(args.trials, args.seed);
    cfg.prior = parse_prior(&args.prior)?;
    if let Some(t) = args.tol {
        cfg.significance = t;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (result, bytes) = if args.pa {
        let (pxz, bytes) = parse_source(&args.source, &args.channel, f.points(), &mut rng)?;
        (pa_roundtrip(f, &pxz, &cfg)?, bytes)
    } else {
        let (w, bytes) = parse_channel(&args.channel, f.points(), &mut rng)?;
        (wiretap_roundtrip(f, &w, &cfg)?, bytes)
    };
    let params = json!({ "family": spec, "args": args });
    emit(&envelope("simulate", &params, &[&bytes], &result)?, args.out.as_deref())?;
    if !result.passed {
        return Err(Failure::Property {
            message: "simulation failed its checks".into(),
            witness: json!({
                "errors": result.errors,
                "joint_p_value": result.joint_test.p_value,
                "key_p_value": result.key_test.p_value,
            }),
        });
    }
    Ok(())
}
