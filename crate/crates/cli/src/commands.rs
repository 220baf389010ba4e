use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use fs_core::enumerate::{graded_dimensions, graded_dimensions_by_weight, CharacterRow};
use fs_core::fock::Fock;
use fs_core::lattice::{Lattice, SpinorLabel};
use fs_core::symcalc::{check_fock_consistency, check_successive_distinct, replay_level1, replay_level2_d4};
use fs_core::tensor::{decompose_top, default_pair, hw_vector_level2, solve_hw};
use fs_core::verify::{check_ic_identities, check_relations_level1, check_relations_level2, check_simple_current, span_report, CheckReport};
use fs_core::weights::{LevelOne, WeightSpec};

use crate::args::{DecomposeArgs, EnumerateArgs, Format, HwvArgs, Suite, VerifyArgs};
use crate::cache::{Cache, Entry};

const LEVEL2_RANK: &str = "level-2 verification requires rank 4";

/// One line of a verification report.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Row {
    pub suite: String,
    pub name: String,
    pub weight: Option<String>,
    pub degree: Option<i64>,
    pub checked: usize,
    pub failures: usize,
    pub pass: bool,
    pub report: Value,
}

fn check_row(suite: &str, weight: Option<WeightSpec>, r: CheckReport) -> Row {
    Row {
        suite: suite.into(),
        name: r.name.clone(),
        weight: weight.map(|w| w.to_string()),
        degree: None,
        checked: r.checked,
        failures: r.failures,
        pass: r.pass,
        report: serde_json::to_value(&r).expect("report serializes"),
    }
}

fn parse_weight(s: &str, rank: usize) -> Result<WeightSpec> {
    Ok(WeightSpec::parse(s, rank)?)
}

fn parse_pair(s: &str, rank: usize) -> Result<(LevelOne, LevelOne)> {
    let Some((a, b)) = s.split_once(',') else { bail!("--pair expects two weights like L4,L4") };
    let one = |t: &str| -> Result<LevelOne> {
        match WeightSpec::parse(t, rank)? {
            WeightSpec::Level1(a) => Ok(a),
            w => bail!("{w} is not a level-1 weight"),
        }
    };
    Ok((one(a)?, one(b)?))
}

fn lattice(rank: usize) -> Result<Lattice> {
    Ok(Lattice::new(rank)?)
}

fn emit(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn csv_body<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn json_body<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn enumerate(a: &EnumerateArgs, cache: &Cache) -> Result<bool> {
    let w = parse_weight(&a.weight, a.rank)?;
    if matches!(w, WeightSpec::Fundamental(_)) && a.rank != 4 {
        bail!(fs_core::Error::Unsupported(LEVEL2_RANK.into()));
    }
    let fmt = format!("{:?}", a.format);
    let key = Cache::key(&["enumerate", &a.rank.to_string(), &w.to_string(), &a.max_degree.to_string(), &a.by_weight.to_string(), &fmt]);
    let body = match cache.get(&key) {
        Some(e) => e.body,
        None => {
            let lat = lattice(a.rank)?;
            let rows: Vec<CharacterRow> = if a.by_weight {
                graded_dimensions_by_weight(w, a.max_degree, &lat)?
            } else {
                graded_dimensions(w, a.max_degree, &lat)?
            };
            let body = match a.format {
                Format::Csv => csv_body(&rows)?,
                Format::Json => json_body(&rows)?,
            };
            cache.put(&key, &Entry { pass: true, body: body.clone() });
            body
        }
    };
    emit(a.out.as_deref(), &body)?;
    Ok(true)
}

fn default_weights(rank: usize, level2: bool) -> Vec<WeightSpec> {
    let mut out: Vec<WeightSpec> = LevelOne::all(rank).into_iter().map(WeightSpec::Level1).collect();
    if level2 && rank == 4 {
        out.extend(WeightSpec::level2_all(&Lattice::new(rank).expect("rank 4 is valid")));
    }
    out
}

fn degrees(a: &VerifyArgs, default_max: u32) -> Vec<u32> {
    match a.degree {
        Some(n) => vec![n],
        None => (0..=a.max_degree.unwrap_or(default_max)).collect(),
    }
}

fn run_suite(suite: Suite, a: &VerifyArgs, fock: &Fock) -> Result<Vec<Row>> {
    let rank = a.rank;
    let chosen = a.weight.as_deref().map(|s| parse_weight(s, rank)).transpose()?;
    let weights = |level2: bool| chosen.map_or_else(|| default_weights(rank, level2), |w| vec![w]);
    let mut rows = Vec::new();
    match suite {
        Suite::Span => {
            let jobs: Vec<(WeightSpec, u32)> =
                weights(true).into_iter().flat_map(|w| degrees(a, 4).into_iter().map(move |n| (w, n))).collect();
            let reports = jobs.par_iter().map(|&(w, n)| span_report(fock, w, n)).collect::<Result<Vec<_>, _>>()?;
            for r in reports {
                rows.push(Row {
                    suite: "span".into(),
                    name: "span".into(),
                    weight: Some(r.weight.clone()),
                    degree: Some(-(r.degree as i64)),
                    checked: r.admissible_count,
                    failures: usize::from(!r.pass),
                    pass: r.pass,
                    report: serde_json::to_value(&r)?,
                });
            }
        }
        Suite::Relations => {
            let n = a.degree.or(a.max_degree).unwrap_or(6) as i64;
            rows.extend(check_relations_level1(fock, n).into_iter().map(|r| check_row("relations", None, r)));
            if rank == 4 {
                rows.extend(check_relations_level2(fock, n).into_iter().map(|r| check_row("relations", None, r)));
            }
        }
        Suite::Ic => {
            for w in weights(true) {
                rows.extend(check_ic_identities(fock, w)?.into_iter().map(|r| check_row("ic", Some(w), r)));
            }
        }
        Suite::Current => {
            let n = a.degree.or(a.max_degree).unwrap_or(6) as i64;
            rows.push(check_row("current", None, check_simple_current(fock, n)));
        }
        Suite::Replay => {
            let lat = fock.lattice();
            for w in weights(true) {
                let level1_max = if chosen.is_some() { 3 } else { 5 };
                let ns = match w {
                    WeightSpec::Level1(_) => degrees(a, level1_max),
                    _ => degrees(a, 3),
                };
                for n in ns {
                    let r = match w {
                        WeightSpec::Level1(l) => replay_level1(lat, l, n)?,
                        _ => replay_level2_d4(lat, w, n)?,
                    };
                    rows.push(Row {
                        suite: "replay".into(),
                        name: "replay".into(),
                        weight: Some(r.weight.clone()),
                        degree: Some(r.degree),
                        checked: r.checked,
                        failures: r.kill_failures + r.unsupported + r.residual_failures,
                        pass: r.pass,
                        report: serde_json::to_value(&r)?,
                    });
                }
            }
            if chosen.is_none() {
                if rank == 4 {
                    rows.push(check_row("replay", None, check_fock_consistency(fock)));
                }
                rows.push(check_row("replay", None, check_successive_distinct(lat)));
            }
        }
        Suite::All => {
            for s in [Suite::Span, Suite::Relations, Suite::Ic, Suite::Current, Suite::Replay] {
                rows.extend(run_suite(s, a, fock)?);
            }
        }
    }
    Ok(rows)
}

pub fn verify(a: &VerifyArgs, cache: &Cache) -> Result<bool> {
    if let Some(s) = &a.weight {
        if parse_weight(s, a.rank)?.level() == 2 && a.rank != 4 {
            bail!(fs_core::Error::Unsupported(LEVEL2_RANK.into()));
        }
    }
    let key = Cache::key(&[
        "verify",
        &format!("{:?}", a.suite),
        &a.rank.to_string(),
        a.weight.as_deref().unwrap_or("*"),
        &format!("{:?}/{:?}", a.degree, a.max_degree),
    ]);
    let rows: Vec<Row> = match cache.get(&key).and_then(|e| serde_json::from_str(&e.body).ok()) {
        Some(rows) => rows,
        None => {
            let fock = Fock::new(lattice(a.rank)?)?;
            let rows = run_suite(a.suite, a, &fock)?;
            let pass = rows.iter().all(|r| r.pass);
            cache.put(&key, &Entry { pass, body: serde_json::to_string(&rows)? });
            rows
        }
    };
    for r in &rows {
        let status = if r.pass { "PASS" } else { "FAIL" };
        let at = match (&r.weight, r.degree) {
            (Some(w), Some(d)) => format!(" {w} degree {d}"),
            (Some(w), None) => format!(" {w}"),
            _ => String::new(),
        };
        eprintln!("{status} {}: {}{at} ({} checked, {} failures)", r.suite, r.name, r.checked, r.failures);
    }
    let flat: Vec<_> = rows
        .iter()
        .map(|r| (r.suite.as_str(), r.name.as_str(), r.weight.as_deref(), r.degree, r.checked, r.failures, r.pass))
        .collect();
    if let Some(p) = &a.json {
        emit(Some(p), &json_body(&rows.iter().map(report_json).collect::<Vec<_>>())?)?;
    }
    if a.json.is_none() || a.out.is_some() {
        let body = match a.format {
            Format::Json => json_body(&rows.iter().map(report_json).collect::<Vec<_>>())?,
            Format::Csv => {
                let header = ["suite", "name", "weight", "degree", "checked", "failures", "pass"];
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header)?;
                for r in &flat {
                    w.serialize(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        };
        emit(a.out.as_deref(), &body)?;
    }
    Ok(rows.iter().all(|r| r.pass))
}

fn report_json(r: &Row) -> Value {
    let mut v = r.report.clone();
    if let Value::Object(m) = &mut v {
        m.insert("suite".into(), json!(r.suite));
    }
    v
}

pub fn hwv(a: &HwvArgs) -> Result<bool> {
    let w = parse_weight(&a.weight, a.rank)?;
    let fock = Fock::new(lattice(a.rank)?)?;
    let ell = a.rank;
    let (pair, v) = match (w, &a.pair) {
        (WeightSpec::Fundamental(j), p) => {
            if ell != 4 {
                bail!(fs_core::Error::Unsupported(LEVEL2_RANK.into()));
            }
            let pair = p.as_deref().map(|s| parse_pair(s, ell)).transpose()?.unwrap_or_else(|| default_pair(ell));
            (pair, solve_hw(&fock, j, pair)?)
        }
        (WeightSpec::Sum(x, y), _) => ((x, y), hw_vector_level2(&fock, w)?),
        (WeightSpec::Level1(_), _) => bail!("{w} is of level 1; hwv needs a level-2 weight"),
    };
    let support: Vec<Value> = v
        .terms()
        .map(|((l, r), c)| {
            let label = |e: &fs_core::fock::FockBasisElement| {
                SpinorLabel::from_weight(&e.lattice).map_or_else(|| format!("e^{}", e.lattice), |s| s.to_string())
            };
            json!({ "left": label(l), "right": label(r), "coefficient": c.to_string() })
        })
        .collect();
    let out = json!({
        "weight": w.to_string(),
        "pair": [pair.0.to_string(), pair.1.to_string()],
        "support": support,
    });
    emit(a.out.as_deref(), &json_body(&out)?)?;
    Ok(true)
}

pub fn decompose(a: &DecomposeArgs) -> Result<bool> {
    let pair = parse_pair(&a.pair, a.rank)?;
    let fock = Fock::new(lattice(a.rank)?)?;
    let d = decompose_top(&fock, pair)?;
    let out = json!({
        "rank": a.rank,
        "pair": [pair.0.to_string(), pair.1.to_string()],
        "decomposition": d,
    });
    emit(a.out.as_deref(), &json_body(&out)?)?;
    Ok(d.audit_ok)
}
