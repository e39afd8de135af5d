//! Rendering of verification records as JSON, CSV rows and text lines.

use lefschetz_core::harness::{MinorGate, Record, Status, Thm31Instance, Thm41Instance};
use lefschetz_core::lefschetz::{LefschetzReport, RankRecord};
use lefschetz_core::sampling::PRNG_DESCRIPTION;
use lefschetz_core::{FactoredGenerator, Partition};
use serde_json::{json, Value};

use crate::instance::{field_name, Instance, InstanceFile};

pub fn header(command: &str, seed: Option<u64>, trials: Option<usize>) -> Value {
    json!({
        "command": command,
        "prng": PRNG_DESCRIPTION,
        "seed": seed,
        "trials": trials,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

pub fn header_line(command: &str, seed: Option<u64>, trials: Option<usize>) -> String {
    let mut s = format!("# lefschetz {} {command}; prng: {PRNG_DESCRIPTION}", env!("CARGO_PKG_VERSION"));
    if let Some(seed) = seed {
        s += &format!("; seed {seed}");
    }
    if let Some(t) = trials {
        s += &format!("; trials {t}");
    }
    s
}

pub fn parts(p: &Partition) -> Vec<usize> {
    p.parts().to_vec()
}

pub fn thm31_echo(inst: &Thm31Instance) -> Value {
    let m = inst.matrix();
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect();
    json!({
        "n": inst.n(),
        "field": field_name(inst.field()),
        "degrees": inst.degrees(),
        "matrix": rows,
    })
}

pub fn thm41_echo(inst: &Thm41Instance) -> Value {
    let file = Instance {
        nvars: inst.n(),
        field: inst.field(),
        polys: inst.polys(),
        factored: Some(inst.generators()),
    }
    .to_file();
    let mut v = serde_json::to_value(file).expect("plain data");
    v["multiplicities"] = json!(inst.multiplicities());
    v["coefficient_seed"] = json!(inst.seed());
    v
}

/// Replayable instance file for the generators of `record`.
pub fn replay_file(record: &Record) -> InstanceFile {
    Instance {
        nvars: record.nvars,
        field: record.field,
        polys: record.generators.clone(),
        factored: None,
    }
    .to_file()
}

pub fn factored_strings(gens: &[FactoredGenerator]) -> Vec<String> {
    gens.iter().map(ToString::to_string).collect()
}

pub fn record_json(record: &Record, instance: Option<&Value>, elapsed_ms: Option<f64>) -> Value {
    let csm = record.csm.as_ref().map(|c| {
        json!({
            "z": c.z.to_string(),
            "p": c.p,
            "q": c.q,
            "s": c.hilbert_functions.len(),
            "hilbert_functions": c.hilbert_functions,
            "all_have_slp": c.all_have_slp,
            "telescopes": c.telescopes,
            "last_csm_check": c.last_csm_check,
        })
    });
    let profiles: Vec<Value> = record
        .factor_profiles
        .iter()
        .map(|f| json!({"i": f.i + 1, "j": f.j + 1, "strong_lefschetz": f.strong_lefschetz}))
        .collect();
    let mut v = json!({
        "status": record.status().as_str(),
        "family": record.family.as_str(),
        "field": field_name(record.field),
        "nvars": record.nvars,
        "generators": record.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "generator_degrees": record.generator_degrees,
        "gate": record.gate.map(MinorGate::as_str),
        "gate_passed": record.gate_passed,
        "ci_certificate": record.ci_certificate,
        "hilbert_function": record.hilbert_function,
        "verdict": record.verdict.map(|v| v.as_str()),
        "sl_element": record.sl_element.as_ref().map(ToString::to_string),
        "sl_trial": record.sl_trial,
        "jordan_type": record.jordan_type.as_ref().map(parts),
        "dual_of_hilbert": record.dual_of_hilbert.as_ref().map(parts),
        "csm": csm,
        "factor_profiles": profiles,
        "seed": record.seed,
        "trials": record.trials,
        "retries": record.retries,
        "warnings": record.warnings,
        "failures": record.failures,
    });
    if let Some(inst) = instance {
        v["instance"] = inst.clone();
    }
    if let Some(ms) = elapsed_ms {
        v["elapsed_ms"] = json!(ms);
    }
    v
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn opt_partition(p: &Option<Partition>) -> String {
    p.as_ref().map_or_else(String::new, |p| join(p.parts(), " "))
}

pub const RECORD_CSV_HEADER: [&str; 15] = [
    "family",
    "nvars",
    "generator_degrees",
    "hilbert_function",
    "status",
    "verdict",
    "jordan_type",
    "dual_of_hilbert",
    "csm_z",
    "csm_hilbert_functions",
    "csm_all_slp",
    "l11_slp",
    "retries",
    "warnings",
    "failures",
];

pub fn record_csv(record: &Record) -> Vec<String> {
    let (z, hfs, all) = match &record.csm {
        Some(c) => (
            c.z.to_string(),
            c.hilbert_functions.iter().map(|h| join(h, " ")).collect::<Vec<_>>().join(" | "),
            c.all_have_slp.to_string(),
        ),
        None => Default::default(),
    };
    vec![
        record.family.as_str().into(),
        record.nvars.to_string(),
        join(&record.generator_degrees, " "),
        join(&record.hilbert_function, " "),
        record.status().as_str().into(),
        record.verdict.map_or("", |v| v.as_str()).into(),
        opt_partition(&record.jordan_type),
        opt_partition(&record.dual_of_hilbert),
        z,
        hfs,
        all,
        record
            .factor_profiles
            .first()
            .map_or_else(String::new, |f| f.strong_lefschetz.to_string()),
        record.retries.to_string(),
        record.warnings.join("; "),
        record.failures.join("; "),
    ]
}

pub fn record_line(record: &Record) -> String {
    let mut s = format!(
        "{:<13} n={} deg=[{}] h=[{}]",
        record.status().as_str(),
        record.nvars,
        join(&record.generator_degrees, ","),
        join(&record.hilbert_function, ",")
    );
    if let Some(v) = record.verdict {
        s += &format!(" {v}");
    }
    if let Some(j) = &record.jordan_type {
        s += &format!(" J={j}");
    }
    if let Some(c) = &record.csm {
        s += &format!(" csm(z={}): s={} slp={}", c.z, c.hilbert_functions.len(), c.all_have_slp);
    }
    if let Some(f) = record.factor_profiles.first() {
        s += &format!(" L11_slp={}", f.strong_lefschetz);
    }
    if record.retries > 0 {
        s += &format!(" retries={}", record.retries);
    }
    for w in &record.warnings {
        s += &format!("\n    WARN {w}");
    }
    for f in &record.failures {
        s += &format!("\n    FAIL {f}");
    }
    s
}

pub fn rank_record_json(r: &RankRecord) -> Value {
    json!({
        "power": r.power,
        "degree": r.degree,
        "rank": r.rank,
        "source_dim": r.source_dim,
        "target_dim": r.target_dim,
        "full_rank": r.full_rank,
    })
}

/// `×z^2: A_0→A_2 rank 0 (expected 1)`
pub fn rank_record_text(r: &RankRecord, space: &str) -> String {
    format!(
        "×z^{}: {space}_{}→{space}_{} rank {} (expected {})",
        r.power,
        r.degree,
        r.degree + r.power,
        r.rank,
        r.source_dim.min(r.target_dim)
    )
}

pub fn lefschetz_json(r: &LefschetzReport) -> Value {
    json!({
        "element": r.element.to_string(),
        "hilbert_function": r.hilbert_function,
        "verdict": r.verdict.as_str(),
        "jordan_type": parts(&r.jordan_type),
        "dual_of_hilbert": parts(&r.dual_of_hilbert),
        "unimodal": r.unimodal,
        "criteria_agree": r.criteria_agree,
        "ranks": r.records.iter().map(rank_record_json).collect::<Vec<_>>(),
        "failing_maps": r.failures().map(rank_record_json).collect::<Vec<_>>(),
    })
}

/// Overall exit status of a batch: hard failures dominate, then searches
/// that found nothing.
pub fn exit_code<'a>(statuses: impl IntoIterator<Item = &'a Status>) -> i32 {
    let worst = statuses.into_iter().max_by_key(|s| match s {
        Status::Pass | Status::Rejected => 0,
        Status::NotCertified => 1,
        Status::HardFail => 2,
    });
    match worst {
        Some(Status::HardFail) => 1,
        Some(Status::NotCertified) => 3,
        _ => 0,
    }
}
