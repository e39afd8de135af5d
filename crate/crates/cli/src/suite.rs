//! Seeded batches of verifications, run on a rayon pool and merged in
//! instance order. Instance `k` of a batch with seed `s` uses the child seed
//! `child_seed(s, k)`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Result};
use lefschetz_core::csm::{csm_chain, last_csm_check, theorem24_crosscheck, DEFAULT_RANDOM_CANDIDATES};
use lefschetz_core::harness::{
    mixed_algebra, random_form, verify_thm41, MinorGate, MixedKind, Record, Status, Thm31Family, Thm41Family,
    MAX_RETRIES,
};
use lefschetz_core::lefschetz::{compare_partitions, hilbert_partition, is_unimodal, jordan_type};
use lefschetz_core::sampling::{child_seed, stream_rng, Sampler, INSTANCE_COEFF_RANGE};
use lefschetz_core::{ArtinianAlgebra, FieldSpec, LinearForm, Poly};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::instance::Instance;
use crate::report::{self, join, parts, record_csv, record_json, record_line, thm31_echo, thm41_echo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteKind {
    /// Random `x_i^{d_i} l_i` instances passing the minor gate.
    Thm31,
    /// Random products of powers of linear forms.
    Thm41,
    /// `dual(h) ≽ J(×y)` for random `(A, y)`, `deg y ∈ {1, 2}`.
    JordanBound,
    /// Both sides of the central-simple-module equivalence on random
    /// complete intersections.
    Crosscheck,
    /// Structure of the central simple module chain for random `(A, z)`.
    Csm,
}

impl SuiteKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteKind::Thm31 => "thm31",
            SuiteKind::Thm41 => "thm41",
            SuiteKind::JordanBound => "jordan-bound",
            SuiteKind::Crosscheck => "crosscheck",
            SuiteKind::Csm => "csm",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub kind: SuiteKind,
    pub field: FieldSpec,
    pub count: usize,
    pub seed: u64,
    pub trials: usize,
    /// Instance coefficients in `[−r, r]`.
    pub coeff_range: i64,
    pub gate: MinorGate,
    /// Variable counts to draw from; the family default when empty.
    pub nvars: Vec<usize>,
    /// Largest generator degree for the two families.
    pub max_degree: Option<usize>,
    /// Largest `dim A` for the mixed draws.
    pub max_dim: usize,
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(kind: SuiteKind, field: FieldSpec, count: usize, seed: u64) -> Self {
        SuiteConfig {
            kind,
            field,
            count,
            seed,
            trials: 3,
            coeff_range: INSTANCE_COEFF_RANGE,
            gate: MinorGate::default(),
            nvars: Vec::new(),
            max_degree: None,
            max_dim: 60,
            timing: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub index: usize,
    pub seed: u64,
    pub status: Status,
    pub line: String,
    pub json: Value,
    pub csv: Vec<String>,
    pub elapsed: Duration,
    /// For the two families.
    pub record: Option<Record>,
    /// Everything needed to replay a hard failure.
    pub dump: Option<Value>,
    pub warnings: Vec<String>,
}

pub fn csv_header(kind: SuiteKind, timing: bool) -> Vec<String> {
    let mut h: Vec<String> = vec!["index".into(), "seed".into()];
    match kind {
        SuiteKind::Thm31 | SuiteKind::Thm41 => h.extend(report::RECORD_CSV_HEADER.iter().map(|s| s.to_string())),
        SuiteKind::JordanBound => h.extend(
            ["kind", "hilbert_function", "y", "jordan_type", "dual_of_hilbert", "holds", "status"].map(String::from),
        ),
        SuiteKind::Crosscheck => h.extend(
            ["kind", "hilbert_function", "algebra_side", "csm_side", "z", "candidates_tried", "status"]
                .map(String::from),
        ),
        SuiteKind::Csm => h.extend(
            ["kind", "hilbert_function", "z", "p", "q", "s", "module_hilbert_functions", "checks", "status"]
                .map(String::from),
        ),
    }
    if timing {
        h.push("elapsed_ms".into());
    }
    h
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<Outcome> {
    (0..cfg.count).into_par_iter().map(|k| run_one(cfg, k)).collect()
}

pub fn run_one(cfg: &SuiteConfig, index: usize) -> Outcome {
    let seed = child_seed(cfg.seed, index as u64);
    let start = Instant::now();
    let result = match cfg.kind {
        SuiteKind::Thm31 => thm31(cfg, seed),
        SuiteKind::Thm41 => thm41(cfg, seed),
        SuiteKind::JordanBound => jordan_bound(cfg, seed, index),
        SuiteKind::Crosscheck => crosscheck(cfg, seed),
        SuiteKind::Csm => csm(cfg, seed, index),
    };
    let elapsed = start.elapsed();
    let mut out = result.unwrap_or_else(|e| Partial {
        status: Status::HardFail,
        line: format!("{:<13} error: {e}", Status::HardFail.as_str()),
        json: json!({"status": Status::HardFail.as_str(), "error": e.to_string()}),
        csv: Vec::new(),
        record: None,
        dump: Some(json!({"suite": cfg.kind.as_str(), "seed": seed, "error": e.to_string()})),
        warnings: Vec::new(),
    });
    let ms = elapsed.as_secs_f64() * 1e3;
    let mut csv = vec![index.to_string(), seed.to_string()];
    if out.csv.is_empty() {
        out.csv = vec![String::new(); csv_header(cfg.kind, false).len() - 2];
        if let Some(last) = out.csv.last_mut() {
            *last = out.status.as_str().into();
        }
    }
    csv.append(&mut out.csv);
    let mut line = format!("#{index:<4} seed={seed:<20} {}", out.line);
    out.json["index"] = json!(index);
    out.json["seed"] = json!(seed);
    if cfg.timing {
        csv.push(format!("{ms:.1}"));
        line += &format!(" [{ms:.0} ms]");
        out.json["elapsed_ms"] = json!(ms);
    }
    Outcome {
        index,
        seed,
        status: out.status,
        line,
        json: out.json,
        csv,
        elapsed,
        record: out.record,
        dump: out.dump,
        warnings: out.warnings,
    }
}

struct Partial {
    status: Status,
    line: String,
    json: Value,
    csv: Vec<String>,
    record: Option<Record>,
    dump: Option<Value>,
    warnings: Vec<String>,
}

fn from_record(record: Record, echo: Value) -> Partial {
    let status = record.status();
    let dump = (status == Status::HardFail).then(|| {
        json!({
            "instance": echo,
            "replay": report::replay_file(&record),
            "seed": record.seed,
            "trials": record.trials,
        })
    });
    Partial {
        status,
        line: record_line(&record),
        json: record_json(&record, Some(&echo), None),
        csv: record_csv(&record),
        warnings: record.warnings.clone(),
        record: Some(record),
        dump,
    }
}

fn thm31(cfg: &SuiteConfig, seed: u64) -> Result<Partial> {
    let mut family = Thm31Family::new(cfg.field);
    family.coeff_range = cfg.coeff_range;
    family.gate = cfg.gate;
    if !cfg.nvars.is_empty() {
        family.nvars = cfg.nvars.clone();
    }
    if let Some(d) = cfg.max_degree {
        family.max_degree = d;
    }
    let (inst, _) = family.draw(seed)?;
    let record = family.verify(seed, cfg.trials)?;
    Ok(from_record(record, thm31_echo(&inst)))
}

fn thm41(cfg: &SuiteConfig, seed: u64) -> Result<Partial> {
    let mut family = Thm41Family::new(cfg.field);
    family.coeff_range = cfg.coeff_range;
    if !cfg.nvars.is_empty() {
        family.nvars = cfg.nvars.clone();
    }
    if let Some(d) = cfg.max_degree {
        family.max_degree = d;
    }
    let inst = family.draw(seed)?;
    let record = verify_thm41(&inst, cfg.trials, child_seed(seed, 2))?;
    Ok(from_record(record, thm41_echo(&inst)))
}

fn algebra_echo(a: &ArtinianAlgebra) -> Value {
    let file = Instance {
        nvars: a.nvars(),
        field: a.field(),
        polys: a.generators().to_vec(),
        factored: None,
    }
    .to_file();
    serde_json::to_value(file).expect("plain data")
}

/// A mixed draw whose Hilbert function is unimodal.
fn unimodal_algebra(cfg: &SuiteConfig, seed: u64) -> Result<(MixedKind, ArtinianAlgebra)> {
    for attempt in 0..MAX_RETRIES as u64 {
        let (kind, a) = mixed_algebra(cfg.field, child_seed(seed, attempt), cfg.max_dim, false)?;
        if is_unimodal(&a.hilbert_function()) {
            return Ok((kind, a));
        }
    }
    Err(anyhow!("no unimodal algebra after {MAX_RETRIES} draws"))
}

/// Every fourth `y` is the degenerate `x_1^k`.
fn jordan_bound(cfg: &SuiteConfig, seed: u64, index: usize) -> Result<Partial> {
    let (kind, a) = unimodal_algebra(cfg, child_seed(seed, 0))?;
    let mut rng = stream_rng(child_seed(seed, 1), 0);
    let degree = rng.gen_range(1..=2usize);
    let y = if index.is_multiple_of(4) {
        Poly::variable(a.nvars(), a.field(), 0).pow(degree as u32)
    } else {
        random_form(a.nvars(), degree, &Sampler::symmetric(a.field(), 5), &mut rng)
    };
    let h = a.hilbert_function();
    let jordan = jordan_type(&a, &y)?;
    let dual = hilbert_partition(&h).dual();
    let holds = compare_partitions(&dual, &jordan)?.is_ge();
    let status = if holds { Status::Pass } else { Status::HardFail };
    let echo = algebra_echo(&a);
    Ok(Partial {
        status,
        line: format!(
            "{:<13} {} h=[{}] y={} J={} dual={}",
            status.as_str(),
            kind.as_str(),
            join(&h, ","),
            y,
            jordan,
            dual
        ),
        json: json!({
            "status": status.as_str(),
            "kind": kind.as_str(),
            "instance": echo,
            "hilbert_function": h,
            "y": y.to_string(),
            "jordan_type": parts(&jordan),
            "dual_of_hilbert": parts(&dual),
            "holds": holds,
        }),
        csv: vec![
            kind.as_str().into(),
            join(&h, " "),
            y.to_string(),
            join(jordan.parts(), " "),
            join(dual.parts(), " "),
            holds.to_string(),
            status.as_str().into(),
        ],
        record: None,
        dump: (!holds).then(|| json!({"instance": echo, "y": y.to_string()})),
        warnings: Vec::new(),
    })
}

fn crosscheck(cfg: &SuiteConfig, seed: u64) -> Result<Partial> {
    let (kind, a) = mixed_algebra(cfg.field, child_seed(seed, 0), cfg.max_dim, true)?;
    let a = Arc::new(a);
    let sampler = Sampler::for_search(cfg.field);
    let r = theorem24_crosscheck(&a, cfg.trials, child_seed(seed, 1), &sampler, DEFAULT_RANDOM_CANDIDATES)?;
    let (alg, mods) = (r.algebra_side(), r.csm_side());
    let mut warnings = Vec::new();
    let status = if alg && mods {
        Status::Pass
    } else {
        warnings.push(if alg == mods {
            "no witness found on either side".to_string()
        } else {
            format!("sides disagree: algebra {alg}, modules {mods} (a missing witness is not a disproof)")
        });
        Status::NotCertified
    };
    let z = r.csm_witness.as_ref().map(|w| w.z.to_string());
    let h = r.hilbert_function.clone();
    let mut line = format!(
        "{:<13} {} h=[{}] algebra={alg} modules={mods}",
        status.as_str(),
        kind.as_str(),
        join(&h, ",")
    );
    if let Some(z) = &z {
        line += &format!(" z={z}");
    }
    for w in &warnings {
        line += &format!("\n    WARN {w}");
    }
    Ok(Partial {
        status,
        line,
        json: json!({
            "status": status.as_str(),
            "kind": kind.as_str(),
            "instance": algebra_echo(&a),
            "hilbert_function": h,
            "algebra_side": alg,
            "algebra_element": r.algebra_witness.as_ref().map(|w| w.element.to_string()),
            "csm_side": mods,
            "z": z,
            "module_hilbert_functions": r.csm_witness.as_ref().map(|w| w.modules.iter().map(|m| m.hilbert_function.clone()).collect::<Vec<_>>()),
            "candidates_tried": r.candidates_tried,
            "agree": r.agree(),
            "warnings": warnings,
        }),
        csv: vec![
            kind.as_str().into(),
            join(&h, " "),
            alg.to_string(),
            mods.to_string(),
            z.unwrap_or_default(),
            r.candidates_tried.to_string(),
            status.as_str().into(),
        ],
        record: None,
        dump: None,
        warnings,
    })
}

fn trim(h: &[usize]) -> Vec<usize> {
    let end = h.iter().rposition(|&x| x > 0).map_or(0, |e| e + 1);
    h[..end].to_vec()
}

/// Telescoping, the last module, the single-module case and the chain of
/// the reduced algebra. Every fourth `z` is `x_1`.
fn csm(cfg: &SuiteConfig, seed: u64, index: usize) -> Result<Partial> {
    let (kind, a) = mixed_algebra(cfg.field, child_seed(seed, 0), cfg.max_dim, false)?;
    let a = Arc::new(a);
    let z = if index.is_multiple_of(4) {
        LinearForm::variable(a.nvars(), a.field(), 0)
    } else {
        Sampler::symmetric(a.field(), 5).linear_form(a.nvars(), &mut stream_rng(child_seed(seed, 1), 0))
    };
    let chain = csm_chain(&a, &z)?;
    let hfs = chain.module_hilbert_functions();
    let mut checks: Vec<(&str, bool)> = vec![("telescopes", chain.telescopes()), ("last_csm", last_csm_check(&chain)?)];
    if chain.colon(chain.q()).is_whole() {
        let cokernel: Vec<usize> = a
            .hilbert_function()
            .iter()
            .zip(chain.principal().dims())
            .map(|(h, i)| h - i)
            .collect();
        checks.push(("single_module", chain.s() == 1 && hfs[0] == cokernel));
    }
    if chain.s() > 1 {
        let reduced = chain.reduced_chain()?;
        let rebuilt: Vec<Vec<usize>> = reduced.module_hilbert_functions().iter().map(|h| trim(h)).collect();
        let upper: Vec<Vec<usize>> = hfs[..chain.s() - 1].iter().map(|h| trim(h)).collect();
        checks.push(("reduced_chain", rebuilt == upper));
    }
    let ok = checks.iter().all(|c| c.1);
    let status = if ok { Status::Pass } else { Status::HardFail };
    let h = a.hilbert_function();
    let echo = algebra_echo(&a);
    let check_text = checks
        .iter()
        .map(|(name, v)| format!("{name}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Partial {
        status,
        line: format!(
            "{:<13} {} h=[{}] z={} p={} q={} s={} {check_text}",
            status.as_str(),
            kind.as_str(),
            join(&h, ","),
            z,
            chain.p(),
            chain.q(),
            chain.s()
        ),
        json: json!({
            "status": status.as_str(),
            "kind": kind.as_str(),
            "instance": echo,
            "hilbert_function": h,
            "z": z.to_string(),
            "p": chain.p(),
            "q": chain.q(),
            "s": chain.s(),
            "module_hilbert_functions": hfs,
            "checks": checks.iter().map(|(n, v)| ((*n).to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        }),
        csv: vec![
            kind.as_str().into(),
            join(&h, " "),
            z.to_string(),
            chain.p().to_string(),
            chain.q().to_string(),
            chain.s().to_string(),
            hfs.iter().map(|h| join(h, " ")).collect::<Vec<_>>().join(" | "),
            check_text,
            status.as_str().into(),
        ],
        record: None,
        dump: (!ok).then(|| json!({"instance": echo, "z": z.to_string()})),
        warnings: Vec::new(),
    })
}

/// Counts by status, and for the second family how often `L_11` itself was
/// a strong Lefschetz element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub rejected: usize,
    pub not_certified: usize,
    pub hard_fail: usize,
    pub l11_strong_lefschetz: Option<usize>,
}

impl Summary {
    pub fn of(kind: SuiteKind, outcomes: &[Outcome]) -> Self {
        let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
        let l11 = (kind == SuiteKind::Thm41).then(|| {
            outcomes
                .iter()
                .filter_map(|o| o.record.as_ref())
                .filter(|r| r.factor_profiles.first().is_some_and(|f| f.strong_lefschetz))
                .count()
        });
        Summary {
            total: outcomes.len(),
            pass: count(Status::Pass),
            rejected: count(Status::Rejected),
            not_certified: count(Status::NotCertified),
            hard_fail: count(Status::HardFail),
            l11_strong_lefschetz: l11,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total,
            "pass": self.pass,
            "rejected": self.rejected,
            "not_certified": self.not_certified,
            "hard_fail": self.hard_fail,
            "l11_strong_lefschetz": self.l11_strong_lefschetz,
        })
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "summary: {} instances, {} pass, {} rejected, {} not certified, {} FAIL",
            self.total, self.pass, self.rejected, self.not_certified, self.hard_fail
        )];
        if let Some(k) = self.l11_strong_lefschetz {
            let line = format!("L_11 strong Lefschetz on {k}/{}", self.total);
            // generic behaviour would give (nearly) all
            out.push(if 10 * k < 9 * self.total { format!("WARN {line}") } else { line });
        }
        out
    }
}
