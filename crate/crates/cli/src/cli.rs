//! Command-line interface.
//!
//! Exit codes: 0 success (including gate rejections), 1 a deterministic
//! claim failed (the instance is dumped to stderr), 2 usage or input
//! errors, 3 a random search found no witness.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lefschetz_core::csm::{csm_chain, last_csm_check};
use lefschetz_core::graded::ideal_colon;
use lefschetz_core::harness::{
    build_thm41, random_thm31_matrix, verify_thm31, verify_thm41, MinorGate, Record, Status, Thm31Family,
    Thm31Instance, Thm41Instance,
};
use lefschetz_core::lefschetz::{
    certify_sl_element, compare_partitions, find_sl_element, hilbert_partition, is_unimodal, jordan_type,
};
use lefschetz_core::sampling::{child_seed, stream_rng, Sampler, INSTANCE_COEFF_RANGE};
use lefschetz_core::{ArtinianAlgebra, FieldSpec, LinearForm, Matrix, Verdict};
use serde_json::{json, Value};

use crate::instance::{field_name, parse_field, Instance};
use crate::parse::parse_poly;
use crate::report::{self, join, lefschetz_json, parts, rank_record_text, record_csv, record_json, record_line};
use crate::suite::{csv_header, run_suite, Summary, SuiteConfig, SuiteKind};

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Hilbert functions, Jordan types and Lefschetz properties of graded Artinian algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Coefficient field: q or fp:<prime>.
    #[arg(long, global = true, value_parser = field_arg)]
    pub field: Option<FieldSpec>,
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random candidates per Lefschetz search.
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    /// Number of variables (default: the largest index used).
    #[arg(long, global = true)]
    pub vars: Option<usize>,
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub csv: bool,
    /// Report wall-clock times (output is no longer byte-stable).
    #[arg(long, global = true)]
    pub timing: bool,
}

fn field_arg(s: &str) -> Result<FieldSpec, String> {
    parse_field(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct AlgebraInput {
    /// Generators, e.g. 'x1^2*(x1+2*x2)'.
    pub polys: Vec<String>,
    /// JSON instance file instead of generators.
    #[arg(long, short = 'i', conflicts_with = "polys")]
    pub instance: Option<PathBuf>,
    /// Degree up to which the quotient must vanish (default 1 + Σ(deg − 1)).
    #[arg(long)]
    pub degree_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    /// Require every principal minor to be nonzero (default).
    #[arg(long, conflicts_with = "leading_minors_only")]
    pub all_principal_minors: bool,
    /// Require only the leading principal minors to be nonzero.
    #[arg(long)]
    pub leading_minors_only: bool,
}

impl GateArgs {
    fn gate(&self) -> MinorGate {
        if self.leading_minors_only {
            MinorGate::Leading
        } else {
            MinorGate::AllPrincipal
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function of K[x]/(generators).
    Hilbert(AlgebraInput),
    /// Jordan type of multiplication by an element, against dual(h).
    Jordan {
        #[command(flatten)]
        input: AlgebraInput,
        /// Homogeneous element y.
        #[arg(long, short = 'y')]
        element: String,
    },
    /// Strong Lefschetz property: certify a given linear form or search.
    Slp {
        #[command(flatten)]
        input: AlgebraInput,
        /// Linear form to certify; without it random forms are tried.
        #[arg(long, short = 'z')]
        element: Option<String>,
    },
    /// Central simple modules of (A, z) and their Lefschetz properties.
    Csm {
        #[command(flatten)]
        input: AlgebraInput,
        /// Linear form z.
        #[arg(long, short = 'z')]
        z: String,
    },
    /// The colon ideal (0 : f).
    Colon {
        #[command(flatten)]
        input: AlgebraInput,
        #[arg(long, short = 'f')]
        f: String,
    },
    /// Ideals (x_i^{d_i} l_i): explicit with --degrees and --matrix, random otherwise.
    #[command(name = "verify-thm31")]
    VerifyThm31 {
        /// d_1,..,d_n.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        /// Rows of the coefficient matrix of l_1..l_n, e.g. "1,1;1,2".
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[command(flatten)]
        gate: GateArgs,
        /// Random entries in [−r, r].
        #[arg(long, default_value_t = INSTANCE_COEFF_RANGE)]
        coeff_range: i64,
    },
    /// Products of powers of linear forms: random forms with --multiplicities or a factored instance file.
    #[command(name = "verify-thm41")]
    VerifyThm41 {
        /// Exponents of each generator, generators separated by ';', e.g. "1,1;2".
        #[arg(long, conflicts_with = "instance")]
        multiplicities: Option<String>,
        /// Factored instance file.
        #[arg(long, short = 'i')]
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = INSTANCE_COEFF_RANGE)]
        coeff_range: i64,
    },
    /// Seeded batch of random checks.
    Suite {
        #[arg(value_enum)]
        kind: SuiteKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = INSTANCE_COEFF_RANGE)]
        coeff_range: i64,
        /// Variable counts to draw from, e.g. 2,3.
        #[arg(long, value_delimiter = ',')]
        nvars: Option<Vec<usize>>,
        /// Largest generator degree for thm31 and thm41.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Largest dim A for the other suites.
        #[arg(long, default_value_t = 60)]
        max_dim: usize,
        #[command(flatten)]
        gate: GateArgs,
    },
}

/// What a command produced, before choosing a format.
struct Output {
    command: &'static str,
    seed: Option<u64>,
    trials: Option<usize>,
    text: Vec<String>,
    json: Value,
    csv: Vec<Vec<String>>,
    code: i32,
    dumps: Vec<Value>,
}

impl Output {
    fn new(command: &'static str) -> Self {
        Output {
            command,
            seed: None,
            trials: None,
            text: Vec::new(),
            json: json!({}),
            csv: Vec::new(),
            code: 0,
            dumps: Vec::new(),
        }
    }
}

/// Runs the command line `args` and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut o) => {
            if cli.common.timing {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                o.json["elapsed_ms"] = json!(ms);
                o.text.push(format!("time {ms:.1} ms"));
            }
            if let Err(e) = emit(&cli.common, &o, out) {
                let _ = writeln!(err, "error: {e:#}");
                return 2;
            }
            for d in &o.dumps {
                let _ = writeln!(err, "replay instance:\n{}", serde_json::to_string_pretty(d).expect("json"));
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn emit(common: &Common, o: &Output, out: &mut dyn Write) -> Result<()> {
    if common.json {
        let mut v = json!({"header": report::header(o.command, o.seed, o.trials)});
        if let Value::Object(m) = &o.json {
            for (k, x) in m {
                v[k] = x.clone();
            }
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else if common.csv {
        let mut w = csv::Writer::from_writer(out);
        for row in &o.csv {
            w.write_record(row)?;
        }
        w.flush()?;
    } else {
        writeln!(out, "{}", report::header_line(o.command, o.seed, o.trials))?;
        for line in &o.text {
            writeln!(out, "{line}")?;
        }
    }
    Ok(())
}

fn field_of(common: &Common) -> FieldSpec {
    common.field.unwrap_or(FieldSpec::Rationals)
}

fn load(common: &Common, input: &AlgebraInput) -> Result<Instance> {
    match &input.instance {
        Some(path) => Instance::load(path, common.field, common.vars),
        None if input.polys.is_empty() => bail!("give generators or --instance"),
        None => Instance::from_poly_strings(&input.polys, field_of(common), common.vars),
    }
}

fn algebra(common: &Common, input: &AlgebraInput) -> Result<(Instance, Arc<ArtinianAlgebra>)> {
    let inst = load(common, input)?;
    let a = ArtinianAlgebra::build(inst.nvars, inst.field, inst.polys.clone(), input.degree_cap)?;
    Ok((inst, Arc::new(a)))
}

fn instance_json(inst: &Instance) -> Value {
    serde_json::to_value(inst.to_file()).expect("plain data")
}

fn tuple(h: &[usize]) -> String {
    format!("({})", join(h, ", "))
}

fn execute(cli: &Cli) -> Result<Output> {
    let c = &cli.common;
    match &cli.command {
        Command::Hilbert(input) => hilbert(c, input),
        Command::Jordan { input, element } => jordan(c, input, element),
        Command::Slp { input, element } => slp(c, input, element.as_deref()),
        Command::Csm { input, z } => csm(c, input, z),
        Command::Colon { input, f } => colon(c, input, f),
        Command::VerifyThm31 {
            degrees,
            matrix,
            gate,
            coeff_range,
        } => thm31(c, degrees.as_deref(), matrix.as_deref(), gate.gate(), *coeff_range),
        Command::VerifyThm41 {
            multiplicities,
            instance,
            coeff_range,
        } => thm41(c, multiplicities.as_deref(), instance.as_ref(), *coeff_range),
        Command::Suite {
            kind,
            count,
            coeff_range,
            nvars,
            max_degree,
            max_dim,
            gate,
        } => {
            let mut cfg = SuiteConfig::new(*kind, field_of(c), *count, c.seed);
            cfg.trials = c.trials;
            cfg.coeff_range = *coeff_range;
            cfg.gate = gate.gate();
            cfg.nvars = nvars.clone().unwrap_or_default();
            cfg.max_degree = *max_degree;
            cfg.max_dim = *max_dim;
            cfg.timing = c.timing;
            Ok(suite(&cfg))
        }
    }
}

fn hilbert(c: &Common, input: &AlgebraInput) -> Result<Output> {
    let (inst, a) = algebra(c, input)?;
    let h = a.hilbert_function();
    let symmetric = h.iter().eq(h.iter().rev());
    let unimodal = is_unimodal(&h);
    let mut o = Output::new("hilbert");
    o.text = vec![
        format!("h = {}", tuple(&h)),
        format!(
            "dim {}, socle degree {}, unimodal {}, symmetric {}",
            a.total_dim(),
            a.socle_degree(),
            unimodal,
            symmetric
        ),
    ];
    o.json = json!({
        "instance": instance_json(&inst),
        "hilbert_function": h,
        "dim": a.total_dim(),
        "socle_degree": a.socle_degree(),
        "unimodal": unimodal,
        "symmetric": symmetric,
    });
    o.csv = std::iter::once(vec!["degree".to_string(), "dim".to_string()])
        .chain(h.iter().enumerate().map(|(d, x)| vec![d.to_string(), x.to_string()]))
        .collect();
    Ok(o)
}

fn jordan(c: &Common, input: &AlgebraInput, element: &str) -> Result<Output> {
    let (inst, a) = algebra(c, input)?;
    let y = parse_poly(element, inst.nvars, inst.field).with_context(|| format!("in '{element}'"))?;
    let h = a.hilbert_function();
    let j = jordan_type(a.as_ref(), &y)?;
    let dual = hilbert_partition(&h).dual();
    let unimodal = is_unimodal(&h);
    let holds = compare_partitions(&dual, &j)?.is_ge();
    let mut o = Output::new("jordan");
    o.text = vec![
        format!("h = {}", tuple(&h)),
        format!("J(×{y}) = {j}"),
        format!("dual(h) = {dual}"),
        format!("dual(h) ≽ J: {holds}"),
    ];
    if !holds && unimodal {
        o.text.push("FAIL the dominance bound is violated for a unimodal Hilbert function".into());
        o.code = 1;
        o.dumps.push(json!({"instance": instance_json(&inst), "y": y.to_string()}));
    } else if !unimodal {
        o.text.push("note: h is not unimodal, the bound is not expected".into());
    }
    o.json = json!({
        "instance": instance_json(&inst),
        "y": y.to_string(),
        "hilbert_function": h,
        "jordan_type": parts(&j),
        "dual_of_hilbert": parts(&dual),
        "unimodal": unimodal,
        "bound_holds": holds,
    });
    o.csv = vec![
        vec!["y", "hilbert_function", "jordan_type", "dual_of_hilbert", "unimodal", "bound_holds"]
            .into_iter()
            .map(String::from)
            .collect(),
        vec![
            y.to_string(),
            join(&h, " "),
            join(j.parts(), " "),
            join(dual.parts(), " "),
            unimodal.to_string(),
            holds.to_string(),
        ],
    ];
    Ok(o)
}

fn slp(c: &Common, input: &AlgebraInput, element: Option<&str>) -> Result<Output> {
    let (inst, a) = algebra(c, input)?;
    let mut o = Output::new("slp");
    let (report, trial) = match element {
        Some(s) => {
            let p = parse_poly(s, inst.nvars, inst.field).with_context(|| format!("in '{s}'"))?;
            let z = LinearForm::from_poly(&p).with_context(|| format!("'{s}' is not a linear form"))?;
            (Some(certify_sl_element(&a, &z)?), None)
        }
        None => {
            o.seed = Some(c.seed);
            o.trials = Some(c.trials);
            match find_sl_element(a.as_ref(), c.trials, c.seed, &Sampler::for_search(inst.field))? {
                Some(w) => (Some(w.report), Some(w.trial)),
                None => (None, None),
            }
        }
    };
    let h = a.hilbert_function();
    o.text.push(format!("h = {}", tuple(&h)));
    let header: Vec<String> = ["element", "hilbert_function", "verdict", "jordan_type", "dual_of_hilbert", "failing_maps"]
        .map(String::from)
        .to_vec();
    match report {
        Some(r) => {
            o.text.push(format!("z = {}", r.element));
            if let Some(t) = trial {
                o.text.push(format!("found on trial {t}"));
            }
            o.text.push(format!("verdict {}", r.verdict));
            o.text.push(format!("J = {}, dual(h) = {}", r.jordan_type, r.dual_of_hilbert));
            let failing: Vec<String> = r.failures().map(|f| rank_record_text(f, "A")).collect();
            for f in &failing {
                o.text.push(format!("failing {f}"));
            }
            if r.verdict != Verdict::SlpCertified {
                o.code = 3;
            }
            o.json = json!({"instance": instance_json(&inst), "certified": r.verdict == Verdict::SlpCertified, "trial": trial, "report": lefschetz_json(&r)});
            o.csv = vec![
                header,
                vec![
                    r.element.to_string(),
                    join(&h, " "),
                    r.verdict.as_str().into(),
                    join(r.jordan_type.parts(), " "),
                    join(r.dual_of_hilbert.parts(), " "),
                    failing.join("; "),
                ],
            ];
        }
        None => {
            o.text.push(format!(
                "no strong Lefschetz element among {} random forms (not a disproof)",
                c.trials
            ));
            o.code = 3;
            o.json = json!({"instance": instance_json(&inst), "certified": false, "hilbert_function": h, "report": null});
            o.csv = vec![header, vec![String::new(), join(&h, " "), String::new(), String::new(), String::new(), String::new()]];
        }
    }
    Ok(o)
}

fn csm(c: &Common, input: &AlgebraInput, z: &str) -> Result<Output> {
    let (inst, a) = algebra(c, input)?;
    let p = parse_poly(z, inst.nvars, inst.field).with_context(|| format!("in '{z}'"))?;
    let z = LinearForm::from_poly(&p).with_context(|| format!("'{z}' is not a linear form"))?;
    let chain = csm_chain(&a, &z)?;
    let telescopes = chain.telescopes();
    let last = last_csm_check(&chain)?;
    let slp = chain.module_slp(c.trials, c.seed, &Sampler::for_search(inst.field))?;
    let mut o = Output::new("csm");
    o.seed = Some(c.seed);
    o.trials = Some(c.trials);
    o.text = vec![
        format!("h = {}", tuple(&a.hilbert_function())),
        format!("z = {z}: p = {}, q = {}, s = {}", chain.p(), chain.q(), chain.s()),
    ];
    o.csv.push(["module", "position", "hilbert_function", "slp", "element"].map(String::from).to_vec());
    for (i, m) in slp.modules.iter().enumerate() {
        let w = m.witness.as_ref();
        o.text.push(format!(
            "U_{} = C_{}/C_{}: h = {}, slp {}",
            i + 1,
            chain.p() - m.position,
            chain.p() - m.position - 1,
            tuple(&m.hilbert_function),
            w.map_or_else(|| "not found".to_string(), |w| format!("via {}", w.element))
        ));
        o.csv.push(vec![
            (i + 1).to_string(),
            m.position.to_string(),
            join(&m.hilbert_function, " "),
            w.is_some().to_string(),
            w.map_or_else(String::new, |w| w.element.to_string()),
        ]);
    }
    o.text.push(format!("telescopes {telescopes}, last module is C_q/(z) {last}"));
    if !telescopes || !last {
        o.text.push("FAIL chain structure".into());
        o.code = 1;
        o.dumps.push(json!({"instance": instance_json(&inst), "z": z.to_string()}));
    } else if !slp.all_have_slp {
        o.text.push("some module has no strong Lefschetz element among the samples (not a disproof)".into());
        o.code = 3;
    }
    o.json = json!({
        "instance": instance_json(&inst),
        "hilbert_function": a.hilbert_function(),
        "z": z.to_string(),
        "p": chain.p(),
        "q": chain.q(),
        "s": chain.s(),
        "positions": chain.positions(),
        "modules": slp.modules.iter().map(|m| json!({
            "position": m.position,
            "hilbert_function": m.hilbert_function,
            "element": m.witness.as_ref().map(|w| w.element.to_string()),
            "jordan_type": m.witness.as_ref().map(|w| parts(&w.report.jordan_type)),
        })).collect::<Vec<_>>(),
        "all_have_slp": slp.all_have_slp,
        "telescopes": telescopes,
        "last_csm_check": last,
    });
    Ok(o)
}

fn colon(c: &Common, input: &AlgebraInput, f: &str) -> Result<Output> {
    let (inst, a) = algebra(c, input)?;
    let fp = parse_poly(f, inst.nvars, inst.field).with_context(|| format!("in '{f}'"))?;
    let colon = ideal_colon(&a, &fp)?;
    let dims = colon.dims();
    let mut o = Output::new("colon");
    o.text.push(format!("(0 : {fp}) has dims {}", tuple(&dims)));
    o.csv.push(["degree", "dim", "basis"].map(String::from).to_vec());
    let mut basis = Vec::new();
    for (d, dim) in dims.iter().enumerate() {
        let elems: Vec<String> = colon
            .piece(d)
            .map(|p| p.rows().iter().map(|r| a.lift(d, r).to_string()).collect())
            .unwrap_or_default();
        if !elems.is_empty() {
            o.text.push(format!("  degree {d}: {}", elems.join(", ")));
        }
        o.csv.push(vec![d.to_string(), dim.to_string(), elems.join("; ")]);
        basis.push(elems);
    }
    o.json = json!({
        "instance": instance_json(&inst),
        "f": fp.to_string(),
        "dims": dims,
        "basis": basis,
    });
    Ok(o)
}

fn parse_rows<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<Vec<T>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<T>().map_err(|_| anyhow!("bad {what} entry '{}'", x.trim())))
                .collect()
        })
        .collect()
}

fn record_output(command: &'static str, record: &Record, echo: Value, seed: u64, trials: usize) -> Output {
    let mut o = Output::new(command);
    o.seed = Some(seed);
    o.trials = Some(trials);
    o.text = vec![record_line(record)];
    o.json = record_json(record, Some(&echo), None);
    o.csv = vec![
        report::RECORD_CSV_HEADER.iter().map(|s| s.to_string()).collect(),
        record_csv(record),
    ];
    o.code = report::exit_code([record.status()].iter());
    if record.status() == Status::HardFail {
        o.dumps.push(json!({"instance": echo, "replay": report::replay_file(record)}));
    }
    o
}

fn thm31(c: &Common, degrees: Option<&[usize]>, matrix: Option<&str>, gate: MinorGate, range: i64) -> Result<Output> {
    let field = field_of(c);
    let inst = match (degrees, matrix) {
        (Some(d), Some(m)) => {
            let rows: Vec<Vec<i64>> = parse_rows(m, "matrix")?;
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            Thm31Instance::new(d.to_vec(), Matrix::from_i64_rows(field, &refs)?)?
        }
        (None, Some(_)) => bail!("--matrix needs --degrees"),
        (Some(d), None) => {
            let (m, _) = random_thm31_matrix(field, d.len(), range, gate, &mut stream_rng(child_seed(c.seed, 1), 0))?;
            Thm31Instance::new(d.to_vec(), m)?
        }
        (None, None) => {
            let mut family = Thm31Family::new(field);
            family.coeff_range = range;
            family.gate = gate;
            if let Some(n) = c.vars {
                family.nvars = vec![n];
            }
            family.draw(c.seed)?.0
        }
    };
    if let Some(n) = c.vars {
        if n != inst.n() {
            bail!("--vars {n} does not match {} degrees", inst.n());
        }
    }
    let record = verify_thm31(&inst, gate, c.trials, child_seed(c.seed, 2))?;
    Ok(record_output("verify-thm31", &record, report::thm31_echo(&inst), c.seed, c.trials))
}

fn thm41(c: &Common, multiplicities: Option<&str>, instance: Option<&PathBuf>, range: i64) -> Result<Output> {
    let inst = match (multiplicities, instance) {
        (Some(m), None) => {
            let mults: Vec<Vec<u32>> = parse_rows(m, "multiplicity")?;
            build_thm41(field_of(c), &mults, child_seed(c.seed, 1), range)?
        }
        (None, Some(path)) => {
            let file = Instance::load(path, c.field, c.vars)?;
            let gens = file
                .factored
                .ok_or_else(|| anyhow!("{} has no factored generators", path.display()))?;
            let forms = gens.iter().map(|g| g.factors().iter().map(|f| f.0.clone()).collect()).collect();
            let mults = gens.iter().map(|g| g.factors().iter().map(|f| f.1).collect()).collect();
            Thm41Instance::new(forms, mults)?
        }
        _ => bail!("give --multiplicities or --instance"),
    };
    let record = verify_thm41(&inst, c.trials, child_seed(c.seed, 2))?;
    Ok(record_output("verify-thm41", &record, report::thm41_echo(&inst), c.seed, c.trials))
}

fn suite(cfg: &SuiteConfig) -> Output {
    let outcomes = run_suite(cfg);
    let summary = Summary::of(cfg.kind, &outcomes);
    let mut o = Output::new("suite");
    o.seed = Some(cfg.seed);
    o.trials = Some(cfg.trials);
    o.text.push(format!(
        "suite {} count {} field {}",
        cfg.kind.as_str(),
        cfg.count,
        field_name(cfg.field)
    ));
    o.csv.push(csv_header(cfg.kind, cfg.timing));
    for out in &outcomes {
        o.text.push(out.line.clone());
        o.csv.push(out.csv.clone());
        if let Some(d) = &out.dump {
            o.dumps.push(d.clone());
        }
    }
    o.text.extend(summary.lines());
    o.code = report::exit_code(outcomes.iter().map(|x| &x.status));
    o.json = json!({
        "suite": cfg.kind.as_str(),
        "count": cfg.count,
        "field": field_name(cfg.field),
        "coeff_range": cfg.coeff_range,
        "gate": cfg.gate.as_str(),
        "instances": outcomes.iter().map(|x| x.json.clone()).collect::<Vec<_>>(),
        "summary": summary.to_json(),
    });
    o
}
