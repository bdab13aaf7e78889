//! The `qparity` batch front end.
//!
//! `qparity <subcommand> --config <path> [--out <dir>] [--jobs N]`
//!
//! The config is TOML:
//!
//! ```toml
//! quiver = "a2.json"      # relative to the config file
//! nu_cap = 3              # every nu with 0 < |nu| <= nu_cap ...
//! # nu = [[1, 1], [2, 1]] # ... unless listed explicitly
//! primes = [2, 3, 4, 5, 7]
//! budget = 50000000
//! flag_cap = 100000
//! out = "out"
//!
//! [fibers]
//! sequences_only = false
//! [klr]
//! degree_bound = 2
//! [basis]
//! conjecture = true
//! alternatives = 1
//! ```
//!
//! Results go to `<out>/records/<kind>/<sha256>.json`, keyed by the inputs that
//! determine them. A record already present with status other than `incomplete` and
//! the current version is reused as is. Exit status: 0 on success (alerts included),
//! 1 on defects, 2 on configuration errors, 3 when a budget ran out.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::ffield::prime_power;
use crate::flagcount::{
    evenness_scan, poincare_fiber, prime_powers, res_check, FlagSelection, ScanConfig, DEFAULT_BUDGET,
};
use crate::klr::check_relations;
use crate::paritycalc::ParityContext;
use crate::qf::Qf;
use crate::qlaurent::LaurentPoly;
use crate::quiver::{dim_vectors_up_to, enumerate_flag_types, DimVector, FlagType, QuiverCatalog, QuiverData};
use crate::{Error, Result};

/// Written into every record; records from another version are recomputed.
pub const ARTIFACT_VERSION: &str = concat!("qparity/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(name = "qparity", version, about = "Flag fibers, parity sheaves and bases of f for Dynkin quivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunArgs {
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (overrides the config).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Orbits of every weight with their dimensions.
    Orbits(RunArgs),
    /// Poincare polynomials of all fibers of all Lusztig maps.
    Fibers(RunArgs),
    /// KLR defining relations, by the polynomial action and by straightening.
    KlrCheck(RunArgs),
    /// dim f_nu against the number of Kostant partitions.
    FDim(RunArgs),
    /// Evenness scan with the type A cell comparison.
    EvenScan(RunArgs),
    /// Parity basis of f_nu in monomials, with the basis coincidence check.
    Basis(RunArgs),
    /// Restriction of Lusztig complexes against the coproduct of f.
    ResCheck(RunArgs),
}

impl Command {
    fn args(&self) -> &RunArgs {
        match self {
            Command::Orbits(a)
            | Command::Fibers(a)
            | Command::KlrCheck(a)
            | Command::FDim(a)
            | Command::EvenScan(a)
            | Command::Basis(a)
            | Command::ResCheck(a) => a,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Orbits(_) => "orbits",
            Command::Fibers(_) => "fibers",
            Command::KlrCheck(_) => "klr-check",
            Command::FDim(_) => "f-dim",
            Command::EvenScan(_) => "even-scan",
            Command::Basis(_) => "basis",
            Command::ResCheck(_) => "res-check",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FibersOptions {
    pub sequences_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KlrOptions {
    pub degree_bound: u16,
}

impl Default for KlrOptions {
    fn default() -> Self {
        KlrOptions { degree_bound: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BasisOptions {
    pub conjecture: bool,
    pub alternatives: usize,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions { conjecture: true, alternatives: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub quiver: PathBuf,
    #[serde(default = "default_cap")]
    pub nu_cap: u32,
    #[serde(default)]
    pub nu: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub primes: Option<Vec<u32>>,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_flag_cap")]
    pub flag_cap: usize,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default)]
    pub fibers: FibersOptions,
    #[serde(default)]
    pub klr: KlrOptions,
    #[serde(default)]
    pub basis: BasisOptions,
}

fn default_cap() -> u32 {
    3
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn default_flag_cap() -> usize {
    100_000
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    /// Parses and validates; relative paths are resolved against `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.quiver.is_relative() {
            cfg.quiver = base.join(&cfg.quiver);
        }
        if cfg.out.is_relative() {
            cfg.out = base.join(&cfg.out);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu_cap == 0 || self.budget == 0 || self.flag_cap == 0 {
            return Err(Error::Config("nu_cap, budget and flag_cap must be positive".into()));
        }
        if let Some(p) = &self.primes {
            if p.is_empty() {
                return Err(Error::Config("empty prime set".into()));
            }
            if let Some(&bad) = p.iter().find(|&&x| prime_power(x).is_none()) {
                return Err(Error::Config(format!("{bad} is not a prime power")));
            }
        }
        if let Some(nus) = &self.nu {
            if nus.is_empty() || nus.iter().any(|v| v.iter().all(|&x| x == 0)) {
                return Err(Error::Config("explicit nu list must be nonempty with nonzero entries".into()));
            }
        }
        Ok(())
    }

    pub fn load_quiver(&self) -> Result<QuiverData> {
        let text = std::fs::read_to_string(&self.quiver)
            .map_err(|e| Error::Config(format!("quiver file {}: {e}", self.quiver.display())))?;
        QuiverData::from_json_str(&text)
    }

    /// The weights to run over, after checking them against the quiver.
    pub fn weights(&self, q: &QuiverData) -> Result<Vec<DimVector>> {
        let n = q.num_vertices();
        match &self.nu {
            Some(list) => list
                .iter()
                .map(|v| {
                    if v.len() == n {
                        Ok(DimVector(v.clone()))
                    } else {
                        Err(Error::Config(format!("nu {v:?} has {} entries, the quiver {n} vertices", v.len())))
                    }
                })
                .collect(),
            None => Ok(dim_vectors_up_to(n, self.nu_cap).into_iter().filter(|v| !v.is_zero()).collect()),
        }
    }

    /// The configured prime powers followed by the defaults, at least `k` of them.
    pub fn samples(&self, k: usize) -> Vec<u32> {
        let mut out = self.primes.clone().unwrap_or_default();
        for p in prime_powers(k + out.len()) {
            if out.len() >= k {
                break;
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

/// One stored result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub kind: String,
    pub quiver: Value,
    pub nu: Option<DimVector>,
    pub y: Option<String>,
    pub lambda: Option<String>,
    pub q: Option<u32>,
    pub payload: Value,
    /// `ok`, `alert`, `failed` or `incomplete`.
    pub status: String,
    pub version: String,
}

/// Where a record lives and what determines it.
#[derive(Clone, Debug, Serialize)]
pub struct RecordKey {
    pub kind: String,
    pub quiver: Value,
    pub nu: Option<DimVector>,
    pub y: Option<String>,
    pub lambda: Option<String>,
    pub q: Option<u32>,
    /// Configuration entries the result depends on.
    pub params: Value,
}

impl RecordKey {
    pub fn new(kind: &str, quiver: &QuiverData, nu: Option<&DimVector>, params: Value) -> Self {
        RecordKey {
            kind: kind.into(),
            quiver: quiver.to_json(),
            nu: nu.cloned(),
            y: None,
            lambda: None,
            q: None,
            params,
        }
    }

    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&serde_json::to_value(self).expect("key serializes")).expect("value serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// Append-only directory of JSON records.
pub struct ResultStore {
    root: PathBuf,
    write: Mutex<()>,
}

impl ResultStore {
    pub fn open(out: &Path) -> Result<Self> {
        let root = out.join("records");
        std::fs::create_dir_all(&root)?;
        Ok(ResultStore { root, write: Mutex::new(()) })
    }

    pub fn path(&self, key: &RecordKey) -> PathBuf {
        self.root.join(&key.kind).join(format!("{}.json", key.digest()))
    }

    /// A finished record of the current version, if present.
    pub fn get(&self, key: &RecordKey) -> Option<Record> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let rec: Record = serde_json::from_str(&text).ok()?;
        (rec.version == ARTIFACT_VERSION && rec.status != "incomplete").then_some(rec)
    }

    pub fn put(&self, key: &RecordKey, payload: Value, status: &str) -> Result<Record> {
        let rec = Record {
            kind: key.kind.clone(),
            quiver: key.quiver.clone(),
            nu: key.nu.clone(),
            y: key.y.clone(),
            lambda: key.lambda.clone(),
            q: key.q,
            payload,
            status: status.into(),
            version: ARTIFACT_VERSION.into(),
        };
        let path = self.path(key);
        let mut text = serde_json::to_string_pretty(&serde_json::to_value(&rec)?)?;
        text.push('\n');
        let _guard = self.write.lock().expect("store lock");
        std::fs::create_dir_all(path.parent().expect("records have a kind directory"))?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &path)?;
        Ok(rec)
    }

    /// Reuses a finished record or computes and stores one. Budget exhaustion is stored
    /// as `incomplete` and returned as such.
    pub fn get_or_compute<F>(&self, key: &RecordKey, compute: F) -> Result<Record>
    where
        F: FnOnce() -> Result<(Value, &'static str)>,
    {
        if let Some(r) = self.get(key) {
            return Ok(r);
        }
        match compute() {
            Ok((payload, status)) => self.put(key, payload, status),
            Err(Error::BudgetExceeded(msg)) => self.put(key, json!({ "error": msg }), "incomplete"),
            Err(e) => Err(e),
        }
    }
}

/// Exit status for an error reaching the top level.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Parse(_) | Error::UnknownVertex(_) | Error::InvalidQuiver(_) => 2,
        Error::BudgetExceeded(_) => 3,
        _ => 1,
    }
}

/// What a subcommand produced: the text for standard output and how it ended.
#[derive(Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub records: usize,
    pub incomplete: usize,
    pub defects: usize,
    pub alerts: usize,
}

impl Outcome {
    fn absorb(&mut self, r: &Record) {
        self.records += 1;
        match r.status.as_str() {
            "incomplete" => self.incomplete += 1,
            "failed" => self.defects += 1,
            "alert" => self.alerts += 1,
            _ => {}
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.defects > 0 {
            1
        } else if self.incomplete > 0 {
            3
        } else {
            0
        }
    }
}

/// Runs a subcommand against a loaded configuration.
pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    let quiver = cfg.load_quiver()?;
    let weights = cfg.weights(&quiver)?;
    let store = ResultStore::open(&cfg.out)?;
    let catalog = QuiverCatalog::new(&quiver)?;
    let mut out = match cmd {
        Command::Orbits(_) => orbits(&catalog, &weights, cfg, &store)?,
        Command::Fibers(_) => fibers(&catalog, &weights, cfg, &store)?,
        Command::KlrCheck(_) => klr_check(&quiver, &weights, cfg, &store)?,
        Command::FDim(_) => f_dim(&catalog, &weights, cfg, &store)?,
        Command::EvenScan(_) => even_scan(&catalog, cfg, &store)?,
        Command::Basis(_) => basis(&catalog, &weights, cfg, &store)?,
        Command::ResCheck(_) => res_check_cmd(&quiver, &weights, cfg, &store)?,
    };
    let _ = writeln!(
        out.text,
        "{}: {} records, {} alerts, {} incomplete, {} defects ({})",
        cmd.name(),
        out.records,
        out.alerts,
        out.incomplete,
        out.defects,
        cfg.out.join("records").display()
    );
    Ok(out)
}

/// Parses arguments, runs, prints, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let a = cli.command.args();
    let mut cfg = match RunConfig::load(&a.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(o) = &a.out {
        cfg.out = o.clone();
    }
    if let Some(j) = a.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return 2;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match run(&cli.command, &cfg) {
        Ok(o) => {
            print!("{}", o.text);
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            w[k] = w[k].max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&w)
            .map(|(c, &n)| format!("{c}{}", " ".repeat(n - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{}", line(header));
    for r in rows {
        let _ = writeln!(out, "{}", line(r));
    }
}

fn s(x: impl ToString) -> String {
    x.to_string()
}

fn orbits(catalog: &QuiverCatalog, weights: &[DimVector], cfg: &RunConfig, store: &ResultStore) -> Result<Outcome> {
    let q = catalog.quiver();
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    for nu in weights {
        let key = RecordKey::new("orbits", q, Some(nu), json!({ "flag_cap": cfg.flag_cap }));
        let rec = store.get_or_compute(&key, || {
            let list: Vec<Value> = catalog
                .orbits(nu, cfg.flag_cap)?
                .iter()
                .map(|o| json!({ "orbit": o.partition.name(q), "dim": o.dim, "end_dim": o.end_dim }))
                .collect();
            Ok((Value::Array(list), "ok"))
        })?;
        out.absorb(&rec);
        for o in rec.payload.as_array().into_iter().flatten() {
            rows.push(vec![q.dv_name(nu), s(o["orbit"].as_str().unwrap_or("")), s(&o["dim"]), s(&o["end_dim"])]);
        }
    }
    table(&mut out.text, &[s("nu"), s("orbit"), s("dim"), s("dim End")], &rows);
    Ok(out)
}

fn fibers(catalog: &QuiverCatalog, weights: &[DimVector], cfg: &RunConfig, store: &ResultStore) -> Result<Outcome> {
    let q = catalog.quiver();
    let n = q.num_vertices();
    let mut out = Outcome::default();
    for nu in weights {
        let orbits = catalog.orbits(nu, cfg.flag_cap)?;
        let ys: Vec<FlagType> = enumerate_flag_types(nu, cfg.flag_cap)?
            .into_iter()
            .filter(|y| !cfg.fibers.sequences_only || y.is_sequence())
            .collect();
        let tasks: Vec<(usize, usize)> = (0..ys.len()).flat_map(|a| (0..orbits.len()).map(move |b| (a, b))).collect();
        let recs: Vec<Record> = tasks
            .par_iter()
            .map(|&(a, b)| {
                let (y, lambda) = (&ys[a], &orbits[b].partition);
                let primes = cfg.samples((crate::flagcount::degree_bound(y, n) + 3).max(5));
                let mut key = RecordKey::new("fiber", q, Some(nu), json!({ "budget": cfg.budget, "primes": primes }));
                key.y = Some(q.flag_name(y));
                key.lambda = Some(lambda.name(q));
                store.get_or_compute(&key, || {
                    let f = poincare_fiber(catalog, lambda, y, &primes, cfg.budget)?;
                    let status = if f.verified() { "ok" } else { "alert" };
                    Ok((serde_json::to_value(&f)?, status))
                })
            })
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        for (a, y) in ys.iter().enumerate() {
            let mut row = vec![q.flag_name(y)];
            for b in 0..orbits.len() {
                let r = &recs[a * orbits.len() + b];
                out.absorb(r);
                row.push(match r.status.as_str() {
                    "ok" => poly_text(&r.payload["poly"]),
                    "alert" => s("EVENNESS-ALERT"),
                    other => other.to_uppercase(),
                });
            }
            rows.push(row);
        }
        let _ = writeln!(out.text, "nu = {}", q.dv_name(nu));
        let header: Vec<String> = std::iter::once(s("y")).chain(orbits.iter().map(|o| o.partition.name(q))).collect();
        table(&mut out.text, &header, &rows);
    }
    Ok(out)
}

/// Renders a serialized Poincare polynomial.
fn poly_text(v: &Value) -> String {
    let coeffs: Vec<String> = v["coeffs"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|c| c.as_str().map(str::to_string))
        .collect();
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != "0")
        .map(|(k, c)| match (k, c.as_str()) {
            (0, _) => c.clone(),
            (1, "1") => s("t"),
            (1, _) => format!("{c}t"),
            (_, "1") => format!("t^{k}"),
            _ => format!("{c}t^{k}"),
        })
        .collect();
    if terms.is_empty() {
        s("0")
    } else {
        terms.join(" + ")
    }
}

fn klr_check(q: &QuiverData, weights: &[DimVector], cfg: &RunConfig, store: &ResultStore) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    for nu in weights {
        let key = RecordKey::new("klr-check", q, Some(nu), json!({ "degree_bound": cfg.klr.degree_bound }));
        let rec = store.get_or_compute(&key, || {
            let r = check_relations(q, nu, cfg.klr.degree_bound)?;
            Ok((serde_json::to_value(&r)?, if r.passed() { "ok" } else { "failed" }))
        })?;
        out.absorb(&rec);
        let fams = rec.payload["families"].as_array().cloned().unwrap_or_default();
        let inst: u64 = fams.iter().filter_map(|f| f["instances"].as_u64()).sum();
        let fails: u64 = fams
            .iter()
            .map(|f| f["action_failures"].as_u64().unwrap_or(0) + f["straightening_failures"].as_u64().unwrap_or(0))
            .sum();
        rows.push(vec![q.dv_name(nu), s(inst), s(fails), s(&rec.status)]);
    }
    table(&mut out.text, &[s("nu"), s("instances"), s("failures"), s("status")], &rows);
    Ok(out)
}

fn f_dim(catalog: &QuiverCatalog, weights: &[DimVector], cfg: &RunConfig, store: &ResultStore) -> Result<Outcome> {
    let q = catalog.quiver();
    let qf = Qf::new(q);
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    for nu in weights {
        let key = RecordKey::new("f-dim", q, Some(nu), json!({ "flag_cap": cfg.flag_cap }));
        let rec = store.get_or_compute(&key, || {
            let rank = qf.dim_f(nu);
            let count = catalog.kostant_partitions(nu, cfg.flag_cap)?.len();
            let status = if rank.rank == count { "ok" } else { "failed" };
            Ok((json!({ "dim_f": rank.rank, "kostant": count, "certificate": rank }), status))
        })?;
        out.absorb(&rec);
        let (d, k) = (&rec.payload["dim_f"], &rec.payload["kostant"]);
        rows.push(vec![q.dv_name(nu), s(d), s(k), s(if d == k { "yes" } else { "NO" })]);
    }
    table(&mut out.text, &[s("nu"), s("dim f_nu"), s("#Λ_V"), s("equal")], &rows);
    Ok(out)
}

fn even_scan(catalog: &QuiverCatalog, cfg: &RunConfig, store: &ResultStore) -> Result<Outcome> {
    let q = catalog.quiver();
    let scan = ScanConfig {
        nu_cap: cfg.nu_cap,
        min_primes: cfg.primes.as_ref().map_or(5, Vec::len).max(5),
        budget: cfg.budget,
        flags: if cfg.fibers.sequences_only { FlagSelection::Sequences } else { FlagSelection::All },
        flag_cap: cfg.flag_cap,
        ..ScanConfig::default()
    };
    let key = RecordKey::new(
        "even-scan",
        q,
        None,
        json!({ "nu_cap": scan.nu_cap, "min_primes": scan.min_primes, "budget": scan.budget,
                "sequences_only": cfg.fibers.sequences_only, "flag_cap": scan.flag_cap }),
    );
    let mut out = Outcome::default();
    let rec = store.get_or_compute(&key, || {
        let r = evenness_scan(catalog, &scan)?;
        let status = if r.budget_exhausted > 0 {
            "incomplete"
        } else if !r.alerts.is_empty() {
            "alert"
        } else if r.even_consistent() {
            "ok"
        } else {
            "failed"
        };
        Ok((serde_json::to_value(&r)?, status))
    })?;
    out.absorb(&rec);
    for (k, a) in rec.payload["alerts"].as_array().into_iter().flatten().enumerate() {
        let mut akey = key.clone();
        akey.kind = "alert".into();
        akey.params = json!({ "scan": key.digest(), "index": k });
        out.absorb(&store.put(&akey, a.clone(), "alert")?);
        let _ = writeln!(out.text, "EVENNESS-ALERT {}", a);
    }
    let p = &rec.payload;
    let _ = writeln!(
        out.text,
        "{} |nu| <= {}: {} fibers, {} alerts, {} cell mismatches, {} dimension defects, verdict {}",
        p["quiver"].as_str().unwrap_or(""),
        cfg.nu_cap,
        p["cells"].as_array().map_or(0, Vec::len),
        p["alerts"].as_array().map_or(0, Vec::len),
        p["cell_mismatches"],
        p["dimension_defects"],
        p["verdict"].as_str().unwrap_or("")
    );
    Ok(out)
}

fn basis(catalog: &QuiverCatalog, weights: &[DimVector], cfg: &RunConfig, store: &ResultStore) -> Result<Outcome> {
    let q = catalog.quiver();
    let qf = Qf::new(q);
    let mut out = Outcome::default();
    for nu in weights {
        let key = RecordKey::new(
            "basis",
            q,
            Some(nu),
            json!({ "budget": cfg.budget, "flag_cap": cfg.flag_cap, "conjecture": cfg.basis.conjecture,
                    "alternatives": cfg.basis.alternatives }),
        );
        let rec = store.get_or_compute(&key, || {
            let ctx = ParityContext::with_limits(catalog, nu, cfg.budget, cfg.flag_cap)?;
            let b = match ctx.parity_basis(&qf) {
                Ok(b) => b,
                Err(Error::ParityAlert(a)) => return Ok((json!({ "parity_alert": raw(&a) }), "alert")),
                Err(Error::EvennessAlert(a)) => return Ok((json!({ "evenness_alert": raw(&a) }), "alert")),
                Err(e) => return Err(e),
            };
            let mut payload = json!({ "basis": b });
            let mut status = "ok";
            if cfg.basis.conjecture {
                let c = ctx.conjecture14_check(&qf, cfg.basis.alternatives)?;
                if c.verdict != "coincide" {
                    status = "alert";
                }
                payload["conjecture14"] = serde_json::to_value(&c)?;
            }
            Ok((payload, status))
        })?;
        out.absorb(&rec);
        let p = &rec.payload;
        let _ = writeln!(out.text, "nu = {} [{}]", q.dv_name(nu), rec.status);
        if let Some(b) = p.get("basis") {
            let cols: Vec<&str> = b["basis"]["cols"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
            let rows = b["basis"]["rows"].as_array().cloned().unwrap_or_default();
            let entries = b["basis"]["entries"].as_array().cloned().unwrap_or_default();
            for (r, e) in rows.iter().zip(&entries) {
                let terms: Vec<String> = e
                    .as_array()
                    .into_iter()
                    .flatten()
                    .zip(&cols)
                    .filter(|(c, _)| !laurent_is_zero(c))
                    .map(|(c, m)| format!("({}) {m}", laurent_text(c)))
                    .collect();
                let _ = writeln!(out.text, "  {} = {}", r.as_str().unwrap_or(""), terms.join(" + "));
            }
            let _ = writeln!(out.text, "  rank {} of dim f_nu {}", b["rank"]["rank"], b["dim_f"]);
        }
        if let Some(c) = p.get("conjecture14") {
            let _ = writeln!(out.text, "  basis coincidence: {}", c["verdict"].as_str().unwrap_or(""));
        }
        for k in ["parity_alert", "evenness_alert"] {
            if let Some(a) = p.get(k) {
                let _ = writeln!(out.text, "  {}: {a}", k.replace('_', "-").to_uppercase());
            }
        }
    }
    Ok(out)
}

fn raw(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

fn laurent_is_zero(v: &Value) -> bool {
    serde_json::from_value::<LaurentPoly>(v.clone()).is_ok_and(|p| p.is_zero())
}

fn laurent_text(v: &Value) -> String {
    serde_json::from_value::<LaurentPoly>(v.clone()).map_or_else(|_| v.to_string(), |p| p.to_string())
}

fn res_check_cmd(q: &QuiverData, weights: &[DimVector], cfg: &RunConfig, store: &ResultStore) -> Result<Outcome> {
    let qf = Qf::new(q);
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    for nu in weights {
        let ys = enumerate_flag_types(nu, cfg.flag_cap)?;
        let recs: Vec<Record> = ys
            .par_iter()
            .map(|y| {
                let mut key = RecordKey::new("res-check", q, Some(nu), json!({}));
                key.y = Some(q.flag_name(y));
                store.get_or_compute(&key, || {
                    let checks = res_check(&qf, y)?;
                    let ok = checks.iter().all(|c| c.matches);
                    Ok((serde_json::to_value(&checks)?, if ok { "ok" } else { "failed" }))
                })
            })
            .collect::<Result<_>>()?;
        for (y, r) in ys.iter().zip(&recs) {
            out.absorb(r);
            let splits = r.payload.as_array().map_or(0, Vec::len);
            let good = r.payload.as_array().into_iter().flatten().filter(|c| c["matches"] == json!(true)).count();
            rows.push(vec![q.dv_name(nu), q.flag_name(y), format!("{good}/{splits}")]);
        }
    }
    table(&mut out.text, &[s("nu"), s("y"), s("splits matching r(θ_y)")], &rows);
    Ok(out)
}
