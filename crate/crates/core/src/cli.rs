//! Command dispatch behind the `smt` binary: JSON or text in, JSON or text out.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when a verification fails.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::chain::{QChain, QSet};
use crate::characters::{demazure_dimension, key_polynomial};
use crate::error::Error;
use crate::geometry::{cell_of, gamma_path, q_preferred_reduce, sample_cell_with};
use crate::linalg::{parse_rational, RationalMatrix};
use crate::scan::{enumerate_demazure, is_demazure, scan};
use crate::shape::{Location, Partition, Region, Tabloid, TabloidJson};
use crate::straighten::{
    demazure_region, first_row_violation, snake_region, LinearCombination, Straightener, TermJson,
};
use crate::verify::{verify_independence, verify_master, verify_vanishing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

pub const COMMANDS: &[&str] = &[
    "scan",
    "key",
    "demtest",
    "enum",
    "straighten",
    "reduce",
    "keypoly",
    "cell-of",
    "sample-cell",
    "gamma",
    "verify-independence",
    "verify-master",
    "verify-vanishing",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

/// Inputs shared by all commands. Every field is optional; each command
/// validates the ones it needs.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub q: Option<Vec<usize>>,
    pub shape: Option<Vec<usize>>,
    /// Tabloid columns, top to bottom.
    pub columns: Option<Vec<Vec<usize>>>,
    /// A linear combination of tabloids.
    pub terms: Option<Vec<TermJson>>,
    /// Chain sets `P_1 ⊂ … ⊂ P_k`.
    pub chain: Option<Vec<Vec<usize>>>,
    pub matrix: Option<RationalMatrix>,
    pub region: Option<Vec<[usize; 2]>>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub t: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    #[serde(default)]
    pub at_ones: bool,
    #[serde(default)]
    pub format: Format,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed JSON input: {e}"))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(self, over: RunConfig) -> RunConfig {
        RunConfig {
            n: over.n.or(self.n),
            q: over.q.or(self.q),
            shape: over.shape.or(self.shape),
            columns: over.columns.or(self.columns),
            terms: over.terms.or(self.terms),
            chain: over.chain.or(self.chain),
            matrix: over.matrix.or(self.matrix),
            region: over.region.or(self.region),
            i: over.i.or(self.i),
            j: over.j.or(self.j),
            t: over.t.or(self.t),
            seed: over.seed.or(self.seed),
            samples: over.samples.or(self.samples),
            at_ones: over.at_ones || self.at_ones,
            format: if over.format == Format::Json { Format::Json } else { self.format },
        }
    }

    fn n(&self) -> Result<usize, Error> {
        self.n
            .or_else(|| self.shape.as_ref().map(Vec::len))
            .or_else(|| self.matrix.as_ref().map(RationalMatrix::rows))
            .ok_or_else(|| missing("n"))
    }

    fn partition(&self) -> Result<Partition, Error> {
        let parts = self.shape.clone().ok_or_else(|| missing("shape"))?;
        if let Some(n) = self.n {
            if n != parts.len() {
                return Err(Error::InvalidPartition(format!("n = {n} but shape has {} parts", parts.len())));
            }
        }
        Partition::new(parts)
    }

    fn qset(&self) -> Result<QSet, Error> {
        let n = self.n()?;
        match &self.q {
            Some(q) => QSet::new(n, q.clone()),
            None => QSet::full(n),
        }
    }

    fn chain(&self) -> Result<QChain, Error> {
        let sets = self.chain.clone().ok_or_else(|| missing("chain"))?;
        let n = self
            .n()
            .or_else(|_| sets.iter().flatten().copied().max().map(|m| m.max(2)).ok_or_else(|| missing("n")))?;
        let q = self.q.clone().unwrap_or_else(|| sets.iter().map(Vec::len).collect());
        QChain::new(QSet::new(n, q)?, sets)
    }

    fn tabloid(&self) -> Result<Tabloid, Error> {
        let columns = self.columns.clone().ok_or_else(|| missing("columns"))?;
        Tabloid::try_from(TabloidJson {
            n: self.n,
            shape: self.shape.clone(),
            columns,
        })
    }

    fn combination(&self) -> Result<LinearCombination, Error> {
        match (&self.terms, &self.columns) {
            (Some(terms), _) => {
                let shape = self.shape.clone().map(Partition::new).transpose()?;
                LinearCombination::from_json(terms.clone(), shape)
            }
            (None, Some(_)) => Ok(LinearCombination::from_tabloid(self.tabloid()?)),
            (None, None) => Err(missing("terms or columns")),
        }
    }

    fn rng(&self) -> Result<(u64, ChaCha8Rng), Error> {
        let seed = self
            .seed
            .ok_or_else(|| missing("seed (this command samples at random; pass --seed or set SMT_SEED)"))?;
        Ok((seed, ChaCha8Rng::seed_from_u64(seed)))
    }
}

fn missing(what: &str) -> Error {
    Error::Missing(what.to_string())
}

/// Exit status and rendered output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

struct Report {
    json: Value,
    text: String,
    verified: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            verified: true,
        }
    }
}

/// Runs `command` on `config`.
pub fn run(command: &str, config: &RunConfig) -> Outcome {
    match dispatch(command, config) {
        Ok(report) => {
            let output = match config.format {
                Format::Json => report.json.to_string(),
                Format::Text => report.text,
            };
            Outcome {
                code: if report.verified { EXIT_OK } else { EXIT_VERIFICATION },
                output,
            }
        }
        Err(e) => Outcome {
            code: EXIT_INVALID,
            output: match config.format {
                Format::Json => json!({ "error": e.to_string() }).to_string(),
                Format::Text => format!("error: {e}"),
            },
        },
    }
}

fn dispatch(command: &str, cfg: &RunConfig) -> Result<Report, Error> {
    match command {
        "scan" => cmd_scan(cfg),
        "key" => cmd_key(cfg),
        "demtest" => cmd_demtest(cfg),
        "enum" => cmd_enum(cfg),
        "straighten" => cmd_straighten(cfg),
        "reduce" => cmd_reduce(cfg),
        "keypoly" => cmd_keypoly(cfg),
        "cell-of" => cmd_cell_of(cfg),
        "sample-cell" => cmd_sample_cell(cfg),
        "gamma" => cmd_gamma(cfg),
        "verify-independence" => cmd_verify_independence(cfg),
        "verify-master" => cmd_verify_master(cfg),
        "verify-vanishing" => cmd_verify_vanishing(cfg),
        other => Err(Error::Parse(format!(
            "unknown command {other:?}; expected one of {}",
            COMMANDS.join(", ")
        ))),
    }
}

fn cmd_scan(cfg: &RunConfig) -> Result<Report, Error> {
    let t = cfg.tabloid()?;
    let s = scan(&t)?;
    let mut paths = serde_json::Map::new();
    let mut text = format!("S(T) = {}\n", s.scan_tableau);
    for (loc, path) in &s.paths {
        paths.insert(loc.to_string(), json!(path));
        let steps: Vec<String> = path.iter().map(Location::to_string).collect();
        writeln!(text, "P{loc} = {}", steps.join(" ")).expect("string write");
    }
    Ok(Report::new(
        json!({ "scan": s.scan_tableau.columns(), "paths": paths }),
        text.trim_end().to_string(),
    ))
}

fn cmd_key(cfg: &RunConfig) -> Result<Report, Error> {
    let pi = cfg.chain()?;
    let key = pi.key();
    let mut out = json!({ "key": key.columns() });
    let mut text = format!("Y(π) = {key}");
    if cfg.shape.is_some() {
        let lk = pi.lambda_key(&cfg.partition()?)?;
        out["lambda_key"] = json!(lk.columns());
        text.push_str(&format!("\nY_λ(π) = {lk}"));
    }
    Ok(Report::new(out, text))
}

fn cmd_demtest(cfg: &RunConfig) -> Result<Report, Error> {
    let t = cfg.tabloid()?;
    let pi = cfg.chain()?;
    let demazure = is_demazure(&t, &pi)?;
    let s = scan(&t)?.scan_tableau;
    let key = pi.lambda_key(t.shape())?;
    Ok(Report::new(
        json!({ "demazure": demazure, "scan": s.columns(), "lambda_key": key.columns() }),
        format!("{demazure}\nS(T) = {s}\nY_λ(π) = {key}"),
    ))
}

fn cmd_enum(cfg: &RunConfig) -> Result<Report, Error> {
    let shape = cfg.partition()?;
    let list = match cfg.chain {
        Some(_) => enumerate_demazure(&shape, &cfg.chain()?)?,
        None => Tabloid::enumerate_tableaux(&shape),
    };
    let cols: Vec<&[Vec<usize>]> = list.iter().map(Tabloid::columns).collect();
    let mut text = format!("{} tableaux", list.len());
    for t in &list {
        text.push_str(&format!("\n{t}"));
    }
    Ok(Report::new(json!({ "count": list.len(), "tableaux": cols }), text))
}

fn cmd_straighten(cfg: &RunConfig) -> Result<Report, Error> {
    let c = cfg.combination()?;
    let out = Straightener::new().straighten(&c)?;
    Ok(Report::new(json!({ "result": out }), out.to_string()))
}

fn cmd_reduce(cfg: &RunConfig) -> Result<Report, Error> {
    let c = cfg.combination()?;
    let pi = cfg.chain()?;
    let out = Straightener::new().reduce_mod(&c, &pi)?;
    Ok(Report::new(json!({ "result": out }), out.to_string()))
}

fn cmd_keypoly(cfg: &RunConfig) -> Result<Report, Error> {
    let shape = cfg.partition()?;
    let pi = cfg.chain()?;
    if cfg.at_ones {
        let d = demazure_dimension(&shape, &pi)?;
        return Ok(Report::new(json!({ "dimension": d }), d.to_string()));
    }
    let p = key_polynomial(&shape, &pi)?.to_string();
    Ok(Report::new(json!({ "polynomial": p }), p))
}

fn cmd_cell_of(cfg: &RunConfig) -> Result<Report, Error> {
    let f = cfg.matrix.clone().ok_or_else(|| missing("matrix"))?;
    let q = cfg.qset()?;
    let r = q_preferred_reduce(&f, &q)?;
    Ok(Report::new(
        json!({ "chain": r.chain, "pivots": r.pivots, "reduced": r.matrix }),
        format!("{}\npivots {:?}\n{}", r.chain, r.pivots, r.matrix.to_string().trim_end()),
    ))
}

fn cmd_sample_cell(cfg: &RunConfig) -> Result<Report, Error> {
    let pi = cfg.chain()?;
    let (seed, mut rng) = cfg.rng()?;
    let f = sample_cell_with(&pi, &mut rng);
    let cell = cell_of(&f, pi.qset())?;
    let ok = cell == pi;
    Ok(Report {
        json: json!({ "seed": seed, "matrix": f, "cell": cell }),
        text: format!("seed {seed}\n{}cell {cell}", f),
        verified: ok,
    })
}

fn cmd_gamma(cfg: &RunConfig) -> Result<Report, Error> {
    let pi = cfg.chain()?;
    let i = cfg.i.ok_or_else(|| missing("i"))?;
    let j = cfg.j.ok_or_else(|| missing("j"))?;
    let t = parse_rational(cfg.t.as_deref().ok_or_else(|| missing("t"))?)?;
    let g = gamma_path(&pi, i, j, &t)?;
    let cell = cell_of(&g, pi.qset())?;
    Ok(Report::new(
        json!({ "matrix": g, "cell": cell }),
        format!("{}cell {cell}", g),
    ))
}

fn cmd_verify_independence(cfg: &RunConfig) -> Result<Report, Error> {
    let shape = cfg.partition()?;
    let pi = cfg.chain()?;
    let (seed, mut rng) = cfg.rng()?;
    let r = verify_independence(&shape, &pi, cfg.samples, &mut rng)?;
    Ok(Report {
        json: json!({
            "seed": seed,
            "basis_size": r.basis_size,
            "samples": r.samples,
            "rank": r.rank,
            "ok": r.ok(),
        }),
        text: format!(
            "rank {} of {} sample rows, basis size {}: {}",
            r.rank,
            r.samples,
            r.basis_size,
            if r.ok() { "independent" } else { "NOT independent" }
        ),
        verified: r.ok(),
    })
}

fn cmd_verify_master(cfg: &RunConfig) -> Result<Report, Error> {
    let t = cfg.tabloid()?;
    let mu: Region = match (&cfg.region, &cfg.chain) {
        (Some(locs), _) => locs.iter().map(|&l| Location::from(l)).collect(),
        (None, Some(_)) => demazure_region(&t, &cfg.chain()?)?,
        (None, None) => {
            let v = first_row_violation(&t).ok_or_else(|| {
                Error::Parse("tabloid has no row violation; pass a region or a chain".into())
            })?;
            snake_region(t.shape(), v.row, v.col)?
        }
    };
    let (seed, mut rng) = cfg.rng()?;
    let samples = cfg.samples.unwrap_or(20);
    let checks = verify_master(&t, &mu, samples, &mut rng)?;
    let holds = checks.iter().filter(|c| c.holds).count();
    let mut signs: Vec<i32> = checks.iter().filter_map(|c| c.sign).collect();
    signs.sort_unstable();
    signs.dedup();
    let ok = holds == samples && signs.len() <= 1;
    Ok(Report {
        json: json!({
            "seed": seed,
            "region": mu.iter().collect::<Vec<_>>(),
            "samples": samples,
            "holds": holds,
            "signs": signs,
            "ok": ok,
        }),
        text: format!("region {mu}: identity held at {holds} of {samples} matrices, signs {signs:?}"),
        verified: ok,
    })
}

fn cmd_verify_vanishing(cfg: &RunConfig) -> Result<Report, Error> {
    let shape = cfg.partition()?;
    let pi = cfg.chain()?;
    let (seed, mut rng) = cfg.rng()?;
    let samples = cfg.samples.unwrap_or(50);
    let r = verify_vanishing(&shape, &pi, samples, &mut rng)?;
    Ok(Report {
        json: json!({
            "seed": seed,
            "samples": r.samples,
            "key_nonzero": r.key_nonzero,
            "excluded": r.excluded,
            "excluded_nonzero": r.excluded_nonzero,
            "ok": r.ok(),
        }),
        text: format!(
            "λ-key monomial nonzero at {} of {} cell samples; {} excluded monomials, {} nonzero values on the variety",
            r.key_nonzero, r.samples, r.excluded, r.excluded_nonzero
        ),
        verified: r.ok(),
    })
}
