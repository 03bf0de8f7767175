//! Counterexample search for the Seymour inequality over general reflexive
//! relations on `n` labelled vertices.
//!
//! Instances are encoded as a bit pattern over the off-diagonal pairs
//! `(u, v)`, `u ≠ v`, in row-major order; the diagonal is always present.
//! Random instances are generated per index from a ChaCha stream keyed by
//! `(seed, index)`, so the report does not depend on the worker count.

use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::seymour_table;
use crate::error::{Error, Result};
use crate::io::write_edge_list;
use crate::relation::Relation;

pub const EXHAUSTIVE_MAX_N: usize = 5;
pub const RANDOM_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum JPolicy {
    /// Every `1 ≤ j ≤ n`.
    All,
    List(Vec<usize>),
}

impl JPolicy {
    pub fn resolve(&self, n: usize) -> Vec<usize> {
        match self {
            JPolicy::All => (1..=n).collect(),
            JPolicy::List(js) => {
                let mut js = js.clone();
                js.sort_unstable();
                js.dedup();
                js
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n: usize,
    pub j_policy: JPolicy,
    pub mode: ScanMode,
    /// Worker cap; `None` uses the rayon default.
    pub threads: Option<usize>,
    /// Counterexamples are written here as edge lists the moment they are found.
    pub alarm_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub mode: String,
    pub n: usize,
    pub j_policy: Vec<usize>,
    pub checked: u64,
    /// Edge-list encodings, sorted by instance code.
    pub counterexamples: Vec<String>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    pub version: String,
}

impl ScanReport {
    /// Equality ignoring the wall-clock field.
    pub fn same_content(&self, other: &ScanReport) -> bool {
        ScanReport { elapsed_ms: 0, ..self.clone() } == ScanReport { elapsed_ms: 0, ..other.clone() }
    }
}

fn off_diagonal_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
}

/// Reflexive relation whose off-diagonal pairs are the set bits of `code`.
pub fn decode_instance(n: usize, code: u128) -> Relation {
    let mut rel = Relation::identity(n);
    for (k, (u, v)) in off_diagonal_pairs(n).enumerate() {
        if code >> k & 1 == 1 {
            rel.add_edge(u, v).expect("pair in range");
        }
    }
    rel
}

/// Inverse of [`decode_instance`]; loops are ignored. Requires `n(n-1) ≤ 128`.
pub fn encode_instance(rel: &Relation) -> u128 {
    off_diagonal_pairs(rel.n())
        .enumerate()
        .filter(|&(_, (u, v))| rel.has_edge(u, v))
        .fold(0u128, |acc, (k, _)| acc | 1 << k)
}

fn random_code(n: usize, seed: u64, index: u64) -> u128 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let p = f64::from(rng.gen_range(1u32..=9)) / 10.0;
    let mut code = 0u128;
    for k in 0..n * (n - 1) {
        if rng.gen_bool(p) {
            code |= 1 << k;
        }
    }
    code
}

fn violates(rel: &Relation, js: &[usize], jmax: usize) -> bool {
    let table = seymour_table(rel, jmax);
    js.iter().any(|&j| !table[j].iter().any(|d| d.any()))
}

fn raise_alarm(dir: &Option<PathBuf>, n: usize, code: u128, rel: &Relation) {
    if let Some(dir) = dir {
        let path = dir.join(format!("seymour-counterexample-n{n}-{code:x}.rel"));
        let body = format!(
            "# reflexive relation violating the Seymour inequality for some j\n{}",
            write_edge_list(rel)
        );
        if let Err(e) = std::fs::write(&path, body) {
            eprintln!("failed to write counterexample to {}: {e}", path.display());
        }
    }
}

pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    let n = config.n;
    if n == 0 {
        return Err(Error::domain("scan needs n ≥ 1"));
    }
    let limit = match config.mode {
        ScanMode::Exhaustive => EXHAUSTIVE_MAX_N,
        ScanMode::Random { .. } => RANDOM_MAX_N,
    };
    if n > limit {
        return Err(Error::Size {
            what: "conjecture scan",
            n,
            limit,
            hint: match config.mode {
                ScanMode::Exhaustive => "; exhaustive mode enumerates 2^(n(n-1)) relations, use random mode",
                ScanMode::Random { .. } => "",
            },
        });
    }
    let js = config.j_policy.resolve(n);
    let jmax = js.iter().copied().max().unwrap_or(0);
    let started = Instant::now();

    let check_code = |code: u128| -> Option<u128> {
        let rel = decode_instance(n, code);
        violates(&rel, &js, jmax).then(|| {
            raise_alarm(&config.alarm_dir, n, code, &rel);
            code
        })
    };

    let run = || -> (u64, Vec<u128>) {
        match config.mode {
            ScanMode::Exhaustive => {
                let total = 1u64 << (n * (n - 1));
                let found = (0..total).into_par_iter().filter_map(|c| check_code(c as u128)).collect();
                (total, found)
            }
            ScanMode::Random { samples, seed } => {
                let found = (0..samples)
                    .into_par_iter()
                    .filter_map(|i| check_code(random_code(n, seed, i)))
                    .collect();
                (samples, found)
            }
        }
    };

    let (checked, mut found) = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::domain(format!("cannot start {t} workers: {e}")))?
            .install(run),
        None => run(),
    };
    found.sort_unstable();
    found.dedup();

    let (mode, seed) = match config.mode {
        ScanMode::Exhaustive => ("exhaustive", None),
        ScanMode::Random { seed, .. } => ("random", Some(seed)),
    };
    Ok(ScanReport {
        mode: mode.to_string(),
        n,
        j_policy: js,
        checked,
        counterexamples: found.into_iter().map(|c| write_edge_list(&decode_instance(n, c))).collect(),
        seed,
        elapsed_ms: started.elapsed().as_millis() as u64,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}
