//! Timing harness for distance, retraction and inverse retraction.
//!
//! Each (manifold, operation) pair runs on one fixed set of random inputs.
//! The loop is repeated `10^N` times for the smallest `N` whose run takes at
//! least `min_seconds`, after one warmup run of that same loop.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use manifolds::{
    Euclidean, InverseRetractionMethod, Manifold, ManifoldError, PowerManifold, RetractionMethod,
    Rotations, Sphere, SymmetricPositiveDefinite,
};
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest exponent `N` tried for `10^N` repetitions.
pub const MAX_EXPONENT: u32 = 9;

/// Results are written round-robin into this many preallocated slots.
const ACCUMULATOR_LEN: usize = 8;

const POINT_TOL: f64 = 1e-9;

const HEADER: [&str; 5] = ["manifold", "op", "reps", "total_seconds", "per_op_us"];

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{manifold}/{op}: 10^{MAX_EXPONENT} repetitions finished below the minimum time")]
    TimerResolution { manifold: ManifoldId, op: OpId },
    #[error("{manifold}/{op}: {source}")]
    Manifold {
        manifold: ManifoldId,
        op: OpId,
        source: ManifoldError,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ManifoldId {
    #[serde(rename = "euclidean3")]
    Euclidean3,
    #[serde(rename = "so3")]
    So3,
    #[serde(rename = "spd3")]
    Spd3,
    #[serde(rename = "spd3_power_128x128")]
    Spd3Power128x128,
    #[serde(rename = "sphere2")]
    Sphere2,
}

impl ManifoldId {
    pub const ALL: [ManifoldId; 5] = [
        ManifoldId::Euclidean3,
        ManifoldId::So3,
        ManifoldId::Spd3,
        ManifoldId::Spd3Power128x128,
        ManifoldId::Sphere2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ManifoldId::Euclidean3 => "euclidean3",
            ManifoldId::So3 => "so3",
            ManifoldId::Spd3 => "spd3",
            ManifoldId::Spd3Power128x128 => "spd3_power_128x128",
            ManifoldId::Sphere2 => "sphere2",
        }
    }

    fn index(self) -> u64 {
        Self::ALL.iter().position(|m| *m == self).unwrap() as u64
    }

    /// The manifold this id names.
    pub fn build(self) -> Box<dyn Manifold<Point = DMatrix<f64>>> {
        match self {
            ManifoldId::Euclidean3 => Box::new(Euclidean::new(3)),
            ManifoldId::So3 => Box::new(Rotations::new(3)),
            ManifoldId::Spd3 => Box::new(SymmetricPositiveDefinite::new(3)),
            ManifoldId::Spd3Power128x128 => Box::new(PowerManifold::new(
                SymmetricPositiveDefinite::new(3),
                vec![128, 128],
            )),
            ManifoldId::Sphere2 => Box::new(Sphere::new(2)),
        }
    }
}

impl fmt::Display for ManifoldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ManifoldId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Self::ALL.iter().map(|m| m.as_str()).collect();
                format!(
                    "unknown manifold '{s}' (expected one of {})",
                    known.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpId {
    Distance,
    Retract,
    InverseRetract,
}

impl OpId {
    pub const ALL: [OpId; 3] = [OpId::Distance, OpId::Retract, OpId::InverseRetract];

    pub fn as_str(self) -> &'static str {
        match self {
            OpId::Distance => "distance",
            OpId::Retract => "retract",
            OpId::InverseRetract => "inverse_retract",
        }
    }

    fn index(self) -> u64 {
        Self::ALL.iter().position(|o| *o == self).unwrap() as u64
    }
}

impl fmt::Display for OpId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OpId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| {
                format!("unknown operation '{s}' (expected distance, retract or inverse_retract)")
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub manifolds: Vec<ManifoldId>,
    pub ops: Vec<OpId>,
    pub min_seconds: f64,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            manifolds: ManifoldId::ALL.to_vec(),
            ops: OpId::ALL.to_vec(),
            min_seconds: 1.0,
            seed: 42,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if !(self.min_seconds > 0.0) || !self.min_seconds.is_finite() {
            return Err(BenchError::Config(format!(
                "min_seconds must be positive and finite, got {}",
                self.min_seconds
            )));
        }
        if self.manifolds.is_empty() || self.ops.is_empty() {
            return Err(BenchError::Config(
                "no manifolds or no operations selected".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub manifold: ManifoldId,
    pub op: OpId,
    pub reps: u64,
    pub total_seconds: f64,
    #[serde(rename = "per_op_us")]
    pub per_op_microseconds: f64,
}

impl BenchRecord {
    fn new(manifold: ManifoldId, op: OpId, reps: u64, total_seconds: f64) -> Self {
        Self {
            manifold,
            op,
            reps,
            total_seconds,
            per_op_microseconds: total_seconds * 1e6 / reps as f64,
        }
    }
}

/// Operands shared by every repetition: `q = exp_p(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchInputs {
    pub p: DMatrix<f64>,
    pub x: DMatrix<f64>,
    pub q: DMatrix<f64>,
}

/// Random operands for one (manifold, operation) pair. The stream depends
/// only on `seed` and the pair, not on which other pairs are selected.
///
/// `x` is rescaled to `0.5 √d` for manifold dimension `d`, capped at a
/// quarter of the injectivity radius.
pub fn generate_inputs(
    id: ManifoldId,
    op: OpId,
    manifold: &dyn Manifold<Point = DMatrix<f64>>,
    seed: u64,
) -> Result<BenchInputs, ManifoldError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id.index() * OpId::ALL.len() as u64 + op.index());
    let p = manifold.rand_point(&mut rng);
    let mut x = manifold.rand_tangent(&p, &mut rng);
    let target = (0.5 * (manifold.manifold_dimension() as f64).sqrt())
        .min(manifold.injectivity_radius() / 4.0);
    x *= target / manifold.norm(&p, &x);
    let q = manifold.exp(&p, &x)?;
    manifold.check_point(&p, POINT_TOL)?;
    manifold.check_tangent(&p, &x, POINT_TOL)?;
    manifold.check_point(&q, POINT_TOL)?;
    Ok(BenchInputs { p, x, q })
}

/// Runs `body(i)` for `i in 0..reps` and returns the elapsed wall time.
fn timed<F: FnMut(usize)>(reps: u64, body: &mut F) -> f64 {
    let start = Instant::now();
    for i in 0..reps as usize {
        body(i);
    }
    start.elapsed().as_secs_f64()
}

/// Finds the smallest `10^N` (`N ≥ 1`) whose loop takes at least
/// `min_seconds`, runs that loop once more as the measurement and returns
/// `(reps, seconds)`. Returns `None` if `10^MAX_EXPONENT` is still too fast.
pub fn measure<F: FnMut(usize)>(min_seconds: f64, mut body: F) -> Option<(u64, f64)> {
    let mut reps = 10u64;
    let mut warmed_up = false;
    loop {
        let seconds = timed(reps, &mut body);
        if seconds >= min_seconds {
            if warmed_up {
                return Some((reps, seconds));
            }
            warmed_up = true;
            continue;
        }
        if reps == 10u64.pow(MAX_EXPONENT) {
            return None;
        }
        reps *= 10;
        warmed_up = false;
    }
}

fn bench_pair(
    op: OpId,
    manifold: &dyn Manifold<Point = DMatrix<f64>>,
    inputs: &BenchInputs,
    min_seconds: f64,
) -> Result<Option<(u64, f64)>, ManifoldError> {
    let BenchInputs { p, x, q } = inputs;
    let measured = match op {
        OpId::Distance => {
            let mut acc = [0.0; ACCUMULATOR_LEN];
            let r = measure(min_seconds, |i| {
                acc[i % ACCUMULATOR_LEN] = manifold.distance(black_box(p), black_box(q));
            });
            black_box(&acc);
            r
        }
        OpId::Retract => {
            let mut acc = vec![manifold.allocate(); ACCUMULATOR_LEN];
            manifold.retract_mut(&mut acc[0], p, x, RetractionMethod::Exponential)?;
            let r = measure(min_seconds, |i| {
                let _ = manifold.retract_mut(
                    &mut acc[i % ACCUMULATOR_LEN],
                    black_box(p),
                    black_box(x),
                    RetractionMethod::Exponential,
                );
            });
            black_box(&acc);
            r
        }
        OpId::InverseRetract => {
            let mut acc = vec![manifold.allocate(); ACCUMULATOR_LEN];
            manifold.inverse_retract_mut(
                &mut acc[0],
                p,
                q,
                InverseRetractionMethod::Logarithmic,
            )?;
            let r = measure(min_seconds, |i| {
                let _ = manifold.inverse_retract_mut(
                    &mut acc[i % ACCUMULATOR_LEN],
                    black_box(p),
                    black_box(q),
                    InverseRetractionMethod::Logarithmic,
                );
            });
            black_box(&acc);
            r
        }
    };
    Ok(measured)
}

/// Times every selected (manifold, operation) pair, manifolds outermost.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    run_bench_with(cfg, |_| {})
}

/// Like [`run_bench`], calling `on_record` as each record completes.
pub fn run_bench_with(
    cfg: &BenchConfig,
    mut on_record: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>, BenchError> {
    cfg.validate()?;
    let mut records = Vec::new();
    for &id in &cfg.manifolds {
        let manifold = id.build();
        for &op in &cfg.ops {
            let wrap = |source| BenchError::Manifold {
                manifold: id,
                op,
                source,
            };
            let inputs = generate_inputs(id, op, manifold.as_ref(), cfg.seed).map_err(wrap)?;
            let (reps, seconds) = bench_pair(op, manifold.as_ref(), &inputs, cfg.min_seconds)
                .map_err(wrap)?
                .ok_or(BenchError::TimerResolution { manifold: id, op })?;
            let record = BenchRecord::new(id, op, reps, seconds);
            on_record(&record);
            records.push(record);
        }
    }
    Ok(records)
}

/// Writes the header `manifold,op,reps,total_seconds,per_op_us` and one row
/// per record.
pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<(), BenchError> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    writer.write_record(HEADER)?;
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[BenchRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, records).expect("writing to memory does not fail");
    String::from_utf8(buf).expect("csv output is ASCII")
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>, BenchError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(HEADER) {
        return Err(BenchError::Config(format!(
            "unexpected csv header {header:?}"
        )));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(BenchError::from))
        .collect()
}
