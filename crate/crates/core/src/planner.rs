//! Numeric sequential parametrized motion planner on sphere fibres.
//!
//! Given `r` unit vectors in one fibre of a sphere bundle (presented in an
//! orthonormal trivialization) the planner emits `r-1` continuous paths
//! from the first point to each of the others:
//!
//! * normalized linear interpolation when the target is not antipodal to
//!   the start, and
//! * the exact great circle through a chosen orthonormal complement when
//!   it is.
//!
//! Which partition piece a configuration lands in is the number of
//! antipodal targets plus the index of the start point's piece in a
//! [`StiefelSectionTable`]; with a single-piece table (a global
//! orthonormal-frame section, e.g. from a complex structure) the piece
//! index is at most `r - 1`.
//!
//! The antipodal set is decided numerically inside a tolerance band; see
//! [`tol`] for the constants and their rationale.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Tolerances for the numeric planner.
///
/// The underlying construction is exact-topological; a floating-point
/// realization has to band the measure-zero antipodal set.
pub mod tol {
    /// Accepted deviation of a point or path sample from unit norm.
    /// Normalized interpolation and the great-circle formula are exact up
    /// to a few ulps, so 1e-9 is generous.
    pub const UNIT_NORM: f64 = 1e-9;

    /// Accepted endpoint mismatch `|path(0) - start|`, `|path(1) - target|`.
    pub const ENDPOINT: f64 = 1e-9;

    /// Targets within this distance of the exact antipode are routed along
    /// the great circle. Inside the band the interpolation denominator
    /// drops below ~5e-7, outside it stays above it.
    pub const ANTIPODAL: f64 = 1e-6;

    /// Hard floor for the interpolation denominator; with the default
    /// antipodal band this is unreachable, so hitting it means the caller
    /// shrank the band too far.
    pub const DENOMINATOR: f64 = 1e-12;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub unit_norm: f64,
    pub endpoint: f64,
    pub antipodal: f64,
    pub denominator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unit_norm: tol::UNIT_NORM,
            endpoint: tol::ENDPOINT,
            antipodal: tol::ANTIPODAL,
            denominator: tol::DENOMINATOR,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PlannerParams {
    pub tolerances: Tolerances,
    /// Points stored per path (uniform in `t`, endpoints included).
    pub samples_per_path: usize,
}

impl Default for PlannerParams {
    fn default() -> Self {
        PlannerParams {
            tolerances: Tolerances::default(),
            samples_per_path: 65,
        }
    }
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("complex-structure section needs even fibre dimension, got q = {0}")]
    OddRankComplexStructure(usize),
    #[error("need at least two points in a configuration, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} has {got} coordinates, expected q = {expected}")]
    WrongDimension {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("point {index} has norm {norm}, not unit within tolerance")]
    NotUnit { index: usize, norm: f64 },
    #[error("section table does not cover the start point")]
    Uncovered,
    #[error("section output at piece {piece} is not an orthonormal complement")]
    SectionInvalid { piece: usize },
    #[error(
        "denominator underflow on path to point {target}: \
         |(1-t) e1 + t e| = {value:.3e} at t = {t}; tighten the antipodal tolerance"
    )]
    DenominatorUnderflow { target: usize, t: f64, value: f64 },
    #[error("an open cover needs at least one patch")]
    EmptyCover,
    #[error("samples_per_path must be at least 2")]
    TooFewSamples,
}

// small dense-vector helpers; dimensions are tiny and vary at runtime
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn combined(a: &[f64], ca: f64, b: &[f64], cb: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| ca * x + cb * y).collect()
}

/// `r` unit vectors in one fibre, tagged with the fibre they live in.
#[derive(Clone, Debug, Serialize)]
pub struct FiberConfig {
    pub q: usize,
    pub points: Vec<Vec<f64>>,
    pub fiber_id: String,
}

impl FiberConfig {
    pub fn new(q: usize, points: Vec<Vec<f64>>, fiber_id: impl Into<String>) -> Self {
        FiberConfig {
            q,
            points,
            fiber_id: fiber_id.into(),
        }
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    fn validate(&self, tolerances: &Tolerances) -> Result<(), PlanError> {
        if self.points.len() < 2 {
            return Err(PlanError::TooFewPoints(self.points.len()));
        }
        for (index, p) in self.points.iter().enumerate() {
            if p.len() != self.q {
                return Err(PlanError::WrongDimension {
                    index,
                    got: p.len(),
                    expected: self.q,
                });
            }
            let n = norm(p);
            if (n - 1.0).abs() > tolerances.unit_norm {
                return Err(PlanError::NotUnit { index, norm: n });
            }
        }
        Ok(())
    }
}

type MembershipFn = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;
type SectionFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// One piece of a partition of the sphere-bundle total space together with
/// a continuous orthonormal-complement section on it.
#[derive(Clone)]
pub struct SectionPiece {
    pub membership: MembershipFn,
    pub section: SectionFn,
}

/// Ordered disjoint pieces jointly covering the fibre domain; `k` is the
/// number of pieces minus one.
#[derive(Clone)]
pub struct StiefelSectionTable {
    pieces: Vec<SectionPiece>,
}

impl StiefelSectionTable {
    pub fn new(pieces: Vec<SectionPiece>) -> Self {
        StiefelSectionTable { pieces }
    }

    pub fn k(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Index of the piece containing `e`.
    pub fn piece_of(&self, e: &[f64]) -> Option<usize> {
        self.pieces.iter().position(|p| (p.membership)(e))
    }

    pub fn section_at(&self, piece: usize, e: &[f64]) -> Vec<f64> {
        (self.pieces[piece].section)(e)
    }
}

/// The single-piece table coming from the standard complex structure:
/// coordinate pairs `(x1, y1, ...)` map to `(-y1, x1, ...)`, a fibrewise
/// 90-degree rotation, so the section is everywhere orthonormal.
pub fn complex_section_table(q: usize) -> Result<StiefelSectionTable, PlanError> {
    if q % 2 != 0 {
        return Err(PlanError::OddRankComplexStructure(q));
    }
    let section: SectionFn = Arc::new(move |e: &[f64]| {
        let mut out = vec![0.0; e.len()];
        for pair in 0..e.len() / 2 {
            out[2 * pair] = -e[2 * pair + 1];
            out[2 * pair + 1] = e[2 * pair];
        }
        out
    });
    Ok(StiefelSectionTable::new(vec![SectionPiece {
        membership: Arc::new(|_| true),
        section,
    }]))
}

/// Turn an overlapping open cover with sections into a disjoint table by
/// the covering-multiplicity rule: a point covered by `m` of the `k+1`
/// patches lands in piece `k+1-m`, and uses the first patch containing it.
/// Points deep in the overlap come first; pieces later in the order close
/// up against earlier ones.
pub fn table_from_open_cover(cover: Vec<SectionPiece>) -> Result<StiefelSectionTable, PlanError> {
    if cover.is_empty() {
        return Err(PlanError::EmptyCover);
    }
    let cover = Arc::new(cover);
    let k = cover.len() - 1;
    let pieces = (0..=k)
        .map(|i| {
            let multiplicity = k + 1 - i;
            let cover_m = Arc::clone(&cover);
            let cover_s = Arc::clone(&cover);
            SectionPiece {
                membership: Arc::new(move |e: &[f64]| {
                    cover_m.iter().filter(|p| (p.membership)(e)).count() == multiplicity
                }),
                section: Arc::new(move |e: &[f64]| {
                    let patch = cover_s
                        .iter()
                        .find(|p| (p.membership)(e))
                        .expect("membership implies a covering patch");
                    (patch.section)(e)
                }),
            }
        })
        .collect();
    Ok(StiefelSectionTable::new(pieces))
}

/// How one path is generated; enough data to evaluate it at any `t`.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathKind {
    /// `((1-t) from + t to) / |(1-t) from + t to|`
    Interpolation { from: Vec<f64>, to: Vec<f64> },
    /// `cos(pi t) from + sin(pi t) orthogonal`
    GreatCircle { from: Vec<f64>, orthogonal: Vec<f64> },
}

/// A planned path to the configuration point with (1-based) index
/// `target`, with uniform samples `[t, x_1, ..., x_q]`.
#[derive(Clone, Debug, Serialize)]
pub struct PlannedPath {
    pub target: usize,
    #[serde(flatten)]
    pub kind: PathKind,
    pub samples: Vec<Vec<f64>>,
}

impl PlannedPath {
    pub fn eval(&self, t: f64) -> Vec<f64> {
        let mut out = Vec::new();
        self.eval_into(t, &mut out);
        out
    }

    /// Evaluate into a reused buffer.
    pub fn eval_into(&self, t: f64, out: &mut Vec<f64>) {
        out.clear();
        match &self.kind {
            PathKind::Interpolation { from, to } => {
                out.extend(
                    from.iter()
                        .zip(to)
                        .map(|(a, b)| (1.0 - t) * a + t * b),
                );
                let n = norm(out);
                for x in out.iter_mut() {
                    *x /= n;
                }
            }
            PathKind::GreatCircle { from, orthogonal } => {
                let angle = std::f64::consts::PI * t;
                let (sin, cos) = angle.sin_cos();
                out.extend(
                    from.iter()
                        .zip(orthogonal)
                        .map(|(a, b)| cos * a + sin * b),
                );
            }
        }
    }
}

/// Output of the planner for one configuration.
#[derive(Clone, Debug, Serialize)]
pub struct PlanResult {
    pub config: FiberConfig,
    /// 1-based indices `j` of the targets antipodal to the start point.
    pub antipodal: Vec<usize>,
    pub piece_index: usize,
    pub paths: Vec<PlannedPath>,
}

/// Plan with default tolerances and sampling.
pub fn plan(config: &FiberConfig, table: &StiefelSectionTable) -> Result<PlanResult, PlanError> {
    plan_with(config, table, &PlannerParams::default())
}

pub fn plan_with(
    config: &FiberConfig,
    table: &StiefelSectionTable,
    params: &PlannerParams,
) -> Result<PlanResult, PlanError> {
    if params.samples_per_path < 2 {
        return Err(PlanError::TooFewSamples);
    }
    let tolerances = &params.tolerances;
    config.validate(tolerances)?;
    let e1 = &config.points[0];
    let piece = table.piece_of(e1).ok_or(PlanError::Uncovered)?;

    let antipodal: Vec<usize> = (1..config.points.len())
        .filter(|&idx| {
            let sum = combined(e1, 1.0, &config.points[idx], 1.0);
            norm(&sum) <= tolerances.antipodal
        })
        .map(|idx| idx + 1)
        .collect();

    // the section is consulted only when some target is antipodal
    let mut orthogonal = None;
    if !antipodal.is_empty() {
        let candidate = table.section_at(piece, e1);
        if (norm(&candidate) - 1.0).abs() > tolerances.unit_norm
            || dot(&candidate, e1).abs() > tolerances.unit_norm
        {
            return Err(PlanError::SectionInvalid { piece });
        }
        orthogonal = Some(candidate);
    }

    let grid: Vec<f64> = (0..params.samples_per_path)
        .map(|s| s as f64 / (params.samples_per_path - 1) as f64)
        .collect();

    let mut paths = Vec::with_capacity(config.points.len() - 1);
    for idx in 1..config.points.len() {
        let target = idx + 1;
        let kind = if antipodal.contains(&target) {
            PathKind::GreatCircle {
                from: e1.clone(),
                orthogonal: orthogonal.clone().expect("computed when antipodal"),
            }
        } else {
            // the interpolant must stay away from the origin on the grid
            for &t in &grid {
                let den = norm(&combined(e1, 1.0 - t, &config.points[idx], t));
                if den < tolerances.denominator {
                    return Err(PlanError::DenominatorUnderflow {
                        target,
                        t,
                        value: den,
                    });
                }
            }
            PathKind::Interpolation {
                from: e1.clone(),
                to: config.points[idx].clone(),
            }
        };
        let probe = PlannedPath {
            target,
            kind,
            samples: Vec::new(),
        };
        let samples = grid
            .iter()
            .map(|&t| {
                let mut row = Vec::with_capacity(config.q + 1);
                row.push(t);
                row.extend(probe.eval(t));
                row
            })
            .collect();
        paths.push(PlannedPath { samples, ..probe });
    }

    let piece_index = if antipodal.is_empty() {
        0
    } else {
        antipodal.len() + piece
    };
    Ok(PlanResult {
        config: config.clone(),
        antipodal,
        piece_index,
        paths,
    })
}

fn random_unit_vector(rng: &mut ChaCha8Rng, q: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..q)
            .map(|_| {
                let g: f64 = rng.sample(rand_distr::StandardNormal);
                g
            })
            .collect();
        let n = norm(&v);
        if n > 1e-9 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Plan `samples` uniformly random configurations in one fibre and
/// histogram the piece indices. Deterministic for a fixed seed regardless
/// of the worker count: sample `i` uses stream `i` of a counter-based
/// generator. `TC_SPHERE_THREADS` caps the worker pool.
pub fn piece_statistics(
    samples: usize,
    q: usize,
    r: usize,
    table: &StiefelSectionTable,
    seed: u64,
) -> Result<Vec<u64>, PlanError> {
    piece_statistics_with(samples, q, r, table, seed, &PlannerParams::default())
}

pub fn piece_statistics_with(
    samples: usize,
    q: usize,
    r: usize,
    table: &StiefelSectionTable,
    seed: u64,
    params: &PlannerParams,
) -> Result<Vec<u64>, PlanError> {
    if r < 2 {
        return Err(PlanError::TooFewPoints(r));
    }
    let bins = table.k() + r;
    let light = PlannerParams {
        samples_per_path: 2,
        ..*params
    };
    let run = |range: std::ops::Range<usize>| -> Result<Vec<u64>, PlanError> {
        let mut histogram = vec![0u64; bins];
        for i in range {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let points = (0..r).map(|_| random_unit_vector(&mut rng, q)).collect();
            let config = FiberConfig::new(q, points, "stats");
            let result = plan_with(&config, table, &light)?;
            histogram[result.piece_index] += 1;
        }
        Ok(histogram)
    };

    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };

    let workers = std::env::var("TC_SPHERE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0);
    let chunk = 4096usize;
    let ranges: Vec<std::ops::Range<usize>> = (0..samples)
        .step_by(chunk)
        .map(|start| start..(start + chunk).min(samples))
        .collect();
    let fold = |ranges: Vec<std::ops::Range<usize>>| -> Result<Vec<u64>, PlanError> {
        use rayon::prelude::*;
        ranges
            .into_par_iter()
            .map(run)
            .try_reduce(|| vec![0u64; bins], |a, b| Ok(merge(a, b)))
    };
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(|| fold(ranges)),
        None => fold(ranges),
    }
}
