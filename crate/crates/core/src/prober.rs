//! Hill climbing with restarts over edge-antipodal rational point sets.
//!
//! A state is always an exactly verified edge-antipodal vertex set of full
//! affine dimension. Each iteration proposes one move (add, delete or
//! perturb a point); infeasible proposals are discarded and feasible ones
//! are kept when they score no worse.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::antipodality::{antipodal_pair, is_edge_antipodal, theorem_bound, PairDistances};
use crate::constructions::{generate, FamilySpec};
use crate::error::{Error, Result};
use crate::exact::{int, ratio, Scalar, Vector};
use crate::norms::Norm;
use crate::polytope::VertexSet;

/// Largest dimension the prober accepts; restart 0 is the `dim`-cube.
pub const MAX_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    MaxVertices,
    MaxLambdaRelative,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::MaxVertices => "max-vertices",
            Objective::MaxLambdaRelative => "max-lambda",
        }
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-vertices" => Ok(Objective::MaxVertices),
            "max-lambda" | "max-lambda-relative" => Ok(Objective::MaxLambdaRelative),
            _ => Err(Error::InvalidConfig(format!("unknown objective '{s}'"))),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveWeights {
    pub add_point: u32,
    pub delete_point: u32,
    pub perturb_point: u32,
}

impl Default for MoveWeights {
    fn default() -> Self {
        MoveWeights {
            add_point: 3,
            delete_point: 1,
            perturb_point: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub objective: Objective,
    pub iterations: usize,
    pub seed: u64,
    pub weights: MoveWeights,
    /// Numerators and denominators of random coordinates and offsets stay
    /// within this bound.
    pub height_bound: u32,
    pub restarts: usize,
}

impl SearchConfig {
    pub fn new(dim: usize, objective: Objective, iterations: usize, seed: u64) -> Self {
        SearchConfig {
            dim,
            objective,
            iterations,
            seed,
            weights: MoveWeights::default(),
            height_bound: 4,
            restarts: 4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.into()));
        if self.dim < 1 || self.dim > MAX_DIM {
            return bad(&format!("dim must be in 1..={MAX_DIM}"));
        }
        if self.iterations < 1 {
            return bad("iterations must be at least 1");
        }
        if self.restarts < 1 {
            return bad("restarts must be at least 1");
        }
        if self.height_bound < 1 {
            return bad("height bound must be at least 1");
        }
        let w = self.weights;
        if w.add_point == 0 && w.delete_point == 0 && w.perturb_point == 0 {
            return bad("move weights are all zero");
        }
        Ok(())
    }
}

/// A scored feasible state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScorePoint {
    pub iteration: usize,
    #[serde(with = "crate::exact::scalar_string")]
    pub score: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestartSummary {
    pub index: usize,
    /// Family or `random_simplex` the restart started from.
    pub start: String,
    #[serde(with = "crate::exact::scalar_string")]
    pub best_score: Scalar,
    pub accepted_moves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub best_instance: VertexSet,
    #[serde(with = "crate::exact::scalar_string")]
    pub best_score: Scalar,
    pub best_restart: usize,
    /// Strict improvements of the winning restart, starting at iteration 0.
    pub feasible_history: Vec<ScorePoint>,
    pub restarts: Vec<RestartSummary>,
    /// `(d/2 + 1)^d`.
    #[serde(with = "crate::exact::scalar_string")]
    pub vertex_bound: Scalar,
    /// Set when some accepted state broke a proven bound. Fatal: it means the
    /// exact predicates disagree with the theory.
    pub bound_violation: Option<String>,
}

struct Restart {
    summary: RestartSummary,
    best: VertexSet,
    history: Vec<ScorePoint>,
    violation: Option<String>,
}

/// Runs the search; identical configs give identical reports.
pub fn probe(config: &SearchConfig) -> Result<SearchReport> {
    config.validate()?;
    let runs = (0..config.restarts)
        .into_par_iter()
        .map(|k| run_restart(config, k))
        .collect::<Result<Vec<_>>>()?;

    // Highest score wins; ties go to the lowest restart index.
    let mut winner = 0;
    for (k, r) in runs.iter().enumerate() {
        if r.summary.best_score > runs[winner].summary.best_score {
            winner = k;
        }
    }
    let best_instance = runs[winner].best.clone();
    is_edge_antipodal(&best_instance)?
        .holds
        .then_some(())
        .ok_or_else(|| Error::InvalidConfig("best instance failed re-verification".into()))?;

    let bound_violation = runs.iter().find_map(|r| r.violation.clone());
    Ok(SearchReport {
        config: config.clone(),
        best_score: runs[winner].summary.best_score.clone(),
        best_restart: winner,
        feasible_history: runs[winner].history.clone(),
        restarts: runs.iter().map(|r| r.summary.clone()).collect(),
        vertex_bound: theorem_bound(config.dim),
        bound_violation,
        best_instance,
    })
}

fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn random_scalar(rng: &mut ChaCha8Rng, bound: u32) -> Scalar {
    let b = bound as i64;
    ratio(rng.random_range(-b..=b), rng.random_range(1..=b))
}

fn start_instance(config: &SearchConfig, index: usize, rng: &mut ChaCha8Rng) -> Result<(String, VertexSet)> {
    let d = config.dim;
    if index == 0 {
        return Ok(("hypercube".into(), generate(&FamilySpec::Hypercube { dim: d })?));
    }
    if index == 1 && d >= 4 {
        let spec = FamilySpec::Talata {
            dim: d,
            eps: ratio(1, 10),
        };
        return Ok(("talata".into(), generate(&spec)?));
    }
    // Any d + 1 affinely independent points form a simplex, which is
    // antipodal.
    loop {
        let pts: Vec<Vector> = (0..=d)
            .map(|_| (0..d).map(|_| random_scalar(rng, config.height_bound)).collect())
            .collect();
        if let Ok(vs) = VertexSet::new(pts) {
            if vs.affine_dim() == d {
                return Ok(("random_simplex".into(), vs));
            }
        }
    }
}

/// Edge-antipodal, full-dimensional and in convex position. Pairs are
/// tried for a slab first; only a pair without one needs the edge test,
/// and the first such edge rejects.
fn feasible(vs: &VertexSet, d: usize) -> bool {
    if vs.affine_dim() != d || !vs.in_convex_position() {
        return false;
    }
    let n = vs.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            matches!(antipodal_pair(vs, i, j), Ok(Some(_)))
                || matches!(vs.is_edge(i, j), Ok(false))
        })
    })
}

fn score(vs: &VertexSet, objective: Objective) -> Result<Scalar> {
    Ok(match objective {
        Objective::MaxVertices => int(vs.len() as i64),
        Objective::MaxLambdaRelative => {
            let norm = Norm::relative(vs)?;
            PairDistances::compute(vs, &norm)?
                .lambda()
                .expect("feasible states have d + 1 ≥ 2 points")
                .ratio_squared
        }
    })
}

/// Bounds every feasible state must satisfy: the vertex count bound and,
/// since an edge-antipodal set is subequilateral in its relative norm,
/// `λ(V, ‖·‖_P) ≤ d/2`.
fn check_bounds(vs: &VertexSet, objective: Objective, s: &Scalar, d: usize) -> Option<String> {
    let bound = theorem_bound(d);
    if int(vs.len() as i64) > bound {
        return Some(format!(
            "{} vertices exceed (d/2 + 1)^d = {}",
            vs.len(),
            crate::exact::format_scalar(&bound)
        ));
    }
    if objective == Objective::MaxLambdaRelative && int(4) * s > int((d * d) as i64) {
        return Some(format!(
            "relative λ² = {} exceeds d²/4",
            crate::exact::format_scalar(s)
        ));
    }
    None
}

fn coordinate_ok(v: &Vector, limit: &Scalar, max_den: &Scalar) -> bool {
    v.iter()
        .all(|c| &c.abs() <= limit && &Scalar::from_integer(c.denom().clone()) <= max_den)
}

/// A new point: either a parallelogram completion `p_a + p_b − p_c` of
/// current points or a random rational point near the current hull.
fn propose_point(vs: &VertexSet, rng: &mut ChaCha8Rng, h: u32) -> Vector {
    let m = vs.len();
    if rng.random_bool(0.5) && m >= 3 {
        let a = rng.random_range(0..m);
        let b = rng.random_range(0..m);
        let c = rng.random_range(0..m);
        return &(vs.point(a) + vs.point(b)) - vs.point(c);
    }
    let anchor = vs.point(rng.random_range(0..m));
    let offset: Vector = (0..vs.ambient_dim()).map(|_| random_scalar(rng, h)).collect();
    anchor + &offset
}

fn propose(vs: &VertexSet, rng: &mut ChaCha8Rng, moves: &WeightedIndex<u32>, config: &SearchConfig) -> Option<VertexSet> {
    let m = vs.len();
    let d = config.dim;
    let h = config.height_bound;
    let limit = int(4 * h as i64 + 4);
    let max_den = int((h as i64) * (h as i64));
    let mut pts = vs.points().to_vec();
    match moves.sample(rng) {
        0 => {
            let p = propose_point(vs, rng, h);
            if !coordinate_ok(&p, &limit, &max_den) {
                return None;
            }
            pts.push(p);
        }
        1 => {
            if m <= d + 1 {
                return None;
            }
            pts.remove(rng.random_range(0..m));
        }
        _ => {
            let k = rng.random_range(0..m);
            let offset: Vector = (0..d).map(|_| random_scalar(rng, h)).collect();
            let p = if rng.random_bool(0.5) {
                &pts[k] + &offset.scale(&ratio(1, h as i64))
            } else {
                let rest = vs.subset(&(0..m).filter(|&l| l != k).collect::<Vec<_>>()).ok()?;
                propose_point(&rest, rng, h)
            };
            if !coordinate_ok(&p, &limit, &max_den) {
                return None;
            }
            pts[k] = p;
        }
    }
    VertexSet::new(pts).ok()
}

fn run_restart(config: &SearchConfig, index: usize) -> Result<Restart> {
    let d = config.dim;
    let mut rng = restart_rng(config.seed, index);
    let (start, mut current) = start_instance(config, index, &mut rng)?;
    if !feasible(&current, d) {
        return Err(Error::InvalidConfig(format!("start instance '{start}' is not feasible")));
    }
    let w = config.weights;
    let moves = WeightedIndex::new([w.add_point, w.delete_point, w.perturb_point])
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;

    let mut current_score = score(&current, config.objective)?;
    let mut violation = check_bounds(&current, config.objective, &current_score, d);
    let mut best = current.clone();
    let mut best_score = current_score.clone();
    let mut history = vec![ScorePoint {
        iteration: 0,
        score: best_score.clone(),
    }];
    let mut accepted = 0;

    for it in 1..=config.iterations {
        let Some(cand) = propose(&current, &mut rng, &moves, config) else {
            continue;
        };
        // A smaller set can neither be accepted nor break a bound the
        // current state meets.
        if config.objective == Objective::MaxVertices && cand.len() < current.len() {
            continue;
        }
        if !feasible(&cand, d) {
            continue;
        }
        let s = score(&cand, config.objective)?;
        if violation.is_none() {
            violation = check_bounds(&cand, config.objective, &s, d);
        }
        if s < current_score {
            continue;
        }
        accepted += 1;
        current = cand;
        current_score = s;
        if current_score > best_score {
            best = current.clone();
            best_score = current_score.clone();
            history.push(ScorePoint {
                iteration: it,
                score: best_score.clone(),
            });
        }
    }
    Ok(Restart {
        summary: RestartSummary {
            index,
            start,
            best_score,
            accepted_moves: accepted,
        },
        best,
        history,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_search_finds_four_and_no_more() {
        let mut cfg = SearchConfig::new(2, Objective::MaxVertices, 150, 7);
        cfg.restarts = 3;
        let r = probe(&cfg).unwrap();
        assert_eq!(r.best_score, int(4));
        assert!(r.bound_violation.is_none());
        assert!(r.restarts.iter().all(|s| s.best_score <= int(4)));
    }

    #[test]
    fn random_simplex_restart_grows_to_parallelogram() {
        let mut cfg = SearchConfig::new(2, Objective::MaxVertices, 300, 11);
        cfg.restarts = 2;
        let r = probe(&cfg).unwrap();
        assert_eq!(r.restarts[1].start, "random_simplex");
        assert_eq!(r.restarts[1].best_score, int(4));
    }

    #[test]
    fn replay_is_identical() {
        let mut cfg = SearchConfig::new(2, Objective::MaxLambdaRelative, 40, 3);
        cfg.restarts = 2;
        assert_eq!(probe(&cfg).unwrap(), probe(&cfg).unwrap());
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut cfg = SearchConfig::new(2, Objective::MaxVertices, 0, 1);
        assert!(probe(&cfg).is_err());
        cfg.iterations = 1;
        cfg.weights = MoveWeights {
            add_point: 0,
            delete_point: 0,
            perturb_point: 0,
        };
        assert!(probe(&cfg).is_err());
        cfg.weights = MoveWeights::default();
        cfg.dim = 9;
        assert!(probe(&cfg).is_err());
    }
}
