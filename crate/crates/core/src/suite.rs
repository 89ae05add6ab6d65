//! Acceptance checks, shared by `subeq verify-suite` and the `acceptance`
//! test target. Each criterion is exact: a single mismatch fails it.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::antipodality::{
    is_antipodal, is_edge_antipodal, is_subequilateral, lemma2_check, lemma3_check,
    theorem3_check_euclidean, PairDistances, Verdict,
};
use crate::cli::{certify, probe_report};
use crate::constructions::{generate, FamilySpec};
use crate::error::{Error, Result};
use crate::exact::{int, ratio, solve_lp, Constraint, LinearProgram, LpStatus, Relation, Scalar, Sense, VariableBound, Vector};
use crate::norms::{Norm, NormKind, NormValue};
use crate::oracle::{edges_by_facet_enumeration, is_vertex_exhaustive, lp_by_vertex_enumeration};
use crate::polytope::VertexSet;
use crate::prober::{Objective, SearchConfig};

/// Size of the seeded random corpus.
pub const RANDOM_CORPUS_SIZE: usize = 500;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    /// `criterion N: PASS|FAIL title (time) detail`.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2}: {} {} ({:.2}s) {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub const TITLES: [&str; 10] = [
    "l1-subspace example: distances, subequilateral, lambda = d/2",
    "Talata polytope d=4 eps=1/10: edge-antipodal, not antipodal, relative norms",
    "edge-antipodal implies subequilateral with diameter 1 in the relative norm",
    "|V| <= (lambda + 1)^d on the random corpus",
    "lambda <= d/2 on subequilateral instances, equality for l1-subspace",
    "certificate tightness on the l1-subspace apex pair",
    "Euclidean subequilateral polytopes are equilateral simplices",
    "prober reaches 4 in the plane and 8 in space, never beyond the bound",
    "edge and vertex detection agree with brute-force oracles",
    "LP kernel agrees with vertex enumeration; Farkas certificates verify",
];

/// Runs criterion `id` (1–10). Failures are reported in the result, not as
/// errors; only an unknown id is an error.
pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    let title = *TITLES
        .get((id as usize).wrapping_sub(1))
        .ok_or(Error::UnknownCriterion(id))?;
    let start = Instant::now();
    let outcome = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => criterion_10(),
    };
    let (passed, detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(msg) => (false, msg),
    };
    Ok(CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=10)
        .map(|id| run_criterion(id).expect("ids 1-10 exist"))
        .collect()
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Every generated family with dimension at most 5.
pub fn family_corpus() -> Vec<(String, VertexSet)> {
    let mut specs = Vec::new();
    for dim in 1..=5 {
        specs.push(FamilySpec::Simplex { dim });
        specs.push(FamilySpec::Hypercube { dim });
        specs.push(FamilySpec::CrossPolytope { dim });
        if dim >= 2 {
            specs.push(FamilySpec::L1Subspace { dim });
        }
        if dim >= 4 {
            specs.push(FamilySpec::Talata {
                dim,
                eps: ratio(1, 10),
            });
        }
        for seed in 0..3 {
            specs.push(FamilySpec::Random {
                dim,
                points: 2 * dim + 2,
                seed,
                bound: 5,
            });
        }
    }
    specs
        .into_iter()
        .map(|s| {
            let vs = generate(&s).expect("corpus specs are valid");
            (format!("{s:?}"), vs)
        })
        .collect()
}

/// Seeded random vertex sets: dimension 1–4, at most 12 points.
pub fn random_corpus() -> Vec<VertexSet> {
    (0..RANDOM_CORPUS_SIZE)
        .into_par_iter()
        .map(|k| {
            let dim = 1 + k % 4;
            let points = dim + 1 + (k / 4) % (12 - dim);
            generate(&FamilySpec::Random {
                dim,
                points,
                seed: k as u64,
                bound: 6,
            })
            .expect("random corpus specs are valid")
        })
        .collect()
}

fn criterion_1() -> Outcome {
    for d in 2..=8usize {
        let t = Instant::now();
        let vs = generate(&FamilySpec::L1Subspace { dim: d }).map_err(err)?;
        let norm = Norm::L1;
        let dists = PairDistances::compute(&vs, &norm).map_err(err)?;
        let apex = (d, d + 1);
        for ((i, j), v) in dists.pairs() {
            let want = if (i, j) == apex { 4 } else { 2 * d as i64 };
            ensure(*v == NormValue::rational(int(want)), || {
                format!("d={d}: distance ({i}, {j}) is {v}, expected {want}")
            })?;
        }
        let sub = is_subequilateral(&dists).map_err(err)?;
        ensure(sub.subequilateral, || format!("d={d}: not subequilateral"))?;
        let lambda = dists.lambda().expect("d + 2 points");
        ensure(lambda.value() == Some(ratio(d as i64, 2)), || {
            format!("d={d}: lambda^2 = {}", lambda.ratio_squared)
        })?;
        ensure(t.elapsed() < Duration::from_secs(5), || {
            format!("d={d}: took {:?}", t.elapsed())
        })?;
    }
    Ok("d = 2..8 exact".into())
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let vs = generate(&FamilySpec::Talata {
        dim: 4,
        eps: ratio(1, 10),
    })
    .map_err(err)?;
    ensure(is_edge_antipodal(&vs).map_err(err)?.holds, || "not edge-antipodal".into())?;
    let anti = is_antipodal(&vs).map_err(err)?;
    ensure(!anti.holds, || "unexpectedly antipodal".into())?;
    let norm = Norm::relative(&vs).map_err(err)?;
    // Labels: o = 0, e_i = i, p = 5, e_4 + λp = 6.
    let e4 = norm.distance(vs.point(4), vs.point(0)).map_err(err)?;
    let p = norm.distance(vs.point(5), vs.point(0)).map_err(err)?;
    ensure(e4 == NormValue::rational(int(1)), || format!("|e4 - o|_P = {e4}"))?;
    ensure(p == NormValue::rational(ratio(5, 7)), || format!("|p - o|_P = {p}"))?;
    let dists = PairDistances::compute(&vs, &norm).map_err(err)?;
    let lambda = dists.lambda().expect("7 points");
    ensure(lambda.ratio_squared >= ratio(49, 25), || {
        format!("relative lambda^2 = {}", lambda.ratio_squared)
    })?;
    ensure(t.elapsed() < Duration::from_secs(10), || format!("took {:?}", t.elapsed()))?;
    Ok(format!(
        "first pair without slab {:?}, relative lambda^2 = {}",
        anti.failing_pair.expect("not antipodal"),
        crate::exact::format_scalar(&lambda.ratio_squared)
    ))
}

fn criterion_3() -> Outcome {
    let corpus = family_corpus();
    let results: Vec<std::result::Result<bool, String>> = corpus
        .par_iter()
        .map(|(name, vs)| {
            if !is_edge_antipodal(vs).map_err(err)?.holds {
                return Ok(false);
            }
            let norm = Norm::relative(vs).map_err(err)?;
            let dists = PairDistances::compute(vs, &norm).map_err(err)?;
            let sub = is_subequilateral(&dists).map_err(err)?;
            ensure(sub.subequilateral, || format!("{name}: violating edge {:?}", sub.violating_edge))?;
            ensure(sub.diameter == NormValue::rational(Scalar::one()), || {
                format!("{name}: relative diameter {}", sub.diameter)
            })?;
            Ok(true)
        })
        .collect();
    let mut checked = 0;
    for r in results {
        checked += r? as usize;
    }
    Ok(format!("{checked} of {} instances edge-antipodal, all pass", corpus.len()))
}

fn criterion_4() -> Outcome {
    let corpus = random_corpus();
    let kinds = [NormKind::L1, NormKind::Linf, NormKind::Relative];
    let failures: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, vs)| {
            kinds.iter().filter_map(move |&kind| {
                let check = || -> Result<Verdict> {
                    let norm = kind.build(vs)?;
                    Ok(lemma2_check(&PairDistances::compute(vs, &norm)?)?.verdict)
                };
                match check() {
                    Ok(Verdict::Holds) => None,
                    Ok(v) => Some(format!("instance {k} under {kind}: {}", v.as_str())),
                    Err(e) => Some(format!("instance {k} under {kind}: {e}")),
                }
            })
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    for d in 1..=4 {
        let cube = generate(&FamilySpec::Hypercube { dim: d }).map_err(err)?;
        let norm = Norm::Linf;
        let r = lemma2_check(&PairDistances::compute(&cube, &norm).map_err(err)?).map_err(err)?;
        ensure(r.verdict == Verdict::Holds && r.equality, || {
            format!("hypercube d={d}: no equality")
        })?;
    }
    Ok(format!("{} instances x 3 norms; hypercube equality d=1..4", corpus.len()))
}

fn criterion_5() -> Outcome {
    let mut corpus = family_corpus();
    corpus.extend(
        random_corpus()
            .into_iter()
            .enumerate()
            .map(|(k, vs)| (format!("random #{k}"), vs)),
    );
    for d in 6..=8 {
        corpus.push((
            format!("L1Subspace {{ dim: {d} }}"),
            generate(&FamilySpec::L1Subspace { dim: d }).map_err(err)?,
        ));
    }
    let results: Vec<std::result::Result<usize, String>> = corpus
        .par_iter()
        .map(|(name, vs)| {
            if vs.affine_dim() < 2 {
                return Ok(0);
            }
            let mut hits = 0;
            for kind in NormKind::ALL {
                let norm = kind.build(vs).map_err(err)?;
                let dists = PairDistances::compute(vs, &norm).map_err(err)?;
                if !is_subequilateral(&dists).map_err(err)?.subequilateral {
                    continue;
                }
                let r = lemma3_check(&dists).map_err(|e| format!("{name} under {kind}: {e}"))?;
                ensure(r.verdict == Verdict::Holds, || format!("{name} under {kind}: violated"))?;
                if name.starts_with("L1Subspace") && kind == NormKind::L1 {
                    ensure(r.equality, || format!("{name}: lambda below d/2"))?;
                }
                hits += 1;
            }
            Ok(hits)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} subequilateral (instance, norm) pairs hold"))
}

fn criterion_6() -> Outcome {
    for d in [4usize, 6, 8] {
        let vs = generate(&FamilySpec::L1Subspace { dim: d }).map_err(err)?;
        let (_, cert) = certify(vs, NormKind::L1, d, d + 1, vec![]).map_err(err)?;
        ensure(cert.lower_bound == NormValue::rational(int(4)), || {
            format!("d={d}: lower bound {}", cert.lower_bound)
        })?;
        ensure(cert.distance == NormValue::rational(int(4)) && cert.tight, || {
            format!("d={d}: distance {} not tight", cert.distance)
        })?;
        for side in [&cert.x_side, &cert.y_side] {
            ensure(&side.dominant_coefficient * int(d as i64) >= Scalar::one(), || {
                format!("d={d}: dominant coefficient {}", side.dominant_coefficient)
            })?;
        }
    }
    Ok("d = 4, 6, 8 tight at 4".into())
}

fn criterion_7() -> Outcome {
    for d in 1..=5 {
        let vs = generate(&FamilySpec::Simplex { dim: d }).map_err(err)?;
        let r = theorem3_check_euclidean(&vs).map_err(err)?;
        ensure(r.verdict == Verdict::Holds && r.subequilateral, || {
            format!("regular simplex d={d}: {:?}", r.verdict)
        })?;
    }
    let cube = generate(&FamilySpec::Hypercube { dim: 3 }).map_err(err)?;
    let r = theorem3_check_euclidean(&cube).map_err(err)?;
    ensure(r.verdict != Verdict::Violated && !r.subequilateral, || {
        "3-cube reported subequilateral in l2".into()
    })?;
    let corpus = random_corpus();
    let results: Vec<std::result::Result<bool, String>> = corpus
        .par_iter()
        .enumerate()
        .map(|(k, vs)| {
            let r = theorem3_check_euclidean(vs).map_err(err)?;
            ensure(r.verdict != Verdict::Violated, || {
                format!("random #{k}: subequilateral but {} vertices", r.vertex_count)
            })?;
            Ok(r.subequilateral)
        })
        .collect();
    let mut subeq = 0;
    for r in results {
        subeq += r? as usize;
    }
    Ok(format!("{subeq} random instances l2-subequilateral, all simplices"))
}

fn criterion_8() -> Outcome {
    let limit = Duration::from_secs(300);
    let mut notes = Vec::new();
    // The plane also runs a random-simplex restart; space runs the
    // hypercube restart alone.
    for (dim, iterations, restarts, target) in [(2usize, 2000usize, 2usize, 4i64), (3, 10_000, 1, 8)] {
        let t = Instant::now();
        let mut config = SearchConfig::new(dim, Objective::MaxVertices, iterations, 7);
        config.restarts = restarts;
        let (_, search) = probe_report(&config, vec![]).map_err(err)?;
        ensure(search.bound_violation.is_none(), || {
            format!("dim {dim}: bound violation {:?}", search.bound_violation)
        })?;
        ensure(search.best_score == int(target), || {
            format!("dim {dim}: best score {}", search.best_score)
        })?;
        ensure(search.restarts.iter().all(|r| r.best_score <= int(target)), || {
            format!("dim {dim}: some restart exceeded {target}")
        })?;
        let elapsed = t.elapsed();
        ensure(elapsed < limit, || format!("dim {dim}: run took {elapsed:?}"))?;
        notes.push(format!("dim {dim}: {target} in {:.1}s", elapsed.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

/// `count` distinct integer points in `[-range, range]^dim`; the box must
/// hold at least `count` points.
fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize, range: i64) -> Vec<Vector> {
    assert!((2 * range + 1).pow(dim as u32) >= count as i64, "box too small");
    let mut pts: Vec<Vector> = Vec::new();
    while pts.len() < count {
        let v: Vector = (0..dim).map(|_| int(rng.random_range(-range..=range))).collect();
        if !pts.contains(&v) {
            pts.push(v);
        }
    }
    pts
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut polytopes = Vec::new();
    while polytopes.len() < 100 {
        let m = rng.random_range(4..=8);
        let raw = VertexSet::new(random_points(&mut rng, 3, m, 3)).map_err(err)?;
        if raw.affine_dim() == 3 {
            polytopes.push(raw.reduce_to_vertices().map_err(err)?);
        }
    }
    let edge_mismatch = polytopes.par_iter().enumerate().find_map_first(|(k, vs)| {
        let fast: BTreeSet<(usize, usize)> = vs.edge_set().ok()?;
        let slow = edges_by_facet_enumeration(vs.points());
        (fast != slow).then(|| format!("polytope #{k}: edges {fast:?} vs oracle {slow:?}"))
    });
    ensure(edge_mismatch.is_none(), || edge_mismatch.clone().unwrap())?;

    let mut sets = Vec::new();
    for k in 0..100 {
        let dim = 1 + k % 3;
        let m = rng.random_range(dim + 1..=dim + 5);
        sets.push(VertexSet::new(random_points(&mut rng, dim, m, 3)).map_err(err)?);
    }
    let mut non_vertices = 0;
    for (k, vs) in sets.iter().enumerate() {
        for i in 0..vs.len() {
            let fast = vs.is_vertex(i).map_err(err)?;
            let slow = is_vertex_exhaustive(vs.points(), i);
            ensure(fast == slow, || format!("set #{k} label {i}: {fast} vs oracle {slow}"))?;
            non_vertices += !fast as usize;
        }
    }
    Ok(format!("100 polytopes edges, 100 sets vertices ({non_vertices} non-vertices)"))
}

/// Small integer LP with mixed relations and bounds.
pub fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.random_range(1..=3);
    let rows = rng.random_range(1..=4);
    let coef = |rng: &mut ChaCha8Rng| int(rng.random_range(-3..=3));
    let constraints = (0..rows)
        .map(|_| {
            let coeffs: Vector = (0..n).map(|_| coef(rng)).collect();
            let relation = match rng.random_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Eq,
                _ => Relation::Ge,
            };
            Constraint::new(coeffs, relation, int(rng.random_range(-4..=4)))
        })
        .collect();
    let bounds = (0..n)
        .map(|_| match rng.random_range(0..4) {
            0 => VariableBound::free(),
            1 => VariableBound::nonnegative(),
            2 => {
                let lo = rng.random_range(-3..=1);
                VariableBound::between(int(lo), int(lo + rng.random_range(0..=4)))
            }
            _ => VariableBound {
                lower: None,
                upper: Some(int(rng.random_range(-2..=3))),
            },
        })
        .collect();
    let sense = if rng.random_bool(0.5) {
        Sense::Minimize
    } else {
        Sense::Maximize
    };
    let objective: Vector = (0..n).map(|_| coef(rng)).collect();
    LinearProgram::new(sense, objective, constraints, bounds).expect("well-formed program")
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let lps: Vec<LinearProgram> = (0..1000).map(|_| random_lp(&mut rng)).collect();
    let results: Vec<std::result::Result<LpStatus, String>> = lps
        .par_iter()
        .enumerate()
        .map(|(k, lp)| {
            let out = solve_lp(lp);
            let (status, value) = lp_by_vertex_enumeration(lp);
            ensure(out.status == status, || format!("lp #{k}: {} vs oracle {status}", out.status))?;
            ensure(out.objective_value == value, || format!("lp #{k}: value mismatch"))?;
            out.verify(lp).map_err(|e| format!("lp #{k}: certificate: {e}"))?;
            ensure(status != LpStatus::Infeasible || out.dual.is_some(), || {
                format!("lp #{k}: infeasible without Farkas certificate")
            })?;
            Ok(status)
        })
        .collect();
    let mut counts = [0usize; 3];
    for r in results {
        counts[r? as usize] += 1;
    }
    Ok(format!(
        "1000 programs: {} optimal, {} infeasible, {} unbounded",
        counts[0], counts[1], counts[2]
    ))
}
