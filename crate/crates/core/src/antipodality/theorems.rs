use num_traits::One;
use serde::{Deserialize, Serialize};

use super::metric::{is_subequilateral, LambdaValue, PairDistances};
use super::slab::{is_edge_antipodal, AntipodalityCheck};
use super::Verdict;
use crate::error::{Error, Result};
use crate::exact::{int, Scalar};
use crate::norms::{Norm, NormValue};
use crate::polytope::VertexSet;

/// `(d/2 + 1)^d`.
pub fn theorem_bound(d: usize) -> Scalar {
    num_traits::pow(Scalar::new(d.into(), 2.into()) + Scalar::one(), d)
}

/// Which hypothesis licenses the `(d/2 + 1)^d` bound.
#[derive(Clone, Copy, Debug)]
pub enum BoundMode<'a> {
    EdgeAntipodal,
    Subequilateral(&'a PairDistances<'a>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBoundReport {
    /// `edge_antipodal` or `subequilateral(<norm>)`.
    pub mode: String,
    pub verdict: Verdict,
    pub vertex_count: usize,
    pub dimension: usize,
    #[serde(with = "crate::exact::scalar_string")]
    pub bound: Scalar,
    pub tight: bool,
    /// Why the hypothesis failed, when it did.
    pub hypothesis_failure: Option<String>,
}

/// `|V| ≤ (d/2 + 1)^d` for edge-antipodal or subequilateral vertex sets.
pub fn theorem_bound_check(vs: &VertexSet, mode: BoundMode<'_>) -> Result<TheoremBoundReport> {
    vs.require_affine_dim(1)?;
    let (mode_name, failure) = match mode {
        BoundMode::EdgeAntipodal => {
            let check = is_edge_antipodal(vs)?;
            (
                "edge_antipodal".to_string(),
                check
                    .failing_pair
                    .map(|(i, j)| format!("edge ({i}, {j}) has no slab")),
            )
        }
        BoundMode::Subequilateral(dists) => {
            if !std::ptr::eq(dists.vertex_set(), vs) && dists.vertex_set() != vs {
                return Err(Error::InvalidConfig(
                    "distance table belongs to another vertex set".into(),
                ));
            }
            let check = is_subequilateral(dists)?;
            (
                format!("subequilateral({})", dists.norm()),
                check.violating_edge.map(|((i, j), len)| {
                    format!("edge ({i}, {j}) has length {len} < {}", check.diameter)
                }),
            )
        }
    };
    let d = vs.affine_dim();
    let bound = theorem_bound(d);
    let m = int(vs.len() as i64);
    let verdict = if failure.is_some() {
        Verdict::NotApplicable
    } else {
        Verdict::from_bool(m <= bound)
    };
    Ok(TheoremBoundReport {
        mode: mode_name,
        verdict,
        vertex_count: vs.len(),
        dimension: d,
        tight: failure.is_none() && m == bound,
        bound,
        hypothesis_failure: failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquidistantBoundReport {
    pub verdict: Verdict,
    pub vertex_count: usize,
    pub dimension: usize,
    pub equidistant: bool,
}

/// An equidistant set has at most `2^d` points.
pub fn equidistant_bound_check(dists: &PairDistances<'_>) -> Result<EquidistantBoundReport> {
    let vs = dists.vertex_set();
    let lambda = dists.lambda().ok_or(Error::TooFewPoints {
        needed: 2,
        got: vs.len(),
    })?;
    let d = vs.affine_dim();
    let equidistant = lambda.is_equidistant();
    let verdict = if equidistant {
        Verdict::from_bool(d >= usize::BITS as usize || vs.len() <= 1usize << d)
    } else {
        Verdict::NotApplicable
    };
    Ok(EquidistantBoundReport {
        verdict,
        vertex_count: vs.len(),
        dimension: d,
        equidistant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem3Report {
    pub verdict: Verdict,
    pub dimension: usize,
    pub vertex_count: usize,
    pub subequilateral: bool,
    pub equidistant: bool,
    /// First edge shorter than the diameter when not subequilateral.
    pub violating_edge: Option<((usize, usize), NormValue)>,
}

/// A Euclidean subequilateral polytope must be an equilateral simplex.
pub fn theorem3_check_euclidean(vs: &VertexSet) -> Result<Theorem3Report> {
    let norm = Norm::L2;
    let dists = PairDistances::compute(vs, &norm)?;
    let sub = is_subequilateral(&dists)?;
    let d = vs.affine_dim();
    let equidistant = dists.lambda().is_some_and(|l| l.is_equidistant());
    let verdict = if sub.subequilateral {
        Verdict::from_bool(vs.len() == d + 1 && equidistant)
    } else {
        Verdict::NotApplicable
    };
    Ok(Theorem3Report {
        verdict,
        dimension: d,
        vertex_count: vs.len(),
        subequilateral: sub.subequilateral,
        equidistant,
        violating_edge: sub.violating_edge,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeSummary {
    pub subequilateral: bool,
    pub diameter: NormValue,
    pub violating_edge: Option<((usize, usize), NormValue)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub verdict: Verdict,
    pub edge_antipodal: AntipodalityCheck,
    /// Subequilateral test under the relative norm of `V` itself; run only
    /// when `V` is edge-antipodal.
    pub relative: Option<RelativeSummary>,
    /// Edge-antipodal ⇒ subequilateral in `‖·‖_P` with diameter 1.
    pub forward: Verdict,
    /// Norm of the supplied table and whether `V` is subequilateral in it.
    pub supplied_norm: String,
    pub supplied_subequilateral: bool,
    /// Subequilateral in the supplied norm ⇒ edge-antipodal.
    pub backward: Verdict,
}

fn combine(a: Verdict, b: Verdict) -> Verdict {
    match (a, b) {
        (Verdict::Violated, _) | (_, Verdict::Violated) => Verdict::Violated,
        (Verdict::Holds, _) | (_, Verdict::Holds) => Verdict::Holds,
        _ => Verdict::NotApplicable,
    }
}

/// Both directions of the link between edge-antipodality and being
/// subequilateral, the forward one in the relative norm of `V`.
pub fn bridge_check(dists: &PairDistances<'_>) -> Result<BridgeReport> {
    let vs = dists.vertex_set();
    vs.require_affine_dim(1)?;
    vs.ensure_convex_position()?;
    let edge_antipodal = is_edge_antipodal(vs)?;

    let (relative, forward) = if edge_antipodal.holds {
        let own;
        let rel_dists = match dists.norm() {
            Norm::Relative(r) if r.polytope() == vs => dists,
            _ => {
                own = Norm::relative(vs)?;
                &PairDistances::compute(vs, &own)?
            }
        };
        let sub = is_subequilateral(rel_dists)?;
        let ok = sub.subequilateral && sub.diameter == NormValue::rational(Scalar::one());
        (
            Some(RelativeSummary {
                subequilateral: sub.subequilateral,
                diameter: sub.diameter,
                violating_edge: sub.violating_edge,
            }),
            Verdict::from_bool(ok),
        )
    } else {
        (None, Verdict::NotApplicable)
    };

    let supplied_subequilateral = is_subequilateral(dists)?.subequilateral;
    let backward = if supplied_subequilateral {
        Verdict::from_bool(edge_antipodal.holds)
    } else {
        Verdict::NotApplicable
    };

    Ok(BridgeReport {
        verdict: combine(forward, backward),
        edge_antipodal,
        relative,
        forward,
        supplied_norm: dists.norm().name().to_string(),
        supplied_subequilateral,
        backward,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    /// Verdict on `λ(V, ‖·‖) ≥ λ(V, ‖·‖_P)`, the direction that always holds.
    pub verdict: Verdict,
    pub lambda_norm: LambdaValue,
    pub lambda_relative: LambdaValue,
    /// `λ(V, ‖·‖) ≤ λ(V, ‖·‖_P)`, the order sometimes quoted for this
    /// comparison. Reported, not enforced: it fails on the ℓ₁ subspace
    /// family.
    pub stated_order_holds: bool,
    pub proven_order_holds: bool,
}

/// Compares λ in a norm in which `V` is subequilateral with λ in the
/// relative norm of `V`.
///
/// Every `p_i − p_j` lies in `P − P`, so `‖v‖ ≤ diam·‖v‖_P` and the relative
/// diameter is at most 1. Hence `λ(V, ‖·‖_P) ≤ 1/min‖·‖_P ≤ λ(V, ‖·‖)`.
pub fn lambda_monotonicity_check(dists: &PairDistances<'_>) -> Result<MonotonicityReport> {
    let vs = dists.vertex_set();
    let sub = is_subequilateral(dists)?;
    if let Some(((a, b), _)) = sub.violating_edge {
        return Err(Error::NotSubequilateral(a, b));
    }
    let lambda_norm = dists.lambda().expect("subequilateral check needs two points");
    let lambda_relative = match dists.norm() {
        Norm::Relative(r) if r.polytope() == vs => lambda_norm.clone(),
        _ => {
            let rel = Norm::relative(vs)?;
            PairDistances::compute(vs, &rel)?
                .lambda()
                .expect("same vertex set")
        }
    };
    let stated_order_holds = lambda_norm.ratio_squared <= lambda_relative.ratio_squared;
    let proven_order_holds = lambda_norm.ratio_squared >= lambda_relative.ratio_squared;
    Ok(MonotonicityReport {
        verdict: Verdict::from_bool(proven_order_holds),
        lambda_norm,
        lambda_relative,
        stated_order_holds,
        proven_order_holds,
    })
}
