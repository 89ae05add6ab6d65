use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{solve_lp, Constraint, LinearProgram, Relation, Scalar, Vector};
use crate::polytope::VertexSet;

/// Two parallel hyperplanes `⟨f, ·⟩ = upper_level` through `p_upper` and
/// `⟨f, ·⟩ = lower_level` through `p_lower` with all of `V` in between.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlabWitness {
    pub functional: Vector,
    #[serde(with = "crate::exact::scalar_string")]
    pub upper_level: Scalar,
    #[serde(with = "crate::exact::scalar_string")]
    pub lower_level: Scalar,
    pub upper_vertex: usize,
    pub lower_vertex: usize,
}

impl SlabWitness {
    pub fn verify(&self, vs: &VertexSet) -> bool {
        let at = |k: usize| self.functional.dot(vs.point(k));
        self.upper_level > self.lower_level
            && at(self.upper_vertex) == self.upper_level
            && at(self.lower_vertex) == self.lower_level
            && vs.points().iter().all(|p| {
                let v = self.functional.dot(p);
                v >= self.lower_level && v <= self.upper_level
            })
    }
}

/// Slab through `p_i` and `p_j` containing `V`, if one exists.
///
/// The functional is normalised by `⟨f, p_i − p_j⟩ = 1`. A slab whose two
/// hyperplanes coincide would contain `aff(V)` in a hyperplane, which is
/// impossible when `f` is nonconstant on `aff(V)`, so nothing is lost.
pub fn antipodal_pair(vs: &VertexSet, i: usize, j: usize) -> Result<Option<SlabWitness>> {
    vs.check_label(i)?;
    vs.check_label(j)?;
    if i == j {
        return Err(crate::Error::SameLabel(i));
    }
    vs.require_affine_dim(1)?;
    Ok(slab_lp(vs, i, j))
}

fn slab_lp(vs: &VertexSet, i: usize, j: usize) -> Option<SlabWitness> {
    let (pi, pj) = (vs.point(i), vs.point(j));
    let mut rows = vec![Constraint::new(pi - pj, Relation::Eq, Scalar::one())];
    for (k, q) in vs.points().iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        rows.push(Constraint::new(pi - q, Relation::Ge, Scalar::zero()));
        rows.push(Constraint::new(q - pj, Relation::Ge, Scalar::zero()));
    }
    let lp = LinearProgram::feasibility(vs.ambient_dim(), rows).expect("rows sized to ambient");
    solve_lp(&lp).primal.map(|f| SlabWitness {
        upper_level: f.dot(pi),
        lower_level: f.dot(pj),
        functional: f,
        upper_vertex: i,
        lower_vertex: j,
    })
}

/// Result of running the slab test over a list of pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntipodalityCheck {
    pub holds: bool,
    pub pairs_checked: usize,
    /// Lexicographically first pair without a slab.
    pub failing_pair: Option<(usize, usize)>,
}

fn check_pairs(vs: &VertexSet, pairs: &[(usize, usize)]) -> AntipodalityCheck {
    let failing_pair = pairs
        .par_iter()
        .find_first(|&&(i, j)| slab_lp(vs, i, j).is_none())
        .copied();
    AntipodalityCheck {
        holds: failing_pair.is_none(),
        pairs_checked: pairs.len(),
        failing_pair,
    }
}

/// Slab test over every pair of vertices.
pub fn is_antipodal(vs: &VertexSet) -> Result<AntipodalityCheck> {
    vs.require_affine_dim(1)?;
    vs.ensure_convex_position()?;
    let n = vs.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Ok(check_pairs(vs, &pairs))
}

/// Slab test over the edges of `conv(V)` only.
pub fn is_edge_antipodal(vs: &VertexSet) -> Result<AntipodalityCheck> {
    vs.require_affine_dim(1)?;
    let edges = vs.edges()?.to_vec();
    Ok(check_pairs(vs, &edges))
}
