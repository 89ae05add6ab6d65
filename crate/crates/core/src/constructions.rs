//! Generators for the standard families: simplices, cubes, cross-polytopes,
//! the ℓ₁-subspace example with λ = d/2, Talata's edge-antipodal polytope,
//! and seeded random point sets.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, Scalar, Vector};
use crate::norms::NormKind;
use crate::polytope::{AffineConstraint, VertexSet};

/// Redraw budget for random sets that come out lower-dimensional.
const MAX_RANDOM_DRAWS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Simplex,
    Hypercube,
    CrossPolytope,
    L1Subspace,
    Talata,
    Random,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Simplex,
        Family::Hypercube,
        Family::CrossPolytope,
        Family::L1Subspace,
        Family::Talata,
        Family::Random,
    ];

    /// Command-line spelling.
    pub fn name(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Hypercube => "hypercube",
            Family::CrossPolytope => "crosspolytope",
            Family::L1Subspace => "l1subspace",
            Family::Talata => "talata",
            Family::Random => "random",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown family '{s}'")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Simplex {
        dim: usize,
    },
    Hypercube {
        dim: usize,
    },
    CrossPolytope {
        dim: usize,
    },
    L1Subspace {
        dim: usize,
    },
    Talata {
        dim: usize,
        #[serde(with = "crate::exact::scalar_string")]
        eps: Scalar,
    },
    Random {
        dim: usize,
        points: usize,
        seed: u64,
        bound: u32,
    },
}

impl FamilySpec {
    pub fn family(&self) -> Family {
        match self {
            FamilySpec::Simplex { .. } => Family::Simplex,
            FamilySpec::Hypercube { .. } => Family::Hypercube,
            FamilySpec::CrossPolytope { .. } => Family::CrossPolytope,
            FamilySpec::L1Subspace { .. } => Family::L1Subspace,
            FamilySpec::Talata { .. } => Family::Talata,
            FamilySpec::Random { .. } => Family::Random,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilySpec::Simplex { dim }
            | FamilySpec::Hypercube { dim }
            | FamilySpec::CrossPolytope { dim }
            | FamilySpec::L1Subspace { dim }
            | FamilySpec::Talata { dim, .. }
            | FamilySpec::Random { dim, .. } => *dim,
        }
    }

    /// The norm the family is usually studied in.
    pub fn recommended_norm(&self) -> NormKind {
        match self {
            FamilySpec::Simplex { .. } => NormKind::L2,
            FamilySpec::Hypercube { .. } => NormKind::Linf,
            FamilySpec::CrossPolytope { .. } | FamilySpec::L1Subspace { .. } => NormKind::L1,
            FamilySpec::Talata { .. } | FamilySpec::Random { .. } => NormKind::Relative,
        }
    }
}

/// The λ-parameter `(d − 1)/2 − ε` of Talata's polytope.
pub fn talata_lambda(dim: usize, eps: &Scalar) -> Scalar {
    Scalar::new((dim as i64 - 1).into(), 2.into()) - eps
}

/// Builds the vertex set of `spec`; labels follow the listing order of each
/// family.
pub fn generate(spec: &FamilySpec) -> Result<VertexSet> {
    let dim = spec.dim();
    if dim == 0 {
        return Err(Error::InvalidFamily("dimension must be at least 1".into()));
    }
    match spec {
        FamilySpec::Simplex { dim } => simplex(*dim),
        FamilySpec::Hypercube { dim } => hypercube(*dim),
        FamilySpec::CrossPolytope { dim } => cross_polytope(*dim),
        FamilySpec::L1Subspace { dim } => l1_subspace(*dim),
        FamilySpec::Talata { dim, eps } => talata(*dim, eps),
        FamilySpec::Random {
            dim,
            points,
            seed,
            bound,
        } => random(*dim, *points, *seed, *bound),
    }
}

/// `e₁, …, e_{d+1}` in ℝ^{d+1}: equilateral in ℓ₂, lying on `Σ xᵢ = 1`.
fn simplex(dim: usize) -> Result<VertexSet> {
    let n = dim + 1;
    VertexSet::with_affine_constraints(
        (0..n).map(|i| Vector::unit(n, i)).collect(),
        vec![AffineConstraint {
            coeffs: Vector::new(vec![Scalar::one(); n]),
            rhs: Scalar::one(),
        }],
    )
}

/// `{0, 1}^d`, label bit `i` giving coordinate `i`.
fn hypercube(dim: usize) -> Result<VertexSet> {
    if dim > 16 {
        return Err(Error::InvalidFamily("hypercube dimension above 16".into()));
    }
    VertexSet::new(
        (0u32..1 << dim)
            .map(|m| (0..dim).map(|i| int(((m >> i) & 1) as i64)).collect())
            .collect(),
    )
}

/// `e₁, −e₁, e₂, −e₂, …`.
fn cross_polytope(dim: usize) -> Result<VertexSet> {
    VertexSet::new(
        (0..dim)
            .flat_map(|i| [Vector::unit(dim, i), -&Vector::unit(dim, i)])
            .collect(),
    )
}

/// `{d·eᵢ − c : i ≤ d} ∪ {2e_{d+1}, −2e_{d+1}}` with `c = Σ_{i≤d} eᵢ`, inside
/// the hyperplane `Σ_{i≤d} xᵢ = 0` of ℝ^{d+1}.
fn l1_subspace(dim: usize) -> Result<VertexSet> {
    if dim < 2 {
        return Err(Error::InvalidFamily("l1subspace needs dim >= 2".into()));
    }
    let n = dim + 1;
    let d = dim as i64;
    let mut points: Vec<Vector> = (0..dim)
        .map(|i| {
            (0..n)
                .map(|k| match k {
                    _ if k == dim => Scalar::zero(),
                    _ if k == i => int(d - 1),
                    _ => int(-1),
                })
                .collect()
        })
        .collect();
    points.push(Vector::unit(n, dim).scale(&int(2)));
    points.push(Vector::unit(n, dim).scale(&int(-2)));
    let mut coeffs = vec![Scalar::one(); n];
    coeffs[dim] = Scalar::zero();
    VertexSet::with_affine_constraints(
        points,
        vec![AffineConstraint {
            coeffs: Vector::new(coeffs),
            rhs: Scalar::zero(),
        }],
    )
}

/// `{o, e₁, …, e_d, p, e_d + λp}` with `p = (2/(d−1))·Σ_{i<d} eᵢ` and
/// `λ = (d−1)/2 − ε`.
fn talata(dim: usize, eps: &Scalar) -> Result<VertexSet> {
    if dim < 4 {
        return Err(Error::InvalidFamily("talata needs dim >= 4".into()));
    }
    let ceiling = talata_lambda(dim, &Scalar::zero()) - Scalar::one();
    if !eps.is_positive() || eps >= &ceiling {
        return Err(Error::InvalidFamily(format!(
            "talata needs 0 < eps < {}",
            crate::exact::format_scalar(&ceiling)
        )));
    }
    let lambda = talata_lambda(dim, eps);
    let p: Vector = (0..dim)
        .map(|k| {
            if k + 1 < dim {
                Scalar::new(2.into(), (dim as i64 - 1).into())
            } else {
                Scalar::zero()
            }
        })
        .collect();
    let mut points = vec![Vector::zeros(dim)];
    points.extend((0..dim).map(|i| Vector::unit(dim, i)));
    points.push(p.clone());
    points.push(&Vector::unit(dim, dim - 1) + &p.scale(&lambda));
    let vs = VertexSet::new(points)?;
    vs.ensure_convex_position()?;
    Ok(vs)
}

/// Uniform rational in `[−bound, bound]` with denominator in `1..=bound`.
fn random_scalar(rng: &mut ChaCha8Rng, bound: u32) -> Scalar {
    let b = bound as i64;
    let num = rng.random_range(-b..=b);
    let den = rng.random_range(1..=b);
    Scalar::new(num.into(), den.into())
}

/// Up to `points` distinct random points reduced to their hull vertices,
/// redrawn until the hull is `dim`-dimensional.
fn random(dim: usize, points: usize, seed: u64, bound: u32) -> Result<VertexSet> {
    if points < dim + 1 {
        return Err(Error::InvalidFamily(format!(
            "random needs at least dim + 1 = {} points",
            dim + 1
        )));
    }
    if bound == 0 {
        return Err(Error::InvalidFamily("random needs bound >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RANDOM_DRAWS {
        let mut pts: Vec<Vector> = Vec::with_capacity(points);
        let mut tries = 0;
        while pts.len() < points && tries < 100 * points {
            tries += 1;
            let v: Vector = (0..dim).map(|_| random_scalar(&mut rng, bound)).collect();
            if !pts.contains(&v) {
                pts.push(v);
            }
        }
        let vs = VertexSet::new(pts)?;
        if vs.affine_dim() == dim {
            return vs.reduce_to_vertices();
        }
    }
    Err(Error::InvalidFamily(format!(
        "no {dim}-dimensional draw in {MAX_RANDOM_DRAWS} attempts"
    )))
}
