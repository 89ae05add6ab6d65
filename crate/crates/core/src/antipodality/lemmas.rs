use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::metric::{is_subequilateral, LambdaValue, PairDistances};
use super::Verdict;
use crate::error::{Error, Result};
use crate::exact::{int, Scalar, Vector};
use crate::norms::NormValue;
use crate::polytope::{membership, segment_entry, CaratheodoryDecomposition, FaceWitness, SegmentEntry};

/// Decides `(1 + √r)^d ≥ m` exactly for `r ≥ 0`.
///
/// Expanding gives `A + B√r` with rational `A, B ≥ 0`, so the test is
/// `A ≥ m` or `B²r ≥ (m − A)²`.
pub fn one_plus_sqrt_power_at_least(r: &Scalar, d: u32, m: &Scalar) -> bool {
    let mut a = Scalar::zero();
    let mut b = Scalar::zero();
    let mut binom = BigInt::one();
    let mut r_pow = Scalar::one(); // r^(k/2) for even k, r^((k−1)/2) for odd k
    for k in 0..=d {
        let c = Scalar::from_integer(binom.clone());
        if k % 2 == 0 {
            a += &c * &r_pow;
        } else {
            b += &c * &r_pow;
            r_pow *= r;
        }
        binom = binom * BigInt::from(d - k) / BigInt::from(k + 1);
    }
    if &a >= m {
        return true;
    }
    let gap = m - &a;
    &b * &b * r >= &gap * &gap
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub verdict: Verdict,
    pub vertex_count: usize,
    pub dimension: usize,
    pub lambda: LambdaValue,
    /// `(λ + 1)^d` when λ is rational; `None` for an irrational ℓ₂ ratio.
    #[serde(with = "crate::exact::scalar_string::option")]
    pub bound: Option<Scalar>,
    /// `|V| = (λ + 1)^d`. Never true for irrational λ.
    pub equality: bool,
}

/// `|V| ≤ (λ(V) + 1)^d` with `d` the affine dimension of `V`.
pub fn lemma2_check(dists: &PairDistances<'_>) -> Result<Lemma2Report> {
    let vs = dists.vertex_set();
    let lambda = dists.lambda().ok_or(Error::TooFewPoints {
        needed: 2,
        got: vs.len(),
    })?;
    let d = vs.affine_dim();
    let m = int(vs.len() as i64);
    let (holds, bound, equality) = match lambda.value() {
        Some(l) => {
            let bound = num_traits::pow(l + Scalar::one(), d);
            (m <= bound, Some(bound.clone()), m == bound)
        }
        None => (
            one_plus_sqrt_power_at_least(&lambda.ratio_squared, d as u32, &m),
            None,
            false,
        ),
    };
    Ok(Lemma2Report {
        verdict: Verdict::from_bool(holds),
        vertex_count: vs.len(),
        dimension: d,
        lambda,
        bound,
        equality,
    })
}

/// One endpoint's half of the Lemma 3 chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma3Side {
    /// Label of the endpoint `x`.
    pub vertex: usize,
    /// Where the segment from `x` first meets the hull `P'` of the other
    /// vertices.
    pub entry_point: Vector,
    /// Supporting face of `P'` through the entry point, labels in `V`.
    pub face_witness: FaceWitness,
    /// Entry point as a convex combination of face vertices, labels in `V`.
    pub decomposition: CaratheodoryDecomposition,
    pub dominant_label: usize,
    #[serde(with = "crate::exact::scalar_string")]
    pub dominant_coefficient: Scalar,
    /// `‖x − z_d‖`, equal to the diameter.
    pub vertex_to_dominant: NormValue,
    /// `‖x' − z_d‖ ≤ (1 − λ_d)·diam`.
    pub entry_to_dominant: NormValue,
    /// `‖x − x'‖ ≥ λ_d·diam ≥ diam/d`.
    pub vertex_to_entry: NormValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma3Certificate {
    pub pair: (usize, usize),
    pub dimension: usize,
    pub diameter: NormValue,
    /// Segment parameters of `x'` and `y'` on `x → y`.
    #[serde(with = "crate::exact::scalar_string")]
    pub t_min: Scalar,
    #[serde(with = "crate::exact::scalar_string")]
    pub t_max: Scalar,
    pub x_side: Lemma3Side,
    pub y_side: Lemma3Side,
    /// `(2/d)·diam`.
    pub lower_bound: NormValue,
    pub distance: NormValue,
    pub tight: bool,
}

fn fail(msg: String) -> Error {
    Error::CertificateFailure(msg)
}

/// Builds the chain for endpoint `x` against `P' = conv(V ∖ {x, y})`.
fn build_side(
    dists: &PairDistances<'_>,
    others: &[usize],
    x: usize,
    y: usize,
    diameter: &NormValue,
) -> Result<(Lemma3Side, Scalar, Scalar)> {
    let vs = dists.vertex_set();
    let norm = dists.norm();
    let d = vs.affine_dim();
    let inner = vs.subset(others)?;
    let (px, py) = (vs.point(x), vs.point(y));
    let (t_min, t_max, witness) = match segment_entry(px, py, &inner)? {
        SegmentEntry::Disjoint => {
            return Err(fail(format!(
                "segment ({x}, {y}) misses the hull of the remaining vertices"
            )))
        }
        SegmentEntry::Entry {
            t_min,
            t_max,
            entry_witness,
        } => (t_min, t_max, entry_witness),
    };
    let entry = px.lerp(py, &t_min);

    let face = inner.subset(&witness.face_vertices)?;
    let local = membership(&entry, &face)?
        .ok_or_else(|| fail(format!("entry point of ({x}, {y}) is not on its face")))?;
    if !local.verify(&face, &entry) {
        return Err(fail("face decomposition does not replay".into()));
    }
    let to_v = |face_label: usize| others[witness.face_vertices[face_label]];
    let decomposition = CaratheodoryDecomposition {
        support: local.support.iter().map(|(l, c)| (to_v(*l), c.clone())).collect(),
    };
    let (dominant_label, dominant_coefficient) = decomposition.dominant();

    let face_witness = FaceWitness {
        functional: witness.functional.clone(),
        level: witness.level.clone(),
        face_vertices: witness.face_vertices.iter().map(|&l| others[l]).collect(),
    };

    let z = vs.point(dominant_label);
    let vertex_to_dominant = dists.get(x, dominant_label).clone();
    let entry_to_dominant = norm.distance(&entry, z)?;
    let vertex_to_entry = norm.distance(px, &entry)?;

    let lambda_d = &dominant_coefficient;
    if lambda_d * int(d as i64) < Scalar::one() {
        return Err(fail(format!("dominant coefficient {lambda_d} below 1/{d}")));
    }
    if &vertex_to_dominant != diameter {
        return Err(fail(format!(
            "vertex {dominant_label} of the entry face is not at diameter distance from {x}"
        )));
    }
    if entry_to_dominant > diameter.scale(&(Scalar::one() - lambda_d)) {
        return Err(fail("entry point too far from the dominant vertex".into()));
    }
    if !NormValue::sum_at_least(&vertex_to_entry, &entry_to_dominant, &vertex_to_dominant) {
        return Err(fail("triangle inequality fails on the entry chain".into()));
    }
    if vertex_to_entry < diameter.scale(lambda_d) {
        return Err(fail(format!("‖x − x'‖ below λ_d·diam for vertex {x}")));
    }

    Ok((
        Lemma3Side {
            vertex: x,
            entry_point: entry,
            face_witness,
            decomposition,
            dominant_label,
            dominant_coefficient,
            vertex_to_dominant,
            entry_to_dominant,
            vertex_to_entry,
        },
        t_min,
        t_max,
    ))
}

/// Replays the lower-bound argument for a nonadjacent pair of a
/// subequilateral set, with every step checked in exact arithmetic.
pub fn lemma3_certificate(dists: &PairDistances<'_>, i: usize, j: usize) -> Result<Lemma3Certificate> {
    let vs = dists.vertex_set();
    vs.check_label(i)?;
    vs.check_label(j)?;
    if i == j {
        return Err(Error::SameLabel(i));
    }
    vs.require_affine_dim(2)?;
    let sub = is_subequilateral(dists)?;
    if let Some(((a, b), _)) = sub.violating_edge {
        return Err(Error::NotSubequilateral(a, b));
    }
    if vs.is_edge(i, j)? {
        return Err(Error::EdgePair(i.min(j), i.max(j)));
    }
    let diameter = sub.diameter;
    let d = vs.affine_dim();
    let others: Vec<usize> = (0..vs.len()).filter(|&k| k != i && k != j).collect();

    let (x_side, t_min, t_max) = build_side(dists, &others, i, j, &diameter)?;
    let (y_side, s_min, _) = build_side(dists, &others, j, i, &diameter)?;
    if Scalar::one() - &s_min != t_max {
        return Err(fail("entry parameters from the two ends disagree".into()));
    }

    let lower_bound = diameter.scale(&Scalar::new(2.into(), (d as i64).into()));
    let distance = dists.get(i, j).clone();
    if distance < lower_bound {
        return Err(fail(format!("‖p_{i} − p_{j}‖ below (2/d)·diam")));
    }
    Ok(Lemma3Certificate {
        pair: (i, j),
        dimension: d,
        tight: distance == lower_bound,
        diameter,
        t_min,
        t_max,
        x_side,
        y_side,
        lower_bound,
        distance,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma3Report {
    pub verdict: Verdict,
    pub dimension: usize,
    pub lambda: LambdaValue,
    /// `λ = d/2`.
    pub equality: bool,
    /// Certificate for the first closest pair when it is not an edge.
    pub certificate: Option<Lemma3Certificate>,
}

/// `λ(V) ≤ d/2` for a subequilateral vertex set, compared as `4λ² ≤ d²`.
pub fn lemma3_check(dists: &PairDistances<'_>) -> Result<Lemma3Report> {
    let vs = dists.vertex_set();
    vs.require_affine_dim(2)?;
    let sub = is_subequilateral(dists)?;
    if let Some(((a, b), _)) = sub.violating_edge {
        return Err(Error::NotSubequilateral(a, b));
    }
    let lambda = dists.lambda().expect("affine dimension 2 needs three points");
    let d = vs.affine_dim() as i64;
    let lhs = int(4) * &lambda.ratio_squared;
    let rhs = int(d * d);
    let (i, j) = lambda.achieving_min_pairs[0];
    let certificate = if vs.is_edge(i, j)? {
        None
    } else {
        Some(lemma3_certificate(dists, i, j)?)
    };
    Ok(Lemma3Report {
        verdict: Verdict::from_bool(lhs <= rhs),
        dimension: d as usize,
        equality: lhs == rhs,
        lambda,
        certificate,
    })
}
