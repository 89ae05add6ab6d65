//! Combinatorics of `conv(V)` decided by exact LP feasibility.
//!
//! Facets are never listed. Vertex, edge and supporting-face questions are
//! each answered by one small LP whose solution doubles as a witness.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    rank, solve_lp, Constraint, LinearProgram, LpStatus, Relation, Scalar, Sense, VariableBound,
    Vector,
};

/// Linear equation `coeffs·x = rhs` that every point of a set satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineConstraint {
    pub coeffs: Vector,
    #[serde(with = "crate::exact::scalar_string")]
    pub rhs: Scalar,
}

/// A finite, labelled point set `V` (labels `0..len`) and, implicitly, the
/// polytope `conv(V)`.
///
/// Points are pairwise distinct. Convex position is not required at
/// construction; operations that presume a vertex set check it (once, the
/// answer is cached) and fail with [`Error::NotConvexPosition`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "VertexSetRepr", into = "VertexSetRepr")]
pub struct VertexSet {
    points: Vec<Vector>,
    ambient_dim: usize,
    affine_dim: usize,
    affine_constraints: Vec<AffineConstraint>,
    non_vertices: OnceLock<Vec<usize>>,
    edges: OnceLock<Vec<(usize, usize)>>,
}

/// File shape of a vertex set: rational strings throughout, each affine
/// constraint row being `coeffs…, rhs`.
#[derive(Serialize, Deserialize)]
struct VertexSetRepr {
    ambient_dim: usize,
    vertices: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    affine_constraints: Vec<Vec<String>>,
}

impl From<VertexSet> for VertexSetRepr {
    fn from(vs: VertexSet) -> Self {
        VertexSetRepr {
            ambient_dim: vs.ambient_dim,
            affine_constraints: vs
                .affine_constraints
                .iter()
                .map(|c| {
                    let mut row = c.coeffs.to_strings();
                    row.push(crate::exact::format_scalar(&c.rhs));
                    row
                })
                .collect(),
            vertices: vs.points,
        }
    }
}

impl TryFrom<VertexSetRepr> for VertexSet {
    type Error = Error;

    fn try_from(r: VertexSetRepr) -> Result<Self> {
        if let Some(bad) = r.vertices.iter().find(|v| v.dim() != r.ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: r.ambient_dim,
                got: bad.dim(),
            });
        }
        let constraints = r
            .affine_constraints
            .iter()
            .map(|row| {
                if row.len() != r.ambient_dim + 1 {
                    return Err(Error::DimensionMismatch {
                        expected: r.ambient_dim + 1,
                        got: row.len(),
                    });
                }
                let mut vals = row
                    .iter()
                    .map(|t| crate::exact::parse_scalar(t))
                    .collect::<Result<Vec<_>>>()?;
                let rhs = vals.pop().expect("row has ambient_dim + 1 entries");
                Ok(AffineConstraint {
                    coeffs: Vector::new(vals),
                    rhs,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        VertexSet::with_affine_constraints(r.vertices, constraints)
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.affine_constraints == other.affine_constraints
    }
}

impl Eq for VertexSet {}

impl VertexSet {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        Self::with_affine_constraints(points, Vec::new())
    }

    /// Builds a set that lives inside the affine subspace cut out by
    /// `constraints`; every point must satisfy every row.
    pub fn with_affine_constraints(
        points: Vec<Vector>,
        constraints: Vec<AffineConstraint>,
    ) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::TooFewPoints { needed: 1, got: 0 });
        };
        let ambient_dim = first.dim();
        for p in &points {
            if p.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.dim(),
                });
            }
        }
        let mut seen = std::collections::HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = seen.insert(p, i) {
                return Err(Error::DuplicatePoint(j, i));
            }
        }
        for (row, c) in constraints.iter().enumerate() {
            if c.coeffs.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: c.coeffs.dim(),
                });
            }
            if let Some(point) = points.iter().position(|p| c.coeffs.dot(p) != c.rhs) {
                return Err(Error::AffineConstraint { row, point });
            }
        }
        let diffs: Vec<Vector> = points[1..].iter().map(|p| p - first).collect();
        let affine_dim = rank(&diffs);
        Ok(VertexSet {
            points,
            ambient_dim,
            affine_dim,
            affine_constraints: constraints,
            non_vertices: OnceLock::new(),
            edges: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn point(&self, label: usize) -> &Vector {
        &self.points[label]
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull, i.e. the `d` of a `d`-polytope.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn affine_constraints(&self) -> &[AffineConstraint] {
        &self.affine_constraints
    }

    pub fn check_label(&self, label: usize) -> Result<()> {
        if label < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidLabel(label))
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_label(i)?;
        self.check_label(j)?;
        if i == j {
            return Err(Error::SameLabel(i));
        }
        Ok(())
    }

    pub fn require_affine_dim(&self, at_least: usize) -> Result<()> {
        if self.affine_dim < at_least {
            return Err(Error::AffineDimension {
                required: at_least,
                got: self.affine_dim,
            });
        }
        Ok(())
    }

    /// New set made of the given labels, in the given order. Affine
    /// constraints carry over.
    pub fn subset(&self, labels: &[usize]) -> Result<VertexSet> {
        for &l in labels {
            self.check_label(l)?;
        }
        let points = labels.iter().map(|&l| self.points[l].clone()).collect();
        VertexSet::with_affine_constraints(points, self.affine_constraints.clone())
    }

    /// Witness that `p_i` is a vertex, or `None` when it lies in the hull of
    /// the other points.
    pub fn vertex_witness(&self, i: usize) -> Result<Option<FaceWitness>> {
        self.check_label(i)?;
        let p = &self.points[i];
        let rows = self
            .points
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, q)| Constraint::new(p - q, Relation::Ge, Scalar::one()))
            .collect();
        let lp = LinearProgram::feasibility(self.ambient_dim, rows)?;
        let out = solve_lp(&lp);
        Ok(out.primal.map(|f| {
            let level = f.dot(p);
            FaceWitness {
                functional: f,
                level,
                face_vertices: vec![i],
            }
        }))
    }

    pub fn is_vertex(&self, i: usize) -> Result<bool> {
        Ok(self.vertex_witness(i)?.is_some())
    }

    /// Labels of points that are not vertices of `conv(V)`, ascending.
    pub fn non_vertices(&self) -> &[usize] {
        self.non_vertices.get_or_init(|| {
            (0..self.len())
                .into_par_iter()
                .filter(|&i| !self.is_vertex(i).expect("label in range"))
                .collect()
        })
    }

    pub fn in_convex_position(&self) -> bool {
        self.non_vertices().is_empty()
    }

    pub fn ensure_convex_position(&self) -> Result<()> {
        match self.non_vertices().first() {
            Some(&i) => Err(Error::NotConvexPosition(i)),
            None => Ok(()),
        }
    }

    /// Drops every point that is not a vertex of the hull.
    pub fn reduce_to_vertices(&self) -> Result<VertexSet> {
        let keep: Vec<usize> = (0..self.len())
            .filter(|i| !self.non_vertices().contains(i))
            .collect();
        self.subset(&keep)
    }

    /// Witness that `p_i p_j` is an edge (a 1-face) of `conv(V)`.
    pub fn edge_witness(&self, i: usize, j: usize) -> Result<Option<FaceWitness>> {
        self.check_pair(i, j)?;
        self.ensure_convex_position()?;
        Ok(self.edge_lp(i, j))
    }

    fn edge_lp(&self, i: usize, j: usize) -> Option<FaceWitness> {
        let p = &self.points[i];
        let mut rows = vec![Constraint::new(p - &self.points[j], Relation::Eq, Scalar::zero())];
        rows.extend(
            self.points
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, q)| Constraint::new(p - q, Relation::Ge, Scalar::one())),
        );
        let lp = LinearProgram::feasibility(self.ambient_dim, rows).expect("rows sized to ambient");
        solve_lp(&lp).primal.map(|f| {
            let level = f.dot(p);
            FaceWitness {
                functional: f,
                level,
                face_vertices: vec![i.min(j), i.max(j)],
            }
        })
    }

    pub fn is_edge(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.edge_witness(i, j)?.is_some())
    }

    /// All edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Result<&[(usize, usize)]> {
        self.ensure_convex_position()?;
        Ok(self.edges.get_or_init(|| {
            let pairs: Vec<(usize, usize)> = (0..self.len())
                .flat_map(|i| (i + 1..self.len()).map(move |j| (i, j)))
                .collect();
            pairs
                .into_par_iter()
                .filter(|&(i, j)| self.edge_lp(i, j).is_some())
                .collect()
        }))
    }

    pub fn edge_set(&self) -> Result<BTreeSet<(usize, usize)>> {
        Ok(self.edges()?.iter().copied().collect())
    }
}

/// Supporting hyperplane `⟨functional, ·⟩ = level` of `conv(V)`, with
/// `face_vertices` exactly the labels on it and every other point strictly
/// below.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWitness {
    pub functional: Vector,
    #[serde(with = "crate::exact::scalar_string")]
    pub level: Scalar,
    pub face_vertices: Vec<usize>,
}

impl FaceWitness {
    pub fn verify(&self, vs: &VertexSet) -> bool {
        vs.points().iter().enumerate().all(|(k, p)| {
            let v = self.functional.dot(p);
            if self.face_vertices.contains(&k) {
                v == self.level
            } else {
                v < self.level
            }
        })
    }
}

/// Convex combination `Σ coefficient·p_label` with positive coefficients
/// summing to one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<WeightedLabel>", from = "Vec<WeightedLabel>")]
pub struct CaratheodoryDecomposition {
    pub support: Vec<(usize, Scalar)>,
}

#[derive(Serialize, Deserialize)]
struct WeightedLabel {
    label: usize,
    #[serde(with = "crate::exact::scalar_string")]
    weight: Scalar,
}

impl From<CaratheodoryDecomposition> for Vec<WeightedLabel> {
    fn from(d: CaratheodoryDecomposition) -> Self {
        d.support
            .into_iter()
            .map(|(label, weight)| WeightedLabel { label, weight })
            .collect()
    }
}

impl From<Vec<WeightedLabel>> for CaratheodoryDecomposition {
    fn from(v: Vec<WeightedLabel>) -> Self {
        CaratheodoryDecomposition {
            support: v.into_iter().map(|w| (w.label, w.weight)).collect(),
        }
    }
}

impl CaratheodoryDecomposition {
    pub fn point(&self, vs: &VertexSet) -> Vector {
        let mut acc = Vector::zeros(vs.ambient_dim());
        for (l, c) in &self.support {
            acc = &acc + &vs.point(*l).scale(c);
        }
        acc
    }

    /// Exact replay: positive weights, unit sum, reproduces `target`, and
    /// uses at most `affine_dim + 1` points.
    pub fn verify(&self, vs: &VertexSet, target: &Vector) -> bool {
        let sum = self
            .support
            .iter()
            .fold(Scalar::zero(), |acc, (_, c)| acc + c);
        self.support.iter().all(|(_, c)| c > &Scalar::zero())
            && sum.is_one()
            && self.support.len() <= vs.affine_dim() + 1
            && &self.point(vs) == target
    }

    /// Largest coefficient, ties going to the lowest label.
    pub fn dominant(&self) -> (usize, Scalar) {
        let mut best = self.support[0].clone();
        for (l, c) in &self.support[1..] {
            if c > &best.1 {
                best = (*l, c.clone());
            }
        }
        best
    }
}

/// Decides `x ∈ conv(V)`; on success the decomposition comes from a basic
/// feasible solution and so has at most `affine_dim + 1` terms.
pub fn membership(x: &Vector, vs: &VertexSet) -> Result<Option<CaratheodoryDecomposition>> {
    if x.dim() != vs.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: vs.ambient_dim(),
            got: x.dim(),
        });
    }
    let m = vs.len();
    let mut rows: Vec<Constraint> = (0..vs.ambient_dim())
        .map(|c| {
            let coeffs = vs.points().iter().map(|p| p[c].clone()).collect();
            Constraint::new(coeffs, Relation::Eq, x[c].clone())
        })
        .collect();
    rows.push(Constraint::new(
        Vector::new(vec![Scalar::one(); m]),
        Relation::Eq,
        Scalar::one(),
    ));
    let lp = LinearProgram::new(
        Sense::Minimize,
        Vector::zeros(m),
        rows,
        vec![VariableBound::nonnegative(); m],
    )?;
    let out = solve_lp(&lp);
    Ok(out.primal.map(|alpha| CaratheodoryDecomposition {
        support: alpha
            .into_coords()
            .into_iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .collect(),
    }))
}

/// Intersection of the segment `x → y` with `conv(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentEntry {
    Disjoint,
    /// Parameters of `x' = x + t_min(y − x)` and `y' = x + t_max(y − x)`;
    /// `entry_witness` supports `conv(V)` at `x'` and keeps `x` on its
    /// far side.
    Entry {
        t_min: Scalar,
        t_max: Scalar,
        entry_witness: FaceWitness,
    },
}

pub fn segment_entry(x: &Vector, y: &Vector, vs: &VertexSet) -> Result<SegmentEntry> {
    if x == y {
        return Err(Error::DegenerateSegment);
    }
    for v in [x, y] {
        if v.dim() != vs.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: vs.ambient_dim(),
                got: v.dim(),
            });
        }
    }
    // Variables: t, then α_0..α_{m−1}.
    let m = vs.len();
    let dir = y - x;
    let mut rows: Vec<Constraint> = (0..vs.ambient_dim())
        .map(|c| {
            let mut coeffs = Vec::with_capacity(m + 1);
            coeffs.push(dir[c].clone());
            coeffs.extend(vs.points().iter().map(|p| -&p[c]));
            Constraint::new(Vector::new(coeffs), Relation::Eq, -&x[c])
        })
        .collect();
    let mut sum_row = vec![Scalar::one(); m + 1];
    sum_row[0] = Scalar::zero();
    rows.push(Constraint::new(Vector::new(sum_row), Relation::Eq, Scalar::one()));
    let mut bounds = vec![VariableBound::nonnegative(); m + 1];
    bounds[0] = VariableBound::between(Scalar::zero(), Scalar::one());
    let mut objective = vec![Scalar::zero(); m + 1];
    objective[0] = Scalar::one();
    let objective = Vector::new(objective);

    let lo = LinearProgram::new(Sense::Minimize, objective.clone(), rows.clone(), bounds.clone())?;
    let lo_out = solve_lp(&lo);
    if lo_out.status == LpStatus::Infeasible {
        return Ok(SegmentEntry::Disjoint);
    }
    let hi = LinearProgram::new(Sense::Maximize, objective, rows, bounds)?;
    let hi_out = solve_lp(&hi);
    let t_min = lo_out.objective_value.expect("bounded in [0, 1]");
    let t_max = hi_out.objective_value.expect("bounded in [0, 1]");

    // Coordinate-row multipliers u and sum-row multiplier w give
    // ⟨u, p_k⟩ ≥ w on V with equality on the entry face.
    let dual = lo_out.dual.expect("optimal outcome carries a dual");
    let d = vs.ambient_dim();
    let functional: Vector = dual[..d].iter().map(|u| -u).collect();
    let level = -&dual[d];
    let face_vertices = vs
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| functional.dot(p) == level)
        .map(|(k, _)| k)
        .collect();
    Ok(SegmentEntry::Entry {
        t_min,
        t_max,
        entry_witness: FaceWitness {
            functional,
            level,
            face_vertices,
        },
    })
}

/// Generators `{p_i − p_j}` of the difference body `P − P`, deduplicated
/// and sorted; always contains the origin and is closed under negation.
pub fn difference_generators(vs: &VertexSet) -> VertexSet {
    let mut set = BTreeSet::new();
    for p in vs.points() {
        for q in vs.points() {
            set.insert(p - q);
        }
    }
    VertexSet::new(set.into_iter().collect()).expect("deduplicated, same dimension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn set(points: &[&[i64]]) -> VertexSet {
        VertexSet::new(points.iter().map(|p| Vector::from_ints(p)).collect()).unwrap()
    }

    fn square() -> VertexSet {
        set(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]])
    }

    fn cube() -> VertexSet {
        VertexSet::new(
            (0..8)
                .map(|m| Vector::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            VertexSet::new(vec![Vector::from_ints(&[1, 2]), Vector::from_ints(&[1, 2])]),
            Err(Error::DuplicatePoint(0, 1))
        ));
        assert!(matches!(
            VertexSet::new(vec![Vector::from_ints(&[1, 2]), Vector::from_ints(&[1])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(set(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]]).affine_dim(), 1);
        assert_eq!(cube().affine_dim(), 3);
        let bad = AffineConstraint {
            coeffs: Vector::from_ints(&[1, 1]),
            rhs: int(0),
        };
        assert!(matches!(
            VertexSet::with_affine_constraints(vec![Vector::from_ints(&[1, 0])], vec![bad]),
            Err(Error::AffineConstraint { row: 0, point: 0 })
        ));
    }

    #[test]
    fn vertex_tests() {
        let tri = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        let w = tri.vertex_witness(0).unwrap().unwrap();
        assert!(w.verify(&tri));
        let mid = set(&[&[0, 0], &[2, 0], &[1, 0]]);
        assert!(!mid.is_vertex(2).unwrap());
        assert!(mid.is_vertex(0).unwrap());

        let mut pts: Vec<Vector> = cube().points().iter().map(|p| p.scale(&int(2))).collect();
        pts.push(Vector::from_ints(&[1, 1, 1]));
        let with_center = VertexSet::new(pts).unwrap();
        assert!(!with_center.is_vertex(8).unwrap());
        assert_eq!(with_center.non_vertices(), &[8]);
        assert_eq!(with_center.reduce_to_vertices().unwrap().len(), 8);
    }

    #[test]
    fn edges_of_small_polytopes() {
        let tri = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(tri.is_edge(1, 2).unwrap());
        assert_eq!(tri.edges().unwrap(), &[(0, 1), (0, 2), (1, 2)]);

        let sq = square();
        assert!(!sq.is_edge(0, 2).unwrap());
        assert_eq!(sq.edges().unwrap(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        let w = sq.edge_witness(0, 1).unwrap().unwrap();
        assert!(w.verify(&sq));

        let c = cube();
        assert!(c.is_edge(0, 4).unwrap());
        assert!(!c.is_edge(0, 7).unwrap());
        assert_eq!(c.edges().unwrap().len(), 12);
    }

    #[test]
    fn edges_require_convex_position() {
        let mid = set(&[&[0, 0], &[2, 0], &[1, 0]]);
        assert!(matches!(mid.edges(), Err(Error::NotConvexPosition(2))));
        assert!(matches!(mid.is_edge(0, 1), Err(Error::NotConvexPosition(2))));
    }

    #[test]
    fn membership_and_decomposition() {
        let tri = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        let centroid = Vector::new(vec![ratio(1, 3), ratio(1, 3)]);
        let dec = membership(&centroid, &tri).unwrap().unwrap();
        assert!(dec.verify(&tri, &centroid));
        assert_eq!(
            dec.support,
            vec![(0, ratio(1, 3)), (1, ratio(1, 3)), (2, ratio(1, 3))]
        );
        assert!(membership(&Vector::from_ints(&[2, 2]), &tri).unwrap().is_none());
    }

    #[test]
    fn segment_through_square() {
        let sq = square();
        let x = Vector::new(vec![int(-1), ratio(1, 2)]);
        let y = Vector::new(vec![int(2), ratio(1, 2)]);
        match segment_entry(&x, &y, &sq).unwrap() {
            SegmentEntry::Entry {
                t_min,
                t_max,
                entry_witness,
            } => {
                assert_eq!(t_min, ratio(1, 3));
                assert_eq!(t_max, ratio(2, 3));
                assert!(entry_witness.verify(&sq));
                let entry = x.lerp(&y, &t_min);
                assert_eq!(entry_witness.functional.dot(&entry), entry_witness.level);
                assert!(entry_witness.functional.dot(&x) > entry_witness.level);
                assert_eq!(entry_witness.face_vertices, vec![0, 3]);
            }
            SegmentEntry::Disjoint => panic!("segment crosses the square"),
        }
        let far = segment_entry(&Vector::from_ints(&[5, 5]), &Vector::from_ints(&[6, 7]), &sq);
        assert_eq!(far.unwrap(), SegmentEntry::Disjoint);
    }

    #[test]
    fn difference_body_generators() {
        let seg = set(&[&[0, 0], &[1, 0]]);
        let g = difference_generators(&seg);
        assert_eq!(
            g.points(),
            &[
                Vector::from_ints(&[-1, 0]),
                Vector::from_ints(&[0, 0]),
                Vector::from_ints(&[1, 0])
            ]
        );
        let sq = difference_generators(&square());
        assert_eq!(sq.len(), 9);
        for p in sq.points() {
            assert!(p.iter().all(|c| c >= &int(-1) && c <= &int(1)));
            assert!(sq.points().contains(&-p));
        }
    }
}
