use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::Scalar;
use crate::norms::{Norm, NormValue};
use crate::polytope::VertexSet;

/// All pairwise distances of a vertex set under one norm, computed once.
///
/// Relative-norm distances each cost an LP, so every check that needs
/// distances takes this table instead of a `(set, norm)` pair.
#[derive(Clone, Debug)]
pub struct PairDistances<'a> {
    vs: &'a VertexSet,
    norm: &'a Norm,
    /// Row-major upper triangle, `i < j`.
    values: Vec<NormValue>,
}

impl<'a> PairDistances<'a> {
    pub fn compute(vs: &'a VertexSet, norm: &'a Norm) -> Result<Self> {
        let n = vs.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let values = pairs
            .par_iter()
            .map(|&(i, j)| norm.distance(vs.point(i), vs.point(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PairDistances { vs, norm, values })
    }

    pub fn vertex_set(&self) -> &'a VertexSet {
        self.vs
    }

    pub fn norm(&self) -> &'a Norm {
        self.norm
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let n = self.vs.len();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// `‖p_i − p_j‖` for `i ≠ j`.
    pub fn get(&self, i: usize, j: usize) -> &NormValue {
        assert_ne!(i, j, "distance table has no diagonal");
        &self.values[self.index(i, j)]
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), &NormValue)> + '_ {
        let n = self.vs.len();
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.values.iter())
    }

    fn extreme(&self, pick_max: bool) -> Option<(NormValue, Vec<(usize, usize)>)> {
        let best = if pick_max {
            self.values.iter().max()?
        } else {
            self.values.iter().min()?
        };
        let pairs = self
            .pairs()
            .filter(|(_, v)| *v == best)
            .map(|(p, _)| p)
            .collect();
        Some((best.clone(), pairs))
    }

    /// Diameter and every pair attaining it. `None` for fewer than two points.
    pub fn diameter(&self) -> Option<(NormValue, Vec<(usize, usize)>)> {
        self.extreme(true)
    }

    pub fn min_distance(&self) -> Option<(NormValue, Vec<(usize, usize)>)> {
        self.extreme(false)
    }

    pub fn lambda(&self) -> Option<LambdaValue> {
        let (diameter, achieving_max_pairs) = self.diameter()?;
        let (min_distance, achieving_min_pairs) = self.min_distance()?;
        Some(LambdaValue {
            ratio_squared: diameter.ratio_squared(&min_distance),
            diameter,
            min_distance,
            achieving_max_pairs,
            achieving_min_pairs,
        })
    }
}

/// `λ(V) = diam(V) / min_{x≠y} ‖x − y‖`, kept exact through its square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaValue {
    pub diameter: NormValue,
    pub min_distance: NormValue,
    #[serde(with = "crate::exact::scalar_string")]
    pub ratio_squared: Scalar,
    pub achieving_max_pairs: Vec<(usize, usize)>,
    pub achieving_min_pairs: Vec<(usize, usize)>,
}

impl LambdaValue {
    /// λ itself when it is rational.
    pub fn value(&self) -> Option<Scalar> {
        crate::norms::exact_sqrt(&self.ratio_squared)
    }

    pub fn is_equidistant(&self) -> bool {
        self.diameter == self.min_distance
    }
}

/// Diameter with all achieving pairs.
pub fn diameter(vs: &VertexSet, norm: &Norm) -> Result<(NormValue, Vec<(usize, usize)>)> {
    vs_has_pair(vs)?;
    Ok(PairDistances::compute(vs, norm)?
        .diameter()
        .expect("at least two points"))
}

pub fn lambda(vs: &VertexSet, norm: &Norm) -> Result<LambdaValue> {
    vs_has_pair(vs)?;
    Ok(PairDistances::compute(vs, norm)?
        .lambda()
        .expect("at least two points"))
}

pub fn is_equidistant(vs: &VertexSet, norm: &Norm) -> Result<bool> {
    Ok(lambda(vs, norm)?.is_equidistant())
}

fn vs_has_pair(vs: &VertexSet) -> Result<()> {
    if vs.len() < 2 {
        return Err(crate::Error::TooFewPoints {
            needed: 2,
            got: vs.len(),
        });
    }
    Ok(())
}

/// Outcome of the subequilateral test: every edge as long as the diameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubequilateralCheck {
    pub subequilateral: bool,
    pub diameter: NormValue,
    /// First edge (lexicographic) shorter than the diameter, with its length.
    pub violating_edge: Option<((usize, usize), NormValue)>,
}

pub fn is_subequilateral(dists: &PairDistances<'_>) -> Result<SubequilateralCheck> {
    let vs = dists.vertex_set();
    vs_has_pair(vs)?;
    vs.require_affine_dim(1)?;
    let edges = vs.edges()?;
    let (diameter, _) = dists.diameter().expect("at least two points");
    let violating_edge = edges
        .iter()
        .find(|&&(i, j)| dists.get(i, j) != &diameter)
        .map(|&(i, j)| ((i, j), dists.get(i, j).clone()));
    Ok(SubequilateralCheck {
        subequilateral: violating_edge.is_none(),
        diameter,
        violating_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Vector};

    fn cube() -> VertexSet {
        VertexSet::new(
            (0..8)
                .map(|m| Vector::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
                .collect(),
        )
        .unwrap()
    }

    fn square() -> VertexSet {
        VertexSet::new(vec![
            Vector::from_ints(&[0, 0]),
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[1, 1]),
            Vector::from_ints(&[0, 1]),
        ])
        .unwrap()
    }

    #[test]
    fn square_diameter_in_linf() {
        let (d, pairs) = diameter(&square(), &Norm::Linf).unwrap();
        assert_eq!(d, NormValue::rational(int(1)));
        assert_eq!(pairs.len(), 6);
    }

    #[test]
    fn corner_triangle_in_l1() {
        let vs = VertexSet::new(vec![
            Vector::from_ints(&[0, 0]),
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[0, 1]),
        ])
        .unwrap();
        let (d, pairs) = diameter(&vs, &Norm::L1).unwrap();
        assert_eq!(d, NormValue::rational(int(2)));
        assert_eq!(pairs, vec![(1, 2)]);
    }

    #[test]
    fn equidistance() {
        let c = cube();
        assert!(is_equidistant(&c, &Norm::Linf).unwrap());
        assert!(!is_equidistant(&c, &Norm::L2).unwrap());
        let lam = lambda(&c, &Norm::L2).unwrap();
        assert_eq!(lam.ratio_squared, int(3));
        assert_eq!(lam.value(), None);
        let cross = VertexSet::new(
            (0..3)
                .flat_map(|i| [Vector::unit(3, i), -&Vector::unit(3, i)])
                .collect(),
        )
        .unwrap();
        assert!(is_equidistant(&cross, &Norm::L1).unwrap());
    }

    #[test]
    fn subequilateral_checks() {
        let sq = square();
        let linf = Norm::Linf;
        let d = PairDistances::compute(&sq, &linf).unwrap();
        assert!(is_subequilateral(&d).unwrap().subequilateral);

        let c = cube();
        let l2 = Norm::L2;
        let d = PairDistances::compute(&c, &l2).unwrap();
        let check = is_subequilateral(&d).unwrap();
        assert!(!check.subequilateral);
        assert_eq!(check.diameter, NormValue::sqrt(int(3)));
        let ((i, j), len) = check.violating_edge.unwrap();
        assert_eq!((i, j), (0, 1));
        assert_eq!(len, NormValue::sqrt(int(1)));
    }

    #[test]
    fn table_indexing_is_symmetric() {
        let c = cube();
        let n = Norm::L1;
        let d = PairDistances::compute(&c, &n).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(d.get(i, j), d.get(j, i));
                    let want = NormValue::rational(int((i ^ j).count_ones() as i64));
                    assert_eq!(d.get(i, j), &want);
                }
            }
        }
    }
}
