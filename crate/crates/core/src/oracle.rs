//! Brute-force reference implementations.
//!
//! These deliberately share no code path with the simplex kernel: they
//! enumerate bases, subsets and candidate facets and solve the resulting
//! square systems with their own Gauss–Jordan routine. They are exponential
//! and only meant for small instances in tests and in `verify-suite`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{LinearProgram, LpStatus, Relation, Scalar, Sense, Vector};

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
fn rref(m: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Unique solution of `A x = b`, or `None` if the system is inconsistent or
/// underdetermined.
fn unique_solution(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// One-dimensional null space of the rows, if that is what they span.
fn null_vector(rows: &[Vec<Scalar>], cols: usize) -> Option<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Scalar::zero(); cols];
    v[free] = Scalar::one();
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = -&m[i][free];
    }
    Some(v)
}

fn subsets(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut visit);
}

/// Status and optimal value of `lp` by enumerating basic solutions.
///
/// Requires integer data. The program is intersected with the box
/// `|x_j| ≤ M`, where `M` exceeds every Cramer-rule coordinate the
/// original polyhedron can produce, and solved at `M` and `2M`: a bounded
/// program gives the same optimum both times, an unbounded one does not.
pub fn lp_by_vertex_enumeration(lp: &LinearProgram) -> (LpStatus, Option<Scalar>) {
    let n = lp.num_vars();
    let mut max_abs = BigInt::one();
    let mut note = |s: &Scalar| {
        assert!(s.is_integer(), "vertex-enumeration oracle needs integer data");
        if s.numer().abs() > max_abs {
            max_abs = s.numer().abs();
        }
    };
    for c in lp.constraints() {
        c.coeffs.iter().for_each(&mut note);
        note(&c.rhs);
    }
    for b in lp.bounds() {
        b.lower.iter().chain(b.upper.iter()).for_each(&mut note);
    }
    lp.objective().iter().for_each(&mut note);
    let factorial: BigInt = (1..=n.max(1)).map(BigInt::from).product();
    let cramer = factorial * num_traits::pow(max_abs, n.max(1)) + 1u32;
    let m = Scalar::from_integer(cramer * 4u32);

    let Some(v1) = boxed_optimum(lp, &m) else {
        return (LpStatus::Infeasible, None);
    };
    let v2 = boxed_optimum(lp, &(&m * Scalar::from_integer(2.into()))).expect("box grew");
    if v1 == v2 {
        (LpStatus::Optimal, Some(v1))
    } else {
        (LpStatus::Unbounded, None)
    }
}

fn boxed_optimum(lp: &LinearProgram, m: &Scalar) -> Option<Scalar> {
    let n = lp.num_vars();
    // Hyperplanes a·x = b that may be tight at a vertex.
    let mut planes: Vec<(Vec<Scalar>, Scalar)> = Vec::new();
    for c in lp.constraints() {
        planes.push((c.coeffs.coords().to_vec(), c.rhs.clone()));
    }
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for (j, b) in lp.bounds().iter().enumerate() {
        let lo = match &b.lower {
            Some(l) if l > &-m => l.clone(),
            _ => -m.clone(),
        };
        let hi = match &b.upper {
            Some(u) if u < m => u.clone(),
            _ => m.clone(),
        };
        let unit: Vec<Scalar> = (0..n)
            .map(|i| if i == j { Scalar::one() } else { Scalar::zero() })
            .collect();
        planes.push((unit.clone(), lo.clone()));
        planes.push((unit, hi.clone()));
        lower.push(lo);
        upper.push(hi);
    }
    let feasible = |x: &[Scalar]| {
        let xv = Vector::new(x.to_vec());
        lp.constraints().iter().all(|c| {
            let lhs = c.coeffs.dot(&xv);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        }) && (0..n).all(|j| x[j] >= lower[j] && x[j] <= upper[j])
    };
    let sign = match lp.sense() {
        Sense::Minimize => Scalar::one(),
        Sense::Maximize => -Scalar::one(),
    };
    let mut best: Option<Scalar> = None;
    let mut consider = |x: Vec<Scalar>| {
        if feasible(&x) {
            let v = lp.objective().dot(&Vector::new(x));
            if best.as_ref().is_none_or(|b| &sign * &v < &sign * b) {
                best = Some(v);
            }
        }
    };
    if n == 0 {
        consider(Vec::new());
        return best;
    }
    subsets(planes.len(), n, |idx| {
        let a: Vec<Vec<Scalar>> = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let b: Vec<Scalar> = idx.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = unique_solution(&a, &b) {
            consider(x);
        }
    });
    best
}

/// `true` iff `points[i]` is not a convex combination of the other points,
/// decided by trying every affinely independent subset of at most
/// `dim + 1` other points (Carathéodory).
pub fn is_vertex_exhaustive(points: &[Vector], i: usize) -> bool {
    let dim = points[i].dim();
    let others: Vec<usize> = (0..points.len()).filter(|&k| k != i).collect();
    for size in 1..=(dim + 1).min(others.len()) {
        let mut inside = false;
        subsets(others.len(), size, |idx| {
            if inside {
                return;
            }
            // Rows: one per coordinate plus the affine row Σα = 1.
            let mut a: Vec<Vec<Scalar>> = (0..dim)
                .map(|c| idx.iter().map(|&s| points[others[s]][c].clone()).collect())
                .collect();
            a.push(vec![Scalar::one(); size]);
            let mut b: Vec<Scalar> = points[i].coords().to_vec();
            b.push(Scalar::one());
            if let Some(alpha) = unique_solution(&a, &b) {
                if alpha.iter().all(|x| !x.is_negative()) {
                    inside = true;
                }
            }
        });
        if inside {
            return false;
        }
    }
    true
}

/// All facets of a full-dimensional polytope, as sets of point labels, by
/// testing the hyperplane through every affinely independent `dim`-subset.
pub fn facets_by_enumeration(points: &[Vector]) -> BTreeSet<BTreeSet<usize>> {
    let dim = points.first().map_or(0, Vector::dim);
    let mut facets = BTreeSet::new();
    subsets(points.len(), dim, |idx| {
        // (a, b) with a·p − b = 0 on the subset.
        let rows: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&k| {
                let mut r = points[k].coords().to_vec();
                r.push(-Scalar::one());
                r
            })
            .collect();
        let Some(h) = null_vector(&rows, dim + 1) else {
            return;
        };
        let normal = Vector::new(h[..dim].to_vec());
        if normal.is_zero() {
            return;
        }
        let level = &h[dim];
        let (mut above, mut below) = (false, false);
        let mut on = BTreeSet::new();
        for (k, p) in points.iter().enumerate() {
            let s = normal.dot(p) - level;
            if s.is_positive() {
                above = true;
            } else if s.is_negative() {
                below = true;
            } else {
                on.insert(k);
            }
        }
        if !(above && below) {
            facets.insert(on);
        }
    });
    facets
}

/// Edge set of a full-dimensional polytope in convex position: a pair is
/// an edge iff the intersection of all facets containing both points is
/// exactly that pair.
pub fn edges_by_facet_enumeration(points: &[Vector]) -> BTreeSet<(usize, usize)> {
    let facets = facets_by_enumeration(points);
    let mut incidence: BTreeMap<usize, Vec<&BTreeSet<usize>>> = BTreeMap::new();
    for f in &facets {
        for &k in f {
            incidence.entry(k).or_default().push(f);
        }
    }
    let mut edges = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let mut common: Option<BTreeSet<usize>> = None;
            for f in incidence.get(&i).into_iter().flatten() {
                if f.contains(&j) {
                    common = Some(match common {
                        None => (*f).clone(),
                        Some(c) => c.intersection(f).copied().collect(),
                    });
                }
            }
            if common.is_some_and(|c| c.len() == 2) {
                edges.insert((i, j));
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Constraint, VariableBound};

    fn cube() -> Vec<Vector> {
        (0..8)
            .map(|m| Vector::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect()
    }

    #[test]
    fn cube_has_six_facets_and_twelve_edges() {
        let pts = cube();
        assert_eq!(facets_by_enumeration(&pts).len(), 6);
        let edges = edges_by_facet_enumeration(&pts);
        assert_eq!(edges.len(), 12);
        for (i, j) in edges {
            assert_eq!((i ^ j).count_ones(), 1);
        }
    }

    #[test]
    fn cube_center_is_not_a_vertex() {
        let mut pts: Vec<Vector> = cube().iter().map(|p| p.scale(&int(2))).collect();
        pts.push(Vector::from_ints(&[1, 1, 1]));
        assert!(!is_vertex_exhaustive(&pts, 8));
        assert!((0..8).all(|i| is_vertex_exhaustive(&pts, i)));
    }

    #[test]
    fn enumeration_statuses() {
        let x_ge_3 = LinearProgram::with_sense(
            Sense::Minimize,
            Vector::from_ints(&[1]),
            vec![Constraint::new(Vector::from_ints(&[1]), Relation::Ge, int(3))],
        )
        .unwrap();
        assert_eq!(lp_by_vertex_enumeration(&x_ge_3), (LpStatus::Optimal, Some(int(3))));

        let unbounded = LinearProgram::new(
            Sense::Minimize,
            Vector::from_ints(&[-1]),
            vec![],
            vec![VariableBound::nonnegative()],
        )
        .unwrap();
        assert_eq!(lp_by_vertex_enumeration(&unbounded).0, LpStatus::Unbounded);

        let infeasible = LinearProgram::feasibility(
            1,
            vec![
                Constraint::new(Vector::from_ints(&[1]), Relation::Ge, int(1)),
                Constraint::new(Vector::from_ints(&[1]), Relation::Le, int(0)),
            ],
        )
        .unwrap();
        assert_eq!(lp_by_vertex_enumeration(&infeasible).0, LpStatus::Infeasible);
    }
}
