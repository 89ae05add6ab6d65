//! Randomised invariants of the exact kernel, the norms and the hull
//! primitives, each checked against an independent computation.

use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subeq::exact::{
    int, solve_lp, Constraint, LinearProgram, LpStatus, Relation, Scalar, Sense, VariableBound,
    Vector,
};
use subeq::norms::{Norm, NormValue};
use subeq::oracle::{edges_by_facet_enumeration, is_vertex_exhaustive, lp_by_vertex_enumeration};
use subeq::polytope::{difference_generators, membership, segment_entry, SegmentEntry, VertexSet};
use subeq::suite::random_lp;

fn int_vector(dim: usize, range: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-range..=range, dim).prop_map(|c| Vector::from_ints(&c))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn rational_vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), dim).prop_map(Vector::new)
}

/// Distinct integer points in the plane or in space spanning it.
fn full_dim_set(dim: usize, max_points: usize) -> impl Strategy<Value = VertexSet> {
    prop::collection::btree_set(prop::collection::vec(-3i64..=3, dim), dim + 1..=max_points)
        .prop_map(|pts| {
            VertexSet::new(pts.into_iter().map(|p| Vector::from_ints(&p)).collect())
                .expect("distinct points")
        })
        .prop_filter("full-dimensional", move |vs| vs.affine_dim() == dim)
}

/// `max{⟨f, x⟩ : ⟨f, p_i − p_j⟩ ≤ 1}` by vertex enumeration: the support
/// function of the polar of `P − P`, which equals the gauge of `P − P`.
fn relative_norm_by_support(vs: &VertexSet, x: &Vector) -> Scalar {
    let rows = vs
        .points()
        .iter()
        .flat_map(|p| vs.points().iter().map(move |q| p - q))
        .filter(|g| !g.is_zero())
        .map(|g| Constraint::new(g, Relation::Le, int(1)))
        .collect();
    let lp = LinearProgram::with_sense(Sense::Maximize, x.clone(), rows).unwrap();
    let (status, value) = lp_by_vertex_enumeration(&lp);
    assert_eq!(status, LpStatus::Optimal);
    value.unwrap()
}

fn norms_on(vs: &VertexSet) -> Vec<Norm> {
    vec![Norm::L1, Norm::L2, Norm::Linf, Norm::relative(vs).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_matches_vertex_enumeration(seed in any::<u64>()) {
        let lp = random_lp(&mut ChaCha8Rng::seed_from_u64(seed));
        let out = solve_lp(&lp);
        let (status, value) = lp_by_vertex_enumeration(&lp);
        prop_assert_eq!(out.status, status);
        prop_assert_eq!(out.objective_value.clone(), value);
        prop_assert!(out.verify(&lp).is_ok(), "{:?}", out.verify(&lp));
    }

    #[test]
    fn fractional_rows_keep_duals_valid(
        a in rational_vector(2),
        b in rational_vector(2),
        r1 in rational(),
        r2 in rational(),
        c in rational_vector(2),
    ) {
        let lp = LinearProgram::new(
            Sense::Minimize,
            c,
            vec![
                Constraint::new(a, Relation::Ge, r1),
                Constraint::new(b, Relation::Le, r2),
            ],
            vec![VariableBound::between(int(-5), int(5)); 2],
        )
        .unwrap();
        let out = solve_lp(&lp);
        prop_assert!(out.verify(&lp).is_ok(), "{:?}", out.verify(&lp));
    }

    #[test]
    fn norm_axioms(vs in full_dim_set(2, 6), x in int_vector(2, 4), y in int_vector(2, 4), t in rational()) {
        for norm in norms_on(&vs) {
            let nx = norm.eval(&x).unwrap();
            prop_assert_eq!(nx.is_zero(), x.is_zero());
            prop_assert_eq!(norm.eval(&-&x).unwrap(), nx.clone());
            prop_assert_eq!(norm.eval(&x.scale(&t)).unwrap(), nx.scale(&t.abs()));
            let ny = norm.eval(&y).unwrap();
            let nxy = norm.eval(&(&x + &y)).unwrap();
            prop_assert!(NormValue::sum_at_least(&nx, &ny, &nxy), "{} fails triangle", norm);
        }
    }

    #[test]
    fn holder_inequality(vs in full_dim_set(3, 6), x in int_vector(3, 3), f in int_vector(3, 3)) {
        for norm in norms_on(&vs) {
            let pairing = f.dot(&x);
            if !pairing.is_positive() {
                continue;
            }
            let bound = norm.dual_eval(&f).unwrap().squared() * norm.eval(&x).unwrap().squared();
            prop_assert!(&pairing * &pairing <= bound, "{} breaks Hölder", norm);
        }
    }

    #[test]
    fn relative_norm_matches_support_function(vs in full_dim_set(2, 5), x in int_vector(2, 4)) {
        let norm = Norm::relative(&vs).unwrap();
        let got = norm.eval(&x).unwrap();
        prop_assert_eq!(got, NormValue::rational(relative_norm_by_support(&vs, &x)));
    }

    #[test]
    fn relative_diameter_is_one(vs in full_dim_set(3, 7)) {
        let norm = Norm::relative(&vs).unwrap();
        let mut diameter = NormValue::zero();
        for p in vs.points() {
            for q in vs.points() {
                let d = norm.distance(p, q).unwrap();
                prop_assert!(d <= NormValue::rational(int(1)));
                diameter = diameter.max(d);
            }
        }
        prop_assert_eq!(diameter, NormValue::rational(int(1)));
    }

    #[test]
    fn difference_generators_are_all_differences(vs in full_dim_set(2, 6)) {
        let gens: BTreeSet<Vector> = difference_generators(&vs).points().iter().cloned().collect();
        let direct: BTreeSet<Vector> = vs
            .points()
            .iter()
            .flat_map(|p| vs.points().iter().map(move |q| p - q))
            .collect();
        prop_assert!(gens.contains(&Vector::zeros(2)));
        for g in &gens {
            prop_assert!(gens.contains(&-g));
        }
        prop_assert_eq!(gens, direct);
    }

    #[test]
    fn segment_entry_lands_on_the_hull(vs in full_dim_set(2, 6), x in int_vector(2, 5), y in int_vector(2, 5)) {
        prop_assume!(x != y);
        match segment_entry(&x, &y, &vs).unwrap() {
            SegmentEntry::Disjoint => {
                let mid = x.lerp(&y, &Scalar::new(1.into(), 2.into()));
                prop_assert!(membership(&mid, &vs).unwrap().is_none());
                prop_assert!(membership(&x, &vs).unwrap().is_none());
            }
            SegmentEntry::Entry { t_min, t_max, entry_witness } => {
                prop_assert!(t_min <= t_max);
                let entry = x.lerp(&y, &t_min);
                let exit = x.lerp(&y, &t_max);
                let dec = membership(&entry, &vs).unwrap();
                prop_assert!(dec.is_some_and(|d| d.verify(&vs, &entry)));
                prop_assert!(membership(&exit, &vs).unwrap().is_some());
                prop_assert!(entry_witness.verify(&vs));
                prop_assert_eq!(entry_witness.functional.dot(&entry), entry_witness.level.clone());
                if t_min.is_positive() {
                    prop_assert!(entry_witness.functional.dot(&x) > entry_witness.level);
                }
            }
        }
    }

    #[test]
    fn vertices_and_edges_match_oracles(
        pts in prop::collection::btree_set(prop::collection::vec(-2i64..=2, 3), 4..=8),
    ) {
        let vs = VertexSet::new(pts.into_iter().map(|p| Vector::from_ints(&p)).collect()).unwrap();
        for i in 0..vs.len() {
            prop_assert_eq!(vs.is_vertex(i).unwrap(), is_vertex_exhaustive(vs.points(), i));
        }
        if vs.affine_dim() == 3 {
            let hull = vs.reduce_to_vertices().unwrap();
            prop_assert_eq!(hull.edge_set().unwrap(), edges_by_facet_enumeration(hull.points()));
        }
    }

    #[test]
    fn norm_values_order_by_value(a in 1i64..30, b in 0i64..900, c in 0i64..30) {
        let r = NormValue::rational(int(a));
        let s = NormValue::sqrt(int(b));
        prop_assert_eq!(r.cmp(&s), (a * a).cmp(&b));
        prop_assert_eq!(r == s, a * a == b);
        prop_assert_eq!(r.squared(), int(a * a));
        // Perfect squares make the two-root test checkable by hand.
        let (ra, rb, rc) = (
            NormValue::sqrt(int(a * a)),
            NormValue::sqrt(int(c * c)),
            NormValue::rational(int(a + c - 1)),
        );
        prop_assert!(!NormValue::sum_at_least(&rc, &NormValue::zero(), &NormValue::rational(int(a + c))));
        prop_assert!(NormValue::sum_at_least(&ra, &rb, &rc));
        prop_assert!(NormValue::sum_at_least(&ra, &rb, &NormValue::rational(int(a + c))));
        prop_assert!(!NormValue::sum_at_least(&ra, &rb, &NormValue::rational(int(a + c + 1))));
    }
}
