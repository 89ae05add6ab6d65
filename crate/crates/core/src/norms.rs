//! Norms with exact values: ℓ₁, ℓ₂, ℓ∞ and the relative norm of a polytope.
//!
//! The relative norm `‖·‖_P` has unit ball `P − P`. It is evaluated as the
//! gauge of `conv{p_i − p_j}`: the least total weight of a nonnegative
//! combination of difference generators that reproduces the vector.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    format_scalar, solve_lp, Constraint, LinearProgram, LpStatus, Relation, Scalar, Sense,
    VariableBound, Vector,
};
use crate::polytope::{difference_generators, VertexSet};

/// Exact nonnegative norm value. ℓ₂ values are carried as their square.
///
/// Equality and ordering compare the values, not the representation, so
/// `Rational(2)` equals `SqrtRational(4)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormValue {
    Rational {
        #[serde(with = "crate::exact::scalar_string")]
        value: Scalar,
    },
    SqrtRational {
        #[serde(with = "crate::exact::scalar_string")]
        square: Scalar,
    },
}

impl NormValue {
    pub fn rational(value: Scalar) -> Self {
        debug_assert!(!value.is_negative());
        NormValue::Rational { value }
    }

    pub fn sqrt(square: Scalar) -> Self {
        debug_assert!(!square.is_negative());
        NormValue::SqrtRational { square }
    }

    pub fn zero() -> Self {
        NormValue::rational(Scalar::zero())
    }

    pub fn squared(&self) -> Scalar {
        match self {
            NormValue::Rational { value } => value * value,
            NormValue::SqrtRational { square } => square.clone(),
        }
    }

    /// The value itself when it is rational. A square root of a perfect
    /// square counts as rational.
    pub fn as_rational(&self) -> Option<Scalar> {
        match self {
            NormValue::Rational { value } => Some(value.clone()),
            NormValue::SqrtRational { square } => exact_sqrt(square),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.squared().is_zero()
    }

    /// `factor · self` for `factor ≥ 0`, keeping the tag.
    pub fn scale(&self, factor: &Scalar) -> NormValue {
        debug_assert!(!factor.is_negative());
        match self {
            NormValue::Rational { value } => NormValue::rational(value * factor),
            NormValue::SqrtRational { square } => NormValue::sqrt(square * factor * factor),
        }
    }

    /// `(self / other)²`. Panics if `other` is zero.
    pub fn ratio_squared(&self, other: &NormValue) -> Scalar {
        self.squared() / other.squared()
    }

    /// Decides `a + b ≥ c` exactly by squaring twice:
    /// `√A + √B ≥ √C ⇔ C − A − B ≤ 0 ∨ 4AB ≥ (C − A − B)²`.
    pub fn sum_at_least(a: &NormValue, b: &NormValue, c: &NormValue) -> bool {
        let (sa, sb, sc) = (a.squared(), b.squared(), c.squared());
        let gap = &sc - &sa - &sb;
        if !gap.is_positive() {
            return true;
        }
        Scalar::from_integer(4.into()) * sa * sb >= &gap * &gap
    }
}

impl PartialEq for NormValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for NormValue {}

impl PartialOrd for NormValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NormValue::Rational { value: a }, NormValue::Rational { value: b }) => a.cmp(b),
            _ => self.squared().cmp(&other.squared()),
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Rational { value } => f.write_str(&format_scalar(value)),
            NormValue::SqrtRational { square } => match exact_sqrt(square) {
                Some(r) => f.write_str(&format_scalar(&r)),
                None => write!(f, "sqrt({})", format_scalar(square)),
            },
        }
    }
}

/// Rational square root of `s`, if one exists.
pub fn exact_sqrt(s: &Scalar) -> Option<Scalar> {
    if s.is_negative() {
        return None;
    }
    let n = s.numer().sqrt();
    let d = s.denom().sqrt();
    if &(&n * &n) == s.numer() && &(&d * &d) == s.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Relative norm `‖·‖_P`, holding its difference generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeNorm {
    polytope: VertexSet,
    generators: Vec<Vector>,
}

impl RelativeNorm {
    /// The relative norm is a norm on the direction space of `aff(P)`;
    /// vectors outside it have no finite value.
    pub fn new(polytope: VertexSet) -> Result<Self> {
        polytope.require_affine_dim(1)?;
        let generators = difference_generators(&polytope)
            .points()
            .iter()
            .filter(|g| !g.is_zero())
            .cloned()
            .collect();
        Ok(RelativeNorm {
            polytope,
            generators,
        })
    }

    pub fn polytope(&self) -> &VertexSet {
        &self.polytope
    }

    /// Nonzero difference generators `p_i − p_j`.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// `min{t : x = t(a − b), a, b ∈ P}` as the program
    /// `min Σβ` over `Σβ_i p_i − Σγ_i p_i = x`, `Σβ = Σγ`, `β, γ ≥ 0`;
    /// it has `2|V|` columns instead of one per difference generator.
    fn eval(&self, x: &Vector) -> Result<Scalar> {
        if x.is_zero() {
            return Ok(Scalar::zero());
        }
        let pts = self.polytope.points();
        let m = pts.len();
        let mut rows: Vec<Constraint> = (0..x.dim())
            .map(|c| {
                let coeffs = pts
                    .iter()
                    .map(|p| p[c].clone())
                    .chain(pts.iter().map(|p| -&p[c]))
                    .collect();
                Constraint::new(coeffs, Relation::Eq, x[c].clone())
            })
            .collect();
        let balance = std::iter::repeat_n(Scalar::one(), m)
            .chain(std::iter::repeat_n(-Scalar::one(), m))
            .collect();
        rows.push(Constraint::new(balance, Relation::Eq, Scalar::zero()));
        let objective = std::iter::repeat_n(Scalar::one(), m)
            .chain(std::iter::repeat_n(Scalar::zero(), m))
            .collect();
        let lp = LinearProgram::new(
            Sense::Minimize,
            objective,
            rows,
            vec![VariableBound::nonnegative(); 2 * m],
        )?;
        let out = solve_lp(&lp);
        match out.status {
            LpStatus::Optimal => Ok(out.objective_value.expect("optimal has a value")),
            _ => Err(Error::DegenerateUnitBall),
        }
    }

    fn dual(&self, f: &Vector) -> Scalar {
        self.generators
            .iter()
            .map(|g| f.dot(g))
            .max()
            .unwrap_or_else(Scalar::zero)
            .max(Scalar::zero())
    }
}

/// Norm choice without its data, as named on the command line and in files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    L1,
    L2,
    Linf,
    Relative,
}

impl NormKind {
    pub const ALL: [NormKind; 4] = [NormKind::L1, NormKind::L2, NormKind::Linf, NormKind::Relative];

    /// The norm itself; `Relative` is taken with respect to `vs`.
    pub fn build(self, vs: &VertexSet) -> Result<Norm> {
        Ok(match self {
            NormKind::L1 => Norm::L1,
            NormKind::L2 => Norm::L2,
            NormKind::Linf => Norm::Linf,
            NormKind::Relative => Norm::relative(vs)?,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
            NormKind::Relative => "relative",
        }
    }
}

impl std::str::FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NormKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown norm '{s}'")))
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    Linf,
    Relative(Box<RelativeNorm>),
}

impl Norm {
    pub fn relative(polytope: &VertexSet) -> Result<Norm> {
        Ok(Norm::Relative(Box::new(RelativeNorm::new(polytope.clone())?)))
    }

    pub fn kind(&self) -> NormKind {
        match self {
            Norm::L1 => NormKind::L1,
            Norm::L2 => NormKind::L2,
            Norm::Linf => NormKind::Linf,
            Norm::Relative(_) => NormKind::Relative,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn check_dim(&self, x: &Vector) -> Result<()> {
        if let Norm::Relative(r) = self {
            let expected = r.polytope.ambient_dim();
            if x.dim() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    got: x.dim(),
                });
            }
        }
        Ok(())
    }

    /// `‖x‖`.
    pub fn eval(&self, x: &Vector) -> Result<NormValue> {
        self.check_dim(x)?;
        Ok(match self {
            Norm::L1 => NormValue::rational(x.l1()),
            Norm::Linf => NormValue::rational(x.linf()),
            Norm::L2 => NormValue::sqrt(x.squared_l2()),
            Norm::Relative(r) => NormValue::rational(r.eval(x)?),
        })
    }

    /// `‖a − b‖`.
    pub fn distance(&self, a: &Vector, b: &Vector) -> Result<NormValue> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            });
        }
        self.eval(&(a - b))
    }

    /// Dual norm `‖f‖* = sup{⟨f, y⟩ : ‖y‖ ≤ 1}`.
    pub fn dual_eval(&self, f: &Vector) -> Result<NormValue> {
        self.check_dim(f)?;
        Ok(match self {
            Norm::L1 => NormValue::rational(f.linf()),
            Norm::Linf => NormValue::rational(f.l1()),
            Norm::L2 => NormValue::sqrt(f.squared_l2()),
            Norm::Relative(r) => NormValue::rational(r.dual(f)),
        })
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

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
    fn standard_norms() {
        let x = Vector::from_ints(&[3, -4]);
        assert_eq!(Norm::L1.eval(&x).unwrap(), NormValue::rational(int(7)));
        assert_eq!(Norm::Linf.eval(&x).unwrap(), NormValue::rational(int(4)));
        assert_eq!(Norm::L2.eval(&x).unwrap().as_rational(), Some(int(5)));
        let e1 = Vector::unit(2, 0);
        let e2 = Vector::unit(2, 1);
        assert_eq!(Norm::L1.distance(&e1, &e2).unwrap(), NormValue::rational(int(2)));
        assert_eq!(
            Norm::Linf
                .distance(&Vector::zeros(2), &Vector::from_ints(&[1, 1]))
                .unwrap(),
            NormValue::rational(int(1))
        );
    }

    #[test]
    fn relative_norm_of_square() {
        let n = Norm::relative(&square()).unwrap();
        assert_eq!(n.eval(&Vector::from_ints(&[1, 1])).unwrap(), NormValue::rational(int(1)));
        assert_eq!(
            n.eval(&Vector::new(vec![ratio(1, 2), int(-2)])).unwrap(),
            NormValue::rational(int(2))
        );
        assert_eq!(n.dual_eval(&Vector::from_ints(&[1, 1])).unwrap(), NormValue::rational(int(2)));
    }

    #[test]
    fn duals_swap() {
        let f = Vector::from_ints(&[3, -4]);
        assert_eq!(Norm::L1.dual_eval(&f).unwrap(), NormValue::rational(int(4)));
        assert_eq!(Norm::Linf.dual_eval(&f).unwrap(), NormValue::rational(int(7)));
        assert_eq!(Norm::L2.dual_eval(&f).unwrap(), NormValue::sqrt(int(25)));
    }

    #[test]
    fn relative_norm_outside_span_is_degenerate() {
        let seg = VertexSet::new(vec![Vector::from_ints(&[0, 0]), Vector::from_ints(&[2, 0])])
            .unwrap();
        let n = Norm::relative(&seg).unwrap();
        assert_eq!(n.eval(&Vector::from_ints(&[1, 0])).unwrap(), NormValue::rational(ratio(1, 2)));
        assert!(matches!(
            n.eval(&Vector::from_ints(&[0, 1])),
            Err(Error::DegenerateUnitBall)
        ));
        let point = VertexSet::new(vec![Vector::from_ints(&[0, 0])]).unwrap();
        assert!(Norm::relative(&point).is_err());
    }

    #[test]
    fn value_ordering_across_tags() {
        let two = NormValue::rational(int(2));
        let root3 = NormValue::sqrt(int(3));
        let root4 = NormValue::sqrt(int(4));
        assert!(root3 < two);
        assert_eq!(root4.cmp(&two), Ordering::Equal);
        assert_eq!(root3.to_string(), "sqrt(3)");
        assert_eq!(root4.to_string(), "2");
        assert_eq!(root3.scale(&int(2)).squared(), int(12));
        assert_eq!(two.ratio_squared(&root3), ratio(4, 3));
    }

    #[test]
    fn sum_comparison_by_double_squaring() {
        let one = NormValue::rational(int(1));
        let r2 = NormValue::sqrt(int(2));
        // 1 + 1 ≥ √2, 1 + √2 ≥ √5 (≈2.414 vs 2.236), 1 + √2 < √6.
        assert!(NormValue::sum_at_least(&one, &one, &r2));
        assert!(NormValue::sum_at_least(&one, &r2, &NormValue::sqrt(int(5))));
        assert!(!NormValue::sum_at_least(&one, &r2, &NormValue::sqrt(int(6))));
        // Equality: √2 + √8 = √18.
        assert!(NormValue::sum_at_least(&r2, &NormValue::sqrt(int(8)), &NormValue::sqrt(int(18))));
        assert!(!NormValue::sum_at_least(
            &r2,
            &NormValue::sqrt(int(8)),
            &NormValue::sqrt(ratio(18001, 1000))
        ));
    }

    #[test]
    fn json_is_exact() {
        let v = NormValue::sqrt(ratio(5, 7));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"kind":"sqrt_rational","square":"5/7"}"#);
        assert_eq!(serde_json::from_str::<NormValue>(&s).unwrap(), v);
    }
}
