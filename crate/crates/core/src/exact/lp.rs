//! Dense two-phase primal simplex over exact rationals.
//!
//! Every row of the user's program is first read in "≥ form" (a `≤` row is
//! negated), and every multiplier this module reports refers to that form:
//! inequality multipliers are nonnegative, equality multipliers are free.
//! Bounds never get their own multipliers. Their contribution is the
//! residual `r = ĉ − Σ yₖ·ãₖ`, which [`LpOutcome::verify`] checks against
//! the bound that the sign of `r_j` selects.
//!
//! Maximisation problems are solved as `min −c·x`; the reported dual refers
//! to that minimisation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vector,
    pub relation: Relation,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn new(coeffs: Vector, relation: Relation, rhs: Scalar) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    /// Sign that turns this row into `≥` form.
    fn orientation(&self) -> Scalar {
        match self.relation {
            Relation::Le => -Scalar::one(),
            Relation::Eq | Relation::Ge => Scalar::one(),
        }
    }
}

/// Optional box on a single variable; both sides absent means free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableBound {
    pub lower: Option<Scalar>,
    pub upper: Option<Scalar>,
}

impl VariableBound {
    pub fn free() -> Self {
        Self::default()
    }

    pub fn nonnegative() -> Self {
        VariableBound {
            lower: Some(Scalar::zero()),
            upper: None,
        }
    }

    pub fn between(lower: Scalar, upper: Scalar) -> Self {
        VariableBound {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("objective has {got} coefficients, expected {expected}")]
    ObjectiveLength { expected: usize, got: usize },
    #[error("constraint {row} has {got} coefficients, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("{got} variable bounds given for {expected} variables")]
    BoundCount { expected: usize, got: usize },
    #[error("variable {var} has lower bound above its upper bound")]
    EmptyBox { var: usize },
}

/// An exact linear program `opt c·x` subject to linear rows and per-variable
/// bounds. Construct with [`LinearProgram::new`]; a value of this type is
/// always well formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vector,
    constraints: Vec<Constraint>,
    bounds: Vec<VariableBound>,
}

impl LinearProgram {
    pub fn new(
        sense: Sense,
        objective: Vector,
        constraints: Vec<Constraint>,
        bounds: Vec<VariableBound>,
    ) -> Result<Self, LpError> {
        let n = objective.dim();
        if bounds.len() != n {
            return Err(LpError::BoundCount {
                expected: n,
                got: bounds.len(),
            });
        }
        for (row, c) in constraints.iter().enumerate() {
            if c.coeffs.dim() != n {
                return Err(LpError::RowLength {
                    row,
                    expected: n,
                    got: c.coeffs.dim(),
                });
            }
        }
        for (var, b) in bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(LpError::EmptyBox { var });
                }
            }
        }
        Ok(LinearProgram {
            sense,
            objective,
            constraints,
            bounds,
        })
    }

    /// Pure feasibility problem over free variables.
    pub fn feasibility(num_vars: usize, constraints: Vec<Constraint>) -> Result<Self, LpError> {
        Self::new(
            Sense::Minimize,
            Vector::zeros(num_vars),
            constraints,
            vec![VariableBound::free(); num_vars],
        )
    }

    pub fn with_sense(
        sense: Sense,
        objective: Vector,
        constraints: Vec<Constraint>,
    ) -> Result<Self, LpError> {
        let n = objective.dim();
        Self::new(sense, objective, constraints, vec![VariableBound::free(); n])
    }

    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &Vector {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[VariableBound] {
        &self.bounds
    }

    /// Objective of the equivalent minimisation.
    fn min_cost(&self) -> Vector {
        match self.sense {
            Sense::Minimize => self.objective.clone(),
            Sense::Maximize => -&self.objective,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        };
        f.write_str(s)
    }
}

/// Resolution of a [`LinearProgram`].
///
/// * `Optimal`: `primal`, `objective_value` and `dual` are set.
/// * `Infeasible`: `dual` holds a Farkas certificate.
/// * `Unbounded`: nothing else is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub primal: Option<Vector>,
    pub objective_value: Option<Scalar>,
    pub dual: Option<Vector>,
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn is_feasible(&self) -> bool {
        self.status != LpStatus::Infeasible
    }

    /// Replays the outcome against `lp` in exact arithmetic.
    ///
    /// For `Optimal` this checks primal feasibility, dual sign conditions,
    /// complementary slackness and equality of the two objective values. For
    /// `Infeasible` it checks that the certificate combines the rows into
    /// `0 ≥ positive`. `Unbounded` outcomes are accepted as is.
    pub fn verify(&self, lp: &LinearProgram) -> Result<(), String> {
        match self.status {
            LpStatus::Optimal => self.verify_optimal(lp),
            LpStatus::Infeasible => self.verify_farkas(lp),
            LpStatus::Unbounded => Ok(()),
        }
    }

    fn verify_optimal(&self, lp: &LinearProgram) -> Result<(), String> {
        let x = self.primal.as_ref().ok_or("optimal outcome without primal")?;
        let y = self.dual.as_ref().ok_or("optimal outcome without dual")?;
        let value = self
            .objective_value
            .as_ref()
            .ok_or("optimal outcome without objective value")?;
        if x.dim() != lp.num_vars() || y.dim() != lp.constraints.len() {
            return Err("witness dimensions do not match the program".into());
        }
        for (k, c) in lp.constraints.iter().enumerate() {
            let lhs = c.coeffs.dot(x);
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            };
            if !ok {
                return Err(format!("primal violates constraint {k}"));
            }
        }
        for (j, b) in lp.bounds.iter().enumerate() {
            if b.lower.as_ref().is_some_and(|l| &x[j] < l)
                || b.upper.as_ref().is_some_and(|u| &x[j] > u)
            {
                return Err(format!("primal violates bound of variable {j}"));
            }
        }
        if &lp.objective.dot(x) != value {
            return Err("reported objective value does not match primal".into());
        }

        let cost = lp.min_cost();
        let residual = residual(lp, y, &cost);
        let mut dual_value = Scalar::zero();
        for (k, c) in lp.constraints.iter().enumerate() {
            let sign = c.orientation();
            if c.relation != Relation::Eq && y[k].is_negative() {
                return Err(format!("dual multiplier {k} has the wrong sign"));
            }
            let slack = &sign * (c.coeffs.dot(x) - &c.rhs);
            if !y[k].is_zero() && !slack.is_zero() {
                return Err(format!("complementary slackness fails on row {k}"));
            }
            dual_value += &y[k] * &sign * &c.rhs;
        }
        for (j, r) in residual.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let active = active_bound(&lp.bounds[j], r)
                .ok_or_else(|| format!("reduced cost of variable {j} has no bound to rest on"))?;
            if &x[j] != active {
                return Err(format!("variable {j} is not at the bound its reduced cost selects"));
            }
            dual_value += r * active;
        }
        if dual_value != cost.dot(x) {
            return Err("primal and dual objective values differ".into());
        }
        Ok(())
    }

    fn verify_farkas(&self, lp: &LinearProgram) -> Result<(), String> {
        let y = self.dual.as_ref().ok_or("infeasible outcome without certificate")?;
        if y.dim() != lp.constraints.len() {
            return Err("certificate length does not match the program".into());
        }
        let residual = residual(lp, y, &Vector::zeros(lp.num_vars()));
        let mut bound_value = Scalar::zero();
        for (k, c) in lp.constraints.iter().enumerate() {
            if c.relation != Relation::Eq && y[k].is_negative() {
                return Err(format!("certificate multiplier {k} has the wrong sign"));
            }
            bound_value += &y[k] * c.orientation() * &c.rhs;
        }
        for (j, r) in residual.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let active = active_bound(&lp.bounds[j], r)
                .ok_or_else(|| format!("certificate leaves variable {j} unbounded"))?;
            bound_value += r * active;
        }
        if !bound_value.is_positive() {
            return Err("certificate does not produce 0 ≥ positive".into());
        }
        Ok(())
    }
}

/// `cost − Σ yₖ·ãₖ` in the original variables.
fn residual(lp: &LinearProgram, y: &Vector, cost: &Vector) -> Vector {
    let mut r = cost.clone().into_coords();
    for (k, c) in lp.constraints.iter().enumerate() {
        if y[k].is_zero() {
            continue;
        }
        let w = &y[k] * c.orientation();
        for (rj, a) in r.iter_mut().zip(c.coeffs.iter()) {
            *rj -= &w * a;
        }
    }
    Vector::new(r)
}

fn active_bound<'a>(bound: &'a VariableBound, reduced: &Scalar) -> Option<&'a Scalar> {
    if reduced.is_positive() {
        bound.lower.as_ref()
    } else {
        bound.upper.as_ref()
    }
}

/// How an original variable is expressed in the nonnegative tableau columns.
enum VarMap {
    /// `x = shift + z` (lower bound, possibly also an upper bound row).
    Shifted { col: usize, shift: Scalar },
    /// `x = upper − z`.
    Mirrored { col: usize, upper: Scalar },
    /// `x = z⁺ − z⁻`.
    Split { pos: usize, neg: usize },
}

/// Dense tableau `B⁻¹[Ā | I | b̄]` with a reduced-cost row.
struct Tableau {
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
    reduced: Vec<Scalar>,
    /// Negated objective value of the current basis.
    value: Scalar,
    basis: Vec<usize>,
    /// First artificial column; artificials occupy `art..art + rows`.
    art: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            let inv = p.recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.rhs[r] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        let support: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                self.reduced[j] -= delta;
            }
            self.value -= &f * &pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule over columns `0..allowed` until optimal. Returns
    /// `false` when some improving column is unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.reduced[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Row multipliers `π = c_B·B⁻¹` read off the artificial columns, given
    /// the cost each artificial carried in the current phase.
    fn row_duals(&self, artificial_cost: &Scalar) -> Vec<Scalar> {
        (0..self.rows.len())
            .map(|i| artificial_cost - &self.reduced[self.art + i])
            .collect()
    }
}

/// Positive factor turning `coeffs` and `rhs` into coprime integers.
fn integer_scale(coeffs: &[Scalar], rhs: &Scalar) -> Scalar {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for v in coeffs.iter().chain(std::iter::once(rhs)) {
        if v.is_zero() {
            continue;
        }
        den = den.lcm(v.denom());
        num = num.gcd(v.numer());
    }
    if num.is_zero() {
        return Scalar::one();
    }
    Scalar::new(den, num)
}

/// Solves `lp` exactly. Deterministic: Bland's rule fixes every pivot.
pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars();

    // Column layout for the structural part.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut box_rows: Vec<(usize, Scalar)> = Vec::new();
    for b in &lp.bounds {
        let map = match (&b.lower, &b.upper) {
            (Some(l), upper) => {
                if let Some(u) = upper {
                    box_rows.push((ncols, u - l));
                }
                VarMap::Shifted {
                    col: ncols,
                    shift: l.clone(),
                }
            }
            (None, Some(u)) => VarMap::Mirrored {
                col: ncols,
                upper: u.clone(),
            },
            (None, None) => {
                ncols += 1;
                VarMap::Split {
                    pos: ncols - 1,
                    neg: ncols,
                }
            }
        };
        ncols += 1;
        maps.push(map);
    }
    let nstruct = ncols;

    // Rows in ≥/= form over the structural columns.
    struct Row {
        coeffs: Vec<Scalar>,
        rhs: Scalar,
        inequality: bool,
    }
    let mut rows: Vec<Row> = Vec::with_capacity(lp.constraints.len() + box_rows.len());
    // Each user row is rescaled to coprime integers; small entries keep
    // the tableau arithmetic cheap. Duals are scaled back on the way out.
    let mut scales = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let sign = c.orientation();
        let mut coeffs = vec![Scalar::zero(); nstruct];
        let mut rhs = &sign * &c.rhs;
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = &sign * a;
            match &maps[j] {
                VarMap::Shifted { col, shift } => {
                    rhs -= &a * shift;
                    coeffs[*col] = a;
                }
                VarMap::Mirrored { col, upper } => {
                    rhs -= &a * upper;
                    coeffs[*col] = -a;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*neg] = -&a;
                    coeffs[*pos] = a;
                }
            }
        }
        let scale = integer_scale(&coeffs, &rhs);
        if !scale.is_one() {
            for a in coeffs.iter_mut().filter(|a| !a.is_zero()) {
                *a *= &scale;
            }
            rhs *= &scale;
        }
        scales.push(scale);
        rows.push(Row {
            coeffs,
            rhs,
            inequality: c.relation != Relation::Eq,
        });
    }
    for (col, width) in &box_rows {
        let mut coeffs = vec![Scalar::zero(); nstruct];
        coeffs[*col] = -Scalar::one();
        rows.push(Row {
            coeffs,
            rhs: -width,
            inequality: true,
        });
    }

    let m = rows.len();
    let nsurplus = rows.iter().filter(|r| r.inequality).count();
    let art = nstruct + nsurplus;
    let width = art + m;

    // Flip signs so b̄ ≥ 0, remembering the flip per row.
    let mut flips = Vec::with_capacity(m);
    let mut t_rows = Vec::with_capacity(m);
    let mut t_rhs = Vec::with_capacity(m);
    let mut surplus = nstruct;
    for (i, row) in rows.into_iter().enumerate() {
        let flip = row.rhs.is_negative();
        let mut full = row.coeffs;
        full.resize(width, Scalar::zero());
        if row.inequality {
            full[surplus] = -Scalar::one();
            surplus += 1;
        }
        let mut rhs = row.rhs;
        if flip {
            for v in full.iter_mut() {
                *v = -&*v;
            }
            rhs = -rhs;
        }
        full[art + i] = Scalar::one();
        flips.push(flip);
        t_rows.push(full);
        t_rhs.push(rhs);
    }

    // Phase 1: minimise the sum of artificials.
    let mut reduced = vec![Scalar::zero(); width];
    let mut value = Scalar::zero();
    for (row, b) in t_rows.iter().zip(&t_rhs) {
        for j in 0..art {
            reduced[j] -= &row[j];
        }
        value -= b;
    }
    let mut t = Tableau {
        rows: t_rows,
        rhs: t_rhs,
        reduced,
        value,
        basis: (art..art + m).collect(),
        art,
    };
    t.optimize(width);

    let user_rows = lp.constraints.len();
    let to_user_duals = |pi: Vec<Scalar>| -> Vector {
        pi.into_iter()
            .zip(&flips)
            .zip(&scales)
            .take(user_rows)
            .map(|((p, &flip), scale)| if flip { -p * scale } else { p * scale })
            .collect()
    };

    if !t.value.is_zero() {
        let pi = t.row_duals(&Scalar::one());
        return LpOutcome {
            status: LpStatus::Infeasible,
            primal: None,
            objective_value: None,
            dual: Some(to_user_duals(pi)),
        };
    }

    // Drive zero-valued artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] < art {
            continue;
        }
        if let Some(c) = (0..art).find(|&j| !t.rows[r][j].is_zero()) {
            t.pivot(r, c);
        }
    }

    // Phase 2 cost over the tableau columns.
    let cost = lp.min_cost();
    let mut col_cost = vec![Scalar::zero(); width];
    for (j, map) in maps.iter().enumerate() {
        match map {
            VarMap::Shifted { col, .. } => col_cost[*col] = cost[j].clone(),
            VarMap::Mirrored { col, .. } => col_cost[*col] = -&cost[j],
            VarMap::Split { pos, neg } => {
                col_cost[*pos] = cost[j].clone();
                col_cost[*neg] = -&cost[j];
            }
        }
    }
    t.reduced = col_cost.clone();
    t.value = Scalar::zero();
    for r in 0..m {
        let cb = &col_cost[t.basis[r]];
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            if !t.rows[r][j].is_zero() {
                let delta = cb * &t.rows[r][j];
                t.reduced[j] -= delta;
            }
        }
        t.value -= cb * &t.rhs[r];
    }
    if !t.optimize(art) {
        return LpOutcome {
            status: LpStatus::Unbounded,
            primal: None,
            objective_value: None,
            dual: None,
        };
    }

    let mut z = vec![Scalar::zero(); width];
    for (r, &b) in t.basis.iter().enumerate() {
        z[b] = t.rhs[r].clone();
    }
    let x: Vector = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, shift } => shift + &z[*col],
            VarMap::Mirrored { col, upper } => upper - &z[*col],
            VarMap::Split { pos, neg } => &z[*pos] - &z[*neg],
        })
        .collect();
    let objective_value = lp.objective.dot(&x);
    let pi = t.row_duals(&Scalar::zero());
    LpOutcome {
        status: LpStatus::Optimal,
        primal: Some(x),
        objective_value: Some(objective_value),
        dual: Some(to_user_duals(pi)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn row(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(Vector::from_ints(coeffs), rel, int(rhs))
    }

    fn solve_checked(lp: &LinearProgram) -> LpOutcome {
        let out = solve_lp(lp);
        out.verify(lp).unwrap();
        out
    }

    #[test]
    fn single_binding_constraint() {
        let lp = LinearProgram::with_sense(
            Sense::Minimize,
            Vector::from_ints(&[1]),
            vec![row(&[1], Relation::Ge, 3)],
        )
        .unwrap();
        let out = solve_checked(&lp);
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.objective_value, Some(int(3)));
        assert_eq!(out.dual, Some(Vector::from_ints(&[1])));
    }

    #[test]
    fn contradictory_pair_gives_farkas_certificate() {
        let lp = LinearProgram::feasibility(
            1,
            vec![row(&[1], Relation::Ge, 1), row(&[1], Relation::Le, 0)],
        )
        .unwrap();
        let out = solve_checked(&lp);
        assert_eq!(out.status, LpStatus::Infeasible);
        assert_eq!(out.dual, Some(Vector::from_ints(&[1, 1])));
    }

    #[test]
    fn unbounded_descent() {
        let lp = LinearProgram::with_sense(
            Sense::Minimize,
            Vector::from_ints(&[-1]),
            vec![row(&[1], Relation::Ge, 0)],
        )
        .unwrap();
        assert_eq!(solve_lp(&lp).status, LpStatus::Unbounded);
    }

    #[test]
    fn textbook_maximisation() {
        // max 2x + 3y, 2x + y ≤ 18, 6x + 5y ≤ 60, 2x + 5y ≤ 40, x, y ≥ 0.
        let lp = LinearProgram::new(
            Sense::Maximize,
            Vector::from_ints(&[2, 3]),
            vec![
                row(&[2, 1], Relation::Le, 18),
                row(&[6, 5], Relation::Le, 60),
                row(&[2, 5], Relation::Le, 40),
            ],
            vec![VariableBound::nonnegative(); 2],
        )
        .unwrap();
        let out = solve_checked(&lp);
        assert_eq!(out.objective_value, Some(int(28)));
        assert_eq!(out.primal, Some(Vector::from_ints(&[5, 6])));
    }

    #[test]
    fn boxed_variables_and_equalities() {
        // min x − y, x + y = 3/2, 0 ≤ x ≤ 1, −1 ≤ y ≤ 1.
        let lp = LinearProgram::new(
            Sense::Minimize,
            Vector::from_ints(&[1, -1]),
            vec![Constraint::new(
                Vector::from_ints(&[1, 1]),
                Relation::Eq,
                ratio(3, 2),
            )],
            vec![
                VariableBound::between(int(0), int(1)),
                VariableBound::between(int(-1), int(1)),
            ],
        )
        .unwrap();
        let out = solve_checked(&lp);
        assert_eq!(out.primal, Some(Vector::new(vec![ratio(1, 2), int(1)])));
        assert_eq!(out.objective_value, Some(ratio(-1, 2)));
    }

    #[test]
    fn infeasible_box_certificate_uses_bounds() {
        // x + y ≥ 5 with 0 ≤ x, y ≤ 2.
        let lp = LinearProgram::new(
            Sense::Minimize,
            Vector::from_ints(&[0, 0]),
            vec![row(&[1, 1], Relation::Ge, 5)],
            vec![VariableBound::between(int(0), int(2)); 2],
        )
        .unwrap();
        let out = solve_checked(&lp);
        assert_eq!(out.status, LpStatus::Infeasible);
    }

    #[test]
    fn upper_bound_only_and_redundant_rows() {
        // max x + y, x ≤ 4 (bound), y ≤ 1 (bound), x + y ≤ 10 twice.
        let lp = LinearProgram::new(
            Sense::Maximize,
            Vector::from_ints(&[1, 1]),
            vec![
                row(&[1, 1], Relation::Le, 10),
                row(&[2, 2], Relation::Le, 20),
                row(&[1, -1], Relation::Eq, 3),
                row(&[2, -2], Relation::Eq, 6),
            ],
            vec![
                VariableBound {
                    lower: None,
                    upper: Some(int(4)),
                },
                VariableBound {
                    lower: None,
                    upper: Some(int(1)),
                },
            ],
        )
        .unwrap();
        let out = solve_checked(&lp);
        assert_eq!(out.primal, Some(Vector::from_ints(&[4, 1])));
    }

    #[test]
    fn malformed_programs_are_rejected() {
        assert!(matches!(
            LinearProgram::with_sense(
                Sense::Minimize,
                Vector::from_ints(&[1, 1]),
                vec![row(&[1], Relation::Ge, 0)],
            ),
            Err(LpError::RowLength { .. })
        ));
        assert!(matches!(
            LinearProgram::new(
                Sense::Minimize,
                Vector::from_ints(&[1]),
                vec![],
                vec![VariableBound::between(int(2), int(1))],
            ),
            Err(LpError::EmptyBox { var: 0 })
        ));
    }

    #[test]
    fn degenerate_program_terminates() {
        // Beale's cycling example; Bland's rule must terminate.
        let lp = LinearProgram::new(
            Sense::Minimize,
            Vector::new(vec![ratio(-3, 4), int(150), ratio(-1, 50), int(6)]),
            vec![
                Constraint::new(
                    Vector::new(vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)]),
                    Relation::Le,
                    int(0),
                ),
                Constraint::new(
                    Vector::new(vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)]),
                    Relation::Le,
                    int(0),
                ),
                row(&[0, 0, 1, 0], Relation::Le, 1),
            ],
            vec![VariableBound::nonnegative(); 4],
        )
        .unwrap();
        let out = solve_checked(&lp);
        assert_eq!(out.objective_value, Some(ratio(-1, 20)));
    }

    #[test]
    fn solving_is_deterministic() {
        let lp = LinearProgram::new(
            Sense::Minimize,
            Vector::from_ints(&[1, 1, 1]),
            vec![
                row(&[1, 1, 0], Relation::Ge, 1),
                row(&[0, 1, 1], Relation::Ge, 1),
                row(&[1, 0, 1], Relation::Ge, 1),
            ],
            vec![VariableBound::nonnegative(); 3],
        )
        .unwrap();
        assert_eq!(solve_lp(&lp), solve_lp(&lp));
        assert_eq!(solve_checked(&lp).objective_value, Some(ratio(3, 2)));
    }
}
