//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex. Pivots follow Bland's rule (lowest
//! eligible column enters; ratio ties leave by lowest basic variable), so
//! every solve terminates and the returned vertex depends only on the
//! variable and constraint order.

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VarBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBounds {
    pub fn non_negative() -> Self {
        VarBounds {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBounds::default()
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        VarBounds {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint {index} has {found} coefficients, expected {expected}")]
    Arity {
        index: usize,
        expected: usize,
        found: usize,
    },
}

/// `maximize objective . x` subject to the constraints and variable bounds.
/// Variables default to `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    bounds: Vec<VarBounds>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBounds::non_negative(); n],
        }
    }

    pub fn with_constraints(objective: Vec<Rational>, constraints: Vec<Constraint>) -> Result<Self, LpError> {
        let mut lp = LinearProgram::new(objective);
        for c in constraints {
            lp.add(c)?;
        }
        Ok(lp)
    }

    pub fn add(&mut self, c: Constraint) -> Result<&mut Self, LpError> {
        if c.coeffs.len() != self.objective.len() {
            return Err(LpError::Arity {
                index: self.constraints.len(),
                expected: self.objective.len(),
                found: c.coeffs.len(),
            });
        }
        self.constraints.push(c);
        Ok(self)
    }

    pub fn set_bounds(&mut self, var: usize, bounds: VarBounds) -> &mut Self {
        self.bounds[var] = bounds;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[VarBounds] {
        &self.bounds
    }

    pub fn value_at(&self, point: &[Rational]) -> Rational {
        self.objective.iter().zip(point).map(|(c, x)| c * x).sum()
    }

    /// Every constraint and bound that `point` violates, by description.
    pub fn check_point(&self, point: &[Rational]) -> Vec<String> {
        let mut out = Vec::new();
        if point.len() != self.num_vars() {
            out.push(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.num_vars()
            ));
            return out;
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let lhs = c.lhs(point);
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            };
            if !ok {
                out.push(format!("row {i}: {lhs} {:?} {}", c.relation, c.rhs));
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if b.lower.as_ref().is_some_and(|l| &point[j] < l) || b.upper.as_ref().is_some_and(|u| &point[j] > u) {
                out.push(format!("x{j} = {} outside bounds", point[j]));
            }
        }
        out
    }

    /// The mechanically constructed dual, written as a maximization. When
    /// both programs are feasible and bounded the dual optimum is the
    /// negated primal optimum.
    pub fn dual(&self) -> LinearProgram {
        let n = self.num_vars();
        // Bounds other than a plain sign restriction become explicit rows.
        let mut rows: Vec<Constraint> = self.constraints.clone();
        let mut sign: Vec<Option<bool>> = Vec::with_capacity(n); // Some(true): x >= 0, Some(false): x <= 0
        for (j, b) in self.bounds.iter().enumerate() {
            let unit = |v: i64| {
                let mut e = vec![Rational::zero(); n];
                e[j] = Rational::from_integer(v);
                e
            };
            match (&b.lower, &b.upper) {
                (Some(l), None) if l.is_zero() => sign.push(Some(true)),
                (None, Some(u)) if u.is_zero() => sign.push(Some(false)),
                (l, u) => {
                    sign.push(None);
                    if let Some(l) = l {
                        rows.push(Constraint::new(unit(1), Relation::Ge, l.clone()));
                    }
                    if let Some(u) = u {
                        rows.push(Constraint::new(unit(1), Relation::Le, u.clone()));
                    }
                }
            }
        }
        let m = rows.len();
        // minimize b.y  <=>  maximize -b.y
        let objective = rows.iter().map(|r| -&r.rhs).collect();
        let mut dual = LinearProgram::new(objective);
        for (i, r) in rows.iter().enumerate() {
            dual.bounds[i] = match r.relation {
                Relation::Le => VarBounds::non_negative(),
                Relation::Ge => VarBounds {
                    lower: None,
                    upper: Some(Rational::zero()),
                },
                Relation::Eq => VarBounds::free(),
            };
        }
        for (j, s) in sign.iter().enumerate() {
            let coeffs: Vec<Rational> = (0..m).map(|i| rows[i].coeffs[j].clone()).collect();
            let relation = match s {
                Some(true) => Relation::Ge,
                Some(false) => Relation::Le,
                None => Relation::Eq,
            };
            dual.constraints
                .push(Constraint::new(coeffs, relation, self.objective[j].clone()));
        }
        dual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpSolution::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

// How an original variable is recovered from the non-negative columns.
enum VarMap {
    Shift { col: usize, offset: Rational },
    Reflect { col: usize, upper: Rational },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // last entry is the right-hand side
    basis: Vec<usize>,
    obj: Vec<Rational>, // reduced costs, last entry is the objective value
    ncols: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn set_costs(&mut self, costs: &[Rational]) {
        let mut obj: Vec<Rational> = costs.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[r]) {
                *o += cb * t;
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        if p != Rational::one() {
            let inv = p.recip();
            for x in self.rows[row].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vec<Rational>| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *t -= &(&f * p);
                }
            }
        };
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(target);
            }
        }
        eliminate(&mut self.obj);
        self.basis[row] = col;
    }

    fn run(&mut self, allowed: &[bool]) -> Outcome {
        loop {
            let entering = (0..self.ncols).find(|&j| allowed[j] && self.obj[j].is_negative());
            let Some(col) = entering else {
                return Outcome::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Outcome::Unbounded,
            }
        }
    }
}

/// Sparse coefficients, relation, right-hand side.
type SparseRow = (Vec<(usize, Rational)>, Relation, Rational);

/// Solve exactly. Deterministic for a fixed program.
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    let n = lp.num_vars();
    // Column layout: structural columns first, then slack/surplus, then artificials.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut extra_rows: Vec<SparseRow> = Vec::new();
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), u) => {
                maps.push(VarMap::Shift {
                    col: ncols,
                    offset: l.clone(),
                });
                if let Some(u) = u {
                    extra_rows.push((vec![(ncols, Rational::one())], Relation::Le, u - l));
                }
                ncols += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Reflect {
                    col: ncols,
                    upper: u.clone(),
                });
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }
    let structural = ncols;

    // Rows over structural columns.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); structural];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match &maps[j] {
                VarMap::Shift { col, offset } => {
                    coeffs[*col] += a;
                    rhs -= &(a * offset);
                }
                VarMap::Reflect { col, upper } => {
                    coeffs[*col] -= a;
                    rhs -= &(a * upper);
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] += a;
                    coeffs[*neg] -= a;
                }
            }
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for (entries, rel, rhs) in extra_rows {
        let mut coeffs = vec![Rational::zero(); structural];
        for (j, v) in entries {
            coeffs[j] = v;
        }
        rows.push((coeffs, rel, rhs));
    }
    for row in rows.iter_mut() {
        if row.2.is_negative() {
            for a in row.0.iter_mut() {
                *a = -&*a;
            }
            row.2 = -&row.2;
            row.1 = match row.1 {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let m = rows.len();
    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let art_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let total = structural + slack_count + art_count;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        obj: Vec::new(),
        ncols: total,
    };
    let mut next_slack = structural;
    let mut next_art = structural + slack_count;
    for (coeffs, rel, rhs) in rows {
        let mut row = coeffs;
        row.resize(total + 1, Rational::zero());
        row[total] = rhs;
        match rel {
            Relation::Le => {
                row[next_slack] = Rational::one();
                tab.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                tab.basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                tab.basis.push(next_art);
                next_art += 1;
            }
        }
        tab.rows.push(row);
    }
    let first_art = structural + slack_count;
    let is_art = |j: usize| j >= first_art;

    if art_count > 0 {
        let costs: Vec<Rational> = (0..total)
            .map(|j| if is_art(j) { -Rational::one() } else { Rational::zero() })
            .collect();
        tab.set_costs(&costs);
        let all = vec![true; total];
        tab.run(&all);
        if !tab.obj[total].is_zero() {
            return LpSolution::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.rows.len() {
            if is_art(tab.basis[r]) {
                match (0..first_art).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    let mut costs = vec![Rational::zero(); total];
    for (j, c) in lp.objective.iter().enumerate() {
        match &maps[j] {
            VarMap::Shift { col, .. } => costs[*col] += c,
            VarMap::Reflect { col, .. } => costs[*col] -= c,
            VarMap::Split { pos, neg } => {
                costs[*pos] += c;
                costs[*neg] -= c;
            }
        }
    }
    tab.set_costs(&costs);
    let allowed: Vec<bool> = (0..total).map(|j| !is_art(j)).collect();
    if let Outcome::Unbounded = tab.run(&allowed) {
        return LpSolution::Unbounded;
    }

    let mut y = vec![Rational::zero(); total];
    for (r, &b) in tab.basis.iter().enumerate() {
        y[b] = tab.rows[r][total].clone();
    }
    let point: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shift { col, offset } => &y[*col] + offset,
            VarMap::Reflect { col, upper } => upper - &y[*col],
            VarMap::Split { pos, neg } => &y[*pos] - &y[*neg],
        })
        .collect();
    let value = lp.value_at(&point);
    LpSolution::Optimal { value, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn row(c: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(c.iter().map(|&x| r(x)).collect(), rel, r(rhs))
    }

    #[test]
    fn box_program() {
        let lp = LinearProgram::with_constraints(
            vec![r(1), r(1)],
            vec![row(&[1, 0], Relation::Le, 1), row(&[0, 1], Relation::Le, 2)],
        )
        .unwrap();
        assert_eq!(
            solve_lp(&lp),
            LpSolution::Optimal {
                value: r(3),
                point: vec![r(1), r(2)]
            }
        );
    }

    #[test]
    fn infeasible_program() {
        let lp = LinearProgram::with_constraints(vec![r(1)], vec![row(&[1], Relation::Le, -1)]).unwrap();
        assert_eq!(solve_lp(&lp), LpSolution::Infeasible);
    }

    #[test]
    fn unbounded_program() {
        let lp = LinearProgram::with_constraints(vec![r(1), r(0)], vec![row(&[1, -1], Relation::Le, 1)]).unwrap();
        assert_eq!(solve_lp(&lp), LpSolution::Unbounded);
    }

    #[test]
    fn matching_pennies_maximin() {
        // variables: s1, s2, v (free)
        let mut lp = LinearProgram::with_constraints(
            vec![r(0), r(0), r(1)],
            vec![
                row(&[1, -1, -1], Relation::Ge, 0),
                row(&[-1, 1, -1], Relation::Ge, 0),
                row(&[1, 1, 0], Relation::Eq, 1),
            ],
        )
        .unwrap();
        lp.set_bounds(2, VarBounds::free());
        let sol = solve_lp(&lp);
        assert_eq!(sol.value(), Some(&r(0)));
        assert_eq!(sol.point().unwrap(), &[q(1, 2), q(1, 2), r(0)]);
    }

    #[test]
    fn bounds_shift_reflect_and_split() {
        // max x + y + z, 1 <= x <= 3, y <= -2, z free with x + z <= 5
        let mut lp =
            LinearProgram::with_constraints(vec![r(1), r(1), r(1)], vec![row(&[1, 0, 1], Relation::Le, 5)]).unwrap();
        lp.set_bounds(0, VarBounds::between(r(1), r(3)))
            .set_bounds(
                1,
                VarBounds {
                    lower: None,
                    upper: Some(r(-2)),
                },
            )
            .set_bounds(2, VarBounds::free());
        let sol = solve_lp(&lp);
        assert_eq!(sol.value(), Some(&r(3)));
        assert_eq!(sol.point().unwrap()[1], r(-2));
        assert!(lp.check_point(sol.point().unwrap()).is_empty());
    }

    #[test]
    fn redundant_equalities() {
        let lp = LinearProgram::with_constraints(
            vec![r(1), r(2)],
            vec![
                row(&[1, 1], Relation::Eq, 2),
                row(&[2, 2], Relation::Eq, 4),
                row(&[1, 0], Relation::Ge, 0),
            ],
        )
        .unwrap();
        let sol = solve_lp(&lp);
        assert_eq!(sol.value(), Some(&r(4)));
        assert_eq!(sol.point().unwrap(), &[r(0), r(2)]);
    }

    #[test]
    fn beale_cycling_instance_terminates() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let lp = LinearProgram::with_constraints(
            vec![q(3, 4), r(-20), q(1, 2), r(-6)],
            vec![
                Constraint::new(vec![q(1, 4), r(-8), r(-1), r(9)], Relation::Le, r(0)),
                Constraint::new(vec![q(1, 2), r(-12), q(-1, 2), r(3)], Relation::Le, r(0)),
                Constraint::new(vec![r(0), r(0), r(1), r(0)], Relation::Le, r(1)),
            ],
        )
        .unwrap();
        let sol = solve_lp(&lp);
        assert_eq!(sol.value(), Some(&q(5, 4)));
        assert_eq!(sol.point().unwrap(), &[r(1), r(0), r(1), r(0)]);
    }

    #[test]
    fn dual_value_is_negated_primal() {
        let lp = LinearProgram::with_constraints(
            vec![r(3), r(2)],
            vec![
                row(&[1, 1], Relation::Le, 4),
                row(&[1, 3], Relation::Le, 6),
                row(&[1, 0], Relation::Ge, 1),
            ],
        )
        .unwrap();
        let p = solve_lp(&lp);
        let d = solve_lp(&lp.dual());
        assert_eq!(p.value(), Some(&r(12)));
        assert_eq!(d.value(), Some(&r(-12)));
    }

    #[test]
    fn arity_is_checked() {
        let mut lp = LinearProgram::new(vec![r(1), r(1)]);
        assert!(lp.add(row(&[1], Relation::Le, 1)).is_err());
    }
}
