//! Best responses of a single type under MIN and LEX.
//!
//! A type's problem is a [`PayoffMatrix`]: rows are its own pure actions,
//! columns the states it considers possible. Pure best responses are read
//! off row minima and maxima. Mixed best responses go through the exact LP
//! solver: the maximin value first, then one LP per column over the set of
//! maximin-optimal mixtures.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::model::{Act, MixedAction};
use crate::rational::Rational;
use crate::ratlp::{solve_lp, Constraint, LinearProgram, LpSolution, Relation, VarBounds};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("payoff matrix needs at least one row and one column")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PayoffMatrix {
    rows: Vec<Vec<Rational>>,
}

impl PayoffMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if width == 0 {
            return Err(MatrixError::Empty);
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
            return Err(MatrixError::Ragged {
                row,
                expected: width,
                found: r.len(),
            });
        }
        Ok(PayoffMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        PayoffMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    /// One row per act; all acts must share the same state order.
    pub fn from_acts(acts: &[Act]) -> Result<Self, MatrixError> {
        PayoffMatrix::new(acts.iter().map(|a| a.values().to_vec()).collect())
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row_min(&self, row: usize) -> &Rational {
        self.rows[row].iter().min().expect("non-empty")
    }

    pub fn row_max(&self, row: usize) -> &Rational {
        self.rows[row].iter().max().expect("non-empty")
    }

    /// Expected payoff per column under a mixed action.
    pub fn column_values(&self, sigma: &MixedAction) -> Vec<Rational> {
        (0..self.num_cols())
            .map(|c| sigma.support().map(|a| sigma.weight(a) * &self.rows[a][c]).sum())
            .collect()
    }

    /// `(worst, best)` expected payoff under a mixed action.
    pub fn mixed_minmax(&self, sigma: &MixedAction) -> (Rational, Rational) {
        let v = self.column_values(sigma);
        (
            v.iter().min().expect("non-empty").clone(),
            v.iter().max().expect("non-empty").clone(),
        )
    }
}

fn argmax_by<'a>(candidates: impl Iterator<Item = usize>, key: impl Fn(usize) -> &'a Rational) -> Vec<usize> {
    let cands: Vec<usize> = candidates.collect();
    let best = cands.iter().map(|&a| key(a)).max().expect("non-empty").clone();
    cands.into_iter().filter(|&a| key(a) == &best).collect()
}

/// Actions whose worst outcome is maximal, in action order.
pub fn pure_min_br(acts: &[Act]) -> Vec<usize> {
    assert!(!acts.is_empty(), "best response needs at least one action");
    argmax_by(0..acts.len(), |a| acts[a].worst())
}

/// Among the MIN best responses, those whose best outcome is maximal.
pub fn pure_lex_br(acts: &[Act]) -> Vec<usize> {
    let min_br = pure_min_br(acts);
    argmax_by(min_br.into_iter(), |a| acts[a].best())
}

/// Matrix form of [`pure_min_br`].
pub fn pure_min_br_matrix(c: &PayoffMatrix) -> Vec<usize> {
    argmax_by(0..c.num_rows(), |a| c.row_min(a))
}

/// Matrix form of [`pure_lex_br`].
pub fn pure_lex_br_matrix(c: &PayoffMatrix) -> Vec<usize> {
    argmax_by(pure_min_br_matrix(c).into_iter(), |a| c.row_max(a))
}

fn lp_weights(point: &[Rational], k: usize) -> MixedAction {
    MixedAction::new(point[..k].to_vec()).expect("LP point lies in the simplex")
}

/// The maximin value over mixed actions and one mixture attaining it.
pub fn maximin_mixed(c: &PayoffMatrix) -> (Rational, MixedAction) {
    let k = c.num_rows();
    let mut objective = vec![Rational::zero(); k + 1];
    objective[k] = Rational::one();
    let mut lp = LinearProgram::new(objective);
    for col in 0..c.num_cols() {
        let mut coeffs: Vec<Rational> = (0..k).map(|a| c.rows[a][col].clone()).collect();
        coeffs.push(-Rational::one());
        lp.add(Constraint::new(coeffs, Relation::Ge, Rational::zero()))
            .expect("arity");
    }
    let mut simplex: Vec<Rational> = vec![Rational::one(); k];
    simplex.push(Rational::zero());
    lp.add(Constraint::new(simplex, Relation::Eq, Rational::one()))
        .expect("arity");
    lp.set_bounds(k, VarBounds::free());
    match solve_lp(&lp) {
        LpSolution::Optimal { value, point } => (value, lp_weights(&point, k)),
        other => unreachable!("maximin program is feasible and bounded: {other:?}"),
    }
}

/// The mixed actions of a type that guarantee at least `floor` in every
/// column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polytope {
    pub matrix: PayoffMatrix,
    pub floor: Rational,
}

impl Polytope {
    pub fn contains(&self, sigma: &MixedAction) -> bool {
        self.matrix.column_values(sigma).iter().all(|v| v >= &self.floor)
    }

    /// `maximize column value s.t. sigma in the polytope`.
    pub fn column_program(&self, column: usize) -> LinearProgram {
        let c = &self.matrix;
        let k = c.num_rows();
        let mut lp = LinearProgram::new((0..k).map(|a| c.rows[a][column].clone()).collect());
        for col in 0..c.num_cols() {
            lp.add(Constraint::new(
                (0..k).map(|a| c.rows[a][col].clone()).collect(),
                Relation::Ge,
                self.floor.clone(),
            ))
            .expect("arity");
        }
        lp.add(Constraint::new(vec![Rational::one(); k], Relation::Eq, Rational::one()))
            .expect("arity");
        lp
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedBrResult {
    pub maximin_value: Rational,
    pub best_case: Rational,
    /// Attains `(maximin_value, best_case)`; taken from the lowest column
    /// reaching the best case.
    pub witness: MixedAction,
    /// For each column reaching the best case, the LP optimum for it.
    pub column_witnesses: Vec<(usize, MixedAction)>,
    pub polytope: Polytope,
}

/// The LEX-optimal value pair over mixed actions, with witnesses.
pub fn mixed_lex_br(c: &PayoffMatrix) -> MixedBrResult {
    let (v, _) = maximin_mixed(c);
    let polytope = Polytope {
        matrix: c.clone(),
        floor: v.clone(),
    };
    let per_column: Vec<(Rational, MixedAction)> = (0..c.num_cols())
        .into_par_iter()
        .map(|col| match solve_lp(&polytope.column_program(col)) {
            LpSolution::Optimal { value, point } => (value, lp_weights(&point, c.num_rows())),
            other => unreachable!("maximin polytope is non-empty and bounded: {other:?}"),
        })
        .collect();
    let best = per_column.iter().map(|(m, _)| m).max().expect("non-empty").clone();
    let column_witnesses: Vec<(usize, MixedAction)> = per_column
        .into_iter()
        .enumerate()
        .filter(|(_, (m, _))| m == &best)
        .map(|(col, (_, w))| (col, w))
        .collect();
    MixedBrResult {
        maximin_value: v,
        best_case: best,
        witness: column_witnesses[0].1.clone(),
        column_witnesses,
        polytope,
    }
}
