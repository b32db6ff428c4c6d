//! Exact linear programming over the rationals.
//!
//! Dense two-phase tableau simplex for problems in standard form
//! `A x = b, x >= 0`, with Bland's rule so degenerate pivots cannot cycle.

use crate::dense::DenseMatrix;
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimum {
    Bounded { x: Vec<Rational>, value: Rational },
    Unbounded,
}

/// A basic feasible solution of `A x = b, x >= 0`, ready for phase two.
#[derive(Debug, Clone)]
pub struct FeasibleBasis {
    vars: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    obj_value: Rational,
}

impl Tableau {
    fn with_objective(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>, basis: Vec<usize>, c: &[Rational]) -> Self {
        let mut obj: Vec<Rational> = c.iter().map(|v| -v).collect();
        let mut obj_value = Rational::zero();
        for (i, &b) in basis.iter().enumerate() {
            let cb = c[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(&rows[i]) {
                if !a.is_zero() {
                    *o += &cb * a;
                }
            }
            obj_value += &cb * &rhs[i];
        }
        Tableau { rows, rhs, basis, obj, obj_value }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.rhs[r] *= &inv;
        }
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        let eliminate = |row: &mut Vec<Rational>, rhs: &mut Rational| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            *rhs -= &f * &pivot_rhs;
        };
        for i in 0..self.rows.len() {
            if i != r {
                let (row, rhs) = (&mut self.rows[i], &mut self.rhs[i]);
                eliminate(row, rhs);
            }
        }
        eliminate(&mut self.obj, &mut self.obj_value);
        self.basis[r] = c;
    }

    /// Runs the simplex method; `false` when the objective is unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }
}

/// Phase one: finds a basic feasible solution of `a x = b, x >= 0`, or `None`
/// when the system is infeasible.
pub fn feasible_basis(a: &DenseMatrix, b: &[Rational]) -> Option<FeasibleBasis> {
    let m = a.len();
    let vars = a.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<Rational> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(r);
        rhs.push(if flip { -&b[i] } else { b[i].clone() });
    }
    let c: Vec<Rational> = (0..vars + m).map(|j| if j < vars { Rational::zero() } else { -Rational::one() }).collect();
    let mut t = Tableau::with_objective(rows, rhs, (vars..vars + m).collect(), &c);
    t.optimize(vars + m);
    if t.obj_value.is_negative() {
        return None;
    }
    // drive zero-valued artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= vars {
            match (0..vars).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for r in t.rows.iter_mut() {
        r.truncate(vars);
    }
    Some(FeasibleBasis { vars, rows: t.rows, rhs: t.rhs, basis: t.basis })
}

impl FeasibleBasis {
    pub fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.vars];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[i].clone();
        }
        x
    }

    /// Phase two: maximizes `c · x` over the feasible region.
    pub fn maximize(&self, c: &[Rational]) -> Optimum {
        assert_eq!(c.len(), self.vars, "objective length must match variable count");
        let mut t = Tableau::with_objective(self.rows.clone(), self.rhs.clone(), self.basis.clone(), c);
        if !t.optimize(self.vars) {
            return Optimum::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.vars];
        for (i, &b) in t.basis.iter().enumerate() {
            x[b] = t.rhs[i].clone();
        }
        Optimum::Bounded { x, value: t.obj_value }
    }
}

/// Some `x >= 0` with `a x = b`, if one exists.
pub fn find_feasible(a: &DenseMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    feasible_basis(a, b).map(|f| f.point())
}
