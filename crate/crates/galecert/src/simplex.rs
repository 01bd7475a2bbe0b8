//! Exact rational linear programming.
//!
//! A small dense two-phase simplex over `BigRational` with Bland's pivoting
//! rule, which guarantees termination. Problems here are tiny (tens of
//! variables), so no effort is spent on sparsity or revised factorizations.
//! Variables are free reals; the builder converts to standard form internally.

use num_traits::{One, Signed, Zero};

use crate::matrix::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

/// A linear program over free real variables.
#[derive(Debug, Clone)]
pub struct Lp {
    n_vars: usize,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolve {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<Rat>, value: Rat },
}

impl Lp {
    pub fn new(n_vars: usize) -> Self {
        Lp {
            n_vars,
            constraints: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn eq(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.n_vars);
        self.constraints.push(Constraint {
            coeffs,
            rel: Rel::Eq,
            rhs,
        });
        self
    }

    pub fn ge(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.n_vars);
        self.constraints.push(Constraint {
            coeffs,
            rel: Rel::Ge,
            rhs,
        });
        self
    }

    /// A feasible point, if one exists.
    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        match self.solve(None, false) {
            LpSolve::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn maximize(&self, objective: &[Rat]) -> LpSolve {
        self.solve(Some(objective), true)
    }

    pub fn minimize(&self, objective: &[Rat]) -> LpSolve {
        self.solve(Some(objective), false)
    }

    fn solve(&self, objective: Option<&[Rat]>, maximize: bool) -> LpSolve {
        let m = self.constraints.len();
        // Structural columns: x = u - w with u, w >= 0, then one slack per
        // Ge row. Artificial columns are appended after.
        let n_struct = 2 * self.n_vars + self.constraints.iter().filter(|c| c.rel == Rel::Ge).count();
        let n_total = n_struct + m;
        let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
        let mut slack_at = 2 * self.n_vars;
        for c in &self.constraints {
            let mut row = vec![Rat::zero(); n_total + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
                row[self.n_vars + j] = -a.clone();
            }
            if c.rel == Rel::Ge {
                row[slack_at] = -Rat::one();
                slack_at += 1;
            }
            row[n_total] = c.rhs.clone();
            tab.push(row);
        }
        // Normalize rhs >= 0 and add artificial basis.
        let mut basis = Vec::with_capacity(m);
        for (i, row) in tab.iter_mut().enumerate() {
            if row[n_total].is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
            }
            row[n_struct + i] = Rat::one();
            basis.push(n_struct + i);
        }

        // Phase 1: minimize the sum of artificials.
        let mut cost1 = vec![Rat::zero(); n_total];
        for j in n_struct..n_total {
            cost1[j] = Rat::one();
        }
        let outcome = run_simplex(&mut tab, &mut basis, &cost1, n_total);
        debug_assert!(outcome != SimplexRun::Unbounded, "phase 1 cannot be unbounded");
        let phase1_value = objective_value(&tab, &basis, &cost1, n_total);
        if !phase1_value.is_zero() {
            return LpSolve::Infeasible;
        }
        // Drive artificials out of the basis where possible; drop rows that
        // are redundant (no structural pivot available).
        let mut drop_rows = Vec::new();
        for i in 0..tab.len() {
            if basis[i] >= n_struct {
                if let Some(j) = (0..n_struct).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, i, j, n_total);
                } else {
                    drop_rows.push(i);
                }
            }
        }
        for &i in drop_rows.iter().rev() {
            tab.remove(i);
            basis.remove(i);
        }
        // Forbid artificials from re-entering by zeroing their columns.
        for row in tab.iter_mut() {
            for j in n_struct..n_total {
                row[j] = Rat::zero();
            }
        }

        let result = match objective {
            None => LpSolve::Optimal {
                point: extract(&tab, &basis, self.n_vars, n_total),
                value: Rat::zero(),
            },
            Some(obj) => {
                assert_eq!(obj.len(), self.n_vars);
                let mut cost = vec![Rat::zero(); n_total];
                for j in 0..self.n_vars {
                    let c = if maximize { -obj[j].clone() } else { obj[j].clone() };
                    cost[j] = c.clone();
                    cost[self.n_vars + j] = -c;
                }
                match run_simplex(&mut tab, &mut basis, &cost, n_total) {
                    SimplexRun::Unbounded => return LpSolve::Unbounded,
                    SimplexRun::Optimal => {
                        let point = extract(&tab, &basis, self.n_vars, n_total);
                        let raw = objective_value(&tab, &basis, &cost, n_total);
                        let value = if maximize { -raw } else { raw };
                        LpSolve::Optimal { point, value }
                    }
                }
            }
        };
        result
    }
}

#[derive(Debug, PartialEq, Eq)]
enum SimplexRun {
    Optimal,
    Unbounded,
}

fn objective_value(tab: &[Vec<Rat>], basis: &[usize], cost: &[Rat], rhs_col: usize) -> Rat {
    basis
        .iter()
        .enumerate()
        .map(|(i, &b)| &cost[b] * &tab[i][rhs_col])
        .sum()
}

/// Minimize `cost` over the current tableau with Bland's rule.
fn run_simplex(
    tab: &mut Vec<Vec<Rat>>,
    basis: &mut [usize],
    cost: &[Rat],
    rhs_col: usize,
) -> SimplexRun {
    loop {
        // Reduced costs: r_j = c_j - c_B . B^-1 A_j.
        let mut entering = None;
        for j in 0..rhs_col {
            if basis.contains(&j) {
                continue;
            }
            let mut r = cost[j].clone();
            for (i, &b) in basis.iter().enumerate() {
                if !cost[b].is_zero() && !tab[i][j].is_zero() {
                    r -= &cost[b] * &tab[i][j];
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index with negative reduced cost
            }
        }
        let Some(enter) = entering else {
            return SimplexRun::Optimal;
        };
        // Ratio test; Bland tie-break on smallest basis variable.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..tab.len() {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][rhs_col] / &tab[i][enter];
                match &leave {
                    Some((li, best)) => {
                        if ratio < *best || (ratio == *best && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                    None => leave = Some((i, ratio)),
                }
            }
        }
        let Some((li, _)) = leave else {
            return SimplexRun::Unbounded;
        };
        pivot(tab, basis, li, enter, rhs_col);
    }
}

fn pivot(tab: &mut [Vec<Rat>], basis: &mut [usize], row: usize, col: usize, rhs_col: usize) {
    let inv = tab[row][col].recip();
    for j in 0..=rhs_col {
        let v = &tab[row][j] * &inv;
        tab[row][j] = v;
    }
    for i in 0..tab.len() {
        if i != row && !tab[i][col].is_zero() {
            let f = tab[i][col].clone();
            for j in 0..=rhs_col {
                let v = &tab[i][j] - &f * &tab[row][j];
                tab[i][j] = v;
            }
        }
    }
    basis[row] = col;
}

fn extract(tab: &[Vec<Rat>], basis: &[usize], n_vars: usize, rhs_col: usize) -> Vec<Rat> {
    let mut full = vec![Rat::zero(); rhs_col];
    for (i, &b) in basis.iter().enumerate() {
        full[b] = tab[i][rhs_col].clone();
    }
    (0..n_vars)
        .map(|j| &full[j] - &full[n_vars + j])
        .collect()
}
