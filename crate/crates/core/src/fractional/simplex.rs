//! Exact-rational two-phase simplex with Bland's rule.
//!
//! No floats anywhere, so LP equalities asserted by callers (like primal
//! optimum == dual optimum) are exact rational equalities. Bland's rule
//! guarantees termination at the problem sizes used here.

use crate::error::{Error, Result};
use crate::exact::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Dense LP over nonnegative variables.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub maximize: bool,
    pub objective: Vec<Rat>,
    /// (coefficients, sense, rhs) per constraint.
    pub rows: Vec<(Vec<Rat>, Sense, Rat)>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    /// Optimal objective value in the original orientation.
    pub value: Rat,
    /// Optimal assignment of the original variables.
    pub x: Vec<Rat>,
}

struct Tableau {
    /// m rows of (ncols + 1) entries; the last entry is the rhs.
    rows: Vec<Vec<Rat>>,
    /// Column index of the basic variable of each row.
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        debug_assert!(!factor.is_zero());
        for v in self.rows[row].iter_mut() {
            *v /= factor.clone();
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let scale = self.rows[i][col].clone();
            for j in 0..=self.ncols {
                let delta = &self.rows[row][j] * &scale;
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Maximize the cost vector over the current basis; returns the optimal
    /// value. Entering and leaving variables follow Bland's rule.
    fn optimize(&mut self, cost: &[Rat], banned: &[bool]) -> Result<Rat> {
        // hard guard against a cycling bug; Bland's rule should never hit it
        let max_pivots = 50_000usize.max(self.rows.len() * self.ncols * 4);
        for _ in 0..max_pivots {
            // reduced costs r_j = c_j - c_B^T T_j
            let mut entering: Option<usize> = None;
            'cols: for j in 0..self.ncols {
                if banned[j] {
                    continue;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                if r.is_positive() {
                    entering = Some(j);
                    break 'cols;
                }
            }
            let Some(col) = entering else {
                // optimal: value = c_B^T rhs
                let mut value = Rat::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() {
                        value += &cost[b] * self.rhs(i);
                    }
                }
                return Ok(value);
            };
            // ratio test, ties by smallest basic variable index
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return Err(Error::NoConvergence("LP is unbounded".into()));
            };
            self.pivot(row, col);
        }
        Err(Error::NoConvergence(
            "simplex cycle guard triggered".into(),
        ))
    }
}

/// Solve the LP exactly. Errors on infeasible or unbounded problems.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    for (coeffs, _, _) in &lp.rows {
        if coeffs.len() != n {
            return Err(Error::domain("LP row length differs from objective"));
        }
    }
    // normalize rows to nonnegative rhs
    let mut rows: Vec<(Vec<Rat>, Sense, Rat)> = lp.rows.clone();
    for (coeffs, sense, rhs) in rows.iter_mut() {
        if rhs.is_negative() {
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
            *rhs = -rhs.clone();
            *sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
    }
    let n_slack = rows
        .iter()
        .filter(|(_, s, _)| matches!(s, Sense::Le | Sense::Ge))
        .count();
    let n_art = rows
        .iter()
        .filter(|(_, s, _)| matches!(s, Sense::Ge | Sense::Eq))
        .count();
    let ncols = n + n_slack + n_art;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        basis: vec![0; m],
        ncols,
    };
    let mut slack_at = n;
    let mut art_at = n + n_slack;
    let mut art_cols = Vec::new();
    for (i, (coeffs, sense, rhs)) in rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols + 1];
        row[..n].clone_from_slice(coeffs);
        row[ncols] = rhs.clone();
        match sense {
            Sense::Le => {
                row[slack_at] = Rat::one();
                tab.basis[i] = slack_at;
                slack_at += 1;
            }
            Sense::Ge => {
                row[slack_at] = -Rat::one();
                slack_at += 1;
                row[art_at] = Rat::one();
                tab.basis[i] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
            Sense::Eq => {
                row[art_at] = Rat::one();
                tab.basis[i] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
        }
        tab.rows.push(row);
    }
    let banned_none = vec![false; ncols];
    // phase 1: drive artificials to zero
    if !art_cols.is_empty() {
        let mut cost1 = vec![Rat::zero(); ncols];
        for &c in &art_cols {
            cost1[c] = -Rat::one();
        }
        let v1 = tab.optimize(&cost1, &banned_none)?;
        if !v1.is_zero() {
            return Err(Error::NoConvergence("LP is infeasible".into()));
        }
        // pivot remaining artificials out of the basis where possible
        for i in 0..m {
            if art_cols.contains(&tab.basis[i]) {
                if let Some(j) = (0..n + n_slack).find(|&j| !tab.rows[i][j].is_zero()) {
                    tab.pivot(i, j);
                }
            }
        }
    }
    // phase 2 with artificial columns banned
    let mut banned = vec![false; ncols];
    for &c in &art_cols {
        banned[c] = true;
    }
    let mut cost2 = vec![Rat::zero(); ncols];
    for j in 0..n {
        cost2[j] = if lp.maximize {
            lp.objective[j].clone()
        } else {
            -lp.objective[j].clone()
        };
    }
    let value = tab.optimize(&cost2, &banned)?;
    let mut x = vec![Rat::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(i).clone();
        }
    }
    Ok(LpSolution {
        value: if lp.maximize { value } else { -value },
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn r(v: i64) -> Rat {
        rat_int(v)
    }

    #[test]
    fn packing_toy() {
        // max x + y st x + y <= 1, x <= 1/2 -> value 1
        let lp = LinearProgram {
            maximize: true,
            objective: vec![r(1), r(1)],
            rows: vec![
                (vec![r(1), r(1)], Sense::Le, r(1)),
                (vec![r(1), r(0)], Sense::Le, rat(1, 2)),
            ],
        };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value, r(1));
    }

    #[test]
    fn covering_toy() {
        // min y1 + y2 st y1 + y2 >= 1, y1 >= 1/3 -> value 1
        let lp = LinearProgram {
            maximize: false,
            objective: vec![r(1), r(1)],
            rows: vec![
                (vec![r(1), r(1)], Sense::Ge, r(1)),
                (vec![r(1), r(0)], Sense::Ge, rat(1, 3)),
            ],
        };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value, r(1));
    }

    #[test]
    fn equality_constraints() {
        // max x st x + y = 2, y >= 1  (as -y <= -1) -> x = 1
        let lp = LinearProgram {
            maximize: true,
            objective: vec![r(1), r(0)],
            rows: vec![
                (vec![r(1), r(1)], Sense::Eq, r(2)),
                (vec![r(0), r(1)], Sense::Ge, r(1)),
            ],
        };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value, r(1));
        assert_eq!(sol.x[0], r(1));
    }

    #[test]
    fn infeasible_detected() {
        let lp = LinearProgram {
            maximize: true,
            objective: vec![r(1)],
            rows: vec![
                (vec![r(1)], Sense::Ge, r(2)),
                (vec![r(1)], Sense::Le, r(1)),
            ],
        };
        assert!(solve(&lp).is_err());
    }

    #[test]
    fn unbounded_detected() {
        let lp = LinearProgram {
            maximize: true,
            objective: vec![r(1)],
            rows: vec![(vec![r(0)], Sense::Le, r(1))],
        };
        assert!(solve(&lp).is_err());
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // the C5 packing LP: 5 vertices, 5 edge constraints -> 5/2
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let lp = LinearProgram {
            maximize: true,
            objective: vec![r(1); 5],
            rows: edges
                .iter()
                .map(|&(a, b)| {
                    let mut coeffs = vec![r(0); 5];
                    coeffs[a] = r(1);
                    coeffs[b] = r(1);
                    (coeffs, Sense::Le, r(1))
                })
                .collect(),
        };
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.value, rat(5, 2));
    }
}
