//! Exact phase-1 simplex for feasibility of `{x ≥ 0 : rows}`.
//!
//! Dense tableau over `BigRational`, Bland's rule for both the entering and
//! the leaving variable, so the method terminates without cycling. When the
//! system is infeasible the optimal phase-1 duals form a Farkas certificate:
//! `y ≥ 0` on `≥` rows, `yᵀA ≤ 0` columnwise and `yᵀb > 0`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    /// `a·x ≥ b`
    Ge,
    /// `a·x = b`
    Eq,
}

#[derive(Clone, Debug)]
pub(crate) struct Row {
    /// Sparse coefficients `(variable, a_j)`.
    pub coeffs: Vec<(usize, BigRational)>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Phase1 {
    /// A feasible point.
    Feasible(Vec<BigRational>),
    /// One multiplier per row; `≥` rows get nonnegative multipliers.
    Infeasible(Vec<BigRational>),
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = BigRational::one() / &self.rows[r][c];
        let support: Vec<usize> = (0..=self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        for &j in &support {
            self.rows[r][j] *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        if !self.obj[c].is_zero() {
            let factor = self.obj[c].clone();
            for &j in &support {
                self.obj[j] -= &factor * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Bland: lowest-index column with negative reduced cost.
    fn entering(&self) -> Option<usize> {
        (0..self.width).find(|&j| self.obj[j].is_negative())
    }

    /// Minimum ratio; ties go to the lowest-index basic variable.
    fn leaving(&self, c: usize) -> Option<usize> {
        let mut best: Option<(usize, BigRational)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if !row[c].is_positive() {
                continue;
            }
            let ratio = &row[self.width] / &row[c];
            let better = match &best {
                None => true,
                Some((br, b)) => ratio < *b || (ratio == *b && self.basis[r] < self.basis[*br]),
            };
            if better {
                best = Some((r, ratio));
            }
        }
        best.map(|(r, _)| r)
    }
}

pub(crate) fn solve_phase1(n_vars: usize, rows: &[Row]) -> Phase1 {
    let n_rows = rows.len();
    let mut width = n_vars;
    let mut slack = vec![None; n_rows];
    for (r, row) in rows.iter().enumerate() {
        if row.relation == Relation::Ge {
            slack[r] = Some(width);
            width += 1;
        }
    }
    let mut sigma = vec![true; n_rows];
    let mut artificial = vec![None; n_rows];
    for (r, row) in rows.iter().enumerate() {
        let (flip, needs_art) = match row.relation {
            // a·x − s = b; slack can start basic after negation when b ≤ 0
            Relation::Ge => (!row.rhs.is_positive(), row.rhs.is_positive()),
            Relation::Eq => (row.rhs.is_negative(), true),
        };
        sigma[r] = !flip;
        if needs_art {
            artificial[r] = Some(width);
            width += 1;
        }
    }

    let mut cost = vec![BigRational::zero(); width];
    let mut tab = vec![vec![BigRational::zero(); width + 1]; n_rows];
    let mut basis = vec![0; n_rows];
    for (r, row) in rows.iter().enumerate() {
        let sign = if sigma[r] { BigRational::one() } else { -BigRational::one() };
        for (j, a) in &row.coeffs {
            debug_assert!(*j < n_vars);
            tab[r][*j] += &sign * a;
        }
        if let Some(s) = slack[r] {
            tab[r][s] = -sign.clone();
        }
        tab[r][width] = &sign * &row.rhs;
        basis[r] = match (artificial[r], slack[r]) {
            (Some(a), _) => {
                tab[r][a] = BigRational::one();
                cost[a] = BigRational::one();
                a
            }
            (None, Some(s)) => s,
            (None, None) => unreachable!("equality rows always get an artificial"),
        };
    }

    let mut obj = cost.clone();
    obj.push(BigRational::zero());
    for (r, row) in tab.iter().enumerate() {
        if artificial[r].is_some() {
            for j in 0..=width {
                if !row[j].is_zero() {
                    obj[j] -= &row[j];
                }
            }
        }
    }

    let mut t = Tableau {
        rows: tab,
        obj,
        basis,
        width,
    };
    while let Some(c) = t.entering() {
        let r = t
            .leaving(c)
            .expect("phase-1 objective is bounded below by zero");
        t.pivot(r, c);
    }

    if t.obj[width].is_zero() {
        let mut x = vec![BigRational::zero(); n_vars];
        for (r, &b) in t.basis.iter().enumerate() {
            if b < n_vars {
                x[b] = t.rows[r][width].clone();
            }
        }
        return Phase1::Feasible(x);
    }

    // The initial basic column of row r is a unit vector, so its reduced cost
    // is cost − y_r.
    let duals = (0..n_rows)
        .map(|r| {
            let col = artificial[r].or(slack[r]).expect("every row has an initial basic column");
            let y = &cost[col] - &t.obj[col];
            if sigma[r] {
                y
            } else {
                -y
            }
        })
        .collect();
    Phase1::Infeasible(duals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn row(coeffs: &[(usize, i64)], relation: Relation, rhs: i64) -> Row {
        Row {
            coeffs: coeffs.iter().map(|&(j, a)| (j, int(a))).collect(),
            relation,
            rhs: int(rhs),
        }
    }

    fn satisfies(x: &[BigRational], rows: &[Row]) -> bool {
        x.iter().all(|v| !v.is_negative())
            && rows.iter().all(|r| {
                let lhs: BigRational = r.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
                match r.relation {
                    Relation::Ge => lhs >= r.rhs,
                    Relation::Eq => lhs == r.rhs,
                }
            })
    }

    fn certifies(y: &[BigRational], n: usize, rows: &[Row]) -> bool {
        let signs_ok = rows
            .iter()
            .zip(y)
            .all(|(r, v)| r.relation == Relation::Eq || !v.is_negative());
        let mut combo = vec![BigRational::zero(); n];
        for (r, v) in rows.iter().zip(y) {
            for (j, a) in &r.coeffs {
                combo[*j] += a * v;
            }
        }
        let rhs: BigRational = rows.iter().zip(y).map(|(r, v)| &r.rhs * v).sum();
        signs_ok && combo.iter().all(|c| !c.is_positive()) && rhs.is_positive()
    }

    #[test]
    fn feasible_system() {
        let rows = vec![
            row(&[(0, 1), (1, 1)], Relation::Ge, 2),
            row(&[(0, 1), (1, -1)], Relation::Eq, 1),
            row(&[(1, -1)], Relation::Ge, -5),
        ];
        match solve_phase1(2, &rows) {
            Phase1::Feasible(x) => assert!(satisfies(&x, &rows)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_system_gives_certificate() {
        // x0 + x1 ≥ 3, -x0 ≥ -1, -x1 ≥ -1
        let rows = vec![
            row(&[(0, 1), (1, 1)], Relation::Ge, 3),
            row(&[(0, -1)], Relation::Ge, -1),
            row(&[(1, -1)], Relation::Ge, -1),
        ];
        match solve_phase1(2, &rows) {
            Phase1::Infeasible(y) => assert!(certifies(&y, 2, &rows)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_equality() {
        let rows = vec![row(&[(0, -2)], Relation::Eq, -3)];
        assert_eq!(solve_phase1(1, &rows), Phase1::Feasible(vec![ratio(3, 2)]));
        let rows = vec![row(&[(0, 2)], Relation::Eq, -3)];
        assert!(matches!(solve_phase1(1, &rows), Phase1::Infeasible(_)));
    }

    #[test]
    fn trivially_feasible() {
        let rows = vec![row(&[(0, 1)], Relation::Ge, 0), row(&[], Relation::Ge, -1)];
        assert!(matches!(solve_phase1(1, &rows), Phase1::Feasible(_)));
        assert!(matches!(solve_phase1(0, &[]), Phase1::Feasible(_)));
        let rows = vec![row(&[], Relation::Ge, 1)];
        match solve_phase1(0, &rows) {
            Phase1::Infeasible(y) => assert!(certifies(&y, 0, &rows)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_prone_system_terminates() {
        // Beale-style degenerate structure turned into a feasibility question.
        let rows = vec![
            Row {
                coeffs: vec![(0, ratio(1, 4)), (1, int(-60)), (2, ratio(-1, 25)), (3, int(9))],
                relation: Relation::Ge,
                rhs: int(0),
            },
            Row {
                coeffs: vec![(0, ratio(1, 2)), (1, int(-90)), (2, ratio(-1, 50)), (3, int(3))],
                relation: Relation::Ge,
                rhs: int(0),
            },
            row(&[(2, 1)], Relation::Eq, 1),
            row(&[(0, 1), (1, 1), (2, 1), (3, 1)], Relation::Ge, 2),
        ];
        match solve_phase1(4, &rows) {
            Phase1::Feasible(x) => assert!(satisfies(&x, &rows)),
            Phase1::Infeasible(y) => assert!(certifies(&y, 4, &rows)),
        }
    }
}
