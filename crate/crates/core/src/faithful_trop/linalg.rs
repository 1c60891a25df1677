use num_traits::Zero;

use crate::error::{Error, Result};
use crate::valued_field::Rat;

/// Solves `rows · x = rhs` exactly by Gauss–Jordan elimination. The system
/// may be overdetermined; it must be consistent with a unique solution.
pub fn solve_exact(mut rows: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Result<Vec<Rat>> {
    let n = rows.first().map_or(0, Vec::len);
    let m = rows.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::Singular);
        };
        rows.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for k in col..n {
            rows[pivot_row][k] *= &inv;
        }
        rhs[pivot_row] *= &inv;
        for r in 0..m {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for k in col..n {
                let delta = &factor * &rows[pivot_row][k];
                rows[r][k] -= delta;
            }
            let delta = &factor * &rhs[pivot_row];
            rhs[r] -= delta;
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|v| !v.is_zero()) {
        return Err(Error::Inconsistent("linear system has no solution".into()));
    }
    Ok(pivots.into_iter().map(|r| rhs[r].clone()).collect())
}
