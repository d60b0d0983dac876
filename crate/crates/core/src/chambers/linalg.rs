use num::{BigRational, Zero};

use crate::error::{Error, Result};

/// Solves `A c = b` exactly by Gaussian elimination over the rationals.
///
/// Requires full column rank. Extra rows must be consistent; the first
/// violated row is reported.
pub fn solve(mut rows: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let unknowns = rows.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        rhs.swap(rank, pivot);
        order.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for c in col..unknowns {
            rows[rank][c] *= &inv;
        }
        rhs[rank] *= &inv;
        for i in 0..rows.len() {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for c in col..unknowns {
                let delta = &f * &rows[rank][c];
                rows[i][c] -= delta;
            }
            let delta = &f * &rhs[rank];
            rhs[i] -= delta;
        }
        rank += 1;
    }
    if rank < unknowns {
        return Err(Error::RankDeficient { rank, unknowns });
    }
    if let Some(i) = (rank..rows.len()).find(|&i| !rhs[i].is_zero()) {
        return Err(Error::Inconsistent { row: order[i] });
    }
    Ok(rhs.into_iter().take(unknowns).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn square_and_overdetermined() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let c = solve(a, vec![int(5), int(10)]).unwrap();
        assert_eq!(c, vec![int(1), int(3)]);
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(a, vec![int(1), int(2), int(3)]).unwrap(), vec![int(1), int(2)]);
    }

    #[test]
    fn failures() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(matches!(
            solve(a, vec![int(1), int(2)]),
            Err(Error::RankDeficient { rank: 1, unknowns: 2 })
        ));
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(matches!(
            solve(a, vec![int(1), int(2), int(4)]),
            Err(Error::Inconsistent { row: 2 })
        ));
    }
}
