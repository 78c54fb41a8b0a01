//! Hilbert basis of `{x ∈ Z^d : x ≥ 0, Ax = 0}` by the Contejean–Devie completion.
//!
//! Candidates grow one unit vector at a time, only in directions that move `Ax` back
//! toward zero, and are dropped once they dominate a solution already found.

use std::collections::HashSet;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("fundamental enumeration exceeded {cap} candidates")]
pub struct SizeExceeded {
    pub cap: usize,
}

fn dominates(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a >= b)
}

pub fn hilbert_basis(d: usize, rows: &[Vec<i64>], cap: usize) -> Result<Vec<Vec<BigUint>>, SizeExceeded> {
    let columns: Vec<Vec<i64>> = (0..d).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut level: Vec<(Vec<i64>, Vec<i64>)> = (0..d)
        .map(|j| {
            let mut x = vec![0; d];
            x[j] = 1;
            (x, columns[j].clone())
        })
        .collect();
    let mut seen = 0usize;
    while !level.is_empty() {
        seen += level.len();
        if seen > cap {
            return Err(SizeExceeded { cap });
        }
        let mut open = Vec::with_capacity(level.len());
        for (x, ax) in level {
            if ax.iter().all(|&v| v == 0) {
                basis.push(x);
            } else {
                open.push((x, ax));
            }
        }
        let mut next: HashSet<Vec<i64>> = HashSet::new();
        let mut next_list = Vec::new();
        for (x, ax) in &open {
            for j in 0..d {
                let dot: i64 = ax.iter().zip(&columns[j]).map(|(a, b)| a * b).sum();
                if dot >= 0 {
                    continue;
                }
                let mut y = x.clone();
                y[j] += 1;
                if basis.iter().any(|b| dominates(&y, b)) || next.contains(&y) {
                    continue;
                }
                let ay: Vec<i64> = ax.iter().zip(&columns[j]).map(|(a, b)| a + b).collect();
                next.insert(y.clone());
                next_list.push((y, ay));
            }
        }
        level = next_list;
    }
    let mut out: Vec<Vec<BigUint>> =
        basis.into_iter().map(|b| b.into_iter().map(|c| BigUint::from(c as u64)).collect()).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: Vec<Vec<BigUint>>) -> Vec<Vec<u64>> {
        v.into_iter().map(|r| r.into_iter().map(|c| c.try_into().unwrap()).collect()).collect()
    }

    #[test]
    fn non_extreme_basis_elements_appear() {
        // 2x = y + z: basis (1,2,0), (1,1,1), (1,0,2)
        let hb = small(hilbert_basis(3, &[vec![2, -1, -1]], 1000).unwrap());
        assert_eq!(hb, vec![vec![1, 0, 2], vec![1, 1, 1], vec![1, 2, 0]]);
    }

    #[test]
    fn free_columns_are_units() {
        let hb = small(hilbert_basis(2, &[vec![0, 0]], 10).unwrap());
        assert_eq!(hb, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn cap_trips() {
        assert_eq!(hilbert_basis(3, &[vec![5, -3, -7]], 4), Err(SizeExceeded { cap: 4 }));
    }
}
