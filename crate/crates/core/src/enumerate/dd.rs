//! Double description: extreme rays of `{x ≥ 0 : Ax = 0}`.
//!
//! Starts from the orthant's unit rays and cuts by one hyperplane at a time. Two rays on
//! opposite sides combine only when they are adjacent, tested combinatorially: no third
//! ray vanishes on every coordinate where both vanish.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: Vec<u64>,
}

impl Ray {
    fn new(coords: Vec<BigInt>) -> Ray {
        let mut zeros = vec![0u64; coords.len().div_ceil(64)];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                zeros[i / 64] |= 1 << (i % 64);
            }
        }
        Ray { coords, zeros }
    }

    fn dot(&self, row: &[i64]) -> BigInt {
        row.iter().zip(&self.coords).filter(|(a, _)| **a != 0).map(|(&a, c)| c * a).sum()
    }
}

fn contains_all(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(a, b)| a & b == *b)
}

fn normalise(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Primitive integer generators of the extreme rays of `{x ∈ R^d : x ≥ 0, row · x = 0 for every row}`.
pub fn extreme_rays(d: usize, rows: &[Vec<i64>]) -> Vec<Vec<BigUint>> {
    let mut rays: Vec<Ray> = (0..d)
        .map(|i| Ray::new((0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()))
        .collect();
    for row in rows {
        let values: Vec<BigInt> = rays.iter().map(|r| r.dot(row)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].sign() == Sign::Plus).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].sign() == Sign::Minus).collect();
        for (i, r) in rays.iter().enumerate() {
            if values[i].is_zero() {
                next.push(r.clone());
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common: Vec<u64> = rays[p].zeros.iter().zip(&rays[n].zeros).map(|(a, b)| a & b).collect();
                let adjacent = (0..rays.len()).all(|k| k == p || k == n || !contains_all(&rays[k].zeros, &common));
                if !adjacent {
                    continue;
                }
                let a = &values[p];
                let b = values[n].abs();
                let combined: Vec<BigInt> =
                    rays[n].coords.iter().zip(&rays[p].coords).map(|(x, y)| x * a + y * &b).collect();
                next.push(Ray::new(normalise(combined)));
            }
        }
        next.sort_by(|x, y| x.coords.cmp(&y.coords));
        next.dedup_by(|x, y| x.coords == y.coords);
        rays = next;
    }
    let mut out: Vec<Vec<BigUint>> = rays
        .into_iter()
        .map(|r| r.coords.into_iter().map(|c| c.to_biguint().expect("rays stay in the orthant")).collect())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(rays: Vec<Vec<BigUint>>) -> Vec<Vec<u64>> {
        rays.into_iter().map(|r| r.into_iter().map(|c| c.try_into().unwrap()).collect()).collect()
    }

    #[test]
    fn orthant_without_equations() {
        assert_eq!(small(extreme_rays(3, &[])), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn one_hyperplane() {
        // x + y = z in R^3_{>=0}: rays (1,0,1) and (0,1,1)
        assert_eq!(small(extreme_rays(3, &[vec![1, 1, -1]])), vec![vec![0, 1, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn square_cone() {
        // x + y = z + w: four rays e_x+e_z, e_x+e_w, e_y+e_z, e_y+e_w
        let rays = small(extreme_rays(4, &[vec![1, 1, -1, -1]]));
        assert_eq!(rays, vec![vec![0, 1, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 0, 1], vec![1, 0, 1, 0]]);
    }

    #[test]
    fn scaled_coefficients_give_primitive_rays() {
        assert_eq!(small(extreme_rays(2, &[vec![2, -3]])), vec![vec![3, 2]]);
    }
}
