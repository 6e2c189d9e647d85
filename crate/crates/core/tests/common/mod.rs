//! Shared oracles for integration tests. These deliberately avoid the
//! crate's own elimination code.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use semicomm::Matrix;

/// Integer matrix proportional to `m` (scaled by the lcm of denominators).
pub fn integer_scaled(m: &Matrix) -> Vec<BigInt> {
    let l = m.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
    m.entries().iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn mat_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] += x * y;
                }
            }
        }
    }
    out
}

/// Integer reduced echelon basis with a common denominator: row `i` has
/// `d` in column `pivots[i]` and zero in every other pivot column.
pub struct IntEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    d: BigInt,
}

impl IntEchelon {
    pub fn new() -> Self {
        IntEchelon { rows: Vec::new(), pivots: Vec::new(), d: BigInt::one() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        // residual d·v − Σ v[p_i]·row_i vanishes on pivot columns
        let mut r: Vec<BigInt> = vec![BigInt::zero(); v.len()];
        let mut nonzero = false;
        for k in 0..v.len() {
            if self.pivots.contains(&k) {
                continue;
            }
            let mut x = &self.d * &v[k];
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !v[p].is_zero() && !row[k].is_zero() {
                    x -= &v[p] * &row[k];
                }
            }
            nonzero |= !x.is_zero();
            r[k] = x;
        }
        if !nonzero {
            return false;
        }
        let q = r.iter().position(|x| !x.is_zero()).expect("nonzero residual");
        let rq = r[q].clone();
        for row in &mut self.rows {
            let c = row[q].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                *x = &rq * &*x - &c * y;
            }
        }
        for x in r.iter_mut() {
            *x *= &self.d;
        }
        self.d = &rq * &self.d;
        self.rows.push(r);
        self.pivots.push(q);
        let g = self.rows.iter().flatten().fold(self.d.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            self.d /= &g;
            for x in self.rows.iter_mut().flatten() {
                *x /= &g;
            }
        }
        true
    }
}

/// Rank of the vectorizations of `I` and every word of length at most
/// `max_len` in the generators. Words are enumerated length by length;
/// words with equal values have equal extensions, so each distinct value
/// is expanded once.
pub fn brute_force_dim(gens: &[Matrix], max_len: usize) -> usize {
    let n = gens.first().map_or(1, |g| g.rows());
    let ints: Vec<Vec<BigInt>> = gens.iter().map(integer_scaled).collect();
    let identity: Vec<BigInt> =
        (0..n * n).map(|k| if k / n == k % n { BigInt::one() } else { BigInt::zero() }).collect();
    let mut basis = IntEchelon::new();
    basis.insert(&identity);
    let mut seen: HashSet<Vec<BigInt>> = HashSet::from([identity.clone()]);
    let mut layer = vec![identity];
    for _ in 0..max_len {
        if basis.rank() == n * n {
            break;
        }
        let mut next = Vec::new();
        for m in &layer {
            for g in &ints {
                let p = mat_mul(m, g, n);
                if seen.insert(p.clone()) {
                    basis.insert(&p);
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    basis.rank()
}
