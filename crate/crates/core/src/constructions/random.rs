//! Seeded instance generators.
//!
//! Everything here is a pure function of its RNG stream. Generators that
//! need a sign condition reject and retry rather than project, so entries
//! stay small integers or simple fractions.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    companion, idempotent_pair_3x3, idempotent_pair_7x7, intertwiner_basis, permutation_from_cycle_type,
    CompanionSpec,
};
use crate::error::{Error, Result};
use crate::exact::{commutator, Matrix, Rational};
use crate::order::{sign_class, SignClass};
use crate::rng::stream;

/// Retry budget of the rank-one idempotent family.
pub const RANK_ONE_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    DiagDominated,
    CommutingPoly,
    BlockChain,
    RankOneIdempotents,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::DiagDominated, Family::CommutingPoly, Family::BlockChain, Family::RankOneIdempotents];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::DiagDominated => "diag_dominated",
            Family::CommutingPoly => "commuting_poly",
            Family::BlockChain => "block_chain",
            Family::RankOneIdempotents => "rank_one_idempotents",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Family::DiagDominated => 1,
            Family::CommutingPoly => 2,
            Family::BlockChain => 3,
            Family::RankOneIdempotents => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == norm)
            .ok_or_else(|| Error::Usage(format!("unknown family {s:?}; expected one of diag_dominated, commuting_poly, block_chain, rank_one_idempotents")))
    }
}

/// A positive pair with `ab − ba` positive or zero, deterministic in
/// `(n, family, seed)`.
pub fn random_semicommuting_pair(n: usize, family: Family, seed: u64) -> Result<(Matrix, Matrix)> {
    if n == 0 {
        return Err(Error::domain("random pair needs n >= 1"));
    }
    let mut rng = stream(seed, &[n as u64, family.tag()]);
    match family {
        Family::DiagDominated => Ok(diag_dominated(&mut rng, n)),
        Family::CommutingPoly => {
            let a = random_positive(&mut rng, n, n, 50, 3);
            let b = positive_polynomial(&mut rng, &a, 3);
            Ok((a, b))
        }
        Family::BlockChain => Ok(block_chain(&mut rng, n)),
        Family::RankOneIdempotents => rank_one_idempotent_pair(&mut rng, n, RANK_ONE_ATTEMPTS),
    }
}

pub fn int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    Rational::from_int(rng.gen_range(lo..=hi))
}

/// Entries in `1..=max` with probability `density`%, else zero.
pub fn random_positive(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: u32, max: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.gen_range(0..100) < density {
            int(rng, 1, max)
        } else {
            Rational::zero()
        }
    })
}

pub fn random_integer_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| int(rng, lo, hi))
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random positive matrix whose support contains a Hamiltonian cycle.
pub fn random_irreducible_positive(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut a = random_positive(rng, n, n, 30, 3);
    let order = random_permutation(rng, n);
    for k in 0..n {
        let (i, j) = (order[k], order[(k + 1) % n]);
        if a.get(i, j).is_zero() {
            a.set(i, j, int(rng, 1, 2));
        }
    }
    a
}

/// `Σ c_k a^k` with `c_k ∈ {0, 1, 2}` and degree at most `max_degree`.
pub fn positive_polynomial(rng: &mut ChaCha8Rng, a: &Matrix, max_degree: usize) -> Matrix {
    polynomial(rng, a, max_degree, 0, 2)
}

pub fn polynomial(rng: &mut ChaCha8Rng, a: &Matrix, max_degree: usize, lo: i64, hi: i64) -> Matrix {
    let n = a.rows();
    let mut acc = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n);
    for k in 0..=max_degree {
        if k > 0 {
            power = &power * a;
        }
        let c = int(rng, lo, hi);
        if !c.is_zero() {
            acc = &acc + &power.scale(&c);
        }
    }
    acc
}

/// Positive diagonal `D` and its inverse.
pub fn positive_diagonal(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let d: Vec<Rational> = (0..n).map(|_| int(rng, 1, 3)).collect();
    let inv: Vec<Rational> = d.iter().map(Rational::recip).collect();
    (Matrix::diagonal(&d), Matrix::diagonal(&inv))
}

fn nondecreasing(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut v = Vec::with_capacity(n);
    let mut cur = rng.gen_range(1..=3);
    for _ in 0..n {
        v.push(Rational::from_int(cur));
        cur += rng.gen_range(0..=2);
    }
    v
}

/// `B` positive diagonal nondecreasing, `A` supported on `b_j ≥ b_i`, so
/// `(AB − BA)_{ij} = a_{ij}(b_j − b_i) ≥ 0`.
fn diag_dominated(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let b = nondecreasing(rng, n);
    let a = Matrix::from_fn(n, n, |i, j| {
        if b[j] >= b[i] && rng.gen_bool(0.5) {
            int(rng, 1, 3)
        } else {
            Rational::zero()
        }
    });
    (a, Matrix::diagonal(&b))
}

fn random_composition(rng: &mut ChaCha8Rng, n: usize, max_part: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(max_part));
        parts.push(s);
        left -= s;
    }
    parts
}

/// Block upper-triangular pair with commuting diagonal blocks, then a
/// random simultaneous permutation similarity.
fn block_chain(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let sizes = random_composition(rng, n, 3);
    let starts: Vec<usize> = sizes.iter().scan(0, |acc, &s| { let st = *acc; *acc += s; Some(st) }).collect();
    let block_of: Vec<usize> = sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect();

    let mut found = None;
    for _ in 0..64 {
        let mut a = Matrix::zeros(n, n);
        let mut b = Matrix::zeros(n, n);
        for (k, &s) in sizes.iter().enumerate() {
            let ak = random_positive(rng, s, s, 60, 3);
            let bk = positive_polynomial(rng, &ak, 2);
            for i in 0..s {
                for j in 0..s {
                    a.set(starts[k] + i, starts[k] + j, ak.get(i, j).clone());
                    b.set(starts[k] + i, starts[k] + j, bk.get(i, j).clone());
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if block_of[i] < block_of[j] {
                    if rng.gen_bool(0.3) {
                        a.set(i, j, int(rng, 1, 2));
                    }
                    if rng.gen_bool(0.3) {
                        b.set(i, j, int(rng, 1, 2));
                    }
                }
            }
        }
        match sign_class(&commutator(&a, &b).expect("square")) {
            SignClass::Positive | SignClass::Zero => found = Some((a, b)),
            SignClass::Negative => found = Some((b, a)),
            SignClass::Mixed => {}
        }
        if found.is_some() {
            break;
        }
    }
    let (a, b) = found.unwrap_or_else(|| {
        // scalar diagonal blocks, nondecreasing along the chain
        let beta = nondecreasing(rng, sizes.len());
        let b = Matrix::from_fn(n, n, |i, j| if i == j { beta[block_of[i]].clone() } else { Rational::zero() });
        let a = Matrix::from_fn(n, n, |i, j| {
            if block_of[i] <= block_of[j] && rng.gen_bool(0.5) {
                int(rng, 1, 3)
            } else {
                Rational::zero()
            }
        });
        (a, b)
    });
    let perm = random_permutation(rng, n);
    (a.permute_similar(&perm), b.permute_similar(&perm))
}

fn sparse_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| if rng.gen_bool(0.5) { int(rng, 1, 2) } else { Rational::zero() }).collect()
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `u vᵀ / (vᵀ u)`; `None` when `vᵀ u = 0`.
pub fn rank_one_idempotent(u: &[Rational], v: &[Rational]) -> Option<Matrix> {
    let s = dot(v, u);
    if s.is_zero() {
        return None;
    }
    let inv = s.recip();
    Some(Matrix::from_fn(u.len(), v.len(), |i, j| &(&u[i] * &v[j]) * &inv))
}

/// Positive rank-one idempotents with a positive (or zero) commutator.
pub fn rank_one_idempotent_pair(rng: &mut ChaCha8Rng, n: usize, attempts: usize) -> Result<(Matrix, Matrix)> {
    for _ in 0..attempts {
        let (u, v, x, y) = (sparse_vector(rng, n), sparse_vector(rng, n), sparse_vector(rng, n), sparse_vector(rng, n));
        let (Some(e), Some(f)) = (rank_one_idempotent(&u, &v), rank_one_idempotent(&x, &y)) else {
            continue;
        };
        match sign_class(&commutator(&e, &f).expect("square")) {
            SignClass::Positive | SignClass::Zero => return Ok((e, f)),
            SignClass::Negative => return Ok((f, e)),
            SignClass::Mixed => {}
        }
    }
    Err(Error::Generation(format!("no semi-commuting rank-one idempotent pair of size {n} after {attempts} attempts")))
}

/// Random `C_n`-type permutation `P` and a positive `A` commuting with it,
/// built blockwise from cycle intertwiners.
pub fn random_commutant_of_permutation(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let sizes = random_composition(rng, n, n);
    let p = permutation_from_cycle_type(&sizes).expect("positive parts");
    let starts: Vec<usize> = sizes.iter().scan(0, |acc, &s| { let st = *acc; *acc += s; Some(st) }).collect();
    let mut a = Matrix::zeros(n, n);
    for (bi, &si) in sizes.iter().enumerate() {
        for (bj, &sj) in sizes.iter().enumerate() {
            if !rng.gen_bool(0.6) {
                continue;
            }
            for u in intertwiner_basis(si, sj).expect("positive sizes") {
                let c = int(rng, 0, 3);
                if c.is_zero() {
                    continue;
                }
                for i in 0..si {
                    for j in 0..sj {
                        if !u.get(i, j).is_zero() {
                            let cur = a.get(starts[bi] + i, starts[bj] + j).clone();
                            a.set(starts[bi] + i, starts[bj] + j, &cur + &c);
                        }
                    }
                }
            }
        }
    }
    let perm = random_permutation(rng, n);
    (p.permute_similar(&perm), a.permute_similar(&perm))
}

/// Positive companion coefficients with exactly `k` leading zeros.
pub fn random_companion(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Matrix {
    let coeffs = (0..n)
        .map(|i| {
            if i < k {
                Rational::zero()
            } else if i == k {
                int(rng, 1, 3)
            } else {
                int(rng, 0, 2)
            }
        })
        .collect();
    companion(&CompanionSpec::new(coeffs))
}

/// Upper-triangular positive `B` whose diagonals are monotone going down
/// the matrix, so `J_n B − B J_n` is positive (`increasing`) or negative.
pub fn random_jordan_semicommuting(rng: &mut ChaCha8Rng, n: usize, increasing: bool) -> Matrix {
    let mut b = Matrix::zeros(n, n);
    for d in 0..n {
        let len = n - d;
        let mut vals: Vec<i64> = Vec::with_capacity(len);
        let mut cur = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..=2) };
        for _ in 0..len {
            vals.push(cur);
            cur += rng.gen_range(0..=1);
        }
        if !increasing {
            vals.reverse();
        }
        for (i, v) in vals.into_iter().enumerate() {
            b.set(i, i + d, Rational::from_int(v));
        }
    }
    b
}

/// Positive idempotent `Q ᵀ [[0, XJ, XJY], [0, J, JY], [0, 0, 0]] Q` scaled
/// by a positive diagonal, where `J` is a direct sum of strictly positive
/// rank-one idempotents. With `strict`, the leading zero block is empty and
/// every column of `Y` is nonzero, so the result has no zero column.
pub fn random_positive_idempotent(rng: &mut ChaCha8Rng, n: usize, strict: bool) -> Matrix {
    let z = if strict { 0 } else { rng.gen_range(0..=n / 2) };
    let rest = n - z;
    let w = if rest > 1 { rng.gen_range(0..rest) } else { 0 };
    let m = rest - w;
    let mut j = None::<Matrix>;
    for s in random_composition(rng, m, 3) {
        let u: Vec<Rational> = (0..s).map(|_| int(rng, 1, 2)).collect();
        let v: Vec<Rational> = (0..s).map(|_| int(rng, 1, 2)).collect();
        let block = rank_one_idempotent(&u, &v).expect("strictly positive vectors");
        j = Some(match j {
            None => block,
            Some(acc) => acc.direct_sum(&block),
        });
    }
    let j = j.expect("m >= 1");
    let mut e = Matrix::zeros(n, n);
    let place = |e: &mut Matrix, r0: usize, c0: usize, blk: &Matrix| {
        for i in 0..blk.rows() {
            for k in 0..blk.cols() {
                e.set(r0 + i, c0 + k, blk.get(i, k).clone());
            }
        }
    };
    place(&mut e, z, z, &j);
    let y = (w > 0).then(|| {
        let mut y = random_positive(rng, m, w, 40, 2);
        if strict {
            for c in 0..w {
                if (0..m).all(|r| y.get(r, c).is_zero()) {
                    let r = rng.gen_range(0..m);
                    y.set(r, c, Rational::one());
                }
            }
        }
        y
    });
    if let Some(y) = &y {
        place(&mut e, z, z + m, &(&j * y));
    }
    if z > 0 {
        let x = random_positive(rng, z, m, 40, 2);
        let xj = &x * &j;
        place(&mut e, 0, z, &xj);
        if let Some(y) = &y {
            place(&mut e, 0, z + m, &(&xj * y));
        }
    }
    let perm = random_permutation(rng, n);
    let (d, dinv) = positive_diagonal(rng, n);
    &(&d * &e.permute_similar(&perm)) * &dinv
}

/// Orients a pair so that `ef − fe ≥ 0`; `None` if the commutator is mixed.
fn orient(e: Matrix, f: Matrix) -> Option<(Matrix, Matrix)> {
    match sign_class(&commutator(&e, &f).expect("square")) {
        SignClass::Positive | SignClass::Zero => Some((e, f)),
        SignClass::Negative => Some((f, e)),
        SignClass::Mixed => None,
    }
}

fn idempotent_piece(rng: &mut ChaCha8Rng, s: usize) -> (Matrix, Matrix) {
    match rng.gen_range(0..6) {
        0 if s == 7 => {
            let p = idempotent_pair_7x7();
            (p.e, p.f)
        }
        0 | 1 if s == 3 => {
            let p = idempotent_pair_3x3();
            (p.e, p.f)
        }
        2 => (Matrix::identity(s), random_positive_idempotent(rng, s, false)),
        3 => {
            let e = random_positive_idempotent(rng, s, false);
            (e.clone(), e)
        }
        _ => rank_one_idempotent_pair(rng, s, RANK_ONE_ATTEMPTS)
            .unwrap_or_else(|_| (Matrix::identity(s), Matrix::zeros(s, s))),
    }
}

/// Positive idempotents with `ef ≥ fe`: either a rejection-sampled pair of
/// full size or a direct sum of small semi-commuting pieces, followed by a
/// random simultaneous permutation and positive diagonal similarity.
pub fn random_positive_idempotent_pair(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    if rng.gen_bool(0.5) {
        for _ in 0..40 {
            let e = random_positive_idempotent(rng, n, false);
            let f = random_positive_idempotent(rng, n, false);
            if let Some(pair) = orient(e, f) {
                if !pair.0.is_zero() && !commutator(&pair.0, &pair.1).expect("square").is_zero() {
                    return pair;
                }
            }
        }
    }
    let mut e = None::<Matrix>;
    let mut f = None::<Matrix>;
    let mut left = n;
    while left > 0 {
        let s = if left >= 7 && rng.gen_bool(0.3) {
            7
        } else if left >= 3 && rng.gen_bool(0.5) {
            3
        } else {
            rng.gen_range(1..=left.min(3))
        };
        let (pe, pf) = idempotent_piece(rng, s);
        e = Some(e.map_or(pe.clone(), |acc| acc.direct_sum(&pe)));
        f = Some(f.map_or(pf.clone(), |acc| acc.direct_sum(&pf)));
        left -= s;
    }
    let (e, f) = (e.expect("n >= 1"), f.expect("n >= 1"));
    let perm = random_permutation(rng, n);
    let (d, dinv) = positive_diagonal(rng, n);
    let conj = |m: &Matrix| &(&d * &m.permute_similar(&perm)) * &dinv;
    (conj(&e), conj(&f))
}

/// Like [`random_positive_idempotent_pair`] but with a strictly positive
/// `e` (before orientation), so the strictness lemmas have a premise.
pub fn random_strict_idempotent_pair(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let e = random_positive_idempotent(rng, n, true);
    for _ in 0..60 {
        let strict = rng.gen_bool(0.3);
        let f = random_positive_idempotent(rng, n, strict);
        if let Some(pair) = orient(e.clone(), f) {
            return pair;
        }
    }
    match rng.gen_range(0..3) {
        0 => (e.clone(), e),
        1 => (e, Matrix::identity(n)),
        _ => (e, Matrix::zeros(n, n)),
    }
}

/// `S D S⁻¹` with `S` unit upper-triangular and `D` a 0/1 diagonal.
pub fn random_upper_triangular_idempotent(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let s = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            Rational::one()
        } else if j > i {
            int(rng, -2, 2)
        } else {
            Rational::zero()
        }
    });
    let d: Vec<Rational> = (0..n).map(|_| if rng.gen_bool(0.5) { Rational::one() } else { Rational::zero() }).collect();
    let s_inv = s.inverse().expect("square").expect("unit triangular");
    &(&s * &Matrix::diagonal(&d)) * &s_inv
}

/// `S D S⁻¹` with `S` a random invertible integer matrix.
pub fn random_idempotent(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let s = random_integer_matrix(rng, n, n, -2, 2);
        if let Some(s_inv) = s.inverse().expect("square") {
            let d: Vec<Rational> =
                (0..n).map(|_| if rng.gen_bool(0.5) { Rational::one() } else { Rational::zero() }).collect();
            return &(&s * &Matrix::diagonal(&d)) * &s_inv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{is_ideal_irreducible, is_positive, is_strictly_positive};

    #[test]
    fn families_parse() {
        assert_eq!("block-chain".parse::<Family>().unwrap(), Family::BlockChain);
        assert!(matches!("nope".parse::<Family>(), Err(Error::Usage(_))));
    }

    #[test]
    fn every_family_is_positive_and_semi_commuting() {
        for family in Family::ALL {
            for n in 1..=5 {
                for seed in 0..20 {
                    let (a, b) = random_semicommuting_pair(n, family, seed).unwrap();
                    assert!(is_positive(&a) && is_positive(&b), "{family} n={n} seed={seed}");
                    let s = sign_class(&commutator(&a, &b).unwrap());
                    assert!(s.is_nonnegative(), "{family} n={n} seed={seed}: {s}");
                }
            }
        }
    }

    #[test]
    fn families_are_deterministic() {
        for family in Family::ALL {
            assert_eq!(random_semicommuting_pair(4, family, 9).unwrap(), random_semicommuting_pair(4, family, 9).unwrap());
        }
    }

    #[test]
    fn commuting_poly_commutes() {
        for seed in 0..10 {
            let (a, b) = random_semicommuting_pair(4, Family::CommutingPoly, seed).unwrap();
            assert!(commutator(&a, &b).unwrap().is_zero());
        }
    }

    #[test]
    fn idempotent_generators() {
        let mut rng = stream(3, &[]);
        for n in 1..=6 {
            for _ in 0..10 {
                let e = random_positive_idempotent(&mut rng, n, false);
                assert!(e.is_idempotent() && is_positive(&e));
                let s = random_positive_idempotent(&mut rng, n, true);
                assert!(s.is_idempotent() && is_strictly_positive(&s).unwrap());
                let (e, f) = random_positive_idempotent_pair(&mut rng, n);
                assert!(e.is_idempotent() && f.is_idempotent());
                assert!(is_positive(&e) && is_positive(&f));
                assert!(sign_class(&commutator(&e, &f).unwrap()).is_nonnegative());
                let u = random_upper_triangular_idempotent(&mut rng, n);
                assert!(u.is_idempotent() && u.is_upper_triangular());
                assert!(random_idempotent(&mut rng, n).is_idempotent());
            }
        }
    }

    #[test]
    fn permutation_commutants_commute() {
        let mut rng = stream(5, &[]);
        for n in 1..=6 {
            let (p, a) = random_commutant_of_permutation(&mut rng, n);
            assert_eq!(&p * &a, &a * &p);
        }
    }

    #[test]
    fn irreducible_generator() {
        let mut rng = stream(11, &[]);
        for n in 1..=6 {
            assert!(is_ideal_irreducible(&random_irreducible_positive(&mut rng, n)).unwrap());
        }
    }

    #[test]
    fn jordan_semicommuting_signs() {
        let mut rng = stream(13, &[]);
        for n in 1..=6 {
            let j = super::super::jordan_block(n).unwrap();
            let b = random_jordan_semicommuting(&mut rng, n, true);
            assert!(sign_class(&commutator(&j, &b).unwrap()).is_nonnegative());
            let b = random_jordan_semicommuting(&mut rng, n, false);
            assert!(matches!(sign_class(&commutator(&j, &b).unwrap()), SignClass::Negative | SignClass::Zero));
        }
    }
}
