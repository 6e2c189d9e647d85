//! Named matrix families and extremal examples.

mod diagonalize;
pub mod random;

pub use diagonalize::diagonalize_idempotent;
pub use random::{random_semicommuting_pair, Family};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{commutator, Matrix, Rational};

fn require_size(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::domain(format!("{what} needs n >= 1")))
    } else {
        Ok(())
    }
}

/// Nilpotent upper shift `J_n`.
pub fn jordan_block(n: usize) -> Result<Matrix> {
    require_size(n, "jordan block")?;
    Ok(Matrix::from_fn(n, n, |i, j| if j == i + 1 { Rational::one() } else { Rational::zero() }))
}

/// Cycle `C_n` with `C e_j = e_{j-1}` and `C e_1 = e_n`.
pub fn cycle(n: usize) -> Result<Matrix> {
    require_size(n, "cycle")?;
    Ok(Matrix::from_fn(n, n, |i, j| {
        if j == (i + 1) % n {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// Bottom-row coefficients `a_0, …, a_{n-1}` of a companion matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionSpec {
    pub coefficients: Vec<Rational>,
}

impl CompanionSpec {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        CompanionSpec { coefficients }
    }

    pub fn size(&self) -> usize {
        self.coefficients.len()
    }

    /// Number of leading zero coefficients: the algebraic multiplicity of 0.
    pub fn zero_multiplicity(&self) -> usize {
        self.coefficients.iter().take_while(|c| c.is_zero()).count()
    }
}

/// Ones on the super-diagonal, coefficients in the last row.
pub fn companion(spec: &CompanionSpec) -> Matrix {
    let n = spec.size();
    assert!(n > 0, "companion matrix needs at least one coefficient");
    Matrix::from_fn(n, n, |i, j| {
        if i == n - 1 {
            spec.coefficients[j].clone()
        } else if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// If `m` has companion shape, its bottom-row coefficients.
pub fn companion_coefficients(m: &Matrix) -> Option<CompanionSpec> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    for i in 0..n - 1 {
        for j in 0..n {
            let expected = if j == i + 1 { Rational::one() } else { Rational::zero() };
            if *m.get(i, j) != expected {
                return None;
            }
        }
    }
    Some(CompanionSpec::new(m.row(n - 1).to_vec()))
}

/// Block-diagonal `C_{n_1} ⊕ … ⊕ C_{n_k}`.
pub fn permutation_from_cycle_type(sizes: &[usize]) -> Result<Matrix> {
    if sizes.is_empty() {
        return Err(Error::domain("cycle type must be nonempty"));
    }
    let mut blocks = sizes.iter().map(|&s| cycle(s));
    let first = blocks.next().expect("nonempty")?;
    blocks.try_fold(first, |acc, b| Ok(acc.direct_sum(&b?)))
}

/// Permutation matrix sending `e_j` to `e_{perm[j]}`.
pub fn permutation_matrix(perm: &[usize]) -> Matrix {
    let n = perm.len();
    Matrix::from_fn(n, n, |i, j| if perm[j] == i { Rational::one() } else { Rational::zero() })
}

/// `(J_n, diag(1, 2, …, n))`: positive commutator, algebra of dimension `n(n+1)/2`.
pub fn gerstenhaber_witness(n: usize) -> Result<(Matrix, Matrix)> {
    let j = jordan_block(n)?;
    let d: Vec<Rational> = (1..=n as i64).map(Rational::from_int).collect();
    Ok((j, Matrix::diagonal(&d)))
}

/// Basis `u_1, …, u_d` (`d = gcd(m, n)`) of the `m×n` matrices `X` with
/// `C_m X = X C_n`. Each `u_j` is the 0/1 indicator of one wrap-around
/// diagonal orbit: rows `1 + x (mod m)`, columns `j + x (mod n)`,
/// `x = 1..lcm(m, n)`, residues taken in `1..=m` and `1..=n`.
pub fn intertwiner_basis(m: usize, n: usize) -> Result<Vec<Matrix>> {
    require_size(m, "intertwiner basis")?;
    require_size(n, "intertwiner basis")?;
    let d = m.gcd(&n);
    let v = m.lcm(&n);
    Ok((1..=d)
        .map(|j| {
            let mut u = Matrix::zeros(m, n);
            for x in 1..=v {
                let row = (1 + x - 1) % m; // 0-based residue of 1 + x
                let col = (j + x - 1) % n; // 0-based residue of j + x
                u.set(row, col, Rational::one());
            }
            u
        })
        .collect())
}

/// Wrap-around Toeplitz test `a[i][j-1] = a[i+1][j]` (indices mod `m`, `n`),
/// cross-checked against `C_m a = a C_n`.
pub fn verify_intertwiner_structure(a: &Matrix, m: usize, n: usize) -> Result<bool> {
    if a.rows() != m || a.cols() != n {
        return Err(Error::shape(format!("expected a {m}x{n} matrix, got {}x{}", a.rows(), a.cols())));
    }
    let toeplitz = (0..m).all(|i| (0..n).all(|j| a.get(i, (j + n - 1) % n) == a.get((i + 1) % m, j)));
    let direct = &cycle(m)? * a == a * &cycle(n)?;
    assert_eq!(toeplitz, direct, "Toeplitz and commutation criteria disagree");
    Ok(toeplitz)
}

/// Where an idempotent pair came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Example7x7,
    Example3x3,
    Catalan(usize),
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentPair {
    pub e: Matrix,
    pub f: Matrix,
    pub provenance: Provenance,
}

impl IdempotentPair {
    pub fn new(e: Matrix, f: Matrix, provenance: Provenance) -> Result<Self> {
        if !e.is_idempotent() || !f.is_idempotent() || e.rows() != f.rows() {
            return Err(Error::domain("idempotent pair needs square idempotents of equal size"));
        }
        Ok(IdempotentPair { e, f, provenance })
    }

    pub fn commutator(&self) -> Matrix {
        commutator(&self.e, &self.f).expect("validated shapes")
    }
}

/// 7×7 positive idempotents with positive commutator and a 9-dimensional algebra.
pub fn idempotent_pair_7x7() -> IdempotentPair {
    let e = Matrix::from_ints(&[
        [1, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1, 0],
    ]);
    let f = Matrix::from_ints(&[
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 1],
    ]);
    IdempotentPair { e, f, provenance: Provenance::Example7x7 }
}

/// 3×3 positive idempotents with positive commutator and a 5-dimensional algebra.
pub fn idempotent_pair_3x3() -> IdempotentPair {
    let e = Matrix::from_ints(&[[0, 1, 0], [0, 1, 0], [0, 0, 0]]);
    let f = Matrix::from_ints(&[[0, 0, 0], [0, 1, 1], [0, 0, 0]]);
    IdempotentPair { e, f, provenance: Provenance::Example3x3 }
}

/// `C_j = binom(2j, j) / (j + 1)`.
pub fn catalan_number(j: u32) -> Rational {
    let mut c = Rational::one();
    for i in 0..j as i64 {
        // C_{i+1} = C_i · 2(2i+1)/(i+2)
        c = &c * &Rational::new(2 * (2 * i + 1), i + 2);
    }
    c
}

/// Triangular idempotent pair whose algebra has dimension `2n − 1`.
///
/// `E = diag(1, 0, 1, 0, …)`. `F` has diagonal `(1, 0, 1, 0, …)`, ones on
/// the first super-diagonal, and on the `2j`-th super-diagonal the
/// alternating values `−C_{j-1}, +C_{j-1}, …` (first row negative), for
/// `j = 1..⌊(n−1)/2⌋`; zero elsewhere.
pub fn catalan_idempotent_pair(n: usize) -> Result<IdempotentPair> {
    require_size(n, "catalan pair")?;
    let parity = |i: usize| if i % 2 == 0 { Rational::one() } else { Rational::zero() };
    let e = Matrix::from_fn(n, n, |i, j| if i == j { parity(i) } else { Rational::zero() });
    let mut f = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            parity(i)
        } else if j == i + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    for j in 1..=(n - 1) / 2 {
        let c = catalan_number(j as u32 - 1);
        for i in 0..n - 2 * j {
            // row i is 1-based row i+1: odd rows carry −C, even rows +C
            let v = if i % 2 == 0 { -&c } else { c.clone() };
            f.set(i, i + 2 * j, v);
        }
    }
    Ok(IdempotentPair { e, f, provenance: Provenance::Catalan(n) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_shifts_basis_vectors() {
        assert_eq!(cycle(1).unwrap(), Matrix::identity(1));
        let c = cycle(3).unwrap();
        let e2 = Matrix::from_ints(&[[0], [1], [0]]);
        let e1 = Matrix::from_ints(&[[1], [0], [0]]);
        let e3 = Matrix::from_ints(&[[0], [0], [1]]);
        assert_eq!(&c * &e2, e1);
        assert_eq!(&c * &e1, e3);
        assert!(matches!(cycle(0), Err(Error::Domain(_))));
        assert!(matches!(jordan_block(0), Err(Error::Domain(_))));
    }

    #[test]
    fn companion_shape_and_multiplicity() {
        let spec = CompanionSpec::new([0, 0, 1, 2].map(Rational::from_int).to_vec());
        assert_eq!(spec.zero_multiplicity(), 2);
        let a = companion(&spec);
        assert_eq!(a, Matrix::from_ints(&[[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 2]]));
        assert_eq!(companion_coefficients(&a), Some(spec));
        assert_eq!(CompanionSpec::new(vec![Rational::zero(); 3]).zero_multiplicity(), 3);
        assert_eq!(companion(&CompanionSpec::new(vec![Rational::zero(); 3])), jordan_block(3).unwrap());
    }

    #[test]
    fn cycle_type_blocks() {
        let p = permutation_from_cycle_type(&[2, 1]).unwrap();
        assert_eq!(p, Matrix::from_ints(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]));
        assert_eq!(permutation_from_cycle_type(&[1, 1, 1]).unwrap(), Matrix::identity(3));
        assert!(permutation_from_cycle_type(&[2, 0]).is_err());
    }

    #[test]
    fn intertwiners_two_by_two() {
        let us = intertwiner_basis(2, 2).unwrap();
        assert_eq!(us.len(), 2);
        let c2 = cycle(2).unwrap();
        for u in &us {
            assert_eq!(&c2 * u, u * &c2);
        }
        // the span is the circulants {I, C₂}
        let span: Vec<Matrix> = vec![Matrix::identity(2), c2];
        for u in &us {
            assert!(span.contains(u));
        }
    }

    #[test]
    fn intertwiners_four_by_six_checkerboard() {
        let us = intertwiner_basis(4, 6).unwrap();
        assert_eq!(us.len(), 2);
        let a = Rational::from_int(2);
        let b = Rational::from_int(5);
        // which basis element carries the (1,1) entry determines "a"
        let (ua, ub) = if us[0].get(0, 0).is_one() { (&us[0], &us[1]) } else { (&us[1], &us[0]) };
        let x = &ua.scale(&a) + &ub.scale(&b);
        for i in 0..4 {
            for j in 0..6 {
                let expected = if (i + j) % 2 == 0 { &a } else { &b };
                assert_eq!(x.get(i, j), expected);
            }
        }
    }

    #[test]
    fn intertwiner_with_single_row() {
        let us = intertwiner_basis(1, 4).unwrap();
        assert_eq!(us, vec![Matrix::from_ints(&[[1, 1, 1, 1]])]);
    }

    #[test]
    fn intertwiner_structure_checks() {
        for u in intertwiner_basis(3, 6).unwrap() {
            assert!(verify_intertwiner_structure(&u, 3, 6).unwrap());
        }
        assert!(verify_intertwiner_structure(&Matrix::from_ints(&[[1, 1, 1], [1, 1, 1]]), 2, 3).unwrap());
        let mut e11 = Matrix::zeros(3, 4);
        e11.set(0, 0, Rational::one());
        assert!(!verify_intertwiner_structure(&e11, 3, 4).unwrap());
        assert!(matches!(verify_intertwiner_structure(&e11, 4, 3), Err(Error::Shape(_))));
    }

    #[test]
    fn stored_examples_are_idempotent() {
        for p in [idempotent_pair_7x7(), idempotent_pair_3x3()] {
            assert!(p.e.is_idempotent());
            assert!(p.f.is_idempotent());
            assert_eq!(crate::order::sign_class(&p.commutator()), crate::order::SignClass::Positive);
        }
        assert_eq!(idempotent_pair_3x3().commutator(), Matrix::from_ints(&[[0, 1, 1], [0, 0, 1], [0, 0, 0]]));
    }

    #[test]
    fn catalan_numbers() {
        let got: Vec<String> = (0..8).map(|j| catalan_number(j).to_string()).collect();
        assert_eq!(got, ["1", "1", "2", "5", "14", "42", "132", "429"]);
    }

    #[test]
    fn catalan_pair_small_cases() {
        let p = catalan_idempotent_pair(3).unwrap();
        assert_eq!(p.f, Matrix::from_ints(&[[1, 1, -1], [0, 0, 1], [0, 0, 1]]));
        let p = catalan_idempotent_pair(2).unwrap();
        assert_eq!(p.f, Matrix::from_ints(&[[1, 1], [0, 0]]));
        assert_eq!(catalan_idempotent_pair(1).unwrap().f, Matrix::identity(1));
    }
}
