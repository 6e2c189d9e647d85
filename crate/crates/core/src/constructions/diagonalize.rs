use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};

/// Unit block upper-triangular similarity that diagonalizes an
/// upper-triangular idempotent `e` while keeping `f` upper-triangular.
///
/// Diagonal positions are grouped into maximal runs of equal `e`-diagonal
/// values; the diagonal blocks of `e` are then `0` or `I`, alternating. If
/// the first block is `0` the procedure runs on `I − e`, which is
/// diagonalized by the same similarity. Each round clears one odd block
/// super-diagonal `t` with `P = I + N`, where `N` copies the blocks
/// `(i, i+t)` of the current matrix with alternating signs `+, −, +, …`;
/// idempotency then forces block super-diagonal `t + 1` to vanish too.
///
/// Returns `(p, p e p⁻¹, p f p⁻¹)`.
pub fn diagonalize_idempotent(e: &Matrix, f: &Matrix) -> Result<(Matrix, Matrix, Matrix)> {
    if !e.is_square() || !f.is_square() || e.rows() != f.rows() {
        return Err(Error::shape("diagonalization needs square matrices of equal size"));
    }
    if !e.is_upper_triangular() || !f.is_upper_triangular() {
        return Err(Error::domain("diagonalization needs upper-triangular inputs"));
    }
    if !e.is_idempotent() {
        return Err(Error::domain("diagonalization needs an idempotent E"));
    }
    let n = e.rows();

    // block boundaries: starts of maximal runs of equal diagonal entries
    let mut starts = vec![0];
    for i in 1..n {
        if e.get(i, i) != e.get(i - 1, i - 1) {
            starts.push(i);
        }
    }
    let k = starts.len();
    starts.push(n);

    let identity = Matrix::identity(n);
    let mut g = if e.get(0, 0).is_zero() { &identity - e } else { e.clone() };
    let mut p_total = identity.clone();

    let mut t = 1;
    while t < k {
        let mut step = identity.clone();
        for bi in 0..k - t {
            let bj = bi + t;
            // blocks with even index are identity blocks of g
            let sign = if bi % 2 == 0 { Rational::one() } else { -Rational::one() };
            for r in starts[bi]..starts[bi + 1] {
                for c in starts[bj]..starts[bj + 1] {
                    step.set(r, c, g.get(r, c) * &sign);
                }
            }
        }
        let inv = step.inverse()?.expect("unit upper-triangular matrices are invertible");
        g = &(&step * &g) * &inv;
        p_total = &step * &p_total;
        t += 2;
    }

    let p_inv = p_total.inverse()?.expect("unit upper-triangular matrices are invertible");
    let e_out = &(&p_total * e) * &p_inv;
    let f_out = &(&p_total * f) * &p_inv;
    if !e_out.is_diagonal() || !f_out.is_upper_triangular() {
        return Err(Error::domain("diagonalization did not reach diagonal form"));
    }
    Ok((p_total, e_out, f_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra_dim;
    use crate::constructions::catalan_idempotent_pair;

    #[test]
    fn diagonal_input_is_untouched() {
        let e = Matrix::from_ints(&[[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
        let f = Matrix::from_ints(&[[1, 2, 3], [0, 0, 4], [0, 0, 1]]);
        let (p, e2, f2) = diagonalize_idempotent(&e, &f).unwrap();
        assert_eq!(p, Matrix::identity(3));
        assert_eq!(e2, e);
        assert_eq!(f2, f);
    }

    #[test]
    fn single_elimination_step() {
        let e = Matrix::from_ints(&[[1, 1], [0, 0]]);
        let (p, e2, _) = diagonalize_idempotent(&e, &Matrix::identity(2)).unwrap();
        assert_eq!(p, Matrix::from_ints(&[[1, 1], [0, 1]]));
        assert_eq!(e2, Matrix::from_ints(&[[1, 0], [0, 0]]));
    }

    #[test]
    fn leading_zero_block_goes_through_complement() {
        let e = Matrix::from_ints(&[[0, 3], [0, 1]]);
        let (p, e2, _) = diagonalize_idempotent(&e, &e).unwrap();
        assert_eq!(e2, Matrix::from_ints(&[[0, 0], [0, 1]]));
        assert_eq!(&(&p * &e) * &p.inverse().unwrap().unwrap(), e2);
    }

    #[test]
    fn conjugated_catalan_pair() {
        let c = catalan_idempotent_pair(5).unwrap();
        let s = Matrix::from_ints(&[
            [1, 2, -1, 0, 3],
            [0, 1, 1, -2, 0],
            [0, 0, 1, 4, 1],
            [0, 0, 0, 1, -1],
            [0, 0, 0, 0, 1],
        ]);
        let si = s.inverse().unwrap().unwrap();
        let e = &(&s * &c.e) * &si;
        let f = &(&s * &c.f) * &si;
        assert!(!e.is_diagonal());
        let (_, e2, f2) = diagonalize_idempotent(&e, &f).unwrap();
        assert!(e2.is_diagonal());
        assert!(f2.is_upper_triangular());
        assert_eq!(algebra_dim(&[e2, f2]).unwrap(), algebra_dim(&[c.e, c.f]).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let lower = Matrix::from_ints(&[[1, 0], [1, 0]]);
        assert!(matches!(diagonalize_idempotent(&lower, &Matrix::identity(2)), Err(Error::Domain(_))));
        let not_idem = Matrix::from_ints(&[[2, 0], [0, 0]]);
        assert!(matches!(diagonalize_idempotent(&not_idem, &Matrix::identity(2)), Err(Error::Domain(_))));
    }
}
