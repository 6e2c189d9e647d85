use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use semicomm::{Matrix, Rational};

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

/// Numerators include values near the i64 limits so the overflow path runs.
fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        4 => (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d)),
        1 => (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d)),
    ]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => Just(Rational::zero()),
        5 => (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d)),
    ]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(small_rational(), r * c).prop_map(move |v| Matrix::new(r, c, v).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(small_rational(), n * n).prop_map(move |v| Matrix::new(n, n, v).unwrap())
    })
}

/// Strictly upper-triangular after a random permutation similarity: always nilpotent.
fn nilpotent(max: usize) -> impl Strategy<Value = Matrix> {
    (square(max), any::<u64>()).prop_map(|(m, s)| {
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left((s as usize) % n);
        let strict = Matrix::from_fn(n, n, |i, j| if j > i { m.get(i, j).clone() } else { Rational::zero() });
        strict.permute_similar(&perm)
    })
}

proptest! {
    #[test]
    fn arithmetic_matches_bigrational(a in rational(), b in rational()) {
        let (ba, bb) = (big(&a), big(&b));
        prop_assert_eq!(big(&(&a + &b)), &ba + &bb);
        prop_assert_eq!(big(&(&a - &b)), &ba - &bb);
        prop_assert_eq!(big(&(&a * &b)), &ba * &bb);
        if !b.is_zero() {
            prop_assert_eq!(big(&(&a / &b)), &ba / &bb);
        }
        prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
    }

    #[test]
    fn sum_of_fractions_matches_integer_formula(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let s = &Rational::new(a, b) + &Rational::new(c, d);
        let num = BigInt::from(a) * d + BigInt::from(c) * b;
        let den = BigInt::from(b) * d;
        prop_assert_eq!(big(&s), BigRational::new(num, den));
    }

    #[test]
    fn display_parse_round_trip(a in rational()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rref_is_idempotent(m in matrix(8)) {
        let r = m.rref().matrix;
        prop_assert_eq!(r.rref().matrix, r);
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix(8)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn nilpotency_matches_power_rank(m in prop_oneof![square(6), nilpotent(6)]) {
        let n = m.rows() as u32;
        prop_assert_eq!(m.is_nilpotent().unwrap(), m.pow(n).unwrap().rank() == 0);
    }

    #[test]
    fn strictly_triangular_is_nilpotent(m in nilpotent(6)) {
        prop_assert!(m.is_nilpotent().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(m in square(5)) {
        match m.inverse().unwrap() {
            Some(inv) => {
                let id = Matrix::identity(m.rows());
                prop_assert_eq!(&m * &inv, id.clone());
                prop_assert_eq!(&inv * &m, id);
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn null_space_is_annihilated(m in matrix(6)) {
        let basis = m.null_space();
        prop_assert_eq!(basis.len() + m.rank(), m.cols());
        for v in basis {
            let col = Matrix::new(v.len(), 1, v).unwrap();
            prop_assert!((&m * &col).is_zero());
        }
    }
}
