use num_integer::Integer;
use proptest::prelude::*;
use semicomm::algebra::algebra_dim;
use semicomm::constructions::random::random_upper_triangular_idempotent;
use semicomm::constructions::{
    catalan_idempotent_pair, companion, companion_coefficients, cycle, diagonalize_idempotent, gerstenhaber_witness,
    intertwiner_basis, jordan_block, permutation_from_cycle_type, verify_intertwiner_structure, CompanionSpec,
};
use semicomm::exact::commutator;
use semicomm::rng::stream;
use semicomm::{Matrix, Rational};

#[test]
fn gerstenhaber_witness_is_tight_up_to_8() {
    for n in 1..=8 {
        let (a, b) = gerstenhaber_witness(n).unwrap();
        assert_eq!(a, jordan_block(n).unwrap());
        assert_eq!(algebra_dim(&[a, b]).unwrap(), n * (n + 1) / 2, "n = {n}");
    }
}

#[test]
fn catalan_pairs_meet_the_gate() {
    for n in 2..=10 {
        let p = catalan_idempotent_pair(n).unwrap();
        assert!(p.f.is_idempotent() && p.e.is_idempotent());
        let k = commutator(&p.e, &p.f).unwrap();
        let expected = Matrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                Rational::from_int(if i % 2 == 0 { 1 } else { -1 })
            } else {
                Rational::zero()
            }
        });
        assert_eq!(k, expected, "n = {n}");
        assert_eq!(algebra_dim(&[p.e, p.f]).unwrap(), 2 * n - 1, "n = {n}");
    }
}

proptest! {
    #[test]
    fn intertwiners_have_gcd_many_independent_elements(m in 1usize..=15, n in 1usize..=15) {
        let basis = intertwiner_basis(m, n).unwrap();
        prop_assert_eq!(basis.len(), m.gcd(&n));
        let (cm, cn) = (cycle(m).unwrap(), cycle(n).unwrap());
        for u in &basis {
            prop_assert_eq!(&cm * u, u * &cn);
        }
        let stacked = Matrix::from_fn(basis.len(), m * n, |i, k| basis[i].entries()[k].clone());
        prop_assert_eq!(stacked.rank(), basis.len());
        // disjoint supports covering every entry exactly once
        let total = basis.iter().fold(Matrix::zeros(m, n), |acc, u| &acc + u);
        prop_assert!(total.entries().iter().all(Rational::is_one));
    }

    #[test]
    fn every_intertwiner_combination_has_the_structure(m in 1usize..=8, n in 1usize..=8, seed in any::<u64>()) {
        let basis = intertwiner_basis(m, n).unwrap();
        let coeffs: Vec<Rational> = (0..basis.len()).map(|i| Rational::from_int(((seed >> (i % 60)) & 7) as i64 - 3)).collect();
        let x = basis.iter().zip(&coeffs).fold(Matrix::zeros(m, n), |acc, (u, c)| &acc + &u.scale(c));
        prop_assert!(verify_intertwiner_structure(&x, m, n).unwrap());
    }

    #[test]
    fn cycle_powers_cycle(n in 1usize..=9) {
        let c = cycle(n).unwrap();
        prop_assert_eq!(c.pow(n as u32).unwrap(), Matrix::identity(n));
        prop_assert_eq!(&c * &c.transpose(), Matrix::identity(n));
    }

    #[test]
    fn permutation_cycle_type_is_a_permutation(sizes in proptest::collection::vec(1usize..=4, 1..=4)) {
        let p = permutation_from_cycle_type(&sizes).unwrap();
        let n: usize = sizes.iter().sum();
        prop_assert_eq!(&p * &p.transpose(), Matrix::identity(n));
        let order = sizes.iter().fold(1usize, |l, &s| l.lcm(&s));
        prop_assert_eq!(p.pow(order as u32).unwrap(), Matrix::identity(n));
    }

    #[test]
    fn companion_round_trips(coeffs in proptest::collection::vec(-5i64..=5, 1..=7)) {
        let spec = CompanionSpec::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect());
        let c = companion(&spec);
        prop_assert_eq!(companion_coefficients(&c), Some(spec.clone()));
        let k = spec.zero_multiplicity();
        prop_assert_eq!(k, coeffs.iter().take_while(|&&c| c == 0).count());
    }

    #[test]
    fn diagonalization_preserves_idempotency_and_dimension(n in 1usize..=7, seed in any::<u64>()) {
        let mut rng = stream(seed, &[]);
        let e = random_upper_triangular_idempotent(&mut rng, n);
        let f = random_upper_triangular_idempotent(&mut rng, n);
        let (p, pe, pf) = diagonalize_idempotent(&e, &f).unwrap();
        let inv = p.inverse().unwrap().expect("invertible similarity");
        prop_assert_eq!(&(&p * &e) * &inv, pe.clone());
        prop_assert_eq!(&(&p * &f) * &inv, pf.clone());
        prop_assert!(pe.is_diagonal() && pe.is_idempotent());
        prop_assert!(pf.is_upper_triangular() && pf.is_idempotent());
        prop_assert_eq!(algebra_dim(&[pe, pf]).unwrap(), algebra_dim(&[e, f]).unwrap());
    }
}
