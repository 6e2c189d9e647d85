//! Seeded randomized runs of every predicate.
//!
//! Each predicate gets its fixed constructed witnesses followed by
//! `trials` generated instances at every size `1..=n_max`. Instance
//! `(theorem, size, trial)` draws from its own stream, so the report does
//! not depend on how the work is scheduled.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{check, Instance, Outcome, TheoremId, TheoremReport};
use crate::constructions::random::{
    int, positive_polynomial, random_commutant_of_permutation, random_companion, random_idempotent,
    random_irreducible_positive, random_jordan_semicommuting, random_permutation, random_positive,
    random_positive_idempotent, random_positive_idempotent_pair, random_strict_idempotent_pair,
    random_upper_triangular_idempotent,
};
use crate::constructions::{
    catalan_idempotent_pair, companion, cycle, gerstenhaber_witness, idempotent_pair_3x3, idempotent_pair_7x7,
    intertwiner_basis, jordan_block, permutation_matrix, random_semicommuting_pair, CompanionSpec, Family,
};
use crate::exact::{commutator, Matrix, Rational};
use crate::order::sign_class;
use crate::rng::stream;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremCounts {
    pub holds: usize,
    pub not_applicable: usize,
    pub violated: usize,
}

impl TheoremCounts {
    fn add(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Holds => self.holds += 1,
            Outcome::NotApplicable => self.not_applicable += 1,
            Outcome::Violated => self.violated += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.holds + self.not_applicable + self.violated
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub counts: BTreeMap<TheoremId, TheoremCounts>,
    /// Every report, ordered by theorem, then witnesses, then size and trial.
    pub reports: Vec<TheoremReport>,
}

impl SuiteReport {
    pub fn total_violations(&self) -> usize {
        self.counts.values().map(|c| c.violated).sum()
    }

    pub fn violations(&self) -> impl Iterator<Item = &TheoremReport> {
        self.reports.iter().filter(|r| r.outcome == Outcome::Violated)
    }
}

pub fn run_suite(n_max: usize, trials: usize, seed: u64) -> SuiteReport {
    run_suite_with_jobs(TheoremId::ALL, n_max, trials, seed, 1)
}

/// Runs the selected predicates; `jobs > 1` evaluates instances on a
/// thread pool of that size. The report is identical for every `jobs`.
pub fn run_suite_with_jobs(theorems: &[TheoremId], n_max: usize, trials: usize, seed: u64, jobs: usize) -> SuiteReport {
    let mut work = Vec::new();
    for &t in theorems {
        work.extend(suite_instances(t, n_max, trials, seed).into_iter().map(|inst| (t, inst)));
    }
    let evaluate = |(t, inst): &(TheoremId, Instance)| {
        check(*t, inst).unwrap_or_else(|e| {
            // an input error on a generated instance is a defect; surface it as one
            let mut details = BTreeMap::new();
            details.insert("violation".to_string(), json!(format!("predicate raised an error: {e}")));
            TheoremReport { theorem_id: *t, instance_digest: inst.digest(), outcome: Outcome::Violated, details }
        })
    };
    let reports: Vec<TheoremReport> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| work.par_iter().map(evaluate).collect())
    } else {
        work.iter().map(evaluate).collect()
    };
    let mut counts: BTreeMap<TheoremId, TheoremCounts> = theorems.iter().map(|&t| (t, TheoremCounts::default())).collect();
    for r in &reports {
        counts.entry(r.theorem_id).or_default().add(r.outcome);
    }
    SuiteReport { n_max, trials, seed, counts, reports }
}

/// Constructed witnesses followed by generated instances for one predicate.
pub fn suite_instances(theorem: TheoremId, n_max: usize, trials: usize, seed: u64) -> Vec<Instance> {
    let mut out = witnesses(theorem, n_max);
    let tag = TheoremId::ALL.iter().position(|&t| t == theorem).expect("listed") as u64;
    for n in 1..=n_max {
        for t in 0..trials {
            let mut rng = stream(seed, &[tag, n as u64, t as u64]);
            out.push(generate(theorem, n, n_max, t, &mut rng));
        }
    }
    out
}

fn pair(a: Matrix, b: Matrix) -> Instance {
    Instance::pair(a, b)
}

fn witnesses(theorem: TheoremId, n_max: usize) -> Vec<Instance> {
    let sizes = 1..=n_max.max(1);
    let idem = || {
        let mut v = vec![idempotent_pair_7x7(), idempotent_pair_3x3()];
        v.extend((2..=n_max.max(2)).map(|n| catalan_idempotent_pair(n).expect("n >= 1")));
        v
    };
    let gerst = |n| {
        let (a, b) = gerstenhaber_witness(n).expect("n >= 1");
        pair(a, b)
    };
    match theorem {
        TheoremId::Lem2_1 => sizes
            .map(|n| {
                let c = cycle(n).expect("n >= 1");
                pair(c.clone(), &c * &c)
            })
            .collect(),
        TheoremId::Thm3_2 | TheoremId::Cor5_3 | TheoremId::Prop5_2 | TheoremId::Thm5_4 => {
            let mut v: Vec<Instance> = sizes.clone().map(gerst).collect();
            if matches!(theorem, TheoremId::Prop5_2 | TheoremId::Thm5_4) {
                // companion with a_0 = 1 is the cycle-like irreducible case
                v.extend(sizes.map(|n| {
                    let mut coeffs = vec![Rational::zero(); n];
                    coeffs[0] = Rational::one();
                    let a = companion(&CompanionSpec::new(coeffs));
                    pair(a.clone(), &a * &a)
                }));
            }
            v
        }
        TheoremId::Thm3_3 => sizes.map(|n| Instance::sizes(None, n)).collect(),
        TheoremId::Lem4_2 => intertwiner_basis(4, 6).expect("positive sizes").into_iter().map(Instance::single).collect(),
        TheoremId::Cor4_3 => vec![Instance::sizes(Some(4), 6), Instance::sizes(Some(6), 4)],
        TheoremId::Thm4_5 => sizes.map(|n| pair(Matrix::identity(n), cycle(n).expect("n >= 1"))).collect(),
        TheoremId::Lem6_1 | TheoremId::Lem6_2 | TheoremId::Thm6_4 | TheoremId::Thm6_3 => {
            sizes.map(|n| pair(Matrix::identity(n), Matrix::identity(n))).collect()
        }
        TheoremId::Thm6_6 | TheoremId::LemGn | TheoremId::ThmNil | TheoremId::Gls | TheoremId::CorTri => {
            idem().into_iter().map(|p| pair(p.e, p.f)).collect()
        }
    }
}

fn transpose_pair((a, b): (Matrix, Matrix)) -> (Matrix, Matrix) {
    (a.transpose(), b.transpose())
}

fn generate(theorem: TheoremId, n: usize, n_max: usize, trial: usize, rng: &mut ChaCha8Rng) -> Instance {
    let choice = rng.gen_range(0..4u32);
    match theorem {
        TheoremId::Lem2_1 => match choice {
            0 => {
                let a = random_irreducible_positive(rng, n);
                let b = positive_polynomial(rng, &a, 3);
                pair(a, b)
            }
            1 => {
                let b = random_irreducible_positive(rng, n);
                let a = positive_polynomial(rng, &b, 3);
                pair(a, b)
            }
            2 => {
                let (p, a) = random_commutant_of_permutation(rng, n);
                pair(a, p)
            }
            _ => {
                let family = Family::ALL[trial % Family::ALL.len()];
                let (a, b) = random_semicommuting_pair(n, family, rng.gen()).expect("generator succeeds");
                pair(a, b)
            }
        },
        TheoremId::Thm3_2 => {
            let family = Family::ALL[trial % Family::ALL.len()];
            let (a, b) = random_semicommuting_pair(n, family, rng.gen()).expect("generator succeeds");
            pair(a, b)
        }
        TheoremId::Thm3_3 => match choice {
            0 => Instance::sizes(None, n),
            1 => {
                // nondecreasing, so some draws miss the strictness hypothesis
                let mut cur = 0;
                let d: Vec<Rational> = (0..n)
                    .map(|_| {
                        cur += rng.gen_range(0..=2);
                        Rational::from_int(cur + 1)
                    })
                    .collect();
                pair(jordan_block(n).expect("n >= 1"), Matrix::diagonal(&d))
            }
            _ => {
                let mut cur = Rational::zero();
                let d: Vec<Rational> = (0..n)
                    .map(|_| {
                        cur = &cur + &Rational::new(rng.gen_range(1..=5), rng.gen_range(1..=3));
                        cur.clone()
                    })
                    .collect();
                pair(jordan_block(n).expect("n >= 1"), Matrix::diagonal(&d))
            }
        },
        TheoremId::Lem4_2 => {
            let m = rng.gen_range(1..=n_max);
            match choice {
                0 | 1 => {
                    let (lo, hi) = if choice == 0 { (0, 3) } else { (-2, 2) };
                    let mut a = Matrix::zeros(m, n);
                    for u in intertwiner_basis(m, n).expect("positive sizes") {
                        a = &a + &u.scale(&int(rng, lo, hi));
                    }
                    Instance::single(a)
                }
                2 => {
                    let mut a = Matrix::zeros(m, n);
                    for u in intertwiner_basis(m, n).expect("positive sizes") {
                        a = &a + &u.scale(&int(rng, 0, 3));
                    }
                    let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..n));
                    let bumped = a.get(i, j) + &Rational::one();
                    a.set(i, j, bumped);
                    Instance::single(a)
                }
                _ => Instance::single(random_positive(rng, m, n, 50, 3)),
            }
        }
        TheoremId::Cor4_3 => Instance::sizes(Some(rng.gen_range(1..=n_max)), n),
        TheoremId::Thm4_5 => match choice {
            0 => {
                let (p, a) = random_commutant_of_permutation(rng, n);
                pair(a, p)
            }
            1 => {
                let (p, a) = random_commutant_of_permutation(rng, n);
                pair(p, a)
            }
            2 => {
                // any matrix, positive or not, in the commutant of a permutation
                let (p, a) = random_commutant_of_permutation(rng, n);
                let shift = Matrix::identity(n).scale(&int(rng, -3, 3));
                pair(&a - &shift, p)
            }
            _ => {
                let perm = random_permutation(rng, n);
                pair(random_positive(rng, n, n, 50, 3), permutation_matrix(&perm))
            }
        },
        TheoremId::Prop5_2 | TheoremId::Thm5_4 => {
            let k_min = if theorem == TheoremId::Prop5_2 { 1 } else { 0 };
            let k = rng.gen_range(k_min..=n);
            let a = random_companion(rng, n, k);
            let b = match choice {
                0 | 1 => positive_polynomial(rng, &a, 3),
                2 => companion_semicommutant(rng, &a, k).unwrap_or_else(|| positive_polynomial(rng, &a, 2)),
                _ => random_positive(rng, n, n, 40, 2),
            };
            pair(a, b)
        }
        TheoremId::Cor5_3 => {
            let j = jordan_block(n).expect("n >= 1");
            match choice {
                0 | 1 => {
                    let b = random_jordan_semicommuting(rng, n, choice == 0);
                    pair(j, b)
                }
                2 => pair(j.clone(), positive_polynomial(rng, &j, 3)),
                _ => pair(j, random_positive(rng, n, n, 40, 2)),
            }
        }
        TheoremId::Lem6_1 | TheoremId::Lem6_2 | TheoremId::Thm6_4 => {
            let p = match choice {
                0 | 1 => random_strict_idempotent_pair(rng, n),
                2 => transpose_pair(random_strict_idempotent_pair(rng, n)),
                _ => random_positive_idempotent_pair(rng, n),
            };
            pair(p.0, p.1)
        }
        TheoremId::Thm6_3 => {
            let strict = rng.gen_bool(0.6);
            let mut e = random_positive_idempotent(rng, n, strict);
            if rng.gen_bool(0.3) {
                e = e.transpose();
            }
            let a = match choice {
                0 => {
                    let id = Matrix::identity(n);
                    &id.scale(&int(rng, -2, 2)) + &e.scale(&int(rng, -2, 3))
                }
                1 | 2 => idempotent_semicommutant(rng, &e),
                _ => random_positive(rng, n, n, 40, 2),
            };
            pair(e, a)
        }
        TheoremId::Thm6_6 => {
            let p = random_positive_idempotent_pair(rng, n);
            pair(p.0, p.1)
        }
        TheoremId::LemGn | TheoremId::ThmNil | TheoremId::Gls => {
            let p = match choice {
                0 => random_positive_idempotent_pair(rng, n),
                1 => (random_upper_triangular_idempotent(rng, n), random_upper_triangular_idempotent(rng, n)),
                2 => (random_idempotent(rng, n), random_idempotent(rng, n)),
                _ => conjugated_catalan(rng, n),
            };
            let inst = pair(p.0, p.1);
            if theorem == TheoremId::LemGn && rng.gen_bool(0.5) {
                inst.with_level(rng.gen_range(0..=3))
            } else {
                inst
            }
        }
        TheoremId::CorTri => {
            let p = match choice {
                0 | 1 => random_positive_idempotent_pair(rng, n),
                2 => transpose_pair(random_positive_idempotent_pair(rng, n)),
                _ => (random_upper_triangular_idempotent(rng, n), random_upper_triangular_idempotent(rng, n)),
            };
            pair(p.0, p.1)
        }
    }
}

/// Positive `B` with vanishing lower-left `(n−k)×k` corner and upper
/// triangular leading block, kept only if it semi-commutes with `a`.
fn companion_semicommutant(rng: &mut ChaCha8Rng, a: &Matrix, k: usize) -> Option<Matrix> {
    let n = a.rows();
    for _ in 0..20 {
        let b = Matrix::from_fn(n, n, |i, j| {
            let allowed = if j < k { i <= j } else { true };
            if allowed && rng.gen_bool(0.4) {
                int(rng, 1, 2)
            } else {
                Rational::zero()
            }
        });
        if sign_class(&commutator(a, &b).expect("square")).is_semi() {
            return Some(b);
        }
    }
    None
}

/// `A = EYQ + QZQ + EWE` with `Q = I − E`, so `EA − AE = EYQ`; `Y` is
/// redrawn until `EYQ ≥ 0`.
fn idempotent_semicommutant(rng: &mut ChaCha8Rng, e: &Matrix) -> Matrix {
    let n = e.rows();
    let q = &Matrix::identity(n) - e;
    let z = random_positive(rng, n, n, 40, 2);
    let w = random_positive(rng, n, n, 40, 2);
    let mut a = &(&(&q * &z) * &q) + &(&(e * &w) * e);
    for _ in 0..20 {
        let y = random_positive(rng, n, n, 40, 2);
        let eyq = &(e * &y) * &q;
        if sign_class(&eyq).is_nonnegative() {
            a = &a + &eyq;
            break;
        }
    }
    a
}

/// Catalan pair under a random unit upper-triangular similarity.
fn conjugated_catalan(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let c = catalan_idempotent_pair(n).expect("n >= 1");
    let s = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Less => int(rng, -1, 1),
        std::cmp::Ordering::Greater => Rational::zero(),
    });
    let si = s.inverse().expect("square").expect("unit triangular");
    (&(&s * &c.e) * &si, &(&s * &c.f) * &si)
}
