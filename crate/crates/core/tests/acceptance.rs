//! Acceptance criteria 1–9. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use semicomm::algebra::{algebra_dim, commutator_nil_index};
use semicomm::constructions::random::{random_integer_matrix, random_upper_triangular_idempotent};
use semicomm::constructions::{
    catalan_idempotent_pair, cycle, diagonalize_idempotent, gerstenhaber_witness, idempotent_pair_3x3,
    idempotent_pair_7x7, intertwiner_basis, random_semicommuting_pair, Family,
};
use semicomm::exact::commutator;
use semicomm::order::{sign_class, SignClass};
use semicomm::rng::stream;
use semicomm::search::{read_witness, search_dims, write_witnesses};
use semicomm::verifier::{check, intertwiner_solution_space, run_suite, Instance, Outcome, TheoremId};
use semicomm::{Matrix, Rational};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rank_of(mats: &[Matrix]) -> usize {
    let mut e = common::IntEchelon::new();
    for m in mats {
        let v: Vec<BigInt> = common::integer_scaled(m);
        e.insert(&v);
    }
    e.rank()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a * b
}

fn gerstenhaber_tightness() -> Verdict {
    let start = Instant::now();
    let expected = [1, 3, 6, 10, 15, 21, 28, 36];
    let mut dims = Vec::new();
    for n in 1..=8 {
        let (a, b) = gerstenhaber_witness(n).map_err(|e| e.to_string())?;
        dims.push(algebra_dim(&[a, b]).map_err(|e| e.to_string())?);
    }
    let elapsed = start.elapsed();
    ensure(dims == expected, || format!("dims {dims:?}, expected {expected:?}"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("dims {dims:?} in {elapsed:.2?}"))
}

fn example_7x7() -> Verdict {
    let p = idempotent_pair_7x7();
    let (e, f) = (&p.e, &p.f);
    let k = commutator(e, f).map_err(|e| e.to_string())?;
    let sign = sign_class(&k);
    ensure(sign == SignClass::Positive, || format!("commutator sign {sign}"))?;
    let dim = algebra_dim(&[e.clone(), f.clone()]).map_err(|e| e.to_string())?;
    ensure(dim == 9, || format!("dim {dim}"))?;
    let nil = commutator_nil_index(e, f).map_err(|e| e.to_string())?;
    ensure(nil == Some(3), || format!("nil index {nil:?}"))?;
    let listed = [
        Matrix::identity(7),
        e.clone(),
        f.clone(),
        mul(e, f),
        k.clone(),
        mul(&k, e),
        mul(&k, f),
        mul(&mul(&k, e), f),
        mul(&k, &k),
    ];
    let r = rank_of(&listed);
    ensure(r == 9, || format!("listed spanning set has rank {r}"))?;
    Ok("sign Positive, dim 9, nil index 3, listed set rank 9".into())
}

fn example_3x3() -> Verdict {
    let p = idempotent_pair_3x3();
    let (e, f) = (&p.e, &p.f);
    let k = commutator(e, f).map_err(|e| e.to_string())?;
    let dim = algebra_dim(&[e.clone(), f.clone()]).map_err(|e| e.to_string())?;
    ensure(dim == 5, || format!("dim {dim}"))?;
    let listed = [Matrix::identity(3), e.clone(), k.clone(), mul(&k, e), mul(&k, &k)];
    let r = rank_of(&listed);
    ensure(r == 5, || format!("listed set has rank {r}"))?;
    Ok("dim 5, listed set rank 5".into())
}

fn catalan_family() -> Verdict {
    for n in 2..=10 {
        let p = catalan_idempotent_pair(n).map_err(|e| e.to_string())?;
        ensure(p.f.is_idempotent(), || format!("n={n}: F is not idempotent"))?;
        ensure(p.e.is_idempotent(), || format!("n={n}: E is not idempotent"))?;
        let k = commutator(&p.e, &p.f).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                let want = if j == i + 1 {
                    Rational::from_int(if i % 2 == 0 { 1 } else { -1 })
                } else {
                    Rational::zero()
                };
                ensure(*k.get(i, j) == want, || format!("n={n}: [E,F]({i},{j}) = {}", k.get(i, j)))?;
            }
        }
        let dim = algebra_dim(&[p.e.clone(), p.f.clone()]).map_err(|e| e.to_string())?;
        ensure(dim == 2 * n - 1, || format!("n={n}: dim {dim}"))?;
        if n % 2 == 0 {
            ensure(dim < 2 * n, || format!("n={n}: dim {dim} reaches 2n"))?;
            let report = check(TheoremId::Gls, &Instance::pair(p.e.clone(), p.f.clone())).map_err(|e| e.to_string())?;
            ensure(report.outcome != Outcome::Violated, || format!("n={n}: GLS violated"))?;
        }
    }
    Ok("n = 2..10: F idempotent, commutator pattern exact, dim 2n-1".into())
}

fn cycle_intertwiners() -> Verdict {
    for m in 1..=12 {
        for n in 1..=12 {
            let g = m.gcd(&n);
            let space = intertwiner_solution_space(m, n).map_err(|e| e.to_string())?;
            ensure(space.len() == g, || format!("({m},{n}): solution space dim {}", space.len()))?;
            let basis = intertwiner_basis(m, n).map_err(|e| e.to_string())?;
            ensure(basis.len() == g, || format!("({m},{n}): basis size {}", basis.len()))?;
            let (cm, cn) = (cycle(m).map_err(|e| e.to_string())?, cycle(n).map_err(|e| e.to_string())?);
            for u in &basis {
                ensure(mul(&cm, u) == mul(u, &cn), || format!("({m},{n}): basis element is not an intertwiner"))?;
            }
            // g independent solutions inside a g-dimensional space span it
            let r = rank_of(&basis);
            ensure(r == g, || format!("({m},{n}): basis rank {r}"))?;
        }
    }
    let basis = intertwiner_basis(4, 6).map_err(|e| e.to_string())?;
    for i in 0..4 {
        for j in 0..6 {
            let (a, b) = (basis[0].get(i, j), basis[1].get(i, j));
            let is_a = (i + j) % 2 == 0;
            let ok = if is_a { a.is_one() && b.is_zero() } else { a.is_zero() && b.is_one() };
            ensure(ok, || format!("(4,6) pattern broken at ({i},{j})"))?;
        }
    }
    Ok("1 <= m, n <= 12: dim = gcd, basis spans; (4,6) checkerboard".into())
}

fn property_suite() -> Verdict {
    let start = Instant::now();
    let report = run_suite(6, 200, 42);
    let elapsed = start.elapsed();
    let violated = report.total_violations();
    ensure(violated == 0, || {
        let first = report.violations().next().map(|r| format!("{} {:?}", r.theorem_id, r.details));
        format!("{violated} violations, first: {first:?}")
    })?;
    ensure(report.counts.len() == TheoremId::ALL.len(), || "missing predicates".into())?;
    let constructive = [
        TheoremId::Lem2_1,
        TheoremId::Thm3_2,
        TheoremId::Thm4_5,
        TheoremId::Prop5_2,
        TheoremId::Cor5_3,
        TheoremId::Thm5_4,
        TheoremId::Thm6_6,
        TheoremId::ThmNil,
        TheoremId::Gls,
        TheoremId::CorTri,
    ];
    for t in constructive {
        let holds = report.counts[&t].holds;
        ensure(holds >= 50, || format!("{t}: only {holds} holds"))?;
    }
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    let min = constructive.iter().map(|t| report.counts[t].holds).min().unwrap_or(0);
    Ok(format!(
        "{} predicates, 0 violated, min holds {min} over constructive set, {elapsed:.1?}",
        report.counts.len()
    ))
}

fn oracle_equivalence() -> Verdict {
    let mut dims = BTreeSet::new();
    for i in 0..100u64 {
        let n = 1 + (i % 4) as usize;
        let (a, b) = if i % 5 == 4 {
            let mut rng = stream(2024, &[i]);
            (random_integer_matrix(&mut rng, n, n, -2, 2), random_integer_matrix(&mut rng, n, n, -2, 2))
        } else {
            let family = Family::ALL[(i % 4) as usize];
            random_semicommuting_pair(n, family, i).map_err(|e| e.to_string())?
        };
        let fast = algebra_dim(&[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
        let brute = common::brute_force_dim(&[a, b], n * n);
        ensure(fast == brute, || format!("pair {i} (n={n}): closure {fast}, brute force {brute}"))?;
        dims.insert(fast);
    }
    Ok(format!("100 pairs agree; dims seen {dims:?}"))
}

fn dimension_search() -> Verdict {
    let r2 = search_dims(2, &Family::ALL, 1000, 7).map_err(|e| e.to_string())?;
    let interval2: BTreeSet<usize> = (2..=3).collect();
    ensure(interval2.is_subset(&r2.attained), || format!("n=2 attained {:?}", r2.attained))?;
    ensure(r2.attained.iter().all(|&d| (1..=3).contains(&d)), || format!("n=2 attained {:?}", r2.attained))?;
    let r3 = search_dims(3, &Family::ALL, 1000, 7).map_err(|e| e.to_string())?;
    ensure(r3.attained.contains(&3) && r3.attained.contains(&6), || format!("n=3 attained {:?}", r3.attained))?;
    ensure(r3.attained.iter().all(|&d| (1..=6).contains(&d)), || format!("n=3 attained {:?}", r3.attained))?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for r in [&r2, &r3] {
        let paths = write_witnesses(dir.path(), &r.witnesses).map_err(|e| e.to_string())?;
        for (path, w) in paths.iter().zip(&r.witnesses) {
            let loaded = read_witness(path).map_err(|e| e.to_string())?;
            ensure(&loaded == w, || format!("{} does not round-trip", path.display()))?;
            ensure(loaded.replay().map_err(|e| e.to_string())?, || format!("{} does not replay", path.display()))?;
        }
    }
    Ok(format!("n=2 attained {:?}, n=3 attained {:?}, witnesses replay", r2.attained, r3.attained))
}

fn triangular_diagonalization() -> Verdict {
    for i in 0..50u64 {
        let n = 1 + (i % 6) as usize;
        let mut rng = stream(612, &[i]);
        let e = random_upper_triangular_idempotent(&mut rng, n);
        let f = random_upper_triangular_idempotent(&mut rng, n);
        let (p, pe, pf) = diagonalize_idempotent(&e, &f).map_err(|e| e.to_string())?;
        let p_inv = p.inverse().map_err(|e| e.to_string())?.ok_or("P is singular")?;
        ensure(mul(&mul(&p, &e), &p_inv) == pe, || format!("pair {i}: returned PEP^-1 is wrong"))?;
        ensure(mul(&mul(&p, &f), &p_inv) == pf, || format!("pair {i}: returned PFP^-1 is wrong"))?;
        let diag01 = pe.is_diagonal() && (0..n).all(|k| pe.get(k, k).is_zero() || pe.get(k, k).is_one());
        ensure(diag01, || format!("pair {i}: PEP^-1 is not a 0/1 diagonal"))?;
        ensure(pf.is_upper_triangular(), || format!("pair {i}: PFP^-1 is not upper-triangular"))?;
        let before = algebra_dim(&[e, f]).map_err(|e| e.to_string())?;
        let after = algebra_dim(&[pe, pf]).map_err(|e| e.to_string())?;
        ensure(before == after, || format!("pair {i}: dim {before} became {after}"))?;
    }
    Ok("50 pairs, n <= 6: exact 0/1 diagonal E, triangular F, dim preserved".into())
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("Gerstenhaber tightness n = 1..8", gerstenhaber_tightness),
        ("7x7 idempotent example", example_7x7),
        ("3x3 idempotent example", example_3x3),
        ("Catalan family n = 2..10", catalan_family),
        ("cycle intertwiners m, n <= 12", cycle_intertwiners),
        ("property suite n_max 6, 200 trials, seed 42", property_suite),
        ("closure vs brute-force word oracle", oracle_equivalence),
        ("dimension search n = 2, 3", dimension_search),
        ("triangular idempotent diagonalization", triangular_diagonalization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
