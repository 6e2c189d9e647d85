//! Seeded search for attainable algebra dimensions.
//!
//! Trial `t` draws from the stream keyed by `(seed, t)`, so a longer run
//! always extends a shorter one with the same seed. Results only record
//! what was found; a dimension that never shows up is "not found in T
//! trials", never "impossible".

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::algebra_dim;
use crate::constructions::random::{random_positive_idempotent_pair, random_upper_triangular_idempotent};
use crate::constructions::{catalan_idempotent_pair, random_semicommuting_pair, Family};
use crate::error::{Error, Result};
use crate::exact::{commutator, Matrix, Rational};
use crate::io::{matrix_from_value, matrix_to_value};
use crate::order::{is_positive, sign_class, SignClass};
use crate::rng::{stream, stream_seed};

/// Largest size at which witnesses are deduplicated by an exact canonical
/// form over all simultaneous permutations.
pub const CANONICAL_DEDUP_MAX_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub commutator_sign: SignClass,
    pub a_idempotent: bool,
    pub b_idempotent: bool,
}

impl Certificates {
    pub fn of(a: &Matrix, b: &Matrix) -> Result<Self> {
        Ok(Certificates {
            commutator_sign: sign_class(&commutator(a, b)?),
            a_idempotent: a.is_idempotent(),
            b_idempotent: b.is_idempotent(),
        })
    }
}

/// A stored pair certifying that `dim` is attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: usize,
    pub dim: usize,
    pub family: String,
    pub seed: u64,
    /// `None` for fixed candidates evaluated ahead of the random trials.
    pub trial: Option<usize>,
    pub a: Matrix,
    pub b: Matrix,
    pub certificates: Certificates,
}

impl Witness {
    fn new(family: &str, seed: u64, trial: Option<usize>, a: Matrix, b: Matrix, dim: usize) -> Result<Self> {
        let certificates = Certificates::of(&a, &b)?;
        Ok(Witness { n: a.rows(), dim, family: family.to_string(), seed, trial, a, b, certificates })
    }

    pub fn to_value(&self) -> Value {
        json!({
            "n": self.n,
            "dim": self.dim,
            "family": self.family,
            "seed": self.seed,
            "trial": self.trial,
            "A": matrix_to_value(&self.a),
            "B": matrix_to_value(&self.b),
            "certificates": self.certificates,
        })
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("$: expected a witness object".into()))?;
        let uint = |key: &str| {
            obj.get(key).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("$.{key}: expected an integer")))
        };
        let a = matrix_from_value(obj.get("A").ok_or_else(|| Error::Parse("$: missing \"A\"".into()))?, "$.A")?;
        let b = matrix_from_value(obj.get("B").ok_or_else(|| Error::Parse("$: missing \"B\"".into()))?, "$.B")?;
        let certs = obj.get("certificates").ok_or_else(|| Error::Parse("$: missing \"certificates\"".into()))?;
        let sign = certs
            .get("commutator_sign")
            .and_then(Value::as_str)
            .and_then(SignClass::parse)
            .ok_or_else(|| Error::Parse("$.certificates.commutator_sign: expected a sign class".into()))?;
        let flag = |key: &str| {
            certs
                .get(key)
                .and_then(Value::as_bool)
                .ok_or_else(|| Error::Parse(format!("$.certificates.{key}: expected a boolean")))
        };
        Ok(Witness {
            n: uint("n")? as usize,
            dim: uint("dim")? as usize,
            family: obj
                .get("family")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("$.family: expected a string".into()))?
                .to_string(),
            seed: uint("seed")?,
            trial: match obj.get("trial") {
                None | Some(Value::Null) => None,
                Some(t) => Some(t.as_u64().ok_or_else(|| Error::Parse("$.trial: expected an integer".into()))? as usize),
            },
            a,
            b,
            certificates: Certificates {
                commutator_sign: sign,
                a_idempotent: flag("a_idempotent")?,
                b_idempotent: flag("b_idempotent")?,
            },
        })
    }

    /// Recomputes the dimension and certificates from the stored pair and,
    /// for dimension-search witnesses, regenerates the pair from its seed path.
    pub fn replay(&self) -> Result<bool> {
        let dim = algebra_dim(&[self.a.clone(), self.b.clone()])?;
        let certs = Certificates::of(&self.a, &self.b)?;
        let mut ok = dim == self.dim && certs == self.certificates && self.a.rows() == self.n;
        if let (Ok(family), Some(trial)) = (self.family.parse::<Family>(), self.trial) {
            let regenerated = random_semicommuting_pair(self.n, family, stream_seed(self.seed, &[trial as u64]))?;
            ok &= regenerated == (self.a.clone(), self.b.clone());
        }
        Ok(ok)
    }

    pub fn file_name(&self) -> String {
        format!("witness-{}.json", self.dim)
    }
}

/// Writes one `witness-<dim>.json` per witness into `dir`.
pub fn write_witnesses(dir: &Path, witnesses: &[Witness]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    witnesses
        .iter()
        .map(|w| {
            let path = dir.join(w.file_name());
            let text = serde_json::to_string_pretty(&w.to_value()).expect("JSON values serialize");
            std::fs::write(&path, text + "\n")?;
            Ok(path)
        })
        .collect()
}

pub fn read_witness(path: &Path) -> Result<Witness> {
    let text = std::fs::read_to_string(path)?;
    Witness::from_value(&crate::io::parse_json(&text)?)
}

/// Lexicographically least `PᵀAP ‖ PᵀBP` over all permutations `P`.
pub fn canonical_form(a: &Matrix, b: &Matrix) -> Vec<Rational> {
    let n = a.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let key = |p: &[usize]| -> Vec<Rational> {
        let mut k = a.permute_similar(p).entries().to_vec();
        k.extend_from_slice(b.permute_similar(p).entries());
        k
    };
    let mut best = key(&perm);
    // Heap's algorithm, iterative
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let k = key(&perm);
            if k < best {
                best = k;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn class_key(a: &Matrix, b: &Matrix) -> u64 {
    let mut h = DefaultHasher::new();
    if a.rows() <= CANONICAL_DEDUP_MAX_N {
        canonical_form(a, b).hash(&mut h);
    } else {
        a.hash(&mut h);
        b.hash(&mut h);
    }
    h.finish()
}

#[derive(Clone, Debug)]
pub struct DimSearch {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub families: Vec<Family>,
    pub attained: BTreeSet<usize>,
    /// First witness per attained dimension, ordered by dimension.
    pub witnesses: Vec<Witness>,
    /// Sampled pairs that were positive and semi-commuting.
    pub candidates: usize,
    /// Distinct candidates up to simultaneous permutation similarity
    /// (hash of the raw pair above the canonical-form size limit).
    pub distinct_classes: usize,
    pub generation_failures: usize,
}

impl DimSearch {
    pub fn bound(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Dimensions in `[n, n(n+1)/2]` not found in this run.
    pub fn not_found(&self) -> Vec<usize> {
        (self.n..=self.bound()).filter(|d| !self.attained.contains(d)).collect()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "families": self.families.iter().map(|f| f.as_str()).collect::<Vec<_>>(),
            "attained": self.attained,
            "bound": self.bound(),
            "not_found_in_trials": self.not_found(),
            "candidates": self.candidates,
            "distinct_classes": self.distinct_classes,
            "generation_failures": self.generation_failures,
            "witnesses": self.witnesses.iter().map(Witness::to_value).collect::<Vec<_>>(),
        })
    }
}

pub fn search_dims(n: usize, families: &[Family], trials: usize, seed: u64) -> Result<DimSearch> {
    search_dims_with_jobs(n, families, trials, seed, 1)
}

enum Sample {
    Candidate { trial: usize, family: Family, a: Matrix, b: Matrix, dim: usize },
    Rejected,
    Failed,
}

pub fn search_dims_with_jobs(n: usize, families: &[Family], trials: usize, seed: u64, jobs: usize) -> Result<DimSearch> {
    if n == 0 {
        return Err(Error::Usage("search needs n >= 1".into()));
    }
    if trials == 0 {
        return Err(Error::Usage("search needs at least one trial".into()));
    }
    if families.is_empty() {
        return Err(Error::Usage("search needs at least one family".into()));
    }
    let sample = |t: usize| -> Result<Sample> {
        let family = families[t % families.len()];
        let (a, b) = match random_semicommuting_pair(n, family, stream_seed(seed, &[t as u64])) {
            Ok(p) => p,
            Err(Error::Generation(_)) => return Ok(Sample::Failed),
            Err(e) => return Err(e),
        };
        if !is_positive(&a) || !is_positive(&b) || !sign_class(&commutator(&a, &b)?).is_semi() {
            return Ok(Sample::Rejected);
        }
        let dim = algebra_dim(&[a.clone(), b.clone()])?;
        Ok(Sample::Candidate { trial: t, family, a, b, dim })
    };
    let samples: Vec<Result<Sample>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| (0..trials).into_par_iter().map(sample).collect())
    } else {
        (0..trials).map(sample).collect()
    };

    let mut first: BTreeMap<usize, Witness> = BTreeMap::new();
    let mut classes = HashSet::new();
    let (mut candidates, mut failures) = (0, 0);
    for s in samples {
        match s? {
            Sample::Candidate { trial, family, a, b, dim } => {
                candidates += 1;
                classes.insert(class_key(&a, &b));
                if !first.contains_key(&dim) {
                    first.insert(dim, Witness::new(family.as_str(), seed, Some(trial), a, b, dim)?);
                }
            }
            Sample::Rejected => {}
            Sample::Failed => failures += 1,
        }
    }
    Ok(DimSearch {
        n,
        trials,
        seed,
        families: families.to_vec(),
        attained: first.keys().copied().collect(),
        witnesses: first.into_values().collect(),
        candidates,
        distinct_classes: classes.len(),
        generation_failures: failures,
    })
}

#[derive(Clone, Debug)]
pub struct IdempotentSearch {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub max_dim_found: usize,
    pub attained: BTreeSet<usize>,
    pub witnesses: Vec<Witness>,
    /// Sampled pairs satisfying `EF ≥ FE ≥ 0` (after ordering).
    pub qualifying: usize,
}

impl IdempotentSearch {
    pub fn bound(&self) -> usize {
        2 * self.n
    }

    pub fn to_value(&self) -> Value {
        json!({
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "max_dim_found": self.max_dim_found,
            "bound": self.bound(),
            "bound_attained": self.max_dim_found == self.bound(),
            "attained": self.attained,
            "qualifying": self.qualifying,
            "witnesses": self.witnesses.iter().map(Witness::to_value).collect::<Vec<_>>(),
        })
    }
}

/// Orders an idempotent pair so that `EF ≥ FE ≥ 0`, if either order works.
fn order_idempotents(a: Matrix, b: Matrix) -> Option<(Matrix, Matrix)> {
    let ok = |e: &Matrix, f: &Matrix| is_positive(&(f * e)) && sign_class(&commutator(e, f).expect("square")).is_nonnegative();
    if ok(&a, &b) {
        Some((a, b))
    } else if ok(&b, &a) {
        Some((b, a))
    } else {
        None
    }
}

/// Idempotent pairs with `EF ≥ FE ≥ 0` at even `n`; reports the largest
/// algebra dimension found. Fixed candidates (the triangular Catalan pair
/// and, at `n = 2`, the pair `[[1,1],[0,0]]`, `[[1,0],[0,0]]`) are
/// evaluated before the random trials.
pub fn search_idempotent_even(n: usize, trials: usize, seed: u64) -> Result<IdempotentSearch> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Usage(format!("idempotent search needs an even n >= 2, got {n}")));
    }
    let mut candidates: Vec<(String, Option<usize>, Matrix, Matrix)> = Vec::new();
    let cat = catalan_idempotent_pair(n)?;
    candidates.push(("catalan".into(), None, cat.e, cat.f));
    if n == 2 {
        candidates.push((
            "fixed".into(),
            None,
            Matrix::from_ints(&[[1, 1], [0, 0]]),
            Matrix::from_ints(&[[1, 0], [0, 0]]),
        ));
    }
    for t in 0..trials {
        let mut rng = stream(seed, &[t as u64]);
        let (label, (a, b)) = if rng.gen_bool(0.7) {
            ("positive_pair", random_positive_idempotent_pair(&mut rng, n))
        } else {
            (
                "triangular",
                (random_upper_triangular_idempotent(&mut rng, n), random_upper_triangular_idempotent(&mut rng, n)),
            )
        };
        candidates.push((label.into(), Some(t), a, b));
    }

    let mut first: BTreeMap<usize, Witness> = BTreeMap::new();
    let mut qualifying = 0;
    for (label, trial, a, b) in candidates {
        let Some((e, f)) = order_idempotents(a, b) else { continue };
        qualifying += 1;
        let dim = algebra_dim(&[e.clone(), f.clone()])?;
        if !first.contains_key(&dim) {
            first.insert(dim, Witness::new(&label, seed, trial, e, f, dim)?);
        }
    }
    Ok(IdempotentSearch {
        n,
        trials,
        seed,
        max_dim_found: first.keys().copied().max().unwrap_or(0),
        attained: first.keys().copied().collect(),
        witnesses: first.into_values().collect(),
        qualifying,
    })
}
