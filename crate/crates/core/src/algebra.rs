//! Span closure for unital matrix algebras, word filtrations, and the
//! relation checks used for idempotent pairs.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{commutator, EchelonBasis, Matrix, Rational};
use crate::rng::stream;

/// A word over generator indices; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self, n: usize, generators: &[Matrix]) -> Matrix {
        self.0.iter().fold(Matrix::identity(n), |acc, &g| &acc * &generators[g])
    }
}

/// Generators print as `A, B, C, …`; the empty word prints as `I`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for &g in &self.0 {
            if g < 26 {
                write!(f, "{}", (b'A' + g as u8) as char)?;
            } else {
                write!(f, "g{g}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Shortest-word basis of a unital matrix algebra.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub n: usize,
    pub dim: usize,
    pub basis_words: Vec<Word>,
    pub basis_matrices: Vec<Matrix>,
    span: EchelonBasis,
}

impl AlgebraBasis {
    /// The RREF of the vectorized span (`dim × n²`).
    pub fn rref_span(&self) -> Matrix {
        self.span.to_matrix().expect("a unital algebra contains the identity")
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.span.contains(m.entries())
    }
}

fn common_size(generators: &[Matrix]) -> Result<Option<usize>> {
    let Some(first) = generators.first() else {
        return Ok(None);
    };
    for (i, g) in generators.iter().enumerate() {
        if !g.is_square() || g.rows() != first.rows() {
            return Err(Error::shape(format!(
                "generator {i} is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                first.rows(),
                first.rows()
            )));
        }
    }
    Ok(Some(first.rows()))
}

/// Basis of the unital algebra generated by `generators`. An empty list
/// yields the algebra spanned by the 1×1 identity.
pub fn unital_algebra_basis(generators: &[Matrix]) -> Result<AlgebraBasis> {
    let n = common_size(generators)?.unwrap_or(1);
    unital_algebra_basis_sized(n, generators)
}

/// Breadth-first right-multiplication closure starting from `I`. A product
/// is admitted when it raises the rank of the span; words come out ordered
/// by length, then lexicographically by generator index.
pub fn unital_algebra_basis_sized(n: usize, generators: &[Matrix]) -> Result<AlgebraBasis> {
    if let Some(m) = common_size(generators)? {
        if m != n {
            return Err(Error::shape(format!("generators are {m}x{m}, expected {n}x{n}")));
        }
    }
    let mut span = EchelonBasis::new(n * n);
    let identity = Matrix::identity(n);
    span.insert(identity.entries());
    let mut words = vec![Word::default()];
    let mut mats = vec![identity];
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let end = mats.len();
        for idx in frontier {
            for (g, gen) in generators.iter().enumerate() {
                let product = &mats[idx] * gen;
                if span.insert(product.entries()) {
                    let mut w = words[idx].0.clone();
                    w.push(g);
                    words.push(Word(w));
                    mats.push(product);
                }
            }
        }
        frontier = end..mats.len();
    }
    Ok(AlgebraBasis { n, dim: mats.len(), basis_words: words, basis_matrices: mats, span })
}

pub fn algebra_dim(generators: &[Matrix]) -> Result<usize> {
    Ok(unital_algebra_basis(generators)?.dim)
}

fn require_pair(e: &Matrix, f: &Matrix) -> Result<usize> {
    common_size(&[e.clone(), f.clone()]).map(|n| n.expect("two generators"))
}

/// Independent spanning matrices of `span(S)·gens` given independent `S`.
fn next_layer(layer: &[Matrix], gens: &[&Matrix], width: usize) -> Vec<Matrix> {
    let mut basis = EchelonBasis::new(width);
    let mut out = Vec::new();
    for m in layer {
        for g in gens {
            let p = m * *g;
            if basis.insert(p.entries()) {
                out.push(p);
            }
        }
    }
    out
}

/// `dim 𝒱_0, …, dim 𝒱_max_len` where `𝒱_m` is spanned by `I` and all
/// words in `e`, `f` of length at most `m`.
pub fn word_span_dims(e: &Matrix, f: &Matrix, max_len: usize) -> Result<Vec<usize>> {
    let n = require_pair(e, f)?;
    let mut total = EchelonBasis::new(n * n);
    let mut layer = vec![Matrix::identity(n)];
    total.insert(layer[0].entries());
    let mut dims = vec![1];
    for _ in 0..max_len {
        layer = next_layer(&layer, &[e, f], n * n);
        for m in &layer {
            total.insert(m.entries());
        }
        dims.push(total.rank());
    }
    Ok(dims)
}

fn span_of<'a>(mats: impl IntoIterator<Item = &'a Matrix>, width: usize) -> EchelonBasis {
    let mut b = EchelonBasis::new(width);
    for m in mats {
        b.insert(m.entries());
    }
    b
}

/// Checks `𝒢_n = span(𝒱_{2n+1} ∪ {[E,F]ⁿ·EF})` with
/// `𝒢_n = span ⋃_{j≤n} [E,F]^j·{I, E, F, EF}`.
pub fn verify_lemma_gn(e: &Matrix, f: &Matrix, level: usize) -> Result<bool> {
    let n = require_pair(e, f)?;
    if !e.is_idempotent() || !f.is_idempotent() {
        return Err(Error::domain("span identity requires idempotent E and F"));
    }
    let width = n * n;
    let k = commutator(e, f)?;
    let ef = e * f;
    let c0 = [Matrix::identity(n), e.clone(), f.clone(), ef.clone()];

    let mut left = Vec::new();
    let mut kpow = Matrix::identity(n);
    for j in 0..=level {
        if j > 0 {
            kpow = &kpow * &k;
        }
        left.extend(c0.iter().map(|c| &kpow * c));
    }
    let left = span_of(&left, width);

    let mut right = span_of(std::iter::once(&Matrix::identity(n)), width);
    let mut layer = vec![Matrix::identity(n)];
    for _ in 0..2 * level + 1 {
        layer = next_layer(&layer, &[e, f], width);
        for m in &layer {
            right.insert(m.entries());
        }
    }
    right.insert((&kpow * &ef).entries());

    Ok(left.to_matrix() == right.to_matrix())
}

/// Seeded random linear combinations tested on top of the per-word check.
pub const MCCOY_RANDOM_COMBINATIONS: usize = 200;

/// Whether the two-sided ideal of the generated algebra spanned by
/// `w·k·v` (words `w`, `v`) is nilpotent.
fn ideal_is_nilpotent(basis: &AlgebraBasis, k: &Matrix) -> bool {
    let width = basis.n * basis.n;
    let mut ideal = EchelonBasis::new(width);
    let mut ideal_mats = Vec::new();
    for w in &basis.basis_matrices {
        let wk = w * k;
        for v in &basis.basis_matrices {
            let p = &wk * v;
            if ideal.insert(p.entries()) {
                ideal_mats.push(p);
            }
        }
    }
    // I ⊇ I² ⊇ I³ ⊇ …; nilpotent iff the chain reaches zero
    let mut power = ideal_mats.clone();
    let mut rank = ideal.rank();
    while rank > 0 {
        let refs: Vec<&Matrix> = ideal_mats.iter().collect();
        power = next_layer(&power, &refs, width);
        if power.len() == rank {
            return false;
        }
        rank = power.len();
    }
    true
}

/// McCoy criterion: `w·(ab − ba)` nilpotent for every `w` in the algebra.
///
/// Checks every basis word, then seeded random combinations of basis
/// elements, and finally that the two-sided ideal generated by the
/// commutator is nilpotent, which is the exact form of the criterion.
pub fn mccoy_triangularizable(a: &Matrix, b: &Matrix) -> Result<bool> {
    let k = commutator(a, b)?;
    if k.is_zero() {
        return Ok(true);
    }
    let basis = unital_algebra_basis(&[a.clone(), b.clone()])?;
    for w in &basis.basis_matrices {
        if !(w * &k).is_nilpotent()? {
            return Ok(false);
        }
    }
    let mut rng = stream(0x6d63_636f_79, &[basis.n as u64, basis.dim as u64]);
    for _ in 0..MCCOY_RANDOM_COMBINATIONS {
        let mut combo = Matrix::zeros(basis.n, basis.n);
        for w in &basis.basis_matrices {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                combo = &combo + &w.scale(&Rational::from_int(c));
            }
        }
        if !(&combo * &k).is_nilpotent()? {
            return Ok(false);
        }
    }
    Ok(ideal_is_nilpotent(&basis, &k))
}

/// Least `k ≤ n` with `(ab − ba)^k = 0`.
pub fn commutator_nil_index(a: &Matrix, b: &Matrix) -> Result<Option<usize>> {
    let k = commutator(a, b)?;
    let mut p = k.clone();
    for idx in 1..=k.rows() {
        if p.is_zero() {
            return Ok(Some(idx));
        }
        p = &p * &k;
    }
    Ok(None)
}

/// Exact relation checks between an idempotent `e` and a matrix `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub efe_eq_fe: bool,
    pub efe_eq_ef: bool,
    pub fef_eq_ef: bool,
    pub fef_eq_fe: bool,
    pub fe_idempotent: bool,
    pub ef_idempotent: bool,
    pub comm_square_zero: bool,
    pub commuting: bool,
}

pub fn check_idempotent_relations(e: &Matrix, f: &Matrix) -> Result<RelationReport> {
    let k = commutator(e, f)?;
    if !e.is_idempotent() {
        return Err(Error::domain("relation checks require an idempotent E"));
    }
    let ef = e * f;
    let fe = f * e;
    let efe = &ef * e;
    let fef = &fe * f;
    Ok(RelationReport {
        efe_eq_fe: efe == fe,
        efe_eq_ef: efe == ef,
        fef_eq_ef: fef == ef,
        fef_eq_fe: fef == fe,
        fe_idempotent: fe.is_idempotent(),
        ef_idempotent: ef.is_idempotent(),
        comm_square_zero: (&k * &k).is_zero(),
        commuting: k.is_zero(),
    })
}
