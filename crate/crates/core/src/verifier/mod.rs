//! Executable predicates with a three-valued outcome.
//!
//! Each predicate first evaluates its hypotheses exactly. An instance that
//! misses them is `not-applicable`; otherwise the conclusion is evaluated
//! and the outcome is `holds` or `violated`. A violated report always
//! carries a `violation` detail describing the failing quantity.

mod suite;

pub use suite::{run_suite, run_suite_with_jobs, suite_instances, SuiteReport, TheoremCounts};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{
    algebra_dim, check_idempotent_relations, commutator_nil_index, mccoy_triangularizable, verify_lemma_gn,
    RelationReport,
};
use crate::constructions::{
    companion_coefficients, cycle, gerstenhaber_witness, intertwiner_basis, jordan_block,
    verify_intertwiner_structure,
};
use crate::error::{Error, Result};
use crate::exact::{commutator, EchelonBasis, Matrix, Rational};
use crate::io::{matrix_field, matrix_to_value};
use crate::order::{
    invariant_ideal_chain, is_ideal_irreducible, is_positive, is_strictly_positive, refined_bound, sign_class,
    SignClass,
};

macro_rules! theorems {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId { $($variant),* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $(TheoremId::$variant => $name),* }
            }
        }
    };
}

theorems! {
    Lem2_1 => "LEM_2_1",
    Thm3_2 => "THM_3_2",
    Thm3_3 => "THM_3_3",
    Lem4_2 => "LEM_4_2",
    Cor4_3 => "COR_4_3",
    Thm4_5 => "THM_4_5",
    Prop5_2 => "PROP_5_2",
    Cor5_3 => "COR_5_3",
    Thm5_4 => "THM_5_4",
    Lem6_1 => "LEM_6_1",
    Lem6_2 => "LEM_6_2",
    Thm6_3 => "THM_6_3",
    Thm6_4 => "THM_6_4",
    Thm6_6 => "THM_6_6",
    LemGn => "LEM_GN",
    ThmNil => "THM_NIL",
    Gls => "GLS",
    CorTri => "COR_TRI",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        TheoremId::ALL.iter().copied().find(|t| t.as_str() == norm).ok_or_else(|| {
            let names: Vec<_> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
            Error::Usage(format!("unknown theorem {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    NotApplicable,
    Violated,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::NotApplicable => "not-applicable",
            Outcome::Violated => "violated",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Input to a predicate. Pairs use `A`/`B` (or `E`/`F`); some predicates
/// take sizes instead of matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub a: Option<Matrix>,
    pub b: Option<Matrix>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub level: Option<usize>,
}

impl Instance {
    pub fn pair(a: Matrix, b: Matrix) -> Self {
        Instance { a: Some(a), b: Some(b), ..Default::default() }
    }

    pub fn single(a: Matrix) -> Self {
        Instance { a: Some(a), ..Default::default() }
    }

    pub fn sizes(m: Option<usize>, n: usize) -> Self {
        Instance { m, n: Some(n), ..Default::default() }
    }

    pub fn with_level(mut self, level: usize) -> Self {
        self.level = Some(level);
        self
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("$: expected an instance object".into()))?;
        let size = |key: &str| -> Result<Option<usize>> {
            match obj.get(key) {
                None => Ok(None),
                Some(x) => x
                    .as_u64()
                    .map(|u| Some(u as usize))
                    .ok_or_else(|| Error::Parse(format!("$.{key}: expected a nonnegative integer"))),
            }
        };
        Ok(Instance {
            a: matrix_field(obj, "A", "E", "$")?,
            b: matrix_field(obj, "B", "F", "$")?,
            m: size("m")?,
            n: size("n")?,
            level: size("level")?,
        })
    }

    /// Canonical JSON: only present fields, keys sorted.
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        if let Some(a) = &self.a {
            obj.insert("A".into(), matrix_to_value(a));
        }
        if let Some(b) = &self.b {
            obj.insert("B".into(), matrix_to_value(b));
        }
        for (key, v) in [("level", self.level), ("m", self.m), ("n", self.n)] {
            if let Some(v) = v {
                obj.insert(key.into(), json!(v));
            }
        }
        Value::Object(obj)
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn digest(&self) -> String {
        let text = serde_json::to_string(&self.to_value()).expect("JSON values serialize");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    fn require_pair(&self, theorem: TheoremId) -> Result<(&Matrix, &Matrix)> {
        let (Some(a), Some(b)) = (&self.a, &self.b) else {
            return Err(Error::Parse(format!("{theorem} needs an instance with matrices \"A\" and \"B\"")));
        };
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::Shape(format!(
                "{theorem} needs square matrices of equal size, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok((a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub instance_digest: String,
    pub outcome: Outcome,
    pub details: BTreeMap<String, Value>,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

/// Collects diagnostics while a predicate runs.
struct Check {
    details: BTreeMap<String, Value>,
    violations: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { details: BTreeMap::new(), violations: Vec::new() }
    }

    fn note(&mut self, key: &str, v: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(v).expect("serializable detail"));
    }

    /// Records a conclusion; a false one becomes a violation message.
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(what());
        }
    }

    fn not_applicable(mut self, reason: &str) -> (Outcome, BTreeMap<String, Value>) {
        self.note("not_applicable", reason);
        (Outcome::NotApplicable, self.details)
    }

    fn finish(mut self) -> (Outcome, BTreeMap<String, Value>) {
        if self.violations.is_empty() {
            (Outcome::Holds, self.details)
        } else {
            let v = std::mem::take(&mut self.violations);
            self.note("violation", v.join("; "));
            (Outcome::Violated, self.details)
        }
    }
}

/// First nonzero entry, reported 1-based.
fn nonzero_witness(m: &Matrix) -> Option<Value> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())
        .map(|(i, j)| json!({ "row": i + 1, "col": j + 1, "value": m.get(i, j).to_string() }))
}

fn triangular_number(n: usize) -> usize {
    n * (n + 1) / 2
}

pub fn check(theorem: TheoremId, instance: &Instance) -> Result<TheoremReport> {
    let (outcome, details) = match theorem {
        TheoremId::Lem2_1 => lem_2_1(instance)?,
        TheoremId::Thm3_2 => thm_3_2(instance)?,
        TheoremId::Thm3_3 => thm_3_3(instance)?,
        TheoremId::Lem4_2 => lem_4_2(instance)?,
        TheoremId::Cor4_3 => cor_4_3(instance)?,
        TheoremId::Thm4_5 => thm_4_5(instance)?,
        TheoremId::Prop5_2 => prop_5_2(instance)?,
        TheoremId::Cor5_3 => cor_5_3(instance)?,
        TheoremId::Thm5_4 => thm_5_4(instance)?,
        TheoremId::Lem6_1 => lem_6_1(instance)?,
        TheoremId::Lem6_2 => lem_6_2(instance)?,
        TheoremId::Thm6_3 => thm_6_3(instance)?,
        TheoremId::Thm6_4 => thm_6_4(instance)?,
        TheoremId::Thm6_6 => thm_6_6(instance)?,
        TheoremId::LemGn => lem_gn(instance)?,
        TheoremId::ThmNil => thm_nil(instance)?,
        TheoremId::Gls => gls(instance)?,
        TheoremId::CorTri => cor_tri(instance)?,
    };
    Ok(TheoremReport { theorem_id: theorem, instance_digest: instance.digest(), outcome, details })
}

type Verdict = (Outcome, BTreeMap<String, Value>);

fn lem_2_1(inst: &Instance) -> Result<Verdict> {
    let (a, b) = inst.require_pair(TheoremId::Lem2_1)?;
    let mut c = Check::new();
    let k = commutator(a, b)?;
    let sign = sign_class(&k);
    c.note("commutator_sign", sign);
    let irr = |m: &Matrix| -> Result<bool> { Ok(is_positive(m) && is_ideal_irreducible(m)?) };
    let (a_irr, b_irr) = (irr(a)?, irr(b)?);
    c.note("a_positive_irreducible", a_irr);
    c.note("b_positive_irreducible", b_irr);
    if !sign.is_semi() {
        return Ok(c.not_applicable("commutator is not sign-definite"));
    }
    if !a_irr && !b_irr {
        return Ok(c.not_applicable("neither matrix is positive and ideal-irreducible"));
    }
    c.require(k.is_zero(), || format!("AB != BA at {}", nonzero_witness(&k).unwrap_or_default()));
    Ok(c.finish())
}

/// Positivity and semi-commutation shared by the pair predicates.
fn positive_semi_commuting(c: &mut Check, a: &Matrix, b: &Matrix) -> Result<Option<&'static str>> {
    let sign = sign_class(&commutator(a, b)?);
    c.note("commutator_sign", sign);
    if !is_positive(a) || !is_positive(b) {
        return Ok(Some("inputs are not both positive"));
    }
    if !sign.is_semi() {
        return Ok(Some("commutator is not sign-definite"));
    }
    Ok(None)
}

fn thm_3_2(inst: &Instance) -> Result<Verdict> {
    let (a, b) = inst.require_pair(TheoremId::Thm3_2)?;
    let mut c = Check::new();
    if let Some(reason) = positive_semi_commuting(&mut c, a, b)? {
        return Ok(c.not_applicable(reason));
    }
    let n = a.rows();
    let dim = algebra_dim(&[a.clone(), b.clone()])?;
    let bound = triangular_number(n);
    let refined = refined_bound(a, b)?;
    let chain = invariant_ideal_chain(&(a + b))?;
    c.note("dim", dim);
    c.note("bound", bound);
    c.note("refined_bound", refined);
    c.note("block_sizes", &chain.block_sizes);
    c.require(dim <= bound, || format!("dim {dim} exceeds n(n+1)/2 = {bound}"));
    c.require(dim <= refined, || format!("dim {dim} exceeds refined bound {refined}"));
    Ok(c.finish())
}

fn thm_3_3(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let (a, b) = match (&inst.a, &inst.b, inst.n) {
        (Some(_), Some(_), _) => {
            let (a, b) = inst.require_pair(TheoremId::Thm3_3)?;
            (a.clone(), b.clone())
        }
        (None, None, Some(n)) if n >= 1 => gerstenhaber_witness(n)?,
        _ => return Err(Error::Parse("THM_3_3 needs either \"n\" >= 1 or matrices \"A\" and \"B\"".into())),
    };
    let n = a.rows();
    c.note("n", n);
    if a != jordan_block(n)? {
        return Ok(c.not_applicable("A is not the Jordan block J_n"));
    }
    let increasing =
        b.is_diagonal() && b.get(0, 0).is_positive() && (1..n).all(|i| b.get(i, i) > b.get(i - 1, i - 1));
    if !increasing {
        return Ok(c.not_applicable("B is not diagonal with strictly increasing positive entries"));
    }
    let dim = algebra_dim(&[a.clone(), b.clone()])?;
    let target = triangular_number(n);
    c.note("dim", dim);
    c.note("target", target);
    c.note("commutator_sign", sign_class(&commutator(&a, &b)?));
    c.require(dim == target, || format!("dim {dim} differs from n(n+1)/2 = {target}"));
    c.require(sign_class(&commutator(&a, &b)?).is_nonnegative(), || "J_n B - B J_n is not positive".into());
    Ok(c.finish())
}

fn lem_4_2(inst: &Instance) -> Result<Verdict> {
    let a = inst.a.as_ref().ok_or_else(|| Error::Parse("LEM_4_2 needs a matrix \"A\"".into()))?;
    let (m, n) = (a.rows(), a.cols());
    let mut c = Check::new();
    c.note("m", m);
    c.note("n", n);
    let left = &cycle(m)? * a;
    let right = a * &cycle(n)?;
    let diff = &left - &right;
    c.note("difference_sign", sign_class(&diff));
    if !sign_class(&diff).is_nonnegative() {
        return Ok(c.not_applicable("C_m A >= A C_n fails"));
    }
    c.require(diff.is_zero(), || format!("C_m A != A C_n at {}", nonzero_witness(&diff).unwrap_or_default()));
    c.require(verify_intertwiner_structure(a, m, n)?, || "wrap-around Toeplitz structure fails".into());
    Ok(c.finish())
}

/// Null space dimension of `X ↦ C_m X − X C_n` on `m×n` matrices.
pub fn intertwiner_solution_space(m: usize, n: usize) -> Result<Vec<Vec<Rational>>> {
    let (cm, cn) = (cycle(m)?, cycle(n)?);
    let system = Matrix::from_fn(m * n, m * n, |row, col| {
        // row (i, j) of the system, column x_{k,l}
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        let mut v = Rational::zero();
        if l == j {
            v += cm.get(i, k);
        }
        if k == i {
            v -= cn.get(l, j);
        }
        v
    });
    Ok(system.null_space())
}

fn cor_4_3(inst: &Instance) -> Result<Verdict> {
    let (m, n) = match (inst.m, inst.n, &inst.a) {
        (Some(m), Some(n), _) => (m, n),
        (None, None, Some(a)) => (a.rows(), a.cols()),
        _ => return Err(Error::Parse("COR_4_3 needs sizes \"m\" and \"n\"".into())),
    };
    if m == 0 || n == 0 {
        return Err(Error::Parse("COR_4_3 needs m, n >= 1".into()));
    }
    let mut c = Check::new();
    let d = m.gcd(&n);
    let solutions = intertwiner_solution_space(m, n)?;
    let basis = intertwiner_basis(m, n)?;
    let mut span = EchelonBasis::new(m * n);
    for s in &solutions {
        span.insert(s);
    }
    let mut basis_span = EchelonBasis::new(m * n);
    for u in &basis {
        basis_span.insert(u.entries());
    }
    c.note("m", m);
    c.note("n", n);
    c.note("gcd", d);
    c.note("solution_dim", solutions.len());
    c.note("basis_rank", basis_span.rank());
    c.require(solutions.len() == d, || format!("solution space has dimension {}, gcd is {d}", solutions.len()));
    c.require(basis_span.rank() == d, || format!("intertwiner basis has rank {}", basis_span.rank()));
    c.require(basis.iter().all(|u| span.contains(u.entries())), || "a basis element is not an intertwiner".into());
    Ok(c.finish())
}

fn is_permutation_matrix(m: &Matrix) -> bool {
    m.is_square()
        && (0..m.rows()).all(|i| {
            let row = m.row(i);
            row.iter().filter(|x| x.is_one()).count() == 1 && row.iter().all(|x| x.is_zero() || x.is_one())
        })
        && (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| m.get(i, j).is_one()).count() == 1)
}

fn thm_4_5(inst: &Instance) -> Result<Verdict> {
    let (a, b) = inst.require_pair(TheoremId::Thm4_5)?;
    let mut c = Check::new();
    // the permutation is B unless only A qualifies
    let (other, p) = if is_permutation_matrix(b) {
        (a, b)
    } else if is_permutation_matrix(a) {
        (b, a)
    } else {
        return Ok(c.not_applicable("neither matrix is a permutation matrix"));
    };
    let k = commutator(other, p)?;
    let sign = sign_class(&k);
    c.note("commutator_sign", sign);
    if !sign.is_semi() {
        return Ok(c.not_applicable("the matrix and the permutation do not semi-commute"));
    }
    let n = a.rows();
    let dim = algebra_dim(&[a.clone(), b.clone()])?;
    c.note("dim", dim);
    c.note("bound", n);
    c.require(k.is_zero(), || format!("AP != PA at {}", nonzero_witness(&k).unwrap_or_default()));
    c.require(dim <= n, || format!("dim {dim} exceeds n = {n}"));
    Ok(c.finish())
}

/// Companion `A` (multiplicity `k` of zero) and positive semi-commuting `B`.
fn companion_setup(c: &mut Check, inst: &Instance, theorem: TheoremId) -> Result<Result<usize, &'static str>> {
    let (a, b) = inst.require_pair(theorem)?;
    let Some(spec) = companion_coefficients(a) else {
        return Ok(Err("A is not a companion matrix"));
    };
    let k = spec.zero_multiplicity();
    c.note("zero_multiplicity", k);
    if let Some(reason) = positive_semi_commuting(c, a, b)? {
        return Ok(Err(reason));
    }
    Ok(Ok(k))
}

fn prop_5_2(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let k = match companion_setup(&mut c, inst, TheoremId::Prop5_2)? {
        Ok(k) => k,
        Err(reason) => return Ok(c.not_applicable(reason)),
    };
    if k == 0 {
        return Ok(c.not_applicable("zero is not an eigenvalue of A"));
    }
    let b = inst.b.as_ref().expect("checked pair");
    let n = b.rows();
    let lead = b.block(0, k, 0, k);
    c.require(lead.is_upper_triangular(), || {
        format!("leading {k}x{k} block of B is not upper-triangular")
    });
    if k < n {
        let corner = b.block(k, n, 0, k);
        c.require(corner.is_zero(), || {
            let w = nonzero_witness(&corner).unwrap_or_default();
            format!("lower-left {}x{k} block of B is nonzero at {w}", n - k)
        });
    }
    Ok(c.finish())
}

fn cor_5_3(inst: &Instance) -> Result<Verdict> {
    let (a, b) = inst.require_pair(TheoremId::Cor5_3)?;
    let mut c = Check::new();
    if *a != jordan_block(a.rows())? {
        return Ok(c.not_applicable("A is not the Jordan block J_n"));
    }
    if let Some(reason) = positive_semi_commuting(&mut c, a, b)? {
        return Ok(c.not_applicable(reason));
    }
    c.require(b.is_upper_triangular(), || "B is not upper-triangular".into());
    Ok(c.finish())
}

fn thm_5_4(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let k = match companion_setup(&mut c, inst, TheoremId::Thm5_4)? {
        Ok(k) => k,
        Err(reason) => return Ok(c.not_applicable(reason)),
    };
    let (a, b) = inst.require_pair(TheoremId::Thm5_4)?;
    let n = a.rows();
    let dim = algebra_dim(&[a.clone(), b.clone()])?;
    let bound = (2 * n - k) * (k + 1) / 2;
    c.note("dim", dim);
    c.note("bound", bound);
    c.require(dim <= bound, || format!("dim {dim} exceeds (2n-k)(k+1)/2 = {bound}"));
    Ok(c.finish())
}

/// Strict positivity of `E`, `F`, `Eᵀ`, `Fᵀ` for a positive pair.
#[derive(Clone, Copy, Debug, Serialize)]
struct Strictness {
    e: bool,
    f: bool,
    e_t: bool,
    f_t: bool,
}

impl Strictness {
    fn of(e: &Matrix, f: &Matrix) -> Result<Self> {
        Ok(Strictness {
            e: is_strictly_positive(e)?,
            f: is_strictly_positive(f)?,
            e_t: is_strictly_positive(&e.transpose())?,
            f_t: is_strictly_positive(&f.transpose())?,
        })
    }
}

/// Positive idempotents oriented so that `EF ≥ FE`.
fn oriented_positive_idempotents(
    c: &mut Check,
    inst: &Instance,
    theorem: TheoremId,
) -> Result<Result<(Matrix, Matrix), &'static str>> {
    let (a, b) = inst.require_pair(theorem)?;
    if !a.is_idempotent() || !b.is_idempotent() {
        return Ok(Err("inputs are not both idempotent"));
    }
    if let Some(reason) = positive_semi_commuting(c, a, b)? {
        return Ok(Err(reason));
    }
    let swapped = sign_class(&commutator(a, b)?) == SignClass::Negative;
    c.note("swapped", swapped);
    Ok(Ok(if swapped { (b.clone(), a.clone()) } else { (a.clone(), b.clone()) }))
}

fn relation_detail(c: &mut Check, r: &RelationReport) {
    c.note("relations", r);
}

fn lem_6_1(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let (e, f) = match oriented_positive_idempotents(&mut c, inst, TheoremId::Lem6_1)? {
        Ok(p) => p,
        Err(reason) => return Ok(c.not_applicable(reason)),
    };
    let s = Strictness::of(&e, &f)?;
    c.note("strict", s);
    if !(s.e || s.f || s.e_t || s.f_t) {
        return Ok(c.not_applicable("none of E, F, E^T, F^T is strictly positive"));
    }
    let r = check_idempotent_relations(&e, &f)?;
    relation_detail(&mut c, &r);
    if s.e {
        c.require(r.efe_eq_fe && r.fe_idempotent, || "E strictly positive but EFE = FE, (FE)^2 = FE fails".into());
    }
    if s.f {
        c.require(r.fef_eq_ef && r.ef_idempotent, || "F strictly positive but FEF = EF, (EF)^2 = EF fails".into());
    }
    if s.f_t {
        c.require(r.fef_eq_fe && r.fe_idempotent, || "F^T strictly positive but FEF = FE, (FE)^2 = FE fails".into());
    }
    if s.e_t {
        c.require(r.efe_eq_ef && r.ef_idempotent, || "E^T strictly positive but EFE = EF, (EF)^2 = EF fails".into());
    }
    Ok(c.finish())
}

fn lem_6_2(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let (e, f) = match oriented_positive_idempotents(&mut c, inst, TheoremId::Lem6_2)? {
        Ok(p) => p,
        Err(reason) => return Ok(c.not_applicable(reason)),
    };
    let s = Strictness::of(&e, &f)?;
    c.note("strict", s);
    if !(s.e || s.f || s.e_t || s.f_t) {
        return Ok(c.not_applicable("none of E, F, E^T, F^T is strictly positive"));
    }
    let r = check_idempotent_relations(&e, &f)?;
    relation_detail(&mut c, &r);
    c.require(r.comm_square_zero, || "(EF - FE)^2 != 0".into());
    if (s.e && s.e_t) || (s.f && s.f_t) {
        c.require(r.commuting, || "two-sided strictness but EF != FE".into());
    }
    Ok(c.finish())
}

fn thm_6_3(inst: &Instance) -> Result<Verdict> {
    let (e, a) = inst.require_pair(TheoremId::Thm6_3)?;
    let mut c = Check::new();
    if !e.is_idempotent() || !is_positive(e) {
        return Ok(c.not_applicable("E is not a positive idempotent"));
    }
    let sign = sign_class(&commutator(e, a)?);
    c.note("commutator_sign", sign);
    if !sign.is_nonnegative() {
        return Ok(c.not_applicable("EA - AE is not positive"));
    }
    let strict = is_strictly_positive(e)?;
    let strict_t = is_strictly_positive(&e.transpose())?;
    c.note("e_strict", strict);
    c.note("e_transpose_strict", strict_t);
    if !strict && !strict_t {
        return Ok(c.not_applicable("neither E nor E^T is strictly positive"));
    }
    let r = check_idempotent_relations(e, a)?;
    relation_detail(&mut c, &r);
    if strict {
        c.require(r.efe_eq_fe, || "E strictly positive but AE != EAE".into());
    }
    if strict_t {
        c.require(r.efe_eq_ef, || "E^T strictly positive but EA != EAE".into());
    }
    c.require(r.comm_square_zero, || "(EA - AE)^2 != 0".into());
    if strict && strict_t {
        c.require(r.commuting, || "E and E^T strictly positive but EA != AE".into());
    }
    Ok(c.finish())
}

fn thm_6_4(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let (e, f) = match oriented_positive_idempotents(&mut c, inst, TheoremId::Thm6_4)? {
        Ok(p) => p,
        Err(reason) => return Ok(c.not_applicable(reason)),
    };
    let s = Strictness::of(&e, &f)?;
    c.note("strict", s);
    if !(s.e || s.f || s.e_t || s.f_t) {
        return Ok(c.not_applicable("none of E, F, E^T, F^T is strictly positive"));
    }
    let two_sided = (s.e && s.e_t) || (s.f && s.f_t);
    let bound = if two_sided { 4 } else { 6 };
    let dim = algebra_dim(&[e, f])?;
    c.note("dim", dim);
    c.note("bound", bound);
    c.require(dim <= bound, || format!("dim {dim} exceeds {bound}"));
    Ok(c.finish())
}

fn thm_6_6(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let (e, f) = match oriented_positive_idempotents(&mut c, inst, TheoremId::Thm6_6)? {
        Ok(p) => p,
        Err(reason) => return Ok(c.not_applicable(reason)),
    };
    let dim = algebra_dim(&[e.clone(), f.clone()])?;
    let k = commutator(&e, &f)?;
    let k2 = &k * &k;
    let k3 = &k2 * &k;
    c.note("dim", dim);
    c.note("bound", 9);
    c.note("nil_index", commutator_nil_index(&e, &f)?);
    c.require(dim <= 9, || format!("dim {dim} exceeds 9"));
    c.require(k3.is_zero(), || "[E,F]^3 != 0".into());
    c.require((&k2 * &e).is_zero(), || "[E,F]^2 E != 0".into());
    c.require((&k2 * &f).is_zero(), || "[E,F]^2 F != 0".into());
    c.require((&(&k2 * &e) * &f).is_zero(), || "[E,F]^2 EF != 0".into());
    Ok(c.finish())
}

/// Levels checked when the instance does not name one.
const DEFAULT_GN_LEVELS: usize = 3;

fn lem_gn(inst: &Instance) -> Result<Verdict> {
    let (e, f) = inst.require_pair(TheoremId::LemGn)?;
    let mut c = Check::new();
    if !e.is_idempotent() || !f.is_idempotent() {
        return Ok(c.not_applicable("inputs are not both idempotent"));
    }
    let levels: Vec<usize> = match inst.level {
        Some(l) => vec![l],
        None => (0..=DEFAULT_GN_LEVELS).collect(),
    };
    c.note("levels", &levels);
    for l in levels {
        let ok = verify_lemma_gn(e, f, l)?;
        c.require(ok, || format!("span identity fails at level {l}"));
    }
    Ok(c.finish())
}

fn idempotent_pair_of(c: &mut Check, inst: &Instance, theorem: TheoremId) -> Result<Option<(Matrix, Matrix)>> {
    let (e, f) = inst.require_pair(theorem)?;
    let ok = e.is_idempotent() && f.is_idempotent();
    c.note("idempotent", ok);
    Ok(ok.then(|| (e.clone(), f.clone())))
}

fn thm_nil(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let Some((e, f)) = idempotent_pair_of(&mut c, inst, TheoremId::ThmNil)? else {
        return Ok(c.not_applicable("inputs are not both idempotent"));
    };
    let Some(k) = commutator_nil_index(&e, &f)? else {
        return Ok(c.not_applicable("commutator is not nilpotent"));
    };
    let dim = algebra_dim(&[e, f])?;
    c.note("nil_index", k);
    c.note("dim", dim);
    c.note("bound", 4 * k);
    c.require(dim <= 4 * k, || format!("dim {dim} exceeds 4k = {}", 4 * k));
    Ok(c.finish())
}

fn gls_bound(n: usize) -> usize {
    if n % 2 == 0 {
        2 * n
    } else {
        2 * n - 1
    }
}

fn gls(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let Some((e, f)) = idempotent_pair_of(&mut c, inst, TheoremId::Gls)? else {
        return Ok(c.not_applicable("inputs are not both idempotent"));
    };
    let n = e.rows();
    let dim = algebra_dim(&[e, f])?;
    let bound = gls_bound(n);
    c.note("dim", dim);
    c.note("bound", bound);
    c.require(dim <= bound, || format!("dim {dim} exceeds {bound}"));
    Ok(c.finish())
}

fn cor_tri(inst: &Instance) -> Result<Verdict> {
    let mut c = Check::new();
    let Some((a, b)) = idempotent_pair_of(&mut c, inst, TheoremId::CorTri)? else {
        return Ok(c.not_applicable("inputs are not both idempotent"));
    };
    // orientation with EF ≥ FE ≥ 0
    let ordered = |e: &Matrix, f: &Matrix| -> Result<bool> {
        Ok(is_positive(&(f * e)) && sign_class(&commutator(e, f)?).is_nonnegative())
    };
    let (e, f) = if ordered(&a, &b)? {
        (a, b)
    } else if ordered(&b, &a)? {
        c.note("swapped", true);
        (b, a)
    } else {
        return Ok(c.not_applicable("neither EF >= FE >= 0 nor FE >= EF >= 0"));
    };
    let n = e.rows();
    let triangularizable = mccoy_triangularizable(&e, &f)?;
    let dim = algebra_dim(&[e, f])?;
    let bound = gls_bound(n);
    c.note("triangularizable", triangularizable);
    c.note("dim", dim);
    c.note("bound", bound);
    c.require(triangularizable, || "McCoy criterion fails".into());
    c.require(dim <= bound, || format!("dim {dim} exceeds {bound}"));
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalan_idempotent_pair, idempotent_pair_3x3, idempotent_pair_7x7};

    fn run(t: TheoremId, inst: &Instance) -> TheoremReport {
        check(t, inst).unwrap()
    }

    #[test]
    fn names_round_trip() {
        assert_eq!(TheoremId::ALL.len(), 18);
        for &t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!("thm-6-6".parse::<TheoremId>().unwrap(), TheoremId::Thm6_6);
        assert!(matches!("THM_9_9".parse::<TheoremId>(), Err(Error::Usage(_))));
    }

    #[test]
    fn gerstenhaber_tightness() {
        let r = run(TheoremId::Thm3_3, &Instance::sizes(None, 4));
        assert!(r.holds());
        assert_eq!(r.details["dim"], json!(10));
    }

    #[test]
    fn nine_dimensional_example() {
        let p = idempotent_pair_7x7();
        let r = run(TheoremId::Thm6_6, &Instance::pair(p.e, p.f));
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.details["dim"], json!(9));
        assert_eq!(r.details["nil_index"], json!(3));
    }

    #[test]
    fn toeplitz_hypothesis_scan() {
        let a = Matrix::from_ints(&[[1, 0, 2, 0, 1], [0, 3, 0, 1, 0], [2, 0, 0, 1, 1]]);
        assert_eq!(run(TheoremId::Lem4_2, &Instance::single(a)).outcome, Outcome::NotApplicable);
        let u = &intertwiner_basis(4, 6).unwrap()[1];
        assert!(run(TheoremId::Lem4_2, &Instance::single(u.clone())).holds());
    }

    #[test]
    fn gcd_dimension() {
        for (m, n) in [(1, 1), (4, 6), (5, 3), (6, 9)] {
            let r = run(TheoremId::Cor4_3, &Instance::sizes(Some(m), n));
            assert!(r.holds(), "{m}x{n}: {r:?}");
        }
    }

    #[test]
    fn not_applicable_is_distinct_from_violation() {
        let a = Matrix::from_ints(&[[0, 1], [0, 0]]);
        let b = Matrix::from_ints(&[[0, 0], [1, 0]]);
        let r = run(TheoremId::Thm3_2, &Instance::pair(a.clone(), b.clone()));
        assert_eq!(r.outcome, Outcome::NotApplicable);
        assert!(r.details.contains_key("not_applicable"));
        assert_eq!(run(TheoremId::Thm6_6, &Instance::pair(a, b)).outcome, Outcome::NotApplicable);
    }

    #[test]
    fn idempotent_family_predicates_hold() {
        let mut pairs = vec![idempotent_pair_7x7(), idempotent_pair_3x3()];
        pairs.extend((2..=6).map(|n| catalan_idempotent_pair(n).unwrap()));
        for p in pairs {
            let inst = Instance::pair(p.e.clone(), p.f.clone());
            for t in [TheoremId::LemGn, TheoremId::ThmNil, TheoremId::Gls, TheoremId::CorTri, TheoremId::Thm6_6] {
                let r = run(t, &inst);
                assert_ne!(r.outcome, Outcome::Violated, "{t} on {:?}: {r:?}", p.provenance);
            }
        }
    }

    #[test]
    fn lemma_2_1_on_cycle_powers() {
        let c = cycle(4).unwrap();
        let r = run(TheoremId::Lem2_1, &Instance::pair(c.clone(), &c * &c));
        assert!(r.holds());
    }

    #[test]
    fn permutation_commutant() {
        let p = cycle(3).unwrap();
        let a = Matrix::from_ints(&[[1, 2, 3], [3, 1, 2], [2, 3, 1]]);
        let r = run(TheoremId::Thm4_5, &Instance::pair(a, p));
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn structured_violation_report() {
        // a deliberately false conclusion is reported with a witness
        let mut c = Check::new();
        c.require(false, || "dim 7 exceeds 6".into());
        let (outcome, details) = c.finish();
        assert_eq!(outcome, Outcome::Violated);
        assert_eq!(details["violation"], json!("dim 7 exceeds 6"));
    }

    #[test]
    fn digest_is_canonical() {
        let p = idempotent_pair_3x3();
        let i1 = Instance::pair(p.e.clone(), p.f.clone());
        let v = json!({ "F": matrix_to_value(&p.f), "E": matrix_to_value(&p.e) });
        let i2 = Instance::from_value(&v).unwrap();
        assert_eq!(i1.digest(), i2.digest());
        assert_eq!(i1.digest().len(), 64);
    }

    #[test]
    fn malformed_instances_are_input_errors() {
        assert!(matches!(check(TheoremId::Thm3_2, &Instance::default()), Err(Error::Parse(_))));
        let bad = Instance::pair(Matrix::identity(2), Matrix::identity(3));
        assert!(matches!(check(TheoremId::Thm3_2, &bad), Err(Error::Shape(_))));
    }
}
