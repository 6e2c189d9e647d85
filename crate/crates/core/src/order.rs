//! Order structure of real matrices under the entrywise ordering.
//!
//! Invariant ideals of ℝⁿ are coordinate subspaces, so everything here is
//! decided on the support digraph of a positive matrix: edge `i → j`
//! whenever `m[i][j] > 0`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{commutator, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SignClass {
    Positive,
    Negative,
    Zero,
    Mixed,
}

impl SignClass {
    /// True for `Positive`, `Negative` and `Zero`: the sign classes of a
    /// semi-commuting pair's commutator.
    pub fn is_semi(self) -> bool {
        self != SignClass::Mixed
    }

    /// Entrywise `≥ 0`.
    pub fn is_nonnegative(self) -> bool {
        matches!(self, SignClass::Positive | SignClass::Zero)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignClass::Positive => "Positive",
            SignClass::Negative => "Negative",
            SignClass::Zero => "Zero",
            SignClass::Mixed => "Mixed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [SignClass::Positive, SignClass::Negative, SignClass::Zero, SignClass::Mixed]
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn sign_class(m: &Matrix) -> SignClass {
    let (mut pos, mut neg) = (false, false);
    for x in m.entries() {
        match x.signum() {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    match (pos, neg) {
        (false, false) => SignClass::Zero,
        (true, false) => SignClass::Positive,
        (false, true) => SignClass::Negative,
        (true, true) => SignClass::Mixed,
    }
}

pub fn is_positive(m: &Matrix) -> bool {
    sign_class(m).is_nonnegative()
}

/// Sign class of `ab − ba`; `Zero` means the pair commutes.
pub fn commutator_sign(a: &Matrix, b: &Matrix) -> Result<SignClass> {
    Ok(sign_class(&commutator(a, b)?))
}

fn require_positive(m: &Matrix, what: &str) -> Result<()> {
    if is_positive(m) {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} requires a positive matrix")))
    }
}

fn require_square_positive(m: &Matrix, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::shape(format!("{what} requires a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    require_positive(m, what)
}

/// For a positive matrix: no zero column, which is the same as the kernel
/// containing no nonzero positive vector.
pub fn is_strictly_positive(m: &Matrix) -> Result<bool> {
    require_positive(m, "strict positivity")?;
    Ok((0..m.cols()).all(|j| (0..m.rows()).any(|i| !m.get(i, j).is_zero())))
}

fn support_adjacency(m: &Matrix) -> Vec<Vec<usize>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).filter(|&j| m.get(i, j).is_positive()).collect())
        .collect()
}

/// Tarjan's algorithm; returns the component id of every vertex.
fn strongly_connected_components(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next_index: usize,
        next_comp: usize,
    }

    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = Some(s.next_index);
        s.low[v] = s.next_index;
        s.next_index += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for k in 0..s.adj[v].len() {
            let w = s.adj[v][k];
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            loop {
                let w = s.stack.pop().expect("tarjan stack underflow");
                s.on_stack[w] = false;
                s.comp[w] = s.next_comp;
                if w == v {
                    break;
                }
            }
            s.next_comp += 1;
        }
    }

    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        next_index: 0,
        next_comp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    let count = s.next_comp;
    (s.comp, count)
}

/// Ideal-irreducibility via strong connectivity of the support digraph.
pub fn is_ideal_irreducible(m: &Matrix) -> Result<bool> {
    require_square_positive(m, "ideal-irreducibility")?;
    let (_, count) = strongly_connected_components(&support_adjacency(m));
    Ok(count == 1)
}

/// Ideal-irreducibility via `(I + m)^(n-1)` being entrywise strictly positive.
pub fn is_ideal_irreducible_by_power(m: &Matrix) -> Result<bool> {
    require_square_positive(m, "ideal-irreducibility")?;
    let n = m.rows();
    let p = (&Matrix::identity(n) + m).pow((n - 1) as u32)?;
    Ok(p.entries().iter().all(Rational::is_positive))
}

/// Frobenius normal form of a positive matrix: a maximal chain of
/// invariant coordinate ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealChain {
    /// `order[i]` is the original (0-based) index placed at position `i`,
    /// so `m.permute_similar(&order)` is block upper-triangular.
    pub order: Vec<usize>,
    pub block_sizes: Vec<usize>,
}

impl IdealChain {
    pub fn len(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_sizes.is_empty()
    }

    /// The permutation matrix `P` (columns `e_{order[0]}, e_{order[1]}, …`).
    pub fn permutation_matrix(&self) -> Matrix {
        let n = self.order.len();
        Matrix::from_fn(n, n, |i, j| if self.order[j] == i { Rational::one() } else { Rational::zero() })
    }

    /// Block index of each position in the permuted order.
    fn block_of_position(&self) -> Vec<usize> {
        self.block_sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect()
    }

    /// Whether `PᵀmP` has no entries below the diagonal blocks.
    pub fn is_block_upper_triangular(&self, m: &Matrix) -> bool {
        let pm = m.permute_similar(&self.order);
        let block = self.block_of_position();
        (0..pm.rows()).all(|i| (0..pm.cols()).all(|j| block[i] <= block[j] || pm.get(i, j).is_zero()))
    }

    /// Diagonal blocks of `PᵀmP`.
    pub fn diagonal_blocks(&self, m: &Matrix) -> Vec<Matrix> {
        let pm = m.permute_similar(&self.order);
        let mut start = 0;
        self.block_sizes
            .iter()
            .map(|&s| {
                let b = pm.block(start, start + s, start, start + s);
                start += s;
                b
            })
            .collect()
    }
}

/// Strongly connected components of the support digraph, topologically
/// ordered so edges run from earlier to later blocks. Ties go to the
/// component with the smallest original index.
pub fn invariant_ideal_chain(m: &Matrix) -> Result<IdealChain> {
    require_square_positive(m, "invariant ideal chain")?;
    let n = m.rows();
    let adj = support_adjacency(m);
    let (comp, count) = strongly_connected_components(&adj);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        members[comp[v]].push(v);
    }
    let mut indegree = vec![0usize; count];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        for &w in &adj[v] {
            let (a, b) = (comp[v], comp[w]);
            if a != b && !succ[a].contains(&b) {
                succ[a].push(b);
                indegree[b] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..count)
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((members[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut block_sizes = Vec::with_capacity(count);
    while let Some(Reverse((_, c))) = ready.pop() {
        order.extend_from_slice(&members[c]);
        block_sizes.push(members[c].len());
        for &d in &succ[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(Reverse((members[d][0], d)));
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    Ok(IdealChain { order, block_sizes })
}

pub fn is_ideal_triangularizable(m: &Matrix) -> Result<bool> {
    Ok(invariant_ideal_chain(m)?.block_sizes.iter().all(|&s| s == 1))
}

/// `n + Σ_{i<j} n_i n_j` over the block sizes of the chain of `a + b`.
pub fn refined_bound(a: &Matrix, b: &Matrix) -> Result<usize> {
    require_positive(a, "refined bound")?;
    require_positive(b, "refined bound")?;
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::shape("refined bound needs square matrices of equal size"));
    }
    let chain = invariant_ideal_chain(&(a + b))?;
    let sizes = &chain.block_sizes;
    let mut cross = 0;
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            cross += sizes[i] * sizes[j];
        }
    }
    Ok(a.rows() + cross)
}
