//! Independent reference oracles: exhaustive enumeration at desk scale and
//! analytic formulas on constructed semisimple families.
//!
//! Nothing here calls into the completion or minimization engines; the
//! oracles are built directly on the matrix primitives so they can serve as
//! ground truth for the algorithms.  Enumeration sizes are gated by an
//! explicit cap; exceeding it is an error, never silent sampling.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Modulus, Scalar};
use crate::matrix::{vector_from_values, zero_vector, Matrix, SpanBuilder, Subspace, Vector};
use crate::pencil::Pencil;
use crate::smodule::SModule;

/// Upper bound on the number of enumerated states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap(pub u64);

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap(1 << 24)
    }
}

/// Block data `(d_i, s_i)` for a semisimple module: simple constituents of
/// dimension `d_i` occurring with multiplicity `s_i`.  For the families
/// built here the algebra multiplicity `m_i` equals `d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleSpec {
    blocks: Vec<(usize, usize)>,
}

impl SemisimpleSpec {
    pub fn new(blocks: Vec<(usize, usize)>) -> Self {
        for &(d, _) in &blocks {
            assert!(d >= 1, "simple dimension must be positive");
        }
        SemisimpleSpec { blocks }
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|&(d, s)| d * s).sum()
    }

    /// The exact minimum number of generators: `max_i ceil(s_i / d_i)`.
    pub fn min_generators(&self) -> usize {
        self.blocks.iter().filter(|&&(_, s)| s > 0).map(|&(d, s)| s.div_ceil(d)).max().unwrap_or(0)
    }
}

/// Maximum dimension of a submodule generated by `l` elements in the
/// family module of `spec`: the sum of `d_i * min(s_i, l * d_i)`.
pub fn max_dim_formula(spec: &SemisimpleSpec, l: usize) -> usize {
    assert!(l >= 1, "generator count must be positive");
    spec.blocks.iter().map(|&(d, s)| d * s.min(l * d)).sum()
}

/// Concrete realization of a semisimple spec: for each block, generators of
/// the full d x d matrix algebra (a cyclic shift and a corner unit) acting
/// identically on all `s` copies and as zero elsewhere.
pub fn build_semisimple_family(spec: &SemisimpleSpec, modulus: Modulus) -> SModule {
    let n = spec.dim();
    let mut actions = Vec::new();
    let mut offset = 0;
    for &(d, s) in &spec.blocks {
        if s > 0 {
            let mut shift = Matrix::zero(d, d, modulus);
            for i in 0..d {
                shift.set((i + 1) % d, i, modulus.one());
            }
            let corner = Matrix::unit(d, d, 0, 0, modulus);
            let generators: Vec<Matrix> = if d == 1 { vec![shift] } else { vec![shift, corner] };
            for gen in generators {
                let mut action = Matrix::zero(n, n, modulus);
                for copy in 0..s {
                    let base = offset + copy * d;
                    for r in 0..d {
                        for c in 0..d {
                            action.set(base + r, base + c, gen.at(r, c));
                        }
                    }
                }
                actions.push(action);
            }
        }
        offset += d * s;
    }
    SModule::new(n, actions, modulus)
}

fn states_within_cap(base: u64, exp: usize, cap: EnumerationCap) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..exp {
        total = total.saturating_mul(base as u128);
        if total > cap.0 as u128 {
            return Err(Error::CapExceeded { required: total, cap: cap.0 });
        }
    }
    Ok(())
}

/// Lexicographic odometer over all length-`len` digit strings base `p`.
struct Odometer {
    digits: Vec<u64>,
    base: u64,
    fresh: bool,
}

impl Odometer {
    fn new(base: u64, len: usize) -> Self {
        Odometer { digits: vec![0; len], base, fresh: true }
    }
}

impl Iterator for Odometer {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.fresh {
            self.fresh = false;
            return Some(self.digits.clone());
        }
        for i in (0..self.digits.len()).rev() {
            if self.digits[i] + 1 < self.base {
                self.digits[i] += 1;
                return Some(self.digits.clone());
            }
            self.digits[i] = 0;
        }
        None
    }
}

/// Exhaustive max-rank completion: the exact maximum over all variable
/// assignments and the lexicographically first assignment attaining it.
pub fn oracle_max_completion_rank(
    pencil: &Pencil,
    cap: EnumerationCap,
) -> Result<(usize, Vec<Scalar>)> {
    let p = pencil.modulus().get();
    states_within_cap(p, pencil.n_vars(), cap)?;
    let mut best_rank = 0;
    let mut best: Vec<Scalar> = zero_vector(pencil.modulus(), pencil.n_vars());
    for digits in Odometer::new(p, pencil.n_vars()) {
        let x = vector_from_values(pencil.modulus(), &digits);
        let rank = pencil.evaluate(&x).rank();
        if rank > best_rank {
            best_rank = rank;
            best = x;
        }
    }
    Ok((best_rank, best))
}

/// Independent worklist closure over the action matrices (seeds included),
/// deliberately separate from the library's own closure path.
fn spun_span(actions: &[Matrix], seeds: &[Vector], ambient: usize, modulus: Modulus) -> Subspace {
    let mut span = SpanBuilder::new(ambient, modulus);
    let mut queue: Vec<Vector> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for a in actions {
            let w = a.mul_vec(&current);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span.into_subspace()
}

/// Whether the vector is zero or has leading coefficient one; every cyclic
/// submodule is generated by exactly one such representative.
fn is_normalized(digits: &[u64]) -> bool {
    match digits.iter().find(|&&d| d != 0) {
        None => true,
        Some(&d) => d == 1,
    }
}

/// Exhaustive maximum cyclic-submodule dimension and the lexicographically
/// first generating vector attaining it.
pub fn oracle_max_cyclic_dim(m: &SModule, cap: EnumerationCap) -> Result<(usize, Vector)> {
    let p = m.modulus().get();
    let n = m.dim();
    states_within_cap(p, n, cap)?;
    let mut best_dim = 0;
    let mut best = zero_vector(m.modulus(), n);
    for digits in Odometer::new(p, n) {
        // scalar multiples generate the same submodule, so only scan
        // leading-one representatives; they are lex-minimal in their class
        if !is_normalized(&digits) {
            continue;
        }
        let v = vector_from_values(m.modulus(), &digits);
        let dim = spun_span(m.actions(), std::slice::from_ref(&v), n, m.modulus()).dim();
        if dim > best_dim {
            best_dim = dim;
            best = v;
        }
    }
    Ok((best_dim, best))
}

fn subspace_key(s: &Subspace) -> Vec<u64> {
    let mut key = vec![s.dim() as u64];
    key.extend(s.basis().vectorize().iter().map(|c| c.value()));
    key
}

/// Exhaustive minimum number of generators.
///
/// A set of vectors generates the sum of their cyclic submodules, so the
/// search enumerates all distinct cyclic submodules (one leading-one
/// representative per projective class, gated by the cap) and then runs a
/// breadth-first search over sums until the whole module is reached.
pub fn oracle_min_generators(m: &SModule, cap: EnumerationCap) -> Result<usize> {
    let n = m.dim();
    if n == 0 {
        return Ok(0);
    }
    let p = m.modulus().get();
    states_within_cap(p, n, cap)?;
    let modulus = m.modulus();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut cyclics: Vec<Subspace> = Vec::new();
    for digits in Odometer::new(p, n) {
        if digits.iter().all(|&d| d == 0) || !is_normalized(&digits) {
            continue;
        }
        let v = vector_from_values(modulus, &digits);
        let c = spun_span(m.actions(), std::slice::from_ref(&v), n, modulus);
        if c.dim() == n {
            return Ok(1);
        }
        if seen.insert(subspace_key(&c)) {
            cyclics.push(c);
        }
    }
    let mut level = cyclics.clone();
    for count in 2..=n {
        let mut next = Vec::new();
        for x in &level {
            for c in &cyclics {
                let s = x.sum(c);
                if s.dim() == x.dim() {
                    continue;
                }
                if s.dim() == n {
                    return Ok(count);
                }
                if seen.insert(subspace_key(&s)) {
                    next.push(s);
                }
            }
        }
        level = next;
    }
    Err(Error::Internal("generator search exhausted the dimension bound"))
}
