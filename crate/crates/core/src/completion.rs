//! The max-rank completion engine.
//!
//! The central object is an idempotent `e = g*h` obtained from the current
//! coset element `h` by a nonsingular elimination transform `g`.  Rank
//! maximality of `h` inside the span of the pencil coefficients is decided
//! by whether repeated application of the (transformed) coefficients can
//! carry a kernel vector of `e` outside the image of `e`.  If it cannot, a
//! witness subspace certifies the rank through an exact dimension identity;
//! if it can, the shortest such escape chain prescribes which rank-one
//! coefficients to add in order to strictly increase the rank.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{
    idempotentizer, matrix_span_coordinates, vector_is_zero, zero_vector, Matrix, SpanBuilder,
    Subspace, Vector,
};
use crate::pencil::{CosetElement, PadDescriptor, Pencil};

/// Certificate that a matrix has maximal rank within a span of matrices.
///
/// The witness subspace `W` of the domain satisfies the exact identity
/// `rank = dim U - (dim W - dim LW)`, matching the generic upper bound
/// `rank <= dim U - (dim W' - dim LW')` that holds for every subspace `W'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub witness: Subspace,
    pub rank: usize,
    pub dim_w: usize,
    pub dim_lw: usize,
}

impl WitnessReport {
    pub fn dim_u(&self) -> usize {
        self.witness.ambient()
    }

    pub fn identity_holds(&self) -> bool {
        self.dim_u() - self.dim_w + self.dim_lw == self.rank
    }
}

/// A shortest word of generators carrying a kernel vector of the idempotent
/// outside its image.
///
/// `vectors` holds `v_0, ..., v_s` with `v_0` in the kernel, every
/// intermediate vector inside the image, and `v_s` outside it; applying the
/// generator at `generator_indices[k]` to `v_k` yields `v_{k+1}`.  The
/// generator indices are pairwise distinct and `v_0, ..., v_{s-1}` are
/// linearly independent.  (The final vector may fall back into the span of
/// its predecessors; the augmentation argument only needs it outside the
/// idempotent's image.)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeChain {
    pub generator_indices: Vec<usize>,
    pub vectors: Vec<Vector>,
}

impl EscapeChain {
    /// The starting kernel vector `v_0`.
    pub fn start(&self) -> &Vector {
        &self.vectors[0]
    }

    /// The number of generator applications `s >= 1`.
    pub fn len(&self) -> usize {
        self.generator_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generator_indices.is_empty()
    }
}

/// Outcome of the max-rank certificate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxRankOutcome {
    Certified(WitnessReport),
    NotCertified(EscapeChain),
}

/// Result of the full completion driver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionOutcome {
    /// Values assigned to the pencil variables.
    pub assignment: Vec<Scalar>,
    /// The achieved (and certified maximal) rank.
    pub rank: usize,
    /// Witness in the padded square space; read it against the original
    /// rectangular domain through `pad`.
    pub witness: WitnessReport,
    pub pad: PadDescriptor,
    /// Number of rank augmentations the driver performed.
    pub augmentations: usize,
}

/// Smallest subspace `X` with `X >= gen*seed` and `X >= gen*X` for every
/// generator: the span of all products of length at least one applied to
/// the seed.  The seed itself is not included.
pub fn env_image_closure(generators: &[Matrix], seed: &Subspace) -> Subspace {
    let n = seed.ambient();
    for g in generators {
        assert!(g.is_square() && g.rows() == n, "generators must act on the seed's space");
    }
    let mut span = SpanBuilder::new(n, seed.modulus());
    let mut queue: Vec<Vector> = seed.basis_rows().map(<[Scalar]>::to_vec).collect();
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in generators {
            let w = g.mul_vec(&current);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span.into_subspace()
}

/// Breadth-first search for a shortest escape chain.
///
/// Layers the filtration generated by applying the given transformations to
/// the kernel of the idempotent; generators are tried in slice order and
/// frontier vectors in insertion order, so the result is reproducible.
/// Returns `None` exactly when no product of generators moves the kernel
/// outside the idempotent's image.
pub fn find_escape_chain(
    generators: &[(usize, Matrix)],
    idempotent: &Matrix,
) -> Option<EscapeChain> {
    let e = idempotent;
    debug_assert_eq!(e.mul(e), *e, "escape search requires an idempotent");
    let n = e.rows();
    let kernel = e.kernel_basis();
    if kernel.dim() == 0 {
        return None;
    }
    let image = e.image_basis();

    struct Node {
        vector: Vector,
        parent: Option<usize>,
        generator: Option<usize>,
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut span = SpanBuilder::new(n, e.modulus());
    for row in kernel.basis_rows() {
        span.insert(row);
        nodes.push(Node { vector: row.to_vec(), parent: None, generator: None });
    }
    let mut head = 0;
    while head < nodes.len() {
        let current = nodes[head].vector.clone();
        for (index, gmat) in generators {
            let w = gmat.mul_vec(&current);
            if vector_is_zero(&w) {
                continue;
            }
            if !image.contains(&w) {
                let mut indices = vec![*index];
                let mut vectors = vec![w];
                let mut cursor = head;
                loop {
                    vectors.push(nodes[cursor].vector.clone());
                    match nodes[cursor].parent {
                        Some(parent) => {
                            indices.push(nodes[cursor].generator.expect("non-root has generator"));
                            cursor = parent;
                        }
                        None => break,
                    }
                }
                indices.reverse();
                vectors.reverse();
                return Some(EscapeChain { generator_indices: indices, vectors });
            }
            if span.insert(&w) {
                nodes.push(Node { vector: w, parent: Some(head), generator: Some(*index) });
            }
        }
        head += 1;
    }
    None
}

fn map_subspace(mats: &[Matrix], w: &Subspace) -> Subspace {
    let codomain = mats.first().map_or(w.ambient(), Matrix::rows);
    let mut rows = Vec::new();
    for m in mats {
        for v in w.basis_rows() {
            rows.push(m.mul_vec(v));
        }
    }
    Subspace::from_vectors(codomain, w.modulus(), &rows)
}

/// The generic rank upper bound `dim U - (dim W - dim LW)` for a subspace
/// `W` of the domain, where `LW` is the span of all `l_i * W`.
pub fn fact_bound(l_basis: &[Matrix], w: &Subspace) -> usize {
    assert!(!l_basis.is_empty(), "the span needs at least one element");
    assert_eq!(w.ambient(), l_basis[0].cols(), "witness must live in the domain");
    let lw = map_subspace(l_basis, w);
    w.ambient() - w.dim() + lw.dim()
}

fn build_witness(l_span: &[Matrix], h: &Matrix, g: &Matrix, e: &Matrix) -> Result<WitnessReport> {
    let kernel = e.kernel_basis();
    let image = e.image_basis();
    let mut closure_gens: Vec<Matrix> = vec![e.clone()];
    closure_gens.extend(l_span.iter().map(|m| g.mul(m)));
    let reached = env_image_closure(&closure_gens, &kernel);
    if !image.contains_subspace(&reached) {
        return Err(Error::Internal("closure escapes the image on the certified branch"));
    }
    let witness = reached.sum(&kernel);
    let lw = map_subspace(l_span, &witness);
    let rank = h.rank();
    let dim_w = witness.dim();
    let dim_lw = lw.dim();
    if witness.ambient() - dim_w + dim_lw != rank {
        return Err(Error::Internal("witness dimension identity failed"));
    }
    Ok(WitnessReport { witness, rank, dim_w, dim_lw })
}

/// Decides whether `h` has maximal rank within the span of `l_basis`.
///
/// A `Certified` answer is sound for an arbitrary span; it comes with a
/// witness subspace meeting the dimension identity exactly.  A
/// `NotCertified` answer carries a shortest escape chain, which proves
/// non-maximality only when the span is generated by `h` together with
/// rank-one elements.  Non-square inputs are padded to square first.
pub fn check_max_rank(l_basis: &[Matrix], h: &Matrix) -> Result<MaxRankOutcome> {
    for m in l_basis {
        assert_eq!((m.rows(), m.cols()), (h.rows(), h.cols()), "span element shape mismatch");
    }
    matrix_span_coordinates(l_basis, h).map_err(|_| Error::NotInSpan)?;
    let k = h.rows().max(h.cols());
    let h_sq = h.padded(k, k);
    let l_sq: Vec<Matrix> = l_basis.iter().map(|m| m.padded(k, k)).collect();
    let g = idempotentizer(&h_sq);
    let e = g.mul(&h_sq);
    let chain_gens: Vec<(usize, Matrix)> =
        l_sq.iter().enumerate().map(|(i, m)| (i, g.mul(m))).collect();
    match find_escape_chain(&chain_gens, &e) {
        Some(chain) => Ok(MaxRankOutcome::NotCertified(chain)),
        None => Ok(MaxRankOutcome::Certified(build_witness(&l_sq, &h_sq, &g, &e)?)),
    }
}

/// Adds the chained rank-one coefficients to the coset element, verifying
/// that the rank strictly increases.
///
/// The chain must be valid for the idempotent `g * element`, and every
/// chained coefficient must have rank one; violations surface as errors
/// rather than silent wrong answers.
pub fn augment_rank(
    element: &CosetElement,
    pencil: &Pencil,
    chain: &EscapeChain,
    g: &Matrix,
) -> Result<CosetElement> {
    if chain.is_empty() {
        return Err(Error::PreconditionFailed("escape chain is empty"));
    }
    for (i, &a) in chain.generator_indices.iter().enumerate() {
        if chain.generator_indices[..i].contains(&a) {
            return Err(Error::PreconditionFailed("escape chain repeats a generator"));
        }
    }
    let e = g.mul(element.matrix());
    let image = e.image_basis();
    if !e.kernel_basis().contains(chain.start()) {
        return Err(Error::PreconditionFailed("escape chain does not start in the kernel"));
    }
    let steps = chain.generator_indices.len();
    let mut previous = chain.vectors[0].clone();
    for (k, (&index, expected)) in
        chain.generator_indices.iter().zip(&chain.vectors[1..]).enumerate()
    {
        if pencil.coefficient(index).rank() != 1 {
            return Err(Error::PreconditionFailed("chained generator is not rank one"));
        }
        let step = g.mul(pencil.coefficient(index)).mul_vec(&previous);
        if &step != expected {
            return Err(Error::PreconditionFailed("escape chain vectors are inconsistent"));
        }
        let inside = image.contains(&step);
        if (k + 1 == steps) == inside {
            return Err(Error::PreconditionFailed("escape chain has the wrong image profile"));
        }
        previous = step;
    }
    let before = element.matrix().rank();
    let mut next = element.clone();
    for &index in &chain.generator_indices {
        next.add_coefficient(pencil, index);
    }
    if next.matrix().rank() <= before {
        return Err(Error::RankDidNotIncrease);
    }
    Ok(next)
}

/// Single-step generic rank increment: finds a field element `alpha` with
/// `rank(h + alpha * bump) > rank(h)`, assuming `bump` carries part of the
/// kernel of `h` outside its image.
///
/// Scans `alpha` over the first `min(p, rank + 2)` field elements; since at
/// most `rank + 1` values can fail, this succeeds unless the whole field is
/// smaller than `rank + 2`.
pub fn generic_increment(h: &Matrix, bump: &Matrix) -> Result<(Scalar, Matrix)> {
    assert_eq!((h.rows(), h.cols()), (bump.rows(), bump.cols()), "shape mismatch");
    let image = h.image_basis();
    let kernel = h.kernel_basis();
    let escapes = kernel.basis_rows().any(|v| !image.contains(&bump.mul_vec(v)));
    if !escapes {
        return Err(Error::PreconditionFailed("increment maps the kernel into the image"));
    }
    let p = h.modulus().get();
    let rank = h.rank();
    let trials = h.modulus().enumerate(p.min(rank as u64 + 2)).expect("count fits in the field");
    for alpha in trials {
        let candidate = h.add(&bump.scale(alpha));
        if candidate.rank() > rank {
            return Ok((alpha, candidate));
        }
    }
    Err(Error::FieldTooSmall { field: p, required: rank as u64 + 2 })
}

/// The full completion driver: starting from the constant term, repeatedly
/// augments along shortest escape chains until the rank is certified
/// maximal over the whole span of the coefficients (and therefore over the
/// affine coset the variables can reach).
pub fn complete_max_rank(pencil: &Pencil) -> Result<CompletionOutcome> {
    let report = pencil.validate_rank_one();
    if !report.is_ok() {
        return Err(Error::RankOneViolation(report.violations));
    }
    let (padded, pad) = pencil.pad_to_square();
    let modulus = padded.modulus();
    let max_rank = pad.original_rows.min(pad.original_cols);
    let rank_one: Vec<usize> =
        (1..=padded.n_vars()).filter(|&i| padded.coefficient(i).rank() == 1).collect();
    let mut element = padded.coset_element(&zero_vector(modulus, padded.n_vars()));
    let mut augmentations = 0;
    loop {
        let g = idempotentizer(element.matrix());
        let e = g.mul(element.matrix());
        let chain_gens: Vec<(usize, Matrix)> =
            rank_one.iter().map(|&i| (i, g.mul(padded.coefficient(i)))).collect();
        match find_escape_chain(&chain_gens, &e) {
            None => {
                let witness = build_witness(padded.coefficients(), element.matrix(), &g, &e)?;
                debug_assert_eq!(element.matrix(), &padded.evaluate(element.assignment()));
                return Ok(CompletionOutcome {
                    assignment: element.assignment().to_vec(),
                    rank: witness.rank,
                    witness,
                    pad,
                    augmentations,
                });
            }
            Some(chain) => {
                element = augment_rank(&element, &padded, &chain, &g)?;
                augmentations += 1;
                if augmentations > max_rank {
                    return Err(Error::Internal("augmentation count exceeded the rank bound"));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Modulus;
    use crate::matrix::vector_from_values;

    fn gf(p: u64) -> Modulus {
        Modulus::new(p).unwrap()
    }

    fn unit2(p: u64, r: usize, c: usize) -> Matrix {
        Matrix::unit(2, 2, r, c, gf(p))
    }

    #[test]
    fn closure_examples() {
        let p = gf(2);
        let seed = Subspace::from_vectors(2, p, &[vector_from_values(p, &[1, 0])]);
        assert!(env_image_closure(&[Matrix::zero(2, 2, p)], &seed).is_zero());
        assert_eq!(env_image_closure(&[Matrix::identity(2, p)], &seed), seed);
        // E21 maps e1 to e2 and e2 to 0
        let e21 = unit2(2, 1, 0);
        let reached = env_image_closure(&[e21], &seed);
        assert_eq!(reached, Subspace::from_vectors(2, p, &[vector_from_values(p, &[0, 1])]));
    }

    #[test]
    fn escape_chain_examples() {
        let p = gf(2);
        assert!(find_escape_chain(&[(1, unit2(2, 0, 0))], &Matrix::identity(2, p)).is_none());

        let chain = find_escape_chain(&[(1, unit2(2, 0, 0))], &Matrix::zero(2, 2, p)).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.start(), &vector_from_values(p, &[1, 0]));

        let p5 = gf(5);
        let mut e = Matrix::zero(3, 3, p5);
        e.set(0, 0, p5.one());
        e.set(1, 1, p5.one());
        let t = Matrix::unit(3, 3, 2, 2, p5);
        let chain = find_escape_chain(&[(1, t)], &e).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.start(), &vector_from_values(p5, &[0, 0, 1]));
    }

    #[test]
    fn check_max_rank_certifies_e11_in_its_own_span() {
        let p = gf(2);
        let h = unit2(2, 0, 0);
        match check_max_rank(std::slice::from_ref(&h), &h).unwrap() {
            MaxRankOutcome::Certified(w) => {
                assert_eq!(w.rank, 1);
                assert_eq!((w.dim_u(), w.dim_w, w.dim_lw), (2, 1, 0));
                assert!(w.identity_holds());
                assert!(w.witness.contains(&vector_from_values(p, &[0, 1])));
            }
            MaxRankOutcome::NotCertified(_) => panic!("expected a certificate"),
        }
    }

    #[test]
    fn check_max_rank_rejects_non_maximal_diagonal() {
        let p = gf(2);
        let l = [unit2(2, 0, 0), unit2(2, 1, 1)];
        match check_max_rank(&l, &l[0]).unwrap() {
            MaxRankOutcome::NotCertified(chain) => {
                assert_eq!(chain.len(), 1);
                assert_eq!(chain.generator_indices, vec![1]);
                assert_eq!(chain.start(), &vector_from_values(p, &[0, 1]));
                assert_eq!(chain.vectors[1], vector_from_values(p, &[0, 1]));
            }
            MaxRankOutcome::Certified(_) => panic!("rank 1 is not maximal here"),
        }
    }

    #[test]
    fn check_max_rank_certifies_degenerate_row_span() {
        // every element of span{E11, E12} has a zero second row, so rank 1
        // is maximal; an enumeration of the four span elements agrees.
        let l = [unit2(2, 0, 0), unit2(2, 0, 1)];
        let mut best = 0;
        for a in 0..2u64 {
            for b in 0..2u64 {
                let m = l[0].scale(gf(2).scalar(a)).add(&l[1].scale(gf(2).scalar(b)));
                best = best.max(m.rank());
            }
        }
        assert_eq!(best, 1);
        match check_max_rank(&l, &l[0]).unwrap() {
            MaxRankOutcome::Certified(w) => {
                assert_eq!(w.rank, 1);
                assert!(w.identity_holds());
            }
            MaxRankOutcome::NotCertified(_) => panic!("expected a certificate"),
        }
    }

    #[test]
    fn check_max_rank_requires_span_membership() {
        let p = gf(2);
        let outside = Matrix::identity(2, p);
        assert_eq!(check_max_rank(&[unit2(2, 0, 0)], &outside), Err(Error::NotInSpan));
    }

    #[test]
    fn augment_rank_examples() {
        let p = gf(2);
        // B0 = 0, one generator E11: rank goes 0 -> 1
        let pencil = Pencil::new(vec![Matrix::zero(2, 2, p), unit2(2, 0, 0)]);
        let element = pencil.coset_element(&vector_from_values(p, &[0]));
        let g = idempotentizer(element.matrix());
        let e = g.mul(element.matrix());
        let chain = find_escape_chain(&[(1, g.mul(pencil.coefficient(1)))], &e).unwrap();
        let next = augment_rank(&element, &pencil, &chain, &g).unwrap();
        assert_eq!(next.matrix().rank(), 1);
        assert_eq!(next.assignment(), &vector_from_values(p, &[1])[..]);

        // B0 = E11, generator E22: rank goes 1 -> 2
        let pencil = Pencil::new(vec![unit2(2, 0, 0), unit2(2, 1, 1)]);
        let element = pencil.coset_element(&vector_from_values(p, &[0]));
        let g = idempotentizer(element.matrix());
        let e = g.mul(element.matrix());
        let chain = find_escape_chain(&[(1, g.mul(pencil.coefficient(1)))], &e).unwrap();
        let next = augment_rank(&element, &pencil, &chain, &g).unwrap();
        assert_eq!(next.matrix().rank(), 2);
    }

    #[test]
    fn generic_increment_examples() {
        let p3 = gf(3);
        let h = Matrix::unit(2, 2, 0, 0, p3);
        let bump = Matrix::unit(2, 2, 1, 1, p3);
        let (alpha, improved) = generic_increment(&h, &bump).unwrap();
        assert_eq!(alpha.value(), 1);
        assert_eq!(improved.rank(), 2);

        let zero = Matrix::zero(2, 2, p3);
        let (alpha, improved) = generic_increment(&zero, &bump).unwrap();
        assert_eq!(alpha.value(), 1);
        assert!(improved.rank() >= 1);

        // precondition violated: bump maps kernel inside the image
        let err = generic_increment(&h, &Matrix::unit(2, 2, 0, 1, p3));
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));

        // over GF(5) the failing-alpha set for E11 + a*E22 is exactly {0}
        let p5 = gf(5);
        let h = Matrix::unit(2, 2, 0, 0, p5);
        let bump = Matrix::unit(2, 2, 1, 1, p5);
        let failing: Vec<u64> = (0..5)
            .filter(|&a| h.add(&bump.scale(p5.scalar(a))).rank() <= h.rank())
            .collect();
        assert_eq!(failing, vec![0]);
        assert!(failing.len() <= h.rank() + 1);
    }

    #[test]
    fn fact_bound_examples() {
        let p = gf(2);
        let l = [Matrix::identity(2, p)];
        assert_eq!(fact_bound(&l, &Subspace::zero(2, p)), 2);
        assert_eq!(fact_bound(&l, &Subspace::full(2, p)), 2);
        let l = [unit2(2, 0, 0), unit2(2, 0, 1)];
        assert_eq!(fact_bound(&l, &Subspace::full(2, p)), 1);
    }

    #[test]
    fn driver_identity_needs_no_augmentation() {
        let p = gf(7);
        let pencil = Pencil::new(vec![Matrix::identity(3, p)]);
        let out = complete_max_rank(&pencil).unwrap();
        assert_eq!(out.rank, 3);
        assert_eq!(out.augmentations, 0);
        assert!(out.assignment.is_empty());
        assert!(out.witness.identity_holds());
    }

    #[test]
    fn driver_reaches_full_rank_on_diagonal_units() {
        let p = gf(2);
        let pencil =
            Pencil::new(vec![Matrix::zero(2, 2, p), unit2(2, 0, 0), unit2(2, 1, 1)]);
        let out = complete_max_rank(&pencil).unwrap();
        assert_eq!(out.rank, 2);
        assert_eq!(out.assignment, vector_from_values(p, &[1, 1]));
        assert_eq!(pencil.evaluate(&out.assignment).rank(), 2);
    }

    #[test]
    fn driver_certifies_rank_one_ceiling() {
        let p = gf(2);
        let pencil =
            Pencil::new(vec![Matrix::zero(2, 2, p), unit2(2, 0, 0), unit2(2, 0, 1)]);
        let out = complete_max_rank(&pencil).unwrap();
        assert_eq!(out.rank, 1);
        assert_eq!(out.witness.dim_w, 2);
        assert_eq!(out.witness.dim_lw, 1);
        assert!(out.witness.witness.is_full());
        // brute force over all four assignments agrees
        let mut best = 0;
        for a in 0..2u64 {
            for b in 0..2u64 {
                best = best.max(pencil.evaluate(&vector_from_values(p, &[a, b])).rank());
            }
        }
        assert_eq!(best, 1);
    }

    #[test]
    fn driver_rejects_rank_two_coefficients() {
        let p = gf(3);
        let pencil = Pencil::new(vec![Matrix::zero(2, 2, p), Matrix::identity(2, p)]);
        assert_eq!(complete_max_rank(&pencil), Err(Error::RankOneViolation(vec![1])));
    }

    #[test]
    fn driver_handles_rectangular_and_zero_coefficients() {
        let p = gf(3);
        // 2x3 pencil with one zero coefficient; padded internally
        let pencil = Pencil::new(vec![
            Matrix::zero(2, 3, p),
            Matrix::unit(2, 3, 0, 0, p),
            Matrix::zero(2, 3, p),
            Matrix::unit(2, 3, 1, 2, p),
        ]);
        let out = complete_max_rank(&pencil).unwrap();
        assert_eq!(out.rank, 2);
        assert_eq!(out.pad.padded_dim, 3);
        assert_eq!(pencil.evaluate(&out.assignment).rank(), 2);
        assert_eq!(out.assignment[1], p.zero());
    }

    #[test]
    fn driver_matches_brute_force_on_small_gf2_pencils() {
        // all rank-one 2x2 pencils over GF(2) with two variable coefficients
        // drawn from the matrix units, and every B0
        let p = gf(2);
        let units = [unit2(2, 0, 0), unit2(2, 0, 1), unit2(2, 1, 0), unit2(2, 1, 1)];
        for b0_bits in 0..16u64 {
            let b0 = Matrix::from_values(
                2,
                2,
                &[b0_bits & 1, (b0_bits >> 1) & 1, (b0_bits >> 2) & 1, (b0_bits >> 3) & 1],
                p,
            );
            for b1 in &units {
                for b2 in &units {
                    let pencil = Pencil::new(vec![b0.clone(), b1.clone(), b2.clone()]);
                    let out = complete_max_rank(&pencil).unwrap();
                    let mut best = 0;
                    for a in 0..2u64 {
                        for b in 0..2u64 {
                            let m = pencil.evaluate(&vector_from_values(p, &[a, b]));
                            best = best.max(m.rank());
                        }
                    }
                    assert_eq!(out.rank, best);
                    assert_eq!(pencil.evaluate(&out.assignment).rank(), best);
                    assert!(out.witness.identity_holds());
                }
            }
        }
    }
}
