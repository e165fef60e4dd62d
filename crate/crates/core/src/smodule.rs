//! Finite-dimensional modules given by action matrices.
//!
//! A module here is a vector space F^n together with one n x n action
//! matrix per element of a finite index set; actions act on column vectors.
//! Dualization is realized as transposition in the fixed coordinates.  The
//! reductions at the bottom of this file translate rank questions about a
//! space of linear maps into cyclic-submodule and homomorphism questions
//! about bipartite modules built from that space.

use crate::error::{Error, Result};
use crate::field::{Modulus, Scalar};
use crate::matrix::{matrix_span_coordinates, Matrix, SpanBuilder, Subspace, Vector};

/// A module structure on F^n: one square action matrix per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SModule {
    dim: usize,
    actions: Vec<Matrix>,
    modulus: Modulus,
}

impl SModule {
    pub fn new(dim: usize, actions: Vec<Matrix>, modulus: Modulus) -> Self {
        for a in &actions {
            assert_eq!((a.rows(), a.cols()), (dim, dim), "actions must be square of the module dim");
            assert_eq!(a.modulus(), modulus, "action modulus mismatch");
        }
        SModule { dim, actions, modulus }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    /// Smallest action-invariant subspace containing the given vectors.
    ///
    /// The identity is included implicitly: the seeds themselves belong to
    /// the closure.
    pub fn submodule_closure(&self, seeds: &[Vector]) -> Submodule {
        let mut span = SpanBuilder::new(self.dim, self.modulus);
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
            for a in &self.actions {
                let w = a.mul_vec(&current);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        Submodule { space: span.into_subspace() }
    }

    /// Whether a subspace is closed under every action.
    pub fn is_invariant(&self, space: &Subspace) -> bool {
        self.actions
            .iter()
            .all(|a| space.basis_rows().all(|v| space.contains(&a.mul_vec(v))))
    }

    /// Wraps an already-invariant subspace as a submodule.
    pub fn submodule(&self, space: Subspace) -> Result<Submodule> {
        if !self.is_invariant(&space) {
            return Err(Error::NotInvariant);
        }
        Ok(Submodule { space })
    }

    /// A linearly independent basis of the algebra generated by the actions
    /// together with the identity.
    ///
    /// Extension order is deterministic: the identity, then the actions,
    /// then existing basis elements multiplied by actions in ascending
    /// index order, until the span is multiplicatively closed.
    pub fn enveloping_algebra_basis(&self) -> AlgebraBasis {
        let n = self.dim;
        let mut span = SpanBuilder::new(n * n, self.modulus);
        let mut elements: Vec<Matrix> = Vec::new();
        let offer = |span: &mut SpanBuilder, elements: &mut Vec<Matrix>, m: Matrix| {
            if span.insert(&m.vectorize()) {
                elements.push(m);
            }
        };
        offer(&mut span, &mut elements, Matrix::identity(n, self.modulus));
        for a in &self.actions {
            offer(&mut span, &mut elements, a.clone());
        }
        let mut head = 0;
        while head < elements.len() {
            for a in &self.actions {
                let product = elements[head].mul(a);
                offer(&mut span, &mut elements, product);
            }
            head += 1;
        }
        AlgebraBasis { elements }
    }

    /// Basis of `{c : (sum c_k alg_k) u = 0}`: the kernel of the map
    /// sending algebra coefficients to their action on `u`.
    pub fn annihilator(&self, alg: &AlgebraBasis, u: &[Scalar]) -> Vec<Vector> {
        assert_eq!(u.len(), self.dim, "vector must live in the module space");
        let mut sys = Matrix::zero(self.dim, alg.len(), self.modulus);
        for (j, b) in alg.elements().iter().enumerate() {
            for (i, s) in b.mul_vec(u).into_iter().enumerate() {
                sys.set(i, j, s);
            }
        }
        sys.kernel_basis().basis_rows().map(<[Scalar]>::to_vec).collect()
    }

    /// The factor module by an invariant subspace, with coordinates on the
    /// non-pivot positions of the subspace's canonical basis.
    pub fn quotient(&self, w: &Submodule) -> Result<QuotientModule> {
        let space = w.space();
        assert_eq!(space.ambient(), self.dim, "submodule must live in the module space");
        if !self.is_invariant(space) {
            return Err(Error::NotInvariant);
        }
        let n = self.dim;
        let pivots = space.pivot_columns();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let q_dim = free.len();
        let mut project = Matrix::zero(q_dim, n, self.modulus);
        for (r, &f) in free.iter().enumerate() {
            project.set(r, f, self.modulus.one());
            for (i, row) in space.basis_rows().enumerate() {
                project.set(r, pivots[i], -row[f]);
            }
        }
        let mut lift = Matrix::zero(n, q_dim, self.modulus);
        for (r, &f) in free.iter().enumerate() {
            lift.set(f, r, self.modulus.one());
        }
        let mut quotient_actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let induced = project.mul(a).mul(&lift);
            if induced.mul(&project) != project.mul(a) {
                return Err(Error::Internal("quotient action does not commute with projection"));
            }
            quotient_actions.push(induced);
        }
        Ok(QuotientModule {
            module: SModule::new(q_dim, quotient_actions, self.modulus),
            project,
            lift,
        })
    }

    /// The dual module: every action replaced by its transpose.
    pub fn dualize(&self) -> SModule {
        SModule {
            dim: self.dim,
            actions: self.actions.iter().map(Matrix::transpose).collect(),
            modulus: self.modulus,
        }
    }
}

/// An action-invariant subspace.  Only constructed through closure or an
/// explicit invariance check, so the invariant holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    space: Subspace,
}

impl Submodule {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Sum of submodules (again a submodule).
    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule { space: self.space.sum(&other.space) }
    }

    /// Intersection of submodules (again a submodule).
    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule { space: self.space.intersect(&other.space) }
    }
}

/// Linearly independent spanning set of the enveloping algebra; contains
/// the identity and is closed under multiplication within its span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraBasis {
    elements: Vec<Matrix>,
}

impl AlgebraBasis {
    /// Extracts the first linearly independent subset of a spanning list.
    ///
    /// The caller is responsible for the list actually spanning an algebra
    /// that contains the identity; this is used to transport an algebra
    /// basis through a quotient, where the projected elements span the
    /// quotient algebra but need not stay independent.
    pub fn from_spanning(dim: usize, modulus: Modulus, spanning: &[Matrix]) -> AlgebraBasis {
        let mut span = SpanBuilder::new(dim * dim, modulus);
        let mut elements = Vec::new();
        for m in spanning {
            if span.insert(&m.vectorize()) {
                elements.push(m.clone());
            }
        }
        AlgebraBasis { elements }
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The algebra element with the given coefficients on this basis.
    pub fn combine(&self, coeffs: &[Scalar]) -> Matrix {
        assert_eq!(coeffs.len(), self.elements.len(), "coefficient count mismatch");
        let mut acc = self.elements[0].scale(coeffs[0]);
        for (c, b) in coeffs[1..].iter().zip(&self.elements[1..]) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(*c));
            }
        }
        acc
    }
}

/// A factor module together with the projection and a linear section.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: SModule,
    project: Matrix,
    lift: Matrix,
}

impl QuotientModule {
    pub fn project_vector(&self, v: &[Scalar]) -> Vector {
        self.project.mul_vec(v)
    }

    pub fn lift_vector(&self, v: &[Scalar]) -> Vector {
        self.lift.mul_vec(v)
    }

    pub fn project_subspace(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vector> = s.basis_rows().map(|v| self.project.mul_vec(v)).collect();
        Subspace::from_vectors(self.module.dim(), self.module.modulus(), &rows)
    }

    pub fn projection(&self) -> &Matrix {
        &self.project
    }

    pub fn section(&self) -> &Matrix {
        &self.lift
    }
}

/// Basis of the space of module homomorphisms from `u` to `v`: all maps
/// that intertwine the action pairs, computed from one homogeneous linear
/// system.
pub fn hom_basis(u: &SModule, v: &SModule) -> Result<Vec<Matrix>> {
    if u.action_count() != v.action_count() {
        return Err(Error::ActionCountMismatch { left: u.action_count(), right: v.action_count() });
    }
    assert_eq!(u.modulus(), v.modulus(), "field modulus mismatch");
    let du = u.dim();
    let dv = v.dim();
    let unknowns = dv * du;
    let modulus = u.modulus();
    let mut sys = Matrix::zero(u.action_count() * unknowns, unknowns, modulus);
    // phi[k][j] is unknown k*du + j; equations phi*a_u - a_v*phi = 0
    for (s, (au, av)) in u.actions().iter().zip(v.actions()).enumerate() {
        for i in 0..dv {
            for j in 0..du {
                let row = s * unknowns + i * du + j;
                for k in 0..du {
                    let cur = sys.at(row, i * du + k);
                    sys.set(row, i * du + k, cur + au.at(k, j));
                }
                for k in 0..dv {
                    let cur = sys.at(row, k * du + j);
                    sys.set(row, k * du + j, cur - av.at(i, k));
                }
            }
        }
    }
    let kernel = sys.kernel_basis();
    Ok(kernel
        .basis_rows()
        .map(|coords| Matrix::from_vectorized(dv, du, coords.to_vec(), modulus))
        .collect())
}

/// Whether `phi` intertwines the two modules' actions.
pub fn is_module_hom(u: &SModule, v: &SModule, phi: &Matrix) -> bool {
    u.action_count() == v.action_count()
        && u.actions()
            .iter()
            .zip(v.actions())
            .all(|(au, av)| phi.mul(au) == av.mul(phi))
}

/// The module on `W1 (+) W2` whose actions map `(w1, w2)` to `(0, r w1)`,
/// one action per given map `r: W1 -> W2`.
pub fn build_bipartite(w1_dim: usize, w2_dim: usize, maps: &[Matrix], modulus: Modulus) -> SModule {
    let n = w1_dim + w2_dim;
    let actions = maps
        .iter()
        .map(|r| {
            assert_eq!((r.rows(), r.cols()), (w2_dim, w1_dim), "map shape mismatch");
            let mut a = Matrix::zero(n, n, modulus);
            for i in 0..w2_dim {
                for j in 0..w1_dim {
                    a.set(w1_dim + i, j, r.at(i, j));
                }
            }
            a
        })
        .collect();
    SModule::new(n, actions, modulus)
}

/// The cyclic-generator module with basis `b_0, ..., b_l`: action `i` sends
/// `b_0` to `b_i` and every other basis vector to zero.
pub fn build_w0(l: usize, modulus: Modulus) -> SModule {
    assert!(l >= 1, "at least one action is required");
    let n = l + 1;
    let actions = (1..=l).map(|i| Matrix::unit(n, n, i, 0, modulus)).collect();
    SModule::new(n, actions, modulus)
}

/// Bipartite translation of rank maximization over a space of linear maps
/// into cyclic-submodule optimization.
///
/// The module lives on (coordinates of L) (+) (target space); one action
/// per basis vector `u_j` of the source sends `(h, v)` to `(0, h u_j)`.
/// For nonzero `h` the submodule generated by `(h, v)` has dimension
/// exactly `1 + rank(h)`.
#[derive(Debug, Clone)]
pub struct CyclicReduction {
    pub module: SModule,
    l_basis: Vec<Matrix>,
    u_basis: Vec<Vector>,
    target_rows: usize,
    target_cols: usize,
}

pub fn reduce_completion_to_cyclic(
    target_rows: usize,
    target_cols: usize,
    modulus: Modulus,
    l_basis: &[Matrix],
    u_basis: &[Vector],
) -> CyclicReduction {
    let l_dim = l_basis.len();
    for m in l_basis {
        assert_eq!((m.rows(), m.cols()), (target_rows, target_cols), "basis shape mismatch");
    }
    let vectorized = Matrix::from_rows(
        l_basis.iter().map(Matrix::vectorize).collect(),
        target_rows * target_cols,
        modulus,
    );
    assert_eq!(vectorized.rank(), l_dim, "the given spanning set must be a basis");
    let n = l_dim + target_rows;
    let actions = u_basis
        .iter()
        .map(|u| {
            assert_eq!(u.len(), target_cols, "source vector length mismatch");
            let mut a = Matrix::zero(n, n, modulus);
            for (i, b) in l_basis.iter().enumerate() {
                for (r, s) in b.mul_vec(u).into_iter().enumerate() {
                    a.set(l_dim + r, i, s);
                }
            }
            a
        })
        .collect();
    CyclicReduction {
        module: SModule::new(n, actions, modulus),
        l_basis: l_basis.to_vec(),
        u_basis: u_basis.to_vec(),
        target_rows,
        target_cols,
    }
}

impl CyclicReduction {
    pub fn l_dim(&self) -> usize {
        self.l_basis.len()
    }

    pub fn l_basis(&self) -> &[Matrix] {
        &self.l_basis
    }

    pub fn u_basis(&self) -> &[Vector] {
        &self.u_basis
    }

    pub fn target_shape(&self) -> (usize, usize) {
        (self.target_rows, self.target_cols)
    }

    /// Coordinates of a map `h` on the stored basis of L.
    pub fn coordinates_of(&self, h: &Matrix) -> Result<Vector> {
        matrix_span_coordinates(&self.l_basis, h).map_err(|_| Error::NotInSpan)
    }

    /// The module element representing the pair `(h, v)`.
    pub fn embed(&self, h: &Matrix, v: &[Scalar]) -> Result<Vector> {
        assert_eq!(v.len(), self.target_rows, "target vector length mismatch");
        let mut w = self.coordinates_of(h)?;
        w.extend_from_slice(v);
        Ok(w)
    }

    /// Reads a module element back as a pair `(h, v)`.
    pub fn decode(&self, w: &[Scalar]) -> (Matrix, Vector) {
        assert_eq!(w.len(), self.module.dim(), "element length mismatch");
        let modulus = self.module.modulus();
        let mut h = Matrix::zero(self.target_rows, self.target_cols, modulus);
        for (c, b) in w[..self.l_basis.len()].iter().zip(&self.l_basis) {
            if !c.is_zero() {
                h = h.add(&b.scale(*c));
            }
        }
        (h, w[self.l_basis.len()..].to_vec())
    }
}

/// Reduction of nonsingular/injective completion to the existence of an
/// injective homomorphism between two modules.
///
/// A homomorphism from `source` to `target` is determined by the image of
/// the cyclic generator; that image decodes to a pair `(h, v)`, and the
/// homomorphism is injective exactly when `h` is.
#[derive(Debug, Clone)]
pub struct HomReduction {
    pub source: SModule,
    pub target: SModule,
    pub reduction: CyclicReduction,
}

pub fn reduce_nonsingular_to_injective_hom(
    target_rows: usize,
    target_cols: usize,
    modulus: Modulus,
    l_basis: &[Matrix],
    u_basis: &[Vector],
) -> HomReduction {
    let reduction = reduce_completion_to_cyclic(target_rows, target_cols, modulus, l_basis, u_basis);
    let source = build_w0(u_basis.len(), modulus);
    HomReduction { source, target: reduction.module.clone(), reduction }
}

impl HomReduction {
    /// Reads the pair `(h, v)` off a homomorphism given as a matrix.
    pub fn decode_hom(&self, psi: &Matrix) -> (Matrix, Vector) {
        assert_eq!(
            (psi.rows(), psi.cols()),
            (self.target.dim(), self.source.dim()),
            "homomorphism shape mismatch"
        );
        let column: Vector = (0..psi.rows()).map(|r| psi.at(r, 0)).collect();
        self.reduction.decode(&column)
    }

    /// The homomorphism sending the cyclic generator to `(h, v)`.
    pub fn encode_hom(&self, h: &Matrix, v: &[Scalar]) -> Result<Matrix> {
        let modulus = self.target.modulus();
        let mut psi = Matrix::zero(self.target.dim(), self.source.dim(), modulus);
        for (r, s) in self.reduction.embed(h, v)?.into_iter().enumerate() {
            psi.set(r, 0, s);
        }
        let l_dim = self.reduction.l_dim();
        for (j, u) in self.reduction.u_basis().iter().enumerate() {
            for (r, s) in h.mul_vec(u).into_iter().enumerate() {
                psi.set(l_dim + r, j + 1, s);
            }
        }
        Ok(psi)
    }
}

/// The dualized variant: a surjective homomorphism `source -> target`
/// exists exactly when an injective one exists on the undualized side,
/// i.e. exactly when the underlying space of maps contains an injective
/// element.
#[derive(Debug, Clone)]
pub struct SurjectiveReduction {
    pub source: SModule,
    pub target: SModule,
    inner: HomReduction,
}

pub fn reduce_to_surjective_hom(
    target_rows: usize,
    target_cols: usize,
    modulus: Modulus,
    l_basis: &[Matrix],
    u_basis: &[Vector],
) -> SurjectiveReduction {
    let inner = reduce_nonsingular_to_injective_hom(target_rows, target_cols, modulus, l_basis, u_basis);
    SurjectiveReduction {
        source: inner.target.dualize(),
        target: inner.source.dualize(),
        inner,
    }
}

impl SurjectiveReduction {
    /// Decodes a surjective-side homomorphism by transposing back to the
    /// injective side.
    pub fn decode_hom(&self, psi_dual: &Matrix) -> (Matrix, Vector) {
        self.inner.decode_hom(&psi_dual.transpose())
    }

    pub fn encode_hom(&self, h: &Matrix, v: &[Scalar]) -> Result<Matrix> {
        Ok(self.inner.encode_hom(h, v)?.transpose())
    }

    pub fn injective_side(&self) -> &HomReduction {
        &self.inner
    }
}
