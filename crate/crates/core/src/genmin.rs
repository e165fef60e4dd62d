//! Minimizing the number of generators of a module.
//!
//! Two layers live here.  The local optimizers (`cyclic_increment`,
//! `multi_gen_optimize`) strictly enlarge the submodule generated by a
//! tuple whenever that is possible in a semisimple module; they certify
//! optimality through annihilator conditions.  The budgeted driver
//! (`generators_with_budget`) instead runs the quotient-based lambda-search
//! loop, which needs no semisimplicity assumption, only a field with more
//! than twice the module dimension elements.  `minimize_generators` scans
//! budgets upward until the driver succeeds.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{
    add_vectors, scale_vector, solve, standard_basis, zero_vector, Matrix, Vector,
};
use crate::smodule::{AlgebraBasis, SModule, Submodule};

/// Outcome of one cyclic-submodule improvement step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicStep {
    /// The cyclic submodule already has maximum dimension; certified by the
    /// annihilator sweeping the whole space into it.
    MaxCertified,
    /// A replacement vector generating a strictly larger cyclic submodule.
    Improved(Vector),
}

/// Builds the projection onto `target` that commutes with every action,
/// acts as the identity on `target`, and has image inside it.  Solvable
/// exactly when `target` has an invariant complement.
fn equivariant_projection(m: &SModule, target: &Submodule) -> Result<Matrix> {
    let n = m.dim();
    let modulus = m.modulus();
    let space = target.space();
    let d = space.dim();
    let quotient = m.quotient(target)?;
    let cokernel = quotient.projection();
    let unknowns = n * n;
    let commute_rows = m.action_count() * unknowns;
    let image_rows = (n - d) * n;
    let fix_rows = d * n;
    let mut sys = Matrix::zero(commute_rows + image_rows + fix_rows, unknowns, modulus);
    let mut rhs = zero_vector(modulus, commute_rows + image_rows + fix_rows);
    for (s, a) in m.actions().iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let row = s * unknowns + r * n + c;
                for k in 0..n {
                    let cur = sys.at(row, r * n + k);
                    sys.set(row, r * n + k, cur + a.at(k, c));
                    let cur = sys.at(row, k * n + c);
                    sys.set(row, k * n + c, cur - a.at(r, k));
                }
            }
        }
    }
    for r in 0..(n - d) {
        for c in 0..n {
            let row = commute_rows + r * n + c;
            for k in 0..n {
                let cur = sys.at(row, k * n + c);
                sys.set(row, k * n + c, cur + cokernel.at(r, k));
            }
        }
    }
    for (gi, g) in space.basis_rows().enumerate() {
        for r in 0..n {
            let row = commute_rows + image_rows + gi * n + r;
            for (k, &gk) in g.iter().enumerate() {
                let cur = sys.at(row, r * n + k);
                sys.set(row, r * n + k, cur + gk);
            }
            rhs[row] = g[r];
        }
    }
    let solution = solve(&sys, &rhs).map_err(|_| Error::NoComplement)?;
    Ok(Matrix::from_vectorized(n, n, solution, modulus))
}

/// One greedy step of cyclic-submodule optimization.
///
/// Certifies maximality when every annihilator element maps the whole space
/// into the cyclic submodule of `u`; otherwise splits off an invariant
/// complement through an equivariant projection and moves `u` by the
/// complement component of a witness vector, strictly growing the generated
/// submodule.  Requires a semisimple module; without one the projection
/// system can be unsolvable, which surfaces as `NoComplement`.
pub fn cyclic_increment(m: &SModule, alg: &AlgebraBasis, u: &[Scalar]) -> Result<CyclicStep> {
    let n = m.dim();
    let modulus = m.modulus();
    let generated = m.submodule_closure(std::slice::from_ref(&u.to_vec()));
    let mut witness: Option<Vector> = None;
    'search: for coeffs in m.annihilator(alg, u) {
        let b = alg.combine(&coeffs);
        for w in standard_basis(modulus, n) {
            if !generated.space().contains(&b.mul_vec(&w)) {
                witness = Some(w);
                break 'search;
            }
        }
    }
    let Some(w) = witness else {
        return Ok(CyclicStep::MaxCertified);
    };
    let projection = equivariant_projection(m, &generated)?;
    let complement_part = add_vectors(&w, &scale_vector(-modulus.one(), &projection.mul_vec(&w)));
    let improved = add_vectors(u, &complement_part);
    let next = m.submodule_closure(std::slice::from_ref(&improved));
    if next.dim() <= generated.dim() {
        return Err(Error::RankDidNotIncrease);
    }
    Ok(CyclicStep::Improved(improved))
}

/// A generator tuple with its generated submodule cached.
#[derive(Debug, Clone)]
pub struct GeneratorTuple {
    vectors: Vec<Vector>,
    generated: Submodule,
}

impl GeneratorTuple {
    pub fn new(m: &SModule, vectors: Vec<Vector>) -> Self {
        let generated = m.submodule_closure(&vectors);
        GeneratorTuple { vectors, generated }
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn generated(&self) -> &Submodule {
        &self.generated
    }

    pub fn dim(&self) -> usize {
        self.generated.dim()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn with_replacement(&self, m: &SModule, index: usize, v: Vector) -> Self {
        let mut vectors = self.vectors.clone();
        vectors[index] = v;
        GeneratorTuple::new(m, vectors)
    }
}

/// Outcome of one multi-generator improvement pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiGenStep {
    /// Every position certifies maximality in its quotient.
    OptimalCertified,
    /// Replacing the vector at `index` strictly grows the total submodule.
    Improved { index: usize, replacement: Vector },
}

/// One pass of position-wise optimization: for each index, quotient by the
/// submodule the remaining generators produce and try a cyclic step on the
/// image of the chosen one.  The first improvement found (ascending index)
/// is lifted back and returned.
pub fn multi_gen_optimize(
    m: &SModule,
    alg: &AlgebraBasis,
    tuple: &GeneratorTuple,
) -> Result<MultiGenStep> {
    for index in 0..tuple.len() {
        let mut others = tuple.vectors().to_vec();
        others.remove(index);
        let fixed = m.submodule_closure(&others);
        let quotient = m.quotient(&fixed)?;
        let projected_alg = AlgebraBasis::from_spanning(
            quotient.module.dim(),
            m.modulus(),
            &alg.elements()
                .iter()
                .map(|b| quotient.projection().mul(b).mul(quotient.section()))
                .collect::<Vec<_>>(),
        );
        let image = quotient.project_vector(&tuple.vectors()[index]);
        match cyclic_increment(&quotient.module, &projected_alg, &image)? {
            CyclicStep::MaxCertified => continue,
            CyclicStep::Improved(better) => {
                let replacement = quotient.lift_vector(&better);
                let next = tuple.with_replacement(m, index, replacement.clone());
                if next.dim() <= tuple.dim() {
                    return Err(Error::RankDidNotIncrease);
                }
                return Ok(MultiGenStep::Improved { index, replacement });
            }
        }
    }
    Ok(MultiGenStep::OptimalCertified)
}

/// Outcome of the lambda-search step.
#[derive(Debug, Clone)]
pub enum CikOutcome {
    /// A perturbation `u_index += lambda * basis[basis_index]` whose tuple
    /// keeps `U' + W = V` while strictly growing the overlap of `U' + W'`
    /// with `W` past `W'`.
    Found { index: usize, basis_index: usize, lambda: Scalar, tuple: GeneratorTuple },
    /// No candidate passes; the budget is too small for this module.
    Insufficient,
}

/// Deterministic perturbation search: scans generator index, ambient basis
/// vector, and the first `2 dim + 1` field elements in ascending order and
/// accepts the first candidate meeting both subspace conditions.  Since at
/// most `2 dim` field elements can fail for a working index pair, trying
/// `2 dim + 1` of them makes exhaustion a sound insufficiency verdict.
pub fn cik_step(
    m: &SModule,
    tuple: &GeneratorTuple,
    w: &Submodule,
    w_prime: &Submodule,
    ambient_basis: &[Vector],
) -> Result<CikOutcome> {
    let n = m.dim();
    let p = m.modulus().get();
    let trials = 2 * n as u64 + 1;
    if p < trials {
        return Err(Error::FieldTooSmall { field: p, required: trials });
    }
    debug_assert!(tuple.generated().space().sum(w.space()).is_full());
    let lambdas = m.modulus().enumerate(trials).expect("trial count fits in the field");
    for index in 0..tuple.len() {
        for (basis_index, direction) in ambient_basis.iter().enumerate() {
            for &lambda in &lambdas {
                let moved = add_vectors(&tuple.vectors()[index], &scale_vector(lambda, direction));
                let candidate = tuple.with_replacement(m, index, moved);
                let u_space = candidate.generated().space();
                if !u_space.sum(w.space()).is_full() {
                    continue;
                }
                let meet = u_space.sum(w_prime.space()).intersect(w.space());
                if meet.dim() > w_prime.dim() {
                    return Ok(CikOutcome::Found { index, basis_index, lambda, tuple: candidate });
                }
            }
        }
    }
    Ok(CikOutcome::Insufficient)
}

/// Greedy left-to-right removal of redundant generators.
pub fn irredundant_generating_set(m: &SModule, gens: &[Vector]) -> Result<Vec<Vector>> {
    let n = m.dim();
    if m.submodule_closure(gens).dim() != n {
        return Err(Error::DoesNotGenerate);
    }
    let mut kept: Vec<Vector> = gens.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if m.submodule_closure(&trial).dim() == n {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// What a budgeted run produced.
#[derive(Debug, Clone)]
pub enum BudgetOutcome {
    /// At most `budget` vectors whose closure is the whole module.
    Generators(Vec<Vector>),
    /// The budget is provably insufficient.
    Insufficient,
}

/// A budgeted run together with its loop instrumentation.
#[derive(Debug, Clone)]
pub struct BudgetRun {
    pub outcome: BudgetOutcome,
    /// Number of lambda-search invocations (combined loop iterations).
    pub search_steps: usize,
    /// Inner-loop continuations (each strictly grows `dim W'`).
    pub inner_iterations: usize,
    /// Outer-loop rounds (each after the first strictly shrinks `dim W`).
    pub outer_iterations: usize,
}

/// Finds at most `budget` generators of the module, or reports that the
/// budget is insufficient.
///
/// Requires `|F| > 2 dim V`.  Starts from an irredundant subset of the
/// standard basis; while the tuple's closure misses part of the residual
/// submodule `W`, perturbs one generator at a time inside the quotient by
/// `W' = U cap W` (growing `W'` on inner rounds and shrinking `W` on outer
/// rounds).  The combined iteration count is hard-bounded by `(dim V)^2`
/// and the returned generators are re-verified by an exact closure.
pub fn generators_with_budget(m: &SModule, budget: usize) -> Result<BudgetRun> {
    let n = m.dim();
    let finish = |outcome, steps: usize, inner: usize, outer: usize| BudgetRun {
        outcome,
        search_steps: steps,
        inner_iterations: inner,
        outer_iterations: outer,
    };
    if n == 0 {
        return Ok(finish(BudgetOutcome::Generators(Vec::new()), 0, 0, 0));
    }
    let p = m.modulus().get();
    if p <= 2 * n as u64 {
        return Err(Error::FieldTooSmall { field: p, required: 2 * n as u64 + 1 });
    }
    if budget == 0 {
        return Ok(finish(BudgetOutcome::Insufficient, 0, 0, 0));
    }
    let modulus = m.modulus();
    let irredundant = irredundant_generating_set(m, &standard_basis(modulus, n))?;
    if irredundant.len() <= budget {
        return Ok(finish(BudgetOutcome::Generators(irredundant), 0, 0, 0));
    }
    let mut tuple = GeneratorTuple::new(m, irredundant[..budget].to_vec());
    let mut w = m.submodule_closure(&irredundant[budget..]);
    let limit = n * n;
    let mut search_steps = 0;
    let mut inner_iterations = 0;
    let mut outer_iterations = 0;
    'outer: loop {
        outer_iterations += 1;
        let mut w_prime = tuple.generated().intersect(&w);
        if w_prime.space() == w.space() {
            let generators = tuple.vectors().to_vec();
            if m.submodule_closure(&generators).dim() != n {
                return Err(Error::Internal("accepted generators do not generate"));
            }
            return Ok(finish(
                BudgetOutcome::Generators(generators),
                search_steps,
                inner_iterations,
                outer_iterations,
            ));
        }
        loop {
            debug_assert!(tuple.generated().space().sum(w.space()).is_full());
            search_steps += 1;
            if search_steps > limit {
                return Err(Error::Internal("loop iterations exceeded the square bound"));
            }
            let quotient = m.quotient(&w_prime)?;
            let reduced = &quotient.module;
            let tuple_image = GeneratorTuple::new(
                reduced,
                tuple.vectors().iter().map(|v| quotient.project_vector(v)).collect(),
            );
            let w_image = reduced.submodule(quotient.project_subspace(w.space()))?;
            let trivial = reduced.submodule_closure(&[]);
            let directions = standard_basis(modulus, reduced.dim());
            match cik_step(reduced, &tuple_image, &w_image, &trivial, &directions)? {
                CikOutcome::Insufficient => {
                    return Ok(finish(
                        BudgetOutcome::Insufficient,
                        search_steps,
                        inner_iterations,
                        outer_iterations,
                    ));
                }
                CikOutcome::Found { index, basis_index, lambda, .. } => {
                    let direction = quotient.lift_vector(&directions[basis_index]);
                    let moved =
                        add_vectors(&tuple.vectors()[index], &scale_vector(lambda, &direction));
                    tuple = tuple.with_replacement(m, index, moved);
                }
            }
            let reach = tuple.generated().space().sum(w_prime.space());
            if reach.contains_subspace(w.space()) {
                if w_prime.dim() >= w.dim() {
                    return Err(Error::Internal("outer loop failed to shrink W"));
                }
                w = w_prime;
                continue 'outer;
            }
            inner_iterations += 1;
            let grown = tuple.generated().sum(&w_prime).intersect(&w);
            if grown.dim() <= w_prime.dim() {
                return Err(Error::Internal("inner loop failed to grow W'"));
            }
            w_prime = grown;
        }
    }
}

/// The minimum number of generators, by scanning budgets upward.
///
/// Success at a budget implies success at every larger budget, so the first
/// budget that works is the minimum.
pub fn minimize_generators(m: &SModule) -> Result<(usize, Vec<Vector>)> {
    if m.dim() == 0 {
        return Ok((0, Vec::new()));
    }
    for budget in 1..=m.dim() {
        let run = generators_with_budget(m, budget)?;
        if let BudgetOutcome::Generators(gens) = run.outcome {
            return Ok((budget, gens));
        }
    }
    Err(Error::Internal("the full standard basis budget cannot fail"))
}
