//! Exact-arithmetic toolkit over prime fields GF(p): maximum-rank completion
//! of linear matrix pencils whose variable coefficients have rank one,
//! verifiable max-rank certificates, module-theoretic reductions of the
//! completion problem, and minimum generating sets of finite-dimensional
//! modules, with built-in brute-force oracles for validation.

pub mod completion;
pub mod error;
pub mod field;
pub mod genmin;
pub mod matrix;
pub mod oracle;
pub mod pencil;
pub mod smodule;

pub use completion::{
    check_max_rank, complete_max_rank, CompletionOutcome, EscapeChain, MaxRankOutcome,
    WitnessReport,
};
pub use error::{Error, Result};
pub use field::{Modulus, Scalar};
pub use genmin::{
    cik_step, cyclic_increment, generators_with_budget, irredundant_generating_set,
    minimize_generators, multi_gen_optimize, BudgetOutcome, BudgetRun, CikOutcome, CyclicStep,
    GeneratorTuple, MultiGenStep,
};
pub use oracle::{
    build_semisimple_family, max_dim_formula, oracle_max_completion_rank, oracle_max_cyclic_dim,
    oracle_min_generators, EnumerationCap, SemisimpleSpec,
};
pub use matrix::{idempotentizer, solve, Matrix, RowEchelon, SpanBuilder, Subspace, Vector};
pub use pencil::{CosetElement, PadDescriptor, Pencil, RankOneReport};
pub use smodule::{
    build_bipartite, build_w0, hom_basis, is_module_hom, reduce_completion_to_cyclic,
    reduce_nonsingular_to_injective_hom, reduce_to_surjective_hom, AlgebraBasis, CyclicReduction,
    HomReduction, QuotientModule, SModule, Submodule, SurjectiveReduction,
};
