//! Linear matrix pencils `B0 + x1*B1 + ... + xn*Bn` and elements of the
//! affine coset they define.
//!
//! Coset elements carry their coefficient vector alongside the evaluated
//! matrix, so the completion engine can hand back an explicit assignment.

use crate::field::{Modulus, Scalar};
use crate::matrix::Matrix;

/// A pencil of matrices with `n_vars` variables; index 0 is the constant
/// term, which may have any rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    rows: usize,
    cols: usize,
    coefficients: Vec<Matrix>,
    modulus: Modulus,
}

impl Pencil {
    /// Builds a pencil from its coefficient list (constant term first).
    pub fn new(coefficients: Vec<Matrix>) -> Self {
        assert!(!coefficients.is_empty(), "a pencil needs at least a constant term");
        let rows = coefficients[0].rows();
        let cols = coefficients[0].cols();
        let modulus = coefficients[0].modulus();
        for m in &coefficients {
            assert_eq!((m.rows(), m.cols()), (rows, cols), "coefficient shape mismatch");
            assert_eq!(m.modulus(), modulus, "coefficient modulus mismatch");
        }
        Pencil { rows, cols, coefficients, modulus }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n_vars(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Coefficient matrix `B_i`; index 0 is the constant term.
    pub fn coefficient(&self, i: usize) -> &Matrix {
        &self.coefficients[i]
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.coefficients
    }

    /// Evaluates `B0 + sum x_i B_i` for an assignment of the variables.
    pub fn evaluate(&self, x: &[Scalar]) -> Matrix {
        assert_eq!(x.len(), self.n_vars(), "assignment length mismatch");
        let mut acc = self.coefficients[0].clone();
        for (xi, bi) in x.iter().zip(&self.coefficients[1..]) {
            if !xi.is_zero() {
                acc = acc.add(&bi.scale(*xi));
            }
        }
        acc
    }

    /// The coset element for an assignment, with coefficient 1 on `B0`.
    pub fn coset_element(&self, x: &[Scalar]) -> CosetElement {
        let mut coeffs = Vec::with_capacity(x.len() + 1);
        coeffs.push(self.modulus.one());
        coeffs.extend_from_slice(x);
        CosetElement { coeffs, matrix: self.evaluate(x) }
    }

    /// Checks the rank-one hypothesis on the variable coefficients.
    ///
    /// Rank-zero coefficients are tolerated; they are reported separately so
    /// callers can warn and drop them from generator lists.
    pub fn validate_rank_one(&self) -> RankOneReport {
        let mut violations = Vec::new();
        let mut zero_coefficients = Vec::new();
        for (i, b) in self.coefficients.iter().enumerate().skip(1) {
            match b.rank() {
                0 => zero_coefficients.push(i),
                1 => {}
                _ => violations.push(i),
            }
        }
        RankOneReport { violations, zero_coefficients }
    }

    /// Pads every coefficient with zero rows or columns to a square shape.
    ///
    /// Padding never changes the rank of any coset element.
    pub fn pad_to_square(&self) -> (Pencil, PadDescriptor) {
        let k = self.rows.max(self.cols);
        let descriptor =
            PadDescriptor { original_rows: self.rows, original_cols: self.cols, padded_dim: k };
        if self.rows == self.cols {
            return (self.clone(), descriptor);
        }
        let coefficients = self.coefficients.iter().map(|b| b.padded(k, k)).collect();
        (Pencil::new(coefficients), descriptor)
    }
}

/// Report from `validate_rank_one`: violations are data, not exceptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneReport {
    /// Indices `i >= 1` with `rank(B_i) > 1`.
    pub violations: Vec<usize>,
    /// Indices `i >= 1` with `B_i = 0`.
    pub zero_coefficients: Vec<usize>,
}

impl RankOneReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// How a rectangular pencil was embedded into a square one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadDescriptor {
    pub original_rows: usize,
    pub original_cols: usize,
    pub padded_dim: usize,
}

impl PadDescriptor {
    pub fn is_trivial(&self) -> bool {
        self.original_rows == self.padded_dim && self.original_cols == self.padded_dim
    }
}

/// An element of the affine coset `B0 + span{B1, ..., Bn}`, tracked as a
/// coefficient vector together with the evaluated matrix.
///
/// The constant coefficient stays pinned to 1 through augmentation, so the
/// matrix always equals `evaluate` at the variable part of the coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetElement {
    coeffs: Vec<Scalar>,
    matrix: Matrix,
}

impl CosetElement {
    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// The variable assignment, i.e. the coefficients without the leading 1.
    pub fn assignment(&self) -> &[Scalar] {
        &self.coeffs[1..]
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Adds `B_index` once: bumps the tracked coefficient and the matrix.
    pub fn add_coefficient(&mut self, pencil: &Pencil, index: usize) {
        assert!(
            index >= 1 && index <= pencil.n_vars(),
            "augmentation may only touch variable coefficients"
        );
        let one = pencil.modulus().one();
        self.coeffs[index] = self.coeffs[index] + one;
        self.matrix = self.matrix.add(pencil.coefficient(index));
    }
}
