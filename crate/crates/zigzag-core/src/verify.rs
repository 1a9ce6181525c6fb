//! Verification oracles: the exhaustive MDS check and the determinant
//! identities it rests on.
//!
//! A code with `k` data columns of `M` rows tolerates any `n - k` node
//! failures exactly when every choice of `k` nodes spans the data: each
//! `kM x kM` stacked submatrix of the generator must have full rank.
//! [`mds_check`] tests exactly that, walking the `C(n, k)` node subsets in
//! lexicographic order and stopping at the first deficiency.
//!
//! Two closed-form determinant identities make such checks predictable for
//! codes built from shifted Cauchy blocks, and this module exposes them as
//! oracles that compare a direct dense-matrix determinant against the
//! closed form:
//!
//! * [`perm_sum_det`] — for row-shift permutations `P_u` (over `Z_2^m`) and
//!   coefficients `a_u`, `det(sum_u a_u P_u) = (sum_u a_u)^(2^m)`. This
//!   holds because `(P_u - I)^2 = 0` over characteristic 2, so the sum is a
//!   scalar plus a nilpotent. The characteristic matters: over the integers
//!   mod 3 the identity already fails at `m = 1`.
//! * [`cauchy_block_det`] — an `N x N` grid of blocks `c_ij P_(u_ij)` with
//!   Cauchy coefficients `c_ij = 1 / (alpha_i + beta_j)` has determinant
//!   `det(Cauchy(alpha, beta))^M`, independent of the shift labels. Since
//!   Cauchy determinants never vanish for distinct parameters, every such
//!   block matrix is invertible — the structural reason zigzag codes are
//!   MDS.
//!
//! [`perm_algebra_check`] validates the permutation bookkeeping itself:
//! composition (`P_u P_v = P_(u+v)`), commutation, and the 2x2 block
//! recursion that splits `P_u` over the top coordinate.

use alloc::vec::Vec;
use itertools::Itertools;

use crate::code::{build_generator, CodeError, GeneratorMatrix, ZigzagCodeSpec};
use crate::gf2w::{FieldElem, FieldSpec};
use crate::group::GroupElem;
use crate::linalg::Matrix;

/// Errors from the verification oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    /// A code-level failure.
    Code(CodeError),
    /// Input slices disagree about their common dimension.
    ShapeMismatch {
        /// Which input was malformed.
        what: &'static str,
    },
    /// Parameters repeat where the closed form needs them distinct.
    DegenerateParameters,
}

impl core::fmt::Display for VerifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            VerifyError::Code(e) => write!(f, "code error: {e}"),
            VerifyError::ShapeMismatch { what } => write!(f, "shape mismatch in {what}"),
            VerifyError::DegenerateParameters => {
                write!(f, "closed form needs distinct parameters")
            }
        }
    }
}

impl From<CodeError> for VerifyError {
    fn from(e: CodeError) -> Self {
        VerifyError::Code(e)
    }
}

/// Outcome of an exhaustive MDS check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdsReport {
    /// Total `k`-subsets of nodes, `C(n, k)`.
    pub node_subsets: usize,
    /// Subsets examined before the check finished or stopped early.
    pub subsets_checked: usize,
    /// First rank-deficient subset in lexicographic order, if any.
    pub failure: Option<Vec<usize>>,
}

impl MdsReport {
    /// True when every subset had full rank.
    pub fn is_mds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exhaustively checks the MDS property of a generator: every `k`-subset of
/// nodes must stack to a full-rank `kM x kM` matrix. Subsets are visited in
/// lexicographic order and the walk stops at the first failure, which is
/// recorded in the report.
pub fn mds_check_generator(gen: &GeneratorMatrix, field: &FieldSpec) -> MdsReport {
    let n = gen.n();
    let k = gen.k();
    let rows = 1usize << gen.m();
    let node_subsets = binomial(n, k);
    let mut subsets_checked = 0;
    for subset in (0..n).combinations(k) {
        subsets_checked += 1;
        let stacked = gen.stacked_submatrix(&subset);
        if stacked.rank(field) < k * rows {
            return MdsReport { node_subsets, subsets_checked, failure: Some(subset) };
        }
    }
    MdsReport { node_subsets, subsets_checked, failure: None }
}

/// [`mds_check_generator`] applied to a code spec's own generator.
pub fn mds_check(spec: &ZigzagCodeSpec) -> MdsReport {
    mds_check_generator(&build_generator(spec), spec.field())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A direct determinant next to its closed-form prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetComparison {
    /// Determinant of the dense matrix, by elimination.
    pub direct: FieldElem,
    /// The closed-form value.
    pub predicted: FieldElem,
}

impl DetComparison {
    /// True when elimination confirmed the closed form.
    pub fn matches(&self) -> bool {
        self.direct == self.predicted
    }
}

/// The permutation matrix of `g -> g + u` on the `2^m` rows (numeric row
/// indexing by group bits).
fn perm_matrix(m: u32, u: u16) -> Matrix {
    let size = 1usize << m;
    Matrix::from_fn(size, size, |g, h| u16::from(h == g ^ (u as usize)) as FieldElem)
}

/// Compares `det(sum_u coeffs[u] P_u)` against `(sum_u coeffs[u])^(2^m)`.
/// `coeffs` is indexed by the bits of `u` and may cover only a prefix of the
/// group; missing coefficients are zero.
pub fn perm_sum_det(
    m: u32,
    coeffs: &[FieldElem],
    field: &FieldSpec,
) -> Result<DetComparison, VerifyError> {
    let size = 1usize << m;
    if coeffs.is_empty() || coeffs.len() > size {
        return Err(VerifyError::ShapeMismatch { what: "coefficient vector" });
    }
    let mut sum_matrix = Matrix::zero(size, size);
    let mut sum = 0;
    for (u, &a) in coeffs.iter().enumerate() {
        sum ^= a;
        if a != 0 {
            for g in 0..size {
                sum_matrix.set(g, g ^ u, a);
            }
        }
    }
    let mut predicted = sum;
    for _ in 0..m {
        predicted = field.mul(predicted, predicted);
    }
    Ok(DetComparison { direct: sum_matrix.determinant(field), predicted })
}

/// Compares the determinant of an `N x N` grid of shifted Cauchy blocks
/// against `det(Cauchy(alphas, betas))^M`. Block `(i, j)` is
/// `inv(alphas[i] + betas[j]) P_(labels[i][j])`; the prediction is
/// independent of the labels. All `2N` parameters must be jointly distinct.
pub fn cauchy_block_det(
    alphas: &[FieldElem],
    betas: &[FieldElem],
    labels: &[Vec<GroupElem>],
    field: &FieldSpec,
) -> Result<DetComparison, VerifyError> {
    let n = alphas.len();
    if n == 0 || betas.len() != n {
        return Err(VerifyError::ShapeMismatch { what: "parameter vectors" });
    }
    if labels.len() != n || labels.iter().any(|row| row.len() != n) {
        return Err(VerifyError::ShapeMismatch { what: "label grid" });
    }
    for (idx, &x) in alphas.iter().chain(betas.iter()).enumerate() {
        for &y in alphas.iter().chain(betas.iter()).skip(idx + 1) {
            if x == y {
                return Err(VerifyError::DegenerateParameters);
            }
        }
    }
    let m = labels[0][0].m();
    let rows = 1usize << m;

    // Dense grid: block (i, j) places inv(a_i + b_j) at (g, g + u_ij).
    let mut dense = Matrix::zero(n * rows, n * rows);
    for i in 0..n {
        for j in 0..n {
            let coeff = field.inv(alphas[i] ^ betas[j]).expect("distinct parameters");
            let shift = labels[i][j].bits() as usize;
            for g in 0..rows {
                dense.set(i * rows + g, j * rows + (g ^ shift), coeff);
            }
        }
    }

    // Cauchy determinant: prod_{i<j} (a_j + a_i)(b_i + b_j) / prod_{i,j} (a_i + b_j),
    // then raised to the 2^m-th power by m squarings.
    let mut numerator: FieldElem = 1;
    for i in 0..n {
        for j in i + 1..n {
            numerator = field.mul(numerator, alphas[i] ^ alphas[j]);
            numerator = field.mul(numerator, betas[i] ^ betas[j]);
        }
    }
    let mut denominator: FieldElem = 1;
    for &a in alphas {
        for &b in betas {
            denominator = field.mul(denominator, a ^ b);
        }
    }
    let mut predicted = field.div(numerator, denominator).expect("nonzero denominator");
    for _ in 0..m {
        predicted = field.mul(predicted, predicted);
    }
    Ok(DetComparison { direct: dense.determinant(field), predicted })
}

/// A failed identity in the permutation-matrix algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraFailure {
    /// Which identity failed.
    pub what: &'static str,
    /// First shift involved.
    pub u: u16,
    /// Second shift involved (zero when unused).
    pub v: u16,
}

impl core::fmt::Display for AlgebraFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} failed at u={:#b}, v={:#b}", self.what, self.u, self.v)
    }
}

/// Exhaustively validates the row-shift permutation algebra at dimension
/// `m`: composition `P_u P_v = P_(u+v)`, commutation, and the 2x2 block
/// recursion over the top coordinate (`P_u` is block-diagonal in `P_(u')`
/// when `u`'s top bit is clear, block-anti-diagonal when set, with `u'` the
/// remaining bits). Returns the number of identities checked.
pub fn perm_algebra_check(m: u32) -> Result<usize, AlgebraFailure> {
    // Composition and commutation need a field only for matrix products;
    // entries are 0/1 and GF(2) embeds in any GF(2^w), so use GF(2).
    let field = FieldSpec::with_default_modulus(1).expect("GF(2) exists");
    let size = 1u16 << m;
    let mut checked = 0;
    for u in 0..size {
        let pu = perm_matrix(m, u);
        for v in 0..size {
            let pv = perm_matrix(m, v);
            if pu.mul(&pv, &field) != perm_matrix(m, u ^ v) {
                return Err(AlgebraFailure { what: "composition", u, v });
            }
            if pu.mul(&pv, &field) != pv.mul(&pu, &field) {
                return Err(AlgebraFailure { what: "commutation", u, v });
            }
            checked += 2;
        }
    }
    if m >= 1 {
        let half = 1usize << (m - 1);
        for u in 0..size {
            let full = perm_matrix(m, u);
            let inner = perm_matrix(m - 1, u & (size / 2 - 1));
            let top_set = u & (size / 2) != 0;
            for bg in 0..2usize {
                for bh in 0..2usize {
                    // Block (bg, bh) of the full matrix.
                    let expect_inner = if top_set { bg != bh } else { bg == bh };
                    for g in 0..half {
                        for h in 0..half {
                            let got = full.get(bg * half + g, bh * half + h);
                            let want = if expect_inner { inner.get(g, h) } else { 0 };
                            if got != want {
                                return Err(AlgebraFailure { what: "block recursion", u, v: 0 });
                            }
                        }
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}
