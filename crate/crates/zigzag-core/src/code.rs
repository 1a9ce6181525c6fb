//! Code specifications, Cauchy coefficients, generator matrices, systematic
//! encoding, and decoding from any k surviving nodes.
//!
//! An `(n, k, M)` array code stores an `M x n` grid of GF(2^w) symbols across
//! `n` nodes (columns): `k` systematic columns holding the message verbatim
//! and `p = n - k` parity columns. Rows are indexed by the group Z_2^m with
//! `M = 2^m`. Parity column `i` carries one permutation label per systematic
//! column — a group element `u_j` saying which message row feeds each parity
//! row — and one Cauchy coefficient per systematic column:
//!
//! ```text
//! parity_i[g] = sum_j coeff[i][j] * message_j[g + u_j],
//! coeff[i][j] = 1 / (alpha_i + beta_j),
//! ```
//!
//! with all `alpha` and `beta` parameters jointly distinct. The permutation
//! labels give every helper the option of reading only half its rows during a
//! single-node repair (see the `repair` module); the Cauchy coefficients make
//! every k-subset of columns decodable.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::gf2w::{FieldElem, FieldError, FieldSpec};
use crate::group::{GroupElem, GroupError, RowOrder};
use crate::linalg::Matrix;

/// Errors from code construction, encoding, or decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// A field-level failure (bad modulus, division by zero, ...).
    Field(FieldError),
    /// A group-level failure (bad dimension, bad ordering, ...).
    Group(GroupError),
    /// The field cannot host `n` jointly distinct alpha/beta parameters.
    FieldTooSmall {
        /// Total node count `n = p + k`.
        n: usize,
        /// Field size `2^w`.
        field_order: usize,
    },
    /// Two Cauchy parameters collide (alphas and betas must be jointly
    /// distinct).
    ParameterCollision {
        /// The repeated value.
        value: FieldElem,
    },
    /// Labels are not a `p x k` grid of m-bit group elements.
    LabelShape {
        /// Expected parity count `p`.
        p: usize,
        /// Expected systematic count `k`.
        k: usize,
    },
    /// The row ordering or a label lives in a different group dimension.
    DimensionMismatch {
        /// The spec's group dimension.
        expected_m: u32,
        /// The offending dimension.
        got_m: u32,
    },
    /// A message or column has the wrong shape.
    ShapeMismatch {
        /// What was being checked.
        what: &'static str,
    },
    /// A node index outside `0..n`.
    NodeIndex {
        /// The offending index.
        index: usize,
        /// Total node count.
        n: usize,
    },
    /// decode was not given exactly `k` distinct nodes.
    WrongSurvivorCount {
        /// Number of distinct nodes provided.
        got: usize,
        /// Required count `k`.
        expected: usize,
    },
    /// The stacked submatrix for this node set is singular, so the node set
    /// cannot decode — the spec is not MDS.
    SingularNodeSet {
        /// The offending node subset, ascending.
        nodes: Vec<usize>,
    },
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::Field(e) => write!(f, "field error: {e}"),
            CodeError::Group(e) => write!(f, "group error: {e}"),
            CodeError::FieldTooSmall { n, field_order } => {
                write!(f, "field of size {field_order} cannot host {n} distinct code parameters")
            }
            CodeError::ParameterCollision { value } => {
                write!(f, "alpha/beta parameters collide at value {value:#x}")
            }
            CodeError::LabelShape { p, k } => {
                write!(f, "labels must form a {p} x {k} grid of group elements")
            }
            CodeError::DimensionMismatch { expected_m, got_m } => {
                write!(f, "group dimension mismatch: spec has m={expected_m}, got m={got_m}")
            }
            CodeError::ShapeMismatch { what } => write!(f, "shape mismatch in {what}"),
            CodeError::NodeIndex { index, n } => {
                write!(f, "node index {index} outside 0..{n}")
            }
            CodeError::WrongSurvivorCount { got, expected } => {
                write!(f, "decoding needs exactly {expected} distinct nodes, got {got}")
            }
            CodeError::SingularNodeSet { nodes } => {
                write!(f, "node set {nodes:?} is singular: the code is not decodable from it")
            }
        }
    }
}

impl From<FieldError> for CodeError {
    fn from(e: FieldError) -> Self {
        CodeError::Field(e)
    }
}

impl From<GroupError> for CodeError {
    fn from(e: GroupError) -> Self {
        CodeError::Group(e)
    }
}

/// A complete, validated description of one `(n, k, M)` code instance:
/// field, group dimension, permutation labels, Cauchy parameters, and the
/// physical row ordering used for layout and repair. Immutable after
/// construction; the coefficient grid is precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagCodeSpec {
    field: FieldSpec,
    m: u32,
    /// `labels[i][j]` is the row shift parity `i` applies to systematic
    /// column `j`.
    labels: Vec<Vec<GroupElem>>,
    alphas: Vec<FieldElem>,
    betas: Vec<FieldElem>,
    ordering: RowOrder,
    /// Precomputed `coeffs[i][j] = inv(alphas[i] + betas[j])`.
    coeffs: Vec<Vec<FieldElem>>,
}

impl ZigzagCodeSpec {
    /// Validates and assembles a code spec. `alphas` (one per parity) and
    /// `betas` (one per systematic column) must be jointly distinct field
    /// elements; `labels` must be a `p x k` grid over Z_2^m; the ordering
    /// must permute the same group.
    pub fn new(
        field: FieldSpec,
        m: u32,
        labels: Vec<Vec<GroupElem>>,
        alphas: Vec<FieldElem>,
        betas: Vec<FieldElem>,
        ordering: RowOrder,
    ) -> Result<Self, CodeError> {
        let p = alphas.len();
        let k = betas.len();
        let n = p + k;
        if p == 0 || k == 0 {
            return Err(CodeError::ShapeMismatch { what: "node counts (need k >= 1, p >= 1)" });
        }
        if n > field.order() {
            return Err(CodeError::FieldTooSmall { n, field_order: field.order() });
        }
        for &v in alphas.iter().chain(betas.iter()) {
            if !field.contains(v) {
                return Err(CodeError::Field(FieldError::OutOfRange { value: v as u32 }));
            }
        }
        let mut seen = alloc::vec![false; field.order()];
        for &v in alphas.iter().chain(betas.iter()) {
            if seen[v as usize] {
                return Err(CodeError::ParameterCollision { value: v });
            }
            seen[v as usize] = true;
        }
        if labels.len() != p || labels.iter().any(|row| row.len() != k) {
            return Err(CodeError::LabelShape { p, k });
        }
        for u in labels.iter().flatten() {
            if u.m() != m {
                return Err(CodeError::DimensionMismatch { expected_m: m, got_m: u.m() });
            }
        }
        if ordering.m() != m {
            return Err(CodeError::DimensionMismatch { expected_m: m, got_m: ordering.m() });
        }

        let coeffs = alphas
            .iter()
            .map(|&a| {
                betas
                    .iter()
                    .map(|&b| field.inv(field.add(a, b)).expect("distinct parameters, a+b != 0"))
                    .collect()
            })
            .collect();
        Ok(ZigzagCodeSpec { field, m, labels, alphas, betas, ordering, coeffs })
    }

    /// Builds a spec with the default Cauchy parameters: `alphas` are the
    /// field values `0..p` and `betas` the next `k` values.
    pub fn with_default_parameters(
        field: FieldSpec,
        m: u32,
        labels: Vec<Vec<GroupElem>>,
        ordering: RowOrder,
    ) -> Result<Self, CodeError> {
        let p = labels.len();
        let k = labels.first().map_or(0, Vec::len);
        let alphas: Vec<FieldElem> = (0..p).map(|v| v as FieldElem).collect();
        let betas: Vec<FieldElem> = (p..p + k).map(|v| v as FieldElem).collect();
        Self::new(field, m, labels, alphas, betas, ordering)
    }

    /// Total node count `n`.
    pub fn n(&self) -> usize {
        self.alphas.len() + self.betas.len()
    }

    /// Systematic node count `k`.
    pub fn k(&self) -> usize {
        self.betas.len()
    }

    /// Parity node count `p = n - k`.
    pub fn p(&self) -> usize {
        self.alphas.len()
    }

    /// Group dimension `m`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Rows per column, `M = 2^m`.
    pub fn rows(&self) -> usize {
        1usize << self.m
    }

    /// The underlying field.
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// All permutation labels: `labels()[i][j]` shifts systematic column `j`
    /// in parity `i`.
    pub fn labels(&self) -> &[Vec<GroupElem>] {
        &self.labels
    }

    /// The label sequence of parity `i`.
    pub fn label(&self, i: usize) -> &[GroupElem] {
        &self.labels[i]
    }

    /// Parity-side Cauchy parameters, one per parity node.
    pub fn alphas(&self) -> &[FieldElem] {
        &self.alphas
    }

    /// Systematic-side Cauchy parameters, one per systematic node.
    pub fn betas(&self) -> &[FieldElem] {
        &self.betas
    }

    /// The physical row ordering (layout and repair both use it).
    pub fn ordering(&self) -> &RowOrder {
        &self.ordering
    }

    /// Coefficient of systematic column `j` in parity `i`.
    pub fn coeff(&self, i: usize, j: usize) -> FieldElem {
        self.coeffs[i][j]
    }

    /// Whether `node` is a systematic column.
    pub fn is_systematic(&self, node: usize) -> bool {
        node < self.k()
    }

    /// Human-readable node name: systematic columns are `a1..ak`, parity
    /// columns `p1..pp` (both 1-based, matching common usage).
    pub fn node_name(&self, node: usize) -> String {
        if self.is_systematic(node) {
            alloc::format!("a{}", node + 1)
        } else {
            alloc::format!("p{}", node - self.k() + 1)
        }
    }
}

/// The full coefficient grid `[i][j] = inv(alphas[i] + betas[j])`, `p x k`.
/// Every entry is nonzero because the parameters are jointly distinct.
pub fn cauchy_coefficients(spec: &ZigzagCodeSpec) -> Vec<Vec<FieldElem>> {
    spec.coeffs.clone()
}

/// One `M x M` block of the generator matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenBlock {
    /// The all-zero block.
    Zero,
    /// `coeff` times the translation permutation of `shift`: entry `coeff`
    /// at `(g, g + shift)` for every row `g`, zero elsewhere. `coeff = 1`,
    /// `shift = 0` is the identity block.
    ScaledPerm {
        /// The scalar multiplier.
        coeff: FieldElem,
        /// The group translation applied to row indices.
        shift: GroupElem,
    },
}

impl GenBlock {
    /// Densifies the block into an `M x M` matrix (`M = 2^m`).
    pub fn materialize(&self, m: u32) -> Matrix {
        let size = 1usize << m;
        match *self {
            GenBlock::Zero => Matrix::zero(size, size),
            GenBlock::ScaledPerm { coeff, shift } => {
                assert_eq!(shift.m(), m, "shift from a different group");
                Matrix::from_fn(size, size, |g, h| {
                    if g ^ (shift.bits() as usize) == h {
                        coeff
                    } else {
                        0
                    }
                })
            }
        }
    }
}

/// The block generator: one row of `k` blocks per node, each `M x M`. Node
/// `v`'s column equals its block row applied to the stacked message. The
/// systematic rows are identity/zero; parity rows hold scaled translation
/// permutations.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    m: u32,
    /// `blocks[node][j]`, `node` in `0..n`, `j` in `0..k`.
    blocks: Vec<Vec<GenBlock>>,
}

impl GeneratorMatrix {
    /// Assembles a generator from explicit block rows (one per node, each of
    /// length `k`). Used directly only by verifiers that need to probe
    /// generators no validated spec would produce.
    pub fn from_blocks(m: u32, blocks: Vec<Vec<GenBlock>>) -> Result<Self, CodeError> {
        let k = blocks.first().map_or(0, Vec::len);
        if k == 0 || blocks.iter().any(|row| row.len() != k) {
            return Err(CodeError::ShapeMismatch { what: "generator block grid" });
        }
        Ok(GeneratorMatrix { m, blocks })
    }

    /// Group dimension `m`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Total node count.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Message block count `k`.
    pub fn k(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    /// The block row of one node.
    pub fn node_blocks(&self, node: usize) -> &[GenBlock] {
        &self.blocks[node]
    }

    /// Densifies the block rows of the chosen nodes into one stacked
    /// `(|nodes| * M) x (k * M)` matrix, in the given node order.
    pub fn stacked_submatrix(&self, nodes: &[usize]) -> Matrix {
        let size = 1usize << self.m;
        let k = self.k();
        let mut out = Matrix::zero(nodes.len() * size, k * size);
        for (row_block, &node) in nodes.iter().enumerate() {
            for (col_block, block) in self.blocks[node].iter().enumerate() {
                if let GenBlock::ScaledPerm { coeff, shift } = *block {
                    for g in 0..size {
                        let h = g ^ (shift.bits() as usize);
                        out.set(row_block * size + g, col_block * size + h, coeff);
                    }
                }
            }
        }
        out
    }
}

/// Materializes the generator of a spec: systematic node `j` gets the
/// identity in block `j`, parity node `k + i` gets `coeff[i][j]` times the
/// translation by label `u_j` in every block `j`.
pub fn build_generator(spec: &ZigzagCodeSpec) -> GeneratorMatrix {
    let k = spec.k();
    let zero = GroupElem::zero(spec.m()).expect("spec validated m");
    let mut blocks = Vec::with_capacity(spec.n());
    for j in 0..k {
        let mut row = alloc::vec![GenBlock::Zero; k];
        row[j] = GenBlock::ScaledPerm { coeff: 1, shift: zero };
        blocks.push(row);
    }
    for i in 0..spec.p() {
        let row = (0..k)
            .map(|j| GenBlock::ScaledPerm { coeff: spec.coeff(i, j), shift: spec.labels[i][j] })
            .collect();
        blocks.push(row);
    }
    GeneratorMatrix { m: spec.m(), blocks }
}

/// A fully populated `M x n` codeword grid. Column `j`, row `g` is addressed
/// by the group element `g`; rows are stored in natural bit order, and the
/// spec's ordering translates to physical positions where needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    m: u32,
    /// `columns[node][g.bits()]`.
    columns: Vec<Vec<FieldElem>>,
}

impl Codeword {
    /// Group dimension.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Rows per column.
    pub fn rows(&self) -> usize {
        1usize << self.m
    }

    /// Node count.
    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// The symbol of column `node` at row `g`.
    pub fn get(&self, node: usize, g: &GroupElem) -> FieldElem {
        self.columns[node][g.bits() as usize]
    }

    /// One full column, indexed by `g.bits()`.
    pub fn column(&self, node: usize) -> &[FieldElem] {
        &self.columns[node]
    }

    /// Assembles a codeword from explicit columns (each of length `2^m`).
    pub fn from_columns(m: u32, columns: Vec<Vec<FieldElem>>) -> Result<Self, CodeError> {
        let rows = 1usize << m;
        if columns.iter().any(|c| c.len() != rows) {
            return Err(CodeError::ShapeMismatch { what: "codeword columns" });
        }
        Ok(Codeword { m, columns })
    }
}

fn check_message_shape(spec: &ZigzagCodeSpec, message: &[Vec<FieldElem>]) -> Result<(), CodeError> {
    if message.len() != spec.k() || message.iter().any(|b| b.len() != spec.rows()) {
        return Err(CodeError::ShapeMismatch { what: "message blocks" });
    }
    Ok(())
}

/// Systematic encoding: copies the `k` message blocks into the systematic
/// columns and fills parity `i`, row `g`, with
/// `sum_j coeff[i][j] * message[j][g + u_j]`.
pub fn encode(spec: &ZigzagCodeSpec, message: &[Vec<FieldElem>]) -> Result<Codeword, CodeError> {
    check_message_shape(spec, message)?;
    let rows = spec.rows();
    let field = spec.field();
    let mut columns: Vec<Vec<FieldElem>> = message.to_vec();
    for i in 0..spec.p() {
        let mut parity = alloc::vec![0; rows];
        for (j, block) in message.iter().enumerate() {
            let coeff = spec.coeff(i, j);
            let shift = spec.labels[i][j].bits() as usize;
            for (g, slot) in parity.iter_mut().enumerate() {
                *slot ^= field.mul(coeff, block[g ^ shift]);
            }
        }
        columns.push(parity);
    }
    Ok(Codeword { m: spec.m(), columns })
}

/// A reusable decoder for one fixed set of `k` surviving nodes: the stacked
/// `kM x kM` submatrix is inverted once here and applied per codeword, which
/// is what makes many-stripe decoding cheap.
#[derive(Debug, Clone)]
pub struct Decoder {
    nodes: Vec<usize>,
    inverse: Matrix,
    m: u32,
    k: usize,
}

impl Decoder {
    /// Plans decoding from the given surviving nodes (exactly `k`, distinct,
    /// in range). Fails with [`CodeError::SingularNodeSet`] when the node
    /// set cannot decode, which signals a non-MDS spec.
    pub fn new(spec: &ZigzagCodeSpec, nodes: &[usize]) -> Result<Self, CodeError> {
        let k = spec.k();
        for &v in nodes {
            if v >= spec.n() {
                return Err(CodeError::NodeIndex { index: v, n: spec.n() });
            }
        }
        let mut distinct: Vec<usize> = nodes.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != k || nodes.len() != k {
            return Err(CodeError::WrongSurvivorCount { got: distinct.len(), expected: k });
        }
        let stacked = build_generator(spec).stacked_submatrix(nodes);
        let inverse = stacked.invert(spec.field()).ok_or(CodeError::SingularNodeSet {
            nodes: distinct,
        })?;
        Ok(Decoder { nodes: nodes.to_vec(), inverse, m: spec.m(), k })
    }

    /// The surviving nodes this decoder expects, in the order their columns
    /// must be supplied.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Recovers the `k` message blocks from the surviving columns (one per
    /// planned node, in planned order, each of length `M`).
    pub fn decode(&self, columns: &[&[FieldElem]], field: &FieldSpec) -> Result<Vec<Vec<FieldElem>>, CodeError> {
        let rows = 1usize << self.m;
        if columns.len() != self.nodes.len() || columns.iter().any(|c| c.len() != rows) {
            return Err(CodeError::ShapeMismatch { what: "surviving columns" });
        }
        let mut stacked = Vec::with_capacity(self.k * rows);
        for col in columns {
            stacked.extend_from_slice(col);
        }
        let solved = self.inverse.mul_vec(&stacked, field);
        Ok(solved.chunks(rows).map(<[FieldElem]>::to_vec).collect())
    }
}

/// One-shot decoding: reconstructs the message from any `k` surviving
/// columns of a codeword. `nodes` picks the columns; order is irrelevant to
/// the result.
pub fn decode_any_k(
    spec: &ZigzagCodeSpec,
    codeword: &Codeword,
    nodes: &[usize],
) -> Result<Vec<Vec<FieldElem>>, CodeError> {
    let decoder = Decoder::new(spec, nodes)?;
    let columns: Vec<&[FieldElem]> = nodes.iter().map(|&v| codeword.column(v)).collect();
    decoder.decode(&columns, spec.field())
}
