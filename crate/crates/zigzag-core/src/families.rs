//! Ready-made code families with low skip cost, plus the generic builder
//! they all reduce to.
//!
//! The generic builder takes a row ordering `tau`, a tuple of index-2
//! subgroups `(H_1, ..., H_t)` admitting separating witnesses
//! `(h_1, ..., h_t)`, and a repetition count `s`, and produces an
//! `(n, k, M) = (st + s + 1, st, 2^m)` code: parity 0 is unshifted (all-zero
//! label), and parity `b` (for `b` in `1..=s`) shifts the `b`-th block of `t`
//! systematic columns by `(h_1, ..., h_t)` and leaves the rest unshifted.
//! Repairing the column at position `i` of block `b` then uses parities
//! `(0, b)` with subgroup `H_i`; since parity 0 is unshifted, every helper
//! reads the same cheapest coset of `H_i`, so the repair's total skip cost is
//! `(k+1) * c(H_i; tau)`, bounded by `(k+1) * sigma` with
//! `sigma = max_i c(H_i; tau)`.
//!
//! Three instantiations have hand-picked orderings with small `sigma`:
//!
//! * [`construct_a1`] — `t = 2`, any `m >= 2`, lexicographic ordering,
//!   `sigma = 0`: repairs read only contiguous row ranges.
//! * [`construct_a2`] — `t = 3`, `m = 3`, `sigma = 1`.
//! * [`construct_a3`] — `t = 4`, `m = 4`, `sigma = 3`.
//!
//! [`shorten`] drops trailing systematic columns (up to `t - 1`) while
//! keeping the parity structure, covering the `k` values between multiples
//! of `t`. Finally, two fixed two-parity instances trade the generic
//! structure for specially tuned labels: [`construct_b1`], a `(6, 4, 8)`
//! code, and [`construct_b2`], a `(7, 5, 16)` code; their per-node repair
//! assignments are part of the construction data.

use alloc::vec::Vec;
use core::fmt;

use crate::code::{CodeError, ZigzagCodeSpec};
use crate::gf2w::{FieldError, FieldSpec};
use crate::group::{
    min_coset_cost, separating_witnesses, GroupElem, GroupError, RowOrder, Subgroup,
};
use crate::repair::{build_read_plan, ReadPlan, RepairError};

/// Errors from family construction or shortening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// A code-level failure.
    Code(CodeError),
    /// A group-level failure.
    Group(GroupError),
    /// A field-level failure.
    Field(FieldError),
    /// The subgroup tuple admits no separating witnesses.
    WitnessInfeasible,
    /// An explicitly supplied witness violates the separation property.
    BadWitness {
        /// Index of the offending witness.
        index: usize,
    },
    /// Repetition count `s` outside the family's range.
    BadRepetition {
        /// The rejected value.
        s: usize,
    },
    /// Group dimension outside the family's range.
    BadDimension {
        /// The rejected value.
        m: u32,
    },
    /// Shortening amount outside `0..block_size`.
    DropOutOfRange {
        /// Requested drop (including previous shortenings).
        drop: usize,
        /// Block size `t`; at most `t - 1` columns may be dropped in total.
        t: usize,
    },
    /// The code has no block structure to shorten against.
    NotShortenable,
    /// No field of supported width can host this many nodes.
    NoFieldFits {
        /// The required node count.
        n: usize,
    },
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::Code(e) => write!(f, "code error: {e}"),
            FamilyError::Group(e) => write!(f, "group error: {e}"),
            FamilyError::Field(e) => write!(f, "field error: {e}"),
            FamilyError::WitnessInfeasible => {
                write!(f, "subgroup tuple admits no separating witnesses")
            }
            FamilyError::BadWitness { index } => {
                write!(f, "witness {index} violates the separation property")
            }
            FamilyError::BadRepetition { s } => write!(f, "repetition count s={s} out of range"),
            FamilyError::BadDimension { m } => write!(f, "group dimension m={m} out of range"),
            FamilyError::DropOutOfRange { drop, t } => {
                write!(f, "cannot drop {drop} columns from blocks of size {t}")
            }
            FamilyError::NotShortenable => write!(f, "code has no block structure to shorten"),
            FamilyError::NoFieldFits { n } => {
                write!(f, "no supported field is large enough for {n} nodes")
            }
        }
    }
}

impl From<CodeError> for FamilyError {
    fn from(e: CodeError) -> Self {
        FamilyError::Code(e)
    }
}

impl From<GroupError> for FamilyError {
    fn from(e: GroupError) -> Self {
        FamilyError::Group(e)
    }
}

impl From<FieldError> for FamilyError {
    fn from(e: FieldError) -> Self {
        FamilyError::Field(e)
    }
}

/// The named catalog families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyId {
    /// Zero-skip family: `t = 2`, any `m >= 2`, `(3s+1, 2s, 2^m)`.
    A1,
    /// `t = 3`, `m = 3`, `(4s+1, 3s, 8)`, worst per-helper skip 1.
    A2,
    /// `t = 4`, `m = 4`, `(5s+1, 4s, 16)`, worst per-helper skip 3.
    A3,
    /// Fixed two-parity `(6, 4, 8)` instance.
    B1,
    /// Fixed two-parity `(7, 5, 16)` instance.
    B2,
}

impl FamilyId {
    /// Parses a family name, case-insensitively.
    pub fn parse(name: &str) -> Option<FamilyId> {
        match name.to_ascii_uppercase().as_str() {
            "A1" => Some(FamilyId::A1),
            "A2" => Some(FamilyId::A2),
            "A3" => Some(FamilyId::A3),
            "B1" => Some(FamilyId::B1),
            "B2" => Some(FamilyId::B2),
            _ => None,
        }
    }

    /// Canonical name.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::A1 => "A1",
            FamilyId::A2 => "A2",
            FamilyId::A3 => "A3",
            FamilyId::B1 => "B1",
            FamilyId::B2 => "B2",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters selecting one catalog instance.
#[derive(Debug, Clone)]
pub struct FamilyParams {
    /// Which family.
    pub family: FamilyId,
    /// Repetition count (A families; must be 1 for the fixed B instances).
    pub s: usize,
    /// Group dimension override (A1 only; defaults to 2).
    pub m: Option<u32>,
    /// Trailing systematic columns to drop (A families only).
    pub drop: usize,
    /// Field override; defaults to the smallest field fitting all nodes.
    pub field: Option<FieldSpec>,
}

impl FamilyParams {
    /// Parameters with family defaults: `s`, no shortening, default field.
    pub fn new(family: FamilyId, s: usize) -> Self {
        FamilyParams { family, s, m: None, drop: 0, field: None }
    }
}

/// The fixed repair assignment of one systematic node: which parity pair and
/// subgroup its read plan uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeAssignment {
    /// Parity indices `(s, t)`, `s < t`.
    pub parity_pair: (usize, usize),
    /// Subgroup whose cosets shape the reads.
    pub subgroup: Subgroup,
}

/// A code spec bundled with its construction data: the distinguished
/// subgroups, their witnesses and coset costs, the skip-cost bound, and the
/// per-node repair assignments the construction guarantees.
#[derive(Debug, Clone)]
pub struct ConstructedCode {
    spec: ZigzagCodeSpec,
    subgroups: Vec<Subgroup>,
    witnesses: Option<Vec<GroupElem>>,
    c_values: Vec<u32>,
    sigma: u32,
    node_assignments: Vec<NodeAssignment>,
    /// Block size `t` for block-structured families; `None` for the fixed
    /// two-parity instances (which cannot shorten).
    block_size: Option<usize>,
    /// Columns already removed by shortening.
    dropped: usize,
}

impl ConstructedCode {
    /// The underlying code spec.
    pub fn spec(&self) -> &ZigzagCodeSpec {
        &self.spec
    }

    /// The construction's distinguished subgroups: one per block position
    /// for block-structured families, one per systematic node for the fixed
    /// two-parity instances.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Separating witnesses, for block-structured families.
    pub fn witnesses(&self) -> Option<&[GroupElem]> {
        self.witnesses.as_deref()
    }

    /// `c(H_i; tau)` for each distinguished subgroup.
    pub fn c_values(&self) -> &[u32] {
        &self.c_values
    }

    /// Worst coset cost over the distinguished subgroups,
    /// `sigma = max_i c(H_i; tau)`.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Guaranteed bound on any single repair's total skip cost:
    /// `sigma * (k + 1)`.
    pub fn skip_bound(&self) -> u32 {
        self.sigma * (self.spec.k() as u32 + 1)
    }

    /// The fixed repair assignment of a systematic node.
    pub fn node_assignment(&self, failed: usize) -> &NodeAssignment {
        &self.node_assignments[failed]
    }

    /// Builds the read plan the construction prescribes for `failed`,
    /// bypassing the generic planner scan.
    pub fn repair_plan(&self, failed: usize) -> Result<ReadPlan, RepairError> {
        if failed >= self.spec.k() {
            return Err(RepairError::NotSystematic { node: failed });
        }
        let assignment = &self.node_assignments[failed];
        build_read_plan(&self.spec, failed, assignment.parity_pair, &assignment.subgroup)
    }
}

/// The smallest supported field able to host `n` distinct code parameters:
/// GF(2^w) with the least `w` such that `2^w >= n`, under the default
/// modulus.
pub fn default_field_for(n: usize) -> Result<FieldSpec, FamilyError> {
    let w = (1..=crate::gf2w::MAX_W)
        .find(|&w| (1usize << w) >= n)
        .ok_or(FamilyError::NoFieldFits { n })?;
    Ok(FieldSpec::with_default_modulus(w)?)
}

fn check_witnesses(subgroups: &[Subgroup], witnesses: &[GroupElem]) -> Result<(), FamilyError> {
    for (i, w) in witnesses.iter().enumerate() {
        let separated = !subgroups[i].contains(w)
            && subgroups.iter().enumerate().all(|(j, h)| j == i || h.contains(w));
        if !separated {
            return Err(FamilyError::BadWitness { index: i });
        }
    }
    Ok(())
}

/// Builds the block-structured `(st + s + 1, st, 2^m)` code from explicit
/// witnesses (which must separate the subgroup tuple). Parity 0 is
/// unshifted; parity `b` shifts block `b` by the witness tuple. Cauchy
/// parameters are the field's first `n` values.
pub fn construct_generic_with_witnesses(
    field: FieldSpec,
    tau: RowOrder,
    subgroups: Vec<Subgroup>,
    witnesses: Vec<GroupElem>,
    s: usize,
) -> Result<ConstructedCode, FamilyError> {
    let t = subgroups.len();
    let m = tau.m();
    if t == 0 || witnesses.len() != t {
        return Err(FamilyError::WitnessInfeasible);
    }
    if s == 0 {
        return Err(FamilyError::BadRepetition { s });
    }
    if subgroups.iter().any(|h| h.m() != m) || witnesses.iter().any(|w| w.m() != m) {
        return Err(FamilyError::BadDimension { m });
    }
    check_witnesses(&subgroups, &witnesses)?;

    let k = s * t;
    let zero = GroupElem::zero(m)?;
    let mut labels = Vec::with_capacity(s + 1);
    labels.push(alloc::vec![zero; k]);
    for b in 0..s {
        let mut row = alloc::vec![zero; k];
        row[b * t..(b + 1) * t].copy_from_slice(&witnesses);
        labels.push(row);
    }
    let spec = ZigzagCodeSpec::with_default_parameters(field, m, labels, tau)?;

    let c_values: Vec<u32> =
        subgroups.iter().map(|h| min_coset_cost(spec.ordering(), h).0).collect();
    let sigma = c_values.iter().copied().max().unwrap_or(0);
    let node_assignments = (0..k)
        .map(|j| NodeAssignment {
            parity_pair: (0, j / t + 1),
            subgroup: subgroups[j % t],
        })
        .collect();
    Ok(ConstructedCode {
        spec,
        subgroups,
        witnesses: Some(witnesses),
        c_values,
        sigma,
        node_assignments,
        block_size: Some(t),
        dropped: 0,
    })
}

/// Like [`construct_generic_with_witnesses`], choosing the smallest
/// separating witness for each subgroup automatically. Fails when the tuple
/// admits none.
pub fn construct_generic(
    field: FieldSpec,
    tau: RowOrder,
    subgroups: Vec<Subgroup>,
    s: usize,
) -> Result<ConstructedCode, FamilyError> {
    let witnesses = separating_witnesses(&subgroups).ok_or(FamilyError::WitnessInfeasible)?;
    construct_generic_with_witnesses(field, tau, subgroups, witnesses, s)
}

/// Drops the last `drop` systematic columns of a block-structured code,
/// keeping parities, rows, and ordering unchanged. At most `t - 1` columns
/// may be removed in total, so every block keeps at least one column. The
/// surviving nodes keep their repair assignments; each repair touches one
/// fewer helper, so skip costs can only shrink.
pub fn shorten(code: &ConstructedCode, drop: usize) -> Result<ConstructedCode, FamilyError> {
    if drop == 0 {
        return Ok(code.clone());
    }
    let t = code.block_size.ok_or(FamilyError::NotShortenable)?;
    let total = code.dropped + drop;
    if total > t - 1 {
        return Err(FamilyError::DropOutOfRange { drop: total, t });
    }
    let spec = &code.spec;
    let k = spec.k() - drop;
    let labels: Vec<Vec<GroupElem>> =
        spec.labels().iter().map(|row| row[..k].to_vec()).collect();
    let shortened = ZigzagCodeSpec::new(
        spec.field().clone(),
        spec.m(),
        labels,
        spec.alphas().to_vec(),
        spec.betas()[..k].to_vec(),
        spec.ordering().clone(),
    )?;
    Ok(ConstructedCode {
        spec: shortened,
        subgroups: code.subgroups.clone(),
        witnesses: code.witnesses.clone(),
        c_values: code.c_values.clone(),
        sigma: code.sigma,
        node_assignments: code.node_assignments[..k].to_vec(),
        block_size: code.block_size,
        dropped: total,
    })
}

/// Zero-skip family data at dimension `m`: lexicographic ordering with
/// `H_1 = {x1 = 0}` and `H_2 = {x1 = x2}`, whose cheaper cosets are both
/// contiguous. The witnesses are pinned to the all-ones vector and `e_2`
/// (valid at every `m`, though not always the smallest choice).
fn a1_data(m: u32) -> Result<(RowOrder, Vec<Subgroup>, Vec<GroupElem>), FamilyError> {
    if m < 2 {
        return Err(FamilyError::BadDimension { m });
    }
    let tau = RowOrder::lexicographic(m)?;
    let subgroups = alloc::vec![
        Subgroup::from_check(m, 1 << (m - 1))?,
        Subgroup::from_check(m, 0b11 << (m - 2))?,
    ];
    let witnesses = alloc::vec![
        GroupElem::new(m, ((1u32 << m) - 1) as u16)?, // all-ones
        GroupElem::new(m, 1 << (m - 2))?,             // e_2
    ];
    Ok((tau, subgroups, witnesses))
}

/// The `(3s+1, 2s, 2^m)` zero-skip family (`t = 2`): every repair reads only
/// contiguous row ranges under the lexicographic ordering.
pub fn construct_a1(m: u32, s: usize) -> Result<ConstructedCode, FamilyError> {
    construct_a1_with_field(m, s, default_field_for(3 * s + 1)?)
}

/// [`construct_a1`] with an explicit field.
pub fn construct_a1_with_field(
    m: u32,
    s: usize,
    field: FieldSpec,
) -> Result<ConstructedCode, FamilyError> {
    let (tau, subgroups, witnesses) = a1_data(m)?;
    construct_generic_with_witnesses(field, tau, subgroups, witnesses, s)
}

/// `t = 3` family data at `m = 3`: the eight-row ordering
/// `000,001,010,011,100,110,101,111` with subgroups `{x1=0}`, `{x1=x3}`,
/// `{x1=x2}`, achieving coset costs `(0, 1, 1)`.
fn a2_data() -> Result<(RowOrder, Vec<Subgroup>), FamilyError> {
    let tau = RowOrder::new(3, alloc::vec![0b000, 0b001, 0b010, 0b011, 0b100, 0b110, 0b101, 0b111])?;
    let subgroups = alloc::vec![
        Subgroup::from_check(3, 0b100)?,
        Subgroup::from_check(3, 0b101)?,
        Subgroup::from_check(3, 0b110)?,
    ];
    Ok((tau, subgroups))
}

/// The `(4s+1, 3s, 8)` family (`t = 3`, `m = 3`): worst per-helper skip 1,
/// so any repair's total skip cost is at most `k + 1`.
pub fn construct_a2(s: usize) -> Result<ConstructedCode, FamilyError> {
    construct_a2_with_field(s, default_field_for(4 * s + 1)?)
}

/// [`construct_a2`] with an explicit field.
pub fn construct_a2_with_field(s: usize, field: FieldSpec) -> Result<ConstructedCode, FamilyError> {
    let (tau, subgroups) = a2_data()?;
    construct_generic(field, tau, subgroups, s)
}

/// `t = 4` family data at `m = 4`: a sixteen-row ordering with subgroups
/// `{x1=x2}`, `{x1=x3}`, `{x1=x4}`, `{x1=0}`, achieving coset costs
/// `(3, 2, 2, 3)`.
fn a3_data() -> Result<(RowOrder, Vec<Subgroup>), FamilyError> {
    let tau = RowOrder::new(
        4,
        alloc::vec![
            0b1000, 0b1010, 0b1100, 0b1110, 0b0101, 0b0011, 0b1111, 0b1011, 0b0100, 0b0000,
            0b0001, 0b0010, 0b1101, 0b0110, 0b0111, 0b1001,
        ],
    )?;
    let subgroups = alloc::vec![
        Subgroup::from_check(4, 0b1100)?,
        Subgroup::from_check(4, 0b1010)?,
        Subgroup::from_check(4, 0b1001)?,
        Subgroup::from_check(4, 0b1000)?,
    ];
    Ok((tau, subgroups))
}

/// The `(5s+1, 4s, 16)` family (`t = 4`, `m = 4`): worst per-helper skip 3,
/// so any repair's total skip cost is at most `3(k + 1)`.
pub fn construct_a3(s: usize) -> Result<ConstructedCode, FamilyError> {
    construct_a3_with_field(s, default_field_for(5 * s + 1)?)
}

/// [`construct_a3`] with an explicit field.
pub fn construct_a3_with_field(s: usize, field: FieldSpec) -> Result<ConstructedCode, FamilyError> {
    let (tau, subgroups) = a3_data()?;
    construct_generic(field, tau, subgroups, s)
}

/// Assembles a fixed two-parity instance: unshifted first parity, explicit
/// second-parity label, and one prescribed subgroup per systematic node.
fn construct_two_parity(
    field: FieldSpec,
    m: u32,
    tau_bits: Vec<u16>,
    second_label_bits: Vec<u16>,
    node_checks: Vec<u16>,
) -> Result<ConstructedCode, FamilyError> {
    let k = second_label_bits.len();
    let tau = RowOrder::new(m, tau_bits)?;
    let zero = GroupElem::zero(m)?;
    let second: Vec<GroupElem> = second_label_bits
        .into_iter()
        .map(|bits| GroupElem::new(m, bits))
        .collect::<Result<_, _>>()?;
    let labels = alloc::vec![alloc::vec![zero; k], second];
    let spec = ZigzagCodeSpec::with_default_parameters(field, m, labels, tau)?;

    let subgroups: Vec<Subgroup> = node_checks
        .into_iter()
        .map(|check| Subgroup::from_check(m, check))
        .collect::<Result<_, _>>()?;
    let c_values: Vec<u32> =
        subgroups.iter().map(|h| min_coset_cost(spec.ordering(), h).0).collect();
    let sigma = c_values.iter().copied().max().unwrap_or(0);
    let node_assignments = subgroups
        .iter()
        .map(|&subgroup| NodeAssignment { parity_pair: (0, 1), subgroup })
        .collect();
    Ok(ConstructedCode {
        spec,
        subgroups,
        witnesses: None,
        c_values,
        sigma,
        node_assignments,
        block_size: None,
        dropped: 0,
    })
}

/// The fixed `(6, 4, 8)` two-parity code. Its second parity's label
/// `(000, 100, 110, 101)` and per-node subgroups `{x1=0}`,
/// `{x1+x2+x3=0}`, `{x2=0}`, `{x3=0}` give per-node repair skip totals
/// `(0, 5, 10, 10)`.
pub fn construct_b1() -> Result<ConstructedCode, FamilyError> {
    construct_two_parity(
        default_field_for(6)?,
        3,
        alloc::vec![0b001, 0b010, 0b011, 0b000, 0b100, 0b101, 0b110, 0b111],
        alloc::vec![0b000, 0b100, 0b110, 0b101],
        alloc::vec![0b100, 0b111, 0b010, 0b001],
    )
}

/// The fixed `(7, 5, 16)` two-parity code. Its second parity's label
/// `(0000, 0100, 0010, 0001, 1111)` and per-node subgroups give per-node
/// repair skip totals `(30, 6, 30, 30, 12)`.
pub fn construct_b2() -> Result<ConstructedCode, FamilyError> {
    construct_two_parity(
        default_field_for(7)?,
        4,
        alloc::vec![
            0b1000, 0b1101, 0b1110, 0b1111, 0b1100, 0b1011, 0b0000, 0b0001, 0b0010, 0b0011,
            0b0100, 0b0101, 0b0110, 0b1001, 0b1010, 0b0111,
        ],
        alloc::vec![0b0000, 0b0100, 0b0010, 0b0001, 0b1111],
        alloc::vec![0b0111, 0b1100, 0b1010, 0b1001, 0b1000],
    )
}

/// Builds one catalog instance from parameters, applying the field override
/// and shortening.
pub fn build_family(params: &FamilyParams) -> Result<ConstructedCode, FamilyError> {
    let field = params.field.clone();
    let code = match params.family {
        FamilyId::A1 => {
            let m = params.m.unwrap_or(2);
            match field {
                Some(f) => construct_a1_with_field(m, params.s, f)?,
                None => construct_a1(m, params.s)?,
            }
        }
        FamilyId::A2 => {
            if params.m.is_some_and(|m| m != 3) {
                return Err(FamilyError::BadDimension { m: params.m.unwrap() });
            }
            match field {
                Some(f) => construct_a2_with_field(params.s, f)?,
                None => construct_a2(params.s)?,
            }
        }
        FamilyId::A3 => {
            if params.m.is_some_and(|m| m != 4) {
                return Err(FamilyError::BadDimension { m: params.m.unwrap() });
            }
            match field {
                Some(f) => construct_a3_with_field(params.s, f)?,
                None => construct_a3(params.s)?,
            }
        }
        FamilyId::B1 | FamilyId::B2 => {
            if params.s != 1 {
                return Err(FamilyError::BadRepetition { s: params.s });
            }
            if params.m.is_some() || params.field.is_some() {
                return Err(FamilyError::BadDimension { m: params.m.unwrap_or(0) });
            }
            match params.family {
                FamilyId::B1 => construct_b1()?,
                _ => construct_b2()?,
            }
        }
    };
    shorten(&code, params.drop)
}

/// Worst-case repair costs of a constructed code, maximized over all
/// single-systematic-node failures using the construction's own plans. All
/// values are computed from fresh plans, never cached constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySummary {
    /// Total nodes.
    pub n: usize,
    /// Systematic nodes.
    pub k: usize,
    /// Rows per column.
    pub rows: usize,
    /// Guaranteed skip bound `sigma * (k + 1)`.
    pub skip_bound: u32,
    /// Worst observed total skip over all failed nodes.
    pub worst_total_skip: u32,
    /// Worst helper read fraction over all failed nodes.
    pub rebuilding_ratio: crate::Ratio64,
    /// Worst single-helper fragmentation over all failed nodes.
    pub rfr_per_helper: crate::Ratio64,
    /// Worst whole-array fragmentation over all failed nodes.
    pub rfr_def: crate::Ratio64,
}

/// Plans every single-node repair of `code` and aggregates the worst-case
/// metrics.
pub fn summarize(code: &ConstructedCode) -> Result<FamilySummary, RepairError> {
    let spec = code.spec();
    let mut worst_total = 0u32;
    let mut ratio = crate::Ratio64::new(0, 1);
    let mut rfr_helper = crate::Ratio64::new(0, 1);
    let mut rfr_def = crate::Ratio64::new(0, 1);
    for failed in 0..spec.k() {
        let plan = code.repair_plan(failed)?;
        let metrics = crate::repair::compute_metrics(spec, &plan);
        worst_total = worst_total.max(metrics.total_skip);
        ratio = ratio.max(metrics.rebuilding_ratio);
        rfr_helper = rfr_helper.max(metrics.rfr_per_helper);
        rfr_def = rfr_def.max(metrics.rfr_def);
    }
    Ok(FamilySummary {
        n: spec.n(),
        k: spec.k(),
        rows: spec.rows(),
        skip_bound: code.skip_bound(),
        worst_total_skip: worst_total,
        rebuilding_ratio: ratio,
        rfr_per_helper: rfr_helper,
        rfr_def,
    })
}
