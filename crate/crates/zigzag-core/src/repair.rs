//! Single-node repair: condition checking, read planning, execution, and
//! read-cost metrics.
//!
//! Repairing one systematic column `j` uses two parity columns `s`, `t` and
//! one index-2 subgroup `H`. Writing `u` and `v` for the two parities' label
//! tuples and `d_i = u_i + v_i`, the per-column difference `d_i` decides what
//! each parity "sees" of column `i` across the two cosets of `H`, and two
//! disjoint conditions make the repair work (checked by [`check_recovery`]):
//!
//! * **cross-coset** — `d_j` lies outside `H` while every other `d_i` lies
//!   inside. Reading rows of one coset `C` from both parities then recovers
//!   two *complementary* half-columns of `j` (the `d_j` jump crosses cosets),
//!   so every helper reads only rows derived from `C`.
//! * **same-coset** — `d_j` lies inside `H` while every other `d_i` lies
//!   outside. Both parities now recover the *same* half of column `j` from
//!   the same rows, so the second parity must read the complementary coset
//!   to contribute the other half.
//!
//! Either way each of the `k+1` helpers (the `k-1` surviving systematic
//! columns plus the two parities) reads exactly `M/2` rows. How cheap those
//! reads are on disk is the skip cost of the row sets under the code's row
//! ordering; [`plan_repair`] scans all parity pairs and subgroups for the
//! cheapest applicable plan, and [`compute_metrics`] reports the costs.

use alloc::vec::Vec;
use core::fmt;

use crate::code::{CodeError, Codeword, ZigzagCodeSpec};
use crate::gf2w::FieldElem;
use crate::group::{skip_cost, CosetSide, GroupElem, Subgroup};
use crate::Ratio64;

/// Errors from repair planning or execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepairError {
    /// A code-level failure.
    Code(CodeError),
    /// Repair plans cover systematic columns only; parity failures decode
    /// from any `k` nodes instead.
    NotSystematic {
        /// The offending node index.
        node: usize,
    },
    /// A parity pair index is out of range or not strictly ordered.
    BadParityPair {
        /// First parity index.
        s: usize,
        /// Second parity index.
        t: usize,
        /// Parity count.
        p: usize,
    },
    /// The chosen (pair, subgroup) combination satisfies neither recovery
    /// condition for this failed column.
    Inapplicable {
        /// Failed systematic column.
        failed: usize,
        /// The parity pair tried.
        pair: (usize, usize),
        /// Check vector of the subgroup tried.
        check: u16,
    },
    /// No (pair, subgroup) combination applies to this failed column.
    NoPlanFound {
        /// Failed systematic column.
        failed: usize,
    },
    /// The plan references a symbol it never scheduled for download.
    SymbolNotPlanned {
        /// Node the symbol lives on.
        node: usize,
        /// Row bits of the symbol.
        row: u16,
    },
    /// A plan and spec disagree structurally.
    PlanMismatch {
        /// What failed to line up.
        what: &'static str,
    },
}

impl fmt::Display for RepairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepairError::Code(e) => write!(f, "code error: {e}"),
            RepairError::NotSystematic { node } => {
                write!(f, "node {node} is a parity column; repair plans cover systematic columns")
            }
            RepairError::BadParityPair { s, t, p } => {
                write!(f, "parity pair ({s},{t}) invalid for {p} parities")
            }
            RepairError::Inapplicable { failed, pair, check } => write!(
                f,
                "pair ({},{}) with subgroup check {check:#b} satisfies no recovery condition for column {failed}",
                pair.0, pair.1
            ),
            RepairError::NoPlanFound { failed } => {
                write!(f, "no parity pair and subgroup can repair column {failed}")
            }
            RepairError::SymbolNotPlanned { node, row } => {
                write!(f, "repair needed node {node} row {row:#b}, which the plan never read")
            }
            RepairError::PlanMismatch { what } => write!(f, "plan does not match spec: {what}"),
        }
    }
}

impl From<CodeError> for RepairError {
    fn from(e: CodeError) -> Self {
        RepairError::Code(e)
    }
}

/// Which recovery condition a (parity pair, subgroup) combination satisfies
/// for a failed column. See the module docs for the read patterns each case
/// induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryCase {
    /// The failed column's label difference crosses cosets; all helpers read
    /// rows derived from one coset.
    CrossCoset,
    /// The failed column's label difference stays inside the subgroup; the
    /// second parity reads the complementary coset.
    SameCoset,
}

/// One helper's share of a read plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Helper {
    /// Node index of the helper.
    pub node: usize,
    /// Rows to read, listed in the code's physical row order.
    pub rows: Vec<GroupElem>,
}

/// A complete download schedule for repairing one systematic column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadPlan {
    failed: usize,
    parity_pair: (usize, usize),
    subgroup: Subgroup,
    case: RecoveryCase,
    helpers: Vec<Helper>,
}

impl ReadPlan {
    /// The failed systematic column.
    pub fn failed(&self) -> usize {
        self.failed
    }

    /// The parity indices `(s, t)` used, `s < t`, 0-based within parities.
    pub fn parity_pair(&self) -> (usize, usize) {
        self.parity_pair
    }

    /// The subgroup whose cosets shape the reads.
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Which recovery condition the plan relies on.
    pub fn case(&self) -> RecoveryCase {
        self.case
    }

    /// All helpers with their row sets: the surviving systematic columns in
    /// ascending order, then parity `s`, then parity `t`.
    pub fn helpers(&self) -> &[Helper] {
        &self.helpers
    }

    /// The helper entry for a node, if that node participates.
    pub fn helper(&self, node: usize) -> Option<&Helper> {
        self.helpers.iter().find(|h| h.node == node)
    }
}

/// Decides which recovery condition, if any, the subgroup `h` satisfies for
/// failed column `j` under the parity labels `u` (parity s) and `v` (parity
/// t). With `d_i = u_i + v_i`: cross-coset iff `d_j` is outside `h` and every
/// other `d_i` inside; same-coset iff `d_j` is inside and every other `d_i`
/// outside; `None` otherwise.
pub fn check_recovery(
    u: &[GroupElem],
    v: &[GroupElem],
    failed: usize,
    h: &Subgroup,
) -> Option<RecoveryCase> {
    debug_assert_eq!(u.len(), v.len(), "label tuples of different lengths");
    debug_assert!(failed < u.len(), "failed column outside labels");
    let inside = |i: usize| h.contains(&u[i].add(&v[i]));
    if !inside(failed) && (0..u.len()).all(|i| i == failed || inside(i)) {
        Some(RecoveryCase::CrossCoset)
    } else if inside(failed) && (0..u.len()).all(|i| i == failed || !inside(i)) {
        Some(RecoveryCase::SameCoset)
    } else {
        None
    }
}

/// Rows of the coset `base_side + shift` of `h`, in physical order.
fn shifted_coset_rows(
    spec: &ZigzagCodeSpec,
    h: &Subgroup,
    base_side: CosetSide,
    shift: &GroupElem,
) -> Vec<GroupElem> {
    let side = if h.contains(shift) { base_side } else { base_side.flip() };
    crate::group::coset_rows(spec.ordering(), h, side)
}

/// Builds the download schedule for repairing `failed` with parity pair
/// `(s, t)` and subgroup `h`, reading the cheaper coset of `h` as the base
/// (ties prefer the subgroup itself). Fails if the combination satisfies
/// neither recovery condition.
pub fn build_read_plan(
    spec: &ZigzagCodeSpec,
    failed: usize,
    parity_pair: (usize, usize),
    h: &Subgroup,
) -> Result<ReadPlan, RepairError> {
    let (s, t) = parity_pair;
    if failed >= spec.k() {
        return Err(RepairError::NotSystematic { node: failed });
    }
    if s >= t || t >= spec.p() {
        return Err(RepairError::BadParityPair { s, t, p: spec.p() });
    }
    if h.m() != spec.m() {
        return Err(RepairError::PlanMismatch { what: "subgroup dimension" });
    }
    let u = spec.label(s);
    let v = spec.label(t);
    let case = check_recovery(u, v, failed, h).ok_or(RepairError::Inapplicable {
        failed,
        pair: parity_pair,
        check: h.check(),
    })?;

    let (_, base_side) = crate::group::min_coset_cost(spec.ordering(), h);
    let zero = GroupElem::zero(spec.m()).expect("valid m");
    let mut helpers = Vec::with_capacity(spec.k() + 1);
    for i in (0..spec.k()).filter(|&i| i != failed) {
        // Parity s reads base rows g; the term it sees of column i sits at
        // g + u_i, so helper i serves the base coset translated by u_i.
        helpers.push(Helper { node: i, rows: shifted_coset_rows(spec, h, base_side, &u[i]) });
    }
    helpers.push(Helper {
        node: spec.k() + s,
        rows: shifted_coset_rows(spec, h, base_side, &zero),
    });
    let t_side = match case {
        RecoveryCase::CrossCoset => base_side,
        RecoveryCase::SameCoset => base_side.flip(),
    };
    helpers.push(Helper { node: spec.k() + t, rows: shifted_coset_rows(spec, h, t_side, &zero) });

    debug_assert_eq!(helpers.len(), spec.k() + 1);
    debug_assert!(helpers.iter().all(|h| h.rows.len() == spec.rows() / 2));
    Ok(ReadPlan { failed, parity_pair, subgroup: *h, case, helpers })
}

/// Sum of the helpers' skip costs under the spec's row ordering.
pub fn total_skip(spec: &ZigzagCodeSpec, plan: &ReadPlan) -> u32 {
    plan.helpers.iter().map(|h| skip_cost(spec.ordering(), &h.rows)).sum()
}

/// Finds the cheapest repair plan for `failed` by scanning every parity pair
/// `(s, t)` with `s < t` (in lexicographic order) and every index-2 subgroup
/// (in check-vector order), keeping the applicable plan with the smallest
/// total skip cost; ties resolve to the earliest in scan order. The scan is
/// exhaustive, so the result is deterministic.
pub fn plan_repair(spec: &ZigzagCodeSpec, failed: usize) -> Result<ReadPlan, RepairError> {
    if failed >= spec.k() {
        return Err(RepairError::NotSystematic { node: failed });
    }
    let subgroups = Subgroup::all(spec.m()).expect("valid m");
    let mut best: Option<(u32, ReadPlan)> = None;
    for s in 0..spec.p() {
        for t in (s + 1)..spec.p() {
            for h in &subgroups {
                if check_recovery(spec.label(s), spec.label(t), failed, h).is_none() {
                    continue;
                }
                let plan = build_read_plan(spec, failed, (s, t), h)
                    .expect("checked applicable above");
                let cost = total_skip(spec, &plan);
                if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                    best = Some((cost, plan));
                }
            }
        }
    }
    best.map(|(_, plan)| plan).ok_or(RepairError::NoPlanFound { failed })
}

/// Reconstructs the failed column from helper data, reading *only* the
/// symbols the plan scheduled. Each parity read, minus its known systematic
/// terms, isolates one symbol of the failed column, which division by the
/// parity's coefficient then recovers. Returns the column indexed by row
/// bits; referencing a symbol the plan never scheduled is an error, so a
/// passing run certifies the plan is self-sufficient.
pub fn execute_repair(
    spec: &ZigzagCodeSpec,
    codeword: &Codeword,
    plan: &ReadPlan,
) -> Result<Vec<FieldElem>, RepairError> {
    let rows = spec.rows();
    if codeword.n() != spec.n() || codeword.rows() != rows {
        return Err(RepairError::PlanMismatch { what: "codeword shape" });
    }
    if plan.failed >= spec.k()
        || plan.parity_pair.1 >= spec.p()
        || plan.helpers.iter().any(|h| h.node >= spec.n())
    {
        return Err(RepairError::PlanMismatch { what: "plan indices" });
    }

    // Stage exactly the planned symbols; everything else stays unreadable.
    let mut staged: Vec<Option<Vec<Option<FieldElem>>>> = alloc::vec![None; spec.n()];
    for helper in &plan.helpers {
        let slot = staged[helper.node].get_or_insert_with(|| alloc::vec![None; rows]);
        for g in &helper.rows {
            slot[g.bits() as usize] = Some(codeword.get(helper.node, g));
        }
    }
    let read = |node: usize, g: &GroupElem| -> Result<FieldElem, RepairError> {
        staged[node]
            .as_ref()
            .and_then(|col| col[g.bits() as usize])
            .ok_or(RepairError::SymbolNotPlanned { node, row: g.bits() })
    };

    let field = spec.field();
    let j = plan.failed;
    let (s, t) = plan.parity_pair;
    let mut recovered: Vec<Option<FieldElem>> = alloc::vec![None; rows];
    for (parity, labels) in [(s, spec.label(s)), (t, spec.label(t))] {
        let parity_node = spec.k() + parity;
        let coeff_j = spec.coeff(parity, j);
        let helper = plan
            .helper(parity_node)
            .ok_or(RepairError::PlanMismatch { what: "parity helper missing" })?;
        for g in &helper.rows {
            // parity[g] = sum_i coeff_i * a_i[g + u_i]; all terms but column
            // j's are staged, so the difference isolates a_j[g + u_j].
            let mut acc = read(parity_node, g)?;
            for i in (0..spec.k()).filter(|&i| i != j) {
                let row = g.add(&labels[i]);
                acc ^= field.mul(spec.coeff(parity, i), read(i, &row)?);
            }
            let target = g.add(&labels[j]);
            let value = field.div(acc, coeff_j).expect("coefficients are nonzero");
            let slot = &mut recovered[target.bits() as usize];
            if slot.is_some() {
                return Err(RepairError::PlanMismatch { what: "row recovered twice" });
            }
            *slot = Some(value);
        }
    }
    recovered
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(RepairError::PlanMismatch { what: "rows left unrecovered" })
}

/// Per-helper read size and skip cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperCost {
    /// Helper node index.
    pub node: usize,
    /// Number of rows the helper reads.
    pub rows_read: usize,
    /// Rows skipped inside the helper's read span.
    pub skip: u32,
}

/// Read-cost summary of one plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairMetrics {
    /// Per-helper read sizes and skip costs, in plan helper order.
    pub per_helper: Vec<HelperCost>,
    /// Sum of all helpers' skip costs.
    pub total_skip: u32,
    /// Worst helper's fraction of its column read: `max rows_read / M`.
    pub rebuilding_ratio: Ratio64,
    /// Fragmentation averaged over the whole array:
    /// `sum (rows_read + skip) / (n * M)`.
    pub rfr_def: Ratio64,
    /// Worst single helper's fragmentation: `max (rows_read + skip) / M`.
    pub rfr_per_helper: Ratio64,
}

/// Computes all read-cost metrics of a plan under the spec's row ordering.
pub fn compute_metrics(spec: &ZigzagCodeSpec, plan: &ReadPlan) -> RepairMetrics {
    let order = spec.ordering();
    let per_helper: Vec<HelperCost> = plan
        .helpers
        .iter()
        .map(|h| HelperCost {
            node: h.node,
            rows_read: h.rows.len(),
            skip: skip_cost(order, &h.rows),
        })
        .collect();
    let m_rows = spec.rows() as u64;
    let total_skip = per_helper.iter().map(|h| h.skip).sum();
    let max_read = per_helper.iter().map(|h| h.rows_read).max().unwrap_or(0) as u64;
    let max_frag =
        per_helper.iter().map(|h| h.rows_read as u64 + h.skip as u64).max().unwrap_or(0);
    let sum_frag: u64 = per_helper.iter().map(|h| h.rows_read as u64 + h.skip as u64).sum();
    RepairMetrics {
        per_helper,
        total_skip,
        rebuilding_ratio: Ratio64::new(max_read, m_rows),
        rfr_def: Ratio64::new(sum_frag, spec.n() as u64 * m_rows),
        rfr_per_helper: Ratio64::new(max_frag, m_rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::encode;
    use crate::gf2w::FieldSpec;
    use crate::group::RowOrder;
    use alloc::vec;
    use proptest::prelude::*;

    fn ge(m: u32, bits: u16) -> GroupElem {
        GroupElem::new(m, bits).unwrap()
    }

    /// The (7,4,4) code over GF(8): first parity unshifted, second and third
    /// parities shifting disjoint column pairs by (11, 01).
    fn example_spec() -> ZigzagCodeSpec {
        let field = FieldSpec::new(3, 0xB).unwrap();
        let labels = vec![
            vec![ge(2, 0b00); 4],
            vec![ge(2, 0b11), ge(2, 0b01), ge(2, 0b00), ge(2, 0b00)],
            vec![ge(2, 0b00), ge(2, 0b00), ge(2, 0b11), ge(2, 0b01)],
        ];
        ZigzagCodeSpec::new(
            field,
            2,
            labels,
            vec![0, 1, 2],
            vec![4, 3, 6, 7],
            RowOrder::lexicographic(2).unwrap(),
        )
        .unwrap()
    }

    fn rows_bits(helper: &Helper) -> Vec<u16> {
        helper.rows.iter().map(GroupElem::bits).collect()
    }

    #[test]
    fn recovery_conditions_are_mutually_exclusive_and_correct() {
        let spec = example_spec();
        let u = spec.label(0);
        let v = spec.label(1);
        // d = (11, 01, 00, 00). For failed column 1: subgroup {00,11}
        // (check 11) contains d_0 and the zero d's but not d_1.
        let h11 = Subgroup::from_check(2, 0b11).unwrap();
        assert_eq!(check_recovery(u, v, 1, &h11), Some(RecoveryCase::CrossCoset));
        // For failed column 0: subgroup {00,01} (check 10) contains d_1 and
        // the zero d's but not d_0.
        let h10 = Subgroup::from_check(2, 0b10).unwrap();
        assert_eq!(check_recovery(u, v, 0, &h10), Some(RecoveryCase::CrossCoset));
        // Check 01 satisfies neither condition for failed column 0.
        let h01 = Subgroup::from_check(2, 0b01).unwrap();
        assert_eq!(check_recovery(u, v, 0, &h01), None);
    }

    #[test]
    fn same_coset_case_from_the_two_parity_catalog_labels() {
        // Labels of the (6,4,8) two-parity code: u all-zero,
        // v = (000, 100, 110, 101). Failed column 0 with H = {x1=0}:
        // d_0 = 000 inside, d_1..d_3 all have x1 = 1, outside.
        let u: Vec<GroupElem> = vec![ge(3, 0); 4];
        let v = vec![ge(3, 0b000), ge(3, 0b100), ge(3, 0b110), ge(3, 0b101)];
        let h = Subgroup::from_check(3, 0b100).unwrap();
        assert_eq!(check_recovery(&u, &v, 0, &h), Some(RecoveryCase::SameCoset));
        // Failed column 1 with H = {x1+x2+x3=0}: d_1 = 100 outside, the
        // rest inside (000, 110, 101 all have even total parity).
        let h2 = Subgroup::from_check(3, 0b111).unwrap();
        assert_eq!(check_recovery(&u, &v, 1, &h2), Some(RecoveryCase::CrossCoset));
    }

    #[test]
    fn identical_labels_are_inapplicable_for_k_at_least_two() {
        let u = vec![ge(2, 0b10), ge(2, 0b01)];
        for check in 1..4u16 {
            let h = Subgroup::from_check(2, check).unwrap();
            assert_eq!(check_recovery(&u, &u, 0, &h), None);
            assert_eq!(check_recovery(&u, &u, 1, &h), None);
        }
    }

    #[test]
    fn planner_reproduces_the_documented_plan_for_second_column() {
        // Failed a2: helpers a1, a3, a4, p1, p2 each read rows {01, 10}.
        let spec = example_spec();
        let plan = plan_repair(&spec, 1).unwrap();
        assert_eq!(plan.parity_pair(), (0, 1));
        assert_eq!(plan.subgroup().check(), 0b11);
        assert_eq!(plan.case(), RecoveryCase::CrossCoset);
        let nodes: Vec<usize> = plan.helpers().iter().map(|h| h.node).collect();
        assert_eq!(nodes, vec![0, 2, 3, 4, 5]);
        for helper in plan.helpers() {
            assert_eq!(rows_bits(helper), vec![0b01, 0b10], "node {}", helper.node);
        }
        assert_eq!(total_skip(&spec, &plan), 0);
    }

    #[test]
    fn planner_reproduces_the_documented_plan_for_first_column() {
        // Failed a1: every helper reads rows {00, 01}.
        let spec = example_spec();
        let plan = plan_repair(&spec, 0).unwrap();
        assert_eq!(plan.parity_pair(), (0, 1));
        assert_eq!(plan.subgroup().check(), 0b10);
        let nodes: Vec<usize> = plan.helpers().iter().map(|h| h.node).collect();
        assert_eq!(nodes, vec![1, 2, 3, 4, 5]);
        for helper in plan.helpers() {
            assert_eq!(rows_bits(helper), vec![0b00, 0b01], "node {}", helper.node);
        }
        assert_eq!(total_skip(&spec, &plan), 0);
    }

    #[test]
    fn all_four_columns_plan_with_zero_skip() {
        let spec = example_spec();
        for failed in 0..4 {
            let plan = plan_repair(&spec, failed).unwrap();
            assert_eq!(total_skip(&spec, &plan), 0, "failed {failed}");
            assert_eq!(plan.helpers().len(), 5);
            for helper in plan.helpers() {
                assert_eq!(helper.rows.len(), 2);
            }
        }
    }

    #[test]
    fn parity_failures_are_rejected_by_the_planner() {
        let spec = example_spec();
        assert_eq!(plan_repair(&spec, 4).unwrap_err(), RepairError::NotSystematic { node: 4 });
        assert!(matches!(
            build_read_plan(&spec, 0, (1, 1), &Subgroup::from_check(2, 1).unwrap()),
            Err(RepairError::BadParityPair { .. })
        ));
    }

    #[test]
    fn inapplicable_combinations_are_rejected_with_context() {
        let spec = example_spec();
        let h = Subgroup::from_check(2, 0b01).unwrap();
        assert_eq!(
            build_read_plan(&spec, 0, (0, 1), &h).unwrap_err(),
            RepairError::Inapplicable { failed: 0, pair: (0, 1), check: 0b01 }
        );
    }

    #[test]
    fn repair_recovers_the_erased_column_exactly() {
        use rand::{Rng, SeedableRng};
        let spec = example_spec();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacc);
        for failed in 0..4usize {
            let plan = plan_repair(&spec, failed).unwrap();
            for _ in 0..100 {
                let message: Vec<Vec<u16>> = (0..4)
                    .map(|_| (0..4).map(|_| rng.gen_range(0..8u16)).collect())
                    .collect();
                let cw = encode(&spec, &message).unwrap();
                let recovered = execute_repair(&spec, &cw, &plan).unwrap();
                assert_eq!(&recovered, cw.column(failed), "failed {failed}");
            }
        }
    }

    #[test]
    fn repair_never_touches_unplanned_symbols() {
        // Poison the failed column and every row outside the planned sets;
        // the result must not change.
        let spec = example_spec();
        let message =
            vec![vec![1, 2, 3, 4], vec![5, 6, 7, 1], vec![2, 4, 6, 3], vec![7, 5, 3, 1]];
        let cw = encode(&spec, &message).unwrap();
        for failed in 0..4usize {
            let plan = plan_repair(&spec, failed).unwrap();
            let clean = execute_repair(&spec, &cw, &plan).unwrap();

            let mut columns: Vec<Vec<u16>> =
                (0..spec.n()).map(|v| cw.column(v).to_vec()).collect();
            for (node, column) in columns.iter_mut().enumerate() {
                let planned = plan.helper(node);
                for bits in 0..4u16 {
                    let keep = planned
                        .is_some_and(|h| h.rows.iter().any(|g| g.bits() == bits));
                    if !keep {
                        column[bits as usize] ^= 0b101; // arbitrary corruption
                    }
                }
            }
            let poisoned = Codeword::from_columns(2, columns).unwrap();
            let recovered = execute_repair(&spec, &poisoned, &plan).unwrap();
            assert_eq!(recovered, clean, "failed {failed}");
        }
    }

    #[test]
    fn zero_codeword_repairs_to_zero() {
        let spec = example_spec();
        let cw = encode(&spec, &vec![vec![0; 4]; 4]).unwrap();
        let plan = plan_repair(&spec, 2).unwrap();
        assert_eq!(execute_repair(&spec, &cw, &plan).unwrap(), vec![0; 4]);
    }

    #[test]
    fn metrics_for_the_zero_skip_plan() {
        let spec = example_spec();
        let plan = plan_repair(&spec, 1).unwrap();
        let metrics = compute_metrics(&spec, &plan);
        assert_eq!(metrics.total_skip, 0);
        assert_eq!(metrics.rebuilding_ratio, Ratio64::new(1, 2));
        assert_eq!(metrics.rfr_per_helper, Ratio64::new(1, 2));
        // Five helpers, each reading 2 rows with no skips: 10 / (7*4).
        assert_eq!(metrics.rfr_def, Ratio64::new(5, 14));
        assert!(metrics.per_helper.iter().all(|h| h.rows_read == 2 && h.skip == 0));
    }

    proptest! {
        #[test]
        fn repair_matches_the_erased_column_on_random_messages(
            failed in 0usize..4,
            message in proptest::collection::vec(
                proptest::collection::vec(0u16..8, 4),
                4,
            ),
        ) {
            let spec = example_spec();
            let plan = plan_repair(&spec, failed).unwrap();
            let cw = encode(&spec, &message).unwrap();
            let recovered = execute_repair(&spec, &cw, &plan).unwrap();
            prop_assert_eq!(&recovered, cw.column(failed));
        }

        #[test]
        fn metrics_invariants_hold(failed in 0usize..4) {
            let spec = example_spec();
            let plan = plan_repair(&spec, failed).unwrap();
            let metrics = compute_metrics(&spec, &plan);
            // Every helper reads exactly half its column.
            prop_assert_eq!(metrics.rebuilding_ratio, Ratio64::new(1, 2));
            // Worst-helper fragmentation is bounded below by the ratio.
            prop_assert!(metrics.rfr_per_helper >= metrics.rebuilding_ratio);
            let sum: u32 = metrics.per_helper.iter().map(|h| h.skip).sum();
            prop_assert_eq!(metrics.total_skip, sum);
        }
    }
}
