//! The row group Z_2^m: binary m-tuples under XOR, its index-2 subgroups,
//! orderings of its elements, and the skip cost those orderings induce.
//!
//! Array-code rows are indexed by elements of Z_2^m. A repair plan reads, from
//! each helper, the rows belonging to one coset of an index-2 subgroup; when
//! those rows are not contiguous under the physical row ordering, the gap rows
//! inside the span are "skipped" — seeked over rather than streamed. The
//! [`skip_cost`] of a row set counts exactly those gap rows, and
//! [`min_coset_cost`] minimizes it over the two cosets of a subgroup.
//!
//! Conventions used throughout:
//!
//! * An element `(x_1, ..., x_m)` is stored with `x_1` as the most significant
//!   of the low `m` bits. Reading a bit string left to right therefore matches
//!   reading `x_1..x_m`, and integer order on the stored bits equals
//!   lexicographic order on bit strings.
//! * An index-2 subgroup is named by a nonzero check vector `c`: the subgroup
//!   is the kernel of `g -> parity(g & c)`. The `2^m - 1` nonzero check
//!   vectors enumerate all index-2 subgroups exactly once.

use alloc::vec::Vec;
use core::fmt;

/// Largest supported group dimension; element bits must fit in a `u16`.
pub const MAX_M: u32 = 16;

/// Errors from group, subgroup, and ordering construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// `m` outside `1..=16`.
    DimensionOutOfRange {
        /// The rejected dimension.
        m: u32,
    },
    /// A check vector was zero or had bits outside the group.
    InvalidCheck {
        /// The rejected check vector.
        check: u16,
    },
    /// A claimed ordering is not a permutation of the group.
    NotAPermutation {
        /// First value found duplicated or out of range.
        offender: u16,
    },
    /// Ordering length does not match the group size.
    WrongLength {
        /// The provided length.
        got: usize,
        /// The group size `2^m`.
        expected: usize,
    },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::DimensionOutOfRange { m } => {
                write!(f, "group dimension m={m} outside supported range 1..=16")
            }
            GroupError::InvalidCheck { check } => {
                write!(f, "check vector {check:#b} is zero or outside the group")
            }
            GroupError::NotAPermutation { offender } => {
                write!(f, "ordering repeats or exceeds the group: value {offender}")
            }
            GroupError::WrongLength { got, expected } => {
                write!(f, "ordering has {got} entries, group has {expected}")
            }
        }
    }
}

fn check_dimension(m: u32) -> Result<(), GroupError> {
    if m == 0 || m > MAX_M {
        Err(GroupError::DimensionOutOfRange { m })
    } else {
        Ok(())
    }
}

/// Parity of the number of set bits, as 0 or 1.
fn parity(x: u16) -> u16 {
    (x.count_ones() & 1) as u16
}

/// An element of Z_2^m. Carries its dimension so bit strings render at the
/// right width and mixed-dimension arithmetic is caught in debug builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    m: u8,
    bits: u16,
}

impl GroupElem {
    /// Element of Z_2^m with the given coordinate bits (`x_1` most
    /// significant).
    pub fn new(m: u32, bits: u16) -> Result<Self, GroupError> {
        check_dimension(m)?;
        if (bits as u32) >> m != 0 {
            return Err(GroupError::InvalidCheck { check: bits });
        }
        Ok(GroupElem { m: m as u8, bits })
    }

    /// The identity element (all coordinates zero).
    pub fn zero(m: u32) -> Result<Self, GroupError> {
        Self::new(m, 0)
    }

    /// Dimension `m`.
    pub fn m(&self) -> u32 {
        self.m as u32
    }

    /// The coordinate bits, `x_1` most significant.
    pub fn bits(&self) -> u16 {
        self.bits
    }

    /// Coordinate `x_i` for `i` in `1..=m`, as 0 or 1.
    pub fn coordinate(&self, i: u32) -> u16 {
        debug_assert!(i >= 1 && i <= self.m as u32);
        (self.bits >> (self.m as u32 - i)) & 1
    }

    /// Group operation: coordinate-wise XOR. Every element is its own
    /// inverse.
    pub fn add(&self, other: &GroupElem) -> GroupElem {
        debug_assert_eq!(self.m, other.m, "elements from different groups");
        GroupElem { m: self.m, bits: self.bits ^ other.bits }
    }

    /// All `2^m` elements in increasing bit order (equivalently, in
    /// lexicographic order of their bit strings).
    pub fn all(m: u32) -> Result<Vec<GroupElem>, GroupError> {
        check_dimension(m)?;
        Ok((0..1u32 << m).map(|bits| GroupElem { m: m as u8, bits: bits as u16 }).collect())
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.m as u32 {
            write!(f, "{}", self.coordinate(i))?;
        }
        Ok(())
    }
}

/// An index-2 subgroup of Z_2^m, named by its nonzero check vector: the
/// subgroup is `{ g : parity(g & check) = 0 }`, and its complement is the
/// other coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    m: u8,
    check: u16,
}

impl Subgroup {
    /// Subgroup of Z_2^m with the given check vector (`x_1` bit most
    /// significant). The check must be nonzero and fit in `m` bits.
    pub fn from_check(m: u32, check: u16) -> Result<Self, GroupError> {
        check_dimension(m)?;
        if check == 0 || (check as u32) >> m != 0 {
            return Err(GroupError::InvalidCheck { check });
        }
        Ok(Subgroup { m: m as u8, check })
    }

    /// Dimension of the ambient group.
    pub fn m(&self) -> u32 {
        self.m as u32
    }

    /// The defining check vector.
    pub fn check(&self) -> u16 {
        self.check
    }

    /// Membership test: `g` lies in the subgroup iff `g & check` has even
    /// parity.
    pub fn contains(&self, g: &GroupElem) -> bool {
        debug_assert_eq!(self.m, g.m, "element from a different group");
        parity(g.bits & self.check) == 0
    }

    /// The `2^(m-1)` subgroup elements in increasing bit order.
    pub fn elements(&self) -> Vec<GroupElem> {
        self.coset(CosetSide::Subgroup)
    }

    /// The elements of one coset, in increasing bit order.
    pub fn coset(&self, side: CosetSide) -> Vec<GroupElem> {
        let want_odd = matches!(side, CosetSide::Complement);
        (0..1u32 << self.m)
            .map(|bits| GroupElem { m: self.m, bits: bits as u16 })
            .filter(|g| (parity(g.bits & self.check) == 1) == want_odd)
            .collect()
    }

    /// All `2^m - 1` index-2 subgroups, in increasing check-vector order.
    pub fn all(m: u32) -> Result<Vec<Subgroup>, GroupError> {
        check_dimension(m)?;
        Ok((1..1u32 << m).map(|check| Subgroup { m: m as u8, check: check as u16 }).collect())
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Render the defining equation, e.g. "{x1+x3=0}".
        write!(f, "{{")?;
        let mut first = true;
        for i in 1..=self.m as u32 {
            if (self.check >> (self.m as u32 - i)) & 1 == 1 {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "x{i}")?;
                first = false;
            }
        }
        write!(f, "=0}}")
    }
}

/// Which of the two cosets of an index-2 subgroup is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosetSide {
    /// The subgroup itself (even parity against the check vector).
    Subgroup,
    /// The other coset (odd parity).
    Complement,
}

impl CosetSide {
    /// The coset containing `g` with respect to `h`.
    pub fn of(h: &Subgroup, g: &GroupElem) -> CosetSide {
        if h.contains(g) {
            CosetSide::Subgroup
        } else {
            CosetSide::Complement
        }
    }

    /// The other coset.
    pub fn flip(self) -> CosetSide {
        match self {
            CosetSide::Subgroup => CosetSide::Complement,
            CosetSide::Complement => CosetSide::Subgroup,
        }
    }
}

/// A total ordering of the `2^m` rows: a permutation of Z_2^m giving each
/// element a physical position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOrder {
    m: u8,
    /// Element bits in physical order: `seq[pos]` is the element at `pos`.
    seq: Vec<u16>,
    /// Inverse permutation: `index[bits]` is the 0-based position of `bits`.
    index: Vec<u16>,
}

impl RowOrder {
    /// Ordering given by element bits in physical order. Must be a
    /// permutation of `0..2^m`.
    pub fn new(m: u32, seq: Vec<u16>) -> Result<Self, GroupError> {
        check_dimension(m)?;
        let size = 1usize << m;
        if seq.len() != size {
            return Err(GroupError::WrongLength { got: seq.len(), expected: size });
        }
        let mut index = alloc::vec![u16::MAX; size];
        for (pos, &bits) in seq.iter().enumerate() {
            if bits as usize >= size || index[bits as usize] != u16::MAX {
                return Err(GroupError::NotAPermutation { offender: bits });
            }
            index[bits as usize] = pos as u16;
        }
        Ok(RowOrder { m: m as u8, seq, index })
    }

    /// The identity ordering: elements in increasing bit order, which is
    /// lexicographic order of their bit strings.
    pub fn lexicographic(m: u32) -> Result<Self, GroupError> {
        check_dimension(m)?;
        let seq: Vec<u16> = (0..1u32 << m).map(|b| b as u16).collect();
        Self::new(m, seq)
    }

    /// Dimension of the underlying group.
    pub fn m(&self) -> u32 {
        self.m as u32
    }

    /// Number of rows, `2^m`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    /// Always false; the group is never empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The element at 0-based physical position `pos`.
    pub fn elem_at(&self, pos: usize) -> GroupElem {
        GroupElem { m: self.m, bits: self.seq[pos] }
    }

    /// 0-based physical position of `g`.
    pub fn index_of(&self, g: &GroupElem) -> usize {
        debug_assert_eq!(self.m, g.m, "element from a different group");
        self.index[g.bits as usize] as usize
    }

    /// 1-based rank of `g` (first physical row is position 1).
    pub fn position(&self, g: &GroupElem) -> usize {
        self.index_of(g) + 1
    }

    /// Elements in physical order.
    pub fn iter(&self) -> impl Iterator<Item = GroupElem> + '_ {
        self.seq.iter().map(|&bits| GroupElem { m: self.m, bits })
    }

    /// Underlying permutation as element bits in physical order.
    pub fn as_bits(&self) -> &[u16] {
        &self.seq
    }
}

/// Number of rows skipped when streaming the given row set under this
/// ordering: the rows inside the set's positional span that do not belong to
/// the set. Equals `max_pos - min_pos - (count - 1)`. Panics on an empty set.
pub fn skip_cost(order: &RowOrder, rows: &[GroupElem]) -> u32 {
    assert!(!rows.is_empty(), "skip cost of an empty row set is undefined");
    let mut min = usize::MAX;
    let mut max = 0usize;
    for g in rows {
        let pos = order.index_of(g);
        min = min.min(pos);
        max = max.max(pos);
    }
    (max - min - (rows.len() - 1)) as u32
}

/// Skip cost of one coset of `h` under `order`.
pub fn coset_cost(order: &RowOrder, h: &Subgroup, side: CosetSide) -> u32 {
    skip_cost(order, &h.coset(side))
}

/// The cheaper coset of `h` to stream under `order`, with its cost. A tie
/// between the two cosets resolves to the subgroup itself.
pub fn min_coset_cost(order: &RowOrder, h: &Subgroup) -> (u32, CosetSide) {
    let sub = coset_cost(order, h, CosetSide::Subgroup);
    let comp = coset_cost(order, h, CosetSide::Complement);
    if comp < sub {
        (comp, CosetSide::Complement)
    } else {
        (sub, CosetSide::Subgroup)
    }
}

/// Rows of the chosen coset of `h`, listed in physical order under `order`.
pub fn coset_rows(order: &RowOrder, h: &Subgroup, side: CosetSide) -> Vec<GroupElem> {
    order.iter().filter(|g| (CosetSide::of(h, g)) == side).collect()
}

/// For a tuple of index-2 subgroups `(H_1, ..., H_t)`, finds witnesses
/// `(u_1, ..., u_t)` with `u_i` outside `H_i` but inside every other `H_j`.
/// Each coordinate's constraint set is independent, and the smallest
/// qualifying element (in bit order) is chosen for each. Returns `None` when
/// some coordinate has no qualifying element, which happens exactly when the
/// check vectors are linearly dependent over GF(2).
pub fn separating_witnesses(subgroups: &[Subgroup]) -> Option<Vec<GroupElem>> {
    let mut witnesses = Vec::with_capacity(subgroups.len());
    for (i, h_i) in subgroups.iter().enumerate() {
        let m = h_i.m;
        let candidate = (0..1u32 << m).map(|bits| GroupElem { m, bits: bits as u16 }).find(|g| {
            !h_i.contains(g)
                && subgroups
                    .iter()
                    .enumerate()
                    .all(|(j, h_j)| j == i || h_j.contains(g))
        })?;
        witnesses.push(candidate);
    }
    Some(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn elem(m: u32, bits: u16) -> GroupElem {
        GroupElem::new(m, bits).unwrap()
    }

    #[test]
    fn coordinates_follow_the_msb_first_convention() {
        // 100 has x1 = 1 and x2 = x3 = 0.
        let g = elem(3, 0b100);
        assert_eq!(g.coordinate(1), 1);
        assert_eq!(g.coordinate(2), 0);
        assert_eq!(g.coordinate(3), 0);
        assert_eq!(alloc::format!("{g}"), "100");
        assert_eq!(alloc::format!("{}", elem(4, 0b0011)), "0011");
    }

    #[test]
    fn element_order_matches_bit_string_lexicographic_order() {
        let all = GroupElem::all(3).unwrap();
        assert_eq!(all.len(), 8);
        let rendered: Vec<alloc::string::String> =
            all.iter().map(|g| alloc::format!("{g}")).collect();
        let mut sorted = rendered.clone();
        sorted.sort();
        assert_eq!(rendered, sorted);
    }

    #[test]
    fn addition_is_xor_and_self_inverse() {
        let a = elem(3, 0b101);
        let b = elem(3, 0b011);
        assert_eq!(a.add(&b), elem(3, 0b110));
        assert_eq!(a.add(&a), GroupElem::zero(3).unwrap());
    }

    #[test]
    fn subgroups_have_half_the_elements_and_are_closed() {
        for m in 1..=4u32 {
            for h in Subgroup::all(m).unwrap() {
                let members = h.elements();
                assert_eq!(members.len(), 1 << (m - 1), "{h}");
                for a in &members {
                    for b in &members {
                        assert!(h.contains(&a.add(b)), "{h} not closed");
                    }
                }
                assert!(h.contains(&GroupElem::zero(m).unwrap()));
                assert_eq!(h.coset(CosetSide::Complement).len(), 1 << (m - 1));
            }
        }
    }

    #[test]
    fn there_are_2m_minus_1_subgroups() {
        assert_eq!(Subgroup::all(3).unwrap().len(), 7);
        assert_eq!(Subgroup::all(4).unwrap().len(), 15);
        assert!(Subgroup::from_check(3, 0).is_err());
        assert!(Subgroup::from_check(3, 0b1000).is_err());
    }

    #[test]
    fn subgroup_rendering_names_the_defining_equation() {
        assert_eq!(alloc::format!("{}", Subgroup::from_check(3, 0b100).unwrap()), "{x1=0}");
        assert_eq!(alloc::format!("{}", Subgroup::from_check(3, 0b110).unwrap()), "{x1+x2=0}");
        assert_eq!(alloc::format!("{}", Subgroup::from_check(4, 0b0111).unwrap()), "{x2+x3+x4=0}");
    }

    #[test]
    fn row_order_round_trips_positions() {
        let tau = RowOrder::new(3, vec![0b001, 0b010, 0b011, 0b000, 0b100, 0b101, 0b110, 0b111])
            .unwrap();
        assert_eq!(tau.elem_at(0), elem(3, 0b001));
        assert_eq!(tau.index_of(&elem(3, 0b000)), 3);
        assert_eq!(tau.position(&elem(3, 0b000)), 4);
        for pos in 0..tau.len() {
            assert_eq!(tau.index_of(&tau.elem_at(pos)), pos);
        }
    }

    #[test]
    fn bad_orderings_are_rejected() {
        assert_eq!(
            RowOrder::new(2, vec![0, 1, 2]).unwrap_err(),
            GroupError::WrongLength { got: 3, expected: 4 }
        );
        assert_eq!(
            RowOrder::new(2, vec![0, 1, 2, 2]).unwrap_err(),
            GroupError::NotAPermutation { offender: 2 }
        );
        assert_eq!(
            RowOrder::new(2, vec![0, 1, 2, 4]).unwrap_err(),
            GroupError::NotAPermutation { offender: 4 }
        );
    }

    #[test]
    fn skip_cost_counts_gap_rows() {
        let tau = RowOrder::lexicographic(3).unwrap();
        // {x1=0} occupies positions 0..=3 under lex order: contiguous.
        let h1 = Subgroup::from_check(3, 0b100).unwrap();
        assert_eq!(coset_cost(&tau, &h1, CosetSide::Subgroup), 0);
        assert_eq!(coset_cost(&tau, &h1, CosetSide::Complement), 0);
        assert_eq!(min_coset_cost(&tau, &h1), (0, CosetSide::Subgroup));
        // {x1+x2=0} = {000,001,110,111}: positions 0,1,6,7 -> 4 gap rows;
        // its complement {010,011,100,101} is contiguous.
        let h2 = Subgroup::from_check(3, 0b110).unwrap();
        assert_eq!(coset_cost(&tau, &h2, CosetSide::Subgroup), 4);
        assert_eq!(coset_cost(&tau, &h2, CosetSide::Complement), 0);
        assert_eq!(min_coset_cost(&tau, &h2), (0, CosetSide::Complement));
    }

    #[test]
    fn ties_prefer_the_subgroup_side() {
        // Interleave the cosets of {x1=0} so both sides cost the same.
        let tau = RowOrder::new(3, vec![0b000, 0b100, 0b001, 0b101, 0b010, 0b110, 0b011, 0b111])
            .unwrap();
        let h = Subgroup::from_check(3, 0b100).unwrap();
        assert_eq!(coset_cost(&tau, &h, CosetSide::Subgroup), 3);
        assert_eq!(coset_cost(&tau, &h, CosetSide::Complement), 3);
        assert_eq!(min_coset_cost(&tau, &h), (3, CosetSide::Subgroup));
    }

    #[test]
    fn coset_rows_come_back_in_physical_order() {
        let tau = RowOrder::new(3, vec![0b111, 0b000, 0b110, 0b001, 0b101, 0b010, 0b100, 0b011])
            .unwrap();
        let h = Subgroup::from_check(3, 0b100).unwrap();
        let rows = coset_rows(&tau, &h, CosetSide::Subgroup);
        let positions: Vec<usize> = rows.iter().map(|g| tau.index_of(g)).collect();
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        assert_eq!(positions, sorted);
        assert!(rows.iter().all(|g| h.contains(g)));
        assert_eq!(rows.len(), 4);
    }

    #[test]
    fn witnesses_for_the_standard_pair_at_m2() {
        // H1 = {x1=0}, H2 = {x1+x2=0}: smallest witnesses are 11 and 01.
        let h1 = Subgroup::from_check(2, 0b10).unwrap();
        let h2 = Subgroup::from_check(2, 0b11).unwrap();
        let w = separating_witnesses(&[h1, h2]).unwrap();
        assert_eq!(w, vec![elem(2, 0b11), elem(2, 0b01)]);
    }

    #[test]
    fn dependent_checks_have_no_witnesses() {
        // At m=2 the checks 01, 10, 11 sum to zero, so no witness tuple
        // exists for the triple.
        let hs = [
            Subgroup::from_check(2, 0b01).unwrap(),
            Subgroup::from_check(2, 0b10).unwrap(),
            Subgroup::from_check(2, 0b11).unwrap(),
        ];
        assert_eq!(separating_witnesses(&hs), None);
        // A repeated subgroup is degenerate for the same reason.
        let twice = [hs[0], hs[0]];
        assert_eq!(separating_witnesses(&twice), None);
    }

    #[test]
    fn witnesses_satisfy_the_separation_property_when_present() {
        // All 3-subsets of subgroups at m=3.
        let subs = Subgroup::all(3).unwrap();
        let mut found = 0;
        for i in 0..subs.len() {
            for j in (i + 1)..subs.len() {
                for l in (j + 1)..subs.len() {
                    let tuple = [subs[i], subs[j], subs[l]];
                    if let Some(ws) = separating_witnesses(&tuple) {
                        found += 1;
                        for (a, w) in ws.iter().enumerate() {
                            for (b, h) in tuple.iter().enumerate() {
                                assert_eq!(h.contains(w), a != b);
                            }
                        }
                    }
                }
            }
        }
        assert!(found > 0, "some independent triple must exist at m=3");
    }

    fn arb_row_order(m: u32) -> impl Strategy<Value = RowOrder> {
        let size = 1u16 << m;
        Just((0..size).collect::<Vec<u16>>())
            .prop_shuffle()
            .prop_map(move |seq| RowOrder::new(m, seq).unwrap())
    }

    proptest! {
        #[test]
        fn min_cost_never_exceeds_half_group_minus_one(
            tau in arb_row_order(3),
            check in 1u16..8,
        ) {
            // One coset always fits in a window of at most 2^(m-1) + cost
            // rows; the cheaper side is bounded by 2^(m-1) - 1.
            let h = Subgroup::from_check(3, check).unwrap();
            let (cost, _) = min_coset_cost(&tau, &h);
            prop_assert!(cost < (1 << 2));
        }

        #[test]
        fn min_cost_is_invariant_under_reversal_and_translation(
            tau in arb_row_order(3),
            check in 1u16..8,
            shift in 0u16..8,
        ) {
            let h = Subgroup::from_check(3, check).unwrap();
            let (cost, _) = min_coset_cost(&tau, &h);

            let reversed_seq: Vec<u16> = tau.as_bits().iter().rev().copied().collect();
            let reversed = RowOrder::new(3, reversed_seq).unwrap();
            prop_assert_eq!(min_coset_cost(&reversed, &h).0, cost);

            // Translation by any group element permutes each coset of h
            // within itself or swaps the two cosets; either way the minimum
            // over both cosets is unchanged.
            let shifted_seq: Vec<u16> = tau.as_bits().iter().map(|&b| b ^ shift).collect();
            let shifted = RowOrder::new(3, shifted_seq).unwrap();
            prop_assert_eq!(min_coset_cost(&shifted, &h).0, cost);
        }

        #[test]
        fn both_cosets_partition_the_group(tau in arb_row_order(3), check in 1u16..8) {
            let h = Subgroup::from_check(3, check).unwrap();
            let mut all: Vec<GroupElem> = coset_rows(&tau, &h, CosetSide::Subgroup);
            all.extend(coset_rows(&tau, &h, CosetSide::Complement));
            all.sort();
            prop_assert_eq!(all, GroupElem::all(3).unwrap());
        }
    }
}
