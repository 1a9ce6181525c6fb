//! Arithmetic in GF(2^w), the binary extension field with `2^w` elements.
//!
//! Elements are polynomials over GF(2) of degree below `w`, stored as the
//! integer whose bit `i` is the coefficient of `x^i`. Addition is XOR (the
//! field has characteristic two, so subtraction is the same operation).
//! Multiplication is polynomial multiplication reduced modulo an irreducible
//! polynomial of degree `w`; the modulus is validated at construction time by
//! trial division, and a failed validation reports a concrete nontrivial
//! factor rather than a bare "no".
//!
//! For `w <= 8` a [`FieldSpec`] builds log/antilog tables over a primitive
//! element, so products and inverses are two table lookups. For `9 <= w <= 16`
//! it uses a carry-less shift-and-reduce product and inversion by
//! exponentiation to `2^w - 2`. An independent extended-Euclid inverse
//! ([`FieldSpec::inv_euclid`]) is kept alongside so the two routes can be
//! checked against each other.

use alloc::vec::Vec;
use core::fmt;

/// A field element, stored in the low `w` bits of a `u16`.
pub type FieldElem = u16;

/// Widest supported field exponent. `u16` elements and `u32` carry-less
/// products cover everything up to GF(2^16).
pub const MAX_W: u32 = 16;

/// Errors from field construction or partial operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// `w` outside `1..=16`.
    WidthOutOfRange {
        /// The rejected exponent.
        w: u32,
    },
    /// The modulus is not a degree-`w` polynomial.
    WrongDegree {
        /// The rejected modulus (coefficient bits).
        modulus: u32,
        /// Expected degree.
        w: u32,
    },
    /// The modulus factors; a nontrivial factor is named as evidence.
    Reducible {
        /// The rejected modulus (coefficient bits).
        modulus: u32,
        /// A nontrivial factor found by trial division.
        factor: u32,
    },
    /// Zero has no multiplicative inverse.
    ZeroInverse,
    /// An operand is outside the field's value range.
    OutOfRange {
        /// The offending value.
        value: u32,
    },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::WidthOutOfRange { w } => {
                write!(f, "field exponent w={w} outside supported range 1..=16")
            }
            FieldError::WrongDegree { modulus, w } => {
                write!(f, "modulus {modulus:#x} is not a degree-{w} polynomial")
            }
            FieldError::Reducible { modulus, factor } => {
                write!(f, "modulus {modulus:#x} is reducible: divisible by {factor:#x}")
            }
            FieldError::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            FieldError::OutOfRange { value } => {
                write!(f, "value {value:#x} is outside the field")
            }
        }
    }
}

/// Degree of a nonzero binary polynomial (position of its top set bit).
fn poly_degree(p: u32) -> u32 {
    debug_assert!(p != 0);
    31 - p.leading_zeros()
}

/// Carry-less product of two binary polynomials (no reduction).
fn poly_mul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    let mut a = a as u64;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Remainder of binary polynomial division `a mod b` (`b` nonzero).
fn poly_rem(mut a: u64, b: u32) -> u32 {
    let db = poly_degree(b);
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= (b as u64) << (da - db);
    }
    a as u32
}

/// Look for a nontrivial factor of `modulus` (degree `w`) by trial division
/// with every polynomial of degree `1..=w/2`. Returns the first factor found
/// in increasing coefficient order, or `None` when the modulus is irreducible.
fn reducibility_witness(modulus: u32, w: u32) -> Option<u32> {
    for d in 1..=(w / 2).max(1) {
        if d >= w {
            break;
        }
        for candidate in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_rem(modulus as u64, candidate) == 0 {
                return Some(candidate);
            }
        }
    }
    None
}

/// An immutable description of GF(2^w): exponent, modulus, and (for `w <= 8`)
/// log/antilog tables over a primitive element. Cheap to clone and safe to
/// share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    w: u32,
    modulus: u32,
    /// `exp[i] = g^i` for a primitive `g`, doubled in length so that
    /// `exp[log a + log b]` never needs a modular reduction. Empty for `w > 8`.
    exp: Vec<u16>,
    /// `log[a]` for `a != 0`; `log[0]` is unused. Empty for `w > 8`.
    log: Vec<u16>,
}

impl FieldSpec {
    /// Builds GF(2^w) with an explicit modulus. The modulus must be a
    /// degree-`w` irreducible polynomial; reducible moduli are rejected with a
    /// concrete factor.
    pub fn new(w: u32, modulus: u32) -> Result<Self, FieldError> {
        if w == 0 || w > MAX_W {
            return Err(FieldError::WidthOutOfRange { w });
        }
        if modulus >> w != 1 {
            return Err(FieldError::WrongDegree { modulus, w });
        }
        if let Some(factor) = reducibility_witness(modulus, w) {
            return Err(FieldError::Reducible { modulus, factor });
        }
        let mut field = FieldSpec { w, modulus, exp: Vec::new(), log: Vec::new() };
        if w <= 8 {
            field.build_tables();
        }
        Ok(field)
    }

    /// Builds GF(2^w) with the default modulus for `w`: the lexicographically
    /// smallest irreducible polynomial of degree `w` (smallest as an integer).
    pub fn with_default_modulus(w: u32) -> Result<Self, FieldError> {
        Ok(Self::new(w, Self::default_modulus(w)?).expect("default modulus is irreducible"))
    }

    /// The lexicographically smallest irreducible polynomial of degree `w`.
    pub fn default_modulus(w: u32) -> Result<u32, FieldError> {
        if w == 0 || w > MAX_W {
            return Err(FieldError::WidthOutOfRange { w });
        }
        let found = ((1u32 << w)..(1u32 << (w + 1)))
            .find(|&candidate| reducibility_witness(candidate, w).is_none())
            .expect("an irreducible polynomial exists for every degree");
        Ok(found)
    }

    /// Fills the log/antilog tables by walking the powers of the smallest
    /// primitive element.
    fn build_tables(&mut self) {
        let order = self.order();
        let group = order - 1;
        let generator = (1..order as u32)
            .map(|candidate| candidate as FieldElem)
            .find(|&candidate| self.multiplicative_order(candidate) == group)
            .expect("GF(2^w)* is cyclic, so a primitive element exists");

        self.exp = alloc::vec![0; 2 * group];
        self.log = alloc::vec![0; order];
        let mut power: FieldElem = 1;
        for i in 0..group {
            self.exp[i] = power;
            self.exp[i + group] = power;
            self.log[power as usize] = i as u16;
            power = self.mul_slow(power, generator);
        }
    }

    /// Order of `a` in the multiplicative group (number of steps to cycle
    /// back to 1), computed with the table-free product.
    fn multiplicative_order(&self, a: FieldElem) -> usize {
        let mut power = a;
        let mut steps = 1;
        while power != 1 {
            power = self.mul_slow(power, a);
            steps += 1;
            if steps > self.order() {
                unreachable!("power iteration must cycle within the group order");
            }
        }
        steps
    }

    /// Field exponent `w`.
    pub fn w(&self) -> u32 {
        self.w
    }

    /// The modulus polynomial (coefficient bits, degree `w`).
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements, `2^w`.
    pub fn order(&self) -> usize {
        1usize << self.w
    }

    /// Whether `value` is a valid element of this field.
    pub fn contains(&self, value: FieldElem) -> bool {
        (value as usize) < self.order()
    }

    fn check(&self, value: FieldElem) -> FieldElem {
        debug_assert!(self.contains(value), "element {value:#x} outside GF(2^{})", self.w);
        value
    }

    /// Addition: XOR. Characteristic two makes this its own inverse, so it is
    /// also subtraction.
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a) ^ self.check(b)
    }

    /// Multiplication modulo the field's irreducible polynomial.
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        if a == 0 || b == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    /// Table-free shift-and-reduce product; also the reference path for wide
    /// fields and for table construction.
    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        poly_rem(poly_mul(a as u32, b as u32), self.modulus) as FieldElem
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        self.check(a);
        let mut base = a;
        let mut acc: FieldElem = 1;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse: a table lookup for `w <= 8`, otherwise
    /// exponentiation to `2^w - 2`. Zero is rejected.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a);
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        if self.exp.is_empty() {
            Ok(self.pow(a, (self.order() as u64) - 2))
        } else {
            let group = self.order() - 1;
            Ok(self.exp[(group - self.log[a as usize] as usize) % group])
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm over
    /// GF(2)[x]. An independent route used to cross-check [`FieldSpec::inv`].
    pub fn inv_euclid(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        self.check(a);
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        // Invariants: old_r = old_t * a (mod modulus), r = t * a (mod modulus).
        let mut old_r = self.modulus;
        let mut r = a as u32;
        let mut old_t = 0u32;
        let mut t = 1u32;
        while r != 0 {
            let (next_r, q) = poly_divmod(old_r, r);
            let next_t = old_t ^ poly_rem(poly_mul(q, t), self.modulus);
            old_r = r;
            r = next_r;
            old_t = t;
            t = next_t;
        }
        debug_assert_eq!(old_r, 1, "gcd(a, modulus) = 1 for nonzero a and irreducible modulus");
        Ok(old_t as FieldElem)
    }

    /// `a / b`, rejecting division by zero.
    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// Binary polynomial division: returns `(a mod b, a div b)`.
fn poly_divmod(a: u32, b: u32) -> (u32, u32) {
    debug_assert!(b != 0);
    let mut rem = a as u64;
    let mut quot = 0u32;
    let db = poly_degree(b);
    while rem != 0 {
        let da = 63 - rem.leading_zeros();
        if da < db {
            break;
        }
        quot ^= 1 << (da - db);
        rem ^= (b as u64) << (da - db);
    }
    (rem as u32, quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent reference product: textbook Russian-peasant multiply that
    /// keeps the running shift reduced below degree `w` at every step. Shares
    /// no code with `FieldSpec`.
    fn reference_mul(a: u16, b: u16, modulus: u32, w: u32) -> u16 {
        let mut acc: u32 = 0;
        let mut a: u32 = a as u32;
        let mut b: u32 = b as u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> w) & 1 == 1 {
                a ^= modulus;
            }
        }
        debug_assert!(acc >> w == 0);
        acc as u16
    }

    #[test]
    fn default_moduli_match_well_known_polynomials() {
        // x^3+x+1, x^4+x+1, x^8+x^4+x^3+x+1 are the standard smallest choices.
        assert_eq!(FieldSpec::default_modulus(3).unwrap(), 0xB);
        assert_eq!(FieldSpec::default_modulus(4).unwrap(), 0x13);
        assert_eq!(FieldSpec::default_modulus(8).unwrap(), 0x11B);
        assert_eq!(FieldSpec::default_modulus(2).unwrap(), 0x7);
    }

    #[test]
    fn reducible_modulus_is_rejected_with_a_factor() {
        // x^3 + x^2 + x + 1 = (x + 1)(x^2 + 1); trial division finds x + 1.
        let err = FieldSpec::new(3, 0xF).unwrap_err();
        assert_eq!(err, FieldError::Reducible { modulus: 0xF, factor: 0b11 });
    }

    #[test]
    fn wrong_degree_and_width_are_rejected() {
        assert_eq!(FieldSpec::new(3, 0x13).unwrap_err(), FieldError::WrongDegree { modulus: 0x13, w: 3 });
        assert_eq!(FieldSpec::new(0, 0x3).unwrap_err(), FieldError::WidthOutOfRange { w: 0 });
        assert_eq!(FieldSpec::new(17, 0x3).unwrap_err(), FieldError::WidthOutOfRange { w: 17 });
    }

    #[test]
    fn gf8_powers_of_the_generator() {
        // In GF(8) with modulus x^3+x+1 the element x (=2) is primitive:
        // 1, 2, 4, 3, 6, 7, 5 and back to 1.
        let f = FieldSpec::new(3, 0xB).unwrap();
        let mut power = 1u16;
        let expected = [1, 2, 4, 3, 6, 7, 5];
        for want in expected {
            assert_eq!(power, want);
            power = f.mul(power, 2);
        }
        assert_eq!(power, 1);
    }

    #[test]
    fn gf8_sample_products_and_inverses() {
        let f = FieldSpec::new(3, 0xB).unwrap();
        // w^5 * w^5 = w^10 = w^3 (the group has order 7): 7 * 7 = 3.
        assert_eq!(f.mul(7, 7), 3);
        // inv(w) = w^6 = 5.
        assert_eq!(f.inv(2).unwrap(), 5);
        assert_eq!(f.inv(0), Err(FieldError::ZeroInverse));
        assert_eq!(f.div(1, 2).unwrap(), 5);
        assert_eq!(f.div(3, 0), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn gf2_degenerate_field_works() {
        let f = FieldSpec::with_default_modulus(1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.mul(1, 0), 0);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.inv(1).unwrap(), 1);
    }

    #[test]
    fn mul_matches_reference_exhaustively_for_small_w() {
        for w in 1..=4u32 {
            let f = FieldSpec::with_default_modulus(w).unwrap();
            for a in 0..f.order() as u16 {
                for b in 0..f.order() as u16 {
                    assert_eq!(
                        f.mul(a, b),
                        reference_mul(a, b, f.modulus(), w),
                        "w={w} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn mul_matches_reference_on_random_pairs_for_w8_and_w16() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for w in [8u32, 16] {
            let f = FieldSpec::with_default_modulus(w).unwrap();
            let mask = (f.order() - 1) as u16;
            for _ in 0..10_000 {
                let a = rng.gen::<u16>() & mask;
                let b = rng.gen::<u16>() & mask;
                assert_eq!(f.mul(a, b), reference_mul(a, b, f.modulus(), w), "w={w} a={a} b={b}");
            }
        }
    }

    #[test]
    fn every_default_modulus_is_accepted_up_to_w16() {
        for w in 1..=16u32 {
            let f = FieldSpec::with_default_modulus(w).unwrap();
            assert_eq!(f.w(), w);
            assert_eq!(f.mul(1, 1), 1);
        }
    }

    proptest! {
        #[test]
        fn add_is_commutative_and_self_inverse(a in 0u16..256, b in 0u16..256) {
            let f = FieldSpec::with_default_modulus(8).unwrap();
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.add(f.add(a, b), b), a);
        }

        #[test]
        fn mul_inv_round_trips(a in 1u16..256) {
            let f = FieldSpec::with_default_modulus(8).unwrap();
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), 1);
        }

        #[test]
        fn inv_routes_agree(w in 1u32..=16) {
            let f = FieldSpec::with_default_modulus(w).unwrap();
            // Probe a spread of nonzero elements without enumerating 2^16.
            let order = f.order() as u64;
            for i in 1..order.min(64) {
                let a = (i * 2654435761 % order).max(1) as u16;
                prop_assert_eq!(f.inv(a).unwrap(), f.inv_euclid(a).unwrap());
                prop_assert_eq!(f.mul(a, f.inv_euclid(a).unwrap()), 1);
            }
        }

        #[test]
        fn mul_is_associative_and_distributive_in_gf16(
            a in 0u16..16, b in 0u16..16, c in 0u16..16,
        ) {
            let f = FieldSpec::with_default_modulus(4).unwrap();
            prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }

        #[test]
        fn pow_matches_repeated_mul(a in 0u16..256, e in 0u64..32) {
            let f = FieldSpec::with_default_modulus(8).unwrap();
            let mut acc = 1u16;
            for _ in 0..e {
                acc = f.mul(acc, a);
            }
            prop_assert_eq!(f.pow(a, e), acc);
        }
    }
}
