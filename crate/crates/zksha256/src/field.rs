//! Arithmetic in the 64-bit prime field p = 2^64 - 2^32 + 1, its quadratic
//! extension, and number-theoretic transforms over power-of-two subgroups.
//!
//! Elements are kept in canonical form (< p) at all times; there is no lazy
//! reduction. The field has 2-adicity 32 (p - 1 = 2^32 * (2^32 - 1)) and 7 is
//! a primitive root of the full multiplicative group.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// The field modulus, p = 2^64 - 2^32 + 1.
pub const MODULUS: u64 = 0xFFFF_FFFF_0000_0001;

/// 2^64 mod p = 2^32 - 1.
const EPSILON: u64 = 0xFFFF_FFFF;

/// Primitive root of the full multiplicative group.
pub const GENERATOR: u64 = 7;

/// 2-adicity of p - 1.
pub const TWO_ADICITY: u32 = 32;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("input length {got} does not match domain size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("domain log size {0} exceeds the field's 2-adicity of 32")]
    DomainTooLarge(u32),
}

/// An element of F_p in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    /// Reduces an arbitrary u64 into canonical form.
    pub const fn new(value: u64) -> Self {
        Self(value % MODULUS)
    }

    /// Wraps a value already known to be canonical.
    #[inline]
    pub const fn from_canonical(value: u64) -> Self {
        debug_assert!(value < MODULUS);
        Self(value)
    }

    #[inline]
    pub const fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while exp != 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inverse(self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(MODULUS - 2))
    }

    pub fn to_le_bytes(self) -> [u8; 8] {
        self.0.to_le_bytes()
    }

    pub fn from_le_bytes(bytes: [u8; 8]) -> Self {
        Self::new(u64::from_le_bytes(bytes))
    }
}

#[inline]
fn reduce128(x: u128) -> u64 {
    // x = lo + hi_lo*2^64 + hi_hi*2^96, with 2^64 = EPSILON and 2^96 = -1 (mod p).
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    let hi_hi = hi >> 32;
    let hi_lo = hi & EPSILON;
    let (mut t, borrow) = lo.overflowing_sub(hi_hi);
    if borrow {
        t = t.wrapping_sub(EPSILON);
    }
    let mid = hi_lo * EPSILON;
    let (mut r, carry) = t.overflowing_add(mid);
    if carry {
        r = r.wrapping_add(EPSILON);
    }
    if r >= MODULUS {
        r -= MODULUS;
    }
    r
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (mut s, over) = self.0.overflowing_add(rhs.0);
        if over {
            s = s.wrapping_add(EPSILON);
        }
        if s >= MODULUS {
            s -= MODULUS;
        }
        Self(s)
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Self(self.0 - rhs.0)
        } else {
            Self(self.0 + (MODULUS - rhs.0))
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self(reduce128(self.0 as u128 * rhs.0 as u128))
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Self(MODULUS - self.0)
        }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}
impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}
impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl From<u64> for FieldElement {
    fn from(v: u64) -> Self {
        Self::new(v)
    }
}

impl From<u32> for FieldElement {
    fn from(v: u32) -> Self {
        Self(v as u64)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Inverts a slice of nonzero elements with a single field inversion
/// (Montgomery's batch trick).
pub fn batch_inverse(values: &[FieldElement]) -> Result<Vec<FieldElement>, FieldError> {
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = FieldElement::ONE;
    for &v in values {
        if v.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        prefix.push(acc);
        acc *= v;
    }
    let mut inv = acc.inverse()?;
    let mut out = vec![FieldElement::ZERO; values.len()];
    for i in (0..values.len()).rev() {
        out[i] = inv * prefix[i];
        inv *= values[i];
    }
    Ok(out)
}

/// Basis element phi of the quadratic extension satisfies phi^2 = 7
/// (7 is a quadratic non-residue mod p, being a generator of F_p^*).
const NONRESIDUE: FieldElement = FieldElement::from_canonical(7);

/// An element c0 + c1*phi of F_{p^2}, with phi^2 = 7.
///
/// Challenges are drawn from this extension so that a single challenge has
/// soundness error on the order of 2^-128.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExtFieldElement {
    pub c0: FieldElement,
    pub c1: FieldElement,
}

impl ExtFieldElement {
    pub const ZERO: Self = Self {
        c0: FieldElement::ZERO,
        c1: FieldElement::ZERO,
    };
    pub const ONE: Self = Self {
        c0: FieldElement::ONE,
        c1: FieldElement::ZERO,
    };

    pub const fn new(c0: FieldElement, c1: FieldElement) -> Self {
        Self { c0, c1 }
    }

    /// Ring embedding of the base field.
    pub const fn from_base(c0: FieldElement) -> Self {
        Self {
            c0,
            c1: FieldElement::ZERO,
        }
    }

    pub fn is_zero(self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while exp != 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Result<Self, FieldError> {
        // (c0 + c1*phi)^-1 = (c0 - c1*phi) / (c0^2 - 7*c1^2)
        let norm = self.c0 * self.c0 - NONRESIDUE * self.c1 * self.c1;
        let inv = norm.inverse()?;
        Ok(Self {
            c0: self.c0 * inv,
            c1: -self.c1 * inv,
        })
    }

    /// Multiplication by a base-field element.
    #[inline]
    pub fn scale(self, s: FieldElement) -> Self {
        Self {
            c0: self.c0 * s,
            c1: self.c1 * s,
        }
    }

    /// Serializes as c0 then c1, 8 bytes little-endian each.
    pub fn to_le_bytes(self) -> [u8; 16] {
        let mut out = [0u8; 16];
        out[..8].copy_from_slice(&self.c0.to_le_bytes());
        out[8..].copy_from_slice(&self.c1.to_le_bytes());
        out
    }

    pub fn from_le_bytes(bytes: [u8; 16]) -> Self {
        Self {
            c0: FieldElement::from_le_bytes(bytes[..8].try_into().unwrap()),
            c1: FieldElement::from_le_bytes(bytes[8..].try_into().unwrap()),
        }
    }
}

impl Add for ExtFieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self {
            c0: self.c0 + rhs.c0,
            c1: self.c1 + rhs.c1,
        }
    }
}

impl Sub for ExtFieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self {
            c0: self.c0 - rhs.c0,
            c1: self.c1 - rhs.c1,
        }
    }
}

impl Mul for ExtFieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        // (a0 + a1*phi)(b0 + b1*phi) = (a0*b0 + 7*a1*b1) + (a0*b1 + a1*b0)*phi
        Self {
            c0: self.c0 * rhs.c0 + NONRESIDUE * self.c1 * rhs.c1,
            c1: self.c0 * rhs.c1 + self.c1 * rhs.c0,
        }
    }
}

impl Neg for ExtFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            c0: -self.c0,
            c1: -self.c1,
        }
    }
}

impl AddAssign for ExtFieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}
impl SubAssign for ExtFieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}
impl MulAssign for ExtFieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl From<FieldElement> for ExtFieldElement {
    fn from(v: FieldElement) -> Self {
        Self::from_base(v)
    }
}

impl fmt::Debug for ExtFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*phi)", self.c0, self.c1)
    }
}

/// A multiplicative coset shift * <generator> of size 2^log_size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvaluationDomain {
    pub log_size: u32,
    pub generator: FieldElement,
    pub coset_shift: FieldElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NttDirection {
    Forward,
    Inverse,
}

impl EvaluationDomain {
    /// The size-2^log_size subgroup of F_p^* (shift 1).
    pub fn subgroup(log_size: u32) -> Result<Self, FieldError> {
        if log_size > TWO_ADICITY {
            return Err(FieldError::DomainTooLarge(log_size));
        }
        Ok(Self {
            log_size,
            generator: two_adic_generator(log_size),
            coset_shift: FieldElement::ONE,
        })
    }

    /// The subgroup shifted by the field generator 7, disjoint from every
    /// proper two-adic subgroup.
    pub fn coset(log_size: u32) -> Result<Self, FieldError> {
        Ok(Self {
            coset_shift: FieldElement::from_canonical(GENERATOR),
            ..Self::subgroup(log_size)?
        })
    }

    pub fn with_shift(log_size: u32, shift: FieldElement) -> Result<Self, FieldError> {
        Ok(Self {
            coset_shift: shift,
            ..Self::subgroup(log_size)?
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.log_size
    }

    /// The i-th evaluation point, shift * generator^i.
    pub fn element(&self, index: usize) -> FieldElement {
        self.coset_shift * self.generator.pow(index as u64)
    }
}

/// Order-2^log_size root of unity, derived as 7^((p-1)/2^log_size).
pub fn two_adic_generator(log_size: u32) -> FieldElement {
    assert!(log_size <= TWO_ADICITY);
    let exp = (MODULUS - 1) >> log_size;
    FieldElement::from_canonical(GENERATOR).pow(exp)
}

/// Number-theoretic transform over `domain`.
///
/// Forward maps coefficients to evaluations at shift * g^i for i = 0..2^k in
/// index order; inverse composed with forward is the identity.
pub fn ntt(
    values: &[FieldElement],
    domain: &EvaluationDomain,
    direction: NttDirection,
) -> Result<Vec<FieldElement>, FieldError> {
    if values.len() != domain.size() {
        return Err(FieldError::LengthMismatch {
            expected: domain.size(),
            got: values.len(),
        });
    }
    let mut out = values.to_vec();
    ntt_in_place(&mut out, domain, direction)?;
    Ok(out)
}

pub fn ntt_in_place(
    values: &mut [FieldElement],
    domain: &EvaluationDomain,
    direction: NttDirection,
) -> Result<(), FieldError> {
    if values.len() != domain.size() {
        return Err(FieldError::LengthMismatch {
            expected: domain.size(),
            got: values.len(),
        });
    }
    let n = values.len();
    if n == 1 {
        return Ok(());
    }
    let log_n = domain.log_size;
    match direction {
        NttDirection::Forward => {
            if domain.coset_shift != FieldElement::ONE {
                scale_by_powers(values, domain.coset_shift);
            }
            transform(values, domain.generator, log_n);
        }
        NttDirection::Inverse => {
            let inv_gen = domain.generator.inverse().expect("domain generator nonzero");
            transform(values, inv_gen, log_n);
            let inv_n = FieldElement::new(n as u64).inverse().expect("n nonzero");
            for v in values.iter_mut() {
                *v *= inv_n;
            }
            if domain.coset_shift != FieldElement::ONE {
                let inv_shift = domain
                    .coset_shift
                    .inverse()
                    .expect("coset shift nonzero");
                scale_by_powers(values, inv_shift);
            }
        }
    }
    Ok(())
}

fn scale_by_powers(values: &mut [FieldElement], base: FieldElement) {
    let mut pow = FieldElement::ONE;
    for v in values.iter_mut() {
        *v *= pow;
        pow *= base;
    }
}

/// Iterative radix-2 Cooley-Tukey, decimation in time.
fn transform(values: &mut [FieldElement], root: FieldElement, log_n: u32) {
    let n = values.len();
    for i in 0..n {
        let j = (i as u64).reverse_bits() >> (64 - log_n);
        let j = j as usize;
        if i < j {
            values.swap(i, j);
        }
    }
    let mut len = 2usize;
    while len <= n {
        // root of unity of order `len`
        let w_len = root.pow((n / len) as u64);
        for start in (0..n).step_by(len) {
            let mut w = FieldElement::ONE;
            for i in start..start + len / 2 {
                let u = values[i];
                let t = values[i + len / 2] * w;
                values[i] = u + t;
                values[i + len / 2] = u - t;
                w *= w_len;
            }
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn big_p() -> BigUint {
        BigUint::from(MODULUS)
    }

    fn rand_fe(rng: &mut StdRng) -> FieldElement {
        FieldElement::new(rng.gen())
    }

    #[test]
    fn add_wraparound_at_modulus() {
        assert_eq!(
            FieldElement::new(MODULUS - 1) + FieldElement::ONE,
            FieldElement::ZERO
        );
    }

    #[test]
    fn add_identity() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..100 {
            let x = rand_fe(&mut rng);
            assert_eq!(x + FieldElement::ZERO, x);
        }
    }

    #[test]
    fn add_big_halves() {
        // 2^63 + 2^63 = 2^64 mod p = 2^32 - 1, cross-checked with a
        // big-integer reduction below.
        let h = FieldElement::new(1 << 63);
        let expected = (big(1u64 << 63) + big(1u64 << 63)) % big_p();
        assert_eq!(h + h, FieldElement::new(4294967295));
        assert_eq!(big((h + h).value()), expected);
    }

    #[test]
    fn mul_identity_and_minus_one() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..100 {
            let x = rand_fe(&mut rng);
            assert_eq!(x * FieldElement::ONE, x);
        }
        let m1 = FieldElement::new(MODULUS - 1);
        assert_eq!(m1 * m1, FieldElement::ONE);
    }

    #[test]
    fn mul_power_of_two_overflow() {
        let x = FieldElement::new(1 << 32);
        assert_eq!(x * x, FieldElement::new(4294967295));
    }

    #[test]
    fn mul_matches_bigint_oracle() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..10_000 {
            let a = rand_fe(&mut rng);
            let b = rand_fe(&mut rng);
            let expected = (big(a.value()) * big(b.value())) % big_p();
            assert_eq!(big((a * b).value()), expected);
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(FieldElement::ONE.inverse().unwrap(), FieldElement::ONE);
        let inv2 = FieldElement::new(2).inverse().unwrap();
        assert_eq!(inv2, FieldElement::new(9223372034707292161));
        assert_eq!(FieldElement::new(2) * inv2, FieldElement::ONE);
        assert_eq!(
            FieldElement::ZERO.inverse().unwrap_err(),
            FieldError::ZeroInverse
        );
    }

    #[test]
    fn distributivity_random_triples() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..1000 {
            let a = rand_fe(&mut rng);
            let b = rand_fe(&mut rng);
            let c = rand_fe(&mut rng);
            assert_eq!(a * (b + c), a * b + a * c);
        }
    }

    #[test]
    fn fermat_consistency() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let mut a = rand_fe(&mut rng);
            while a.is_zero() {
                a = rand_fe(&mut rng);
            }
            assert_eq!(a.pow(MODULUS - 1), FieldElement::ONE);
        }
    }

    #[test]
    fn batch_inverse_matches_single() {
        let mut rng = StdRng::seed_from_u64(6);
        let vals: Vec<FieldElement> = (0..64).map(|_| rand_fe(&mut rng) + FieldElement::ONE).collect();
        let invs = batch_inverse(&vals).unwrap();
        for (v, inv) in vals.iter().zip(&invs) {
            assert_eq!(*v * *inv, FieldElement::ONE);
        }
        assert!(batch_inverse(&[FieldElement::ZERO]).is_err());
    }

    #[test]
    fn extension_mul_follows_binomial_rule() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let a = ExtFieldElement::new(rand_fe(&mut rng), rand_fe(&mut rng));
            let b = ExtFieldElement::new(rand_fe(&mut rng), rand_fe(&mut rng));
            let prod = a * b;
            assert_eq!(
                prod.c0,
                a.c0 * b.c0 + FieldElement::new(7) * a.c1 * b.c1
            );
            assert_eq!(prod.c1, a.c0 * b.c1 + a.c1 * b.c0);
        }
    }

    #[test]
    fn extension_embedding_is_homomorphic() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..100 {
            let a = rand_fe(&mut rng);
            let b = rand_fe(&mut rng);
            assert_eq!(
                ExtFieldElement::from_base(a) * ExtFieldElement::from_base(b),
                ExtFieldElement::from_base(a * b)
            );
            assert_eq!(
                ExtFieldElement::from_base(a) + ExtFieldElement::from_base(b),
                ExtFieldElement::from_base(a + b)
            );
        }
    }

    #[test]
    fn extension_inverse() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..100 {
            let mut x = ExtFieldElement::new(rand_fe(&mut rng), rand_fe(&mut rng));
            while x.is_zero() {
                x = ExtFieldElement::new(rand_fe(&mut rng), rand_fe(&mut rng));
            }
            assert_eq!(x * x.inverse().unwrap(), ExtFieldElement::ONE);
        }
        assert!(ExtFieldElement::ZERO.inverse().is_err());
    }

    #[test]
    fn seven_is_a_nonresidue() {
        // Euler's criterion: 7^((p-1)/2) = -1.
        let half = (MODULUS - 1) / 2;
        assert_eq!(
            FieldElement::new(7).pow(half),
            FieldElement::new(MODULUS - 1)
        );
    }

    #[test]
    fn domain_generator_has_exact_order() {
        for log_size in [1u32, 2, 5, 16, 32] {
            let d = EvaluationDomain::subgroup(log_size).unwrap();
            assert_eq!(d.generator.pow(1 << log_size), FieldElement::ONE);
            assert_ne!(d.generator.pow(1 << (log_size - 1)), FieldElement::ONE);
        }
        assert!(EvaluationDomain::subgroup(33).is_err());
    }

    #[test]
    fn ntt_constant_polynomial() {
        let d = EvaluationDomain::subgroup(3).unwrap();
        let c = FieldElement::new(42);
        let mut coeffs = vec![FieldElement::ZERO; 8];
        coeffs[0] = c;
        let evals = ntt(&coeffs, &d, NttDirection::Forward).unwrap();
        assert!(evals.iter().all(|&v| v == c));
    }

    #[test]
    fn ntt_degree_one_direct_evaluation() {
        let d = EvaluationDomain::subgroup(1).unwrap();
        let c0 = FieldElement::new(11);
        let c1 = FieldElement::new(13);
        let evals = ntt(&[c0, c1], &d, NttDirection::Forward).unwrap();
        // domain of size 2 is {1, -1}
        assert_eq!(evals[0], c0 + c1);
        assert_eq!(evals[1], c0 - c1);
    }

    #[test]
    fn ntt_matches_direct_evaluation_on_coset() {
        let mut rng = StdRng::seed_from_u64(10);
        let d = EvaluationDomain::coset(4).unwrap();
        let coeffs: Vec<FieldElement> = (0..16).map(|_| rand_fe(&mut rng)).collect();
        let evals = ntt(&coeffs, &d, NttDirection::Forward).unwrap();
        for i in 0..16 {
            let x = d.element(i);
            let mut acc = FieldElement::ZERO;
            for &c in coeffs.iter().rev() {
                acc = acc * x + c;
            }
            assert_eq!(evals[i], acc, "mismatch at index {i}");
        }
    }

    #[test]
    fn ntt_round_trip_all_sizes() {
        let mut rng = StdRng::seed_from_u64(11);
        for log_size in 1..=16u32 {
            let d = EvaluationDomain::coset(log_size).unwrap();
            let values: Vec<FieldElement> =
                (0..d.size()).map(|_| rand_fe(&mut rng)).collect();
            let fwd = ntt(&values, &d, NttDirection::Forward).unwrap();
            let back = ntt(&fwd, &d, NttDirection::Inverse).unwrap();
            assert_eq!(back, values, "round trip failed at log_size {log_size}");
        }
    }

    #[test]
    fn ntt_length_mismatch() {
        let d = EvaluationDomain::subgroup(3).unwrap();
        let err = ntt(&[FieldElement::ZERO; 4], &d, NttDirection::Forward).unwrap_err();
        assert_eq!(
            err,
            FieldError::LengthMismatch {
                expected: 8,
                got: 4
            }
        );
    }

    proptest! {
        #[test]
        fn prop_add_commutes(a in any::<u64>(), b in any::<u64>()) {
            let (a, b) = (FieldElement::new(a), FieldElement::new(b));
            prop_assert_eq!(a + b, b + a);
        }

        #[test]
        fn prop_sub_is_add_neg(a in any::<u64>(), b in any::<u64>()) {
            let (a, b) = (FieldElement::new(a), FieldElement::new(b));
            prop_assert_eq!(a - b, a + (-b));
        }

        #[test]
        fn prop_mul_assoc(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let (a, b, c) = (FieldElement::new(a), FieldElement::new(b), FieldElement::new(c));
            prop_assert_eq!((a * b) * c, a * (b * c));
        }
    }
}
