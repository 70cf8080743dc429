//! SHA-256 as a constraint system: padding-aware message bits, the message
//! schedule, 64 rounds per block, digest words and message length as public
//! inputs, and deterministic witness generation by gate solving.
//!
//! Words are carried in two coupled forms: 32 boolean bit slots (LSB first)
//! for the bitwise operations, and one packed slot equal to the weighted bit
//! sum for the mod-2^32 additions. Rotations are pure re-wiring; shifts
//! re-wire against a shared constant-zero slot. Mod-2^32 addition constrains
//! the running sum to a 32-bit result plus ranged carry bits.

use std::collections::HashMap;

use crate::circuit::{Circuit, CircuitBuilder, CircuitError, SlotId, Witness};
use crate::field::FieldElement;

use super::{pad_message, Sha256Error, INITIAL_STATE, ROUND_CONSTANTS};

type F = FieldElement;

#[derive(Debug, thiserror::Error)]
pub enum GadgetError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Message(#[from] Sha256Error),
    #[error("num_blocks must be at least 1")]
    ZeroBlocks,
    #[error("witness replay hit an unassigned wire at row {0}")]
    UnsolvableRow(usize),
}

/// Witness-generation hints that cannot be derived by solving a single gate.
/// Each hint runs just before the row it is keyed on.
#[derive(Clone, Debug)]
enum Hint {
    Assign { slot: SlotId, value: F },
    /// Assign the little-endian bits of `src`'s value to `bits`.
    Decompose { src: SlotId, bits: Vec<SlotId> },
}

/// Mapping from message bytes to circuit wire slots and digest public inputs.
pub struct Sha256Layout {
    pub circuit: Circuit,
    pub num_blocks: usize,
    /// Per block: 512 boolean slots, indexed word*32 + bit, bits LSB first
    /// within each big-endian message word.
    pub message_bit_slots: Vec<Vec<SlotId>>,
    /// Packed 32-bit digest words, public inputs 0..8.
    pub digest_slots: [SlotId; 8],
    /// Original message byte length, public input 8.
    pub length_public: SlotId,
    hints: Vec<(u32, Hint)>,
}

/// A 32-bit word as bit slots plus the packed weighted sum.
#[derive(Clone, Copy)]
struct WordWires {
    bits: [SlotId; 32],
    packed: SlotId,
}

struct GadgetBuilder {
    cb: CircuitBuilder,
    hints: Vec<(u32, Hint)>,
    constants: HashMap<u64, SlotId>,
    zero: SlotId,
    one: SlotId,
}

impl GadgetBuilder {
    fn new() -> Self {
        let mut g = Self {
            cb: CircuitBuilder::new(),
            hints: Vec::new(),
            constants: HashMap::new(),
            zero: SlotId(0),
            one: SlotId(0),
        };
        g.zero = g.constant(F::ZERO);
        g.one = g.constant(F::ONE);
        g
    }

    fn constant(&mut self, v: F) -> SlotId {
        if let Some(&s) = self.constants.get(&v.value()) {
            return s;
        }
        let s = self.cb.alloc();
        self.hints
            .push((self.cb.num_rows() as u32, Hint::Assign { slot: s, value: v }));
        // w(s) = v
        self.cb
            .add_gate([F::ONE, F::ZERO, F::ZERO, F::ZERO, -v], [s, s, s])
            .expect("slot just allocated");
        self.constants.insert(v.value(), s);
        s
    }

    /// out = q_l*w(a) + q_r*w(b) + q_m*w(a)*w(b) + konst
    fn gate_out(&mut self, q_l: F, q_r: F, q_m: F, konst: F, a: SlotId, b: SlotId) -> SlotId {
        let out = self.cb.alloc();
        self.cb
            .add_gate([q_l, q_r, q_m, -F::ONE, konst], [a, b, out])
            .expect("valid slots");
        out
    }

    fn mul(&mut self, a: SlotId, b: SlotId) -> SlotId {
        self.gate_out(F::ZERO, F::ZERO, F::ONE, F::ZERO, a, b)
    }

    fn sub(&mut self, a: SlotId, b: SlotId) -> SlotId {
        self.gate_out(F::ONE, -F::ONE, F::ZERO, F::ZERO, a, b)
    }

    /// Boolean XOR; inputs against the constant-zero slot cost no gate.
    fn xor(&mut self, a: SlotId, b: SlotId) -> SlotId {
        if a == self.zero {
            return b;
        }
        if b == self.zero {
            return a;
        }
        self.gate_out(F::ONE, F::ONE, -F::new(2), F::ZERO, a, b)
    }

    fn assert_bool(&mut self, b: SlotId) {
        // w(b)^2 - w(b) = 0
        self.cb
            .add_gate([-F::ONE, F::ZERO, F::ONE, F::ZERO, F::ZERO], [b, b, b])
            .expect("valid slot");
    }

    /// out = sum coeff_i * w(slot_i) + konst, as a chain of gates.
    fn lc(&mut self, terms: &[(F, SlotId)], konst: F) -> SlotId {
        match terms {
            [] => self.constant(konst),
            [(c0, t0)] => self.gate_out(*c0, F::ZERO, F::ZERO, konst, *t0, *t0),
            [(c0, t0), (c1, t1), rest @ ..] => {
                let mut acc = self.gate_out(*c0, *c1, F::ZERO, konst, *t0, *t1);
                for (ci, ti) in rest {
                    acc = self.gate_out(F::ONE, *ci, F::ZERO, F::ZERO, acc, *ti);
                }
                acc
            }
        }
    }

    /// Asserts sum coeff_i * w(slot_i) + konst = 0 without a result slot.
    fn assert_zero_lc(&mut self, terms: &[(F, SlotId)], konst: F) {
        match terms {
            [] => assert!(konst.is_zero(), "constant contradiction"),
            [(c0, t0)] => {
                self.cb
                    .add_gate([*c0, F::ZERO, F::ZERO, F::ZERO, konst], [*t0, *t0, *t0])
                    .expect("valid slot");
            }
            _ => {
                let (last, head) = terms.split_last().unwrap();
                let acc = self.lc(head, konst);
                self.cb
                    .add_gate(
                        [F::ONE, last.0, F::ZERO, F::ZERO, F::ZERO],
                        [acc, last.1, acc],
                    )
                    .expect("valid slots");
            }
        }
    }

    /// Allocates `num_bits` boolean slots constrained to the little-endian
    /// decomposition of `src`.
    fn decompose(&mut self, src: SlotId, num_bits: usize) -> Vec<SlotId> {
        let bits: Vec<SlotId> = (0..num_bits).map(|_| self.cb.alloc()).collect();
        self.hints.push((
            self.cb.num_rows() as u32,
            Hint::Decompose {
                src,
                bits: bits.clone(),
            },
        ));
        for &b in &bits {
            self.assert_bool(b);
        }
        let mut terms: Vec<(F, SlotId)> = bits
            .iter()
            .enumerate()
            .map(|(i, &b)| (F::new(1u64 << i), b))
            .collect();
        terms.push((-F::ONE, src));
        self.assert_zero_lc(&terms, F::ZERO);
        bits
    }

    /// Adds the given terms mod 2^32: the integer sum (bounded by `max_sum`)
    /// is decomposed into a 32-bit result plus carry bits.
    fn add_mod32(&mut self, terms: &[(F, SlotId)], konst: F, max_sum: u128) -> WordWires {
        debug_assert!(max_sum < 1 << 64);
        let v = self.lc(terms, konst);
        let max_carry = ((max_sum - 1) >> 32) as u64;
        let carry_bits = (64 - max_carry.leading_zeros()) as usize;
        let all_bits = self.decompose(v, 32 + carry_bits);
        let bits: [SlotId; 32] = all_bits[..32].try_into().unwrap();
        let packed = if carry_bits == 0 {
            v
        } else {
            let mut p_terms = vec![(F::ONE, v)];
            for (j, &c) in all_bits[32..].iter().enumerate() {
                p_terms.push((-F::new(1u64 << (32 + j)), c));
            }
            self.lc(&p_terms, F::ZERO)
        };
        WordWires { bits, packed }
    }

    fn pack_word(&mut self, bits: [SlotId; 32]) -> WordWires {
        let terms: Vec<(F, SlotId)> = bits
            .iter()
            .enumerate()
            .map(|(i, &b)| (F::new(1u64 << i), b))
            .collect();
        let packed = self.lc(&terms, F::ZERO);
        WordWires { bits, packed }
    }

    fn constant_word(&mut self, value: u32) -> WordWires {
        let mut bits = [self.zero; 32];
        for (i, bit) in bits.iter_mut().enumerate() {
            if (value >> i) & 1 == 1 {
                *bit = self.one;
            }
        }
        let packed = self.constant(F::from(value));
        WordWires { bits, packed }
    }

    fn xor_words(&mut self, x: &[SlotId; 32], y: &[SlotId; 32]) -> [SlotId; 32] {
        let mut out = [self.zero; 32];
        for i in 0..32 {
            out[i] = self.xor(x[i], y[i]);
        }
        out
    }

    /// Big sigma: XOR of three rotations. Zero gates for the rotations.
    fn big_sigma(&mut self, x: &[SlotId; 32], r1: u32, r2: u32, r3: u32) -> [SlotId; 32] {
        let l1 = self.xor_words(&rotr(x, r1), &rotr(x, r2));
        self.xor_words(&l1, &rotr(x, r3))
    }

    /// Small sigma: XOR of two rotations and one shift; shifted-in zeros
    /// make the top bits of the second XOR layer free.
    fn small_sigma(&mut self, x: &[SlotId; 32], r1: u32, r2: u32, s: u32) -> [SlotId; 32] {
        let l1 = self.xor_words(&rotr(x, r1), &rotr(x, r2));
        let shifted = shr(x, s, self.zero);
        self.xor_words(&l1, &shifted)
    }

    /// Ch(x,y,z) = z + x*(y - z) per bit; contributes the per-bit products
    /// plus z's packed value to the caller's running sum.
    fn ch_terms(
        &mut self,
        x: &WordWires,
        y: &WordWires,
        z: &WordWires,
        terms: &mut Vec<(F, SlotId)>,
    ) {
        for i in 0..32 {
            let d = self.sub(y.bits[i], z.bits[i]);
            let t = self.mul(x.bits[i], d);
            terms.push((F::new(1u64 << i), t));
        }
        terms.push((F::ONE, z.packed));
    }

    /// Maj(x,y,z) = x*y + (x xor y)*z per bit; pushes both product terms.
    fn maj_terms(
        &mut self,
        x: &WordWires,
        y: &WordWires,
        z: &WordWires,
        terms: &mut Vec<(F, SlotId)>,
    ) {
        for i in 0..32 {
            let v = self.mul(x.bits[i], y.bits[i]);
            let s = self.xor(x.bits[i], y.bits[i]);
            let u = self.mul(s, z.bits[i]);
            let w = F::new(1u64 << i);
            terms.push((w, v));
            terms.push((w, u));
        }
    }
}

fn rotr(x: &[SlotId; 32], r: u32) -> [SlotId; 32] {
    let mut out = [x[0]; 32];
    for (i, o) in out.iter_mut().enumerate() {
        *o = x[(i + r as usize) % 32];
    }
    out
}

fn shr(x: &[SlotId; 32], s: u32, zero: SlotId) -> [SlotId; 32] {
    let mut out = [zero; 32];
    for i in 0..(32 - s as usize) {
        out[i] = x[i + s as usize];
    }
    out
}

/// Builds the circuit computing the full Merkle-Damgard chain over
/// `num_blocks` 64-byte blocks. Message bits are witness inputs; the eight
/// digest words and the message byte length are public inputs.
pub fn build_sha256_circuit(num_blocks: usize) -> Result<Sha256Layout, GadgetError> {
    if num_blocks == 0 {
        return Err(GadgetError::ZeroBlocks);
    }
    let mut g = GadgetBuilder::new();
    let mut state: [WordWires; 8] = {
        let mut s = [g.constant_word(INITIAL_STATE[0]); 8];
        for i in 1..8 {
            s[i] = g.constant_word(INITIAL_STATE[i]);
        }
        s
    };

    let mut message_bit_slots = Vec::with_capacity(num_blocks);
    for _ in 0..num_blocks {
        // 512 fresh boolean message-bit slots
        let bit_slots: Vec<SlotId> = (0..512).map(|_| g.cb.alloc()).collect();
        for &b in &bit_slots {
            g.assert_bool(b);
        }
        let mut w: Vec<WordWires> = (0..16)
            .map(|i| {
                let bits: [SlotId; 32] = bit_slots[i * 32..(i + 1) * 32].try_into().unwrap();
                g.pack_word(bits)
            })
            .collect();
        // message schedule
        for t in 16..64 {
            let s0 = g.small_sigma(&w[t - 15].bits, 7, 18, 3);
            let s1 = g.small_sigma(&w[t - 2].bits, 17, 19, 10);
            let mut terms: Vec<(F, SlotId)> = Vec::with_capacity(66);
            for i in 0..32 {
                let weight = F::new(1u64 << i);
                terms.push((weight, s0[i]));
                terms.push((weight, s1[i]));
            }
            terms.push((F::ONE, w[t - 7].packed));
            terms.push((F::ONE, w[t - 16].packed));
            w.push(g.add_mod32(&terms, F::ZERO, 4 << 32));
        }
        // 64 rounds
        let [mut a, mut b, mut c, mut d, mut e, mut f, mut ff, mut h] = state;
        // (ff is the g working variable; g is the builder)
        for (t, &k) in ROUND_CONSTANTS.iter().enumerate() {
            let s1 = g.big_sigma(&e.bits, 6, 11, 25);
            let mut p_terms: Vec<(F, SlotId)> = Vec::with_capacity(67);
            p_terms.push((F::ONE, h.packed));
            for (i, &s) in s1.iter().enumerate() {
                p_terms.push((F::new(1u64 << i), s));
            }
            g.ch_terms(&e, &f, &ff, &mut p_terms);
            p_terms.push((F::ONE, w[t].packed));
            // p = h + S1(e) + Ch(e,f,g) + K_t + W_t, shared by T1's two users
            let p = g.lc(&p_terms, F::from(k));
            let new_e = g.add_mod32(&[(F::ONE, d.packed), (F::ONE, p)], F::ZERO, 6 << 32);
            let s0 = g.big_sigma(&a.bits, 2, 13, 22);
            let mut a_terms: Vec<(F, SlotId)> = Vec::with_capacity(97);
            a_terms.push((F::ONE, p));
            for (i, &s) in s0.iter().enumerate() {
                a_terms.push((F::new(1u64 << i), s));
            }
            g.maj_terms(&a, &b, &c, &mut a_terms);
            let new_a = g.add_mod32(&a_terms, F::ZERO, 7 << 32);
            h = ff;
            ff = f;
            f = e;
            e = new_e;
            d = c;
            c = b;
            b = a;
            a = new_a;
        }
        let round_out = [a, b, c, d, e, f, ff, h];
        for i in 0..8 {
            state[i] = g.add_mod32(
                &[(F::ONE, state[i].packed), (F::ONE, round_out[i].packed)],
                F::ZERO,
                2 << 32,
            );
        }
        message_bit_slots.push(bit_slots);
    }

    // Message length as a public input, bound to the FIPS length field in the
    // last block (bit length = len * 8, big-endian across words 14 and 15).
    let last_bits = message_bit_slots.last().unwrap();
    let w14 = &last_bits[14 * 32..15 * 32];
    let w15 = &last_bits[15 * 32..16 * 32];
    for &low in &w15[..3] {
        let zero = g.zero;
        g.cb.connect(low, zero)?;
    }
    let mut len_terms: Vec<(F, SlotId)> = Vec::with_capacity(61);
    for (j, &bit) in w15.iter().enumerate().skip(3) {
        len_terms.push((F::new(1u64 << (j - 3)), bit));
    }
    for (j, &bit) in w14.iter().enumerate() {
        len_terms.push((F::new(1u64 << (29 + j)), bit));
    }
    let length_public = g.lc(&len_terms, F::ZERO);

    let digest_slots: [SlotId; 8] = std::array::from_fn(|i| state[i].packed);
    for s in digest_slots {
        g.cb.mark_public(s)?;
    }
    g.cb.mark_public(length_public)?;

    let circuit = g.cb.finalize()?;
    Ok(Sha256Layout {
        circuit,
        num_blocks,
        message_bit_slots,
        digest_slots,
        length_public,
        hints: g.hints,
    })
}

/// Generates a satisfying witness for `message` and returns it with the
/// public-input vector (eight digest words then the byte length).
pub fn generate_witness(
    layout: &Sha256Layout,
    message: &[u8],
) -> Result<(Witness, Vec<F>), GadgetError> {
    let padded = pad_message(message);
    if padded.block_count() != layout.num_blocks {
        return Err(GadgetError::Message(Sha256Error::BlockCountMismatch {
            message_blocks: padded.block_count(),
            layout_blocks: layout.num_blocks,
        }));
    }
    let circuit = &layout.circuit;
    let mut witness = Witness::new(circuit.num_slots);

    for (block, slots) in padded.blocks.iter().zip(&layout.message_bit_slots) {
        for (word_idx, chunk) in block.chunks_exact(4).enumerate() {
            let word = u32::from_be_bytes(chunk.try_into().unwrap());
            for bit in 0..32 {
                let v = (word >> bit) & 1;
                witness.set(slots[word_idx * 32 + bit], F::from(v as u64));
            }
        }
    }

    // Replay: hints fire before their keyed row; every other defining gate is
    // solved for its output wire in row order.
    let mut hint_iter = layout.hints.iter().peekable();
    for (row_idx, row) in circuit.rows.iter().enumerate() {
        while let Some((hint_row, hint)) = hint_iter.peek() {
            if *hint_row as usize > row_idx {
                break;
            }
            match hint {
                Hint::Assign { slot, value } => witness.set(*slot, *value),
                Hint::Decompose { src, bits } => {
                    let value = witness
                        .get(*src)
                        .ok_or(GadgetError::UnsolvableRow(row_idx))?
                        .value();
                    for (i, &b) in bits.iter().enumerate() {
                        witness.set(b, F::new((value >> i) & 1));
                    }
                }
            }
            hint_iter.next();
        }
        if row.q_o.is_zero() || witness.get(row.c).is_some() {
            continue;
        }
        let wa = witness.get(row.a).ok_or(GadgetError::UnsolvableRow(row_idx))?;
        let wb = witness.get(row.b).ok_or(GadgetError::UnsolvableRow(row_idx))?;
        debug_assert_eq!(row.q_o, -F::ONE, "defining gates use q_o = -1");
        let out = row.q_l * wa + row.q_r * wb + row.q_m * wa * wb + row.q_c;
        witness.set(row.c, out);
    }
    // padding rows carry a fresh unconstrained slot each
    for s in circuit.padding_start_slot..circuit.num_slots as u32 {
        if witness.get(SlotId(s)).is_none() {
            witness.set(SlotId(s), F::ZERO);
        }
    }

    let mut publics = Vec::with_capacity(9);
    for slot in layout.digest_slots {
        publics.push(witness.get(slot).ok_or(GadgetError::UnsolvableRow(0))?);
    }
    publics.push(
        witness
            .get(layout.length_public)
            .ok_or(GadgetError::UnsolvableRow(0))?,
    );
    Ok((witness, publics))
}

/// Decodes a public-input vector into (digest bytes, message length).
/// Returns None if any word exceeds 32 bits.
pub fn publics_to_digest(publics: &[F]) -> Option<([u8; 32], u64)> {
    if publics.len() != 9 {
        return None;
    }
    let mut digest = [0u8; 32];
    for i in 0..8 {
        let v = publics[i].value();
        if v > u32::MAX as u64 {
            return None;
        }
        digest[4 * i..4 * i + 4].copy_from_slice(&(v as u32).to_be_bytes());
    }
    Some((digest, publics[8].value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::check_witness;
    use crate::sha256::digest;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn ch_and_maj_truth_tables() {
        // exercised through 1-bit words in a throwaway builder
        for xv in 0..2u64 {
            for yv in 0..2u64 {
                for zv in 0..2u64 {
                    let mut g = GadgetBuilder::new();
                    let (x, y, z) = (g.cb.alloc(), g.cb.alloc(), g.cb.alloc());
                    let d = g.sub(y, z);
                    let t = g.mul(x, d);
                    // ch = z + t
                    let ch = g.lc(&[(F::ONE, z), (F::ONE, t)], F::ZERO);
                    let v = g.mul(x, y);
                    let s = g.xor(x, y);
                    let u = g.mul(s, z);
                    let maj = g.lc(&[(F::ONE, v), (F::ONE, u)], F::ZERO);
                    let circuit = g.cb.finalize().unwrap();
                    let mut w = Witness::new(circuit.num_slots);
                    w.set(x, F::new(xv));
                    w.set(y, F::new(yv));
                    w.set(z, F::new(zv));
                    // replay defining gates
                    for row in &circuit.rows {
                        if row.q_o == -F::ONE && w.get(row.c).is_none() {
                            let (wa, wb) = (w.get(row.a), w.get(row.b));
                            if let (Some(wa), Some(wb)) = (wa, wb) {
                                w.set(row.c, row.q_l * wa + row.q_r * wb + row.q_m * wa * wb + row.q_c);
                            }
                        }
                    }
                    let expected_ch = (xv & yv) ^ (!xv & 1 & zv);
                    let expected_maj = (xv & yv) ^ (xv & zv) ^ (yv & zv);
                    assert_eq!(w.get(ch).unwrap(), F::new(expected_ch));
                    assert_eq!(w.get(maj).unwrap(), F::new(expected_maj));
                }
            }
        }
    }

    #[test]
    fn one_block_layout_shape() {
        let layout = build_sha256_circuit(1).unwrap();
        assert_eq!(layout.message_bit_slots.len(), 1);
        assert_eq!(layout.message_bit_slots[0].len(), 512);
        assert_eq!(layout.circuit.public_slots.len(), 9);
        // every message bit slot carries a booleanity gate
        let mut bool_gated = std::collections::HashSet::new();
        for row in &layout.circuit.rows {
            if row.q_l == -F::ONE && row.q_m == F::ONE && row.a == row.b && row.a == row.c {
                bool_gated.insert(row.a);
            }
        }
        for &s in &layout.message_bit_slots[0] {
            assert!(bool_gated.contains(&s), "missing booleanity gate");
        }
    }

    #[test]
    fn zero_blocks_rejected() {
        assert!(matches!(
            build_sha256_circuit(0),
            Err(GadgetError::ZeroBlocks)
        ));
    }

    #[test]
    fn empty_message_digest() {
        let layout = build_sha256_circuit(1).unwrap();
        let (witness, publics) = generate_witness(&layout, b"").unwrap();
        assert!(check_witness(&layout.circuit, &witness, &publics));
        let (d, len) = publics_to_digest(&publics).unwrap();
        assert_eq!(
            hex::encode(d),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
        assert_eq!(len, 0);
    }

    #[test]
    fn abc_digest_matches_native() {
        let layout = build_sha256_circuit(1).unwrap();
        let (witness, publics) = generate_witness(&layout, b"abc").unwrap();
        assert!(check_witness(&layout.circuit, &witness, &publics));
        let (d, len) = publics_to_digest(&publics).unwrap();
        assert_eq!(d, digest(b"abc"));
        assert_eq!(len, 3);
    }

    #[test]
    fn random_messages_match_native_oracle() {
        let mut rng = StdRng::seed_from_u64(77);
        let layouts: Vec<Sha256Layout> =
            (1..=3).map(|b| build_sha256_circuit(b).unwrap()).collect();
        for _ in 0..25 {
            let len = rng.gen_range(0..=150);
            let msg: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            let blocks = pad_message(&msg).block_count();
            let layout = &layouts[blocks - 1];
            let (witness, publics) = generate_witness(layout, &msg).unwrap();
            assert!(check_witness(&layout.circuit, &witness, &publics));
            let (d, l) = publics_to_digest(&publics).unwrap();
            assert_eq!(d, digest(&msg), "digest mismatch at len {len}");
            assert_eq!(l, len as u64);
        }
    }

    #[test]
    fn multi_block_chain() {
        let layout = build_sha256_circuit(2).unwrap();
        let msg = vec![0xAB; 100];
        let (witness, publics) = generate_witness(&layout, &msg).unwrap();
        assert!(check_witness(&layout.circuit, &witness, &publics));
        let (d, _) = publics_to_digest(&publics).unwrap();
        assert_eq!(d, digest(&msg));
    }

    #[test]
    fn block_count_mismatch_is_an_error() {
        let layout = build_sha256_circuit(1).unwrap();
        let too_long = vec![0u8; 100];
        assert!(matches!(
            generate_witness(&layout, &too_long),
            Err(GadgetError::Message(Sha256Error::BlockCountMismatch { .. }))
        ));
    }

    #[test]
    fn gate_count_proportionality() {
        let g1 = build_sha256_circuit(1).unwrap().circuit.gate_count() as f64;
        let g2 = build_sha256_circuit(2).unwrap().circuit.gate_count() as f64;
        let ratio = g2 / g1;
        assert!((1.9..=2.1).contains(&ratio), "2-block ratio {ratio}");
    }

    #[test]
    fn honest_word_values_stay_32_bit() {
        let layout = build_sha256_circuit(1).unwrap();
        let (witness, _) = generate_witness(&layout, b"word width check").unwrap();
        for slot in layout.digest_slots {
            assert!(witness.get(slot).unwrap().value() <= u32::MAX as u64);
        }
    }

    #[test]
    fn witness_mutation_soundness_sample() {
        let layout = build_sha256_circuit(1).unwrap();
        let (witness, publics) = generate_witness(&layout, b"mutate me").unwrap();
        assert!(check_witness(&layout.circuit, &witness, &publics));
        let mut rng = StdRng::seed_from_u64(5);
        let mut accepted = 0usize;
        for _ in 0..200 {
            let slot = SlotId(rng.gen_range(0..layout.circuit.num_slots as u32));
            let mut mutated = witness.clone();
            let old = mutated.get(slot).unwrap();
            let delta = F::new(rng.gen_range(1..crate::field::MODULUS));
            mutated.set(slot, old + delta);
            if check_witness(&layout.circuit, &mutated, &publics) {
                // only padding-row slots are genuinely unconstrained
                assert!(
                    slot.0 >= layout.circuit.padding_start_slot,
                    "constrained slot {slot:?} accepted a mutation"
                );
                accepted += 1;
            }
        }
        // sanity: the sweep hit some constrained slots
        assert!(accepted < 200);
    }
}
