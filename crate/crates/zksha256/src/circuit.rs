//! A PLONK-style constraint system: universal arithmetic gates over three
//! routed wires, copy constraints via a wiring permutation, public inputs,
//! and a naive witness-satisfaction oracle.
//!
//! Every row enforces
//!   q_l*w(a) + q_r*w(b) + q_m*w(a)*w(b) + q_o*w(c) + q_c = 0
//! and slots placed in the same copy class must carry equal values. The
//! wiring permutation sigma ranges over the 3n wire positions, column-major
//! (position = col*n + row).

use crate::field::FieldElement;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("unknown wire slot {0}")]
    UnknownSlot(u32),
    #[error("cannot finalize an empty circuit")]
    Empty,
}

/// Identifier of one constrained value position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotId(pub u32);

impl SlotId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One constraint row: five selectors and three routed wire slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateRow {
    pub q_l: FieldElement,
    pub q_r: FieldElement,
    pub q_m: FieldElement,
    pub q_o: FieldElement,
    pub q_c: FieldElement,
    pub a: SlotId,
    pub b: SlotId,
    pub c: SlotId,
}

impl GateRow {
    fn zero(slot: SlotId) -> Self {
        Self {
            q_l: FieldElement::ZERO,
            q_r: FieldElement::ZERO,
            q_m: FieldElement::ZERO,
            q_o: FieldElement::ZERO,
            q_c: FieldElement::ZERO,
            a: slot,
            b: slot,
            c: slot,
        }
    }

    /// Evaluates the gate equation for concrete wire values.
    #[inline]
    pub fn evaluate(
        &self,
        wa: FieldElement,
        wb: FieldElement,
        wc: FieldElement,
    ) -> FieldElement {
        self.q_l * wa + self.q_r * wb + self.q_m * wa * wb + self.q_o * wc + self.q_c
    }
}

/// Union-find over slot ids; path-halving, union by smaller root for
/// deterministic class representatives.
#[derive(Clone, Debug, Default)]
struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn add(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Incrementally built constraint system; `finalize` turns it into an
/// immutable [`Circuit`].
#[derive(Debug, Default)]
pub struct CircuitBuilder {
    rows: Vec<GateRow>,
    dsu: DisjointSet,
    public_slots: Vec<SlotId>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a fresh wire slot.
    pub fn alloc(&mut self) -> SlotId {
        SlotId(self.dsu.add())
    }

    pub fn num_slots(&self) -> usize {
        self.dsu.parent.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    fn check_slot(&self, s: SlotId) -> Result<(), CircuitError> {
        if s.index() >= self.dsu.parent.len() {
            return Err(CircuitError::UnknownSlot(s.0));
        }
        Ok(())
    }

    /// Appends a gate row; returns its row index.
    pub fn add_gate(
        &mut self,
        selectors: [FieldElement; 5],
        wires: [SlotId; 3],
    ) -> Result<usize, CircuitError> {
        for w in wires {
            self.check_slot(w)?;
        }
        let [q_l, q_r, q_m, q_o, q_c] = selectors;
        let [a, b, c] = wires;
        self.rows.push(GateRow {
            q_l,
            q_r,
            q_m,
            q_o,
            q_c,
            a,
            b,
            c,
        });
        Ok(self.rows.len() - 1)
    }

    /// Places two slots in the same copy class.
    pub fn connect(&mut self, s1: SlotId, s2: SlotId) -> Result<(), CircuitError> {
        self.check_slot(s1)?;
        self.check_slot(s2)?;
        self.dsu.union(s1.0, s2.0);
        Ok(())
    }

    /// Declares a slot as the next public input, in call order.
    pub fn mark_public(&mut self, s: SlotId) -> Result<(), CircuitError> {
        self.check_slot(s)?;
        self.public_slots.push(s);
        Ok(())
    }

    /// Pads to a power of two, appends one dedicated row per public input,
    /// and computes the wiring permutation.
    pub fn finalize(mut self) -> Result<Circuit, CircuitError> {
        if self.rows.is_empty() {
            return Err(CircuitError::Empty);
        }
        // One dedicated all-zero-selector row per public input; the prover
        // folds the claimed value in through the public-input constraint
        // term, so the row itself carries no selector data.
        let mut public_rows = Vec::with_capacity(self.public_slots.len());
        for &s in &self.public_slots.clone() {
            public_rows.push(self.rows.len());
            self.rows.push(GateRow::zero(s));
        }
        let gate_count = self.rows.len();
        let n = gate_count.next_power_of_two();
        let padding_start_slot = self.dsu.parent.len() as u32;
        while self.rows.len() < n {
            let s = SlotId(self.dsu.add());
            self.rows.push(GateRow::zero(s));
        }

        // Copy classes over wire positions: positions referencing slots with
        // the same class root form one cycle, ordered by position.
        let num_slots = self.dsu.parent.len();
        let mut slot_root = vec![0u32; num_slots];
        for s in 0..num_slots as u32 {
            slot_root[s as usize] = self.dsu.find(s);
        }
        let position_count = 3 * n;
        let slot_of_position = |p: usize| -> SlotId {
            let row = p % n;
            match p / n {
                0 => self.rows[row].a,
                1 => self.rows[row].b,
                _ => self.rows[row].c,
            }
        };
        // Single counting pass then bucket fill keeps this linear.
        let mut class_head: Vec<u32> = vec![u32::MAX; num_slots];
        let mut class_tail: Vec<u32> = vec![u32::MAX; num_slots];
        let mut next_in_class: Vec<u32> = vec![u32::MAX; position_count];
        for p in 0..position_count {
            let root = slot_root[slot_of_position(p).index()] as usize;
            if class_head[root] == u32::MAX {
                class_head[root] = p as u32;
            } else {
                next_in_class[class_tail[root] as usize] = p as u32;
            }
            class_tail[root] = p as u32;
        }
        let mut sigma = vec![0u32; position_count];
        for root in 0..num_slots {
            let head = class_head[root];
            if head == u32::MAX {
                continue;
            }
            let mut p = head;
            loop {
                let next = next_in_class[p as usize];
                if next == u32::MAX {
                    sigma[p as usize] = head;
                    break;
                }
                sigma[p as usize] = next;
                p = next;
            }
        }

        Ok(Circuit {
            rows: self.rows,
            gate_count,
            n,
            num_slots,
            slot_root,
            sigma,
            public_slots: self.public_slots,
            public_rows,
            padding_start_slot,
        })
    }
}

/// A finalized, immutable constraint system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    /// All rows including public-input rows and padding, length `n`.
    pub rows: Vec<GateRow>,
    /// Pre-padding row count: the circuit-size-in-gates statistic.
    pub gate_count: usize,
    /// Padded row count, a power of two.
    pub n: usize,
    pub num_slots: usize,
    /// Copy-class representative per slot.
    pub slot_root: Vec<u32>,
    /// Wiring permutation over the 3n wire positions (column-major).
    pub sigma: Vec<u32>,
    pub public_slots: Vec<SlotId>,
    /// Row index carrying each public input, in public-input order.
    pub public_rows: Vec<usize>,
    /// Slots at or above this id belong to padding rows and are unconstrained.
    pub padding_start_slot: u32,
}

impl Circuit {
    /// Pre-padding row count (the "size of the generated circuit in gates").
    pub fn gate_count(&self) -> usize {
        self.gate_count
    }

    /// Slot routed at wire position `p` (column-major).
    pub fn slot_of_position(&self, p: usize) -> SlotId {
        let row = p % self.n;
        match p / self.n {
            0 => self.rows[row].a,
            1 => self.rows[row].b,
            _ => self.rows[row].c,
        }
    }

    /// Little-endian binary encoding for on-disk persistence.
    pub fn to_bytes(&self) -> Vec<u8> {
        use crate::bytes::ByteWriter;
        let mut w = ByteWriter::new();
        w.write_u64(self.n as u64);
        w.write_u64(self.gate_count as u64);
        w.write_u64(self.num_slots as u64);
        w.write_u32(self.padding_start_slot);
        for row in &self.rows {
            for q in [row.q_l, row.q_r, row.q_m, row.q_o, row.q_c] {
                w.write_fe(q);
            }
            for s in [row.a, row.b, row.c] {
                w.write_u32(s.0);
            }
        }
        for &r in &self.slot_root {
            w.write_u32(r);
        }
        for &s in &self.sigma {
            w.write_u32(s);
        }
        w.write_u64(self.public_slots.len() as u64);
        for s in &self.public_slots {
            w.write_u32(s.0);
        }
        for &r in &self.public_rows {
            w.write_u64(r as u64);
        }
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, crate::bytes::DecodeError> {
        use crate::bytes::{ByteReader, DecodeError};
        let mut r = ByteReader::new(bytes);
        let n = r.read_u64()? as usize;
        if !n.is_power_of_two() || n == 0 || n > (1 << 30) {
            return Err(DecodeError::InvalidValue("circuit size"));
        }
        let gate_count = r.read_u64()? as usize;
        if gate_count > n {
            return Err(DecodeError::InvalidValue("gate count"));
        }
        let num_slots = r.read_u64()? as usize;
        if num_slots == 0 || num_slots > u32::MAX as usize {
            return Err(DecodeError::InvalidValue("slot count"));
        }
        let padding_start_slot = r.read_u32()?;
        let read_slot = |r: &mut ByteReader| -> Result<SlotId, DecodeError> {
            let s = r.read_u32()?;
            if s as usize >= num_slots {
                return Err(DecodeError::InvalidValue("slot id"));
            }
            Ok(SlotId(s))
        };
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let q_l = r.read_fe_canonical()?;
            let q_r = r.read_fe_canonical()?;
            let q_m = r.read_fe_canonical()?;
            let q_o = r.read_fe_canonical()?;
            let q_c = r.read_fe_canonical()?;
            let a = read_slot(&mut r)?;
            let b = read_slot(&mut r)?;
            let c = read_slot(&mut r)?;
            rows.push(GateRow {
                q_l,
                q_r,
                q_m,
                q_o,
                q_c,
                a,
                b,
                c,
            });
        }
        let mut slot_root = Vec::with_capacity(num_slots);
        for _ in 0..num_slots {
            let v = r.read_u32()?;
            if v as usize >= num_slots {
                return Err(DecodeError::InvalidValue("slot root"));
            }
            slot_root.push(v);
        }
        let mut sigma = Vec::with_capacity(3 * n);
        for _ in 0..3 * n {
            let v = r.read_u32()?;
            if v as usize >= 3 * n {
                return Err(DecodeError::InvalidValue("sigma entry"));
            }
            sigma.push(v);
        }
        let num_publics = r.read_u64()? as usize;
        if num_publics > n {
            return Err(DecodeError::InvalidValue("public input count"));
        }
        let mut public_slots = Vec::with_capacity(num_publics);
        for _ in 0..num_publics {
            public_slots.push(read_slot(&mut r)?);
        }
        let mut public_rows = Vec::with_capacity(num_publics);
        for _ in 0..num_publics {
            let v = r.read_u64()? as usize;
            if v >= n {
                return Err(DecodeError::InvalidValue("public row"));
            }
            public_rows.push(v);
        }
        r.finish()?;
        Ok(Self {
            rows,
            gate_count,
            n,
            num_slots,
            slot_root,
            sigma,
            public_slots,
            public_rows,
            padding_start_slot,
        })
    }
}

/// A full wire-value assignment.
#[derive(Clone, Debug)]
pub struct Witness {
    values: Vec<Option<FieldElement>>,
}

impl Witness {
    pub fn new(num_slots: usize) -> Self {
        Self {
            values: vec![None; num_slots],
        }
    }

    pub fn set(&mut self, slot: SlotId, value: FieldElement) {
        self.values[slot.index()] = Some(value);
    }

    pub fn get(&self, slot: SlotId) -> Option<FieldElement> {
        self.values.get(slot.index()).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Naive satisfaction oracle: true iff every gate equation holds, every copy
/// class is value-uniform, and the public slots carry `publics` in order.
/// A missing assignment for any referenced slot yields false.
pub fn check_witness(circuit: &Circuit, witness: &Witness, publics: &[FieldElement]) -> bool {
    if publics.len() != circuit.public_slots.len() {
        return false;
    }
    for row in &circuit.rows {
        let (wa, wb, wc) = match (
            witness.get(row.a),
            witness.get(row.b),
            witness.get(row.c),
        ) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return false,
        };
        if !row.evaluate(wa, wb, wc).is_zero() {
            return false;
        }
    }
    // Copy classes: all slots sharing a root must agree.
    let mut class_value: Vec<Option<FieldElement>> = vec![None; circuit.num_slots];
    for s in 0..circuit.num_slots {
        let v = match witness.get(SlotId(s as u32)) {
            Some(v) => v,
            None => return false,
        };
        let root = circuit.slot_root[s] as usize;
        match class_value[root] {
            None => class_value[root] = Some(v),
            Some(prev) if prev != v => return false,
            _ => {}
        }
    }
    for (slot, expected) in circuit.public_slots.iter().zip(publics) {
        if witness.get(*slot) != Some(*expected) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u64) -> FieldElement {
        FieldElement::new(v)
    }

    fn addition_gate(b: &mut CircuitBuilder, x: SlotId, y: SlotId, z: SlotId) -> usize {
        // z = x + y
        b.add_gate(
            [fe(1), fe(1), FieldElement::ZERO, -fe(1), FieldElement::ZERO],
            [x, y, z],
        )
        .unwrap()
    }

    #[test]
    fn addition_gate_satisfied() {
        let mut b = CircuitBuilder::new();
        let (x, y, z) = (b.alloc(), b.alloc(), b.alloc());
        addition_gate(&mut b, x, y, z);
        let circuit = b.finalize().unwrap();
        let mut w = Witness::new(circuit.num_slots);
        w.set(x, fe(3));
        w.set(y, fe(4));
        w.set(z, fe(7));
        for s in circuit.padding_start_slot..circuit.num_slots as u32 {
            w.set(SlotId(s), FieldElement::ZERO);
        }
        assert!(check_witness(&circuit, &w, &[]));
        w.set(z, fe(8));
        assert!(!check_witness(&circuit, &w, &[]));
    }

    #[test]
    fn xor_gate_truth_table() {
        // c = a + b - 2ab is XOR on boolean inputs
        for (a, b, c) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
            let mut builder = CircuitBuilder::new();
            let (sa, sb, sc) = (builder.alloc(), builder.alloc(), builder.alloc());
            builder
                .add_gate(
                    [fe(1), fe(1), -fe(2), -fe(1), FieldElement::ZERO],
                    [sa, sb, sc],
                )
                .unwrap();
            let circuit = builder.finalize().unwrap();
            let mut w = Witness::new(circuit.num_slots);
            w.set(sa, fe(a));
            w.set(sb, fe(b));
            w.set(sc, fe(c));
            for s in circuit.padding_start_slot..circuit.num_slots as u32 {
                w.set(SlotId(s), FieldElement::ZERO);
            }
            assert!(check_witness(&circuit, &w, &[]), "xor({a},{b})={c}");
            // the complement never satisfies
            w.set(sc, fe(1 - c));
            assert!(!check_witness(&circuit, &w, &[]));
        }
    }

    #[test]
    fn booleanity_gate() {
        // -a + a^2 = 0 holds for 0 and 1, fails for 2
        for (v, ok) in [(0u64, true), (1, true), (2, false)] {
            let mut builder = CircuitBuilder::new();
            let a = builder.alloc();
            builder
                .add_gate(
                    [-fe(1), FieldElement::ZERO, fe(1), FieldElement::ZERO, FieldElement::ZERO],
                    [a, a, a],
                )
                .unwrap();
            let circuit = builder.finalize().unwrap();
            let mut w = Witness::new(circuit.num_slots);
            w.set(a, fe(v));
            for s in circuit.padding_start_slot..circuit.num_slots as u32 {
                w.set(SlotId(s), FieldElement::ZERO);
            }
            assert_eq!(check_witness(&circuit, &w, &[]), ok);
        }
    }

    #[test]
    fn connect_is_reflexive_and_transitive() {
        let mut b = CircuitBuilder::new();
        let (x, y, z) = (b.alloc(), b.alloc(), b.alloc());
        addition_gate(&mut b, x, y, z);
        b.connect(x, x).unwrap();
        b.connect(x, y).unwrap();
        b.connect(y, z).unwrap();
        let circuit = b.finalize().unwrap();
        let root = circuit.slot_root[x.index()];
        assert_eq!(circuit.slot_root[y.index()], root);
        assert_eq!(circuit.slot_root[z.index()], root);
    }

    #[test]
    fn connect_unknown_slot() {
        let mut b = CircuitBuilder::new();
        let x = b.alloc();
        assert_eq!(
            b.connect(x, SlotId(99)).unwrap_err(),
            CircuitError::UnknownSlot(99)
        );
    }

    #[test]
    fn connected_unequal_values_fail_check() {
        let mut b = CircuitBuilder::new();
        let (x, y, z) = (b.alloc(), b.alloc(), b.alloc());
        addition_gate(&mut b, x, y, z);
        b.connect(x, y).unwrap();
        let circuit = b.finalize().unwrap();
        let mut w = Witness::new(circuit.num_slots);
        w.set(x, fe(1));
        w.set(y, fe(2));
        w.set(z, fe(3));
        for s in circuit.padding_start_slot..circuit.num_slots as u32 {
            w.set(SlotId(s), FieldElement::ZERO);
        }
        assert!(!check_witness(&circuit, &w, &[]));
        // equal values satisfy both the gate and the copy class
        w.set(x, fe(2));
        w.set(z, fe(4));
        assert!(check_witness(&circuit, &w, &[]));
    }

    #[test]
    fn padding_to_next_power_of_two() {
        let mut b = CircuitBuilder::new();
        let s = b.alloc();
        for _ in 0..3 {
            b.add_gate([FieldElement::ZERO; 5], [s, s, s]).unwrap();
        }
        let c = b.finalize().unwrap();
        assert_eq!(c.gate_count(), 3);
        assert_eq!(c.n, 4);

        let mut b = CircuitBuilder::new();
        let s = b.alloc();
        for _ in 0..1419 {
            b.add_gate([FieldElement::ZERO; 5], [s, s, s]).unwrap();
        }
        let c = b.finalize().unwrap();
        assert_eq!(c.gate_count(), 1419);
        assert_eq!(c.n, 2048);
    }

    #[test]
    fn empty_builder_fails() {
        assert_eq!(CircuitBuilder::new().finalize().unwrap_err(), CircuitError::Empty);
    }

    #[test]
    fn sigma_is_a_permutation_with_class_cycles() {
        let mut b = CircuitBuilder::new();
        let (x, y, z) = (b.alloc(), b.alloc(), b.alloc());
        addition_gate(&mut b, x, y, z);
        addition_gate(&mut b, y, z, x);
        b.connect(x, y).unwrap();
        let circuit = b.finalize().unwrap();
        let sigma = &circuit.sigma;
        // bijectivity
        let mut seen = vec![false; sigma.len()];
        for &t in sigma {
            assert!(!seen[t as usize]);
            seen[t as usize] = true;
        }
        // applying sigma |class| times returns to the start
        for start in 0..sigma.len() {
            let root = circuit.slot_root[circuit.slot_of_position(start).index()];
            let class_size = (0..sigma.len())
                .filter(|&p| circuit.slot_root[circuit.slot_of_position(p).index()] == root)
                .count();
            let mut p = start as u32;
            for _ in 0..class_size {
                p = sigma[p as usize];
            }
            assert_eq!(p as usize, start);
        }
    }

    #[test]
    fn public_input_mismatch_fails() {
        let mut b = CircuitBuilder::new();
        let (x, y, z) = (b.alloc(), b.alloc(), b.alloc());
        addition_gate(&mut b, x, y, z);
        b.mark_public(z).unwrap();
        let circuit = b.finalize().unwrap();
        assert_eq!(circuit.public_rows.len(), 1);
        let mut w = Witness::new(circuit.num_slots);
        w.set(x, fe(3));
        w.set(y, fe(4));
        w.set(z, fe(7));
        for s in circuit.padding_start_slot..circuit.num_slots as u32 {
            w.set(SlotId(s), FieldElement::ZERO);
        }
        assert!(check_witness(&circuit, &w, &[fe(7)]));
        assert!(!check_witness(&circuit, &w, &[fe(8)]));
        assert!(!check_witness(&circuit, &w, &[]));
    }
}
