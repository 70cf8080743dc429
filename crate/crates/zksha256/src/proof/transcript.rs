//! Fiat-Shamir transcript: a running SHA-256 chain. Challenges are
//! deterministic in the absorb history; extension-field challenges reduce 16
//! squeezed bytes per coordinate (rejection-free).

use sha2::{Digest, Sha256};

use crate::field::{ExtFieldElement, FieldElement, MODULUS};

pub struct Transcript {
    state: [u8; 32],
}

impl Transcript {
    pub fn new(domain_tag: &[u8; 16]) -> Self {
        let mut h = Sha256::new();
        h.update(b"zksha256-transcript-init");
        h.update(domain_tag);
        Self {
            state: h.finalize().into(),
        }
    }

    /// Absorbs labelled data; both label and data are length-prefixed so
    /// distinct histories never collide byte-wise.
    pub fn absorb(&mut self, label: &[u8], data: &[u8]) {
        let mut h = Sha256::new();
        h.update(self.state);
        h.update((label.len() as u64).to_le_bytes());
        h.update(label);
        h.update((data.len() as u64).to_le_bytes());
        h.update(data);
        self.state = h.finalize().into();
    }

    /// Squeezes 32 bytes and advances the state, so repeated squeezes give
    /// independent outputs.
    fn squeeze(&mut self, label: &[u8]) -> [u8; 32] {
        self.absorb(b"challenge", label);
        let mut h = Sha256::new();
        h.update(self.state);
        h.update([0x53u8]);
        let out = h.finalize().into();
        let mut h = Sha256::new();
        h.update(self.state);
        h.update([0x55u8]);
        self.state = h.finalize().into();
        out
    }

    pub fn challenge_ext(&mut self, label: &[u8]) -> ExtFieldElement {
        let bytes = self.squeeze(label);
        let c0 = reduce_wide(&bytes[0..16]);
        let c1 = reduce_wide(&bytes[16..32]);
        ExtFieldElement::new(c0, c1)
    }

    /// Uniform-ish index in [0, bound); bound need not divide 2^64 but the
    /// modulo bias is negligible for power-of-two bounds (zero bias there).
    pub fn challenge_index(&mut self, label: &[u8], bound: usize) -> usize {
        assert!(bound > 0);
        let bytes = self.squeeze(label);
        let v = u64::from_le_bytes(bytes[0..8].try_into().unwrap());
        (v % bound as u64) as usize
    }
}

fn reduce_wide(bytes16: &[u8]) -> FieldElement {
    let v = u128::from_le_bytes(bytes16.try_into().unwrap());
    FieldElement::from_canonical((v % MODULUS as u128) as u64)
}
