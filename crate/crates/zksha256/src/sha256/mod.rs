//! Native SHA-256 (FIPS 180-4) as baseline and witness oracle, plus the
//! circuit gadget that arithmetizes the full compression chain.

pub mod gadget;

pub use gadget::{build_sha256_circuit, generate_witness, GadgetError, Sha256Layout};

/// First 32 bits of the fractional parts of the square roots of the first
/// eight primes (FIPS 180-4, section 5.3.3).
pub const INITIAL_STATE: [u32; 8] = [
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c, 0x1f83d9ab,
    0x5be0cd19,
];

/// First 32 bits of the fractional parts of the cube roots of the first 64
/// primes (FIPS 180-4, section 4.2.2).
pub const ROUND_CONSTANTS: [u32; 64] = [
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2,
];

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Sha256Error {
    #[error("claimed digest must be 32 bytes, got {0}")]
    BadDigestLength(usize),
    #[error("message of {message_blocks} padded blocks does not fit a {layout_blocks}-block layout")]
    BlockCountMismatch {
        message_blocks: usize,
        layout_blocks: usize,
    },
}

/// A message with FIPS 180-4 padding applied: 0x80, zero fill, then the
/// bit length as a 64-bit big-endian integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedMessage {
    pub blocks: Vec<[u8; 64]>,
    pub original_len: usize,
}

impl PaddedMessage {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

pub fn pad_message(message: &[u8]) -> PaddedMessage {
    let original_len = message.len();
    let block_count = (original_len + 9).div_ceil(64);
    let mut padded = vec![0u8; block_count * 64];
    padded[..original_len].copy_from_slice(message);
    padded[original_len] = 0x80;
    let bit_len = (original_len as u64) * 8;
    padded[block_count * 64 - 8..].copy_from_slice(&bit_len.to_be_bytes());
    let blocks = padded
        .chunks_exact(64)
        .map(|c| c.try_into().unwrap())
        .collect();
    PaddedMessage {
        blocks,
        original_len,
    }
}

/// One compression-function application on a 64-byte block.
pub fn compress(state: &mut [u32; 8], block: &[u8; 64]) {
    let mut w = [0u32; 64];
    for (i, chunk) in block.chunks_exact(4).enumerate() {
        w[i] = u32::from_be_bytes(chunk.try_into().unwrap());
    }
    for t in 16..64 {
        let s0 = w[t - 15].rotate_right(7) ^ w[t - 15].rotate_right(18) ^ (w[t - 15] >> 3);
        let s1 = w[t - 2].rotate_right(17) ^ w[t - 2].rotate_right(19) ^ (w[t - 2] >> 10);
        w[t] = w[t - 16]
            .wrapping_add(s0)
            .wrapping_add(w[t - 7])
            .wrapping_add(s1);
    }
    let [mut a, mut b, mut c, mut d, mut e, mut f, mut g, mut h] = *state;
    for t in 0..64 {
        let big_s1 = e.rotate_right(6) ^ e.rotate_right(11) ^ e.rotate_right(25);
        let ch = (e & f) ^ (!e & g);
        let t1 = h
            .wrapping_add(big_s1)
            .wrapping_add(ch)
            .wrapping_add(ROUND_CONSTANTS[t])
            .wrapping_add(w[t]);
        let big_s0 = a.rotate_right(2) ^ a.rotate_right(13) ^ a.rotate_right(22);
        let maj = (a & b) ^ (a & c) ^ (b & c);
        let t2 = big_s0.wrapping_add(maj);
        h = g;
        g = f;
        f = e;
        e = d.wrapping_add(t1);
        d = c;
        c = b;
        b = a;
        a = t1.wrapping_add(t2);
    }
    state[0] = state[0].wrapping_add(a);
    state[1] = state[1].wrapping_add(b);
    state[2] = state[2].wrapping_add(c);
    state[3] = state[3].wrapping_add(d);
    state[4] = state[4].wrapping_add(e);
    state[5] = state[5].wrapping_add(f);
    state[6] = state[6].wrapping_add(g);
    state[7] = state[7].wrapping_add(h);
}

/// FIPS 180-4 digest together with the number of compression-function
/// applications (one per 64-byte padded block).
pub fn digest_counted(message: &[u8]) -> ([u8; 32], usize) {
    let padded = pad_message(message);
    let mut state = INITIAL_STATE;
    for block in &padded.blocks {
        compress(&mut state, block);
    }
    let mut out = [0u8; 32];
    for (i, word) in state.iter().enumerate() {
        out[4 * i..4 * i + 4].copy_from_slice(&word.to_be_bytes());
    }
    (out, padded.block_count())
}

pub fn digest(message: &[u8]) -> [u8; 32] {
    digest_counted(message).0
}

/// Recomputes the hash and compares: the native-verification baseline.
pub fn native_verify(message: &[u8], claimed_digest: &[u8]) -> Result<bool, Sha256Error> {
    if claimed_digest.len() != 32 {
        return Err(Sha256Error::BadDigestLength(claimed_digest.len()));
    }
    Ok(digest(message)[..] == *claimed_digest)
}
