//! Proof object and its bit-exact wire encoding.
//!
//! All lengths are explicit 64-bit little-endian prefixes, so the proof byte
//! size is a pure function of (n, params) — a property the acceptance tests
//! rely on — and decoding never reads outside declared lengths.

use crate::bytes::{ByteReader, ByteWriter, DecodeError};
use crate::field::{ExtFieldElement, FieldElement};

use super::params::ProverParams;

/// Column counts of the four commitment trees, in protocol order:
/// preprocessed (q_l, q_r, q_m, q_o, q_c, sigma_0, sigma_1, sigma_2),
/// wires (a, b, c), grand product (z_c0, z_c1),
/// quotient (t0_c0, t0_c1, t1_c0, t1_c1, t2_c0, t2_c1).
pub const TREE_COLS: [usize; 4] = [8, 3, 2, 6];

/// Claimed evaluations at zeta, indexed per TREE_COLS order (19 columns),
/// followed by z_c0 and z_c1 at omega*zeta.
pub const NUM_EVALS: usize = 21;
pub const EVAL_Z_C0: usize = 11;
pub const EVAL_Z_C1: usize = 12;
pub const EVAL_Z_SHIFT_C0: usize = 19;
pub const EVAL_Z_SHIFT_C1: usize = 20;

/// One chunk opening in a column tree: all columns' values over the chunk
/// (column-major) plus the Merkle authentication path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkOpening {
    pub values: Vec<FieldElement>,
    pub path: Vec<[u8; 32]>,
}

/// One committed FRI layer opening: the fold pair at the queried position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriOpening {
    pub lo: ExtFieldElement,
    pub hi: ExtFieldElement,
    pub path: Vec<[u8; 32]>,
}

/// Per-query openings: for each of the four column trees, the chunks
/// containing positions j and j + N/2; then one opening per committed FRI
/// layer along the fold walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryProof {
    pub column_openings: Vec<[ChunkOpening; 2]>,
    pub fri_openings: Vec<FriOpening>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub params: ProverParams,
    pub n: u64,
    pub publics: Vec<FieldElement>,
    pub wire_root: [u8; 32],
    pub z_root: [u8; 32],
    pub quotient_root: [u8; 32],
    pub evals: [ExtFieldElement; NUM_EVALS],
    pub fri_layer_roots: Vec<[u8; 32]>,
    pub fri_final_coeffs: Vec<ExtFieldElement>,
    pub queries: Vec<QueryProof>,
}

fn write_hashes(w: &mut ByteWriter, hashes: &[[u8; 32]]) {
    w.write_u64(hashes.len() as u64);
    for h in hashes {
        w.write_fixed(h);
    }
}

fn read_hashes(r: &mut ByteReader) -> Result<Vec<[u8; 32]>, DecodeError> {
    let len = r.read_u64()?;
    if len > (1 << 24) {
        return Err(DecodeError::BadLength(len));
    }
    (0..len).map(|_| r.read_fixed()).collect()
}

impl ChunkOpening {
    fn write(&self, w: &mut ByteWriter) {
        w.write_fe_slice(&self.values);
        write_hashes(w, &self.path);
    }

    fn read(r: &mut ByteReader) -> Result<Self, DecodeError> {
        Ok(Self {
            values: r.read_fe_slice()?,
            path: read_hashes(r)?,
        })
    }
}

impl FriOpening {
    fn write(&self, w: &mut ByteWriter) {
        w.write_ext(self.lo);
        w.write_ext(self.hi);
        write_hashes(w, &self.path);
    }

    fn read(r: &mut ByteReader) -> Result<Self, DecodeError> {
        Ok(Self {
            lo: r.read_ext()?,
            hi: r.read_ext()?,
            path: read_hashes(r)?,
        })
    }
}

impl QueryProof {
    fn write(&self, w: &mut ByteWriter) {
        w.write_u64(self.column_openings.len() as u64);
        for [lo, hi] in &self.column_openings {
            lo.write(w);
            hi.write(w);
        }
        w.write_u64(self.fri_openings.len() as u64);
        for op in &self.fri_openings {
            op.write(w);
        }
    }

    fn read(r: &mut ByteReader) -> Result<Self, DecodeError> {
        let trees = r.read_u64()?;
        if trees > 16 {
            return Err(DecodeError::BadLength(trees));
        }
        let mut column_openings = Vec::with_capacity(trees as usize);
        for _ in 0..trees {
            column_openings.push([ChunkOpening::read(r)?, ChunkOpening::read(r)?]);
        }
        let layers = r.read_u64()?;
        if layers > 64 {
            return Err(DecodeError::BadLength(layers));
        }
        let fri_openings = (0..layers)
            .map(|_| FriOpening::read(r))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            column_openings,
            fri_openings,
        })
    }
}

impl Proof {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        self.params.write(&mut w);
        w.write_u64(self.n);
        w.write_fe_slice(&self.publics);
        w.write_fixed(&self.wire_root);
        w.write_fixed(&self.z_root);
        w.write_fixed(&self.quotient_root);
        for e in &self.evals {
            w.write_ext(*e);
        }
        write_hashes(&mut w, &self.fri_layer_roots);
        w.write_ext_slice(&self.fri_final_coeffs);
        w.write_u64(self.queries.len() as u64);
        for q in &self.queries {
            q.write(&mut w);
        }
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = ByteReader::new(bytes);
        let params = ProverParams::read(&mut r)?;
        let n = r.read_u64()?;
        let publics = r.read_fe_slice()?;
        let wire_root = r.read_fixed()?;
        let z_root = r.read_fixed()?;
        let quotient_root = r.read_fixed()?;
        let mut evals = [ExtFieldElement::ZERO; NUM_EVALS];
        for e in evals.iter_mut() {
            *e = r.read_ext()?;
        }
        let fri_layer_roots = read_hashes(&mut r)?;
        let fri_final_coeffs = r.read_ext_slice()?;
        let num_queries = r.read_u64()?;
        if num_queries > (1 << 16) {
            return Err(DecodeError::BadLength(num_queries));
        }
        let queries = (0..num_queries)
            .map(|_| QueryProof::read(&mut r))
            .collect::<Result<_, _>>()?;
        r.finish()?;
        Ok(Self {
            params,
            n,
            publics,
            wire_root,
            z_root,
            quotient_root,
            evals,
            fri_layer_roots,
            fri_final_coeffs,
            queries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_proof() -> Proof {
        Proof {
            params: ProverParams::default(),
            n: 16,
            publics: vec![FieldElement::new(5), FieldElement::new(9)],
            wire_root: [1; 32],
            z_root: [2; 32],
            quotient_root: [3; 32],
            evals: std::array::from_fn(|i| {
                ExtFieldElement::new(FieldElement::new(i as u64), FieldElement::new(100 + i as u64))
            }),
            fri_layer_roots: vec![[4; 32], [5; 32]],
            fri_final_coeffs: vec![ExtFieldElement::ONE; 8],
            queries: vec![QueryProof {
                column_openings: vec![[
                    ChunkOpening {
                        values: vec![FieldElement::new(7); 8],
                        path: vec![[6; 32]],
                    },
                    ChunkOpening {
                        values: vec![FieldElement::new(8); 8],
                        path: vec![[7; 32]],
                    },
                ]],
                fri_openings: vec![FriOpening {
                    lo: ExtFieldElement::ONE,
                    hi: ExtFieldElement::ZERO,
                    path: vec![[9; 32]; 3],
                }],
            }],
        }
    }

    #[test]
    fn round_trip() {
        let p = sample_proof();
        let bytes = p.to_bytes();
        assert_eq!(Proof::from_bytes(&bytes).unwrap(), p);
    }

    #[test]
    fn truncation_rejected() {
        let bytes = sample_proof().to_bytes();
        assert!(Proof::from_bytes(&bytes[..bytes.len() - 1]).is_err());
    }

    #[test]
    fn trailing_bytes_rejected() {
        let mut bytes = sample_proof().to_bytes();
        bytes.push(0);
        assert!(Proof::from_bytes(&bytes).is_err());
    }

    #[test]
    fn non_canonical_field_element_rejected() {
        let p = sample_proof();
        let bytes = p.to_bytes();
        // the first public input starts right after params (36 bytes) + n (8)
        // + slice length prefix (8)
        let off = 36 + 8 + 8;
        let mut bad = bytes.clone();
        bad[off..off + 8].copy_from_slice(&u64::MAX.to_le_bytes());
        assert!(Proof::from_bytes(&bad).is_err());
    }
}
