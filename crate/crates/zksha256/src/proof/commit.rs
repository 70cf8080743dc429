//! Batched polynomial commitments: columns are interpolated over the trace
//! subgroup, evaluated on the blown-up coset, and Merkle-committed with
//! chunked leaves (CHUNK adjacent coset positions of every column per leaf)
//! to keep tree size and opening counts small.

use crate::field::{
    ntt, EvaluationDomain, FieldElement, FieldError, NttDirection,
};

use super::merkle::{hash_leaf, MerkleError, MerkleTree};
use super::types::ChunkOpening;

/// Coset positions per Merkle leaf.
pub const CHUNK: usize = 8;
pub const CHUNK_LOG: u32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CommitError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Merkle(#[from] MerkleError),
    #[error("column length {got} does not match domain size {expected}")]
    ColumnLength { expected: usize, got: usize },
    #[error("no columns to commit")]
    NoColumns,
    #[error("LDE domain smaller than one leaf chunk")]
    DomainTooSmall,
}

/// Prover-side result of committing a batch of columns: the root plus the
/// data needed for openings and later evaluations.
pub struct CommittedColumns {
    pub root: [u8; 32],
    /// Interpolated coefficients, one vector of 2^domain_log per column.
    pub coeffs: Vec<Vec<FieldElement>>,
    /// Coset evaluations, one vector of 2^lde_log per column.
    pub ldes: Vec<Vec<FieldElement>>,
    pub tree: MerkleTree,
    pub domain_log: u32,
    pub lde_log: u32,
}

/// Serializes one leaf's chunk values (column-major) for hashing.
pub fn encode_chunk_values(values: &[FieldElement]) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(values.len() * 8);
    for v in values {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    bytes
}

/// Interpolates `columns` (values over the size-2^domain_log subgroup) and
/// commits their coset LDEs.
pub fn commit_columns(
    columns: &[Vec<FieldElement>],
    domain_log: u32,
    blowup_log: u32,
) -> Result<CommittedColumns, CommitError> {
    let subgroup = EvaluationDomain::subgroup(domain_log)?;
    let mut coeffs = Vec::with_capacity(columns.len());
    for col in columns {
        if col.len() != subgroup.size() {
            return Err(CommitError::ColumnLength {
                expected: subgroup.size(),
                got: col.len(),
            });
        }
        coeffs.push(ntt(col, &subgroup, NttDirection::Inverse)?);
    }
    commit_from_coeffs(coeffs, domain_log, blowup_log)
}

/// Commits columns given directly in coefficient form (degree < 2^domain_log).
pub fn commit_from_coeffs(
    coeffs: Vec<Vec<FieldElement>>,
    domain_log: u32,
    blowup_log: u32,
) -> Result<CommittedColumns, CommitError> {
    if coeffs.is_empty() {
        return Err(CommitError::NoColumns);
    }
    let n = 1usize << domain_log;
    let lde_log = domain_log + blowup_log;
    let lde_domain = EvaluationDomain::coset(lde_log)?;
    let lde_size = lde_domain.size();
    if lde_size < CHUNK {
        return Err(CommitError::DomainTooSmall);
    }
    let mut ldes = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if c.len() != n {
            return Err(CommitError::ColumnLength {
                expected: n,
                got: c.len(),
            });
        }
        let mut padded = vec![FieldElement::ZERO; lde_size];
        padded[..n].copy_from_slice(c);
        crate::field::ntt_in_place(&mut padded, &lde_domain, NttDirection::Forward)?;
        ldes.push(padded);
    }

    let leaf_count = lde_size / CHUNK;
    let mut leaf_hashes = Vec::with_capacity(leaf_count);
    let mut buf = Vec::with_capacity(ldes.len() * CHUNK * 8);
    for leaf in 0..leaf_count {
        buf.clear();
        for col in &ldes {
            for v in &col[leaf * CHUNK..(leaf + 1) * CHUNK] {
                buf.extend_from_slice(&v.to_le_bytes());
            }
        }
        leaf_hashes.push(hash_leaf(&buf));
    }
    let tree = MerkleTree::from_leaf_hashes(leaf_hashes)?;
    Ok(CommittedColumns {
        root: tree.root(),
        coeffs,
        ldes,
        tree,
        domain_log,
        lde_log,
    })
}

impl CommittedColumns {
    /// Frees the coset evaluations to bound peak memory. The commitment and
    /// coefficients stay; call `ensure_ldes` before opening positions.
    pub fn drop_ldes(&mut self) {
        self.ldes = Vec::new();
    }

    /// Recomputes the coset evaluations from the stored coefficients if they
    /// were dropped.
    pub fn ensure_ldes(&mut self) -> Result<(), CommitError> {
        if !self.ldes.is_empty() {
            return Ok(());
        }
        let lde_domain = EvaluationDomain::coset(self.lde_log)?;
        let lde_size = lde_domain.size();
        let n = 1usize << self.domain_log;
        let mut ldes = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let mut padded = vec![FieldElement::ZERO; lde_size];
            padded[..n].copy_from_slice(c);
            crate::field::ntt_in_place(&mut padded, &lde_domain, NttDirection::Forward)?;
            ldes.push(padded);
        }
        self.ldes = ldes;
        Ok(())
    }

    /// Opens the chunk containing coset position `position`: all columns'
    /// values over the chunk, plus the authentication path.
    pub fn open(&self, position: usize) -> Result<ChunkOpening, MerkleError> {
        let leaf = position / CHUNK;
        let mut values = Vec::with_capacity(self.ldes.len() * CHUNK);
        for col in &self.ldes {
            values.extend_from_slice(&col[leaf * CHUNK..(leaf + 1) * CHUNK]);
        }
        Ok(ChunkOpening {
            values,
            path: self.tree.path(leaf)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::merkle::verify_path;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_column(rng: &mut StdRng, len: usize) -> Vec<FieldElement> {
        (0..len)
            .map(|_| FieldElement::new(rng.gen_range(0..crate::field::MODULUS)))
            .collect()
    }

    #[test]
    fn constant_column_constant_leaves() {
        let col = vec![FieldElement::new(42); 8];
        let c = commit_columns(&[col], 3, 3).unwrap();
        // every leaf carries the same bytes: compare leaf hashes
        let first = c.tree.path(0).unwrap();
        let op0 = c.open(0).unwrap();
        for leaf in 0..c.tree.leaf_count() {
            let op = c.open(leaf * CHUNK).unwrap();
            assert_eq!(op.values, op0.values);
        }
        drop(first);
    }

    #[test]
    fn open_verifies_against_root() {
        let mut rng = StdRng::seed_from_u64(11);
        let cols: Vec<Vec<FieldElement>> = (0..3).map(|_| random_column(&mut rng, 16)).collect();
        let c = commit_columns(&cols, 4, 3).unwrap();
        let lde_size = 16usize << 3;
        for _ in 0..10 {
            let pos = rng.gen_range(0..lde_size);
            let op = c.open(pos).unwrap();
            let bytes = encode_chunk_values(&op.values);
            assert!(verify_path(
                &c.root,
                lde_size / CHUNK,
                pos / CHUNK,
                &bytes,
                &op.path
            ));
        }
    }

    #[test]
    fn lde_restricted_to_subgroup_recovers_column() {
        // the LDE agrees with the original values at the embedded points:
        // subgroup point omega^i = coset point? No — the coset is disjoint;
        // instead check coefficients interpolate the column exactly.
        let mut rng = StdRng::seed_from_u64(5);
        let col = random_column(&mut rng, 32);
        let c = commit_columns(std::slice::from_ref(&col), 5, 1).unwrap();
        let sub = EvaluationDomain::subgroup(5).unwrap();
        let back = ntt(&c.coeffs[0], &sub, NttDirection::Forward).unwrap();
        assert_eq!(back, col);
    }

    #[test]
    fn distinct_columns_distinct_roots() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..1000 {
            let col = random_column(&mut rng, 8);
            let c = commit_columns(&[col], 3, 1).unwrap();
            assert!(seen.insert(c.root), "root collision");
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        let col = vec![FieldElement::ZERO; 7];
        assert!(matches!(
            commit_columns(&[col], 3, 1),
            Err(CommitError::ColumnLength { .. })
        ));
    }
}
