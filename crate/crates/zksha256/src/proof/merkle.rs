//! Merkle commitments over SHA-256 with domain-separated node encoding:
//! leaf hash = SHA-256(0x00 || leaf bytes), inner node = SHA-256(0x01 || L || R).

use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MerkleError {
    #[error("leaf count {0} is not a nonzero power of two")]
    BadLeafCount(usize),
    #[error("leaf index {index} out of range for {leaf_count} leaves")]
    IndexOutOfRange { index: usize, leaf_count: usize },
}

pub fn hash_leaf(bytes: &[u8]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update([0x00u8]);
    h.update(bytes);
    h.finalize().into()
}

fn hash_node(left: &[u8; 32], right: &[u8; 32]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update([0x01u8]);
    h.update(left);
    h.update(right);
    h.finalize().into()
}

/// Full binary Merkle tree stored as a flat heap: nodes[leaf_count + i] is
/// leaf i's hash, nodes[k] = hash(nodes[2k], nodes[2k+1]), root at nodes[1].
#[derive(Debug)]
pub struct MerkleTree {
    nodes: Vec<[u8; 32]>,
    leaf_count: usize,
}

impl MerkleTree {
    pub fn from_leaf_hashes(leaf_hashes: Vec<[u8; 32]>) -> Result<Self, MerkleError> {
        let leaf_count = leaf_hashes.len();
        if !leaf_count.is_power_of_two() {
            return Err(MerkleError::BadLeafCount(leaf_count));
        }
        let mut nodes = vec![[0u8; 32]; 2 * leaf_count];
        nodes[leaf_count..].copy_from_slice(&leaf_hashes);
        for k in (1..leaf_count).rev() {
            let (left, right) = (nodes[2 * k], nodes[2 * k + 1]);
            nodes[k] = hash_node(&left, &right);
        }
        Ok(Self { nodes, leaf_count })
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn root(&self) -> [u8; 32] {
        self.nodes[1]
    }

    /// Sibling hashes bottom-up; empty for a single-leaf tree.
    pub fn path(&self, index: usize) -> Result<Vec<[u8; 32]>, MerkleError> {
        if index >= self.leaf_count {
            return Err(MerkleError::IndexOutOfRange {
                index,
                leaf_count: self.leaf_count,
            });
        }
        let mut path = Vec::with_capacity(self.leaf_count.trailing_zeros() as usize);
        let mut k = self.leaf_count + index;
        while k > 1 {
            path.push(self.nodes[k ^ 1]);
            k >>= 1;
        }
        Ok(path)
    }
}

/// Recomputes the root from a leaf and its authentication path.
pub fn verify_path(
    root: &[u8; 32],
    leaf_count: usize,
    index: usize,
    leaf_bytes: &[u8],
    path: &[[u8; 32]],
) -> bool {
    if !leaf_count.is_power_of_two()
        || index >= leaf_count
        || path.len() != leaf_count.trailing_zeros() as usize
    {
        return false;
    }
    let mut acc = hash_leaf(leaf_bytes);
    let mut pos = index;
    for sibling in path {
        acc = if pos & 1 == 0 {
            hash_node(&acc, sibling)
        } else {
            hash_node(sibling, &acc)
        };
        pos >>= 1;
    }
    acc == *root
}
