//! FRI folding: commit-fold rounds over the coset LDE domain, a final
//! polynomial in the clear, and per-query fold-chain checks.
//!
//! Folding rule: f'(x^2) = (f(x) + f(-x))/2 + beta * (f(x) - f(-x))/(2x),
//! with the natural-order pairing (i, i + M/2) since g^(M/2) = -1. Layer r
//! lives on the coset 7^(2^r) * <g_r> with g_r the order-2^(lde_log - r)
//! root of unity.

use crate::field::{
    two_adic_generator, ntt, EvaluationDomain, ExtFieldElement, FieldElement, FieldError,
    NttDirection, GENERATOR,
};

use super::merkle::{hash_leaf, verify_path, MerkleError, MerkleTree};
use super::params::ProverParams;
use super::transcript::Transcript;
use super::types::FriOpening;

#[derive(Debug, thiserror::Error)]
pub enum FriError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Merkle(#[from] MerkleError),
    #[error("layer length {0} is not a power of two of at least 2")]
    BadLayerLength(usize),
}

/// Number of fold rounds from trace size 2^domain_log down to the stop degree.
pub fn fold_count(domain_log: u32, stop_degree: usize) -> u32 {
    domain_log.saturating_sub(stop_degree.trailing_zeros())
}

/// Coset shift of FRI layer r (layer 0 = the LDE coset, shift 7).
fn layer_shift(r: u32) -> FieldElement {
    FieldElement::from_canonical(GENERATOR).pow(1u64 << r)
}

fn encode_pair(lo: ExtFieldElement, hi: ExtFieldElement) -> [u8; 32] {
    let mut bytes = [0u8; 32];
    bytes[..16].copy_from_slice(&lo.to_le_bytes());
    bytes[16..].copy_from_slice(&hi.to_le_bytes());
    bytes
}

/// Commits a layer with leaf j = (f(j), f(j + M/2)), so one path
/// authenticates a whole fold pair.
fn pair_tree(values: &[ExtFieldElement]) -> Result<MerkleTree, FriError> {
    let m = values.len();
    if !m.is_power_of_two() || m < 2 {
        return Err(FriError::BadLayerLength(m));
    }
    let half = m / 2;
    let leaf_hashes = (0..half)
        .map(|j| hash_leaf(&encode_pair(values[j], values[j + half])))
        .collect();
    Ok(MerkleTree::from_leaf_hashes(leaf_hashes)?)
}

fn fold(
    values: &[ExtFieldElement],
    domain_log: u32,
    shift: FieldElement,
    beta: ExtFieldElement,
) -> Result<Vec<ExtFieldElement>, FriError> {
    let m = values.len();
    debug_assert_eq!(m, 1usize << domain_log);
    let half = m / 2;
    let inv_gen = two_adic_generator(domain_log).inverse()?;
    let two = FieldElement::new(2);
    let inv2 = two.inverse()?;
    // 1/(2 * shift * g^i), updated by the inverse generator each step
    let mut inv_2x = (two * shift).inverse()?;
    let mut out = Vec::with_capacity(half);
    for i in 0..half {
        let (a, b) = (values[i], values[i + half]);
        let even = (a + b).scale(inv2);
        let odd = (beta * (a - b)).scale(inv_2x);
        out.push(even + odd);
        inv_2x *= inv_gen;
    }
    Ok(out)
}

struct LayerAux {
    values: Vec<ExtFieldElement>,
    tree: MerkleTree,
}

/// Prover-side FRI state after all fold rounds.
pub struct FriLayers {
    pub roots: Vec<[u8; 32]>,
    pub final_coeffs: Vec<ExtFieldElement>,
    committed: Vec<LayerAux>,
    lde_log: u32,
}

/// Runs the commit-fold phase. Draws one fold challenge per round, commits
/// every intermediate layer, interpolates the last layer, truncates its
/// coefficients to `stop_degree`, and absorbs them.
///
/// For an honest input of degree < 2^(lde_log - blowup) the truncation drops
/// only zeros; a cheating input simply yields an unverifiable proof.
pub fn fri_commit(
    f0: Vec<ExtFieldElement>,
    lde_log: u32,
    folds: u32,
    stop_degree: usize,
    tr: &mut Transcript,
) -> Result<FriLayers, FriError> {
    debug_assert_eq!(f0.len(), 1usize << lde_log);
    let mut committed: Vec<LayerAux> = Vec::with_capacity(folds.saturating_sub(1) as usize);
    let mut roots = Vec::with_capacity(committed.capacity());
    let mut cur = f0;
    let mut final_values = None;
    for r in 0..folds {
        let beta = tr.challenge_ext(b"fri-beta");
        let src: &[ExtFieldElement] = if r == 0 {
            &cur
        } else {
            &committed[r as usize - 1].values
        };
        let next = fold(src, lde_log - r, layer_shift(r), beta)?;
        if r == 0 {
            cur = Vec::new(); // layer 0 is reconstructed by the verifier
        }
        if r + 1 < folds {
            let tree = pair_tree(&next)?;
            let root = tree.root();
            tr.absorb(b"fri-root", &root);
            roots.push(root);
            committed.push(LayerAux { values: next, tree });
        } else {
            final_values = Some(next);
        }
    }
    let final_values = final_values.unwrap_or(cur);

    let final_log = lde_log - folds;
    let final_domain = EvaluationDomain::with_shift(final_log, layer_shift(folds))?;
    let c0: Vec<FieldElement> = final_values.iter().map(|v| v.c0).collect();
    let c1: Vec<FieldElement> = final_values.iter().map(|v| v.c1).collect();
    let c0 = ntt(&c0, &final_domain, NttDirection::Inverse)?;
    let c1 = ntt(&c1, &final_domain, NttDirection::Inverse)?;
    let keep = stop_degree.min(c0.len());
    let final_coeffs: Vec<ExtFieldElement> = (0..keep)
        .map(|i| ExtFieldElement::new(c0[i], c1[i]))
        .collect();

    let mut bytes = Vec::with_capacity(final_coeffs.len() * 16);
    for c in &final_coeffs {
        bytes.extend_from_slice(&c.to_le_bytes());
    }
    tr.absorb(b"fri-final", &bytes);

    Ok(FriLayers {
        roots,
        final_coeffs,
        committed,
        lde_log,
    })
}

impl FriLayers {
    /// Opens the committed layers along the fold walk starting from layer-1
    /// position `j` (j in [0, N/2)).
    pub fn open_query(&self, j: usize) -> Result<Vec<FriOpening>, FriError> {
        let mut pos = j;
        let mut out = Vec::with_capacity(self.committed.len());
        for (idx, layer) in self.committed.iter().enumerate() {
            let r = idx as u32 + 1;
            let half = 1usize << (self.lde_log - r - 1);
            let p = pos % half;
            out.push(FriOpening {
                lo: layer.values[p],
                hi: layer.values[p + half],
                path: layer.tree.path(p)?,
            });
            pos = p;
        }
        Ok(out)
    }
}

pub fn eval_ext_poly_at_base(coeffs: &[ExtFieldElement], x: FieldElement) -> ExtFieldElement {
    let mut acc = ExtFieldElement::ZERO;
    for c in coeffs.iter().rev() {
        acc = acc.scale(x) + *c;
    }
    acc
}

/// Checks one query's fold chain: starting from the layer-0 pair
/// (lo at position j, hi at j + N/2), folds with the replayed betas, matches
/// each committed layer's authenticated opening, and finally compares against
/// the final polynomial. Returns false on any mismatch.
#[allow(clippy::too_many_arguments)]
pub fn check_query(
    lde_log: u32,
    folds: u32,
    betas: &[ExtFieldElement],
    roots: &[[u8; 32]],
    final_coeffs: &[ExtFieldElement],
    j: usize,
    lo: ExtFieldElement,
    hi: ExtFieldElement,
    openings: &[FriOpening],
) -> bool {
    let committed = folds.saturating_sub(1) as usize;
    if betas.len() != folds as usize || roots.len() != committed || openings.len() != committed {
        return false;
    }
    let two = FieldElement::new(2);
    let inv2 = match two.inverse() {
        Ok(v) => v,
        Err(_) => return false,
    };
    if folds == 0 {
        // no folding: the layer-0 values must match the final polynomial
        let half = 1usize << (lde_log - 1);
        let gen = two_adic_generator(lde_log);
        let shift = layer_shift(0);
        let x_lo = shift * gen.pow(j as u64);
        let x_hi = shift * gen.pow((j + half) as u64);
        return eval_ext_poly_at_base(final_coeffs, x_lo) == lo
            && eval_ext_poly_at_base(final_coeffs, x_hi) == hi;
    }
    let (mut pos, mut lo, mut hi) = (j, lo, hi);
    for r in 0..folds {
        let domain_log = lde_log - r;
        let half = 1usize << (domain_log - 1);
        if pos >= half {
            return false;
        }
        let x = layer_shift(r) * two_adic_generator(domain_log).pow(pos as u64);
        let inv_2x = match (two * x).inverse() {
            Ok(v) => v,
            Err(_) => return false,
        };
        let folded = (lo + hi).scale(inv2) + (betas[r as usize] * (lo - hi)).scale(inv_2x);
        if r + 1 == folds {
            let final_log = lde_log - folds;
            let xf = layer_shift(folds) * two_adic_generator(final_log).pow(pos as u64);
            return eval_ext_poly_at_base(final_coeffs, xf) == folded;
        }
        let next_half = half / 2;
        let p = pos % next_half;
        let op = &openings[r as usize];
        if !verify_path(
            &roots[r as usize],
            next_half,
            p,
            &encode_pair(op.lo, op.hi),
            &op.path,
        ) {
            return false;
        }
        let expected = if pos < next_half { op.lo } else { op.hi };
        if expected != folded {
            return false;
        }
        pos = p;
        lo = op.lo;
        hi = op.hi;
    }
    unreachable!("loop returns on the last fold");
}

/// A standalone FRI low-degree proof over a committed codeword, used to test
/// the folding argument in isolation (the main protocol derives its layer-0
/// values from the DEEP combination instead of a commitment).
pub struct LowDegreeProof {
    pub layer0_root: [u8; 32],
    pub roots: Vec<[u8; 32]>,
    pub final_coeffs: Vec<ExtFieldElement>,
    pub queries: Vec<(FriOpening, Vec<FriOpening>)>,
}

/// Proves `values` (evaluations over the 7-shifted coset of size 2^lde_log)
/// is the codeword of a polynomial of degree < 2^(lde_log - blowup_log).
pub fn prove_low_degree(
    values: &[ExtFieldElement],
    lde_log: u32,
    params: &ProverParams,
) -> Result<LowDegreeProof, FriError> {
    let n = 1usize << lde_log;
    debug_assert_eq!(values.len(), n);
    let folds = fold_count(lde_log - params.blowup_log, params.fri_stop_degree);
    let mut tr = Transcript::new(&params.transcript_domain_tag);
    tr.absorb(b"fri-standalone", &params.to_bytes());
    let layer0_tree = pair_tree(values)?;
    let layer0_root = layer0_tree.root();
    tr.absorb(b"fri-root", &layer0_root);
    let layers = fri_commit(values.to_vec(), lde_log, folds, params.fri_stop_degree, &mut tr)?;
    let mut queries = Vec::with_capacity(params.num_queries);
    let half = n / 2;
    for _ in 0..params.num_queries {
        let pos = tr.challenge_index(b"query", n);
        let j = pos % half;
        let op0 = FriOpening {
            lo: values[j],
            hi: values[j + half],
            path: layer0_tree.path(j)?,
        };
        queries.push((op0, layers.open_query(j)?));
    }
    Ok(LowDegreeProof {
        layer0_root,
        roots: layers.roots,
        final_coeffs: layers.final_coeffs,
        queries,
    })
}

pub fn verify_low_degree(proof: &LowDegreeProof, lde_log: u32, params: &ProverParams) -> bool {
    let n = 1usize << lde_log;
    let half = n / 2;
    let folds = fold_count(lde_log - params.blowup_log, params.fri_stop_degree);
    if proof.roots.len() != folds.saturating_sub(1) as usize
        || proof.queries.len() != params.num_queries
        || proof.final_coeffs.len() > params.fri_stop_degree
    {
        return false;
    }
    let mut tr = Transcript::new(&params.transcript_domain_tag);
    tr.absorb(b"fri-standalone", &params.to_bytes());
    tr.absorb(b"fri-root", &proof.layer0_root);
    let mut betas = Vec::with_capacity(folds as usize);
    for r in 0..folds {
        betas.push(tr.challenge_ext(b"fri-beta"));
        if r + 1 < folds {
            tr.absorb(b"fri-root", &proof.roots[r as usize]);
        }
    }
    let mut bytes = Vec::with_capacity(proof.final_coeffs.len() * 16);
    for c in &proof.final_coeffs {
        bytes.extend_from_slice(&c.to_le_bytes());
    }
    tr.absorb(b"fri-final", &bytes);
    for (op0, chain) in &proof.queries {
        let pos = tr.challenge_index(b"query", n);
        let j = pos % half;
        if !verify_path(
            &proof.layer0_root,
            half,
            j,
            &encode_pair(op0.lo, op0.hi),
            &op0.path,
        ) {
            return false;
        }
        if !check_query(
            lde_log,
            folds,
            &betas,
            &proof.roots,
            &proof.final_coeffs,
            j,
            op0.lo,
            op0.hi,
            chain,
        ) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rand_ext(rng: &mut StdRng) -> ExtFieldElement {
        ExtFieldElement::new(
            FieldElement::new(rng.gen_range(0..crate::field::MODULUS)),
            FieldElement::new(rng.gen_range(0..crate::field::MODULUS)),
        )
    }

    /// Evaluates random coefficients of the given count over the LDE coset.
    fn codeword(rng: &mut StdRng, num_coeffs: usize, lde_log: u32) -> Vec<ExtFieldElement> {
        let coeffs: Vec<ExtFieldElement> = (0..num_coeffs).map(|_| rand_ext(rng)).collect();
        let domain = EvaluationDomain::coset(lde_log).unwrap();
        (0..domain.size())
            .map(|i| eval_ext_poly_at_base(&coeffs, domain.element(i)))
            .collect()
    }

    fn test_params() -> ProverParams {
        ProverParams {
            num_queries: 16,
            ..ProverParams::default()
        }
    }

    #[test]
    fn low_degree_codeword_accepted() {
        let mut rng = StdRng::seed_from_u64(1);
        let params = test_params();
        // degree < 2^(10-3) = 128
        let values = codeword(&mut rng, 128, 10);
        let proof = prove_low_degree(&values, 10, &params).unwrap();
        assert!(verify_low_degree(&proof, 10, &params));
    }

    #[test]
    fn stop_degree_codeword_accepted() {
        // degree below the stop degree: zero folds still verify
        let mut rng = StdRng::seed_from_u64(2);
        let params = test_params();
        let values = codeword(&mut rng, 8, 6);
        let proof = prove_low_degree(&values, 6, &params).unwrap();
        assert!(verify_low_degree(&proof, 6, &params));
    }

    #[test]
    fn random_vectors_rejected() {
        let mut rng = StdRng::seed_from_u64(3);
        let params = test_params();
        let mut rejections = 0;
        for _ in 0..20 {
            let values: Vec<ExtFieldElement> = (0..1 << 9).map(|_| rand_ext(&mut rng)).collect();
            let proof = prove_low_degree(&values, 9, &params).unwrap();
            if !verify_low_degree(&proof, 9, &params) {
                rejections += 1;
            }
        }
        assert_eq!(rejections, 20);
    }

    #[test]
    fn degree_just_over_bound_rejected() {
        let mut rng = StdRng::seed_from_u64(4);
        let params = test_params();
        // bound is 2^(9-3) = 64; use degree 64 (65 coefficients)
        let values = codeword(&mut rng, 65, 9);
        let proof = prove_low_degree(&values, 9, &params).unwrap();
        assert!(!verify_low_degree(&proof, 9, &params));
    }

    #[test]
    fn tampered_layer_value_rejected() {
        let mut rng = StdRng::seed_from_u64(5);
        let params = test_params();
        let values = codeword(&mut rng, 128, 10);
        let mut proof = prove_low_degree(&values, 10, &params).unwrap();
        proof.queries[0].1[0].lo = proof.queries[0].1[0].lo + ExtFieldElement::ONE;
        assert!(!verify_low_degree(&proof, 10, &params));
    }

    #[test]
    fn tampered_final_coeff_rejected() {
        let mut rng = StdRng::seed_from_u64(6);
        let params = test_params();
        let values = codeword(&mut rng, 128, 10);
        let mut proof = prove_low_degree(&values, 10, &params).unwrap();
        proof.final_coeffs[0] = proof.final_coeffs[0] + ExtFieldElement::ONE;
        assert!(!verify_low_degree(&proof, 10, &params));
    }
}
