//! Proof verification. `verify` returns a bool and never panics on
//! adversarial input: every shape mismatch, failed inverse, or failed check
//! simply yields `false`.

use crate::field::{two_adic_generator, ExtFieldElement, FieldElement, GENERATOR};

use super::commit::{encode_chunk_values, CHUNK};
use super::fri::{check_query, fold_count};
use super::merkle::verify_path;
use super::setup::{VerifierData, K_COSETS};
use super::transcript::Transcript;
use super::types::{
    Proof, EVAL_Z_C0, EVAL_Z_C1, EVAL_Z_SHIFT_C0, EVAL_Z_SHIFT_C1, NUM_EVALS, TREE_COLS,
};

/// phi, the extension generator with phi^2 = 7.
const PHI: ExtFieldElement = ExtFieldElement::new(FieldElement::ZERO, FieldElement::ONE);

/// Verifies `proof` against the circuit identified by `circuit_digest` with
/// the given public inputs.
pub fn verify(
    circuit_digest: &[u8; 32],
    vd: &VerifierData,
    publics: &[FieldElement],
    proof: &Proof,
) -> bool {
    // --- shape and binding checks ---
    if !vd.is_consistent()
        || *circuit_digest != vd.circuit_digest
        || proof.params != vd.params
        || proof.n != vd.n
        || proof.publics != publics
        || publics.len() != vd.public_rows.len()
    {
        return false;
    }
    let params = &proof.params;
    let n = proof.n;
    if !n.is_power_of_two() || n < 8 {
        return false;
    }
    let log_n = n.trailing_zeros();
    if log_n + 2 > crate::field::TWO_ADICITY
        || log_n + params.blowup_log > crate::field::TWO_ADICITY
    {
        return false;
    }
    let n = n as usize;
    let lde_log = log_n + params.blowup_log;
    let big_n = 1usize << lde_log;
    let half = big_n / 2;
    let folds = fold_count(log_n, params.fri_stop_degree);
    let final_size = 1usize << (lde_log - folds);
    if proof.fri_layer_roots.len() != folds.saturating_sub(1) as usize
        || proof.fri_final_coeffs.len() != params.fri_stop_degree.min(final_size)
        || proof.queries.len() != params.num_queries
        || vd.public_rows.iter().any(|&r| r >= n as u64)
    {
        return false;
    }

    // --- transcript replay ---
    let mut tr = Transcript::new(&params.transcript_domain_tag);
    tr.absorb(b"params", &params.to_bytes());
    tr.absorb(b"circuit-digest", &vd.circuit_digest);
    {
        let mut w = crate::bytes::ByteWriter::new();
        w.write_fe_slice(publics);
        tr.absorb(b"publics", &w.into_bytes());
    }
    tr.absorb(b"preprocessed-root", &vd.preprocessed_root);
    tr.absorb(b"wire-root", &proof.wire_root);
    let beta = tr.challenge_ext(b"beta");
    let gamma = tr.challenge_ext(b"gamma");
    tr.absorb(b"z-root", &proof.z_root);
    let alpha = tr.challenge_ext(b"alpha");
    tr.absorb(b"quotient-root", &proof.quotient_root);
    let zeta = tr.challenge_ext(b"zeta");
    {
        let mut bytes = Vec::with_capacity(NUM_EVALS * 16);
        for e in &proof.evals {
            bytes.extend_from_slice(&e.to_le_bytes());
        }
        tr.absorb(b"evals", &bytes);
    }
    let lambda = tr.challenge_ext(b"lambda");
    let mut fri_betas = Vec::with_capacity(folds as usize);
    for r in 0..folds {
        fri_betas.push(tr.challenge_ext(b"fri-beta"));
        if r + 1 < folds {
            tr.absorb(b"fri-root", &proof.fri_layer_roots[r as usize]);
        }
    }
    {
        let mut bytes = Vec::with_capacity(proof.fri_final_coeffs.len() * 16);
        for c in &proof.fri_final_coeffs {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
        tr.absorb(b"fri-final", &bytes);
    }

    // --- quotient identity at zeta ---
    if !check_identity_at_zeta(vd, publics, proof, log_n, beta, gamma, alpha, zeta) {
        return false;
    }

    // --- DEEP setup ---
    let e = &proof.evals;
    let mut lam_pows = [ExtFieldElement::ONE; NUM_EVALS];
    for k in 1..NUM_EVALS {
        lam_pows[k] = lam_pows[k - 1] * lambda;
    }
    let mut eval_sum = ExtFieldElement::ZERO;
    for k in 0..19 {
        eval_sum += lam_pows[k] * e[k];
    }
    let shift_sum = lam_pows[19] * e[EVAL_Z_SHIFT_C0] + lam_pows[20] * e[EVAL_Z_SHIFT_C1];
    let omega = two_adic_generator(log_n);
    let omega_zeta = zeta.scale(omega);

    let roots = [
        vd.preprocessed_root,
        proof.wire_root,
        proof.z_root,
        proof.quotient_root,
    ];
    let leaf_count = big_n / CHUNK;
    let lde_gen = two_adic_generator(lde_log);
    let shift = FieldElement::new(GENERATOR);

    // --- queries ---
    for q in &proof.queries {
        let pos = tr.challenge_index(b"query", big_n);
        let j = pos % half;
        if q.column_openings.len() != TREE_COLS.len() {
            return false;
        }
        // authenticate the chunk openings at j and j + half
        for (t, pair) in q.column_openings.iter().enumerate() {
            for (side, op) in pair.iter().enumerate() {
                let position = j + side * half;
                if op.values.len() != TREE_COLS[t] * CHUNK
                    || !verify_path(
                        &roots[t],
                        leaf_count,
                        position / CHUNK,
                        &encode_chunk_values(&op.values),
                        &op.path,
                    )
                {
                    return false;
                }
            }
        }
        // reconstruct the DEEP combination at both endpoints
        let x_lo = shift * lde_gen.pow(j as u64);
        let x_hi = -x_lo; // g^(N/2) = -1
        let mut endpoints = [ExtFieldElement::ZERO; 2];
        for (side, endpoint) in endpoints.iter_mut().enumerate() {
            let x = if side == 0 { x_lo } else { x_hi };
            let position = j + side * half;
            let off = position % CHUNK;
            let mut s = ExtFieldElement::ZERO;
            let mut z_pair = [FieldElement::ZERO; 2];
            let mut k = 0usize;
            for (t, pair) in q.column_openings.iter().enumerate() {
                for col in 0..TREE_COLS[t] {
                    let v = pair[side].values[col * CHUNK + off];
                    s += lam_pows[k].scale(v);
                    if k == EVAL_Z_C0 {
                        z_pair[0] = v;
                    } else if k == EVAL_Z_C1 {
                        z_pair[1] = v;
                    }
                    k += 1;
                }
            }
            let t_term = lam_pows[19].scale(z_pair[0]) + lam_pows[20].scale(z_pair[1]);
            let d1 = match (ExtFieldElement::from_base(x) - zeta).inverse() {
                Ok(v) => v,
                Err(_) => return false,
            };
            let d2 = match (ExtFieldElement::from_base(x) - omega_zeta).inverse() {
                Ok(v) => v,
                Err(_) => return false,
            };
            *endpoint = (s - eval_sum) * d1 + (t_term - shift_sum) * d2;
        }
        if !check_query(
            lde_log,
            folds,
            &fri_betas,
            &proof.fri_layer_roots,
            &proof.fri_final_coeffs,
            j,
            endpoints[0],
            endpoints[1],
            &q.fri_openings,
        ) {
            return false;
        }
    }
    true
}

/// Checks the PLONK constraint identity at zeta using the claimed openings.
#[allow(clippy::too_many_arguments)]
fn check_identity_at_zeta(
    vd: &VerifierData,
    publics: &[FieldElement],
    proof: &Proof,
    log_n: u32,
    beta: ExtFieldElement,
    gamma: ExtFieldElement,
    alpha: ExtFieldElement,
    zeta: ExtFieldElement,
) -> bool {
    let e = &proof.evals;
    let n = 1u64 << log_n;
    let omega = two_adic_generator(log_n);
    let inv_n = match FieldElement::new(n).inverse() {
        Ok(v) => v,
        Err(_) => return false,
    };

    let zeta_n = zeta.pow(n);
    let zh = zeta_n - ExtFieldElement::ONE;
    if zh.is_zero() {
        return false;
    }
    let (a, b, c) = (e[8], e[9], e[10]);
    let gate = e[0] * a + e[1] * b + e[2] * a * b + e[3] * c + e[4];

    let z_zeta = e[EVAL_Z_C0] + PHI * e[EVAL_Z_C1];
    let z_omega_zeta = e[EVAL_Z_SHIFT_C0] + PHI * e[EVAL_Z_SHIFT_C1];
    let mut numer = ExtFieldElement::ONE;
    let mut denom = ExtFieldElement::ONE;
    for (j, &w) in [a, b, c].iter().enumerate() {
        numer *= w + beta * zeta.scale(FieldElement::new(K_COSETS[j])) + gamma;
        denom *= w + beta * e[5 + j] + gamma;
    }
    let perm = z_zeta * numer - z_omega_zeta * denom;

    let l0_den = (zeta - ExtFieldElement::ONE).scale(FieldElement::new(n));
    let l0 = match l0_den.inverse() {
        Ok(inv) => zh * inv,
        Err(_) => return false,
    };
    let boundary = (z_zeta - ExtFieldElement::ONE) * l0;

    let mut pi = ExtFieldElement::ZERO;
    for (&r, &p) in vd.public_rows.iter().zip(publics) {
        let wr = omega.pow(r);
        let den = match (zeta - ExtFieldElement::from_base(wr)).inverse() {
            Ok(v) => v,
            Err(_) => return false,
        };
        let l_r = zh.scale(wr * inv_n) * den;
        pi += l_r * (a - ExtFieldElement::from_base(p));
    }

    let alpha2 = alpha * alpha;
    let alpha3 = alpha2 * alpha;
    let constraint = gate + alpha * perm + alpha2 * boundary + alpha3 * pi;

    let zeta_2n = zeta_n * zeta_n;
    let t = (e[13] + PHI * e[14])
        + zeta_n * (e[15] + PHI * e[16])
        + zeta_2n * (e[17] + PHI * e[18]);

    constraint == zh * t
}
