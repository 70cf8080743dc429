//! Proof generation.
//!
//! Phases: commit wires, grand product, quotient, openings at zeta, DEEP
//! combination, FRI, query openings. Large intermediate vectors (coset LDEs,
//! coefficient tables) are dropped or rematerialized around the quotient
//! phase so peak memory stays near the largest single phase rather than the
//! sum of all of them.

use crate::circuit::{check_witness, Circuit, Witness};
use crate::field::{
    batch_inverse, ntt, ntt_in_place, two_adic_generator, EvaluationDomain, ExtFieldElement,
    FieldElement, FieldError, NttDirection, GENERATOR,
};

use super::commit::{commit_columns, commit_from_coeffs, CommitError, CommittedColumns};
use super::fri::{fold_count, fri_commit, FriError};
use super::merkle::MerkleError;
use super::params::ProverParams;
use super::setup::{check_dimensions, setup, sigma_columns, ProverKey, SetupError, K_COSETS};
use super::transcript::Transcript;
use super::types::{Proof, QueryProof, NUM_EVALS};
use super::{eval_at_ext, ext_batch_inverse};

#[derive(Debug, thiserror::Error)]
pub enum ProveError {
    #[error("witness does not satisfy the circuit")]
    UnsatisfiedWitness,
    #[error("prover key does not match the circuit")]
    KeyMismatch,
    #[error(transparent)]
    Setup(#[from] SetupError),
    #[error(transparent)]
    Commit(#[from] CommitError),
    #[error(transparent)]
    Fri(#[from] FriError),
    #[error(transparent)]
    Merkle(#[from] MerkleError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// One permutation-argument factor: w + beta * label + gamma, where w and
/// label are base-field values. Kept in coordinates to avoid full extension
/// multiplications in the hot loops.
#[inline]
fn perm_factor(
    w: FieldElement,
    label: FieldElement,
    beta: ExtFieldElement,
    gamma: ExtFieldElement,
) -> ExtFieldElement {
    ExtFieldElement::new(w + beta.c0 * label + gamma.c0, beta.c1 * label + gamma.c1)
}

/// Subtracting an extension point from a base point: x - z.
#[inline]
fn base_minus_ext(x: FieldElement, z: ExtFieldElement) -> ExtFieldElement {
    ExtFieldElement::new(x - z.c0, -z.c1)
}

/// Convenience entry point: runs preprocessing and proves in one call. The
/// key is single-use here, so its coefficient tables are freed mid-proof to
/// lower peak memory on large circuits.
pub fn prove(
    circuit: &Circuit,
    witness: &Witness,
    publics: &[FieldElement],
    params: &ProverParams,
) -> Result<Proof, ProveError> {
    let mut pk = setup(circuit, params)?;
    prove_impl(circuit, witness, publics, &mut pk, true)
}

/// Proves with a reusable preprocessing key. The key's LDE tables are
/// materialized during the proof and released again before returning.
pub fn prove_with_key(
    circuit: &Circuit,
    witness: &Witness,
    publics: &[FieldElement],
    pk: &mut ProverKey,
) -> Result<Proof, ProveError> {
    prove_impl(circuit, witness, publics, pk, false)
}

/// Proves with a key that is consumed: its coefficient tables are freed
/// mid-proof, lowering peak memory on large circuits. Returns the verifier
/// data alongside the proof.
pub fn prove_consuming(
    circuit: &Circuit,
    witness: &Witness,
    publics: &[FieldElement],
    mut pk: ProverKey,
) -> Result<(Proof, super::setup::VerifierData), ProveError> {
    let vd = pk.vd.clone();
    let proof = prove_impl(circuit, witness, publics, &mut pk, true)?;
    Ok((proof, vd))
}

fn prove_impl(
    circuit: &Circuit,
    witness: &Witness,
    publics: &[FieldElement],
    pk: &mut ProverKey,
    consume_key: bool,
) -> Result<Proof, ProveError> {
    let params = pk.vd.params;
    check_dimensions(circuit, &params)?;
    if pk.vd.n != circuit.n as u64
        || pk.vd.public_rows.len() != circuit.public_rows.len()
        || !pk
            .vd
            .public_rows
            .iter()
            .zip(&circuit.public_rows)
            .all(|(&a, &b)| a == b as u64)
    {
        return Err(ProveError::KeyMismatch);
    }
    if !check_witness(circuit, witness, publics) {
        return Err(ProveError::UnsatisfiedWitness);
    }

    let n = circuit.n;
    let log_n = n.trailing_zeros();
    let lde_log = log_n + params.blowup_log;
    let big_n = 1usize << lde_log;
    let half = big_n / 2;

    // --- Phase 1: wire columns and their commitment ---
    let mut wire_cols: [Vec<FieldElement>; 3] = [
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    ];
    for row in &circuit.rows {
        for (col, slot) in wire_cols.iter_mut().zip([row.a, row.b, row.c]) {
            col.push(witness.get(slot).unwrap_or(FieldElement::ZERO));
        }
    }
    let mut wires = commit_columns(&wire_cols, log_n, params.blowup_log)?;
    wires.drop_ldes();

    let mut tr = Transcript::new(&params.transcript_domain_tag);
    tr.absorb(b"params", &params.to_bytes());
    tr.absorb(b"circuit-digest", &pk.vd.circuit_digest);
    {
        let mut w = crate::bytes::ByteWriter::new();
        w.write_fe_slice(publics);
        tr.absorb(b"publics", &w.into_bytes());
    }
    tr.absorb(b"preprocessed-root", &pk.preprocessed.root);
    tr.absorb(b"wire-root", &wires.root);
    let beta = tr.challenge_ext(b"beta");
    let gamma = tr.challenge_ext(b"gamma");

    // --- Phase 2: permutation grand product ---
    let sigma_cols = sigma_columns(circuit);
    let omega = two_adic_generator(log_n);
    let ks = K_COSETS.map(FieldElement::new);
    let (z0_col, z1_col) = {
        let mut denoms = Vec::with_capacity(n);
        let mut numers = Vec::with_capacity(n);
        let mut x = FieldElement::ONE;
        for i in 0..n {
            let mut numer = ExtFieldElement::ONE;
            let mut denom = ExtFieldElement::ONE;
            for j in 0..3 {
                let w = wire_cols[j][i];
                numer *= perm_factor(w, ks[j] * x, beta, gamma);
                denom *= perm_factor(w, sigma_cols[j][i], beta, gamma);
            }
            numers.push(numer);
            denoms.push(denom);
            x *= omega;
        }
        let inv_denoms = ext_batch_inverse(&denoms)?;
        let mut z0 = Vec::with_capacity(n);
        let mut z1 = Vec::with_capacity(n);
        let mut acc = ExtFieldElement::ONE;
        for i in 0..n {
            z0.push(acc.c0);
            z1.push(acc.c1);
            acc *= numers[i] * inv_denoms[i];
        }
        debug_assert_eq!(acc, ExtFieldElement::ONE, "grand product must telescope");
        (z0, z1)
    };
    drop(sigma_cols);
    drop(wire_cols);
    let mut zc = commit_columns(&[z0_col, z1_col], log_n, params.blowup_log)?;
    zc.drop_ldes();
    tr.absorb(b"z-root", &zc.root);
    let alpha = tr.challenge_ext(b"alpha");

    // --- Phase 3: quotient ---
    let t_cols = compute_quotient(
        &pk.preprocessed.coeffs,
        &wires.coeffs,
        &zc.coeffs[0],
        &zc.coeffs[1],
        publics,
        &circuit.public_rows,
        beta,
        gamma,
        alpha,
        log_n,
    )?;
    let mut quo = commit_from_coeffs(t_cols, log_n, params.blowup_log)?;
    quo.drop_ldes();
    tr.absorb(b"quotient-root", &quo.root);
    let zeta = tr.challenge_ext(b"zeta");

    // --- Phase 4: openings at zeta (and omega * zeta for z) ---
    let omega_zeta = zeta.scale(omega);
    let mut evals = [ExtFieldElement::ZERO; NUM_EVALS];
    {
        let all_coeffs = pk
            .preprocessed
            .coeffs
            .iter()
            .chain(&wires.coeffs)
            .chain(&zc.coeffs)
            .chain(&quo.coeffs);
        for (k, coeffs) in all_coeffs.enumerate() {
            evals[k] = eval_at_ext(coeffs, zeta);
        }
        evals[super::types::EVAL_Z_SHIFT_C0] = eval_at_ext(&zc.coeffs[0], omega_zeta);
        evals[super::types::EVAL_Z_SHIFT_C1] = eval_at_ext(&zc.coeffs[1], omega_zeta);
    }
    {
        let mut bytes = Vec::with_capacity(NUM_EVALS * 16);
        for e in &evals {
            bytes.extend_from_slice(&e.to_le_bytes());
        }
        tr.absorb(b"evals", &bytes);
    }
    let lambda = tr.challenge_ext(b"lambda");

    // --- Phase 5: DEEP combination over the LDE domain ---
    // Rematerialize the LDE tables; the coefficient tables of the
    // proof-local commitments are no longer needed afterwards.
    pk.preprocessed.ensure_ldes()?;
    if consume_key {
        pk.preprocessed.coeffs = Vec::new();
    }
    wires.ensure_ldes()?;
    wires.coeffs = Vec::new();
    zc.ensure_ldes()?;
    zc.coeffs = Vec::new();
    quo.ensure_ldes()?;
    quo.coeffs = Vec::new();

    let mut lam_pows = [ExtFieldElement::ONE; NUM_EVALS];
    for k in 1..NUM_EVALS {
        lam_pows[k] = lam_pows[k - 1] * lambda;
    }
    // A = sum of lambda^k * v_k over the 19 zeta openings,
    // B = the lambda-weighted pair of omega*zeta openings.
    let mut eval_sum = ExtFieldElement::ZERO;
    for k in 0..19 {
        eval_sum += lam_pows[k] * evals[k];
    }
    let shift_sum = lam_pows[19] * evals[super::types::EVAL_Z_SHIFT_C0]
        + lam_pows[20] * evals[super::types::EVAL_Z_SHIFT_C1];

    let deep_cols: Vec<&[FieldElement]> = pk
        .preprocessed
        .ldes
        .iter()
        .chain(&wires.ldes)
        .chain(&zc.ldes)
        .chain(&quo.ldes)
        .map(|c| c.as_slice())
        .collect();
    debug_assert_eq!(deep_cols.len(), 19);
    let z0_lde = deep_cols[11];
    let z1_lde = deep_cols[12];

    const BLOCK: usize = 1 << 16;
    let lde_gen = two_adic_generator(lde_log);
    let mut f_vals: Vec<ExtFieldElement> = Vec::with_capacity(big_n);
    let mut x = FieldElement::new(GENERATOR);
    let mut denoms = Vec::with_capacity(2 * BLOCK);
    let mut xs = Vec::with_capacity(BLOCK);
    let mut start = 0usize;
    while start < big_n {
        let len = BLOCK.min(big_n - start);
        denoms.clear();
        xs.clear();
        for _ in 0..len {
            xs.push(x);
            denoms.push(base_minus_ext(x, zeta));
            denoms.push(base_minus_ext(x, omega_zeta));
            x *= lde_gen;
        }
        let invs = ext_batch_inverse(&denoms)?;
        for (off, inv_pair) in invs.chunks_exact(2).enumerate() {
            let i = start + off;
            let mut s = ExtFieldElement::ZERO;
            for (k, col) in deep_cols.iter().enumerate() {
                s += lam_pows[k].scale(col[i]);
            }
            let t = lam_pows[19].scale(z0_lde[i]) + lam_pows[20].scale(z1_lde[i]);
            f_vals.push((s - eval_sum) * inv_pair[0] + (t - shift_sum) * inv_pair[1]);
        }
        start += len;
    }
    drop(denoms);
    drop(xs);

    // --- Phase 6: FRI and queries ---
    let folds = fold_count(log_n, params.fri_stop_degree);
    let layers = fri_commit(f_vals, lde_log, folds, params.fri_stop_degree, &mut tr)?;

    let trees: [&CommittedColumns; 4] = [&pk.preprocessed, &wires, &zc, &quo];
    let mut queries = Vec::with_capacity(params.num_queries);
    for _ in 0..params.num_queries {
        let pos = tr.challenge_index(b"query", big_n);
        let j = pos % half;
        let mut column_openings = Vec::with_capacity(trees.len());
        for t in trees {
            column_openings.push([t.open(j)?, t.open(j + half)?]);
        }
        queries.push(QueryProof {
            column_openings,
            fri_openings: layers.open_query(j)?,
        });
    }

    let proof = Proof {
        params,
        n: n as u64,
        publics: publics.to_vec(),
        wire_root: wires.root,
        z_root: zc.root,
        quotient_root: quo.root,
        evals,
        fri_layer_roots: layers.roots,
        fri_final_coeffs: layers.final_coeffs,
        queries,
    };
    pk.preprocessed.drop_ldes();
    Ok(proof)
}

/// Evaluates the constraint polynomial on the 4n coset domain, divides by the
/// vanishing polynomial, and returns the three quotient chunks as six base
/// columns [t0_c0, t0_c1, t1_c0, t1_c1, t2_c0, t2_c1].
#[allow(clippy::too_many_arguments)]
fn compute_quotient(
    preproc: &[Vec<FieldElement>],
    wires: &[Vec<FieldElement>],
    z0: &[FieldElement],
    z1: &[FieldElement],
    publics: &[FieldElement],
    public_rows: &[usize],
    beta: ExtFieldElement,
    gamma: ExtFieldElement,
    alpha: ExtFieldElement,
    log_n: u32,
) -> Result<Vec<Vec<FieldElement>>, ProveError> {
    let n = 1usize << log_n;
    let quot_log = log_n + 2;
    let omega = two_adic_generator(log_n);
    let w4 = two_adic_generator(quot_log);
    let g = FieldElement::new(GENERATOR);
    let inv_n = FieldElement::new(n as u64).inverse()?;
    let ks = K_COSETS.map(FieldElement::new);
    let alpha2 = alpha * alpha;
    let alpha3 = alpha2 * alpha;

    // coefficients of z(omega * X): scale coefficient j by omega^j
    let scale_by_omega = |c: &[FieldElement]| {
        let mut out = Vec::with_capacity(n);
        let mut p = FieldElement::ONE;
        for &v in c {
            out.push(v * p);
            p *= omega;
        }
        out
    };
    let zw0 = scale_by_omega(z0);
    let zw1 = scale_by_omega(z1);

    // omega^r and the Lagrange scale omega^r / n per public row
    let pub_points: Vec<(FieldElement, FieldElement, FieldElement)> = public_rows
        .iter()
        .zip(publics)
        .map(|(&r, &p)| {
            let wr = omega.pow(r as u64);
            (wr, wr * inv_n, p)
        })
        .collect();

    let mut c0_vals = vec![FieldElement::ZERO; 4 * n];
    let mut c1_vals = vec![FieldElement::ZERO; 4 * n];

    // the 4n domain splits into four size-n cosets: global index 4m + k lives
    // on the coset with shift g * w4^k, where Z_H is the constant shift^n - 1
    for k in 0..4u64 {
        let shift = g * w4.pow(k);
        let dom = EvaluationDomain::with_shift(log_n, shift)?;
        let zh = shift.pow(n as u64) - FieldElement::ONE;
        let inv_zh = zh.inverse()?;

        let pe: Vec<Vec<FieldElement>> = preproc
            .iter()
            .map(|c| ntt(c, &dom, NttDirection::Forward))
            .collect::<Result<_, _>>()?;
        let we: Vec<Vec<FieldElement>> = wires
            .iter()
            .map(|c| ntt(c, &dom, NttDirection::Forward))
            .collect::<Result<_, _>>()?;
        let z0e = ntt(z0, &dom, NttDirection::Forward)?;
        let z1e = ntt(z1, &dom, NttDirection::Forward)?;
        let zw0e = ntt(&zw0, &dom, NttDirection::Forward)?;
        let zw1e = ntt(&zw1, &dom, NttDirection::Forward)?;

        let mut xs = Vec::with_capacity(n);
        let mut x = shift;
        for _ in 0..n {
            xs.push(x);
            x *= omega;
        }

        // L_0 over this coset: (1/n) * Z_H(x) / (x - 1)
        let diffs: Vec<FieldElement> = xs.iter().map(|&x| x - FieldElement::ONE).collect();
        let inv_diffs = batch_inverse(&diffs)?;
        let l0: Vec<FieldElement> = inv_diffs.iter().map(|&d| inv_n * zh * d).collect();

        // PI over this coset: sum_r L_r(x) * (a(x) - p_r)
        let mut pi = vec![FieldElement::ZERO; n];
        for &(wr, c_r, p) in &pub_points {
            let diffs: Vec<FieldElement> = xs.iter().map(|&x| x - wr).collect();
            let inv_diffs = batch_inverse(&diffs)?;
            let scale = c_r * zh;
            for i in 0..n {
                pi[i] += scale * inv_diffs[i] * (we[0][i] - p);
            }
        }

        for m in 0..n {
            let (a, b, c) = (we[0][m], we[1][m], we[2][m]);
            let gate =
                pe[0][m] * a + pe[1][m] * b + pe[2][m] * a * b + pe[3][m] * c + pe[4][m];
            let mut numer = ExtFieldElement::ONE;
            let mut denom = ExtFieldElement::ONE;
            for (j, &w) in [a, b, c].iter().enumerate() {
                numer *= perm_factor(w, ks[j] * xs[m], beta, gamma);
                denom *= perm_factor(w, pe[5 + j][m], beta, gamma);
            }
            let ze = ExtFieldElement::new(z0e[m], z1e[m]);
            let zwe = ExtFieldElement::new(zw0e[m], zw1e[m]);
            let perm = ze * numer - zwe * denom;
            let boundary = (ze - ExtFieldElement::ONE).scale(l0[m]);
            let constraint = ExtFieldElement::from_base(gate)
                + alpha * perm
                + alpha2 * boundary
                + alpha3.scale(pi[m]);
            let t = constraint.scale(inv_zh);
            let idx = 4 * m + k as usize;
            c0_vals[idx] = t.c0;
            c1_vals[idx] = t.c1;
        }
    }

    let quot_domain = EvaluationDomain::coset(quot_log)?;
    ntt_in_place(&mut c0_vals, &quot_domain, NttDirection::Inverse)?;
    ntt_in_place(&mut c1_vals, &quot_domain, NttDirection::Inverse)?;
    debug_assert!(
        c0_vals[3 * n..].iter().all(|v| v.is_zero())
            && c1_vals[3 * n..].iter().all(|v| v.is_zero()),
        "quotient degree exceeds 3n: constraint system is inconsistent"
    );

    let mut cols = Vec::with_capacity(6);
    for chunk in 0..3 {
        cols.push(c0_vals[chunk * n..(chunk + 1) * n].to_vec());
        cols.push(c1_vals[chunk * n..(chunk + 1) * n].to_vec());
    }
    Ok(cols)
}
