//! FRI-based proving system for the 3-wire PLONK constraint system.
//!
//! The pipeline: commit wire columns, run the permutation grand product,
//! split the quotient into three chunks, open everything at a random point,
//! and prove the DEEP combination is low-degree with FRI. All challenges come
//! from a SHA-256 Fiat-Shamir transcript.

pub mod commit;
pub mod fri;
pub mod merkle;
pub mod params;
pub mod prover;
pub mod setup;
pub mod transcript;
pub mod types;
pub mod verifier;

pub use params::ProverParams;
pub use prover::{prove, prove_consuming, prove_with_key, ProveError};
pub use setup::{setup, ProverKey, SetupError, VerifierData};
pub use types::Proof;
pub use verifier::verify;

use crate::field::{ExtFieldElement, FieldElement, FieldError};

/// Batch inversion in the extension field via Montgomery's trick. Fails if
/// any input is zero.
pub(crate) fn ext_batch_inverse(
    values: &[ExtFieldElement],
) -> Result<Vec<ExtFieldElement>, FieldError> {
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = ExtFieldElement::ONE;
    for &v in values {
        prefix.push(acc);
        acc *= v;
    }
    let mut inv = acc.inverse()?;
    let mut out = vec![ExtFieldElement::ZERO; values.len()];
    for i in (0..values.len()).rev() {
        out[i] = prefix[i] * inv;
        inv *= values[i];
    }
    Ok(out)
}

/// Evaluates a base-field-coefficient polynomial at an extension point
/// (Horner).
pub(crate) fn eval_at_ext(coeffs: &[FieldElement], z: ExtFieldElement) -> ExtFieldElement {
    let mut acc = ExtFieldElement::ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + ExtFieldElement::from_base(c);
    }
    acc
}
