//! Preprocessing: selector and wiring-permutation columns, their commitment,
//! and the verifier-side data produced at finalize time.

use sha2::{Digest, Sha256};

use crate::bytes::{ByteReader, ByteWriter, DecodeError};
use crate::circuit::Circuit;
use crate::field::{two_adic_generator, FieldElement};

use super::commit::{commit_columns, CommitError, CommittedColumns};
use super::params::ProverParams;

/// Wire-column coset labels k_j for the permutation argument: column j's
/// identity polynomial is id_j(X) = k_j * X. 7 generates the full
/// multiplicative group, so the three cosets H, 7H, 49H are disjoint.
pub const K_COSETS: [u64; 3] = [1, 7, 49];

/// Number of preprocessed columns: five selectors plus three sigma columns.
pub const NUM_PREPROCESSED: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum SetupError {
    #[error("invalid prover parameters")]
    BadParams,
    #[error("padded circuit size {0} is below the minimum of 8 rows")]
    CircuitTooSmall(usize),
    #[error("padded circuit size {0} exceeds the field's 2-adic limit for these parameters")]
    CircuitTooLarge(usize),
    #[error(transparent)]
    Commit(#[from] CommitError),
}

/// Everything the verifier needs: domain size, public-input rows, the
/// preprocessed-column commitment, and a digest binding them together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifierData {
    pub params: ProverParams,
    pub n: u64,
    pub public_rows: Vec<u64>,
    pub preprocessed_root: [u8; 32],
    pub circuit_digest: [u8; 32],
}

impl VerifierData {
    pub fn compute_digest(
        params: &ProverParams,
        n: u64,
        public_rows: &[u64],
        preprocessed_root: &[u8; 32],
    ) -> [u8; 32] {
        let mut w = ByteWriter::new();
        w.write_fixed(b"zksha256-circuit");
        params.write(&mut w);
        w.write_u64(n);
        w.write_u64(public_rows.len() as u64);
        for &r in public_rows {
            w.write_u64(r);
        }
        w.write_fixed(preprocessed_root);
        let mut h = Sha256::new();
        h.update(w.into_bytes());
        h.finalize().into()
    }

    /// True iff the stored digest matches the stored fields.
    pub fn is_consistent(&self) -> bool {
        self.params.is_valid()
            && self.n.is_power_of_two()
            && self.circuit_digest
                == Self::compute_digest(
                    &self.params,
                    self.n,
                    &self.public_rows,
                    &self.preprocessed_root,
                )
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        self.params.write(&mut w);
        w.write_u64(self.n);
        w.write_u64(self.public_rows.len() as u64);
        for &r in &self.public_rows {
            w.write_u64(r);
        }
        w.write_fixed(&self.preprocessed_root);
        w.write_fixed(&self.circuit_digest);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = ByteReader::new(bytes);
        let params = ProverParams::read(&mut r)?;
        let n = r.read_u64()?;
        let count = r.read_u64()?;
        if count > n {
            return Err(DecodeError::BadLength(count));
        }
        let public_rows = (0..count).map(|_| r.read_u64()).collect::<Result<_, _>>()?;
        let preprocessed_root = r.read_fixed()?;
        let circuit_digest = r.read_fixed()?;
        r.finish()?;
        let vd = Self {
            params,
            n,
            public_rows,
            preprocessed_root,
            circuit_digest,
        };
        if !vd.is_consistent() {
            return Err(DecodeError::InvalidValue("verifier data digest"));
        }
        Ok(vd)
    }
}

/// Prover-side preprocessing: the committed selector and sigma columns plus
/// the verifier data.
pub struct ProverKey {
    pub preprocessed: CommittedColumns,
    pub vd: VerifierData,
}

/// Selector columns q_l, q_r, q_m, q_o, q_c over the padded trace.
pub fn selector_columns(circuit: &Circuit) -> Vec<Vec<FieldElement>> {
    let n = circuit.n;
    let mut cols = vec![Vec::with_capacity(n); 5];
    for row in &circuit.rows {
        cols[0].push(row.q_l);
        cols[1].push(row.q_r);
        cols[2].push(row.q_m);
        cols[3].push(row.q_o);
        cols[4].push(row.q_c);
    }
    cols
}

/// Sigma columns: position p = j*n + i maps under the wiring permutation to
/// p' = j'*n + i', encoded as the field value k_{j'} * omega^{i'}.
pub fn sigma_columns(circuit: &Circuit) -> Vec<Vec<FieldElement>> {
    let n = circuit.n;
    let log_n = n.trailing_zeros();
    let omega = two_adic_generator(log_n);
    let mut omega_pows = Vec::with_capacity(n);
    let mut acc = FieldElement::ONE;
    for _ in 0..n {
        omega_pows.push(acc);
        acc *= omega;
    }
    let ks = K_COSETS.map(FieldElement::new);
    (0..3)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let target = circuit.sigma[j * n + i] as usize;
                    ks[target / n] * omega_pows[target % n]
                })
                .collect()
        })
        .collect()
}

pub fn check_dimensions(circuit: &Circuit, params: &ProverParams) -> Result<(), SetupError> {
    if !params.is_valid() {
        return Err(SetupError::BadParams);
    }
    let n = circuit.n;
    if n < 8 {
        return Err(SetupError::CircuitTooSmall(n));
    }
    let log_n = n.trailing_zeros();
    // the quotient needs a 4n domain and the LDE an n << blowup domain
    if log_n + 2 > crate::field::TWO_ADICITY || log_n + params.blowup_log > crate::field::TWO_ADICITY
    {
        return Err(SetupError::CircuitTooLarge(n));
    }
    Ok(())
}

/// Commits the preprocessed columns and derives the verifier data.
pub fn setup(circuit: &Circuit, params: &ProverParams) -> Result<ProverKey, SetupError> {
    check_dimensions(circuit, params)?;
    let n = circuit.n;
    let log_n = n.trailing_zeros();
    let mut cols = selector_columns(circuit);
    cols.extend(sigma_columns(circuit));
    debug_assert_eq!(cols.len(), NUM_PREPROCESSED);
    let mut preprocessed = commit_columns(&cols, log_n, params.blowup_log)?;
    preprocessed.drop_ldes();
    let public_rows: Vec<u64> = circuit.public_rows.iter().map(|&r| r as u64).collect();
    let circuit_digest =
        VerifierData::compute_digest(params, n as u64, &public_rows, &preprocessed.root);
    let vd = VerifierData {
        params: *params,
        n: n as u64,
        public_rows,
        preprocessed_root: preprocessed.root,
        circuit_digest,
    };
    Ok(ProverKey { preprocessed, vd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;
    use crate::field::FieldElement;

    fn tiny_circuit() -> Circuit {
        let mut b = CircuitBuilder::new();
        let (x, y, z) = (b.alloc(), b.alloc(), b.alloc());
        for _ in 0..6 {
            b.add_gate(
                [
                    FieldElement::ONE,
                    FieldElement::ONE,
                    FieldElement::ZERO,
                    -FieldElement::ONE,
                    FieldElement::ZERO,
                ],
                [x, y, z],
            )
            .unwrap();
        }
        b.connect(x, y).unwrap();
        b.mark_public(z).unwrap();
        b.finalize().unwrap()
    }

    #[test]
    fn sigma_columns_permute_identity_labels() {
        let circuit = tiny_circuit();
        let n = circuit.n;
        let log_n = n.trailing_zeros();
        let omega = two_adic_generator(log_n);
        let sig = sigma_columns(&circuit);
        // multiset of sigma values equals the multiset of identity labels
        let mut ids: Vec<FieldElement> = Vec::new();
        for k in K_COSETS {
            for i in 0..n {
                ids.push(FieldElement::new(k) * omega.pow(i as u64));
            }
        }
        let mut got: Vec<FieldElement> = sig.iter().flatten().copied().collect();
        ids.sort_by_key(|f| f.value());
        got.sort_by_key(|f| f.value());
        assert_eq!(ids, got);
    }

    #[test]
    fn setup_deterministic_and_consistent() {
        let circuit = tiny_circuit();
        let params = ProverParams::default();
        let pk1 = setup(&circuit, &params).unwrap();
        let pk2 = setup(&circuit, &params).unwrap();
        assert_eq!(pk1.vd, pk2.vd);
        assert!(pk1.vd.is_consistent());
        assert_eq!(pk1.vd.public_rows.len(), 1);
    }

    #[test]
    fn verifier_data_round_trip() {
        let circuit = tiny_circuit();
        let pk = setup(&circuit, &ProverParams::default()).unwrap();
        let bytes = pk.vd.to_bytes();
        assert_eq!(VerifierData::from_bytes(&bytes).unwrap(), pk.vd);
        // corrupting any byte breaks the digest binding
        let mut bad = bytes.clone();
        bad[40] ^= 1;
        assert!(VerifierData::from_bytes(&bad).is_err());
    }

    #[test]
    fn tiny_circuits_rejected() {
        let mut b = CircuitBuilder::new();
        let x = b.alloc();
        b.add_gate([FieldElement::ZERO; 5], [x, x, x]).unwrap();
        let c = b.finalize().unwrap();
        assert!(matches!(
            setup(&c, &ProverParams::default()),
            Err(SetupError::CircuitTooSmall(_))
        ));
    }
}
