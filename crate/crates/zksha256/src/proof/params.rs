//! Prover parameters, echoed into every proof and artifact header and
//! checked by the verifier.

use crate::bytes::{ByteReader, ByteWriter, DecodeError};

/// Default Fiat-Shamir domain-separation tag.
pub const DEFAULT_DOMAIN_TAG: [u8; 16] = *b"zksha256-fs-v1\0\0";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProverParams {
    /// log2 of the LDE blowup factor (rate = 1 / 2^blowup_log).
    pub blowup_log: u32,
    /// Number of FRI query positions (duplicates kept, not re-sampled).
    pub num_queries: usize,
    /// FRI folding stops once the claimed degree bound reaches this value;
    /// the final polynomial is sent in the clear with this many coefficients.
    pub fri_stop_degree: usize,
    /// Transcript domain-separation tag.
    pub transcript_domain_tag: [u8; 16],
}

impl Default for ProverParams {
    fn default() -> Self {
        Self {
            blowup_log: 3,
            num_queries: 32,
            fri_stop_degree: 8,
            transcript_domain_tag: DEFAULT_DOMAIN_TAG,
        }
    }
}

impl ProverParams {
    pub fn is_valid(&self) -> bool {
        self.blowup_log >= 1
            && self.blowup_log <= 16
            && self.num_queries >= 1
            && self.fri_stop_degree.is_power_of_two()
            && self.fri_stop_degree >= 1
    }

    pub fn write(&self, w: &mut ByteWriter) {
        w.write_u32(self.blowup_log);
        w.write_u64(self.num_queries as u64);
        w.write_u64(self.fri_stop_degree as u64);
        w.write_fixed(&self.transcript_domain_tag);
    }

    pub fn read(r: &mut ByteReader) -> Result<Self, DecodeError> {
        let blowup_log = r.read_u32()?;
        let num_queries = r.read_u64()? as usize;
        let fri_stop_degree = r.read_u64()? as usize;
        let transcript_domain_tag = r.read_fixed()?;
        let params = Self {
            blowup_log,
            num_queries,
            fri_stop_degree,
            transcript_domain_tag,
        };
        if !params.is_valid() {
            return Err(DecodeError::InvalidValue("prover params"));
        }
        Ok(params)
    }

    /// Canonical encoding used for transcript absorption and digests.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        self.write(&mut w);
        w.into_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let p = ProverParams::default();
        assert_eq!(p.blowup_log, 3);
        assert_eq!(p.num_queries, 32);
        assert_eq!(p.fri_stop_degree, 8);
        assert!(p.is_valid());
    }

    #[test]
    fn round_trip() {
        let p = ProverParams {
            blowup_log: 1,
            num_queries: 4,
            fri_stop_degree: 16,
            transcript_domain_tag: [9; 16],
        };
        let bytes = p.to_bytes();
        let mut r = ByteReader::new(&bytes);
        assert_eq!(ProverParams::read(&mut r).unwrap(), p);
        r.finish().unwrap();
    }

    #[test]
    fn invalid_rejected() {
        let mut p = ProverParams::default();
        p.blowup_log = 0;
        let bytes = p.to_bytes();
        assert!(ProverParams::read(&mut ByteReader::new(&bytes)).is_err());
    }
}
