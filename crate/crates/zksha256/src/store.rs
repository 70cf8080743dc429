//! On-disk artifact persistence: proofs, circuits, and verifier data share a
//! fixed little-endian header with a magic tag, a version, a parameter echo,
//! and a SHA-256 payload digest verified on every load.

use std::io::{Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::bytes::{ByteReader, ByteWriter, DecodeError};
use crate::proof::ProverParams;

pub const MAGIC: [u8; 8] = *b"ZKSHA256";
pub const VERSION: u16 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    Proof,
    Circuit,
    VerifierData,
}

impl ArtifactKind {
    pub fn tag(self) -> u8 {
        match self {
            Self::Proof => 1,
            Self::Circuit => 2,
            Self::VerifierData => 3,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            1 => Some(Self::Proof),
            2 => Some(Self::Circuit),
            3 => Some(Self::VerifierData),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Proof => "proof",
            Self::Circuit => "circuit",
            Self::VerifierData => "verifier_data",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a zksha256 artifact (bad magic)")]
    BadMagic,
    #[error("unsupported artifact version {got} (this build reads version {VERSION})")]
    VersionMismatch { got: u16 },
    #[error("artifact kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("unknown artifact kind tag {0}")]
    UnknownKind(u8),
    #[error("payload digest mismatch: file is corrupt")]
    DigestMismatch,
    #[error("malformed artifact header: {0}")]
    Header(#[from] DecodeError),
}

fn payload_digest(payload: &[u8]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(payload);
    h.finalize().into()
}

/// Serializes header + payload into a byte vector.
pub fn encode_artifact(kind: ArtifactKind, params: &ProverParams, payload: &[u8]) -> Vec<u8> {
    let mut w = ByteWriter::new();
    w.write_fixed(&MAGIC);
    w.write_u16(VERSION);
    w.write_u8(kind.tag());
    params.write(&mut w);
    w.write_u64(payload.len() as u64);
    w.write_fixed(&payload_digest(payload));
    w.write_fixed(payload);
    w.into_bytes()
}

/// Parses and validates an artifact, returning the echoed parameters and the
/// payload.
pub fn decode_artifact(
    bytes: &[u8],
    expected: ArtifactKind,
) -> Result<(ProverParams, Vec<u8>), StoreError> {
    let mut r = ByteReader::new(bytes);
    let magic: [u8; 8] = r.read_fixed()?;
    if magic != MAGIC {
        return Err(StoreError::BadMagic);
    }
    let version = r.read_u16()?;
    if version != VERSION {
        return Err(StoreError::VersionMismatch { got: version });
    }
    let tag = r.read_u8()?;
    let kind = ArtifactKind::from_tag(tag).ok_or(StoreError::UnknownKind(tag))?;
    if kind != expected {
        return Err(StoreError::KindMismatch {
            expected: expected.name(),
            found: kind.name(),
        });
    }
    let params = ProverParams::read(&mut r)?;
    let len = r.read_u64()?;
    let digest: [u8; 32] = r.read_fixed()?;
    if len != r.remaining() as u64 {
        return Err(StoreError::Header(DecodeError::BadLength(len)));
    }
    let payload = r.read_bytes_exact(len as usize)?;
    if payload_digest(&payload) != digest {
        return Err(StoreError::DigestMismatch);
    }
    Ok((params, payload))
}

pub fn save_artifact(
    path: &Path,
    kind: ArtifactKind,
    params: &ProverParams,
    payload: &[u8],
) -> Result<(), StoreError> {
    let bytes = encode_artifact(kind, params, payload);
    let mut f = std::fs::File::create(path)?;
    f.write_all(&bytes)?;
    Ok(())
}

pub fn load_artifact(
    path: &Path,
    expected: ArtifactKind,
) -> Result<(ProverParams, Vec<u8>), StoreError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode_artifact(&bytes, expected)
}
