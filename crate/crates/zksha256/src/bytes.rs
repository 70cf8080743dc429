//! Little-endian binary encoding helpers shared by the artifact formats.
//!
//! All variable-length fields are 64-bit length-prefixed; all integers are
//! little-endian fixed-width, so artifacts are platform-independent.

use crate::field::{ExtFieldElement, FieldElement};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("unexpected end of input at offset {0}")]
    UnexpectedEof(usize),
    #[error("length prefix {0} exceeds remaining input")]
    BadLength(u64),
    #[error("trailing bytes after payload")]
    TrailingBytes,
    #[error("invalid value for field {0}")]
    InvalidValue(&'static str),
}

#[derive(Default)]
pub struct ByteWriter {
    buf: Vec<u8>,
}

impl ByteWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn write_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn write_u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn write_u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn write_u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn write_fixed(&mut self, bytes: &[u8]) {
        self.buf.extend_from_slice(bytes);
    }

    pub fn write_bytes(&mut self, bytes: &[u8]) {
        self.write_u64(bytes.len() as u64);
        self.buf.extend_from_slice(bytes);
    }

    pub fn write_fe(&mut self, v: FieldElement) {
        self.write_fixed(&v.to_le_bytes());
    }

    pub fn write_ext(&mut self, v: ExtFieldElement) {
        self.write_fixed(&v.to_le_bytes());
    }

    pub fn write_fe_slice(&mut self, vs: &[FieldElement]) {
        self.write_u64(vs.len() as u64);
        for &v in vs {
            self.write_fe(v);
        }
    }

    pub fn write_ext_slice(&mut self, vs: &[ExtFieldElement]) {
        self.write_u64(vs.len() as u64);
        for &v in vs {
            self.write_ext(v);
        }
    }
}

pub struct ByteReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.data.len() - self.pos
    }

    pub fn finish(self) -> Result<(), DecodeError> {
        if self.remaining() != 0 {
            return Err(DecodeError::TrailingBytes);
        }
        Ok(())
    }

    fn take(&mut self, len: usize) -> Result<&'a [u8], DecodeError> {
        if self.remaining() < len {
            return Err(DecodeError::UnexpectedEof(self.pos));
        }
        let out = &self.data[self.pos..self.pos + len];
        self.pos += len;
        Ok(out)
    }

    pub fn read_u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    pub fn read_u16(&mut self) -> Result<u16, DecodeError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub fn read_u32(&mut self) -> Result<u32, DecodeError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn read_u64(&mut self) -> Result<u64, DecodeError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn read_fixed<const N: usize>(&mut self) -> Result<[u8; N], DecodeError> {
        Ok(self.take(N)?.try_into().unwrap())
    }

    /// Reads exactly `len` raw bytes (no length prefix).
    pub fn read_bytes_exact(&mut self, len: usize) -> Result<Vec<u8>, DecodeError> {
        Ok(self.take(len)?.to_vec())
    }

    pub fn read_bytes(&mut self) -> Result<Vec<u8>, DecodeError> {
        let len = self.read_u64()?;
        if len > self.remaining() as u64 {
            return Err(DecodeError::BadLength(len));
        }
        Ok(self.take(len as usize)?.to_vec())
    }

    pub fn read_fe(&mut self) -> Result<FieldElement, DecodeError> {
        Ok(FieldElement::from_le_bytes(self.read_fixed()?))
    }

    /// Like `read_fe` but rejects non-canonical encodings.
    pub fn read_fe_canonical(&mut self) -> Result<FieldElement, DecodeError> {
        let raw = u64::from_le_bytes(self.read_fixed()?);
        if raw >= crate::field::MODULUS {
            return Err(DecodeError::InvalidValue("non-canonical field element"));
        }
        Ok(FieldElement::from_canonical(raw))
    }

    pub fn read_ext(&mut self) -> Result<ExtFieldElement, DecodeError> {
        let c0 = self.read_fe_canonical()?;
        let c1 = self.read_fe_canonical()?;
        Ok(ExtFieldElement::new(c0, c1))
    }

    pub fn read_fe_slice(&mut self) -> Result<Vec<FieldElement>, DecodeError> {
        let len = self.read_u64()?;
        if len.checked_mul(8).map_or(true, |b| b > self.remaining() as u64) {
            return Err(DecodeError::BadLength(len));
        }
        (0..len).map(|_| self.read_fe_canonical()).collect()
    }

    pub fn read_ext_slice(&mut self) -> Result<Vec<ExtFieldElement>, DecodeError> {
        let len = self.read_u64()?;
        if len.checked_mul(16).map_or(true, |b| b > self.remaining() as u64) {
            return Err(DecodeError::BadLength(len));
        }
        (0..len).map(|_| self.read_ext()).collect()
    }
}
