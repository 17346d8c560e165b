//! The two-prime quaternary sequence and its on-disk formats.
//!
//! One period assigns to each residue u mod pq the digit 2 on Q ∪ {0}, the
//! digit 0 on P, and the class index i on D_i. Two interchange formats are
//! supported: a bare line of '0'..'3' characters, and a JSON record carrying
//! the period, the optional (p, q) provenance and the digit string.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::cyclotomy::{build_class_table, ClassLabel, ClassTable, TwoPrimeParams};
use crate::error::{Error, Result};

/// A periodic sequence over Z4, one full period materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternarySequence {
    digits: Vec<u8>,
    provenance: Option<(u64, u64)>,
}

impl QuaternarySequence {
    /// Wraps a digit vector, validating range, non-emptiness and (when a
    /// pair is attached) that the period equals p*q.
    pub fn new(digits: Vec<u8>, provenance: Option<(u64, u64)>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(&bad) = digits.iter().find(|&&d| d > 3) {
            return Err(Error::DigitOutOfRange(bad));
        }
        if let Some((p, q)) = provenance {
            if digits.len() as u64 != p * q {
                return Err(Error::ProvenanceMismatch {
                    period: digits.len() as u64,
                    expected: p * q,
                });
            }
        }
        Ok(Self { digits, provenance })
    }

    pub fn period(&self) -> u64 {
        self.digits.len() as u64
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn digit(&self, index: u64) -> u8 {
        self.digits[index as usize]
    }

    pub fn provenance(&self) -> Option<(u64, u64)> {
        self.provenance
    }

    /// The reversed sequence (e_{T-1}, ..., e_1, e_0), materialized.
    pub fn reverse(&self) -> Self {
        let mut digits = self.digits.clone();
        digits.reverse();
        Self {
            digits,
            provenance: self.provenance,
        }
    }

    /// Digit counts indexed by digit value.
    pub fn histogram(&self) -> [u64; 4] {
        let mut h = [0u64; 4];
        for &d in &self.digits {
            h[d as usize] += 1;
        }
        h
    }

    pub fn to_digit_string(&self) -> String {
        self.digits.iter().map(|&d| (b'0' + d) as char).collect()
    }

    /// Writes the bare digits format: one period per line.
    pub fn write_digits<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", self.to_digit_string())?;
        Ok(())
    }

    /// Writes the structured JSON record.
    pub fn write_structured<W: Write>(&self, mut w: W) -> Result<()> {
        let record = SequenceRecord::from(self);
        serde_json::to_writer(&mut w, &record)
            .map_err(|e| Error::MalformedRecord(e.to_string()))?;
        writeln!(w)?;
        Ok(())
    }

    pub fn serialize(&self, format: SequenceFormat) -> String {
        let mut buf = Vec::new();
        match format {
            SequenceFormat::Digits => self.write_digits(&mut buf).unwrap(),
            SequenceFormat::Structured => self.write_structured(&mut buf).unwrap(),
        }
        String::from_utf8(buf).unwrap()
    }

    /// Parses the bare digits format; rejects anything outside '0'..'3'.
    pub fn parse_digits(input: &str) -> Result<Self> {
        let trimmed = input.trim();
        let mut digits = Vec::with_capacity(trimmed.len());
        for c in trimmed.chars() {
            match c {
                '0'..='3' => digits.push(c as u8 - b'0'),
                _ => return Err(Error::InvalidDigit(c)),
            }
        }
        Self::new(digits, None)
    }

    /// Parses the structured JSON record, enforcing the declared period.
    pub fn parse_structured(input: &str) -> Result<Self> {
        let record: SequenceRecord = serde_json::from_str(input.trim())
            .map_err(|e| Error::MalformedRecord(e.to_string()))?;
        record.into_sequence()
    }

    /// Parses either format, sniffing the structured record by its leading
    /// brace.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::parse_structured(input)
        } else {
            Self::parse_digits(input)
        }
    }
}

/// On-disk format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceFormat {
    Digits,
    Structured,
}

/// The machine-readable interchange record for a sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub period: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub digits: String,
}

impl From<&QuaternarySequence> for SequenceRecord {
    fn from(seq: &QuaternarySequence) -> Self {
        Self {
            period: seq.period(),
            p: seq.provenance.map(|(p, _)| p),
            q: seq.provenance.map(|(_, q)| q),
            digits: seq.to_digit_string(),
        }
    }
}

impl SequenceRecord {
    fn into_sequence(self) -> Result<QuaternarySequence> {
        let mut digits = Vec::with_capacity(self.digits.len());
        for c in self.digits.chars() {
            match c {
                '0'..='3' => digits.push(c as u8 - b'0'),
                _ => return Err(Error::InvalidDigit(c)),
            }
        }
        if digits.len() as u64 != self.period {
            return Err(Error::PeriodMismatch {
                declared: self.period,
                actual: digits.len() as u64,
            });
        }
        let provenance = match (self.p, self.q) {
            (Some(p), Some(q)) => Some((p, q)),
            _ => None,
        };
        QuaternarySequence::new(digits, provenance)
    }
}

/// Generates one period of the sequence for a validated pair.
pub fn generate(params: &TwoPrimeParams) -> QuaternarySequence {
    generate_from_table(&build_class_table(params))
}

/// As [`generate`], reusing an existing class table.
pub fn generate_from_table(table: &ClassTable) -> QuaternarySequence {
    let params = table.params();
    let digits = (0..params.pq())
        .map(|u| match table.label_of(u) {
            ClassLabel::Q | ClassLabel::R => 2,
            ClassLabel::P => 0,
            ClassLabel::D0 => 0,
            ClassLabel::D1 => 1,
            ClassLabel::D2 => 2,
            ClassLabel::D3 => 3,
        })
        .collect();
    QuaternarySequence {
        digits,
        provenance: Some((params.p(), params.q())),
    }
}
