//! Byte sequences over a declared alphabet.

use std::ops::Deref;

use crate::error::{Error, Result};

/// An ordered set of distinct byte symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    member: [bool; 256],
}

impl Alphabet {
    pub const DNA: &'static [u8] = b"ACGT";
    pub const PROTEIN: &'static [u8] = b"ACDEFGHIKLMNPQRSTVWY";

    pub fn new(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("alphabet must contain at least one symbol"));
        }
        let mut member = [false; 256];
        for &s in symbols {
            if member[s as usize] {
                return Err(Error::invalid(format!(
                    "duplicate alphabet symbol {:?}",
                    s as char
                )));
            }
            member[s as usize] = true;
        }
        Ok(Self {
            symbols: symbols.to_vec(),
            member,
        })
    }

    pub fn dna() -> Self {
        Self::new(Self::DNA).expect("static alphabet")
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.member[symbol as usize]
    }
}

/// A string of opaque 8-bit symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Sequence {
    symbols: Vec<u8>,
}

impl Sequence {
    /// Wraps raw bytes without alphabet validation.
    pub fn new(symbols: impl Into<Vec<u8>>) -> Self {
        Self {
            symbols: symbols.into(),
        }
    }

    /// Wraps bytes, rejecting any symbol outside `alphabet`.
    pub fn with_alphabet(symbols: impl Into<Vec<u8>>, alphabet: &Alphabet) -> Result<Self> {
        let symbols = symbols.into();
        if let Some(position) = symbols.iter().position(|&s| !alphabet.contains(s)) {
            return Err(Error::InvalidSymbol {
                symbol: symbols[position] as char,
                position,
            });
        }
        Ok(Self { symbols })
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.symbols
    }

    /// Inclusive substring `[from, to]`; empty when `from > to` or out of range.
    pub fn substring(&self, from: usize, to: usize) -> &[u8] {
        substring(&self.symbols, from, to)
    }
}

impl Deref for Sequence {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.symbols
    }
}

impl AsRef<[u8]> for Sequence {
    fn as_ref(&self) -> &[u8] {
        &self.symbols
    }
}

impl From<&[u8]> for Sequence {
    fn from(s: &[u8]) -> Self {
        Self::new(s)
    }
}

impl From<&str> for Sequence {
    fn from(s: &str) -> Self {
        Self::new(s.as_bytes())
    }
}

/// Inclusive slice `s[from..=to]`, clipped to `s`; empty when `from > to`.
pub fn substring(s: &[u8], from: usize, to: usize) -> &[u8] {
    if from > to || from >= s.len() {
        return &[];
    }
    &s[from..=to.min(s.len() - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substring_is_inclusive_and_empty_when_reversed() {
        let s = Sequence::from("ATTATG");
        assert_eq!(s.substring(1, 3), b"TTA");
        assert_eq!(s.substring(3, 2), b"");
        assert_eq!(s.substring(4, 100), b"TG");
        assert_eq!(s.substring(10, 12), b"");
    }

    #[test]
    fn alphabet_validation() {
        let dna = Alphabet::dna();
        assert!(Sequence::with_alphabet(b"ACGTTG".to_vec(), &dna).is_ok());
        match Sequence::with_alphabet(b"ACNT".to_vec(), &dna) {
            Err(Error::InvalidSymbol { symbol, position }) => {
                assert_eq!(symbol, 'N');
                assert_eq!(position, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Alphabet::new(b"").is_err());
        assert!(Alphabet::new(b"AA").is_err());
    }

    #[test]
    fn length_matches_symbols() {
        let s = Sequence::new(vec![1u8, 2, 3]);
        assert_eq!(s.len(), 3);
        assert!(Sequence::default().is_empty());
    }
}
