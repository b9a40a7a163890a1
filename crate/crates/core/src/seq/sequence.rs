use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use super::Nucleotide;
use crate::error::{Error, Result};

/// An ordered sequence over {A, C, G, T}. The empty sequence is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DnaSequence(Vec<Nucleotide>);

impl DnaSequence {
    pub fn new() -> Self {
        DnaSequence(Vec::new())
    }

    /// Parses ASCII letters (either case). Any other byte is rejected.
    pub fn from_ascii(bytes: &[u8]) -> Result<Self> {
        bytes
            .iter()
            .enumerate()
            .map(|(position, &b)| Nucleotide::from_ascii(b).ok_or(Error::InvalidSymbol { symbol: b as char, position }))
            .collect::<Result<Vec<_>>>()
            .map(DnaSequence)
    }

    pub fn as_slice(&self) -> &[Nucleotide] {
        &self.0
    }

    pub fn push(&mut self, n: Nucleotide) {
        self.0.push(n);
    }

    pub fn extend_from(&mut self, other: &DnaSequence) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &DnaSequence) -> DnaSequence {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn into_inner(self) -> Vec<Nucleotide> {
        self.0
    }

    pub fn to_ascii(&self) -> Vec<u8> {
        self.0.iter().map(|n| n.to_ascii()).collect()
    }

    /// Fails with [`Error::EmptyWindow`] unless the sequence has at least one window of length `k`.
    pub(crate) fn require_window(&self, k: usize) -> Result<()> {
        if k == 0 || self.len() < k {
            Err(Error::EmptyWindow { len: self.len(), k })
        } else {
            Ok(())
        }
    }
}

impl Deref for DnaSequence {
    type Target = [Nucleotide];

    fn deref(&self) -> &[Nucleotide] {
        &self.0
    }
}

impl From<Vec<Nucleotide>> for DnaSequence {
    fn from(v: Vec<Nucleotide>) -> Self {
        DnaSequence(v)
    }
}

impl FromIterator<Nucleotide> for DnaSequence {
    fn from_iter<I: IntoIterator<Item = Nucleotide>>(iter: I) -> Self {
        DnaSequence(iter.into_iter().collect())
    }
}

impl FromStr for DnaSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, c)| Nucleotide::try_from(c).map_err(|symbol| Error::InvalidSymbol { symbol, position }))
            .collect::<Result<Vec<_>>>()
            .map(DnaSequence)
    }
}

impl fmt::Display for DnaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // ASCII only, so this cannot produce invalid UTF-8.
        f.write_str(std::str::from_utf8(&self.to_ascii()).unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let s: DnaSequence = "acgT".parse().unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.to_string(), "ACGT");
        assert!(DnaSequence::new().is_empty());
    }

    #[test]
    fn rejects_foreign_letters() {
        match "ACGU".parse::<DnaSequence>() {
            Err(Error::InvalidSymbol { symbol: 'U', position: 3 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn window_requirement() {
        let s: DnaSequence = "ACG".parse().unwrap();
        assert!(s.require_window(3).is_ok());
        assert!(s.require_window(4).is_err());
        assert!(s.require_window(0).is_err());
    }
}
