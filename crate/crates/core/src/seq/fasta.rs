//! Streaming FASTA reader and writer.

use std::io::{BufRead, Write};
use std::str::FromStr;

use super::{DnaSequence, Nucleotide};
use crate::error::{Error, Result};

/// What to do with letters outside {A, C, G, T} (after case folding).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NonAcgtPolicy {
    /// Drop the symbol and join its neighbours.
    Skip,
    /// Cut the record at each such symbol and keep the longest fragment;
    /// on ties the later fragment wins.
    #[default]
    Split,
    /// Reject the record.
    Fail,
}

impl FromStr for NonAcgtPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "skip" => Ok(NonAcgtPolicy::Skip),
            "split" => Ok(NonAcgtPolicy::Split),
            "fail" => Ok(NonAcgtPolicy::Fail),
            _ => Err(Error::Parse { line: 0, message: format!("unknown policy {s:?}") }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastaRecord {
    /// Full header text after `>`.
    pub id: String,
    pub seq: DnaSequence,
}

/// Iterates over the records of a FASTA stream.
pub struct FastaReader<R> {
    input: R,
    policy: NonAcgtPolicy,
    line_no: usize,
    pending_header: Option<String>,
    buf: String,
    done: bool,
}

impl<R: BufRead> FastaReader<R> {
    pub fn new(input: R) -> Self {
        Self::with_policy(input, NonAcgtPolicy::default())
    }

    pub fn with_policy(input: R, policy: NonAcgtPolicy) -> Self {
        FastaReader { input, policy, line_no: 0, pending_header: None, buf: String::new(), done: false }
    }

    fn read_line(&mut self) -> Result<bool> {
        self.buf.clear();
        let n = self.input.read_line(&mut self.buf)?;
        if n > 0 {
            self.line_no += 1;
        }
        Ok(n > 0)
    }

    fn next_record(&mut self) -> Result<Option<FastaRecord>> {
        let id = match self.pending_header.take() {
            Some(h) => h,
            None => loop {
                if !self.read_line()? {
                    return Ok(None);
                }
                let line = self.buf.trim_end();
                if line.is_empty() {
                    continue;
                }
                match line.strip_prefix('>') {
                    Some(h) => break h.to_string(),
                    None => {
                        return Err(Error::Fasta {
                            line: self.line_no,
                            message: "sequence data before first header".into(),
                        })
                    }
                }
            },
        };

        let mut current = Vec::new();
        let mut best: Vec<Nucleotide> = Vec::new();
        let mut cut = false;
        while self.read_line()? {
            let line = self.buf.trim_end();
            if let Some(h) = line.strip_prefix('>') {
                self.pending_header = Some(h.to_string());
                break;
            }
            for (col, b) in line.bytes().enumerate() {
                if b.is_ascii_whitespace() {
                    continue;
                }
                match Nucleotide::from_ascii(b) {
                    Some(n) => current.push(n),
                    None => match self.policy {
                        NonAcgtPolicy::Skip => {}
                        NonAcgtPolicy::Split => {
                            cut = true;
                            if current.len() >= best.len() && !current.is_empty() {
                                best = std::mem::take(&mut current);
                            }
                            current.clear();
                        }
                        NonAcgtPolicy::Fail => {
                            return Err(Error::Fasta {
                                line: self.line_no,
                                message: format!("invalid symbol {:?} at column {}", b as char, col + 1),
                            })
                        }
                    },
                }
            }
        }
        if cut && current.len() < best.len() {
            current = best;
        }
        Ok(Some(FastaRecord { id, seq: current.into() }))
    }
}

impl<R: BufRead> Iterator for FastaReader<R> {
    type Item = Result<FastaRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.next_record() {
            Ok(Some(r)) => Some(Ok(r)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Reads every record of a FASTA stream.
pub fn parse_fasta<R: BufRead>(input: R, policy: NonAcgtPolicy) -> Result<Vec<FastaRecord>> {
    FastaReader::with_policy(input, policy).collect()
}

/// Writes one record, wrapping sequence lines at `width` letters.
pub fn write_fasta<W: Write>(mut out: W, header: &str, seq: &DnaSequence, width: usize) -> Result<()> {
    writeln!(out, ">{header}")?;
    let ascii = seq.to_ascii();
    for chunk in ascii.chunks(width.max(1)) {
        out.write_all(chunk)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, policy: NonAcgtPolicy) -> Result<Vec<(String, String)>> {
        parse_fasta(s.as_bytes(), policy).map(|v| v.into_iter().map(|r| (r.id, r.seq.to_string())).collect())
    }

    fn one(id: &str, s: &str) -> Vec<(String, String)> {
        vec![(id.to_string(), s.to_string())]
    }

    #[test]
    fn basic_records() {
        assert_eq!(parse(">x\nACGT\n", NonAcgtPolicy::Split).unwrap(), one("x", "ACGT"));
        assert_eq!(parse(">x\nacg\nt\n", NonAcgtPolicy::Split).unwrap(), one("x", "ACGT"));
        let two = parse(">a desc here\r\nAC\n\n>b\nGT", NonAcgtPolicy::Fail).unwrap();
        assert_eq!(two, vec![("a desc here".into(), "AC".into()), ("b".into(), "GT".into())]);
    }

    #[test]
    fn split_keeps_longest_later_on_tie() {
        assert_eq!(parse(">x\nACNNGT\n", NonAcgtPolicy::Split).unwrap(), one("x", "GT"));
        assert_eq!(parse(">x\nACGNT\n", NonAcgtPolicy::Split).unwrap(), one("x", "ACG"));
        assert_eq!(parse(">x\nAN\nCGTN\n", NonAcgtPolicy::Split).unwrap(), one("x", "CGT"));
        assert_eq!(parse(">x\nNNN\n", NonAcgtPolicy::Split).unwrap(), one("x", ""));
    }

    #[test]
    fn skip_and_fail() {
        assert_eq!(parse(">x\nACNNGT\n", NonAcgtPolicy::Skip).unwrap(), one("x", "ACGT"));
        match parse(">x\nAC\nANG\n", NonAcgtPolicy::Fail) {
            Err(Error::Fasta { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn data_before_header_is_rejected() {
        assert!(parse("ACGT\n>x\nA\n", NonAcgtPolicy::Split).is_err());
        assert!(parse("", NonAcgtPolicy::Split).unwrap().is_empty());
    }

    #[test]
    fn writer_wraps_lines() {
        let mut buf = Vec::new();
        write_fasta(&mut buf, "r", &"ACGTA".parse().unwrap(), 2).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), ">r\nAC\nGT\nA\n");
    }
}
