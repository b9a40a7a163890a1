//! Letter permutations of the DNA alphabet, extended letterwise to sequences.

use std::fmt;
use std::str::FromStr;

use super::{DnaSequence, Kmer, Nucleotide};
use crate::error::{Error, Result};

use Nucleotide::{A, C, G, T};

/// A bijection of {A, C, G, T}, stored as the image of each letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LetterPermutation {
    image: [Nucleotide; 4],
}

impl LetterPermutation {
    pub const IDENTITY: LetterPermutation = LetterPermutation { image: [A, C, G, T] };

    /// The eight permutations realised by symmetries of the CGR square,
    /// listed in the order e, r, r², r³, s, sr, sr², sr³ of their symmetries.
    pub const SQUARE_SYMMETRIC: [LetterPermutation; 8] = [
        LetterPermutation { image: [A, C, G, T] }, // ()
        LetterPermutation { image: [T, A, C, G] }, // (A T G C)
        LetterPermutation { image: [G, T, A, C] }, // (A G)(C T)
        LetterPermutation { image: [C, G, T, A] }, // (A C G T)
        LetterPermutation { image: [C, A, T, G] }, // (A C)(G T)
        LetterPermutation { image: [G, C, A, T] }, // (A G)
        LetterPermutation { image: [T, G, C, A] }, // (A T)(C G)
        LetterPermutation { image: [A, T, G, C] }, // (C T)
    ];

    /// Builds a permutation from the images of A, C, G, T. Fails unless bijective.
    pub fn from_images(image: [Nucleotide; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for n in image {
            if std::mem::replace(&mut seen[n as usize], true) {
                return Err(Error::MalformedPermutation(format!("{image:?} is not a bijection")));
            }
        }
        Ok(LetterPermutation { image })
    }

    #[inline]
    pub fn apply(&self, n: Nucleotide) -> Nucleotide {
        self.image[n as usize]
    }

    pub fn images(&self) -> [Nucleotide; 4] {
        self.image
    }

    pub fn inverse(&self) -> LetterPermutation {
        let mut image = [A; 4];
        for n in Nucleotide::ALL {
            image[self.apply(n) as usize] = n;
        }
        LetterPermutation { image }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LetterPermutation) -> LetterPermutation {
        let mut image = [A; 4];
        for n in Nucleotide::ALL {
            image[n as usize] = self.apply(other.apply(n));
        }
        LetterPermutation { image }
    }

    /// Whether the permutation corresponds to a symmetry of the square.
    pub fn is_square_symmetric(&self) -> bool {
        Self::SQUARE_SYMMETRIC.contains(self)
    }

    /// All 24 permutations of the alphabet.
    pub fn all() -> impl Iterator<Item = LetterPermutation> {
        (0..256u32).filter_map(|code| {
            let image = [0, 1, 2, 3].map(|s| Nucleotide::from_code((code >> (2 * s)) as u8));
            LetterPermutation::from_images(image).ok()
        })
    }

    pub fn apply_kmer(&self, w: &Kmer) -> Kmer {
        w.map_letters(|n| self.apply(n))
    }
}

/// Applies `sigma` letter by letter.
pub fn apply_permutation(sigma: &LetterPermutation, seq: &DnaSequence) -> DnaSequence {
    seq.iter().map(|&n| sigma.apply(n)).collect()
}

impl FromStr for LetterPermutation {
    type Err = Error;

    /// Cycle notation such as `(A G)(C T)`, `(A,T,G,C)` or `()`. Whitespace and commas
    /// between letters are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedPermutation(s.to_string());
        let mut image = Nucleotide::ALL;
        let mut used = [false; 4];
        let mut cycle: Option<Vec<Nucleotide>> = None;
        for c in s.chars().filter(|c| !c.is_whitespace() && *c != ',') {
            match (c, cycle.as_mut()) {
                ('(', None) => cycle = Some(Vec::new()),
                (')', Some(letters)) => {
                    for (i, &from) in letters.iter().enumerate() {
                        image[from as usize] = letters[(i + 1) % letters.len()];
                    }
                    cycle = None;
                }
                (_, Some(letters)) => {
                    let n = Nucleotide::try_from(c.to_ascii_uppercase()).map_err(|_| malformed())?;
                    if std::mem::replace(&mut used[n as usize], true) {
                        return Err(malformed());
                    }
                    letters.push(n);
                }
                _ => return Err(malformed()),
            }
        }
        if cycle.is_some() || s.trim().is_empty() {
            return Err(malformed());
        }
        LetterPermutation::from_images(image)
    }
}

impl fmt::Display for LetterPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut visited = [false; 4];
        let mut wrote = false;
        for start in Nucleotide::ALL {
            if visited[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut n = start;
            while !visited[n as usize] {
                visited[n as usize] = true;
                cycle.push(n.to_string());
                n = self.apply(n);
            }
            write!(f, "({})", cycle.join(" "))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LetterPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let s: DnaSequence = "ACG".parse().unwrap();
        assert_eq!(apply_permutation(&p("(A G)(C T)"), &s).to_string(), "GTA");
        let s: DnaSequence = "ACGT".parse().unwrap();
        assert_eq!(apply_permutation(&p("()"), &s).to_string(), "ACGT");
        let s: DnaSequence = "GCC".parse().unwrap();
        assert_eq!(apply_permutation(&p("(C T)"), &s).to_string(), "GTT");
    }

    #[test]
    fn named_set_matches_cycle_strings() {
        let names = ["()", "(A T G C)", "(A G)(C T)", "(A C G T)", "(A C)(G T)", "(A G)", "(A T)(C G)", "(C T)"];
        for (name, perm) in names.iter().zip(LetterPermutation::SQUARE_SYMMETRIC) {
            assert_eq!(p(name), perm, "{name}");
            assert_eq!(perm.to_string(), *name);
        }
    }

    #[test]
    fn parsing_is_lenient_about_spacing() {
        assert_eq!(p("(A,T,G,C)"), p("( A T G C )"));
        assert_eq!(p("(ag)(ct)"), p("(A G)(C T)"));
        assert_eq!(p(" ( ) "), LetterPermutation::IDENTITY);
    }

    #[test]
    fn parsing_rejects_garbage() {
        for bad in ["", "(A G", "A G", "(A A)", "(A G)(G T)", "(A N)", "(A G))"] {
            assert!(bad.parse::<LetterPermutation>().is_err(), "{bad}");
        }
    }

    #[test]
    fn twenty_four_permutations_eight_symmetric() {
        let all: Vec<_> = LetterPermutation::all().collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.is_square_symmetric()).count(), 8);
        for q in &all {
            assert_eq!(q.compose(&q.inverse()), LetterPermutation::IDENTITY);
            assert_eq!(q.to_string().parse::<LetterPermutation>().unwrap(), *q);
        }
    }
}
