use std::fmt;

/// One letter of the DNA alphabet. The discriminant is the 2-bit code used
/// for k-mer packing, so `A < C < G < T` both as values and as codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Nucleotide {
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

    #[inline]
    pub fn from_ascii(byte: u8) -> Option<Nucleotide> {
        match byte {
            b'A' | b'a' => Some(Nucleotide::A),
            b'C' | b'c' => Some(Nucleotide::C),
            b'G' | b'g' => Some(Nucleotide::G),
            b'T' | b't' => Some(Nucleotide::T),
            _ => None,
        }
    }

    #[inline]
    pub fn to_ascii(self) -> u8 {
        b"ACGT"[self as usize]
    }

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn from_code(code: u8) -> Nucleotide {
        Nucleotide::ALL[(code & 0b11) as usize]
    }

    /// Corner of the CGR square assigned to this letter.
    #[inline]
    pub fn corner(self) -> (i8, i8) {
        match self {
            Nucleotide::A => (-1, -1),
            Nucleotide::C => (-1, 1),
            Nucleotide::G => (1, 1),
            Nucleotide::T => (1, -1),
        }
    }

    /// Inverse of [`Nucleotide::corner`].
    pub fn from_corner(x: i8, y: i8) -> Option<Nucleotide> {
        match (x, y) {
            (-1, -1) => Some(Nucleotide::A),
            (-1, 1) => Some(Nucleotide::C),
            (1, 1) => Some(Nucleotide::G),
            (1, -1) => Some(Nucleotide::T),
            _ => None,
        }
    }

    /// Column bit of the letter in FCGR cell indices (set on the right half: G, T).
    #[inline]
    pub(crate) fn column_bit(self) -> u64 {
        matches!(self, Nucleotide::G | Nucleotide::T) as u64
    }

    /// Row bit of the letter in FCGR cell indices (set on the bottom half: A, T).
    #[inline]
    pub(crate) fn row_bit(self) -> u64 {
        matches!(self, Nucleotide::A | Nucleotide::T) as u64
    }

    #[inline]
    pub(crate) fn from_cell_bits(row: u64, col: u64) -> Nucleotide {
        match (row & 1, col & 1) {
            (0, 0) => Nucleotide::C,
            (0, _) => Nucleotide::G,
            (_, 0) => Nucleotide::A,
            _ => Nucleotide::T,
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ascii() as char)
    }
}

impl TryFrom<char> for Nucleotide {
    type Error = char;

    fn try_from(c: char) -> Result<Self, char> {
        if c.is_ascii() {
            Nucleotide::from_ascii(c as u8).ok_or(c)
        } else {
            Err(c)
        }
    }
}
