//! Grayscale rendering of CGR occupancy and FCGR counts, with binary PGM output.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::cgr::{CellIndices, FcgrMatrix, Symmetry};
use crate::error::{Error, Result};
use crate::seq::DnaSequence;

/// Largest resolution order accepted by [`render_cgr`].
pub const MAX_RESOLUTION: usize = 16;

pub const BLACK: u8 = 0;
pub const WHITE: u8 = 255;

/// Row-major 8-bit image; 0 is black.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, fill: u8) -> GrayImage {
        GrayImage { width, height, pixels: vec![fill; width * height] }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<u8>) -> Result<GrayImage> {
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch { expected: width * height, found: pixels.len() });
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: u8) {
        self.pixels[row * self.width + col] = v;
    }

    /// Number of black pixels.
    pub fn count_black(&self) -> usize {
        self.pixels.iter().filter(|&&p| p == BLACK).count()
    }
}

/// Intensity mapping for [`render_fcgr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    Linear,
    #[default]
    Log,
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scale> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            _ => Err(Error::Parse { line: 0, message: format!("unknown scale {s:?}") }),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        })
    }
}

/// Occupancy image at `2^r x 2^r`: a pixel is black iff some chaos-game
/// point `p_m`, `m >= r`, falls in its grid cell.
pub fn render_cgr(seq: &DnaSequence, r: usize) -> Result<GrayImage> {
    if !(1..=MAX_RESOLUTION).contains(&r) {
        return Err(Error::OrderOutOfRange { k: r, min: 1, max: MAX_RESOLUTION });
    }
    if seq.len() < r {
        return Err(Error::EmptyWindow { len: seq.len(), k: r });
    }
    let side = 1usize << r;
    let mut img = GrayImage::new(side, side, WHITE);
    let top = r - 1;
    let (mut i, mut j) = (0usize, 0usize);
    for (pos, &a) in seq.iter().enumerate() {
        i = (i >> 1) | ((a.row_bit() as usize) << top);
        j = (j >> 1) | ((a.column_bit() as usize) << top);
        if pos + 1 >= r {
            img.set(i, j, BLACK);
        }
    }
    Ok(img)
}

/// Darker pixels for larger counts; an all-zero matrix renders white.
pub fn render_fcgr(m: &FcgrMatrix, scale: Scale) -> GrayImage {
    let side = m.side();
    let max = m.max();
    if max == 0 {
        return GrayImage::new(side, side, WHITE);
    }
    let pixels = m
        .entries()
        .iter()
        .map(|&c| {
            let level = match scale {
                Scale::Linear => (255 * c as u128 / max as u128) as u8,
                Scale::Log => (255.0 * (c as f64).ln_1p() / (max as f64).ln_1p()).floor().min(255.0) as u8,
            };
            WHITE - level
        })
        .collect();
    GrayImage { width: side, height: side, pixels }
}

/// Binary PGM: `P5\n<width> <height>\n255\n` then the raw pixels.
pub fn write_pgm<W: Write>(img: &GrayImage, mut out: W) -> Result<()> {
    write!(out, "P5\n{} {}\n255\n", img.width, img.height)?;
    out.write_all(&img.pixels)?;
    Ok(())
}

pub fn pgm_bytes(img: &GrayImage) -> Vec<u8> {
    let mut buf = Vec::with_capacity(img.pixels.len() + 20);
    write_pgm(img, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// Parses a binary PGM with maxval 255 and no comments, as written by [`write_pgm`].
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let bad = |message: &str| Error::Parse { line: 0, message: format!("PGM: {message}") };
    let mut fields = Vec::with_capacity(4);
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("header is not ASCII"))?);
    }
    if fields[0] != "P5" {
        return Err(bad("magic is not P5"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad number"));
    let (w, h, maxval) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);
    if maxval != 255 {
        return Err(bad("maxval is not 255"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    let data = bytes.get(pos + 1..).ok_or_else(|| bad("missing raster"))?;
    GrayImage::from_pixels(w, h, data.to_vec())
}

/// Moves every pixel of a `2^r x 2^r` image to the grid cell its center is
/// carried to by `h`.
pub fn remap_image(img: &GrayImage, h: Symmetry) -> Result<GrayImage> {
    let side = img.width();
    if img.height() != side || !side.is_power_of_two() || side < 2 {
        return Err(Error::InvalidDistribution(format!("image {}x{} is not a 2^r square", side, img.height())));
    }
    let r = side.trailing_zeros() as usize;
    let mut out = GrayImage::new(side, side, WHITE);
    for i in 0..side {
        for j in 0..side {
            let to = h.map_cell(&CellIndices { k: r, i: i as u64, j: j as u64 });
            out.set(to.i as usize, to.j as usize, img.get(i, j));
        }
    }
    Ok(out)
}
