use std::io::Write;

use super::dyadic::{Dyadic, MAX_EXPONENT};
use crate::error::{Error, Result};
use crate::seq::{DnaSequence, Nucleotide};

/// Default number of steps tracked with exact dyadic coordinates.
pub const DEFAULT_DEPTH_CAP: usize = 64;

/// A point of the CGR square. `exact` holds the dyadic coordinates while the
/// point lies within the depth cap; `x`/`y` are the float shadow used for rendering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgrPoint {
    pub exact: Option<(Dyadic, Dyadic)>,
    pub x: f64,
    pub y: f64,
}

impl CgrPoint {
    pub const ORIGIN: CgrPoint = CgrPoint { exact: Some((Dyadic::ZERO, Dyadic::ZERO)), x: 0.0, y: 0.0 };

    pub fn from_exact(x: Dyadic, y: Dyadic) -> CgrPoint {
        CgrPoint { exact: Some((x, y)), x: x.to_f64(), y: y.to_f64() }
    }

    pub fn from_float(x: f64, y: f64) -> CgrPoint {
        CgrPoint { exact: None, x, y }
    }

    /// Exact coordinates; panics when the point was tracked as a float only.
    pub fn xy(&self) -> (Dyadic, Dyadic) {
        self.exact.expect("point beyond the exact depth cap")
    }
}

/// Corner of the CGR square labelled by `n`.
pub fn label(n: Nucleotide) -> (i8, i8) {
    n.corner()
}

/// Points `p_0 .. p_n` of the chaos game on a sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CgrTrajectory {
    points: Vec<CgrPoint>,
}

impl CgrTrajectory {
    pub fn new(seq: &DnaSequence) -> CgrTrajectory {
        Self::with_depth_cap(seq, DEFAULT_DEPTH_CAP)
    }

    /// Points after step `depth_cap` carry only the float shadow.
    pub fn with_depth_cap(seq: &DnaSequence, depth_cap: usize) -> CgrTrajectory {
        let depth_cap = depth_cap.min(MAX_EXPONENT as usize - 1);
        let mut points = Vec::with_capacity(seq.len() + 1);
        let mut p = CgrPoint::ORIGIN;
        points.push(p);
        for (step, &n) in seq.iter().enumerate() {
            let (cx, cy) = n.corner();
            let x = (p.x + cx as f64) / 2.0;
            let y = (p.y + cy as f64) / 2.0;
            p = match p.exact {
                Some((ex, ey)) if step < depth_cap => CgrPoint {
                    exact: Some(((ex + Dyadic::from_int(cx as i64)).half(), (ey + Dyadic::from_int(cy as i64)).half())),
                    x,
                    y,
                },
                _ => CgrPoint::from_float(x, y),
            };
            points.push(p);
        }
        CgrTrajectory { points }
    }

    pub(crate) fn from_points(points: Vec<CgrPoint>) -> CgrTrajectory {
        CgrTrajectory { points }
    }

    pub fn points(&self) -> &[CgrPoint] {
        &self.points
    }

    /// Length of the source sequence.
    pub fn source_len(&self) -> usize {
        self.points.len() - 1
    }

    /// Tab-separated `index`, `x`, `y` rows of the float shadow.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "index\tx\ty")?;
        for (i, p) in self.points.iter().enumerate() {
            writeln!(out, "{i}\t{}\t{}", p.x, p.y)?;
        }
        Ok(())
    }
}

pub fn cgr_trajectory(seq: &DnaSequence) -> CgrTrajectory {
    CgrTrajectory::new(seq)
}

/// Final point of the chaos game, from the closed form `x = Σ x_l 2^(l-1) / 2^n`
/// without building the trajectory.
pub fn last_point(seq: &DnaSequence) -> Result<CgrPoint> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let n = seq.len();
    // Earlier letters shift below f64 resolution after ~60 halvings.
    let (mut fx, mut fy) = (0.0f64, 0.0f64);
    let mut w = 0.5;
    for &a in seq.iter().rev().take(64) {
        let (cx, cy) = a.corner();
        fx += cx as f64 * w;
        fy += cy as f64 * w;
        w /= 2.0;
    }
    if n > DEFAULT_DEPTH_CAP {
        return Ok(CgrPoint::from_float(fx, fy));
    }
    let (mut nx, mut ny) = (0i128, 0i128);
    for (l, &a) in seq.iter().enumerate() {
        let (cx, cy) = a.corner();
        nx += (cx as i128) << l;
        ny += (cy as i128) << l;
    }
    let x = Dyadic::new(nx, n as u32);
    let y = Dyadic::new(ny, n as u32);
    Ok(CgrPoint { exact: Some((x, y)), x: fx, y: fy })
}
