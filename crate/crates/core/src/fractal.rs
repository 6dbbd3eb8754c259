//! Box-counting fractal dimension of a composition's graph.
//!
//! The graph of a level sequence is the polyline joining the points
//! `(i / (L - 1), midpoint_amplitude(level[i]))` inside the unit square. For
//! each grid exponent `m` the square is split into `2^m x 2^m` half-open
//! cells (the top row and right column are closed at 1.0, mirroring the
//! quantizer's clamp), and the count is the number of cells the polyline
//! passes through. Cell membership is resolved per point, so a segment lying
//! exactly on a gridline occupies only the cell on its upper/right side, and
//! a corner touched in passing belongs to its upper-right cell alone.
//!
//! Counts come from exact segment-grid traversal, not rasterization: for each
//! segment the crossing parameters with every gridline are enumerated, and
//! the cell between consecutive crossings is read off at the sub-interval
//! midpoint. The dimension is the least-squares slope of `log2(count)`
//! against `m`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::float::Float;
use crate::raga::{decode_amplitudes, LevelSequence};
use crate::Real;

/// Grid exponents to fit over: scales `m_min..=m_max` with cell size `2^-m`.
///
/// The default 1..=6 keeps the finest cell (1/64) coarser than the sample
/// spacing of a length-1000 string, which would otherwise drag every sampled
/// curve toward dimension 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractalConfig {
    pub m_min: u32,
    pub m_max: u32,
}

pub const MAX_GRID_EXPONENT: u32 = 12;

impl Default for FractalConfig {
    fn default() -> Self {
        Self { m_min: 1, m_max: 6 }
    }
}

impl FractalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m_min < 1 || self.m_min >= self.m_max || self.m_max > MAX_GRID_EXPONENT {
            return Err(Error::InvalidConfig(format!(
                "grid exponents must satisfy 1 <= m_min < m_max <= {MAX_GRID_EXPONENT} \
                 (got {}..{})",
                self.m_min, self.m_max
            )));
        }
        Ok(())
    }
}

/// A point of the graph, inside the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<F: Float = Real> {
    pub x: F,
    pub y: F,
}

/// Occupied-cell counts per scale and the fitted dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct FractalReport<F: Float = Real> {
    pub dimension: F,
    /// `(box_size, count)` per scale, finest last.
    pub scales: Vec<(F, u64)>,
    /// Coefficient of determination of the log-log fit, in `[0, 1]`.
    pub fit_r2: F,
}

/// The graph polyline of a level sequence: point `i` is
/// `(i / (L - 1), amplitude[i])`. Needs at least two samples.
pub fn graph_polyline<F: Float>(ls: &LevelSequence) -> Result<Vec<Point<F>>> {
    let len = ls.len();
    if len < 2 {
        return Err(Error::TooShort(len));
    }
    let amplitudes = decode_amplitudes::<F>(ls);
    let denom = F::from_usize(len - 1);
    Ok(amplitudes
        .values()
        .iter()
        .enumerate()
        .map(|(i, &y)| Point {
            x: F::from_usize(i) / denom,
            y,
        })
        .collect())
}

#[inline]
fn cell_of<F: Float>(v: F, side: u64) -> u64 {
    let raw = (v * F::from_f64(side as f64)).floor().into_f64() as u64;
    raw.min(side - 1)
}

/// Unclamped bin index, used only to enumerate which gridlines a coordinate
/// range crosses (1.0 maps to `side` here; the crossing at t = 1 is excluded
/// by the open parameter test).
#[inline]
fn bin_raw<F: Float>(v: F, side: u64) -> u64 {
    (v * F::from_f64(side as f64)).floor().into_f64() as u64
}

fn axis_crossings<F: Float>(a: F, b: F, side: u64, out: &mut Vec<F>) {
    if a == b {
        return;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let side_f = F::from_f64(side as f64);
    for k in (bin_raw(lo, side) + 1)..=bin_raw(hi, side) {
        let boundary = F::from_f64(k as f64) / side_f;
        let t = (boundary - a) / (b - a);
        if t > F::zero() && t < F::one() {
            out.push(t);
        }
    }
}

/// Number of cells of the `2^m x 2^m` grid intersected by the polyline.
pub fn box_count<F: Float>(points: &[Point<F>], m: u32) -> u64 {
    let side = 1u64 << m;
    let mut cells: HashSet<u64> = HashSet::new();
    let insert = |cells: &mut HashSet<u64>, p: Point<F>| {
        cells.insert(cell_of(p.x, side) * side + cell_of(p.y, side));
    };
    if let [only] = points {
        insert(&mut cells, *only);
    }
    let half = F::from_f64(0.5);
    let mut ts: Vec<F> = Vec::new();
    for w in points.windows(2) {
        let (p, q) = (w[0], w[1]);
        // Endpoints first: they may sit exactly on a gridline the interior
        // sampling below never lands on.
        insert(&mut cells, p);
        insert(&mut cells, q);
        ts.clear();
        ts.push(F::zero());
        ts.push(F::one());
        axis_crossings(p.x, q.x, side, &mut ts);
        axis_crossings(p.y, q.y, side, &mut ts);
        ts.sort_by(|a, b| a.partial_cmp(b).expect("crossing parameters are finite"));
        ts.dedup();
        for pair in ts.windows(2) {
            let t = (pair[0] + pair[1]) * half;
            let mid = Point {
                x: p.x + t * (q.x - p.x),
                y: p.y + t * (q.y - p.y),
            };
            insert(&mut cells, mid);
        }
    }
    cells.len() as u64
}

fn fit_line<F: Float>(xs: &[F], ys: &[F]) -> (F, F) {
    let n = F::from_usize(xs.len());
    let sx = xs.iter().fold(F::zero(), |a, &v| a + v);
    let sy = ys.iter().fold(F::zero(), |a, &v| a + v);
    let sxx = xs.iter().fold(F::zero(), |a, &v| a + v * v);
    let sxy = xs
        .iter()
        .zip(ys.iter())
        .fold(F::zero(), |a, (&x, &y)| a + x * y);
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

/// Box counts over `cfg`'s scales and the least-squares slope of
/// `log2(count)` against `m`.
pub fn dimension<F: Float>(ls: &LevelSequence, cfg: &FractalConfig) -> Result<FractalReport<F>> {
    cfg.validate()?;
    let polyline = graph_polyline::<F>(ls)?;
    let mut scales = Vec::with_capacity((cfg.m_max - cfg.m_min + 1) as usize);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for m in cfg.m_min..=cfg.m_max {
        let count = box_count(&polyline, m);
        scales.push((F::from_f64(0.5f64.powi(m as i32)), count));
        xs.push(F::from_usize(m as usize));
        ys.push(F::from_f64(count as f64).log2());
    }
    let (slope, intercept) = fit_line(&xs, &ys);
    let mean_y = ys.iter().fold(F::zero(), |a, &v| a + v) / F::from_usize(ys.len());
    let ss_res = xs
        .iter()
        .zip(ys.iter())
        .fold(F::zero(), |a, (&x, &y)| {
            let r = y - (slope * x + intercept);
            a + r * r
        });
    let ss_tot = ys
        .iter()
        .fold(F::zero(), |a, &y| a + (y - mean_y) * (y - mean_y));
    let fit_r2 = if ss_tot > F::zero() {
        (F::one() - ss_res / ss_tot).max(F::zero()).min(F::one())
    } else if ss_res > F::zero() {
        F::zero()
    } else {
        F::one()
    };
    Ok(FractalReport {
        dimension: slope,
        scales,
        fit_r2,
    })
}
