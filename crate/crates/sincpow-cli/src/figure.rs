//! Curve-family figure: `f_r` over `[0, 1]` for a geometric family of
//! exponents `r = base^k`, emitted as CSV (round-trip-exact doubles) or as
//! a standalone SVG plot.

use std::io::{self, Write};

use sincpow::core_math::f_r_certified;
use sincpow::verify::grid_eval_tolerance;
use sincpow::EvalParams;

use crate::CliError;

/// Specification of the curve family.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    /// Exponent indices; each curve plots `f_(base^k)`. Must be nonempty
    /// and strictly increasing.
    pub k_values: Vec<u32>,
    /// Base of the exponent family, strictly above 1.
    pub base: f64,
    /// Number of grid points across `[0, 1]`.
    pub n_points: usize,
}

impl Default for FigureSpec {
    fn default() -> Self {
        Self {
            k_values: vec![1, 2, 4, 8, 16, 32, 64, 128, 256],
            base: 1.02,
            n_points: 1001,
        }
    }
}

impl FigureSpec {
    /// Validates the invariants: `base > 1`, nonempty strictly increasing
    /// `k_values`, at least 2 grid points.
    pub fn validate(&self) -> Result<(), CliError> {
        if !self.base.is_finite() || self.base <= 1.0 {
            return Err(CliError::Usage(format!(
                "figure base must be a finite number above 1, got {}",
                self.base
            )));
        }
        if self.k_values.is_empty() {
            return Err(CliError::Usage("figure needs at least one k value".into()));
        }
        if self.k_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage(format!(
                "k values must be strictly increasing, got {:?}",
                self.k_values
            )));
        }
        if self.n_points < 2 {
            return Err(CliError::Usage(format!(
                "figure needs at least 2 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    /// The exponents `base^k` for each configured `k`.
    pub fn r_values(&self) -> Vec<f64> {
        self.k_values
            .iter()
            .map(|&k| self.base.powi(k as i32))
            .collect()
    }
}

/// Evaluated curve family: values and certified error bounds per curve and
/// grid point.
#[derive(Debug, Clone)]
pub struct FigureTable {
    /// Grid points (first column of the CSV).
    pub xs: Vec<f64>,
    /// The `k` index of each curve.
    pub k_values: Vec<u32>,
    /// The exponent `base^k` of each curve.
    pub r_values: Vec<f64>,
    /// `values[c][i]` is `f_(r_c)(xs[i])`.
    pub values: Vec<Vec<f64>>,
    /// Certified error bound for each entry of `values`.
    pub errors: Vec<Vec<f64>>,
}

/// Evaluates the curve family on a uniform grid. `max_terms` optionally
/// overrides the evaluator's term cap.
pub fn figure_table(spec: &FigureSpec, max_terms: Option<u64>) -> Result<FigureTable, CliError> {
    spec.validate()?;
    let n = spec.n_points;
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                1.0
            } else {
                i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let r_values = spec.r_values();

    let mut values = Vec::with_capacity(r_values.len());
    let mut errors = Vec::with_capacity(r_values.len());
    for &r in &r_values {
        let mut params = EvalParams::new(r, grid_eval_tolerance(r)).map_err(CliError::eval)?;
        if let Some(cap) = max_terms {
            params = params.with_max_terms(cap).map_err(CliError::eval)?;
        }
        let mut row_v = Vec::with_capacity(n);
        let mut row_e = Vec::with_capacity(n);
        for &x in &xs {
            let cv = f_r_certified(x, &params).map_err(CliError::eval)?;
            row_v.push(cv.value);
            row_e.push(cv.error_bound);
        }
        values.push(row_v);
        errors.push(row_e);
    }
    Ok(FigureTable {
        xs,
        k_values: spec.k_values.clone(),
        r_values,
        values,
        errors,
    })
}

/// Writes the table as CSV: header `x,f_r(k=1),...`, one row per grid
/// point, every number in 17-significant-digit lowercase scientific
/// notation (round-trip exact for doubles), LF line endings.
pub fn write_csv<W: Write>(table: &FigureTable, mut w: W) -> io::Result<()> {
    write!(w, "x")?;
    for k in &table.k_values {
        write!(w, ",f_r(k={k})")?;
    }
    writeln!(w)?;
    for (i, &x) in table.xs.iter().enumerate() {
        write!(w, "{x:.16e}")?;
        for curve in &table.values {
            write!(w, ",{:.16e}", curve[i])?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Plot geometry for the SVG output.
const SVG_WIDTH: u32 = 840;
const SVG_HEIGHT: u32 = 560;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 48.0;

/// Distinguishable stroke colors, cycled across curves.
const PALETTE: [&str; 9] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22",
];

/// Writes the table as a standalone SVG: linear axes on `[0, 1] x [0, 1]`,
/// one polyline per curve, and a legend naming each curve's exponent.
pub fn write_svg<W: Write>(table: &FigureTable, mut w: W) -> io::Result<()> {
    let plot_w = SVG_WIDTH as f64 - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT as f64 - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + x * plot_w;
    let py = |y: f64| MARGIN_TOP + (1.0 - y) * plot_h;

    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">"#
    )?;
    writeln!(
        w,
        r#"  <rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>"#
    )?;

    // Axes with ticks at 0, 1/2, 1 on both coordinates.
    writeln!(
        w,
        r#"  <g stroke="black" stroke-width="1" fill="none">
    <line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>
    <line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>
  </g>"#,
        x0 = px(0.0),
        x1 = px(1.0),
        y0 = py(0.0),
        y1 = py(1.0),
    )?;
    for tick in [0.0, 0.5, 1.0] {
        writeln!(
            w,
            r#"  <line x1="{x}" y1="{y}" x2="{x}" y2="{y2}" stroke="black"/>
  <text x="{x}" y="{ty}" font-size="13" text-anchor="middle">{tick}</text>"#,
            x = px(tick),
            y = py(0.0),
            y2 = py(0.0) + 5.0,
            ty = py(0.0) + 22.0,
        )?;
        writeln!(
            w,
            r#"  <line x1="{x2}" y1="{y}" x2="{x}" y2="{y}" stroke="black"/>
  <text x="{tx}" y="{ty}" font-size="13" text-anchor="end">{tick}</text>"#,
            x = px(0.0),
            x2 = px(0.0) - 5.0,
            y = py(tick),
            tx = px(0.0) - 9.0,
            ty = py(tick) + 4.0,
        )?;
    }
    writeln!(
        w,
        r#"  <text x="{x}" y="{y}" font-size="14" text-anchor="middle">x</text>"#,
        x = px(0.5),
        y = SVG_HEIGHT as f64 - 10.0,
    )?;

    for (c, curve) in table.values.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        write!(
            w,
            r#"  <polyline fill="none" stroke="{color}" stroke-width="1.5" points=""#
        )?;
        for (i, &x) in table.xs.iter().enumerate() {
            if i > 0 {
                write!(w, " ")?;
            }
            write!(w, "{:.2},{:.2}", px(x), py(curve[i].clamp(0.0, 1.0)))?;
        }
        writeln!(w, r#""/>"#)?;
    }

    // Legend, top-right.
    for (c, (&k, &r)) in table.k_values.iter().zip(&table.r_values).enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        let y = MARGIN_TOP + 16.0 + 20.0 * c as f64;
        let x = SVG_WIDTH as f64 - MARGIN_RIGHT + 14.0;
        writeln!(
            w,
            r#"  <line x1="{x}" y1="{ly}" x2="{x2}" y2="{ly}" stroke="{color}" stroke-width="2"/>
  <text x="{tx}" y="{ty}" font-size="13">k={k} (r={r:.4})</text>"#,
            ly = y - 4.0,
            x2 = x + 22.0,
            tx = x + 28.0,
            ty = y,
        )?;
    }
    writeln!(w, "</svg>")?;
    Ok(())
}
