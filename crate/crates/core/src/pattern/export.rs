use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use super::{PatternError, PointPattern};

/// Digits after the decimal point in exported coordinates.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    /// Points as circles; `axes` picks the two rendered coordinates of a 3-dimensional pattern.
    Svg { axes: (usize, usize) },
}

/// Writes the pattern to `path` in the requested format.
pub fn export(p: &PointPattern, format: ExportFormat, path: &Path) -> Result<(), PatternError> {
    let text = match format {
        ExportFormat::Csv => to_csv(p),
        ExportFormat::Svg { axes } => to_svg(p, axes)?,
    };
    let mut file = std::fs::File::create(path)?;
    file.write_all(text.as_bytes())?;
    Ok(())
}

fn dims(p: &PointPattern) -> (usize, usize) {
    let n = p.u.len();
    let d = p.projected_points.first().map_or(0, Vec::len);
    (n, d)
}

/// One row per point: lattice coordinates, exact projections, decimal projections.
pub fn to_csv(p: &PointPattern) -> String {
    let (n, d) = dims(p);
    let mut header: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
    header.extend((0..d).map(|i| format!("proj{i}")));
    header.extend((0..d).map(|i| format!("proj_decimal{i}")));
    let mut out = header.join(",");
    out.push('\n');
    for ((z, a), r) in p.strip_points.iter().zip(&p.projected_points).zip(&p.rendered) {
        let mut cells: Vec<String> = z.iter().map(ToString::to_string).collect();
        cells.extend(a.iter().map(|x| format!("\"{x}\"")));
        cells.extend(r.iter().map(|x| format!("{x:.DECIMAL_DIGITS$}")));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Circles at the rendered coordinates inside a square view box of side 2R.
pub fn to_svg(p: &PointPattern, axes: (usize, usize)) -> Result<String, PatternError> {
    let d = p.rendered.first().map_or(2, Vec::len);
    if d > 3 {
        return Err(PatternError::UnsupportedDimension(d));
    }
    let r = num_traits::ToPrimitive::to_f64(&p.radius).unwrap_or(1.0).max(1.0);
    let pick = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.3} {:.3} {:.3} {:.3}">"#,
        -r,
        -r,
        2.0 * r,
        2.0 * r
    );
    let dot = r / 200.0;
    for v in &p.rendered {
        let (x, y) = if d == 1 { (v[0], 0.0) } else { (pick(v, axes.0), pick(v, axes.1)) };
        let _ = writeln!(out, r#"<circle cx="{x:.6}" cy="{:.6}" r="{dot:.4}"/>"#, -y);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
