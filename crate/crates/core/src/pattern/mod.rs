//! Strip and projection point patterns in a bounded window, exact window membership and
//! singular-offset scans.

mod export;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{field_dot, linalg, ExactError, FieldElement, FieldVector};
use crate::scheme::{derive_internal, InternalData, Position, ProjectionScheme, SchemeError, Zonotope};

pub use export::{export, ExportFormat};

/// The canonical window in H-representation.
pub type ZonotopeH = Zonotope;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("radius must be nonnegative")]
    NegativeRadius,
    #[error("cannot write the pattern: {0}")]
    IoFailure(#[from] std::io::Error),
    #[error("SVG export supports pattern dimension 1 to 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("search box has {0} candidate points, above the limit")]
    BoxTooLarge(u128),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Upper bound on integer candidates scanned by a single call.
pub const MAX_CANDIDATES: u128 = 50_000_000;

/// Facets of K = π⊥([0,1]^N), with functionals in E⊥ acting on ambient vectors.
pub fn zonotope_facets(s: &ProjectionScheme) -> Result<ZonotopeH, PatternError> {
    let data = derive_internal(s)?;
    Ok(Zonotope::from_functionals(&data.e_perp, s.n)?)
}

/// Points of the strip pattern together with their projections.
#[derive(Clone, Debug)]
pub struct PointPattern {
    pub u: FieldVector,
    pub radius: BigRational,
    /// z ∈ Z^N with z + u in the strip and |π(z + u)| ≤ R, sorted lexicographically.
    pub strip_points: Vec<Vec<i64>>,
    /// π(z + u) in coordinates of the E basis columns.
    pub projected_points: Vec<FieldVector>,
    /// Orthonormal coordinates of the projected points, for display only.
    pub rendered: Vec<Vec<f64>>,
}

/// Exact and floating copies of the data used during enumeration.
struct Window {
    data: InternalData,
    zono: Zonotope,
    /// Coordinate map x ↦ a with π(x) = Σ a_c e_c.
    coords: Vec<FieldVector>,
    /// Gram matrix of the E basis, for |π(x)|² = aᵀ G a.
    gram: Vec<FieldVector>,
    coords_f: Vec<Vec<f64>>,
    gram_f: Vec<Vec<f64>>,
    facets_f: Vec<(Vec<f64>, f64, f64)>,
    /// Cholesky factor of the Gram matrix, for rendering.
    chol: Vec<Vec<f64>>,
}

impl Window {
    fn new(s: &ProjectionScheme) -> Result<Self, PatternError> {
        let data = derive_internal(s)?;
        let zono = Zonotope::from_functionals(&data.e_perp, s.n)?;
        let zero = FieldElement::zero(&s.field);
        let cols = s.e_columns();
        let gram: Vec<FieldVector> = cols.iter().map(|a| cols.iter().map(|b| field_dot(a, b)).collect()).collect();
        let ginv = linalg::inverse(&gram, &zero).ok_or_else(|| SchemeError::Invalid("degenerate E basis".into()))?;
        // a = G⁻¹ Eᵀ x
        let coords: Vec<FieldVector> = (0..s.d)
            .map(|c| {
                (0..s.n)
                    .map(|i| (0..s.d).fold(zero.clone(), |acc, b| &acc + &(&ginv[c][b] * &cols[b][i])))
                    .collect()
            })
            .collect();
        let to_f = |m: &[FieldVector]| -> Vec<Vec<f64>> { m.iter().map(|r| r.iter().map(FieldElement::to_f64).collect()).collect() };
        let coords_f = to_f(&coords);
        let gram_f = to_f(&gram);
        let facets_f = zono
            .facets
            .iter()
            .map(|f| (f.normal.iter().map(FieldElement::to_f64).collect(), f.lo.to_f64(), f.hi.to_f64()))
            .collect();
        let chol = cholesky(&gram_f);
        Ok(Window { data, zono, coords, gram, coords_f, gram_f, facets_f, chol })
    }

    fn project(&self, x: &[FieldElement]) -> FieldVector {
        self.coords.iter().map(|r| field_dot(r, x)).collect()
    }

    fn norm2(&self, a: &[FieldElement]) -> FieldElement {
        let ga: FieldVector = self.gram.iter().map(|r| field_dot(r, a)).collect();
        field_dot(a, &ga)
    }

    fn norm2_f(&self, x: &[f64]) -> f64 {
        let a: Vec<f64> = self.coords_f.iter().map(|r| dotf(r, x)).collect();
        let ga: Vec<f64> = self.gram_f.iter().map(|r| dotf(r, &a)).collect();
        dotf(&a, &ga)
    }

    fn render(&self, a: &[FieldElement]) -> Vec<f64> {
        let af: Vec<f64> = a.iter().map(FieldElement::to_f64).collect();
        // Rows of Lᵀ give orthonormal coordinates: |Lᵀ a|² = aᵀ G a.
        (0..af.len()).map(|i| (i..af.len()).map(|j| self.chol[j][i] * af[j]).sum()).collect()
    }
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cholesky(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                l[i][j] = (g[i][i] - s).max(0.0).sqrt();
            } else {
                l[i][j] = (g[i][j] - s) / l[j][j];
            }
        }
    }
    l
}

/// Candidate classification of one integer point.
enum Hit {
    Inside(FieldVector),
    Tight(FieldVector),
}

/// Scans the integer box around the window and keeps the points passing `keep`.
fn scan(
    s: &ProjectionScheme,
    w: &Window,
    u: &[FieldElement],
    radius: &BigRational,
    want_tight_only: bool,
) -> Result<Vec<(Vec<i64>, FieldVector)>, PatternError> {
    if radius.is_negative() {
        return Err(PatternError::NegativeRadius);
    }
    let r = radius.to_f64().unwrap_or(f64::INFINITY);
    let uf: Vec<f64> = u.iter().map(FieldElement::to_f64).collect();
    // |x_i| ≤ |π(x)_i| + |π⊥(x)_i| ≤ R + Σ_j |(π⊥)_ij| for x = z + u in the strip.
    let bounds: Vec<(i64, i64)> = (0..s.n)
        .map(|i| {
            let perp_row: f64 = (0..s.n)
                .map(|j| {
                    let pij = w.data.proj_e[i][j].to_f64();
                    (if i == j { 1.0 - pij } else { -pij }).abs()
                })
                .sum();
            let reach = r + perp_row + 1e-6;
            ((-reach - uf[i]).floor() as i64, (reach - uf[i]).ceil() as i64)
        })
        .collect();
    let total: u128 = bounds.iter().map(|(a, b)| (b - a + 1) as u128).product();
    if total > MAX_CANDIDATES {
        return Err(PatternError::BoxTooLarge(total));
    }
    let r2 = radius * radius;
    let r2f = r * r;
    let tol = 1e-9;
    let first = bounds[0];
    let rest = &bounds[1..];
    let found: Vec<Result<Vec<(Vec<i64>, FieldVector)>, PatternError>> = (first.0..=first.1)
        .into_par_iter()
        .map(|z0| {
            let mut out = Vec::new();
            let mut z: Vec<i64> = std::iter::once(z0).chain(rest.iter().map(|b| b.0)).collect();
            loop {
                if let Some(hit) = test_point(s, w, u, &uf, &z, &r2, r2f, tol)? {
                    match hit {
                        Hit::Inside(a) if !want_tight_only => out.push((z.clone(), a)),
                        Hit::Tight(a) => out.push((z.clone(), a)),
                        Hit::Inside(_) => {}
                    }
                }
                let mut pos = 1;
                loop {
                    if pos == z.len() {
                        return Ok(out);
                    }
                    z[pos] += 1;
                    if z[pos] <= bounds[pos].1 {
                        break;
                    }
                    z[pos] = bounds[pos].0;
                    pos += 1;
                }
            }
        })
        .collect();
    let mut all = Vec::new();
    for part in found {
        all.extend(part?);
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(all)
}

#[allow(clippy::too_many_arguments)]
fn test_point(
    s: &ProjectionScheme,
    w: &Window,
    u: &[FieldElement],
    uf: &[f64],
    z: &[i64],
    r2: &BigRational,
    r2f: f64,
    tol: f64,
) -> Result<Option<Hit>, PatternError> {
    let xf: Vec<f64> = z.iter().zip(uf).map(|(&zi, ui)| zi as f64 + ui).collect();
    let scale = 1.0 + xf.iter().map(|x| x.abs()).sum::<f64>();
    if w.norm2_f(&xf) > r2f + tol * scale * scale {
        return Ok(None);
    }
    for (n, lo, hi) in &w.facets_f {
        let v = dotf(n, &xf);
        if v < lo - tol * scale || v > hi + tol * scale {
            return Ok(None);
        }
    }
    let x: FieldVector = z.iter().zip(u).map(|(&zi, ui)| &FieldElement::from_int(&s.field, zi) + ui).collect();
    let a = w.project(&x);
    let rad = &FieldElement::from_rational(&s.field, r2.clone()) - &w.norm2(&a);
    if rad.sign()? < 0 {
        return Ok(None);
    }
    Ok(match w.zono.locate(&x)? {
        Position::Outside => None,
        Position::Interior => Some(Hit::Inside(a)),
        Position::Boundary(_) => Some(Hit::Tight(a)),
    })
}

/// Strip points z with π⊥(z + u) ∈ K and |π(z + u)| ≤ R, and their projections.
pub fn generate_pattern(s: &ProjectionScheme, u: &[FieldElement], radius: &BigRational) -> Result<PointPattern, PatternError> {
    let w = Window::new(s)?;
    let hits = scan(s, &w, u, radius, false)?;
    let rendered = hits.iter().map(|(_, a)| w.render(a)).collect();
    let (strip_points, projected_points) = hits.into_iter().unzip();
    Ok(PointPattern { u: u.to_vec(), radius: radius.clone(), strip_points, projected_points, rendered })
}

/// Integer points z within radius R whose internal image π⊥(z + u) lies on the window
/// boundary. An empty result only means no witness inside this radius.
pub fn singularity_scan(s: &ProjectionScheme, u: &[FieldElement], radius: &BigRational) -> Result<Vec<Vec<i64>>, PatternError> {
    let w = Window::new(s)?;
    Ok(scan(s, &w, u, radius, true)?.into_iter().map(|(z, _)| z).collect())
}
