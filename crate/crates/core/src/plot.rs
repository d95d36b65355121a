//! SVG cross-sections of cones in `R^3` modulo constants.
//!
//! Points are read in the exact coordinates `(x1 - x3, x2 - x3)`, clipped
//! to a Hilbert ball, and drawn on the plane orthogonal to `(1,1,1)`.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::alcoved::AlcovedPoly;
use crate::error::{Error, Result};
use crate::io::Document;
use crate::retract::{AmbiCone, GeneratorSet, Retraction, Side};
use crate::scalar::{int, rat_to_f64, ratio, Ext, Rat};
use crate::tropical::{hilbert_seminorm, TropMat, TropVec};

const MAX_CONE: &str = "#3b6fb6";
const MIN_CONE: &str = "#c8553d";
const AMBI: &str = "#2e8b57";
const GENERATOR: &str = "#222222";

#[derive(Clone, Debug)]
pub struct PlotOptions {
    /// Hilbert radius of the clipping region; defaults to 1.5 times the
    /// largest generator seminorm (at least 1.5).
    pub radius: Option<Rat>,
    pub size: u32,
    /// Grid resolution per axis for sampled cones.
    pub grid: usize,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { radius: None, size: 480, grid: 48 }
    }
}

/// `(x1 - x3, x2 - x3)`.
type Planar = (Rat, Rat);

fn planar(x: &[Rat]) -> Planar {
    (&x[0] - &x[2], &x[1] - &x[2])
}

fn coord(p: &Planar, i: usize) -> Rat {
    match i {
        0 => p.0.clone(),
        1 => p.1.clone(),
        _ => Rat::zero(),
    }
}

/// Vertices of `{y : y_i - y_j ≥ c_ij}` with `y = (a, b, 0)`, in
/// counterclockwise order.
fn polygon(c: &[[Option<Rat>; 3]; 3]) -> Vec<Planar> {
    let mut lines: Vec<(Rat, Rat, Rat)> = Vec::new();
    for (i, row) in c.iter().enumerate() {
        for (j, cij) in row.iter().enumerate() {
            if let Some(cij) = cij {
                let alpha = int(i64::from(i == 0) - i64::from(j == 0));
                let beta = int(i64::from(i == 1) - i64::from(j == 1));
                lines.push((alpha, beta, cij.clone()));
            }
        }
    }
    let feasible = |p: &Planar| {
        (0..3).all(|i| (0..3).all(|j| c[i][j].as_ref().map_or(true, |cij| coord(p, i) - coord(p, j) >= *cij)))
    };
    let mut pts: Vec<Planar> = Vec::new();
    for (k, (a1, b1, c1)) in lines.iter().enumerate() {
        for (a2, b2, c2) in &lines[k + 1..] {
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let p = ((c1 * b2 - c2 * b1) / &det, (a1 * c2 - a2 * c1) / &det);
            if feasible(&p) && !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    if pts.len() > 2 {
        let n = pts.len() as f64;
        let cx = pts.iter().map(|p| rat_to_f64(&p.0)).sum::<f64>() / n;
        let cy = pts.iter().map(|p| rat_to_f64(&p.1)).sum::<f64>() / n;
        let angle = |p: &Planar| (rat_to_f64(&p.1) - cy).atan2(rat_to_f64(&p.0) - cx);
        pts.sort_by(|p, q| angle(p).total_cmp(&angle(q)).then_with(|| p.cmp(q)));
    } else {
        pts.sort();
    }
    pts
}

/// Cross-section of an alcoved polyhedron of `R^3` within the Hilbert ball of radius `r`.
pub fn section(poly: &AlcovedPoly, r: &Rat) -> Vec<Planar> {
    let s = poly.star();
    let mut c: [[Option<Rat>; 3]; 3] = Default::default();
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cij) in row.iter_mut().enumerate() {
            if i != j {
                let bound = -r.clone();
                *cij = Some(match s.get(i, j).finite() {
                    Some(m) if *m > bound => m.clone(),
                    _ => bound,
                });
            }
        }
    }
    polygon(&c)
}

struct Canvas {
    size: f64,
    scale: f64,
    body: String,
}

fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

impl Canvas {
    fn new(size: u32, radius: &Rat) -> Self {
        let r = rat_to_f64(radius).max(1e-9);
        let size = f64::from(size);
        Canvas { size, scale: (size / 2.0 - 12.0) / (r * (2.0f64 / 3.0).sqrt()), body: String::new() }
    }

    /// Isometric projection of `(a, b, 0)` modulo constants.
    fn project(&self, p: &Planar) -> (String, String) {
        let (a, b) = (rat_to_f64(&p.0), rat_to_f64(&p.1));
        let m = (a + b) / 3.0;
        let (v1, v2, v3) = (a - m, b - m, -m);
        let u1 = (v1 - v2) / 2f64.sqrt();
        let u2 = (v1 + v2 - 2.0 * v3) / 6f64.sqrt();
        (fmt6(self.size / 2.0 + self.scale * u1), fmt6(self.size / 2.0 - self.scale * u2))
    }

    fn shape(&mut self, pts: &[Planar], color: &str, kind: &str) {
        match pts.len() {
            0 => {}
            1 => self.dot(&pts[0], color, kind, 3.0),
            2 => {
                let (x1, y1) = self.project(&pts[0]);
                let (x2, y2) = self.project(&pts[1]);
                let _ = writeln!(
                    self.body,
                    r#"<line class="{kind}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="2"/>"#
                );
            }
            _ => {
                let coords: Vec<String> = pts
                    .iter()
                    .map(|p| {
                        let (x, y) = self.project(p);
                        format!("{x},{y}")
                    })
                    .collect();
                let _ = writeln!(
                    self.body,
                    r#"<polygon class="{kind}" points="{}" fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="1"/>"#,
                    coords.join(" ")
                );
            }
        }
    }

    fn dot(&mut self, p: &Planar, color: &str, kind: &str, r: f64) {
        let (x, y) = self.project(p);
        let _ = writeln!(self.body, r#"<circle class="{kind}" cx="{x}" cy="{y}" r="{}" fill="{color}"/>"#, fmt6(r));
    }

    fn finish(self, title: &str) -> String {
        let size = fmt6(self.size);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(out, "<title>{title}</title>");
        let _ = writeln!(out, r##"<rect width="{size}" height="{size}" fill="#ffffff"/>"##);
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn finite_seminorms(gens: &[TropVec]) -> Rat {
    gens.iter().filter_map(TropVec::to_point).map(|p| hilbert_seminorm(&p)).max().unwrap_or_else(Rat::zero)
}

fn default_radius(seminorm: Rat) -> Rat {
    let r = seminorm * ratio(3, 2);
    if r < ratio(3, 2) {
        ratio(3, 2)
    } else {
        r
    }
}

fn require_three(n: usize) -> Result<()> {
    if n == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// Exact polygons for alcoved cells, drawn larger cells first.
fn plot_cells(cells: &[(AlcovedPoly, usize)], opts: &PlotOptions, title: &str) -> String {
    let gens: Vec<TropVec> = cells.iter().flat_map(|(p, _)| p.generators()).collect();
    let radius = opts.radius.clone().unwrap_or_else(|| default_radius(finite_seminorms(&gens)));
    let mut canvas = Canvas::new(opts.size, &radius);
    let mut order: Vec<&(AlcovedPoly, usize)> = cells.iter().collect();
    order.sort_by(|a, b| b.1.cmp(&a.1));
    for (poly, dim) in order {
        canvas.shape(&section(poly, &radius), AMBI, &format!("ambitropical dim{dim}"));
    }
    canvas.finish(title)
}

/// Points of the Hilbert ball sampled on a grid in `(x1 - x3, x2 - x3)`.
fn grid_points(radius: &Rat, steps: usize) -> Vec<Vec<Rat>> {
    let steps = steps.max(1) as i64;
    let mut out = Vec::new();
    for a in -steps..=steps {
        for b in -steps..=steps {
            let p = vec![ratio(a, steps) * radius, ratio(b, steps) * radius, Rat::zero()];
            if hilbert_seminorm(&p) <= *radius {
                out.push(p);
            }
        }
    }
    out
}

/// Images of a grid under `P^max`, `P^min` and the cone's retraction.
fn plot_cone(cone: &AmbiCone, opts: &PlotOptions, title: &str) -> Result<String> {
    let gens = &cone.gens;
    let seminorm = finite_seminorms(gens.max_gens()).max(finite_seminorms(gens.min_gens()));
    let radius = opts.radius.clone().unwrap_or_else(|| default_radius(seminorm));
    let grid = grid_points(&radius, opts.grid);
    let mut canvas = Canvas::new(opts.size, &radius);
    let layers: [(&str, &str, Box<dyn Fn(&[Rat]) -> Result<Vec<Rat>>>); 3] = [
        ("max-cone", MAX_CONE, Box::new(|x| gens.p_max(x))),
        ("min-cone", MIN_CONE, Box::new(|x| gens.p_min(x))),
        ("ambitropical", AMBI, Box::new(|x| cone.retract(x))),
    ];
    for (kind, color, map) in layers {
        let mut seen: Vec<Planar> = Vec::new();
        for p in &grid {
            let q = planar(&map(p)?);
            if hilbert_seminorm(&[q.0.clone(), q.1.clone(), Rat::zero()]) <= radius && !seen.contains(&q) {
                seen.push(q);
            }
        }
        seen.sort();
        for q in &seen {
            canvas.dot(q, color, kind, 1.5);
        }
    }
    for g in gens.max_gens().iter().chain(gens.min_gens()) {
        if let Some(p) = g.to_point() {
            canvas.dot(&planar(&p), GENERATOR, "generator", 3.5);
        }
    }
    Ok(canvas.finish(title))
}

/// Renders a document describing a subset of `R^3`.
pub fn plot_document(doc: &Document, opts: &PlotOptions) -> Result<String> {
    match doc {
        Document::Alcoved(d) => {
            let poly = AlcovedPoly::new(d.m.clone())?;
            require_three(poly.dim())?;
            let dim = poly.dimension();
            Ok(plot_cells(&[(poly, dim)], opts, "alcoved"))
        }
        Document::Complex(cx) => {
            require_three(cx.n)?;
            let cells = cx
                .cells
                .iter()
                .map(|c| Ok((AlcovedPoly::new(c.star.clone())?, c.dimension)))
                .collect::<Result<Vec<_>>>()?;
            Ok(plot_cells(&cells, opts, "complex"))
        }
        Document::Generators(g) => {
            require_three(g.dim())?;
            plot_cone(&AmbiCone::new(g.clone()), opts, "generators")
        }
        Document::Points(p) => {
            let pts = p.points.iter().map(crate::io::finite_point).collect::<Result<Vec<_>>>()?;
            let gens = GeneratorSet::from_points(&pts)?;
            require_three(gens.dim())?;
            plot_cone(&AmbiCone { gens, side: Side::Plus }, opts, "hull")
        }
        other => Err(Error::Parse(format!("cannot plot a {} document", other.kind()))),
    }
}

/// Lower-left corner helper for tests: the section of `R^3` itself is the full hexagon.
pub fn hexagon(r: &Rat) -> Vec<Planar> {
    section(&AlcovedPoly::new(TropMat::filled(3, 3, Ext::NegInf)).expect("nonempty"), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::Signed;

    #[test]
    fn full_space_section_is_a_hexagon() {
        assert_eq!(hexagon(&int(1)).len(), 6);
    }

    #[test]
    fn butterfly_wings_are_triangles() {
        let [e1, e2] = fixtures::butterfly_wings();
        let t1 = section(&e1, &int(2));
        let t2 = section(&e2, &int(2));
        assert_eq!(t1.len(), 3);
        assert_eq!(t2.len(), 3);
        let shared: Vec<&Planar> = t1.iter().filter(|p| t2.contains(p)).collect();
        assert_eq!(shared, vec![&(Rat::zero(), Rat::zero())]);
    }

    #[test]
    fn lines_and_points() {
        let line = AlcovedPoly::order(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(section(&line, &int(1)).len(), 1);
        let edge = AlcovedPoly::order(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(section(&edge, &int(1)).len(), 2);
        assert!(section(&edge, &int(1)).iter().all(|p| p.0 == p.1 && p.0.abs() <= int(1)));
    }

    #[test]
    fn plotting_requires_three_coordinates() {
        let doc = Document::Generators(GeneratorSet::from_points(&[vec![int(0), int(1)]]).unwrap());
        assert_eq!(plot_document(&doc, &PlotOptions::default()), Err(Error::UnsupportedDimension(2)));
    }

    #[test]
    fn single_point_hull_is_a_dot() {
        let doc = crate::io::parse_document("[[1,2,3]]").unwrap();
        let svg = plot_document(&doc, &PlotOptions::default()).unwrap();
        assert_eq!(svg.matches(r#"class="ambitropical""#).count(), 1);
        assert_eq!(svg, plot_document(&doc, &PlotOptions::default()).unwrap());
    }
}
