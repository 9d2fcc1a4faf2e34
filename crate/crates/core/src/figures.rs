//! Deterministic SVG 1.1 rendering of lattices, axes, cells and boxes in
//! viewing coordinates.
//!
//! All geometry is computed exactly; coordinates are quantized to six
//! decimal places only at output time, so identical scenes always render to
//! byte-identical documents. The optional scale maps `(xi, eta)` to
//! `(a xi, eta / a)` exactly before quantization.

use crate::exactnum::Surd;
use crate::homogeneous::HomForm;
use crate::inhomogeneous::{
    anchors, classify, initial_cell, inner_box, is_divided, step_forward, successors, Cell,
    InhomError, InnerBox, SuccessorKind,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FigureError {
    #[error("scene viewport is empty")]
    EmptyScene,
    #[error("preset data mismatch: {0}")]
    BadPreset(String),
}

/// Palette roles. Colors are fixed; the monochrome flag maps every role to
/// a gray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    Axis,
    Lattice,
    GaussCell,
    NonGaussCell,
    InnerBox,
    Marker,
    Guide,
}

impl Role {
    fn stroke(self, mono: bool) -> &'static str {
        if mono {
            return match self {
                Role::Axis => "#000000",
                Role::Lattice => "#555555",
                Role::GaussCell => "#222222",
                Role::NonGaussCell => "#444444",
                Role::InnerBox => "#666666",
                Role::Marker => "#000000",
                Role::Guide => "#888888",
            };
        }
        match self {
            Role::Axis => "#202124",
            Role::Lattice => "#5f6368",
            Role::GaussCell => "#1a73e8",
            Role::NonGaussCell => "#d93025",
            Role::InnerBox => "#188038",
            Role::Marker => "#202124",
            Role::Guide => "#9334a6",
        }
    }

    fn fill_opacity(self) -> &'static str {
        match self {
            Role::GaussCell | Role::NonGaussCell => "0.10",
            Role::InnerBox => "0.18",
            _ => "1",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum SceneItem {
    /// The two coordinate axes across the viewport.
    Axes,
    /// Point markers, usually lattice points.
    Points { at: Vec<(Surd, Surd)>, role: Role },
    /// A cell polygon through the four vertices.
    CellPolygon { cell: Cell, role: Role },
    /// An axis-aligned rectangle in absolute coordinates.
    BoxRect { rect: InnerBox, role: Role },
    /// A line segment, optionally dashed.
    Segment { from: (Surd, Surd), to: (Surd, Surd), dashed: bool, role: Role },
    Label { at: (Surd, Surd), text: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scene {
    /// xi range and eta range, before scaling.
    pub viewport: ((Surd, Surd), (Surd, Surd)),
    /// Exact scale `a`, applied as `(xi, eta) -> (a xi, eta / a)`.
    pub scale: Surd,
    pub monochrome: bool,
    pub items: Vec<SceneItem>,
}

impl Scene {
    pub fn new(viewport: ((Surd, Surd), (Surd, Surd))) -> Scene {
        Scene { viewport, scale: Surd::one(), monochrome: false, items: Vec::new() }
    }

    /// A viewport containing all listed points, padded by one unit.
    pub fn fit(points: &[(Surd, Surd)]) -> Scene {
        assert!(!points.is_empty());
        let mut xi_lo = points[0].0.clone();
        let mut xi_hi = xi_lo.clone();
        let mut eta_lo = points[0].1.clone();
        let mut eta_hi = eta_lo.clone();
        for (x, y) in points {
            if (x - &xi_lo).signum() < 0 {
                xi_lo = x.clone();
            }
            if (x - &xi_hi).signum() > 0 {
                xi_hi = x.clone();
            }
            if (y - &eta_lo).signum() < 0 {
                eta_lo = y.clone();
            }
            if (y - &eta_hi).signum() > 0 {
                eta_hi = y.clone();
            }
        }
        let pad = Surd::one();
        Scene::new((
            (&xi_lo - &pad, &xi_hi + &pad),
            (&eta_lo - &pad, &eta_hi + &pad),
        ))
    }
}

struct Mapper {
    scale: Surd,
}

impl Mapper {
    fn x(&self, xi: &Surd) -> String {
        (&self.scale * xi).decimal_fixed(6)
    }

    fn y(&self, eta: &Surd) -> String {
        (-&(eta / &self.scale)).decimal_fixed(6)
    }
}

/// Renders a scene to an SVG 1.1 document. Byte-identical output for
/// identical scenes.
pub fn render(scene: &Scene) -> Result<String, FigureError> {
    let ((xi_lo, xi_hi), (eta_lo, eta_hi)) = &scene.viewport;
    if (xi_hi - xi_lo).signum() <= 0 || (eta_hi - eta_lo).signum() <= 0 {
        return Err(FigureError::EmptyScene);
    }
    let m = Mapper { scale: scene.scale.clone() };
    let mono = scene.monochrome;
    let (x0, x1) = (m.x(xi_lo), m.x(xi_hi));
    let (y0, y1) = (m.y(eta_hi), m.y(eta_lo)); // eta flips
    let width = (&scene.scale * &(xi_hi - xi_lo)).decimal_fixed(6);
    let height = (&(eta_hi - eta_lo) / &scene.scale).decimal_fixed(6);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        x0, y0, width, height
    ));
    for item in &scene.items {
        match item {
            SceneItem::Axes => {
                let zero = Surd::zero();
                out.push_str(&format!(
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"0.02\"/>\n",
                    x0,
                    m.y(&zero),
                    x1,
                    m.y(&zero),
                    Role::Axis.stroke(mono)
                ));
                out.push_str(&format!(
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"0.02\"/>\n",
                    m.x(&zero),
                    y0,
                    m.x(&zero),
                    y1,
                    Role::Axis.stroke(mono)
                ));
            }
            SceneItem::Points { at, role } => {
                for (xi, eta) in at {
                    out.push_str(&format!(
                        "  <circle cx=\"{}\" cy=\"{}\" r=\"0.055\" fill=\"{}\"/>\n",
                        m.x(xi),
                        m.y(eta),
                        role.stroke(mono)
                    ));
                }
            }
            SceneItem::CellPolygon { cell, role } => {
                let [v00, v10, v01, v11] = cell.vertices();
                let pts = [v00, v10, v11, v01]; // boundary order
                let coords: Vec<String> =
                    pts.iter().map(|(x, y)| format!("{},{}", m.x(x), m.y(y))).collect();
                out.push_str(&format!(
                    "  <polygon points=\"{}\" fill=\"{}\" fill-opacity=\"{}\" stroke=\"{}\" stroke-width=\"0.03\"/>\n",
                    coords.join(" "),
                    role.stroke(mono),
                    role.fill_opacity(),
                    role.stroke(mono)
                ));
            }
            SceneItem::BoxRect { rect, role } => {
                let w = rect.width();
                let h = rect.height();
                out.push_str(&format!(
                    "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"{}\" stroke=\"{}\" stroke-width=\"0.025\"/>\n",
                    m.x(&rect.xi_lo),
                    m.y(&rect.eta_hi),
                    (&self_scale(&m, &w)).decimal_fixed(6),
                    (&h / &m.scale).decimal_fixed(6),
                    role.stroke(mono),
                    role.fill_opacity(),
                    role.stroke(mono)
                ));
            }
            SceneItem::Segment { from, to, dashed, role } => {
                let dash = if *dashed { " stroke-dasharray=\"0.14 0.1\"" } else { "" };
                out.push_str(&format!(
                    "  <path d=\"M {} {} L {} {}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.03\"{}/>\n",
                    m.x(&from.0),
                    m.y(&from.1),
                    m.x(&to.0),
                    m.y(&to.1),
                    role.stroke(mono),
                    dash
                ));
            }
            SceneItem::Label { at, text } => {
                out.push_str(&format!(
                    "  <text x=\"{}\" y=\"{}\" font-size=\"0.25\" fill=\"{}\">{}</text>\n",
                    m.x(&at.0),
                    m.y(&at.1),
                    Role::Marker.stroke(mono),
                    xml_escape(text)
                ));
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn self_scale(m: &Mapper, w: &Surd) -> Surd {
    &m.scale * w
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PresetKind {
    Hom,
    Inhom,
    CellBox,
    Successors,
    AllBoxes,
    Superfluous,
    ThreeBox,
}

impl PresetKind {
    pub fn parse(name: &str) -> Option<PresetKind> {
        Some(match name {
            "hom" => PresetKind::Hom,
            "inhom" => PresetKind::Inhom,
            "cell_box" => PresetKind::CellBox,
            "successors" => PresetKind::Successors,
            "all_boxes" => PresetKind::AllBoxes,
            "superfluous" => PresetKind::Superfluous,
            "three_box" => PresetKind::ThreeBox,
            _ => return None,
        })
    }
}

/// Data accepted by the presets: a factored form or a cell / problem
/// matrix.
#[derive(Debug, Clone)]
pub enum PresetData {
    Form(HomForm),
    Cell(Cell),
}

fn lattice_points(cell: &Cell, radius: i64) -> Vec<(Surd, Surd)> {
    let mut pts = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            pts.push(cell.viewing(&BigInt::from(x), &BigInt::from(y)));
        }
    }
    pts
}

fn require_cell(data: &PresetData) -> Result<Cell, FigureError> {
    match data {
        PresetData::Cell(c) => Ok(c.clone()),
        PresetData::Form(f) => {
            let (g1, g2) = f.columns();
            Cell::new(g1, g2, (Surd::zero(), Surd::zero()))
                .map_err(|e| FigureError::BadPreset(e.to_string()))
        }
    }
}

fn cell_scene(items: Vec<SceneItem>, anchor_pts: &[(Surd, Surd)]) -> Scene {
    let mut scene = Scene::fit(anchor_pts);
    scene.items = items;
    scene
}

fn cell_role(cell: &Cell) -> Role {
    if classify(cell).gaussian {
        Role::GaussCell
    } else {
        Role::NonGaussCell
    }
}

fn bad(e: InhomError) -> FigureError {
    FigureError::BadPreset(e.to_string())
}

/// Builds the scenes of a named preset. Most presets produce one scene;
/// `successors` and `all_boxes` produce one scene per successor shape.
pub fn preset(kind: PresetKind, data: &PresetData) -> Result<Vec<Scene>, FigureError> {
    match kind {
        PresetKind::Hom => {
            let form = match data {
                PresetData::Form(f) => f.clone(),
                PresetData::Cell(c) => c.linear_part(),
            };
            let (g1, g2) = form.columns();
            let cell = Cell::new(g1, g2, (Surd::zero(), Surd::zero()))
                .map_err(|e| FigureError::BadPreset(e.to_string()))?;
            let pts = lattice_points(&cell, 3);
            let items = vec![
                SceneItem::Axes,
                SceneItem::CellPolygon { cell: cell.clone(), role: Role::GaussCell },
                SceneItem::Points { at: pts.clone(), role: Role::Lattice },
            ];
            Ok(vec![cell_scene(items, &pts)])
        }
        PresetKind::Inhom => {
            let problem = require_cell(data)?;
            let init = initial_cell(&problem).map_err(bad)?;
            let pts = lattice_points(&problem, 3);
            let items = vec![
                SceneItem::Axes,
                SceneItem::CellPolygon {
                    cell: init.dc.cell().clone(),
                    role: cell_role(init.dc.cell()),
                },
                SceneItem::Points { at: pts.clone(), role: Role::Lattice },
            ];
            Ok(vec![cell_scene(items, &pts)])
        }
        PresetKind::CellBox => {
            let cell = require_cell(data)?.normalize();
            let boxy = inner_box(&cell).map_err(bad)?.absolute(&cell);
            let verts: Vec<_> = cell.vertices().into();
            let items = vec![
                SceneItem::Axes,
                SceneItem::CellPolygon { cell: cell.clone(), role: cell_role(&cell) },
                SceneItem::BoxRect { rect: boxy, role: Role::InnerBox },
                SceneItem::Points { at: verts.clone(), role: Role::Marker },
            ];
            Ok(vec![cell_scene(items, &verts)])
        }
        PresetKind::Successors => {
            let cell = require_cell(data)?;
            let dc = is_divided(&cell)
                .ok_or_else(|| FigureError::BadPreset("cell is not divided".into()))?;
            let (actual, _) = step_forward(&dc).map_err(bad)?;
            let succ = successors(dc.cell()).map_err(bad)?;
            let parent_box = inner_box(dc.cell()).map_err(bad)?.absolute(dc.cell());
            let mut scenes = Vec::new();
            for want in [SuccessorKind::G, SuccessorKind::N] {
                let Some(repr) = succ.iter().find(|s| s.kind == want) else { continue };
                // Place the representative relative to the true parent
                // anchor rather than the base-at-zero frame.
                let shift = dc.cell().c();
                let cellr = Cell::new(
                    repr.cell.g1().clone(),
                    repr.cell.g2().clone(),
                    (&repr.cell.c().0 + &shift.0, &repr.cell.c().1 + &shift.1),
                )
                .map_err(|e| FigureError::BadPreset(e.to_string()))?;
                let sbox = inner_box(&cellr).map_err(bad)?.absolute(&cellr);
                let mut pts: Vec<_> = dc.cell().vertices().into();
                pts.extend(cellr.vertices());
                let items = vec![
                    SceneItem::Axes,
                    SceneItem::CellPolygon { cell: dc.cell().clone(), role: cell_role(dc.cell()) },
                    SceneItem::BoxRect { rect: parent_box.clone(), role: Role::InnerBox },
                    SceneItem::CellPolygon { cell: cellr.clone(), role: cell_role(&cellr) },
                    SceneItem::BoxRect { rect: sbox, role: Role::InnerBox },
                    SceneItem::Points { at: pts.clone(), role: Role::Lattice },
                ];
                scenes.push(cell_scene(items, &pts));
            }
            let _ = actual;
            Ok(scenes)
        }
        PresetKind::AllBoxes => {
            let cell = require_cell(data)?.normalize();
            let succ = successors(&cell).map_err(bad)?;
            let mut scenes = Vec::new();
            for want in [SuccessorKind::G, SuccessorKind::N] {
                let group: Vec<_> = succ.iter().filter(|s| s.kind == want).collect();
                if group.is_empty() {
                    continue;
                }
                let mut items = vec![SceneItem::Axes];
                let mut pts = Vec::new();
                for s in &group {
                    items.push(SceneItem::BoxRect { rect: s.box_abs.clone(), role: Role::InnerBox });
                    // Vertices only; the cells themselves are not drawn.
                    let verts: Vec<_> = s.cell.vertices().into();
                    pts.extend(verts.clone());
                    items.push(SceneItem::Points { at: verts, role: Role::Marker });
                }
                scenes.push(cell_scene(items, &pts));
            }
            Ok(scenes)
        }
        PresetKind::Superfluous => {
            let cell = require_cell(data)?;
            let dc = is_divided(&cell)
                .ok_or_else(|| FigureError::BadPreset("cell is not divided".into()))?;
            let sup = if classify(dc.cell()).superfluous {
                dc
            } else {
                let (next, _) = step_forward(&dc).map_err(bad)?;
                if !classify(next.cell()).superfluous {
                    return Err(FigureError::BadPreset(
                        "cell is not superfluous and has no superfluous successor".into(),
                    ));
                }
                next
            };
            let run = anchors(&sup).map_err(bad)?;
            let shared_box = inner_box(run.run[0].cell())
                .map_err(bad)?
                .absolute(run.run[0].cell());
            let mut items = vec![SceneItem::Axes];
            let mut pts = Vec::new();
            for dc in &run.run {
                items.push(SceneItem::CellPolygon {
                    cell: dc.cell().clone(),
                    role: cell_role(dc.cell()),
                });
                pts.extend::<Vec<_>>(dc.cell().vertices().into());
            }
            items.push(SceneItem::BoxRect { rect: shared_box, role: Role::InnerBox });
            Ok(vec![cell_scene(items, &pts)])
        }
        PresetKind::ThreeBox => {
            let cell = require_cell(data)?.normalize();
            let class = classify(&cell);
            if !class.gaussian {
                return Err(FigureError::BadPreset("three_box needs a Gaussian cell".into()));
            }
            let (n1, n2) = crate::inhomogeneous::neighbors(&cell).map_err(bad)?;
            let own = inner_box(&cell).map_err(bad)?.absolute(&cell);
            let b1 = inner_box(&n1).map_err(bad)?.absolute(&n1);
            let b2 = inner_box(&n2).map_err(bad)?.absolute(&n2);
            let verts = cell.vertices();
            let mut pts: Vec<_> = verts.clone().into();
            pts.extend(n1.vertices());
            pts.extend(n2.vertices());
            let items = vec![
                SceneItem::Axes,
                SceneItem::CellPolygon { cell: cell.clone(), role: Role::GaussCell },
                SceneItem::BoxRect { rect: own, role: Role::InnerBox },
                SceneItem::BoxRect { rect: b1, role: Role::InnerBox },
                SceneItem::BoxRect { rect: b2, role: Role::InnerBox },
                // Dissection guide: the anti-diagonal of the cell.
                SceneItem::Segment {
                    from: verts[1].clone(),
                    to: verts[2].clone(),
                    dashed: true,
                    role: Role::Guide,
                },
                SceneItem::Points { at: pts.clone(), role: Role::Lattice },
            ];
            Ok(vec![cell_scene(items, &pts)])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::homogeneous::HomForm;

    fn s(text: &str) -> Surd {
        text.parse().unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn fig2_problem() -> Cell {
        Cell::new(
            (s("1"), s("1")),
            (s("sqrt(3)"), s("-sqrt(3)")),
            (s("-1-1/2*sqrt(3)"), s("-1+1/2*sqrt(3)")),
        )
        .unwrap()
    }

    #[test]
    fn hom_preset_structure() {
        let f = HomForm::from_coefficients(&rat(1), &rat(0), &rat(-3)).unwrap();
        let scenes = preset(PresetKind::Hom, &PresetData::Form(f)).unwrap();
        assert_eq!(scenes.len(), 1);
        let svg = render(&scenes[0]).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.matches("<circle").count() >= 49);
        assert!(svg.starts_with("<?xml"));
    }

    #[test]
    fn three_box_preset_structure() {
        let g = Cell::new(
            (s("1+sqrt(3)"), s("1-sqrt(3)")),
            (s("1"), s("1")),
            (Surd::zero(), Surd::zero()),
        )
        .unwrap();
        let scenes = preset(PresetKind::ThreeBox, &PresetData::Cell(g)).unwrap();
        let svg = render(&scenes[0]).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<rect").count(), 3);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
    }

    #[test]
    fn successors_preset_has_two_scenes() {
        let base = Cell::new(
            (s("2+sqrt(5)"), s("1/2-1/2*sqrt(5)")),
            (s("1"), s("1")),
            (s("-2"), s("-1/4")),
        )
        .unwrap();
        assert!(is_divided(&base).is_some());
        let scenes = preset(PresetKind::Successors, &PresetData::Cell(base.clone())).unwrap();
        assert_eq!(scenes.len(), 2, "one scene per successor shape");
        let all = preset(PresetKind::AllBoxes, &PresetData::Cell(base)).unwrap();
        assert_eq!(all.len(), 2);
        // Boxes only: no cell polygons in the all_boxes scenes.
        for sc in &all {
            let svg = render(sc).unwrap();
            assert_eq!(svg.matches("<polygon").count(), 0);
            assert!(svg.matches("<rect").count() >= 1);
        }
    }

    #[test]
    fn rendering_is_deterministic() {
        let scenes = preset(PresetKind::Inhom, &PresetData::Cell(fig2_problem())).unwrap();
        let a = render(&scenes[0]).unwrap();
        let b = render(&scenes[0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_viewport_is_rejected() {
        let scene = Scene::new(((Surd::zero(), Surd::zero()), (Surd::zero(), Surd::one())));
        assert_eq!(render(&scene).unwrap_err(), FigureError::EmptyScene);
    }

    #[test]
    fn axes_only_scene_is_valid() {
        let mut scene = Scene::new((
            (Surd::from_int(-2), Surd::from_int(2)),
            (Surd::from_int(-2), Surd::from_int(2)),
        ));
        scene.items.push(SceneItem::Axes);
        let svg = render(&scene).unwrap();
        assert!(svg.contains("<line"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn scale_applies_exactly_before_quantization() {
        let mut scene = Scene::new((
            (Surd::from_int(-2), Surd::from_int(2)),
            (Surd::from_int(-2), Surd::from_int(2)),
        ));
        scene.scale = s("sqrt(2)");
        scene.items.push(SceneItem::Points { at: vec![(s("sqrt(2)"), s("sqrt(2)"))], role: Role::Marker });
        let svg = render(&scene).unwrap();
        // x = sqrt(2) * sqrt(2) = 2 exactly; y = -(sqrt(2)/sqrt(2)) = -1.
        assert!(svg.contains("cx=\"2.000000\""));
        assert!(svg.contains("cy=\"-1.000000\""));
    }

    #[test]
    fn divided_cell_polygons_stay_divided() {
        let scenes = preset(PresetKind::Inhom, &PresetData::Cell(fig2_problem())).unwrap();
        for item in &scenes[0].items {
            if let SceneItem::CellPolygon { cell, .. } = item {
                assert!(is_divided(cell).is_some());
            }
        }
    }

    #[test]
    fn monochrome_palette_switch() {
        let mut scenes = preset(PresetKind::Inhom, &PresetData::Cell(fig2_problem())).unwrap();
        let color = render(&scenes[0]).unwrap();
        scenes[0].monochrome = true;
        let mono = render(&scenes[0]).unwrap();
        assert_ne!(color, mono);
        assert!(!mono.contains("#1a73e8"));
    }
}
