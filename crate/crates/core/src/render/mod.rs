//! Chart rendering: one native raster painter covering all nine chart
//! families, with randomized styling from bundled catalogs, per-element
//! bounding boxes, and referring-marker overlays.

pub mod canvas;
mod charts;
mod font;

pub use canvas::{Color, Rect};

use crate::table::DataTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("chart type incompatible with table: {0}")]
    IncompatibleChartType(String),
    #[error("canvas {0}x{1} below the {MIN_CANVAS} pixel minimum")]
    CanvasTooSmall(u32, u32),
    #[error("mark targets unknown element (series {series}, category {category})")]
    UnknownTarget { series: usize, category: usize },
    #[error("image payload unreadable: {0}")]
    BadImage(String),
}

pub const MIN_CANVAS: u32 = 160;

/// The nine chart families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChartType {
    Bar,
    Line,
    DotLine,
    Pie,
    Area,
    Histogram,
    Radar,
    Bubble,
    Box,
}

impl ChartType {
    pub const ALL: [ChartType; 9] = [
        ChartType::Bar,
        ChartType::Line,
        ChartType::DotLine,
        ChartType::Pie,
        ChartType::Area,
        ChartType::Histogram,
        ChartType::Radar,
        ChartType::Bubble,
        ChartType::Box,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ChartType::Bar => "bar",
            ChartType::Line => "line",
            ChartType::DotLine => "dot-line",
            ChartType::Pie => "pie",
            ChartType::Area => "area",
            ChartType::Histogram => "histogram",
            ChartType::Radar => "radar",
            ChartType::Bubble => "bubble",
            ChartType::Box => "box",
        }
    }

    pub fn from_name(name: &str) -> Option<ChartType> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    /// Checks the structural invariants a table must satisfy for this
    /// chart family.
    pub fn check_table(&self, table: &DataTable) -> Result<(), RenderError> {
        let fail = |msg: String| Err(RenderError::IncompatibleChartType(msg));
        let numeric = table.all_numeric();
        match self {
            ChartType::Bar | ChartType::Line | ChartType::DotLine | ChartType::Area => {
                if !numeric {
                    return fail(format!("{} charts need an all-numeric table", self.name()));
                }
            }
            ChartType::Pie => {
                if table.cols() != 1 || !numeric {
                    return fail("pie charts need a single numeric column".into());
                }
                if table.column_numbers(0).unwrap().iter().any(|v| *v <= 0.0) {
                    return fail("pie values must be strictly positive".into());
                }
            }
            ChartType::Histogram => {
                if table.cols() != 1 || !numeric {
                    return fail("histograms need a single numeric frequency column".into());
                }
                if table.column_numbers(0).unwrap().iter().any(|v| *v < 0.0) {
                    return fail("histogram frequencies must be non-negative".into());
                }
                if table.row_labels().iter().any(|l| parse_bin_interval(l).is_none()) {
                    return fail("histogram rows must be \"[lo, hi)\" bin intervals".into());
                }
            }
            ChartType::Radar => {
                if !numeric {
                    return fail("radar charts need an all-numeric table".into());
                }
                if !(3..=12).contains(&table.rows()) {
                    return fail(format!(
                        "radar charts need 3-12 axes, table has {}",
                        table.rows()
                    ));
                }
            }
            ChartType::Bubble => {
                if table.cols() != 3 || !numeric {
                    return fail("bubble charts need exactly three numeric columns".into());
                }
                if table.column_numbers(2).unwrap().iter().any(|v| *v <= 0.0) {
                    return fail("bubble sizes must be strictly positive".into());
                }
            }
            ChartType::Box => {
                if table.cols() != 5 || !numeric {
                    return fail("box plots need five numeric statistic columns".into());
                }
                for r in 0..table.rows() {
                    let v = table.row_numbers(r).unwrap();
                    if !v.windows(2).all(|w| w[0] <= w[1]) {
                        return fail(format!("box row {r} statistics are not ordered"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses a histogram bin label of the form "[lo, hi)" or "[lo, hi]".
pub fn parse_bin_interval(label: &str) -> Option<(f64, f64)> {
    use crate::table::numfmt::parse_number;
    let inner = label.strip_prefix('[')?;
    let inner = inner.strip_suffix(')').or_else(|| inner.strip_suffix(']'))?;
    let (a, b) = inner.split_once(',')?;
    Some((parse_number(a)?, parse_number(b)?))
}

// --- style catalogs ---

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
    DashDot,
}

impl LineStyle {
    pub const ALL: [LineStyle; 4] =
        [LineStyle::Solid, LineStyle::Dashed, LineStyle::Dotted, LineStyle::DashDot];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkerShape {
    Circle,
    Square,
    Triangle,
    Diamond,
    Cross,
}

impl MarkerShape {
    pub const ALL: [MarkerShape; 5] = [
        MarkerShape::Circle,
        MarkerShape::Square,
        MarkerShape::Triangle,
        MarkerShape::Diamond,
        MarkerShape::Cross,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LegendPos {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl LegendPos {
    pub const ALL: [LegendPos; 4] =
        [LegendPos::TopLeft, LegendPos::TopRight, LegendPos::BottomLeft, LegendPos::BottomRight];
}

pub const PALETTES: [[Color; 6]; 8] = [
    [[76, 114, 176], [221, 132, 82], [85, 168, 104], [196, 78, 82], [129, 114, 179], [147, 120, 96]],
    [[2, 62, 255], [255, 124, 0], [26, 201, 56], [232, 0, 11], [139, 43, 226], [159, 72, 0]],
    [[72, 120, 208], [238, 133, 74], [106, 204, 100], [214, 95, 95], [149, 108, 180], [140, 97, 60]],
    [[60, 115, 180], [255, 140, 60], [90, 180, 100], [230, 110, 120], [160, 130, 220], [180, 150, 100]],
    [[0, 28, 127], [177, 64, 13], [18, 113, 28], [140, 8, 0], [89, 30, 113], [89, 47, 13]],
    [[1, 115, 178], [222, 143, 5], [2, 158, 115], [213, 94, 0], [204, 120, 188], [202, 145, 97]],
    [[68, 1, 84], [65, 68, 135], [42, 120, 142], [34, 168, 132], [122, 209, 81], [230, 210, 50]],
    [[228, 26, 28], [55, 126, 184], [77, 175, 74], [152, 78, 163], [255, 127, 0], [166, 86, 40]],
];

pub const BACKGROUNDS: [Color; 4] =
    [[255, 255, 255], [240, 240, 240], [255, 248, 231], [238, 243, 251]];

pub const BAR_WIDTH_FACTORS: [f64; 3] = [0.5, 0.7, 0.9];

pub const FONT_COUNT: u8 = 3;

/// Randomized styling drawn from the bundled catalogs (33 parameter
/// variations across eight axes).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StyleSpec {
    pub palette: u8,
    pub font: u8,
    pub line_style: LineStyle,
    pub marker: MarkerShape,
    pub legend_pos: LegendPos,
    pub background: u8,
    pub bar_width: f64,
    pub grid: bool,
    pub seed: u64,
}

impl StyleSpec {
    /// Font scale and boldness for the catalog font id.
    pub(crate) fn font_params(&self) -> (u32, bool) {
        match self.font % FONT_COUNT {
            0 => (1, false),
            1 => (1, true),
            _ => (2, false),
        }
    }

    pub(crate) fn palette_colors(&self) -> &'static [Color; 6] {
        &PALETTES[self.palette as usize % PALETTES.len()]
    }

    pub(crate) fn background_color(&self) -> Color {
        BACKGROUNDS[self.background as usize % BACKGROUNDS.len()]
    }
}

/// Uniform draw over the style catalogs, deterministic per seed.
pub fn style_sample(seed: u64) -> StyleSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    StyleSpec {
        palette: rng.gen_range(0..PALETTES.len() as u8),
        font: rng.gen_range(0..FONT_COUNT),
        line_style: LineStyle::ALL[rng.gen_range(0..LineStyle::ALL.len())],
        marker: MarkerShape::ALL[rng.gen_range(0..MarkerShape::ALL.len())],
        legend_pos: LegendPos::ALL[rng.gen_range(0..LegendPos::ALL.len())],
        background: rng.gen_range(0..BACKGROUNDS.len() as u8),
        bar_width: BAR_WIDTH_FACTORS[rng.gen_range(0..BAR_WIDTH_FACTORS.len())],
        grid: rng.gen_bool(0.5),
        seed,
    }
}

/// What and how to render.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartSpec {
    pub chart_type: ChartType,
    pub style: StyleSpec,
    pub width_px: u32,
    pub height_px: u32,
}

impl ChartSpec {
    /// Default 448x448 canvas with a seeded style.
    pub fn new(chart_type: ChartType, style_seed: u64) -> Self {
        ChartSpec { chart_type, style: style_sample(style_seed), width_px: 448, height_px: 448 }
    }
}

/// Pixel rectangle of one data element, addressed by (series, category).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementBox {
    pub series: usize,
    pub category: usize,
    #[serde(flatten)]
    pub rect: Rect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendBox {
    pub series: usize,
    #[serde(flatten)]
    pub rect: Rect,
}

/// Reference to a rendered data element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRef {
    pub series: usize,
    pub category: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkKind {
    Box,
    Arrow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarkColor {
    Red,
    Blue,
    Green,
    Orange,
    Purple,
    Black,
}

impl MarkColor {
    pub const ALL: [MarkColor; 6] = [
        MarkColor::Red,
        MarkColor::Blue,
        MarkColor::Green,
        MarkColor::Orange,
        MarkColor::Purple,
        MarkColor::Black,
    ];

    pub fn rgb(&self) -> Color {
        match self {
            MarkColor::Red => [225, 6, 0],
            MarkColor::Blue => [0, 85, 212],
            MarkColor::Green => [10, 143, 8],
            MarkColor::Orange => [255, 140, 0],
            MarkColor::Purple => [125, 46, 216],
            MarkColor::Black => [17, 17, 17],
        }
    }

    /// Color word used when a question refers to the mark.
    pub fn word(&self) -> &'static str {
        match self {
            MarkColor::Red => "red",
            MarkColor::Blue => "blue",
            MarkColor::Green => "green",
            MarkColor::Orange => "orange",
            MarkColor::Purple => "purple",
            MarkColor::Black => "black",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MarkTarget {
    Element(ElementRef),
    Pair(ElementRef, ElementRef),
}

/// A referring marker: a colored box around, or arrow pointing at, one
/// element (or a pair of elements).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferMark {
    pub kind: MarkKind,
    pub target: MarkTarget,
    pub color: MarkColor,
    pub stroke_width: u32,
    /// Box padding or arrow length, in pixels.
    pub size: f64,
}

impl ReferMark {
    /// Seeded mark with randomly selected color, size and width.
    pub fn sample(kind: MarkKind, target: MarkTarget, rng: &mut impl Rng) -> Self {
        let color = MarkColor::ALL[rng.gen_range(0..MarkColor::ALL.len())];
        let stroke_width = rng.gen_range(2..=3);
        let size = match kind {
            MarkKind::Box => rng.gen_range(4..=9) as f64,
            MarkKind::Arrow => rng.gen_range(34.0..=64.0),
        };
        ReferMark { kind, target, color, stroke_width, size }
    }

    /// Short phrase used in question text ("the red box", "the arrow").
    pub fn phrase(&self) -> String {
        match self.kind {
            MarkKind::Box => format!("the {} box", self.color.word()),
            MarkKind::Arrow => format!("the {} arrow", self.color.word()),
        }
    }
}

/// A mark as actually drawn, with its pixel geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlacedMark {
    pub mark: ReferMark,
    pub rect: Rect,
}

/// A rendered chart: PNG bytes plus the geometry QA generation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderResult {
    pub png: Vec<u8>,
    pub width: u32,
    pub height: u32,
    pub element_boxes: Vec<ElementBox>,
    pub legend_boxes: Vec<LegendBox>,
    pub axis_box: Rect,
    pub marks: Vec<PlacedMark>,
}

impl RenderResult {
    pub fn element_box(&self, series: usize, category: usize) -> Option<&ElementBox> {
        self.element_boxes.iter().find(|b| b.series == series && b.category == category)
    }

    /// JSON sidecar listing element boxes: `[{series, category, x, y, w, h}]`.
    pub fn boxes_json(&self) -> String {
        serde_json::to_string(&self.element_boxes).expect("boxes serialize")
    }
}

/// Renders a table as the given chart. Deterministic per
/// (table, spec, seed): repeated calls produce byte-identical PNGs.
pub fn render(table: &DataTable, spec: &ChartSpec, seed: u64) -> Result<RenderResult, RenderError> {
    if spec.width_px < MIN_CANVAS || spec.height_px < MIN_CANVAS {
        return Err(RenderError::CanvasTooSmall(spec.width_px, spec.height_px));
    }
    spec.chart_type.check_table(table)?;
    let painted = charts::paint(table, spec, seed);
    Ok(RenderResult {
        png: painted.canvas.to_png(),
        width: spec.width_px,
        height: spec.height_px,
        element_boxes: painted.element_boxes,
        legend_boxes: painted.legend_boxes,
        axis_box: painted.axis_box,
        marks: Vec::new(),
    })
}

/// Draws referring marks onto a rendered chart, z-ordered by list order,
/// and records each mark's pixel geometry. Marks always land fully inside
/// the image.
pub fn apply_refer_marks(
    result: &RenderResult,
    marks: &[ReferMark],
    seed: u64,
) -> Result<RenderResult, RenderError> {
    // resolve all targets before touching pixels
    for mark in marks {
        let refs = match mark.target {
            MarkTarget::Element(e) => vec![e],
            MarkTarget::Pair(a, b) => vec![a, b],
        };
        for e in refs {
            if result.element_box(e.series, e.category).is_none() {
                return Err(RenderError::UnknownTarget {
                    series: e.series,
                    category: e.category,
                });
            }
        }
    }

    let mut canvas = canvas::Canvas::from_png(&result.png).map_err(RenderError::BadImage)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut placed = result.marks.clone();
    for mark in marks {
        let rect = charts::draw_mark(&mut canvas, result, mark, &mut rng);
        placed.push(PlacedMark { mark: *mark, rect });
    }

    Ok(RenderResult {
        png: canvas.to_png(),
        width: result.width,
        height: result.height,
        element_boxes: result.element_boxes.clone(),
        legend_boxes: result.legend_boxes.clone(),
        axis_box: result.axis_box,
        marks: placed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{synth_series_table, SynthConfig};
    use crate::table::DataTable;

    fn bar_table() -> DataTable {
        DataTable::from_numbers(
            "Revenue by Country",
            "Country",
            "Revenue",
            vec!["France".into(), "Japan".into()],
            vec!["North".into(), "South".into(), "East".into()],
            vec![vec![30.0, 55.0, 10.0], vec![80.0, 20.0, 45.0]],
        )
        .unwrap()
    }

    #[test]
    fn bar_chart_has_one_box_per_cell() {
        let spec = ChartSpec::new(ChartType::Bar, 1);
        let out = render(&bar_table(), &spec, 1).unwrap();
        assert_eq!(out.element_boxes.len(), 6);
        let full = Rect { x: 0, y: 0, w: out.width, h: out.height };
        for b in &out.element_boxes {
            assert!(full.contains(&b.rect), "box {b:?} escapes the image");
        }
    }

    #[test]
    fn incompatible_type_is_rejected() {
        let pie_table = synth_series_table(&SynthConfig::new(ChartType::Pie, 3), 3);
        let spec = ChartSpec::new(ChartType::Bubble, 1);
        assert!(matches!(
            render(&pie_table, &spec, 1),
            Err(RenderError::IncompatibleChartType(_))
        ));
    }

    #[test]
    fn render_is_byte_deterministic() {
        let spec = ChartSpec::new(ChartType::Bar, 9);
        let a = render(&bar_table(), &spec, 42).unwrap();
        let b = render(&bar_table(), &spec, 42).unwrap();
        assert_eq!(a.png, b.png);
        assert_eq!(a.element_boxes, b.element_boxes);
    }

    #[test]
    fn bar_heights_follow_values() {
        let spec = ChartSpec::new(ChartType::Bar, 5);
        let t = bar_table();
        let out = render(&t, &spec, 5).unwrap();
        for s in 0..t.cols() {
            for a in 0..t.rows() {
                for b in 0..t.rows() {
                    let va = t.cell(a, s).as_number().unwrap();
                    let vb = t.cell(b, s).as_number().unwrap();
                    let ha = out.element_box(s, a).unwrap().rect.h;
                    let hb = out.element_box(s, b).unwrap().rect.h;
                    if va > vb {
                        assert!(ha >= hb, "series {s}: value {va}>{vb} but height {ha}<{hb}");
                    }
                }
            }
        }
    }

    #[test]
    fn box_mark_encloses_target() {
        let spec = ChartSpec::new(ChartType::Bar, 2);
        let out = render(&bar_table(), &spec, 2).unwrap();
        let mark = ReferMark {
            kind: MarkKind::Box,
            target: MarkTarget::Element(ElementRef { series: 0, category: 1 }),
            color: MarkColor::Red,
            stroke_width: 2,
            size: 5.0,
        };
        let marked = apply_refer_marks(&out, &[mark], 7).unwrap();
        assert_eq!(marked.marks.len(), 1);
        let target = out.element_box(0, 1).unwrap().rect;
        assert!(marked.marks[0].rect.contains(&target));
        let full = Rect { x: 0, y: 0, w: out.width, h: out.height };
        assert!(full.contains(&marked.marks[0].rect));
    }

    #[test]
    fn arrow_marks_record_in_order_and_stay_inside() {
        let spec = ChartSpec::new(ChartType::Bar, 3);
        let out = render(&bar_table(), &spec, 3).unwrap();
        let arrow = |series, category| ReferMark {
            kind: MarkKind::Arrow,
            target: MarkTarget::Element(ElementRef { series, category }),
            color: MarkColor::Blue,
            stroke_width: 2,
            size: 48.0,
        };
        let marked = apply_refer_marks(&out, &[arrow(0, 0), arrow(2, 1)], 11).unwrap();
        assert_eq!(marked.marks.len(), 2);
        assert_eq!(marked.marks[0].mark.target, arrow(0, 0).target);
        let full = Rect { x: 0, y: 0, w: out.width, h: out.height };
        for m in &marked.marks {
            assert!(full.contains(&m.rect));
        }
    }

    #[test]
    fn unknown_mark_target_is_rejected() {
        let spec = ChartSpec::new(ChartType::Bar, 4);
        let out = render(&bar_table(), &spec, 4).unwrap();
        let mark = ReferMark {
            kind: MarkKind::Box,
            target: MarkTarget::Element(ElementRef { series: 9, category: 0 }),
            color: MarkColor::Red,
            stroke_width: 2,
            size: 5.0,
        };
        assert_eq!(
            apply_refer_marks(&out, &[mark], 1),
            Err(RenderError::UnknownTarget { series: 9, category: 0 })
        );
    }

    #[test]
    fn style_sampling_is_seeded_and_varied() {
        assert_eq!(style_sample(7), style_sample(7));
        let mut differing = 0;
        for i in 0..1000u64 {
            let a = style_sample(2 * i);
            let b = style_sample(2 * i + 1);
            if a != b {
                differing += 1;
            }
        }
        assert!(differing >= 990, "only {differing}/1000 seed pairs differed");
    }

    #[test]
    fn style_sampling_covers_every_palette() {
        let mut seen = [false; PALETTES.len()];
        for seed in 0..10_000u64 {
            seen[style_sample(seed).palette as usize] = true;
        }
        assert!(seen.iter().all(|s| *s));
    }

    #[test]
    fn every_family_renders_from_synthesized_tables() {
        use crate::synth::{synth_boxplot_table, synth_histogram_table};
        use crate::synth::{DistributionKind, DistributionSpec};
        let dist = DistributionSpec::new(DistributionKind::Normal { mean: 10.0, std: 3.0 }, 400);
        for (i, ct) in ChartType::ALL.into_iter().enumerate() {
            let seed = 40 + i as u64;
            let table = match ct {
                ChartType::Histogram => synth_histogram_table(&dist, 6, seed).unwrap(),
                ChartType::Box => synth_boxplot_table(&dist, 3, seed).unwrap(),
                _ => synth_series_table(&SynthConfig::new(ct, seed), seed),
            };
            let spec = ChartSpec::new(ct, seed);
            let out = render(&table, &spec, seed).unwrap_or_else(|e| {
                panic!("{} failed to render: {e}", ct.name());
            });
            assert!(!out.element_boxes.is_empty(), "{} produced no boxes", ct.name());
            let full = Rect { x: 0, y: 0, w: out.width, h: out.height };
            for b in &out.element_boxes {
                assert!(full.contains(&b.rect), "{}: {b:?} out of bounds", ct.name());
            }
            // image decodable
            canvas::Canvas::from_png(&out.png).unwrap();
        }
    }

    #[test]
    fn tiny_canvas_is_rejected() {
        let mut spec = ChartSpec::new(ChartType::Bar, 1);
        spec.width_px = 80;
        assert!(matches!(render(&bar_table(), &spec, 1), Err(RenderError::CanvasTooSmall(80, _))));
    }
}
