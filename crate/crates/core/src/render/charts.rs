//! Per-family chart painters over the software canvas.

use super::canvas::{Canvas, Color, Dash, Rect};
use super::font;
use super::{
    ChartSpec, ChartType, ElementBox, LegendBox, LegendPos, LineStyle,
    MarkKind, MarkTarget, MarkerShape, ReferMark, RenderResult,
};
use crate::table::numfmt::format_number;
use crate::table::DataTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

const AXIS_COLOR: Color = [60, 60, 60];
const TEXT_COLOR: Color = [25, 25, 25];
const GRID_COLOR: Color = [204, 204, 204];

pub(super) struct Painted {
    pub canvas: Canvas,
    pub element_boxes: Vec<ElementBox>,
    pub legend_boxes: Vec<LegendBox>,
    pub axis_box: Rect,
}

#[derive(Clone, Copy)]
struct Plot {
    x0: i64,
    y0: i64,
    x1: i64,
    y1: i64,
}

impl Plot {
    fn w(&self) -> i64 {
        self.x1 - self.x0 + 1
    }

    fn h(&self) -> i64 {
        self.y1 - self.y0 + 1
    }

    fn rect(&self) -> Rect {
        Rect {
            x: self.x0 as u32,
            y: self.y0 as u32,
            w: self.w() as u32,
            h: self.h() as u32,
        }
    }

    fn map_y(&self, v: f64, lo: f64, hi: f64) -> i64 {
        let t = (v - lo) / (hi - lo);
        self.y1 - (t * (self.h() - 1) as f64).round() as i64
    }

    fn map_x(&self, v: f64, lo: f64, hi: f64) -> i64 {
        let t = (v - lo) / (hi - lo);
        self.x0 + (t * (self.w() - 1) as f64).round() as i64
    }
}

fn darken(c: Color) -> Color {
    [
        (c[0] as u32 * 55 / 100) as u8,
        (c[1] as u32 * 55 / 100) as u8,
        (c[2] as u32 * 55 / 100) as u8,
    ]
}

fn dash_of(style: LineStyle) -> Dash {
    match style {
        LineStyle::Solid => Dash::Solid,
        LineStyle::Dashed => Dash::Dashed,
        LineStyle::Dotted => Dash::Dotted,
        LineStyle::DashDot => Dash::DashDot,
    }
}

/// Numeric grid of the table; callers checked compatibility already.
fn values(table: &DataTable) -> Vec<Vec<f64>> {
    (0..table.rows()).map(|r| table.row_numbers(r).expect("numeric table")).collect()
}

fn data_extent(vals: &[Vec<f64>]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for row in vals {
        for v in row {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
    }
    (lo, hi)
}

/// Tick positions with a 1/2/5 step covering [lo, hi].
fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let range = (hi - lo).max(1e-9);
    let raw = range / 4.5;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = mag
        * if norm < 1.5 {
            1.0
        } else if norm < 3.5 {
            2.0
        } else if norm < 7.5 {
            5.0
        } else {
            10.0
        };
    let mut ticks = Vec::new();
    let first = (lo / step).ceil();
    let mut k = 0;
    loop {
        let t = (first + k as f64) * step;
        if t > hi + step * 1e-9 {
            break;
        }
        ticks.push(t);
        k += 1;
        if k > 32 {
            break;
        }
    }
    ticks
}

/// Truncates a label to fit `max_px` at scale 1, appending ".." when cut.
fn fit_label(text: &str, max_px: i64) -> String {
    if max_px <= 0 {
        return String::new();
    }
    if font::text_width(text, 1) as i64 <= max_px {
        return text.to_string();
    }
    let chars: Vec<char> = text.chars().collect();
    for keep in (1..chars.len()).rev() {
        let candidate: String = chars[..keep].iter().collect::<String>() + "..";
        if font::text_width(&candidate, 1) as i64 <= max_px {
            return candidate;
        }
    }
    String::new()
}

pub(super) fn paint(table: &DataTable, spec: &ChartSpec, seed: u64) -> Painted {
    let style = &spec.style;
    let (scale, bold) = style.font_params();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let palette = style.palette_colors();
    let shift = rng.gen_range(0..palette.len());
    let color_of = |i: usize| palette[(i + shift) % palette.len()];
    let legend_jitter = rng.gen_range(0..4) as i64;

    let w = spec.width_px as i64;
    let h = spec.height_px as i64;
    let mut canvas = Canvas::new(spec.width_px, spec.height_px, style.background_color());

    let title_h = if table.title().is_empty() { 8 } else { font::text_height(scale) as i64 + 12 };
    let tick_h = font::text_height(1) as i64;

    let vals = values(table);
    let element_boxes;

    // radial families skip the axis frame
    let is_radial = matches!(spec.chart_type, ChartType::Pie | ChartType::Radar);

    let plot = if is_radial {
        Plot { x0: 10, y0: title_h + 4, x1: w - 11, y1: h - 12 }
    } else {
        let (lo, hi) = axis_range(spec.chart_type, &vals);
        let ticks = nice_ticks(lo, hi);
        let tick_w = ticks
            .iter()
            .map(|t| font::text_width(&format_number(*t), 1) as i64)
            .max()
            .unwrap_or(20);
        let left = (tick_w + 12).max(28);
        let bottom = tick_h * 2 + 14;
        Plot { x0: left, y0: title_h + 6, x1: w - 13, y1: h - 1 - bottom }
    };

    match spec.chart_type {
        ChartType::Bar | ChartType::Histogram => {
            let (lo, hi) = axis_range(spec.chart_type, &vals);
            draw_axis_frame(&mut canvas, table, &plot, lo, hi, style.grid, scale, bold);
            let contiguous = spec.chart_type == ChartType::Histogram;
            element_boxes =
                draw_bars(&mut canvas, table, &vals, &plot, lo, hi, style.bar_width, contiguous, &color_of);
            draw_category_ticks(&mut canvas, table, &plot);
        }
        ChartType::Line | ChartType::DotLine => {
            let (lo, hi) = axis_range(spec.chart_type, &vals);
            draw_axis_frame(&mut canvas, table, &plot, lo, hi, style.grid, scale, bold);
            let markers = spec.chart_type == ChartType::DotLine;
            element_boxes = draw_lines(
                &mut canvas,
                table,
                &vals,
                &plot,
                lo,
                hi,
                dash_of(style.line_style),
                markers.then_some(style.marker),
                &color_of,
            );
            draw_category_ticks(&mut canvas, table, &plot);
        }
        ChartType::Area => {
            let (lo, hi) = axis_range(spec.chart_type, &vals);
            draw_axis_frame(&mut canvas, table, &plot, lo, hi, style.grid, scale, bold);
            element_boxes = draw_areas(&mut canvas, table, &vals, &plot, lo, hi, &color_of);
            draw_category_ticks(&mut canvas, table, &plot);
        }
        ChartType::Box => {
            let (lo, hi) = axis_range(spec.chart_type, &vals);
            draw_axis_frame(&mut canvas, table, &plot, lo, hi, style.grid, scale, bold);
            element_boxes =
                draw_boxplots(&mut canvas, table, &vals, &plot, lo, hi, style.bar_width, &color_of);
            draw_category_ticks(&mut canvas, table, &plot);
        }
        ChartType::Bubble => {
            element_boxes =
                draw_bubbles(&mut canvas, table, &vals, &plot, style.grid, scale, bold, &color_of);
        }
        ChartType::Pie => {
            element_boxes = draw_pie(&mut canvas, &vals, &plot, &color_of);
        }
        ChartType::Radar => {
            element_boxes = draw_radar(
                &mut canvas,
                table,
                &vals,
                &plot,
                dash_of(style.line_style),
                style.marker,
                &color_of,
            );
        }
    }

    // legend
    let mut legend_boxes = Vec::new();
    let entries = legend_entries(table, spec.chart_type, &vals);
    if !entries.is_empty() {
        legend_boxes =
            draw_legend(&mut canvas, &plot, &entries, style.legend_pos, legend_jitter, &color_of);
    }

    // title, centered and fitted
    if !table.title().is_empty() {
        let fitted = fit_label(table.title(), (w - 12) / scale as i64);
        let tw = font::text_width(&fitted, scale) as i64;
        canvas.text(((w - tw) / 2).max(2), 4, &fitted, scale, TEXT_COLOR, bold);
    }

    Painted { canvas, element_boxes, legend_boxes, axis_box: plot.rect() }
}

fn axis_range(chart_type: ChartType, vals: &[Vec<f64>]) -> (f64, f64) {
    let (dmin, dmax) = data_extent(vals);
    let span = (dmax - dmin).max(1e-9);
    match chart_type {
        ChartType::Bar | ChartType::Histogram => {
            let lo = dmin.min(0.0);
            let hi = dmax.max(0.0);
            if lo == hi {
                (lo, hi + 1.0)
            } else {
                (lo, hi)
            }
        }
        ChartType::Area => (dmin.min(0.0), dmax + 0.05 * span),
        _ => (dmin - 0.05 * span, dmax + 0.05 * span),
    }
}

#[allow(clippy::too_many_arguments)]
fn draw_axis_frame(
    canvas: &mut Canvas,
    table: &DataTable,
    plot: &Plot,
    lo: f64,
    hi: f64,
    grid: bool,
    scale: u32,
    bold: bool,
) {
    let ticks = nice_ticks(lo, hi);
    for t in &ticks {
        let y = plot.map_y(*t, lo, hi);
        if grid {
            canvas.line(plot.x0, y, plot.x1, y, 1, GRID_COLOR);
        }
        let label = format_number(*t);
        let tw = font::text_width(&label, 1) as i64;
        canvas.text(plot.x0 - tw - 5, y - font::text_height(1) as i64 / 2, &label, 1, TEXT_COLOR, false);
        canvas.line(plot.x0 - 3, y, plot.x0 - 1, y, 1, AXIS_COLOR);
    }
    // axis lines
    canvas.line(plot.x0 - 1, plot.y0, plot.x0 - 1, plot.y1 + 1, 1, AXIS_COLOR);
    canvas.line(plot.x0 - 1, plot.y1 + 1, plot.x1, plot.y1 + 1, 1, AXIS_COLOR);

    // axis names
    let x_label = table.x_label();
    if !x_label.is_empty() {
        let fitted = fit_label(x_label, plot.w());
        let tw = font::text_width(&fitted, 1) as i64;
        let y = plot.y1 + 4 + font::text_height(1) as i64 + 5;
        canvas.text(plot.x0 + (plot.w() - tw) / 2, y, &fitted, 1, TEXT_COLOR, false);
    }
    let y_label = table.y_label();
    if !y_label.is_empty() {
        let fitted = fit_label(y_label, plot.w() / 2);
        let _ = (scale, bold);
        canvas.text(3, plot.y0 - font::text_height(1) as i64 - 3, &fitted, 1, TEXT_COLOR, false);
    }
}

fn draw_category_ticks(canvas: &mut Canvas, table: &DataTable, plot: &Plot) {
    let r = table.rows() as i64;
    let slot = plot.w() as f64 / r as f64;
    let everything_fits = table
        .row_labels()
        .iter()
        .all(|l| (font::text_width(l, 1) as f64) <= slot - 2.0);
    let stride = if everything_fits { 1 } else { 2 };
    for (i, label) in table.row_labels().iter().enumerate() {
        if i % stride != 0 {
            continue;
        }
        let budget = slot * stride as f64 - 2.0;
        let fitted = fit_label(label, budget as i64);
        let cx = plot.x0 + (slot * (i as f64 + 0.5)).round() as i64;
        let tw = font::text_width(&fitted, 1) as i64;
        canvas.text(cx - tw / 2, plot.y1 + 4, &fitted, 1, TEXT_COLOR, false);
    }
}

#[allow(clippy::too_many_arguments)]
fn draw_bars(
    canvas: &mut Canvas,
    table: &DataTable,
    vals: &[Vec<f64>],
    plot: &Plot,
    lo: f64,
    hi: f64,
    bar_width: f64,
    contiguous: bool,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<ElementBox> {
    let rows = table.rows();
    let cols = table.cols();
    let slot = plot.w() as f64 / rows as f64;
    let group = if contiguous { slot } else { slot * bar_width };
    let bar = group / cols as f64;
    let baseline = plot.map_y(lo.max(0.0).min(hi), lo, hi);
    let mut boxes = Vec::with_capacity(rows * cols);
    for (cat, row) in vals.iter().enumerate() {
        let group_x = plot.x0 as f64 + cat as f64 * slot + (slot - group) / 2.0;
        for (s, v) in row.iter().enumerate() {
            let x0 = (group_x + s as f64 * bar).round() as i64;
            let x1 = ((group_x + (s + 1) as f64 * bar).round() as i64 - 1).max(x0);
            let y = plot.map_y(*v, lo, hi);
            let (top, bot) = (y.min(baseline), y.max(baseline));
            let color = color_of(s);
            canvas.begin_track();
            canvas.fill_rect(x0, top, x1, bot, color);
            canvas.rect_outline(x0, top, x1, bot, 1, darken(color));
            if let Some(rect) = canvas.take_extent() {
                boxes.push(ElementBox { series: s, category: cat, rect });
            }
        }
    }
    boxes
}

#[allow(clippy::too_many_arguments)]
fn draw_lines(
    canvas: &mut Canvas,
    table: &DataTable,
    vals: &[Vec<f64>],
    plot: &Plot,
    lo: f64,
    hi: f64,
    dash: Dash,
    marker: Option<MarkerShape>,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<ElementBox> {
    let rows = table.rows();
    let cols = table.cols();
    let slot = plot.w() as f64 / rows as f64;
    let px = |cat: usize| plot.x0 + (slot * (cat as f64 + 0.5)).round() as i64;
    let mut boxes = Vec::with_capacity(rows * cols);
    for s in 0..cols {
        let color = color_of(s);
        let points: Vec<(i64, i64)> =
            (0..rows).map(|cat| (px(cat), plot.map_y(vals[cat][s], lo, hi))).collect();
        for pair in points.windows(2) {
            canvas.line_dashed(pair[0].0, pair[0].1, pair[1].0, pair[1].1, 2, color, dash);
        }
        for (cat, (x, y)) in points.iter().enumerate() {
            canvas.begin_track();
            match marker {
                Some(shape) => draw_marker(canvas, *x, *y, shape, 4, color),
                None => canvas.fill_rect(x - 1, y - 1, x + 1, y + 1, color),
            }
            if let Some(rect) = canvas.take_extent() {
                boxes.push(ElementBox { series: s, category: cat, rect });
            }
        }
    }
    boxes
}

fn draw_marker(canvas: &mut Canvas, x: i64, y: i64, shape: MarkerShape, half: i64, color: Color) {
    match shape {
        MarkerShape::Circle => canvas.fill_circle(x, y, half, color),
        MarkerShape::Square => canvas.fill_rect(x - half, y - half, x + half, y + half, color),
        MarkerShape::Triangle => {
            canvas.fill_polygon(&[(x, y - half), (x - half, y + half), (x + half, y + half)], color)
        }
        MarkerShape::Diamond => {
            canvas.fill_polygon(&[(x, y - half), (x + half, y), (x, y + half), (x - half, y)], color)
        }
        MarkerShape::Cross => {
            canvas.line(x - half, y - half, x + half, y + half, 2, color);
            canvas.line(x - half, y + half, x + half, y - half, 2, color);
        }
    }
}

fn draw_areas(
    canvas: &mut Canvas,
    table: &DataTable,
    vals: &[Vec<f64>],
    plot: &Plot,
    lo: f64,
    hi: f64,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<ElementBox> {
    let rows = table.rows();
    let cols = table.cols();
    let slot = plot.w() as f64 / rows as f64;
    let px = |cat: usize| plot.x0 + (slot * (cat as f64 + 0.5)).round() as i64;
    let baseline = plot.map_y(lo.max(0.0).min(hi), lo, hi);

    // draw the tallest series first so smaller ones stay visible
    let mut order: Vec<usize> = (0..cols).collect();
    let mean = |s: usize| vals.iter().map(|r| r[s]).sum::<f64>() / rows as f64;
    order.sort_by(|a, b| mean(*b).partial_cmp(&mean(*a)).unwrap().then(a.cmp(b)));

    for &s in &order {
        let color = color_of(s);
        let mut poly: Vec<(i64, i64)> =
            (0..rows).map(|cat| (px(cat), plot.map_y(vals[cat][s], lo, hi))).collect();
        poly.push((px(rows - 1), baseline));
        poly.push((px(0), baseline));
        canvas.fill_polygon(&poly, color);
        for pair in poly[..rows].windows(2) {
            canvas.line(pair[0].0, pair[0].1, pair[1].0, pair[1].1, 2, darken(color));
        }
    }

    let mut boxes = Vec::with_capacity(rows * cols);
    for s in 0..cols {
        let color = darken(color_of(s));
        for cat in 0..rows {
            let (x, y) = (px(cat), plot.map_y(vals[cat][s], lo, hi));
            canvas.begin_track();
            canvas.fill_rect(x - 1, y - 1, x + 1, y + 1, color);
            if let Some(rect) = canvas.take_extent() {
                boxes.push(ElementBox { series: s, category: cat, rect });
            }
        }
    }
    boxes
}

fn draw_pie(
    canvas: &mut Canvas,
    vals: &[Vec<f64>],
    plot: &Plot,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<ElementBox> {
    let total: f64 = vals.iter().map(|r| r[0]).sum();
    let cx = plot.x0 + plot.w() / 2;
    let cy = plot.y0 + plot.h() / 2;
    let r = (plot.w().min(plot.h()) / 2 - 8).max(20);
    let mut boxes = Vec::with_capacity(vals.len());
    let mut angle = -TAU / 4.0;
    for (cat, row) in vals.iter().enumerate() {
        let span = row[0] / total * TAU;
        canvas.begin_track();
        canvas.fill_wedge(cx, cy, r, angle, angle + span, color_of(cat));
        if let Some(rect) = canvas.take_extent() {
            boxes.push(ElementBox { series: 0, category: cat, rect });
        }
        angle += span;
    }
    // separators and rim
    let mut a = -TAU / 4.0;
    for row in vals {
        let (dx, dy) = (a.cos(), a.sin());
        canvas.line(
            cx,
            cy,
            cx + (dx * r as f64).round() as i64,
            cy + (dy * r as f64).round() as i64,
            1,
            [255, 255, 255],
        );
        a += row[0] / total * TAU;
    }
    canvas.circle_outline(cx, cy, r, 1, AXIS_COLOR);
    boxes
}

fn draw_radar(
    canvas: &mut Canvas,
    table: &DataTable,
    vals: &[Vec<f64>],
    plot: &Plot,
    dash: Dash,
    marker: MarkerShape,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<ElementBox> {
    let axes = table.rows();
    let cols = table.cols();
    let cx = plot.x0 + plot.w() / 2;
    let cy = plot.y0 + plot.h() / 2;
    let label_margin = 9 * font::ADVANCE as i64;
    let r = ((plot.w().min(plot.h()) / 2) - label_margin.min(46)).max(30);
    let (_, dmax) = data_extent(vals);
    let vmax = if dmax <= 0.0 { 1.0 } else { dmax * 1.05 };
    let angle_of = |k: usize| -TAU / 4.0 + k as f64 * TAU / axes as f64;
    let point = |k: usize, v: f64| {
        let t = (v / vmax).clamp(0.0, 1.0);
        let a = angle_of(k);
        (
            cx + (a.cos() * t * r as f64).round() as i64,
            cy + (a.sin() * t * r as f64).round() as i64,
        )
    };

    // rings and spokes
    for ring in 1..=4 {
        let rr = vmax * ring as f64 / 4.0;
        let pts: Vec<(i64, i64)> = (0..axes).map(|k| point(k, rr)).collect();
        for i in 0..axes {
            let a = pts[i];
            let b = pts[(i + 1) % axes];
            canvas.line(a.0, a.1, b.0, b.1, 1, GRID_COLOR);
        }
    }
    for k in 0..axes {
        let tip = point(k, vmax);
        canvas.line(cx, cy, tip.0, tip.1, 1, GRID_COLOR);
    }

    // series polygons
    let mut boxes = Vec::with_capacity(axes * cols);
    for s in 0..cols {
        let color = color_of(s);
        let pts: Vec<(i64, i64)> = (0..axes).map(|k| point(k, vals[k][s])).collect();
        for i in 0..axes {
            let a = pts[i];
            let b = pts[(i + 1) % axes];
            canvas.line_dashed(a.0, a.1, b.0, b.1, 2, color, dash);
        }
        for (k, (x, y)) in pts.iter().enumerate() {
            canvas.begin_track();
            draw_marker(canvas, *x, *y, marker, 3, color);
            if let Some(rect) = canvas.take_extent() {
                boxes.push(ElementBox { series: s, category: k, rect });
            }
        }
    }

    // axis labels at spoke tips
    for (k, label) in table.row_labels().iter().enumerate() {
        let fitted = fit_label(label, label_margin + 12);
        let a = angle_of(k);
        let tip = point(k, vmax);
        let tw = font::text_width(&fitted, 1) as i64;
        let th = font::text_height(1) as i64;
        let x = if a.cos() > 0.3 {
            tip.0 + 5
        } else if a.cos() < -0.3 {
            tip.0 - 5 - tw
        } else {
            tip.0 - tw / 2
        };
        let y = if a.sin() > 0.3 {
            tip.1 + 4
        } else if a.sin() < -0.3 {
            tip.1 - 4 - th
        } else {
            tip.1 - th / 2
        };
        let x = x.clamp(0, (canvas.width() as i64 - tw).max(0));
        let y = y.clamp(0, (canvas.height() as i64 - th).max(0));
        canvas.text(x, y, &fitted, 1, TEXT_COLOR, false);
    }
    boxes
}

#[allow(clippy::too_many_arguments)]
fn draw_boxplots(
    canvas: &mut Canvas,
    table: &DataTable,
    vals: &[Vec<f64>],
    plot: &Plot,
    lo: f64,
    hi: f64,
    bar_width: f64,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<ElementBox> {
    let groups = table.rows();
    let slot = plot.w() as f64 / groups as f64;
    let half = ((slot * bar_width * 0.35) as i64).max(5);
    let mut boxes = Vec::with_capacity(groups);
    for (g, row) in vals.iter().enumerate() {
        let cx = plot.x0 + (slot * (g as f64 + 0.5)).round() as i64;
        let y_min = plot.map_y(row[0], lo, hi);
        let y_q1 = plot.map_y(row[1], lo, hi);
        let y_med = plot.map_y(row[2], lo, hi);
        let y_q3 = plot.map_y(row[3], lo, hi);
        let y_max = plot.map_y(row[4], lo, hi);
        let color = color_of(g);
        let edge = darken(color);
        canvas.begin_track();
        canvas.line(cx, y_max, cx, y_q3, 1, edge);
        canvas.line(cx, y_q1, cx, y_min, 1, edge);
        canvas.line(cx - half / 2, y_max, cx + half / 2, y_max, 2, edge);
        canvas.line(cx - half / 2, y_min, cx + half / 2, y_min, 2, edge);
        canvas.fill_rect(cx - half, y_q3, cx + half, y_q1, color);
        canvas.rect_outline(cx - half, y_q3.min(y_q1), cx + half, y_q1.max(y_q3), 1, edge);
        canvas.line(cx - half, y_med, cx + half, y_med, 2, edge);
        if let Some(rect) = canvas.take_extent() {
            boxes.push(ElementBox { series: 0, category: g, rect });
        }
    }
    boxes
}

#[allow(clippy::too_many_arguments)]
fn draw_bubbles(
    canvas: &mut Canvas,
    table: &DataTable,
    vals: &[Vec<f64>],
    plot: &Plot,
    grid: bool,
    scale: u32,
    bold: bool,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<ElementBox> {
    let xs: Vec<f64> = vals.iter().map(|r| r[0]).collect();
    let ys: Vec<f64> = vals.iter().map(|r| r[1]).collect();
    let sizes: Vec<f64> = vals.iter().map(|r| r[2]).collect();
    let pad_range = |lo: f64, hi: f64| {
        let span = (hi - lo).max(1e-9);
        (lo - 0.08 * span, hi + 0.08 * span)
    };
    let (xlo, xhi) = {
        let (a, b) = data_extent(&[xs.clone()]);
        pad_range(a, b)
    };
    let (ylo, yhi) = {
        let (a, b) = data_extent(&[ys.clone()]);
        pad_range(a, b)
    };
    draw_axis_frame(canvas, table, plot, ylo, yhi, grid, scale, bold);
    // numeric x ticks along the bottom
    for t in nice_ticks(xlo, xhi) {
        let x = plot.map_x(t, xlo, xhi);
        let label = format_number(t);
        let tw = font::text_width(&label, 1) as i64;
        canvas.text(x - tw / 2, plot.y1 + 4, &label, 1, TEXT_COLOR, false);
        canvas.line(x, plot.y1 + 1, x, plot.y1 + 3, 1, AXIS_COLOR);
    }

    let smax = sizes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut boxes = Vec::with_capacity(vals.len());
    for (cat, row) in vals.iter().enumerate() {
        let cx = plot.map_x(row[0], xlo, xhi);
        let cy = plot.map_y(row[1], ylo, yhi);
        let r = 4 + ((row[2] / smax).sqrt() * 20.0).round() as i64;
        let color = color_of(cat);
        canvas.begin_track();
        canvas.fill_circle(cx, cy, r, color);
        canvas.circle_outline(cx, cy, r, 1, darken(color));
        if let Some(rect) = canvas.take_extent() {
            boxes.push(ElementBox { series: 0, category: cat, rect });
        }
    }
    // name each bubble after all circles so labels stay readable
    for (cat, label) in table.row_labels().iter().enumerate() {
        let row = &vals[cat];
        let cx = plot.map_x(row[0], xlo, xhi);
        let cy = plot.map_y(row[1], ylo, yhi);
        let r = 4 + ((row[2] / smax).sqrt() * 20.0).round() as i64;
        let fitted = fit_label(label, 70);
        let tw = font::text_width(&fitted, 1) as i64;
        let th = font::text_height(1) as i64;
        let x = (cx + r + 3).clamp(plot.x0, (plot.x1 - tw).max(plot.x0));
        let y = (cy - th / 2).clamp(plot.y0, plot.y1 - th);
        canvas.text(x, y, &fitted, 1, TEXT_COLOR, false);
    }
    boxes
}

/// (index, text) legend entries; empty when the family carries no legend.
fn legend_entries(table: &DataTable, chart_type: ChartType, vals: &[Vec<f64>]) -> Vec<(usize, String)> {
    match chart_type {
        ChartType::Pie => table
            .row_labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (i, format!("{l} ({})", format_number(vals[i][0]))))
            .collect(),
        ChartType::Histogram | ChartType::Box | ChartType::Bubble => Vec::new(),
        _ if table.cols() > 1 => {
            table.col_labels().iter().enumerate().map(|(i, l)| (i, l.clone())).collect()
        }
        _ => Vec::new(),
    }
}

fn draw_legend(
    canvas: &mut Canvas,
    plot: &Plot,
    entries: &[(usize, String)],
    pos: LegendPos,
    jitter: i64,
    color_of: &dyn Fn(usize) -> Color,
) -> Vec<LegendBox> {
    let th = font::text_height(1) as i64;
    let row_h = th + 4;
    let swatch = 8;
    let text_w = entries.iter().map(|(_, t)| font::text_width(t, 1) as i64).max().unwrap_or(10);
    let box_w = swatch + 6 + text_w + 10;
    let box_h = entries.len() as i64 * row_h + 6;
    let inset = 6 + jitter;
    let x0 = match pos {
        LegendPos::TopLeft | LegendPos::BottomLeft => plot.x0 + inset,
        _ => plot.x1 - inset - box_w,
    };
    let y0 = match pos {
        LegendPos::TopLeft | LegendPos::TopRight => plot.y0 + inset,
        _ => plot.y1 - inset - box_h,
    };
    canvas.fill_rect(x0, y0, x0 + box_w, y0 + box_h, [255, 255, 255]);
    canvas.rect_outline(x0, y0, x0 + box_w, y0 + box_h, 1, AXIS_COLOR);
    let mut boxes = Vec::with_capacity(entries.len());
    for (row, (idx, text)) in entries.iter().enumerate() {
        let y = y0 + 4 + row as i64 * row_h;
        canvas.fill_rect(x0 + 4, y, x0 + 4 + swatch, y + swatch, color_of(*idx));
        canvas.text(x0 + 4 + swatch + 4, y, text, 1, TEXT_COLOR, false);
        boxes.push(LegendBox {
            series: *idx,
            rect: Rect {
                x: x0 as u32,
                y: y as u32,
                w: box_w as u32,
                h: row_h as u32,
            },
        });
    }
    boxes
}

// --- referring marks ---

pub(super) fn draw_mark(
    canvas: &mut Canvas,
    result: &RenderResult,
    mark: &ReferMark,
    rng: &mut ChaCha8Rng,
) -> Rect {
    let rect_of = |e: super::ElementRef| result.element_box(e.series, e.category).unwrap().rect;
    let color = mark.color.rgb();
    let stroke = mark.stroke_width.max(1);
    let (w, h) = (canvas.width() as i64, canvas.height() as i64);
    canvas.begin_track();
    match (mark.kind, mark.target) {
        (MarkKind::Box, MarkTarget::Element(e)) => {
            let (x0, y0, x1, y1) = inflate(rect_of(e), mark.size as i64, w, h);
            canvas.rect_outline(x0, y0, x1, y1, stroke, color);
        }
        (MarkKind::Box, MarkTarget::Pair(a, b)) => {
            let (x0, y0, x1, y1) = inflate(union(rect_of(a), rect_of(b)), mark.size as i64, w, h);
            canvas.rect_outline(x0, y0, x1, y1, stroke, color);
        }
        (MarkKind::Arrow, MarkTarget::Element(e)) => {
            let (cx, cy) = rect_of(e).center();
            let (tx, ty) = arrow_tail(cx, cy, mark.size, stroke, w, h, rng);
            canvas.line(tx, ty, cx, cy, stroke, color);
            arrowhead(canvas, tx, ty, cx, cy, stroke, color);
        }
        (MarkKind::Arrow, MarkTarget::Pair(a, b)) => {
            let (ax, ay) = rect_of(a).center();
            let (bx, by) = rect_of(b).center();
            canvas.line(ax, ay, bx, by, stroke, color);
            arrowhead(canvas, bx, by, ax, ay, stroke, color);
            arrowhead(canvas, ax, ay, bx, by, stroke, color);
        }
    }
    canvas.take_extent().unwrap_or(Rect { x: 0, y: 0, w: 1, h: 1 })
}

fn union(a: Rect, b: Rect) -> Rect {
    let x0 = a.x.min(b.x);
    let y0 = a.y.min(b.y);
    let x1 = (a.x + a.w).max(b.x + b.w);
    let y1 = (a.y + a.h).max(b.y + b.h);
    Rect { x: x0, y: y0, w: x1 - x0, h: y1 - y0 }
}

/// Inflated, clamped inclusive bounds of a rectangle.
fn inflate(r: Rect, pad: i64, w: i64, h: i64) -> (i64, i64, i64, i64) {
    (
        (r.x as i64 - pad).max(0),
        (r.y as i64 - pad).max(0),
        (r.x as i64 + r.w as i64 - 1 + pad).min(w - 1),
        (r.y as i64 + r.h as i64 - 1 + pad).min(h - 1),
    )
}

/// Picks a seeded outward direction whose clamped length keeps the tail
/// inside the canvas.
fn arrow_tail(
    cx: i64,
    cy: i64,
    want: f64,
    stroke: u32,
    w: i64,
    h: i64,
    rng: &mut ChaCha8Rng,
) -> (i64, i64) {
    let margin = 3 + stroke as i64;
    let base: f64 = rng.gen::<f64>() * TAU;
    for k in 0..12 {
        let angle = base + k as f64 * TAU / 12.0;
        let (dx, dy) = (angle.cos(), angle.sin());
        let room = |c: i64, size: i64, d: f64| -> f64 {
            if d > 1e-9 {
                (size - 1 - margin - c) as f64 / d
            } else if d < -1e-9 {
                (margin - c) as f64 / d
            } else {
                f64::INFINITY
            }
        };
        let limit = want.min(room(cx, w, dx)).min(room(cy, h, dy));
        if limit >= 16.0 {
            return (
                cx + (dx * limit).round() as i64,
                cy + (dy * limit).round() as i64,
            );
        }
    }
    // centroid sits near a corner: fall back to a short clamped offset
    (
        (cx + 18).clamp(margin, w - 1 - margin),
        (cy - 18).clamp(margin, h - 1 - margin),
    )
}

fn arrowhead(canvas: &mut Canvas, tx: i64, ty: i64, hx: i64, hy: i64, stroke: u32, color: Color) {
    let angle = ((hy - ty) as f64).atan2((hx - tx) as f64);
    let len = (7 + 2 * stroke) as f64;
    for side in [-1.0f64, 1.0] {
        let a = angle + std::f64::consts::PI + side * 0.45;
        let bx = hx + (a.cos() * len).round() as i64;
        let by = hy + (a.sin() * len).round() as i64;
        canvas.line(hx, hy, bx, by, stroke, color);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::parse_bin_interval;

    #[test]
    fn nice_ticks_cover_the_range() {
        let ticks = nice_ticks(0.0, 100.0);
        assert!(ticks.len() >= 3 && ticks.len() <= 8);
        assert!(ticks.first().unwrap() >= &0.0);
        assert!(ticks.last().unwrap() <= &100.0);
        let ticks = nice_ticks(-3.7, 19.2);
        assert!(ticks.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn fit_label_truncates() {
        assert_eq!(fit_label("abc", 1000), "abc");
        let cut = fit_label("a very long category name", 40);
        assert!(cut.ends_with(".."));
        assert!(font::text_width(&cut, 1) <= 40);
        assert_eq!(fit_label("abc", 0), "");
    }

    #[test]
    fn interval_labels_parse() {
        assert_eq!(parse_bin_interval("[0, 2.5)"), Some((0.0, 2.5)));
        assert_eq!(parse_bin_interval("[-1.5, 4]"), Some((-1.5, 4.0)));
        assert_eq!(parse_bin_interval("0..5"), None);
    }
}
