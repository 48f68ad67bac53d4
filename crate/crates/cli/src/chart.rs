//! Deterministic SVG 1.1 bar and stacked-bar charts.
//!
//! Bar and segment heights are written in data units (the counts
//! themselves) inside a group whose transform maps counts to pixels, so the
//! documents carry the exact values.

use std::fmt::Write;

use quiring::analytics::{AggregateRow, AggregateTable};
use quiring::features::{COLUMN_COUNT, QUIRING_COLUMNS};

const SLOT: u32 = 22;
const BAR: u32 = 16;
const LEFT: u32 = 70;
const RIGHT: u32 = 20;
const TOP: u32 = 50;
const PLOT_HEIGHT: u32 = 320;
const LABEL_SPACE: u32 = 130;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    Bar,
    StackedBar,
}

#[derive(Debug, Clone)]
pub enum ChartData {
    Row(Box<AggregateRow>),
    Table(AggregateTable),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("a bar chart takes exactly one row, got {0}")]
    BarNeedsOneRow(usize),
    #[error("a stacked bar chart needs at least one row")]
    EmptyTable,
}

/// What to draw.
#[derive(Debug, Clone)]
pub struct ChartSpec {
    pub kind: ChartKind,
    pub title: String,
    pub data: ChartData,
}

impl ChartSpec {
    pub fn new(kind: ChartKind, title: impl Into<String>, data: ChartData) -> Result<Self, ChartError> {
        match (&kind, &data) {
            (ChartKind::Bar, ChartData::Table(t)) if t.len() != 1 => return Err(ChartError::BarNeedsOneRow(t.len())),
            (ChartKind::StackedBar, ChartData::Table(t)) if t.is_empty() => return Err(ChartError::EmptyTable),
            _ => {}
        }
        Ok(Self {
            kind,
            title: title.into(),
            data,
        })
    }

    pub fn render(&self) -> String {
        match (&self.kind, &self.data) {
            (ChartKind::Bar, ChartData::Row(row)) => render_bar(row, &self.title),
            (ChartKind::Bar, ChartData::Table(t)) => render_bar(&t.rows()[0], &self.title),
            (ChartKind::StackedBar, ChartData::Table(t)) => render_stacked(t, &self.title),
            (ChartKind::StackedBar, ChartData::Row(row)) => {
                let t = AggregateTable::new(vec![(**row).clone()]).expect("one row has unique labels");
                render_stacked(&t, &self.title)
            }
        }
    }
}

/// Fill color of a feature column: hues a golden angle apart, lightness
/// alternating so neighbours stay distinguishable.
pub fn column_color(index: usize) -> String {
    let hue = (index as f64 * 137.507_764) % 360.0;
    let lightness = if index.is_multiple_of(2) { 0.45 } else { 0.62 };
    hsl_to_hex(hue, 0.65, lightness)
}

fn hsl_to_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

/// Tick step of 1, 2 or 5 times a power of ten giving at most five ticks.
fn tick_step(max: u64) -> u64 {
    let mut magnitude = 1u64;
    loop {
        for m in [1, 2, 5] {
            let step = m * magnitude;
            if max / step <= 5 {
                return step;
            }
        }
        magnitude *= 10;
    }
}

struct Frame {
    slots: u32,
    max: u64,
}

impl Frame {
    fn width(&self) -> u32 {
        LEFT + self.slots * SLOT + RIGHT
    }

    fn height(&self) -> u32 {
        TOP + PLOT_HEIGHT + LABEL_SPACE
    }

    /// Pixels per count.
    fn scale(&self) -> f64 {
        f64::from(PLOT_HEIGHT) / self.max.max(1) as f64
    }

    fn open(&self, out: &mut String, title: &str) {
        let (w, h) = (self.width(), self.height());
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(out, "<title>{}</title>", escape(title));
        let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="28" text-anchor="middle" font-size="15">{}</text>"#,
            w / 2,
            escape(title)
        );
        self.axes(out);
    }

    fn axes(&self, out: &mut String) {
        let base = TOP + PLOT_HEIGHT;
        let right = LEFT + self.slots * SLOT;
        let step = tick_step(self.max);
        let mut tick = 0;
        while tick <= self.max.max(1) {
            let y = f64::from(base) - tick as f64 * self.scale();
            let _ = writeln!(
                out,
                r##"<line x1="{LEFT}" y1="{y}" x2="{right}" y2="{y}" stroke="#dddddd"/><text x="{}" y="{}" text-anchor="end">{tick}</text>"##,
                LEFT - 6,
                y + 4.0
            );
            tick += step;
        }
        let _ = writeln!(
            out,
            r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{base}" stroke="black"/><line x1="{LEFT}" y1="{base}" x2="{right}" y2="{base}" stroke="black"/>"#
        );
    }

    /// Opens the data group: x in pixels, y in counts pointing up.
    fn open_data(&self, out: &mut String) {
        let _ = writeln!(
            out,
            r#"<g transform="translate(0 {}) scale(1 {})">"#,
            TOP + PLOT_HEIGHT,
            -self.scale()
        );
    }

    fn slot_x(i: usize) -> u32 {
        LEFT + i as u32 * SLOT + (SLOT - BAR) / 2
    }

    fn x_label(&self, out: &mut String, i: usize, label: &str) {
        let x = Self::slot_x(i) + BAR / 2 + 4;
        let y = TOP + PLOT_HEIGHT + 8;
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" text-anchor="end" transform="rotate(-90 {x} {y})">{}</text>"#,
            escape(label)
        );
    }
}

fn segment(out: &mut String, x: u32, base: u64, value: u64, fill: &str, label: &str) {
    let _ = writeln!(
        out,
        r#"<rect x="{x}" y="{base}" width="{BAR}" height="{value}" fill="{fill}"><title>{}: {value}</title></rect>"#,
        escape(label)
    );
}

/// One bar per feature column, in column order.
pub fn render_bar(row: &AggregateRow, title: &str) -> String {
    let frame = Frame {
        slots: COLUMN_COUNT as u32,
        max: row.max(),
    };
    let mut out = String::new();
    frame.open(&mut out, title);
    frame.open_data(&mut out);
    for (i, (&column, &value)) in QUIRING_COLUMNS.iter().zip(&row.sums).enumerate() {
        segment(&mut out, Frame::slot_x(i), 0, value, "#1f77b4", column);
    }
    out.push_str("</g>\n");
    for (i, column) in QUIRING_COLUMNS.iter().enumerate() {
        frame.x_label(&mut out, i, column);
    }
    out.push_str("</svg>\n");
    out
}

/// One stacked bar per table row; segments follow column order, colored by
/// [`column_color`].
pub fn render_stacked(table: &AggregateTable, title: &str) -> String {
    let totals = table.rows().iter().map(|r| r.sums.iter().sum::<u64>());
    let frame = Frame {
        slots: table.len() as u32,
        max: totals.max().unwrap_or(0),
    };
    let mut out = String::new();
    frame.open(&mut out, title);
    frame.open_data(&mut out);
    for (i, row) in table.rows().iter().enumerate() {
        let x = Frame::slot_x(i);
        let mut base = 0;
        for (c, (&column, &value)) in QUIRING_COLUMNS.iter().zip(&row.sums).enumerate() {
            segment(&mut out, x, base, value, &column_color(c), &format!("{} {column}", row.label));
            base += value;
        }
    }
    out.push_str("</g>\n");
    for (i, row) in table.rows().iter().enumerate() {
        frame.x_label(&mut out, i, &row.label);
    }
    out.push_str("</svg>\n");
    out
}

/// Color key for stacked charts, as its own document.
pub fn render_legend(title: &str) -> String {
    const ROW: u32 = 18;
    let (w, h) = (200, 50 + ROW * COLUMN_COUNT as u32);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="12" y="26" font-size="15">{}</text>"#, escape(title));
    for (i, column) in QUIRING_COLUMNS.iter().enumerate() {
        let y = 40 + ROW * i as u32;
        let _ = writeln!(
            out,
            r#"<rect x="12" y="{y}" width="14" height="14" fill="{}"/><text x="34" y="{}">{}</text>"#,
            column_color(i),
            y + 11,
            escape(column)
        );
    }
    out.push_str("</svg>\n");
    out
}
