//! Bigraded charts: cones and towers on the `(p, q)` plane, as SVG with the
//! source data embedded, or as a plain-text grid.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use equicones::barss::{Annotation, Page, SummandMap};
use equicones::coeffs::{BiDegree, GradedModule, Region, Summand, SummandKind};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// Everything a chart shows. This is also the metadata embedded in SVG output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub region: Region,
    /// Summands by filtration.
    pub modules: BTreeMap<usize, GradedModule>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<SummandMap>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
}

impl Chart {
    /// No summands: axes only.
    pub fn empty(region: Region) -> Chart {
        Chart {
            region,
            modules: BTreeMap::new(),
            d: Vec::new(),
            annotations: Vec::new(),
        }
    }

    pub fn from_page(page: &Page, region: Region) -> Chart {
        Chart {
            region,
            modules: page.filtrations.clone(),
            d: page.d.clone(),
            annotations: page.annotations.clone(),
        }
    }

    /// Reads a chart, a page, an `E²` table, a command output holding one of
    /// these, or a bare graded module.
    pub fn from_json(text: &str, region: Option<Region>) -> Result<Chart, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        Chart::from_value(&v, region)
    }

    fn from_value(v: &Value, region: Option<Region>) -> Result<Chart, CliError> {
        let bad = |e: serde_json::Error| CliError::Input(e.to_string());
        let get_region = |v: &Value| -> Result<Region, CliError> {
            if let Some(r) = region {
                return Ok(r);
            }
            match v.get("region") {
                Some(r) if !r.is_null() => serde_json::from_value(r.clone()).map_err(bad),
                _ => Err(CliError::Usage("input has no region; pass --region".into())),
            }
        };
        if v.get("modules").is_some() {
            let mut c: Chart = serde_json::from_value(v.clone()).map_err(bad)?;
            if let Some(r) = region {
                c.region = r;
            }
            return Ok(c);
        }
        for key in ["e1", "e2"] {
            if let Some(inner) = v.get(key) {
                let outer = v.get("region").and_then(|r| serde_json::from_value(r.clone()).ok());
                return Chart::from_value(inner, region.or(outer));
            }
        }
        if v.get("filtrations").is_some() {
            let page: Page = serde_json::from_value(v.clone()).map_err(bad)?;
            return Ok(Chart::from_page(&page, get_region(v)?));
        }
        if let Some(m) = v.get("module") {
            let annotations = match v.get("annotations") {
                Some(a) => serde_json::from_value(a.clone()).map_err(bad)?,
                None => Vec::new(),
            };
            return Ok(Chart {
                region: get_region(v)?,
                modules: serde_json::from_value(m.clone()).map_err(bad)?,
                d: Vec::new(),
                annotations,
            });
        }
        if v.get("summands").is_some() {
            let m: GradedModule = serde_json::from_value(v.clone()).map_err(bad)?;
            return Ok(Chart {
                modules: BTreeMap::from([(0, m)]),
                ..Chart::empty(get_region(v)?)
            });
        }
        Err(CliError::Input("not a chart, page, E2 table or module".into()))
    }

    fn summands(&self) -> impl Iterator<Item = (usize, &Summand)> {
        self.modules.iter().flat_map(|(&t, m)| m.summands.iter().map(move |s| (t, s)))
    }

    fn anchor(&self, label: &str) -> Option<BiDegree> {
        self.summands().find(|(_, s)| s.label == label).map(|(_, s)| match s.kind {
            SummandKind::FreeCone { shift } => shift,
            SummandKind::InducedTower { p0 } => BiDegree::new(p0, self.region.q_min.max(0)),
        })
    }
}

const UNIT: i64 = 40;
const MARGIN: i64 = 50;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn unescape(s: &str) -> String {
    s.replace("&lt;", "<").replace("&gt;", ">").replace("&amp;", "&")
}

/// Clips the ray `from + k·dir`, `k ≥ 0`, to the region; `None` if it misses.
fn clip_ray(r: &Region, from: (i64, i64), dir: (i64, i64)) -> Option<((i64, i64), (i64, i64))> {
    let inside = |(p, q): (i64, i64)| r.contains(BiDegree::new(p, q));
    let span = (r.p_max - r.p_min) + (r.q_max - r.q_min) + 4;
    let pts: Vec<(i64, i64)> = (0..=span)
        .map(|k| (from.0 + k * dir.0, from.1 + k * dir.1))
        .filter(|&x| inside(x))
        .collect();
    Some((*pts.first()?, *pts.last()?))
}

/// SVG rendering: `p` to the right, `q` up; a cone is its two corner glyphs,
/// a tower a full vertical line, a differential an arrow.
pub fn to_svg(c: &Chart) -> String {
    let r = c.region;
    let w = (r.p_max - r.p_min) * UNIT + 2 * MARGIN;
    let h = (r.q_max - r.q_min) * UNIT + 2 * MARGIN;
    let x = |p: i64| MARGIN + (p - r.p_min) * UNIT;
    let y = |q: i64| MARGIN + (r.q_max - q) * UNIT;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let meta = serde_json::to_string(c).expect("chart serializes");
    let _ = writeln!(s, r#"<metadata id="equicones">{}</metadata>"#, escape(&meta));
    let _ = writeln!(
        s,
        r#"<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>"#
    );
    let _ = writeln!(s, r#"<g stroke="gray" stroke-width="1" font-family="monospace" font-size="10">"#);
    for p in r.p_min..=r.p_max {
        let _ = writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke-opacity="0.2"/>"#, x(p), y(r.q_max), y(r.q_min));
        let _ = writeln!(s, r#"<text x="{}" y="{}" stroke="none" text-anchor="middle">{p}</text>"#, x(p), y(r.q_min) + 16);
    }
    for q in r.q_min..=r.q_max {
        let _ = writeln!(s, r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke-opacity="0.2"/>"#, x(r.p_min), y(q), x(r.p_max));
        let _ = writeln!(s, r#"<text x="{}" y="{}" stroke="none" text-anchor="end">{q}</text>"#, x(r.p_min) - 8, y(q) + 4);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="2" fill="none">"#);
    for (t, sm) in c.summands() {
        let label = escape(&sm.label);
        match sm.kind {
            SummandKind::FreeCone { shift } => {
                let upper = (shift.p, shift.q + 2);
                for (from, dir) in [
                    ((shift.p, shift.q), (0, -1)),
                    ((shift.p, shift.q), (-1, -1)),
                    (upper, (0, 1)),
                    (upper, (1, 1)),
                ] {
                    if let Some((a, b)) = clip_ray(&r, from, dir) {
                        let _ = writeln!(
                            s,
                            r#"<line class="cone" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                            x(a.0), y(a.1), x(b.0), y(b.1)
                        );
                    }
                }
                if r.contains(shift) {
                    let _ = writeln!(
                        s,
                        r#"<text x="{}" y="{}" stroke="none" fill="blue" font-size="9">{label} t={t}</text>"#,
                        x(shift.p) + 4,
                        y(shift.q) + 12
                    );
                }
            }
            SummandKind::InducedTower { p0 } => {
                if (r.p_min..=r.p_max).contains(&p0) {
                    let _ = writeln!(
                        s,
                        r#"<line class="tower" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="goldenrod"/>"#,
                        x(p0), y(r.q_max), y(r.q_min)
                    );
                    let _ = writeln!(
                        s,
                        r#"<text x="{}" y="{}" stroke="none" fill="goldenrod" font-size="9">{label} t={t}</text>"#,
                        x(p0) + 4,
                        y(r.q_min) - 4
                    );
                }
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="green" stroke-width="1.5" marker-end="url(#arrow)">"#);
    for m in &c.d {
        if let (Some(a), Some(b)) = (c.anchor(&m.from), c.anchor(&m.to)) {
            let _ = writeln!(
                s,
                r#"<line class="d" x1="{}" y1="{}" x2="{}" y2="{}"><title>d: {} → {}</title></line>"#,
                x(a.p), y(a.q), x(b.p), y(b.q), escape(&m.from), escape(&m.to)
            );
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

/// Recovers the chart embedded in an SVG produced by [`to_svg`].
pub fn from_svg(svg: &str) -> Result<Chart, CliError> {
    let open = r#"<metadata id="equicones">"#;
    let start = svg.find(open).ok_or_else(|| CliError::Input("no chart metadata".into()))? + open.len();
    let end = svg[start..]
        .find("</metadata>")
        .ok_or_else(|| CliError::Input("unterminated chart metadata".into()))?;
    serde_json::from_str(&unescape(&svg[start..start + end])).map_err(|e| CliError::Input(e.to_string()))
}

/// Plain-text grid, one character per bidegree, `q` increasing downward so
/// that cone edges read as `\`: `o` cone apex, `|` `u`-edge, `\` `a`-edge,
/// `‖` tower, `#` where several summands overlap.
pub fn to_ascii(c: &Chart) -> String {
    let r = c.region;
    let cols = (r.p_max - r.p_min + 1) as usize;
    let rows = (r.q_max - r.q_min + 1) as usize;
    let mut grid = vec![vec![' '; cols]; rows];
    let mut put = |p: i64, q: i64, ch: char| {
        if !r.contains(BiDegree::new(p, q)) {
            return;
        }
        let cell = &mut grid[(q - r.q_min) as usize][(p - r.p_min) as usize];
        *cell = match *cell {
            ' ' => ch,
            old if old == ch => ch,
            _ => '#',
        };
    };
    for (_, sm) in c.summands() {
        match sm.kind {
            SummandKind::FreeCone { shift } => {
                put(shift.p, shift.q, 'o');
                put(shift.p, shift.q + 2, 'o');
                for k in 1..=(rows + cols) as i64 {
                    put(shift.p, shift.q - k, '|');
                    put(shift.p - k, shift.q - k, '\\');
                    put(shift.p, shift.q + 2 + k, '|');
                    put(shift.p + k, shift.q + 2 + k, '\\');
                }
            }
            SummandKind::InducedTower { p0 } => {
                for q in r.q_min..=r.q_max {
                    put(p0, q, '‖');
                }
            }
        }
    }
    let mut s = String::new();
    let _ = writeln!(s, "region p {}..{} (right), q {}..{} (down)", r.p_min, r.p_max, r.q_min, r.q_max);
    for (i, row) in grid.iter().enumerate() {
        let q = r.q_min + i as i64;
        let line: String = row.iter().collect();
        let _ = writeln!(s, "{q:>4} {}", line.trim_end());
    }
    for (t, sm) in c.summands() {
        match sm.kind {
            SummandKind::FreeCone { shift } => {
                let _ = writeln!(s, "t={t} cone {shift} {}", sm.label);
            }
            SummandKind::InducedTower { p0 } => {
                let _ = writeln!(s, "t={t} tower p={p0} {}", sm.label);
            }
        }
    }
    for m in &c.d {
        let _ = writeln!(s, "d {} -> {}", m.from, m.to);
    }
    for a in &c.annotations {
        let _ = writeln!(s, "{} {} by {}", a.kind, a.target, a.shift);
    }
    s
}
