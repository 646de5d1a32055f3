//! Static SVG rendering of density histograms and hexbin maps. Output is a
//! pure function of its input, with coordinates printed to two decimals.

use std::fmt::Write as _;

use agree2x2::study::{DensityBins, HexbinGrid};

const W: f64 = 640.0;
const H: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(out: &mut String, comments: &[String], title: &str) {
    for c in comments {
        writeln!(out, "<!-- {} -->", escape(c).replace("--", "- -")).unwrap();
    }
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(out, r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#, W / 2.0, escape(title))
        .unwrap();
}

struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
}

fn frame(out: &mut String, x: &Axis, y: &Axis, x_label: &str, y_label: &str) {
    writeln!(
        out,
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444"/>"##,
        x.px_lo,
        y.px_hi,
        x.px_hi - x.px_lo,
        y.px_lo - y.px_hi
    )
    .unwrap();
    for t in ticks(x.lo, x.hi) {
        let px = x.map(t);
        writeln!(
            out,
            r##"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="#444"/>"##,
            y.px_lo,
            y.px_lo + 5.0
        )
        .unwrap();
        writeln!(out, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{t:.2}</text>"#, y.px_lo + 18.0).unwrap();
    }
    for t in ticks(y.lo, y.hi) {
        let py = y.map(t);
        writeln!(
            out,
            r##"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#444"/>"##,
            x.px_lo - 5.0,
            x.px_lo
        )
        .unwrap();
        writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, x.px_lo - 8.0, py + 4.0, fmt_tick(t))
            .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (x.px_lo + x.px_hi) / 2.0,
        H - 18.0,
        escape(x_label)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        (y.px_lo + y.px_hi) / 2.0,
        (y.px_lo + y.px_hi) / 2.0,
        escape(y_label)
    )
    .unwrap();
}

fn fmt_tick(v: f64) -> String {
    if v.abs() >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

/// Correct decisions drawn above the axis, mistakes mirrored below it, with
/// the benchmark's H0 band shaded.
pub fn density_svg(d: &DensityBins, comments: &[String]) -> String {
    let mut out = String::new();
    let title = format!("{} against benchmark {}", d.procedure.name(), d.benchmark.name());
    open(&mut out, comments, &title);
    let peak = (0..d.correct.len()).map(|k| d.mass(k).0.max(d.mass(k).1)).fold(0.0, f64::max).max(1e-12);
    let x = Axis { lo: 0.0, hi: 1.0, px_lo: LEFT, px_hi: W - RIGHT };
    let y = Axis { lo: -peak, hi: peak, px_lo: H - BOTTOM, px_hi: TOP };
    if let Some((lo, hi)) = d.h0_band {
        let (x0, x1) = (x.map(lo - d.bin_width / 2.0), x.map(hi + d.bin_width / 2.0));
        writeln!(
            out,
            r##"<rect class="h0-band" x="{x0:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#e8e8e8"/>"##,
            y.px_hi,
            x1 - x0,
            y.px_lo - y.px_hi
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">H0 [{lo:.3}, {hi:.3}]</text>"#,
            (x0 + x1) / 2.0,
            y.px_hi + 14.0
        )
        .unwrap();
    }
    let zero = y.map(0.0);
    let bar = (x.map(d.bin_width) - x.map(0.0)).max(0.5);
    for k in 0..d.correct.len() {
        let (c, m) = d.mass(k);
        let cx = x.map(d.bin_center(k)) - bar / 2.0;
        if c > 0.0 {
            let top = y.map(c);
            writeln!(
                out,
                r##"<rect x="{cx:.2}" y="{top:.2}" width="{bar:.2}" height="{:.2}" fill="#3b6ea5"/>"##,
                zero - top
            )
            .unwrap();
        }
        if m > 0.0 {
            writeln!(
                out,
                r##"<rect x="{cx:.2}" y="{zero:.2}" width="{bar:.2}" height="{:.2}" fill="#c0392b"/>"##,
                y.map(-m) - zero
            )
            .unwrap();
        }
    }
    writeln!(out, r##"<line x1="{:.2}" y1="{zero:.2}" x2="{:.2}" y2="{zero:.2}" stroke="#444"/>"##, x.px_lo, x.px_hi)
        .unwrap();
    frame(&mut out, &x, &y, "(a+d)/n", "mass: correct (up), mistakes (down)");
    let correct: u64 = d.correct.iter().sum();
    let mistakes: u64 = d.mistakes.iter().sum();
    writeln!(
        out,
        r#"<text x="{:.2}" y="40" text-anchor="middle">correct {correct}, mistakes {mistakes}, fails {}, excluded {}</text>"#,
        W / 2.0,
        d.fails,
        d.excluded
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

/// Hexagons shaded by log count; the bisector is drawn for estimators on
/// G's scale.
pub fn hexbin_svg(g: &HexbinGrid, comments: &[String]) -> String {
    let mut out = String::new();
    open(&mut out, comments, &format!("{} against G", g.estimator.label()));
    let r = g.geometry.radius();
    let centers: Vec<((f64, f64), u64)> = g.counts.iter().map(|(&(q, rr), &n)| (g.geometry.center(q, rr), n)).collect();
    let (mut ylo, mut yhi) = if g.estimator.is_signed() { (-1.0, 1.0) } else { (0.0, 1.0) };
    for ((_, cy), _) in &centers {
        ylo = f64::min(ylo, cy - r);
        yhi = f64::max(yhi, cy + r);
    }
    let x = Axis { lo: -1.0 - r, hi: 1.0 + r, px_lo: LEFT, px_hi: W - RIGHT };
    let y = Axis { lo: ylo, hi: yhi, px_lo: H - BOTTOM, px_hi: TOP };
    let max = centers.iter().map(|c| c.1).max().unwrap_or(1) as f64;
    for ((cx, cy), n) in &centers {
        let shade = if max > 1.0 { (*n as f64).ln_1p() / max.ln_1p() } else { 1.0 };
        let level = (225.0 * (1.0 - shade)).round() as u8;
        let points: Vec<String> = (0..6)
            .map(|k| {
                let angle = std::f64::consts::PI / 180.0 * (60.0 * k as f64 - 90.0);
                format!("{:.2},{:.2}", x.map(cx + r * angle.cos()), y.map(cy + r * angle.sin()))
            })
            .collect();
        writeln!(
            out,
            r#"<polygon points="{}" fill="rgb({level},{level},{level})"><title>{n}</title></polygon>"#,
            points.join(" ")
        )
        .unwrap();
    }
    if g.estimator.is_signed() {
        writeln!(
            out,
            r##"<line class="bisector" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" stroke-dasharray="4 3"/>"##,
            x.map(-1.0),
            y.map(-1.0),
            x.map(1.0),
            y.map(1.0)
        )
        .unwrap();
    }
    frame(&mut out, &x, &y, "Holley and Guilford's G", g.estimator.label());
    writeln!(
        out,
        r#"<text x="{:.2}" y="40" text-anchor="middle">total = {}, non-computable = {}</text>"#,
        W / 2.0,
        g.computable(),
        g.failed
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
