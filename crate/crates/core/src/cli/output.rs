//! CSV and SVG rendering. Everything is built in memory and written in one
//! go, so output bytes depend only on the inputs.

use std::fmt::Write as _;

use crate::transfer::{DesignPoint, Trajectory};

pub const TRAJECTORY_HEADER: &str = "t,F_pop,U2,U4,U6";
pub const SWEEP_HEADER: &str = "delta,t_star,quality,max_f_pop,feasible";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut s = String::with_capacity(96 * (traj.len() + 1));
    s.push_str(TRAJECTORY_HEADER);
    s.push('\n');
    for p in traj.points() {
        let _ = writeln!(s, "{},{},{},{},{}", num(p.t), num(p.f_pop), num(p.u2), num(p.u4), num(p.u6));
    }
    s
}

pub fn sweep_csv(points: &[DesignPoint]) -> String {
    let mut s = String::new();
    s.push_str(SWEEP_HEADER);
    s.push('\n');
    for p in points {
        let r = &p.result;
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            num(p.delta),
            num(r.t_star),
            num(r.quality),
            num(r.max_f_pop),
            p.feasible
        );
    }
    s
}

pub const SVG_WIDTH: f64 = 960.0;
pub const SVG_HEIGHT: f64 = 540.0;

/// Curve names and stroke colours, in drawing order.
pub const CURVES: [(&str, &str); 4] = [
    ("F", "#1f77b4"),
    ("U2", "#e6b800"),
    ("U4", "#d62728"),
    ("U6", "#2ca02c"),
];

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Line plot of the four population curves against time, populations on a
/// fixed `[0, 1]` axis.
pub fn trajectory_svg(traj: &Trajectory) -> String {
    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let t0 = traj.times.first().copied().unwrap_or(0.0);
    let t1 = traj.times.last().copied().unwrap_or(1.0);
    let span = if t1 > t0 { t1 - t0 } else { 1.0 };
    let x = |t: f64| MARGIN_LEFT + (t - t0) / span * plot_w;
    let y = |v: f64| MARGIN_TOP + (1.0 - v.clamp(0.0, 1.0)) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let v = k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">{v:.2}</text>"#,
            MARGIN_LEFT - 8.0,
            y(v) + 4.0
        );
        let tick = t0 + v * span;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            x(tick),
            SVG_HEIGHT - MARGIN_BOTTOM + 20.0,
            trim_tick(tick)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">t</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        SVG_HEIGHT - 15.0
    );

    let series: [&[f64]; 4] = [&traj.f_pop, &traj.u2, &traj.u4, &traj.u6];
    for ((_, colour), values) in CURVES.iter().zip(series) {
        s.push_str(r#"<polyline fill="none" stroke=""#);
        s.push_str(colour);
        s.push_str(r#"" stroke-width="1.5" points=""#);
        for (i, (&t, &v)) in traj.times.iter().zip(values).enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{:.2},{:.2}", x(t), y(v));
        }
        s.push_str("\"/>\n");
    }

    let lx = SVG_WIDTH - MARGIN_RIGHT - 90.0;
    for (i, (name, colour)) in CURVES.iter().enumerate() {
        let ly = MARGIN_TOP + 20.0 + 20.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="3"/>"#,
            lx + 25.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{name}</text>"#,
            lx + 32.0,
            ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn trim_tick(t: f64) -> String {
    let s = format!("{t:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
