//! SVG figures: lattice pictures on the compactified line, the D-bouquet,
//! the pinching of a boundary point, layers of the Chabauty space of `C*`,
//! and convergence decay curves.
//!
//! Every numeric annotation is computed here from the library (samples and
//! the limit classifier), never typed in by hand.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use chabauty::format::fmt_real;
use chabauty::{
    classify, sample_r_subgroup, verify_convergence, CStarSubgroup, CompactPoint, DecayTable,
    ExtendedReal, MLimit, RSubgroup, Rational, SequenceSchedule, SequenceSpec, Subgroup,
    ThetaLimit,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::svg::Svg;

/// Width of one line-points panel.
pub const LINE_PANEL: f64 = 240.0;
/// Radius of the circle picturing the compactified line.
pub const LINE_RADIUS: f64 = 90.0;
/// Radius of the first (m = 1) bouquet petal; petal `m` has radius `BOUQUET_RADIUS / m`.
pub const BOUQUET_RADIUS: f64 = 120.0;
/// Position of the bouquet wedge point.
pub const BOUQUET_WEDGE: (f64, f64) = (200.0, 40.0);
/// Layer cone: left edge x, cone point x, top and bottom of the left edge.
pub const LAYER_LEFT: f64 = 120.0;
pub const LAYER_APEX: f64 = 460.0;
pub const LAYER_TOP: f64 = 40.0;
pub const LAYER_BOTTOM: f64 = 400.0;
/// Width of one pinching panel.
pub const PINCH_PANEL: f64 = 200.0;
/// Decay plot frame.
pub const PLOT_SIZE: (f64, f64) = (520.0, 360.0);
pub const PLOT_MARGIN: f64 = 60.0;

const INK: &str = r#"stroke="black" stroke-width="1.2""#;
const DOT: &str = r#"fill="black""#;
const RED: &str = r##"fill="#c0392b""##;
const ORANGE_STROKE: &str = r##"stroke="#e67e22" stroke-width="1.2""##;
const ORANGE: &str = r##"fill="#e67e22""##;

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("the D-bouquet needs m_max >= 1")]
    EmptyBouquet,
    #[error("invalid figure parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Engine(#[from] chabauty::Error),
}

pub type Result<T> = std::result::Result<T, FigureError>;

fn default_line_radius() -> f64 {
    50.0
}

fn default_slopes() -> Vec<f64> {
    vec![-2.0, -1.0, 0.0, 1.0, 2.0]
}

/// A figure request, as it appears in config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FigureSpec {
    /// `G_r` on the compactified line for each `r`.
    LinePoints {
        r: Vec<f64>,
        #[serde(default = "default_line_radius")]
        radius: f64,
    },
    DBouquet {
        m_max: u32,
    },
    /// Blow-up and pinching of the boundary point `2iπ p/q` of layer `m`.
    Pinching {
        m: u32,
        p: i64,
        q: i64,
        #[serde(default = "default_slopes")]
        slopes: Vec<f64>,
    },
    Layer {
        m: u32,
        q_max: u32,
    },
    DecayCurve {
        schedule: SequenceSchedule,
        n: Vec<u64>,
        radius: f64,
        step: f64,
    },
}

/// A rendered figure plus its underlying data.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub svg: String,
    pub csv: String,
    pub meta: serde_json::Value,
}

pub fn emit(spec: &FigureSpec) -> Result<Figure> {
    match spec {
        FigureSpec::LinePoints { r, radius } => emit_line_points(r, *radius),
        FigureSpec::DBouquet { m_max } => emit_d_bouquet(*m_max),
        FigureSpec::Pinching { m, p, q, slopes } => emit_pinching(*m, *p, *q, slopes),
        FigureSpec::Layer { m, q_max } => emit_layer(*m, *q_max),
        FigureSpec::DecayCurve {
            schedule,
            n,
            radius,
            step,
        } => {
            let table = verify_convergence(schedule, n, *radius, *step)?;
            Ok(emit_decay_curve(&table))
        }
    }
}

fn short(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Dots of `G_r ∩ [-R, R]` and `∞` on the circle `φ = 2 atan x`; `0` at the
/// bottom, `∞` at the top.
pub fn emit_line_points(rs: &[f64], radius: f64) -> Result<Figure> {
    if rs.is_empty() {
        return Err(FigureError::InvalidParameter(
            "line-points needs at least one r".into(),
        ));
    }
    let mut svg = Svg::new(LINE_PANEL * rs.len() as f64, 2.0 * LINE_RADIUS + 90.0);
    let mut csv = String::from("r,x,is_infinity\n");
    let mut counts = Vec::new();
    for (i, &r) in rs.iter().enumerate() {
        let g = RSubgroup::generated_by(r)?;
        let sample = sample_r_subgroup(&g, radius, 1.0)?;
        let (cx, cy) = (LINE_PANEL * (i as f64 + 0.5), LINE_RADIUS + 30.0);
        svg.circle(
            cx,
            cy,
            LINE_RADIUS,
            r#"fill="none" stroke="gray" stroke-width="1""#,
        );
        for p in sample.points() {
            let (phi, style, row) = match *p {
                CompactPoint::Line(x) => (
                    2.0 * x.atan(),
                    DOT,
                    format!("{},{},0", fmt_real(r), fmt_real(x)),
                ),
                _ => (PI, RED, format!("{},,1", fmt_real(r))),
            };
            svg.circle(
                cx + LINE_RADIUS * phi.sin(),
                cy + LINE_RADIUS * phi.cos(),
                2.0,
                style,
            );
            let _ = writeln!(csv, "{row}");
        }
        svg.text(cx, cy - LINE_RADIUS - 8.0, 13.0, "middle", "∞");
        svg.text(cx, cy + LINE_RADIUS + 18.0, 13.0, "middle", "0");
        svg.label(
            cx,
            cy + LINE_RADIUS + 46.0,
            "group",
            &format!("G_{}", short(r)),
        );
        counts.push(sample.len());
    }
    Ok(Figure {
        svg: svg.finish(),
        csv,
        meta: serde_json::json!({ "kind": "line-points", "r": rs, "radius": radius, "points": counts }),
    })
}

/// One circle per `m ≤ m_max` through a common wedge point (the subgroup `C`),
/// radius proportional to `1/m`. The slope `t` sits at angle `2 atan t` from
/// the point opposite the wedge, so `t → ±∞` runs into the wedge.
pub fn emit_d_bouquet(m_max: u32) -> Result<Figure> {
    if m_max == 0 {
        return Err(FigureError::EmptyBouquet);
    }
    let (wx, wy) = BOUQUET_WEDGE;
    let mut svg = Svg::new(2.0 * wx, wy + 2.0 * BOUQUET_RADIUS + 50.0);
    let mut csv = String::from("m,t,x,y\n");
    let wedge = cstar_label(&classify(&SequenceSpec::D {
        m_limit: MLimit::Finite(1),
        t_limit: ExtendedReal::PosInfinity,
    })?);
    for m in 1..=m_max {
        let r = BOUQUET_RADIUS / f64::from(m);
        let (cx, cy) = (wx, wy + r);
        svg.circle(
            cx,
            cy,
            r,
            r#"fill="none" stroke="black" stroke-width="1.2""#,
        );
        for t in [-1.0f64, 0.0, 1.0] {
            let a = 2.0 * t.atan();
            let (x, y) = (cx + r * a.sin(), cy + r * a.cos());
            svg.circle(x, y, 2.0, ORANGE);
            let _ = writeln!(csv, "{m},{},{},{}", short(t), short(x), short(y));
        }
        let petal = cstar_label(&classify(&SequenceSpec::D {
            m_limit: MLimit::Finite(m),
            t_limit: ExtendedReal::finite(0.0),
        })?);
        svg.label(cx, cy + r - 6.0, "petal", &petal);
    }
    svg.circle(wx, wy, 3.5, RED);
    svg.label(wx, wy - 10.0, "wedge", &wedge);
    Ok(Figure {
        svg: svg.finish(),
        csv,
        meta: serde_json::json!({ "kind": "d-bouquet", "m_max": m_max }),
    })
}

fn cstar_label(limit: &chabauty::ChabautyLimit) -> String {
    match limit.subgroup() {
        Subgroup::CStar(CStarSubgroup::D { m, .. }) => format!("D^{m}"),
        Subgroup::CStar(CStarSubgroup::Full) => "C".into(),
        other => other.to_string(),
    }
}

/// Index of the petal a degenerating `B^m` lattice with angle `θ` lands on.
pub fn petal_index(m: u32, theta: Rational) -> Result<u32> {
    let spec = SequenceSpec::B {
        m_limit: MLimit::Finite(m),
        re_limit: ExtendedReal::finite(0.0),
        theta: ThetaLimit::Rational(theta),
        t_limit: Some(ExtendedReal::finite(0.0)),
    };
    match classify(&spec)?.subgroup() {
        Subgroup::CStar(CStarSubgroup::D { m, .. }) => Ok(*m),
        other => Err(FigureError::InvalidParameter(format!(
            "unexpected limit {other}"
        ))),
    }
}

/// Reduced fractions `p/q` with `q ≤ q_max` in `[0, 1/m)`, ordered by `q` then `p`.
pub fn layer_marks(m: u32, q_max: u32) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=i64::from(q_max) {
        for p in 0..q {
            if let Ok(r) = Rational::new(p, q) {
                // p/q < 1/m  ⇔  p m < q
                if p * i64::from(m) < q {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// The `m`-th layer: `{x > 0} × [0, 2π/m)` drawn as a cone whose apex is
/// `A^m`. Rational boundary points carry their petal index `lcm(m, q)`; the
/// rest of the boundary goes to `C`.
pub fn emit_layer(m: u32, q_max: u32) -> Result<Figure> {
    if m == 0 || q_max == 0 {
        return Err(FigureError::InvalidParameter(
            "layer needs m >= 1 and q_max >= 1".into(),
        ));
    }
    let mid = (LAYER_TOP + LAYER_BOTTOM) / 2.0;
    let mut svg = Svg::new(LAYER_APEX + 80.0, LAYER_BOTTOM + 60.0);
    svg.polygon(
        &[
            (LAYER_LEFT, LAYER_TOP),
            (LAYER_APEX, mid),
            (LAYER_LEFT, LAYER_BOTTOM),
        ],
        r##"fill="#eef3f8" stroke="black" stroke-width="1.2""##,
    );
    // Irrational boundary points.
    svg.line(
        LAYER_LEFT,
        LAYER_TOP,
        LAYER_LEFT,
        LAYER_BOTTOM,
        r##"stroke="#7f8c8d" stroke-width="5""##,
    );
    let irrational = classify(&SequenceSpec::B {
        m_limit: MLimit::Finite(m),
        re_limit: ExtendedReal::finite(0.0),
        theta: ThetaLimit::Irrational,
        t_limit: None,
    })?;
    svg.label(LAYER_LEFT - 50.0, mid, "wedge", &cstar_label(&irrational));
    let apex = classify(&SequenceSpec::B {
        m_limit: MLimit::Finite(m),
        re_limit: ExtendedReal::PosInfinity,
        theta: ThetaLimit::Irrational,
        t_limit: None,
    })?;
    svg.circle(LAYER_APEX, mid, 3.5, DOT);
    svg.label(LAYER_APEX + 28.0, mid + 4.0, "apex", &apex.to_string());
    svg.text(
        (LAYER_LEFT + LAYER_APEX) / 2.0,
        LAYER_BOTTOM + 40.0,
        14.0,
        "middle",
        &format!("L_{m}"),
    );

    let mut csv = String::from("p,q,theta,petal\n");
    let mut petals = Vec::new();
    for theta in layer_marks(m, q_max) {
        let petal = petal_index(m, theta)?;
        let y = LAYER_BOTTOM - theta.to_f64() * f64::from(m) * (LAYER_BOTTOM - LAYER_TOP);
        svg.circle(LAYER_LEFT, y, 4.0, RED);
        svg.label(LAYER_LEFT - 22.0, y + 4.0, "theta", &theta.to_string());
        svg.label(LAYER_LEFT + 22.0, y + 4.0, "petal", &petal.to_string());
        let _ = writeln!(
            csv,
            "{},{},{},{petal}",
            theta.numer(),
            theta.denom(),
            fmt_real(theta.to_f64())
        );
        petals.push(petal);
    }
    Ok(Figure {
        svg: svg.finish(),
        csv,
        meta: serde_json::json!({ "kind": "layer", "m": m, "q_max": q_max, "petals": petals }),
    })
}

/// Four panels: the boundary point `2iπ p/q`, its blow-up to a segment of
/// slopes `t ∈ [-∞, ∞]` with constant-slope rays, the bent segment, and the
/// pinched circle `D^{lcm(m, q)}` whose pinch point is `C`.
pub fn emit_pinching(m: u32, p: i64, q: i64, slopes: &[f64]) -> Result<Figure> {
    if m == 0 {
        return Err(FigureError::InvalidParameter(
            "pinching needs m >= 1".into(),
        ));
    }
    let theta = Rational::new(p, q)?;
    let petal = petal_index(m, theta)?;
    let (top, bottom) = (40.0, 280.0);
    let mid = (top + bottom) / 2.0;
    let half = 70.0;
    // t ∈ [-∞, ∞] ↦ position along the blown-up segment.
    let along = |t: f64| (2.0 / PI) * t.atan();
    let mut svg = Svg::new(4.0 * PINCH_PANEL, bottom + 60.0);
    let mut csv = String::from("t,segment_offset\n");

    // Panels 1 and 2 show the cylinder near its left boundary.
    for k in 0..2 {
        let left = PINCH_PANEL * k as f64 + 50.0;
        svg.polygon(
            &[
                (left, top),
                (left + 140.0, top),
                (left + 140.0, bottom),
                (left, bottom),
            ],
            r##"fill="#eef3f8" stroke="none""##,
        );
        svg.line(left, top, left, bottom, INK);
    }
    let x1 = 50.0;
    svg.circle(x1, mid, 4.0, RED);
    svg.label(x1 + 40.0, mid + 4.0, "theta", &format!("2iπ·{theta}"));

    let x2 = PINCH_PANEL + 50.0;
    svg.line(
        x2,
        mid - half,
        x2,
        mid + half,
        r##"stroke="#c0392b" stroke-width="3""##,
    );
    for &t in slopes {
        let y = mid - half * along(t);
        let norm = t.hypot(1.0);
        let len = 110.0;
        svg.line(x2, y, x2 + len / norm, y - len * t / norm, ORANGE_STROKE);
        svg.circle(x2, y, 2.5, ORANGE);
        let _ = writeln!(csv, "{},{}", short(t), fmt_real(along(t)));
    }

    // Panels 3 and 4 put t at angle π·along(t) from the bottom, so both
    // infinite ends approach the top.
    let r3 = half * 0.8;
    let x3 = 2.0 * PINCH_PANEL + 50.0 + r3;
    let gap = 0.9;
    let arc: Vec<(f64, f64)> = (0..=64)
        .map(|i| {
            let a = (-1.0 + i as f64 / 32.0) * (PI - gap / 2.0);
            (x3 + r3 * a.sin(), mid + r3 * a.cos())
        })
        .collect();
    svg.polyline(&arc, r##"stroke="#c0392b" stroke-width="3""##);

    let (cx, cy) = (3.0 * PINCH_PANEL + 50.0 + r3, mid);
    svg.circle(
        cx,
        cy,
        r3,
        r##"fill="none" stroke="#c0392b" stroke-width="3""##,
    );
    for &t in slopes {
        let a = PI * along(t);
        svg.circle(
            x3 + r3 * (a * (1.0 - gap / TAU)).sin(),
            mid + r3 * (a * (1.0 - gap / TAU)).cos(),
            2.5,
            ORANGE,
        );
        svg.circle(cx + r3 * a.sin(), cy + r3 * a.cos(), 2.5, ORANGE);
    }
    svg.circle(cx, cy - r3, 4.0, DOT);
    let wedge = classify(&SequenceSpec::B {
        m_limit: MLimit::Finite(m),
        re_limit: ExtendedReal::finite(0.0),
        theta: ThetaLimit::Rational(theta),
        t_limit: Some(ExtendedReal::PosInfinity),
    })?;
    svg.label(cx, cy - r3 - 10.0, "wedge", &cstar_label(&wedge));
    svg.label(cx, cy + r3 + 20.0, "petal", &format!("D^{petal}"));
    Ok(Figure {
        svg: svg.finish(),
        csv,
        meta: serde_json::json!({ "kind": "pinching", "m": m, "theta": theta.to_string(), "petal": petal }),
    })
}

/// Log-log plot of `d_H` against `n`, with certified enclosures as bars.
pub fn emit_decay_curve(table: &DecayTable) -> Figure {
    let (w, h) = PLOT_SIZE;
    let mut svg = Svg::new(w, h);
    let floor = 1e-16;
    let logs: Vec<(f64, f64, f64, f64)> = table
        .rows
        .iter()
        .map(|r| {
            (
                (r.n.max(1) as f64).log10(),
                r.d_hausdorff.max(floor).log10(),
                r.interval_lo.max(floor).log10(),
                r.interval_hi.max(floor).log10(),
            )
        })
        .collect();
    let span = |vals: Vec<f64>| {
        vals.into_iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (nx0, nx1) = span(logs.iter().map(|v| v.0).collect());
    let (ny0, ny1) = span(logs.iter().flat_map(|v| [v.1, v.3]).collect());
    let (x0, x1) = (nx0.floor(), nx1.ceil().max(nx0.floor() + 1.0));
    let (y0, y1) = (ny0.floor(), ny1.ceil().max(ny0.floor() + 1.0));
    let px = |v: f64| PLOT_MARGIN + (v - x0) / (x1 - x0) * (w - 2.0 * PLOT_MARGIN);
    let py = |v: f64| h - PLOT_MARGIN - (v - y0) / (y1 - y0) * (h - 2.0 * PLOT_MARGIN);

    svg.line(px(x0), py(y0), px(x1), py(y0), INK);
    svg.line(px(x0), py(y0), px(x0), py(y1), INK);
    for e in (x0 as i64)..=(x1 as i64) {
        svg.line(px(e as f64), py(y0), px(e as f64), py(y0) + 5.0, INK);
        svg.text(
            px(e as f64),
            py(y0) + 20.0,
            12.0,
            "middle",
            &format!("1e{e}"),
        );
    }
    for e in (y0 as i64)..=(y1 as i64) {
        svg.line(px(x0) - 5.0, py(e as f64), px(x0), py(e as f64), INK);
        svg.text(
            px(x0) - 8.0,
            py(e as f64) + 4.0,
            12.0,
            "end",
            &format!("1e{e}"),
        );
    }
    svg.text(w / 2.0, h - 15.0, 14.0, "middle", "n");
    svg.text(18.0, h / 2.0, 14.0, "middle", "d_H");
    svg.label(w / 2.0, 25.0, "limit", &format!("limit {}", table.limit));

    for &(x, _, lo, hi) in &logs {
        svg.line(
            px(x),
            py(lo),
            px(x),
            py(hi),
            r#"stroke="gray" stroke-width="1""#,
        );
    }
    let pts: Vec<(f64, f64)> = logs.iter().map(|&(x, y, _, _)| (px(x), py(y))).collect();
    svg.polyline(&pts, INK);
    for &(x, y) in &pts {
        svg.circle(x, y, 3.0, DOT);
    }
    Figure {
        svg: svg.finish(),
        csv: table.to_csv(),
        meta: serde_json::json!({
            "kind": "decay-curve",
            "limit": table.limit,
            "decays_to_floor": table.decays_to_floor(),
        }),
    }
}
