//! Reference figure set checked into `tests/golden`.

use std::path::{Path, PathBuf};

use chabauty::{Param, SequenceSchedule};

use crate::figures::{emit, FigureSpec};
use crate::svg::strip_stamp;

/// Environment variable that makes golden comparisons rewrite the files.
pub const UPDATE_ENV: &str = "UPDATE_GOLDEN";

pub fn cases() -> Vec<(&'static str, FigureSpec)> {
    vec![
        (
            "line_points_shrinking",
            FigureSpec::LinePoints {
                r: vec![1.0, 0.1],
                radius: 50.0,
            },
        ),
        (
            "line_points_growing",
            FigureSpec::LinePoints {
                r: vec![10.0, 100.0],
                radius: 2000.0,
            },
        ),
        ("d_bouquet", FigureSpec::DBouquet { m_max: 4 }),
        (
            "pinching",
            FigureSpec::Pinching {
                m: 2,
                p: 1,
                q: 3,
                slopes: vec![-2.0, -1.0, 0.0, 1.0, 2.0],
            },
        ),
        ("layer", FigureSpec::Layer { m: 2, q_max: 4 }),
        (
            "decay_curve",
            FigureSpec::DecayCurve {
                schedule: SequenceSchedule::R {
                    r: Param::Diverge { a: 1.0, k: 1.0 },
                },
                n: vec![10, 100, 1000],
                radius: 1e4,
                step: 1.0,
            },
        ),
    ]
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Renders one case and compares it, build stamp excluded, with its golden
/// file. With `UPDATE_GOLDEN=1` the file is rewritten instead.
pub fn check(name: &str, spec: &FigureSpec) -> Result<(), String> {
    let svg = emit(spec).map_err(|e| format!("{name}: {e}"))?.svg;
    let path = golden_dir().join(format!("{name}.svg"));
    if std::env::var(UPDATE_ENV).is_ok_and(|v| v == "1") {
        std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
        std::fs::write(&path, &svg).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if strip_stamp(&expected) == strip_stamp(&svg) {
        Ok(())
    } else {
        Err(format!("{name}: output differs from {}", path.display()))
    }
}
