use std::fmt::Write;

use super::model::{ModelFile, Observable};
use crate::C64;

fn real(v: f64) -> String {
    format!("{v:?}")
}

fn complex(z: C64) -> String {
    if z.im == 0.0 {
        real(z.re)
    } else {
        format!("{}:{}", real(z.re), real(z.im))
    }
}

/// Canonical text: `levels`, then `ham`, `src`, `deph` in sorted `(i, j)`
/// order, then the sweep and observables. Zero coefficients are omitted.
pub fn serialize_model(model: &ModelFile) -> String {
    let mut out = String::new();
    writeln!(out, "levels {}", model.n_levels).unwrap();
    for (&(i, j), c) in &model.ham {
        if c.is_zero() {
            continue;
        }
        write!(out, "ham {i} {j} {}", complex(c.c0)).unwrap();
        if c.c1 != C64::new(0.0, 0.0) {
            write!(out, " {}", complex(c.c1)).unwrap();
        }
        out.push('\n');
    }
    for (keyword, table) in [("src", &model.src), ("deph", &model.deph)] {
        for (&(i, j), c) in table {
            if c.is_zero() {
                continue;
            }
            write!(out, "{keyword} {i} {j} {}", real(c.c0)).unwrap();
            if c.c1 != 0.0 {
                write!(out, " {}", real(c.c1)).unwrap();
            }
            out.push('\n');
        }
    }
    if let Some(s) = &model.sweep {
        writeln!(
            out,
            "sweep {} {} {} {}",
            s.name,
            real(s.from),
            real(s.to),
            s.points
        )
        .unwrap();
    }
    for obs in &model.observables {
        match obs {
            Observable::Pop(k) => writeln!(out, "observe pop {k}"),
            Observable::Coh(i, j) => writeln!(out, "observe coh {i} {j}"),
            Observable::Waveplate => writeln!(out, "observe waveplate"),
        }
        .unwrap();
    }
    out
}
