use std::fmt::Write;

use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

impl Column {
    pub fn real(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: ColumnKind::Real,
        }
    }

    pub fn complex(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: ColumnKind::Complex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Complex(C64),
}

impl Value {
    pub fn nan(kind: ColumnKind) -> Self {
        match kind {
            ColumnKind::Real => Self::Real(f64::NAN),
            ColumnKind::Complex => Self::Complex(C64::new(f64::NAN, f64::NAN)),
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Self::Real(v) => Some(*v),
            Self::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> C64 {
        match self {
            Self::Real(v) => C64::new(*v, 0.0),
            Self::Complex(z) => *z,
        }
    }
}

/// Observable table over one scanned variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub variable: String,
    pub columns: Vec<Column>,
    pub rows: Vec<(f64, Vec<Value>)>,
}

impl SweepResult {
    pub fn new(variable: impl Into<String>, columns: Vec<Column>) -> Self {
        Self {
            variable: variable.into(),
            columns,
            rows: Vec::new(),
        }
    }

    /// Values of a real column, or the real part of a complex one.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c.name == name)?;
        Some(
            self.rows
                .iter()
                .map(|(_, v)| v[idx].as_complex().re)
                .collect(),
        )
    }

    pub fn xs(&self) -> Vec<f64> {
        self.rows.iter().map(|(x, _)| *x).collect()
    }
}

fn number(out: &mut String, v: f64) {
    if v.is_nan() {
        out.push_str("NaN");
    } else {
        write!(out, "{v:.16e}").unwrap();
    }
}

/// CSV with an `x` key column; see [`emit_csv_keyed`].
pub fn emit_csv(result: &SweepResult) -> String {
    emit_csv_keyed(result, "x")
}

/// CSV with `key` as the first header. Reals carry 17 significant digits;
/// complex columns are split into `<name>.re` and `<name>.im`.
pub fn emit_csv_keyed(result: &SweepResult, key: &str) -> String {
    let mut out = String::from(key);
    for c in &result.columns {
        match c.kind {
            ColumnKind::Real => write!(out, ",{}", c.name).unwrap(),
            ColumnKind::Complex => write!(out, ",{0}.re,{0}.im", c.name).unwrap(),
        }
    }
    out.push('\n');
    for (x, values) in &result.rows {
        number(&mut out, *x);
        for (col, v) in result.columns.iter().zip(values) {
            match (col.kind, v) {
                (ColumnKind::Real, v) => {
                    out.push(',');
                    number(&mut out, v.as_complex().re);
                }
                (ColumnKind::Complex, v) => {
                    let z = v.as_complex();
                    out.push(',');
                    number(&mut out, z.re);
                    out.push(',');
                    number(&mut out, z.im);
                }
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only() {
        let r = SweepResult::new("delta", vec![]);
        assert_eq!(emit_csv(&r), "x\n");
    }

    #[test]
    fn split_complex_and_precision() {
        let mut r = SweepResult::new("d", vec![Column::real("pop2"), Column::complex("coh1_2")]);
        r.rows.push((
            0.1,
            vec![Value::Real(1.0 / 3.0), Value::Complex(C64::new(-0.5, 0.25))],
        ));
        r.rows.push((0.2, vec![Value::nan(ColumnKind::Real), Value::nan(ColumnKind::Complex)]));
        let csv = emit_csv(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,pop2,coh1_2.re,coh1_2.im");
        assert_eq!(
            lines[1],
            "1.0000000000000001e-1,3.3333333333333331e-1,-5.0000000000000000e-1,2.5000000000000000e-1"
        );
        assert_eq!(lines[2], "2.0000000000000001e-1,NaN,NaN,NaN");
        let back: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }
}
