use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::spec::SystemSpec;
use crate::{CMatrix, RMatrix, C64};

/// `c0 + c1·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linear<T> {
    pub c0: T,
    pub c1: T,
}

impl Linear<C64> {
    pub fn eval(&self, x: f64) -> C64 {
        C64::new(self.c0.re + self.c1.re * x, self.c0.im + self.c1.im * x)
    }

    pub fn constant(c0: C64) -> Self {
        Self {
            c0,
            c1: C64::new(0.0, 0.0),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c0 == C64::new(0.0, 0.0) && self.c1 == C64::new(0.0, 0.0)
    }
}

impl Linear<f64> {
    pub fn eval(&self, x: f64) -> f64 {
        self.c0 + self.c1 * x
    }

    pub fn constant(c0: f64) -> Self {
        Self { c0, c1: 0.0 }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c0 == 0.0 && self.c1 == 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub name: String,
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl Sweep {
    /// Evenly spaced grid including both end points.
    pub fn grid(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let span = self.to - self.from;
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| self.from + span * k as f64 / last)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// Population of a 1-based level.
    Pop(usize),
    /// Coherence `ρ[i][j]`, 1-based.
    Coh(usize, usize),
    /// Φ±, transmission± and Φ₊ − Φ₋ of the 15-level waveplate.
    Waveplate,
}

/// Parsed model description. Indices are 1-based; entries with both
/// coefficients zero are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub n_levels: usize,
    pub ham: BTreeMap<(usize, usize), Linear<C64>>,
    pub src: BTreeMap<(usize, usize), Linear<f64>>,
    pub deph: BTreeMap<(usize, usize), Linear<f64>>,
    pub sweep: Option<Sweep>,
    pub observables: Vec<Observable>,
}

impl ModelFile {
    pub fn new(n_levels: usize) -> Self {
        Self {
            n_levels,
            ham: BTreeMap::new(),
            src: BTreeMap::new(),
            deph: BTreeMap::new(),
            sweep: None,
            observables: Vec::new(),
        }
    }
}

/// Evaluate every entry at `x` and build a closed [`SystemSpec`].
///
/// An off-diagonal `ham`/`deph` entry without its transposed partner is
/// mirrored (conjugated for `ham`).
pub fn instantiate(model: &ModelFile, x: f64) -> Result<SystemSpec> {
    let n = model.n_levels;
    if n == 0 {
        return Err(Error::InvalidSpec("model declares zero levels".into()));
    }
    let in_range = |&(i, j): &(usize, usize)| (1..=n).contains(&i) && (1..=n).contains(&j);
    for key in model
        .ham
        .keys()
        .chain(model.src.keys())
        .chain(model.deph.keys())
    {
        if !in_range(key) {
            return Err(Error::Index {
                index: key.0.max(key.1),
                max: n,
            });
        }
    }

    let mut h = CMatrix::zeros(n, n);
    for (&(i, j), c) in &model.ham {
        let v = c.eval(x);
        h[(i - 1, j - 1)] = v;
        if i != j && !model.ham.contains_key(&(j, i)) {
            h[(j - 1, i - 1)] = v.conj();
        }
    }
    let mut g = RMatrix::zeros(n, n);
    for (&(i, j), c) in &model.src {
        g[(i - 1, j - 1)] = c.eval(x);
    }
    let mut d = RMatrix::zeros(n, n);
    for (&(i, j), c) in &model.deph {
        let v = c.eval(x);
        d[(i - 1, j - 1)] = v;
        if !model.deph.contains_key(&(j, i)) {
            d[(j - 1, i - 1)] = v;
        }
    }
    SystemSpec::new(h, g, d, true).map_err(|e| match e {
        Error::InvalidSpec(msg) => Error::InvalidSpec(format!("at x = {x}: {msg}")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let s = Sweep {
            name: "d".into(),
            from: -100.0,
            to: 100.0,
            points: 401,
        };
        let g = s.grid();
        assert_eq!(g.len(), 401);
        for (m, x) in g.iter().enumerate() {
            // (m − (R+1)/2)/2 with 1-based m and R = 401
            assert_eq!(*x, ((m + 1) as f64 - 201.0) / 2.0);
        }
        let one = Sweep { points: 1, ..s };
        assert_eq!(one.grid(), vec![-100.0]);
    }

    #[test]
    fn positive_decay_names_entry() {
        let mut m = ModelFile::new(2);
        m.ham.insert(
            (2, 2),
            Linear {
                c0: C64::new(0.0, -0.5),
                c1: C64::new(0.0, 1.0),
            },
        );
        assert!(instantiate(&m, 0.0).is_ok());
        let err = instantiate(&m, 1.0).unwrap_err().to_string();
        assert!(err.contains("ham 2 2"), "{err}");
    }

    #[test]
    fn mirrors_partners() {
        let mut m = ModelFile::new(2);
        m.ham.insert((1, 2), Linear::<C64>::constant(C64::new(1.0, 2.0)));
        m.deph.insert((2, 1), Linear::<f64>::constant(0.3));
        let spec = instantiate(&m, 0.0).unwrap();
        assert_eq!(spec.hamiltonian()[(1, 0)], C64::new(1.0, -2.0));
        assert_eq!(spec.dephasing()[(0, 1)], 0.3);
    }
}
