//! Model files shipped with the crate, addressable by name.

use super::model::{Linear, ModelFile, Observable, Sweep};
use super::parse::parse_model;
use crate::models::{rb87_waveplate, WaveplateParams};
use crate::C64;

pub const BUILTIN_TWO_LEVEL: &str = include_str!("../../models/two_level.lvm");
pub const BUILTIN_LAMBDA3: &str = include_str!("../../models/lambda3.lvm");
pub const BUILTIN_RB87: &str = include_str!("../../models/rb87_waveplate.lvm");

pub fn builtin_names() -> &'static [&'static str] {
    &["two-level", "lambda3", "rb87-waveplate"]
}

/// Source text and parsed model of a bundled file.
pub fn builtin(name: &str) -> Option<(&'static str, ModelFile)> {
    let text = match name {
        "two-level" => BUILTIN_TWO_LEVEL,
        "lambda3" => BUILTIN_LAMBDA3,
        "rb87-waveplate" => BUILTIN_RB87,
        _ => return None,
    };
    let model = parse_model(text).expect("bundled model parses");
    Some((text, model))
}

/// Model file equivalent of [`rb87_waveplate`], swept over the probe
/// detuning `δ_s` on ±200 with 401 points.
pub fn rb87_model(params: &WaveplateParams) -> crate::Result<ModelFile> {
    let base = WaveplateParams {
        delta_s: 0.0,
        ..*params
    };
    let spec = rb87_waveplate(&base)?;
    let n = spec.n_levels();
    let mut model = ModelFile::new(n);
    let h = spec.hamiltonian();
    for i in 0..n {
        for j in 0..n {
            let c0 = h[(i, j)];
            let c1 = if i == j && (11..14).contains(&i) {
                C64::new(-1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            let entry = Linear { c0, c1 };
            if !entry.is_zero() {
                model.ham.insert((i + 1, j + 1), entry);
            }
        }
    }
    let g = spec.source();
    for i in 0..n {
        for j in 0..n {
            if g[(i, j)] != 0.0 {
                model.src.insert((i + 1, j + 1), Linear::<f64>::constant(g[(i, j)]));
            }
        }
    }
    model.sweep = Some(Sweep {
        name: "delta_s".into(),
        from: -200.0,
        to: 200.0,
        points: 401,
    });
    model.observables = vec![Observable::Waveplate];
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{instantiate, serialize_model};
    use crate::models::{three_level_lambda, two_level, ThreeLevelParams, TwoLevelParams};

    #[test]
    fn bundled_rb87_matches_generator() {
        let generated = serialize_model(&rb87_model(&WaveplateParams::default()).unwrap());
        if std::env::var_os("LIOUVILLE_REGENERATE").is_some() {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/models/rb87_waveplate.lvm");
            std::fs::write(path, &generated).unwrap();
        }
        assert_eq!(BUILTIN_RB87, generated, "rerun with LIOUVILLE_REGENERATE=1");
    }

    #[test]
    fn rb87_file_instantiates_to_builder() {
        let (_, model) = builtin("rb87-waveplate").unwrap();
        for ds in [-200.0, -13.25, 0.0, 77.0, 200.0] {
            let from_file = instantiate(&model, ds).unwrap();
            let direct = rb87_waveplate(&WaveplateParams {
                delta_s: ds,
                ..Default::default()
            })
            .unwrap();
            assert_eq!(from_file, direct, "delta_s = {ds}");
        }
    }

    #[test]
    fn two_level_file() {
        let (_, model) = builtin("two-level").unwrap();
        let at0 = instantiate(&model, 0.0).unwrap();
        assert_eq!(at0, two_level(&TwoLevelParams::new(5.0, 0.0, 1.0)).unwrap());
        let at10 = instantiate(&model, 10.0).unwrap();
        let diff = at10.hamiltonian() - at0.hamiltonian();
        for ((i, j), z) in diff.iter().enumerate().map(|(k, z)| ((k % 2, k / 2), z)) {
            let expected = if (i, j) == (1, 1) { -10.0 } else { 0.0 };
            assert_eq!(*z, C64::new(expected, 0.0));
        }
        assert_eq!(at10.source(), at0.source());
    }

    #[test]
    fn lambda_file() {
        let (_, model) = builtin("lambda3").unwrap();
        for delta in [-3.5, 0.0, 2.0] {
            let spec = instantiate(&model, delta).unwrap();
            let direct = three_level_lambda(&ThreeLevelParams::new(1.0, 1.0, 0.0, delta, 1.0)).unwrap();
            assert_eq!(spec, direct);
            assert_eq!(spec.hamiltonian()[(0, 0)].re, delta / 2.0);
            assert_eq!(spec.hamiltonian()[(1, 1)].re, -delta / 2.0);
        }
    }

    #[test]
    fn unknown_builtin() {
        assert!(builtin("four-level").is_none());
        assert_eq!(builtin_names().len(), 3);
    }
}
