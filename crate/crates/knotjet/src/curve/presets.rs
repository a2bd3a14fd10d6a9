//! Built-in curves.

use super::{curve_from_a, load_curve_file, APolyComponent, ASpectralCurve, CurveError};
use std::path::Path;

pub const PRESET_NAMES: &[&str] = &["4_1", "L2R"];

fn component(name: &str) -> Option<(APolyComponent, u32)> {
    match name {
        "4_1" | "4₁" | "fig8" | "figure-eight" => Some((
            APolyComponent::new(&[0, 0, 1], &[-1, 1, 2, 1, -1], &[0, 0, 1], "4_1"),
            1,
        )),
        "L2R" | "l2r" => Some((
            APolyComponent::new(&[0, 0, 1], &[-1, 2, 2, -1], &[0, 1], "L2R"),
            1,
        )),
        _ => None,
    }
}

pub fn preset(name: &str) -> Result<ASpectralCurve, CurveError> {
    let (comp, torsion) = component(name).ok_or_else(|| CurveError::Unknown(name.to_string()))?;
    let mut c = curve_from_a(&comp)?;
    c.torsion = Some(torsion);
    Ok(c)
}

/// Preset name first, then a path to a curve file.
pub fn resolve(reference: &str) -> Result<ASpectralCurve, CurveError> {
    if component(reference).is_some() {
        return preset(reference);
    }
    let p = Path::new(reference);
    if p.exists() {
        return load_curve_file(p);
    }
    Err(CurveError::Unknown(reference.to_string()))
}

/// `(2i/√6)(α^{1/2} + α^{−1/2})` or `(i/√3)(α^{1/2} − α^{−1/2})`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaShape {
    Plus,
    Minus,
}

/// `α³ = (p + q√r)/den`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Radicand {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub den: i64,
}

#[derive(Clone, Copy, Debug)]
pub struct ClosedForm {
    pub shape: ThetaShape,
    /// as tabulated
    pub stated: Radicand,
    /// denominator that reproduces the theta quartic
    pub corrected: Radicand,
}

#[derive(Clone, Copy, Debug)]
pub struct EllipticPreset {
    pub label: &'static str,
    /// minimal model `[a₁, a₂, a₃, a₄, a₆]`
    pub ainvs: [i64; 5],
    pub knot: &'static str,
    /// preset A-curve whose quartic has this Jacobian
    pub a_curve: Option<&'static str>,
    pub delta: i64,
    pub closed_form: Option<ClosedForm>,
}

const fn rad(p: i64, q: i64, r: i64, den: i64) -> Radicand {
    Radicand { p, q, r, den }
}

pub const ELLIPTIC_PRESETS: &[EllipticPreset] = &[
    EllipticPreset {
        label: "15A8",
        ainvs: [1, 1, 1, 0, 0],
        knot: "4_1",
        a_curve: Some("4_1"),
        delta: -15,
        closed_form: None,
    },
    EllipticPreset {
        label: "14A4",
        ainvs: [1, 0, 1, -1, 0],
        knot: "L2R",
        a_curve: Some("L2R"),
        delta: -28,
        closed_form: None,
    },
    EllipticPreset {
        label: "19A3",
        ainvs: [0, 1, 1, 1, 0],
        knot: "9_35",
        a_curve: None,
        delta: -19,
        closed_form: Some(ClosedForm {
            shape: ThetaShape::Plus,
            stated: rad(257, 3, 57, 4),
            corrected: rad(257, 3, 57, 256),
        }),
    },
    EllipticPreset {
        label: "11A3",
        ainvs: [0, -1, 1, 0, 0],
        knot: "9_48",
        a_curve: None,
        delta: -11,
        closed_form: Some(ClosedForm {
            shape: ThetaShape::Minus,
            stated: rad(329, 57, 33, 2),
            corrected: rad(329, 57, 33, 32),
        }),
    },
    EllipticPreset {
        label: "43A1",
        ainvs: [0, 1, 1, 0, 0],
        knot: "10_139",
        a_curve: None,
        delta: -43,
        closed_form: Some(ClosedForm {
            shape: ThetaShape::Minus,
            stated: rad(1193, 105, 129, 2),
            corrected: rad(1193, 105, 129, 32),
        }),
    },
];

pub fn elliptic_preset(label: &str) -> Option<&'static EllipticPreset> {
    ELLIPTIC_PRESETS
        .iter()
        .find(|e| e.label.eq_ignore_ascii_case(label) || e.knot == label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_load() {
        for n in PRESET_NAMES {
            let c = preset(n).unwrap();
            assert_eq!(c.torsion, Some(1));
            assert!(c.s_is_palindromic());
        }
        assert!(matches!(
            resolve("nope-not-a-file"),
            Err(CurveError::Unknown(_))
        ));
    }

    #[test]
    fn elliptic_lookup() {
        assert_eq!(elliptic_preset("15a8").unwrap().knot, "4_1");
        assert_eq!(elliptic_preset("L2R").unwrap().label, "14A4");
    }
}
