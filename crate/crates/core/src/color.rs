//! CIELAB colorimetry for 8-bit sRGB imagery.
//!
//! Conversion chain: gamma-encoded sRGB -> linear RGB -> XYZ (D65) -> CIELAB,
//! plus the two angle measures used for skin color scoring: the hue angle
//! `h*` (red-to-yellow axis) and the individual typology angle (ITA,
//! light-to-dark axis). All angles are in degrees.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Gamma-encoded 8-bit sRGB color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Srgb8 {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Srgb8 {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }
}

/// D65-relative tristimulus values, scaled so the reference white has y = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Xyz {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A color in CIELAB space. `l` is perceptual lightness in [0, 100] for any
/// color reachable from valid sRGB; `a` (green-red) and `b` (blue-yellow)
/// are the opponent axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CieLab {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

impl CieLab {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        Self { l, a, b }
    }
}

/// Hue angle in degrees, range (-180, 180]. Positive `a*` and `b*` put the
/// angle in (0, 90), the red-to-yellow span skin colors occupy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HueAngle {
    pub degrees: f64,
}

/// Individual typology angle in degrees, range [-90, 90]. Higher is lighter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ita {
    pub degrees: f64,
}

/// Binary Fitzpatrick grouping of an ITA value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitzpatrickBand {
    /// ITA above 28 degrees (types I-III).
    Light,
    /// ITA at or below 28 degrees (types IV-VI).
    Dark,
}

#[derive(Debug, Error, PartialEq)]
pub enum ColorError {
    #[error("color is outside the sRGB gamut (linear {channel} = {value:.6})")]
    OutOfGamut { channel: char, value: f64 },
    #[error("hue angle undefined for achromatic color (a* = b* = 0)")]
    UndefinedHue,
    #[error("ITA undefined at L* = 50, b* = 0")]
    UndefinedIta,
}

// sRGB (IEC 61966-2-1) primaries with D65 white, Y normalized to 1.
const SRGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

const XYZ_TO_SRGB: [[f64; 3]; 3] = [
    [3.2404542, -1.5371385, -0.4985314],
    [-0.9692660, 1.8760108, 0.0415560],
    [0.0556434, -0.2040259, 1.0572252],
];

/// D65 reference white; matches the row sums of `SRGB_TO_XYZ` so that
/// (255, 255, 255) maps to L* = 100, a* = b* = 0.
pub const WHITE_POINT: Xyz = Xyz {
    x: 0.95047,
    y: 1.0,
    z: 1.08883,
};

/// Cube-root regime cutoff of the CIELAB forward function, (6/29)^3.
pub const LAB_EPSILON: f64 = 216.0 / 24389.0;
const LAB_KAPPA: f64 = 24389.0 / 27.0;

fn srgb_decode(c: u8) -> f64 {
    let c = f64::from(c) / 255.0;
    if c <= 0.04045 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

// Monotone extension of the encoding curve: the linear segment continues
// below zero so slightly out-of-range values still order correctly.
fn srgb_encode(c: f64) -> f64 {
    if c <= 0.003_130_8 {
        12.92 * c
    } else {
        1.055 * c.powf(1.0 / 2.4) - 0.055
    }
}

fn lab_f(t: f64) -> f64 {
    if t > LAB_EPSILON {
        t.cbrt()
    } else {
        (LAB_KAPPA * t + 16.0) / 116.0
    }
}

fn lab_f_inv(u: f64) -> f64 {
    let u3 = u * u * u;
    if u3 > LAB_EPSILON {
        u3
    } else {
        (116.0 * u - 16.0) / LAB_KAPPA
    }
}

/// Decode an 8-bit sRGB color to D65 tristimulus values.
pub fn srgb_to_xyz(c: Srgb8) -> Xyz {
    let rgb = [srgb_decode(c.r), srgb_decode(c.g), srgb_decode(c.b)];
    let dot = |row: &[f64; 3]| row[0] * rgb[0] + row[1] * rgb[1] + row[2] * rgb[2];
    Xyz {
        x: dot(&SRGB_TO_XYZ[0]),
        y: dot(&SRGB_TO_XYZ[1]),
        z: dot(&SRGB_TO_XYZ[2]),
    }
}

pub fn xyz_to_lab(c: Xyz) -> CieLab {
    let fx = lab_f(c.x / WHITE_POINT.x);
    let fy = lab_f(c.y / WHITE_POINT.y);
    let fz = lab_f(c.z / WHITE_POINT.z);
    CieLab {
        l: 116.0 * fy - 16.0,
        a: 500.0 * (fx - fy),
        b: 200.0 * (fy - fz),
    }
}

pub fn lab_to_xyz(c: CieLab) -> Xyz {
    let fy = (c.l + 16.0) / 116.0;
    let fx = fy + c.a / 500.0;
    let fz = fy - c.b / 200.0;
    Xyz {
        x: lab_f_inv(fx) * WHITE_POINT.x,
        y: lab_f_inv(fy) * WHITE_POINT.y,
        z: lab_f_inv(fz) * WHITE_POINT.z,
    }
}

/// Encode tristimulus values back to 8-bit sRGB.
///
/// Fails with `OutOfGamut` when a linear channel falls outside [0, 1] by
/// more than half an 8-bit quantization step.
pub fn xyz_to_srgb(c: Xyz) -> Result<Srgb8, ColorError> {
    let xyz = [c.x, c.y, c.z];
    let dot = |row: &[f64; 3]| row[0] * xyz[0] + row[1] * xyz[1] + row[2] * xyz[2];
    let linear = [dot(&XYZ_TO_SRGB[0]), dot(&XYZ_TO_SRGB[1]), dot(&XYZ_TO_SRGB[2])];
    let mut out = [0u8; 3];
    for (i, (&lin, ch)) in linear.iter().zip(['r', 'g', 'b']).enumerate() {
        let scaled = srgb_encode(lin) * 255.0;
        if !(-0.5..=255.5).contains(&scaled) {
            return Err(ColorError::OutOfGamut { channel: ch, value: lin });
        }
        out[i] = scaled.round().clamp(0.0, 255.0) as u8;
    }
    Ok(Srgb8::new(out[0], out[1], out[2]))
}

/// Convert an 8-bit sRGB color to CIELAB. Total on the input domain.
pub fn srgb_to_lab(c: Srgb8) -> CieLab {
    xyz_to_lab(srgb_to_xyz(c))
}

/// Inverse of [`srgb_to_lab`] up to 8-bit quantization.
pub fn lab_to_srgb(c: CieLab) -> Result<Srgb8, ColorError> {
    xyz_to_srgb(lab_to_xyz(c))
}

/// Hue angle h* = atan2(b*, a*) in degrees, range (-180, 180].
pub fn hue_angle(c: CieLab) -> Result<HueAngle, ColorError> {
    if c.a == 0.0 && c.b == 0.0 {
        return Err(ColorError::UndefinedHue);
    }
    // Flush -0.0 so the achromatic b* boundary lands on +180, not -180.
    let b = if c.b == 0.0 { 0.0 } else { c.b };
    Ok(HueAngle {
        degrees: b.atan2(c.a).to_degrees(),
    })
}

/// Individual typology angle: arctan((L* - 50) / b*) in degrees.
///
/// `b* = 0` resolves to +-90 by the sign of L* - 50; only the doubly
/// degenerate point (L* = 50, b* = 0) is undefined.
pub fn ita(c: CieLab) -> Result<Ita, ColorError> {
    let num = c.l - 50.0;
    if c.b == 0.0 {
        return if num == 0.0 {
            Err(ColorError::UndefinedIta)
        } else {
            Ok(Ita {
                degrees: 90.0_f64.copysign(num),
            })
        };
    }
    Ok(Ita {
        degrees: (num / c.b).atan().to_degrees(),
    })
}

/// Binary Fitzpatrick split: light skin tones above 28 degrees ITA,
/// dark otherwise.
pub fn fitzpatrick_band(angle: Ita) -> FitzpatrickBand {
    if angle.degrees > 28.0 {
        FitzpatrickBand::Light
    } else {
        FitzpatrickBand::Dark
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference values from an independent colorimetry oracle
    // (standard sRGB decode, D65 white point).
    const RED_LAB: (f64, f64, f64) = (53.2406, 80.0923, 67.2028);

    #[test]
    fn white_maps_to_l100() {
        let lab = srgb_to_lab(Srgb8::new(255, 255, 255));
        assert!((lab.l - 100.0).abs() < 1e-3);
        assert!(lab.a.abs() < 1e-3);
        assert!(lab.b.abs() < 1e-3);
    }

    #[test]
    fn black_maps_to_origin() {
        let lab = srgb_to_lab(Srgb8::new(0, 0, 0));
        assert!(lab.l.abs() < 1e-3);
        assert!(lab.a.abs() < 1e-3);
        assert!(lab.b.abs() < 1e-3);
    }

    #[test]
    fn red_matches_reference_oracle() {
        let lab = srgb_to_lab(Srgb8::new(255, 0, 0));
        assert!((lab.l - RED_LAB.0).abs() < 0.05, "L* = {}", lab.l);
        assert!((lab.a - RED_LAB.1).abs() < 0.05, "a* = {}", lab.a);
        assert!((lab.b - RED_LAB.2).abs() < 0.05, "b* = {}", lab.b);
    }

    #[test]
    fn lab_to_srgb_inverts_extremes_and_red() {
        assert_eq!(
            lab_to_srgb(CieLab::new(100.0, 0.0, 0.0)).unwrap(),
            Srgb8::new(255, 255, 255)
        );
        assert_eq!(
            lab_to_srgb(CieLab::new(0.0, 0.0, 0.0)).unwrap(),
            Srgb8::new(0, 0, 0)
        );
        let red = CieLab::new(RED_LAB.0, RED_LAB.1, RED_LAB.2);
        assert_eq!(lab_to_srgb(red).unwrap(), Srgb8::new(255, 0, 0));
    }

    #[test]
    fn out_of_gamut_is_rejected() {
        // A saturated green far beyond what sRGB can represent.
        let err = lab_to_srgb(CieLab::new(60.0, -120.0, 40.0)).unwrap_err();
        assert!(matches!(err, ColorError::OutOfGamut { .. }));
    }

    #[test]
    fn hue_angle_quadrants() {
        let h = |a, b| hue_angle(CieLab::new(60.0, a, b)).unwrap().degrees;
        assert!((h(10.0, 10.0) - 45.0).abs() < 1e-12);
        assert!((h(0.0, 10.0) - 90.0).abs() < 1e-12);
        // atan2(-5, 12) evaluated independently: -22.619864948040426 deg.
        assert!((h(12.0, -5.0) - -22.619864948040426).abs() < 1e-9);
        // Negative-b boundary folds to +180, keeping the (-180, 180] range.
        assert_eq!(h(-3.0, 0.0), 180.0);
    }

    #[test]
    fn hue_angle_undefined_for_achromatic() {
        assert_eq!(
            hue_angle(CieLab::new(60.0, 0.0, 0.0)),
            Err(ColorError::UndefinedHue)
        );
    }

    #[test]
    fn ita_examples() {
        let i = |l, b| ita(CieLab::new(l, 7.0, b)).unwrap().degrees;
        assert_eq!(i(50.0, 5.0), 0.0);
        assert!((i(78.28, 28.28) - 45.0).abs() < 1e-6);
        assert_eq!(i(30.0, 0.0), -90.0);
        assert_eq!(i(80.0, 0.0), 90.0);
        assert_eq!(
            ita(CieLab::new(50.0, 7.0, 0.0)),
            Err(ColorError::UndefinedIta)
        );
    }

    #[test]
    fn fitzpatrick_threshold_is_strict() {
        assert_eq!(fitzpatrick_band(Ita { degrees: 30.0 }), FitzpatrickBand::Light);
        assert_eq!(fitzpatrick_band(Ita { degrees: 28.0 }), FitzpatrickBand::Dark);
        assert_eq!(fitzpatrick_band(Ita { degrees: -10.0 }), FitzpatrickBand::Dark);
    }

    #[test]
    fn gray_axis_is_achromatic_and_monotone() {
        let mut prev_l = -1.0;
        for v in 0..=255u8 {
            let lab = srgb_to_lab(Srgb8::new(v, v, v));
            assert!(lab.a.abs() < 1e-3, "a* = {} at {}", lab.a, v);
            assert!(lab.b.abs() < 1e-3, "b* = {} at {}", lab.b, v);
            assert!(lab.l > prev_l, "L* not monotone at {}", v);
            prev_l = lab.l;
        }
    }

    #[test]
    fn round_trip_coarse_grid() {
        for r in (0..=255u16).step_by(51) {
            for g in (0..=255u16).step_by(51) {
                for b in (0..=255u16).step_by(51) {
                    let c = Srgb8::new(r as u8, g as u8, b as u8);
                    let back = lab_to_srgb(srgb_to_lab(c)).unwrap();
                    assert!(
                        (i16::from(c.r) - i16::from(back.r)).abs() <= 1
                            && (i16::from(c.g) - i16::from(back.g)).abs() <= 1
                            && (i16::from(c.b) - i16::from(back.b)).abs() <= 1,
                        "{c:?} -> {back:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn ita_monotone_in_lightness_for_positive_b() {
        let b = 24.0;
        let mut prev = f64::NEG_INFINITY;
        for step in 0..=100 {
            let l = f64::from(step);
            let v = ita(CieLab::new(l, 10.0, b)).unwrap().degrees;
            assert!(v > prev);
            prev = v;
        }
    }

    proptest! {
        #[test]
        fn hue_in_half_open_range(a in -128.0..128.0f64, b in -128.0..128.0f64) {
            prop_assume!(a != 0.0 || b != 0.0);
            let h = hue_angle(CieLab::new(50.0, a, b)).unwrap().degrees;
            prop_assert!(h > -180.0 && h <= 180.0);
        }

        #[test]
        fn ita_in_closed_range(l in 0.0..100.0f64, b in -128.0..128.0f64) {
            prop_assume!(l != 50.0 || b != 0.0);
            let v = ita(CieLab::new(l, 0.0, b)).unwrap().degrees;
            prop_assert!((-90.0..=90.0).contains(&v));
        }

        #[test]
        fn positive_a_b_hue_in_first_quadrant(a in 0.001..128.0f64, b in 0.001..128.0f64) {
            let h = hue_angle(CieLab::new(50.0, a, b)).unwrap().degrees;
            prop_assert!(h > 0.0 && h < 90.0);
        }

        #[test]
        fn round_trip_any_color(r in 0u8.., g in 0u8.., b in 0u8..) {
            let c = Srgb8::new(r, g, b);
            let back = lab_to_srgb(srgb_to_lab(c)).unwrap();
            prop_assert!((i16::from(c.r) - i16::from(back.r)).abs() <= 1);
            prop_assert!((i16::from(c.g) - i16::from(back.g)).abs() <= 1);
            prop_assert!((i16::from(c.b) - i16::from(back.b)).abs() <= 1);
        }
    }
}
