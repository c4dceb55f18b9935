use huetone::color::{fitzpatrick_band, hue_angle, ita, srgb_to_lab, FitzpatrickBand, Srgb8};
use serde_json::json;

use crate::{CliError, ConvertArgs};

fn parse_color(spec: &str) -> Result<Srgb8, CliError> {
    let bad = || CliError::usage(format!("cannot parse color {spec:?}; use r,g,b or #rrggbb"));
    if let Some(hex) = spec.strip_prefix('#').or_else(|| {
        (spec.len() == 6 && spec.chars().all(|c| c.is_ascii_hexdigit())).then_some(spec)
    }) {
        if hex.len() != 6 {
            return Err(bad());
        }
        let r = u8::from_str_radix(&hex[0..2], 16).map_err(|_| bad())?;
        let g = u8::from_str_radix(&hex[2..4], 16).map_err(|_| bad())?;
        let b = u8::from_str_radix(&hex[4..6], 16).map_err(|_| bad())?;
        return Ok(Srgb8::new(r, g, b));
    }
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut channels = [0u8; 3];
    for (slot, part) in channels.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| bad())?;
    }
    Ok(Srgb8::new(channels[0], channels[1], channels[2]))
}

pub fn run(args: &ConvertArgs) -> Result<(), CliError> {
    for spec in &args.colors {
        let srgb = parse_color(spec)?;
        let lab = srgb_to_lab(srgb);
        let hue = hue_angle(lab).ok().map(|h| h.degrees);
        let ita_deg = ita(lab).ok().map(|i| i.degrees);
        let band = ita_deg.map(|_| {
            match fitzpatrick_band(ita(lab).unwrap()) {
                FitzpatrickBand::Light => "light",
                FitzpatrickBand::Dark => "dark",
            }
        });
        let line = json!({
            "srgb": {"r": srgb.r, "g": srgb.g, "b": srgb.b},
            "lab": {"l": lab.l, "a": lab.a, "b": lab.b},
            "hue_deg": hue,
            "ita_deg": ita_deg,
            "fitzpatrick": band,
        });
        println!("{line}");
    }
    Ok(())
}
