//! PNG loading and saving for rasters and skin masks.
//!
//! Masks come in as 8-bit grayscale; a pixel value over 127 means skin.

use std::path::Path;

use thiserror::Error;

use crate::color::Srgb8;
use crate::extract::{ExtractError, Raster, SkinMask};

/// Grayscale values over this count as skin.
pub const MASK_THRESHOLD: u8 = 127;

#[derive(Debug, Error)]
pub enum ImgIoError {
    #[error("image error: {0}")]
    Image(#[from] image::ImageError),
    #[error(transparent)]
    Raster(#[from] ExtractError),
}

pub fn load_image(path: &Path) -> Result<Raster, ImgIoError> {
    let rgb = image::open(path)?.to_rgb8();
    let (width, height) = rgb.dimensions();
    let pixels = rgb
        .pixels()
        .map(|p| Srgb8::new(p.0[0], p.0[1], p.0[2]))
        .collect();
    Ok(Raster::new(width, height, pixels)?)
}

pub fn load_mask(path: &Path) -> Result<SkinMask, ImgIoError> {
    let gray = image::open(path)?.to_luma8();
    let (width, height) = gray.dimensions();
    let data = gray.pixels().map(|p| p.0[0] > MASK_THRESHOLD).collect();
    Ok(SkinMask::new(width, height, data)?)
}

pub fn save_image(path: &Path, raster: &Raster) -> Result<(), ImgIoError> {
    let mut buf = Vec::with_capacity(raster.pixels().len() * 3);
    for p in raster.pixels() {
        buf.extend_from_slice(&[p.r, p.g, p.b]);
    }
    let img = image::RgbImage::from_raw(raster.width(), raster.height(), buf)
        .expect("buffer length matches raster dimensions");
    img.save(path)?;
    Ok(())
}

pub fn save_mask(path: &Path, mask: &SkinMask) -> Result<(), ImgIoError> {
    let mut buf = Vec::with_capacity((mask.width() * mask.height()) as usize);
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            buf.push(if mask.is_skin(x, y) { 255u8 } else { 0u8 });
        }
    }
    let img = image::GrayImage::from_raw(mask.width(), mask.height(), buf)
        .expect("buffer length matches mask dimensions");
    img.save(path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{lab_to_srgb, CieLab};

    #[test]
    fn image_and_mask_round_trip_through_png() {
        let dir = tempfile::tempdir().unwrap();
        let color = lab_to_srgb(CieLab::new(65.0, 15.0, 20.0)).unwrap();
        let raster = Raster::uniform(7, 5, color).unwrap();
        let img_path = dir.path().join("img.png");
        save_image(&img_path, &raster).unwrap();
        assert_eq!(load_image(&img_path).unwrap(), raster);

        let mask = SkinMask::from_fn(7, 5, |x, y| (x + y) % 2 == 0);
        let mask_path = dir.path().join("mask.png");
        save_mask(&mask_path, &mask).unwrap();
        assert_eq!(load_mask(&mask_path).unwrap(), mask);
    }
}
