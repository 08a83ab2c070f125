//! Binary netpbm readers/writers for the mask and annotation formats.
//!
//! Label masks travel as 8-bit binary PGM (P5) with the palette
//! {0 = water, 128 = ship, 255 = unknown/dock}; any other value is a load
//! error. Annotations are binary PPM (P6).

use crate::contours::{BinaryMask, LabelMask, CLASS_SHIP, CLASS_UNKNOWN, CLASS_WATER};
use crate::error::{Error, Result};

const GRAY_WATER: u8 = 0;
const GRAY_SHIP: u8 = 128;
const GRAY_UNKNOWN: u8 = 255;

/// Simple RGB raster used for annotation output.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    pub width: u32,
    pub height: u32,
    /// Row-major RGB triples.
    pub pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    pub fn filled(width: u32, height: u32, color: [u8; 3]) -> Self {
        RgbImage {
            width,
            height,
            pixels: vec![color; (width as usize) * (height as usize)],
        }
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, color: [u8; 3]) {
        if x < self.width && y < self.height {
            self.pixels[y as usize * self.width as usize + x as usize] = color;
        }
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        self.pixels[y as usize * self.width as usize + x as usize]
    }
}

/// Encodes a label mask as binary PGM (P5).
pub fn write_label_mask_pgm(mask: &LabelMask) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend(mask.labels().iter().map(|&l| match l {
        CLASS_SHIP => GRAY_SHIP,
        CLASS_UNKNOWN => GRAY_UNKNOWN,
        _ => GRAY_WATER,
    }));
    out
}

/// Debug export of a binary mask as P5 with {0, 255}.
pub fn write_binary_mask_pgm(mask: &BinaryMask) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend(mask.solid_pixels().iter().map(|&s| if s { 255u8 } else { 0u8 }));
    out
}

/// Encodes an RGB image as binary PPM (P6).
pub fn write_ppm(image: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", image.width, image.height).into_bytes();
    for px in &image.pixels {
        out.extend_from_slice(px);
    }
    out
}

struct HeaderParser<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> HeaderParser<'a> {
    fn next_token(&mut self) -> Result<&'a [u8]> {
        loop {
            while self.pos < self.data.len() && self.data[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.data.len() && self.data[self.pos] == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::PnmParse("unexpected end of header".into()));
        }
        Ok(&self.data[start..self.pos])
    }

    fn next_u32(&mut self) -> Result<u32> {
        let tok = self.next_token()?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                Error::PnmParse(format!("bad integer {:?}", String::from_utf8_lossy(tok)))
            })
    }
}

/// Decodes a binary PGM (P5) into a label mask, enforcing the strict
/// {0, 128, 255} palette.
pub fn read_label_mask_pgm(data: &[u8]) -> Result<LabelMask> {
    let mut p = HeaderParser { data, pos: 0 };
    let magic = p.next_token()?;
    if magic != b"P5" {
        return Err(Error::PnmParse(format!(
            "expected P5 magic, got {:?}",
            String::from_utf8_lossy(magic)
        )));
    }
    let width = p.next_u32()?;
    let height = p.next_u32()?;
    let maxval = p.next_u32()?;
    if maxval != 255 {
        return Err(Error::PnmParse(format!("expected maxval 255, got {maxval}")));
    }
    // Exactly one whitespace byte separates the header from raster data.
    if p.pos >= data.len() || !data[p.pos].is_ascii_whitespace() {
        return Err(Error::PnmParse("missing raster separator".into()));
    }
    let raster = &data[p.pos + 1..];
    let expected = (width as usize) * (height as usize);
    if raster.len() < expected {
        return Err(Error::PnmParse(format!(
            "truncated raster: expected {expected} bytes, got {}",
            raster.len()
        )));
    }
    if raster.len() > expected {
        return Err(Error::PnmParse(format!(
            "trailing bytes after raster: expected {expected}, got {}",
            raster.len()
        )));
    }
    let labels = raster
        .iter()
        .map(|&g| match g {
            GRAY_WATER => Ok(CLASS_WATER),
            GRAY_SHIP => Ok(CLASS_SHIP),
            GRAY_UNKNOWN => Ok(CLASS_UNKNOWN),
            other => Err(Error::PnmParse(format!(
                "pixel value {other} is not in the {{0, 128, 255}} palette"
            ))),
        })
        .collect::<Result<Vec<u8>>>()?;
    LabelMask::new(width, height, labels)
}
