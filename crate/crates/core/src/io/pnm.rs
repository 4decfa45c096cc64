//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.
//!
//! Header grammar: magic, whitespace, width, whitespace, height, whitespace,
//! maxval, then exactly one whitespace byte before the raster. Any run of
//! whitespace may contain `#` comments running to the end of the line.
//! Bytes after the raster are ignored.

use crate::annotate::RgbFrame;
use crate::error::{Error, Result};
use crate::frame::{luminance, Frame, MotionMask};

pub const PGM_MAGIC: &[u8; 2] = b"P5";
pub const PPM_MAGIC: &[u8; 2] = b"P6";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Header {
    magic: [u8; 2],
    width: usize,
    height: usize,
    raster_offset: usize,
}

fn is_space(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    /// Skips whitespace and comments; errors if nothing was skipped.
    fn separator(&mut self) -> Result<()> {
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if is_space(b) {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(Error::parse(self.pos, "expected whitespace"));
        }
        Ok(())
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as usize))
                .ok_or_else(|| Error::parse(start, format!("{what} is too large")))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, format!("expected numeric {what}")));
        }
        Ok(value)
    }
}

fn parse_header(bytes: &[u8], expected: &[&[u8; 2]]) -> Result<Header> {
    if bytes.len() < 2 || !expected.iter().any(|m| bytes[..2] == m[..]) {
        let names: Vec<_> = expected.iter().map(|m| String::from_utf8_lossy(&m[..]).into_owned()).collect();
        return Err(Error::parse(0, format!("expected magic {}", names.join(" or "))));
    }
    let mut cur = Cursor { bytes, pos: 2 };
    cur.separator()?;
    let width_at = cur.pos;
    let width = cur.number("width")?;
    cur.separator()?;
    let height_at = cur.pos;
    let height = cur.number("height")?;
    cur.separator()?;
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if width == 0 {
        return Err(Error::parse(width_at, "width must be at least 1"));
    }
    if height == 0 {
        return Err(Error::parse(height_at, "height must be at least 1"));
    }
    if maxval != 255 {
        return Err(Error::parse(maxval_at, format!("maxval must be 255, got {maxval}")));
    }
    match bytes.get(cur.pos) {
        Some(&b) if is_space(b) => {}
        _ => return Err(Error::parse(cur.pos, "expected one whitespace byte after maxval")),
    }
    Ok(Header {
        magic: [bytes[0], bytes[1]],
        width,
        height,
        raster_offset: cur.pos + 1,
    })
}

fn raster(bytes: &[u8], header: &Header, channels: usize) -> Result<Vec<u8>> {
    let len = header
        .width
        .checked_mul(header.height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::parse(2, "image dimensions overflow"))?;
    let end = header.raster_offset + len;
    if bytes.len() < end {
        return Err(Error::parse(
            bytes.len(),
            format!("truncated raster: expected {len} bytes, found {}", bytes.len() - header.raster_offset),
        ));
    }
    Ok(bytes[header.raster_offset..end].to_vec())
}

pub fn read_pgm(bytes: &[u8]) -> Result<Frame> {
    let header = parse_header(bytes, &[PGM_MAGIC])?;
    let data = raster(bytes, &header, 1)?;
    Frame::new(header.width, header.height, data)
}

pub fn read_ppm(bytes: &[u8]) -> Result<RgbFrame> {
    let header = parse_header(bytes, &[PPM_MAGIC])?;
    let data = raster(bytes, &header, 3)?;
    RgbFrame::new(header.width, header.height, data)
}

/// Reads a `P5` as-is, or a `P6` reduced to intensity with [`luminance`].
pub fn read_gray(bytes: &[u8]) -> Result<Frame> {
    let header = parse_header(bytes, &[PGM_MAGIC, PPM_MAGIC])?;
    if &header.magic == PGM_MAGIC {
        return Frame::new(header.width, header.height, raster(bytes, &header, 1)?);
    }
    let rgb = raster(bytes, &header, 3)?;
    let data = rgb.chunks_exact(3).map(|p| luminance(p[0], p[1], p[2])).collect();
    Frame::new(header.width, header.height, data)
}

fn encode(magic: &[u8; 2], width: usize, height: usize, raster: &[u8]) -> Vec<u8> {
    let header = format!("{}\n{} {}\n255\n", std::str::from_utf8(magic).unwrap(), width, height);
    let mut out = Vec::with_capacity(header.len() + raster.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(raster);
    out
}

pub fn write_pgm(f: &Frame) -> Vec<u8> {
    encode(PGM_MAGIC, f.width(), f.height(), f.as_slice())
}

pub fn write_ppm(rgb: &RgbFrame) -> Vec<u8> {
    encode(PPM_MAGIC, rgb.width(), rgb.height(), rgb.as_slice())
}

/// Ground-truth style mask: PGM where 255 is motion and 0 background.
pub fn read_mask_pgm(bytes: &[u8]) -> Result<MotionMask> {
    let header = parse_header(bytes, &[PGM_MAGIC])?;
    let data = raster(bytes, &header, 1)?;
    let mut bits = Vec::with_capacity(data.len());
    for (i, &v) in data.iter().enumerate() {
        match v {
            0 => bits.push(0),
            255 => bits.push(1),
            _ => {
                return Err(Error::parse(
                    header.raster_offset + i,
                    format!("mask value {v} is neither 0 nor 255"),
                ))
            }
        }
    }
    MotionMask::new(header.width, header.height, bits)
}

pub fn write_mask_pgm(m: &MotionMask) -> Vec<u8> {
    let raster: Vec<u8> = m.as_slice().iter().map(|&v| v * 255).collect();
    encode(PGM_MAGIC, m.width(), m.height(), &raster)
}
