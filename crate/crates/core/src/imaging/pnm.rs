//! Binary PGM (P5) and PPM (P6) with maxval 255.
//!
//! Samples map to intensities as `v / 255` on read and `round(v * 255)` on
//! write, so a write after a read reproduces the original bytes.

use std::fs;
use std::path::Path;

use super::ImageBuffer;
use crate::error::{Error, Result};

struct Header {
    channels: usize,
    width: usize,
    height: usize,
    data_start: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(Error::Format("expected P5 or P6 magic number".into())),
    };
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for (i, field) in fields.iter_mut().enumerate() {
        // whitespace and comment lines between tokens
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => return Err(Error::Format("truncated header".into())),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Format(format!("malformed header field {i}")));
        }
        let text = std::str::from_utf8(&bytes[start..pos]).expect("ascii digits");
        *field = text
            .parse()
            .map_err(|_| Error::Format(format!("header value {text} out of range")))?;
    }
    // exactly one whitespace byte separates maxval from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::Format("missing whitespace after maxval".into())),
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(Error::Format(format!("unsupported maxval {maxval}, only 255 is handled")));
    }
    if width == 0 || height == 0 {
        return Err(Error::Format(format!("empty image {width}x{height}")));
    }
    Ok(Header {
        channels,
        width,
        height,
        data_start: pos,
    })
}

pub fn decode_pnm(bytes: &[u8]) -> Result<ImageBuffer> {
    let h = parse_header(bytes)?;
    let len = h
        .width
        .checked_mul(h.height)
        .and_then(|v| v.checked_mul(h.channels))
        .ok_or_else(|| Error::Format("image dimensions overflow".into()))?;
    let raster = bytes
        .get(h.data_start..h.data_start + len)
        .ok_or_else(|| {
            Error::Format(format!(
                "truncated payload: expected {len} bytes, found {}",
                bytes.len().saturating_sub(h.data_start)
            ))
        })?;
    let data = raster.iter().map(|&b| f64::from(b) / 255.0).collect();
    ImageBuffer::new(h.width, h.height, h.channels, data)
}

pub fn encode_pnm(img: &ImageBuffer) -> Vec<u8> {
    let magic = if img.channels() == 1 { "P5" } else { "P6" };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(img.data().iter().map(|v| (v * 255.0).round() as u8));
    out
}

pub fn read_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    decode_pnm(&fs::read(path)?)
}

pub fn write_image(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_pnm(img))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_gray() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend([0u8, 128, 255, 64]);
        let img = decode_pnm(&bytes).unwrap();
        assert_eq!((img.width(), img.height(), img.channels()), (2, 2, 1));
        let want = [0.0, 0.50196, 1.0, 0.25098];
        for (a, b) in img.data().iter().zip(want) {
            assert!((a - b).abs() < 1e-5);
        }
        assert_eq!(encode_pnm(&img), bytes);
    }

    #[test]
    fn decodes_rgb() {
        let mut bytes = b"P6 3 1 255\n".to_vec();
        bytes.extend([255u8, 0, 0, 0, 255, 0, 0, 0, 255]);
        let img = decode_pnm(&bytes).unwrap();
        assert_eq!(img.pixel(0, 0), &[1.0, 0.0, 0.0]);
        assert_eq!(img.pixel(2, 0), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn header_comments_are_skipped() {
        let mut bytes = b"P5\n# made by hand\n1 1\n255\n".to_vec();
        bytes.push(51);
        assert!((decode_pnm(&bytes).unwrap().data()[0] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        let cases: [&[u8]; 6] = [
            b"P4\n1 1\n255\n\0",
            b"P5\n1\n",
            b"P5\n2 2\n65535\n\0\0\0\0\0\0\0\0",
            b"P5\n2 2\n255\n\0\0",
            b"P5\nx 2\n255\n",
            b"P5\n0 2\n255\n",
        ];
        for c in cases {
            assert!(matches!(decode_pnm(c), Err(Error::Format(_))), "{c:?}");
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.ppm");
        let data: Vec<f64> = (0..2 * 3 * 3).map(|i| (i * 14) as f64 / 255.0).collect();
        let img = ImageBuffer::new(2, 3, 3, data).unwrap();
        write_image(&img, &path).unwrap();
        let back = read_image(&path).unwrap();
        assert_eq!(encode_pnm(&back), encode_pnm(&img));
        assert!(read_image(dir.path().join("missing.pgm")).is_err());
    }
}
