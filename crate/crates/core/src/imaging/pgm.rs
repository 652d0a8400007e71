use super::{GrayImage, ImagingError};
use std::io::Write;
use std::path::Path;

/// Reads a P2 (ASCII) or P5 (binary) PGM with `maxval <= 255` into a
/// square grayscale image with pixels scaled to `[0, 1]`.
pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage, ImagingError> {
    let bytes = std::fs::read(path)?;
    parse_pgm(&bytes)
}

fn parse_pgm(bytes: &[u8]) -> Result<GrayImage, ImagingError> {
    let mut pos = 0usize;

    // Whitespace/comment-skipping token reader over the header.
    let next_token = |pos: &mut usize| -> Result<String, ImagingError> {
        loop {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < bytes.len() && bytes[*pos] == b'#' {
                while *pos < bytes.len() && bytes[*pos] != b'\n' {
                    *pos += 1;
                }
                continue;
            }
            break;
        }
        if *pos >= bytes.len() {
            return Err(ImagingError::MalformedHeader("unexpected end of file".into()));
        }
        let start = *pos;
        while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() && bytes[*pos] != b'#' {
            *pos += 1;
        }
        Ok(String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
    };

    let magic = next_token(&mut pos)?;
    if magic != "P2" && magic != "P5" {
        return Err(ImagingError::MalformedHeader(format!(
            "magic '{magic}' is not P2 or P5"
        )));
    }
    let parse_dim = |tok: String| -> Result<usize, ImagingError> {
        tok.parse::<usize>()
            .map_err(|_| ImagingError::MalformedHeader(format!("bad number '{tok}'")))
    };
    let width = parse_dim(next_token(&mut pos)?)?;
    let height = parse_dim(next_token(&mut pos)?)?;
    let maxval = parse_dim(next_token(&mut pos)?)? as u32;
    if maxval == 0 || maxval > 255 {
        return Err(ImagingError::UnsupportedMaxval(maxval));
    }
    if width != height {
        return Err(ImagingError::NotSquare { width, height });
    }
    let count = width * height;
    let scale = 1.0 / maxval as f64;

    let raw: Vec<f64> = if magic == "P5" {
        // Exactly one whitespace byte separates maxval from the payload.
        if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
            return Err(ImagingError::MalformedHeader(
                "missing separator before binary payload".into(),
            ));
        }
        pos += 1;
        if bytes.len() < pos + count {
            return Err(ImagingError::TruncatedPayload);
        }
        bytes[pos..pos + count]
            .iter()
            .map(|&b| (b as f64 * scale).min(1.0))
            .collect()
    } else {
        let mut vals = Vec::with_capacity(count);
        while vals.len() < count {
            let tok = match next_token(&mut pos) {
                Ok(t) => t,
                Err(_) => return Err(ImagingError::TruncatedPayload),
            };
            let v: u32 = tok
                .parse()
                .map_err(|_| ImagingError::MalformedHeader(format!("bad sample '{tok}'")))?;
            vals.push((v as f64 * scale).min(1.0));
        }
        vals
    };

    Ok(GrayImage::new(width, raw))
}

/// Writes a P5 (binary) PGM with `maxval = 255`, rounding half-up.
pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<(), ImagingError> {
    let n = img.side();
    let mut out = Vec::with_capacity(20 + n * n);
    write!(out, "P5\n{n} {n}\n255\n")?;
    for &p in img.pixels() {
        out.push((p.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8);
    }
    std::fs::write(path, out)?;
    Ok(())
}
