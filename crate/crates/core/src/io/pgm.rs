//! 16-bit binary PGM (P5) with the value scale recorded in header comments.
//!
//! Pixel `q` decodes to `offset + q * scale`. Image rows run top to bottom,
//! so the first image row is the highest grid row.

use crate::error::{Error, Result};
use crate::euler::GridSpec;
use crate::geometry::Point;

const MAXVAL: u16 = 65535;

/// Encodes values by affine normalization onto `0..=65535`. Integer data
/// spanning at most 65535 levels is encoded exactly with `scale = 1`.
pub fn encode_pgm(spec: &GridSpec, values: &[f64]) -> Vec<u8> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
    let integral = values.iter().all(|v| v.fract() == 0.0) && hi - lo <= MAXVAL as f64;
    let scale = if integral {
        1.0
    } else {
        (hi - lo) / MAXVAL as f64
    };
    let mut out = format!(
        "P5\n# offset {lo:?}\n# scale {scale:?}\n# origin {:?} {:?}\n# spacing {:?}\n{} {}\n{MAXVAL}\n",
        spec.origin.x, spec.origin.y, spec.spacing, spec.width, spec.height
    )
    .into_bytes();
    out.reserve(values.len() * 2);
    for row in (0..spec.height).rev() {
        for col in 0..spec.width {
            let v = values[spec.index(col, row)];
            let q = if scale > 0.0 {
                ((v - lo) / scale).round().clamp(0.0, MAXVAL as f64) as u16
            } else {
                0
            };
            out.extend_from_slice(&q.to_be_bytes());
        }
    }
    out
}

fn bad(message: impl Into<String>) -> Error {
    Error::Parse {
        location: "pgm header".into(),
        message: message.into(),
    }
}

/// Decodes a PGM written by [`encode_pgm`]. Values are recovered to within
/// `scale / 2`.
pub fn decode_pgm(bytes: &[u8]) -> Result<(GridSpec, Vec<f64>)> {
    let mut pos = 0;
    let mut tokens: Vec<String> = Vec::new();
    let (mut offset, mut scale, mut origin, mut spacing) = (0.0, 1.0, Point::new(0.0, 0.0), 1.0);
    // Magic, width, height, maxval; comments may carry the scale.
    while tokens.len() < 4 {
        let end = bytes[pos..]
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| bad("truncated header"))?;
        let line = std::str::from_utf8(&bytes[pos..pos + end]).map_err(|_| bad("header is not text"))?;
        pos += end + 1;
        if let Some(c) = line.strip_prefix('#') {
            let f: Vec<&str> = c.split_whitespace().collect();
            let n = |i: usize| -> Result<f64> {
                f.get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(format!("bad comment `{line}`")))
            };
            match f.first().copied() {
                Some("offset") => offset = n(1)?,
                Some("scale") => scale = n(1)?,
                Some("origin") => origin = Point::new(n(1)?, n(2)?),
                Some("spacing") => spacing = n(1)?,
                _ => {}
            }
            continue;
        }
        tokens.extend(line.split_whitespace().map(str::to_string));
    }
    if tokens[0] != "P5" {
        return Err(bad(format!("expected P5, got {}", tokens[0])));
    }
    let dim = |i: usize| -> Result<usize> {
        tokens[i].parse().map_err(|_| bad(format!("bad dimension `{}`", tokens[i])))
    };
    let (w, h) = (dim(1)?, dim(2)?);
    if tokens[3] != MAXVAL.to_string() {
        return Err(bad(format!("expected maxval {MAXVAL}, got {}", tokens[3])));
    }
    let spec = GridSpec::new(w, h, origin, spacing).map_err(|e| bad(e.to_string()))?;
    let data = &bytes[pos..];
    if data.len() != 2 * spec.len() {
        return Err(Error::Parse {
            location: "pgm data".into(),
            message: format!("expected {} bytes, got {}", 2 * spec.len(), data.len()),
        });
    }
    let mut values = vec![0.0; spec.len()];
    for (k, px) in data.chunks_exact(2).enumerate() {
        let q = u16::from_be_bytes([px[0], px[1]]) as f64;
        let (col, image_row) = (k % w, k / w);
        values[spec.index(col, h - 1 - image_row)] = offset + q * scale;
    }
    Ok((spec, values))
}
