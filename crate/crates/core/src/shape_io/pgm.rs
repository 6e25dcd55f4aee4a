//! Plain (`P2`) and raw (`P5`) PGM reading and writing.
//!
//! A pixel is foreground iff its value is at least the threshold (128 by
//! default). The first image row in the file is the top of the shape.

use std::path::Path;

use super::shape::{BinaryShape, Frame};
use crate::error::{Error, Result};
use crate::Real;

pub const DEFAULT_THRESHOLD: u16 = 128;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PgmOptions<T> {
    pub spacing: T,
    pub origin: (T, T),
    pub threshold: u16,
}

impl<T: Real> Default for PgmOptions<T> {
    fn default() -> Self {
        PgmOptions {
            spacing: T::one(),
            origin: (T::zero(), T::zero()),
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    /// Skips whitespace and `#` comments.
    fn skip_blank(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_blank();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if self.pos >= self.data.len() {
                self.err(format!("unexpected end of data, expected {what}"))
            } else {
                self.err(format!("expected {what}"))
            });
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                offset: start,
                message: format!("{what} out of range"),
            })
    }
}

/// Decodes PGM bytes into a shape.
pub fn parse_pgm<T: Real>(data: &[u8], options: &PgmOptions<T>) -> Result<BinaryShape<T>> {
    let mut cur = Cursor { data, pos: 0 };
    if data.len() < 2 || data[0] != b'P' || !matches!(data[1], b'2' | b'5') {
        return Err(cur.err("missing P2/P5 magic number"));
    }
    let raw = data[1] == b'5';
    cur.pos = 2;
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Parse {
            offset: maxval_at,
            message: format!("image dimensions {width}x{height} must be positive"),
        });
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::Parse {
            offset: maxval_at,
            message: format!("maxval {maxval} must be in 1..=255"),
        });
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| cur.err("image dimensions overflow"))?;
    let mut values = Vec::with_capacity(n);
    if raw {
        // exactly one whitespace byte separates the header from the raster
        if cur.pos >= data.len() || !data[cur.pos].is_ascii_whitespace() {
            return Err(cur.err("expected whitespace after maxval"));
        }
        cur.pos += 1;
        let end = cur.pos + n;
        if end > data.len() {
            return Err(Error::Parse {
                offset: data.len(),
                message: format!("truncated payload: {} of {n} bytes", data.len() - cur.pos),
            });
        }
        values.extend_from_slice(&data[cur.pos..end]);
    } else {
        for _ in 0..n {
            let at = cur.pos;
            let v = cur.number("pixel value")?;
            if v > maxval {
                return Err(Error::Parse {
                    offset: at,
                    message: format!("pixel value {v} exceeds maxval {maxval}"),
                });
            }
            values.push(v as u8);
        }
    }
    let frame = Frame::new(width, height, options.spacing, options.origin)?;
    let mut bits = Vec::with_capacity(n);
    for row in values.chunks(width).rev() {
        bits.extend(row.iter().map(|&v| u16::from(v) >= options.threshold));
    }
    BinaryShape::from_bits(frame, bits)
}

pub fn load_pgm<T: Real>(path: impl AsRef<Path>, options: &PgmOptions<T>) -> Result<BinaryShape<T>> {
    let path = path.as_ref();
    let data = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_pgm(&data, options)
}

/// Encodes a shape as PGM with foreground 255 and background 0.
pub fn encode_pgm<T: Real>(shape: &BinaryShape<T>, raw: bool) -> Vec<u8> {
    let (w, h) = (shape.width(), shape.height());
    let mut out = format!("{}\n{} {}\n255\n", if raw { "P5" } else { "P2" }, w, h).into_bytes();
    for y in (0..h).rev() {
        if raw {
            out.extend((0..w).map(|x| if shape.get(x, y) { 255u8 } else { 0 }));
        } else {
            let row: Vec<&str> = (0..w)
                .map(|x| if shape.get(x, y) { "255" } else { "0" })
                .collect();
            out.extend_from_slice(row.join(" ").as_bytes());
            out.push(b'\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> PgmOptions<f64> {
        PgmOptions::default()
    }

    #[test]
    fn plain_two_by_two() {
        let s = parse_pgm(b"P2\n2 2\n255\n255 0\n0 255\n", &opts()).unwrap();
        // top row first in the file: [1,0;0,1]
        assert!(s.get(0, 1) && !s.get(1, 1));
        assert!(!s.get(0, 0) && s.get(1, 0));
    }

    #[test]
    fn all_zero_is_empty() {
        let s = parse_pgm(b"P2 3 2 255 0 0 0 0 0 0", &opts()).unwrap();
        assert!(s.is_empty());
        assert_eq!((s.width(), s.height()), (3, 2));
    }

    #[test]
    fn p5_and_p2_agree() {
        let plain = parse_pgm(b"P2\n# comment\n3 2\n200\n0 130 200\n127 128 5\n", &opts()).unwrap();
        let mut raw = b"P5\n3 2\n200\n".to_vec();
        raw.extend_from_slice(&[0, 130, 200, 127, 128, 5]);
        assert_eq!(parse_pgm(&raw, &opts()).unwrap(), plain);
        assert_eq!(plain.count(), 3);
    }

    #[test]
    fn threshold_override() {
        let o = PgmOptions {
            threshold: 10,
            ..opts()
        };
        assert_eq!(parse_pgm(b"P2 2 1 255 9 10", &o).unwrap().count(), 1);
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_pgm::<f64>(b"P3 2 2 255", &opts()) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("{other:?}"),
        }
        match parse_pgm::<f64>(b"P2 2 x", &opts()) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_pgm::<f64>(b"P5 2 2 255\n\x01\x02", &opts()) {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 13);
                assert!(message.contains("truncated"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_pgm::<f64>(b"P2 1 1 256 0", &opts()).is_err());
        assert!(parse_pgm::<f64>(b"P2 2 1 255 0", &opts()).is_err());
        assert!(parse_pgm::<f64>(b"P2 1 1 100 101", &opts()).is_err());
    }

    #[test]
    fn encode_round_trip() {
        let s = parse_pgm(b"P2 3 2 255 255 0 255 0 0 255", &opts()).unwrap();
        for raw in [false, true] {
            assert_eq!(parse_pgm(&encode_pgm(&s, raw), &opts()).unwrap(), s);
        }
    }
}
