//! Two-dimensional little-endian `f32` arrays in the npy container.
//!
//! Writing is canonical: format 1.0, the header dict
//! `{'descr': '<f4', 'fortran_order': False, 'shape': (R, C), }` padded with
//! spaces and a final newline so the data starts on a 64-byte boundary.
//! Reading accepts format 1.x–3.x headers in any key order.

use std::io::{Read, Write};

use crate::{Error, Result};

pub const MAGIC: &[u8; 6] = b"\x93NUMPY";
const ALIGN: usize = 64;

/// Row-major `rows × cols` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Array2 {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f32>,
}

impl Array2 {
    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

pub fn header_bytes(rows: usize, cols: usize) -> Vec<u8> {
    let dict = format!("{{'descr': '<f4', 'fortran_order': False, 'shape': ({rows}, {cols}), }}");
    // magic + version + u16 length + dict + padding + '\n'
    let unpadded = MAGIC.len() + 2 + 2 + dict.len() + 1;
    let pad = (ALIGN - unpadded % ALIGN) % ALIGN;
    let header_len = dict.len() + pad + 1;
    let mut out = Vec::with_capacity(unpadded + pad);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&[1, 0]);
    out.extend_from_slice(&(header_len as u16).to_le_bytes());
    out.extend_from_slice(dict.as_bytes());
    out.extend(std::iter::repeat_n(b' ', pad));
    out.push(b'\n');
    out
}

pub fn write_array<W: Write>(w: &mut W, array: &Array2) -> Result<()> {
    debug_assert_eq!(array.data.len(), array.rows * array.cols);
    w.write_all(&header_bytes(array.rows, array.cols))?;
    let mut body = Vec::with_capacity(array.data.len() * 4);
    for v in &array.data {
        body.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&body)?;
    Ok(())
}

pub fn read_array<R: Read>(r: &mut R) -> Result<Array2> {
    let mut magic = [0u8; 6];
    r.read_exact(&mut magic).map_err(|_| Error::BadMagic)?;
    if &magic != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut version = [0u8; 2];
    r.read_exact(&mut version)?;
    let header_len = match version[0] {
        1 => {
            let mut b = [0u8; 2];
            r.read_exact(&mut b)?;
            u16::from_le_bytes(b) as usize
        }
        2 | 3 => {
            let mut b = [0u8; 4];
            r.read_exact(&mut b)?;
            u32::from_le_bytes(b) as usize
        }
        _ => return Err(Error::UnsupportedVersion(version[0], version[1])),
    };
    let mut header = vec![0u8; header_len];
    r.read_exact(&mut header).map_err(|_| Error::Header("truncated header".into()))?;
    let header = String::from_utf8(header).map_err(|_| Error::Header("header is not text".into()))?;
    let dict = HeaderDict::parse(&header)?;
    if dict.descr != "<f4" {
        return Err(Error::UnsupportedDtype(dict.descr));
    }
    if dict.fortran_order {
        return Err(Error::FortranOrder);
    }
    let [rows, cols] = dict.shape[..] else {
        return Err(Error::BadRank(dict.shape.len()));
    };
    let expected = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(4))
        .ok_or_else(|| Error::Header("shape overflows".into()))?;
    let mut body = Vec::with_capacity(expected);
    r.read_to_end(&mut body)?;
    if body.len() != expected {
        return Err(Error::Truncated { expected, found: body.len() });
    }
    let data = body.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
    Ok(Array2 { rows, cols, data })
}

#[derive(Debug, PartialEq)]
struct HeaderDict {
    descr: String,
    fortran_order: bool,
    shape: Vec<usize>,
}

/// Values appearing in an npy header dict.
#[derive(Debug, PartialEq)]
enum Literal {
    Str(String),
    Bool(bool),
    Tuple(Vec<usize>),
}

impl HeaderDict {
    fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { s: text.trim_end().as_bytes(), i: 0 };
        p.expect(b'{')?;
        let (mut descr, mut fortran, mut shape) = (None, None, None);
        loop {
            p.skip_ws();
            if p.eat(b'}') {
                break;
            }
            let Literal::Str(key) = p.literal()? else {
                return Err(p.error("expected string key"));
            };
            p.skip_ws();
            p.expect(b':')?;
            let value = p.literal()?;
            match (key.as_str(), value) {
                ("descr", Literal::Str(s)) => descr = Some(s),
                ("fortran_order", Literal::Bool(b)) => fortran = Some(b),
                ("shape", Literal::Tuple(t)) => shape = Some(t),
                (k, _) => return Err(Error::Header(format!("unexpected entry {k:?}"))),
            }
            p.skip_ws();
            if !p.eat(b',') {
                p.skip_ws();
                p.expect(b'}')?;
                break;
            }
        }
        Ok(Self {
            descr: descr.ok_or_else(|| Error::Header("missing 'descr'".into()))?,
            fortran_order: fortran.ok_or_else(|| Error::Header("missing 'fortran_order'".into()))?,
            shape: shape.ok_or_else(|| Error::Header("missing 'shape'".into()))?,
        })
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Header(format!("{what} at offset {}", self.i))
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_whitespace()) {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", c as char)))
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        self.skip_ws();
        match self.s.get(self.i) {
            Some(&q @ (b'\'' | b'"')) => {
                self.i += 1;
                let start = self.i;
                while self.s.get(self.i).is_some_and(|&c| c != q) {
                    self.i += 1;
                }
                let text =
                    std::str::from_utf8(&self.s[start..self.i]).map_err(|_| self.error("bad string"))?;
                let text = text.to_owned();
                if !self.eat(q) {
                    return Err(self.error("unterminated string"));
                }
                Ok(Literal::Str(text))
            }
            Some(b'(') => {
                self.i += 1;
                let mut dims = Vec::new();
                loop {
                    self.skip_ws();
                    if self.eat(b')') {
                        break;
                    }
                    let start = self.i;
                    while self.s.get(self.i).is_some_and(u8::is_ascii_digit) {
                        self.i += 1;
                    }
                    let digits = std::str::from_utf8(&self.s[start..self.i]).unwrap_or_default();
                    dims.push(digits.parse().map_err(|_| self.error("expected dimension"))?);
                    self.skip_ws();
                    if !self.eat(b',') {
                        self.expect(b')')?;
                        break;
                    }
                }
                Ok(Literal::Tuple(dims))
            }
            _ if self.s[self.i..].starts_with(b"True") => {
                self.i += 4;
                Ok(Literal::Bool(true))
            }
            _ if self.s[self.i..].starts_with(b"False") => {
                self.i += 5;
                Ok(Literal::Bool(false))
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}
