//! Plain-text files for matrices, codes and MP descriptions.
//!
//! ```text
//! # comment
//! field p=2 e=2            # `mod=c0,c1,...,ce` selects a non-default modulus
//! defmatrix 2 2            # or `matrix r c` / `code n k` in single-object files
//! 1 1
//! 0 1
//! constituent 1
//! code 3 1                 # `code n 0` and `code n whole` need no rows
//! 1 a a^2
//! constituent 2
//! code 3 whole
//! claim code 6 4 2         # optional facts checked by `verify`
//! ```

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::lincode::LinearCode;
use crate::matgf::Matrix;
use crate::mpcode::MpCode;
use crate::oracle::Claim;

/// An MP description and the claims attached to it.
#[derive(Clone, Debug)]
pub struct MpFile {
    pub mp: MpCode,
    pub claims: Vec<Claim>,
}

/// Any of the three file kinds.
#[derive(Clone, Debug)]
pub enum Document {
    Matrix(Matrix),
    Code(LinearCode),
    Mp(MpFile),
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let body = l.split('#').next().unwrap_or("");
                let toks: Vec<&str> = body.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.items.last().map_or(1, |(l, _)| *l);
        let item = self.items.get(self.pos).cloned().ok_or_else(|| {
            Error::parse(last, format!("unexpected end of input, expected {what}"))
        })?;
        self.pos += 1;
        Ok(item)
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {tok:?}")))
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

fn parse_field(lines: &mut Lines) -> Result<Field> {
    let (line, toks) = lines.next("field header")?;
    if toks[0] != "field" {
        return Err(Error::parse(
            line,
            format!("expected `field`, found {:?}", toks[0]),
        ));
    }
    let (mut p, mut e, mut modulus) = (None, None, None);
    for t in &toks[1..] {
        let (key, value) = t
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("malformed field option {t:?}")))?;
        match key {
            "p" => p = Some(number::<u32>(line, value, "prime")?),
            "e" => e = Some(number::<u32>(line, value, "degree")?),
            "mod" => {
                let cs = value
                    .split(',')
                    .map(|c| number::<u32>(line, c, "modulus coefficient"))
                    .collect::<Result<Vec<_>>>()?;
                modulus = Some(cs);
            }
            _ => return Err(Error::parse(line, format!("unknown field option {key:?}"))),
        }
    }
    let p = p.ok_or_else(|| Error::parse(line, "missing p="))?;
    let e = e.unwrap_or(1);
    match modulus {
        Some(m) => Field::with_modulus(p, e, &m),
        None => Field::new(p, e),
    }
    .map_err(|err| at_line(line, err))
}

fn parse_rows(lines: &mut Lines, field: &Field, rows: usize, cols: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, toks) = lines.next("matrix row")?;
        if toks.len() != cols {
            return Err(Error::parse(
                line,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for t in toks {
            data.push(field.parse_elem(t).map_err(|e| at_line(line, e))?);
        }
    }
    Matrix::from_vec(field, rows, cols, data)
}

fn parse_matrix_body(lines: &mut Lines, field: &Field, keyword: &str) -> Result<Matrix> {
    let (line, toks) = lines.next(keyword)?;
    if toks[0] != keyword || toks.len() != 3 {
        return Err(Error::parse(
            line,
            format!("expected `{keyword} <rows> <cols>`"),
        ));
    }
    let r = number(line, toks[1], "row count")?;
    let c = number(line, toks[2], "column count")?;
    parse_rows(lines, field, r, c)
}

fn parse_code_body(lines: &mut Lines, field: &Field) -> Result<LinearCode> {
    let (line, toks) = lines.next("code")?;
    if toks[0] != "code" || toks.len() != 3 {
        return Err(Error::parse(line, "expected `code <n> <k>`"));
    }
    let n = number(line, toks[1], "length")?;
    if toks[2] == "whole" {
        return Ok(LinearCode::whole(field, n));
    }
    let k = number(line, toks[2], "dimension")?;
    let g = parse_rows(lines, field, k, n)?;
    let code = LinearCode::from_generator(&g);
    if code.dim() != k {
        return Err(Error::parse(
            line,
            format!("generator rows have rank {} < {k}", code.dim()),
        ));
    }
    Ok(code)
}

fn parse_holds(line: usize, tok: &str) -> Result<bool> {
    match tok {
        "holds" => Ok(true),
        "fails" => Ok(false),
        _ => Err(Error::parse(
            line,
            format!("expected holds|fails, found {tok:?}"),
        )),
    }
}

fn parse_claim(line: usize, toks: &[&str]) -> Result<Claim> {
    let opt = |i: usize| -> Result<Option<usize>> {
        toks.get(i).map(|t| number(line, t, "distance")).transpose()
    };
    let claim = match (toks.get(1).copied(), toks.len()) {
        (Some("code"), 4 | 5) => Claim::Code {
            n: number(line, toks[2], "length")?,
            k: number(line, toks[3], "dimension")?,
            d: opt(4)?,
        },
        (Some("dual"), 5 | 6) => Claim::Dual {
            ell: number(line, toks[2], "level")?,
            n: number(line, toks[3], "length")?,
            k: number(line, toks[4], "dimension")?,
            d: opt(5)?,
        },
        (Some("so"), 4) => Claim::SelfOrthogonal {
            ell: number(line, toks[2], "level")?,
            holds: parse_holds(line, toks[3])?,
        },
        (Some("dc"), 4) => Claim::DualContaining {
            ell: number(line, toks[2], "level")?,
            holds: parse_holds(line, toks[3])?,
        },
        _ => return Err(Error::parse(line, "malformed claim")),
    };
    Ok(claim)
}

fn parse_mp_body(lines: &mut Lines, field: &Field) -> Result<MpFile> {
    let (start, _) = lines.peek().cloned().unwrap_or((1, Vec::new()));
    let a = parse_matrix_body(lines, field, "defmatrix")?;
    let mut slots: Vec<Option<LinearCode>> = vec![None; a.rows()];
    let mut claims = Vec::new();
    while let Some((line, toks)) = lines.peek().cloned() {
        lines.pos += 1;
        match toks[0] {
            "constituent" => {
                if toks.len() != 2 {
                    return Err(Error::parse(line, "expected `constituent <i>`"));
                }
                let i: usize = number(line, toks[1], "constituent index")?;
                if i == 0 || i > a.rows() {
                    return Err(Error::parse(
                        line,
                        format!("constituent index {i} outside 1..={}", a.rows()),
                    ));
                }
                if slots[i - 1].is_some() {
                    return Err(Error::parse(line, format!("constituent {i} given twice")));
                }
                slots[i - 1] = Some(parse_code_body(lines, field)?);
            }
            "claim" => claims.push(parse_claim(line, &toks)?),
            other => return Err(Error::parse(line, format!("unexpected {other:?}"))),
        }
    }
    let constituents = slots
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| Error::parse(start, format!("constituent {} missing", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mp = MpCode::new(constituents, a).map_err(|e| at_line(start, e))?;
    Ok(MpFile { mp, claims })
}

fn finish(lines: &Lines) -> Result<()> {
    match lines.peek() {
        Some((line, toks)) => Err(Error::parse(*line, format!("unexpected {:?}", toks[0]))),
        None => Ok(()),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = Lines::new(text);
    let f = parse_field(&mut lines)?;
    let m = parse_matrix_body(&mut lines, &f, "matrix")?;
    finish(&lines)?;
    Ok(m)
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = Lines::new(text);
    let f = parse_field(&mut lines)?;
    let c = parse_code_body(&mut lines, &f)?;
    finish(&lines)?;
    Ok(c)
}

pub fn parse_mp(text: &str) -> Result<MpFile> {
    let mut lines = Lines::new(text);
    let f = parse_field(&mut lines)?;
    parse_mp_body(&mut lines, &f)
}

/// Dispatches on the keyword after the field header.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    let f = parse_field(&mut lines)?;
    let (line, kind) = match lines.peek() {
        Some((line, toks)) => (*line, toks[0]),
        None => return Err(Error::parse(1, "nothing after the field header")),
    };
    let doc = match kind {
        "matrix" => Document::Matrix(parse_matrix_body(&mut lines, &f, "matrix")?),
        "code" => Document::Code(parse_code_body(&mut lines, &f)?),
        "defmatrix" => return Ok(Document::Mp(parse_mp_body(&mut lines, &f)?)),
        other => return Err(Error::parse(line, format!("unknown section {other:?}"))),
    };
    finish(&lines)?;
    Ok(doc)
}

pub fn field_header(f: &Field) -> String {
    let mut s = format!("field p={} e={}", f.characteristic(), f.degree());
    if !f.has_default_modulus() {
        let cs: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        s.push_str(&format!(" mod={}", cs.join(",")));
    }
    s
}

fn rows_text(m: &Matrix) -> String {
    m.to_string()
}

pub fn write_matrix(m: &Matrix) -> String {
    format!(
        "{}\nmatrix {} {}\n{}",
        field_header(m.field()),
        m.rows(),
        m.cols(),
        rows_text(m)
    )
}

fn code_body(c: &LinearCode) -> String {
    format!("code {} {}\n{}", c.len(), c.dim(), rows_text(c.generator()))
}

pub fn write_code(c: &LinearCode) -> String {
    format!("{}\n{}", field_header(c.field()), code_body(c))
}

pub fn write_mp(mp: &MpCode, claims: &[Claim]) -> String {
    let a = mp.matrix();
    let mut s = format!(
        "{}\ndefmatrix {} {}\n{}",
        field_header(mp.field()),
        a.rows(),
        a.cols(),
        rows_text(a)
    );
    for (i, c) in mp.constituents().iter().enumerate() {
        s.push_str(&format!("constituent {}\n", i + 1));
        if c.is_whole() && !c.is_empty() {
            s.push_str(&format!("code {} whole\n", c.len()));
        } else {
            s.push_str(&code_body(c));
        }
    }
    for claim in claims {
        s.push_str(&format!("claim {claim}\n"));
    }
    s
}
