//! Text formats for rings, s-matrices, Hadamard matrices and lifts.
//!
//! Blank lines and lines starting with `#` are skipped.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{format_cyc, parse_cyc, CycNum, Matrix};
use crate::quotients::LiftPresentation;
use crate::spectra::SMatrix;

/// Lifts of rank above this are written in the sparse form.
pub const DENSE_LIFT_LIMIT: usize = 64;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        pos: line,
        msg: msg.into(),
    })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .or_else(|_| syntax(line, format!("bad number '{tok}'")))
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    word: &str,
) -> Result<(usize, Vec<&'a str>)> {
    let Some((ln, l)) = lines.next() else {
        return syntax(0, format!("missing '{word}' line"));
    };
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.first() != Some(&word) {
        return syntax(ln, format!("expected '{word}'"));
    }
    Ok((ln, toks[1..].to_vec()))
}

/// Raw contents of a ring file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingFile {
    pub n: usize,
    pub tensor: Vec<i64>,
    pub tilde: Vec<usize>,
}

pub fn parse_ring(text: &str) -> Result<RingFile> {
    let mut lines = content_lines(text);
    let (ln, v) = expect_header(&mut lines, "zbrng")?;
    if v != ["1"] {
        return syntax(ln, "unsupported version");
    }
    let (ln, v) = expect_header(&mut lines, "n")?;
    let [tok] = v.as_slice() else {
        return syntax(ln, "expected 'n <n>'");
    };
    let n: usize = parse_num(tok, ln)?;
    if n == 0 {
        return syntax(ln, "rank must be positive");
    }
    let (ln, v) = expect_header(&mut lines, "involution")?;
    if v.len() != n {
        return syntax(ln, format!("involution needs {n} entries"));
    }
    let tilde = v
        .iter()
        .map(|t| parse_num(t, ln))
        .collect::<Result<Vec<usize>>>()?;
    let tensor = parse_blocks(&mut lines, n)?;
    Ok(RingFile { n, tensor, tilde })
}

fn parse_blocks<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, n: usize) -> Result<Vec<i64>> {
    let mut tensor = vec![0i64; n * n * n];
    for i in 0..n {
        let (ln, v) = expect_header(lines, "N")?;
        if v.len() != 1 || parse_num::<usize>(v[0], ln)? != i {
            return syntax(ln, format!("expected 'N {i}'"));
        }
        for j in 0..n {
            let Some((ln, l)) = lines.next() else {
                return syntax(0, format!("block {i} is short"));
            };
            let row: Vec<i64> = l
                .split_whitespace()
                .map(|t| parse_num(t, ln))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return syntax(ln, format!("expected {n} integers"));
            }
            tensor[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&row);
        }
    }
    if let Some((ln, _)) = lines.next() {
        return syntax(ln, "trailing content");
    }
    Ok(tensor)
}

fn write_blocks(out: &mut String, n: usize, tensor: &[i64]) {
    for i in 0..n {
        out.push_str(&format!("N {i}\n"));
        for j in 0..n {
            let row = &tensor[(i * n + j) * n..(i * n + j + 1) * n];
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
}

pub fn format_ring(n: usize, tensor: &[i64], tilde: &[usize]) -> String {
    let mut out = format!("zbrng 1\nn {n}\ninvolution");
    for t in tilde {
        out.push_str(&format!(" {t}"));
    }
    out.push('\n');
    write_blocks(&mut out, n, tensor);
    out
}

/// Numeric entries are written `(re,im)`; a matrix with any such entry is
/// read as numeric.
pub fn parse_smatrix(text: &str) -> Result<SMatrix> {
    let mut lines = content_lines(text);
    let (ln, v) = expect_header(&mut lines, "smatrix")?;
    if v != ["1"] {
        return syntax(ln, "unsupported version");
    }
    let (ln, v) = expect_header(&mut lines, "n")?;
    let [r, c] = v.as_slice() else {
        return syntax(ln, "expected 'n <rows> <cols>'");
    };
    let (rows, cols): (usize, usize) = (parse_num(r, ln)?, parse_num(c, ln)?);
    if rows == 0 || cols == 0 {
        return syntax(ln, "dimensions must be positive");
    }
    let mut toks: Vec<(usize, String)> = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let Some((ln, l)) = lines.next() else {
            return syntax(0, "missing rows");
        };
        let row: Vec<&str> = l.split_whitespace().collect();
        if row.len() != cols {
            return syntax(ln, format!("expected {cols} entries"));
        }
        toks.extend(row.into_iter().map(|t| (ln, t.to_string())));
    }
    if let Some((ln, _)) = lines.next() {
        return syntax(ln, "trailing content");
    }
    if rows != cols {
        return Err(Error::Shape(format!("s-matrix is {rows}x{cols}")));
    }
    if toks.iter().any(|(_, t)| t.starts_with('(')) {
        let vals = toks
            .iter()
            .map(|(ln, t)| parse_complex(t, *ln))
            .collect::<Result<Vec<_>>>()?;
        return SMatrix::numeric(DMatrix::from_row_slice(rows, cols, &vals));
    }
    let vals = toks
        .iter()
        .map(|(ln, t)| {
            parse_cyc(t).map_err(|e| Error::Syntax {
                pos: *ln,
                msg: e.to_string(),
            })
        })
        .collect::<Result<Vec<CycNum>>>()?;
    SMatrix::exact(Matrix::new(rows, cols, vals)?)
}

fn parse_complex(t: &str, ln: usize) -> Result<Complex64> {
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.split_once(','));
    match inner {
        Some((re, im)) => Ok(Complex64::new(parse_num(re, ln)?, parse_num(im, ln)?)),
        None => syntax(ln, format!("bad complex entry '{t}'")),
    }
}

pub fn format_smatrix(s: &SMatrix) -> String {
    let n = s.n();
    let mut out = format!("smatrix 1\nn {n} {n}\n");
    match s {
        SMatrix::Exact(m) => {
            for r in 0..n {
                let cells: Vec<String> = m.row(r).iter().map(format_cyc).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        SMatrix::Numeric(m) => {
            for r in 0..n {
                let cells: Vec<String> = (0..n)
                    .map(|c| format!("({:?},{:?})", m[(r, c)].re, m[(r, c)].im))
                    .collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

/// Rows of `+`/`-` characters or of whitespace-separated `±1`.
pub fn parse_hadamard(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for (ln, l) in content_lines(text) {
        let row: Vec<i64> = if l.chars().all(|c| c == '+' || c == '-') {
            l.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()
        } else {
            l.split_whitespace()
                .map(|t| match t {
                    "1" | "+1" => Ok(1),
                    "-1" => Ok(-1),
                    _ => syntax(ln, format!("bad entry '{t}'")),
                })
                .collect::<Result<_>>()?
        };
        rows.push(row);
    }
    if rows.is_empty() {
        return syntax(0, "empty matrix");
    }
    Ok(rows)
}

pub fn format_hadamard(rows: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for r in rows {
        out.extend(r.iter().map(|&x| if x > 0 { '+' } else { '-' }));
        out.push('\n');
    }
    out
}

/// Lifted tensor and ideal lines as read back from a lift file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFile {
    pub m: usize,
    pub tensor: Vec<(usize, usize, usize, i64)>,
    pub ideal: Vec<(String, Vec<i64>)>,
}

/// Block format for small lifts; above [`DENSE_LIFT_LIMIT`] a `sparse`
/// line follows the header and products are listed as `i j : k c`.
pub fn format_lift(lift: &LiftPresentation) -> String {
    let alg = &lift.lifted;
    let m = alg.rank();
    let mut out = format!("zbrng 1\nn {m}\n");
    if m <= DENSE_LIFT_LIMIT {
        write_blocks(&mut out, m, &alg.dense_tensor());
    } else {
        out.push_str("sparse\n");
        for i in 0..m {
            for j in 0..m {
                for &(k, c) in alg.product(i, j) {
                    out.push_str(&format!("{i} {j} : {k} {c}\n"));
                }
            }
        }
    }
    for (x, mu) in lift.ideal_generators() {
        let cells: Vec<String> = mu.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("ideal {} : {}\n", alg.labels()[x], cells.join(" ")));
    }
    out
}

pub fn parse_lift(text: &str) -> Result<LiftFile> {
    let all: Vec<(usize, &str)> = content_lines(text).collect();
    let split = all
        .iter()
        .position(|(_, l)| l.starts_with("ideal"))
        .unwrap_or(all.len());
    let mut lines = all[..split].iter().copied();
    let (ln, v) = expect_header(&mut lines, "zbrng")?;
    if v != ["1"] {
        return syntax(ln, "unsupported version");
    }
    let (ln, v) = expect_header(&mut lines, "n")?;
    let [tok] = v.as_slice() else {
        return syntax(ln, "expected 'n <n>'");
    };
    let m: usize = parse_num(tok, ln)?;
    let mut rest = lines.clone().peekable();
    let tensor = if rest.peek().is_some_and(|(_, l)| *l == "sparse") {
        rest.next();
        rest.map(|(ln, l)| {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                [i, j, ":", k, c] => Ok((
                    parse_num(i, ln)?,
                    parse_num(j, ln)?,
                    parse_num(k, ln)?,
                    parse_num(c, ln)?,
                )),
                _ => syntax(ln, "expected 'i j : k c'"),
            }
        })
        .collect::<Result<Vec<_>>>()?
    } else {
        let dense = parse_blocks(&mut lines, m)?;
        let mut t = Vec::new();
        for (p, &c) in dense.iter().enumerate() {
            if c != 0 {
                t.push((p / (m * m), (p / m) % m, p % m, c));
            }
        }
        t
    };
    if tensor.iter().any(|&(i, j, k, _)| i >= m || j >= m || k >= m) {
        return Err(Error::OutOfRange("lift index".into()));
    }
    let ideal = all[split..]
        .iter()
        .map(|&(ln, l)| {
            let body = l.strip_prefix("ideal").unwrap_or(l);
            let Some((label, coeffs)) = body.split_once(':') else {
                return syntax(ln, "expected 'ideal <label> : <coefficients>'");
            };
            let coeffs = coeffs
                .split_whitespace()
                .map(|t| parse_num(t, ln))
                .collect::<Result<Vec<i64>>>()?;
            Ok((label.trim().to_string(), coeffs))
        })
        .collect::<Result<_>>()?;
    Ok(LiftFile { m, tensor, ideal })
}
