//! Text literals for cyclotomic numbers.
//!
//! ```text
//! entry  := term ( ('+'|'-') term )*     leading '-' allowed
//! term   := coeff | coeff '*' root | root
//! coeff  := int | int '/' posint
//! root   := 'z' posint [ '^' int ]       zQ^E is ζ_Q^E
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclo::{CycNum, MAX_ORDER};
use super::field::Rat;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn bigint(&mut self) -> Result<BigInt> {
        Ok(self.digits()?.parse::<BigInt>().unwrap())
    }

    fn coeff(&mut self) -> Result<Rat> {
        let num = self.bigint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.bigint()?;
            if den.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    fn root(&mut self) -> Result<CycNum> {
        // caller checked the 'z'
        self.pos += 1;
        let at = self.pos;
        let q: u64 = self
            .digits()?
            .parse()
            .map_err(|_| Error::OutOfRange("order".into()))?;
        if q == 0 || q > MAX_ORDER as u64 {
            self.pos = at;
            return Err(Error::OutOfRange(format!("order {q} at position {at}")));
        }
        let mut e: i64 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.pos;
            let v: i64 = self
                .digits()?
                .parse()
                .map_err(|_| Error::OutOfRange(format!("exponent at position {at}")))?;
            e = if neg { -v } else { v };
        }
        CycNum::root(q as u32, e)
    }

    fn term(&mut self) -> Result<CycNum> {
        match self.peek() {
            Some(b'z') => self.root(),
            Some(b'0'..=b'9') => {
                let c = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'z') {
                        return self.err("expected root after '*'");
                    }
                    Ok(self.root()?.scale(&c))
                } else {
                    Ok(CycNum::from_rat(c))
                }
            }
            _ => self.err("expected term"),
        }
    }
}

/// Parses one literal (no surrounding whitespace).
pub fn parse_cyc(text: &str) -> Result<CycNum> {
    let mut cur = Cursor {
        s: text.as_bytes(),
        pos: 0,
    };
    let mut negate = false;
    if cur.peek() == Some(b'-') {
        negate = true;
        cur.pos += 1;
    }
    let mut acc = cur.term()?;
    if negate {
        acc = -acc;
    }
    while let Some(c) = cur.peek() {
        let sign = match c {
            b'+' => false,
            b'-' => true,
            _ => return cur.err(format!("unexpected character '{}'", c as char)),
        };
        cur.pos += 1;
        let t = cur.term()?;
        acc = if sign { &acc - &t } else { &acc + &t };
    }
    Ok(acc)
}

fn push_term(out: &mut String, c: &Rat, root: Option<(u32, usize)>) {
    let neg = c.is_negative();
    let a = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push(if neg { '-' } else { '+' });
    }
    match root {
        None => out.push_str(&a.to_string()),
        Some((q, e)) => {
            if !a.is_one() {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push('z');
            out.push_str(&q.to_string());
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

/// Canonical text form; rational values print without a root.
pub fn format_cyc(x: &CycNum) -> String {
    if let Some(r) = x.to_rat() {
        return r.to_string();
    }
    let mut out = String::new();
    for (e, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let root = if e == 0 { None } else { Some((x.order(), e)) };
        push_term(&mut out, c, root);
    }
    out
}
