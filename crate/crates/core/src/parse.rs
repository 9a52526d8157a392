//! Text grammar for braid words and free-group words.
//!
//! Braid words: `s<i>`, `A[i,j]`, `A[i1,...,ir]` (full twist on the set),
//! `mu[i,j]` (half twist on `{i..j}`), `D2`, `1`, parentheses, postfix
//! `^<int>`, conjugation `X^{w}` meaning `w⁻¹ X w`, and the J-set form
//! `A[..]^{{j1,j2}}`. Juxtaposition is product.
//!
//! Free words: `t<i>` or `x<i>`, `1`, parentheses and `^<int>`.

use thiserror::Error;

use crate::braid::{b_j, delta_sq, half_twist_range, twist, BraidError, BraidWord};
use crate::freegroup::{FreeGroupError, FreeWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("column {col}: {source}")]
    Braid { col: usize, source: BraidError },
    #[error("column {col}: {source}")]
    Free { col: usize, source: FreeGroupError },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { col, .. } | ParseError::Braid { col, .. } | ParseError::Free { col, .. } => *col,
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { src: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { col: self.col(), msg: msg.into() })
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && (self.src[self.pos] == b'-' || self.src[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let col = self.col();
        let v = self.int()?;
        if v <= 0 {
            return Err(ParseError::Syntax { col, msg: format!("index must be positive, got {v}") });
        }
        Ok(v as usize)
    }

    fn index_list(&mut self, close: &str) -> Result<Vec<usize>, ParseError> {
        let mut out = vec![self.index()?];
        while self.eat(",") {
            out.push(self.index()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn done(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn braid_err(col: usize) -> impl Fn(BraidError) -> ParseError {
    move |source| ParseError::Braid { col, source }
}

/// Parses a braid word on `n` strands.
pub fn parse_braid(text: &str, n: usize) -> Result<BraidWord, ParseError> {
    let mut c = Cursor::new(text);
    let w = braid_product(&mut c, n)?;
    if !c.done() {
        return c.err("unexpected input");
    }
    Ok(w)
}

fn braid_product(c: &mut Cursor, n: usize) -> Result<BraidWord, ParseError> {
    let mut out = BraidWord::identity(n);
    while let Some(ch) = c.peek() {
        if ch == b')' || ch == b'}' {
            break;
        }
        let t = braid_term(c, n)?;
        out.append(&t);
    }
    Ok(out)
}

fn braid_term(c: &mut Cursor, n: usize) -> Result<BraidWord, ParseError> {
    let (mut w, twist_set) = braid_atom(c, n)?;
    let mut first = true;
    while c.eat("^") {
        let pcol = c.col();
        if c.eat("{{") {
            let Some(v) = twist_set.as_ref().filter(|_| first) else {
                return Err(ParseError::Syntax { col: pcol, msg: "J-set superscript needs a bare A[...]".into() });
            };
            let j = c.index_list("}}")?;
            if j.iter().any(|x| v.contains(x)) {
                return Err(ParseError::Braid { col: pcol, source: BraidError::JMeetsV { v: v.clone(), j } });
            }
            let bj = b_j(v, &j, n).map_err(braid_err(pcol))?;
            w = w.conjugate_by(&bj.expand()).map_err(braid_err(pcol))?;
        } else if c.eat("{") {
            let y = braid_product(c, n)?;
            c.expect("}")?;
            w = w.conjugate_by(&y).map_err(braid_err(pcol))?;
        } else {
            let e = c.int()?;
            w = w.pow(e);
        }
        first = false;
    }
    Ok(w)
}

/// Returns the atom and, for `A[...]`, its index set.
fn braid_atom(c: &mut Cursor, n: usize) -> Result<(BraidWord, Option<Vec<usize>>), ParseError> {
    c.skip_ws();
    let col = c.col();
    match c.peek() {
        Some(b'(') => {
            c.pos += 1;
            let w = braid_product(c, n)?;
            c.expect(")")?;
            Ok((w, None))
        }
        Some(b's') => {
            c.pos += 1;
            let i = c.index()?;
            let w = BraidWord::new(n, [i as i32]).map_err(braid_err(col))?;
            Ok((w, None))
        }
        Some(b'A') => {
            c.pos += 1;
            c.expect("[")?;
            let set = c.index_list("]")?;
            let w = twist(&set, n).map_err(braid_err(col))?;
            if w.factors().len() != set.len() * (set.len() - 1) / 2 {
                return Err(ParseError::Syntax { col, msg: "repeated index in A[...]".into() });
            }
            Ok((w.expand(), Some(set)))
        }
        Some(b'm') => {
            c.expect("mu")?;
            c.expect("[")?;
            let i = c.index()?;
            c.expect(",")?;
            let j = c.index()?;
            c.expect("]")?;
            if j <= i {
                return Err(ParseError::Syntax { col, msg: format!("mu[{i},{j}] needs i < j") });
            }
            Ok((half_twist_range(i, j - i + 1, n).map_err(braid_err(col))?, None))
        }
        Some(b'D') => {
            c.expect("D2")?;
            Ok((delta_sq(n).map_err(braid_err(col))?, None))
        }
        Some(b'1') => {
            c.pos += 1;
            Ok((BraidWord::identity(n), None))
        }
        Some(ch) => c.err(format!("unexpected `{}`", ch as char)),
        None => c.err("unexpected end of input"),
    }
}

/// Parses a free-group word of rank `rank`; `t` and `x` prefixes are both accepted.
pub fn parse_free(text: &str, rank: usize) -> Result<FreeWord, ParseError> {
    let mut c = Cursor::new(text);
    let letters = free_product(&mut c, rank)?;
    if !c.done() {
        return c.err("unexpected input");
    }
    FreeWord::new(rank, letters).map_err(|source| ParseError::Free { col: 1, source })
}

fn free_product(c: &mut Cursor, rank: usize) -> Result<Vec<i32>, ParseError> {
    let mut out = Vec::new();
    while let Some(ch) = c.peek() {
        if ch == b')' {
            break;
        }
        let col = c.col();
        let mut atom = match ch {
            b'(' => {
                c.pos += 1;
                let w = free_product(c, rank)?;
                c.expect(")")?;
                w
            }
            b't' | b'x' => {
                c.pos += 1;
                let i = c.index()?;
                if i > rank {
                    return Err(ParseError::Free {
                        col,
                        source: FreeGroupError::IndexOutOfRange { index: i, rank },
                    });
                }
                vec![i as i32]
            }
            b'1' => {
                c.pos += 1;
                Vec::new()
            }
            _ => return c.err(format!("unexpected `{}`", ch as char)),
        };
        while c.eat("^") {
            let e = c.int()?;
            let base: Vec<i32> = if e < 0 { atom.iter().rev().map(|l| -l).collect() } else { atom.clone() };
            atom = base.repeat(e.unsigned_abs() as usize);
        }
        out.extend(atom);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braids_equal, pure_gen};

    fn eq(a: &BraidWord, b: &BraidWord) -> bool {
        braids_equal(a, b).unwrap()
    }

    #[test]
    fn generators_and_inverses() {
        let w = parse_braid("s1 s2^-1 s3", 4).unwrap();
        assert_eq!(w.letters(), &[1, -2, 3]);
        assert_eq!(parse_braid("1", 3).unwrap(), BraidWord::identity(3));
        assert_eq!(parse_braid("", 3).unwrap(), BraidWord::identity(3));
        assert_eq!(parse_braid("(s1 s2)^2", 3).unwrap().letters(), &[1, 2, 1, 2]);
        assert_eq!(parse_braid("(s1 s2)^-1", 3).unwrap().letters(), &[-2, -1]);
    }

    #[test]
    fn round_trips_display() {
        let w = parse_braid("s3 s1^-1 s2 s2", 5).unwrap();
        assert_eq!(parse_braid(&w.to_string(), 5).unwrap(), w);
    }

    #[test]
    fn named_braids() {
        assert!(eq(&parse_braid("A[1,3]", 3).unwrap(), &pure_gen(1, 3, 3).unwrap()));
        assert!(eq(&parse_braid("A[1,2,3]", 3).unwrap(), &parse_braid("D2", 3).unwrap()));
        assert_eq!(parse_braid("mu[2,4]", 4).unwrap().letters(), &[2, 3, 2]);
        assert!(parse_braid("mu[2,2]", 4).is_err());
    }

    #[test]
    fn conjugation_forms() {
        let a = parse_braid("A[2,5]^{A[3,5] A[4,5]}", 5).unwrap();
        let y = parse_braid("A[3,5] A[4,5]", 5).unwrap();
        let lit = y.inverse().mul(&pure_gen(2, 5, 5).unwrap()).unwrap().mul(&y).unwrap();
        assert!(eq(&a, &lit));
        let j = parse_braid("A[1,6]^{{4,5}}", 6).unwrap();
        let bj = parse_braid("A[4,6] A[5,6]", 6).unwrap();
        assert!(eq(&j, &pure_gen(1, 6, 6).unwrap().conjugate_by(&bj).unwrap()));
        assert!(parse_braid("s1^{{2}}", 3).is_err());
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_braid("s1 s5", 3).unwrap_err();
        assert_eq!(e.column(), 4);
        let e = parse_braid("s1 q", 3).unwrap_err();
        assert_eq!(e.column(), 4);
        assert!(parse_braid("(s1", 3).is_err());
    }

    #[test]
    fn free_words() {
        assert_eq!(parse_free("t1 t2^-1 t2 t3", 3).unwrap().letters(), &[1, 3]);
        assert_eq!(parse_free("x2^2", 2).unwrap().letters(), &[2, 2]);
        assert_eq!(parse_free("(t1 t2)^-1", 2).unwrap().letters(), &[-2, -1]);
        assert!(parse_free("t4", 3).is_err());
        assert!(parse_free("1", 3).unwrap().is_identity());
    }
}
