//! Reader for Θ-terms.
//!
//! ```text
//! obj ::= "[" nat "]" | "[" nat "](" obj ("," obj)* ")"
//! ```
//!
//! Whitespace is ignored. A bare `[p]` with `p > 0` abbreviates
//! `[p]([0],…,[0])`. Children of unequal height are padded to the tallest one,
//! and the result lives at its minimal height.

use super::obj::{assemble, ThetaObj};
use crate::error::{Error, Result};

pub fn parse_obj(text: &str) -> Result<ThetaObj> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let obj = p.obj()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(obj)
}

/// Parses and pads to `height`.
pub fn parse_obj_at(text: &str, height: usize) -> Result<ThetaObj> {
    parse_obj(text)?.pad(height)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn nat(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "number too large".into() })
    }

    fn obj(&mut self) -> Result<ThetaObj> {
        let open = {
            self.skip_ws();
            self.pos
        };
        self.expect(b'[')?;
        let width = self.nat()?;
        self.expect(b']')?;
        if self.peek() != Some(b'(') {
            return Ok(if width == 0 { ThetaObj::point(0) } else { ThetaObj::linear(width, 1) });
        }
        self.pos += 1;
        let mut children = vec![self.obj()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            children.push(self.obj()?);
        }
        self.expect(b')')?;
        if children.len() != width {
            return Err(Error::Arity { pos: open, width, found: children.len() });
        }
        assemble(children)
    }
}
