//! Bundle expressions and their prefix text grammar.
//!
//! ```text
//! expr := "Q" | "S" | "Theta" | "O(" int ")" | "irr[" int ("," int)* ("|" int ("," int)*)? "]"
//!       | "wedge(" int "," expr ")" | "sym(" int "," expr ")" | "dual(" expr ")"
//!       | "twist(" expr "," int ")" | "tensor(" expr "," expr ")" | "sum(" expr "," expr ")"
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::weight::{BlockWeight, GrassContext};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// Irreducible bundle with the given highest weight.
    Irr(BlockWeight),
    /// Universal quotient bundle, weight `(1,0,…,0 | 0,…,0)`.
    Q,
    /// Tautological sub-bundle, weight `(0,…,0 | 1,0,…,0)`.
    S,
    LineO(i64),
    /// Tangent bundle `Q ⊗ S*`, weight `(1,0,…,0 | 0,…,0,−1)`.
    Theta,
    Wedge(usize, Box<BundleExpr>),
    Sym(usize, Box<BundleExpr>),
    Dual(Box<BundleExpr>),
    Twist(Box<BundleExpr>, i64),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    DirectSum(Box<BundleExpr>, Box<BundleExpr>),
}

impl BundleExpr {
    pub fn wedge(p: usize, e: BundleExpr) -> Self {
        BundleExpr::Wedge(p, Box::new(e))
    }

    pub fn sym(p: usize, e: BundleExpr) -> Self {
        BundleExpr::Sym(p, Box::new(e))
    }

    pub fn dual(e: BundleExpr) -> Self {
        BundleExpr::Dual(Box::new(e))
    }

    pub fn twist(e: BundleExpr, r: i64) -> Self {
        BundleExpr::Twist(Box::new(e), r)
    }

    pub fn tensor(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sum(a: BundleExpr, b: BundleExpr) -> Self {
        BundleExpr::DirectSum(Box::new(a), Box::new(b))
    }

    /// Direct sum of a nonempty list, folded to the left.
    pub fn sum_of(mut parts: Vec<BundleExpr>) -> Option<Self> {
        if parts.is_empty() {
            return None;
        }
        let first = parts.remove(0);
        Some(parts.into_iter().fold(first, BundleExpr::sum))
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Irr(w) => {
                f.write_str("irr[")?;
                write_ints(f, w.first())?;
                if !w.has_trivial_second_block() {
                    f.write_str("|")?;
                    write_ints(f, w.second())?;
                }
                f.write_str("]")
            }
            BundleExpr::Q => f.write_str("Q"),
            BundleExpr::S => f.write_str("S"),
            BundleExpr::Theta => f.write_str("Theta"),
            BundleExpr::LineO(r) => write!(f, "O({r})"),
            BundleExpr::Wedge(p, e) => write!(f, "wedge({p},{e})"),
            BundleExpr::Sym(p, e) => write!(f, "sym({p},{e})"),
            BundleExpr::Dual(e) => write!(f, "dual({e})"),
            BundleExpr::Twist(e, r) => write!(f, "twist({e},{r})"),
            BundleExpr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            BundleExpr::DirectSum(a, b) => write!(f, "sum({a},{b})"),
        }
    }
}

fn write_ints(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Parse an expression on `Gr(k, n)`.
pub fn parse_expr(text: &str, ctx: GrassContext) -> Result<BundleExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Split a comma-separated list of expressions at top-level commas.
pub fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: GrassContext,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse().map_err(|_| Error::Parse {
            offset: start,
            message: "expected an integer".into(),
        })
    }

    fn nonneg(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| Error::Parse {
            offset: start,
            message: format!("expected a nonnegative integer, got {v}"),
        })
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        let mut v = vec![self.int()?];
        loop {
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b',') {
                self.pos += 1;
                v.push(self.int()?);
            } else {
                return Ok(v);
            }
        }
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident().to_string();
        let e = match name.as_str() {
            "Q" => BundleExpr::Q,
            "S" => BundleExpr::S,
            "Theta" => BundleExpr::Theta,
            "O" => {
                self.eat(b'(')?;
                let r = self.int()?;
                self.eat(b')')?;
                BundleExpr::LineO(r)
            }
            "irr" => {
                self.eat(b'[')?;
                let at = self.pos;
                let first = self.int_list()?;
                self.skip_ws();
                let second = if self.src.get(self.pos) == Some(&b'|') {
                    self.pos += 1;
                    self.int_list()?
                } else {
                    vec![0; self.ctx.m()]
                };
                self.eat(b']')?;
                let w = BlockWeight::new(self.ctx, first, second).map_err(|e| Error::Parse {
                    offset: at,
                    message: e.to_string(),
                })?;
                BundleExpr::Irr(w)
            }
            "wedge" | "sym" => {
                self.eat(b'(')?;
                let p = self.nonneg()?;
                self.eat(b',')?;
                let inner = self.expr()?;
                self.eat(b')')?;
                if name == "wedge" {
                    BundleExpr::wedge(p, inner)
                } else {
                    BundleExpr::sym(p, inner)
                }
            }
            "dual" => {
                self.eat(b'(')?;
                let inner = self.expr()?;
                self.eat(b')')?;
                BundleExpr::dual(inner)
            }
            "twist" => {
                self.eat(b'(')?;
                let inner = self.expr()?;
                self.eat(b',')?;
                let r = self.int()?;
                self.eat(b')')?;
                BundleExpr::twist(inner, r)
            }
            "tensor" | "sum" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b')')?;
                if name == "tensor" {
                    BundleExpr::tensor(a, b)
                } else {
                    BundleExpr::sum(a, b)
                }
            }
            "" => {
                return Err(Error::Parse {
                    offset: start,
                    message: "expected an expression".into(),
                })
            }
            other => {
                return Err(Error::Parse {
                    offset: start,
                    message: format!("unknown constructor `{other}`"),
                })
            }
        };
        Ok(e)
    }
}
