//! Character expressions.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := 'std' | 'adj' | 'triv'
//!        | 'irrep' '[' int (',' int)* ']'
//!        | 'weights' '[' weight (',' weight)* ']'
//!        | 'ext' '(' int ',' expr ')' | 'sym' '(' int ',' expr ')'
//!        | 'tensor' '(' expr ',' expr ')' | 'dual' '(' expr ')'
//!        | 'box' '(' expr '@' type ',' expr '@' type ')'
//!        | '(' expr ')'
//! weight := '[' rat (',' rat)* ']'      rat := int ('/' int)?
//! ```
//!
//! `+` is the direct sum. Highest weights and raw weights are in the
//! fundamental-weight basis. `box` builds a character of the product group.

use std::collections::BTreeMap;
use std::sync::Arc;

use kempf_core::character::{
    adjoint_character, exterior_char, external_tensor, irreducible_character, standard_character, sym_char, tensor_char,
    Character,
};
use kempf_core::rational::try_q;
use kempf_core::root_system::{RootSystem, Weight};
use kempf_core::Q;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Std,
    Adj,
    Trivial,
    Irrep(Vec<i64>),
    Weights(Vec<Vec<Q>>),
    Ext(usize, Box<Expr>),
    Sym(usize, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Dual(Box<Expr>),
    Sum(Vec<Expr>),
    External { left: Box<Expr>, left_type: String, right: Box<Expr>, right_type: String },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> CliResult<T> {
        Err(CliError::Parse(format!("character expression at offset {}: {}", self.pos, msg.into())))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> CliResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next().filter(|&c| f(c)) {
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> &'a str {
        self.take_while(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    fn int(&mut self) -> CliResult<i64> {
        self.skip_ws();
        let start = self.pos;
        self.eat('-');
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err("expected an integer");
        }
        match self.src[start..self.pos].replace(char::is_whitespace, "").parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err("integer out of range"),
        }
    }

    fn count(&mut self) -> CliResult<usize> {
        let v = self.int()?;
        usize::try_from(v).or_else(|_| self.err("expected a non-negative integer"))
    }

    fn rat(&mut self) -> CliResult<Q> {
        let n = self.int()?;
        let d = if self.eat('/') { self.int()? } else { 1 };
        Ok(try_q(n, d)?)
    }

    fn list<T>(&mut self, open: char, close: char, mut item: impl FnMut(&mut Self) -> CliResult<T>) -> CliResult<Vec<T>> {
        self.expect(open)?;
        let mut out = vec![item(self)?];
        while self.eat(',') {
            out.push(item(self)?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn type_label(&mut self) -> CliResult<String> {
        let label = self.take_while(|c| c.is_ascii_alphanumeric());
        if label.is_empty() {
            return self.err("expected a root system type such as A2 or A1xB2");
        }
        Ok(label.to_owned())
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> CliResult<Expr> {
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        let start = self.pos;
        let name = self.ident();
        let e = match name {
            "std" => Expr::Std,
            "adj" => Expr::Adj,
            "triv" | "trivial" => Expr::Trivial,
            "irrep" => Expr::Irrep(self.list('[', ']', Self::int)?),
            "weights" => Expr::Weights(self.list('[', ']', |p| p.list('[', ']', Self::rat))?),
            "ext" | "sym" => {
                self.expect('(')?;
                let k = self.count()?;
                self.expect(',')?;
                let inner = Box::new(self.expr()?);
                self.expect(')')?;
                if name == "ext" {
                    Expr::Ext(k, inner)
                } else {
                    Expr::Sym(k, inner)
                }
            }
            "tensor" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Expr::Tensor(Box::new(a), Box::new(b))
            }
            "dual" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(')')?;
                Expr::Dual(Box::new(a))
            }
            "box" => {
                self.expect('(')?;
                let left = Box::new(self.expr()?);
                self.expect('@')?;
                let left_type = self.type_label()?;
                self.expect(',')?;
                let right = Box::new(self.expr()?);
                self.expect('@')?;
                let right_type = self.type_label()?;
                self.expect(')')?;
                Expr::External { left, left_type, right, right_type }
            }
            "" => return self.err("expected a character term"),
            other => {
                self.pos = start;
                return self.err(format!("unknown term `{other}`"));
            }
        };
        Ok(e)
    }
}

pub fn parse(src: &str) -> CliResult<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Evaluates over `ambient`; `box` terms carry their own types and may omit it.
pub fn eval(e: &Expr, ambient: Option<&Arc<RootSystem>>) -> CliResult<Character> {
    let need = || ambient.ok_or_else(|| CliError::Usage("this character expression needs --type".into()));
    Ok(match e {
        Expr::Std => standard_character(need()?)?,
        Expr::Adj => adjoint_character(need()?)?,
        Expr::Trivial => Character::trivial(need()?.clone()),
        Expr::Irrep(hw) => irreducible_character(need()?, &Weight::from_i64(hw))?,
        Expr::Weights(ws) => Character::from_weight_list(need()?.clone(), ws.iter().cloned().map(Weight::new))?,
        Expr::Ext(k, inner) => exterior_char(&eval(inner, ambient)?, *k)?,
        Expr::Sym(k, inner) => sym_char(&eval(inner, ambient)?, *k)?,
        Expr::Tensor(a, b) => tensor_char(&eval(a, ambient)?, &eval(b, ambient)?)?,
        Expr::Dual(a) => eval(a, ambient)?.dual(),
        Expr::Sum(terms) => {
            let mut parts = terms.iter().map(|t| eval(t, ambient));
            let first = parts.next().expect("sums have terms")?;
            let rs = first.ambient().clone();
            let mut weights: BTreeMap<Weight, u64> = first.weights().clone();
            for part in parts {
                let part = part?;
                if part.ambient().components() != rs.components() {
                    return Err(kempf_core::Error::AmbientMismatch.into());
                }
                for (w, m) in part.weights() {
                    *weights.entry(w.clone()).or_insert(0) += m;
                }
            }
            Character::new(rs, weights)?
        }
        Expr::External { left, left_type, right, right_type } => {
            let l = eval(left, Some(&Arc::new(RootSystem::parse(left_type)?)))?;
            let r = eval(right, Some(&Arc::new(RootSystem::parse(right_type)?)))?;
            let c = external_tensor(&l, &r)?;
            if let Some(rs) = ambient {
                if rs.components() != c.ambient().components() {
                    return Err(kempf_core::Error::AmbientMismatch.into());
                }
            }
            c
        }
    })
}

pub fn parse_and_eval(src: &str, ambient: Option<&Arc<RootSystem>>) -> CliResult<Character> {
    eval(&parse(src)?, ambient)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(label: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(label).unwrap())
    }

    #[test]
    fn parses_nested_terms() {
        let e = parse("ext(2, std) + sym(2, dual(std))").unwrap();
        assert_eq!(
            e,
            Expr::Sum(vec![
                Expr::Ext(2, Box::new(Expr::Std)),
                Expr::Sym(2, Box::new(Expr::Dual(Box::new(Expr::Std)))),
            ])
        );
        assert_eq!(parse(" irrep[ 1 , -0 ] ").unwrap(), Expr::Irrep(vec![1, 0]));
        assert!(parse("ext(2 std)").is_err());
        assert!(parse("std std").is_err());
        assert!(parse("foo").is_err());
        assert!(parse("weights[[1/0]]").is_err());
    }

    #[test]
    fn evaluates_against_core() {
        let a2 = a("A2");
        let std = standard_character(&a2).unwrap();
        assert_eq!(parse_and_eval("ext(2, std)", Some(&a2)).unwrap(), std.dual());
        assert_eq!(parse_and_eval("irrep[1,1]", Some(&a2)).unwrap(), adjoint_character(&a2).unwrap());
        assert_eq!(parse_and_eval("tensor(std, dual(std))", Some(&a2)).unwrap().dim(), 9);
        assert_eq!(parse_and_eval("std + triv", Some(&a2)).unwrap().dim(), 4);
        let b = parse_and_eval("box(std@A1, std@A2)", None).unwrap();
        assert_eq!((b.dim(), b.ambient().label()), (6, "A1xA2".to_owned()));
        assert!(parse_and_eval("box(std@A1, std@A2)", Some(&a2)).is_err());
        assert!(matches!(parse_and_eval("std", None), Err(CliError::Usage(_))));
        let w = parse_and_eval("weights[[1/2, 0], [-1/2, 0]]", Some(&a2)).unwrap();
        assert_eq!(w.dim(), 2);
    }
}
