//! Constructor expressions naming spaces on the command line.
//!
//! ```text
//! expr  := "(" expr ")" | "file:" path | "point"
//!        | ("discrete" | "interval" | "circle" | "sphere") ":" number
//!        | ("product" | "join") ":" expr "," expr
//!        | ("op" | "suspension") ":" expr
//!        | "wedge" ":" part ("," part)*
//! part  := expr ["@" label]
//! label := bare label up to "," or ")" | JSON string
//! ```
//!
//! `wedge` takes every remaining comma-separated argument, so a wedge nested
//! inside another constructor needs parentheses. A missing basepoint means
//! the first maximal point.

use std::path::Path;

use thiserror::Error;

use super::json::{read_space_file, SpaceFileError};
use crate::space::{
    circle_model, discrete, interval_model, nh_join, nh_suspension, opposite, point, product,
    sphere_model, wedge, FiniteSpace, SpaceError,
};

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("at byte {offset} of `{source_text}`: {message}")]
    Syntax {
        source_text: String,
        offset: usize,
        message: String,
    },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    File(#[from] SpaceFileError),
}

/// Loads a space from a constructor expression, a `file:` expression, or a
/// path to an existing JSON file.
pub fn load_space(source: &str) -> Result<FiniteSpace, ExprError> {
    let path = Path::new(source);
    if !source.starts_with("file:") && (source.ends_with(".json") || path.is_file()) {
        return Ok(read_space_file(path)?);
    }
    parse_space_expr(source)
}

pub fn parse_space_expr(source: &str) -> Result<FiniteSpace, ExprError> {
    let mut p = Parser { src: source, pos: 0 };
    let space = p.expr()?;
    if p.pos != source.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(space)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExprError {
        ExprError::Syntax {
            source_text: self.src.to_string(),
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn take_while(&mut self, keep: impl Fn(char) -> bool) -> &str {
        let len = self.rest().find(|c| !keep(c)).unwrap_or(self.rest().len());
        let start = self.pos;
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<usize, ExprError> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits.parse().map_err(|_| {
            self.pos = start;
            self.error("expected a number")
        })
    }

    fn label(&mut self) -> Result<String, ExprError> {
        if self.rest().starts_with('"') {
            let mut stream = serde_json::Deserializer::from_str(self.rest()).into_iter::<String>();
            return match stream.next() {
                Some(Ok(s)) => {
                    self.pos += stream.byte_offset();
                    Ok(s)
                }
                _ => Err(self.error("malformed quoted label")),
            };
        }
        let label = self.take_while(|c| c != ',' && c != ')').to_string();
        if label.is_empty() {
            return Err(self.error("expected a basepoint label"));
        }
        Ok(label)
    }

    fn expr(&mut self) -> Result<FiniteSpace, ExprError> {
        if self.eat('(') {
            let space = self.expr()?;
            self.expect(')')?;
            return Ok(space);
        }
        let start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphabetic()).to_string();
        if name == "point" {
            return Ok(point());
        }
        if name.is_empty() {
            return Err(self.error("expected a constructor name"));
        }
        self.expect(':')?;
        let space = match name.as_str() {
            "file" => {
                let path = self.take_while(|c| c != ',' && c != ')').to_string();
                read_space_file(Path::new(&path))?
            }
            "discrete" => discrete(self.number()?)?,
            "interval" => interval_model(self.number()?)?,
            "circle" => circle_model(self.number()?)?,
            "sphere" => sphere_model(self.number()?)?,
            "product" | "join" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if name == "product" {
                    product(&a, &b)
                } else {
                    nh_join(&a, &b)
                }
            }
            "op" | "opposite" => opposite(&self.expr()?),
            "suspension" => nh_suspension(&self.expr()?),
            "wedge" => {
                let mut spaces = Vec::new();
                let mut bases = Vec::new();
                loop {
                    let space = self.expr()?;
                    let base = if self.eat('@') {
                        self.label()?
                    } else {
                        let m = space.maximal_points().first().expect("spaces are nonempty");
                        space.label(m).to_string()
                    };
                    spaces.push(space);
                    bases.push(base);
                    if !self.eat(',') {
                        break;
                    }
                }
                wedge(&spaces, &bases)?
            }
            _ => {
                self.pos = start;
                return Err(self.error(&format!("unknown constructor `{name}`")));
            }
        };
        Ok(space)
    }
}
