use std::fmt;
use std::str::FromStr;

use super::{constructors, FiniteSpace, SpaceError};

/// How a space was built. Informational only; equality of spaces ignores it.
///
/// The textual form is `explicit`, `discrete(3)`, `product(circle(2),circle(2))`,
/// `wedge(circle(2)@"y0",circle(3)@"y0")` and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Explicit,
    Discrete(usize),
    Interval(usize),
    Circle(usize),
    Sphere(usize),
    Product(Box<SpaceKind>, Box<SpaceKind>),
    Opposite(Box<SpaceKind>),
    Join(Box<SpaceKind>, Box<SpaceKind>),
    Suspension(Box<SpaceKind>),
    /// Wedge summands with the label of each basepoint.
    Wedge(Vec<(SpaceKind, String)>),
}

impl SpaceKind {
    /// Rebuilds the space this provenance describes, or `None` when it
    /// contains an explicit (file-given) part.
    pub fn rebuild(&self) -> Option<Result<FiniteSpace, SpaceError>> {
        Some(match self {
            SpaceKind::Explicit => return None,
            SpaceKind::Discrete(n) => constructors::discrete(*n),
            SpaceKind::Interval(m) => constructors::interval_model(*m),
            SpaceKind::Circle(n) => constructors::circle_model(*n),
            SpaceKind::Sphere(n) => constructors::sphere_model(*n),
            SpaceKind::Product(a, b) => {
                let a = a.rebuild()?;
                let b = b.rebuild()?;
                a.and_then(|a| b.map(|b| constructors::product(&a, &b)))
            }
            SpaceKind::Opposite(a) => a.rebuild()?.map(|a| constructors::opposite(&a)),
            SpaceKind::Join(a, b) => {
                let a = a.rebuild()?;
                let b = b.rebuild()?;
                a.and_then(|a| b.map(|b| constructors::nh_join(&a, &b)))
            }
            SpaceKind::Suspension(a) => a.rebuild()?.map(|a| constructors::nh_suspension(&a)),
            SpaceKind::Wedge(parts) => {
                let mut spaces = Vec::with_capacity(parts.len());
                let mut bases = Vec::with_capacity(parts.len());
                for (k, base) in parts {
                    match k.rebuild()? {
                        Ok(s) => spaces.push(s),
                        Err(e) => return Some(Err(e)),
                    }
                    bases.push(base.clone());
                }
                constructors::wedge(&spaces, &bases)
            }
        })
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Explicit => write!(f, "explicit"),
            SpaceKind::Discrete(n) => write!(f, "discrete({n})"),
            SpaceKind::Interval(m) => write!(f, "interval({m})"),
            SpaceKind::Circle(n) => write!(f, "circle({n})"),
            SpaceKind::Sphere(n) => write!(f, "sphere({n})"),
            SpaceKind::Product(a, b) => write!(f, "product({a},{b})"),
            SpaceKind::Opposite(a) => write!(f, "opposite({a})"),
            SpaceKind::Join(a, b) => write!(f, "join({a},{b})"),
            SpaceKind::Suspension(a) => write!(f, "suspension({a})"),
            SpaceKind::Wedge(parts) => {
                write!(f, "wedge(")?;
                for (i, (k, base)) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    let quoted = serde_json::to_string(base).map_err(|_| fmt::Error)?;
                    write!(f, "{k}@{quoted}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed space kind at byte {offset}: {message}")]
pub struct KindParseError {
    pub offset: usize,
    pub message: String,
}

impl FromStr for SpaceKind {
    type Err = KindParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = KindParser { src: s, pos: 0 };
        let kind = p.kind()?;
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(kind)
    }
}

struct KindParser<'a> {
    src: &'a str,
    pos: usize,
}

impl KindParser<'_> {
    fn error(&self, message: &str) -> KindParseError {
        KindParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> Result<(), KindParseError> {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> &str {
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        let start = self.pos;
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<usize, KindParseError> {
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        let digits = &self.rest()[..len];
        let n = digits.parse().map_err(|_| self.error("expected a number"))?;
        self.pos += len;
        Ok(n)
    }

    fn quoted(&mut self) -> Result<String, KindParseError> {
        let mut de = serde_json::Deserializer::from_str(self.rest()).into_iter::<String>();
        match de.next() {
            Some(Ok(s)) => {
                self.pos += de.byte_offset();
                Ok(s)
            }
            _ => Err(self.error("expected a quoted label")),
        }
    }

    fn kind(&mut self) -> Result<SpaceKind, KindParseError> {
        let name = self.ident().to_string();
        if name == "explicit" {
            return Ok(SpaceKind::Explicit);
        }
        self.eat('(')?;
        let kind = match name.as_str() {
            "discrete" => SpaceKind::Discrete(self.number()?),
            "interval" => SpaceKind::Interval(self.number()?),
            "circle" => SpaceKind::Circle(self.number()?),
            "sphere" => SpaceKind::Sphere(self.number()?),
            "product" | "join" => {
                let a = self.kind()?;
                self.eat(',')?;
                let b = self.kind()?;
                if name == "product" {
                    SpaceKind::Product(Box::new(a), Box::new(b))
                } else {
                    SpaceKind::Join(Box::new(a), Box::new(b))
                }
            }
            "opposite" => SpaceKind::Opposite(Box::new(self.kind()?)),
            "suspension" => SpaceKind::Suspension(Box::new(self.kind()?)),
            "wedge" => {
                let mut parts = Vec::new();
                loop {
                    let k = self.kind()?;
                    self.eat('@')?;
                    let base = self.quoted()?;
                    parts.push((k, base));
                    if self.rest().starts_with(',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                SpaceKind::Wedge(parts)
            }
            _ => return Err(self.error(&format!("unknown kind `{name}`"))),
        };
        self.eat(')')?;
        Ok(kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_round_trip() {
        let kinds = [
            SpaceKind::Explicit,
            SpaceKind::Circle(3),
            SpaceKind::Product(
                Box::new(SpaceKind::Sphere(2)),
                Box::new(SpaceKind::Opposite(Box::new(SpaceKind::Join(
                    Box::new(SpaceKind::Discrete(2)),
                    Box::new(SpaceKind::Discrete(3)),
                )))),
            ),
            SpaceKind::Wedge(vec![
                (SpaceKind::Circle(2), "y0".into()),
                (SpaceKind::Suspension(Box::new(SpaceKind::Interval(1))), "(a,\"b\")".into()),
            ]),
        ];
        for k in kinds {
            let text = k.to_string();
            assert_eq!(text.parse::<SpaceKind>().unwrap(), k, "{text}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("circle(".parse::<SpaceKind>().is_err());
        assert!("torus(2)".parse::<SpaceKind>().is_err());
        assert!("circle(2)x".parse::<SpaceKind>().is_err());
    }
}
