use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// An element of a finite carrier.
///
/// Product carriers hold `Pair` atoms, so `(a,(b,c))` and `((a,b),c)` are
/// different atoms; re-association is always an explicit relation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// The unique element of the one-point carrier.
    Point,
    Int(i64),
    Name(Arc<str>),
    Pair(Arc<(Atom, Atom)>),
}

impl Atom {
    pub fn name(s: &str) -> Atom {
        Atom::Name(Arc::from(s))
    }

    pub fn pair(a: Atom, b: Atom) -> Atom {
        Atom::Pair(Arc::new((a, b)))
    }

    pub fn as_pair(&self) -> Option<(&Atom, &Atom)> {
        match self {
            Atom::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Atom::Int(n) => Some(*n),
            _ => None,
        }
    }
}

impl From<i64> for Atom {
    fn from(n: i64) -> Self {
        Atom::Int(n)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        s.parse().unwrap_or_else(|_| Atom::name(s))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Point => write!(f, "*"),
            Atom::Int(n) => write!(f, "{n}"),
            Atom::Name(s) => write!(f, "{s}"),
            Atom::Pair(p) => write!(f, "({},{})", p.0, p.1),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed atom {0:?}")]
pub struct AtomParseError(pub String);

impl FromStr for Atom {
    type Err = AtomParseError;

    /// Inverse of `Display`: `*`, decimal integers, `(a,b)` pairs, and bare
    /// names free of whitespace, parentheses and commas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (atom, rest) = parse_prefix(s).ok_or_else(|| AtomParseError(s.to_string()))?;
        if rest.is_empty() {
            Ok(atom)
        } else {
            Err(AtomParseError(s.to_string()))
        }
    }
}

fn parse_prefix(s: &str) -> Option<(Atom, &str)> {
    if let Some(rest) = s.strip_prefix('(') {
        let (a, rest) = parse_prefix(rest)?;
        let rest = rest.strip_prefix(',')?;
        let (b, rest) = parse_prefix(rest)?;
        let rest = rest.strip_prefix(')')?;
        return Some((Atom::pair(a, b), rest));
    }
    let end = s
        .find(|c: char| c == ',' || c == ')' || c == '(' || c.is_whitespace())
        .unwrap_or(s.len());
    let token = &s[..end];
    if token.is_empty() {
        return None;
    }
    let atom = if token == "*" {
        Atom::Point
    } else if let Ok(n) = token.parse::<i64>() {
        Atom::Int(n)
    } else {
        Atom::name(token)
    };
    Some((atom, &s[end..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_round_trip() {
        let a = Atom::pair(Atom::Int(-3), Atom::pair(Atom::name("x"), Atom::Point));
        let text = a.to_string();
        assert_eq!(text, "(-3,(x,*))");
        assert_eq!(text.parse::<Atom>().unwrap(), a);
    }

    #[test]
    fn rejects_garbage() {
        assert!("(a,b".parse::<Atom>().is_err());
        assert!("".parse::<Atom>().is_err());
        assert!("a b".parse::<Atom>().is_err());
    }
}
