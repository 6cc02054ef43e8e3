use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(format!("unknown side `{s}`")),
        }
    }
}

/// A size that may be countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(u64),
    Aleph0,
}

impl Cardinal {
    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Aleph0 => None,
        }
    }

    /// `|m| * self`, with `ℵ₀` absorbing.
    pub fn scale(self, m: u64) -> Cardinal {
        match self {
            Cardinal::Finite(n) => Cardinal::Finite(n * m),
            Cardinal::Aleph0 => Cardinal::Aleph0,
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => write!(f, "aleph0"),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinal::Finite(n) => s.serialize_u64(*n),
            Cardinal::Aleph0 => s.serialize_str("aleph0"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProofStatus {
    Proven,
    BoundOnly,
}
