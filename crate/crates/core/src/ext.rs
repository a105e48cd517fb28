//! Natural numbers extended by a top element, used for `short` and for depths.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(usize),
    Infinite,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }

    /// Adds a finite amount; the infinite value absorbs it.
    pub fn plus(self, k: usize) -> ExtNat {
        match self {
            ExtNat::Finite(n) => ExtNat::Finite(n + k),
            ExtNat::Infinite => ExtNat::Infinite,
        }
    }

    /// Subtracts, saturating at zero.
    pub fn minus(self, k: usize) -> ExtNat {
        match self {
            ExtNat::Finite(n) => ExtNat::Finite(n.saturating_sub(k)),
            ExtNat::Infinite => ExtNat::Infinite,
        }
    }

    pub fn at_least(self, k: usize) -> bool {
        self >= ExtNat::Finite(k)
    }
}

impl From<usize> for ExtNat {
    fn from(n: usize) -> Self {
        ExtNat::Finite(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => s.serialize_u64(*n as u64),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(ExtNat::Finite(n as usize)),
            Raw::S(s) if s == "inf" => Ok(ExtNat::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_is_top() {
        assert!(ExtNat::Finite(usize::MAX) < ExtNat::Infinite);
        assert_eq!(ExtNat::Finite(3).min(ExtNat::Infinite), ExtNat::Finite(3));
        assert_eq!(ExtNat::Infinite.plus(4), ExtNat::Infinite);
        assert_eq!(ExtNat::Finite(2).minus(5), ExtNat::Finite(0));
    }

    #[test]
    fn json_round_trip() {
        for v in [ExtNat::Finite(7), ExtNat::Infinite] {
            let s = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<ExtNat>(&s).unwrap(), v);
        }
    }
}
