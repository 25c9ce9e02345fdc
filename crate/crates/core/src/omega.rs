use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// A natural number extended with the limit value `omega`.
///
/// Used for diameters of disconnected graphs, tuple ranks, and game round
/// bounds. `Finite(a) < Finite(b)` iff `a < b`, and `Omega` is greater than
/// every finite value. Serializes as a JSON number or the string `"omega"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NatOmega {
    Finite(u64),
    Omega,
}

impl NatOmega {
    pub fn is_finite(self) -> bool {
        matches!(self, NatOmega::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            NatOmega::Finite(v) => Some(v),
            NatOmega::Omega => None,
        }
    }
}

impl PartialOrd for NatOmega {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NatOmega {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NatOmega::Finite(a), NatOmega::Finite(b)) => a.cmp(b),
            (NatOmega::Finite(_), NatOmega::Omega) => Ordering::Less,
            (NatOmega::Omega, NatOmega::Finite(_)) => Ordering::Greater,
            (NatOmega::Omega, NatOmega::Omega) => Ordering::Equal,
        }
    }
}

impl From<u64> for NatOmega {
    fn from(v: u64) -> Self {
        NatOmega::Finite(v)
    }
}

impl fmt::Display for NatOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatOmega::Finite(v) => write!(f, "{v}"),
            NatOmega::Omega => write!(f, "omega"),
        }
    }
}

impl Serialize for NatOmega {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NatOmega::Finite(v) => s.serialize_u64(*v),
            NatOmega::Omega => s.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for NatOmega {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = NatOmega;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a non-negative integer or the string \"omega\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<NatOmega, E> {
                Ok(NatOmega::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<NatOmega, E> {
                u64::try_from(v)
                    .map(NatOmega::Finite)
                    .map_err(|_| E::custom("negative value"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<NatOmega, E> {
                if v == "omega" {
                    Ok(NatOmega::Omega)
                } else {
                    v.parse().map(NatOmega::Finite).map_err(E::custom)
                }
            }
        }
        d.deserialize_any(V)
    }
}
