//! JSON documents read and written by the library and the command-line tool.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;

/// `{"name": str, "vertices": [str,...], "facets": [[str,...],...]}`.
/// The vertex array order is the global vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `{"source": str, "target": str, "vertex_map": {str: str}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialMapDocument {
    pub source: String,
    pub target: String,
    pub vertex_map: BTreeMap<String, String>,
}

impl SimplicialMapDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomeoKind {
    Simplicial,
    Matrices,
}

/// A positive order or `"infinite"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u64(*n),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct OrderVisitor;
        impl Visitor<'_> for OrderVisitor {
            type Value = Order;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"infinite\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Order, E> {
                if v == 0 {
                    return Err(E::custom("order must be positive"));
                }
                Ok(Order::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Order, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom("order must be positive"))
                    .and_then(|v| self.visit_u64(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Order, E> {
                match v {
                    "infinite" => Ok(Order::Infinite),
                    _ => Err(E::custom(format!("unknown order {v:?}"))),
                }
            }
        }
        d.deserialize_any(OrderVisitor)
    }
}

/// `{"name", "kind": "simplicial"|"matrices", "vertex_map"?, "m1"?, "m2"?, "m3"?, "m4"?, "declared_order"?}`.
/// Matrices act on canonical coordinates, columns are images of generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomeoDocument {
    pub name: String,
    pub kind: HomeoKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_map: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m3: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m4: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_order: Option<Order>,
}

impl HomeoDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupShape {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

/// A pair class in the canonical bases of its complex:
/// `{"complex", "basis", "c", "d", "t", "t_group": {"rank", "torsion"}}`.
/// `basis` is the basis hash of the complex the coordinates refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairClassRecord {
    pub complex: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub c: Vec<i64>,
    pub d: Vec<i64>,
    pub t: Vec<i64>,
    pub t_group: GroupShape,
}

impl PairClassRecord {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A saved moduli model: a complex plus registered homeomorphisms by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub name: String,
    pub complex: String,
    #[serde(default)]
    pub homeos: Vec<String>,
    #[serde(default)]
    pub bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u64>,
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
