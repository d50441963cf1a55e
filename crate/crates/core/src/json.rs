//! JSON documents for heaps, trusses and rings.
//!
//! Tables are row-major nested arrays over `0..size`. A truss document may
//! carry display labels; labels never affect the structure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heap::FiniteHeap;
use crate::table::Table;
use crate::truss::{FiniteRing, FiniteTruss};

fn check_size(size: usize, tables: &[&Table]) -> Result<()> {
    match tables.iter().find(|t| t.size() != size) {
        Some(t) => Err(Error::SizeMismatch { left: size, right: t.size() }),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeapDoc {
    pub size: usize,
    pub add: Table,
}

impl HeapDoc {
    pub fn from_heap(h: &FiniteHeap) -> Self {
        Self { size: h.size(), add: h.add_table().clone() }
    }

    pub fn to_heap(&self) -> Result<FiniteHeap> {
        check_size(self.size, &[&self.add])?;
        FiniteHeap::from_group(self.add.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrussDoc {
    pub size: usize,
    pub add: Table,
    pub mul: Table,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TrussDoc {
    pub fn from_truss(t: &FiniteTruss) -> Self {
        Self { size: t.size(), add: t.heap().add_table().clone(), mul: t.mul_table().clone(), labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    fn check(&self) -> Result<()> {
        check_size(self.size, &[&self.add, &self.mul])?;
        match &self.labels {
            Some(l) if l.len() != self.size => {
                Err(Error::Malformed(format!("{} labels for {} elements", l.len(), self.size)))
            }
            _ => Ok(()),
        }
    }

    pub fn to_heap(&self) -> Result<FiniteHeap> {
        self.check()?;
        FiniteHeap::from_group(self.add.clone())
    }

    /// Validates the truss axioms; see [`FiniteTruss::new`].
    pub fn to_truss(&self) -> Result<FiniteTruss> {
        FiniteTruss::new(self.to_heap()?, self.mul.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    pub size: usize,
    pub add: Table,
    pub mul: Table,
}

impl RingDoc {
    pub fn from_ring(r: &FiniteRing) -> Self {
        Self { size: r.size(), add: r.add_table().clone(), mul: r.mul_table().clone() }
    }

    pub fn to_ring(&self) -> Result<FiniteRing> {
        check_size(self.size, &[&self.add, &self.mul])?;
        FiniteRing::new(self.add.clone(), self.mul.clone())
    }
}

pub fn parse_truss(text: &str) -> Result<FiniteTruss> {
    serde_json::from_str::<TrussDoc>(text)?.to_truss()
}

pub fn parse_heap(text: &str) -> Result<FiniteHeap> {
    serde_json::from_str::<HeapDoc>(text)?.to_heap()
}

pub fn parse_ring(text: &str) -> Result<FiniteRing> {
    serde_json::from_str::<RingDoc>(text)?.to_ring()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{f2_ring, z2_truss};

    #[test]
    fn truss_round_trip() {
        let t = z2_truss(3).unwrap();
        let text = serde_json::to_string(&TrussDoc::from_truss(&t)).unwrap();
        assert_eq!(text, r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]]}"#);
        assert_eq!(parse_truss(&text).unwrap(), t);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_truss(r#"{"size":3,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]]}"#).is_err());
        assert!(parse_truss(r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,2]]}"#).is_err());
        assert!(parse_truss(r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"labels":["a"]}"#).is_err());
        assert!(parse_truss(r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[1,1],[1,1]]}"#).is_ok());
        assert!(matches!(
            parse_truss(r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[0,0],[1,0]]}"#),
            Err(Error::InvalidTruss(_))
        ));
        assert!(parse_heap(r#"{"size":2,"add":[[0,0],[0,0]]}"#).is_err());
    }

    #[test]
    fn ring_round_trip() {
        let r = f2_ring();
        let text = serde_json::to_string(&RingDoc::from_ring(&r)).unwrap();
        assert_eq!(parse_ring(&text).unwrap(), r);
    }
}
