//! Genus values indexed by a family of generators.

use serde::Serialize;

use crate::exactcore::{MultiPoly, RingRef, Weight};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Generator {
    /// Smooth theta divisors, read off the exponential in Hurwitz form.
    Theta,
    /// Complex projective spaces, read off the logarithm.
    ProjectiveSpace,
}

impl Generator {
    pub fn label(self, n: usize) -> String {
        match self {
            Generator::Theta => format!("Theta_{n}"),
            Generator::ProjectiveSpace => format!("CP^{n}"),
        }
    }
}

/// `values[n]` is the genus of the `n`-th generator; `values[0] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTable {
    pub genus: String,
    pub generator: Generator,
    ring: RingRef,
    values: Vec<MultiPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub generator: String,
    pub index: usize,
    pub value: String,
    pub weight: Option<u32>,
}

impl GenusTable {
    pub fn new(genus: impl Into<String>, generator: Generator, ring: &RingRef, values: Vec<MultiPoly>) -> Self {
        GenusTable {
            genus: genus.into(),
            generator,
            ring: ring.clone(),
            values,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Highest generator index covered.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> Result<&MultiPoly> {
        self.values.get(n).ok_or(Error::MissingIndex(n))
    }

    pub fn values(&self) -> &[MultiPoly] {
        &self.values
    }

    pub fn map_values(&self, f: impl FnMut(&MultiPoly) -> MultiPoly) -> GenusTable {
        let values: Vec<MultiPoly> = self.values.iter().map(f).collect();
        let ring = values[0].ring().clone();
        GenusTable {
            genus: self.genus.clone(),
            generator: self.generator,
            ring,
            values,
        }
    }

    /// Rows for indices `1..=max_index`.
    pub fn rows(&self) -> Vec<TableRow> {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, v)| TableRow {
                generator: self.generator.label(n),
                index: n,
                value: v.to_text(),
                weight: match v.weight() {
                    Weight::Homogeneous(w) => Some(w),
                    _ => None,
                },
            })
            .collect()
    }
}
