use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A finite string over {0, 1}, one cell value per byte.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString(Vec<u8>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid bit string `{0}`: expected only '0' and '1'")]
pub struct ParseBitsError(pub String);

impl BitString {
    /// Wraps cell values; panics if any value is not 0 or 1.
    pub fn from_cells(cells: Vec<u8>) -> Self {
        assert!(cells.iter().all(|&c| c <= 1), "cells must be 0 or 1");
        BitString(cells)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&c| c == 1).count()
    }

    pub fn hamming(&self, other: &BitString) -> Option<usize> {
        (self.len() == other.len())
            .then(|| self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            f.write_str(if c == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.bytes()
            .map(|b| match b {
                b'0' => Ok(0),
                b'1' => Ok(1),
                _ => Err(ParseBitsError(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
