//! Finite binary structures: a vertex set together with a total label map
//! on ordered vertex pairs over a finite alphabet.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Finite label alphabet. Symbols are the integers `0..size`; one of them is
/// the designated diagonal symbol used for pairs `(x, x)`.
///
/// The diagonal value carries no structural information; we fix a symbol for
/// it and exclude it from every type computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelAlphabet {
    pub size: u8,
    pub diagonal: u8,
}

impl LabelAlphabet {
    pub fn new(size: u8, diagonal: u8) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("alphabet must have at least one symbol"));
        }
        if diagonal >= size {
            return Err(Error::invalid("diagonal symbol outside alphabet"));
        }
        Ok(LabelAlphabet { size, diagonal })
    }

    /// Two symbols, diagonal 0: the alphabet of loopless graphs.
    pub fn binary() -> Self {
        LabelAlphabet { size: 2, diagonal: 0 }
    }
}

/// A binary structure: vertices `0..n` and a label `d(x, y)` for every
/// ordered pair. `d(x, x)` is always the diagonal symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryStructure {
    n: usize,
    alphabet: LabelAlphabet,
    labels: Vec<u8>,
}

impl BinaryStructure {
    /// Structure with all off-diagonal labels set to `fill`.
    pub fn constant(n: usize, alphabet: LabelAlphabet, fill: u8) -> Result<Self> {
        if fill >= alphabet.size {
            return Err(Error::invalid("fill symbol outside alphabet"));
        }
        let mut labels = vec![fill; n * n];
        for x in 0..n {
            labels[x * n + x] = alphabet.diagonal;
        }
        Ok(BinaryStructure { n, alphabet, labels })
    }

    pub fn from_labels(n: usize, alphabet: LabelAlphabet, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::invalid("label matrix has wrong size"));
        }
        if labels.iter().any(|&s| s >= alphabet.size) {
            return Err(Error::invalid("label outside alphabet"));
        }
        let mut s = BinaryStructure { n, alphabet, labels };
        for x in 0..n {
            s.labels[x * n + x] = alphabet.diagonal;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> LabelAlphabet {
        self.alphabet
    }

    pub fn label(&self, x: usize, y: usize) -> u8 {
        self.labels[x * self.n + y]
    }

    pub fn set_label(&mut self, x: usize, y: usize, symbol: u8) {
        debug_assert!(x != y && symbol < self.alphabet.size);
        self.labels[x * self.n + y] = symbol;
    }

    /// Restriction to a subset of vertices, in increasing vertex order.
    /// Returns the restricted structure and the map from new to old ids.
    pub fn restrict(&self, vertices: &[usize]) -> (BinaryStructure, Vec<usize>) {
        let map: Vec<usize> = vertices.to_vec();
        let k = map.len();
        let mut labels = vec![self.alphabet.diagonal; k * k];
        for (i, &x) in map.iter().enumerate() {
            for (j, &y) in map.iter().enumerate() {
                labels[i * k + j] = self.label(x, y);
            }
        }
        (
            BinaryStructure { n: k, alphabet: self.alphabet, labels },
            map,
        )
    }
}
