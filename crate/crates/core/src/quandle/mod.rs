//! Quandles as Cayley tables, and isomorphisms between them.

mod brute;
mod table;
mod theorem;

use std::fmt;

use serde::Serialize;

pub use brute::brute_iso;
pub use table::{alexander_table, Axiom, AxiomViolation, QuandleTable};
pub use theorem::{construct_quandle_iso, theorem1_iso, theorem1_witness};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuandleError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("invalid submodule isomorphism: {0}")]
    InvalidWitness(String),
}

/// How an isomorphism was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoMethod {
    /// Built from a Λ-isomorphism of the `(1 - t)` images.
    Theorem1Constructive,
    BruteForce,
    /// Built from the explicit formula for linear quandles.
    ClosedFormLinear,
}

impl fmt::Display for IsoMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoMethod::Theorem1Constructive => "theorem1-constructive",
            IsoMethod::BruteForce => "brute-force",
            IsoMethod::ClosedFormLinear => "closed-form-linear",
        })
    }
}

/// A quandle isomorphism given as an element map `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub map: Vec<usize>,
    pub method: IsoMethod,
}

impl IsoWitness {
    /// Checks that `map` is a bijection with `map(x^y) = map(x)^map(y)` for
    /// every pair.
    pub fn verify(&self, source: &QuandleTable, target: &QuandleTable) -> bool {
        let n = source.order();
        if target.order() != n || self.map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in &self.map {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        let f = &self.map;
        (0..n).all(|x| (0..n).all(|y| f[source.get(x, y)] == target.get(f[x], f[y])))
    }

    /// The inverse map, as a witness `target -> source`.
    pub fn inverse(&self) -> IsoWitness {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        IsoWitness { map, method: self.method }
    }

    /// The permutation as one line of space-separated indices.
    pub fn to_line(&self) -> String {
        self.map.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    }
}
