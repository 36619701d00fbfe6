//! Cartan data for the simple Lie algebras of types A_N and B_N.
//!
//! Nodes are numbered `1..=N`. In type B the short node is `N`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::A => f.write_str("A"),
            Kind::B => f.write_str("B"),
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "B" | "b" => Ok(Kind::B),
            other => Err(Error::Parse(format!("unknown Lie type {other:?}"))),
        }
    }
}

/// A Lie type `A_N` (N >= 1) or `B_N` (N >= 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    kind: Kind,
    rank: usize,
}

impl LieType {
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        let min = match kind {
            Kind::A => 1,
            Kind::B => 2,
        };
        if rank < min {
            return Err(Error::InvalidRank { kind, rank });
        }
        Ok(LieType { kind, rank })
    }

    /// Shorthand for `A_n`; panics on an invalid rank.
    pub fn a(rank: usize) -> Self {
        Self::new(Kind::A, rank).expect("invalid rank for type A")
    }

    /// Shorthand for `B_n`; panics on an invalid rank.
    pub fn b(rank: usize) -> Self {
        Self::new(Kind::B, rank).expect("invalid rank for type B")
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::NodeOutOfRange { node: i, rank: self.rank })
        } else {
            Ok(())
        }
    }

    /// `r_i`: 1 everywhere in type A; in type B 2 on long nodes, 1 on node N.
    pub fn r(&self, i: usize) -> i64 {
        match self.kind {
            Kind::A => 1,
            Kind::B if i == self.rank => 1,
            Kind::B => 2,
        }
    }

    /// The lacing number `r^∨`.
    pub fn r_check(&self) -> i64 {
        match self.kind {
            Kind::A => 1,
            Kind::B => 2,
        }
    }

    pub fn cartan(&self) -> CartanData {
        CartanData::new(*self)
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind, self.rank)
    }
}

/// Cartan matrix `C`, the symmetrizing vector `r`, and `B = DC`.
///
/// Matrices are stored 0-based; the accessors take 1-based node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub lie_type: LieType,
    pub cartan: Vec<Vec<i64>>,
    pub r: Vec<i64>,
    pub r_check: i64,
    pub symmetrized: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(lie_type: LieType) -> Self {
        let n = lie_type.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            if i + 1 < n {
                cartan[i][i + 1] = -1;
                cartan[i + 1][i] = -1;
            }
        }
        if lie_type.kind() == Kind::B {
            // Row N pairs the short coroot with the long root N-1.
            cartan[n - 1][n - 2] = -2;
        }
        let r: Vec<i64> = (1..=n).map(|i| lie_type.r(i)).collect();
        let symmetrized = (0..n)
            .map(|i| (0..n).map(|j| r[i] * cartan[i][j]).collect())
            .collect();
        CartanData { lie_type, cartan, r, r_check: lie_type.r_check(), symmetrized }
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    /// `C_{ij}` with 1-based indices.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// The simple root `α_i` in the fundamental-weight basis (column `i` of `C`).
    pub fn simple_root(&self, i: usize) -> Result<Weight> {
        self.lie_type.check_node(i)?;
        Ok(Weight((1..=self.rank()).map(|j| self.c(j, i)).collect()))
    }

    /// `s_i(λ) = λ - ⟨λ, α_i^∨⟩ α_i`.
    pub fn simple_reflection(&self, i: usize, w: &Weight) -> Result<Weight> {
        let alpha = self.simple_root(i)?;
        if w.0.len() != self.rank() {
            return Err(Error::Domain(format!(
                "weight of length {} for rank {}",
                w.0.len(),
                self.rank()
            )));
        }
        let pairing = w.0[i - 1];
        Ok(Weight(w.0.iter().zip(&alpha.0).map(|(x, a)| x - pairing * a).collect()))
    }
}

/// An integral weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
