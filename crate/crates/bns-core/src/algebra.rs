//! Exact linear algebra: coefficient rings, sparse integer matrices, Smith
//! normal form, and filtered cochain complexes with Gauss elimination.

pub mod complex;
pub mod ring;
pub mod snf;

use num_bigint::BigInt;

pub use complex::{FilteredComplex, GradedPiece, PieceGroup};
pub use ring::{Field, Fp, Qq, Ring, Zz};
pub use snf::{smith_normal_form, SparseIntMatrix};

/// A finitely generated abelian group: free rank plus invariant factors
/// (each ≥ 2, in divisibility order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupDescriptor {
    pub fn zero() -> Self {
        GroupDescriptor {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
