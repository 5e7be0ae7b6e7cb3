//! Spin pairs, satisfying vectors, and transfer matrices.
//!
//! The counting pipeline tracks, for a partially built triangulation, how
//! many satisfying spin states are compatible with each assignment of spins
//! to the two endpoints of the bottom edge. Those four tallies form a
//! [`SatisfyingVector`]; the linear maps that push a tally across one
//! construction step are [`TransferMatrix`] values.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigUint;
use num_traits::Zero;

/// Arbitrary-precision state count. Counts are never negative.
pub type BigCount = BigUint;

/// A single Ising spin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub const ALL: [Spin; 2] = [Spin::Plus, Spin::Minus];

    /// The opposite spin.
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Plus => "+",
            Spin::Minus => "-",
        })
    }
}

/// Ordered spin assignment to the two endpoints of a bottom edge.
///
/// The fixed index order `(++, +-, -+, --)` = `(0, 1, 2, 3)` is shared by
/// every vector and matrix in the crate; the first sign is the spin of the
/// first bottom vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum SpinPair {
    PlusPlus = 0,
    PlusMinus = 1,
    MinusPlus = 2,
    MinusMinus = 3,
}

impl SpinPair {
    pub const ALL: [SpinPair; 4] = [
        SpinPair::PlusPlus,
        SpinPair::PlusMinus,
        SpinPair::MinusPlus,
        SpinPair::MinusMinus,
    ];

    pub fn new(first: Spin, second: Spin) -> SpinPair {
        match (first, second) {
            (Spin::Plus, Spin::Plus) => SpinPair::PlusPlus,
            (Spin::Plus, Spin::Minus) => SpinPair::PlusMinus,
            (Spin::Minus, Spin::Plus) => SpinPair::MinusPlus,
            (Spin::Minus, Spin::Minus) => SpinPair::MinusMinus,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Inverse of [`SpinPair::index`]. Panics when `i > 3`.
    pub fn from_index(i: usize) -> SpinPair {
        SpinPair::ALL[i]
    }

    pub fn first(self) -> Spin {
        match self {
            SpinPair::PlusPlus | SpinPair::PlusMinus => Spin::Plus,
            SpinPair::MinusPlus | SpinPair::MinusMinus => Spin::Minus,
        }
    }

    pub fn second(self) -> Spin {
        match self {
            SpinPair::PlusPlus | SpinPair::MinusPlus => Spin::Plus,
            SpinPair::PlusMinus | SpinPair::MinusMinus => Spin::Minus,
        }
    }

    /// The pair with both spins flipped. Pairs swap `0 <-> 3` and `1 <-> 2`.
    pub fn flipped(self) -> SpinPair {
        SpinPair::new(self.first().flipped(), self.second().flipped())
    }
}

impl fmt::Display for SpinPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first(), self.second())
    }
}

/// Per-spin-pair tally of satisfying states, indexed by [`SpinPair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatisfyingVector(pub [BigCount; 4]);

impl SatisfyingVector {
    /// The all-ones vector: the tally for a single edge, which every spin
    /// pair satisfies vacuously.
    pub fn ones() -> SatisfyingVector {
        SatisfyingVector(std::array::from_fn(|_| BigCount::from(1u32)))
    }

    pub fn zeros() -> SatisfyingVector {
        SatisfyingVector(std::array::from_fn(|_| BigCount::zero()))
    }

    pub fn from_u64(entries: [u64; 4]) -> SatisfyingVector {
        SatisfyingVector(entries.map(BigCount::from))
    }

    /// Sum of all four entries: the total satisfying-state count.
    pub fn total(&self) -> BigCount {
        self.0.iter().sum()
    }

    /// Whether the tally is invariant under a global spin flip, i.e. entries
    /// `++`/`--` agree and entries `+-`/`-+` agree.
    pub fn is_flip_symmetric(&self) -> bool {
        self[SpinPair::PlusPlus] == self[SpinPair::MinusMinus]
            && self[SpinPair::PlusMinus] == self[SpinPair::MinusPlus]
    }
}

impl Index<SpinPair> for SatisfyingVector {
    type Output = BigCount;

    fn index(&self, pair: SpinPair) -> &BigCount {
        &self.0[pair.index()]
    }
}

impl IndexMut<SpinPair> for SatisfyingVector {
    fn index_mut(&mut self, pair: SpinPair) -> &mut BigCount {
        &mut self.0[pair.index()]
    }
}

impl fmt::Display for SatisfyingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// A 4x4 nonnegative integer matrix acting on satisfying vectors.
///
/// Rows index the spin pair of the new bottom edge, columns the spin pair of
/// the old one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    entries: [[BigCount; 4]; 4],
}

impl TransferMatrix {
    pub fn zeros() -> TransferMatrix {
        TransferMatrix {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| BigCount::zero())),
        }
    }

    pub fn identity() -> TransferMatrix {
        let mut m = TransferMatrix::zeros();
        for i in 0..4 {
            m.entries[i][i] = BigCount::from(1u32);
        }
        m
    }

    pub fn from_rows(rows: [[u64; 4]; 4]) -> TransferMatrix {
        TransferMatrix {
            entries: rows.map(|row| row.map(BigCount::from)),
        }
    }

    pub fn entry(&self, row: SpinPair, col: SpinPair) -> &BigCount {
        &self.entries[row.index()][col.index()]
    }

    pub fn set_entry(&mut self, row: SpinPair, col: SpinPair, value: BigCount) {
        self.entries[row.index()][col.index()] = value;
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &TransferMatrix) -> TransferMatrix {
        let mut out = TransferMatrix::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = BigCount::zero();
                for k in 0..4 {
                    acc += &self.entries[i][k] * &rhs.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vector(&self, v: &SatisfyingVector) -> SatisfyingVector {
        let mut out = SatisfyingVector::zeros();
        for i in 0..4 {
            let mut acc = BigCount::zero();
            for k in 0..4 {
                acc += &self.entries[i][k] * &v.0[k];
            }
            out.0[i] = acc;
        }
        out
    }

    /// `self` raised to the `k`-th power by binary exponentiation.
    pub fn pow(&self, k: u64) -> TransferMatrix {
        let mut result = TransferMatrix::identity();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

impl fmt::Display for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            writeln!(f, "[{} {} {} {}]", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}
