//! Square matrices over the prime field with `p` elements. Vectors are rows
//! and act on the right, matching the permutation convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::require_prime;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u64,
    d: usize,
    entries: Vec<u64>,
}

/// Result of [`FpMatrix::unipotency_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unipotency {
    Degree(usize),
    NotUnipotent,
}

impl FpMatrix {
    pub fn zero(p: u64, d: usize) -> Result<Self> {
        require_prime(p)?;
        Ok(FpMatrix {
            p,
            d,
            entries: vec![0; d * d],
        })
    }

    pub fn identity(p: u64, d: usize) -> Result<Self> {
        let mut m = Self::zero(p, d)?;
        for i in 0..d {
            m.entries[i * d + i] = 1;
        }
        Ok(m)
    }

    /// Row-major entries, reduced mod `p`.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        require_prime(p)?;
        let d = rows.len();
        let mut entries = Vec::with_capacity(d * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::PreconditionViolated("matrix must be square".into()));
            }
            entries.extend(row.iter().map(|&x| x.rem_euclid(p as i64) as u64));
        }
        Ok(FpMatrix { p, d, entries })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.d + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.d).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    fn check(&self, other: &FpMatrix) {
        assert!(
            self.p == other.p && self.d == other.d,
            "matrix shapes differ: {}x{} mod {} vs {}x{} mod {}",
            self.d,
            self.d,
            self.p,
            other.d,
            other.d,
            other.p
        );
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        self.check(other);
        let (d, p) = (self.d, self.p);
        let mut entries = vec![0u64; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] = (entries[i * d + j] + a * other.get(k, j)) % p;
                }
            }
        }
        FpMatrix { p, d, entries }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.check(other);
        let p = self.p;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FpMatrix {
            p,
            d: self.d,
            entries,
        }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut acc = Self::identity(self.p, self.d).expect("prime already checked");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.d);
        (0..self.d)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(0, |acc, (i, &x)| (acc + x * self.get(i, j)) % self.p)
            })
            .collect()
    }

    /// Least `m ≥ 1` with `T^m = 1`, or `None` when the matrix is singular.
    pub fn multiplicative_order(&self) -> Option<u64> {
        let id = Self::identity(self.p, self.d).ok()?;
        // |GL_d(p)| < p^(d^2); stop well before that for singular input
        let bound = (self.p as u128)
            .saturating_pow((self.d * self.d) as u32)
            .min(1 << 24) as u64;
        let mut cur = self.clone();
        for m in 1..=bound {
            if cur == id {
                return Some(m);
            }
            cur = cur.mul(self);
        }
        None
    }

    /// Least `m` with `(T - 1)^m = 0`. The identity has degree 1 when `d ≥ 1`
    /// and the empty matrix has degree 0.
    pub fn unipotency_degree(&self) -> Unipotency {
        if self.d == 0 {
            return Unipotency::Degree(0);
        }
        let n = self.sub(&Self::identity(self.p, self.d).expect("prime already checked"));
        let mut cur = n.clone();
        for m in 1..=self.d {
            if cur.is_zero() {
                return Unipotency::Degree(m);
            }
            cur = cur.mul(&n);
        }
        Unipotency::NotUnipotent
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(mod {}, {:?})", self.p, self.rows())
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.d {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
