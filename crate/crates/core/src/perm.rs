//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! `x^(a*b) = (x^a)^b`: the product `a * b` applies `a` first, then `b`.
//! Commutators follow the same convention, `[x, y] = x^-1 y^-1 x y`.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A point of the permutation domain.
pub type Point = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting anything that is not a bijection.
    pub fn from_images<I>(images: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: TryInto<Point>,
    {
        let mut out = Vec::new();
        for img in images {
            let p = img
                .try_into()
                .map_err(|_| Error::InvalidPermutation("point out of range".into()))?;
            out.push(p);
        }
        let n = out.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        for &p in &out {
            let p = p as usize;
            if p >= n {
                return Err(Error::InvalidPermutation(format!("image {p} outside 0..{n}")));
            }
            if seen[p] {
                return Err(Error::InvalidPermutation(format!("image {p} repeated")));
            }
            seen[p] = true;
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Unchecked constructor for images already known to form a bijection.
    pub(crate) fn from_vec_unchecked(images: Vec<Point>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &p)| i == p as usize)
        });
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                let b = cycle[(idx + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point outside 0..{degree}"
                    )));
                }
                if touched[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} appears in two cycles"
                    )));
                }
                touched[a] = true;
                images[a] = b as Point;
            }
        }
        Ok(Permutation::from_vec_unchecked(images))
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("{msg} in cycle notation {text:?}"),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let inner = &rest[1..inner_end];
            let cycle = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(bad("points are 1-based integers")),
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `x` under this permutation.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as Point;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self^e` for any integer exponent, reduced modulo the element order.
    pub fn pow(&self, e: i128) -> Permutation {
        let n = self.degree();
        let mut out = vec![0 as Point; n];
        let mut done = vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                cycle.push(x);
                x = self.images[x] as usize;
            }
            let len = cycle.len() as i128;
            let shift = e.rem_euclid(len) as usize;
            for (i, &pt) in cycle.iter().enumerate() {
                out[pt] = cycle[(i + shift) % cycle.len()] as Point;
            }
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// Conjugate `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // x^(g^-1 a g): send x^g to (x^a)^g
        let mut out = vec![0 as Point; self.degree()];
        for (x, &ax) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[ax as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().then(&a.conjugate_by(b))
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles_with_fixed().into_iter().map(|c| c.len()).collect()
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                c.push(x);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &p)| *i != p as usize)
            .map(|(i, _)| i)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.then(rhs)
    }
}

/// 1-based cycle notation.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}
