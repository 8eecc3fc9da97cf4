use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{Elements, StabChain};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Size limits for the brute-force paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group that may be enumerated element by element.
    pub enum_cap: u128,
    /// Largest coset space a quotient may act on.
    pub coset_cap: u128,
    /// Node budget for the potent-filtration search.
    pub search_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_cap: 200_000,
            coset_cap: 100_000,
            search_budget: 1_000_000,
        }
    }
}

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

/// A permutation group given by generators. Every subgroup is itself a
/// `PermGroup` on the same domain; the symmetric group of the domain is the
/// common parent. Cloning is cheap.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(Self::from_parts(degree, gens, None))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new(), None)
    }

    /// Wraps a chain that was grown incrementally; its strong generators
    /// become the generating set.
    pub fn from_chain(chain: StabChain) -> Self {
        let gens = chain.strong_generators();
        Self::from_parts(chain.degree(), gens, Some(chain))
    }

    pub(crate) fn from_parts(degree: usize, gens: Vec<Permutation>, chain: Option<StabChain>) -> Self {
        let cell = OnceLock::new();
        if let Some(c) = chain {
            let _ = cell.set(c);
        }
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                gens,
                chain: cell,
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    /// Stabilizer chain, built on first use.
    pub fn chain(&self) -> &StabChain {
        self.inner
            .chain
            .get_or_init(|| StabChain::from_generators(self.degree(), &self.inner.gens))
    }

    /// Forces chain construction. Idempotent.
    pub fn build_chain(&self) -> &Self {
        self.chain();
        self
    }

    pub fn has_chain(&self) -> bool {
        self.inner.chain.get().is_some()
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: x.degree(),
            });
        }
        Ok(self.chain().contains(x))
    }

    /// Membership; elements of another degree are never members.
    pub fn has(&self, x: &Permutation) -> bool {
        self.chain().contains(x)
    }

    /// Streams every element, refusing groups larger than `cap`.
    pub fn enumerate(&self, cap: u128) -> Result<Elements<'_>> {
        let order = self.order();
        if order > cap {
            return Err(Error::CapExceeded {
                what: "group enumeration",
                size: order,
                cap,
            });
        }
        Ok(self.chain().elements())
    }

    pub fn random_element(&self, seed: u64) -> Permutation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.chain().random_element(&mut rng)
    }

    pub fn random_elements(&self, seed: u64, count: usize) -> Vec<Permutation> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| self.chain().random_element(&mut rng))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.gens.iter().all(|g| g.is_identity())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.has(g))
    }

    /// Equality as subgroups: mutual containment of generators.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Whether `self` is normalized by every generator of `ambient`.
    pub fn is_normalized_by(&self, ambient: &PermGroup) -> bool {
        ambient
            .generators()
            .iter()
            .all(|g| self.generators().iter().all(|h| self.has(&h.conjugate_by(g))))
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient) && self.is_normalized_by(ambient)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| (a * b) == (b * a)))
    }

    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order(), p)
    }

    /// Whether the order is coprime to `p`.
    pub fn is_pprime_group(&self, p: u64) -> bool {
        !self.order().is_multiple_of(p as u128)
    }

    pub(crate) fn check_same_domain(&self, other: &PermGroup) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree())?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">)")
    }
}

pub(crate) fn is_power_of(mut n: u128, p: u64) -> bool {
    let p = p as u128;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut out = 1;
    while n.is_multiple_of(p) && n > 0 {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}
