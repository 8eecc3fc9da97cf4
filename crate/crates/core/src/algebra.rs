//! Subgroup arithmetic: joins, normal closures, commutator and power
//! subgroups, brute-force normalizers and centralizers, intersections and
//! quotients by normal subgroups.

use std::collections::HashMap;

use num_integer::Integer;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::{Limits, PermGroup};
use crate::perm::{Permutation, Point};

/// `<A, B>`.
pub fn join(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    a.check_same_domain(b)?;
    if b.is_subgroup_of(a) {
        return Ok(a.clone());
    }
    let mut chain = a.chain().clone();
    let mut gens = a.generators().to_vec();
    for g in b.generators() {
        if chain.extend(g.clone()) {
            gens.push(g.clone());
        }
    }
    Ok(PermGroup::from_parts(a.degree(), gens, Some(chain)))
}

/// Join of any number of subgroups on a `degree`-point domain.
pub fn join_all<'a, I>(degree: usize, groups: I) -> Result<PermGroup>
where
    I: IntoIterator<Item = &'a PermGroup>,
{
    let mut chain = StabChain::new(degree);
    let mut gens = Vec::new();
    for h in groups {
        if h.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: h.degree(),
            });
        }
        for g in h.generators() {
            if chain.extend(g.clone()) {
                gens.push(g.clone());
            }
        }
    }
    Ok(PermGroup::from_parts(degree, gens, Some(chain)))
}

/// Smallest subgroup containing `seeds` and closed under conjugation by the
/// generators of `ambient`.
pub(crate) fn normal_closure_of(ambient: &PermGroup, seeds: &[Permutation]) -> PermGroup {
    let degree = ambient.degree();
    let mut chain = StabChain::new(degree);
    let mut gens = Vec::new();
    let mut queue = Vec::new();
    for s in seeds {
        if chain.extend(s.clone()) {
            gens.push(s.clone());
            queue.push(s.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for g in ambient.generators() {
            let y = x.conjugate_by(g);
            if chain.extend(y.clone()) {
                gens.push(y.clone());
                queue.push(y);
            }
        }
    }
    PermGroup::from_parts(degree, gens, Some(chain))
}

/// Normal closure of `s` in `g`.
pub fn normal_closure(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    g.check_same_domain(s)?;
    Ok(normal_closure_of(g, s.generators()))
}

/// `[A, B]`, the normal closure in `<A, B>` of the generator commutators.
pub fn commutator(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    a.check_same_domain(b)?;
    let mut seeds = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            let c = Permutation::commutator(x, y);
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    if seeds.is_empty() {
        return Ok(PermGroup::trivial(a.degree()));
    }
    let ab = join(a, b)?;
    Ok(normal_closure_of(&ab, &seeds))
}

/// `[N, M, .., M]` with `M` repeated `k` times.
///
/// Stops early once a term repeats, since every later term is then equal.
pub fn iterated_commutator(n: &PermGroup, m: &PermGroup, k: u64) -> Result<PermGroup> {
    if k == 0 {
        return Err(Error::ZeroIterations);
    }
    let mut cur = commutator(n, m)?;
    for _ in 1..k {
        if cur.is_trivial() {
            break;
        }
        let next = commutator(&cur, m)?;
        if next.same_as(&cur) {
            break;
        }
        cur = next;
    }
    Ok(cur)
}

/// `N^q = <x^q : x in N>`, from the powers of every element.
pub fn power_subgroup(n: &PermGroup, q: u64, limits: &Limits) -> Result<PermGroup> {
    if q == 0 {
        return Err(Error::PreconditionViolated(
            "power exponent must be positive".into(),
        ));
    }
    let order = n.order();
    if q == 1 || order.gcd(&(q as u128)) == 1 {
        return Ok(n.clone());
    }
    let mut chain = StabChain::new(n.degree());
    let mut gens = Vec::new();
    for x in n.enumerate(limits.enum_cap)? {
        let ord = x.order() as u128;
        let e = (q as u128 % ord) as i128;
        if e == 0 {
            continue;
        }
        let y = x.pow(e);
        if chain.extend(y.clone()) {
            gens.push(y);
        }
    }
    Ok(PermGroup::from_parts(n.degree(), gens, Some(chain)))
}

/// `N_G(H)` by scanning the elements of `G`.
pub fn normalizer(g: &PermGroup, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    g.check_same_domain(h)?;
    scan_subgroup(g, limits, |x| {
        h.generators().iter().all(|y| h.has(&y.conjugate_by(x)))
    })
}

/// `C_G(S)` by scanning the elements of `G`.
pub fn centralizer(g: &PermGroup, s: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    g.check_same_domain(s)?;
    scan_subgroup(g, limits, |x| s.generators().iter().all(|y| (x * y) == (y * x)))
}

/// Subgroup of `g` generated by the elements satisfying `keep`. The predicate
/// must define a subgroup; members already generated are not re-tested.
fn scan_subgroup<F>(g: &PermGroup, limits: &Limits, keep: F) -> Result<PermGroup>
where
    F: Fn(&Permutation) -> bool,
{
    let mut chain = StabChain::new(g.degree());
    let mut gens = Vec::new();
    for x in g.enumerate(limits.enum_cap)? {
        if chain.contains(&x) || !keep(&x) {
            continue;
        }
        chain.extend(x.clone());
        gens.push(x);
    }
    Ok(PermGroup::from_parts(g.degree(), gens, Some(chain)))
}

/// `A ∩ B`, enumerating the smaller of the two.
pub fn intersect(a: &PermGroup, b: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    a.check_same_domain(b)?;
    if a.is_subgroup_of(b) {
        return Ok(a.clone());
    }
    if b.is_subgroup_of(a) {
        return Ok(b.clone());
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let mut chain = StabChain::new(a.degree());
    let mut gens = Vec::new();
    for x in small.enumerate(limits.enum_cap)? {
        if !chain.contains(&x) && large.has(&x) {
            chain.extend(x.clone());
            gens.push(x);
        }
    }
    Ok(PermGroup::from_parts(a.degree(), gens, Some(chain)))
}

/// `G/N` realized by the right-multiplication action on the cosets `Ng`.
///
/// When `N` is trivial the quotient is the identity map on `G` itself.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    base: PermGroup,
    kernel: PermGroup,
    image: PermGroup,
    /// Canonical representative of each coset; `reps[0]` lies in the kernel.
    reps: Vec<Permutation>,
    lookup: HashMap<Permutation, u32>,
}

impl QuotientGroup {
    pub fn base(&self) -> &PermGroup {
        &self.base
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn index(&self) -> usize {
        if self.is_identity_map() {
            self.base.order() as usize
        } else {
            self.reps.len()
        }
    }

    fn is_identity_map(&self) -> bool {
        self.reps.is_empty()
    }

    /// Image of a base element.
    pub fn project(&self, x: &Permutation) -> Permutation {
        if self.is_identity_map() {
            return x.clone();
        }
        let images: Vec<Point> = self.reps.iter().map(|r| self.coset_index(&r.then(x))).collect();
        Permutation::from_vec_unchecked(images)
    }

    /// Image of a subgroup of the base.
    pub fn project_subgroup(&self, h: &PermGroup) -> PermGroup {
        let gens = h.generators().iter().map(|g| self.project(g)).collect();
        PermGroup::from_parts(self.image.degree(), gens, None)
    }

    /// A base element mapping to `y`.
    pub fn section(&self, y: &Permutation) -> Permutation {
        if self.is_identity_map() {
            return y.clone();
        }
        // the image acts regularly on cosets, so `y` is determined by where it sends `N`
        self.reps[y.apply(0)].clone()
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, s: &PermGroup) -> PermGroup {
        if self.is_identity_map() {
            return s.clone();
        }
        let mut chain = self.kernel.chain().clone();
        let mut gens = self.kernel.generators().to_vec();
        for y in s.generators() {
            let x = self.section(y);
            if chain.extend(x.clone()) {
                gens.push(x);
            }
        }
        PermGroup::from_parts(self.base.degree(), gens, Some(chain))
    }

    fn coset_index(&self, x: &Permutation) -> Point {
        let key = canonical_coset_element(self.kernel.chain(), x);
        self.lookup[&key]
    }
}

/// The element of the coset `N x` whose images of the base points of `N` are
/// lexicographically least. Two elements of `N x` agreeing on the base of `N`
/// are equal, so this picks one element per coset.
fn canonical_coset_element(kernel: &StabChain, x: &Permutation) -> Permutation {
    let mut h = x.clone();
    for level in kernel.levels() {
        let mut best = 0usize;
        let mut best_img = usize::MAX;
        for (k, &beta) in level.orbit().iter().enumerate() {
            let img = h.apply(beta as usize);
            if img < best_img {
                best_img = img;
                best = k;
            }
        }
        if best != 0 {
            h = level.transversal()[best].then(&h);
        }
    }
    h
}

/// `G/N` for `N` normal in `G`.
pub fn quotient(g: &PermGroup, n: &PermGroup, limits: &Limits) -> Result<QuotientGroup> {
    g.check_same_domain(n)?;
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    if n.is_trivial() {
        return Ok(QuotientGroup {
            base: g.clone(),
            kernel: n.clone(),
            image: g.clone(),
            reps: Vec::new(),
            lookup: HashMap::new(),
        });
    }
    let index = g.order() / n.order();
    if index > limits.coset_cap {
        return Err(Error::CapExceeded {
            what: "coset space",
            size: index,
            cap: limits.coset_cap,
        });
    }
    let kchain = n.chain();
    let start = canonical_coset_element(kchain, &Permutation::identity(g.degree()));
    let mut reps = vec![start.clone()];
    let mut lookup = HashMap::new();
    lookup.insert(start, 0u32);
    let ngens = g.generators().len();
    // action[s][c] = coset reached from coset c by generator s
    let mut action: Vec<Vec<Point>> = vec![Vec::with_capacity(index as usize); ngens];
    let mut c = 0;
    while c < reps.len() {
        for (s_idx, s) in g.generators().iter().enumerate() {
            let y = canonical_coset_element(kchain, &reps[c].then(s));
            let next = reps.len() as u32;
            let target = *lookup.entry(y.clone()).or_insert(next);
            if target == next {
                reps.push(y);
            }
            action[s_idx].push(target);
        }
        c += 1;
    }
    assert_eq!(reps.len() as u128, index, "coset enumeration");
    let gens = action.into_iter().map(Permutation::from_vec_unchecked).collect();
    let image = PermGroup::from_parts(reps.len(), gens, None);
    Ok(QuotientGroup {
        base: g.clone(),
        kernel: n.clone(),
        image,
        reps,
        lookup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|c| cyc(n, c)).collect()).unwrap()
    }

    fn s4() -> PermGroup {
        grp(4, &[&[&[0, 1]], &[&[0, 1, 2, 3]]])
    }

    fn v4() -> PermGroup {
        grp(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]])
    }

    fn d8() -> PermGroup {
        grp(4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]])
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn join_examples() {
        let a = grp(4, &[&[&[0, 1]]]);
        let b = grp(4, &[&[&[2, 3]]]);
        assert!(join(&a, &PermGroup::trivial(4)).unwrap().same_as(&a));
        assert_eq!(join(&a, &b).unwrap().order(), 4);
        assert!(join(&a, &a).unwrap().same_as(&a));
        assert!(join(&a, &PermGroup::trivial(5)).is_err());
    }

    #[test]
    fn normal_closure_examples() {
        let g = s4();
        let s = grp(4, &[&[&[0, 1], &[2, 3]]]);
        let nc = normal_closure(&g, &s).unwrap();
        assert!(nc.same_as(&v4()));
        assert!(normal_closure(&g, &g).unwrap().same_as(&g));
        let c6 = grp(6, &[&[&[0, 1, 2, 3, 4, 5]]]);
        let sub = grp(6, &[&[&[0, 2, 4], &[1, 3, 5]]]);
        assert!(normal_closure(&c6, &sub).unwrap().same_as(&sub));
    }

    #[test]
    fn commutator_examples() {
        let s3 = grp(3, &[&[&[0, 1]], &[&[0, 1, 2]]]);
        let a3 = commutator(&s3, &s3).unwrap();
        assert_eq!(a3.order(), 3);
        assert!(a3.has(&cyc(3, &[&[0, 1, 2]])));
        let z = commutator(&d8(), &d8()).unwrap();
        assert_eq!(z.order(), 2);
        assert!(z.has(&cyc(4, &[&[0, 2], &[1, 3]])));
        let c = grp(6, &[&[&[0, 1, 2, 3, 4, 5]]]);
        let sub = grp(6, &[&[&[0, 3], &[1, 4], &[2, 5]]]);
        assert!(commutator(&c, &sub).unwrap().is_trivial());
    }

    #[test]
    fn iterated_commutator_examples() {
        let a4 = grp(4, &[&[&[0, 1, 2]], &[&[1, 2, 3]]]);
        assert!(iterated_commutator(&v4(), &a4, 1).unwrap().same_as(&v4()));
        assert!(iterated_commutator(&v4(), &PermGroup::trivial(4), 3)
            .unwrap()
            .is_trivial());
        assert!(iterated_commutator(&d8(), &d8(), 2).unwrap().is_trivial());
        assert_eq!(
            iterated_commutator(&d8(), &d8(), 0).unwrap_err(),
            Error::ZeroIterations
        );
        // stabilizes at V_4 however long
        assert!(iterated_commutator(&v4(), &a4, 1000).unwrap().same_as(&v4()));
    }

    #[test]
    fn power_subgroup_examples() {
        let c4 = grp(4, &[&[&[0, 1, 2, 3]]]);
        assert_eq!(power_subgroup(&c4, 2, &lim()).unwrap().order(), 2);
        assert!(power_subgroup(&s4(), 1, &lim()).unwrap().same_as(&s4()));
        let sq = power_subgroup(&d8(), 2, &lim()).unwrap();
        assert_eq!(sq.order(), 2);
        assert!(sq.has(&cyc(4, &[&[0, 2], &[1, 3]])));
        let tiny = Limits { enum_cap: 4, ..lim() };
        assert!(matches!(
            power_subgroup(&d8(), 2, &tiny),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn power_subgroup_is_not_generator_powers() {
        // generators (0 1) and (0 1 2 3) of S_4 square to <(0 2)(1 3)>, but S_4^2 = A_4
        let sq = power_subgroup(&s4(), 2, &lim()).unwrap();
        assert_eq!(sq.order(), 12);
    }

    #[test]
    fn normalizer_centralizer_intersection() {
        let g = s4();
        let c = centralizer(&g, &v4(), &lim()).unwrap();
        assert!(c.same_as(&v4()));
        assert!(normalizer(&g, &g, &lim()).unwrap().same_as(&g));
        let n = normalizer(&g, &d8(), &lim()).unwrap();
        assert!(n.same_as(&d8()));
        assert!(intersect(&d8(), &d8(), &lim()).unwrap().same_as(&d8()));
        let a4 = grp(4, &[&[&[0, 1, 2]], &[&[1, 2, 3]]]);
        assert!(intersect(&a4, &d8(), &lim()).unwrap().same_as(&v4()));
    }

    #[test]
    fn quotient_examples() {
        let g = s4();
        let q = quotient(&g, &v4(), &lim()).unwrap();
        assert_eq!(q.image().order(), 6);
        assert_eq!(q.index(), 6);
        let t = quotient(&g, &PermGroup::trivial(4), &lim()).unwrap();
        assert_eq!(t.image().order(), 24);
        let whole = quotient(&g, &g, &lim()).unwrap();
        assert_eq!(whole.image().order(), 1);
        assert_eq!(quotient(&g, &d8(), &lim()).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn projection_is_a_homomorphism_with_section() {
        let g = s4();
        let q = quotient(&g, &v4(), &lim()).unwrap();
        let elems: Vec<_> = g.enumerate(100).unwrap().collect();
        for a in &elems {
            for b in elems.iter().step_by(5) {
                assert_eq!(q.project(&(a * b)), &q.project(a) * &q.project(b));
            }
            let y = q.project(a);
            assert_eq!(q.project(&q.section(&y)), y);
        }
    }

    #[test]
    fn preimage_examples() {
        let g = s4();
        let q = quotient(&g, &v4(), &lim()).unwrap();
        let triv = PermGroup::trivial(q.image().degree());
        assert!(q.preimage(&triv).same_as(&v4()));
        assert!(q.preimage(q.image()).same_as(&g));
        let c3 = q.project_subgroup(&grp(4, &[&[&[0, 1, 2]]]));
        assert_eq!(c3.order(), 3);
        let pre = q.preimage(&c3);
        assert_eq!(pre.order(), 12);
        let a4 = grp(4, &[&[&[0, 1, 2]], &[&[1, 2, 3]]]);
        assert!(pre.same_as(&a4));
    }
}
