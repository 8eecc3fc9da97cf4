//! Constructible families of test groups, each checked against its closed-form
//! order when built.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::format::parse_group;
use crate::group::{is_prime, PermGroup};
use crate::perm::Permutation;

/// The two extraspecial groups of order `p^3`. For odd `p`, `Plus` has
/// exponent `p` and `Minus` exponent `p^2`; for `p = 2` they are `D_8` and `Q_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtraspecialClass {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupRecipe {
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian {
        p: u64,
        rank: usize,
    },
    DirectProduct(Box<GroupRecipe>, Box<GroupRecipe>),
    /// `C_p ≀ C_q` on `p·q` points.
    WreathCyclic {
        p: u64,
        q: usize,
    },
    /// `AGL(1, p)`.
    Affine(u64),
    /// `SL(2, q)` on the nonzero vectors of the plane, `q ∈ {2, 3}`.
    Sl2(u64),
    /// `GL(2, 3)` on the eight nonzero vectors.
    Gl2Three,
    Extraspecial {
        p: u64,
        class: ExtraspecialClass,
    },
    /// `p^{1+2}_+ ⋊ C_2`, inverting the Heisenberg generators, `p` odd.
    ExtraspecialInverted(u64),
    FromFile(PathBuf),
}

const MAX_WREATH_DEGREE: u64 = 64;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn unsupported(msg: impl Into<String>) -> Error {
    Error::UnsupportedParameters(msg.into())
}

fn need_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(unsupported(format!("{p} is not prime")))
    }
}

impl GroupRecipe {
    /// Stable identifier; parses back with [`GroupRecipe::from_str`].
    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Closed-form order, when the family has one.
    pub fn expected_order(&self) -> Option<u128> {
        use GroupRecipe::*;
        Some(match self {
            Cyclic(n) => *n as u128,
            Dihedral(n) => 2 * *n as u128,
            Symmetric(n) => factorial(*n),
            Alternating(n) => (factorial(*n) / 2).max(1),
            ElementaryAbelian { p, rank } => (*p as u128).pow(*rank as u32),
            DirectProduct(a, b) => a.expected_order()? * b.expected_order()?,
            WreathCyclic { p, q } => (*p as u128).pow(*q as u32) * *q as u128,
            Affine(p) => (*p as u128) * (*p as u128 - 1),
            Sl2(q) => (*q as u128) * (*q as u128 * *q as u128 - 1),
            Gl2Three => 48,
            Extraspecial { p, .. } => (*p as u128).pow(3),
            ExtraspecialInverted(p) => 2 * (*p as u128).pow(3),
            FromFile(_) => return None,
        })
    }

    pub fn build(&self) -> Result<PermGroup> {
        let g = self.build_unchecked()?;
        if let Some(expected) = self.expected_order() {
            let got = g.order();
            if got != expected {
                return Err(Error::InternalMismatch(format!(
                    "{self} built a group of order {got}, expected {expected}"
                )));
            }
        }
        Ok(g)
    }

    fn build_unchecked(&self) -> Result<PermGroup> {
        use GroupRecipe::*;
        match self {
            Cyclic(n) => {
                if *n == 0 {
                    return Err(unsupported("cyclic group needs n ≥ 1"));
                }
                Ok(PermGroup::new(*n, vec![cycle_on(*n, 0, *n)])?)
            }
            Dihedral(n) => {
                if *n < 3 {
                    return Err(unsupported("dihedral group needs n ≥ 3"));
                }
                let refl = images(*n, |i| (*n - i) % *n);
                Ok(PermGroup::new(*n, vec![cycle_on(*n, 0, *n), refl])?)
            }
            Symmetric(n) => {
                if *n == 0 {
                    return Err(unsupported("symmetric group needs n ≥ 1"));
                }
                let mut gens = Vec::new();
                if *n >= 2 {
                    gens.push(cycle_on(*n, 0, 2));
                    gens.push(cycle_on(*n, 0, *n));
                }
                Ok(PermGroup::new(*n, gens)?)
            }
            Alternating(n) => {
                if *n == 0 {
                    return Err(unsupported("alternating group needs n ≥ 1"));
                }
                let gens = (2..*n)
                    .map(|i| Permutation::from_cycles(*n, &[&[0, 1, i]]))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PermGroup::new(*n, gens)?)
            }
            ElementaryAbelian { p, rank } => {
                need_prime(*p)?;
                if *rank == 0 {
                    return Ok(PermGroup::trivial(1));
                }
                let p = *p as usize;
                let n = p * rank;
                let gens = (0..*rank).map(|b| cycle_on(n, b * p, p)).collect();
                Ok(PermGroup::new(n, gens)?)
            }
            DirectProduct(a, b) => {
                let ga = a.build()?;
                let gb = b.build()?;
                Ok(direct_product(&ga, &gb))
            }
            WreathCyclic { p, q } => {
                need_prime(*p)?;
                if *q == 0 || *p * *q as u64 > MAX_WREATH_DEGREE {
                    return Err(unsupported(format!(
                        "wreath product degree p·q must lie in 1..={MAX_WREATH_DEGREE}"
                    )));
                }
                let p = *p as usize;
                let n = p * q;
                let mut gens = vec![cycle_on(n, 0, p)];
                if *q > 1 {
                    gens.push(images(n, |x| (x + p) % n));
                }
                Ok(PermGroup::new(n, gens)?)
            }
            Affine(p) => {
                need_prime(*p)?;
                let pu = *p as usize;
                let g = primitive_root(*p) as usize;
                let mul = images(pu, |x| (x * g) % pu);
                Ok(PermGroup::new(pu, vec![cycle_on(pu, 0, pu), mul])?)
            }
            Sl2(q) => {
                if !matches!(q, 2 | 3) {
                    return Err(unsupported("SL(2, q) is provided for q ∈ {2, 3}"));
                }
                let gens = vec![
                    matrix_action(*q, [[1, 1], [0, 1]]),
                    matrix_action(*q, [[1, 0], [1, 1]]),
                ];
                Ok(PermGroup::new((*q * *q - 1) as usize, gens)?)
            }
            Gl2Three => {
                let gens = vec![
                    matrix_action(3, [[1, 1], [0, 1]]),
                    matrix_action(3, [[1, 0], [1, 1]]),
                    matrix_action(3, [[2, 0], [0, 1]]),
                ];
                Ok(PermGroup::new(8, gens)?)
            }
            Extraspecial { p, class } => {
                need_prime(*p)?;
                match (*p, class) {
                    (2, ExtraspecialClass::Plus) => Dihedral(4).build_unchecked(),
                    (2, ExtraspecialClass::Minus) => {
                        // quaternion units inside SL(2, 3)
                        let gens = vec![
                            matrix_action(3, [[0, 2], [1, 0]]),
                            matrix_action(3, [[1, 1], [1, 2]]),
                        ];
                        Ok(PermGroup::new(8, gens)?)
                    }
                    (p, ExtraspecialClass::Plus) => Ok(heisenberg_regular(p, false)),
                    (p, ExtraspecialClass::Minus) => Ok(metacyclic_regular(p)),
                }
            }
            ExtraspecialInverted(p) => {
                need_prime(*p)?;
                if *p == 2 {
                    return Err(unsupported("inverted Heisenberg group needs p odd"));
                }
                Ok(heisenberg_regular(*p, true))
            }
            FromFile(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| unsupported(format!("cannot read {}: {e}", path.display())))?;
                parse_group(&text)
            }
        }
    }
}

fn images<F: Fn(usize) -> usize>(n: usize, f: F) -> Permutation {
    Permutation::from_images((0..n).map(|x| f(x) as u32)).expect("family map is a bijection")
}

/// The cycle `(start, start+1, .., start+len-1)` on `n` points.
fn cycle_on(n: usize, start: usize, len: usize) -> Permutation {
    let pts: Vec<usize> = (start..start + len).collect();
    Permutation::from_cycles(n, &[&pts]).expect("cycle within range")
}

pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (na, nb) = (a.degree(), b.degree());
    let n = na + nb;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(images(n, |x| if x < na { g.apply(x) } else { x }));
    }
    for g in b.generators() {
        gens.push(images(n, |x| if x < na { x } else { na + g.apply(x - na) }));
    }
    PermGroup::new(n, gens).expect("degrees agree")
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1;
            for k in 1..p {
                x = x * g % p;
                if x == 1 {
                    return k == p - 1;
                }
            }
            false
        })
        .expect("every prime has a primitive root")
}

/// Action `v ↦ vM` on the nonzero row vectors `(a, b)`, point `a·q + b - 1`.
fn matrix_action(q: u64, m: [[u64; 2]; 2]) -> Permutation {
    let n = (q * q - 1) as usize;
    images(n, |pt| {
        let v = pt as u64 + 1;
        let (a, b) = (v / q, v % q);
        let c = (a * m[0][0] + b * m[1][0]) % q;
        let d = (a * m[0][1] + b * m[1][1]) % q;
        (c * q + d - 1) as usize
    })
}

/// Heisenberg group mod `p` acting on itself by right multiplication, optionally
/// with the automorphism `(a, b, c) ↦ (-a, -b, c)` adjoined.
fn heisenberg_regular(p: u64, with_inversion: bool) -> PermGroup {
    let pu = p as usize;
    let n = pu * pu * pu;
    let split = |x: usize| (x / (pu * pu), (x / pu) % pu, x % pu);
    let join = |a: usize, b: usize, c: usize| (a % pu) * pu * pu + (b % pu) * pu + c % pu;
    let right_mul = |g: (usize, usize, usize)| {
        images(n, |x| {
            let (a, b, c) = split(x);
            join(a + g.0, b + g.1, c + g.2 + a * g.1)
        })
    };
    let mut gens = vec![right_mul((1, 0, 0)), right_mul((0, 1, 0))];
    if with_inversion {
        gens.push(images(n, |x| {
            let (a, b, c) = split(x);
            join(pu - a, pu - b, c)
        }));
    }
    PermGroup::new(n, gens).expect("degrees agree")
}

/// `<x, y | x^{p²}, y^p, x^y = x^{1+p}>` acting on itself by right multiplication.
fn metacyclic_regular(p: u64) -> PermGroup {
    let pu = p as usize;
    let p2 = pu * pu;
    let n = p2 * pu;
    // y^-j x^k y^j = x^{k (1+p)^j}
    let twist = |k: usize, j: usize| {
        let mut m = 1usize;
        for _ in 0..j {
            m = m * (1 + pu) % p2;
        }
        k * m % p2
    };
    let right_mul = |gi: usize, gj: usize| {
        images(n, |x| {
            let (i, j) = (x / pu, x % pu);
            // x^i y^j x^gi y^gj = x^{i + twist(gi, j)} y^{j + gj}
            ((i + twist(gi, j)) % p2) * pu + (j + gj) % pu
        })
    };
    PermGroup::new(n, vec![right_mul(1, 0), right_mul(0, 1)]).expect("degrees agree")
}

impl fmt::Display for GroupRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupRecipe::*;
        match self {
            Cyclic(n) => write!(f, "cyclic:{n}"),
            Dihedral(n) => write!(f, "dihedral:{n}"),
            Symmetric(n) => write!(f, "symmetric:{n}"),
            Alternating(n) => write!(f, "alternating:{n}"),
            ElementaryAbelian { p, rank } => write!(f, "elementary_abelian:{p}:{rank}"),
            DirectProduct(a, b) => write!(f, "product({a},{b})"),
            WreathCyclic { p, q } => write!(f, "wreath_cyclic:{p}:{q}"),
            Affine(p) => write!(f, "affine:{p}"),
            Sl2(q) => write!(f, "sl2:{q}"),
            Gl2Three => write!(f, "gl2:3"),
            Extraspecial { p, class } => {
                let c = match class {
                    ExtraspecialClass::Plus => '+',
                    ExtraspecialClass::Minus => '-',
                };
                write!(f, "extraspecial:{p}:{c}")
            }
            ExtraspecialInverted(p) => write!(f, "extraspecial_inv:{p}"),
            FromFile(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for GroupRecipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use GroupRecipe::*;
        let s = s.trim();
        let bad = || unsupported(format!("unknown group recipe {s:?}"));
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0i32;
            let split = inner.char_indices().find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                c == ',' && depth == 0
            });
            let (i, _) = split.ok_or_else(bad)?;
            return Ok(DirectProduct(
                Box::new(inner[..i].parse()?),
                Box::new(inner[i + 1..].parse()?),
            ));
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(FromFile(PathBuf::from(path)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u64> { parts.get(i).and_then(|x| x.parse().ok()).ok_or_else(bad) };
        let arity = |k: usize| if parts.len() == k { Ok(()) } else { Err(bad()) };
        match parts[0] {
            "cyclic" => arity(2).and_then(|_| Ok(Cyclic(num(1)? as usize))),
            "dihedral" => arity(2).and_then(|_| Ok(Dihedral(num(1)? as usize))),
            "symmetric" => arity(2).and_then(|_| Ok(Symmetric(num(1)? as usize))),
            "alternating" => arity(2).and_then(|_| Ok(Alternating(num(1)? as usize))),
            "elementary_abelian" => arity(3).and_then(|_| {
                Ok(ElementaryAbelian {
                    p: num(1)?,
                    rank: num(2)? as usize,
                })
            }),
            "wreath_cyclic" => arity(3).and_then(|_| {
                Ok(WreathCyclic {
                    p: num(1)?,
                    q: num(2)? as usize,
                })
            }),
            "affine" => arity(2).and_then(|_| Ok(Affine(num(1)?))),
            "sl2" => arity(2).and_then(|_| Ok(Sl2(num(1)?))),
            "gl2" => {
                arity(2)?;
                if num(1)? == 3 {
                    Ok(Gl2Three)
                } else {
                    Err(unsupported("GL(2, q) is provided for q = 3"))
                }
            }
            "extraspecial" => {
                arity(3)?;
                let class = match parts[2] {
                    "+" => ExtraspecialClass::Plus,
                    "-" => ExtraspecialClass::Minus,
                    _ => return Err(bad()),
                };
                Ok(Extraspecial { p: num(1)?, class })
            }
            "extraspecial_inv" => arity(2).and_then(|_| Ok(ExtraspecialInverted(num(1)?))),
            _ => Err(bad()),
        }
    }
}

/// Groups exercised by `catalog run` and the acceptance suite.
pub fn default_catalog() -> Vec<GroupRecipe> {
    [
        "cyclic:4",
        "cyclic:5",
        "cyclic:8",
        "cyclic:9",
        "cyclic:15",
        "cyclic:25",
        "dihedral:3",
        "dihedral:4",
        "dihedral:5",
        "dihedral:6",
        "dihedral:8",
        "dihedral:9",
        "symmetric:3",
        "symmetric:4",
        "symmetric:5",
        "alternating:4",
        "alternating:5",
        "elementary_abelian:2:3",
        "elementary_abelian:3:2",
        "elementary_abelian:5:2",
        "product(cyclic:4,cyclic:2)",
        "product(cyclic:9,cyclic:3)",
        "product(symmetric:3,cyclic:3)",
        "product(symmetric:4,cyclic:2)",
        "product(alternating:4,cyclic:3)",
        "wreath_cyclic:2:2",
        "wreath_cyclic:2:3",
        "wreath_cyclic:2:4",
        "wreath_cyclic:3:2",
        "wreath_cyclic:3:3",
        "wreath_cyclic:5:2",
        "affine:5",
        "affine:7",
        "sl2:2",
        "sl2:3",
        "gl2:3",
        "extraspecial:2:+",
        "extraspecial:2:-",
        "extraspecial:3:+",
        "extraspecial:3:-",
        "extraspecial:5:+",
        "extraspecial_inv:3",
    ]
    .iter()
    .map(|s| s.parse().expect("catalog ids parse"))
    .collect()
}
