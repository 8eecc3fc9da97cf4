//! Subgroups addressable by name on the command line.

use psolv::algebra::commutator;
use psolv::error::{Error, Result};
use psolv::group::{Limits, PermGroup};
use psolv::perm::Permutation;
use psolv::pf::compute_ekr;
use psolv::series::{exponent, gamma, o_p, o_pprime, o_pprime_p, sylow};

pub const HELP: &str = "\
SUBGROUP NAMES:
    G, whole          the context group
    1, trivial        the trivial subgroup
    V4                O_2 of the group, when it is a Klein four-group
    sylow             a Sylow p-subgroup
    op                O_p
    opp               O_p'
    opp_p             O_p',p
    gamma:i           i-th term of the lower central series of the context group
    derived           commutator subgroup of the context group
    ekr:k:r           E_{k,r} of the context p-group
    gen:c1;c2;...     generated by permutations in 1-based cycle notation";

fn bad(name: &str, why: &str) -> Error {
    Error::UnsupportedParameters(format!("subgroup {name:?}: {why}"))
}

/// Resolves `name`; `ctx` is the group that `G`, `gamma`, `derived` and
/// `ekr` refer to, while the cores are taken in `g`.
pub fn resolve(name: &str, g: &PermGroup, ctx: &PermGroup, p: u64, limits: &Limits) -> Result<PermGroup> {
    let n = g.degree();
    match name {
        "G" | "whole" => return Ok(ctx.clone()),
        "1" | "trivial" => return Ok(PermGroup::trivial(n)),
        "sylow" => return sylow(g, p, limits),
        "op" => return o_p(g, p, limits),
        "opp" => return o_pprime(g, p, limits),
        "opp_p" => return o_pprime_p(g, p, limits),
        "derived" => return commutator(ctx, ctx),
        "V4" => {
            let v = o_p(g, 2, limits)?;
            if v.order() == 4 && exponent(&v, limits)? == 2 {
                return Ok(v);
            }
            return Err(bad(name, "O_2 is not a Klein four-group"));
        }
        _ => {}
    }
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["gamma", i] => {
            let i: usize = i
                .parse()
                .map_err(|_| bad(name, "index must be a positive integer"))?;
            if i == 0 {
                return Err(bad(name, "index must be a positive integer"));
            }
            Ok(gamma(ctx, i))
        }
        ["ekr", k, r] => {
            let k: usize = k.parse().map_err(|_| bad(name, "k must be an integer"))?;
            let r: usize = r.parse().map_err(|_| bad(name, "r must be an integer"))?;
            Ok(compute_ekr(ctx, p, k, r, limits)?.group)
        }
        ["gen", list] => {
            let gens = list
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| Permutation::parse_cycles(n, s.trim()))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::new(n, gens)
        }
        _ => Err(bad(name, "unknown name")),
    }
}
