//! Multichains `w_1 ≼ … ≼ w_N ≼ c` versus block factorisations.
//!
//! A multichain determines the factorisation of successive quotients
//! `w_{i-1}⁻¹ w_i` (with `w_0 = 1` and `w_{N+1} = c`) once repeated
//! elements are dropped. Conversely a `p`-block factorisation is the image
//! of exactly `C(N + 1, p)` multichains of length `N`.

use super::Factorisation;
use crate::error::{Error, Result};
use crate::groups::Elem;
use crate::ncp::NcpLattice;

/// The factorisation read off a weakly increasing chain of members.
pub fn chain_to_factorisation(lattice: &NcpLattice<'_>, chain: &[Elem]) -> Result<Factorisation> {
    let g = lattice.group();
    let c = lattice.coxeter();
    let mut prev = Elem::IDENTITY;
    let mut factors = Vec::new();
    for &w in chain.iter().chain(std::iter::once(&c)) {
        let above = lattice
            .leq(prev, w)
            .map_err(|_| Error::NotAChain(format!("{w} is not a divisor of c")))?;
        if !above {
            return Err(Error::NotAChain(format!("{prev} is not below {w}")));
        }
        if w != prev {
            factors.push(g.mul(g.inv(prev), w));
        }
        prev = w;
    }
    Ok(Factorisation::from_factors_unchecked(factors))
}

/// The strict chain of proper partial products `u_1, u_1 u_2, …`.
pub fn factorisation_to_chain(lattice: &NcpLattice<'_>, f: &Factorisation) -> Vec<Elem> {
    let g = lattice.group();
    let mut out = Vec::with_capacity(f.len().saturating_sub(1));
    let mut acc = Elem::IDENTITY;
    for &u in &f.factors()[..f.len().saturating_sub(1)] {
        acc = g.mul(acc, u);
        out.push(acc);
    }
    out
}

/// Every multichain of length `n_chains` mapping to `f`: the partial
/// products `1 = P_0, P_1, …, P_p = c` repeated `r_0, …, r_p` times with
/// `r_1, …, r_{p-1} ≥ 1` and `Σ r_i = N`.
pub fn multichains_over(lattice: &NcpLattice<'_>, f: &Factorisation, n_chains: usize) -> Vec<Vec<Elem>> {
    let mut levels = vec![Elem::IDENTITY];
    levels.extend(factorisation_to_chain(lattice, f));
    levels.push(lattice.coxeter());
    let p = f.len();

    fn go(levels: &[Elem], p: usize, i: usize, left: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if i == levels.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let min = if i == 0 || i == p { 0 } else { 1 };
        for r in min..=left {
            cur.extend(std::iter::repeat_n(levels[i], r));
            go(levels, p, i + 1, left - r, cur, out);
            cur.truncate(cur.len() - r);
        }
    }
    let mut out = Vec::new();
    go(&levels, p, 0, n_chains, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::factorizations::{enumerate_fact, zeta::binomial, CompositionType};
    use crate::groups::{type_a_matrix, GroupSpec, ReflectionGroup};

    #[test]
    fn empty_chain_gives_c() {
        let w = ReflectionGroup::build(GroupSpec::A(2)).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        let f = chain_to_factorisation(&l, &[]).unwrap();
        assert_eq!(f.factors(), &[w.coxeter()]);
    }

    #[test]
    fn a2_single_step_chain() {
        let w = ReflectionGroup::build(GroupSpec::A(2)).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        let s = w.locate(&type_a_matrix(&[1, 0, 2])).unwrap();
        let f = chain_to_factorisation(&l, &[s]).unwrap();
        assert_eq!(f.factors(), &[s, w.mul(w.inv(s), w.coxeter())]);
        assert_eq!(f.composition(&w).parts(), &[1, 1]);
    }

    #[test]
    fn rejects_non_chains() {
        let w = ReflectionGroup::build(GroupSpec::A(2)).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        let atoms = l.members_of_rank(1);
        assert!(matches!(
            chain_to_factorisation(&l, &[atoms[0], atoms[1]]),
            Err(Error::NotAChain(_))
        ));
        let outside = w.elements().find(|&x| !l.contains(x)).unwrap();
        assert!(chain_to_factorisation(&l, &[outside]).is_err());
    }

    #[test]
    fn strict_chains_round_trip() {
        let w = ReflectionGroup::build(GroupSpec::B(3)).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        for p in 1..=3 {
            for mu in CompositionType::all_with_parts(3, p) {
                for f in enumerate_fact(&l, &mu) {
                    let chain = factorisation_to_chain(&l, &f);
                    assert_eq!(chain_to_factorisation(&l, &chain).unwrap(), f);
                }
            }
        }
    }

    /// Every multichain of length `N`, by brute force over member tuples.
    fn all_multichains(l: &NcpLattice, n: usize) -> Vec<Vec<Elem>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for chain in out {
                let below = chain.last().copied().unwrap_or(Elem::IDENTITY);
                for &w in l.members() {
                    if l.leq(below, w).unwrap() {
                        let mut c = chain.clone();
                        c.push(w);
                        next.push(c);
                    }
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn fibers_have_binomial_size() {
        for spec in [GroupSpec::A(2), GroupSpec::A(3), GroupSpec::I2(5)] {
            let w = ReflectionGroup::build(spec).unwrap();
            let l = NcpLattice::build(&w).unwrap();
            for n in 1..=3 {
                let mut fiber: HashMap<Factorisation, usize> = HashMap::new();
                let all = all_multichains(&l, n);
                assert_eq!(all.len() as u128, l.multichain_count(n));
                for chain in &all {
                    *fiber.entry(chain_to_factorisation(&l, chain).unwrap()).or_default() += 1;
                }
                for (f, k) in &fiber {
                    let expected = binomial(n as u64 + 1, f.len() as u64);
                    assert_eq!(num_bigint::BigInt::from(*k), expected, "{spec} N={n} {f}");
                    let listed = multichains_over(&l, f, n);
                    assert_eq!(listed.len(), *k);
                    assert!(listed.iter().all(|m| chain_to_factorisation(&l, m).unwrap() == *f));
                }
            }
        }
    }

    #[test]
    fn a2_two_chains_total_twelve() {
        let w = ReflectionGroup::build(GroupSpec::A(2)).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        let two_block: usize = CompositionType::all_with_parts(2, 2)
            .iter()
            .flat_map(|mu| enumerate_fact(&l, mu))
            .map(|f| multichains_over(&l, &f, 2).len())
            .sum();
        let one_block = multichains_over(&l, &enumerate_fact(&l, &"2".parse().unwrap())[0], 2).len();
        assert_eq!(two_block, 9);
        assert_eq!(two_block + one_block, 12);
    }
}
