//! Block factorisations of the Coxeter element and their counts.
//!
//! Enumeration is a divisor search through the lattice: the first factor
//! `u_1` is a member of the requested length, and the rest is a
//! factorisation of the member `u_1⁻¹ c`. Results come out in
//! lexicographic order of element indices.

mod chains;
mod ledger;
mod zeta;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use chains::{chain_to_factorisation, factorisation_to_chain, multichains_over};
pub use ledger::{chapoton_identity, fact_counts, ChapotonRecord, CountLedger};
pub use zeta::{binomial, stirling2, stirling_fact, zeta_polynomial, RatPoly};

use crate::error::{Error, Result};
use crate::groups::{Elem, ReflectionGroup};
use crate::ncp::NcpLattice;

/// An ordered list of positive parts summing to the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CompositionType {
    parts: Vec<usize>,
}

impl CompositionType {
    pub fn new(parts: Vec<usize>, n: usize) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("{parts:?} has an empty part")));
        }
        let sum: usize = parts.iter().sum();
        if sum != n {
            return Err(Error::InvalidComposition(format!("{parts:?} sums to {sum}, not {n}")));
        }
        Ok(CompositionType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Underlying partition, parts in decreasing order.
    pub fn partition(&self) -> Vec<usize> {
        let mut p = self.parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// All compositions of `n` into `p` parts, lexicographically.
    pub fn all_with_parts(n: usize, p: usize) -> Vec<CompositionType> {
        fn go(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<CompositionType>) {
            if slots == 0 {
                if left == 0 {
                    out.push(CompositionType { parts: cur.clone() });
                }
                return;
            }
            for first in 1..=left.saturating_sub(slots - 1) {
                cur.push(first);
                go(left - first, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if p >= 1 && p <= n {
            go(n, p, &mut Vec::new(), &mut out);
        }
        out
    }

    /// All distinct rearrangements of this composition, lexicographically.
    pub fn rearrangements(&self) -> Vec<CompositionType> {
        let mut parts = self.partition();
        parts.reverse();
        let mut out = vec![CompositionType { parts: parts.clone() }];
        // next lexicographic permutation
        loop {
            let Some(i) = (1..parts.len()).rev().find(|&i| parts[i - 1] < parts[i]) else {
                return out;
            };
            let j = (i..parts.len()).rev().find(|&j| parts[j] > parts[i - 1]).expect("pivot");
            parts.swap(i - 1, j);
            parts[i..].reverse();
            out.push(CompositionType { parts: parts.clone() });
        }
    }
}

impl fmt::Display for CompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for CompositionType {
    type Err = Error;

    /// Parses `2,1,1`; the rank is taken to be the sum.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidComposition(format!("'{s}' is not a list of integers")))?;
        let n = parts.iter().sum();
        CompositionType::new(parts, n)
    }
}

/// A tuple `(u_1, …, u_p)` of nontrivial elements with
/// `u_1 ⋯ u_p = c` and `Σ ℓ(u_i) = ℓ(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factorisation {
    factors: Vec<Elem>,
}

impl Factorisation {
    /// Validates the tuple against `c`.
    pub fn new(group: &ReflectionGroup, c: Elem, factors: Vec<Elem>) -> Result<Self> {
        for &u in &factors {
            group.check(u)?;
        }
        let f = Factorisation { factors };
        if f.factors.contains(&Elem::IDENTITY) {
            return Err(Error::InvalidComposition("a factor is the identity".into()));
        }
        if f.product(group) != c {
            return Err(Error::InvalidComposition("factors do not multiply to c".into()));
        }
        let total: u32 = f.factors.iter().map(|&u| group.length(u)).sum();
        if total != group.length(c) {
            return Err(Error::InvalidComposition(format!(
                "lengths sum to {total}, not {}",
                group.length(c)
            )));
        }
        Ok(f)
    }

    pub(crate) fn from_factors_unchecked(factors: Vec<Elem>) -> Self {
        Factorisation { factors }
    }

    pub fn factors(&self) -> &[Elem] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self, group: &ReflectionGroup) -> Elem {
        self.factors.iter().fold(Elem::IDENTITY, |acc, &u| group.mul(acc, u))
    }

    pub fn composition(&self, group: &ReflectionGroup) -> CompositionType {
        CompositionType {
            parts: self.factors.iter().map(|&u| group.length(u) as usize).collect(),
        }
    }
}

impl fmt::Display for Factorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `n! h^n / |W|`.
pub fn red_count_formula(group: &ReflectionGroup) -> u128 {
    let n = group.rank() as u32;
    let h = group.coxeter_number() as u128;
    let fact: u128 = (1..=n as u128).product();
    fact * h.pow(n) / group.order() as u128
}

fn candidates<'a>(
    lattice: &'a NcpLattice<'_>,
    rest: Elem,
    len: usize,
) -> Box<dyn Iterator<Item = Elem> + 'a> {
    if len == 1 {
        Box::new(lattice.divisor_reflections(rest).expect("remainders are members").iter().copied())
    } else {
        let g = lattice.group();
        Box::new(
            lattice
                .down_set(rest)
                .expect("remainders are members")
                .into_iter()
                .filter(move |&u| g.length(u) as usize == len),
        )
    }
}

fn extend(
    lattice: &NcpLattice<'_>,
    parts: &[usize],
    rest: Elem,
    prefix: &mut Vec<Elem>,
    out: &mut Vec<Factorisation>,
) {
    let g = lattice.group();
    match parts {
        [] => out.push(Factorisation::from_factors_unchecked(prefix.clone())),
        [last] => {
            if g.length(rest) as usize == *last {
                prefix.push(rest);
                out.push(Factorisation::from_factors_unchecked(prefix.clone()));
                prefix.pop();
            }
        }
        [first, tail @ ..] => {
            for u in candidates(lattice, rest, *first) {
                prefix.push(u);
                extend(lattice, tail, g.mul(g.inv(u), rest), prefix, out);
                prefix.pop();
            }
        }
    }
}

/// All factorisations of `c` with composition `mu`, in lexicographic
/// order. Top-level branches run in parallel.
pub fn enumerate_fact(lattice: &NcpLattice<'_>, mu: &CompositionType) -> Vec<Factorisation> {
    let g = lattice.group();
    let c = lattice.coxeter();
    if mu.total() != g.rank() {
        return Vec::new();
    }
    let parts = mu.parts();
    if parts.len() == 1 {
        return vec![Factorisation::from_factors_unchecked(vec![c])];
    }
    let firsts: Vec<Elem> = candidates(lattice, c, parts[0]).collect();
    firsts
        .par_iter()
        .map(|&u| {
            let mut out = Vec::new();
            extend(lattice, &parts[1..], g.mul(g.inv(u), c), &mut vec![u], &mut out);
            out
        })
        .flatten()
        .collect()
}

/// The reduced reflection decompositions of `c`, checked against
/// `n! h^n / |W|`.
pub fn enumerate_red(lattice: &NcpLattice<'_>) -> Result<Vec<Factorisation>> {
    let g = lattice.group();
    let mu = CompositionType::new(vec![1; g.rank()], g.rank())?;
    let red = enumerate_fact(lattice, &mu);
    let expected = red_count_formula(g);
    if red.len() as u128 != expected {
        return Err(Error::RedCountMismatch {
            expected: expected.to_string(),
            computed: red.len().to_string(),
        });
    }
    Ok(red)
}

/// Number of pairs of reflections `(r_1, r_2)` with `r_1 r_2 = w`.
pub fn reflection_pairs(group: &ReflectionGroup, w: Elem) -> usize {
    group
        .reflections()
        .iter()
        .filter(|&&r| group.is_reflection(group.mul(group.inv(r), w)))
        .count()
}

/// One fiber of the map `Red(c) → fact_{(2,1,…,1)}(c)` that multiplies
/// the first two reflections together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcatenationFiber {
    pub image: Factorisation,
    pub fiber_size: usize,
    /// Two-reflection factorisations of the long factor.
    pub reflection_pairs: usize,
}

/// Fibers of the concatenation map over every element of
/// `fact_{(2,1,…,1)}(c)`. Requires rank at least 2.
pub fn concatenation_fibers(lattice: &NcpLattice<'_>, red: &[Factorisation]) -> Result<Vec<ConcatenationFiber>> {
    let g = lattice.group();
    let n = g.rank();
    let mut parts = vec![1; n - 1];
    parts[0] = 2;
    let mu = CompositionType::new(parts, n)?;
    let mut sizes: HashMap<Vec<Elem>, usize> = HashMap::new();
    for f in red {
        let r = f.factors();
        let mut key = vec![g.mul(r[0], r[1])];
        key.extend_from_slice(&r[2..]);
        *sizes.entry(key).or_default() += 1;
    }
    let fibers: Vec<ConcatenationFiber> = enumerate_fact(lattice, &mu)
        .into_iter()
        .map(|image| ConcatenationFiber {
            fiber_size: sizes.remove(image.factors()).unwrap_or(0),
            reflection_pairs: reflection_pairs(g, image.factors()[0]),
            image,
        })
        .collect();
    if let Some(stray) = sizes.keys().next() {
        return Err(Error::InvalidComposition(format!(
            "concatenated decomposition {stray:?} is not a (2,1,…,1) factorisation"
        )));
    }
    Ok(fibers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{type_a_matrix, GroupSpec};

    fn with_lattice<T>(spec: GroupSpec, f: impl FnOnce(&NcpLattice) -> T) -> T {
        let w = ReflectionGroup::build(spec).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        f(&l)
    }

    /// Every `p`-tuple of nontrivial group elements, filtered by the
    /// defining conditions.
    fn brute_fact(l: &NcpLattice, mu: &[usize]) -> usize {
        let g = l.group();
        let mut count = 0;
        let mut stack = vec![(Vec::<Elem>::new(), Elem::IDENTITY)];
        while let Some((prefix, prod)) = stack.pop() {
            if prefix.len() == mu.len() {
                if prod == l.coxeter() {
                    count += 1;
                }
                continue;
            }
            for u in g.elements() {
                if g.length(u) as usize == mu[prefix.len()] {
                    let mut next = prefix.clone();
                    next.push(u);
                    stack.push((next, g.mul(prod, u)));
                }
            }
        }
        count
    }

    #[test]
    fn compositions() {
        let all = CompositionType::all_with_parts(4, 2);
        let shown: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(1,3)", "(2,2)", "(3,1)"]);
        assert_eq!(CompositionType::all_with_parts(5, 3).len(), 6);
        let mu: CompositionType = "2,1,1".parse().unwrap();
        assert_eq!(mu.partition(), vec![2, 1, 1]);
        assert_eq!(mu.rearrangements().len(), 3);
        assert!(CompositionType::new(vec![2, 0, 1], 3).is_err());
        assert!(CompositionType::new(vec![2, 1, 1], 3).is_err());
    }

    #[test]
    fn red_counts() {
        assert_eq!(with_lattice(GroupSpec::A(2), |l| enumerate_red(l).unwrap().len()), 3);
        assert_eq!(with_lattice(GroupSpec::A(3), |l| enumerate_red(l).unwrap().len()), 16);
        for e in 3..=7 {
            assert_eq!(with_lattice(GroupSpec::I2(e), |l| enumerate_red(l).unwrap().len()), e as usize);
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for spec in [GroupSpec::A(2), GroupSpec::A(3), GroupSpec::B(2), GroupSpec::I2(5)] {
            with_lattice(spec, |l| {
                let n = l.group().rank();
                for p in 1..=n {
                    for mu in CompositionType::all_with_parts(n, p) {
                        assert_eq!(enumerate_fact(l, &mu).len(), brute_fact(l, mu.parts()), "{spec} {mu}");
                    }
                }
            });
        }
    }

    #[test]
    fn a3_two_block_counts() {
        with_lattice(GroupSpec::A(3), |l| {
            let f21 = enumerate_fact(l, &"2,1".parse().unwrap());
            let f12 = enumerate_fact(l, &"1,2".parse().unwrap());
            assert_eq!(f21.len(), 6);
            assert_eq!(f21.len() + f12.len(), 12);
            assert_eq!(enumerate_fact(l, &"3".parse().unwrap()).len(), 1);
        });
    }

    #[test]
    fn factorisations_are_valid_and_sorted() {
        with_lattice(GroupSpec::B(3), |l| {
            let g = l.group();
            for mu in CompositionType::all_with_parts(3, 2) {
                let fs = enumerate_fact(l, &mu);
                assert!(fs.windows(2).all(|w| w[0] < w[1]));
                for f in fs {
                    let checked = Factorisation::new(g, l.coxeter(), f.factors().to_vec()).unwrap();
                    assert_eq!(checked.composition(g), mu);
                }
            }
        });
    }

    #[test]
    fn a2_reflection_conjugate_example() {
        let w = ReflectionGroup::build(GroupSpec::A(2)).unwrap();
        let s01 = w.locate(&type_a_matrix(&[1, 0, 2])).unwrap();
        assert_eq!(reflection_pairs(&w, w.coxeter()), 3);
        assert!(Factorisation::new(&w, w.coxeter(), vec![s01]).is_err());
        assert!(Factorisation::new(&w, w.coxeter(), vec![Elem::IDENTITY, w.coxeter()]).is_err());
    }

    #[test]
    fn concatenation_fibers_have_size_r() {
        for spec in [GroupSpec::A(3), GroupSpec::B(3), GroupSpec::G { e: 3, n: 3 }] {
            with_lattice(spec, |l| {
                let red = enumerate_red(l).unwrap();
                let fibers = concatenation_fibers(l, &red).unwrap();
                let total: usize = fibers.iter().map(|f| f.fiber_size).sum();
                assert_eq!(total, red.len());
                for f in fibers {
                    assert_eq!(f.fiber_size, f.reflection_pairs, "{spec} {}", f.image);
                }
            });
        }
    }
}
