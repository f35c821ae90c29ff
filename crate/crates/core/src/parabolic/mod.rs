//! Parabolic subgroups attached to lattice members, the length-2 strata
//! and the Lyashko–Looijenga data recovered by counting factorisations.

mod table;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

pub use table::{exceptional_rows, reference_row, table_scalar, ExceptionalRow, TableRow};

use crate::error::{Error, Result};
use crate::factorizations::{enumerate_fact, reflection_pairs, CompositionType};
use crate::groups::{Elem, GroupSpec, ReflectionGroup};
use crate::ncp::NcpLattice;
use crate::CycSubspace;

/// The pointwise fixator of a flat.
#[derive(Clone, Debug)]
pub struct ParabolicSubgroup {
    pub flat: CycSubspace,
    /// Members, in increasing index.
    pub elements: Vec<Elem>,
    pub rank: usize,
}

impl ParabolicSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: Elem) -> bool {
        self.elements.binary_search(&w).is_ok()
    }

    pub fn reflections(&self, group: &ReflectionGroup) -> Vec<Elem> {
        self.elements.iter().copied().filter(|&w| group.is_reflection(w)).collect()
    }

    /// `2h'/d'_1` for rank-2 parabolics identified as dihedral of order
    /// `2m` with `m` reflections (this includes `A1 × A1` at `m = 2`),
    /// whose degrees are `(2, m)`.
    pub fn ll_number(&self, group: &ReflectionGroup) -> Option<u64> {
        if self.rank != 2 || self.order() % 2 != 0 {
            return None;
        }
        let m = self.order() / 2;
        (self.reflections(group).len() == m).then(|| {
            let (d1, h) = (2.min(m as u64), 2.max(m as u64));
            2 * h / d1
        })
    }
}

/// The parabolic subgroup fixing `Ker(w - 1)` pointwise.
pub fn parabolic_of(lattice: &NcpLattice<'_>, w: Elem) -> Result<ParabolicSubgroup> {
    let g = lattice.group();
    let flat = lattice.flat(w)?.clone();
    let elements = g
        .elements()
        .filter(|&x| flat.is_subspace_of(g.fixed_space(x)))
        .collect();
    Ok(ParabolicSubgroup {
        rank: flat.codim(),
        flat,
        elements,
    })
}

/// Reduced reflection decompositions of a lattice member.
pub fn reduced_decompositions(lattice: &NcpLattice<'_>, w: Elem) -> Result<Vec<Vec<Elem>>> {
    fn go(l: &NcpLattice<'_>, rest: Elem, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if rest == Elem::IDENTITY {
            out.push(cur.clone());
            return;
        }
        let g = l.group();
        for &r in l.divisor_reflections(rest).expect("divisors of members are members") {
            cur.push(r);
            go(l, g.mul(g.inv(r), rest), cur, out);
            cur.pop();
        }
    }
    lattice.position(w)?;
    let mut out = Vec::new();
    go(lattice, w, &mut Vec::new(), &mut out);
    Ok(out)
}

/// For every member `w`: the fixator of `Ker(w - 1)` has rank `ℓ(w)`,
/// and every reduced decomposition of `w` generates it.
pub fn check_parabolic_coxeter_elements(lattice: &NcpLattice<'_>) -> std::result::Result<(), String> {
    let g = lattice.group();
    let bad = lattice.members().par_iter().find_map_first(|&w| {
        let p = match parabolic_of(lattice, w) {
            Ok(p) => p,
            Err(e) => return Some(e.to_string()),
        };
        if p.rank != g.length(w) as usize {
            return Some(format!("W_{w} has rank {} but ℓ({w}) = {}", p.rank, g.length(w)));
        }
        let sets: BTreeSet<Vec<Elem>> = reduced_decompositions(lattice, w)
            .expect("w is a member")
            .into_iter()
            .map(|mut d| {
                d.sort_unstable();
                d.dedup();
                d
            })
            .collect();
        sets.iter()
            .find(|gens| g.generated_subgroup(gens) != p.elements)
            .map(|gens| format!("{gens:?} does not generate W_{w}"))
    });
    bad.map_or(Ok(()), Err)
}

/// A `W`-conjugacy class of length-2 lattice members with its counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum2 {
    pub class_id: usize,
    pub representative: Elem,
    /// Length-2 lattice members in the class.
    pub members: Vec<Elem>,
    pub order: u32,
    /// `|{(r_1, r_2) ∈ R² : r_1 r_2 = w}|`.
    pub r: usize,
    /// `2h'/d'_1` of the parabolic closure, when identified.
    pub ll_number: Option<u64>,
    /// `|fact_{n-1}^Λ(c)|`: submaximal factorisations whose length-2
    /// factor lies in the class.
    pub count: u128,
    /// `|fact_{(2,1,…,1)}^Λ(c)|`.
    pub first_position: u128,
    /// `count · |W| / ((n-1)! h^{n-1})`.
    pub u: u128,
}

fn scalar_parts(group: &ReflectionGroup, shift: usize) -> (BigInt, BigInt) {
    let n = group.rank();
    let h = BigInt::from(group.coxeter_number());
    let fact: BigInt = (1..=(n - shift) as u64).map(BigInt::from).product();
    (fact * num_traits::pow(h, n - 1), BigInt::from(group.order()))
}

/// The length-2 strata with submaximal counts and derived degrees.
/// Requires rank at least 2.
pub fn length2_strata(lattice: &NcpLattice<'_>) -> Result<Vec<Stratum2>> {
    let g = lattice.group();
    let n = g.rank();
    let mut classes: BTreeMap<usize, Vec<Elem>> = BTreeMap::new();
    for &w in lattice.members_of_rank(2) {
        classes.entry(g.class_id(w)).or_default().push(w);
    }

    let mut count: BTreeMap<usize, u128> = BTreeMap::new();
    let mut first: BTreeMap<usize, u128> = BTreeMap::new();
    for p in 1..n {
        let mut parts = vec![1; n - 1];
        parts[p - 1] = 2;
        let mu = CompositionType::new(parts, n)?;
        for f in enumerate_fact(lattice, &mu) {
            let id = g.class_id(f.factors()[p - 1]);
            *count.entry(id).or_default() += 1;
            if p == 1 {
                *first.entry(id).or_default() += 1;
            }
        }
    }

    let (num, den) = scalar_parts(g, 1);
    classes
        .into_iter()
        .map(|(class_id, members)| {
            let rep = members[0];
            let k = count.get(&class_id).copied().unwrap_or(0);
            let (u, rem) = (BigInt::from(k) * &den).div_rem(&num);
            if rem != BigInt::from(0) {
                return Err(Error::NonIntegralDegree {
                    numerator: (BigInt::from(k) * &den).to_string(),
                    denominator: num.to_string(),
                });
            }
            Ok(Stratum2 {
                class_id,
                representative: rep,
                order: g.element_order(rep),
                r: reflection_pairs(g, rep),
                ll_number: parabolic_of(lattice, rep)?.ll_number(g),
                count: k,
                first_position: first.get(&class_id).copied().unwrap_or(0),
                u: u.try_into().expect("degrees fit in u128"),
                members,
            })
        })
        .collect()
}

/// Submaximal counts against the closed form
/// `((n-1)! h^{n-1}/|W|) ((n-1)(n-2)h/2 + Σ_{i<n} d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmaxSummary {
    pub strata: Vec<Stratum2>,
    pub total: u128,
    pub formula: String,
    pub pass: bool,
}

pub fn submax_counts(lattice: &NcpLattice<'_>) -> Result<SubmaxSummary> {
    let g = lattice.group();
    let strata = length2_strata(lattice)?;
    let total = strata.iter().map(|s| s.count).sum();
    let formula = submax_formula(g);
    Ok(SubmaxSummary {
        pass: crate::exactalg::Rational::from_integer(BigInt::from(total)) == formula,
        formula: formula.to_string(),
        strata,
        total,
    })
}

pub fn submax_formula(group: &ReflectionGroup) -> crate::exactalg::Rational {
    let n = group.rank() as u64;
    let h = group.coxeter_number() as u64;
    let d = group.degrees();
    let inner = (n - 1) * (n - 2) * h / 2 + d[..d.len() - 1].iter().map(|&x| x as u64).sum::<u64>();
    let (num, den) = scalar_parts(group, 1);
    crate::exactalg::Rational::new(num * BigInt::from(inner), den)
}

/// `(r_Λ, u_Λ)` pairs of one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LLData {
    pub group: GroupSpec,
    /// Sorted.
    pub pairs: Vec<(u64, u64)>,
}

impl LLData {
    pub fn from_strata(group: GroupSpec, strata: &[Stratum2]) -> Self {
        let mut pairs: Vec<(u64, u64)> = strata.iter().map(|s| (s.r as u64, s.u as u64)).collect();
        pairs.sort_unstable();
        LLData { group, pairs }
    }

    pub fn degree(&self) -> u64 {
        self.pairs.iter().map(|&(p, u)| p * u).sum()
    }

    /// `Σ p_i u_i = n(n-1)h`.
    pub fn degree_identity_holds(&self) -> bool {
        let n = self.group.rank() as u64;
        self.degree() == n * (n - 1) * self.group.coxeter_number() as u64
    }
}

/// Comparison of the computed data with the reference row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub computed: LLData,
    pub reference: Vec<(u64, u64)>,
    pub scalar: String,
    pub reference_scalar: String,
    /// `Σ r_Λ |fact_{(2,1,…,1)}^Λ|`.
    pub fiber_sum: u128,
    pub red_count: u128,
}

/// Computes `{(r_Λ, u_Λ)}` and checks it against the reference row, the
/// scalar column, `Σ p u = n(n-1)h`, the first-position counts, and the
/// fiber identity `Σ r_Λ |fact_{(2,1,…,1)}^Λ| = |Red(c)|`.
pub fn table_a1_verify(lattice: &NcpLattice<'_>, red_count: u128) -> Result<TableReport> {
    let g = lattice.group();
    let spec = g.spec();
    let mismatch = |msg: String| Err(Error::TableMismatch(format!("{spec}: {msg}")));
    let Some(reference) = reference_row(&spec) else {
        return mismatch("no reference row".into());
    };
    let strata = length2_strata(lattice)?;
    let computed = LLData::from_strata(spec, &strata);
    let (num, den) = scalar_parts(g, 2);
    let scalar = crate::exactalg::Rational::new(num, den);
    let fiber_sum: u128 = strata.iter().map(|s| s.r as u128 * s.first_position).sum();
    let report = TableReport {
        computed,
        reference: reference.pairs.clone(),
        scalar: scalar.to_string(),
        reference_scalar: reference.scalar.to_string(),
        fiber_sum,
        red_count,
    };
    if report.computed.pairs != report.reference {
        return mismatch(format!("pairs {:?} vs reference {:?}", report.computed.pairs, report.reference));
    }
    if scalar != reference.scalar {
        return mismatch(format!("scalar {scalar} vs reference {}", reference.scalar));
    }
    if !report.computed.degree_identity_holds() {
        return mismatch(format!("Σ p u = {}", report.computed.degree()));
    }
    for s in &strata {
        if crate::exactalg::Rational::from_integer(BigInt::from(s.first_position))
            != &scalar * crate::exactalg::Rational::from_integer(BigInt::from(s.u))
        {
            return mismatch(format!("first-position count {} for class {}", s.first_position, s.class_id));
        }
        if s.r as u32 != s.order || s.ll_number != Some(s.r as u64) {
            return mismatch(format!(
                "class {}: r = {}, order {}, LL number {:?}",
                s.class_id, s.r, s.order, s.ll_number
            ));
        }
    }
    if fiber_sum != red_count {
        return mismatch(format!("fiber sum {fiber_sum} vs |Red| = {red_count}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorizations::red_count_formula;

    fn strata(spec: GroupSpec) -> Vec<Stratum2> {
        let w = ReflectionGroup::build(spec).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        length2_strata(&l).unwrap()
    }

    #[test]
    fn trivial_reflection_and_top_parabolics() {
        let w = ReflectionGroup::build(GroupSpec::B(3)).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        let p = parabolic_of(&l, Elem::IDENTITY).unwrap();
        assert_eq!((p.rank, p.order()), (0, 1));
        let r = w.reflections()[0];
        let p = parabolic_of(&l, r).unwrap();
        assert_eq!((p.rank, p.order()), (1, 2));
        let p = parabolic_of(&l, w.coxeter()).unwrap();
        assert_eq!(p.order(), w.order());
        let outside = w.elements().find(|&x| !l.contains(x)).unwrap();
        assert_eq!(parabolic_of(&l, outside).unwrap_err(), Error::NotADivisor);
    }

    #[test]
    fn parabolic_coxeter_elements() {
        for spec in [GroupSpec::A(3), GroupSpec::B(3), GroupSpec::G { e: 3, n: 3 }, GroupSpec::H3] {
            let w = ReflectionGroup::build(spec).unwrap();
            let l = NcpLattice::build(&w).unwrap();
            check_parabolic_coxeter_elements(&l).unwrap();
        }
    }

    #[test]
    fn a3_strata() {
        let s = strata(GroupSpec::A(3));
        let mut got: Vec<(u32, usize, u128, u128)> = s.iter().map(|s| (s.order, s.r, s.count, s.u)).collect();
        got.sort_unstable();
        assert_eq!(got, vec![(2, 2, 4, 3), (3, 3, 8, 6)]);
    }

    #[test]
    fn b3_and_g333_strata() {
        let mut r: Vec<usize> = strata(GroupSpec::B(3)).iter().map(|s| s.r).collect();
        r.sort_unstable();
        assert_eq!(r, vec![2, 3, 4]);
        let r: Vec<usize> = strata(GroupSpec::G { e: 3, n: 3 }).iter().map(|s| s.r).collect();
        assert_eq!(r, vec![3, 3, 3, 3]);
    }

    #[test]
    fn submax_examples() {
        let total = |spec| {
            let w = ReflectionGroup::build(spec).unwrap();
            let l = NcpLattice::build(&w).unwrap();
            let s = submax_counts(&l).unwrap();
            assert!(s.pass, "{spec}");
            s
        };
        assert_eq!(total(GroupSpec::A(3)).total, 12);
        assert_eq!(total(GroupSpec::B(3)).total, 18);
        let h3 = total(GroupSpec::H3);
        assert_eq!(h3.total, 30);
        assert!(h3.strata.iter().all(|s| s.count == 10 && s.u == 6));
        let d4 = total(GroupSpec::D(4));
        assert_eq!(d4.total, 189);
        let mut counts: Vec<u128> = d4.strata.iter().map(|s| s.count).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![27, 27, 27, 108]);
    }

    #[test]
    fn table_rows_for_small_groups() {
        for spec in [GroupSpec::A(2), GroupSpec::B(4), GroupSpec::I2(7), GroupSpec::G { e: 4, n: 3 }] {
            let w = ReflectionGroup::build(spec).unwrap();
            let l = NcpLattice::build(&w).unwrap();
            let rep = table_a1_verify(&l, red_count_formula(&w)).unwrap();
            assert_eq!(rep.fiber_sum, rep.red_count);
        }
    }

    #[test]
    fn rank_one_has_no_row() {
        let w = ReflectionGroup::build(GroupSpec::A(1)).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        assert!(matches!(table_a1_verify(&l, 1), Err(Error::TableMismatch(_))));
    }
}
