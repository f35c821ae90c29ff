use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::zeta::{binomial, stirling_fact, zeta_polynomial, RatPoly};
use super::{enumerate_fact, CompositionType};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::groups::GroupSpec;
use crate::ncp::{fuss_catalan, NcpLattice};

fn rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn rational<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Block-factorisation counts of `c`, obtained three independent ways.
#[derive(Clone, Debug, Serialize)]
pub struct CountLedger {
    pub group: GroupSpec,
    pub rank: usize,
    /// `fact_p` for `p = 1..=n` by enumeration.
    pub enumerated: Vec<u128>,
    /// `Δ^p Z(0)` for `p = 1..=n`.
    #[serde(serialize_with = "rationals")]
    pub delta: Vec<Rational>,
    /// The codegree/Stirling closed form for `p = 1..=n`.
    #[serde(serialize_with = "rationals")]
    pub stirling: Vec<Rational>,
    /// `|fact_μ|` for every composition `μ` of `n`.
    pub per_composition: Vec<(CompositionType, u128)>,
    pub zeta: RatPoly,
    /// `∏ (d_i + k h)/d_i` for `k = 1..=n`.
    #[serde(serialize_with = "rationals")]
    pub fuss_catalan: Vec<Rational>,
}

impl CountLedger {
    /// `fact_p`, by enumeration.
    pub fn fact(&self, p: usize) -> u128 {
        if p == 0 || p > self.rank {
            0
        } else {
            self.enumerated[p - 1]
        }
    }

    pub fn composition_count(&self, mu: &CompositionType) -> Option<u128> {
        self.per_composition
            .iter()
            .find(|(m, _)| m == mu)
            .map(|&(_, k)| k)
    }

    /// `|fact_μ|` depends only on the partition underlying `μ`.
    pub fn check_partition_invariance(&self) -> std::result::Result<(), String> {
        let mut seen: BTreeMap<Vec<usize>, (&CompositionType, u128)> = BTreeMap::new();
        for (mu, k) in &self.per_composition {
            match seen.get(&mu.partition()) {
                Some(&(first, k0)) if k0 != *k => {
                    return Err(format!("|fact_{first}| = {k0} but |fact_{mu}| = {k}"));
                }
                Some(_) => {}
                None => {
                    seen.insert(mu.partition(), (mu, *k));
                }
            }
        }
        Ok(())
    }
}

/// Fills the ledger by enumeration, by iterated differences of the zeta
/// polynomial at `0`, and by the Stirling closed form, and requires all
/// three to agree.
pub fn fact_counts(lattice: &NcpLattice<'_>) -> Result<CountLedger> {
    let g = lattice.group();
    let n = g.rank();
    let mut per_composition = Vec::new();
    let mut enumerated = vec![0u128; n];
    for p in 1..=n {
        for mu in CompositionType::all_with_parts(n, p) {
            let k = enumerate_fact(lattice, &mu).len() as u128;
            enumerated[p - 1] += k;
            per_composition.push((mu, k));
        }
    }
    let zeta = zeta_polynomial(g.degrees());
    let mut delta = Vec::with_capacity(n);
    let mut d = zeta.clone();
    for _ in 1..=n {
        d = d.forward_difference();
        delta.push(d.eval(&Rational::zero()));
    }
    let stirling: Vec<Rational> = (1..=n)
        .map(|p| stirling_fact(g.degrees(), g.order() as u128, p))
        .collect();
    for p in 1..=n {
        let e = Rational::from_integer(BigInt::from(enumerated[p - 1]));
        if e != delta[p - 1] || e != stirling[p - 1] {
            return Err(Error::LedgerDisagreement {
                p,
                detail: format!(
                    "enumeration {e}, difference formula {}, Stirling form {}",
                    delta[p - 1],
                    stirling[p - 1]
                ),
            });
        }
    }
    let fuss = (1..=n as i64).map(|k| fuss_catalan(g.degrees(), k)).collect();
    Ok(CountLedger {
        group: g.spec(),
        rank: n,
        enumerated,
        delta,
        stirling,
        per_composition,
        zeta,
        fuss_catalan: fuss,
    })
}

/// Both sides of `Σ_p C(N+1, p) fact_p = ∏ (d_i + N h)/d_i`, plus the
/// multichain count from the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChapotonRecord {
    pub n_chains: usize,
    #[serde(serialize_with = "rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "rational")]
    pub rhs: Rational,
    pub multichains: u128,
    pub pass: bool,
}

pub fn chapoton_identity(lattice: &NcpLattice<'_>, ledger: &CountLedger, n_chains: usize) -> ChapotonRecord {
    let lhs: BigInt = (1..=ledger.rank)
        .map(|p| binomial(n_chains as u64 + 1, p as u64) * BigInt::from(ledger.fact(p)))
        .sum();
    let lhs = Rational::from_integer(lhs);
    let rhs = fuss_catalan(lattice.group().degrees(), n_chains as i64);
    let multichains = lattice.multichain_count(n_chains);
    let pass = lhs == rhs && Rational::from_integer(BigInt::from(multichains)) == rhs;
    ChapotonRecord {
        n_chains,
        lhs,
        rhs,
        multichains,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ReflectionGroup;

    fn ledger(spec: GroupSpec) -> CountLedger {
        let w = ReflectionGroup::build(spec).unwrap();
        let l = NcpLattice::build(&w).unwrap();
        fact_counts(&l).unwrap()
    }

    #[test]
    fn small_ledgers() {
        assert_eq!(ledger(GroupSpec::A(2)).enumerated, vec![1, 3]);
        assert_eq!(ledger(GroupSpec::A(3)).enumerated, vec![1, 12, 16]);
        let b3 = ledger(GroupSpec::B(3));
        assert_eq!(b3.fact(1), 1);
        assert_eq!(b3.fact(2), 18);
        b3.check_partition_invariance().unwrap();
    }

    #[test]
    fn chapoton_examples() {
        let check = |spec, n, value: i64| {
            let w = ReflectionGroup::build(spec).unwrap();
            let l = NcpLattice::build(&w).unwrap();
            let rec = chapoton_identity(&l, &fact_counts(&l).unwrap(), n);
            assert!(rec.pass, "{spec} N={n}");
            assert_eq!(rec.rhs, Rational::from_integer(value.into()));
        };
        check(GroupSpec::A(3), 1, 14);
        check(GroupSpec::A(2), 2, 12);
        check(GroupSpec::B(2), 3, 28);
    }
}
