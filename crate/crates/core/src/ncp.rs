//! The noncrossing partition lattice `[1, c]` under the absolute order.
//!
//! Members are stored in increasing element index. The order relation is a
//! dense table of down-sets, one bitset per member, from which meet and
//! join tables are derived once at construction.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::groups::{Elem, ReflectionGroup};
use crate::CycSubspace;

/// `∏ (d_i + k·h) / d_i`. At `k = 1` this is the Catalan number of `W`,
/// and at `k = X - 1` the zeta polynomial `Z(X)`.
pub fn fuss_catalan(degrees: &[u32], k: i64) -> Rational {
    let h = *degrees.last().expect("rank is positive") as i64;
    degrees.iter().fold(Rational::one(), |acc, &d| {
        acc * Rational::new(BigInt::from(d as i64 + k * h), BigInt::from(d))
    })
}

/// Fixed-width bitset over member positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &Self) -> Self {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b)
        })
    }
}

const ABSENT: u32 = u32::MAX;

pub struct NcpLattice<'g> {
    group: &'g ReflectionGroup,
    c: Elem,
    members: Vec<Elem>,
    position: Vec<u32>,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    meet: Vec<u32>,
    join: Vec<u32>,
    by_rank: Vec<Vec<Elem>>,
    divisor_reflections: Vec<Vec<Elem>>,
}

impl std::fmt::Debug for NcpLattice<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NcpLattice")
            .field("group", &self.group.spec())
            .field("c", &self.c)
            .field("size", &self.members.len())
            .finish()
    }
}

impl<'g> NcpLattice<'g> {
    /// Builds `[1, c]` for the group's catalog Coxeter element and checks
    /// its size against the Catalan number.
    pub fn build(group: &'g ReflectionGroup) -> Result<Self> {
        Self::build_for(group, group.coxeter())
    }

    /// Builds `[1, c]` for a given Coxeter element `c` of `group`.
    pub fn build_for(group: &'g ReflectionGroup, c: Elem) -> Result<Self> {
        group.check(c)?;
        let members: Vec<Elem> = group.elements().filter(|&w| group.divides(w, c)).collect();
        let expected = fuss_catalan(group.degrees(), 1);
        if Rational::from_integer(members.len().into()) != expected {
            return Err(Error::CatalanMismatch {
                expected: expected.to_string(),
                computed: members.len().to_string(),
            });
        }
        let m = members.len();
        let mut position = vec![ABSENT; group.order()];
        for (i, w) in members.iter().enumerate() {
            position[w.index()] = i as u32;
        }
        let down: Vec<BitSet> = members
            .par_iter()
            .map(|&v| {
                let mut set = BitSet::new(m);
                for (i, &u) in members.iter().enumerate() {
                    if group.divides(u, v) {
                        set.insert(i);
                    }
                }
                set
            })
            .collect();
        let mut up = vec![BitSet::new(m); m];
        for (j, set) in down.iter().enumerate() {
            for i in set.iter() {
                up[i].insert(j);
            }
        }
        let n = group.rank();
        let mut by_rank = vec![Vec::new(); n + 1];
        for &w in &members {
            by_rank[group.length(w) as usize].push(w);
        }
        let divisor_reflections = members
            .iter()
            .enumerate()
            .map(|(j, _)| {
                down[j]
                    .iter()
                    .map(|i| members[i])
                    .filter(|&r| group.is_reflection(r))
                    .collect()
            })
            .collect();

        let mut lattice = NcpLattice {
            group,
            c,
            members,
            position,
            down,
            up,
            meet: vec![],
            join: vec![],
            by_rank,
            divisor_reflections,
        };
        let (meet, join) = lattice.bound_tables()?;
        lattice.meet = meet;
        lattice.join = join;
        Ok(lattice)
    }

    /// The unique maximum of `set` under the order, if any.
    fn maximum(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&i| set.is_subset(&self.down[i]))
    }

    fn minimum(&self, set: &BitSet) -> Option<usize> {
        set.iter().find(|&i| set.is_subset(&self.up[i]))
    }

    fn bound_tables(&self) -> Result<(Vec<u32>, Vec<u32>)> {
        let m = self.members.len();
        let rows: Vec<Result<(Vec<u32>, Vec<u32>)>> = (0..m)
            .into_par_iter()
            .map(|a| {
                let mut meets = Vec::with_capacity(m);
                let mut joins = Vec::with_capacity(m);
                for b in 0..m {
                    let missing = |kind| Error::MeetJoinMissing {
                        kind,
                        u: self.members[a].index(),
                        v: self.members[b].index(),
                    };
                    let lo = self
                        .maximum(&self.down[a].and(&self.down[b]))
                        .ok_or_else(|| missing("meet"))?;
                    let hi = self
                        .minimum(&self.up[a].and(&self.up[b]))
                        .ok_or_else(|| missing("join"))?;
                    meets.push(lo as u32);
                    joins.push(hi as u32);
                }
                Ok((meets, joins))
            })
            .collect();
        let mut meet = Vec::with_capacity(m * m);
        let mut join = Vec::with_capacity(m * m);
        for row in rows {
            let (a, b) = row?;
            meet.extend(a);
            join.extend(b);
        }
        Ok((meet, join))
    }

    pub fn group(&self) -> &'g ReflectionGroup {
        self.group
    }

    pub fn coxeter(&self) -> Elem {
        self.c
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in increasing element index.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    /// Members of reflection length `k`.
    pub fn members_of_rank(&self, k: usize) -> &[Elem] {
        self.by_rank.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, w: Elem) -> bool {
        self.position.get(w.index()).is_some_and(|&p| p != ABSENT)
    }

    /// Position of a member in [`Self::members`].
    pub fn position(&self, w: Elem) -> Result<usize> {
        match self.position.get(w.index()) {
            Some(&p) if p != ABSENT => Ok(p as usize),
            _ => Err(Error::NotADivisor),
        }
    }

    pub fn rank_of(&self, w: Elem) -> u32 {
        self.group.length(w)
    }

    /// `u ≼ v` for members `u`, `v`.
    pub fn leq(&self, u: Elem, v: Elem) -> Result<bool> {
        Ok(self.down[self.position(v)?].contains(self.position(u)?))
    }

    /// Members below `v`, in increasing index.
    pub fn down_set(&self, v: Elem) -> Result<Vec<Elem>> {
        Ok(self.down[self.position(v)?].iter().map(|i| self.members[i]).collect())
    }

    /// Reflections dividing the member `w`, in increasing index.
    pub fn divisor_reflections(&self, w: Elem) -> Result<&[Elem]> {
        Ok(&self.divisor_reflections[self.position(w)?])
    }

    /// `Ker(w - 1)`.
    pub fn flat(&self, w: Elem) -> Result<&CycSubspace> {
        self.position(w)?;
        Ok(self.group.fixed_space(w))
    }

    pub fn meet(&self, u: Elem, v: Elem) -> Result<Elem> {
        let (a, b) = (self.position(u)?, self.position(v)?);
        Ok(self.members[self.meet[a * self.len() + b] as usize])
    }

    pub fn join(&self, u: Elem, v: Elem) -> Result<Elem> {
        let (a, b) = (self.position(u)?, self.position(v)?);
        Ok(self.members[self.join[a * self.len() + b] as usize])
    }

    /// Number of multichains `w_1 ≼ … ≼ w_N ≼ c`.
    pub fn multichain_count(&self, n: usize) -> u128 {
        assert!(n >= 1, "multichains need N >= 1");
        let m = self.len();
        let mut f = vec![1u128; m];
        for _ in 1..n {
            f = (0..m).map(|j| self.down[j].iter().map(|i| f[i]).sum()).collect();
        }
        f.iter().sum()
    }

    /// The multichain count and its closed form `∏ (d_i + N·h)/d_i`.
    pub fn multichain_check(&self, n: usize) -> (u128, Rational) {
        (self.multichain_count(n), fuss_catalan(self.group.degrees(), n as i64))
    }

    /// Checks the lattice laws on every pair and triple: bounds,
    /// idempotence, commutativity, associativity and absorption.
    pub fn check_lattice_axioms(&self) -> std::result::Result<(), String> {
        let m = self.len();
        let meet = |a: usize, b: usize| self.meet[a * m + b] as usize;
        let join = |a: usize, b: usize| self.join[a * m + b] as usize;
        let bottom = self.position(Elem::IDENTITY).map_err(|e| e.to_string())?;
        let top = self.position(self.c).map_err(|e| e.to_string())?;
        for a in 0..m {
            if meet(a, a) != a || join(a, a) != a {
                return Err(format!("idempotence fails at {}", self.members[a]));
            }
            if meet(a, bottom) != bottom || join(a, top) != top {
                return Err(format!("bounds fail at {}", self.members[a]));
            }
            for b in 0..m {
                if meet(a, b) != meet(b, a) || join(a, b) != join(b, a) {
                    return Err(format!("commutativity fails at {}, {}", self.members[a], self.members[b]));
                }
                if meet(a, join(a, b)) != a || join(a, meet(a, b)) != a {
                    return Err(format!("absorption fails at {}, {}", self.members[a], self.members[b]));
                }
            }
        }
        let bad = (0..m).into_par_iter().find_first(|&a| {
            (0..m).any(|b| {
                (0..m).any(|c| {
                    meet(meet(a, b), c) != meet(a, meet(b, c))
                        || join(join(a, b), c) != join(a, join(b, c))
                })
            })
        });
        match bad {
            Some(a) => Err(format!("associativity fails at {}", self.members[a])),
            None => Ok(()),
        }
    }

    /// `≼` restricted to members is reflexive, antisymmetric and transitive,
    /// and length strictly increases along strict relations.
    pub fn check_partial_order(&self) -> std::result::Result<(), String> {
        let m = self.len();
        for a in 0..m {
            if !self.down[a].contains(a) {
                return Err(format!("not reflexive at {}", self.members[a]));
            }
            for b in self.down[a].iter() {
                if b != a && self.down[b].contains(a) {
                    return Err(format!("not antisymmetric at {}, {}", self.members[a], self.members[b]));
                }
                if !self.down[b].is_subset(&self.down[a]) {
                    return Err(format!("not transitive below {}", self.members[a]));
                }
                if b != a && self.rank_of(self.members[b]) >= self.rank_of(self.members[a]) {
                    return Err(format!("rank does not increase from {} to {}", self.members[b], self.members[a]));
                }
            }
        }
        Ok(())
    }

    /// `w ↦ Ker(w - 1)` is injective on members and `u ≼ v` exactly when
    /// `Ker(v - 1) ⊆ Ker(u - 1)`.
    pub fn check_brady_watt(&self) -> std::result::Result<(), String> {
        let g = self.group;
        let m = self.len();
        let bad = (0..m).into_par_iter().find_first(|&b| {
            let fv = g.fixed_space(self.members[b]);
            (0..m).any(|a| {
                let fu = g.fixed_space(self.members[a]);
                let contained = fv.is_subspace_of(fu);
                (a != b && fu == fv) || contained != self.down[b].contains(a)
            })
        });
        match bad {
            Some(b) => Err(format!("flat order disagrees with ≼ at {}", self.members[b])),
            None => Ok(()),
        }
    }

    /// `ℓ(w) = codim Ker(w - 1)` for every member.
    pub fn check_length_codim(&self) -> std::result::Result<(), String> {
        for &w in &self.members {
            let codim = self.group.fixed_space(w).codim();
            if self.group.length(w) as usize != codim {
                return Err(format!("ℓ({w}) = {} but codim = {codim}", self.group.length(w)));
            }
        }
        Ok(())
    }

    /// For every reduced decomposition `r_1 ⋯ r_k` of a member `w`,
    /// `Ker(w - 1) = ⋂ Ker(r_i - 1)`.
    ///
    /// Prefixes of reduced decompositions of members are members, so by
    /// induction on `k` it suffices to check
    /// `Ker(p r - 1) = Ker(p - 1) ∩ Ker(r - 1)` along every edge `p → p r`
    /// of the cover graph.
    pub fn check_kernel_decomposition(&self) -> std::result::Result<(), String> {
        let g = self.group;
        let bad = self.members.par_iter().find_map_first(|&p| {
            let lp = g.length(p);
            for &r in g.reflections() {
                let pr = g.mul(p, r);
                if g.length(pr) != lp + 1 || !self.contains(pr) {
                    continue;
                }
                match g.fixed_space(p).intersect(g.fixed_space(r)) {
                    Ok(k) if &k == g.fixed_space(pr) => {}
                    Ok(_) => return Some(format!("Ker({pr} - 1) ≠ Ker({p} - 1) ∩ Ker({r} - 1)")),
                    Err(e) => return Some(e.to_string()),
                }
            }
            None
        });
        bad.map_or(Ok(()), Err)
    }

    /// Catalan number as an integer, for reporting.
    pub fn catalan_formula(&self) -> u128 {
        fuss_catalan(self.group.degrees(), 1)
            .to_integer()
            .to_u128()
            .expect("Catalan numbers are positive integers")
    }
}
