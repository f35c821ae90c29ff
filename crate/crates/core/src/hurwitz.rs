//! The Hurwitz action of the braid group on factorisations.
//!
//! `σ_i` sends `(…, a, b, …)` to `(…, b, b⁻¹ a b, …)` at positions
//! `i, i + 1`, and `σ_i⁻¹` sends it to `(…, a b a⁻¹, a, …)`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorizations::{enumerate_fact, CompositionType, Factorisation};
use crate::groups::{Elem, ReflectionGroup};
use crate::ncp::NcpLattice;

pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// `σ_i` or `σ_i⁻¹`, with `i` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidGen {
    pub index: usize,
    pub inverse: bool,
}

impl BraidGen {
    pub fn sigma(index: usize) -> Self {
        BraidGen { index, inverse: false }
    }

    pub fn sigma_inv(index: usize) -> Self {
        BraidGen { index, inverse: true }
    }

    pub fn inverted(self) -> Self {
        BraidGen {
            inverse: !self.inverse,
            ..self
        }
    }

    /// All `σ_i^{±1}` acting on tuples of length `len`.
    pub fn all(len: usize) -> impl Iterator<Item = BraidGen> {
        (1..len).flat_map(|i| [BraidGen::sigma(i), BraidGen::sigma_inv(i)])
    }
}

impl fmt::Display for BraidGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}{}", self.index, if self.inverse { "^-1" } else { "" })
    }
}

/// Applies `g` to a tuple in place.
pub fn act_on_tuple(group: &ReflectionGroup, tuple: &mut [Elem], g: BraidGen) -> Result<()> {
    let len = tuple.len();
    if g.index == 0 || g.index >= len {
        return Err(Error::IndexOutOfRange { index: g.index, len });
    }
    let (i, j) = (g.index - 1, g.index);
    let (a, b) = (tuple[i], tuple[j]);
    if g.inverse {
        tuple[i] = group.conjugate(b, a);
        tuple[j] = a;
    } else {
        tuple[i] = b;
        tuple[j] = group.conjugate(a, group.inv(b));
    }
    Ok(())
}

pub fn hurwitz_act(group: &ReflectionGroup, t: &Factorisation, g: BraidGen) -> Result<Factorisation> {
    let mut factors = t.factors().to_vec();
    act_on_tuple(group, &mut factors, g)?;
    Ok(Factorisation::from_factors_unchecked(factors))
}

/// Sorted multiset of conjugacy-class ids of the factors.
pub fn class_multiset(group: &ReflectionGroup, factors: &[Elem]) -> Vec<usize> {
    let mut ids: Vec<usize> = factors.iter().map(|&u| group.class_id(u)).collect();
    ids.sort_unstable();
    ids
}

fn assert_move_invariants(group: &ReflectionGroup, before: &[Elem], after: &[Elem]) {
    let product = |t: &[Elem]| t.iter().fold(Elem::IDENTITY, |acc, &u| group.mul(acc, u));
    let lengths = |t: &[Elem]| {
        let mut l: Vec<u32> = t.iter().map(|&u| group.length(u)).collect();
        l.sort_unstable();
        l
    };
    assert_eq!(product(before), product(after), "Hurwitz move changed the product");
    assert_eq!(lengths(before), lengths(after), "Hurwitz move changed the lengths");
    assert_eq!(
        class_multiset(group, before),
        class_multiset(group, after),
        "Hurwitz move changed the factor classes"
    );
}

/// A full orbit under `σ_i^{±1}`, members sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzOrbit {
    pub seed: Factorisation,
    pub members: Vec<Factorisation>,
}

impl HurwitzOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, t: &Factorisation) -> bool {
        self.members.binary_search(t).is_ok()
    }
}

/// Breadth-first closure of `seed` under the braid generators. Each
/// frontier is expanded in parallel and merged in order, so the result
/// does not depend on the thread count.
pub fn hurwitz_orbit(group: &ReflectionGroup, seed: &Factorisation, cap: usize) -> Result<HurwitzOrbit> {
    let p = seed.len();
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([seed.factors().to_vec()]);
    let mut members = vec![seed.factors().to_vec()];
    let mut frontier = members.clone();
    while !frontier.is_empty() {
        let next: Vec<Vec<Elem>> = frontier
            .par_iter()
            .flat_map_iter(|t| {
                BraidGen::all(p).map(move |g| {
                    let mut u = t.clone();
                    act_on_tuple(group, &mut u, g).expect("generator in range");
                    assert_move_invariants(group, t, &u);
                    u
                })
            })
            .collect();
        frontier = Vec::new();
        for t in next {
            if seen.insert(t.clone()) {
                if seen.len() > cap {
                    return Err(Error::OrbitCapExceeded { cap });
                }
                members.push(t.clone());
                frontier.push(t);
            }
        }
    }
    let mut members: Vec<Factorisation> = members.into_iter().map(Factorisation::from_factors_unchecked).collect();
    members.sort_unstable();
    Ok(HurwitzOrbit {
        seed: seed.clone(),
        members,
    })
}

/// Splits a Hurwitz-stable set of factorisations into orbits, seeded by
/// the smallest unvisited tuple.
pub fn orbit_decomposition(
    group: &ReflectionGroup,
    tuples: &[Factorisation],
    cap: usize,
) -> Result<Vec<HurwitzOrbit>> {
    let mut sorted = tuples.to_vec();
    sorted.sort_unstable();
    let mut covered: HashSet<&Factorisation> = HashSet::new();
    let mut orbits = Vec::new();
    for t in &sorted {
        if covered.contains(t) {
            continue;
        }
        let orbit = hurwitz_orbit(group, t, cap)?;
        for m in &orbit.members {
            match sorted.binary_search(m) {
                Ok(k) => {
                    covered.insert(&sorted[k]);
                }
                Err(_) => {
                    return Err(Error::ClassificationMismatch(format!(
                        "orbit of {t} leaves the given set at {m}"
                    )))
                }
            }
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// All factorisations whose composition rearranges the partition `shape`.
pub fn factorisations_of_shape(lattice: &NcpLattice<'_>, shape: &CompositionType) -> Vec<Factorisation> {
    let mut out: Vec<Factorisation> = shape
        .rearrangements()
        .iter()
        .flat_map(|mu| enumerate_fact(lattice, mu))
        .collect();
    out.sort_unstable();
    out
}

/// The orbit of `(u_1, u_2) ∈ fact_2(c)` predicted by the rotation formula
/// `{(u_1^{c^k}, u_2^{c^k}), (u_2^{c^{k+1}}, u_1^{c^k}) : k ∈ Z}` with
/// `u^v = v u v⁻¹`. Sorted and deduplicated.
pub fn p2_orbit_formula(group: &ReflectionGroup, c: Elem, u1: Elem, u2: Elem) -> Vec<Factorisation> {
    let h = group.element_order(c) as i64;
    let mut out: Vec<Factorisation> = (0..h)
        .flat_map(|k| {
            let ck = group.pow(c, k);
            let ck1 = group.pow(c, k + 1);
            [
                vec![group.conjugate(u1, ck), group.conjugate(u2, ck)],
                vec![group.conjugate(u2, ck1), group.conjugate(u1, ck)],
            ]
        })
        .map(Factorisation::from_factors_unchecked)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveOrbit {
    pub size: usize,
    /// Conjugacy-class id of the long factor.
    pub class_id: usize,
    pub seed: Factorisation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveClassification {
    pub k: usize,
    pub orbits: Vec<PrimitiveOrbit>,
    /// Classes meeting the lattice in length `k`.
    pub classes: Vec<usize>,
}

/// Orbits of primitive factorisations of shape `k 1^{n-k}` and the
/// conjugacy class of their long factor. Each orbit has a single class,
/// and distinct orbits have distinct classes covering every class of
/// length-`k` members.
pub fn classify_primitive_orbits(
    lattice: &NcpLattice<'_>,
    k: usize,
    cap: usize,
) -> Result<PrimitiveClassification> {
    let g = lattice.group();
    let n = g.rank();
    if k < 2 || k > n {
        return Err(Error::InvalidComposition(format!("primitive shape needs 2 <= k <= {n}, got {k}")));
    }
    let mut parts = vec![1; n - k + 1];
    parts[0] = k;
    let shape = CompositionType::new(parts, n)?;
    let tuples = factorisations_of_shape(lattice, &shape);
    let long = |t: &Factorisation| -> Elem {
        *t.factors()
            .iter()
            .find(|&&u| g.length(u) as usize == k)
            .expect("a primitive factorisation has a long factor")
    };
    let mut orbits = Vec::new();
    for orbit in orbit_decomposition(g, &tuples, cap)? {
        let class_id = g.class_id(long(&orbit.seed));
        if let Some(bad) = orbit.members.iter().find(|t| g.class_id(long(t)) != class_id) {
            return Err(Error::ClassificationMismatch(format!(
                "orbit of {} mixes long-factor classes (at {bad})",
                orbit.seed
            )));
        }
        orbits.push(PrimitiveOrbit {
            size: orbit.len(),
            class_id,
            seed: orbit.seed,
        });
    }
    let mut classes: Vec<usize> = lattice.members_of_rank(k).iter().map(|&w| g.class_id(w)).collect();
    classes.sort_unstable();
    classes.dedup();
    let mut orbit_classes: Vec<usize> = orbits.iter().map(|o| o.class_id).collect();
    orbit_classes.sort_unstable();
    if orbit_classes != classes {
        return Err(Error::ClassificationMismatch(format!(
            "k = {k}: orbit classes {orbit_classes:?} but lattice classes {classes:?}"
        )));
    }
    Ok(PrimitiveClassification { k, orbits, classes })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn partition_from_union_find(lattice: &NcpLattice<'_>, parent: &mut [usize]) -> Vec<Vec<Elem>> {
    let mut groups: HashMap<usize, Vec<Elem>> = HashMap::new();
    for (i, &w) in lattice.members().iter().enumerate() {
        groups.entry(find(parent, i)).or_default().push(w);
    }
    let mut out: Vec<Vec<Elem>> = groups.into_values().collect();
    out.sort_unstable();
    out
}

/// Classes of the equivalence on lattice members generated by
/// `w ~ x w x⁻¹` whenever `x w ≼ c` and `ℓ(x w) = ℓ(x) + ℓ(w)`. With
/// `reflections_only` the conjugators are restricted to reflections.
/// Classes are sorted and listed in order of their smallest member.
pub fn strong_conjugacy_classes(lattice: &NcpLattice<'_>, reflections_only: bool) -> Vec<Vec<Elem>> {
    let g = lattice.group();
    let members = lattice.members();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    let conjugators: Vec<Elem> = if reflections_only {
        lattice.members_of_rank(1).to_vec()
    } else {
        members.to_vec()
    };
    let edges: Vec<(usize, usize)> = members
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, &w)| {
            conjugators.iter().filter_map(move |&x| {
                let xw = g.mul(x, w);
                if g.length(xw) != g.length(x) + g.length(w) || !lattice.contains(xw) {
                    return None;
                }
                let w2 = g.conjugate(w, x);
                Some((a, lattice.position(w2).expect("x w x⁻¹ divides x w")))
            })
        })
        .collect();
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    partition_from_union_find(lattice, &mut parent)
}

/// Conjugacy classes of `W` intersected with the lattice, in the same
/// normal form as [`strong_conjugacy_classes`].
pub fn conjugacy_on_lattice(lattice: &NcpLattice<'_>) -> Vec<Vec<Elem>> {
    let g = lattice.group();
    let mut groups: HashMap<usize, Vec<Elem>> = HashMap::new();
    for &w in lattice.members() {
        groups.entry(g.class_id(w)).or_default().push(w);
    }
    let mut out: Vec<Vec<Elem>> = groups.into_values().collect();
    out.sort_unstable();
    out
}

/// A reduced decomposition starting with `r` and a braid word taking it
/// to one that starts with `r2` while carrying the first strand back to
/// position 1. Searches states `(tuple, strand position)` breadth first
/// from every decomposition starting with `r`.
pub fn strand_witness(
    group: &ReflectionGroup,
    red: &[Factorisation],
    r: Elem,
    r2: Elem,
    cap: usize,
) -> Result<Option<(Factorisation, Vec<BraidGen>)>> {
    type State = (Vec<Elem>, usize);
    let mut back: HashMap<State, Option<(State, BraidGen)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for t in red.iter().filter(|t| t.factors()[0] == r) {
        let s = (t.factors().to_vec(), 0);
        back.insert(s.clone(), None);
        queue.push_back(s);
    }
    while let Some(state) = queue.pop_front() {
        if state.1 == 0 && state.0[0] == r2 {
            let mut word = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, g))) = back.get(&cur) {
                word.push(*g);
                cur = prev.clone();
            }
            word.reverse();
            return Ok(Some((Factorisation::from_factors_unchecked(cur.0), word)));
        }
        for g in BraidGen::all(state.0.len()) {
            let mut t = state.0.clone();
            act_on_tuple(group, &mut t, g)?;
            let i = g.index - 1;
            let pos = match state.1 {
                p if p == i => i + 1,
                p if p == i + 1 => i,
                p => p,
            };
            let next = (t, pos);
            if !back.contains_key(&next) {
                if back.len() >= cap {
                    return Err(Error::OrbitCapExceeded { cap });
                }
                back.insert(next.clone(), Some((state.clone(), g)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// First factors `r2` reachable by [`strand_witness`] from `r`: the
/// reflections carried to position 1 by the first strand.
pub fn strand_reachable(
    group: &ReflectionGroup,
    red: &[Factorisation],
    r: Elem,
    cap: usize,
) -> Result<Vec<Elem>> {
    let mut seen: HashSet<(Vec<Elem>, usize)> = HashSet::new();
    let mut queue = VecDeque::new();
    for t in red.iter().filter(|t| t.factors()[0] == r) {
        let s = (t.factors().to_vec(), 0);
        seen.insert(s.clone());
        queue.push_back(s);
    }
    let mut reached = BTreeSet::new();
    while let Some((tuple, pos)) = queue.pop_front() {
        if pos == 0 {
            reached.insert(tuple[0]);
        }
        for g in BraidGen::all(tuple.len()) {
            let mut t = tuple.clone();
            act_on_tuple(group, &mut t, g)?;
            let i = g.index - 1;
            let next_pos = match pos {
                p if p == i => i + 1,
                p if p == i + 1 => i,
                p => p,
            };
            let next = (t, next_pos);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::OrbitCapExceeded { cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(reached.into_iter().collect())
}

/// `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}`, `σ_i σ_j = σ_j σ_i` for
/// `|i - j| ≥ 2`, and `σ_i σ_i⁻¹ = 1`, evaluated on one tuple.
pub fn check_braid_relations(group: &ReflectionGroup, tuple: &[Elem]) -> std::result::Result<(), String> {
    let apply = |word: &[BraidGen]| -> Vec<Elem> {
        let mut t = tuple.to_vec();
        for &g in word {
            act_on_tuple(group, &mut t, g).expect("generator in range");
        }
        t
    };
    let p = tuple.len();
    let s = BraidGen::sigma;
    for i in 1..p {
        if apply(&[s(i), s(i).inverted()]) != tuple || apply(&[s(i).inverted(), s(i)]) != tuple {
            return Err(format!("s{i} is not invertible on {tuple:?}"));
        }
        if i + 1 < p && apply(&[s(i), s(i + 1), s(i)]) != apply(&[s(i + 1), s(i), s(i + 1)]) {
            return Err(format!("braid relation fails for s{i}, s{} on {tuple:?}", i + 1));
        }
        for j in i + 2..p {
            if apply(&[s(i), s(j)]) != apply(&[s(j), s(i)]) {
                return Err(format!("s{i} and s{j} do not commute on {tuple:?}"));
            }
        }
    }
    Ok(())
}
