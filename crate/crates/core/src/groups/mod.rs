//! Catalog groups, enumerated in full.
//!
//! A [`ReflectionGroup`] is built by breadth-first closure of the catalog
//! generator matrices, deduplicating canonical matrices through a hash map.
//! Element `0` is the identity and indices follow BFS discovery order, so
//! the indexing is identical across runs. After the closure every query
//! (products, inverses, reflection length, conjugacy) is answered from
//! tables indexed by [`Elem`].

mod catalog;
mod regular;
mod spec;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

pub use catalog::{perm_from_cycles, type_a_matrix};
pub use spec::GroupSpec;

use crate::error::{Error, Result};
use crate::exactalg::{CycNum, Matrix};
use crate::{CycMatrix, CycSubspace};

/// Index of an element in its [`ReflectionGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A group element in canonical matrix form with a digest of its
/// coefficient stream.
#[derive(Clone, Debug)]
pub struct GroupElement {
    matrix: CycMatrix,
    digest: u64,
}

impl GroupElement {
    fn new(matrix: CycMatrix) -> Self {
        let digest = digest_matrix(&matrix);
        GroupElement { matrix, digest }
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.matrix
    }

    pub fn digest(&self) -> u64 {
        self.digest
    }
}

/// FNV-1a over the signed bytes of every numerator and denominator.
fn digest_matrix(m: &CycMatrix) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    };
    for entry in m.entries() {
        for c in entry.coeffs() {
            eat(&c.numer().to_signed_bytes_le());
            eat(b"/");
            eat(&c.denom().to_signed_bytes_le());
            eat(b",");
        }
        eat(b";");
    }
    h
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Refuse groups with more elements than this.
    pub order_cap: usize,
    /// Largest order for which a full multiplication table is stored;
    /// bigger groups multiply by walking generator words.
    pub table_limit: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            order_cap: 50_000,
            table_limit: 2048,
        }
    }
}

enum Multiplication {
    Table(Vec<u32>),
    Walk,
}

pub struct ReflectionGroup {
    spec: GroupSpec,
    rank: usize,
    conductor: u32,
    degrees: Vec<u32>,
    elements: Vec<GroupElement>,
    index: HashMap<CycMatrix, Elem>,
    generators: Vec<Elem>,
    right_gen: Vec<u32>,
    parent: Vec<u32>,
    last_gen: Vec<u32>,
    mult: Multiplication,
    inverse: Vec<u32>,
    fixed: Vec<CycSubspace>,
    lengths: Vec<u32>,
    reflections: Vec<Elem>,
    is_reflection: Vec<bool>,
    class_of: Vec<u32>,
    classes: Vec<Vec<Elem>>,
    orders: Vec<u32>,
    coxeter: Elem,
}

impl fmt::Debug for ReflectionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReflectionGroup")
            .field("spec", &self.spec)
            .field("order", &self.order())
            .field("reflections", &self.reflections.len())
            .finish()
    }
}

impl ReflectionGroup {
    pub fn build(spec: GroupSpec) -> Result<Self> {
        Self::build_with(spec, &BuildOptions::default())
    }

    pub fn build_with(spec: GroupSpec, opts: &BuildOptions) -> Result<Self> {
        spec.validate()?;
        let expected_order = spec.order();
        if expected_order > opts.order_cap as u128 {
            return Err(Error::OrderCapExceeded {
                order: expected_order,
                cap: opts.order_cap,
            });
        }
        let data = catalog::catalog_data(&spec);
        let rank = spec.rank();
        let conductor = spec.conductor();
        let k = data.generators.len();

        // Breadth-first closure under right multiplication by generators.
        let identity = Matrix::identity_like(rank, &CycNum::one_in(conductor));
        let mut elements = vec![GroupElement::new(identity.clone())];
        let mut index = HashMap::from([(identity, Elem(0))]);
        let mut parent = vec![0u32];
        let mut last_gen = vec![u32::MAX];
        let mut right_gen = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            let products: Vec<CycMatrix> = data
                .generators
                .par_iter()
                .map(|g| elements[head].matrix.mul(g).expect("square matrices"))
                .collect();
            for (g, m) in products.into_iter().enumerate() {
                let next = match index.get(&m) {
                    Some(&e) => e,
                    None => {
                        let e = Elem(elements.len() as u32);
                        if elements.len() >= opts.order_cap {
                            return Err(Error::OrderCapExceeded {
                                order: elements.len() as u128 + 1,
                                cap: opts.order_cap,
                            });
                        }
                        elements.push(GroupElement::new(m.clone()));
                        index.insert(m, e);
                        parent.push(head as u32);
                        last_gen.push(g as u32);
                        e
                    }
                };
                right_gen.push(next.0);
            }
            head += 1;
        }
        let order = elements.len();
        if order as u128 != expected_order {
            return Err(Error::CatalogMismatch(format!(
                "{spec}: closure has {order} elements, product of degrees is {expected_order}"
            )));
        }
        let generators = (0..k).map(|g| Elem(right_gen[g])).collect();

        let mut group = ReflectionGroup {
            spec,
            rank,
            conductor,
            degrees: spec.degrees(),
            elements,
            index,
            generators,
            right_gen,
            parent,
            last_gen,
            mult: Multiplication::Walk,
            inverse: vec![],
            fixed: vec![],
            lengths: vec![],
            reflections: vec![],
            is_reflection: vec![],
            class_of: vec![],
            classes: vec![],
            orders: vec![],
            coxeter: Elem::IDENTITY,
        };
        if order <= opts.table_limit {
            group.mult = Multiplication::Table(group.multiplication_table());
        }
        group.inverse = group.inverse_table();
        group.fixed = group
            .elements
            .par_iter()
            .map(|e| e.matrix.sub_scalar(&CycNum::one_in(conductor)).kernel())
            .collect();
        group.is_reflection = group.fixed.iter().map(|f| f.codim() == 1).collect();
        group.reflections = (0..order as u32)
            .map(Elem)
            .filter(|e| group.is_reflection[e.index()])
            .collect();
        if group.reflections.len() as u64 != spec.reflection_count() {
            return Err(Error::CatalogMismatch(format!(
                "{spec}: found {} reflections, expected {}",
                group.reflections.len(),
                spec.reflection_count()
            )));
        }
        group.lengths = group.length_table();
        group.orders = (0..order as u32).map(|w| group.compute_order(Elem(w))).collect();
        let (class_of, classes) = group.conjugacy_partition();
        group.class_of = class_of;
        group.classes = classes;
        group.coxeter = data
            .coxeter_word
            .iter()
            .fold(Elem::IDENTITY, |acc, &g| group.mul(acc, group.generators[g]));
        group.validate_coxeter(group.coxeter)?;
        Ok(group)
    }

    fn multiplication_table(&self) -> Vec<u32> {
        let n = self.elements.len();
        let k = self.generators.len();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut row = vec![0u32; n];
                row[0] = a as u32;
                for b in 1..n {
                    let p = row[self.parent[b] as usize] as usize;
                    row[b] = self.right_gen[p * k + self.last_gen[b] as usize];
                }
                row
            })
            .collect();
        rows.concat()
    }

    fn inverse_table(&self) -> Vec<u32> {
        let k = self.generators.len();
        let gen_inv: Vec<Elem> = (0..k)
            .map(|g| {
                let mut prev = 0usize;
                let mut cur = self.right_gen[g] as usize;
                while cur != 0 {
                    prev = cur;
                    cur = self.right_gen[cur * k + g] as usize;
                }
                Elem(prev as u32)
            })
            .collect();
        let mut inv = vec![0u32; self.elements.len()];
        for b in 1..self.elements.len() {
            let p = Elem(inv[self.parent[b] as usize]);
            inv[b] = self.mul(gen_inv[self.last_gen[b] as usize], p).0;
        }
        inv
    }

    fn length_table(&self) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.elements.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([Elem::IDENTITY]);
        while let Some(w) = queue.pop_front() {
            for &r in &self.reflections {
                let x = self.mul(w, r);
                if dist[x.index()] == u32::MAX {
                    dist[x.index()] = dist[w.index()] + 1;
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    fn compute_order(&self, w: Elem) -> u32 {
        let mut k = 1;
        let mut p = w;
        while p != Elem::IDENTITY {
            p = self.mul(p, w);
            k += 1;
        }
        k
    }

    fn conjugacy_partition(&self) -> (Vec<u32>, Vec<Vec<Elem>>) {
        let n = self.elements.len();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![Elem(start as u32)];
            class_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &g in &self.generators {
                    let y = self.conjugate(x, g);
                    if class_of[y.index()] == u32::MAX {
                        class_of[y.index()] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        (class_of, classes)
    }

    fn validate_coxeter(&self, c: Elem) -> Result<()> {
        let n = self.rank as u32;
        let h = self.coxeter_number();
        let fail = |msg: String| Err(Error::CoxeterValidationFailed(format!("{}: {msg}", self.spec)));
        if self.length(c) != n {
            return fail(format!("length {} != rank {n}", self.length(c)));
        }
        if self.fixed_space(c).dim() != 0 {
            return fail("nontrivial fixed space".into());
        }
        if self.element_order(c) != h {
            return fail(format!("order {} != h = {h}", self.element_order(c)));
        }
        Ok(())
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Coxeter number `h = d_n`.
    pub fn coxeter_number(&self) -> u32 {
        *self.degrees.last().expect("rank is positive")
    }

    /// The validated catalog Coxeter element.
    pub fn coxeter(&self) -> Elem {
        self.coxeter
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.elements.len() as u32).map(Elem)
    }

    pub fn element(&self, w: Elem) -> &GroupElement {
        &self.elements[w.index()]
    }

    pub fn matrix(&self, w: Elem) -> &CycMatrix {
        &self.elements[w.index()].matrix
    }

    /// Finds the element with the given matrix.
    pub fn locate(&self, m: &CycMatrix) -> Result<Elem> {
        self.index.get(m).copied().ok_or(Error::ElementNotInGroup)
    }

    /// Checks that an index refers to an element of this group.
    pub fn check(&self, w: Elem) -> Result<Elem> {
        if w.index() < self.elements.len() {
            Ok(w)
        } else {
            Err(Error::ElementNotInGroup)
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.mult {
            Multiplication::Table(t) => Elem(t[a.index() * self.elements.len() + b.index()]),
            Multiplication::Walk => {
                let mut word = Vec::new();
                let mut x = b.index();
                while x != 0 {
                    word.push(self.last_gen[x] as usize);
                    x = self.parent[x] as usize;
                }
                let k = self.generators.len();
                let mut cur = a.index();
                for &g in word.iter().rev() {
                    cur = self.right_gen[cur * k + g] as usize;
                }
                Elem(cur as u32)
            }
        }
    }

    pub fn inv(&self, w: Elem) -> Elem {
        Elem(self.inverse[w.index()])
    }

    /// `x w x⁻¹`.
    pub fn conjugate(&self, w: Elem, x: Elem) -> Elem {
        self.mul(self.mul(x, w), self.inv(x))
    }

    /// `w^k` for any integer `k`.
    pub fn pow(&self, w: Elem, k: i64) -> Elem {
        let ord = self.element_order(w) as i64;
        let e = k.rem_euclid(ord);
        (0..e).fold(Elem::IDENTITY, |acc, _| self.mul(acc, w))
    }

    /// Reflection length from the cached table.
    pub fn length(&self, w: Elem) -> u32 {
        self.lengths[w.index()]
    }

    /// Reflection length of an arbitrary matrix, if it lies in the group.
    pub fn reflection_length(&self, m: &CycMatrix) -> Result<u32> {
        Ok(self.length(self.locate(m)?))
    }

    pub fn reflections(&self) -> &[Elem] {
        &self.reflections
    }

    pub fn is_reflection(&self, w: Elem) -> bool {
        self.is_reflection[w.index()]
    }

    /// Absolute order: `ℓ(u) + ℓ(u⁻¹v) = ℓ(v)`.
    pub fn divides(&self, u: Elem, v: Elem) -> bool {
        self.length(u) + self.length(self.mul(self.inv(u), v)) == self.length(v)
    }

    /// Fixed space `Ker(w - 1)`.
    pub fn fixed_space(&self, w: Elem) -> &CycSubspace {
        &self.fixed[w.index()]
    }

    pub fn element_order(&self, w: Elem) -> u32 {
        self.orders[w.index()]
    }

    /// Conjugacy class of `w`, sorted by index.
    pub fn conjugacy_class(&self, w: Elem) -> &[Elem] {
        &self.classes[self.class_of[w.index()] as usize]
    }

    /// Class id, numbered by the smallest element of each class.
    pub fn class_id(&self, w: Elem) -> usize {
        self.class_of[w.index()] as usize
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    /// `true` when `w` has an eigenvector for `ζ_d` lying on no reflecting
    /// hyperplane.
    pub fn is_regular(&self, w: Elem, d: u32) -> bool {
        regular::is_regular(self, w, d)
    }

    /// The Coxeter element is `ζ_h`-regular.
    pub fn coxeter_regularity_check(&self) -> bool {
        self.is_regular(self.coxeter, self.coxeter_number())
    }

    /// The subgroup generated by `gens`, sorted by index.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.elements.len()];
        seen[0] = true;
        let mut members = vec![Elem::IDENTITY];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }
}


#[cfg(test)]
mod catalog_tests {
    use super::*;

    #[test]
    fn whole_catalog_builds_and_satisfies_degree_identities() {
        for spec in GroupSpec::default_catalog() {
            let w = ReflectionGroup::build(spec).unwrap();
            let prod: u128 = w.degrees().iter().map(|&d| d as u128).product();
            let sum: usize = w.degrees().iter().map(|&d| d as usize - 1).sum();
            assert_eq!(w.order() as u128, prod, "{spec}");
            assert_eq!(w.reflections().len(), sum, "{spec}");
            assert!(w.coxeter_regularity_check(), "{spec}");
        }
    }

    #[test]
    fn length_is_conjugation_invariant_and_lipschitz() {
        for spec in [GroupSpec::B(3), GroupSpec::G { e: 3, n: 3 }, GroupSpec::H3] {
            let w = ReflectionGroup::build(spec).unwrap();
            for x in w.elements() {
                for a in w.elements() {
                    assert_eq!(w.length(w.conjugate(x, a)), w.length(x));
                }
                for &r in w.reflections() {
                    assert!(w.length(w.mul(r, x)).abs_diff(w.length(x)) <= 1);
                }
                assert_eq!(w.length(x) == 0, x == Elem::IDENTITY);
            }
        }
    }

    #[test]
    fn conjugates_of_coxeter_element_pass_the_same_checks() {
        let w = ReflectionGroup::build(GroupSpec::G { e: 4, n: 3 }).unwrap();
        for &x in w.conjugacy_class(w.coxeter()) {
            assert!(w.validate_coxeter(x).is_ok());
            assert!(w.is_regular(x, w.coxeter_number()));
        }
    }
}
