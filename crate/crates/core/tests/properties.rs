use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use ncpforge::factorizations::RatPoly;
use ncpforge::hurwitz::{act_on_tuple, check_braid_relations, class_multiset, BraidGen};
use ncpforge::{CycMatrix, CycNum, Elem, GroupSpec, NcpLattice, Rational, ReflectionGroup};

const SPECS: [GroupSpec; 4] = [
    GroupSpec::A(3),
    GroupSpec::B(3),
    GroupSpec::G { e: 3, n: 3 },
    GroupSpec::H3,
];

fn groups() -> &'static [ReflectionGroup] {
    static G: OnceLock<Vec<ReflectionGroup>> = OnceLock::new();
    G.get_or_init(|| SPECS.iter().map(|&s| ReflectionGroup::build(s).unwrap()).collect())
}

fn lattices() -> &'static [NcpLattice<'static>] {
    static L: OnceLock<Vec<NcpLattice<'static>>> = OnceLock::new();
    L.get_or_init(|| groups().iter().map(|w| NcpLattice::build(w).unwrap()).collect())
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 3, 4, 5, 8, 12])
}

fn cyc_in(m: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..=m as usize).prop_map(move |terms| {
        let poly = terms
            .into_iter()
            .map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        CycNum::from_poly(m, poly)
    })
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    conductor().prop_flat_map(|m| (cyc_in(m), cyc_in(m), cyc_in(m)))
}

fn elem(w: &ReflectionGroup, i: usize) -> Elem {
    Elem((i % w.order()) as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn inverse_is_exact((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        let prod = a.clone() * a.inv().unwrap();
        prop_assert!(prod.is_one());
    }

    #[test]
    fn embedding_is_a_ring_homomorphism((a, b, _) in triple(), k in 1u32..=3) {
        let target = a.conductor() * k;
        let e = |x: &CycNum| x.embed(target).unwrap();
        prop_assert_eq!(e(&(a.clone() * b.clone())), e(&a) * e(&b));
        prop_assert_eq!(e(&(a.clone() + b.clone())), e(&a) + e(&b));
        prop_assert!(e(&CycNum::one_in(a.conductor())).is_one());
    }

    #[test]
    fn roots_of_unity_multiply(m in conductor(), j in -20i64..20, k in -20i64..20) {
        prop_assert_eq!(
            CycNum::root_of_unity(m, j) * CycNum::root_of_unity(m, k),
            CycNum::root_of_unity(m, j + k)
        );
        prop_assert!(CycNum::root_of_unity(m, j).pow(m).is_one());
    }

    #[test]
    fn rank_nullity_and_fixed_spaces(g in 0..SPECS.len(), i in any::<usize>(), j in any::<usize>()) {
        let w = &groups()[g];
        let (x, y) = (elem(w, i), elem(w, j));
        let m = w.matrix(w.mul(x, w.inv(y)));
        let one = CycNum::one_in(w.conductor());
        let shifted: CycMatrix = m.sub_scalar(&one);
        prop_assert_eq!(shifted.rank() + shifted.kernel().dim(), w.rank());
        for v in w.fixed_space(x).basis() {
            prop_assert_eq!(&w.matrix(x).mul_vec(v).unwrap(), v);
        }
    }

    #[test]
    fn length_is_a_class_function(g in 0..SPECS.len(), i in any::<usize>(), j in any::<usize>()) {
        let w = &groups()[g];
        let (x, a) = (elem(w, i), elem(w, j));
        prop_assert_eq!(w.length(w.conjugate(x, a)), w.length(x));
        prop_assert_eq!(w.length(w.inv(x)), w.length(x));
        let members = lattices()[g].members();
        let u = members[i % members.len()];
        prop_assert_eq!(w.length(u) as usize, w.rank() - w.fixed_space(u).dim());
    }

    #[test]
    fn braid_relations_on_random_tuples(
        g in 0..SPECS.len(),
        raw in prop::collection::vec(any::<usize>(), 3..=5),
        word in prop::collection::vec((any::<usize>(), any::<bool>()), 0..12),
    ) {
        let w = &groups()[g];
        let mut tuple: Vec<Elem> = raw.iter().map(|&i| elem(w, i)).collect();
        prop_assert_eq!(check_braid_relations(w, &tuple), Ok(()));
        let product = |t: &[Elem]| t.iter().fold(Elem::IDENTITY, |acc, &u| w.mul(acc, u));
        let before = (product(&tuple), class_multiset(w, &tuple));
        let gens: Vec<BraidGen> = word
            .iter()
            .map(|&(i, inv)| {
                let index = 1 + i % (tuple.len() - 1);
                if inv { BraidGen::sigma_inv(index) } else { BraidGen::sigma(index) }
            })
            .collect();
        for &s in &gens {
            act_on_tuple(w, &mut tuple, s).unwrap();
        }
        prop_assert_eq!(&before, &(product(&tuple), class_multiset(w, &tuple)));
        for &s in gens.iter().rev() {
            act_on_tuple(w, &mut tuple, s.inverted()).unwrap();
        }
        let original: Vec<Elem> = raw.iter().map(|&i| elem(w, i)).collect();
        prop_assert_eq!(tuple, original);
    }

    #[test]
    fn meet_and_join_laws(g in 0..SPECS.len(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let l = &lattices()[g];
        let m = l.members();
        let (a, b, c) = (m[i % m.len()], m[j % m.len()], m[k % m.len()]);
        let meet = |x, y| l.meet(x, y).unwrap();
        let join = |x, y| l.join(x, y).unwrap();
        prop_assert_eq!(meet(a, a), a);
        prop_assert_eq!(join(a, a), a);
        prop_assert_eq!(meet(a, b), meet(b, a));
        prop_assert_eq!(join(a, b), join(b, a));
        prop_assert_eq!(meet(meet(a, b), c), meet(a, meet(b, c)));
        prop_assert_eq!(join(join(a, b), c), join(a, join(b, c)));
        prop_assert_eq!(meet(a, join(a, b)), a);
        prop_assert_eq!(join(a, meet(a, b)), a);
        prop_assert!(l.leq(meet(a, b), a).unwrap() && l.leq(a, join(a, b)).unwrap());
    }
}

/// A vanishing `(n+1)`-st difference of the counts at `N = 1..=n+2` makes
/// them a polynomial of degree at most `n`; agreeing with the Fuss–Catalan
/// polynomial at those points then fixes every coefficient.
#[test]
fn multichain_count_is_the_fuss_catalan_polynomial() {
    for l in lattices() {
        let w = l.group();
        let n = w.rank();
        let h = Rational::from_integer(BigInt::from(w.coxeter_number()));
        let closed = w.degrees().iter().fold(RatPoly::constant(Rational::one()), |acc, &d| {
            let d = Rational::from_integer(BigInt::from(d));
            acc.mul(&RatPoly::linear(Rational::one(), h.clone() / d))
        });
        assert_eq!(closed.degree(), Some(n));
        let mut values: Vec<Rational> = (1..=n + 2)
            .map(|k| Rational::from_integer(BigInt::from(l.multichain_count(k))))
            .collect();
        for (k, v) in values.iter().enumerate() {
            assert_eq!(*v, closed.eval(&Rational::from_integer(BigInt::from(k + 1))), "{}", w.spec());
        }
        for _ in 0..=n {
            values = values.windows(2).map(|p| p[1].clone() - p[0].clone()).collect();
        }
        assert!(values.iter().all(Zero::is_zero), "{}", w.spec());
    }
}
