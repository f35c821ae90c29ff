//! Generator matrices and Coxeter words for each catalog family.

use super::spec::GroupSpec;
use crate::exactalg::{CycNum, Matrix};
use crate::CycMatrix;

/// Generating reflections together with the word (indices into the
/// generators) whose product is the catalog Coxeter element.
pub(crate) struct CatalogData {
    pub generators: Vec<CycMatrix>,
    pub coxeter_word: Vec<usize>,
}

pub(crate) fn catalog_data(spec: &GroupSpec) -> CatalogData {
    let m = spec.conductor();
    let generators = match *spec {
        GroupSpec::A(n) => {
            let n = n as usize;
            (0..n)
                .map(|i| {
                    let mut perm: Vec<usize> = (0..=n).collect();
                    perm.swap(i, i + 1);
                    type_a_matrix(&perm)
                })
                .collect()
        }
        GroupSpec::B(n) => {
            let n = n as usize;
            let mut gens = vec![signed_permutation(m, &identity_perm(n), &sign_flip(n, 0))];
            gens.extend((0..n - 1).map(|i| transposition(m, n, i)));
            gens
        }
        GroupSpec::D(n) => monomial_generators(2, n as usize),
        GroupSpec::I2(e) => monomial_generators(e, 2),
        GroupSpec::G { e, n } => monomial_generators(e, n as usize),
        GroupSpec::H3 => {
            // tau = 2cos(pi/5) = 1 + z5 + z5^4
            let tau = &(&CycNum::one_in(5) + &CycNum::root_of_unity(5, 1))
                + &CycNum::root_of_unity(5, 4);
            let one = CycNum::one_in(5);
            let zero = CycNum::zero_in(5);
            let two = CycNum::from_integer_in(5, 2);
            let cartan = vec![
                vec![two.clone(), -tau.clone(), zero.clone()],
                vec![-tau, two.clone(), -one.clone()],
                vec![zero, -one, two],
            ];
            cartan_reflections(&cartan)
        }
        GroupSpec::F4 => {
            let c = |rows: [[i64; 4]; 4]| -> Vec<Vec<CycNum>> {
                rows.iter()
                    .map(|r| r.iter().map(|&x| CycNum::from_integer_in(1, x)).collect())
                    .collect()
            };
            cartan_reflections(&c([
                [2, -1, 0, 0],
                [-1, 2, -2, 0],
                [0, -1, 2, -1],
                [0, 0, -1, 2],
            ]))
        }
    };
    let coxeter_word = (0..generators.len()).collect();
    CatalogData {
        generators,
        coxeter_word,
    }
}

fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn sign_flip(n: usize, i: usize) -> Vec<i64> {
    let mut s = vec![1; n];
    s[i] = -1;
    s
}

fn transposition(m: u32, n: usize, i: usize) -> CycMatrix {
    let mut perm = identity_perm(n);
    perm.swap(i, i + 1);
    monomial(m, &perm, &vec![0; n])
}

/// `e_j ↦ sign_j · e_{perm[j]}`.
fn signed_permutation(m: u32, perm: &[usize], signs: &[i64]) -> CycMatrix {
    let n = perm.len();
    Matrix::from_fn(n, n, |i, j| {
        if perm[j] == i {
            CycNum::from_integer_in(m, signs[j])
        } else {
            CycNum::zero_in(m)
        }
    })
}

/// `e_j ↦ ζ_m^{powers[j]} · e_{perm[j]}`.
pub(crate) fn monomial(m: u32, perm: &[usize], powers: &[i64]) -> CycMatrix {
    let n = perm.len();
    Matrix::from_fn(n, n, |i, j| {
        if perm[j] == i {
            CycNum::root_of_unity(m, powers[j])
        } else {
            CycNum::zero_in(m)
        }
    })
}

/// `s'_1, s_1, …, s_{n-1}` for `G(e,e,n)`: the twisted transposition
/// swapping the first two coordinates with `ζ_e`, then the simple
/// transpositions.
fn monomial_generators(e: u32, n: usize) -> Vec<CycMatrix> {
    let mut perm = identity_perm(n);
    perm.swap(0, 1);
    let mut powers = vec![0; n];
    // e_1 ↦ ζ e_2, e_2 ↦ ζ^{-1} e_1
    powers[0] = 1;
    powers[1] = -1;
    let mut gens = vec![monomial(e, &perm, &powers)];
    gens.extend((0..n - 1).map(|i| transposition(e, n, i)));
    gens
}

/// Permutation `σ` of `{0, …, n}` acting on the sum-zero hyperplane of
/// `Q^{n+1}`, in the basis `α_j = e_j - e_{j+1}`.
pub fn type_a_matrix(perm: &[usize]) -> CycMatrix {
    let n = perm.len() - 1;
    let mut cols = vec![vec![0i64; n]; n];
    for (j, col) in cols.iter_mut().enumerate() {
        let (a, b) = (perm[j], perm[j + 1]);
        if a < b {
            for c in col.iter_mut().take(b).skip(a) {
                *c += 1;
            }
        } else {
            for c in col.iter_mut().take(a).skip(b) {
                *c -= 1;
            }
        }
    }
    Matrix::from_fn(n, n, |i, j| CycNum::from_integer_in(1, cols[j][i]))
}

/// Permutation of `{0, …, size-1}` from disjoint cycles written on the
/// letters `1, …, size`.
pub fn perm_from_cycles(size: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..size).collect();
    for cycle in cycles {
        for (k, &a) in cycle.iter().enumerate() {
            perm[a - 1] = cycle[(k + 1) % cycle.len()] - 1;
        }
    }
    perm
}

/// Simple reflections in the basis of simple roots:
/// `s_i(α_j) = α_j - a_{ij} α_i`.
fn cartan_reflections(cartan: &[Vec<CycNum>]) -> Vec<CycMatrix> {
    let n = cartan.len();
    let m = cartan[0][0].conductor();
    (0..n)
        .map(|i| {
            Matrix::from_fn(n, n, |k, j| {
                let delta = if k == j {
                    CycNum::one_in(m)
                } else {
                    CycNum::zero_in(m)
                };
                if k == i {
                    &delta - &cartan[i][j]
                } else {
                    delta
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a_matrices_compose_like_permutations() {
        // (0 1) then (1 2), composed right to left
        let s0 = type_a_matrix(&[1, 0, 2]);
        let s1 = type_a_matrix(&[0, 2, 1]);
        let prod: Vec<usize> = (0..3).map(|x| [1, 0, 2][[0, 2, 1][x]]).collect();
        assert_eq!(s0.mul(&s1).unwrap(), type_a_matrix(&prod));
    }

    #[test]
    fn cycles_to_permutations() {
        assert_eq!(perm_from_cycles(4, &[&[1, 2, 3]]), vec![1, 2, 0, 3]);
        assert_eq!(perm_from_cycles(4, &[&[1, 2], &[3, 4]]), vec![1, 0, 3, 2]);
        assert_eq!(perm_from_cycles(3, &[]), vec![0, 1, 2]);
    }

    #[test]
    fn generators_are_involutions() {
        for spec in GroupSpec::default_catalog() {
            let data = catalog_data(&spec);
            assert_eq!(data.generators.len(), spec.rank(), "{spec}");
            for g in &data.generators {
                let id = Matrix::identity_like(spec.rank(), &CycNum::one_in(spec.conductor()));
                assert_eq!(g.mul(g).unwrap(), id, "{spec}");
            }
        }
    }
}
