//! Reference rows of the Lyashko–Looijenga data table.
//!
//! Each row is a list of pairs `(p, u)` and the scalar
//! `(n-2)! h^{n-1} / |W|`. Family rows are evaluated at the requested
//! parameters; pairs with `u = 0` are dropped.

use num_bigint::BigInt;

use crate::exactalg::Rational;
use crate::groups::GroupSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    /// `(p, u)`, sorted.
    pub pairs: Vec<(u64, u64)>,
    pub scalar: Rational,
}

fn q(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn row(label: String, pairs: &[(u64, u64)], scalar: Rational) -> TableRow {
    let mut pairs: Vec<(u64, u64)> = pairs.iter().copied().filter(|&(_, u)| u > 0).collect();
    pairs.sort_unstable();
    TableRow { label, pairs, scalar }
}

/// The family row evaluated for a catalog group of rank at least 2.
pub fn reference_row(spec: &GroupSpec) -> Option<TableRow> {
    let label = spec.to_string();
    Some(match *spec {
        GroupSpec::A(n) if n >= 2 => {
            let n = n as u64;
            row(
                label,
                &[(2, n * (n - 1) * (n - 2) / 2), (3, n * (n - 1))],
                q((n + 1).pow(n as u32 - 2), n * (n - 1)),
            )
        }
        GroupSpec::B(n) => {
            let n = n as u64;
            row(
                label,
                &[
                    (2, (n - 1) * (n - 2) * n.saturating_sub(3)),
                    (2, 2 * (n - 1) * (n - 2)),
                    (3, 2 * (n - 1) * (n - 2)),
                    (4, 2 * (n - 1)),
                ],
                q(n.pow(n as u32 - 2), 2 * (n - 1)),
            )
        }
        GroupSpec::I2(e) => row(label, &[(e as u64, 2)], q(1, 2)),
        GroupSpec::D(n) => monomial_row(label, 2, n as u64)?,
        GroupSpec::G { e, n } => monomial_row(label, e as u64, n as u64)?,
        GroupSpec::H3 => row(label, &[(2, 6), (3, 6), (5, 6)], q(5, 6)),
        GroupSpec::F4 => row(label, &[(2, 24), (3, 8), (3, 8), (4, 12)], q(3, 1)),
        GroupSpec::A(_) => return None,
    })
}

fn monomial_row(label: String, e: u64, n: u64) -> Option<TableRow> {
    Some(match n {
        // G(2,2,3) is A3
        3 if e == 2 => row(label, &[(2, 3), (3, 6)], q(2, 3)),
        3 if e % 3 == 0 => row(label, &[(3, e), (3, e), (3, e), (e, 3)], q(2, 3)),
        3 => row(label, &[(3, 3 * e), (e, 3)], q(2, 3)),
        4 if e % 2 == 1 => row(label, &[(2, 4 * e), (3, 8 * e), (e, 4)], q(9, 4)),
        4 => row(label, &[(2, 2 * e), (2, 2 * e), (3, 8 * e), (e, 4)], q(9, 4)),
        n if n >= 5 => row(
            label,
            &[(2, n * (n - 2) * (n - 3) * e / 2), (3, n * (n - 2) * e), (e, n)],
            q((n - 1).pow(n as u32 - 2), n),
        ),
        _ => return None,
    })
}

/// An exceptional row shipped as data together with the rank, Coxeter
/// number and order needed to check it for internal consistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalRow {
    pub row: TableRow,
    pub rank: u64,
    pub coxeter_number: u64,
    pub order: u128,
}

/// Rows for groups outside the catalog. They are not checked against
/// any computation.
pub fn exceptional_rows() -> Vec<ExceptionalRow> {
    let mk = |label: &str, pairs: &[(u64, u64)], scalar: Rational, rank, h, order| ExceptionalRow {
        row: row(label.to_string(), pairs, scalar),
        rank,
        coxeter_number: h,
        order,
    };
    vec![
        mk("G24", &[(3, 12), (4, 12)], q(7, 12), 3, 14, 336),
        mk("G27", &[(3, 12), (3, 12), (4, 12), (5, 12)], q(5, 12), 3, 30, 2160),
        mk("G29", &[(2, 24), (3, 48), (4, 12)], q(25, 12), 4, 20, 7680),
        mk("H4", &[(2, 60), (3, 40), (5, 24)], q(15, 4), 4, 30, 14400),
        mk("G33", &[(2, 60), (3, 80)], q(243, 20), 5, 18, 51840),
        mk("G34", &[(2, 270), (3, 240)], q(2401, 30), 6, 42, 39191040),
        mk("E6", &[(2, 90), (3, 60)], q(576, 5), 6, 12, 51840),
        mk("E7", &[(2, 210), (3, 112)], q(19683, 14), 7, 18, 2903040),
        mk("E8", &[(2, 504), (3, 224)], q(1265625, 56), 8, 30, 696729600),
    ]
}

/// `(n-2)! h^{n-1} / |W|`.
pub fn table_scalar(rank: u64, h: u64, order: u128) -> Rational {
    let fact: BigInt = (1..=rank.saturating_sub(2)).map(BigInt::from).product();
    Rational::new(fact * num_traits::pow(BigInt::from(h), rank as usize - 1), BigInt::from(order))
}
