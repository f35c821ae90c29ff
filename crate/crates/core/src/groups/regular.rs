use num_integer::Integer;

use super::{Elem, ReflectionGroup};
use crate::exactalg::{CycNum, Matrix};

/// `w` admits a `ζ_d`-eigenvector on no reflecting hyperplane.
///
/// Over an infinite field a subspace is covered by finitely many
/// hyperplanes only if it lies in one of them, so it suffices that no
/// hyperplane form vanishes on the whole eigenspace.
pub(super) fn is_regular(group: &ReflectionGroup, w: Elem, d: u32) -> bool {
    let m = group.conductor().lcm(&d);
    let lift = |mat: &Matrix<CycNum>| mat.map(|x| x.embed(m).expect("m is a multiple"));
    let zeta = CycNum::root_of_unity(d, 1).embed(m).expect("d divides m");
    let eigenspace = lift(group.matrix(w)).sub_scalar(&zeta).kernel();
    if eigenspace.dim() == 0 {
        return false;
    }
    let one = CycNum::one_in(m);
    group.reflections().iter().all(|&r| {
        let form_matrix = lift(group.matrix(r)).sub_scalar(&one);
        let form = (0..form_matrix.rows())
            .map(|i| form_matrix.row(i))
            .find(|row| row.iter().any(|x| !num_traits::Zero::is_zero(x)))
            .expect("a reflection differs from the identity");
        eigenspace.basis().iter().any(|v| {
            let mut acc = CycNum::zero_in(m);
            for (a, b) in form.iter().zip(v) {
                acc = &acc + &(a * b);
            }
            !num_traits::Zero::is_zero(&acc)
        })
    })
}
