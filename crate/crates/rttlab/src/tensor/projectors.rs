//! q-symmetrizers and q-antisymmetrizers: the images of the trivial and sign
//! idempotents under the q-permutation action of the symmetric group.

use super::matrices::{make_const, r_uv, ConstMatrixKind};
use super::{QSign, SparseOp};
use crate::scalar::{CoeffRing, RatQ};
use itertools::Itertools;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectorKind {
    Antisym,
    Sym,
}

/// Inversion count of a permutation given in one-line notation (values may be
/// any distinct integers).
pub fn inversions(perm: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

/// Decomposes a permutation into adjacent transpositions `s_i = (i, i+1)`,
/// 1-based, such that applying them left to right sorts it.
fn adjacent_decomposition(perm: &[usize]) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    // bubble sort; each swap records one s_i
    loop {
        let mut swapped = false;
        for i in 0..p.len() - 1 {
            if p[i] > p[i + 1] {
                p.swap(i, i + 1);
                word.push(i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    word.reverse();
    word
}

/// `P^q` acting on the given adjacent pair `(slot, slot+1)` of `m` slots.
fn pq_adjacent(n: usize, m: usize, slot: usize, qs: QSign) -> SparseOp<RatQ> {
    let pq = match qs {
        QSign::Plus => make_const(ConstMatrixKind::Pq, n).unwrap(),
        QSign::Minus => make_const(ConstMatrixKind::Pq, n).unwrap().map(|c| c.invert_q()),
    };
    pq.embed(&[slot, slot + 1], m).unwrap()
}

/// The operator `P^q_sigma` for a permutation of `m` slots.
///
/// `P^q` squares to the identity and satisfies the braid relation, so any
/// adjacent-transposition decomposition yields the same operator.
pub fn pq_sigma(n: usize, perm: &[usize], qs: QSign) -> SparseOp<RatQ> {
    let m = perm.len();
    let mut op = SparseOp::identity(n, m);
    for s in adjacent_decomposition(perm) {
        op = op.compose(&pq_adjacent(n, m, s, qs)).unwrap();
    }
    op
}

/// `A_m^q` (antisymmetrizer) or `H_m^q` (symmetrizer) on `m` slots.
pub fn fused_projector(kind: ProjectorKind, n: usize, m: usize, qs: QSign) -> SparseOp<RatQ> {
    assert!(m >= 1);
    let mut acc = SparseOp::zero(n, m);
    let mut factorial: i64 = 1;
    for k in 2..=m as i64 {
        factorial *= k;
    }
    for perm in (1..=m).permutations(m) {
        let sign = match kind {
            ProjectorKind::Sym => RatQ::one(),
            ProjectorKind::Antisym => {
                if inversions(&perm) % 2 == 0 {
                    RatQ::one()
                } else {
                    RatQ::from_int(-1)
                }
            }
        };
        acc = acc.add(&pq_sigma(n, &perm, qs).scale(&sign)).unwrap();
    }
    acc.scale(&RatQ::one().div(&RatQ::from_int(factorial)).unwrap())
}

/// Projector embedded on a subset of slots (1-based, contiguous or not) of a
/// larger tensor space.
pub fn fused_projector_on(
    kind: ProjectorKind,
    n: usize,
    slots: &[usize],
    m_total: usize,
    qs: QSign,
) -> SparseOp<RatQ> {
    fused_projector(kind, n, slots.len(), qs)
        .embed(slots, m_total)
        .unwrap()
}

/// The ordered product `R(u_1, ..., u_m) = prod_(i<j) R_ij(u_i, u_j)` in
/// lexicographic order on the pairs `(i, j)`.
pub fn fused_r<T: CoeffRing>(n: usize, args: &[T], qs: QSign) -> SparseOp<T> {
    let m = args.len();
    let mut acc = SparseOp::identity(n, m);
    for i in 1..=m {
        for j in i + 1..=m {
            let rij = r_uv(n, &args[i - 1], &args[j - 1], qs).embed(&[i, j], m).unwrap();
            acc = acc.compose(&rij).unwrap();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_minus_qinv;

    #[test]
    fn antisymmetrizer_m2_action() {
        // A_2 (e_1 (x) e_2) = 1/2 (e_1 (x) e_2 - q e_2 (x) e_1)
        let a2 = fused_projector(ProjectorKind::Antisym, 2, 2, QSign::Plus);
        let half = RatQ::one().div(&RatQ::from_int(2)).unwrap();
        assert_eq!(a2.get(&[1, 2], &[1, 2]), half);
        assert_eq!(a2.get(&[2, 1], &[1, 2]), half.mul(&RatQ::q_pow(1)).neg());
        assert_eq!(a2.get(&[1, 1], &[1, 1]), RatQ::zero());
    }

    #[test]
    fn projectors_idempotent_and_complementary() {
        for n in 2..=3 {
            let a2 = fused_projector(ProjectorKind::Antisym, n, 2, QSign::Plus);
            let h2 = fused_projector(ProjectorKind::Sym, n, 2, QSign::Plus);
            assert_eq!(a2.compose(&a2).unwrap(), a2);
            assert_eq!(h2.compose(&h2).unwrap(), h2);
            assert!(a2.compose(&h2).unwrap().is_zero());
            assert_eq!(a2.add(&h2).unwrap(), SparseOp::identity(n, 2));
        }
    }

    #[test]
    fn antisymmetrizer_m3_idempotent() {
        for n in 2..=3 {
            let a3 = fused_projector(ProjectorKind::Antisym, n, 3, QSign::Plus);
            assert_eq!(a3.compose(&a3).unwrap(), a3);
        }
    }

    #[test]
    fn fused_r_recovers_antisymmetrizer() {
        // R(1, q^-2, ..., q^(-2m+2)) = m! prod_(0<=i<j<=m-1) (q^-2i - q^-2j) A_m
        for (n, m) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3), (2, 4)] {
            let args: Vec<RatQ> = (0..m).map(|k| RatQ::q_pow(-2 * k as i64)).collect();
            let fused = fused_r(n, &args, QSign::Plus);
            let mut scalar = RatQ::one();
            let mut factorial = 1i64;
            for k in 2..=m as i64 {
                factorial *= k;
            }
            for i in 0..m {
                for j in i + 1..m {
                    scalar = scalar.mul(&RatQ::q_pow(-2 * i as i64).sub(&RatQ::q_pow(-2 * j as i64)));
                }
            }
            scalar = scalar.mul(&RatQ::from_int(factorial));
            let am = fused_projector(ProjectorKind::Antisym, n, m, QSign::Plus);
            assert_eq!(fused, am.scale(&scalar), "n={} m={}", n, m);
        }
    }

    #[test]
    fn pq_squares_to_identity_and_braids() {
        let n = 3;
        let p12 = pq_adjacent(n, 3, 1, QSign::Plus);
        let p23 = pq_adjacent(n, 3, 2, QSign::Plus);
        assert_eq!(p12.compose(&p12).unwrap(), SparseOp::identity(n, 3));
        let lhs = p12.compose(&p23).unwrap().compose(&p12).unwrap();
        let rhs = p23.compose(&p12).unwrap().compose(&p23).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pq_action_signs() {
        let pq = make_const(ConstMatrixKind::Pq, 2).unwrap();
        // P^q(e_1 (x) e_2) = q^-1 e_2 (x) e_1 + pieces? unit matrices: E_ij x E_ji with i<j
        // coefficient q^-1 sends e_j (x) e_i -> e_i (x) e_j for i<j
        assert_eq!(pq.get(&[1, 2], &[2, 1]), RatQ::q_pow(-1));
        assert_eq!(pq.get(&[2, 1], &[1, 2]), RatQ::q_pow(1));
        let _ = q_minus_qinv();
    }
}
