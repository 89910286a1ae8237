//! Constructors for the constant and spectral matrices of the calculus:
//! permutations, the constant R-matrix and its variants, diagonal charge
//! matrices, and the spectral R-matrices expanded as truncated series.

use super::{QSign, SparseOp, TensorError};
use crate::scalar::{CoeffRing, GradedCoeff, RatQ, Window};

/// Constant one- or two-slot matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstMatrixKind {
    /// Permutation `P`.
    P,
    /// q-permutation `P^q`.
    Pq,
    /// `Q = P^t1`, the one-dimensional projector source.
    Q,
    /// Diagonal `diag(q^(N-1), q^(N-3), ..., q^(1-N))`.
    D,
    /// Diagonal `diag((-q)^((N-1)/2), ..., (-q)^((1-N)/2))`; `w`-valued for even `N`.
    C,
    /// Skew pairing matrix of the symplectic case; requires even `N`.
    G,
    /// Constant R-matrix.
    R,
    /// Inverse of the constant R-matrix.
    Rinv,
    /// `P R^-1 P`.
    PRinvP,
}

/// Builds a constant matrix; two-slot kinds act on `(C^N)^(x2)`.
pub fn make_const(kind: ConstMatrixKind, n: usize) -> Result<SparseOp<RatQ>, TensorError> {
    use ConstMatrixKind::*;
    let mut op = match kind {
        D | C | G => SparseOp::zero(n, 1),
        _ => SparseOp::zero(n, 2),
    };
    match kind {
        P => {
            for i in 1..=n {
                for j in 1..=n {
                    op.set(&[i, j], &[j, i], RatQ::one());
                }
            }
        }
        Q => {
            for i in 1..=n {
                for j in 1..=n {
                    op.set(&[i, i], &[j, j], RatQ::one());
                }
            }
        }
        Pq => {
            for i in 1..=n {
                op.set(&[i, i], &[i, i], RatQ::one());
            }
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let c = if i > j { RatQ::q_pow(1) } else { RatQ::q_pow(-1) };
                    op.set(&[i, j], &[j, i], c);
                }
            }
        }
        D => {
            for i in 1..=n {
                op.set(&[i], &[i], RatQ::q_pow(n as i64 + 1 - 2 * i as i64));
            }
        }
        C => {
            for i in 1..=n {
                op.set(&[i], &[i], RatQ::neg_q_half_pow(n as i64 + 1 - 2 * i as i64));
            }
        }
        G => {
            if n % 2 != 0 {
                return Err(TensorError::OddDimension(n));
            }
            for k in 1..=(n / 2) {
                op.set(&[2 * k - 1], &[2 * k], RatQ::q_pow(1));
                op.set(&[2 * k], &[2 * k - 1], RatQ::from_int(-1));
            }
        }
        R | Rinv | PRinvP => {
            let (diag, off) = match kind {
                R => (RatQ::q_pow(1), crate::scalar::q_minus_qinv()),
                _ => (RatQ::q_pow(-1), crate::scalar::q_minus_qinv().neg()),
            };
            for i in 1..=n {
                op.set(&[i, i], &[i, i], diag.clone());
            }
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        op.set(&[i, j], &[i, j], RatQ::one());
                    }
                }
            }
            for i in 1..=n {
                for j in 1..=n {
                    let lower = match kind {
                        R => i < j,          // (q - q^-1) E_ij (x) E_ji, i < j
                        Rinv => i < j,       // -(q - q^-1) E_ij (x) E_ji, i < j
                        PRinvP => i > j,     // -(q - q^-1) E_ij (x) E_ji, i > j
                        _ => unreachable!(),
                    };
                    if lower {
                        op.set(&[i, j], &[j, i], off.clone());
                    }
                }
            }
        }
    }
    Ok(op)
}

/// `R(u, v)` with entries in any coefficient ring containing `u` and `v`.
///
/// Componentwise this is `(u - v)` on mixed diagonal pairs, `(q^-1 u - q v)`
/// on equal pairs, `(q^-1 - q) u` below and `(q^-1 - q) v` above the diagonal.
pub fn r_uv<T: CoeffRing>(n: usize, u: &T, v: &T, qs: QSign) -> SparseOp<T> {
    let qdiag_u = T::ring_from_ratq(&qs.q_pow(-1));
    let qdiag_v = T::ring_from_ratq(&qs.q_pow(1));
    let off = T::ring_from_ratq(&qs.q_pow(-1).sub(&qs.q_pow(1)));
    let mut op = SparseOp::zero(n, 2);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                op.set(&[i, i], &[i, i], qdiag_u.ring_mul(u).ring_sub(&qdiag_v.ring_mul(v)));
            } else {
                op.set(&[i, j], &[i, j], u.ring_sub(v));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i > j {
                op.set(&[i, j], &[j, i], off.ring_mul(u));
            } else if i < j {
                op.set(&[i, j], &[j, i], off.ring_mul(v));
            }
        }
    }
    op
}

/// `R(u, v)` partially transposed in the first factor.
pub fn rt_uv<T: CoeffRing>(n: usize, u: &T, v: &T, qs: QSign) -> SparseOp<T> {
    r_uv(n, u, v, qs).partial_transpose(1).expect("slot 1 exists")
}

/// Spectral matrices instantiated at a single-variable argument `x = q^c u^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralKind {
    /// `R(x, 1)`, denominators cleared.
    Ruv,
    /// `R(x, 1)^t1`.
    RtUv,
    /// `R(x,1) / (x - 1)`.
    RbarX,
    /// `R(x,1) / (q^-1 x - q)`.
    RtildeX,
    /// `R(x, 1)` with `q` replaced by `q^-1`.
    Rprime,
}

/// Builds a spectral matrix as a truncated graded series at `x = q^c u^d`.
///
/// `qs` applies the `q -> q^-1` mirror to the whole construction (so
/// `RbarX` with `QSign::Minus` is the primed bar matrix).
pub fn make_spectral(
    kind: SpectralKind,
    n: usize,
    arg: (i64, i64),
    window: Window,
    qs: QSign,
) -> Result<SparseOp<GradedCoeff>, TensorError> {
    let (c, d) = arg;
    let x = GradedCoeff::monomial(RatQ::q_pow(c), d, window);
    let one = GradedCoeff::one(window);
    let (kind, qs) = match kind {
        SpectralKind::Rprime => (
            SpectralKind::Ruv,
            match qs {
                QSign::Plus => QSign::Minus,
                QSign::Minus => QSign::Plus,
            },
        ),
        k => (k, qs),
    };
    let base = r_uv(n, &x, &one, qs);
    let prefactor = match kind {
        SpectralKind::Ruv | SpectralKind::Rprime => None,
        SpectralKind::RtUv => None,
        SpectralKind::RbarX => Some(x.sub(&one)),
        SpectralKind::RtildeX => {
            let qinv = GradedCoeff::scalar(qs.q_pow(-1));
            let q = GradedCoeff::scalar(qs.q_pow(1));
            Some(qinv.mul(&x).sub(&q))
        }
    };
    let scaled = match prefactor {
        None => base,
        Some(p) => {
            let pinv = p.invert().map_err(|e| TensorError::NotExpandable(e.to_string()))?;
            base.scale(&pinv)
        }
    };
    if kind == SpectralKind::RtUv {
        scaled.partial_transpose(1)
    } else {
        Ok(scaled)
    }
}

/// Coefficients `f_0 .. f_count` of the normalizing series `f(x)`, as a
/// series in nonnegative powers of the argument.
///
/// `f` is pinned by `f(x q^(2N)) (1-x)(1-x q^(2N)) = f(x) (1-x q^2)(1-x q^(2N-2))`,
/// which determines each `f_k` from the earlier ones by a linear solve.
pub fn f_coeffs(n: usize, count: i64) -> GradedCoeff {
    assert!(count >= 0);
    let nn = 2 * n as i64;
    // g = (1 - x q^2)(1 - x q^(2N-2)), h = (1 - x)(1 - x q^(2N))
    let g = [
        RatQ::one(),
        RatQ::q_pow(2).add(&RatQ::q_pow(nn - 2)).neg(),
        RatQ::q_pow(nn),
    ];
    let h = [
        RatQ::one(),
        RatQ::one().add(&RatQ::q_pow(nn)).neg(),
        RatQ::q_pow(nn),
    ];
    let window = Window::upper(count);
    let mut f: Vec<RatQ> = vec![RatQ::one()];
    for k in 1..=count {
        // f_k (q^(2Nk) - 1) = sum_(j<k) f_j (g_(k-j) - q^(2Nj) h_(k-j))
        let mut rhs = RatQ::zero();
        for j in 0..k {
            let idx = (k - j) as usize;
            if idx > 2 {
                continue;
            }
            let term = g[idx].sub(&RatQ::q_pow(nn * j).mul(&h[idx]));
            rhs = rhs.add(&f[j as usize].mul(&term));
        }
        let lead = RatQ::q_pow(nn * k).sub(&RatQ::one());
        f.push(rhs.div(&lead).expect("q^(2Nk) - 1 is nonzero"));
    }
    let terms: Vec<(RatQ, i64)> = f.into_iter().enumerate().map(|(k, c)| (c, k as i64)).collect();
    GradedCoeff::from_terms(&terms, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_minus_qinv;

    #[test]
    fn r_matrix_entries_n2() {
        let r = make_const(ConstMatrixKind::R, 2).unwrap();
        assert_eq!(r.get(&[1, 1], &[1, 1]), RatQ::q_pow(1));
        assert_eq!(r.get(&[2, 2], &[2, 2]), RatQ::q_pow(1));
        assert_eq!(r.get(&[1, 2], &[1, 2]), RatQ::one());
        // (q - q^-1) E_12 (x) E_21 acts as e_1(x)e_2 <- e_2(x)e_1
        assert_eq!(r.get(&[1, 2], &[2, 1]), q_minus_qinv());
        assert_eq!(r.get(&[2, 1], &[1, 2]), RatQ::zero());
    }

    #[test]
    fn r_inverse_is_inverse() {
        for n in 2..=3 {
            let r = make_const(ConstMatrixKind::R, n).unwrap();
            let rinv = make_const(ConstMatrixKind::Rinv, n).unwrap();
            assert_eq!(r.compose(&rinv).unwrap(), SparseOp::identity(n, 2));
        }
    }

    #[test]
    fn p_rinv_p_matches_conjugation() {
        let n = 3;
        let p = make_const(ConstMatrixKind::P, n).unwrap();
        let rinv = make_const(ConstMatrixKind::Rinv, n).unwrap();
        let conj = p.compose(&rinv).unwrap().compose(&p).unwrap();
        assert_eq!(conj, make_const(ConstMatrixKind::PRinvP, n).unwrap());
    }

    #[test]
    fn d_matrix_n3() {
        let d = make_const(ConstMatrixKind::D, 3).unwrap();
        assert_eq!(d.get(&[1], &[1]), RatQ::q_pow(2));
        assert_eq!(d.get(&[2], &[2]), RatQ::one());
        assert_eq!(d.get(&[3], &[3]), RatQ::q_pow(-2));
    }

    #[test]
    fn g_matrix_n2() {
        let g = make_const(ConstMatrixKind::G, 2).unwrap();
        assert_eq!(g.get(&[1], &[2]), RatQ::q_pow(1));
        assert_eq!(g.get(&[2], &[1]), RatQ::from_int(-1));
        assert!(make_const(ConstMatrixKind::G, 3).is_err());
    }

    #[test]
    fn partial_transpose_of_p_is_q() {
        let n = 3;
        let p = make_const(ConstMatrixKind::P, n).unwrap();
        let q = make_const(ConstMatrixKind::Q, n).unwrap();
        assert_eq!(p.partial_transpose(1).unwrap(), q);
        assert_eq!(p.partial_transpose(2).unwrap(), q);
    }

    #[test]
    fn trace_of_identity() {
        let id: SparseOp<RatQ> = SparseOp::identity(3, 2);
        assert_eq!(id.partial_trace(&[1, 2]).unwrap().get(&[], &[]), RatQ::from_int(9));
    }

    #[test]
    fn constant_ybe() {
        for n in 2..=4 {
            let r = make_const(ConstMatrixKind::R, n).unwrap();
            let r12 = r.embed(&[1, 2], 3).unwrap();
            let r13 = r.embed(&[1, 3], 3).unwrap();
            let r23 = r.embed(&[2, 3], 3).unwrap();
            let lhs = r12.compose(&r13).unwrap().compose(&r23).unwrap();
            let rhs = r23.compose(&r13).unwrap().compose(&r12).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn spectral_diag_entry() {
        // (i,i),(i,i) entry of R(x, 1) is q^-1 x - q
        let w = Window::new(-2, 2);
        let r = make_spectral(SpectralKind::Ruv, 2, (0, 1), w, QSign::Plus).unwrap();
        let expected = GradedCoeff::from_terms(
            &[(RatQ::q_pow(-1), 1), (RatQ::q_pow(1).neg(), 0)],
            w,
        );
        assert_eq!(r.get(&[1, 1], &[1, 1]), expected);
    }

    #[test]
    fn rbar_prefactor_geometric() {
        // at x = q^2 u^-2 the 1/(x-1) prefactor is -(1 + q^2 u^-2 + q^4 u^-4 + ...)
        let w = Window::new(-4, 0);
        let rbar = make_spectral(SpectralKind::RbarX, 2, (2, -2), w, QSign::Plus).unwrap();
        // mixed diagonal entry of R(x,1) is x - 1, so in Rbar it is exactly 1
        assert_eq!(rbar.get(&[1, 2], &[1, 2]), GradedCoeff::one(w));
        // equal diagonal entry is (q^-1 x - q)/(x - 1)
        let x = GradedCoeff::monomial(RatQ::q_pow(2), -2, w);
        let num = x.scale(&RatQ::q_pow(-1)).sub(&GradedCoeff::monomial(RatQ::q_pow(1), 0, w));
        let expected = num.mul(&x.sub(&GradedCoeff::one(w)).invert().unwrap());
        assert_eq!(rbar.get(&[1, 1], &[1, 1]), expected);
    }

    #[test]
    fn spectral_unitarity() {
        // R(x,1) R'(x,1) = (q x - q^-1)(q^-1 x - q) id
        let w = Window::new(-3, 3);
        for n in 2..=3 {
            let r = make_spectral(SpectralKind::Ruv, n, (0, 1), w, QSign::Plus).unwrap();
            let rp = make_spectral(SpectralKind::Rprime, n, (0, 1), w, QSign::Plus).unwrap();
            let x = GradedCoeff::monomial(RatQ::one(), 1, w);
            let scalar = x
                .scale(&RatQ::q_pow(1))
                .sub(&GradedCoeff::monomial(RatQ::q_pow(-1), 0, w))
                .mul(&x.scale(&RatQ::q_pow(-1)).sub(&GradedCoeff::monomial(RatQ::q_pow(1), 0, w)));
            let expected = SparseOp::identity(n, 2).scale(&scalar);
            assert_eq!(r.compose(&rp).unwrap(), expected);
        }
    }

    #[test]
    fn rtilde_inverts_rtilde_prime() {
        let w = Window::new(-4, 0);
        let n = 2;
        let rt = make_spectral(SpectralKind::RtildeX, n, (2, -2), w, QSign::Plus).unwrap();
        let rtp = make_spectral(SpectralKind::RtildeX, n, (2, -2), w, QSign::Minus).unwrap();
        let id = SparseOp::identity(n, 2).scale(&GradedCoeff::one(w));
        assert_eq!(rt.compose(&rtp).unwrap(), id);
    }

    #[test]
    fn non_expandable_argument_rejected() {
        let w = Window::new(-2, 0);
        assert!(make_spectral(SpectralKind::RbarX, 2, (0, 0), w, QSign::Plus).is_err());
    }

    #[test]
    fn f_series_first_coefficients() {
        // f_1 = (1 - q^2)(1 - q^(2N-2)) / (q^(2N) - 1)
        for n in 2..=3 {
            let f = f_coeffs(n, 2);
            assert_eq!(f.coeff(0), RatQ::one());
            let nn = 2 * n as i64;
            let expected = RatQ::one()
                .sub(&RatQ::q_pow(2))
                .mul(&RatQ::one().sub(&RatQ::q_pow(nn - 2)))
                .div(&RatQ::q_pow(nn).sub(&RatQ::one()))
                .unwrap();
            assert_eq!(f.coeff(1), expected);
        }
    }

    #[test]
    fn f_series_satisfies_functional_equation() {
        let n = 2;
        let count = 4;
        let w = Window::upper(count);
        let f = f_coeffs(n, count);
        let nn = 2 * n as i64;
        // f(x q^2N)(1-x)(1-x q^2N) - f(x)(1-x q^2)(1-x q^(2N-2)) = 0 to order count
        let fx_shift = f.shift_arg(nn);
        let one = GradedCoeff::one(w);
        let xm = |c: i64| GradedCoeff::monomial(RatQ::q_pow(c), 1, w);
        let lhs = fx_shift.mul(&one.sub(&xm(0))).mul(&one.sub(&xm(nn)));
        let rhs = f.mul(&one.sub(&xm(2))).mul(&one.sub(&xm(nn - 2)));
        let diff = lhs.sub(&rhs);
        // the window product loses the top orders; check retained ones
        for d in 0..=count - 2 {
            assert!(diff.coeff(d).is_zero(), "x^{} coefficient: {}", d, diff.coeff(d));
        }
    }
}
