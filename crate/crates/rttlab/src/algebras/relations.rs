//! Defining matrix relations expanded bivariately, both to extract relation
//! rows for the rewriting engine and to verify that candidate matrices
//! satisfy a presentation's relations.

use super::{pair_index, AlgKind, Presentation};
use crate::ncalg::{BivarNC, GenFamily, GenId, NCElem, NCPoly};
use crate::scalar::{CoeffRing, RatQ, Window};
use crate::tensor::{make_const, r_uv, rt_uv, ConstMatrixKind, QSign, SparseOp};

/// One-slot matrix with bivariate noncommutative entries.
pub fn matrix_from_entries(
    n: usize,
    entry: impl Fn(usize, usize) -> BivarNC,
) -> SparseOp<BivarNC> {
    let mut op = SparseOp::zero(n, 1);
    for i in 1..=n {
        for j in 1..=n {
            op.set(&[i], &[j], entry(i, j));
        }
    }
    op
}

/// `R(u,v) A_1(u) R^t(1, uv) B_2(v) - B_2(v) R^t(1, uv) A_1(u) R(u,v)`.
///
/// This is the reflection relation with denominators cleared; it vanishes
/// entrywise exactly when `A = B` satisfies the twisted defining relations.
pub fn reflection_residual(
    n: usize,
    a_entry: impl Fn(usize, usize) -> BivarNC,
    b_entry: impl Fn(usize, usize) -> BivarNC,
    uwin: Window,
    vwin: Window,
    qs: QSign,
) -> SparseOp<BivarNC> {
    let u = BivarNC::u_var(uwin, vwin);
    let v = BivarNC::v_var(uwin, vwin);
    let one = BivarNC::ring_one();
    let uv = u.mul(&v);
    let r = r_uv::<BivarNC>(n, &u, &v, qs);
    let rt = rt_uv::<BivarNC>(n, &one, &uv, qs);
    let s1 = matrix_from_entries(n, a_entry).embed(&[1], 2).unwrap();
    let s2 = matrix_from_entries(n, b_entry).embed(&[2], 2).unwrap();
    let lhs = r
        .compose(&s1)
        .unwrap()
        .compose(&rt)
        .unwrap()
        .compose(&s2)
        .unwrap();
    let rhs = s2
        .compose(&rt)
        .unwrap()
        .compose(&s1)
        .unwrap()
        .compose(&r)
        .unwrap();
    lhs.sub(&rhs).unwrap()
}

/// `R(u,v) A_1(u) B_2(v) - B_2(v) A_1(u) R(u,v)`, the RTT relation with
/// denominators cleared.
pub fn rtt_residual(
    n: usize,
    a_entry: impl Fn(usize, usize) -> BivarNC,
    b_entry: impl Fn(usize, usize) -> BivarNC,
    uwin: Window,
    vwin: Window,
    qs: QSign,
) -> SparseOp<BivarNC> {
    let u = BivarNC::u_var(uwin, vwin);
    let v = BivarNC::v_var(uwin, vwin);
    let r = r_uv::<BivarNC>(n, &u, &v, qs);
    let l1 = matrix_from_entries(n, a_entry).embed(&[1], 2).unwrap();
    let l2 = matrix_from_entries(n, b_entry).embed(&[2], 2).unwrap();
    let lhs = r.compose(&l1).unwrap().compose(&l2).unwrap();
    let rhs = l2.compose(&l1).unwrap().compose(&r).unwrap();
    lhs.sub(&rhs).unwrap()
}

/// Constant-R reflection residual `R S_1 R^t S_2 - S_2 R^t S_1 R` for the
/// finite twisted presentations.
pub fn const_reflection_residual(
    n: usize,
    s_entry: impl Fn(usize, usize) -> BivarNC,
) -> SparseOp<BivarNC> {
    let r = make_const(ConstMatrixKind::R, n)
        .unwrap()
        .map(|c| BivarNC::ring_from_ratq(c));
    let rt = r.partial_transpose(1).unwrap();
    let s1 = matrix_from_entries(n, &s_entry).embed(&[1], 2).unwrap();
    let s2 = matrix_from_entries(n, &s_entry).embed(&[2], 2).unwrap();
    let lhs = r
        .compose(&s1)
        .unwrap()
        .compose(&rt)
        .unwrap()
        .compose(&s2)
        .unwrap();
    let rhs = s2
        .compose(&rt)
        .unwrap()
        .compose(&s1)
        .unwrap()
        .compose(&r)
        .unwrap();
    lhs.sub(&rhs).unwrap()
}

/// Constant-R RTT residual for the finite quantum enveloping algebra.
pub fn const_rtt_residual(
    n: usize,
    a_entry: impl Fn(usize, usize) -> BivarNC,
    b_entry: impl Fn(usize, usize) -> BivarNC,
) -> SparseOp<BivarNC> {
    let r = make_const(ConstMatrixKind::R, n)
        .unwrap()
        .map(|c| BivarNC::ring_from_ratq(c));
    let l1 = matrix_from_entries(n, a_entry).embed(&[1], 2).unwrap();
    let l2 = matrix_from_entries(n, b_entry).embed(&[2], 2).unwrap();
    let lhs = r.compose(&l1).unwrap().compose(&l2).unwrap();
    let rhs = l2.compose(&l1).unwrap().compose(&r).unwrap();
    lhs.sub(&rhs).unwrap()
}

fn bivar_series(pres: &Presentation, family: GenFamily, as_v: bool, uwin: Window, vwin: Window) -> Vec<Vec<BivarNC>> {
    let n = pres.n;
    let window = if family == GenFamily::LPlus {
        Window::new(0, pres.gen_cap as i64)
    } else {
        Window::new(-(pres.gen_cap as i64), 0)
    };
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let p = pres.series_entry(family, i, j, window);
                    BivarNC::from_poly(&p, as_v, uwin, vwin)
                })
                .collect()
        })
        .collect()
}

fn collect_rows(
    residual: &SparseOp<BivarNC>,
    ubox: (i64, i64),
    vbox: (i64, i64),
    rows: &mut Vec<NCElem>,
) {
    for (_, entry) in residual.entries() {
        for (&(du, dv), e) in entry.terms() {
            if du >= ubox.0 && du <= ubox.1 && dv >= vbox.0 && dv <= vbox.1 && !e.is_zero() {
                rows.push(e.clone());
            }
        }
    }
}

/// Extracts the complete list of defining-relation rows for a presentation,
/// restricted to bidegrees where the materialized generator window cannot
/// drop a contribution.
pub fn relation_rows(pres: &Presentation) -> Vec<NCElem> {
    let cap = pres.gen_cap as i64;
    let uwin = Window::new(-cap - 3, cap + 3);
    let vwin = uwin;
    let mut rows: Vec<NCElem> = Vec::new();
    match pres.kind {
        AlgKind::UqGl => {
            let lp = bivar_series(pres, GenFamily::LPlus, false, uwin, vwin);
            let lp2 = bivar_series(pres, GenFamily::LPlus, true, uwin, vwin);
            let lm = bivar_series(pres, GenFamily::LMinus, false, uwin, vwin);
            let lm2 = bivar_series(pres, GenFamily::LMinus, true, uwin, vwin);
            for (a, b) in [(&lp, &lp2), (&lm, &lm2), (&lp, &lm2)] {
                let res = const_rtt_residual(
                    pres.n,
                    |i, j| a[i - 1][j - 1].clone(),
                    |i, j| b[i - 1][j - 1].clone(),
                );
                collect_rows(&res, (0, 0), (0, 0), &mut rows);
            }
            push_inverse_rows(pres, &mut rows);
        }
        AlgKind::UqAffine => {
            let lp = bivar_series(pres, GenFamily::LPlus, false, uwin, vwin);
            let lp2 = bivar_series(pres, GenFamily::LPlus, true, uwin, vwin);
            let lm = bivar_series(pres, GenFamily::LMinus, false, uwin, vwin);
            let lm2 = bivar_series(pres, GenFamily::LMinus, true, uwin, vwin);
            // ++ : valid u-exponents need levels <= cap on both sides
            let res = rtt_residual(
                pres.n,
                |i, j| lp[i - 1][j - 1].clone(),
                |i, j| lp2[i - 1][j - 1].clone(),
                uwin,
                vwin,
                QSign::Plus,
            );
            collect_rows(&res, (0, cap), (0, cap), &mut rows);
            // --
            let res = rtt_residual(
                pres.n,
                |i, j| lm[i - 1][j - 1].clone(),
                |i, j| lm2[i - 1][j - 1].clone(),
                uwin,
                vwin,
                QSign::Plus,
            );
            collect_rows(&res, (1 - cap, 1), (1 - cap, 1), &mut rows);
            // +- at level c = 0: same R on both sides
            let res = rtt_residual(
                pres.n,
                |i, j| lp[i - 1][j - 1].clone(),
                |i, j| lm2[i - 1][j - 1].clone(),
                uwin,
                vwin,
                QSign::Plus,
            );
            collect_rows(&res, (0, cap), (1 - cap, 1), &mut rows);
            push_inverse_rows(pres, &mut rows);
        }
        AlgKind::UqTwO | AlgKind::UqTwSp => {
            let s = bivar_series(pres, GenFamily::S, false, uwin, vwin);
            let res = const_reflection_residual(pres.n, |i, j| {
                // the same constant matrix acts in both slots; entries have
                // no spectral degree, so u/v placement is immaterial
                s[i - 1][j - 1].clone()
            });
            collect_rows(&res, (0, 0), (0, 0), &mut rows);
            if pres.kind == AlgKind::UqTwSp {
                push_symplectic_rows(pres, &mut rows);
            }
        }
        AlgKind::YqTwO | AlgKind::YqTwSp => {
            let su = bivar_series(pres, GenFamily::S, false, uwin, vwin);
            let sv = bivar_series(pres, GenFamily::S, true, uwin, vwin);
            let res = reflection_residual(
                pres.n,
                |i, j| su[i - 1][j - 1].clone(),
                |i, j| sv[i - 1][j - 1].clone(),
                uwin,
                vwin,
                QSign::Plus,
            );
            collect_rows(&res, (2 - cap, 2), (2 - cap, 2), &mut rows);
            if pres.kind == AlgKind::YqTwSp {
                push_symplectic_rows(pres, &mut rows);
            }
        }
    }
    rows
}

fn push_inverse_rows(pres: &Presentation, rows: &mut Vec<NCElem>) {
    for i in 1..=pres.n {
        let lm = pres.table.rank_or_panic(&GenId::new(GenFamily::LMinus, 0, i, i));
        let lp = pres.table.rank_or_panic(&GenId::new(GenFamily::LPlus, 0, i, i));
        let mut a = NCElem::monomial(vec![lm, lp], RatQ::one());
        a.add_term(Vec::new(), RatQ::from_int(-1));
        rows.push(a);
        let mut b = NCElem::monomial(vec![lp, lm], RatQ::one());
        b.add_term(Vec::new(), RatQ::from_int(-1));
        rows.push(b);
    }
}

/// Symplectic level-0 rows: two-sided inverses for the antidiagonal
/// generators and the quadratic constraint
/// `s_i'i' s_ii - q^2 s_i'i s_ii' = q^3`.
fn push_symplectic_rows(pres: &Presentation, rows: &mut Vec<NCElem>) {
    for i in (1..=pres.n).step_by(2) {
        let ip = pair_index(i);
        let s = pres.table.rank_or_panic(&GenId::new(GenFamily::S, 0, i, ip));
        let sinv = pres.table.rank_or_panic(&GenId::new(GenFamily::SInv, 0, i, ip));
        let mut a = NCElem::monomial(vec![s, sinv], RatQ::one());
        a.add_term(Vec::new(), RatQ::from_int(-1));
        rows.push(a);
        let mut b = NCElem::monomial(vec![sinv, s], RatQ::one());
        b.add_term(Vec::new(), RatQ::from_int(-1));
        rows.push(b);
        let s_pp = pres.table.rank_or_panic(&GenId::new(GenFamily::S, 0, ip, ip));
        let s_ii = pres.table.rank_or_panic(&GenId::new(GenFamily::S, 0, i, i));
        let s_pi = pres.table.rank_or_panic(&GenId::new(GenFamily::S, 0, ip, i));
        let mut c = NCElem::monomial(vec![s_pp, s_ii], RatQ::one());
        c.add_term(vec![s_pi, s], RatQ::q_pow(2).neg());
        c.add_term(Vec::new(), RatQ::q_pow(3).neg());
        rows.push(c);
    }
}

/// Lifts a presentation's generator series into bivariate entries for use in
/// residual checks: `as_v` selects the second spectral variable.
pub fn series_entry_bivar(
    pres: &Presentation,
    family: GenFamily,
    i: usize,
    j: usize,
    as_v: bool,
    uwin: Window,
    vwin: Window,
) -> BivarNC {
    let window = if family == GenFamily::LPlus {
        Window::new(0, pres.gen_cap as i64)
    } else {
        Window::new(-(pres.gen_cap as i64), 0)
    };
    BivarNC::from_poly(&pres.series_entry(family, i, j, window), as_v, uwin, vwin)
}

/// Lifts an explicit series to a bivariate entry.
pub fn poly_bivar(p: &NCPoly, as_v: bool, uwin: Window, vwin: Window) -> BivarNC {
    BivarNC::from_poly(p, as_v, uwin, vwin)
}
