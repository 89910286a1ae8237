//! Structure homomorphisms: the embeddings of the twisted algebras into the
//! (affine) quantum enveloping algebra, and the evaluation homomorphisms.

use super::matrices::SeriesMatrix;
use super::{pair_index, AlgError, AlgKind, Presentation};
use crate::ncalg::{GenFamily, GenId, NCElem, NCPoly};
use crate::scalar::{RatQ, Window};
use crate::tensor::{make_const, ConstMatrixKind};
use std::collections::HashMap;
use std::sync::Arc;

/// A generator-wise algebra homomorphism between two presentations.
pub struct GenHom {
    map: HashMap<u32, NCElem>,
}

impl GenHom {
    pub fn image_of(&self, rank: u32) -> Option<&NCElem> {
        self.map.get(&rank)
    }

    pub fn apply_elem(&self, e: &NCElem) -> NCElem {
        let mut out = NCElem::zero();
        for (word, coeff) in e.terms() {
            let mut acc = NCElem::scalar(coeff.clone());
            for &r in word {
                match self.map.get(&r) {
                    Some(img) => acc = acc.mul(img),
                    None => {
                        acc = NCElem::zero();
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn apply(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(p.window());
        for (&d, e) in p.degrees() {
            out.add_elem(d, self.apply_elem(e));
        }
        out
    }
}

/// Embedding of a twisted q-Yangian into the quantum affine algebra:
/// `S(u) -> L^-(u) G L^+(u^-1)^t` (G is the identity in the orthogonal
/// case), mode by mode.
pub struct TwistedEmbedding {
    hom: GenHom,
    pub affine: Arc<Presentation>,
    symplectic: bool,
}

impl TwistedEmbedding {
    pub fn new(twisted: &Presentation, affine: &Arc<Presentation>) -> Result<TwistedEmbedding, AlgError> {
        assert_eq!(twisted.n, affine.n);
        let n = twisted.n;
        let g: Vec<Vec<RatQ>> = if twisted.kind.is_symplectic() {
            let gm = make_const(ConstMatrixKind::G, n).map_err(|_| AlgError::OddSymplectic(n))?;
            (1..=n)
                .map(|k| (1..=n).map(|l| gm.get(&[k], &[l])).collect())
                .collect()
        } else {
            (1..=n)
                .map(|k| {
                    (1..=n)
                        .map(|l| if k == l { RatQ::one() } else { RatQ::zero() })
                        .collect()
                })
                .collect()
        };
        let mut map = HashMap::new();
        for rank in twisted.table.ranks() {
            let id = twisted.table.id(rank);
            match id.family {
                GenFamily::S => {
                    let d = id.level as i64;
                    let (i, j) = (id.row as usize, id.col as usize);
                    // coefficient of u^-d in sum_kl l^-_ik(u) G_kl l^+_jl(u^-1)
                    let mut img = NCElem::zero();
                    for r in 0..=d {
                        let s = d - r;
                        for k in 1..=n {
                            for l in 1..=n {
                                if g[k - 1][l - 1].is_zero() {
                                    continue;
                                }
                                let a = affine_mode(affine, GenFamily::LMinus, r as u16, i, k);
                                let b = affine_mode(affine, GenFamily::LPlus, s as u16, j, l);
                                img = img.add(&a.mul(&b).scale(&g[k - 1][l - 1]));
                            }
                        }
                    }
                    map.insert(rank, img);
                }
                GenFamily::SInv => {
                    // (q l^-(0)_ii l^+(0)_i'i')^-1 = q^-1 l^-(0)_i'i' l^+(0)_ii
                    let i = id.row as usize;
                    let ip = pair_index(i);
                    let a = affine.table.rank_or_panic(&GenId::new(GenFamily::LMinus, 0, ip, ip));
                    let b = affine.table.rank_or_panic(&GenId::new(GenFamily::LPlus, 0, i, i));
                    map.insert(rank, NCElem::monomial(vec![a, b], RatQ::q_pow(-1)));
                }
                _ => {}
            }
        }
        Ok(TwistedEmbedding {
            hom: GenHom { map },
            affine: affine.clone(),
            symplectic: twisted.kind.is_symplectic(),
        })
    }

    pub fn apply_elem(&self, e: &NCElem) -> NCElem {
        self.hom.apply_elem(e)
    }

    pub fn apply(&self, p: &NCPoly) -> NCPoly {
        self.hom.apply(p)
    }

    /// The image matrix `S(u) = L^-(u) G L^+(u^-1)^t` as a shift family over
    /// the affine presentation.
    pub fn image_matrix(&self, window: Window) -> SeriesMatrix {
        embedded_s_matrix(&self.affine, self.symplectic, window)
    }
}

/// `S(u) = L^-(u) G L^+(u^-1)^t` over the affine presentation.
pub fn embedded_s_matrix(
    affine: &Arc<Presentation>,
    symplectic: bool,
    window: Window,
) -> SeriesMatrix {
    let lminus = SeriesMatrix::generators(affine, GenFamily::LMinus, window);
    let lplus_inv = SeriesMatrix::generators_inv_arg(affine, GenFamily::LPlus, window);
    if symplectic {
        let g = make_const(ConstMatrixKind::G, affine.n).unwrap();
        let gmat = SeriesMatrix::constant(&g, window);
        lminus.product(&gmat).product(&lplus_inv.transpose())
    } else {
        lminus.product(&lplus_inv.transpose())
    }
}

/// `Sbar(u) = L^+(u) G L^-(u^-1)^t` over the affine presentation.
pub fn embedded_sbar_matrix(
    affine: &Arc<Presentation>,
    symplectic: bool,
    window: Window,
) -> SeriesMatrix {
    let lplus = SeriesMatrix::generators(affine, GenFamily::LPlus, window);
    let lminus_inv = SeriesMatrix::generators_inv_arg(affine, GenFamily::LMinus, window);
    if symplectic {
        let g = make_const(ConstMatrixKind::G, affine.n).unwrap();
        let gmat = SeriesMatrix::constant(&g, window);
        lplus.product(&gmat).product(&lminus_inv.transpose())
    } else {
        lplus.product(&lminus_inv.transpose())
    }
}

fn affine_mode(pres: &Presentation, family: GenFamily, level: u16, i: usize, j: usize) -> NCElem {
    if level == 0 {
        pres.level0_entry(family, i, j)
    } else {
        match pres.rank(family, level, i, j) {
            Some(r) => NCElem::gen(r),
            None => NCElem::zero(),
        }
    }
}

/// Evaluation homomorphism from the quantum affine algebra to the finite
/// quantum enveloping algebra: `L^+(u) -> L^+ - u L^-`, `L^-(u) -> L^- - u^-1 L^+`.
pub fn evaluation_to_finite(affine: &Presentation, finite: &Presentation) -> GenHom {
    assert_eq!(affine.kind, AlgKind::UqAffine);
    assert_eq!(finite.kind, AlgKind::UqGl);
    let mut map = HashMap::new();
    for rank in affine.table.ranks() {
        let id = affine.table.id(rank);
        let (i, j) = (id.row as usize, id.col as usize);
        let img = match (id.family, id.level) {
            (f, 0) => finite.level0_entry(f, i, j),
            (GenFamily::LPlus, 1) => finite.level0_entry(GenFamily::LMinus, i, j).neg(),
            (GenFamily::LMinus, 1) => finite.level0_entry(GenFamily::LPlus, i, j).neg(),
            _ => NCElem::zero(),
        };
        map.insert(rank, img);
    }
    GenHom { map }
}

/// The finite matrix `Sbar` expressed in the twisted generators.
///
/// Orthogonal: `Sbar = 1 - q + q S^t`. Symplectic: the entrywise relations
/// forced by `Sbar = L^+ G (L^-)^t` inside the enveloping algebra.
pub fn finite_sbar_entry(pres: &Presentation, i: usize, j: usize) -> NCElem {
    let n = pres.n;
    assert!(i <= n && j <= n);
    match pres.kind {
        AlgKind::UqTwO => {
            let mut e = pres.level0_entry(GenFamily::S, j, i).scale(&RatQ::q_pow(1));
            if i == j {
                e = e.add(&NCElem::scalar(RatQ::one().sub(&RatQ::q_pow(1))));
            }
            e
        }
        AlgKind::UqTwSp => {
            let s = |a: usize, b: usize| pres.level0_entry(GenFamily::S, a, b);
            if i == j {
                s(i, i).scale(&RatQ::q_pow(-2).neg())
            } else if j == pair_index(i) {
                if i % 2 == 0 {
                    // position (i', i) for odd base index
                    s(j, i).scale(&RatQ::q_pow(-1).neg())
                } else {
                    // position (i, i')
                    s(j, i)
                        .scale(&RatQ::q_pow(-1).neg())
                        .add(&s(i, j).scale(&RatQ::one().sub(&RatQ::q_pow(-2))))
                }
            } else if i < j {
                s(j, i).scale(&RatQ::q_pow(-1).neg())
            } else {
                NCElem::zero()
            }
        }
        _ => panic!("finite_sbar_entry needs a finite twisted presentation"),
    }
}

/// Evaluation homomorphism from a twisted q-Yangian onto its finite twisted
/// algebra: `S(u) -> S + q^(-1) u^-1 Sbar` (orthogonal) or
/// `S(u) -> S + q u^-1 Sbar` (symplectic).
pub fn twisted_evaluation(ytw: &Presentation, utw: &Presentation) -> GenHom {
    let (expect_y, expect_u, c) = match ytw.kind {
        AlgKind::YqTwO => (AlgKind::YqTwO, AlgKind::UqTwO, RatQ::q_pow(-1)),
        AlgKind::YqTwSp => (AlgKind::YqTwSp, AlgKind::UqTwSp, RatQ::q_pow(1)),
        _ => panic!("twisted_evaluation needs a twisted q-Yangian"),
    };
    assert_eq!(ytw.kind, expect_y);
    assert_eq!(utw.kind, expect_u);
    let mut map = HashMap::new();
    for rank in ytw.table.ranks() {
        let id = ytw.table.id(rank);
        let (i, j) = (id.row as usize, id.col as usize);
        let img = match (id.family, id.level) {
            (GenFamily::S, 0) => utw.level0_entry(GenFamily::S, i, j),
            (GenFamily::SInv, 0) => NCElem::gen(
                utw.table.rank_or_panic(&GenId::new(GenFamily::SInv, 0, i, j)),
            ),
            (GenFamily::S, 1) => finite_sbar_entry(utw, i, j).scale(&c),
            _ => NCElem::zero(),
        };
        map.insert(rank, img);
    }
    GenHom { map }
}
