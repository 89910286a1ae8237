//! Generator matrices as shift-indexed families of series matrices, matrix
//! arithmetic over noncommutative truncated series, and inversion.
//!
//! A `SeriesMatrix` represents a matrix-valued function of the spectral
//! argument; `at(c)` materializes it at argument `q^c u` (relative to the
//! family's base argument). Shifted determinant arguments are resolved this
//! way instead of re-expanding anything.

use super::{AlgError, Presentation};
use crate::ncalg::{Budget, GenFamily, NCElem, NCPoly, NcError};
use crate::scalar::{GradedCoeff, RatQ, Window};
use crate::tensor::SparseOp;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

type Entries = Vec<Vec<NCPoly>>;
type Producer = dyn Fn(i64) -> Result<Entries, NcError> + Send + Sync;

/// Shift-indexed family of `N x N` matrices with truncated-series entries.
#[derive(Clone)]
pub struct SeriesMatrix {
    inner: Arc<Inner>,
}

struct Inner {
    n: usize,
    producer: Box<Producer>,
    cache: Mutex<HashMap<i64, Arc<Entries>>>,
}

impl SeriesMatrix {
    pub fn new(n: usize, producer: Box<Producer>) -> SeriesMatrix {
        SeriesMatrix {
            inner: Arc::new(Inner { n, producer, cache: Mutex::new(HashMap::new()) }),
        }
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// Matrix at argument `q^c u`.
    pub fn at(&self, c: i64) -> Result<Arc<Entries>, NcError> {
        if let Some(hit) = self.inner.cache.lock().unwrap().get(&c) {
            return Ok(hit.clone());
        }
        let made = Arc::new((self.inner.producer)(c)?);
        self.inner.cache.lock().unwrap().insert(c, made.clone());
        Ok(made)
    }

    pub fn entry(&self, c: i64, i: usize, j: usize) -> Result<NCPoly, NcError> {
        Ok(self.at(c)?[i - 1][j - 1].clone())
    }

    /// Generator matrix of a presentation at its natural argument.
    pub fn generators(pres: &Arc<Presentation>, family: GenFamily, window: Window) -> SeriesMatrix {
        let pres = pres.clone();
        let n = pres.n;
        SeriesMatrix::new(
            n,
            Box::new(move |c| {
                Ok((1..=n)
                    .map(|i| {
                        (1..=n)
                            .map(|j| pres.series_entry(family, i, j, window).shift_arg(c))
                            .collect()
                    })
                    .collect())
            }),
        )
    }

    /// Generator matrix at the inverted argument `u^-1`.
    pub fn generators_inv_arg(
        pres: &Arc<Presentation>,
        family: GenFamily,
        window: Window,
    ) -> SeriesMatrix {
        let pres = pres.clone();
        let n = pres.n;
        SeriesMatrix::new(
            n,
            Box::new(move |c| {
                Ok((1..=n)
                    .map(|i| {
                        (1..=n)
                            .map(|j| {
                                pres.series_entry(family, i, j, window.flip())
                                    .invert_arg()
                                    .shift_arg(c)
                            })
                            .collect()
                    })
                    .collect())
            }),
        )
    }

    /// Constant matrix lifted to a shift-independent family.
    pub fn constant(m: &SparseOp<RatQ>, window: Window) -> SeriesMatrix {
        assert_eq!(m.slots(), 1);
        let n = m.site_dim();
        let m = m.clone();
        SeriesMatrix::new(
            n,
            Box::new(move |_| {
                Ok((1..=n)
                    .map(|i| {
                        (1..=n)
                            .map(|j| NCPoly::scalar(m.get(&[i], &[j]), window))
                            .collect()
                    })
                    .collect())
            }),
        )
    }

    pub fn identity(n: usize, window: Window) -> SeriesMatrix {
        SeriesMatrix::new(
            n,
            Box::new(move |_| {
                Ok((1..=n)
                    .map(|i| {
                        (1..=n)
                            .map(|j| {
                                if i == j {
                                    NCPoly::one(window)
                                } else {
                                    NCPoly::zero(window)
                                }
                            })
                            .collect()
                    })
                    .collect())
            }),
        )
    }

    /// Product family: `(A B)(q^c u) = A(q^c u) B(q^c u)`.
    pub fn product(&self, rhs: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.n(), rhs.n());
        let a = self.clone();
        let b = rhs.clone();
        SeriesMatrix::new(
            a.n(),
            Box::new(move |c| Ok(mat_mul(&a.at(c)?, &b.at(c)?))),
        )
    }

    pub fn transpose(&self) -> SeriesMatrix {
        let a = self.clone();
        let n = a.n();
        SeriesMatrix::new(
            n,
            Box::new(move |c| {
                let m = a.at(c)?;
                Ok((0..n)
                    .map(|i| (0..n).map(|j| m[j][i].clone()).collect())
                    .collect())
            }),
        )
    }

    /// Family with the base argument pre-shifted by `q^c0`.
    pub fn arg_shifted(&self, c0: i64) -> SeriesMatrix {
        let a = self.clone();
        SeriesMatrix::new(a.n(), Box::new(move |c| a.at(c + c0).map(|m| (*m).clone())))
    }

    /// Entrywise map.
    pub fn map_entries(
        &self,
        f: impl Fn(&NCPoly, usize, usize) -> NCPoly + Send + Sync + 'static,
    ) -> SeriesMatrix {
        let a = self.clone();
        let n = a.n();
        SeriesMatrix::new(
            n,
            Box::new(move |c| {
                let m = a.at(c)?;
                Ok((0..n)
                    .map(|i| (0..n).map(|j| f(&m[i][j], i + 1, j + 1)).collect())
                    .collect())
            }),
        )
    }

    /// Scales every entry by a shift-dependent scalar series.
    pub fn scale_family(
        &self,
        f: impl Fn(i64) -> GradedCoeff + Send + Sync + 'static,
    ) -> SeriesMatrix {
        let a = self.clone();
        let n = a.n();
        SeriesMatrix::new(
            n,
            Box::new(move |c| {
                let m = a.at(c)?;
                let s = f(c);
                Ok((0..n)
                    .map(|i| (0..n).map(|j| m[i][j].scale_graded(&s)).collect())
                    .collect())
            }),
        )
    }

    /// Submatrix family with rows and columns relabeled by the given 1-based
    /// index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SeriesMatrix {
        assert_eq!(rows.len(), cols.len());
        let a = self.clone();
        let rows = rows.to_vec();
        let cols = cols.to_vec();
        let k = rows.len();
        SeriesMatrix::new(
            k,
            Box::new(move |c| {
                let m = a.at(c)?;
                Ok((0..k)
                    .map(|i| (0..k).map(|j| m[rows[i] - 1][cols[j] - 1].clone()).collect())
                    .collect())
            }),
        )
    }

    /// Inverse family; `kind` describes how to invert the degree-zero part.
    pub fn inverse(
        &self,
        kind: ConstInvKind,
        pres: &Arc<Presentation>,
        budget_limit: u64,
    ) -> SeriesMatrix {
        let a = self.clone();
        let pres = pres.clone();
        SeriesMatrix::new(
            a.n(),
            Box::new(move |c| {
                let mut budget = Budget::new(budget_limit);
                invert_series_matrix(&a.at(c)?, kind.clone(), &pres, &mut budget)
            }),
        )
    }
}

/// Plain matrix product with entries reduced is left to the caller; this is
/// the raw series product.
pub fn mat_mul(a: &Entries, b: &Entries) -> Entries {
    let n = a.len();
    let window = a
        .iter()
        .flatten()
        .chain(b.iter().flatten())
        .map(|p| p.window())
        .fold(Window::ALL, |acc, w| acc.intersect(&w));
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = NCPoly::zero(window);
                    for k in 0..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_add(a: &Entries, b: &Entries) -> Entries {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn mat_reduce(m: &Entries, pres: &Presentation, budget: &mut Budget) -> Result<Entries, NcError> {
    m.iter()
        .map(|row| row.iter().map(|p| pres.rules.normal_form(p, budget)).collect())
        .collect()
}

/// Strategy for inverting the degree-zero part of a series matrix.
#[derive(Clone, Debug)]
pub enum ConstInvKind {
    /// Degree-zero part is the identity.
    Identity,
    /// Unitriangular (unit diagonal), lower or upper.
    UnitLower,
    UnitUpper,
    /// Triangular with single-generator diagonal entries whose inverses are
    /// registered in the generator table.
    TriDiagGens { upper: bool },
    /// The symplectic level-0 block inverse (N = 2).
    SymplecticBlock,
}

fn const_part(m: &Entries) -> Vec<Vec<NCElem>> {
    m.iter()
        .map(|row| row.iter().map(|p| p.coeff(0)).collect())
        .collect()
}

fn elem_mat_mul(a: &[Vec<NCElem>], b: &[Vec<NCElem>]) -> Vec<Vec<NCElem>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = NCElem::zero();
                    for k in 0..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn elem_identity(n: usize) -> Vec<Vec<NCElem>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { NCElem::one() } else { NCElem::zero() })
                .collect()
        })
        .collect()
}

/// Inverts the degree-zero part according to the declared structure.
fn invert_const(
    m0: &[Vec<NCElem>],
    kind: &ConstInvKind,
    pres: &Presentation,
    budget: &mut Budget,
) -> Result<Vec<Vec<NCElem>>, NcError> {
    let n = m0.len();
    match kind {
        ConstInvKind::Identity => Ok(elem_identity(n)),
        ConstInvKind::UnitLower | ConstInvKind::UnitUpper | ConstInvKind::TriDiagGens { .. } => {
            // write M0 = D (I + E) with D diagonal and E strictly triangular;
            // then M0^-1 = (sum (-E')^k) D^-1 with E' = D^-1 E
            let mut dinv = elem_identity(n);
            for i in 0..n {
                let d = &m0[i][i];
                if d == &NCElem::one() {
                    continue;
                }
                let terms: Vec<_> = d.terms().collect();
                if terms.len() != 1 {
                    return Err(NcError::NoInverse(format!(
                        "diagonal entry {} is not a monomial",
                        i + 1
                    )));
                }
                let (word, coeff) = terms[0];
                let inv_word = pres.table.word_inverse(word)?;
                let inv_coeff = coeff.inv().map_err(|_| {
                    NcError::NoInverse(format!("diagonal coefficient at {}", i + 1))
                })?;
                dinv[i][i] = NCElem::monomial(inv_word, inv_coeff);
            }
            let mut eprime = vec![vec![NCElem::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        eprime[i][j] =
                            pres.rules.normal_form_elem(&dinv[i][i].mul(&m0[i][j]), budget)?;
                    }
                }
            }
            let mut acc = elem_identity(n);
            let mut pow = elem_identity(n);
            let mut sign = true;
            for _ in 0..n {
                pow = elem_mat_mul(&pow, &eprime);
                sign = !sign;
                let mut any = false;
                for (i, row) in pow.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        if !e.is_zero() {
                            any = true;
                            let signed = if sign { e.clone() } else { e.neg() };
                            acc[i][j] = acc[i][j].add(&signed);
                        }
                    }
                }
                if !any {
                    break;
                }
            }
            // (I + E')^-1 D^-1
            let out = elem_mat_mul(&acc, &dinv);
            out.iter()
                .map(|row| {
                    row.iter()
                        .map(|e| pres.rules.normal_form_elem(e, budget))
                        .collect()
                })
                .collect()
        }
        ConstInvKind::SymplecticBlock => {
            if n != 2 {
                return Err(NcError::NoInverse(
                    "symplectic block inverse implemented for N = 2".to_string(),
                ));
            }
            // q^-3 [[s_22, -q^2 s_12], [(q - q^-1) s_12 - s_21, s_11]]
            let q3 = RatQ::q_pow(-3);
            let mut out = elem_identity(2);
            out[0][0] = m0[1][1].scale(&q3);
            out[0][1] = m0[0][1].scale(&q3.mul(&RatQ::q_pow(2)).neg());
            out[1][0] = m0[0][1]
                .scale(&crate::scalar::q_minus_qinv())
                .sub(&m0[1][0])
                .scale(&q3);
            out[1][1] = m0[0][0].scale(&q3);
            Ok(out)
        }
    }
}

/// Two-sided inverse of a series matrix up to its truncation window.
///
/// The degree-zero part is inverted per `kind`; the remainder is handled by
/// a finite geometric series. The product `M M^-1` is verified to reduce to
/// the identity, so a wrong structure declaration cannot go unnoticed.
pub fn invert_series_matrix(
    m: &Entries,
    kind: ConstInvKind,
    pres: &Presentation,
    budget: &mut Budget,
) -> Result<Entries, NcError> {
    let n = m.len();
    let window = m
        .iter()
        .flatten()
        .map(|p| p.window())
        .fold(Window::ALL, |acc, w| acc.intersect(&w));
    let m0 = const_part(m);
    let y0_elem = invert_const(&m0, &kind, pres, budget)?;
    let y0: Entries = y0_elem
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| NCPoly::from_elem(e, 0, window))
                .collect()
        })
        .collect();
    // E = M - M0 has no degree-zero part
    let e: Entries = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    let mut out = NCPoly::zero(window);
                    for (&d, el) in p.degrees() {
                        if d != 0 {
                            out.add_elem(d, el.clone());
                        }
                    }
                    out
                })
                .collect()
        })
        .collect();
    let span = (window.hi - window.lo).unsigned_abs() as usize + 1;
    let step = mat_reduce(&mat_mul(&y0, &e), pres, budget)?;
    let mut acc = y0.clone();
    let mut pow: Entries = y0.clone();
    for _ in 0..span {
        // pow <- (-Y0 E) pow  computed as  -(step * pow)? careful with sides:
        // M^-1 = sum_k (-Y0 E)^k Y0, build pow_k = (-Y0 E)^k Y0
        pow = mat_reduce(&mat_mul(&step, &pow), pres, budget)?
            .iter()
            .map(|row| row.iter().map(|p| p.neg()).collect())
            .collect();
        if pow.iter().flatten().all(|p| p.is_zero()) {
            break;
        }
        acc = mat_add(&acc, &pow);
    }
    let acc = mat_reduce(&acc, pres, budget)?;
    // verify M * M^-1 = I
    let check = mat_reduce(&mat_mul(m, &acc), pres, budget)?;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { NCPoly::one(window) } else { NCPoly::zero(window) };
            if check[i][j] != expect {
                return Err(NcError::NoInverse(format!(
                    "inverse verification failed at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(acc)
}

/// Convenience: the inverse family of a generator-type matrix, with the
/// structure of its constant term supplied by the caller.
pub fn series_matrix_inverse(
    mat: &SeriesMatrix,
    kind: ConstInvKind,
    pres: &Arc<Presentation>,
    budget_limit: u64,
) -> SeriesMatrix {
    mat.inverse(kind, pres, budget_limit)
}

/// `AlgError` conversion helper for series matrix call sites.
pub fn entries_or_err(m: Result<Arc<Entries>, NcError>) -> Result<Arc<Entries>, AlgError> {
    m.map_err(AlgError::from)
}
