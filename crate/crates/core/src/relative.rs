//! HH¹(A|B) = Ker δ¹_{A|B} / Im δ⁰_{A|B} and its embedding into HH¹(A).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::SubalgebraPair;
use crate::complex::{CochainComplex, Stratum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::{bracket_raw, LieReport, LiePresentation};
use crate::linalg::{rref, Subquotient, Subspace};

pub struct RelativeHh1<'a, F: Field> {
    pair: &'a SubalgebraPair,
    complex: CochainComplex<'a, F>,
    absolute: Subquotient<F>,
    kernel_rel: Subspace<F>,
    image_rel: Subspace<F>,
    quotient: Subquotient<F>,
}

/// Indices of pairs a//γ in k(Q₁//𝓑) with a outside B.
pub fn relative_columns<F: Field>(pair: &SubalgebraPair, c: &CochainComplex<'_, F>) -> Vec<usize> {
    c.basis1()
        .iter()
        .enumerate()
        .filter(|(_, pp)| !pair.is_sub_arrow(pp.left))
        .map(|(i, _)| i)
        .collect()
}

impl<'a, F: Field> RelativeHh1<'a, F> {
    pub fn new(pair: &'a SubalgebraPair, field: &F) -> Result<Self> {
        let complex = CochainComplex::new(pair.ambient(), field);
        let absolute = complex.hh1()?;
        let cols = relative_columns(pair, &complex);
        let n = complex.dim1();
        let restricted = complex.d1().select_columns(&cols).kernel();
        let kernel_rel = restricted.map(n, |v| {
            let mut out = crate::linalg::zero_vec(field, n);
            for (x, &c) in v.iter().zip(&cols) {
                out[c] = x.clone();
            }
            out
        });
        let image_rel = complex.im_d0().intersection(&kernel_rel);
        let quotient = Subquotient::new(kernel_rel.clone(), image_rel.clone())?;
        Ok(RelativeHh1 {
            pair,
            complex,
            absolute,
            kernel_rel,
            image_rel,
            quotient,
        })
    }

    pub fn pair(&self) -> &'a SubalgebraPair {
        self.pair
    }
    pub fn complex(&self) -> &CochainComplex<'a, F> {
        &self.complex
    }
    pub fn absolute(&self) -> &Subquotient<F> {
        &self.absolute
    }
    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel_rel
    }
    pub fn image(&self) -> &Subspace<F> {
        &self.image_rel
    }
    pub fn quotient(&self) -> &Subquotient<F> {
        &self.quotient
    }
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    fn labels(&self, sq: &Subquotient<F>) -> Vec<String> {
        sq.representatives()
            .iter()
            .map(|v| {
                let i = v.iter().position(|x| !self.complex.field().is_zero(x)).unwrap();
                self.complex.pair_label(Stratum::Arrows, i)
            })
            .collect()
    }

    pub fn lie(&self) -> Result<LiePresentation<F>> {
        LiePresentation::from_subquotient(&self.quotient, self.labels(&self.quotient), |x, y| {
            bracket_raw(&self.complex, x, y)
        })
    }

    pub fn absolute_lie(&self) -> Result<LiePresentation<F>> {
        LiePresentation::from_subquotient(&self.absolute, self.labels(&self.absolute), |x, y| {
            bracket_raw(&self.complex, x, y)
        })
    }

    /// Column i: coordinates in HH¹(A) of the i-th relative class.
    pub fn embedding(&self) -> Result<Vec<Vec<F::Elem>>> {
        self.quotient
            .representatives()
            .iter()
            .map(|v| {
                self.absolute
                    .class_coordinates(v)
                    .ok_or_else(|| Error::Verification("relative class outside Ker δ¹".into()))
            })
            .collect()
    }

    pub fn embedding_rank(&self) -> Result<usize> {
        let cols = self.embedding()?;
        Ok(rref(self.complex.field(), cols, self.absolute.dim()).0.len())
    }

    /// ι[x, y] = [ιx, ιy] on all pairs of basis classes.
    pub fn embedding_commutes(&self, rel: &LiePresentation<F>, abs: &LiePresentation<F>) -> Result<bool> {
        let emb = self.embedding()?;
        let n = rel.dim();
        let f = self.complex.field();
        let unit = |i: usize| {
            let mut v = crate::linalg::zero_vec(f, n);
            v[i] = f.one();
            v
        };
        let apply = |x: &[F::Elem]| {
            let mut out = crate::linalg::zero_vec(f, abs.dim());
            for (c, col) in x.iter().zip(&emb) {
                crate::linalg::axpy(f, &mut out, c, col);
            }
            out
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = apply(&rel.bracket(&unit(i), &unit(j)));
                let rhs = abs.bracket(&emb[i], &emb[j]);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// dim per degree of the relative quotient.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let degs = self.complex.degrees(Stratum::Arrows);
        let mut ds = degs.clone();
        ds.sort_unstable();
        ds.dedup();
        let field = self.complex.field();
        let graded = |s: &Subspace<F>, d: i64| {
            let cols: Vec<usize> = (0..degs.len()).filter(|&i| degs[i] == d).collect();
            Subspace::coordinate(field, degs.len(), cols).intersection(s).dim()
        };
        ds.into_iter()
            .map(|d| (d, graded(&self.kernel_rel, d) - graded(&self.image_rel, d)))
            .collect()
    }

    pub fn report(&self) -> Result<RelativeReport> {
        let rel = self.lie()?;
        let abs = self.absolute_lie()?;
        let rank = self.embedding_rank()?;
        if rank != self.dim() {
            return Err(Error::Verification(format!(
                "embedding has rank {rank}, expected {}",
                self.dim()
            )));
        }
        let commutes = self.embedding_commutes(&rel, &abs)?;
        if !commutes {
            return Err(Error::Verification("embedding does not preserve brackets".into()));
        }
        Ok(RelativeReport {
            dim_rel: self.dim(),
            dim_abs: self.absolute.dim(),
            embedding_rank: rank,
            embedding_preserves_brackets: commutes,
            dim_ker_rel: self.kernel_rel.dim(),
            dim_im_rel: self.image_rel.dim(),
            graded_dims: self.graded_dims(),
            image_rel: self
                .image_rel
                .basis()
                .iter()
                .map(|v| self.complex.terms(Stratum::Arrows, v))
                .collect(),
            transversal: self
                .quotient
                .representatives()
                .iter()
                .map(|v| self.complex.terms(Stratum::Arrows, v))
                .collect(),
            lie: rel.report()?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeReport {
    pub dim_rel: usize,
    pub dim_abs: usize,
    pub embedding_rank: usize,
    pub embedding_preserves_brackets: bool,
    pub dim_ker_rel: usize,
    pub dim_im_rel: usize,
    pub graded_dims: BTreeMap<i64, usize>,
    pub image_rel: Vec<Vec<crate::complex::Term>>,
    pub transversal: Vec<Vec<crate::complex::Term>>,
    pub lie: LieReport,
}
