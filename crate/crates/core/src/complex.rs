//! The parallel-path cochain complex k(Q₀//𝓑) → k(Q₁//𝓑) → k(Z//𝓑) of a monomial algebra.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::{MonomialAlgebra, ParallelPair};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{ExactMatrix, Subquotient, Subspace};
use crate::quiver::Path;

/// Sum over occurrences of arrow `a` in `r` of `r` with that occurrence replaced by `gamma`,
/// as basis indices with integer multiplicities. Terms outside the basis are dropped.
pub fn substitute(algebra: &MonomialAlgebra, r: &Path, a: usize, gamma: &Path) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for (i, &x) in r.arrows().iter().enumerate() {
        if x == a {
            if let Some(k) = algebra.basis_index(&r.replace_at(i, gamma)) {
                *out.entry(k).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Which stratum a cochain lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    Vertices,
    Arrows,
    Relations,
}

#[derive(Clone, Debug)]
pub struct CochainComplex<'a, F: Field> {
    algebra: &'a MonomialAlgebra,
    field: F,
    basis0: Vec<ParallelPair>,
    basis1: Vec<ParallelPair>,
    basis2: Vec<ParallelPair>,
    index1: HashMap<ParallelPair, usize>,
    d0: ExactMatrix<F>,
    d1: ExactMatrix<F>,
}

impl<'a, F: Field> CochainComplex<'a, F> {
    pub fn new(algebra: &'a MonomialAlgebra, field: &F) -> Self {
        let basis0 = algebra.parallel_pairs(&algebra.vertex_paths());
        let basis1 = algebra.parallel_pairs(&algebra.arrow_paths());
        let basis2 = algebra.parallel_pairs(algebra.relations());
        let index1: HashMap<_, _> = basis1.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let index2: HashMap<_, _> = basis2.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let q = algebra.quiver();
        let vertices = q.vertices();
        let basis = algebra.basis();

        let mut d0 = ExactMatrix::new(field, basis1.len(), basis0.len());
        let (one, minus_one) = (field.one(), field.from_i64(-1));
        for (j, pp) in basis0.iter().enumerate() {
            let e = vertices[pp.left];
            let p = &basis[pp.right];
            for (ai, arrow) in q.arrows().iter().enumerate() {
                let ap = Path::arrow(q, ai);
                if arrow.source == e {
                    if let Some(k) = algebra.compose(p, &ap) {
                        d0.add_entry(index1[&ParallelPair { left: ai, right: k }], j, &one);
                    }
                }
                if arrow.target == e {
                    if let Some(k) = algebra.compose(&ap, p) {
                        d0.add_entry(index1[&ParallelPair { left: ai, right: k }], j, &minus_one);
                    }
                }
            }
        }

        let mut d1 = ExactMatrix::new(field, basis2.len(), basis1.len());
        for (j, pp) in basis1.iter().enumerate() {
            let gamma = &basis[pp.right];
            for (ri, r) in algebra.relations().iter().enumerate() {
                for (k, c) in substitute(algebra, r, pp.left, gamma) {
                    d1.add_entry(index2[&ParallelPair { left: ri, right: k }], j, &field.from_i64(c));
                }
            }
        }

        CochainComplex {
            algebra,
            field: field.clone(),
            basis0,
            basis1,
            basis2,
            index1,
            d0,
            d1,
        }
    }

    pub fn algebra(&self) -> &'a MonomialAlgebra {
        self.algebra
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn basis0(&self) -> &[ParallelPair] {
        &self.basis0
    }
    pub fn basis1(&self) -> &[ParallelPair] {
        &self.basis1
    }
    pub fn basis2(&self) -> &[ParallelPair] {
        &self.basis2
    }
    pub fn d0(&self) -> &ExactMatrix<F> {
        &self.d0
    }
    pub fn d1(&self) -> &ExactMatrix<F> {
        &self.d1
    }
    pub fn dim1(&self) -> usize {
        self.basis1.len()
    }
    /// Position of the pair (arrow index, basis index) in k(Q₁//𝓑).
    pub fn index1(&self, arrow: usize, basis: usize) -> Option<usize> {
        self.index1.get(&ParallelPair { left: arrow, right: basis }).copied()
    }

    fn left_path(&self, stratum: Stratum, pp: &ParallelPair) -> Path {
        let a = self.algebra;
        match stratum {
            Stratum::Vertices => Path::trivial(a.quiver().vertices()[pp.left]),
            Stratum::Arrows => Path::arrow(a.quiver(), pp.left),
            Stratum::Relations => a.relations()[pp.left].clone(),
        }
    }

    fn pairs(&self, stratum: Stratum) -> &[ParallelPair] {
        match stratum {
            Stratum::Vertices => &self.basis0,
            Stratum::Arrows => &self.basis1,
            Stratum::Relations => &self.basis2,
        }
    }

    /// Degree len(q) − len(x) + 1 of the pair x//q.
    pub fn degree(&self, stratum: Stratum, i: usize) -> i64 {
        let pp = &self.pairs(stratum)[i];
        let left = self.left_path(stratum, pp);
        self.algebra.basis()[pp.right].len() as i64 - left.len() as i64 + 1
    }

    pub fn degrees(&self, stratum: Stratum) -> Vec<i64> {
        (0..self.pairs(stratum).len()).map(|i| self.degree(stratum, i)).collect()
    }

    /// Left and right paths of a pair.
    pub fn pair_paths(&self, stratum: Stratum, i: usize) -> (Path, Path) {
        let pp = &self.pairs(stratum)[i];
        (self.left_path(stratum, pp), self.algebra.basis()[pp.right].clone())
    }

    pub fn pair_label(&self, stratum: Stratum, i: usize) -> String {
        let (l, r) = self.pair_paths(stratum, i);
        format!("{}//{}", self.algebra.path_label(&l), self.algebra.path_label(&r))
    }

    pub fn d1_after_d0_is_zero(&self) -> bool {
        self.d1.mul(&self.d0).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// Every nonzero entry of δ⁰ and δ¹ connects pairs of equal degree.
    pub fn preserves_degree(&self) -> bool {
        let (g0, g1, g2) = (
            self.degrees(Stratum::Vertices),
            self.degrees(Stratum::Arrows),
            self.degrees(Stratum::Relations),
        );
        self.d0.entries().all(|(r, c, _)| g1[r] == g0[c])
            && self.d1.entries().all(|(r, c, _)| g2[r] == g1[c])
    }

    pub fn ker_d1(&self) -> Subspace<F> {
        self.d1.kernel()
    }
    pub fn im_d0(&self) -> Subspace<F> {
        self.d0.image()
    }
    pub fn ker_d0(&self) -> Subspace<F> {
        self.d0.kernel()
    }

    /// HH¹ as Ker δ¹ / Im δ⁰.
    pub fn hh1(&self) -> Result<Subquotient<F>> {
        Subquotient::new(self.ker_d1(), self.im_d0())
    }

    /// dim HH¹ per degree; δ⁰ and δ¹ are degree preserving so kernel and image split by degree.
    pub fn graded_hh1_dims(&self) -> BTreeMap<i64, usize> {
        let g0 = self.degrees(Stratum::Vertices);
        let g1 = self.degrees(Stratum::Arrows);
        let mut out = BTreeMap::new();
        let mut ds: Vec<i64> = g1.clone();
        ds.sort_unstable();
        ds.dedup();
        for d in ds {
            let cols1: Vec<usize> = (0..g1.len()).filter(|&i| g1[i] == d).collect();
            let cols0: Vec<usize> = (0..g0.len()).filter(|&i| g0[i] == d).collect();
            let ker = self.d1.select_columns(&cols1).kernel().dim();
            let im = self.d0.select_columns(&cols0).rank();
            out.insert(d, ker - im);
        }
        out
    }

    /// Terms of degree `d` only.
    pub fn graded_component(&self, v: &[F::Elem], d: i64) -> Vec<F::Elem> {
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                if self.degree(Stratum::Arrows, i) == d {
                    x.clone()
                } else {
                    self.field.zero()
                }
            })
            .collect()
    }

    /// Unit vector of k(Q₁//𝓑) for the pair named by arrow and path labels.
    pub fn unit1(&self, arrow: &str, path: &Path) -> Option<Vec<F::Elem>> {
        let a = self.algebra.quiver().arrow_index(arrow)?;
        let b = self.algebra.basis_index(path)?;
        let i = self.index1(a, b)?;
        let mut v = crate::linalg::zero_vec(&self.field, self.dim1());
        v[i] = self.field.one();
        Some(v)
    }

    pub fn terms(&self, stratum: Stratum, v: &[F::Elem]) -> Vec<Term> {
        let a = self.algebra;
        v.iter()
            .enumerate()
            .filter(|(_, x)| !self.field.is_zero(x))
            .map(|(i, x)| {
                let (l, r) = self.pair_paths(stratum, i);
                Term {
                    left: PathJson::new(a, &l),
                    right: PathJson::new(a, &r),
                    coeff: self.field.format(x),
                }
            })
            .collect()
    }
}

/// Basis of the center Z(A), found by solving g·z = z·g for every vertex idempotent and arrow g.
pub fn center<F: Field>(algebra: &MonomialAlgebra, field: &F) -> Subspace<F> {
    let n = algebra.dim();
    let mut gens = algebra.vertex_paths();
    gens.extend(algebra.arrow_paths());
    let mut m = ExactMatrix::new(field, gens.len() * n, n);
    let (one, minus_one) = (field.one(), field.from_i64(-1));
    for (gi, g) in gens.iter().enumerate() {
        for (j, p) in algebra.basis().iter().enumerate() {
            if let Some(k) = algebra.compose(p, g) {
                m.add_entry(gi * n + k, j, &one);
            }
            if let Some(k) = algebra.compose(g, p) {
                m.add_entry(gi * n + k, j, &minus_one);
            }
        }
    }
    m.kernel()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathJson {
    pub source: u32,
    pub target: u32,
    pub arrows: Vec<String>,
}

impl PathJson {
    pub fn new(a: &MonomialAlgebra, p: &Path) -> Self {
        PathJson {
            source: p.source(),
            target: p.target(),
            arrows: p.names(a.quiver()),
        }
    }
}

/// One term `coeff · left//right` of a parallel vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub left: PathJson,
    pub right: PathJson,
    pub coeff: String,
}
