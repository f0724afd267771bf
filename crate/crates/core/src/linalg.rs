//! Exact linear algebra: sparse matrices, subspaces in reduced echelon form, subquotients.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

pub fn zero_vec<F: Field>(f: &F, n: usize) -> Vec<F::Elem> {
    vec![f.zero(); n]
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

/// `y += c * x`
pub fn axpy<F: Field>(f: &F, y: &mut [F::Elem], c: &F::Elem, x: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !f.is_zero(xi) {
            f.add_mul(yi, c, xi);
        }
    }
}

pub fn sub_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry in row order.
/// Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(r) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = f.inv(&rows[rank][col]);
        if !f.is_one(&inv) {
            for x in rows[rank].iter_mut() {
                if !f.is_zero(x) {
                    *x = f.mul(x, &inv);
                }
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (prow, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if !f.is_zero(&other[col]) {
                let c = f.neg(&other[col]);
                axpy(f, other, &c, prow);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Null space of the matrix given by dense rows.
pub fn null_space<F: Field>(f: &F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> Subspace<F> {
    let (r, pivots) = rref(f, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = zero_vec(f, ncols);
        x[free] = f.one();
        for (row, &p) in r.iter().zip(&pivots) {
            x[p] = f.neg(&row[free]);
        }
        basis.push(x);
    }
    Subspace::span(f, ncols, basis)
}

/// A subspace of `F^n`, stored as its reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::coordinate(field, ambient, 0..ambient)
    }

    /// Span of the unit vectors with the given indices.
    pub fn coordinate(field: &F, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx
            .iter()
            .map(|&i| {
                let mut v = zero_vec(field, ambient);
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots: idx,
        }
    }

    pub fn span(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (rows, pivots) = rref(field, vectors, ambient);
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = f.neg(&v[p]);
                axpy(f, &mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn combination(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = zero_vec(&self.field, self.ambient);
        for (c, row) in coords.iter().zip(&self.rows) {
            axpy(&self.field, &mut v, c, row);
        }
        v
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut vs = self.rows.clone();
        vs.extend(other.rows.iter().cloned());
        Subspace::span(&self.field, self.ambient, vs)
    }

    /// Exact intersection by the Zassenhaus algorithm.
    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        let f = &self.field;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.rows {
            let mut r = u.clone();
            r.extend(u.iter().cloned());
            rows.push(r);
        }
        for w in &other.rows {
            let mut r = w.clone();
            r.extend(std::iter::repeat_n(f.zero(), n));
            rows.push(r);
        }
        let (red, pivots) = rref(f, rows, 2 * n);
        let vs = red
            .into_iter()
            .zip(pivots)
            .filter(|&(_, p)| p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Subspace::span(f, n, vs)
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, target_dim: usize, g: impl Fn(&[F::Elem]) -> Vec<F::Elem>) -> Subspace<F> {
        let vs = self.rows.iter().map(|r| g(r)).collect();
        Subspace::span(&self.field, target_dim, vs)
    }
}

/// A sparse exact matrix; rows index the codomain, columns the domain.
#[derive(Clone, Debug)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F::Elem>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(field: &F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::new(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.add_entry(i, j, x);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn add_entry(&mut self, r: usize, c: usize, x: &F::Elem) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if self.field.is_zero(x) {
            return;
        }
        let f = &self.field;
        let zero_now = match self.entries.get_mut(&(r, c)) {
            Some(e) => {
                *e = f.add(e, x);
                f.is_zero(e)
            }
            None => {
                self.entries.insert((r, c), x.clone());
                false
            }
        };
        if zero_now {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> {
        self.entries.iter().map(|(&(r, c), x)| (r, c, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let mut out = zero_vec(f, self.rows);
        for (&(r, c), x) in &self.entries {
            if !f.is_zero(&v[c]) {
                f.add_mul(&mut out[r], x, &v[c]);
            }
        }
        out
    }

    /// `self * other`
    pub fn mul(&self, other: &ExactMatrix<F>) -> Result<ExactMatrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Validation(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut by_row: Vec<Vec<(usize, &F::Elem)>> = vec![Vec::new(); other.rows];
        for (&(k, j), b) in &other.entries {
            by_row[k].push((j, b));
        }
        let mut out = ExactMatrix::new(f, self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_entry(i, j, &f.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        let mut v = zero_vec(&self.field, self.rows);
        for (&(r, c), x) in &self.entries {
            if c == j {
                v[r] = x.clone();
            }
        }
        v
    }

    pub fn dense_rows(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![zero_vec(&self.field, self.cols); self.rows];
        for (&(r, c), x) in &self.entries {
            out[r][c] = x.clone();
        }
        out
    }

    pub fn dense_columns(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![zero_vec(&self.field, self.rows); self.cols];
        for (&(r, c), x) in &self.entries {
            out[c][r] = x.clone();
        }
        out
    }

    /// Restriction to the given domain columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix<F> {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let mut out = ExactMatrix::new(&self.field, self.rows, cols.len());
        for (&(r, c), x) in &self.entries {
            if pos[c] != usize::MAX {
                out.entries.insert((r, pos[c]), x.clone());
            }
        }
        out
    }

    /// Only the rows with the given indices, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix<F> {
        let mut pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            pos[r] = k;
        }
        let mut out = ExactMatrix::new(&self.field, rows.len(), self.cols);
        for (&(r, c), x) in &self.entries {
            if pos[r] != usize::MAX {
                out.entries.insert((pos[r], c), x.clone());
            }
        }
        out
    }

    /// Kernel, as a subspace of the domain.
    pub fn kernel(&self) -> Subspace<F> {
        let rows: Vec<_> = {
            let mut nonzero: Vec<bool> = vec![false; self.rows];
            for &(r, _) in self.entries.keys() {
                nonzero[r] = true;
            }
            self.dense_rows()
                .into_iter()
                .zip(nonzero)
                .filter_map(|(r, nz)| nz.then_some(r))
                .collect()
        };
        null_space(&self.field, rows, self.cols)
    }

    /// Column span, as a subspace of the codomain.
    pub fn image(&self) -> Subspace<F> {
        Subspace::span(&self.field, self.rows, self.dense_columns())
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }
}

/// A quotient `N / D` of subspaces `D ⊆ N`, with canonical representatives.
#[derive(Clone, Debug)]
pub struct Subquotient<F: Field> {
    numerator: Subspace<F>,
    denominator: Subspace<F>,
    complement: Subspace<F>,
}

impl<F: Field> Subquotient<F> {
    pub fn new(numerator: Subspace<F>, denominator: Subspace<F>) -> Result<Self> {
        if !numerator.contains_subspace(&denominator) {
            return Err(Error::Verification(
                "denominator is not contained in numerator".into(),
            ));
        }
        let reduced = numerator.basis().iter().map(|v| denominator.reduce(v)).collect();
        let complement = Subspace::span(numerator.field(), numerator.ambient_dim(), reduced);
        if complement.dim() + denominator.dim() != numerator.dim() {
            return Err(Error::Verification("subquotient dimension mismatch".into()));
        }
        Ok(Subquotient {
            numerator,
            denominator,
            complement,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }
    pub fn numerator(&self) -> &Subspace<F> {
        &self.numerator
    }
    pub fn denominator(&self) -> &Subspace<F> {
        &self.denominator
    }
    /// Canonical transversal: representatives reduced modulo the denominator.
    pub fn representatives(&self) -> &[Vec<F::Elem>] {
        self.complement.basis()
    }

    /// Coordinates of the class of `v` in the transversal; `None` if `v` is not in the numerator.
    pub fn class_coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.numerator.contains(v) {
            return None;
        }
        let t = self.denominator.reduce(v);
        self.complement.coordinates(&t)
    }

    pub fn lift(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.complement.combination(coords)
    }
}
