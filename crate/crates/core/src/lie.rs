//! Lie brackets on k(Q₁//𝓑) and finite-dimensional Lie algebras given by structure constants.

use serde::Serialize;

use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, is_zero_vec, null_space, zero_vec, Subquotient, Subspace};

/// Per arrow, the nonzero terms (basis index, coefficient) of the image of that arrow.
fn arrow_images<F: Field>(c: &CochainComplex<'_, F>, f: &[F::Elem]) -> Vec<Vec<(usize, F::Elem)>> {
    let mut out = vec![Vec::new(); c.algebra().quiver().arrows().len()];
    for (i, x) in f.iter().enumerate() {
        if !c.field().is_zero(x) {
            let pp = c.basis1()[i];
            out[pp.left].push((pp.right, x.clone()));
        }
    }
    out
}

/// Apply the derivation with the given arrow images to a basis path; result indexed by basis.
fn derive_path<F: Field>(
    c: &CochainComplex<'_, F>,
    images: &[Vec<(usize, F::Elem)>],
    path: usize,
    coeff: &F::Elem,
    out: &mut [F::Elem],
) {
    let alg = c.algebra();
    let f = c.field();
    let q = &alg.basis()[path];
    for (pos, &x) in q.arrows().iter().enumerate() {
        for (p, lambda) in &images[x] {
            if let Some(k) = alg.basis_index(&q.replace_at(pos, &alg.basis()[*p])) {
                f.add_mul(&mut out[k], coeff, lambda);
            }
        }
    }
}

/// Commutator D_f D_g − D_g D_f of the derivations attached to `f` and `g`, restricted to arrows.
pub fn bracket_raw<F: Field>(c: &CochainComplex<'_, F>, f: &[F::Elem], g: &[F::Elem]) -> Vec<F::Elem> {
    let field = c.field();
    let alg = c.algebra();
    let fi = arrow_images(c, f);
    let gi = arrow_images(c, g);
    let n = alg.dim();
    let mut out = zero_vec(field, c.dim1());
    for b in 0..alg.quiver().arrows().len() {
        if fi[b].is_empty() && gi[b].is_empty() {
            continue;
        }
        let mut acc = zero_vec(field, n);
        for (q, mu) in &gi[b] {
            derive_path(c, &fi, *q, mu, &mut acc);
        }
        let mut sub = zero_vec(field, n);
        for (p, lambda) in &fi[b] {
            derive_path(c, &gi, *p, lambda, &mut sub);
        }
        for (k, (x, y)) in acc.iter().zip(&sub).enumerate() {
            let d = field.sub(x, y);
            if !field.is_zero(&d) {
                let idx = c.index1(b, k).expect("derivation images stay parallel");
                out[idx] = d;
            }
        }
    }
    out
}

/// Bracket of two elements of Ker δ¹.
pub fn bracket<F: Field>(c: &CochainComplex<'_, F>, f: &[F::Elem], g: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let field = c.field();
    for v in [f, g] {
        if v.len() != c.dim1() || !is_zero_vec(field, &c.d1().apply(v)) {
            return Err(Error::InputNotInKernel);
        }
    }
    Ok(bracket_raw(c, f, g))
}

/// [U, W] ⊆ Im δ⁰-type ideal test for subspaces of k(Q₁//𝓑).
pub fn brackets_land_in<F: Field>(
    c: &CochainComplex<'_, F>,
    u: &Subspace<F>,
    w: &Subspace<F>,
    target: &Subspace<F>,
) -> bool {
    u.basis()
        .iter()
        .all(|x| w.basis().iter().all(|y| target.contains(&bracket_raw(c, x, y))))
}

/// A Lie algebra on basis b_0..b_{n-1} with [b_i, b_j] = Σ_k c^k_{ij} b_k.
#[derive(Clone, Debug)]
pub struct LiePresentation<F: Field> {
    field: F,
    labels: Vec<String>,
    /// sparse [b_i, b_j] at i * n + j
    table: Vec<Vec<(usize, F::Elem)>>,
}

fn sparse<F: Field>(f: &F, v: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

impl<F: Field> LiePresentation<F> {
    /// Build from a bracket on coordinate vectors.
    pub fn from_bracket(
        field: &F,
        labels: Vec<String>,
        br: impl Fn(usize, usize) -> Result<Vec<F::Elem>>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = br(i, j)?;
                let neg: Vec<F::Elem> = v.iter().map(|x| field.neg(x)).collect();
                table[i * n + j] = sparse(field, &v);
                table[j * n + i] = sparse(field, &neg);
            }
        }
        Ok(LiePresentation {
            field: field.clone(),
            labels,
            table,
        })
    }

    /// Presentation of N/D where N is closed under `br` and D is an ideal of N.
    pub fn from_subquotient(
        sq: &Subquotient<F>,
        labels: Vec<String>,
        br: impl Fn(&[F::Elem], &[F::Elem]) -> Vec<F::Elem>,
    ) -> Result<Self> {
        let field = sq.numerator().field().clone();
        let reps = sq.representatives();
        Self::from_bracket(&field, labels, |i, j| {
            let v = br(&reps[i], &reps[j]);
            sq.class_coordinates(&v)
                .ok_or_else(|| Error::Verification("bracket leaves the numerator".into()))
        })
    }

    /// Lie algebra of n×n matrices spanned by `basis` (row-major), closed under commutators.
    pub fn from_matrices(field: &F, n: usize, basis: Vec<Vec<F::Elem>>) -> Result<Self> {
        let span = Subspace::span(field, n * n, basis.clone());
        if span.dim() != basis.len() {
            return Err(Error::Validation("matrices are linearly dependent".into()));
        }
        let mul = |a: &[F::Elem], b: &[F::Elem]| {
            let mut out = zero_vec(field, n * n);
            for i in 0..n {
                for k in 0..n {
                    let x = &a[i * n + k];
                    if field.is_zero(x) {
                        continue;
                    }
                    for j in 0..n {
                        field.add_mul(&mut out[i * n + j], x, &b[k * n + j]);
                    }
                }
            }
            out
        };
        // coordinates with respect to `basis` via the echelon form of the span
        let coords_rows: Vec<Vec<F::Elem>> = basis.iter().map(|b| span.coordinates(b).unwrap()).collect();
        let change = Subspace::span(field, basis.len(), coords_rows.clone());
        debug_assert_eq!(change.dim(), basis.len());
        let labels = (0..basis.len()).map(|i| format!("m{i}")).collect();
        Self::from_bracket(field, labels, |i, j| {
            let ab = mul(&basis[i], &basis[j]);
            let ba = mul(&basis[j], &basis[i]);
            let c = crate::linalg::sub_vec(field, &ab, &ba);
            let echelon = span
                .coordinates(&c)
                .ok_or_else(|| Error::Validation("matrix span is not closed under commutators".into()))?;
            solve_in_basis(field, &coords_rows, &echelon)
        })
    }

    /// 𝔤𝔩_n with basis the matrix units E_ij in row-major order.
    pub fn gl(field: &F, n: usize) -> Self {
        let basis = (0..n * n)
            .map(|k| {
                let mut v = zero_vec(field, n * n);
                v[k] = field.one();
                v
            })
            .collect();
        Self::from_matrices(field, n, basis).expect("gl_n is a Lie algebra")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F::Elem {
        self.table[i * self.dim() + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        let mut out = zero_vec(f, n);
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) || i == j {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, v) in &self.table[i * n + j] {
                    f.add_mul(&mut out[*k], &c, v);
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<F::Elem> {
        let mut v = zero_vec(&self.field, self.dim());
        v[i] = self.field.one();
        v
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.table[i * n + i].is_empty()
                && (0..n).all(|j| {
                    let a = &self.table[i * n + j];
                    let b = &self.table[j * n + i];
                    a.len() == b.len()
                        && a.iter().zip(b).all(|((k1, x), (k2, y))| {
                            k1 == k2 && self.field.is_zero(&self.field.add(x, y))
                        })
                })
        })
    }

    /// Jacobi identity on all basis triples.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        let f = &self.field;
        for i in 0..n {
            for j in (i + 1)..n {
                let bij = self.bracket(&self.unit(i), &self.unit(j));
                for k in (j + 1)..n {
                    let bjk = self.bracket(&self.unit(j), &self.unit(k));
                    let bki = self.bracket(&self.unit(k), &self.unit(i));
                    let mut s = self.bracket(&bij, &self.unit(k));
                    let t = self.bracket(&bjk, &self.unit(i));
                    let u = self.bracket(&bki, &self.unit(j));
                    axpy(f, &mut s, &f.one(), &t);
                    axpy(f, &mut s, &f.one(), &u);
                    if !is_zero_vec(f, &s) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn full(&self) -> Subspace<F> {
        Subspace::full(&self.field, self.dim())
    }

    /// Span of all [u, w].
    pub fn bracket_span(&self, u: &Subspace<F>, w: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for x in u.basis() {
            for y in w.basis() {
                let b = self.bracket(x, y);
                if !is_zero_vec(&self.field, &b) {
                    vs.push(b);
                }
            }
        }
        Subspace::span(&self.field, self.dim(), vs)
    }

    fn series(&self, start: Subspace<F>, step: impl Fn(&Subspace<F>) -> Subspace<F>) -> Vec<usize> {
        let mut dims = vec![start.dim()];
        let mut cur = start;
        for _ in 0..=self.dim() {
            if cur.dim() == 0 {
                break;
            }
            let next = step(&cur);
            let stable = next.dim() == cur.dim();
            dims.push(next.dim());
            cur = next;
            if stable {
                break;
            }
        }
        dims
    }

    /// dims of L ⊇ [L,L] ⊇ [[L,L],[L,L]] ⊇ …, ending at 0 or at the first repeat.
    pub fn derived_series(&self) -> Vec<usize> {
        self.series(self.full(), |s| self.bracket_span(s, s))
    }

    /// dims of L ⊇ [L,L] ⊇ [L,[L,L]] ⊇ …, ending at 0 or at the first repeat.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let l = self.full();
        self.series(l.clone(), |s| self.bracket_span(&l, s))
    }

    pub fn derived_algebra(&self) -> Subspace<F> {
        let l = self.full();
        self.bracket_span(&l, &l)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }
    pub fn is_solvable(&self) -> bool {
        self.derived_series().last() == Some(&0)
    }
    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last() == Some(&0)
    }
    /// The derived algebra is nilpotent.
    pub fn is_strongly_solvable(&self) -> bool {
        let d = self.derived_algebra();
        self.series(d.clone(), |s| self.bracket_span(&d, s)).last() == Some(&0)
    }

    pub fn is_subalgebra(&self, s: &Subspace<F>) -> bool {
        s.contains_subspace(&self.bracket_span(s, s))
    }
    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        s.contains_subspace(&self.bracket_span(&self.full(), s))
    }

    /// Presentation of a subalgebra on its echelon basis.
    pub fn restrict(&self, s: &Subspace<F>) -> Result<Self> {
        let labels = (0..s.dim()).map(|i| format!("s{i}")).collect();
        Self::from_bracket(&self.field, labels, |i, j| {
            s.coordinates(&self.bracket(&s.basis()[i], &s.basis()[j]))
                .ok_or_else(|| Error::Verification("subspace is not a subalgebra".into()))
        })
    }

    /// Presentation of L/I for an ideal I.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<Self> {
        if !self.is_ideal(ideal) {
            return Err(Error::Verification("quotient by a non-ideal".into()));
        }
        let sq = Subquotient::new(self.full(), ideal.clone())?;
        let labels = (0..sq.dim()).map(|i| format!("q{i}")).collect();
        Self::from_subquotient(&sq, labels, |x, y| self.bracket(x, y))
    }

    /// Gram matrix of K(x, y) = tr(ad x ad y).
    pub fn killing_form(&self) -> Vec<Vec<F::Elem>> {
        let n = self.dim();
        let f = &self.field;
        // ad_i as sparse entries (row k, col j, value) with [b_i, b_j] = Σ_k (ad_i)_{kj} b_k
        let ad: Vec<Vec<(usize, usize, F::Elem)>> = (0..n)
            .map(|i| {
                let mut e = Vec::new();
                for j in 0..n {
                    for (k, x) in &self.table[i * n + j] {
                        e.push((*k, j, x.clone()));
                    }
                }
                e
            })
            .collect();
        let dense: Vec<Vec<Vec<F::Elem>>> = ad
            .iter()
            .map(|e| {
                let mut m = vec![zero_vec(f, n); n];
                for (k, j, x) in e {
                    m[*k][*j] = x.clone();
                }
                m
            })
            .collect();
        let mut g = vec![zero_vec(f, n); n];
        for i in 0..n {
            for j in i..n {
                let mut s = f.zero();
                for (k, jj, x) in &ad[i] {
                    let y = &dense[j][*jj][*k];
                    if !f.is_zero(y) {
                        f.add_mul(&mut s, x, y);
                    }
                }
                g[j][i] = s.clone();
                g[i][j] = s;
            }
        }
        g
    }

    /// Solvable radical in characteristic 0: the Killing-orthogonal complement of [L, L].
    pub fn killing_radical(&self) -> Result<Subspace<F>> {
        let f = &self.field;
        if f.characteristic() != 0 {
            return Err(Error::UnsupportedField(f.characteristic()));
        }
        let n = self.dim();
        let g = self.killing_form();
        let d = self.derived_algebra();
        let rows = d
            .basis()
            .iter()
            .map(|dv| {
                (0..n)
                    .map(|i| {
                        let mut s = f.zero();
                        for (j, x) in dv.iter().enumerate() {
                            if !f.is_zero(x) {
                                f.add_mul(&mut s, &g[i][j], x);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(null_space(f, rows, n))
    }

    /// Radical with its defining properties checked: a solvable ideal with semisimple quotient.
    pub fn verified_radical(&self) -> Result<Subspace<F>> {
        let r = self.killing_radical()?;
        if !self.is_ideal(&r) {
            return Err(Error::Verification("radical is not an ideal".into()));
        }
        if !self.restrict(&r)?.is_solvable() {
            return Err(Error::Verification("radical is not solvable".into()));
        }
        if self.quotient(&r)?.killing_radical()?.dim() != 0 {
            return Err(Error::Verification("quotient by the radical is not semisimple".into()));
        }
        Ok(r)
    }

    pub fn report(&self) -> Result<LieReport> {
        let (radical_dim, semisimple_dim) = if self.field.characteristic() == 0 {
            let r = self.verified_radical()?;
            (Some(r.dim()), Some(self.dim() - r.dim()))
        } else {
            (None, None)
        };
        Ok(LieReport {
            dim: self.dim(),
            derived_dims: self.derived_series(),
            lcs_dims: self.lower_central_series(),
            solvable: self.is_solvable(),
            nilpotent: self.is_nilpotent(),
            abelian: self.is_abelian(),
            strongly_solvable: self.is_strongly_solvable(),
            radical_dim,
            semisimple_dim,
        })
    }
}

/// Solve Σ_i x_i rows[i] = target for x (rows independent).
fn solve_in_basis<F: Field>(f: &F, rows: &[Vec<F::Elem>], target: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let m = rows.len();
    let n = target.len();
    // augmented system: columns are rows[i], right side is target; solve via null space of [A | -t]
    let eqs: Vec<Vec<F::Elem>> = (0..n)
        .map(|r| {
            let mut e: Vec<F::Elem> = rows.iter().map(|row| row[r].clone()).collect();
            e.push(f.neg(&target[r]));
            e
        })
        .collect();
    let ns = null_space(f, eqs, m + 1);
    let v = ns
        .basis()
        .iter()
        .find(|v| !f.is_zero(&v[m]))
        .ok_or_else(|| Error::Verification("target is outside the span".into()))?;
    let s = f.inv(&v[m]);
    Ok(v[..m].iter().map(|x| f.mul(x, &s)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub dim: usize,
    pub derived_dims: Vec<usize>,
    pub lcs_dims: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub abelian: bool,
    pub strongly_solvable: bool,
    pub radical_dim: Option<usize>,
    pub semisimple_dim: Option<usize>,
}
