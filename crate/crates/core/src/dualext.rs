//! Dual extensions Λ(B, A^op) of directed monomial algebras, the spaces 𝒥 and ℐ, and the
//! exact-sequence and degree-one checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{MonomialAlgebra, SubalgebraPair};
use crate::complex::{center, CochainComplex, Stratum};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::{bracket_raw, brackets_land_in, LieReport, LiePresentation};
use crate::linalg::{Subquotient, Subspace};
use crate::quiver::{Arrow, Path, Quiver};
use crate::relative::RelativeHh1;

pub const OP_SUFFIX: &str = "*";

#[derive(Clone, Debug)]
pub struct DualExtension {
    pair: SubalgebraPair,
    b: MonomialAlgebra,
    aop_arrows: Vec<usize>,
    mixed: Vec<Path>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Trivial,
    PureB,
    PureAop,
    Mixed,
}

impl DualExtension {
    pub fn new(b: &MonomialAlgebra, a: &MonomialAlgebra) -> Result<Self> {
        for (alg, what) in [(b, "B"), (a, "A")] {
            if !alg.is_directed() {
                return Err(Error::NotDirected(format!(
                    "{what} = {} has an arrow that does not increase the vertex id",
                    alg.name()
                )));
            }
        }
        if b.quiver().vertices() != a.quiver().vertices() {
            return Err(Error::VertexMismatch(format!(
                "{} and {} have different vertex sets",
                b.name(),
                a.name()
            )));
        }
        let nb = b.quiver().arrows().len();
        let mut arrows: Vec<Arrow> = b.quiver().arrows().to_vec();
        for x in a.quiver().arrows() {
            arrows.push(Arrow::new(format!("{}{OP_SUFFIX}", x.name), x.target, x.source));
        }
        let q = Quiver::new(b.quiver().vertices().to_vec(), arrows)
            .map_err(|e| Error::Validation(format!("arrow names of B and A^op clash: {e}")))?;
        let aop_arrows: Vec<usize> = (nb..q.arrows().len()).collect();
        let mut relations: Vec<Path> = b.relations().to_vec();
        relations.extend(a.relations().iter().map(|r| r.reversed().remap(|i| nb + i)));
        let mut mixed = Vec::new();
        for &s in &aop_arrows {
            for t in 0..nb {
                if q.arrow(s).target == q.arrow(t).source {
                    mixed.push(Path::from_arrows(&q, vec![s, t])?);
                }
            }
        }
        relations.extend(mixed.iter().cloned());
        let lambda = MonomialAlgebra::new(format!("Λ({},{}^op)", b.name(), a.name()), q, relations)?;
        let pair = SubalgebraPair::from_arrow_indices(lambda, b.name(), &(0..nb).collect::<Vec<_>>())?;
        let de = DualExtension {
            pair,
            b: b.clone(),
            aop_arrows,
            mixed,
        };
        if de.pair.sub().dim() != b.dim() {
            return Err(Error::Verification("B is not a subalgebra of Λ with the same basis".into()));
        }
        for p in de.lambda().basis() {
            let mut seen_aop = false;
            for &x in p.arrows() {
                if de.is_aop(x) {
                    seen_aop = true;
                } else if seen_aop {
                    return Err(Error::Verification(format!(
                        "basis path {} applies an arrow of B after one of A^op",
                        de.lambda().path_label(p)
                    )));
                }
            }
        }
        Ok(de)
    }

    pub fn lambda(&self) -> &MonomialAlgebra {
        self.pair.ambient()
    }
    pub fn b(&self) -> &MonomialAlgebra {
        &self.b
    }
    /// Λ with its subalgebra B.
    pub fn pair(&self) -> &SubalgebraPair {
        &self.pair
    }
    pub fn mixed_relations(&self) -> &[Path] {
        &self.mixed
    }
    pub fn is_aop(&self, arrow: usize) -> bool {
        self.aop_arrows.binary_search(&arrow).is_ok()
    }

    /// Q_Λ and Q_B have the same connected components. Without this, dim Im(δ⁰_Λ)|₁ exceeds
    /// dim Im(δ⁰_B) and the exact sequence fails.
    pub fn components_agree(&self) -> bool {
        self.lambda().quiver().component_count() == self.b.quiver().component_count()
    }

    fn kind(&self, p: &Path) -> Kind {
        if p.is_trivial() {
            return Kind::Trivial;
        }
        let aops = p.arrows().iter().filter(|&&x| self.is_aop(x)).count();
        match aops {
            0 => Kind::PureB,
            n if n == p.len() => Kind::PureAop,
            _ => Kind::Mixed,
        }
    }

    pub fn analyze<F: Field>(&self, field: &F) -> Result<JiAnalysis<'_, F>> {
        JiAnalysis::new(self, field)
    }
}

/// The subspaces 𝒥′, Ker δ¹_{Λ|B}, 𝒥, ℐ of k(Q₁//𝓑) for Λ.
pub struct JiAnalysis<'a, F: Field> {
    de: &'a DualExtension,
    complex: CochainComplex<'a, F>,
    kernel: Subspace<F>,
    j_prime: Subspace<F>,
    ker_rel: Subspace<F>,
    j: Subspace<F>,
    i: Subspace<F>,
}

impl<'a, F: Field> JiAnalysis<'a, F> {
    fn new(de: &'a DualExtension, field: &F) -> Result<Self> {
        let lambda = de.lambda();
        let complex = CochainComplex::new(lambda, field);
        let kernel = complex.ker_d1();
        let n = complex.dim1();
        let basis = lambda.basis();
        let b_mixed: Vec<usize> = (0..n)
            .filter(|&i| {
                let pp = complex.basis1()[i];
                !de.is_aop(pp.left) && de.kind(&basis[pp.right]) == Kind::Mixed
            })
            .collect();
        let aop_left: Vec<usize> = (0..n).filter(|&i| de.is_aop(complex.basis1()[i].left)).collect();
        let j_prime = Subspace::coordinate(field, n, b_mixed).intersection(&kernel);
        let ker_rel = Subspace::coordinate(field, n, aop_left).intersection(&kernel);
        let j = j_prime.sum(&ker_rel);
        if j.dim() != j_prime.dim() + ker_rel.dim() {
            return Err(Error::Verification("𝒥′ and Ker δ¹_{Λ|B} intersect".into()));
        }
        let g0 = complex.degrees(Stratum::Vertices);
        let high: Vec<usize> = (0..g0.len()).filter(|&k| g0[k] >= 2).collect();
        let i = complex.d0().select_columns(&high).image();
        Ok(JiAnalysis {
            de,
            complex,
            kernel,
            j_prime,
            ker_rel,
            j,
            i,
        })
    }

    pub fn complex(&self) -> &CochainComplex<'a, F> {
        &self.complex
    }
    pub fn j(&self) -> &Subspace<F> {
        &self.j
    }
    pub fn i(&self) -> &Subspace<F> {
        &self.i
    }
    pub fn j_prime(&self) -> &Subspace<F> {
        &self.j_prime
    }
    pub fn ker_rel(&self) -> &Subspace<F> {
        &self.ker_rel
    }

    pub fn j_mod_i(&self) -> Result<Subquotient<F>> {
        Subquotient::new(self.j.clone(), self.i.clone())
    }

    /// No arrow of A^op is parallel to a nontrivial path of B and vice versa.
    pub fn no_cross_pairs(&self) -> bool {
        let basis = self.de.lambda().basis();
        self.complex.basis1().iter().all(|pp| {
            let k = self.de.kind(&basis[pp.right]);
            if self.de.is_aop(pp.left) {
                k != Kind::PureB
            } else {
                k != Kind::PureAop
            }
        })
    }

    /// Ker δ¹_Λ is the direct sum of its parts supported on B-arrows and on A^op-arrows.
    pub fn kernel_splits(&self) -> bool {
        let field = self.complex.field();
        let n = self.complex.dim1();
        let b_left: Vec<usize> = (0..n).filter(|&i| !self.de.is_aop(self.complex.basis1()[i].left)).collect();
        let kb = Subspace::coordinate(field, n, b_left).intersection(&self.kernel);
        kb.dim() + self.ker_rel.dim() == self.kernel.dim()
    }

    pub fn report(&self) -> Result<JiReport> {
        let field = self.complex.field();
        let lambda = self.de.lambda();
        let b = self.de.b();
        let hh1_lambda = self.complex.hh1()?;
        let bc = CochainComplex::new(b, field);
        let hh1_b = bc.hh1()?;
        let jmi = self.j_mod_i()?;
        let i_in_j = self.j.contains_subspace(&self.i);
        let im_deg1 = {
            let g0 = self.complex.degrees(Stratum::Vertices);
            let ones: Vec<usize> = (0..g0.len()).filter(|&k| g0[k] == 1).collect();
            self.complex.d0().select_columns(&ones).rank()
        };
        let exact_sequence = hh1_lambda.dim() == jmi.dim() + hh1_b.dim();
        let j_ideal = brackets_land_in(&self.complex, &self.kernel, &self.j, &self.j);
        let rel = RelativeHh1::new(self.de.pair(), field)?;
        let split = self.degree_one_split(&bc, &rel)?;
        let j_mod_i_lie = if brackets_land_in(&self.complex, &self.j, &self.i, &self.i) {
            let labels = (0..jmi.dim()).map(|k| format!("j{k}")).collect();
            let l = LiePresentation::from_subquotient(&jmi, labels, |x, y| bracket_raw(&self.complex, x, y))?;
            Some(l.report()?)
        } else {
            None
        };
        let graded = |m: BTreeMap<i64, usize>| m;
        Ok(JiReport {
            components_agree: self.de.components_agree(),
            lambda_dim: lambda.dim(),
            lambda_arrows: lambda.quiver().arrows().iter().map(|a| a.name.clone()).collect(),
            mixed_relations: self.de.mixed_relations().iter().map(|p| lambda.path_label(p)).collect(),
            dim_j_prime: self.j_prime.dim(),
            dim_ker_rel: self.ker_rel.dim(),
            dim_j: self.j.dim(),
            dim_i: self.i.dim(),
            dim_j_mod_i: jmi.dim(),
            dim_hh0_lambda: center(lambda, field).dim(),
            dim_hh1_lambda: hh1_lambda.dim(),
            dim_hh1_b: hh1_b.dim(),
            dim_hh1_rel: rel.dim(),
            graded_hh1_lambda: graded(self.complex.graded_hh1_dims()),
            graded_hh1_b: graded(bc.graded_hh1_dims()),
            graded_hh1_rel: graded(rel.graded_dims()),
            hh1_lambda_lie: LiePresentation::from_subquotient(
                &hh1_lambda,
                (0..hh1_lambda.dim()).map(|k| format!("h{k}")).collect(),
                |x, y| bracket_raw(&self.complex, x, y),
            )?
            .report()?,
            j_mod_i_lie,
            checks: JiChecks {
                no_cross_pairs: self.no_cross_pairs(),
                kernel_splits: self.kernel_splits(),
                im_degree_one_matches_b: im_deg1 == bc.im_d0().dim(),
                i_in_j,
                j_ideal,
                exact_sequence,
                degree_one_additive: split.additive,
                degree_one_brackets_vanish: split.brackets_vanish,
            },
            degree_one: split,
        })
    }

    fn degree_one_split(&self, bc: &CochainComplex<'_, F>, rel: &RelativeHh1<'_, F>) -> Result<DegreeOneSplit> {
        let field = self.complex.field();
        let n = self.complex.dim1();
        let lam = self.complex.graded_hh1_dims().get(&1).copied().unwrap_or(0);
        let b1 = bc.graded_hh1_dims().get(&1).copied().unwrap_or(0);
        let r1 = rel.graded_dims().get(&1).copied().unwrap_or(0);
        // degree-one representatives of HH¹(B), pushed into Λ
        let gb = bc.degrees(Stratum::Arrows);
        let b_deg1 = Subspace::coordinate(field, bc.dim1(), (0..gb.len()).filter(|&k| gb[k] == 1));
        let b_sq = Subquotient::new(
            bc.ker_d1().intersection(&b_deg1),
            bc.im_d0().intersection(&b_deg1),
        )?;
        let pair = self.de.pair();
        let lift = |v: &[F::Elem]| -> Vec<F::Elem> {
            let mut out = crate::linalg::zero_vec(field, n);
            for (k, x) in v.iter().enumerate() {
                if field.is_zero(x) {
                    continue;
                }
                let pp = bc.basis1()[k];
                let path = pair.lift_path(&bc.algebra().basis()[pp.right]);
                let a = pair.sub_arrows()[pp.left];
                let bi = self.de.lambda().basis_index(&path).expect("B paths stay nonzero in Λ");
                out[self.complex.index1(a, bi).expect("parallel")] = x.clone();
            }
            out
        };
        let b_reps: Vec<Vec<F::Elem>> = b_sq.representatives().iter().map(|v| lift(v)).collect();
        let gl = self.complex.degrees(Stratum::Arrows);
        let l_deg1 = Subspace::coordinate(field, n, (0..gl.len()).filter(|&k| gl[k] == 1));
        let r_sq = Subquotient::new(rel.kernel().intersection(&l_deg1), rel.image().intersection(&l_deg1))?;
        let im = self.complex.im_d0();
        let brackets_vanish = b_reps.iter().all(|x| {
            r_sq.representatives().iter().all(|y| im.contains(&bracket_raw(&self.complex, x, y)))
        });
        Ok(DegreeOneSplit {
            hh1_lambda: lam,
            hh1_b: b1,
            hh1_rel: r1,
            additive: lam == b1 + r1,
            brackets_vanish,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeOneSplit {
    pub hh1_lambda: usize,
    pub hh1_b: usize,
    pub hh1_rel: usize,
    pub additive: bool,
    pub brackets_vanish: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JiChecks {
    pub no_cross_pairs: bool,
    pub kernel_splits: bool,
    pub im_degree_one_matches_b: bool,
    pub i_in_j: bool,
    pub j_ideal: bool,
    pub exact_sequence: bool,
    pub degree_one_additive: bool,
    pub degree_one_brackets_vanish: bool,
}

impl JiChecks {
    pub fn all(&self) -> bool {
        self.no_cross_pairs
            && self.kernel_splits
            && self.im_degree_one_matches_b
            && self.i_in_j
            && self.j_ideal
            && self.exact_sequence
            && self.degree_one_additive
            && self.degree_one_brackets_vanish
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JiReport {
    pub components_agree: bool,
    pub lambda_dim: usize,
    pub lambda_arrows: Vec<String>,
    pub mixed_relations: Vec<String>,
    pub dim_j_prime: usize,
    pub dim_ker_rel: usize,
    pub dim_j: usize,
    pub dim_i: usize,
    pub dim_j_mod_i: usize,
    pub dim_hh0_lambda: usize,
    pub dim_hh1_lambda: usize,
    pub dim_hh1_b: usize,
    pub dim_hh1_rel: usize,
    pub graded_hh1_lambda: BTreeMap<i64, usize>,
    pub graded_hh1_b: BTreeMap<i64, usize>,
    pub graded_hh1_rel: BTreeMap<i64, usize>,
    pub hh1_lambda_lie: LieReport,
    pub j_mod_i_lie: Option<LieReport>,
    pub degree_one: DegreeOneSplit,
    pub checks: JiChecks,
}
