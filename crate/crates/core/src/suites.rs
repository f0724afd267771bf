//! Seeded property suites with deterministic parallel execution and greedy shrinking.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{MonomialAlgebra, SubalgebraPair};
use crate::complex::CochainComplex;
use crate::dualext::DualExtension;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::fundgroup::verify_pullback;
use crate::lie::{bracket_raw, brackets_land_in, LiePresentation};
use crate::parse::{write_algebra, write_pair};
use crate::quiver::{Arrow, Path, Quiver};
use crate::radzero::cross_check;
use crate::relative::RelativeHh1;

pub const DEFAULT_SEED: u64 = 20240611;

/// Basis bound for generated algebras; keeps single cases fast.
const RANDOM_DIM_LIMIT: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    #[serde(rename = "jacobi")]
    Jacobi,
    #[serde(rename = "theoremA")]
    TheoremA,
    #[serde(rename = "theoremB")]
    TheoremB,
    #[serde(rename = "dualmain")]
    DualMain,
    #[serde(rename = "contracted")]
    Contracted,
    #[serde(rename = "radzero")]
    Radzero,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Jacobi,
        Suite::TheoremA,
        Suite::TheoremB,
        Suite::DualMain,
        Suite::Contracted,
        Suite::Radzero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::TheoremA => "theoremA",
            Suite::TheoremB => "theoremB",
            Suite::DualMain => "dualmain",
            Suite::Contracted => "contracted",
            Suite::Radzero => "radzero",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Validation(format!("unknown suite '{s}', expected one of {}", names.join(", ")))
            })
    }
}

/// A quiver with monomial relations, arrows named a0, a1, … and vertices 1..=n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RawAlgebra {
    pub vertices: u32,
    pub arrows: Vec<(u32, u32)>,
    pub relations: Vec<Vec<usize>>,
}

impl RawAlgebra {
    pub fn quiver(&self) -> Quiver {
        Quiver::new(
            (1..=self.vertices).collect(),
            self.arrows
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| Arrow::new(format!("a{i}"), s, t))
                .collect(),
        )
        .expect("generated quiver is valid")
    }

    pub fn build(&self, name: &str, limit: usize) -> Result<MonomialAlgebra> {
        let q = self.quiver();
        let rels = self
            .relations
            .iter()
            .map(|r| Path::from_arrows(&q, r.clone()))
            .collect::<Result<Vec<_>>>()?;
        MonomialAlgebra::with_limit(name, q, rels, limit)
    }

    fn without_arrow(&self, a: usize) -> RawAlgebra {
        let shift = |x: usize| if x > a { x - 1 } else { x };
        RawAlgebra {
            vertices: self.vertices,
            arrows: self.arrows.iter().enumerate().filter(|&(i, _)| i != a).map(|(_, &e)| e).collect(),
            relations: self
                .relations
                .iter()
                .filter(|r| !r.contains(&a))
                .map(|r| r.iter().map(|&x| shift(x)).collect())
                .collect(),
        }
    }

    fn without_relation(&self, k: usize) -> RawAlgebra {
        let mut out = self.clone();
        out.relations.remove(k);
        out
    }

    fn has_loop(&self) -> bool {
        self.arrows.iter().any(|&(s, t)| s == t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Instance {
    Algebra(RawAlgebra),
    Pair { algebra: RawAlgebra, sub: Vec<usize> },
    Dual { b: RawAlgebra, a: RawAlgebra },
}

impl Instance {
    fn pair(&self) -> Result<SubalgebraPair> {
        match self {
            Instance::Pair { algebra, sub } => {
                SubalgebraPair::from_arrow_indices(algebra.build("A", RANDOM_DIM_LIMIT)?, "B", sub)
            }
            _ => Err(Error::Validation("instance is not a pair".into())),
        }
    }

    /// Readable text form; pairs and algebras use the input format.
    pub fn to_text(&self) -> String {
        let alg = |r: &RawAlgebra, name: &str| match r.build(name, RANDOM_DIM_LIMIT) {
            Ok(a) => write_algebra(&a),
            Err(e) => format!("# {e}\n{r:?}\n"),
        };
        match self {
            Instance::Algebra(r) => alg(r, "A"),
            Instance::Pair { .. } => match self.pair() {
                Ok(p) => write_pair(&p),
                Err(e) => format!("# {e}\n{self:?}\n"),
            },
            Instance::Dual { b, a } => format!("{}---\n{}", alg(b, "B"), alg(a, "A")),
        }
    }

    fn shrink_candidates(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        match self {
            Instance::Algebra(r) => {
                for a in 0..r.arrows.len() {
                    out.push(Instance::Algebra(r.without_arrow(a)));
                }
                for k in 0..r.relations.len() {
                    out.push(Instance::Algebra(r.without_relation(k)));
                }
            }
            Instance::Pair { algebra, sub } => {
                for a in 0..algebra.arrows.len() {
                    let sub = sub
                        .iter()
                        .filter(|&&x| x != a)
                        .map(|&x| if x > a { x - 1 } else { x })
                        .collect();
                    out.push(Instance::Pair {
                        algebra: algebra.without_arrow(a),
                        sub,
                    });
                }
                for k in 0..algebra.relations.len() {
                    out.push(Instance::Pair {
                        algebra: algebra.without_relation(k),
                        sub: sub.clone(),
                    });
                }
                for k in 0..sub.len() {
                    let mut s = sub.clone();
                    s.remove(k);
                    out.push(Instance::Pair {
                        algebra: algebra.clone(),
                        sub: s,
                    });
                }
            }
            Instance::Dual { b, a } => {
                for x in 0..b.arrows.len() {
                    out.push(Instance::Dual {
                        b: b.without_arrow(x),
                        a: a.clone(),
                    });
                }
                for x in 0..a.arrows.len() {
                    out.push(Instance::Dual {
                        b: b.clone(),
                        a: a.without_arrow(x),
                    });
                }
                for k in 0..b.relations.len() {
                    out.push(Instance::Dual {
                        b: b.without_relation(k),
                        a: a.clone(),
                    });
                }
                for k in 0..a.relations.len() {
                    out.push(Instance::Dual {
                        b: b.clone(),
                        a: a.without_relation(k),
                    });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Skip(String),
    Fail(String),
}

fn outcome(r: Result<bool>, what: &str) -> Outcome {
    match r {
        Ok(true) => Outcome::Pass,
        Ok(false) => Outcome::Fail(what.to_string()),
        Err(Error::TooLarge(n)) => Outcome::Skip(format!("basis exceeds {n}")),
        Err(Error::NotFiniteDimensional(m)) => Outcome::Skip(m),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

/// Random quiver with monomial relations, finite dimensional with basis ≤ RANDOM_DIM_LIMIT.
pub fn random_algebra(rng: &mut ChaCha8Rng, max_vertices: u32, max_arrows: usize, loops: bool, directed: bool) -> RawAlgebra {
    let n = rng.gen_range(1..=max_vertices);
    random_algebra_on(rng, n, max_arrows, loops, directed, false)
}

/// With `connected`, a random directed spanning tree comes first and `max_arrows` more are added.
pub fn random_algebra_on(
    rng: &mut ChaCha8Rng,
    n: u32,
    max_arrows: usize,
    loops: bool,
    directed: bool,
    connected: bool,
) -> RawAlgebra {
    let m = rng.gen_range(0..=max_arrows);
    let mut arrows = Vec::new();
    if connected {
        for v in 2..=n {
            arrows.push((rng.gen_range(1..v), v));
        }
    }
    for _ in 0..m {
        let (s, t) = if directed {
            if n < 2 {
                break;
            }
            let s = rng.gen_range(1..n);
            (s, rng.gen_range(s + 1..=n))
        } else {
            let s = rng.gen_range(1..=n);
            let t = if loops && rng.gen_bool(0.15) { s } else { rng.gen_range(1..=n) };
            if !loops && s == t {
                continue;
            }
            (s, t)
        };
        arrows.push((s, t));
    }
    let mut raw = RawAlgebra {
        vertices: n,
        arrows,
        relations: Vec::new(),
    };
    let two_paths: Vec<Vec<usize>> = (0..raw.arrows.len())
        .flat_map(|x| (0..raw.arrows.len()).map(move |y| vec![x, y]))
        .filter(|p| raw.arrows[p[0]].1 == raw.arrows[p[1]].0)
        .collect();
    for p in &two_paths {
        if rng.gen_bool(0.3) {
            raw.relations.push(p.clone());
        }
    }
    for _ in 0..2 {
        if let Some(p) = two_paths.choose(rng) {
            let ends = raw.arrows[p[1]].1;
            let next: Vec<usize> = (0..raw.arrows.len()).filter(|&z| raw.arrows[z].0 == ends).collect();
            if let Some(&z) = next.choose(rng) {
                raw.relations.push(vec![p[0], p[1], z]);
            }
        }
    }
    loop {
        match raw.build("A", RANDOM_DIM_LIMIT) {
            Ok(_) => return raw,
            Err(_) => {
                let missing: Vec<&Vec<usize>> = two_paths.iter().filter(|p| !raw.relations.contains(p)).collect();
                match missing.choose(rng) {
                    Some(&p) => raw.relations.push(p.clone()),
                    None => unreachable!("with every 2-path a relation the basis has at most n + m paths"),
                }
            }
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
    (0..m).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Complement has no parallel arrows and at most one loop per vertex.
fn simple_complement(inst: &Instance) -> bool {
    let Instance::Pair { algebra, sub } = inst else { return false };
    let mut seen = BTreeMap::new();
    for (i, e) in algebra.arrows.iter().enumerate() {
        if !sub.contains(&i) {
            *seen.entry(*e).or_insert(0) += 1;
        }
    }
    seen.values().all(|&c| c <= 1)
}

fn random_pair(rng: &mut ChaCha8Rng, loops: bool) -> Instance {
    let algebra = random_algebra(rng, 6, 8, loops, false);
    let sub = random_subset(rng, algebra.arrows.len());
    Instance::Pair { algebra, sub }
}

/// Draws for the theorem suites, retried until the complement hypothesis holds.
fn random_theorem_pair(rng: &mut ChaCha8Rng, loops: bool) -> Instance {
    let mut last = random_pair(rng, loops);
    for _ in 0..50 {
        if simple_complement(&last) {
            break;
        }
        last = random_pair(rng, loops);
    }
    last
}

pub fn generate(suite: Suite, rng: &mut ChaCha8Rng) -> Instance {
    match suite {
        Suite::Jacobi => Instance::Algebra(random_algebra(rng, 5, 7, true, false)),
        Suite::TheoremA => random_theorem_pair(rng, true),
        Suite::TheoremB => random_theorem_pair(rng, false),
        Suite::DualMain => {
            let n = rng.gen_range(2..=5);
            let b = random_algebra_on(rng, n, 3, false, true, true);
            let a = random_algebra_on(rng, n, 5, false, true, false);
            Instance::Dual { b, a }
        }
        Suite::Contracted | Suite::Radzero => random_pair(rng, true),
    }
}

fn check_jacobi(raw: &RawAlgebra) -> Result<bool> {
    let a = raw.build("A", RANDOM_DIM_LIMIT)?;
    let c = CochainComplex::new(&a, &Rationals);
    let hh = c.hh1()?;
    let labels = (0..hh.dim()).map(|k| format!("h{k}")).collect();
    let lie = LiePresentation::from_subquotient(&hh, labels, |x, y| bracket_raw(&c, x, y))?;
    let ker = c.ker_d1();
    let im = c.im_d0();
    Ok(c.d1_after_d0_is_zero()
        && c.preserves_degree()
        && lie.is_antisymmetric()
        && lie.satisfies_jacobi()
        && brackets_land_in(&c, &ker, &ker, &ker)
        && brackets_land_in(&c, &ker, &im, &im))
}

fn check_theorem_a(inst: &Instance) -> Outcome {
    if !simple_complement(inst) {
        return Outcome::Skip("complement has parallel arrows or two loops at a vertex".into());
    }
    outcome(
        (|| {
            let pair = inst.pair()?;
            Ok(RelativeHh1::new(&pair, &Rationals)?.lie()?.is_solvable())
        })(),
        "relative HH¹ is not solvable",
    )
}

fn check_theorem_b(inst: &Instance) -> Outcome {
    let Instance::Pair { algebra, .. } = inst else { return Outcome::Skip("not a pair".into()) };
    if algebra.has_loop() {
        return Outcome::Skip("quiver has a loop".into());
    }
    if !simple_complement(inst) {
        return Outcome::Skip("complement is not a simple directed graph".into());
    }
    outcome(
        (|| {
            let pair = inst.pair()?;
            for p in [2, 3] {
                let f = PrimeField::new(p)?;
                if !RelativeHh1::new(&pair, &f)?.lie()?.is_strongly_solvable() {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
        "relative HH¹ is not strongly solvable over 𝔽₂ or 𝔽₃",
    )
}

fn check_dualmain(b: &RawAlgebra, a: &RawAlgebra) -> Outcome {
    let r = (|| {
        let bb = b.build("B", RANDOM_DIM_LIMIT)?;
        let aa = a.build("A", RANDOM_DIM_LIMIT)?;
        let de = DualExtension::new(&bb, &aa)?;
        if !de.components_agree() {
            return Ok(None);
        }
        Ok(Some(de.analyze(&Rationals)?.report()?.checks.all()))
    })();
    match r {
        Ok(None) => Outcome::Skip("arrows of A join components of Q_B".into()),
        Ok(Some(ok)) => outcome(Ok(ok), "dual extension check failed"),
        Err(e) => outcome(Err(e), ""),
    }
}

fn check_contracted(inst: &Instance) -> Result<bool> {
    let pair = inst.pair()?;
    let r = verify_pullback(&pair, &Rationals, &BTreeMap::new(), None)?;
    Ok(r.pullback_checks.all())
}

fn check_radzero(inst: &Instance) -> Outcome {
    let Instance::Pair { algebra, sub } = inst else { return Outcome::Skip("not a pair".into()) };
    let q = algebra.quiver();
    let r = (|| {
        let a = MonomialAlgebra::radical_square_zero("A", q)?;
        let pair = SubalgebraPair::from_arrow_indices(a, "B", sub)?;
        Ok(cross_check(&pair)?.1.is_ok())
    })();
    outcome(r, "closed form disagrees with the generic computation")
}

/// Runs the suite's property on one instance.
pub fn check(suite: Suite, inst: &Instance) -> Outcome {
    match (suite, inst) {
        (Suite::Jacobi, Instance::Algebra(r)) => outcome(check_jacobi(r), "axiom check failed"),
        (Suite::TheoremA, _) => check_theorem_a(inst),
        (Suite::TheoremB, _) => check_theorem_b(inst),
        (Suite::DualMain, Instance::Dual { b, a }) => check_dualmain(b, a),
        (Suite::Contracted, Instance::Pair { .. }) => outcome(check_contracted(inst), "pullback check failed"),
        (Suite::Radzero, _) => check_radzero(inst),
        _ => Outcome::Skip("instance does not fit the suite".into()),
    }
}

/// Greedy deletion of arrows, relations and subalgebra arrows while the case still fails.
pub fn minimize(suite: Suite, inst: &Instance) -> Instance {
    let mut cur = inst.clone();
    'outer: loop {
        for cand in cur.shrink_candidates() {
            if matches!(check(suite, &cand), Outcome::Fail(_)) {
                cur = cand;
                continue 'outer;
            }
        }
        return cur;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: usize,
    pub message: String,
    pub counterexample: String,
    pub original: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub results: Vec<CaseReport>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn summarize(suite: Suite, seed: u64, instances: Vec<Instance>) -> Summary {
    let outcomes: Vec<Outcome> = instances.par_iter().map(|i| check(suite, i)).collect();
    let failures: Vec<Failure> = outcomes
        .par_iter()
        .enumerate()
        .filter_map(|(k, o)| match o {
            Outcome::Fail(m) => Some(Failure {
                case: k,
                message: m.clone(),
                counterexample: minimize(suite, &instances[k]).to_text(),
                original: instances[k].to_text(),
            }),
            _ => None,
        })
        .collect();
    let count = |f: fn(&Outcome) -> bool| outcomes.iter().filter(|o| f(o)).count();
    Summary {
        suite,
        seed,
        cases: outcomes.len(),
        passed: count(|o| matches!(o, Outcome::Pass)),
        skipped: count(|o| matches!(o, Outcome::Skip(_))),
        failed: failures.len(),
        results: outcomes
            .into_iter()
            .enumerate()
            .map(|(case, outcome)| CaseReport { case, outcome })
            .collect(),
        failures,
    }
}

/// Runs `cases` seeded random instances. The radzero suite ignores `cases` and `seed`
/// and runs its exhaustive enumeration instead.
pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> Summary {
    let instances: Vec<Instance> = match suite {
        Suite::Radzero => exhaustive_radzero_pairs(4, 5),
        _ => (0..cases).map(|k| generate(suite, &mut case_rng(seed, k))).collect(),
    };
    summarize(suite, seed, instances)
}

/// All pairs (quiver, arrow subset) with at most `max_v` vertices and `max_a` arrows, one per
/// isomorphism class of arrow multisets colored by membership in the subset.
pub fn exhaustive_radzero_pairs(max_v: u32, max_a: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=max_v {
        let types: Vec<(u32, u32, bool)> = (1..=n)
            .flat_map(|s| (1..=n).flat_map(move |t| [(s, t, false), (s, t, true)]))
            .collect();
        let perms = permutations(n);
        let mut stack: Vec<usize> = Vec::new();
        enumerate_multisets(types.len(), max_a, 0, &mut stack, &mut |ms| {
            let edges: Vec<(u32, u32, bool)> = ms.iter().map(|&k| types[k]).collect();
            if is_canonical(&edges, &perms) {
                let algebra = RawAlgebra {
                    vertices: n,
                    arrows: edges.iter().map(|&(s, t, _)| (s, t)).collect(),
                    relations: Vec::new(),
                };
                let sub = (0..edges.len()).filter(|&i| edges[i].2).collect();
                out.push(Instance::Pair { algebra, sub });
            }
        });
    }
    out
}

fn enumerate_multisets(ntypes: usize, max: usize, from: usize, stack: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    f(stack);
    if stack.len() == max {
        return;
    }
    for k in from..ntypes {
        stack.push(k);
        enumerate_multisets(ntypes, max, k, stack, f);
        stack.pop();
    }
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=n).collect();
    heap_permute(&mut cur, n as usize, &mut out);
    out
}

fn heap_permute(v: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(v.clone());
        return;
    }
    for i in 0..k {
        heap_permute(v, k - 1, out);
        if k.is_multiple_of(2) {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

fn is_canonical(edges: &[(u32, u32, bool)], perms: &[Vec<u32>]) -> bool {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    for p in perms {
        let mut image: Vec<(u32, u32, bool)> = edges
            .iter()
            .map(|&(s, t, b)| (p[s as usize - 1], p[t as usize - 1], b))
            .collect();
        image.sort_unstable();
        if image < sorted {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = generate(Suite::TheoremA, &mut case_rng(7, 3));
        let b = generate(Suite::TheoremA, &mut case_rng(7, 3));
        assert_eq!(a, b);
        assert_ne!(a, generate(Suite::TheoremA, &mut case_rng(7, 4)));
    }

    #[test]
    fn canonical_enumeration_counts() {
        // one vertex, up to two arrows: loops colored in/out give 1 + 2 + 3 multisets
        assert_eq!(exhaustive_radzero_pairs(1, 2).len(), 6);
        // two vertices with a single arrow: none, and (loop or 1→2) × color up to swapping
        let two: Vec<_> = exhaustive_radzero_pairs(2, 1).into_iter().filter(|i| matches!(i, Instance::Pair { algebra, .. } if algebra.vertices == 2)).collect();
        assert_eq!(two.len(), 5);
    }

    #[test]
    fn violating_instance_is_skipped() {
        let algebra = RawAlgebra {
            vertices: 2,
            arrows: vec![(1, 2), (1, 2), (2, 1)],
            relations: vec![vec![2, 0], vec![2, 1]],
        };
        let inst = Instance::Pair { algebra, sub: vec![2] };
        assert!(matches!(check(Suite::TheoremA, &inst), Outcome::Skip(_)));
    }

    #[test]
    fn minimize_keeps_failure() {
        let algebra = RawAlgebra {
            vertices: 2,
            arrows: vec![(1, 2), (1, 2), (2, 1), (1, 1)],
            relations: vec![vec![2, 0], vec![2, 1], vec![3, 3]],
        };
        let inst = Instance::Pair { algebra, sub: vec![2] };
        // notsolv-like instance has HH¹(A|B) solvable; the check passes so minimize is a no-op
        assert_eq!(minimize(Suite::TheoremA, &inst), inst);
    }
}
