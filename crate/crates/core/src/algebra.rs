//! Monomial algebras kQ/I, their path bases, parallel pairs, and subalgebra pairs.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver, VertexId};

/// Default cap on the number of basis paths.
pub const BASIS_LIMIT: usize = 5000;

#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    name: String,
    quiver: Quiver,
    relations: Vec<Path>,
    dropped: Vec<Path>,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl MonomialAlgebra {
    pub fn new(name: impl Into<String>, quiver: Quiver, relations: Vec<Path>) -> Result<Self> {
        Self::with_limit(name, quiver, relations, BASIS_LIMIT)
    }

    pub fn with_limit(
        name: impl Into<String>,
        quiver: Quiver,
        relations: Vec<Path>,
        limit: usize,
    ) -> Result<Self> {
        for r in &relations {
            if r.len() < 2 {
                return Err(Error::Validation(format!(
                    "relation {} has length {} < 2",
                    r.label(&quiver),
                    r.len()
                )));
            }
            if r.arrows().iter().any(|&a| a >= quiver.arrows().len()) {
                return Err(Error::Validation("relation uses an unknown arrow".into()));
            }
        }
        let (relations, dropped) = normalize_relations(&quiver, relations);
        let basis = enumerate_basis(&quiver, &relations, limit)?;
        let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(MonomialAlgebra {
            name: name.into(),
            quiver,
            relations,
            dropped,
            basis,
            index,
        })
    }

    /// The radical-square-zero algebra on a quiver: all paths of length 2 are relations.
    pub fn radical_square_zero(name: impl Into<String>, quiver: Quiver) -> Result<Self> {
        let mut rels = Vec::new();
        for (i, a) in quiver.arrows().iter().enumerate() {
            for (j, b) in quiver.arrows().iter().enumerate() {
                if a.target == b.source {
                    rels.push(Path::from_arrows(&quiver, vec![i, j])?);
                }
            }
        }
        Self::new(name, quiver, rels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    /// Minimal relations in canonical order.
    pub fn relations(&self) -> &[Path] {
        &self.relations
    }
    /// Input relations removed during normalization because a shorter relation sits inside them.
    pub fn dropped_relations(&self) -> &[Path] {
        &self.dropped
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis index of "first then second", if that path is nonzero in the algebra.
    pub fn compose(&self, first: &Path, second: &Path) -> Option<usize> {
        first.then(second).and_then(|p| self.basis_index(&p))
    }

    pub fn is_radical_square_zero(&self) -> bool {
        self.basis.iter().all(|p| p.len() <= 1)
    }

    pub fn is_directed(&self) -> bool {
        self.quiver.is_directed()
    }

    /// Opposite algebra: arrows reversed and renamed with `suffix`, relations reversed.
    pub fn opposite(&self, suffix: &str) -> Result<MonomialAlgebra> {
        let q = self.quiver.opposite(suffix);
        let rels = self.relations.iter().map(Path::reversed).collect();
        MonomialAlgebra::new(format!("{}^op", self.name), q, rels)
    }

    pub fn vertex_paths(&self) -> Vec<Path> {
        self.quiver.vertices().iter().map(|&v| Path::trivial(v)).collect()
    }

    pub fn arrow_paths(&self) -> Vec<Path> {
        (0..self.quiver.arrows().len())
            .map(|i| Path::arrow(&self.quiver, i))
            .collect()
    }

    /// Basis paths parallel to `p`, in basis order.
    pub fn parallel_basis(&self, p: &Path) -> impl Iterator<Item = usize> + '_ {
        let (s, t) = (p.source(), p.target());
        self.basis
            .iter()
            .enumerate()
            .filter(move |(_, q)| q.source() == s && q.target() == t)
            .map(|(i, _)| i)
    }

    /// All pairs `k//q` with `k` from `lefts` and `q` a parallel basis path; left order first, then basis order.
    pub fn parallel_pairs(&self, lefts: &[Path]) -> Vec<ParallelPair> {
        let mut out = Vec::new();
        for (li, l) in lefts.iter().enumerate() {
            for qi in self.parallel_basis(l) {
                out.push(ParallelPair {
                    left: li,
                    right: qi,
                });
            }
        }
        out
    }

    pub fn path_label(&self, p: &Path) -> String {
        p.label(&self.quiver)
    }
}

/// A pair `left//right`: `left` indexes the list of left paths it was built from,
/// `right` is a basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParallelPair {
    pub left: usize,
    pub right: usize,
}

fn normalize_relations(q: &Quiver, relations: Vec<Path>) -> (Vec<Path>, Vec<Path>) {
    let mut rels: Vec<Path> = Vec::new();
    for r in relations {
        if !rels.contains(&r) {
            rels.push(r);
        }
    }
    let (keep, dropped): (Vec<Path>, Vec<Path>) = rels
        .iter()
        .cloned()
        .partition(|r| !rels.iter().any(|s| s != r && r.contains_subpath(s)));
    let mut keep = keep;
    keep.sort_by(|a, b| a.canonical_cmp(b, q));
    (keep, dropped)
}

struct RelationIndex {
    set: HashSet<Vec<usize>>,
    lengths: Vec<usize>,
}

impl RelationIndex {
    fn new(relations: &[Path]) -> Self {
        let set: HashSet<Vec<usize>> = relations.iter().map(|r| r.arrows().to_vec()).collect();
        let mut lengths: Vec<usize> = relations.iter().map(Path::len).collect();
        lengths.sort_unstable();
        lengths.dedup();
        RelationIndex { set, lengths }
    }

    fn max_len(&self) -> usize {
        self.lengths.last().copied().unwrap_or(0)
    }

    /// Some relation is a suffix of `arrows`.
    fn has_suffix(&self, arrows: &[usize]) -> bool {
        self.lengths
            .iter()
            .take_while(|&&l| l <= arrows.len())
            .any(|&l| self.set.contains(&arrows[arrows.len() - l..]))
    }
}

/// All relation-avoiding paths, in canonical order.
///
/// Finiteness is decided exactly: with ℓ the largest relation length (at least 2), a basis
/// path extends forever iff the graph on basis paths of length ℓ−1, with an edge for each
/// admissible one-arrow extension followed by dropping the first arrow, has a cycle.
pub fn enumerate_basis(q: &Quiver, relations: &[Path], limit: usize) -> Result<Vec<Path>> {
    let rels = RelationIndex::new(relations);
    let ell = rels.max_len().max(2);
    let mut out_arrows: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (i, a) in q.arrows().iter().enumerate() {
        out_arrows.entry(a.source).or_default().push(i);
    }
    let extensions = |p: &[usize], end: VertexId| -> Vec<Vec<usize>> {
        out_arrows
            .get(&end)
            .map(|arrows| {
                arrows
                    .iter()
                    .filter_map(|&a| {
                        let mut ext = p.to_vec();
                        ext.push(a);
                        (!rels.has_suffix(&ext)).then_some(ext)
                    })
                    .collect()
            })
            .unwrap_or_default()
    };

    // Basis paths of length ℓ−1.
    let mut states: Vec<Vec<usize>> = (0..q.arrows().len()).map(|i| vec![i]).collect();
    for _ in 1..ell - 1 {
        let mut next = Vec::new();
        for s in &states {
            next.extend(extensions(s, q.arrow(*s.last().unwrap()).target));
        }
        if next.len() > limit {
            return Err(Error::TooLarge(limit));
        }
        states = next;
    }
    let state_index: HashMap<&[usize], usize> =
        states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let succ: Vec<Vec<usize>> = states
        .iter()
        .map(|s| {
            extensions(s, q.arrow(*s.last().unwrap()).target)
                .iter()
                .map(|e| state_index[&e[1..]])
                .collect()
        })
        .collect();
    if let Some(cycle_at) = find_cycle(&succ) {
        return Err(Error::NotFiniteDimensional(format!(
            "the path {} extends indefinitely without meeting a relation",
            Path::from_arrows(q, states[cycle_at].clone())
                .map(|p| p.label(q))
                .unwrap_or_default()
        )));
    }

    let mut basis: Vec<Path> = q.vertices().iter().map(|&v| Path::trivial(v)).collect();
    let mut level: Vec<Vec<usize>> = (0..q.arrows().len()).map(|i| vec![i]).collect();
    while !level.is_empty() {
        let mut paths: Vec<Path> = level
            .iter()
            .map(|a| Path::from_arrows(q, a.clone()).expect("extensions compose"))
            .collect();
        paths.sort_by(|a, b| a.canonical_cmp(b, q));
        basis.extend(paths);
        if basis.len() > limit {
            return Err(Error::TooLarge(limit));
        }
        let mut next = Vec::new();
        for p in &level {
            next.extend(extensions(p, q.arrow(*p.last().unwrap()).target));
        }
        level = next;
    }
    Ok(basis)
}

/// Some vertex lying on a directed cycle, if any.
fn find_cycle(succ: &[Vec<usize>]) -> Option<usize> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; succ.len()];
    for start in 0..succ.len() {
        if color[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        color[start] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return Some(w),
                    _ => {}
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// A monomial algebra A together with a monomial subalgebra B on the same vertices
/// whose arrows are a subset of A's arrows and whose relations are A's relations supported on them.
#[derive(Clone, Debug)]
pub struct SubalgebraPair {
    ambient: MonomialAlgebra,
    sub: MonomialAlgebra,
    /// ambient index of each sub arrow
    sub_arrows: Vec<usize>,
    in_sub: Vec<bool>,
}

impl SubalgebraPair {
    /// B generated by the named arrows of A, relations inherited.
    pub fn from_arrow_names<S: AsRef<str>>(
        ambient: MonomialAlgebra,
        name: impl Into<String>,
        names: &[S],
    ) -> Result<Self> {
        let q = ambient.quiver();
        let mut idx = Vec::new();
        for n in names {
            let i = q.arrow_index(n.as_ref()).ok_or_else(|| {
                Error::Validation(format!("subalgebra arrow {} is not an arrow of the algebra", n.as_ref()))
            })?;
            if idx.contains(&i) {
                return Err(Error::Validation(format!("subalgebra arrow {} listed twice", n.as_ref())));
            }
            idx.push(i);
        }
        Self::from_arrow_indices(ambient, name, &idx)
    }

    pub fn from_arrow_indices(
        ambient: MonomialAlgebra,
        name: impl Into<String>,
        arrows: &[usize],
    ) -> Result<Self> {
        let mut sub_arrows = arrows.to_vec();
        sub_arrows.sort_unstable();
        sub_arrows.dedup();
        let q = ambient.quiver();
        let subq = q.subquiver(&sub_arrows);
        let mut in_sub = vec![false; q.arrows().len()];
        for &i in &sub_arrows {
            in_sub[i] = true;
        }
        let mut pos = vec![usize::MAX; q.arrows().len()];
        for (k, &i) in sub_arrows.iter().enumerate() {
            pos[i] = k;
        }
        let rels = ambient
            .relations()
            .iter()
            .filter(|r| r.arrows().iter().all(|&a| in_sub[a]))
            .map(|r| r.remap(|a| pos[a]))
            .collect();
        let sub = MonomialAlgebra::new(name, subq, rels)?;
        Self::assemble(ambient, sub, sub_arrows, in_sub)
    }

    /// Pair from two separately built algebras; B's arrows are matched to A's by name.
    pub fn new(ambient: MonomialAlgebra, sub: MonomialAlgebra) -> Result<Self> {
        let (qa, qb) = (ambient.quiver(), sub.quiver());
        if qa.vertices() != qb.vertices() {
            return Err(Error::VertexMismatch(
                "subalgebra must have the same vertices as the algebra".into(),
            ));
        }
        let mut sub_arrows = Vec::new();
        for b in qb.arrows() {
            let i = qa
                .arrow_index(&b.name)
                .filter(|&i| qa.arrow(i).source == b.source && qa.arrow(i).target == b.target)
                .ok_or_else(|| {
                    Error::Validation(format!("arrow {} of the subalgebra is not an arrow of the algebra", b.name))
                })?;
            sub_arrows.push(i);
        }
        if sub_arrows.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation(
                "subalgebra arrows must follow the algebra's declaration order".into(),
            ));
        }
        let mut in_sub = vec![false; qa.arrows().len()];
        for &i in &sub_arrows {
            in_sub[i] = true;
        }
        let mut inherited: Vec<Path> = ambient
            .relations()
            .iter()
            .filter(|r| r.arrows().iter().all(|&a| in_sub[a]))
            .cloned()
            .collect();
        let mut given: Vec<Path> = sub.relations().iter().map(|r| r.remap(|a| sub_arrows[a])).collect();
        inherited.sort();
        given.sort();
        if inherited != given {
            return Err(Error::Validation(
                "subalgebra relations must be exactly the algebra's relations on the subalgebra arrows".into(),
            ));
        }
        Self::assemble(ambient, sub, sub_arrows, in_sub)
    }

    fn assemble(
        ambient: MonomialAlgebra,
        sub: MonomialAlgebra,
        sub_arrows: Vec<usize>,
        in_sub: Vec<bool>,
    ) -> Result<Self> {
        for p in sub.basis() {
            let lifted = p.remap(|a| sub_arrows[a]);
            if ambient.basis_index(&lifted).is_none() {
                return Err(Error::Validation(format!(
                    "subalgebra basis path {} lies in the ideal of the algebra",
                    sub.path_label(p)
                )));
            }
        }
        Ok(SubalgebraPair {
            ambient,
            sub,
            sub_arrows,
            in_sub,
        })
    }

    pub fn ambient(&self) -> &MonomialAlgebra {
        &self.ambient
    }
    pub fn sub(&self) -> &MonomialAlgebra {
        &self.sub
    }
    /// Ambient indices of B's arrows, increasing.
    pub fn sub_arrows(&self) -> &[usize] {
        &self.sub_arrows
    }
    pub fn is_sub_arrow(&self, i: usize) -> bool {
        self.in_sub[i]
    }
    /// Ambient indices of arrows outside B.
    pub fn complement_arrows(&self) -> Vec<usize> {
        (0..self.in_sub.len()).filter(|&i| !self.in_sub[i]).collect()
    }
    pub fn complement_quiver(&self) -> Quiver {
        self.ambient.quiver().subquiver(&self.complement_arrows())
    }
    /// A path of B as a path of A.
    pub fn lift_path(&self, p: &Path) -> Path {
        p.remap(|a| self.sub_arrows[a])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow;

    fn quiver(arrows: &[(&str, u32, u32)], n: u32) -> Quiver {
        Quiver::new(
            (1..=n).collect(),
            arrows.iter().map(|&(a, s, t)| Arrow::new(a, s, t)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn loop_needs_a_relation() {
        let q = quiver(&[("a", 1, 1)], 1);
        assert!(matches!(
            MonomialAlgebra::new("x", q.clone(), vec![]),
            Err(Error::NotFiniteDimensional(_))
        ));
        let r = Path::from_names(&q, &["a", "a"]).unwrap();
        let alg = MonomialAlgebra::new("x", q, vec![r]).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn long_relation_cycle_detection() {
        // a: 1→2, b: 2→1 with relation abab: basis is finite
        let q = quiver(&[("a", 1, 2), ("b", 2, 1)], 2);
        let r = Path::from_names(&q, &["a", "b", "a", "b"]).unwrap();
        let alg = MonomialAlgebra::new("x", q.clone(), vec![r]).unwrap();
        // e1 e2 a b ab ba aba bab baba bab a? -> babab contains abab
        assert_eq!(alg.dim(), 2 + 2 + 2 + 2 + 1);
        let r2 = Path::from_names(&q, &["a", "b", "a"]).unwrap();
        let alg2 = MonomialAlgebra::new("x", q, vec![r2]).unwrap();
        assert_eq!(alg2.dim(), 2 + 2 + 2 + 1);
    }

    #[test]
    fn normalization_drops_longer_relation() {
        let q = quiver(&[("a", 1, 2), ("b", 2, 3), ("c", 3, 4)], 4);
        let ab = Path::from_names(&q, &["a", "b"]).unwrap();
        let abc = Path::from_names(&q, &["a", "b", "c"]).unwrap();
        let alg = MonomialAlgebra::new("x", q, vec![abc.clone(), ab.clone()]).unwrap();
        assert_eq!(alg.relations(), &[ab]);
        assert_eq!(alg.dropped_relations(), &[abc]);
    }
}
