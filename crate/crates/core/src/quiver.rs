//! Finite quivers and paths.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

pub type VertexId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: VertexId, target: VertexId) -> Self {
        Arrow {
            name: name.into(),
            source,
            target,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
    by_name: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation(
                "vertex ids must be strictly increasing".into(),
            ));
        }
        if vertices.first() == Some(&0) {
            return Err(Error::Validation("vertex ids must be positive".into()));
        }
        let mut by_name = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.name.is_empty() {
                return Err(Error::Validation("empty arrow name".into()));
            }
            for v in [a.source, a.target] {
                if vertices.binary_search(&v).is_err() {
                    return Err(Error::Validation(format!(
                        "arrow {} has undeclared endpoint {v}",
                        a.name
                    )));
                }
            }
            if by_name.insert(a.name.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            by_name,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }
    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
    pub fn vertex_position(&self, v: VertexId) -> usize {
        self.vertices.binary_search(&v).expect("unknown vertex")
    }

    /// Subquiver on the same vertices with the arrows at the given indices (in index order).
    pub fn subquiver(&self, arrows: &[usize]) -> Quiver {
        let mut idx = arrows.to_vec();
        idx.sort_unstable();
        idx.dedup();
        Quiver::new(
            self.vertices.clone(),
            idx.iter().map(|&i| self.arrows[i].clone()).collect(),
        )
        .expect("subquiver of a valid quiver")
    }

    /// Component label (a vertex position) for each vertex, using only the given arrows.
    pub fn component_labels(&self, arrows: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for i in arrows {
            let a = &self.arrows[i];
            uf.union(self.vertex_position(a.source), self.vertex_position(a.target));
        }
        (0..self.vertices.len()).map(|v| uf.find(v)).collect()
    }

    pub fn component_count(&self) -> usize {
        let labels = self.component_labels(0..self.arrows.len());
        labels.iter().enumerate().filter(|&(i, &l)| i == l).count()
    }

    /// Connected components of the underlying graph, each as sorted vertex ids, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let labels = self.component_labels(0..self.arrows.len());
        let mut groups: Vec<Vec<VertexId>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (pos, &l) in labels.iter().enumerate() {
            let k = *slot.entry(l).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(self.vertices[pos]);
        }
        groups
    }

    /// First Betti number m − n + c.
    pub fn betti_number(&self) -> i64 {
        self.arrows.len() as i64 - self.vertices.len() as i64 + self.component_count() as i64
    }

    /// Arrows grouped by (source, target), in order of first appearance.
    pub fn parallel_classes(&self) -> Vec<ParallelClass> {
        let mut classes: Vec<ParallelClass> = Vec::new();
        let mut slot: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            let k = *slot.entry((a.source, a.target)).or_insert_with(|| {
                classes.push(ParallelClass {
                    source: a.source,
                    target: a.target,
                    arrows: Vec::new(),
                });
                classes.len() - 1
            });
            classes[k].arrows.push(i);
        }
        classes
    }

    /// Every arrow strictly increases the vertex id.
    pub fn is_directed(&self) -> bool {
        self.arrows.iter().all(|a| a.source < a.target)
    }

    pub fn opposite(&self, suffix: &str) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(format!("{}{suffix}", a.name), a.target, a.source))
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver")
    }

    pub fn arrow_names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.arrows[i].name.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelClass {
    pub source: VertexId,
    pub target: VertexId,
    /// Arrow indices in declaration order.
    pub arrows: Vec<usize>,
}

impl ParallelClass {
    pub fn size(&self) -> usize {
        self.arrows.len()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when both already share a root. The smaller root wins.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A path, stored in application order: `arrows[0]` is applied first.
/// Written right-to-left, the path `βα` is stored as `[α, β]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, i: usize) -> Self {
        let a = q.arrow(i);
        Path {
            source: a.source,
            target: a.target,
            arrows: vec![i],
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Validation("a nontrivial path needs an arrow".into()));
        };
        for w in arrows.windows(2) {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(Error::Validation(format!(
                    "arrows {} and {} do not compose",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        Ok(Path {
            source: q.arrow(first).source,
            target: q.arrow(*arrows.last().unwrap()).target,
            arrows,
        })
    }

    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| {
                q.arrow_index(n)
                    .ok_or_else(|| Error::Validation(format!("unknown arrow {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_arrows(q, idx)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }
    pub fn target(&self) -> VertexId {
        self.target
    }
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }
    pub fn is_parallel(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// `other` (nontrivial) occurs as a contiguous subpath.
    pub fn contains_subpath(&self, other: &Path) -> bool {
        !other.is_trivial() && self.arrows.windows(other.len()).any(|w| w == other.arrows)
    }

    /// The path "self then next", if it composes.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            source: self.source,
            target: next.target,
            arrows,
        })
    }

    /// Replace the arrow at position `i` by the parallel path `gamma`.
    pub fn replace_at(&self, i: usize, gamma: &Path) -> Path {
        let mut arrows = Vec::with_capacity(self.len() - 1 + gamma.len());
        arrows.extend_from_slice(&self.arrows[..i]);
        arrows.extend_from_slice(&gamma.arrows);
        arrows.extend_from_slice(&self.arrows[i + 1..]);
        Path {
            source: self.source,
            target: self.target,
            arrows,
        }
    }

    /// Same path read in the opposite quiver, whose arrow `i` reverses arrow `i` here.
    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    /// Re-index arrows through a map (e.g. into a larger quiver).
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Path {
        Path {
            source: self.source,
            target: self.target,
            arrows: self.arrows.iter().map(|&a| map(a)).collect(),
        }
    }

    /// Arrow names in application order; `["e3"]`-style label for trivial paths is not used here.
    pub fn names(&self, q: &Quiver) -> Vec<String> {
        q.arrow_names(&self.arrows)
    }

    /// Input-grammar label: arrow names joined by `*` in application order, `e<v>` if trivial.
    pub fn label(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            format!("e{}", self.source)
        } else {
            self.names(q).join("*")
        }
    }

    /// Canonical order: by length, then arrow-name sequence; trivial paths by vertex.
    pub fn canonical_cmp(&self, other: &Path, q: &Quiver) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            if self.is_trivial() {
                return self.source.cmp(&other.source);
            }
            for (&a, &b) in self.arrows.iter().zip(&other.arrows) {
                let o = q.arrow(a).name.cmp(&q.arrow(b).name);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}
