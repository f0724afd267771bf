//! Betti numbers, extended maximal trees, the contracted fundamental group of a pair and
//! the θ-map into relative derivations.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::algebra::{MonomialAlgebra, SubalgebraPair};
use crate::complex::{CochainComplex, Term};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rref, zero_vec};
use crate::quiver::{Quiver, VertexId};
use crate::relative::RelativeHh1;

/// π₁-rank of a monomial algebra: β₁ of its quiver.
pub fn pi1_rank(algebra: &MonomialAlgebra) -> i64 {
    algebra.quiver().betti_number()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeOrder {
    Bfs,
    Dfs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BComponent {
    pub vertices: Vec<VertexId>,
    pub root: VertexId,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanningForestData {
    pub order: TreeOrder,
    /// maximal forest of Q_B, as arrow indices of Q_A
    pub forest_b: Vec<usize>,
    /// forest_b extended to a maximal forest of Q_A
    pub tree_a: Vec<usize>,
    pub components_b: Vec<BComponent>,
    /// arrows of Q_A outside Q_B and outside tree_a, one free generator each
    pub generators: Vec<usize>,
}

impl SpanningForestData {
    pub fn in_tree(&self, a: usize) -> bool {
        self.tree_a.binary_search(&a).is_ok()
    }
    pub fn generator_id(&self, a: usize) -> Option<usize> {
        self.generators.binary_search(&a).ok()
    }
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

struct Frontier {
    order: TreeOrder,
    items: VecDeque<usize>,
}

impl Frontier {
    fn new(order: TreeOrder) -> Self {
        Frontier {
            order,
            items: VecDeque::new(),
        }
    }
    fn push(&mut self, v: usize) {
        self.items.push_back(v);
    }
    fn pop(&mut self) -> Option<usize> {
        match self.order {
            TreeOrder::Bfs => self.items.pop_front(),
            TreeOrder::Dfs => self.items.pop_back(),
        }
    }
}

/// Incident arrows per vertex position, in declaration order (reversed for DFS).
fn incidence(q: &Quiver, allowed: &[bool], order: TreeOrder) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); q.vertices().len()];
    for (i, a) in q.arrows().iter().enumerate() {
        if !allowed[i] {
            continue;
        }
        inc[q.vertex_position(a.source)].push(i);
        if a.source != a.target {
            inc[q.vertex_position(a.target)].push(i);
        }
    }
    if order == TreeOrder::Dfs {
        for l in &mut inc {
            l.reverse();
        }
    }
    inc
}

fn other_end(q: &Quiver, a: usize, pos: usize) -> usize {
    let arr = q.arrow(a);
    let (s, t) = (q.vertex_position(arr.source), q.vertex_position(arr.target));
    if s == pos {
        t
    } else {
        s
    }
}

/// Extended maximal tree: a traversal forest of Q_B, then a traversal of Q_A that treats each
/// component of Q_B as already reached. Roots default to the least vertex of each component.
pub fn extended_tree(pair: &SubalgebraPair, order: TreeOrder, roots: &BTreeMap<VertexId, VertexId>) -> Result<SpanningForestData> {
    let q = pair.ambient().quiver();
    let n = q.vertices().len();
    let all = vec![true; q.arrows().len()];
    let in_b: Vec<bool> = (0..q.arrows().len()).map(|i| pair.is_sub_arrow(i)).collect();

    let inc_b = incidence(q, &in_b, order);
    let mut comp = vec![usize::MAX; n];
    let mut forest_b = Vec::new();
    let mut components_b = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components_b.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut fr = Frontier::new(order);
        fr.push(start);
        while let Some(v) = fr.pop() {
            for &a in &inc_b[v] {
                let w = other_end(q, a, v);
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    forest_b.push(a);
                    members.push(w);
                    fr.push(w);
                }
            }
        }
        let mut vertices: Vec<VertexId> = members.iter().map(|&p| q.vertices()[p]).collect();
        vertices.sort_unstable();
        components_b.push(BComponent {
            root: vertices[0],
            vertices,
        });
    }
    for (&v, &root) in roots {
        if !q.has_vertex(v) || !q.has_vertex(root) {
            return Err(Error::Validation(format!("root override {v} -> {root} names an unknown vertex")));
        }
        let c = comp[q.vertex_position(v)];
        if comp[q.vertex_position(root)] != c {
            return Err(Error::Validation(format!("root {root} is not in the component of {v}")));
        }
        components_b[c].root = root;
    }

    let inc_a = incidence(q, &all, order);
    let mut reached = vec![false; components_b.len()];
    let mut tree_a = forest_b.clone();
    for start in 0..n {
        if reached[comp[start]] {
            continue;
        }
        let mut fr = Frontier::new(order);
        let enter = |c: usize, fr: &mut Frontier, reached: &mut Vec<bool>| {
            reached[c] = true;
            for v in components_b[c].vertices.iter().map(|&x| q.vertex_position(x)) {
                fr.push(v);
            }
        };
        enter(comp[start], &mut fr, &mut reached);
        while let Some(v) = fr.pop() {
            for &a in &inc_a[v] {
                let w = other_end(q, a, v);
                if !reached[comp[w]] {
                    tree_a.push(a);
                    enter(comp[w], &mut fr, &mut reached);
                }
            }
        }
    }
    forest_b.sort_unstable();
    tree_a.sort_unstable();
    let generators = (0..q.arrows().len())
        .filter(|&i| !in_b[i] && tree_a.binary_search(&i).is_err())
        .collect();
    Ok(SpanningForestData {
        order,
        forest_b,
        tree_a,
        components_b,
        generators,
    })
}

/// Q_{A|B,T}: all vertices, arrows outside Q_B together with the tree.
pub fn contracted_quiver(pair: &SubalgebraPair, data: &SpanningForestData) -> Quiver {
    let arrows: Vec<usize> = (0..pair.ambient().quiver().arrows().len())
        .filter(|&i| !pair.is_sub_arrow(i) || data.in_tree(i))
        .collect();
    pair.ambient().quiver().subquiver(&arrows)
}

/// Rank of the free group π₁(Q_{A|B,T}) for the BFS tree.
pub fn contracted_rank(pair: &SubalgebraPair) -> Result<usize> {
    Ok(extended_tree(pair, TreeOrder::Bfs, &BTreeMap::new())?.rank())
}

/// A walk: signed arrows in the order they are traversed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub start: VertexId,
    pub steps: Vec<(usize, i8)>,
}

impl Walk {
    pub fn trivial(v: VertexId) -> Self {
        Walk {
            start: v,
            steps: Vec::new(),
        }
    }

    pub fn end(&self, q: &Quiver) -> Result<VertexId> {
        let mut at = self.start;
        for (k, &(a, sign)) in self.steps.iter().enumerate() {
            let arr = q.arrows().get(a).ok_or_else(|| Error::NotAWalk(format!("no arrow with index {a}")))?;
            let (from, to) = match sign {
                1 => (arr.source, arr.target),
                -1 => (arr.target, arr.source),
                _ => return Err(Error::NotAWalk(format!("step {k} has exponent {sign}"))),
            };
            if from != at {
                return Err(Error::NotAWalk(format!(
                    "step {k} ({}{}) starts at {from}, walk is at {at}",
                    arr.name,
                    if sign < 0 { "⁻¹" } else { "" }
                )));
            }
            at = to;
        }
        Ok(at)
    }

    pub fn inverse(&self, q: &Quiver) -> Result<Walk> {
        Ok(Walk {
            start: self.end(q)?,
            steps: self.steps.iter().rev().map(|&(a, s)| (a, -s)).collect(),
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, q: &Quiver, next: &Walk) -> Result<Walk> {
        let e = self.end(q)?;
        if e != next.start {
            return Err(Error::NotAWalk(format!("walk ends at {e}, next starts at {}", next.start)));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        Ok(Walk { start: self.start, steps })
    }

    /// Parse "a", "b^-1" style tokens separated by whitespace or '*', traversed left to right.
    pub fn parse(q: &Quiver, start: VertexId, text: &str) -> Result<Walk> {
        let mut steps = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (name, sign) = match tok.strip_suffix("^-1").or_else(|| tok.strip_suffix("⁻¹")) {
                Some(n) => (n, -1),
                None => (tok, 1),
            };
            let a = q
                .arrow_index(name)
                .ok_or_else(|| Error::NotAWalk(format!("unknown arrow {name}")))?;
            steps.push((a, sign));
        }
        let w = Walk {
            start,
            steps,
        };
        w.end(q)?;
        Ok(w)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FreeWord {
    /// (generator id, ±1), freely reduced
    pub letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn push(&mut self, g: usize, e: i8) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.0 == g).map(|l| l.1 as i64).sum()
    }
}

/// Image in the free group on the generators: arrows of Q_B and of the tree are erased.
pub fn walk_to_word(q: &Quiver, w: &Walk, data: &SpanningForestData) -> Result<FreeWord> {
    w.end(q)?;
    let mut word = FreeWord::default();
    for &(a, s) in &w.steps {
        if let Some(g) = data.generator_id(a) {
            word.push(g, s);
        }
    }
    Ok(word)
}

/// The unique walk inside the given forest between two vertices of one component.
fn forest_walk(q: &Quiver, forest: &[usize], from: VertexId, to: VertexId) -> Option<Walk> {
    let n = q.vertices().len();
    let mut prev: Vec<Option<(usize, usize, i8)>> = vec![None; n];
    let (s, t) = (q.vertex_position(from), q.vertex_position(to));
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            break;
        }
        for &a in forest {
            let arr = q.arrow(a);
            let (x, y) = (q.vertex_position(arr.source), q.vertex_position(arr.target));
            let step = if x == v && !seen[y] {
                Some((y, 1))
            } else if y == v && !seen[x] {
                Some((x, -1))
            } else {
                None
            };
            if let Some((w, sign)) = step {
                seen[w] = true;
                prev[w] = Some((v, a, sign));
                queue.push_back(w);
            }
        }
    }
    if !seen[t] {
        return None;
    }
    let mut steps = Vec::new();
    let mut at = t;
    while let Some((p, a, sign)) = prev[at] {
        steps.push((a, sign));
        at = p;
    }
    steps.reverse();
    Some(Walk { start: from, steps })
}

#[derive(Clone, Debug, Serialize)]
pub struct ParadeWalk {
    pub vertex: VertexId,
    pub root: VertexId,
    /// γ_{*,x}: inside tree_a
    pub connecting: Walk,
    /// γ^Γ_{x,y}: inside forest_b
    pub local: Walk,
    pub walk: Walk,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParadeData {
    /// one basepoint per component of Q_A
    pub basepoints: Vec<VertexId>,
    pub walks: Vec<ParadeWalk>,
}

impl ParadeData {
    pub fn walk_to(&self, v: VertexId) -> &Walk {
        &self.walks.iter().find(|w| w.vertex == v).expect("every vertex has a parade walk").walk
    }
}

/// Relative parade data routed through the roots of the components of Q_B. In each component
/// of Q_A the basepoint is `basepoint` if it lies there, otherwise the least vertex.
pub fn relative_parade(pair: &SubalgebraPair, data: &SpanningForestData, basepoint: Option<VertexId>) -> Result<ParadeData> {
    let q = pair.ambient().quiver();
    if let Some(b) = basepoint {
        if !q.has_vertex(b) {
            return Err(Error::Validation(format!("basepoint {b} is not a vertex")));
        }
    }
    let mut basepoints = Vec::new();
    for comp in q.components() {
        let bp = match basepoint {
            Some(b) if comp.contains(&b) => b,
            _ => comp[0],
        };
        basepoints.push(bp);
    }
    let mut walks = Vec::new();
    for c in &data.components_b {
        let bp = *basepoints
            .iter()
            .find(|&&b| forest_walk(q, &data.tree_a, b, c.root).is_some())
            .expect("tree spans each component");
        let connecting = forest_walk(q, &data.tree_a, bp, c.root).expect("same component");
        for &y in &c.vertices {
            let local = forest_walk(q, &data.forest_b, c.root, y).expect("same component of Q_B");
            let walk = connecting.then(q, &local)?;
            walks.push(ParadeWalk {
                vertex: y,
                root: c.root,
                connecting: connecting.clone(),
                local,
                walk,
            });
        }
    }
    walks.sort_by_key(|w| w.vertex);
    Ok(ParadeData { basepoints, walks })
}

/// cl_γ(a) = γ_{*,t(a)}⁻¹ a γ_{*,s(a)}, as a closed walk at the basepoint.
pub fn closed_walk(q: &Quiver, parade: &ParadeData, a: usize) -> Result<Walk> {
    let arr = q.arrow(a);
    let there = parade.walk_to(arr.source);
    let back = parade.walk_to(arr.target).inverse(q)?;
    there
        .then(q, &Walk { start: arr.source, steps: vec![(a, 1)] })?
        .then(q, &back)
}

/// Representative in k(Q₁//𝓑) of θ applied to the dual of generator `g`.
pub fn theta_raw<F: Field>(
    c: &CochainComplex<'_, F>,
    data: &SpanningForestData,
    parade: &ParadeData,
    g: usize,
) -> Result<Vec<F::Elem>> {
    let f = c.field();
    let alg = c.algebra();
    let q = alg.quiver();
    let mut v = zero_vec(f, c.dim1());
    for a in 0..q.arrows().len() {
        let e = walk_to_word(q, &closed_walk(q, parade, a)?, data)?.exponent_sum(g);
        if e == 0 {
            continue;
        }
        let p = alg
            .basis_index(&crate::quiver::Path::arrow(q, a))
            .expect("arrows are basis paths");
        let i = c.index1(a, p).expect("a//a is parallel");
        v[i] = f.from_i64(e);
    }
    Ok(v)
}

/// θ^{(A|B)} of generator `g`, checked to lie in Ker δ¹_{A|B}.
pub fn theta<F: Field>(
    rel: &RelativeHh1<'_, F>,
    data: &SpanningForestData,
    parade: &ParadeData,
    g: usize,
) -> Result<Vec<F::Elem>> {
    let v = theta_raw(rel.complex(), data, parade, g)?;
    if !rel.kernel().contains(&v) {
        return Err(Error::ImageNotInRelativeKernel);
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaImage {
    pub generator: usize,
    pub arrow: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackChecks {
    pub in_relative_kernel: bool,
    pub diagonal: bool,
    pub vanishes_on_b: bool,
    pub injective: bool,
    pub commutes_with_absolute: bool,
    pub dimension_matches: bool,
    pub tree_independent: bool,
    pub rank_arithmetic: bool,
}

impl PullbackChecks {
    pub fn all(&self) -> bool {
        self.in_relative_kernel
            && self.diagonal
            && self.vanishes_on_b
            && self.injective
            && self.commutes_with_absolute
            && self.dimension_matches
            && self.tree_independent
            && self.rank_arithmetic
    }
}

#[derive(Clone, Debug, Serialize)]
#[allow(non_snake_case)]
pub struct Pi1Report {
    pub betti_A: i64,
    pub betti_B: i64,
    pub contracted_rank: usize,
    pub contracted_rank_dfs: usize,
    pub contracted_betti: i64,
    pub theta_image_dim: usize,
    pub tree: Vec<String>,
    pub generators: Vec<String>,
    pub theta: Vec<ThetaImage>,
    pub pullback_checks: PullbackChecks,
}

/// θ-images plus every check of the pullback square that can be read off computed spaces.
pub fn verify_pullback<F: Field>(
    pair: &SubalgebraPair,
    field: &F,
    roots: &BTreeMap<VertexId, VertexId>,
    basepoint: Option<VertexId>,
) -> Result<Pi1Report> {
    let q = pair.ambient().quiver();
    let data = extended_tree(pair, TreeOrder::Bfs, roots)?;
    let alt = extended_tree(pair, TreeOrder::Dfs, roots)?;
    let parade = relative_parade(pair, &data, basepoint)?;
    let rel = RelativeHh1::new(pair, field)?;
    let c = rel.complex();
    let betti_a = q.betti_number();
    let betti_b = pair.sub().quiver().betti_number();
    let contracted_betti = contracted_quiver(pair, &data).betti_number();

    let raw: Vec<Vec<F::Elem>> = (0..data.rank())
        .map(|g| theta_raw(c, &data, &parade, g))
        .collect::<Result<_>>()?;
    let in_relative_kernel = raw.iter().all(|v| rel.kernel().contains(v));
    let diagonal = raw.iter().all(|v| {
        v.iter().enumerate().all(|(i, x)| {
            let pp = c.basis1()[i];
            field.is_zero(x) || c.algebra().basis()[pp.right].arrows() == [pp.left]
        })
    });
    let vanishes_on_b = raw.iter().all(|v| {
        v.iter()
            .enumerate()
            .all(|(i, x)| field.is_zero(x) || !pair.is_sub_arrow(c.basis1()[i].left))
    });
    let (injective, theta_image_dim) = if in_relative_kernel {
        let coords: Vec<Vec<F::Elem>> = raw
            .iter()
            .map(|v| rel.quotient().class_coordinates(v).expect("inside the relative kernel"))
            .collect();
        let r = rref(field, coords, rel.dim()).0.len();
        (r == raw.len(), r)
    } else {
        (false, 0)
    };

    // absolute θ with the same tree: B = vertex span, tree_a unchanged
    let abs_pair = SubalgebraPair::from_arrow_indices(pair.ambient().clone(), "E", &[])?;
    let abs_data = SpanningForestData {
        order: data.order,
        forest_b: Vec::new(),
        tree_a: data.tree_a.clone(),
        components_b: q
            .vertices()
            .iter()
            .map(|&v| BComponent { vertices: vec![v], root: v })
            .collect(),
        generators: (0..q.arrows().len()).filter(|&i| !data.in_tree(i)).collect(),
    };
    let abs_parade = relative_parade(&abs_pair, &abs_data, basepoint)?;
    let mut commutes_with_absolute = true;
    for (g, &a) in data.generators.iter().enumerate() {
        let ga = abs_data.generator_id(a).expect("contracted generators are absolute generators");
        let abs = theta_raw(c, &abs_data, &abs_parade, ga)?;
        let same_class = match (rel.absolute().class_coordinates(&abs), rel.absolute().class_coordinates(&raw[g])) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        };
        commutes_with_absolute &= same_class && abs == raw[g];
    }

    let checks = PullbackChecks {
        in_relative_kernel,
        diagonal,
        vanishes_on_b,
        injective,
        commutes_with_absolute,
        dimension_matches: theta_image_dim == data.rank(),
        tree_independent: alt.rank() == data.rank(),
        rank_arithmetic: data.rank() as i64 == betti_a - betti_b && contracted_betti == betti_a - betti_b,
    };
    if !in_relative_kernel {
        return Err(Error::ImageNotInRelativeKernel);
    }
    Ok(Pi1Report {
        betti_A: betti_a,
        betti_B: betti_b,
        contracted_rank: data.rank(),
        contracted_rank_dfs: alt.rank(),
        contracted_betti,
        theta_image_dim,
        tree: q.arrow_names(&data.tree_a),
        generators: q.arrow_names(&data.generators),
        theta: raw
            .iter()
            .enumerate()
            .map(|(g, v)| ThetaImage {
                generator: g,
                arrow: q.arrow(data.generators[g]).name.clone(),
                terms: c.terms(crate::complex::Stratum::Arrows, v),
            })
            .collect(),
        pullback_checks: checks,
    })
}
