//! Finite graphs as dart sets with an involution, and their covering maps.
//!
//! A dart is half an edge: it knows its attachment vertex and its partner
//! under a fixed-point-free involution. Loops and parallel edges then have
//! unambiguous covering semantics, and "étale" is literal: a covering map
//! restricts to a bijection on every vertex star.
//!
//! Fundamental groups are free on the non-tree edges of a BFS spanning tree
//! (dart-order tie-breaking keeps every presentation and monodromy
//! deterministic). Monodromy, the inverse construction, deck groups,
//! trivialization quotients and finite truncations of the pro-group tower
//! are all computed exhaustively.

use crate::budget::{Budget, BudgetError};
use crate::fpgroup::{self, FiniteAction, Presentation, Word};
use crate::group::{FiniteGroup, GroupHom};
use crate::groupoid::ProGroupoidChain;
use crate::perm::Perm;
use std::collections::BTreeMap;
use thiserror::Error;

/// A finite multigraph: darts with attachment and a pairing involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    dart_vertex: Vec<usize>,
    dart_inv: Vec<usize>,
    vertex_darts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GraphDefect {
    #[error("dart {dart} attached to missing vertex")]
    AttachmentRange { dart: usize },
    #[error("involution not involutive at dart {dart}")]
    NotInvolutive { dart: usize },
    #[error("fixed dart {dart}")]
    FixedDart { dart: usize },
}

impl Graph {
    pub fn new(
        vertex_names: Vec<String>,
        dart_vertex: Vec<usize>,
        dart_inv: Vec<usize>,
    ) -> Result<Graph, Vec<GraphDefect>> {
        let mut defects = Vec::new();
        let nv = vertex_names.len();
        let nd = dart_vertex.len();
        for d in 0..nd {
            if dart_vertex[d] >= nv {
                defects.push(GraphDefect::AttachmentRange { dart: d });
            }
            if dart_inv.len() != nd || dart_inv[d] >= nd || dart_inv[dart_inv[d]] != d {
                defects.push(GraphDefect::NotInvolutive { dart: d });
            } else if dart_inv[d] == d {
                defects.push(GraphDefect::FixedDart { dart: d });
            }
        }
        if defects.is_empty() {
            let mut vertex_darts = vec![Vec::new(); nv];
            for (d, &v) in dart_vertex.iter().enumerate() {
                vertex_darts[v].push(d);
            }
            Ok(Graph {
                vertex_names,
                dart_vertex,
                dart_inv,
                vertex_darts,
            })
        } else {
            Err(defects)
        }
    }

    /// Each edge `(u, v)` expands to the dart pair `(2k, 2k+1)` with `2k`
    /// attached at `u`, in declaration order.
    pub fn from_edges(vertex_names: Vec<String>, edges: &[(usize, usize)]) -> Graph {
        let mut dart_vertex = Vec::with_capacity(edges.len() * 2);
        let mut dart_inv = Vec::with_capacity(edges.len() * 2);
        for (k, &(u, v)) in edges.iter().enumerate() {
            dart_vertex.push(u);
            dart_vertex.push(v);
            dart_inv.push(2 * k + 1);
            dart_inv.push(2 * k);
        }
        Graph::new(vertex_names, dart_vertex, dart_inv).expect("edge list graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn dart_count(&self) -> usize {
        self.dart_vertex.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_vertex.len() / 2
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        self.dart_vertex[dart]
    }

    pub fn inv(&self, dart: usize) -> usize {
        self.dart_inv[dart]
    }

    /// The vertex at the far end of a dart.
    pub fn other_end(&self, dart: usize) -> usize {
        self.dart_vertex[self.dart_inv[dart]]
    }

    pub fn darts_at(&self, v: usize) -> &[usize] {
        &self.vertex_darts[v]
    }

    /// Edge pairs `(d, inv d)` with `d < inv d`, in dart order; `d` is the
    /// canonical orientation of the edge.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.dart_count())
            .filter(|&d| d < self.dart_inv[d])
            .map(|d| (d, self.dart_inv[d]))
            .collect()
    }

    /// Vertex partition into connected components, least-vertex blocks first.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let idx = blocks.len();
            let mut block = vec![];
            let mut queue = vec![start];
            comp[start] = idx;
            while let Some(v) = queue.pop() {
                block.push(v);
                for &d in self.darts_at(v) {
                    let w = self.other_end(d);
                    if comp[w] == usize::MAX {
                        comp[w] = idx;
                        queue.push(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn component_of(&self, v: usize) -> Vec<usize> {
        self.components()
            .into_iter()
            .find(|b| b.contains(&v))
            .expect("vertex in some component")
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// A map of graphs: vertex and dart maps commuting with attachment and
/// involution.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphMorphism {
    pub vmap: Vec<usize>,
    pub dmap: Vec<usize>,
}

impl GraphMorphism {
    pub fn validate(&self, src: &Graph, dst: &Graph) -> Result<(), CoverDefect> {
        if self.vmap.len() != src.vertex_count()
            || self.dmap.len() != src.dart_count()
            || self.vmap.iter().any(|&v| v >= dst.vertex_count())
            || self.dmap.iter().any(|&d| d >= dst.dart_count())
        {
            return Err(CoverDefect::Shape);
        }
        for d in 0..src.dart_count() {
            if dst.vertex_of(self.dmap[d]) != self.vmap[src.vertex_of(d)] {
                return Err(CoverDefect::AttachmentNotPreserved { dart: d });
            }
            if dst.inv(self.dmap[d]) != self.dmap[src.inv(d)] {
                return Err(CoverDefect::InvolutionNotPreserved { dart: d });
            }
        }
        Ok(())
    }

    pub fn identity(g: &Graph) -> GraphMorphism {
        GraphMorphism {
            vmap: (0..g.vertex_count()).collect(),
            dmap: (0..g.dart_count()).collect(),
        }
    }

    /// Diagrammatic composition: first `self`, then `other`.
    pub fn then(&self, other: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            vmap: self.vmap.iter().map(|&v| other.vmap[v]).collect(),
            dmap: self.dmap.iter().map(|&d| other.dmap[d]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vmap.iter().enumerate().all(|(i, &v)| i == v)
            && self.dmap.iter().enumerate().all(|(i, &d)| i == d)
    }

    pub fn is_bijective(&self, src: &Graph, dst: &Graph) -> bool {
        let mut vs = vec![false; dst.vertex_count()];
        for &v in &self.vmap {
            vs[v] = true;
        }
        let mut ds = vec![false; dst.dart_count()];
        for &d in &self.dmap {
            ds[d] = true;
        }
        src.vertex_count() == dst.vertex_count()
            && src.dart_count() == dst.dart_count()
            && vs.into_iter().all(|b| b)
            && ds.into_iter().all(|b| b)
    }

    pub fn inverse_of_bijection(&self) -> GraphMorphism {
        let mut vmap = vec![0; self.vmap.len()];
        for (i, &v) in self.vmap.iter().enumerate() {
            vmap[v] = i;
        }
        let mut dmap = vec![0; self.dmap.len()];
        for (i, &d) in self.dmap.iter().enumerate() {
            dmap[d] = i;
        }
        GraphMorphism { vmap, dmap }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CoverDefect {
    #[error("map shapes inconsistent")]
    Shape,
    #[error("attachment not preserved at dart {dart}")]
    AttachmentNotPreserved { dart: usize },
    #[error("involution not preserved at dart {dart}")]
    InvolutionNotPreserved { dart: usize },
    #[error("star not bijective at vertex {vertex}")]
    StarNotBijective { vertex: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("empty graph")]
    EmptyGraph,
    #[error("cover of degree zero requested")]
    ZeroDegree,
    #[error("total graph disconnected")]
    DisconnectedTotal,
    #[error("covers have different base graphs")]
    MismatchedBase,
    #[error("base vertex {0} out of range")]
    BaseRange(usize),
    #[error("invalid cover: {0:?}")]
    Invalid(Vec<CoverDefect>),
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

/// A covering map: a graph morphism that is star-bijective at every vertex
/// of the total graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringMap {
    pub base: Graph,
    pub total: Graph,
    pub map: GraphMorphism,
}

/// Star-bijectivity diagnostics for raw cover data; reports every failing
/// vertex.
pub fn validate_cover(
    base: &Graph,
    total: &Graph,
    map: &GraphMorphism,
) -> Result<(), Vec<CoverDefect>> {
    if let Err(d) = map.validate(total, base) {
        return Err(vec![d]);
    }
    let mut defects = Vec::new();
    for v in 0..total.vertex_count() {
        let down = base.darts_at(map.vmap[v]);
        let mut images: Vec<usize> = total.darts_at(v).iter().map(|&d| map.dmap[d]).collect();
        images.sort_unstable();
        if images != down {
            defects.push(CoverDefect::StarNotBijective { vertex: v });
        }
    }
    if defects.is_empty() {
        Ok(())
    } else {
        Err(defects)
    }
}

impl CoveringMap {
    pub fn new(base: Graph, total: Graph, map: GraphMorphism) -> Result<Self, CoverError> {
        validate_cover(&base, &total, &map).map_err(CoverError::Invalid)?;
        Ok(CoveringMap { base, total, map })
    }

    pub fn identity(g: &Graph) -> CoveringMap {
        CoveringMap {
            base: g.clone(),
            total: g.clone(),
            map: GraphMorphism::identity(g),
        }
    }

    /// Total vertices over a base vertex, ascending.
    pub fn fiber(&self, base_vertex: usize) -> Vec<usize> {
        (0..self.total.vertex_count())
            .filter(|&v| self.map.vmap[v] == base_vertex)
            .collect()
    }

    pub fn degree_over(&self, base_vertex: usize) -> usize {
        self.fiber(base_vertex).len()
    }

    /// The unique dart at `total_vertex` over `base_dart`.
    pub fn lift_dart(&self, total_vertex: usize, base_dart: usize) -> usize {
        self.total
            .darts_at(total_vertex)
            .iter()
            .copied()
            .find(|&d| self.map.dmap[d] == base_dart)
            .expect("star bijection")
    }

    /// Walks a base dart path upstairs from a total vertex; returns the end.
    pub fn lift_path(&self, start: usize, darts: &[usize]) -> usize {
        let mut v = start;
        for &d in darts {
            let lifted = self.lift_dart(v, d);
            v = self.total.other_end(lifted);
        }
        v
    }
}

// --- spanning trees and fundamental groups -----------------------------------

/// BFS spanning tree of the base vertex's component, with the non-tree
/// edge pairs (in dart order) as free generators.
#[derive(Clone, Debug)]
pub struct SpanningTreeData {
    pub base: usize,
    pub in_component: Vec<bool>,
    /// For each non-base vertex of the component, the tree dart pointing
    /// from its BFS parent to it.
    pub parent_dart: Vec<Option<usize>>,
    /// Per dart: does its edge belong to the tree?
    pub tree_dart: Vec<bool>,
    /// Non-tree edge pairs `(d, inv d)`, `d < inv d`; traversing `d` is the
    /// positive direction of the corresponding free generator.
    pub generators: Vec<(usize, usize)>,
}

pub fn build_spanning_tree(g: &Graph, base: usize) -> Result<SpanningTreeData, CoverError> {
    if g.vertex_count() == 0 {
        return Err(CoverError::EmptyGraph);
    }
    if base >= g.vertex_count() {
        return Err(CoverError::BaseRange(base));
    }
    let mut in_component = vec![false; g.vertex_count()];
    let mut parent_dart = vec![None; g.vertex_count()];
    let mut tree_dart = vec![false; g.dart_count()];
    in_component[base] = true;
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &d in g.darts_at(u) {
            let w = g.other_end(d);
            if !in_component[w] {
                in_component[w] = true;
                parent_dart[w] = Some(d);
                tree_dart[d] = true;
                tree_dart[g.inv(d)] = true;
                queue.push_back(w);
            }
        }
    }
    let generators = g
        .edge_pairs()
        .into_iter()
        .filter(|&(d, _)| in_component[g.vertex_of(d)] && !tree_dart[d])
        .collect();
    Ok(SpanningTreeData {
        base,
        in_component,
        parent_dart,
        tree_dart,
        generators,
    })
}

impl SpanningTreeData {
    /// Dart path from the base to `v` along the tree.
    pub fn path_from_base(&self, g: &Graph, v: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = v;
        while cur != self.base {
            let d = self.parent_dart[cur].expect("vertex in spanning tree");
            path.push(d);
            cur = g.vertex_of(d);
        }
        path.reverse();
        path
    }

    /// The loop (as a dart path at the base) of free generator `i`:
    /// tree path to the generator edge, across it, tree path back.
    pub fn generator_loop(&self, g: &Graph, i: usize) -> Vec<usize> {
        let (d, _) = self.generators[i];
        let u = g.vertex_of(d);
        let w = g.other_end(d);
        let mut path = self.path_from_base(g, u);
        path.push(d);
        let back = self.path_from_base(g, w);
        path.extend(back.into_iter().rev().map(|t| g.inv(t)));
        path
    }

    /// Reads a dart path off as a word in the free generators: tree edges
    /// contribute nothing, a generator edge contributes ±1 by direction of
    /// traversal.
    pub fn word_of_path(&self, g: &Graph, darts: &[usize]) -> Word {
        let mut letters = Vec::new();
        for &d in darts {
            if self.tree_dart[d] {
                continue;
            }
            let canonical = d.min(g.inv(d));
            if let Some(i) = self.generators.iter().position(|&(a, _)| a == canonical) {
                letters.push((i, if d == canonical { 1 } else { -1 }));
            }
        }
        Word::from_letters(letters)
    }
}

/// Free presentation of the fundamental group of the base component: rank
/// `E − V + 1` there. Also returns the tree and whether the whole graph was
/// connected; operations act on the base component and say so.
pub fn pi1_graph(
    g: &Graph,
    base: usize,
) -> Result<(Presentation, SpanningTreeData, bool), CoverError> {
    let tree = build_spanning_tree(g, base)?;
    let names = (0..tree.generators.len()).map(|i| format!("x{i}")).collect();
    let pres = Presentation::new(names, Vec::new()).expect("free presentation");
    let connected = tree.in_component.iter().all(|&b| b);
    Ok((pres, tree, connected))
}

// --- monodromy and the inverse construction -----------------------------------

/// The fiber over the base vertex (ascending) and the permutation each free
/// generator induces on it by path lifting.
pub fn monodromy(p: &CoveringMap, base: usize) -> Result<(FiniteAction, Vec<usize>), CoverError> {
    let (pres, tree, _) = pi1_graph(&p.base, base)?;
    let fiber = p.fiber(base);
    let mut images = Vec::with_capacity(pres.rank());
    for i in 0..pres.rank() {
        let loop_darts = tree.generator_loop(&p.base, i);
        let mut perm = Vec::with_capacity(fiber.len());
        for &start in &fiber {
            let end = p.lift_path(start, &loop_darts);
            perm.push(fiber.binary_search(&end).expect("fiber preserved"));
        }
        images.push(Perm::new(perm).expect("path lifting permutes the fiber"));
    }
    let action = FiniteAction {
        degree: fiber.len(),
        images,
    };
    Ok((action, fiber))
}

/// Builds the cover with the given monodromy: sheets `{0..n-1}` glued along
/// the non-tree generator edges. Satisfies
/// `monodromy(cover_from_action(X, base, A)) == A` exactly.
pub fn cover_from_action(
    g: &Graph,
    base: usize,
    action: &FiniteAction,
) -> Result<CoveringMap, CoverError> {
    if action.degree == 0 {
        return Err(CoverError::ZeroDegree);
    }
    let tree = build_spanning_tree(g, base)?;
    let n = action.degree;
    let vidx = |v: usize, s: usize| v * n + s;
    let didx = |d: usize, s: usize| d * n + s;
    let mut vertex_names = Vec::with_capacity(g.vertex_count() * n);
    for v in 0..g.vertex_count() {
        for s in 0..n {
            vertex_names.push(format!("{}.{}", g.vertex_names[v], s));
        }
    }
    let mut dart_vertex = vec![0; g.dart_count() * n];
    let mut dart_inv = vec![0; g.dart_count() * n];
    for d in 0..g.dart_count() {
        for s in 0..n {
            dart_vertex[didx(d, s)] = vidx(g.vertex_of(d), s);
        }
    }
    for (d0, d1) in g.edge_pairs() {
        let sigma = tree
            .generators
            .iter()
            .position(|&(a, _)| a == d0)
            .map(|i| action.images[i].clone())
            .unwrap_or_else(|| Perm::identity(n));
        for s in 0..n {
            let t = sigma.apply(s);
            dart_inv[didx(d0, s)] = didx(d1, t);
            dart_inv[didx(d1, t)] = didx(d0, s);
        }
    }
    let total = Graph::new(vertex_names, dart_vertex, dart_inv).expect("sheeted graph");
    let map = GraphMorphism {
        vmap: (0..g.vertex_count() * n).map(|v| v / n).collect(),
        dmap: (0..g.dart_count() * n).map(|d| d / n).collect(),
    };
    CoveringMap::new(g.clone(), total, map)
}

// --- deck transformations ------------------------------------------------------

#[derive(Clone, Debug)]
pub struct DeckData {
    pub group: FiniteGroup,
    pub autos: Vec<GraphMorphism>,
    pub is_galois: bool,
}

/// All automorphisms of a cover over the identity of the base, found by
/// extending a candidate image of one vertex through unique path lifting.
/// Requires the total graph connected; the Galois verdict is transitivity
/// of the deck action on the fiber over `base`.
pub fn deck_group(p: &CoveringMap, base: usize) -> Result<DeckData, CoverError> {
    if p.total.vertex_count() == 0 {
        return Err(CoverError::EmptyGraph);
    }
    if !p.total.is_connected() {
        return Err(CoverError::DisconnectedTotal);
    }
    let mut autos = cover_morphisms_twisted(p, p, &GraphMorphism::identity(&p.base));
    autos.retain(|m| m.is_bijective(&p.total, &p.total));
    autos.sort();
    let group = deck_table(&autos);
    let fiber = p.fiber(base);
    let is_galois = if fiber.is_empty() {
        false
    } else {
        let hit: std::collections::BTreeSet<usize> =
            autos.iter().map(|m| m.vmap[fiber[0]]).collect();
        hit.len() == fiber.len()
    };
    Ok(DeckData {
        group,
        autos,
        is_galois,
    })
}

fn deck_table(autos: &[GraphMorphism]) -> FiniteGroup {
    let pos = |m: &GraphMorphism| {
        autos
            .binary_search(m)
            .expect("deck transformations closed under composition")
    };
    let names = autos
        .iter()
        .map(|m| {
            Perm::new(m.vmap.clone())
                .map(|p| p.cycle_notation())
                .unwrap_or_else(|| "?".into())
        })
        .collect();
    let table = autos
        .iter()
        .map(|a| autos.iter().map(|b| pos(&a.then(b))).collect())
        .collect();
    FiniteGroup::new(names, table).expect("deck group")
}

/// Extends seed vertex assignments `(v in p.total, image in q.total)` to a
/// graph morphism with `q.map ∘ result = twist ∘ p.map`; star bijections
/// force everything past the seeds. `None` on any conflict or if the seeds
/// miss a component of `p.total`.
fn extend_twisted(
    p: &CoveringMap,
    q: &CoveringMap,
    twist: &GraphMorphism,
    seeds: &[(usize, usize)],
) -> Option<GraphMorphism> {
    let nv = p.total.vertex_count();
    let nd = p.total.dart_count();
    let mut vmap = vec![usize::MAX; nv];
    let mut dmap = vec![usize::MAX; nd];
    let mut queue = Vec::new();
    for &(v, w) in seeds {
        if q.map.vmap[w] != twist.vmap[p.map.vmap[v]] {
            return None;
        }
        if vmap[v] != usize::MAX && vmap[v] != w {
            return None;
        }
        if vmap[v] == usize::MAX {
            vmap[v] = w;
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for &d in p.total.darts_at(v) {
            let image_dart = q.lift_dart(vmap[v], twist.dmap[p.map.dmap[d]]);
            if dmap[d] != usize::MAX && dmap[d] != image_dart {
                return None;
            }
            dmap[d] = image_dart;
            let w = p.total.other_end(d);
            let iw = q.total.other_end(image_dart);
            if vmap[w] == usize::MAX {
                vmap[w] = iw;
                queue.push(w);
            } else if vmap[w] != iw {
                return None;
            }
        }
    }
    if vmap.iter().any(|&v| v == usize::MAX) || dmap.iter().any(|&d| d == usize::MAX) {
        return None;
    }
    let m = GraphMorphism { vmap, dmap };
    m.validate(&p.total, &q.total).ok()?;
    for v in 0..nv {
        if q.map.vmap[m.vmap[v]] != twist.vmap[p.map.vmap[v]] {
            return None;
        }
    }
    Some(m)
}

/// All morphisms `p.total -> q.total` lying over `twist` on the base
/// (`twist` = identity gives morphisms of covers). One anchor per
/// component of `p.total`; candidates are its fiber mates downstairs.
pub fn cover_morphisms_twisted(
    p: &CoveringMap,
    q: &CoveringMap,
    twist: &GraphMorphism,
) -> Vec<GraphMorphism> {
    let anchors: Vec<usize> = p.total.components().iter().map(|c| c[0]).collect();
    let candidate_sets: Vec<Vec<usize>> = anchors
        .iter()
        .map(|&a| q.fiber(twist.vmap[p.map.vmap[a]]))
        .collect();
    let mut out = Vec::new();
    if candidate_sets.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut choice = vec![0usize; anchors.len()];
    loop {
        let seeds: Vec<(usize, usize)> = anchors
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, candidate_sets[i][choice[i]]))
            .collect();
        if let Some(m) = extend_twisted(p, q, twist, &seeds) {
            out.push(m);
        }
        let mut k = choice.len();
        loop {
            if k == 0 {
                out.sort();
                out.dedup();
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidate_sets[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// All cover isomorphisms `p -> q` over the shared base.
pub fn cover_isomorphisms(p: &CoveringMap, q: &CoveringMap) -> Vec<GraphMorphism> {
    if p.base != q.base
        || p.total.vertex_count() != q.total.vertex_count()
        || p.total.dart_count() != q.total.dart_count()
    {
        return Vec::new();
    }
    let mut isos = cover_morphisms_twisted(p, q, &GraphMorphism::identity(&p.base));
    isos.retain(|m| m.is_bijective(&p.total, &q.total));
    isos
}

pub fn find_cover_isomorphism(p: &CoveringMap, q: &CoveringMap) -> Option<GraphMorphism> {
    cover_isomorphisms(p, q).into_iter().next()
}

// --- trivialization ------------------------------------------------------------

/// Fiber product of two covers of the same base, with its projections.
pub fn pullback(u: &CoveringMap, f: &CoveringMap) -> (Graph, GraphMorphism, GraphMorphism) {
    debug_assert_eq!(u.base, f.base);
    let mut vpairs = Vec::new();
    for uv in 0..u.total.vertex_count() {
        for fv in 0..f.total.vertex_count() {
            if u.map.vmap[uv] == f.map.vmap[fv] {
                vpairs.push((uv, fv));
            }
        }
    }
    let vpos: BTreeMap<(usize, usize), usize> =
        vpairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut dpairs = Vec::new();
    for ud in 0..u.total.dart_count() {
        for fd in 0..f.total.dart_count() {
            if u.map.dmap[ud] == f.map.dmap[fd] {
                dpairs.push((ud, fd));
            }
        }
    }
    let dpos: BTreeMap<(usize, usize), usize> =
        dpairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let vertex_names = vpairs
        .iter()
        .map(|&(a, b)| format!("({},{})", u.total.vertex_names[a], f.total.vertex_names[b]))
        .collect();
    let dart_vertex = dpairs
        .iter()
        .map(|&(ud, fd)| vpos[&(u.total.vertex_of(ud), f.total.vertex_of(fd))])
        .collect();
    let dart_inv = dpairs
        .iter()
        .map(|&(ud, fd)| dpos[&(u.total.inv(ud), f.total.inv(fd))])
        .collect();
    let graph = Graph::new(vertex_names, dart_vertex, dart_inv).expect("fiber product graph");
    let to_u = GraphMorphism {
        vmap: vpairs.iter().map(|&(a, _)| a).collect(),
        dmap: dpairs.iter().map(|&(a, _)| a).collect(),
    };
    let to_f = GraphMorphism {
        vmap: vpairs.iter().map(|&(_, b)| b).collect(),
        dmap: dpairs.iter().map(|&(_, b)| b).collect(),
    };
    (graph, to_u, to_f)
}

/// Verdict of the trivialization test, with both routes shown.
#[derive(Clone, Debug)]
pub struct TrivializationReport {
    /// The pullback splits into the right number of sections over every
    /// component of U.
    pub pullback_splits: bool,
    /// The monodromy of F kills the image of π₁ of every component of U.
    pub monodromy_factors: bool,
    pub agree: bool,
}

impl TrivializationReport {
    pub fn verdict(&self) -> bool {
        self.pullback_splits
    }
}

/// Is F trivialized by U? Both the pullback-splitting definition and the
/// monodromy-factoring reformulation are computed and compared.
pub fn is_trivialized_by(
    f: &CoveringMap,
    u: &CoveringMap,
) -> Result<TrivializationReport, CoverError> {
    if f.base != u.base {
        return Err(CoverError::MismatchedBase);
    }
    let base = &f.base;

    // route one: the fiber product splits into sections over each component
    let (pb, to_u, _) = pullback(u, f);
    let pb_comps = pb.components();
    let mut pullback_splits = true;
    for ucomp in u.total.components() {
        let expected = f.degree_over(u.map.vmap[ucomp[0]]);
        let over: Vec<&Vec<usize>> = pb_comps
            .iter()
            .filter(|c| ucomp.contains(&to_u.vmap[c[0]]))
            .collect();
        if over.len() != expected || over.iter().any(|c| c.len() != ucomp.len()) {
            pullback_splits = false;
        }
    }

    // route two: monodromy of F trivial on the image of π₁ of each component
    let mut monodromy_factors = true;
    for ucomp in u.total.components() {
        let u0 = ucomp[0];
        let x0 = u.map.vmap[u0];
        let bx = *base.component_of(x0).first().expect("nonempty component");
        let (_, base_tree, _) = pi1_graph(base, bx)?;
        if f.fiber(bx).is_empty() {
            continue; // zero sheets over this component: vacuously constant
        }
        let (faction, _) = monodromy(f, bx)?;
        let utree = build_spanning_tree(&u.total, u0)?;
        let prefix = base_tree.path_from_base(base, x0);
        for i in 0..utree.generators.len() {
            let uloop = utree.generator_loop(&u.total, i);
            let mut darts = prefix.clone();
            darts.extend(uloop.iter().map(|&d| u.map.dmap[d]));
            darts.extend(prefix.iter().rev().map(|&d| base.inv(d)));
            let word = base_tree.word_of_path(base, &darts);
            if !fpgroup::evaluate(&faction, &word).is_identity() {
                monodromy_factors = false;
            }
        }
    }

    Ok(TrivializationReport {
        pullback_splits,
        monodromy_factors,
        agree: pullback_splits == monodromy_factors,
    })
}

// --- trivialization quotients and the pro-group tower ---------------------------

/// The finite quotient of π₁ classifying the covers a connected cover U
/// trivializes, together with the raw permutation image of the monodromy.
///
/// A cover F is trivialized by U exactly when the monodromy of F kills the
/// whole conjugacy closure of U's point stabilizer, so the classifying
/// quotient is π₁ modulo the normal closure of the stabilizer — the core
/// quotient (the permutation image) classifies more and is reported
/// separately as `image`.
#[derive(Clone, Debug)]
pub struct TrivializationQuotient {
    /// `G_R`: the image group modulo the normal closure of the stabilizer.
    pub group: FiniteGroup,
    /// Image of each free generator of π₁ in `group`.
    pub projection: Vec<usize>,
    /// The permutation image of π₁ on the fiber.
    pub image: FiniteGroup,
    pub image_perms: Vec<Perm>,
    /// Witness word per element of the image.
    pub image_words: Vec<Word>,
    /// Image of each free generator of π₁ in `image`.
    pub image_projection: Vec<usize>,
}

/// Closes generator permutations (with witness words) into a sorted group.
fn close_perm_group(
    degree: usize,
    gens: &[(Perm, Word)],
    budget: &Budget,
) -> Result<(Vec<Perm>, Vec<Word>), BudgetError> {
    let mut found: BTreeMap<Perm, Word> = BTreeMap::new();
    found.insert(Perm::identity(degree), Word::empty());
    let mut queue = vec![Perm::identity(degree)];
    while let Some(p) = queue.pop() {
        let pword = found[&p].clone();
        for (g, gword) in gens {
            let q = p.then(g);
            if !found.contains_key(&q) {
                budget.check_closure(found.len() + 1)?;
                found.insert(q.clone(), pword.concat(gword));
                queue.push(q);
            }
        }
    }
    let mut perms = Vec::with_capacity(found.len());
    let mut words = Vec::with_capacity(found.len());
    for (p, w) in found {
        perms.push(p);
        words.push(w);
    }
    Ok((perms, words))
}

fn perm_group_to_finite_group(perms: &[Perm]) -> FiniteGroup {
    let pos = |p: &Perm| perms.binary_search(p).expect("closed");
    let names = perms.iter().map(|p| p.cycle_notation()).collect();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| pos(&a.then(b))).collect())
        .collect();
    FiniteGroup::new(names, table).expect("permutation group")
}

pub fn trivialization_quotient(
    u: &CoveringMap,
    base: usize,
    budget: &Budget,
) -> Result<TrivializationQuotient, CoverError> {
    if !u.total.is_connected() {
        return Err(CoverError::DisconnectedTotal);
    }
    let (action, _) = monodromy(u, base)?;
    let gens: Vec<(Perm, Word)> = action
        .images
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), Word::gen(i)))
        .collect();
    let (image_perms, image_words) = close_perm_group(action.degree, &gens, budget)?;
    let image = perm_group_to_finite_group(&image_perms);
    let image_projection: Vec<usize> = action
        .images
        .iter()
        .map(|p| {
            image_perms
                .binary_search(p)
                .expect("generator image in closure")
        })
        .collect();
    // normal closure of the point stabilizer inside the image
    let stab: Vec<usize> = (0..image.order())
        .filter(|&e| image_perms[e].apply(0) == 0)
        .collect();
    let mut normal = crate::group::subgroup_closure(&image, &stab);
    loop {
        let mut extended = normal.clone();
        for g in 0..image.order() {
            let gi = image.inv(g);
            for &h in &normal {
                extended.push(image.mul(image.mul(g, h), gi));
            }
        }
        let closed = crate::group::subgroup_closure(&image, &extended);
        if closed == normal {
            break;
        }
        normal = closed;
    }
    let quotient = crate::group::quotient_by(&image, &normal);
    let projection = image_projection
        .iter()
        .map(|&e| quotient.projection[e])
        .collect();
    Ok(TrivializationQuotient {
        group: quotient.quotient,
        projection,
        image,
        image_perms,
        image_words,
        image_projection,
    })
}

/// Finite truncations of the pro-group tower of π₁: level k is the quotient
/// by the intersection of the kernels of all connected covers of degree ≤ k,
/// realized as the image of π₁ acting diagonally on all their fibers.
#[derive(Clone, Debug)]
pub struct ProSystemData {
    pub chain: ProGroupoidChain,
    pub level_groups: Vec<FiniteGroup>,
    /// Per level, image of each π₁ generator as an element index.
    pub generator_images: Vec<Vec<usize>>,
}

pub fn pi1_inverse_system(
    g: &Graph,
    base: usize,
    depth: usize,
    budget: &Budget,
) -> Result<ProSystemData, CoverError> {
    let (pres, _, _) = pi1_graph(g, base)?;
    let rank = pres.rank();
    let mut level_groups: Vec<FiniteGroup> = Vec::new();
    let mut level_perms: Vec<Vec<Perm>> = Vec::new();
    let mut level_words: Vec<Vec<Word>> = Vec::new();
    let mut generator_images: Vec<Vec<usize>> = Vec::new();
    // one representative per conjugacy class of transitive actions: the
    // kernel only depends on the class, so the diagonal stays small
    let mut class_batches: Vec<Vec<FiniteAction>> = Vec::new();
    for k in 1..=depth {
        class_batches.push(fpgroup::transitive_classes(&pres, k, budget)?);
        let classes: Vec<&FiniteAction> = class_batches.iter().flatten().collect();
        let total_degree: usize = classes.iter().map(|a| a.degree).sum();
        let gens: Vec<(Perm, Word)> = (0..rank)
            .map(|i| {
                let mut block = Vec::with_capacity(total_degree);
                for a in &classes {
                    let off = block.len();
                    block.extend(a.images[i].images().iter().map(|&x| x + off));
                }
                (Perm::new(block).expect("block permutation"), Word::gen(i))
            })
            .collect();
        let (perms, words) = close_perm_group(total_degree, &gens, budget)?;
        let group = perm_group_to_finite_group(&perms);
        let images = gens
            .iter()
            .map(|(p, _)| perms.binary_search(p).expect("generator in closure"))
            .collect();
        level_groups.push(group);
        level_perms.push(perms);
        level_words.push(words);
        generator_images.push(images);
    }
    // transitions: evaluate each element's witness word one level down
    let mut homs = Vec::new();
    for k in 0..depth.saturating_sub(1) {
        let lower_gen_perms: Vec<Perm> = generator_images[k]
            .iter()
            .map(|&i| level_perms[k][i].clone())
            .collect();
        let lower_degree = level_perms[k][0].degree();
        let lower_action = FiniteAction {
            degree: lower_degree,
            images: lower_gen_perms,
        };
        let map: Vec<usize> = level_words[k + 1]
            .iter()
            .map(|w| {
                let image = fpgroup::evaluate(&lower_action, w);
                level_perms[k]
                    .binary_search(&image)
                    .expect("word image lies in the lower level group")
            })
            .collect();
        homs.push(
            GroupHom::new(level_groups[k + 1].clone(), level_groups[k].clone(), map)
                .expect("tower transition"),
        );
    }
    let chain = ProGroupoidChain::from_groups(level_groups.clone(), homs).expect("tower chain");
    Ok(ProSystemData {
        chain,
        level_groups,
        generator_images,
    })
}
