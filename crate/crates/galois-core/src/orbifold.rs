//! Finite group actions on graphs and their equivariant covering theory.
//!
//! A [`GraphAction`] is the translation groupoid `G × X ⇉ X` in combinatorial
//! form. An [`EquivariantCover`] is a cover of X with a compatible family of
//! lifts, the cocycle form of the equivariance diagrams: `φ_e = id`,
//! `φ_g ∘ φ_h = φ_{gh}`, and `p ∘ φ_g = act(g) ∘ p`.
//!
//! The canonical Galois object is |G| copies of X, copy g projecting by
//! `act(g)` and the group translating copies; its automorphisms over the
//! action are exactly the right translations `(g, x) ↦ (g·h, h⁻¹·x)`, which
//! is the one assignment of the classical copy/point formulas under which
//! every validation square commutes with left actions.
//!
//! Orbifold fundamental groups are presented from the auxiliary graph with
//! one extra arrow edge per (vertex, non-identity element), with the
//! composition triangles and translation squares as relators.

use crate::budget::{Budget, BudgetError};
use crate::cover::{
    self, cover_from_action, cover_morphisms_twisted, CoverError, CoveringMap, Graph,
    GraphMorphism,
};
use crate::fpgroup::{self, Presentation, Word};
use crate::group::{self, FiniteGroup};
use thiserror::Error;

/// A finite group acting on a finite graph by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAction {
    pub group: FiniteGroup,
    pub space: Graph,
    /// Per group element, a graph automorphism of the space.
    pub act: Vec<GraphMorphism>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ActionDefect {
    #[error("wrong number of automorphisms")]
    Shape,
    #[error("element {g} does not act by a graph automorphism")]
    NotAutomorphism { g: usize },
    #[error("identity does not act as the identity")]
    IdentityMoves,
    #[error("act({g})∘act({h}) differs from act({g}·{h}) at vertex {witness}")]
    CompositionFails { g: usize, h: usize, witness: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error("space is not connected")]
    NotConnected,
    #[error("equivariant object is not connected")]
    NotGroupoidConnected,
    #[error("action flips an edge; quotient graph undefined")]
    EdgeFlipped,
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
}

/// Checks all [`GraphAction`] invariants exhaustively.
pub fn validate_action(
    group: &FiniteGroup,
    space: &Graph,
    act: &[GraphMorphism],
) -> Result<GraphAction, Vec<ActionDefect>> {
    let mut defects = Vec::new();
    if act.len() != group.order() {
        return Err(vec![ActionDefect::Shape]);
    }
    for (g, m) in act.iter().enumerate() {
        if m.validate(space, space).is_err() || !m.is_bijective(space, space) {
            defects.push(ActionDefect::NotAutomorphism { g });
        }
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    if !act[0].is_identity() {
        defects.push(ActionDefect::IdentityMoves);
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            // left action: act(g)(act(h)(x)) = act(gh)(x)
            let composite = act[h].then(&act[g]);
            if composite != act[group.mul(g, h)] {
                let witness = (0..space.vertex_count())
                    .find(|&v| composite.vmap[v] != act[group.mul(g, h)].vmap[v])
                    .unwrap_or(0);
                defects.push(ActionDefect::CompositionFails { g, h, witness });
            }
        }
    }
    if defects.is_empty() {
        Ok(GraphAction {
            group: group.clone(),
            space: space.clone(),
            act: act.to_vec(),
        })
    } else {
        defects.dedup();
        Err(defects)
    }
}

impl GraphAction {
    pub fn trivial(group: &FiniteGroup, space: &Graph) -> GraphAction {
        GraphAction {
            group: group.clone(),
            space: space.clone(),
            act: vec![GraphMorphism::identity(space); group.order()],
        }
    }

    pub fn apply_vertex(&self, g: usize, v: usize) -> usize {
        self.act[g].vmap[v]
    }

    /// Quotient graph of the action: vertices and darts are orbits. Fails
    /// if some group element maps a dart to its own partner (a flipped
    /// edge), which would force a fixed dart downstairs.
    pub fn quotient_graph(&self) -> Result<(Graph, GraphMorphism), OrbifoldError> {
        let x = &self.space;
        let vorbit = orbit_index(x.vertex_count(), |v| {
            self.act.iter().map(|m| m.vmap[v]).collect()
        });
        let dorbit = orbit_index(x.dart_count(), |d| {
            self.act.iter().map(|m| m.dmap[d]).collect()
        });
        let nv = vorbit.iter().max().map_or(0, |&m| m + 1);
        let nd = dorbit.iter().max().map_or(0, |&m| m + 1);
        let mut dart_vertex = vec![0; nd];
        let mut dart_inv = vec![usize::MAX; nd];
        for d in 0..x.dart_count() {
            dart_vertex[dorbit[d]] = vorbit[x.vertex_of(d)];
            let partner = dorbit[x.inv(d)];
            if partner == dorbit[d] {
                return Err(OrbifoldError::EdgeFlipped);
            }
            dart_inv[dorbit[d]] = partner;
        }
        let names = (0..nv).map(|i| format!("q{i}")).collect();
        let graph = Graph::new(names, dart_vertex, dart_inv).expect("quotient graph");
        Ok((
            graph,
            GraphMorphism {
                vmap: vorbit,
                dmap: dorbit,
            },
        ))
    }
}

fn orbit_index(n: usize, neighbors: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut idx = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if idx[start] != usize::MAX {
            continue;
        }
        let mut queue = vec![start];
        idx[start] = next;
        while let Some(v) = queue.pop() {
            for w in neighbors(v) {
                if idx[w] == usize::MAX {
                    idx[w] = next;
                    queue.push(w);
                }
            }
        }
        next += 1;
    }
    idx
}

// --- equivariant covers ---------------------------------------------------------

/// A cover of the action's space with a compatible lifted action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantCover {
    pub cover: CoveringMap,
    /// `lifts[g]` is the automorphism of the total graph over `act(g)`.
    pub lifts: Vec<GraphMorphism>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EqCoverDefect {
    #[error("wrong number of lifts")]
    Shape,
    #[error("lift of element {g} is not a graph automorphism")]
    LiftNotAutomorphism { g: usize },
    #[error("unit triangle fails: lift of the identity moves things")]
    UnitTriangle,
    #[error("associativity square fails at ({g},{h})")]
    AssociativitySquare { g: usize, h: usize },
    #[error("compatibility square fails for element {g}")]
    CompatibilitySquare { g: usize },
}

/// Checks the three cocycle conditions of an equivariant cover.
pub fn validate_equivariant_cover(
    action: &GraphAction,
    candidate: &EquivariantCover,
) -> Result<(), Vec<EqCoverDefect>> {
    let mut defects = Vec::new();
    let total = &candidate.cover.total;
    if candidate.lifts.len() != action.group.order() {
        return Err(vec![EqCoverDefect::Shape]);
    }
    for (g, m) in candidate.lifts.iter().enumerate() {
        if m.validate(total, total).is_err() || !m.is_bijective(total, total) {
            defects.push(EqCoverDefect::LiftNotAutomorphism { g });
        }
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    if !candidate.lifts[0].is_identity() {
        defects.push(EqCoverDefect::UnitTriangle);
    }
    for g in 0..action.group.order() {
        for h in 0..action.group.order() {
            // φ_g ∘ φ_h = φ_{gh}
            let composite = candidate.lifts[h].then(&candidate.lifts[g]);
            if composite != candidate.lifts[action.group.mul(g, h)] {
                defects.push(EqCoverDefect::AssociativitySquare { g, h });
            }
        }
    }
    for g in 0..action.group.order() {
        // p ∘ φ_g = act(g) ∘ p
        let left = candidate.lifts[g].then(&candidate.cover.map);
        let right = candidate.cover.map.then(&action.act[g]);
        if left != right {
            defects.push(EqCoverDefect::CompatibilitySquare { g });
        }
    }
    if defects.is_empty() {
        Ok(())
    } else {
        defects.dedup();
        Err(defects)
    }
}

/// Components of the total graph form a G-set via the lifts; the cover is
/// connected as an equivariant object when that action has a single orbit.
pub fn is_groupoid_connected(c: &EquivariantCover) -> bool {
    let comps = c.cover.total.components();
    if comps.is_empty() {
        return false;
    }
    let comp_of = |v: usize| comps.iter().position(|b| b.contains(&v)).unwrap();
    let mut seen = vec![false; comps.len()];
    seen[0] = true;
    let mut queue = vec![0usize];
    while let Some(ci) = queue.pop() {
        let anchor = comps[ci][0];
        for m in &c.lifts {
            let cj = comp_of(m.vmap[anchor]);
            if !seen[cj] {
                seen[cj] = true;
                queue.push(cj);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The canonical Galois object: |G| disjoint copies of X, copy g projecting
/// by `act(g)`, the group translating copies by left multiplication.
pub fn canonical_galois_cover(a: &GraphAction) -> EquivariantCover {
    let x = &a.space;
    let n = a.group.order();
    let nv = x.vertex_count();
    let nd = x.dart_count();
    let vidx = |g: usize, v: usize| g * nv + v;
    let didx = |g: usize, d: usize| g * nd + d;
    let mut vertex_names = Vec::with_capacity(n * nv);
    for g in 0..n {
        for v in 0..nv {
            vertex_names.push(format!("{}|{}", a.group.name_of(g), x.vertex_names()[v]));
        }
    }
    let mut dart_vertex = vec![0; n * nd];
    let mut dart_inv = vec![0; n * nd];
    for g in 0..n {
        for d in 0..nd {
            dart_vertex[didx(g, d)] = vidx(g, x.vertex_of(d));
            dart_inv[didx(g, d)] = didx(g, x.inv(d));
        }
    }
    let total = Graph::new(vertex_names, dart_vertex, dart_inv).expect("copies of the space");
    let map = GraphMorphism {
        vmap: (0..n * nv).map(|i| a.act[i / nv].vmap[i % nv]).collect(),
        dmap: (0..n * nd).map(|i| a.act[i / nd].dmap[i % nd]).collect(),
    };
    let cover = CoveringMap::new(x.clone(), total, map).expect("projection by automorphisms");
    let lifts = (0..n)
        .map(|h| GraphMorphism {
            vmap: (0..n * nv)
                .map(|i| vidx(a.group.mul(h, i / nv), i % nv))
                .collect(),
            dmap: (0..n * nd)
                .map(|i| didx(a.group.mul(h, i / nd), i % nd))
                .collect(),
        })
        .collect();
    EquivariantCover { cover, lifts }
}

/// The comparison family for the canonical cover: `Φ(h)` sends copy g point
/// x to copy g·h point `act(h⁻¹)(x)`. Diagrammatically `Φ(a)·Φ(b) = Φ(ab)`.
pub fn canonical_phi(a: &GraphAction) -> Vec<GraphMorphism> {
    let x = &a.space;
    let n = a.group.order();
    let nv = x.vertex_count();
    let nd = x.dart_count();
    (0..n)
        .map(|h| {
            let hinv = a.group.inv(h);
            GraphMorphism {
                vmap: (0..n * nv)
                    .map(|i| a.group.mul(i / nv, h) * nv + a.act[hinv].vmap[i % nv])
                    .collect(),
                dmap: (0..n * nd)
                    .map(|i| a.group.mul(i / nd, h) * nd + a.act[hinv].dmap[i % nd])
                    .collect(),
            }
        })
        .collect()
}

/// The automorphisms of an equivariant cover: cover automorphisms commuting
/// with every lift, as a group under diagrammatic composition.
#[derive(Clone, Debug)]
pub struct EquivariantAut {
    pub group: FiniteGroup,
    pub autos: Vec<GraphMorphism>,
}

pub fn equivariant_aut(
    action: &GraphAction,
    c: &EquivariantCover,
    budget: &Budget,
) -> Result<EquivariantAut, OrbifoldError> {
    let comps = c.cover.total.components().len() as u64;
    let deg = c
        .cover
        .fiber(0.min(action.space.vertex_count().saturating_sub(1)))
        .len()
        .max(1) as u64;
    budget.check_tuples(deg.saturating_pow(comps as u32))?;
    let mut autos = cover_morphisms_twisted(
        &c.cover,
        &c.cover,
        &GraphMorphism::identity(&c.cover.base),
    );
    autos.retain(|m| m.is_bijective(&c.cover.total, &c.cover.total));
    autos.retain(|m| {
        c.lifts
            .iter()
            .all(|phi| m.then(phi) == phi.then(m))
    });
    autos.sort();
    let pos = |m: &GraphMorphism| autos.binary_search(m).expect("closed under composition");
    let names = autos
        .iter()
        .enumerate()
        .map(|(i, _)| format!("χ{i}"))
        .collect();
    let table = autos
        .iter()
        .map(|p| autos.iter().map(|q| pos(&p.then(q))).collect())
        .collect();
    let group = FiniteGroup::new(names, table).expect("equivariant automorphism group");
    Ok(EquivariantAut { group, autos })
}

/// Literal Galois test for an equivariant cover: the object must be
/// connected as an equivariant object, and `(y, χ) ↦ (y, χ(y))` must be a
/// bijection from Y × Aut onto the fiber product Y ×_X Y, on vertices and
/// darts alike.
pub fn is_galois_equivariant(
    action: &GraphAction,
    c: &EquivariantCover,
    budget: &Budget,
) -> Result<bool, OrbifoldError> {
    if !is_groupoid_connected(c) {
        return Err(OrbifoldError::NotGroupoidConnected);
    }
    let aut = equivariant_aut(action, c, budget)?;
    let total = &c.cover.total;
    let vmatch = bijection_onto_fiber_pairs(
        total.vertex_count(),
        |v| c.cover.map.vmap[v],
        action.space.vertex_count(),
        &aut.autos,
        |m, v| m.vmap[v],
    );
    let dmatch = bijection_onto_fiber_pairs(
        total.dart_count(),
        |d| c.cover.map.dmap[d],
        action.space.dart_count(),
        &aut.autos,
        |m, d| m.dmap[d],
    );
    Ok(vmatch && dmatch)
}

fn bijection_onto_fiber_pairs(
    n_total: usize,
    down: impl Fn(usize) -> usize,
    n_base: usize,
    autos: &[GraphMorphism],
    apply: impl Fn(&GraphMorphism, usize) -> usize,
) -> bool {
    let mut fiber_sizes = vec![0usize; n_base];
    for i in 0..n_total {
        fiber_sizes[down(i)] += 1;
    }
    let expected: usize = fiber_sizes.iter().map(|&s| s * s).sum();
    let mut seen = std::collections::BTreeSet::new();
    for m in autos {
        for i in 0..n_total {
            if !seen.insert((i, apply(m, i))) {
                return false;
            }
        }
    }
    seen.len() == expected
}

// --- orbifold fundamental group ---------------------------------------------------

/// A presentation of the orbifold fundamental group with its labeling map to
/// G and the images of the space's own fundamental group generators.
#[derive(Clone, Debug)]
pub struct OrbifoldPresentationData {
    pub presentation: Presentation,
    /// For each generator, the group element it maps to; the induced map on
    /// words (diagrammatic products of labels) kills every relator.
    pub generator_labels: Vec<usize>,
    /// Free presentation of π₁ of the space at the same base.
    pub pi1x_presentation: Presentation,
    /// Images of the space's free generators as words in the orbifold
    /// generators; they all map to the identity label.
    pub pi1x_images: Vec<Word>,
}

impl OrbifoldPresentationData {
    /// Symbolic check: every relator's label product is the identity.
    pub fn relators_die(&self, g: &FiniteGroup) -> bool {
        self.presentation.relators.iter().all(|r| {
            self.label_of_word(g, r) == 0
        })
    }

    pub fn label_of_word(&self, g: &FiniteGroup, w: &Word) -> usize {
        let mut acc = 0usize;
        for &(gen, e) in w.letters() {
            let lab = self.generator_labels[gen];
            let lab = if e == 1 { lab } else { g.inv(lab) };
            acc = g.mul(acc, lab);
        }
        acc
    }

    /// All image words of π₁(X) generators have identity label.
    pub fn images_die(&self, g: &FiniteGroup) -> bool {
        self.pi1x_images.iter().all(|w| self.label_of_word(g, w) == 0)
    }
}

/// The auxiliary graph: the space's edges plus one arrow edge `v → g·v` per
/// vertex and non-identity element. The space's darts keep their indices.
fn auxiliary_graph(a: &GraphAction) -> (Graph, Vec<(usize, usize)>) {
    let x = &a.space;
    let mut edges: Vec<(usize, usize)> = x
        .edge_pairs()
        .iter()
        .map(|&(d, _)| (x.vertex_of(d), x.other_end(d)))
        .collect();
    let mut arrows = Vec::new();
    for v in 0..x.vertex_count() {
        for g in 1..a.group.order() {
            arrows.push((v, g));
            edges.push((v, a.apply_vertex(g, v)));
        }
    }
    let graph = Graph::from_edges(x.vertex_names().to_vec(), &edges);
    (graph, arrows)
}

/// Label of one auxiliary-graph dart, as a diagrammatic letter: traversing
/// the arrow `(v, g)` forwards contributes `g⁻¹`, backwards `g`; the
/// space's own darts contribute the identity. With this convention the
/// word-to-label map is a homomorphism under diagrammatic concatenation.
fn dart_label(a: &GraphAction, x_darts: usize, dart: usize, arrows: &[(usize, usize)]) -> usize {
    if dart < x_darts {
        return 0;
    }
    let arrow = (dart - x_darts) / 2;
    let (_, g) = arrows[arrow];
    if (dart - x_darts) % 2 == 0 {
        a.group.inv(g)
    } else {
        g
    }
}

fn path_label(a: &GraphAction, x_darts: usize, arrows: &[(usize, usize)], darts: &[usize]) -> usize {
    darts.iter().fold(0, |acc, &d| {
        a.group.mul(acc, dart_label(a, x_darts, d, arrows))
    })
}

/// Presents the fundamental group of the action groupoid at a base vertex:
/// generators are the non-tree edges of the auxiliary graph; relators are
/// the arrow-composition triangles and the edge-translation squares,
/// written as loops and collapsed along a BFS spanning tree.
pub fn orbifold_pi1(a: &GraphAction, base: usize) -> Result<OrbifoldPresentationData, OrbifoldError> {
    if !a.space.is_connected() {
        return Err(OrbifoldError::NotConnected);
    }
    let x = &a.space;
    let x_darts = x.dart_count();
    let (gamma, arrows) = auxiliary_graph(a);
    let (_, tree, _) = cover::pi1_graph(&gamma, base)?;

    // relator loops as dart paths in the auxiliary graph
    let arrow_fwd = |v: usize, g: usize| -> Option<usize> {
        if g == 0 {
            return None;
        }
        let k = arrows
            .iter()
            .position(|&(av, ag)| av == v && ag == g)
            .expect("arrow exists");
        Some(x_darts + 2 * k)
    };
    let mut relator_paths: Vec<Vec<usize>> = Vec::new();
    // composition triangles: arrow(v,h) then arrow(h·v,g) equals arrow(v,gh)
    for v in 0..x.vertex_count() {
        for g in 1..a.group.order() {
            for h in 1..a.group.order() {
                let mut path = vec![
                    arrow_fwd(v, h).unwrap(),
                    arrow_fwd(a.apply_vertex(h, v), g).unwrap(),
                ];
                if let Some(d) = arrow_fwd(v, a.group.mul(g, h)) {
                    path.push(gamma.inv(d));
                }
                relator_paths.push(path);
            }
        }
    }
    // translation squares: arrow(u,g)·(g·e)·arrow(v,g)⁻¹·e⁻¹ per edge and g
    for (d0, _) in x.edge_pairs() {
        let u = x.vertex_of(d0);
        let v = x.other_end(d0);
        for g in 1..a.group.order() {
            let path = vec![
                arrow_fwd(u, g).unwrap(),
                a.act[g].dmap[d0],
                gamma.inv(arrow_fwd(v, g).unwrap()),
                gamma.inv(d0),
            ];
            relator_paths.push(path);
        }
    }

    let mut relators: Vec<Word> = relator_paths
        .iter()
        .map(|p| tree.word_of_path(&gamma, p))
        .filter(|w| !w.is_empty())
        .collect();
    relators.sort();
    relators.dedup();

    // generator names and labels
    let x_edge_pairs = x.edge_pairs().len();
    let names: Vec<String> = tree
        .generators
        .iter()
        .map(|&(d, _)| {
            let pair = d / 2;
            if pair < x_edge_pairs {
                format!("e{pair}")
            } else {
                let (v, g) = arrows[pair - x_edge_pairs];
                format!("a{v}g{g}")
            }
        })
        .collect();
    let presentation = Presentation::new(names, relators).expect("orbifold presentation");
    let generator_labels = (0..tree.generators.len())
        .map(|i| {
            let loop_darts = tree.generator_loop(&gamma, i);
            path_label(a, x_darts, &arrows, &loop_darts)
        })
        .collect();

    // images of π₁(X): its generator loops read inside the auxiliary graph
    let (pi1x, xtree, _) = cover::pi1_graph(x, base)?;
    let pi1x_images = (0..pi1x.rank())
        .map(|i| {
            let loop_darts = xtree.generator_loop(x, i);
            tree.word_of_path(&gamma, &loop_darts)
        })
        .collect();

    Ok(OrbifoldPresentationData {
        presentation,
        generator_labels,
        pi1x_presentation: pi1x,
        pi1x_images,
    })
}

// --- enumeration of equivariant covers ---------------------------------------------

/// All lifts of the automorphism `act(g)` through a cover.
pub fn lifts_of(p: &CoveringMap, twist: &GraphMorphism) -> Vec<GraphMorphism> {
    let mut out = cover_morphisms_twisted(p, p, twist);
    out.retain(|m| m.is_bijective(&p.total, &p.total));
    out
}

/// All equivariant covers of degree `d` up to equivariant isomorphism, in a
/// canonical order. Covers of the space are enumerated through monodromy
/// actions; lift families are derived from choices on a generating set of
/// the group and validated in full.
pub fn enumerate_equivariant_covers(
    a: &GraphAction,
    base: usize,
    degree: usize,
    budget: &Budget,
) -> Result<Vec<EquivariantCover>, OrbifoldError> {
    if !a.space.is_connected() {
        return Err(OrbifoldError::NotConnected);
    }
    let (pres, _, _) = cover::pi1_graph(&a.space, base)?;
    let actions = fpgroup::enumerate_actions(&pres, degree, budget)?;
    let gens = a.group.generating_set();
    let words = group::words_in_generators(&a.group, &gens);
    let mut objects: Vec<EquivariantCover> = Vec::new();
    for (action, _) in &actions {
        let cov = cover_from_action(&a.space, base, action)?;
        // lifts per generator
        let gen_lifts: Vec<Vec<GraphMorphism>> =
            gens.iter().map(|&g| lifts_of(&cov, &a.act[g])).collect();
        if gen_lifts.iter().any(|l| l.is_empty()) {
            continue;
        }
        let tuples: u64 = gen_lifts
            .iter()
            .map(|l| l.len() as u64)
            .try_fold(1u64, |acc, n| acc.checked_mul(n))
            .unwrap_or(u64::MAX);
        budget.check_tuples(tuples)?;
        let mut choice = vec![0usize; gens.len()];
        loop {
            // derive the whole family from the generator choices
            let family: Vec<GraphMorphism> = words
                .iter()
                .map(|w| {
                    w.iter().rev().fold(
                        GraphMorphism::identity(&cov.total),
                        |acc, &gi| acc.then(&gen_lifts[gi][choice[gi]]),
                    )
                })
                .collect();
            let candidate = EquivariantCover {
                cover: cov.clone(),
                lifts: family,
            };
            if validate_equivariant_cover(a, &candidate).is_ok() {
                objects.push(candidate);
            }
            if gens.is_empty() {
                break;
            }
            let mut k = gens.len();
            let mut done = false;
            loop {
                if k == 0 {
                    done = true;
                    break;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < gen_lifts[k].len() {
                    break;
                }
                choice[k] = 0;
            }
            if done {
                break;
            }
        }
    }
    // dedupe up to equivariant isomorphism, keeping first representatives
    let mut classes: Vec<EquivariantCover> = Vec::new();
    'outer: for obj in objects {
        for rep in &classes {
            if are_equivariantly_isomorphic(rep, &obj) {
                continue 'outer;
            }
        }
        classes.push(obj);
    }
    Ok(classes)
}

/// Equivariant isomorphism: a cover isomorphism intertwining the two lift
/// families.
pub fn are_equivariantly_isomorphic(p: &EquivariantCover, q: &EquivariantCover) -> bool {
    cover::cover_isomorphisms(&p.cover, &q.cover)
        .into_iter()
        .any(|chi| {
            p.lifts
                .iter()
                .zip(&q.lifts)
                .all(|(pg, qg)| pg.then(&chi) == chi.then(qg))
        })
}

// --- the exactness report -----------------------------------------------------------

#[derive(Clone, Debug)]
pub struct E3Row {
    pub degree: usize,
    pub connected_covers: usize,
    pub transitive_action_classes: usize,
    pub all_covers: usize,
    pub all_action_classes: usize,
}

impl E3Row {
    pub fn ok(&self) -> bool {
        self.connected_covers == self.transitive_action_classes
            && self.all_covers == self.all_action_classes
    }
}

/// Evidence for the short exact sequence `1 → π₁X → π₁^orb → G → 1` at
/// finite level: surjectivity of the labeling with witness words (E1),
/// triviality of the composite on π₁X (E2), and the cover/action
/// correspondence per degree (E3), counting both connected objects against
/// transitive classes and all objects against all classes.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub relators_die: bool,
    pub e1_surjective: bool,
    /// For each group element, a word in orbifold generators labeling to it.
    pub e1_witnesses: Vec<Option<Word>>,
    pub e2_trivial: bool,
    pub e3: Vec<E3Row>,
    pub data: OrbifoldPresentationData,
}

impl ExactnessReport {
    pub fn all_ok(&self) -> bool {
        self.relators_die
            && self.e1_surjective
            && self.e2_trivial
            && self.e3.iter().all(|r| r.ok())
    }
}

pub fn quotient_exact_sequence(
    a: &GraphAction,
    base: usize,
    degree_cap: usize,
    budget: &Budget,
) -> Result<ExactnessReport, OrbifoldError> {
    let data = orbifold_pi1(a, base)?;
    let g = &a.group;
    let relators_die = data.relators_die(g);
    let e2_trivial = data.images_die(g);

    // E1: close the generator labels, tracking witness words
    let mut witness: Vec<Option<Word>> = vec![None; g.order()];
    witness[0] = Some(Word::empty());
    let mut queue = vec![0usize];
    while let Some(e) = queue.pop() {
        let w = witness[e].clone().unwrap();
        for (i, &lab) in data.generator_labels.iter().enumerate() {
            for (target, letter) in [
                (g.mul(e, lab), (i, 1i8)),
                (g.mul(e, g.inv(lab)), (i, -1i8)),
            ] {
                if witness[target].is_none() {
                    witness[target] = Some(w.concat(&Word::from_letters(vec![letter])));
                    queue.push(target);
                }
            }
        }
    }
    let e1_surjective = witness.iter().all(|w| w.is_some());

    // E3: class counts per degree
    let orb_budget = Budget {
        max_generators: data.presentation.rank().max(budget.max_generators),
        ..budget.clone()
    };
    let mut e3 = Vec::new();
    for d in 1..=degree_cap {
        let covers = enumerate_equivariant_covers(a, base, d, budget)?;
        let connected_covers = covers.iter().filter(|c| is_groupoid_connected(c)).count();
        let all_covers = covers.len();
        let transitive_action_classes =
            fpgroup::transitive_classes(&data.presentation, d, &orb_budget)?.len();
        let all_action_classes = {
            let mut canon = std::collections::BTreeSet::new();
            for (act, _) in fpgroup::enumerate_actions(&data.presentation, d, &orb_budget)? {
                canon.insert(act.canonical_form());
            }
            canon.len()
        };
        e3.push(E3Row {
            degree: d,
            connected_covers,
            transitive_action_classes,
            all_covers,
            all_action_classes,
        });
    }

    Ok(ExactnessReport {
        relators_die,
        e1_surjective,
        e1_witnesses: witness,
        e2_trivial,
        e3,
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::cyclic;

    fn reflection_on_path() -> GraphAction {
        fixtures::action_by_name("z2-reflect-path2")
    }

    fn rotation_on_square() -> GraphAction {
        fixtures::action_by_name("z2-rotate-cycle4")
    }

    #[test]
    fn validate_action_examples() {
        let a = reflection_on_path();
        assert_eq!(a.group.order(), 2);
        // corrupt one dart image: composition square must fail
        let mut act = a.act.clone();
        let d = act[1].dmap[0];
        let e = act[1].dmap[1];
        act[1].dmap[0] = e;
        act[1].dmap[1] = d;
        assert!(validate_action(&a.group, &a.space, &act).is_err());
        // trivial action always validates
        let t = GraphAction::trivial(&cyclic(3), &a.space);
        assert!(validate_action(&t.group, &t.space, &t.act).is_ok());
    }

    #[test]
    fn canonical_cover_validates_and_is_galois() {
        let budget = Budget::default();
        for a in [reflection_on_path(), rotation_on_square()] {
            let c = canonical_galois_cover(&a);
            assert!(validate_equivariant_cover(&a, &c).is_ok());
            assert_eq!(c.cover.degree_over(0), a.group.order());
            assert!(is_groupoid_connected(&c));
            assert!(is_galois_equivariant(&a, &c, &budget).unwrap());
            let aut = equivariant_aut(&a, &c, &budget).unwrap();
            assert_eq!(aut.group.order(), a.group.order());
            // the enumerated automorphisms are exactly the Φ family
            let mut phi = canonical_phi(&a);
            phi.sort();
            assert_eq!(aut.autos, phi);
            // Φ is a diagrammatic homomorphism and a bijection onto Aut
            let phi = canonical_phi(&a);
            let g = &a.group;
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert_eq!(phi[x].then(&phi[y]), phi[g.mul(x, y)]);
                }
            }
            assert!(crate::group::find_isomorphism(&aut.group, g).is_some());
        }
    }

    #[test]
    fn corrupt_lift_family_detected() {
        let a = rotation_on_square();
        let mut c = canonical_galois_cover(&a);
        // swap two vertices inside the lift of the non-identity element
        let m = &mut c.lifts[1];
        m.vmap.swap(0, 1);
        let defects = validate_equivariant_cover(&a, &c).unwrap_err();
        assert!(defects.iter().any(|d| matches!(
            d,
            EqCoverDefect::AssociativitySquare { .. }
                | EqCoverDefect::CompatibilitySquare { .. }
                | EqCoverDefect::LiftNotAutomorphism { .. }
        )));
    }

    #[test]
    fn disjoint_canonical_covers_refused_as_not_connected() {
        let budget = Budget::default();
        let a = reflection_on_path();
        let c = canonical_galois_cover(&a);
        // double everything: two copies of the canonical object
        let total = &c.cover.total;
        let nv = total.vertex_count();
        let nd = total.dart_count();
        let mut names = total.vertex_names().to_vec();
        names.extend(total.vertex_names().iter().map(|n| format!("{n}'")));
        let mut dart_vertex: Vec<usize> = (0..nd).map(|d| total.vertex_of(d)).collect();
        dart_vertex.extend((0..nd).map(|d| total.vertex_of(d) + nv));
        let mut dart_inv: Vec<usize> = (0..nd).map(|d| total.inv(d)).collect();
        dart_inv.extend((0..nd).map(|d| total.inv(d) + nd));
        let doubled = Graph::new(names, dart_vertex, dart_inv).unwrap();
        let map = GraphMorphism {
            vmap: (0..2 * nv).map(|v| c.cover.map.vmap[v % nv]).collect(),
            dmap: (0..2 * nd).map(|d| c.cover.map.dmap[d % nd]).collect(),
        };
        let cover2 = CoveringMap::new(a.space.clone(), doubled, map).unwrap();
        let lifts2 = c
            .lifts
            .iter()
            .map(|m| GraphMorphism {
                vmap: (0..2 * nv)
                    .map(|v| if v < nv { m.vmap[v] } else { m.vmap[v - nv] + nv })
                    .collect(),
                dmap: (0..2 * nd)
                    .map(|d| if d < nd { m.dmap[d] } else { m.dmap[d - nd] + nd })
                    .collect(),
            })
            .collect();
        let disjoint = EquivariantCover {
            cover: cover2,
            lifts: lifts2,
        };
        assert!(validate_equivariant_cover(&a, &disjoint).is_ok());
        assert!(matches!(
            is_galois_equivariant(&a, &disjoint, &budget),
            Err(OrbifoldError::NotGroupoidConnected)
        ));
    }

    #[test]
    fn trivial_group_enumeration_reduces_to_plain_covers() {
        let budget = Budget::default();
        let x = fixtures::graph_by_name("loop");
        let a = GraphAction::trivial(&crate::group::trivial(), &x);
        // degree 2 over the loop: the trivial pair and the connected double
        let classes = enumerate_equivariant_covers(&a, 0, 2, &budget).unwrap();
        assert_eq!(classes.len(), 2);
        let plain = fpgroup::transitive_classes(&cover::pi1_graph(&x, 0).unwrap().0, 2, &budget)
            .unwrap()
            .len();
        let connected = classes
            .iter()
            .filter(|c| is_groupoid_connected(c))
            .count();
        assert_eq!(connected, plain);
    }

    #[test]
    fn degree_one_cover_is_terminal_and_galois() {
        let budget = Budget::default();
        let a = reflection_on_path();
        let covers = enumerate_equivariant_covers(&a, 0, 1, &budget).unwrap();
        assert_eq!(covers.len(), 1);
        let c = &covers[0];
        assert!(is_galois_equivariant(&a, c, &budget).unwrap());
        let aut = equivariant_aut(&a, c, &budget).unwrap();
        assert_eq!(aut.group.order(), 1);
    }

    #[test]
    fn orbifold_pi1_reflection_is_z2() {
        let budget = Budget::with_generators(8);
        let a = reflection_on_path();
        let data = orbifold_pi1(&a, 0).unwrap();
        assert!(data.relators_die(&a.group));
        assert!(data.images_die(&a.group));
        assert_eq!(fpgroup::abelianization(&data.presentation), (0, vec![2]));
        let spectrum = fpgroup::quotient_spectrum(&data.presentation, 4, &budget).unwrap();
        let z2 = Presentation::new(
            vec!["t".into()],
            vec![Word::from_letters(vec![(0, 1), (0, 1)])],
        )
        .unwrap();
        assert_eq!(
            spectrum,
            fpgroup::quotient_spectrum(&z2, 4, &budget).unwrap()
        );
    }

    #[test]
    fn orbifold_pi1_free_rotation_matches_quotient() {
        let budget = Budget::with_generators(8);
        let a = rotation_on_square();
        let data = orbifold_pi1(&a, 0).unwrap();
        let (q, _) = a.quotient_graph().unwrap();
        let (qp, _, _) = cover::pi1_graph(&q, 0).unwrap();
        assert_eq!(
            fpgroup::abelianization(&data.presentation),
            fpgroup::abelianization(&qp)
        );
        assert_eq!(
            fpgroup::quotient_spectrum(&data.presentation, 4, &budget).unwrap(),
            fpgroup::quotient_spectrum(&qp, 4, &budget).unwrap()
        );
        // labeling onto Z/2 with π₁X-images of trivial label
        assert!(data.relators_die(&a.group));
        assert!(data.images_die(&a.group));
    }

    #[test]
    fn exactness_reflection_example() {
        let budget = Budget::default();
        let a = reflection_on_path();
        let report = quotient_exact_sequence(&a, 0, 2, &budget).unwrap();
        assert!(report.relators_die);
        assert!(report.e1_surjective);
        assert!(report.e2_trivial);
        // degree 2: connected side is the sheet-swapping pair (1 class);
        // including disconnected objects, the sheet-preserving pair joins it
        let row = &report.e3[1];
        assert_eq!(row.degree, 2);
        assert_eq!(row.connected_covers, 1);
        assert_eq!(row.transitive_action_classes, 1);
        assert_eq!(row.all_covers, 2);
        assert_eq!(row.all_action_classes, 2);
        assert!(report.all_ok());
    }

    #[test]
    fn exactness_trivial_group_degenerates() {
        let budget = Budget::default();
        let x = fixtures::graph_by_name("wedge2");
        let a = GraphAction::trivial(&crate::group::trivial(), &x);
        let report = quotient_exact_sequence(&a, 0, 2, &budget).unwrap();
        assert!(report.all_ok());
        // with G trivial the orbifold group is π₁X itself
        assert_eq!(
            fpgroup::abelianization(&report.data.presentation),
            fpgroup::abelianization(&report.data.pi1x_presentation)
        );
    }

    #[test]
    fn exactness_free_rotation() {
        let budget = Budget::default();
        let a = rotation_on_square();
        let report = quotient_exact_sequence(&a, 0, 2, &budget).unwrap();
        assert!(report.all_ok(), "{report:?}");
    }

    #[test]
    fn loop_flip_gives_infinite_dihedral() {
        let a = fixtures::action_by_name("z2-flip-loop");
        let data = orbifold_pi1(&a, 0).unwrap();
        // infinite dihedral abelianizes to (Z/2)²
        assert_eq!(fpgroup::abelianization(&data.presentation), (0, vec![2, 2]));
        assert!(data.relators_die(&a.group));
    }
}
