//! Truncated simplicial sets and simplicial graphs.
//!
//! Everything is truncated at a fixed level n (default 2 downstream): face
//! and degeneracy tables are stored per level and every simplicial identity
//! expressible inside the truncation is validated. Coskeleta are computed
//! by the compatible-boundary-family formula; skeleta are the degeneracy
//! closures of the low levels. Simplicial graphs carry a graph per level
//! with structure maps that are graph morphisms; their Čech nerves,
//! hypercovering comparisons and levelwise components feed the fundamental
//! group comparison at the end of the module.

use crate::budget::Budget;
use crate::cover::{self, CoveringMap, Graph, GraphMorphism};
use crate::fpgroup::{self, Presentation, Word};
use crate::group::FiniteGroup;
use std::collections::BTreeMap;
use thiserror::Error;

/// A simplicial set truncated at level `n`: finite simplex sets for levels
/// `0..=n` with total face and degeneracy tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSimplicialSet {
    /// `sizes[k]` = number of k-simplices.
    pub sizes: Vec<usize>,
    /// `faces[k-1][i][x]` = `d_i x` for `x` at level `k ≥ 1`, `0 ≤ i ≤ k`.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degens[k][i][x]` = `s_i x` for `x` at level `k < n`, `0 ≤ i ≤ k`.
    pub degens: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SimplicialDefect {
    #[error("table shapes inconsistent at level {level}")]
    Shape { level: usize },
    #[error("face-face identity fails at level {level} (i={i}, j={j}, x={x})")]
    FaceFace { level: usize, i: usize, j: usize, x: usize },
    #[error("degeneracy-degeneracy identity fails at level {level} (i={i}, j={j}, x={x})")]
    DegenDegen { level: usize, i: usize, j: usize, x: usize },
    #[error("face-degeneracy identity fails at level {level} (i={i}, j={j}, x={x})")]
    FaceDegen { level: usize, i: usize, j: usize, x: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("skeleton/coskeleton level {m} exceeds truncation {n}")]
    LevelRange { m: usize, n: usize },
    #[error("truncation too shallow: need {need}, have {have}")]
    TruncationTooShallow { need: usize, have: usize },
    #[error("no simplices at level 0")]
    Empty,
    #[error(transparent)]
    Cover(#[from] cover::CoverError),
}

impl TruncatedSimplicialSet {
    pub fn new(
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, Vec<SimplicialDefect>> {
        let s = TruncatedSimplicialSet {
            sizes,
            faces,
            degens,
        };
        validate_simplicial(&s).map(|()| s)
    }

    /// Truncation level n.
    pub fn trunc(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, level: usize) -> usize {
        self.sizes[level]
    }

    /// `d_i x` at level `k`.
    pub fn d(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k - 1][i][x]
    }

    /// `s_i x` at level `k`.
    pub fn s(&self, k: usize, i: usize, x: usize) -> usize {
        self.degens[k][i][x]
    }

    /// Is the level-k simplex `x` degenerate (an image of some `s_i`)?
    pub fn is_degenerate(&self, k: usize, x: usize) -> bool {
        if k == 0 {
            return false;
        }
        (0..k).any(|i| (0..self.sizes[k - 1]).any(|y| self.degens[k - 1][i][y] == x))
    }

    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        (0..self.sizes[k])
            .filter(|&x| !self.is_degenerate(k, x))
            .collect()
    }

    /// The constant simplicial set on one point.
    pub fn point(trunc: usize) -> TruncatedSimplicialSet {
        let sizes = vec![1; trunc + 1];
        let faces = (1..=trunc).map(|k| vec![vec![0]; k + 1]).collect();
        let degens = (0..trunc).map(|k| vec![vec![0]; k + 1]).collect();
        TruncatedSimplicialSet::new(sizes, faces, degens).expect("point")
    }
}

/// Checks every simplicial identity expressible within the truncation;
/// names the first violated identity per kind with witnesses.
pub fn validate_simplicial(s: &TruncatedSimplicialSet) -> Result<(), Vec<SimplicialDefect>> {
    let n = s.sizes.len().saturating_sub(1);
    let mut defects = Vec::new();
    if s.sizes.is_empty() || s.faces.len() != n || s.degens.len() != n {
        return Err(vec![SimplicialDefect::Shape { level: 0 }]);
    }
    for k in 1..=n {
        let f = &s.faces[k - 1];
        if f.len() != k + 1
            || f.iter()
                .any(|m| m.len() != s.sizes[k] || m.iter().any(|&y| y >= s.sizes[k - 1]))
        {
            defects.push(SimplicialDefect::Shape { level: k });
        }
    }
    for k in 0..n {
        let g = &s.degens[k];
        if g.len() != k + 1
            || g.iter()
                .any(|m| m.len() != s.sizes[k] || m.iter().any(|&y| y >= s.sizes[k + 1]))
        {
            defects.push(SimplicialDefect::Shape { level: k });
        }
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    // d_i d_j = d_{j-1} d_i for i < j
    for k in 2..=n {
        for j in 1..=k {
            for i in 0..j {
                for x in 0..s.sizes[k] {
                    if s.d(k - 1, i, s.d(k, j, x)) != s.d(k - 1, j - 1, s.d(k, i, x)) {
                        defects.push(SimplicialDefect::FaceFace { level: k, i, j, x });
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i ≤ j
    for k in 0..n.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                for x in 0..s.sizes[k] {
                    if s.s(k + 1, i, s.s(k, j, x)) != s.s(k + 1, j + 1, s.s(k, i, x)) {
                        defects.push(SimplicialDefect::DegenDegen { level: k, i, j, x });
                    }
                }
            }
        }
    }
    // mixed identities on level k: d_i s_j : level k → level k
    for k in 0..n {
        for j in 0..=k {
            for i in 0..=(k + 1) {
                for x in 0..s.sizes[k] {
                    let lhs = s.d(k + 1, i, s.s(k, j, x));
                    let rhs = if i < j {
                        s.s(k - 1, j - 1, s.d(k, i, x))
                    } else if i == j || i == j + 1 {
                        x
                    } else {
                        s.s(k - 1, j, s.d(k, i - 1, x))
                    };
                    if lhs != rhs {
                        defects.push(SimplicialDefect::FaceDegen { level: k, i, j, x });
                    }
                }
            }
        }
    }
    if defects.is_empty() {
        Ok(())
    } else {
        defects.truncate(16);
        Err(defects)
    }
}

/// The nerve of a finite group, truncated: level k is `G^k`, faces multiply
/// adjacent entries, degeneracies insert the identity. Supports trunc ≤ 2,
/// which is all the fundamental-group machinery needs.
pub fn nerve_of_group(g: &FiniteGroup, trunc: usize) -> TruncatedSimplicialSet {
    assert!(trunc <= 2, "group nerves materialized to truncation 2");
    let n = g.order();
    let mut sizes = vec![1];
    if trunc >= 1 {
        sizes.push(n);
    }
    if trunc >= 2 {
        sizes.push(n * n);
    }
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    if trunc >= 1 {
        faces.push(vec![vec![0; n], vec![0; n]]);
        degens.push(vec![vec![0]]);
    }
    if trunc >= 2 {
        let idx = |a: usize, b: usize| a * n + b;
        let mut d0 = vec![0; n * n];
        let mut d1 = vec![0; n * n];
        let mut d2 = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                d0[idx(a, b)] = b;
                d1[idx(a, b)] = g.mul(a, b);
                d2[idx(a, b)] = a;
            }
        }
        faces.push(vec![d0, d1, d2]);
        let s0: Vec<usize> = (0..n).map(|a| idx(0, a)).collect();
        let s1: Vec<usize> = (0..n).map(|a| idx(a, 0)).collect();
        degens.push(vec![s0, s1]);
    }
    TruncatedSimplicialSet::new(sizes, faces, degens).expect("group nerve")
}

// --- skeleton and coskeleton ----------------------------------------------------

/// The m-skeleton as a subobject: levels above m keep exactly the simplices
/// generated by degeneracies from level ≤ m.
pub fn skeleton(
    s: &TruncatedSimplicialSet,
    m: usize,
) -> Result<TruncatedSimplicialSet, SimplicialError> {
    let n = s.trunc();
    if m > n {
        return Err(SimplicialError::LevelRange { m, n });
    }
    // keep[k] = kept simplex indices at level k, ascending
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    for k in 0..=m {
        keep.push((0..s.sizes[k]).collect());
    }
    for k in m + 1..=n {
        let mut lvl: Vec<usize> = Vec::new();
        for i in 0..k {
            for &y in &keep[k - 1] {
                lvl.push(s.s(k - 1, i, y));
            }
        }
        lvl.sort_unstable();
        lvl.dedup();
        keep.push(lvl);
    }
    let pos: Vec<BTreeMap<usize, usize>> = keep
        .iter()
        .map(|lvl| lvl.iter().enumerate().map(|(i, &x)| (x, i)).collect())
        .collect();
    let sizes: Vec<usize> = keep.iter().map(|l| l.len()).collect();
    let faces = (1..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    keep[k]
                        .iter()
                        .map(|&x| pos[k - 1][&s.d(k, i, x)])
                        .collect()
                })
                .collect()
        })
        .collect();
    let degens = (0..n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    keep[k]
                        .iter()
                        .map(|&x| pos[k + 1][&s.s(k, i, x)])
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(TruncatedSimplicialSet::new(sizes, faces, degens)
        .expect("skeleton of a valid simplicial set"))
}

/// The m-coskeleton: levels above m are compatible boundary families,
/// tuples `(x_0, .., x_k)` of level-(k−1) simplices with
/// `d_i x_j = d_{j-1} x_i` for `i < j`; faces are projections and
/// degeneracies are induced by the simplicial identities.
pub fn coskeleton(
    s: &TruncatedSimplicialSet,
    m: usize,
) -> Result<TruncatedSimplicialSet, SimplicialError> {
    let n = s.trunc();
    if m > n {
        return Err(SimplicialError::LevelRange { m, n });
    }
    let mut sizes: Vec<usize> = s.sizes[..=m].to_vec();
    let mut faces: Vec<Vec<Vec<usize>>> = s.faces.iter().take(m).cloned().collect();
    let mut degens: Vec<Vec<Vec<usize>>> = s.degens.iter().take(m).cloned().collect();
    // face maps of the working object for levels ≤ current top
    for k in m + 1..=n {
        let lower = sizes[k - 1];
        // enumerate compatible tuples
        let d_low = |i: usize, x: usize| -> usize {
            if k - 1 == 0 {
                unreachable!("tuples at level 1 have no compatibility conditions")
            } else if k - 1 <= m {
                s.d(k - 1, i, x)
            } else {
                faces[k - 2][i][x]
            }
        };
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut cur = vec![0usize; k + 1];
        'enumerate: loop {
            let compatible = if k == 1 {
                true
            } else {
                (0..=k).all(|j| {
                    (0..j).all(|i| d_low(i, cur[j]) == d_low(j - 1, cur[i]))
                })
            };
            if compatible {
                tuples.push(cur.clone());
            }
            let mut t = k + 1;
            loop {
                if t == 0 {
                    break 'enumerate;
                }
                t -= 1;
                cur[t] += 1;
                if cur[t] < lower {
                    break;
                }
                cur[t] = 0;
            }
        }
        let pos: BTreeMap<Vec<usize>, usize> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        // faces at level k: projections
        let face_k: Vec<Vec<usize>> = (0..=k)
            .map(|i| tuples.iter().map(|t| t[i]).collect())
            .collect();
        // degeneracies level k-1 → k: entries live one level down, where
        // the degeneracies k-2 → k-1 are the originals or already built
        let s_low = |i: usize, x: usize| -> usize {
            if k - 2 < m {
                s.s(k - 2, i, x)
            } else {
                degens[k - 2][i][x]
            }
        };
        let degen_km1: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                (0..lower)
                    .map(|x| {
                        let tuple: Vec<usize> = (0..=k)
                            .map(|j| {
                                if j < i {
                                    s_low(i - 1, d_low(j, x))
                                } else if j == i || j == i + 1 {
                                    x
                                } else {
                                    s_low(i, d_low(j - 1, x))
                                }
                            })
                            .collect();
                        *pos.get(&tuple).expect("induced degeneracy is compatible")
                    })
                    .collect()
            })
            .collect();
        degens.push(degen_km1);
        faces.push(face_k);
        sizes.push(tuples.len());
    }
    // if m == n everything was copied verbatim
    if m == n {
        return Ok(s.clone());
    }
    TruncatedSimplicialSet::new(sizes, faces, degens)
        .map_err(|_| SimplicialError::LevelRange { m, n })
}

// --- simplicial maps and homotopy ------------------------------------------------

/// All simplicial maps `s -> t`, each as per-level functions, in
/// lexicographic order. Level-k values are constrained by faces into the
/// already-chosen level below, then everything is verified in full.
pub fn simplicial_maps(
    s: &TruncatedSimplicialSet,
    t: &TruncatedSimplicialSet,
) -> Vec<Vec<Vec<usize>>> {
    assert_eq!(s.trunc(), t.trunc());
    let mut out = Vec::new();
    let mut levels: Vec<Vec<usize>> = Vec::new();
    search_level(s, t, 0, &mut levels, &mut out);
    out.sort();
    out
}

fn search_level(
    s: &TruncatedSimplicialSet,
    t: &TruncatedSimplicialSet,
    k: usize,
    levels: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if k > s.trunc() {
        if is_simplicial_map(s, t, levels) {
            out.push(levels.clone());
        }
        return;
    }
    // candidate images per simplex at this level
    let candidates: Vec<Vec<usize>> = (0..s.sizes[k])
        .map(|x| {
            (0..t.sizes[k])
                .filter(|&y| {
                    if k == 0 {
                        true
                    } else {
                        (0..=k).all(|i| t.d(k, i, y) == levels[k - 1][s.d(k, i, x)])
                    }
                })
                .collect::<Vec<usize>>()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) && s.sizes[k] > 0 {
        return;
    }
    let mut choice = vec![0usize; s.sizes[k]];
    loop {
        levels.push(
            choice
                .iter()
                .enumerate()
                .map(|(x, &ci)| candidates[x][ci])
                .collect(),
        );
        search_level(s, t, k + 1, levels, out);
        levels.pop();
        if s.sizes[k] == 0 {
            return;
        }
        let mut i = s.sizes[k];
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

pub fn is_simplicial_map(
    s: &TruncatedSimplicialSet,
    t: &TruncatedSimplicialSet,
    levels: &[Vec<usize>],
) -> bool {
    let n = s.trunc();
    if levels.len() != n + 1 {
        return false;
    }
    for k in 1..=n {
        for i in 0..=k {
            for x in 0..s.sizes[k] {
                if t.d(k, i, levels[k][x]) != levels[k - 1][s.d(k, i, x)] {
                    return false;
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..=k {
            for x in 0..s.sizes[k] {
                if t.s(k, i, levels[k][x]) != levels[k + 1][s.s(k, i, x)] {
                    return false;
                }
            }
        }
    }
    true
}

/// The cylinder `[1] ⊗ S`: a level-k simplex is `(t, x)` where `t` in
/// `0..=k+1` counts how many vertices map to the 0 end.
fn cylinder(s: &TruncatedSimplicialSet) -> TruncatedSimplicialSet {
    let n = s.trunc();
    let sizes: Vec<usize> = (0..=n).map(|k| (k + 2) * s.sizes[k]).collect();
    let idx = |k: usize, t: usize, x: usize, s: &TruncatedSimplicialSet| t * s.sizes[k] + x;
    let faces = (1..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    (0..sizes[k])
                        .map(|e| {
                            let t = e / s.sizes[k];
                            let x = e % s.sizes[k];
                            let tt = if i < t { t - 1 } else { t.min(k + 1) };
                            idx(k - 1, tt.min(k), s.d(k, i, x), s)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degens = (0..n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    (0..sizes[k])
                        .map(|e| {
                            let t = e / s.sizes[k];
                            let x = e % s.sizes[k];
                            let tt = if i < t { t + 1 } else { t };
                            idx(k + 1, tt, s.s(k, i, x), s)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    TruncatedSimplicialSet::new(sizes, faces, degens).expect("cylinder")
}

/// Strict homotopy between simplicial maps: a map from the cylinder
/// restricting to `f` at the 0 end and `g` at the 1 end.
pub fn strictly_homotopic(
    s: &TruncatedSimplicialSet,
    t: &TruncatedSimplicialSet,
    f: &[Vec<usize>],
    g: &[Vec<usize>],
) -> bool {
    let cyl = cylinder(s);
    // end embeddings: t = k+1 is the all-zeros end, t = 0 the all-ones end
    simplicial_maps(&cyl, t).iter().any(|h| {
        (0..=s.trunc()).all(|k| {
            (0..s.sizes[k]).all(|x| {
                h[k][(k + 1) * s.sizes[k] + x] == f[k][x] && h[k][x] == g[k][x]
            })
        })
    })
}

// --- simplicial graphs ------------------------------------------------------------

/// A simplicial object in graphs, truncated, together with an augmentation
/// to a base graph (the derived map to the base coequalizes `d_0, d_1`).
#[derive(Clone, Debug)]
pub struct SimplicialGraph {
    pub base: Graph,
    pub augmentation: GraphMorphism,
    pub levels: Vec<Graph>,
    /// `faces[k-1][i]`: level k → level k−1.
    pub faces: Vec<Vec<GraphMorphism>>,
    /// `degens[k][i]`: level k → level k+1.
    pub degens: Vec<Vec<GraphMorphism>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SimplicialGraphDefect {
    #[error("structure map at level {level} is not a graph morphism")]
    BadMorphism { level: usize },
    #[error("simplicial identity fails at level {level}")]
    Identity { level: usize },
    #[error("augmentation does not coequalize the two vertex faces")]
    AugmentationNotCoequalizing,
}

impl SimplicialGraph {
    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    /// The canonical map from a level to the base graph: any face composite
    /// down to level 0 followed by the augmentation (they all agree because
    /// the augmentation coequalizes the two vertex faces).
    pub fn to_base(&self, k: usize) -> GraphMorphism {
        let mut down = GraphMorphism::identity(&self.levels[k]);
        for level in (1..=k).rev() {
            down = down.then(&self.faces[level - 1][0]);
        }
        down.then(&self.augmentation)
    }
}

pub fn validate_simplicial_graph(s: &SimplicialGraph) -> Result<(), Vec<SimplicialGraphDefect>> {
    let n = s.trunc();
    let mut defects = Vec::new();
    if s.augmentation.validate(&s.levels[0], &s.base).is_err() {
        defects.push(SimplicialGraphDefect::BadMorphism { level: 0 });
    }
    for k in 1..=n {
        for m in &s.faces[k - 1] {
            if m.validate(&s.levels[k], &s.levels[k - 1]).is_err() {
                defects.push(SimplicialGraphDefect::BadMorphism { level: k });
            }
        }
    }
    for k in 0..n {
        for m in &s.degens[k] {
            if m.validate(&s.levels[k], &s.levels[k + 1]).is_err() {
                defects.push(SimplicialGraphDefect::BadMorphism { level: k });
            }
        }
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    // identities, on vertex and dart maps alike
    for k in 2..=n {
        for j in 1..=k {
            for i in 0..j {
                let lhs = s.faces[k - 1][j].then(&s.faces[k - 2][i]);
                let rhs = s.faces[k - 1][i].then(&s.faces[k - 2][j - 1]);
                if lhs != rhs {
                    defects.push(SimplicialGraphDefect::Identity { level: k });
                }
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                let lhs = s.degens[k][j].then(&s.degens[k + 1][i]);
                let rhs = s.degens[k][i].then(&s.degens[k + 1][j + 1]);
                if lhs != rhs {
                    defects.push(SimplicialGraphDefect::Identity { level: k });
                }
            }
        }
    }
    for k in 0..n {
        for j in 0..=k {
            for i in 0..=(k + 1) {
                let lhs = s.degens[k][j].then(&s.faces[k][i]);
                let rhs = if i < j {
                    s.faces[k - 1][i].then(&s.degens[k - 1][j - 1])
                } else if i == j || i == j + 1 {
                    GraphMorphism::identity(&s.levels[k])
                } else {
                    s.faces[k - 1][i - 1].then(&s.degens[k - 1][j])
                };
                if lhs != rhs {
                    defects.push(SimplicialGraphDefect::Identity { level: k });
                }
            }
        }
    }
    if n >= 1 {
        let a0 = s.faces[0][0].then(&s.augmentation);
        let a1 = s.faces[0][1].then(&s.augmentation);
        if a0 != a1 {
            defects.push(SimplicialGraphDefect::AugmentationNotCoequalizing);
        }
    }
    if defects.is_empty() {
        Ok(())
    } else {
        defects.dedup();
        Err(defects)
    }
}

/// The Čech nerve of a cover, truncated: level k is the (k+1)-fold fiber
/// power of the total graph over the base, with faces deleting and
/// degeneracies duplicating coordinates.
pub fn cech_nerve(p: &CoveringMap, trunc: usize) -> SimplicialGraph {
    let mut levels = Vec::with_capacity(trunc + 1);
    let mut vertex_tuples: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut dart_tuples: Vec<Vec<Vec<usize>>> = Vec::new();
    for k in 0..=trunc {
        let vt = fiber_power_tuples(p.total.vertex_count(), k + 1, |v| p.map.vmap[v]);
        let dt = fiber_power_tuples(p.total.dart_count(), k + 1, |d| p.map.dmap[d]);
        let vpos: BTreeMap<&Vec<usize>, usize> =
            vt.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let names = vt
            .iter()
            .map(|t| {
                t.iter()
                    .map(|&v| p.total.vertex_names()[v].clone())
                    .collect::<Vec<_>>()
                    .join("~")
            })
            .collect();
        let dart_vertex = dt
            .iter()
            .map(|t| vpos[&t.iter().map(|&d| p.total.vertex_of(d)).collect::<Vec<_>>()])
            .collect();
        let dpos: BTreeMap<&Vec<usize>, usize> =
            dt.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let dart_inv = dt
            .iter()
            .map(|t| dpos[&t.iter().map(|&d| p.total.inv(d)).collect::<Vec<_>>()])
            .collect();
        levels.push(Graph::new(names, dart_vertex, dart_inv).expect("fiber power"));
        vertex_tuples.push(vt);
        dart_tuples.push(dt);
    }
    let tuple_map = |from: &[Vec<usize>], to: &[Vec<usize>], f: &dyn Fn(&Vec<usize>) -> Vec<usize>| {
        let pos: BTreeMap<&Vec<usize>, usize> = to.iter().enumerate().map(|(i, t)| (t, i)).collect();
        from.iter().map(|t| pos[&f(t)]).collect::<Vec<usize>>()
    };
    let mut faces = Vec::new();
    for k in 1..=trunc {
        let mut maps = Vec::new();
        for i in 0..=k {
            let del = move |t: &Vec<usize>| {
                let mut u = t.clone();
                u.remove(i);
                u
            };
            maps.push(GraphMorphism {
                vmap: tuple_map(&vertex_tuples[k], &vertex_tuples[k - 1], &del),
                dmap: tuple_map(&dart_tuples[k], &dart_tuples[k - 1], &del),
            });
        }
        faces.push(maps);
    }
    let mut degens = Vec::new();
    for k in 0..trunc {
        let mut maps = Vec::new();
        for i in 0..=k {
            let dup = move |t: &Vec<usize>| {
                let mut u = t.clone();
                u.insert(i, t[i]);
                u
            };
            maps.push(GraphMorphism {
                vmap: tuple_map(&vertex_tuples[k], &vertex_tuples[k + 1], &dup),
                dmap: tuple_map(&dart_tuples[k], &dart_tuples[k + 1], &dup),
            });
        }
        degens.push(maps);
    }
    let augmentation = GraphMorphism {
        vmap: vertex_tuples[0].iter().map(|t| p.map.vmap[t[0]]).collect(),
        dmap: dart_tuples[0].iter().map(|t| p.map.dmap[t[0]]).collect(),
    };
    SimplicialGraph {
        base: p.base.clone(),
        augmentation,
        levels,
        faces,
        degens,
    }
}

fn fiber_power_tuples(n: usize, len: usize, down: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; len];
    if n == 0 {
        return out;
    }
    'all: loop {
        let b = down(cur[0]);
        if cur.iter().all(|&x| down(x) == b) {
            out.push(cur.clone());
        }
        let mut i = len;
        loop {
            if i == 0 {
                break 'all;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
    }
    out
}

/// The hypercovering test: the augmentation must be epic, and each
/// comparison `X_{k+1} → (Cosk_k X)_{k+1}` (computed over the base) must be
/// epic, for all levels expressible within the truncation.
pub fn is_hypercovering(s: &SimplicialGraph) -> Result<bool, SimplicialError> {
    let n = s.trunc();
    if n < 1 {
        return Err(SimplicialError::TruncationTooShallow { need: 1, have: n });
    }
    // augmentation epi on vertices and darts
    let mut vhit = vec![false; s.base.vertex_count()];
    for &v in &s.augmentation.vmap {
        vhit[v] = true;
    }
    let mut dhit = vec![false; s.base.dart_count()];
    for &d in &s.augmentation.dmap {
        dhit[d] = true;
    }
    if vhit.iter().any(|&b| !b) || dhit.iter().any(|&b| !b) {
        return Ok(false);
    }
    for k in 0..n {
        // boundary tuples over the base at level k+1
        let to_base = s.to_base(k);
        let vertex_ok = comparison_epi(
            s.levels[k].vertex_count(),
            s.levels[k + 1].vertex_count(),
            k,
            |i, x| s.faces[k][i].vmap[x],
            |i, x| {
                if k == 0 {
                    unreachable!()
                } else {
                    s.faces[k - 1][i].vmap[x]
                }
            },
            |x| to_base.vmap[x],
        );
        let dart_ok = comparison_epi(
            s.levels[k].dart_count(),
            s.levels[k + 1].dart_count(),
            k,
            |i, x| s.faces[k][i].dmap[x],
            |i, x| {
                if k == 0 {
                    unreachable!()
                } else {
                    s.faces[k - 1][i].dmap[x]
                }
            },
            |x| to_base.dmap[x],
        );
        if !vertex_ok || !dart_ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shared surjectivity check: every compatible (k+2)-tuple of level-k
/// elements over a common base element is the boundary of some level-(k+1)
/// element.
fn comparison_epi(
    lower: usize,
    upper: usize,
    k: usize,
    face_from_upper: impl Fn(usize, usize) -> usize,
    face_in_lower: impl Fn(usize, usize) -> usize,
    base_of: impl Fn(usize) -> usize,
) -> bool {
    use std::collections::BTreeSet;
    let mut boundaries: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 0..upper {
        boundaries.insert((0..=k + 1).map(|i| face_from_upper(i, x)).collect());
    }
    // enumerate compatible tuples
    let mut cur = vec![0usize; k + 2];
    if lower == 0 {
        return true;
    }
    loop {
        let same_base = cur.iter().all(|&x| base_of(x) == base_of(cur[0]));
        let compatible = same_base
            && (k == 0
                || (0..=k + 1).all(|j| {
                    (0..j).all(|i| face_in_lower(i, cur[j]) == face_in_lower(j - 1, cur[i]))
                }));
        if compatible && !boundaries.contains(&cur) {
            return false;
        }
        let mut i = k + 2;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < lower {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Connected components of every level, as a truncated simplicial set with
/// the induced structure maps.
pub fn pi0_levelwise(s: &SimplicialGraph) -> TruncatedSimplicialSet {
    let n = s.trunc();
    let comps: Vec<Vec<Vec<usize>>> = s.levels.iter().map(|g| g.components()).collect();
    let comp_of: Vec<Vec<usize>> = s
        .levels
        .iter()
        .zip(&comps)
        .map(|(g, blocks)| {
            let mut idx = vec![0; g.vertex_count()];
            for (i, b) in blocks.iter().enumerate() {
                for &v in b {
                    idx[v] = i;
                }
            }
            idx
        })
        .collect();
    let sizes: Vec<usize> = comps.iter().map(|b| b.len()).collect();
    let faces = (1..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    comps[k]
                        .iter()
                        .map(|b| comp_of[k - 1][s.faces[k - 1][i].vmap[b[0]]])
                        .collect()
                })
                .collect()
        })
        .collect();
    let degens = (0..n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    comps[k]
                        .iter()
                        .map(|b| comp_of[k + 1][s.degens[k][i].vmap[b[0]]])
                        .collect()
                })
                .collect()
        })
        .collect();
    TruncatedSimplicialSet::new(sizes, faces, degens)
        .expect("graph morphisms preserve components")
}

// --- edge-path fundamental group ----------------------------------------------------

/// The edge-path group of a truncated simplicial set: free on the non-tree
/// nondegenerate 1-simplices, with one relator `[d₂σ][d₀σ][d₁σ]⁻¹` per
/// 2-simplex (tree and degenerate edges read as the empty word).
pub fn edge_path_group(
    s: &TruncatedSimplicialSet,
    base: usize,
) -> Result<Presentation, SimplicialError> {
    if s.trunc() < 2 {
        return Err(SimplicialError::TruncationTooShallow {
            need: 2,
            have: s.trunc(),
        });
    }
    if s.sizes[0] == 0 {
        return Err(SimplicialError::Empty);
    }
    let nondeg_edges = s.nondegenerate(1);
    let edge_list: Vec<(usize, usize)> = nondeg_edges
        .iter()
        .map(|&y| (s.d(1, 1, y), s.d(1, 0, y)))
        .collect();
    let names = (0..s.sizes[0]).map(|v| format!("v{v}")).collect();
    let skel1 = Graph::from_edges(names, &edge_list);
    let tree = cover::build_spanning_tree(&skel1, base)?;
    // generator per non-tree nondegenerate 1-simplex
    let mut gen_of_edge: BTreeMap<usize, usize> = BTreeMap::new();
    for (gi, &(d, _)) in tree.generators.iter().enumerate() {
        gen_of_edge.insert(d / 2, gi);
    }
    let word_of = |y: usize| -> Word {
        if s.is_degenerate(1, y) {
            return Word::empty();
        }
        let e = nondeg_edges.binary_search(&y).expect("nondegenerate edge");
        match gen_of_edge.get(&e) {
            Some(&gi) => Word::gen(gi),
            None => Word::empty(), // tree edge
        }
    };
    let mut relators = Vec::new();
    for sigma in 0..s.sizes[2] {
        let w = word_of(s.d(2, 2, sigma))
            .concat(&word_of(s.d(2, 0, sigma)))
            .concat(&word_of(s.d(2, 1, sigma)).inverse());
        if !w.is_empty() {
            relators.push(w);
        }
    }
    relators.sort();
    relators.dedup();
    let gen_names = (0..tree.generators.len()).map(|i| format!("y{i}")).collect();
    Ok(Presentation::new(gen_names, relators).expect("edge-path presentation"))
}

/// The two sides of the fundamental-group comparison for a connected cover:
/// the edge-path group of the levelwise components of its Čech nerve
/// against the concrete trivialization quotient, compared through
/// abelianization and the action spectrum up to `spectrum_degree`.
#[derive(Clone, Debug)]
pub struct Prop53Report {
    pub nerve_side_abelianization: (usize, Vec<u64>),
    pub quotient_side_abelianization: (usize, Vec<u64>),
    pub nerve_side_spectrum: fpgroup::Spectrum,
    pub quotient_side_spectrum: fpgroup::Spectrum,
    pub hypercovering_ok: bool,
}

impl Prop53Report {
    pub fn matches(&self) -> bool {
        self.nerve_side_abelianization == self.quotient_side_abelianization
            && self.nerve_side_spectrum == self.quotient_side_spectrum
            && self.hypercovering_ok
    }
}

pub fn prop53_check(
    p: &CoveringMap,
    base: usize,
    spectrum_degree: usize,
    budget: &Budget,
) -> Result<Prop53Report, SimplicialError> {
    let nerve = cech_nerve(p, 2);
    let hypercovering_ok = is_hypercovering(&nerve)?;
    let pi0 = pi0_levelwise(&nerve);
    let a = edge_path_group(&pi0, 0)?;
    let q = cover::trivialization_quotient(p, base, budget)?;
    let a_budget = Budget {
        max_generators: a.rank().max(budget.max_generators),
        ..budget.clone()
    };
    let nerve_side_spectrum = fpgroup::quotient_spectrum(&a, spectrum_degree, &a_budget)
        .map_err(cover::CoverError::from)?;
    let quotient_side_spectrum = fpgroup::group_spectrum(&q.group, spectrum_degree);
    let b_pres = Presentation::of_group_table(&q.group);
    Ok(Prop53Report {
        nerve_side_abelianization: fpgroup::abelianization(&a),
        quotient_side_abelianization: fpgroup::abelianization(&b_pres),
        nerve_side_spectrum,
        quotient_side_spectrum,
        hypercovering_ok,
    })
}
