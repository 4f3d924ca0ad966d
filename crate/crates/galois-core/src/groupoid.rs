//! Finite groupoids with explicit composition tables.
//!
//! Composition is diagrammatic: `compose[f][g]` is defined exactly when
//! `target(f) == source(g)` and means "f then g". A group is the one-object
//! case; [`group_as_groupoid`] and [`vertex_group`] convert back and forth.
//!
//! Strict pro-groupoids are linear chains whose transitions are quotient
//! morphisms: bijective on objects and surjective on every hom-set.

use crate::group::{FiniteGroup, GroupHom};
use crate::gset::{self, GSet};
use thiserror::Error;

/// Unvalidated groupoid data, as built by parsers and constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGroupoid {
    pub objects: Vec<String>,
    pub morphism_names: Vec<String>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// `compose[f][g]` = "f then g", `None` off the composable pairs.
    pub compose: Vec<Vec<Option<usize>>>,
    /// Identity morphism per object.
    pub identity: Vec<usize>,
    /// Inverse per morphism.
    pub inverse: Vec<usize>,
}

/// A validated finite groupoid; every morphism is invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    data: RawGroupoid,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroupoidDefect {
    #[error("table shapes inconsistent")]
    Shape,
    #[error("morphism {m} has out-of-range endpoints")]
    EndpointRange { m: usize },
    #[error("compose undefined on composable pair ({f},{g})")]
    MissingComposite { f: usize, g: usize },
    #[error("compose defined on non-composable pair ({f},{g})")]
    SpuriousComposite { f: usize, g: usize },
    #[error("composite of ({f},{g}) has wrong endpoints")]
    CompositeEndpoints { f: usize, g: usize },
    #[error("identity at object {o} has wrong endpoints")]
    IdentityEndpoints { o: usize },
    #[error("identity not neutral at object {o} (witness morphism {m})")]
    IdentityNotNeutral { o: usize, m: usize },
    #[error("non-associative at ({f},{g},{h})")]
    NonAssociative { f: usize, g: usize, h: usize },
    #[error("missing inverse for {m}")]
    BadInverse { m: usize },
}

/// Checks every groupoid axiom exhaustively; on failure returns one
/// diagnostic per violated axiom with witnessing morphisms.
pub fn validate_groupoid(raw: &RawGroupoid) -> Result<FiniteGroupoid, Vec<GroupoidDefect>> {
    let n_obj = raw.objects.len();
    let n_mor = raw.morphism_names.len();
    let mut defects = Vec::new();
    if raw.source.len() != n_mor
        || raw.target.len() != n_mor
        || raw.inverse.len() != n_mor
        || raw.identity.len() != n_obj
        || raw.compose.len() != n_mor
        || raw.compose.iter().any(|row| row.len() != n_mor)
    {
        return Err(vec![GroupoidDefect::Shape]);
    }
    for m in 0..n_mor {
        if raw.source[m] >= n_obj || raw.target[m] >= n_obj || raw.inverse[m] >= n_mor {
            defects.push(GroupoidDefect::EndpointRange { m });
        }
    }
    if raw.identity.iter().any(|&m| m >= n_mor)
        || raw
            .compose
            .iter()
            .flatten()
            .any(|c| c.map_or(false, |m| m >= n_mor))
    {
        defects.push(GroupoidDefect::Shape);
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    for f in 0..n_mor {
        for g in 0..n_mor {
            let composable = raw.target[f] == raw.source[g];
            match raw.compose[f][g] {
                Some(c) => {
                    if !composable {
                        defects.push(GroupoidDefect::SpuriousComposite { f, g });
                    } else if raw.source[c] != raw.source[f] || raw.target[c] != raw.target[g] {
                        defects.push(GroupoidDefect::CompositeEndpoints { f, g });
                    }
                }
                None => {
                    if composable {
                        defects.push(GroupoidDefect::MissingComposite { f, g });
                    }
                }
            }
        }
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    for o in 0..n_obj {
        let id = raw.identity[o];
        if raw.source[id] != o || raw.target[id] != o {
            defects.push(GroupoidDefect::IdentityEndpoints { o });
        }
    }
    if !defects.is_empty() {
        return Err(defects);
    }
    for m in 0..n_mor {
        let idl = raw.identity[raw.source[m]];
        let idr = raw.identity[raw.target[m]];
        if raw.compose[idl][m] != Some(m) {
            defects.push(GroupoidDefect::IdentityNotNeutral {
                o: raw.source[m],
                m,
            });
        }
        if raw.compose[m][idr] != Some(m) {
            defects.push(GroupoidDefect::IdentityNotNeutral {
                o: raw.target[m],
                m,
            });
        }
    }
    for f in 0..n_mor {
        for g in 0..n_mor {
            if raw.target[f] != raw.source[g] {
                continue;
            }
            for h in 0..n_mor {
                if raw.target[g] != raw.source[h] {
                    continue;
                }
                let fg = raw.compose[f][g].unwrap();
                let gh = raw.compose[g][h].unwrap();
                if raw.compose[fg][h] != raw.compose[f][gh] {
                    defects.push(GroupoidDefect::NonAssociative { f, g, h });
                }
            }
        }
    }
    for m in 0..n_mor {
        let i = raw.inverse[m];
        let ok = raw.source[i] == raw.target[m]
            && raw.target[i] == raw.source[m]
            && raw.compose[m][i] == Some(raw.identity[raw.source[m]])
            && raw.compose[i][m] == Some(raw.identity[raw.target[m]]);
        if !ok {
            defects.push(GroupoidDefect::BadInverse { m });
        }
    }
    if defects.is_empty() {
        Ok(FiniteGroupoid { data: raw.clone() })
    } else {
        defects.dedup();
        Err(defects)
    }
}

impl FiniteGroupoid {
    pub fn raw(&self) -> &RawGroupoid {
        &self.data
    }

    pub fn object_count(&self) -> usize {
        self.data.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.data.morphism_names.len()
    }

    pub fn source(&self, m: usize) -> usize {
        self.data.source[m]
    }

    pub fn target(&self, m: usize) -> usize {
        self.data.target[m]
    }

    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.data.compose[f][g]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.data.identity[o]
    }

    pub fn inverse(&self, m: usize) -> usize {
        self.data.inverse[m]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&m| self.source(m) == x && self.target(m) == y)
            .collect()
    }

    /// A discrete groupoid: identities only.
    pub fn discrete(objects: Vec<String>) -> FiniteGroupoid {
        let n = objects.len();
        let raw = RawGroupoid {
            objects,
            morphism_names: (0..n).map(|i| format!("id{i}")).collect(),
            source: (0..n).collect(),
            target: (0..n).collect(),
            compose: (0..n)
                .map(|i| (0..n).map(|j| (i == j).then_some(i)).collect())
                .collect(),
            identity: (0..n).collect(),
            inverse: (0..n).collect(),
        };
        validate_groupoid(&raw).expect("discrete groupoid")
    }

    /// The pair groupoid: exactly one morphism between any two objects.
    pub fn pair(objects: Vec<String>) -> FiniteGroupoid {
        let n = objects.len();
        let midx = |x: usize, y: usize| x * n + y;
        let raw = RawGroupoid {
            objects,
            morphism_names: (0..n * n).map(|m| format!("p{}_{}", m / n, m % n)).collect(),
            source: (0..n * n).map(|m| m / n).collect(),
            target: (0..n * n).map(|m| m % n).collect(),
            compose: (0..n * n)
                .map(|f| {
                    (0..n * n)
                        .map(|g| (f % n == g / n).then(|| midx(f / n, g % n)))
                        .collect()
                })
                .collect(),
            identity: (0..n).map(|o| midx(o, o)).collect(),
            inverse: (0..n * n).map(|m| midx(m % n, m / n)).collect(),
        };
        validate_groupoid(&raw).expect("pair groupoid")
    }
}

/// A group as a one-object groupoid.
pub fn group_as_groupoid(g: &FiniteGroup, object_name: &str) -> FiniteGroupoid {
    let n = g.order();
    let raw = RawGroupoid {
        objects: vec![object_name.to_string()],
        morphism_names: g.element_names().to_vec(),
        source: vec![0; n],
        target: vec![0; n],
        compose: (0..n)
            .map(|a| (0..n).map(|b| Some(g.mul(a, b))).collect())
            .collect(),
        identity: vec![0],
        inverse: (0..n).map(|a| g.inv(a)).collect(),
    };
    validate_groupoid(&raw).expect("group as groupoid")
}

/// The vertex group at an object: endomorphisms of `o` with the groupoid's
/// composition. Returns the group (identity first) and, per group element,
/// the underlying morphism index.
pub fn vertex_group(g: &FiniteGroupoid, o: usize) -> (FiniteGroup, Vec<usize>) {
    let mut morphisms = g.hom(o, o);
    let id = g.identity(o);
    morphisms.retain(|&m| m != id);
    morphisms.insert(0, id);
    let pos = |m: usize| morphisms.iter().position(|&x| x == m).unwrap();
    let names = morphisms
        .iter()
        .map(|&m| g.raw().morphism_names[m].clone())
        .collect();
    let table = morphisms
        .iter()
        .map(|&a| {
            morphisms
                .iter()
                .map(|&b| pos(g.compose(a, b).expect("endos compose")))
                .collect()
        })
        .collect();
    (
        FiniteGroup::new(names, table).expect("vertex group"),
        morphisms,
    )
}

/// Partition of objects by morphism connectivity; blocks ordered by least
/// object, objects ascending within a block.
pub fn connected_components(g: &FiniteGroupoid) -> Vec<Vec<usize>> {
    let n = g.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for m in 0..g.morphism_count() {
        let (a, b) = (find(&mut parent, g.source(m)), find(&mut parent, g.target(m)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; n];
    for o in 0..n {
        let r = find(&mut parent, o);
        if block_of[r] == usize::MAX {
            block_of[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[r]].push(o);
    }
    blocks
}

// --- morphisms of groupoids ---------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidMorphism {
    pub source: FiniteGroupoid,
    pub target: FiniteGroupoid,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MorphismDefect {
    #[error("map shapes inconsistent")]
    Shape,
    #[error("does not preserve endpoints at morphism {m}")]
    Endpoints { m: usize },
    #[error("does not preserve identity at object {o}")]
    Identity { o: usize },
    #[error("does not preserve composition at ({f},{g})")]
    Composition { f: usize, g: usize },
}

impl GroupoidMorphism {
    pub fn new(
        source: FiniteGroupoid,
        target: FiniteGroupoid,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self, MorphismDefect> {
        if object_map.len() != source.object_count()
            || morphism_map.len() != source.morphism_count()
            || object_map.iter().any(|&o| o >= target.object_count())
            || morphism_map.iter().any(|&m| m >= target.morphism_count())
        {
            return Err(MorphismDefect::Shape);
        }
        for m in 0..source.morphism_count() {
            if target.source(morphism_map[m]) != object_map[source.source(m)]
                || target.target(morphism_map[m]) != object_map[source.target(m)]
            {
                return Err(MorphismDefect::Endpoints { m });
            }
        }
        for o in 0..source.object_count() {
            if morphism_map[source.identity(o)] != target.identity(object_map[o]) {
                return Err(MorphismDefect::Identity { o });
            }
        }
        for f in 0..source.morphism_count() {
            for g in 0..source.morphism_count() {
                if let Some(fg) = source.compose(f, g) {
                    let t = target
                        .compose(morphism_map[f], morphism_map[g])
                        .expect("images composable");
                    if t != morphism_map[fg] {
                        return Err(MorphismDefect::Composition { f, g });
                    }
                }
            }
        }
        Ok(GroupoidMorphism {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn from_group_hom(h: &GroupHom, src_obj: &str, dst_obj: &str) -> GroupoidMorphism {
        GroupoidMorphism::new(
            group_as_groupoid(&h.source, src_obj),
            group_as_groupoid(&h.target, dst_obj),
            vec![0],
            h.map.clone(),
        )
        .expect("group hom as groupoid morphism")
    }
}

/// Failure witness for the quotient-morphism test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientFailure {
    NotBijectiveOnObjects,
    /// Hom(x,y) misses `unhit` in the target hom-set.
    HomNotSurjective {
        x: usize,
        y: usize,
        unhit: usize,
    },
}

/// A quotient morphism is bijective on objects and surjective on every
/// hom-set.
pub fn is_quotient_morphism(f: &GroupoidMorphism) -> Result<(), QuotientFailure> {
    let n = f.target.object_count();
    let mut seen = vec![false; n];
    if f.object_map.len() != n {
        return Err(QuotientFailure::NotBijectiveOnObjects);
    }
    for &o in &f.object_map {
        if seen[o] {
            return Err(QuotientFailure::NotBijectiveOnObjects);
        }
        seen[o] = true;
    }
    for x in 0..f.source.object_count() {
        for y in 0..f.source.object_count() {
            let image: Vec<usize> = f.source.hom(x, y).iter().map(|&m| f.morphism_map[m]).collect();
            for t in f.target.hom(f.object_map[x], f.object_map[y]) {
                if !image.contains(&t) {
                    return Err(QuotientFailure::HomNotSurjective { x, y, unhit: t });
                }
            }
        }
    }
    Ok(())
}

// --- pro-groupoid chains ------------------------------------------------------

/// A linear inverse system of groupoids; `transitions[k]` maps
/// `levels[k+1] -> levels[k]`, so level 0 is the coarsest quotient.
#[derive(Clone, Debug)]
pub struct ProGroupoidChain {
    pub levels: Vec<FiniteGroupoid>,
    pub transitions: Vec<GroupoidMorphism>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain needs at least one level")]
    Empty,
    #[error("transition {index} does not connect its levels")]
    Misaligned { index: usize },
    #[error("transition {index} is not a quotient morphism")]
    NotQuotient { index: usize },
    #[error("level group does not match the supplied action at level {level}")]
    LevelGroupMismatch { level: usize },
    #[error("action is not connected")]
    NotConnected,
    #[error("level index {index} out of range")]
    LevelRange { index: usize },
}

impl ProGroupoidChain {
    /// Shape check only; see [`validate_chain`] for the quotient condition.
    pub fn new(
        levels: Vec<FiniteGroupoid>,
        transitions: Vec<GroupoidMorphism>,
    ) -> Result<Self, ChainError> {
        if levels.is_empty() {
            return Err(ChainError::Empty);
        }
        if transitions.len() + 1 != levels.len() {
            return Err(ChainError::Misaligned {
                index: transitions.len(),
            });
        }
        for (k, t) in transitions.iter().enumerate() {
            if t.source != levels[k + 1] || t.target != levels[k] {
                return Err(ChainError::Misaligned { index: k });
            }
        }
        Ok(ProGroupoidChain {
            levels,
            transitions,
        })
    }

    /// Builds a chain of groups from group homomorphisms
    /// `groups[k+1] -> groups[k]`.
    pub fn from_groups(groups: Vec<FiniteGroup>, homs: Vec<GroupHom>) -> Result<Self, ChainError> {
        let levels: Vec<FiniteGroupoid> = groups
            .iter()
            .map(|g| group_as_groupoid(g, "*"))
            .collect();
        let transitions = homs
            .iter()
            .map(|h| GroupoidMorphism::from_group_hom(h, "*", "*"))
            .collect();
        ProGroupoidChain::new(levels, transitions)
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

/// True iff every transition is a quotient morphism; reports the failing
/// level index otherwise.
pub fn validate_chain(chain: &ProGroupoidChain) -> Result<(), ChainError> {
    for (k, t) in chain.transitions.iter().enumerate() {
        if is_quotient_morphism(t).is_err() {
            return Err(ChainError::NotQuotient { index: k });
        }
    }
    Ok(())
}

// --- hom-sets in the classifying category -------------------------------------

/// Transports object index `o0` at level 0 up to each level along the
/// (bijective) object maps of the transitions.
fn objects_along_chain(chain: &ProGroupoidChain, o0: usize) -> Vec<usize> {
    let mut objs = vec![o0];
    for (k, t) in chain.transitions.iter().enumerate() {
        let below = objs[k];
        let above = (0..t.source.object_count())
            .find(|&o| t.object_map[o] == below)
            .expect("object maps of a chain are bijective");
        objs.push(above);
    }
    objs
}

/// The vertex-group homomorphism induced by the transition `level k+1 ->
/// level k` at the transported base object.
fn vertex_transition(chain: &ProGroupoidChain, k: usize, objs: &[usize]) -> GroupHom {
    let (upper, upper_mors) = vertex_group(&chain.levels[k + 1], objs[k + 1]);
    let (lower, lower_mors) = vertex_group(&chain.levels[k], objs[k]);
    let t = &chain.transitions[k];
    let map = upper_mors
        .iter()
        .map(|&m| {
            let im = t.morphism_map[m];
            lower_mors
                .iter()
                .position(|&x| x == im)
                .expect("vertex morphism maps to vertex morphism")
        })
        .collect();
    GroupHom::new(upper, lower, map).expect("restriction of a functor")
}

/// Hom-set of the classifying category between connected actions attached at
/// two levels of a strict chain, computed by pulling both back to a common
/// level `k` and enumerating equivariant maps there. The result set is
/// independent of the choice of `k ≥ max(i, j)` because the pulled-back
/// equivariance constraints coincide when transitions are quotient
/// morphisms; [`classifying_hom_at_level`] exposes the level for tests.
pub fn classifying_hom(
    chain: &ProGroupoidChain,
    base_object: usize,
    i: usize,
    x: &GSet,
    j: usize,
    y: &GSet,
) -> Result<Vec<Vec<usize>>, ChainError> {
    classifying_hom_at_level(chain, base_object, i, x, j, y, i.max(j))
}

pub fn classifying_hom_at_level(
    chain: &ProGroupoidChain,
    base_object: usize,
    i: usize,
    x: &GSet,
    j: usize,
    y: &GSet,
    k: usize,
) -> Result<Vec<Vec<usize>>, ChainError> {
    if i >= chain.depth() || j >= chain.depth() || k >= chain.depth() || k < i.max(j) {
        return Err(ChainError::LevelRange {
            index: k.max(i).max(j),
        });
    }
    if !gset::is_connected(x) || !gset::is_connected(y) {
        return Err(ChainError::NotConnected);
    }
    let objs = objects_along_chain(chain, base_object);
    let check_level = |level: usize, s: &GSet| -> Result<(), ChainError> {
        let (vg, _) = vertex_group(&chain.levels[level], objs[level]);
        if gset::same_table(&vg, &s.group) {
            Ok(())
        } else {
            Err(ChainError::LevelGroupMismatch { level })
        }
    };
    check_level(i, x)?;
    check_level(j, y)?;
    let pull = |level: usize, s: &GSet| -> GSet {
        let mut pulled = s.clone();
        for l in level..k {
            // transition level l+1 -> level l pulls an action up one step
            let hom = vertex_transition(chain, l, &objs);
            pulled = pulled.pullback(&hom);
        }
        pulled
    };
    let xk = pull(i, x);
    let yk = pull(j, y);
    Ok(gset::equivariant_maps(&xk, &yk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, quotient_by};

    #[test]
    fn trivial_and_discrete_validate() {
        let one = group_as_groupoid(&crate::group::trivial(), "*");
        assert_eq!(one.morphism_count(), 1);
        let d = FiniteGroupoid::discrete(vec!["a".into(), "b".into()]);
        assert_eq!(connected_components(&d), vec![vec![0], vec![1]]);
    }

    #[test]
    fn components_examples() {
        let z5 = group_as_groupoid(&cyclic(5), "*");
        assert_eq!(connected_components(&z5).len(), 1);
        let p = FiniteGroupoid::pair(vec!["x".into(), "y".into(), "z".into()]);
        assert_eq!(connected_components(&p), vec![vec![0, 1, 2]]);
    }

    /// Oracle: brute-force reachability by repeated relation squaring.
    #[test]
    fn components_match_reachability_closure() {
        let p = FiniteGroupoid::pair(vec!["x".into(), "y".into()]);
        let d = FiniteGroupoid::discrete(vec!["a".into(), "b".into(), "c".into()]);
        for g in [&p, &d] {
            let n = g.object_count();
            let mut reach = vec![vec![false; n]; n];
            for o in 0..n {
                reach[o][o] = true;
            }
            for m in 0..g.morphism_count() {
                reach[g.source(m)][g.target(m)] = true;
                reach[g.target(m)][g.source(m)] = true;
            }
            loop {
                let mut changed = false;
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if reach[a][b] && reach[b][c] && !reach[a][c] {
                                reach[a][c] = true;
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            let blocks = connected_components(g);
            for block in &blocks {
                for &x in block {
                    for &y in block {
                        assert!(reach[x][y]);
                    }
                }
            }
            let total: usize = blocks.iter().map(|b| b.len()).sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn corrupt_z3_table_detected() {
        let z3 = cyclic(3);
        let mut raw = group_as_groupoid(&z3, "*").raw().clone();
        raw.compose[1][2] = Some(1); // should be identity
        let defects = validate_groupoid(&raw).unwrap_err();
        assert!(defects
            .iter()
            .any(|d| matches!(d, GroupoidDefect::NonAssociative { .. } | GroupoidDefect::BadInverse { .. })));
    }

    /// Every single-entry corruption of compose, identity or inverse data
    /// of a valid groupoid is rejected.
    #[test]
    fn single_corruptions_always_detected() {
        let specimens = vec![
            group_as_groupoid(&cyclic(3), "*"),
            FiniteGroupoid::pair(vec!["x".into(), "y".into()]),
        ];
        for g in specimens {
            let raw = g.raw().clone();
            let n = raw.morphism_names.len();
            for f in 0..n {
                for h in 0..n {
                    let original = raw.compose[f][h];
                    let candidates: Vec<Option<usize>> = (0..n)
                        .map(Some)
                        .chain([None])
                        .filter(|&c| c != original)
                        .collect();
                    for c in candidates {
                        let mut bad = raw.clone();
                        bad.compose[f][h] = c;
                        assert!(
                            validate_groupoid(&bad).is_err(),
                            "corrupt compose[{f}][{h}] = {c:?} accepted"
                        );
                    }
                }
            }
            for o in 0..raw.objects.len() {
                for m in (0..n).filter(|&m| m != raw.identity[o]) {
                    let mut bad = raw.clone();
                    bad.identity[o] = m;
                    assert!(validate_groupoid(&bad).is_err(), "corrupt identity accepted");
                }
            }
            for v in 0..n {
                for m in (0..n).filter(|&m| m != raw.inverse[v]) {
                    let mut bad = raw.clone();
                    bad.inverse[v] = m;
                    assert!(validate_groupoid(&bad).is_err(), "corrupt inverse accepted");
                }
            }
        }
    }

    #[test]
    fn quotient_morphism_examples() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let idf = GroupoidMorphism::from_group_hom(&GroupHom::identity(&z4), "*", "*");
        assert!(is_quotient_morphism(&idf).is_ok());
        // reduction Z4 -> Z2
        let red = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(is_quotient_morphism(&GroupoidMorphism::from_group_hom(&red, "*", "*")).is_ok());
        // inclusion Z2 -> Z4 fails, witnessing the generator of Z4
        let inc = GroupHom::new(z2, z4, vec![0, 2]).unwrap();
        let f = GroupoidMorphism::from_group_hom(&inc, "*", "*");
        match is_quotient_morphism(&f) {
            Err(QuotientFailure::HomNotSurjective { unhit, .. }) => {
                assert!(unhit == 1 || unhit == 3)
            }
            other => panic!("expected hom surjectivity failure, got {other:?}"),
        }
    }

    fn reduction(n: usize, m: usize) -> GroupHom {
        GroupHom::new(cyclic(n), cyclic(m), (0..n).map(|x| x % m).collect()).unwrap()
    }

    #[test]
    fn chain_validation_examples() {
        let single = ProGroupoidChain::from_groups(vec![cyclic(5)], vec![]).unwrap();
        assert!(validate_chain(&single).is_ok());
        let chain = ProGroupoidChain::from_groups(
            vec![cyclic(2), cyclic(4), cyclic(8)],
            vec![reduction(4, 2), reduction(8, 4)],
        )
        .unwrap();
        assert!(validate_chain(&chain).is_ok());
        // a chain containing an inclusion fails at that level
        let inc = GroupHom::new(cyclic(2), cyclic(4), vec![0, 2]).unwrap();
        let bad = ProGroupoidChain::from_groups(vec![cyclic(4), cyclic(2)], vec![inc]).unwrap();
        assert_eq!(
            validate_chain(&bad),
            Err(ChainError::NotQuotient { index: 0 })
        );
    }

    #[test]
    fn classifying_hom_examples() {
        // trivial chain, X = Y = one-point action: exactly one map
        let t = ProGroupoidChain::from_groups(vec![crate::group::trivial()], vec![]).unwrap();
        let pt = GSet::trivial(&crate::group::trivial(), 1);
        assert_eq!(classifying_hom(&t, 0, 0, &pt, 0, &pt).unwrap().len(), 1);

        // chain Z4 -> Z2
        let chain =
            ProGroupoidChain::from_groups(vec![cyclic(2), cyclic(4)], vec![reduction(4, 2)])
                .unwrap();
        let x = GSet::regular(&cyclic(2));
        let y = GSet::regular(&cyclic(4));
        // X at level 0, Y at level 1: no equivariant map from the pulled-back
        // 2-point set to the free 4-point orbit
        assert_eq!(classifying_hom(&chain, 0, 0, &x, 1, &y).unwrap().len(), 0);
        // X at level 1 regular Z4, Y at level 0 regular Z2: two maps
        assert_eq!(classifying_hom(&chain, 0, 1, &y, 0, &x).unwrap().len(), 2);
        // disconnected input refused
        let disc = GSet::trivial(&cyclic(2), 2);
        assert_eq!(
            classifying_hom(&chain, 0, 0, &disc, 0, &x),
            Err(ChainError::NotConnected)
        );
    }

    #[test]
    fn classifying_hom_stabilizes_along_the_chain() {
        let chain = ProGroupoidChain::from_groups(
            vec![cyclic(2), cyclic(4), cyclic(8)],
            vec![reduction(4, 2), reduction(8, 4)],
        )
        .unwrap();
        let x = GSet::regular(&cyclic(4));
        let y = GSet::cosets(&cyclic(2), &[0]);
        let at1 = classifying_hom_at_level(&chain, 0, 1, &x, 0, &y, 1).unwrap();
        let at2 = classifying_hom_at_level(&chain, 0, 1, &x, 0, &y, 2).unwrap();
        assert_eq!(at1, at2);
        assert!(!at1.is_empty());
    }

    #[test]
    fn quotient_projection_chains_validate() {
        // build Z8 -> Z4 -> Z2 out of quotient data instead of hand maps
        let z8 = cyclic(8);
        let q4 = quotient_by(&z8, &[0, 4]);
        let proj1 = GroupHom::new(z8.clone(), q4.quotient.clone(), q4.projection.clone()).unwrap();
        let q2 = quotient_by(&q4.quotient, &[0, 2]);
        let proj2 = GroupHom::new(
            q4.quotient.clone(),
            q2.quotient.clone(),
            q2.projection.clone(),
        )
        .unwrap();
        let chain = ProGroupoidChain::from_groups(
            vec![q2.quotient.clone(), q4.quotient.clone(), z8],
            vec![proj2, proj1],
        )
        .unwrap();
        assert!(validate_chain(&chain).is_ok());
    }
}
