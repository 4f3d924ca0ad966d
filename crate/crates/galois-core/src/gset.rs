//! Galois theory of finite group actions.
//!
//! A [`GSet`] is a finite set with a left action of a [`FiniteGroup`], stored
//! as a full table. Automorphism groups multiply diagrammatically (`φ·ψ` is
//! "φ then ψ"); with left actions this is the convention under which the
//! comparison map `Φ : G → Aut Y` of a Galois object is a homomorphism on
//! the nose.

use crate::group::{self, FiniteGroup, GroupHom, Subgroup};
use crate::perm::Perm;
use thiserror::Error;

/// A finite left G-set: `act[g][x]` is `g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    pub group: FiniteGroup,
    carrier: Vec<String>,
    act: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GSetDefect {
    #[error("action table shape does not match group and carrier")]
    Shape,
    #[error("identity moves point {point}")]
    IdentityMoves { point: usize },
    #[error("action not compatible at (g={g}, h={h}, x={x})")]
    NotAction { g: usize, h: usize, x: usize },
    #[error("row for element {g} is not a permutation")]
    RowNotPermutation { g: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GSetError {
    #[error("point not in carrier: {0}")]
    PointNotInCarrier(usize),
    #[error("not connected")]
    NotConnected,
    #[error("stabilizer group mismatch")]
    StabilizerMismatch,
    #[error("equivariant map expected between actions of the same group")]
    GroupMismatch,
    #[error("map is not equivariant at (g={g}, x={x})")]
    NotEquivariant { g: usize, x: usize },
    #[error("maps do not share a target")]
    TargetMismatch,
    #[error("not a Galois object")]
    NotGalois,
}

impl GSet {
    pub fn new(
        group: FiniteGroup,
        carrier: Vec<String>,
        act: Vec<Vec<usize>>,
    ) -> Result<Self, Vec<GSetDefect>> {
        let n = carrier.len();
        let mut defects = Vec::new();
        if act.len() != group.order() || act.iter().any(|row| row.len() != n) {
            return Err(vec![GSetDefect::Shape]);
        }
        if act.iter().flatten().any(|&x| x >= n) {
            return Err(vec![GSetDefect::Shape]);
        }
        for (g, row) in act.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                seen[x] = true;
            }
            if seen.iter().any(|&s| !s) {
                defects.push(GSetDefect::RowNotPermutation { g });
            }
        }
        for x in 0..n {
            if act[0][x] != x {
                defects.push(GSetDefect::IdentityMoves { point: x });
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for x in 0..n {
                    if act[g][act[h][x]] != act[gh][x] {
                        defects.push(GSetDefect::NotAction { g, h, x });
                    }
                }
            }
        }
        if defects.is_empty() {
            Ok(GSet {
                group,
                carrier,
                act,
            })
        } else {
            defects.dedup();
            Err(defects)
        }
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn point_names(&self) -> &[String] {
        &self.carrier
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    /// The regular left action of a group on itself.
    pub fn regular(group: &FiniteGroup) -> GSet {
        let n = group.order();
        let carrier = group.element_names().to_vec();
        let act = (0..n)
            .map(|g| (0..n).map(|x| group.mul(g, x)).collect())
            .collect();
        GSet::new(group.clone(), carrier, act).unwrap()
    }

    /// The tautological left action of a permutation group built by
    /// [`crate::group::from_perms`]. Such tables are diagrammatic, so
    /// element `g` must act by the inverse permutation for the left-action
    /// law `g·(h·x) = (gh)·x` to hold.
    pub fn from_perm_group(group: &FiniteGroup, perms: &[Perm], names: Vec<String>) -> GSet {
        let act = perms
            .iter()
            .map(|p| p.inverse().images().to_vec())
            .collect();
        GSet::new(group.clone(), names, act).unwrap()
    }

    /// The trivial action on `n` points.
    pub fn trivial(group: &FiniteGroup, n: usize) -> GSet {
        let carrier = (0..n).map(|i| format!("p{i}")).collect();
        let act = vec![(0..n).collect::<Vec<_>>(); group.order()];
        GSet::new(group.clone(), carrier, act).unwrap()
    }

    /// The left coset action on `G/H`. Cosets are ordered by least element,
    /// so the coset of the identity comes first.
    pub fn cosets(group: &FiniteGroup, subgroup: &[usize]) -> GSet {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &h in subgroup {
                coset_of[group.mul(g, h)] = idx;
            }
        }
        let carrier = reps
            .iter()
            .map(|&r| format!("{}H", group.name_of(r)))
            .collect();
        let act = (0..n)
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
            .collect();
        GSet::new(group.clone(), carrier, act).unwrap()
    }

    /// Disjoint union, first summand's points first.
    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        debug_assert!(same_table(&self.group, &other.group));
        let n = self.size();
        let mut carrier: Vec<String> = self
            .carrier
            .iter()
            .map(|s| format!("L.{s}"))
            .collect();
        carrier.extend(other.carrier.iter().map(|s| format!("R.{s}")));
        let act = (0..self.group.order())
            .map(|g| {
                let mut row: Vec<usize> = self.act[g].clone();
                row.extend(other.act[g].iter().map(|&x| x + n));
                row
            })
            .collect();
        GSet::new(self.group.clone(), carrier, act).unwrap()
    }

    /// Pull back the action along a group homomorphism into this G-set's
    /// group: the result is an `h.source`-set on the same carrier.
    pub fn pullback(&self, h: &GroupHom) -> GSet {
        debug_assert!(same_table(&h.target, &self.group));
        let act = (0..h.source.order())
            .map(|g| self.act[h.map[g]].clone())
            .collect();
        GSet::new(h.source.clone(), self.carrier.clone(), act).unwrap()
    }
}

/// Tables-only group equality; element names are presentation detail.
pub fn same_table(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    (0..a.order()).all(|x| (0..a.order()).all(|y| a.mul(x, y) == b.mul(x, y)))
}

/// Orbit partition; blocks ordered by least point, points ascending.
pub fn orbits(s: &GSet) -> Vec<Vec<usize>> {
    let n = s.size();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let idx = blocks.len();
        let mut block = Vec::new();
        let mut queue = vec![x];
        block_of[x] = idx;
        while let Some(y) = queue.pop() {
            block.push(y);
            for g in 0..s.group.order() {
                let z = s.apply(g, y);
                if block_of[z] == usize::MAX {
                    block_of[z] = idx;
                    queue.push(z);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Connected means exactly one orbit; the empty G-set is not connected.
pub fn is_connected(s: &GSet) -> bool {
    orbits(s).len() == 1
}

pub fn stabilizer(s: &GSet, a: usize) -> Result<Subgroup, GSetError> {
    if a >= s.size() {
        return Err(GSetError::PointNotInCarrier(a));
    }
    let elements: Vec<usize> = (0..s.group.order())
        .filter(|&g| s.apply(g, a) == a)
        .collect();
    Ok(Subgroup::from_elements(&s.group, &elements))
}

/// A transversal for a connected G-set: for every point `y` the least group
/// element `γ_y` with `γ_y·a = y`; `γ_a` is automatically the identity.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub base: usize,
    pub reps: Vec<usize>,
}

pub fn transversal(s: &GSet, a: usize) -> Result<Transversal, GSetError> {
    if a >= s.size() {
        return Err(GSetError::PointNotInCarrier(a));
    }
    let mut reps = Vec::with_capacity(s.size());
    for y in 0..s.size() {
        match (0..s.group.order()).find(|&g| s.apply(g, a) == y) {
            Some(g) => reps.push(g),
            None => return Err(GSetError::NotConnected),
        }
    }
    Ok(Transversal { base: a, reps })
}

// --- equivariant maps -------------------------------------------------------

/// A G-equivariant map between two actions of the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    pub source: GSet,
    pub target: GSet,
    pub map: Vec<usize>,
}

impl EquivariantMap {
    pub fn new(source: GSet, target: GSet, map: Vec<usize>) -> Result<Self, GSetError> {
        if !same_table(&source.group, &target.group) {
            return Err(GSetError::GroupMismatch);
        }
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(GSetError::NotEquivariant { g: 0, x: 0 });
        }
        for g in 0..source.group.order() {
            for x in 0..source.size() {
                if map[source.apply(g, x)] != target.apply(g, map[x]) {
                    return Err(GSetError::NotEquivariant { g, x });
                }
            }
        }
        Ok(EquivariantMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(s: &GSet) -> EquivariantMap {
        EquivariantMap {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.size()).collect(),
        }
    }
}

/// Orbit data used by the map enumerations: representatives (least point per
/// orbit) and, for every point, some group element carrying its orbit
/// representative to it.
struct OrbitStructure {
    reps: Vec<usize>,
    orbit_of: Vec<usize>,
    carry: Vec<usize>,
    stabs: Vec<Vec<usize>>,
}

fn orbit_structure(s: &GSet) -> OrbitStructure {
    let blocks = orbits(s);
    let mut orbit_of = vec![0; s.size()];
    let mut carry = vec![0; s.size()];
    let mut reps = Vec::new();
    let mut stabs = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let rep = block[0];
        reps.push(rep);
        for &x in block {
            orbit_of[x] = i;
            carry[x] = (0..s.group.order())
                .find(|&g| s.apply(g, rep) == x)
                .expect("orbit member");
        }
        stabs.push(
            (0..s.group.order())
                .filter(|&g| s.apply(g, rep) == rep)
                .collect(),
        );
    }
    OrbitStructure {
        reps,
        orbit_of,
        carry,
        stabs,
    }
}

/// All equivariant maps `s -> t` whose value on each orbit representative is
/// accepted by `allowed`. Lexicographic order of the full point map.
pub fn equivariant_maps_where(
    s: &GSet,
    t: &GSet,
    mut allowed: impl FnMut(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    debug_assert!(same_table(&s.group, &t.group));
    let os = orbit_structure(s);
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for (i, &rep) in os.reps.iter().enumerate() {
        let cands: Vec<usize> = (0..t.size())
            .filter(|&y| os.stabs[i].iter().all(|&h| t.apply(h, y) == y))
            .filter(|&y| allowed(rep, y))
            .collect();
        candidates.push(cands);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; os.reps.len()];
    build_maps(s, t, &os, &candidates, &mut choice, 0, &mut out);
    out.sort();
    out
}

fn build_maps(
    s: &GSet,
    t: &GSet,
    os: &OrbitStructure,
    candidates: &[Vec<usize>],
    choice: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == os.reps.len() {
        let map: Vec<usize> = (0..s.size())
            .map(|x| t.apply(os.carry[x], choice[os.orbit_of[x]]))
            .collect();
        out.push(map);
        return;
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        build_maps(s, t, os, candidates, choice, depth + 1, out);
    }
}

pub fn equivariant_maps(s: &GSet, t: &GSet) -> Vec<Vec<usize>> {
    equivariant_maps_where(s, t, |_, _| true)
}

/// All equivariant bijections `s -> t`, by backtracking over whole orbits
/// (an orbit maps isomorphically onto an orbit of equal size and stabilizer).
pub fn equivariant_isos(s: &GSet, t: &GSet) -> Vec<Vec<usize>> {
    if s.size() != t.size() {
        return Vec::new();
    }
    let os = orbit_structure(s);
    let t_orbits = orbits(t);
    let mut orbit_of_t = vec![0; t.size()];
    for (j, block) in t_orbits.iter().enumerate() {
        for &y in block {
            orbit_of_t[y] = j;
        }
    }
    let s_orbit_sizes: Vec<usize> = orbits(s).iter().map(|b| b.len()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; os.reps.len()];
    let mut used_orbit = vec![false; t_orbits.len()];
    fn rec(
        s: &GSet,
        t: &GSet,
        os: &OrbitStructure,
        s_orbit_sizes: &[usize],
        t_orbits: &[Vec<usize>],
        orbit_of_t: &[usize],
        used_orbit: &mut Vec<bool>,
        choice: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == os.reps.len() {
            let map: Vec<usize> = (0..s.size())
                .map(|x| t.apply(os.carry[x], choice[os.orbit_of[x]]))
                .collect();
            out.push(map);
            return;
        }
        for y in 0..t.size() {
            let j = orbit_of_t[y];
            if used_orbit[j] || t_orbits[j].len() != s_orbit_sizes[depth] {
                continue;
            }
            // equal stabilizers, not mere containment, for a bijection
            let stab_eq = os.stabs[depth].iter().all(|&h| t.apply(h, y) == y)
                && (0..t.group.order()).filter(|&h| t.apply(h, y) == y).count()
                    == os.stabs[depth].len();
            if !stab_eq {
                continue;
            }
            used_orbit[j] = true;
            choice[depth] = y;
            rec(
                s, t, os, s_orbit_sizes, t_orbits, orbit_of_t, used_orbit, choice, depth + 1, out,
            );
            used_orbit[j] = false;
        }
    }
    rec(
        s,
        t,
        &os,
        &s_orbit_sizes,
        &t_orbits,
        &orbit_of_t,
        &mut used_orbit,
        &mut choice,
        0,
        &mut out,
    );
    out.sort();
    out
}

pub fn are_equivariantly_isomorphic(s: &GSet, t: &GSet) -> bool {
    !equivariant_isos(s, t).is_empty()
}

// --- automorphism groups ----------------------------------------------------

/// The group of equivariant bijections of a G-set, with diagrammatic
/// multiplication; `perms[i]` realizes element `i`, identity at index 0.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: FiniteGroup,
    pub perms: Vec<Perm>,
}

pub fn aut_group(s: &GSet) -> AutGroup {
    let maps = equivariant_isos(s, s);
    let perms: Vec<Perm> = maps
        .into_iter()
        .map(|m| Perm::new(m).expect("bijection"))
        .collect();
    // lexicographic order puts the identity first
    let pos = |p: &Perm| perms.binary_search(p).expect("closed under composition");
    let names = perms.iter().map(|p| p.cycle_notation()).collect();
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| pos(&p.then(q))).collect())
        .collect();
    let group = FiniteGroup::new(names, table).expect("automorphism group");
    AutGroup { group, perms }
}

/// Def-style Galois test: connected, and `Ψ : Y × Aut Y -> Y × Y`,
/// `(y, φ) ↦ (y, φ(y))`, enumerated literally and checked bijective.
pub fn is_galois(s: &GSet) -> bool {
    if !is_connected(s) {
        return false;
    }
    let aut = aut_group(s);
    let n = s.size();
    let mut hit = vec![false; n * n];
    let mut count = 0usize;
    for phi in &aut.perms {
        for y in 0..n {
            let idx = y * n + phi.apply(y);
            if hit[idx] {
                return false;
            }
            hit[idx] = true;
            count += 1;
        }
    }
    count == n * n
}

// --- the slice equivalence --------------------------------------------------

/// The fiber of a map to a connected Y over a point, as a set with an action
/// of the stabilizer of that point.
#[derive(Clone, Debug)]
pub struct SliceFiber {
    pub stab: Subgroup,
    pub fiber: GSet,
    /// Indices in the source carrier realizing the fiber points, ascending.
    pub points: Vec<usize>,
}

pub fn slice_to_hset(p: &EquivariantMap, a: usize) -> Result<SliceFiber, GSetError> {
    if !is_connected(&p.target) {
        return Err(GSetError::NotConnected);
    }
    if a >= p.target.size() {
        return Err(GSetError::PointNotInCarrier(a));
    }
    let stab = stabilizer(&p.target, a)?;
    let points: Vec<usize> = (0..p.source.size()).filter(|&z| p.map[z] == a).collect();
    let pos = |z: usize| points.binary_search(&z).expect("fiber closed under H");
    let carrier = points
        .iter()
        .map(|&z| p.source.point_names()[z].clone())
        .collect();
    let act = stab
        .elements
        .iter()
        .map(|&h| points.iter().map(|&z| pos(p.source.apply(h, z))).collect())
        .collect();
    let fiber = GSet::new(stab.group.clone(), carrier, act).expect("restricted action");
    Ok(SliceFiber {
        stab,
        fiber,
        points,
    })
}

/// Rebuilds a G-set over connected `y` from an H-set `u`, H the stabilizer
/// of the transversal's base point: carrier `y × u` with
/// `g·(y, u) = (g·y, γ_{gy}⁻¹ g γ_y · u)`, together with the projection.
pub fn hset_to_slice(
    u: &GSet,
    y: &GSet,
    t: &Transversal,
) -> Result<(GSet, EquivariantMap), GSetError> {
    let stab = stabilizer(y, t.base)?;
    if !same_table(&u.group, &stab.group) {
        return Err(GSetError::StabilizerMismatch);
    }
    if !is_connected(y) {
        return Err(GSetError::NotConnected);
    }
    let g = &y.group;
    let ny = y.size();
    let nu = u.size();
    let idx = |yy: usize, uu: usize| yy * nu + uu;
    let mut carrier = Vec::with_capacity(ny * nu);
    for yy in 0..ny {
        for uu in 0..nu {
            carrier.push(format!(
                "({},{})",
                y.point_names()[yy],
                u.point_names()[uu]
            ));
        }
    }
    let mut act = vec![vec![0; ny * nu]; g.order()];
    for gg in 0..g.order() {
        for yy in 0..ny {
            let gy = y.apply(gg, yy);
            // h = γ_{gy}⁻¹ g γ_y lies in H
            let h_parent = g.mul(g.mul(g.inv(t.reps[gy]), gg), t.reps[yy]);
            let h = stab
                .elements
                .binary_search(&h_parent)
                .expect("transversal conjugate lands in the stabilizer");
            for uu in 0..nu {
                act[gg][idx(yy, uu)] = idx(gy, u.apply(h, uu));
            }
        }
    }
    let total = GSet::new(g.clone(), carrier, act).expect("slice action");
    let projection: Vec<usize> = (0..ny * nu).map(|i| i / nu).collect();
    let proj = EquivariantMap::new(total.clone(), y.clone(), projection)?;
    Ok((total, proj))
}

/// The two hom-sets of the slice equivalence, both enumerated exhaustively,
/// with the restriction map exhibited and the extension formula re-checked.
#[derive(Clone, Debug)]
pub struct HomTransport {
    pub over_maps: Vec<Vec<usize>>,
    pub fiber_maps: Vec<Vec<usize>>,
    /// For each over-map, the index of its restriction among the fiber maps.
    pub restriction: Vec<usize>,
    pub bijective: bool,
    pub extension_ok: bool,
}

pub fn hom_transport(
    pz: &EquivariantMap,
    pz2: &EquivariantMap,
    a: usize,
) -> Result<HomTransport, GSetError> {
    if pz.target != pz2.target {
        return Err(GSetError::TargetMismatch);
    }
    let y = &pz.target;
    if !is_connected(y) {
        return Err(GSetError::NotConnected);
    }
    let t = transversal(y, a)?;
    let fib = slice_to_hset(pz, a)?;
    let fib2 = slice_to_hset(pz2, a)?;
    let over_maps = equivariant_maps_where(&pz.source, &pz2.source, |r, c| {
        pz2.map[c] == pz.map[r]
    });
    let fiber_maps = equivariant_maps(&fib.fiber, &fib2.fiber);
    let restrict = |m: &[usize]| -> Vec<usize> {
        fib.points
            .iter()
            .map(|&z| {
                fib2.points
                    .binary_search(&m[z])
                    .expect("over-map preserves fibers")
            })
            .collect()
    };
    let mut restriction = Vec::with_capacity(over_maps.len());
    for m in &over_maps {
        let r = restrict(m);
        let idx = fiber_maps
            .binary_search(&r)
            .expect("restriction of an over-map is H-equivariant");
        restriction.push(idx);
    }
    let mut seen = vec![false; fiber_maps.len()];
    let mut injective = true;
    for &i in &restriction {
        if seen[i] {
            injective = false;
        }
        seen[i] = true;
    }
    let bijective = injective && restriction.len() == fiber_maps.len();

    // Extension formula f(z) = g·f_a(g⁻¹·z) for π(z) = g·a.
    let mut extension_ok = true;
    for fm in &fiber_maps {
        let mut ext = vec![0usize; pz.source.size()];
        for z in 0..pz.source.size() {
            let g = t.reps[pz.map[z]];
            let back = pz.source.apply(y.group.inv(g), z);
            let in_fiber = fib.points.binary_search(&back).expect("g⁻¹·z in fiber");
            ext[z] = pz2.source.apply(g, fib2.points[fm[in_fiber]]);
        }
        if over_maps.binary_search(&ext).is_err() || restrict(&ext) != *fm {
            extension_ok = false;
        }
    }
    Ok(HomTransport {
        over_maps,
        fiber_maps,
        restriction,
        bijective,
        extension_ok,
    })
}

// --- the exact sequence of a Galois object -----------------------------------

/// Certificate for `1 → H → G → Aut Y → 1` on a Galois Y.
#[derive(Clone, Debug)]
pub struct GaloisSequence {
    pub stabilizer: Subgroup,
    pub aut: AutGroup,
    /// `phi[g]` = index in `aut` of the unique automorphism with `a ↦ g·a`.
    pub phi: Vec<usize>,
    pub homomorphism_ok: bool,
    pub surjective: bool,
    pub kernel_is_stabilizer: bool,
    pub stabilizer_normal: bool,
    pub order_product_ok: bool,
}

impl GaloisSequence {
    pub fn all_ok(&self) -> bool {
        self.homomorphism_ok
            && self.surjective
            && self.kernel_is_stabilizer
            && self.stabilizer_normal
            && self.order_product_ok
    }
}

pub fn galois_exact_sequence(y: &GSet, a: usize) -> Result<GaloisSequence, GSetError> {
    if a >= y.size() {
        return Err(GSetError::PointNotInCarrier(a));
    }
    if !is_galois(y) {
        return Err(GSetError::NotGalois);
    }
    let stab = stabilizer(y, a)?;
    let aut = aut_group(y);
    let g = &y.group;
    let mut phi = Vec::with_capacity(g.order());
    for gg in 0..g.order() {
        let target = y.apply(gg, a);
        let idx = aut
            .perms
            .iter()
            .position(|p| p.apply(a) == target)
            .expect("Galois: Aut acts transitively on the fiber");
        phi.push(idx);
    }
    let homomorphism_ok = (0..g.order()).all(|x| {
        (0..g.order()).all(|z| phi[g.mul(x, z)] == aut.group.mul(phi[x], phi[z]))
    });
    let mut image: Vec<usize> = phi.clone();
    image.sort_unstable();
    image.dedup();
    let surjective = image.len() == aut.perms.len();
    let kernel: Vec<usize> = (0..g.order()).filter(|&x| phi[x] == 0).collect();
    let kernel_is_stabilizer = kernel == stab.elements;
    let stabilizer_normal = group::is_normal(g, &stab.elements);
    let order_product_ok = g.order() == stab.order() * aut.perms.len();
    Ok(GaloisSequence {
        stabilizer: stab,
        aut,
        phi,
        homomorphism_ok,
        surjective,
        kernel_is_stabilizer,
        stabilizer_normal,
        order_product_ok,
    })
}

// --- restriction along a group morphism --------------------------------------

/// Report for the automorphism-count criterion of a restricted regular
/// action: `G` as a `G'`-set along `f`, its equivariant bijections counted
/// two independent ways, against the closed product formula, plus the
/// fully-faithfulness probes that detect surjectivity of `f`.
#[derive(Clone, Debug)]
pub struct RestrictionAutCard {
    pub brute_count: u128,
    pub formula: u128,
    pub formula_matches: bool,
    /// `G → Aut_{G'}(G)` by right translations is bijective.
    pub translations_bijective: bool,
    /// Fixed-point comparison `Hom(*, G)` under G vs under the image.
    pub fixed_point_probe_ok: bool,
    /// Both probes, i.e. the pullback is fully faithful on `{*, G}`.
    pub onto_verdict: bool,
    pub actually_surjective: bool,
}

/// The restricted regular action: carrier = elements of `f.target`,
/// `g'·x = f(g')·x`.
pub fn restricted_regular(f: &GroupHom) -> GSet {
    let g = &f.target;
    let carrier = g.element_names().to_vec();
    let act = (0..f.source.order())
        .map(|gp| (0..g.order()).map(|x| g.mul(f.map[gp], x)).collect())
        .collect();
    GSet::new(f.source.clone(), carrier, act).unwrap()
}

pub fn restriction_aut_card(f: &GroupHom) -> RestrictionAutCard {
    let s = restricted_regular(f);
    let g = &f.target;
    let image = f.image_elements();
    let index = g.order() / image.len();

    let brute_count = count_equivariant_isos(&s, &s);
    let formula = (image.len() as u128).pow(index as u32) * factorial(index);
    let formula_matches = brute_count == formula;

    // right translations x ↦ x·g are equivariant and pairwise distinct
    let translations_bijective = brute_count == g.order() as u128;

    // Hom(*, G): fixed points under all of G vs under Im f only.
    let g_fixed = (0..g.order())
        .filter(|&x| (0..g.order()).all(|a| g.mul(a, x) == x))
        .count();
    let image_fixed = (0..g.order())
        .filter(|&x| image.iter().all(|&a| g.mul(a, x) == x))
        .count();
    let fixed_point_probe_ok = g_fixed == image_fixed;

    RestrictionAutCard {
        brute_count,
        formula,
        formula_matches,
        translations_bijective,
        fixed_point_probe_ok,
        onto_verdict: translations_bijective && fixed_point_probe_ok,
        actually_surjective: f.is_surjective(),
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Counts equivariant bijections `s -> t` exactly. Orbit-to-orbit
/// isomorphisms are enumerated explicitly pair by pair; the assembly over
/// orbit matchings is the permanent of the resulting count matrix, so no
/// closed-form automorphism count is assumed anywhere.
pub fn count_equivariant_isos(s: &GSet, t: &GSet) -> u128 {
    if s.size() != t.size() {
        return 0;
    }
    let s_orbits = orbits(s);
    let t_orbits = orbits(t);
    if s_orbits.len() != t_orbits.len() {
        return 0;
    }
    let m = s_orbits.len();
    let mut counts = vec![vec![0u128; m]; m];
    for (i, so) in s_orbits.iter().enumerate() {
        let rep = so[0];
        let stab: Vec<usize> = (0..s.group.order())
            .filter(|&h| s.apply(h, rep) == rep)
            .collect();
        for (j, to) in t_orbits.iter().enumerate() {
            if so.len() != to.len() {
                continue;
            }
            // candidates y in the target orbit with the same stabilizer give
            // exactly the equivariant isos of this orbit pair
            let mut c = 0u128;
            for &y in to {
                let fixes_all = stab.iter().all(|&h| t.apply(h, y) == y);
                if fixes_all {
                    let ty_stab = (0..t.group.order()).filter(|&h| t.apply(h, y) == y).count();
                    if ty_stab == stab.len() {
                        c += 1;
                    }
                }
            }
            counts[i][j] = c;
        }
    }
    permanent(&counts)
}

/// Permanent by Ryser-style subset DP; fine for the desk-scale matrices here.
fn permanent(m: &[Vec<u128>]) -> u128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    // dp over subsets of columns used by the first rows
    let mut dp = vec![0u128; 1 << n];
    dp[0] = 1;
    for mask in 0..(1usize << n) {
        let row = (mask as u32).count_ones() as usize;
        if row >= n || dp[mask] == 0 {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) == 0 && m[row][col] != 0 {
                dp[mask | (1 << col)] += dp[mask] * m[row][col];
            }
        }
    }
    dp[(1 << n) - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, symmetric, trivial};

    fn s3_natural() -> GSet {
        let (s3, perms) = group::from_perms(
            3,
            &[
                Perm::from_cycles(3, "(1 2)").unwrap(),
                Perm::from_cycles(3, "(1 2 3)").unwrap(),
            ],
        );
        let carrier = vec!["1".into(), "2".into(), "3".into()];
        GSet::from_perm_group(&s3, &perms, carrier)
    }

    #[test]
    fn orbit_examples() {
        let z3 = cyclic(3);
        assert_eq!(orbits(&GSet::trivial(&z3, 3)).len(), 3);
        assert_eq!(orbits(&GSet::regular(&z3)).len(), 1);
        let nat = s3_natural();
        let with_fixed = nat.disjoint_union(&GSet::trivial(&nat.group, 1));
        let blocks = orbits(&with_fixed);
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].len(), 3);
        assert_eq!(blocks[1].len(), 1);
    }

    #[test]
    fn stabilizer_examples() {
        let z4 = cyclic(4);
        assert_eq!(stabilizer(&GSet::regular(&z4), 0).unwrap().order(), 1);
        assert_eq!(stabilizer(&GSet::trivial(&z4, 2), 1).unwrap().order(), 4);
        let nat = s3_natural();
        assert_eq!(stabilizer(&nat, 0).unwrap().order(), 2);
        assert!(matches!(
            stabilizer(&nat, 7),
            Err(GSetError::PointNotInCarrier(7))
        ));
    }

    #[test]
    fn aut_group_examples() {
        let z4 = cyclic(4);
        assert_eq!(aut_group(&GSet::regular(&z4)).group.order(), 4);
        assert_eq!(aut_group(&s3_natural()).group.order(), 1);
        assert_eq!(aut_group(&GSet::trivial(&trivial(), 4)).group.order(), 24);
    }

    /// Oracle: enumerate all functions and filter, then compare with the
    /// structured enumeration.
    #[test]
    fn equivariant_maps_match_flat_bruteforce() {
        let z4 = cyclic(4);
        let y = GSet::regular(&z4);
        let u = GSet::cosets(&z4, &[0, 2]);
        for (s, t) in [(&y, &u), (&u, &y), (&u, &u)] {
            let smart = equivariant_maps(s, t);
            let mut flat = Vec::new();
            let mut f = vec![0usize; s.size()];
            loop {
                let ok = (0..z4.order()).all(|g| {
                    (0..s.size()).all(|x| f[s.apply(g, x)] == t.apply(g, f[x]))
                });
                if ok {
                    flat.push(f.clone());
                }
                let mut i = 0;
                loop {
                    if i == f.len() {
                        break;
                    }
                    f[i] += 1;
                    if f[i] < t.size() {
                        break;
                    }
                    f[i] = 0;
                    i += 1;
                }
                if i == f.len() {
                    break;
                }
            }
            flat.sort();
            assert_eq!(smart, flat);
        }
    }

    #[test]
    fn galois_examples() {
        let z2 = cyclic(2);
        assert!(is_galois(&GSet::regular(&z2)));
        assert!(!is_galois(&s3_natural()));
        // S3 on the 2-point sign quotient is Galois (A3 is normal)
        let s3 = symmetric(3);
        let a3: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        assert_eq!(a3.len(), 3);
        let signs = GSet::cosets(&s3, &a3);
        assert_eq!(signs.size(), 2);
        assert!(is_galois(&signs));
        // empty G-set: not connected, hence not Galois
        let empty = GSet::new(z2.clone(), vec![], vec![vec![], vec![]]).unwrap();
        assert!(!is_connected(&empty));
        assert!(!is_galois(&empty));
    }

    #[test]
    fn slice_fiber_examples() {
        let nat = s3_natural();
        let idm = EquivariantMap::identity(&nat);
        let fib = slice_to_hset(&idm, 0).unwrap();
        assert_eq!(fib.fiber.size(), 1);
        // Z = regular S3 with p(g) = g·1: fiber over 1 is the stabilizer
        let reg = GSet::regular(&nat.group);
        let pmap: Vec<usize> = (0..6).map(|g| nat.apply(g, 0)).collect();
        let p = EquivariantMap::new(reg.clone(), nat.clone(), pmap).unwrap();
        let fib = slice_to_hset(&p, 0).unwrap();
        assert_eq!(fib.fiber.size(), 2);
        assert_eq!(fib.stab.order(), 2);
        assert!(is_connected(&fib.fiber)); // H regular on itself
    }

    #[test]
    fn hset_to_slice_examples() {
        // U = one point over regular Y recovers Y
        let z4 = cyclic(4);
        let y = GSet::regular(&z4);
        let t = transversal(&y, 0).unwrap();
        let stab = stabilizer(&y, 0).unwrap();
        let u1 = GSet::trivial(&stab.group, 1);
        let (total, _) = hset_to_slice(&u1, &y, &t).unwrap();
        assert!(are_equivariantly_isomorphic(&total, &y));
        // U = 2 trivial points over regular Z4: two disjoint regular copies
        let u2 = GSet::trivial(&stab.group, 2);
        let (total2, _) = hset_to_slice(&u2, &y, &t).unwrap();
        assert_eq!(orbits(&total2).len(), 2);
        assert!(are_equivariantly_isomorphic(
            &total2,
            &y.disjoint_union(&y)
        ));
        // S3 natural, U = regular H: total is the regular S3-set
        let nat = s3_natural();
        let tn = transversal(&nat, 0).unwrap();
        let h = stabilizer(&nat, 0).unwrap();
        let ur = GSet::regular(&h.group);
        let (total3, proj) = hset_to_slice(&ur, &nat, &tn).unwrap();
        assert_eq!(total3.size(), 6);
        assert!(are_equivariantly_isomorphic(
            &total3,
            &GSet::regular(&nat.group)
        ));
        // fiber over base recovers U
        let fib = slice_to_hset(&proj, 0).unwrap();
        assert!(are_equivariantly_isomorphic(&fib.fiber, &ur));
    }

    #[test]
    fn hom_transport_examples() {
        let z4 = cyclic(4);
        let y = GSet::regular(&z4);
        // Z = Z' = Y ⊔ Y over Y by the fold: both hom-sets have 4 elements
        let zz = y.disjoint_union(&y);
        let fold: Vec<usize> = (0..8).map(|i| i % 4).collect();
        let p = EquivariantMap::new(zz.clone(), y.clone(), fold).unwrap();
        let tr = hom_transport(&p, &p, 0).unwrap();
        assert_eq!(tr.over_maps.len(), 4);
        assert_eq!(tr.fiber_maps.len(), 4);
        assert!(tr.bijective);
        assert!(tr.extension_ok);
        // Z = Y itself: single hom both sides
        let idm = EquivariantMap::identity(&y);
        let tr2 = hom_transport(&idm, &idm, 0).unwrap();
        assert_eq!(tr2.over_maps.len(), 1);
        assert!(tr2.bijective);
        // G = S3, Y natural, Z = regular, Z' = Y: both hom-sets singletons
        let nat = s3_natural();
        let reg = GSet::regular(&nat.group);
        let pmap: Vec<usize> = (0..6).map(|g| nat.apply(g, 0)).collect();
        let pz = EquivariantMap::new(reg, nat.clone(), pmap).unwrap();
        let pid = EquivariantMap::identity(&nat);
        let tr3 = hom_transport(&pz, &pid, 0).unwrap();
        assert_eq!(tr3.over_maps.len(), 1);
        assert_eq!(tr3.fiber_maps.len(), 1);
        assert!(tr3.bijective && tr3.extension_ok);
    }

    #[test]
    fn exact_sequence_examples() {
        // regular: H = 1, Φ iso
        let z4 = cyclic(4);
        let seq = galois_exact_sequence(&GSet::regular(&z4), 0).unwrap();
        assert!(seq.all_ok());
        assert_eq!(seq.stabilizer.order(), 1);
        assert_eq!(seq.aut.group.order(), 4);
        // S3 on sign quotient: 1 → A3 → S3 → Z2 → 1
        let s3 = symmetric(3);
        let a3: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        let signs = GSet::cosets(&s3, &a3);
        let seq = galois_exact_sequence(&signs, 0).unwrap();
        assert!(seq.all_ok());
        assert_eq!(seq.stabilizer.order(), 3);
        assert_eq!(seq.aut.group.order(), 2);
        // Z4 on Z4/{0,2}
        let seq = galois_exact_sequence(&GSet::cosets(&z4, &[0, 2]), 0).unwrap();
        assert!(seq.all_ok());
        assert_eq!(seq.stabilizer.elements, vec![0, 2]);
        assert_eq!(seq.aut.group.order(), 2);
        // refusal on non-Galois
        assert!(matches!(
            galois_exact_sequence(&s3_natural(), 0),
            Err(GSetError::NotGalois)
        ));
    }

    #[test]
    fn restriction_card_examples() {
        // identity on Z2: count 2 = 2^1·1!
        let z2 = cyclic(2);
        let idh = GroupHom::identity(&z2);
        let r = restriction_aut_card(&idh);
        assert_eq!(r.brute_count, 2);
        assert_eq!(r.formula, 2);
        assert!(r.onto_verdict && r.actually_surjective);
        // trivial → Z2: count 2 = 1²·2!, but not onto
        let f = GroupHom::new(trivial(), z2.clone(), vec![0]).unwrap();
        let r = restriction_aut_card(&f);
        assert_eq!(r.brute_count, 2);
        assert_eq!(r.formula, 2);
        assert!(!r.actually_surjective);
        assert_eq!(r.onto_verdict, r.actually_surjective);
        // Z2 → Z4 inclusion: count 8 = 2²·2!
        let z4 = cyclic(4);
        let f = GroupHom::new(z2, z4, vec![0, 2]).unwrap();
        let r = restriction_aut_card(&f);
        assert_eq!(r.brute_count, 8);
        assert_eq!(r.formula, 8);
        assert!(!r.onto_verdict);
    }

    /// The three-way Galois criterion on transitive actions of groups up to
    /// order 24 that are not already swept by the acceptance library.
    #[test]
    fn galois_criterion_up_to_order_24() {
        for g in [
            crate::group::symmetric(4),
            cyclic(24),
            crate::group::dihedral(12),
        ] {
            for sub in crate::group::all_subgroups(&g) {
                let y = GSet::cosets(&g, &sub);
                let galois = is_galois(&y);
                let normal = crate::group::is_normal(&g, &sub);
                let aut = aut_group(&y).group.order();
                assert_eq!(galois, normal);
                assert_eq!(galois, aut == y.size());
            }
        }
    }

    #[test]
    fn permanent_count_matches_explicit_enumeration() {
        let d4 = dihedral(4);
        for sub in crate::group::all_subgroups(&d4) {
            let s = GSet::cosets(&d4, &sub);
            let explicit = equivariant_isos(&s, &s).len() as u128;
            assert_eq!(count_equivariant_isos(&s, &s), explicit);
        }
    }

    #[test]
    fn transversal_least_representatives() {
        let nat = s3_natural();
        let t = transversal(&nat, 0).unwrap();
        assert_eq!(t.reps[0], 0); // γ_a = identity
        for y in 0..nat.size() {
            assert_eq!(nat.apply(t.reps[y], 0), y);
            for g in 0..t.reps[y] {
                assert_ne!(nat.apply(g, 0), y, "not the least representative");
            }
        }
    }
}
