//! Finite groups stored as full multiplication tables.
//!
//! The identity always sits at index 0; that single convention makes every
//! canonical choice downstream (coset representatives, transversals,
//! stabilizer orderings) deterministic. Groups built from permutations use
//! diagrammatic composition, consistent with [`crate::perm`].

use crate::budget::{Budget, BudgetError};
use crate::perm::Perm;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// A finite group: ordered element names and a total multiplication table,
/// `table[a][b]` being the product `a·b`. Identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroupDefect {
    #[error("element count {elements} does not match table shape")]
    Shape { elements: usize },
    #[error("table entry ({a},{b}) out of range")]
    EntryRange { a: usize, b: usize },
    #[error("identity not neutral at element {witness}")]
    IdentityNotNeutral { witness: usize },
    #[error("non-associative at ({a},{b},{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("missing inverse for element {witness}")]
    MissingInverse { witness: usize },
    #[error("duplicate element name '{name}'")]
    DuplicateName { name: String },
}

impl FiniteGroup {
    /// Validates the group axioms exhaustively (identity at index 0 included).
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, Vec<GroupDefect>> {
        let n = elements.len();
        let mut defects = Vec::new();
        let mut names = BTreeSet::new();
        for name in &elements {
            if !names.insert(name.clone()) {
                defects.push(GroupDefect::DuplicateName { name: name.clone() });
            }
        }
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n) {
            defects.push(GroupDefect::Shape { elements: n });
            return Err(defects);
        }
        for a in 0..n {
            for b in 0..n {
                if table[a][b] >= n {
                    defects.push(GroupDefect::EntryRange { a, b });
                }
            }
        }
        if !defects.is_empty() {
            return Err(defects);
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                defects.push(GroupDefect::IdentityNotNeutral { witness: a });
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        defects.push(GroupDefect::NonAssociative { a, b, c });
                        break 'assoc;
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                defects.push(GroupDefect::MissingInverse { witness: a });
            }
        }
        if defects.is_empty() {
            Ok(FiniteGroup { elements, table })
        } else {
            Err(defects)
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn name_of(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("validated group has inverses")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest generating set found by greedy extension in element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = subgroup_closure(self, &[]);
        for a in 1..n {
            if span.len() == n {
                break;
            }
            if !span.contains(&a) {
                gens.push(a);
                let mut seed = gens.clone();
                seed.push(0);
                span = subgroup_closure(self, &seed);
            }
        }
        gens
    }

    /// The set product of a word of element indices, left to right.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &g| self.mul(acc, g))
    }
}

/// Closes a seed set of elements into a subgroup; returns sorted indices.
pub fn subgroup_closure(group: &FiniteGroup, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; group.order()];
    inside[0] = true;
    let mut queue: Vec<usize> = vec![0];
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            queue.push(s);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        i += 1;
        let members: Vec<usize> = queue.clone();
        for b in members {
            for c in [group.mul(a, b), group.mul(b, a), group.inv(a)] {
                if !inside[c] {
                    inside[c] = true;
                    queue.push(c);
                }
            }
        }
    }
    let mut out: Vec<usize> = (0..group.order()).filter(|&a| inside[a]).collect();
    out.sort_unstable();
    out
}

/// A subgroup as sorted parent indices together with its own group table.
/// The inclusion is `elements[i] -> parent`; identity stays at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
}

impl Subgroup {
    pub fn from_elements(parent: &FiniteGroup, elements: &[usize]) -> Subgroup {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        debug_assert_eq!(sorted.first(), Some(&0), "subgroup must contain identity");
        let pos: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let names = sorted
            .iter()
            .map(|&a| parent.name_of(a).to_string())
            .collect();
        let table = sorted
            .iter()
            .map(|&a| sorted.iter().map(|&b| pos[&parent.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::new(names, table).expect("closed subset is a group");
        Subgroup {
            elements: sorted,
            group,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, parent_index: usize) -> bool {
        self.elements.binary_search(&parent_index).is_ok()
    }
}

/// All subgroups of `group`, found by closing known subgroups with one extra
/// element until nothing new appears. Sorted by (order, element list).
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let trivial = vec![0usize];
    let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
    known.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for a in 1..group.order() {
            if h.binary_search(&a).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(a);
            let closed = subgroup_closure(group, &seed);
            if known.insert(closed.clone()) {
                frontier.push(closed);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = known.into_iter().collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

pub fn is_normal(group: &FiniteGroup, elements: &[usize]) -> bool {
    let set: BTreeSet<usize> = elements.iter().copied().collect();
    for g in 0..group.order() {
        let gi = group.inv(g);
        for &h in elements {
            if !set.contains(&group.mul(group.mul(g, h), gi)) {
                return false;
            }
        }
    }
    true
}

/// A normal subgroup with its quotient group and projection map.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub kernel: Subgroup,
    pub quotient: FiniteGroup,
    /// `projection[g]` = index of the coset of `g` in the quotient.
    pub projection: Vec<usize>,
}

/// The quotient by a normal subgroup. Cosets are ordered by least element,
/// so the identity coset (containing 0) is first and names come from coset
/// representatives.
pub fn quotient_by(group: &FiniteGroup, kernel_elements: &[usize]) -> QuotientData {
    debug_assert!(is_normal(group, kernel_elements));
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(g);
        for &h in kernel_elements {
            coset_of[group.mul(g, h)] = idx;
        }
    }
    let names = reps
        .iter()
        .map(|&r| format!("[{}]", group.name_of(r)))
        .collect();
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[group.mul(a, b)]).collect())
        .collect();
    let quotient = FiniteGroup::new(names, table).expect("cosets of a normal subgroup");
    QuotientData {
        kernel: Subgroup::from_elements(group, kernel_elements),
        quotient,
        projection: coset_of,
    }
}

/// All normal subgroups with quotients and projections, ordered by kernel
/// size then by kernel elements. Refuses groups above the budget's order cap.
pub fn finite_quotients(
    group: &FiniteGroup,
    budget: &Budget,
) -> Result<Vec<QuotientData>, BudgetError> {
    budget.check_group_order(group.order())?;
    let mut out = Vec::new();
    for sub in all_subgroups(group) {
        if is_normal(group, &sub) {
            out.push(quotient_by(group, &sub));
        }
    }
    Ok(out)
}

/// A homomorphism between finite groups, stored as the image of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HomDefect {
    #[error("map length {got} does not match source order {want}")]
    Length { got: usize, want: usize },
    #[error("does not preserve products at ({a},{b})")]
    NotMultiplicative { a: usize, b: usize },
}

impl GroupHom {
    pub fn new(
        source: FiniteGroup,
        target: FiniteGroup,
        map: Vec<usize>,
    ) -> Result<Self, HomDefect> {
        if map.len() != source.order() {
            return Err(HomDefect::Length {
                got: map.len(),
                want: source.order(),
            });
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(HomDefect::NotMultiplicative { a, b });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(group: &FiniteGroup) -> GroupHom {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            map: (0..group.order()).collect(),
        }
    }

    pub fn image_elements(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.map.iter().copied().collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_surjective(&self) -> bool {
        self.image_elements().len() == self.target.order()
    }
}

/// Every homomorphism `source -> target`, enumerated by generator images
/// (pruned by element orders) and returned in lexicographic order of the
/// full element map.
pub fn all_homomorphisms(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    let gens = source.generating_set();
    if gens.is_empty() {
        return vec![GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: vec![0; 1],
        }];
    }
    // Express every source element as a word in the generators once.
    let words = words_in_generators(source, &gens);
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    enumerate_hom_choices(source, target, &gens, &words, &mut choice, 0, &mut maps);
    maps.sort();
    maps.into_iter()
        .map(|map| GroupHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
        .collect()
}

fn enumerate_hom_choices(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    words: &[Vec<usize>],
    choice: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == gens.len() {
        let map: Vec<usize> = words
            .iter()
            .map(|w| target.product(&w.iter().map(|&i| choice[i]).collect::<Vec<_>>()))
            .collect();
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return;
                }
            }
        }
        out.push(map);
        return;
    }
    let gen_order = source.element_order(gens[depth]);
    for t in 0..target.order() {
        if gen_order % target.element_order(t) == 0 {
            choice[depth] = t;
            enumerate_hom_choices(source, target, gens, words, choice, depth + 1, out);
        }
    }
}

/// For each element, some word in the given generators (indices into `gens`)
/// whose product is that element.
pub(crate) fn words_in_generators(group: &FiniteGroup, gens: &[usize]) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut word: Vec<Option<Vec<usize>>> = vec![None; n];
    word[0] = Some(Vec::new());
    let mut queue = vec![0usize];
    let mut qi = 0;
    while qi < queue.len() {
        let a = queue[qi];
        qi += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let b = group.mul(a, g);
            if word[b].is_none() {
                let mut w = word[a].clone().unwrap();
                w.push(gi);
                word[b] = Some(w);
                queue.push(b);
            }
        }
    }
    word.into_iter()
        .map(|w| w.expect("generators generate"))
        .collect()
}

/// Brute-force isomorphism search via generator images.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    all_homomorphisms(a, b)
        .into_iter()
        .find(|h| {
            let mut img = h.map.clone();
            img.sort_unstable();
            img.dedup();
            img.len() == b.order()
        })
        .map(|h| h.map)
}

// --- constructors -----------------------------------------------------------

/// Closure of a set of permutations under diagrammatic composition, as a
/// group whose elements are named by cycle notation and sorted
/// lexicographically (identity first). Also returns the permutations in
/// element order.
pub fn from_perms(degree: usize, gens: &[Perm]) -> (FiniteGroup, Vec<Perm>) {
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    let perms: Vec<Perm> = seen.into_iter().collect();
    let pos: BTreeMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let names = perms.iter().map(|p| p.cycle_notation()).collect();
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| pos[&p.then(q)]).collect())
        .collect();
    let group = FiniteGroup::new(names, table).expect("permutation closure");
    (group, perms)
}

pub fn trivial() -> FiniteGroup {
    FiniteGroup::new(vec!["e".into()], vec![vec![0]]).unwrap()
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let names = (0..n)
        .map(|i| if i == 0 { "e".into() } else { format!("a{i}") })
        .collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::new(names, table).unwrap()
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n <= 1 {
        return trivial();
    }
    let mut tr: Vec<usize> = (0..n).collect();
    tr.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    from_perms(n, &[Perm::new(tr).unwrap(), Perm::new(cycle).unwrap()]).0
}

pub fn alternating(n: usize) -> FiniteGroup {
    if n <= 2 {
        return trivial();
    }
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(2) {
        let mut img: Vec<usize> = (0..n).collect();
        img[i] = i + 1;
        img[i + 1] = i + 2;
        img[i + 2] = i;
        gens.push(Perm::new(img).unwrap());
    }
    from_perms(n, &gens).0
}

pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    from_perms(n, &[Perm::new(rot).unwrap(), Perm::new(refl).unwrap()]).0
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let na = a.order();
    let nb = b.order();
    let idx = |x: usize, y: usize| x * nb + y;
    let mut names = Vec::with_capacity(na * nb);
    for x in 0..na {
        for y in 0..nb {
            names.push(format!("({},{})", a.name_of(x), b.name_of(y)));
        }
    }
    let mut table = vec![vec![0; na * nb]; na * nb];
    for x1 in 0..na {
        for y1 in 0..nb {
            for x2 in 0..na {
                for y2 in 0..nb {
                    table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    FiniteGroup::new(names, table).unwrap()
}

/// The quaternion group of order 8 via its regular-ish permutation model.
pub fn quaternion8() -> FiniteGroup {
    // i and j acting on {1,i,-1,-i,j,k,-j,-k} by left multiplication.
    let i = Perm::new(vec![1, 2, 3, 0, 5, 6, 7, 4]).unwrap();
    let j = Perm::new(vec![4, 7, 6, 5, 2, 1, 0, 3]).unwrap();
    from_perms(8, &[i, j]).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=12 {
            let g = cyclic(n);
            assert_eq!(g.order(), n);
            assert_eq!(g.element_order(if n > 1 { 1 } else { 0 }), n);
        }
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion8().order(), 8);
    }

    #[test]
    fn corrupt_table_detected() {
        let g = cyclic(3);
        let mut table: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| g.mul(a, b)).collect())
            .collect();
        table[1][2] = 1; // should be 0
        let err = FiniteGroup::new(g.element_names().to_vec(), table).unwrap_err();
        assert!(err
            .iter()
            .any(|d| matches!(d, GroupDefect::NonAssociative { .. } | GroupDefect::MissingInverse { .. })));
    }

    #[test]
    fn s3_normal_subgroups() {
        let s3 = symmetric(3);
        let quots = finite_quotients(&s3, &Budget::default()).unwrap();
        let sizes: Vec<usize> = quots.iter().map(|q| q.kernel.order()).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
        let qsizes: Vec<usize> = quots.iter().map(|q| q.quotient.order()).collect();
        assert_eq!(qsizes, vec![6, 2, 1]);
    }

    #[test]
    fn z6_has_four_quotients() {
        let z6 = cyclic(6);
        let quots = finite_quotients(&z6, &Budget::default()).unwrap();
        assert_eq!(quots.len(), 4);
    }

    #[test]
    fn z2_quotients() {
        let z2 = cyclic(2);
        let quots = finite_quotients(&z2, &Budget::default()).unwrap();
        assert_eq!(quots.len(), 2);
        assert_eq!(quots[0].quotient.order(), 2);
        assert_eq!(quots[1].quotient.order(), 1);
    }

    #[test]
    fn quotient_projection_is_hom() {
        let s3 = symmetric(3);
        for q in finite_quotients(&s3, &Budget::default()).unwrap() {
            GroupHom::new(s3.clone(), q.quotient.clone(), q.projection.clone()).unwrap();
        }
    }

    #[test]
    fn kernels_are_normal() {
        let d4 = dihedral(4);
        for q in finite_quotients(&d4, &Budget::default()).unwrap() {
            assert!(is_normal(&d4, &q.kernel.elements));
        }
    }

    #[test]
    fn order_cap_refusal() {
        let big = direct_product(&cyclic(5), &cyclic(5));
        assert!(finite_quotients(&big, &Budget::default()).is_err());
        assert!(finite_quotients(&big, &Budget::unlocked()).is_ok());
    }

    #[test]
    fn hom_enumeration_z4_to_z2() {
        let homs = all_homomorphisms(&cyclic(4), &cyclic(2));
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().any(|h| h.is_surjective()));
    }

    #[test]
    fn isomorphism_search() {
        let a = direct_product(&cyclic(2), &cyclic(3));
        let b = cyclic(6);
        assert!(find_isomorphism(&a, &b).is_some());
        assert!(find_isomorphism(&symmetric(3), &cyclic(6)).is_none());
    }
}
