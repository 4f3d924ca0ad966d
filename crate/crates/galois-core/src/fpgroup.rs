//! Finitely presented groups and the brute-force monodromy oracle.
//!
//! Presentations are the output language for the fundamental-group
//! computations elsewhere in the crate. Group-theoretic questions about them
//! are answered only by exhaustive enumeration of actions on small finite
//! sets, guarded by budgets; "same group" always means "same abelianization
//! and same action spectrum up to a stated degree", never a decision
//! procedure.

use crate::budget::{Budget, BudgetError};
use crate::perm::Perm;
use std::collections::BTreeSet;
use thiserror::Error;

/// A word in free-group letters `(generator, ±1)`, freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<(usize, i8)>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<(usize, i8)>) -> Word {
        free_reduce(&Word(letters))
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![(g, 1)])
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        free_reduce(&Word(letters))
    }

    /// Renders against generator names, e.g. `a b^-1`; empty word is `1`.
    pub fn display(&self, gens: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    gens[g].clone()
                } else {
                    format!("{}^-1", gens[g])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace-separated tokens `gen` or `gen^k` (k any integer).
    pub fn parse(gens: &[String], text: &str) -> Result<Word, String> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>().map_err(|_| format!("bad exponent in '{tok}'"))?,
                ),
                None => (tok, 1),
            };
            let g = gens
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| format!("unknown generator '{name}'"))?;
            let sign: i8 = if exp >= 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((g, sign));
            }
        }
        Ok(Word::from_letters(letters))
    }
}

/// Cancels adjacent inverse pairs with a stack; one pass fully reduces.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<(usize, i8)> = Vec::with_capacity(w.0.len());
    for &(g, e) in &w.0 {
        if let Some(&(tg, te)) = stack.last() {
            if tg == g && te == -e {
                stack.pop();
                continue;
            }
        }
        stack.push((g, e));
    }
    Word(stack)
}

/// Generators plus relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate generator name '{0}'")]
    DuplicateGenerator(String),
    #[error("relator uses unknown generator index {0}")]
    GeneratorRange(usize),
    #[error("unknown generator in word")]
    UnknownGenerator,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let relators: Vec<Word> = relators.iter().map(free_reduce).collect();
        for r in &relators {
            for &(g, _) in r.letters() {
                if g >= generators.len() {
                    return Err(PresentationError::GeneratorRange(g));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn free(rank: usize) -> Presentation {
        let generators = (0..rank).map(|i| format!("x{i}")).collect();
        Presentation {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The multiplication-table presentation of a finite group: one
    /// generator per non-identity element, one relator `x·y·(xy)⁻¹` per pair
    /// (the identity reads as the empty word).
    pub fn of_group_table(g: &crate::group::FiniteGroup) -> Presentation {
        let n = g.order();
        let generators: Vec<String> = (1..n).map(|i| g.name_of(i).to_string()).collect();
        let gen_word = |x: usize| -> Word {
            if x == 0 {
                Word::empty()
            } else {
                Word::gen(x - 1)
            }
        };
        let mut relators = Vec::new();
        for x in 1..n {
            for y in 1..n {
                let w = gen_word(x)
                    .concat(&gen_word(y))
                    .concat(&gen_word(g.mul(x, y)).inverse());
                if !w.is_empty() {
                    relators.push(w);
                }
            }
        }
        Presentation::new(generators, relators).expect("table presentation")
    }
}

/// An action of a presentation on `{1..degree}`: a permutation per
/// generator, under which every relator evaluates to the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteAction {
    pub degree: usize,
    pub images: Vec<Perm>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ActionDefect {
    #[error("wrong number of generator images")]
    Shape,
    #[error("relator {relator} does not evaluate to the identity")]
    RelatorBroken { relator: usize },
}

impl FiniteAction {
    pub fn new(
        p: &Presentation,
        degree: usize,
        images: Vec<Perm>,
    ) -> Result<Self, ActionDefect> {
        if images.len() != p.rank() || images.iter().any(|q| q.degree() != degree) {
            return Err(ActionDefect::Shape);
        }
        let action = FiniteAction { degree, images };
        for (i, r) in p.relators.iter().enumerate() {
            if !evaluate(&action, r).is_identity() {
                return Err(ActionDefect::RelatorBroken { relator: i });
            }
        }
        Ok(action)
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return false;
        }
        let mut seen = vec![false; self.degree];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(x) = queue.pop() {
            for p in &self.images {
                for y in [p.apply(x), p.inverse().apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Orbit partition of the underlying point set, least-point blocks first.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut blocks = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut block = Vec::new();
            let mut queue = vec![start];
            seen[start] = true;
            while let Some(x) = queue.pop() {
                block.push(x);
                for p in &self.images {
                    for y in [p.apply(x), p.inverse().apply(x)] {
                        if !seen[y] {
                            seen[y] = true;
                            queue.push(y);
                        }
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// The lexicographically least simultaneous conjugate of the image
    /// tuple; two actions are isomorphic iff their canonical forms agree.
    pub fn canonical_form(&self) -> FiniteAction {
        let mut best: Option<Vec<Perm>> = None;
        for s in Perm::all(self.degree) {
            let conj: Vec<Perm> = self.images.iter().map(|p| p.conjugate_by(&s)).collect();
            let key: Vec<usize> = conj.iter().flat_map(|p| p.images().to_vec()).collect();
            let better = match &best {
                None => true,
                Some(b) => {
                    let bkey: Vec<usize> = b.iter().flat_map(|p| p.images().to_vec()).collect();
                    key < bkey
                }
            };
            if better {
                best = Some(conj);
            }
        }
        FiniteAction {
            degree: self.degree,
            images: best.unwrap_or_default(),
        }
    }
}

/// Diagrammatic evaluation: the product of the generator images read left
/// to right along the word.
pub fn evaluate(action: &FiniteAction, w: &Word) -> Perm {
    let mut acc = Perm::identity(action.degree);
    for &(g, e) in w.letters() {
        let p = if e == 1 {
            action.images[g].clone()
        } else {
            action.images[g].inverse()
        };
        acc = acc.then(&p);
    }
    acc
}

/// All actions of `p` on `{1..degree}` in lexicographic order of the image
/// tuple, each flagged transitive or not.
///
/// The search assigns generator images depth-first and rejects a prefix as
/// soon as some relator supported on the assigned generators fails, so
/// presentations with many generators but strong relators stay tractable.
/// The budget caps the number of visited search nodes; exceeding it is an
/// error, never a truncation.
pub fn enumerate_actions(
    p: &Presentation,
    degree: usize,
    budget: &Budget,
) -> Result<Vec<(FiniteAction, bool)>, BudgetError> {
    budget.check_degree(degree)?;
    budget.check_generators(p.rank())?;
    let perms = Perm::all(degree);
    // relators indexed by the largest generator they mention
    let mut by_max: Vec<Vec<&Word>> = vec![Vec::new(); p.rank()];
    for r in &p.relators {
        if let Some(m) = r.letters().iter().map(|&(g, _)| g).max() {
            by_max[m].push(r);
        }
    }
    let mut out = Vec::new();
    let mut images: Vec<Perm> = Vec::with_capacity(p.rank());
    let mut nodes = 0u64;
    search_actions(
        p, degree, &perms, &by_max, &mut images, &mut nodes, budget, &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_actions(
    p: &Presentation,
    degree: usize,
    perms: &[Perm],
    by_max: &[Vec<&Word>],
    images: &mut Vec<Perm>,
    nodes: &mut u64,
    budget: &Budget,
    out: &mut Vec<(FiniteAction, bool)>,
) -> Result<(), BudgetError> {
    let k = images.len();
    if k == p.rank() {
        let action = FiniteAction {
            degree,
            images: images.clone(),
        };
        let transitive = action.is_transitive();
        out.push((action, transitive));
        return Ok(());
    }
    for q in perms {
        *nodes += 1;
        budget.check_tuples(*nodes)?;
        images.push(q.clone());
        if by_max[k].iter().all(|r| evaluate_prefix(images, degree, r)) {
            search_actions(p, degree, perms, by_max, images, nodes, budget, out)?;
        }
        images.pop();
    }
    Ok(())
}

fn evaluate_prefix(images: &[Perm], degree: usize, w: &Word) -> bool {
    let mut acc = Perm::identity(degree);
    for &(g, e) in w.letters() {
        let p = if e == 1 {
            images[g].clone()
        } else {
            images[g].inverse()
        };
        acc = acc.then(&p);
    }
    acc.is_identity()
}

/// Transitive actions up to simultaneous conjugacy, as canonical forms in
/// ascending order.
pub fn transitive_classes(
    p: &Presentation,
    degree: usize,
    budget: &Budget,
) -> Result<Vec<FiniteAction>, BudgetError> {
    let mut classes = BTreeSet::new();
    for (action, transitive) in enumerate_actions(p, degree, budget)? {
        if transitive {
            classes.insert(action.canonical_form());
        }
    }
    Ok(classes.into_iter().collect())
}

/// Per-degree counts of all actions and of transitive actions (labeled).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    /// `per_degree[d-1]` = (all actions, transitive actions) at degree d.
    pub per_degree: Vec<(u64, u64)>,
}

pub fn quotient_spectrum(
    p: &Presentation,
    max_degree: usize,
    budget: &Budget,
) -> Result<Spectrum, BudgetError> {
    let mut per_degree = Vec::with_capacity(max_degree);
    for d in 1..=max_degree {
        let actions = enumerate_actions(p, d, budget)?;
        let all = actions.len() as u64;
        let transitive = actions.iter().filter(|(_, t)| *t).count() as u64;
        per_degree.push((all, transitive));
    }
    Ok(Spectrum { per_degree })
}

/// The action spectrum of a concrete finite group, counted through
/// homomorphisms into symmetric groups. Agrees with [`quotient_spectrum`]
/// of the multiplication-table presentation but scales to groups whose
/// table presentations have too many generators to enumerate tuple-wise.
pub fn group_spectrum(g: &crate::group::FiniteGroup, max_degree: usize) -> Spectrum {
    let mut per_degree = Vec::with_capacity(max_degree);
    for d in 1..=max_degree {
        let (sym, sym_perms) = symmetric_with_perms(d);
        let homs = crate::group::all_homomorphisms(g, &sym);
        let all = homs.len() as u64;
        let transitive = homs
            .iter()
            .filter(|h| {
                let images: Vec<&Perm> = h.map.iter().map(|&e| &sym_perms[e]).collect();
                let mut seen = vec![false; d];
                let mut queue = vec![0usize];
                seen[0] = true;
                while let Some(x) = queue.pop() {
                    for p in &images {
                        let y = p.apply(x);
                        if !seen[y] {
                            seen[y] = true;
                            queue.push(y);
                        }
                    }
                }
                seen.into_iter().all(|s| s)
            })
            .count() as u64;
        per_degree.push((all, transitive));
    }
    Spectrum { per_degree }
}

fn symmetric_with_perms(d: usize) -> (crate::group::FiniteGroup, Vec<Perm>) {
    if d <= 1 {
        return (crate::group::trivial(), vec![Perm::identity(d)]);
    }
    let mut tr: Vec<usize> = (0..d).collect();
    tr.swap(0, 1);
    let cycle: Vec<usize> = (0..d).map(|i| (i + 1) % d).collect();
    crate::group::from_perms(d, &[Perm::new(tr).unwrap(), Perm::new(cycle).unwrap()])
}

// --- abelianization -----------------------------------------------------------

/// Free rank and torsion multiset of the abelianized presentation, via the
/// Smith normal form of the relator exponent matrix.
pub fn abelianization(p: &Presentation) -> (usize, Vec<u64>) {
    let rows = p.relators.len();
    let cols = p.rank();
    let mut m = vec![vec![0i64; cols]; rows];
    for (i, r) in p.relators.iter().enumerate() {
        for &(g, e) in r.letters() {
            m[i][g] += e as i64;
        }
    }
    let diag = smith_diagonal(m, rows, cols);
    let nonzero = diag.iter().filter(|&&d| d != 0).count();
    let mut torsion: Vec<u64> = diag
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    torsion.sort_unstable();
    (cols - nonzero, torsion)
}

/// Diagonal of the Smith normal form, entries nonnegative with each
/// dividing the next.
fn smith_diagonal(mut m: Vec<Vec<i64>>, rows: usize, cols: usize) -> Vec<i64> {
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // find the entry of least nonzero magnitude in the working corner
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        if m[k][k] < 0 {
            for j in 0..cols {
                m[k][j] = -m[k][j];
            }
        }
        // clear the pivot row and column
        let mut dirty = false;
        for i in k + 1..rows {
            let q = m[i][k] / m[k][k];
            if q != 0 {
                for j in 0..cols {
                    m[i][j] -= q * m[k][j];
                }
            }
            if m[i][k] != 0 {
                dirty = true;
            }
        }
        for j in k + 1..cols {
            let q = m[k][j] / m[k][k];
            if q != 0 {
                for i in 0..rows {
                    m[i][j] -= q * m[i][k];
                }
            }
            if m[k][j] != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue; // remainders left; pick a new pivot in the same corner
        }
        // enforce divisibility of the remaining block
        let mut fixed = true;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if m[i][j] % m[k][k] != 0 {
                    for jj in 0..cols {
                        let add = m[i][jj];
                        m[k][jj] += add;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            diag.push(m[k][k]);
            k += 1;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    fn w(p: &Presentation, text: &str) -> Word {
        Word::parse(&p.generators, text).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let p = Presentation::free(2);
        let (a, b) = (0usize, 1usize);
        assert!(Word::from_letters(vec![(a, 1), (a, -1)]).is_empty());
        assert_eq!(
            Word::from_letters(vec![(a, 1), (b, 1), (b, -1), (a, 1)]),
            Word::from_letters(vec![(a, 1), (a, 1)])
        );
        assert_eq!(
            Word::from_letters(vec![(a, -1), (a, 1), (a, 1)]),
            Word::gen(a)
        );
        // idempotent
        let word = w(&p, "x0 x1 x1^-1 x0");
        assert_eq!(free_reduce(&word), word);
    }

    #[test]
    fn evaluate_examples() {
        let p = Presentation::free(2);
        let act = FiniteAction::new(
            &p,
            3,
            vec![
                Perm::from_cycles(3, "(1 2)").unwrap(),
                Perm::from_cycles(3, "(2 3)").unwrap(),
            ],
        )
        .unwrap();
        assert!(evaluate(&act, &Word::empty()).is_identity());
        assert_eq!(
            evaluate(&act, &w(&p, "x0")),
            Perm::from_cycles(3, "(1 2)").unwrap()
        );
        // a b a^-1 with a=(1 2), b=(2 3) gives (1 3)
        assert_eq!(
            evaluate(&act, &w(&p, "x0 x1 x0^-1")),
            Perm::from_cycles(3, "(1 3)").unwrap()
        );
    }

    #[test]
    fn enumerate_examples() {
        let budget = Budget::default();
        // <a | a^2> at degree 2: two actions, one transitive
        let p = Presentation::new(
            vec!["a".into()],
            vec![Word::from_letters(vec![(0, 1), (0, 1)])],
        )
        .unwrap();
        let acts = enumerate_actions(&p, 2, &budget).unwrap();
        assert_eq!(acts.len(), 2);
        assert_eq!(acts.iter().filter(|(_, t)| *t).count(), 1);
        // free of rank 2 at degree 2: 4 actions, 3 transitive
        let f2 = Presentation::free(2);
        let acts = enumerate_actions(&f2, 2, &budget).unwrap();
        assert_eq!(acts.len(), 4);
        assert_eq!(acts.iter().filter(|(_, t)| *t).count(), 3);
        // <a | a> at degree 3: only the identity
        let killed = Presentation::new(vec!["a".into()], vec![Word::gen(0)]).unwrap();
        let acts = enumerate_actions(&killed, 3, &budget).unwrap();
        assert_eq!(acts.len(), 1);
        assert!(acts[0].0.images[0].is_identity());
    }

    /// Independent rejection-sampling re-check of the enumeration, per the
    /// module's stated invariant.
    #[test]
    fn enumeration_matches_rejection_sampling() {
        use rand::{Rng, SeedableRng};
        let budget = Budget::default();
        let instances = [
            Presentation::free(2),
            Presentation::new(
                vec!["a".into(), "b".into()],
                vec![Word::from_letters(vec![(0, 1); 3])],
            )
            .unwrap(),
            Presentation::new(
                vec!["a".into()],
                vec![Word::from_letters(vec![(0, 1); 4])],
            )
            .unwrap(),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in &instances {
            let degree = 3;
            let listed: BTreeSet<Vec<Perm>> = enumerate_actions(p, degree, &budget)
                .unwrap()
                .into_iter()
                .map(|(a, _)| a.images)
                .collect();
            let perms = Perm::all(degree);
            for _ in 0..200 {
                let images: Vec<Perm> = (0..p.rank())
                    .map(|_| perms[rng.gen_range(0..perms.len())].clone())
                    .collect();
                let candidate = FiniteAction {
                    degree,
                    images: images.clone(),
                };
                let satisfies = p
                    .relators
                    .iter()
                    .all(|r| evaluate(&candidate, r).is_identity());
                assert_eq!(satisfies, listed.contains(&images));
            }
        }
    }

    #[test]
    fn budget_refusals() {
        let f3 = Presentation::free(3);
        assert!(matches!(
            enumerate_actions(&f3, 2, &Budget::default()),
            Err(BudgetError::Exceeded { .. })
        ));
        assert!(enumerate_actions(&f3, 2, &Budget::with_generators(3)).is_ok());
        let f1 = Presentation::free(1);
        assert!(enumerate_actions(&f1, 7, &Budget::default()).is_err());
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianization(&Presentation::free(2)), (2, vec![]));
        let z2 = Presentation::new(
            vec!["a".into()],
            vec![Word::from_letters(vec![(0, 1), (0, 1)])],
        )
        .unwrap();
        assert_eq!(abelianization(&z2), (0, vec![2]));
        // Klein bottle <a,b | a b a b^-1>: rank 1, torsion {2}
        let kb = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word::from_letters(vec![(0, 1), (1, 1), (0, 1), (1, -1)])],
        )
        .unwrap();
        assert_eq!(abelianization(&kb), (1, vec![2]));
    }

    #[test]
    fn abelianization_matches_direct_computation() {
        // free groups of rank ≤ 3
        for r in 0..=3 {
            assert_eq!(abelianization(&Presentation::free(r)), (r, vec![]));
        }
        // cyclic groups ≤ 12 via single-relator presentations
        for n in 2..=12 {
            let p = Presentation::new(
                vec!["a".into()],
                vec![Word::from_letters(vec![(0, 1); n])],
            )
            .unwrap();
            assert_eq!(abelianization(&p), (0, vec![n as u64]));
        }
        // and via full multiplication-table presentations
        for n in 2..=6 {
            let p = Presentation::of_group_table(&cyclic(n));
            assert_eq!(abelianization(&p), (0, vec![n as u64]));
        }
    }

    #[test]
    fn spectrum_examples() {
        let budget = Budget::default();
        let z = Presentation::free(1);
        let s = quotient_spectrum(&z, 3, &budget).unwrap();
        assert_eq!(s.per_degree, vec![(1, 1), (2, 1), (6, 2)]);
        let z2 = Presentation::new(
            vec!["a".into()],
            vec![Word::from_letters(vec![(0, 1), (0, 1)])],
        )
        .unwrap();
        let s = quotient_spectrum(&z2, 2, &budget).unwrap();
        assert_eq!(s.per_degree, vec![(1, 1), (2, 1)]);
        let triv = Presentation::new(vec![], vec![]).unwrap();
        let s = quotient_spectrum(&triv, 4, &budget).unwrap();
        assert_eq!(s.per_degree, vec![(1, 1), (1, 0), (1, 0), (1, 0)]);
    }

    #[test]
    fn spectrum_invariant_under_renaming_and_reduction() {
        let budget = Budget::default();
        let p1 = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word::from_letters(vec![(0, 1), (0, 1), (0, 1)])],
        )
        .unwrap();
        // same presentation with renamed, reordered generators and an
        // unreduced relator spelling
        let p2 = Presentation::new(
            vec!["u".into(), "v".into()],
            vec![Word::from_letters(vec![
                (1, 1),
                (0, 1),
                (0, -1),
                (1, 1),
                (1, 1),
            ])],
        )
        .unwrap();
        assert_eq!(
            quotient_spectrum(&p1, 3, &budget).unwrap(),
            quotient_spectrum(&p2, 3, &budget).unwrap()
        );
        assert_eq!(abelianization(&p1), abelianization(&p2));
    }

    #[test]
    fn transitive_classes_dedupe() {
        let budget = Budget::default();
        let z = Presentation::free(1);
        // at degree 3 the two 3-cycles are conjugate: one class
        assert_eq!(transitive_classes(&z, 3, &budget).unwrap().len(), 1);
        let f2 = Presentation::free(2);
        assert_eq!(transitive_classes(&f2, 2, &budget).unwrap().len(), 3);
    }

    #[test]
    fn group_spectrum_matches_presentation_spectrum() {
        let budget = Budget::with_generators(6);
        for g in [cyclic(2), cyclic(4), crate::group::symmetric(3)] {
            let p = Presentation::of_group_table(&g);
            assert_eq!(
                group_spectrum(&g, 3),
                quotient_spectrum(&p, 3, &budget).unwrap()
            );
        }
    }

    #[test]
    fn table_presentation_of_s3_has_s3_invariants() {
        let s3 = crate::group::symmetric(3);
        let p = Presentation::of_group_table(&s3);
        assert_eq!(abelianization(&p), (0, vec![2]));
        let spectrum = quotient_spectrum(&p, 3, &Budget::with_generators(5)).unwrap();
        // degree-3 actions of S3: the trivial one, 3 through the sign, and
        // the 6 isomorphisms onto Sym(3); only the last are transitive
        assert_eq!(spectrum.per_degree[0], (1, 1));
        assert_eq!(spectrum.per_degree[2], (10, 6));
    }
}
