//! Permutations of `{0..n-1}` in one-line notation.
//!
//! Composition is diagrammatic throughout the crate: `p.then(&q)` is "apply
//! p, then q". Group tables built from permutations use this order, which is
//! the convention that makes the deck-style comparison maps of the other
//! modules literal homomorphisms.

use std::fmt;

/// A permutation of `{0, .., n-1}`; `p[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// Builds a permutation from its one-line notation, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Option<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Diagrammatic composition: first `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Conjugate `self` by `s`: the permutation `s⁻¹ · self · s` in
    /// diagrammatic order, i.e. relabeling points along `s`.
    pub fn conjugate_by(&self, s: &Perm) -> Perm {
        s.inverse().then(self).then(s)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// All permutations of degree `n` in lexicographic order of their
    /// one-line notation; the identity comes first.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            if !next_lex(&mut cur) {
                break;
            }
        }
        out
    }

    /// Builds a permutation of degree `n` from disjoint-cycle notation over
    /// `1..n`, e.g. `(1 2)(3 4)`. The empty string is the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Perm, String> {
        let mut images: Vec<usize> = (0..n).collect();
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "()" {
            return Ok(Perm(images));
        }
        let mut rest = trimmed;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| format!("expected '(' in cycle notation: {text}"))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| format!("unclosed cycle in: {text}"))?
                + open;
            let body = &rest[open + 1..close];
            let pts: Vec<usize> = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| format!("bad point '{t}' in cycle notation"))
                })
                .collect::<Result<_, _>>()?;
            for &p in &pts {
                if p == 0 || p > n {
                    return Err(format!("point {p} out of range 1..{n}"));
                }
            }
            for w in 0..pts.len() {
                let from = pts[w] - 1;
                let to = pts[(w + 1) % pts.len()] - 1;
                if images[from] != from {
                    return Err(format!("point {} repeated in cycles", pts[w]));
                }
                images[from] = to;
            }
            rest = &rest[close + 1..];
            rest = rest.trim_start();
        }
        Perm::new(images).ok_or_else(|| format!("cycles do not describe a permutation: {text}"))
    }

    /// Disjoint-cycle notation over `1..n`; the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i];
            }
            cycles.push(format!("({})", cyc.join(" ")));
        }
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.join("")
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

fn next_lex(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_diagrammatic() {
        // (1 2) then (2 3) sends 1 -> 2 -> 3, so the product is (1 3 ...)-ish:
        // compute by hand: 1->2->3, 2->1->1, 3->3->2, i.e. the 3-cycle (1 3 2).
        let a = Perm::from_cycles(3, "(1 2)").unwrap();
        let b = Perm::from_cycles(3, "(2 3)").unwrap();
        let ab = a.then(&b);
        assert_eq!(ab, Perm::from_cycles(3, "(1 3 2)").unwrap());
    }

    #[test]
    fn all_perms_lexicographic_identity_first() {
        let ps = Perm::all(3);
        assert_eq!(ps.len(), 6);
        assert!(ps[0].is_identity());
        let mut sorted = ps.clone();
        sorted.sort();
        assert_eq!(ps, sorted);
    }

    #[test]
    fn inverse_roundtrip() {
        for p in Perm::all(4) {
            assert!(p.then(&p.inverse()).is_identity());
            assert!(p.inverse().then(&p).is_identity());
        }
    }

    #[test]
    fn cycle_notation_roundtrip() {
        for p in Perm::all(5) {
            let q = Perm::from_cycles(5, &p.cycle_notation()).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0]).is_none());
        assert!(Perm::new(vec![1, 2]).is_none());
    }
}
