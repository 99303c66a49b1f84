//! Permutations and permutation groups (base and strong generating set).

use num_bigint::BigInt;
use std::fmt;

/// Largest degree accepted by [`PermutationGroup`].
pub const MAX_DEGREE: usize = 24;

/// A permutation of `{0, …, n-1}` acting on the right: `x^(gh) = (x^g)^h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// `None` unless `images` is a bijection of `{0, …, n-1}`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    /// Product of disjoint or overlapping cycles, applied left to right.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut p = Self::identity(n);
        for c in cycles {
            let mut q = Self::identity(n);
            for (k, &x) in c.iter().enumerate() {
                q.0[x] = c[(k + 1) % c.len()];
            }
            p = p.then(&q);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn pow(&self, k: usize) -> Perm {
        (0..k).fold(Perm::identity(self.degree()), |acc, _| acc.then(self))
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// `transversal[β]` maps the base point to `β`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

/// A permutation group with a base and strong generating set, built by the
/// deterministic Schreier–Sims algorithm.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    pub fn trivial(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Self { degree, generators: vec![], strong: vec![], levels: vec![] }
    }

    pub fn from_generators(degree: usize, gens: &[Perm]) -> Self {
        let mut g = Self::trivial(degree);
        for p in gens {
            g.add_generator(p.clone());
        }
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Generators that enlarged the group when they were added.
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    /// Lengths of the basic orbits.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigInt {
        self.levels.iter().map(|l| BigInt::from(l.orbit.len())).product()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        let (h, j) = self.strip(p.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Adds `p`; returns whether the group grew.
    pub fn add_generator(&mut self, p: Perm) -> bool {
        assert_eq!(p.degree(), self.degree, "degree mismatch");
        if self.contains(&p) {
            return false;
        }
        self.generators.push(p.clone());
        self.insert_strong(p);
        self.complete(self.levels.len().saturating_sub(1));
        true
    }

    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, lvl) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(lvl.point);
            match &lvl.transversal[beta] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    fn insert_strong(&mut self, h: Perm) {
        if self.levels.iter().all(|l| h.apply(l.point) == l.point) {
            let point = (0..self.degree).find(|&x| h.apply(x) != x).expect("nonidentity");
            self.levels.push(Level { point, transversal: vec![], orbit: vec![] });
        }
        self.strong.push(h);
        for i in 0..self.levels.len() {
            self.rebuild_level(i);
        }
    }

    fn level_generators(&self, i: usize) -> Vec<&Perm> {
        let fixed: Vec<usize> = self.levels[..i].iter().map(|l| l.point).collect();
        self.strong.iter().filter(|s| fixed.iter().all(|&b| s.apply(b) == b)).collect()
    }

    fn rebuild_level(&mut self, i: usize) {
        let gens: Vec<Perm> = self.level_generators(i).into_iter().cloned().collect();
        let point = self.levels[i].point;
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[point] = Some(Perm::identity(self.degree));
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            let beta = orbit[k];
            let u = transversal[beta].clone().unwrap();
            for s in &gens {
                let gamma = s.apply(beta);
                if transversal[gamma].is_none() {
                    transversal[gamma] = Some(u.then(s));
                    orbit.push(gamma);
                }
            }
            k += 1;
        }
        self.levels[i].transversal = transversal;
        self.levels[i].orbit = orbit;
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.find_missing(lvl) {
                Some((h, j)) => {
                    self.insert_strong(h);
                    i = j.min(self.levels.len() - 1) as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// A Schreier generator at level `i` that does not strip through the levels below.
    fn find_missing(&self, i: usize) -> Option<(Perm, usize)> {
        let lvl = &self.levels[i];
        for &beta in &lvl.orbit {
            let u = lvl.transversal[beta].as_ref().unwrap();
            for x in self.level_generators(i) {
                let bx = x.apply(beta);
                let ux = lvl.transversal[bx].as_ref().unwrap();
                let schreier = u.then(x).then(&ux.inverse());
                let (h, j) = self.strip(schreier, i + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Exhaustive closure under multiplication.
    fn enumerate(degree: usize, gens: &[Perm]) -> usize {
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut frontier = vec![Perm::identity(degree)];
        seen.insert(Perm::identity(degree));
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn trivial_group() {
        assert_eq!(PermutationGroup::trivial(5).order(), BigInt::from(1));
    }

    #[test]
    fn symmetric_groups() {
        for d in 2..=8 {
            let t = Perm::from_cycles(d, &[&[0, 1]]);
            let c: Vec<usize> = (0..d).collect();
            let g = PermutationGroup::from_generators(d, &[t, Perm::from_cycles(d, &[&c])]);
            let fact: u64 = (1..=d as u64).product();
            assert_eq!(g.order(), BigInt::from(fact));
        }
    }

    #[test]
    fn wreath_of_two_by_two() {
        let gens = [Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[0, 2], &[1, 3]])];
        let g = PermutationGroup::from_generators(4, &gens);
        assert_eq!(g.order(), BigInt::from(8));
        assert_eq!(enumerate(4, &gens), 8);
    }

    #[test]
    fn large_symmetric_group() {
        let c: Vec<usize> = (0..24).collect();
        let g = PermutationGroup::from_generators(24, &[Perm::from_cycles(24, &[&[0, 1]]), Perm::from_cycles(24, &[&c])]);
        let fact: BigInt = (1..=24u64).map(BigInt::from).product();
        assert_eq!(g.order(), fact);
    }

    #[test]
    fn alternating_group() {
        let g = PermutationGroup::from_generators(6, &[
            Perm::from_cycles(6, &[&[0, 1, 2]]),
            Perm::from_cycles(6, &[&[1, 2, 3, 4, 5]]),
        ]);
        assert_eq!(g.order(), BigInt::from(360));
        assert!(g.contains(&Perm::from_cycles(6, &[&[0, 1], &[2, 3]])));
        assert!(!g.contains(&Perm::from_cycles(6, &[&[0, 1]])));
    }

    #[test]
    fn random_groups_match_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let degree = 7;
        for _ in 0..40 {
            // products of two random transpositions keep many groups small
            let gens: Vec<Perm> = (0..2)
                .map(|_| {
                    let mut v: Vec<usize> = (0..degree).collect();
                    for _ in 0..2 {
                        let (a, b) = (rng.random_range(0..degree), rng.random_range(0..degree));
                        v.swap(a, b);
                    }
                    Perm::from_images(v).unwrap()
                })
                .collect();
            let g = PermutationGroup::from_generators(degree, &gens);
            assert_eq!(g.order(), BigInt::from(enumerate(degree, &gens)));
            for p in &gens {
                assert!(g.contains(p));
            }
        }
    }

    #[test]
    fn parity_and_cycles() {
        let p = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]);
        assert!(!p.is_even());
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.then(&p.inverse()), Perm::identity(5));
    }
}
