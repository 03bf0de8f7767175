//! Finite binary relations on dense vertex indices `0..n`.
//!
//! A relation stores, for every vertex, its image as a [`VertexSet`]. Loops are
//! ordinary pairs; a digraph is simply a loopless relation.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Relation {
    /// The relation on `n` vertices with no pairs.
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            rows: vec![VertexSet::empty(n); n],
        }
    }

    /// The identity relation `(V, Δ_V)`.
    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for v in 0..n {
            r.rows[v].insert(v);
        }
        r
    }

    /// `E = V × V`.
    pub fn complete(n: usize) -> Self {
        Relation {
            n,
            rows: vec![VertexSet::full(n); n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut r = Self::empty(n);
        for (u, v) in edges {
            r.add_edge(u, v)?;
        }
        Ok(r)
    }

    /// Builds a relation from explicit image rows. Every row must live in the universe `0..rows.len()`.
    pub fn from_rows(rows: Vec<VertexSet>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.universe() != n) {
            return Err(Error::domain(format!(
                "row {bad} has universe {}, expected {n}",
                rows[bad].universe()
            )));
        }
        Ok(Relation { n, rows })
    }

    /// Adds `(u, v)`; returns whether the pair was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.rows[u].insert(v))
    }

    /// `Φ = (V, E ∪ Δ_V)`.
    pub fn reflexive_closure(&self) -> Relation {
        let mut r = self.clone();
        for v in 0..self.n {
            r.rows[v].insert(v);
        }
        r
    }

    /// The relation with every loop removed.
    pub fn without_loops(&self) -> Relation {
        let mut r = self.clone();
        for v in 0..self.n {
            r.rows[v].remove(v);
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    /// All pairs in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.rows
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.rows[v].contains(v))
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|v| !self.rows[v].contains(v))
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(VertexSet::is_full)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::domain(format!("vertex {v} out of range 0..{}", self.n)))
        }
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() == self.n {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "vertex set over {} vertices used with a relation on {}",
                set.universe(),
                self.n
            )))
        }
    }

    pub(crate) fn require_reflexive(&self, what: &str) -> Result<()> {
        if self.is_reflexive() {
            Ok(())
        } else {
            Err(Error::contract(format!(
                "{what} requires a reflexive relation (Δ_V ⊆ E); use the reflexive closure"
            )))
        }
    }

    /// `Γ(a) = {x : (a, x) ∈ E}`.
    pub fn image(&self, a: usize) -> Result<&VertexSet> {
        self.check_vertex(a)?;
        Ok(&self.rows[a])
    }

    /// `d(x) = |Γ(x)|`.
    pub fn degree(&self, x: usize) -> Result<usize> {
        Ok(self.image(x)?.len())
    }

    /// Number of `y` with `(y, x) ∈ E`.
    pub fn in_degree(&self, x: usize) -> Result<usize> {
        self.check_vertex(x)?;
        Ok(self.rows.iter().filter(|row| row.contains(x)).count())
    }

    /// `Γ(A)`, the union of the images of the members of `A`.
    pub fn image_set(&self, a: &VertexSet) -> Result<VertexSet> {
        self.check_set(a)?;
        Ok(self.image_set_unchecked(a))
    }

    pub(crate) fn image_set_unchecked(&self, a: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for x in a.iter() {
            out.union_with(&self.rows[x]);
        }
        out
    }

    /// `∂(X) = Γ(X) \ X`.
    pub fn boundary(&self, x: &VertexSet) -> Result<VertexSet> {
        Ok(self.image_set(x)?.difference(x))
    }

    /// `Γ⁻ = (V, E⁻)` with `E⁻ = {(x, y) : (y, x) ∈ E}`.
    pub fn reverse(&self) -> Relation {
        let mut r = Relation::empty(self.n);
        for (u, v) in self.edges() {
            r.rows[v].insert(u);
        }
        r
    }

    /// `Γ⁻(x)`, the set of vertices `y` with `(y, x) ∈ E`.
    pub fn preimage(&self, x: usize) -> Result<VertexSet> {
        self.check_vertex(x)?;
        let mut s = VertexSet::empty(self.n);
        for (y, row) in self.rows.iter().enumerate() {
            if row.contains(x) {
                s.insert(y);
            }
        }
        Ok(s)
    }

    /// Binary composition: `(u, w)` iff `(u, v) ∈ self` and `(v, w) ∈ next` for some `v`.
    fn then(&self, next: &Relation) -> Relation {
        Relation {
            n: self.n,
            rows: self.rows.iter().map(|row| next.image_set_unchecked(row)).collect(),
        }
    }

    /// `Γ^k` for `k ≥ 0`; negative `k` gives `(Γ⁻)^{-k}`.
    pub fn power(&self, k: i64) -> Relation {
        if k < 0 {
            return self.reverse().power(-k);
        }
        let mut acc = Relation::identity(self.n);
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    /// `[Γ^0(v), Γ^1(v), ..., Γ^jmax(v)]`, computed by frontier expansion.
    pub fn iterated_image(&self, v: usize, jmax: usize) -> Result<Vec<VertexSet>> {
        self.require_reflexive("iterated image")?;
        self.check_vertex(v)?;
        Ok(self.iterated_image_unchecked(v, jmax))
    }

    /// Frontier expansion without the reflexivity check. For a reflexive
    /// relation `Γ^{j+1}(v) = Γ^j(v) ∪ Γ(frontier)`, where the frontier is
    /// the set of vertices added at step `j`.
    pub(crate) fn iterated_image_unchecked(&self, v: usize, jmax: usize) -> Vec<VertexSet> {
        let mut levels = Vec::with_capacity(jmax + 1);
        let mut current = VertexSet::empty(self.n);
        current.insert(v);
        let mut frontier = current.clone();
        levels.push(current.clone());
        for _ in 0..jmax {
            let grown = self.image_set_unchecked(&frontier);
            frontier = grown.difference(&current);
            current.union_with(&frontier);
            levels.push(current.clone());
        }
        levels
    }

    /// `Γ[W]`, re-indexed to `0..|W|` in increasing order of original index.
    /// The second component maps each new index to the original vertex.
    pub fn restrict(&self, w: &VertexSet) -> Result<(Relation, Vec<usize>)> {
        self.check_set(w)?;
        let map = w.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut r = Relation::empty(map.len());
        for (i, &u) in map.iter().enumerate() {
            for v in self.rows[u].intersection(w).iter() {
                r.rows[i].insert(index[v]);
            }
        }
        Ok((r, map))
    }

    /// Length of a shortest directed cycle, or `None` for an acyclic digraph.
    pub fn girth(&self) -> Result<Option<usize>> {
        if !self.is_loopless() {
            return Err(Error::contract(
                "girth is defined for loopless relations (digraphs); remove the loops first",
            ));
        }
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if let Some(len) = self.shortest_return(s, &mut dist, best) {
                best = Some(best.map_or(len, |b| b.min(len)));
                if len == 2 {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// Length of the shortest nonempty walk `s → s`, abandoning once it
    /// cannot beat `bound`.
    fn shortest_return(&self, s: usize, dist: &mut [usize], bound: Option<usize>) -> Option<usize> {
        dist.fill(usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u];
            if bound.is_some_and(|b| d + 1 >= b) {
                return None;
            }
            for w in self.rows[u].iter() {
                if w == s {
                    return Some(d + 1);
                }
                if dist[w] == usize::MAX {
                    dist[w] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// `Γ_1 ∘ ⋯ ∘ Γ_k`: `(u, v)` iff there is a chain `u = x_0, …, x_k = v`
/// with `(x_{i-1}, x_i) ∈ Γ_i`.
pub fn compose(rels: &[Relation]) -> Result<Relation> {
    let (first, rest) = rels
        .split_first()
        .ok_or_else(|| Error::domain("cannot compose an empty list; use Relation::identity"))?;
    if let Some(bad) = rest.iter().find(|r| r.n != first.n) {
        return Err(Error::domain(format!(
            "composition of relations on {} and {} vertices",
            first.n, bad.n
        )));
    }
    Ok(rest.iter().fold(first.clone(), |acc, r| acc.then(r)))
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}; ", self.n)?;
        for (u, row) in self.rows.iter().enumerate() {
            if u > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{row}")?;
        }
        write!(f, ")")
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn image_examples() {
        assert_eq!(reflexive_cycle(4).image(0).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(Relation::complete(3).image(1).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(circulant(7, &[1, 2], true).image(3).unwrap().to_vec(), vec![3, 4, 5]);
        assert!(matches!(reflexive_cycle(4).image(4), Err(Error::Domain(_))));
    }

    #[test]
    fn image_set_examples() {
        let c4 = reflexive_cycle(4);
        assert!(c4.image_set(&VertexSet::empty(4)).unwrap().is_empty());
        assert_eq!(c4.image_set(&set(4, &[0, 1])).unwrap().to_vec(), vec![0, 1, 2]);
        assert!(c4.image_set(&VertexSet::full(4)).unwrap().is_full());
        assert!(c4.image_set(&VertexSet::empty(5)).is_err());
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(reflexive_cycle(4).boundary(&set(4, &[0, 1])).unwrap().to_vec(), vec![2]);
        assert_eq!(Relation::complete(3).boundary(&set(3, &[0])).unwrap().to_vec(), vec![1, 2]);
        let c7 = circulant(7, &[1, 2], true);
        assert_eq!(c7.boundary(&set(7, &[0, 1])).unwrap().to_vec(), vec![2, 3]);
    }

    #[test]
    fn reverse_examples() {
        let r = Relation::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(r.reverse().edges().collect::<Vec<_>>(), vec![(1, 0)]);
        let sym = Relation::from_edges(3, [(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(sym.reverse(), sym);
        let rev = reflexive_cycle(5).reverse();
        assert_eq!(rev.image(0).unwrap().to_vec(), vec![0, 4]);
        assert_eq!(rev.image(3).unwrap().to_vec(), vec![2, 3]);
    }

    #[test]
    fn compose_examples() {
        let g = circulant(5, &[2], false);
        assert_eq!(compose(&[g.clone(), Relation::identity(5)]).unwrap(), g);

        let a = Relation::from_edges(3, [(0, 1)]).unwrap();
        let b = Relation::from_edges(3, [(1, 2)]).unwrap();
        assert_eq!(compose(&[a, b]).unwrap().edges().collect::<Vec<_>>(), vec![(0, 2)]);

        let c5 = reflexive_cycle(5);
        let sq = compose(&[c5.clone(), c5]).unwrap();
        for i in 0..5 {
            let mut want: Vec<usize> = (0..3).map(|d| (i + d) % 5).collect();
            want.sort();
            assert_eq!(sq.image(i).unwrap().to_vec(), want);
        }
    }

    #[test]
    fn compose_errors() {
        assert!(matches!(compose(&[]), Err(Error::Domain(_))));
        assert!(matches!(
            compose(&[Relation::empty(2), Relation::empty(3)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn power_examples() {
        let c5 = reflexive_cycle(5);
        assert_eq!(c5.power(0), Relation::identity(5));
        assert_eq!(Relation::complete(4).power(0), Relation::identity(4));
        assert_eq!(c5.power(2).image(0).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(c5.power(-1).image(0).unwrap().to_vec(), vec![0, 4]);
    }

    #[test]
    fn iterated_image_examples() {
        let sizes = |r: &Relation, v, j| -> Vec<usize> {
            r.iterated_image(v, j).unwrap().iter().map(VertexSet::len).collect()
        };
        assert_eq!(sizes(&reflexive_cycle(5), 0, 4), vec![1, 2, 3, 4, 5]);
        assert_eq!(sizes(&Relation::complete(3), 0, 2), vec![1, 3, 3]);
        assert_eq!(sizes(&circulant(7, &[1, 2], true), 0, 3), vec![1, 3, 5, 7]);
    }

    #[test]
    fn iterated_image_requires_reflexive() {
        let err = circulant(5, &[1], false).iterated_image(0, 3).unwrap_err();
        match err {
            Error::Contract(msg) => assert!(msg.contains("reflexive")),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn restrict_examples() {
        let (r, map) = reflexive_cycle(4).restrict(&set(4, &[0, 1])).unwrap();
        assert_eq!(map, vec![0, 1]);
        assert_eq!(r.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 1)]);

        let c5 = reflexive_cycle(5);
        let (same, map) = c5.restrict(&VertexSet::full(5)).unwrap();
        assert_eq!(same, c5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);

        let (k2, map) = Relation::complete(4).restrict(&set(4, &[1, 3])).unwrap();
        assert_eq!(k2, Relation::complete(2));
        assert_eq!(map, vec![1, 3]);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(circulant(5, &[1], false).girth().unwrap(), Some(5));
        assert_eq!(Relation::from_edges(2, [(0, 1), (1, 0)]).unwrap().girth().unwrap(), Some(2));
        assert_eq!(circulant(6, &[2, 3], false).girth().unwrap(), Some(2));
        assert_eq!(Relation::from_edges(3, [(0, 1), (1, 2)]).unwrap().girth().unwrap(), None);
        assert!(matches!(reflexive_cycle(3).girth(), Err(Error::Contract(_))));
    }

    #[test]
    fn closure_and_flags() {
        let c = circulant(4, &[1], false);
        assert!(c.is_loopless());
        assert!(!c.is_reflexive());
        let r = c.reflexive_closure();
        assert!(r.is_reflexive());
        assert_eq!(r.without_loops(), c);
        assert_eq!(r.degree(0).unwrap(), 2);
        assert_eq!(r.in_degree(0).unwrap(), 2);
        assert_eq!(r.preimage(0).unwrap().to_vec(), vec![0, 3]);
    }
}
