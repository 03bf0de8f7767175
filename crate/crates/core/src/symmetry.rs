//! Automorphisms and point-symmetry (vertex-transitivity).
//!
//! The search is a plain backtracker. Vertices are first colored by
//! `(out-degree, in-degree, loop)` and the coloring is refined by neighbour
//! color multisets until stable; automorphisms preserve the refined colors,
//! so they prune candidate images. Vertices are assigned in BFS order so that
//! every vertex after the first has an already-mapped neighbour, which
//! restricts its candidates to the matching neighbourhood of that image.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::relation::Relation;

/// A permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexBijection {
    forward: Vec<usize>,
}

impl VertexBijection {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &v in &forward {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::domain(format!("{forward:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(VertexBijection { forward })
    }

    pub fn identity(n: usize) -> Self {
        VertexBijection { forward: (0..n).collect() }
    }

    /// `x ↦ x + k (mod n)`.
    pub fn rotation(n: usize, k: usize) -> Self {
        VertexBijection { forward: (0..n).map(|x| (x + k) % n).collect() }
    }

    pub fn n(&self) -> usize {
        self.forward.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.forward[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.forward
    }

    /// `x ↦ next(self(x))`.
    pub fn then(&self, next: &VertexBijection) -> VertexBijection {
        assert_eq!(self.n(), next.n());
        VertexBijection { forward: self.forward.iter().map(|&x| next.forward[x]).collect() }
    }

    pub fn inverse(&self) -> VertexBijection {
        let mut inv = vec![0; self.n()];
        for (x, &y) in self.forward.iter().enumerate() {
            inv[y] = x;
        }
        VertexBijection { forward: inv }
    }
}

/// `(x, y) ∈ E ⇔ (f(x), f(y)) ∈ E` for all `x, y`.
pub fn is_automorphism(rel: &Relation, f: &VertexBijection) -> Result<bool> {
    if f.n() != rel.n() {
        return Err(Error::domain(format!(
            "bijection on {} points applied to a relation on {} vertices",
            f.n(),
            rel.n()
        )));
    }
    let n = rel.n();
    Ok((0..n).all(|x| (0..n).all(|y| rel.has_edge(x, y) == rel.has_edge(f.apply(x), f.apply(y)))))
}

fn check_size(rel: &Relation, limits: &Limits) -> Result<()> {
    if rel.n() > limits.symmetry_max_n {
        return Err(Error::Size {
            what: "automorphism search",
            n: rel.n(),
            limit: limits.symmetry_max_n,
            hint: "",
        });
    }
    Ok(())
}

/// Stable refined vertex coloring, canonical for the relation (colors are
/// numbered by sorted signature so isomorphic positions get equal colors).
fn refined_colors(rel: &Relation, rev: &Relation) -> Vec<usize> {
    let n = rel.n();
    let mut colors: Vec<usize> = {
        let sig: Vec<(usize, usize, bool)> = (0..n)
            .map(|v| (rel.rows()[v].len(), rev.rows()[v].len(), rel.has_edge(v, v)))
            .collect();
        renumber(&sig)
    };
    loop {
        let classes = colors.iter().max().map_or(0, |m| m + 1);
        let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut out: Vec<usize> = rel.rows()[v].iter().map(|w| colors[w]).collect();
                let mut inn: Vec<usize> = rev.rows()[v].iter().map(|w| colors[w]).collect();
                out.sort_unstable();
                inn.sort_unstable();
                (colors[v], out, inn)
            })
            .collect();
        let next = renumber(&sig);
        let next_classes = next.iter().max().map_or(0, |m| m + 1);
        colors = next;
        if next_classes == classes {
            return colors;
        }
    }
}

fn renumber<T: Ord + Clone + std::hash::Hash>(sig: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sig.to_vec();
    distinct.sort();
    distinct.dedup();
    let index: HashMap<&T, usize> = distinct.iter().enumerate().map(|(i, s)| (s, i)).collect();
    sig.iter().map(|s| index[s]).collect()
}

#[derive(Clone, Copy)]
enum Anchor {
    None,
    /// Vertex is in `Γ(a)` for the mapped vertex `a`.
    Out(usize),
    /// Vertex is in `Γ⁻(a)`.
    In(usize),
}

struct Search<'a> {
    rel: &'a Relation,
    rev: Relation,
    colors: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(rel: &'a Relation) -> Self {
        let rev = rel.reverse();
        let colors = refined_colors(rel, &rev);
        Search { rel, rev, colors }
    }

    /// BFS order over the underlying undirected graph starting at `start`,
    /// each vertex paired with an earlier neighbour.
    fn order_from(&self, start: usize) -> Vec<(usize, Anchor)> {
        let n = self.rel.n();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let roots = std::iter::once(start).chain((0..n).filter(|&v| v != start));
        for root in roots {
            if placed[root] {
                continue;
            }
            placed[root] = true;
            order.push((root, Anchor::None));
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                for w in self.rel.rows()[a].iter() {
                    if !placed[w] {
                        placed[w] = true;
                        order.push((w, Anchor::Out(a)));
                        queue.push_back(w);
                    }
                }
                for w in self.rev.rows()[a].iter() {
                    if !placed[w] {
                        placed[w] = true;
                        order.push((w, Anchor::In(a)));
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }

    fn consistent(&self, v: usize, image: usize, mapped: &[usize], map: &[usize]) -> bool {
        mapped.iter().all(|&a| {
            let fa = map[a];
            self.rel.has_edge(v, a) == self.rel.has_edge(image, fa)
                && self.rel.has_edge(a, v) == self.rel.has_edge(fa, image)
        })
    }

    /// Enumerates automorphisms `f` with `f(order[0]) ∈ first_images`, calling
    /// `visit` on each until it breaks.
    fn run<F>(&self, order: &[(usize, Anchor)], first_images: &[usize], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.rel.n();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut mapped = Vec::with_capacity(n);
        for &img in first_images {
            let v = order[0].0;
            if self.colors[v] != self.colors[img] {
                continue;
            }
            map[v] = img;
            used[img] = true;
            mapped.push(v);
            self.extend(order, 1, &mut map, &mut used, &mut mapped, visit)?;
            mapped.pop();
            used[img] = false;
            map[v] = usize::MAX;
        }
        ControlFlow::Continue(())
    }

    fn extend<F>(
        &self,
        order: &[(usize, Anchor)],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        mapped: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == order.len() {
            return visit(map);
        }
        let (v, anchor) = order[depth];
        let candidates: Vec<usize> = match anchor {
            Anchor::Out(a) => self.rel.rows()[map[a]].to_vec(),
            Anchor::In(a) => self.rev.rows()[map[a]].to_vec(),
            Anchor::None => (0..self.rel.n()).collect(),
        };
        for img in candidates {
            if used[img] || self.colors[img] != self.colors[v] || !self.consistent(v, img, mapped, map) {
                continue;
            }
            map[v] = img;
            used[img] = true;
            mapped.push(v);
            let flow = self.extend(order, depth + 1, map, used, mapped, visit);
            mapped.pop();
            used[img] = false;
            map[v] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn transporter(&self, x: usize, y: usize) -> Option<VertexBijection> {
        let order = self.order_from(x);
        let mut found = None;
        let _ = self.run(&order, &[y], &mut |map| {
            found = Some(VertexBijection { forward: map.to_vec() });
            ControlFlow::Break(())
        });
        found
    }
}

/// Some automorphism `f` with `f(x) = y`, or `None` if there is none.
pub fn transporter(rel: &Relation, x: usize, y: usize) -> Result<Option<VertexBijection>> {
    transporter_with(rel, x, y, &Limits::default())
}

pub fn transporter_with(rel: &Relation, x: usize, y: usize, limits: &Limits) -> Result<Option<VertexBijection>> {
    rel.check_vertex(x)?;
    rel.check_vertex(y)?;
    check_size(rel, limits)?;
    Ok(Search::new(rel).transporter(x, y))
}

/// Every automorphism of `rel`. Exponential in general; meant for small
/// relations and tests.
pub fn all_automorphisms(rel: &Relation, limits: &Limits) -> Result<Vec<VertexBijection>> {
    check_size(rel, limits)?;
    if rel.n() == 0 {
        return Ok(vec![VertexBijection::identity(0)]);
    }
    let search = Search::new(rel);
    let order = search.order_from(0);
    let firsts: Vec<usize> = (0..rel.n()).collect();
    let mut all = Vec::new();
    let _ = search.run(&order, &firsts, &mut |map| {
        all.push(VertexBijection { forward: map.to_vec() });
        ControlFlow::Continue(())
    });
    Ok(all)
}

/// Whether every vertex can be carried to every other by an automorphism.
pub fn is_point_symmetric(rel: &Relation) -> Result<bool> {
    is_point_symmetric_with(rel, &Limits::default())
}

/// Certifies transitivity from vertex 0: transporters `0 → y` are searched
/// only for vertices `y` not yet in the orbit generated by the ones found.
pub fn is_point_symmetric_with(rel: &Relation, limits: &Limits) -> Result<bool> {
    check_size(rel, limits)?;
    let n = rel.n();
    if n <= 1 {
        return Ok(true);
    }
    let out0 = rel.rows()[0].len();
    if rel.rows().iter().any(|r| r.len() != out0) {
        return Ok(false);
    }
    let rev = rel.reverse();
    let in0 = rev.rows()[0].len();
    if rev.rows().iter().any(|r| r.len() != in0) {
        return Ok(false);
    }
    let search = Search::new(rel);
    if search.colors.iter().any(|&c| c != search.colors[0]) {
        return Ok(false);
    }
    let mut generators: Vec<VertexBijection> = Vec::new();
    let mut in_orbit = vec![false; n];
    in_orbit[0] = true;
    for y in 1..n {
        if in_orbit[y] {
            continue;
        }
        let Some(f) = search.transporter(0, y) else {
            return Ok(false);
        };
        generators.push(f);
        // close the orbit of 0 under the generators found so far
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| in_orbit[v]).collect();
        while let Some(v) = queue.pop_front() {
            for g in &generators {
                let w = g.apply(v);
                if !in_orbit[w] {
                    in_orbit[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(true)
}

/// Checks that `Γ^i` is point-symmetric for every `0 ≤ i ≤ imax`.
pub fn check_power_symmetry(rel: &Relation, imax: usize) -> Result<bool> {
    check_power_symmetry_with(rel, imax, &Limits::default())
}

pub fn check_power_symmetry_with(rel: &Relation, imax: usize, limits: &Limits) -> Result<bool> {
    if !is_point_symmetric_with(rel, limits)? {
        return Err(Error::contract("power symmetry check needs a point-symmetric relation"));
    }
    let mut power = Relation::identity(rel.n());
    for i in 0..=imax {
        if i > 0 {
            power = crate::relation::compose(&[power, rel.clone()])?;
        }
        if !is_point_symmetric_with(&power, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::fixtures::{circulant, reflexive_cycle};
    use itertools::Itertools;

    fn reflexive_path(n: usize) -> Relation {
        Relation::from_edges(n, (0..n).map(|i| (i, i)).chain((1..n).map(|i| (i - 1, i)))).unwrap()
    }

    #[test]
    fn bijection_validation() {
        assert!(VertexBijection::new(vec![1, 0, 2]).is_ok());
        assert!(VertexBijection::new(vec![1, 1, 2]).is_err());
        assert!(VertexBijection::new(vec![0, 3]).is_err());
        let r = VertexBijection::rotation(5, 2);
        assert_eq!(r.then(&r.inverse()), VertexBijection::identity(5));
    }

    #[test]
    fn automorphism_examples() {
        let c5 = reflexive_cycle(5);
        assert!(is_automorphism(&c5, &VertexBijection::identity(5)).unwrap());
        assert!(is_automorphism(&c5, &VertexBijection::rotation(5, 1)).unwrap());
        let arc = Relation::from_edges(2, [(0, 0), (1, 1), (0, 1)]).unwrap();
        assert!(!is_automorphism(&arc, &VertexBijection::new(vec![1, 0]).unwrap()).unwrap());
        assert!(is_automorphism(&arc, &VertexBijection::identity(3)).is_err());
    }

    #[test]
    fn transporter_examples() {
        let c5 = reflexive_cycle(5);
        let f = transporter(&c5, 0, 3).unwrap().unwrap();
        assert_eq!(f, VertexBijection::rotation(5, 3));

        assert_eq!(transporter(&reflexive_path(3), 0, 2).unwrap(), None);

        let c6 = circulant(6, &[2, 3], true);
        let f = transporter(&c6, 1, 4).unwrap().unwrap();
        assert_eq!(f.apply(1), 4);
        assert!(is_automorphism(&c6, &f).unwrap());
        assert_eq!(f, VertexBijection::rotation(6, 3));
    }

    #[test]
    fn transporter_respects_limit() {
        let big = reflexive_cycle(65);
        assert!(matches!(transporter(&big, 0, 1), Err(Error::Size { .. })));
        let limits = Limits { symmetry_max_n: 100, ..Limits::default() };
        assert!(transporter_with(&big, 0, 1, &limits).unwrap().is_some());
    }

    #[test]
    fn point_symmetry_examples() {
        for n in 1..8 {
            assert!(is_point_symmetric(&reflexive_cycle(n)).unwrap());
        }
        assert!(!is_point_symmetric(&reflexive_path(3)).unwrap());
        assert!(is_point_symmetric(&circulant(12, &[1, 5], true)).unwrap());
        assert!(is_point_symmetric(&Relation::empty(4)).unwrap());
    }

    #[test]
    fn regular_but_not_transitive() {
        // bidirected C3 + C4: 2-regular, refinement cannot split it, no automorphism crosses components
        let mut edges = Vec::new();
        for (i, j) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)] {
            edges.extend([(i, j), (j, i)]);
        }
        let r = Relation::from_edges(7, edges).unwrap();
        assert_eq!(transporter(&r, 0, 3).unwrap(), None);
        assert!(transporter(&r, 3, 5).unwrap().is_some());
        assert!(!is_point_symmetric(&r).unwrap());
    }

    #[test]
    fn brute_force_agreement_small() {
        // every relation on 3 vertices: transporter existence vs permutation scan
        for code in 0u32..(1 << 9) {
            let rel = Relation::from_edges(3, (0..9).filter(|b| code >> b & 1 == 1).map(|b| (b / 3, b % 3))).unwrap();
            let perms: Vec<VertexBijection> = (0..3)
                .permutations(3)
                .map(|p| VertexBijection::new(p).unwrap())
                .filter(|f| is_automorphism(&rel, f).unwrap())
                .collect();
            for x in 0..3 {
                for y in 0..3 {
                    let expect = perms.iter().any(|f| f.apply(x) == y);
                    let got = transporter(&rel, x, y).unwrap();
                    assert_eq!(got.is_some(), expect, "code {code} x {x} y {y}");
                    if let Some(f) = got {
                        assert!(is_automorphism(&rel, &f).unwrap());
                    }
                }
            }
            let transitive = (0..3).all(|y| perms.iter().any(|f| f.apply(0) == y));
            assert_eq!(is_point_symmetric(&rel).unwrap(), transitive, "code {code}");
            let mut all = all_automorphisms(&rel, &Limits::default()).unwrap();
            let mut want = perms.clone();
            all.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
            want.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
            assert_eq!(all, want);
        }
    }

    #[test]
    fn power_symmetry_examples() {
        assert!(check_power_symmetry(&reflexive_cycle(5), 3).unwrap());
        assert!(check_power_symmetry(&Relation::complete(3), 2).unwrap());
        assert!(check_power_symmetry(&circulant(7, &[1, 2], true), 4).unwrap());
        assert!(matches!(
            check_power_symmetry(&reflexive_path(3), 1),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn reverse_preserves_point_symmetry() {
        let rels = [reflexive_cycle(6), reflexive_path(4), circulant(8, &[1, 3], false)];
        for r in &rels {
            assert_eq!(
                is_point_symmetric(r).unwrap(),
                is_point_symmetric(&r.reverse()).unwrap()
            );
        }
    }
}
