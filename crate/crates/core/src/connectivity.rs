//! Connectivity of reflexive relations.
//!
//! `κ(Γ) = |V| - 1` when `E = V × V`, and otherwise the minimum of `|∂(X)|`
//! over nonempty `X` with `Γ(X) ≠ V`. Sets achieving the minimum are
//! fragments; fragments of minimum cardinality are atoms.
//!
//! [`kappa_bruteforce`] transcribes the definition as a subset scan and is
//! the reference semantics. [`kappa_maxflow`] reaches the same value through
//! vertex-disjoint path counting and scales to larger relations.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::relation::Relation;
use crate::set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    BruteForce,
    MaxFlow,
    Definition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub kappa: usize,
    /// A fragment achieving `kappa`; absent for the complete relation.
    pub witness_fragment: Option<VertexSet>,
    /// `a(Γ)` when it was determined.
    pub atom_size: Option<usize>,
    pub complete: bool,
    pub algorithm: Algorithm,
}

impl ConnectivityReport {
    fn complete(n: usize) -> Self {
        ConnectivityReport {
            kappa: n.saturating_sub(1),
            witness_fragment: None,
            atom_size: None,
            complete: true,
            algorithm: Algorithm::Definition,
        }
    }
}

/// A set achieving the minimum boundary size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub members: VertexSet,
}

impl Fragment {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Checks the fragment conditions against `rel` and its connectivity `kappa`.
    pub fn is_valid_for(&self, rel: &Relation, kappa: usize) -> bool {
        let Ok(image) = rel.image_set(&self.members) else {
            return false;
        };
        !self.members.is_empty() && !image.is_full() && image.difference(&self.members).len() == kappa
    }
}

/// Atoms of a relation together with its connectivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomReport {
    pub kappa: usize,
    /// `a(Γ)`.
    pub atom_size: usize,
    /// All atoms, in lexicographic order of their sorted members.
    pub atoms: Vec<Fragment>,
}

impl AtomReport {
    pub fn pairwise_disjoint(&self) -> bool {
        self.atoms.iter().enumerate().all(|(i, a)| {
            self.atoms[i + 1..]
                .iter()
                .all(|b| a.members.is_disjoint(&b.members))
        })
    }
}

fn check_brute_force_size(rel: &Relation, limits: &Limits) -> Result<()> {
    let limit = limits.brute_force_max_n.min(Limits::BRUTE_FORCE_CEILING);
    if rel.n() > limit {
        return Err(Error::Size {
            what: "subset enumeration",
            n: rel.n(),
            limit,
            hint: "; use the max-flow algorithm for κ",
        });
    }
    Ok(())
}

/// Lexicographic order of the sorted member lists of two masks.
fn lex_cmp_masks(mut a: u64, mut b: u64) -> Ordering {
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la.cmp(&lb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

struct MaskRelation {
    n: usize,
    rows: Vec<u64>,
    full: u64,
}

impl MaskRelation {
    fn new(rel: &Relation) -> Self {
        let n = rel.n();
        MaskRelation {
            n,
            rows: rel.rows().iter().map(VertexSet::to_mask).collect(),
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    fn image(&self, mut x: u64) -> u64 {
        let mut out = 0;
        while x != 0 {
            out |= self.rows[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        out
    }

    /// `|∂(X)|` if `X` is admissible for the minimum, i.e. `Γ(X) ≠ V`.
    fn admissible_boundary(&self, x: u64) -> Option<u32> {
        let img = self.image(x);
        (img != self.full).then(|| (img & !x).count_ones())
    }

    fn subsets(&self) -> impl ParallelIterator<Item = u64> {
        (1..=self.full).into_par_iter()
    }
}

#[derive(Clone, Copy)]
struct Best {
    boundary: u32,
    size: u32,
    witness: u64,
}

impl Best {
    /// Smaller boundary wins, then the lexicographically least members.
    fn better(self, other: Best) -> Best {
        match self.boundary.cmp(&other.boundary) {
            Ordering::Less => self,
            Ordering::Greater => other,
            Ordering::Equal => {
                // atom size is a minimum over all ties
                let size = self.size.min(other.size);
                let witness = if lex_cmp_masks(self.witness, other.witness) != Ordering::Greater {
                    self.witness
                } else {
                    other.witness
                };
                Best { boundary: self.boundary, size, witness }
            }
        }
    }
}

/// κ by exhaustive subset enumeration with the default limits.
pub fn kappa_bruteforce(rel: &Relation) -> Result<ConnectivityReport> {
    kappa_bruteforce_with(rel, &Limits::default())
}

pub fn kappa_bruteforce_with(rel: &Relation, limits: &Limits) -> Result<ConnectivityReport> {
    rel.require_reflexive("connectivity")?;
    if rel.n() == 0 {
        return Err(Error::domain("connectivity needs at least one vertex"));
    }
    check_brute_force_size(rel, limits)?;
    if rel.is_complete() {
        return Ok(ConnectivityReport::complete(rel.n()));
    }
    let m = MaskRelation::new(rel);
    let best = m
        .subsets()
        .filter_map(|x| {
            m.admissible_boundary(x).map(|boundary| Best {
                boundary,
                size: x.count_ones(),
                witness: x,
            })
        })
        .reduce_with(Best::better)
        .expect("a non-complete reflexive relation has an admissible singleton");
    Ok(ConnectivityReport {
        kappa: best.boundary as usize,
        witness_fragment: Some(VertexSet::from_mask(m.n, best.witness)),
        atom_size: Some(best.size as usize),
        complete: false,
        algorithm: Algorithm::BruteForce,
    })
}

/// All atoms, by exhaustive enumeration.
pub fn atoms(rel: &Relation) -> Result<AtomReport> {
    atoms_with(rel, &Limits::default())
}

pub fn atoms_with(rel: &Relation, limits: &Limits) -> Result<AtomReport> {
    let report = kappa_bruteforce_with(rel, limits)?;
    if report.complete {
        return Err(Error::contract(
            "the complete relation (E = V × V) has no fragments, hence no atoms",
        ));
    }
    let kappa = report.kappa as u32;
    let size = report.atom_size.expect("brute force reports the atom size") as u32;
    let m = MaskRelation::new(rel);
    let mut masks: Vec<u64> = m
        .subsets()
        .filter(|x| x.count_ones() == size && m.admissible_boundary(*x) == Some(kappa))
        .collect();
    masks.sort_by(|a, b| lex_cmp_masks(*a, *b));
    Ok(AtomReport {
        kappa: report.kappa,
        atom_size: size as usize,
        atoms: masks
            .into_iter()
            .map(|x| Fragment { members: VertexSet::from_mask(m.n, x) })
            .collect(),
    })
}

/// The lexicographically least atom containing `v`, if any atom does.
pub fn atom_containing(rel: &Relation, v: usize) -> Result<Option<Fragment>> {
    atom_containing_with(rel, v, &Limits::default())
}

pub fn atom_containing_with(rel: &Relation, v: usize, limits: &Limits) -> Result<Option<Fragment>> {
    rel.check_vertex(v)?;
    Ok(atoms_with(rel, limits)?
        .atoms
        .into_iter()
        .find(|a| a.members.contains(v)))
}

const INF: u32 = u32::MAX / 2;

/// Vertex-split flow network: `v_in = 2v`, `v_out = 2v + 1`.
struct SplitNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    base_cap: Vec<u32>,
    cap: Vec<u32>,
}

impl SplitNetwork {
    fn new(rel: &Relation) -> Self {
        let n = rel.n();
        let mut net = SplitNetwork {
            head: vec![Vec::new(); 2 * n],
            to: Vec::new(),
            base_cap: Vec::new(),
            cap: Vec::new(),
        };
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        // loops never lie on a path between distinct vertices
        for (x, y) in rel.edges().filter(|(x, y)| x != y) {
            net.add_arc(2 * x + 1, 2 * y, INF);
        }
        net.cap = net.base_cap.clone();
        net
    }

    fn add_arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.base_cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.base_cap.push(0);
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.base_cap);
    }

    /// Shortest augmenting path; returns the parent arc of every reached node.
    fn bfs(&self, source: usize, sink: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            for &e in &self.head[a] {
                let b = self.to[e];
                if self.cap[e] > 0 && !seen[b] {
                    seen[b] = true;
                    parent[b] = e;
                    if b == sink {
                        return Some(parent);
                    }
                    queue.push_back(b);
                }
            }
        }
        None
    }

    /// Max flow from `source` to `sink`, stopping early once it reaches `cap_at`.
    fn max_flow(&mut self, source: usize, sink: usize, cap_at: u32) -> u32 {
        self.reset();
        let mut flow = 0;
        while flow < cap_at {
            let Some(parent) = self.bfs(source, sink) else { break };
            let mut push = INF;
            let mut node = sink;
            while node != source {
                let e = parent[node];
                push = push.min(self.cap[e]);
                node = self.to[e ^ 1];
            }
            let mut node = sink;
            while node != source {
                let e = parent[node];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                node = self.to[e ^ 1];
            }
            flow += push;
        }
        flow
    }

    fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            for &e in &self.head[a] {
                let b = self.to[e];
                if self.cap[e] > 0 && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }
}

/// κ as the minimum, over ordered pairs `(u, w)` with `w ∉ Γ(u)`, of the
/// number of internally vertex-disjoint `u → w` paths.
///
/// The witness is the residual-reachable side of a minimum cut for the first
/// minimizing pair in `(u, w)` order.
pub fn kappa_maxflow(rel: &Relation) -> Result<ConnectivityReport> {
    rel.require_reflexive("connectivity")?;
    if rel.n() == 0 {
        return Err(Error::domain("connectivity needs at least one vertex"));
    }
    if rel.is_complete() {
        return Err(Error::contract(
            "max-flow connectivity needs a pair (u, w) with w ∉ Γ(u); the relation is complete",
        ));
    }
    let n = rel.n();
    let mut net = SplitNetwork::new(rel);
    let mut best: Option<(u32, VertexSet)> = None;
    'pairs: for u in 0..n {
        for w in rel.rows()[u].complement().iter() {
            let bound = best.as_ref().map_or(INF, |(k, _)| *k);
            let flow = net.max_flow(2 * u + 1, 2 * w, bound);
            if flow < bound {
                let reach = net.residual_reachable(2 * u + 1);
                let witness = VertexSet::from_members(n, (0..n).filter(|&v| reach[2 * v + 1]))?;
                best = Some((flow, witness));
                if flow == 0 {
                    break 'pairs;
                }
            }
        }
    }
    let (kappa, witness) = best.expect("non-complete relation has an admissible pair");
    Ok(ConnectivityReport {
        kappa: kappa as usize,
        witness_fragment: Some(witness),
        atom_size: None,
        complete: false,
        algorithm: Algorithm::MaxFlow,
    })
}

/// Brute force up to the limit, max-flow above it.
pub fn kappa_auto(rel: &Relation, limits: &Limits) -> Result<ConnectivityReport> {
    if rel.n() <= limits.brute_force_max_n.min(Limits::BRUTE_FORCE_CEILING) {
        kappa_bruteforce_with(rel, limits)
    } else if rel.is_reflexive() && rel.is_complete() {
        Ok(ConnectivityReport::complete(rel.n()))
    } else {
        kappa_maxflow(rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::fixtures::{circulant, reflexive_cycle};

    fn two_triangles() -> Relation {
        let c3 = reflexive_cycle(3);
        Relation::from_edges(6, c3.edges().chain(c3.edges().map(|(u, v)| (u + 3, v + 3)))).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn complete_relation_uses_definition() {
        let rep = kappa_bruteforce(&Relation::complete(3)).unwrap();
        assert_eq!(rep.kappa, 2);
        assert!(rep.complete);
        assert!(rep.witness_fragment.is_none());

        let one = kappa_bruteforce(&Relation::identity(1)).unwrap();
        assert_eq!(one.kappa, 0);
        assert!(one.complete);
    }

    #[test]
    fn bruteforce_examples() {
        let rep = kappa_bruteforce(&reflexive_cycle(5)).unwrap();
        assert_eq!(rep.kappa, 1);
        assert_eq!(rep.witness_fragment, Some(set(5, &[0])));
        assert_eq!(rep.atom_size, Some(1));

        assert_eq!(kappa_bruteforce(&circulant(7, &[1, 2], true)).unwrap().kappa, 2);
    }

    #[test]
    fn bruteforce_errors() {
        assert!(matches!(
            kappa_bruteforce(&circulant(4, &[1], false)),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            kappa_bruteforce(&reflexive_cycle(23)),
            Err(Error::Size { n: 23, limit: 22, .. })
        ));
    }

    #[test]
    fn maxflow_examples() {
        let c5 = kappa_maxflow(&reflexive_cycle(5)).unwrap();
        assert_eq!(c5.kappa, 1);
        assert!(Fragment { members: c5.witness_fragment.unwrap() }.is_valid_for(&reflexive_cycle(5), 1));

        // directed 4-cycle with chords: ∂({1}) = {2}
        let mut chords = reflexive_cycle(4);
        chords.add_edge(0, 2).unwrap();
        chords.add_edge(2, 0).unwrap();
        assert_eq!(kappa_maxflow(&chords).unwrap().kappa, 1);
        assert_eq!(kappa_bruteforce(&chords).unwrap().kappa, 1);

        // bidirected 4-cycle with the same chord
        let both = circulant(4, &[1, 3], true);
        let mut both = Relation::from_edges(4, both.edges().chain([(0, 2), (2, 0)])).unwrap();
        both.add_edge(0, 0).unwrap();
        assert_eq!(kappa_maxflow(&both).unwrap().kappa, 2);
        assert_eq!(kappa_bruteforce(&both).unwrap().kappa, 2);

        let split = kappa_maxflow(&two_triangles()).unwrap();
        assert_eq!(split.kappa, 0);
        assert_eq!(split.witness_fragment, Some(set(6, &[0, 1, 2])));
    }

    #[test]
    fn maxflow_rejects_complete() {
        assert!(matches!(kappa_maxflow(&Relation::complete(4)), Err(Error::Contract(_))));
    }

    #[test]
    fn atoms_of_cycle_are_singletons() {
        let rep = atoms(&reflexive_cycle(5)).unwrap();
        assert_eq!(rep.atom_size, 1);
        let got: Vec<Vec<usize>> = rep.atoms.iter().map(|a| a.members.to_vec()).collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        assert!(rep.pairwise_disjoint());
    }

    #[test]
    fn atoms_of_disconnected_relation_are_components() {
        let rep = atoms(&two_triangles()).unwrap();
        assert_eq!(rep.kappa, 0);
        assert_eq!(rep.atom_size, 3);
        let got: Vec<Vec<usize>> = rep.atoms.iter().map(|a| a.members.to_vec()).collect();
        assert_eq!(got, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn atom_containing_examples() {
        let c5 = reflexive_cycle(5);
        assert_eq!(atom_containing(&c5, 3).unwrap().unwrap().members, set(5, &[3]));
        assert!(matches!(atom_containing(&c5, 5), Err(Error::Domain(_))));
        assert!(matches!(
            atom_containing(&Relation::complete(3), 0),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn lex_masks() {
        assert_eq!(lex_cmp_masks(0b1001, 0b0010), Ordering::Less);
        assert_eq!(lex_cmp_masks(0b0001, 0b1001), Ordering::Less);
        assert_eq!(lex_cmp_masks(0b0110, 0b0110), Ordering::Equal);
    }

    #[test]
    fn auto_switches_to_maxflow() {
        let rel = reflexive_cycle(30);
        let rep = kappa_auto(&rel, &Limits::default()).unwrap();
        assert_eq!(rep.algorithm, Algorithm::MaxFlow);
        assert_eq!(rep.kappa, 1);
    }
}
