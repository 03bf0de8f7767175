//! Finite groups as multiplication tables, Cayley graphs and shortest
//! zero-sum sequences.
//!
//! Convention: the Cayley graph has arcs `g → g·s`, and a sequence
//! `s_1, …, s_k` has product `s_1·s_2·…·s_k` read left to right.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::Relation;

/// Groups up to this order get a full associativity check.
const FULL_ASSOCIATIVITY_MAX: usize = 128;
const SAMPLED_TRIPLES: usize = 200_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates `table` (Latin square, identity, associativity) and builds the group.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("a group has at least one element".into()));
        }
        if names.len() != n {
            return Err(Error::Validation(format!("{} names for {n} elements", names.len())));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if !is_permutation(row) {
                return Err(Error::Validation(format!("row {a} is not a permutation (not a Latin square)")));
            }
        }
        for b in 0..n {
            let col: Vec<usize> = table.iter().map(|r| r[b]).collect();
            if !is_permutation(&col) {
                return Err(Error::Validation(format!("column {b} is not a permutation (not a Latin square)")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Validation("no two-sided identity element".into()))?;
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("Latin square row contains identity"))
            .collect();
        if let Some(a) = (0..n).find(|&a| table[inverse[a]][a] != identity) {
            return Err(Error::Validation(format!("element {a} has no two-sided inverse")));
        }
        let group = FiniteGroup { name: name.into(), table, identity, inverse, names };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order();
        let fail = |a: usize, b: usize, c: usize| {
            Error::Validation(format!("not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})"))
        };
        if n <= FULL_ASSOCIATIVITY_MAX {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.table[a][b];
                    for c in 0..n {
                        if self.table[ab][c] != self.table[a][self.table[b][c]] {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    /// `Z_m` with elements `0..m`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Validation("cyclic group of order 0".into()));
        }
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Self::from_table(format!("Z{m}"), table, (0..m).map(|a| a.to_string()).collect())
    }

    /// `G × H`, elements named `(g,h)` and indexed `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (n, m) = (g.order(), h.order());
        let idx = |a: usize, b: usize| a * m + b;
        let mut table = vec![vec![0; n * m]; n * m];
        for (a1, b1) in (0..n).flat_map(|a| (0..m).map(move |b| (a, b))) {
            for (a2, b2) in (0..n).flat_map(|a| (0..m).map(move |b| (a, b))) {
                table[idx(a1, b1)][idx(a2, b2)] = idx(g.table[a1][a2], h.table[b1][b2]);
            }
        }
        let names = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", g.names[a], h.names[b]))
            .collect();
        Self::from_table(format!("{}x{}", g.name, h.name), table, names)
    }

    /// Dihedral group of order `2m`, the symmetries of a regular `m`-gon.
    /// `r{k}` is `x ↦ x + k`, `s{k}` is `x ↦ k − x` (mod `m`).
    pub fn dihedral(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::Validation("dihedral group needs m ≥ 1".into()));
        }
        let mut perms = Vec::with_capacity(2 * m);
        let mut names = Vec::with_capacity(2 * m);
        for k in 0..m {
            perms.push((0..m).map(|x| (x + k) % m).collect::<Vec<_>>());
            names.push(format!("r{k}"));
        }
        for k in 0..m {
            perms.push((0..m).map(|x| (k + m - x) % m).collect::<Vec<_>>());
            names.push(format!("s{k}"));
        }
        Self::from_permutations(format!("D{m}"), perms, names)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion8() -> Result<Self> {
        // element = (sign, unit) with unit 0..4 = 1, i, j, k; index = 2·unit + sign
        let names: Vec<String> = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        // unit products: (result unit, negated)
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, neg) = unit_mul(a / 2, b / 2);
                        let sign = (a % 2) ^ (b % 2) ^ usize::from(neg);
                        2 * u + sign
                    })
                    .collect()
            })
            .collect();
        Self::from_table("Q8", table, names)
    }

    /// Symmetric group on `{1, …, m}`, `m ≤ 5`, elements named in cycle
    /// notation (`()`, `(12)`, `(123)`, `(12)(34)`). The product `a·b` is the
    /// composition "apply `b`, then `a`".
    pub fn symmetric(m: usize) -> Result<Self> {
        if !(1..=5).contains(&m) {
            return Err(Error::Validation(format!("symmetric group S{m} is outside the supported range 1..=5")));
        }
        let mut perms = Vec::new();
        permutations(&mut (0..m).collect(), 0, &mut perms);
        perms.sort();
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_permutations(format!("S{m}"), perms, names)
    }

    /// Group of permutations under `a·b = a ∘ b` (apply `b` first).
    fn from_permutations(name: String, perms: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let composed: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
                table[a][b] = *index
                    .get(composed.as_slice())
                    .ok_or_else(|| Error::Validation(format!("{name}: permutation set is not closed")))?;
            }
        }
        Self::from_table(name, table, names)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Resolves an element by display name, falling back to a numeric index.
    pub fn element(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(i) = self.names.iter().position(|n| n == token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.order() => Ok(i),
            _ => Err(Error::domain(format!("{token:?} is not an element of {}", self.name))),
        }
    }

    /// Ordered product `s_1·s_2·…·s_k`.
    pub fn product(&self, seq: &[usize]) -> usize {
        seq.iter().fold(self.identity, |acc, &s| self.table[acc][s])
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter().all(|&x| x < row.len() && !std::mem::replace(&mut seen[x], true))
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses a group descriptor: `Z6`, `D4`, `Q8`, `S3`, or products such as `Z2xZ4`.
pub fn make_group(descriptor: &str) -> Result<FiniteGroup> {
    let parts: Vec<&str> = descriptor.split(['x', 'X']).map(str::trim).collect();
    let mut groups = parts.iter().map(|p| make_factor(p));
    let first = groups.next().expect("split yields at least one part")?;
    groups.try_fold(first, |acc, g| FiniteGroup::direct_product(&acc, &g?))
}

fn make_factor(token: &str) -> Result<FiniteGroup> {
    let bad = || Error::Validation(format!("unknown group descriptor {token:?} (expected Zm, Dm, Q8, Sm)"));
    if token == "Q8" {
        return FiniteGroup::quaternion8();
    }
    let (kind, rest) = token.split_at(token.chars().next().map_or(0, char::len_utf8));
    let m: usize = rest.parse().map_err(|_| bad())?;
    match kind {
        "Z" => FiniteGroup::cyclic(m),
        "D" => FiniteGroup::dihedral(m),
        "S" => FiniteGroup::symmetric(m),
        _ => Err(bad()),
    }
}

/// A set `S ⊆ G ∖ {1}`, stored sorted by element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    members: Vec<usize>,
}

impl GeneratorSet {
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::contract("the generator set S must be nonempty"));
        }
        if let Some(&bad) = members.iter().find(|&&s| s >= group.order()) {
            return Err(Error::domain(format!("{bad} is not an element of {}", group.name())));
        }
        if members.contains(&group.identity()) {
            return Err(Error::contract(format!(
                "S must not contain the identity {} (S ⊆ G ∖ {{1}})",
                group.element_name(group.identity())
            )));
        }
        Ok(GeneratorSet { members })
    }

    /// Parses comma-separated element names or indices; commas inside
    /// parentheses belong to the element, so `(1,0),(0,1)` and `(12),(123)` both work.
    pub fn parse(group: &FiniteGroup, list: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for c in list.chars() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if c == ',' && depth == 0 {
                tokens.push(std::mem::take(&mut cur));
            } else {
                cur.push(c);
            }
        }
        tokens.push(cur);
        let members = tokens
            .iter()
            .filter(|t| !t.trim().is_empty())
            .map(|t| group.element(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, members)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Vertex per element, arcs `g → g·s`; loops added when `reflexive`.
pub fn cayley_graph(group: &FiniteGroup, gens: &GeneratorSet, reflexive: bool) -> Result<Relation> {
    let n = group.order();
    if gens.members.iter().any(|&s| s >= n || s == group.identity()) {
        return Err(Error::contract("generator set does not belong to this group or contains the identity"));
    }
    let rel = Relation::from_edges(
        n,
        (0..n).flat_map(|g| gens.members.iter().map(move |&s| (g, group.mul(g, s)))),
    )?;
    Ok(if reflexive { rel.reflexive_closure() } else { rel })
}

/// A sequence of generators whose ordered product is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSumWitness {
    pub sequence: Vec<usize>,
    pub k: usize,
}

impl ZeroSumWitness {
    pub fn is_valid(&self, group: &FiniteGroup, gens: &GeneratorSet) -> bool {
        self.k >= 1
            && self.k == self.sequence.len()
            && self.sequence.iter().all(|s| gens.members.contains(s))
            && group.product(&self.sequence) == group.identity()
    }
}

/// `⌈n / |S|⌉`.
pub fn zero_sum_bound(group: &FiniteGroup, gens: &GeneratorSet) -> usize {
    group.order().div_ceil(gens.len())
}

/// Shortest sequence of generators with product `1`, found by BFS from the
/// identity along `g → g·s`. Among shortest sequences the lexicographically
/// least (by element index) is returned.
pub fn zero_sum(group: &FiniteGroup, gens: &GeneratorSet) -> ZeroSumWitness {
    let n = group.order();
    let e = group.identity();
    // parent[g] = (previous element, generator used); the identity is the root
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[e] = true;
    let mut queue = VecDeque::from([e]);
    while let Some(g) = queue.pop_front() {
        for &s in &gens.members {
            let h = group.mul(g, s);
            if h == e {
                let mut sequence = vec![s];
                let mut cur = g;
                while let Some((prev, used)) = parent[cur] {
                    sequence.push(used);
                    cur = prev;
                }
                sequence.reverse();
                return ZeroSumWitness { k: sequence.len(), sequence };
            }
            if !seen[h] {
                seen[h] = true;
                parent[h] = Some((g, s));
                queue.push_back(h);
            }
        }
    }
    unreachable!("powers of a generator return to the identity in a finite group")
}
