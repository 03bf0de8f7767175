#![allow(dead_code)]

use atomlab_core::{cayley_graph, make_group, GeneratorSet, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Cayley(Z_n, S), S given by step values.
pub fn circulant(n: usize, steps: &[usize], reflexive: bool) -> Relation {
    let z = make_group(&format!("Z{n}")).unwrap();
    cayley_graph(&z, &GeneratorSet::new(&z, steps.iter().copied()).unwrap(), reflexive).unwrap()
}

/// Every nonempty S ⊆ Z_n ∖ {0}, as sorted step lists.
pub fn connection_sets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1 << (n - 1))).map(move |code| (1..n).filter(|s| code >> (s - 1) & 1 == 1).collect())
}

/// Reflexive relation with independent off-diagonal arcs of probability `p`.
pub fn random_reflexive(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Relation {
    let mut rel = Relation::identity(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                rel.add_edge(u, v).unwrap();
            }
        }
    }
    rel
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every reflexive relation on `n` vertices, by off-diagonal bit pattern.
pub fn all_reflexive(n: usize) -> impl Iterator<Item = Relation> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u64..(1 << pairs.len())).map(move |code| {
        let mut rel = Relation::identity(n);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                rel.add_edge(u, v).unwrap();
            }
        }
        rel
    })
}
