//! Seeded random mixed graphs for tests and the verification driver.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::graph::{MixedGraph, Orientation};

/// Uniformly random orientation of an edge.
pub fn random_orientation<R: Rng + ?Sized>(rng: &mut R) -> Orientation {
    match rng.random_range(0..3) {
        0 => Orientation::Forward,
        1 => Orientation::Backward,
        _ => Orientation::Digon,
    }
}

fn orient_all<R: Rng + ?Sized>(n: usize, edges: Vec<(usize, usize)>, rng: &mut R) -> Result<MixedGraph> {
    let pairs: Vec<_> = edges
        .into_iter()
        .map(|(x, y)| (x, y, random_orientation(rng)))
        .collect();
    MixedGraph::from_pairs(n, pairs)
}

fn shuffled<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    labels
}

/// Mixed path on `n` vertices in a random vertex order.
pub fn random_path<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MixedGraph> {
    let order = shuffled(n, rng);
    orient_all(n, order.windows(2).map(|w| (w[0], w[1])).collect(), rng)
}

/// Random recursive tree: each vertex attaches to an earlier one.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MixedGraph> {
    let order = shuffled(n, rng);
    let edges = (1..n)
        .map(|i| (order[rng.random_range(0..i)], order[i]))
        .collect();
    orient_all(n, edges, rng)
}

/// Mixed cycle on `n ≥ 3` vertices with random labels and orientations.
pub fn random_cycle<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MixedGraph> {
    let order = shuffled(n, rng);
    let edges = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    orient_all(n, edges, rng)
}

/// Connected graph with exactly one cycle, of length `3..=n`, plus pendant trees.
pub fn random_unicyclic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MixedGraph> {
    let order = shuffled(n, rng);
    let len = rng.random_range(3..=n.max(3));
    let mut edges: Vec<_> = (0..len).map(|i| (order[i], order[(i + 1) % len])).collect();
    for i in len..n {
        edges.push((order[rng.random_range(0..i)], order[i]));
    }
    orient_all(n, edges, rng)
}

/// Random spanning tree plus each remaining pair with probability `p_extra`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p_extra: f64, rng: &mut R) -> Result<MixedGraph> {
    let order = shuffled(n, rng);
    let mut present = BTreeSet::new();
    let mut edges = Vec::new();
    for i in 1..n {
        let (x, y) = (order[rng.random_range(0..i)], order[i]);
        present.insert((x.min(y), x.max(y)));
        edges.push((x, y));
    }
    for x in 0..n {
        for y in x + 1..n {
            if !present.contains(&(x, y)) && rng.random_bool(p_extra) {
                edges.push((x, y));
            }
        }
    }
    orient_all(n, edges, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=10 {
            assert!(random_path(n, &mut rng).unwrap().is_path());
            assert!(random_tree(n, &mut rng).unwrap().is_tree());
            assert!(random_cycle(n, &mut rng).unwrap().is_cycle());
            let g = random_unicyclic(n, &mut rng).unwrap();
            assert_eq!(g.n_edges(), n);
            assert!(g.girth().is_some());
            assert!(random_connected(n, 0.3, &mut rng).is_ok());
        }
        assert!(random_tree(1, &mut rng).unwrap().is_tree());
    }

    #[test]
    fn deterministic_given_seed() {
        let a = random_connected(8, 0.4, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = random_connected(8, 0.4, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
    }
}
