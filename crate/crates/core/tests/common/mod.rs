#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tashkinov::colouring::greedy_max_domain;
use tashkinov::{Colour, EdgeId, Multigraph, PartialColouring};

/// A seeded loopless multigraph with `n` vertices and `m` edges, each edge
/// between two distinct random vertices.
pub fn random_multigraph(seed: u64, n: usize, m: usize) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            (a, b)
        })
        .collect();
    Multigraph::new(n, edges).expect("loopless by construction")
}

/// A random instance: graph with at most `max_n` vertices and 20 edges,
/// `k` in `Δ+1 ..= Δ+3`, a greedy colouring and an uncoloured edge `e0`.
/// Half the seeds give a dense graph on at most five vertices with
/// `k = Δ + 1`, where the greedy colouring usually stops short.
pub struct Instance {
    pub graph: Multigraph,
    pub colouring: PartialColouring,
    pub e0: EdgeId,
}

pub fn instance(seed: u64, max_n: usize) -> Instance {
    let dense = seed % 2 == 1;
    // Dense draws are retried until the greedy colouring leaves an edge.
    for attempt in 0..(if dense { 20 } else { 1 }) {
        let sub = seed.wrapping_add(attempt << 32);
        if let Some(inst) = draw(sub, max_n, dense, attempt == 0 && !dense) {
            return inst;
        }
    }
    draw(seed, max_n, dense, true).expect("forced draws always succeed")
}

fn draw(seed: u64, max_n: usize, dense: bool, force: bool) -> Option<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = if dense {
        rng.gen_range(3..=max_n.min(5))
    } else {
        rng.gen_range(3..=max_n)
    };
    let m = if dense {
        rng.gen_range(8..=20)
    } else {
        rng.gen_range(1..=20)
    };
    let g = random_multigraph(seed, n, m);
    let delta = g.max_degree().unwrap() as Colour;
    let k = delta + if dense { 1 } else { rng.gen_range(1..=3) };
    let mut c = greedy_max_domain(&g, k, seed).unwrap();
    let e0 = match c.uncoloured_edges().first() {
        Some(&e) => e,
        None if force => {
            let e = rng.gen_range(0..g.edge_count());
            c.set(e, None).unwrap();
            e
        }
        None => return None,
    };
    Some(Instance {
        graph: g,
        colouring: c,
        e0,
    })
}
