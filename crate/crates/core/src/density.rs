//! The density `ρ(G) = max 2|E(G[S])| / (|S| - 1)` over odd `S` with
//! `|S| >= 3`, in exact rational arithmetic.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexId, VertexSet};

/// Gray-code enumeration is limited to this many vertices.
pub const EXACT_MAX_VERTICES: usize = 30;

/// Maximizers stored in a [`RhoReport`]; the count is always exact.
pub const MAX_LISTED_WITNESSES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoMode {
    Exact,
    BranchAndBound,
}

fn ratio_str<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityCertificate {
    pub witness_set: VertexSet,
    pub induced_edges: usize,
    #[serde(serialize_with = "ratio_str")]
    pub value: Ratio<u64>,
    pub ceiling: u64,
}

impl DensityCertificate {
    /// Recompute the value for `witness_set` and compare.
    pub fn check(&self, g: &Multigraph) -> bool {
        density_of(g, &self.witness_set).is_ok_and(|d| d == *self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoReport {
    pub certificate: DensityCertificate,
    /// Number of odd sets attaining the maximum.
    pub maximizer_count: u64,
    /// Up to [`MAX_LISTED_WITNESSES`] maximizers in increasing bitmask order.
    pub maximizers: Vec<VertexSet>,
}

fn ceil(r: Ratio<u64>) -> u64 {
    r.ceil().to_integer()
}

/// `2|E(G[s])| / (|s| - 1)` for an odd `s` with at least three vertices.
pub fn density_of(g: &Multigraph, s: &VertexSet) -> Result<DensityCertificate> {
    if s.len() < 3 || s.len() % 2 == 0 {
        return Err(Error::input(format!(
            "density needs an odd set of at least 3 vertices, got {}",
            s.len()
        )));
    }
    if s.iter().any(|&v| v >= g.vertex_count()) {
        return Err(Error::input("vertex id out of range"));
    }
    let e = g.induced_edge_count(s);
    let value = Ratio::new(2 * e as u64, s.len() as u64 - 1);
    Ok(DensityCertificate {
        witness_set: s.clone(),
        induced_edges: e,
        value,
        ceiling: ceil(value),
    })
}

pub fn rho(g: &Multigraph, mode: RhoMode) -> Result<DensityCertificate> {
    Ok(rho_all(g, mode)?.certificate)
}

/// Whether exactly one odd set attains `ρ`, and the reported maximizer.
pub fn unique_max_witness(g: &Multigraph, mode: RhoMode) -> Result<(bool, VertexSet)> {
    let r = rho_all(g, mode)?;
    Ok((r.maximizer_count == 1, r.certificate.witness_set))
}

pub fn rho_all(g: &Multigraph, mode: RhoMode) -> Result<RhoReport> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::input(format!(
            "density needs at least 3 vertices, got {n}"
        )));
    }
    if n > 64 {
        return Err(Error::input("density supports at most 64 vertices"));
    }
    if g.edge_count() == 0 {
        // Every odd set has density zero.
        let witness: VertexSet = (0..3).collect();
        let odd_sets = (1u64 << (n - 1)) - n as u64;
        return Ok(RhoReport {
            certificate: density_of(g, &witness)?,
            maximizer_count: odd_sets,
            maximizers: vec![witness],
        });
    }
    let adj = Adjacency::new(g);
    let mut best = Best::default();
    match mode {
        RhoMode::Exact => {
            if n > EXACT_MAX_VERTICES {
                return Err(Error::input(format!(
                    "exact enumeration supports at most {EXACT_MAX_VERTICES} vertices"
                )));
            }
            exact(&adj, &mut best);
        }
        RhoMode::BranchAndBound => branch_and_bound(&adj, &mut best),
    }
    let mut masks = best.masks;
    masks.sort_unstable();
    masks.truncate(MAX_LISTED_WITNESSES);
    let maximizers: Vec<VertexSet> = masks.iter().map(|&m| mask_set(m)).collect();
    Ok(RhoReport {
        certificate: density_of(g, &maximizers[0])?,
        maximizer_count: best.count,
        maximizers,
    })
}

fn mask_set(m: u64) -> VertexSet {
    (0..64).filter(|&v| m >> v & 1 == 1).collect()
}

struct Adjacency {
    n: usize,
    mult: Vec<u64>,
    degree: Vec<u64>,
}

impl Adjacency {
    fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let mut mult = vec![0u64; n * n];
        for &(a, b) in g.edges() {
            mult[a * n + b] += 1;
            mult[b * n + a] += 1;
        }
        let degree = (0..n)
            .map(|v| mult[v * n..(v + 1) * n].iter().sum())
            .collect();
        Adjacency { n, mult, degree }
    }

    fn m(&self, u: VertexId, v: VertexId) -> u64 {
        self.mult[u * self.n + v]
    }
}

/// Running maximum as `(2e, |S| - 1)` with tie tracking.
#[derive(Default)]
struct Best {
    num: u64,
    den: u64,
    count: u64,
    masks: Vec<u64>,
}

impl Best {
    fn offer(&mut self, two_e: u64, size: u64, mask: u64) {
        let den = size - 1;
        if self.den == 0 || two_e * self.den > self.num * den {
            self.num = two_e;
            self.den = den;
            self.count = 1;
            self.masks.clear();
            self.masks.push(mask);
        } else if two_e * self.den == self.num * den {
            self.count += 1;
            if self.masks.len() < 4 * MAX_LISTED_WITNESSES {
                self.masks.push(mask);
            } else {
                self.masks.sort_unstable();
                self.masks.truncate(MAX_LISTED_WITNESSES);
                self.masks.push(mask);
            }
        }
    }
}

/// Visit every subset in Gray-code order, keeping `e(S)` up to date.
fn exact(adj: &Adjacency, best: &mut Best) {
    let n = adj.n;
    let mut inside = vec![0u64; n];
    let mut mask = 0u64;
    let mut edges = 0u64;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        if mask >> v & 1 == 0 {
            edges += inside[v];
            mask |= 1 << v;
            for u in 0..n {
                inside[u] += adj.m(u, v);
            }
        } else {
            mask &= !(1 << v);
            edges -= inside[v];
            for u in 0..n {
                inside[u] -= adj.m(u, v);
            }
        }
        let size = mask.count_ones() as u64;
        if size >= 3 && size % 2 == 1 {
            best.offer(2 * edges, size, mask);
        }
    }
}

/// Include/exclude search over vertices in decreasing degree order.
///
/// For the current best `p/q`, a set `S` scores at least as well iff
/// `f(S) = 2q e(S) - p(|S| - 1) >= 0`. Writing `S = I ∪ X` with `X` drawn
/// from the undecided vertices `R`, `2e(X) <= Σ_{x∈X} d_R(x)`, so
/// `f(S) <= 2q e(I) - p(|I| - 1) + Σ_{r∈R} max(0, q(2 d_I(r) + d_R(r)) - p)`,
/// and branches where this is negative are cut.
fn branch_and_bound(adj: &Adjacency, best: &mut Best) {
    let n = adj.n;
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj.degree[v]), v));
    seed_by_peeling(adj, best);
    let mut st = Search {
        adj,
        order,
        d_in: vec![0; n],
        d_rest: adj.degree.clone(),
        undecided: vec![true; n],
        mask: 0,
        size: 0,
        edges: 0,
    };
    st.go(0, best);
}

/// Start from the whole graph, repeatedly drop a minimum-degree vertex and
/// offer every odd intermediate set.
fn seed_by_peeling(adj: &Adjacency, best: &mut Best) {
    let n = adj.n;
    let mut alive = vec![true; n];
    let mut deg = adj.degree.clone();
    let mut mask: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut edges: u64 = deg.iter().sum::<u64>() / 2;
    for size in (3..=n).rev() {
        if size % 2 == 1 {
            best.offer(2 * edges, size as u64, mask);
        }
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("alive vertices remain");
        alive[v] = false;
        mask &= !(1 << v);
        edges -= deg[v];
        for u in 0..n {
            if alive[u] {
                deg[u] -= adj.m(u, v);
            }
        }
    }
    // Peeling may offer a set that the exhaustive search offers again.
    best.count = 0;
    best.masks.clear();
}

struct Search<'a> {
    adj: &'a Adjacency,
    order: Vec<VertexId>,
    d_in: Vec<u64>,
    d_rest: Vec<u64>,
    undecided: Vec<bool>,
    mask: u64,
    size: u64,
    edges: u64,
}

impl Search<'_> {
    fn bound_ok(&self, best: &Best) -> bool {
        let (p, q) = (best.num as i128, best.den as i128);
        let mut b = 2 * q * self.edges as i128 - p * (self.size as i128 - 1);
        for &r in &self.order {
            if self.undecided[r] {
                let gain = q * (2 * self.d_in[r] + self.d_rest[r]) as i128 - p;
                if gain > 0 {
                    b += gain;
                }
            }
        }
        b >= 0
    }

    fn go(&mut self, depth: usize, best: &mut Best) {
        if depth == self.order.len() {
            if self.size >= 3 && self.size % 2 == 1 {
                best.offer(2 * self.edges, self.size, self.mask);
            }
            return;
        }
        if best.den > 0 && !self.bound_ok(best) {
            return;
        }
        let v = self.order[depth];
        let n = self.adj.n;
        self.undecided[v] = false;
        for u in 0..n {
            self.d_rest[u] -= self.adj.m(u, v);
        }
        // Include v.
        self.edges += self.d_in[v];
        self.mask |= 1 << v;
        self.size += 1;
        for u in 0..n {
            self.d_in[u] += self.adj.m(u, v);
        }
        self.go(depth + 1, best);
        for u in 0..n {
            self.d_in[u] -= self.adj.m(u, v);
        }
        self.size -= 1;
        self.mask &= !(1 << v);
        self.edges -= self.d_in[v];
        // Exclude v.
        self.go(depth + 1, best);
        for u in 0..n {
            self.d_rest[u] += self.adj.m(u, v);
        }
        self.undecided[v] = true;
    }
}

/// `k + ceil(2 / (w - 1))`: the lower bound on `χ'` from a partial
/// `k`-colouring whose tree set of odd size `w` is elementary with no
/// defective colour.
pub fn elementary_lower_bound(k: u64, w_size: u64) -> Result<u64> {
    if w_size < 3 || w_size % 2 == 0 {
        return Err(Error::input(format!(
            "elementary sets here have odd size at least 3, got {w_size}"
        )));
    }
    Ok(ceil(Ratio::new(k * (w_size - 1) + 2, w_size - 1)))
}

/// `Δ + 1 + (Δ - 3) / (w - 1)`.
pub fn defective_upper_bound(delta: u64, w_size: u64) -> Result<Ratio<i64>> {
    if w_size < 2 {
        return Err(Error::input(format!("need w_size >= 2, got {w_size}")));
    }
    let d = delta as i64;
    Ok(Ratio::from_integer(d + 1) + Ratio::new(d - 3, w_size as i64 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: recompute every odd subset from scratch.
    fn brute(g: &Multigraph) -> (Ratio<u64>, u64) {
        let n = g.vertex_count();
        let mut best = Ratio::from_integer(0);
        let mut count = 0;
        for m in 0u64..1 << n {
            let s = mask_set(m);
            if s.len() < 3 || s.len() % 2 == 0 {
                continue;
            }
            let v = Ratio::new(2 * g.induced_edge_count(&s) as u64, s.len() as u64 - 1);
            if v > best {
                best = v;
                count = 1;
            } else if v == best {
                count += 1;
            }
        }
        (best, count)
    }

    #[test]
    fn shannon_triangle() {
        let g = Multigraph::shannon_triangle(3);
        for mode in [RhoMode::Exact, RhoMode::BranchAndBound] {
            let r = rho_all(&g, mode).unwrap();
            assert_eq!(r.certificate.value, Ratio::from_integer(9));
            assert_eq!(r.certificate.ceiling, 9);
            assert_eq!(r.certificate.witness_set, g.all_vertices());
            assert_eq!(r.maximizer_count, 1);
        }
    }

    #[test]
    fn two_triangles_tie() {
        let t = Multigraph::shannon_triangle(2);
        let g = t.disjoint_union(&t);
        for mode in [RhoMode::Exact, RhoMode::BranchAndBound] {
            let (unique, w) = unique_max_witness(&g, mode).unwrap();
            assert!(!unique);
            assert_eq!(w.len(), 3);
            assert_eq!(density_of(&g, &w).unwrap().value, Ratio::from_integer(6));
        }
    }

    #[test]
    fn edgeless_and_small() {
        let g = Multigraph::new(4, []).unwrap();
        let r = rho_all(&g, RhoMode::BranchAndBound).unwrap();
        assert_eq!(r.certificate.value, Ratio::from_integer(0));
        assert_eq!(r.maximizer_count, 4);
        assert!(rho(&Multigraph::new(2, [(0, 1)]).unwrap(), RhoMode::Exact).is_err());
    }

    #[test]
    fn modes_agree_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.gen_range(3..=9);
            let m = rng.gen_range(1..=20);
            let edges: Vec<_> = (0..m)
                .map(|_| {
                    let a = rng.gen_range(0..n);
                    let b = (a + rng.gen_range(1..n)) % n;
                    (a, b)
                })
                .collect();
            let g = Multigraph::new(n, edges).unwrap();
            let (value, count) = brute(&g);
            for mode in [RhoMode::Exact, RhoMode::BranchAndBound] {
                let r = rho_all(&g, mode).unwrap();
                assert_eq!(r.certificate.value, value, "{mode:?} {g:?}");
                assert_eq!(r.maximizer_count, count, "{mode:?} {g:?}");
                assert!(r.certificate.check(&g));
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(elementary_lower_bound(18, 15).unwrap(), 19);
        assert_eq!(elementary_lower_bound(8, 3).unwrap(), 9);
        assert_eq!(elementary_lower_bound(5, 5).unwrap(), 6);
        assert!(elementary_lower_bound(5, 4).is_err());
        assert_eq!(defective_upper_bound(17, 13).unwrap(), Ratio::new(115, 6));
        assert_eq!(defective_upper_bound(3, 9).unwrap(), Ratio::from_integer(4));
        assert_eq!(defective_upper_bound(27, 21).unwrap(), Ratio::new(146, 5));
    }
}
