//! The alternating path `P(α, β)` leaving an elementary tree set, its first
//! two outside vertices `w1, w2`, and the outside segment `Q(α, β)`.

use serde::Serialize;

use crate::colouring::{Colour, ColourSet, PartialColouring};
use crate::error::{Error, Result};
use crate::kempe::{chain_from, KempeComponent};
use crate::multigraph::{EdgeId, Multigraph, VertexId, VertexSet};
use crate::tashkinov::{build_tree, TashkinovState, TieBreak};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionResult {
    pub alpha: Colour,
    pub beta: Colour,
    /// The `(α, β)` path, oriented from `start`.
    pub p_path: KempeComponent,
    /// The vertex of `W` missing `β`.
    pub start: VertexId,
    pub w1: VertexId,
    pub w2: VertexId,
    /// The run of path vertices outside `W` beginning at `w1`.
    pub q_segment: Vec<VertexId>,
}

impl ExtensionResult {
    pub fn w_plus_w1w2(&self, state: &TashkinovState) -> VertexSet {
        let mut s = state.w_set.clone();
        s.insert(self.w1);
        s.insert(self.w2);
        s
    }

    pub fn w_plus_q(&self, state: &TashkinovState) -> VertexSet {
        let mut s = state.w_set.clone();
        s.extend(self.q_segment.iter().copied());
        s
    }
}

/// Tree grown with [`TieBreak::MinimizeUsed`], which keeps `U` small.
pub fn min_used_tree(c: &PartialColouring, g: &Multigraph, e0: EdgeId) -> Result<TashkinovState> {
    build_tree(c, g, e0, TieBreak::MinimizeUsed)
}

/// `M ∖ U`.
pub fn beta_candidates(state: &TashkinovState) -> ColourSet {
    state.missing_union.difference(state.used_colours)
}

pub fn p_path(
    c: &PartialColouring,
    g: &Multigraph,
    state: &TashkinovState,
    alpha: Colour,
    beta: Colour,
) -> Result<ExtensionResult> {
    if !state.elementary {
        return Err(Error::precondition("W is not elementary"));
    }
    if !state.defective.contains_key(&alpha) {
        return Err(Error::precondition(format!(
            "colour {alpha} is not defective"
        )));
    }
    if !beta_candidates(state).contains(beta) {
        return Err(Error::precondition(format!(
            "colour {beta} is not missing in W outside the tree colours"
        )));
    }
    let start = *state
        .w_set
        .iter()
        .find(|&&v| c.missing_at(g, v).contains(beta))
        .expect("beta is missing in W");
    let path = chain_from(c, g, start, alpha, beta)?;
    let outside: Vec<usize> = (0..path.vertices.len())
        .filter(|&i| !state.w_set.contains(&path.vertices[i]))
        .collect();
    if outside.len() < 2 {
        return Err(Error::Violation(format!(
            "the ({alpha}, {beta}) path from vertex {start} leaves W at fewer than two vertices"
        )));
    }
    let first = outside[0];
    let q_segment: Vec<VertexId> = path.vertices[first..]
        .iter()
        .copied()
        .take_while(|v| !state.w_set.contains(v))
        .collect();
    Ok(ExtensionResult {
        alpha,
        beta,
        start,
        w1: path.vertices[outside[0]],
        w2: path.vertices[outside[1]],
        q_segment,
        p_path: path,
    })
}

/// `P` carries every `α`-edge leaving `W`, and `W ∪ {w1, w2}` is elementary.
pub fn check_b(
    c: &PartialColouring,
    g: &Multigraph,
    state: &TashkinovState,
    res: &ExtensionResult,
) -> bool {
    let covers = g
        .boundary_edges(&state.w_set)
        .into_iter()
        .filter(|&e| c.colour(e) == Some(res.alpha))
        .all(|e| res.p_path.edges.contains(&e));
    covers && c.is_elementary(g, &res.w_plus_w1w2(state))
}

/// `W ∪ Q` is elementary.
pub fn check_c(
    c: &PartialColouring,
    g: &Multigraph,
    state: &TashkinovState,
    res: &ExtensionResult,
) -> bool {
    c.is_elementary(g, &res.w_plus_q(state))
}

/// [`p_path`] for every defective `α` and every `β ∈ M ∖ U`.
pub fn all_pairs(
    c: &PartialColouring,
    g: &Multigraph,
    state: &TashkinovState,
) -> Vec<(Colour, Colour, Result<ExtensionResult>)> {
    let betas = beta_candidates(state);
    state
        .defective
        .keys()
        .flat_map(|&a| betas.iter().map(move |b| (a, b)))
        .map(|(a, b)| (a, b, p_path(c, g, state, a, b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangle 0,1,2 with e0 = 0-1 uncoloured, and colour 3 leaving every
    /// corner; 3-4 carries colour 2.
    fn toy() -> (Multigraph, PartialColouring) {
        let g =
            Multigraph::new(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5), (3, 4)]).unwrap();
        let c = PartialColouring::from_assignment(
            3,
            vec![None, Some(1), Some(2), Some(3), Some(3), Some(3), Some(2)],
        )
        .unwrap();
        (g, c)
    }

    #[test]
    fn toy_structures() {
        let (g, c) = toy();
        let st = min_used_tree(&c, &g, 0).unwrap();
        assert_eq!(st.w_set, [0, 1, 2].into());
        assert!(st.elementary);
        assert_eq!(st.defective.get(&3), Some(&3));
        assert_eq!(beta_candidates(&st).to_vec(), vec![2]);
        let r = p_path(&c, &g, &st, 3, 2).unwrap();
        assert_eq!(r.start, 0);
        assert_eq!(r.p_path.vertices, vec![0, 3, 4, 1, 2, 5]);
        assert_eq!((r.w1, r.w2), (3, 4));
        assert_eq!(r.q_segment, vec![3, 4]);
        // Vertex 3 misses colour 1, as does vertex 1.
        assert!(!check_b(&c, &g, &st, &r));
        assert!(!check_c(&c, &g, &st, &r));
        assert!(matches!(
            p_path(&c, &g, &st, 3, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn preconditions() {
        let g = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let c = PartialColouring::from_assignment(3, vec![None, Some(1)]).unwrap();
        let st = min_used_tree(&c, &g, 0).unwrap();
        assert!(matches!(
            p_path(&c, &g, &st, 1, 2),
            Err(Error::Precondition(_))
        ));
        assert!(beta_candidates(&st).is_subset(st.missing_union));
    }
}
