//! Exhaustive reference solver. Every other solver is tested against it.

use itertools::Itertools;

use crate::error::Result;
use crate::graph::{Graph, VertexWeights};
use crate::scalar::Scalar;
use crate::solution::{check_k, objective_value, Objective, SolveResult};

pub const STRATEGY: &str = "oracle";

/// Optimum over all `k`-subsets of `g`, ties broken towards the
/// lexicographically smallest sorted witness. Intended for `n <= 20`.
pub fn brute_force_solve<W: Scalar>(
    g: &Graph,
    w: &VertexWeights<W>,
    k: usize,
    obj: Objective,
) -> Result<SolveResult<W>> {
    w.check_len(g.n())?;
    check_k(k, g.n())?;
    let mut best: Option<(W, Vec<usize>)> = None;
    // combinations() yields sorted subsets in lexicographic order
    for s in (0..g.n()).combinations(k) {
        let value = objective_value(g, w, &s)?;
        if best.as_ref().is_none_or(|(b, _)| obj.improves(&value, b)) {
            best = Some((value, s));
        }
    }
    let (value, witness) = best.expect("at least one k-subset exists for k <= n");
    Ok(SolveResult {
        value,
        witness,
        strategy: STRATEGY,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::named::*;

    fn zeros(g: &Graph) -> VertexWeights<i64> {
        VertexWeights::zeros(g.n())
    }

    #[test]
    fn examples() {
        let g = cycle(5);
        assert_eq!(
            brute_force_solve(&g, &zeros(&g), 3, Objective::Densest).unwrap().value,
            2
        );
        let g = complete(4);
        assert_eq!(
            brute_force_solve(&g, &zeros(&g), 2, Objective::Sparsest).unwrap().value,
            1
        );
        let g = star(3);
        let w = VertexWeights::new(vec![5i64, 0, 0, 0]).unwrap();
        let r = brute_force_solve(&g, &w, 1, Objective::Densest).unwrap();
        assert_eq!((r.value, r.witness), (5, vec![0]));
    }

    #[test]
    fn k_zero_and_too_large() {
        let g = cycle(4);
        let r = brute_force_solve(&g, &zeros(&g), 0, Objective::Densest).unwrap();
        assert_eq!((r.value, r.witness.len()), (0, 0));
        assert_eq!(
            brute_force_solve(&g, &zeros(&g), 5, Objective::Densest).unwrap_err(),
            Error::KTooLarge { k: 5, n: 4 }
        );
    }

    #[test]
    fn lexicographic_ties() {
        let g = cycle(5);
        let r = brute_force_solve(&g, &zeros(&g), 2, Objective::Densest).unwrap();
        assert_eq!(r.witness, vec![0, 1]);
        let r = brute_force_solve(&g, &zeros(&g), 2, Objective::Sparsest).unwrap();
        assert_eq!(r.witness, vec![0, 2]);
    }
}
