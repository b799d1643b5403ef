//! Deletion-set framework: given `D` such that `g[V \ D]` lies in a class
//! with a weighted solver, enumerate every partial solution `S ⊆ D` and
//! solve the residual instance with weights `w_v + |N(v) ∩ S|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexWeights};
use crate::scalar::Scalar;
use crate::solution::{check_k, Objective, SolveResult};

/// Largest deletion set the framework will enumerate (`2^30` candidates).
pub const MAX_DELETION_SET: usize = 30;

pub const STRATEGY: &str = "deletion-framework";

/// Exact solver for Densest/Sparsest k-Subgraph with weighted vertices on
/// some graph class.
pub trait WeightedSolver<W: Scalar>: Sync {
    fn name(&self) -> &'static str;

    /// Applicability predicate, with a diagnostic on failure.
    fn check(&self, g: &Graph) -> Result<()>;

    fn accepts(&self, g: &Graph) -> bool {
        self.check(g).is_ok()
    }

    /// Do the weight-independent work (decompositions) once.
    fn prepare<'a>(&'a self, g: &'a Graph) -> Result<Box<dyn PreparedSolver<W> + 'a>>;

    fn solve(&self, g: &Graph, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<SolveResult<W>> {
        self.prepare(g)?.solve(w, k, obj)
    }
}

/// A graph preprocessed by a [`WeightedSolver`].
pub trait PreparedSolver<W: Scalar>: Sync {
    fn solve(&self, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<SolveResult<W>>;

    /// Optimal value only; solvers may skip witness bookkeeping.
    fn value(&self, w: &VertexWeights<W>, k: usize, obj: Objective) -> Result<W> {
        Ok(self.solve(w, k, obj)?.value)
    }
}

/// Unweighted solve with deletion set `d`.
pub fn solve_with_deletion_set<W: Scalar>(
    g: &Graph,
    d: &[usize],
    k: usize,
    obj: Objective,
    solver: &dyn WeightedSolver<W>,
) -> Result<SolveResult<W>> {
    solve_with_deletion_set_weighted(g, &VertexWeights::zeros(g.n()), d, k, obj, solver)
}

/// Weighted solve with deletion set `d`. Input weights carry over: a
/// residual vertex gets `w_v + |N(v) ∩ S|` and members of `S` contribute
/// their own weight directly.
pub fn solve_with_deletion_set_weighted<W: Scalar>(
    g: &Graph,
    w: &VertexWeights<W>,
    d: &[usize],
    k: usize,
    obj: Objective,
    solver: &dyn WeightedSolver<W>,
) -> Result<SolveResult<W>> {
    let n = g.n();
    w.check_len(n)?;
    check_k(k, n)?;
    let in_d = g.membership(d)?;
    if d.len() > MAX_DELETION_SET {
        return Err(Error::DeletionSetTooLarge {
            size: d.len(),
            max: MAX_DELETION_SET,
        });
    }
    let mut d: Vec<usize> = d.to_vec();
    d.sort_unstable();
    let rest: Vec<usize> = (0..n).filter(|&v| !in_d[v]).collect();
    let (h, mapping) = g.induced_subgraph(&rest)?;
    solver
        .check(&h)
        .map_err(|e| Error::InvalidDeletionSet(format!("residual rejected by {}: {e}", solver.name())))?;
    let prepared = solver.prepare(&h)?;

    let mut local = vec![usize::MAX; n];
    for (i, &v) in mapping.iter().enumerate() {
        local[v] = i;
    }
    let pos_in_d = |v: usize| d.binary_search(&v).ok();
    // adjacency inside D as bitmasks, and residual neighbors of each D vertex
    let d_adj: Vec<u64> = d
        .iter()
        .map(|&x| {
            g.neighbors(x)
                .iter()
                .filter_map(|&y| pos_in_d(y))
                .fold(0u64, |acc, i| acc | (1 << i))
        })
        .collect();
    let d_nbrs: Vec<Vec<usize>> = d
        .iter()
        .map(|&x| {
            g.neighbors(x)
                .iter()
                .filter(|&&y| !in_d[y])
                .map(|&y| local[y])
                .collect()
        })
        .collect();
    let base_rest = w.restrict(&mapping);
    let one = W::from_count(1);

    let instance = |mask: u64| -> (W, VertexWeights<W>) {
        let mut inside = 0u32;
        let mut s_weight = W::zero();
        let mut rw = base_rest.as_slice().to_vec();
        for i in bits(mask) {
            inside += (d_adj[i] & mask).count_ones();
            s_weight = s_weight + w.get(d[i]);
            for &y in &d_nbrs[i] {
                rw[y] = rw[y] + one;
            }
        }
        let fixed = W::from_count(inside as usize / 2) + s_weight;
        (fixed, VertexWeights::from_vec_unchecked(rw))
    };
    let feasible = |mask: u64| {
        let s = mask.count_ones() as usize;
        s <= k && k - s <= rest.len()
    };

    let best = (0..1u64 << d.len())
        .into_par_iter()
        .filter(|&mask| feasible(mask))
        .map(|mask| -> Result<Option<(W, u64)>> {
            let (fixed, rw) = instance(mask);
            let s = mask.count_ones() as usize;
            let value = prepared.value(&rw, k - s, obj)?;
            Ok(Some((fixed + value, mask)))
        })
        .try_reduce(|| None, |a, b| Ok(pick(obj, a, b)))?;
    let (value, mask) = best.expect("some subset of D is feasible whenever k <= n");

    let (fixed, rw) = instance(mask);
    let s = mask.count_ones() as usize;
    let sub = prepared.solve(&rw, k - s, obj)?;
    let mut witness: Vec<usize> = bits(mask).map(|i| d[i]).collect();
    witness.extend(sub.witness.iter().map(|&i| mapping[i]));
    witness.sort_unstable();
    debug_assert!(fixed + sub.value == value);
    Ok(SolveResult {
        value: fixed + sub.value,
        witness,
        strategy: STRATEGY,
    })
}

/// Deterministic reduction: better value wins, ties go to the smaller mask.
fn pick<W: Scalar>(obj: Objective, a: Option<(W, u64)>, b: Option<(W, u64)>) -> Option<(W, u64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if obj.improves(&y.0, &x.0) || (!obj.improves(&x.0, &y.0) && y.1 < x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

/// Maximum k-Vertex Cover through Sparsest (n-k)-Subgraph: the complement
/// of a sparsest `(n-k)`-set covers `m - value` edges, which is optimal.
/// Returns the covered edge count and the sorted cover.
pub fn max_k_vertex_cover<W, F>(g: &Graph, k: usize, sparsest: F) -> Result<(usize, Vec<usize>)>
where
    W: Scalar,
    F: FnOnce(&Graph, usize) -> Result<SolveResult<W>>,
{
    let n = g.n();
    check_k(k, n)?;
    let r = sparsest(g, n - k)?;
    let inside = r
        .value
        .to_usize()
        .expect("unweighted sparsest value is a non-negative integer");
    let keep = g.membership(&r.witness)?;
    let cover: Vec<usize> = (0..n).filter(|&v| !keep[v]).collect();
    Ok((g.m() - inside, cover))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block_dp::BlockDpSolver;
    use crate::graph::named::*;
    use crate::oracle::brute_force_solve;

    fn oracle(g: &Graph, k: usize, obj: Objective) -> i64 {
        brute_force_solve(g, &VertexWeights::zeros(g.n()), k, obj)
            .unwrap()
            .value
    }

    #[test]
    fn cycle_with_one_deleted() {
        let g = cycle(4);
        let r = solve_with_deletion_set::<i64>(&g, &[0], 3, Objective::Densest, &BlockDpSolver).unwrap();
        assert_eq!(r.value, 2);
        r.verify(&g, &VertexWeights::zeros(4)).unwrap();
    }

    #[test]
    fn empty_deletion_set_is_plain_solve() {
        let g = complete(4);
        let r = solve_with_deletion_set::<i64>(&g, &[], 2, Objective::Densest, &BlockDpSolver).unwrap();
        assert_eq!(r.value, 1);
    }

    #[test]
    fn bowtie_apex_matches_oracle() {
        let g = bowtie_apex();
        // frozen from brute force over all 4-subsets of the 6 vertices
        assert_eq!(oracle(&g, 4, Objective::Densest), 6);
        let r = solve_with_deletion_set::<i64>(&g, &[5], 4, Objective::Densest, &BlockDpSolver).unwrap();
        assert_eq!(r.value, 6);
        r.verify(&g, &VertexWeights::zeros(6)).unwrap();
        for k in 0..=6 {
            for obj in [Objective::Densest, Objective::Sparsest] {
                let r = solve_with_deletion_set::<i64>(&g, &[5], k, obj, &BlockDpSolver).unwrap();
                assert_eq!(r.value, oracle(&g, k, obj));
            }
        }
    }

    #[test]
    fn weighted_input_carries_over() {
        let g = bowtie_apex();
        let w = VertexWeights::new(vec![1i64, 0, 3, 2, 0, 4]).unwrap();
        for k in 0..=6 {
            for obj in [Objective::Densest, Objective::Sparsest] {
                let r = solve_with_deletion_set_weighted(&g, &w, &[5, 2], k, obj, &BlockDpSolver).unwrap();
                r.verify(&g, &w).unwrap();
                assert_eq!(r.value, brute_force_solve(&g, &w, k, obj).unwrap().value);
            }
        }
    }

    #[test]
    fn errors() {
        let g = cycle(5);
        let e = solve_with_deletion_set::<i64>(&g, &[], 2, Objective::Densest, &BlockDpSolver).unwrap_err();
        assert!(matches!(e, Error::InvalidDeletionSet(_)));
        let big = complete(32);
        let d: Vec<usize> = (0..31).collect();
        let e = solve_with_deletion_set::<i64>(&big, &d, 2, Objective::Densest, &BlockDpSolver).unwrap_err();
        assert!(matches!(e, Error::DeletionSetTooLarge { size: 31, max: 30 }));
        let e = solve_with_deletion_set::<i64>(&g, &[0, 0], 2, Objective::Densest, &BlockDpSolver).unwrap_err();
        assert_eq!(e, Error::DuplicateVertex(0));
        let e = solve_with_deletion_set::<i64>(&g, &[0], 6, Objective::Densest, &BlockDpSolver).unwrap_err();
        assert_eq!(e, Error::KTooLarge { k: 6, n: 5 });
    }

    #[test]
    fn weight_definition_identity() {
        // |E(S ∪ T)| = |E(S)| + |E(T)| + Σ_{v∈T} |N(v) ∩ S| for S ⊆ D, T ⊆ V \ D
        let g = bowtie_apex();
        let d = [2usize, 5];
        let rest = [0usize, 1, 3, 4];
        for smask in 0..4u32 {
            let s: Vec<usize> = (0..2).filter(|i| smask >> i & 1 == 1).map(|i| d[i]).collect();
            for tmask in 0..16u32 {
                let t: Vec<usize> = (0..4).filter(|i| tmask >> i & 1 == 1).map(|i| rest[i]).collect();
                let cross: usize = t.iter().map(|&v| s.iter().filter(|&&x| g.has_edge(v, x)).count()).sum();
                let mut st = s.clone();
                st.extend(&t);
                assert_eq!(
                    g.edge_count_within(&st).unwrap(),
                    g.edge_count_within(&s).unwrap() + g.edge_count_within(&t).unwrap() + cross
                );
            }
        }
    }

    #[test]
    fn max_vertex_cover_examples() {
        let sparsest =
            |h: &Graph, k: usize| brute_force_solve(h, &VertexWeights::<i64>::zeros(h.n()), k, Objective::Sparsest);
        assert_eq!(max_k_vertex_cover(&path(3), 1, sparsest).unwrap(), (2, vec![1]));
        assert_eq!(max_k_vertex_cover(&complete(4), 4, sparsest).unwrap().0, 6);
        // frozen from brute force over all 2-subsets of C5
        assert_eq!(max_k_vertex_cover(&cycle(5), 2, sparsest).unwrap().0, 4);
    }

    #[test]
    fn reduction_prefers_smaller_mask() {
        assert_eq!(pick(Objective::Densest, Some((3, 5)), Some((3, 2))), Some((3, 2)));
        assert_eq!(pick(Objective::Densest, Some((3, 5)), Some((4, 9))), Some((4, 9)));
        assert_eq!(pick(Objective::Sparsest, Some((3, 5)), Some((4, 1))), Some((3, 5)));
        assert_eq!(pick::<i64>(Objective::Sparsest, None, None), None);
    }
}
