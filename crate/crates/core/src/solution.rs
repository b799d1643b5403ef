use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexWeights};
use crate::scalar::Scalar;

/// Optimization direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Densest,
    Sparsest,
}

impl Objective {
    /// True when `a` is strictly better than `b`.
    #[inline]
    pub fn improves<W: PartialOrd>(self, a: &W, b: &W) -> bool {
        match self {
            Objective::Densest => a > b,
            Objective::Sparsest => a < b,
        }
    }

    /// True when candidate `a` should replace the incumbent `b`; any finite
    /// value beats the sentinel.
    #[inline]
    pub fn replaces<W: PartialOrd>(self, a: &Option<W>, b: &Option<W>) -> bool {
        match (a, b) {
            (Some(x), Some(y)) => self.improves(x, y),
            (Some(_), None) => true,
            _ => false,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Densest => "densest",
            Objective::Sparsest => "sparsest",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "densest" => Ok(Objective::Densest),
            "sparsest" => Ok(Objective::Sparsest),
            _ => Err(format!("unknown objective {s:?} (expected densest|sparsest)")),
        }
    }
}

/// Objective value plus a witness vertex set of size `k`.
///
/// `value` always equals the induced edge count of `witness` plus the sum of
/// the witness weights; [`SolveResult::verify`] recomputes it.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult<W> {
    pub value: W,
    /// Sorted vertex ids.
    pub witness: Vec<usize>,
    pub strategy: &'static str,
}

impl<W: Scalar> SolveResult<W> {
    pub fn empty(strategy: &'static str) -> Self {
        SolveResult {
            value: W::zero(),
            witness: Vec::new(),
            strategy,
        }
    }

    pub fn k(&self) -> usize {
        self.witness.len()
    }

    /// Check the recomputation invariant against `g` and `w`.
    pub fn verify(&self, g: &Graph, w: &VertexWeights<W>) -> Result<()> {
        let recomputed = objective_value(g, w, &self.witness)?;
        if recomputed != self.value {
            return Err(Error::WitnessMismatch {
                reported: self.value.to_string(),
                recomputed: recomputed.to_string(),
            });
        }
        Ok(())
    }
}

/// Induced edge count of `s` plus the weight of its members.
pub fn objective_value<W: Scalar>(g: &Graph, w: &VertexWeights<W>, s: &[usize]) -> Result<W> {
    w.check_len(g.n())?;
    let edges = g.edge_count_within(s)?;
    Ok(W::from_count(edges) + w.sum_over(s))
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn replaces_handles_sentinels() {
        let d = Objective::Densest;
        let s = Objective::Sparsest;
        assert!(d.replaces(&Some(2), &Some(1)));
        assert!(!d.replaces(&Some(1), &Some(1)));
        assert!(s.replaces(&Some(1), &Some(2)));
        assert!(s.replaces(&Some(9), &None));
        assert!(!s.replaces(&None::<i32>, &Some(0)));
    }

    #[test]
    fn verify_detects_mismatch() {
        let g = named::complete(3);
        let w = VertexWeights::new(vec![1i64, 0, 0]).unwrap();
        let mut r = SolveResult {
            value: 2,
            witness: vec![0, 1],
            strategy: "test",
        };
        assert!(r.verify(&g, &w).is_ok());
        r.value = 3;
        assert!(matches!(r.verify(&g, &w), Err(Error::WitnessMismatch { .. })));
    }
}
