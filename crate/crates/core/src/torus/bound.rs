//! Generator count bound `dim(G/G₂) + d₁ + t` for dense subgroups of a
//! connected Lie group `G`, against the general bound `dim G + d₁`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorBound {
    /// `dim(G/G₂) + d₁ + t`
    pub refined: usize,
    /// `dim G + d₁`
    pub headline: usize,
    pub refined_is_smaller: bool,
    /// `2 · dim G`
    pub twice_dim: usize,
}

/// `dim_g`: `dim G`; `d1`: dimension of the largest Euclidean quotient;
/// `dim_metabelian_quotient`: `dim(G/G₂)`; `t`: generators needed for the Lie
/// algebra of the perfect part.
pub fn generator_bound(
    dim_g: usize,
    d1: usize,
    dim_metabelian_quotient: usize,
    t: usize,
) -> Result<GeneratorBound> {
    let meta = dim_metabelian_quotient;
    if d1 > meta {
        return Err(Error::InvalidArgument(format!(
            "d1 = {d1} exceeds dim(G/G2) = {meta}"
        )));
    }
    if meta > dim_g {
        return Err(Error::InvalidArgument(format!(
            "dim(G/G2) = {meta} exceeds dim G = {dim_g}"
        )));
    }
    if t > dim_g - meta {
        return Err(Error::InvalidArgument(format!(
            "t = {t} exceeds dim G - dim(G/G2) = {}",
            dim_g - meta
        )));
    }
    let refined = meta + d1 + t;
    let headline = dim_g + d1;
    Ok(GeneratorBound {
        refined,
        headline,
        refined_is_smaller: refined < headline,
        twice_dim: 2 * dim_g,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GroupExample {
    pub name: &'static str,
    pub dim: usize,
    pub d1: usize,
    pub metabelian_quotient_dim: usize,
    pub t: usize,
}

impl GroupExample {
    pub fn bound(&self) -> Result<GeneratorBound> {
        generator_bound(self.dim, self.d1, self.metabelian_quotient_dim, self.t)
    }
}

const fn example(
    name: &'static str,
    dim: usize,
    d1: usize,
    metabelian_quotient_dim: usize,
    t: usize,
) -> GroupExample {
    GroupExample {
        name,
        dim,
        d1,
        metabelian_quotient_dim,
        t,
    }
}

/// Connected non-abelian Lie groups with their invariants. Semisimple Lie
/// algebras are 2-generated, so `t = 2` whenever the perfect part is
/// nontrivial.
pub const NON_ABELIAN_EXAMPLES: &[GroupExample] = &[
    example("Heisenberg H3", 3, 2, 3, 0),
    example("Heisenberg H5", 5, 4, 5, 0),
    example("ax+b group", 2, 1, 2, 0),
    example("Sol = R^2 x| R", 3, 1, 3, 0),
    example("SE(2) = R^2 x| SO(2)", 3, 0, 3, 0),
    example("4-dim filiform (Engel)", 4, 2, 4, 0),
    example("SL2(R)", 3, 0, 0, 2),
    example("SU(2) x SU(2)", 6, 0, 0, 2),
    example("GL2+(R) = SL2(R) x R", 4, 1, 1, 2),
    example("U(2)", 4, 0, 1, 2),
    example("(SL2(R)~ x T^3)/Z", 6, 0, 3, 2),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_space_gives_twice_the_dimension() {
        for d in 1..10 {
            let b = generator_bound(d, d, d, 0).unwrap();
            assert_eq!(b.refined, 2 * d);
            assert_eq!(b.headline, 2 * d);
            assert!(!b.refined_is_smaller);
        }
    }

    #[test]
    fn spec_examples() {
        assert_eq!(generator_bound(3, 0, 0, 2).unwrap().refined, 2);
        let h = generator_bound(3, 2, 3, 0).unwrap();
        assert_eq!(h.refined, 5);
        assert!(h.refined < h.twice_dim);
    }

    #[test]
    fn rejects_inconsistent_invariants() {
        assert!(generator_bound(3, 4, 3, 0).is_err());
        assert!(generator_bound(3, 1, 4, 0).is_err());
        assert!(generator_bound(3, 1, 2, 2).is_err());
    }

    #[test]
    fn fixture_table_beats_twice_dim() {
        for ex in NON_ABELIAN_EXAMPLES {
            let b = ex.bound().unwrap();
            assert!(b.refined < b.twice_dim, "{}", ex.name);
        }
    }
}
