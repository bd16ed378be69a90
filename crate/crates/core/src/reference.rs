//! Slow, obviously-correct reference implementations.
//!
//! Everything here recomputes a quantity by exhaustive enumeration or by the
//! defining recurrence, sharing no code path with the production versions, so
//! the test suite can compare the two independently.  None of these scale:
//! they are oracles, not tools.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{CobwebPoset, IncidenceMatrix, Vertex};
use crate::tiling::{LayerGrid, SigmaPolicy};

/// Visits every partition of `{0, .., n-1}` exactly once, encoded as a
/// restricted growth string: `rgs[i]` is the block of element `i`, and each
/// new block takes the lowest unused id.
pub fn set_partitions<F: FnMut(&[usize])>(n: usize, mut visit: F) {
    fn rec<F: FnMut(&[usize])>(a: &mut [usize], i: usize, next_new: usize, visit: &mut F) {
        if i == a.len() {
            visit(a);
            return;
        }
        for v in 0..=next_new {
            a[i] = v;
            rec(a, i + 1, next_new.max(v + 1), visit);
        }
    }
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut a = vec![0usize; n];
    rec(&mut a, 1, 1, &mut visit);
}

/// Counts partitions of an `eta`-element set into exactly `kappa` blocks,
/// all of size `lambda`, by filtering the full partition list.
pub fn equal_block_partition_count(eta: usize, kappa: usize, lambda: usize) -> u64 {
    let mut count = 0u64;
    set_partitions(eta, |rgs| {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        if blocks != kappa {
            return;
        }
        let mut sizes = vec![0usize; blocks];
        for &b in rgs {
            sizes[b] += 1;
        }
        if sizes.iter().all(|&s| s == lambda) {
            count += 1;
        }
    });
    count
}

/// Pascal's rule, nothing else.
pub fn binomial_pascal(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one()];
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// Inverts an incidence matrix through the defining interval recursion
/// `mu(x,x) = 1`, `mu(x,y) = -sum of mu(x,z) over x <= z < y`, relying only
/// on the matrix being upper triangular in a linear extension.
pub fn mobius_by_interval_recursion(zeta: &IncidenceMatrix) -> Vec<Vec<BigInt>> {
    let n = zeta.order();
    let mut mu = vec![vec![BigInt::zero(); n]; n];
    for x in 0..n {
        mu[x][x] = BigInt::one();
        for y in x + 1..n {
            if zeta.get(x, y) == 0 {
                continue;
            }
            let mut acc = BigInt::zero();
            for z in x..y {
                if zeta.get(x, z) == 1 && zeta.get(z, y) == 1 {
                    acc += &mu[x][z];
                }
            }
            mu[x][y] = -acc;
        }
    }
    mu
}

/// Domination checked against explicitly materialized arcs, ignoring their
/// direction, with no appeal to the level structure.
pub fn is_dominating_by_arcs(p: &CobwebPoset, dominators: &BTreeSet<Vertex>) -> bool {
    let v = p.vertex_count();
    let mut adjacent = vec![BTreeSet::new(); v];
    for (a, b) in p.arcs() {
        let i = p.index_of(a).unwrap();
        let j = p.index_of(b).unwrap();
        adjacent[i].insert(j);
        adjacent[j].insert(i);
    }
    let chosen: BTreeSet<usize> = dominators.iter().map(|w| p.index_of(*w).unwrap()).collect();
    (0..v).all(|i| chosen.contains(&i) || adjacent[i].iter().any(|j| chosen.contains(j)))
}

/// Largest grid the partition-filter oracle will accept; Bell numbers make
/// anything bigger pointless.
pub const ORACLE_CELL_CAP: usize = 13;

/// Counts grid tilings by enumerating every set partition of the cells and
/// keeping those whose blocks are all axis-aligned sub-products with an
/// admissible shape.  Completely independent of the production backtracker.
pub fn count_tilings_by_partition_filter(grid: &LayerGrid, policy: SigmaPolicy) -> Result<u64> {
    let dims = grid.dims_usize(ORACLE_CELL_CAP).map_err(|_| {
        Error::Unsupported(format!(
            "partition-filter oracle handles at most {ORACLE_CELL_CAP} cells"
        ))
    })?;
    let eta: usize = dims.iter().product();
    let axes = dims.len();
    let Some(profile) = grid.profile_usize() else {
        return Ok(0); // a block side would exceed every axis
    };
    let mut sorted_profile = profile.clone();
    sorted_profile.sort_unstable();

    // coords[rank][axis], 1-based, in lexicographic rank order
    let mut coords = vec![vec![0usize; axes]; eta];
    for (rank, coord) in coords.iter_mut().enumerate() {
        let mut rest = rank;
        for axis in (0..axes).rev() {
            coord[axis] = rest % dims[axis] + 1;
            rest /= dims[axis];
        }
    }

    let block_is_admissible = |members: &[usize]| -> bool {
        let mut projections: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); axes];
        for &rank in members {
            for axis in 0..axes {
                projections[axis].insert(coords[rank][axis]);
            }
        }
        let volume: usize = projections.iter().map(|p| p.len()).product();
        if volume != members.len() {
            return false; // not a full sub-product of its projections
        }
        let sizes: Vec<usize> = projections.iter().map(|p| p.len()).collect();
        match policy {
            SigmaPolicy::Identity => sizes == profile,
            SigmaPolicy::Any => {
                let mut s = sizes;
                s.sort_unstable();
                s == sorted_profile
            }
        }
    };

    let mut count = 0u64;
    set_partitions(eta, |rgs| {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); blocks];
        for (rank, &b) in rgs.iter().enumerate() {
            members[b].push(rank);
        }
        if members.iter().all(|m| block_is_admissible(m)) {
            count += 1;
        }
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_are_bell_numbers() {
        let bell = [1u64, 1, 2, 5, 15, 52, 203];
        for (n, expect) in bell.iter().enumerate() {
            let mut count = 0u64;
            set_partitions(n, |_| count += 1);
            assert_eq!(count, *expect, "n={n}");
        }
    }

    #[test]
    fn rgs_strings_are_canonical() {
        set_partitions(5, |rgs| {
            assert_eq!(rgs[0], 0);
            let mut seen = 0usize;
            for &b in rgs {
                assert!(b <= seen);
                seen = seen.max(b + 1);
            }
        });
    }

    #[test]
    fn equal_block_partition_examples() {
        assert_eq!(equal_block_partition_count(4, 2, 2), 3);
        assert_eq!(equal_block_partition_count(6, 3, 2), 15);
        assert_eq!(equal_block_partition_count(6, 2, 3), 10);
        assert_eq!(equal_block_partition_count(5, 2, 2), 0);
        assert_eq!(equal_block_partition_count(0, 0, 3), 1);
    }

    #[test]
    fn pascal_rows() {
        assert_eq!(binomial_pascal(0, 0), BigInt::one());
        assert_eq!(binomial_pascal(4, 2), BigInt::from(6));
        assert_eq!(binomial_pascal(10, 5), BigInt::from(252));
        assert_eq!(binomial_pascal(5, 7), BigInt::zero());
    }

    #[test]
    fn interval_recursion_on_a_two_chain() {
        let p = crate::poset::build(&"natural".parse().unwrap(), 1).unwrap();
        let mu = mobius_by_interval_recursion(&crate::poset::incidence_matrix(&p));
        assert_eq!(mu[0][0], BigInt::one());
        assert_eq!(mu[0][1], BigInt::from(-1));
        assert_eq!(mu[1][0], BigInt::zero());
    }
}
