//! Moving a pair of lines with few relative cycles into a single row.
//!
//! If `σ_s σ_r⁻¹` has few cycles, then for any `α` with `α(1) = r` the
//! square `Θ_{α,1}(L)` has row `α(s)` conjugate to `σ_s σ_r⁻¹`. Searching
//! that isotope instead of `L` shrinks the pivot row's cycle count.

use crate::error::Result;
use crate::latin::{Isotopism, LatinSquare};
use crate::perm::{invert_raw, num_cycles_raw, Permutation};

use super::{autotopy_group, conjugate_group, theta, AutotopyGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotedSquare {
    /// Reduced isotope with a row of `pivot_nu` cycles.
    pub square: LatinSquare,
    /// Maps the base square (`L`, or `Lᵀ` when `transposed`) onto `square`.
    pub theta: Isotopism,
    pub pivot_nu: usize,
    pub transposed: bool,
}

/// Least `ν(σ_s σ_r⁻¹)` over row pairs `r < s`, with the pair (1-based).
fn best_relative_pair(square: &LatinSquare) -> (usize, usize, usize) {
    let n = square.order();
    let mut best = (usize::MAX, 1, 1);
    let mut map = vec![0; n];
    for r in 0..n {
        let inv_r = invert_raw(square.row_raw(r));
        for s in r + 1..n {
            let sigma_s = square.row_raw(s);
            for (x, slot) in map.iter_mut().enumerate() {
                *slot = sigma_s[inv_r[x]];
            }
            let nu = num_cycles_raw(&map);
            if nu < best.0 {
                best = (nu, r + 1, s + 1);
            }
        }
    }
    best
}

fn row_nu(square: &LatinSquare) -> usize {
    (0..square.order())
        .map(|r| num_cycles_raw(square.row_raw(r)))
        .min()
        .unwrap_or(0)
}

/// Picks the row or column pair with the fewest relative cycles. When it
/// beats `ν(L)`, returns `Θ_{(1 r),1}` applied to `L` (or to `Lᵀ` for a
/// column pair); otherwise `L` itself with the identity.
pub fn pivot_optimize(square: &LatinSquare) -> Result<PivotedSquare> {
    square.require_reduced()?;
    let n = square.order();
    let transpose = square.transpose();
    let base_nu = row_nu(square);
    let (row_best, r_row, _) = best_relative_pair(square);
    let (col_best, r_col, _) = best_relative_pair(&transpose);
    let col_nu = row_nu(&transpose);

    let row_side = row_best.min(base_nu);
    let col_side = col_best.min(col_nu);
    let (base, best, r, base_nu, transposed) = if col_side < row_side {
        (&transpose, col_best, r_col, col_nu, true)
    } else {
        (square, row_best, r_row, base_nu, false)
    };

    if n == 1 || best >= base_nu {
        return Ok(PivotedSquare {
            square: base.clone(),
            theta: Isotopism::identity(n)?,
            pivot_nu: base_nu,
            transposed,
        });
    }
    let alpha = Permutation::transposition(n, 1, r)?;
    let theta = theta(base, &alpha, 1)?;
    Ok(PivotedSquare {
        square: base.apply_isotopism(&theta)?,
        theta,
        pivot_nu: best,
        transposed,
    })
}

/// `𝔄(L)` computed on the pivot-optimised isotope and mapped back.
pub fn autotopy_group_pivoted(square: &LatinSquare) -> Result<AutotopyGroup> {
    let pivoted = pivot_optimize(square)?;
    let group = autotopy_group(&pivoted.square)?;
    let base_group = conjugate_group(&group, &pivoted.theta.inverse())?;
    Ok(if pivoted.transposed {
        base_group.transposed()
    } else {
        base_group
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::invariants::CycleProfile;
    use crate::jm::jm_random_indexed;

    #[test]
    fn cyclic_tables_pivot_to_one_cycle() {
        for n in 2..=9 {
            let c = LatinSquare::cayley_cyclic(n).unwrap();
            assert_eq!(pivot_optimize(&c).unwrap().pivot_nu, 1);
        }
    }

    #[test]
    fn pivot_never_worsens() {
        for idx in 0..40 {
            let sq = jm_random_indexed(7 + (idx % 5) as usize, 8, idx, true);
            let nu = CycleProfile::new(&sq).unwrap().nu();
            let p = pivot_optimize(&sq).unwrap();
            assert!(p.pivot_nu <= nu);
            assert!(p.square.is_reduced());
            assert_eq!(CycleProfile::new(&p.square).unwrap().nu(), p.pivot_nu);
            let base = if p.transposed {
                sq.transpose()
            } else {
                sq.clone()
            };
            assert_eq!(base.apply_isotopism(&p.theta).unwrap(), p.square);
            assert_eq!(
                autotopy_group_pivoted(&sq).unwrap(),
                autotopy_group(&sq).unwrap()
            );
        }
    }

    #[test]
    fn worked_square_round_trip() {
        let l8 = fixtures::l8();
        let g = autotopy_group_pivoted(&l8).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g, autotopy_group(&l8).unwrap());
    }
}
