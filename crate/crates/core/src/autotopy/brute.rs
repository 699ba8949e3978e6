//! Exhaustive reference search: every `Θ_{α,j}` over `α ∈ Sₙ`, `j ∈ [n]`.

use crate::error::{Error, Result};
use crate::latin::{Isotopism, LatinSquare};
use crate::perm::Permutation;

use super::{fixes_raw, theta_raw, AutotopyGroup};

/// Largest order searched without the override (`8! · 8` candidates).
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// `𝔄(L)` of a reduced square by checking all `n! · n` isotopisms that keep
/// it reduced.
pub fn autotopy_group_brute(square: &LatinSquare, allow_large: bool) -> Result<AutotopyGroup> {
    square.require_reduced()?;
    let n = square.order();
    if n > BRUTE_FORCE_LIMIT && !allow_large {
        return Err(Error::OrderGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut elements = Vec::new();
    let mut alpha: Vec<usize> = (0..n).collect();
    loop {
        for j in 0..n {
            let (beta, gamma) = theta_raw(square, &alpha, j);
            if fixes_raw(square, &alpha, &beta, &gamma) {
                elements.push(Isotopism {
                    alpha: Permutation::from_raw(alpha.clone()),
                    beta: Permutation::from_raw(beta),
                    gamma: Permutation::from_raw(gamma),
                });
            }
        }
        if !next_permutation(&mut alpha) {
            break;
        }
    }
    AutotopyGroup::from_elements(n, elements)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
    v.swap(pivot, j);
    v[i..].reverse();
    true
}
