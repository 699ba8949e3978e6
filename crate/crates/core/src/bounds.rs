//! Upper bounds on the size of the autotopy group, plus the counting
//! helpers they rely on. All values are arbitrary precision.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::invariants::CycleProfile;
use crate::latin::LatinSquare;
use crate::perm::raw_cycles;

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, x| acc * big(x))
}

/// `n² ∏_{t=1}^{⌊log₂ n⌋} (n − 2^{t−1})`.
pub fn bsw_bound(n: usize) -> BigUint {
    let mut value = big(n) * big(n);
    let mut power = 1;
    while power * 2 <= n {
        value *= big(n - power);
        power *= 2;
    }
    value
}

/// `n · (n − k)! · k!` where `k` rows are even permutations.
pub fn parity_bound(square: &LatinSquare) -> BigUint {
    let n = square.order();
    let even = (1..=n)
        .filter(|&i| {
            square
                .row_perm(i)
                .expect("index in range")
                .parity()
                .is_even()
        })
        .count();
    big(n) * factorial(n - even) * factorial(even)
}

/// `n² ∏ λᵢ!` over the multiplicities of the distinct row cycle structures.
pub fn cycle_partition_bound(square: &LatinSquare) -> Result<BigUint> {
    let profile = CycleProfile::new(square)?;
    Ok(partition_bound_of(&profile))
}

pub(crate) fn partition_bound_of(profile: &CycleProfile) -> BigUint {
    let n = profile.order();
    profile
        .class_sizes()
        .iter()
        .fold(big(n) * big(n), |acc, &m| acc * factorial(m))
}

/// `n · δ(L) · λ(L, l) · ∏ λ(L, C)` over the cycles `C` of `σ_l` other than
/// the one containing `l`. Takes a 1-based `l`.
pub(crate) fn pivot_bound_of(profile: &CycleProfile, l: usize) -> BigUint {
    let n = profile.order();
    let row = &profile.rows[l - 1];
    let mut value = big(n) * big(profile.delta()) * big(profile.lambda(l));
    for cycle in raw_cycles(row) {
        if cycle.contains(&(l - 1)) {
            continue;
        }
        let lam = cycle
            .iter()
            .map(|&s| profile.lambda(s + 1))
            .min()
            .expect("cycles are nonempty");
        value *= big(lam);
    }
    value
}

/// The row attaining `ν(L)` with the smallest pivot bound (lowest index on
/// ties), with that bound.
pub(crate) fn best_pivot(profile: &CycleProfile) -> (usize, BigUint) {
    let nu = profile.nu();
    (1..=profile.order())
        .filter(|&l| profile.row_nu(l) == nu)
        .map(|l| (l, pivot_bound_of(profile, l)))
        .min_by(|(la, va), (lb, vb)| va.cmp(vb).then(la.cmp(lb)))
        .expect("at least one row attains the minimum")
}

/// The pivot-row bound minimised over rows with `ν(σ_l) = ν(L)`.
/// Returns the bound and the chosen pivot row.
pub fn thm41_bound(square: &LatinSquare) -> Result<(BigUint, usize)> {
    let profile = CycleProfile::new(square)?;
    let (l, value) = best_pivot(&profile);
    Ok((value, l))
}

/// The pivot-row bound for a specific row `l`, which must attain `ν(L)`.
pub fn thm41_bound_at(square: &LatinSquare, l: usize) -> Result<BigUint> {
    square.check_index(l)?;
    let profile = CycleProfile::new(square)?;
    if profile.row_nu(l) != profile.nu() {
        return Err(Error::Precondition(format!(
            "row {l} has {} cycles, the minimum is {}",
            profile.row_nu(l),
            profile.nu()
        )));
    }
    Ok(pivot_bound_of(&profile, l))
}

/// `n · δ · λ^k` with `k` the least cycle count over all lines. When a column
/// beats every row, `δ` and `λ` are taken from the transpose.
pub fn thm51_bound(square: &LatinSquare) -> Result<BigUint> {
    Ok(thm51_parts(square)?.0)
}

fn thm51_parts(square: &LatinSquare) -> Result<(BigUint, usize)> {
    let rows = CycleProfile::new(square)?;
    let cols = CycleProfile::new(&square.transpose())?;
    let line = if cols.nu() < rows.nu() { &cols } else { &rows };
    let k = line.nu();
    let value = big(line.order()) * big(line.delta()) * num_traits::pow(big(line.lambda_max()), k);
    Ok((value, k))
}

/// `n²(n − 1)`: the bound when some line is a single cycle.
pub fn single_cycle_bound(n: usize) -> BigUint {
    big(n) * big(n) * big(n.saturating_sub(1))
}

/// `n²(n − 1)^k`: the bound when two parallel lines differ by a permutation
/// with at most `k` cycles.
pub fn thm52_bound(n: usize, k: usize) -> BigUint {
    big(n) * big(n) * num_traits::pow(big(n.saturating_sub(1)), k)
}

/// `n² |Aut(G)|`, the autotopy group order of a Cayley table of `G`.
pub fn cayley_order(n: usize, aut_size: usize) -> BigUint {
    big(n) * big(n) * big(aut_size)
}

pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Number of derangements of `n` points with exactly `k` cycles, by
/// `d(n,k) = (n−1)·d(n−1,k) + (n−1)·d(n−2,k−1)` with `d(0,0) = 1`,
/// `d(1,k) = 0` and `d(n,0) = 0` for `n ≥ 1`.
pub fn derangements_with_k_cycles(n: usize, k: usize) -> BigUint {
    // table[m][c] = d(m, c)
    let mut table = vec![vec![BigUint::zero(); k + 1]; n + 1];
    table[0][0] = BigUint::one();
    for m in 2..=n {
        for c in 0..=k {
            let mut value = &table[m - 1][c] * big(m - 1);
            if c >= 1 {
                value += &table[m - 2][c - 1] * big(m - 1);
            }
            table[m][c] = value;
        }
    }
    table[n][k].clone()
}

/// Every bound for one reduced square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub bsw: BigUint,
    pub parity: BigUint,
    pub partition: BigUint,
    pub thm41: BigUint,
    pub thm41_pivot: usize,
    pub thm51: BigUint,
    /// Least cycle count over all lines, the exponent in `thm51`.
    pub thm51_k: usize,
}

impl BoundReport {
    pub fn compute(square: &LatinSquare) -> Result<Self> {
        let profile = CycleProfile::new(square)?;
        let (thm41_pivot, thm41) = best_pivot(&profile);
        let (thm51, thm51_k) = thm51_parts(square)?;
        Ok(BoundReport {
            n: square.order(),
            bsw: bsw_bound(square.order()),
            parity: parity_bound(square),
            partition: partition_bound_of(&profile),
            thm41,
            thm41_pivot,
            thm51,
            thm51_k,
        })
    }
}
