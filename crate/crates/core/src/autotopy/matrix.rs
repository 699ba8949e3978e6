//! Candidate matrices and their block shifted diagonals.
//!
//! `T(L, k)` has a 1 at `(s, t)` when `σ_{s,k}` and `σ_t` share a cycle
//! structure: any autotopism `Θ_{α,j}` with `α(k) = 1` puts its `α` on an
//! all-1 generalized diagonal. `T^l(L, i, j, k)` refines it for a fixed
//! pivot row `l`, `α(i) = l` and column `j`: rows follow the cycles of
//! `σ_{i,j,k} = πⱼ⁻¹σ_{i,k}πⱼ`, columns the cycles of `σ_l`, and entries
//! that no such `α` can use are cleared. A valid `α` maps each row cycle
//! onto a column cycle of the same length along a shifted diagonal.

use std::fmt;

use crate::error::{Error, Result};
use crate::invariants::CycleProfile;
use crate::latin::LatinSquare;
use crate::perm::{raw_cycles, Permutation};

/// `T(L, k)` with rows and columns grouped by cycle structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMatrix {
    n: usize,
    bits: Vec<bool>,
    row_order: Vec<usize>,
    col_order: Vec<usize>,
    block_sizes: Vec<usize>,
}

impl StructureMatrix {
    /// Entry at row `s`, column `t` (original 1-based labels).
    pub fn get(&self, s: usize, t: usize) -> bool {
        self.bits[(s - 1) * self.n + (t - 1)]
    }

    /// Rows grouped by the structure of `σ_{s,k}`, 1-based.
    pub fn row_order(&self) -> &[usize] {
        &self.row_order
    }

    /// Columns grouped by the structure of `σ_t`, 1-based.
    pub fn col_order(&self) -> &[usize] {
        &self.col_order
    }

    /// Sizes of the diagonal blocks in grouped order.
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// True when, in grouped order, the 1's are exactly the diagonal blocks.
    pub fn is_block_diagonal(&self) -> bool {
        let mut block_of = vec![0; self.n];
        let mut pos = 0;
        for (b, &size) in self.block_sizes.iter().enumerate() {
            block_of[pos..pos + size].fill(b);
            pos += size;
        }
        (0..self.n).all(|r| {
            (0..self.n).all(|c| {
                self.get(self.row_order[r], self.col_order[c]) == (block_of[r] == block_of[c])
            })
        })
    }
}

/// `T(L, k)` for `k ∈ Δ(L)`.
pub fn build_t(square: &LatinSquare, k: usize) -> Result<StructureMatrix> {
    let profile = CycleProfile::new(square)?;
    let rel = profile.relative_class_for(k)?;
    let n = profile.order();
    let row_class = &profile.row_class;
    let bits = (0..n * n)
        .map(|idx| rel[idx / n] == row_class[idx % n])
        .collect();

    // Blocks ordered by (class size, first column of the class).
    let mut classes: Vec<usize> = Vec::new();
    for &c in row_class {
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    classes.sort_by_key(|&c| profile.class_size[c]);
    let group = |labels: &[usize], class: usize| -> Vec<usize> {
        (0..n)
            .filter(|&x| labels[x] == class)
            .map(|x| x + 1)
            .collect()
    };
    let mut row_order = Vec::with_capacity(n);
    let mut col_order = Vec::with_capacity(n);
    let mut block_sizes = Vec::with_capacity(classes.len());
    for &c in &classes {
        row_order.extend(group(rel, c));
        col_order.extend(group(row_class, c));
        block_sizes.push(profile.class_size[c]);
    }
    Ok(StructureMatrix {
        n,
        bits,
        row_order,
        col_order,
        block_sizes,
    })
}

/// `T^l(L, i, j, k)`. Labels in the public accessors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateMatrix {
    n: usize,
    /// Indexed by original labels, zero-based: `bits[s * n + t]`.
    bits: Vec<bool>,
    row_cycles: Vec<Vec<usize>>,
    col_cycles: Vec<Vec<usize>>,
    /// Zero-based label -> (cycle index, position in cycle).
    row_place: Vec<(usize, usize)>,
    col_place: Vec<(usize, usize)>,
    col_ones: Vec<usize>,
    origin: (usize, usize, usize, usize),
}

/// The pivot-row data reused across every matrix of one search.
pub(crate) struct PivotCycles {
    pub(crate) l: usize,
    cycles: Vec<Vec<usize>>,
    place: Vec<(usize, usize)>,
}

impl PivotCycles {
    /// `l` is zero-based.
    pub(crate) fn new(profile: &CycleProfile, l: usize) -> Self {
        let cycles = raw_cycles(&profile.rows[l]);
        let place = placements(&cycles, profile.order());
        PivotCycles { l, cycles, place }
    }
}

fn placements(cycles: &[Vec<usize>], n: usize) -> Vec<(usize, usize)> {
    let mut place = vec![(0, 0); n];
    for (ci, cycle) in cycles.iter().enumerate() {
        for (pos, &x) in cycle.iter().enumerate() {
            place[x] = (ci, pos);
        }
    }
    place
}

/// `σ_{i,j,k} = πⱼ⁻¹ σᵢ σₖ⁻¹ πⱼ`, zero-based.
pub(crate) fn sigma_ijk_raw(profile: &CycleProfile, i: usize, j: usize, k: usize) -> Vec<usize> {
    let (sigma_i, inv_k) = (&profile.rows[i], &profile.inv_rows[k]);
    let (pi_j, inv_pi_j) = (&profile.cols[j], &profile.inv_cols[j]);
    (0..profile.order())
        .map(|x| inv_pi_j[sigma_i[inv_k[pi_j[x]]]])
        .collect()
}

impl CandidateMatrix {
    /// Builds the matrix with all zero-based indices; `k` must be in `Δ(L)`.
    pub(crate) fn build(
        profile: &CycleProfile,
        pivot: &PivotCycles,
        i: usize,
        j: usize,
        k: usize,
    ) -> Self {
        let n = profile.order();
        let l = pivot.l;
        let rel = profile
            .relative_class_raw(k)
            .expect("k is in the delta set");
        let row_cycles = raw_cycles(&sigma_ijk_raw(profile, i, j, k));
        let row_place = placements(&row_cycles, n);
        let mut bits = vec![false; n * n];
        let mut col_ones = vec![0; n];
        for s in 0..n {
            let row_len = row_cycles[row_place[s].0].len();
            for t in 0..n {
                let keep = rel[s] == profile.row_class[t]
                    // α(i) = l
                    && (s == i) == (t == l)
                    // α(1) lies in Δ(L)
                    && (s != 0 || profile.in_delta[t])
                    // α(k) = 1
                    && (s == k) == (t == 0)
                    // only square blocks
                    && row_len == pivot.cycles[pivot.place[t].0].len();
                if keep {
                    bits[s * n + t] = true;
                    col_ones[t] += 1;
                }
            }
        }
        CandidateMatrix {
            n,
            bits,
            row_cycles,
            col_cycles: pivot.cycles.clone(),
            row_place,
            col_place: pivot.place.clone(),
            col_ones,
            origin: (l + 1, i + 1, j + 1, k + 1),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `(l, i, j, k)`, 1-based.
    pub fn origin(&self) -> (usize, usize, usize, usize) {
        self.origin
    }

    /// Entry at row `s`, column `t` (original 1-based labels).
    pub fn get(&self, s: usize, t: usize) -> bool {
        self.bit(s - 1, t - 1)
    }

    fn bit(&self, s: usize, t: usize) -> bool {
        self.bits[s * self.n + t]
    }

    /// Cycles of `σ_{i,j,k}` (1-based), in row order.
    pub fn row_cycles(&self) -> Vec<Vec<usize>> {
        one_based(&self.row_cycles)
    }

    /// Cycles of `σ_l` (1-based), in column order.
    pub fn col_cycles(&self) -> Vec<Vec<usize>> {
        one_based(&self.col_cycles)
    }

    pub fn row_order(&self) -> Vec<usize> {
        self.row_cycles.iter().flatten().map(|x| x + 1).collect()
    }

    pub fn col_order(&self) -> Vec<usize> {
        self.col_cycles.iter().flatten().map(|x| x + 1).collect()
    }

    /// Start offsets of the row blocks in `row_order`, with `n` appended.
    pub fn row_blocks(&self) -> Vec<usize> {
        block_offsets(&self.row_cycles)
    }

    pub fn col_blocks(&self) -> Vec<usize> {
        block_offsets(&self.col_cycles)
    }

    /// Every surviving 1 as `(row label, column label)`, 1-based, sorted.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n)
            .filter(|&idx| self.bits[idx])
            .map(|idx| (idx / n + 1, idx % n + 1))
            .collect()
    }

    fn diagonal_is_full(&self, row_cycle: usize, col_cycle: usize, offset: usize) -> bool {
        let rows = &self.row_cycles[row_cycle];
        let cols = &self.col_cycles[col_cycle];
        let m = rows.len();
        rows.iter()
            .enumerate()
            .all(|(r, &s)| self.bit(s, cols[(r + offset) % m]))
    }

    /// All-1 shifted diagonals of one column cycle, found by scanning the
    /// column of that cycle with the fewest 1's. Each entry is
    /// `(row cycle, offset)`.
    fn diagonals_through(&self, col_cycle: usize) -> Vec<(usize, usize)> {
        let cols = &self.col_cycles[col_cycle];
        let m = cols.len();
        let (cpos, &t) = cols
            .iter()
            .enumerate()
            .min_by_key(|(_, &t)| self.col_ones[t])
            .expect("cycles are nonempty");
        if self.col_ones[t] == 0 {
            return Vec::new();
        }
        (0..self.n)
            .filter(|&s| self.bit(s, t))
            .filter_map(|s| {
                let (rc, rpos) = self.row_place[s];
                let offset = (cpos + m - rpos) % m;
                self.diagonal_is_full(rc, col_cycle, offset)
                    .then_some((rc, offset))
            })
            .collect()
    }

    /// Zero-based `α` maps, one per all-1 generalized diagonal with
    /// property (*).
    pub(crate) fn assemble_raw(&self) -> Vec<Vec<usize>> {
        let mut options = Vec::with_capacity(self.col_cycles.len());
        for cc in 0..self.col_cycles.len() {
            let found = self.diagonals_through(cc);
            if found.is_empty() {
                return Vec::new();
            }
            options.push((cc, found));
        }
        options.sort_by_key(|(_, found)| found.len());

        let mut out = Vec::new();
        let mut alpha = vec![usize::MAX; self.n];
        let mut used = vec![false; self.row_cycles.len()];
        self.extend(&options, 0, &mut used, &mut alpha, &mut out);
        out
    }

    fn extend(
        &self,
        options: &[(usize, Vec<(usize, usize)>)],
        depth: usize,
        used: &mut [bool],
        alpha: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some((cc, found)) = options.get(depth) else {
            out.push(alpha.to_vec());
            return;
        };
        let cols = &self.col_cycles[*cc];
        let m = cols.len();
        for &(rc, offset) in found {
            if used[rc] {
                continue;
            }
            used[rc] = true;
            for (r, &s) in self.row_cycles[rc].iter().enumerate() {
                alpha[s] = cols[(r + offset) % m];
            }
            self.extend(options, depth + 1, used, alpha, out);
            used[rc] = false;
        }
    }
}

fn one_based(cycles: &[Vec<usize>]) -> Vec<Vec<usize>> {
    cycles
        .iter()
        .map(|c| c.iter().map(|x| x + 1).collect())
        .collect()
}

fn block_offsets(cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut offsets = vec![0];
    for c in cycles {
        offsets.push(offsets.last().unwrap() + c.len());
    }
    offsets
}

/// Rows and columns in cycle order, `1` or `.`, with `|` between column blocks.
impl fmt::Display for CandidateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.col_order();
        let col_blocks = self.col_blocks();
        let width = self.n.to_string().len();
        write!(f, "{:width$} ", "")?;
        for (c, label) in cols.iter().enumerate() {
            if c > 0 && col_blocks.contains(&c) {
                f.write_str("|")?;
            }
            write!(f, " {label:>width$}")?;
        }
        writeln!(f)?;
        for s in self.row_order() {
            write!(f, "{s:>width$} ")?;
            for (c, &t) in cols.iter().enumerate() {
                if c > 0 && col_blocks.contains(&c) {
                    f.write_str("|")?;
                }
                let mark = if self.get(s, t) { "1" } else { "." };
                write!(f, " {mark:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `T^l(L, i, j, k)` with the preconditions checked: `L` reduced,
/// `k ∈ Δ(L)`, `i ∈ R_k(L, l)`. All arguments 1-based.
pub fn build_tl(
    square: &LatinSquare,
    l: usize,
    i: usize,
    j: usize,
    k: usize,
) -> Result<CandidateMatrix> {
    for index in [l, i, j, k] {
        square.check_index(index)?;
    }
    let profile = CycleProfile::new(square)?;
    if !profile.r_set(k, l)?.contains(&i) {
        return Err(Error::Precondition(format!(
            "row {i} is not in R_{k}(L, {l})"
        )));
    }
    let pivot = PivotCycles::new(&profile, l - 1);
    Ok(CandidateMatrix::build(
        &profile,
        &pivot,
        i - 1,
        j - 1,
        k - 1,
    ))
}

/// Offsets `t` (zero-based) for which the shifted diagonal
/// `{(r, r + t mod m)}` of the block (row cycle, column cycle) is all 1's,
/// positions taken along the cycles. Cycle indices are zero-based positions
/// in [`CandidateMatrix::row_cycles`] and [`CandidateMatrix::col_cycles`].
pub fn block_shifted_diagonals(
    matrix: &CandidateMatrix,
    row_cycle: usize,
    col_cycle: usize,
) -> Result<Vec<usize>> {
    let (Some(rows), Some(cols)) = (
        matrix.row_cycles.get(row_cycle),
        matrix.col_cycles.get(col_cycle),
    ) else {
        return Err(Error::Precondition(format!(
            "block ({row_cycle}, {col_cycle}) does not exist"
        )));
    };
    if rows.len() != cols.len() {
        return Err(Error::Precondition(format!(
            "block ({row_cycle}, {col_cycle}) is {}x{}, not square",
            rows.len(),
            cols.len()
        )));
    }
    Ok((0..rows.len())
        .filter(|&t| matrix.diagonal_is_full(row_cycle, col_cycle, t))
        .collect())
}

/// Every `α` whose diagonal in the matrix is all 1's and meets each block
/// in nothing or a full shifted diagonal.
pub fn assemble_alphas(matrix: &CandidateMatrix) -> Vec<Permutation> {
    matrix
        .assemble_raw()
        .into_iter()
        .map(Permutation::from_raw)
        .collect()
}
