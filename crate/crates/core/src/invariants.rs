//! Cycle-structure invariants of a reduced square.
//!
//! * `ν(L)`: least number of cycles of a row permutation.
//! * `λ(L, k)`: number of rows sharing the cycle structure of row `k`.
//! * `Δ(L)`: the rows `k` for which `{σᵢσₖ⁻¹}ᵢ` has the same multiset of
//!   cycle structures as `{σᵢ}ᵢ`; `δ(L) = |Δ(L)|`.
//! * `R_k(L, t)`: rows `i` where `σᵢσₖ⁻¹` has the structure of `σ_t`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::perm::{cycle_structure_raw, invert_raw, num_cycles_raw, CycleStructure, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareInvariants {
    pub n: usize,
    pub nu: usize,
    /// Rows attaining `nu`, ascending.
    pub nu_rows: Vec<usize>,
    /// `lambda_per_row[k - 1] = λ(L, k)`.
    pub lambda_per_row: Vec<usize>,
    pub lambda_max: usize,
    pub delta_set: Vec<usize>,
    pub delta: usize,
}

impl SquareInvariants {
    pub fn lambda(&self, k: usize) -> usize {
        self.lambda_per_row[k - 1]
    }
}

/// Cached row data shared by the invariants, the bounds and the search.
/// All indices stored here are zero-based.
#[derive(Debug, Clone)]
pub struct CycleProfile {
    n: usize,
    pub(crate) rows: Vec<Vec<usize>>,
    pub(crate) inv_rows: Vec<Vec<usize>>,
    pub(crate) cols: Vec<Vec<usize>>,
    pub(crate) inv_cols: Vec<Vec<usize>>,
    pub(crate) row_nu: Vec<usize>,
    /// Structure class of each row.
    pub(crate) row_class: Vec<usize>,
    classes: Vec<CycleStructure>,
    pub(crate) class_size: Vec<usize>,
    pub(crate) in_delta: Vec<bool>,
    /// For `k` in `Δ(L)`, the class of `σᵢσₖ⁻¹` for every `i`.
    relative_class: Vec<Option<Vec<usize>>>,
}

impl CycleProfile {
    pub fn new(square: &LatinSquare) -> Result<Self> {
        square.require_reduced()?;
        let n = square.order();
        let rows: Vec<Vec<usize>> = (0..n).map(|r| square.row_raw(r).to_vec()).collect();
        let inv_rows: Vec<Vec<usize>> = rows.iter().map(|r| invert_raw(r)).collect();
        let cols: Vec<Vec<usize>> = (0..n).map(|c| square.col_raw(c)).collect();
        let inv_cols = cols.iter().map(|c| invert_raw(c)).collect();
        let row_nu = rows.iter().map(|r| num_cycles_raw(r)).collect();

        let mut index: HashMap<CycleStructure, usize> = HashMap::new();
        let mut classes = Vec::new();
        let mut class_size = Vec::new();
        let row_class = rows
            .iter()
            .map(|r| {
                let structure = cycle_structure_raw(r);
                let id = *index.entry(structure.clone()).or_insert_with(|| {
                    classes.push(structure);
                    class_size.push(0);
                    classes.len() - 1
                });
                class_size[id] += 1;
                id
            })
            .collect();

        let mut profile = CycleProfile {
            n,
            rows,
            inv_rows,
            cols,
            inv_cols,
            row_nu,
            row_class,
            classes,
            class_size,
            in_delta: vec![false; n],
            relative_class: vec![None; n],
        };
        for k in 0..n {
            if let Some(rel) = profile.relative_classes(k, &index) {
                profile.in_delta[k] = true;
                profile.relative_class[k] = Some(rel);
            }
        }
        Ok(profile)
    }

    /// Classes of `σᵢσₖ⁻¹` when their multiset matches the rows', else `None`.
    fn relative_classes(
        &self,
        k: usize,
        index: &HashMap<CycleStructure, usize>,
    ) -> Option<Vec<usize>> {
        let inv_k = &self.inv_rows[k];
        let mut remaining = self.class_size.clone();
        let mut out = Vec::with_capacity(self.n);
        let mut map = vec![0; self.n];
        for row in &self.rows {
            for (x, slot) in map.iter_mut().enumerate() {
                *slot = row[inv_k[x]];
            }
            let class = *index.get(&cycle_structure_raw(&map))?;
            remaining[class] = remaining[class].checked_sub(1)?;
            out.push(class);
        }
        Some(out)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> usize {
        self.row_nu.iter().copied().min().unwrap_or(0)
    }

    /// `ν(σᵢ)` for the 1-based row `i`.
    pub fn row_nu(&self, i: usize) -> usize {
        self.row_nu[i - 1]
    }

    pub fn row_structure(&self, i: usize) -> &CycleStructure {
        &self.classes[self.row_class[i - 1]]
    }

    /// `λ(L, k)` for the 1-based row `k`.
    pub fn lambda(&self, k: usize) -> usize {
        self.class_size[self.row_class[k - 1]]
    }

    pub fn lambda_max(&self) -> usize {
        self.class_size.iter().copied().max().unwrap_or(0)
    }

    /// Multiplicities of the distinct row cycle structures.
    pub fn class_sizes(&self) -> &[usize] {
        &self.class_size
    }

    pub fn in_delta(&self, k: usize) -> bool {
        (1..=self.n).contains(&k) && self.in_delta[k - 1]
    }

    pub fn delta_set(&self) -> Vec<usize> {
        (1..=self.n).filter(|&k| self.in_delta[k - 1]).collect()
    }

    pub fn delta(&self) -> usize {
        self.in_delta.iter().filter(|&&b| b).count()
    }

    /// Zero-based classes of `σᵢσₖ⁻¹` for a zero-based `k ∈ Δ(L)`.
    pub(crate) fn relative_class_raw(&self, k: usize) -> Option<&[usize]> {
        self.relative_class[k].as_deref()
    }

    /// `R_k(L, t)`, 1-based.
    pub fn r_set(&self, k: usize, t: usize) -> Result<Vec<usize>> {
        self.check_index(t)?;
        let rel = self.relative_class_for(k)?;
        let target = self.row_class[t - 1];
        Ok((1..=self.n).filter(|&i| rel[i - 1] == target).collect())
    }

    pub(crate) fn relative_class_for(&self, k: usize) -> Result<&[usize]> {
        self.check_index(k)?;
        self.relative_class_raw(k - 1)
            .ok_or(Error::NotInDelta { k })
    }

    /// `λ(L, C) = min over s in C of λ(L, s)`.
    pub fn lambda_cycle(&self, cycle: &[usize]) -> Result<usize> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        cycle
            .iter()
            .map(|&s| self.check_index(s).map(|_| self.lambda(s)))
            .try_fold(usize::MAX, |acc, lam| lam.map(|l| acc.min(l)))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if (1..=self.n).contains(&index) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    pub fn invariants(&self) -> SquareInvariants {
        let nu = self.nu();
        let lambda_per_row: Vec<usize> = (1..=self.n).map(|k| self.lambda(k)).collect();
        let delta_set = self.delta_set();
        SquareInvariants {
            n: self.n,
            nu,
            nu_rows: (1..=self.n).filter(|&i| self.row_nu(i) == nu).collect(),
            lambda_max: self.lambda_max(),
            delta: delta_set.len(),
            delta_set,
            lambda_per_row,
        }
    }
}

pub fn compute_invariants(square: &LatinSquare) -> Result<SquareInvariants> {
    Ok(CycleProfile::new(square)?.invariants())
}

/// `σ_{i,k} = σᵢ ∘ σₖ⁻¹`.
pub fn sigma_ik(square: &LatinSquare, i: usize, k: usize) -> Result<Permutation> {
    square.row_perm(i)?.compose(&square.row_perm(k)?.inverse())
}

/// `R_k(L, t)`; `k` must lie in `Δ(L)`.
pub fn r_set(square: &LatinSquare, k: usize, t: usize) -> Result<Vec<usize>> {
    CycleProfile::new(square)?.r_set(k, t)
}

pub fn lambda_cycle(square: &LatinSquare, cycle: &[usize]) -> Result<usize> {
    CycleProfile::new(square)?.lambda_cycle(cycle)
}
