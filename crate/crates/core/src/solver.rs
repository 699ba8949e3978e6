//! Named autotopy-group strategies behind one trait.
//!
//! ```
//! use latin_autotopy::solver::{SolverOptions, SolverRegistry};
//! use latin_autotopy::fixtures;
//!
//! let registry = SolverRegistry::builtin(SolverOptions::default());
//! let group = registry.get("cycle").unwrap().solve(&fixtures::l8()).unwrap();
//! assert_eq!(group.len(), 2);
//! ```

use std::collections::BTreeMap;

use crate::autotopy::{
    autotopy_group_brute, autotopy_group_pivoted, transport, AutotopyGroup, CycleSearch,
};
use crate::error::{Error, Result};
use crate::latin::LatinSquare;

pub trait AutotopySolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// `𝔄(L)` for a reduced square.
    fn solve_reduced(&self, square: &LatinSquare) -> Result<AutotopyGroup>;

    /// `𝔄(L)` for any square, via a reduced isotope.
    fn solve(&self, square: &LatinSquare) -> Result<AutotopyGroup> {
        transport(square, |reduced| self.solve_reduced(reduced))
    }
}

/// Cycle-structure search with the pivot row chosen from the rows.
#[derive(Debug, Clone, Copy, Default)]
pub struct CycleSolver {
    pub parallel: bool,
}

impl AutotopySolver for CycleSolver {
    fn name(&self) -> &'static str {
        "cycle"
    }

    fn summary(&self) -> &'static str {
        "cycle-structure search on the row with the fewest cycles"
    }

    fn solve_reduced(&self, square: &LatinSquare) -> Result<AutotopyGroup> {
        Ok(CycleSearch::new(square)?.run(self.parallel))
    }
}

/// Cycle-structure search on an isotope whose pivot row comes from the pair
/// of parallel lines with the fewest relative cycles.
#[derive(Debug, Clone, Copy, Default)]
pub struct PivotSolver;

impl AutotopySolver for PivotSolver {
    fn name(&self) -> &'static str {
        "pivot"
    }

    fn summary(&self) -> &'static str {
        "cycle-structure search after moving the best line pair into one row"
    }

    fn solve_reduced(&self, square: &LatinSquare) -> Result<AutotopyGroup> {
        autotopy_group_pivoted(square)
    }
}

/// Exhaustive check of all `n! · n` reduced-preserving isotopisms.
#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceSolver {
    pub allow_large: bool,
}

impl AutotopySolver for BruteForceSolver {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn summary(&self) -> &'static str {
        "exhaustive reference search (order 8 or less unless forced)"
    }

    fn solve_reduced(&self, square: &LatinSquare) -> Result<AutotopyGroup> {
        autotopy_group_brute(square, self.allow_large)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolverOptions {
    pub parallel: bool,
    pub allow_large: bool,
}

#[derive(Default)]
pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Box<dyn AutotopySolver>>,
}

impl SolverRegistry {
    pub const DEFAULT: &'static str = "cycle";

    pub fn new() -> Self {
        Self::default()
    }

    pub fn builtin(options: SolverOptions) -> Self {
        let mut registry = Self::new();
        registry.register(Box::new(CycleSolver {
            parallel: options.parallel,
        }));
        registry.register(Box::new(PivotSolver));
        registry.register(Box::new(BruteForceSolver {
            allow_large: options.allow_large,
        }));
        registry
    }

    /// Adds a solver, replacing any previous one of the same name.
    pub fn register(&mut self, solver: Box<dyn AutotopySolver>) {
        self.solvers.insert(solver.name(), solver);
    }

    pub fn get(&self, name: &str) -> Result<&dyn AutotopySolver> {
        self.solvers
            .get(name)
            .map(Box::as_ref)
            .ok_or_else(|| Error::UnknownSolver {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn AutotopySolver> {
        self.solvers.values().map(Box::as_ref)
    }
}
