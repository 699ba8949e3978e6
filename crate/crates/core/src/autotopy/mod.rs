//! The autotopy group `𝔄(L)` of a Latin square.
//!
//! For a reduced square every isotopism that keeps it reduced has the form
//! `Θ_{α,j} = (α, απⱼ⁻¹σ_{α⁻¹(1)}, απⱼ⁻¹)`, so autotopisms are found by
//! choosing `α` and `j`. The search fixes a pivot row `l` with the fewest
//! cycles, then for every `k ∈ Δ(L)` (`α(k) = 1`), `i ∈ R_k(L, l)`
//! (`α(i) = l`) and column `j` builds `T^l(L, i, j, k)`, reads the
//! candidate `α`'s off its block shifted diagonals and checks the remaining
//! rows.

mod brute;
mod matrix;
mod pivot;

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::best_pivot;
use crate::error::{Error, Result};
use crate::invariants::CycleProfile;
use crate::latin::{Isotopism, LatinSquare};
use crate::perm::{invert_raw, Permutation};

pub use brute::{autotopy_group_brute, BRUTE_FORCE_LIMIT};
pub use matrix::{
    assemble_alphas, block_shifted_diagonals, build_t, build_tl, CandidateMatrix, StructureMatrix,
};
pub use pivot::{autotopy_group_pivoted, pivot_optimize, PivotedSquare};

use matrix::PivotCycles;

/// A set of isotopisms of one order, deduplicated and sorted by `α` and
/// then the column `j = γ⁻¹(α(1))` (the `j` of `Θ_{α,j}` when the square is
/// reduced), with `β`, `γ` breaking any remaining ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutotopyGroup {
    n: usize,
    elements: Vec<Isotopism>,
}

impl AutotopyGroup {
    pub fn from_elements(n: usize, mut elements: Vec<Isotopism>) -> Result<Self> {
        if let Some(bad) = elements.iter().find(|e| e.order() != n) {
            return Err(Error::OrderMismatch {
                left: n,
                right: bad.order(),
            });
        }
        elements.sort_by(element_order);
        elements.dedup();
        Ok(AutotopyGroup { n, elements })
    }

    pub fn order_of_square(&self) -> usize {
        self.n
    }

    /// `|𝔄(L)|`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Isotopism] {
        &self.elements
    }

    pub fn contains(&self, theta: &Isotopism) -> bool {
        self.elements
            .binary_search_by(|e| element_order(e, theta))
            .is_ok()
    }

    pub fn contains_identity(&self) -> bool {
        self.elements.iter().any(Isotopism::is_identity)
    }

    /// Every pairwise product is an element.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.elements
                .iter()
                .all(|b| a.compose(b).is_ok_and(|ab| self.contains(&ab)))
        })
    }

    pub fn has_inverses(&self) -> bool {
        self.elements.iter().all(|a| self.contains(&a.inverse()))
    }

    pub fn is_group(&self) -> bool {
        self.contains_identity() && self.has_inverses() && self.is_closed()
    }

    /// Every element maps `square` to itself.
    pub fn fixes(&self, square: &LatinSquare) -> bool {
        self.elements
            .iter()
            .all(|theta| verify_autotopism(square, theta))
    }

    /// `(β, α, γ)` for every element: the group of the transposed square.
    pub fn transposed(&self) -> AutotopyGroup {
        let elements = self.elements.iter().map(Isotopism::transposed).collect();
        AutotopyGroup::from_elements(self.n, elements).expect("orders unchanged")
    }
}

fn column_of(theta: &Isotopism) -> usize {
    theta.gamma.inverse().apply(theta.alpha.apply(1))
}

fn element_order(a: &Isotopism, b: &Isotopism) -> Ordering {
    a.alpha
        .cmp(&b.alpha)
        .then_with(|| column_of(a).cmp(&column_of(b)))
        .then_with(|| a.cmp(b))
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    n: usize,
    group_order: usize,
    elements: Vec<Isotopism>,
}

impl Serialize for AutotopyGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr {
            n: self.n,
            group_order: self.len(),
            elements: self.elements.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AutotopyGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GroupRepr::deserialize(deserializer)?;
        let group =
            AutotopyGroup::from_elements(repr.n, repr.elements).map_err(D::Error::custom)?;
        if group.len() != repr.group_order {
            return Err(D::Error::custom(format!(
                "group_order is {} but {} distinct elements were listed",
                repr.group_order,
                group.len()
            )));
        }
        Ok(group)
    }
}

/// One candidate produced by the search: `α` together with `j`, `k = α⁻¹(1)`
/// and `i = α⁻¹(l)` (all 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCandidate {
    pub alpha: Permutation,
    pub j: usize,
    pub k: usize,
    pub i: usize,
}

/// Zero-based `(β, γ)` of `Θ_{α,j}`.
/// `β` and `γ` of `Θ_{α,j}` from `σ_k` (`k = α⁻¹(1)`) and `πⱼ⁻¹`, zero-based.
fn beta_gamma(sigma_k: &[usize], inv_col: &[usize], alpha: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let gamma: Vec<usize> = inv_col.iter().map(|&y| alpha[y]).collect();
    let beta: Vec<usize> = sigma_k.iter().map(|&y| gamma[y]).collect();
    (beta, gamma)
}

pub(crate) fn theta_raw(
    square: &LatinSquare,
    alpha: &[usize],
    j: usize,
) -> (Vec<usize>, Vec<usize>) {
    let k = alpha
        .iter()
        .position(|&y| y == 0)
        .expect("α is a bijection");
    beta_gamma(square.row_raw(k), &invert_raw(&square.col_raw(j)), alpha)
}

/// `Θ_{α,j} = (α, απⱼ⁻¹σ_{α⁻¹(1)}, απⱼ⁻¹)`.
pub fn theta(square: &LatinSquare, alpha: &Permutation, j: usize) -> Result<Isotopism> {
    square.require_reduced()?;
    square.check_index(j)?;
    if alpha.order() != square.order() {
        return Err(Error::OrderMismatch {
            left: square.order(),
            right: alpha.order(),
        });
    }
    let (beta, gamma) = theta_raw(square, alpha.raw(), j - 1);
    Ok(Isotopism {
        alpha: alpha.clone(),
        beta: Permutation::from_raw(beta),
        gamma: Permutation::from_raw(gamma),
    })
}

/// Row `i` of `Θ_{α,j}(L)` computed as `απⱼ⁻¹ σ_{α⁻¹(i)} σ_{α⁻¹(1)}⁻¹ πⱼ α⁻¹`.
pub fn transformed_row(
    square: &LatinSquare,
    alpha: &Permutation,
    j: usize,
    i: usize,
) -> Result<Permutation> {
    square.require_reduced()?;
    square.check_index(j)?;
    square.check_index(i)?;
    if alpha.order() != square.order() {
        return Err(Error::OrderMismatch {
            left: square.order(),
            right: alpha.order(),
        });
    }
    let pi_j = square.col_perm(j)?;
    let alpha_inv = alpha.inverse();
    let gamma = alpha.compose(&pi_j.inverse())?;
    let source = square.row_perm(alpha_inv.apply(i))?;
    let base = square.row_perm(alpha_inv.apply(1))?;
    gamma
        .compose(&source)?
        .compose(&base.inverse())?
        .compose(&gamma.inverse())
}

/// `Θ(L) = L`, checked row by row with early exit.
pub fn verify_autotopism(square: &LatinSquare, theta: &Isotopism) -> bool {
    theta.order() == square.order()
        && fixes_raw(
            square,
            theta.alpha.raw(),
            theta.beta.raw(),
            theta.gamma.raw(),
        )
}

pub(crate) fn fixes_raw(
    square: &LatinSquare,
    alpha: &[usize],
    beta: &[usize],
    gamma: &[usize],
) -> bool {
    let n = square.order();
    (0..n).all(|r| {
        let target = square.row_raw(alpha[r]);
        square
            .row_raw(r)
            .iter()
            .enumerate()
            .all(|(c, &s)| target[beta[c]] == gamma[s])
    })
}

/// The cycle-structure search over one reduced square.
pub struct CycleSearch {
    profile: CycleProfile,
    pivot: PivotCycles,
}

/// Counters from one run of [`CycleSearch`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub matrices: usize,
    pub candidates: usize,
}

impl CycleSearch {
    pub fn new(square: &LatinSquare) -> Result<Self> {
        let profile = CycleProfile::new(square)?;
        let (l, _) = best_pivot(&profile);
        let pivot = PivotCycles::new(&profile, l - 1);
        Ok(CycleSearch { profile, pivot })
    }

    /// The pivot row `l` (1-based).
    pub fn pivot_row(&self) -> usize {
        self.pivot.l + 1
    }

    pub fn profile(&self) -> &CycleProfile {
        &self.profile
    }

    /// Every `(k, i, j)` to examine, zero-based.
    fn origins(&self) -> Vec<(usize, usize, usize)> {
        let n = self.profile.order();
        let target = self.profile.row_class[self.pivot.l];
        let mut out = Vec::new();
        for k in (0..n).filter(|&k| self.profile.in_delta[k]) {
            let rel = self.profile.relative_class_raw(k).expect("k in delta");
            for i in (0..n).filter(|&i| rel[i] == target) {
                out.extend((0..n).map(|j| (k, i, j)));
            }
        }
        out
    }

    fn examine(&self, (k, i, j): (usize, usize, usize)) -> (Vec<ThetaCandidate>, usize) {
        let matrix = CandidateMatrix::build(&self.profile, &self.pivot, i, j, k);
        let alphas = matrix.assemble_raw();
        let tried = alphas.len();
        let found = alphas
            .into_iter()
            .filter(|alpha| self.fixes_all_rows(alpha, j, k))
            .map(|alpha| ThetaCandidate {
                alpha: Permutation::from_raw(alpha),
                j: j + 1,
                k: k + 1,
                i: i + 1,
            })
            .collect();
        (found, tried)
    }

    /// Checks `σᵢ = απⱼ⁻¹ σ_{α⁻¹(i)} σₖ⁻¹ πⱼ α⁻¹` for every row, in order.
    fn fixes_all_rows(&self, alpha: &[usize], j: usize, k: usize) -> bool {
        let p = &self.profile;
        let n = p.order();
        let alpha_inv = invert_raw(alpha);
        let gamma: Vec<usize> = p.inv_cols[j].iter().map(|&y| alpha[y]).collect();
        let gamma_inv = invert_raw(&gamma);
        let inv_k = &p.inv_rows[k];
        (0..n).all(|i| {
            let source = &p.rows[alpha_inv[i]];
            let target = &p.rows[i];
            (0..n).all(|x| gamma[source[inv_k[gamma_inv[x]]]] == target[x])
        })
    }

    pub fn candidates(&self, parallel: bool) -> (Vec<ThetaCandidate>, SearchStats) {
        let origins = self.origins();
        let results: Vec<(Vec<ThetaCandidate>, usize)> = if parallel {
            origins.par_iter().map(|&o| self.examine(o)).collect()
        } else {
            origins.iter().map(|&o| self.examine(o)).collect()
        };
        let stats = SearchStats {
            matrices: origins.len(),
            candidates: results.iter().map(|(_, tried)| tried).sum(),
        };
        (
            results.into_iter().flat_map(|(found, _)| found).collect(),
            stats,
        )
    }

    pub fn run(&self, parallel: bool) -> AutotopyGroup {
        self.run_with_stats(parallel).0
    }

    pub fn run_with_stats(&self, parallel: bool) -> (AutotopyGroup, SearchStats) {
        let (found, stats) = self.candidates(parallel);
        let elements = found
            .into_iter()
            .map(|c| {
                let (beta, gamma) = beta_gamma(
                    &self.profile.rows[c.k - 1],
                    &self.profile.inv_cols[c.j - 1],
                    c.alpha.raw(),
                );
                Isotopism {
                    alpha: c.alpha,
                    beta: Permutation::from_raw(beta),
                    gamma: Permutation::from_raw(gamma),
                }
            })
            .collect();
        let group = AutotopyGroup::from_elements(self.profile.order(), elements)
            .expect("elements built at the square's order");
        (group, stats)
    }
}

/// `𝔄(L)` of a reduced square by the cycle-structure search.
pub fn autotopy_group(square: &LatinSquare) -> Result<AutotopyGroup> {
    Ok(CycleSearch::new(square)?.run(false))
}

pub fn autotopy_group_parallel(square: &LatinSquare) -> Result<AutotopyGroup> {
    Ok(CycleSearch::new(square)?.run(true))
}

/// `𝔄(L)` for any square: reduce, search, and conjugate back.
pub fn autotopy_group_any(square: &LatinSquare) -> Result<AutotopyGroup> {
    transport(square, autotopy_group)
}

/// Runs `reduced_solver` on a reduced isotope of `square` and maps the
/// result back: if `Θ(L) = L'` then `𝔄(L) = Θ⁻¹ 𝔄(L') Θ`.
pub(crate) fn transport(
    square: &LatinSquare,
    reduced_solver: impl FnOnce(&LatinSquare) -> Result<AutotopyGroup>,
) -> Result<AutotopyGroup> {
    if square.is_reduced() {
        return reduced_solver(square);
    }
    let (reduced, theta) = square.reduce();
    let group = reduced_solver(&reduced)?;
    conjugate_group(&group, &theta.inverse())
}

/// `{Θ g Θ⁻¹ : g ∈ G}`.
pub fn conjugate_group(group: &AutotopyGroup, theta: &Isotopism) -> Result<AutotopyGroup> {
    if theta.order() != group.n {
        return Err(Error::OrderMismatch {
            left: group.n,
            right: theta.order(),
        });
    }
    let elements = group
        .elements
        .iter()
        .map(|g| g.conjugate(theta))
        .collect::<Result<Vec<_>>>()?;
    AutotopyGroup::from_elements(group.n, elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::jm::jm_random_indexed;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let mut v: Vec<usize> = (1..=n).collect();
        v.shuffle(rng);
        perm(&v)
    }

    #[test]
    fn elements_sorted_by_alpha_then_column() {
        let c4 = LatinSquare::cayley_cyclic(4).unwrap();
        let group = autotopy_group(&c4).unwrap();
        let keys: Vec<(Vec<usize>, usize)> = group
            .elements()
            .iter()
            .map(|t| {
                let j = (1..=4)
                    .find(|&j| theta(&c4, &t.alpha, j).unwrap() == *t)
                    .expect("every element is some theta");
                (t.alpha.images(), j)
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(group.elements().iter().all(|t| group.contains(t)));
    }

    #[test]
    fn theta_on_the_worked_square() {
        let l8 = fixtures::l8();
        let alpha = perm(&[2, 1, 8, 6, 7, 4, 5, 3]);
        let t = theta(&l8, &alpha, 2).unwrap();
        assert_eq!(l8.apply_isotopism(&t).unwrap(), l8);
        assert!(verify_autotopism(&l8, &t));

        let id = theta(&l8, &Permutation::identity(8).unwrap(), 1).unwrap();
        assert!(id.is_identity());

        let alpha6 = perm(&[1, 8, 3, 4, 7, 6, 5, 2]);
        let t6 = theta(&l8, &alpha6, 6).unwrap();
        let image = l8.apply_isotopism(&t6).unwrap();
        assert!(image.is_reduced());
        assert_ne!(image, l8);
        assert!(!verify_autotopism(&l8, &t6));
        // Rows 1 and 7 are fixed, as constructed.
        assert_eq!(image.rows()[0], l8.rows()[0]);
        assert_eq!(image.rows()[6], l8.rows()[6]);
    }

    #[test]
    fn theta_requires_reduced() {
        let mut rows = fixtures::l8().rows();
        rows.swap(3, 4);
        let sq = LatinSquare::from_grid(&rows).unwrap();
        assert_eq!(
            theta(&sq, &Permutation::identity(8).unwrap(), 1),
            Err(Error::NotReduced)
        );
    }

    #[test]
    fn transformed_row_matches_the_image() {
        let l8 = fixtures::l8();
        let alpha = perm(&[2, 1, 8, 6, 7, 4, 5, 3]);
        for i in 1..=8 {
            assert_eq!(
                transformed_row(&l8, &alpha, 2, i).unwrap(),
                l8.row_perm(i).unwrap()
            );
            let id = Permutation::identity(8).unwrap();
            assert_eq!(
                transformed_row(&l8, &id, 1, i).unwrap(),
                l8.row_perm(i).unwrap()
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for idx in 0..30 {
            let n = 2 + (idx % 9) as usize;
            let sq = jm_random_indexed(n, 99, idx, true);
            let alpha = random_perm(n, &mut rng);
            let j = 1 + idx as usize % n;
            let image = sq.apply_isotopism(&theta(&sq, &alpha, j).unwrap()).unwrap();
            assert!(image.is_reduced());
            for i in 1..=n {
                assert_eq!(
                    transformed_row(&sq, &alpha, j, i).unwrap(),
                    image.row_perm(i).unwrap()
                );
            }
        }
    }

    #[test]
    fn worked_square_group() {
        let l8 = fixtures::l8();
        let search = CycleSearch::new(&l8).unwrap();
        let (candidates, _) = search.candidates(false);
        let group = search.run(false);
        assert_eq!(group.len(), 2);
        assert!(group.contains_identity());
        let alpha = perm(&[2, 1, 8, 6, 7, 4, 5, 3]);
        assert!(group.contains(&theta(&l8, &alpha, 2).unwrap()));
        assert!(group.is_group());
        assert_eq!(candidates.len(), 2);
        for c in candidates {
            assert_eq!(c.alpha.apply(c.k), 1);
            assert_eq!(c.alpha.apply(c.i), search.pivot_row());
        }
    }

    #[test]
    fn small_groups() {
        let c5 = LatinSquare::cayley_cyclic(5).unwrap();
        assert_eq!(autotopy_group(&c5).unwrap().len(), 100);
        let one = LatinSquare::from_grid(&[[1]]).unwrap();
        assert_eq!(autotopy_group(&one).unwrap().len(), 1);
        let two = LatinSquare::cayley_cyclic(2).unwrap();
        assert_eq!(autotopy_group(&two).unwrap().len(), 4);
    }

    #[test]
    fn parallel_matches_sequential() {
        for idx in 0..10 {
            let sq = jm_random_indexed(9, 4, idx, true);
            assert_eq!(
                autotopy_group(&sq).unwrap(),
                autotopy_group_parallel(&sq).unwrap()
            );
        }
        let c6 = LatinSquare::cayley_cyclic(6).unwrap();
        assert_eq!(
            autotopy_group(&c6).unwrap(),
            autotopy_group_parallel(&c6).unwrap()
        );
    }

    #[test]
    fn unreduced_input_is_transported() {
        let l8 = fixtures::l8();
        assert_eq!(
            autotopy_group_any(&l8).unwrap(),
            autotopy_group(&l8).unwrap()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let rho = Isotopism::new(
                random_perm(8, &mut rng),
                Permutation::identity(8).unwrap(),
                Permutation::identity(8).unwrap(),
            )
            .unwrap();
            let permuted = l8.apply_isotopism(&rho).unwrap();
            let group = autotopy_group_any(&permuted).unwrap();
            assert_eq!(group.len(), 2);
            assert!(group.fixes(&permuted));
            assert_eq!(group, autotopy_group_brute_any(&permuted));
        }
    }

    fn autotopy_group_brute_any(square: &LatinSquare) -> AutotopyGroup {
        transport(square, |sq| autotopy_group_brute(sq, false)).unwrap()
    }

    #[test]
    fn conjugation_by_identity_and_sizes() {
        let g = autotopy_group(&LatinSquare::cayley_cyclic(4).unwrap()).unwrap();
        let id = Isotopism::identity(4).unwrap();
        assert_eq!(conjugate_group(&g, &id).unwrap(), g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let theta = Isotopism::new(
            random_perm(4, &mut rng),
            random_perm(4, &mut rng),
            random_perm(4, &mut rng),
        )
        .unwrap();
        let h = conjugate_group(&g, &theta).unwrap();
        assert_eq!(h.len(), g.len());
        assert!(h.is_group());
        assert!(conjugate_group(&g, &Isotopism::identity(3).unwrap()).is_err());
    }

    #[test]
    fn transpose_swaps_rows_and_columns() {
        let l8 = fixtures::l8();
        let g = autotopy_group(&l8).unwrap();
        let gt = autotopy_group(&l8.transpose()).unwrap();
        assert_eq!(g.transposed(), gt);
    }

    #[test]
    fn json_round_trip() {
        let l8 = fixtures::l8();
        let g = autotopy_group(&l8).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.starts_with("{\"n\":8,\"group_order\":2,\"elements\":[{\"alpha\":[1,2,3"));
        let back: AutotopyGroup = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(back.fixes(&l8));
        let bad = text.replace("\"group_order\":2", "\"group_order\":3");
        assert!(serde_json::from_str::<AutotopyGroup>(&bad).is_err());
    }
}
