//! Named squares used throughout the tests and the CLI examples.

use crate::latin::LatinSquare;
use crate::perm::Permutation;

/// The reduced order-8 square whose only nontrivial autotopism is
/// `Θ_{α,2}` with `α = [2,1,8,6,7,4,5,3]`.
pub const L8_ROWS: [[usize; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, 1, 4, 6, 8, 7, 5, 3],
    [3, 4, 1, 2, 6, 5, 8, 7],
    [4, 5, 8, 7, 3, 2, 1, 6],
    [5, 7, 6, 1, 4, 8, 3, 2],
    [6, 8, 5, 3, 7, 1, 2, 4],
    [7, 6, 2, 8, 1, 3, 4, 5],
    [8, 3, 7, 5, 2, 4, 6, 1],
];

pub fn l8() -> LatinSquare {
    LatinSquare::from_grid(&L8_ROWS).expect("fixture is a Latin square")
}

pub fn klein_four() -> LatinSquare {
    LatinSquare::from_grid(&[[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]])
        .expect("fixture is a Latin square")
}

/// Cayley table of a group given by its elements as permutations, which
/// must be closed under composition. Element `i` (1-based) is
/// `elements[i - 1]`; put the identity first to get a reduced table.
///
/// # Panics
/// Panics if the elements are not closed under composition.
pub fn cayley_of_permutations(elements: &[Permutation]) -> LatinSquare {
    let rows: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let ab = a.compose(b).expect("equal orders");
                    elements
                        .iter()
                        .position(|c| *c == ab)
                        .expect("elements closed under composition")
                        + 1
                })
                .collect()
        })
        .collect();
    LatinSquare::cayley_from_table(&rows).expect("group table")
}

/// Cayley table of the symmetric group on three points (order 6).
pub fn symmetric3() -> LatinSquare {
    let elements: Vec<Permutation> = [
        [1, 2, 3],
        [2, 1, 3],
        [3, 2, 1],
        [1, 3, 2],
        [2, 3, 1],
        [3, 1, 2],
    ]
    .iter()
    .map(|images| Permutation::from_images(images).unwrap())
    .collect();
    cayley_of_permutations(&elements)
}
