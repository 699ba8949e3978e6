//! Latin squares and isotopisms.
//!
//! Rows, columns and symbols are labelled `1..=n`. Row `i` is read as the
//! permutation `σᵢ` with `σᵢ(j) = L(i, j)`; column `j` as `πⱼ` with
//! `πⱼ(i) = L(i, j)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{cycle_structure_raw, invert_raw, CycleStructure, Permutation};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    /// Zero-based symbols, row-major.
    cells: Vec<usize>,
}

impl LatinSquare {
    /// Validates a grid of 1-based symbols.
    pub fn from_grid<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    n,
                });
            }
            for (c, &symbol) in row.iter().enumerate() {
                if symbol == 0 || symbol > n {
                    return Err(Error::SymbolOutOfRange {
                        row: r + 1,
                        col: c + 1,
                        symbol,
                        n,
                    });
                }
                cells.push(symbol - 1);
            }
        }
        let square = LatinSquare { n, cells };
        square.check_lines()?;
        Ok(square)
    }

    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<usize>) -> Self {
        let square = LatinSquare { n, cells };
        debug_assert!(square.check_lines().is_ok());
        square
    }

    fn check_lines(&self) -> Result<()> {
        let n = self.n;
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.fill(false);
            for &s in self.row_raw(r) {
                if std::mem::replace(&mut seen[s], true) {
                    return Err(Error::RepeatedInRow {
                        row: r + 1,
                        symbol: s + 1,
                    });
                }
            }
        }
        for c in 0..n {
            seen.fill(false);
            for r in 0..n {
                let s = self.cells[r * n + c];
                if std::mem::replace(&mut seen[s], true) {
                    return Err(Error::RepeatedInColumn {
                        col: c + 1,
                        symbol: s + 1,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Symbol at row `i`, column `j` (all 1-based).
    ///
    /// # Panics
    /// Panics if an index is out of range.
    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.cells[(i - 1) * self.n + (j - 1)] + 1
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.n)
            .map(|row| row.iter().map(|&s| s + 1).collect())
            .collect()
    }

    /// `σᵢ`, the `i`-th row as a permutation.
    pub fn row_perm(&self, i: usize) -> Result<Permutation> {
        self.check_index(i)?;
        Ok(Permutation::from_raw(self.row_raw(i - 1).to_vec()))
    }

    /// `πⱼ`, the `j`-th column as a permutation.
    pub fn col_perm(&self, j: usize) -> Result<Permutation> {
        self.check_index(j)?;
        Ok(Permutation::from_raw(self.col_raw(j - 1)))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if (1..=self.n).contains(&index) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    pub(crate) fn row_raw(&self, r: usize) -> &[usize] {
        &self.cells[r * self.n..(r + 1) * self.n]
    }

    pub(crate) fn col_raw(&self, c: usize) -> Vec<usize> {
        (0..self.n).map(|r| self.cells[r * self.n + c]).collect()
    }

    pub(crate) fn cell_raw(&self, r: usize, c: usize) -> usize {
        self.cells[r * self.n + c]
    }

    /// First row and first column are the identity.
    pub fn is_reduced(&self) -> bool {
        (0..self.n).all(|x| self.cell_raw(0, x) == x && self.cell_raw(x, 0) == x)
    }

    pub(crate) fn require_reduced(&self) -> Result<()> {
        if self.is_reduced() {
            Ok(())
        } else {
            Err(Error::NotReduced)
        }
    }

    /// The image `L'` with `L'(α(i), β(j)) = γ(L(i, j))`.
    pub fn apply_isotopism(&self, theta: &Isotopism) -> Result<LatinSquare> {
        if theta.order() != self.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: theta.order(),
            });
        }
        let (alpha, beta, gamma) = (theta.alpha.raw(), theta.beta.raw(), theta.gamma.raw());
        let n = self.n;
        let mut cells = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[alpha[r] * n + beta[c]] = gamma[self.cell_raw(r, c)];
            }
        }
        Ok(LatinSquare { n, cells })
    }

    /// A reduced square isotopic to `self`, with the isotopism that maps
    /// `self` onto it. Columns are permuted first so that row 1 becomes the
    /// identity, then rows so that column 1 does; symbols are left alone.
    pub fn reduce(&self) -> (LatinSquare, Isotopism) {
        let n = self.n;
        // L1(1, β(c)) = L(1, c) must equal β(c), so β = σ₁.
        let beta = Permutation::from_raw(self.row_raw(0).to_vec());
        // After the column step, column 1 of L1 reads τ(r) = L(r, β⁻¹(1)).
        let first = invert_raw(beta.raw())[0];
        let alpha = Permutation::from_raw(self.col_raw(first));
        let theta = Isotopism {
            alpha,
            beta,
            gamma: Permutation::identity_raw(n),
        };
        let reduced = self
            .apply_isotopism(&theta)
            .expect("isotopism built for this order");
        debug_assert!(reduced.is_reduced());
        (reduced, theta)
    }

    pub fn transpose(&self) -> LatinSquare {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[c * n + r] = self.cell_raw(r, c);
            }
        }
        LatinSquare { n, cells }
    }

    /// The Cayley table of the cyclic group of order `n`.
    pub fn cayley_cyclic(n: usize) -> Result<LatinSquare> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let cells = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r + c) % n))
            .collect();
        Ok(LatinSquare { n, cells })
    }

    /// Validates `table` as a Latin square whose rows are closed under
    /// composition.
    pub fn cayley_from_table<R: AsRef<[usize]>>(table: &[R]) -> Result<LatinSquare> {
        let square = LatinSquare::from_grid(table)?;
        match square.first_non_closed_pair() {
            None => Ok(square),
            Some((left, right)) => Err(Error::NotClosed { left, right }),
        }
    }

    /// True iff the set of rows, as permutations, is closed under composition.
    pub fn is_group_table(&self) -> bool {
        self.first_non_closed_pair().is_none()
    }

    fn first_non_closed_pair(&self) -> Option<(usize, usize)> {
        let n = self.n;
        let rows: HashSet<&[usize]> = (0..n).map(|r| self.row_raw(r)).collect();
        let mut product = vec![0; n];
        for a in 0..n {
            let sa = self.row_raw(a);
            for b in 0..n {
                let sb = self.row_raw(b);
                for x in 0..n {
                    product[x] = sa[sb[x]];
                }
                if !rows.contains(product.as_slice()) {
                    return Some((a + 1, b + 1));
                }
            }
        }
        None
    }

    /// Cycle structure of `σ_s ∘ σ_r⁻¹`, the map carrying row `r` onto row `s`.
    pub fn relative_cycle_structure(&self, r: usize, s: usize) -> Result<CycleStructure> {
        self.check_index(r)?;
        self.check_index(s)?;
        let inv_r = invert_raw(self.row_raw(r - 1));
        let sigma_s = self.row_raw(s - 1);
        let map: Vec<usize> = inv_r.iter().map(|&y| sigma_s[y]).collect();
        Ok(cycle_structure_raw(&map))
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatinSquare {:?}", self.rows())
    }
}

/// Text form: the order on the first line, then one row per line.
impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|s| (s + 1).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Content lines of a text file with their 1-based line numbers; blank
/// lines and `#` comments are skipped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((idx + 1, line))
    })
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a positive integer")))
        })
        .collect()
}

impl FromStr for LatinSquare {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first_no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input, expected the order"))?;
        let n = match parse_numbers(first_no, first)?.as_slice() {
            [n] if *n >= 1 => *n,
            _ => return Err(Error::parse(first_no, "expected a single positive order")),
        };
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| Error::parse(first_no, format!("expected {n} rows, found {r}")))?;
            let row = parse_numbers(line_no, line)?;
            if row.len() != n {
                return Err(Error::parse(
                    line_no,
                    format!("row {} has {} entries, expected {n}", r + 1, row.len()),
                ));
            }
            if let Some(&bad) = row.iter().find(|&&s| s == 0 || s > n) {
                return Err(Error::parse(
                    line_no,
                    format!("symbol {bad} out of range 1..={n}"),
                ));
            }
            rows.push((line_no, row));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(
                line_no,
                "unexpected content after the last row",
            ));
        }
        let grid: Vec<Vec<usize>> = rows.iter().map(|(_, row)| row.clone()).collect();
        LatinSquare::from_grid(&grid).map_err(|err| match err {
            Error::RepeatedInRow { row, .. } => Error::parse(rows[row - 1].0, err.to_string()),
            Error::RepeatedInColumn { col, symbol } => {
                let line_no = rows
                    .iter()
                    .filter(|(_, row)| row[col - 1] == symbol)
                    .nth(1)
                    .map_or(first_no, |(line_no, _)| *line_no);
                Error::parse(line_no, err.to_string())
            }
            other => Error::parse(first_no, other.to_string()),
        })
    }
}

/// A triple `(α, β, γ)` acting on rows, columns and symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Isotopism {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl Isotopism {
    pub fn new(alpha: Permutation, beta: Permutation, gamma: Permutation) -> Result<Self> {
        for other in [&beta, &gamma] {
            if other.order() != alpha.order() {
                return Err(Error::OrderMismatch {
                    left: alpha.order(),
                    right: other.order(),
                });
            }
        }
        Ok(Isotopism { alpha, beta, gamma })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let id = Permutation::identity(n)?;
        Ok(Isotopism {
            alpha: id.clone(),
            beta: id.clone(),
            gamma: id,
        })
    }

    pub fn order(&self) -> usize {
        self.alpha.order()
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity() && self.gamma.is_identity()
    }

    /// Componentwise `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Isotopism) -> Result<Isotopism> {
        Ok(Isotopism {
            alpha: self.alpha.compose(&other.alpha)?,
            beta: self.beta.compose(&other.beta)?,
            gamma: self.gamma.compose(&other.gamma)?,
        })
    }

    pub fn inverse(&self) -> Isotopism {
        Isotopism {
            alpha: self.alpha.inverse(),
            beta: self.beta.inverse(),
            gamma: self.gamma.inverse(),
        }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate(&self, by: &Isotopism) -> Result<Isotopism> {
        by.compose(self)?.compose(&by.inverse())
    }

    /// `(β, α, γ)`: the matching isotopism of the transposed square.
    pub fn transposed(&self) -> Isotopism {
        Isotopism {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            gamma: self.gamma.clone(),
        }
    }
}

/// Text form: three lines in image notation (alpha, beta, gamma).
impl fmt::Display for Isotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in [&self.alpha, &self.beta, &self.gamma] {
            let line: Vec<String> = p.images().iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Isotopism {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut perms = Vec::with_capacity(3);
        let mut last = 1;
        for (line_no, line) in content_lines(text) {
            if perms.len() == 3 {
                return Err(Error::parse(line_no, "unexpected content after gamma"));
            }
            let images = parse_numbers(line_no, line)?;
            let p = Permutation::from_images(&images)
                .map_err(|err| Error::parse(line_no, err.to_string()))?;
            perms.push(p);
            last = line_no;
        }
        if perms.len() != 3 {
            return Err(Error::parse(
                last,
                format!("expected 3 permutation lines, found {}", perms.len()),
            ));
        }
        let gamma = perms.pop().unwrap();
        let beta = perms.pop().unwrap();
        let alpha = perms.pop().unwrap();
        Isotopism::new(alpha, beta, gamma).map_err(|err| Error::parse(last, err.to_string()))
    }
}
