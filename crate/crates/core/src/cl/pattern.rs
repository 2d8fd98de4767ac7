//! Pattern matrices: for a line u, the (q+1)×(q+1) matrix of class members in
//! each pencil through u (u itself excluded), rows indexed by the points of u and
//! columns by the planes through u. Patterns are compared up to row and column
//! permutations and transposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Equality and ordering look at `(q, chi, entries)` only.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PatternRepr", into = "PatternRepr")]
pub struct Pattern {
    q: usize,
    chi: u8,
    entries: Vec<u32>,
    canonical: bool,
}

impl Pattern {
    fn key(&self) -> (usize, u8, &[u32]) {
        (self.q, self.chi, &self.entries)
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Pattern {}

impl std::hash::Hash for Pattern {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Serialize, Deserialize)]
struct PatternRepr {
    q: usize,
    chi: u8,
    #[serde(default)]
    canonical: bool,
    rows: Vec<Vec<u32>>,
}

impl From<Pattern> for PatternRepr {
    fn from(p: Pattern) -> Self {
        PatternRepr { q: p.q, chi: p.chi, canonical: p.canonical, rows: p.rows() }
    }
}

impl TryFrom<PatternRepr> for Pattern {
    type Error = Error;

    fn try_from(r: PatternRepr) -> Result<Self> {
        let p = Pattern::new(r.q, r.chi, &r.rows)?;
        // the flag is a claim about the entries; recompute rather than trust it
        Ok(if r.canonical { p.canonical() } else { p })
    }
}

/// Which of the four local identities a pattern satisfies for a given x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternIdentities {
    pub entries_in_range: bool,
    pub total: bool,
    pub row_column: bool,
    pub squares: bool,
}

impl PatternIdentities {
    pub fn all(&self) -> bool {
        self.entries_in_range && self.total && self.row_column && self.squares
    }
}

/// Σt required by the pattern of a line with membership `chi`.
pub fn required_total(q: usize, x: usize, chi: u8) -> i64 {
    let (q, x, chi) = (q as i64, x as i64, chi as i64);
    x * (q + 1) + chi * (q * q - 1)
}

/// Σt² required by the pattern of a line with membership `chi`.
pub fn required_square_sum(q: usize, x: usize, chi: u8) -> i64 {
    let (q, x, chi) = (q as i64, x as i64, chi as i64);
    (x - chi) * (x - chi) + q * (x - chi) + chi * q * q * (q + 1)
}

/// Entry forced by a row sum and a column sum:
/// `row + col = x + (q+1)·t + (q-1)·chi`. `None` if not a nonnegative integer.
pub fn reconstruct_entry(q: usize, x: usize, chi: u8, row: u32, col: u32) -> Option<u32> {
    let num = row as i64 + col as i64 - x as i64 - (q as i64 - 1) * chi as i64;
    (num >= 0 && num % (q as i64 + 1) == 0).then(|| (num / (q as i64 + 1)) as u32)
}

impl Pattern {
    pub fn new(q: usize, chi: u8, rows: &[Vec<u32>]) -> Result<Self> {
        let size = q + 1;
        if chi > 1 || rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(Error::Malformed(format!("pattern must be {size}×{size} with chi in {{0,1}}")));
        }
        Ok(Pattern { q, chi, entries: rows.concat(), canonical: false })
    }

    pub(crate) fn from_entries(q: usize, chi: u8, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), (q + 1) * (q + 1));
        Pattern { q, chi, entries, canonical: false }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn chi(&self) -> u8 {
        self.chi
    }

    pub fn size(&self) -> usize {
        self.q + 1
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.size() + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.size()).map(<[u32]>::to_vec).collect()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.chunks(self.size()).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        let s = self.size();
        (0..s).map(|j| (0..s).map(|i| self.entry(i, j)).sum()).collect()
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn square_sum(&self) -> u64 {
        self.entries.iter().map(|&t| (t as u64) * (t as u64)).sum()
    }

    /// Sizes of the maximal cliques through the line: row and column sums plus chi.
    pub fn clique_values(&self) -> Vec<u32> {
        let chi = self.chi as u32;
        self.row_sums().into_iter().chain(self.col_sums()).map(|v| v + chi).collect()
    }

    pub fn transpose(&self) -> Pattern {
        let s = self.size();
        let entries = (0..s * s).map(|k| self.entry(k % s, k / s)).collect();
        Pattern { q: self.q, chi: self.chi, entries, canonical: false }
    }

    /// Lexicographic minimum (row-major) over all row permutations, column
    /// permutations and transposition.
    pub fn canonical(&self) -> Pattern {
        if self.canonical {
            return self.clone();
        }
        let s = self.size();
        let mut best: Option<Vec<u32>> = None;
        for m in [self.clone(), self.transpose()] {
            for perm in permutations(s) {
                // with the row order fixed, sorting the columns as vectors gives the
                // smallest row-major flattening
                let mut cols: Vec<Vec<u32>> =
                    (0..s).map(|j| perm.iter().map(|&i| m.entry(i, j)).collect()).collect();
                cols.sort_unstable();
                let flat: Vec<u32> = (0..s * s).map(|k| cols[k % s][k / s]).collect();
                if best.as_ref().is_none_or(|b| flat < *b) {
                    best = Some(flat);
                }
            }
        }
        Pattern { q: self.q, chi: self.chi, entries: best.unwrap(), canonical: true }
    }

    pub fn identities(&self, x: usize) -> PatternIdentities {
        let s = self.size();
        let rows = self.row_sums();
        let cols = self.col_sums();
        let row_column = (0..s).all(|k| {
            (0..s).all(|l| reconstruct_entry(self.q, x, self.chi, rows[k], cols[l]) == Some(self.entry(k, l)))
        });
        PatternIdentities {
            entries_in_range: self.entries.iter().all(|&t| t as usize <= self.q),
            total: self.total() as i64 == required_total(self.q, x, self.chi),
            row_column,
            squares: self.square_sum() as i64 == required_square_sum(self.q, x, self.chi),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.size()).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w1() -> Pattern {
        Pattern::new(
            4,
            1,
            &[vec![0; 5], vec![1; 5], vec![3; 5], vec![3; 5], vec![3; 5]],
        )
        .unwrap()
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(5).len(), 120);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn shape_is_validated() {
        assert!(Pattern::new(4, 0, &vec![vec![0; 5]; 4]).is_err());
        assert!(Pattern::new(4, 2, &vec![vec![0; 5]; 5]).is_err());
    }

    #[test]
    fn member_pattern_identities() {
        let p = w1();
        assert_eq!(p.total(), 50);
        assert_eq!(p.square_sum(), 140);
        assert!(p.identities(7).all());
        assert!(!p.identities(6).all());
    }

    #[test]
    fn canonical_form_of_w1_puts_zero_row_first() {
        let c = w1().transpose().canonical();
        assert!(c.is_canonical());
        assert_eq!(c.rows()[0], vec![0; 5]);
        assert_eq!(c, w1().canonical());
    }

    #[test]
    fn json_shape() {
        let text = serde_json::to_string(&w1()).unwrap();
        assert!(text.starts_with(r#"{"q":4,"chi":1,"canonical":false,"rows":[[0,0,0,0,0],"#));
        let back: Pattern = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w1());
    }
}
