use serde::Serialize;

use super::class::LineClass;
use crate::error::{Error, Result};
use crate::geometry::Geometry;

/// Membership of the (q+1)² transversals of two skew lines u, v: entry (i, j)
/// is χ of the line joining the i-th point of u to the j-th point of v.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridSlice {
    pub u: usize,
    pub v: usize,
    pub matrix: Vec<Vec<u8>>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
}

impl GridSlice {
    pub fn members(&self) -> usize {
        self.row_sums.iter().sum()
    }
}

pub fn grid_slice(g: &Geometry, c: &LineClass, u: usize, v: usize) -> Result<GridSlice> {
    c.check_geometry(g)?;
    g.check_line(u)?;
    g.check_line(v)?;
    if u == v || g.lines_meet(u, v) {
        return Err(Error::NotSkew(u, v));
    }
    let matrix: Vec<Vec<u8>> = g
        .line_points(u)
        .iter()
        .map(|&a| {
            g.line_points(v).iter().map(|&b| c.chi(g.line_through(a, b).expect("distinct points"))).collect()
        })
        .collect();
    let row_sums = matrix.iter().map(|r| r.iter().map(|&e| e as usize).sum()).collect();
    let col_sums = (0..matrix[0].len()).map(|j| matrix.iter().map(|r| r[j] as usize).sum()).collect();
    Ok(GridSlice { u, v, matrix, row_sums, col_sums })
}

/// Whether some 0/1 matrix has the given row and column sums.
pub fn gale_ryser(rows: &[usize], cols: &[usize]) -> bool {
    if rows.iter().sum::<usize>() != cols.iter().sum::<usize>() {
        return false;
    }
    let mut r = rows.to_vec();
    r.sort_unstable_by(|a, b| b.cmp(a));
    let mut lhs = 0;
    for (k, &ri) in r.iter().enumerate() {
        lhs += ri;
        let rhs: usize = cols.iter().map(|&cj| cj.min(k + 1)).sum();
        if lhs > rhs {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(gale_ryser(&[2, 1], &[2, 1]));
        assert!(!gale_ryser(&[2, 0], &[2, 0]));
        // realized by three copies of (1,1,0)
        assert!(gale_ryser(&[2, 2, 2], &[3, 3, 0]));
        assert!(!gale_ryser(&[3, 2, 1], &[3, 3, 0]));
        assert!(gale_ryser(&[], &[]));
        assert!(!gale_ryser(&[3], &[1, 1]));
        assert!(gale_ryser(&[0, 0], &[0]));
    }

    #[test]
    fn adjacent_lines_are_rejected() {
        let g = Geometry::build(3, 2).unwrap();
        let c = LineClass::empty(&g);
        let p = g.line_points(0)[0];
        let other = g.star(p).iter().copied().find(|&l| l != 0).unwrap();
        assert!(matches!(grid_slice(&g, &c, 0, other), Err(Error::NotSkew(..))));
        assert!(matches!(grid_slice(&g, &c, 0, 0), Err(Error::NotSkew(..))));
    }

    #[test]
    fn empty_class_grid_is_zero() {
        let g = Geometry::build(3, 3).unwrap();
        let c = LineClass::empty(&g);
        let v = (0..g.num_lines()).find(|&l| !g.lines_meet(0, l) && l != 0).unwrap();
        let s = grid_slice(&g, &c, 0, v).unwrap();
        assert_eq!(s.members(), 0);
        assert_eq!(s.matrix.len(), 4);
        assert!(gale_ryser(&s.row_sums, &s.col_sums));
    }
}
