//! The projective space PG(n,q) with every subspace in canonical form.
//!
//! A subspace of projective dimension `d` is stored as the reduced row echelon
//! basis of the corresponding `(d+1)`-dimensional vector subspace of GF(q)^(n+1).
//! Within one dimension, subspaces are indexed by the lexicographic order of their
//! flattened basis codes; those indices are the stable identifiers used in class
//! files and certificates.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::algebra::{make_extension, make_field, FieldTable};
use crate::error::{Error, Result};

pub const MAX_LINES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    n: usize,
    dim: usize,
    coords: Vec<u8>,
}

impl Subspace {
    /// Ambient projective dimension.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Projective dimension (0 = point, 1 = line, ...).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major RREF basis, `(dim+1) × (n+1)` codes.
    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.coords.chunks(self.n + 1)
    }

    /// Canonical subspace spanned by `rows`; `None` if they are all zero.
    pub fn spanned_by(field: &FieldTable, n: usize, rows: &[Vec<u8>]) -> Option<Subspace> {
        let basis = rref(field, rows.to_vec());
        if basis.is_empty() {
            return None;
        }
        Some(Subspace { n, dim: basis.len() - 1, coords: basis.concat() })
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// Reduced row echelon form over `field`; zero rows are dropped.
pub fn rref(field: &FieldTable, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = field.inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = field.mul(*v, scale);
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            let pivot_row = rows[rank].clone();
            for (e, &v) in rows[r].iter_mut().zip(&pivot_row) {
                *e = field.sub(*e, field.mul(factor, v));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Identifies a subspace of a built geometry: projective dimension plus canonical
/// index. `dim == n` refers to the whole space (index 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubspaceId {
    pub dim: usize,
    pub index: usize,
}

impl SubspaceId {
    pub fn point(index: usize) -> Self {
        SubspaceId { dim: 0, index }
    }
    pub fn line(index: usize) -> Self {
        SubspaceId { dim: 1, index }
    }
    pub fn plane(index: usize) -> Self {
        SubspaceId { dim: 2, index }
    }
}

impl fmt::Display for SubspaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-space #{}", self.dim, self.index)
    }
}

/// Membership mask over the global point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    mask: FixedBitSet,
}

impl PointSet {
    pub fn new(num_points: usize) -> Self {
        PointSet { mask: FixedBitSet::with_capacity(num_points) }
    }

    pub fn from_indices(num_points: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = PointSet::new(num_points);
        for i in indices {
            if i >= num_points {
                return Err(Error::IndexOutOfRange { kind: "point", index: i, max: num_points - 1 });
            }
            s.mask.insert(i);
        }
        Ok(s)
    }

    pub fn contains(&self, p: usize) -> bool {
        self.mask.contains(p)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        self.mask.ones().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockingVerdict {
    pub is_blocking: bool,
    pub is_trivial: bool,
}

#[derive(Debug)]
struct Level {
    subspaces: Vec<Subspace>,
    points: Vec<Vec<usize>>,
    lines: Vec<Vec<usize>>,
}

/// PG(n,q) with all subspaces enumerated and incidences precomputed.
#[derive(Debug)]
pub struct Geometry {
    n: usize,
    q: usize,
    field: FieldTable,
    levels: Vec<Level>,
    point_lookup: Vec<u32>,
    line_through: Vec<u32>,
    star: Vec<Vec<usize>>,
    planes_through_line: Vec<Vec<usize>>,
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as usize
}

/// `θ_d = q^d + … + q + 1`, the number of points of PG(d,q); `θ_{-1} = 0`.
pub fn theta(d: i64, q: usize) -> i64 {
    if d < 0 {
        return 0;
    }
    (0..=d).map(|i| (q as i64).pow(i as u32)).sum()
}

/// Parses a `PG(n,q)` descriptor.
pub fn parse_descriptor(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Malformed(format!("geometry descriptor `{s}` (expected PG(n,q))"));
    let inner = s.trim().strip_prefix("PG(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (n, q) = inner.split_once(',').ok_or_else(bad)?;
    Ok((n.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

pub fn descriptor(n: usize, q: usize) -> String {
    format!("PG({n},{q})")
}

fn enumerate_rref(q: usize, k: usize, width: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                ((pivots[r] + 1)..width).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut m = vec![0u8; k * width];
            for (r, &p) in pivots.iter().enumerate() {
                m[r * width + p] = 1;
            }
            for (&(r, c), &d) in free.iter().zip(&digits) {
                m[r * width + c] = d;
            }
            out.push(m);
            // odometer
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if (digits[i] as usize) < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        // next combination of pivot columns
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if pivots[i] < width - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl Geometry {
    pub fn build(n: usize, q: usize) -> Result<Geometry> {
        if !(2..=4).contains(&n) {
            return Err(Error::UnsupportedGeometry { n, q, reason: "n must be 2, 3 or 4".into() });
        }
        let field = make_field(q)
            .map_err(|e| Error::UnsupportedGeometry { n, q, reason: e.to_string() })?;
        let num_lines = gaussian_binomial(n + 1, 2, q);
        if num_lines > MAX_LINES {
            return Err(Error::UnsupportedGeometry {
                n,
                q,
                reason: format!("{num_lines} lines exceeds the limit of {MAX_LINES}"),
            });
        }
        let width = n + 1;

        let point_rows = enumerate_rref(q, 1, width);
        let num_points = point_rows.len();
        let mut point_lookup = vec![u32::MAX; q.pow(width as u32)];
        for (i, v) in point_rows.iter().enumerate() {
            point_lookup[encode_vector(v, q)] = i as u32;
        }

        let mut geometry = Geometry {
            n,
            q,
            field,
            levels: Vec::with_capacity(n + 1),
            point_lookup,
            line_through: Vec::new(),
            star: Vec::new(),
            planes_through_line: Vec::new(),
        };

        for k in 1..=width {
            let dim = k - 1;
            let rows = if k == width { vec![identity(width)] } else { enumerate_rref(q, k, width) };
            let subspaces: Vec<Subspace> =
                rows.into_iter().map(|coords| Subspace { n, dim, coords }).collect();
            let points: Vec<Vec<usize>> = if dim == 0 {
                (0..subspaces.len()).map(|i| vec![i]).collect()
            } else {
                subspaces.iter().map(|s| geometry.enumerate_points(s)).collect()
            };
            geometry.levels.push(Level { subspaces, points, lines: Vec::new() });

            if dim == 1 {
                geometry.index_lines(num_points);
            }
        }

        for dim in 2..=n {
            let lines: Vec<Vec<usize>> = (0..geometry.levels[dim].subspaces.len())
                .map(|i| geometry.lines_from_points(&geometry.levels[dim].points[i]))
                .collect();
            geometry.levels[dim].lines = lines;
        }

        let mut planes_through_line = vec![Vec::new(); geometry.num_lines()];
        for (pi, lines) in geometry.levels[2].lines.iter().enumerate() {
            for &l in lines {
                planes_through_line[l].push(pi);
            }
        }
        geometry.planes_through_line = planes_through_line;
        Ok(geometry)
    }

    fn index_lines(&mut self, num_points: usize) {
        let num_lines = self.levels[1].subspaces.len();
        self.levels[1].lines = (0..num_lines).map(|l| vec![l]).collect();
        self.line_through = vec![u32::MAX; num_points * num_points];
        self.star = vec![Vec::new(); num_points];
        for (l, pts) in self.levels[1].points.iter().enumerate() {
            for &a in pts {
                self.star[a].push(l);
                for &b in pts {
                    if a != b {
                        self.line_through[a * num_points + b] = l as u32;
                    }
                }
            }
        }
    }

    fn lines_from_points(&self, points: &[usize]) -> Vec<usize> {
        let mut seen = FixedBitSet::with_capacity(self.num_lines());
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                seen.insert(self.line_through[a * self.num_points() + b] as usize);
            }
        }
        seen.ones().collect()
    }

    fn enumerate_points(&self, s: &Subspace) -> Vec<usize> {
        let k = s.dim + 1;
        let width = self.n + 1;
        let mut out = Vec::new();
        let mut coeffs = vec![0u8; k];
        loop {
            let mut i = 0;
            while i < k {
                coeffs[i] += 1;
                if (coeffs[i] as usize) < self.q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
            let mut v = vec![0u8; width];
            for (c, row) in coeffs.iter().zip(s.rows()) {
                if *c == 0 {
                    continue;
                }
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = self.field.add(*x, self.field.mul(*c, r));
                }
            }
            // keep only the normalized representative of each projective point
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                out.push(self.point_lookup[encode_vector(&v, self.q)] as usize);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn descriptor(&self) -> String {
        descriptor(self.n, self.q)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.subspaces.len())
    }

    pub fn num_points(&self) -> usize {
        self.count(0)
    }

    pub fn num_lines(&self) -> usize {
        self.count(1)
    }

    /// Planes of PG(n,q); for n = 2 this is the single whole plane.
    pub fn num_planes(&self) -> usize {
        self.count(2)
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.count(self.n - 1)
    }

    fn check_id(&self, id: SubspaceId) -> Result<()> {
        let count = self.count(id.dim);
        if id.dim > self.n || id.index >= count {
            return Err(Error::IndexOutOfRange {
                kind: "subspace",
                index: id.index,
                max: count.saturating_sub(1),
            });
        }
        Ok(())
    }

    pub fn check_point(&self, p: usize) -> Result<()> {
        if p >= self.num_points() {
            return Err(Error::IndexOutOfRange { kind: "point", index: p, max: self.num_points() - 1 });
        }
        Ok(())
    }

    pub fn check_line(&self, l: usize) -> Result<()> {
        if l >= self.num_lines() {
            return Err(Error::IndexOutOfRange { kind: "line", index: l, max: self.num_lines() - 1 });
        }
        Ok(())
    }

    pub fn subspace(&self, id: SubspaceId) -> Result<&Subspace> {
        self.check_id(id)?;
        Ok(&self.levels[id.dim].subspaces[id.index])
    }

    pub fn whole_space(&self) -> SubspaceId {
        SubspaceId { dim: self.n, index: 0 }
    }

    /// Canonical identifier of `s`, if it is a subspace of this geometry.
    pub fn find(&self, s: &Subspace) -> Result<SubspaceId> {
        self.check_subspace(s)?;
        let index = self.levels[s.dim]
            .subspaces
            .binary_search(s)
            .map_err(|_| self.mismatch(format!("subspace {s} is not in canonical form")))?;
        Ok(SubspaceId { dim: s.dim, index })
    }

    fn mismatch(&self, detail: String) -> Error {
        Error::MismatchedGeometry { expected: self.descriptor(), detail }
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.n != self.n || s.dim > self.n {
            return Err(self.mismatch(format!("subspace of PG({},·) with dimension {}", s.n, s.dim)));
        }
        if s.coords.len() != (s.dim + 1) * (self.n + 1) || s.coords.iter().any(|&c| c as usize >= self.q) {
            return Err(self.mismatch(format!("subspace {s} has invalid coordinates")));
        }
        Ok(())
    }

    /// Point indices of a subspace, sorted.
    pub fn points_of(&self, id: SubspaceId) -> &[usize] {
        &self.levels[id.dim].points[id.index]
    }

    /// Line indices contained in a subspace of dimension ≥ 1, sorted.
    pub fn lines_in(&self, id: SubspaceId) -> &[usize] {
        &self.levels[id.dim].lines[id.index]
    }

    pub fn line_points(&self, l: usize) -> &[usize] {
        &self.levels[1].points[l]
    }

    /// Lines through the point `p`, sorted.
    pub fn star(&self, p: usize) -> &[usize] {
        &self.star[p]
    }

    /// Planes containing the line `l`, sorted.
    pub fn planes_through_line(&self, l: usize) -> &[usize] {
        &self.planes_through_line[l]
    }

    pub fn point_vector(&self, p: usize) -> &[u8] {
        &self.levels[0].subspaces[p].coords
    }

    pub fn point_index(&self, v: &[u8]) -> Option<usize> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let inv = self.field.inv(lead);
        let normalized: Vec<u8> = v.iter().map(|&x| self.field.mul(x, inv)).collect();
        Some(self.point_lookup[encode_vector(&normalized, self.q)] as usize)
    }

    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        let l = self.line_through[a * self.num_points() + b];
        (l != u32::MAX).then_some(l as usize)
    }

    pub fn contains_point(&self, id: SubspaceId, p: usize) -> bool {
        self.points_of(id).binary_search(&p).is_ok()
    }

    /// The common point of two distinct lines, if they meet.
    pub fn meet_point(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        let pb = self.line_points(b);
        self.line_points(a).iter().copied().find(|p| pb.binary_search(p).is_ok())
    }

    pub fn lines_meet(&self, a: usize, b: usize) -> bool {
        self.meet_point(a, b).is_some()
    }

    /// The plane spanned by two distinct meeting lines.
    pub fn plane_of(&self, a: usize, b: usize) -> Option<usize> {
        self.meet_point(a, b)?;
        let pb = self.planes_through_line(b);
        self.planes_through_line(a).iter().copied().find(|p| pb.binary_search(p).is_ok())
    }

    /// Lines of `x` through `p`.
    pub fn pencil(&self, p: usize, x: SubspaceId) -> Result<Vec<usize>> {
        self.check_point(p)?;
        self.check_id(x)?;
        if x.dim < 1 || !self.contains_point(x, p) {
            return Err(Error::NotIncident { point: p, subspace: x.to_string() });
        }
        let inside = self.lines_in(x);
        Ok(self.star(p).iter().copied().filter(|l| inside.binary_search(l).is_ok()).collect())
    }

    /// Smallest subspace containing both, and their intersection (`None` when empty).
    pub fn span_meet(&self, a: &Subspace, b: &Subspace) -> Result<(Subspace, Option<Subspace>)> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let rows: Vec<Vec<u8>> = a.rows().chain(b.rows()).map(<[u8]>::to_vec).collect();
        let span = Subspace::spanned_by(&self.field, self.n, &rows).expect("nonzero basis rows");
        let pa = self.points_of(self.find(a)?);
        let pb = self.points_of(self.find(b)?);
        let common: Vec<Vec<u8>> = pa
            .iter()
            .filter(|p| pb.binary_search(p).is_ok())
            .map(|&p| self.point_vector(p).to_vec())
            .collect();
        let meet = Subspace::spanned_by(&self.field, self.n, &common);
        Ok((span, meet))
    }

    /// Whether `s` meets every line of the plane in at least `t` points, and
    /// whether it contains a whole line of the plane.
    pub fn is_blocking_set(&self, plane: SubspaceId, s: &PointSet, t: usize) -> Result<BlockingVerdict> {
        self.check_id(plane)?;
        if plane.dim != 2 {
            return Err(Error::InvalidArgument(format!("{plane} is not a plane")));
        }
        let mut is_blocking = true;
        let mut is_trivial = false;
        for &l in self.lines_in(plane) {
            let hits = self.line_points(l).iter().filter(|&&p| s.contains(p)).count();
            is_blocking &= hits >= t;
            is_trivial |= hits == self.q + 1;
        }
        Ok(BlockingVerdict { is_blocking, is_trivial })
    }

    /// Lexicographically least set of q+2 points of the plane, no three collinear.
    pub fn find_hyperoval(&self, plane: SubspaceId) -> Result<PointSet> {
        self.check_id(plane)?;
        if plane.dim != 2 {
            return Err(Error::InvalidArgument(format!("{plane} is not a plane")));
        }
        if self.q % 2 == 1 {
            return Err(Error::NoHyperoval(self.q));
        }
        let points = self.points_of(plane);
        let plane_lines = self.lines_in(plane);
        // for each candidate point, the positions (in plane_lines) of its lines in the plane
        let through: Vec<Vec<usize>> = points
            .iter()
            .map(|&p| {
                self.star(p).iter().filter_map(|l| plane_lines.binary_search(l).ok()).collect()
            })
            .collect();
        let mut on_line = vec![0u8; plane_lines.len()];
        let mut chosen = Vec::with_capacity(self.q + 2);
        if extend_arc(&through, &mut on_line, &mut chosen, 0, self.q + 2) {
            PointSet::from_indices(self.num_points(), chosen.iter().map(|&i| points[i]))
        } else {
            Err(Error::NoHyperoval(self.q))
        }
    }

    /// Regular spread of PG(3,q) from the 1-dimensional GF(q²)-subspaces of
    /// GF(q²)², under GF(q)^4 = GF(q²)² via (a0,a1,a2,a3) ↔ (a0 + a1β, a2 + a3β).
    pub fn regular_spread(&self) -> Result<Vec<usize>> {
        if self.n != 3 {
            return Err(Error::UnsupportedGeometry {
                n: self.n,
                q: self.q,
                reason: "regular spreads are built in PG(3,q) only".into(),
            });
        }
        let ext = make_extension(&self.field)
            .map_err(|e| Error::UnsupportedGeometry { n: self.n, q: self.q, reason: e.to_string() })?;
        let f2 = &ext.field;
        let beta = ext.compose(0, 1);
        let flatten = |x: u8, y: u8| -> Vec<u8> {
            let (x0, x1) = ext.decompose(x);
            let (y0, y1) = ext.decompose(y);
            vec![x0, x1, y0, y1]
        };
        let mut generators: Vec<(u8, u8)> = (0..f2.order() as u8).map(|z| (1, z)).collect();
        generators.push((0, 1));
        let mut spread = Vec::with_capacity(generators.len());
        for (x, y) in generators {
            let rows = vec![flatten(x, y), flatten(f2.mul(beta, x), f2.mul(beta, y))];
            let s = Subspace::spanned_by(&self.field, 3, &rows).expect("nonzero");
            debug_assert_eq!(s.dim, 1);
            spread.push(self.find(&s)?.index);
        }
        spread.sort_unstable();
        Ok(spread)
    }

    /// Verifies that `lines` partition the point set.
    pub fn check_spread(&self, lines: &[usize]) -> Result<()> {
        let mut covered = vec![0usize; self.num_points()];
        for &l in lines {
            self.check_line(l)?;
            for &p in self.line_points(l) {
                covered[p] += 1;
            }
        }
        if let Some(p) = covered.iter().position(|&c| c != 1) {
            return Err(Error::NotASpread(format!("point {p} lies on {} of the lines", covered[p])));
        }
        Ok(())
    }
}

fn extend_arc(
    through: &[Vec<usize>],
    on_line: &mut [u8],
    chosen: &mut Vec<usize>,
    start: usize,
    target: usize,
) -> bool {
    if chosen.len() == target {
        return true;
    }
    for i in start..through.len() {
        if through.len() - i < target - chosen.len() {
            break;
        }
        if through[i].iter().any(|&l| on_line[l] >= 2) {
            continue;
        }
        for &l in &through[i] {
            on_line[l] += 1;
        }
        chosen.push(i);
        if extend_arc(through, on_line, chosen, i + 1, target) {
            return true;
        }
        chosen.pop();
        for &l in &through[i] {
            on_line[l] -= 1;
        }
    }
    false
}

fn identity(width: usize) -> Vec<u8> {
    let mut m = vec![0u8; width * width];
    for i in 0..width {
        m[i * width + i] = 1;
    }
    m
}

fn encode_vector(v: &[u8], q: usize) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_counts() {
        assert_eq!(gaussian_binomial(4, 2, 4), 357);
        assert_eq!(gaussian_binomial(5, 2, 2), 155);
        assert_eq!(theta(2, 4), 21);
        assert_eq!(theta(-1, 4), 0);
    }

    #[test]
    fn descriptor_round_trip() {
        assert_eq!(parse_descriptor("PG(3,4)").unwrap(), (3, 4));
        assert_eq!(parse_descriptor(&descriptor(4, 2)).unwrap(), (4, 2));
        assert!(parse_descriptor("AG(3,4)").is_err());
        assert!(parse_descriptor("PG(3;4)").is_err());
    }

    #[test]
    fn unsupported_parameters() {
        assert!(Geometry::build(5, 2).is_err());
        assert!(Geometry::build(3, 6).is_err());
        // PG(4,7) has 140050 lines
        assert!(matches!(Geometry::build(4, 7), Err(Error::UnsupportedGeometry { .. })));
    }

    #[test]
    fn rref_is_canonical() {
        let f = make_field(3).unwrap();
        let a = rref(&f, vec![vec![2, 1, 0, 1], vec![1, 1, 1, 0]]);
        let b = rref(&f, vec![vec![0, 2, 1, 1], vec![2, 2, 2, 0]]);
        assert_eq!(a, b);
        assert_eq!(a[0][0], 1);
    }

    #[test]
    fn span_and_meet() {
        let g = Geometry::build(3, 2).unwrap();
        let p0 = g.subspace(SubspaceId::point(0)).unwrap().clone();
        let p1 = g.subspace(SubspaceId::point(1)).unwrap().clone();
        let (span, meet) = g.span_meet(&p0, &p1).unwrap();
        assert_eq!(span.dim(), 1);
        assert!(meet.is_none());
        let l = g.find(&span).unwrap();
        assert_eq!(Some(l.index), g.line_through(0, 1));

        let (span, meet) = g.span_meet(&span, &span).unwrap();
        assert_eq!(Some(&span), meet.as_ref());

        // two meeting lines span a plane and meet in a point
        let a = g.star(0)[0];
        let b = g.star(0)[1];
        let la = g.subspace(SubspaceId::line(a)).unwrap().clone();
        let lb = g.subspace(SubspaceId::line(b)).unwrap().clone();
        let (span, meet) = g.span_meet(&la, &lb).unwrap();
        assert_eq!(span.dim(), 2);
        assert_eq!(meet.unwrap(), p0);
        assert_eq!(Some(g.find(&span).unwrap().index), g.plane_of(a, b));
    }

    #[test]
    fn span_meet_rejects_foreign_subspace() {
        let g3 = Geometry::build(3, 2).unwrap();
        let g2 = Geometry::build(2, 2).unwrap();
        let foreign = g2.subspace(SubspaceId::point(0)).unwrap().clone();
        let own = g3.subspace(SubspaceId::point(0)).unwrap().clone();
        assert!(matches!(g3.span_meet(&own, &foreign), Err(Error::MismatchedGeometry { .. })));
    }

    #[test]
    fn pencil_requires_incidence() {
        let g = Geometry::build(3, 2).unwrap();
        let plane = SubspaceId::plane(0);
        let outside = (0..g.num_points()).find(|&p| !g.contains_point(plane, p)).unwrap();
        assert!(matches!(g.pencil(outside, plane), Err(Error::NotIncident { .. })));
        let inside = g.points_of(plane)[0];
        assert_eq!(g.pencil(inside, plane).unwrap().len(), 3);
    }

    #[test]
    fn odd_order_has_no_hyperoval() {
        let g = Geometry::build(2, 3).unwrap();
        assert!(matches!(g.find_hyperoval(g.whole_space()), Err(Error::NoHyperoval(3))));
    }

    #[test]
    fn spread_check_rejects_overlap() {
        let g = Geometry::build(3, 2).unwrap();
        let star = g.star(0);
        assert!(matches!(g.check_spread(&star[..5]), Err(Error::NotASpread(_))));
    }
}
