use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::pattern::Pattern;
use crate::error::{Error, Result};
use crate::geometry::{descriptor, theta, Geometry, SubspaceId};
use crate::grassmann::LineGraph;

/// A set of lines of one geometry, as a membership mask over canonical line indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineClass {
    n: usize,
    q: usize,
    members: FixedBitSet,
    size: usize,
}

impl LineClass {
    pub fn empty(g: &Geometry) -> Self {
        LineClass { n: g.n(), q: g.q(), members: FixedBitSet::with_capacity(g.num_lines()), size: 0 }
    }

    pub fn all(g: &Geometry) -> Self {
        let mut c = Self::empty(g);
        c.members.insert_range(..);
        c.size = g.num_lines();
        c
    }

    pub fn from_lines(g: &Geometry, lines: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut c = Self::empty(g);
        for l in lines {
            g.check_line(l)?;
            c.members.insert(l);
        }
        c.size = c.members.count_ones(..);
        Ok(c)
    }

    pub fn geometry_descriptor(&self) -> String {
        descriptor(self.n, self.q)
    }

    pub fn check_geometry(&self, g: &Geometry) -> Result<()> {
        if self.n != g.n() || self.q != g.q() || self.members.len() != g.num_lines() {
            return Err(Error::MismatchedGeometry {
                expected: g.descriptor(),
                detail: format!("line class over {}", self.geometry_descriptor()),
            });
        }
        Ok(())
    }

    #[inline]
    pub fn contains(&self, l: usize) -> bool {
        self.members.contains(l)
    }

    #[inline]
    pub fn chi(&self, l: usize) -> u8 {
        self.members.contains(l) as u8
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_lines(&self) -> usize {
        self.members.len()
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn lines(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn count_in(&self, lines: &[usize]) -> usize {
        lines.iter().filter(|&&l| self.contains(l)).count()
    }

    pub fn complement(&self) -> LineClass {
        let mut members = self.members.clone();
        members.toggle_range(..);
        LineClass { n: self.n, q: self.q, size: self.members.len() - self.size, members }
    }

    /// The class with the membership of `l` flipped.
    pub fn toggled(&self, l: usize) -> LineClass {
        let mut c = self.clone();
        c.members.toggle(l);
        c.size = if c.members.contains(l) { self.size + 1 } else { self.size - 1 };
        c
    }
}

/// Exact rational parameter, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalParameter {
    pub numerator: i64,
    pub denominator: i64,
}

impl RationalParameter {
    pub fn new(numerator: i64, denominator: i64) -> Self {
        Ratio::new(numerator, denominator).into()
    }

    pub fn integer(x: i64) -> Self {
        RationalParameter { numerator: x, denominator: 1 }
    }

    pub fn is_integral(&self) -> bool {
        self.denominator == 1
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integral().then_some(self.numerator)
    }

    pub fn ratio(&self) -> Ratio<i64> {
        Ratio::new(self.numerator, self.denominator)
    }
}

impl From<Ratio<i64>> for RationalParameter {
    fn from(r: Ratio<i64>) -> Self {
        RationalParameter { numerator: *r.numer(), denominator: *r.denom() }
    }
}

impl fmt::Display for RationalParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

pub(crate) fn star_counts(g: &Geometry, c: &LineClass) -> Vec<usize> {
    (0..g.num_points()).map(|p| c.count_in(g.star(p))).collect()
}

/// Number of class members other than `l` that meet `l`, for every line.
pub fn member_meet_counts(g: &Geometry, c: &LineClass) -> Vec<usize> {
    let stars = star_counts(g, c);
    (0..g.num_lines())
        .map(|l| {
            let through: usize = g.line_points(l).iter().map(|&p| stars[p]).sum();
            through - (g.q() + 1) * c.chi(l) as usize
        })
        .collect()
}

/// The x with `meets(l) = (q+1)·x + (q^{n-1}+…+q²−1)·χ(l)` for every line, if one
/// exists.
pub(crate) fn line_count_parameter(g: &Geometry, c: &LineClass) -> Option<Ratio<i64>> {
    let q = g.q() as i64;
    let member_excess = theta(g.n() as i64 - 1, g.q()) - q - 2;
    let counts = member_meet_counts(g, c);
    let mut x: Option<Ratio<i64>> = None;
    for (l, &count) in counts.iter().enumerate() {
        let xl = Ratio::new(count as i64 - member_excess * c.chi(l) as i64, q + 1);
        match x {
            None => x = Some(xl),
            Some(x0) if x0 != xl => return None,
            _ => {}
        }
    }
    x
}

/// Parameter of a line class of PG(3,q): the integer x such that every line
/// meets `(q+1)x + (q²−1)χ(l)` other class members.
pub fn cl_parameter(g: &Geometry, c: &LineClass) -> Result<Option<RationalParameter>> {
    c.check_geometry(g)?;
    if g.n() != 3 {
        return Err(Error::InvalidArgument("cl_parameter needs PG(3,q); use cl_parameter_general".into()));
    }
    Ok(line_count_parameter(g, c).filter(|x| x.is_integer()).map(Into::into))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    /// Stop each family at its first violation.
    FirstFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub checked: usize,
    pub passed: usize,
    pub first_violation: Option<String>,
}

impl FamilyCheck {
    fn new(family: &str) -> Self {
        FamilyCheck { family: family.to_string(), checked: 0, passed: 0, first_violation: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.first_violation.is_none() {
            self.first_violation = Some(describe());
        }
    }

    pub fn passed_all(&self) -> bool {
        self.first_violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub x: i64,
    pub families: Vec<FamilyCheck>,
    pub all_pass: bool,
}

/// Checks the point–plane, skew-pair and adjacent-pair identities for parameter x.
pub fn verify_equivalents(graph: &LineGraph<'_>, c: &LineClass, x: i64, mode: VerifyMode) -> Result<EquivalenceReport> {
    let g = graph.geometry();
    c.check_geometry(g)?;
    if g.n() != 3 {
        return Err(Error::InvalidArgument("verify_equivalents needs PG(3,q)".into()));
    }
    let q = g.q() as i64;
    let stop = |f: &FamilyCheck| mode == VerifyMode::FirstFailure && !f.passed_all();
    let stars: Vec<i64> = star_counts(g, c).into_iter().map(|v| v as i64).collect();
    let planes: Vec<i64> =
        (0..g.num_planes()).map(|pi| c.count_in(g.lines_in(SubspaceId::plane(pi))) as i64).collect();
    let mut pencils = vec![-1i64; g.num_points() * g.num_planes()];

    // |Star(P) ∩ L| + |line(π) ∩ L| = x + (q+1)|pen(P,π) ∩ L|
    let mut point_plane = FamilyCheck::new("point-plane");
    'outer: for pi in 0..g.num_planes() {
        for &p in g.points_of(SubspaceId::plane(pi)) {
            let pen = c.count_in(&g.pencil(p, SubspaceId::plane(pi))?) as i64;
            pencils[p * g.num_planes() + pi] = pen;
            let (lhs, rhs) = (stars[p] + planes[pi], x + (q + 1) * pen);
            point_plane.record(lhs == rhs, || format!("point {p}, plane {pi}: {lhs} != {rhs}"));
            if stop(&point_plane) {
                break 'outer;
            }
        }
    }

    // |{n ∈ L : n meets l and m}| = x + q(χ(l) + χ(m)) for skew l, m
    let mut skew = FamilyCheck::new("skew-pairs");
    'outer: for l in 0..g.num_lines() {
        for m in (l + 1)..g.num_lines() {
            if graph.adjacent(l, m) {
                continue;
            }
            let mut common = graph.neighbors(l).clone();
            common.intersect_with(graph.neighbors(m));
            let lhs = common.intersection_count(c.mask()) as i64;
            let rhs = x + q * (c.chi(l) + c.chi(m)) as i64;
            skew.record(lhs == rhs, || format!("lines {l}, {m}: {lhs} != {rhs}"));
            if stop(&skew) {
                break 'outer;
            }
        }
    }

    // |G(v) ∩ G₂(u) ∩ L| = q(x + qχ(v) − |L ∩ L* ∩ L|) for adjacent u, v
    let mut adjacent = FamilyCheck::new("adjacent-pairs");
    'outer: for u in 0..g.num_lines() {
        let mut far_members = graph.second_neighborhood(u);
        far_members.intersect_with(c.mask());
        for v in graph.neighbors(u).ones() {
            let p = g.meet_point(u, v).expect("adjacent lines meet");
            let pi = g.plane_of(u, v).expect("adjacent lines span a plane");
            let pen = match pencils[p * g.num_planes() + pi] {
                -1 => c.count_in(&g.pencil(p, SubspaceId::plane(pi))?) as i64,
                k => k,
            };
            let lhs = graph.neighbors(v).intersection_count(&far_members) as i64;
            let rhs = q * (x + q * c.chi(v) as i64 - pen);
            adjacent.record(lhs == rhs, || format!("lines u={u}, v={v}: {lhs} != {rhs}"));
            if stop(&adjacent) {
                break 'outer;
            }
        }
    }

    let families = vec![point_plane, skew, adjacent];
    let all_pass = families.iter().all(FamilyCheck::passed_all);
    Ok(EquivalenceReport { x, families, all_pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientWitness {
    pub line: usize,
    pub counts: [usize; 2],
    pub expected: [usize; 2],
}

/// Neighbor counts of the partition {class, complement}; row/column 0 is the class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    pub p: [[usize; 2]; 2],
    pub equitable: bool,
    pub witness: Option<QuotientWitness>,
}

pub fn quotient_matrix(graph: &LineGraph<'_>, c: &LineClass) -> Result<QuotientMatrix> {
    c.check_geometry(graph.geometry())?;
    if c.size() == 0 || c.size() == c.num_lines() {
        return Err(Error::DegeneratePartition);
    }
    let mut p: [Option<[usize; 2]>; 2] = [None, None];
    let mut witness = None;
    for l in 0..graph.num_vertices() {
        let inside = graph.neighbors(l).intersection_count(c.mask());
        let counts = [inside, graph.degree(l) - inside];
        let part = 1 - c.chi(l) as usize;
        match p[part] {
            None => p[part] = Some(counts),
            Some(expected) if expected != counts && witness.is_none() => {
                witness = Some(QuotientWitness { line: l, counts, expected });
            }
            _ => {}
        }
    }
    Ok(QuotientMatrix { p: [p[0].unwrap(), p[1].unwrap()], equitable: witness.is_none(), witness })
}

/// Pattern of the class with respect to line `u` (not canonicalized).
pub fn pattern_of(g: &Geometry, c: &LineClass, u: usize) -> Result<Pattern> {
    c.check_geometry(g)?;
    g.check_line(u)?;
    if g.n() != 3 {
        return Err(Error::InvalidArgument("patterns are defined in PG(3,q)".into()));
    }
    let q = g.q();
    let mut entries = Vec::with_capacity((q + 1) * (q + 1));
    for &p in g.line_points(u) {
        for &pi in g.planes_through_line(u) {
            let pen = g.pencil(p, SubspaceId::plane(pi))?;
            entries.push(pen.iter().filter(|&&l| l != u && c.contains(l)).count() as u32);
        }
    }
    Ok(Pattern::from_entries(q, c.chi(u), entries))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub pattern: Pattern,
    pub count: usize,
}

/// Canonical patterns of all lines with multiplicities, split by membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternSpectrum {
    pub members: Vec<SpectrumEntry>,
    pub non_members: Vec<SpectrumEntry>,
}

impl PatternSpectrum {
    pub fn member_patterns(&self) -> Vec<&Pattern> {
        self.members.iter().map(|e| &e.pattern).collect()
    }

    pub fn non_member_patterns(&self) -> Vec<&Pattern> {
        self.non_members.iter().map(|e| &e.pattern).collect()
    }

    pub fn total(&self) -> usize {
        self.members.iter().chain(&self.non_members).map(|e| e.count).sum()
    }
}

pub fn pattern_spectrum(g: &Geometry, c: &LineClass) -> Result<PatternSpectrum> {
    use rayon::prelude::*;
    c.check_geometry(g)?;
    let patterns: Vec<Pattern> = (0..g.num_lines())
        .into_par_iter()
        .map(|u| pattern_of(g, c, u).map(|p| p.canonical()))
        .collect::<Result<_>>()?;
    let mut split = [BTreeMap::new(), BTreeMap::new()];
    for p in patterns {
        *split[p.chi() as usize].entry(p).or_insert(0) += 1;
    }
    let [non_members, members] =
        split.map(|m| m.into_iter().map(|(pattern, count)| SpectrumEntry { pattern, count }).collect());
    Ok(PatternSpectrum { members, non_members })
}
