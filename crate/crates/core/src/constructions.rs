use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cl::LineClass;
use crate::error::{Error, Result};
use crate::geometry::{Geometry, PointSet, SubspaceId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StandardClass {
    Empty,
    All,
    Star { point: usize },
    /// All lines of a plane.
    Plane { plane: usize },
    /// All lines of a hyperplane.
    Hyperplane { hyperplane: usize },
    /// Lines through the point or inside the hyperplane; the point must lie off it.
    StarOrHyperplane { point: usize, hyperplane: usize },
}

pub fn standard_class(g: &Geometry, kind: StandardClass) -> Result<LineClass> {
    let hyperplane = |h: usize| SubspaceId { dim: g.n() - 1, index: h };
    match kind {
        StandardClass::Empty => Ok(LineClass::empty(g)),
        StandardClass::All => Ok(LineClass::all(g)),
        StandardClass::Star { point } => {
            g.check_point(point)?;
            LineClass::from_lines(g, g.star(point).iter().copied())
        }
        StandardClass::Plane { plane } => {
            g.subspace(SubspaceId::plane(plane))?;
            LineClass::from_lines(g, g.lines_in(SubspaceId::plane(plane)).iter().copied())
        }
        StandardClass::Hyperplane { hyperplane: h } => {
            g.subspace(hyperplane(h))?;
            LineClass::from_lines(g, g.lines_in(hyperplane(h)).iter().copied())
        }
        StandardClass::StarOrHyperplane { point, hyperplane: h } => {
            g.check_point(point)?;
            g.subspace(hyperplane(h))?;
            if g.contains_point(hyperplane(h), point) {
                return Err(Error::InvalidArgument(format!("point {point} lies in hyperplane {h}")));
            }
            LineClass::from_lines(g, g.star(point).iter().chain(g.lines_in(hyperplane(h))).copied())
        }
    }
}

/// Point P, plane π not through P, and a hyperoval O of π (found by search if absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GP7Input {
    pub point: usize,
    pub plane: usize,
    pub hyperoval: Option<Vec<usize>>,
}

impl GP7Input {
    /// Plane 0 and the first point off it.
    pub fn default_for(g: &Geometry) -> Result<Self> {
        let plane = SubspaceId::plane(0);
        g.subspace(plane)?;
        let point = (0..g.num_points()).find(|&p| !g.contains_point(plane, p)).expect("plane is proper");
        Ok(GP7Input { point, plane: 0, hyperoval: None })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GP7Class {
    pub class: LineClass,
    pub point: usize,
    pub plane: usize,
    pub hyperoval: Vec<usize>,
    /// The lines joining P to the points of O, in the order of O.
    pub cone_lines: Vec<usize>,
    pub external_lines: Vec<usize>,
    pub secants: Vec<usize>,
}

/// The x = 7 class of PG(3,4): the cone over O with vertex P, the lines of π
/// missing O, and the lines off π and P meeting two cone lines outside π.
pub fn gp_x7(g: &Geometry, input: &GP7Input) -> Result<GP7Class> {
    if g.n() != 3 || g.q() != 4 {
        return Err(Error::UnsupportedGeometry { n: g.n(), q: g.q(), reason: "the x=7 construction lives in PG(3,4)".into() });
    }
    g.check_point(input.point)?;
    let pi = SubspaceId::plane(input.plane);
    g.subspace(pi)?;
    if g.contains_point(pi, input.point) {
        return Err(Error::InvalidArgument(format!("point {} lies in plane {}", input.point, input.plane)));
    }
    let hyperoval = match &input.hyperoval {
        Some(o) => {
            let mut o = o.clone();
            o.sort_unstable();
            o.dedup();
            check_hyperoval(g, pi, &o)?;
            o
        }
        None => g.find_hyperoval(pi)?.indices(),
    };
    let cone_lines: Vec<usize> =
        hyperoval.iter().map(|&q| g.line_through(input.point, q).expect("distinct points")).collect();
    let on_oval = |p: &usize| hyperoval.binary_search(p).is_ok();
    let external_lines: Vec<usize> = g
        .lines_in(pi)
        .iter()
        .copied()
        .filter(|&l| !g.line_points(l).iter().any(on_oval))
        .collect();
    let plane_lines = g.lines_in(pi);
    let secants: Vec<usize> = (0..g.num_lines())
        .filter(|&l| plane_lines.binary_search(&l).is_err() && !g.line_points(l).contains(&input.point))
        .filter(|&l| {
            let meets: Vec<usize> = cone_lines.iter().filter_map(|&c| g.meet_point(l, c)).collect();
            meets.len() == 2 && meets.iter().all(|&p| !g.contains_point(pi, p))
        })
        .collect();
    let class = LineClass::from_lines(g, cone_lines.iter().chain(&external_lines).chain(&secants).copied())?;
    Ok(GP7Class { class, point: input.point, plane: input.plane, hyperoval, cone_lines, external_lines, secants })
}

fn check_hyperoval(g: &Geometry, pi: SubspaceId, o: &[usize]) -> Result<()> {
    let bad = |why: String| Err(Error::InvalidArgument(format!("not a hyperoval of plane {}: {why}", pi.index)));
    if o.len() != g.q() + 2 {
        return bad(format!("{} points", o.len()));
    }
    if let Some(&p) = o.iter().find(|&&p| !g.contains_point(pi, p)) {
        return bad(format!("point {p} is off the plane"));
    }
    let set = PointSet::from_indices(g.num_points(), o.iter().copied())?;
    for &l in g.lines_in(pi) {
        let hits = g.line_points(l).iter().filter(|&&p| set.contains(p)).count();
        if hits > 2 {
            return bad(format!("line {l} meets it in {hits} points"));
        }
    }
    Ok(())
}

/// The unique point of the member line `u` lying on no other member, if there is one.
pub fn poor_point(g: &Geometry, c: &LineClass, u: usize) -> Result<Option<usize>> {
    c.check_geometry(g)?;
    g.check_line(u)?;
    if !c.contains(u) {
        return Err(Error::InvalidArgument(format!("line {u} is not a member")));
    }
    let poor: Vec<usize> = g.line_points(u).iter().copied().filter(|&r| c.count_in(g.star(r)) == 1).collect();
    Ok((poor.len() == 1).then(|| poor[0]))
}

/// All 7-line classes of PG(3,2) with parameter 1, by exhaustive search.
pub fn search_x1(g: &Geometry) -> Result<Vec<LineClass>> {
    if g.n() != 3 || g.q() != 2 {
        return Err(Error::UnsupportedGeometry { n: g.n(), q: g.q(), reason: "search_x1 runs in PG(3,2) only".into() });
    }
    let n = g.num_lines();
    let meets: Vec<u64> = (0..n)
        .map(|l| (0..n).filter(|&m| g.lines_meet(l, m)).fold(0u64, |acc, m| acc | 1 << m))
        .collect();
    // a line meets 3 members, or 3 + 3 others when it is a member itself
    let is_class = |mask: u64| {
        meets.iter().enumerate().all(|(l, &nb)| {
            let member = mask >> l & 1;
            (nb & mask).count_ones() as u64 == 3 + 3 * member
        })
    };
    fn extend(start: usize, n: usize, left: usize, mask: u64, test: &dyn Fn(u64) -> bool, out: &mut Vec<u64>) {
        if left == 0 {
            if test(mask) {
                out.push(mask);
            }
            return;
        }
        for l in start..=(n - left) {
            extend(l + 1, n, left - 1, mask | 1 << l, test, out);
        }
    }
    let mut masks: Vec<u64> = (0..=(n - 7))
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            extend(first + 1, n, 6, 1 << first, &is_class, &mut out);
            out
        })
        .collect();
    masks.sort_unstable_by_key(|m| m.reverse_bits());
    masks.into_iter().map(|m| LineClass::from_lines(g, (0..n).filter(|&l| m >> l & 1 == 1))).collect()
}
