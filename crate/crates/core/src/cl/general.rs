use num_rational::Ratio;
use serde::Serialize;

use super::class::{line_count_parameter, LineClass, RationalParameter};
use crate::error::{Error, Result};
use crate::geometry::{theta, Geometry, SubspaceId};

/// Parameter of a line class of PG(n,q), n ≥ 3: the rational x with
/// `meets(l) = (q+1)x + (q^{n-1}+…+q²−1)χ(l)` for every line.
pub fn cl_parameter_general(g: &Geometry, c: &LineClass) -> Result<Option<RationalParameter>> {
    c.check_geometry(g)?;
    if g.n() < 3 {
        return Err(Error::InvalidArgument("line classes need n >= 3".into()));
    }
    Ok(line_count_parameter(g, c).map(Into::into))
}

/// `|Star(P)∩L| + θ_{n−2}/(θ_{i−1}θ_{i−2})·|line(X)∩L| = x + θ_{n−2}/θ_{i−2}·|pen(P,X)∩L|`
/// for an incident flag (P, X) with dim X = i ≥ 2.
pub fn flag_condition(g: &Geometry, c: &LineClass, p: usize, x_id: SubspaceId, x: RationalParameter) -> Result<bool> {
    c.check_geometry(g)?;
    let sides = flag_sides(g, c, p, x_id)?;
    Ok(sides.0 == x.ratio() + sides.1)
}

/// Left side and the pencil term of the flag identity.
fn flag_sides(g: &Geometry, c: &LineClass, p: usize, x_id: SubspaceId) -> Result<(Ratio<i64>, Ratio<i64>)> {
    if x_id.dim < 2 {
        return Err(Error::InvalidArgument(format!("flag subspace must have dimension >= 2, got {}", x_id.dim)));
    }
    let pencil = g.pencil(p, x_id)?;
    let (n, i, q) = (g.n() as i64, x_id.dim as i64, g.q());
    let star = c.count_in(g.star(p)) as i64;
    let inside = c.count_in(g.lines_in(x_id)) as i64;
    let pen = c.count_in(&pencil) as i64;
    let t = theta(n - 2, q);
    let lhs = Ratio::from(star) + Ratio::new(t * inside, theta(i - 1, q) * theta(i - 2, q));
    Ok((lhs, Ratio::new(t * pen, theta(i - 2, q))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagSweep {
    pub x: RationalParameter,
    pub flags_checked: usize,
    pub flags_passed: usize,
    /// (point, dimension, index) of the first failing flag.
    pub first_violation: Option<(usize, usize, usize)>,
}

impl FlagSweep {
    pub fn all_pass(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks the flag identity on every incident (point, subspace) pair with
/// subspace dimension 2..=n.
pub fn flag_sweep(g: &Geometry, c: &LineClass, x: RationalParameter) -> Result<FlagSweep> {
    c.check_geometry(g)?;
    let mut sweep = FlagSweep { x, flags_checked: 0, flags_passed: 0, first_violation: None };
    for dim in 2..=g.n() {
        for index in 0..g.count(dim) {
            let id = SubspaceId { dim, index };
            for &p in g.points_of(id) {
                let (lhs, pen) = flag_sides(g, c, p, id)?;
                sweep.flags_checked += 1;
                if lhs == x.ratio() + pen {
                    sweep.flags_passed += 1;
                } else if sweep.first_violation.is_none() {
                    sweep.first_violation = Some((p, dim, index));
                }
            }
        }
    }
    Ok(sweep)
}

/// Whether the spread meets the class in exactly x lines.
pub fn spread_check(g: &Geometry, c: &LineClass, spread: &[usize], x: RationalParameter) -> Result<bool> {
    c.check_geometry(g)?;
    if g.n().is_multiple_of(2) {
        return Err(Error::UnsupportedGeometry { n: g.n(), q: g.q(), reason: "line spreads need odd n".into() });
    }
    g.check_spread(spread)?;
    Ok(x.ratio() == Ratio::from(c.count_in(spread) as i64))
}

/// Lines of `c` inside the 3-space `x_id`, indexed in `sub` = PG(3,q) through
/// the coordinates relative to the canonical basis of `x_id`.
pub fn restrict(g: &Geometry, c: &LineClass, x_id: SubspaceId, sub: &Geometry) -> Result<LineClass> {
    c.check_geometry(g)?;
    if g.n() < 4 {
        return Err(Error::InvalidArgument("restriction needs n >= 4".into()));
    }
    if x_id.dim != 3 {
        return Err(Error::InvalidArgument(format!("restriction target must be a 3-space, got dimension {}", x_id.dim)));
    }
    if sub.n() != 3 || sub.q() != g.q() {
        return Err(Error::MismatchedGeometry {
            expected: format!("PG(3,{})", g.q()),
            detail: format!("induced geometry {}", sub.descriptor()),
        });
    }
    let basis = g.subspace(x_id)?;
    let pivots: Vec<usize> =
        basis.rows().map(|r| r.iter().position(|&e| e != 0).expect("full rank")).collect();
    let local = |p: usize| {
        let v = g.point_vector(p);
        let coords: Vec<u8> = pivots.iter().map(|&k| v[k]).collect();
        sub.point_index(&coords).expect("point of X has nonzero coordinates")
    };
    let lines = g.lines_in(x_id).iter().filter(|&&l| c.contains(l)).map(|&l| {
        let pts = g.line_points(l);
        sub.line_through(local(pts[0]), local(pts[1])).expect("distinct points")
    });
    LineClass::from_lines(sub, lines.collect::<Vec<_>>())
}
