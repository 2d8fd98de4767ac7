#![allow(dead_code)]

use lineclass::cl::{LineClass, Pattern};
use lineclass::constructions::{gp_x7, standard_class, GP7Input, StandardClass};
use lineclass::geometry::{Geometry, SubspaceId};

pub fn pattern(chi: u8, rows: [[u32; 5]; 5]) -> Pattern {
    Pattern::new(4, chi, &rows.map(|r| r.to_vec())).unwrap()
}

// Matrices as printed for q = 4.
pub fn w1() -> Pattern {
    pattern(1, [[0; 5], [1; 5], [3; 5], [3; 5], [3; 5]])
}
pub fn w2() -> Pattern {
    pattern(1, [[4, 4, 2, 3, 2], [4, 4, 2, 3, 2], [3, 3, 1, 2, 1], [2, 2, 0, 1, 0], [2, 2, 0, 1, 0]])
}
pub fn w3() -> Pattern {
    pattern(1, [[1; 5], [1; 5], [1; 5], [3; 5], [4; 5]])
}
pub fn b1() -> Pattern {
    pattern(0, [[1, 0, 0, 0, 0], [4, 3, 3, 3, 3], [2, 1, 1, 1, 1], [2, 1, 1, 1, 1], [2, 1, 1, 1, 1]])
}
pub fn b2() -> Pattern {
    pattern(0, [[1, 0, 0, 0, 0], [1, 0, 0, 0, 0], [3, 2, 2, 2, 2], [3, 2, 2, 2, 2], [3, 2, 2, 2, 2]])
}
pub fn t1() -> Pattern {
    pattern(0, [[1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [4, 4, 4, 3, 3]])
}
pub fn t2() -> Pattern {
    pattern(0, [[2, 1, 0, 0, 0], [2, 1, 0, 0, 0], [2, 1, 0, 0, 0], [3, 2, 1, 1, 1], [4, 3, 2, 2, 2]])
}
pub fn t3() -> Pattern {
    pattern(0, [[1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [2, 2, 2, 1, 1], [3, 3, 3, 2, 2]])
}
pub fn t4() -> Pattern {
    pattern(0, [[1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [2, 2, 2, 1, 1], [2, 2, 2, 1, 1], [2, 2, 2, 1, 1]])
}
pub fn x5_non_member() -> Pattern {
    pattern(0, [[2; 5], [2; 5], [1; 5], [0; 5], [0; 5]])
}
pub fn x5_member() -> Pattern {
    pattern(1, [[4, 4, 2, 2, 2], [4, 4, 2, 2, 2], [2, 2, 0, 0, 0], [2, 2, 0, 0, 0], [2, 2, 0, 0, 0]])
}

pub fn canonical_set(ps: &[Pattern]) -> Vec<Pattern> {
    let mut v: Vec<Pattern> = ps.iter().map(Pattern::canonical).collect();
    v.sort();
    v.dedup();
    v
}

/// First point off plane 0.
pub fn point_off_plane(g: &Geometry, plane: usize) -> usize {
    (0..g.num_points()).find(|&p| !g.contains_point(SubspaceId::plane(plane), p)).unwrap()
}

/// Named fixture classes of PG(3,q) with their parameters; includes the x = 7
/// class and complements when q = 4.
pub fn fixtures(g: &Geometry) -> Vec<(String, LineClass, usize)> {
    let q = g.q();
    let off = point_off_plane(g, 0);
    let mut out = vec![
        ("empty".to_string(), standard_class(g, StandardClass::Empty).unwrap(), 0),
        ("all".to_string(), standard_class(g, StandardClass::All).unwrap(), q * q + 1),
        ("star".to_string(), standard_class(g, StandardClass::Star { point: 0 }).unwrap(), 1),
        ("plane".to_string(), standard_class(g, StandardClass::Plane { plane: 0 }).unwrap(), 1),
        (
            "union".to_string(),
            standard_class(g, StandardClass::StarOrHyperplane { point: off, hyperplane: 0 }).unwrap(),
            2,
        ),
    ];
    if g.q() == 4 {
        out.push(("gp7".to_string(), gp_x7(g, &GP7Input::default_for(g).unwrap()).unwrap().class, 7));
    }
    let complements: Vec<_> = out
        .iter()
        .filter(|(name, _, _)| name != "empty" && name != "all")
        .map(|(name, c, x)| (format!("complement of {name}"), c.complement(), q * q + 1 - x))
        .collect();
    out.extend(complements);
    out
}
