mod common;

use lineclass::cl::*;
use lineclass::constructions::{gp_x7, standard_class, GP7Input, StandardClass};
use lineclass::geometry::{Geometry, SubspaceId};
use lineclass::grassmann::LineGraph;
use lineclass::Error;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Meeting counts straight from point incidences, without the star shortcut.
fn brute_meet_counts(g: &Geometry, c: &LineClass) -> Vec<usize> {
    (0..g.num_lines())
        .map(|l| {
            (0..g.num_lines())
                .filter(|&m| m != l && c.contains(m))
                .filter(|&m| g.line_points(l).iter().any(|p| g.line_points(m).contains(p)))
                .count()
        })
        .collect()
}

#[test]
fn star_parameter_by_direct_count() {
    let g = Geometry::build(3, 4).unwrap();
    let star = standard_class(&g, StandardClass::Star { point: 7 }).unwrap();
    assert_eq!(star.size(), 21);
    let counts = brute_meet_counts(&g, &star);
    assert_eq!(counts, member_meet_counts(&g, &star));
    for (l, &k) in counts.iter().enumerate() {
        // (q+1)·1 + (q²−1)·χ
        assert_eq!(k, 5 + 15 * star.chi(l) as usize);
    }
    assert_eq!(cl_parameter(&g, &star).unwrap(), Some(RationalParameter::integer(1)));
}

#[test]
fn seeded_random_class_is_rejected() {
    let g = Geometry::build(3, 4).unwrap();
    let graph = LineGraph::build(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_147);
    let lines = sample(&mut rng, g.num_lines(), 147).into_vec();
    let c = LineClass::from_lines(&g, lines).unwrap();
    assert_eq!(c.size(), 147);
    assert_eq!(cl_parameter(&g, &c).unwrap(), None);
    for mode in [VerifyMode::Exhaustive, VerifyMode::FirstFailure] {
        let report = verify_equivalents(&graph, &c, 7, mode).unwrap();
        assert!(!report.all_pass);
        assert!(report.families.iter().all(|f| !f.passed_all()));
    }
    assert!(!quotient_matrix(&graph, &c).unwrap().equitable);
}

#[test]
fn star_with_wrong_parameter_fails_skew_pairs() {
    let g = Geometry::build(3, 4).unwrap();
    let graph = LineGraph::build(&g);
    let star = standard_class(&g, StandardClass::Star { point: 0 }).unwrap();
    assert!(verify_equivalents(&graph, &star, 1, VerifyMode::Exhaustive).unwrap().all_pass);
    let wrong = verify_equivalents(&graph, &star, 2, VerifyMode::FirstFailure).unwrap();
    assert!(!wrong.all_pass);
    let skew = wrong.families.iter().find(|f| f.family == "skew-pairs").unwrap();
    assert!(!skew.passed_all());
}

#[test]
fn star_quotient_by_direct_count() {
    let g = Geometry::build(3, 4).unwrap();
    let graph = LineGraph::build(&g);
    let star = standard_class(&g, StandardClass::Star { point: 0 }).unwrap();
    let m = quotient_matrix(&graph, &star).unwrap();
    assert!(m.equitable);
    // member: 20 other lines through P and 80 others; non-member: 5 lines through P
    let member = star.lines()[0];
    let direct = (0..g.num_lines()).filter(|&l| l != member && g.lines_meet(l, member) && star.contains(l)).count();
    assert_eq!(direct, 20);
    assert_eq!(m.p, [[20, 80], [5, 95]]);
}

#[test]
fn star_patterns() {
    let g = Geometry::build(3, 4).unwrap();
    let p = 3;
    let star = standard_class(&g, StandardClass::Star { point: p }).unwrap();
    let u = g.star(p)[0];
    let t = pattern_of(&g, &star, u).unwrap();
    let row = g.line_points(u).iter().position(|&r| r == p).unwrap();
    for (i, r) in t.rows().iter().enumerate() {
        assert_eq!(r, &vec![if i == row { 4 } else { 0 }; 5]);
    }
    let s = pattern_spectrum(&g, &star).unwrap();
    assert_eq!((s.members.len(), s.non_members.len()), (1, 1));
    assert_eq!(s.total(), 357);
    assert_eq!(s.members[0].count, 21);
}

#[test]
fn complement_law_on_fixtures() {
    for q in [2, 3, 4] {
        let g = Geometry::build(3, q).unwrap();
        for (name, c, x) in common::fixtures(&g) {
            let got = cl_parameter(&g, &c).unwrap().and_then(|p| p.as_integer());
            assert_eq!(got, Some(x as i64), "{name} over q={q}");
            let comp = cl_parameter(&g, &c.complement()).unwrap().and_then(|p| p.as_integer());
            assert_eq!(comp, Some((q * q + 1 - x) as i64));
            assert_eq!(c.size(), x * (q * q + q + 1));
        }
    }
}

#[test]
fn grid_slices_of_gp_class() {
    let g = Geometry::build(3, 4).unwrap();
    let c = gp_x7(&g, &GP7Input::default_for(&g).unwrap()).unwrap().class;
    let mut seen = [false; 3];
    for u in 0..g.num_lines() {
        for v in (u + 1)..g.num_lines() {
            if g.lines_meet(u, v) {
                continue;
            }
            let s = grid_slice(&g, &c, u, v).unwrap();
            let members = c.chi(u) + c.chi(v);
            assert_eq!(s.members(), 7 + 4 * members as usize);
            assert_eq!(s.col_sums.iter().sum::<usize>(), s.members());
            assert!(gale_ryser(&s.row_sums, &s.col_sums));
            seen[members as usize] = true;
        }
    }
    assert_eq!(seen, [true; 3]);
}

#[test]
fn grid_slices_of_fixtures_are_feasible() {
    let g = Geometry::build(3, 3).unwrap();
    for (name, c, x) in common::fixtures(&g) {
        for u in (0..g.num_lines()).step_by(5) {
            for v in (0..g.num_lines()).filter(|&v| v != u && !g.lines_meet(u, v)).step_by(11) {
                let s = grid_slice(&g, &c, u, v).unwrap();
                assert_eq!(s.members(), x + 3 * (c.chi(u) + c.chi(v)) as usize, "{name}");
                assert!(gale_ryser(&s.row_sums, &s.col_sums));
            }
        }
    }
}

#[test]
fn spread_intersections() {
    let g = Geometry::build(3, 4).unwrap();
    let spread = g.regular_spread().unwrap();
    let star = standard_class(&g, StandardClass::Star { point: 11 }).unwrap();
    let plane = standard_class(&g, StandardClass::Plane { plane: 40 }).unwrap();
    let gp = gp_x7(&g, &GP7Input::default_for(&g).unwrap()).unwrap().class;
    for (c, x) in [(&star, 1), (&plane, 1), (&gp, 7)] {
        assert_eq!(c.count_in(&spread), x);
        assert!(spread_check(&g, c, &spread, RationalParameter::integer(x as i64)).unwrap());
        assert!(!spread_check(&g, c, &spread, RationalParameter::integer(x as i64 + 1)).unwrap());
    }
    let not_spread = &spread[..16];
    assert!(matches!(spread_check(&g, &star, not_spread, RationalParameter::integer(1)), Err(Error::NotASpread(_))));
}

#[test]
fn general_parameters_in_pg42() {
    let g = Geometry::build(4, 2).unwrap();
    let star = standard_class(&g, StandardClass::Star { point: 0 }).unwrap();
    let counts = brute_meet_counts(&g, &star);
    assert!(star.lines().iter().all(|&l| counts[l] == 14));
    assert_eq!(cl_parameter_general(&g, &star).unwrap(), Some(RationalParameter::integer(1)));
    let all = LineClass::all(&g);
    assert_eq!(cl_parameter_general(&g, &all).unwrap(), Some(RationalParameter::new(31, 3)));
    assert_eq!(cl_parameter_general(&g, &LineClass::empty(&g)).unwrap(), Some(RationalParameter::integer(0)));
    assert!(matches!(cl_parameter(&g, &star), Err(Error::InvalidArgument(_))));
}

#[test]
fn flag_condition_examples() {
    let g = Geometry::build(4, 2).unwrap();
    let p = 0;
    let star = standard_class(&g, StandardClass::Star { point: p }).unwrap();
    let solid = (0..g.count(3)).map(|i| SubspaceId { dim: 3, index: i }).find(|&x| g.contains_point(x, p)).unwrap();
    // 15 + (7/21)·7 = 1 + (7/3)·7
    assert_eq!(star.count_in(g.star(p)), 15);
    assert_eq!(star.count_in(g.lines_in(solid)), 7);
    assert!(flag_condition(&g, &star, p, solid, RationalParameter::integer(1)).unwrap());
    assert!(!flag_condition(&g, &star, p, solid, RationalParameter::integer(2)).unwrap());
    let off = (0..g.num_points()).find(|&r| !g.contains_point(solid, r)).unwrap();
    assert!(matches!(
        flag_condition(&g, &star, off, solid, RationalParameter::integer(1)),
        Err(Error::NotIncident { .. })
    ));

    let g = Geometry::build(3, 4).unwrap();
    let gp = gp_x7(&g, &GP7Input::default_for(&g).unwrap()).unwrap().class;
    let sweep = flag_sweep(&g, &gp, RationalParameter::integer(7)).unwrap();
    assert!(sweep.all_pass());
    assert_eq!(sweep.flags_checked, 85 * 21 + 85);
}

#[test]
fn restriction_examples() {
    let g = Geometry::build(4, 2).unwrap();
    let sub = Geometry::build(3, 2).unwrap();
    let p = 0;
    let star = standard_class(&g, StandardClass::Star { point: p }).unwrap();
    let solids: Vec<SubspaceId> = (0..g.count(3)).map(|i| SubspaceId { dim: 3, index: i }).collect();
    let through = solids.iter().find(|&&x| g.contains_point(x, p)).unwrap();
    let away = solids.iter().find(|&&x| !g.contains_point(x, p)).unwrap();
    let r = restrict(&g, &star, *through, &sub).unwrap();
    assert_eq!(r.size(), 7);
    assert_eq!(cl_parameter(&sub, &r).unwrap(), Some(RationalParameter::integer(1)));
    assert!((0..sub.num_points()).any(|q| sub.star(q) == r.lines().as_slice()));
    let r = restrict(&g, &star, *away, &sub).unwrap();
    assert_eq!(r.size(), 0);

    let h = solids[0];
    let hyper = standard_class(&g, StandardClass::Hyperplane { hyperplane: h.index }).unwrap();
    for &x in solids.iter().filter(|&&x| x != h) {
        let r = restrict(&g, &hyper, x, &sub).unwrap();
        assert_eq!(r.size(), 7);
        assert!((0..sub.num_planes()).any(|pi| sub.lines_in(SubspaceId::plane(pi)) == r.lines().as_slice()));
        assert_eq!(cl_parameter(&sub, &r).unwrap(), Some(RationalParameter::integer(1)));
    }
    assert!(restrict(&g, &star, SubspaceId::plane(0), &sub).is_err());
    assert!(restrict(&g, &star, *through, &Geometry::build(3, 3).unwrap()).is_err());
}

#[test]
fn restriction_preserves_incidence() {
    let g = Geometry::build(4, 2).unwrap();
    let sub = Geometry::build(3, 2).unwrap();
    let x = SubspaceId { dim: 3, index: 17 };
    let inside = g.lines_in(x).to_vec();
    let all_inside = LineClass::from_lines(&g, inside.iter().copied()).unwrap();
    let r = restrict(&g, &all_inside, x, &sub).unwrap();
    assert_eq!(r, LineClass::all(&sub));
    // meeting is preserved line by line
    for (i, &a) in inside.iter().enumerate() {
        for &b in &inside[i + 1..] {
            let ra = restrict(&g, &LineClass::from_lines(&g, [a]).unwrap(), x, &sub).unwrap().lines()[0];
            let rb = restrict(&g, &LineClass::from_lines(&g, [b]).unwrap(), x, &sub).unwrap().lines()[0];
            assert_eq!(g.lines_meet(a, b), sub.lines_meet(ra, rb));
        }
    }
}

#[test]
fn equivalence_holds_on_fixtures_and_perturbations() {
    let g = Geometry::build(3, 3).unwrap();
    let graph = LineGraph::build(&g);
    for (name, c, x) in common::fixtures(&g) {
        let report = verify_equivalents(&graph, &c, x as i64, VerifyMode::Exhaustive).unwrap();
        assert!(report.all_pass, "{name}");
        for l in [0, 17, 129] {
            let bad = c.toggled(l);
            assert_eq!(cl_parameter(&g, &bad).unwrap(), None, "{name} toggled at {l}");
            assert!(!verify_equivalents(&graph, &bad, x as i64, VerifyMode::FirstFailure).unwrap().all_pass);
        }
    }
}
