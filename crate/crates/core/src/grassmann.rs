//! The Grassmann graph on the lines of PG(n,q): two distinct lines are adjacent
//! iff they meet.
//!
//! For n = 3 the graph carries its two families of maximal cliques: one per plane
//! (all lines of the plane) and one per point (its star). They are taken from the
//! incidence structure rather than found by clique search.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Geometry, SubspaceId};

pub struct LineGraph<'g> {
    geometry: &'g Geometry,
    adjacency: Vec<FixedBitSet>,
    plane_cliques: Vec<FixedBitSet>,
    point_cliques: Vec<FixedBitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalStructureReport {
    pub geometry: String,
    pub vertices: usize,
    pub valency: usize,
    pub plane_cliques: usize,
    pub point_cliques: usize,
    pub clique_size: usize,
    pub residues_per_neighborhood: usize,
    pub residue_size: usize,
    pub neighborhoods_checked: usize,
    pub skew_pairs_checked: usize,
    pub grid_side: usize,
    pub adjacent_pairs_checked: usize,
    pub second_neighborhood_overlap: usize,
    pub same_family_pairs_checked: usize,
    /// Observed |L ∩ L*| across families, with multiplicities.
    pub cross_family_intersections: BTreeMap<usize, usize>,
}

fn mask_from(len: usize, items: &[usize]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(len);
    for &i in items {
        m.insert(i);
    }
    m
}

fn violation(msg: String) -> Error {
    Error::StructureViolation(msg)
}

impl<'g> LineGraph<'g> {
    pub fn build(geometry: &'g Geometry) -> Self {
        let num_lines = geometry.num_lines();
        let mut adjacency = vec![FixedBitSet::with_capacity(num_lines); num_lines];
        for p in 0..geometry.num_points() {
            let star = geometry.star(p);
            for &a in star {
                for &b in star {
                    if a != b {
                        adjacency[a].insert(b);
                    }
                }
            }
        }
        let (plane_cliques, point_cliques) = if geometry.n() == 3 {
            (
                (0..geometry.num_planes())
                    .map(|i| mask_from(num_lines, geometry.lines_in(SubspaceId::plane(i))))
                    .collect(),
                (0..geometry.num_points()).map(|p| mask_from(num_lines, geometry.star(p))).collect(),
            )
        } else {
            (Vec::new(), Vec::new())
        };
        LineGraph { geometry, adjacency, plane_cliques, point_cliques }
    }

    pub fn geometry(&self) -> &'g Geometry {
        self.geometry
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].count_ones(..)
    }

    /// Maximal cliques line(π), one per plane (n = 3 only).
    pub fn plane_cliques(&self) -> &[FixedBitSet] {
        &self.plane_cliques
    }

    /// Maximal cliques Star(P), one per point (n = 3 only).
    pub fn point_cliques(&self) -> &[FixedBitSet] {
        &self.point_cliques
    }

    /// `(G(u), G₂(u))`: neighbors and non-neighbors other than `u`.
    pub fn neighborhoods(&self, u: usize) -> Result<(FixedBitSet, FixedBitSet)> {
        self.geometry.check_line(u)?;
        Ok((self.adjacency[u].clone(), self.second_neighborhood(u)))
    }

    pub fn second_neighborhood(&self, u: usize) -> FixedBitSet {
        let mut far = self.adjacency[u].clone();
        far.toggle_range(..);
        far.set(u, false);
        far
    }

    /// `G(u,v) = G(u) ∩ G(v)`.
    pub fn common(&self, u: usize, v: usize) -> Result<FixedBitSet> {
        self.geometry.check_line(u)?;
        self.geometry.check_line(v)?;
        let mut c = self.adjacency[u].clone();
        c.intersect_with(&self.adjacency[v]);
        Ok(c)
    }

    /// Edge list `u v` (u < v), one edge per line, canonical line indices.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.num_vertices() {
            for v in self.adjacency[u].ones().filter(|&v| v > u) {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        out
    }

    /// Exhaustive check of the local structure of the graph for PG(3,q).
    pub fn check_local_structure(&self) -> Result<LocalStructureReport> {
        let g = self.geometry;
        if g.n() != 3 {
            return Err(Error::InvalidArgument("local structure checks need PG(3,q)".into()));
        }
        let q = g.q();
        let n = self.num_vertices();
        let valency = q * (q + 1) * (q + 1);
        let clique_size = q * (q + 1) + 1;

        (0..n).into_par_iter().map(|v| self.check_neighborhood(v, valency)).collect::<Result<Vec<_>>>()?;

        let skew_pairs: Vec<usize> =
            (0..n).into_par_iter().map(|u| self.check_grids_from(u)).collect::<Result<Vec<_>>>()?;
        let adjacent_pairs: Vec<usize> =
            (0..n).into_par_iter().map(|u| self.check_adjacent_from(u)).collect::<Result<Vec<_>>>()?;

        for (name, family) in [("plane", &self.plane_cliques), ("point", &self.point_cliques)] {
            if family.iter().any(|c| c.count_ones(..) != clique_size) {
                return Err(violation(format!("a {name} clique does not have size {clique_size}")));
            }
        }
        let mut same_family_pairs = 0;
        for family in [&self.plane_cliques, &self.point_cliques] {
            for (i, a) in family.iter().enumerate() {
                for (j, b) in family.iter().enumerate().skip(i + 1) {
                    let k = a.intersection_count(b);
                    if k != 1 {
                        return Err(violation(format!("cliques {i} and {j} of one family share {k} lines")));
                    }
                    same_family_pairs += 1;
                }
            }
        }
        let mut cross = BTreeMap::new();
        for (i, a) in self.plane_cliques.iter().enumerate() {
            for (j, b) in self.point_cliques.iter().enumerate() {
                let k = a.intersection_count(b);
                if k != 0 && k != q + 1 {
                    return Err(violation(format!("plane clique {i} and point clique {j} share {k} lines")));
                }
                *cross.entry(k).or_insert(0) += 1;
            }
        }

        Ok(LocalStructureReport {
            geometry: g.descriptor(),
            vertices: n,
            valency,
            plane_cliques: self.plane_cliques.len(),
            point_cliques: self.point_cliques.len(),
            clique_size,
            residues_per_neighborhood: (q + 1) * (q + 1),
            residue_size: q,
            neighborhoods_checked: n,
            skew_pairs_checked: skew_pairs.iter().sum(),
            grid_side: q + 1,
            adjacent_pairs_checked: adjacent_pairs.iter().sum(),
            second_neighborhood_overlap: q * q * q,
            same_family_pairs_checked: same_family_pairs,
            cross_family_intersections: cross,
        })
    }

    /// G(v) is the q-clique extension of the (q+1)×(q+1) grid, with the q-cliques
    /// being the pencils through v minus v.
    fn check_neighborhood(&self, v: usize, valency: usize) -> Result<()> {
        let g = self.geometry;
        let q = g.q();
        let nbrs: Vec<usize> = self.adjacency[v].ones().collect();
        if nbrs.len() != valency {
            return Err(violation(format!("line {v} has valency {} instead of {valency}", nbrs.len())));
        }
        let points = g.line_points(v);
        let planes = g.planes_through_line(v);
        if points.len() != q + 1 || planes.len() != q + 1 {
            return Err(violation(format!("line {v} has {} points and {} planes", points.len(), planes.len())));
        }
        let mut covered = FixedBitSet::with_capacity(self.num_vertices());
        let mut residue_count = 0;
        for &p in points {
            for &pi in planes {
                let residue: Vec<usize> =
                    g.pencil(p, SubspaceId::plane(pi))?.into_iter().filter(|&w| w != v).collect();
                if residue.len() != q {
                    return Err(violation(format!("pencil ({p},{pi}) minus {v} has {} lines", residue.len())));
                }
                for &w in &residue {
                    if covered.put(w) {
                        return Err(violation(format!("line {w} lies in two pencil residues of {v}")));
                    }
                }
                residue_count += 1;
            }
        }
        if residue_count != (q + 1) * (q + 1) || covered != self.adjacency[v] {
            return Err(violation(format!("pencil residues of {v} do not partition G({v})")));
        }
        // grid adjacency between residues, clique inside each residue
        let labels: Vec<(usize, usize)> = nbrs
            .iter()
            .map(|&w| (g.meet_point(v, w).unwrap(), g.plane_of(v, w).unwrap()))
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                let expected = labels[i].0 == labels[j].0 || labels[i].1 == labels[j].1;
                if self.adjacent(a, b) != expected {
                    return Err(violation(format!(
                        "in G({v}), lines {a} and {b} adjacency is {} but the grid predicts {expected}",
                        self.adjacent(a, b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// For every v > u skew to u, G(u,v) is the (q+1)×(q+1) grid.
    fn check_grids_from(&self, u: usize) -> Result<usize> {
        let g = self.geometry;
        let side = g.q() + 1;
        let mut checked = 0;
        for v in (u + 1)..self.num_vertices() {
            if self.adjacent(u, v) {
                continue;
            }
            let common = self.common(u, v)?;
            let members: Vec<usize> = common.ones().collect();
            if members.len() != side * side {
                return Err(violation(format!("G({u},{v}) has {} vertices", members.len())));
            }
            let labels: Vec<(usize, usize)> = members
                .iter()
                .map(|&w| (g.meet_point(u, w).unwrap(), g.meet_point(v, w).unwrap()))
                .collect();
            let mut sorted = labels.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != side * side {
                return Err(violation(format!("G({u},{v}) is not indexed by point pairs")));
            }
            for (i, &a) in members.iter().enumerate() {
                for (j, &b) in members.iter().enumerate().skip(i + 1) {
                    let expected = labels[i].0 == labels[j].0 || labels[i].1 == labels[j].1;
                    if self.adjacent(a, b) != expected {
                        return Err(violation(format!("G({u},{v}) is not a grid at lines {a}, {b}")));
                    }
                }
            }
            checked += 1;
        }
        Ok(checked)
    }

    /// For every v > u adjacent to u: |G(v) ∩ G₂(u)| = q³ and exactly one
    /// (plane clique, point clique) pair contains both.
    fn check_adjacent_from(&self, u: usize) -> Result<usize> {
        let g = self.geometry;
        let q = g.q();
        let far = self.second_neighborhood(u);
        let mut checked = 0;
        for v in self.adjacency[u].ones().filter(|&v| v > u) {
            let overlap = self.adjacency[v].intersection_count(&far);
            if overlap != q * q * q {
                return Err(violation(format!("|G({v}) ∩ G₂({u})| = {overlap}")));
            }
            let planes = self.plane_cliques.iter().filter(|c| c.contains(u) && c.contains(v)).count();
            let points = self.point_cliques.iter().filter(|c| c.contains(u) && c.contains(v)).count();
            if planes != 1 || points != 1 {
                return Err(violation(format!(
                    "adjacent lines {u},{v} lie in {planes} plane cliques and {points} point cliques"
                )));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg32_valency_and_cliques() {
        let g = Geometry::build(3, 2).unwrap();
        let graph = LineGraph::build(&g);
        assert_eq!(graph.num_vertices(), 35);
        assert!((0..35).all(|u| graph.degree(u) == 18));
        assert_eq!(graph.plane_cliques().len(), 15);
        assert_eq!(graph.point_cliques().len(), 15);
    }

    #[test]
    fn neighborhoods_partition_vertices() {
        let g = Geometry::build(3, 2).unwrap();
        let graph = LineGraph::build(&g);
        let (near, far) = graph.neighborhoods(4).unwrap();
        assert_eq!(near.count_ones(..) + far.count_ones(..) + 1, 35);
        assert!(!near.contains(4) && !far.contains(4));
        assert_eq!(near.intersection_count(&far), 0);
        assert!(graph.neighborhoods(35).is_err());
    }

    #[test]
    fn local_structure_needs_pg3() {
        let g = Geometry::build(2, 2).unwrap();
        assert!(LineGraph::build(&g).check_local_structure().is_err());
    }

    #[test]
    fn edge_list_counts_edges_once() {
        let g = Geometry::build(3, 2).unwrap();
        let graph = LineGraph::build(&g);
        assert_eq!(graph.edge_list().lines().count(), 35 * 18 / 2);
    }
}
