//! Exhaustive enumeration of admissible patterns and the non-existence pipeline.
//!
//! Every pattern of a Cameron–Liebler class with parameter x satisfies
//! `row_k + col_l = x + (q+1)·t_kl + (q−1)·χ`, so the matrix is fixed by its row
//! and column sums. Enumeration therefore runs over pairs of sorted sum vectors
//! with the right total and residues, and reconstructs the entries.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cl::{reconstruct_entry, required_square_sum, required_total, Pattern};
use crate::error::{Error, Result};

pub const PRESETS: [&str; 2] = ["none", "gp-mod5"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternConstraints {
    /// Allowed values of |maximal clique ∩ L| for the cliques through the line.
    pub clique_values: Option<BTreeSet<u32>>,
    /// Whether the sum-of-squares condition is enforced.
    pub condition_four: bool,
}

impl Default for PatternConstraints {
    fn default() -> Self {
        PatternConstraints { clique_values: None, condition_four: true }
    }
}

impl PatternConstraints {
    pub fn with_clique_values(values: impl IntoIterator<Item = u32>) -> Self {
        PatternConstraints { clique_values: Some(values.into_iter().collect()), condition_four: true }
    }

    pub fn without_condition_four(mut self) -> Self {
        self.condition_four = false;
        self
    }

    fn validate(&self, q: usize) -> Result<()> {
        let max = (q * q + q + 1) as u32;
        if let Some(v) = self.clique_values.as_ref().and_then(|s| s.iter().find(|&&v| v > max)) {
            return Err(Error::InvalidArgument(format!("clique value {v} exceeds clique size {max}")));
        }
        Ok(())
    }

    fn allows(&self, p: &Pattern) -> bool {
        self.clique_values.as_ref().is_none_or(|allowed| p.clique_values().iter().all(|v| allowed.contains(v)))
    }
}

/// Named constraint sets. `gp-mod5` encodes the congruence of clique intersections
/// modulo 5 known for q = 4, x = 6.
pub fn preset(name: &str, q: usize, x: usize) -> Result<PatternConstraints> {
    match name {
        "none" => Ok(PatternConstraints::default()),
        "gp-mod5" if q == 4 && x == 6 => Ok(PatternConstraints::with_clique_values([3, 8, 13, 18])),
        "gp-mod5" => Err(Error::PresetNotApplicable { name: name.into(), q, x }),
        _ => Err(Error::UnknownPreset(name.into())),
    }
}

fn check_range(q: usize, x: usize, chi: u8) -> Result<()> {
    if x > q * q + 1 {
        return Err(Error::ParameterOutOfRange { x, max: q * q + 1 });
    }
    if chi > 1 {
        return Err(Error::InvalidArgument(format!("chi must be 0 or 1, got {chi}")));
    }
    Ok(())
}

/// Nondecreasing sequences of length `len` over `values` (sorted) summing to `total`.
fn sum_vectors(values: &[u32], len: usize, total: i64) -> Vec<Vec<u32>> {
    fn go(values: &[u32], start: usize, left: usize, total: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for (i, &v) in values.iter().enumerate().skip(start) {
            // the remaining entries are all >= v
            if (v as i64) * (left as i64) > total {
                break;
            }
            cur.push(v);
            go(values, i, left - 1, total - v as i64, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, 0, len, total, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Canonical patterns satisfying entry range, total and row/column identities
/// (and clique constraints), before the sum-of-squares condition.
fn reconstructed(q: usize, x: usize, chi: u8, constraints: &PatternConstraints) -> Vec<Pattern> {
    let m = (q + 1) as i64;
    let total = required_total(q, x, chi);
    let shift = x as i64 + (q as i64 - 1) * chi as i64;
    let residue_values = |r: i64| -> Vec<u32> { (0..=(q * (q + 1)) as u32).filter(|&v| (v as i64 - r).rem_euclid(m) == 0).collect() };
    let mut found = BTreeSet::new();
    for r in 0..m {
        let rows = sum_vectors(&residue_values(r), q + 1, total);
        let cols = sum_vectors(&residue_values(shift - r), q + 1, total);
        for rs in &rows {
            'pair: for cs in &cols {
                let mut entries = Vec::with_capacity((q + 1) * (q + 1));
                for &rk in rs {
                    for &cl in cs {
                        match reconstruct_entry(q, x, chi, rk, cl) {
                            Some(t) if t as usize <= q => entries.push(t),
                            _ => continue 'pair,
                        }
                    }
                }
                let p = Pattern::from_entries(q, chi, entries);
                if p.row_sums() == *rs && p.col_sums() == *cs && constraints.allows(&p) {
                    found.insert(p.canonical());
                }
            }
        }
    }
    found.into_iter().collect()
}

/// All canonical patterns of a line with membership `chi` in a class with parameter x.
pub fn admissible_patterns(q: usize, x: usize, chi: u8, constraints: &PatternConstraints) -> Result<Vec<Pattern>> {
    Ok(enumerate(q, x, chi, constraints)?.admissible)
}

/// Same as [`admissible_patterns`] with the sum-of-squares condition switched off.
pub fn intermediate_candidates(q: usize, x: usize, chi: u8, constraints: &PatternConstraints) -> Result<Vec<Pattern>> {
    admissible_patterns(q, x, chi, &constraints.clone().without_condition_four())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub pattern: Pattern,
    pub square_sum: u64,
    pub passes_condition_four: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStage {
    pub chi: u8,
    pub required_total: i64,
    pub required_square_sum: i64,
    /// Patterns meeting everything except possibly the sum-of-squares condition.
    pub candidates: Vec<Candidate>,
    pub admissible: Vec<Pattern>,
}

pub fn enumerate(q: usize, x: usize, chi: u8, constraints: &PatternConstraints) -> Result<EnumerationStage> {
    check_range(q, x, chi)?;
    constraints.validate(q)?;
    let required = required_square_sum(q, x, chi);
    let candidates: Vec<Candidate> = reconstructed(q, x, chi, constraints)
        .into_iter()
        .map(|pattern| {
            let square_sum = pattern.square_sum();
            Candidate { pattern, square_sum, passes_condition_four: square_sum as i64 == required }
        })
        .collect();
    let admissible = candidates
        .iter()
        .filter(|c| c.passes_condition_four || !constraints.condition_four)
        .map(|c| c.pattern.clone())
        .collect();
    Ok(EnumerationStage {
        chi,
        required_total: required_total(q, x, chi),
        required_square_sum: required,
        candidates,
        admissible,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Consistency {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub round: usize,
    pub chi: u8,
    pub pattern: Pattern,
    /// Clique value of the pattern that no pattern of the other kind shows.
    pub value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossConsistency {
    pub verdict: Consistency,
    /// Clique values seen from non-member and member lines, before elimination.
    pub v0: BTreeSet<u32>,
    pub v1: BTreeSet<u32>,
    pub eliminations: Vec<Elimination>,
    /// Values in v0 (≥ 1) missing from v1, and values in v1 (≤ q²+q) missing from v0.
    pub non_member_witnesses: BTreeSet<u32>,
    pub member_witnesses: BTreeSet<u32>,
    pub surviving_non_member: Vec<Pattern>,
    pub surviving_member: Vec<Pattern>,
}

fn values_of(patterns: &[Pattern]) -> BTreeSet<u32> {
    patterns.iter().flat_map(Pattern::clique_values).collect()
}

/// Every maximal clique meeting L in v ≥ 1 lines contains a member line, whose
/// pattern must show v; every clique with v ≤ q²+q contains a non-member line.
/// Patterns showing an unmatched value are dropped until nothing changes.
pub fn cross_consistency(s0: &[Pattern], s1: &[Pattern], q: usize, x: usize) -> Result<CrossConsistency> {
    if x < 1 || x > q * q {
        return Err(Error::ParameterOutOfRange { x, max: q * q });
    }
    if let Some(p) = s0.iter().chain(s1).find(|p| p.q() != q) {
        return Err(Error::InvalidArgument(format!("pattern over q={} in a q={q} check", p.q())));
    }
    if s0.iter().any(|p| p.chi() != 0) || s1.iter().any(|p| p.chi() != 1) {
        return Err(Error::InvalidArgument("pattern sets must be split by chi".into()));
    }
    let full = (q * q + q) as u32;
    let v0 = values_of(s0);
    let v1 = values_of(s1);
    let non_member_witnesses = v0.iter().copied().filter(|&v| v >= 1 && !v1.contains(&v)).collect();
    let member_witnesses = v1.iter().copied().filter(|&v| v <= full && !v0.contains(&v)).collect();

    let mut keep0: Vec<Pattern> = s0.to_vec();
    let mut keep1: Vec<Pattern> = s1.to_vec();
    let mut eliminations = Vec::new();
    for round in 1.. {
        let (cur0, cur1) = (values_of(&keep0), values_of(&keep1));
        let before = eliminations.len();
        keep0.retain(|p| match p.clique_values().into_iter().filter(|&v| v >= 1 && !cur1.contains(&v)).min() {
            Some(value) => {
                eliminations.push(Elimination { round, chi: 0, pattern: p.clone(), value });
                false
            }
            None => true,
        });
        keep1.retain(|p| match p.clique_values().into_iter().filter(|&v| v <= full && !cur0.contains(&v)).min() {
            Some(value) => {
                eliminations.push(Elimination { round, chi: 1, pattern: p.clone(), value });
                false
            }
            None => true,
        });
        if eliminations.len() == before {
            break;
        }
    }
    let verdict = if keep0.is_empty() || keep1.is_empty() { Consistency::Inconsistent } else { Consistency::Consistent };
    Ok(CrossConsistency {
        verdict,
        v0,
        v1,
        eliminations,
        non_member_witnesses,
        member_witnesses,
        surviving_non_member: keep0,
        surviving_member: keep1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Nonexistent,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonexistenceCertificate {
    pub q: usize,
    pub x: usize,
    pub preset: String,
    pub constraints: PatternConstraints,
    pub non_member: EnumerationStage,
    pub member: EnumerationStage,
    pub cross_consistency: CrossConsistency,
    pub verdict: Verdict,
    pub reason: String,
}

pub fn nonexistence(q: usize, x: usize, preset_name: &str) -> Result<NonexistenceCertificate> {
    let constraints = preset(preset_name, q, x)?;
    nonexistence_with(q, x, preset_name, constraints)
}

pub fn nonexistence_with(q: usize, x: usize, preset_name: &str, constraints: PatternConstraints) -> Result<NonexistenceCertificate> {
    if x < 1 || x > q * q {
        return Err(Error::ParameterOutOfRange { x, max: q * q });
    }
    let non_member = enumerate(q, x, 0, &constraints)?;
    let member = enumerate(q, x, 1, &constraints)?;
    let cross = cross_consistency(&non_member.admissible, &member.admissible, q, x)?;
    let (verdict, reason) = if non_member.admissible.is_empty() || member.admissible.is_empty() {
        let side = if non_member.admissible.is_empty() { "non-member" } else { "member" };
        (Verdict::Nonexistent, format!("no admissible {side} pattern"))
    } else if cross.verdict == Consistency::Inconsistent {
        (Verdict::Nonexistent, "member and non-member patterns disagree on clique values".to_string())
    } else {
        (Verdict::Undecided, "pattern conditions do not refute the parameter".to_string())
    };
    Ok(NonexistenceCertificate {
        q,
        x,
        preset: preset_name.to_string(),
        constraints,
        non_member,
        member,
        cross_consistency: cross,
        verdict,
        reason,
    })
}

/// Re-checks every recorded step of a certificate, then recomputes it from its
/// configuration and requires an identical result.
pub fn replay(cert: &NonexistenceCertificate) -> Result<Verdict> {
    let (q, x) = (cert.q, cert.x);
    for stage in [&cert.non_member, &cert.member] {
        let at = |what: &str| Error::ReplayMismatch(format!("chi={} {what}", stage.chi));
        if stage.required_total != required_total(q, x, stage.chi)
            || stage.required_square_sum != required_square_sum(q, x, stage.chi)
        {
            return Err(at("required sums"));
        }
        for (k, c) in stage.candidates.iter().enumerate() {
            let ids = c.pattern.identities(x);
            let ok = c.pattern.chi() == stage.chi
                && c.pattern.q() == q
                && ids.entries_in_range
                && ids.total
                && ids.row_column
                && cert.constraints.allows(&c.pattern)
                && c.square_sum == c.pattern.square_sum()
                && c.passes_condition_four == ids.squares;
            if !ok {
                return Err(at(&format!("candidate {k}")));
            }
        }
        let expected: Vec<&Pattern> = stage
            .candidates
            .iter()
            .filter(|c| c.passes_condition_four || !cert.constraints.condition_four)
            .map(|c| &c.pattern)
            .collect();
        if stage.admissible.iter().collect::<Vec<_>>() != expected {
            return Err(at("admissible set"));
        }
    }
    let fresh = nonexistence_with(q, x, &cert.preset, cert.constraints.clone())?;
    if fresh.constraints != preset(&cert.preset, q, x)? {
        return Err(Error::ReplayMismatch("constraints differ from the named preset".into()));
    }
    let fields = [
        ("non_member", fresh.non_member == cert.non_member),
        ("member", fresh.member == cert.member),
        ("cross_consistency", fresh.cross_consistency == cert.cross_consistency),
        ("verdict", fresh.verdict == cert.verdict),
        ("reason", fresh.reason == cert.reason),
    ];
    if let Some((name, _)) = fields.iter().find(|(_, same)| !same) {
        return Err(Error::ReplayMismatch((*name).into()));
    }
    Ok(fresh.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_parameter_gives_zero_pattern() {
        for q in [2, 3, 4] {
            let ps = admissible_patterns(q, 0, 0, &PatternConstraints::default()).unwrap();
            assert_eq!(ps.len(), 1);
            assert!(ps[0].entries().iter().all(|&t| t == 0));
        }
    }

    #[test]
    fn full_parameter_member_pattern_is_constant() {
        let ps = admissible_patterns(3, 10, 1, &PatternConstraints::default()).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].entries().iter().all(|&t| t == 3));
    }

    #[test]
    fn sum_vectors_are_sorted_and_complete() {
        let v = sum_vectors(&[0, 5, 10], 3, 15);
        assert_eq!(v, vec![vec![0, 5, 10], vec![5, 5, 5]]);
        assert!(sum_vectors(&[1], 2, 3).is_empty());
    }

    #[test]
    fn presets_are_validated() {
        assert!(matches!(preset("gp-mod5", 4, 5), Err(Error::PresetNotApplicable { .. })));
        assert!(matches!(preset("mod7", 4, 6), Err(Error::UnknownPreset(_))));
        assert_eq!(preset("none", 4, 5).unwrap(), PatternConstraints::default());
    }

    #[test]
    fn out_of_range_inputs() {
        assert!(admissible_patterns(4, 18, 0, &PatternConstraints::default()).is_err());
        assert!(cross_consistency(&[], &[], 4, 0).is_err());
        assert!(PatternConstraints::with_clique_values([22]).validate(4).is_err());
    }

    #[test]
    fn empty_side_is_inconsistent() {
        let s1 = admissible_patterns(4, 7, 1, &PatternConstraints::default()).unwrap();
        let r = cross_consistency(&[], &s1, 4, 7).unwrap();
        assert_eq!(r.verdict, Consistency::Inconsistent);
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut cert = nonexistence(4, 5, "none").unwrap();
        assert_eq!(replay(&cert).unwrap(), Verdict::Nonexistent);
        cert.verdict = Verdict::Undecided;
        assert!(matches!(replay(&cert), Err(Error::ReplayMismatch(_))));
    }
}
