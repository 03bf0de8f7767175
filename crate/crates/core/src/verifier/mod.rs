//! Executable checks of iterated-image growth bounds.
//!
//! For a point-symmetric reflexive relation and any `j ≥ 1` with
//! `Γ^j(v) ∩ Γ⁻(v) = {v}` ("eligible" j), the growth step satisfies
//! `|Γ^j(v)| ≥ |Γ^{j-1}(v)| + r - 1` and cumulatively
//! `|Γ^j(v)| ≥ 1 + (r - 1)j`, where `r = |Γ(v)|`. For a point-symmetric
//! digraph of out-degree `r ≥ 1` and girth `g` this yields
//! `|V| ≥ 1 + r(g - 1)`.
//!
//! These are theorems; the checkers confirm them instance by instance and
//! report any violation with enough detail to reproduce it. The Seymour
//! check drops point-symmetry and is an open conjecture, scanned for
//! counterexamples by [`scan`].

mod scan;

pub use scan::{decode_instance, encode_instance, scan, JPolicy, ScanConfig, ScanMode, ScanReport};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::write_edge_list;
use crate::limits::Limits;
use crate::relation::Relation;
use crate::set::VertexSet;
use crate::symmetry::is_point_symmetric_with;

/// `|Γ^j(v)|` and eligibility for `j = 0..=jmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub vertex: usize,
    /// `r = |Γ(v)|`.
    pub degree: usize,
    pub sizes: Vec<usize>,
    /// `eligible[j]` iff `Γ^j(v) ∩ Γ⁻(v) = {v}`.
    pub eligible: Vec<bool>,
}

impl GrowthProfile {
    pub fn jmax(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Required size at step `j` from the step inequality, `|Γ^{j-1}(v)| + r - 1`.
    pub fn step_bound(&self, j: usize) -> usize {
        (self.sizes[j - 1] + self.degree).saturating_sub(1)
    }

    /// `1 + (r - 1)j`.
    pub fn cumulative_bound(&self, j: usize) -> usize {
        1 + self.degree.saturating_sub(1) * j
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `|Γ^j(v)| ≥ |Γ^{j-1}(v)| + r - 1`.
    GrowthStep,
    /// `|Γ^j(v)| ≥ 1 + (r - 1)j`.
    CumulativeGrowth,
    /// `Φ^{g-2}(v) ∩ Φ⁻(v) = {v}` for the reflexive closure `Φ`.
    GirthEligibility,
    /// `|V| ≥ 1 + r(g - 1)`.
    GirthBound,
    /// Neither Seymour disjunct holds at any vertex.
    Seymour,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    /// `None` for global inequalities.
    pub vertex: Option<usize>,
    pub j: usize,
    pub observed: usize,
    pub required: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub n: usize,
    pub edges: usize,
    /// First 16 hex digits of the SHA-256 of the edge-list encoding.
    pub hash: String,
}

impl Fingerprint {
    pub fn of(rel: &Relation) -> Self {
        let digest = Sha256::digest(write_edge_list(rel).as_bytes());
        let hash = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        Fingerprint { n: rel.n(), edges: rel.edge_count(), hash }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub holds: bool,
    pub violations: Vec<Violation>,
    pub fingerprint: Fingerprint,
}

impl CheckResult {
    fn from_violations(rel: &Relation, violations: Vec<Violation>) -> Self {
        CheckResult {
            holds: violations.is_empty(),
            violations,
            fingerprint: Fingerprint::of(rel),
        }
    }
}

fn profile_unchecked(rel: &Relation, v: usize, jmax: usize) -> GrowthProfile {
    let levels = rel.iterated_image_unchecked(v, jmax);
    let back = rel.preimage(v).expect("vertex checked by caller");
    let only_v = VertexSet::singleton(rel.n(), v).expect("vertex checked by caller");
    GrowthProfile {
        vertex: v,
        degree: rel.rows()[v].len(),
        sizes: levels.iter().map(VertexSet::len).collect(),
        eligible: levels.iter().map(|l| l.intersection(&back) == only_v).collect(),
    }
}

/// Growth profile of `v` up to `jmax` (default `n`).
pub fn growth_profile(rel: &Relation, v: usize, jmax: Option<usize>) -> Result<GrowthProfile> {
    rel.require_reflexive("growth profile")?;
    rel.check_vertex(v)?;
    Ok(profile_unchecked(rel, v, jmax.unwrap_or(rel.n())))
}

/// A reflexive relation whose point-symmetry has been verified.
#[derive(Debug, Clone, Copy)]
pub struct PointSymmetric<'a> {
    rel: &'a Relation,
}

impl<'a> PointSymmetric<'a> {
    pub fn certify(rel: &'a Relation) -> Result<Self> {
        Self::certify_with(rel, &Limits::default())
    }

    pub fn certify_with(rel: &'a Relation, limits: &Limits) -> Result<Self> {
        rel.require_reflexive("the growth theorem")?;
        if !is_point_symmetric_with(rel, limits)? {
            return Err(Error::contract(
                "the relation is not point-symmetric (no automorphism carries vertex 0 to every vertex)",
            ));
        }
        Ok(PointSymmetric { rel })
    }

    pub fn relation(&self) -> &'a Relation {
        self.rel
    }

    pub fn profile(&self, v: usize) -> Result<GrowthProfile> {
        self.rel.check_vertex(v)?;
        Ok(profile_unchecked(self.rel, v, self.rel.n()))
    }

    fn step_violations(&self, v: usize) -> Result<Vec<Violation>> {
        let p = self.profile(v)?;
        Ok((1..=p.jmax())
            .filter(|&j| p.eligible[j] && p.sizes[j] < p.step_bound(j))
            .map(|j| Violation {
                rule: Rule::GrowthStep,
                vertex: Some(v),
                j,
                observed: p.sizes[j],
                required: p.step_bound(j),
            })
            .collect())
    }

    fn cumulative_violations(&self, v: usize) -> Result<Vec<Violation>> {
        let p = self.profile(v)?;
        Ok((1..=p.jmax())
            .filter(|&j| p.eligible[j] && p.sizes[j] < p.cumulative_bound(j))
            .map(|j| Violation {
                rule: Rule::CumulativeGrowth,
                vertex: Some(v),
                j,
                observed: p.sizes[j],
                required: p.cumulative_bound(j),
            })
            .collect())
    }

    /// Step inequality at every eligible `j ≥ 1` for vertex `v`.
    pub fn check_step(&self, v: usize) -> Result<CheckResult> {
        Ok(CheckResult::from_violations(self.rel, self.step_violations(v)?))
    }

    /// Cumulative bound at every eligible `j ≥ 1` for vertex `v`.
    pub fn check_cumulative(&self, v: usize) -> Result<CheckResult> {
        Ok(CheckResult::from_violations(self.rel, self.cumulative_violations(v)?))
    }

    /// Both inequalities at every vertex.
    pub fn check_all(&self) -> CheckResult {
        let mut violations = Vec::new();
        for v in 0..self.rel.n() {
            violations.extend(self.step_violations(v).expect("vertex in range"));
            violations.extend(self.cumulative_violations(v).expect("vertex in range"));
        }
        CheckResult::from_violations(self.rel, violations)
    }
}

/// Checks `|Γ^j(v)| ≥ |Γ^{j-1}(v)| + |Γ(v)| - 1` at every eligible `j`,
/// after verifying that `rel` is reflexive and point-symmetric.
pub fn check_theorem_main(rel: &Relation, v: usize) -> Result<CheckResult> {
    PointSymmetric::certify(rel)?.check_step(v)
}

/// Checks `|Γ^j(v)| ≥ 1 + (r - 1)j` at every eligible `j`.
pub fn check_corollary_growth(rel: &Relation, v: usize) -> Result<CheckResult> {
    PointSymmetric::certify(rel)?.check_cumulative(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthBoundReport {
    pub n: usize,
    /// Out-degree `r` of the digraph.
    pub degree: usize,
    pub girth: usize,
    /// `1 + r(g - 1)`.
    pub bound: usize,
    pub check: CheckResult,
}

/// `|V| ≥ 1 + r(g - 1)` for a point-symmetric digraph of out-degree `r ≥ 1`.
///
/// Follows the reduction to the growth bound: with `Φ` the reflexive
/// closure, `Φ^{g-2}(v)` misses `Φ⁻(v) ∖ {v}` (a cycle through `v` has at
/// least `g` arcs), so `|V| - r ≥ |Φ^{g-2}(v)| ≥ 1 + (g - 2)r`. Each link
/// of that chain is checked at every vertex.
pub fn check_girth_bound(rel: &Relation) -> Result<GirthBoundReport> {
    check_girth_bound_with(rel, &Limits::default())
}

pub fn check_girth_bound_with(rel: &Relation, limits: &Limits) -> Result<GirthBoundReport> {
    if !rel.is_loopless() {
        return Err(Error::contract("the girth bound applies to loopless relations (digraphs)"));
    }
    let n = rel.n();
    if n == 0 {
        return Err(Error::domain("empty digraph"));
    }
    let r = rel.rows()[0].len();
    if r == 0 {
        return Err(Error::contract("the girth bound needs out-degree r ≥ 1"));
    }
    let phi = rel.reflexive_closure();
    let certified = PointSymmetric::certify_with(&phi, limits)?;
    let g = rel
        .girth()?
        .ok_or_else(|| Error::contract("digraph has no directed cycle"))?;

    let mut violations = Vec::new();
    let j = g - 2;
    for v in 0..n {
        let p = certified.profile(v)?;
        if !p.eligible[j] {
            let back = phi.preimage(v)?;
            let level = phi.iterated_image_unchecked(v, j).pop().expect("jmax + 1 levels");
            violations.push(Violation {
                rule: Rule::GirthEligibility,
                vertex: Some(v),
                j,
                observed: level.intersection(&back).len(),
                required: 1,
            });
        } else if j >= 1 && p.sizes[j] < p.cumulative_bound(j) {
            violations.push(Violation {
                rule: Rule::CumulativeGrowth,
                vertex: Some(v),
                j,
                observed: p.sizes[j],
                required: p.cumulative_bound(j),
            });
        }
    }
    let bound = 1 + r * (g - 1);
    if n < bound {
        violations.push(Violation {
            rule: Rule::GirthBound,
            vertex: None,
            j: g,
            observed: n,
            required: bound,
        });
    }
    Ok(GirthBoundReport {
        n,
        degree: r,
        girth: g,
        bound,
        check: CheckResult::from_violations(rel, violations),
    })
}

/// Which Seymour disjuncts hold at one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjuncts {
    /// `|Γ^j(x)| ≥ 1 + j(|Γ(x)| - 1)`.
    pub growth: bool,
    /// `Γ⁻(x) ∩ Γ^j(x) ≠ {x}`.
    pub reentry: bool,
}

impl Disjuncts {
    pub fn any(self) -> bool {
        self.growth || self.reentry
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeymourCheck {
    pub j: usize,
    pub check: CheckResult,
    pub per_vertex: Vec<Disjuncts>,
}

/// Per-vertex disjuncts for every `j` in `0..=jmax`: `out[j][x]`.
pub(crate) fn seymour_table(rel: &Relation, jmax: usize) -> Vec<Vec<Disjuncts>> {
    let n = rel.n();
    let mut table = vec![Vec::with_capacity(n); jmax + 1];
    for x in 0..n {
        let p = profile_unchecked(rel, x, jmax);
        for (j, row) in table.iter_mut().enumerate() {
            row.push(Disjuncts {
                growth: p.sizes[j] >= p.cumulative_bound(j),
                reentry: !p.eligible[j],
            });
        }
    }
    table
}

/// Whether some vertex `x` satisfies `|Γ^j(x)| ≥ 1 + j(|Γ(x)| - 1)` or
/// `Γ⁻(x) ∩ Γ^j(x) ≠ {x}`. Point-symmetry is not required.
pub fn check_conjecture_seymour(rel: &Relation, j: usize) -> Result<SeymourCheck> {
    rel.require_reflexive("the Seymour check")?;
    let per_vertex = seymour_table(rel, j).pop().expect("jmax + 1 rows");
    let violations = if per_vertex.iter().any(|d| d.any()) {
        Vec::new()
    } else {
        (0..rel.n())
            .map(|x| Violation {
                rule: Rule::Seymour,
                vertex: Some(x),
                j,
                observed: rel.iterated_image_unchecked(x, j)[j].len(),
                required: 1 + j * rel.rows()[x].len().saturating_sub(1),
            })
            .collect()
    };
    Ok(SeymourCheck {
        j,
        check: CheckResult::from_violations(rel, violations),
        per_vertex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::fixtures::{circulant, reflexive_cycle};

    #[test]
    fn profile_examples() {
        let p = growth_profile(&circulant(7, &[1, 2], true), 0, Some(3)).unwrap();
        assert_eq!(p.sizes, vec![1, 3, 5, 7]);
        assert_eq!(p.eligible, vec![true, true, true, false]);
        assert_eq!(p.degree, 3);

        let p = growth_profile(&reflexive_cycle(5), 0, None).unwrap();
        assert_eq!(p.sizes, vec![1, 2, 3, 4, 5, 5]);
        assert_eq!(p.eligible, vec![true, true, true, true, false, false]);

        let p = growth_profile(&Relation::complete(3), 0, Some(2)).unwrap();
        assert_eq!(p.sizes, vec![1, 3, 3]);
        assert_eq!(p.eligible, vec![true, false, false]);

        assert!(matches!(
            growth_profile(&circulant(5, &[1], false), 0, None),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn theorem_examples() {
        let c7 = circulant(7, &[1, 2], true);
        let res = check_theorem_main(&c7, 0).unwrap();
        assert!(res.holds);
        let p = growth_profile(&c7, 0, None).unwrap();
        assert_eq!((p.sizes[2], p.step_bound(2)), (5, 5));

        let c5 = reflexive_cycle(5);
        assert!(check_theorem_main(&c5, 0).unwrap().holds);
        let p = growth_profile(&c5, 0, None).unwrap();
        for j in 1..=3 {
            assert_eq!(p.sizes[j], p.step_bound(j));
        }

        assert!(check_theorem_main(&circulant(12, &[1, 2, 3], true), 0).unwrap().holds);
    }

    #[test]
    fn theorem_rejects_non_symmetric() {
        let path = Relation::from_edges(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap();
        let err = check_theorem_main(&path, 0).unwrap_err();
        assert!(err.to_string().contains("point-symmetric"), "{err}");
    }

    #[test]
    fn corollary_examples() {
        let c7 = circulant(7, &[1, 2], true);
        assert!(check_corollary_growth(&c7, 0).unwrap().holds);
        assert_eq!(growth_profile(&c7, 0, None).unwrap().cumulative_bound(2), 5);
        for n in 3..9 {
            let c = reflexive_cycle(n);
            let p = growth_profile(&c, 1, None).unwrap();
            for j in (1..=p.jmax()).filter(|&j| p.eligible[j]) {
                assert_eq!(p.sizes[j], p.cumulative_bound(j));
            }
        }
        assert!(check_corollary_growth(&circulant(10, &[1, 3], true), 0).unwrap().holds);
    }

    #[test]
    fn girth_bound_examples() {
        let c5 = check_girth_bound(&circulant(5, &[1], false)).unwrap();
        assert_eq!((c5.degree, c5.girth, c5.bound), (1, 5, 5));
        assert!(c5.check.holds);

        let c6 = check_girth_bound(&circulant(6, &[2, 3], false)).unwrap();
        assert_eq!((c6.degree, c6.girth, c6.bound), (2, 2, 3));
        assert!(c6.check.holds);

        let c7 = check_girth_bound(&circulant(7, &[1, 2], false)).unwrap();
        assert_eq!((c7.degree, c7.girth, c7.bound), (2, 4, 7));
        assert!(c7.check.holds);
    }

    #[test]
    fn girth_bound_hypotheses() {
        assert!(matches!(check_girth_bound(&reflexive_cycle(4)), Err(Error::Contract(_))));
        assert!(matches!(check_girth_bound(&Relation::empty(3)), Err(Error::Contract(_))));
        let path = Relation::from_edges(3, [(0, 1), (1, 2), (2, 1)]).unwrap();
        assert!(matches!(check_girth_bound(&path), Err(Error::Contract(_))));
    }

    #[test]
    fn seymour_examples() {
        let c7 = circulant(7, &[1, 2], true);
        for j in 0..8 {
            assert!(check_conjecture_seymour(&c7, j).unwrap().check.holds);
        }
        let k4 = Relation::complete(4);
        for j in 1..4 {
            let s = check_conjecture_seymour(&k4, j).unwrap();
            assert!(s.check.holds);
            assert!(s.per_vertex.iter().all(|d| d.reentry));
        }
        let s = check_conjecture_seymour(&reflexive_cycle(5), 3).unwrap();
        assert!(s.check.holds);
        assert!(s.per_vertex.iter().all(|d| d.growth && !d.reentry));
        assert!(check_conjecture_seymour(&circulant(3, &[1], false), 1).is_err());
    }

    #[test]
    fn step_inequalities_imply_cumulative() {
        for n in 3..=9 {
            for code in 1u32..(1 << (n - 1)) {
                let steps: Vec<usize> = (1..n).filter(|s| code >> (s - 1) & 1 == 1).collect();
                let rel = circulant(n, &steps, true);
                let p = growth_profile(&rel, 0, None).unwrap();
                let mut all_steps_hold = true;
                for j in 1..=p.jmax() {
                    if !p.eligible[j] {
                        break;
                    }
                    all_steps_hold &= p.sizes[j] >= p.step_bound(j);
                    if all_steps_hold {
                        assert!(p.sizes[j] >= p.cumulative_bound(j), "n={n} S={steps:?} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn fingerprint_is_stable() {
        let a = Fingerprint::of(&reflexive_cycle(4));
        let b = Fingerprint::of(&reflexive_cycle(4));
        assert_eq!(a, b);
        assert_eq!(a.hash.len(), 16);
        assert_ne!(a.hash, Fingerprint::of(&reflexive_cycle(5)).hash);
    }
}
