//! Generator enumeration up to a multiplicity cutoff, exact rational
//! gradings, and degree bucketing.
//!
//! Degrees are exact rationals because the per-multiplicity grading step
//! `2 (tau_X - K) / K` need not be an integer; bucketing on floats would
//! corrupt the complex. Truncation is by multiplicity, not action: the
//! differential never raises multiplicity, so the span of generators with
//! `k <= k_max` is a subcomplex and low degrees are computed exactly.

use crate::exact_linalg::IntMatrix;
use crate::hamiltonian::{solve_level, HamiltonianProfile, ProfileError};
use crate::model::GeometrySpec;
use crate::{rat, Rational};
use std::collections::BTreeMap;

/// Fibrewise decoration of an orbit generator: `Check` marks the fibrewise
/// minimum (index contribution 0), `Hat` the fibrewise maximum (contribution
/// 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    Check,
    Hat,
}

impl Decoration {
    /// Fibrewise Morse index contribution.
    pub fn index(self) -> i64 {
        match self {
            Decoration::Check => 0,
            Decoration::Hat => 1,
        }
    }

    pub fn marker(self) -> &'static str {
        match self {
            Decoration::Check => "v",
            Decoration::Hat => "^",
        }
    }
}

/// Basis element of the chain complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Orbit generator: hypersurface critical point, decoration, and cover
    /// multiplicity `k >= 1`.
    Orbit { point: usize, decoration: Decoration, multiplicity: u32 },
    /// Interior generator: critical point of the filling Morse function.
    Interior { point: usize },
}

impl GeneratorKind {
    /// Multiplicity with interior generators counted as 0.
    pub fn multiplicity(&self) -> u32 {
        match self {
            GeneratorKind::Orbit { multiplicity, .. } => *multiplicity,
            GeneratorKind::Interior { .. } => 0,
        }
    }
}

/// A generator together with its exact degree and (float) action.
#[derive(Clone, Debug)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub degree: Rational,
    pub action: f64,
    /// Render label, e.g. `mv_3`, `M^_1`, `e`.
    pub label: String,
}

/// Degree of an orbit generator: `M(p) + i(dec) + 1 - n + 2k(tau_X - K)/K`.
pub fn orbit_degree(spec: &GeometrySpec, point: usize, dec: Decoration, k: u32) -> Rational {
    let step = rat(2) * spec.monotonicity_gap() / spec.k_const.clone();
    rat(spec.sigma_crit[point].morse_index + dec.index() + 1 - spec.n) + step * rat(k as i64)
}

/// Degree of an interior generator: `n - M(x)`.
pub fn interior_degree(spec: &GeometrySpec, point: usize) -> Rational {
    rat(spec.n - spec.w_crit[point].morse_index)
}

/// Enumerates all generators with multiplicity up to `k_max` in the
/// deterministic order: interior generators by name, then orbit generators
/// by (multiplicity, point name, Check before Hat).
///
/// Produces exactly `2 |Crit(f_S)| k_max + |Crit(f_W)|` generators. Orbit
/// actions come from the level solver; interior actions are zero.
pub fn build_generators(
    spec: &GeometrySpec,
    k_max: u32,
    profile: &HamiltonianProfile,
) -> Result<Vec<Generator>, ProfileError> {
    let mut interior: Vec<usize> = (0..spec.w_crit.len()).collect();
    interior.sort_by(|&a, &b| spec.w_crit[a].name.cmp(&spec.w_crit[b].name));

    let mut sigma: Vec<usize> = (0..spec.sigma_crit.len()).collect();
    sigma.sort_by(|&a, &b| spec.sigma_crit[a].name.cmp(&spec.sigma_crit[b].name));

    let mut out = Vec::with_capacity(2 * spec.sigma_crit.len() * k_max as usize + interior.len());
    for &x in &interior {
        out.push(Generator {
            kind: GeneratorKind::Interior { point: x },
            degree: interior_degree(spec, x),
            action: 0.0,
            label: spec.w_crit[x].name.clone(),
        });
    }
    for k in 1..=k_max {
        let level = if spec.sigma_crit.is_empty() {
            None
        } else {
            Some(solve_level(profile, k, &spec.k_const)?)
        };
        for &p in &sigma {
            for dec in [Decoration::Check, Decoration::Hat] {
                out.push(Generator {
                    kind: GeneratorKind::Orbit { point: p, decoration: dec, multiplicity: k },
                    degree: orbit_degree(spec, p, dec, k),
                    action: level.as_ref().map(|l| l.action).unwrap_or(0.0),
                    label: format!("{}{}_{k}", spec.sigma_crit[p].name, dec.marker()),
                });
            }
        }
    }
    Ok(out)
}

/// Half-open degree interval on which truncated homology is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrustedRange {
    pub lo: Rational,
    /// Exclusive upper bound; `None` when the complex is finite and every
    /// degree is trusted.
    pub hi: Option<Rational>,
}

impl TrustedRange {
    pub fn contains(&self, d: &Rational) -> bool {
        if *d < self.lo {
            return false;
        }
        match &self.hi {
            Some(hi) => d < hi,
            None => true,
        }
    }
}

/// Degrees in which the `k <= k_max` truncation provably computes the full
/// homology.
///
/// Multiplicity is monotone along the differential, so truncation only cuts
/// incoming boundaries at degrees reaching the first excluded multiplicity:
/// degree `d` is trusted when `d + 1` is below the minimum degree of any
/// generator with multiplicity `k_max + 1`.
pub fn trusted_degree_range(spec: &GeometrySpec, k_max: u32) -> TrustedRange {
    let mut lo: Option<Rational> = None;
    for x in 0..spec.w_crit.len() {
        let d = interior_degree(spec, x);
        if lo.as_ref().is_none_or(|m| d < *m) {
            lo = Some(d);
        }
    }
    if k_max >= 1 {
        for p in 0..spec.sigma_crit.len() {
            let d = orbit_degree(spec, p, Decoration::Check, 1);
            if lo.as_ref().is_none_or(|m| d < *m) {
                lo = Some(d);
            }
        }
    }
    let hi = (0..spec.sigma_crit.len())
        .map(|p| orbit_degree(spec, p, Decoration::Check, k_max + 1))
        .min()
        .map(|m| m - rat(1));
    TrustedRange { lo: lo.unwrap_or_else(|| rat(0)), hi }
}

/// Generators bucketed by exact degree with their sparse integer
/// differential; columns index sources and rows index targets.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub generators: Vec<Generator>,
    pub degree_buckets: BTreeMap<Rational, Vec<usize>>,
    pub differential: IntMatrix,
    pub k_max: u32,
    pub trusted: TrustedRange,
}

impl GradedComplex {
    /// Assembles the bucketed structure from parts; the differential matrix
    /// must be square of the generator count.
    pub fn from_parts(
        generators: Vec<Generator>,
        differential: IntMatrix,
        k_max: u32,
        trusted: TrustedRange,
    ) -> Self {
        assert_eq!(differential.rows(), generators.len());
        assert_eq!(differential.cols(), generators.len());
        let mut degree_buckets: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            degree_buckets.entry(g.degree.clone()).or_default().push(i);
        }
        GradedComplex { generators, degree_buckets, differential, k_max, trusted }
    }

    /// Generator indices at one exact degree.
    pub fn bucket(&self, degree: &Rational) -> &[usize] {
        self.degree_buckets.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Differential block from degree `from` to degree `from - 1`; rows are
    /// the lower bucket, columns the upper.
    pub fn block(&self, from: &Rational) -> IntMatrix {
        let to = from.clone() - rat(1);
        self.differential.submatrix(self.bucket(&to), self.bucket(from))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.generators[i].label
    }
}
