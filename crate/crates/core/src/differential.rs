//! Assembly of the full differential matrix from the Morse data and the
//! three coefficient tables.
//!
//! The nonzero families are:
//!   (a) check(p, k+) -> hat(q, k-): `(-1)^{M(q)} (k+ - k-) n_A(q, p)` for
//!       every sphere class with `k+ - k- = K w(A)`, plus the Euler-number
//!       coefficient at equal multiplicity;
//!   (b) check(p, k+) -> hat(p, k-): `(k+ - k-) n_B` over augmentation
//!       classes with `k+ - k- = K w(B)`;
//!   (c) check(p, k+) -> interior x: `k+ n_B(x, p)` over plane classes with
//!       `k+ = K w(B)`;
//!   (d) same-multiplicity check->check and hat->hat blocks equal to the
//!       base Morse differential;
//!   (e) the interior block equal to the filling Morse differential.
//! Hat generators have no other outgoing terms: the complex is a cone, upper
//! triangular in the (check, hat, interior) block decomposition.

use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex_builder::{
    build_generators, trusted_degree_range, Decoration, Generator, GeneratorKind, GradedComplex,
};
use crate::exact_linalg::IntMatrix;
use crate::hamiltonian::{HamiltonianProfile, ProfileError};
use crate::model::GeometrySpec;
use crate::{rat, Int};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DifferentialError {
    /// The assembled matrix does not square to zero; the input tables are
    /// mutually inconsistent.
    #[error("differential does not square to zero: nonzero composite from {source} to {target}")]
    SquareNonzero { source: String, target: String },
    /// A nonzero entry fails to drop degree by exactly 1.
    #[error("entry from {source} (degree {source_degree}) to {target} (degree {target_degree}) does not drop degree by 1")]
    DegreeDrop { source: String, source_degree: String, target: String, target_degree: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Differential(#[from] DifferentialError),
}

/// The same-multiplicity Morse differential on the circle bundle,
/// reconstructed from the base differential and the Euler-number table.
///
/// Check-to-check and hat-to-hat coefficients equal the base Morse
/// differential. The fibrewise check-to-hat coefficient over an index-2 pair
/// is the Euler number of the circle bundle restricted to the sphere the
/// pair sweeps out. The fibrewise component out of a hat generator vanishes:
/// its two downward flow lines cancel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseYDifferential {
    pub check_check: IntMatrix,
    pub hat_hat: IntMatrix,
    /// Rows index target points (hat), columns source points (check).
    pub check_hat: IntMatrix,
}

pub fn gysin_morse_y(spec: &GeometrySpec) -> MorseYDifferential {
    let n = spec.sigma_crit.len();
    let mut check_hat = IntMatrix::zeros(n, n);
    for e in &spec.euler_table {
        check_hat.add_assign_at(e.q, e.p, &e.euler_number);
    }
    MorseYDifferential {
        check_check: spec.d_sigma.clone(),
        hat_hat: spec.d_sigma.clone(),
        check_hat,
    }
}

/// Assembles the differential matrix for the given generator list.
///
/// The result is checked on the spot: every nonzero entry must drop degree
/// by exactly 1 and the matrix must square to zero. Either failure is a hard
/// error pointing at the offending generators.
pub fn assemble(
    spec: &GeometrySpec,
    generators: &[Generator],
    k_max: u32,
) -> Result<IntMatrix, DifferentialError> {
    let index: HashMap<GeneratorKind, usize> =
        generators.iter().enumerate().map(|(i, g)| (g.kind.clone(), i)).collect();
    let orbit = |point: usize, decoration: Decoration, multiplicity: u32| -> Option<usize> {
        index.get(&GeneratorKind::Orbit { point, decoration, multiplicity }).copied()
    };

    let morse_y = gysin_morse_y(spec);
    let mut d = IntMatrix::zeros(generators.len(), generators.len());

    for (col, g) in generators.iter().enumerate() {
        match &g.kind {
            GeneratorKind::Interior { point } => {
                // (e) interior block: Morse differential of the filling.
                for y in 0..spec.w_crit.len() {
                    let c = spec.d_w.get(y, *point);
                    if !c.is_zero() {
                        let row = index[&GeneratorKind::Interior { point: y }];
                        d.add_assign_at(row, col, c);
                    }
                }
            }
            GeneratorKind::Orbit { point: p, decoration: Decoration::Hat, multiplicity: k } => {
                // Hat generators only carry the base Morse term.
                for q in 0..spec.sigma_crit.len() {
                    let c = morse_y.hat_hat.get(q, *p);
                    if !c.is_zero() {
                        if let Some(row) = orbit(q, Decoration::Hat, *k) {
                            d.add_assign_at(row, col, c);
                        }
                    }
                }
            }
            GeneratorKind::Orbit { point: p, decoration: Decoration::Check, multiplicity: k_plus } => {
                // (d) same-multiplicity base Morse term.
                for q in 0..spec.sigma_crit.len() {
                    let c = morse_y.check_check.get(q, *p);
                    if !c.is_zero() {
                        if let Some(row) = orbit(q, Decoration::Check, *k_plus) {
                            d.add_assign_at(row, col, c);
                        }
                    }
                    // Same-multiplicity fibrewise term (Euler numbers).
                    let e = morse_y.check_hat.get(q, *p);
                    if !e.is_zero() {
                        if let Some(row) = orbit(q, Decoration::Hat, *k_plus) {
                            d.add_assign_at(row, col, e);
                        }
                    }
                }
                // (a) sphere classes in the hypersurface.
                for entry in spec.gw_sigma.iter().filter(|e| e.p == *p) {
                    let Some(k_minus) = multiplicity_after_drop(
                        *k_plus,
                        &spec.chern_normal(&entry.omega_area),
                    ) else {
                        continue;
                    };
                    let Some(row) = orbit(entry.q, Decoration::Hat, k_minus) else {
                        continue;
                    };
                    let drop = Int::from(*k_plus - k_minus);
                    let sign = if spec.sigma_crit[entry.q].morse_index % 2 == 0 {
                        Int::from(1)
                    } else {
                        Int::from(-1)
                    };
                    d.add_assign_at(row, col, &(sign * drop * &entry.coefficient));
                }
                // (b) augmentation classes.
                for entry in &spec.gw_aug {
                    let Some(k_minus) = multiplicity_after_drop(
                        *k_plus,
                        &spec.chern_normal(&entry.omega_area),
                    ) else {
                        continue;
                    };
                    let Some(row) = orbit(*p, Decoration::Hat, k_minus) else {
                        continue;
                    };
                    let drop = Int::from(*k_plus - k_minus);
                    d.add_assign_at(row, col, &(drop * &entry.coefficient));
                }
                // (c) plane classes hitting an interior point.
                for entry in spec.gw_plane.iter().filter(|e| e.p == *p) {
                    let intersection = spec.chern_normal(&entry.omega_area);
                    if intersection != rat(*k_plus as i64) {
                        continue;
                    }
                    let row = index[&GeneratorKind::Interior { point: entry.x }];
                    d.add_assign_at(row, col, &(Int::from(*k_plus) * &entry.coefficient));
                }
            }
        }
    }

    debug_assert!(
        generators.iter().all(|g| g.kind.multiplicity() <= k_max),
        "generator list exceeds the requested multiplicity cutoff"
    );
    check_degree_drop(generators, &d)?;
    check_square_zero(generators, &d)?;
    Ok(d)
}

/// Target multiplicity after dropping by the derived intersection number;
/// `None` when the target would sit below multiplicity 1.
fn multiplicity_after_drop(k_plus: u32, chern_normal: &crate::Rational) -> Option<u32> {
    debug_assert!(chern_normal.is_integer() && chern_normal.is_positive());
    let drop = chern_normal.to_integer();
    let Some(drop) = drop.to_u32() else {
        return None; // larger than any admissible multiplicity
    };
    if drop >= k_plus {
        None
    } else {
        Some(k_plus - drop)
    }
}

fn check_degree_drop(
    generators: &[Generator],
    d: &IntMatrix,
) -> Result<(), DifferentialError> {
    let one = rat(1);
    for (row, col, _) in d.nonzero_entries() {
        if generators[col].degree.clone() - generators[row].degree.clone() != one {
            return Err(DifferentialError::DegreeDrop {
                source: generators[col].label.clone(),
                source_degree: generators[col].degree.to_string(),
                target: generators[row].label.clone(),
                target_degree: generators[row].degree.to_string(),
            });
        }
    }
    Ok(())
}

fn check_square_zero(generators: &[Generator], d: &IntMatrix) -> Result<(), DifferentialError> {
    let square = d.mul(d);
    if let Some((row, col, _)) = square.nonzero_entries().next() {
        return Err(DifferentialError::SquareNonzero {
            source: generators[col].label.clone(),
            target: generators[row].label.clone(),
        });
    }
    Ok(())
}

/// Full pipeline from a validated spec to a graded complex with its trusted
/// degree range.
pub fn build_complex(
    spec: &GeometrySpec,
    k_max: u32,
    profile: &HamiltonianProfile,
) -> Result<GradedComplex, BuildError> {
    let generators = build_generators(spec, k_max, profile)?;
    let differential = assemble(spec, &generators, k_max)?;
    let trusted = trusted_degree_range(spec, k_max);
    Ok(GradedComplex::from_parts(generators, differential, k_max, trusted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::negative_monotone_mode;
    use crate::specgen::t_star_s2_spec;

    fn entry_of(complex: &GradedComplex, target: &str, source: &str) -> Int {
        let t = complex.generators.iter().position(|g| g.label == target).unwrap();
        let s = complex.generators.iter().position(|g| g.label == source).unwrap();
        complex.differential.get(t, s).clone()
    }

    fn column_support(complex: &GradedComplex, source: &str) -> Vec<(String, Int)> {
        let s = complex.generators.iter().position(|g| g.label == source).unwrap();
        complex
            .differential
            .nonzero_entries()
            .filter(|&(_, col, _)| col == s)
            .map(|(row, _, v)| (complex.generators[row].label.clone(), v.clone()))
            .collect()
    }

    #[test]
    fn gysin_reconstruction() {
        let spec = t_star_s2_spec();
        let m = gysin_morse_y(&spec);
        // Lacunary base function: both diagonal blocks vanish.
        assert!(m.check_check.is_zero());
        assert!(m.hat_hat.is_zero());
        // Euler number 2 of the bundle over the swept sphere.
        assert_eq!(m.check_hat.get(0, 1), &Int::from(2));
        // Trivial bundle would contribute nothing.
        let mut trivial = spec.clone();
        trivial.euler_table[0].euler_number = Int::from(0);
        assert!(gysin_morse_y(&trivial).check_hat.is_zero());
    }

    #[test]
    fn displayed_system_holds() {
        let spec = t_star_s2_spec();
        let profile = HamiltonianProfile::default_quadratic();
        let complex = build_complex(&spec, 4, &profile).unwrap();

        // First multiplicity is closed: the two plane counts cancel.
        assert!(column_support(&complex, "mv_1").is_empty());
        // Augmentation and tangency planes feed multiplicity two.
        let mut c = column_support(&complex, "mv_2");
        c.sort();
        assert_eq!(c, vec![("e".to_string(), Int::from(2)), ("m^_1".to_string(), Int::from(2))]);
        // Generic tower term.
        let mut c = column_support(&complex, "mv_3");
        c.sort();
        assert_eq!(c, vec![("M^_1".to_string(), Int::from(2)), ("m^_2".to_string(), Int::from(2))]);
        // First maximum orbit hits the interior minimum and the fibre term.
        let mut c = column_support(&complex, "Mv_1");
        c.sort();
        assert_eq!(c, vec![("e".to_string(), Int::from(2)), ("m^_1".to_string(), Int::from(2))]);
        // Towers of the maximum.
        let mut c = column_support(&complex, "Mv_3");
        c.sort();
        assert_eq!(c, vec![("M^_2".to_string(), Int::from(2)), ("m^_3".to_string(), Int::from(2))]);
        // Hat generators and interior points are closed.
        for label in ["m^_1", "M^_2", "e", "c"] {
            assert!(column_support(&complex, label).is_empty(), "{label} not closed");
        }
    }

    #[test]
    fn negative_monotone_keeps_only_fibre_terms() {
        let spec = negative_monotone_mode(&t_star_s2_spec());
        let profile = HamiltonianProfile::default_quadratic();
        let complex = build_complex(&spec, 3, &profile).unwrap();
        for k in 1..=3 {
            assert_eq!(entry_of(&complex, &format!("m^_{k}"), &format!("Mv_{k}")), Int::from(2));
            assert!(column_support(&complex, &format!("mv_{k}")).is_empty());
        }
        // Nothing else survives.
        let total: usize = complex.differential.nonzero_entries().count();
        assert_eq!(total, 3);
    }

    #[test]
    fn truncation_is_coherent() {
        let spec = t_star_s2_spec();
        let profile = HamiltonianProfile::default_quadratic();
        let small = build_complex(&spec, 3, &profile).unwrap();
        let large = build_complex(&spec, 4, &profile).unwrap();
        for gs in &small.generators {
            for gt in &small.generators {
                assert_eq!(
                    entry_of(&small, &gt.label, &gs.label),
                    entry_of(&large, &gt.label, &gs.label),
                    "entry ({}, {}) changed under deeper truncation",
                    gt.label,
                    gs.label
                );
            }
        }
    }

    #[test]
    fn inconsistent_tables_are_caught_by_square_check() {
        // A single sphere-class coefficient with a nonzero base differential
        // breaks the square; assemble must refuse rather than hand back a
        // broken complex.
        use crate::exact_linalg::IntMatrix;
        use crate::model::*;
        use crate::rat;
        // d_sigma sends c -> b, the Euler table sends b-checks to a-hats;
        // the composite path c-check -> b-check -> a-hat has no partner to
        // cancel against.
        let spec = GeometrySpec {
            n: 3,
            tau_x: rat(2),
            k_const: rat(1),
            sigma_crit: vec![
                SigmaCritPoint { name: "a".into(), morse_index: 0 },
                SigmaCritPoint { name: "b".into(), morse_index: 2 },
                SigmaCritPoint { name: "c".into(), morse_index: 3 },
            ],
            w_crit: vec![],
            d_sigma: IntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]),
            d_w: IntMatrix::zeros(0, 0),
            euler_table: vec![EulerEntry { q: 0, p: 1, euler_number: 3.into() }],
            gw_sigma: vec![],
            gw_aug: vec![],
            gw_plane: vec![],
        };
        assert!(crate::model::validate(&spec).is_ok());
        let profile = HamiltonianProfile::default_quadratic();
        let err = build_complex(&spec, 2, &profile).unwrap_err();
        assert!(matches!(err, BuildError::Differential(DifferentialError::SquareNonzero { .. })));
    }
}
