//! Spectra of the model asymptotic operators, perturbed Conley-Zehnder
//! indices, Morse-Bott Riemann-Roch indices, the automatic-transversality
//! criterion, and torus-lift counts.
//!
//! The model operator is `A_C = -i d/dt - diag(C, 0)` on loops; its spectrum
//! is `(-C +- sqrt(C^2 + 16 pi^2 k^2)) / 2` over integer k. Everything else
//! is integer arithmetic on top of that spectrum.

use thiserror::Error;

use crate::{rat, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("lift count needs k_minus <= k_plus, got {k_minus} > {k_plus}")]
    OrderViolation { k_minus: u32, k_plus: u32 },
}

/// The diagonal weight in the model asymptotic operator; nonnegative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticOperator {
    pub c: f64,
}

impl AsymptoticOperator {
    pub fn new(c: f64) -> Self {
        assert!(c >= 0.0, "the diagonal weight must be nonnegative");
        AsymptoticOperator { c }
    }
}

/// One spectral point: eigenvalue, eigenvector winding, multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralPoint {
    pub eigenvalue: f64,
    pub winding: i64,
    pub multiplicity: u8,
}

const WINDOW_TOL: f64 = 1e-12;

fn in_window(x: f64, lo: f64, hi: f64) -> bool {
    let slack_lo = WINDOW_TOL * lo.abs().max(1.0);
    let slack_hi = WINDOW_TOL * hi.abs().max(1.0);
    x >= lo - slack_lo && x <= hi + slack_hi
}

/// All eigenvalues of `A_C` inside `[lo, hi]`, sorted, with windings and
/// multiplicities.
///
/// Eigenvalues come in pairs per integer k except `0` and `-C`, which are
/// simple once `C > 0` and merge into one double eigenvalue 0 at `C = 0`.
/// The winding of an eigenvector is `|k|` for nonnegative eigenvalues and
/// `-|k|` for nonpositive ones. Window membership is decided with a `1e-12`
/// relative tolerance.
pub fn spectrum_in_window(op: AsymptoticOperator, lo: f64, hi: f64) -> Vec<SpectralPoint> {
    assert!(lo < hi, "empty spectral window");
    let c = op.c;
    let mut out = Vec::new();

    if c == 0.0 {
        if in_window(0.0, lo, hi) {
            out.push(SpectralPoint { eigenvalue: 0.0, winding: 0, multiplicity: 2 });
        }
    } else {
        if in_window(0.0, lo, hi) {
            out.push(SpectralPoint { eigenvalue: 0.0, winding: 0, multiplicity: 1 });
        }
        if in_window(-c, lo, hi) {
            out.push(SpectralPoint { eigenvalue: -c, winding: 0, multiplicity: 1 });
        }
    }

    let mut k = 1i64;
    loop {
        let root = (c * c + 16.0 * std::f64::consts::PI.powi(2) * (k * k) as f64).sqrt();
        let plus = 0.5 * (-c + root);
        let minus = 0.5 * (-c - root);
        let mut hit = false;
        if in_window(plus, lo, hi) {
            out.push(SpectralPoint { eigenvalue: plus, winding: k, multiplicity: 2 });
            hit = true;
        }
        if in_window(minus, lo, hi) {
            out.push(SpectralPoint { eigenvalue: minus, winding: -k, multiplicity: 2 });
            hit = true;
        }
        // Both branches move monotonically away from the window.
        if !hit && plus > hi && minus < lo {
            break;
        }
        k += 1;
    }

    out.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));
    out
}

/// Supremum of admissible perturbations: the largest `delta` with
/// `[-delta, delta]` meeting the spectrum only in 0.
///
/// Equals `2 pi` at `C = 0` and `min(C, (-C + sqrt(C^2 + 16 pi^2)) / 2)`
/// otherwise; always at most `2 pi`.
pub fn max_admissible_delta(op: AsymptoticOperator) -> f64 {
    let c = op.c;
    let two_pi = 2.0 * std::f64::consts::PI;
    if c == 0.0 {
        two_pi
    } else {
        let gap_up = 0.5 * (-c + (c * c + 16.0 * std::f64::consts::PI.powi(2)).sqrt());
        c.min(gap_up)
    }
}

/// Direction of the spectral perturbation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    PlusDelta,
    MinusDelta,
}

/// Conley-Zehnder index of the perturbed model operator `A_C +- delta`, for
/// any admissible `delta`.
pub fn cz_perturbed(c: f64, perturbation: Perturbation) -> i64 {
    assert!(c >= 0.0, "the diagonal weight must be nonnegative");
    match perturbation {
        Perturbation::PlusDelta => {
            if c > 0.0 {
                0
            } else {
                -1
            }
        }
        Perturbation::MinusDelta => 1,
    }
}

/// Sign of a puncture of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PunctureSign {
    Positive,
    Negative,
}

/// Asymptotic data at one puncture: perturbed Conley-Zehnder index and the
/// dimension/codimension of the chosen subspace of the asymptotic kernel.
///
/// `v_dim + v_codim` is the kernel dimension, 1 or 2 for the model
/// operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PunctureDatum {
    pub sign: PunctureSign,
    pub cz_perturbed: i64,
    pub v_dim: u32,
    pub v_codim: u32,
}

impl PunctureDatum {
    pub fn positive(cz_perturbed: i64, v_dim: u32, v_codim: u32) -> Self {
        PunctureDatum { sign: PunctureSign::Positive, cz_perturbed, v_dim, v_codim }
    }

    pub fn negative(cz_perturbed: i64, v_dim: u32, v_codim: u32) -> Self {
        PunctureDatum { sign: PunctureSign::Negative, cz_perturbed, v_dim, v_codim }
    }
}

/// Fredholm index of a Cauchy-Riemann problem with prescribed asymptotic
/// subspaces:
/// `chi + sum_pos (cz + dim V) - sum_neg (cz + codim V)`.
pub fn fredholm_index(euler_char: i64, punctures: &[PunctureDatum]) -> i64 {
    let mut index = euler_char;
    for p in punctures {
        match p.sign {
            PunctureSign::Positive => index += p.cz_perturbed + p.v_dim as i64,
            PunctureSign::Negative => index -= p.cz_perturbed + p.v_codim as i64,
        }
    }
    index
}

/// Automatic-transversality bookkeeping for the genus-0, no-even-puncture
/// problems in play: the adjusted normal Chern number is `(ind - 2) / 2` and
/// the criterion passes when it is smaller than the index.
pub fn automatic_transversality(ind: i64) -> (Rational, bool) {
    let c1_normal = rat(ind - 2) / rat(2);
    let passes = c1_normal < rat(ind);
    (c1_normal, passes)
}

/// Number of torus lifts with prescribed asymptotic markers: the absolute
/// determinant of `[[k_minus, 1], [k_plus, 1]]`, i.e. `k_plus - k_minus`.
pub fn lift_count(k_minus: u32, k_plus: u32) -> Result<u32, IndexError> {
    if k_minus > k_plus {
        return Err(IndexError::OrderViolation { k_minus, k_plus });
    }
    Ok(k_plus - k_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const EPS: f64 = 1e-12;

    #[test]
    fn spectrum_of_the_unweighted_operator() {
        let pts = spectrum_in_window(AsymptoticOperator::new(0.0), -7.0, 7.0);
        assert_eq!(pts.len(), 3);
        assert!((pts[0].eigenvalue + 2.0 * PI).abs() < EPS);
        assert_eq!((pts[0].winding, pts[0].multiplicity), (-1, 2));
        assert_eq!(pts[1].eigenvalue, 0.0);
        assert_eq!((pts[1].winding, pts[1].multiplicity), (0, 2));
        assert!((pts[2].eigenvalue - 2.0 * PI).abs() < EPS);
        assert_eq!((pts[2].winding, pts[2].multiplicity), (1, 2));
    }

    #[test]
    fn weighted_operator_splits_the_kernel_pair() {
        let pts = spectrum_in_window(AsymptoticOperator::new(3.0), -3.5, 0.5);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].eigenvalue, -3.0);
        assert_eq!((pts[0].winding, pts[0].multiplicity), (0, 1));
        assert_eq!(pts[1].eigenvalue, 0.0);
        assert_eq!((pts[1].winding, pts[1].multiplicity), (0, 1));
    }

    #[test]
    fn empty_window() {
        assert!(spectrum_in_window(AsymptoticOperator::new(0.0), 0.1, 1.0).is_empty());
    }

    #[test]
    fn admissible_delta_limits() {
        assert!((max_admissible_delta(AsymptoticOperator::new(0.0)) - 2.0 * PI).abs() < EPS);
        // Large weights push the gap to zero from above.
        let mut prev = max_admissible_delta(AsymptoticOperator::new(1.0));
        for c in [10.0, 100.0, 1000.0] {
            let d = max_admissible_delta(AsymptoticOperator::new(c));
            assert!(d > 0.0 && d < prev);
            prev = d;
        }
        // Never exceeds 2 pi.
        for c in [0.0, 0.5, 2.0, 6.2, 50.0] {
            assert!(max_admissible_delta(AsymptoticOperator::new(c)) <= 2.0 * PI + EPS);
        }
    }

    #[test]
    fn cz_table() {
        assert_eq!(cz_perturbed(5.0, Perturbation::PlusDelta), 0);
        assert_eq!(cz_perturbed(0.0, Perturbation::PlusDelta), -1);
        assert_eq!(cz_perturbed(0.0, Perturbation::MinusDelta), 1);
        assert_eq!(cz_perturbed(7.3, Perturbation::MinusDelta), 1);
    }

    #[test]
    fn four_reference_indices() {
        // Unpunctured cylinder, full asymptotic kernels at both ends.
        let d_j = fredholm_index(
            0,
            &[PunctureDatum::positive(-1, 2, 0), PunctureDatum::negative(-1, 0, 2)],
        );
        assert_eq!(d_j, 2);
        // Deformed cylinder problem with constrained ends.
        let d_1t = fredholm_index(
            0,
            &[PunctureDatum::positive(0, 1, 0), PunctureDatum::negative(0, 0, 1)],
        );
        assert_eq!(d_1t, 0);
        // Same with an extra augmentation puncture.
        let d_2t = fredholm_index(
            -1,
            &[
                PunctureDatum::positive(0, 1, 0),
                PunctureDatum::negative(0, 0, 1),
                PunctureDatum::negative(-1, 2, 0),
            ],
        );
        assert_eq!(d_2t, 0);
        // Plane-capped end: free negative asymptotics.
        let d_3 = fredholm_index(
            0,
            &[PunctureDatum::positive(0, 1, 0), PunctureDatum::negative(-1, 2, 0)],
        );
        assert_eq!(d_3, 2);
        // Transversality passes for all four.
        for ind in [d_j, d_1t, d_2t, d_3] {
            assert!(automatic_transversality(ind).1);
        }
    }

    #[test]
    fn punctured_cylinder_variant_also_has_index_two() {
        let ind = fredholm_index(
            -1,
            &[
                PunctureDatum::positive(-1, 2, 0),
                PunctureDatum::negative(-1, 0, 2),
                PunctureDatum::negative(-1, 2, 0),
            ],
        );
        assert_eq!(ind, 2);
    }

    #[test]
    fn transversality_values() {
        assert_eq!(automatic_transversality(2), (crate::rat(0), true));
        assert_eq!(automatic_transversality(0), (crate::rat(-1), true));
        assert_eq!(automatic_transversality(-2), (crate::rat(-2), false));
        // Odd index: half-integral adjusted Chern number.
        let (c1, passes) = automatic_transversality(1);
        assert_eq!(c1, crate::ratio(-1, 2));
        assert!(passes);
    }

    #[test]
    fn lift_counts() {
        assert_eq!(lift_count(1, 3).unwrap(), 2);
        assert_eq!(lift_count(4, 4).unwrap(), 0);
        assert_eq!(lift_count(0, 5).unwrap(), 5);
        assert_eq!(
            lift_count(3, 1).unwrap_err(),
            IndexError::OrderViolation { k_minus: 3, k_plus: 1 }
        );
    }
}
