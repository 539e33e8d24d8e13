//! Admissible Hamiltonian profiles, the orbit levels `b_k`, and Hamiltonian
//! actions.
//!
//! A profile is a convex function `h` of the cylindrical coordinate
//! `rho = e^r` that vanishes for `rho <= 2` and whose derivative grows
//! without bound. For each multiplicity `k >= 1` there is one orbit level:
//! the unique `b_k > log 2` with `h'(e^{b_k}) = k K`. Actions only feed the
//! action-filtration tests; homology itself never touches a float.

use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProfileError {
    /// Bracketing the level equation failed; the profile does not behave as
    /// an admissible one (increasing, unbounded derivative).
    #[error("profile is not admissible: could not bracket h'(rho) = {target}")]
    NotAdmissible { target: String },
}

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// An admissible Hamiltonian profile given by `h` and its derivative.
pub struct HamiltonianProfile {
    h: RealFn,
    h_prime: RealFn,
}

impl HamiltonianProfile {
    pub fn new(
        h: impl Fn(f64) -> f64 + Send + Sync + 'static,
        h_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        HamiltonianProfile { h: Box::new(h), h_prime: Box::new(h_prime) }
    }

    /// The default profile `h(rho) = (rho - 2)^2` for `rho > 2`, zero below.
    ///
    /// Only C^1 at `rho = 2`, which is irrelevant to action values, and its
    /// levels have the closed form `e^{b_k} = kK/2 + 2` with action
    /// `k^2 K^2 / 4 + 2kK` that the tests check against.
    pub fn default_quadratic() -> Self {
        HamiltonianProfile::new(
            |rho| if rho > 2.0 { (rho - 2.0) * (rho - 2.0) } else { 0.0 },
            |rho| if rho > 2.0 { 2.0 * (rho - 2.0) } else { 0.0 },
        )
    }

    pub fn h(&self, rho: f64) -> f64 {
        (self.h)(rho)
    }

    pub fn h_prime(&self, rho: f64) -> f64 {
        (self.h_prime)(rho)
    }
}

/// One family of non-constant orbits: multiplicity, level and action.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitLevel {
    pub multiplicity: u32,
    /// Level coordinate; always exceeds log 2.
    pub b_k: f64,
    /// Hamiltonian action `e^{b_k} h'(e^{b_k}) - h(e^{b_k})`; positive and
    /// strictly increasing in the multiplicity.
    pub action: f64,
}

const REL_TOL: f64 = 1e-13;

/// Solves `h'(e^{b_k}) = k K` for the unique level above log 2.
///
/// Bracketed bisection; strict monotonicity of `h'` past 2 guarantees a
/// unique root once a bracket is found.
pub fn solve_level(
    profile: &HamiltonianProfile,
    k: u32,
    k_const: &Rational,
) -> Result<OrbitLevel, ProfileError> {
    assert!(k >= 1, "orbit multiplicity must be at least 1");
    let target = k as f64 * rational_to_f64(k_const);
    let not_admissible = || ProfileError::NotAdmissible { target: format!("{target}") };

    let mut lo = 2.0f64;
    let mut hi = 4.0f64;
    let mut tries = 0;
    while profile.h_prime(hi) < target {
        hi *= 2.0;
        tries += 1;
        if tries > 1100 || !hi.is_finite() {
            return Err(not_admissible());
        }
    }
    if profile.h_prime(hi) < profile.h_prime(lo) {
        return Err(not_admissible());
    }

    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if profile.h_prime(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= REL_TOL * hi.abs() {
            break;
        }
    }
    let rho = 0.5 * (lo + hi);
    let action = rho * profile.h_prime(rho) - profile.h(rho);
    Ok(OrbitLevel { multiplicity: k, b_k: rho.ln(), action })
}

/// Action of any constant orbit: exactly zero.
pub fn action_of_constant() -> Rational {
    Rational::from_integer(0.into())
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("rational out of f64 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use num_traits::Zero;

    #[test]
    fn default_profile_levels_match_closed_form() {
        let profile = HamiltonianProfile::default_quadratic();
        // k=1, K=1: e^{b_1} = 5/2, action 9/4.
        let l1 = solve_level(&profile, 1, &rat(1)).unwrap();
        assert!((l1.b_k.exp() - 2.5).abs() < 1e-10);
        assert!((l1.action - 2.25).abs() < 1e-10);
        // k=2, K=1: e^{b_2} = 3, action 5.
        let l2 = solve_level(&profile, 2, &rat(1)).unwrap();
        assert!((l2.b_k.exp() - 3.0).abs() < 1e-10);
        assert!((l2.action - 5.0).abs() < 1e-10);
    }

    #[test]
    fn levels_sit_above_log_two() {
        let profile = HamiltonianProfile::default_quadratic();
        for k in 1..=20 {
            let l = solve_level(&profile, k, &rat(3)).unwrap();
            assert!(l.b_k > (2.0f64).ln());
        }
    }

    #[test]
    fn actions_increase_in_multiplicity() {
        // Also on a non-quadratic admissible profile.
        let profile = HamiltonianProfile::new(
            |rho| if rho > 2.0 { (rho - 2.0).powi(3) } else { 0.0 },
            |rho| if rho > 2.0 { 3.0 * (rho - 2.0) * (rho - 2.0) } else { 0.0 },
        );
        let mut prev = 0.0;
        for k in 1..=30 {
            let l = solve_level(&profile, k, &rat(1)).unwrap();
            assert!(l.action > prev, "action not increasing at k={k}");
            prev = l.action;
        }
    }

    #[test]
    fn constant_orbits_have_zero_action() {
        assert!(action_of_constant().is_zero());
        assert!(action_of_constant().is_zero());
    }

    #[test]
    fn bounded_derivative_is_rejected() {
        let profile = HamiltonianProfile::new(|_| 0.0, |rho| 1.0 - (-rho).exp());
        let err = solve_level(&profile, 5, &rat(1)).unwrap_err();
        assert!(matches!(err, ProfileError::NotAdmissible { .. }));
    }
}
