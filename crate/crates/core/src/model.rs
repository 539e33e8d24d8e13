//! The complete input data model: monotonicity constants, Morse complexes of
//! the hypersurface and the filling, the Euler-number table, and the three
//! Gromov-Witten coefficient tables.
//!
//! Homology classes are never stored directly. Each table entry carries only
//! its symplectic area, and every Chern or intersection number is derived
//! through the monotonicity identities
//! `c1(TS).A = (tau_X - K) w(A)`, `c1(NS).A = K w(A)`, `B.S = K w(B)`.
//! Inconsistent inputs are therefore unrepresentable once validation passes.

use num_traits::{One, Signed, Zero};

use crate::exact_linalg::IntMatrix;
use crate::{Int, Rational};

/// Critical point of the Morse function on the hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCritPoint {
    pub name: String,
    /// Morse index; lies in `[0, 2n-2]`.
    pub morse_index: i64,
}

/// Critical point of the Morse function on the filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WCritPoint {
    pub name: String,
    /// Morse index; lies in `[0, 2n]`.
    pub morse_index: i64,
}

/// Euler number of the circle bundle over the sphere swept between two
/// hypersurface critical points of index difference 2. Supplies the
/// same-multiplicity check-to-hat Morse coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerEntry {
    /// Target point q of the induced differential; `M(p) - M(q) = 2`.
    pub q: usize,
    /// Source point p.
    pub p: usize,
    pub euler_number: Int,
}

/// Signed sphere count in the hypersurface, keyed by the class area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaClassEntry {
    pub q: usize,
    pub p: usize,
    /// Symplectic area of the class; all Chern numbers derive from it.
    pub omega_area: Rational,
    pub coefficient: Int,
}

/// Signed count of augmentation planes, keyed by the class area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugClassEntry {
    pub omega_area: Rational,
    pub coefficient: Int,
}

/// Signed count of planes through an interior critical point, keyed by the
/// class area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneClassEntry {
    /// Interior critical point x.
    pub x: usize,
    /// Hypersurface critical point p.
    pub p: usize,
    pub omega_area: Rational,
    pub coefficient: Int,
}

/// The complete input: constants, Morse data and coefficient tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometrySpec {
    /// Complex dimension of the ambient manifold; the filling has real
    /// dimension 2n.
    pub n: i64,
    /// Monotonicity constant of the ambient manifold.
    pub tau_x: Rational,
    /// The hypersurface is Poincare dual to K times the symplectic class.
    pub k_const: Rational,
    pub sigma_crit: Vec<SigmaCritPoint>,
    pub w_crit: Vec<WCritPoint>,
    /// Morse differential on the hypersurface; rows are targets, columns are
    /// sources, nonzero entries drop the Morse index by 1.
    pub d_sigma: IntMatrix,
    /// Morse differential of the negated filling function; nonzero entries
    /// raise the (unnegated) Morse index by 1.
    pub d_w: IntMatrix,
    pub euler_table: Vec<EulerEntry>,
    pub gw_sigma: Vec<SigmaClassEntry>,
    pub gw_aug: Vec<AugClassEntry>,
    pub gw_plane: Vec<PlaneClassEntry>,
}

impl GeometrySpec {
    /// The grading gap `tau_X - K`; positive on every valid spec.
    pub fn monotonicity_gap(&self) -> Rational {
        &self.tau_x - &self.k_const
    }

    /// Derived intersection number `K w`; an integer on valid entries.
    pub fn chern_normal(&self, omega: &Rational) -> Rational {
        &self.k_const * omega
    }

    /// Derived tangent Chern number `(tau_X - K) w`.
    pub fn chern_tangent(&self, omega: &Rational) -> Rational {
        self.monotonicity_gap() * omega
    }
}

/// One violated condition, naming the offending entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Which part of the spec the violation sits in, e.g. `gw_sigma[2]`.
    pub location: String,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// Outcome of validation: empty means the spec satisfies every invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<(), ValidationReport> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(self)
        }
    }

    fn push(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation { location: location.into(), message: message.into() });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn is_positive_integer(r: &Rational) -> bool {
    r.is_integer() && r.is_positive()
}

/// Checks every structural invariant of the spec and reports all violations.
///
/// Deterministic and pure: the report depends only on the input.
pub fn validate(spec: &GeometrySpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let two = crate::rat(2);

    if spec.n < 1 {
        report.push("geometry.n", "complex dimension must be a positive integer");
    }
    if !spec.tau_x.is_positive() {
        report.push("geometry.tau_x", "monotonicity constant must be positive");
    }
    if !spec.k_const.is_positive() {
        report.push("geometry.K", "divisor degree constant must be positive");
    }
    if spec.monotonicity_gap() <= Rational::zero() {
        report.push("geometry", "monotonicity gap must be positive (tau_x > K)");
    }

    // Critical point lists: unique names, index bounds.
    let mut seen = std::collections::BTreeSet::new();
    for (i, pt) in spec.sigma_crit.iter().enumerate() {
        if !seen.insert(pt.name.clone()) {
            report.push(format!("sigma_crit[{i}]"), format!("duplicate name {:?}", pt.name));
        }
        if pt.morse_index < 0 || pt.morse_index > 2 * spec.n - 2 {
            report.push(
                format!("sigma_crit[{i}]"),
                format!("Morse index {} outside [0, 2n-2]", pt.morse_index),
            );
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for (i, pt) in spec.w_crit.iter().enumerate() {
        if !seen.insert(pt.name.clone()) {
            report.push(format!("w_crit[{i}]"), format!("duplicate name {:?}", pt.name));
        }
        if pt.morse_index < 0 || pt.morse_index > 2 * spec.n {
            report.push(
                format!("w_crit[{i}]"),
                format!("Morse index {} outside [0, 2n]", pt.morse_index),
            );
        }
    }

    // Morse differentials: shape, index steps, square zero.
    let ns = spec.sigma_crit.len();
    let nw = spec.w_crit.len();
    if spec.d_sigma.rows() != ns || spec.d_sigma.cols() != ns {
        report.push("d_sigma", format!("expected a {ns}x{ns} matrix"));
    } else {
        for (i, j, _) in spec.d_sigma.nonzero_entries() {
            let dm = spec.sigma_crit[j].morse_index - spec.sigma_crit[i].morse_index;
            if dm != 1 {
                report.push(
                    "d_sigma",
                    format!(
                        "entry ({} -> {}) connects Morse indices differing by {dm}, expected source index = target index + 1",
                        spec.sigma_crit[j].name, spec.sigma_crit[i].name
                    ),
                );
            }
        }
        if !spec.d_sigma.mul(&spec.d_sigma).is_zero() {
            report.push("d_sigma", "differential does not square to zero");
        }
    }
    if spec.d_w.rows() != nw || spec.d_w.cols() != nw {
        report.push("d_w", format!("expected a {nw}x{nw} matrix"));
    } else {
        for (i, j, _) in spec.d_w.nonzero_entries() {
            let dm = spec.w_crit[i].morse_index - spec.w_crit[j].morse_index;
            if dm != 1 {
                report.push(
                    "d_w",
                    format!(
                        "entry ({} -> {}) connects Morse indices differing by {dm}, expected target index = source index + 1",
                        spec.w_crit[j].name, spec.w_crit[i].name
                    ),
                );
            }
        }
        if !spec.d_w.mul(&spec.d_w).is_zero() {
            report.push("d_w", "differential does not square to zero");
        }
    }

    for (i, e) in spec.euler_table.iter().enumerate() {
        let loc = format!("euler[{i}]");
        if e.q >= ns || e.p >= ns {
            report.push(loc, "critical point index out of range");
            continue;
        }
        let dm = spec.sigma_crit[e.p].morse_index - spec.sigma_crit[e.q].morse_index;
        if dm != 2 {
            report.push(
                loc,
                format!(
                    "M({}) - M({}) = {dm}, expected 2",
                    spec.sigma_crit[e.p].name, spec.sigma_crit[e.q].name
                ),
            );
        }
    }

    for (i, e) in spec.gw_sigma.iter().enumerate() {
        let loc = format!("gw_sigma[{i}]");
        if e.q >= ns || e.p >= ns {
            report.push(loc, "critical point index out of range");
            continue;
        }
        if e.q == e.p {
            // Same-point contributions enter through the augmentation table.
            report.push(loc, "entry pairs a point with itself");
        }
        if !e.omega_area.is_positive() {
            report.push(loc.clone(), "area must be positive");
            continue;
        }
        let cn = spec.chern_normal(&e.omega_area);
        if !is_positive_integer(&cn) {
            report.push(loc.clone(), format!("K*omega = {cn} is not a positive integer"));
        }
        let ct = spec.chern_tangent(&e.omega_area);
        if !ct.is_integer() {
            report.push(loc.clone(), format!("(tau_x - K)*omega = {ct} is not an integer"));
        }
        if ct > crate::rat(spec.n) {
            report.push(loc.clone(), format!("(tau_x - K)*omega = {ct} exceeds n = {}", spec.n));
        }
        let dim = &two * &ct
            + crate::rat(spec.sigma_crit[e.p].morse_index)
            - crate::rat(spec.sigma_crit[e.q].morse_index)
            - &two;
        if !dim.is_zero() {
            report.push(loc, format!("dimension condition violated: 2(tau_x-K)w + M(p) - M(q) - 2 = {dim}, expected 0"));
        }
    }

    for (i, e) in spec.gw_aug.iter().enumerate() {
        let loc = format!("gw_aug[{i}]");
        if !e.omega_area.is_positive() {
            report.push(loc, "area must be positive");
            continue;
        }
        let cn = spec.chern_normal(&e.omega_area);
        if !is_positive_integer(&cn) {
            report.push(loc.clone(), format!("K*omega = {cn} is not a positive integer"));
        }
        let ct = spec.chern_tangent(&e.omega_area);
        if !ct.is_one() {
            report.push(loc, format!("(tau_x - K)*omega = {ct}, expected exactly 1"));
        }
    }

    for (i, e) in spec.gw_plane.iter().enumerate() {
        let loc = format!("gw_plane[{i}]");
        if e.x >= nw || e.p >= ns {
            report.push(loc, "critical point index out of range");
            continue;
        }
        if !e.omega_area.is_positive() {
            report.push(loc, "area must be positive");
            continue;
        }
        let cn = spec.chern_normal(&e.omega_area);
        if !is_positive_integer(&cn) {
            report.push(loc.clone(), format!("K*omega = {cn} is not a positive integer"));
        }
        let dim = &two * spec.chern_tangent(&e.omega_area)
            + crate::rat(spec.sigma_crit[e.p].morse_index)
            + crate::rat(spec.w_crit[e.x].morse_index)
            - crate::rat(2 * spec.n);
        if !dim.is_zero() {
            report.push(loc, format!("dimension condition violated: 2(tau_x-K)w + M(p) + M(x) - 2n = {dim}, expected 0"));
        }
    }

    report
}

/// Copy of the spec with all three coefficient tables emptied.
///
/// Models the semipositive regime with negative monotonicity constants,
/// where no spheres contribute and the differential is purely Morse
/// theoretic.
pub fn negative_monotone_mode(spec: &GeometrySpec) -> GeometrySpec {
    GeometrySpec {
        gw_sigma: Vec::new(),
        gw_aug: Vec::new(),
        gw_plane: Vec::new(),
        ..spec.clone()
    }
}
