//! Per-degree homology of a graded complex over the integers, the
//! rationals, or a prime field; the positive quotient complex; and rank
//! verification of the induced long exact sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::complex_builder::{Decoration, GeneratorKind, GradedComplex};
use crate::exact_linalg::{
    self, fp_kernel_basis, fp_matrix, fp_rank, homology_of_pair_with_basis, rank_mod_p,
    rat_kernel_basis, rat_rank, rational_entries, HomologyGroup, IntMatrix, LinalgError,
};
use crate::{rat, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0} is not a field; pick the rationals or a prime modulus")]
    NotAField(String),
}

/// Coefficient ring for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRing {
    Integer,
    Rational,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientRing::Integer)
    }
}

impl std::fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientRing::Integer => write!(f, "Z"),
            CoefficientRing::Rational => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Integer chain: generator indices with coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub terms: Vec<(usize, BigInt)>,
}

impl Chain {
    fn from_dense(indices: &[usize], coeffs: &[BigInt]) -> Self {
        let terms = indices
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&i, c)| (i, c.clone()))
            .collect();
        Chain { terms }
    }

    /// Renders the chain through the complex's generator labels.
    pub fn render(&self, complex: &GradedComplex) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (pos, (i, c)) in self.terms.iter().enumerate() {
            let label = complex.label(*i);
            if pos == 0 {
                if c == &BigInt::from(1) {
                    out.push_str(label);
                } else if c == &BigInt::from(-1) {
                    out.push_str(&format!("-{label}"));
                } else {
                    out.push_str(&format!("{c} {label}"));
                }
            } else if c.sign() == num_bigint::Sign::Minus {
                let mag = -c;
                if mag == BigInt::from(1) {
                    out.push_str(&format!(" - {label}"));
                } else {
                    out.push_str(&format!(" - {mag} {label}"));
                }
            } else if c == &BigInt::from(1) {
                out.push_str(&format!(" + {label}"));
            } else {
                out.push_str(&format!(" + {c} {label}"));
            }
        }
        out
    }
}

/// Homology in one degree: the group plus named representatives (integer
/// coefficients only).
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub group: HomologyGroup,
    pub free_representatives: Vec<Chain>,
    pub torsion_representatives: Vec<Chain>,
}

/// Homology of the trusted part of a complex, degrees in increasing order.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub ring: CoefficientRing,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn group_at(&self, degree: &Rational) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| &d.group.degree == degree)
    }
}

/// Blocks of the differential around one degree: incoming from above,
/// outgoing to below, restricted to the bucket index lists.
fn blocks_at(complex: &GradedComplex, degree: &Rational) -> (IntMatrix, IntMatrix) {
    let here = complex.bucket(degree);
    let above = complex.bucket(&(degree.clone() + rat(1)));
    let below = complex.bucket(&(degree.clone() - rat(1)));
    let d_in = complex.differential.submatrix(here, above);
    let d_out = complex.differential.submatrix(below, here);
    (d_in, d_out)
}

/// Per-degree homology over the chosen ring, restricted to trusted degrees.
///
/// Over the integers, representatives of the free and torsion generators are
/// extracted from the Smith bases. Over a field only dimensions are
/// reported; torsion is empty by definition.
pub fn compute_homology(
    complex: &GradedComplex,
    ring: CoefficientRing,
) -> Result<HomologyReport, HomologyError> {
    let mut degrees = Vec::new();
    for degree in complex.degree_buckets.keys() {
        if !complex.trusted.contains(degree) {
            continue;
        }
        let here = complex.bucket(degree);
        let (d_in, d_out) = blocks_at(complex, degree);
        match ring {
            CoefficientRing::Integer => {
                let (group, basis) = homology_of_pair_with_basis(degree.clone(), &d_in, &d_out)?;
                let free_representatives = (0..group.free_rank)
                    .map(|i| Chain::from_dense(here, &basis.free_representative(i)))
                    .collect();
                let torsion_representatives = (0..group.torsion.len())
                    .map(|i| Chain::from_dense(here, &basis.torsion_representative(i)))
                    .collect();
                degrees.push(DegreeHomology { group, free_representatives, torsion_representatives });
            }
            CoefficientRing::Rational => {
                let dim = here.len() - d_out.rank() - d_in.rank();
                degrees.push(DegreeHomology {
                    group: HomologyGroup { degree: degree.clone(), free_rank: dim, torsion: vec![] },
                    free_representatives: vec![],
                    torsion_representatives: vec![],
                });
            }
            CoefficientRing::PrimeField(p) => {
                let dim = here.len() - rank_mod_p(&d_out, p)? - rank_mod_p(&d_in, p)?;
                degrees.push(DegreeHomology {
                    group: HomologyGroup { degree: degree.clone(), free_rank: dim, torsion: vec![] },
                    free_representatives: vec![],
                    torsion_representatives: vec![],
                });
            }
        }
    }
    Ok(HomologyReport { ring, degrees })
}

/// Class arithmetic helper around one degree of an integer complex.
pub struct DegreeClasses {
    bucket: Vec<usize>,
    basis: exact_linalg::PairBasis,
}

impl DegreeClasses {
    /// Coordinates of a chain's homology class; `None` if the chain is not a
    /// cycle (or not supported on this degree).
    pub fn class_coords(&self, chain: &Chain) -> Option<exact_linalg::ClassCoords> {
        let mut dense = vec![BigInt::zero(); self.bucket.len()];
        for (gen, coeff) in &chain.terms {
            let pos = self.bucket.iter().position(|g| g == gen)?;
            dense[pos] = coeff.clone();
        }
        self.basis.class_coords(&dense)
    }

    /// Whether two cycles are homologous.
    pub fn homologous(&self, a: &Chain, b: &Chain) -> bool {
        match (self.class_coords(a), self.class_coords(b)) {
            (Some(ca), Some(cb)) => ca == cb,
            _ => false,
        }
    }
}

/// Builds the class calculator at one degree of the complex (over Z).
pub fn degree_classes(
    complex: &GradedComplex,
    degree: &Rational,
) -> Result<DegreeClasses, HomologyError> {
    let (d_in, d_out) = blocks_at(complex, degree);
    let (_, basis) = homology_of_pair_with_basis(degree.clone(), &d_in, &d_out)?;
    Ok(DegreeClasses { bucket: complex.bucket(degree).to_vec(), basis })
}

/// The positive quotient complex and the chain maps split off the cone
/// shape: the hat-to-check coefficient matrix and the check-to-interior
/// matrix.
#[derive(Clone, Debug)]
pub struct ConeData {
    /// Orbit generators only, with the induced differential.
    pub positive: GradedComplex,
    /// Positions of check generators inside `positive`.
    pub checks: Vec<usize>,
    /// Positions of hat generators inside `positive`.
    pub hats: Vec<usize>,
    /// Multiplicity-shifting coefficient matrix; rows are hats, columns are
    /// checks (both indexed by their position in `checks` / `hats`).
    pub delta: IntMatrix,
    /// Check-to-interior block of the full differential; rows follow the
    /// parent complex's interior generators in order.
    pub interior_map: IntMatrix,
}

/// Splits off the positive complex (orbit generators modulo interior ones)
/// together with the connecting data of the cone presentation.
///
/// Interior generators only map to interior generators, so the quotient
/// differential is the orbit-to-orbit block. The chain-map identities for
/// the two split maps are submatrices of the square of the differential and
/// are re-checked here.
pub fn build_positive_complex(complex: &GradedComplex) -> ConeData {
    let orbit_idx: Vec<usize> = complex
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| matches!(g.kind, GeneratorKind::Orbit { .. }))
        .map(|(i, _)| i)
        .collect();
    let interior_idx: Vec<usize> = complex
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| matches!(g.kind, GeneratorKind::Interior { .. }))
        .map(|(i, _)| i)
        .collect();

    let generators: Vec<_> = orbit_idx.iter().map(|&i| complex.generators[i].clone()).collect();
    let differential = complex.differential.submatrix(&orbit_idx, &orbit_idx);
    let positive = GradedComplex::from_parts(
        generators,
        differential,
        complex.k_max,
        complex.trusted.clone(),
    );

    let checks: Vec<usize> = positive
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| {
            matches!(g.kind, GeneratorKind::Orbit { decoration: Decoration::Check, .. })
        })
        .map(|(i, _)| i)
        .collect();
    let hats: Vec<usize> = positive
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| {
            matches!(g.kind, GeneratorKind::Orbit { decoration: Decoration::Hat, .. })
        })
        .map(|(i, _)| i)
        .collect();

    let delta = positive.differential.submatrix(&hats, &checks);
    let parent_checks: Vec<usize> = checks.iter().map(|&i| orbit_idx[i]).collect();
    let interior_map = complex.differential.submatrix(&interior_idx, &parent_checks);

    // Chain-map identities, inherited from the vanishing square.
    let check_block = positive.differential.submatrix(&checks, &checks);
    let hat_block = positive.differential.submatrix(&hats, &hats);
    let anti = delta.mul(&check_block);
    let hat_delta = hat_block.mul(&delta);
    let mut sum = IntMatrix::zeros(anti.rows(), anti.cols());
    for (i, j, v) in anti.nonzero_entries() {
        sum.add_assign_at(i, j, v);
    }
    for (i, j, v) in hat_delta.nonzero_entries() {
        sum.add_assign_at(i, j, v);
    }
    assert!(sum.is_zero(), "multiplicity-shift map fails the chain identity");

    let interior_block = complex.differential.submatrix(&interior_idx, &interior_idx);
    let a = interior_map.mul(&check_block);
    let b = interior_block.mul(&interior_map);
    let mut sum = IntMatrix::zeros(a.rows(), a.cols());
    for (i, j, v) in a.nonzero_entries() {
        sum.add_assign_at(i, j, v);
    }
    for (i, j, v) in b.nonzero_entries() {
        sum.add_assign_at(i, j, v);
    }
    assert!(sum.is_zero(), "interior map fails the chain identity");

    ConeData { positive, checks, hats, delta, interior_map }
}

/// One degree's worth of rank bookkeeping for the long exact sequence of the
/// cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessRow {
    pub degree: Rational,
    /// Dimension of the hat subcomplex homology at this degree.
    pub sub_dim: usize,
    /// Dimension of the positive complex homology.
    pub total_dim: usize,
    /// Dimension of the check quotient homology.
    pub quotient_dim: usize,
    /// Rank of the induced connecting map out of this degree.
    pub connecting_rank: usize,
    /// Rank of the induced connecting map out of the degree above.
    pub connecting_rank_above: usize,
    pub exact: bool,
}

/// Rank exactness of the long exact sequence of the cone over a field.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub ring: CoefficientRing,
    pub rows: Vec<ExactnessRow>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.rows.iter().all(|r| r.exact)
    }
}

/// Field view of a subcomplex given by index lists per degree.
struct FieldSubcomplex<'a> {
    complex: &'a GradedComplex,
    positions: BTreeMap<Rational, Vec<usize>>,
}

impl<'a> FieldSubcomplex<'a> {
    fn new(complex: &'a GradedComplex, indices: &[usize]) -> Self {
        let mut positions: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for &i in indices {
            positions.entry(complex.generators[i].degree.clone()).or_default().push(i);
        }
        FieldSubcomplex { complex, positions }
    }

    fn bucket(&self, degree: &Rational) -> &[usize] {
        self.positions.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    fn block(&self, from: &Rational) -> IntMatrix {
        let to = from.clone() - rat(1);
        self.complex.differential.submatrix(self.bucket(&to), self.bucket(from))
    }

    fn homology_dim(&self, degree: &Rational, ring: CoefficientRing) -> Result<usize, HomologyError> {
        let here = self.bucket(degree).len();
        let d_out = self.block(degree);
        let d_in = self.block(&(degree.clone() + rat(1)));
        Ok(match ring {
            CoefficientRing::Rational => here - rat_rank(&rational_entries(&d_out)) - rat_rank(&rational_entries(&d_in)),
            CoefficientRing::PrimeField(p) => here - rank_mod_p(&d_out, p)? - rank_mod_p(&d_in, p)?,
            CoefficientRing::Integer => return Err(HomologyError::NotAField("Z".into())),
        })
    }
}

/// Rank of the map induced on field homology by a chain map given as an
/// integer matrix block: `rank([f(cycles) | boundaries]) - rank(boundaries)`.
fn induced_rank(
    ring: CoefficientRing,
    f_block: &IntMatrix,
    source_d_out: &IntMatrix,
    target_d_in: &IntMatrix,
) -> Result<usize, HomologyError> {
    match ring {
        CoefficientRing::Rational => {
            let cycles = rat_kernel_basis(&rational_entries(source_d_out), source_d_out.cols());
            let f = rational_entries(f_block);
            let bd = rational_entries(target_d_in);
            let rows = f_block.rows();
            let mut combined: Vec<Vec<Rational>> = vec![Vec::new(); rows];
            for v in &cycles {
                for (i, row) in combined.iter_mut().enumerate() {
                    let mut s = Rational::zero();
                    for (j, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            s += &f[i][j] * c;
                        }
                    }
                    row.push(s);
                }
            }
            let boundary_cols = target_d_in.cols();
            for j in 0..boundary_cols {
                for (i, row) in combined.iter_mut().enumerate() {
                    row.push(bd[i][j].clone());
                }
            }
            Ok(rat_rank(&combined) - rat_rank(&bd))
        }
        CoefficientRing::PrimeField(p) => {
            exact_linalg::check_prime(p)?;
            let source = fp_matrix(source_d_out, p);
            let cycles = fp_kernel_basis(&source, source_d_out.cols(), p);
            let f = fp_matrix(f_block, p);
            let bd = fp_matrix(target_d_in, p);
            let rows = f_block.rows();
            let p128 = p as u128;
            let mut combined: Vec<Vec<u64>> = vec![Vec::new(); rows];
            for v in &cycles {
                for (i, row) in combined.iter_mut().enumerate() {
                    let mut s: u128 = 0;
                    for (j, &c) in v.iter().enumerate() {
                        s = (s + f[i][j] as u128 * c as u128) % p128;
                    }
                    row.push(s as u64);
                }
            }
            for j in 0..target_d_in.cols() {
                for (i, row) in combined.iter_mut().enumerate() {
                    row.push(bd[i][j]);
                }
            }
            Ok(fp_rank(&combined, p) - fp_rank(&bd, p))
        }
        CoefficientRing::Integer => Err(HomologyError::NotAField("Z".into())),
    }
}

/// Verifies rank exactness of the induced long exact sequence
/// `... -> H(hats) -> H(positive) -> H(checks) -> H(hats)[-1] -> ...` over a
/// field, degree by degree.
///
/// Exactness at a degree d is the rank identity
/// `dim H_d(positive) = dim H_d(hats) + dim H_d(checks) - r_d - r_{d+1}`
/// where `r` is the rank of the connecting map induced by the
/// multiplicity-shift block. The connecting map shifts degree; the report is
/// degree-local and assigns no global labels.
pub fn verify_les(cone: &ConeData, ring: CoefficientRing) -> Result<ExactnessReport, HomologyError> {
    if !ring.is_field() {
        return Err(HomologyError::NotAField(ring.to_string()));
    }
    let positive = &cone.positive;
    let hats = FieldSubcomplex::new(positive, &cone.hats);
    let checks = FieldSubcomplex::new(positive, &cone.checks);
    let everything: Vec<usize> = (0..positive.generators.len()).collect();
    let total = FieldSubcomplex::new(positive, &everything);

    // Connecting-map rank out of each degree: the multiplicity-shift block
    // from degree-d checks to degree-(d-1) hats, evaluated on check cycles
    // modulo hat boundaries.
    let mut connecting: BTreeMap<Rational, usize> = BTreeMap::new();
    let degrees: Vec<Rational> = positive
        .degree_buckets
        .keys()
        .filter(|d| positive.trusted.contains(d))
        .cloned()
        .collect();
    for d in &degrees {
        let check_cols = checks.bucket(d);
        let hat_rows = hats.bucket(&(d.clone() - rat(1)));
        let f_block = positive.differential.submatrix(hat_rows, check_cols);
        let source_d_out = checks.block(d);
        let target_d_in = hats.block(d);
        connecting.insert(d.clone(), induced_rank(ring, &f_block, &source_d_out, &target_d_in)?);
    }

    let mut rows = Vec::new();
    for d in &degrees {
        // Chains one degree above a trusted degree are complete, so the
        // incoming connecting rank is trustworthy even when that degree's
        // own homology is not.
        let above = d.clone() + rat(1);
        let r_above = if positive.degree_buckets.contains_key(&above) {
            let check_cols = checks.bucket(&above);
            let hat_rows = hats.bucket(d);
            let f_block = positive.differential.submatrix(hat_rows, check_cols);
            induced_rank(ring, &f_block, &checks.block(&above), &hats.block(&above))?
        } else {
            0
        };
        let sub_dim = hats.homology_dim(d, ring)?;
        let total_dim = total.homology_dim(d, ring)?;
        let quotient_dim = checks.homology_dim(d, ring)?;
        let r_here = connecting[d];
        let exact = total_dim + r_here + r_above == sub_dim + quotient_dim;
        rows.push(ExactnessRow {
            degree: d.clone(),
            sub_dim,
            total_dim,
            quotient_dim,
            connecting_rank: r_here,
            connecting_rank_above: r_above,
            exact,
        });
    }
    Ok(ExactnessReport { ring, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_builder::TrustedRange;
    use crate::differential::build_complex;
    use crate::hamiltonian::HamiltonianProfile;
    use crate::specgen::t_star_s2_spec;
    use crate::Int;

    fn t_star_s2_complex(k_max: u32) -> GradedComplex {
        build_complex(&t_star_s2_spec(), k_max, &HamiltonianProfile::default_quadratic()).unwrap()
    }

    fn chain(complex: &GradedComplex, terms: &[(&str, i64)]) -> Chain {
        Chain {
            terms: terms
                .iter()
                .map(|(label, c)| {
                    let i = complex.generators.iter().position(|g| &g.label == label).unwrap();
                    (i, Int::from(*c))
                })
                .collect(),
        }
    }

    #[test]
    fn degree_zero_and_one_free_parts() {
        let complex = t_star_s2_complex(5);
        let report = compute_homology(&complex, CoefficientRing::Integer).unwrap();
        let h0 = report.group_at(&rat(0)).unwrap();
        assert_eq!(h0.group.free_rank, 1);
        assert!(h0.group.torsion.is_empty());
        assert_eq!(h0.free_representatives[0].render(&complex), "c");
        let h1 = report.group_at(&rat(1)).unwrap();
        assert_eq!(h1.group.free_rank, 1);
        assert!(h1.group.torsion.is_empty());
    }

    #[test]
    fn degree_two_carries_torsion() {
        let complex = t_star_s2_complex(5);
        let report = compute_homology(&complex, CoefficientRing::Integer).unwrap();
        let h2 = report.group_at(&rat(2)).unwrap();
        assert_eq!(h2.group.free_rank, 1);
        assert_eq!(h2.group.torsion, vec![Int::from(2)]);

        // The named torsion class e + m^_1 has order exactly 2.
        let classes = degree_classes(&complex, &rat(2)).unwrap();
        let named = chain(&complex, &[("e", 1), ("m^_1", 1)]);
        let coords = classes.class_coords(&named).unwrap();
        assert!(coords.free.iter().all(Zero::is_zero));
        assert_eq!(coords.torsion, vec![Int::from(1)]);
        let doubled = chain(&complex, &[("e", 2), ("m^_1", 2)]);
        assert!(classes.class_coords(&doubled).unwrap().is_zero());
    }

    #[test]
    fn odd_towers_are_generated_by_the_differences() {
        let complex = t_star_s2_complex(6);
        let report = compute_homology(&complex, CoefficientRing::Integer).unwrap();
        for k in 1..=4i64 {
            let d = rat(2 * k + 1);
            let h = report.group_at(&d).unwrap();
            assert_eq!(h.group.free_rank, 1, "degree {d}");
            assert!(h.group.torsion.is_empty());
            let classes = degree_classes(&complex, &d).unwrap();
            let named = chain(
                &complex,
                &[(&format!("Mv_{k}"), 1), (&format!("mv_{}", k + 1), -1)],
            );
            let coords = classes.class_coords(&named).unwrap();
            assert_eq!(coords.free.len(), 1);
            assert!(coords.free[0] == Int::from(1) || coords.free[0] == Int::from(-1));
        }
    }

    #[test]
    fn zero_differential_bucket_reports_full_rank() {
        use crate::complex_builder::Generator;
        let generators: Vec<Generator> = (0..3)
            .map(|i| Generator {
                kind: GeneratorKind::Interior { point: i },
                degree: rat(0),
                action: 0.0,
                label: format!("g{i}"),
            })
            .collect();
        let complex = GradedComplex::from_parts(
            generators,
            IntMatrix::zeros(3, 3),
            0,
            TrustedRange { lo: rat(0), hi: None },
        );
        let report = compute_homology(&complex, CoefficientRing::Integer).unwrap();
        assert_eq!(report.degrees.len(), 1);
        assert_eq!(report.degrees[0].group.free_rank, 3);
    }

    #[test]
    fn positive_complex_smith_forms() {
        let complex = t_star_s2_complex(6);
        let cone = build_positive_complex(&complex);
        let report = compute_homology(&cone.positive, CoefficientRing::Integer).unwrap();
        // Degree 2: a single hat generator, incoming [2 2].
        let h2 = report.group_at(&rat(2)).unwrap();
        assert_eq!(h2.group.free_rank, 0);
        assert_eq!(h2.group.torsion, vec![Int::from(2)]);
        // Degree 2k+2: Z + Z/2.
        for k in 1..=4i64 {
            let h = report.group_at(&rat(2 * k + 2)).unwrap();
            assert_eq!(h.group.free_rank, 1, "degree {}", 2 * k + 2);
            assert_eq!(h.group.torsion, vec![Int::from(2)]);
        }
        // Degree 2k+1: Z.
        for k in 1..=4i64 {
            let h = report.group_at(&rat(2 * k + 1)).unwrap();
            assert_eq!(h.group.free_rank, 1);
            assert!(h.group.torsion.is_empty());
        }
    }

    #[test]
    fn empty_interior_makes_quotient_trivial() {
        let mut spec = t_star_s2_spec();
        spec.w_crit.clear();
        spec.d_w = IntMatrix::zeros(0, 0);
        spec.gw_plane.clear();
        let complex =
            build_complex(&spec, 3, &HamiltonianProfile::default_quadratic()).unwrap();
        let cone = build_positive_complex(&complex);
        assert_eq!(cone.positive.generators.len(), complex.generators.len());
        assert!(cone.interior_map.is_zero());
    }

    #[test]
    fn les_exact_over_both_fields() {
        let complex = t_star_s2_complex(8);
        let cone = build_positive_complex(&complex);
        for ring in [CoefficientRing::Rational, CoefficientRing::PrimeField(2)] {
            let report = verify_les(&cone, ring).unwrap();
            assert!(!report.rows.is_empty());
            for row in &report.rows {
                assert!(row.exact, "{ring}: inexact at degree {}", row.degree);
            }
        }
    }

    #[test]
    fn zero_connecting_map_splits() {
        // Erase the coefficient tables: the multiplicity-shift block still
        // contains the Euler term, so erase that too; then the cone splits.
        let mut spec = t_star_s2_spec();
        spec.gw_sigma.clear();
        spec.gw_aug.clear();
        spec.gw_plane.clear();
        spec.euler_table.clear();
        let complex =
            build_complex(&spec, 4, &HamiltonianProfile::default_quadratic()).unwrap();
        let cone = build_positive_complex(&complex);
        assert!(cone.delta.is_zero());
        let report = verify_les(&cone, CoefficientRing::Rational).unwrap();
        for row in &report.rows {
            assert_eq!(row.connecting_rank, 0);
            assert_eq!(row.total_dim, row.sub_dim + row.quotient_dim);
            assert!(row.exact);
        }
    }

    #[test]
    fn les_refuses_integer_coefficients() {
        let complex = t_star_s2_complex(3);
        let cone = build_positive_complex(&complex);
        assert!(verify_les(&cone, CoefficientRing::Integer).is_err());
    }

    #[test]
    fn universal_coefficients_against_f2() {
        let complex = t_star_s2_complex(6);
        let z = compute_homology(&complex, CoefficientRing::Integer).unwrap();
        let f2 = compute_homology(&complex, CoefficientRing::PrimeField(2)).unwrap();
        for dh in &f2.degrees {
            let d = &dh.group.degree;
            let two = Int::from(2);
            let at = |deg: &Rational| {
                z.group_at(deg)
                    .map(|g| {
                        (
                            g.group.free_rank,
                            g.group.torsion.iter().filter(|t| (*t % &two).is_zero()).count(),
                        )
                    })
                    .unwrap_or((0, 0))
            };
            let (free_here, tor_here) = at(d);
            let below = d.clone() - rat(1);
            // The degree below may be outside the trusted reports only when
            // it is empty; torsion there is zero anyway.
            let tor_below = if complex.trusted.contains(&below) { at(&below).1 } else { 0 };
            assert_eq!(
                dh.group.free_rank,
                free_here + tor_here + tor_below,
                "universal coefficients mismatch at degree {d}"
            );
        }
    }
}
