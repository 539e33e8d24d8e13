//! Finite-dimensional oriented-vector-space calculus: fibre-sum and
//! preimage orientations on kernels of difference maps, with exact rational
//! arithmetic throughout.
//!
//! Both conventions orient the same subspace `ker(f1 - f2)` of `V1 + V2`.
//! The fibre-sum orientation is fixed by two clauses: the induced map of the
//! quotient onto the target changes orientations by `(-1)^{dim V2 dim W}`,
//! and quotients are oriented so that kernel-then-section bases are positive.
//! The preimage orientation realizes the subspace as the preimage of the
//! diagonal under `(f1, f2)` with the classical preimage convention. Signs
//! never depend on the internal choice of complement: the determinant pair
//! below rescales by a positive square when the complement moves.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::exact_linalg::{rat_det, rat_kernel_basis, rat_rank, rat_solve};
use crate::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientError {
    /// `f1 - f2` fails to be surjective, so the kernel is not cut out
    /// transversally.
    #[error("difference map is not surjective (rank {rank} < target dimension {dim})")]
    NotSurjective { rank: usize, dim: usize },
    /// `(f1, f2)` is not transverse to the diagonal.
    #[error("pair map is not transverse to the diagonal (rank {rank} < target dimension {dim})")]
    NotTransverse { rank: usize, dim: usize },
    /// The two oriented subspaces do not span the same subspace.
    #[error("oriented subspaces do not describe the same subspace")]
    DifferentSubspaces,
}

/// A coordinate space with a chosen orientation sign relative to its
/// standard ordered basis. Zero-dimensional spaces still carry a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientedSpace {
    pub dim: usize,
    pub orientation: i8,
}

impl OrientedSpace {
    pub fn new(dim: usize, orientation: i8) -> Self {
        assert!(orientation == 1 || orientation == -1, "orientation must be +1 or -1");
        OrientedSpace { dim, orientation }
    }

    pub fn standard(dim: usize) -> Self {
        OrientedSpace { dim, orientation: 1 }
    }
}

/// Linear map between oriented coordinate spaces, as a target-by-source
/// matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: Vec<Vec<Rational>>,
    pub source: OrientedSpace,
    pub target: OrientedSpace,
}

impl LinearMap {
    pub fn new(matrix: Vec<Vec<Rational>>, source: OrientedSpace, target: OrientedSpace) -> Self {
        assert_eq!(matrix.len(), target.dim, "row count must match the target dimension");
        for row in &matrix {
            assert_eq!(row.len(), source.dim, "column count must match the source dimension");
        }
        LinearMap { matrix, source, target }
    }

    fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// An ordered exact-rational basis of a subspace together with the declared
/// orientation sign of that ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSubspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Rational>>,
    pub sign: i8,
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Columns-to-matrix determinant sign; panics when the columns are
/// dependent (callers arrange completeness first).
fn det_sign_of_columns(cols: &[Vec<Rational>]) -> i8 {
    let n = cols.len();
    let m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    let s = sign_of(&rat_det(&m));
    assert!(s != 0, "degenerate basis");
    s
}

/// Deterministic complement: extend `basis` to all of R^n by greedily
/// appending standard basis vectors.
fn complete_with_standard(basis: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut all: Vec<Vec<Rational>> = basis.to_vec();
    let mut complement = Vec::new();
    for i in 0..n {
        if all.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        all.push(e.clone());
        let rows: Vec<Vec<Rational>> =
            (0..n).map(|r| all.iter().map(|v| v[r].clone()).collect()).collect();
        if rat_rank(&rows) == all.len() {
            complement.push(e);
        } else {
            all.pop();
        }
    }
    assert_eq!(basis.len() + complement.len(), n, "failed to complete the basis");
    complement
}

/// Randomized complement with small integer entries; falls back to the
/// deterministic one if the draw budget runs out.
fn complete_randomly(basis: &[Vec<Rational>], n: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut all: Vec<Vec<Rational>> = basis.to_vec();
    let mut complement = Vec::new();
    let mut budget = 200;
    while all.len() < n && budget > 0 {
        budget -= 1;
        let v: Vec<Rational> =
            (0..n).map(|_| crate::rat(rng.random_range(-3..=3i64))).collect();
        all.push(v.clone());
        let rows: Vec<Vec<Rational>> =
            (0..n).map(|r| all.iter().map(|x| x[r].clone()).collect()).collect();
        if rat_rank(&rows) == all.len() {
            complement.push(v);
        } else {
            all.pop();
        }
    }
    if all.len() < n {
        return complete_with_standard(basis, n);
    }
    complement
}

struct KernelProblem {
    n1: usize,
    n2: usize,
    w: usize,
    /// Kernel of `f1 - f2` inside `V1 + V2`.
    kernel: Vec<Vec<Rational>>,
    rank: usize,
}

fn kernel_problem(f1: &LinearMap, f2: &LinearMap) -> KernelProblem {
    assert_eq!(f1.target, f2.target, "the two maps must share the oriented target");
    let n1 = f1.source.dim;
    let n2 = f2.source.dim;
    let w = f1.target.dim;
    // Difference map on stacked coordinates.
    let rows: Vec<Vec<Rational>> = (0..w)
        .map(|i| {
            f1.matrix[i]
                .iter()
                .cloned()
                .chain(f2.matrix[i].iter().map(|x| -x.clone()))
                .collect()
        })
        .collect();
    let rank = rat_rank(&rows);
    let kernel = rat_kernel_basis(&rows, n1 + n2);
    KernelProblem { n1, n2, w, kernel, rank }
}

fn parity(exp: usize) -> i8 {
    if exp % 2 == 0 {
        1
    } else {
        -1
    }
}

fn orient_fibre_sum(
    f1: &LinearMap,
    f2: &LinearMap,
    problem: &KernelProblem,
    complement: &[Vec<Rational>],
) -> i8 {
    let diff = |v: &[Rational]| -> Vec<Rational> {
        let a = f1.apply(&v[..problem.n1]);
        let b = f2.apply(&v[problem.n1..]);
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    };
    // Kernel-then-complement ordering per the quotient clause.
    let mut cols: Vec<Vec<Rational>> = problem.kernel.clone();
    cols.extend_from_slice(complement);
    let ambient_sign = det_sign_of_columns(&cols)
        * f1.source.orientation
        * f2.source.orientation;
    let target_cols: Vec<Vec<Rational>> = complement.iter().map(|h| diff(h)).collect();
    let target_sign = det_sign_of_columns(&target_cols) * f1.target.orientation;
    ambient_sign * parity(problem.n2 * problem.w) * target_sign
}

fn orient_preimage(
    f1: &LinearMap,
    f2: &LinearMap,
    problem: &KernelProblem,
    complement: &[Vec<Rational>],
) -> i8 {
    let (n1, n2, w) = (problem.n1, problem.n2, problem.w);
    let pair = |v: &[Rational]| -> Vec<Rational> {
        let mut out = f1.apply(&v[..n1]);
        out.extend(f2.apply(&v[n1..]));
        out
    };
    // Complement-then-kernel ordering; the clause sign rebalances it against
    // the product orientation.
    let mut cols: Vec<Vec<Rational>> = complement.to_vec();
    cols.extend_from_slice(&problem.kernel);
    let ambient_sign = det_sign_of_columns(&cols)
        * f1.source.orientation
        * f2.source.orientation
        * parity(n2 * (n1 + w));
    // The image of the complement, followed by the diagonal.
    let mut target_cols: Vec<Vec<Rational>> = complement.iter().map(|h| pair(h)).collect();
    for i in 0..w {
        let mut d = vec![Rational::zero(); 2 * w];
        d[i] = Rational::one();
        d[w + i] = Rational::one();
        target_cols.push(d);
    }
    let target_sign = det_sign_of_columns(&target_cols) * f1.target.orientation;
    ambient_sign * target_sign
}

/// The kernel of `f1 - f2` with its fibre-sum orientation.
pub fn fibre_sum_kernel(f1: &LinearMap, f2: &LinearMap) -> Result<OrientedSubspace, OrientError> {
    fibre_sum_kernel_seeded(f1, f2, None)
}

/// Same as [`fibre_sum_kernel`] but with a randomized internal complement;
/// the resulting orientation is the same for every seed.
pub fn fibre_sum_kernel_seeded(
    f1: &LinearMap,
    f2: &LinearMap,
    seed: Option<u64>,
) -> Result<OrientedSubspace, OrientError> {
    let problem = kernel_problem(f1, f2);
    if problem.rank < problem.w {
        return Err(OrientError::NotSurjective { rank: problem.rank, dim: problem.w });
    }
    let n = problem.n1 + problem.n2;
    let complement = match seed {
        None => complete_with_standard(&problem.kernel, n),
        Some(s) => complete_randomly(&problem.kernel, n, s),
    };
    let sign = orient_fibre_sum(f1, f2, &problem, &complement);
    Ok(OrientedSubspace { ambient_dim: n, basis: problem.kernel, sign })
}

/// The preimage of the diagonal under `(f1, f2)` with its preimage
/// orientation; the same subspace as the fibre sum, generally with a
/// different sign.
pub fn preimage_of_diagonal(
    f1: &LinearMap,
    f2: &LinearMap,
) -> Result<OrientedSubspace, OrientError> {
    preimage_of_diagonal_seeded(f1, f2, None)
}

/// Same as [`preimage_of_diagonal`] with a randomized internal complement.
pub fn preimage_of_diagonal_seeded(
    f1: &LinearMap,
    f2: &LinearMap,
    seed: Option<u64>,
) -> Result<OrientedSubspace, OrientError> {
    let problem = kernel_problem(f1, f2);
    if problem.rank < problem.w {
        return Err(OrientError::NotTransverse { rank: problem.rank, dim: problem.w });
    }
    let n = problem.n1 + problem.n2;
    let complement = match seed {
        None => complete_with_standard(&problem.kernel, n),
        Some(s) => complete_randomly(&problem.kernel, n, s),
    };
    let sign = orient_preimage(f1, f2, &problem, &complement);
    Ok(OrientedSubspace { ambient_dim: n, basis: problem.kernel, sign })
}

/// Pushes an oriented subspace of `V1 + V2` through the block swap onto
/// `V2 + V1`; the ordered basis is transported, the declared sign rides
/// along.
pub fn swap_summands(s: &OrientedSubspace, n1: usize, n2: usize) -> OrientedSubspace {
    assert_eq!(s.ambient_dim, n1 + n2);
    let basis = s
        .basis
        .iter()
        .map(|v| {
            let mut out: Vec<Rational> = v[n1..].to_vec();
            out.extend_from_slice(&v[..n1]);
            out
        })
        .collect();
    OrientedSubspace { ambient_dim: s.ambient_dim, basis, sign: s.sign }
}

/// Compares two orientations of the same subspace: `+1` when they agree.
///
/// Verified by mutual containment; distinct subspaces are an error.
pub fn compare_orientations(
    a: &OrientedSubspace,
    b: &OrientedSubspace,
) -> Result<i8, OrientError> {
    if a.ambient_dim != b.ambient_dim || a.basis.len() != b.basis.len() {
        return Err(OrientError::DifferentSubspaces);
    }
    let m = a.basis.len();
    if m == 0 {
        return Ok(a.sign * b.sign);
    }
    let n = a.ambient_dim;
    let a_cols: Vec<Vec<Rational>> =
        (0..n).map(|r| a.basis.iter().map(|v| v[r].clone()).collect()).collect();
    let b_cols: Vec<Vec<Rational>> =
        (0..n).map(|r| b.basis.iter().map(|v| v[r].clone()).collect()).collect();
    let Some(transition) = rat_solve(&a_cols, &b_cols) else {
        return Err(OrientError::DifferentSubspaces);
    };
    let det = rat_det(&transition);
    if det.is_zero() {
        return Err(OrientError::DifferentSubspaces);
    }
    // Containment the other way follows from invertibility of the
    // transition, but the solve only checked one direction.
    if rat_solve(&b_cols, &a_cols).is_none() {
        return Err(OrientError::DifferentSubspaces);
    }
    Ok(sign_of(&det) * a.sign * b.sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn map(rows: &[&[i64]], source: OrientedSpace, target: OrientedSpace) -> LinearMap {
        let matrix = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        LinearMap::new(matrix, source, target)
    }

    #[test]
    fn identity_pair_on_the_line() {
        let line = OrientedSpace::standard(1);
        let f = map(&[&[1]], line, line);
        let k = fibre_sum_kernel(&f, &f).unwrap();
        assert_eq!(k.ambient_dim, 2);
        assert_eq!(k.basis.len(), 1);
        // Basis vector is parallel to (1, 1).
        assert_eq!(k.basis[0][0], k.basis[0][1]);
        // Hand evaluation of the two clauses with complement (1, 0):
        // det[(1,1),(1,0)] = -1 and the quotient clause contributes
        // (-1)^{1*1} * sign(f1-f2 on (1,0)) = -1, so the basis (1,1) is
        // positive.
        let plus = OrientedSubspace {
            ambient_dim: 2,
            basis: vec![vec![rat(1), rat(1)]],
            sign: 1,
        };
        assert_eq!(compare_orientations(&k, &plus).unwrap(), 1);
    }

    #[test]
    fn preimage_agrees_on_the_line_pair() {
        // (dim V1 + dim W)(dim V2 + dim W) = 4, so the two conventions agree
        // here.
        let line = OrientedSpace::standard(1);
        let f = map(&[&[1]], line, line);
        let fs = fibre_sum_kernel(&f, &f).unwrap();
        let pre = preimage_of_diagonal(&f, &f).unwrap();
        assert_eq!(compare_orientations(&fs, &pre).unwrap(), 1);
    }

    #[test]
    fn degenerate_second_summand() {
        // V2 = 0: the kernel is the kernel of f1 itself.
        let f1 = map(&[&[1, 0]], OrientedSpace::standard(2), OrientedSpace::standard(1));
        let f2 = LinearMap::new(
            vec![vec![]; 1],
            OrientedSpace::standard(0),
            OrientedSpace::standard(1),
        );
        let k = fibre_sum_kernel(&f1, &f2).unwrap();
        assert_eq!(k.basis.len(), 1);
        assert!(k.basis[0][0].is_zero());
        // Hand evaluation: complement (1,0), det[(0,1),(1,0)] = -1, target
        // sign +1, parity exponent 0; the returned basis (0,1) carries -1.
        let hand = OrientedSubspace {
            ambient_dim: 2,
            basis: vec![vec![rat(0), rat(1)]],
            sign: -1,
        };
        assert_eq!(compare_orientations(&k, &hand).unwrap(), 1);
    }

    #[test]
    fn surjectivity_is_required() {
        let plane = OrientedSpace::standard(2);
        let line = OrientedSpace::standard(1);
        let f = map(&[&[1], &[0]], line, plane);
        let err = fibre_sum_kernel(&f, &f).unwrap_err();
        assert!(matches!(err, OrientError::NotSurjective { rank: 1, dim: 2 }));
        let err = preimage_of_diagonal(&f, &f).unwrap_err();
        assert!(matches!(err, OrientError::NotTransverse { .. }));
    }

    #[test]
    fn compare_detects_basic_relations() {
        let s = OrientedSubspace {
            ambient_dim: 3,
            basis: vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(0)]],
            sign: 1,
        };
        assert_eq!(compare_orientations(&s, &s).unwrap(), 1);
        let swapped = OrientedSubspace {
            ambient_dim: 3,
            basis: vec![s.basis[1].clone(), s.basis[0].clone()],
            sign: 1,
        };
        assert_eq!(compare_orientations(&s, &swapped).unwrap(), -1);
        let scaled = OrientedSubspace {
            ambient_dim: 3,
            basis: vec![
                vec![ratio(1, 2), rat(0), ratio(1, 2)],
                vec![rat(0), rat(3), rat(0)],
            ],
            sign: 1,
        };
        assert_eq!(compare_orientations(&s, &scaled).unwrap(), 1);
        let other = OrientedSubspace {
            ambient_dim: 3,
            basis: vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]],
            sign: 1,
        };
        assert_eq!(compare_orientations(&s, &other).unwrap_err(), OrientError::DifferentSubspaces);
    }

    #[test]
    fn swap_sign_on_the_line_pair() {
        // (dim V1 + dim W)(dim V2 + dim W) = 4: swapping preserves here.
        let line = OrientedSpace::standard(1);
        let f = map(&[&[1]], line, line);
        let k12 = fibre_sum_kernel(&f, &f).unwrap();
        let k21 = fibre_sum_kernel(&f, &f).unwrap();
        let swapped = swap_summands(&k12, 1, 1);
        assert_eq!(compare_orientations(&swapped, &k21).unwrap(), 1);
    }

    #[test]
    fn seeded_complements_agree_with_deterministic() {
        let v1 = OrientedSpace::standard(2);
        let v2 = OrientedSpace::new(2, -1);
        let w = OrientedSpace::standard(1);
        let f1 = map(&[&[1, 2]], v1, w);
        let f2 = map(&[&[3, -1]], v2, w);
        let base = fibre_sum_kernel(&f1, &f2).unwrap();
        for seed in 0..10 {
            let s = fibre_sum_kernel_seeded(&f1, &f2, Some(seed)).unwrap();
            assert_eq!(compare_orientations(&base, &s).unwrap(), 1);
            let p = preimage_of_diagonal_seeded(&f1, &f2, Some(seed)).unwrap();
            let p0 = preimage_of_diagonal(&f1, &f2).unwrap();
            assert_eq!(compare_orientations(&p0, &p).unwrap(), 1);
        }
    }
}
