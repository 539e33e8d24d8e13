//! Exact integer and rational linear algebra: Smith normal form with
//! unimodular transforms, homology of a composable pair of integer maps, and
//! ranks over prime fields.
//!
//! All arithmetic is arbitrary precision; intermediate Smith normal form
//! entries can blow up even on small inputs, so nothing here ever touches
//! machine integers or floats.

mod field;

pub(crate) use field::{
    fp_kernel_basis, fp_matrix, fp_rank, rat_det, rat_kernel_basis, rat_rank, rat_solve,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    /// `d_out * d_in != 0`: the pair is not composable to zero, so there is
    /// no homology to take.
    #[error("composition of the pair is nonzero at entry ({row}, {col})")]
    CompositionNonzero { row: usize, col: usize },
    /// The modulus passed to a mod-p computation is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Dense matrix of arbitrary-precision integers, row major.
///
/// Rows index targets and columns index sources throughout the crate, so a
/// differential applied to a column vector is plain matrix-vector
/// multiplication.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from machine-integer rows; handy in tests and table
    /// construction.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, v: &BigInt) {
        let e = self.get(i, j) + v;
        self.set(i, j, e);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let e = out.get(i, j) + a * b;
                        out.set(i, j, e);
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Submatrix given by explicit row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Iterator over the nonzero entries as `(row, col, value)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / self.cols, k % self.cols, v))
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hconcat(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hconcat");
        let mut out = IntMatrix::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j);
                    a.set(i, j, num / &prev);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Rank over the rationals (equivalently over the integers).
    pub fn rank(&self) -> usize {
        rat_rank(&rational_entries(self))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_j += c * row_i
    fn row_add(&mut self, j: usize, i: usize, c: &BigInt) {
        for k in 0..self.cols {
            let v = self.get(j, k) + c * self.get(i, k);
            self.set(j, k, v);
        }
    }

    /// col_j += c * col_i
    fn col_add(&mut self, j: usize, i: usize, c: &BigInt) {
        for k in 0..self.rows {
            let v = self.get(k, j) + c * self.get(k, i);
            self.set(k, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.get(i, k);
            self.set(i, k, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let v = -self.get(k, j);
            self.set(k, j, v);
        }
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn rational_entries(m: &IntMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Rational::from_integer(m.get(i, j).clone())).collect())
        .collect()
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal invariant factors, zeros included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form together with the inverses of the transforms; the
/// inverses are what homology representative extraction actually consumes.
#[derive(Clone, Debug)]
pub struct SmithFull {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithFull {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivots are chosen by smallest nonzero absolute value with row-major
/// tie-break, so the decomposition is reproducible. In debug builds the
/// identity `U * A * V = D` is re-multiplied and checked on every call.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let f = smith_normal_form_full(a);
    SmithDecomposition { u: f.u, d: f.d, v: f.v }
}

/// Smith normal form that also tracks `U^-1` and `V^-1`.
pub fn smith_normal_form_full(a: &IntMatrix) -> SmithFull {
    let mut d = a.clone();
    let rows = a.rows();
    let cols = a.cols();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Elementary operations applied in lockstep: a row operation R sends
    // D -> R*D and U -> R*U, U_inv -> U_inv*R^-1; a column operation C sends
    // D -> D*C and V -> V*C, V_inv -> C^-1*V_inv.
    let mut t = 0usize;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_pivot(&d, t) else {
            break;
        };
        if pi != t {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
        }
        if pj != t {
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }

        loop {
            // Clear the pivot column with rounded quotients; remainders
            // strictly smaller than the pivot re-enter as new pivots.
            let mut dirty = false;
            for i in t + 1..rows {
                if !d.get(i, t).is_zero() {
                    let q = rounded_quotient(d.get(i, t), d.get(t, t));
                    if !q.is_zero() {
                        let c = -q;
                        d.row_add(i, t, &c);
                        u.row_add(i, t, &c);
                        u_inv.col_add(t, i, &-&c);
                    }
                    if !d.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !d.get(t, j).is_zero() {
                    let q = rounded_quotient(d.get(t, j), d.get(t, t));
                    if !q.is_zero() {
                        let c = -q;
                        d.col_add(j, t, &c);
                        v.col_add(j, t, &c);
                        v_inv.row_add(t, j, &-&c);
                    }
                    if !d.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // A nonzero remainder beats the current pivot; re-pivot.
                let (pi, pj) = min_abs_pivot(&d, t).expect("remainder left a nonzero entry");
                if pi != t {
                    d.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                    u_inv.swap_cols(t, pi);
                }
                if pj != t {
                    d.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                    v_inv.swap_rows(t, pj);
                }
                continue;
            }

            // Row and column are clear; force divisibility of the remaining
            // block by folding a bad entry into the pivot row.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % d.get(t, t)).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.row_add(t, i, &one);
                    u.row_add(t, i, &one);
                    u_inv.col_add(i, t, &-&one);
                }
                None => break,
            }
        }
        t += 1;
    }

    // Normalize diagonal signs.
    for i in 0..rows.min(cols) {
        if d.get(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
            u_inv.negate_col(i);
        }
    }

    let full = SmithFull { u, u_inv, d, v, v_inv };
    debug_assert!(verify_smith(a, &full), "Smith normal form verification failed");
    full
}

fn verify_smith(a: &IntMatrix, f: &SmithFull) -> bool {
    if f.u.mul(a).mul(&f.v) != f.d {
        return false;
    }
    if f.u.mul(&f.u_inv) != IntMatrix::identity(a.rows()) {
        return false;
    }
    if f.v.mul(&f.v_inv) != IntMatrix::identity(a.cols()) {
        return false;
    }
    let facs = f.invariant_factors();
    for w in facs.windows(2) {
        if w[0].is_zero() && !w[1].is_zero() {
            return false;
        }
        if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
            return false;
        }
    }
    // Off-diagonal entries of D must vanish.
    f.d.nonzero_entries().all(|(i, j, _)| i == j)
}

/// Smallest-absolute-value nonzero entry of the trailing block, row-major
/// tie-break.
fn min_abs_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Quotient rounded to nearest, which keeps remainders at most half the
/// pivot in absolute value.
fn rounded_quotient(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (n.is_negative()) == (d.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Free rank plus ordered torsion of one homology group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: Rational,
    pub free_rank: usize,
    /// Invariant factors > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Basis data for one homology computation; enough to express classes in the
/// computed decomposition and to extract representatives.
#[derive(Clone, Debug)]
pub struct PairBasis {
    /// Columns form a lattice basis of `ker d_out`.
    kernel: IntMatrix,
    /// `V^-1` of the Smith form of `d_out`, used to coordinatize cycles.
    v_out_inv: IntMatrix,
    /// Rank of `d_out`; kernel coordinates are the rows past it.
    rank_out: usize,
    /// Smith data of `d_in` written in the kernel basis.
    snf_in: SmithFull,
    /// Positions on the diagonal of `snf_in` carrying torsion (`d_i > 1`).
    torsion_positions: Vec<usize>,
    /// Positions contributing free generators (`d_i = 0` or off-diagonal).
    free_positions: Vec<usize>,
}

/// Coordinates of a cycle's class in the computed decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoords {
    /// Integer coordinates on the free part.
    pub free: Vec<BigInt>,
    /// Coordinates on the torsion part, reduced modulo each invariant factor.
    pub torsion: Vec<BigInt>,
}

impl ClassCoords {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }
}

impl PairBasis {
    /// Chain representative (ambient coordinates) of the i-th free generator.
    pub fn free_representative(&self, i: usize) -> Vec<BigInt> {
        let pos = self.free_positions[i];
        self.kernel.apply(&self.snf_in.u_inv.column(pos))
    }

    /// Chain representative of the i-th torsion generator.
    pub fn torsion_representative(&self, i: usize) -> Vec<BigInt> {
        let pos = self.torsion_positions[i];
        self.kernel.apply(&self.snf_in.u_inv.column(pos))
    }

    /// Expresses a cycle in the computed decomposition; `None` if the vector
    /// is not in the kernel lattice of `d_out`.
    pub fn class_coords(&self, cycle: &[BigInt]) -> Option<ClassCoords> {
        let coords = self.v_out_inv.apply(cycle);
        if coords[..self.rank_out].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let in_kernel: Vec<BigInt> = coords[self.rank_out..].to_vec();
        let w = self.snf_in.u.apply(&in_kernel);
        let facs = self.snf_in.invariant_factors();
        let free = self.free_positions.iter().map(|&p| w[p].clone()).collect();
        let torsion = self
            .torsion_positions
            .iter()
            .map(|&p| w[p].mod_floor(&facs[p]))
            .collect();
        Some(ClassCoords { free, torsion })
    }

    /// Whether the cycle is a boundary, i.e. lies in the image lattice of
    /// `d_in`.
    pub fn is_boundary(&self, cycle: &[BigInt]) -> bool {
        match self.class_coords(cycle) {
            Some(c) => c.is_zero(),
            None => false,
        }
    }
}

/// Homology `ker(d_out) / im(d_in)` of a composable pair, with basis data.
///
/// `d_in` maps degree g+1 chains into degree g; `d_out` maps degree g into
/// degree g-1. Fails with [`LinalgError::CompositionNonzero`] unless
/// `d_out * d_in = 0`.
pub fn homology_of_pair_with_basis(
    degree: Rational,
    d_in: &IntMatrix,
    d_out: &IntMatrix,
) -> Result<(HomologyGroup, PairBasis), LinalgError> {
    assert_eq!(d_out.cols(), d_in.rows(), "chain group dimension mismatch");
    let comp = d_out.mul(d_in);
    if let Some((i, j, _)) = comp.nonzero_entries().next() {
        return Err(LinalgError::CompositionNonzero { row: i, col: j });
    }

    let n = d_out.cols();
    let snf_out = smith_normal_form_full(d_out);
    let rank_out = snf_out.rank();
    let kernel_idx: Vec<usize> = (rank_out..n).collect();
    let all_rows: Vec<usize> = (0..n).collect();
    let kernel = snf_out.v.submatrix(&all_rows, &kernel_idx);

    // Coordinates of the incoming boundaries in the kernel basis. Rows of
    // V^-1 * d_in above the rank are zero because the composition vanishes
    // and the kernel lattice is saturated.
    let coords_full = snf_out.v_inv.mul(d_in);
    let in_kernel = coords_full.submatrix(&kernel_idx, &(0..d_in.cols()).collect::<Vec<_>>());

    let snf_in = smith_normal_form_full(&in_kernel);
    let facs = snf_in.invariant_factors();
    let k = kernel_idx.len();

    let mut torsion_positions = Vec::new();
    let mut free_positions = Vec::new();
    for p in 0..k {
        match facs.get(p) {
            Some(d) if d.is_zero() => free_positions.push(p),
            Some(d) if d > &BigInt::one() => torsion_positions.push(p),
            Some(_) => {} // invariant factor 1: trivial summand
            None => free_positions.push(p),
        }
    }

    let torsion: Vec<BigInt> = torsion_positions.iter().map(|&p| facs[p].clone()).collect();
    let group = HomologyGroup { degree, free_rank: free_positions.len(), torsion };
    let basis = PairBasis {
        kernel,
        v_out_inv: snf_out.v_inv,
        rank_out,
        snf_in,
        torsion_positions,
        free_positions,
    };
    Ok((group, basis))
}

/// Homology of a composable pair as free rank plus torsion.
pub fn homology_of_pair(
    degree: Rational,
    d_in: &IntMatrix,
    d_out: &IntMatrix,
) -> Result<HomologyGroup, LinalgError> {
    homology_of_pair_with_basis(degree, d_in, d_out).map(|(g, _)| g)
}

/// Rank of `a` over the field with `p` elements.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    check_prime(p)?;
    Ok(fp_rank(&fp_matrix(a, p), p))
}

pub(crate) fn check_prime(p: u64) -> Result<(), LinalgError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(LinalgError::NotPrime(p))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    if p % 3 == 0 {
        return p == 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 || p % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_two_two_block() {
        let a = IntMatrix::from_rows(&[vec![2, 2], vec![2, 2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::zero()]);
    }

    #[test]
    fn snf_single_entry() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
    }

    #[test]
    fn snf_transform_identity_holds() {
        let a = IntMatrix::from_rows(&[vec![4, -6, 2], vec![6, 6, 0], vec![0, 3, 9]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
    }

    #[test]
    fn homology_rank_and_torsion() {
        // Incoming [[2,2],[2,2]] into a rank-2 kernel, zero outgoing map.
        let d_in = IntMatrix::from_rows(&[vec![2, 2], vec![2, 2]]);
        let d_out = IntMatrix::zeros(0, 2);
        let h = homology_of_pair(rat(2), &d_in, &d_out).unwrap();
        assert_eq!(h.free_rank, 1);
        assert_eq!(h.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn homology_zero_differentials() {
        let d_in = IntMatrix::zeros(3, 0);
        let d_out = IntMatrix::zeros(0, 3);
        let h = homology_of_pair(rat(0), &d_in, &d_out).unwrap();
        assert_eq!(h.free_rank, 3);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn homology_exact_complex() {
        let d_in = IntMatrix::identity(2);
        let d_out = IntMatrix::zeros(0, 2);
        let h = homology_of_pair(rat(0), &d_in, &d_out).unwrap();
        assert_eq!(h.free_rank, 0);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn homology_rejects_nonzero_composition() {
        let d_in = IntMatrix::identity(2);
        let d_out = IntMatrix::identity(2);
        let err = homology_of_pair(rat(0), &d_in, &d_out).unwrap_err();
        assert!(matches!(err, LinalgError::CompositionNonzero { .. }));
    }

    #[test]
    fn rank_mod_small_primes() {
        let a = IntMatrix::from_rows(&[vec![2, 2], vec![2, 2]]);
        assert_eq!(rank_mod_p(&a, 2).unwrap(), 0);
        assert_eq!(rank_mod_p(&a, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&IntMatrix::identity(2), 5).unwrap(), 2);
    }

    #[test]
    fn rank_mod_rejects_composite() {
        let a = IntMatrix::identity(2);
        assert_eq!(rank_mod_p(&a, 6).unwrap_err(), LinalgError::NotPrime(6));
        assert_eq!(rank_mod_p(&a, 1).unwrap_err(), LinalgError::NotPrime(1));
    }

    #[test]
    fn representatives_span_the_group() {
        let d_in = IntMatrix::from_rows(&[vec![2, 2], vec![2, 2]]);
        let d_out = IntMatrix::zeros(0, 2);
        let (h, basis) = homology_of_pair_with_basis(rat(2), &d_in, &d_out).unwrap();
        assert_eq!(h.free_rank, 1);
        let free = basis.free_representative(0);
        let tor = basis.torsion_representative(0);
        let free_coords = basis.class_coords(&free).unwrap();
        assert_eq!(free_coords.free, vec![BigInt::one()]);
        assert!(free_coords.torsion.iter().all(Zero::is_zero));
        let tor_coords = basis.class_coords(&tor).unwrap();
        assert!(tor_coords.free.iter().all(Zero::is_zero));
        assert_eq!(tor_coords.torsion, vec![BigInt::one()]);
        // Twice the torsion representative bounds.
        let doubled: Vec<BigInt> = tor.iter().map(|c| c * 2).collect();
        assert!(basis.is_boundary(&doubled));
        assert!(!basis.is_boundary(&tor));
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]);
        assert_eq!(a.det(), BigInt::from(5));
        assert_eq!(IntMatrix::zeros(2, 2).det(), BigInt::zero());
    }
}
