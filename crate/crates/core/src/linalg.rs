//! Dense complex matrices, Haar-random unitaries, and permanent kernels.
//!
//! The permanent is the inner loop of every output probability, so two
//! implementations live here: a permutation-sum oracle for small sizes and
//! the Gray-code Ryser kernel used in production. Ryser evaluates
//!
//! ```text
//! Perm(A) = (-1)^n * sum over nonempty S of (-1)^|S| * prod_i sum_{j in S} A[i][j]
//! ```
//!
//! visiting subsets in Gray-code order so each step updates the running row
//! sums with a single column, O(n) per subset and O(n 2^n) overall.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pattern::OutputPattern;
use crate::seed::seeded_rng;
use crate::Result;

pub type Complex64 = Complex<f64>;

/// Maximum unitarity residual `max |U^dag U - I|` accepted on construction.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Largest matrix the permutation-sum oracle accepts (8! = 40320 terms).
pub const NAIVE_PERMANENT_MAX: usize = 8;

/// Largest matrix the Ryser kernel accepts; the subset counter is a u32
/// mask, and 2^n iterations past this point are impractical anyway.
pub const RYSER_MAX: usize = 30;

/// Dense row-major complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::ONE;
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }
}

/// A square matrix validated against `UNITARITY_TOL` on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    matrix: ComplexMatrix,
}

impl UnitaryMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.require_square()?;
        let residual = unitarity_residual(&matrix);
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary {
                residual,
                tol: UNITARITY_TOL,
            });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.matrix)
    }

    pub fn to_json(&self) -> String {
        let m = self.dim();
        let file = UnitaryFile {
            m,
            re: self.matrix.entries.iter().map(|z| z.re).collect(),
            im: self.matrix.entries.iter().map(|z| z.im).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializing finite floats cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: UnitaryFile = serde_json::from_str(text)?;
        if file.re.len() != file.m * file.m || file.im.len() != file.re.len() {
            return Err(Error::ShapeMismatch {
                rows: file.m,
                cols: file.m,
                len: file.re.len(),
            });
        }
        let entries: Vec<Complex64> = file
            .re
            .iter()
            .zip(&file.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        UnitaryMatrix::new(ComplexMatrix::new(file.m, file.m, entries)?)
    }
}

/// On-disk form: `m`, then row-major real and imaginary parts. JSON float
/// round-tripping is exact for finite doubles.
#[derive(Serialize, Deserialize)]
struct UnitaryFile {
    m: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

/// `max |U^dag U - I|` over all entries.
fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let n = u.rows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += u.get(k, i).conj() * u.get(k, j);
            }
            if i == j {
                acc -= Complex64::ONE;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

/// Draw an `m x m` Haar-random unitary: QR-factorize a complex Ginibre
/// matrix and absorb the R-diagonal phases into Q so the distribution is
/// measure-correct. Deterministic for a fixed seed.
pub fn haar_random_unitary(m: usize, seed: u64) -> Result<UnitaryMatrix> {
    if m == 0 {
        return Err(Error::DimensionTooLarge { n: 0, max: 0 });
    }
    let mut rng = seeded_rng(seed);
    let mut entries = Vec::with_capacity(m * m);
    for _ in 0..m * m {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        entries.push(Complex64::new(re, im));
    }
    let ginibre = nalgebra::DMatrix::from_row_slice(m, m, &entries);
    let qr = ginibre.qr();
    let q = qr.q();
    let r = qr.r();
    let matrix = ComplexMatrix::from_fn(m, m, |i, j| {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::ONE
        };
        q[(i, j)] * phase
    })?;
    UnitaryMatrix::new(matrix)
}

/// Permutation-sum permanent, the oracle for the Ryser kernel. Only accepts
/// `n <= NAIVE_PERMANENT_MAX`.
pub fn permanent_naive(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.require_square()?;
    if n > NAIVE_PERMANENT_MAX {
        return Err(Error::DimensionTooLarge {
            n,
            max: NAIVE_PERMANENT_MAX,
        });
    }
    let mut total = Complex64::ZERO;
    let mut indices: Vec<usize> = (0..n).collect();
    permute_sum(a, &mut indices, 0, &mut total);
    Ok(total)
}

// Heap-style recursion over permutations; adds prod_i A[i][sigma(i)] per leaf.
fn permute_sum(a: &ComplexMatrix, indices: &mut [usize], depth: usize, total: &mut Complex64) {
    let n = indices.len();
    if depth == n {
        let mut prod = Complex64::ONE;
        for (i, &j) in indices.iter().enumerate() {
            prod *= a.get(i, j);
        }
        *total += prod;
        return;
    }
    for i in depth..n {
        indices.swap(depth, i);
        permute_sum(a, indices, depth + 1, total);
        indices.swap(depth, i);
    }
}

/// Gray-code Ryser permanent, O(n 2^n).
pub fn permanent_ryser(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.require_square()?;
    if n > RYSER_MAX {
        return Err(Error::DimensionTooLarge { n, max: RYSER_MAX });
    }
    let mut row_sums = vec![Complex64::ZERO; n];
    let mut total = Complex64::ZERO;
    let mut sign = 1.0f64;
    for g in 1u32..(1u32 << n) {
        let gray = g ^ (g >> 1);
        let j = g.trailing_zeros() as usize;
        if gray >> j & 1 == 1 {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs += a.get(i, j);
            }
        } else {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs -= a.get(i, j);
            }
        }
        // |S| parity flips with every Gray step; the first subset is {0}.
        sign = -sign;
        let mut prod = Complex64::ONE;
        for rs in &row_sums {
            prod *= rs;
        }
        total += prod * sign;
    }
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// The `n x n` submatrix of `u` selecting the input pattern's modes as rows
/// and the output pattern's modes as columns, both in ascending mode order.
pub fn submatrix_collision_free(
    u: &UnitaryMatrix,
    input: &OutputPattern,
    output: &OutputPattern,
) -> Result<ComplexMatrix> {
    if input.n() != output.n() {
        return Err(Error::PhotonCountMismatch {
            input: input.n(),
            output: output.n(),
        });
    }
    let m = u.dim();
    for &mode in input.modes().iter().chain(output.modes()) {
        if mode >= m {
            return Err(Error::InvalidPattern(format!(
                "mode {mode} out of range for a {m}-mode interferometer"
            )));
        }
    }
    ComplexMatrix::from_fn(input.n(), input.n(), |a, b| {
        u.get(input.modes()[a], output.modes()[b])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = seeded_rng(seed);
        ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
        .unwrap()
    }

    #[test]
    fn naive_identity_is_one() {
        let p = permanent_naive(&ComplexMatrix::identity(3)).unwrap();
        assert!((p - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn naive_all_ones_is_factorial() {
        let j4 = ComplexMatrix::from_fn(4, 4, |_, _| Complex64::ONE).unwrap();
        let p = permanent_naive(&j4).unwrap();
        assert!((p.re - 24.0).abs() < 1e-9 && p.im.abs() < 1e-12);
    }

    #[test]
    fn naive_two_by_two_formula() {
        let (a, b, c, d) = (
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.25),
            Complex64::new(0.75, -1.0),
            Complex64::new(2.0, 0.5),
        );
        let mat = ComplexMatrix::new(2, 2, vec![a, b, c, d]).unwrap();
        let p = permanent_naive(&mat).unwrap();
        assert!((p - (a * d + b * c)).norm() < 1e-12);
    }

    #[test]
    fn ryser_identity_is_one() {
        let p = permanent_ryser(&ComplexMatrix::identity(5)).unwrap();
        assert!((p - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn ryser_all_ones_is_factorial() {
        let j5 = ComplexMatrix::from_fn(5, 5, |_, _| Complex64::ONE).unwrap();
        let p = permanent_ryser(&j5).unwrap();
        assert!((p.re - 120.0).abs() < 1e-9 && p.im.abs() < 1e-9);
    }

    #[test]
    fn ryser_matches_naive_oracle() {
        let a = random_matrix(6, 7);
        let naive = permanent_naive(&a).unwrap();
        let ryser = permanent_ryser(&a).unwrap();
        assert!((naive - ryser).norm() <= 1e-9 * naive.norm().max(1.0));
    }

    #[test]
    fn ryser_rejects_oversized() {
        let a = ComplexMatrix::from_fn(31, 31, |_, _| Complex64::ONE).unwrap();
        assert!(matches!(
            permanent_ryser(&a),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn permanent_rejects_non_square() {
        let a = ComplexMatrix::from_fn(2, 3, |_, _| Complex64::ONE).unwrap();
        assert!(matches!(permanent_naive(&a), Err(Error::NonSquare { .. })));
        assert!(matches!(permanent_ryser(&a), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn haar_dim_one_is_a_phase() {
        let u = haar_random_unitary(1, 9).unwrap();
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_unitarity_across_dims() {
        for m in [1usize, 2, 4, 16] {
            let u = haar_random_unitary(m, 42).unwrap();
            assert!(
                u.unitarity_residual() <= UNITARITY_TOL,
                "residual {} at m = {m}",
                u.unitarity_residual()
            );
        }
    }

    #[test]
    fn haar_columns_are_normalized() {
        let u = haar_random_unitary(4, 5).unwrap();
        for j in 0..4 {
            let norm: f64 = (0..4).map(|i| u.get(i, j).norm_sqr()).sum();
            assert!((norm - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn haar_is_deterministic_per_seed() {
        let a = haar_random_unitary(8, 1234).unwrap();
        let b = haar_random_unitary(8, 1234).unwrap();
        let c = haar_random_unitary(8, 1235).unwrap();
        assert_eq!(a.matrix().entries(), b.matrix().entries());
        assert_ne!(a.matrix().entries(), c.matrix().entries());
    }

    #[test]
    fn unitary_json_round_trip_is_exact() {
        let u = haar_random_unitary(6, 77).unwrap();
        let back = UnitaryMatrix::from_json(&u.to_json()).unwrap();
        for (a, b) in u.matrix().entries().iter().zip(back.matrix().entries()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn submatrix_full_selection_is_identity_map() {
        let u = haar_random_unitary(3, 3).unwrap();
        let all = OutputPattern::first_modes(3, 3).unwrap();
        let sub = submatrix_collision_free(&u, &all, &all).unwrap();
        assert_eq!(sub.entries(), u.matrix().entries());
    }

    #[test]
    fn submatrix_selects_rows_and_columns() {
        let u = haar_random_unitary(4, 11).unwrap();
        let input = OutputPattern::new(vec![0, 1], 4).unwrap();
        let output = OutputPattern::new(vec![2, 3], 4).unwrap();
        let sub = submatrix_collision_free(&u, &input, &output).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(sub.get(a, b), u.get(a, 2 + b));
            }
        }
        let single_in = OutputPattern::new(vec![0], 4).unwrap();
        let single_out = OutputPattern::new(vec![1], 4).unwrap();
        let one = submatrix_collision_free(&u, &single_in, &single_out).unwrap();
        assert_eq!(one.get(0, 0), u.get(0, 1));
    }

    #[test]
    fn submatrix_rejects_count_mismatch() {
        let u = haar_random_unitary(4, 1).unwrap();
        let input = OutputPattern::new(vec![0, 1], 4).unwrap();
        let output = OutputPattern::new(vec![2], 4).unwrap();
        assert!(matches!(
            submatrix_collision_free(&u, &input, &output),
            Err(Error::PhotonCountMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_finite_entries() {
        let bad = ComplexMatrix::new(1, 1, vec![Complex64::new(f64::NAN, 0.0)]);
        assert!(matches!(bad, Err(Error::NonFiniteEntry)));
    }
}
