//! Output probability laws for collision-free events.
//!
//! Three physical laws are implemented on top of the permanent kernels:
//!
//! * **ideal** — fully indistinguishable photons; the probability of an
//!   output pattern is the squared modulus of the permanent of the selected
//!   submatrix.
//! * **partial** — partially distinguishable photons with pairwise overlap
//!   `x_ind`. The probability becomes a sum over all permutations of the
//!   photons: a permutation displacing `d` photons contributes the permanent
//!   of the elementwise product of the submatrix with its column-permuted
//!   conjugate, weighted by `x_ind^d`. The identity permutation reproduces
//!   the classical (fully distinguishable) transmission, the full sum at
//!   `x_ind = 1` collapses to the ideal law.
//! * **approx** — the classical approximation that truncates the permutation
//!   sum to permutations displacing at most `n_cutoff` photons, i.e. keeps
//!   interference of at most `n_cutoff` photons. Exact when `n_cutoff = n`.
//!
//! Enumerating every collision-free pattern under a law yields a
//! [`DistributionTable`], conditioned on the collision-free sector; the mass
//! of the sector before conditioning is retained for the Bayesian validator.

use std::io::Write;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{
    permanent_ryser, submatrix_collision_free, Complex64, ComplexMatrix, UnitaryMatrix,
};
use crate::pattern::{binomial, enumerate_collision_free, OutputPattern};
use crate::Result;

/// Largest photon number accepted by the permutation-sum laws (n! terms).
pub const PERMUTATION_SUM_MAX: usize = 8;

/// Exhaustive-enumeration bound on C(m, n).
pub const ENUMERATION_BOUND: u64 = 1_000_000;

/// Most negative value an exact law may produce before it is treated as a
/// kernel bug rather than rounding.
pub const NEGATIVE_PROB_FLOOR: f64 = -1e-12;

/// Conditioned tables must sum to 1 within this.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Fraction of clamped entries above which an exact-law build fails.
pub const CLAMP_FRACTION_LIMIT: f64 = 1e-3;

/// Absolute bound on the imaginary residue of the permutation sum.
pub const IM_RESIDUE_TOL: f64 = 1e-10;

/// Uniform pairwise photon indistinguishability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinguishabilityModel {
    x_ind: f64,
}

impl DistinguishabilityModel {
    pub fn new(x_ind: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x_ind) {
            return Err(Error::Parse(format!(
                "indistinguishability must lie in [0, 1], got {x_ind}"
            )));
        }
        Ok(Self { x_ind })
    }

    pub fn x_ind(&self) -> f64 {
        self.x_ind
    }
}

/// The probability law a distribution table is built under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum Law {
    Ideal,
    Partial { x_ind: f64 },
    Approx { x_ind: f64, n_cutoff: usize },
    Uniform,
    FullyDistinguishable,
}

impl Law {
    /// Short machine name, used in sidecar files.
    pub fn name(&self) -> &'static str {
        match self {
            Law::Ideal => "ideal",
            Law::Partial { .. } => "partial",
            Law::Approx { .. } => "approx",
            Law::Uniform => "uniform",
            Law::FullyDistinguishable => "fully-distinguishable",
        }
    }

    pub fn x_ind(&self) -> Option<f64> {
        match self {
            Law::Ideal => Some(1.0),
            Law::Partial { x_ind } | Law::Approx { x_ind, .. } => Some(*x_ind),
            Law::Uniform => None,
            Law::FullyDistinguishable => Some(0.0),
        }
    }

    pub fn n_cutoff(&self) -> Option<usize> {
        match self {
            Law::Approx { n_cutoff, .. } => Some(*n_cutoff),
            _ => None,
        }
    }

    /// Human-readable provenance label, e.g. `partial x=0.947`.
    pub fn label(&self) -> String {
        match self {
            Law::Ideal => "ideal".into(),
            Law::Partial { x_ind } => format!("partial x={x_ind}"),
            Law::Approx { x_ind, n_cutoff } => format!("approx x={x_ind} cutoff={n_cutoff}"),
            Law::Uniform => "uniform".into(),
            Law::FullyDistinguishable => "fully-distinguishable".into(),
        }
    }
}

/// Accepts `ideal`, `uniform`, `fd`, `fully-distinguishable`,
/// `partial:<x>` and `approx:<x>:<cutoff>`.
impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["ideal"] => Ok(Law::Ideal),
            ["uniform"] => Ok(Law::Uniform),
            ["fd"] | ["fully-distinguishable"] => Ok(Law::FullyDistinguishable),
            ["partial", x] => {
                let x_ind = parse_x(x)?;
                Ok(Law::Partial { x_ind })
            }
            ["approx", x, c] => {
                let x_ind = parse_x(x)?;
                let n_cutoff = c
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad cutoff {c:?}: {e}")))?;
                Ok(Law::Approx { x_ind, n_cutoff })
            }
            _ => Err(Error::Parse(format!(
                "unknown law {s:?}; expected ideal | uniform | fd | partial:<x> | approx:<x>:<cutoff>"
            ))),
        }
    }
}

fn parse_x(tok: &str) -> Result<f64> {
    let x: f64 = tok
        .parse()
        .map_err(|e| Error::Parse(format!("bad indistinguishability {tok:?}: {e}")))?;
    DistinguishabilityModel::new(x).map(|m| m.x_ind())
}

/// All permutations of `0..n` paired with their displacement (number of
/// non-fixed points), in lexicographic order.
fn permutations_with_displacement(n: usize) -> Vec<(Vec<usize>, usize)> {
    (0..n)
        .permutations(n)
        .map(|sigma| {
            let displaced = sigma.iter().enumerate().filter(|(j, &s)| *j != s).count();
            (sigma, displaced)
        })
        .collect()
}

/// Permutation-summed probability of one output pattern, keeping only
/// permutations displacing at most `max_displaced` photons (`None` keeps
/// all). The sum is real up to rounding; an imaginary residue above
/// `IM_RESIDUE_TOL` is reported as a kernel bug.
fn interference_sum(
    sub: &ComplexMatrix,
    x_ind: f64,
    max_displaced: Option<usize>,
    perms: &[(Vec<usize>, usize)],
) -> Result<f64> {
    let n = sub.rows();
    let mut total = Complex64::ZERO;
    for (sigma, displaced) in perms {
        if let Some(max_d) = max_displaced {
            if *displaced > max_d {
                continue;
            }
        }
        let weight = if *displaced == 0 {
            1.0
        } else {
            x_ind.powi(*displaced as i32)
        };
        if weight == 0.0 {
            continue;
        }
        let product = ComplexMatrix::from_fn(n, n, |i, j| {
            sub.get(i, j) * sub.get(i, sigma[j]).conj()
        })?;
        total += permanent_ryser(&product)? * weight;
    }
    if total.im.abs() > IM_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue {
            residue: total.im.abs(),
            tol: IM_RESIDUE_TOL,
        });
    }
    Ok(total.re)
}

fn checked_submatrix(
    u: &UnitaryMatrix,
    input: &OutputPattern,
    output: &OutputPattern,
    need_permutation_sum: bool,
) -> Result<ComplexMatrix> {
    let sub = submatrix_collision_free(u, input, output)?;
    if need_permutation_sum && sub.rows() > PERMUTATION_SUM_MAX {
        return Err(Error::DimensionTooLarge {
            n: sub.rows(),
            max: PERMUTATION_SUM_MAX,
        });
    }
    Ok(sub)
}

/// Ideal (fully indistinguishable) probability of one output pattern.
pub fn ideal_probability(
    u: &UnitaryMatrix,
    input: &OutputPattern,
    output: &OutputPattern,
) -> Result<f64> {
    let sub = submatrix_collision_free(u, input, output)?;
    Ok(permanent_ryser(&sub)?.norm_sqr())
}

/// Partially distinguishable probability of one output pattern.
pub fn partial_probability(
    u: &UnitaryMatrix,
    input: &OutputPattern,
    output: &OutputPattern,
    model: DistinguishabilityModel,
) -> Result<f64> {
    let sub = checked_submatrix(u, input, output, true)?;
    let perms = permutations_with_displacement(sub.rows());
    interference_sum(&sub, model.x_ind(), None, &perms)
}

/// Truncated (classical approximation) probability of one output pattern,
/// keeping interference of at most `n_cutoff` photons. Truncation may push
/// individual values slightly negative; callers building tables clamp and
/// count those.
pub fn approx_probability(
    u: &UnitaryMatrix,
    input: &OutputPattern,
    output: &OutputPattern,
    model: DistinguishabilityModel,
    n_cutoff: usize,
) -> Result<f64> {
    let sub = checked_submatrix(u, input, output, true)?;
    if n_cutoff > sub.rows() {
        return Err(Error::CutoffTooLarge {
            cutoff: n_cutoff,
            n: sub.rows(),
        });
    }
    let perms = permutations_with_displacement(sub.rows());
    interference_sum(&sub, model.x_ind(), Some(n_cutoff), &perms)
}

/// Exhaustive probability vector over all C(m, n) collision-free patterns,
/// conditioned on the collision-free sector.
#[derive(Debug, Clone)]
pub struct DistributionTable {
    m: usize,
    n: usize,
    law: Law,
    patterns: Vec<OutputPattern>,
    probs: Vec<f64>,
    cfs_mass: f64,
    clamped: usize,
}

impl DistributionTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn law(&self) -> Law {
        self.law
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[OutputPattern] {
        &self.patterns
    }

    /// Conditioned probabilities, aligned with `patterns()`.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Collision-free mass of the law before conditioning.
    pub fn cfs_mass(&self) -> f64 {
        self.cfs_mass
    }

    /// Number of entries clamped up to zero during the build.
    pub fn clamped(&self) -> usize {
        self.clamped
    }

    /// Conditioned probability of one pattern, via its lexicographic rank.
    pub fn prob_of(&self, pattern: &OutputPattern) -> f64 {
        self.probs[pattern.rank()]
    }

    /// Index of the most probable pattern; ties resolve to the
    /// lexicographically least pattern.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }

    /// CSV with header `pattern,prob`, one row per collision-free pattern in
    /// lexicographic order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "pattern,prob")?;
        for (pattern, prob) in self.patterns.iter().zip(&self.probs) {
            writeln!(w, "{pattern},{prob}")?;
        }
        Ok(())
    }

    /// Sidecar describing the table's provenance.
    pub fn sidecar(&self, seed: Option<u64>) -> TableSidecar {
        TableSidecar {
            m: self.m,
            n: self.n,
            law: self.law.name().into(),
            x_ind: self.law.x_ind(),
            n_cutoff: self.law.n_cutoff(),
            cfs_mass: self.cfs_mass,
            seed,
            clamped: self.clamped,
        }
    }
}

/// JSON sidecar for a serialized table.
#[derive(Debug, Serialize, Deserialize)]
pub struct TableSidecar {
    pub m: usize,
    pub n: usize,
    pub law: String,
    pub x_ind: Option<f64>,
    pub n_cutoff: Option<usize>,
    pub cfs_mass: f64,
    pub seed: Option<u64>,
    pub clamped: usize,
}

/// Build the full collision-free distribution of `law` for photons injected
/// at `input`. Probabilities for distinct patterns are independent, so the
/// enumeration parallelizes; the reduction below is sequential and
/// order-stable, keeping results identical for any thread count.
pub fn build_distribution(
    u: &UnitaryMatrix,
    input: &OutputPattern,
    law: Law,
) -> Result<DistributionTable> {
    let m = u.dim();
    let n = input.n();
    if input.m() != m {
        return Err(Error::InvalidPattern(format!(
            "input pattern is defined over {} modes, interferometer has {m}",
            input.m()
        )));
    }
    let count = binomial(m, n);
    if count > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound {
            m,
            n,
            count,
            bound: ENUMERATION_BOUND,
        });
    }
    if let Some(x) = law.x_ind() {
        DistinguishabilityModel::new(x)?;
    }
    if let Law::Approx { n_cutoff, .. } = law {
        if n_cutoff > n {
            return Err(Error::CutoffTooLarge { cutoff: n_cutoff, n });
        }
    }
    let patterns = enumerate_collision_free(m, n)?;

    let raw: Vec<f64> = match law {
        Law::Uniform => vec![1.0 / patterns.len() as f64; patterns.len()],
        Law::Ideal => patterns
            .par_iter()
            .map(|t| ideal_probability(u, input, t))
            .collect::<Result<_>>()?,
        Law::Partial { .. } | Law::Approx { .. } | Law::FullyDistinguishable => {
            if n > PERMUTATION_SUM_MAX {
                return Err(Error::DimensionTooLarge {
                    n,
                    max: PERMUTATION_SUM_MAX,
                });
            }
            let x_ind = law.x_ind().unwrap_or(0.0);
            let max_displaced = law.n_cutoff();
            let perms = permutations_with_displacement(n);
            patterns
                .par_iter()
                .map(|t| {
                    let sub = submatrix_collision_free(u, input, t)?;
                    interference_sum(&sub, x_ind, max_displaced, &perms)
                })
                .collect::<Result<_>>()?
        }
    };

    // Truncated laws genuinely produce small negative values; for exact laws
    // anything below the rounding floor is a kernel bug.
    let truncated = matches!(law, Law::Approx { n_cutoff, .. } if n_cutoff < n);
    let mut probs = raw;
    let mut clamped = 0usize;
    for p in &mut probs {
        if *p < 0.0 {
            if !truncated && *p < NEGATIVE_PROB_FLOOR {
                return Err(Error::NegativeProbability { value: *p });
            }
            *p = 0.0;
            clamped += 1;
        }
    }
    if !truncated && (clamped as f64) > CLAMP_FRACTION_LIMIT * probs.len() as f64 {
        return Err(Error::ClampBreach {
            clamped,
            total: probs.len(),
            limit: CLAMP_FRACTION_LIMIT * 100.0,
        });
    }

    let cfs_mass: f64 = probs.iter().sum();
    if !(cfs_mass > 0.0 && cfs_mass <= 1.0 + NORMALIZATION_TOL) {
        return Err(Error::MassOutOfRange { mass: cfs_mass });
    }
    for p in &mut probs {
        *p /= cfs_mass;
    }
    let check: f64 = probs.iter().sum();
    if (check - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::MassOutOfRange { mass: check });
    }

    Ok(DistributionTable {
        m,
        n,
        law,
        patterns,
        probs,
        cfs_mass,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_random_unitary;
    use crate::linalg::permanent_naive;

    fn balanced_beam_splitter() -> UnitaryMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let entries = vec![
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
        ];
        UnitaryMatrix::new(ComplexMatrix::new(2, 2, entries).unwrap()).unwrap()
    }

    fn pair(m: usize) -> OutputPattern {
        OutputPattern::first_modes(2, m).unwrap()
    }

    #[test]
    fn single_mode_is_certain() {
        let u = UnitaryMatrix::new(ComplexMatrix::identity(1)).unwrap();
        let p = OutputPattern::first_modes(1, 1).unwrap();
        assert!((ideal_probability(&u, &p, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hong_ou_mandel_coincidence_vanishes() {
        let u = balanced_beam_splitter();
        let p = ideal_probability(&u, &pair(2), &pair(2)).unwrap();
        assert!(p.abs() < 1e-12);
    }

    #[test]
    fn hong_ou_mandel_closed_form_over_grid() {
        // coincidence probability of the balanced beam splitter: (1 - x^2)/2
        let u = balanced_beam_splitter();
        for i in 0..=20 {
            let x = i as f64 * 0.05;
            let model = DistinguishabilityModel::new(x).unwrap();
            let p = partial_probability(&u, &pair(2), &pair(2), model).unwrap();
            assert!(
                (p - (1.0 - x * x) / 2.0).abs() <= 1e-10,
                "x = {x}: got {p}"
            );
        }
    }

    #[test]
    fn fully_indistinguishable_reduces_to_ideal() {
        let u = haar_random_unitary(5, 21).unwrap();
        let input = OutputPattern::first_modes(3, 5).unwrap();
        let model = DistinguishabilityModel::new(1.0).unwrap();
        for output in enumerate_collision_free(5, 3).unwrap() {
            let ideal = ideal_probability(&u, &input, &output).unwrap();
            let partial = partial_probability(&u, &input, &output, model).unwrap();
            assert!((ideal - partial).abs() <= 1e-12, "pattern {output}");
        }
    }

    #[test]
    fn fully_distinguishable_is_classical_transmission() {
        // at x = 0 only the identity permutation survives, leaving the
        // permanent of the elementwise squared-modulus submatrix
        let u = haar_random_unitary(6, 8).unwrap();
        let input = OutputPattern::first_modes(3, 6).unwrap();
        let model = DistinguishabilityModel::new(0.0).unwrap();
        for output in enumerate_collision_free(6, 3).unwrap().iter().take(10) {
            let sub = submatrix_collision_free(&u, &input, output).unwrap();
            let squared = ComplexMatrix::from_fn(3, 3, |i, j| {
                Complex64::new(sub.get(i, j).norm_sqr(), 0.0)
            })
            .unwrap();
            let classical = permanent_naive(&squared).unwrap().re;
            let partial = partial_probability(&u, &input, output, model).unwrap();
            assert!((classical - partial).abs() <= 1e-12);
        }
    }

    #[test]
    fn full_cutoff_recovers_partial() {
        let u = haar_random_unitary(6, 13).unwrap();
        let input = OutputPattern::first_modes(3, 6).unwrap();
        for &x in &[0.0, 0.5, 0.947, 1.0] {
            let model = DistinguishabilityModel::new(x).unwrap();
            for output in enumerate_collision_free(6, 3).unwrap() {
                let full = partial_probability(&u, &input, &output, model).unwrap();
                let truncated = approx_probability(&u, &input, &output, model, 3).unwrap();
                assert!((full - truncated).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn cutoff_zero_and_one_are_the_distinguishable_law() {
        // no permutation displaces exactly one element, so cutoff 1 adds
        // nothing over cutoff 0, and cutoff 0 is the x = 0 law
        let u = haar_random_unitary(6, 17).unwrap();
        let input = OutputPattern::first_modes(3, 6).unwrap();
        let model = DistinguishabilityModel::new(0.8).unwrap();
        let fd = DistinguishabilityModel::new(0.0).unwrap();
        for output in enumerate_collision_free(6, 3).unwrap().iter().take(8) {
            let c0 = approx_probability(&u, &input, output, model, 0).unwrap();
            let c1 = approx_probability(&u, &input, output, model, 1).unwrap();
            let classical = partial_probability(&u, &input, output, fd).unwrap();
            assert!((c0 - c1).abs() <= 1e-15);
            assert!((c0 - classical).abs() <= 1e-12);
        }
    }

    #[test]
    fn cutoff_above_n_rejected() {
        let u = haar_random_unitary(4, 2).unwrap();
        let input = OutputPattern::first_modes(2, 4).unwrap();
        let model = DistinguishabilityModel::new(0.5).unwrap();
        assert!(matches!(
            approx_probability(&u, &input, &input, model, 3),
            Err(Error::CutoffTooLarge { .. })
        ));
    }

    // Full Fock-space oracle: enumerate every output multiset (collisions
    // included) and check the ideal law sums to one. Repeated output modes
    // repeat columns of the submatrix and contribute a 1/prod(T_i!) factor.
    fn multisets(m: usize, n: usize) -> Vec<Vec<usize>> {
        fn rec(m: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for mode in start..m {
                cur.push(mode);
                rec(m, n, mode, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, n, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn ideal_law_sums_to_one_over_full_fock_space() {
        let m = 4;
        let n = 2;
        let u = haar_random_unitary(m, 31).unwrap();
        let input = OutputPattern::first_modes(n, m).unwrap();
        let mut total = 0.0;
        for cols in multisets(m, n) {
            let sub = ComplexMatrix::from_fn(n, n, |i, j| u.get(input.modes()[i], cols[j]))
                .unwrap();
            let mut occ_factorial = 1.0;
            let mut run = 1;
            for w in 1..=cols.len() {
                if w < cols.len() && cols[w] == cols[w - 1] {
                    run += 1;
                } else {
                    for f in 2..=run {
                        occ_factorial *= f as f64;
                    }
                    run = 1;
                }
            }
            total += permanent_naive(&sub).unwrap().norm_sqr() / occ_factorial;
        }
        assert!((total - 1.0).abs() <= 1e-9, "full-space mass {total}");
    }

    #[test]
    fn uniform_table_is_flat() {
        let u = haar_random_unitary(16, 3).unwrap();
        let input = OutputPattern::first_modes(4, 16).unwrap();
        let table = build_distribution(&u, &input, Law::Uniform).unwrap();
        assert_eq!(table.len(), 1820);
        for &p in table.probs() {
            assert!((p - 1.0 / 1820.0).abs() < 1e-15);
        }
        assert!((table.cfs_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_at_one_matches_ideal_table() {
        let u = haar_random_unitary(6, 19).unwrap();
        let input = OutputPattern::first_modes(3, 6).unwrap();
        let ideal = build_distribution(&u, &input, Law::Ideal).unwrap();
        let partial = build_distribution(&u, &input, Law::Partial { x_ind: 1.0 }).unwrap();
        for (a, b) in ideal.probs().iter().zip(partial.probs()) {
            assert!((a - b).abs() <= 1e-12);
        }
        assert!((ideal.cfs_mass() - partial.cfs_mass()).abs() <= 1e-12);
    }

    #[test]
    fn fully_distinguishable_table_matches_partial_zero() {
        let u = haar_random_unitary(6, 23).unwrap();
        let input = OutputPattern::first_modes(3, 6).unwrap();
        let fd = build_distribution(&u, &input, Law::FullyDistinguishable).unwrap();
        let p0 = build_distribution(&u, &input, Law::Partial { x_ind: 0.0 }).unwrap();
        for (a, b) in fd.probs().iter().zip(p0.probs()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn conditioned_tables_sum_to_one() {
        let u = haar_random_unitary(8, 29).unwrap();
        let input = OutputPattern::first_modes(3, 8).unwrap();
        let laws = [
            Law::Ideal,
            Law::Partial { x_ind: 0.5 },
            Law::Approx {
                x_ind: 0.9,
                n_cutoff: 2,
            },
            Law::Uniform,
            Law::FullyDistinguishable,
        ];
        for law in laws {
            let table = build_distribution(&u, &input, law).unwrap();
            let sum: f64 = table.probs().iter().sum();
            assert!((sum - 1.0).abs() <= NORMALIZATION_TOL, "{law:?}: {sum}");
            assert!(table.cfs_mass() > 0.0 && table.cfs_mass() <= 1.0 + NORMALIZATION_TOL);
        }
    }

    #[test]
    fn law_parsing() {
        assert_eq!("ideal".parse::<Law>().unwrap(), Law::Ideal);
        assert_eq!("fd".parse::<Law>().unwrap(), Law::FullyDistinguishable);
        assert_eq!(
            "partial:0.947".parse::<Law>().unwrap(),
            Law::Partial { x_ind: 0.947 }
        );
        assert_eq!(
            "approx:1:3".parse::<Law>().unwrap(),
            Law::Approx {
                x_ind: 1.0,
                n_cutoff: 3
            }
        );
        assert!("partial:1.5".parse::<Law>().is_err());
        assert!("nonsense".parse::<Law>().is_err());
    }

    #[test]
    fn enumeration_bound_enforced() {
        let u = haar_random_unitary(40, 1).unwrap();
        let input = OutputPattern::first_modes(12, 40).unwrap();
        assert!(matches!(
            build_distribution(&u, &input, Law::Uniform),
            Err(Error::EnumerationBound { .. })
        ));
    }
}
