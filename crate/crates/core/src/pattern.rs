//! Collision-free Fock patterns over `m` modes.
//!
//! A pattern is the set of occupied output modes of an `n`-photon
//! collision-free event, stored as a strictly ascending mode list. The
//! canonical form doubles as a map key, and the lexicographic rank of the
//! mode combination indexes into enumerated distribution tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// A collision-free `n`-photon output pattern: `n` distinct occupied modes
/// out of `m`, in strictly ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OutputPattern {
    modes: Vec<usize>,
    m: usize,
}

impl OutputPattern {
    pub fn new(modes: Vec<usize>, m: usize) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidPattern("pattern holds no photons".into()));
        }
        for w in modes.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidPattern(format!(
                    "modes must be strictly ascending, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&last) = modes.last() {
            if last >= m {
                return Err(Error::InvalidPattern(format!(
                    "mode {last} out of range for {m} modes"
                )));
            }
        }
        Ok(Self { modes, m })
    }

    /// The conventional input state: photons in modes `0..n`.
    pub fn first_modes(n: usize, m: usize) -> Result<Self> {
        Self::new((0..n).collect(), m)
    }

    pub fn n(&self) -> usize {
        self.modes.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    /// 0/1 occupation vector of length `m` (the clustering embedding).
    pub fn occupation(&self) -> Vec<f64> {
        let mut occ = vec![0.0; self.m];
        for &mode in &self.modes {
            occ[mode] = 1.0;
        }
        occ
    }

    /// Number of occupied modes in exactly one of the two patterns.
    /// Equals the squared Euclidean distance between occupation vectors.
    pub fn symmetric_difference(&self, other: &Self) -> usize {
        let mut i = 0;
        let mut j = 0;
        let mut shared = 0;
        while i < self.modes.len() && j < other.modes.len() {
            match self.modes[i].cmp(&other.modes[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        self.modes.len() + other.modes.len() - 2 * shared
    }

    /// Euclidean distance between the 0/1 occupation vectors.
    pub fn l2_to(&self, other: &Self) -> f64 {
        (self.symmetric_difference(other) as f64).sqrt()
    }

    /// Lexicographic rank of the mode combination among all C(m, n)
    /// collision-free patterns, matching [`enumerate_collision_free`] order.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0u64;
        let mut prev: isize = -1;
        for (i, &mode) in self.modes.iter().enumerate() {
            for v in (prev + 1) as usize..mode {
                rank += binomial(self.m - 1 - v, n - 1 - i);
            }
            prev = mode as isize;
        }
        rank as usize
    }
}

impl fmt::Display for OutputPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, mode) in self.modes.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{mode}")?;
        }
        Ok(())
    }
}

/// Parses the dash-joined form emitted by `Display`, e.g. `"0-3-7-12"`.
/// The mode count `m` is not part of the text form, so the parsed pattern
/// takes `m` = max mode + 1 and must be re-bound via [`OutputPattern::new`]
/// when a wider register is intended.
impl FromStr for OutputPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let modes: Vec<usize> = s
            .split('-')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad mode index {tok:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        let m = modes.iter().max().copied().unwrap_or(0) + 1;
        OutputPattern::new(modes, m)
    }
}

/// Binomial coefficient C(m, n) in u64 arithmetic; saturates at u64::MAX.
pub fn binomial(m: usize, n: usize) -> u64 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    let mut acc: u128 = 1;
    for i in 0..n {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All C(m, n) collision-free patterns in lexicographic order.
pub fn enumerate_collision_free(m: usize, n: usize) -> Result<Vec<OutputPattern>> {
    if n == 0 || n > m {
        return Err(Error::InvalidPattern(format!(
            "need 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    let count = binomial(m, n) as usize;
    let mut out = Vec::with_capacity(count);
    let mut modes: Vec<usize> = (0..n).collect();
    loop {
        out.push(OutputPattern {
            modes: modes.clone(),
            m,
        });
        // advance to the next combination in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if modes[i] != i + m - n {
                break;
            }
            if i == 0 {
                return Ok(out);
            }
        }
        modes[i] += 1;
        for j in i + 1..n {
            modes[j] = modes[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pattern_when_full() {
        let pats = enumerate_collision_free(4, 4).unwrap();
        assert_eq!(pats.len(), 1);
        assert_eq!(pats[0].modes(), &[0, 1, 2, 3]);
    }

    #[test]
    fn paper_scale_count() {
        assert_eq!(enumerate_collision_free(16, 4).unwrap().len(), 1820);
    }

    #[test]
    fn three_choose_two() {
        let pats = enumerate_collision_free(3, 2).unwrap();
        let shown: Vec<String> = pats.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["0-1", "0-2", "1-2"]);
    }

    #[test]
    fn zero_photons_rejected() {
        assert!(enumerate_collision_free(4, 0).is_err());
        assert!(enumerate_collision_free(3, 4).is_err());
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for (m, n) in [(3usize, 2usize), (6, 3), (16, 4)] {
            let pats = enumerate_collision_free(m, n).unwrap();
            for (i, p) in pats.iter().enumerate() {
                assert_eq!(p.rank(), i, "pattern {p} of C({m},{n})");
            }
        }
    }

    #[test]
    fn pattern_validation() {
        assert!(OutputPattern::new(vec![0, 0, 1], 4).is_err());
        assert!(OutputPattern::new(vec![1, 0], 4).is_err());
        assert!(OutputPattern::new(vec![0, 4], 4).is_err());
        assert!(OutputPattern::new(vec![], 4).is_err());
        assert!(OutputPattern::new(vec![0, 3], 4).is_ok());
    }

    #[test]
    fn distances_on_occupation_vectors() {
        let a = OutputPattern::new(vec![0, 1, 2, 3], 16).unwrap();
        assert_eq!(a.l2_to(&a), 0.0);
        // one occupied mode moved: two coordinates differ
        let b = OutputPattern::new(vec![0, 1, 2, 7], 16).unwrap();
        assert!((a.l2_to(&b) - 2.0_f64.sqrt()).abs() < 1e-12);
        // disjoint 4-photon patterns: eight coordinates differ
        let c = OutputPattern::new(vec![8, 9, 10, 11], 16).unwrap();
        assert!((a.l2_to(&c) - 8.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn display_round_trip() {
        let p = OutputPattern::new(vec![0, 3, 7, 12], 13).unwrap();
        let back: OutputPattern = p.to_string().parse().unwrap();
        assert_eq!(back.modes(), p.modes());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(16, 4), 1820);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(52, 26), 495_918_532_948_104);
    }
}
