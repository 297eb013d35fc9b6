//! Fourier coefficients of the genus-3 theta series of E₈ with the harmonic
//! weight `Re det(Q·(v₁, v₂, v₃))⁸`, by direct enumeration of vector triples.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{parse_rational, pow_rat, int, ExactRational};

/// Largest vector norm the enumerator accepts.
pub const NORM_CAP: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("malformed Gram matrix {0:?}: expected \"a,b,c;b,d,e;c,e,f\"")]
    Parse(String),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("diagonal entry {0} is not a positive even integer")]
    BadDiagonal(String),
    #[error("norm {norm} above the enumeration cap {cap}")]
    Cap { norm: i64, cap: i64 },
    #[error("time budget of {0:?} exhausted")]
    Budget(Duration),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// An E₈ vector stored as twice its coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub doubled: [i8; 8],
}

impl LatticeVector {
    pub fn new(doubled: [i8; 8]) -> Option<Self> {
        let parity = doubled[0].rem_euclid(2);
        let sum: i32 = doubled.iter().map(|&u| u as i32).sum();
        (doubled.iter().all(|u| u.rem_euclid(2) == parity) && sum.rem_euclid(4) == 0)
            .then_some(Self { doubled })
    }

    /// `Σ uᵢ² = 4⟨v, v⟩`.
    pub fn norm4(&self) -> i32 {
        self.doubled.iter().map(|&u| u as i32 * u as i32).sum()
    }

    pub fn norm(&self) -> i64 {
        self.norm4() as i64 / 4
    }

    /// `4⟨v, w⟩`.
    pub fn dot4(&self, other: &Self) -> i32 {
        self.doubled
            .iter()
            .zip(&other.doubled)
            .map(|(&a, &b)| a as i32 * b as i32)
            .sum()
    }

    pub fn neg(&self) -> Self {
        Self {
            doubled: self.doubled.map(|u| -u),
        }
    }

    fn is_positive(&self) -> bool {
        self.doubled.iter().find(|&&u| u != 0).is_some_and(|&u| u > 0)
    }
}

/// All E₈ vectors with `⟨v, v⟩ = norm`, sorted.
pub fn enumerate_vectors(norm: i64) -> Result<Vec<LatticeVector>, ThetaError> {
    if norm > NORM_CAP {
        return Err(ThetaError::Cap { norm, cap: NORM_CAP });
    }
    if norm <= 0 || norm % 2 != 0 {
        return Ok(Vec::new());
    }
    let target = (4 * norm) as i32;
    let bound = (target as f64).sqrt() as i8;
    let mut out = Vec::new();
    for parity in 0..2i8 {
        let mut cur = [0i8; 8];
        search(0, target, parity, bound, &mut cur, &mut out);
    }
    out.sort();
    Ok(out)
}

fn search(i: usize, left: i32, parity: i8, bound: i8, cur: &mut [i8; 8], out: &mut Vec<LatticeVector>) {
    if i == 8 {
        if left == 0 {
            if let Some(v) = LatticeVector::new(*cur) {
                out.push(v);
            }
        }
        return;
    }
    // each remaining coordinate contributes at least `parity`
    let min_rest = (7 - i) as i32 * parity as i32;
    for u in -bound..=bound {
        if u.rem_euclid(2) != parity {
            continue;
        }
        let sq = u as i32 * u as i32;
        if sq + min_rest > left {
            continue;
        }
        cur[i] = u;
        search(i + 1, left - sq, parity, bound, cur, out);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Gauss(i128, i128);

impl Gauss {
    fn mul(self, o: Gauss) -> Gauss {
        Gauss(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(self, o: Gauss) -> Gauss {
        Gauss(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: Gauss) -> Gauss {
        Gauss(self.0 - o.0, self.1 - o.1)
    }
}

fn column(v: &LatticeVector) -> [Gauss; 3] {
    let u = v.doubled;
    [0, 1, 2].map(|r| Gauss(u[r] as i128, u[r + 3] as i128))
}

/// `Re det⁸` in doubled coordinates, i.e. `2²⁴` times the true weight.
fn raw_weight(c1: &[Gauss; 3], c2: &[Gauss; 3], c3: &[Gauss; 3]) -> i128 {
    let minor = |a: usize, b: usize| c2[a].mul(c3[b]).sub(c2[b].mul(c3[a]));
    let det = c1[0]
        .mul(minor(1, 2))
        .sub(c1[1].mul(minor(0, 2)))
        .add(c1[2].mul(minor(0, 1)));
    let d2 = det.mul(det);
    let d4 = d2.mul(d2);
    d4.mul(d4).0
}

/// `Re det(Q·(v₁, v₂, v₃))⁸`.
pub fn spherical_weight(v1: &LatticeVector, v2: &LatticeVector, v3: &LatticeVector) -> ExactRational {
    let w = raw_weight(&column(v1), &column(v2), &column(v3));
    ExactRational::from_integer(BigInt::from(w)) * pow_rat(&int(2), -24)
}

/// Gram matrix `(⟨vᵢ, vⱼ⟩)` of a triple; the coefficient index is half of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GramTarget {
    pub gram: [[i64; 3]; 3],
}

/// How entries of a Gram string are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GramMode {
    /// Integer entries `⟨vᵢ, vⱼ⟩`.
    #[default]
    Doubled,
    /// Entries of the half-integral index matrix `N`; the Gram matrix is `2N`.
    Halves,
}

impl GramTarget {
    pub fn parse(s: &str, mode: GramMode) -> Result<Self, ThetaError> {
        let bad = || ThetaError::Parse(s.to_string());
        let rows: Vec<&str> = s.trim().split(';').collect();
        if rows.len() != 3 {
            return Err(bad());
        }
        let mut gram = [[0i64; 3]; 3];
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 3 {
                return Err(bad());
            }
            for (j, cell) in cells.iter().enumerate() {
                let q = parse_rational(cell).map_err(|_| bad())?;
                let q = match mode {
                    GramMode::Doubled => q,
                    GramMode::Halves => q * int(2),
                };
                if !q.is_integer() {
                    return Err(bad());
                }
                gram[i][j] = i64::try_from(q.to_integer()).map_err(|_| bad())?;
            }
        }
        let t = Self { gram };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), ThetaError> {
        let g = &self.gram;
        for i in 0..3 {
            for j in 0..3 {
                if g[i][j] != g[j][i] {
                    return Err(ThetaError::NotSymmetric);
                }
            }
            if g[i][i] <= 0 || g[i][i] % 2 != 0 {
                return Err(ThetaError::BadDiagonal(g[i][i].to_string()));
            }
        }
        Ok(())
    }

    /// Nonnegative determinant and principal minors.
    pub fn is_positive_semidefinite(&self) -> bool {
        let g = &self.gram;
        let m2 = |a: usize, b: usize| g[a][a] * g[b][b] - g[a][b] * g[a][b];
        let det = g[0][0] * m2(1, 2) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        m2(0, 1) >= 0 && m2(0, 2) >= 0 && m2(1, 2) >= 0 && det >= 0
    }

    pub fn permuted(&self, p: [usize; 3]) -> Self {
        let mut gram = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                gram[i][j] = self.gram[p[i]][p[j]];
            }
        }
        Self { gram }
    }
}

impl FromStr for GramTarget {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, GramMode::Doubled)
    }
}

impl fmt::Display for GramTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.gram;
        let rows: Vec<String> = g
            .iter()
            .map(|r| format!("{},{},{}", r[0], r[1], r[2]))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ThetaOptions {
    /// Worker threads; `None` uses every core.
    pub threads: Option<usize>,
    pub budget: Option<Duration>,
}

/// `Σ Re det(Q·(v₁,v₂,v₃))⁸` over ordered triples with Gram matrix `target`.
pub fn fourier_coefficient(target: &GramTarget, opts: ThetaOptions) -> Result<ExactRational, ThetaError> {
    target.validate()?;
    if !target.is_positive_semidefinite() {
        return Ok(ExactRational::from_integer(BigInt::from(0)));
    }
    let g = target.gram;
    for i in 0..3 {
        if g[i][i] > NORM_CAP {
            return Err(ThetaError::Cap { norm: g[i][i], cap: NORM_CAP });
        }
    }
    let lists = [
        enumerate_vectors(g[0][0])?,
        enumerate_vectors(g[1][1])?,
        enumerate_vectors(g[2][2])?,
    ];
    let cols: [Vec<[Gauss; 3]>; 3] = [0, 1, 2].map(|i| lists[i].iter().map(column).collect());
    let (d12, d13, d23) = ((4 * g[0][1]) as i32, (4 * g[0][2]) as i32, (4 * g[1][2]) as i32);
    let start = Instant::now();
    let expired = AtomicBool::new(false);

    // (v₁, v₂, v₃) ↦ (−v₁, −v₂, −v₃) keeps the Gram matrix and det⁸, so
    // only half of the first vectors are visited.
    let firsts: Vec<usize> = (0..lists[0].len()).filter(|&i| lists[0][i].is_positive()).collect();
    let work = |&i: &usize| -> i128 {
        if expired.load(Ordering::Relaxed) {
            return 0;
        }
        if let Some(b) = opts.budget {
            if start.elapsed() > b {
                expired.store(true, Ordering::Relaxed);
                return 0;
            }
        }
        let v1 = &lists[0][i];
        let second: Vec<usize> = (0..lists[1].len()).filter(|&j| v1.dot4(&lists[1][j]) == d12).collect();
        let third: Vec<usize> = (0..lists[2].len()).filter(|&j| v1.dot4(&lists[2][j]) == d13).collect();
        let mut acc = 0i128;
        for &j in &second {
            let v2 = &lists[1][j];
            for &l in &third {
                if v2.dot4(&lists[2][l]) == d23 {
                    acc += raw_weight(&cols[0][i], &cols[1][j], &cols[2][l]);
                }
            }
        }
        acc
    };
    let run = || -> i128 { firsts.par_iter().map(work).sum() };
    let total = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ThetaError::Pool(e.to_string()))?
            .install(run),
        None => run(),
    };
    if expired.load(Ordering::Relaxed) {
        return Err(ThetaError::Budget(opts.budget.unwrap_or_default()));
    }
    Ok(ExactRational::from_integer(BigInt::from(2 * total)) * pow_rat(&int(2), -24))
}

/// The raw coefficient divided by the one at `[[2,1,1],[1,2,1],[1,1,2]]`.
pub fn normalized_coefficient(target: &GramTarget, opts: ThetaOptions) -> Result<ExactRational, ThetaError> {
    let base: GramTarget = "2,1,1;1,2,1;1,1,2".parse()?;
    let b = fourier_coefficient(&base, opts)?;
    Ok(fourier_coefficient(target, opts)? / b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_sizes() {
        assert_eq!(enumerate_vectors(2).unwrap().len(), 240);
        assert_eq!(enumerate_vectors(4).unwrap().len(), 2160);
        assert_eq!(enumerate_vectors(3).unwrap().len(), 0);
        assert!(enumerate_vectors(10).is_err());
        let v = enumerate_vectors(2).unwrap();
        assert!(v.iter().all(|x| v.binary_search(&x.neg()).is_ok()));
    }

    #[test]
    fn membership() {
        assert!(LatticeVector::new([1; 8]).is_some());
        assert!(LatticeVector::new([1, 1, 1, 1, 1, 1, 1, -1]).is_none());
        assert!(LatticeVector::new([2, 0, 0, 0, 0, 0, 0, 0]).is_none());
    }

    #[test]
    fn weight_examples() {
        let v = |x: [i8; 8]| LatticeVector { doubled: x.map(|u| 2 * u) };
        let a = v([1, 1, 0, 0, 0, 0, 0, 0]);
        let b = v([1, 0, 1, 0, 0, 0, 0, 0]);
        let c = v([0, 1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(spherical_weight(&a, &b, &c), int(256));
        assert_eq!(spherical_weight(&a, &a, &c), int(0));
        let c2 = v([0, 1, 1, 0, 0, 0, 1, -1]);
        assert_eq!(spherical_weight(&a, &b, &c2), int(256));
    }

    #[test]
    fn parse_modes() {
        let t = GramTarget::parse("1,1/2,1/2;1/2,1,1/2;1/2,1/2,1", GramMode::Halves).unwrap();
        assert_eq!(t, "2,1,1;1,2,1;1,1,2".parse().unwrap());
        assert_eq!(t.to_string(), "2,1,1;1,2,1;1,1,2");
        assert!("2,1,1;0,2,1;1,1,2".parse::<GramTarget>().is_err());
        assert!("3,0,0;0,2,0;0,0,2".parse::<GramTarget>().is_err());
        assert!("2,0;0,2".parse::<GramTarget>().is_err());
    }

    #[test]
    fn indefinite_target_is_zero() {
        let t: GramTarget = "2,2,0;2,2,2;0,2,2".parse().unwrap();
        assert!(!t.is_positive_semidefinite());
        assert_eq!(fourier_coefficient(&t, ThetaOptions::default()).unwrap(), int(0));
    }

    #[test]
    fn identity_target_ratio() {
        let t: GramTarget = "2,0,0;0,2,0;0,0,2".parse().unwrap();
        assert_eq!(normalized_coefficient(&t, ThetaOptions::default()).unwrap(), int(164));
    }
}
