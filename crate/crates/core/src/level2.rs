//! Weight-20 cusp forms on Γ₀(2).
//!
//! The 4-dimensional space is spanned by `(η(z)η(2z))⁸·M₁₂(Γ₀(2))`; the two
//! newforms are the U₂-eigenvectors for ∓2⁹.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{int, ExactError, ExactRational, PiExact};
use crate::linalg::{LinalgError, Matrix};
use crate::qexp::{delta, eisenstein, eta_series, g20, QExpError, QExpansion};

pub const WEIGHT: i64 = 20;
pub const LEVEL: u64 = 2;
/// `2^{(k−2)/2}`: the U₂ eigenvalue magnitude of a weight-20 level-2 newform.
pub const NEWFORM_EIGENVALUE: i64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Level2Error {
    #[error("spanning set has rank {0}, expected 4")]
    RankDeficient(usize),
    #[error("eigenvalue {eigenvalue}: null space has dimension {dim}, expected 1")]
    EigenSolve { eigenvalue: i64, dim: usize },
    #[error("U₂ image is not in the span of the basis")]
    NotInSpan,
    #[error("precision {got} too low (need at least {need})")]
    PrecisionTooLow { got: usize, need: usize },
    #[error(transparent)]
    QExp(#[from] QExpError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `(η(z)η(2z))⁸ = q·Π(1−qⁿ)⁸(1−q²ⁿ)⁸`, weight 8 on Γ₀(2).
pub fn eta_product(precision: usize) -> QExpansion {
    let e = eta_series(precision);
    let e2 = e.v_operator(2).expect("m ≥ 1").truncate(precision).expect("V₂ grows precision");
    let core = e.mul(&e2).pow(8);
    core.shift_up(1)
        .truncate(precision)
        .expect("shift grows precision")
        .with_weight_level(8, LEVEL)
}

/// `(η(z)η(2z))⁸ · {E₄(z)³, E₄(2z)³, Δ(z), Δ(2z)}`.
pub fn spanning_set(precision: usize) -> Result<Vec<QExpansion>, Level2Error> {
    if precision < 16 {
        return Err(Level2Error::PrecisionTooLow {
            got: precision,
            need: 16,
        });
    }
    let eta8 = eta_product(precision);
    let e4 = eisenstein(4, precision)?;
    let e4_2 = e4.v_operator(2)?.truncate(precision)?;
    let d = delta(precision);
    let d2 = d.v_operator(2)?.truncate(precision)?;
    let forms: Vec<QExpansion> = [e4.pow(3), e4_2.pow(3), d, d2]
        .iter()
        .map(|m| eta8.mul(m).with_weight_level(WEIGHT, LEVEL))
        .collect();
    let rank = coefficient_rows(&forms, 1, 8).rank();
    if rank != 4 {
        return Err(Level2Error::RankDeficient(rank));
    }
    Ok(forms)
}

/// Rows `(a(from), …, a(to))`, one per form.
fn coefficient_rows(forms: &[QExpansion], from: usize, to: usize) -> Matrix {
    Matrix::from_rows(
        forms
            .iter()
            .map(|f| f.coeffs()[from..=to].to_vec())
            .collect(),
    )
    .expect("equal lengths")
}

/// Coordinates of `target` in the span of `forms`, checked on every
/// coefficient both share.
fn coordinates(forms: &[QExpansion], target: &QExpansion) -> Result<Vec<ExactRational>, Level2Error> {
    let n = target.precision().min(forms[0].precision()) - 1;
    let s = coefficient_rows(forms, 1, n);
    // solve xᵀ S = t on the pivot columns of S, then check the rest
    let st = s.transpose();
    let (_, col_pivots) = s.rref();
    let sub = Matrix::from_rows(
        col_pivots
            .iter()
            .map(|&c| (0..forms.len()).map(|j| st.get(c, j).clone()).collect())
            .collect(),
    )?;
    let rhs: Vec<ExactRational> = col_pivots
        .iter()
        .map(|&c| target.coeffs()[c + 1].clone())
        .collect();
    let x = sub.solve(&rhs)?;
    let back = st.mul_vec(&x)?;
    if target.coeff(0)?.is_zero() && back[..] == target.coeffs()[1..=n] {
        Ok(x)
    } else {
        Err(Level2Error::NotInSpan)
    }
}

fn combine(forms: &[QExpansion], x: &[ExactRational]) -> QExpansion {
    let mut acc = QExpansion::zero(WEIGHT, LEVEL, forms[0].precision());
    for (f, c) in forms.iter().zip(x) {
        acc = &acc + &f.scale(c);
    }
    acc
}

/// Matrix `T` with `U₂ f_i = Σ_j T[i][j] f_j` on the spanning set.
pub fn u2_matrix(forms: &[QExpansion]) -> Result<Matrix, Level2Error> {
    let rows = forms
        .iter()
        .map(|f| coordinates(forms, &f.u_operator(2)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

/// The normalized newforms `(h⁽¹⁾, h⁽²⁾)` with U₂-eigenvalues −512 and +512.
pub fn newforms(precision: usize) -> Result<(QExpansion, QExpansion), Level2Error> {
    if precision < 8 {
        return Err(Level2Error::PrecisionTooLow {
            got: precision,
            need: 8,
        });
    }
    let forms = spanning_set((2 * precision).max(16))?;
    let t = u2_matrix(&forms)?;
    let tt = t.transpose();
    let mut out = Vec::new();
    for lambda in [-NEWFORM_EIGENVALUE, NEWFORM_EIGENVALUE] {
        let shifted = tt.sub(&Matrix::identity(4).scale(&int(lambda)))?;
        let ns = shifted.nullspace();
        if ns.len() != 1 {
            return Err(Level2Error::EigenSolve {
                eigenvalue: lambda,
                dim: ns.len(),
            });
        }
        let h = combine(&forms, &ns[0]);
        let a1 = h.coeff(1)?.clone();
        if a1.is_zero() {
            return Err(Level2Error::EigenSolve {
                eigenvalue: lambda,
                dim: 0,
            });
        }
        out.push(h.scale(&a1.recip()).truncate(precision)?);
    }
    let h2 = out.pop().expect("two eigenforms");
    let h1 = out.pop().expect("two eigenforms");
    Ok((h1, h2))
}

/// The basis `{g₂₀(z), g₂₀(2z), h⁽¹⁾, h⁽²⁾}` and its coefficient system.
#[derive(Clone, Debug)]
pub struct FormBasis {
    pub forms: [QExpansion; 4],
    pub labels: [&'static str; 4],
    /// Entry `(m−1, j)` is `a(m)` of form `j`, so `A = M·K`.
    pub coefficient_matrix: Matrix,
    inverse: Matrix,
}

impl FormBasis {
    pub fn build(precision: usize) -> Result<Self, Level2Error> {
        let g = g20(precision);
        let g2 = g.v_operator(2)?.truncate(precision)?;
        let (h1, h2) = newforms(precision)?;
        let forms = [g, g2, h1, h2];
        let coefficient_matrix = coefficient_rows(&forms, 1, 4).transpose();
        let inverse = coefficient_matrix.inverse()?;
        Ok(Self {
            forms,
            labels: ["g20(z)", "g20(2z)", "h1", "h2"],
            coefficient_matrix,
            inverse,
        })
    }

    /// Shared instance at precision 32.
    pub fn standard() -> &'static FormBasis {
        static BASIS: OnceLock<FormBasis> = OnceLock::new();
        BASIS.get_or_init(|| FormBasis::build(32).expect("level-2 basis construction"))
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    /// Solves `A_m = Σ_j K_j a_j(m)`, `m = 1..4`.
    pub fn solve(&self, a: &[PiExact; 4]) -> Result<[PiExact; 4], Level2Error> {
        let exp = common_exponent(a)?;
        let coeffs: Vec<ExactRational> = a.iter().map(|x| x.coeff.clone()).collect();
        let k = self.inverse.mul_vec(&coeffs)?;
        Ok(std::array::from_fn(|i| PiExact::new(k[i].clone(), exp)))
    }
}

fn common_exponent(a: &[PiExact]) -> Result<i64, ExactError> {
    let mut exp: Option<i64> = None;
    for x in a.iter().filter(|x| !x.is_zero()) {
        match exp {
            None => exp = Some(x.half_pi_exp),
            Some(e) if e != x.half_pi_exp => {
                return Err(ExactError::ExponentMismatch(e, x.half_pi_exp))
            }
            _ => {}
        }
    }
    Ok(exp.unwrap_or(0))
}

pub fn solve_projection_coefficients(a: &[PiExact; 4]) -> Result<[PiExact; 4], Level2Error> {
    FormBasis::standard().solve(a)
}

/// Whether `f` lies in the span of `forms` (exact elimination on all shared
/// coefficients).
pub fn in_span(forms: &[QExpansion], f: &QExpansion) -> bool {
    coordinates(forms, f).is_ok()
}

#[doc(hidden)]
pub fn one_hot(i: usize) -> [PiExact; 4] {
    std::array::from_fn(|j| {
        if i == j {
            PiExact::rational(ExactRational::one())
        } else {
            PiExact::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::poly_eval;
    use num_bigint::BigInt;

    fn ints(f: &QExpansion, upto: usize) -> Vec<i64> {
        f.coeffs()[..=upto]
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.numer().clone()).unwrap()
            })
            .collect()
    }

    #[test]
    fn eta_product_leading() {
        let e = eta_product(20);
        assert_eq!(e.valuation(), Some(1));
        assert_eq!(e.coeff(1).unwrap(), &int(1));
        assert_eq!(e.coeff(2).unwrap(), &int(-8));
    }

    #[test]
    fn spanning_set_is_cuspidal_and_full_rank() {
        let s = spanning_set(16).unwrap();
        assert!(s.iter().all(QExpansion::is_cuspidal_at_infinity));
        assert_eq!(coefficient_rows(&s, 1, 8).rank(), 4);
        assert_eq!(
            spanning_set(10).unwrap_err(),
            Level2Error::PrecisionTooLow { got: 10, need: 16 }
        );
    }

    #[test]
    fn newform_coefficients() {
        let (h1, h2) = newforms(8).unwrap();
        assert_eq!(
            ints(&h1, 5),
            vec![0, 1, -512, -13092, 262144, 6546750]
        );
        assert_eq!(
            ints(&h2, 5),
            vec![0, 1, 512, -53028, 262144, -5556930]
        );
        for h in [&h1, &h2] {
            assert!(h.coeffs().iter().all(|c| c.is_integer()));
            assert_eq!(h.coeff(4).unwrap(), &(h.coeff(2).unwrap() * h.coeff(2).unwrap()));
        }
    }

    #[test]
    fn u2_char_poly_has_newform_roots() {
        let s = spanning_set(32).unwrap();
        let cp = u2_matrix(&s).unwrap().char_poly().unwrap();
        assert!(poly_eval(&cp, &int(512)).is_zero());
        assert!(poly_eval(&cp, &int(-512)).is_zero());
        // old part: x² − 456x + 2¹⁹
        let old = [int(1 << 19), int(-456), int(1)];
        let quotient_check = poly_eval(&cp, &int(3)) / poly_eval(&old, &int(3));
        assert_eq!(quotient_check, int((3 - 512) * (3 + 512)));
    }

    #[test]
    fn bases_span_the_same_space() {
        let s = spanning_set(24).unwrap();
        let b = FormBasis::build(24).unwrap();
        for f in &b.forms {
            assert!(in_span(&s, f));
        }
        for f in &s {
            assert!(in_span(&b.forms, f));
        }
    }

    #[test]
    fn inverse_row_one() {
        let b = FormBasis::standard();
        let d = BigInt::from(22947840);
        let row: Vec<ExactRational> = [8432992, 5928, 152, -13]
            .iter()
            .map(|&n| ExactRational::new(BigInt::from(n), d.clone()))
            .collect();
        assert_eq!(b.inverse().row(0), &row[..]);
    }

    #[test]
    fn solve_first_column() {
        let a = [1, 456, 50652, -316352].map(|n| PiExact::rational(int(n)));
        let k = solve_projection_coefficients(&a).unwrap();
        assert_eq!(k, one_hot(0));
        let mixed = [PiExact::new(int(1), 2), PiExact::new(int(1), 4), PiExact::zero(), PiExact::zero()];
        assert!(matches!(
            solve_projection_coefficients(&mixed),
            Err(Level2Error::Exact(ExactError::ExponentMismatch(2, 4)))
        ));
    }
}
