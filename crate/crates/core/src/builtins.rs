//! Standard representatives of the stable-form orbits, and the reference
//! pseudo-metrics used throughout the crate.
//!
//! Index conventions: forms on `R^6` obtained in the literature by
//! restricting 7-dimensional forms to the hyperplane spanned by
//! `e_2, ..., e_7` are stored here with indices relabelled to `1..6`.

use crate::exterior::PForm;
use crate::matrix::Matrix;
use crate::metric::PseudoMetric;
use crate::scalar::Scalar;
use crate::{Error, Result};

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

fn sqrt3_half() -> Scalar {
    Scalar::sqrt_int(3) * Scalar::ratio(1, 2)
}

/// Positive-definite `G_2` 3-form on `R^7`.
pub fn phi0() -> PForm {
    PForm::from_terms(
        7,
        3,
        &[
            (&[1, 2, 3], s(1)),
            (&[1, 4, 5], s(1)),
            (&[1, 6, 7], s(1)),
            (&[2, 4, 6], s(1)),
            (&[2, 5, 7], s(-1)),
            (&[3, 4, 7], s(-1)),
            (&[3, 5, 6], s(-1)),
        ],
    )
}

/// Split `G~_2` 3-form on `R^7`.
pub fn svphi0() -> PForm {
    PForm::from_terms(
        7,
        3,
        &[
            (&[1, 2, 3], s(1)),
            (&[1, 4, 5], s(-1)),
            (&[1, 6, 7], s(-1)),
            (&[2, 4, 6], s(1)),
            (&[2, 5, 7], s(-1)),
            (&[3, 4, 7], s(-1)),
            (&[3, 5, 6], s(-1)),
        ],
    )
}

/// `G_2` 4-form, the Hodge dual of [`phi0`] for the Euclidean metric.
pub fn psi0() -> PForm {
    PForm::from_terms(
        7,
        4,
        &[
            (&[4, 5, 6, 7], s(1)),
            (&[2, 3, 6, 7], s(1)),
            (&[2, 3, 4, 5], s(1)),
            (&[1, 3, 5, 7], s(1)),
            (&[1, 3, 4, 6], s(-1)),
            (&[1, 2, 5, 6], s(-1)),
            (&[1, 2, 4, 7], s(-1)),
        ],
    )
}

/// `G~_2` 4-form, the Hodge dual of [`svphi0`] for the split metric.
pub fn svpsi0() -> PForm {
    PForm::from_terms(
        7,
        4,
        &[
            (&[4, 5, 6, 7], s(1)),
            (&[2, 3, 6, 7], s(-1)),
            (&[2, 3, 4, 5], s(-1)),
            (&[1, 3, 5, 7], s(1)),
            (&[1, 3, 4, 6], s(-1)),
            (&[1, 2, 5, 6], s(-1)),
            (&[1, 2, 4, 7], s(-1)),
        ],
    )
}

/// Alternative split `G~_2` 3-form adapted to null-hyperplane computations.
pub fn svphi1() -> PForm {
    PForm::from_terms(
        7,
        3,
        &[
            (&[1, 4, 7], half()),
            (&[1, 5, 6], half()),
            (&[2, 3, 7], -half()),
            (&[2, 4, 6], half()),
            (&[3, 4, 5], -half()),
        ],
    )
}

/// The 4-form dual to [`svphi1`] for its induced metric.
pub fn svpsi1() -> PForm {
    let q = Scalar::ratio(1, 4);
    PForm::from_terms(
        7,
        4,
        &[
            (&[2, 3, 5, 6], q.clone()),
            (&[2, 3, 4, 7], &q * &s(2)),
            (&[1, 4, 5, 6], -(&q * &s(2))),
            (&[1, 3, 5, 7], q.clone()),
            (&[1, 2, 6, 7], -q),
        ],
    )
}

/// Standard 3-form on `R^6` with stabilizer `SL(3,R) x SL(3,R)`.
pub fn rho_plus() -> PForm {
    PForm::from_terms(6, 3, &[(&[1, 2, 3], s(1)), (&[4, 5, 6], s(1))])
}

/// Standard 3-form on `R^6` with stabilizer `SL(3,C)`:
/// the real part of `(th^1 + i th^2)(th^3 + i th^4)(th^5 + i th^6)`.
pub fn rho_minus() -> PForm {
    PForm::from_terms(
        6,
        3,
        &[
            (&[1, 3, 5], s(1)),
            (&[1, 4, 6], s(-1)),
            (&[2, 3, 6], s(-1)),
            (&[2, 4, 5], s(-1)),
        ],
    )
}

/// Standard parabolic (degenerate but maximally non-trivial) 3-form on
/// `R^6`; the restriction of `2 * svphi1` to the null hyperplane spanned by
/// `e_2, ..., e_7`, relabelled to indices `1..6`.
pub fn rho0() -> PForm {
    PForm::from_terms(
        6,
        3,
        &[(&[1, 2, 6], s(-1)), (&[1, 3, 5], s(1)), (&[2, 3, 4], s(-1))],
    )
}

/// Emproplectic standard 2-form on `R^{2k}`.
pub fn omega_plus(k: u32) -> PForm {
    assert!(k >= 1);
    let mut f = PForm::zero(2 * k, 2);
    for i in 0..k {
        f.add_term(&[2 * i + 1, 2 * i + 2], s(1));
    }
    f
}

/// Pisoplectic standard 2-form on `R^{2k}`.
pub fn omega_minus(k: u32) -> PForm {
    assert!(k >= 1);
    let mut f = PForm::zero(2 * k, 2);
    f.add_term(&[1, 2], s(-1));
    for i in 1..k {
        f.add_term(&[2 * i + 1, 2 * i + 2], s(1));
    }
    f
}

fn varpi_terms(k: u32, first_sign: i64) -> PForm {
    let n = 2 * k;
    let mut f = PForm::zero(n, n - 2);
    for omit in 0..k {
        let idx: Vec<u32> = (1..=n)
            .filter(|&j| j != 2 * omit + 1 && j != 2 * omit + 2)
            .collect();
        let sign = if omit == 0 { first_sign } else { 1 };
        f.add_term(&idx, s(sign));
    }
    f
}

/// Osemproplectic standard `(2k-2)`-form: `omega_plus(k)^(k-1)/(k-1)!`.
pub fn varpi_plus(k: u32) -> PForm {
    assert!(k >= 2);
    varpi_terms(k, 1)
}

/// Ospisoplectic standard `(2k-2)`-form: `-omega_minus(k)^(k-1)/(k-1)!`.
pub fn varpi_minus(k: u32) -> PForm {
    assert!(k >= 2);
    varpi_terms(k, -1)
}

/// Pseudoplectic standard 2-form on `R^{2k+1}`.
pub fn mu0(k: u32) -> PForm {
    assert!(k >= 1);
    let mut f = PForm::zero(2 * k + 1, 2);
    for i in 1..=k {
        f.add_term(&[2 * i, 2 * i + 1], s(1));
    }
    f
}

/// Ospseudoplectic standard `(2k-1)`-form `th^1 ∧ varpi_plus(k)` on
/// `R^{2k+1}`, with the osemproplectic factor on `e_2, ..., e_{2k+1}`.
pub fn xi0(k: u32) -> PForm {
    assert!(k >= 2);
    let vpi = varpi_plus(k).shift_embed(2 * k + 1, 1);
    let th1 = PForm::basis(2 * k + 1, &[1]);
    th1.wedge(&vpi).expect("dimensions agree")
}

/// 3-form on `R^8` with stabilizer `PSU(3)`.
pub fn zeta_c() -> PForm {
    PForm::from_terms(
        8,
        3,
        &[
            (&[1, 2, 3], s(1)),
            (&[1, 4, 7], half()),
            (&[1, 5, 6], -half()),
            (&[2, 4, 6], half()),
            (&[2, 5, 7], half()),
            (&[3, 4, 5], half()),
            (&[3, 6, 7], -half()),
            (&[4, 5, 8], sqrt3_half()),
            (&[6, 7, 8], sqrt3_half()),
        ],
    )
}

/// 3-form on `R^8` with stabilizer `SL(3,R)`.
pub fn zeta_s() -> PForm {
    PForm::from_terms(
        8,
        3,
        &[
            (&[1, 4, 7], sqrt3_half()),
            (&[1, 5, 6], -sqrt3_half()),
            (&[2, 3, 8], s(1)),
            (&[2, 4, 6], half()),
            (&[2, 5, 7], -half()),
            (&[3, 4, 7], half()),
            (&[3, 5, 6], half()),
            (&[4, 5, 8], half()),
            (&[6, 7, 8], -half()),
        ],
    )
}

/// 3-form on `R^8` with stabilizer `PSU(1,2)`.
pub fn zeta_n() -> PForm {
    PForm::from_terms(
        8,
        3,
        &[
            (&[1, 2, 3], s(-1)),
            (&[1, 5, 6], -half()),
            (&[1, 7, 8], -half()),
            (&[2, 5, 7], half()),
            (&[2, 6, 8], -half()),
            (&[3, 5, 8], -half()),
            (&[3, 6, 7], -half()),
            (&[4, 5, 8], -sqrt3_half()),
            (&[4, 6, 7], sqrt3_half()),
        ],
    )
}

/// 5-form on `R^8` with stabilizer `PSU(3)`.
pub fn eta_c() -> PForm {
    PForm::from_terms(
        8,
        5,
        &[
            (&[1, 2, 3, 4, 5], -sqrt3_half()),
            (&[1, 2, 3, 6, 7], -sqrt3_half()),
            (&[1, 2, 4, 5, 8], -half()),
            (&[1, 2, 6, 7, 8], half()),
            (&[1, 3, 4, 6, 8], half()),
            (&[1, 3, 5, 7, 8], half()),
            (&[2, 3, 4, 7, 8], -half()),
            (&[2, 3, 5, 6, 8], half()),
            (&[4, 5, 6, 7, 8], s(1)),
        ],
    )
}

/// 5-form on `R^8` with stabilizer `SL(3,R)`.
pub fn eta_s() -> PForm {
    PForm::from_terms(
        8,
        5,
        &[
            (&[1, 2, 3, 4, 5], half()),
            (&[1, 2, 3, 6, 7], -half()),
            (&[1, 2, 4, 7, 8], half()),
            (&[1, 2, 5, 6, 8], half()),
            (&[1, 3, 4, 6, 8], -half()),
            (&[1, 3, 5, 7, 8], half()),
            (&[1, 4, 5, 6, 7], s(-1)),
            (&[2, 3, 4, 7, 8], -sqrt3_half()),
            (&[2, 3, 5, 6, 8], sqrt3_half()),
        ],
    )
}

/// 5-form on `R^8` with stabilizer `PSU(1,2)`.
pub fn eta_n() -> PForm {
    PForm::from_terms(
        8,
        5,
        &[
            (&[1, 2, 3, 5, 8], -sqrt3_half()),
            (&[1, 2, 3, 6, 7], sqrt3_half()),
            (&[1, 2, 4, 5, 8], -half()),
            (&[1, 2, 4, 6, 7], -half()),
            (&[1, 3, 4, 5, 7], -half()),
            (&[1, 3, 4, 6, 8], half()),
            (&[2, 3, 4, 5, 6], -half()),
            (&[2, 3, 4, 7, 8], -half()),
            (&[4, 5, 6, 7, 8], s(-1)),
        ],
    )
}

/// Euclidean metric on `R^7` with the standard volume form.
pub fn g0() -> PseudoMetric {
    PseudoMetric::new(Matrix::identity(7), standard_volume(7)).expect("non-degenerate")
}

/// Split metric of signature (3,4) on `R^7`.
pub fn gtilde0() -> PseudoMetric {
    PseudoMetric::new(Matrix::diag(&[1, 1, 1, -1, -1, -1, -1]), standard_volume(7))
        .expect("non-degenerate")
}

/// The metric induced by [`svphi1`], with its volume form `th^{1..7}/8`.
pub fn gtilde1() -> PseudoMetric {
    let mut m = Matrix::zero(7, 7);
    m.set(0, 6, -half());
    m.set(6, 0, -half());
    m.set(1, 5, half());
    m.set(5, 1, half());
    m.set(2, 4, -half());
    m.set(4, 2, -half());
    m.set(3, 3, s(-1));
    PseudoMetric::new(m, standard_volume(7).scale(&Scalar::ratio(1, 8))).expect("non-degenerate")
}

/// `th^{1..n}`.
pub fn standard_volume(n: u32) -> PForm {
    let idx: Vec<u32> = (1..=n).collect();
    PForm::basis(n, &idx)
}

/// Look up a built-in form by name.  Parameterized families require `k`.
pub fn builtin(name: &str, k: Option<u32>) -> Result<PForm> {
    let need_k = || k.ok_or_else(|| Error::invalid(format!("builtin {name:?} requires --k")));
    match name {
        "phi0" => Ok(phi0()),
        "svphi0" | "phitilde0" => Ok(svphi0()),
        "psi0" => Ok(psi0()),
        "svpsi0" | "psitilde0" => Ok(svpsi0()),
        "svphi1" | "phitilde1" => Ok(svphi1()),
        "svpsi1" | "psitilde1" => Ok(svpsi1()),
        "rho+" | "rho_plus" => Ok(rho_plus()),
        "rho-" | "rho_minus" => Ok(rho_minus()),
        "rho0" => Ok(rho0()),
        "omega+" | "omega_plus" => Ok(omega_plus(need_k()?)),
        "omega-" | "omega_minus" => Ok(omega_minus(need_k()?)),
        "varpi+" | "varpi_plus" => Ok(varpi_plus(need_k()?)),
        "varpi-" | "varpi_minus" => Ok(varpi_minus(need_k()?)),
        "mu0" => Ok(mu0(need_k()?)),
        "xi0" => Ok(xi0(need_k()?)),
        "zeta_c" => Ok(zeta_c()),
        "zeta_s" => Ok(zeta_s()),
        "zeta_n" => Ok(zeta_n()),
        "eta_c" => Ok(eta_c()),
        "eta_s" => Ok(eta_s()),
        "eta_n" => Ok(eta_n()),
        "zero" => Ok(PForm::zero(need_k()?, 0)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Names accepted by [`builtin`], for help output.
pub const BUILTIN_NAMES: &[&str] = &[
    "phi0", "svphi0", "psi0", "svpsi0", "svphi1", "svpsi1", "rho+", "rho-", "rho0", "omega+",
    "omega-", "varpi+", "varpi-", "mu0", "xi0", "zeta_c", "zeta_s", "zeta_n", "eta_c", "eta_s",
    "eta_n",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi0_matches_listed_expansion() {
        // xi0(2) = th^1 ∧ (th^23 + th^45) on R^5
        let xi = xi0(2);
        let expect = PForm::from_terms(5, 3, &[(&[1, 2, 3], s(1)), (&[1, 4, 5], s(1))]);
        assert_eq!(xi, expect);
    }

    #[test]
    fn varpi_is_power_of_omega() {
        for k in [2u32, 3, 4] {
            let fact: i64 = (1..=(k as i64 - 1)).product();
            let plus = omega_plus(k)
                .wedge_power(k - 1)
                .unwrap()
                .scale(&Scalar::ratio(1, fact));
            assert_eq!(plus, varpi_plus(k));
            let minus = omega_minus(k)
                .wedge_power(k - 1)
                .unwrap()
                .scale(&Scalar::ratio(-1, fact));
            assert_eq!(minus, varpi_minus(k));
        }
    }

    #[test]
    fn builtin_lookup() {
        assert!(builtin("phi0", None).is_ok());
        assert!(builtin("omega+", None).is_err());
        assert!(builtin("omega+", Some(3)).is_ok());
        assert!(builtin("nonsense", None).is_err());
        assert_eq!(builtin("zeta_s", None).unwrap().discriminant(), Some(3));
    }
}
