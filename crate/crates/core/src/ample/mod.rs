//! Extension membership oracles, signature characterizations and convex
//! hull certificates.
//!
//! For a target orbit family on `R^n` and a p-form `tau` on `R^{n-1}`, the
//! set of interest is the set of `(p-1)`-forms `nu` with `th^1 ∧ nu + tau`
//! in the target orbit.  [`membership`] decides this by direct
//! classification; for the three 6-dimensional restriction types there are
//! exact symmetric-bilinear characterizations ([`timelike_form`],
//! [`spacelike_form`], [`null_form`] and [`characterize`]) which the test
//! suite checks against the oracle sample by sample.

mod hull;
mod witness;

pub use hull::{zero_in_hull, HullCertificate};
pub use witness::{
    scaling_automorphism, scaling_root, verify_witness, WitnessCase, WitnessCheck, WitnessReport,
};

use crate::builtins;
use crate::exterior::PForm;
use crate::matrix::Matrix;
use crate::orbit::{classify, classify_three_form_6d, Certificate, Family, SymBilinear};
use crate::scalar::Scalar;
use crate::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Assemble `th^1 ∧ nu + tau` on `R ⊕ R^{n-1}`.
pub fn assemble(tau: &PForm, nu: &PForm) -> Result<PForm> {
    if tau.n() != nu.n() {
        return Err(Error::DimensionMismatch(tau.n(), nu.n()));
    }
    if nu.degree() + 1 != tau.degree() {
        return Err(Error::DegreeMismatch {
            expected: tau.degree() - 1,
            got: nu.degree(),
        });
    }
    let n = tau.n() + 1;
    let th1 = PForm::basis(n, &[1]);
    let lifted_nu = nu.shift_embed(n, 1);
    let lifted_tau = tau.shift_embed(n, 1);
    Ok(&th1.wedge(&lifted_nu)? + &lifted_tau)
}

/// Does `th^1 ∧ nu + tau` lie in the `family` orbit?
pub fn membership(family: Family, tau: &PForm, nu: &PForm) -> Result<bool> {
    let sigma = assemble(tau, nu)?;
    Ok(classify(&sigma)?.family == family)
}

/// A symmetric bilinear form carried exactly, possibly up to division by a
/// positive square root (which never changes signs or signatures).
#[derive(Clone, Debug)]
pub struct ScaledBilinear {
    /// The exactly computed matrix.
    pub sym: SymBilinear,
    /// When present, the true bilinear form is `sym / sqrt(square)` with
    /// `square > 0` the listed rational.
    pub sqrt_scale: Option<Scalar>,
}

impl ScaledBilinear {
    pub fn signature(&self) -> (usize, usize, usize) {
        self.sym.signature()
    }
}

fn symmetrize_action(k: &Matrix, omega: &PForm) -> Result<Matrix> {
    let n = k.rows();
    let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        basis.push(e);
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| k.mul_vec(&basis[i])).collect();
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            // omega(K e_i, e_j) + omega(K e_j, e_i)
            let a = omega.eval(&[&images[i], &basis[j]]);
            let b = omega.eval(&[&images[j], &basis[i]]);
            let v = (a + b) * Scalar::ratio(1, 2);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    Ok(m)
}

fn require_6d_2form(omega: &PForm) -> Result<()> {
    if omega.n() != 6 || omega.degree() != 2 {
        return Err(Error::invalid("expected a 2-form on R^6"));
    }
    Ok(())
}

/// The symmetric form `(a,b) -> [omega(I a, b) + omega(I b, a)]/2` of a
/// para-complex structure certificate.  When `vol = sqrt(Lambda)` is not
/// rational the matrix is computed from `K = vol * I` instead and the
/// positive square `Lambda` is reported in `sqrt_scale`.
pub fn timelike_form(rho: &PForm, omega: &PForm) -> Result<ScaledBilinear> {
    require_6d_2form(omega)?;
    let label = classify_three_form_6d(rho)?;
    let Certificate::Sl3R {
        lambda,
        hitchin,
        vol,
        ..
    } = &label.certificate
    else {
        return Err(Error::invalid(
            "timelike characterization needs an SL3R form",
        ));
    };
    let m = symmetrize_action(hitchin, omega)?;
    match vol {
        Some(v) => Ok(ScaledBilinear {
            sym: SymBilinear::new(m.scale(&v.inv()))?,
            sqrt_scale: None,
        }),
        None => Ok(ScaledBilinear {
            sym: SymBilinear::new(m)?,
            sqrt_scale: Some(lambda.clone()),
        }),
    }
}

/// The symmetric form `(a,b) -> -[omega(J a, b) + omega(J b, a)]/2` of a
/// complex structure certificate, `J = -K/(2 vol)`.
pub fn spacelike_form(rho: &PForm, omega: &PForm) -> Result<ScaledBilinear> {
    require_6d_2form(omega)?;
    let label = classify_three_form_6d(rho)?;
    let Certificate::Sl3C {
        lambda,
        hitchin,
        vol,
    } = &label.certificate
    else {
        return Err(Error::invalid(
            "spacelike characterization needs an SL3C form",
        ));
    };
    let m = symmetrize_action(hitchin, omega)?;
    match vol {
        Some(v) => {
            // -[omega(J.,.)]_sym = +[omega(K.,.)]_sym / (2 vol)
            let scale = (Scalar::from_int(2) * v).inv();
            Ok(ScaledBilinear {
                sym: SymBilinear::new(m.scale(&scale))?,
                sqrt_scale: None,
            })
        }
        None => Ok(ScaledBilinear {
            sym: SymBilinear::new(m)?,
            sqrt_scale: Some(-lambda),
        }),
    }
}

/// The symmetric form of the standard parabolic 3-form [`builtins::rho0`]
/// relative to a chosen volume `vol = c * th^{1..6}`: the nilpotent frame
/// map is `H = K/(2c)`, normalized so that the standard volume gives the
/// index shift `e_1 -> e_4, e_2 -> e_5, e_3 -> e_6`.
pub fn null_form(rho: &PForm, vol: &PForm, omega: &PForm) -> Result<ScaledBilinear> {
    require_6d_2form(omega)?;
    if rho != &builtins::rho0() {
        return Err(Error::invalid(
            "null characterization is defined for the standard parabolic form",
        ));
    }
    if vol.n() != 6 || vol.degree() != 6 {
        return Err(Error::invalid("volume must be a 6-form on R^6"));
    }
    let c = vol.top_coefficient();
    if c.is_zero() {
        return Err(Error::degenerate("volume form is zero"));
    }
    let label = classify_three_form_6d(rho)?;
    let Certificate::Parabolic { hitchin, .. } = &label.certificate else {
        return Err(Error::invalid("expected the parabolic certificate"));
    };
    let h = hitchin.scale(&(Scalar::from_int(2) * &c).inv());
    let m = symmetrize_action(&h, omega)?;
    Ok(ScaledBilinear {
        sym: SymBilinear::new(m)?,
        sqrt_scale: None,
    })
}

/// The nilpotent frame map `H` of [`null_form`] for a given volume.
pub fn null_frame_map(vol: &PForm) -> Result<Matrix> {
    let c = vol.top_coefficient();
    if c.is_zero() {
        return Err(Error::degenerate("volume form is zero"));
    }
    let label = classify_three_form_6d(&builtins::rho0())?;
    let Certificate::Parabolic { hitchin, .. } = &label.certificate else {
        unreachable!("rho0 is parabolic");
    };
    Ok(hitchin.scale(&(Scalar::from_int(2) * &c).inv()))
}

/// The three restriction types of split 7-dimensional forms to
/// hyperplanes, as seen from the 6-dimensional side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SixDKind {
    Timelike,
    Spacelike,
    Null,
}

/// The component of a 2-form on which the symmetrized para-complex action
/// is faithful: `omega_mixed = (omega - K^* omega / Lambda) / 2`, with
/// `K^* omega(u,v) = omega(Ku, Kv)`.  The extension set over an SL3R form
/// is a product along the complementary directions (they are realized by
/// contractions of `rho`), so membership only sees this part.
pub fn mixed_two_form_part(hitchin: &Matrix, lambda: &Scalar, omega: &PForm) -> Result<PForm> {
    require_6d_2form(omega)?;
    let n = 6usize;
    let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        basis.push(e);
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| hitchin.mul_vec(&basis[i])).collect();
    let half = Scalar::ratio(1, 2);
    let inv_lambda = lambda.inv();
    let mut out = PForm::zero(6, 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let direct = omega.eval(&[&basis[i], &basis[j]]);
            let pulled = omega.eval(&[&images[i], &images[j]]) * &inv_lambda;
            out.add_term(&[(i + 1) as u32, (j + 1) as u32], (direct - pulled) * &half);
        }
    }
    Ok(out)
}

/// Exact signature characterization of `th^1 ∧ omega + rho` being a split
/// 7-dimensional stable form:
/// timelike: signature `(3,3)` and a negative cube of the mixed part of
/// `omega` (the extension set is invariant under shifts by contractions of
/// `rho`, and the cube must be read on the normalized representative);
/// spacelike: signature `(2,4)`;
/// null: signature `(2,3)` with a 1-dimensional kernel.
pub fn characterize(kind: SixDKind, rho: &PForm, omega: &PForm) -> Result<bool> {
    match kind {
        SixDKind::Timelike => {
            let label = classify_three_form_6d(rho)?;
            let Certificate::Sl3R {
                lambda, hitchin, ..
            } = &label.certificate
            else {
                return Err(Error::invalid(
                    "timelike characterization needs an SL3R form",
                ));
            };
            let b = timelike_form(rho, omega)?;
            let mixed = mixed_two_form_part(hitchin, lambda, omega)?;
            let cube = mixed.wedge_power(3)?.top_coefficient();
            Ok(b.signature() == (3, 3, 0) && cube.is_negative())
        }
        SixDKind::Spacelike => {
            let b = spacelike_form(rho, omega)?;
            Ok(b.signature() == (2, 4, 0))
        }
        SixDKind::Null => {
            let b = null_form(rho, &builtins::standard_volume(6), omega)?;
            Ok(b.signature() == (2, 3, 1))
        }
    }
}

/// Closed-form signature of a symmetric "forward-triangular" matrix: zero
/// behind the counter-diagonal, nonzero on it (except possibly the centre
/// `y` in odd sizes).  Odd `2n+1`: `(n+1, n)` if `y > 0`, `(n, n+1)` if
/// `y < 0`, degenerate `(n, n, 1)` if `y = 0`.  Even `2n`: `(n, n)`.
pub fn signature_fast(m: &SymBilinear) -> Result<(usize, usize, usize)> {
    let mat = m.matrix();
    let size = mat.rows();
    if size == 0 {
        return Ok((0, 0, 0));
    }
    let n = size / 2;
    // entries strictly behind the counter-diagonal must vanish
    for i in 0..size {
        for j in 0..size {
            if i + j >= size && !mat.get(i, j).is_zero() {
                return Err(Error::invalid(format!(
                    "entry ({i},{j}) behind the counter-diagonal is nonzero"
                )));
            }
        }
    }
    // counter-diagonal entries away from the centre must not vanish
    for i in 0..size {
        let j = size - 1 - i;
        if i == j {
            continue;
        }
        if mat.get(i, j).is_zero() {
            return Err(Error::invalid(format!(
                "counter-diagonal entry ({i},{j}) vanishes"
            )));
        }
    }
    if size % 2 == 0 {
        return Ok((n, n, 0));
    }
    let y = mat.get(n, n);
    Ok(match y.signum() {
        1 => (n + 1, n, 0),
        -1 => (n, n + 1, 0),
        _ => (n, n, 1),
    })
}

/// Outcome of [`sample_extension_set`].
#[derive(Clone, Debug)]
pub struct SampleReport {
    pub tried: usize,
    pub accepted: Vec<PForm>,
    pub hull: Option<HullCertificate>,
}

impl SampleReport {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted.len() as f64 / self.tried.max(1) as f64
    }
}

/// Rejection-sample `count` candidate forms `nu` with integer coefficients
/// in `[-5, 5]`, keep those with `th^1 ∧ nu + tau` in the target family,
/// and run the hull certificate over the accepted set.
pub fn sample_extension_set(
    family: Family,
    tau: &PForm,
    count: usize,
    seed: u64,
) -> Result<SampleReport> {
    if count == 0 {
        return Err(Error::invalid("count must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = Vec::new();
    for _ in 0..count {
        let nu = crate::selftest::random_form(&mut rng, tau.n(), tau.degree() - 1, 5);
        if membership(family, tau, &nu)? {
            accepted.push(nu);
        }
    }
    let hull = if accepted.is_empty() {
        None
    } else {
        Some(zero_in_hull(&accepted)?)
    };
    Ok(SampleReport {
        tried: count,
        accepted,
        hull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;
    use rand::Rng;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn tl_omega(i: usize) -> PForm {
        // 2 th^{14} - th^{25} - th^{36} and cyclic variants
        let mut coeffs = [[-1i64; 3]; 3];
        coeffs[0][0] = 2;
        coeffs[1][1] = 2;
        coeffs[2][2] = 2;
        PForm::from_terms(
            6,
            2,
            &[
                (&[1, 4], s(coeffs[i][0])),
                (&[2, 5], s(coeffs[i][1])),
                (&[3, 6], s(coeffs[i][2])),
            ],
        )
    }

    #[test]
    fn timelike_form_matches_display() {
        // I(omega_1) = 4 th^1.th^4 - 2 th^2.th^5 - 2 th^3.th^6
        let b = timelike_form(&rho_plus(), &tl_omega(0)).unwrap();
        assert!(b.sqrt_scale.is_none());
        let m = b.sym.matrix();
        assert_eq!(m.get(0, 3), &s(2));
        assert_eq!(m.get(1, 4), &s(-1));
        assert_eq!(m.get(2, 5), &s(-1));
        assert_eq!(b.signature(), (3, 3, 0));
        // omega_i^3 = -12 th^{1..6}
        for i in 0..3 {
            assert_eq!(
                tl_omega(i).wedge_power(3).unwrap().top_coefficient(),
                s(-12)
            );
        }
    }

    #[test]
    fn timelike_vanishes_off_mixed_part() {
        // forms of pure type (2,0) + (0,2) are annihilated
        let pure = PForm::from_terms(6, 2, &[(&[1, 2], s(3)), (&[4, 5], s(-2)), (&[2, 3], s(1))]);
        let b = timelike_form(&rho_plus(), &pure).unwrap();
        assert!(b.sym.matrix().is_zero());
    }

    #[test]
    fn spacelike_form_matches_display() {
        // J(2 th^12 - th^34 - th^56) = diag(2,2,-1,-1,-1,-1)
        let om = PForm::from_terms(6, 2, &[(&[1, 2], s(2)), (&[3, 4], s(-1)), (&[5, 6], s(-1))]);
        let b = spacelike_form(&rho_minus(), &om).unwrap();
        assert!(b.sqrt_scale.is_none());
        assert_eq!(b.sym.matrix(), &Matrix::diag(&[2, 2, -1, -1, -1, -1]));
        assert_eq!(b.signature(), (2, 4, 0));
    }

    #[test]
    fn spacelike_rejects_wrong_signature() {
        // J(th^12) = diag(1,1,0,...) has signature (2,0,4), not (2,4)
        let om = PForm::basis(6, &[1, 2]);
        assert!(!characterize(SixDKind::Spacelike, &rho_minus(), &om).unwrap());
    }

    #[test]
    fn null_form_table_entries() {
        let vol = standard_volume(6);
        // th^{14} -> -th^1.th^1 (index-shifted first row of the table)
        let b = null_form(&rho0(), &vol, &PForm::basis(6, &[1, 4])).unwrap();
        let mut expect = Matrix::zero(6, 6);
        expect.set(0, 0, s(-1));
        assert_eq!(b.sym.matrix(), &expect);
        // th^{45} -> th^1.th^5 - th^2.th^4
        let b = null_form(&rho0(), &vol, &PForm::basis(6, &[4, 5])).unwrap();
        let mut expect = Matrix::zero(6, 6);
        expect.set(0, 4, Scalar::ratio(1, 2));
        expect.set(4, 0, Scalar::ratio(1, 2));
        expect.set(1, 3, Scalar::ratio(-1, 2));
        expect.set(3, 1, Scalar::ratio(-1, 2));
        assert_eq!(b.sym.matrix(), &expect);
    }

    #[test]
    fn null_form_vanishes_on_contractions() {
        // H(u ⌟ rho0) = 0 for all u
        let vol = standard_volume(6);
        let rho = rho0();
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let u: Vec<Scalar> = (0..6).map(|_| s(rng.gen_range(-5..=5))).collect();
            let om = rho.interior(&u).unwrap();
            let b = null_form(&rho, &vol, &om).unwrap();
            assert!(b.sym.matrix().is_zero());
        }
    }

    #[test]
    fn null_frame_is_index_shift() {
        let h = null_frame_map(&standard_volume(6)).unwrap();
        let mut expect = Matrix::zero(6, 6);
        for i in 0..3 {
            expect.set(3 + i, i, s(1));
        }
        assert_eq!(h, expect);
    }

    #[test]
    fn null_rejects_other_forms() {
        assert!(null_form(&rho_plus(), &standard_volume(6), &PForm::basis(6, &[1, 2])).is_err());
    }

    #[test]
    fn membership_examples() {
        // tau = rho_+, nu = omega_1 extends to a split G2 form
        assert!(membership(Family::G2Tilde, &rho_plus(), &tl_omega(0)).unwrap());
        // tau = 0 admits no osemproplectic extension
        let zero_tau = PForm::zero(5, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let nu = crate::selftest::random_form(&mut rng, 5, 3, 5);
            assert!(!membership(Family::Osemproplectic, &zero_tau, &nu).unwrap());
        }
    }

    #[test]
    fn emproplectic_membership_iff_pseudoplectic_positive() {
        // k = 2, 3: th ∧ nu + tau emproplectic iff tau^(k-1) != 0 and nu
        // positive on the kernel line
        use crate::orbit::{classify_two_form, Certificate};
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for k in [2u32, 3] {
            let m = 2 * k - 1;
            let mut hits = 0;
            for _ in 0..150 {
                let tau = crate::selftest::random_form(&mut rng, m, 2, 3);
                let nu = crate::selftest::random_form(&mut rng, m, 1, 3);
                let member = membership(Family::Emproplectic, &tau, &nu).unwrap();
                let label = classify_two_form(&tau).unwrap();
                let expected = match &label.certificate {
                    Certificate::Pseudoplectic { line } => {
                        let pairing = nu.eval(&[&line[..]]);
                        pairing.is_positive()
                    }
                    _ => false,
                };
                assert_eq!(member, expected);
                if member {
                    hits += 1;
                }
            }
            assert!(hits > 5, "sampler never hit the orbit for k={k}");
        }
    }

    #[test]
    fn signature_fast_templates() {
        // 3x3 with x1 = 1, y = 2
        let m = Matrix::from_rows(vec![
            vec![s(7), s(-4), s(1)],
            vec![s(-4), s(2), s(0)],
            vec![s(1), s(0), s(0)],
        ]);
        let b = SymBilinear::new(m).unwrap();
        assert_eq!(signature_fast(&b).unwrap(), (2, 1, 0));
        assert_eq!(b.signature(), (2, 1, 0));

        // 2x2 antidiagonal
        let m = Matrix::from_rows(vec![vec![s(0), s(5)], vec![s(5), s(0)]]);
        let b = SymBilinear::new(m).unwrap();
        assert_eq!(signature_fast(&b).unwrap(), (1, 1, 0));

        // y = 0 is degenerate
        let m = Matrix::from_rows(vec![
            vec![s(3), s(2), s(1)],
            vec![s(2), s(0), s(0)],
            vec![s(1), s(0), s(0)],
        ]);
        let b = SymBilinear::new(m).unwrap();
        assert_eq!(signature_fast(&b).unwrap(), (1, 1, 1));

        // template violation
        let m = Matrix::from_rows(vec![
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
        ]);
        let b = SymBilinear::new(m).unwrap();
        assert!(signature_fast(&b).is_err());
    }

    #[test]
    fn sampling_finds_members_and_hull() {
        let report = sample_extension_set(Family::G2Tilde, &rho_plus(), 200, 9).unwrap();
        assert!(!report.accepted.is_empty());
        assert!(report.acceptance_rate() >= 0.05);
        match report.hull.unwrap() {
            HullCertificate::Combination { .. } => {}
            HullCertificate::Refutation { .. } => panic!("hull should contain zero"),
        }
        // scale invariance: members stay members under positive scaling
        for nu in report.accepted.iter().take(10) {
            for lam in [Scalar::from_int(2), Scalar::ratio(1, 3)] {
                assert!(membership(Family::G2Tilde, &rho_plus(), &nu.scale(&lam)).unwrap());
            }
        }
    }

    #[test]
    fn degenerate_tau_yields_no_members() {
        // tau with tau^(k-1) = 0 admits no emproplectic extension
        let tau = PForm::basis(5, &[2, 3]); // k = 3, tau^2 = 0
        let report = sample_extension_set(Family::Emproplectic, &tau, 100, 3).unwrap();
        assert!(report.accepted.is_empty());
    }
}
