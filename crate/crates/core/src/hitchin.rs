//! Volume functionals of stable forms with special-linear stabilizer, their
//! scaling law, and the finite-difference dual form.
//!
//! Each supported family carries an exact polynomial invariant whose root
//! gives the volume coefficient against `th^{1..n}`:
//!
//! | family                  | invariant        | root  |
//! |-------------------------|------------------|-------|
//! | emproplectic/pisoplectic| top of `om^k/k!` | 1     |
//! | SL3R                    | `Lambda`         | 2     |
//! | SL3C                    | `-Lambda/4`      | 2     |
//! | 3-forms on `R^7`        | `det Q`          | 9     |
//! | 4-forms on `R^7`        | `det Q` of dual  | 12    |
//! | os(em/pis)oplectic      | `abs(Pf)`        | k - 1 |
//!
//! The invariant is always exact; the root is taken exactly when it is a
//! rational, and in floating point only for the dual-form estimates.
//! Ospseudoplectic forms are rejected: their stabilizer contains genuine
//! scalings, so no volume functional exists.

use crate::exterior::PForm;
use crate::multiindex::MultiIndex;
use crate::orbit::{classify, Certificate, Family};
use crate::scalar::Scalar;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact volume data: the coefficient of the volume form against
/// `th^{1..n}` is `sign * base^(1/root)` with `base > 0`.
#[derive(Clone, Debug)]
pub struct VolumeCertificate {
    pub family: Family,
    pub n: u32,
    /// Positive exact invariant.
    pub base: Scalar,
    /// The root to take.
    pub root: u32,
    /// Sign of the coefficient.
    pub sign: i8,
    /// Exact coefficient when `base` has a rational `root`-th root.
    pub exact: Option<Scalar>,
}

impl VolumeCertificate {
    /// Floating approximation of the volume coefficient.
    pub fn approx(&self) -> f64 {
        let b = self.base.to_f64();
        self.sign as f64 * b.powf(1.0 / self.root as f64)
    }

    /// The volume form itself, when exact.
    pub fn exact_form(&self) -> Option<PForm> {
        self.exact.as_ref().map(|c| {
            let mut v = PForm::zero(self.n, self.n);
            v.insert_raw(MultiIndex::EMPTY.complement(self.n), c.clone());
            v
        })
    }
}

fn certificate(
    family: Family,
    n: u32,
    base: Scalar,
    root: u32,
    sign: i8,
) -> Result<VolumeCertificate> {
    if !base.is_positive() {
        return Err(Error::degenerate("volume invariant is not positive"));
    }
    let exact = base
        .nth_root_rational(root)
        .map(|r| if sign < 0 { -r } else { r });
    Ok(VolumeCertificate {
        family,
        n,
        base,
        root,
        sign,
        exact,
    })
}

/// Exact volume certificate of a form in a Hitchin family.
pub fn hitchin_volume(sigma: &PForm) -> Result<VolumeCertificate> {
    let n = sigma.n();
    let label = classify(sigma)?;
    match (&label.family, &label.certificate) {
        (Family::Emproplectic | Family::Pisoplectic, Certificate::TwoFormEven { top }) => {
            let k = n / 2;
            let fact: i64 = (1..=k as i64).product();
            let c = top / &Scalar::from_int(fact);
            certificate(label.family, n, c.abs(), 1, c.signum())
        }
        (Family::Sl3R, Certificate::Sl3R { lambda, .. }) => {
            certificate(Family::Sl3R, n, lambda.clone(), 2, 1)
        }
        (Family::Sl3C, Certificate::Sl3C { lambda, .. }) => {
            certificate(Family::Sl3C, n, -lambda * Scalar::ratio(1, 4), 2, 1)
        }
        (
            Family::G2 | Family::G2Tilde | Family::NegG2 | Family::NegG2Tilde,
            Certificate::SevenDim { det_q, .. },
        ) => {
            let root = if sigma.degree() == 3 { 9 } else { 12 };
            certificate(label.family, n, det_q.abs(), root, det_q.signum())
        }
        (
            Family::Osemproplectic | Family::Ospisoplectic,
            Certificate::Ossymplectic { pfaffian },
        ) => {
            let k = n / 2;
            certificate(label.family, n, pfaffian.abs(), k - 1, 1)
        }
        (Family::Ospseudoplectic, _) => Err(Error::invalid(
            "ospseudoplectic forms admit no volume functional (stabilizer not special-linear)",
        )),
        _ => Err(Error::invalid(format!(
            "family {} does not carry a volume functional here",
            label.family
        ))),
    }
}

/// Floating volume coefficient (exact invariant, floating root).
pub fn volume_coefficient_f64(sigma: &PForm) -> Result<f64> {
    Ok(hitchin_volume(sigma)?.approx())
}

/// Exact check of `vol((1+lambda) sigma) = (1+lambda)^(n/p) vol(sigma)`.
/// `lambda` must be rational with `(1+lambda)^(n/p)` rational; otherwise an
/// error is returned.
pub fn scaling_law(sigma: &PForm, lambda: &Scalar) -> Result<bool> {
    let n = sigma.n();
    let p = sigma.degree();
    let scale = Scalar::one() + lambda;
    if !scale.is_positive() || !scale.is_rational() {
        return Err(Error::invalid("1 + lambda must be a positive rational"));
    }
    let t = scale
        .pow(n)
        .nth_root_rational(p)
        .ok_or_else(|| Error::invalid(format!("(1+lambda)^({n}/{p}) is not rational")))?;
    let v1 = hitchin_volume(sigma)?;
    let v2 = hitchin_volume(&sigma.scale(&scale))?;
    debug_assert_eq!(v1.root, v2.root);
    // coefficient_2 = t * coefficient_1, compared at the invariant level:
    // base_2 = t^root * base_1 and equal signs (t > 0).
    Ok(v2.sign == v1.sign && v2.base == t.pow(v1.root) * &v1.base)
}

/// Dual-form estimate by central differences, plus the comparison against
/// a closed-form candidate when one is known.
#[derive(Clone, Debug)]
pub struct XiReport {
    pub family: Family,
    /// Coefficients of the estimated `(n-p)`-form over the canonical basis.
    pub xi: Vec<(MultiIndex, f64)>,
    /// `(candidate, best-fit constant, relative residual)`; the candidate
    /// for positive `G_2` 3-forms is the Euclidean Hodge dual.
    pub candidate: Option<(PForm, f64, f64)>,
}

/// Estimate `Xi(sigma)` from `Dvol|_sigma(th^I) = th^I ∧ Xi`, each
/// directional derivative by a central difference with rational step `h`.
pub fn xi_dual(sigma: &PForm, h: &Scalar) -> Result<XiReport> {
    if !h.is_positive() {
        return Err(Error::invalid("step must be positive"));
    }
    let n = sigma.n();
    let p = sigma.degree();
    let family = classify(sigma)?.family;
    let two_h = (Scalar::from_int(2) * h).to_f64();
    let mut xi = Vec::new();
    for idx in MultiIndex::all(n, p) {
        let mut basis = PForm::zero(n, p);
        basis.insert_raw(idx, h.clone());
        let plus = volume_coefficient_f64(&(sigma + &basis))?;
        let minus = volume_coefficient_f64(&(sigma - &basis))?;
        let derivative = (plus - minus) / two_h;
        // th^I ∧ (c th^{I^c}) = c * sign * th^{1..n}
        let comp = idx.complement(n);
        let sign = idx.wedge_sign(comp).unwrap() as f64;
        xi.push((comp, derivative * sign));
    }
    xi.sort_by(|a, b| a.0.cmp(&b.0));

    let candidate_form = match family {
        Family::G2 => {
            let g = crate::builtins::g0();
            Some(g.hodge_star(sigma)?)
        }
        _ => None,
    };
    let candidate = candidate_form.map(|cand| {
        let dense: Vec<f64> = cand
            .dense_coefficients()
            .iter()
            .map(|c| c.to_f64())
            .collect();
        let mut xi_dense = vec![0.0; dense.len()];
        for (i, idx) in MultiIndex::all(n, n - p).iter().enumerate() {
            if let Some((_, v)) = xi.iter().find(|(m, _)| m == idx) {
                xi_dense[i] = *v;
            }
        }
        let dot: f64 = dense.iter().zip(&xi_dense).map(|(a, b)| a * b).sum();
        let nrm2: f64 = dense.iter().map(|a| a * a).sum();
        let c = dot / nrm2;
        let res2: f64 = dense
            .iter()
            .zip(&xi_dense)
            .map(|(a, b)| (b - c * a) * (b - c * a))
            .sum();
        let xi_nrm2: f64 = xi_dense.iter().map(|a| a * a).sum();
        (cand, c, (res2 / xi_nrm2).sqrt())
    });
    Ok(XiReport {
        family,
        xi,
        candidate,
    })
}

/// Directional derivative of the volume coefficient at `sigma` along a
/// whole form `alpha`.
fn directional(sigma: &PForm, alpha: &PForm, h: &Scalar) -> Result<f64> {
    let step = alpha.scale(h);
    let plus = volume_coefficient_f64(&(sigma + &step))?;
    let minus = volume_coefficient_f64(&(sigma - &step))?;
    Ok((plus - minus) / (Scalar::from_int(2) * h).to_f64())
}

/// Largest relative deviation from additivity of the derivative pairing
/// over `count` random direction pairs.
pub fn pairing_linearity_residual(
    sigma: &PForm,
    h: &Scalar,
    count: usize,
    seed: u64,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sigma.n();
    let p = sigma.degree();
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let a = crate::selftest::random_form(&mut rng, n, p, 3);
        let b = crate::selftest::random_form(&mut rng, n, p, 3);
        let da = directional(sigma, &a, h)?;
        let db = directional(sigma, &b, h)?;
        let sum = &a + &b;
        let dsum = directional(sigma, &sum, h)?;
        let scale = da.abs().max(db.abs()).max(dsum.abs()).max(1.0);
        worst = worst.max((dsum - da - db).abs() / scale);
    }
    Ok(worst)
}

/// Relative deviation between `Xi(c^3 sigma)` and `c^4 Xi(sigma)` for a
/// positive rational cube scaling of a 3-form on `R^7` (degree `n/p - 1`
/// homogeneity at an exactly-representable power).
pub fn xi_scaling_residual(sigma: &PForm, c: i64, h: &Scalar) -> Result<f64> {
    let cube = Scalar::from_int(c * c * c);
    let scaled = sigma.scale(&cube);
    let xi_scaled = xi_dual(&scaled, h)?;
    let xi_base = xi_dual(sigma, h)?;
    let factor = (c as f64).powi(4);
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for ((i1, v1), (i2, v2)) in xi_scaled.xi.iter().zip(xi_base.xi.iter()) {
        assert_eq!(i1, i2);
        let expect = factor * v2;
        num += (v1 - expect) * (v1 - expect);
        den += expect * expect;
    }
    Ok((num / den.max(f64::MIN_POSITIVE)).sqrt())
}

/// Strict monotonicity of the volume under the listed positive scalings.
pub fn volume_increases_under_scaling(sigma: &PForm, lambdas: &[i64]) -> Result<bool> {
    let mut last = None::<f64>;
    for &l in lambdas {
        let scale = Scalar::from_int(1 + l);
        let v = volume_coefficient_f64(&sigma.scale(&scale))?;
        if let Some(prev) = last {
            if v <= prev {
                return Ok(false);
            }
        }
        last = Some(v);
    }
    Ok(true)
}

/// Random special-linear matrix as a product of integer shears.
pub fn random_special_linear<R: Rng>(rng: &mut R, n: usize, steps: usize) -> crate::matrix::Matrix {
    let mut m = crate::matrix::Matrix::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = Scalar::from_int(rng.gen_range(-2..=2i64));
        // shear: column_j += c * column_i
        let mut shear = crate::matrix::Matrix::identity(n);
        shear.set(i, j, c);
        m = m.mul(&shear);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn volumes_of_standard_forms() {
        let v = hitchin_volume(&rho_plus()).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        let v = hitchin_volume(&rho_minus()).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        let v = hitchin_volume(&phi0()).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        let v = hitchin_volume(&svphi1()).unwrap();
        assert_eq!(v.exact.clone().unwrap(), Scalar::ratio(1, 8));
        let v = hitchin_volume(&psi0()).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        let v = hitchin_volume(&svpsi0()).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        let v = hitchin_volume(&varpi_plus(3)).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        let v = hitchin_volume(&varpi_minus(4)).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        let v = hitchin_volume(&omega_plus(3)).unwrap();
        assert_eq!(v.exact.clone().unwrap(), s(1));
        assert!(hitchin_volume(&xi0(2)).is_err());
        assert!(hitchin_volume(&mu0(2)).is_err());
    }

    #[test]
    fn scaling_law_examples() {
        assert!(scaling_law(&phi0(), &s(7)).unwrap());
        assert!(scaling_law(&rho_plus(), &s(0)).unwrap());
        assert!(scaling_law(&varpi_plus(3), &s(15)).unwrap());
        // cube scaling of a 3-form: mu^3 with power mu^7
        assert!(scaling_law(&phi0(), &(Scalar::from_int(27) - Scalar::one())).unwrap());
        // power not rational
        assert!(scaling_law(&phi0(), &s(1)).is_err());
    }

    #[test]
    fn unimodular_invariance_and_determinant_scaling() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let base = hitchin_volume(&phi0()).unwrap();
        for _ in 0..10 {
            let f = random_special_linear(&mut rng, 7, 12);
            let pulled = phi0().pullback(&f).unwrap();
            let v = hitchin_volume(&pulled).unwrap();
            assert_eq!(v.base, base.base);
            assert_eq!(v.sign, base.sign);
        }
        // det F = 2 scales the volume by 2, i.e. det Q by 2^9
        let mut f = crate::matrix::Matrix::identity(7);
        f.set(0, 0, s(2));
        let pulled = phi0().pullback(&f).unwrap();
        let v = hitchin_volume(&pulled).unwrap();
        assert_eq!(v.base, base.base * s(512));
    }

    #[test]
    fn monotone_under_cutoff_scalings() {
        assert!(volume_increases_under_scaling(&phi0(), &[0, 7, 26]).unwrap());
        // exact values 1, 128, 2187
        assert_eq!(
            hitchin_volume(&phi0().scale(&s(8))).unwrap().exact.unwrap(),
            s(128)
        );
        assert_eq!(
            hitchin_volume(&phi0().scale(&s(27)))
                .unwrap()
                .exact
                .unwrap(),
            s(2187)
        );
    }

    #[test]
    fn xi_of_phi0_is_proportional_to_its_dual() {
        let h = Scalar::ratio(1, 10_000);
        let report = xi_dual(&phi0(), &h).unwrap();
        let (cand, c, residual) = report.candidate.expect("candidate for G2");
        assert_eq!(cand, psi0());
        assert!(residual < 1e-6, "residual {residual}");
        assert!((c - 1.0 / 3.0).abs() < 1e-6, "constant {c}");
    }

    #[test]
    fn xi_pairing_is_linear_for_rho_plus() {
        let h = Scalar::ratio(1, 10_000);
        let r = pairing_linearity_residual(&rho_plus(), &h, 12, 7).unwrap();
        assert!(r < 1e-6, "linearity residual {r}");
    }

    #[test]
    fn xi_of_rho_plus_is_the_complementary_pair() {
        // invariance pins Xi(rho+) to the span of th^{123}, th^{456}, and
        // Euler's relation rho ∧ Xi = 2 vol (3-forms anticommute) forces
        // Xi(rho+) = th^{456} - th^{123}
        let h = Scalar::ratio(1, 10_000);
        let report = xi_dual(&rho_plus(), &h).unwrap();
        for (idx, v) in &report.xi {
            let ids: Vec<u32> = idx.indices().collect();
            let expect = if ids == [4, 5, 6] {
                1.0
            } else if ids == [1, 2, 3] {
                -1.0
            } else {
                0.0
            };
            assert!((v - expect).abs() < 1e-6, "coefficient at {idx}: {v}");
        }
    }

    #[test]
    fn xi_scales_with_degree_four_thirds() {
        let h = Scalar::ratio(1, 10_000);
        let r = xi_scaling_residual(&phi0(), 2, &h).unwrap();
        assert!(r < 1e-6, "scaling residual {r}");
    }
}
