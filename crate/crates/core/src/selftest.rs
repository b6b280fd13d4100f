//! The acceptance suite: every criterion as a callable check, plus the
//! randomized-test helpers shared with the unit tests.
//!
//! `stform selftest` runs [`run_all`] and prints one line per criterion;
//! the `acceptance` integration test asserts each criterion individually.

use crate::ample::{
    characterize, membership, null_frame_map, signature_fast, verify_witness, SixDKind, WitnessCase,
};
use crate::builtins::*;
use crate::exterior::{hook_volume, PForm, PVector};
use crate::hitchin;
use crate::matrix::Matrix;
use crate::multiindex::MultiIndex;
use crate::orbit::{
    classify, classify_two_form, stabilizer_algebra_dim, verify_stabilizer_element, Certificate,
    Family, SymBilinear,
};
use crate::restrict::{restriction_survey, CausalType};
use crate::scalar::Scalar;
use crate::simplicial::{build_splitting, complexes, verify_splitting};
use crate::whitney::{integrate_whitney, ones_is_constant_one, whitney_form, EmbeddedComplex};
use crate::Result;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random p-form with integer coefficients in `[-bound, bound]`.
pub fn random_form<R: Rng>(rng: &mut R, n: u32, p: u32, bound: i64) -> PForm {
    let mut f = PForm::zero(n, p);
    for idx in MultiIndex::all(n, p) {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            f.insert_raw(idx, Scalar::from_int(c));
        }
    }
    f
}

/// Random p-multivector with integer coefficients in `[-bound, bound]`.
pub fn random_multivector<R: Rng>(rng: &mut R, n: u32, p: u32, bound: i64) -> PVector {
    let mut f = PVector::zero(n, p);
    for idx in MultiIndex::all(n, p) {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            f.insert_raw(idx, Scalar::from_int(c));
        }
    }
    f
}

/// Random symplectic matrix stabilizing the paired standard 2-form
/// `th^{12} + th^{34} + ...`, as a conjugated product of block generators.
pub fn random_symplectic<R: Rng>(rng: &mut R, k: usize, steps: usize) -> Matrix {
    let n = 2 * k;
    let mut m = Matrix::identity(n);
    for _ in 0..steps {
        let mut gen = Matrix::identity(n);
        match rng.gen_range(0..3) {
            0 => {
                // block diag(A, A^{-T}) for unimodular integer A
                let a = hitchin::random_special_linear(rng, k, 4);
                let a_inv_t = a.inverse().expect("unimodular").transpose();
                for i in 0..k {
                    for j in 0..k {
                        gen.set(i, j, a.get(i, j).clone());
                        gen.set(k + i, k + j, a_inv_t.get(i, j).clone());
                    }
                }
            }
            1 => {
                // upper shear by a symmetric S
                for i in 0..k {
                    for j in i..k {
                        let v = Scalar::from_int(rng.gen_range(-2..=2));
                        gen.set(i, k + j, v.clone());
                        gen.set(j, k + i, v);
                    }
                }
            }
            _ => {
                // lower shear by a symmetric S
                for i in 0..k {
                    for j in i..k {
                        let v = Scalar::from_int(rng.gen_range(-2..=2));
                        gen.set(k + i, j, v.clone());
                        gen.set(k + j, i, v);
                    }
                }
            }
        }
        m = m.mul(&gen);
    }
    // the generators preserve sum th^{i, k+i}; conjugate by the pairing
    // permutation so the result preserves sum th^{2i-1, 2i}
    let mut perm = Matrix::zero(n, n);
    for i in 0..k {
        perm.set(2 * i, i, Scalar::one());
        perm.set(2 * i + 1, k + i, Scalar::one());
    }
    let perm_inv = perm.inverse().expect("permutation");
    perm.mul(&m.mul(&perm_inv))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations (`f64`).
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub pass: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    fn new(id: usize, title: &str) -> Self {
        CriterionResult {
            id,
            title: title.to_string(),
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        if !ok {
            self.pass = false;
            self.details.push(format!("FAIL: {detail}"));
        } else {
            self.details.push(format!("ok: {detail}"));
        }
    }
}

/// Criterion 1: stabilizer dimensions of every standard form.
pub fn criterion_stability() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(1, "stability and stabilizer dimensions");
    let mut expect: Vec<(String, PForm, usize)> = vec![
        ("phi0".into(), phi0(), 14),
        ("svphi0".into(), svphi0(), 14),
        ("psi0".into(), psi0(), 14),
        ("svpsi0".into(), svpsi0(), 14),
        ("rho+".into(), rho_plus(), 16),
        ("rho-".into(), rho_minus(), 16),
        ("zeta_c".into(), zeta_c(), 8),
        ("zeta_s".into(), zeta_s(), 8),
        ("zeta_n".into(), zeta_n(), 8),
        ("eta_c".into(), eta_c(), 8),
        ("eta_s".into(), eta_s(), 8),
        ("eta_n".into(), eta_n(), 8),
    ];
    for k in [2u32, 3, 4] {
        let dim = (2 * k * k + k) as usize;
        expect.push((format!("omega+({k})"), omega_plus(k), dim));
        expect.push((format!("omega-({k})"), omega_minus(k), dim));
        expect.push((format!("varpi+({k})"), varpi_plus(k), dim));
        expect.push((format!("varpi-({k})"), varpi_minus(k), dim));
    }
    for k in [2u32, 3] {
        let dim = ((2 * k + 1) * (k + 1)) as usize;
        expect.push((format!("mu0({k})"), mu0(k), dim));
        expect.push((format!("xi0({k})"), xi0(k), dim));
    }
    for (name, form, dim) in expect {
        let info = stabilizer_algebra_dim(&form);
        r.check(
            info.stable && info.dim == dim,
            format!(
                "{name}: stable={} dim={} (expected {dim})",
                info.stable, info.dim
            ),
        );
    }
    Ok(r)
}

/// Criterion 2: induced metrics, volumes and Hodge duals of the standard
/// 6- and 7-dimensional forms.
pub fn criterion_metric_volume() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(2, "metric and volume certificates");
    let l = classify(&phi0())?;
    if let Certificate::SevenDim { metric, vol, .. } = &l.certificate {
        r.check(
            metric.as_ref() == Some(&Matrix::identity(7)) && vol == &Some(Scalar::one()),
            "phi0 induces the Euclidean metric and vol th^{1..7}",
        );
    } else {
        r.check(false, "phi0 certificate shape");
    }
    let l = classify(&svphi0())?;
    if let Certificate::SevenDim { metric, vol, .. } = &l.certificate {
        r.check(
            metric.as_ref() == Some(&Matrix::diag(&[1, 1, 1, -1, -1, -1, -1]))
                && vol == &Some(Scalar::one()),
            "svphi0 induces the split metric and vol th^{1..7}",
        );
    } else {
        r.check(false, "svphi0 certificate shape");
    }
    let l = classify(&svphi1())?;
    if let Certificate::SevenDim { metric, vol, .. } = &l.certificate {
        r.check(
            metric.as_ref() == Some(gtilde1().matrix()) && vol == &Some(Scalar::ratio(1, 8)),
            "svphi1 induces gtilde1 and vol th^{1..7}/8",
        );
    } else {
        r.check(false, "svphi1 certificate shape");
    }
    for (name, rho) in [("rho+", rho_plus()), ("rho-", rho_minus())] {
        let vol = hitchin::hitchin_volume(&rho)?;
        r.check(
            vol.exact == Some(Scalar::one()),
            format!("{name} has volume th^{{1..6}}"),
        );
    }
    // norms: |phi|^2 = 7 in the induced metric
    let g = g0();
    r.check(
        g.inner_forms(&phi0(), &phi0()) == Scalar::from_int(7),
        "norm of phi0 is 7",
    );
    let gt = gtilde0();
    r.check(
        gt.inner_forms(&svphi0(), &svphi0()) == Scalar::from_int(7),
        "norm of svphi0 is 7",
    );
    r.check(g.hodge_star(&phi0())? == psi0(), "star of phi0 is psi0");
    r.check(
        gt.hodge_star(&svphi0())? == svpsi0(),
        "star of svphi0 is svpsi0",
    );
    Ok(r)
}

/// Criterion 3: duality diagram for unimodular maps, and the standard
/// contraction displays.
pub fn criterion_duality() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(3, "volume duality equivariance");
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    for (n, p) in [(6u32, 3u32), (7, 3), (6, 2)] {
        let vol = standard_volume(n);
        let mut ok = true;
        for _ in 0..50 {
            let w = random_multivector(&mut rng, n, p, 4);
            let f = hitchin::random_special_linear(&mut rng, n as usize, 10);
            let lhs = hook_volume(&w.pushforward(&f)?, &vol)?;
            let f_inv = f.inverse().expect("unimodular");
            let rhs = hook_volume(&w, &vol)?.pullback(&f_inv)?;
            if lhs != rhs {
                ok = false;
                break;
            }
        }
        r.check(
            ok,
            format!("50 unimodular duality checks at (n,p)=({n},{p})"),
        );
    }
    for k in [3u32, 4] {
        let om = omega_plus(k);
        let fact: i64 = (1..=k as i64).product();
        let vol = om.wedge_power(k)?.scale(&Scalar::ratio(1, fact));
        let mut w = PVector::zero(2 * k, 2);
        for i in 0..k {
            w.add_term(&[2 * i + 1, 2 * i + 2], Scalar::one());
        }
        let mut wm = PVector::zero(2 * k, 2);
        wm.add_term(&[1, 2], Scalar::from_int(-1));
        for i in 1..k {
            wm.add_term(&[2 * i + 1, 2 * i + 2], Scalar::one());
        }
        r.check(
            hook_volume(&w, &vol)? == varpi_plus(k) && hook_volume(&wm, &vol)? == varpi_minus(k),
            format!("standard bivector contractions against om^k/k! at k={k}"),
        );
    }
    Ok(r)
}

/// Criterion 4: the named hyperplane restrictions and the 500-sample
/// survey of the split 7-dimensional 3-form.
pub fn criterion_restriction() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(4, "hyperplane restrictions");
    use crate::restrict::{restrict, OrientedHyperplane};
    let e2_e7 = OrientedHyperplane::from_int_rows(&[
        vec![0, 1, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 0, 1],
    ])?;
    let e1_e6 = OrientedHyperplane::from_int_rows(&[
        vec![1, 0, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 0],
    ])?;
    let mixed = OrientedHyperplane::from_int_rows(&[
        vec![1, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 0],
        vec![0, -1, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 1],
    ])?;
    let two_svphi1 = svphi1().scale(&Scalar::from_int(2));
    r.check(
        restrict(&svphi0(), &e2_e7)? == rho_minus(),
        "svphi0 | <e2..e7> = rho-",
    );
    r.check(
        restrict(&two_svphi1, &mixed)? == rho_plus(),
        "2 svphi1 | <e1,e5,e6,-e2,e3,e7> = rho+",
    );
    r.check(
        restrict(&two_svphi1, &e2_e7)? == rho0(),
        "2 svphi1 | <e2..e7> = rho0",
    );

    // the 4-form restrictions: osemproplectic, ospisoplectic, degenerate
    let rp = restrict(&svpsi0(), &e2_e7)?;
    let expect_plus = {
        let om = PForm::from_terms(
            6,
            2,
            &[
                (&[1, 2], Scalar::one()),
                (&[3, 4], -Scalar::one()),
                (&[5, 6], -Scalar::one()),
            ],
        );
        om.wedge_power(2)?.scale(&Scalar::ratio(1, 2))
    };
    r.check(
        rp == expect_plus && classify(&rp)?.family == Family::Osemproplectic,
        "svpsi0 | <e2..e7> matches the square display and is osemproplectic",
    );
    let rm = restrict(&svpsi0(), &e1_e6)?;
    let expect_minus = {
        let om = PForm::from_terms(
            6,
            2,
            &[
                (&[1, 6], Scalar::one()),
                (&[2, 5], Scalar::one()),
                (&[3, 4], Scalar::one()),
            ],
        );
        om.wedge_power(2)?.scale(&Scalar::ratio(-1, 2))
    };
    r.check(
        rm == expect_minus && classify(&rm)?.family == Family::Ospisoplectic,
        "svpsi0 | <e1..e6> matches the square display and is ospisoplectic",
    );
    let two_svpsi1 = svpsi1().scale(&Scalar::from_int(2));
    let rn = restrict(&two_svpsi1, &e1_e6)?;
    let expect_null = {
        let a = PForm::from_terms(
            6,
            2,
            &[(&[2, 3], Scalar::ratio(1, 2)), (&[1, 4], -Scalar::one())],
        );
        a.wedge(&PForm::basis(6, &[5, 6]))?
    };
    r.check(
        rn == expect_null && !classify(&rn)?.stable,
        "2 svpsi1 | <e1..e6> is the degenerate product display",
    );

    let survey = restriction_survey(&svphi0(), Some(&gtilde0()), 500, 2026)?;
    r.check(survey.count == 500, "survey drew 500 samples");
    r.check(
        survey.all_of_type(CausalType::Spacelike, "SL3C"),
        "all spacelike restrictions are SL3C",
    );
    r.check(
        survey.all_of_type(CausalType::Timelike, "SL3R"),
        "all timelike restrictions are SL3R",
    );
    let null_ok = survey
        .buckets
        .iter()
        .filter(|((t, _), _)| *t == Some(CausalType::Null))
        .all(|((_, f), _)| f == "Parabolic6dCandidate" || f == "Degenerate");
    let null_seen: usize = survey
        .buckets
        .iter()
        .filter(|((t, _), _)| *t == Some(CausalType::Null))
        .map(|(_, c)| *c)
        .sum();
    r.check(
        null_ok && null_seen > 0,
        format!("{null_seen} null samples, none stable"),
    );
    Ok(r)
}

/// Criterion 5: 300-sample equivalence of the membership oracle and the
/// signature characterizations over each restriction type.
pub fn criterion_oracle_equivalence() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(5, "membership oracle vs signature characterizations");
    let cases = [
        ("timelike", rho_plus(), SixDKind::Timelike),
        ("spacelike", rho_minus(), SixDKind::Spacelike),
        ("null", rho0(), SixDKind::Null),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5_2026);
    for (name, rho, kind) in cases {
        let mut mismatches = 0usize;
        let mut members = 0usize;
        for _ in 0..300 {
            let omega = random_form(&mut rng, 6, 2, 5);
            let by_oracle = membership(Family::G2Tilde, &rho, &omega)?;
            let by_signature = characterize(kind, &rho, &omega)?;
            if by_oracle != by_signature {
                mismatches += 1;
            }
            if by_oracle {
                members += 1;
            }
        }
        r.check(
            mismatches == 0,
            format!("{name}: 300 samples, {mismatches} discrepancies"),
        );
        r.check(
            members * 20 >= 300,
            format!("{name}: acceptance rate {members}/300 >= 5%"),
        );
    }
    Ok(r)
}

/// Criterion 6: the named witness verifications.
pub fn criterion_witnesses() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(6, "witness suite");
    let cases = [
        WitnessCase::Timelike,
        WitnessCase::Spacelike,
        WitnessCase::Null {
            eps: Scalar::ratio(1, 10),
        },
        WitnessCase::OsymplecticHull { k: 3 },
        WitnessCase::OsymplecticHull { k: 4 },
        WitnessCase::OsemproAbundance { k: 3 },
        WitnessCase::OsemproAbundance { k: 4 },
        WitnessCase::OspseudoTau0 { k: 2 },
        WitnessCase::OspseudoTau0 { k: 3 },
    ];
    for case in cases {
        let report = verify_witness(&case)?;
        for c in &report.checks {
            r.check(c.pass, format!("{}: {}", report.case, c.name));
        }
    }
    // field sanity: k = 3 needs sqrt(5), k = 4 needs sqrt(3)
    r.check(
        crate::ample::scaling_root(3).discriminant() == Some(5),
        "k=3 witness lives in Q(sqrt(5))",
    );
    r.check(
        crate::ample::scaling_root(4).discriminant() == Some(3),
        "k=4 witness lives in Q(sqrt(3))",
    );
    Ok(r)
}

/// Criterion 7: brute-force equivalences for emproplectic and
/// osemproplectic extensions.
pub fn criterion_extension_equivalences() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(7, "extension-set equivalences");
    let mut rng = ChaCha8Rng::seed_from_u64(7_2026);
    for k in [2u32, 3] {
        let m = 2 * k - 1;
        let mut mismatches = 0usize;
        let mut members = 0usize;
        for _ in 0..300 {
            let tau = random_form(&mut rng, m, 2, 4);
            let nu = random_form(&mut rng, m, 1, 4);
            let by_oracle = membership(Family::Emproplectic, &tau, &nu)?;
            let label = classify_two_form(&tau)?;
            let direct = match &label.certificate {
                Certificate::Pseudoplectic { line } => nu.eval(&[&line[..]]).is_positive(),
                _ => false,
            };
            if by_oracle != direct {
                mismatches += 1;
            }
            if by_oracle {
                members += 1;
            }
        }
        r.check(
            mismatches == 0 && members > 0,
            format!(
                "emproplectic extensions at k={k}: {members} members, {mismatches} discrepancies"
            ),
        );
    }
    // osemproplectic extensions at k = 3: nu must be ospseudoplectic with
    // tau positive on its hyperplane
    let mut mismatches = 0usize;
    let mut members = 0usize;
    for _ in 0..300 {
        let tau = random_form(&mut rng, 5, 4, 4);
        let nu = random_form(&mut rng, 5, 3, 4);
        let by_oracle = membership(Family::Osemproplectic, &tau, &nu)?;
        let label = classify(&nu)?;
        let direct = match &label.certificate {
            Certificate::Ospseudoplectic { plane, .. } => {
                let basis = Matrix::from_rows(plane.clone()).transpose();
                tau.pullback(&basis)?.top_coefficient().is_positive()
            }
            _ => false,
        };
        if by_oracle != direct {
            mismatches += 1;
        }
        if by_oracle {
            members += 1;
        }
    }
    r.check(
        mismatches == 0 && members > 0,
        format!("osemproplectic extensions at k=3: {members} members, {mismatches} discrepancies"),
    );
    Ok(r)
}

/// Criterion 8: the closed-form signature against congruence
/// diagonalization, and congruence against a floating eigenvalue oracle.
pub fn criterion_signatures() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(8, "signature routines");
    let mut rng = ChaCha8Rng::seed_from_u64(8_2026);
    let mut fast_ok = true;
    for _ in 0..500 {
        let size = rng.gen_range(2..=9usize);
        let mut m = Matrix::zero(size, size);
        // random strictly-forward entries
        for i in 0..size {
            for j in i..size {
                if i + j < size - 1 {
                    let v = Scalar::from_int(rng.gen_range(-4..=4));
                    m.set(i, j, v.clone());
                    m.set(j, i, v);
                }
            }
        }
        // nonzero counter-diagonal, arbitrary center for odd sizes
        for i in 0..size {
            let j = size - 1 - i;
            if i < j {
                let mut v = rng.gen_range(-4..=4i64);
                if v == 0 {
                    v = 1;
                }
                m.set(i, j, Scalar::from_int(v));
                m.set(j, i, Scalar::from_int(v));
            } else if i == j {
                m.set(i, i, Scalar::from_int(rng.gen_range(-3..=3)));
            }
        }
        let b = SymBilinear::new(m)?;
        if signature_fast(&b)? != b.signature() {
            fast_ok = false;
        }
    }
    r.check(
        fast_ok,
        "closed form = congruence on 500 forward-triangular instances",
    );

    let mut eig_ok = true;
    for _ in 0..500 {
        let size = rng.gen_range(2..=9usize);
        let mut m = Matrix::zero(size, size);
        for i in 0..size {
            for j in i..size {
                let v = Scalar::from_int(rng.gen_range(-5..=5));
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        let b = SymBilinear::new(m.clone())?;
        let exact = b.signature();
        let eigs = jacobi_eigenvalues(m.to_f64());
        let pos = eigs.iter().filter(|&&x| x > 1e-9).count();
        let neg = eigs.iter().filter(|&&x| x < -1e-9).count();
        let flagged = eigs.len() - pos - neg;
        if (pos, neg, flagged) != exact {
            eig_ok = false;
        }
    }
    r.check(
        eig_ok,
        "congruence counts = eigenvalue counts on 500 dense matrices",
    );
    Ok(r)
}

/// Criterion 9: exact scaling law and the dual-form residuals.
pub fn criterion_hitchin() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(9, "volume scaling and dual form");
    r.check(
        hitchin::scaling_law(&phi0(), &Scalar::from_int(7))?,
        "phi0 at 1+lambda = 8",
    );
    r.check(
        hitchin::scaling_law(&rho_plus(), &Scalar::zero())?,
        "rho+ at lambda = 0",
    );
    r.check(
        hitchin::scaling_law(&varpi_plus(3), &Scalar::from_int(15))?,
        "varpi+(3) at 1+lambda = 16",
    );
    r.check(
        hitchin::volume_increases_under_scaling(&phi0(), &[0, 7, 26])?,
        "volume strictly increases along the cutoff scalings",
    );
    let h = Scalar::ratio(1, 10_000);
    let report = hitchin::xi_dual(&phi0(), &h)?;
    match report.candidate {
        Some((cand, c, residual)) => {
            r.check(cand == psi0(), "candidate dual of phi0 is psi0");
            r.check(
                residual < 1e-6,
                format!("proportionality residual {residual:.2e} < 1e-6"),
            );
            r.check(
                (c - 1.0 / 3.0).abs() < 1e-6,
                format!("fitted constant {c:.8}"),
            );
        }
        None => r.check(false, "no closed-form candidate for phi0"),
    }
    let lin = hitchin::pairing_linearity_residual(&rho_plus(), &h, 12, 9_2026)?;
    r.check(
        lin < 1e-6,
        format!("derivative pairing linearity residual {lin:.2e} < 1e-6"),
    );
    Ok(r)
}

/// Criterion 10: splitting invariants, Betti numbers, Whitney integration.
pub fn criterion_simplicial() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(10, "cochain splittings and Whitney forms");
    let cases: Vec<(&str, crate::simplicial::SimplicialComplex, Vec<usize>)> = vec![
        ("interval", complexes::interval(), vec![1, 0]),
        ("circle", complexes::circle(), vec![1, 1]),
        ("octahedron", complexes::octahedron(), vec![1, 0, 1]),
        ("torus7", complexes::torus7(), vec![1, 2, 1]),
        ("moebius7", complexes::moebius7(), vec![1, 1, 0]),
    ];
    for (name, k, betti) in cases {
        let s = build_splitting(&k)?;
        let invariants = verify_splitting(&k, &s).is_ok();
        r.check(invariants, format!("{name}: splitting invariants"));
        r.check(
            s.betti == betti,
            format!("{name}: betti {:?} (expected {betti:?})", s.betti),
        );
    }
    let embedded: Vec<(&str, EmbeddedComplex)> = vec![
        (
            "triangle",
            EmbeddedComplex::from_int_coords(
                complexes::triangle(),
                &[vec![0, 0], vec![1, 0], vec![0, 1]],
            )?,
        ),
        (
            "tetrahedron",
            EmbeddedComplex::from_int_coords(
                complexes::tetrahedron(),
                &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            )?,
        ),
        (
            "octahedron",
            EmbeddedComplex::from_int_coords(
                complexes::octahedron(),
                &[
                    vec![1, 0, 0],
                    vec![-1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, -1, 0],
                    vec![0, 0, 1],
                    vec![0, 0, -1],
                ],
            )?,
        ),
    ];
    for (name, e) in embedded {
        let mut kronecker = true;
        for p in 0..=e.complex().dim() {
            let simplices = e.complex().simplices(p).to_vec();
            for s in &simplices {
                let w = whitney_form(e.complex(), s)?;
                for t in &simplices {
                    let v = integrate_whitney(&e, &w, t)?;
                    let expect = if s == t {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    };
                    if v != expect {
                        kronecker = false;
                    }
                }
            }
        }
        r.check(
            kronecker,
            format!("{name}: integral of S is the identity in every degree"),
        );
        r.check(
            ones_is_constant_one(&e),
            format!("{name}: S(1) is the constant 1"),
        );
    }
    Ok(r)
}

/// Random element of the parabolic stabilizer shape, with the linear
/// constraint either satisfied or explicitly violated.
pub fn random_parabolic_stabilizer<R: Rng>(rng: &mut R, violate: bool) -> Matrix {
    let d = [
        Scalar::one(),
        Scalar::from_int(2),
        Scalar::from_int(3),
        Scalar::ratio(1, 2),
        Scalar::ratio(3, 2),
    ][rng.gen_range(0..5)]
    .clone();
    let mut v = || Scalar::from_int(rng.gen_range(-4..=4i64));
    let (e, f, k, l, mm, n, p, q, rr, s) = (v(), v(), v(), v(), v(), v(), v(), v(), v(), v());
    // constraint: o = e l / d + f m / d - k / d^2 - s
    let mut o = &(&(&e * &l) / &d) + &(&(&f * &mm) / &d) - &(&k / &(&d * &d)) - &s;
    if violate {
        let mut delta = Scalar::from_int(rng.gen_range(-3..=3i64));
        if delta.is_zero() {
            delta = Scalar::one();
        }
        o += &delta;
    }
    let dinv = d.inv();
    let mut m = Matrix::zero(6, 6);
    // columns are images of e_1..e_6
    m.set(0, 0, d.clone());
    m.set(1, 0, e.clone());
    m.set(2, 0, f.clone());
    m.set(3, 0, k);
    m.set(4, 0, n);
    m.set(5, 0, q);
    m.set(1, 1, dinv.clone());
    m.set(3, 1, l);
    m.set(4, 1, o);
    m.set(5, 1, rr);
    m.set(2, 2, dinv);
    m.set(3, 2, mm);
    m.set(4, 2, p);
    m.set(5, 2, s);
    m.set(3, 3, &d * &d);
    m.set(4, 3, &d * &e);
    m.set(5, 3, &d * &f);
    m.set(4, 4, Scalar::one());
    m.set(5, 5, Scalar::one());
    m
}

/// Criterion 11: the parabolic stabilizer family and its special-linear
/// subgroup.
pub fn criterion_parabolic_stabilizer() -> Result<CriterionResult> {
    let mut r = CriterionResult::new(11, "parabolic stabilizer");
    let mut rng = ChaCha8Rng::seed_from_u64(11_2026);
    let rho = rho0();
    let mut good = 0usize;
    for _ in 0..100 {
        let f = random_parabolic_stabilizer(&mut rng, false);
        if verify_stabilizer_element(&f, &rho)? {
            good += 1;
        }
    }
    r.check(
        good == 100,
        format!("{good}/100 constrained matrices stabilize rho0"),
    );
    let mut bad = 0usize;
    for _ in 0..100 {
        let f = random_parabolic_stabilizer(&mut rng, true);
        if !verify_stabilizer_element(&f, &rho)? {
            bad += 1;
        }
    }
    r.check(bad == 100, format!("{bad}/100 violated matrices fail"));

    // block-diagonal SL(3) action preserves rho0, the volume and the frame
    let vol = standard_volume(6);
    let h = null_frame_map(&vol)?;
    let mut sl_ok = 0usize;
    for _ in 0..50 {
        let a = hitchin::random_special_linear(&mut rng, 3, 8);
        let mut f = Matrix::zero(6, 6);
        for i in 0..3 {
            for j in 0..3 {
                f.set(i, j, a.get(i, j).clone());
                f.set(3 + i, 3 + j, a.get(i, j).clone());
            }
        }
        let fixes_rho = verify_stabilizer_element(&f, &rho)?;
        let fixes_vol = f.pullback_form(&vol)? == vol;
        let commutes = f.mul(&h) == h.mul(&f);
        if fixes_rho && fixes_vol && commutes {
            sl_ok += 1;
        }
    }
    r.check(
        sl_ok == 50,
        format!("{sl_ok}/50 diagonal SL(3) elements preserve the frame data"),
    );
    Ok(r)
}

/// Run a single criterion by its 1-based id.
pub fn run_criterion(id: usize) -> Result<CriterionResult> {
    match id {
        1 => criterion_stability(),
        2 => criterion_metric_volume(),
        3 => criterion_duality(),
        4 => criterion_restriction(),
        5 => criterion_oracle_equivalence(),
        6 => criterion_witnesses(),
        7 => criterion_extension_equivalences(),
        8 => criterion_signatures(),
        9 => criterion_hitchin(),
        10 => criterion_simplicial(),
        11 => criterion_parabolic_stabilizer(),
        _ => Err(crate::Error::invalid(format!(
            "no criterion {id} (valid: 1..=11)"
        ))),
    }
}

/// Run every acceptance criterion in order.
pub fn run_all() -> Result<Vec<CriterionResult>> {
    (1..=11).map(run_criterion).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_sampler_preserves_the_paired_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in [2u32, 3] {
            let om = omega_plus(k);
            for _ in 0..10 {
                let c = random_symplectic(&mut rng, k as usize, 6);
                assert_eq!(om.pullback(&c).unwrap(), om);
                assert_eq!(c.det(), Scalar::one());
            }
        }
    }

    #[test]
    fn jacobi_matches_known_eigenvalues() {
        // diag(3, -1) conjugated by a rotation-ish shear
        let m = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let mut eigs = jacobi_eigenvalues(m);
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] - 3.0).abs() < 1e-12);
    }
}
