//! Structural invariants of the algebra and the classification, exercised
//! over seeded random inputs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stable_forms::ample::{
    assemble, mixed_two_form_part, null_form, sample_extension_set, spacelike_form, timelike_form,
};
use stable_forms::builtins::*;
use stable_forms::exterior::PForm;
use stable_forms::hitchin::random_special_linear;
use stable_forms::matrix::Matrix;
use stable_forms::multiindex::MultiIndex;
use stable_forms::orbit::{
    classify, q_matrix, stabilizer_algebra_dim, verify_stabilizer_element, Certificate, Family,
};
use stable_forms::restrict::{
    causal_type, random_null_hyperplane_split, restrict, CausalType, OrientedHyperplane,
};
use stable_forms::scalar::Scalar;
use stable_forms::selftest::{random_form, random_symplectic};

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

#[test]
fn pullback_functoriality() {
    // (F G)^* = G^* F^* on random triples
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..25 {
        let n = 5;
        let p = rng.gen_range(1..=3u32);
        let alpha = random_form(&mut rng, n, p, 4);
        let f = random_special_linear(&mut rng, n as usize, 8);
        let g = random_special_linear(&mut rng, n as usize, 8);
        let fg = f.mul(&g);
        let lhs = alpha.pullback(&fg).unwrap();
        let rhs = alpha.pullback(&f).unwrap().pullback(&g).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn stable_seven_dim_forms_have_nondegenerate_q() {
    // whenever the stabilizer-rank test says stable, det Q != 0
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut stable_seen = 0;
    for _ in 0..100 {
        let phi = random_form(&mut rng, 7, 3, 3);
        let info = stabilizer_algebra_dim(&phi);
        if info.stable {
            stable_seen += 1;
            let q = q_matrix(&phi).unwrap();
            assert!(!q.det().is_zero(), "stable form with degenerate Q: {phi}");
        }
    }
    assert!(
        stable_seen >= 50,
        "sampler found too few stable forms: {stable_seen}"
    );
}

#[test]
fn classification_is_equivariant_at_family_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let cases: Vec<(PForm, Family)> = vec![
        (phi0(), Family::G2),
        (svphi0(), Family::G2Tilde),
        (rho_plus(), Family::Sl3R),
        (rho_minus(), Family::Sl3C),
        (omega_plus(3), Family::Emproplectic),
        (varpi_plus(3), Family::Osemproplectic),
        (varpi_plus(4), Family::Osemproplectic),
        (mu0(2), Family::Pseudoplectic),
        (xi0(2), Family::Ospseudoplectic),
    ];
    for (sigma, family) in cases {
        for _ in 0..8 {
            let f = random_special_linear(&mut rng, sigma.n() as usize, 10);
            let pulled = sigma.pullback(&f).unwrap();
            assert_eq!(
                classify(&pulled).unwrap().family,
                family,
                "family of pullback of {family}"
            );
        }
    }
    // orientation-reversing maps: odd k preserves the component, even k swaps
    for _ in 0..8 {
        let mut j = Matrix::identity(6);
        j.set(0, 0, s(-1));
        let f = random_special_linear(&mut rng, 6, 8).mul(&j);
        let pulled = varpi_plus(3).pullback(&f).unwrap();
        assert_eq!(classify(&pulled).unwrap().family, Family::Osemproplectic);
    }
    for _ in 0..8 {
        let mut j = Matrix::identity(8);
        j.set(0, 0, s(-1));
        let f = random_special_linear(&mut rng, 8, 8).mul(&j);
        let pulled = varpi_plus(4).pullback(&f).unwrap();
        assert_eq!(classify(&pulled).unwrap().family, Family::Ospisoplectic);
    }
}

#[test]
fn hitchin_endomorphism_squares_to_lambda() {
    // K^2 = Lambda Id for stable 6d 3-forms of either sign, as a scaled
    // exact identity
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut seen = (0, 0);
    for _ in 0..60 {
        let rho = random_form(&mut rng, 6, 3, 3);
        let label = classify(&rho).unwrap();
        match &label.certificate {
            Certificate::Sl3R {
                lambda, hitchin, ..
            } => {
                seen.0 += 1;
                assert_eq!(hitchin.mul(hitchin), Matrix::identity(6).scale(lambda));
            }
            Certificate::Sl3C {
                lambda, hitchin, ..
            } => {
                seen.1 += 1;
                assert_eq!(hitchin.mul(hitchin), Matrix::identity(6).scale(lambda));
                assert!(lambda.is_negative());
            }
            _ => {}
        }
    }
    assert!(
        seen.0 > 0 && seen.1 > 0,
        "sampler missed an orbit: {seen:?}"
    );
}

#[test]
fn stabilizer_block_shapes() {
    // lower block-triangular maps  [A 0; B det(A)^(-1/2) C]  with C
    // symplectic stabilize th^{12} ∧ (shifted 2-form); breaking the zero
    // block breaks the stabilization
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let m = 2; // alpha = omega_+(2) on the last 4 coordinates
    let alpha = omega_plus(m).shift_embed(6, 2);
    let sigma = PForm::basis(6, &[1, 2]).wedge(&alpha).unwrap();
    for _ in 0..20 {
        // A: 2x2 with determinant a perfect square s^2
        let sq = rng.gen_range(1..=3i64);
        let mut a = Matrix::from_rows(vec![
            vec![s(sq * sq), s(rng.gen_range(-3..=3))],
            vec![s(0), s(1)],
        ]);
        // conjugate by a shear to fill it in
        let mut l = Matrix::identity(2);
        l.set(1, 0, s(rng.gen_range(-2..=2)));
        a = l.mul(&a.mul(&l.inverse().unwrap()));
        let c = random_symplectic(&mut rng, m as usize, 6);
        let scale = Scalar::ratio(1, sq); // det(A)^(-1/2)
        let mut f = Matrix::zero(6, 6);
        for i in 0..2 {
            for j in 0..2 {
                f.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..4 {
            for j in 0..2 {
                f.set(2 + i, j, s(rng.gen_range(-3..=3)));
            }
            for j in 0..4 {
                f.set(2 + i, 2 + j, c.get(i, j) * &scale);
            }
        }
        assert!(
            verify_stabilizer_element(&f, &sigma).unwrap(),
            "block matrix must stabilize"
        );
        // violate the zero block
        let mut bad = f.clone();
        bad.set(0, 3, s(1));
        assert!(
            !verify_stabilizer_element(&bad, &sigma).unwrap(),
            "violated block must not stabilize"
        );
    }
}

#[test]
fn restriction_commutes_with_stabilizer_action() {
    // for F in the stabilizer of sigma, the restrictions to B and F(B)
    // classify identically
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let sigma = svphi0();
    // orientation-preserving stabilizer elements of svphi0: use the
    // explicitly known involution-free subgroup generated from the split
    // G2 form is hard to sample; instead verify with the identity
    // component generated by exponentiating nothing -- use the known
    // element F: diag pattern preserving svpsi0/svphi0
    let f = Matrix::diag(&[1, -1, -1, 1, 1, -1, -1]);
    assert!(verify_stabilizer_element(&f, &sigma).unwrap());
    for _ in 0..20 {
        let rows: Vec<Vec<i64>> = (0..6)
            .map(|_| (0..7).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let Ok(plane) = OrientedHyperplane::from_int_rows(&rows) else {
            continue;
        };
        let moved_basis = f.mul(plane.basis());
        let Ok(moved) = OrientedHyperplane::new(moved_basis) else {
            continue;
        };
        let a = classify(&restrict(&sigma, &plane).unwrap()).unwrap();
        let b = classify(&restrict(&sigma, &moved).unwrap()).unwrap();
        assert_eq!(a.family, b.family);
    }
}

#[test]
fn two_hundred_null_restrictions_are_never_stable() {
    let g = gtilde0();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..200 {
        let plane = random_null_hyperplane_split(&mut rng, &g, 9).unwrap();
        assert_eq!(causal_type(&plane, &g).unwrap(), CausalType::Null);
        let rho = restrict(&svphi0(), &plane).unwrap();
        let label = classify(&rho).unwrap();
        assert!(!label.stable, "null restriction classified stable: {rho}");
        // Lambda = 0: the label is parabolic or degenerate
        assert!(matches!(
            label.family,
            Family::Parabolic6dCandidate | Family::Degenerate
        ));
    }
}

#[test]
fn negation_closure_under_orientation_reversing_symmetry() {
    // target orbits preserved by an orientation-reversing automorphism
    // have extension sets closed under negation; the SL3C orbit and the
    // split 4-form orbit both qualify (the split 3-form orbit does not,
    // which is why it needs explicit hull witnesses instead)
    let tau5 = {
        // restriction of rho_- to <e_2..e_6>, a 3-form on R^5
        let plane = OrientedHyperplane::from_int_rows(&[
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
        ])
        .unwrap();
        restrict(&rho_minus(), &plane).unwrap()
    };
    let report = sample_extension_set(Family::Sl3C, &tau5, 150, 108).unwrap();
    assert!(!report.accepted.is_empty());
    for nu in report.accepted.iter().take(25) {
        assert!(
            stable_forms::ample::membership(Family::Sl3C, &tau5, &(-nu)).unwrap(),
            "negation left the extension set over the SL3C orbit"
        );
    }
    // 4-form side: tau on R^6 of degree 4, nu of degree 3
    let tau = restrict(
        &svpsi0(),
        &OrientedHyperplane::from_int_rows(&[
            vec![0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 1],
        ])
        .unwrap(),
    )
    .unwrap();
    let report = sample_extension_set(Family::G2Tilde, &tau, 150, 109).unwrap();
    assert!(!report.accepted.is_empty());
    for nu in report.accepted.iter().take(25) {
        assert!(
            stable_forms::ample::membership(Family::G2Tilde, &tau, &(-nu)).unwrap(),
            "negation left the extension set over the 4-form restriction"
        );
    }
}

/// Closed-form decompositions of the quadratic invariant for the three assembled
/// extension types, as exact matrix identities.
#[test]
fn q_matrix_identities_for_assembled_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);

    // timelike: 6Q = a^2 th ∧ om^3 + 3 I(om)(u,u) th ∧ vol on mixed om
    for _ in 0..15 {
        let raw = random_form(&mut rng, 6, 2, 4);
        let label = classify(&rho_plus()).unwrap();
        let Certificate::Sl3R {
            lambda, hitchin, ..
        } = &label.certificate
        else {
            panic!()
        };
        let om = mixed_two_form_part(hitchin, lambda, &raw).unwrap();
        let sigma = assemble(&rho_plus(), &om).unwrap();
        let q = q_matrix(&sigma).unwrap().scale(&s(6));
        let h = om.wedge_power(3).unwrap().top_coefficient();
        let i_form = timelike_form(&rho_plus(), &om).unwrap();
        let mut expect = Matrix::zero(7, 7);
        expect.set(0, 0, h);
        for i in 0..6 {
            for j in 0..6 {
                expect.set(1 + i, 1 + j, i_form.sym.matrix().get(i, j) * &s(3));
            }
        }
        assert_eq!(q, expect);
    }

    // spacelike: 6Q = a^2 th ∧ om^3 + 6 J(om)(u,u) th ∧ vol on J-invariant om
    for _ in 0..15 {
        let raw = random_form(&mut rng, 6, 2, 4);
        let label = classify(&rho_minus()).unwrap();
        let Certificate::Sl3C {
            lambda, hitchin, ..
        } = &label.certificate
        else {
            panic!()
        };
        // J-invariant projection: om + K^* om / lambda halved (K^2 = lambda)
        let mut om = PForm::zero(6, 2);
        {
            let n = 6usize;
            let mut basis: Vec<Vec<Scalar>> = Vec::new();
            for i in 0..n {
                let mut e = vec![Scalar::zero(); n];
                e[i] = Scalar::one();
                basis.push(e);
            }
            let images: Vec<Vec<Scalar>> = (0..n).map(|i| hitchin.mul_vec(&basis[i])).collect();
            let inv_lambda = lambda.inv();
            for i in 0..n {
                for j in (i + 1)..n {
                    let direct = raw.eval(&[&basis[i], &basis[j]]);
                    let pulled = raw.eval(&[&images[i], &images[j]]) * &inv_lambda;
                    om.add_term(
                        &[(i + 1) as u32, (j + 1) as u32],
                        (direct + pulled) * Scalar::ratio(1, 2),
                    );
                }
            }
        }
        let sigma = assemble(&rho_minus(), &om).unwrap();
        let q = q_matrix(&sigma).unwrap().scale(&s(6));
        let h = om.wedge_power(3).unwrap().top_coefficient();
        let j_form = spacelike_form(&rho_minus(), &om).unwrap();
        let mut expect = Matrix::zero(7, 7);
        expect.set(0, 0, h);
        for i in 0..6 {
            for j in 0..6 {
                expect.set(1 + i, 1 + j, j_form.sym.matrix().get(i, j) * &s(6));
            }
        }
        assert_eq!(q, expect);
    }

    // null: 6Q = a^2 th ∧ om^3 - 6a th ∧ (u ⌟ om) ∧ om ∧ rho0
    //            + 6 H(om)(u,u) th ∧ vol, on the 9-dim mixed span
    let mixed_basis: Vec<PForm> = {
        let b = |idx: &[u32]| PForm::basis(6, idx);
        vec![
            b(&[1, 4]),
            b(&[2, 5]),
            b(&[3, 6]),
            b(&[4, 5]),
            b(&[4, 6]),
            b(&[5, 6]),
            &b(&[1, 5]) + &b(&[2, 4]),
            &b(&[1, 6]) + &b(&[3, 4]),
            &b(&[2, 6]) + &b(&[3, 5]),
        ]
    };
    for _ in 0..15 {
        let mut om = PForm::zero(6, 2);
        for basis_form in &mixed_basis {
            om = &om + &basis_form.scale(&s(rng.gen_range(-4..=4)));
        }
        let sigma = assemble(&rho0(), &om).unwrap();
        let q = q_matrix(&sigma).unwrap().scale(&s(6));
        let h = om.wedge_power(3).unwrap().top_coefficient();
        let h_form = null_form(&rho0(), &standard_volume(6), &om).unwrap();
        let mut expect = Matrix::zero(7, 7);
        expect.set(0, 0, h);
        for i in 0..6 {
            for j in 0..6 {
                expect.set(1 + i, 1 + j, h_form.sym.matrix().get(i, j) * &s(6));
            }
        }
        // cross terms: Q(e_1, e_{j+1}) = -3 c(e_j) with
        // (u ⌟ om) ∧ om ∧ rho0 = c(u) th^{1..6}
        for j in 0..6u32 {
            let mut e = vec![Scalar::zero(); 6];
            e[j as usize] = Scalar::one();
            let c = om
                .interior(&e)
                .unwrap()
                .wedge(&om)
                .unwrap()
                .wedge(&rho0())
                .unwrap()
                .top_coefficient();
            expect.set(0, (j + 1) as usize, &c * &s(-3));
            expect.set((j + 1) as usize, 0, &c * &s(-3));
        }
        assert_eq!(q, expect);
    }
}

#[test]
fn null_flat_map_kernel_meets_the_nilpotent_kernel() {
    // for every 2-form om, the flat map of H(om) restricted to
    // <e_4, e_5, e_6> maps into <e_1, e_2, e_3>^* through an antisymmetric
    // 3x3 system, hence has nontrivial kernel there
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let vol = standard_volume(6);
    for _ in 0..60 {
        let om = random_form(&mut rng, 6, 2, 5);
        let b = null_form(&rho0(), &vol, &om).unwrap();
        let m = b.sym.matrix();
        // rows 4..6 against all columns
        let mut sub = Matrix::zero(3, 6);
        for i in 0..3 {
            for j in 0..6 {
                sub.set(i, j, m.get(3 + i, j).clone());
            }
        }
        // columns 4..6 of the restricted map vanish
        for i in 0..3 {
            for j in 3..6 {
                assert!(sub.get(i, j).is_zero());
            }
        }
        // the 3x3 block is antisymmetric (the eps-system), so rank < 3
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(sub.get(i, j), &-m.get(3 + j, i).clone());
            }
        }
        assert!(
            sub.rank() < 3,
            "flat map unexpectedly injective on the kernel"
        );
        // the system entries are half the th^{45}, th^{46}, th^{56}
        // coefficients, with the antisymmetric sign pattern
        let half = Scalar::ratio(1, 2);
        let l1 = om.coeff(MultiIndex::from_sorted(&[4, 5])) * &half;
        let l2 = om.coeff(MultiIndex::from_sorted(&[4, 6])) * &half;
        let l3 = om.coeff(MultiIndex::from_sorted(&[5, 6])) * &half;
        assert_eq!(m.get(3, 1), &-l1.clone());
        assert_eq!(m.get(4, 0), &l1);
        assert_eq!(m.get(3, 2), &-l2.clone());
        assert_eq!(m.get(5, 0), &l2);
        assert_eq!(m.get(4, 2), &-l3.clone());
        assert_eq!(m.get(5, 1), &l3);
    }
}

#[test]
fn scale_invariance_of_extension_sets() {
    // members stay members under positive scalings (two sample families)
    let report = sample_extension_set(Family::G2Tilde, &rho_plus(), 100, 112).unwrap();
    assert!(!report.accepted.is_empty());
    for nu in report.accepted.iter().take(15) {
        for lam in [
            Scalar::from_int(2),
            Scalar::ratio(1, 3),
            Scalar::from_int(7),
        ] {
            assert!(
                stable_forms::ample::membership(Family::G2Tilde, &rho_plus(), &nu.scale(&lam))
                    .unwrap()
            );
        }
    }
}
