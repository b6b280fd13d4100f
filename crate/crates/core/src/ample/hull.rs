//! Exact convex-hull-contains-zero certificates via phase-1 simplex.
//!
//! The feasibility problem is `sum λ_i ν_i = 0`, `sum λ_i = 1`, `λ >= 0`
//! over the exact scalar field.  Bland's rule guards against cycling.  A
//! feasible optimum yields convex coefficients; an infeasible one yields a
//! Farkas functional that is strictly positive on every input point.  Both
//! certificates are re-verified by substitution before they are returned.

use crate::exterior::PForm;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Certificate that `0` lies in the convex hull of a finite set of forms,
/// or a separating functional refuting it.
#[derive(Clone, Debug)]
pub enum HullCertificate {
    /// Nonnegative coefficients summing to 1 with `sum λ_i ν_i = 0`.
    Combination { coefficients: Vec<Scalar> },
    /// A functional (expressed over the same multi-index basis) whose
    /// pairing with every input point is at least `min_value > 0`.
    Refutation {
        functional: PForm,
        min_value: Scalar,
    },
}

/// Decide whether `0 ∈ Conv(points)` with an exact certificate.
pub fn zero_in_hull(points: &[PForm]) -> Result<HullCertificate> {
    if points.is_empty() {
        return Err(Error::invalid("empty point list"));
    }
    let n = points[0].n();
    let p = points[0].degree();
    for q in points {
        if q.n() != n || q.degree() != p {
            return Err(Error::invalid("points live in different spaces"));
        }
    }
    let coords: Vec<Vec<Scalar>> = points.iter().map(|f| f.dense_coefficients()).collect();
    let dim = coords[0].len();
    let m = points.len();
    let rows = dim + 1;

    // b = (0,...,0,1) is already nonnegative; one artificial per row.
    let mut tableau: Vec<Vec<Scalar>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row: Vec<Scalar> = Vec::with_capacity(m + rows + 1);
        for j in 0..m {
            row.push(if r < dim {
                coords[j][r].clone()
            } else {
                Scalar::one()
            });
        }
        for a in 0..rows {
            row.push(if a == r {
                Scalar::one()
            } else {
                Scalar::zero()
            });
        }
        row.push(if r < dim {
            Scalar::zero()
        } else {
            Scalar::one()
        });
        tableau.push(row);
    }
    let total_cols = m + rows; // excluding RHS
    let mut basis: Vec<usize> = (m..m + rows).collect();

    // cost: 1 on artificials, 0 on originals; objective row z_j - c_j
    let cost = |j: usize| -> Scalar {
        if j < m {
            Scalar::zero()
        } else {
            Scalar::one()
        }
    };

    loop {
        // reduced costs: c_j - sum_i c_{B_i} T[i][j]
        let mut entering = None;
        for j in 0..total_cols {
            if basis.contains(&j) {
                continue;
            }
            let mut z = Scalar::zero();
            for (i, &bi) in basis.iter().enumerate() {
                let cb = cost(bi);
                if !cb.is_zero() && !tableau[i][j].is_zero() {
                    z += &(&cb * &tableau[i][j]);
                }
            }
            let reduced = cost(j) - z;
            if reduced.is_negative() {
                entering = Some(j); // Bland: first improving index
                break;
            }
        }
        let Some(e) = entering else { break };
        // ratio test with Bland tie-break on basis index
        let mut leave: Option<(usize, Scalar)> = None;
        for i in 0..rows {
            if tableau[i][e].is_positive() {
                let ratio = &tableau[i][total_cols] / &tableau[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            return Err(Error::invalid("unbounded phase-1 problem"));
        };
        // pivot on (l, e)
        let piv = tableau[l][e].clone();
        let inv = piv.inv();
        for v in tableau[l].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != l && !tableau[i][e].is_zero() {
                let f = tableau[i][e].clone();
                for j in 0..=total_cols {
                    let delta = &f * &tableau[l][j];
                    tableau[i][j] = &tableau[i][j] - &delta;
                }
            }
        }
        basis[l] = e;
    }

    // objective value: sum of artificial basic variables
    let mut objective = Scalar::zero();
    for (i, &bi) in basis.iter().enumerate() {
        if bi >= m {
            objective += &tableau[i][total_cols];
        }
    }

    if objective.is_zero() {
        let mut lambda = vec![Scalar::zero(); m];
        for (i, &bi) in basis.iter().enumerate() {
            if bi < m {
                lambda[bi] = tableau[i][total_cols].clone();
            }
        }
        verify_combination(points, &lambda)?;
        Ok(HullCertificate::Combination {
            coefficients: lambda,
        })
    } else {
        // Farkas: y = c_B B^{-1} is read off the artificial columns; then
        // y^T A_j <= 0 for all original columns and y^T b > 0.
        let mut y = vec![Scalar::zero(); rows];
        for (r, yr) in y.iter_mut().enumerate() {
            let col = m + r;
            for (i, &bi) in basis.iter().enumerate() {
                let cb = cost(bi);
                if !cb.is_zero() && !tableau[i][col].is_zero() {
                    *yr += &(&cb * &tableau[i][col]);
                }
            }
        }
        // functional f = -y[0..dim] paired with points; offset y[dim]
        let all = crate::multiindex::MultiIndex::all(n, p);
        let mut functional = PForm::zero(n, p);
        for (r, idx) in all.iter().enumerate() {
            if !y[r].is_zero() {
                functional.insert_raw(*idx, -&y[r]);
            }
        }
        let min_value = y[dim].clone();
        if !min_value.is_positive() {
            return Err(Error::invalid(
                "simplex produced a non-positive Farkas witness",
            ));
        }
        for q in points {
            if q.pair(&functional) < min_value {
                return Err(Error::invalid("Farkas functional failed verification"));
            }
        }
        Ok(HullCertificate::Refutation {
            functional,
            min_value,
        })
    }
}

fn verify_combination(points: &[PForm], lambda: &[Scalar]) -> Result<()> {
    let mut total = Scalar::zero();
    let mut sum = PForm::zero(points[0].n(), points[0].degree());
    for (q, l) in points.iter().zip(lambda.iter()) {
        if l.is_negative() {
            return Err(Error::invalid("negative hull coefficient"));
        }
        total += l;
        sum = &sum + &q.scale(l);
    }
    if total != Scalar::one() || !sum.is_zero() {
        return Err(Error::invalid("hull combination failed verification"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::PForm;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn symmetric_pair() {
        let nu = PForm::from_terms(4, 2, &[(&[1, 2], s(3)), (&[3, 4], s(-1))]);
        let points = vec![nu.clone(), -&nu];
        match zero_in_hull(&points).unwrap() {
            HullCertificate::Combination { coefficients } => {
                assert_eq!(coefficients, vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
            }
            _ => panic!("expected combination"),
        }
    }

    #[test]
    fn single_point_refuted() {
        let nu = PForm::basis(4, &[1, 2]);
        match zero_in_hull(std::slice::from_ref(&nu)).unwrap() {
            HullCertificate::Refutation {
                functional,
                min_value,
            } => {
                assert!(min_value.is_positive());
                assert!(nu.pair(&functional) >= min_value);
            }
            _ => panic!("expected refutation"),
        }
    }

    #[test]
    fn three_equal_weights() {
        // om1 + om2 + om3 = 0 with pairwise independent points
        let om1 = PForm::from_terms(6, 2, &[(&[1, 4], s(2)), (&[2, 5], s(-1)), (&[3, 6], s(-1))]);
        let om2 = PForm::from_terms(6, 2, &[(&[1, 4], s(-1)), (&[2, 5], s(2)), (&[3, 6], s(-1))]);
        let om3 = PForm::from_terms(6, 2, &[(&[1, 4], s(-1)), (&[2, 5], s(-1)), (&[3, 6], s(2))]);
        match zero_in_hull(&[om1, om2, om3]).unwrap() {
            HullCertificate::Combination { coefficients } => {
                let third = Scalar::ratio(1, 3);
                assert_eq!(coefficients, vec![third.clone(), third.clone(), third]);
            }
            _ => panic!("expected combination"),
        }
    }

    #[test]
    fn shifted_cloud_refuted() {
        // all points have th^{12}-coefficient >= 1
        let mut pts = Vec::new();
        for a in -2..=2i64 {
            let f = PForm::from_terms(4, 2, &[(&[1, 2], s(3)), (&[1, 3], s(a)), (&[2, 4], s(-a))]);
            pts.push(f);
        }
        match zero_in_hull(&pts).unwrap() {
            HullCertificate::Refutation {
                functional,
                min_value,
            } => {
                assert!(min_value.is_positive());
                for q in &pts {
                    assert!(q.pair(&functional) >= min_value);
                }
            }
            _ => panic!("expected refutation"),
        }
    }

    #[test]
    fn random_exactness() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let m = rng.gen_range(2..8);
            let pts: Vec<PForm> = (0..m)
                .map(|_| crate::selftest::random_form(&mut rng, 4, 2, 4))
                .collect();
            match zero_in_hull(&pts).unwrap() {
                HullCertificate::Combination { coefficients } => {
                    let mut total = Scalar::zero();
                    let mut sum = PForm::zero(4, 2);
                    for (q, l) in pts.iter().zip(&coefficients) {
                        assert!(!l.is_negative());
                        total += l;
                        sum = &sum + &q.scale(l);
                    }
                    assert_eq!(total, Scalar::one());
                    assert!(sum.is_zero());
                }
                HullCertificate::Refutation {
                    functional,
                    min_value,
                } => {
                    assert!(min_value.is_positive());
                    for q in &pts {
                        assert!(q.pair(&functional) >= min_value);
                    }
                }
            }
        }
    }
}
