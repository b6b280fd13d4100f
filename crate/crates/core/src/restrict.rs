//! Oriented hyperplanes, restriction of forms, causal typing and surveys.

use crate::exterior::PForm;
use crate::matrix::Matrix;
use crate::metric::PseudoMetric;
use crate::orbit::{classify, Family};
use crate::scalar::Scalar;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// An oriented hyperplane in `R^n`: an ordered basis of `n-1` vectors
/// (the order fixes the orientation) together with a complement vector `u`
/// such that `(u, basis)` is positively oriented in `R^n`.
#[derive(Clone, Debug)]
pub struct OrientedHyperplane {
    n: u32,
    /// `n x (n-1)` matrix whose columns are the basis vectors.
    basis: Matrix,
    complement: Vec<Scalar>,
}

impl OrientedHyperplane {
    /// Build from basis columns; the complement is chosen automatically
    /// among the standard basis vectors.
    pub fn new(basis: Matrix) -> Result<Self> {
        let n = basis.rows() as u32;
        if basis.cols() + 1 != basis.rows() {
            return Err(Error::invalid("hyperplane basis must have n-1 vectors"));
        }
        for i in 0..n {
            let mut u = vec![Scalar::zero(); n as usize];
            u[i as usize] = Scalar::one();
            match Self::with_complement(basis.clone(), u) {
                Ok(h) => return Ok(h),
                Err(_) => continue,
            }
        }
        Err(Error::degenerate("hyperplane basis is linearly dependent"))
    }

    /// Build from basis columns and an explicit complement vector; fails if
    /// `u` lies in the span.  The complement is flipped if needed so that
    /// `(u, basis)` is positively oriented.
    pub fn with_complement(basis: Matrix, mut u: Vec<Scalar>) -> Result<Self> {
        let n = basis.rows();
        if basis.cols() + 1 != n || u.len() != n {
            return Err(Error::invalid("hyperplane data has wrong dimensions"));
        }
        let full = Matrix::from_fn(n, n, |i, j| {
            if j == 0 {
                u[i].clone()
            } else {
                basis.get(i, j - 1).clone()
            }
        });
        let det = full.det();
        match det.signum() {
            0 => Err(Error::degenerate("complement lies in the hyperplane")),
            1 => Ok(OrientedHyperplane {
                n: n as u32,
                basis,
                complement: u,
            }),
            _ => {
                for c in u.iter_mut() {
                    *c = -&*c;
                }
                Ok(OrientedHyperplane {
                    n: n as u32,
                    basis,
                    complement: u,
                })
            }
        }
    }

    /// Convenience: each row of `rows` is a basis vector with integer
    /// entries.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let mat = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
        .transpose();
        Self::new(mat)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn complement(&self) -> &[Scalar] {
        &self.complement
    }
}

/// Pull a form back along the inclusion of the hyperplane; the result lives
/// on `R^{n-1}` in the coordinates of the ordered basis.
pub fn restrict(sigma: &PForm, plane: &OrientedHyperplane) -> Result<PForm> {
    if sigma.n() != plane.n() {
        return Err(Error::DimensionMismatch(sigma.n(), plane.n()));
    }
    sigma.pullback(plane.basis())
}

/// Causal type of a hyperplane with respect to a pseudo-metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CausalType {
    Spacelike,
    Timelike,
    Null,
}

impl std::fmt::Display for CausalType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CausalType::Spacelike => "spacelike",
            CausalType::Timelike => "timelike",
            CausalType::Null => "null",
        })
    }
}

/// Type of the `g`-orthocomplement line of the hyperplane: spacelike,
/// timelike or null according to the sign of `g(v, v)`.
pub fn causal_type(plane: &OrientedHyperplane, g: &PseudoMetric) -> Result<CausalType> {
    if g.n() != plane.n() {
        return Err(Error::DimensionMismatch(g.n(), plane.n()));
    }
    let bt_g = plane.basis.transpose().mul(g.matrix());
    let kernel = bt_g.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::degenerate("hyperplane basis is degenerate"));
    }
    let v = &kernel[0];
    match g.inner_vectors(v, v).signum() {
        1 => Ok(CausalType::Spacelike),
        -1 => Ok(CausalType::Timelike),
        _ => Ok(CausalType::Null),
    }
}

/// Outcome of [`restriction_survey`].
#[derive(Clone, Debug, Default)]
pub struct Survey {
    pub buckets: BTreeMap<(Option<CausalType>, String), usize>,
    pub count: usize,
}

impl Survey {
    fn record(&mut self, ct: Option<CausalType>, family: Family) {
        *self
            .buckets
            .entry((ct, family.name().to_string()))
            .or_insert(0) += 1;
        self.count += 1;
    }

    /// True when at least one sample of the given causal type was seen and
    /// every one of them landed in `family`.
    pub fn all_of_type(&self, ct: CausalType, family: &str) -> bool {
        let mut seen = 0usize;
        for ((t, f), c) in &self.buckets {
            if *t == Some(ct) {
                if f != family {
                    return false;
                }
                seen += c;
            }
        }
        seen > 0
    }
}

/// Draw a random integer hyperplane (entries in `[-bound, bound]`),
/// rejecting degenerate spans.
pub fn random_hyperplane<R: Rng>(rng: &mut R, n: u32, bound: i64) -> OrientedHyperplane {
    loop {
        let rows: Vec<Vec<i64>> = (0..n - 1)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        if let Ok(h) = OrientedHyperplane::from_int_rows(&rows) {
            return h;
        }
    }
}

/// Decompose `m >= 0` as a sum of four squares by brute force.
fn four_squares(m: i64) -> [i64; 4] {
    let r = (m as f64).sqrt() as i64 + 1;
    for a in 0..=r {
        let ra = m - a * a;
        if ra < 0 {
            break;
        }
        for b in a..=r {
            let rb = ra - b * b;
            if rb < 0 {
                break;
            }
            for c in b..=r {
                let rc = rb - c * c;
                if rc < 0 {
                    break;
                }
                let d = (rc as f64).sqrt() as i64;
                for dd in [d, d + 1] {
                    if dd >= 0 && dd * dd == rc {
                        return [a, b, c, dd];
                    }
                }
            }
        }
    }
    unreachable!("every non-negative integer is a sum of four squares")
}

/// Construct a random null hyperplane of the split metric
/// `diag(1,1,1,-1,-1,-1,-1)` on `R^7`.  Null planes have measure zero, so
/// they are built constructively: an integer spatial part, a four-square
/// decomposition of its norm for the timelike part, and the orthogonal
/// completion of the resulting null normal.
pub fn random_null_hyperplane_split<R: Rng>(
    rng: &mut R,
    g: &PseudoMetric,
    bound: i64,
) -> Result<OrientedHyperplane> {
    assert_eq!(g.n(), 7);
    loop {
        let x: Vec<i64> = (0..3).map(|_| rng.gen_range(-bound..=bound)).collect();
        let norm: i64 = x.iter().map(|v| v * v).sum();
        if norm == 0 {
            continue;
        }
        let mut y: Vec<i64> = four_squares(norm).to_vec();
        for v in y.iter_mut() {
            if rng.gen_bool(0.5) {
                *v = -*v;
            }
        }
        for i in (1..4).rev() {
            let j = rng.gen_range(0..=i);
            y.swap(i, j);
        }
        let v: Vec<Scalar> = x
            .iter()
            .chain(y.iter())
            .map(|&c| Scalar::from_int(c))
            .collect();
        debug_assert!(g.inner_vectors(&v, &v).is_zero());
        // the hyperplane is the g-orthocomplement of the null line (and
        // contains it)
        let row = Matrix::from_rows(vec![g.matrix().mul_vec(&v)]);
        let kernel = row.kernel_basis();
        if kernel.len() != 6 {
            continue;
        }
        let basis = Matrix::from_rows(kernel).transpose();
        if let Ok(h) = OrientedHyperplane::new(basis) {
            return Ok(h);
        }
    }
}

/// Sample `count` hyperplanes (seeded, reproducible), classify the
/// restriction of `sigma` to each, and bucket outcomes by causal type.
/// When the metric is the standard split one on `R^7`, a third of the
/// samples are constructed null; random integer planes almost never are.
pub fn restriction_survey(
    sigma: &PForm,
    g: Option<&PseudoMetric>,
    count: usize,
    seed: u64,
) -> Result<Survey> {
    if count == 0 {
        return Err(Error::invalid("count must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut survey = Survey::default();
    let split_null = g
        .map(|m| m.n() == 7 && m.matrix() == &Matrix::diag(&[1, 1, 1, -1, -1, -1, -1]))
        .unwrap_or(false);
    for i in 0..count {
        let plane = if split_null && i % 3 == 2 {
            random_null_hyperplane_split(&mut rng, g.unwrap(), 9)?
        } else {
            random_hyperplane(&mut rng, sigma.n(), 9)
        };
        let ct = match g {
            Some(metric) => Some(causal_type(&plane, metric)?),
            None => None,
        };
        let restricted = restrict(sigma, &plane)?;
        let label = classify(&restricted)?;
        survey.record(ct, label.family);
    }
    Ok(survey)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn coord_plane(rows: &[Vec<i64>]) -> OrientedHyperplane {
        OrientedHyperplane::from_int_rows(rows).unwrap()
    }

    fn e2_to_e7() -> OrientedHyperplane {
        coord_plane(&[
            vec![0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 1],
        ])
    }

    #[test]
    fn named_restrictions_of_split_g2_forms() {
        // svphi0 to <e2..e7> is the standard SL(3,C) form
        let r = restrict(&svphi0(), &e2_to_e7()).unwrap();
        assert_eq!(r, rho_minus());

        // 2*svphi1 to <e1,e5,e6,-e2,e3,e7> is the standard SL(3,R)^2 form
        let plane = coord_plane(&[
            vec![1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0],
            vec![0, -1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1],
        ]);
        let two_svphi1 = svphi1().scale(&s(2));
        assert_eq!(restrict(&two_svphi1, &plane).unwrap(), rho_plus());

        // 2*svphi1 to <e2..e7> is the parabolic form
        assert_eq!(restrict(&two_svphi1, &e2_to_e7()).unwrap(), rho0());
    }

    #[test]
    fn causal_types_of_named_planes() {
        let g = gtilde0();
        assert_eq!(causal_type(&e2_to_e7(), &g).unwrap(), CausalType::Spacelike);

        let b_minus = coord_plane(&[
            vec![1, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0],
        ]);
        assert_eq!(causal_type(&b_minus, &g).unwrap(), CausalType::Timelike);

        let b_null = coord_plane(&[
            vec![1, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0, 0, 1],
        ]);
        assert_eq!(causal_type(&b_null, &g).unwrap(), CausalType::Null);
    }

    #[test]
    fn survey_buckets_split_g2() {
        let survey = restriction_survey(&svphi0(), Some(&gtilde0()), 60, 17).unwrap();
        assert_eq!(survey.count, 60);
        assert!(survey.all_of_type(CausalType::Spacelike, "SL3C"));
        assert!(survey.all_of_type(CausalType::Timelike, "SL3R"));
        for (t, f) in survey.buckets.keys() {
            if *t == Some(CausalType::Null) {
                assert!(f == "Parabolic6dCandidate" || f == "Degenerate");
            }
        }
    }

    #[test]
    fn survey_euclidean_g2_all_sl3c() {
        let survey = restriction_survey(&phi0(), Some(&g0()), 40, 5).unwrap();
        assert!(survey.all_of_type(CausalType::Spacelike, "SL3C"));
        assert_eq!(survey.buckets.len(), 1);
    }

    #[test]
    fn null_sampler_produces_null_planes() {
        let g = gtilde0();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let h = random_null_hyperplane_split(&mut rng, &g, 9).unwrap();
            assert_eq!(causal_type(&h, &g).unwrap(), CausalType::Null);
            let r = restrict(&svphi0(), &h).unwrap();
            let label = classify(&r).unwrap();
            assert!(!label.stable);
        }
    }
}
