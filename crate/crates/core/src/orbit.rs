//! Stability testing and orbit classification of exterior forms.
//!
//! Stability of a p-form is decided by the rank of the infinitesimal
//! `gl(n)`-action; the classifiers below additionally return the geometric
//! certificates attached to each open-orbit family (volume squares, para-
//! complex and complex structures, induced metrics, kernel lines and
//! hyperplanes).  Square roots that do not exist in the scalar field are
//! never taken: certificates are carried in scaled form instead, so every
//! identity stays polynomial.

use crate::exterior::{epsilon_matrix, hook_volume_inverse, iota_matrix, PForm, PVector};
use crate::matrix::Matrix;
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;
use crate::{builtins, Error, Result};

/// Orbit family tags.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Emproplectic,
    Pisoplectic,
    Pseudoplectic,
    Osemproplectic,
    Ospisoplectic,
    Ospseudoplectic,
    Sl3R,
    Sl3C,
    Parabolic6dCandidate,
    G2,
    G2Tilde,
    NegG2,
    NegG2Tilde,
    Degenerate,
    StableUnclassified,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Emproplectic => "Emproplectic",
            Family::Pisoplectic => "Pisoplectic",
            Family::Pseudoplectic => "Pseudoplectic",
            Family::Osemproplectic => "Osemproplectic",
            Family::Ospisoplectic => "Ospisoplectic",
            Family::Ospseudoplectic => "Ospseudoplectic",
            Family::Sl3R => "SL3R",
            Family::Sl3C => "SL3C",
            Family::Parabolic6dCandidate => "Parabolic6dCandidate",
            Family::G2 => "G2",
            Family::G2Tilde => "G2Tilde",
            Family::NegG2 => "NegG2",
            Family::NegG2Tilde => "NegG2Tilde",
            Family::Degenerate => "Degenerate",
            Family::StableUnclassified => "StableUnclassified",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Family-specific certificate payload.
#[derive(Clone, Debug)]
pub enum Certificate {
    None,
    /// Even-dimensional 2-form: coefficient of `mu^k` against `th^{1..2k}`.
    TwoFormEven {
        top: Scalar,
    },
    /// Odd-dimensional 2-form: positively oriented generator of `ker iota`.
    Pseudoplectic {
        line: Vec<Scalar>,
    },
    /// `Lambda > 0`: `K^2 = Lambda Id`; `vol = sqrt(Lambda)` when exact, in
    /// which case the para-complex eigenspaces are also listed.
    Sl3R {
        lambda: Scalar,
        hitchin: Matrix,
        vol: Option<Scalar>,
        eig_plus: Vec<Vec<Scalar>>,
        eig_minus: Vec<Vec<Scalar>>,
    },
    /// `Lambda < 0`: `vol = sqrt(-Lambda)/2` when exact; `J = -K/(2 vol)`.
    Sl3C {
        lambda: Scalar,
        hitchin: Matrix,
        vol: Option<Scalar>,
    },
    /// `Lambda = 0`, `K != 0`, `K^2 = 0`, `rank K = 3`.
    Parabolic {
        hitchin: Matrix,
        kernel: Vec<Vec<Scalar>>,
    },
    /// 7d 3-/4-forms: matrix of `Q` against `th^{1..7}`, its determinant,
    /// signature, and the exact normalized metric/volume when the ninth
    /// root of `det Q` is rational.
    SevenDim {
        qhat: Matrix,
        det_q: Scalar,
        signature: (usize, usize, usize),
        metric: Option<Matrix>,
        vol: Option<Scalar>,
    },
    /// `(2k-2)`-forms in `2k` dimensions: Pfaffian of the dual bivector.
    Ossymplectic {
        pfaffian: Scalar,
    },
    /// `(2k-1)`-forms in `2k+1` dimensions: the co-oriented annihilator
    /// covector, an oriented basis of the associated hyperplane, and a
    /// representative of the conformal class of 2-forms on it.
    Ospseudoplectic {
        theta: Vec<Scalar>,
        plane: Vec<Vec<Scalar>>,
        conformal: PForm,
    },
    Degenerate {
        rank: usize,
    },
}

/// Classification result: family tag plus certificates.
#[derive(Clone, Debug)]
pub struct OrbitLabel {
    pub family: Family,
    pub stable: bool,
    pub certificate: Certificate,
}

impl OrbitLabel {
    fn new(family: Family, stable: bool, certificate: Certificate) -> Self {
        OrbitLabel {
            family,
            stable,
            certificate,
        }
    }
}

/// Symmetric bilinear form over exact scalars with exact signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymBilinear {
    m: Matrix,
}

impl SymBilinear {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::invalid("matrix is not symmetric"));
        }
        Ok(SymBilinear { m })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    /// Exact `(positive, negative, null)` counts by symmetric congruence
    /// diagonalization; zero diagonals are handled by the rank-2 update
    /// `row_i += row_j` / `col_i += col_j`.
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.n();
        let mut m = self.m.clone();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                // prefer a later nonzero diagonal entry
                if let Some(l) = ((k + 1)..n).find(|&l| !m.get(l, l).is_zero()) {
                    swap_sym(&mut m, k, l);
                } else {
                    // all remaining diagonals zero: find an off-diagonal entry
                    let mut found = None;
                    'outer: for i in k..n {
                        for j in (i + 1)..n {
                            if !m.get(i, j).is_zero() {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    let Some((i, j)) = found else { break };
                    add_row_col(&mut m, i, j);
                    if i != k {
                        swap_sym(&mut m, k, i);
                    }
                }
            }
            let pivot = m.get(k, k).clone();
            if pivot.is_zero() {
                break;
            }
            for r in (k + 1)..n {
                if m.get(r, k).is_zero() {
                    continue;
                }
                let f = m.get(r, k) / &pivot;
                for c in 0..n {
                    let v = m.get(r, c) - &(&f * m.get(k, c));
                    m.set(r, c, v);
                }
                for c in 0..n {
                    let v = m.get(c, r) - &(&f * m.get(c, k));
                    m.set(c, r, v);
                }
            }
        }
        let mut pos = 0;
        let mut neg = 0;
        for k in 0..n {
            match m.get(k, k).signum() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => {}
            }
        }
        (pos, neg, n - pos - neg)
    }
}

fn swap_sym(m: &mut Matrix, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
    for r in 0..n {
        let a = m.get(r, i).clone();
        let b = m.get(r, j).clone();
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

fn add_row_col(m: &mut Matrix, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let v = m.get(i, c) + m.get(j, c);
        m.set(i, c, v);
    }
    for r in 0..n {
        let v = m.get(r, i) + m.get(r, j);
        m.set(r, i, v);
    }
}

/// Dimension data of the infinitesimal stabilizer of `sigma` in `gl(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizerInfo {
    pub dim: usize,
    pub rank: usize,
    pub stable: bool,
}

/// Rank of the map `gl(n) -> Λ^p`, `A -> (infinitesimal action of A on
/// sigma)`.  The form is stable iff the map is surjective; the stabilizer
/// algebra has dimension `n^2 - rank`.
pub fn stabilizer_algebra_dim(sigma: &PForm) -> StabilizerInfo {
    let n = sigma.n();
    let p = sigma.degree();
    let rows = MultiIndex::all(n, p);
    let row_of: std::collections::BTreeMap<MultiIndex, usize> =
        rows.iter().enumerate().map(|(r, m)| (*m, r)).collect();
    let cols = (n * n) as usize;
    let mut mat = Matrix::zero(rows.len(), cols);
    for (idx, c) in sigma.terms() {
        let indices: Vec<u32> = idx.indices().collect();
        for (slot, &i) in indices.iter().enumerate() {
            for j in 1..=n {
                // E_{ij} replaces index i by j in this slot.
                let mut replaced = indices.clone();
                replaced[slot] = j;
                if let Some((mi, sign)) = MultiIndex::from_indices(&replaced) {
                    let col = ((i - 1) * n + (j - 1)) as usize;
                    let r = row_of[&mi];
                    let mut v = c.clone();
                    if sign < 0 {
                        v = -v;
                    }
                    let cur = mat.get(r, col).clone();
                    mat.set(r, col, cur + v);
                }
            }
        }
    }
    let rank = mat.rank();
    StabilizerInfo {
        dim: cols - rank,
        rank,
        stable: rank == rows.len(),
    }
}

/// `F` stabilizes `sigma` with positive determinant.
pub fn verify_stabilizer_element(f: &Matrix, sigma: &PForm) -> Result<bool> {
    if f.rows() != f.cols() || f.rows() as u32 != sigma.n() {
        return Err(Error::DimensionMismatch(sigma.n(), f.rows() as u32));
    }
    Ok(f.det().is_positive() && &sigma.pullback(f)? == sigma)
}

/// Classify a 2-form in any dimension.
pub fn classify_two_form(mu: &PForm) -> Result<OrbitLabel> {
    if mu.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: mu.degree(),
        });
    }
    let n = mu.n();
    let k = n / 2;
    if n % 2 == 0 {
        let top = mu.wedge_power(k)?.top_coefficient();
        match top.signum() {
            1 => Ok(OrbitLabel::new(
                Family::Emproplectic,
                true,
                Certificate::TwoFormEven { top },
            )),
            -1 => Ok(OrbitLabel::new(
                Family::Pisoplectic,
                true,
                Certificate::TwoFormEven { top },
            )),
            _ => Ok(degenerate_label(iota_matrix(mu).rank())),
        }
    } else {
        let iota = iota_matrix(mu);
        let rank = iota.rank();
        if rank != 2 * k as usize {
            return Ok(degenerate_label(rank));
        }
        let kernel = iota.kernel_basis();
        debug_assert_eq!(kernel.len(), 1);
        let mut v = kernel.into_iter().next().unwrap();
        // Orientation: mu^k = t * (v ⌟ th^{1..n}); v is positive when t > 0.
        let vol = builtins::standard_volume(n);
        let muk = mu.wedge_power(k)?;
        let hooked = vol.hook(&PVector::from_coords(&v))?;
        let t = proportionality(&muk, &hooked)?;
        if t.is_negative() {
            for c in v.iter_mut() {
                *c = -&*c;
            }
        }
        Ok(OrbitLabel::new(
            Family::Pseudoplectic,
            true,
            Certificate::Pseudoplectic { line: v },
        ))
    }
}

/// Ratio `t` with `a = t b`, for nonzero proportional forms.
fn proportionality(a: &PForm, b: &PForm) -> Result<Scalar> {
    let (idx, bc) = b
        .terms()
        .next()
        .ok_or_else(|| Error::degenerate("zero reference form"))?;
    let t = a.coeff(*idx) / bc;
    debug_assert_eq!(a, &b.scale(&t));
    Ok(t)
}

fn degenerate_label(rank: usize) -> OrbitLabel {
    OrbitLabel::new(Family::Degenerate, false, Certificate::Degenerate { rank })
}

/// Matrix of the endomorphism `u -> (u ⌟ rho) ∧ rho` of `R^6`, written
/// against the standard volume `th^{1..6}`.
pub fn hitchin_endomorphism(rho: &PForm) -> Result<Matrix> {
    if rho.n() != 6 || rho.degree() != 3 {
        return Err(Error::invalid("Hitchin endomorphism needs a 3-form on R^6"));
    }
    let vol = builtins::standard_volume(6);
    let mut k = Matrix::zero(6, 6);
    for j in 0..6u32 {
        let mut e = vec![Scalar::zero(); 6];
        e[j as usize] = Scalar::one();
        let five = rho.interior(&e)?.wedge(rho)?;
        let w = hook_volume_inverse(&five, &vol)?;
        for (i, c) in w.to_coords().into_iter().enumerate() {
            k.set(i, j as usize, c);
        }
    }
    Ok(k)
}

/// Classify a 3-form on `R^6` via the invariant `Lambda = Tr(K^2)/6`.
pub fn classify_three_form_6d(rho: &PForm) -> Result<OrbitLabel> {
    if rho.n() != 6 || rho.degree() != 3 {
        return Err(Error::invalid("expected a 3-form on R^6"));
    }
    let k = hitchin_endomorphism(rho)?;
    let k2 = k.mul(&k);
    let mut trace = Scalar::zero();
    for i in 0..6 {
        trace += k2.get(i, i);
    }
    let lambda = trace * Scalar::ratio(1, 6);
    match lambda.signum() {
        1 => {
            let vol = lambda.sqrt_rational();
            let (eig_plus, eig_minus) = match &vol {
                Some(v) => {
                    let v = v.clone();
                    let shift = |sign: i64| {
                        let mut m = k.clone();
                        for i in 0..6 {
                            let d = m.get(i, i) - &(&v * &Scalar::from_int(sign));
                            m.set(i, i, d);
                        }
                        m.kernel_basis()
                    };
                    (shift(1), shift(-1))
                }
                None => (Vec::new(), Vec::new()),
            };
            Ok(OrbitLabel::new(
                Family::Sl3R,
                true,
                Certificate::Sl3R {
                    lambda,
                    hitchin: k,
                    vol,
                    eig_plus,
                    eig_minus,
                },
            ))
        }
        -1 => {
            let vol = (-&lambda).sqrt_rational().map(|r| r * Scalar::ratio(1, 2));
            Ok(OrbitLabel::new(
                Family::Sl3C,
                true,
                Certificate::Sl3C {
                    lambda,
                    hitchin: k,
                    vol,
                },
            ))
        }
        _ => {
            if !k.is_zero() && k2.is_zero() && k.rank() == 3 {
                let kernel = k.kernel_basis();
                Ok(OrbitLabel::new(
                    Family::Parabolic6dCandidate,
                    false,
                    Certificate::Parabolic { hitchin: k, kernel },
                ))
            } else {
                Ok(degenerate_label(k.rank()))
            }
        }
    }
}

/// Matrix of `Q(v) = (v ⌟ phi)^2 ∧ phi / 6` against `th^{1..7}`.
pub fn q_matrix(phi: &PForm) -> Result<Matrix> {
    if phi.n() != 7 || phi.degree() != 3 {
        return Err(Error::invalid("expected a 3-form on R^7"));
    }
    let mut hooked = Vec::with_capacity(7);
    for j in 0..7u32 {
        let mut e = vec![Scalar::zero(); 7];
        e[j as usize] = Scalar::one();
        hooked.push(phi.interior(&e)?);
    }
    let sixth = Scalar::ratio(1, 6);
    let mut q = Matrix::zero(7, 7);
    for i in 0..7 {
        for j in i..7 {
            let w = hooked[i].wedge(&hooked[j])?.wedge(phi)?;
            let v = w.top_coefficient() * &sixth;
            q.set(i, j, v.clone());
            q.set(j, i, v);
        }
    }
    Ok(q)
}

fn seven_dim_label(qhat: Matrix, degree_label: &str) -> Result<OrbitLabel> {
    let sig = SymBilinear::new(qhat.clone())?.signature();
    let det_q = qhat.det();
    let family = match sig {
        (7, 0, 0) => Family::G2,
        (3, 4, 0) => Family::G2Tilde,
        (4, 3, 0) => Family::NegG2Tilde,
        (0, 7, 0) => Family::NegG2,
        (_, _, 0) => {
            return Err(Error::invalid(format!(
                "unexpected nondegenerate signature {sig:?} for a {degree_label}"
            )))
        }
        _ => {
            return Ok(OrbitLabel::new(
                Family::Degenerate,
                false,
                Certificate::SevenDim {
                    qhat,
                    det_q,
                    signature: sig,
                    metric: None,
                    vol: None,
                },
            ))
        }
    };
    // Normalized metric g = (det Q)^(-1/9) Q and volume coefficient
    // (det Q)^(1/9), exact whenever the ninth root is rational.
    let (metric, vol) = match det_q.nth_root_rational(9) {
        Some(r) => (Some(qhat.scale(&r.inv())), Some(r)),
        None => (None, None),
    };
    Ok(OrbitLabel::new(
        family,
        true,
        Certificate::SevenDim {
            qhat,
            det_q,
            signature: sig,
            metric,
            vol,
        },
    ))
}

/// Classify a 3-form on `R^7` by the signature of its quadratic invariant.
pub fn classify_three_form_7d(phi: &PForm) -> Result<OrbitLabel> {
    let qhat = q_matrix(phi)?;
    seven_dim_label(qhat, "stable 3-form on R^7")
}

/// Classify a 4-form on `R^7`: solve `w ⌟ th^{1..7} = psi` and classify the
/// 3-multivector `w` as a 3-form on the dual space.
pub fn classify_four_form_7d(psi: &PForm) -> Result<OrbitLabel> {
    if psi.n() != 7 || psi.degree() != 4 {
        return Err(Error::invalid("expected a 4-form on R^7"));
    }
    let w = hook_volume_inverse(psi, &builtins::standard_volume(7))?;
    let mut dual = PForm::zero(7, 3);
    for (idx, c) in w.terms() {
        dual.insert_raw(*idx, c.clone());
    }
    let qhat = q_matrix(&dual)?;
    seven_dim_label(qhat, "stable 4-form on R^7")
}

/// Classify a `(2k-2)`-form on `R^{2k}` (`k >= 2`).
pub fn classify_high_degree(varpi: &PForm) -> Result<OrbitLabel> {
    let n = varpi.n();
    if n % 2 != 0 || n < 4 || varpi.degree() != n - 2 {
        return Err(Error::invalid("expected a (2k-2)-form on R^{2k}"));
    }
    let k = n / 2;
    if k == 2 {
        return classify_two_form(varpi);
    }
    let eps = epsilon_matrix(varpi);
    let rank = eps.rank();
    if rank < n as usize {
        return Ok(degenerate_label(rank));
    }
    let w = hook_volume_inverse(varpi, &builtins::standard_volume(n))?;
    let top = w.wedge_power(k)?.coeff(MultiIndex::EMPTY.complement(n));
    let fact: i64 = (1..=k as i64).product();
    let pfaffian = top / Scalar::from_int(fact);
    let family = match pfaffian.signum() {
        1 => Family::Osemproplectic,
        -1 => Family::Ospisoplectic,
        _ => return Ok(degenerate_label(rank)),
    };
    Ok(OrbitLabel::new(
        family,
        true,
        Certificate::Ossymplectic { pfaffian },
    ))
}

/// Classify a `(2k-1)`-form on `R^{2k+1}` (`k >= 2`), producing the
/// co-oriented hyperplane and conformal class certificates.
pub fn classify_ospseudo(xi: &PForm) -> Result<OrbitLabel> {
    let n = xi.n();
    if n % 2 == 0 || n < 5 || xi.degree() != n - 2 {
        return Err(Error::invalid("expected a (2k-1)-form on R^{2k+1}"));
    }
    let two_k = (n - 1) as usize;
    let eps = epsilon_matrix(xi);
    let rank = eps.rank();
    if rank != two_k {
        return Ok(degenerate_label(rank));
    }
    let kernel = eps.kernel_basis();
    debug_assert_eq!(kernel.len(), 1);
    let mut theta = kernel.into_iter().next().unwrap();

    // Hyperplane annihilated by theta, with an arbitrary starting basis.
    let theta_row = Matrix::from_rows(vec![theta.clone()]);
    let mut plane = theta_row.kernel_basis();
    debug_assert_eq!(plane.len(), two_k);

    // u with theta(u) = 1, so that xi = theta ∧ (u ⌟ xi).
    let classify_plane = |theta: &[Scalar], plane: &[Vec<Scalar>]| -> Result<(PForm, OrbitLabel)> {
        let nu = xi.interior(&solve_covector(theta)?)?;
        let basis = Matrix::from_rows(plane.to_vec()).transpose();
        let restricted = nu.pullback(&basis)?;
        let label = classify_high_degree(&restricted)?;
        Ok((restricted, label))
    };

    let (mut restricted, mut label) = classify_plane(&theta, &plane)?;
    if label.family == Family::Ospisoplectic || label.family == Family::Pisoplectic {
        // fix the co-orientation: flip theta and the plane orientation
        for c in theta.iter_mut() {
            *c = -&*c;
        }
        plane.swap(0, 1);
        let r = classify_plane(&theta, &plane)?;
        restricted = r.0;
        label = r.1;
    }
    if !matches!(label.family, Family::Osemproplectic | Family::Emproplectic) {
        return Ok(degenerate_label(rank));
    }

    // Conformal representative on the plane: for k = 2 the restriction is
    // already a 2-form; otherwise invert the dual bivector.
    let m = n - 1;
    let conformal = if restricted.degree() == 2 {
        restricted
    } else {
        let w = hook_volume_inverse(&restricted, &builtins::standard_volume(m))?;
        let mut wm = Matrix::zero(m as usize, m as usize);
        for (idx, c) in w.terms() {
            let ids: Vec<u32> = idx.indices().collect();
            wm.set((ids[0] - 1) as usize, (ids[1] - 1) as usize, c.clone());
            wm.set((ids[1] - 1) as usize, (ids[0] - 1) as usize, -c.clone());
        }
        let inv = wm
            .inverse()
            .ok_or_else(|| Error::degenerate("dual bivector not invertible"))?;
        let mut omega = PForm::zero(m, 2);
        for i in 1..=m {
            for j in (i + 1)..=m {
                omega.add_term(
                    &[i, j],
                    -inv.get((i - 1) as usize, (j - 1) as usize).clone(),
                );
            }
        }
        omega
    };
    Ok(OrbitLabel::new(
        Family::Ospseudoplectic,
        true,
        Certificate::Ospseudoplectic {
            theta,
            plane,
            conformal,
        },
    ))
}

fn solve_covector(theta: &[Scalar]) -> Result<Vec<Scalar>> {
    let i = theta
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::degenerate("zero covector"))?;
    let mut u = vec![Scalar::zero(); theta.len()];
    u[i] = theta[i].inv();
    Ok(u)
}

/// Dispatch on `(n, p)` to the appropriate classifier; falls back to the
/// stabilizer-rank test for shapes without a dedicated family.
pub fn classify(sigma: &PForm) -> Result<OrbitLabel> {
    let n = sigma.n();
    let p = sigma.degree();
    if sigma.is_zero() {
        return Ok(degenerate_label(0));
    }
    match (n, p) {
        (_, 2) => classify_two_form(sigma),
        (6, 3) => classify_three_form_6d(sigma),
        (7, 3) => classify_three_form_7d(sigma),
        (7, 4) => classify_four_form_7d(sigma),
        _ if n >= 6 && n % 2 == 0 && p == n - 2 => classify_high_degree(sigma),
        _ if n >= 5 && n % 2 == 1 && p == n - 2 => classify_ospseudo(sigma),
        _ => {
            let info = stabilizer_algebra_dim(sigma);
            if info.stable {
                Ok(OrbitLabel::new(
                    Family::StableUnclassified,
                    true,
                    Certificate::None,
                ))
            } else {
                Ok(degenerate_label(info.rank))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn signature_basics() {
        let m = Matrix::diag(&[2, -3, 0, 5]);
        assert_eq!(SymBilinear::new(m).unwrap().signature(), (2, 1, 1));
        // hyperbolic plane: zero diagonal
        let mut h = Matrix::zero(2, 2);
        h.set(0, 1, s(1));
        h.set(1, 0, s(1));
        assert_eq!(SymBilinear::new(h).unwrap().signature(), (1, 1, 0));
    }

    #[test]
    fn stability_dimensions() {
        let info = stabilizer_algebra_dim(&phi0());
        assert!(info.stable);
        assert_eq!(info.dim, 14);
        let info = stabilizer_algebra_dim(&rho_minus());
        assert!(info.stable);
        assert_eq!(info.dim, 16);
        // decomposable 3-form in R^6 is not stable
        let dec = PForm::basis(6, &[1, 2, 3]);
        assert!(!stabilizer_algebra_dim(&dec).stable);
    }

    #[test]
    fn classify_standard_two_forms() {
        for k in [2u32, 3] {
            let l = classify_two_form(&omega_plus(k)).unwrap();
            assert_eq!(l.family, Family::Emproplectic);
            let l = classify_two_form(&omega_minus(k)).unwrap();
            assert_eq!(l.family, Family::Pisoplectic);
        }
        let l = classify_two_form(&PForm::basis(4, &[1, 2])).unwrap();
        assert_eq!(l.family, Family::Degenerate);
        match l.certificate {
            Certificate::Degenerate { rank } => assert_eq!(rank, 2),
            _ => panic!("wrong certificate"),
        }
        for k in [2u32, 3] {
            let l = classify_two_form(&mu0(k)).unwrap();
            assert_eq!(l.family, Family::Pseudoplectic);
            match l.certificate {
                Certificate::Pseudoplectic { line } => {
                    let mut expect = vec![Scalar::zero(); (2 * k + 1) as usize];
                    expect[0] = Scalar::one();
                    // positively oriented generator is e_1 up to positive scale
                    let t = &line[0];
                    assert!(t.is_positive());
                    let scaled: Vec<Scalar> = line.iter().map(|c| c / t).collect();
                    assert_eq!(scaled, expect);
                }
                _ => panic!("wrong certificate"),
            }
        }
    }

    #[test]
    fn classify_rho_plus_minus() {
        let l = classify_three_form_6d(&rho_plus()).unwrap();
        assert_eq!(l.family, Family::Sl3R);
        match &l.certificate {
            Certificate::Sl3R {
                lambda,
                vol,
                eig_plus,
                eig_minus,
                hitchin,
            } => {
                assert_eq!(*lambda, s(1));
                assert_eq!(vol.clone().unwrap(), s(1));
                // K^2 = Lambda Id
                assert_eq!(hitchin.mul(hitchin), Matrix::identity(6));
                let e_plus: Vec<Vec<Scalar>> = eig_plus.clone();
                assert_eq!(e_plus.len(), 3);
                for v in e_plus {
                    assert!(v[3].is_zero() && v[4].is_zero() && v[5].is_zero());
                }
                for v in eig_minus {
                    assert!(v[0].is_zero() && v[1].is_zero() && v[2].is_zero());
                }
            }
            _ => panic!("wrong certificate"),
        }

        let l = classify_three_form_6d(&rho_minus()).unwrap();
        assert_eq!(l.family, Family::Sl3C);
        match &l.certificate {
            Certificate::Sl3C {
                lambda,
                vol,
                hitchin,
            } => {
                assert_eq!(*lambda, s(-4));
                assert_eq!(vol.clone().unwrap(), s(1));
                // J = -K/2 maps e1 -> e2, e2 -> -e1, ...
                let j = hitchin.scale(&Scalar::ratio(-1, 2));
                let mut expect = Matrix::zero(6, 6);
                for b in 0..3 {
                    expect.set(2 * b + 1, 2 * b, s(1));
                    expect.set(2 * b, 2 * b + 1, s(-1));
                }
                assert_eq!(j, expect);
                assert_eq!(j.mul(&j), Matrix::identity(6).scale(&s(-1)));
            }
            _ => panic!("wrong certificate"),
        }
    }

    #[test]
    fn classify_rho0_parabolic() {
        let l = classify_three_form_6d(&rho0()).unwrap();
        assert_eq!(l.family, Family::Parabolic6dCandidate);
        assert!(!l.stable);
        match &l.certificate {
            Certificate::Parabolic { hitchin, kernel } => {
                assert!(hitchin.mul(hitchin).is_zero());
                assert_eq!(hitchin.rank(), 3);
                assert_eq!(kernel.len(), 3);
                for v in kernel {
                    assert!(v[0].is_zero() && v[1].is_zero() && v[2].is_zero());
                }
            }
            _ => panic!("wrong certificate"),
        }
    }

    #[test]
    fn classify_g2_forms() {
        let l = classify_three_form_7d(&phi0()).unwrap();
        assert_eq!(l.family, Family::G2);
        match &l.certificate {
            Certificate::SevenDim { metric, vol, .. } => {
                assert_eq!(metric.clone().unwrap(), Matrix::identity(7));
                assert_eq!(vol.clone().unwrap(), s(1));
            }
            _ => panic!("wrong certificate"),
        }

        let l = classify_three_form_7d(&svphi0()).unwrap();
        assert_eq!(l.family, Family::G2Tilde);
        match &l.certificate {
            Certificate::SevenDim { metric, vol, .. } => {
                assert_eq!(
                    metric.clone().unwrap(),
                    Matrix::diag(&[1, 1, 1, -1, -1, -1, -1])
                );
                assert_eq!(vol.clone().unwrap(), s(1));
            }
            _ => panic!("wrong certificate"),
        }

        // svphi1 induces gtilde1 and volume 1/8 exactly
        let l = classify_three_form_7d(&svphi1()).unwrap();
        assert_eq!(l.family, Family::G2Tilde);
        match &l.certificate {
            Certificate::SevenDim { metric, vol, .. } => {
                assert_eq!(metric.clone().unwrap(), gtilde1().matrix().clone());
                assert_eq!(vol.clone().unwrap(), Scalar::ratio(1, 8));
            }
            _ => panic!("wrong certificate"),
        }

        // 2*svphi1: same family, ninth root irrational, scaled certificate
        let l = classify_three_form_7d(&svphi1().scale(&s(2))).unwrap();
        assert_eq!(l.family, Family::G2Tilde);
        match &l.certificate {
            Certificate::SevenDim { metric, det_q, .. } => {
                assert!(metric.is_none());
                assert_eq!(*det_q, Scalar::ratio(1, 64));
            }
            _ => panic!("wrong certificate"),
        }

        assert_eq!(
            classify_three_form_7d(&-&phi0()).unwrap().family,
            Family::NegG2
        );
    }

    #[test]
    fn classify_four_forms() {
        assert_eq!(classify_four_form_7d(&psi0()).unwrap().family, Family::G2);
        assert_eq!(
            classify_four_form_7d(&svpsi0()).unwrap().family,
            Family::G2Tilde
        );
        assert_eq!(
            classify_four_form_7d(&-&svpsi0()).unwrap().family,
            Family::NegG2Tilde
        );
        assert_eq!(
            classify_four_form_7d(&-&psi0()).unwrap().family,
            Family::NegG2
        );
    }

    #[test]
    fn classify_high_degree_forms() {
        for k in [3u32, 4] {
            assert_eq!(
                classify_high_degree(&varpi_plus(k)).unwrap().family,
                Family::Osemproplectic
            );
            assert_eq!(
                classify_high_degree(&varpi_minus(k)).unwrap().family,
                Family::Ospisoplectic
            );
            let dec = PForm::basis(2 * k, &(1..=(2 * k - 2)).collect::<Vec<_>>());
            assert_eq!(
                classify_high_degree(&dec).unwrap().family,
                Family::Degenerate
            );
        }
    }

    #[test]
    fn classify_xi0() {
        for k in [2u32, 3] {
            let l = classify_ospseudo(&xi0(k)).unwrap();
            assert_eq!(l.family, Family::Ospseudoplectic);
            match &l.certificate {
                Certificate::Ospseudoplectic {
                    theta,
                    plane,
                    conformal,
                } => {
                    // annihilator is th^1, positively oriented
                    let t0 = &theta[0];
                    assert!(!t0.is_zero());
                    for c in &theta[1..] {
                        assert!(c.is_zero());
                    }
                    assert!(t0.is_positive());
                    // plane = <e_2, ..., e_{2k+1}>
                    for v in plane {
                        assert!(v[0].is_zero());
                    }
                    // conformal class lambda(th^{12} + ... ) in plane coords
                    let m = 2 * k;
                    let mut std_omega = PForm::zero(m, 2);
                    for i in 0..k {
                        std_omega.add_term(&[2 * i + 1, 2 * i + 2], s(1));
                    }
                    let t = proportionality(conformal, &std_omega).unwrap();
                    assert!(t.is_positive());
                }
                _ => panic!("wrong certificate"),
            }
        }
    }

    #[test]
    fn eight_dim_forms_are_stable_with_dim_8() {
        for f in [zeta_c(), zeta_s(), zeta_n(), eta_c(), eta_s(), eta_n()] {
            let info = stabilizer_algebra_dim(&f);
            assert!(info.stable);
            assert_eq!(info.dim, 8);
        }
    }

    #[test]
    fn verify_stabilizer_elements() {
        let id = Matrix::identity(7);
        assert!(verify_stabilizer_element(&id, &phi0()).unwrap());
        let mut refl = Matrix::identity(7);
        refl.set(0, 0, s(-1));
        assert!(!verify_stabilizer_element(&refl, &phi0()).unwrap());
    }

    #[test]
    fn classifier_shape_errors() {
        assert!(classify_two_form(&PForm::basis(4, &[1, 2, 3])).is_err());
        assert!(classify_three_form_6d(&PForm::basis(7, &[1, 2, 3])).is_err());
        assert!(classify_three_form_7d(&PForm::basis(6, &[1, 2, 3])).is_err());
        assert!(classify_four_form_7d(&PForm::basis(7, &[1, 2, 3])).is_err());
        assert!(classify_high_degree(&PForm::basis(7, &[1, 2, 3, 4, 5])).is_err());
        assert!(classify_ospseudo(&PForm::basis(6, &[1, 2, 3, 4])).is_err());
        // the zero form is degenerate, not an error
        assert_eq!(
            classify(&PForm::zero(6, 3)).unwrap().family,
            Family::Degenerate
        );
    }

    #[test]
    fn explicit_parabolic_stabilizer_matrix() {
        // the lower-triangular family over rho0 with d = 2, e = 1,
        // f = l = m = 0: the linear constraint reduces to o + s = -k/4
        let build = |k: i64, o: Scalar, s_val: Scalar| {
            let mut f = Matrix::zero(6, 6);
            f.set(0, 0, s(2));
            f.set(1, 0, s(1));
            f.set(3, 0, s(k));
            f.set(1, 1, Scalar::ratio(1, 2));
            f.set(4, 1, o);
            f.set(2, 2, Scalar::ratio(1, 2));
            f.set(5, 2, s_val);
            f.set(3, 3, s(4));
            f.set(4, 3, s(2)); // d*e
            f.set(4, 4, s(1));
            f.set(5, 5, s(1));
            f
        };
        // satisfied: k = 4, o + s = -1
        let good = build(4, s(-3), s(2));
        assert!(verify_stabilizer_element(&good, &rho0()).unwrap());
        assert_eq!(good.det(), s(2));
        // violated: o + s != -k/4
        let bad = build(4, s(-3), s(3));
        assert!(!verify_stabilizer_element(&bad, &rho0()).unwrap());
    }
}
