//! Whitney forms of simplicial cochains and their exact integration.
//!
//! The Whitney form of the indicator cochain of a p-simplex
//! `sigma = (v_0, ..., v_p)` is
//! `W_sigma = p! sum_i (-1)^i lam_{v_i} d lam_{v_0} ∧ ..^i.. ∧ d lam_{v_p}`,
//! supported on the star of `sigma`.  Integrals over simplices reduce, by
//! pulling back through barycentric coordinates, to the Dirichlet integral
//! `∫_Δ lam_0^{a_0} ... lam_q^{a_q} = (prod a_i!) / (q + sum a_i)!`, so all
//! values here are exact rationals; no quadrature is involved.

use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::simplicial::{Cochain, SimplicialComplex};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use std::collections::BTreeMap;

/// A simplicial complex with rational vertex coordinates.
#[derive(Clone, Debug)]
pub struct EmbeddedComplex {
    complex: SimplicialComplex,
    coords: Vec<Vec<BigRational>>,
}

impl EmbeddedComplex {
    /// Checks that every simplex is affinely independent in the embedding.
    pub fn new(complex: SimplicialComplex, coords: Vec<Vec<BigRational>>) -> Result<Self> {
        if coords.len() != complex.vertices() {
            return Err(Error::invalid("one coordinate tuple per vertex required"));
        }
        let ambient = coords.first().map(|c| c.len()).unwrap_or(0);
        if coords.iter().any(|c| c.len() != ambient) {
            return Err(Error::invalid("ragged coordinates"));
        }
        let e = EmbeddedComplex { complex, coords };
        for p in 1..=e.complex.dim() {
            for s in e.complex.simplices(p) {
                if !e.affinely_independent(s) {
                    return Err(Error::degenerate(format!("degenerate simplex {s:?}")));
                }
            }
        }
        Ok(e)
    }

    pub fn from_int_coords(complex: SimplicialComplex, coords: &[Vec<i64>]) -> Result<Self> {
        let coords = coords
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        Self::new(complex, coords)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    fn affinely_independent(&self, simplex: &[usize]) -> bool {
        let p = simplex.len() - 1;
        if p == 0 {
            return true;
        }
        let ambient = self.coords[0].len();
        let m = Matrix::from_fn(ambient, p, |i, j| {
            let d = &self.coords[simplex[j + 1]][i] - &self.coords[simplex[0]][i];
            Scalar::from_rational(d)
        });
        m.rank() == p
    }
}

/// Symbolic Whitney form data: the generating simplex and whether the
/// exterior derivative has been applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyForm {
    pub sigma: Vec<usize>,
    pub differentiated: bool,
}

/// The Whitney form of the indicator cochain of `sigma`.
pub fn whitney_form(complex: &SimplicialComplex, sigma: &[usize]) -> Result<WhitneyForm> {
    if complex.index_of(sigma).is_none() {
        return Err(Error::invalid(format!(
            "{sigma:?} is not a simplex of the complex"
        )));
    }
    Ok(WhitneyForm {
        sigma: sigma.to_vec(),
        differentiated: false,
    })
}

impl WhitneyForm {
    /// Exterior derivative: `d W_sigma = (p+1)! d lam_0 ∧ ... ∧ d lam_p`.
    pub fn differential(&self) -> WhitneyForm {
        assert!(!self.differentiated, "second differential vanishes");
        WhitneyForm {
            sigma: self.sigma.clone(),
            differentiated: true,
        }
    }

    pub fn degree(&self) -> usize {
        self.sigma.len() - 1 + usize::from(self.differentiated)
    }
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i as u64);
    }
    acc
}

/// `∫ lam^{a_0} ... lam^{a_q} d lam_1 ... d lam_q` over the standard
/// q-simplex, with `lam_0` the dependent coordinate.
fn dirichlet(exps: &[u32]) -> BigRational {
    let q = exps.len() - 1;
    let total: usize = exps.iter().map(|&a| a as usize).sum();
    let mut num = BigInt::one();
    for &a in exps {
        num *= factorial(a as usize);
    }
    BigRational::new(num, factorial(q + total))
}

/// One symbolic term `coeff * lam^exps * d lam_{wedge}` in local
/// barycentric indices on a fixed simplex.
struct Term {
    coeff: Scalar,
    exps: Vec<u32>,
    wedge: Vec<usize>,
}

/// Reduce `d lam_{j_1} ∧ ... ∧ d lam_{j_q}` (local indices, `q = dim`) to a
/// multiple of `d lam_1 ∧ ... ∧ d lam_q` using `d lam_0 = -sum d lam_i`.
fn wedge_coefficient(wedge: &[usize], q: usize) -> i64 {
    assert_eq!(wedge.len(), q);
    let mut seen = vec![false; q + 1];
    for &j in wedge {
        if seen[j] {
            return 0;
        }
        seen[j] = true;
    }
    if !seen[0] {
        // a permutation of 1..q
        return permutation_sign(wedge);
    }
    // exactly one missing index m in 1..q; d lam_0 -> -d lam_m
    let missing = (1..=q).find(|&m| !seen[m]).expect("one index missing");
    let replaced: Vec<usize> = wedge
        .iter()
        .map(|&j| if j == 0 { missing } else { j })
        .collect();
    -permutation_sign(&replaced)
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut sign = 1i64;
    let n = perm.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Integrate a list of local terms over the q-simplex they live on.
fn integrate_terms(terms: &[Term], q: usize) -> Scalar {
    let mut acc = Scalar::zero();
    for t in terms {
        let c = wedge_coefficient(&t.wedge, q);
        if c == 0 {
            continue;
        }
        let d = dirichlet(&t.exps);
        acc += &(&t.coeff * &Scalar::from_rational(d * BigRational::from_integer(BigInt::from(c))));
    }
    acc
}

/// Express the (possibly differentiated) Whitney form on the simplex `tau`
/// in local barycentric terms; empty when some generating vertex is
/// missing from `tau` (the form vanishes there).
fn localize(w: &WhitneyForm, tau: &[usize]) -> Vec<Term> {
    let q = tau.len() - 1;
    let local_of = |v: usize| tau.iter().position(|&t| t == v);
    let locals: Option<Vec<usize>> = w.sigma.iter().map(|&v| local_of(v)).collect();
    let Some(locals) = locals else {
        return Vec::new();
    };
    let p = w.sigma.len() - 1;
    let p_fact = Scalar::from_rational(BigRational::from_integer(factorial(p)));
    if w.differentiated {
        // (p+1)! d lam_0 ∧ ... ∧ d lam_p
        let c = Scalar::from_rational(BigRational::from_integer(factorial(p + 1)));
        return vec![Term {
            coeff: c,
            exps: vec![0; q + 1],
            wedge: locals,
        }];
    }
    let mut terms = Vec::with_capacity(p + 1);
    for i in 0..=p {
        let mut exps = vec![0u32; q + 1];
        exps[locals[i]] = 1;
        let wedge: Vec<usize> = locals
            .iter()
            .enumerate()
            .filter(|(a, _)| *a != i)
            .map(|(_, &l)| l)
            .collect();
        let sign = if i % 2 == 0 { 1 } else { -1 };
        terms.push(Term {
            coeff: &p_fact * &Scalar::from_int(sign),
            exps,
            wedge,
        });
    }
    terms
}

/// Exact integral of the Whitney form over the simplex `tau` of matching
/// degree.
pub fn integrate_whitney(e: &EmbeddedComplex, w: &WhitneyForm, tau: &[usize]) -> Result<Scalar> {
    if e.complex.index_of(tau).is_none() {
        return Err(Error::invalid(format!(
            "{tau:?} is not a simplex of the complex"
        )));
    }
    let q = tau.len() - 1;
    if w.degree() != q {
        return Err(Error::DegreeMismatch {
            expected: q as u32,
            got: w.degree() as u32,
        });
    }
    Ok(integrate_terms(&localize(w, tau), q))
}

/// Integrated shadow of the Whitney map applied to a whole cochain:
/// `tau -> ∫_tau S(a)`.
pub fn integrate_cochain_image(e: &EmbeddedComplex, a: &Cochain, tau: &[usize]) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (i, s) in e.complex.simplices(a.degree).iter().enumerate() {
        if a.values[i].is_zero() {
            continue;
        }
        let w = whitney_form(&e.complex, s)?;
        acc += &(&a.values[i] * &integrate_whitney(e, &w, tau)?);
    }
    Ok(acc)
}

/// Value of `S(ones)` at the barycentric point of a top simplex: the sum of
/// all vertex hat functions, as an exact polynomial identity on each
/// simplex.  Returns true when it is the constant 1 everywhere.
pub fn ones_is_constant_one(e: &EmbeddedComplex) -> bool {
    let top = e.complex.dim();
    for tau in e.complex.simplices(top) {
        // sum of hat functions of the vertices of tau, as a polynomial in
        // local coordinates: must be identically 1; vertices outside tau
        // contribute 0 on tau.
        let mut poly: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (local, _v) in tau.iter().enumerate() {
            let mut exps = vec![0u32; tau.len()];
            exps[local] = 1;
            *poly.entry(exps).or_insert_with(Scalar::zero) += &Scalar::one();
        }
        // substitute lam_0 = 1 - sum lam_i and compare with 1
        let mut reduced: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (exps, c) in poly {
            if exps[0] == 0 {
                let key = exps[1..].to_vec();
                *reduced.entry(key).or_insert_with(Scalar::zero) += &c;
            } else {
                // lam_0 appears linearly here
                let base = exps[1..].to_vec();
                *reduced.entry(base.clone()).or_insert_with(Scalar::zero) += &c;
                for i in 0..base.len() {
                    let mut k = base.clone();
                    k[i] += 1;
                    *reduced.entry(k).or_insert_with(Scalar::zero) -= &c;
                }
            }
        }
        reduced.retain(|_, v| !v.is_zero());
        let expect_key = vec![0u32; tau.len() - 1];
        if reduced.len() != 1 || reduced.get(&expect_key) != Some(&Scalar::one()) {
            return false;
        }
    }
    true
}
