//! Pseudo-metrics and the Hodge star.

use crate::exterior::PForm;
use crate::matrix::Matrix;
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A non-degenerate symmetric bilinear form together with an orientation
/// volume form.
#[derive(Clone)]
pub struct PseudoMetric {
    g: Matrix,
    g_inv: Matrix,
    vol: PForm,
}

impl PseudoMetric {
    pub fn new(g: Matrix, vol: PForm) -> Result<Self> {
        if !g.is_symmetric() {
            return Err(Error::invalid("metric matrix must be symmetric"));
        }
        if vol.degree() != vol.n() || vol.is_zero() {
            return Err(Error::degenerate(
                "orientation volume must be a nonzero top form",
            ));
        }
        if g.rows() as u32 != vol.n() {
            return Err(Error::DimensionMismatch(g.rows() as u32, vol.n()));
        }
        let g_inv = g
            .inverse()
            .ok_or_else(|| Error::degenerate("metric is degenerate"))?;
        Ok(PseudoMetric { g, g_inv, vol })
    }

    pub fn n(&self) -> u32 {
        self.g.rows() as u32
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn volume(&self) -> &PForm {
        &self.vol
    }

    /// Value `g(u, v)` on vectors.
    pub fn inner_vectors(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.g.mul_vec(v);
        let mut acc = Scalar::zero();
        for (a, b) in u.iter().zip(gv.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    /// Induced inner product of basis p-forms via Gram determinants of the
    /// dual metric: `<th^I, th^J> = det( g^(i_a j_b) )`.
    fn inner_basis_forms(&self, i: MultiIndex, j: MultiIndex) -> Scalar {
        let rows: Vec<u32> = i.indices().collect();
        let cols: Vec<u32> = j.indices().collect();
        let p = rows.len();
        let mut m = Matrix::zero(p, p);
        for (a, &ia) in rows.iter().enumerate() {
            for (b, &jb) in cols.iter().enumerate() {
                m.set(
                    a,
                    b,
                    self.g_inv.get((ia - 1) as usize, (jb - 1) as usize).clone(),
                );
            }
        }
        m.det()
    }

    /// Induced inner product on `Λ^p`.
    pub fn inner_forms(&self, alpha: &PForm, beta: &PForm) -> Scalar {
        assert_eq!(alpha.degree(), beta.degree());
        let mut acc = Scalar::zero();
        for (i, a) in alpha.terms() {
            for (j, b) in beta.terms() {
                let g = self.inner_basis_forms(*i, *j);
                if !g.is_zero() {
                    acc += &(&(a * b) * &g);
                }
            }
        }
        acc
    }

    /// Hodge star: the unique `(n-p)`-form with
    /// `alpha ∧ *beta = <alpha, beta> vol` for every p-form `alpha`.
    pub fn hodge_star(&self, beta: &PForm) -> Result<PForm> {
        if beta.n() != self.n() {
            return Err(Error::DimensionMismatch(beta.n(), self.n()));
        }
        let n = self.n();
        let p = beta.degree();
        let v = self.vol.top_coefficient();
        let mut out = PForm::zero(n, n - p);
        for i in MultiIndex::all(n, p) {
            let mut c = Scalar::zero();
            for (j, b) in beta.terms() {
                let g = self.inner_basis_forms(i, *j);
                if !g.is_zero() {
                    c += &(b * &g);
                }
            }
            if c.is_zero() {
                continue;
            }
            let comp = i.complement(n);
            let sign = i.wedge_sign(comp).expect("disjoint by construction");
            let mut d = &c * &v;
            if sign < 0 {
                d = -d;
            }
            out.insert_raw(comp, d);
        }
        Ok(out)
    }
}
