//! Sparse exterior algebra over exact scalars.
//!
//! [`PForm`] is an alternating covariant tensor on `R^n`, stored as a map
//! from strictly increasing multi-indices to nonzero scalars; [`PVector`] is
//! the contravariant counterpart.  Zero coefficients are never stored, so
//! structural equality is semantic equality.

use crate::matrix::Matrix;
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Shared sparse storage for forms and multivectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    n: u32,
    p: u32,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Tensor {
    fn zero(n: u32, p: u32) -> Self {
        assert!(n <= 64, "ambient dimension too large");
        Tensor {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    fn insert(&mut self, idx: MultiIndex, value: Scalar) {
        debug_assert_eq!(idx.degree(), self.p);
        debug_assert!(idx.max_index() <= self.n);
        if value.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn scaled(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(self.n, self.p);
        }
        Tensor {
            n: self.n,
            p: self.p,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert(*k, v.clone());
        }
        out
    }
}

macro_rules! tensor_api {
    ($T:ident) => {
        impl $T {
            /// The zero element of the stated degree.
            pub fn zero(n: u32, p: u32) -> Self {
                $T(Tensor::zero(n, p))
            }

            pub fn n(&self) -> u32 {
                self.0.n
            }

            pub fn degree(&self) -> u32 {
                self.0.p
            }

            pub fn is_zero(&self) -> bool {
                self.0.terms.is_empty()
            }

            pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
                self.0.terms.iter()
            }

            pub fn len(&self) -> usize {
                self.0.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.terms.is_empty()
            }

            pub fn coeff(&self, idx: MultiIndex) -> Scalar {
                self.0.terms.get(&idx).cloned().unwrap_or_else(Scalar::zero)
            }

            /// Add `value` on the (possibly unsorted) index tuple `indices`.
            /// Repeated indices contribute nothing.
            pub fn add_term(&mut self, indices: &[u32], value: Scalar) {
                assert_eq!(indices.len() as u32, self.0.p, "wrong degree");
                if let Some((idx, sign)) = MultiIndex::from_indices(indices) {
                    assert!(
                        idx.max_index() <= self.0.n,
                        "index out of range for R^{}",
                        self.0.n
                    );
                    let v = if sign < 0 { -value } else { value };
                    self.0.insert(idx, v);
                }
            }

            /// Convenience constructor from `(indices, coefficient)` pairs.
            pub fn from_terms(n: u32, p: u32, terms: &[(&[u32], Scalar)]) -> Self {
                let mut t = Self::zero(n, p);
                for (idx, c) in terms {
                    t.add_term(idx, c.clone());
                }
                t
            }

            /// Basis element for a single index tuple with coefficient 1.
            pub fn basis(n: u32, indices: &[u32]) -> Self {
                let mut t = Self::zero(n, indices.len() as u32);
                t.add_term(indices, Scalar::one());
                t
            }

            pub fn insert_raw(&mut self, idx: MultiIndex, value: Scalar) {
                self.0.insert(idx, value);
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                $T(self.0.scaled(c))
            }

            /// Largest quadratic discriminant appearing among coefficients.
            pub fn discriminant(&self) -> Option<u64> {
                self.0.terms.values().find_map(|v| v.discriminant())
            }
        }

        impl std::ops::Add<&$T> for &$T {
            type Output = $T;
            fn add(self, rhs: &$T) -> $T {
                assert_eq!(self.0.n, rhs.0.n, "ambient dimension mismatch");
                assert_eq!(self.0.p, rhs.0.p, "degree mismatch");
                $T(self.0.add(&rhs.0))
            }
        }

        impl std::ops::Sub<&$T> for &$T {
            type Output = $T;
            fn sub(self, rhs: &$T) -> $T {
                self + &(-rhs)
            }
        }

        impl std::ops::Neg for &$T {
            type Output = $T;
            fn neg(self) -> $T {
                self.scale(&-Scalar::one())
            }
        }

        impl std::ops::Add for $T {
            type Output = $T;
            fn add(self, rhs: $T) -> $T {
                &self + &rhs
            }
        }

        impl std::ops::Sub for $T {
            type Output = $T;
            fn sub(self, rhs: $T) -> $T {
                &self - &rhs
            }
        }

        impl std::ops::Neg for $T {
            type Output = $T;
            fn neg(self) -> $T {
                -&self
            }
        }

        impl fmt::Display for $T {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (idx, c) in self.terms() {
                    if first {
                        first = false;
                    } else {
                        write!(f, " + ")?;
                    }
                    write!(f, "({})*{}{}", c, Self::SYMBOL, idx)?;
                }
                Ok(())
            }
        }

        impl fmt::Debug for $T {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

/// Alternating `p`-form on `R^n` (covariant).
#[derive(Clone, PartialEq, Eq)]
pub struct PForm(Tensor);

/// Alternating `p`-vector on `R^n` (contravariant).
#[derive(Clone, PartialEq, Eq)]
pub struct PVector(Tensor);

impl PForm {
    const SYMBOL: &'static str = "th^";
}

impl PVector {
    const SYMBOL: &'static str = "e_";
}

tensor_api!(PForm);
tensor_api!(PVector);

impl PForm {
    /// Exterior product.  When the degrees together exceed `n`, the result
    /// is the zero form of that degree.
    pub fn wedge(&self, other: &PForm) -> Result<PForm> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        let p = self.degree() + other.degree();
        let mut out = PForm::zero(self.n(), p);
        if p > self.n() {
            return Ok(out);
        }
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                if let Some(sign) = i.wedge_sign(*j) {
                    let mut v = a * b;
                    if sign < 0 {
                        v = -v;
                    }
                    out.0.insert(i.union(*j), v);
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold wedge power.
    pub fn wedge_power(&self, k: u32) -> Result<PForm> {
        if k == 0 {
            let mut one = PForm::zero(self.n(), 0);
            one.0.insert(MultiIndex::EMPTY, Scalar::one());
            return Ok(one);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Interior product `v ⌟ α` for a plain vector `v` (coordinates).
    pub fn interior(&self, v: &[Scalar]) -> Result<PForm> {
        if v.len() as u32 != self.n() {
            return Err(Error::DimensionMismatch(self.n(), v.len() as u32));
        }
        if self.degree() == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut out = PForm::zero(self.n(), self.degree() - 1);
        for (idx, c) in self.terms() {
            for i in idx.indices() {
                let vi = &v[(i - 1) as usize];
                if vi.is_zero() {
                    continue;
                }
                let (rest, sign) = idx.contract(i).unwrap();
                let mut term = c * vi;
                if sign < 0 {
                    term = -term;
                }
                out.0.insert(rest, term);
            }
        }
        Ok(out)
    }

    /// Generalized contraction `w ⌟ α` for a multivector `w`; the first
    /// index of each blade is inserted into the outermost slot, so
    /// `e_{i1..ip} ⌟ α = e_{ip} ⌟ ( ... (e_{i1} ⌟ α))`.
    pub fn hook(&self, w: &PVector) -> Result<PForm> {
        if self.n() != w.n() {
            return Err(Error::DimensionMismatch(self.n(), w.n()));
        }
        if w.degree() > self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: w.degree(),
            });
        }
        let mut out = PForm::zero(self.n(), self.degree() - w.degree());
        for (widx, wc) in w.terms() {
            for (fidx, fc) in self.terms() {
                let mut cur = *fidx;
                let mut sign = 1i8;
                let mut ok = true;
                for i in widx.indices() {
                    match cur.contract(i) {
                        Some((rest, s)) => {
                            cur = rest;
                            sign *= s;
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    let mut v = wc * fc;
                    if sign < 0 {
                        v = -v;
                    }
                    out.0.insert(cur, v);
                }
            }
        }
        Ok(out)
    }

    /// Pullback along a linear map given by an `n x m` matrix whose columns
    /// are the images of the source basis vectors.  Yields a form on `R^m`.
    pub fn pullback(&self, f: &Matrix) -> Result<PForm> {
        if f.rows() as u32 != self.n() {
            return Err(Error::DimensionMismatch(self.n(), f.rows() as u32));
        }
        let m = f.cols() as u32;
        let mut out = PForm::zero(m, self.degree());
        if self.degree() > m {
            return Ok(out);
        }
        for (idx, c) in self.terms() {
            // Pull back theta^{i1..ip} = product of the rows i1..ip of f.
            let mut acc: Vec<(MultiIndex, Scalar)> = vec![(MultiIndex::EMPTY, c.clone())];
            for i in idx.indices() {
                let mut next: Vec<(MultiIndex, Scalar)> = Vec::new();
                for (mi, coeff) in &acc {
                    for j in 1..=m {
                        let fij = f.get((i - 1) as usize, (j - 1) as usize);
                        if fij.is_zero() {
                            continue;
                        }
                        let single = MultiIndex::from_sorted(&[j]);
                        if let Some(sign) = mi.wedge_sign(single) {
                            let mut v = coeff * fij;
                            if sign < 0 {
                                v = -v;
                            }
                            next.push((mi.union(single), v));
                        }
                    }
                }
                acc = merge_terms(next);
            }
            for (mi, v) in acc {
                out.0.insert(mi, v);
            }
        }
        Ok(out)
    }

    /// Evaluate on `p` vectors.
    pub fn eval(&self, vectors: &[&[Scalar]]) -> Scalar {
        assert_eq!(
            vectors.len() as u32,
            self.degree(),
            "wrong number of arguments"
        );
        let mut total = Scalar::zero();
        for (idx, c) in self.terms() {
            let rows: Vec<u32> = idx.indices().collect();
            // determinant of the p x p matrix (theta^{i_a}(v_b))
            let mut mat = Vec::with_capacity(rows.len() * rows.len());
            for &i in &rows {
                for v in vectors {
                    mat.push(v[(i - 1) as usize].clone());
                }
            }
            let det = Matrix::from_vec(rows.len(), rows.len(), mat).det();
            total += &(c * &det);
        }
        total
    }

    /// Coefficient of the top form `theta^{1..n}`; requires degree `n`.
    pub fn top_coefficient(&self) -> Scalar {
        assert_eq!(self.degree(), self.n(), "not a top-degree form");
        self.coeff(MultiIndex::EMPTY.complement(self.n()))
    }

    /// Reinterpret covariant data as a multivector (used for duality
    /// between `Λ^p (R^n)^*` and `Λ^p R^n` along the standard bases).
    pub fn transpose_to_vector(&self) -> PVector {
        PVector(self.0.clone())
    }

    /// Embed into a larger space, shifting every index up by `shift`.
    pub fn shift_embed(&self, new_n: u32, shift: u32) -> PForm {
        let mut out = PForm::zero(new_n, self.degree());
        for (idx, c) in self.terms() {
            let shifted: Vec<u32> = idx.indices().map(|i| i + shift).collect();
            out.add_term(&shifted, c.clone());
        }
        out
    }

    /// All coefficients as a dense vector over the canonical degree-`p`
    /// basis of `Λ^p`, in canonical order.
    pub fn dense_coefficients(&self) -> Vec<Scalar> {
        MultiIndex::all(self.n(), self.degree())
            .into_iter()
            .map(|idx| self.coeff(idx))
            .collect()
    }

    /// Degree-1 form from covector coordinates.
    pub fn from_coords_covector(coords: &[Scalar]) -> PForm {
        let mut v = PForm::zero(coords.len() as u32, 1);
        for (i, c) in coords.iter().enumerate() {
            v.add_term(&[(i + 1) as u32], c.clone());
        }
        v
    }

    /// Pairing with a functional expressed over the same basis.
    pub fn pair(&self, functional: &PForm) -> Scalar {
        assert_eq!(self.n(), functional.n());
        assert_eq!(self.degree(), functional.degree());
        let mut acc = Scalar::zero();
        for (idx, c) in self.terms() {
            let f = functional.coeff(*idx);
            if !f.is_zero() {
                acc += &(c * &f);
            }
        }
        acc
    }
}

impl PVector {
    /// Exterior product of multivectors.
    pub fn wedge(&self, other: &PVector) -> Result<PVector> {
        let lhs = PForm(self.0.clone());
        let rhs = PForm(other.0.clone());
        Ok(PVector(lhs.wedge(&rhs)?.0))
    }

    pub fn wedge_power(&self, k: u32) -> Result<PVector> {
        let lhs = PForm(self.0.clone());
        Ok(PVector(lhs.wedge_power(k)?.0))
    }

    /// Contraction of a covector into a multivector:
    /// `beta ⌟ e_{i1..ip} = sum_a (-1)^(a-1) beta(e_{ia}) e_{i1..^a..ip}`.
    pub fn contract_covector(&self, beta: &[Scalar]) -> Result<PVector> {
        let form = PForm(self.0.clone());
        Ok(PVector(form.interior(beta)?.0))
    }

    /// Pushforward along a square or rectangular matrix (columns = images
    /// of basis vectors): `F e_{i1..ip} = F(e_{i1}) ∧ ... ∧ F(e_{ip})`.
    pub fn pushforward(&self, f: &Matrix) -> Result<PVector> {
        if f.cols() as u32 != self.n() {
            return Err(Error::DimensionMismatch(self.n(), f.cols() as u32));
        }
        // Pushforward of vectors is pullback along the transpose.
        let form = PForm(self.0.clone());
        Ok(PVector(form.pullback(&f.transpose())?.0))
    }

    /// Single vector as degree-1 multivector coordinates.
    pub fn from_coords(coords: &[Scalar]) -> PVector {
        let mut v = PVector::zero(coords.len() as u32, 1);
        for (i, c) in coords.iter().enumerate() {
            v.add_term(&[(i + 1) as u32], c.clone());
        }
        v
    }

    pub fn to_coords(&self) -> Vec<Scalar> {
        assert_eq!(self.degree(), 1);
        (1..=self.n())
            .map(|i| self.coeff(MultiIndex::from_sorted(&[i])))
            .collect()
    }
}

fn merge_terms(terms: Vec<(MultiIndex, Scalar)>) -> Vec<(MultiIndex, Scalar)> {
    let mut map: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
    for (k, v) in terms {
        match map.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &v;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
    map.into_iter().collect()
}

/// `w ⌟ vol`: duality isomorphism `Λ^p R^n -> Λ^{n-p} (R^n)^*` against a
/// fixed volume form.
pub fn hook_volume(w: &PVector, vol: &PForm) -> Result<PForm> {
    if vol.degree() != vol.n() {
        return Err(Error::DegreeMismatch {
            expected: vol.n(),
            got: vol.degree(),
        });
    }
    if vol.is_zero() {
        return Err(Error::degenerate("zero volume form"));
    }
    vol.hook(w)
}

/// Inverse of [`hook_volume`]: solve `w ⌟ vol = alpha` for the multivector
/// `w` of degree `n - p(alpha)`... the standard volume case is diagonal in
/// the complementary-index basis.
pub fn hook_volume_inverse(alpha: &PForm, vol: &PForm) -> Result<PVector> {
    let n = alpha.n();
    if vol.degree() != n || vol.n() != n {
        return Err(Error::DimensionMismatch(n, vol.n()));
    }
    let c = vol.top_coefficient();
    if c.is_zero() {
        return Err(Error::degenerate("zero volume form"));
    }
    let p = n - alpha.degree();
    let mut w = PVector::zero(n, p);
    for (idx, a) in alpha.terms() {
        let k = idx.complement(n);
        // e_K ⌟ vol = c * sign * theta^{K^c}; sign from contracting K in order.
        let mut cur = MultiIndex::EMPTY.complement(n);
        let mut sign = 1i8;
        for i in k.indices() {
            let (rest, s) = cur.contract(i).unwrap();
            cur = rest;
            sign *= s;
        }
        debug_assert_eq!(cur, *idx);
        let mut v = a / &c;
        if sign < 0 {
            v = -v;
        }
        w.insert_raw(k, v);
    }
    Ok(w)
}

/// Matrix of the map `u -> u ⌟ sigma` from `R^n` to `Λ^{p-1}`, in the
/// canonical bases (rows = multi-indices of degree `p-1`, columns = 1..n).
pub fn iota_matrix(sigma: &PForm) -> Matrix {
    let n = sigma.n();
    let p = sigma.degree();
    assert!(p >= 1, "iota needs degree >= 1");
    let rows = MultiIndex::all(n, p - 1);
    let row_of: BTreeMap<MultiIndex, usize> =
        rows.iter().enumerate().map(|(r, m)| (*m, r)).collect();
    let mut mat = Matrix::zero(rows.len(), n as usize);
    for (idx, c) in sigma.terms() {
        for i in idx.indices() {
            let (rest, sign) = idx.contract(i).unwrap();
            let r = row_of[&rest];
            let mut v = c.clone();
            if sign < 0 {
                v = -v;
            }
            let cur = mat.get(r, (i - 1) as usize).clone();
            mat.set(r, (i - 1) as usize, cur + v);
        }
    }
    mat
}

/// Matrix of the map `beta -> beta ∧ sigma` from `(R^n)^*` to `Λ^{p+1}`.
pub fn epsilon_matrix(sigma: &PForm) -> Matrix {
    let n = sigma.n();
    let p = sigma.degree();
    let rows = MultiIndex::all(n, p + 1);
    let row_of: BTreeMap<MultiIndex, usize> =
        rows.iter().enumerate().map(|(r, m)| (*m, r)).collect();
    let mut mat = Matrix::zero(rows.len(), n as usize);
    for (idx, c) in sigma.terms() {
        for i in 1..=n {
            let single = MultiIndex::from_sorted(&[i]);
            if let Some(sign) = single.wedge_sign(*idx) {
                let r = row_of[&single.union(*idx)];
                let mut v = c.clone();
                if sign < 0 {
                    v = -v;
                }
                let cur = mat.get(r, (i - 1) as usize).clone();
                mat.set(r, (i - 1) as usize, cur + v);
            }
        }
    }
    mat
}
