//! Finite simplicial cochain complexes over exact scalars: coboundary,
//! cohomology, and a cochain-level Hodge-type splitting
//! `C^p = iota H^p ⊕ d C^{p-1} ⊕ delta C^{p+1}`.

use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A finite abstract simplicial complex: strictly increasing vertex tuples,
/// closed under faces.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: usize,
    /// `simplices[p]` lists the p-simplices in lexicographic order.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Build from maximal faces (any vertex tuples); the face closure is
    /// taken automatically.  Vertices are `0..vertices`.
    pub fn from_faces(vertices: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for face in faces {
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != face.len() {
                return Err(Error::invalid(format!(
                    "repeated vertex in simplex {face:?}"
                )));
            }
            if sorted.iter().any(|&v| v >= vertices) {
                return Err(Error::invalid(format!("vertex out of range in {face:?}")));
            }
            // insert all subsets (face closure)
            let k = sorted.len();
            for mask in 1u32..(1 << k) {
                let sub: Vec<usize> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| sorted[i])
                    .collect();
                let d = sub.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(sub);
            }
        }
        for v in 0..vertices {
            if by_dim.is_empty() {
                by_dim.push(BTreeSet::new());
            }
            by_dim[0].insert(vec![v]);
        }
        Ok(SimplicialComplex {
            vertices,
            simplices: by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Dimension of the complex.
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// The p-simplices, lexicographically ordered.
    pub fn simplices(&self, p: usize) -> &[Vec<usize>] {
        self.simplices.get(p).map(|v| &v[..]).unwrap_or(&[])
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices(p).len()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.simplices(simplex.len() - 1)
            .binary_search_by(|probe| probe.as_slice().cmp(simplex))
            .ok()
    }

    /// Matrix of the coboundary `d: C^p -> C^{p+1}` in the simplex bases:
    /// `(d a)(s) = sum_i (-1)^i a(s with vertex i removed)`.
    pub fn coboundary_matrix(&self, p: usize) -> Matrix {
        let rows = self.count(p + 1);
        let cols = self.count(p);
        let mut m = Matrix::zero(rows, cols);
        for (r, s) in self.simplices(p + 1).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let c = self.index_of(&face).expect("face closure");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(r, c, Scalar::from_int(sign));
            }
        }
        m
    }
}

/// A p-cochain: one scalar per p-simplex, in the complex's simplex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(complex: &SimplicialComplex, degree: usize) -> Self {
        Cochain {
            degree,
            values: vec![Scalar::zero(); complex.count(degree)],
        }
    }

    /// Indicator cochain of a single simplex.
    pub fn delta(complex: &SimplicialComplex, simplex: &[usize]) -> Result<Self> {
        let degree = simplex.len() - 1;
        let idx = complex.index_of(simplex).ok_or_else(|| {
            Error::invalid(format!("{simplex:?} is not a simplex of the complex"))
        })?;
        let mut c = Cochain::zero(complex, degree);
        c.values[idx] = Scalar::one();
        Ok(c)
    }

    /// The all-ones 0-cochain.
    pub fn ones(complex: &SimplicialComplex) -> Self {
        Cochain {
            degree: 0,
            values: vec![Scalar::one(); complex.count(0)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// Apply the coboundary to a cochain.
pub fn coboundary(complex: &SimplicialComplex, c: &Cochain) -> Result<Cochain> {
    if c.degree >= complex.dim() {
        return Err(Error::invalid("coboundary of a top-degree cochain"));
    }
    if c.values.len() != complex.count(c.degree) {
        return Err(Error::invalid("cochain length mismatch"));
    }
    let m = complex.coboundary_matrix(c.degree);
    Ok(Cochain {
        degree: c.degree + 1,
        values: m.mul_vec(&c.values),
    })
}

/// Exact cohomology data in one degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub betti: usize,
    /// Cocycle representatives chosen by the splitting construction.
    pub representatives: Vec<Cochain>,
}

/// The splitting operators in all degrees.
///
/// For each `p`: `iota[p]` maps harmonic coordinates into `C^p` (its
/// columns are the chosen cocycle representatives), and `delta[p]` is the
/// degree-lowering operator `C^p -> C^{p-1}` with `delta^2 = 0`,
/// `d delta d = d` and `C^p = iota H^p ⊕ d C^{p-1} ⊕ delta C^{p+1}`.
#[derive(Clone, Debug)]
pub struct HodgeSplitting {
    pub iota: Vec<Matrix>,
    pub delta: Vec<Matrix>,
    pub betti: Vec<usize>,
}

/// Pivot column indices of `m` under deterministic Gaussian elimination
/// (first nonzero pivot per column, scanning left to right).
fn pivot_columns(m: &Matrix) -> Vec<usize> {
    let mut work = m.clone();
    let rows = work.rows();
    let cols = work.cols();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| !work.get(r, col).is_zero()) else {
            continue;
        };
        if pr != rank {
            for j in 0..cols {
                let a = work.get(rank, j).clone();
                let b = work.get(pr, j).clone();
                work.set(rank, j, b);
                work.set(pr, j, a);
            }
        }
        let inv = work.get(rank, col).inv();
        for j in 0..cols {
            let v = work.get(rank, j) * &inv;
            work.set(rank, j, v);
        }
        for r in 0..rows {
            if r != rank && !work.get(r, col).is_zero() {
                let f = work.get(r, col).clone();
                for j in 0..cols {
                    let v = work.get(r, j) - &(&f * work.get(rank, j));
                    work.set(r, j, v);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Kernel basis of `m` extended by `complete`: columns spanning `ker m`
/// modulo the span of `im_basis` columns.
fn kernel_mod_image(kernel: &[Vec<Scalar>], image: &Matrix) -> Vec<Vec<Scalar>> {
    // choose kernel vectors extending the image columns to a basis
    let rows = image.rows();
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    let mut span = image.clone();
    let target = kernel.len();
    for v in kernel {
        if chosen.len() + image.cols() == target {
            break;
        }
        // does v extend the current span?
        let mut test = Matrix::zero(rows, span.cols() + 1);
        for i in 0..rows {
            for j in 0..span.cols() {
                test.set(i, j, span.get(i, j).clone());
            }
            test.set(i, span.cols(), v[i].clone());
        }
        if test.rank() > span.cols() {
            chosen.push(v.clone());
            span = test;
        }
    }
    chosen
}

/// Build the splitting for every degree, verifying all invariants.
///
/// For each `p < top` let `PC_p` be the pivot columns of `d_p`.  Then
/// `C^{p+1}` decomposes as harmonic representatives ⊕ the pivot columns of
/// `d_p` (a basis of the coboundaries) ⊕ the unit vectors at `PC_{p+1}` (a
/// lift of the next coboundaries).  `delta_{p+1}` reads off the coboundary
/// coordinates in this basis and maps the pivot column `d_p e_c` back to
/// `e_c`; this forces `delta^2 = 0` and makes `d` and `delta` mutually
/// inverse between the two image summands.
pub fn build_splitting(complex: &SimplicialComplex) -> Result<HodgeSplitting> {
    let top = complex.dim();
    let d: Vec<Matrix> = (0..top).map(|p| complex.coboundary_matrix(p)).collect();
    let pc: Vec<Vec<usize>> = d.iter().map(pivot_columns).collect();

    let unit = |dim: usize, i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        v[i] = Scalar::one();
        v
    };

    // harmonic representatives per degree
    let mut iota: Vec<Matrix> = Vec::new();
    let mut betti = Vec::new();
    for p in 0..=top {
        let cp = complex.count(p);
        let kernel: Vec<Vec<Scalar>> = if p < top {
            d[p].kernel_basis()
        } else {
            (0..cp).map(|i| unit(cp, i)).collect()
        };
        let image_cols: Vec<Vec<Scalar>> = if p == 0 {
            Vec::new()
        } else {
            pc[p - 1].iter().map(|&c| d[p - 1].col(c)).collect()
        };
        let image = Matrix::from_rows(transpose_vecs(&image_cols, cp));
        let harmonic = kernel_mod_image(&kernel, &image);
        betti.push(harmonic.len());
        iota.push(Matrix::from_rows(transpose_vecs(&harmonic, cp)));
    }

    // delta_{p+1}: C^{p+1} -> C^p for p in 0..top
    let mut delta: Vec<Matrix> = Vec::new();
    for p in 0..top {
        let cp1 = complex.count(p + 1);
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for j in 0..iota[p + 1].cols() {
            cols.push(iota[p + 1].col(j));
        }
        let n_harmonic = cols.len();
        for &c in &pc[p] {
            cols.push(d[p].col(c));
        }
        if p + 1 < top {
            for &c in &pc[p + 1] {
                cols.push(unit(cp1, c));
            }
        }
        let t = Matrix::from_rows(transpose_vecs(&cols, cp1));
        if t.rows() != t.cols() {
            return Err(Error::invalid(format!(
                "decomposition basis of C^{} has {} columns, expected {}",
                p + 1,
                t.cols(),
                t.rows()
            )));
        }
        let t_inv = t.inverse().ok_or_else(|| {
            Error::invalid(format!("decomposition basis of C^{} is singular", p + 1))
        })?;
        // delta = A . (coboundary-block rows of T^{-1}), A columns = e_c
        let mut dm = Matrix::zero(complex.count(p), cp1);
        for (j, &c) in pc[p].iter().enumerate() {
            for y in 0..cp1 {
                dm.set(c, y, t_inv.get(n_harmonic + j, y).clone());
            }
        }
        delta.push(dm);
    }

    let split = HodgeSplitting { iota, delta, betti };
    verify_splitting(complex, &split)?;
    Ok(split)
}

fn transpose_vecs(cols: &[Vec<Scalar>], rows: usize) -> Vec<Vec<Scalar>> {
    (0..rows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Check every invariant of the splitting; an error indicates a bug.
pub fn verify_splitting(complex: &SimplicialComplex, s: &HodgeSplitting) -> Result<()> {
    let top = complex.dim();
    for p in 0..=top {
        let cp = complex.count(p);
        // delta[p]: C^{p+1} -> C^p (index p stores delta_{p+1})
        if p < top {
            let d_p = complex.coboundary_matrix(p);
            let delta_p1 = &s.delta[p];
            // d delta d = d  (right inverse on coboundaries)
            let dd = d_p.mul(&delta_p1.mul(&d_p));
            if dd != d_p {
                return Err(Error::invalid(format!(
                    "delta is not a right inverse in degree {p}"
                )));
            }
            // delta^2 = 0: delta_p . delta_{p+1} = 0
            if p > 0 {
                let prod = s.delta[p - 1].mul(&s.delta[p]);
                if !prod.is_zero() {
                    return Err(Error::invalid(format!("delta^2 != 0 in degree {p}")));
                }
            }
            // d vanishes on harmonic representatives
            let d_iota = d_p.mul(&s.iota[p]);
            if !d_iota.is_zero() {
                return Err(Error::invalid(format!(
                    "harmonic representatives not closed in degree {p}"
                )));
            }
            // delta vanishes on harmonic representatives in degree p+1...
            // (iota maps into the kernel complement chosen mod image; the
            // defining property checked here is delta . iota = 0)
            let delta_iota = s.delta[p].mul(&s.iota[p + 1]);
            if !delta_iota.is_zero() {
                return Err(Error::invalid(format!(
                    "delta does not kill harmonics in degree {}",
                    p + 1
                )));
            }
        }
        // direct sum: iota H^p ⊕ im(d_{p-1}) ⊕ im(delta_{p+1}) = C^p
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for j in 0..s.iota[p].cols() {
            cols.push(s.iota[p].col(j));
        }
        if p > 0 {
            let d_prev = complex.coboundary_matrix(p - 1);
            let delta_p = &s.delta[p - 1]; // C^p -> C^{p-1}
            let proj = d_prev.mul(delta_p); // projector onto d C^{p-1}
            for j in 0..proj.cols() {
                cols.push(proj.col(j));
            }
        }
        if p < top {
            let d_p = complex.coboundary_matrix(p);
            let delta_p1 = &s.delta[p];
            let proj = delta_p1.mul(&d_p); // projector onto delta C^{p+1}
            for j in 0..proj.cols() {
                cols.push(proj.col(j));
            }
        }
        let m = Matrix::from_rows(transpose_vecs(&cols, cp));
        if m.rank() != cp {
            return Err(Error::invalid(format!("decomposition does not span C^{p}")));
        }
        // dimensions add up: betti + rank d_{p-1} + rank d_p = dim C^p
        let rank_prev = if p > 0 {
            complex.coboundary_matrix(p - 1).rank()
        } else {
            0
        };
        let rank_next = if p < top {
            complex.coboundary_matrix(p).rank()
        } else {
            0
        };
        if s.betti[p] + rank_prev + rank_next != cp {
            return Err(Error::invalid(format!(
                "dimension count fails in degree {p}"
            )));
        }
    }
    // mutual inverse: d: delta C^{p+1} -> d C^p and delta: d C^p -> delta C^{p+1}
    for p in 0..top {
        let d_p = complex.coboundary_matrix(p);
        let delta_p1 = &s.delta[p];
        // on im(delta_{p+1}): delta d = id
        let lhs = delta_p1.mul(&d_p).mul(&delta_p1.mul(&d_p));
        let rhs = delta_p1.mul(&d_p);
        if lhs != rhs {
            return Err(Error::invalid(format!(
                "delta d is not idempotent in degree {p}"
            )));
        }
        // projections: d delta (onto dC^{p-1}) and delta d (onto delta C^{p+1})
        let dd_proj = d_p.mul(delta_p1);
        let prod = dd_proj.mul(&dd_proj);
        if prod != dd_proj {
            return Err(Error::invalid(format!(
                "d delta is not idempotent in degree {}",
                p + 1
            )));
        }
    }
    Ok(())
}

/// Exact cohomology of the complex in one degree, with representatives
/// from the splitting.
pub fn cohomology(complex: &SimplicialComplex, p: usize) -> Result<Cohomology> {
    if p > complex.dim() {
        return Ok(Cohomology {
            betti: 0,
            representatives: Vec::new(),
        });
    }
    let s = build_splitting(complex)?;
    let reps = (0..s.iota[p].cols())
        .map(|j| Cochain {
            degree: p,
            values: s.iota[p].col(j),
        })
        .collect();
    Ok(Cohomology {
        betti: s.betti[p],
        representatives: reps,
    })
}

/// Standard test complexes.
pub mod complexes {
    use super::SimplicialComplex;

    /// A single 1-simplex.
    pub fn interval() -> SimplicialComplex {
        SimplicialComplex::from_faces(2, &[vec![0, 1]]).unwrap()
    }

    /// Boundary of a triangle (a circle).
    pub fn circle() -> SimplicialComplex {
        SimplicialComplex::from_faces(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    /// A solid triangle.
    pub fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_faces(3, &[vec![0, 1, 2]]).unwrap()
    }

    /// A solid tetrahedron.
    pub fn tetrahedron() -> SimplicialComplex {
        SimplicialComplex::from_faces(4, &[vec![0, 1, 2, 3]]).unwrap()
    }

    /// Boundary of the octahedron (a 2-sphere): vertices 0/1, 2/3, 4/5 are
    /// antipodal pairs.
    pub fn octahedron() -> SimplicialComplex {
        let mut faces = Vec::new();
        for a in 0..2 {
            for b in 2..4 {
                for c in 4..6 {
                    faces.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::from_faces(6, &faces).unwrap()
    }

    /// The 7-vertex triangulation of the torus: faces `{i, i+1, i+3}` and
    /// `{i, i+2, i+3}` mod 7.
    pub fn torus7() -> SimplicialComplex {
        let mut faces = Vec::new();
        for i in 0..7usize {
            faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::from_faces(7, &faces).unwrap()
    }

    /// The 7-vertex Moebius band: faces `{i, i+1, i+2}` mod 7.
    pub fn moebius7() -> SimplicialComplex {
        let faces: Vec<Vec<usize>> = (0..7usize)
            .map(|i| vec![i, (i + 1) % 7, (i + 2) % 7])
            .collect();
        SimplicialComplex::from_faces(7, &faces).unwrap()
    }
}
