//! Exact dense linear algebra over ℚ.

mod matrix;
mod rat;
mod subspace;

pub use matrix::RatMatrix;
pub use rat::{ParseRatError, Rat};
pub use subspace::Subspace;

use crate::error::Error;

/// Symmetric positive definite Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InnerProduct {
    gram: RatMatrix,
}

impl InnerProduct {
    pub fn identity(n: usize) -> InnerProduct {
        InnerProduct {
            gram: RatMatrix::identity(n),
        }
    }

    /// Diagonal Gram matrix; every entry must be positive.
    pub fn diagonal(d: &[Rat]) -> Result<InnerProduct, Error> {
        InnerProduct::new(RatMatrix::diagonal(d))
    }

    /// Checks symmetry and positivity of all leading principal minors.
    pub fn new(gram: RatMatrix) -> Result<InnerProduct, Error> {
        if !gram.is_square() || gram != gram.transpose() {
            return Err(Error::InvalidGram("not symmetric".into()));
        }
        for k in 1..=gram.rows() {
            let idx: Vec<usize> = (0..k).collect();
            let minor = gram.select_rows(&idx).select_columns(&idx).determinant();
            if !minor.is_positive() {
                return Err(Error::InvalidGram(format!(
                    "leading principal minor {k} is {minor}"
                )));
            }
        }
        Ok(InnerProduct { gram })
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.gram == RatMatrix::identity(self.dim())
    }

    pub fn diagonal_entries(&self) -> Option<Vec<Rat>> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.gram[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.gram[(i, i)].clone()).collect())
    }

    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Rat {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, c: &Rat) -> Result<InnerProduct, Error> {
        InnerProduct::new(self.gram.scale(c))
    }
}

/// Reduced row echelon form with zero rows dropped, and the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    m.rref()
}

/// Kernel (in the domain) and column space (in the codomain) of `m`.
pub fn kernel_image(m: &RatMatrix) -> (Subspace, Subspace) {
    let (r, pivots) = m.rref();
    let n = m.cols();
    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(i, f)];
        }
        kernel.push(v);
    }
    let ker = Subspace::span(&kernel, n);
    let im = Subspace::row_space(&m.transpose());
    assert_eq!(ker.dim() + im.dim(), n, "rank-nullity");
    debug_assert!(ker
        .basis_vectors()
        .iter()
        .all(|v| m.mul_vec(v).iter().all(Rat::is_zero)));
    (ker, im)
}

/// Orthogonal complement of `s` with respect to `g`.
pub fn complement(s: &Subspace, g: &InnerProduct) -> Subspace {
    assert_eq!(s.ambient(), g.dim(), "complement: dimension mismatch");
    let (ker, _) = kernel_image(&s.basis().mul(g.gram()));
    ker
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Subspace {
    a.intersect(b)
}

/// `g`-orthogonal projector onto `s`, acting on column vectors.
pub fn projector(s: &Subspace, g: &InnerProduct) -> RatMatrix {
    let n = g.dim();
    assert_eq!(s.ambient(), n, "projector: dimension mismatch");
    if s.is_zero() {
        return RatMatrix::zeros(n, n);
    }
    let b = s.basis().transpose();
    let bt_g = s.basis().mul(g.gram());
    let inv = bt_g
        .mul(&b)
        .inverse()
        .expect("Gram matrix restricted to a subspace is invertible");
    b.mul(&inv).mul(&bt_g)
}

/// Left inverse of the basis matrix: maps a vector of the span to its
/// coordinates in `basis` (columns), and is `g`-orthogonal projection followed
/// by coordinate extraction on the whole space.
pub fn coordinate_map(basis: &RatMatrix, g: &InnerProduct) -> RatMatrix {
    let bt_g = basis.transpose().mul(g.gram());
    let inv = bt_g
        .mul(basis)
        .inverse()
        .expect("basis columns must be independent");
    inv.mul(&bt_g)
}

/// Generalized inverse of `m` relative to the inner products on its domain
/// and codomain: inverts `m` from `(ker m)^⊥` onto `im m` and is zero on
/// `(im m)^⊥`.
pub fn pseudo_inverse(m: &RatMatrix, gdom: &InnerProduct, gcod: &InnerProduct) -> RatMatrix {
    assert_eq!(m.cols(), gdom.dim(), "pseudo_inverse: domain mismatch");
    assert_eq!(m.rows(), gcod.dim(), "pseudo_inverse: codomain mismatch");
    let (ker, _) = kernel_image(m);
    let coimage = complement(&ker, gdom);
    if coimage.is_zero() {
        return RatMatrix::zeros(m.cols(), m.rows());
    }
    let b = coimage.basis().transpose();
    let c = m.mul(&b);
    let out = b.mul(&coordinate_map(&c, gcod));
    #[cfg(debug_assertions)]
    {
        debug_assert_eq!(m.mul(&out).mul(m), *m);
        debug_assert_eq!(out.mul(m).mul(&out), out);
    }
    out
}

/// Orthogonalizes the given independent vectors without normalizing them.
pub fn gram_schmidt(vectors: &[Vec<Rat>], g: &InnerProduct) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let c = g.inner(u, v) / g.inner(u, u);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &c * ui;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn rref_examples() {
        let (m, p) = rref(&RatMatrix::from_int_rows(&[&[0, 0], &[0, 0]]));
        assert_eq!((m.rows(), p), (0, vec![]));
        let (m, p) = rref(&RatMatrix::from_int_rows(&[&[2, 4], &[1, 2]]));
        assert_eq!(m, RatMatrix::from_int_rows(&[&[1, 2]]));
        assert_eq!(p, vec![0]);
        let (m, p) = rref(&RatMatrix::from_int_rows(&[&[1, 1], &[1, -1]]));
        assert_eq!(m, RatMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_image_examples() {
        let (k, i) = kernel_image(&RatMatrix::identity(3));
        assert_eq!((k.dim(), i.dim()), (0, 3));
        let (k, i) = kernel_image(&RatMatrix::zeros(2, 3));
        assert_eq!((k.dim(), i.dim()), (3, 0));
    }

    #[test]
    fn complement_examples() {
        let g = InnerProduct::identity(2);
        let s = Subspace::coordinate(&[0], 2);
        assert_eq!(complement(&s, &g), Subspace::coordinate(&[1], 2));
        assert!(complement(&Subspace::full(3), &InnerProduct::identity(3)).is_zero());
    }

    #[test]
    fn projector_examples() {
        let g = InnerProduct::identity(2);
        let s = Subspace::span(&[vec![r(1, 1), r(1, 1)]], 2);
        let half = r(1, 2);
        let p = projector(&s, &g);
        assert_eq!(p, RatMatrix::from_fn(2, 2, |_, _| half.clone()));
        assert_eq!(projector(&Subspace::full(2), &g), RatMatrix::identity(2));
        assert!(projector(&Subspace::zero(2), &g).is_zero());
    }

    #[test]
    fn pseudo_inverse_examples() {
        let g1 = InnerProduct::identity(1);
        let g2 = InnerProduct::identity(2);
        let m = RatMatrix::from_int_rows(&[&[1], &[1]]);
        let p = pseudo_inverse(&m, &g1, &g2);
        assert_eq!(p, RatMatrix::from_rows(vec![vec![r(1, 2), r(1, 2)]], 2));
        assert_eq!(
            pseudo_inverse(&RatMatrix::identity(2), &g2, &g2),
            RatMatrix::identity(2)
        );
        let z = pseudo_inverse(&RatMatrix::zeros(2, 3), &InnerProduct::identity(3), &g2);
        assert_eq!((z.rows(), z.cols(), z.is_zero()), (3, 2, true));
    }

    #[test]
    fn invalid_gram_rejected() {
        assert!(InnerProduct::diagonal(&[r(1, 1), r(0, 1)]).is_err());
        assert!(InnerProduct::new(RatMatrix::from_int_rows(&[&[1, 2], &[0, 1]])).is_err());
    }
}
