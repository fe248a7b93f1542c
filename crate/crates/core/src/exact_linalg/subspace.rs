use super::{Rat, RatMatrix};

/// A linear subspace of ℚ^n stored by its reduced row echelon basis.
///
/// The basis is canonical, so two `Subspace`s are equal iff they describe
/// the same space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: RatMatrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: RatMatrix::identity(ambient),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &RatMatrix) -> Subspace {
        Subspace {
            ambient: m.cols(),
            basis: m.rref().0,
        }
    }

    pub fn span(vectors: &[Vec<Rat>], ambient: usize) -> Subspace {
        Subspace::row_space(&RatMatrix::from_rows(vectors.to_vec(), ambient))
    }

    /// Span of a subset of the standard basis vectors.
    pub fn coordinate(idx: &[usize], ambient: usize) -> Subspace {
        let rows = idx
            .iter()
            .map(|&i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(&rows, ambient)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vectors()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let m = self
            .basis
            .vstack(&RatMatrix::from_rows(vec![v.to_vec()], self.ambient));
        m.rank() == self.dim()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        self.sum(o).dim() == self.dim()
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient, "ambient mismatch");
        Subspace::row_space(&self.basis.vstack(&o.basis))
    }

    /// Annihilator under the standard pairing: {v : s·v = 0 for all s ∈ S}.
    pub fn annihilator(&self) -> Subspace {
        let (ker, _) = super::kernel_image(&self.basis);
        ker
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient, "ambient mismatch");
        self.annihilator().sum(&o.annihilator()).annihilator()
    }

    /// Image of the subspace under the linear map `m` acting on column vectors.
    pub fn image_under(&self, m: &RatMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::row_space(&self.basis.mul(&m.transpose()))
    }
}
