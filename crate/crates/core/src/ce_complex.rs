//! The Chevalley–Eilenberg differential d_g, its generalized inverse, the
//! projector Π_{E0} and the spaces E_0^k.

use crate::exact_linalg::{
    complement, kernel_image, pseudo_inverse, InnerProduct, Rat, RatMatrix, Subspace,
};
use crate::exterior::{lambda_gram, sort_with_sign, ExteriorBasis};
use crate::lie_core::LieAlgebra;

/// Terms `(i, j, c)` of `d_g θ_m = −Σ_{i<j} c_{ij}^m θ_i∧θ_j`, per `m`.
fn dg1_terms(g: &LieAlgebra) -> Vec<Vec<(usize, usize, Rat)>> {
    let mut out = vec![Vec::new(); g.dim()];
    for (i, j, terms) in g.nonzero_brackets() {
        for (m, c) in terms {
            out[m].push((i, j, -c));
        }
    }
    out
}

/// Matrix of `d_g: Λ^k → Λ^{k+1}`, extended from Λ¹ by the Leibniz rule.
pub fn dg_matrix(g: &LieAlgebra, k: usize) -> RatMatrix {
    let ext = ExteriorBasis::new(g.dim());
    dg_matrix_with(g, &ext, k)
}

fn dg_matrix_with(g: &LieAlgebra, ext: &ExteriorBasis, k: usize) -> RatMatrix {
    let src = ext.basis(k);
    let rows = ext.len(k + 1);
    let mut m = RatMatrix::zeros(rows, src.len());
    if rows == 0 {
        return m;
    }
    let d1 = dg1_terms(g);
    for (col, mono) in src.iter().enumerate() {
        for r in 0..mono.len() {
            let outer_sign = if r % 2 == 0 { 1 } else { -1 };
            for (a, b, c) in &d1[mono[r]] {
                let mut seq = mono[..r].to_vec();
                seq.push(*a);
                seq.push(*b);
                seq.extend_from_slice(&mono[r + 1..]);
                if let Some((s, sorted)) = sort_with_sign(&seq) {
                    let row = ext.index(&sorted);
                    m[(row, col)] += c * &Rat::from_int(s * outer_sign);
                }
            }
        }
    }
    m
}

/// All degree-wise algebraic operators of one algebra and inner product.
///
/// `dg[k]: Λ^k → Λ^{k+1}` and `dginv[k]: Λ^{k+1} → Λ^k` for `k = 0..=n`.
#[derive(Debug)]
pub struct CeOperator {
    pub n: usize,
    pub ext: ExteriorBasis,
    pub grams: Vec<InnerProduct>,
    pub dg: Vec<RatMatrix>,
    pub dginv: Vec<RatMatrix>,
    pub pi_e0: Vec<RatMatrix>,
    pub e0: Vec<Subspace>,
}

impl CeOperator {
    pub fn new(g: &LieAlgebra, gram: &InnerProduct) -> CeOperator {
        let n = g.dim();
        assert_eq!(gram.dim(), n, "inner product dimension");
        let ext = ExteriorBasis::new(n);
        let grams: Vec<InnerProduct> = (0..=n).map(|k| lambda_gram(gram, k)).collect();
        let empty = InnerProduct::identity(0);
        let dg: Vec<RatMatrix> = (0..=n).map(|k| dg_matrix_with(g, &ext, k)).collect();
        let dginv: Vec<RatMatrix> = (0..=n)
            .map(|k| pseudo_inverse(&dg[k], &grams[k], grams.get(k + 1).unwrap_or(&empty)))
            .collect();
        let mut pi_e0 = Vec::new();
        let mut e0 = Vec::new();
        for k in 0..=n {
            let dim = ext.len(k);
            let mut p = RatMatrix::identity(dim).sub(&dginv[k].mul(&dg[k]));
            let (ker, _) = kernel_image(&dg[k]);
            let mut space = ker;
            if k > 0 {
                p = p.sub(&dg[k - 1].mul(&dginv[k - 1]));
                let (_, im) = kernel_image(&dg[k - 1]);
                space = space.intersect(&complement(&im, &grams[k]));
            }
            pi_e0.push(p);
            e0.push(space);
        }
        CeOperator {
            n,
            ext,
            grams,
            dg,
            dginv,
            pi_e0,
            e0,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.e0.iter().map(Subspace::dim).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::KForm;
    use crate::lie_core::default_labels;
    use std::collections::BTreeMap;

    fn n632() -> LieAlgebra {
        let mut m = BTreeMap::new();
        m.insert((0, 1), vec![(2, Rat::one())]);
        m.insert((0, 2), vec![(3, Rat::one())]);
        m.insert((4, 5), vec![(3, Rat::one())]);
        LieAlgebra::from_brackets("n632", default_labels(6), &m).unwrap()
    }

    fn form(terms: &[(i64, &[usize])]) -> KForm {
        let k = terms[0].1.len();
        KForm::from_terms(
            6,
            k,
            &terms
                .iter()
                .map(|(c, m)| (Rat::from_int(*c), m.iter().map(|x| x - 1).collect()))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn dg_examples() {
        let g = n632();
        let d1 = dg_matrix(&g, 1);
        assert_eq!(
            d1.mul_vec(&form(&[(1, &[4])]).coeffs),
            form(&[(-1, &[1, 3]), (-1, &[5, 6])]).coeffs
        );
        let d2 = dg_matrix(&g, 2);
        assert_eq!(
            d2.mul_vec(&form(&[(1, &[2, 4])]).coeffs),
            form(&[(-1, &[1, 2, 3]), (1, &[2, 5, 6])]).coeffs
        );
        for k in 0..6 {
            assert!(dg_matrix(&g, k + 1).mul(&dg_matrix(&g, k)).is_zero());
        }
        let a = LieAlgebra::abelian(4);
        for k in 0..=4 {
            assert!(dg_matrix(&a, k).is_zero());
        }
    }

    #[test]
    fn inverse_and_projector_examples() {
        let g = n632();
        let ce = CeOperator::new(&g, &InnerProduct::identity(6));
        let inv1 = &ce.dginv[1];
        assert_eq!(
            inv1.mul_vec(&form(&[(1, &[1, 2])]).coeffs),
            form(&[(-1, &[3])]).coeffs
        );
        let half = Rat::new(-1, 2);
        let mut expect = KForm::zero(6, 1);
        expect.coeffs[3] = half;
        assert_eq!(inv1.mul_vec(&form(&[(1, &[5, 6])]).coeffs), expect.coeffs);
        let p = &ce.pi_e0[2];
        let got = p.mul_vec(&form(&[(1, &[1, 3])]).coeffs);
        let want: Vec<Rat> = form(&[(1, &[5, 6]), (-1, &[1, 3])])
            .coeffs
            .iter()
            .map(|x| x * &Rat::new(-1, 2))
            .collect();
        assert_eq!(got, want);
        assert!(p.mul_vec(&form(&[(1, &[3, 4])]).coeffs).iter().all(Rat::is_zero));
        assert_eq!(ce.e0[1], Subspace::coordinate(&[0, 1, 4, 5], 6));
    }

    #[test]
    fn invariants_hold() {
        let g = n632();
        let ce = CeOperator::new(&g, &InnerProduct::identity(6));
        for k in 0..=6 {
            let p = &ce.pi_e0[k];
            assert_eq!(p.mul(p), *p);
            assert_eq!(Subspace::row_space(&p.transpose()), ce.e0[k]);
            if k < 6 {
                assert!(ce.dginv[k].mul(&ce.dginv[k + 1]).is_zero());
            }
        }
        let dims = ce.dims();
        for k in 0..=6 {
            assert_eq!(dims[k], dims[6 - k]);
        }
    }
}
