//! The dual filtration F_i, asymptotic weight spaces W_i, weight tables and
//! adapted bases.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{complement, gram_schmidt, kernel_image, InnerProduct, Rat, RatMatrix, Subspace};
use crate::exterior::{wedge_1forms, KForm};
use crate::lie_core::{lower_central_series, Grading, LieAlgebra};

/// `0 = F_0 ⊂ F_1 ⊂ … ⊂ F_s = g*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub f: Vec<Subspace>,
}

impl Filtration {
    pub fn step(&self) -> usize {
        self.f.len() - 1
    }
}

/// `Λ²S`: span of wedges of pairs of vectors of `S ⊂ Λ¹`.
pub fn lambda2_of(s: &Subspace) -> Subspace {
    wedge_span(s, s)
}

/// Span of `u ∧ v` for `u ∈ a`, `v ∈ b`.
pub fn wedge_span(a: &Subspace, b: &Subspace) -> Subspace {
    let n = a.ambient();
    let mut rows = Vec::new();
    for u in a.basis_vectors() {
        for v in b.basis_vectors() {
            rows.push(wedge_1forms(&u, &v));
        }
    }
    Subspace::span(&rows, n * n.saturating_sub(1) / 2)
}

/// `{θ : m θ ∈ target}`.
fn preimage(m: &RatMatrix, target: &Subspace) -> Subspace {
    let ann = target.annihilator();
    kernel_image(&ann.basis().mul(m)).0
}

/// Builds F_i by the d_g-preimage rule and checks it against the
/// annihilators of the lower central series.
pub fn build_filtration(g: &LieAlgebra, dg1: &RatMatrix) -> Result<Filtration> {
    let n = g.dim();
    let mut f = vec![Subspace::zero(n)];
    while f.last().unwrap().dim() < n {
        let next = preimage(dg1, &lambda2_of(f.last().unwrap()));
        if next.dim() == f.last().unwrap().dim() || f.len() > n + 1 {
            return Err(Error::NotNilpotent(n - next.dim()));
        }
        f.push(next);
    }
    let cs = lower_central_series(g)?;
    if cs.terms.len() != f.len() {
        return Err(Error::InternalDisagreement(format!(
            "filtration has {} steps, central series {}",
            f.len() - 1,
            cs.step
        )));
    }
    for (i, (fi, gi)) in f.iter().zip(&cs.terms).enumerate() {
        if *fi != gi.annihilator() {
            return Err(Error::InternalDisagreement(format!(
                "F_{i} differs from the annihilator of g^({i})"
            )));
        }
    }
    Ok(Filtration { f })
}

/// `W_i = F_i ∩ F_{i−1}^⊥` for `i = 1..=s` (index 0 of the result is `W_1`).
pub fn weight_spaces(filt: &Filtration, g: &InnerProduct) -> Vec<Subspace> {
    filt.f
        .windows(2)
        .map(|w| w[1].intersect(&complement(&w[0], g)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Asymptotic,
    Grading(String),
}

/// Weight of every basis covector; monomial weights add.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub kind: WeightKind,
    pub covector: Vec<Rat>,
}

impl WeightTable {
    pub fn monomial(&self, m: &[usize]) -> Rat {
        m.iter().map(|&i| &self.covector[i]).sum()
    }

    /// Integer monomial weight; panics on a non-integer table.
    pub fn monomial_int(&self, m: &[usize]) -> i64 {
        self.monomial(m).to_i64().expect("integer weights")
    }
}

/// Asymptotic weight table; requires every basis covector to lie in one `W_i`.
pub fn asymptotic_weights(filt: &Filtration, g: &InnerProduct) -> Result<WeightTable> {
    let ws = weight_spaces(filt, g);
    let n = g.dim();
    let mut covector = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        let w = ws
            .iter()
            .position(|w| w.contains(&e))
            .ok_or(Error::NotPureBasis)?;
        covector.push(Rat::from(w + 1));
    }
    Ok(WeightTable {
        kind: WeightKind::Asymptotic,
        covector,
    })
}

/// Weights induced on covectors by a grading: `w(θ_i) = w(X_i)`.
pub fn grading_weights(gr: &Grading) -> WeightTable {
    WeightTable {
        kind: WeightKind::Grading(gr.name.clone()),
        covector: gr.weights.clone(),
    }
}

/// Change of basis adapted to the weight spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Rows are the new covectors in old coordinates.
    pub change: RatMatrix,
    pub gram: InnerProduct,
    pub pure: bool,
    /// Asymptotic weight of each new covector.
    pub weights: Vec<Rat>,
}

/// Identity when the basis is already adapted; otherwise an orthogonal
/// rational basis running through `W_1, W_2, …` in order.
pub fn adapt_basis(filt: &Filtration, g: &InnerProduct) -> AdaptedBasis {
    let n = g.dim();
    if let Ok(wt) = asymptotic_weights(filt, g) {
        return AdaptedBasis {
            change: RatMatrix::identity(n),
            gram: g.clone(),
            pure: true,
            weights: wt.covector,
        };
    }
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for (i, w) in weight_spaces(filt, g).iter().enumerate() {
        for v in gram_schmidt(&w.basis_vectors(), g) {
            rows.push(v);
            weights.push(Rat::from(i + 1));
        }
    }
    let change = RatMatrix::from_rows(rows, n);
    let gram = change.mul(g.gram()).mul(&change.transpose());
    let diag: Vec<Rat> = (0..n).map(|i| gram[(i, i)].clone()).collect();
    debug_assert_eq!(gram, RatMatrix::diagonal(&diag));
    AdaptedBasis {
        change,
        gram: InnerProduct::diagonal(&diag).expect("positive norms"),
        pure: false,
        weights,
    }
}

/// `V_j* = W_j` for every layer of a stratification.
pub fn carnot_duality_check(gr: &Grading, filt: &Filtration, g: &InnerProduct) -> bool {
    let n = g.dim();
    let ws = weight_spaces(filt, g);
    if ws.len() != gr.layers().len() {
        return false;
    }
    for (j, w) in ws.iter().enumerate() {
        let t = Rat::from(j + 1);
        let others: Vec<usize> = gr
            .layers()
            .iter()
            .filter(|(k, _)| **k != t)
            .flat_map(|(_, v)| v.iter().copied())
            .collect();
        let dual = Subspace::coordinate(&others, n).annihilator();
        if dual != *w {
            return false;
        }
    }
    true
}

/// Set of monomial weights over the support of a form.
pub fn form_weight_set(form: &KForm, wt: &WeightTable) -> BTreeSet<Rat> {
    form.terms().iter().map(|(_, m)| wt.monomial(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce_complex::dg_matrix;
    use crate::lie_core::{default_labels, validate_grading};
    use std::collections::BTreeMap;

    fn alg(n: usize, br: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
        let mut m = BTreeMap::new();
        for (i, j, t) in br {
            m.insert(
                (i - 1, j - 1),
                t.iter().map(|(k, c)| (k - 1, Rat::from_int(*c))).collect(),
            );
        }
        LieAlgebra::from_brackets("t", default_labels(n), &m).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn n632_filtration_and_weights() {
        let g = alg(6, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (5, 6, &[(4, 1)])]);
        let f = build_filtration(&g, &dg_matrix(&g, 1)).unwrap();
        assert_eq!(f.step(), 3);
        assert_eq!(f.f[1], Subspace::coordinate(&[0, 1, 4, 5], 6));
        assert_eq!(f.f[2], Subspace::coordinate(&[0, 1, 2, 4, 5], 6));
        let id = InnerProduct::identity(6);
        let wt = asymptotic_weights(&f, &id).unwrap();
        assert_eq!(wt.covector, ints(&[1, 1, 2, 3, 1, 1]));
        let form = KForm::from_terms(
            6,
            2,
            &[(Rat::one(), vec![4, 5]), (Rat::from_int(-1), vec![0, 2])],
        );
        assert_eq!(form_weight_set(&form, &wt), ints(&[2, 3]).into_iter().collect());
        let v2 = validate_grading(&g, "V2", &ints(&[1, 1, 2, 3, 1, 2])).unwrap();
        assert_eq!(
            form_weight_set(&form, &grading_weights(&v2)),
            ints(&[3]).into_iter().collect()
        );
        assert!(adapt_basis(&f, &id).pure);
    }

    #[test]
    fn abelian_single_layer() {
        let g = LieAlgebra::abelian(3);
        let f = build_filtration(&g, &dg_matrix(&g, 1)).unwrap();
        assert_eq!(f.f, vec![Subspace::zero(3), Subspace::full(3)]);
        let ab = adapt_basis(&f, &InnerProduct::identity(3));
        assert!(ab.pure);
        assert_eq!(ab.change, RatMatrix::identity(3));
    }

    #[test]
    fn heisenberg_in_skew_basis_is_adapted() {
        // Basis Y1 = X1, Y2 = X1 + X3, Y3 = X2 of the Heisenberg algebra.
        let g = alg(3, &[(1, 3, &[(1, -1), (2, 1)]), (2, 3, &[(1, -1), (2, 1)])]);
        let f = build_filtration(&g, &dg_matrix(&g, 1)).unwrap();
        let id = InnerProduct::identity(3);
        assert!(matches!(asymptotic_weights(&f, &id), Err(Error::NotPureBasis)));
        let ab = adapt_basis(&f, &id);
        assert!(!ab.pure);
        assert_eq!(ab.weights, ints(&[1, 1, 2]));
        let h = g.change_basis(&ab.change, default_labels(3)).unwrap();
        let fh = build_filtration(&h, &dg_matrix(&h, 1)).unwrap();
        assert!(asymptotic_weights(&fh, &ab.gram).is_ok());
    }

    #[test]
    fn carnot_duality_examples() {
        let g = alg(6, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])]);
        let f = build_filtration(&g, &dg_matrix(&g, 1)).unwrap();
        let s = validate_grading(&g, "s", &ints(&[1, 1, 2, 3, 1, 1])).unwrap();
        assert!(carnot_duality_check(&s, &f, &InnerProduct::identity(6)));
        let h = alg(3, &[(1, 2, &[(3, 1)])]);
        let f = build_filtration(&h, &dg_matrix(&h, 1)).unwrap();
        let s = validate_grading(&h, "s", &ints(&[1, 1, 2])).unwrap();
        assert!(carnot_duality_check(&s, &f, &InnerProduct::identity(3)));
    }
}
