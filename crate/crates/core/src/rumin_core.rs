//! The full differential on smooth forms and the Rumin construction:
//! D, P, Q, Π_E and d_c, with exact identity and duality checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ce_complex::CeOperator;
use crate::error::{Error, Result};
use crate::exact_linalg::{coordinate_map, InnerProduct, Rat, RatMatrix, Subspace};
use crate::exterior::{g_star, render_form_text, wedge, KForm};
use crate::lie_core::{default_labels, Grading, LieAlgebra};
use crate::op_algebra::{labels_from, render_applied_text, Labels, OpAlgebra, OpMatrix, OpPoly};
use crate::weights::{
    adapt_basis, asymptotic_weights, build_filtration, carnot_duality_check, grading_weights, weight_spaces, Filtration,
    WeightTable,
};

/// Every operator of the Rumin construction, per degree `k = 0..=n`.
///
/// `d[k]`, `q[k]` connect Λ^k and Λ^{k+1}; `big_d[k]`, `p[k]`, `pi_e[k]` act on Λ^k.
#[derive(Debug)]
pub struct RuminComplex {
    pub algebra: LieAlgebra,
    pub gram: InnerProduct,
    pub ce: CeOperator,
    pub ops: OpAlgebra,
    pub filtration: Filtration,
    pub d: Vec<OpMatrix>,
    pub big_d: Vec<OpMatrix>,
    pub nilpotency: Vec<usize>,
    pub p: Vec<OpMatrix>,
    pub q: Vec<OpMatrix>,
    pub pi_e: Vec<OpMatrix>,
}

/// Labels of Λ^k monomials (empty past the top degree).
fn lam(ce: &CeOperator, k: usize) -> Labels {
    ce.ext.labels(k)
}

/// Entry `(J, I) = Σ_j sign(θ_j∧θ_I = ±θ_J) X_j + (d_g)_{J,I}`.
pub fn full_d(ce: &CeOperator, k: usize) -> OpMatrix {
    let n = ce.n;
    let mut m = OpMatrix::from_rat(&ce.dg[k], lam(ce, k + 1), lam(ce, k));
    for (col, mono) in ce.ext.basis(k).iter().enumerate() {
        for j in 0..n {
            if let Some((s, target)) = wedge(&[j], mono) {
                let row = ce.ext.index(&target);
                m.entry_mut(row, col)
                    .add_scaled(&OpPoly::generator(j), &Rat::from_int(s));
            }
        }
    }
    m
}

/// Least `m ≥ 1` with `D^m = 0`, and `P = Σ_{i=0}^{m} (−D)^i`.
fn nilpotency_and_p(
    dmat: &OpMatrix,
    ops: &OpAlgebra,
    cap: usize,
    degree: usize,
) -> Result<(usize, OpMatrix)> {
    let id = OpMatrix::identity(dmat.row_labels().clone());
    let minus_d = dmat.scale(&Rat::from_int(-1));
    let mut p = id.clone();
    let mut pow = id;
    let mut m = 0;
    loop {
        pow = pow.compose(&minus_d, ops)?;
        m += 1;
        if pow.is_zero() {
            return Ok((m, p));
        }
        if m >= cap {
            return Err(Error::NilpotencyCapExceeded { degree, cap });
        }
        p = p.add(&pow)?;
    }
}

impl RuminComplex {
    /// Builds the complex for `g` with inner product `gram` on Λ¹.
    pub fn new(g: &LieAlgebra, gram: &InnerProduct) -> Result<RuminComplex> {
        let n = g.dim();
        let ce = CeOperator::new(g, gram);
        let ops = OpAlgebra::new(g);
        let filtration = build_filtration(g, &ce.dg[1.min(n)])?;
        let mut wts: Vec<usize> = weight_spaces(&filtration, gram)
            .iter()
            .enumerate()
            .flat_map(|(i, w)| std::iter::repeat_n(i + 1, w.dim()))
            .collect();
        wts.sort_unstable();
        let d: Vec<OpMatrix> = (0..=n).map(|k| full_d(&ce, k)).collect();
        let mut big_d = Vec::new();
        let mut nilpotency = Vec::new();
        let mut p = Vec::new();
        let mut q = Vec::new();
        for k in 0..=n {
            let x_part = d[k].sub(&OpMatrix::from_rat(&ce.dg[k], lam(&ce, k + 1), lam(&ce, k)))?;
            let dk = x_part.rat_left(&ce.dginv[k], lam(&ce, k));
            let spread = wts[n - k..].iter().sum::<usize>() - wts[..k].iter().sum::<usize>();
            let (nk, pk) = nilpotency_and_p(&dk, &ops, spread + 2, k)?;
            q.push(pk.rat_right(&ce.dginv[k], lam(&ce, k + 1)));
            big_d.push(dk);
            nilpotency.push(nk);
            p.push(pk);
        }
        let mut pi_e = Vec::new();
        for k in 0..=n {
            let id = OpMatrix::identity(lam(&ce, k));
            let mut pe = id.sub(&q[k].compose(&d[k], &ops)?)?;
            if k > 0 {
                pe = pe.sub(&d[k - 1].compose(&q[k - 1], &ops)?)?;
            }
            pi_e.push(pe);
        }
        Ok(RuminComplex {
            algebra: g.clone(),
            gram: gram.clone(),
            ce,
            ops,
            filtration,
            d,
            big_d,
            nilpotency,
            p,
            q,
            pi_e,
        })
    }

    /// Builds the complex in a basis adapted to the asymptotic weights.
    ///
    /// The input basis is taken as orthonormal; when it is not adapted the
    /// algebra is rewritten in the orthogonal adapted basis first.
    pub fn adapted(g: &LieAlgebra) -> Result<RuminComplex> {
        let n = g.dim();
        let id = InnerProduct::identity(n);
        let ce_dg1 = crate::ce_complex::dg_matrix(g, 1);
        let filt = build_filtration(g, &ce_dg1)?;
        let ab = adapt_basis(&filt, &id);
        if ab.pure {
            return RuminComplex::new(g, &id);
        }
        let h = g.change_basis(&ab.change, default_labels(n))?;
        RuminComplex::new(&h, &ab.gram)
    }

    pub fn n(&self) -> usize {
        self.ce.n
    }

    pub fn lambda_labels(&self, k: usize) -> Labels {
        lam(&self.ce, k)
    }

    fn dginv_op(&self, k: usize) -> OpMatrix {
        OpMatrix::from_rat(&self.ce.dginv[k], lam(&self.ce, k), lam(&self.ce, k + 1))
    }

    fn pi_e0_op(&self, k: usize) -> OpMatrix {
        OpMatrix::from_rat(&self.ce.pi_e0[k], lam(&self.ce, k), lam(&self.ce, k))
    }

    /// Asymptotic weight table; fails when the basis is not adapted.
    pub fn asymptotic_weights(&self) -> Result<WeightTable> {
        asymptotic_weights(&self.filtration, &self.gram)
    }

    /// Pieces of `d[k]` keyed by weight increase; key 0 is the d_g part.
    pub fn split_d(&self, k: usize) -> Result<BTreeMap<u32, OpMatrix>> {
        let wt = self.asymptotic_weights()?;
        let mut out = BTreeMap::new();
        out.insert(
            0,
            OpMatrix::from_rat(&self.ce.dg[k], lam(&self.ce, k + 1), lam(&self.ce, k)),
        );
        let full = &self.d[k];
        for i in 0..full.rows() {
            for j in 0..full.cols() {
                for (w, c) in full.get(i, j).terms() {
                    if w.is_empty() {
                        continue;
                    }
                    let key = wt.covector[w.0[0] as usize].to_i64().expect("integer weight") as u32;
                    let m = out.entry(key).or_insert_with(|| {
                        OpMatrix::zeros(lam(&self.ce, k + 1), lam(&self.ce, k))
                    });
                    m.entry_mut(i, j).add_term(w.clone(), c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Canonical E_0^k basis as columns, with rendered labels.
    pub fn canonical_e0(&self, k: usize) -> (RatMatrix, Labels) {
        let e = &self.ce.e0[k];
        let cols = e.basis().transpose();
        let labels: Vec<String> = e
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let f = KForm {
                    n: self.n(),
                    degree: k,
                    coeffs: v,
                };
                render_form_text(&f.terms())
            })
            .collect();
        (cols, labels_from(&labels))
    }

    /// `Π_{E0} d Π_E` from E_0^k to E_0^{k+1} in the given column bases.
    pub fn d_c(
        &self,
        k: usize,
        src: &RatMatrix,
        src_labels: Labels,
        dst: &RatMatrix,
        dst_labels: Labels,
    ) -> Result<OpMatrix> {
        if k >= self.n() {
            return Ok(OpMatrix::zeros(dst_labels, src_labels));
        }
        let coords = coordinate_map(dst, &self.ce.grams[k + 1]).mul(&self.ce.pi_e0[k + 1]);
        let dpe = self.d[k].compose(&self.pi_e[k], &self.ops)?;
        Ok(dpe.rat_right(src, src_labels).rat_left(&coords, dst_labels))
    }

    /// `d_c` in the canonical bases on both sides.
    pub fn d_c_canonical(&self, k: usize) -> Result<OpMatrix> {
        let (s, sl) = self.canonical_e0(k);
        let (t, tl) = self.canonical_e0((k + 1).min(self.n()));
        if k >= self.n() {
            return Ok(OpMatrix::zeros(labels_from::<String>(&[]), sl));
        }
        self.d_c(k, &s, sl, &t, tl)
    }

    /// A symbolic form: column `s` is `basis[s]`, read as `Σ_s f_s · basis[s]`.
    pub fn symbolic_form(&self, k: usize, basis: &[KForm], symbols: &[&str]) -> OpMatrix {
        let cols = RatMatrix::from_columns(
            &basis.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>(),
            self.ce.ext.len(k),
        );
        OpMatrix::from_rat(&cols, lam(&self.ce, k), labels_from(symbols))
    }

    /// Powers `r^m` of `r = Id − d d_g⁻¹ − d_g⁻¹ d` until two consecutive
    /// powers agree; returns the stable power and the iteration count.
    pub fn r_limit(&self, k: usize) -> Result<Option<(OpMatrix, usize)>> {
        let id = OpMatrix::identity(lam(&self.ce, k));
        let mut r = id.sub(&self.dginv_op(k).compose(&self.d[k], &self.ops)?)?;
        if k > 0 {
            r = r.sub(&self.d[k - 1].compose(&self.dginv_op(k - 1), &self.ops)?)?;
        }
        let nk = self.nilpotency[k].max(if k > 0 { self.nilpotency[k - 1] } else { 0 });
        let mut pow = r.clone();
        for m in 1..=nk + 2 {
            let next = pow.compose(&r, &self.ops)?;
            if next == pow {
                return Ok(Some((pow, m)));
            }
            pow = next;
        }
        Ok(None)
    }

    /// Checks every algebraic identity of the construction degree by degree.
    pub fn verify_identities(&self) -> Result<IdentityReport> {
        let n = self.n();
        let ops = &self.ops;
        let mut checks = Vec::new();
        let push = |checks: &mut Vec<IdentityCheck>, name: &str, degree: usize, lhs: &OpMatrix, rhs: &OpMatrix| {
            let witness = lhs.first_difference(rhs).map(|(i, j)| {
                format!(
                    "entry ({}, {}): {} vs {}",
                    lhs.row_labels()[i],
                    lhs.col_labels()[j],
                    render_applied_text(&[(lhs.get(i, j).clone(), "f".into())]),
                    render_applied_text(&[(rhs.get(i, j).clone(), "f".into())])
                )
            });
            checks.push(IdentityCheck {
                name: name.to_string(),
                degree,
                passed: witness.is_none(),
                witness,
            });
        };
        let dcs: Vec<OpMatrix> = (0..n).map(|k| self.d_c_canonical(k)).collect::<Result<_>>()?;
        for k in 0..=n {
            let lk = lam(&self.ce, k);
            let id = OpMatrix::identity(lk.clone());
            let pe = &self.pi_e[k];
            let pe0 = self.pi_e0_op(k);
            if k < n {
                let dd = self.d[k + 1].compose(&self.d[k], ops)?;
                push(&mut checks, "d∘d = 0", k, &dd, &OpMatrix::zeros(dd.row_labels().clone(), dd.col_labels().clone()));
                let lhs = self.pi_e[k + 1].compose(&self.d[k], ops)?;
                let rhs = self.d[k].compose(pe, ops)?;
                push(&mut checks, "Π_E d = d Π_E", k, &lhs, &rhs);
                let ginv2 = self.ce.dginv[k].mul(&self.ce.dginv[k + 1]);
                let z = OpMatrix::from_rat(&ginv2, lk.clone(), lam(&self.ce, k + 2));
                push(&mut checks, "d_g⁻¹∘d_g⁻¹ = 0", k, &z, &OpMatrix::zeros(z.row_labels().clone(), z.col_labels().clone()));
            }
            if k + 1 < n {
                let cc = dcs[k + 1].compose(&dcs[k], ops)?;
                push(&mut checks, "d_c∘d_c = 0", k, &cc, &OpMatrix::zeros(cc.row_labels().clone(), cc.col_labels().clone()));
            }
            if k < n {
                let dc0 = OpMatrix::from_rat(
                    &dcs[k].identity_part(),
                    dcs[k].row_labels().clone(),
                    dcs[k].col_labels().clone(),
                );
                push(&mut checks, "d_c has no order-zero part", k, &dc0, &OpMatrix::zeros(dc0.row_labels().clone(), dc0.col_labels().clone()));
            }
            push(&mut checks, "Π_E² = Π_E", k, &pe.compose(pe, ops)?, pe);
            let pf = id.sub(pe)?;
            push(&mut checks, "Π_F² = Π_F", k, &pf.compose(&pf, ops)?, &pf);
            let a = pe0.compose(pe, ops)?.compose(&pe0, ops)?;
            push(&mut checks, "Π_E0 Π_E Π_E0 = Π_E0", k, &a, &pe0);
            let b = pe.compose(&pe0, ops)?.compose(pe, ops)?;
            push(&mut checks, "Π_E Π_E0 Π_E = Π_E", k, &b, pe);
            let mut h = self.q[k].compose(&self.d[k], ops)?.add(pe)?;
            if k > 0 {
                h = h.add(&self.d[k - 1].compose(&self.q[k - 1], ops)?)?;
            }
            push(&mut checks, "Q d + d Q + Π_E = Id", k, &h, &id);
            let pe_zero = OpMatrix::from_rat(&pe.identity_part(), lk.clone(), lk.clone());
            push(&mut checks, "order-zero part of Π_E = Π_E0", k, &pe_zero, &pe0);
            let mut dn = OpMatrix::identity(lk.clone());
            for _ in 0..self.nilpotency[k] {
                dn = dn.compose(&self.big_d[k], ops)?;
            }
            push(&mut checks, "D^N = 0", k, &dn, &OpMatrix::zeros(lk.clone(), lk.clone()));
            if k < n {
                let proj = self.ce.dginv[k].mul(&self.ce.dg[k]);
                let proj_op = OpMatrix::from_rat(&proj, lk.clone(), lk.clone());
                let lhs = self.p[k]
                    .compose(&self.dginv_op(k), ops)?
                    .compose(&self.d[k], ops)?
                    .compose(&proj_op, ops)?;
                push(&mut checks, "P d_g⁻¹ d = Id on Im d_g⁻¹", k, &lhs, &proj_op);
            }
            match self.r_limit(k)? {
                Some((lim, _)) => push(&mut checks, "r^m stabilizes to Π_E", k, &lim, pe),
                None => checks.push(IdentityCheck {
                    name: "r^m stabilizes to Π_E".into(),
                    degree: k,
                    passed: false,
                    witness: Some("no two consecutive equal powers within the cap".into()),
                }),
            }
        }
        Ok(IdentityReport { checks })
    }

    /// `g_star(E_0^h) = E_0^{n−h}` per degree.
    pub fn hodge_duality_check(&self) -> Result<Vec<bool>> {
        let n = self.n();
        (0..=n)
            .map(|h| {
                let s = g_star(h, &self.gram)?;
                Ok(self.ce.e0[h].image_under(&s) == self.ce.e0[n - h])
            })
            .collect()
    }

    pub fn e0_dims(&self) -> Vec<usize> {
        self.ce.e0.iter().map(Subspace::dim).collect()
    }

    /// Asymptotic-weight behaviour of `d_g`, `d_g⁻¹` and `D`, per degree and
    /// per input monomial: `d_g` never raises weight, `d_g⁻¹` never lowers it
    /// and `D` raises it by at least one.
    pub fn weight_monotonicity(&self) -> Result<Vec<IdentityCheck>> {
        let wt = self.asymptotic_weights()?;
        let ext = &self.ce.ext;
        let n = self.n();
        let mut out = Vec::new();
        let mut record = |name: &str, degree: usize, bad: Option<(usize, usize)>, dst: usize, src: usize| {
            out.push(IdentityCheck {
                name: name.into(),
                degree,
                passed: bad.is_none(),
                witness: bad.map(|(i, j)| {
                    format!(
                        "{} → {}",
                        crate::exterior::monomial_text(&ext.basis(src)[j]),
                        crate::exterior::monomial_text(&ext.basis(dst)[i])
                    )
                }),
            });
        };
        for k in 0..=n {
            let w = |deg: usize, i: usize| wt.monomial(&ext.basis(deg)[i]);
            if k < n {
                let dg = &self.ce.dg[k];
                let bad = nonzero_entries(dg.rows(), dg.cols(), |i, j| !dg[(i, j)].is_zero())
                    .find(|&(i, j)| w(k + 1, i) > w(k, j));
                record("d_g does not raise weight", k, bad, k + 1, k);
                let gi = &self.ce.dginv[k];
                let bad = nonzero_entries(gi.rows(), gi.cols(), |i, j| !gi[(i, j)].is_zero())
                    .find(|&(i, j)| w(k, i) < w(k + 1, j));
                record("d_g⁻¹ does not lower weight", k + 1, bad, k, k + 1);
            }
            let dk = &self.big_d[k];
            let one = Rat::one();
            let bad = nonzero_entries(dk.rows(), dk.cols(), |i, j| !dk.get(i, j).is_zero())
                .find(|&(i, j)| w(k, i) < &w(k, j) + &one);
            record("D raises weight by at least 1", k, bad, k, k);
        }
        Ok(out)
    }
}

impl RuminComplex {
    /// For a stratification: `V_j* = W_j`, and the asymptotic and grading
    /// weights agree on every Λ^k monomial.
    pub fn carnot_consistency(&self, gr: &Grading) -> Result<Vec<IdentityCheck>> {
        let dual = carnot_duality_check(gr, &self.filtration, &self.gram);
        let mut out = vec![IdentityCheck {
            name: format!("V_j* = W_j for {}", gr.name),
            degree: 1,
            passed: dual,
            witness: None,
        }];
        let wt = self.asymptotic_weights()?;
        let gw = grading_weights(gr);
        for k in 0..=self.n() {
            let bad = self.ce.ext.basis(k).iter().find(|m| wt.monomial(m) != gw.monomial(m));
            out.push(IdentityCheck {
                name: format!("asymptotic = {} weights", gr.name),
                degree: k,
                passed: bad.is_none(),
                witness: bad.map(|m| crate::exterior::monomial_text(m)),
            });
        }
        Ok(out)
    }
}

fn nonzero_entries(
    rows: usize,
    cols: usize,
    nonzero: impl Fn(usize, usize) -> bool,
) -> impl Iterator<Item = (usize, usize)> {
    (0..rows).flat_map(move |i| (0..cols).map(move |j| (i, j))).filter(move |&(i, j)| nonzero(i, j))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub degree: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::default_labels;

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

    #[test]
    fn abelian_trivialities() {
        let g = LieAlgebra::abelian(3);
        let rc = RuminComplex::new(&g, &InnerProduct::identity(3)).unwrap();
        for k in 0..=3 {
            assert!(rc.big_d[k].is_zero());
            assert_eq!(rc.nilpotency[k], 1);
            assert_eq!(rc.p[k], OpMatrix::identity(rc.lambda_labels(k)));
            assert_eq!(rc.pi_e[k], OpMatrix::identity(rc.lambda_labels(k)));
        }
        let r = rc.verify_identities().unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
        assert!(rc.hodge_duality_check().unwrap().iter().all(|&b| b));
    }

    #[test]
    fn heisenberg_identities() {
        let g = alg(3, &[(1, 2, &[(3, 1)])]);
        let rc = RuminComplex::new(&g, &InnerProduct::identity(3)).unwrap();
        let r = rc.verify_identities().unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(rc.e0_dims(), vec![1, 2, 2, 1]);
        assert!(rc.weight_monotonicity().unwrap().iter().all(|c| c.passed));
    }

    #[test]
    fn broken_jacobi_detected() {
        let g = alg(4, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (2, 3, &[(4, 1)]), (2, 4, &[(1, 1)])]);
        match RuminComplex::new(&g, &InnerProduct::identity(4)) {
            Ok(rc) => {
                let r = rc.verify_identities().unwrap();
                assert!(r.failures().iter().any(|c| c.name == "d∘d = 0"));
            }
            Err(e) => assert!(matches!(e, Error::NotNilpotent(_) | Error::InternalDisagreement(_))),
        }
    }
}
