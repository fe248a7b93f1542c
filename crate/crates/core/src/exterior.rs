//! Exterior algebra Λ^• g* on the dual basis θ_1..θ_n.
//!
//! Monomials are strictly increasing 0-based index tuples, ordered
//! lexicographically within each degree.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact_linalg::{InnerProduct, Rat, RatMatrix};

pub type MultiIndex = Vec<usize>;

/// All `C(n, k)` increasing `k`-tuples from `0..n` in lexicographic order.
pub fn lambda_basis(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts a sequence of indices, returning the permutation sign, or `None`
/// when an index repeats.
pub fn sort_with_sign(seq: &[usize]) -> Option<(i64, MultiIndex)> {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((sign, v))
}

/// `θ_I ∧ θ_J = sign · θ_K`, or `None` when `I` and `J` overlap.
pub fn wedge(i: &[usize], j: &[usize]) -> Option<(i64, MultiIndex)> {
    let mut seq = i.to_vec();
    seq.extend_from_slice(j);
    sort_with_sign(&seq)
}

/// Monomial bases of every degree with index lookup.
#[derive(Debug)]
pub struct ExteriorBasis {
    n: usize,
    bases: Vec<Vec<MultiIndex>>,
    lookup: Vec<HashMap<MultiIndex, usize>>,
    labels: Vec<Arc<[String]>>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> ExteriorBasis {
        let bases: Vec<Vec<MultiIndex>> = (0..=n).map(|k| lambda_basis(n, k)).collect();
        let lookup = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        let labels = bases
            .iter()
            .map(|b| b.iter().map(|m| monomial_text(m)).collect::<Vec<_>>().into())
            .collect();
        ExteriorBasis {
            n,
            bases,
            lookup,
            labels,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Monomials of degree `k`; empty for `k > n`.
    pub fn basis(&self, k: usize) -> &[MultiIndex] {
        self.bases.get(k).map_or(&[], |b| &b[..])
    }

    pub fn len(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    pub fn index(&self, m: &[usize]) -> usize {
        self.lookup[m.len()][m]
    }

    /// Text labels of the degree-`k` monomials.
    pub fn labels(&self, k: usize) -> Arc<[String]> {
        self.labels
            .get(k)
            .cloned()
            .unwrap_or_else(|| Vec::<String>::new().into())
    }
}

/// A left-invariant `k`-form in monomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    pub n: usize,
    pub degree: usize,
    pub coeffs: Vec<Rat>,
}

impl KForm {
    pub fn zero(n: usize, degree: usize) -> KForm {
        KForm {
            n,
            degree,
            coeffs: vec![Rat::zero(); binomial(n, degree)],
        }
    }

    pub fn monomial(n: usize, m: &[usize]) -> KForm {
        let mut f = KForm::zero(n, m.len());
        let idx = lambda_basis(n, m.len()).iter().position(|x| x == m).unwrap();
        f.coeffs[idx] = Rat::one();
        f
    }

    pub fn from_terms(n: usize, degree: usize, terms: &[(Rat, MultiIndex)]) -> KForm {
        let basis = lambda_basis(n, degree);
        let mut f = KForm::zero(n, degree);
        for (c, m) in terms {
            let (s, sorted) = sort_with_sign(m).expect("repeated index in monomial");
            let idx = basis.iter().position(|x| *x == sorted).unwrap();
            f.coeffs[idx] += c * &Rat::from_int(s);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Nonzero terms in lexicographic monomial order.
    pub fn terms(&self) -> Vec<(Rat, MultiIndex)> {
        lambda_basis(self.n, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c.clone(), m))
            .collect()
    }

    pub fn wedge(&self, o: &KForm) -> KForm {
        assert_eq!(self.n, o.n);
        let mut terms = Vec::new();
        for (a, i) in self.terms() {
            for (b, j) in o.terms() {
                if let Some((s, k)) = wedge(&i, &j) {
                    terms.push((&(&a * &b) * &Rat::from_int(s), k));
                }
            }
        }
        KForm::from_terms(self.n, self.degree + o.degree, &terms)
    }
}

/// Coordinates in Λ² of `u ∧ v` for 1-forms `u`, `v`.
pub fn wedge_1forms(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    let n = u.len();
    let basis = lambda_basis(n, 2);
    basis
        .iter()
        .map(|m| &(&u[m[0]] * &v[m[1]]) - &(&u[m[1]] * &v[m[0]]))
        .collect()
}

/// Gram matrix on Λ^k induced from `g` on Λ¹ (the matrix of `k × k` minors).
pub fn lambda_gram(g: &InnerProduct, k: usize) -> InnerProduct {
    let n = g.dim();
    let basis = lambda_basis(n, k);
    if let Some(d) = g.diagonal_entries() {
        let diag: Vec<Rat> = basis
            .iter()
            .map(|m| m.iter().fold(Rat::one(), |acc, &i| &acc * &d[i]))
            .collect();
        return InnerProduct::diagonal(&diag).expect("products of positive entries");
    }
    let gm = g.gram();
    let m = RatMatrix::from_fn(basis.len(), basis.len(), |a, b| {
        gm.select_rows(&basis[a])
            .select_columns(&basis[b])
            .determinant()
    });
    InnerProduct::new(m).expect("compound of a positive definite matrix")
}

/// The scale-normalized star Λ^k → Λ^{n−k}:
/// `θ_I ↦ ⟨θ_I, θ_I⟩ ε(I, I^c) θ_{I^c}`.
pub fn g_star(k: usize, g: &InnerProduct) -> Result<RatMatrix> {
    let d = g.diagonal_entries().ok_or(Error::NonDiagonalGram)?;
    let n = g.dim();
    let src = lambda_basis(n, k);
    let dst = lambda_basis(n, n - k);
    let mut m = RatMatrix::zeros(dst.len(), src.len());
    for (col, i) in src.iter().enumerate() {
        let comp: Vec<usize> = (0..n).filter(|x| !i.contains(x)).collect();
        let (eps, _) = wedge(i, &comp).expect("disjoint");
        let norm = i.iter().fold(Rat::one(), |acc, &x| &acc * &d[x]);
        let row = dst.iter().position(|x| *x == comp).unwrap();
        m[(row, col)] = &norm * &Rat::from_int(eps);
    }
    Ok(m)
}

/// `θ1∧θ3` style label; the empty monomial is `1`.
pub fn monomial_text(m: &[usize]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|i| format!("θ{}", i + 1))
        .collect::<Vec<_>>()
        .join("∧")
}

pub fn monomial_latex(m: &[usize]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|i| format!("\\theta_{}", latex_subscript(i + 1)))
        .collect::<Vec<_>>()
        .join("\\wedge")
}

/// `7` or `{12}`.
pub fn latex_subscript(i: usize) -> String {
    if i < 10 {
        i.to_string()
    } else {
        format!("{{{i}}}")
    }
}

fn render_terms(
    terms: &[(Rat, MultiIndex)],
    mono: fn(&[usize]) -> String,
    minus: &str,
    coeff_sep: &str,
) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (c, m)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => s.push_str(minus),
            (0, false) => {}
            (_, true) => {
                let _ = write!(s, " {minus} ");
            }
            (_, false) => s.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            let _ = write!(s, "{a}{coeff_sep}");
        }
        s.push_str(&mono(m));
    }
    s
}

/// Renders terms in the given order, e.g. `θ5∧θ6 − θ1∧θ3`.
pub fn render_form_text(terms: &[(Rat, MultiIndex)]) -> String {
    render_terms(terms, monomial_text, "−", " ")
}

pub fn render_form_latex(terms: &[(Rat, MultiIndex)]) -> String {
    render_terms(terms, monomial_latex, "-", "\\,")
}
