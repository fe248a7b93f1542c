//! Lie algebras given by rational structure constants.
//!
//! Basis indices are 0-based internally and rendered 1-based.

use std::collections::BTreeMap;

use crate::error::{Error, JacobiWitness, Result};
use crate::exact_linalg::{kernel_image, Rat, RatMatrix, Subspace};

/// A finite-dimensional Lie algebra with basis `X_0..X_{n-1}`.
///
/// Structure constants are kept as a full antisymmetric table
/// `[X_i, X_j] = Σ_k c(i, j, k) X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Rat>,
}

impl LieAlgebra {
    /// Builds an algebra from brackets `(i, j) -> Σ c_k X_k` with `i < j`.
    ///
    /// No Jacobi or nilpotency check happens here; see [`validate_algebra`].
    pub fn from_brackets(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: &BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    ) -> Result<LieAlgebra> {
        let n = labels.len();
        let mut g = LieAlgebra {
            name: name.into(),
            labels,
            table: vec![Rat::zero(); n * n * n],
        };
        for (&(i, j), terms) in brackets {
            if i >= j || j >= n {
                return Err(Error::InvalidInput(format!(
                    "bracket key ({}, {}) must satisfy i < j <= {n}",
                    i + 1,
                    j + 1
                )));
            }
            for (k, c) in terms {
                if *k >= n {
                    return Err(Error::IndexOutOfRange {
                        index: (k + 1).to_string(),
                        dim: n,
                    });
                }
                g.set(i, j, *k, &g.c(i, j, *k) + c);
            }
        }
        Ok(g)
    }

    /// Abelian algebra of dimension `n` with labels `X1..Xn`.
    pub fn abelian(n: usize) -> LieAlgebra {
        LieAlgebra {
            name: format!("abelian{n}"),
            labels: default_labels(n),
            table: vec![Rat::zero(); n * n * n],
        }
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        let n = self.dim();
        self.table[(j * n + i) * n + k] = -&v;
        self.table[(i * n + j) * n + k] = v;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LieAlgebra {
        self.name = name.into();
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// The structure constant `c_{ij}^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rat {
        let n = self.dim();
        self.table[(i * n + j) * n + k].clone()
    }

    fn c_ref(&self, i: usize, j: usize, k: usize) -> &Rat {
        let n = self.dim();
        &self.table[(i * n + j) * n + k]
    }

    /// Coordinates of `[X_i, X_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        (0..self.dim()).map(|k| self.c(i, j, k)).collect()
    }

    /// Nonzero brackets as `(i, j, [(k, c)])` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<(usize, Rat)>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(usize, Rat)> = (0..n)
                    .filter(|&k| !self.c_ref(i, j, k).is_zero())
                    .map(|k| (k, self.c(i, j, k)))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }

    /// Bilinear bracket of two vectors in coordinates.
    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if i == j {
                    continue;
                }
                let ab = a * b;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c_ref(i, j, k);
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad X_a` acting on column vectors.
    pub fn ad(&self, a: usize) -> RatMatrix {
        let n = self.dim();
        RatMatrix::from_fn(n, n, |k, j| self.c(a, j, k))
    }

    /// Re-expresses the algebra in a new basis.
    ///
    /// Row `a` of `t` gives the new covector `θ'_a = Σ_b t[a][b] θ_b`; the new
    /// vectors are the dual basis `X' = t^{-T} X`.
    pub fn change_basis(&self, t: &RatMatrix, labels: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n || labels.len() != n {
            return Err(Error::DimensionMismatch("change of basis".into()));
        }
        let s = t
            .inverse()
            .ok_or_else(|| Error::InvalidInput("singular change of basis".into()))?
            .transpose();
        let mut g = LieAlgebra {
            name: self.name.clone(),
            labels,
            table: vec![Rat::zero(); n * n * n],
        };
        let xs: Vec<Vec<Rat>> = (0..n).map(|a| s.row(a).to_vec()).collect();
        for a in 0..n {
            for c in a + 1..n {
                let br = self.bracket(&xs[a], &xs[c]);
                let new = t.mul_vec(&br);
                for (f, v) in new.into_iter().enumerate() {
                    g.set(a, c, f, v);
                }
            }
        }
        Ok(g)
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// Outcome of [`validate_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub jacobi_violations: Vec<JacobiWitness>,
    /// Nilpotency step, or `None` when the lower central series stalls.
    pub step: Option<usize>,
    /// Dimension at which the series stalled, when it did.
    pub stalled_at: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.jacobi_violations.is_empty() && self.step.is_some()
    }

    pub fn into_result(self) -> Result<usize> {
        if !self.jacobi_violations.is_empty() {
            return Err(Error::JacobiViolation(self.jacobi_violations));
        }
        match self.step {
            Some(s) => Ok(s),
            None => Err(Error::NotNilpotent(self.stalled_at.unwrap_or(0))),
        }
    }
}

/// Checks the Jacobi identity on all triples and nilpotency.
pub fn validate_algebra(g: &LieAlgebra) -> ValidationReport {
    let n = g.dim();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in 0..n {
                    let mut s = Rat::zero();
                    for m in 0..n {
                        for (a, b, c, d) in [(i, j, m, k), (j, k, m, i), (k, i, m, j)] {
                            let x = g.c_ref(a, b, c);
                            let y = g.c_ref(c, d, l);
                            if !x.is_zero() && !y.is_zero() {
                                s += x * y;
                            }
                        }
                    }
                    if !s.is_zero() {
                        violations.push(JacobiWitness {
                            i,
                            j,
                            k,
                            l,
                            value: s,
                        });
                    }
                }
            }
        }
    }
    let (step, stalled_at) = match lower_central_series(g) {
        Ok(cs) => (Some(cs.step), None),
        Err(Error::NotNilpotent(d)) => (None, Some(d)),
        Err(_) => (None, None),
    };
    ValidationReport {
        jacobi_violations: violations,
        step,
        stalled_at,
    }
}

/// `g^(0) = g ⊋ g^(1) ⊋ … ⊋ g^(s) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<Subspace>,
    pub step: usize,
}

/// `[g, S]` as the span of brackets of basis vectors with basis vectors of `S`.
pub fn bracket_with_algebra(g: &LieAlgebra, s: &Subspace) -> Subspace {
    let n = g.dim();
    let mut rows = Vec::new();
    for a in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[a] = Rat::one();
        for v in s.basis_vectors() {
            rows.push(g.bracket(&e, &v));
        }
    }
    Subspace::span(&rows, n)
}

/// `[g, S]` as the sum of the images of `S` under every `ad X_a`.
pub fn bracket_with_algebra_ad(g: &LieAlgebra, s: &Subspace) -> Subspace {
    let n = g.dim();
    let b = s.basis().transpose();
    let mut acc = Subspace::zero(n);
    for a in 0..n {
        let (_, im) = kernel_image(&g.ad(a).mul(&b));
        acc = acc.sum(&im);
    }
    acc
}

/// Lower central series, capped at `n + 1` terms.
pub fn lower_central_series(g: &LieAlgebra) -> Result<CentralSeries> {
    let n = g.dim();
    let mut terms = vec![Subspace::full(n)];
    while !terms.last().unwrap().is_zero() {
        let last = terms.last().unwrap();
        let next = bracket_with_algebra(g, last);
        if next.dim() == last.dim() || terms.len() > n + 1 {
            return Err(Error::NotNilpotent(next.dim()));
        }
        terms.push(next);
    }
    let step = terms.len() - 1;
    Ok(CentralSeries { terms, step })
}

/// A positive grading `g = ⊕ V_t` diagonal in the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub name: String,
    pub weights: Vec<Rat>,
    layers: BTreeMap<Rat, Vec<usize>>,
}

impl Grading {
    /// Basis indices of each occupied layer, by increasing weight.
    pub fn layers(&self) -> &BTreeMap<Rat, Vec<usize>> {
        &self.layers
    }

    pub fn layer(&self, t: &Rat, n: usize) -> Subspace {
        Subspace::coordinate(self.layers.get(t).map_or(&[][..], |v| &v[..]), n)
    }
}

/// Checks positivity and `[V_t, V_u] ⊆ V_{t+u}` on all basis pairs.
pub fn validate_grading(g: &LieAlgebra, name: &str, weights: &[Rat]) -> Result<Grading> {
    let n = g.dim();
    if weights.len() != n {
        return Err(Error::InvalidGrading(format!(
            "{} weights for dimension {n}",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
        return Err(Error::InvalidGrading(format!("weight {w} is not positive")));
    }
    for (i, j, terms) in g.nonzero_brackets() {
        let target = &weights[i] + &weights[j];
        for (k, _) in terms {
            if weights[k] != target {
                return Err(Error::GradingViolation { i, j, k });
            }
        }
    }
    let mut layers: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
    for (i, w) in weights.iter().enumerate() {
        layers.entry(w.clone()).or_default().push(i);
    }
    Ok(Grading {
        name: name.to_string(),
        weights: weights.to_vec(),
        layers,
    })
}

/// True when the weights are `1..=s` and `[V_1, V_j] = V_{j+1}` for every `j`.
pub fn is_stratification(g: &LieAlgebra, gr: &Grading) -> bool {
    let n = g.dim();
    let s = gr.layers.len();
    let expected: Vec<Rat> = (1..=s).map(Rat::from).collect();
    if gr.layers.keys().cloned().collect::<Vec<_>>() != expected {
        return false;
    }
    let v1 = gr.layer(&Rat::one(), n);
    for j in 1..=s {
        let vj = gr.layer(&Rat::from(j), n);
        let mut rows = Vec::new();
        for a in v1.basis_vectors() {
            for b in vj.basis_vectors() {
                rows.push(g.bracket(&a, &b));
            }
        }
        if Subspace::span(&rows, n) != gr.layer(&Rat::from(j + 1), n) {
            return false;
        }
    }
    true
}

/// `Σ_t t · dim V_t`.
pub fn homogeneous_dimension(gr: &Grading) -> Rat {
    gr.weights.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn alg(n: usize, br: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
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

    fn n632() -> LieAlgebra {
        alg(6, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (5, 6, &[(4, 1)])])
    }

    #[test]
    fn abelian_valid_step_one() {
        let r = validate_algebra(&LieAlgebra::abelian(3));
        assert!(r.is_valid());
        assert_eq!(r.step, Some(1));
    }

    #[test]
    fn n632_series() {
        let g = n632();
        assert!(validate_algebra(&g).is_valid());
        let cs = lower_central_series(&g).unwrap();
        assert_eq!(cs.step, 3);
        assert_eq!(cs.terms[1], Subspace::coordinate(&[2, 3], 6));
        assert_eq!(cs.terms[2], Subspace::coordinate(&[3], 6));
    }

    #[test]
    fn sl2_like_not_nilpotent() {
        let g = alg(2, &[(1, 2, &[(2, 1)])]);
        let r = validate_algebra(&g);
        assert!(r.jacobi_violations.is_empty());
        assert!(matches!(r.into_result(), Err(Error::NotNilpotent(1))));
    }

    #[test]
    fn jacobi_violation_reported() {
        let g = alg(4, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (2, 3, &[(4, 1)]), (2, 4, &[(1, 1)])]);
        let r = validate_algebra(&g);
        assert!(!r.jacobi_violations.is_empty());
    }

    #[test]
    fn gradings_of_n632() {
        let g = n632();
        let v1 = validate_grading(&g, "V1", &ints(&[1, 2, 3, 4, 2, 2])).unwrap();
        let v2 = validate_grading(&g, "V2", &ints(&[1, 1, 2, 3, 1, 2])).unwrap();
        assert_eq!(homogeneous_dimension(&v1), Rat::from_int(14));
        assert_eq!(homogeneous_dimension(&v2), Rat::from_int(10));
        assert!(!is_stratification(&g, &v1));
        assert!(!is_stratification(&g, &v2));
        assert!(matches!(
            validate_grading(&g, "one", &ints(&[1; 6])),
            Err(Error::GradingViolation { i: 0, j: 1, k: 2 })
        ));
    }

    #[test]
    fn stratification_of_n42_r2() {
        let g = alg(6, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])]);
        let s = validate_grading(&g, "s", &ints(&[1, 1, 2, 3, 1, 1])).unwrap();
        assert!(is_stratification(&g, &s));
        let a = LieAlgebra::abelian(4);
        let s = validate_grading(&a, "s", &ints(&[1; 4])).unwrap();
        assert!(is_stratification(&a, &s));
        assert_eq!(homogeneous_dimension(&s), Rat::from_int(4));
    }

    #[test]
    fn two_series_constructions_agree() {
        let g = n632();
        let cs = lower_central_series(&g).unwrap();
        for t in &cs.terms {
            assert_eq!(bracket_with_algebra(&g, t), bracket_with_algebra_ad(&g, t));
        }
    }

    #[test]
    fn change_basis_round_trip() {
        let g = n632();
        let t = RatMatrix::from_fn(6, 6, |i, j| {
            if i == j {
                Rat::one()
            } else if j == i + 1 {
                Rat::from_int(2)
            } else {
                Rat::zero()
            }
        });
        let h = g.change_basis(&t, default_labels(6)).unwrap();
        assert!(validate_algebra(&h).is_valid());
        let back = h.change_basis(&t.inverse().unwrap(), default_labels(6)).unwrap();
        assert_eq!(back, g.with_name("t"));
    }
}
