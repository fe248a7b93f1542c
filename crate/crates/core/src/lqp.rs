//! Weight gaps between consecutive Rumin degrees and the ℓ^{q,p}
//! non-vanishing thresholds they give.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ce_complex::CeOperator;
use crate::exact_linalg::{Rat, Subspace};
use crate::exterior::{render_form_text, KForm};
use crate::lie_core::{homogeneous_dimension, Grading};
use crate::weights::{form_weight_set, WeightTable};

/// Label of `δN_max` when the algebra admits no stratification.
pub const CARNOT_ONLY: &str = "Carnot-only bound";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormWeights {
    pub form: String,
    pub weights: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LqpDegree {
    pub degree: usize,
    pub delta_min: Rat,
    pub delta_max: Rat,
    /// `δN_min / T`; absent unless degrees `k` and `k − 1` are homogeneous.
    pub threshold: Option<Rat>,
    pub homogeneity_ok: bool,
    pub forms: Vec<FormWeights>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LqpReport {
    pub grading: String,
    pub homogeneous_dimension: Rat,
    pub covector_weights: Vec<Rat>,
    pub stratifiable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_max_label: Option<String>,
    pub degrees: Vec<LqpDegree>,
}

/// A basis of `e0` made of weight-homogeneous forms when one exists among
/// the monomial weight pieces; otherwise the canonical basis, flagged `false`.
pub fn graded_basis(e0: &Subspace, n: usize, k: usize, wt: &WeightTable) -> (Vec<KForm>, bool) {
    let monos = crate::exterior::lambda_basis(n, k);
    let weights: BTreeSet<Rat> = monos.iter().map(|m| wt.monomial(m)).collect();
    let mut out = Vec::new();
    for w in &weights {
        let idx: Vec<usize> = (0..monos.len()).filter(|&i| wt.monomial(&monos[i]) == *w).collect();
        let piece = e0.intersect(&Subspace::coordinate(&idx, monos.len()));
        out.extend(piece.basis_vectors().into_iter().map(|coeffs| KForm { n, degree: k, coeffs }));
    }
    if out.len() == e0.dim() {
        (out, true)
    } else {
        let canon = e0
            .basis_vectors()
            .into_iter()
            .map(|coeffs| KForm { n, degree: k, coeffs })
            .collect();
        (canon, false)
    }
}

fn weight_sets(forms: &[KForm], wt: &WeightTable) -> Vec<BTreeSet<Rat>> {
    forms.iter().map(|f| form_weight_set(f, wt)).collect()
}

/// `(δN_min(k), δN_max(k), homogeneity_ok)` from the degree-`k` and
/// degree-`k−1` bases. Weights are unions of per-form weight sets; Rumin
/// 0-forms weigh 0.
pub fn delta_n(upper: &[KForm], lower: &[KForm], wt: &WeightTable) -> (Rat, Rat, bool) {
    let up = weight_sets(upper, wt);
    let lo = weight_sets(lower, wt);
    let homogeneous = up.iter().chain(&lo).all(|s| s.len() <= 1);
    let collect = |sets: &[BTreeSet<Rat>]| -> BTreeSet<Rat> { sets.iter().flatten().cloned().collect() };
    let u = collect(&up);
    let l = collect(&lo);
    let zero = Rat::zero();
    let umin = u.first().unwrap_or(&zero);
    let umax = u.last().unwrap_or(&zero);
    let lmin = l.first().unwrap_or(&zero);
    let lmax = l.last().unwrap_or(&zero);
    (umin - lmax, umax - lmin, homogeneous)
}

/// Threshold report for `gr`. `bases[k]`, when given, replaces the graded
/// basis of `E_0^k`.
pub fn interval_report(
    ce: &CeOperator,
    gr: &Grading,
    bases: Option<&[Vec<KForm>]>,
    stratifiable: bool,
) -> LqpReport {
    let n = ce.n;
    let wt = WeightTable {
        kind: crate::weights::WeightKind::Grading(gr.name.clone()),
        covector: gr.weights.clone(),
    };
    let mut per_degree = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let given = bases.and_then(|b| b.get(k)).filter(|b| !b.is_empty());
        let (forms, ok) = match given {
            Some(b) => (b.clone(), true),
            None => graded_basis(&ce.e0[k], n, k, &wt),
        };
        per_degree.push((forms, ok));
    }
    let t = homogeneous_dimension(gr);
    let mut degrees = Vec::with_capacity(n);
    for k in 1..=n {
        let (upper, uok) = &per_degree[k];
        let (lower, lok) = &per_degree[k - 1];
        let (dmin, dmax, hom) = delta_n(upper, lower, &wt);
        let homogeneity_ok = hom && *uok && *lok;
        let forms = upper
            .iter()
            .map(|f| FormWeights {
                form: render_form_text(&f.terms()),
                weights: form_weight_set(f, &wt).into_iter().collect(),
            })
            .collect();
        degrees.push(LqpDegree {
            degree: k,
            threshold: homogeneity_ok.then(|| &dmin / &t),
            delta_min: dmin,
            delta_max: dmax,
            homogeneity_ok,
            forms,
        });
    }
    LqpReport {
        grading: gr.name.clone(),
        homogeneous_dimension: t,
        covector_weights: gr.weights.clone(),
        stratifiable,
        delta_max_label: (!stratifiable).then(|| CARNOT_ONLY.to_string()),
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::InnerProduct;
    use crate::lie_core::{default_labels, validate_grading, LieAlgebra};
    use std::collections::BTreeMap;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn n632() -> LieAlgebra {
        let mut m = BTreeMap::new();
        m.insert((0, 1), vec![(2, Rat::one())]);
        m.insert((0, 2), vec![(3, Rat::one())]);
        m.insert((4, 5), vec![(3, Rat::one())]);
        LieAlgebra::from_brackets("n632", default_labels(6), &m).unwrap()
    }

    fn thresholds(r: &LqpReport) -> Vec<Option<Rat>> {
        r.degrees.iter().map(|d| d.threshold.clone()).collect()
    }

    #[test]
    fn n632_both_gradings() {
        let g = n632();
        let ce = CeOperator::new(&g, &InnerProduct::identity(6));
        let v1 = validate_grading(&g, "V1", &ints(&[1, 2, 3, 4, 2, 2])).unwrap();
        let r1 = interval_report(&ce, &v1, None, false);
        assert_eq!(r1.homogeneous_dimension, Rat::from_int(14));
        assert_eq!(thresholds(&r1)[..2], [Some(Rat::new(1, 14)), Some(Rat::new(1, 14))]);
        assert_eq!(r1.delta_max_label.as_deref(), Some(CARNOT_ONLY));
        let v2 = validate_grading(&g, "V2", &ints(&[1, 1, 2, 3, 1, 2])).unwrap();
        let r2 = interval_report(&ce, &v2, None, false);
        assert_eq!(r2.homogeneous_dimension, Rat::from_int(10));
        assert_eq!(thresholds(&r2)[..2], [Some(Rat::new(1, 10)), Some(Rat::zero())]);
        assert!(r2.degrees.iter().all(|d| d.homogeneity_ok && d.delta_min <= d.delta_max));
    }

    #[test]
    fn abelian_threshold_one_over_n() {
        let n = 4;
        let g = LieAlgebra::abelian(n);
        let ce = CeOperator::new(&g, &InnerProduct::identity(n));
        let gr = validate_grading(&g, "unit", &ints(&[1, 1, 1, 1])).unwrap();
        let r = interval_report(&ce, &gr, None, true);
        assert!(r.delta_max_label.is_none());
        for d in &r.degrees {
            assert_eq!(d.delta_min, Rat::one());
            assert_eq!(d.delta_max, Rat::one());
            assert_eq!(d.threshold, Some(Rat::new(1, 4)));
        }
    }

    #[test]
    fn mixed_form_flags_report() {
        let wt = WeightTable {
            kind: crate::weights::WeightKind::Asymptotic,
            covector: ints(&[1, 1, 2, 3, 1, 1]),
        };
        let mixed = KForm::from_terms(6, 2, &[(Rat::one(), vec![4, 5]), (Rat::from_int(-1), vec![0, 2])]);
        let lower = vec![KForm::monomial(6, &[0])];
        let (dmin, dmax, ok) = delta_n(&[mixed], &lower, &wt);
        assert!(!ok);
        assert_eq!((dmin, dmax), (Rat::one(), Rat::from_int(2)));
    }
}
