#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rumin::exact_linalg::{kernel_image, Rat, RatMatrix};
use rumin::exterior::KForm;
use rumin::io_cli::expr::{parse_form, parse_operator};
use rumin::lie_core::{default_labels, LieAlgebra};
use rumin::op_algebra::{labels_from, OpMatrix};
use rumin::rumin_core::RuminComplex;

pub fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| r(x)).collect()
}

/// Algebra from 1-based bracket triples.
pub fn alg(name: &str, n: usize, br: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
    let mut m = BTreeMap::new();
    for (i, j, t) in br {
        m.insert((i - 1, j - 1), t.iter().map(|(k, c)| (k - 1, r(*c))).collect());
    }
    LieAlgebra::from_brackets(name, default_labels(n), &m).unwrap()
}

pub fn n42_r2() -> LieAlgebra {
    alg("n42_r2", 6, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)])])
}

pub fn n632() -> LieAlgebra {
    alg("n632", 6, &[(1, 2, &[(3, 1)]), (1, 3, &[(4, 1)]), (5, 6, &[(4, 1)])])
}

pub fn filiform6_2() -> LieAlgebra {
    alg(
        "filiform6_2",
        6,
        &[
            (1, 2, &[(3, 1)]),
            (1, 3, &[(4, 1)]),
            (1, 4, &[(5, 1)]),
            (2, 5, &[(6, 1)]),
            (3, 4, &[(6, -1)]),
        ],
    )
}

pub fn forms(n: usize, v: &[&str]) -> Vec<KForm> {
    v.iter().map(|s| parse_form(s, n).unwrap()).collect()
}

pub fn cols(fs: &[KForm], rows: usize) -> RatMatrix {
    RatMatrix::from_columns(&fs.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>(), rows)
}

/// `d_c` from `src` (functions named `syms`) to `dst`.
pub fn dc_in(rc: &RuminComplex, k: usize, src: &[KForm], syms: &[String], dst: &[KForm]) -> OpMatrix {
    let dst_labels: Vec<String> = (0..dst.len()).map(|i| format!("b{i}")).collect();
    rc.d_c(
        k,
        &cols(src, rc.ce.ext.len(k)),
        labels_from(syms),
        &cols(dst, rc.ce.ext.len(k + 1)),
        labels_from(&dst_labels),
    )
    .unwrap()
}

/// Compares row `i` of an operator matrix with a written coefficient.
pub fn row_matches(rc: &RuminComplex, m: &OpMatrix, i: usize, expected: &str) -> Result<(), String> {
    let want = parse_operator(expected, &rc.ops).map_err(|e| e.to_string())?;
    for (j, s) in m.col_labels().iter().enumerate() {
        let w = want.get(s).cloned().unwrap_or_default();
        if *m.get(i, j) != w {
            return Err(format!("row {i}, {s}: got {:?}, want {expected}", m.get(i, j)));
        }
    }
    if let Some(s) = want.keys().find(|s| !m.col_labels().contains(s)) {
        return Err(format!("symbol {s} not in the source basis"));
    }
    Ok(())
}

/// A random nilpotent algebra of dimension `n` built by successive central
/// extensions: each new generator is central and `[X_i, X_j] += ω_ij X_new`
/// for a random 2-cocycle `ω` of the algebra built so far.
pub fn random_nilpotent(rng: &mut ChaCha8Rng, n: usize) -> LieAlgebra {
    random_extension(rng, n, false)
}

/// As [`random_nilpotent`], but every new generator gets a weight `w_i + w_j`
/// of an earlier pair and only pairs of that total weight bracket into it, so
/// the result is positively graded in the standard basis.
pub fn random_graded(rng: &mut ChaCha8Rng, n: usize) -> LieAlgebra {
    random_extension(rng, n, true)
}

fn random_extension(rng: &mut ChaCha8Rng, n: usize, graded: bool) -> LieAlgebra {
    let start = rng.gen_range(1..=2.min(n));
    let mut weight: Vec<u32> = vec![1; start];
    let mut table: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
    for m in start..n {
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
        let target = if graded && !pairs.is_empty() {
            let (i, j) = pairs[rng.gen_range(0..pairs.len())];
            weight[i] + weight[j]
        } else {
            1
        };
        weight.push(target);
        let allowed: Vec<bool> = pairs.iter().map(|&(i, j)| !graded || weight[i] + weight[j] == target).collect();
        let c = |i: usize, j: usize, k: usize| -> Rat {
            let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
            if i == j {
                return Rat::zero();
            }
            table
                .get(&(lo, hi))
                .and_then(|t| t.iter().find(|(kk, _)| *kk == k).map(|(_, v)| v * &r(s)))
                .unwrap_or_else(Rat::zero)
        };
        // ω([x_a, x_b], x_c) + ω([x_b, x_c], x_a) + ω([x_c, x_a], x_b) = 0,
        // one row per (a < b < c), one column per pair.
        let col = |i: usize, j: usize| -> (usize, i64) {
            let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
            (pairs.iter().position(|p| *p == (lo, hi)).unwrap(), s)
        };
        let mut rows = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for cc in b + 1..m {
                    let mut row = vec![Rat::zero(); pairs.len()];
                    for (x, y, z) in [(a, b, cc), (b, cc, a), (cc, a, b)] {
                        for k in 0..m {
                            let v = c(x, y, k);
                            if !v.is_zero() && k != z {
                                let (ci, s) = col(k, z);
                                row[ci] += &v * &r(s);
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
        // Forbidden pairs get a row forcing their coefficient to zero.
        for (i, ok) in allowed.iter().enumerate() {
            if !ok {
                let mut row = vec![Rat::zero(); pairs.len()];
                row[i] = Rat::one();
                rows.push(row);
            }
        }
        let cocycles = if rows.is_empty() {
            (0..pairs.len())
                .map(|i| {
                    let mut e = vec![Rat::zero(); pairs.len()];
                    e[i] = Rat::one();
                    e
                })
                .collect()
        } else {
            kernel_image(&RatMatrix::from_rows(rows, pairs.len())).0.basis_vectors()
        };
        let mut omega = vec![Rat::zero(); pairs.len()];
        for z in &cocycles {
            let t = r(rng.gen_range(-2..=2));
            for (o, zi) in omega.iter_mut().zip(z) {
                *o += &t * zi;
            }
        }
        for (p, w) in pairs.iter().zip(&omega) {
            if !w.is_zero() {
                table.entry(*p).or_default().push((m, w.clone()));
            }
        }
    }
    LieAlgebra::from_brackets(format!("random{n}"), default_labels(n), &table).unwrap()
}

pub fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    if rng.gen_bool(0.3) {
        return Rat::zero();
    }
    Rat::new(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    let rank_cap = rng.gen_range(0..=rows.min(cols));
    // Product of two thin factors, so low ranks occur often.
    let a = RatMatrix::from_fn(rows, rank_cap.max(1), |_, _| random_rat(rng));
    let b = RatMatrix::from_fn(rank_cap.max(1), cols, |_, _| random_rat(rng));
    if rng.gen_bool(0.2) {
        RatMatrix::from_fn(rows, cols, |_, _| random_rat(rng))
    } else {
        a.mul(&b)
    }
}

/// Moore–Penrose inverse for the identity Gram via a full-rank factorization
/// `A = C F`: `A⁺ = Fᵀ(FFᵀ)⁻¹(CᵀC)⁻¹Cᵀ`.
pub fn mp_oracle(a: &RatMatrix) -> RatMatrix {
    let (rr, piv) = a.rref();
    if piv.is_empty() {
        return RatMatrix::zeros(a.cols(), a.rows());
    }
    let c = a.select_columns(&piv);
    let f = rr.select_rows(&(0..piv.len()).collect::<Vec<_>>());
    let ft = f.transpose();
    let ct = c.transpose();
    ft.mul(&f.mul(&ft).inverse().unwrap()).mul(&ct.mul(&c).inverse().unwrap()).mul(&ct)
}

/// `d_g` on 1-forms, rows indexed by pairs `i < j` in lexicographic order.
pub fn dg1_oracle(g: &LieAlgebra) -> (RatMatrix, Vec<(usize, usize)>) {
    let n = g.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let m = RatMatrix::from_fn(pairs.len(), n, |p, k| -g.c(pairs[p].0, pairs[p].1, k));
    (m, pairs)
}

fn lcs_terms(g: &LieAlgebra) -> Vec<Vec<Vec<Rat>>> {
    let n = g.dim();
    let mut terms = Vec::new();
    let mut cur: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    while !cur.is_empty() {
        let mut next = Vec::new();
        for a in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[a] = Rat::one();
            for v in &cur {
                next.push(g.bracket(&e, v));
            }
        }
        terms.push(cur);
        cur = RatMatrix::from_rows(next, n).rref().0.row_vectors().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    }
    terms.push(Vec::new());
    terms
}

fn kernel_of(rows: Vec<Vec<Rat>>, n: usize) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    }
    kernel_image(&RatMatrix::from_rows(rows, n)).0.basis_vectors()
}

/// Bases of `W_j = F_j ∩ F_{j−1}^⊥` for the identity Gram, `F_j` the
/// annihilator of the `j`-th term of the lower central series; index 0 is empty.
pub fn weight_spaces_oracle(g: &LieAlgebra) -> Vec<Vec<Vec<Rat>>> {
    let n = g.dim();
    let terms = lcs_terms(g);
    let mut w = vec![Vec::new()];
    for j in 1..terms.len() {
        let mut rows = terms[j].clone();
        rows.extend(kernel_of(terms[j - 1].clone(), n));
        w.push(kernel_of(rows, n));
    }
    w
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// `d_g` on k-forms by the Leibniz rule, rows and columns indexed by sorted
/// subsets in lexicographic order.
pub fn dg_oracle(g: &LieAlgebra, k: usize) -> (RatMatrix, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = g.dim();
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let mut m = RatMatrix::zeros(dst.len(), src.len());
    for (col, s) in src.iter().enumerate() {
        for r in 0..k {
            for a in 0..n {
                for b in a + 1..n {
                    let c = -g.c(a, b, s[r]);
                    if c.is_zero() {
                        continue;
                    }
                    let mut seq = s[..r].to_vec();
                    seq.extend([a, b]);
                    seq.extend_from_slice(&s[r + 1..]);
                    let mut sorted = seq.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != seq.len() {
                        continue;
                    }
                    // Sign of the sorting permutation, by counting inversions.
                    let inv = (0..seq.len()).flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j))).filter(|&(i, j)| seq[i] > seq[j]).count();
                    let sign = if (inv + r) % 2 == 0 { 1 } else { -1 };
                    let row = dst.iter().position(|t| *t == sorted).unwrap();
                    m[(row, col)] += &c * &r_(sign);
                }
            }
        }
    }
    (m, src, dst)
}

fn r_(n: i64) -> Rat {
    Rat::from_int(n)
}

/// Coordinates of `v_1∧…∧v_k` on the lexicographic monomials.
fn wedge_of(vs: &[&Vec<Rat>], monos: &[Vec<usize>]) -> Vec<Rat> {
    monos
        .iter()
        .map(|t| RatMatrix::from_fn(vs.len(), vs.len(), |i, j| vs[i][t[j]].clone()).determinant())
        .collect()
}

/// Weights `(p, j)` with `j < p` such that `d_g⁻¹` sends some pure
/// weight-`p` form to one with a nonzero weight-`j` part.
pub fn dginv_lowers_weight(g: &LieAlgebra) -> Option<(usize, usize)> {
    let n = g.dim();
    let adapted: Vec<(usize, Vec<Rat>)> = weight_spaces_oracle(g)
        .into_iter()
        .enumerate()
        .flat_map(|(w, vs)| vs.into_iter().map(move |v| (w, v)))
        .collect();
    let dot = |u: &[Rat], v: &[Rat]| u.iter().zip(v).fold(Rat::zero(), |s, (x, y)| &s + &(x * y));
    for k in 1..n {
        let (a, src, dst) = dg_oracle(g, k);
        let inv = mp_oracle(&a);
        let pure = |deg: usize, monos: &[Vec<usize>]| -> Vec<(usize, Vec<Rat>)> {
            subsets(n, deg)
                .into_iter()
                .map(|t| {
                    let vs: Vec<&Vec<Rat>> = t.iter().map(|&i| &adapted[i].1).collect();
                    (t.iter().map(|&i| adapted[i].0).sum(), wedge_of(&vs, monos))
                })
                .collect()
        };
        let lower = pure(k, &src);
        for (p, beta) in pure(k + 1, &dst) {
            let gamma = inv.mul_vec(&beta);
            if let Some((j, _)) = lower.iter().find(|(j, f)| *j < p && !dot(f, &gamma).is_zero()) {
                return Some((p, *j));
            }
        }
    }
    None
}
