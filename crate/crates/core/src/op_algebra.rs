//! Non-commutative polynomials in the left-invariant fields X_1..X_n,
//! normal-ordered modulo `[X_i, X_j] = Σ_k c_{ij}^k X_k`, and matrices of them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::exact_linalg::{Rat, RatMatrix};
use crate::exterior::latex_subscript;
use crate::lie_core::LieAlgebra;

/// A word `X_{w_0} X_{w_1} …` (0-based generator indices); empty is the identity.
///
/// Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OpWord(pub Vec<u8>);

impl Ord for OpWord {
    fn cmp(&self, o: &OpWord) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for OpWord {
    fn partial_cmp(&self, o: &OpWord) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl OpWord {
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Runs of one letter as powers: `X1^2X3`.
    pub fn text(&self) -> String {
        self.runs(|a, e| match e {
            1 => format!("X{a}"),
            _ => format!("X{a}^{e}"),
        })
    }

    pub fn latex(&self) -> String {
        self.runs(|a, e| match e {
            1 => format!("X_{}", latex_subscript(a)),
            _ => format!("X_{}^{}", latex_subscript(a), latex_subscript(e)),
        })
    }

    fn runs(&self, letter: impl Fn(usize, usize) -> String) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let j = (i..self.0.len()).find(|&j| self.0[j] != self.0[i]).unwrap_or(self.0.len());
            out.push_str(&letter(self.0[i] as usize + 1, j - i));
            i = j;
        }
        out
    }
}

/// Rational combination of words; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct OpPoly {
    terms: BTreeMap<OpWord, Rat>,
}

impl OpPoly {
    pub fn zero() -> OpPoly {
        OpPoly::default()
    }

    pub fn one() -> OpPoly {
        OpPoly::scalar(Rat::one())
    }

    pub fn scalar(c: Rat) -> OpPoly {
        OpPoly::term(OpWord::default(), c)
    }

    /// The single generator `X_a` (0-based).
    pub fn generator(a: usize) -> OpPoly {
        OpPoly::term(OpWord(vec![a as u8]), Rat::one())
    }

    pub fn term(w: OpWord, c: Rat) -> OpPoly {
        let mut p = OpPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: OpWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &OpPoly, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &o.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn add(&self, o: &OpPoly) -> OpPoly {
        let mut p = self.clone();
        p.add_scaled(o, &Rat::one());
        p
    }

    pub fn sub(&self, o: &OpPoly) -> OpPoly {
        let mut p = self.clone();
        p.add_scaled(o, &Rat::from_int(-1));
        p
    }

    pub fn neg(&self) -> OpPoly {
        self.scale(&Rat::from_int(-1))
    }

    pub fn scale(&self, c: &Rat) -> OpPoly {
        let mut p = OpPoly::zero();
        p.add_scaled(self, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpWord, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &OpWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn identity_coeff(&self) -> Rat {
        self.coeff(&OpWord::default())
    }

    /// True when only the empty word occurs.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(OpWord::is_empty)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(OpWord::len).max()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(OpWord::is_sorted)
    }

    /// Product as concatenation of words, without any reduction.
    pub fn concat(&self, o: &OpPoly) -> OpPoly {
        let mut p = OpPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let mut w = u.0.clone();
                w.extend_from_slice(&v.0);
                p.add_term(OpWord(w), a * b);
            }
        }
        p
    }

    /// Weighted degree of each word under per-generator weights.
    pub fn word_weights(&self, w: &[Rat]) -> Vec<Rat> {
        self.terms
            .keys()
            .map(|word| word.0.iter().map(|&a| &w[a as usize]).sum())
            .collect()
    }
}

/// PBW straightening context for one Lie algebra.
#[derive(Debug)]
pub struct OpAlgebra {
    n: usize,
    /// `[X_a, X_b]` for `a > b`, indexed `a * n + b`.
    rel: Vec<Vec<(u8, Rat)>>,
    cache: Mutex<HashMap<Vec<u8>, OpPoly>>,
}

impl OpAlgebra {
    pub fn new(g: &LieAlgebra) -> OpAlgebra {
        let n = g.dim();
        assert!(n <= 255, "at most 255 generators");
        let mut rel = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..a {
                rel[a * n + b] = (0..n)
                    .map(|k| (k as u8, g.c(a, b, k)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
            }
        }
        OpAlgebra {
            n,
            rel,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Normal form of `X_a · X_w` for a sorted word `w`.
    fn mul_gen(&self, a: u8, w: &[u8]) -> OpPoly {
        if w.is_empty() || a <= w[0] {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(a);
            v.extend_from_slice(w);
            return OpPoly::term(OpWord(v), Rat::one());
        }
        let mut key = Vec::with_capacity(w.len() + 1);
        key.push(a);
        key.extend_from_slice(w);
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let b = w[0];
        let rest = &w[1..];
        let mut out = OpPoly::zero();
        // X_a X_b = X_b X_a + [X_a, X_b]
        for (u, c) in &self.mul_gen(a, rest).terms {
            if u.0.is_empty() || b <= u.0[0] {
                let mut v = Vec::with_capacity(u.len() + 1);
                v.push(b);
                v.extend_from_slice(&u.0);
                out.add_term(OpWord(v), c.clone());
            } else {
                out.add_scaled(&self.mul_gen(b, &u.0), c);
            }
        }
        for (k, c) in &self.rel[a as usize * self.n + b as usize] {
            out.add_scaled(&self.mul_gen(*k, rest), c);
        }
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// `X_a · p` for a normal-ordered `p`.
    fn lmul_gen(&self, a: u8, p: &OpPoly) -> OpPoly {
        let mut out = OpPoly::zero();
        for (w, c) in &p.terms {
            out.add_scaled(&self.mul_gen(a, &w.0), c);
        }
        out
    }

    /// Normal form of a single word.
    pub fn normalize_word(&self, w: &[u8]) -> OpPoly {
        let mut v = OpPoly::one();
        for &a in w.iter().rev() {
            v = self.lmul_gen(a, &v);
        }
        v
    }

    /// Rewrites every word into non-decreasing order.
    pub fn normalize(&self, p: &OpPoly) -> OpPoly {
        if p.is_normal() {
            return p.clone();
        }
        let mut out = OpPoly::zero();
        for (w, c) in &p.terms {
            if w.is_sorted() {
                out.add_term(w.clone(), c.clone());
            } else {
                out.add_scaled(&self.normalize_word(&w.0), c);
            }
        }
        out
    }

    /// Product of two normal-ordered polynomials, normal-ordered.
    pub fn mul(&self, p: &OpPoly, q: &OpPoly) -> OpPoly {
        let mut out = OpPoly::zero();
        for (u, c) in &p.terms {
            let mut v = q.clone();
            for &a in u.0.iter().rev() {
                v = self.lmul_gen(a, &v);
            }
            out.add_scaled(&v, c);
        }
        out
    }

    pub fn op_equal(&self, a: &OpPoly, b: &OpPoly) -> bool {
        self.normalize(a) == self.normalize(b)
    }
}

pub type Labels = Arc<[String]>;

pub fn labels_from<S: ToString>(v: &[S]) -> Labels {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().into()
}

/// Matrix of operators between labeled bases.
///
/// Column `j` is the image of the `j`-th domain element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpMatrix {
    rows: usize,
    cols: usize,
    row_labels: Labels,
    col_labels: Labels,
    entries: Vec<OpPoly>,
}

impl OpMatrix {
    pub fn zeros(row_labels: Labels, col_labels: Labels) -> OpMatrix {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        OpMatrix {
            rows,
            cols,
            row_labels,
            col_labels,
            entries: vec![OpPoly::zero(); rows * cols],
        }
    }

    pub fn identity(labels: Labels) -> OpMatrix {
        let mut m = OpMatrix::zeros(labels.clone(), labels);
        for i in 0..m.rows {
            m.entries[i * m.cols + i] = OpPoly::one();
        }
        m
    }

    pub fn from_rat(m: &RatMatrix, row_labels: Labels, col_labels: Labels) -> OpMatrix {
        assert_eq!((m.rows(), m.cols()), (row_labels.len(), col_labels.len()));
        let mut out = OpMatrix::zeros(row_labels, col_labels);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.entries[i * m.cols() + j] = OpPoly::scalar(m[(i, j)].clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &Labels {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &Labels {
        &self.col_labels
    }

    pub fn with_labels(mut self, row_labels: Labels, col_labels: Labels) -> OpMatrix {
        assert_eq!((self.rows, self.cols), (row_labels.len(), col_labels.len()));
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn get(&self, i: usize, j: usize) -> &OpPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: OpPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut OpPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[OpPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(OpPoly::is_zero)
    }

    fn check_same_shape(&self, o: &OpMatrix) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &OpMatrix) -> Result<OpMatrix> {
        self.check_same_shape(o)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&o.entries) {
            a.add_scaled(b, &Rat::one());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &OpMatrix) -> Result<OpMatrix> {
        self.check_same_shape(o)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&o.entries) {
            a.add_scaled(b, &Rat::from_int(-1));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> OpMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.scale(c);
        }
        out
    }

    /// `self ∘ b`: apply `b` first.
    pub fn compose(&self, b: &OpMatrix, alg: &OpAlgebra) -> Result<OpMatrix> {
        if self.cols != b.rows || self.col_labels != b.row_labels {
            return Err(Error::DimensionMismatch(format!(
                "compose {}x{} after {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let mut out = OpMatrix::zeros(self.row_labels.clone(), b.col_labels.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let scalar = a.is_scalar().then(|| a.identity_coeff());
                for j in 0..b.cols {
                    let bk = b.get(k, j);
                    if bk.is_zero() {
                        continue;
                    }
                    let cell = &mut out.entries[i * b.cols + j];
                    match &scalar {
                        Some(c) => cell.add_scaled(bk, c),
                        None => cell.add_scaled(&alg.mul(a, bk), &Rat::one()),
                    }
                }
            }
        }
        Ok(out)
    }

    /// `m · self` for a rational matrix `m` with the given row labels.
    pub fn rat_left(&self, m: &RatMatrix, row_labels: Labels) -> OpMatrix {
        assert_eq!(m.cols(), self.rows, "rat_left shape");
        let mut out = OpMatrix::zeros(row_labels, self.col_labels.clone());
        for i in 0..m.rows() {
            for k in 0..m.cols() {
                let c = &m[(i, k)];
                if c.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    out.entries[i * self.cols + j].add_scaled(self.get(k, j), c);
                }
            }
        }
        out
    }

    /// `self · m` for a rational matrix `m` with the given column labels.
    pub fn rat_right(&self, m: &RatMatrix, col_labels: Labels) -> OpMatrix {
        assert_eq!(m.rows(), self.cols, "rat_right shape");
        let mut out = OpMatrix::zeros(self.row_labels.clone(), col_labels);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m.cols() {
                    let c = &m[(k, j)];
                    if !c.is_zero() {
                        out.entries[i * m.cols() + j].add_scaled(a, c);
                    }
                }
            }
        }
        out
    }

    /// Coefficients of the empty word.
    pub fn identity_part(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).identity_coeff())
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(OpPoly::max_degree)
            .max()
            .unwrap_or(0)
    }

    /// Entry-wise equality after normalization; ignores labels.
    pub fn op_equal(&self, o: &OpMatrix, alg: &OpAlgebra) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self
                .entries
                .iter()
                .zip(&o.entries)
                .all(|(a, b)| alg.op_equal(a, b))
    }

    /// First entry where the two matrices differ, if any.
    pub fn first_difference(&self, o: &OpMatrix) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != o.get(i, j))
    }
}

/// A coefficient operator applied to named symbols, `Σ_s p_s f_s`.
pub fn render_applied_text(row: &[(OpPoly, String)]) -> String {
    render_applied(row, OpWord::text, &|s: &str| s.to_string(), &Rat::to_string, "−")
}

pub fn render_applied_latex(row: &[(OpPoly, String)]) -> String {
    render_applied(row, OpWord::latex, &symbol_latex, &rat_latex, "-")
}

/// `1/2` → `\frac{1}{2}`; integers unchanged.
pub fn rat_latex(r: &Rat) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
}

/// `f2` → `f_2`, `f` → `f`.
pub fn symbol_latex(s: &str) -> String {
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    if split == s.len() {
        s.to_string()
    } else {
        let idx: usize = s[split..].parse().unwrap_or(0);
        format!("{}_{}", &s[..split], latex_subscript(idx))
    }
}

fn render_applied(
    row: &[(OpPoly, String)],
    word: fn(&OpWord) -> String,
    sym: &dyn Fn(&str) -> String,
    num: &dyn Fn(&Rat) -> String,
    minus: &str,
) -> String {
    let mut terms: Vec<(&OpWord, usize, &Rat)> = Vec::new();
    for (s, (p, _)) in row.iter().enumerate() {
        for (w, c) in p.terms() {
            terms.push((w, s, c));
        }
    }
    terms.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(b.2)));
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (w, s, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => out.push_str(minus),
            (0, false) => {}
            (_, true) => {
                let _ = write!(out, " {minus} ");
            }
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            let _ = write!(out, "{} ", num(&a));
        }
        if !w.is_empty() {
            out.push_str(&word(w));
            out.push(' ');
        }
        out.push_str(&sym(&row[*s].1));
    }
    out
}
