//! Parser for the formula strings stored in catalog fixtures.
//!
//! Operators: `X1X2^2(X1 f2 − X2 f1)/2 − 1/2 X3 g7`, with `X_1`, `X_{10}`,
//! `[` `]` as parentheses and `−` or `-` for minus.
//! Forms: `θ5∧θ6 − θ1∧θ3`, `1/2 θ4`, `1` for the unit 0-form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_linalg::Rat;
use crate::exterior::{sort_with_sign, ExteriorBasis, KForm};
use crate::op_algebra::{OpAlgebra, OpPoly};

/// `Σ_s p_s f_s` keyed by symbol.
pub type SymVec = BTreeMap<String, OpPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Gen(usize),
    Theta(usize),
    Sym(String),
    Num(i64),
    Plus,
    Minus,
    Slash,
    Caret,
    Wedge,
    Open,
    Close,
}

fn err(col: usize, message: impl Into<String>) -> Error {
    Error::ParseError {
        line: 1,
        column: col,
        message: message.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let read_index = |i: &mut usize| -> Option<usize> {
        if *i < chars.len() && chars[*i] == '_' {
            *i += 1;
        }
        let braced = *i < chars.len() && chars[*i] == '{';
        if braced {
            *i += 1;
        }
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        let v = chars[start..*i].iter().collect::<String>().parse().ok();
        if braced {
            if *i < chars.len() && chars[*i] == '}' {
                *i += 1;
            } else {
                return None;
            }
        }
        v
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' | '−' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '∧' => {
                out.push((Tok::Wedge, col));
                i += 1;
            }
            '(' | '[' => {
                out.push((Tok::Open, col));
                i += 1;
            }
            ')' | ']' => {
                out.push((Tok::Close, col));
                i += 1;
            }
            'X' | 'θ' => {
                i += 1;
                let idx = read_index(&mut i).ok_or_else(|| err(col, format!("expected an index after {c}")))?;
                if idx == 0 {
                    return Err(err(col, "indices start at 1"));
                }
                out.push((if c == 'X' { Tok::Gen(idx - 1) } else { Tok::Theta(idx - 1) }, col));
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let v = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err(col, "number too large"))?;
                out.push((Tok::Num(v), col));
            }
            l if l.is_ascii_lowercase() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_lowercase() {
                    i += 1;
                }
                let mut name: String = chars[start..i].iter().collect();
                if i < chars.len() && (chars[i] == '_' || chars[i].is_ascii_digit()) {
                    let idx = read_index(&mut i).ok_or_else(|| err(col, "bad symbol index"))?;
                    name.push_str(&idx.to_string());
                }
                out.push((Tok::Sym(name), col));
            }
            other => return Err(err(col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ops: Option<&'a OpAlgebra>,
    n: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect_num(&mut self) -> Result<i64> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(v),
            _ => Err(err(col, "expected an integer")),
        }
    }

    fn check_gen(&self, g: usize, col: usize) -> Result<()> {
        if g >= self.n {
            return Err(err(col, format!("generator X{} out of range 1..={}", g + 1, self.n)));
        }
        Ok(())
    }

    /// Optional leading `p` or `p/q`.
    fn coefficient(&mut self) -> Result<Rat> {
        if let Some(Tok::Num(p)) = self.peek().cloned() {
            self.pos += 1;
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let col = self.col();
                let q = self.expect_num()?;
                if q == 0 {
                    return Err(err(col, "division by zero"));
                }
                return Ok(Rat::new(p, q));
            }
            return Ok(Rat::from_int(p));
        }
        Ok(Rat::one())
    }

    fn op_expr(&mut self) -> Result<SymVec> {
        let mut out = SymVec::new();
        let mut sign = Rat::one();
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = Rat::from_int(-1);
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.op_term()?;
            add_into(&mut out, &t, &sign);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = Rat::from_int(-1);
                }
                _ => return Ok(out),
            }
        }
    }

    fn op_term(&mut self) -> Result<SymVec> {
        let ops = self.ops.expect("operator parser");
        let mut coeff = self.coefficient()?;
        let mut word: Vec<u8> = Vec::new();
        while let Some(Tok::Gen(g)) = self.peek().cloned() {
            let col = self.col();
            self.check_gen(g, col)?;
            self.pos += 1;
            let mut power = 1;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                power = self.expect_num()?;
            }
            for _ in 0..power {
                word.push(g as u8);
            }
        }
        let col = self.col();
        let atom = match self.bump() {
            Some(Tok::Sym(s)) => {
                let mut v = SymVec::new();
                v.insert(s, OpPoly::one());
                v
            }
            Some(Tok::Open) => {
                let inner = self.op_expr()?;
                let col = self.col();
                if self.bump() != Some(Tok::Close) {
                    return Err(err(col, "expected a closing parenthesis"));
                }
                inner
            }
            _ => return Err(err(col, "expected a symbol or a parenthesized expression")),
        };
        while self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let col = self.col();
            let q = self.expect_num()?;
            if q == 0 {
                return Err(err(col, "division by zero"));
            }
            coeff = &coeff / &Rat::from_int(q);
        }
        let w = ops.normalize_word(&word).scale(&coeff);
        Ok(atom.into_iter().map(|(s, p)| (s, ops.mul(&w, &p))).collect())
    }

    fn form(&mut self) -> Result<Vec<(Rat, Vec<usize>)>> {
        let mut out = Vec::new();
        let mut sign = Rat::one();
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = Rat::from_int(-1);
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let start = self.pos;
            let c = self.coefficient()?;
            let mut mono = Vec::new();
            if let Some(Tok::Theta(t)) = self.peek().cloned() {
                self.check_gen(t, self.col())?;
                self.pos += 1;
                mono.push(t);
                while self.peek() == Some(&Tok::Wedge) {
                    self.pos += 1;
                    let col = self.col();
                    match self.bump() {
                        Some(Tok::Theta(t)) => {
                            self.check_gen(t, col)?;
                            mono.push(t);
                        }
                        _ => return Err(err(col, "expected θ after ∧")),
                    }
                }
            } else if self.pos == start {
                return Err(err(self.col(), "expected a form term"));
            }
            out.push((&c * &sign, mono));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = Rat::from_int(-1);
                }
                _ => return Ok(out),
            }
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(err(self.col(), "unexpected trailing input"));
        }
        Ok(())
    }
}

fn add_into(out: &mut SymVec, t: &SymVec, sign: &Rat) {
    for (s, p) in t {
        let e = out.entry(s.clone()).or_insert_with(OpPoly::zero);
        e.add_scaled(p, sign);
    }
    out.retain(|_, p| !p.is_zero());
}

fn parser<'a>(s: &str, n: usize, ops: Option<&'a OpAlgebra>) -> Result<Parser<'a>> {
    Ok(Parser {
        toks: lex(s)?,
        pos: 0,
        end: s.chars().count() + 1,
        ops,
        n,
    })
}

/// Parses an operator expression into PBW normal form.
pub fn parse_operator(s: &str, ops: &OpAlgebra) -> Result<SymVec> {
    let mut p = parser(s, ops.n(), Some(ops))?;
    let v = p.op_expr()?;
    p.finish()?;
    Ok(v)
}

/// Parses a left-invariant form on `n` covectors.
pub fn parse_form(s: &str, n: usize) -> Result<KForm> {
    let mut p = parser(s, n, None)?;
    let terms = p.form()?;
    p.finish()?;
    let degree = terms[0].1.len();
    let ext = ExteriorBasis::new(n);
    let mut form = KForm::zero(n, degree);
    for (c, m) in terms {
        if m.len() != degree {
            return Err(err(1, "terms of different degrees"));
        }
        if let Some((sgn, sorted)) = sort_with_sign(&m) {
            let i = ext.index(&sorted);
            form.coeffs[i] += &c * &Rat::from_int(sgn);
        }
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{default_labels, LieAlgebra};
    use crate::op_algebra::OpWord;

    fn n42() -> OpAlgebra {
        let mut m = BTreeMap::new();
        m.insert((0, 1), vec![(2, Rat::one())]);
        m.insert((0, 2), vec![(3, Rat::one())]);
        OpAlgebra::new(&LieAlgebra::from_brackets("n", default_labels(6), &m).unwrap())
    }

    fn w(v: &[u8]) -> OpWord {
        OpWord(v.to_vec())
    }

    #[test]
    fn operator_with_parentheses() {
        let ops = n42();
        let v = parse_operator("X_2(X_1f_2 − X2 f1) − X3f2", &ops).unwrap();
        // X2X1 = X1X2 − X3
        let f1 = &v["f1"];
        assert_eq!(f1.coeff(&w(&[1, 1])), Rat::from_int(-1));
        let f2 = &v["f2"];
        assert_eq!(f2.coeff(&w(&[0, 1])), Rat::one());
        assert_eq!(f2.coeff(&w(&[2])), Rat::from_int(-2));
    }

    #[test]
    fn powers_and_fractions() {
        let ops = n42();
        let v = parse_operator("X1^2(X1 f2)/2 + 1/2 X4 g", &ops).unwrap();
        assert_eq!(v["f2"].coeff(&w(&[0, 0, 0])), Rat::new(1, 2));
        assert_eq!(v["g"].coeff(&w(&[3])), Rat::new(1, 2));
        let z = parse_operator("X1 f − X1 f", &ops).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn forms() {
        let f = parse_form("θ5∧θ6 − θ1∧θ3", 6).unwrap();
        assert_eq!(f.degree, 2);
        assert_eq!(f.coeffs[crate::exterior::ExteriorBasis::new(6).index(&[0, 2])], Rat::from_int(-1));
        let g = parse_form("θ3∧θ1", 6).unwrap();
        assert_eq!(g, KForm::from_terms(6, 2, &[(Rat::from_int(-1), vec![0, 2])]));
        assert_eq!(parse_form("1", 6).unwrap(), KForm::monomial(6, &[]));
        assert_eq!(parse_form("1/2 θ4", 6).unwrap(), KForm::from_terms(6, 1, &[(Rat::new(1, 2), vec![3])]));
    }

    #[test]
    fn errors_carry_columns() {
        let ops = n42();
        match parse_operator("X1 (f1", &ops) {
            Err(Error::ParseError { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_operator("X9 f", &ops).is_err());
        assert!(parse_form("θ1∧θ2 + θ3", 6).is_err());
        assert!(parse_form("θ1 ? θ2", 6).is_err());
    }
}
