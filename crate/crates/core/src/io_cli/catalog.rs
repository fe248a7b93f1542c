//! Built-in algebras, user catalog directories and fixture checking.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{InnerProduct, Rat, RatMatrix, Subspace};
use crate::exterior::{monomial_text, render_form_latex, render_form_text, KForm, MultiIndex};
use crate::lie_core::{is_stratification, validate_algebra, validate_grading, Grading, LieAlgebra, ValidationReport};
use crate::lqp::interval_report;
use crate::op_algebra::{labels_from, OpMatrix};
use crate::rumin_core::RuminComplex;
use crate::weights::form_weight_set;

use super::algebra_file::{parse_algebra_file, parse_algebra_text, AlgebraFile, BracketEntry, Index, RatText};
use super::expr::{parse_form, parse_operator};

/// Extra catalog directory read at runtime.
pub const CATALOG_ENV: &str = "RUMIN_CATALOG_DIR";

const EMBEDDED: &[&str] = &[
    include_str!("../../catalog/n42_r2.json"),
    include_str!("../../catalog/n632.json"),
    include_str!("../../catalog/filiform6_2.json"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Embedded,
    Generated,
    Directory(String),
    File(String),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub file: AlgebraFile,
    pub source: Source,
}

fn one() -> RatText {
    RatText::Str("1".into())
}

fn abelian(n: usize) -> AlgebraFile {
    AlgebraFile {
        name: format!("abelian{n}"),
        dim: n,
        description: Some(format!("abelian algebra R^{n}")),
        basis: Vec::new(),
        brackets: Vec::new(),
        gradings: BTreeMap::from([("unit".to_string(), vec![one(); n])]),
        fixtures: Default::default(),
    }
}

fn heisenberg(m: usize) -> AlgebraFile {
    let n = 2 * m + 1;
    let brackets = (1..=m)
        .map(|i| BracketEntry {
            left: Index::Num(i as i64),
            right: Index::Num((i + m) as i64),
            result: BTreeMap::from([(n.to_string(), one())]),
        })
        .collect();
    let mut strat = vec![one(); n];
    strat[n - 1] = RatText::Str("2".into());
    AlgebraFile {
        name: format!("heisenberg{n}"),
        dim: n,
        description: Some(format!("Heisenberg algebra of dimension {n}")),
        basis: Vec::new(),
        brackets,
        gradings: BTreeMap::from([("strat".to_string(), strat)]),
        fixtures: Default::default(),
    }
}

/// Embedded and generated entries, sorted by name.
pub fn builtin() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = EMBEDDED
        .iter()
        .map(|t| CatalogEntry {
            file: parse_algebra_text(t).expect("embedded catalog entry parses"),
            source: Source::Embedded,
        })
        .collect();
    for n in 1..=7 {
        out.push(CatalogEntry {
            file: abelian(n),
            source: Source::Generated,
        });
    }
    for m in 1..=3 {
        out.push(CatalogEntry {
            file: heisenberg(m),
            source: Source::Generated,
        });
    }
    out.sort_by(|a, b| a.file.name.cmp(&b.file.name));
    out
}

fn directory_entries(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let io = |source| Error::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            Ok(CatalogEntry {
                file: parse_algebra_file(&p)?,
                source: Source::Directory(p.display().to_string()),
            })
        })
        .collect()
}

/// Built-in entries followed by those of `$RUMIN_CATALOG_DIR`; a directory
/// entry replaces a built-in one of the same name.
pub fn entries() -> Result<Vec<CatalogEntry>> {
    let mut out = builtin();
    if let Some(dir) = std::env::var_os(CATALOG_ENV) {
        for e in directory_entries(Path::new(&dir))? {
            out.retain(|b| b.file.name != e.file.name);
            out.push(e);
        }
    }
    Ok(out)
}

pub fn find(name: &str) -> Result<CatalogEntry> {
    entries()?
        .into_iter()
        .find(|e| e.file.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

/// A file when the argument names one or looks like a path, else a
/// catalog entry.
pub fn load(path_or_name: &str) -> Result<CatalogEntry> {
    let p = Path::new(path_or_name);
    if p.is_file() || p.extension().is_some() || path_or_name.contains(['/', std::path::MAIN_SEPARATOR]) {
        return Ok(CatalogEntry {
            file: parse_algebra_file(p)?,
            source: Source::File(path_or_name.to_string()),
        });
    }
    find(path_or_name)
}

/// An algebra file with its table, validation result and checked gradings.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub file: AlgebraFile,
    pub algebra: LieAlgebra,
    pub validation: ValidationReport,
    pub gradings: Vec<Grading>,
}

impl Prepared {
    /// Fails on Jacobi violations, non-nilpotency or an invalid grading.
    pub fn new(file: AlgebraFile) -> Result<Prepared> {
        let algebra = file.to_algebra()?;
        let validation = validate_algebra(&algebra);
        validation.clone().into_result()?;
        let gradings = file
            .gradings()?
            .iter()
            .map(|(name, w)| validate_grading(&algebra, name, w))
            .collect::<Result<_>>()?;
        Ok(Prepared {
            file,
            algebra,
            validation,
            gradings,
        })
    }

    pub fn grading(&self, name: &str) -> Result<&Grading> {
        self.gradings
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGrading(name.to_string()))
    }

    pub fn stratifiable(&self) -> bool {
        self.gradings.iter().any(|g| is_stratification(&self.algebra, g))
    }

    /// The complex in the file's own basis, orthonormal.
    pub fn complex(&self) -> Result<RuminComplex> {
        RuminComplex::new(&self.algebra, &InnerProduct::identity(self.algebra.dim()))
    }

    /// The stored `E_0^k` basis when the file has one, parsed.
    pub fn fixture_basis(&self, k: usize) -> Result<Option<Vec<KForm>>> {
        match self.file.fixtures.e0_bases.get(&k.to_string()) {
            None => Ok(None),
            Some(v) => v
                .iter()
                .map(|s| parse_form(s, self.algebra.dim()))
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    }

    /// `E_0^k` basis used for display: the stored one when it spans, else
    /// the canonical one.
    pub fn e0_basis(&self, rc: &RuminComplex, k: usize) -> Result<DisplayBasis> {
        let stored = self.file.fixtures.e0_bases.get(&k.to_string());
        if let (Some(b), Some(text)) = (self.fixture_basis(k)?, stored) {
            if spans_exactly(&b, &rc.ce.e0[k]) {
                let terms = b.iter().zip(text).map(|(f, t)| ordered_terms(f, t)).collect();
                return Ok(DisplayBasis {
                    forms: b,
                    terms,
                    from_catalog: true,
                });
            }
        }
        let n = rc.n();
        let forms: Vec<KForm> = rc.ce.e0[k]
            .basis_vectors()
            .into_iter()
            .map(|coeffs| KForm { n, degree: k, coeffs })
            .collect();
        Ok(DisplayBasis {
            terms: forms.iter().map(KForm::terms).collect(),
            forms,
            from_catalog: false,
        })
    }

    /// `d_c` on degree `k` in the display bases, columns named by
    /// [`symbols`].
    pub fn d_c(&self, rc: &RuminComplex, k: usize) -> Result<(OpMatrix, DisplayBasis, DisplayBasis)> {
        let n = rc.n();
        let src = self.e0_basis(rc, k)?;
        let dst = if k < n {
            self.e0_basis(rc, k + 1)?
        } else {
            DisplayBasis::default()
        };
        let sym = symbols(k, src.forms.len());
        let m = rc.d_c(
            k,
            &columns(&src.forms, rc.ce.ext.len(k)),
            labels_from(&sym),
            &columns(&dst.forms, rc.ce.ext.len((k + 1).min(n))),
            labels_from(&dst.texts()),
        )?;
        Ok((m, src, dst))
    }
}

/// A basis of some `E_0^k` with the term order used for display.
#[derive(Clone, Debug, Default)]
pub struct DisplayBasis {
    pub forms: Vec<KForm>,
    pub terms: Vec<Vec<(Rat, MultiIndex)>>,
    pub from_catalog: bool,
}

impl DisplayBasis {
    pub fn texts(&self) -> Vec<String> {
        self.terms.iter().map(|t| render_form_text(t)).collect()
    }

    pub fn latex(&self) -> Vec<String> {
        self.terms.iter().map(|t| render_form_latex(t)).collect()
    }
}

/// Terms of `f` in the order they appear in `text`.
fn ordered_terms(f: &KForm, text: &str) -> Vec<(Rat, MultiIndex)> {
    let mut t = f.terms();
    t.sort_by_key(|(_, m)| {
        let label = monomial_text(m);
        let at = text.match_indices(&label).map(|(i, _)| i).find(|&i| {
            let rest = &text[i + label.len()..];
            !rest.starts_with(|c: char| c.is_ascii_digit())
        });
        at.unwrap_or(usize::MAX)
    });
    t
}

fn columns(forms: &[KForm], rows: usize) -> RatMatrix {
    RatMatrix::from_columns(&forms.iter().map(|f| f.coeffs.clone()).collect::<Vec<_>>(), rows)
}

/// True when `forms` is a basis of `space`.
pub fn spans_exactly(forms: &[KForm], space: &Subspace) -> bool {
    let vs: Vec<Vec<Rat>> = forms.iter().map(|f| f.coeffs.clone()).collect();
    forms.len() == space.dim() && vs.iter().all(|v| space.contains(v)) && Subspace::span(&vs, space.ambient()) == *space
}

/// Names of the coefficient functions of a `k`-form: `f1, f2, …` in degrees
/// 0 and 1, then `g`, `h`, `u`, `v`, `w`, `p`. A single function is unindexed.
pub fn symbols(k: usize, count: usize) -> Vec<String> {
    const LETTERS: [char; 8] = ['f', 'f', 'g', 'h', 'u', 'v', 'w', 'p'];
    let c = LETTERS.get(k).copied().unwrap_or('f');
    if count == 1 {
        vec![c.to_string()]
    } else {
        (1..=count).map(|i| format!("{c}{i}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(out: &mut Vec<FixtureCheck>, name: String, result: std::result::Result<(), String>) {
    let (passed, detail) = match result {
        Ok(()) => (true, None),
        Err(d) => (false, Some(d)),
    };
    out.push(FixtureCheck { name, passed, detail });
}

fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    s.trim().parse().map_err(|_| format!("bad rational {s:?}"))
}

/// Compares every stored fixture of `p` with freshly computed values.
pub fn check_fixtures(p: &Prepared) -> Result<Vec<FixtureCheck>> {
    let fx = &p.file.fixtures;
    let n = p.algebra.dim();
    let rc = p.complex()?;
    let mut out = Vec::new();
    if let Some(step) = fx.step {
        let got = p.validation.step;
        check(
            &mut out,
            "step".into(),
            (got == Some(step)).then_some(()).ok_or(format!("computed {got:?}")),
        );
    }
    if !fx.filtration.is_empty() {
        let r = (|| {
            if fx.filtration.len() + 1 != rc.filtration.f.len() {
                return Err(format!("{} stored steps, {} computed", fx.filtration.len(), rc.filtration.step()));
            }
            for (i, forms) in fx.filtration.iter().enumerate() {
                let vs = forms
                    .iter()
                    .map(|s| parse_form(s, n).map(|f| f.coeffs))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.to_string())?;
                if Subspace::span(&vs, n) != rc.filtration.f[i + 1] {
                    return Err(format!("F_{} differs", i + 1));
                }
            }
            Ok(())
        })();
        check(&mut out, "filtration".into(), r);
    }
    if !fx.asymptotic_weights.is_empty() {
        let r = (|| {
            let want = fx.asymptotic_weights.iter().map(|s| parse_rat(s)).collect::<std::result::Result<Vec<_>, _>>()?;
            let got = rc.asymptotic_weights().map_err(|e| e.to_string())?.covector;
            (got == want).then_some(()).ok_or(format!("computed {got:?}"))
        })();
        check(&mut out, "asymptotic weights".into(), r);
    }
    for (cov, image) in &fx.dg {
        let r = (|| {
            let c = parse_form(cov, n).map_err(|e| e.to_string())?;
            let m = c.terms();
            if m.len() != 1 || c.degree != 1 || !m[0].0.is_one() {
                return Err(format!("{cov} is not a basis covector"));
            }
            let want = parse_form(image, n).map_err(|e| e.to_string())?;
            let got = KForm {
                n,
                degree: 2,
                coeffs: rc.ce.dg[1].column(m[0].1[0]),
            };
            (got == want).then_some(()).ok_or(format!("computed {}", render_form_text(&got.terms())))
        })();
        check(&mut out, format!("d_g {cov}"), r);
    }
    if !fx.e0_dims.is_empty() {
        let got = rc.e0_dims();
        check(
            &mut out,
            "E_0 dimensions".into(),
            (got == fx.e0_dims).then_some(()).ok_or(format!("computed {got:?}")),
        );
    }
    for k in fx.e0_bases.keys() {
        let r = (|| {
            let k: usize = k.parse().map_err(|_| format!("bad degree {k:?}"))?;
            let b = p.fixture_basis(k).map_err(|e| e.to_string())?.unwrap_or_default();
            let space = rc.ce.e0.get(k).ok_or(format!("degree {k} above {n}"))?;
            spans_exactly(&b, space).then_some(()).ok_or(format!(
                "{} stored forms do not form a basis of E_0^{k} (dimension {})",
                b.len(),
                space.dim()
            ))
        })();
        check(&mut out, format!("E_0^{k} basis"), r);
    }
    for dc in &fx.dc {
        let r = check_dc_fixture(p, &rc, dc.degree, &dc.rows);
        check(&mut out, format!("d_c degree {}", dc.degree), r);
    }
    for (name, lq) in &fx.lqp {
        let r = (|| {
            let gr = p.grading(name).map_err(|e| e.to_string())?;
            let mut bases = Vec::new();
            for k in 0..=n {
                bases.push(p.fixture_basis(k).map_err(|e| e.to_string())?.unwrap_or_default());
            }
            let rep = interval_report(&rc.ce, gr, Some(&bases), p.stratifiable());
            let t = parse_rat(&lq.homogeneous_dimension)?;
            if rep.homogeneous_dimension != t {
                return Err(format!("T = {}", rep.homogeneous_dimension));
            }
            if !lq.covector_weights.is_empty() {
                let w = lq.covector_weights.iter().map(|s| parse_rat(s)).collect::<std::result::Result<Vec<_>, _>>()?;
                if w != rep.covector_weights {
                    return Err("covector weights differ".into());
                }
            }
            for (deg, th) in &lq.thresholds {
                let deg: usize = deg.parse().map_err(|_| format!("bad degree {deg:?}"))?;
                let want = parse_rat(th)?;
                let got = rep.degrees.iter().find(|d| d.degree == deg).and_then(|d| d.threshold.clone());
                if got.as_ref() != Some(&want) {
                    return Err(format!("degree {deg} threshold {got:?}"));
                }
            }
            let wt = crate::weights::grading_weights(gr);
            for (deg, list) in &lq.form_weights {
                let deg: usize = deg.parse().map_err(|_| format!("bad degree {deg:?}"))?;
                for fw in list {
                    let f = parse_form(&fw.form, n).map_err(|e| e.to_string())?;
                    if f.degree != deg || !rc.ce.e0[deg].contains(&f.coeffs) {
                        return Err(format!("{} is not in E_0^{deg}", fw.form));
                    }
                    let ws: Vec<Rat> = form_weight_set(&f, &wt).into_iter().collect();
                    if ws != [parse_rat(&fw.weight)?] {
                        return Err(format!("{} has weights {ws:?}", fw.form));
                    }
                }
            }
            Ok(())
        })();
        check(&mut out, format!("lqp {name}"), r);
    }
    Ok(out)
}

fn check_dc_fixture(
    p: &Prepared,
    rc: &RuminComplex,
    k: usize,
    rows: &[super::algebra_file::DcRowFixture],
) -> std::result::Result<(), String> {
    let n = rc.n();
    let (m, _, dst) = p.d_c(rc, k).map_err(|e| e.to_string())?;
    let dst = dst.forms;
    let syms: Vec<String> = m.col_labels().iter().cloned().collect();
    let mut seen = vec![false; dst.len()];
    for row in rows {
        let f = parse_form(&row.form, n).map_err(|e| e.to_string())?;
        let i = dst
            .iter()
            .position(|b| *b == f)
            .ok_or(format!("{} is not a basis form of E_0^{}", row.form, k + 1))?;
        seen[i] = true;
        let want = parse_operator(&row.coeff, &rc.ops).map_err(|e| e.to_string())?;
        if let Some(s) = want.keys().find(|s| !syms.contains(s)) {
            return Err(format!("unknown symbol {s} in row {}", row.form));
        }
        for (j, s) in syms.iter().enumerate() {
            let w = want.get(s).cloned().unwrap_or_default();
            if *m.get(i, j) != w {
                return Err(format!("row {} symbol {s}: computed {:?}", row.form, m.get(i, j)));
            }
        }
    }
    for (i, s) in seen.iter().enumerate() {
        if !s && m.row(i).iter().any(|p| !p.is_zero()) {
            return Err(format!("unlisted row {} is nonzero", m.row_labels()[i]));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        let names: Vec<String> = builtin().into_iter().map(|e| e.file.name).collect();
        for want in ["n42_r2", "n632", "filiform6_2", "abelian1", "abelian7", "heisenberg3", "heisenberg7"] {
            assert!(names.iter().any(|n| n == want), "{want}");
        }
    }

    #[test]
    fn heisenberg5_bracket() {
        let g = heisenberg(2).to_algebra().unwrap();
        assert_eq!(g.c(1, 3, 4), Rat::one());
        assert_eq!(g.c(0, 1, 4), Rat::zero());
    }

    #[test]
    fn symbol_names() {
        assert_eq!(symbols(0, 1), ["f"]);
        assert_eq!(symbols(2, 3), ["g1", "g2", "g3"]);
    }

    #[test]
    fn embedded_fixtures_hold() {
        for e in builtin().into_iter().filter(|e| e.source == Source::Embedded) {
            let p = Prepared::new(e.file).unwrap();
            for c in check_fixtures(&p).unwrap() {
                assert!(c.passed, "{}: {} {:?}", p.file.name, c.name, c.detail);
            }
        }
    }

    #[test]
    fn display_order_follows_stored_text() {
        let p = Prepared::new(find("n632").unwrap().file).unwrap();
        let rc = p.complex().unwrap();
        let b = p.e0_basis(&rc, 2).unwrap();
        assert!(b.from_catalog);
        assert_eq!(b.texts()[0], "θ5∧θ6 − θ1∧θ3");
    }

    #[test]
    fn load_rejects_unknown() {
        assert!(matches!(load("no_such_algebra"), Err(Error::UnknownCatalogEntry(_))));
    }
}
