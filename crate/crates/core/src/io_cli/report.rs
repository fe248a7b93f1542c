//! Report types, their builders and the text / LaTeX / JSON emitters.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact_linalg::{Rat, Subspace};
use crate::exterior::{render_form_latex, render_form_text, KForm};
use crate::lie_core::{homogeneous_dimension, is_stratification, validate_algebra, validate_grading, LieAlgebra};
use crate::lqp::{interval_report, LqpReport};
use crate::op_algebra::{rat_latex, render_applied_latex, render_applied_text, symbol_latex, OpPoly};
use crate::rumin_core::{IdentityCheck, RuminComplex};
use crate::weights::weight_spaces;

use super::algebra_file::AlgebraFile;
use super::catalog::{check_fixtures, CatalogEntry, FixtureCheck, Prepared, Source};

pub const SCHEMA: &str = "rumin-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub report: Report,
}

impl Document {
    pub fn new(report: Report) -> Document {
        Document {
            schema: SCHEMA.to_string(),
            report,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Empty,
    Validate(ValidateReport),
    Analyze(AnalyzeReport),
    Dc(DcReport),
    Verify(VerifyReport),
    Lqp(LqpDocument),
    CatalogList(CatalogList),
    CatalogShow(CatalogShow),
}

/// A form in both renderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplayForm {
    pub text: String,
    pub latex: String,
}

impl DisplayForm {
    fn of(f: &KForm) -> DisplayForm {
        let t = f.terms();
        DisplayForm {
            text: render_form_text(&t),
            latex: render_form_latex(&t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingInfo {
    pub name: String,
    pub weights: Vec<Rat>,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub stratification: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homogeneous_dimension: Option<Rat>,
}

fn grading_infos(file: &AlgebraFile, g: &LieAlgebra) -> Result<Vec<GradingInfo>> {
    Ok(file
        .gradings()?
        .into_iter()
        .map(|(name, weights)| match validate_grading(g, &name, &weights) {
            Ok(gr) => GradingInfo {
                stratification: is_stratification(g, &gr),
                homogeneous_dimension: Some(homogeneous_dimension(&gr)),
                name,
                weights,
                valid: true,
                error: None,
            },
            Err(e) => GradingInfo {
                name,
                weights,
                valid: false,
                error: Some(e.to_string()),
                stratification: false,
                homogeneous_dimension: None,
            },
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub algebra: String,
    pub dim: usize,
    pub jacobi_violations: Vec<String>,
    pub nilpotent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    pub gradings: Vec<GradingInfo>,
    pub valid: bool,
}

impl ValidateReport {
    pub fn build(file: &AlgebraFile) -> Result<ValidateReport> {
        let g = file.to_algebra()?;
        let v = validate_algebra(&g);
        let jacobi_violations: Vec<String> = v
            .jacobi_violations
            .iter()
            .map(|w| {
                format!(
                    "[X{}, [X{}, X{}]] + cyclic has X{} component {}",
                    w.i + 1,
                    w.j + 1,
                    w.k + 1,
                    w.l + 1,
                    w.value
                )
            })
            .collect();
        let gradings = if jacobi_violations.is_empty() {
            grading_infos(file, &g)?
        } else {
            Vec::new()
        };
        let nilpotent = v.step.is_some();
        Ok(ValidateReport {
            algebra: file.name.clone(),
            dim: file.dim,
            valid: jacobi_violations.is_empty() && nilpotent && gradings.iter().all(|g| g.valid),
            jacobi_violations,
            nilpotent,
            step: v.step,
            gradings,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E0Degree {
    pub degree: usize,
    pub dim: usize,
    pub from_catalog: bool,
    pub basis: Vec<DisplayForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub algebra: String,
    pub dim: usize,
    pub step: usize,
    /// Spanning forms of `F_1, …, F_s`.
    pub filtration: Vec<Vec<DisplayForm>>,
    /// Spanning forms of `W_1, …, W_s`.
    pub weight_spaces: Vec<Vec<DisplayForm>>,
    /// Absent when the basis is not adapted to the weight spaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymptotic_weights: Option<Vec<Rat>>,
    pub nilpotency: Vec<usize>,
    pub e0_dims: Vec<usize>,
    pub e0: Vec<E0Degree>,
    pub gradings: Vec<GradingInfo>,
}

fn span_forms(s: &Subspace) -> Vec<DisplayForm> {
    let n = s.ambient();
    s.basis_vectors()
        .into_iter()
        .map(|coeffs| DisplayForm::of(&KForm { n, degree: 1, coeffs }))
        .collect()
}

impl AnalyzeReport {
    /// With `degree`, only that `E_0` degree is listed.
    pub fn build(p: &Prepared, degree: Option<usize>) -> Result<AnalyzeReport> {
        let rc = p.complex()?;
        let n = rc.n();
        let mut e0 = Vec::new();
        for k in 0..=n {
            if degree.is_some_and(|d| d != k) {
                continue;
            }
            let b = p.e0_basis(&rc, k)?;
            e0.push(E0Degree {
                degree: k,
                dim: b.forms.len(),
                from_catalog: b.from_catalog,
                basis: b
                    .texts()
                    .into_iter()
                    .zip(b.latex())
                    .map(|(text, latex)| DisplayForm { text, latex })
                    .collect(),
            });
        }
        Ok(AnalyzeReport {
            algebra: p.file.name.clone(),
            dim: n,
            step: rc.filtration.step(),
            filtration: rc.filtration.f[1..].iter().map(span_forms).collect(),
            weight_spaces: weight_spaces(&rc.filtration, &rc.gram).iter().map(span_forms).collect(),
            asymptotic_weights: rc.asymptotic_weights().ok().map(|w| w.covector),
            nilpotency: rc.nilpotency.clone(),
            e0_dims: rc.e0_dims(),
            e0,
            gradings: grading_infos(&p.file, &p.algebra)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcInput {
    pub symbol: String,
    pub form: DisplayForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcRow {
    pub form: DisplayForm,
    pub coeff: String,
    pub coeff_latex: String,
    /// Number of `word · symbol` terms in the coefficient.
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcReport {
    pub algebra: String,
    pub degree: usize,
    pub from_catalog: bool,
    pub inputs: Vec<DcInput>,
    /// One row per target basis form, zero rows included.
    pub rows: Vec<DcRow>,
}

impl DcReport {
    pub fn build(p: &Prepared, degree: usize) -> Result<DcReport> {
        let rc = p.complex()?;
        let (m, src, dst) = p.d_c(&rc, degree)?;
        let inputs = m
            .col_labels()
            .iter()
            .zip(src.texts().into_iter().zip(src.latex()))
            .map(|(s, (text, latex))| DcInput {
                symbol: s.clone(),
                form: DisplayForm { text, latex },
            })
            .collect();
        let rows = (0..m.rows())
            .zip(dst.texts().into_iter().zip(dst.latex()))
            .map(|(i, (text, latex))| {
                let applied: Vec<(OpPoly, String)> = m
                    .row(i)
                    .iter()
                    .cloned()
                    .zip(m.col_labels().iter().cloned())
                    .collect();
                DcRow {
                    form: DisplayForm { text, latex },
                    coeff: render_applied_text(&applied),
                    coeff_latex: render_applied_latex(&applied),
                    terms: applied.iter().map(|(q, _)| q.num_terms()).sum(),
                }
            })
            .collect();
        Ok(DcReport {
            algebra: p.file.name.clone(),
            degree,
            from_catalog: src.from_catalog && (dst.from_catalog || dst.forms.is_empty()),
            inputs,
            rows,
        })
    }

    /// `Σ_s f_s β_s` in text or LaTeX.
    pub fn input_expr(&self, latex: bool) -> String {
        let pieces = self.inputs.iter().map(|i| {
            let sym = if latex { symbol_latex(&i.symbol) } else { i.symbol.clone() };
            let form = if latex { &i.form.latex } else { &i.form.text };
            if form == "1" {
                sym
            } else if has_several_terms(form) {
                format!("{sym}{}({form})", sep(latex))
            } else {
                format!("{sym}{}{form}", sep(latex))
            }
        });
        join_signed(pieces, latex)
    }

    /// The image `Σ_t c_t β_t` over the nonzero rows.
    pub fn output_expr(&self, latex: bool) -> String {
        let pieces = self.rows.iter().filter(|r| r.terms > 0).map(|r| {
            let c = if latex { &r.coeff_latex } else { &r.coeff };
            let form = if latex { &r.form.latex } else { &r.form.text };
            let c = if r.terms > 1 { format!("({c})") } else { c.clone() };
            let form = if has_several_terms(form) { format!("({form})") } else { form.clone() };
            format!("{c}{}{form}", sep(latex))
        });
        join_signed(pieces, latex)
    }
}

fn sep(latex: bool) -> &'static str {
    if latex {
        "\\,"
    } else {
        " "
    }
}

fn has_several_terms(form: &str) -> bool {
    form.contains(" + ") || form.contains(" − ") || form.contains(" - ")
}

fn join_signed(pieces: impl Iterator<Item = String>, latex: bool) -> String {
    let minus = if latex { "-" } else { "−" };
    let mut out = String::new();
    for (i, p) in pieces.enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix(minus) {
            let _ = write!(out, " {minus} {rest}");
        } else {
            let _ = write!(out, " + {p}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeCheck {
    pub degree: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub identities: Vec<IdentityCheck>,
    pub hodge: Vec<HodgeCheck>,
    pub weight_monotonicity: Vec<IdentityCheck>,
    pub carnot: Vec<IdentityCheck>,
    pub fixtures: Vec<FixtureCheck>,
    pub passed: bool,
}

impl VerifyReport {
    /// Identities and Hodge duality in the file's basis; weight checks in
    /// an adapted basis.
    pub fn build(p: &Prepared) -> Result<VerifyReport> {
        let rc = p.complex()?;
        let identities = rc.verify_identities()?.checks;
        let hodge: Vec<HodgeCheck> = rc
            .hodge_duality_check()?
            .into_iter()
            .enumerate()
            .map(|(degree, passed)| HodgeCheck { degree, passed })
            .collect();
        let adapted = if rc.asymptotic_weights().is_ok() {
            rc
        } else {
            RuminComplex::adapted(&p.algebra)?
        };
        let weight_monotonicity = adapted.weight_monotonicity()?;
        let mut carnot = Vec::new();
        if adapted.asymptotic_weights().is_ok() {
            for gr in p.gradings.iter().filter(|g| is_stratification(&p.algebra, g)) {
                carnot.extend(adapted.carnot_consistency(gr)?);
            }
        }
        let fixtures = check_fixtures(p)?;
        let passed = identities.iter().all(|c| c.passed)
            && hodge.iter().all(|h| h.passed)
            && weight_monotonicity.iter().all(|c| c.passed)
            && carnot.iter().all(|c| c.passed)
            && fixtures.iter().all(|c| c.passed);
        Ok(VerifyReport {
            algebra: p.file.name.clone(),
            identities,
            hodge,
            weight_monotonicity,
            carnot,
            fixtures,
            passed,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LqpDocument {
    pub algebra: String,
    pub lqp: LqpReport,
}

impl LqpDocument {
    /// Uses the stored `E_0` bases when present, graded bases otherwise.
    pub fn build(p: &Prepared, grading: &str) -> Result<LqpDocument> {
        let gr = p.grading(grading)?;
        let rc = p.complex()?;
        let mut bases = Vec::new();
        for k in 0..=rc.n() {
            let b = p.e0_basis(&rc, k)?;
            bases.push(if b.from_catalog { b.forms } else { Vec::new() });
        }
        let mut lqp = interval_report(&rc.ce, gr, Some(&bases), p.stratifiable());
        for d in &mut lqp.degrees {
            let b = p.e0_basis(&rc, d.degree)?;
            if b.from_catalog {
                for (f, text) in d.forms.iter_mut().zip(b.texts()) {
                    f.form = text;
                }
            }
        }
        Ok(LqpDocument {
            algebra: p.file.name.clone(),
            lqp,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogListEntry {
    pub name: String,
    pub dim: usize,
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub gradings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogList {
    pub entries: Vec<CatalogListEntry>,
}

impl CatalogList {
    pub fn build(entries: &[CatalogEntry]) -> CatalogList {
        CatalogList {
            entries: entries
                .iter()
                .map(|e| CatalogListEntry {
                    name: e.file.name.clone(),
                    dim: e.file.dim,
                    source: e.source.clone(),
                    description: e.file.description.clone(),
                    gradings: e.file.gradings.keys().cloned().collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogShow {
    pub source: Source,
    pub entry: AlgebraFile,
}

pub fn emit(doc: &Document, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => text(&doc.report),
        Format::Latex => latex(&doc.report),
    }
}

/// Inverse of the JSON emitter.
pub fn parse_document(s: &str) -> Result<Document> {
    serde_json::from_str(s).map_err(|e| crate::error::Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn rats(v: &[Rat]) -> String {
    v.iter().map(Rat::to_string).collect::<Vec<_>>().join(", ")
}

fn forms_text(v: &[DisplayForm]) -> String {
    v.iter().map(|f| f.text.as_str()).collect::<Vec<_>>().join(", ")
}

fn forms_latex(v: &[DisplayForm]) -> String {
    v.iter().map(|f| f.latex.as_str()).collect::<Vec<_>>().join(",\\ ")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn grading_line(g: &GradingInfo) -> String {
    let mut s = format!("grading {}: {}", g.name, rats(&g.weights));
    match (&g.error, &g.homogeneous_dimension) {
        (Some(e), _) => {
            let _ = write!(s, " (invalid: {e})");
        }
        (None, Some(t)) => {
            let _ = write!(s, ", T = {t}");
            if g.stratification {
                s.push_str(", stratification");
            }
        }
        (None, None) => {}
    }
    s
}

fn text(r: &Report) -> String {
    let mut o = String::new();
    match r {
        Report::Empty => {}
        Report::Validate(v) => {
            let _ = writeln!(o, "algebra: {} (dimension {})", v.algebra, v.dim);
            if v.jacobi_violations.is_empty() {
                o.push_str("Jacobi identity: ok\n");
            } else {
                let _ = writeln!(o, "Jacobi identity: {} violation(s)", v.jacobi_violations.len());
                for j in &v.jacobi_violations {
                    let _ = writeln!(o, "  {j}");
                }
            }
            match v.step {
                Some(s) => {
                    let _ = writeln!(o, "nilpotent of step {s}");
                }
                None => o.push_str("not nilpotent\n"),
            }
            for g in &v.gradings {
                let _ = writeln!(o, "{}", grading_line(g));
            }
            let _ = writeln!(o, "valid: {}", if v.valid { "yes" } else { "no" });
        }
        Report::Analyze(a) => {
            let _ = writeln!(o, "algebra: {} (dimension {}, step {})", a.algebra, a.dim, a.step);
            for (i, f) in a.filtration.iter().enumerate() {
                let _ = writeln!(o, "F_{} = span{{{}}}", i + 1, forms_text(f));
            }
            for (i, w) in a.weight_spaces.iter().enumerate() {
                let _ = writeln!(o, "W_{} = span{{{}}}", i + 1, forms_text(w));
            }
            match &a.asymptotic_weights {
                Some(w) => {
                    let list: Vec<String> = w.iter().enumerate().map(|(i, x)| format!("w(θ{}) = {x}", i + 1)).collect();
                    let _ = writeln!(o, "asymptotic weights: {}", list.join(", "));
                }
                None => o.push_str("asymptotic weights: basis not adapted\n"),
            }
            let _ = writeln!(o, "nilpotency of D: {}", a.nilpotency.iter().map(usize::to_string).collect::<Vec<_>>().join(", "));
            let _ = writeln!(o, "dim E_0: {}", a.e0_dims.iter().map(usize::to_string).collect::<Vec<_>>().join(", "));
            for e in &a.e0 {
                let tag = if e.from_catalog { "" } else { " (canonical basis)" };
                let _ = writeln!(o, "E_0^{} (dimension {}){tag}:", e.degree, e.dim);
                for f in &e.basis {
                    let _ = writeln!(o, "  {}", f.text);
                }
            }
            for g in &a.gradings {
                let _ = writeln!(o, "{}", grading_line(g));
            }
        }
        Report::Dc(d) => {
            let _ = writeln!(o, "algebra: {}", d.algebra);
            let _ = writeln!(o, "d_c: E_0^{} → E_0^{}", d.degree, d.degree + 1);
            if !d.from_catalog {
                o.push_str("bases: canonical\n");
            }
            let _ = writeln!(o, "d_c({}) = {}", d.input_expr(false), d.output_expr(false));
            for r in &d.rows {
                let _ = writeln!(o, "  {}: {}", r.form.text, r.coeff);
            }
        }
        Report::Verify(v) => {
            let _ = writeln!(o, "algebra: {}", v.algebra);
            let groups: [(&str, &[IdentityCheck]); 3] = [
                ("identity", &v.identities),
                ("weights", &v.weight_monotonicity),
                ("carnot", &v.carnot),
            ];
            for (group, checks) in groups {
                for c in checks {
                    let _ = write!(o, "{group} [{}] degree {}: {}", mark(c.passed), c.degree, c.name);
                    if let Some(w) = &c.witness {
                        let _ = write!(o, " ({w})");
                    }
                    o.push('\n');
                }
            }
            for h in &v.hodge {
                let _ = writeln!(o, "hodge [{}] degree {}: ⋆E_0^{} = E_0^n−{}", mark(h.passed), h.degree, h.degree, h.degree);
            }
            for f in &v.fixtures {
                let _ = write!(o, "fixture [{}] {}", mark(f.passed), f.name);
                if let Some(d) = &f.detail {
                    let _ = write!(o, " ({d})");
                }
                o.push('\n');
            }
            let _ = writeln!(o, "result: {}", if v.passed { "all checks passed" } else { "FAILED" });
        }
        Report::Lqp(l) => lqp_text(&mut o, l),
        Report::CatalogList(c) => {
            for e in &c.entries {
                let src = match &e.source {
                    Source::Embedded => "built-in".to_string(),
                    Source::Generated => "generated".to_string(),
                    Source::Directory(p) | Source::File(p) => p.clone(),
                };
                let _ = writeln!(
                    o,
                    "{}\tdim {}\t[{}]\t{}\t{}",
                    e.name,
                    e.dim,
                    e.gradings.join(", "),
                    src,
                    e.description.as_deref().unwrap_or("")
                );
            }
        }
        Report::CatalogShow(c) => {
            let f = &c.entry;
            let _ = writeln!(o, "name: {}", f.name);
            let _ = writeln!(o, "dimension: {}", f.dim);
            if let Some(d) = &f.description {
                let _ = writeln!(o, "description: {d}");
            }
            let labels = f.labels();
            match f.to_algebra() {
                Ok(g) => {
                    for (i, j, t) in g.nonzero_brackets() {
                        let rhs = render_combination(&t, &labels);
                        let _ = writeln!(o, "[{}, {}] = {rhs}", labels[i], labels[j]);
                    }
                }
                Err(e) => {
                    let _ = writeln!(o, "brackets: {e}");
                }
            }
            if let Ok(gs) = f.gradings() {
                for (name, w) in gs {
                    let _ = writeln!(o, "grading {name}: {}", rats(&w));
                }
            }
            if !f.fixtures.is_empty() {
                o.push_str("fixtures: stored\n");
            }
        }
    }
    o
}

fn render_combination(t: &[(usize, Rat)], labels: &[String]) -> String {
    let mut s = String::new();
    for (idx, (k, c)) in t.iter().enumerate() {
        match (idx, c.is_negative()) {
            (0, true) => s.push('−'),
            (0, false) => {}
            (_, true) => s.push_str(" − "),
            (_, false) => s.push_str(" + "),
        }
        let a = c.abs();
        if !a.is_one() {
            let _ = write!(s, "{a} ");
        }
        s.push_str(&labels[*k]);
    }
    s
}

fn lqp_text(o: &mut String, l: &LqpDocument) {
    let r = &l.lqp;
    let _ = writeln!(o, "algebra: {}", l.algebra);
    let _ = writeln!(o, "grading: {}", r.grading);
    let w: Vec<String> = r.covector_weights.iter().enumerate().map(|(i, x)| format!("w(θ{}) = {x}", i + 1)).collect();
    let _ = writeln!(o, "weights: {}", w.join(", "));
    let _ = writeln!(o, "homogeneous dimension: T = {}", r.homogeneous_dimension);
    for d in &r.degrees {
        let _ = writeln!(o, "degree {}:", d.degree);
        for f in &d.forms {
            let _ = writeln!(o, "  w({}) = {}", f.form, rats(&f.weights));
        }
        let _ = writeln!(o, "  δN_min = {}, δN_max = {}", d.delta_min, d.delta_max);
        match &d.threshold {
            Some(t) => {
                let _ = writeln!(o, "  ℓ^{{q,p}}H^{}(G) ≠ 0 for 1/p − 1/q < {t}", d.degree);
            }
            None => {
                let _ = writeln!(o, "  warning: mixed-weight forms, no threshold");
            }
        }
    }
    if let Some(label) = &r.delta_max_label {
        let _ = writeln!(o, "δN_max: {label}");
    }
}

fn latex(r: &Report) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "% {SCHEMA}");
    match r {
        Report::Empty => {}
        Report::Validate(v) => {
            let _ = writeln!(o, "% {} (dimension {})", v.algebra, v.dim);
            let _ = writeln!(o, "% valid: {}", if v.valid { "yes" } else { "no" });
            if let Some(s) = v.step {
                let _ = writeln!(o, "\\[ s = {s} \\]");
            }
        }
        Report::Analyze(a) => {
            for (i, f) in a.filtration.iter().enumerate() {
                let _ = writeln!(o, "\\[ F_{} = \\operatorname{{span}}\\{{{}\\}} \\]", i + 1, forms_latex(f));
            }
            if let Some(w) = &a.asymptotic_weights {
                let list: Vec<String> = w.iter().enumerate().map(|(i, x)| format!("w(\\theta_{}) = {}", i + 1, rat_latex(x))).collect();
                let _ = writeln!(o, "\\[ {} \\]", list.join(",\\ "));
            }
            for e in &a.e0 {
                let _ = writeln!(o, "\\[ E_0^{{{}}} = \\operatorname{{span}}\\{{{}\\}} \\]", e.degree, forms_latex(&e.basis));
            }
        }
        Report::Dc(d) => {
            let _ = writeln!(o, "\\[ d_c\\left({}\\right) = {} \\]", d.input_expr(true), d.output_expr(true));
        }
        Report::Verify(v) => {
            let _ = writeln!(o, "% {}: {}", v.algebra, if v.passed { "all checks passed" } else { "FAILED" });
        }
        Report::Lqp(l) => {
            let r = &l.lqp;
            let _ = writeln!(o, "\\[ T = {} \\]", rat_latex(&r.homogeneous_dimension));
            for d in &r.degrees {
                if let Some(t) = &d.threshold {
                    let _ = writeln!(
                        o,
                        "\\[ \\ell^{{q,p}}H^{{{}}}(G) \\neq 0 \\quad\\text{{for}}\\quad \\frac{{1}}{{p}} - \\frac{{1}}{{q}} < {} \\]",
                        d.degree,
                        rat_latex(t)
                    );
                }
            }
        }
        Report::CatalogList(c) => {
            for e in &c.entries {
                let _ = writeln!(o, "% {} (dimension {})", e.name, e.dim);
            }
        }
        Report::CatalogShow(c) => {
            let f = &c.entry;
            if let Ok(g) = f.to_algebra() {
                for (i, j, t) in g.nonzero_brackets() {
                    let mut s = String::new();
                    for (idx, (k, c)) in t.iter().enumerate() {
                        match (idx, c.is_negative()) {
                            (0, true) => s.push('-'),
                            (0, false) => {}
                            (_, true) => s.push_str(" - "),
                            (_, false) => s.push_str(" + "),
                        }
                        let a = c.abs();
                        if !a.is_one() {
                            s.push_str(&rat_latex(&a));
                        }
                        let _ = write!(s, "X_{{{}}}", k + 1);
                    }
                    let _ = writeln!(o, "\\[ [X_{{{}}}, X_{{{}}}] = {s} \\]", i + 1, j + 1);
                }
            }
        }
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io_cli::catalog::find;

    fn prepared(name: &str) -> Prepared {
        Prepared::new(find(name).unwrap().file).unwrap()
    }

    #[test]
    fn dc_degree0_latex() {
        let d = DcReport::build(&prepared("n42_r2"), 0).unwrap();
        assert_eq!(
            d.output_expr(true),
            "X_1 f\\,\\theta_1 + X_2 f\\,\\theta_2 + X_5 f\\,\\theta_5 + X_6 f\\,\\theta_6"
        );
        assert_eq!(d.output_expr(false), "X1 f θ1 + X2 f θ2 + X5 f θ5 + X6 f θ6");
    }

    #[test]
    fn analyze_lists_catalog_e0_first() {
        let a = AnalyzeReport::build(&prepared("n632"), Some(2)).unwrap();
        assert_eq!(a.e0.len(), 1);
        assert_eq!(a.e0[0].basis.len(), 6);
        assert_eq!(a.e0[0].basis[0].text, "θ5∧θ6 − θ1∧θ3");
    }

    #[test]
    fn json_round_trip() {
        let p = prepared("n632");
        for r in [
            Report::Empty,
            Report::Analyze(AnalyzeReport::build(&p, None).unwrap()),
            Report::Dc(DcReport::build(&p, 1).unwrap()),
            Report::Lqp(LqpDocument::build(&p, "V2").unwrap()),
            Report::Validate(ValidateReport::build(&p.file).unwrap()),
        ] {
            let doc = Document::new(r);
            assert_eq!(parse_document(&emit(&doc, Format::Json)).unwrap(), doc);
        }
    }

    #[test]
    fn empty_report_is_valid() {
        let doc = Document::new(Report::Empty);
        let s = emit(&doc, Format::Json);
        assert!(s.contains("rumin-report/1"));
        assert_eq!(emit(&doc, Format::Text), "");
        assert_eq!(emit(&doc, Format::Latex), "% rumin-report/1\n");
    }
}
