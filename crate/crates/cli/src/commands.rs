//! Subcommand pipelines.

use crate::document::{print_section, AffineEquation, GridSpec, StructureDocument};
use crate::parse::ParseError;
use crate::report::{Check, Report};
use isotropy_core::algebra::polymat::Minor;
use isotropy_core::algebra::{q, Matrix, Rational};
use isotropy_core::big_tangent::{dirac_extension, tangent_projection};
use isotropy_core::canonical::{
    canonical_by_rref, check_leaf_conditions, check_leaf_form, check_orthogonality_relations, coupling_equivalences,
    dirac_extension_frame, is_locally_decomposable, normalize_frame, transversal_structure, AdaptedChart, CanonicalFrame,
};
use isotropy_core::reduction::{
    check_projectable, check_reducibility, reduce, restrict, restricted_structure, FoliationData, SubmanifoldData,
};
use isotropy_core::structures::{
    check_integrability, check_module_property, format_point, poisson_bracket, regular_criterion, BigIsotropicStructure,
    BracketVerdict, Grid,
};
use isotropy_core::transport::LinearMap;
use isotropy_core::{BigSection, Chart, OneForm, Polynomial, RationalFunction};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Integrability,
    Canonical,
    Decomposable,
    Transversal,
    Reduce,
    ReportAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Integrability => "integrability",
            Command::Canonical => "canonical",
            Command::Decomposable => "decomposable",
            Command::Transversal => "transversal",
            Command::Reduce => "reduce",
            Command::ReportAll => "report-all",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("input error: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub grid: Option<GridSpec>,
    pub timing: bool,
}

struct Ctx<'a> {
    doc: &'a StructureDocument,
    names: Vec<String>,
    spec: GridSpec,
    opts: &'a Options,
    checks: Vec<Check>,
}

impl Ctx<'_> {
    fn grid(&self, m: usize) -> Grid {
        Grid::cube(m, self.spec.lo, self.spec.hi, self.spec.cap, self.opts.seed)
    }

    fn push(&mut self, start: Instant, mut c: Check) {
        if self.opts.timing {
            c.elapsed_ms = Some(start.elapsed().as_millis());
        }
        self.checks.push(c);
    }

    fn poly(&self, p: &Polynomial) -> String {
        p.to_string_with(&self.names)
    }

    fn rf(&self, p: &RationalFunction) -> String {
        p.to_string_with(&self.names)
    }

    fn rf_matrix(&self, m: &Matrix<RationalFunction>) -> Value {
        json!((0..m.rows()).map(|i| (0..m.cols()).map(|j| self.rf(m.get(i, j))).collect::<Vec<_>>()).collect::<Vec<_>>())
    }

    fn minor(&self, m: &Minor) -> Value {
        json!({ "rows": m.rows, "cols": m.cols, "value": self.poly(&m.value) })
    }
}

fn sections_json(frame: &[BigSection], names: &[String]) -> Value {
    json!(frame.iter().map(|s| print_section(s, names)).collect::<Vec<_>>())
}

fn rf_rows_json(rows: &[Vec<RationalFunction>], names: &[String]) -> Value {
    json!(rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_string_with(names)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn histogram(v: &[usize]) -> Value {
    let mut h: BTreeMap<String, usize> = BTreeMap::new();
    for d in v {
        *h.entry(d.to_string()).or_default() += 1;
    }
    json!(h)
}

fn requirements(cmd: Command, doc: &StructureDocument) -> Result<(), CliError> {
    let needs_adapted = matches!(cmd, Command::Canonical | Command::Decomposable | Command::Transversal);
    if needs_adapted && doc.adapted.is_none() {
        return Err(CliError::Input(format!("'{}' needs an 'adapted' block", cmd.name())));
    }
    if cmd == Command::Reduce && doc.foliation.is_none() {
        return Err(CliError::Input("'reduce' needs a 'foliation' block".into()));
    }
    Ok(())
}

/// `{Cx = d}` parametrized by the non-pivot coordinates.
pub fn submanifold_from_equations(chart: &Chart, eqs: &[AffineEquation]) -> Result<SubmanifoldData, CliError> {
    let m = chart.dim();
    if eqs.is_empty() {
        return Ok(SubmanifoldData::identity(chart.clone()));
    }
    let rows: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|e| {
            let mut r = e.coeffs.clone();
            r.push(e.rhs.clone());
            r
        })
        .collect();
    let red = Matrix::from_rows(rows, m + 1).rref();
    if red.pivots.contains(&m) {
        return Err(CliError::Input("submanifold equations are inconsistent".into()));
    }
    let free: Vec<usize> = (0..m).filter(|c| !red.pivots.contains(c)).collect();
    if free.is_empty() {
        return Err(CliError::Input("submanifold is a point".into()));
    }
    let n = free.len();
    let mut a = Matrix::zeros(m, n);
    let mut offset = vec![q(0); m];
    for (j, &f) in free.iter().enumerate() {
        a.set(f, j, q(1));
    }
    for (i, &p) in red.pivots.iter().enumerate() {
        offset[p] = red.matrix.get(i, m).clone();
        for (j, &f) in free.iter().enumerate() {
            a.set(p, j, -red.matrix.get(i, f).clone());
        }
    }
    let names: Vec<String> = free.iter().map(|&i| chart.names()[i].clone()).collect();
    let sub = Chart::new(names).map_err(|e| CliError::Input(e.to_string()))?;
    SubmanifoldData::new(chart.clone(), sub, offset, LinearMap::new(a)).map_err(|e| CliError::Input(e.to_string()))
}

/// The foliation block, read in the chart of `n`.
pub fn foliation_data(doc: &StructureDocument, n: &SubmanifoldData) -> Result<FoliationData, CliError> {
    let leaf = doc.foliation.as_ref().ok_or_else(|| CliError::Input("missing 'foliation' block".into()))?;
    let leaf: Vec<&str> = leaf.iter().map(String::as_str).collect();
    FoliationData::from_names(n.chart().clone(), &leaf).map_err(|e| CliError::Input(e.to_string()))
}

pub fn adapted_chart(doc: &StructureDocument) -> Result<AdaptedChart, CliError> {
    let a = doc.adapted.as_ref().ok_or_else(|| CliError::Input("missing 'adapted' block".into()))?;
    fn v(x: &[String]) -> Vec<&str> {
        x.iter().map(String::as_str).collect()
    }
    AdaptedChart::from_names(doc.chart.clone(), &v(&a.leaf), &v(&a.transverse), &v(&a.extra))
        .map_err(|e| CliError::Input(e.to_string()))
}

/// The structure described by `doc`, validated on `grid`.
pub fn build(doc: &StructureDocument, grid: Grid) -> isotropy_core::Result<BigIsotropicStructure> {
    match &doc.e_prime {
        Some(ep) => BigIsotropicStructure::with_grid(doc.chart.clone(), doc.e.clone(), ep.clone(), grid),
        None => BigIsotropicStructure::with_computed_e_prime(doc.chart.clone(), doc.e.clone(), grid),
    }
}

pub fn run<'a>(cmd: Command, doc: &'a StructureDocument, source: &str, opts: &'a Options) -> Result<Report, CliError> {
    requirements(cmd, doc)?;
    let started = Instant::now();
    let spec = opts.grid.clone().or_else(|| doc.grid.clone()).unwrap_or_default();
    let mut ctx = Ctx { doc, names: doc.chart.names().to_vec(), spec, opts, checks: Vec::new() };
    let grid = ctx.grid(doc.chart.dim());
    let grid_points = grid.len();
    let t = Instant::now();
    match build(doc, grid) {
        Err(e) => {
            ctx.push(t, Check::new("structure", false, json!({})).with_certificate(json!(e.to_string())));
        }
        Ok(s) => {
            ctx.push(
                t,
                Check::new(
                    "structure",
                    true,
                    json!({
                        "m": s.m(),
                        "rank": s.rank(),
                        "e_prime": sections_json(s.e_prime_frame(), &ctx.names),
                    }),
                ),
            );
            let all = cmd == Command::ReportAll;
            if all || cmd == Command::Validate {
                validate(&mut ctx, &s);
            }
            if all || cmd == Command::Integrability {
                integrability(&mut ctx, &s);
            }
            let want_canonical = matches!(cmd, Command::Canonical | Command::Decomposable | Command::Transversal)
                || (all && doc.adapted.is_some());
            if want_canonical {
                let ac = adapted_chart(doc)?;
                if let Some(cf) = canonical(&mut ctx, &s, &ac, cmd == Command::Canonical || all) {
                    if all || cmd == Command::Decomposable {
                        decomposable(&mut ctx, &s, &cf);
                    }
                    if all || cmd == Command::Transversal {
                        transversal(&mut ctx, &s, &cf);
                    }
                }
            }
            if cmd == Command::Reduce || (all && doc.foliation.is_some()) {
                reduction(&mut ctx, &s)?;
            }
        }
    }
    let mut report = Report {
        command: cmd.name().to_string(),
        document: source.to_string(),
        seed: opts.seed,
        chart: ctx.names.clone(),
        grid_points,
        passed: false,
        checks: ctx.checks,
        elapsed_ms: opts.timing.then(|| started.elapsed().as_millis()),
    };
    report.finish();
    Ok(report)
}

fn validate(ctx: &mut Ctx, s: &BigIsotropicStructure) {
    let t = Instant::now();
    let m = s.m();
    let ce = s.characteristic_dims();
    let mut cep = Vec::new();
    let mut dirac_ok = true;
    let mut bad_point = None;
    for p in s.grid().points() {
        let d = s.evaluate_at(p).expect("validated at construction");
        cep.push(tangent_projection(d.e_prime()).expect("even").dim());
        let de = dirac_extension(&d);
        let ok = de.dim() == m
            && d.e().is_subspace_of(&de).unwrap_or(false)
            && de.is_subspace_of(d.e_prime()).unwrap_or(false);
        if !ok && bad_point.is_none() {
            dirac_ok = false;
            bad_point = Some(format_point(p));
        }
    }
    ctx.push(
        t,
        Check::new(
            "dimensions",
            true,
            json!({
                "dim_E": s.rank(),
                "dim_E_prime": 2 * m - s.rank(),
                "dim_cal_E": histogram(&ce),
                "dim_cal_E_prime": histogram(&cep),
                "regular": s.is_regular(),
            }),
        ),
    );
    let mut c = Check::new("dirac_extension", dirac_ok, json!({ "expected_dim": m }));
    if let Some(p) = bad_point {
        c = c.with_certificate(json!({ "point": p }));
    }
    ctx.push(t, c);
}

fn bracket_check(ctx: &Ctx, name: &str, v: &BracketVerdict, target: &str) -> Check {
    let mut c = Check::new(name, v.holds, json!({ "sampled_points": v.sampled_points }));
    if let Some(w) = &v.witness {
        c = c.with_certificate(json!({
            "left": w.left + 1,
            "right": w.right + 1,
            "target": target,
            "bracket": print_section(&w.bracket, &ctx.names),
            "minor": ctx.minor(&w.minor),
        }));
    }
    c
}

fn integrability(ctx: &mut Ctx, s: &BigIsotropicStructure) {
    let t = Instant::now();
    let integ = match check_integrability(s) {
        Ok(v) => v,
        Err(e) => {
            ctx.push(t, Check::new("integrability", false, json!({})).with_certificate(json!(e.to_string())));
            return;
        }
    };
    let c = bracket_check(ctx, "integrability", &integ, "E");
    ctx.push(t, c);
    let t = Instant::now();
    if let Ok(v) = check_module_property(s) {
        // only a theorem for integrable structures
        let mut c = bracket_check(ctx, "module_property", &v, "E_prime");
        c.passed = v.holds || !integ.holds;
        c.details["holds"] = json!(v.holds);
        ctx.push(t, c);
    }
    if s.is_regular() {
        let t = Instant::now();
        if let Ok(r) = regular_criterion(s) {
            ctx.push(
                t,
                Check::new(
                    "regular_criterion",
                    r.holds == integ.holds,
                    json!({
                        "characteristic_involutive": r.characteristic_involutive,
                        "module_invariant": r.module_invariant,
                        "d_tr_varpi_vanishes": r.d_tr_varpi_vanishes,
                        "criterion": r.holds,
                        "integrable": integ.holds,
                    }),
                ),
            );
        }
    }
    if !ctx.doc.hamiltonians.is_empty() {
        let t = Instant::now();
        hamiltonians(ctx, s, t);
    }
}

fn hamiltonians(ctx: &mut Ctx, s: &BigIsotropicStructure, t: Instant) {
    let m = s.m();
    let hs = &ctx.doc.hamiltonians;
    let mut failures = Vec::new();
    for h in hs {
        let sec = BigSection { x: h.field.clone(), a: OneForm::exact(&h.function, m) };
        if s.e_membership(&sec).is_some() {
            failures.push(format!("(X_{0}, d{0}) is not a section of E", h.name));
        }
    }
    let mut brackets = BTreeMap::new();
    if failures.is_empty() {
        for (i, a) in hs.iter().enumerate() {
            for b in &hs[i + 1..] {
                let ab = poisson_bracket(s, &a.function, &a.field, &b.function, &b.field);
                let ba = poisson_bracket(s, &b.function, &b.field, &a.function, &a.field);
                match (ab, ba) {
                    (Ok(ab), Ok(ba)) => {
                        if !(&ab + &ba).is_zero() {
                            failures.push(format!("{{{0}, {1}}} + {{{1}, {0}}} is not zero", a.name, b.name));
                        }
                        brackets.insert(format!("{{{}, {}}}", a.name, b.name), ctx.poly(&ab));
                    }
                    (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
                }
            }
        }
    }
    let mut c = Check::new("hamiltonian_brackets", failures.is_empty(), json!({ "brackets": brackets }));
    if !failures.is_empty() {
        c = c.with_certificate(json!(failures));
    }
    ctx.push(t, c);
}

fn canonical(ctx: &mut Ctx, s: &BigIsotropicStructure, ac: &AdaptedChart, detailed: bool) -> Option<CanonicalFrame> {
    let t = Instant::now();
    let cf = match normalize_frame(s, ac) {
        Ok(cf) => cf,
        Err(e) => {
            ctx.push(t, Check::new("canonical_frame", false, json!({})).with_certificate(json!(e.to_string())));
            return None;
        }
    };
    let oracle = canonical_by_rref(s, ac);
    let agrees = oracle.as_ref().map(|o| *o == cf).unwrap_or(false);
    let (e_std, ep_std) = cf.standard_rows();
    let given = cf
        .polynomial_sections()
        .map(|(e, ep)| e == s.e_frame() && ep == s.e_prime_frame())
        .unwrap_or(false);
    let locus: Vec<String> = cf.validity_locus().iter().map(|p| ctx.poly(p)).collect();
    let mut details = json!({
        "given_frame_is_canonical": given,
        "shape": cf.has_canonical_shape(),
        "validity_locus": locus,
        "E": rf_rows_json(&e_std, &ctx.names),
        "E_prime": rf_rows_json(&ep_std, &ctx.names),
    });
    if detailed {
        details["coefficients"] = json!({
            "A_prime": ctx.rf_matrix(&cf.a_prime()),
            "A_second": ctx.rf_matrix(&cf.a_second()),
            "alpha": ctx.rf_matrix(&cf.alpha()),
            "alpha_prime": ctx.rf_matrix(&cf.alpha_prime()),
            "B_prime": ctx.rf_matrix(&cf.b_prime()),
            "B_second": ctx.rf_matrix(&cf.b_second()),
            "beta": ctx.rf_matrix(&cf.beta()),
            "beta_prime": ctx.rf_matrix(&cf.beta_prime()),
            "C_second": ctx.rf_matrix(&cf.c_second()),
            "gamma": ctx.rf_matrix(&cf.gamma()),
            "L_second": ctx.rf_matrix(&cf.l_second()),
            "lambda": ctx.rf_matrix(&cf.lambda()),
        });
    }
    let mut c = Check::new("canonical_frame", agrees && cf.has_canonical_shape(), details);
    if let Err(e) = &oracle {
        c = c.with_certificate(json!(format!("reduced row-echelon oracle: {e}")));
    } else if !agrees {
        c = c.with_certificate(json!("cascade differs from the reduced row-echelon oracle"));
    }
    ctx.push(t, c);
    if !detailed {
        return Some(cf);
    }
    let t = Instant::now();
    let rel = check_orthogonality_relations(&cf);
    let mut c = Check::new("orthogonality_relations", rel.holds, json!({}));
    if !rel.holds {
        c = c.with_certificate(json!(rel.failures));
    }
    ctx.push(t, c);
    let t = Instant::now();
    let leaf = check_leaf_conditions(&cf);
    let mut c = Check::new("leaf_conditions", leaf.holds, json!({}));
    if !leaf.holds {
        c = c.with_certificate(json!(leaf.failures));
    }
    ctx.push(t, c);
    let t = Instant::now();
    let leaf_pts = Grid::cube(ac.p(), -1, 1, 27, ctx.opts.seed).points().to_vec();
    let leaf_pts: Vec<Vec<Rational>> = leaf_pts.into_iter().filter(|x| cf.is_valid_at(&ac.leaf_point(x))).collect();
    match check_leaf_form(s, &cf, &leaf_pts) {
        Ok(v) => ctx.push(
            t,
            Check::new(
                "leaf_form",
                v.holds(),
                json!({
                    "skew": v.skew,
                    "matches_varpi": v.matches_varpi,
                    "matches_pullback": v.matches_pullback,
                    "matches_dirac_extension_pullback": v.matches_dirac_extension_pullback,
                }),
            ),
        ),
        Err(e) => ctx.push(t, Check::new("leaf_form", false, json!({})).with_certificate(json!(e.to_string()))),
    }
    let t = Instant::now();
    let df = dirac_extension_frame(&cf);
    let mut bad = None;
    let mut checked = 0;
    for p in s.grid().points() {
        if !cf.is_valid_at(p) {
            continue;
        }
        checked += 1;
        let ok = match (df.at(p), s.evaluate_at(p)) {
            (Ok(a), Ok(d)) => a == dirac_extension(&d),
            _ => false,
        };
        if !ok {
            bad = Some(format_point(p));
            break;
        }
    }
    let mut c = Check::new(
        "dirac_extension_frame",
        bad.is_none(),
        json!({ "unconstrained": df.is_unconstrained(), "points": checked }),
    );
    if let Some(p) = bad {
        c = c.with_certificate(json!({ "point": p }));
    }
    ctx.push(t, c);
    Some(cf)
}

fn decomposable(ctx: &mut Ctx, s: &BigIsotropicStructure, cf: &CanonicalFrame) {
    let t = Instant::now();
    let dec = is_locally_decomposable(cf);
    let mut c = Check::new("decomposable", dec, json!({ "alpha_prime": ctx.rf_matrix(&cf.alpha_prime()) }));
    if !dec {
        c = c.with_certificate(json!("alpha_prime is not identically zero"));
    }
    ctx.push(t, c);
    let t = Instant::now();
    let pts: Vec<Vec<Rational>> = s.grid().points().iter().take(64).cloned().collect();
    match coupling_equivalences(s, cf, &pts) {
        Ok(v) => {
            let mut c = Check::new(
                "coupling_equivalences",
                v.consistent,
                json!({
                    "points": v.points.len(),
                    "normal_bundle_points": v.points.iter().filter(|p| p.normal).count(),
                    "split_points": v.points.iter().filter(|p| p.decomposition == Some(true)).count(),
                }),
            );
            if let Some(p) = v.points.iter().find(|p| {
                !(p.alpha_prime_zero == p.normal && p.normal == p.conormal && p.conormal == p.flat && p.conormal_meets_ann)
                    || p.decomposition == Some(false)
            }) {
                c = c.with_certificate(json!({ "point": format_point(&p.point) }));
            }
            ctx.push(t, c);
        }
        Err(e) => {
            ctx.push(t, Check::new("coupling_equivalences", false, json!({})).with_certificate(json!(e.to_string())))
        }
    }
}

fn transversal(ctx: &mut Ctx, s: &BigIsotropicStructure, cf: &CanonicalFrame) {
    let t = Instant::now();
    let ac = cf.chart();
    let grid = ctx.grid(ac.r() + ac.s());
    match transversal_structure(s, cf, Some(grid)) {
        Ok(tr) => {
            let names = tr.structure.chart().names().to_vec();
            let integrable = tr.is_integrable().unwrap_or(false);
            ctx.push(
                t,
                Check::new(
                    "transversal_structure",
                    tr.matches_pullback && tr.graph_type,
                    json!({
                        "chart": names,
                        "E": sections_json(tr.structure.e_frame(), &names),
                        "E_prime": sections_json(tr.structure.e_prime_frame(), &names),
                        "matches_pullback": tr.matches_pullback,
                        "graph_type": tr.graph_type,
                        "dim_S": tr.s_dims.first(),
                        "dim_S_prime": tr.s_prime_dims.first(),
                        "integrable": integrable,
                    }),
                ),
            );
        }
        Err(e) => {
            ctx.push(t, Check::new("transversal_structure", false, json!({})).with_certificate(json!(e.to_string())))
        }
    }
}

fn reduction(ctx: &mut Ctx, s: &BigIsotropicStructure) -> Result<(), CliError> {
    let doc = ctx.doc;
    let n = submanifold_from_equations(&doc.chart, doc.submanifold.as_deref().unwrap_or(&[]))?;
    let f = foliation_data(doc, &n)?;
    let n_names = n.chart().names().to_vec();
    let n_grid = ctx.grid(n.chart().dim());

    let t = Instant::now();
    let r = match restrict(s, &n, &n_grid) {
        Ok(r) => r,
        Err(e) => {
            ctx.push(t, Check::new("restriction", false, json!({})).with_certificate(json!(e.to_string())));
            return Ok(());
        }
    };
    ctx.push(
        t,
        Check::new(
            "restriction",
            true,
            json!({
                "chart": n_names,
                "dim_pullback": histogram(&r.e.iter().map(|e| e.dim()).collect::<Vec<_>>()),
                "dim_S": r.s_dims.first(),
                "dim_S_prime": r.s_prime_dims.first(),
            }),
        ),
    );
    let t = Instant::now();
    match check_reducibility(&r, &f) {
        Ok(v) => {
            let mut c = Check::new("reducibility", v.holds, json!({ "surjective": v.surjective }));
            if !v.holds {
                c = c.with_certificate(json!(v.failures));
            }
            let ok = v.holds;
            ctx.push(t, c);
            if !ok {
                return Ok(());
            }
        }
        Err(e) => {
            ctx.push(t, Check::new("reducibility", false, json!({})).with_certificate(json!(e.to_string())));
            return Ok(());
        }
    }
    let t = Instant::now();
    let restricted = match restricted_structure(&r, s, None) {
        Ok(x) => x,
        Err(e) => {
            ctx.push(t, Check::new("projectability", false, json!({})).with_certificate(json!(e.to_string())));
            return Ok(());
        }
    };
    let pv = check_projectable(&restricted, &f).map_err(|e| CliError::Input(e.to_string()))?;
    let mut c = Check::new(
        "projectability",
        pv.holds(),
        json!({
            "pullback_frame": sections_json(restricted.e_frame(), &n_names),
            "contains_leaf_fields": pv.contains_tf,
            "leaf_fields_are_automorphisms": pv.automorphisms,
        }),
    );
    if !pv.holds() {
        c = c.with_certificate(json!(pv.failures));
    }
    ctx.push(t, c);
    if !pv.holds() {
        return Ok(());
    }
    let t = Instant::now();
    let integrable = check_integrability(s).map(|v| v.holds).unwrap_or(false);
    match reduce(s, &n, &f, Some(n_grid), None) {
        Ok(red) => {
            let q_names = red.reduced.chart().names().to_vec();
            let transport = red.bracket_transport_holds().unwrap_or(false);
            let passed = red.pullback_roundtrip
                && red.matches_pushforward
                && red.orthogonal_matches
                && transport
                && (red.integrable || !integrable);
            ctx.push(
                t,
                Check::new(
                    "reduced_structure",
                    passed,
                    json!({
                        "chart": q_names,
                        "E": sections_json(red.reduced.e_frame(), &q_names),
                        "E_prime": sections_json(red.reduced.e_prime_frame(), &q_names),
                        "pullback_roundtrip": red.pullback_roundtrip,
                        "matches_pushforward": red.matches_pushforward,
                        "orthogonal_matches": red.orthogonal_matches,
                        "bracket_transport": transport,
                        "poisson_condition": red.poisson_condition,
                        "integrable": red.integrable,
                    }),
                ),
            );
        }
        Err(e) => {
            ctx.push(t, Check::new("reduced_structure", false, json!({})).with_certificate(json!(e.to_string())))
        }
    }
    Ok(())
}
