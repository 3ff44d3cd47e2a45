//! Python bindings over the exact toolkit. Rationals cross the boundary as
//! strings like "-1/2" (integers may omit the slash); all arithmetic stays
//! exact on the Rust side, and every number returned is the exact value.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use delsarte_core::codes;
use delsarte_core::delsarte as lp;
use delsarte_core::delsarte::StabilizeParams;
use delsarte_core::hamming;
use delsarte_core::orthopoly;
use delsarte_core::poly::Poly;
use delsarte_core::preservers;
use delsarte_core::psd;
use delsarte_core::rat::{parse_rat, rat_to_string, Rat};
use delsarte_core::simplex;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn prat(s: &str) -> PyResult<Rat> {
    parse_rat(s).map_err(err)
}

fn prats(xs: &[String]) -> PyResult<Vec<Rat>> {
    xs.iter().map(|s| prat(s)).collect()
}

fn srat(r: &Rat) -> String {
    rat_to_string(r)
}

fn srats(rs: &[Rat]) -> Vec<String> {
    rs.iter().map(srat).collect()
}

fn ppoly(coeffs: &[String]) -> PyResult<Poly> {
    Ok(Poly::from_coeffs(prats(coeffs)?))
}

fn rows_to_sym(rows: &[Vec<String>]) -> PyResult<psd::SymMatrix> {
    let entries = rows
        .iter()
        .map(|r| prats(r))
        .collect::<PyResult<Vec<_>>>()?;
    psd::SymMatrix::new(entries).map_err(err)
}

fn sym_to_rows(m: &psd::SymMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| srats(r)).collect()
}

/// Constrained inner-product set, validated to lie in [-1, 1).
#[pyclass(frozen)]
struct AngleSet(lp::AngleSet);

#[pymethods]
impl AngleSet {
    #[new]
    fn new(values: Vec<String>) -> PyResult<Self> {
        Ok(AngleSet(lp::AngleSet::new(prats(&values)?).map_err(err)?))
    }

    fn values(&self) -> Vec<String> {
        srats(self.0.values())
    }

    fn contains(&self, value: &str) -> PyResult<bool> {
        Ok(self.0.contains(&prat(value)?))
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Exact symmetric matrix with PSD and rank queries.
#[pyclass(frozen)]
struct SymMatrix(psd::SymMatrix);

#[pymethods]
impl SymMatrix {
    #[new]
    fn new(rows: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(SymMatrix(rows_to_sym(&rows)?))
    }

    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn entry(&self, i: usize, j: usize) -> PyResult<String> {
        if i >= self.0.dim() || j >= self.0.dim() {
            return Err(err(format!("index ({i},{j}) out of range for dim {}", self.0.dim())));
        }
        Ok(srat(self.0.entry(i, j)))
    }

    fn rows(&self) -> Vec<Vec<String>> {
        sym_to_rows(&self.0)
    }

    fn is_psd(&self) -> bool {
        self.0.is_psd()
    }

    fn psd_rank(&self) -> PyResult<usize> {
        self.0.psd_rank().map_err(err)
    }

    fn principal_submatrix(&self, indices: Vec<usize>) -> PyResult<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= self.0.dim()) {
            return Err(err("indices must be strictly increasing and in range"));
        }
        Ok(SymMatrix(self.0.principal_submatrix(&indices)))
    }
}

/// Partially specified symmetric matrix; None marks an unspecified entry.
#[pyclass(frozen)]
struct PartialMatrix(psd::PartialSymMatrix);

#[pymethods]
impl PartialMatrix {
    #[new]
    fn new(rows: Vec<Vec<Option<String>>>) -> PyResult<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|e| e.as_deref().map(prat).transpose()).collect())
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PartialMatrix(psd::PartialSymMatrix::new(entries).map_err(err)?))
    }

    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn get(&self, i: usize, j: usize) -> Option<String> {
        self.0.get(i, j).map(srat)
    }

    fn is_specified(&self, i: usize, j: usize) -> bool {
        self.0.is_specified(i, j)
    }

    fn rows(&self) -> Vec<Vec<Option<String>>> {
        (0..self.0.dim())
            .map(|i| (0..self.0.dim()).map(|j| self.0.get(i, j).map(srat)).collect())
            .collect()
    }

    /// Entrywise image under the polynomial with the given coefficients
    /// (constant term first); unspecified entries stay unspecified.
    fn apply_entrywise(&self, coeffs: Vec<String>) -> PyResult<Self> {
        Ok(PartialMatrix(self.0.apply_entrywise(&ppoly(&coeffs)?)))
    }
}

/// Candidate code as a unit-diagonal Gram matrix over an angle set.
#[pyclass(frozen)]
struct GramCandidate(codes::GramCandidate);

#[pymethods]
impl GramCandidate {
    #[new]
    fn new(gram: PyRef<'_, SymMatrix>, angles: PyRef<'_, AngleSet>) -> PyResult<Self> {
        Ok(GramCandidate(
            codes::GramCandidate::new(gram.0.clone(), angles.0.clone()).map_err(err)?,
        ))
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn gram(&self) -> SymMatrix {
        SymMatrix(self.0.gram().clone())
    }

    /// PSD of rank at most `dim`, i.e. realizable by unit vectors there.
    fn realizable(&self, dim: usize) -> bool {
        codes::realizable(&self.0, dim)
    }
}

/// LP certificate: the optimal witness data at one degree cap.
#[pyclass(frozen)]
struct Certificate(lp::DelsarteCertificate);

#[pymethods]
impl Certificate {
    #[getter]
    fn dim(&self) -> usize {
        self.0.dim
    }

    #[getter]
    fn degree_cap(&self) -> usize {
        self.0.degree_cap
    }

    #[getter]
    fn gbar(&self) -> String {
        srat(&self.0.gbar)
    }

    #[getter]
    fn coeffs(&self) -> Vec<String> {
        srats(&self.0.coeffs)
    }

    /// Exact `(t, g(t))` pairs over the constrained angles; all second
    /// components are <= 0 for a valid certificate.
    #[getter]
    fn residuals(&self) -> Vec<(String, String)> {
        self.0.residuals.iter().map(|(t, g)| (srat(t), srat(g))).collect()
    }

    #[getter]
    fn bound_raw(&self) -> Option<String> {
        self.0.bound_raw.as_ref().map(srat)
    }

    #[getter]
    fn bound_floor(&self) -> Option<String> {
        self.0.bound_floor.as_ref().map(|i| i.to_string())
    }

    /// Monomial coefficients of the witness polynomial, constant first.
    fn witness_poly(&self) -> PyResult<Vec<String>> {
        let family = orthopoly::OrthoFamily::gegenbauer(self.0.dim).map_err(err)?;
        let p = self.0.witness_poly(&family).map_err(err)?;
        Ok(srats(p.coeffs()))
    }
}

/// Cap-escalation outcome: the settled certificate plus the schedule.
#[pyclass(frozen)]
struct BoundOutcome {
    run: lp::BoundRun,
}

#[pymethods]
impl BoundOutcome {
    #[getter]
    fn stabilized(&self) -> bool {
        self.run.stabilized
    }

    #[getter]
    fn schedule(&self) -> Vec<(usize, String)> {
        self.run.schedule.iter().map(|(cap, g)| (*cap, srat(g))).collect()
    }

    #[getter]
    fn certificate(&self) -> Certificate {
        Certificate(self.run.certificate.clone())
    }

    #[getter]
    fn bound_floor(&self) -> Option<String> {
        self.run.certificate.bound_floor.as_ref().map(|i| i.to_string())
    }
}

/// Stabilized LP bound for codes with inner products in `angles`.
#[pyfunction]
fn bound(dim: usize, angles: PyRef<'_, AngleSet>) -> PyResult<BoundOutcome> {
    let params = StabilizeParams::for_angles(&angles.0);
    let run = lp::delsarte_bound(dim, &angles.0, &params).map_err(err)?;
    Ok(BoundOutcome { run })
}

/// Single-cap LP certificate without escalation.
#[pyfunction]
fn bound_at_cap(dim: usize, angles: PyRef<'_, AngleSet>, cap: usize) -> PyResult<Certificate> {
    Ok(Certificate(lp::delsarte_constant(dim, &angles.0, cap).map_err(err)?))
}

/// Interval-constrained bound for inner products in [-1, cos_theta].
#[pyclass(frozen)]
struct IntervalOutcome(lp::IntervalBound);

#[pymethods]
impl IntervalOutcome {
    #[getter]
    fn certified(&self) -> bool {
        self.0.certified
    }

    #[getter]
    fn cos_theta(&self) -> String {
        srat(&self.0.cos_theta)
    }

    #[getter]
    fn grid_sizes(&self) -> Vec<usize> {
        self.0.grid_sizes.clone()
    }

    #[getter]
    fn witness(&self) -> Vec<String> {
        srats(self.0.witness.coeffs())
    }

    #[getter]
    fn certificate(&self) -> Certificate {
        Certificate(self.0.certificate.clone())
    }

    #[getter]
    fn bound_floor(&self) -> Option<String> {
        self.0.certificate.bound_floor.as_ref().map(|i| i.to_string())
    }
}

#[pyfunction]
fn interval_bound(dim: usize, cos_theta: &str, cap: usize) -> PyResult<IntervalOutcome> {
    Ok(IntervalOutcome(
        lp::interval_delsarte(dim, &prat(cos_theta)?, cap).map_err(err)?,
    ))
}

/// Scan outcome for the minimum normalized member value at `t`.
#[pyclass(frozen)]
struct ThetaOutcome(lp::ThetaOutcome);

#[pymethods]
impl ThetaOutcome {
    #[getter]
    fn conclusive(&self) -> bool {
        matches!(self.0, lp::ThetaOutcome::Conclusive(_))
    }

    #[getter]
    fn minimum(&self) -> String {
        match &self.0 {
            lp::ThetaOutcome::Conclusive(scan) => srat(&scan.minimum),
            lp::ThetaOutcome::Inconclusive { candidate_min, .. } => srat(candidate_min),
        }
    }

    #[getter]
    fn k_argmin(&self) -> usize {
        match &self.0 {
            lp::ThetaOutcome::Conclusive(scan) => scan.k_argmin,
            lp::ThetaOutcome::Inconclusive { k_argmin, .. } => *k_argmin,
        }
    }

    /// `minimum / (minimum - 1)`, in (0, 1) for a conclusive negative
    /// minimum; None when the scan could not rule out smaller values past
    /// the cutoff.
    #[getter]
    fn theta_ratio(&self) -> Option<String> {
        match &self.0 {
            lp::ThetaOutcome::Conclusive(scan) => Some(srat(&scan.theta_ratio)),
            lp::ThetaOutcome::Inconclusive { .. } => None,
        }
    }

    #[getter]
    fn envelope_at_cutoff(&self) -> String {
        match &self.0 {
            lp::ThetaOutcome::Conclusive(scan) => srat(&scan.envelope_at_cutoff),
            lp::ThetaOutcome::Inconclusive { envelope_at_cutoff, .. } => {
                srat(envelope_at_cutoff)
            }
        }
    }
}

#[pyfunction]
fn theta_min(dim: usize, t: &str, k_max: usize) -> PyResult<ThetaOutcome> {
    Ok(ThetaOutcome(lp::theta_min(dim, &prat(t)?, k_max).map_err(err)?))
}

/// Sharpness of a certificate against a candidate code: "Sharp", "Gap", or
/// "Unverified".
#[pyfunction]
#[pyo3(signature = (certificate, code=None))]
fn sharpness(
    certificate: PyRef<'_, Certificate>,
    code: Option<PyRef<'_, GramCandidate>>,
) -> PyResult<String> {
    let verdict = lp::sharpness_verdict(&certificate.0, code.as_deref().map(|c| &c.0))
        .map_err(err)?;
    Ok(match verdict {
        lp::SharpnessVerdict::Sharp => "Sharp",
        lp::SharpnessVerdict::Gap => "Gap",
        lp::SharpnessVerdict::Unverified => "Unverified",
    }
    .to_string())
}

/// The ten-point two-angle configuration on the 2-subsets of a 5-set.
#[pyfunction]
fn petersen_gram() -> GramCandidate {
    GramCandidate(codes::petersen_gram())
}

/// Integer-bound attainment probe.
#[pyclass(frozen)]
struct ProbeResult(codes::ProbeVerdict);

#[pymethods]
impl ProbeResult {
    #[getter]
    fn outcome(&self) -> String {
        match &self.0.outcome {
            codes::ProbeOutcome::Sharp(_) => "Sharp",
            codes::ProbeOutcome::HallucinationCandidate => "HallucinationCandidate",
            codes::ProbeOutcome::Inconclusive => "Inconclusive",
        }
        .to_string()
    }

    #[getter]
    fn witness(&self) -> Option<SymMatrix> {
        match &self.0.outcome {
            codes::ProbeOutcome::Sharp(code) => Some(SymMatrix(code.gram().clone())),
            _ => None,
        }
    }

    #[getter]
    fn bound_floor(&self) -> Option<String> {
        self.0.bound_floor.as_ref().map(|i| i.to_string())
    }

    #[getter]
    fn nodes(&self) -> u64 {
        self.0.nodes
    }

    #[getter]
    fn budget(&self) -> u64 {
        self.0.budget
    }

    #[getter]
    fn stabilized(&self) -> bool {
        self.0.run.stabilized
    }
}

/// Stabilizes the bound, then searches for a code attaining it exactly
/// when the raw bound is an integer; node-budgeted and honest about
/// exhaustion.
#[pyfunction]
fn probe(dim: usize, angles: PyRef<'_, AngleSet>, budget: u64) -> PyResult<ProbeResult> {
    let params = StabilizeParams::for_angles(&angles.0);
    Ok(ProbeResult(
        codes::hallucination_probe(dim, &angles.0, &params, budget).map_err(err)?,
    ))
}

/// PSD completion outcome with its verified evidence.
#[pyclass(frozen)]
struct CompletionOutcome(psd::CompletionResult);

#[pymethods]
impl CompletionOutcome {
    #[getter]
    fn status(&self) -> String {
        match &self.0.status {
            psd::CompletionStatus::Completable(_) => "Completable",
            psd::CompletionStatus::Infeasible(_) => "Infeasible",
            psd::CompletionStatus::Unknown => "Unknown",
        }
        .to_string()
    }

    #[getter]
    fn method(&self) -> String {
        match self.0.method {
            psd::CompletionMethod::Chordal => "Chordal",
            psd::CompletionMethod::Projection => "Projection",
        }
        .to_string()
    }

    #[getter]
    fn witness(&self) -> Option<SymMatrix> {
        match &self.0.status {
            psd::CompletionStatus::Completable(w) => Some(SymMatrix(w.clone())),
            _ => None,
        }
    }

    /// Indices of a fully specified principal block that is not PSD; only
    /// present on Infeasible.
    #[getter]
    fn certificate_indices(&self) -> Option<Vec<usize>> {
        match &self.0.status {
            psd::CompletionStatus::Infeasible(c) => Some(c.indices.clone()),
            _ => None,
        }
    }

    #[getter]
    fn certificate_block(&self) -> Option<SymMatrix> {
        match &self.0.status {
            psd::CompletionStatus::Infeasible(c) => Some(SymMatrix(c.block.clone())),
            _ => None,
        }
    }
}

#[pyfunction]
fn complete_psd(partial: PyRef<'_, PartialMatrix>) -> CompletionOutcome {
    CompletionOutcome(psd::complete_psd(&partial.0))
}

/// Exact linear solve `a x = b`; any solution, free variables zeroed, None
/// when inconsistent.
#[pyfunction]
fn solve_linear_system(a: Vec<Vec<String>>, b: Vec<String>) -> PyResult<Option<Vec<String>>> {
    let rows = a.iter().map(|r| prats(r)).collect::<PyResult<Vec<_>>>()?;
    Ok(psd::solve_linear_system(&rows, &prats(&b)?).map(|x| srats(&x)))
}

/// Distance-function positive-definiteness on the n-cube: returns
/// (is_pd, expansion coefficients in the discrete basis).
#[pyfunction]
fn cube_pd(n: usize, values: Vec<String>) -> PyResult<(bool, Vec<String>)> {
    let f = hamming::CubeFunction::new(n, prats(&values)?).map_err(err)?;
    let (pd, expansion) = hamming::is_pd_on_cube(&f);
    Ok((pd, srats(expansion.coefficients())))
}

/// One sample of the scaled large-n limit: returns
/// (distance, scaled value, absolute error against the monomial).
#[pyfunction]
fn kraw_limit(j: usize, u: &str, n: usize) -> PyResult<(usize, String, String)> {
    let probe = hamming::limit_probe(j, &prat(u)?, n).map_err(err)?;
    Ok((probe.distance, srat(&probe.scaled), srat(&probe.error)))
}

/// Membership of `target` in the cone spanned by `generators`, all given
/// as value lists on the same points. Returns ("Member", coefficients) or
/// ("NotMember", separating functional).
#[pyfunction]
fn cone_membership(
    points: Vec<String>,
    target: Vec<String>,
    generators: Vec<Vec<String>>,
) -> PyResult<(String, Vec<String>)> {
    let pts = prats(&points)?;
    let t = preservers::FiniteFunction::new(pts.clone(), prats(&target)?).map_err(err)?;
    let gens = generators
        .iter()
        .map(|g| preservers::FiniteFunction::new(pts.clone(), prats(g)?).map_err(err))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(match preservers::cone_membership(&t, &gens).map_err(err)? {
        preservers::ConeVerdict::Member(lambda) => ("Member".to_string(), srats(&lambda)),
        preservers::ConeVerdict::NotMember(y) => ("NotMember".to_string(), srats(&y)),
    })
}

/// Fits `values` on `points` by a jump-plus-polynomial form of the given
/// degree. Returns ("Member", a, b, c) or ("NotMember", functional).
#[pyfunction]
fn fit_preserver(
    py: Python<'_>,
    points: Vec<String>,
    values: Vec<String>,
    degree: usize,
) -> PyResult<Py<PyAny>> {
    let f = preservers::FiniteFunction::new(prats(&points)?, prats(&values)?).map_err(err)?;
    let obj = match preservers::fit_preserver_form(&f, degree).map_err(err)? {
        preservers::FitVerdict::Member(form) => (
            "Member".to_string(),
            srat(form.a()),
            srat(form.b()),
            srats(form.c()),
        )
            .into_pyobject(py)?
            .into_any()
            .unbind(),
        preservers::FitVerdict::NotMember(y) => ("NotMember".to_string(), srats(&y))
            .into_pyobject(py)?
            .into_any()
            .unbind(),
    };
    Ok(obj)
}

/// Applies the polynomial part entrywise to random partial PSD matrices
/// and counts verified refutations. Returns a dict-like tuple
/// (trials, size, seed, completable, unknown, violations).
#[pyfunction]
#[pyo3(signature = (a, b, c, trials, size, seed, negative_control=false))]
#[allow(clippy::too_many_arguments)]
fn preserver_fuzz(
    a: &str,
    b: &str,
    c: Vec<String>,
    trials: usize,
    size: usize,
    seed: u64,
    negative_control: bool,
) -> PyResult<(usize, usize, u64, usize, usize, usize)> {
    let (a, b, c) = (prat(a)?, prat(b)?, prats(&c)?);
    let form = if negative_control {
        preservers::PreserverForm::negative_control(a, b, c)
    } else {
        preservers::PreserverForm::new(a, b, c).map_err(err)?
    };
    let r = preservers::preserver_fuzz(&form, trials, size, seed);
    Ok((r.trials, r.size, r.seed, r.completable, r.unknown, r.violations))
}

/// Exact LP outcome; exactly one evidence field is populated per status.
#[pyclass(frozen)]
struct LpResult {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    value: Option<String>,
    #[pyo3(get)]
    primal: Option<Vec<String>>,
    #[pyo3(get)]
    dual: Option<Vec<String>>,
    #[pyo3(get)]
    farkas: Option<Vec<String>>,
    #[pyo3(get)]
    ray: Option<Vec<String>>,
}

/// Maximizes `objective . x` over rows `rows[i] . x (rels[i]) rhs[i]` with
/// every variable nonnegative (pass free=True per variable to lift that).
#[pyfunction]
#[pyo3(signature = (objective, rows, rels, rhs, free=None))]
fn solve_lp(
    objective: Vec<String>,
    rows: Vec<Vec<String>>,
    rels: Vec<String>,
    rhs: Vec<String>,
    free: Option<Vec<bool>>,
) -> PyResult<LpResult> {
    let n = objective.len();
    let bounds = match free {
        None => vec![simplex::VarBound::Nonneg; n],
        Some(fs) => {
            if fs.len() != n {
                return Err(err("free flags must match the variable count"));
            }
            fs.iter()
                .map(|&f| if f { simplex::VarBound::Free } else { simplex::VarBound::Nonneg })
                .collect()
        }
    };
    let rels = rels
        .iter()
        .map(|r| match r.as_str() {
            "<=" => Ok(simplex::Rel::Le),
            ">=" => Ok(simplex::Rel::Ge),
            "=" | "==" => Ok(simplex::Rel::Eq),
            other => Err(err(format!("unknown relation {other:?}, use <=, >=, or ="))),
        })
        .collect::<PyResult<Vec<_>>>()?;
    let lp = simplex::LinearProgram {
        objective: prats(&objective)?,
        rows: rows.iter().map(|r| prats(r)).collect::<PyResult<Vec<_>>>()?,
        rels,
        rhs: prats(&rhs)?,
        bounds,
    };
    let empty = LpResult {
        status: String::new(),
        value: None,
        primal: None,
        dual: None,
        farkas: None,
        ray: None,
    };
    Ok(match simplex::solve(&lp).map_err(err)? {
        simplex::LpOutcome::Optimal { value, primal, dual } => LpResult {
            status: "Optimal".to_string(),
            value: Some(srat(&value)),
            primal: Some(srats(&primal)),
            dual: Some(srats(&dual)),
            ..empty
        },
        simplex::LpOutcome::Infeasible { farkas } => LpResult {
            status: "Infeasible".to_string(),
            farkas: Some(srats(&farkas)),
            ..empty
        },
        simplex::LpOutcome::Unbounded { point, ray } => LpResult {
            status: "Unbounded".to_string(),
            primal: Some(srats(&point)),
            ray: Some(srats(&ray)),
            ..empty
        },
    })
}

/// Orthogonal family handle: sphere-adapted, general Jacobi, or discrete.
#[pyclass(frozen, name = "OrthoFamily")]
struct PyOrthoFamily(orthopoly::OrthoFamily);

#[pymethods]
impl PyOrthoFamily {
    #[staticmethod]
    fn gegenbauer(dim: usize) -> PyResult<Self> {
        Ok(PyOrthoFamily(orthopoly::OrthoFamily::gegenbauer(dim).map_err(err)?))
    }

    #[staticmethod]
    fn jacobi(alpha: &str, beta: &str) -> PyResult<Self> {
        Ok(PyOrthoFamily(
            orthopoly::OrthoFamily::jacobi(prat(alpha)?, prat(beta)?).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn krawtchouk(n: usize) -> PyResult<Self> {
        Ok(PyOrthoFamily(orthopoly::OrthoFamily::krawtchouk(n).map_err(err)?))
    }

    fn max_degree(&self) -> Option<usize> {
        self.0.max_degree()
    }

    /// Monomial coefficients of the degree-k member, constant first.
    fn poly(&self, k: usize) -> PyResult<Vec<String>> {
        Ok(srats(self.0.poly(k).map_err(err)?.coeffs()))
    }

    fn value(&self, k: usize, x: &str) -> PyResult<String> {
        Ok(srat(&self.0.value(k, &prat(x)?).map_err(err)?))
    }

    fn normalized_value(&self, k: usize, x: &str) -> PyResult<String> {
        Ok(srat(&self.0.normalized_value(k, &prat(x)?).map_err(err)?))
    }

    fn normalization_value(&self, k: usize) -> PyResult<String> {
        Ok(srat(&self.0.normalization_value(k).map_err(err)?))
    }

    fn leading_coeff(&self, k: usize) -> PyResult<String> {
        Ok(srat(&self.0.leading_coeff(k).map_err(err)?))
    }

    fn norm_ratio(&self, k: usize) -> PyResult<String> {
        Ok(srat(&self.0.norm_ratio(k).map_err(err)?))
    }

    fn christoffel_darboux(&self, m: usize, x: &str, y: &str) -> PyResult<String> {
        Ok(srat(&self.0.christoffel_darboux(m, &prat(x)?, &prat(y)?).map_err(err)?))
    }

    /// Distinct roots of the degree-k member on [lo, hi]: returns
    /// (interior count, root at lo, root at hi).
    fn root_count(&self, k: usize, lo: &str, hi: &str) -> PyResult<(usize, bool, bool)> {
        let c = self.0.root_count(k, &prat(lo)?, &prat(hi)?).map_err(err)?;
        Ok((c.interior, c.at_lo, c.at_hi))
    }

    /// Disjoint rational intervals isolating the distinct roots, plus flags
    /// for roots sitting exactly on the domain endpoints.
    fn isolate_roots(&self, k: usize) -> PyResult<(Vec<(String, String)>, bool, bool)> {
        let iso = self.0.isolate_roots(k).map_err(err)?;
        let ivs = iso.intervals.iter().map(|(a, b)| (srat(a), srat(b))).collect();
        Ok((ivs, iso.at_lo, iso.at_hi))
    }

    fn interlacing_check(&self, k: usize) -> PyResult<bool> {
        self.0.interlacing_check(k).map_err(err)
    }

    /// Coefficients of member_i * member_j over the normalized basis.
    fn product_in_basis(&self, i: usize, j: usize) -> PyResult<Vec<String>> {
        Ok(srats(&self.0.product_in_basis(i, j).map_err(err)?))
    }
}

/// Amplitude envelope dominating the normalized member values at interior
/// points.
#[pyfunction]
fn darboux_envelope(dim: usize, k: usize, t: &str) -> PyResult<String> {
    Ok(srat(&orthopoly::darboux_envelope(dim, k, &prat(t)?).map_err(err)?))
}

#[pymodule]
fn delsarte(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<AngleSet>()?;
    m.add_class::<SymMatrix>()?;
    m.add_class::<PartialMatrix>()?;
    m.add_class::<GramCandidate>()?;
    m.add_class::<Certificate>()?;
    m.add_class::<BoundOutcome>()?;
    m.add_class::<IntervalOutcome>()?;
    m.add_class::<ThetaOutcome>()?;
    m.add_class::<ProbeResult>()?;
    m.add_class::<CompletionOutcome>()?;
    m.add_class::<LpResult>()?;
    m.add_class::<PyOrthoFamily>()?;
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    m.add_function(wrap_pyfunction!(bound_at_cap, m)?)?;
    m.add_function(wrap_pyfunction!(interval_bound, m)?)?;
    m.add_function(wrap_pyfunction!(theta_min, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness, m)?)?;
    m.add_function(wrap_pyfunction!(petersen_gram, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    m.add_function(wrap_pyfunction!(complete_psd, m)?)?;
    m.add_function(wrap_pyfunction!(solve_linear_system, m)?)?;
    m.add_function(wrap_pyfunction!(cube_pd, m)?)?;
    m.add_function(wrap_pyfunction!(kraw_limit, m)?)?;
    m.add_function(wrap_pyfunction!(cone_membership, m)?)?;
    m.add_function(wrap_pyfunction!(fit_preserver, m)?)?;
    m.add_function(wrap_pyfunction!(preserver_fuzz, m)?)?;
    m.add_function(wrap_pyfunction!(solve_lp, m)?)?;
    m.add_function(wrap_pyfunction!(darboux_envelope, m)?)?;
    Ok(())
}
