use std::fmt;

use crate::linalg::nilpotent::exp_series;
use crate::linalg::{
    nilpotent_exp, rat_int, CRat, CRatMatrix, Direction, Filtration, Matrix, Rat, RatMatrix, Scalar, Subspace,
};
use crate::mixed_hodge::{NilpotentCone, PolarizedLattice};

use super::PeriodError;

/// Unvalidated orbit data, as read from a file or assembled by hand.
#[derive(Clone, Debug, PartialEq)]
pub struct RawOrbit {
    pub name: String,
    pub weight: u32,
    pub form: RatMatrix,
    pub hodge_numbers: Vec<usize>,
    pub nilpotents: Vec<RatMatrix>,
    /// `limit[p]` spans `F^p` for `p = 0..=k`.
    pub limit: Vec<Vec<Vec<CRat>>>,
    /// `g_j` of the truncation `g(t) = 1 + sum_j t_j g_j`, one per variable.
    pub psi: Option<Vec<CRatMatrix>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Named pass/fail checks; never an error by itself.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &'static str, problems: Vec<String>) {
        let passed = problems.is_empty();
        let detail = if passed { "ok".to_string() } else { problems.join("; ") };
        self.checks.push(Check { name, passed, detail });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<24} {}  {}", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail)?;
        }
        Ok(())
    }
}

fn limit_filtration(raw: &RawOrbit) -> Result<Filtration<CRat>, String> {
    let d = raw.form.rows();
    let mut levels = Vec::with_capacity(raw.limit.len() + 1);
    for (p, vs) in raw.limit.iter().enumerate() {
        levels.push(Subspace::span(d, vs).map_err(|e| format!("F^{p}: {e}"))?);
    }
    levels.push(Subspace::zero(d));
    Filtration::new(Direction::Decreasing, 0, levels).map_err(|e| e.to_string())
}

/// Runs every check; `check_integrality` adds `exp(N_j) ∈ GL(Z)`.
pub fn validate_orbit(raw: &RawOrbit, check_integrality: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    let d = raw.form.rows();
    report.push("polarized lattice", PolarizedLattice::violations(raw.weight, &raw.form, &raw.hodge_numbers));
    let lattice_ok = report.passed();

    let mut shape = Vec::new();
    for (j, n) in raw.nilpotents.iter().enumerate() {
        if n.rows() != d || n.cols() != d {
            shape.push(format!("N_{} is {}x{}, expected {d}x{d}", j + 1, n.rows(), n.cols()));
        }
    }
    if raw.nilpotents.is_empty() {
        shape.push("no nilpotents".into());
    }
    if let Some(psi) = &raw.psi {
        if psi.len() != raw.nilpotents.len() {
            shape.push(format!("{} psi matrices for {} variables", psi.len(), raw.nilpotents.len()));
        }
        if psi.iter().any(|g| g.rows() != d || g.cols() != d) {
            shape.push("psi matrix with wrong shape".into());
        }
    }
    for (p, vs) in raw.limit.iter().enumerate() {
        if vs.iter().any(|v| v.len() != d) {
            shape.push(format!("F^{p} has a vector of the wrong length"));
        }
    }
    report.push("shapes", shape);
    if !report.check("shapes").is_some_and(|c| c.passed) {
        return report;
    }

    let cone_problems = if lattice_ok {
        let lat = PolarizedLattice::new(raw.weight, raw.form.clone(), raw.hodge_numbers.clone()).expect("checked");
        NilpotentCone::violations(&lat, &raw.nilpotents)
    } else {
        Vec::new()
    };
    for name in ["nilpotent", "commuting", "infinitesimal isometry"] {
        let prefix = format!("{name}: ");
        report.push(
            name,
            cone_problems.iter().filter_map(|p| p.strip_prefix(&prefix).map(str::to_string)).collect(),
        );
    }

    let f = limit_filtration(raw);
    let mut dims = Vec::new();
    if raw.limit.len() != raw.weight as usize + 1 {
        dims.push(format!("expected F^0..F^{}, got {} levels", raw.weight, raw.limit.len()));
    }
    match &f {
        Err(e) => dims.push(e.clone()),
        Ok(f) if lattice_ok => {
            let lat = PolarizedLattice::new(raw.weight, raw.form.clone(), raw.hodge_numbers.clone()).expect("checked");
            for p in 0..=raw.weight as i32 {
                if f.level(p).dim() != lat.f_dim(p) {
                    dims.push(format!("dim F^{p} = {}, expected {}", f.level(p).dim(), lat.f_dim(p)));
                }
            }
        }
        Ok(_) => {}
    }
    report.push("filtration dimensions", dims);

    let shift_problems = |ms: &[CRatMatrix], label: &str| -> Vec<String> {
        let Ok(f) = &f else { return vec!["no valid filtration".into()] };
        let mut out = Vec::new();
        for (j, m) in ms.iter().enumerate() {
            for p in 1..=raw.weight as i32 {
                let img = f.level(p).apply(m).expect("square");
                if !f.level(p - 1).contains_subspace(&img) {
                    out.push(format!("{label}_{} F^{p} is not inside F^{}", j + 1, p - 1));
                }
            }
        }
        out
    };
    let crat_ns: Vec<CRatMatrix> = raw.nilpotents.iter().map(RatMatrix::to_crat).collect();
    report.push("griffiths", shift_problems(&crat_ns, "N"));

    if check_integrality {
        let mut bad = Vec::new();
        for (j, n) in raw.nilpotents.iter().enumerate() {
            match nilpotent_exp(n, &Rat::one()) {
                Ok(t) if (0..d).all(|a| (0..d).all(|b| t[(a, b)].is_integer())) => {}
                Ok(_) => bad.push(format!("exp(N_{}) is not integral", j + 1)),
                Err(_) => bad.push(format!("exp(N_{}) undefined", j + 1)),
            }
        }
        report.push("integrality", bad);
    }
    if let Some(psi) = &raw.psi {
        report.push("psi shift", shift_problems(psi, "g"));
    }
    report
}

/// Validated nilpotent orbit data.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentOrbitData {
    name: String,
    cone: NilpotentCone,
    limit: Filtration<CRat>,
    psi: Option<Vec<CRatMatrix>>,
}

impl NilpotentOrbitData {
    pub fn new(raw: RawOrbit) -> Result<Self, PeriodError> {
        let report = validate_orbit(&raw, false);
        if !report.passed() {
            return Err(PeriodError::Invalid(report));
        }
        let lattice = PolarizedLattice::new(raw.weight, raw.form.clone(), raw.hodge_numbers.clone())
            .map_err(crate::mixed_hodge::MixedHodgeError::from)?;
        let limit = limit_filtration(&raw).expect("validated");
        let cone = NilpotentCone::new(lattice, raw.nilpotents)?;
        Ok(NilpotentOrbitData { name: raw.name, cone, limit, psi: raw.psi })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cone(&self) -> &NilpotentCone {
        &self.cone
    }

    pub fn lattice(&self) -> &PolarizedLattice {
        self.cone.lattice()
    }

    pub fn rank(&self) -> usize {
        self.lattice().rank()
    }

    pub fn weight(&self) -> u32 {
        self.lattice().weight()
    }

    /// Number of variables `n`.
    pub fn vars(&self) -> usize {
        self.cone.len()
    }

    pub fn nilpotents(&self) -> &[RatMatrix] {
        self.cone.generators()
    }

    pub fn limit(&self) -> &Filtration<CRat> {
        &self.limit
    }

    pub fn psi(&self) -> Option<&[CRatMatrix]> {
        self.psi.as_deref()
    }

    /// The same orbit with the holomorphic part dropped.
    pub fn without_psi(&self) -> Self {
        NilpotentOrbitData { psi: None, ..self.clone() }
    }
}

pub fn lift_matrix<T: Scalar>(m: &CRatMatrix) -> Result<Matrix<T>, PeriodError> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            out[(a, b)] = T::from_crat(&m[(a, b)]).ok_or_else(|| PeriodError::NotRepresentable(m[(a, b)].to_string()))?;
        }
    }
    Ok(out)
}

pub fn lift_vector<T: Scalar>(v: &[CRat]) -> Result<Vec<T>, PeriodError> {
    v.iter().map(|x| T::from_crat(x).ok_or_else(|| PeriodError::NotRepresentable(x.to_string()))).collect()
}

/// `γ(z) = exp(z·N) g(t)` with `t_j = exp(2 pi i z_j)`; `g = 1` without psi.
pub fn gamma<T: Scalar>(data: &NilpotentOrbitData, z: &[T]) -> Result<Matrix<T>, PeriodError> {
    if z.len() != data.vars() {
        return Err(PeriodError::Arity { expected: data.vars(), got: z.len() });
    }
    let d = data.rank();
    let mut m = Matrix::zeros(d, d);
    for (n, zj) in data.nilpotents().iter().zip(z) {
        m = m.add(&n.map(T::from_rat).scale(zj))?;
    }
    // commuting nilpotents: the combination is nilpotent of order <= d
    let mut g = exp_series(&m, d)?;
    if let Some(psi) = data.psi() {
        let mut h = Matrix::identity(d);
        for (gj, zj) in psi.iter().zip(z) {
            let t = zj.exp_2pi_i().ok_or(PeriodError::ExactPsi)?;
            h = h.add(&lift_matrix::<T>(gj)?.scale(&t))?;
        }
        g = g.dot(&h);
    }
    Ok(g)
}

/// `F(z)^p = γ(z) F^p`.
pub fn orbit_filtration<T: Scalar>(data: &NilpotentOrbitData, z: &[T]) -> Result<Filtration<T>, PeriodError> {
    let g = gamma(data, z)?;
    let mut levels = Vec::new();
    for (_, level) in data.limit().levels() {
        let vs: Vec<Vec<T>> = level.basis().iter().map(|v| lift_vector(v)).collect::<Result<_, _>>()?;
        let s = Subspace::span(data.rank(), &vs)?;
        levels.push(s.apply(&g)?);
    }
    Ok(Filtration::new(Direction::Decreasing, data.limit().lo(), levels)?)
}

/// `exp(sum_j m_j N_j)` for integers `m_j`: the monodromy of a translation.
pub fn monodromy(data: &NilpotentOrbitData, shifts: &[i64]) -> Result<RatMatrix, PeriodError> {
    let coeffs: Vec<Rat> = shifts.iter().map(|&m| rat_int(m)).collect();
    Ok(nilpotent_exp(&data.cone().combination(&coeffs), &Rat::one())?)
}
