use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use periodgeom::acceptance;
use periodgeom::asymptotics::{
    fit_exponents, j_splitting, predicted_exponents, reducedness_sweep_with, RaySpec, SigmaRegion, SweepConfig,
};
use periodgeom::linalg::subspace::unit;
use periodgeom::linalg::{rat_to_f64, CRat, Filtration, Scalar, Subspace, C64};
use periodgeom::locus::{hodge_vector_condition, locus_solve, monodromy_shift_check, q_algebraicity_check, LocusRegion};
use periodgeom::mixed_hodge::{deligne_splitting, weight_filtration, GradedSplitting};
use periodgeom::orbit_file::OrbitFileError;
use periodgeom::period::{evaluate, validate_orbit};
use periodgeom::reduction::{bs_to_bb, hecke::multiset, hecke_points, reduce_sl2, siegel_intersectors, HeckeElement, SiegelSetSpec};

mod parse;

use parse::{join, OrbitSource};

#[derive(Parser)]
#[command(name = "periodgeom", version, about = "Nilpotent orbits, limit mixed Hodge structures and reduction theory")]
struct Cli {
    /// Worker threads for sweeps and searches.
    #[arg(long, global = true, env = "PERIODGEOM_JOBS")]
    jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an orbit file against every structural invariant.
    Validate {
        /// Path or bundled name.
        orbit: String,
        /// Also require an integral polarization and integral monodromy.
        #[arg(long)]
        integral: bool,
    },
    /// Monodromy weight filtration of N_1 + … + N_j.
    WeightFiltration {
        #[arg(long)]
        orbit: String,
        /// Number of leading nilpotents to add (default: all).
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Deligne splitting of the limit mixed Hodge structure.
    Split {
        #[arg(long)]
        orbit: String,
    },
    /// Hodge form at a point: the Gram matrix of the standard basis, or h(u, v).
    HodgeForm {
        #[arg(long)]
        orbit: String,
        /// Comma-separated complex rationals, e.g. `i,1/2+3i`.
        #[arg(long)]
        z: String,
        #[arg(long, requires = "v")]
        u: Option<String>,
        #[arg(long, requires = "u")]
        v: Option<String>,
    },
    /// Reducedness sweep of the Hodge metric over the sector.
    Sweep {
        #[arg(long)]
        orbit: String,
        #[arg(long, default_value_t = 16)]
        density: usize,
        #[arg(long, default_value_t = 1000.0)]
        y_hi: f64,
        /// Also sweep the translated bases T^m e for |m_j| <= radius.
        #[arg(long, default_value_t = 0)]
        shift_radius: u32,
        /// Write the per-point rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Largest accepted growth ratio.
        #[arg(long, default_value_t = 1.05)]
        max_growth: f64,
    },
    /// Fit the growth exponents of |v| along rays and compare with the prediction.
    Fit {
        #[arg(long)]
        orbit: String,
        /// `eK` or comma-separated rationals.
        #[arg(long)]
        vector: String,
    },
    /// Move a point of the upper half-plane into the fundamental set.
    Reduce {
        #[arg(long)]
        z: String,
    },
    /// Hecke images of a point under diag(1, p), reduced.
    Hecke {
        #[arg(long, default_value = "none")]
        orbit: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        p: i64,
    },
    /// Elements of SL_2(Z) moving one strip |x| <= u, y > t into another.
    Intersectors {
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, default_value = "1/2")]
        u: String,
        #[arg(long, default_value = "1")]
        t2: String,
        #[arg(long, default_value = "1/2")]
        u2: String,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Siegel-strip coordinates (x, t) to the cusp chart.
    BsBb {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        t: f64,
    },
    /// Locus where a rational vector is a Hodge class.
    Locus {
        #[arg(long)]
        orbit: String,
        #[arg(long)]
        vector: String,
        /// Lower bound on Im z_j.
        #[arg(long, default_value = "2")]
        y0: String,
    },
    /// Run every acceptance criterion.
    Report {
        /// Include timings (makes the output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// A finished command: what to print and whether its checks held.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { orbit, integral } => validate(orbit, *integral),
        Command::WeightFiltration { orbit, upto } => weight(orbit, *upto),
        Command::Split { orbit } => split(orbit),
        Command::HodgeForm { orbit, z, u, v } => hodge_form(orbit, z, u.as_deref().zip(v.as_deref())),
        Command::Sweep { orbit, density, y_hi, shift_radius, csv, max_growth } => {
            sweep(orbit, *density, *y_hi, *shift_radius, csv.as_deref(), *max_growth)
        }
        Command::Fit { orbit, vector } => fit(orbit, vector),
        Command::Reduce { z } => reduce(z),
        Command::Hecke { orbit, z, p } => hecke(orbit, z, *p),
        Command::Intersectors { t, u, t2, u2, bound } => intersectors([t, u, t2, u2], *bound),
        Command::BsBb { x, t } => cusp(*x, *t),
        Command::Locus { orbit, vector, y0 } => locus(orbit, vector, y0),
        Command::Report { timings } => Ok(report(cli.seed, *timings)),
    }
}

fn validate(orbit: &str, integral: bool) -> Result<Outcome> {
    let raw = match OrbitSource::resolve(orbit)?.raw() {
        Ok(Some(raw)) => raw,
        Ok(None) => bail!("nothing to validate"),
        Err(e @ OrbitFileError::Io { .. }) => return Err(e.into()),
        Err(e) => {
            return Ok(Outcome {
                text: format!("invalid: {e}\n"),
                json: json!({ "passed": false, "error": e.to_string() }),
                passed: false,
            })
        }
    };
    let report = validate_orbit(&raw, integral);
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!("{} {}: {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail));
    }
    let checks: Vec<Value> =
        report.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
    Ok(Outcome { text, json: json!({ "orbit": raw.name, "passed": report.passed(), "checks": checks }), passed: report.passed() })
}

fn subspace_rows<T: Scalar + std::fmt::Display>(s: &Subspace<T>) -> Vec<String> {
    s.basis().iter().map(|v| format!("({})", join(v))).collect()
}

fn filtration_text<T: Scalar + std::fmt::Display>(label: &str, f: &Filtration<T>) -> (String, Value) {
    let mut text = String::new();
    let mut levels = serde_json::Map::new();
    for (k, s) in f.levels() {
        let rows = subspace_rows(s);
        text.push_str(&format!("{label}_{k}: dim {} [{}]\n", s.dim(), rows.join(" ")));
        levels.insert(k.to_string(), json!(rows));
    }
    (text, Value::Object(levels))
}

fn weight(orbit: &str, upto: Option<usize>) -> Result<Outcome> {
    let data = parse::load_orbit(orbit)?;
    let j = upto.unwrap_or(data.vars());
    if j == 0 || j > data.vars() {
        bail!("--upto must be between 1 and {}", data.vars());
    }
    let w = weight_filtration(&data.cone().partial_sum(j))?;
    let (text, levels) = filtration_text("W", &w);
    let dims: serde_json::Map<String, Value> = w.graded_dims().into_iter().map(|(k, d)| (k.to_string(), json!(d))).collect();
    Ok(Outcome::ok(text, json!({ "orbit": data.name(), "nilpotents": j, "levels": levels, "graded_dims": dims })))
}

fn splitting_text<T: Scalar + std::fmt::Display>(s: &GradedSplitting<T>) -> (String, Value) {
    let mut text = String::new();
    let mut pieces = Vec::new();
    for (deg, piece) in s.pieces() {
        let rows = subspace_rows(piece);
        text.push_str(&format!("I^({}): dim {} [{}]\n", join(deg), piece.dim(), rows.join(" ")));
        pieces.push(json!({ "degree": deg, "basis": rows }));
    }
    (text, Value::Array(pieces))
}

fn split(orbit: &str) -> Result<Outcome> {
    let data = parse::load_orbit(orbit)?;
    let w = weight_filtration(&data.cone().partial_sum(data.vars()).to_crat())?;
    let s = deligne_splitting(data.limit(), &w, data.weight() as i32)?;
    let (text, pieces) = splitting_text(&s);
    Ok(Outcome::ok(text, json!({ "orbit": data.name(), "pieces": pieces })))
}

fn c64_text(z: C64) -> String {
    format!("{:.12e}{:+.12e}i", z.re, z.im)
}

fn hodge_form(orbit: &str, z: &str, uv: Option<(&str, &str)>) -> Result<Outcome> {
    let data = parse::load_orbit(orbit)?;
    let z: Vec<C64> = parse::points(z)?.iter().map(CRat::to_c64).collect();
    let point = evaluate(&data, &z)?;
    if !point.polarized {
        return Ok(Outcome {
            text: "not polarized at this point\n".into(),
            json: json!({ "polarized": false }),
            passed: false,
        });
    }
    let lift = |s: &str| -> Result<Vec<C64>> {
        Ok(parse::vector(s, data.rank())?.iter().map(|x| C64::new(rat_to_f64(x), 0.0)).collect())
    };
    if let Some((u, v)) = uv {
        let h = point.form(&lift(u)?, &lift(v)?);
        return Ok(Outcome::ok(format!("h(u, v) = {}\n", c64_text(h)), json!({ "re": h.re, "im": h.im })));
    }
    let basis: Vec<Vec<C64>> = (0..data.rank()).map(|i| unit(data.rank(), i)).collect();
    let gram = point.metric(&basis)?;
    let rows: Vec<Vec<String>> = (0..gram.rows()).map(|a| (0..gram.cols()).map(|b| c64_text(gram[(a, b)])).collect()).collect();
    let text = rows.iter().map(|r| r.join("  ") + "\n").collect();
    Ok(Outcome::ok(text, json!({ "gram": rows })))
}

fn sweep(
    orbit: &str,
    density: usize,
    y_hi: f64,
    shift_radius: u32,
    csv: Option<&std::path::Path>,
    max_growth: f64,
) -> Result<Outcome> {
    let data = parse::load_orbit(orbit)?;
    let region = SigmaRegion::new(data.vars())?.with_y_hi(y_hi)?;
    let report = reducedness_sweep_with(&data, &region, density, &SweepConfig { basis: None, shift_radius })?;
    if let Some(path) = csv {
        std::fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    let passed = report.c_star.is_finite() && report.growth_ratio <= max_growth;
    let basis: Vec<String> = report.basis.iter().map(|v| format!("({})", v.join(", "))).collect();
    let mut text = format!(
        "orbit {}\nbasis {}\nC* = {:.6}\nC* (lower decades) = {:.6}\ngrowth ratio = {:.6}\nmax defects = ({:.6}, {:.6}, {:.6})\nskipped = {}\n",
        report.orbit,
        basis.join(" "),
        report.c_star,
        report.c_star_lower,
        report.growth_ratio,
        report.max_defects[0],
        report.max_defects[1],
        report.max_defects[2],
        report.skipped
    );
    for s in &report.shifts {
        text.push_str(&format!("shift ({}): C* = {:.6}, deviation {:.3e}\n", join(&s.shift), s.c_star, s.max_deviation));
    }
    let json = serde_json::to_value(&report)?;
    Ok(Outcome { text, json, passed })
}

fn signed(s: &[i32]) -> String {
    s.iter().map(|x| format!("{x:+}")).collect::<Vec<_>>().join(", ")
}

fn fit(orbit: &str, vector: &str) -> Result<Outcome> {
    let data = parse::load_orbit(orbit)?;
    let v = parse::vector(vector, data.rank())?;
    let fit = fit_exponents(&data, &v, &RaySpec::default_rays(data.vars()))?;
    let predicted = predicted_exponents(&j_splitting(&data)?, &v)?;
    let passed = fit.exponents == predicted;
    let text = format!(
        "s=({})\npredicted=({})\nresidual={:.4}\n",
        signed(&fit.exponents),
        signed(&predicted),
        fit.residual
    );
    let json = json!({
        "exponents": fit.exponents,
        "slopes": fit.slopes,
        "predicted": predicted,
        "residual": fit.residual,
    });
    Ok(Outcome { text, json, passed })
}

fn reduce(z: &str) -> Result<Outcome> {
    let z = parse::complex(z)?;
    let (w, g) = reduce_sl2(&z)?;
    Ok(Outcome::ok(format!("{w}\ngamma = {g}\n"), json!({ "reduced": w.to_string(), "gamma": g.to_string() })))
}

fn hecke(orbit: &str, z: &str, p: i64) -> Result<Outcome> {
    if !matches!(OrbitSource::resolve(orbit)?, OrbitSource::None) {
        bail!("hecke acts on the upper half-plane; pass --orbit none");
    }
    let z = parse::complex(z)?;
    let points = hecke_points(&z, &HeckeElement::diag(p)?)?;
    let ms = multiset(&points);
    let text = format!("{{{}}}\n", ms.iter().map(|(w, k)| format!("{w}×{k}")).collect::<Vec<_>>().join(", "));
    let json = json!({
        "degree": points.len(),
        "multiset": ms.iter().map(|(w, k)| json!({ "point": w.to_string(), "multiplicity": k })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}

fn intersectors(strips: [&String; 4], bound: i64) -> Result<Outcome> {
    let [t, u, t2, u2] = strips.map(|s| parse::rational(s));
    let s1 = SiegelSetSpec::strip(t?, u?)?;
    let s2 = SiegelSetSpec::strip(t2?, u2?)?;
    let rep = siegel_intersectors(&s1, &s2, bound)?;
    let elements: Vec<String> = rep.elements.iter().map(ToString::to_string).collect();
    let undecided: Vec<String> = rep.undecided.iter().map(ToString::to_string).collect();
    let mut text = format!("{} elements with entries in [-{bound}, {bound}]\n", elements.len());
    for e in &elements {
        text.push_str(&format!("  {e}\n"));
    }
    text.push_str(&format!("bound {}: {} elements, stable = {}\n", 2 * bound, rep.doubled_count, rep.stable));
    if !undecided.is_empty() {
        text.push_str(&format!("undecided: {}\n", undecided.join(" ")));
    }
    let passed = rep.stable && undecided.is_empty();
    let json = json!({
        "bound": bound,
        "elements": elements,
        "doubled_count": rep.doubled_count,
        "stable": rep.stable,
        "undecided": undecided,
    });
    Ok(Outcome { text, json, passed })
}

fn cusp(x: f64, t: f64) -> Result<Outcome> {
    let [a, b] = bs_to_bb(x, t)?;
    Ok(Outcome::ok(
        format!("{}\n{}\n", c64_text(a), c64_text(b)),
        json!([{ "re": a.re, "im": a.im }, { "re": b.re, "im": b.im }]),
    ))
}

fn locus(orbit: &str, vector: &str, y0: &str) -> Result<Outcome> {
    let data = parse::load_orbit(orbit)?;
    let v = parse::vector(vector, data.rank())?;
    let system = hodge_vector_condition(&data, &v)?;
    let report = locus_solve(&system, &LocusRegion::new(parse::rational(y0)?))?;
    let shift_ok = monodromy_shift_check(&data, &v, &report)?;
    let q = q_algebraicity_check(&report);
    let mut text = String::new();
    for e in system.nonzero_equations() {
        text.push_str(&format!("equation: {e} = 0\n"));
    }
    if report.whole {
        text.push_str("locus: the whole region\n");
    }
    for p in &report.points {
        match &p.exact {
            Some(z) => text.push_str(&format!("point: z = ({})\n", join(z))),
            None => text.push_str(&format!(
                "point: z = ({}) residual {:.1e}\n",
                p.z.iter().map(|w| c64_text(*w)).collect::<Vec<_>>().join(", "),
                p.residual
            )),
        }
    }
    for c in &report.components {
        text.push_str(&format!("component: {} = 0\n", c.equation));
    }
    if report.is_empty() {
        text.push_str("locus: empty\n");
    }
    text.push_str(&format!("monodromy shift check: {}\n", if shift_ok { "ok" } else { "FAIL" }));
    text.push_str(&format!("algebraic in q: {}\n", q.algebraic));
    let mut json = report.to_json();
    json["monodromy_shift_check"] = json!(shift_ok);
    json["q_algebraic"] = json!(q.algebraic);
    Ok(Outcome { text, json, passed: shift_ok && q.algebraic })
}

fn report(seed: u64, timings: bool) -> Outcome {
    let outcomes = acceptance::run_all(seed);
    let mut text = String::new();
    for o in &outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        if timings {
            text.push_str(&format!("{verdict} {:>2} {} ({:.2}s): {}\n", o.id, o.title, o.seconds, o.detail));
        } else {
            text.push_str(&format!("{verdict} {:>2} {}: {}\n", o.id, o.title, o.detail));
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    text.push_str(&format!("{passed}/{} passed\n", outcomes.len()));
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail });
            if timings {
                v["seconds"] = json!(o.seconds);
            }
            v
        })
        .collect();
    Outcome { text, json: json!({ "seed": seed, "criteria": rows }), passed: passed == outcomes.len() }
}
