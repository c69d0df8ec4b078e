use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use spin7::algebra::{
    constants_report, cross_product, decompose, fundamental_form, lee_form, lee_from_torsion,
    nabla_phi_formula, spin7_tables, torsion_closed_form, torsion_linear_solve, AlgebraConstants,
};
use spin7::analysis::{
    classify, gauduchon_identity_check, killing_check, scalar_identity_check, sl_identity_check,
    torsion_bound_check,
};
use spin7::clifford::{
    clifford_form, clifford_vector, even_action_on_positive, fundamental_spinor, gamma_table,
    Spinor,
};
use spin7::exterior::{hodge_star, KForm};
use spin7::fields::{
    check_nabla_parallel, connection_ricci, dirac_identities, sample_points, structure_jet,
    FixtureSpec, ScalarTrigField,
};
use spin7::report::Report;
use spin7::Vector8;

#[derive(Parser)]
#[command(
    name = "spin7",
    version,
    about = "Verified computations for metric connections with skew torsion in eight dimensions"
)]
struct Cli {
    /// Print the input and report JSON schemas and exit.
    #[arg(long)]
    schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pointwise algebraic identity suite.
    Identities {
        #[command(flatten)]
        run: RunArgs,
        /// Corrupt one ingredient on purpose to demonstrate the gates fire.
        #[arg(long, value_enum)]
        inject: Option<Fault>,
    },
    /// Split a form (degree 2, 3, or 4) into irreducible components.
    Decompose {
        /// Path to a form JSON file.
        form: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Torsion, Lee form, and classification report for a fixture.
    Torsion {
        /// Path to a fixture JSON file.
        fixture: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Curvature identity table for a fixture.
    Curvature {
        /// Path to a fixture JSON file.
        fixture: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Accept or reject a dilation function for a fixture.
    Killing {
        /// Path to a fixture JSON file.
        fixture: PathBuf,
        /// Path to a dilation JSON file (scalar trigonometric field).
        dilation: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Seed for sample points and random test forms.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of pseudo-random samples; the origin is always included.
    #[arg(long, default_value_t = 32)]
    samples: usize,
    /// Residual tolerance for pass/fail gating.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    /// Also write the report JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep full-precision residuals and per-point breakdowns in the report.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fault {
    /// Flip one sign in the fundamental form.
    PhiSign,
    /// Use a wrong coefficient in the closed-form torsion expression.
    TorsionCoefficient,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if cli.schema {
        print!("{}", SCHEMAS);
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (or --schema); see --help");
        return ExitCode::from(2);
    };
    let (result, run) = match command {
        Command::Identities { run, inject } => (cmd_identities(&run, inject), run),
        Command::Decompose { form, run } => (cmd_decompose(&form, &run), run),
        Command::Torsion { fixture, run } => (cmd_torsion(&fixture, &run), run),
        Command::Curvature { fixture, run } => (cmd_curvature(&fixture, &run), run),
        Command::Killing {
            fixture,
            dilation,
            run,
        } => (cmd_killing(&fixture, &dilation, &run), run),
    };
    match result {
        Ok(report) => finish(&report, &run),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn finish(report: &Report, run: &RunArgs) -> ExitCode {
    let text = report.render(run.verbose);
    print!("{text}");
    if let Some(path) = &run.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        for name in report.failing() {
            eprintln!("failed: {name}");
        }
        ExitCode::from(1)
    }
}

fn validate(run: &RunArgs) -> Result<(), String> {
    if run.samples < 1 {
        return Err("--samples must be at least 1".into());
    }
    if !(run.tol > 0.0) {
        return Err("--tol must be positive".into());
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf, what: &str) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {} file {}: {e}", what, path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid {} JSON: {e}", what))
}

fn random_vector(rng: &mut ChaCha8Rng) -> Vector8 {
    std::array::from_fn(|_| rng.gen_range(-1.0..1.0))
}

fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> KForm {
    let mut a = KForm::zero(degree);
    for c in a.coeffs_mut() {
        *c = rng.gen_range(-1.0..1.0);
    }
    a
}

fn spinor_sup(s: &Spinor) -> f64 {
    s.0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

// ---------------------------------------------------------------- identities

fn cmd_identities(run: &RunArgs, inject: Option<Fault>) -> Result<Report, String> {
    validate(run)?;
    let mut rep = Report::new("identities", run.seed, run.samples, run.tol);
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let n = run.samples;
    let e = |err: spin7::Error| err.to_string();

    // exterior algebra
    let mut worst = 0.0f64;
    for _ in 0..n {
        for k in 0..=8usize {
            let a = random_form(&mut rng, k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max(hodge_star(&hodge_star(&a)).sub(&a.scale(sign)).max_abs());
        }
    }
    rep.check("star-involution", "*(*(a)) = (-1)^k a on degree k", worst);
    rep.note("the double Hodge star changes sign on odd degrees; the sign is part of the identity");

    let mut worst = 0.0f64;
    for _ in 0..n {
        for k in 0..=8usize {
            let a = random_form(&mut rng, k);
            let b = random_form(&mut rng, k);
            let paired = a.wedge(&hodge_star(&b)).coeffs()[0];
            worst = worst.max((paired - a.inner(&b)).abs());
        }
    }
    rep.check("wedge-star-pairing", "a ^ *(b) = <a, b> vol", worst);

    let mut worst = 0.0f64;
    for _ in 0..n {
        for k in 1..=8usize {
            let a = random_form(&mut rng, k);
            let b = random_form(&mut rng, k - 1);
            let v = random_vector(&mut rng);
            let mut vf = KForm::zero(1);
            vf.coeffs_mut().copy_from_slice(&v);
            worst = worst.max((a.interior(&v).inner(&b) - a.inner(&vf.wedge(&b))).abs());
        }
    }
    rep.check("interior-adjoint", "<i_v a, b> = <a, v ^ b>", worst);

    // constants of the fundamental form
    let mut phi = fundamental_form();
    if inject == Some(Fault::PhiSign) {
        *phi.coeff_mut(0b1111_0000) = -1.0;
        rep.note("fault injection: one sign of the fundamental form was flipped");
    }
    let c: AlgebraConstants = constants_report(&phi).map_err(e)?;
    rep.check("phi-norm", "<phi, phi> = 14", (c.norm2 - 14.0).abs());
    rep.check("self-dual", "*(phi) = phi", c.self_dual_residual);
    rep.check(
        "wedge-normalization",
        "phi ^ phi = 14 vol",
        (c.wedge_normalization - 14.0).abs(),
    );
    rep.check(
        "two-form-spectrum",
        "a -> *(a ^ phi) on 2-forms has eigenvalues 3 (x7) and -1 (x21)",
        (c.eigen_plus3 as f64 - 7.0)
            .abs()
            .max((c.eigen_minus1 as f64 - 21.0).abs())
            .max(c.eigen_residual),
    );
    rep.check(
        "three-form-gram",
        "the generators *(e_a ^ phi) of the 8-dimensional 3-form component have Gram matrix 7 I",
        c.gram_residual,
    );
    let trace_dev = c
        .projector_traces
        .iter()
        .zip(AlgebraConstants::EXPECTED_TRACES)
        .fold(0.0f64, |m, (t, x)| m.max((t - x).abs()));
    rep.check(
        "projector-traces",
        "component projectors have traces 7, 21, 8, 48, 1, 7, 27, 35",
        trace_dev,
    );
    rep.check(
        "projector-algebra",
        "component projectors are idempotent, mutually orthogonal, and complete",
        c.projector_residual,
    );
    rep.check(
        "four-seven-rank",
        "antisymmetrized generators of the 7-dimensional 4-form component span rank 7",
        (c.four_seven_rank as f64 - 7.0).abs(),
    );

    // cross product
    let model = fundamental_form();
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (x, y, z, w) = (
            random_vector(&mut rng),
            random_vector(&mut rng),
            random_vector(&mut rng),
            random_vector(&mut rng),
        );
        let p = cross_product(&x, &y, &z);
        let lhs: f64 = p.iter().zip(&w).map(|(a, b)| a * b).sum();
        worst = worst.max((lhs - model.apply(&[x, y, z, w])).abs());
    }
    rep.check(
        "cross-pairing",
        "<P(x,y,z), w> = phi(x,y,z,w) for the triple cross product",
        worst,
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        if let Some([x, y, z]) = orthonormal_triple(&mut rng) {
            let p = cross_product(&x, &y, &z);
            let norm: f64 = p.iter().map(|v| v * v).sum::<f64>().sqrt();
            worst = worst.max((norm - 1.0).abs());
        }
    }
    rep.check(
        "cross-orthonormal",
        "|P(x,y,z)| = 1 for orthonormal x, y, z",
        worst,
    );

    // decomposition round trips
    let mut rec = 0.0f64;
    let mut pyth = 0.0f64;
    for _ in 0..n {
        for degree in [2usize, 3, 4] {
            let a = random_form(&mut rng, degree);
            let parts = decompose(&a).map_err(e)?;
            rec = rec.max(parts.reconstruction_residual(&a));
            pyth = pyth.max(parts.pythagoras_residual(&a));
        }
    }
    rep.check(
        "decompose-reconstruction",
        "irreducible components sum back to the input form",
        rec,
    );
    rep.check(
        "decompose-pythagoras",
        "component norms squared sum to the input norm squared",
        pyth,
    );

    // torsion from a prescribed codifferential, two independent routes
    rep.check(
        "torsion-rank",
        "the torsion contraction operator on 3-forms is invertible (rank 56)",
        (spin7_tables().torsion_rank() as f64 - 56.0).abs(),
    );
    let mut dual = 0.0f64;
    let mut lee_dual = 0.0f64;
    for _ in 0..n {
        let delta = random_form(&mut rng, 3);
        let theta = lee_form(&delta).map_err(e)?;
        let closed = if inject == Some(Fault::TorsionCoefficient) {
            delta
                .neg()
                .sub(&hodge_star(&theta.wedge(&model)).scale(7.0 / 5.0))
        } else {
            torsion_closed_form(&delta).map_err(e)?
        };
        let solved = torsion_linear_solve(&delta).map_err(e)?;
        dual = dual.max(closed.sub(&solved).max_abs());
        lee_dual = lee_dual.max(lee_from_torsion(&solved).map_err(e)?.sub(&theta).max_abs());
    }
    if inject == Some(Fault::TorsionCoefficient) {
        rep.note("fault injection: the closed-form torsion uses a wrong Lee coefficient");
    }
    rep.check(
        "torsion-dual-route",
        "-delta(phi) - (7/6) *(theta ^ phi) solves the torsion contraction system",
        dual,
    );
    rep.check(
        "lee-dual-route",
        "theta from delta(phi) agrees with (6/7) *(phi ^ T)",
        lee_dual,
    );

    // first-derivative formula against the torsion derivation
    let mut worst = 0.0f64;
    for _ in 0..n {
        let delta = random_form(&mut rng, 3);
        let t = torsion_closed_form(&delta).map_err(e)?;
        let a = rng.gen_range(0..8usize);
        let images: [KForm; 8] = std::array::from_fn(|r| {
            let mut w = KForm::zero(1);
            for m in 0..8 {
                let cmr = t.component(&[a, m, r]);
                if cmr != 0.0 {
                    w.add_assign(&KForm::monomial(&[m], cmr));
                }
            }
            w
        });
        let twice_nabla = model.derivation(&images);
        let (y, z, v, w) = (
            random_vector(&mut rng),
            random_vector(&mut rng),
            random_vector(&mut rng),
            random_vector(&mut rng),
        );
        let mut ea = [0.0; 8];
        ea[a] = 1.0;
        let direct = nabla_phi_formula(&delta, &ea, &y, &z, &v, &w).map_err(e)?;
        worst = worst.max((twice_nabla.apply(&[y, z, v, w]) - 2.0 * direct).abs());
    }
    rep.check(
        "covariant-derivative-formula",
        "the pointwise formula for 2 (nabla_X phi)(Y,Z,V,W) matches the torsion derivation of phi",
        worst,
    );

    // Clifford layer
    let tables = gamma_table();
    let mut worst = 0.0f64;
    for a in 0..8 {
        for b in 0..8 {
            for k in 0..16 {
                let s = Spinor::basis(k);
                let ab = tables.apply_gamma(a, &tables.apply_gamma(b, &s));
                let ba = tables.apply_gamma(b, &tables.apply_gamma(a, &s));
                let mut sum = ab.add(&ba);
                if a == b {
                    sum = sum.add(&s.scale(2.0));
                }
                worst = worst.max(spinor_sup(&sum));
            }
        }
    }
    rep.check(
        "gamma-relations",
        "gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab",
        worst,
    );

    let spinor = fundamental_spinor().map_err(e)?;
    rep.check(
        "spinor-eigenvalue",
        "phi . s = -14 s for the distinguished spinor",
        spinor_sup(&clifford_form(&model, &spinor).add(&spinor.scale(14.0))),
    );

    let block = even_action_on_positive(&model);
    let sym = nalgebra::SMatrix::<f64, 8, 8>::from_fn(|a, b| 0.5 * (block[a][b] + block[b][a]));
    let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("real spectrum"));
    let mut spec_dev = (ev[0] + 14.0).abs();
    for v in &ev[1..] {
        spec_dev = spec_dev.max((v - 2.0).abs());
    }
    rep.check(
        "even-spectrum",
        "phi acts on positive spinors with eigenvalues -14 (x1) and 2 (x7)",
        spec_dev,
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        let v = random_vector(&mut rng);
        let bridge = clifford_form(&model.interior(&v), &spinor)
            .sub(&clifford_vector(&v, &spinor).scale(7.0));
        worst = worst.max(spinor_sup(&bridge));
    }
    rep.check(
        "vector-bridge",
        "(i_v phi) . s = 7 v . s for the distinguished spinor",
        worst,
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        let delta = random_form(&mut rng, 3);
        let t = torsion_closed_form(&delta).map_err(e)?;
        let theta = lee_form(&delta).map_err(e)?;
        let bridge = clifford_form(&t, &spinor)
            .add(&clifford_form(&theta, &spinor).scale(7.0 / 6.0));
        worst = worst.max(spinor_sup(&bridge));
    }
    rep.check(
        "clifford-bridge",
        "T . s = -(7/6) theta . s for the distinguished spinor",
        worst,
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        let a = random_form(&mut rng, 2);
        let lower = spin7_tables().project(&a, 21);
        worst = worst.max(spinor_sup(&clifford_form(&lower, &spinor)));
    }
    rep.check(
        "two-form-kernel",
        "the 21-dimensional 2-form component annihilates the distinguished spinor",
        worst,
    );

    Ok(rep)
}

fn orthonormal_triple(rng: &mut ChaCha8Rng) -> Option<[Vector8; 3]> {
    let mut basis: Vec<Vector8> = Vec::new();
    for _ in 0..3 {
        let mut v = random_vector(rng);
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            for i in 0..8 {
                v[i] -= d * b[i];
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            return None;
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
        basis.push(v);
    }
    Some([basis[0], basis[1], basis[2]])
}

// ----------------------------------------------------------------- decompose

#[derive(Serialize)]
struct ComponentOut {
    label: String,
    norm: f64,
    form: KForm,
}

fn cmd_decompose(path: &PathBuf, run: &RunArgs) -> Result<Report, String> {
    validate(run)?;
    let form: KForm = read_json(path, "form")?;
    let parts = decompose(&form).map_err(|e| e.to_string())?;
    let mut rep = Report::new("decompose", run.seed, run.samples, run.tol);
    rep.check(
        "reconstruction",
        "irreducible components sum back to the input form",
        parts.reconstruction_residual(&form),
    );
    rep.check(
        "pythagoras",
        "component norms squared sum to the input norm squared",
        parts.pythagoras_residual(&form),
    );
    let components: Vec<ComponentOut> = parts
        .parts
        .iter()
        .map(|c| ComponentOut {
            label: format!("{}_{}", form.degree(), c.dim),
            norm: c.form.norm(),
            form: c.form.clone(),
        })
        .collect();
    rep.attach(&serde_json::json!({
        "degree": form.degree(),
        "norm": form.norm(),
        "components": components,
    }));
    Ok(rep)
}

// ------------------------------------------------------------------- torsion

#[derive(Serialize)]
struct PointBreakdown {
    point: [f64; 8],
    condition: f64,
    lee_norm: f64,
    torsion_norm: f64,
    parallel_residual: f64,
}

fn cmd_torsion(path: &PathBuf, run: &RunArgs) -> Result<Report, String> {
    validate(run)?;
    let spec: FixtureSpec = read_json(path, "fixture")?;
    let field = spec.build().map_err(|e| e.to_string())?;
    let points = sample_points(run.seed, run.samples);
    let mut rep = Report::new("torsion", run.seed, run.samples, run.tol);
    let e = |err: spin7::Error| err.to_string();

    let mut parallel = 0.0f64;
    let mut metricity = 0.0f64;
    let mut dual = 0.0f64;
    let mut lee_dual = 0.0f64;
    let mut bound = 0.0f64;
    let mut gap_max = 0.0f64;
    let mut condition = 0.0f64;
    let mut breakdown = Vec::new();
    for p in &points {
        let jet = structure_jet(&field, p).map_err(e)?;
        let par = check_nabla_parallel(&field, p).map_err(e)?;
        parallel = parallel.max(par.residual);
        metricity = metricity.max(jet.metricity_residual);
        let solved = torsion_linear_solve(&jet.delta_phi_frame).map_err(e)?;
        dual = dual.max(jet.torsion_frame.sub(&solved).max_abs());
        lee_dual = lee_dual.max(
            lee_from_torsion(&jet.torsion_frame)
                .map_err(e)?
                .sub(&jet.theta_frame)
                .max_abs(),
        );
        let tb = torsion_bound_check(&jet);
        bound = bound.max(tb.identity_residual);
        gap_max = gap_max.max(tb.gap);
        condition = condition.max(jet.condition);
        if run.verbose {
            breakdown.push(PointBreakdown {
                point: *p,
                condition: jet.condition,
                lee_norm: jet.theta_frame.norm(),
                torsion_norm: jet.torsion_frame.norm(),
                parallel_residual: par.residual,
            });
        }
    }
    rep.check(
        "parallel-transport",
        "the fundamental form is parallel for the connection with the computed torsion",
        parallel,
    );
    rep.check(
        "metricity",
        "the connection with the computed torsion preserves the metric",
        metricity,
    );
    rep.check(
        "torsion-dual-route",
        "closed-form torsion agrees with the linear-solver route",
        dual,
    );
    rep.check(
        "lee-dual-route",
        "theta from delta(phi) agrees with (6/7) *(phi ^ T)",
        lee_dual,
    );
    rep.check(
        "torsion-bound",
        "|T|^2 = (7/6)|theta|^2 + |T + (1/6) *(theta ^ phi)|^2 splits orthogonally",
        bound,
    );

    let class = classify(&field, &points, run.tol).map_err(e)?;
    rep.note("classification holds on the sample set, not globally");
    let mut details = serde_json::json!({
        "class": class,
        "max_condition": condition,
        "torsion_bound_gap": gap_max,
    });
    if run.verbose {
        details["points"] = serde_json::to_value(&breakdown).expect("serializable");
    }
    rep.attach(&details);
    Ok(rep)
}

// ----------------------------------------------------------------- curvature

fn cmd_curvature(path: &PathBuf, run: &RunArgs) -> Result<Report, String> {
    validate(run)?;
    let spec: FixtureSpec = read_json(path, "fixture")?;
    let field = spec.build().map_err(|e| e.to_string())?;
    let points = sample_points(run.seed, run.samples);
    let mut rep = Report::new("curvature", run.seed, run.samples, run.tol);
    let e = |err: spin7::Error| err.to_string();

    let mut scalar_metric = 0.0f64;
    let mut scalar_char = 0.0f64;
    let mut probe = 0.0f64;
    let mut ricci_formula = 0.0f64;
    let mut ricci_direct = 0.0f64;
    let mut ricci_antisym = 0.0f64;
    let mut ricci_metric = 0.0f64;
    let mut scal_trace = 0.0f64;
    let mut act_scalar = 0.0f64;
    let mut act_scalar_coclosed = 0.0f64;
    let mut act_direction = 0.0f64;
    let mut laplace = 0.0f64;
    let mut pairing = 0.0f64;
    let mut lee_codiff = 0.0f64;
    let mut lee_flipped = 0.0f64;
    let mut bound = 0.0f64;
    let mut cov_spinor = 0.0f64;
    let mut dirac_lee = 0.0f64;
    for p in &points {
        let jet = structure_jet(&field, p).map_err(e)?;
        let sc = scalar_identity_check(&jet);
        scalar_metric = scalar_metric.max(sc.metric_residual);
        scalar_char = scalar_char.max(sc.torsion_residual);
        probe = probe.max(sc.balanced_probe_residual);
        let rr = connection_ricci(&field, p).map_err(e)?;
        ricci_formula = ricci_formula.max(rr.formula_residual);
        ricci_direct = ricci_direct.max(rr.direct_residual);
        ricci_antisym = ricci_antisym.max(rr.antisymmetry_residual);
        ricci_metric = ricci_metric.max(rr.metric_residual);
        scal_trace = scal_trace.max(rr.scal_residual);
        let sl = sl_identity_check(&jet).map_err(e)?;
        act_scalar = act_scalar.max(sl.first_residual);
        act_scalar_coclosed = act_scalar_coclosed.max(sl.first_coclosed_residual);
        act_direction = act_direction.max(sl.second_residual);
        laplace = laplace.max(sl.laplace_residual);
        pairing = pairing.max(sl.pairing_residual);
        let ga = gauduchon_identity_check(&jet);
        lee_codiff = lee_codiff.max(ga.residual);
        lee_flipped = lee_flipped.max(ga.plus_sign_residual);
        bound = bound.max(torsion_bound_check(&jet).identity_residual);
        let dr = dirac_identities(&field, p).map_err(e)?;
        cov_spinor = cov_spinor.max(dr.parallel_residual);
        dirac_lee = dirac_lee.max(dr.dirac_lee_residual);
    }
    rep.check(
        "scalar-metric",
        "Scal^g = (49/18)|theta|^2 - (1/12)|T|^2 + (7/2) delta(theta)",
        scalar_metric,
    );
    rep.check(
        "scalar-characteristic",
        "Scal = (49/18)|theta|^2 - (1/3)|T|^2 + (7/2) delta(theta)",
        scalar_char,
    );
    rep.check(
        "balanced-probe",
        "with the Lee terms removed, Scal^g = -(1/12)|delta(phi)|^2 in the balanced direction",
        probe,
    );
    rep.check(
        "ricci-formula",
        "Ric(X) = -(1/2) *(i_X dT ^ phi) - *(nabla_X T ^ phi)",
        ricci_formula,
    );
    rep.check(
        "ricci-comparison",
        "Ric^g = Ric + (1/2) delta(T) + (1/4) <i_X T, i_Y T> against the curvature contraction",
        ricci_direct,
    );
    rep.check(
        "ricci-antisymmetry",
        "the antisymmetric part of Ric is -(1/2) delta(T)",
        ricci_antisym,
    );
    rep.check(
        "ricci-reassembly",
        "the metric Ricci tensor reassembles from the 1-form formula and the torsion corrections",
        ricci_metric,
    );
    rep.check(
        "scalar-trace",
        "the trace of the reassembled Ricci tensor matches Scal^g",
        scal_trace,
    );
    rep.check(
        "curvature-action-scalar",
        "(3 dT - 2 sigma + 2 delta(T)) . s + Scal s = 0",
        act_scalar,
    );
    rep.check_with(
        "curvature-action-scalar-coclosed",
        "(3 dT - 2 sigma) . s + Scal s = 0, valid only for coclosed torsion",
        act_scalar_coclosed,
        run.tol,
        false,
    );
    rep.check(
        "curvature-action-direction",
        "(1/2)(i_X dT) . s + (nabla_X T) . s = Ric(X) . s",
        act_direction,
    );
    rep.check(
        "spinor-laplacian",
        "laplacian(s) = -(1/4) delta(T) . s - (1/8) sigma . s + (1/32)|T|^2 s",
        laplace,
    );
    rep.check(
        "scalar-pairing",
        "(Scal^g - (7/2) delta(theta) - (1/4)|T|^2)|s|^2 + 4 <sigma . s, s> = 0",
        pairing,
    );
    rep.check(
        "lee-codifferential",
        "7 delta(theta) = *(d delta(phi) ^ phi) - |d phi|^2",
        lee_codiff,
    );
    rep.check_with(
        "lee-codifferential-flipped",
        "7 delta(theta) = *(d delta(phi) ^ phi) + |d phi|^2, fails off the parallel class",
        lee_flipped,
        run.tol,
        false,
    );
    rep.check(
        "torsion-bound",
        "|T|^2 = (7/6)|theta|^2 + |T + (1/6) *(theta ^ phi)|^2 splits orthogonally",
        bound,
    );
    rep.check(
        "covariant-spinor",
        "nabla^g_X s = -(1/4)(i_X T) . s for the distinguished spinor",
        cov_spinor,
    );
    rep.check(
        "dirac-lee",
        "D^g s = (7/8) theta . s for the distinguished spinor",
        dirac_lee,
    );
    rep.note("non-gating rows document variants that fail by design away from special classes");

    let class = classify(&field, &points, run.tol).map_err(e)?;
    rep.attach(&serde_json::json!({ "class": class }));
    Ok(rep)
}

// ------------------------------------------------------------------- killing

fn cmd_killing(fixture: &PathBuf, dilation: &PathBuf, run: &RunArgs) -> Result<Report, String> {
    validate(run)?;
    let spec: FixtureSpec = read_json(fixture, "fixture")?;
    let field = spec.build().map_err(|e| e.to_string())?;
    let psi: ScalarTrigField = read_json(dilation, "dilation")?;
    if !psi.scale.is_finite() || psi.terms.iter().any(|t| !t.amplitude.is_finite()) {
        return Err("dilation field has non-finite coefficients".into());
    }
    let points = sample_points(run.seed, run.samples);
    let k = killing_check(&field, &psi, &points, run.tol).map_err(|e| e.to_string())?;
    let mut rep = Report::new("killing", run.seed, run.samples, run.tol);
    rep.check(
        "dilation-spinor",
        "(d psi - (1/2) T) . s = 0 for the distinguished spinor",
        k.spinor_residual,
    );
    rep.check(
        "dilation-lee",
        "theta = -(12/7) d psi",
        k.lee_residual,
    );
    rep.check(
        "dilation-torsion",
        "T = -delta(phi) + 2 *(d psi ^ phi)",
        k.torsion_residual,
    );
    rep.check(
        "dilation-scalar",
        "Scal^g = 8|d psi|^2 - (1/12)|T|^2 - 6 laplacian(psi)",
        k.scalar_residual,
    );
    rep.attach(&serde_json::json!({ "accepted": k.accepted }));
    Ok(rep)
}

// -------------------------------------------------------------------- schema

const SCHEMAS: &str = r#"Input and report JSON schemas (schema version 1)

form JSON (decompose input):
  { "degree": 2 | 3 | 4,
    "terms": [ { "indices": [i1 < ... < ik], "coeff": real }, ... ] }
  Omitted terms are zero. Indices run from 0 to 7.

fixture JSON (torsion / curvature / killing input):
  { "kind": "flat" | "conformal" | "perturbed",
    "epsilon": real (optional, default 0.01),
    "seed": integer (optional, default 7; only used by built-in defaults),
    "terms": [ { "axes": [],              for "conformal"
                 "axes": [row, col],      for "perturbed", 0 <= row, col < 8
                 "amplitude": real,
                 "frequency": [up to 8 reals, zero-padded] }, ... ] }
  Empty "terms" selects the built-in default field for the kind.

dilation JSON (killing input):
  { "scale": real,
    "terms": [ { "amplitude": real, "frequency": [8 reals] }, ... ] }

report JSON (all commands output):
  { "schema": 1,
    "command": string,
    "seed": integer,
    "samples": integer,
    "tol": real,
    "pass": bool,
    "checks": [ { "name": string,
                  "identity": string,
                  "max_residual": "3 significant digits",
                  "pass": bool,
                  "gating": bool,
                  "residual_exact": real (only with --verbose) }, ... ],
    "notes": [ string, ... ] (omitted when empty),
    "details": command-specific object (omitted when absent) }

Exit codes: 0 all gating checks pass; 1 at least one gating check failed
(including a rejected dilation pairing); 2 invalid input or usage.
"#;
