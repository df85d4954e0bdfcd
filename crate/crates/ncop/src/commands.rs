//! One function per subcommand. Each returns a report whose residual and
//! failure list decide the exit status.

use std::path::Path;

use ncop_core::classical::{
    gegenbauer_closed, gegenbauer_gamma, gegenbauer_gamma_numeric, gegenbauer_numeric, pochhammer,
    QUADRATURE_MAX_DEGREE,
};
use ncop_core::fock::{
    ct_kernel_from_gamma, ct_params_from_kernel, cuntz_condition, cuntz_isometries,
    matrix_unit_tuples, word_product, GammaParamsCT,
};
use ncop_core::hermitian_jacobi::{favard_roundtrip, free_family, gns_moments, moments_of};
use ncop_core::linalg::Mat;
use ncop_core::ortho_one_var::{
    ortho_determinant, ortho_gram_schmidt, ortho_recurrence, szego_first_limit, szego_ratio_sides,
    szego_strong_limit,
};
use ncop_core::scalar::{defect, re, rel_err, ONE, ZERO};
use ncop_core::schur_params::{
    catalan_count, lattice_expand, moments_from_params, params_from_moments, spectral_factor,
    szego_class_margin, GammaParams1D, MomentKernel1D,
};
use ncop_core::szego_kernels::{
    block_gram, cayley, fock_eval, fock_kernel, fock_szego, h2_eval, module_inner, s_z_array,
    siegel_kernel, szego_sample_blocks, H2Element, OperatorPoint,
};
use ncop_core::words::{enumerate, level, Word};
use ncop_core::C64;
use rand::Rng;
use serde_json::json;

use crate::cli::{Command, Preset, Sample1D, SampleWords};
use crate::formats::{self, InputError, KernelInput};
use crate::random::{self, rng};
use crate::report::{Cell, Report, Table};

/// Why a command stopped before producing a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    /// Malformed input or arguments (exit 2).
    Input(String),
    /// A computation rejected its data (exit 1).
    Invariant(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

type Out<T> = Result<T, Failure>;

trait Checked<T> {
    fn or_fail(self, what: &str) -> Out<T>;
}

impl<T> Checked<T> for ncop_core::Result<T> {
    fn or_fail(self, what: &str) -> Out<T> {
        self.map_err(|e| Failure::Invariant(format!("{what}: {e}")))
    }
}

fn arg(ok: bool, msg: &str) -> Out<()> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Input(msg.to_string()))
    }
}

fn modulus(m: f64) -> Out<()> {
    arg((0.0..1.0).contains(&m), "--max-modulus must lie in [0, 1)")
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Job<'a> {
    pub tol: f64,
    pub seed: u64,
    pub input: Option<&'a Path>,
}

pub fn run(cmd: &Command, job: &Job) -> Out<Report> {
    let mut rep = Report::new(cmd.name(), job.tol);
    rep.set("seed", job.seed);
    rep.set(
        "input",
        job.input
            .map_or(json!(null), |p| json!(p.display().to_string())),
    );
    match cmd {
        Command::Params2moments(s) => params2moments(&mut rep, job, s)?,
        Command::Moments2params(s) => moments2params(&mut rep, job, s)?,
        Command::Orthopoly { sample, l } => orthopoly(&mut rep, job, sample, *l)?,
        Command::Catalan { l } => catalan(&mut rep, job, *l)?,
        Command::SzegoLimits {
            horizon,
            max_modulus,
        } => szego_limits(&mut rep, job, *horizon, *max_modulus)?,
        Command::SpectralFactor(s) => spectral(&mut rep, job, s)?,
        Command::Gegenbauer {
            lambda,
            l,
            max_degree,
        } => gegenbauer(&mut rep, *lambda, *l, *max_degree)?,
        Command::CtKernel(s) => ct_kernel(&mut rep, job, s)?,
        Command::CuntzCheck { sample, emit_u } => cuntz(&mut rep, job, sample, *emit_u)?,
        Command::MatrixUnits {
            word,
            alphabet,
            max_len,
            dim_factor,
        } => matrix_units(&mut rep, word.as_deref(), *alphabet, *max_len, *dim_factor)?,
        Command::Favard {
            preset,
            alphabet,
            depth,
        } => favard(&mut rep, job, *preset, *alphabet, *depth)?,
        Command::SzegoKernel {
            samples,
            dim,
            alphabet,
            max_len,
            horizon,
        } => szego_kernel(&mut rep, job, *samples, *dim, *alphabet, *max_len, *horizon)?,
    }
    Ok(rep)
}

fn sampled_params(job: &Job, s: &Sample1D) -> Out<GammaParams1D> {
    modulus(s.max_modulus)?;
    random::params(&mut rng(job.seed), s.horizon, s.max_modulus).or_fail("sampling")
}

/// Parameters and kernel from either kind of input file, or sampled.
fn kernel_pair(job: &Job, s: &Sample1D) -> Out<(GammaParams1D, MomentKernel1D)> {
    match job.input.map(formats::load_kernel_input).transpose()? {
        Some(KernelInput::Params(p)) => {
            let k = moments_from_params(&p);
            Ok((p, k))
        }
        Some(KernelInput::Moments(k)) => Ok((params_from_moments(&k).or_fail("inverse map")?, k)),
        None => {
            let p = sampled_params(job, s)?;
            let k = moments_from_params(&p);
            Ok((p, k))
        }
    }
}

fn params2moments(rep: &mut Report, job: &Job, s: &Sample1D) -> Out<()> {
    let p = match job.input {
        Some(path) => formats::load_params(path)?,
        None => sampled_params(job, s)?,
    };
    let k = moments_from_params(&p);
    let back = params_from_moments(&k).or_fail("inverse map")?;
    rep.residual(p.max_abs_diff(&back));
    rep.set("horizon", p.horizon());
    let positive = k.is_strictly_positive();
    rep.set("strictly_positive", positive);
    rep.require(positive, || "kernel is not strictly positive".into());
    rep.tables.push(Table::matrix("moments", k.matrix()));
    Ok(())
}

fn params_table(p: &GammaParams1D) -> Table {
    let mut t = Table::new("params", &["k", "j", "value"]);
    let h = p.horizon();
    for k in 0..=h {
        for j in k..=h {
            let v = if k == j { re(p.s(k)) } else { p.gamma(k, j) };
            t.push(vec![k.into(), j.into(), v.into()]);
        }
    }
    t
}

fn moments2params(rep: &mut Report, job: &Job, s: &Sample1D) -> Out<()> {
    let k = match job.input {
        Some(path) => formats::load_moments(path)?,
        None => moments_from_params(&sampled_params(job, s)?),
    };
    let p = params_from_moments(&k).or_fail("inverse map")?;
    let back = moments_from_params(&p);
    let scale = k.matrix().max_abs().max(1.0);
    rep.residual(back.matrix().max_abs_diff(k.matrix()) / scale);
    rep.set("horizon", p.horizon());
    rep.set("szego_margin", szego_class_margin(&p));
    rep.tables.push(params_table(&p));
    Ok(())
}

fn orthopoly(rep: &mut Report, job: &Job, s: &Sample1D, l: usize) -> Out<()> {
    let (p, k) = kernel_pair(job, s)?;
    let h = p.horizon();
    arg(l <= h, "--l exceeds the horizon")?;
    let n_max = h - l;
    let rec = ortho_recurrence(&p, n_max, l).or_fail("recurrence")?;
    let shifted = k.shifted(l).or_fail("shifted kernel")?;
    let gs = ortho_gram_schmidt(&shifted).or_fail("Gram-Schmidt")?;
    let mut t = Table::new(
        "coefficients",
        &["n", "power", "recurrence", "determinant", "gram_schmidt"],
    );
    let mut worst: f64 = 0.0;
    for n in 0..=n_max {
        let det = ortho_determinant(&shifted, n).or_fail("bordered determinant")?;
        let (r, g) = (rec.phi(n, l), gs.phi(n, 0));
        for power in 0..=n {
            worst = worst
                .max((r[power] - det[power]).norm())
                .max((r[power] - g[power]).norm());
            t.push(vec![
                n.into(),
                power.into(),
                r[power].into(),
                det[power].into(),
                g[power].into(),
            ]);
        }
    }
    rep.residual(worst);
    rep.set("horizon", h);
    rep.set("level", l);
    rep.set("max_disagreement", worst);
    rep.tables.push(t);
    Ok(())
}

/// Largest offset accepted by `catalan`; the term count grows like 4^l.
const CATALAN_MAX: usize = 11;

fn catalan(rep: &mut Report, job: &Job, l: usize) -> Out<()> {
    arg((1..=CATALAN_MAX).contains(&l), "--l must lie in 1..=11")?;
    let p = match job.input {
        Some(path) => formats::load_params(path)?,
        None => random::params(&mut rng(job.seed), l + 2, 0.9).or_fail("sampling")?,
    };
    arg(p.horizon() >= l, "parameter horizon is shorter than --l")?;
    let terms = lattice_expand(l);
    let k = moments_from_params(&p);
    let mut worst: f64 = 0.0;
    for start in 0..=(p.horizon() - l) {
        let v: C64 = terms.iter().map(|m| m.eval(&p, start)).sum();
        let scaled = v * (p.s(start) * p.s(start + l)).sqrt();
        worst = worst.max((scaled - k.get(start, start + l)).norm());
    }
    rep.residual(worst);
    let expected = catalan_count(l);
    rep.set("l", l);
    rep.set("count", terms.len());
    rep.set("catalan_number", expected);
    rep.require(terms.len() as u64 == expected, || {
        format!("{} terms, expected {expected}", terms.len())
    });
    let mut t = Table::new("terms", &["index", "term"]);
    for (i, m) in terms.iter().enumerate() {
        t.push(vec![(i + 1).into(), m.render().into()]);
    }
    rep.tables.push(t);
    Ok(())
}

fn szego_limits(rep: &mut Report, job: &Job, horizon: usize, max_modulus: f64) -> Out<()> {
    let p = match job.input.map(formats::load_kernel_input).transpose()? {
        Some(KernelInput::Params(p)) => p,
        Some(KernelInput::Moments(k)) => params_from_moments(&k).or_fail("inverse map")?,
        None => {
            modulus(max_modulus)?;
            arg(horizon >= 1, "--horizon must be positive")?;
            random::szego_params(&mut rng(job.seed), horizon, max_modulus).or_fail("sampling")?
        }
    };
    let h = p.horizon();
    let k = moments_from_params(&p);
    let mut worst: f64 = 0.0;
    let mut ratio = Table::new(
        "ratio",
        &["r", "q", "determinant", "polynomial", "deviation"],
    );
    for q in 1..=h {
        for r in 0..q {
            let s = szego_ratio_sides(&k, r, q).or_fail("ratio identity")?;
            let dev = (s.determinant / s.polynomial - 1.0).abs();
            worst = worst.max(dev);
            ratio.push(vec![
                r.into(),
                q.into(),
                s.determinant.into(),
                s.polynomial.into(),
                dev.into(),
            ]);
        }
    }
    let mut first = Table::new("first_limit", &["r", "value"]);
    for r in 0..=h {
        first.push(vec![
            r.into(),
            szego_first_limit(&p, r).or_fail("first limit")?.into(),
        ]);
    }
    let mut strong = Table::new("strong_limit", &["n", "ratio", "constant", "deviation"]);
    for n in 0..=h {
        let (v, c) = szego_strong_limit(&p, n).or_fail("strong limit")?;
        let dev = (v * c - 1.0).abs();
        worst = worst.max(dev);
        strong.push(vec![n.into(), v.into(), c.into(), dev.into()]);
    }
    rep.residual(worst);
    rep.set("horizon", h);
    rep.set("szego_margin", szego_class_margin(&p));
    rep.tables.extend([ratio, first, strong]);
    Ok(())
}

fn spectral(rep: &mut Report, job: &Job, s: &Sample1D) -> Out<()> {
    let (_, k) = kernel_pair(job, s)?;
    let theta = spectral_factor(&k).or_fail("spectral factor")?;
    let m = theta.matrix();
    let prod = &m.adjoint() * m;
    let scale = k.matrix().max_abs().max(1.0);
    rep.residual(prod.max_abs_diff(k.matrix()) / scale);
    let diag = theta.diagonal();
    let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
    rep.require(m.is_lower_triangular(0.0), || {
        "factor is not lower triangular".into()
    });
    rep.require(min >= 0.0, || format!("negative diagonal entry {min}"));
    rep.set("horizon", k.horizon());
    rep.set("diagonal_min", min);
    rep.tables.push(Table::matrix("factor", m));
    Ok(())
}

fn gegenbauer(rep: &mut Report, lambda: f64, lmax: usize, max_degree: usize) -> Out<()> {
    arg(
        lambda.is_finite() && lambda > -0.5,
        "--lambda must exceed -1/2",
    )?;
    arg(
        2 * (max_degree + lmax) <= QUADRATURE_MAX_DEGREE,
        "--max-degree plus --l exceeds the quadrature range (60)",
    )?;
    let mut t = Table::new(
        "gegenbauer",
        &[
            "l",
            "n",
            "h_closed",
            "h_numeric",
            "k_closed",
            "k_numeric",
            "phi0_closed",
            "phi0_numeric",
            "gamma_closed",
            "gamma_numeric",
        ],
    );
    let mut worst: f64 = 0.0;
    for l in 0..=lmax {
        let scale = pochhammer(lambda + 1.0, l) / pochhammer(0.5, l);
        let lf = l as f64;
        let ll = lambda + lf;
        for degree in 0..=max_degree {
            let closed = gegenbauer_closed(lambda, l, degree).or_fail("closed form")?;
            let (k_num, phi0) = gegenbauer_numeric(lambda, l, degree).or_fail("quadrature")?;
            let n = degree / 2;
            // leading coefficient of the unnormalized modified polynomial
            let lead = if degree % 2 == 0 {
                pochhammer(ll, 2 * n) / (pochhammer(lf + 0.5, n) * pochhammer(1.0, n))
            } else {
                pochhammer(ll, 2 * n + 1) / (pochhammer(lf + 0.5, n + 1) * pochhammer(1.0, n))
            };
            let h_num = (lead / k_num).powi(2) * scale;
            worst = worst
                .max(rel_err(closed.h, h_num))
                .max(rel_err(closed.k_lead, k_num))
                .max(rel_err(closed.phi_at_zero, phi0));
            let (gc, gn): (Cell, Cell) = if degree == 0 {
                (Cell::Empty, Cell::Empty)
            } else {
                let g = gegenbauer_gamma(lambda, l, degree).or_fail("closed form")?;
                let g_num = gegenbauer_gamma_numeric(lambda, l, degree).or_fail("quadrature")?;
                worst = worst.max((g - g_num).norm());
                if degree % 2 == 1 {
                    rep.require(g == ZERO && closed.phi_at_zero == 0.0, || {
                        format!("odd offset {degree} at level {l} is not exactly zero")
                    });
                }
                (g.re.into(), g_num.re.into())
            };
            t.push(vec![
                l.into(),
                degree.into(),
                closed.h.into(),
                h_num.into(),
                closed.k_lead.into(),
                k_num.into(),
                closed.phi_at_zero.into(),
                phi0.into(),
                gc,
                gn,
            ]);
        }
    }
    rep.residual(worst);
    rep.set("lambda", lambda);
    rep.tables.push(t);
    Ok(())
}

fn ct_input(job: &Job, s: &SampleWords) -> Out<GammaParamsCT> {
    arg(s.alphabet >= 1, "--alphabet must be positive")?;
    match job.input {
        Some(path) => Ok(formats::load_ct_params(path, s.alphabet, s.max_len)?),
        None => {
            modulus(s.max_modulus)?;
            random::ct_params(&mut rng(job.seed), s.alphabet, s.max_len, s.max_modulus)
                .or_fail("sampling")
        }
    }
}

fn ct_kernel(rep: &mut Report, job: &Job, s: &SampleWords) -> Out<()> {
    let p = ct_input(job, s)?;
    let k = ct_kernel_from_gamma(&p).or_fail("forward map")?;
    let words = enumerate(p.alphabet(), p.max_len()).or_fail("words")?;
    let min = k
        .dense(&words)
        .or_fail("kernel")?
        .min_hermitian_eigenvalue()
        .or_fail("eigenvalues")?;
    rep.require(min > 0.0, || {
        format!("kernel is not positive definite (min eigenvalue {min:e})")
    });
    let back = ct_params_from_kernel(&k).or_fail("inverse map")?;
    let mut worst = (back.s_empty() - p.s_empty()).abs();
    for w in words.iter().skip(1) {
        worst = worst.max((back.gamma(w) - p.gamma(w)).norm());
    }
    rep.residual(worst);
    rep.set("alphabet", p.alphabet());
    rep.set("max_len", p.max_len());
    rep.set("min_eigenvalue", min);
    let mut t = Table::new("kernel", &["sigma", "tau", "re", "im"]);
    for (a, b, v) in k.entries().or_fail("kernel")? {
        t.push(vec![
            a.to_text().into(),
            b.to_text().into(),
            v.re.into(),
            v.im.into(),
        ]);
    }
    rep.tables.push(t);
    Ok(())
}

fn cuntz(rep: &mut Report, job: &Job, s: &SampleWords, emit_u: bool) -> Out<()> {
    let p = ct_input(job, s)?;
    let t = cuntz_isometries(&p).or_fail("isometries")?;
    let words = enumerate(p.alphabet(), p.max_len()).or_fail("words")?;
    let n = t.interior;
    let mut pairs = Table::new("pairs", &["k", "l", "residual"]);
    let mut worst: f64 = 0.0;
    for (a, ua) in t.u.iter().enumerate() {
        for (b, ub) in t.u.iter().enumerate() {
            let prod = &ua.adjoint() * ub;
            let mut r: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let e = if a == b && i == j { ONE } else { ZERO };
                    r = r.max((prod[(i, j)] - e).norm());
                }
            }
            worst = worst.max(r);
            pairs.push(vec![(a + 1).into(), (b + 1).into(), r.into()]);
        }
    }
    let got = cuntz_condition(&p);
    let direct: f64 = words.iter().skip(1).map(|w| defect(p.gamma(w))).product();
    worst = worst.max((got - direct).abs());
    if words.iter().skip(1).all(|w| p.gamma(w) == ZERO) {
        let mut exact = true;
        for (c, tau) in words.iter().enumerate().take(n) {
            for (k, u) in t.u.iter().enumerate() {
                let target = tau.prepend(k + 1).or_fail("words")?.position();
                exact &=
                    (0..words.len()).all(|r| u[(r, c)] == if r == target { ONE } else { ZERO });
            }
        }
        rep.set("exact_shifts", exact);
        rep.require(exact, || "zero parameters do not give exact shifts".into());
    }
    rep.residual(worst);
    rep.set("alphabet", p.alphabet());
    rep.set("max_len", p.max_len());
    rep.set("interior_columns", n);
    rep.set("partial_product", got);
    // a positive truncated product never decides the limit
    rep.set("regime", "cuntz-toeplitz");
    rep.set("cuntz_relation_certified", false);
    rep.tables.push(pairs);
    if emit_u {
        for (k, u) in t.u.iter().enumerate() {
            rep.tables.push(Table::matrix(&format!("U{}", k + 1), u));
        }
    }
    Ok(())
}

fn matrix_units(
    rep: &mut Report,
    word: Option<&str>,
    alphabet: usize,
    max_len: usize,
    f: usize,
) -> Out<()> {
    arg(alphabet >= 1, "--alphabet must be positive")?;
    arg(f >= 1, "--dim-factor must be positive")?;
    let sigmas = match word {
        Some(w) => {
            let s =
                Word::parse(w, alphabet).map_err(|e| Failure::Input(format!("word {w:?}: {e}")))?;
            arg(!s.is_empty(), "--word must be nonempty")?;
            vec![s]
        }
        None => {
            arg(max_len >= 1, "--max-len must be positive")?;
            enumerate(alphabet, max_len)
                .or_fail("words")?
                .into_iter()
                .skip(1)
                .collect()
        }
    };
    let mut units = Table::new(
        "tuples",
        &[
            "sigma",
            "p",
            "unit_deviation",
            "vanishing_checked",
            "vanishing_max",
        ],
    );
    let mut range = Table::new("range", &["sigma", "min_eigenvalue", "expected"]);
    let mut worst: f64 = 0.0;
    for sigma in sigmas.iter() {
        let k = sigma.len();
        let tuples = matrix_unit_tuples(sigma, f).or_fail("matrix units")?;
        let h2 = 0.5f64.powi(k as i32);
        let h = h2.sqrt();
        let size = 2 * k * f;
        let mut sum = Mat::zeros(size, size);
        for (pi, tuple) in tuples.iter().enumerate() {
            let p = pi + 1;
            let target = if p <= k { p + k } else { p - k };
            let adj = word_product(tuple, sigma).adjoint();
            let expect = Mat::from_fn(size, size, |r, c| {
                let same = r % f == c % f;
                if same && r / f == p - 1 && c / f == target - 1 {
                    re(h)
                } else {
                    ZERO
                }
            });
            let dev = adj.max_abs_diff(&expect);
            sum = &sum + &(&adj * &adj.adjoint());
            let mut checked = 0usize;
            let mut vanish: f64 = 0.0;
            for len in [k, k + 1] {
                for tau in level(alphabet, len).or_fail("words")? {
                    if tau != *sigma {
                        checked += 1;
                        vanish = vanish.max(word_product(tuple, &tau).max_abs());
                    }
                }
            }
            worst = worst.max(dev).max(vanish);
            units.push(vec![
                sigma.to_text().into(),
                p.into(),
                dev.into(),
                checked.into(),
                vanish.into(),
            ]);
        }
        let min = sum.min_hermitian_eigenvalue().or_fail("eigenvalues")?;
        worst = worst.max((min - h2).abs());
        range.push(vec![sigma.to_text().into(), min.into(), h2.into()]);
    }
    rep.residual(worst);
    rep.set("words", sigmas.len());
    rep.set("dim_factor", f);
    rep.tables.extend([units, range]);
    Ok(())
}

/// Largest number of moments `favard` will enumerate.
const FAVARD_MAX_MOMENTS: usize = 1 << 16;

fn favard(
    rep: &mut Report,
    job: &Job,
    preset: Option<Preset>,
    alphabet: usize,
    depth: usize,
) -> Out<()> {
    let j = match (job.input, preset) {
        (Some(path), _) => formats::load_jacobi(path)?,
        (None, preset) => {
            arg(
                alphabet >= 1 && depth >= 1,
                "--alphabet and --depth must be positive",
            )?;
            match preset {
                Some(Preset::Semicircle) => free_family(1, depth, 0.0),
                Some(Preset::Free) => free_family(alphabet, depth, 0.0),
                None => random::jacobi(&mut rng(job.seed), alphabet, depth),
            }
            .or_fail("Jacobi family")?
        }
    };
    let (n, d) = (j.alphabet(), j.depth());
    arg(d >= 1, "the Jacobi family needs at least one level")?;
    arg(
        n.checked_pow(2 * d as u32)
            .is_some_and(|c| c <= FAVARD_MAX_MOMENTS),
        "alphabet and depth give too many moments",
    )?;
    let rt = favard_roundtrip(&j).or_fail("roundtrip")?;
    let m = moments_of(&j).or_fail("moments")?;
    let words = enumerate(n, 2 * d).or_fail("words")?;
    let mut gns_gap: f64 = 0.0;
    let mut t = Table::new("moments", &["word", "value"]);
    let mut seq = Vec::new();
    for w in words.iter() {
        let v = m.get(w).or_fail("moments")?;
        gns_gap = gns_gap.max((gns_moments(&j, w).or_fail("moments")? - v).norm());
        t.push(vec![w.to_text().into(), v.into()]);
        seq.push(v);
    }
    rep.residual(rt.jacobi_error);
    rep.residual(rt.poly_error);
    rep.residual(gns_gap);
    if preset == Some(Preset::Semicircle) && job.input.is_none() {
        // even moments are Catalan numbers, odd ones vanish
        let mut gap: f64 = 0.0;
        let mut cat = 1.0;
        for (i, v) in seq.iter().enumerate() {
            let e = if i % 2 == 0 { cat } else { 0.0 };
            if i % 2 == 0 {
                let h = (i / 2) as f64;
                cat *= 2.0 * (2.0 * h + 1.0) / (h + 2.0);
            }
            gap = gap.max((v - re(e)).norm());
        }
        rep.set("catalan_gap", gap);
        rep.residual(gap);
    }
    rep.set("alphabet", n);
    rep.set("depth", d);
    rep.set("jacobi_error", rt.jacobi_error);
    rep.set("poly_error", rt.poly_error);
    rep.set("gns_gap", gns_gap);
    if n == 1 {
        let row: Vec<_> = seq
            .iter()
            .map(|z| {
                if z.im == 0.0 {
                    json!(z.re)
                } else {
                    json!(crate::complex::format(*z))
                }
            })
            .collect();
        rep.set("moment_sequence", row);
    }
    rep.tables.push(t);
    Ok(())
}

fn szego_kernel(
    rep: &mut Report,
    job: &Job,
    samples: usize,
    dim: usize,
    alphabet: usize,
    max_len: usize,
    horizon: usize,
) -> Out<()> {
    arg(
        samples >= 1 && dim >= 1 && alphabet >= 1,
        "--samples, --dim and --alphabet must be positive",
    )?;
    let mut r = rng(job.seed);
    let mut t = Table::new("checks", &["family", "min_eigenvalue", "reproducing_gap"]);
    let mut push = |rep: &mut Report, name: &str, min: f64, gap: f64| {
        rep.residual(gap);
        rep.residual((-min).max(0.0));
        t.push(vec![name.into(), min.into(), gap.into()]);
    };

    let pts = (0..samples)
        .map(|_| random::sequence(&mut r, horizon, 0.95))
        .collect::<ncop_core::Result<Vec<_>>>()
        .or_fail("sampling")?;
    let mut min = f64::INFINITY;
    for block in szego_sample_blocks(&pts).or_fail("kernel")? {
        min = min.min(block.min_hermitian_eigenvalue().or_fail("eigenvalues")?);
    }
    let mut gap: f64 = 0.0;
    for z in pts.iter() {
        let theta = H2Element::new(Mat::from_fn(horizon + 1, horizon + 1, |i, j| {
            if i >= j {
                random::square(&mut r, 1.0)
            } else {
                ZERO
            }
        }))
        .or_fail("sampling")?;
        let a = h2_eval(&theta, z).or_fail("evaluation")?;
        let b = module_inner(&theta, &s_z_array(z)).or_fail("inner product")?;
        gap = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(gap, f64::max);
    }
    push(rep, "sequence", min, gap);

    let ops = (0..samples)
        .map(|_| {
            let t = r.gen_range(0.05..0.95);
            random::ball_point(&mut r, alphabet, dim, t)
        })
        .collect::<ncop_core::Result<Vec<OperatorPoint>>>()
        .or_fail("sampling")?;
    let g = block_gram(&ops, |a, b| fock_kernel(a, b, max_len)).or_fail("kernel")?;
    let min = g.min_hermitian_eigenvalue().or_fail("eigenvalues")?;
    let rows = enumerate(alphabet, max_len).or_fail("words")?.len() * dim;
    let mut gap: f64 = 0.0;
    for z in ops.iter() {
        let theta = Mat::from_fn(rows, dim, |_, _| random::square(&mut r, 1.0));
        let a = fock_eval(&theta, z, max_len).or_fail("evaluation")?;
        let b = &fock_szego(z, max_len).or_fail("kernel")?.adjoint() * &theta;
        gap = gap.max(a.max_abs_diff(&b));
    }
    push(rep, "fock", min, gap);

    let siegel = ops
        .iter()
        .map(cayley)
        .collect::<ncop_core::Result<Vec<_>>>()
        .or_fail("Cayley transform")?;
    let g = block_gram(&siegel, |a, b| siegel_kernel(a, b, max_len)).or_fail("kernel")?;
    let min = g.min_hermitian_eigenvalue().or_fail("eigenvalues")?;
    push(rep, "siegel", min, 0.0);

    rep.set("samples", samples);
    rep.tables.push(t);
    Ok(())
}
