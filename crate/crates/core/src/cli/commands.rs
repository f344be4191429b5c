use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use super::report::{exit, RunReport};
use super::{Cli, Command};
use crate::dualcone::{dual_membership, DualCertificate, CERT_PSD_TOL};
use crate::error::{Error, Result};
use crate::factorwidth::{fw_membership, search_certificate, MembershipStatus, MembershipVerdict, SolverOptions};
use crate::families::{pna_gram, pna_threshold, pna_witness_decomposition};
use crate::polyforms::{
    default_gram, multiplier_gram, multiply_weighted_power, quadratic_gram, read_poly, soks_test, ExponentTuple,
    MonomialBasis, QuadraticForm,
};
use crate::symcore::io::{format_rational, matrix_from_value, parse_rational, read_matrix, LoadedMatrix};
use crate::symcore::{eigen_sym, int, is_psd, Rational, Support, SymMatrix, DEFAULT_PSD_TOL};

pub(super) fn dispatch(cli: &Cli) -> Result<RunReport> {
    let threads = cli.global.threads;
    match &cli.command {
        Command::CheckFw { matrix, k, supports, tol, max_iter } => {
            check_fw(matrix, *k, supports.as_deref(), *tol, *max_iter, threads)
        }
        Command::CheckDual { matrix, k, tol } => check_dual(matrix, *k, *tol),
        Command::Soks { poly, k, gram, r, lambda, multiplier_gram, supports, max_iter } => {
            let opts = SolverOptions { max_iter: *max_iter, threads, ..SolverOptions::default() };
            soks(poly, *k, gram.as_deref(), *r, lambda.as_deref(), *multiplier_gram, supports.as_deref(), &opts)
        }
        Command::Pna { n, k, a } => pna(*n, *k, a.as_deref(), threads),
        Command::Certify { matrix, k } => certify(matrix, *k, threads),
        Command::Eig { matrix } => eig(matrix),
    }
}

fn beside(input: &Path, suffix: &str) -> PathBuf {
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    input.with_file_name(format!("{stem}.{suffix}.json"))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Malformed(format!("k = {k} must lie in 1..={n}")));
    }
    Ok(())
}

fn read_supports(path: &Path, n: usize) -> Result<Vec<Support>> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    supports_from_value(value, n)
}

fn supports_from_value(value: Value, n: usize) -> Result<Vec<Support>> {
    let lists: Vec<Vec<usize>> =
        serde_json::from_value(value).map_err(|e| Error::Malformed(format!("supports: {e}")))?;
    lists.into_iter().map(|s| Support::new(s, n).map_err(|e| Error::Malformed(e.to_string()))).collect()
}

struct GramFile {
    gram: SymMatrix<Rational>,
    basis: Option<MonomialBasis>,
    supports: Option<Vec<Support>>,
}

/// Status, values and artifacts shared by the commands that run `fw_membership`.
fn membership_report(command: &str, v: &MembershipVerdict, input: &Path, k: usize) -> Result<RunReport> {
    let code = match v.status {
        MembershipStatus::Member => exit::POSITIVE,
        MembershipStatus::NonMember => exit::NEGATIVE,
        MembershipStatus::Inconclusive => exit::INCONCLUSIVE,
    };
    let mut report = RunReport::new(command, v.status.as_str(), code);
    report
        .set("k", k)
        .set("iterations", v.diagnostics.iterations)
        .set("primal_residual", v.diagnostics.primal_residual)
        .set("best_residual", v.diagnostics.best_residual);
    if let Some(d) = &v.decomposition {
        let path = beside(input, &format!("decomposition.k{k}"));
        write_json(&path, &d.to_json())?;
        report.set("blocks", d.blocks().len());
        report.artifacts.push(path);
    }
    if let Some(c) = &v.certificate {
        add_certificate(&mut report, c, input, v.diagnostics.certificate_source.as_deref())?;
    }
    Ok(report)
}

fn add_certificate(report: &mut RunReport, c: &DualCertificate, input: &Path, source: Option<&str>) -> Result<()> {
    let path = beside(input, &format!("certificate.k{}", c.k));
    write_json(&path, &c.to_json())?;
    report
        .set("certificate_value", c.value)
        .set("normalized_value", c.normalized_value())
        .set("worst_minor_margin", c.worst_minor_margin)
        .set("certificate_source", source);
    report.artifacts.push(path);
    Ok(())
}

fn check_fw(
    path: &Path,
    k: usize,
    supports: Option<&Path>,
    tol: f64,
    max_iter: usize,
    threads: usize,
) -> Result<RunReport> {
    let a = read_matrix(path)?.to_f64();
    check_k(k, a.n())?;
    let mut opts = SolverOptions { feas_tol: tol, max_iter, threads, ..SolverOptions::default() };
    opts.validate().map_err(|e| Error::Malformed(e.to_string()))?;
    if let Some(s) = supports {
        opts.support_list = Some(read_supports(s, a.n())?);
    }
    let v = fw_membership(&a, k, &opts)?;
    let mut report = membership_report("check-fw", &v, path, k)?;
    report.set("n", a.n());
    Ok(report)
}

fn check_dual(path: &Path, k: usize, tol: f64) -> Result<RunReport> {
    let loaded = read_matrix(path)?;
    check_k(k, loaded.n())?;
    let (rep, exact) = match &loaded {
        LoadedMatrix::Exact(m) if tol == 0.0 => (dual_membership(m, k, 0.0)?, true),
        other => (dual_membership(&other.to_f64(), k, if tol == 0.0 { CERT_PSD_TOL } else { tol })?, false),
    };
    let (verdict, code) = if rep.is_member { ("member", exit::POSITIVE) } else { ("non_member", exit::NEGATIVE) };
    let mut report = RunReport::new("check-dual", verdict, code);
    report
        .set("n", loaded.n())
        .set("k", k)
        .set("exact", exact)
        .set("worst_support", &rep.worst_support)
        .set("worst_margin", rep.worst_margin)
        .set("supports_checked", rep.supports_checked)
        .set("tolerance_used", rep.tolerance_used);
    Ok(report)
}

fn read_gram(path: &Path, n: usize, half_degree: u32) -> Result<GramFile> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let gram = match matrix_from_value(&value)? {
        LoadedMatrix::Exact(m) => m,
        LoadedMatrix::Float(_) => {
            return Err(Error::Malformed("Gram entries must be integers or rational strings".into()))
        }
    };
    let basis = match value.get("basis") {
        None => None,
        Some(b) => {
            let tuples: Vec<Vec<u32>> =
                serde_json::from_value(b.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
            let tuples = tuples.into_iter().map(ExponentTuple).collect();
            Some(MonomialBasis::from_tuples(n, half_degree, tuples).map_err(|e| Error::Malformed(e.to_string()))?)
        }
    };
    let supports = match value.get("supports") {
        None => None,
        Some(v) => Some(supports_from_value(v.clone(), gram.n())?),
    };
    Ok(GramFile { gram, basis, supports })
}

fn soks(
    path: &Path,
    k: usize,
    gram_path: Option<&Path>,
    r: u32,
    lambda: Option<&[String]>,
    use_multiplier_gram: bool,
    supports: Option<&Path>,
    opts: &SolverOptions,
) -> Result<RunReport> {
    let mut opts = opts.clone();
    let q = read_poly(path)?;
    let n = q.n();
    let lambda: Vec<Rational> = match lambda {
        Some(list) => list
            .iter()
            .map(|s| parse_rational(s).map_err(|e| Error::Malformed(e.to_string())))
            .collect::<Result<_>>()?,
        None => vec![int(1); n],
    };
    if lambda.len() != n {
        return Err(Error::Malformed(format!("{} multiplier weights for {n} variables", lambda.len())));
    }
    let quadratic = if r > 0 || use_multiplier_gram {
        if q.degree() != 2 {
            return Err(Error::Malformed(format!("multipliers apply to quadratics, got degree {}", q.degree())));
        }
        Some(QuadraticForm::new(quadratic_gram(&q)?))
    } else {
        None
    };
    let p = match &quadratic {
        Some(form) if r > 0 => multiply_weighted_power(form, &lambda, r)?,
        _ => q.clone(),
    };
    if p.degree() % 2 != 0 {
        return Err(Error::Malformed(format!("odd degree {}", p.degree())));
    }
    let half = p.degree() / 2;
    check_k(k, crate::polyforms::basis_len(n, half))?;
    let (gram, basis, source) = match gram_path {
        Some(g) => {
            let file = read_gram(g, n, half)?;
            opts.support_list = file.supports;
            (file.gram, file.basis, "file")
        }
        None if p.degree() == 2 => (quadratic_gram(&p)?, None, "unique"),
        None if use_multiplier_gram => {
            let form = quadratic.as_ref().expect("quadratic checked above");
            (multiplier_gram(form, &lambda, r)?, None, "multiplier")
        }
        None => (default_gram(&p, &MonomialBasis::new(n, half)?)?, None, "default"),
    };
    if let Some(s) = supports {
        opts.support_list = Some(read_supports(s, gram.n())?);
    }
    if let Some(list) = &opts.support_list {
        if list.iter().any(|s| s.len() != k) {
            return Err(Error::Malformed(format!("supports must have {k} indices")));
        }
    }
    let v = soks_test(&p, k, &gram, basis.as_ref(), &opts)?;
    let mut report = membership_report("soks", &v.verdict, path, k)?;
    report
        .set("n", n)
        .set("degree", p.degree())
        .set("r", r)
        .set("gram_source", source)
        .set("gram_size", gram.n())
        .set("gram_conditional", v.gram_conditional)
        .set("supports", opts.support_list.as_ref().map(|l| l.len()));
    Ok(report)
}

fn pna(n: usize, k: usize, a: Option<&str>, threads: usize) -> Result<RunReport> {
    let threshold = pna_threshold(n, k).map_err(|e| Error::Malformed(e.to_string()))?;
    let Some(a) = a else {
        let mut report = RunReport::new("pna", "found", exit::POSITIVE);
        report
            .set("n", n)
            .set("k", k)
            .set("threshold", format_rational(&threshold))
            .set("threshold_f64", threshold.to_f64());
        return Ok(report);
    };
    let a = parse_rational(a).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut report = if a >= threshold {
        let d = pna_witness_decomposition(n, k, &a)?;
        let mut report = RunReport::new("pna", "member", exit::POSITIVE);
        report.set("blocks", d.blocks().len()).set("witness", "uniform").set("primal_residual", d.residual());
        report
    } else {
        let opts = SolverOptions { threads, ..SolverOptions::default() };
        let gram = pna_gram(n, a.to_f64().unwrap_or(f64::NAN));
        let v = fw_membership(&gram, k, &opts)?;
        let code = match v.status {
            MembershipStatus::Member => exit::POSITIVE,
            MembershipStatus::NonMember => exit::NEGATIVE,
            MembershipStatus::Inconclusive => exit::INCONCLUSIVE,
        };
        let mut report = RunReport::new("pna", v.status.as_str(), code);
        if let Some(c) = &v.certificate {
            report
                .set("certificate_value", c.value)
                .set("normalized_value", c.normalized_value())
                .set("certificate_source", &v.diagnostics.certificate_source);
        }
        report.set("primal_residual", v.diagnostics.primal_residual);
        report
    };
    report
        .set("n", n)
        .set("k", k)
        .set("a", format_rational(&a))
        .set("threshold", format_rational(&threshold))
        .set("threshold_f64", threshold.to_f64());
    Ok(report)
}

fn certify(path: &Path, k: usize, threads: usize) -> Result<RunReport> {
    let a = read_matrix(path)?.to_f64();
    check_k(k, a.n())?;
    let found = match search_certificate(&a, k)? {
        Some((source, c)) => Some((source.to_string(), c)),
        None => {
            let v = fw_membership(&a, k, &SolverOptions { threads, ..SolverOptions::default() })?;
            v.certificate.map(|c| (v.diagnostics.certificate_source.unwrap_or_default(), c))
        }
    };
    let mut report = match found {
        Some((source, c)) => {
            let mut report = RunReport::new("certify", "found", exit::POSITIVE);
            add_certificate(&mut report, &c, path, Some(&source))?;
            report
        }
        None => RunReport::new("certify", "none", exit::NEGATIVE),
    };
    report.set("n", a.n()).set("k", k);
    Ok(report)
}

fn eig(path: &Path) -> Result<RunReport> {
    let loaded = read_matrix(path)?;
    let e = eigen_sym(&loaded.to_f64())?;
    let psd = match &loaded {
        LoadedMatrix::Exact(m) => is_psd(m, 0.0),
        LoadedMatrix::Float(m) => is_psd(m, DEFAULT_PSD_TOL),
    };
    let (verdict, code) = if psd.is_psd { ("psd", exit::POSITIVE) } else { ("not_psd", exit::NEGATIVE) };
    let mut report = RunReport::new("eig", verdict, code);
    report
        .set("n", loaded.n())
        .set("eigenvalues", &e.values)
        .set("min_eigenvalue", e.min_value())
        .set("exact_psd_test", matches!(loaded, LoadedMatrix::Exact(_)));
    Ok(report)
}
