//! Complex zeros of Jones polynomials and family portraits.

use crate::conway::ParamBinding;
use crate::families::{Catalog, FamilyError};
use crate::jones::{normalized_jones, JonesError};
use crate::poly::LaurentPoly1;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::io;
use std::ops::RangeInclusive;

pub const MAX_ITERATIONS: usize = 200;
/// Acceptance bound on [`ZeroSet::residuals`].
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ZeroError {
    #[error("the zero polynomial has no roots to find")]
    ZeroPolynomial,
    #[error("no convergence after {iterations} iterations (worst residual {worst:e})")]
    NoConvergence { iterations: usize, worst: f64 },
}

impl From<JonesError> for ZeroError {
    fn from(_: JonesError) -> Self {
        ZeroError::ZeroPolynomial
    }
}

/// Roots of a normalized Jones polynomial with their residuals.
///
/// The residual of `z` is the backward error `|p(z)| / Σ|a_i||z|^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub degree: usize,
}

impl ZeroSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// All roots of `j` after normalization, so `x = 0` never appears.
///
/// ```
/// use knotfam::{zeros::roots, LaurentPoly1};
/// let z = roots(&"x^2 + 1".parse::<LaurentPoly1>().unwrap()).unwrap();
/// assert_eq!(z.degree, 2);
/// assert!(z.roots.iter().all(|r| (r.norm() - 1.0).abs() < 1e-12 && r.re.abs() < 1e-12));
/// ```
pub fn roots(j: &LaurentPoly1) -> Result<ZeroSet, ZeroError> {
    let n = normalize_for_roots(j)?;
    let coeffs = float_coeffs(&n);
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(ZeroSet { roots: vec![], residuals: vec![], degree });
    }
    let mut z = aberth(&coeffs);
    symmetrize(&mut z);
    for r in z.iter_mut() {
        let polished = newton_step(&coeffs, *r);
        if backward_error(&coeffs, polished) < backward_error(&coeffs, *r) {
            *r = polished;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let residuals: Vec<f64> = z.iter().map(|&r| backward_error(&coeffs, r)).collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if worst.is_nan() || worst >= RESIDUAL_TOL {
        return Err(ZeroError::NoConvergence { iterations: MAX_ITERATIONS, worst });
    }
    Ok(ZeroSet { roots: z, residuals, degree })
}

fn normalize_for_roots(j: &LaurentPoly1) -> Result<LaurentPoly1, ZeroError> {
    Ok(crate::jones::normalize(j)?.poly)
}

/// `Σ|z_i|`.
pub fn zero_sum(z: &ZeroSet) -> f64 {
    z.roots.iter().map(|r| r.norm()).sum()
}

/// Coefficients `a_0..a_n` as doubles, divided by the largest magnitude when that exceeds 2^53.
fn float_coeffs(p: &LaurentPoly1) -> Vec<f64> {
    let dense = p.dense_coeffs().expect("normalized polynomials have no negative exponents");
    let big = p.max_abs_coeff();
    let scale = if big > 2f64.powi(53) { big } else { 1.0 };
    dense.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY) / scale).collect()
}

fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn backward_error(a: &[f64], z: Complex64) -> f64 {
    let (p, _) = horner(a, z);
    let r = z.norm();
    let scale = a.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    p.norm() / scale
}

fn newton_step(a: &[f64], z: Complex64) -> Complex64 {
    let (p, dp) = horner(a, z);
    if dp.norm() == 0.0 {
        z
    } else {
        z - p / dp
    }
}

/// Upper bound on root moduli: twice the largest `|a_i/a_n|^(1/(n-i))`.
fn root_radius(a: &[f64]) -> f64 {
    let n = a.len() - 1;
    let lead = a[n].abs();
    let r = (0..n).map(|i| (a[i].abs() / lead).powf(1.0 / (n - i) as f64)).fold(0.0, f64::max);
    if r > 0.0 {
        2.0 * r
    } else {
        1.0
    }
}

fn aberth(a: &[f64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    let radius = root_radius(a);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4)).collect();
    for _ in 0..MAX_ITERATIONS {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(a, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repel: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repel);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Pairs each non-real root with the nearest conjugate and averages the pair, so the set is
/// exactly closed under conjugation. Roots closer to the real axis than to any partner become real.
fn symmetrize(z: &mut [Complex64]) {
    let n = z.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner = (0..n)
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (z[a] - z[i].conj()).norm().total_cmp(&(z[b] - z[i].conj()).norm()));
        let self_gap = 2.0 * z[i].im.abs();
        match partner {
            Some(j) if (z[j] - z[i].conj()).norm() < self_gap => {
                used[j] = true;
                let m = (z[i] + z[j].conj()) / 2.0;
                z[i] = m;
                z[j] = m.conj();
            }
            _ => z[i].im = 0.0,
        }
    }
}

/// One family member's zeros.
#[derive(Debug, Clone)]
pub struct Member {
    pub params: Vec<i64>,
    pub zeros: ZeroSet,
}

/// Zeros of every member of a parameter sweep.
#[derive(Debug, Clone)]
pub struct Portrait {
    pub family_id: String,
    pub ranges: Vec<(String, RangeInclusive<i64>)>,
    pub step: i64,
    /// Sorted by parameter tuple.
    pub members: Vec<Member>,
    /// Tuples that failed, with the reason.
    pub skipped: Vec<(Vec<i64>, String)>,
}

impl Portrait {
    pub fn point_count(&self) -> usize {
        self.members.iter().map(|m| m.zeros.roots.len()).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = (&[i64], Complex64)> {
        self.members.iter().flat_map(|m| m.zeros.roots.iter().map(move |&r| (m.params.as_slice(), r)))
    }

    fn param_label(&self, params: &[i64]) -> String {
        self.ranges.iter().zip(params).map(|((n, _), v)| format!("{n}={v}")).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PortraitError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{0}")]
    Range(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Sweeps `ranges` (one per family parameter, in any order) with the given step and finds the
/// zeros of each member's normalized Jones polynomial. Failing members are recorded, not fatal.
pub fn portrait(
    cat: &Catalog,
    family_id: &str,
    ranges: &[(String, RangeInclusive<i64>)],
    step: i64,
    threads: Option<usize>,
) -> Result<Portrait, PortraitError> {
    let entry = cat.get(family_id)?;
    if step < 1 {
        return Err(PortraitError::Range(format!("step must be at least 1, got {step}")));
    }
    let mut ordered = Vec::new();
    for p in &entry.params {
        let r = ranges
            .iter()
            .find(|(n, _)| n == p)
            .ok_or_else(|| PortraitError::Range(format!("no range for parameter {p}")))?;
        if r.1.is_empty() || r.1.clone().any(|v| v.abs() < 2) {
            return Err(PortraitError::Range(format!("range for {p} must be non-empty with |value| >= 2")));
        }
        ordered.push(r.clone());
    }
    if let Some((n, _)) = ranges.iter().find(|(n, _)| !entry.params.contains(n)) {
        return Err(PortraitError::Range(format!("{family_id:?} has no parameter {n}")));
    }
    let mut tuples: Vec<Vec<i64>> = vec![vec![]];
    for (_, r) in &ordered {
        let values: Vec<i64> = r.clone().step_by(step as usize).collect();
        tuples = tuples.into_iter().flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect();
    }
    let work = |t: &Vec<i64>| -> Result<Member, String> {
        let b: ParamBinding = entry.params.iter().cloned().zip(t.iter().copied()).collect();
        let tutte = cat.eval(family_id, &b).map_err(|e| e.to_string())?;
        let j = normalized_jones(&tutte).map_err(|e| e.to_string())?;
        let zeros = roots(&j.poly).map_err(|e| e.to_string())?;
        Ok(Member { params: t.clone(), zeros })
    };
    let results: Vec<Result<Member, String>> = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| PortraitError::Pool(e.to_string()))?
            .install(|| tuples.par_iter().map(work).collect()),
        None => tuples.par_iter().map(work).collect(),
    };
    let mut members = Vec::new();
    let mut skipped = Vec::new();
    for (t, r) in tuples.iter().zip(results) {
        match r {
            Ok(m) => members.push(m),
            Err(e) => skipped.push((t.clone(), e)),
        }
    }
    Ok(Portrait { family_id: family_id.to_string(), ranges: ordered, step, members, skipped })
}

/// CSV with header `family,params,re,im`, one root per row in member order.
pub fn write_csv<W: io::Write>(p: &Portrait, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "params", "re", "im"])?;
    for m in &p.members {
        let label = p.param_label(&m.params);
        for r in &m.zeros.roots {
            w.write_record([p.family_id.as_str(), label.as_str(), &r.re.to_string(), &r.im.to_string()])?;
        }
    }
    w.flush()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Width and height in pixels.
    pub size: u32,
    /// The plot shows `[-extent, extent]` on both axes.
    pub extent: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { size: 600, extent: 3.0 }
    }
}

/// Static scatter plot of all points with axes and the unit circle.
pub fn render_svg(p: &Portrait, opts: SvgOptions) -> String {
    let s = opts.size as f64;
    let half = s / 2.0;
    let k = half / opts.extent;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    let _ = writeln!(out, r#"<rect width="{0}" height="{0}" fill="white"/>"#, opts.size);
    let _ = writeln!(
        out,
        r##"<g stroke="#999" stroke-width="1"><line x1="0" y1="{half}" x2="{s}" y2="{half}"/><line x1="{half}" y1="0" x2="{half}" y2="{s}"/></g>"##
    );
    let _ = writeln!(out, r##"<circle cx="{half}" cy="{half}" r="{k}" fill="none" stroke="#c33" stroke-width="1"/>"##);
    let _ = writeln!(out, r##"<g fill="#124">"##);
    for (_, z) in p.points() {
        if z.re.abs() > opts.extent || z.im.abs() > opts.extent {
            continue;
        }
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="1.2"/>"#, half + z.re * k, half - z.im * k);
    }
    let _ = writeln!(out, "</g>");
    let _ =
        writeln!(out, r#"<text x="8" y="18" font-family="sans-serif" font-size="13">{}</text>"#, escape(&p.family_id));
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(s: &str) -> LaurentPoly1 {
        s.parse().unwrap()
    }

    #[test]
    fn cyclotomic_ten() {
        let z = roots(&p1("x^4 - x^3 + x^2 - x + 1")).unwrap();
        for r in &z.roots {
            assert!((r.powu(10) - 1.0).norm() < 1e-12);
            assert!((r.powu(5) + 1.0).norm() < 1e-12);
        }
        assert!((zero_sum(&z) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn laurent_input_is_normalized() {
        let z = roots(&p1("-x - x^-1")).unwrap();
        assert_eq!(z.degree, 2);
        assert!((zero_sum(&z) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn constants_have_no_roots() {
        assert!(roots(&p1("7")).unwrap().roots.is_empty());
        assert_eq!(roots(&LaurentPoly1::zero()), Err(ZeroError::ZeroPolynomial));
    }

    #[test]
    fn repeated_roots_stay_within_tolerance() {
        let z = roots(&p1("1 + 4x + 6x^2 + 4x^3 + x^4")).unwrap();
        assert!(z.roots.iter().all(|r| (r + 1.0).norm() < 1e-3));
        assert!(z.max_residual() < RESIDUAL_TOL);
    }

    #[test]
    fn symmetrize_pairs_conjugates() {
        let mut z = vec![Complex64::new(1.0, 1e-3), Complex64::new(0.0, 2.0), Complex64::new(2e-9, -2.0)];
        symmetrize(&mut z);
        assert_eq!(z[0].im, 0.0);
        assert_eq!(z[1], z[2].conj());
    }
}
