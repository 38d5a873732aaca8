//! The sphere self-map behind the gluing of `ᵇTSⁿ`.
//!
//! Along the equator the b-tangent bundle of `Sⁿ` is glued to the tangent
//! bundle by `q ↦ I − 2qqᵀ`. Acting on the north pole `p_n` gives the map
//! `μf(q) = p_n − 2⟨q, p_n⟩q` of `S^{n−1}`, whose degree `1 − (−1)^{n−1}`
//! decides whether the gluing extends. This module evaluates the map and its
//! differential, computes the degree from preimage signs and by Monte Carlo
//! integration of the Jacobian, and checks explicit homotopies.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest ambient dimension supported by the degree computations.
pub const MAX_DIM: usize = 8;
pub const UNIT_TOLERANCE: f64 = 1e-12;
pub const TANGENT_TOLERANCE: f64 = 1e-10;
/// Monte Carlo samples per independently seeded stream.
const CHUNK: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphereError {
    #[error("vector has norm {0}, expected 1 within 1e-12")]
    NonUnitInput(f64),
    #[error("vector is not tangent: <q, v> = {0}")]
    NonTangentInput(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ambient dimension {0} is outside the supported range")]
    UnsupportedDimension(usize),
    #[error("height {0} is outside [-1, 1]")]
    OutOfRange(f64),
    #[error("μf has degree 2 in even dimension {0}; it is not null-homotopic")]
    EvenDimension(usize),
    #[error("{what} must be at least {min}, got {got}")]
    TooFew { what: &'static str, min: usize, got: usize },
}

/// A unit vector of ℝⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, SphereError> {
        let norm = norm(&coords);
        if coords.is_empty() || (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(SphereError::NonUnitInput(norm));
        }
        Ok(Self(coords))
    }

    /// Scales a nonzero vector onto the sphere.
    pub fn normalize(mut coords: Vec<f64>) -> Result<Self, SphereError> {
        let n = norm(&coords);
        if !(n > 0.0 && n.is_finite()) {
            return Err(SphereError::NonUnitInput(n));
        }
        coords.iter_mut().for_each(|c| *c /= n);
        Ok(Self(coords))
    }

    /// `p_n = (0, …, 0, 1)`.
    pub fn north_pole(n: usize) -> Self {
        let mut c = vec![0.0; n];
        c[n - 1] = 1.0;
        Self(c)
    }

    pub fn south_pole(n: usize) -> Self {
        let mut c = vec![0.0; n];
        c[n - 1] = -1.0;
        Self(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Last coordinate, `⟨q, p_n⟩`.
    pub fn height(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Householder reflection `I − 2qqᵀ` across the hyperplane orthogonal to `q`.
pub fn reflection(q: &SpherePoint) -> DMatrix<f64> {
    let v = DVector::from_column_slice(q.coords());
    DMatrix::identity(q.dim(), q.dim()) - 2.0 * &v * v.transpose()
}

fn mu_f_raw(q: &[f64]) -> Vec<f64> {
    let n = q.len();
    let h = q[n - 1];
    let mut out: Vec<f64> = q.iter().map(|c| -2.0 * h * c).collect();
    out[n - 1] += 1.0;
    out
}

/// `μf(q) = p_n − 2⟨q, p_n⟩q`, the reflection through `q⊥` applied to the north pole.
pub fn mu_f(q: &SpherePoint) -> SpherePoint {
    SpherePoint(mu_f_raw(q.coords()))
}

fn d_mu_f_raw(q: &[f64], v: &[f64]) -> Vec<f64> {
    let n = q.len();
    let (qh, vh) = (q[n - 1], v[n - 1]);
    q.iter().zip(v).map(|(qi, vi)| -2.0 * vh * qi - 2.0 * qh * vi).collect()
}

/// Differential of `μf` at `q` applied to the tangent vector `v`:
/// `−2⟨v, p_n⟩q − 2⟨q, p_n⟩v`.
pub fn d_mu_f(q: &SpherePoint, v: &[f64]) -> Result<Vec<f64>, SphereError> {
    if v.len() != q.dim() {
        return Err(SphereError::DimensionMismatch {
            expected: q.dim(),
            got: v.len(),
        });
    }
    let ip = dot(q.coords(), v);
    if ip.abs() > TANGENT_TOLERANCE {
        return Err(SphereError::NonTangentInput(ip));
    }
    Ok(d_mu_f_raw(q.coords(), v))
}

type Mat = [[f64; MAX_DIM]; MAX_DIM];

/// Determinant of the leading `n × n` block by partial-pivot elimination.
fn det(mut a: Mat, n: usize) -> f64 {
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            let pivot = a[c];
            for (x, p) in a[r][c..n].iter_mut().zip(&pivot[c..n]) {
                *x -= f * p;
            }
        }
    }
    d
}

/// Orthonormal tangent frame at `q` with `det[q | v₁ | … | v_{n−1}] > 0`.
///
/// Gram–Schmidt runs over `q` followed by the standard basis minus the vector
/// most aligned with `q`. Rows of the returned array are `q, v₁, …`.
fn oriented_frame(q: &[f64]) -> Mat {
    let n = q.len();
    let drop = (0..n)
        .max_by(|&i, &j| q[i].abs().total_cmp(&q[j].abs()))
        .unwrap();
    let mut m: Mat = [[0.0; MAX_DIM]; MAX_DIM];
    m[0][..n].copy_from_slice(q);
    for (i, e) in (0..n).filter(|&e| e != drop).enumerate() {
        let row = i + 1;
        let mut w = [0.0; MAX_DIM];
        w[e] = 1.0;
        for prev in m.iter().take(row) {
            let c = dot(&prev[..n], &w[..n]);
            for (x, p) in w[..n].iter_mut().zip(&prev[..n]) {
                *x -= c * p;
            }
        }
        let len = norm(&w[..n]);
        for (x, y) in m[row][..n].iter_mut().zip(&w[..n]) {
            *x = y / len;
        }
    }
    if det(m, n) < 0.0 {
        for x in &mut m[n - 1][..n] {
            *x = -*x;
        }
    }
    m
}

/// Tangent frame at `q` in the orientation induced by the outward normal.
pub fn tangent_frame(q: &SpherePoint) -> Vec<Vec<f64>> {
    let n = q.dim();
    oriented_frame(q.coords())[1..n].iter().map(|r| r[..n].to_vec()).collect()
}

/// Oriented Jacobian of `μf` at `q`: `det[μf(q) | dμf v₁ | … | dμf v_{n−1}]`
/// for a positive frame at `q`. Its sign is the local degree.
fn jacobian(q: &[f64]) -> f64 {
    let n = q.len();
    let frame = oriented_frame(q);
    let mut m: Mat = [[0.0; MAX_DIM]; MAX_DIM];
    m[0][..n].copy_from_slice(&mu_f_raw(q));
    for i in 1..n {
        m[i][..n].copy_from_slice(&d_mu_f_raw(q, &frame[i][..n]));
    }
    // Rows instead of columns: same determinant.
    det(m, n)
}

pub fn jacobian_at(q: &SpherePoint) -> Result<f64, SphereError> {
    check_dim(q.dim())?;
    Ok(jacobian(q.coords()))
}

fn check_dim(n: usize) -> Result<(), SphereError> {
    if (2..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(SphereError::UnsupportedDimension(n))
    }
}

fn random_unit(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let len = norm(&v);
        if len > 1e-9 {
            return v.into_iter().map(|c| c / len).collect();
        }
    }
}

/// Monte Carlo estimate of `deg μf = (1/Vol S^{n−1}) ∫ J(q) dq` with uniform samples.
///
/// Samples are drawn in chunks of 4096, chunk `i` from the ChaCha8 stream `i`
/// of `seed`, and chunk sums are added in chunk order, so the result does not
/// depend on the thread count.
pub fn degree_integral(n: usize, samples: usize, seed: u64) -> Result<f64, SphereError> {
    check_dim(n)?;
    if samples < 10_000 {
        return Err(SphereError::TooFew {
            what: "samples",
            min: 10_000,
            got: samples,
        });
    }
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            (0..count).map(|_| jacobian(&random_unit(&mut rng, n))).sum()
        })
        .collect();
    Ok(sums.iter().sum::<f64>() / samples as f64)
}

/// One preimage of the south pole together with its orientation sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preimage {
    pub point: Vec<f64>,
    pub jacobian: f64,
    pub sign: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreimageAnalysis {
    pub n: usize,
    pub preimages: Vec<Preimage>,
    pub degree: i64,
    /// Samples examined outside the polar caps.
    pub samples_checked: usize,
    /// Smallest `|⟨μf(q), p_s⟩ − 1|` seen outside the caps.
    pub min_gap_outside_caps: f64,
}

/// Angular radius of the caps around `±p_n` where preimages are refined.
const CAP_RADIUS: f64 = 0.25;
const GAP_THRESHOLD: f64 = 0.05;

/// Degree of `μf` by counting signed preimages of the regular value `p_s`.
///
/// A seeded dense sample confirms `⟨μf(q), p_s⟩` stays away from 1 outside two
/// caps around the poles; inside each cap the best sample is refined by
/// projected gradient ascent onto the exact preimage.
pub fn preimage_analysis(n: usize) -> Result<PreimageAnalysis, SphereError> {
    check_dim(n)?;
    let target = SpherePoint::south_pole(n);
    let closeness = |q: &[f64]| dot(&mu_f_raw(q), target.coords());
    let cap_cos = CAP_RADIUS.cos();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let count = 8192 * n;
    let mut min_gap = f64::INFINITY;
    let mut best: [Option<(f64, Vec<f64>)>; 2] = [None, None];
    let mut seeds: Vec<Vec<f64>> = (0..count).map(|_| random_unit(&mut rng, n)).collect();
    // Poles' neighbourhoods always get a starting point.
    for s in [1.0, -1.0] {
        let mut q = vec![0.05; n];
        q[n - 1] = s;
        let len = norm(&q);
        seeds.push(q.into_iter().map(|c| c / len).collect());
    }
    for q in &seeds {
        let h = q[n - 1];
        let value = closeness(q);
        if h.abs() >= cap_cos {
            let slot = usize::from(h < 0.0);
            if best[slot].as_ref().is_none_or(|(b, _)| value > *b) {
                best[slot] = Some((value, q.clone()));
            }
        } else {
            min_gap = min_gap.min((value - 1.0).abs());
        }
    }
    if min_gap <= GAP_THRESHOLD {
        // Cannot happen for this map; kept as a guard on the implementation.
        panic!("μf comes within {min_gap} of p_s outside the polar caps");
    }

    let mut preimages: Vec<Preimage> = Vec::new();
    for (_, start) in best.into_iter().flatten() {
        let q = refine_preimage(start, &closeness);
        if preimages.iter().any(|p| dist(&p.point, &q) < 1e-6) {
            continue;
        }
        let j = jacobian(&q);
        preimages.push(Preimage {
            sign: if j > 0.0 { 1 } else { -1 },
            jacobian: j,
            point: q,
        });
    }
    let degree = preimages.iter().map(|p| p.sign).sum();
    Ok(PreimageAnalysis {
        n,
        preimages,
        degree,
        samples_checked: count,
        min_gap_outside_caps: min_gap,
    })
}

/// Projected gradient ascent of `⟨μf(q), p_s⟩ = 2q_n² − 1` on the sphere.
fn refine_preimage(mut q: Vec<f64>, closeness: &impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let n = q.len();
    for _ in 0..200 {
        // Gradient 4q_n e_n projected to the tangent space at q.
        let h = q[n - 1];
        let mut g: Vec<f64> = q.iter().map(|c| -4.0 * h * h * c).collect();
        g[n - 1] += 4.0 * h;
        if norm(&g) < 1e-15 {
            break;
        }
        for (c, gi) in q.iter_mut().zip(&g) {
            *c += 0.2 * gi;
        }
        let len = norm(&q);
        q.iter_mut().for_each(|c| *c /= len);
    }
    debug_assert!((closeness(&q) - 1.0).abs() < 1e-12);
    q
}

pub fn degree_preimage(n: usize) -> Result<i64, SphereError> {
    Ok(preimage_analysis(n)?.degree)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereMapReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub degree_integral: f64,
    pub degree_preimage: i64,
    pub agreement: bool,
}

pub fn sphere_map_report(n: usize, samples: usize, seed: u64) -> Result<SphereMapReport, SphereError> {
    let degree_integral = degree_integral(n, samples, seed)?;
    let degree_preimage = degree_preimage(n)?;
    Ok(SphereMapReport {
        n,
        samples,
        seed,
        degree_integral,
        degree_preimage,
        agreement: (degree_integral - degree_preimage as f64).abs() < 0.1,
    })
}

/// Lift of `μf` to the cylinder `S^{n−2} × [−1, 1]`: `(−v, 1 − 2x²)` above the
/// equator and `(v, 1 − 2x²)` on or below it.
pub fn cylinder_lift(v: &SpherePoint, x: f64) -> Result<(SpherePoint, f64), SphereError> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(SphereError::OutOfRange(x));
    }
    let h = 1.0 - 2.0 * x * x;
    if x > 0.0 {
        Ok((SpherePoint(v.coords().iter().map(|c| -c).collect()), h))
    } else {
        Ok((v.clone(), h))
    }
}

/// Collapses the cylinder onto the sphere: `(v, x) ↦ (√(1 − x²)·v, x)`.
pub fn cylinder_projection(v: &[f64], x: f64) -> Vec<f64> {
    let r = (1.0 - x * x).max(0.0).sqrt();
    let mut out: Vec<f64> = v.iter().map(|c| r * c).collect();
    out.push(x);
    out
}

/// Cylinder coordinates of `q`. At the poles the direction is arbitrary.
pub fn cylinder_coords(q: &[f64]) -> (Vec<f64>, f64) {
    let n = q.len();
    let x = q[n - 1];
    let eq = &q[..n - 1];
    let len = norm(eq);
    if len < 1e-300 {
        let mut v = vec![0.0; n - 1];
        v[0] = 1.0;
        (v, x)
    } else {
        (eq.iter().map(|c| c / len).collect(), x)
    }
}

/// Path from `−id` to `id` on `S^{n−2}` (`n` odd): rotation by `π(1 + t)` in
/// each coordinate plane `(e₁e₂), (e₃e₄), …`.
fn antipodal_homotopy(v: &[f64], t: f64) -> Vec<f64> {
    let (s, c) = (PI * (1.0 + t)).sin_cos();
    let mut out = v.to_vec();
    for pair in out.chunks_exact_mut(2) {
        let (a, b) = (pair[0], pair[1]);
        pair[0] = c * a - s * b;
        pair[1] = s * a + c * b;
    }
    out
}

/// Null-homotopy of `μf` for odd `n`, parametrised by `s ∈ [0, 1]`.
///
/// The first half turns the upper lid's `−v` back into `v`; the second half
/// slides the height `1 − 2x²` down to `−1`, ending at the constant map to `p_s`.
pub fn null_homotopy(v: &[f64], x: f64, s: f64) -> Vec<f64> {
    let h = 1.0 - 2.0 * x * x;
    if s <= 0.5 {
        let t = 2.0 * s;
        if x > 0.0 {
            cylinder_projection(&antipodal_homotopy(v, t), h)
        } else {
            cylinder_projection(v, h)
        }
    } else {
        let t = 2.0 * s - 1.0;
        cylinder_projection(v, (1.0 - t) * h - t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_owned(),
            passed: max_error <= tolerance,
            max_error,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub checks: Vec<Check>,
    /// Informational values that are reported but not asserted.
    pub metrics: BTreeMap<String, f64>,
    pub passed: bool,
}

impl CheckReport {
    fn new(name: &str, checks: Vec<Check>, metrics: BTreeMap<String, f64>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            name: name.to_owned(),
            checks,
            metrics,
            passed,
        }
    }
}

/// Sample directions on `S^{n−2}`: the signed coordinate axes plus `extra` seeded random ones.
fn sample_directions(dim: usize, extra: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; dim];
            v[i] = s;
            out.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    out.extend((0..extra).map(|_| random_unit(&mut rng, dim)));
    out
}

/// Largest jump of the homotopy between neighbouring samples on a `grid × grid` mesh.
fn homotopy_displacement(dirs: &[Vec<f64>], grid: usize) -> f64 {
    let step = |i: usize| i as f64 / (grid - 1) as f64;
    dirs.par_iter()
        .map(|v| {
            let mut worst: f64 = 0.0;
            for i in 0..grid {
                let x = -1.0 + 2.0 * step(i);
                for j in 0..grid {
                    let s = step(j);
                    let here = null_homotopy(v, x, s);
                    if i + 1 < grid {
                        let nx = -1.0 + 2.0 * step(i + 1);
                        worst = worst.max(dist(&here, &null_homotopy(v, nx, s)));
                    }
                    if j + 1 < grid {
                        worst = worst.max(dist(&here, &null_homotopy(v, x, step(j + 1))));
                    }
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// Evaluates the null-homotopy of `μf` for odd `n` on a grid in height and time.
pub fn homotopy_endpoints(n: usize, grid: usize) -> Result<CheckReport, SphereError> {
    if n.is_multiple_of(2) {
        return Err(SphereError::EvenDimension(n));
    }
    if !(3..=7).contains(&n) {
        return Err(SphereError::UnsupportedDimension(n));
    }
    if grid < 2 {
        return Err(SphereError::TooFew {
            what: "grid",
            min: 2,
            got: grid,
        });
    }
    let dirs = sample_directions(n - 1, grid);
    let south = SpherePoint::south_pole(n);
    let step = |i: usize| i as f64 / (grid - 1) as f64;

    let (mut start_err, mut end_err, mut norm_err) = (0.0f64, 0.0f64, 0.0f64);
    for v in &dirs {
        for i in 0..grid {
            let x = -1.0 + 2.0 * step(i);
            let q = cylinder_projection(v, x);
            start_err = start_err.max(dist(&null_homotopy(v, x, 0.0), &mu_f_raw(&q)));
            end_err = end_err.max(dist(&null_homotopy(v, x, 1.0), south.coords()));
            for j in 0..grid {
                norm_err = norm_err.max((norm(&null_homotopy(v, x, step(j))) - 1.0).abs());
            }
        }
    }

    let mut metrics = BTreeMap::new();
    metrics.insert("sup_displacement".to_owned(), homotopy_displacement(&dirs, grid));
    metrics.insert(
        "sup_displacement_refined".to_owned(),
        homotopy_displacement(&dirs, 2 * grid - 1),
    );
    metrics.insert("directions".to_owned(), dirs.len() as f64);

    Ok(CheckReport::new(
        &format!("null-homotopy of μf, n = {n}"),
        vec![
            Check::new("time 0 equals μf", start_err, 1e-9),
            Check::new("time 1 is constant p_s", end_err, UNIT_TOLERANCE),
            Check::new("images stay on the sphere", norm_err, 1e-9),
        ],
        metrics,
    ))
}

/// The path `t ↦ [[−cos πt, sin πt], [−sin πt, −cos πt]]` from `−I` to `I` in `GL₂⁺(ℝ)`.
pub fn edge_homotopy_matrix(t: f64) -> [[f64; 2]; 2] {
    let (s, c) = (PI * t).sin_cos();
    [[-c, s], [-s, -c]]
}

/// Samples the edge-structure homotopy at `steps` evenly spaced times in `[0, 1]`.
pub fn edge_s2_homotopy_witness(steps: usize) -> Result<CheckReport, SphereError> {
    if steps < 2 {
        return Err(SphereError::TooFew {
            what: "steps",
            min: 2,
            got: steps,
        });
    }
    let mat_err = |m: [[f64; 2]; 2], target: [[f64; 2]; 2]| {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (m[i][j] - target[i][j]).abs())
            .fold(0.0, f64::max)
    };
    let start = mat_err(edge_homotopy_matrix(0.0), [[-1.0, 0.0], [0.0, -1.0]]);
    let end = mat_err(edge_homotopy_matrix(1.0), [[1.0, 0.0], [0.0, 1.0]]);
    let det_err = (0..steps)
        .map(|i| {
            let m = edge_homotopy_matrix(i as f64 / (steps - 1) as f64);
            (m[0][0] * m[1][1] - m[0][1] * m[1][0] - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let mut metrics = BTreeMap::new();
    metrics.insert("steps".to_owned(), steps as f64);
    Ok(CheckReport::new(
        "edge homotopy −I to I",
        vec![
            Check::new("f(0) = -I", start, UNIT_TOLERANCE),
            Check::new("f(1) = I", end, UNIT_TOLERANCE),
            Check::new("det f(t) = 1", det_err, UNIT_TOLERANCE),
        ],
        metrics,
    ))
}

/// Rotation in the plane `⟨p_n, w⟩` taking `p_n` to `w`; the identity when `w = p_n`.
pub fn pole_rotation(w: &SpherePoint) -> DMatrix<f64> {
    let n = w.dim();
    let c = w.height();
    let mut u: Vec<f64> = w.coords().to_vec();
    u[n - 1] -= c;
    let s = norm(&u);
    let mut r = DMatrix::identity(n, n);
    if s < 1e-15 {
        return r;
    }
    u.iter_mut().for_each(|x| *x /= s);
    let p = DVector::from_column_slice(SpherePoint::north_pole(n).coords());
    let u = DVector::from_column_slice(&u);
    r += s * (&u * p.transpose() - &p * u.transpose());
    r += (c - 1.0) * (&p * p.transpose() + &u * u.transpose());
    r
}

/// The gluing map `f(q)` seen in the trivialization over the upper hemisphere:
/// `r_{μf(q)}⁻¹ · (I − 2qqᵀ)`. It fixes `p_n`, so it lies in the fibre `O(n − 1)`.
pub fn trivialized_gluing(q: &SpherePoint) -> DMatrix<f64> {
    let r = pole_rotation(&mu_f(q));
    r.transpose() * reflection(q)
}

/// Normalized equatorial projection of `q`.
pub fn equatorial_direction(q: &SpherePoint) -> Result<SpherePoint, SphereError> {
    let mut e = q.coords().to_vec();
    let n = e.len();
    e[n - 1] = 0.0;
    SpherePoint::normalize(e)
}

/// `‖r_{μf(q)} · ρ_{⟨q_e⟩⊥} − ρ_{⟨q⟩⊥}‖_max`: how far the section-based
/// trivialization is from reproducing the gluing map on the band `0 < |x_n| < 1/√2`.
pub fn trivialization_residual(q: &SpherePoint) -> Result<f64, SphereError> {
    let qe = equatorial_direction(q)?;
    let rebuilt = pole_rotation(&mu_f(q)) * reflection(&qe);
    Ok((rebuilt - reflection(q)).amax())
}
