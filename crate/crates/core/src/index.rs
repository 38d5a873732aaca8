//! Indices of planar vector fields as winding numbers on small circles.
//!
//! A b-vector field near `Z = {x = 0}` is written `a·x∂/∂x + b·∂/∂y`. Its
//! anchor image is the honest field `(x·a, b)`; its expression in the b-frame
//! is the coefficient pair `(a, b)`. Both indices are computed here, together
//! with a check of the colored Poincaré–Hopf sum on the sphere.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euler::{b_euler_number, EulerError};
use crate::model::BGraph;
use crate::obstruction::{Coloring, Sign};

/// Samples with `|f|` at or below this count as zeros on the contour.
pub const ZERO_TOLERANCE: f64 = 1e-12;
pub const INITIAL_SAMPLES: usize = 64;
pub const MAX_SAMPLES: usize = 1 << 16;

/// A deterministic map from the plane to plane vectors.
pub trait PlaneField: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> (f64, f64);
}

impl<F> PlaneField for F
where
    F: Fn(f64, f64) -> (f64, f64) + Send + Sync,
{
    fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        self(x, y)
    }
}

/// A b-vector field `a(x,y)·x∂/∂x + b(x,y)·∂/∂y` with `Z = {x = 0}`.
pub struct BPlaneField<A, B> {
    pub a: A,
    pub b: B,
}

impl<A, B> BPlaneField<A, B>
where
    A: Fn(f64, f64) -> f64 + Send + Sync,
    B: Fn(f64, f64) -> f64 + Send + Sync,
{
    pub fn new(a: A, b: B) -> Self {
        Self { a, b }
    }

    /// The field in the b-frame `(x∂/∂x, ∂/∂y)`.
    pub fn coefficients(&self) -> impl PlaneField + '_ {
        move |x, y| ((self.a)(x, y), (self.b)(x, y))
    }

    /// The anchor image `ρ(X) = (x·a, b)`.
    pub fn honest(&self) -> impl PlaneField + '_ {
        move |x, y| (x * (self.a)(x, y), (self.b)(x, y))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexResult {
    pub index: i64,
    pub radius_used: f64,
    pub samples_used: usize,
    pub max_step_radians: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IndexError {
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("field vanishes (|f| <= 1e-12) on the contour at ({0}, {1})")]
    ZeroOnContour(f64, f64),
    #[error("field is not finite at ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("angular steps still reach {max_step:.3} rad with {samples} samples")]
    NonConvergent { samples: usize, max_step: f64 },
    #[error("zero at ({x}, {y}) in chart {chart} lies on the critical set; the colored index sum only counts zeros off Z")]
    ZeroOnCriticalSet { chart: usize, x: f64, y: f64 },
    #[error("no chart with index {0}")]
    UnknownChart(usize),
    #[error("zero assigned to region `{0}`, which has no color")]
    UnknownRegion(String),
    #[error(transparent)]
    Euler(#[from] EulerError),
}

/// Wraps an angle difference into `(-π, π]`.
fn wrap(d: f64) -> f64 {
    let mut d = d % TAU;
    if d > PI {
        d -= TAU;
    } else if d <= -PI {
        d += TAU;
    }
    d
}

/// Degree of `f / |f|` on the circle of `radius` about `center`.
///
/// Sampling starts at 64 points and doubles until every angular increment is
/// below π/2, up to 2¹⁶ points. Increments are summed in sample order.
pub fn winding_index(
    f: &(impl PlaneField + ?Sized),
    center: (f64, f64),
    radius: f64,
) -> Result<IndexResult, IndexError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(IndexError::InvalidRadius(radius));
    }
    let mut n = INITIAL_SAMPLES;
    loop {
        let angles: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                let (x, y) = (center.0 + radius * t.cos(), center.1 + radius * t.sin());
                let (u, v) = f.eval(x, y);
                if !(u.is_finite() && v.is_finite()) {
                    return Err(IndexError::NonFinite(x, y));
                }
                if u.hypot(v) <= ZERO_TOLERANCE {
                    return Err(IndexError::ZeroOnContour(x, y));
                }
                Ok(v.atan2(u))
            })
            .collect::<Result<_, _>>()?;

        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let d = wrap(angles[(k + 1) % n] - angles[k]);
            total += d;
            max_step = max_step.max(d.abs());
        }
        if max_step < FRAC_PI_2 {
            return Ok(IndexResult {
                index: (total / TAU).round() as i64,
                radius_used: radius,
                samples_used: n,
                max_step_radians: max_step,
            });
        }
        if n >= MAX_SAMPLES {
            return Err(IndexError::NonConvergent { samples: n, max_step });
        }
        n *= 2;
    }
}

/// Index of a b-vector field measured in the b-frame, i.e. the winding of `(a, b)`.
pub fn b_frame_index<A, B>(
    f: &BPlaneField<A, B>,
    center: (f64, f64),
    radius: f64,
) -> Result<IndexResult, IndexError>
where
    A: Fn(f64, f64) -> f64 + Send + Sync,
    B: Fn(f64, f64) -> f64 + Send + Sync,
{
    winding_index(&f.coefficients(), center, radius)
}

/// The b-field `X_δ = x(x − δ)∂/∂x + y∂/∂y`, whose only zero off `Z` is `(δ, 0)`.
pub fn x_delta(delta: f64) -> BPlaneField<impl Fn(f64, f64) -> f64 + Send + Sync + Copy, impl Fn(f64, f64) -> f64 + Send + Sync + Copy> {
    BPlaneField::new(move |x, _| x - delta, |_, y| y)
}

/// Contour radius for `X_δ` at `(δ, 0)`: at most 0.1 and inside the gap to the zero at the origin.
pub fn x_delta_radius(delta: f64) -> f64 {
    0.1f64.min(delta.abs() / 2.0)
}

/// Built-in fields selectable by name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedField {
    /// Honest field of `X_δ`.
    XDelta(f64),
    Radial,
    Saddle,
    /// `(x², y)`, the honest field of `X_0`.
    X0Degenerate,
    /// `z·(−∇z)` on the sphere in the northern stereographic chart.
    SphereHeightB,
}

impl NamedField {
    pub fn parse(name: &str, delta: Option<f64>) -> Option<Self> {
        Some(match name {
            "x_delta" => NamedField::XDelta(delta?),
            "radial" => NamedField::Radial,
            "saddle" => NamedField::Saddle,
            "x0_degenerate" => NamedField::X0Degenerate,
            "sphere_height_b" => NamedField::SphereHeightB,
            _ => return None,
        })
    }

    pub const NAMES: [&'static str; 5] = ["x_delta", "radial", "saddle", "x0_degenerate", "sphere_height_b"];

    /// The zero the field is normally inspected at.
    pub fn default_center(&self) -> (f64, f64) {
        match self {
            NamedField::XDelta(d) => (*d, 0.0),
            _ => (0.0, 0.0),
        }
    }

    pub fn default_radius(&self) -> f64 {
        match self {
            NamedField::XDelta(d) if *d != 0.0 => x_delta_radius(*d),
            NamedField::SphereHeightB => 0.5,
            _ => 0.1,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        match *self {
            NamedField::XDelta(d) => (x * (x - d), y),
            NamedField::Radial => (x, y),
            NamedField::Saddle => (x, -y),
            NamedField::X0Degenerate => (x * x, y),
            NamedField::SphereHeightB => height_chart_field(true, Pole::North)(x, y),
        }
    }
}

impl PlaneField for NamedField {
    fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        NamedField::eval(self, x, y)
    }
}

/// Which pole a stereographic chart is centred on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pole {
    North,
    South,
}

impl Pole {
    /// `+1` for the chart around the north pole, `-1` around the south pole.
    fn sign(self) -> f64 {
        match self {
            Pole::North => 1.0,
            Pole::South => -1.0,
        }
    }

    /// Chart coordinates to the unit sphere in ℝ³.
    pub fn to_sphere(self, u: f64, v: f64) -> [f64; 3] {
        let s = u * u + v * v;
        let d = 1.0 + s;
        [2.0 * u / d, 2.0 * v / d, self.sign() * (1.0 - s) / d]
    }

    /// Pushes an ambient tangent vector `w` at `p` forward to the chart.
    pub fn push_forward(self, p: [f64; 3], w: [f64; 3]) -> (f64, f64) {
        let e = self.sign();
        let d = 1.0 + e * p[2];
        (
            w[0] / d - e * p[0] * w[2] / (d * d),
            w[1] / d - e * p[1] * w[2] / (d * d),
        )
    }
}

/// The height gradient flow `−∇z` on S², optionally multiplied by `z` to make
/// it tangent to the equator. Both vanish only at the poles off the equator.
pub fn height_ambient_field(b_field: bool) -> impl Fn([f64; 3]) -> [f64; 3] + Send + Sync + Copy {
    move |p: [f64; 3]| {
        let z = p[2];
        // ∇z = e₃ − z·p
        let g = [-z * p[0], -z * p[1], 1.0 - z * z];
        let scale = if b_field { -z } else { -1.0 };
        [scale * g[0], scale * g[1], scale * g[2]]
    }
}

/// The height field in one stereographic chart.
pub fn height_chart_field(b_field: bool, pole: Pole) -> impl Fn(f64, f64) -> (f64, f64) + Send + Sync + Copy {
    let ambient = height_ambient_field(b_field);
    move |u, v| {
        let p = pole.to_sphere(u, v);
        pole.push_forward(p, ambient(p))
    }
}

/// A planar chart carrying a field and a defining function of `Z` in chart coordinates.
pub struct Chart {
    pub name: String,
    pub field: Box<dyn PlaneField>,
    pub defining: Box<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

pub struct Atlas {
    pub charts: Vec<Chart>,
}

impl Atlas {
    /// Two stereographic charts of S² around the poles, with `Z` the equator
    /// and the height field (times `z` when `b_field`).
    pub fn sphere_height(b_field: bool) -> Self {
        let chart = |pole: Pole, name: &str| Chart {
            name: name.to_owned(),
            field: Box::new(height_chart_field(b_field, pole)),
            defining: Box::new(move |u, v| pole.to_sphere(u, v)[2]),
        };
        Self {
            charts: vec![chart(Pole::North, "north"), chart(Pole::South, "south")],
        }
    }
}

/// A zero handed to the verifier: where it is, how far the contour reaches, and its region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartZero {
    pub chart: usize,
    pub center: (f64, f64),
    pub radius: f64,
    pub region: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroIndex {
    pub chart: String,
    pub center: (f64, f64),
    pub region: String,
    pub color: Sign,
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub zeros: Vec<ZeroIndex>,
    /// `Σ c(p)·ind(ρ(X), p)`.
    pub colored_sum: i64,
    pub unsigned_sum: i64,
    /// `Σ c(U)·χ(U)` from the graph.
    pub b_euler: i64,
    pub passed: bool,
}

/// Compares the colored index sum of the listed zeros with the combinatorial
/// b-Euler number of `g` under coloring `c`.
pub fn verify_poincare_hopf(
    zeros: &[ChartZero],
    g: &BGraph,
    c: &Coloring,
    atlas: &Atlas,
) -> Result<VerificationReport, IndexError> {
    let b_euler = b_euler_number(g, c)?;
    let mut out = Vec::with_capacity(zeros.len());
    for z in zeros {
        let chart = atlas.charts.get(z.chart).ok_or(IndexError::UnknownChart(z.chart))?;
        if (chart.defining)(z.center.0, z.center.1).abs() <= 1e-9 {
            return Err(IndexError::ZeroOnCriticalSet {
                chart: z.chart,
                x: z.center.0,
                y: z.center.1,
            });
        }
        let color = c
            .get(&z.region)
            .ok_or_else(|| IndexError::UnknownRegion(z.region.clone()))?;
        let res = winding_index(chart.field.as_ref(), z.center, z.radius)?;
        out.push(ZeroIndex {
            chart: chart.name.clone(),
            center: z.center,
            region: z.region.clone(),
            color,
            index: res.index,
        });
    }
    let colored_sum = out.iter().map(|z| z.color.value() * z.index).sum();
    let unsigned_sum = out.iter().map(|z| z.index).sum();
    Ok(VerificationReport {
        zeros: out,
        colored_sum,
        unsigned_sum,
        b_euler,
        passed: colored_sum == b_euler,
    })
}

/// The two poles of S² as chart zeros, north assigned to `north_region`.
pub fn sphere_pole_zeros(north_region: &str, south_region: &str) -> Vec<ChartZero> {
    vec![
        ChartZero {
            chart: 0,
            center: (0.0, 0.0),
            radius: 0.5,
            region: north_region.to_owned(),
        },
        ChartZero {
            chart: 1,
            center: (0.0, 0.0),
            radius: 0.5,
            region: south_region.to_owned(),
        },
    ]
}
