//! Isomorphism obstructions read off the associated graph.
//!
//! The central fact is that `ᵇTM ≅ TM` forces a global defining function for
//! `Z`, i.e. a proper two-coloring of the associated graph. Colorability is
//! decided twice: by breadth-first search ([`two_color`]) and by solving the
//! sign equations of the gluing cocycle over GF(2) ([`gauge_solvable`]).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gf2::Gf2System;
use crate::model::BGraph;

/// A sign `±1`, serialized as the integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    fn from_bit(b: bool) -> Sign {
        if b {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    fn bit(self) -> bool {
        self == Sign::Minus
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("expected 1 or -1, got {other}"))),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("region `{0}` has no color")]
    Missing(String),
    #[error("color given for unknown region `{0}`")]
    Unknown(String),
    #[error("edge `{edge}` joins two regions of the same color")]
    Improper { edge: String },
}

/// Assignment of `±1` to every region: the sign of a defining function on it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub BTreeMap<String, Sign>);

impl Coloring {
    pub fn get(&self, label: &str) -> Option<Sign> {
        self.0.get(label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Sign)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// The coloring with every sign flipped.
    pub fn negated(&self) -> Coloring {
        Coloring(self.0.iter().map(|(k, v)| (k.clone(), -*v)).collect())
    }

    /// Checks totality on the regions of `g` and that every non-loop edge
    /// separates opposite colors. Loop edges make a graph uncolorable, so a
    /// graph with a loop never has a proper coloring.
    pub fn check_proper(&self, g: &BGraph) -> Result<(), ColoringError> {
        for r in &g.regions {
            if !self.0.contains_key(&r.label) {
                return Err(ColoringError::Missing(r.label.clone()));
            }
        }
        if let Some(k) = self.0.keys().find(|k| g.region(k).is_none()) {
            return Err(ColoringError::Unknown(k.clone()));
        }
        for e in &g.edges {
            if self.0[&e.side_a] == self.0[&e.side_b] {
                return Err(ColoringError::Improper {
                    edge: e.label.clone(),
                });
            }
        }
        Ok(())
    }

    /// Flips signs per graph component so that the smallest label in each component is `+1`.
    pub fn normalized(&self, g: &BGraph) -> Coloring {
        let mut out = self.clone();
        for comp in g.components() {
            if out.get(comp[0]) == Some(Sign::Minus) {
                for label in comp {
                    if let Some(s) = out.0.get_mut(label) {
                        *s = -*s;
                    }
                }
            }
        }
        out
    }
}

/// Proper two-coloring by breadth-first search, or `None` if the graph has an
/// odd cycle or a loop. The smallest label of each component is colored `+1`.
pub fn two_color(g: &BGraph) -> Option<Coloring> {
    if g.edges.iter().any(|e| e.is_loop()) {
        return None;
    }
    let adj = g.adjacency();
    let mut colors: BTreeMap<String, Sign> = BTreeMap::new();
    for &start in adj.keys() {
        if colors.contains_key(start) {
            continue;
        }
        colors.insert(start.to_owned(), Sign::Plus);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = colors[u];
            for &w in &adj[u] {
                match colors.get(w) {
                    Some(&cw) if cw == cu => return None,
                    Some(_) => {}
                    None => {
                        colors.insert(w.to_owned(), -cu);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Some(Coloring(colors))
}

/// Which side of a hypersurface component an incidence refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
}

/// An entry of the gluing: region `region` meets component `edge` on side `side`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Incidence {
    pub region: String,
    pub edge: String,
    pub side: Side,
}

/// Determinant signs of the transition functions between each region and a
/// tubular neighborhood of each adjacent hypersurface component.
///
/// For the b-tangent bundle against the tangent bundle the two sides of every
/// component carry opposite signs. Other sign patterns are accepted so the
/// same solver covers related bundles.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignGluing {
    pub incidences: BTreeMap<Incidence, Sign>,
}

impl SignGluing {
    /// Side `a` glued by `+1`, side `b` by `-1`, for every component.
    pub fn canonical_b(g: &BGraph) -> Self {
        Self::uniform(g, Sign::Minus)
    }

    /// Side `a` glued by `+1`, side `b` by `product`.
    pub fn uniform(g: &BGraph, product: Sign) -> Self {
        let mut incidences = BTreeMap::new();
        for e in &g.edges {
            incidences.insert(
                Incidence {
                    region: e.side_a.clone(),
                    edge: e.label.clone(),
                    side: Side::A,
                },
                Sign::Plus,
            );
            incidences.insert(
                Incidence {
                    region: e.side_b.clone(),
                    edge: e.label.clone(),
                    side: Side::B,
                },
                product,
            );
        }
        Self { incidences }
    }

    /// True when every component's two sides carry opposite signs.
    pub fn is_b_convention(&self, g: &BGraph) -> bool {
        self.edge_products(g)
            .map(|p| p.values().all(|&s| s == Sign::Minus))
            .unwrap_or(false)
    }

    fn edge_products<'g>(&self, g: &'g BGraph) -> Result<BTreeMap<&'g str, Sign>, GluingError> {
        let mut out = BTreeMap::new();
        let mut used = 0;
        for e in &g.edges {
            let mut get = |region: &str, side| {
                let key = Incidence {
                    region: region.to_owned(),
                    edge: e.label.clone(),
                    side,
                };
                used += 1;
                self.incidences
                    .get(&key)
                    .copied()
                    .ok_or_else(|| GluingError::Inconsistent(format!(
                        "no incidence for region `{region}` on side {side:?} of `{}`",
                        e.label
                    )))
            };
            let a = get(&e.side_a, Side::A)?;
            let b = get(&e.side_b, Side::B)?;
            out.insert(e.label.as_str(), a * b);
        }
        if used != self.incidences.len() {
            return Err(GluingError::Inconsistent(format!(
                "{} incidences do not correspond to any edge side",
                self.incidences.len() - used
            )));
        }
        Ok(out)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GluingError {
    #[error("gluing does not match the graph: {0}")]
    Inconsistent(String),
}

/// Searches for region signs `s` with `s(a) * s(b) = g_a * g_b` on every
/// component, i.e. a sign-level gauge transformation trivializing the gluing.
/// Solved as a GF(2) linear system; free variables take `+1`.
pub fn gauge_solvable(gl: &SignGluing, g: &BGraph) -> Result<Option<Coloring>, GluingError> {
    let products = gl.edge_products(g)?;
    let mut labels: Vec<&str> = g.region_labels().collect();
    labels.sort_unstable();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let mut sys = Gf2System::new(labels.len());
    for e in &g.edges {
        let (Some(&a), Some(&b)) = (index.get(e.side_a.as_str()), index.get(e.side_b.as_str())) else {
            return Err(GluingError::Inconsistent(format!(
                "edge `{}` has an endpoint outside the graph",
                e.label
            )));
        };
        sys.push_equation(&[a, b], products[e.label.as_str()].bit());
    }
    Ok(sys.solve().map(|x| {
        Coloring(
            labels
                .iter()
                .zip(x)
                .map(|(&l, bit)| (l.to_owned(), Sign::from_bit(bit)))
                .collect(),
        )
    }))
}

/// Isomorphism type of the `bᵐ`-tangent bundle, which depends only on the parity of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BmClass {
    TangentEquivalent,
    BTangentEquivalent,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("m must be at least 1")]
    ZeroOrder,
    #[error("manifold is not flagged orientable; the equivalences need M orientable and Z co-oriented")]
    NotOrientable,
    #[error("fibre dimension {dim_f} must be smaller than the manifold dimension {dim_m}")]
    FibreTooLarge { dim_m: u32, dim_f: u32 },
}

/// `bᵐTM ≅ TM` for even `m` and `bᵐTM ≅ ᵇTM` for odd `m`.
pub fn classify_bm(m: u32) -> Result<BmClass, ObstructionError> {
    match m {
        0 => Err(ObstructionError::ZeroOrder),
        m if m % 2 == 0 => Ok(BmClass::TangentEquivalent),
        _ => Ok(BmClass::BTangentEquivalent),
    }
}

pub const PONTRJAGIN_NOTE: &str = "2p(TM) = 2p(ᵇTM) always";

/// The chain of equivalent conditions for `(M, Z)`. All booleans agree; they
/// are stored separately so a report names each condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub two_colorable: bool,
    pub coloring: Option<Coloring>,
    pub line_bundle_trivial: bool,
    pub sw_classes_equal: bool,
    pub b_tangent_orientable: bool,
    pub global_defining_function: bool,
    pub ko_classes_equal: bool,
    pub pontrjagin_note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bm_classification: Option<BmReport>,
}

/// Optional `bᵐ` addendum to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmReport {
    pub m: u32,
    pub class: BmClass,
}

impl ClassificationVerdict {
    /// True when all the equivalent conditions carry the same value.
    pub fn is_consistent(&self) -> bool {
        let v = self.two_colorable;
        [
            self.line_bundle_trivial,
            self.sw_classes_equal,
            self.b_tangent_orientable,
            self.global_defining_function,
            self.ko_classes_equal,
        ]
        .iter()
        .all(|&b| b == v)
            && self.coloring.is_some() == v
    }
}

pub fn equivalence_report(g: &BGraph) -> Result<ClassificationVerdict, ObstructionError> {
    if !g.orientable {
        return Err(ObstructionError::NotOrientable);
    }
    let coloring = two_color(g);
    let ok = coloring.is_some();
    Ok(ClassificationVerdict {
        two_colorable: ok,
        coloring,
        line_bundle_trivial: ok,
        sw_classes_equal: ok,
        b_tangent_orientable: ok,
        global_defining_function: ok,
        ko_classes_equal: ok,
        pontrjagin_note: PONTRJAGIN_NOTE.to_owned(),
        bm_classification: None,
    })
}

/// `ᵇTS¹ ≅ TS¹` exactly when the number of marked points is even.
pub fn circle_criterion(k: usize) -> bool {
    k.is_multiple_of(2)
}

/// Outcome of the edge-structure test, which only has a necessary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeVerdict {
    Obstructed,
    Inconclusive,
}

/// For an edge structure with fibre dimension `dim_f`, odd codimension
/// `dim_m - dim_f` together with a non-colorable graph rules out `ᵉTM ≅ TM`.
pub fn edge_obstruction(g: &BGraph, dim_m: u32, dim_f: u32) -> Result<EdgeVerdict, ObstructionError> {
    if dim_f >= dim_m {
        return Err(ObstructionError::FibreTooLarge { dim_m, dim_f });
    }
    if (dim_m - dim_f) % 2 == 1 && two_color(g).is_none() {
        Ok(EdgeVerdict::Obstructed)
    } else {
        Ok(EdgeVerdict::Inconclusive)
    }
}
