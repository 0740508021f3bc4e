//! Maslov-2 broken tropical curves anchored at two planar points.
//!
//! Anchors: `p'` in the open third quadrant, `p''` in the open first quadrant
//! (the logarithm projections of the two link tori). A curve is a balanced
//! piecewise-linear graph with integer weighted directions, univalent at the
//! anchors, whose unbounded edges have axis primitive directions. Maslov
//! index is twice the total multiplicity of unbounded edges.
//!
//! Two enumerated shapes:
//!
//! - type 1: a single multiplicity-1 ray from one anchor (8 curves, the
//!   smooth disc classes);
//! - type 2: a trivalent curve through both anchors with one multiplicity-1
//!   ray (the annulus classes). For the family whose ray is labeled `(0,1)`
//!   the anchor edges carry weighted directions `(p,q)` from `p'` and
//!   `(-p,-(q+1))` from `p''`, and `(p,q)` ranges over the solutions of
//!   `q/p < m < (q+1)/p` where `m` is the anchor slope; the `(1,0)` label
//!   solves `q/(p+1) < m < q/p`, and the two remaining families are the
//!   anchor-swap mirrors.
//!
//! Orientation bookkeeping: anchor-edge directions point away from their
//! anchor (toward the interior vertex); a family's label is the toward-vertex
//! direction of its ray, so the ray extends from the vertex in the opposite,
//! physical direction. Stored ray directions are physical.
//!
//! Exact-rational genericity stands in for an irrational anchor slope: the
//! slope must avoid every fraction `q/p` with `0 < p <= weight_bound + 1`,
//! `|q| <= weight_bound + 1` — precisely the comparisons the bounded
//! enumeration performs, so every inequality used is strict.

use serde::{Deserialize, Serialize};

use crate::potential::{DiscClass, ModelParams};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TropicalError {
    #[error("anchors must lie in the open third and first quadrants: p'={0:?}, p''={1:?}")]
    BadAnchors(QPoint, QPoint),
    #[error("weight bound must be at least 1")]
    ZeroWeightBound,
    #[error("anchor line is vertical; slope undefined")]
    VerticalLine,
    #[error(
        "anchor slope {slope} collides with excluded fraction {collision} for weight bound {bound}"
    )]
    NonGenericSlope {
        slope: Rat,
        collision: Rat,
        bound: u32,
    },
    #[error("curve shape not produced by the type-1/type-2 enumerators")]
    UnclassifiedCurve,
}

/// Exact planar point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPoint {
    pub x: Rat,
    pub y: Rat,
}

impl QPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        QPoint { x, y }
    }
}

/// Which anchors a curve touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Anchor {
    Prime,
    DoublePrime,
}

/// Anchor pair and enumeration bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TropicalConfig {
    pub p_prime: QPoint,
    pub p_dprime: QPoint,
    pub weight_bound: u32,
}

impl TropicalConfig {
    pub fn new(
        p_prime: QPoint,
        p_dprime: QPoint,
        weight_bound: u32,
    ) -> Result<Self, TropicalError> {
        if weight_bound == 0 {
            return Err(TropicalError::ZeroWeightBound);
        }
        let third = p_prime.x.is_negative() && p_prime.y.is_negative();
        let first = p_dprime.x.is_positive() && p_dprime.y.is_positive();
        if !third || !first {
            return Err(TropicalError::BadAnchors(p_prime, p_dprime));
        }
        Ok(TropicalConfig {
            p_prime,
            p_dprime,
            weight_bound,
        })
    }

    pub fn anchor(&self, which: Anchor) -> QPoint {
        match which {
            Anchor::Prime => self.p_prime,
            Anchor::DoublePrime => self.p_dprime,
        }
    }
}

/// Edge geometry: bounded segment (direction points `from -> to`) or a ray
/// extending from `base` in the stored physical direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EdgeGeometry {
    Segment { from: QPoint, to: QPoint },
    Ray { base: QPoint },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TropicalEdge {
    /// Weight times primitive direction.
    pub weighted_dir: (i64, i64),
    pub geometry: EdgeGeometry,
}

impl TropicalEdge {
    pub fn is_bounded(&self) -> bool {
        matches!(self.geometry, EdgeGeometry::Segment { .. })
    }

    /// Multiplicity: gcd of the weighted direction components.
    pub fn weight(&self) -> i64 {
        gcd_i64(self.weighted_dir.0.abs(), self.weighted_dir.1.abs())
    }
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TropicalCurve {
    pub edges: Vec<TropicalEdge>,
    pub anchors_used: Vec<Anchor>,
    pub genus: u32,
}

impl TropicalCurve {
    /// Twice the total multiplicity of unbounded edges.
    pub fn maslov_index(&self) -> i64 {
        2 * self
            .edges
            .iter()
            .filter(|e| !e.is_bounded())
            .map(|e| e.weight())
            .sum::<i64>()
    }
}

/// Slope of the anchor line, provided it avoids every fraction the bounded
/// enumeration compares against.
pub fn slope_genericity(p1: QPoint, p2: QPoint, weight_bound: u32) -> Result<Rat, TropicalError> {
    let dx = p2.x - p1.x;
    let dy = p2.y - p1.y;
    if dx.is_zero() {
        return Err(TropicalError::VerticalLine);
    }
    let m = dy / dx;
    let bound = weight_bound as i128 + 1;
    for p in 1..=bound {
        for q in -bound..=bound {
            let fraction = Rat::new(q, p).expect("p >= 1");
            if m == fraction {
                return Err(TropicalError::NonGenericSlope {
                    slope: m,
                    collision: fraction,
                    bound: weight_bound,
                });
            }
        }
    }
    Ok(m)
}

pub fn genericity_check(cfg: &TropicalConfig) -> Result<Rat, TropicalError> {
    slope_genericity(cfg.p_prime, cfg.p_dprime, cfg.weight_bound)
}

const AXIS_DIRS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// The 8 one-ray curves: each anchor emits one multiplicity-1 ray in each
/// axis direction.
pub fn enumerate_type1(cfg: &TropicalConfig) -> Result<Vec<TropicalCurve>, TropicalError> {
    genericity_check(cfg)?;
    let mut out = Vec::with_capacity(8);
    for anchor in [Anchor::Prime, Anchor::DoublePrime] {
        for dir in AXIS_DIRS {
            out.push(TropicalCurve {
                edges: vec![TropicalEdge {
                    weighted_dir: dir,
                    geometry: EdgeGeometry::Ray {
                        base: cfg.anchor(anchor),
                    },
                }],
                anchors_used: vec![anchor],
                genus: 0,
            });
        }
    }
    Ok(out)
}

/// Ray family labels, named by the toward-vertex direction of the unbounded
/// edge (the convention in which the three weighted directions of a type-2
/// curve sum to zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RayFamily {
    /// Label `(0,1)`: physical ray `(0,-1)`.
    LabelUp,
    /// Label `(1,0)`: physical ray `(-1,0)`.
    LabelRight,
    /// Label `(0,-1)`: physical ray `(0,1)`.
    LabelDown,
    /// Label `(-1,0)`: physical ray `(1,0)`.
    LabelLeft,
}

impl RayFamily {
    pub const ALL: [RayFamily; 4] = [
        RayFamily::LabelUp,
        RayFamily::LabelRight,
        RayFamily::LabelDown,
        RayFamily::LabelLeft,
    ];

    pub fn label(self) -> (i64, i64) {
        match self {
            RayFamily::LabelUp => (0, 1),
            RayFamily::LabelRight => (1, 0),
            RayFamily::LabelDown => (0, -1),
            RayFamily::LabelLeft => (-1, 0),
        }
    }

    pub fn physical(self) -> (i64, i64) {
        let (x, y) = self.label();
        (-x, -y)
    }
}

/// Integer pairs `(p,q)` indexing one ray family at slope `m`, with both
/// components bounded by `weight_bound` in absolute value.
pub fn family_pairs(family: RayFamily, m: Rat, weight_bound: u32) -> Vec<(i64, i64)> {
    let wb = weight_bound as i64;
    let mut out = Vec::new();
    for p in 1..=wb {
        for q in -wb..=wb {
            let qp = Rat::from_int(q as i128);
            let pm = m.scale(p as i128);
            let ok = match family {
                // q/p < m < (q+1)/p
                RayFamily::LabelUp | RayFamily::LabelDown => qp < pm && pm < qp + Rat::ONE,
                // q/(p+1) < m < q/p  <=>  pm < q < (p+1)m
                RayFamily::LabelRight | RayFamily::LabelLeft => {
                    pm < qp && qp < m.scale(p as i128 + 1)
                }
            };
            if ok {
                out.push((p, q));
            }
        }
    }
    out
}

/// Anchor-edge weighted directions (away from `p'` resp. `p''`) for a family
/// member (p, q).
fn anchor_dirs(family: RayFamily, p: i64, q: i64) -> ((i64, i64), (i64, i64)) {
    match family {
        RayFamily::LabelUp => ((p, q), (-p, -(q + 1))),
        RayFamily::LabelDown => ((p, q + 1), (-p, -q)),
        RayFamily::LabelRight => ((p, q), (-(p + 1), -q)),
        RayFamily::LabelLeft => ((p + 1, q), (-p, -q)),
    }
}

/// Exact trivalent-vertex position: the intersection of the two anchor lines.
/// Returns `None` when the crossing parameters are not both positive (cannot
/// happen for pairs satisfying the family inequality).
fn vertex_position(cfg: &TropicalConfig, d0: (i64, i64), d1: (i64, i64)) -> Option<QPoint> {
    // p' + t d0 = p'' + s d1, solved exactly by Cramer's rule.
    let delta_x = cfg.p_dprime.x - cfg.p_prime.x;
    let delta_y = cfg.p_dprime.y - cfg.p_prime.y;
    let a = Rat::from_int(d0.0 as i128);
    let b = Rat::from_int(-d1.0 as i128);
    let c = Rat::from_int(d0.1 as i128);
    let d = Rat::from_int(-d1.1 as i128);
    let det = a * d - b * c;
    if det.is_zero() {
        return None;
    }
    let t = (delta_x * d - b * delta_y) / det;
    let s = (a * delta_y - delta_x * c) / det;
    if !t.is_positive() || !s.is_positive() {
        return None;
    }
    Some(QPoint::new(
        cfg.p_prime.x + t * Rat::from_int(d0.0 as i128),
        cfg.p_prime.y + t * Rat::from_int(d0.1 as i128),
    ))
}

/// All genus-0 three-edge curves through both anchors with component bound
/// `weight_bound`, covering the four ray families.
pub fn enumerate_type2(cfg: &TropicalConfig) -> Result<Vec<TropicalCurve>, TropicalError> {
    let m = genericity_check(cfg)?;
    let mut out = Vec::new();
    for family in RayFamily::ALL {
        for (p, q) in family_pairs(family, m, cfg.weight_bound) {
            let (d0, d1) = anchor_dirs(family, p, q);
            let v = vertex_position(cfg, d0, d1)
                .expect("family inequality guarantees positive crossing parameters");
            out.push(TropicalCurve {
                edges: vec![
                    TropicalEdge {
                        weighted_dir: d0,
                        geometry: EdgeGeometry::Segment {
                            from: cfg.p_prime,
                            to: v,
                        },
                    },
                    TropicalEdge {
                        weighted_dir: d1,
                        geometry: EdgeGeometry::Segment {
                            from: cfg.p_dprime,
                            to: v,
                        },
                    },
                    TropicalEdge {
                        weighted_dir: family.physical(),
                        geometry: EdgeGeometry::Ray { base: v },
                    },
                ],
                anchors_used: vec![Anchor::Prime, Anchor::DoublePrime],
                genus: 0,
            });
        }
    }
    Ok(out)
}

/// Balancing check: at every vertex other than an anchor, the weighted
/// primitive directions oriented toward the vertex sum to zero. Segment
/// directions are stored `from -> to`; a ray's toward-vertex direction is the
/// negative of its stored physical direction.
pub fn validate_balancing(curve: &TropicalCurve, anchors: &[QPoint]) -> bool {
    let mut vertices: Vec<QPoint> = Vec::new();
    let mut push = |p: QPoint| {
        if !anchors.contains(&p) && !vertices.contains(&p) {
            vertices.push(p);
        }
    };
    for e in &curve.edges {
        match e.geometry {
            EdgeGeometry::Segment { from, to } => {
                push(from);
                push(to);
            }
            EdgeGeometry::Ray { base } => push(base),
        }
    }
    for v in vertices {
        let mut sum = (0i64, 0i64);
        for e in &curve.edges {
            let contribution = match e.geometry {
                EdgeGeometry::Segment { from, to } => {
                    if to == v {
                        Some(e.weighted_dir)
                    } else if from == v {
                        Some((-e.weighted_dir.0, -e.weighted_dir.1))
                    } else {
                        None
                    }
                }
                EdgeGeometry::Ray { base } => {
                    if base == v {
                        Some((-e.weighted_dir.0, -e.weighted_dir.1))
                    } else {
                        None
                    }
                }
            };
            if let Some((dx, dy)) = contribution {
                sum.0 += dx;
                sum.1 += dy;
            }
        }
        if sum != (0, 0) {
            return false;
        }
    }
    true
}

/// Basis coordinates over `(b11, b12, b21, b22, d1, d2)` and boundary
/// monomial for one classified curve.
fn class_data(
    curve: &TropicalCurve,
    cfg: &TropicalConfig,
) -> Result<([i64; 6], [i32; 4]), TropicalError> {
    let rays: Vec<&TropicalEdge> = curve.edges.iter().filter(|e| !e.is_bounded()).collect();
    let segments: Vec<&TropicalEdge> = curve.edges.iter().filter(|e| e.is_bounded()).collect();

    if curve.edges.len() == 1 && rays.len() == 1 {
        let ray = rays[0];
        let EdgeGeometry::Ray { base } = ray.geometry else {
            return Err(TropicalError::UnclassifiedCurve);
        };
        let anchor = if base == cfg.p_prime {
            Anchor::Prime
        } else if base == cfg.p_dprime {
            Anchor::DoublePrime
        } else {
            return Err(TropicalError::UnclassifiedCurve);
        };
        // Fixed dictionary: physical ray direction <-> smooth disc class.
        let entry = match (anchor, ray.weighted_dir) {
            (Anchor::Prime, (-1, 0)) => ([1, 0, 0, 0, 0, 0], [1, 0, 0, 0]),
            (Anchor::Prime, (0, -1)) => ([0, 1, 0, 0, 0, 0], [0, -1, 0, 0]),
            (Anchor::Prime, (1, 0)) => ([0, 0, 1, 0, 1, 0], [-1, 0, 0, 0]),
            (Anchor::Prime, (0, 1)) => ([0, 0, 0, 1, 0, 1], [0, 1, 0, 0]),
            (Anchor::DoublePrime, (1, 0)) => ([0, 0, 1, 0, 0, 0], [0, 0, 1, 0]),
            (Anchor::DoublePrime, (0, 1)) => ([0, 0, 0, 1, 0, 0], [0, 0, 0, -1]),
            (Anchor::DoublePrime, (-1, 0)) => ([1, 0, 0, 0, 1, 0], [0, 0, -1, 0]),
            (Anchor::DoublePrime, (0, -1)) => ([0, 1, 0, 0, 0, 1], [0, 0, 0, 1]),
            _ => return Err(TropicalError::UnclassifiedCurve),
        };
        return Ok(entry);
    }

    if curve.edges.len() == 3 && rays.len() == 1 && segments.len() == 2 {
        let ray = rays[0];
        let prime_edge = segments
            .iter()
            .find(
                |e| matches!(e.geometry, EdgeGeometry::Segment { from, .. } if from == cfg.p_prime),
            )
            .ok_or(TropicalError::UnclassifiedCurve)?;
        let (dx, dy) = prime_edge.weighted_dir;
        let (coords, monomial): ([i64; 6], [i32; 4]) = match ray.weighted_dir {
            (0, -1) => {
                // Label (0,1): prime edge (p, q).
                let (p, q) = (dx, dy);
                (
                    [0, 1, 0, 0, p, q + 1],
                    [-p as i32, q as i32, -p as i32, (q + 1) as i32],
                )
            }
            (0, 1) => {
                // Label (0,-1): prime edge (p, q+1).
                let (p, q) = (dx, dy - 1);
                (
                    [0, 0, 0, 1, p, q + 1],
                    [-p as i32, (q + 1) as i32, -p as i32, q as i32],
                )
            }
            (-1, 0) => {
                // Label (1,0): prime edge (p, q).
                let (p, q) = (dx, dy);
                (
                    [1, 0, 0, 0, p + 1, q],
                    [-p as i32, q as i32, -(p + 1) as i32, q as i32],
                )
            }
            (1, 0) => {
                // Label (-1,0): prime edge (p+1, q).
                let (p, q) = (dx - 1, dy);
                (
                    [0, 0, 1, 0, p + 1, q],
                    [-(p + 1) as i32, q as i32, -p as i32, q as i32],
                )
            }
            _ => return Err(TropicalError::UnclassifiedCurve),
        };
        return Ok((coords, monomial));
    }

    Err(TropicalError::UnclassifiedCurve)
}

/// Homology class and symplectic area of a validated enumerator output.
pub fn curve_class_and_area(
    curve: &TropicalCurve,
    cfg: &TropicalConfig,
    params: &ModelParams,
) -> Result<(DiscClass, Rat), TropicalError> {
    let (coords, monomial) = class_data(curve, cfg)?;
    let class = DiscClass::new(coords, crate::laurent::Monomial(monomial), params);
    let area = class.area;
    Ok((class, area))
}

/// Serialized row for curve tables.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CurveRecord {
    pub edges: Vec<EdgeRecord>,
    pub genus: u32,
    pub maslov: i64,
    pub anchors: Vec<Anchor>,
    pub class_coords: [i64; 6],
    pub boundary_monomial: [i32; 4],
    pub area: Rat,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EdgeRecord {
    pub weighted_dir: [i64; 2],
    pub bounded: bool,
    pub points: Vec<[Rat; 2]>,
}

pub fn curve_record(
    curve: &TropicalCurve,
    cfg: &TropicalConfig,
    params: &ModelParams,
) -> Result<CurveRecord, TropicalError> {
    let (class, area) = curve_class_and_area(curve, cfg, params)?;
    Ok(CurveRecord {
        edges: curve
            .edges
            .iter()
            .map(|e| EdgeRecord {
                weighted_dir: [e.weighted_dir.0, e.weighted_dir.1],
                bounded: e.is_bounded(),
                points: match e.geometry {
                    EdgeGeometry::Segment { from, to } => {
                        vec![[from.x, from.y], [to.x, to.y]]
                    }
                    EdgeGeometry::Ray { base } => vec![[base.x, base.y]],
                },
            })
            .collect(),
        genus: curve.genus,
        maslov: curve.maslov_index(),
        anchors: curve.anchors_used.clone(),
        class_coords: class.coords,
        boundary_monomial: class.boundary_monomial.0,
        area,
    })
}
