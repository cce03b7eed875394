//! Exact enumeration of the fixed-point strata of a diagonal cyclic action
//! on the Heisenberg nilmanifold.
//!
//! Points of the nilmanifold are left cosets of the lattice subgroup whose
//! entries lie in Z[zeta_6]; canonical representatives keep every
//! coordinate inside the fundamental square of C/Lambda. Solving
//! rho^k(g) = gamma * g coordinatewise gives isolated points when no
//! multiplier equals 1 and parametrized surfaces {(u1, p, s*u1 + q)} when
//! the first multiplier is 1. Every returned stratum is re-verified through
//! the group law, never trusted from the algebra.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ce::AlgebraSpec;
use crate::equivariance::ActionSpec;
use crate::scalar::{CycloScalar, Rational};

#[derive(Debug, Error)]
pub enum FixedLocusError {
    #[error("the lattice model needs exactly three conjugate pairs")]
    NotThreePairs,
    #[error("eigenvalue of `{0}` is not a power of zeta_6, so it does not preserve the lattice")]
    EigenvalueNotSixthRoot(String),
    #[error("eigenvalues do not define a group automorphism (third exponent must be the sum of the first two mod 6)")]
    NotAutomorphism,
    #[error("coordinate {0} lies outside Q(zeta_6)")]
    CoordinateOutsideField(String),
    #[error("unsupported stratum shape for power {0}: a middle or last multiplier equals 1")]
    UnsupportedShape(u32),
    #[error("self-verification failed for a computed stratum of power {0}")]
    SelfVerificationFailed(u32),
    #[error("orbit of a stratum leaves the computed stratum list")]
    OrbitEscape,
}

/// An element x + y*zeta_6 of Q(zeta_6), the coordinate field of the torus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QZeta6 {
    pub x: Rational,
    pub y: Rational,
}

impl QZeta6 {
    pub fn new(x: Rational, y: Rational) -> QZeta6 {
        QZeta6 { x, y }
    }

    pub fn zero() -> QZeta6 {
        QZeta6::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> QZeta6 {
        QZeta6::new(Rational::one(), Rational::zero())
    }

    pub fn from_ints(x: i64, y: i64) -> QZeta6 {
        QZeta6::new(
            Rational::from(BigInt::from(x)),
            Rational::from(BigInt::from(y)),
        )
    }

    /// zeta_6^k using zeta^2 = zeta - 1.
    pub fn zeta_pow(k: i64) -> QZeta6 {
        match k.rem_euclid(6) {
            0 => QZeta6::from_ints(1, 0),
            1 => QZeta6::from_ints(0, 1),
            2 => QZeta6::from_ints(-1, 1),
            3 => QZeta6::from_ints(-1, 0),
            4 => QZeta6::from_ints(0, -1),
            _ => QZeta6::from_ints(1, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn add(&self, o: &QZeta6) -> QZeta6 {
        QZeta6::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &QZeta6) -> QZeta6 {
        QZeta6::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> QZeta6 {
        QZeta6::new(-&self.x, -&self.y)
    }

    pub fn mul(&self, o: &QZeta6) -> QZeta6 {
        // (x + y zeta)(x' + y' zeta) with zeta^2 = zeta - 1.
        let xx = &self.x * &o.x;
        let yy = &self.y * &o.y;
        let cross = &(&self.x * &o.y) + &(&self.y * &o.x);
        QZeta6::new(&xx - &yy, &cross + &yy)
    }

    pub fn conj(&self) -> QZeta6 {
        QZeta6::new(&self.x + &self.y, -&self.y)
    }

    /// The rational norm x^2 + xy + y^2.
    pub fn norm(&self) -> Rational {
        &(&self.x * &self.x) + &(&self.x * &self.y) + &(&self.y * &self.y)
    }

    pub fn inv(&self) -> Option<QZeta6> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(QZeta6::new(&c.x / &n, &c.y / &n))
    }

    /// True when the element lies in the lattice Z[zeta_6].
    pub fn is_lattice(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Canonical representative modulo the lattice: both coordinates in [0, 1).
    pub fn frac(&self) -> QZeta6 {
        QZeta6::new(&self.x - &self.x.floor(), &self.y - &self.y.floor())
    }

    /// The lattice part dropped by `frac`.
    pub fn floor_lattice(&self) -> QZeta6 {
        QZeta6::new(self.x.floor(), self.y.floor())
    }

    pub fn to_cyclo(&self) -> CycloScalar {
        // zeta_6 = z^2 in the scalar field.
        let mut c = CycloScalar::from_rational(self.x.clone());
        c = &c + &CycloScalar::zeta6_pow(1).scale(&self.y);
        c
    }

    pub fn from_cyclo(c: &CycloScalar) -> Result<QZeta6, FixedLocusError> {
        let co = c.coefficients();
        if !co[1].is_zero() || !co[3].is_zero() {
            return Err(FixedLocusError::CoordinateOutsideField(c.to_string()));
        }
        Ok(QZeta6::new(co[0].clone(), co[2].clone()))
    }
}

impl fmt::Display for QZeta6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cyclo())
    }
}

impl fmt::Debug for QZeta6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A lattice element a + b*zeta_6 of Z[zeta_6].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub a: BigInt,
    pub b: BigInt,
}

impl LatticePoint {
    pub fn to_field(&self) -> QZeta6 {
        QZeta6::new(
            BigRational::from(self.a.clone()),
            BigRational::from(self.b.clone()),
        )
    }

    pub fn from_field(v: &QZeta6) -> Option<LatticePoint> {
        if !v.is_lattice() {
            return None;
        }
        Some(LatticePoint {
            a: v.x.to_integer(),
            b: v.y.to_integer(),
        })
    }
}

/// A representative of a point of the nilmanifold, with coordinates in
/// Q(zeta_6).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeisPoint {
    pub u1: QZeta6,
    pub u2: QZeta6,
    pub u3: QZeta6,
}

impl HeisPoint {
    pub fn new(u1: QZeta6, u2: QZeta6, u3: QZeta6) -> HeisPoint {
        HeisPoint { u1, u2, u3 }
    }

    pub fn identity() -> HeisPoint {
        HeisPoint::new(QZeta6::zero(), QZeta6::zero(), QZeta6::zero())
    }

    pub fn from_cyclo(coords: [&CycloScalar; 3]) -> Result<HeisPoint, FixedLocusError> {
        Ok(HeisPoint::new(
            QZeta6::from_cyclo(coords[0])?,
            QZeta6::from_cyclo(coords[1])?,
            QZeta6::from_cyclo(coords[2])?,
        ))
    }

    pub fn to_cyclo(&self) -> [CycloScalar; 3] {
        [self.u1.to_cyclo(), self.u2.to_cyclo(), self.u3.to_cyclo()]
    }
}

impl fmt::Display for HeisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u1, self.u2, self.u3)
    }
}

impl fmt::Debug for HeisPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The Heisenberg product (u1+v1, u2+v2, u3+v3+u2*v1).
pub fn group_mul(g: &HeisPoint, h: &HeisPoint) -> HeisPoint {
    HeisPoint::new(
        g.u1.add(&h.u1),
        g.u2.add(&h.u2),
        g.u3.add(&h.u3).add(&g.u2.mul(&h.u1)),
    )
}

pub fn group_inverse(g: &HeisPoint) -> HeisPoint {
    HeisPoint::new(
        g.u1.neg(),
        g.u2.neg(),
        g.u3.neg().add(&g.u2.mul(&g.u1)),
    )
}

/// The diagonal action on the group: exponents of zeta_6 per coordinate.
#[derive(Clone, Debug)]
pub struct LatticeAction {
    order: u32,
    exps: [i64; 3],
}

impl LatticeAction {
    pub fn new(order: u32, exps: [i64; 3]) -> Result<LatticeAction, FixedLocusError> {
        if (exps[0] + exps[1] - exps[2]).rem_euclid(6) != 0 {
            return Err(FixedLocusError::NotAutomorphism);
        }
        Ok(LatticeAction { order, exps })
    }

    /// Extract the lattice action from a diagonal action on forms: the
    /// coordinate scalings equal the eigenvalues of the coordinate 1-forms.
    pub fn from_action(spec: &AlgebraSpec, action: &ActionSpec) -> Result<LatticeAction, FixedLocusError> {
        if spec.generators().pair_count() != 3 {
            return Err(FixedLocusError::NotThreePairs);
        }
        let mut exps = [0i64; 3];
        for (i, e) in exps.iter_mut().enumerate() {
            let eigen = action.eigenvalue(i);
            let Some(k) = (0..6).find(|k| CycloScalar::zeta6_pow(*k) == *eigen) else {
                return Err(FixedLocusError::EigenvalueNotSixthRoot(
                    spec.generators().name(i).to_string(),
                ));
            };
            *e = k;
        }
        LatticeAction::new(action.order(), exps)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> [i64; 3] {
        self.exps
    }

    /// Multiplier of coordinate `i` under the k-th power of the action.
    pub fn multiplier(&self, i: usize, k: u32) -> QZeta6 {
        QZeta6::zeta_pow(self.exps[i] * k as i64)
    }
}

/// Coordinatewise scaling by (zeta^{e1 k}, zeta^{e2 k}, zeta^{e3 k}); a
/// group automorphism because e3 = e1 + e2.
pub fn rho_power(action: &LatticeAction, k: u32, g: &HeisPoint) -> HeisPoint {
    HeisPoint::new(
        action.multiplier(0, k).mul(&g.u1),
        action.multiplier(1, k).mul(&g.u2),
        action.multiplier(2, k).mul(&g.u3),
    )
}

/// Canonical coset representative: left-multiply by lattice elements to
/// bring u1, then u2, then u3 into the fundamental square, with the group
/// twist feeding the second step into the third coordinate.
pub fn normalize(g: &HeisPoint) -> HeisPoint {
    let u1 = g.u1.frac();
    let gamma2 = g.u2.floor_lattice().neg();
    let u2 = g.u2.frac();
    let u3 = g.u3.add(&gamma2.mul(&u1)).frac();
    HeisPoint::new(u1, u2, u3)
}

/// Solutions on the torus of (m - 1) u in Lambda.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusFixedSet {
    /// Multiplier 1 fixes all of C/Lambda.
    All,
    Points(Vec<QZeta6>),
}

impl TorusFixedSet {
    pub fn points(&self) -> Option<&[QZeta6]> {
        match self {
            TorusFixedSet::All => None,
            TorusFixedSet::Points(p) => Some(p),
        }
    }
}

/// Fixed points of multiplication by a sixth root of unity on C/Lambda:
/// representatives of (m-1)^{-1} Lambda / Lambda. Their count equals the
/// integer norm of (m - 1).
pub fn torus_fixed_points(m: &QZeta6) -> TorusFixedSet {
    if m.is_one() {
        return TorusFixedSet::All;
    }
    let w = m.sub(&QZeta6::one()).inv().expect("m != 1");
    let gens = [w.frac(), w.mul(&QZeta6::zeta_pow(1)).frac()];
    let mut set: BTreeSet<QZeta6> = BTreeSet::new();
    set.insert(QZeta6::zero());
    let mut queue: Vec<QZeta6> = set.iter().cloned().collect();
    while let Some(p) = queue.pop() {
        for g in &gens {
            let q = p.add(g).frac();
            if set.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    let expected = m.sub(&QZeta6::one()).norm();
    assert_eq!(
        Rational::from(BigInt::from(set.len() as i64)),
        expected,
        "torsion subgroup size must equal the norm"
    );
    TorusFixedSet::Points(set.into_iter().collect())
}

/// A fixed-point component of one power of the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumKind {
    Point(HeisPoint),
    /// The parametrized family {(u1, level, slope*u1 + offset)}.
    Surface {
        level: QZeta6,
        slope: QZeta6,
        offset: QZeta6,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub power: u32,
    pub kind: StratumKind,
    /// Elements k of the cyclic group fixing the stratum generically.
    pub isotropy: Vec<u32>,
}

impl Stratum {
    pub fn is_surface(&self) -> bool {
        matches!(self.kind, StratumKind::Surface { .. })
    }
}

/// Name an isotropy subgroup of an order-6 group the way the quotient
/// construction does.
pub fn isotropy_name(elements: &[u32], order: u32) -> String {
    if order == 6 {
        match elements {
            [0] => return "trivial".to_string(),
            [0, 3] => return "H = {1, rho^3}".to_string(),
            [0, 2, 4] => return "K = {1, rho^2, rho^4}".to_string(),
            [0, 1, 2, 3, 4, 5] => return "full Z6".to_string(),
            _ => {}
        }
    }
    format!(
        "{{{}}}",
        elements
            .iter()
            .map(|k| format!("rho^{k}"))
            .collect::<Vec<_>>()
            .join(", ")
    )
}

/// Isotropy of a point: all k with rho^k(g) in the same coset.
pub fn isotropy(action: &LatticeAction, g: &HeisPoint) -> Vec<u32> {
    let base = normalize(g);
    (0..action.order())
        .filter(|k| normalize(&rho_power(action, *k, &base)) == base)
        .collect()
}

fn surface_point(level: &QZeta6, slope: &QZeta6, offset: &QZeta6, u1: &QZeta6) -> HeisPoint {
    HeisPoint::new(u1.clone(), level.clone(), slope.mul(u1).add(offset))
}

/// Generic isotropy of a surface: sampled at two transcendence-free points
/// whose denominators (5 and 7) cannot occur in any torsion condition, so
/// the intersection of the sampled isotropies is exact.
fn surface_isotropy(
    action: &LatticeAction,
    level: &QZeta6,
    slope: &QZeta6,
    offset: &QZeta6,
) -> Vec<u32> {
    let s1 = QZeta6::new(crate::scalar::rat(1, 5), Rational::zero());
    let s2 = QZeta6::new(crate::scalar::rat(1, 7), Rational::zero());
    let i1 = isotropy(action, &surface_point(level, slope, offset, &s1));
    let i2 = isotropy(action, &surface_point(level, slope, offset, &s2));
    i1.into_iter().filter(|k| i2.contains(k)).collect()
}

/// Solve rho^k(g) = gamma * g coordinatewise and return the strata, each
/// re-verified through rho_power and normalize.
pub fn fixed_strata(action: &LatticeAction, k: u32) -> Result<Vec<Stratum>, FixedLocusError> {
    let m1 = action.multiplier(0, k);
    let m2 = action.multiplier(1, k);
    let m3 = action.multiplier(2, k);
    if m2.is_one() || m3.is_one() {
        return Err(FixedLocusError::UnsupportedShape(k));
    }
    let u2_set = match torus_fixed_points(&m2) {
        TorusFixedSet::Points(p) => p,
        TorusFixedSet::All => unreachable!(),
    };
    let u3_torsion = match torus_fixed_points(&m3) {
        TorusFixedSet::Points(p) => p,
        TorusFixedSet::All => unreachable!(),
    };
    let w3 = m3.sub(&QZeta6::one()).inv().expect("m3 != 1");

    let mut strata = Vec::new();
    if m1.is_one() {
        // u1 free: one parametrized surface per (level, offset).
        for level in &u2_set {
            let lambda2 = m2.sub(&QZeta6::one()).mul(level);
            debug_assert!(lambda2.is_lattice());
            let slope = w3.mul(&lambda2);
            for offset in &u3_torsion {
                // Membership self-check at generic parameters.
                for sample in [
                    QZeta6::zero(),
                    QZeta6::new(crate::scalar::rat(1, 5), crate::scalar::rat(2, 5)),
                ] {
                    let p = surface_point(level, &slope, offset, &sample);
                    if normalize(&rho_power(action, k, &p)) != normalize(&p) {
                        return Err(FixedLocusError::SelfVerificationFailed(k));
                    }
                }
                strata.push(Stratum {
                    power: k,
                    isotropy: surface_isotropy(action, level, &slope, offset),
                    kind: StratumKind::Surface {
                        level: level.clone(),
                        slope: slope.clone(),
                        offset: offset.clone(),
                    },
                });
            }
        }
    } else {
        let u1_set = match torus_fixed_points(&m1) {
            TorusFixedSet::Points(p) => p,
            TorusFixedSet::All => unreachable!(),
        };
        let mut seen = BTreeSet::new();
        for u1 in &u1_set {
            for u2 in &u2_set {
                let lambda2 = m2.sub(&QZeta6::one()).mul(u2);
                debug_assert!(lambda2.is_lattice());
                let base = w3.mul(&lambda2.mul(u1));
                for t in &u3_torsion {
                    let u3 = base.add(t).frac();
                    let p = normalize(&HeisPoint::new(u1.clone(), u2.clone(), u3));
                    if normalize(&rho_power(action, k, &p)) != p {
                        return Err(FixedLocusError::SelfVerificationFailed(k));
                    }
                    seen.insert(p);
                }
            }
        }
        for p in seen {
            strata.push(Stratum {
                power: k,
                isotropy: isotropy(action, &p),
                kind: StratumKind::Point(p),
            });
        }
    }
    Ok(strata)
}

/// A group orbit on strata with a canonical representative.
#[derive(Clone, Debug)]
pub struct StratumOrbit {
    /// Indices into the input stratum list, sorted.
    pub members: Vec<usize>,
    pub representative: usize,
}

fn act_on_stratum(action: &LatticeAction, s: &Stratum) -> Result<StratumKind, FixedLocusError> {
    Ok(match &s.kind {
        StratumKind::Point(p) => StratumKind::Point(normalize(&rho_power(action, 1, p))),
        StratumKind::Surface {
            level,
            slope,
            offset,
        } => {
            // Image family: level zeta^{e2} p, slope zeta^{e3-e1} s, offset
            // zeta^{e3} q; re-canonicalizing the level by a lattice shift
            // delta moves the slope by the same delta.
            let [e1, e2, e3] = action.exponents();
            let level_img = QZeta6::zeta_pow(e2).mul(level);
            let level_new = level_img.frac();
            let delta = level_new.sub(&level_img);
            let slope_new = QZeta6::zeta_pow(e3 - e1).mul(slope).add(&delta);
            let offset_new = QZeta6::zeta_pow(e3).mul(offset).frac();
            StratumKind::Surface {
                level: level_new,
                slope: slope_new,
                offset: offset_new,
            }
        }
    })
}

/// Partition strata into orbits of the cyclic action.
pub fn orbit_decomposition(
    action: &LatticeAction,
    strata: &[Stratum],
) -> Result<Vec<StratumOrbit>, FixedLocusError> {
    let find = |kind: &StratumKind| strata.iter().position(|s| &s.kind == kind);
    let mut assigned = vec![false; strata.len()];
    let mut orbits = Vec::new();
    for start in 0..strata.len() {
        if assigned[start] {
            continue;
        }
        let mut members = vec![start];
        assigned[start] = true;
        let mut current = strata[start].kind.clone();
        loop {
            current = act_on_stratum(
                action,
                &Stratum {
                    power: strata[start].power,
                    kind: current,
                    isotropy: Vec::new(),
                },
            )?;
            let idx = find(&current).ok_or(FixedLocusError::OrbitEscape)?;
            if idx == start {
                break;
            }
            if !assigned[idx] {
                assigned[idx] = true;
                members.push(idx);
            }
        }
        members.sort_unstable();
        orbits.push(StratumOrbit {
            representative: members[0],
            members,
        });
    }
    Ok(orbits)
}

/// Ramification data of one coordinate curve under the induced
/// multiplication action on C/Lambda.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CurveQuotient {
    pub coordinate: String,
    /// Degree of the quotient map, the order of the multiplier.
    pub degree: u32,
    /// Stabilizer orders (> 1) of the points with nontrivial stabilizer,
    /// listed with multiplicity in decreasing order.
    pub ramification_orders: Vec<u32>,
}

/// Stabilizer orders for the cyclic group generated by multiplication with
/// zeta_6^exp on the torus.
pub fn curve_quotient(name: &str, exp: i64) -> CurveQuotient {
    let mut degree = 1u32;
    while !QZeta6::zeta_pow(exp * degree as i64).is_one() {
        degree += 1;
    }
    let mut special: BTreeSet<QZeta6> = BTreeSet::new();
    for j in 1..degree {
        if let TorusFixedSet::Points(pts) = torus_fixed_points(&QZeta6::zeta_pow(exp * j as i64)) {
            special.extend(pts);
        }
    }
    let mut orders: Vec<u32> = special
        .iter()
        .map(|u| {
            (0..degree)
                .filter(|j| {
                    QZeta6::zeta_pow(exp * *j as i64)
                        .sub(&QZeta6::one())
                        .mul(u)
                        .is_lattice()
                })
                .count() as u32
        })
        .filter(|o| *o > 1)
        .collect();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    CurveQuotient {
        coordinate: name.to_string(),
        degree,
        ramification_orders: orders,
    }
}
