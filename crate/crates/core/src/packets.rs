//! Discrete-series L-packets and the packet character identity
//!
//! ```text
//!     (-1)^q Σ_{π ∈ Π_φ} Θ_π(g) = χ_λ(g)
//! ```
//!
//! between a real form with compact Cartan and its compact inner form.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::characters::{ds_character, weyl_character, HarishChandraParameter};
use crate::error::{Error, Result};
use crate::exact::Cyclotomic;
use crate::fixed_point::{tau_index_compact, tau_index_noncompact};
use crate::real_forms::InnerFormPair;
use crate::roots::{coset_representatives, RootSystem, Weight};
use crate::torus::{require_regular, sample_regular_points, TorusPoint};

/// The packet `{π_{w^{-1}λ} : [w] ∈ W_G/W_K}` attached to the orbit of `λ`.
#[derive(Debug, Clone)]
pub struct LPacket {
    pub pair: InnerFormPair,
    /// Dominant regular representative of the infinitesimal character.
    pub infinitesimal_character: Weight,
    /// Minimal-length left coset representatives, in shortlex order.
    pub representatives: Vec<usize>,
    /// `members[i]` has parameter `representatives[i]^{-1} λ`.
    pub members: Vec<HarishChandraParameter>,
}

impl LPacket {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Builds the packet with infinitesimal character `λ`. Any member of the
/// `W_G`-orbit may be passed.
pub fn build_packet(pair: &InnerFormPair, lambda: &Weight) -> Result<LPacket> {
    let rs = pair.root_system();
    let param = HarishChandraParameter::new(lambda.clone(), rs)?;
    let dominant = param.dominant().clone();
    let group = rs.weyl_group();
    let representatives = coset_representatives(group, &pair.noncompact().weyl_subgroup_k())?;
    let members = representatives
        .iter()
        .map(|&w| {
            let image = group.element(group.inverse(w)).act(&dominant);
            HarishChandraParameter::new(image, rs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LPacket {
        pair: pair.clone(),
        infinitesimal_character: dominant,
        representatives,
        members,
    })
}

/// How the two sides of the identity are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Character formulas.
    Characters,
    /// Holomorphic Lefschetz sums over torus-fixed points.
    FixedPoint,
    /// Both; they must agree before a verdict is issued.
    #[default]
    Both,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Characters => "characters",
            Route::FixedPoint => "fixed_point",
            Route::Both => "both",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "characters" | "character" => Ok(Route::Characters),
            "fixed_point" | "fixed-point" | "fixedpoint" => Ok(Route::FixedPoint),
            "both" => Ok(Route::Both),
            other => Err(Error::Parse(format!("unknown route '{other}'"))),
        }
    }
}

/// Serialized form of an exact cyclotomic value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclotomicRecord {
    /// `N` of the field `Q(ζ_N)` the coefficients refer to.
    pub order: u64,
    /// `(k, numerator, denominator)`: the value is `Σ num/den · ζ_N^k`.
    pub terms: Vec<(u64, String, String)>,
    /// `[re, im]`, for reading only.
    pub float: [f64; 2],
}

impl From<&Cyclotomic> for CyclotomicRecord {
    fn from(c: &Cyclotomic) -> Self {
        let z = c.to_complex();
        CyclotomicRecord {
            order: c.order(),
            terms: c
                .terms()
                .into_iter()
                .map(|(k, n, d)| (k, n.to_string(), d.to_string()))
                .collect(),
            float: [z.re, z.im],
        }
    }
}

fn serialize_cyclotomic<S: Serializer>(c: &Cyclotomic, s: S) -> std::result::Result<S::Ok, S::Error> {
    CyclotomicRecord::from(c).serialize(s)
}

fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Verdict of the identity at one `(λ, g)`.
#[derive(Debug, Clone, Serialize)]
pub struct PacketReport {
    pub pair: String,
    #[serde(serialize_with = "serialize_display")]
    pub lambda: Weight,
    pub point: TorusPoint,
    pub q: usize,
    pub packet_size: usize,
    pub route: Route,
    /// `(-1)^q Σ_{Π_φ} Θ_π(g)`.
    #[serde(serialize_with = "serialize_cyclotomic")]
    pub lhs: Cyclotomic,
    /// `χ_λ(g)` for the compact form.
    #[serde(serialize_with = "serialize_cyclotomic")]
    pub rhs: Cyclotomic,
    pub equal: bool,
    /// `N` with `g ∈ μ_N`-coordinates: every value lies in `Q(ζ_N)`.
    pub order: u64,
}

fn character_route(packet: &LPacket, g: &TorusPoint) -> Result<(Cyclotomic, Cyclotomic)> {
    let spec = packet.pair.noncompact();
    let rs = spec.root_system();
    let mut sum = Cyclotomic::from_integer(0);
    for member in &packet.members {
        sum = &sum + &ds_character(member, spec, g)?;
    }
    let lhs = if spec.sign() < 0 { -sum } else { sum };
    let dominant = HarishChandraParameter::new(packet.infinitesimal_character.clone(), rs)?;
    let rhs = weyl_character(&dominant, g, rs)?;
    Ok((lhs, rhs))
}

fn fixed_point_route(
    pair: &InnerFormPair,
    param: &HarishChandraParameter,
    g: &TorusPoint,
) -> Result<(Cyclotomic, Cyclotomic)> {
    let spec = pair.noncompact();
    let rs = spec.root_system();
    let reps = coset_representatives(rs.weyl_group(), &spec.weyl_subgroup_k())?;
    let mut lhs = Cyclotomic::from_integer(0);
    for &w in &reps {
        lhs = &lhs + &tau_index_noncompact(param, spec, w, g)?;
    }
    let rhs = tau_index_compact(param, g, rs)?;
    Ok((lhs, rhs))
}

/// Evaluates both sides of the identity for the packet of `λ` at `g`.
pub fn verify_identity(pair: &InnerFormPair, lambda: &Weight, g: &TorusPoint, route: Route) -> Result<PacketReport> {
    let rs = pair.root_system();
    require_regular(g, rs)?;
    let param = HarishChandraParameter::new(lambda.clone(), rs)?;
    let packet = build_packet(pair, lambda)?;
    let (lhs, rhs) = match route {
        Route::Characters => character_route(&packet, g)?,
        Route::FixedPoint => fixed_point_route(pair, &param, g)?,
        Route::Both => {
            let by_characters = character_route(&packet, g)?;
            let by_fixed_points = fixed_point_route(pair, &param, g)?;
            if by_characters != by_fixed_points {
                return Err(Error::RouteMismatch {
                    pair: pair.name().to_string(),
                    lambda: lambda.to_string(),
                    point: g.to_string(),
                });
            }
            by_characters
        }
    };
    let equal = lhs == rhs;
    Ok(PacketReport {
        pair: pair.name().to_string(),
        lambda: lambda.clone(),
        point: g.clone(),
        q: pair.noncompact().q_and_dim().0,
        packet_size: packet.len(),
        route,
        lhs,
        rhs,
        equal,
        order: g.field_order(),
    })
}

/// A set of Harish-Chandra parameters to sweep over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaRange {
    /// `λ = n ρ` for `n` in `lo..=hi`.
    RhoMultiples {
        lo: i64,
        hi: i64,
    },
    /// `λ = ρ + μ` with every fundamental coordinate of `μ` in `lo..=hi`.
    ShiftedBox {
        lo: i64,
        hi: i64,
    },
    Explicit(Vec<Weight>),
}

impl LambdaRange {
    /// The weights in a fixed order (the box is enumerated with the first
    /// coordinate varying slowest).
    pub fn weights(&self, rs: &RootSystem) -> Vec<Weight> {
        match self {
            LambdaRange::RhoMultiples { lo, hi } => (*lo..=*hi).map(|n| rs.rho().scale_int(n)).collect(),
            LambdaRange::ShiftedBox { lo, hi } => {
                if lo > hi {
                    return Vec::new();
                }
                let rho = rs.rho();
                let mut out = Vec::new();
                let mut mu = vec![*lo; rs.rank()];
                loop {
                    out.push(&rho + &Weight::from_ints(&mu));
                    let Some(pos) = (0..mu.len()).rev().find(|&i| mu[i] < *hi) else {
                        break;
                    };
                    mu[pos] += 1;
                    mu[pos + 1..].iter_mut().for_each(|m| *m = *lo);
                }
                out
            }
            LambdaRange::Explicit(ws) => ws.clone(),
        }
    }
}

/// A failed `(λ, g)` evaluation inside a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepFailure {
    #[serde(serialize_with = "serialize_display")]
    pub lambda: Weight,
    pub point: TorusPoint,
    #[serde(serialize_with = "serialize_display")]
    pub error: Error,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    pub equal: usize,
    pub unequal: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub reports: Vec<PacketReport>,
    pub failures: Vec<SweepFailure>,
    pub summary: SweepSummary,
}

impl SweepOutcome {
    /// Every evaluation succeeded and every report is equal.
    pub fn all_passed(&self) -> bool {
        self.summary.errors == 0 && self.summary.unequal == 0
    }
}

/// Verifies the identity at every `(λ, g)` in `lambdas × points`. Reports are
/// ordered by `λ` first, then by point, regardless of scheduling; per-point
/// errors are collected rather than aborting the sweep.
pub fn sweep(pair: &InnerFormPair, lambdas: &[Weight], points: &[TorusPoint], route: Route) -> SweepOutcome {
    let tasks: Vec<(&Weight, &TorusPoint)> = lambdas
        .iter()
        .flat_map(|l| points.iter().map(move |p| (l, p)))
        .collect();
    let results: Vec<Result<PacketReport>> = tasks
        .par_iter()
        .map(|(l, p)| verify_identity(pair, l, p, route))
        .collect();

    let mut outcome = SweepOutcome {
        reports: Vec::new(),
        failures: Vec::new(),
        summary: SweepSummary {
            total: tasks.len(),
            ..SweepSummary::default()
        },
    };
    for ((l, p), r) in tasks.into_iter().zip(results) {
        match r {
            Ok(report) => {
                if report.equal {
                    outcome.summary.equal += 1;
                } else {
                    outcome.summary.unequal += 1;
                }
                outcome.reports.push(report);
            }
            Err(error) => {
                outcome.summary.errors += 1;
                outcome.failures.push(SweepFailure {
                    lambda: l.clone(),
                    point: p.clone(),
                    error,
                });
            }
        }
    }
    outcome
}

/// [`sweep`] over `count` seeded regular points with denominators `≤ bound`.
pub fn sweep_sampled(
    pair: &InnerFormPair,
    range: &LambdaRange,
    count: usize,
    bound: u64,
    seed: u64,
    route: Route,
) -> Result<SweepOutcome> {
    let rs = pair.root_system();
    let lambdas = range.weights(rs);
    if lambdas.is_empty() {
        return Ok(sweep(pair, &[], &[], route));
    }
    let points = sample_regular_points(rs, count, bound, seed)?;
    Ok(sweep(pair, &lambdas, &points, route))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real_forms::Catalog;

    fn pair(name: &str) -> InnerFormPair {
        Catalog::builtin().lookup(name).unwrap().clone()
    }

    #[test]
    fn sl2_packet() {
        let p = pair("sl2R/su2");
        let rs = p.root_system();
        let packet = build_packet(&p, &rs.rho().scale_int(3)).unwrap();
        let lambdas: Vec<Weight> = packet.members.iter().map(|m| m.lambda().clone()).collect();
        assert_eq!(lambdas, vec![Weight::from_ints(&[3]), Weight::from_ints(&[-3])]);
        let compact = p.compact_with_itself();
        assert_eq!(build_packet(&compact, &rs.rho().scale_int(3)).unwrap().len(), 1);
    }

    #[test]
    fn sl2_point_value() {
        let p = pair("sl2R/su2");
        let lambda = p.root_system().rho().scale_int(3);
        let g = TorusPoint::parse("1/4").unwrap();
        let r = verify_identity(&p, &lambda, &g, Route::Both).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, Cyclotomic::from_integer(-1));
        assert_eq!(r.rhs, Cyclotomic::from_integer(-1));
        assert_eq!(r.q, 1);
    }

    #[test]
    fn errors_propagate() {
        let p = pair("sl2R/su2");
        let lambda = p.root_system().rho().scale_int(3);
        let half = TorusPoint::parse("1/2").unwrap();
        assert!(matches!(
            verify_identity(&p, &lambda, &half, Route::Both),
            Err(Error::SingularPoint { .. })
        ));
        let g = TorusPoint::parse("1/5").unwrap();
        assert!(matches!(
            verify_identity(&p, &Weight::zero(1), &g, Route::Characters),
            Err(Error::SingularWeight { .. })
        ));
    }

    #[test]
    fn box_range_order() {
        let p = pair("su21/su3");
        let ws = LambdaRange::ShiftedBox { lo: 0, hi: 1 }.weights(p.root_system());
        let coords: Vec<Vec<i64>> = ws.iter().map(|w| w.to_ints().unwrap()).collect();
        assert_eq!(coords, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert!(LambdaRange::ShiftedBox { lo: 1, hi: 0 }
            .weights(p.root_system())
            .is_empty());
    }

    #[test]
    fn empty_sweep() {
        let p = pair("sl2R/su2");
        let out = sweep_sampled(&p, &LambdaRange::RhoMultiples { lo: 1, hi: 0 }, 5, 10, 0, Route::Both).unwrap();
        assert!(out.reports.is_empty());
        assert_eq!(out.summary.total, 0);
    }

    #[test]
    fn route_round_trip() {
        for r in [Route::Characters, Route::FixedPoint, Route::Both] {
            assert_eq!(r.to_string().parse::<Route>().unwrap(), r);
        }
    }
}
