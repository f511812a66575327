//! Holomorphic Lefschetz sums over the torus-fixed points of `G_c/T` and
//! `G/T`, and the regrouping of the compact sum over `W_G/W_K`.
//!
//! The fixed points of `T` on `G_c/T` are labelled by `W_G`, those on `G/T`
//! by `W_K`. At the fixed point `w` a line bundle of weight `ν` over a
//! complex structure with positive system `c·R^+` contributes
//!
//! ```text
//!     e^{wν}(g) / Π_{α ∈ (w c) R^+} (1 - e^{-α}(g)).
//! ```

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::characters::HarishChandraParameter;
use crate::error::{Error, Result};
use crate::exact::Cyclotomic;
use crate::real_forms::{InnerFormPair, RealFormSpec};
use crate::roots::{coset_representatives, RootSystem, Weight};
use crate::torus::{evaluate_weight, require_regular, ReducedExponent, TorusPoint};

/// A fixed point `wT` together with the line bundle weight and the chamber
/// `c·R^+` of the complex structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub point: usize,
    pub bundle_weight: Weight,
    pub chamber: usize,
}

impl FixedPointDatum {
    /// The same datum moved to the base point: `(e, wν, w c)`.
    pub fn transported(&self, rs: &RootSystem) -> FixedPointDatum {
        let group = rs.weyl_group();
        FixedPointDatum {
            point: group.identity(),
            bundle_weight: group.element(self.point).act(&self.bundle_weight),
            chamber: group.mul(self.point, self.chamber),
        }
    }
}

/// Local contribution of one fixed point to `τ_g` of the index.
pub fn local_contribution(datum: &FixedPointDatum, g: &TorusPoint, rs: &RootSystem) -> Result<Cyclotomic> {
    require_regular(g, rs)?;
    contribution_at_regular(datum, g, rs)
}

fn contribution_at_regular(datum: &FixedPointDatum, g: &TorusPoint, rs: &RootSystem) -> Result<Cyclotomic> {
    if !datum.bundle_weight.is_integral() {
        return Err(Error::NonIntegralWeight(datum.bundle_weight.to_string()));
    }
    let group = rs.weyl_group();
    let w = group.element(datum.point);
    let numerator = evaluate_weight(&w.act(&datum.bundle_weight), g)?;
    let frame = group.element(group.mul(datum.point, datum.chamber));
    let mut value = numerator;
    for alpha in rs.chamber_roots(frame) {
        let minus = rs.root(rs.negative_of(alpha)).as_weight();
        value = &value * &inverse_one_minus(g.reduced_exponent(&minus)?, g)?;
    }
    Ok(value)
}

type InverseCache = RwLock<HashMap<(u64, u64), Cyclotomic>>;
static INVERSES: OnceLock<InverseCache> = OnceLock::new();

/// `1 / (1 - ζ_n^k)`, memoized.
fn inverse_one_minus((k, n): ReducedExponent, g: &TorusPoint) -> Result<Cyclotomic> {
    if k == 0 {
        return Err(Error::SingularPoint {
            point: g.to_string(),
            root: "(fixed-point denominator vanishes)".into(),
        });
    }
    let cache = INVERSES.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("inverse cache poisoned").get(&(n, k)) {
        return Ok(v.clone());
    }
    let factor = Cyclotomic::one() - Cyclotomic::root_of_unity(n, k as i64);
    let inv = factor.inv()?;
    cache
        .write()
        .expect("inverse cache poisoned")
        .insert((n, k), inv.clone());
    Ok(inv)
}

/// Fixed-point data of `G_c/T` for the bundle `L_{λ-ρ_λ}`.
pub fn compact_fixed_points(lambda: &HarishChandraParameter, rs: &RootSystem) -> Vec<FixedPointDatum> {
    let nu = lambda.shifted();
    (0..rs.weyl_group().len())
        .map(|u| FixedPointDatum {
            point: u,
            bundle_weight: nu.clone(),
            chamber: lambda.chamber(),
        })
        .collect()
}

/// Fixed-point data of `G/T` for the coset `[w]`: bundle `L_{w^{-1}(λ-ρ_λ)}`
/// over the complex structure `w^{-1} R_λ^+`, one datum per element of `W_K`.
pub fn noncompact_fixed_points(
    lambda: &HarishChandraParameter,
    spec: &RealFormSpec,
    twist: usize,
) -> Vec<FixedPointDatum> {
    let rs = spec.root_system();
    let group = rs.weyl_group();
    let w_inv = group.inverse(twist);
    let nu = group.element(w_inv).act(&lambda.shifted());
    let chamber = group.mul(w_inv, lambda.chamber());
    spec.weyl_subgroup_k()
        .members()
        .iter()
        .map(|&k| FixedPointDatum {
            point: k,
            bundle_weight: nu.clone(),
            chamber,
        })
        .collect()
}

fn sum_contributions(data: &[FixedPointDatum], g: &TorusPoint, rs: &RootSystem) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::from_integer(0);
    for d in data {
        acc = &acc + &contribution_at_regular(d, g, rs)?;
    }
    Ok(acc)
}

/// `τ_g` of the Dolbeault index on `G_c/T` coupled to `L_{λ-ρ}`: the full
/// Lefschetz sum over `W_G`.
pub fn tau_index_compact(lambda: &HarishChandraParameter, g: &TorusPoint, rs: &RootSystem) -> Result<Cyclotomic> {
    require_regular(g, rs)?;
    sum_contributions(&compact_fixed_points(lambda, rs), g, rs)
}

/// `τ_g` of the Dolbeault index on `G/T` coupled to `L_{w^{-1}(λ-ρ)}`: the
/// Lefschetz sum over the `W_K` fixed points.
pub fn tau_index_noncompact(
    lambda: &HarishChandraParameter,
    spec: &RealFormSpec,
    twist: usize,
    g: &TorusPoint,
) -> Result<Cyclotomic> {
    let rs = spec.root_system();
    require_regular(g, rs)?;
    sum_contributions(&noncompact_fixed_points(lambda, spec, twist), g, rs)
}

/// Outcome of regrouping the compact Lefschetz sum over `W_G/W_K`.
#[derive(Debug, Clone, Serialize)]
pub struct Pf1Check {
    #[serde(skip)]
    pub compact_side: Cyclotomic,
    /// `(coset representative index, τ_g on G/T for that coset)`.
    #[serde(skip)]
    pub coset_terms: Vec<(usize, Cyclotomic)>,
    #[serde(skip)]
    pub regrouped_sum: Cyclotomic,
    /// The `|W_G|` compact fixed-point data match the data of
    /// `⊔_[w] w·(G/T)^T` one-to-one after transport to the base point.
    pub bijection: bool,
    pub holds: bool,
}

fn datum_key(d: &FixedPointDatum) -> (Weight, usize) {
    (d.bundle_weight.clone(), d.chamber)
}

/// Checks `τ_g(ind_{G_c}) = Σ_{[w] ∈ W_G/W_K} τ_g(ind_G(L_{w^{-1}(λ-ρ)}))`,
/// including the structural matching of fixed-point data behind it.
pub fn verify_pf1_decomposition(
    pair: &InnerFormPair,
    lambda: &HarishChandraParameter,
    g: &TorusPoint,
) -> Result<Pf1Check> {
    let spec = pair.noncompact();
    let rs = spec.root_system();
    require_regular(g, rs)?;
    let group = rs.weyl_group();
    let reps = coset_representatives(group, &spec.weyl_subgroup_k())?;

    let mut left: HashMap<(Weight, usize), usize> = HashMap::new();
    for d in compact_fixed_points(lambda, rs) {
        *left.entry(datum_key(&d.transported(rs))).or_default() += 1;
    }
    let mut right: HashMap<(Weight, usize), usize> = HashMap::new();
    for &w in &reps {
        for d in noncompact_fixed_points(lambda, spec, w) {
            *right.entry(datum_key(&d.transported(rs))).or_default() += 1;
        }
    }
    let bijection = left.len() == group.len() && left.values().all(|&c| c == 1) && left == right;

    let compact_side = tau_index_compact(lambda, g, rs)?;
    let coset_terms = reps
        .iter()
        .map(|&w| Ok((w, tau_index_noncompact(lambda, spec, w, g)?)))
        .collect::<Result<Vec<_>>>()?;
    let regrouped_sum: Cyclotomic = coset_terms.iter().map(|(_, v)| v).sum();
    let holds = bijection && compact_side == regrouped_sum;
    Ok(Pf1Check {
        compact_side,
        coset_terms,
        regrouped_sum,
        bijection,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::weyl_character;
    use crate::exact::rational::rat;
    use crate::roots::build_root_system;
    use std::sync::Arc;

    fn pt(s: &str) -> TorusPoint {
        TorusPoint::parse(s).unwrap()
    }

    #[test]
    fn rank_one_contributions() {
        let a1 = build_root_system(&"A1".parse().unwrap()).unwrap();
        // ν = 0, t = π/2: 1/(1 - e^{-2it}) = 1/(1 - (-1)) = 1/2
        let d = FixedPointDatum {
            point: 0,
            bundle_weight: Weight::zero(1),
            chamber: 0,
        };
        assert_eq!(
            local_contribution(&d, &pt("1/4"), &a1).unwrap(),
            Cyclotomic::from_rational(&rat(1, 2))
        );
        // ν = (n-1)ρ: e^{(n-1)it}/(1 - e^{-2it}) = e^{int}/(e^{it} - e^{-it})
        let g = pt("1/7");
        for n in 1..6i64 {
            let d = FixedPointDatum {
                point: 0,
                bundle_weight: Weight::from_ints(&[n - 1]),
                chamber: 0,
            };
            let z = |k: i64| Cyclotomic::root_of_unity(7, k);
            let expected = z(n).checked_div(&(z(1) - z(-1))).unwrap();
            assert_eq!(local_contribution(&d, &g, &a1).unwrap(), expected);
        }
    }

    #[test]
    fn contribution_is_equivariant() {
        let a2 = build_root_system(&"A2".parse().unwrap()).unwrap();
        let g = pt("1/11,4/11");
        let d = FixedPointDatum {
            point: 4,
            bundle_weight: Weight::from_ints(&[2, -1]),
            chamber: 3,
        };
        let moved = d.transported(&a2);
        assert_eq!(
            local_contribution(&d, &g, &a2).unwrap(),
            local_contribution(&moved, &g, &a2).unwrap()
        );
    }

    #[test]
    fn compact_sum_is_weyl_character() {
        let a2 = build_root_system(&"A2".parse().unwrap()).unwrap();
        let lambda = HarishChandraParameter::new(Weight::from_ints(&[2, 1]), &a2).unwrap();
        let g = pt("2/9,5/9");
        assert_eq!(
            tau_index_compact(&lambda, &g, &a2).unwrap(),
            weyl_character(&lambda, &g, &a2).unwrap()
        );
        let rho = HarishChandraParameter::rho_multiple(1, &a2).unwrap();
        assert!(tau_index_compact(&rho, &g, &a2).unwrap().is_one());
    }

    #[test]
    fn compact_member_single_coset() {
        let a1 = Arc::new(build_root_system(&"A1".parse().unwrap()).unwrap());
        let su2 = RealFormSpec::compact_form("su2", Arc::clone(&a1));
        let lambda = HarishChandraParameter::rho_multiple(4, &a1).unwrap();
        let g = pt("1/5");
        assert_eq!(
            tau_index_noncompact(&lambda, &su2, 0, &g).unwrap(),
            tau_index_compact(&lambda, &g, &a1).unwrap()
        );
    }
}
