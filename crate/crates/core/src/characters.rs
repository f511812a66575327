//! Exact character values on the compact torus.
//!
//! * [`weyl_character`]: the Weyl character formula for the compact form.
//! * [`ds_character`]: the discrete-series character of the noncompact form,
//!   `Θ_λ = (-1)^q Σ_{W_K} sign(w) e^{wλ} / Σ_{W_G} sign(w) e^{wρ_λ}`.
//! * [`freudenthal_character`]: an independent check through weight
//!   multiplicities.

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{Cyclotomic, Rational};
use crate::real_forms::RealFormSpec;
use crate::roots::{RootSystem, Weight, WeylSubgroup};
use crate::torus::{evaluate_weight, evaluate_weight_f64, exponential_sum, require_regular, TorusPoint};

/// A regular weight `λ` with `λ - ρ_λ` integral, naming the discrete series
/// representation `π_λ` of a form with compact Cartan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarishChandraParameter {
    lambda: Weight,
    rho_lambda: Weight,
    dominant: Weight,
    chamber: usize,
}

impl HarishChandraParameter {
    pub fn new(lambda: Weight, rs: &RootSystem) -> Result<Self> {
        if lambda.rank() != rs.rank() {
            return Err(Error::DimensionMismatch {
                expected: rs.rank(),
                got: lambda.rank(),
            });
        }
        if let Some(root) = rs.first_wall(&lambda) {
            return Err(rs.singular_weight_error(&lambda, root));
        }
        let rho_lambda = rs.rho_of_chamber(&lambda)?;
        if !(&lambda - &rho_lambda).is_integral() {
            return Err(Error::NonIntegralWeight(lambda.to_string()));
        }
        let (dominant, chamber) = rs.to_dominant(&lambda);
        Ok(HarishChandraParameter {
            lambda,
            rho_lambda,
            dominant,
            chamber,
        })
    }

    /// `λ = n ρ`.
    pub fn rho_multiple(n: i64, rs: &RootSystem) -> Result<Self> {
        Self::new(rs.rho().scale_int(n), rs)
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    /// `ρ_λ`: half the sum of the roots positive on `λ`.
    pub fn rho_lambda(&self) -> &Weight {
        &self.rho_lambda
    }

    /// The dominant member of the `W_G`-orbit of `λ`.
    pub fn dominant(&self) -> &Weight {
        &self.dominant
    }

    /// Index of `w_λ` with `λ = w_λ · dominant`; the chamber of `λ` is
    /// `w_λ R^+`.
    pub fn chamber(&self) -> usize {
        self.chamber
    }

    /// `λ - ρ_λ`.
    pub fn shifted(&self) -> Weight {
        &self.lambda - &self.rho_lambda
    }

    /// Highest weight `λ_dom - ρ` of the compact-form representation.
    pub fn highest_weight(&self, rs: &RootSystem) -> Weight {
        &self.dominant - &rs.rho()
    }

    /// The parameter `w·λ`.
    pub fn transform(&self, rs: &RootSystem, w: usize) -> Self {
        let lambda = rs.weyl_group().element(w).act(&self.lambda);
        HarishChandraParameter::new(lambda, rs).expect("Weyl images of a parameter are parameters")
    }

    /// True iff `self` and `other` lie in one `W_K`-orbit, i.e. name the same
    /// representation of `G`.
    pub fn same_representation(&self, other: &Self, rs: &RootSystem, w_k: &WeylSubgroup) -> bool {
        let group = rs.weyl_group();
        w_k.members()
            .iter()
            .any(|&k| group.element(k).act(&self.lambda) == other.lambda)
    }
}

fn alternating_sum<'a>(
    rs: &RootSystem,
    elements: impl Iterator<Item = &'a usize>,
    weight: &Weight,
    g: &TorusPoint,
) -> Result<Cyclotomic> {
    let group = rs.weyl_group();
    let terms: Vec<(Weight, i64)> = elements
        .map(|&w| {
            let e = group.element(w);
            (e.act(weight), e.sign())
        })
        .collect();
    exponential_sum(terms.iter().map(|(w, s)| (w, *s)), g)
}

/// `Σ_{w ∈ W_G} sign(w) e^{w ρ_chamber}(g)`.
pub fn weyl_denominator(rs: &RootSystem, rho_chamber: &Weight, g: &TorusPoint) -> Result<Cyclotomic> {
    let all: Vec<usize> = (0..rs.weyl_group().len()).collect();
    alternating_sum(rs, all.iter(), rho_chamber, g)
}

/// `Π_{α > 0} (e^{α/2} - e^{-α/2})(g)`.
pub fn weyl_denominator_product(rs: &RootSystem, g: &TorusPoint) -> Result<Cyclotomic> {
    let half = Rational::new(1.into(), 2.into());
    let mut acc = Cyclotomic::one();
    for root in rs.positive_roots() {
        let h = root.as_weight().scale(&half);
        let factor = &evaluate_weight(&h, g)? - &evaluate_weight(&-&h, g)?;
        acc = &acc * &factor;
    }
    Ok(acc)
}

fn quotient(num: &Cyclotomic, den: &Cyclotomic, g: &TorusPoint) -> Result<Cyclotomic> {
    num.checked_div(den).map_err(|_| Error::SingularPoint {
        point: g.to_string(),
        root: "(Weyl denominator vanishes)".into(),
    })
}

/// Weyl character formula: `Σ sign(w) e^{wλ} / Σ sign(w) e^{wρ_λ}` over `W_G`.
pub fn weyl_character(lambda: &HarishChandraParameter, g: &TorusPoint, rs: &RootSystem) -> Result<Cyclotomic> {
    require_regular(g, rs)?;
    let all: Vec<usize> = (0..rs.weyl_group().len()).collect();
    let num = alternating_sum(rs, all.iter(), lambda.lambda(), g)?;
    let den = weyl_denominator(rs, lambda.rho_lambda(), g)?;
    quotient(&num, &den, g)
}

/// Discrete-series character `Θ_λ(g)` of the real form `spec` at a regular
/// point of the compact Cartan.
pub fn ds_character(lambda: &HarishChandraParameter, spec: &RealFormSpec, g: &TorusPoint) -> Result<Cyclotomic> {
    let rs = spec.root_system();
    require_regular(g, rs)?;
    let w_k = spec.weyl_subgroup_k();
    let num = alternating_sum(rs, w_k.members().iter(), lambda.lambda(), g)?;
    let den = weyl_denominator(rs, lambda.rho_lambda(), g)?;
    let value = quotient(&num, &den, g)?;
    Ok(if spec.sign() < 0 { -value } else { value })
}

/// Weights of the irreducible representation with the given dominant
/// integral highest weight, with multiplicities from Freudenthal's
/// recursion. Output is sorted by weight coordinates.
#[allow(clippy::needless_range_loop)]
pub fn weight_multiplicities(highest: &Weight, rs: &RootSystem) -> Result<Vec<(Weight, u64)>> {
    let lambda = highest
        .to_ints()
        .ok_or_else(|| Error::NonIntegralWeight(highest.to_string()))?;
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.to_string()));
    }
    let r = rs.rank();
    let group = rs.weyl_group();

    // dominant weights below λ: chains of dominant weights differing by
    // positive roots reach all of them
    let mut dominant: Vec<Vec<i64>> = vec![lambda.clone()];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(lambda.clone(), 0)]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for root in rs.positive_roots() {
            let nu: Vec<i64> = mu.iter().zip(&root.weight).map(|(a, b)| a - b).collect();
            if nu.iter().all(|&c| c >= 0) && !index.contains_key(&nu) {
                index.insert(nu.clone(), dominant.len());
                dominant.push(nu.clone());
                queue.push_back(nu);
            }
        }
    }

    // all weights, each mapped to its dominant representative
    let mut orbit_of: HashMap<Vec<i64>, usize> = HashMap::new();
    for (d, mu) in dominant.iter().enumerate() {
        let w = Weight::from_ints(mu);
        for e in group.elements() {
            let image = e
                .act(&w)
                .to_ints()
                .expect("Weyl images of integral weights are integral");
            orbit_of.insert(image, d);
        }
    }

    // process dominant weights by increasing depth below λ
    let lambda_w = Weight::from_ints(&lambda);
    let rho = rs.rho();
    let lr = &lambda_w + &rho;
    let top = rs.inner_product(&lr, &lr);
    let mut order: Vec<usize> = (0..dominant.len()).collect();
    let depth = |mu: &Vec<i64>| -> Rational {
        rs.simple_root_coords(&(&lambda_w - &Weight::from_ints(mu)))
            .into_iter()
            .fold(Rational::zero(), |a, b| a + b)
    };
    let depths: Vec<Rational> = dominant.iter().map(depth).collect();
    order.sort_by(|&a, &b| depths[a].cmp(&depths[b]));

    let mut mult = vec![0u64; dominant.len()];
    mult[0] = 1;
    for &d in order.iter().skip(1) {
        let mu = Weight::from_ints(&dominant[d]);
        let mr = &mu + &rho;
        let denom = &top - rs.inner_product(&mr, &mr);
        let mut acc = Rational::zero();
        for (ri, root) in rs.positive_roots().iter().enumerate() {
            let mut nu: Vec<i64> = dominant[d].clone();
            loop {
                for k in 0..r {
                    nu[k] += root.weight[k];
                }
                let Some(&rep) = orbit_of.get(&nu) else { break };
                let m = mult[rep];
                if m > 0 {
                    acc += int(m as i64) * rs.inner_product_with_root(&Weight::from_ints(&nu), ri);
                }
            }
        }
        let value = int(2) * acc / denom;
        assert!(
            value.is_integer(),
            "Freudenthal recursion produced a non-integer multiplicity"
        );
        mult[d] = value.to_integer().try_into().expect("multiplicity fits u64");
    }

    let mut out: Vec<(Weight, u64)> = orbit_of
        .into_iter()
        .filter(|(_, d)| mult[*d] > 0)
        .map(|(w, d)| (Weight::from_ints(&w), mult[d]))
        .collect();
    out.sort();
    Ok(out)
}

/// `Σ_μ mult(μ) e^μ(g)` over the weights of the irreducible representation
/// with the given highest weight.
pub fn freudenthal_character(highest: &Weight, g: &TorusPoint, rs: &RootSystem) -> Result<Cyclotomic> {
    let weights = weight_multiplicities(highest, rs)?;
    exponential_sum(weights.iter().map(|(w, m)| (w, *m as i64)), g)
}

/// Weyl dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(highest: &Weight, rs: &RootSystem) -> Rational {
    let rho = rs.rho();
    let shifted = highest + &rho;
    (0..rs.num_positive())
        .map(|i| rs.inner_product_with_root(&shifted, i) / rs.inner_product_with_root(&rho, i))
        .fold(int(1), |a, b| a * b)
}

fn alternating_sum_f64<'a>(
    rs: &RootSystem,
    elements: impl Iterator<Item = &'a usize>,
    weight: &Weight,
    coords: &[f64],
) -> Complex64 {
    let group = rs.weyl_group();
    elements
        .map(|&w| {
            let e = group.element(w);
            evaluate_weight_f64(&e.act(weight), coords) * e.sign() as f64
        })
        .sum()
}

const FLOAT_SINGULAR: f64 = 1e-12;

/// Floating-point Weyl character; NaN where the denominator vanishes.
pub fn weyl_character_f64(lambda: &HarishChandraParameter, rs: &RootSystem, coords: &[f64]) -> Complex64 {
    let all: Vec<usize> = (0..rs.weyl_group().len()).collect();
    let num = alternating_sum_f64(rs, all.iter(), lambda.lambda(), coords);
    let den = alternating_sum_f64(rs, all.iter(), lambda.rho_lambda(), coords);
    if den.norm() <= FLOAT_SINGULAR {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    num / den
}

/// Floating-point discrete-series character; NaN where the denominator
/// vanishes.
pub fn ds_character_f64(lambda: &HarishChandraParameter, spec: &RealFormSpec, coords: &[f64]) -> Complex64 {
    let rs = spec.root_system();
    let all: Vec<usize> = (0..rs.weyl_group().len()).collect();
    let w_k = spec.weyl_subgroup_k();
    let num = alternating_sum_f64(rs, w_k.members().iter(), lambda.lambda(), coords);
    let den = alternating_sum_f64(rs, all.iter(), lambda.rho_lambda(), coords);
    if den.norm() <= FLOAT_SINGULAR {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    num / den * spec.sign() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::build_root_system;
    use std::sync::Arc;

    fn rs(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap()).unwrap()
    }

    fn pt(s: &str) -> TorusPoint {
        TorusPoint::parse(s).unwrap()
    }

    #[test]
    fn parameter_validation() {
        let a2 = rs("A2");
        assert!(matches!(
            HarishChandraParameter::new(Weight::from_ints(&[1, -1]), &a2),
            Err(Error::SingularWeight { .. })
        ));
        assert!(matches!(
            HarishChandraParameter::new(Weight::parse("1/2,1").unwrap(), &a2),
            Err(Error::NonIntegralWeight(_))
        ));
        let p = HarishChandraParameter::new(Weight::from_ints(&[-1, 2]), &a2).unwrap();
        assert_eq!(p.dominant(), &Weight::from_ints(&[1, 1]));
        assert_eq!(a2.weyl_group().element(p.chamber()).act(p.dominant()), *p.lambda());
    }

    #[test]
    fn a1_trivial_and_sin_ratio() {
        let a1 = rs("A1");
        let one = HarishChandraParameter::rho_multiple(1, &a1).unwrap();
        for c in ["1/3", "1/5", "2/7"] {
            assert!(weyl_character(&one, &pt(c), &a1).unwrap().is_one());
        }
        let three = HarishChandraParameter::rho_multiple(3, &a1).unwrap();
        assert_eq!(
            weyl_character(&three, &pt("1/4"), &a1).unwrap(),
            Cyclotomic::from_integer(-1)
        );
    }

    #[test]
    fn singular_point_is_rejected() {
        let a1 = rs("A1");
        let three = HarishChandraParameter::rho_multiple(3, &a1).unwrap();
        assert!(matches!(
            weyl_character(&three, &pt("1/2"), &a1),
            Err(Error::SingularPoint { .. })
        ));
    }

    #[test]
    fn a2_standard_representation() {
        let a2 = rs("A2");
        // λ = ρ + ω1: weights ω1, ω1 - α1, ω1 - α1 - α2
        let p = HarishChandraParameter::new(Weight::from_ints(&[2, 1]), &a2).unwrap();
        let g = pt("1/7,3/7");
        let expected = exponential_sum(
            [
                (&Weight::from_ints(&[1, 0]), 1),
                (&Weight::from_ints(&[-1, 1]), 1),
                (&Weight::from_ints(&[0, -1]), 1),
            ],
            &g,
        )
        .unwrap();
        assert_eq!(weyl_character(&p, &g, &a2).unwrap(), expected);
    }

    #[test]
    fn multiplicities_of_small_representations() {
        let a1 = rs("A1");
        let adj = weight_multiplicities(&Weight::from_ints(&[2]), &a1).unwrap();
        assert_eq!(adj.len(), 3);
        let a2 = rs("A2");
        let adj = weight_multiplicities(&Weight::from_ints(&[1, 1]), &a2).unwrap();
        let zero = adj.iter().find(|(w, _)| w.is_zero()).unwrap();
        assert_eq!(zero.1, 2);
        assert_eq!(adj.iter().map(|(_, m)| m).sum::<u64>(), 8);
        assert_eq!(weyl_dimension(&Weight::from_ints(&[1, 1]), &a2), int(8));
        assert!(matches!(
            weight_multiplicities(&Weight::from_ints(&[-1, 1]), &a2),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = rs("A1");
        // adjoint at t = π/2: e^{2it} + 1 + e^{-2it} = -1
        assert_eq!(
            freudenthal_character(&Weight::from_ints(&[2]), &pt("1/4"), &a1).unwrap(),
            Cyclotomic::from_integer(-1)
        );
        let b2 = rs("B2");
        assert!(freudenthal_character(&Weight::zero(2), &pt("1/5,2/5"), &b2)
            .unwrap()
            .is_one());
    }

    #[test]
    fn denominator_forms_agree() {
        for t in ["A1", "A2", "B2", "C2", "A3"] {
            let r = rs(t);
            let g = TorusPoint::new(
                (0..r.rank())
                    .map(|i| crate::exact::rational::rat(i as i64 + 1, 11))
                    .collect(),
            );
            assert_eq!(
                weyl_denominator(&r, &r.rho(), &g).unwrap(),
                weyl_denominator_product(&r, &g).unwrap(),
                "{t}"
            );
        }
    }

    #[test]
    fn ds_character_on_sl2() {
        let a1 = Arc::new(rs("A1"));
        let sl2 = RealFormSpec::new("sl2R", Arc::clone(&a1), &[]).unwrap();
        let lambda = HarishChandraParameter::rho_multiple(3, &a1).unwrap();
        let g = pt("1/4");
        // -e^{3it}/(e^{it} - e^{-it}) at t = π/2: -(-i)/(2i) = 1/2
        let value = ds_character(&lambda, &sl2, &g).unwrap();
        assert_eq!(value, Cyclotomic::from_rational(&crate::exact::rational::rat(1, 2)));
        let su2 = RealFormSpec::compact_form("su2", Arc::clone(&a1));
        assert_eq!(
            ds_character(&lambda, &su2, &g).unwrap(),
            weyl_character(&lambda, &g, &a1).unwrap()
        );
    }

    #[test]
    fn float_mode_matches_exact() {
        let a2 = rs("A2");
        let p = HarishChandraParameter::new(Weight::from_ints(&[3, 2]), &a2).unwrap();
        let g = pt("1/9,4/9");
        let exact = weyl_character(&p, &g, &a2).unwrap().to_complex();
        let float = weyl_character_f64(&p, &a2, &g.to_f64());
        assert!((exact - float).norm() < 1e-9);
        assert!(weyl_character_f64(&p, &a2, &[0.0, 0.0]).re.is_nan());
    }
}
