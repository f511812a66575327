//! Finite-order points of the compact torus and exact evaluation of
//! characters `e^μ` at them.
//!
//! A point is a rational vector `c` in the simple-coroot basis, standing for
//! `g = exp(2πi Σ c_j H_j)`. The character `e^μ` takes the value
//! `exp(2πi <μ, g>)` with `<μ, g> = Σ_j <μ, α_j^∨> c_j`, which is a root of
//! unity whenever the pairings are rational.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::rational::{
    denom_u64, format_vector, frac, int, is_half_integer, lcm_u64, parse_rational, rat, to_f64,
};
use crate::exact::{Cyclotomic, Rational};
use crate::roots::{RootSystem, Weight, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<Rational>,
    /// `(D, D·c)` with `D` the common denominator, when everything fits in
    /// machine integers.
    scaled: Option<(i64, Vec<i64>)>,
}

/// `(k, N)` with `<μ, g> ≡ k/N mod 1`, `0 ≤ k < N`, `gcd(k, N) = 1`
/// (and `(0, 1)` for an integer exponent).
pub(crate) type ReducedExponent = (u64, u64);

const SCALE_LIMIT: i64 = 1 << 30;

fn scaled_coords(coords: &[Rational]) -> Option<(i64, Vec<i64>)> {
    let mut d: i64 = 1;
    for c in coords {
        let cd = i64::try_from(c.denom()).ok()?;
        d = d.lcm(&cd);
        if d > SCALE_LIMIT {
            return None;
        }
    }
    let numer = coords
        .iter()
        .map(|c| {
            i64::try_from((c * int(d)).to_integer())
                .ok()
                .filter(|n| n.abs() <= SCALE_LIMIT)
        })
        .collect::<Option<Vec<_>>>()?;
    Some((d, numer))
}

/// `2μ` as machine integers, if `μ` is half-integral and small.
fn doubled_weight(weight: &Weight) -> Result<Option<Vec<i64>>> {
    if !weight.coords().iter().all(is_half_integer) {
        return Err(Error::NonIntegralWeight(weight.to_string()));
    }
    Ok(weight
        .coords()
        .iter()
        .map(|m| {
            i64::try_from((m * int(2)).to_integer())
                .ok()
                .filter(|n| n.abs() <= SCALE_LIMIT)
        })
        .collect())
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        let scaled = scaled_coords(&coords);
        TorusPoint { coords, scaled }
    }

    /// Parses comma-separated rationals, e.g. `"1/4"` or `"1/5,2/7"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(text);
        text.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(TorusPoint::new)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// lcm of the coordinate denominators: the order of `g` on the weight
    /// lattice.
    pub fn field_order(&self) -> u64 {
        match &self.scaled {
            Some((d, _)) => *d as u64,
            None => self.coords.iter().fold(1, |acc, c| lcm_u64(acc, denom_u64(c))),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }

    /// `<μ, g>`, the exponent with `e^μ(g) = exp(2πi <μ, g>)`.
    pub fn exponent(&self, weight: &Weight) -> Result<Rational> {
        check_rank(self.rank(), weight.rank())?;
        if !weight.coords().iter().all(is_half_integer) {
            return Err(Error::NonIntegralWeight(weight.to_string()));
        }
        Ok(self
            .coords
            .iter()
            .zip(weight.coords())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| c * m)
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    /// `<μ, g> mod 1` in lowest terms.
    pub(crate) fn reduced_exponent(&self, weight: &Weight) -> Result<ReducedExponent> {
        check_rank(self.rank(), weight.rank())?;
        if let (Some((d, numer)), Some(m2)) = (&self.scaled, doubled_weight(weight)?) {
            let n = 2 * *d as i128;
            let s: i128 = m2.iter().zip(numer).map(|(&a, &b)| a as i128 * b as i128).sum();
            let k = s.rem_euclid(n);
            let g = k.gcd(&n);
            return Ok(((k / g) as u64, (n / g) as u64));
        }
        let e = frac(&self.exponent(weight)?);
        let k = u64::try_from(e.numer()).expect("exponent numerator fits u64");
        Ok((k, denom_u64(&e)))
    }

    /// Transposed Weyl action: `<μ, w·g> = <w^{-1}μ, g>`.
    pub fn weyl_act(&self, group: &WeylGroup, w: usize) -> TorusPoint {
        let inv = group.element(group.inverse(w)).matrix();
        let r = self.rank();
        let coords = (0..r)
            .map(|j| {
                (0..r)
                    .filter(|&i| inv[i * r + j] != 0)
                    .map(|i| &self.coords[i] * int(inv[i * r + j]))
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect();
        TorusPoint::new(coords)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vector(&self.coords))
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_rank(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `e^μ(g)` as `ζ_N^k` with `N` the denominator of `<μ, g>`.
pub fn evaluate_weight(weight: &Weight, g: &TorusPoint) -> Result<Cyclotomic> {
    let (k, n) = g.reduced_exponent(weight)?;
    Ok(Cyclotomic::root_of_unity(n, k as i64))
}

/// `Σ c_i e^{μ_i}(g)`, reduced once in the smallest common field.
pub fn exponential_sum<'a, I>(terms: I, g: &TorusPoint) -> Result<Cyclotomic>
where
    I: IntoIterator<Item = (&'a Weight, i64)>,
{
    let mut exps = Vec::new();
    let mut order = 1u64;
    for (weight, coeff) in terms {
        let (k, n) = g.reduced_exponent(weight)?;
        order = lcm_u64(order, n);
        exps.push((k, n, coeff));
    }
    let terms = exps
        .into_iter()
        .map(|(k, n, c)| (i64::try_from(k * (order / n)).expect("exponent fits i64"), int(c)));
    Ok(Cyclotomic::from_terms(order, terms))
}

/// A positive root `α` with `e^α(g) = 1`, if any.
pub fn singular_root(g: &TorusPoint, rs: &RootSystem) -> Option<usize> {
    (0..rs.num_positive()).find(|&i| {
        g.reduced_exponent(&rs.root(i).as_weight())
            .map(|(k, _)| k == 0)
            .unwrap_or(false)
    })
}

/// True iff `e^α(g) ≠ 1` for every root.
pub fn is_regular(g: &TorusPoint, rs: &RootSystem) -> bool {
    g.rank() == rs.rank() && singular_root(g, rs).is_none()
}

pub(crate) fn require_regular(g: &TorusPoint, rs: &RootSystem) -> Result<()> {
    check_rank(rs.rank(), g.rank())?;
    match singular_root(g, rs) {
        None => Ok(()),
        Some(i) => Err(Error::SingularPoint {
            point: g.to_string(),
            root: rs.root(i).to_string(),
        }),
    }
}

const ENUMERATION_LIMIT: usize = 200_000;

/// Deterministic list of distinct regular points whose coordinates share a
/// common denominator `d ≤ denominator_bound` and lie in `[0, 1)`.
pub fn sample_regular_points(
    rs: &RootSystem,
    count: usize,
    denominator_bound: u64,
    seed: u64,
) -> Result<Vec<TorusPoint>> {
    assert!(count >= 1, "sample count must be positive");
    let r = rs.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space: u128 = (2..=denominator_bound).map(|d| (d as u128).pow(r as u32)).sum();

    if space <= ENUMERATION_LIMIT as u128 {
        // integer weights of the positive roots, to test `<α, g> ∈ Z` mod d
        let roots: Vec<Vec<i64>> = rs.positive_roots().iter().map(|a| a.weight.clone()).collect();
        let mut all = Vec::new();
        for d in 2..=denominator_bound {
            let mut numer = vec![0u64; r];
            loop {
                // each point is listed once, under its exact common denominator
                let primitive = numer.iter().fold(d, |acc, &k| acc.gcd(&k)) == 1;
                let regular = roots.iter().all(|m| {
                    let s: i64 = m.iter().zip(&numer).map(|(a, &k)| a * k as i64).sum();
                    s.rem_euclid(d as i64) != 0
                });
                if primitive && regular {
                    all.push(TorusPoint {
                        coords: numer.iter().map(|&k| rat(k as i64, d as i64)).collect(),
                        scaled: Some((d as i64, numer.iter().map(|&k| k as i64).collect())),
                    });
                }
                // odometer over {0..d-1}^r
                let Some(pos) = numer.iter().position(|&k| k + 1 < d) else {
                    break;
                };
                numer[pos] += 1;
                numer[..pos].iter_mut().for_each(|k| *k = 0);
            }
        }
        if all.len() < count {
            return Err(Error::ExhaustedSearch {
                requested: count,
                found: all.len(),
                bound: denominator_bound,
            });
        }
        all.shuffle(&mut rng);
        all.truncate(count);
        return Ok(all);
    }

    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let max_attempts = 1_000 * count + 10_000;
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let d = rng.gen_range(2..=denominator_bound) as i64;
        let p = TorusPoint::new((0..r).map(|_| rat(rng.gen_range(0..d), d)).collect());
        if is_regular(&p, rs) && seen.insert(p.clone()) {
            out.push(p);
        }
    }
    if out.len() < count {
        return Err(Error::ExhaustedSearch {
            requested: count,
            found: out.len(),
            bound: denominator_bound,
        });
    }
    Ok(out)
}

/// Floating-point `e^μ` at a real coordinate vector.
pub fn evaluate_weight_f64(weight: &Weight, coords: &[f64]) -> Complex64 {
    let e: f64 = weight.coords().iter().zip(coords).map(|(m, c)| to_f64(m) * c).sum();
    Complex64::from_polar(1.0, std::f64::consts::TAU * e)
}

impl std::str::FromStr for TorusPoint {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        TorusPoint::parse(s)
    }
}
