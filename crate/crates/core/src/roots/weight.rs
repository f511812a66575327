use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::exact::rational::{format_vector, int, parse_rational};
use crate::exact::Rational;

/// A weight in fundamental-weight coordinates: `coords[i] = <μ, α_i^∨>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    /// Parses comma-separated rationals, e.g. `"2,1"` or `"1/2,-1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let text = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(text);
        text.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| *c >= Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Integer coordinates, when the weight is integral and they fit.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(crate::exact::rational::to_i64).collect()
    }

    pub fn scale(&self, k: &Rational) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn scale_int(&self, k: i64) -> Weight {
        let k = Rational::from_integer(BigInt::from(k));
        self.scale(&k)
    }

    /// Applies an integer matrix (row-major, `rank × rank`).
    pub(crate) fn transform(&self, matrix: &[i64]) -> Weight {
        let r = self.rank();
        let coords = (0..r)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..r {
                    let m = matrix[i * r + j];
                    if m != 0 {
                        acc += &self.0[j] * Rational::from_integer(m.into());
                    }
                }
                acc
            })
            .collect();
        Weight(coords)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", format_vector(&self.0))
    }
}

impl std::str::FromStr for Weight {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Weight::parse(s)
    }
}
