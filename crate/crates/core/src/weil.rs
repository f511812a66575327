//! The real Weil group `W_R = C^× ∪ C^× j` (with `j² = -1`, `j z = z̄ j`)
//! and the L-parameters `φ_n : W_R → PGL(2, C) ⋊ Gal(C/R)` of the
//! discrete series of `SL(2, R)`.
//!
//! Elements are kept in the normal form `z` or `z·j`; `z = r e^{2πiθ}` with
//! `r > 0` and `θ` rational, so every matrix entry lies in a cyclotomic field.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::rational::{frac, rat};
use crate::exact::{Cyclotomic, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `z`
    Plain,
    /// `z·j`
    JTwisted,
}

/// `z` or `z·j` with `z = modulus · e^{2πi angle}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeilElement {
    branch: Branch,
    modulus: Rational,
    /// In `[0, 1)`, as a fraction of a full turn.
    angle: Rational,
}

impl WeilElement {
    /// Panics unless `modulus > 0`.
    pub fn new(branch: Branch, modulus: Rational, angle: Rational) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        WeilElement {
            branch,
            modulus,
            angle: frac(&angle),
        }
    }

    pub fn complex(modulus: Rational, angle: Rational) -> Self {
        Self::new(Branch::Plain, modulus, angle)
    }

    pub fn one() -> Self {
        Self::complex(Rational::one(), Rational::zero())
    }

    pub fn minus_one() -> Self {
        Self::complex(Rational::one(), rat(1, 2))
    }

    pub fn j() -> Self {
        Self::new(Branch::JTwisted, Rational::one(), Rational::zero())
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn modulus(&self) -> &Rational {
        &self.modulus
    }

    pub fn angle(&self) -> &Rational {
        &self.angle
    }

    /// The `C^×` part `z` of `z` or `z·j`.
    pub fn complex_part(&self) -> WeilElement {
        Self::complex(self.modulus.clone(), self.angle.clone())
    }

    /// `z̄` for a plain element; the `C^×` part is conjugated in either branch.
    pub fn conj(&self) -> WeilElement {
        Self::new(self.branch, self.modulus.clone(), -&self.angle)
    }

    pub fn inverse(&self) -> WeilElement {
        match self.branch {
            Branch::Plain => Self::complex(self.modulus.recip(), -&self.angle),
            // (z j)^{-1} = j^{-1} z^{-1} = -j z^{-1} = -(z̄^{-1}) j
            Branch::JTwisted => Self::new(Branch::JTwisted, self.modulus.recip(), &self.angle + rat(1, 2)),
        }
    }
}

impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·e(2πi·{})", self.modulus, self.angle)?;
        if self.branch == Branch::JTwisted {
            write!(f, "·j")?;
        }
        Ok(())
    }
}

impl Serialize for WeilElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Product in `W_R`, returned in normal form.
pub fn weil_multiply(a: &WeilElement, b: &WeilElement) -> WeilElement {
    let modulus = &a.modulus * &b.modulus;
    match (a.branch, b.branch) {
        (Branch::Plain, Branch::Plain) => WeilElement::complex(modulus, &a.angle + &b.angle),
        (Branch::Plain, Branch::JTwisted) => WeilElement::new(Branch::JTwisted, modulus, &a.angle + &b.angle),
        // z1 j z2 = z1 z̄2 j
        (Branch::JTwisted, Branch::Plain) => WeilElement::new(Branch::JTwisted, modulus, &a.angle - &b.angle),
        // z1 j z2 j = z1 z̄2 j² = -z1 z̄2
        (Branch::JTwisted, Branch::JTwisted) => WeilElement::complex(modulus, &a.angle - &b.angle + rat(1, 2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Galois {
    Identity,
    /// Complex conjugation.
    Sigma,
}

impl Galois {
    pub fn compose(self, other: Galois) -> Galois {
        if self == other {
            Galois::Identity
        } else {
            Galois::Sigma
        }
    }
}

/// An element of `PGL(2, C) ⋊ Gal(C/R)`, stored through a representative
/// matrix; equality ignores nonzero scalars.
#[derive(Debug, Clone)]
pub struct ProjectivePair {
    pub matrix: [[Cyclotomic; 2]; 2],
    pub galois: Galois,
}

impl ProjectivePair {
    /// Panics if the matrix is singular.
    pub fn new(matrix: [[Cyclotomic; 2]; 2], galois: Galois) -> Self {
        let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
        assert!(!det.is_zero(), "projective representative must be invertible");
        ProjectivePair { matrix, galois }
    }

    pub fn identity() -> Self {
        Self::new(
            [
                [Cyclotomic::one(), Cyclotomic::from_integer(0)],
                [Cyclotomic::from_integer(0), Cyclotomic::one()],
            ],
            Galois::Identity,
        )
    }

    fn entries(&self) -> [&Cyclotomic; 4] {
        [
            &self.matrix[0][0],
            &self.matrix[0][1],
            &self.matrix[1][0],
            &self.matrix[1][1],
        ]
    }

    /// `(m1, γ1)(m2, γ2) = (m1 m2, γ1 γ2)`. The group is split, so the Galois
    /// factor acts trivially on the dual group.
    pub fn compose(&self, other: &ProjectivePair) -> ProjectivePair {
        let a = &self.matrix;
        let b = &other.matrix;
        let entry = |i: usize, k: usize| &(&a[i][0] * &b[0][k]) + &(&a[i][1] * &b[1][k]);
        ProjectivePair::new(
            [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
            self.galois.compose(other.galois),
        )
    }

    /// Multiplies the representative by a nonzero scalar.
    pub fn rescaled(&self, scalar: &Cyclotomic) -> ProjectivePair {
        assert!(!scalar.is_zero(), "rescaling by zero");
        ProjectivePair {
            matrix: self.matrix.clone().map(|row| row.map(|c| &c * scalar)),
            galois: self.galois,
        }
    }

    /// True iff the representative is a scalar matrix and the Galois part is
    /// trivial.
    pub fn is_identity(&self) -> bool {
        *self == ProjectivePair::identity()
    }
}

impl PartialEq for ProjectivePair {
    fn eq(&self, other: &Self) -> bool {
        if self.galois != other.galois {
            return false;
        }
        let a = self.entries();
        let b = other.entries();
        // proportional 4-vectors: every 2×2 cross product vanishes
        (0..4).all(|p| (p + 1..4).all(|q| (a[p] * b[q] - a[q] * b[p]).is_zero()))
    }
}

impl fmt::Display for ProjectivePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(f, "([[{}, {}], [{}, {}]], ", m[0][0], m[0][1], m[1][0], m[1][1])?;
        match self.galois {
            Galois::Identity => write!(f, "e)"),
            Galois::Sigma => write!(f, "σ)"),
        }
    }
}

/// `χ_n(r e^{iθ}) = r e^{inθ}`.
pub fn chi(n: i64, z: &WeilElement) -> Cyclotomic {
    let e = frac(&(&z.angle * Rational::from_integer(n.into())));
    let k: i64 = e.numer().try_into().expect("angle numerator fits i64");
    let order: u64 = e.denom().try_into().expect("angle denominator fits u64");
    Cyclotomic::root_of_unity(order, k).scale(&z.modulus)
}

/// `φ_n(x)`: `φ_n(z) = (diag(χ_n(z), χ_{-n}(z)), e)`,
/// `φ_n(j) = ([0, (-1)^n; 1, 0], σ)`.
pub fn phi_n(n: i64, x: &WeilElement) -> ProjectivePair {
    let z = x.complex_part();
    let zero = Cyclotomic::from_integer(0);
    let on_z = ProjectivePair::new([[chi(n, &z), zero.clone()], [zero, chi(-n, &z)]], Galois::Identity);
    match x.branch {
        Branch::Plain => on_z,
        Branch::JTwisted => on_z.compose(&phi_j(n)),
    }
}

fn phi_j(n: i64) -> ProjectivePair {
    let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    ProjectivePair::new(
        [
            [Cyclotomic::from_integer(0), Cyclotomic::from_integer(sign)],
            [Cyclotomic::one(), Cyclotomic::from_integer(0)],
        ],
        Galois::Sigma,
    )
}

/// Outcome of [`check_homomorphism`]; `failure` holds the first pair with
/// `φ(ab) ≠ φ(a)φ(b)`.
#[derive(Debug, Clone, Serialize)]
pub struct HomomorphismCheck {
    pub n: i64,
    pub checked: usize,
    pub failure: Option<(WeilElement, WeilElement)>,
}

impl HomomorphismCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `φ_n(a b) = φ_n(a) φ_n(b)` on every sample pair.
pub fn check_homomorphism(n: i64, sample: &[(WeilElement, WeilElement)]) -> HomomorphismCheck {
    HomomorphismCheck {
        n,
        checked: sample.len(),
        failure: first_failure(|x| phi_n(n, x), sample),
    }
}

fn first_failure(
    map: impl Fn(&WeilElement) -> ProjectivePair,
    sample: &[(WeilElement, WeilElement)],
) -> Option<(WeilElement, WeilElement)> {
    sample
        .iter()
        .find(|(a, b)| map(&weil_multiply(a, b)) != map(a).compose(&map(b)))
        .cloned()
}

/// Elements `r e^{2πik/d}` and `r e^{2πik/d}·j` for `r ∈ {1, 2, 1/3}` and
/// `0 ≤ k < d`.
pub fn sample_elements(denominator: i64) -> Vec<WeilElement> {
    let mut out = Vec::new();
    for branch in [Branch::Plain, Branch::JTwisted] {
        for r in [rat(1, 1), rat(2, 1), rat(1, 3)] {
            for k in 0..denominator {
                out.push(WeilElement::new(branch, r.clone(), rat(k, denominator)));
            }
        }
    }
    out
}

/// All ordered pairs from [`sample_elements`], with the relation witnesses
/// `(j, j)`, `(j, z)` and `(z, j)` first.
pub fn standard_sample(denominator: i64) -> Vec<(WeilElement, WeilElement)> {
    let z = WeilElement::complex(rat(2, 1), rat(1, denominator.max(3)));
    let mut pairs = vec![
        (WeilElement::j(), WeilElement::j()),
        (WeilElement::j(), z.clone()),
        (z, WeilElement::j()),
    ];
    let elems = sample_elements(denominator);
    for a in &elems {
        for b in &elems {
            pairs.push((a.clone(), b.clone()));
        }
    }
    pairs
}

/// One row of the relation table printed by the command-line tool.
#[derive(Debug, Clone, Serialize)]
pub struct RelationRow {
    pub n: i64,
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// `φ_n` applied to the defining relations of `W_R` and to a multiplicative
/// check on `C^×`.
pub fn relation_table(n: i64) -> Vec<RelationRow> {
    let j = WeilElement::j();
    let z = WeilElement::complex(rat(3, 2), rat(1, 8));
    let w = WeilElement::complex(rat(1, 5), rat(2, 3));
    let row = |relation: &str, lhs: ProjectivePair, rhs: ProjectivePair| RelationRow {
        n,
        relation: relation.to_string(),
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    };
    vec![
        row(
            "φ(j)φ(j) = φ(-1)",
            phi_n(n, &j).compose(&phi_n(n, &j)),
            phi_n(n, &WeilElement::minus_one()),
        ),
        row(
            "φ(j)φ(z)φ(j)^-1 = φ(z̄)",
            phi_n(n, &j).compose(&phi_n(n, &z)).compose(&phi_n(n, &j.inverse())),
            phi_n(n, &z.conj()),
        ),
        row(
            "φ(z)φ(w) = φ(zw)",
            phi_n(n, &z).compose(&phi_n(n, &w)),
            phi_n(n, &weil_multiply(&z, &w)),
        ),
        row("φ(1) = 1", phi_n(n, &WeilElement::one()), ProjectivePair::identity()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(r: Rational, a: Rational) -> WeilElement {
        WeilElement::complex(r, a)
    }

    #[test]
    fn group_relations() {
        let j = WeilElement::j();
        assert_eq!(weil_multiply(&j, &j), WeilElement::minus_one());
        let w = z(rat(3, 1), rat(1, 5));
        let jw = weil_multiply(&j, &w);
        assert_eq!(jw, WeilElement::new(Branch::JTwisted, rat(3, 1), rat(-1, 5)));
        assert_eq!(weil_multiply(&w, &w.inverse()), WeilElement::one());
        let wj = weil_multiply(&w, &j);
        assert_eq!(weil_multiply(&wj, &wj.inverse()), WeilElement::one());
        assert_eq!(weil_multiply(&wj.inverse(), &wj), WeilElement::one());
    }

    #[test]
    fn phi_values() {
        let zero = Cyclotomic::from_integer(0);
        let expected_j = ProjectivePair::new(
            [
                [zero.clone(), Cyclotomic::from_integer(-1)],
                [Cyclotomic::one(), zero.clone()],
            ],
            Galois::Sigma,
        );
        let pj = phi_n(1, &WeilElement::j());
        assert_eq!(pj, expected_j);
        assert_eq!(pj.matrix, expected_j.matrix);

        let x = z(rat(1, 1), rat(1, 8));
        let expected = ProjectivePair::new(
            [
                [Cyclotomic::root_of_unity(8, 2), zero.clone()],
                [zero.clone(), Cyclotomic::root_of_unity(8, -2)],
            ],
            Galois::Identity,
        );
        assert_eq!(phi_n(2, &x).matrix, expected.matrix);
        assert!(phi_n(5, &WeilElement::one()).is_identity());
    }

    #[test]
    fn projective_equality_ignores_scalars() {
        let p = phi_n(3, &z(rat(2, 1), rat(1, 7)));
        assert_eq!(p.rescaled(&Cyclotomic::root_of_unity(5, 1)), p);
        assert_eq!(p.rescaled(&Cyclotomic::from_rational(&rat(-7, 3))), p);
        assert_ne!(p, phi_n(3, &z(rat(2, 1), rat(2, 7))));
        assert_ne!(p, phi_n(3, &WeilElement::j()));
    }

    #[test]
    fn homomorphism_small() {
        for n in 1..=3 {
            let check = check_homomorphism(n, &standard_sample(5));
            assert!(check.holds(), "n={n}: {:?}", check.failure);
            for row in relation_table(n) {
                assert!(row.holds, "n={n}: {}", row.relation);
            }
        }
    }

    #[test]
    fn broken_parameter_is_reported() {
        // diag(χ_n, 1) on C^× is multiplicative but incompatible with φ(j)
        let broken = |x: &WeilElement| {
            let zc = x.complex_part();
            let zero = Cyclotomic::from_integer(0);
            let on_z = ProjectivePair::new(
                [[chi(1, &zc), zero.clone()], [zero, Cyclotomic::one()]],
                Galois::Identity,
            );
            match x.branch() {
                Branch::Plain => on_z,
                Branch::JTwisted => on_z.compose(&phi_j(1)),
            }
        };
        let failure = first_failure(broken, &standard_sample(5)).expect("broken map must fail");
        assert!(failure.0.branch() == Branch::JTwisted || failure.1.branch() == Branch::JTwisted);
    }
}
