use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};

use super::cartan::CartanType;
use super::weight::Weight;
use super::weyl::{WeylElement, WeylGroup};
use crate::error::{Error, Result};
use crate::exact::rational::{int, sign_of};
use crate::exact::Rational;

/// Size bounds that keep exact verification interactive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
    pub max_weyl_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 6,
            max_weyl_order: 46_080,
        }
    }
}

/// A root, with coordinates in the simple-root basis, its fundamental-weight
/// coordinates `<α, α_i^∨>`, and its coroot in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub simple: Vec<i64>,
    pub weight: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    pub fn as_weight(&self) -> Weight {
        Weight::from_ints(&self.weight)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.simple.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Finite root system built from a Cartan matrix.
///
/// Roots are ordered deterministically: positive roots by increasing height,
/// ties broken by descending simple-root coordinates; then the negative roots
/// in the same order, so root `n_pos + i` is `-root(i)`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Rational>,
    roots: Vec<Root>,
    n_positive: usize,
    lookup: HashMap<Vec<i64>, usize>,
    weyl: WeylGroup,
}

pub fn build_root_system(cartan_type: &CartanType) -> Result<RootSystem> {
    build_root_system_with(cartan_type, Limits::default())
}

pub fn build_root_system_with(cartan_type: &CartanType, limits: Limits) -> Result<RootSystem> {
    let cartan = cartan_type.cartan_matrix();
    let rank = cartan.len();
    if rank == 0 {
        return Err(Error::InvalidCartanData("empty Cartan matrix".into()));
    }
    if rank > limits.max_rank {
        return Err(Error::Unsupported(format!(
            "rank {rank} exceeds the configured limit {}",
            limits.max_rank
        )));
    }
    if let Some(order) = cartan_type.expected_weyl_order() {
        if order > limits.max_weyl_order {
            return Err(Error::Unsupported(format!(
                "|W| = {order} exceeds the configured limit {}",
                limits.max_weyl_order
            )));
        }
    }
    let symmetrizer = validate_cartan(&cartan)?;
    let (roots, n_positive) = generate_roots(&cartan, &symmetrizer)?;
    if let Some(expected) = cartan_type.expected_root_count() {
        if roots.len() != expected {
            return Err(Error::InvalidCartanData(format!(
                "generated {} roots, expected {expected}",
                roots.len()
            )));
        }
    }
    let lookup: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(i, r)| (r.simple.clone(), i)).collect();

    let simple_perms: Vec<Vec<u32>> = (0..rank)
        .map(|i| {
            roots
                .iter()
                .map(|beta| {
                    let mut image = beta.simple.clone();
                    image[i] -= beta.weight[i];
                    lookup[&image] as u32
                })
                .collect()
        })
        .collect();
    // s_i(μ) = μ - <μ, α_i^∨> α_i, so column i of the matrix is e_i - α_i.
    let simple_matrices: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut m = vec![0i64; rank * rank];
            for r in 0..rank {
                m[r * rank + r] = 1;
                m[r * rank + i] -= cartan[r][i];
            }
            m
        })
        .collect();
    let weyl = WeylGroup::enumerate(&simple_perms, &simple_matrices, roots.len(), limits.max_weyl_order)?;
    if let Some(order) = cartan_type.expected_weyl_order() {
        if weyl.len() as u64 != order {
            return Err(Error::InvalidCartanData(format!(
                "enumerated |W| = {}, expected {order}",
                weyl.len()
            )));
        }
    }

    Ok(RootSystem {
        cartan_type: cartan_type.clone(),
        cartan,
        symmetrizer,
        roots,
        n_positive,
        lookup,
        weyl,
    })
}

/// Checks the Cartan axioms and finite type; returns the symmetrizer
/// `d_i = (α_i, α_i)/2` with `d_i a_ij = d_j a_ji`.
#[allow(clippy::needless_range_loop)]
fn validate_cartan(a: &[Vec<i64>]) -> Result<Vec<Rational>> {
    let r = a.len();
    let bad = |msg: String| Err(Error::InvalidCartanData(msg));
    for (i, row) in a.iter().enumerate() {
        if row.len() != r {
            return bad(format!("row {} has length {}, expected {r}", i + 1, row.len()));
        }
        if row[i] != 2 {
            return bad(format!("diagonal entry ({0},{0}) is {1}, expected 2", i + 1, row[i]));
        }
        for (j, &v) in row.iter().enumerate() {
            if i != j && v > 0 {
                return bad(format!("off-diagonal entry ({},{}) is positive", i + 1, j + 1));
            }
            if i != j && (v == 0) != (a[j][i] == 0) {
                return bad(format!(
                    "entries ({0},{1}) and ({1},{0}) are not both zero",
                    i + 1,
                    j + 1
                ));
            }
        }
    }

    let mut d: Vec<Option<Rational>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = &di * int(a[i][j]) / int(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => {
                        return bad("matrix is not symmetrizable".into());
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(Option::unwrap).collect();

    // finite type iff the symmetrized matrix is positive definite
    let mut b: Vec<Vec<Rational>> = (0..r).map(|i| (0..r).map(|j| &d[i] * int(a[i][j])).collect()).collect();
    for k in 0..r {
        if b[k][k] <= Rational::zero() {
            return bad("matrix is not of finite type (not positive definite)".into());
        }
        for i in k + 1..r {
            let f = &b[i][k] / &b[k][k];
            for j in k..r {
                let sub = &f * &b[k][j];
                b[i][j] -= sub;
            }
        }
    }
    Ok(d)
}

fn generate_roots(a: &[Vec<i64>], d: &[Rational]) -> Result<(Vec<Root>, usize)> {
    let r = a.len();
    let pairing = |beta: &[i64], i: usize| -> i64 { (0..r).map(|j| a[i][j] * beta[j]).sum() };
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        seen.insert(e.clone(), ());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            let mut image = beta.clone();
            image[i] -= pairing(&beta, i);
            if !seen.contains_key(&image) {
                if seen.len() > 10_000 {
                    return Err(Error::InvalidCartanData("root closure does not terminate".into()));
                }
                seen.insert(image.clone(), ());
                queue.push_back(image);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = Vec::new();
    for beta in seen.keys() {
        let pos = beta.iter().all(|&c| c >= 0);
        let neg = beta.iter().all(|&c| c <= 0);
        if !pos && !neg {
            return Err(Error::InvalidCartanData(format!("root {beta:?} has mixed signs")));
        }
        if pos {
            positive.push(beta.clone());
        }
    }
    positive.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    let n_positive = positive.len();
    let make = |simple: Vec<i64>| -> Result<Root> {
        let weight: Vec<i64> = (0..r).map(|i| pairing(&simple, i)).collect();
        // (α, α)/2 = Σ_j β_j d_j <α, α_j^∨> / 2
        let half_norm: Rational = (0..r)
            .map(|j| int(simple[j] * weight[j]) * &d[j])
            .fold(Rational::zero(), |acc, x| acc + x)
            / int(2);
        let coroot = (0..r)
            .map(|j| {
                let c = int(simple[j]) * &d[j] / &half_norm;
                crate::exact::rational::to_i64(&c).ok_or_else(|| Error::InvalidCartanData("non-integral coroot".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Root { simple, weight, coroot })
    };
    let mut roots = Vec::with_capacity(2 * n_positive);
    for beta in &positive {
        roots.push(make(beta.clone())?);
    }
    for beta in &positive {
        roots.push(make(beta.iter().map(|c| -c).collect())?);
    }
    Ok((roots, n_positive))
}

impl RootSystem {
    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(α_i, α_i)/2` for each simple root.
    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_positive]
    }

    pub fn num_positive(&self) -> usize {
        self.n_positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_positive
    }

    /// Index of `-root(i)`.
    pub fn negative_of(&self, i: usize) -> usize {
        if i < self.n_positive {
            i + self.n_positive
        } else {
            i - self.n_positive
        }
    }

    /// Index of the simple root `α_i` (simple roots have height one and come
    /// first).
    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut e = vec![0i64; self.rank()];
        e[i] = 1;
        self.lookup[&e]
    }

    pub fn index_of(&self, simple_coords: &[i64]) -> Option<usize> {
        self.lookup.get(simple_coords).copied()
    }

    /// `<μ, α^∨>` for root index `i`.
    pub fn pairing(&self, weight: &Weight, i: usize) -> Rational {
        let coroot = &self.roots[i].coroot;
        weight
            .coords()
            .iter()
            .zip(coroot)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| m * int(c))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Invariant inner product `(μ, α)` for root index `i`.
    pub fn inner_product_with_root(&self, weight: &Weight, i: usize) -> Rational {
        let simple = &self.roots[i].simple;
        (0..self.rank())
            .filter(|&j| simple[j] != 0)
            .map(|j| int(simple[j]) * &self.symmetrizer[j] * &weight.coords()[j])
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Invariant inner product of two weights.
    pub fn inner_product(&self, mu: &Weight, nu: &Weight) -> Rational {
        let b = self.simple_root_coords(mu);
        (0..self.rank())
            .map(|j| &b[j] * &self.symmetrizer[j] * &nu.coords()[j])
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Coordinates of a weight in the simple-root basis (solves `A b = m`).
    #[allow(clippy::needless_range_loop)]
    pub fn simple_root_coords(&self, weight: &Weight) -> Vec<Rational> {
        let r = self.rank();
        let mut m: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                let mut row: Vec<Rational> = (0..r).map(|j| int(self.cartan[i][j])).collect();
                row.push(weight.coords()[i].clone());
                row
            })
            .collect();
        for k in 0..r {
            let pivot = (k..r)
                .find(|&i| !m[i][k].is_zero())
                .expect("Cartan matrix is invertible");
            m.swap(k, pivot);
            for i in 0..r {
                if i != k && !m[i][k].is_zero() {
                    let f = &m[i][k] / &m[k][k];
                    for j in k..=r {
                        let sub = &f * &m[k][j];
                        m[i][j] -= sub;
                    }
                }
            }
        }
        (0..r).map(|i| &m[i][r] / &m[i][i]).collect()
    }

    /// True iff `<μ, α^∨> ≠ 0` for every root.
    pub fn is_regular(&self, weight: &Weight) -> bool {
        self.first_wall(weight).is_none()
    }

    /// A positive root orthogonal to `weight`, if any.
    pub fn first_wall(&self, weight: &Weight) -> Option<usize> {
        (0..self.n_positive).find(|&i| self.inner_product_with_root(weight, i).is_zero())
    }

    pub(crate) fn singular_weight_error(&self, weight: &Weight, root: usize) -> Error {
        Error::SingularWeight {
            weight: weight.to_string(),
            root: self.roots[root].to_string(),
        }
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Weight {
        let mut sum = vec![0i64; self.rank()];
        for root in self.positive_roots() {
            for (s, w) in sum.iter_mut().zip(&root.weight) {
                *s += w;
            }
        }
        Weight::from_ints(&sum).scale(&Rational::new(1.into(), 2.into()))
    }

    /// Half the sum of the roots having positive inner product with `nu`.
    pub fn rho_of_chamber(&self, nu: &Weight) -> Result<Weight> {
        let mut sum = vec![0i64; self.rank()];
        for i in 0..self.n_positive {
            let sign = match sign_of(&self.inner_product_with_root(nu, i)) {
                0 => return Err(self.singular_weight_error(nu, i)),
                s => s as i64,
            };
            for (s, w) in sum.iter_mut().zip(&self.roots[i].weight) {
                *s += sign * w;
            }
        }
        Ok(Weight::from_ints(&sum).scale(&Rational::new(1.into(), 2.into())))
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        &self.weyl
    }

    /// Dominant representative of `weight` and the index of `w` with
    /// `weight = w · dominant`.
    pub fn to_dominant(&self, weight: &Weight) -> (Weight, usize) {
        let group = &self.weyl;
        let mut x = weight.clone();
        let mut w = group.identity();
        while let Some(i) = x.coords().iter().position(|c| *c < Rational::zero()) {
            let s = group.simple_reflection(i);
            x = group.element(s).act(&x);
            w = group.mul(w, s);
        }
        (x, w)
    }

    /// Index of the reflection `s_α` for root index `i`.
    pub fn reflection(&self, i: usize) -> usize {
        let alpha = &self.roots[i];
        let perm: Vec<u32> = self
            .roots
            .iter()
            .map(|beta| {
                let k: i64 = beta.weight.iter().zip(&alpha.coroot).map(|(m, c)| m * c).sum();
                let image: Vec<i64> = beta.simple.iter().zip(&alpha.simple).map(|(b, a)| b - k * a).collect();
                self.lookup[&image] as u32
            })
            .collect();
        self.weyl
            .index_of_permutation(&perm)
            .expect("root reflections lie in the Weyl group")
    }

    /// Roots `w·R^+` of the chamber determined by the Weyl element `w`.
    pub fn chamber_roots(&self, w: &WeylElement) -> impl Iterator<Item = usize> + '_ {
        let perm = w.permutation().to_vec();
        (0..self.n_positive).map(move |i| perm[i] as usize)
    }
}

/// Enumerates `W_G`; the group is built once with the root system.
pub fn enumerate_weyl_group(rs: &RootSystem) -> &WeylGroup {
    rs.weyl_group()
}
