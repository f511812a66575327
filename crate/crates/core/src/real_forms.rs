//! Equal-rank real forms, encoded by their compact roots, and the built-in
//! catalog of inner-form pairs `(G, G_c)`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{build_root_system, CartanType, RootSystem, WeylSubgroup};

/// A real form `G` sharing the compact Cartan `T` with its compact inner
/// form, described by the set `R_c` of compact roots.
#[derive(Debug, Clone)]
pub struct RealFormSpec {
    name: String,
    root_system: Arc<RootSystem>,
    compact: Vec<bool>,
}

/// A failure of the Z/2-grading that a compact-root subset must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GradingViolation {
    /// `α` is compact but `-α` is not.
    NotSymmetric {
        root: usize,
    },
    /// `α + β` is a root but its compactness does not match the grading.
    Closure {
        alpha: usize,
        beta: usize,
        sum: usize,
        expected_compact: bool,
    },
    OddNoncompactCount {
        count: usize,
    },
}

impl fmt::Display for GradingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingViolation::NotSymmetric { root } => {
                write!(f, "root #{root} is compact but its negative is not")
            }
            GradingViolation::Closure {
                alpha,
                beta,
                sum,
                expected_compact,
            } => write!(
                f,
                "roots #{alpha} + #{beta} = #{sum}, which must be {}",
                if *expected_compact { "compact" } else { "noncompact" }
            ),
            GradingViolation::OddNoncompactCount { count } => {
                write!(f, "{count} noncompact roots (must be even)")
            }
        }
    }
}

impl RealFormSpec {
    /// `compact_roots` are indices into the root ordering of `root_system`.
    pub fn new(name: impl Into<String>, root_system: Arc<RootSystem>, compact_roots: &[usize]) -> Result<Self> {
        let n = root_system.roots().len();
        let mut compact = vec![false; n];
        for &i in compact_roots {
            if i >= n {
                return Err(Error::Catalog(format!("root index {i} out of range (|R| = {n})")));
            }
            compact[i] = true;
        }
        Ok(RealFormSpec {
            name: name.into(),
            root_system,
            compact,
        })
    }

    /// The compact form: every root compact.
    pub fn compact_form(name: impl Into<String>, root_system: Arc<RootSystem>) -> Self {
        let n = root_system.roots().len();
        RealFormSpec {
            name: name.into(),
            root_system,
            compact: vec![true; n],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn shared_root_system(&self) -> &Arc<RootSystem> {
        &self.root_system
    }

    pub fn is_compact_root(&self, i: usize) -> bool {
        self.compact[i]
    }

    pub fn compact_roots(&self) -> Vec<usize> {
        (0..self.compact.len()).filter(|&i| self.compact[i]).collect()
    }

    pub fn is_compact_form(&self) -> bool {
        self.compact.iter().all(|&c| c)
    }

    /// `(q, dim G/K)` with `dim G/K = |R \ R_c|` and `q = dim(G/K)/2`.
    pub fn q_and_dim(&self) -> (usize, usize) {
        let dim = self.compact.iter().filter(|&&c| !c).count();
        (dim / 2, dim)
    }

    /// `(-1)^q`.
    pub fn sign(&self) -> i64 {
        if self.q_and_dim().0.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `W_K`: the subgroup generated by reflections in compact roots.
    pub fn weyl_subgroup_k(&self) -> WeylSubgroup {
        let rs = &self.root_system;
        let generators: Vec<usize> = (0..rs.num_positive())
            .filter(|&i| self.compact[i])
            .map(|i| rs.reflection(i))
            .collect();
        WeylSubgroup::generated_by(rs.weyl_group(), &generators)
    }
}

/// Checks symmetry, grading closure over all root pairs, and parity.
pub fn validate_real_form(spec: &RealFormSpec) -> std::result::Result<(), Vec<GradingViolation>> {
    let rs = spec.root_system();
    let n = rs.roots().len();
    let mut violations = Vec::new();
    for i in 0..n {
        if spec.compact[i] && !spec.compact[rs.negative_of(i)] {
            violations.push(GradingViolation::NotSymmetric { root: i });
        }
    }
    for a in 0..n {
        for b in a..n {
            let sum: Vec<i64> = rs
                .root(a)
                .simple
                .iter()
                .zip(&rs.root(b).simple)
                .map(|(x, y)| x + y)
                .collect();
            let Some(s) = rs.index_of(&sum) else { continue };
            // compact+compact and noncompact+noncompact are compact
            let expected_compact = spec.compact[a] == spec.compact[b];
            if spec.compact[s] != expected_compact {
                violations.push(GradingViolation::Closure {
                    alpha: a,
                    beta: b,
                    sum: s,
                    expected_compact,
                });
            }
        }
    }
    let (_, dim) = spec.q_and_dim();
    if dim % 2 != 0 {
        violations.push(GradingViolation::OddNoncompactCount { count: dim });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// `(G, G_c)` on a shared root system.
#[derive(Debug, Clone)]
pub struct InnerFormPair {
    name: String,
    noncompact: RealFormSpec,
    compact: RealFormSpec,
}

impl InnerFormPair {
    pub fn new(name: impl Into<String>, noncompact: RealFormSpec, compact: RealFormSpec) -> Result<Self> {
        let name = name.into();
        if !Arc::ptr_eq(noncompact.shared_root_system(), compact.shared_root_system())
            && noncompact.root_system().cartan_matrix() != compact.root_system().cartan_matrix()
        {
            return Err(Error::Catalog(format!("{name}: members have different root systems")));
        }
        if !compact.is_compact_form() {
            return Err(Error::Catalog(format!("{name}: compact member has noncompact roots")));
        }
        for member in [&noncompact, &compact] {
            if let Err(v) = validate_real_form(member) {
                return Err(Error::InvalidRealForm {
                    name: member.name().to_string(),
                    violations: v.len(),
                });
            }
        }
        Ok(InnerFormPair {
            name,
            noncompact,
            compact,
        })
    }

    /// The pair `(G_c, G_c)`, used as the trivial comparison.
    pub fn compact_with_itself(&self) -> InnerFormPair {
        InnerFormPair {
            name: format!("{0}/{0}", self.compact.name()),
            noncompact: self.compact.clone(),
            compact: self.compact.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn noncompact(&self) -> &RealFormSpec {
        &self.noncompact
    }

    pub fn compact(&self) -> &RealFormSpec {
        &self.compact
    }

    pub fn root_system(&self) -> &RootSystem {
        self.noncompact.root_system()
    }
}

/// One catalog record: the noncompact member's compact roots as indices in
/// the deterministic root ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub name: String,
    pub cartan_type: String,
    pub compact_roots: Vec<usize>,
}

impl CatalogRecord {
    pub fn to_pair(&self) -> Result<InnerFormPair> {
        let cartan: CartanType = self
            .cartan_type
            .parse()
            .map_err(|e| Error::Catalog(format!("{}: {e}", self.name)))?;
        let rs = Arc::new(build_root_system(&cartan).map_err(|e| Error::Catalog(format!("{}: {e}", self.name)))?);
        let (g, gc) = match self.name.split_once('/') {
            Some((g, gc)) => (g.to_string(), gc.to_string()),
            None => (self.name.clone(), format!("{}_c", self.name)),
        };
        let noncompact = RealFormSpec::new(g, Arc::clone(&rs), &self.compact_roots)?;
        let compact = RealFormSpec::compact_form(gc, rs);
        InnerFormPair::new(self.name.clone(), noncompact, compact)
    }
}

const BUILTIN: &str = include_str!("../catalog/builtin.json");

/// A list of inner-form pairs loaded from catalog records.
#[derive(Debug, Clone)]
pub struct Catalog {
    pairs: Vec<InnerFormPair>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN).expect("built-in catalog is valid")
    }

    pub fn builtin_records() -> Vec<CatalogRecord> {
        serde_json::from_str(BUILTIN).expect("built-in catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let records: Vec<CatalogRecord> =
            serde_json::from_str(text).map_err(|e| Error::Catalog(format!("malformed catalog: {e}")))?;
        let pairs = records.iter().map(CatalogRecord::to_pair).collect::<Result<Vec<_>>>()?;
        Ok(Catalog { pairs })
    }

    pub fn from_path(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Catalog(format!("cannot read {}: {e}", path.display())))?;
        Catalog::from_json(&text)
    }

    pub fn pairs(&self) -> &[InnerFormPair] {
        &self.pairs
    }

    /// Finds a pair by its full name (`"su21/su3"`) or its noncompact label
    /// (`"su21"`).
    pub fn lookup(&self, name: &str) -> Option<&InnerFormPair> {
        self.pairs
            .iter()
            .find(|p| p.name() == name)
            .or_else(|| self.pairs.iter().find(|p| p.noncompact().name() == name))
    }
}

/// The built-in pairs.
pub fn catalog() -> Vec<InnerFormPair> {
    Catalog::builtin().pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> Arc<RootSystem> {
        Arc::new(build_root_system(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn a1_forms() {
        let a1 = rs("A1");
        let su2 = RealFormSpec::compact_form("su2", Arc::clone(&a1));
        assert!(validate_real_form(&su2).is_ok());
        assert_eq!(su2.q_and_dim(), (0, 0));
        assert_eq!(su2.weyl_subgroup_k().len(), 2);
        let sl2 = RealFormSpec::new("sl2R", a1, &[]).unwrap();
        assert!(validate_real_form(&sl2).is_ok());
        assert_eq!(sl2.q_and_dim(), (1, 2));
        assert_eq!(sl2.weyl_subgroup_k().members(), &[0]);
    }

    #[test]
    fn su21_counts() {
        let a2 = rs("A2");
        // ±α1 compact
        let su21 = RealFormSpec::new("su21", Arc::clone(&a2), &[0, 3]).unwrap();
        assert!(validate_real_form(&su21).is_ok());
        assert_eq!(su21.q_and_dim(), (2, 4));
        assert_eq!(su21.weyl_subgroup_k().len(), 2);
        let su3 = RealFormSpec::compact_form("su3", a2);
        assert_eq!(su3.q_and_dim(), (0, 0));
    }

    #[test]
    fn simple_pairs_only_is_not_a_grading() {
        let a2 = rs("A2");
        // ±α1, ±α2 compact, ±(α1+α2) not
        let bad = RealFormSpec::new("bad", a2, &[0, 1, 3, 4]).unwrap();
        let violations = validate_real_form(&bad).unwrap_err();
        assert!(violations.contains(&GradingViolation::Closure {
            alpha: 0,
            beta: 1,
            sum: 2,
            expected_compact: true
        }));
        // (α1+α2) + (-α1) = α2: noncompact + compact must be noncompact
        assert!(violations.contains(&GradingViolation::Closure {
            alpha: 2,
            beta: 3,
            sum: 1,
            expected_compact: false
        }));
    }

    #[test]
    fn asymmetric_subset_is_reported() {
        let a1 = rs("A1");
        let bad = RealFormSpec::new("bad", a1, &[0]).unwrap();
        let v = validate_real_form(&bad).unwrap_err();
        assert!(v.contains(&GradingViolation::NotSymmetric { root: 0 }));
        assert!(v.contains(&GradingViolation::OddNoncompactCount { count: 1 }));
    }

    #[test]
    fn catalog_lookup() {
        let cat = Catalog::builtin();
        assert!(cat.pairs().len() >= 4);
        let sl2 = cat.lookup("sl2R/su2").unwrap();
        assert!(sl2.noncompact().compact_roots().is_empty());
        assert!(sl2.compact().is_compact_form());
        let so22 = cat.lookup("so22").unwrap();
        assert_eq!(so22.name(), "so22/so4");
        assert!(so22.noncompact().compact_roots().is_empty());
        assert!(cat.lookup("nope").is_none());
    }

    #[test]
    fn malformed_catalogs() {
        assert!(matches!(Catalog::from_json("{"), Err(Error::Catalog(_))));
        let bad_grading = r#"[{"name":"x/y","cartan_type":"A2","compact_roots":[0,1,3,4]}]"#;
        assert!(matches!(
            Catalog::from_json(bad_grading),
            Err(Error::InvalidRealForm { .. })
        ));
        let out_of_range = r#"[{"name":"x/y","cartan_type":"A1","compact_roots":[7]}]"#;
        assert!(matches!(Catalog::from_json(out_of_range), Err(Error::Catalog(_))));
    }
}
