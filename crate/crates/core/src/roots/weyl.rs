//! Weyl groups as permutation groups on the root set.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::weight::Weight;
use crate::error::{Error, Result};

/// An element of the Weyl group, stored as the permutation it induces on
/// the root list, together with its shortlex-minimal reduced word and its
/// matrix on fundamental-weight coordinates.
#[derive(Debug, Clone)]
pub struct WeylElement {
    word: Vec<u8>,
    perm: Vec<u32>,
    matrix: Vec<i64>,
}

impl WeylElement {
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Index of the image of root `i`.
    pub fn act_on_root(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    /// Row-major matrix on fundamental-weight coordinates.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn act(&self, weight: &Weight) -> Weight {
        weight.transform(&self.matrix)
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let letters: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{}", letters.join("·"))
    }
}

/// Full enumeration of a finite Weyl group in shortlex order of reduced
/// words. Element `0` is the identity; the last element is the longest.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<u32>, usize>,
    inverses: Vec<usize>,
    simple: Vec<usize>,
}

impl WeylGroup {
    /// Breadth-first closure under right multiplication by simple
    /// reflections, given the root permutations and weight matrices of the
    /// simple reflections.
    pub(crate) fn enumerate(
        simple_perms: &[Vec<u32>],
        simple_matrices: &[Vec<i64>],
        root_count: usize,
        max_order: u64,
    ) -> Result<Self> {
        let rank = simple_perms.len();
        let identity = WeylElement {
            word: Vec::new(),
            perm: (0..root_count as u32).collect(),
            matrix: identity_matrix(rank),
        };
        let mut lookup = HashMap::new();
        lookup.insert(identity.perm.clone(), 0);
        let mut elements = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for i in 0..rank {
                let base = &elements[idx];
                let perm: Vec<u32> = simple_perms[i].iter().map(|&k| base.perm[k as usize]).collect();
                if lookup.contains_key(&perm) {
                    continue;
                }
                if elements.len() as u64 >= max_order {
                    return Err(Error::Unsupported(format!(
                        "Weyl group exceeds the configured order limit {max_order}"
                    )));
                }
                let mut word = base.word.clone();
                word.push(i as u8);
                let matrix = mat_mul(&base.matrix, &simple_matrices[i], rank);
                lookup.insert(perm.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement { word, perm, matrix });
            }
        }
        let simple = simple_perms.iter().map(|p| lookup[p]).collect();
        let mut group = WeylGroup {
            rank,
            elements,
            lookup,
            inverses: Vec::new(),
            simple,
        };
        group.inverses = (0..group.len())
            .map(|i| {
                let perm = &group.elements[i].perm;
                let mut inv = vec![0u32; perm.len()];
                for (k, &p) in perm.iter().enumerate() {
                    inv[p as usize] = k as u32;
                }
                group.lookup[&inv]
            })
            .collect();
        Ok(group)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple_reflection(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn index_of(&self, element: &WeylElement) -> Option<usize> {
        self.lookup.get(&element.perm).copied()
    }

    pub fn index_of_permutation(&self, perm: &[u32]) -> Option<usize> {
        self.lookup.get(perm).copied()
    }

    /// Index of `a · b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let pa = &self.elements[a].perm;
        let perm: Vec<u32> = self.elements[b].perm.iter().map(|&k| pa[k as usize]).collect();
        self.lookup[&perm]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Index of the element given by an arbitrary (not necessarily reduced)
    /// word in the simple reflections.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(self.identity(), |acc, &i| self.mul(acc, self.simple[i]))
    }
}

fn identity_matrix(r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let aik = a[i * r + k];
            if aik == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += aik * b[k * r + j];
            }
        }
    }
    out
}

/// A subgroup of a Weyl group, as a sorted list of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylSubgroup {
    group_order: usize,
    members: Vec<usize>,
}

impl WeylSubgroup {
    /// Subgroup generated by the given elements of `group`.
    pub fn generated_by(group: &WeylGroup, generators: &[usize]) -> Self {
        let mut seen = vec![false; group.len()];
        seen[group.identity()] = true;
        let mut members = vec![group.identity()];
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = group.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        WeylSubgroup {
            group_order: group.len(),
            members,
        }
    }

    /// Checks that `elements` lie in `group` and form a subgroup.
    pub fn from_elements(group: &WeylGroup, elements: &[WeylElement]) -> Result<Self> {
        let mut members = elements
            .iter()
            .map(|e| {
                group
                    .index_of(e)
                    .ok_or_else(|| Error::NotASubgroup(format!("{e} is not an element of W_G")))
            })
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        members.dedup();
        if members.binary_search(&group.identity()).is_err() {
            return Err(Error::NotASubgroup("missing the identity".into()));
        }
        for &a in &members {
            for &b in &members {
                if members.binary_search(&group.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: {} · {}",
                        group.element(a),
                        group.element(b)
                    )));
                }
            }
        }
        Ok(WeylSubgroup {
            group_order: group.len(),
            members,
        })
    }

    pub fn whole(group: &WeylGroup) -> Self {
        WeylSubgroup {
            group_order: group.len(),
            members: (0..group.len()).collect(),
        }
    }

    pub fn trivial(group: &WeylGroup) -> Self {
        WeylSubgroup {
            group_order: group.len(),
            members: vec![group.identity()],
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }
}

/// Minimal-length representatives of the left cosets `w·W_K`, in shortlex
/// order.
pub fn coset_representatives(group: &WeylGroup, subgroup: &WeylSubgroup) -> Result<Vec<usize>> {
    if subgroup.group_order != group.len() || subgroup.members.iter().any(|&m| m >= group.len()) {
        return Err(Error::NotASubgroup(
            "subgroup was built from a different Weyl group".into(),
        ));
    }
    let mut covered = vec![false; group.len()];
    let mut reps = Vec::with_capacity(group.len() / subgroup.len());
    // Elements are stored in shortlex order, so the first element met in
    // each coset has minimal length.
    for w in 0..group.len() {
        if covered[w] {
            continue;
        }
        reps.push(w);
        for &k in &subgroup.members {
            covered[group.mul(w, k)] = true;
        }
    }
    Ok(reps)
}
