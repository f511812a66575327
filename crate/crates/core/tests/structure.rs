//! Exhaustive structural checks on root systems and Weyl groups up to rank 4.

use std::collections::HashSet;

use shelstad_core::real_forms::{validate_real_form, Catalog};
use shelstad_core::roots::{build_root_system, coset_representatives, WeylSubgroup};

const TYPES: &[(&str, usize, usize)] = &[
    // (type, |R|, |W|) from the closed formulas
    ("A1", 2, 2),
    ("A2", 6, 6),
    ("A3", 12, 24),
    ("A4", 20, 120),
    ("B2", 8, 8),
    ("B3", 18, 48),
    ("B4", 32, 384),
    ("C2", 8, 8),
    ("C3", 18, 48),
    ("C4", 32, 384),
    ("D2", 4, 4),
    ("D3", 12, 24),
    ("D4", 24, 192),
    ("A1xA1", 4, 4),
    ("A2xA1", 8, 12),
];

#[test]
fn orders_and_root_counts() {
    for &(name, roots, order) in TYPES {
        let rs = build_root_system(&name.parse().unwrap()).unwrap();
        assert_eq!(rs.roots().len(), roots, "{name}");
        assert_eq!(rs.weyl_group().len(), order, "{name}");
        let words: HashSet<Vec<u8>> = rs.weyl_group().elements().iter().map(|e| e.word().to_vec()).collect();
        assert_eq!(words.len(), order, "{name}: reduced words not distinct");
    }
}

#[test]
fn root_set_is_closed_under_reflections() {
    for &(name, _, _) in TYPES {
        let rs = build_root_system(&name.parse().unwrap()).unwrap();
        let group = rs.weyl_group();
        let set: HashSet<Vec<i64>> = rs.roots().iter().map(|r| r.simple.clone()).collect();
        for i in 0..rs.rank() {
            let s = group.element(group.simple_reflection(i));
            for (k, root) in rs.roots().iter().enumerate() {
                let image = &rs.roots()[s.act_on_root(k)];
                assert!(set.contains(&image.simple));
                // s_i(α) = α - <α, α_i^∨> α_i
                let mut expected = root.simple.clone();
                expected[i] -= root.weight[i];
                assert_eq!(image.simple, expected, "{name}");
            }
        }
    }
}

#[test]
fn longest_element_reverses_positivity() {
    for &(name, roots, _) in TYPES {
        let rs = build_root_system(&name.parse().unwrap()).unwrap();
        let group = rs.weyl_group();
        let w0 = group.element(group.longest());
        assert_eq!(w0.length(), roots / 2, "{name}");
        for k in 0..rs.num_positive() {
            assert!(!rs.is_positive(w0.act_on_root(k)), "{name}");
        }
    }
}

fn check_partition(group: &shelstad_core::roots::WeylGroup, sub: &WeylSubgroup) {
    let reps = coset_representatives(group, sub).unwrap();
    assert_eq!(reps.len() * sub.len(), group.len());
    let mut seen = vec![false; group.len()];
    for &w in &reps {
        for &k in sub.members() {
            let x = group.mul(w, k);
            assert!(!seen[x], "cosets overlap");
            seen[x] = true;
            assert!(group.element(w).length() <= group.element(x).length());
        }
    }
    assert!(seen.into_iter().all(|b| b));
}

#[test]
fn coset_representatives_partition() {
    for &(name, _, _) in TYPES {
        let rs = build_root_system(&name.parse().unwrap()).unwrap();
        let group = rs.weyl_group();
        // every parabolic subgroup
        for mask in 0u32..(1 << rs.rank()) {
            let gens: Vec<usize> = (0..rs.rank())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| group.simple_reflection(i))
                .collect();
            check_partition(group, &WeylSubgroup::generated_by(group, &gens));
        }
    }
    for pair in Catalog::builtin().pairs() {
        let group = pair.root_system().weyl_group();
        check_partition(group, &pair.noncompact().weyl_subgroup_k());
    }
}

#[test]
fn every_catalog_grading_is_closed() {
    for pair in Catalog::builtin().pairs() {
        assert!(validate_real_form(pair.noncompact()).is_ok(), "{}", pair.name());
        assert!(validate_real_form(pair.compact()).is_ok(), "{}", pair.name());
    }
}
