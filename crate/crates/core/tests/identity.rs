//! The packet identity, the coset regrouping of the compact fixed-point sum
//! and the index/character bridge on every catalog pair.

use shelstad_core::characters::{ds_character, HarishChandraParameter};
use shelstad_core::fixed_point::{tau_index_noncompact, verify_pf1_decomposition};
use shelstad_core::packets::{build_packet, sweep_sampled, LambdaRange, Route};
use shelstad_core::real_forms::Catalog;
use shelstad_core::roots::coset_representatives;
use shelstad_core::torus::sample_regular_points;

#[test]
fn identity_on_every_catalog_pair() {
    for pair in Catalog::builtin().pairs() {
        let range = LambdaRange::ShiftedBox { lo: 0, hi: 1 };
        let out = sweep_sampled(pair, &range, 3, 13, 7, Route::Both).unwrap();
        assert!(out.all_passed(), "{}: {:?}", pair.name(), out.summary);
        assert_eq!(out.reports.len(), 3 << pair.root_system().rank());
    }
}

#[test]
fn regrouping_and_bridge_on_every_catalog_pair() {
    for pair in Catalog::builtin().pairs() {
        let spec = pair.noncompact();
        let rs = spec.root_system();
        let group = rs.weyl_group();
        let reps = coset_representatives(group, &spec.weyl_subgroup_k()).unwrap();
        let points = sample_regular_points(rs, 2, 13, 11).unwrap();
        // a dominant λ and one in another chamber
        let dominant = rs.rho().scale_int(2);
        let other = group
            .element(group.longest())
            .act(&(&rs.rho() + &rs.rho().scale_int(1)));
        for lambda in [dominant, other] {
            let param = HarishChandraParameter::new(lambda.clone(), rs).unwrap();
            for g in &points {
                let check = verify_pf1_decomposition(pair, &param, g).unwrap();
                assert!(check.bijection, "{} {lambda}", pair.name());
                assert!(check.holds, "{} {lambda} {g}", pair.name());
                for &w in &reps {
                    let tau = tau_index_noncompact(&param, spec, w, g).unwrap();
                    let moved = param.transform(rs, group.inverse(w));
                    let theta = ds_character(&moved, spec, g).unwrap();
                    let expected = if spec.sign() < 0 { -theta } else { theta };
                    assert_eq!(tau, expected, "{} w={w} {lambda} {g}", pair.name());
                    for &k in spec.weyl_subgroup_k().members() {
                        let other_rep = group.mul(w, k);
                        assert_eq!(tau_index_noncompact(&param, spec, other_rep, g).unwrap(), tau);
                    }
                }
            }
        }
    }
}

#[test]
fn packet_members_are_distinct_representations() {
    for pair in Catalog::builtin().pairs() {
        let rs = pair.root_system();
        let w_k = pair.noncompact().weyl_subgroup_k();
        let packet = build_packet(pair, &rs.rho()).unwrap();
        assert_eq!(packet.len() * w_k.len(), rs.weyl_group().len());
        for (i, a) in packet.members.iter().enumerate() {
            assert_eq!(a.dominant(), &rs.rho());
            for b in &packet.members[i + 1..] {
                assert!(!a.same_representation(b, rs, &w_k), "{}", pair.name());
            }
        }
    }
}
