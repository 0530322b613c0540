use num_traits::Signed;
use tdual_core::rootdata::{
    all_roots, basic_form, dual_lattice, find_phi, langlands_dual, named_group, Component,
};

const GROUPS: &[&str] = &[
    "SU(2)", "SO(3)", "SU(3)", "PSU(3)", "SU(4)", "SO(6)", "Spin(5)", "SO(5)", "Spin(7)", "SO(7)",
    "Sp(3)", "PSp(3)", "Spin(8)", "SO(8)", "G2", "F4", "E6", "E6_adj", "E7", "SU(2)xG2",
];

#[test]
fn root_counts_match_table() {
    for name in GROUPS {
        let rd = named_group(name).unwrap();
        let expected: usize = rd.components.iter().map(Component::root_count).sum();
        assert_eq!(all_roots(&rd).len(), expected, "{name}");
    }
    assert_eq!(all_roots(&named_group("Spin(5)").unwrap()).len(), 8);
}

#[test]
fn basic_form_is_weyl_invariant() {
    for name in GROUPS {
        let rd = named_group(name).unwrap();
        for k in [1, 2, 5] {
            let f = basic_form(&rd, k).unwrap();
            assert!(
                f.is_weyl_invariant(&rd) && f.is_positive_definite(),
                "{name}"
            );
        }
    }
}

#[test]
fn langlands_dual_is_involutive() {
    for name in GROUPS {
        let rd = named_group(name).unwrap();
        let back = langlands_dual(&langlands_dual(&rd));
        assert_eq!(back.cartan, rd.cartan, "{name}");
        assert!(
            back.integral_lattice.same_lattice(&rd.integral_lattice),
            "{name}"
        );
        let d = langlands_dual(&rd);
        assert_eq!(
            d.fundamental_group_order() * rd.fundamental_group_order(),
            rd.cartan.det().abs(),
            "{name}"
        );
        assert_eq!(d.is_simply_connected(), rd.is_adjoint(), "{name}");
    }
}

#[test]
fn dual_lattice_extremes() {
    for name in GROUPS {
        let rd = named_group(name).unwrap();
        let dual = dual_lattice(&rd, &rd.integral_lattice).unwrap();
        if rd.is_simply_connected() {
            assert!(dual.same_lattice(&rd.weight_lattice()), "{name}");
        }
        if rd.is_adjoint() {
            assert!(dual.same_lattice(&rd.root_lattice()), "{name}");
        }
    }
}

#[test]
fn phi_transports_cartan_when_found() {
    for name in GROUPS {
        let rd = named_group(name).unwrap();
        if let Some(iso) = find_phi(&rd).found() {
            let b = langlands_dual(&rd).cartan;
            let r = rd.rank();
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(rd.cartan[(i, j)], b[(iso.perm[i], iso.perm[j])], "{name}");
                }
            }
        }
    }
}
