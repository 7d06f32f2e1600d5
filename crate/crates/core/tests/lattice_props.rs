use omlkit::lattice::{boolean, horizontal_sum, mo, product, two, LatticeJson, ScanLimit};
use omlkit::{GreechieDiagram, OrthoLattice};
use proptest::prelude::*;

fn base(k: usize) -> OrthoLattice {
    match k {
        0 => two(),
        1 => boolean(2),
        2 => boolean(3),
        3 => mo(1).unwrap(),
        4 => mo(2).unwrap(),
        _ => mo(3).unwrap(),
    }
}

/// Small ortholattices built from Boolean algebras and MO_n by horizontal
/// sums and products, capped at 48 elements.
fn ortholattice() -> impl Strategy<Value = OrthoLattice> {
    let leaf = (0..6usize).prop_map(base);
    leaf.prop_recursive(3, 48, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, sum)| {
            if sum || a.len() * b.len() > 48 {
                horizontal_sum(&a, &b).unwrap()
            } else {
                product(&a, &b).unwrap()
            }
        })
    })
}

/// Loop-free Greechie diagrams: each new block shares at most one atom with
/// one earlier block.
fn tree_diagram() -> impl Strategy<Value = GreechieDiagram> {
    prop::collection::vec((2..=4usize, any::<prop::sample::Index>(), any::<bool>()), 1..=4).prop_map(
        |spec| {
            let mut contexts: Vec<Vec<String>> = Vec::new();
            let mut next = 0;
            for (size, pick, share) in spec {
                let mut ctx = Vec::new();
                // a two-atom block sharing an atom would force its other atom
                // equal to the partner's, so only larger blocks share
                let shareable: Vec<String> =
                    contexts.iter().filter(|c| c.len() > 2).flatten().cloned().collect();
                if share && size > 2 && !shareable.is_empty() {
                    ctx.push(pick.get(&shareable).clone());
                }
                while ctx.len() < size {
                    ctx.push(format!("a{next}"));
                    next += 1;
                }
                contexts.push(ctx);
            }
            GreechieDiagram::from_named_contexts(contexts).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn complement_is_an_order_reversing_involution(l in ortholattice()) {
        for x in 0..l.len() {
            prop_assert_eq!(l.ortho(l.ortho(x)), x);
            prop_assert_eq!(l.join(x, l.ortho(x)), l.one());
            prop_assert_eq!(l.meet(x, l.ortho(x)), l.zero());
            for y in 0..l.len() {
                prop_assert_eq!(l.leq(x, y), l.leq(l.ortho(y), l.ortho(x)));
            }
        }
    }

    #[test]
    fn lattice_identities(l in ortholattice()) {
        let n = l.len();
        for x in 0..n {
            prop_assert_eq!(l.meet(x, x), x);
            prop_assert_eq!(l.join(x, l.zero()), x);
            prop_assert_eq!(l.meet(x, l.one()), x);
            for y in 0..n {
                prop_assert_eq!(l.meet(x, y), l.meet(y, x));
                prop_assert_eq!(l.join(x, y), l.join(y, x));
                prop_assert_eq!(l.join(x, l.meet(x, y)), x);
                prop_assert_eq!(l.meet(x, l.join(x, y)), x);
                prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
                // de Morgan
                prop_assert_eq!(l.ortho(l.join(x, y)), l.meet(l.ortho(x), l.ortho(y)));
            }
        }
        for x in (0..n).step_by(3) {
            for y in 0..n {
                for z in (0..n).step_by(2) {
                    prop_assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                    prop_assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
                }
            }
        }
    }

    #[test]
    fn law_hierarchy(l in ortholattice()) {
        let [d, m, o] = l.check_all(ScanLimit::unlimited()).unwrap();
        if d.holds() {
            prop_assert!(m.holds());
        }
        if m.holds() {
            prop_assert!(o.holds());
        }
        // MO_n pieces and Boolean algebras are orthomodular, and the
        // constructions preserve it.
        prop_assert!(o.holds());
    }

    #[test]
    fn witnesses_really_fail(l in ortholattice()) {
        let [d, m, _] = l.check_all(ScanLimit::unlimited()).unwrap();
        if let Some(w) = d.counterexample {
            let (lhs, rhs) = l.distributivity_sides(w.elements[0], w.elements[1], w.elements[2]);
            prop_assert_eq!((lhs, rhs), (w.lhs, w.rhs));
            prop_assert_ne!(lhs, rhs);
        }
        if let Some(w) = m.counterexample {
            prop_assert!(l.leq(w.elements[0], w.elements[2]));
            let (lhs, rhs) = l.modularity_sides(w.elements[0], w.elements[1], w.elements[2]);
            prop_assert_ne!(lhs, rhs);
        }
    }

    #[test]
    fn horizontal_sum_commutes_and_associates(a in ortholattice(), b in ortholattice(), c in (0..6usize).prop_map(base)) {
        prop_assume!(a.len() + b.len() + c.len() <= 60);
        let ab = horizontal_sum(&a, &b).unwrap();
        let ba = horizontal_sum(&b, &a).unwrap();
        prop_assert!(ab.is_isomorphic(&ba));
        let left = horizontal_sum(&ab, &c).unwrap();
        let right = horizontal_sum(&a, &horizontal_sum(&b, &c).unwrap()).unwrap();
        prop_assert!(left.is_isomorphic(&right));
        prop_assert_eq!(ab.len(), a.len() + b.len() - 2);
    }

    #[test]
    fn json_round_trip(l in ortholattice()) {
        let back = OrthoLattice::from_json(&l.to_json()).unwrap();
        prop_assert_eq!(back.labels(), l.labels());
        for x in 0..l.len() {
            prop_assert_eq!(back.ortho(x), l.ortho(x));
            for y in 0..l.len() {
                prop_assert_eq!(back.leq(x, y), l.leq(x, y));
            }
        }
        let plain = LatticeJson::from_lattice(l.lattice());
        let again = LatticeJson::parse(&plain.to_string_pretty()).unwrap().to_lattice().unwrap();
        prop_assert_eq!(again.labels(), l.labels());
    }

    #[test]
    fn loop_free_diagrams_paste_to_orthomodular_lattices(d in tree_diagram()) {
        let l = d.to_lattice().unwrap();
        prop_assert!(l.is_orthomodular().unwrap().holds());
        let back = GreechieDiagram::from_lattice(&l).unwrap();
        prop_assert_eq!(back.named_context_set(), d.named_context_set());
        prop_assert_eq!(GreechieDiagram::parse(&d.to_text()).unwrap(), d);
    }
}

#[test]
fn mo_n_has_2n_plus_2_elements_and_n_blocks() {
    for n in 1..=6 {
        let l = mo(n).unwrap();
        assert_eq!(l.len(), 2 * n + 2);
        let d = GreechieDiagram::from_lattice(&l).unwrap();
        assert_eq!(d.contexts().len(), n);
    }
}

#[test]
fn mo2_witness_matches_the_textbook_failure() {
    let l = mo(2).unwrap();
    let (p, q) = (l.index_of("p-").unwrap(), l.index_of("q-").unwrap());
    // p ∨ (q ∧ q') = p, while (p ∨ q) ∧ (p ∨ q') = 1
    assert_eq!(l.join(p, l.meet(q, l.ortho(q))), p);
    assert_eq!(l.meet(l.join(p, q), l.join(p, l.ortho(q))), l.one());
}

#[test]
fn scan_limit_is_enforced() {
    let big = boolean(6);
    assert!(big.check_all(ScanLimit::at_most(10)).is_err());
    assert!(big.check_all(ScanLimit::at_most(64)).is_ok());
}
