use std::time::{Duration, Instant};

use omlkit::kalmbach::{chain_block, full_state_check, kalmbach_embedding, maximal_chains, verify_embedding, SetPoset};
use omlkit::lattice::{boolean, horizontal_sum, mo, product, two};
use omlkit::OrthoLattice;

fn poset(lines: &str) -> SetPoset {
    SetPoset::parse(lines).unwrap()
}

fn figures() -> Vec<(&'static str, SetPoset, OrthoLattice)> {
    vec![
        ("3-chain", poset("{}\n{a}\n{a,b}\n"), boolean(2)),
        ("4-chain", poset("{}\n{a}\n{a,b}\n{a,b,c}\n"), boolean(3)),
        ("2^2", poset("{}\n{a}\n{b}\n{a,b}\n"), mo(2).unwrap()),
        (
            "pentagon",
            poset("{}\n{a}\n{a,b}\n{c}\n{a,b,c}\n"),
            horizontal_sum(&boolean(2), &boolean(3)).unwrap(),
        ),
        (
            "shared top",
            poset("{}\n{a}\n{b}\n{a,b,c}\n{a,b,c,d}\n"),
            product(&two(), &mo(2).unwrap()).unwrap(),
        ),
    ]
}

#[test]
fn kalmbach_lattices_of_the_five_figures() {
    for (name, p, expected) in figures() {
        let start = Instant::now();
        let (k, map) = kalmbach_embedding(&p).unwrap();
        assert!(k.is_isomorphic(&expected), "{name}");
        let report = verify_embedding(&map);
        assert!(report.passed(), "{name}: {report:?}");
        let names: Vec<&str> = report.checks.iter().map(|c| c.property).collect();
        assert!(names.contains(&"order") && names.contains(&"meets") && names.contains(&"joins"));
        let states = full_state_check(&k).unwrap();
        assert!(states.separating && states.unital, "{name}: {states:?}");
        assert!(k.is_orthomodular().unwrap().holds(), "{name}");
        assert!(start.elapsed() < Duration::from_secs(1), "{name} took {:?}", start.elapsed());
    }
}

#[test]
fn chain_counts_and_lengths() {
    let lengths = |p: &SetPoset| {
        let mut l: Vec<usize> = maximal_chains(p).iter().map(Vec::len).collect();
        l.sort();
        l
    };
    let f = figures();
    assert_eq!(lengths(&f[0].1), [3]);
    assert_eq!(lengths(&f[2].1), [3, 3]);
    assert_eq!(lengths(&f[3].1), [3, 4]);
    assert_eq!(lengths(&f[4].1), [4, 4]);
}

#[test]
fn chain_atoms_are_successive_differences() {
    let set = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<std::collections::BTreeSet<_>>();
    let p = poset("{}\n{a}\n{b}\n{a,b,c}\n{a,b,c,d}\n");
    let chains = maximal_chains(&p);
    let first = chain_block(&p, &chains[0]).unwrap();
    let second = chain_block(&p, &chains[1]).unwrap();
    assert_eq!(first.atoms, [set(&["a"]), set(&["b", "c"]), set(&["d"])]);
    assert_eq!(second.atoms, [set(&["b"]), set(&["a", "c"]), set(&["d"])]);
    assert_eq!(first.size(), 8);
    // a chain must increase strictly
    assert!(chain_block(&p, &[0, 0]).is_err());
    assert!(chain_block(&p, &[0]).is_err());
}

#[test]
fn images_keep_source_labels() {
    for (name, p, _) in figures() {
        let (k, map) = kalmbach_embedding(&p).unwrap();
        for x in 0..p.len() {
            let label = k.label(map.images[x]);
            let source = p.label(x);
            // bottom and top keep their lattice names
            if x == p.bottom() {
                assert_eq!(map.images[x], k.zero(), "{name}");
            } else if x == p.top() {
                assert_eq!(map.images[x], k.one(), "{name}");
            } else {
                assert_eq!(label, source, "{name}");
            }
        }
    }
}

#[test]
fn tampered_maps_are_caught_with_witnesses() {
    let p = poset("{}\n{a}\n{b}\n{a,b}\n");
    let (_, mut map) = kalmbach_embedding(&p).unwrap();
    // send {a} to the image of {b}
    map.images[1] = map.images[2];
    let report = verify_embedding(&map);
    assert!(!report.passed());
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.iter().any(|c| c.property == "injective"));
    assert!(failed.iter().all(|c| c.witness.is_some()));
}

#[test]
fn invalid_posets_are_rejected() {
    assert!(SetPoset::parse("{a}\n{a,b}\n").is_err());
    assert!(SetPoset::parse("{}\n{a}\n{b}\n").is_err());
    assert!(SetPoset::parse("{}\n{a}\n{a}\n").is_err());
}
