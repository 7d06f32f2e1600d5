use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use omlkit::rays::{
    contexts, element_count_of_orthoposet, ortho_closure, parse_rays, peres_rays, rays_to_text, replay_derivation,
    seventeen_orthogenerators, Ray, Scalar, DEFAULT_CLOSURE_CAP,
};
use omlkit::states::enumerate_states;
use proptest::prelude::*;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6).prop_map(|(a, da, b, db)| Scalar::new(q(a, da), q(b, db)))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("zero", |s| !s.is_zero())
}

fn ray3() -> impl Strategy<Value = Ray> {
    prop::collection::vec(scalar(), 3).prop_filter_map("zero vector", |c| Ray::new(c).ok())
}

/// Exact dot product on (rational, √2-coefficient) pairs, without `Scalar`
/// arithmetic: (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2.
fn oracle_dot(x: &Ray, y: &Ray) -> (BigRational, BigRational) {
    let mut r = (q(0, 1), q(0, 1));
    for (s, t) in x.coords().iter().zip(y.coords()) {
        let (a, b) = (s.rational(), s.sqrt2_coeff());
        let (c, d) = (t.rational(), t.sqrt2_coeff());
        r.0 += a * c + q(2, 1) * b * d;
        r.1 += a * d + b * c;
    }
    r
}

fn oracle_orthogonal(x: &Ray, y: &Ray) -> bool {
    let (a, b) = oracle_dot(x, y);
    a == q(0, 1) && b == q(0, 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_identities(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
        // (a + b√2)(a - b√2) = a² - 2b²
        prop_assert_eq!(&x * &x.conjugate(), Scalar::new(x.norm(), q(0, 1)));
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x.clone());
    }

    #[test]
    fn inverses(x in nonzero_scalar()) {
        let inv = x.inv().unwrap();
        prop_assert_eq!(&x * &inv, Scalar::one());
        prop_assert_eq!(&Scalar::one() / &x, inv);
    }

    #[test]
    fn ordering_agrees_with_floats(x in scalar(), y in scalar()) {
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(x < y, fx < fy);
        }
        prop_assert_eq!(x.signum() as f64, if fx.abs() < 1e-12 { 0.0 } else { fx.signum() });
    }

    #[test]
    fn canonical_form_is_idempotent_and_scale_invariant(r in ray3(), k in nonzero_scalar(), root in any::<bool>()) {
        let again = Ray::new(r.coords().to_vec()).unwrap();
        prop_assert_eq!(&again, &r);
        let k = if root { &k * &Scalar::sqrt2() } else { k };
        let scaled = Ray::new(r.coords().iter().map(|c| c * &k).collect()).unwrap();
        prop_assert_eq!(&scaled, &r);
        let first = r.coords().iter().find(|c| !c.is_zero()).unwrap();
        prop_assert_eq!(first.signum(), 1);
        prop_assert_eq!(Ray::parse_coords(&r.coords().iter().map(Scalar::to_file_token).collect::<Vec<_>>()).unwrap(), r);
    }

    #[test]
    fn nor_is_orthogonal_to_both(x in ray3(), y in ray3()) {
        match x.nor(&y) {
            Ok(n) => {
                prop_assert!(oracle_orthogonal(&n, &x));
                prop_assert!(oracle_orthogonal(&n, &y));
                prop_assert_eq!(y.nor(&x).unwrap(), n);
            }
            Err(_) => prop_assert_eq!(&x, &y),
        }
    }

    #[test]
    fn orthogonality_matches_the_oracle(x in ray3(), y in ray3()) {
        prop_assert_eq!(x.is_orthogonal(&y), oracle_orthogonal(&x, &y));
    }

    #[test]
    fn closure_is_idempotent_and_extensive(rays in prop::collection::vec(
        prop::collection::vec(-2i64..=2, 3).prop_filter_map("zero", |c| Ray::from_ints(&c).ok()), 1..5)) {
        let closed = ortho_closure(&rays, 2_000);
        prop_assume!(closed.is_ok());
        let closed = closed.unwrap();
        for r in &rays {
            prop_assert!(closed.contains(r));
        }
        let twice = ortho_closure(&closed, 2_000).unwrap();
        prop_assert_eq!(twice, closed.clone());
        // every orthogonal pair has its nor inside
        for a in &closed {
            for b in &closed {
                if a < b && oracle_orthogonal(a, b) {
                    prop_assert!(closed.contains(&a.nor(b).unwrap()));
                }
            }
        }
    }
}

fn closed_peres() -> BTreeSet<Ray> {
    ortho_closure(&peres_rays(), DEFAULT_CLOSURE_CAP).unwrap()
}

/// Mutually orthogonal triples, by scanning all triples with the oracle.
fn brute_force_triads(rays: &[Ray]) -> BTreeSet<BTreeSet<String>> {
    let n = rays.len();
    let orth: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| oracle_orthogonal(&rays[i], &rays[j])).collect())
        .collect();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if !orth[i][j] {
                continue;
            }
            for k in j + 1..n {
                if orth[i][k] && orth[j][k] {
                    out.insert([i, j, k].iter().map(|&x| rays[x].label()).collect());
                }
            }
        }
    }
    out
}

#[test]
fn peres_set_has_33_rays_and_replays() {
    let rays = peres_rays();
    assert_eq!(rays.len(), 33);
    assert_eq!(replay_derivation().unwrap(), rays);
}

#[test]
fn closure_has_57_rays_and_40_triads() {
    let closed = closed_peres();
    assert_eq!(closed.len(), 57);
    let list: Vec<Ray> = closed.iter().cloned().collect();
    let triads = brute_force_triads(&list);
    assert_eq!(triads.len(), 40);
    let d = contexts(&closed).unwrap();
    assert_eq!(d.named_context_set(), triads);
    assert_eq!(ortho_closure(&seventeen_orthogenerators(), DEFAULT_CLOSURE_CAP).unwrap(), closed);
}

#[test]
fn peres_closure_admits_no_two_valued_state() {
    let closed = closed_peres();
    let d = contexts(&closed).unwrap();
    assert!(enumerate_states(&d).is_empty());
    assert_eq!(element_count_of_orthoposet(&closed).unwrap(), 116);
}

#[test]
fn peres_rays_contain_16_triads() {
    let rays = peres_rays();
    let list: Vec<Ray> = rays.iter().cloned().collect();
    let triads = brute_force_triads(&list);
    assert_eq!(triads.len(), 16);
}

#[test]
fn ray_file_round_trip() {
    let closed = closed_peres();
    let text = rays_to_text(&closed);
    let back: BTreeSet<Ray> = parse_rays(&text).unwrap().into_iter().collect();
    assert_eq!(back, closed);
}

#[test]
fn closure_cap_is_reported() {
    assert!(ortho_closure(&peres_rays(), 5).is_err());
}
