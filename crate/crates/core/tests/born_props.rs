use omlkit::born::{
    born_probability, expectation, exclusivity_pattern, j_squared, reconstruct_j_squared, rotated_j_squared,
    rotated_ur, spectral_expectation, ur_operator, CMatrix, Density, Hermitian, Projector, C64,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Matrices as printed for the axis tripod, written out entry by entry.
fn printed_j_squared() -> [CMatrix; 3] {
    let h = 0.5;
    [
        CMatrix::from_real(&[&[h, 0.0, h], &[0.0, 1.0, 0.0], &[h, 0.0, h]]).unwrap(),
        CMatrix::from_real(&[&[h, 0.0, -h], &[0.0, 1.0, 0.0], &[-h, 0.0, h]]).unwrap(),
        CMatrix::from_real(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]).unwrap(),
    ]
}

/// The same for the tripod rotated by π/4 about z.
fn printed_rotated_j_squared() -> [CMatrix; 3] {
    let (o, h, one) = (c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0));
    let (mi, pi) = (c(0.0, -0.5), c(0.0, 0.5));
    [
        CMatrix::from_rows(&[vec![h, o, mi], vec![o, one, o], vec![pi, o, h]]).unwrap(),
        CMatrix::from_rows(&[vec![h, o, pi], vec![o, one, o], vec![mi, o, h]]).unwrap(),
        CMatrix::from_real(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]).unwrap(),
    ]
}

/// Eigenvalues of a 3x3 hermitian matrix from its characteristic cubic,
/// solved with the trigonometric formula. Ascending.
fn cubic_eigenvalues(m: &CMatrix) -> [f64; 3] {
    let a = |i: usize, j: usize| m.get(i, j);
    let tr = a(0, 0).re + a(1, 1).re + a(2, 2).re;
    // sum of principal 2x2 minors
    let minors = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).re
        + (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)).re
        + (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)).re;
    let det = (a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)))
        .re;
    // λ = t + tr/3 turns λ³ - tr λ² + minors λ - det into t³ + p t + q
    let s = tr / 3.0;
    let p = minors - tr * tr / 3.0;
    let q = -2.0 * s * s * s + minors * s - det;
    let mut roots = if p.abs() < 1e-14 {
        [s; 3]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let k = 2.0 * std::f64::consts::PI / 3.0;
        [s + r * phi.cos(), s + r * (phi - k).cos(), s + r * (phi - 2.0 * k).cos()]
    };
    roots.sort_by(f64::total_cmp);
    roots
}

fn random_triples(count: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let (a, b, c): (f64, f64, f64) =
            (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        if (a - b).abs() > 0.1 && (b - c).abs() > 0.1 && (a - c).abs() > 0.1 {
            out.push((a, b, c));
        }
    }
    out
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn library_matrices_are_the_printed_ones() {
    for (x, y) in j_squared().iter().zip(&printed_j_squared()) {
        assert!(x.max_abs_diff(y) == 0.0);
    }
    for (x, y) in rotated_j_squared().iter().zip(&printed_rotated_j_squared()) {
        assert!(x.max_abs_diff(y) == 0.0);
    }
}

#[test]
fn cubic_oracle_is_sane() {
    let m = CMatrix::from_real(&[&[2.0, 0.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 7.0]]).unwrap();
    let e = cubic_eigenvalues(&m);
    assert!((e[0] + 1.0).abs() < 1e-12 && (e[1] - 2.0).abs() < 1e-12 && (e[2] - 7.0).abs() < 1e-12);
}

#[test]
fn ur_spectra_for_random_triples() {
    for (a, b, cc) in random_triples(100, 7) {
        let expected = sorted(vec![a + b, b + cc, a + cc]);
        for (u, printed) in [
            (ur_operator(a, b, cc).unwrap(), printed_j_squared()),
            (rotated_ur(a, b, cc).unwrap(), printed_rotated_j_squared()),
        ] {
            let eig = u.eigenvalues();
            let oracle = cubic_eigenvalues(u.matrix());
            for i in 0..3 {
                assert!((eig[i] - expected[i]).abs() <= 1e-8, "({a},{b},{cc}): {eig:?}");
                assert!((oracle[i] - expected[i]).abs() <= 1e-8, "oracle ({a},{b},{cc}): {oracle:?}");
            }
            let js = reconstruct_j_squared(&u, a, b, cc).unwrap();
            let mut sum = CMatrix::identity(3).scale(0.0);
            for (j, p) in js.iter().zip(&printed) {
                assert!(j.max_abs_diff(p) <= 1e-9, "({a},{b},{cc}): {}", j.max_abs_diff(p));
                assert!(j.is_idempotent());
                sum = sum.add(j).unwrap();
            }
            assert!(sum.max_abs_diff(&CMatrix::identity(3).scale(2.0)) <= 1e-9);
            let pattern = exclusivity_pattern(&u, a, b, cc).unwrap();
            assert_eq!(pattern.len(), 3);
            for (lambda, bits) in pattern {
                assert_eq!(bits.iter().map(|&x| x as u32).sum::<u32>(), 2);
                // the missing J² names the eigenvalue: J3² = 0 on a+b, etc.
                let expect = match bits {
                    [1, 1, 0] => a + b,
                    [0, 1, 1] => b + cc,
                    [1, 0, 1] => a + cc,
                    _ => unreachable!(),
                };
                assert!((lambda - expect).abs() <= 1e-8);
            }
        }
    }
}

#[test]
fn degenerate_parameters_are_rejected() {
    assert!(ur_operator(1.0, 1.0, 2.0).is_err());
    assert!(rotated_ur(0.0, 3.0, 3.0).is_err());
    assert!(ur_operator(f64::NAN, 1.0, 2.0).is_err());
}

fn random_unit(rng: &mut StdRng, n: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Orthonormal basis by Gram-Schmidt on random vectors.
fn random_basis(rng: &mut StdRng, n: usize) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    while basis.len() < n {
        let mut v = random_unit(rng, n);
        for b in &basis {
            let overlap: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= overlap * bi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
}

#[test]
fn trace_rule_probabilities() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 2..=4 {
        for _ in 0..20 {
            let rho = Density::pure(&random_unit(&mut rng, n)).unwrap();
            let basis = random_basis(&mut rng, n);
            let probs: Vec<f64> = basis
                .iter()
                .map(|v| born_probability(&rho, &Projector::onto(v).unwrap()).unwrap())
                .collect();
            assert!(probs.iter().all(|&p| (-1e-12..=1.0 + 1e-12).contains(&p)));
            assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            // additivity on orthogonal projectors
            let p01 = Projector::new(
                Projector::onto(&basis[0]).unwrap().matrix().add(Projector::onto(&basis[1]).unwrap().matrix()).unwrap(),
            )
            .unwrap();
            assert!((born_probability(&rho, &p01).unwrap() - probs[0] - probs[1]).abs() < 1e-9);
            // observable with the basis as eigenvectors
            let weights: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
            let mut a = CMatrix::identity(n).scale(0.0);
            for (w, v) in weights.iter().zip(&basis) {
                a = a.add(&CMatrix::ket_bra(v).unwrap().scale(*w)).unwrap();
            }
            let a = Hermitian::new(a).unwrap();
            let direct = expectation(&rho, &a).unwrap();
            let spectral = spectral_expectation(&rho, &a).unwrap();
            let by_hand: f64 = weights.iter().zip(&probs).map(|(w, p)| w * p).sum();
            assert!((direct - spectral).abs() < 1e-9);
            assert!((direct - by_hand).abs() < 1e-9);
        }
    }
}

#[test]
fn matrix_json_round_trip() {
    let u = rotated_ur(1.0, 2.0, 4.0).unwrap();
    let back = CMatrix::from_json(&u.matrix().to_json()).unwrap();
    assert_eq!(back.max_abs_diff(u.matrix()), 0.0);
}
