//! Trace-rule probabilities, expectations and the "Ur"-operator of a spin-1
//! tripod. Floating point with an explicit tolerance.

use nalgebra::{Complex, DMatrix};
use serde_json::Value;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Square complex matrix carrying the tolerance used by its checks.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    m: DMatrix<C64>,
    tol: f64,
}

impl CMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Matrix(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
        }
        Ok(CMatrix { m, tol: DEFAULT_TOL })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: r.len(),
            });
        }
        CMatrix::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        CMatrix::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        CMatrix {
            m: DMatrix::identity(n, n),
            tol: DEFAULT_TOL,
        }
    }

    /// `|v><v| / <v|v>`.
    pub fn ket_bra(v: &[C64]) -> Result<Self> {
        let v = nalgebra::DVector::from_column_slice(v);
        let norm2 = v.norm_squared();
        if norm2 == 0.0 {
            return Err(Error::ZeroVector);
        }
        CMatrix::new(&v * v.adjoint() / c(norm2, 0.0))
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    fn same(&self, m: DMatrix<C64>) -> CMatrix {
        CMatrix { m, tol: self.tol }
    }

    fn check_dim(&self, other: &CMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        Ok(self.same(&self.m * &other.m))
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        Ok(self.same(&self.m + &other.m))
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        Ok(self.same(&self.m - &other.m))
    }

    pub fn scale(&self, x: f64) -> CMatrix {
        self.same(&self.m * c(x, 0.0))
    }

    /// `self - x·I`.
    pub fn shift(&self, x: f64) -> CMatrix {
        let n = self.dim();
        self.same(&self.m - DMatrix::<C64>::identity(n, n) * c(x, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        (&self.m - &other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_hermitian(&self) -> bool {
        self.max_abs_diff(&self.same(self.m.adjoint())) <= self.tol
    }

    pub fn is_idempotent(&self) -> bool {
        self.max_abs_diff(&self.same(&self.m * &self.m)) <= self.tol
    }

    /// Row-major array of `[re, im]` pairs.
    pub fn to_json(&self) -> Value {
        let n = self.dim();
        Value::Array(
            (0..n)
                .map(|i| {
                    Value::Array(
                        (0..n)
                            .map(|j| {
                                let z = self.m[(i, j)];
                                serde_json::json!([z.re, z.im])
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<CMatrix> {
        let bad = |msg: &str| Error::parse(0, format!("matrix JSON: {msg}"));
        let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("row is not an array"))?
                    .iter()
                    .map(|z| match z.as_array().map(Vec::as_slice) {
                        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                            (Some(re), Some(im)) => Ok(c(re, im)),
                            _ => Err(bad("entries must be numbers")),
                        },
                        _ => Err(bad("entry is not a [re, im] pair")),
                    })
                    .collect::<Result<Vec<C64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CMatrix::from_rows(&rows)
    }
}

/// Eigenvalues in ascending order together with the projector onto each
/// eigenspace; eigenvalues closer than the tolerance share one projector.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub projectors: Vec<Projector>,
}

/// Hermitian matrix (within tolerance).
#[derive(Clone, Debug, PartialEq)]
pub struct Hermitian(CMatrix);

impl Hermitian {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_hermitian() {
            return Err(Error::Matrix("matrix is not hermitian".into()));
        }
        Ok(Hermitian(m))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    /// All eigenvalues, ascending, with multiplicity.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self.0.m.clone().symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn spectrum(&self) -> Spectrum {
        let tol = self.0.tol;
        let n = self.0.dim();
        let eig = self.0.m.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let mut values: Vec<f64> = Vec::new();
        let mut groups: Vec<DMatrix<C64>> = Vec::new();
        for i in order {
            let lambda = eig.eigenvalues[i];
            let v = eig.eigenvectors.column(i);
            let p = &v * v.adjoint();
            match values.last() {
                Some(&last) if (lambda - last).abs() <= tol.max(1e-12) * (1.0 + lambda.abs()) => {
                    *groups.last_mut().unwrap() += p;
                }
                _ => {
                    values.push(lambda);
                    groups.push(p);
                }
            }
        }
        Spectrum {
            values,
            projectors: groups
                .into_iter()
                .map(|m| Projector(CMatrix { m, tol }))
                .collect(),
        }
    }
}

/// Orthogonal projector: hermitian and idempotent within tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector(CMatrix);

impl Projector {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_hermitian() {
            return Err(Error::Matrix("projector is not hermitian".into()));
        }
        if !m.is_idempotent() {
            return Err(Error::Matrix("projector is not idempotent".into()));
        }
        Ok(Projector(m))
    }

    pub fn onto(v: &[C64]) -> Result<Self> {
        Projector::new(CMatrix::ket_bra(v)?)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }
}

/// Density operator: hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct Density(CMatrix);

impl Density {
    pub fn new(m: CMatrix) -> Result<Self> {
        let tol = m.tol;
        let h = Hermitian::new(m).map_err(|_| Error::Matrix("density is not hermitian".into()))?;
        if let Some(&min) = h.eigenvalues().first() {
            if min < -tol {
                return Err(Error::Matrix(format!("density has negative eigenvalue {min}")));
            }
        }
        let tr = h.0.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::Matrix(format!("density has trace {tr}")));
        }
        Ok(Density(h.0))
    }

    /// The pure state `|v><v| / <v|v>`.
    pub fn pure(v: &[C64]) -> Result<Self> {
        Density::new(CMatrix::ket_bra(v)?)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }
}

/// `trace(ρE)`, which must lie in [0, 1] up to the tolerance and is then
/// clamped into it.
pub fn born_probability(rho: &Density, e: &Projector) -> Result<f64> {
    let tol = rho.0.tol.max(e.0.tol);
    let p = rho.0.mul(&e.0)?.trace().re;
    if p < -tol || p > 1.0 + tol {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// `trace(ρA)`.
pub fn expectation(rho: &Density, a: &Hermitian) -> Result<f64> {
    Ok(rho.0.mul(&a.0)?.trace().re)
}

/// `Σ λᵢ trace(ρEᵢ)` over the spectral decomposition of `a`.
pub fn spectral_expectation(rho: &Density, a: &Hermitian) -> Result<f64> {
    rho.0.check_dim(&a.0)?;
    let s = a.spectrum();
    s.values
        .iter()
        .zip(&s.projectors)
        .map(|(l, e)| born_probability(rho, e).map(|p| l * p))
        .sum()
}

fn distinct(a: f64, b: f64, c: f64, tol: f64) -> Result<()> {
    let close = |x: f64, y: f64| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs()));
    if !a.is_finite() || !b.is_finite() || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite parameter in ({a}, {b}, {c})")));
    }
    if close(a, b) || close(b, c) || close(a, c) {
        return Err(Error::Degenerate(format!("({a}, {b}, {c})")));
    }
    Ok(())
}

fn half(rows: [[C64; 3]; 3]) -> CMatrix {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|z| z * 0.5).collect()).collect();
    CMatrix::from_rows(&rows).expect("3x3")
}

/// Squares of the spin-1 observables along the x, y and z axes.
pub fn j_squared() -> [CMatrix; 3] {
    let (o, l, t) = (c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0));
    [
        half([[l, o, l], [o, t, o], [l, o, l]]),
        half([[l, o, -l], [o, t, o], [-l, o, l]]),
        half([[t, o, o], [o, o, o], [o, o, t]]),
    ]
}

/// Squares of the spin-1 observables along (1,1,0)/√2, (-1,1,0)/√2 and z.
pub fn rotated_j_squared() -> [CMatrix; 3] {
    let (o, l, t, i) = (c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0));
    [
        half([[l, o, -i], [o, t, o], [i, o, l]]),
        half([[l, o, i], [o, t, o], [-i, o, l]]),
        half([[t, o, o], [o, o, o], [o, o, t]]),
    ]
}

fn combine(js: &[CMatrix; 3], a: f64, b: f64, c: f64, tol: f64) -> Result<Hermitian> {
    distinct(a, b, c, tol)?;
    let u = js[0].scale(a).add(&js[1].scale(b))?.add(&js[2].scale(c))?;
    Hermitian::new(u.with_tol(tol))
}

/// `U = a J₁² + b J₂² + c J₃²` for pairwise distinct `a`, `b`, `c`.
pub fn ur_operator(a: f64, b: f64, c: f64) -> Result<Hermitian> {
    ur_operator_tol(a, b, c, DEFAULT_TOL)
}

pub fn ur_operator_tol(a: f64, b: f64, c: f64, tol: f64) -> Result<Hermitian> {
    combine(&j_squared(), a, b, c, tol)
}

/// The Ur-operator for the rotated tripod.
pub fn rotated_ur(a: f64, b: f64, c: f64) -> Result<Hermitian> {
    rotated_ur_tol(a, b, c, DEFAULT_TOL)
}

pub fn rotated_ur_tol(a: f64, b: f64, c: f64, tol: f64) -> Result<Hermitian> {
    combine(&rotated_j_squared(), a, b, c, tol)
}

/// Recovers the three J² from `u` as quadratic polynomials in `u`:
/// `J₁² = (U-(b+c))(U-2a) / ((a-b)(c-a))` and cyclically.
pub fn reconstruct_j_squared(u: &Hermitian, a: f64, b: f64, c: f64) -> Result<[CMatrix; 3]> {
    let m = &u.0;
    distinct(a, b, c, m.tol)?;
    if m.dim() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: m.dim(),
        });
    }
    let poly = |r1: f64, r2: f64, denom: f64| -> Result<CMatrix> {
        Ok(m.shift(r1).mul(&m.shift(r2))?.scale(1.0 / denom))
    };
    Ok([
        poly(b + c, 2.0 * a, (a - b) * (c - a))?,
        poly(a + c, 2.0 * b, (a - b) * (b - c))?,
        poly(a + b, 2.0 * c, (c - a) * (b - c))?,
    ])
}

/// For every eigenvalue of `u` (ascending), the eigenvalue (0 or 1) that
/// each reconstructed J² takes on that eigenspace.
pub fn exclusivity_pattern(u: &Hermitian, a: f64, b: f64, c: f64) -> Result<Vec<(f64, [u8; 3])>> {
    let js = reconstruct_j_squared(u, a, b, c)?;
    let tol = u.0.tol.max(1e-12);
    let spectrum = u.spectrum();
    let mut out = Vec::new();
    for (lambda, e) in spectrum.values.iter().zip(&spectrum.projectors) {
        let mut bits = [0u8; 3];
        for (k, j) in js.iter().enumerate() {
            let je = j.mul(&e.0)?;
            let bit = if je.approx_eq(&e.0, tol * 10.0) {
                1
            } else if je.max_abs_diff(&e.0.scale(0.0)) <= tol * 10.0 {
                0
            } else {
                return Err(Error::Matrix(format!(
                    "J{}² is not 0 or 1 on the eigenspace of {lambda}",
                    k + 1
                )));
            };
            bits[k] = bit;
        }
        out.push((*lambda, bits));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> CMatrix {
        CMatrix::from_real(rows).unwrap()
    }

    #[test]
    fn ur_matrix_for_1_2_3() {
        let u = ur_operator(1.0, 2.0, 3.0).unwrap();
        let want = real(&[&[4.5, 0.0, -0.5], &[0.0, 3.0, 0.0], &[-0.5, 0.0, 4.5]]);
        assert!(u.matrix().approx_eq(&want, 1e-12));
        let ev = u.eigenvalues();
        for (got, want) in ev.iter().zip([3.0, 4.0, 5.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn j_squares_sum_to_twice_identity() {
        for js in [j_squared(), rotated_j_squared()] {
            let s = js[0].add(&js[1]).unwrap().add(&js[2]).unwrap();
            assert!(s.approx_eq(&CMatrix::identity(3).scale(2.0), 1e-15));
            for j in &js {
                assert!(j.is_hermitian() && j.is_idempotent());
            }
        }
        assert_eq!(j_squared()[2], rotated_j_squared()[2]);
    }

    #[test]
    fn reconstruction_recovers_the_j_squares() {
        let u = ur_operator(1.0, 2.0, 3.0).unwrap();
        let js = reconstruct_j_squared(&u, 1.0, 2.0, 3.0).unwrap();
        assert!(js[2].approx_eq(&real(&[&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]), 1e-12));
        assert!(js[0].approx_eq(&real(&[&[0.5, 0.0, 0.5], &[0.0, 1.0, 0.0], &[0.5, 0.0, 0.5]]), 1e-12));
        assert!(js[0].is_idempotent());
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        assert!(matches!(ur_operator(1.0, 1.0, 2.0), Err(Error::Degenerate(_))));
        assert!(matches!(rotated_ur(1.0, 2.0, 2.0), Err(Error::Degenerate(_))));
        assert!(ur_operator(f64::NAN, 1.0, 2.0).is_err());
    }

    #[test]
    fn exclusivity_for_both_tripods() {
        let (a, b, c) = (1.0, 2.0, 3.0);
        for u in [ur_operator(a, b, c).unwrap(), rotated_ur(a, b, c).unwrap()] {
            let pattern = exclusivity_pattern(&u, a, b, c).unwrap();
            // eigenvalues 3 = a+b, 4 = a+c, 5 = b+c
            let bits: Vec<[u8; 3]> = pattern.iter().map(|p| p.1).collect();
            assert_eq!(bits, [[1, 1, 0], [1, 0, 1], [0, 1, 1]]);
        }
    }

    #[test]
    fn born_rule_for_pure_states() {
        let x = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let y = [c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)];
        let rho = Density::pure(&y).unwrap();
        let e = Projector::onto(&x).unwrap();
        assert!((born_probability(&rho, &e).unwrap() - 0.36).abs() < 1e-12);
        let id = Projector::new(CMatrix::identity(3)).unwrap();
        assert!((born_probability(&rho, &id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expectation_in_an_eigenstate() {
        let u = ur_operator(1.0, 2.0, 3.0).unwrap();
        let s = u.spectrum();
        let rho = Density::new(s.projectors[0].matrix().clone()).unwrap();
        assert!((expectation(&rho, &u).unwrap() - 3.0).abs() < 1e-9);
        assert!((spectral_expectation(&rho, &u).unwrap() - 3.0).abs() < 1e-9);
        let id = Hermitian::new(CMatrix::identity(3)).unwrap();
        assert!((expectation(&rho, &id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Projector::new(real(&[&[1.0, 1.0], &[0.0, 1.0]])).is_err());
        assert!(Projector::new(real(&[&[2.0, 0.0], &[0.0, 0.0]])).is_err());
        assert!(Density::new(real(&[&[0.5, 0.0], &[0.0, 0.6]])).is_err());
        assert!(Density::new(real(&[&[1.5, 0.0], &[0.0, -0.5]])).is_err());
        let rho = Density::new(CMatrix::identity(2).scale(0.5)).unwrap();
        let e = Projector::new(CMatrix::identity(3)).unwrap();
        assert!(matches!(born_probability(&rho, &e), Err(Error::Dimension { .. })));
    }

    #[test]
    fn json_round_trip() {
        let u = rotated_ur(1.0, 2.0, 3.0).unwrap();
        let v = u.matrix().to_json();
        assert_eq!(v[0][2], serde_json::json!([0.0, 0.5]));
        let back = CMatrix::from_json(&v).unwrap();
        assert!(back.approx_eq(u.matrix(), 0.0));
        assert!(CMatrix::from_json(&serde_json::json!([[1.0]])).is_err());
    }
}
