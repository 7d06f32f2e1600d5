use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// A one-dimensional subspace, stored by a canonical direction vector.
///
/// Canonical form: coordinates in Z[√2] with no common factor (neither an
/// integer content nor a factor √2), and first nonzero coordinate positive.
/// Equality, hashing and ordering all work on this form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    coords: Vec<Scalar>,
}

fn rational_gcd_content(v: &[Scalar]) -> BigInt {
    v.iter()
        .flat_map(|x| {
            let (a, b) = x.parts();
            [a.numer().clone(), b.numer().clone()]
        })
        .fold(BigInt::zero(), |g, x| g.gcd(&x))
}

fn canonicalize(v: &[Scalar]) -> Result<Vec<Scalar>> {
    let first = v.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let inv = v[first].inv().expect("nonzero");
    let mut v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
    let lcm = v
        .iter()
        .flat_map(|x| {
            let (a, b) = x.parts();
            [a.denom().clone(), b.denom().clone()]
        })
        .fold(BigInt::one(), |l, d| l.lcm(&d));
    let lcm = BigRational::from_integer(lcm);
    v = v.iter().map(|x| x.scale_rational(&lcm)).collect();
    let two = BigInt::from(2);
    loop {
        // every rational part even: the whole vector is divisible by √2
        if v.iter().all(|x| x.parts().0.numer().is_multiple_of(&two)) {
            v = v.iter().map(Scalar::div_sqrt2).collect();
            continue;
        }
        let g = rational_gcd_content(&v);
        if g > BigInt::one() {
            let g = BigRational::from_integer(g).recip();
            v = v.iter().map(|x| x.scale_rational(&g)).collect();
            continue;
        }
        return Ok(v);
    }
}

impl Ray {
    pub fn new(coords: Vec<Scalar>) -> Result<Ray> {
        Ok(Ray {
            coords: canonicalize(&coords)?,
        })
    }

    /// Ray through an integer vector.
    pub fn from_ints(coords: &[i64]) -> Result<Ray> {
        Ray::new(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// Ray from coordinate tokens in the compact scalar syntax, e.g.
    /// `["1", "-1", "r2"]`.
    pub fn parse_coords<S: AsRef<str>>(tokens: &[S]) -> Result<Ray> {
        let coords = tokens
            .iter()
            .map(|t| t.as_ref().parse())
            .collect::<Result<Vec<Scalar>>>()?;
        Ray::new(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Exact inner product of the canonical direction vectors. Panics when
    /// the dimensions differ.
    pub fn dot(&self, other: &Ray) -> Scalar {
        assert_eq!(self.dim(), other.dim(), "dot product of rays of different dimension");
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
    }

    pub fn is_orthogonal(&self, other: &Ray) -> bool {
        self.dim() == other.dim() && self.dot(other).is_zero()
    }

    /// The orthocomplement of the plane spanned by two rays in R³, i.e. the
    /// ray of their cross product.
    pub fn nor(&self, other: &Ray) -> Result<Ray> {
        for r in [self, other] {
            if r.dim() != 3 {
                return Err(Error::Dimension {
                    expected: 3,
                    found: r.dim(),
                });
            }
        }
        let (u, v) = (&self.coords, &other.coords);
        let cross = vec![
            &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
            &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
            &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
        ];
        Ray::new(cross).map_err(|_| Error::ParallelRays(self.label(), other.label()))
    }

    /// Display label such as `(1 -1 r2)`.
    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Scalar::to_f64).collect()
    }

    /// Sorted absolute values of the coordinates, e.g. `(0, 1, r2)`; rays
    /// related by a signed permutation share it.
    pub fn coordinate_family(&self) -> String {
        let mut abs: Vec<Scalar> = self
            .coords
            .iter()
            .map(|x| if x.signum() < 0 { -x } else { x.clone() })
            .collect();
        abs.sort();
        let parts: Vec<String> = abs.iter().map(Scalar::to_string).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(Scalar::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ray(tokens: &str) -> Ray {
        Ray::parse_coords(&tokens.split_whitespace().collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(ray("-1 r2 0").label(), "(1 -r2 0)");
        assert_eq!(ray("2 2 2r2").label(), "(1 1 r2)");
        assert_eq!(ray("r2 1 1").label(), "(r2 1 1)");
        assert_eq!(ray("2 r2 r2").label(), "(r2 1 1)");
        assert_eq!(ray("1/2 0 0").label(), "(1 0 0)");
        assert_eq!(ray("1+r2 0 0").label(), "(1 0 0)");
        assert_eq!(ray("0 -3 3").label(), "(0 1 -1)");
        assert!(matches!(Ray::from_ints(&[0, 0, 0]), Err(Error::ZeroVector)));
    }

    #[test]
    fn dot_products() {
        let (x, y) = (ray("1 0 0"), ray("0 1 0"));
        assert!(x.dot(&y).is_zero());
        assert!(ray("1 -1 r2").is_orthogonal(&ray("1 1 0")));
        assert_eq!(ray("1 1 0").dot(&ray("r2 1 1")), Scalar::from_ints(1, 1));
        assert!(!ray("1 0 0").is_orthogonal(&ray("1 0 0 0")));
    }

    #[test]
    fn nor_examples() {
        assert_eq!(ray("1 0 0").nor(&ray("1 1 0")).unwrap(), ray("0 0 1"));
        assert_eq!(ray("1 0 0").nor(&ray("r2 1 1")).unwrap(), ray("0 1 -1"));
        assert_eq!(ray("1 0 0").nor(&ray("0 1 0")).unwrap(), ray("0 0 1"));
        assert!(matches!(
            ray("1 1 0").nor(&ray("2 2 0")),
            Err(Error::ParallelRays(..))
        ));
        assert!(matches!(
            ray("1 0 0 0").nor(&ray("0 1 0 0")),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn families() {
        assert_eq!(ray("-1 r2 -3").coordinate_family(), "(1, r2, 3)");
        assert_eq!(ray("0 1 -1").coordinate_family(), "(0, 1, 1)");
    }
}
