//! Correlation polytopes: vertices from truth assignments, exact facets by
//! double description, and classicality of probability vectors.

mod dd;
mod linalg;
mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use linalg::{gram_schmidt, integral, project_out, rank, rref, to_q};

/// Largest number of events whose 2ⁿ truth assignments are enumerated.
pub const MAX_EVENTS: usize = 20;

/// Events `1..=n` and the terms (index sets) whose probabilities form the
/// coordinates: singletons for single events, larger sets for joint events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventScheme {
    n: usize,
    terms: Vec<Vec<usize>>,
}

impl EventScheme {
    pub fn new(n: usize, terms: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a scheme needs at least one event".into()));
        }
        if terms.is_empty() {
            return Err(Error::InvalidArgument("a scheme needs at least one term".into()));
        }
        let mut seen_joint = false;
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(terms.len());
        for mut t in terms {
            t.sort_unstable();
            t.dedup();
            if t.is_empty() {
                return Err(Error::InvalidArgument("empty term".into()));
            }
            if let Some(&i) = t.iter().find(|&&i| i == 0 || i > n) {
                return Err(Error::InvalidArgument(format!("event index {i} outside 1..={n}")));
            }
            if t.len() == 1 && seen_joint {
                return Err(Error::InvalidArgument(format!(
                    "single term p{} listed after a joint term",
                    t[0]
                )));
            }
            seen_joint |= t.len() > 1;
            if canon.contains(&t) {
                return Err(Error::InvalidArgument(format!("duplicate term {}", term_name(&t, n))));
            }
            canon.push(t);
        }
        Ok(EventScheme { n, terms: canon })
    }

    /// Events only, no joint terms.
    pub fn singles(n: usize) -> Result<Self> {
        EventScheme::new(n, (1..=n).map(|i| vec![i]).collect())
    }

    /// Two events and their joint occurrence: `p1, p2, p12`.
    pub fn pair() -> Self {
        EventScheme::new(2, vec![vec![1], vec![2], vec![1, 2]]).expect("valid")
    }

    /// Four events with the joint terms `p13, p14, p23, p24`: events 1, 2 on
    /// one side and 3, 4 on the other, as in the Clauser-Horne setup.
    pub fn clauser_horne() -> Self {
        EventScheme::new(
            4,
            vec![vec![1], vec![2], vec![3], vec![4], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]],
        )
        .expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    pub fn term_names(&self) -> Vec<String> {
        self.terms.iter().map(|t| term_name(t, self.n)).collect()
    }

    /// First non-comment line `n`, then one term per line as indices
    /// separated by spaces or commas.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::parse(i + 1, format!("`{s}` is not an event index")))
                })
                .collect::<Result<Vec<usize>>>()?;
            match n {
                None => {
                    let [k] = nums[..] else {
                        return Err(Error::parse(i + 1, "first line must hold the number of events"));
                    };
                    n = Some(k);
                }
                Some(_) => terms.push(nums),
            }
        }
        let n = n.ok_or_else(|| Error::parse(0, "empty scheme file"))?;
        EventScheme::new(n, terms).map_err(|e| Error::parse(0, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for t in &self.terms {
            let parts: Vec<String> = t.iter().map(usize::to_string).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

fn term_name(t: &[usize], n: usize) -> String {
    let sep = if n < 10 { "" } else { "." };
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("p{}", parts.join(sep))
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// The term evaluations of every truth assignment, deduplicated and sorted.
pub fn vertices(s: &EventScheme) -> Result<Vec<Vec<BigRational>>> {
    if s.n > MAX_EVENTS {
        return Err(Error::SizeLimit {
            size: s.n,
            limit: MAX_EVENTS,
        });
    }
    let mut out: Vec<Vec<BigRational>> = (0..1u64 << s.n)
        .map(|t| {
            s.terms
                .iter()
                .map(|term| rational(term.iter().all(|&i| t >> (i - 1) & 1 == 1) as i64))
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `coeffs · x <= bound` (or `=` for affine hull equations), integer with
/// content 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
}

impl Halfspace {
    pub fn from_ints(coeffs: &[i64], bound: i64) -> Self {
        Halfspace {
            coeffs: coeffs.iter().map(|&c| c.into()).collect(),
            bound: bound.into(),
        }
    }

    pub fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(c, v)| BigRational::from_integer(c.clone()) * v)
            .sum()
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        self.lhs(x) <= BigRational::from_integer(self.bound.clone())
    }

    pub fn tight_at(&self, x: &[BigRational]) -> bool {
        self.lhs(x) == BigRational::from_integer(self.bound.clone())
    }

    /// Readable form such as `p1 + p2 - p12 <= 1`.
    pub fn pretty(&self, names: &[String], relation: &str) -> String {
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = if mag.is_one() { name.clone() } else { format!("{mag} {name}") };
            if out.is_empty() {
                out = if c.is_negative() { format!("-{term}") } else { term };
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("{out} {relation} {}", self.bound)
    }

    fn line(&self, relation: &str) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        format!("{} {relation} {}", parts.join(" "), self.bound)
    }
}

/// Facet description of a polytope: affine hull equations and irredundant
/// facet inequalities, both in canonical integer form and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeH {
    pub dim: usize,
    pub equalities: Vec<Halfspace>,
    pub inequalities: Vec<Halfspace>,
}

/// A constraint of a [`PolytopeH`] that a point fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Halfspace,
    pub equality: bool,
    pub value: BigRational,
}

impl PolytopeH {
    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.first_violation(x).is_none()
    }

    /// First violated constraint, equalities before inequalities.
    pub fn first_violation(&self, x: &[BigRational]) -> Option<Violation> {
        for e in &self.equalities {
            if !e.tight_at(x) {
                return Some(Violation {
                    constraint: e.clone(),
                    equality: true,
                    value: e.lhs(x),
                });
            }
        }
        self.inequalities.iter().find(|h| !h.satisfied_by(x)).map(|h| Violation {
            constraint: h.clone(),
            equality: false,
            value: h.lhs(x),
        })
    }

    /// One constraint per line, `c1 ... ck <= b` or `c1 ... ck = b`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.equalities {
            out.push_str(&e.line("="));
            out.push('\n');
        }
        for h in &self.inequalities {
            out.push_str(&h.line("<="));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut equalities = Vec::new();
        let mut inequalities = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::parse(i + 1, m.to_string());
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [coeffs @ .., rel, bound] = &tokens[..] else {
                return Err(bad("expected `c1 ... ck <= b`"));
            };
            let int = |s: &str| s.parse::<BigInt>().map_err(|_| bad(&format!("`{s}` is not an integer")));
            let h = Halfspace {
                coeffs: coeffs.iter().map(|s| int(s)).collect::<Result<_>>()?,
                bound: int(bound)?,
            };
            if *dim.get_or_insert(h.coeffs.len()) != h.coeffs.len() {
                return Err(bad("inconsistent number of coefficients"));
            }
            match *rel {
                "<=" => inequalities.push(h),
                "=" => equalities.push(h),
                other => return Err(bad(&format!("unknown relation `{other}`"))),
            }
        }
        Ok(PolytopeH {
            dim: dim.ok_or_else(|| Error::parse(0, "no constraints"))?,
            equalities,
            inequalities,
        })
    }

    pub fn to_json(&self, names: &[String]) -> Value {
        let entry = |h: &Halfspace, rel: &str| {
            json!({
                "coeffs": h.coeffs.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                "bound": h.bound.to_string(),
                "relation": rel,
                "text": h.pretty(names, rel),
            })
        };
        json!({
            "format_version": crate::FORMAT_VERSION,
            "terms": names,
            "equalities": self.equalities.iter().map(|h| entry(h, "=")).collect::<Vec<_>>(),
            "inequalities": self.inequalities.iter().map(|h| entry(h, "<=")).collect::<Vec<_>>(),
        })
    }
}

fn check_points(points: &[Vec<BigRational>]) -> Result<usize> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("no vertices".into()))?;
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::Dimension {
            expected: d,
            found: p.len(),
        });
    }
    Ok(d)
}

/// Exact facet description of the convex hull of `points`.
///
/// For lower-dimensional hulls the affine hull equations are returned
/// separately and each facet normal is taken orthogonal to them, which makes
/// the facet form unique.
pub fn facets(points: &[Vec<BigRational>]) -> Result<PolytopeH> {
    let d = check_points(points)?;
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    // cone over the points: y0 + y·v >= 0
    let rows: Vec<Vec<BigInt>> = sorted
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::one()];
            row.extend(p.iter().cloned());
            integral(&row)
        })
        .collect();
    let gens = dd::generators(&rows, d + 1);

    let to_halfspace = |y: &[BigInt]| Halfspace {
        coeffs: y[1..].iter().map(|c| -c).collect(),
        bound: y[0].clone(),
    };
    // equations in the column order (coeffs..., bound)
    let eq_rows: Vec<Vec<BigRational>> = gens
        .lineality
        .iter()
        .map(|l| {
            let h = to_halfspace(l);
            let mut row = to_q(&h.coeffs);
            row.push(BigRational::from_integer(h.bound));
            row
        })
        .collect();
    let equalities: Vec<Halfspace> = rref(eq_rows)
        .iter()
        .map(|row| {
            let v = integral(row);
            Halfspace {
                coeffs: v[..d].to_vec(),
                bound: v[d].clone(),
            }
        })
        .collect();

    let lin_basis = gram_schmidt(&gens.lineality.iter().map(|l| to_q(l)).collect::<Vec<_>>());
    let mut inequalities: Vec<Halfspace> = gens
        .rays
        .iter()
        .filter(|(_, zero)| zero.count() > 0)
        .map(|(y, _)| to_halfspace(&integral(&project_out(&to_q(y), &lin_basis))))
        .collect();
    inequalities.sort();
    inequalities.dedup();
    Ok(PolytopeH {
        dim: d,
        equalities,
        inequalities,
    })
}

/// Dimension of the affine hull of `points`.
pub fn affine_dimension(points: &[Vec<BigRational>]) -> usize {
    let rows: Vec<Vec<BigRational>> = points
        .iter()
        .map(|p| std::iter::once(BigRational::one()).chain(p.iter().cloned()).collect())
        .collect();
    rank(rows).saturating_sub(1)
}

/// Counts from a successful consistency check of a vertex and a facet
/// description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub dimension: usize,
    pub facets: usize,
    pub min_facets_per_vertex: usize,
}

/// Checks that `h` describes the hull of `points`: every point satisfies
/// every constraint, every facet is tight at `dim` affinely independent
/// points, every point lies on at least `dim` facets, and the number of
/// equations is the codimension.
pub fn verify_dual_description(points: &[Vec<BigRational>], h: &PolytopeH) -> std::result::Result<DualityCheck, String> {
    let dim = affine_dimension(points);
    for (i, p) in points.iter().enumerate() {
        if let Some(v) = h.first_violation(p) {
            return Err(format!("vertex {i} violates {}", v.constraint.line(if v.equality { "=" } else { "<=" })));
        }
    }
    if h.equalities.len() + dim != h.dim {
        return Err(format!(
            "{} equations for a {dim}-dimensional hull in dimension {}",
            h.equalities.len(),
            h.dim
        ));
    }
    for f in &h.inequalities {
        let tight: Vec<Vec<BigRational>> = points.iter().filter(|p| f.tight_at(p)).cloned().collect();
        if tight.is_empty() || affine_dimension(&tight) + 1 != dim {
            return Err(format!("{} is not a facet", f.line("<=")));
        }
    }
    let mut min_per_vertex = usize::MAX;
    for (i, p) in points.iter().enumerate() {
        let count = h.inequalities.iter().filter(|f| f.tight_at(p)).count();
        if dim > 0 && count < dim {
            return Err(format!("vertex {i} lies on only {count} facets"));
        }
        min_per_vertex = min_per_vertex.min(count);
    }
    Ok(DualityCheck {
        dimension: dim,
        facets: h.inequalities.len(),
        min_facets_per_vertex: min_per_vertex,
    })
}

/// Outcome of a classicality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Convex weights, one per vertex in vertex order.
    Classical { weights: Vec<BigRational> },
    NonClassical { violation: Violation },
}

impl Membership {
    pub fn is_classical(&self) -> bool {
        matches!(self, Membership::Classical { .. })
    }
}

/// A scheme with its vertices and facets computed once.
#[derive(Clone, Debug)]
pub struct CorrelationPolytope {
    pub scheme: EventScheme,
    pub vertices: Vec<Vec<BigRational>>,
    pub h: PolytopeH,
}

impl CorrelationPolytope {
    pub fn new(scheme: EventScheme) -> Result<Self> {
        let vertices = vertices(&scheme)?;
        let h = facets(&vertices)?;
        Ok(CorrelationPolytope { scheme, vertices, h })
    }

    /// Decides by exact linear programming whether `p` is a convex
    /// combination of the vertices; otherwise reports a violated constraint.
    pub fn is_classical(&self, p: &[BigRational]) -> Result<Membership> {
        if p.len() != self.scheme.dim() {
            return Err(Error::Dimension {
                expected: self.scheme.dim(),
                found: p.len(),
            });
        }
        if let Some(weights) = simplex::convex_weights(&self.vertices, p) {
            return Ok(Membership::Classical { weights });
        }
        match self.h.first_violation(p) {
            Some(violation) => Ok(Membership::NonClassical { violation }),
            None => Err(Error::Internal(
                "point satisfies every facet but the LP is infeasible".into(),
            )),
        }
    }
}

/// Convenience wrapper building the polytope of `s` for a single query.
pub fn is_classical(p: &[BigRational], s: &EventScheme) -> Result<Membership> {
    CorrelationPolytope::new(s.clone())?.is_classical(p)
}

/// Checks convex weights against the vertices and the target exactly.
pub fn verify_weights(vertices: &[Vec<BigRational>], weights: &[BigRational], p: &[BigRational]) -> bool {
    weights.len() == vertices.len()
        && weights.iter().all(|w| !w.is_negative())
        && weights.iter().sum::<BigRational>().is_one()
        && (0..p.len()).all(|i| {
            vertices
                .iter()
                .zip(weights)
                .map(|(v, w)| &v[i] * w)
                .sum::<BigRational>()
                == p[i]
        })
}

/// Parses a probability vector such as `1/2,1/2,1/4` (commas or spaces).
pub fn parse_vector(text: &str) -> Result<Vec<BigRational>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<BigRational>()
                .map_err(|_| Error::parse(0, format!("`{s}` is not a rational number")))
        })
        .collect()
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line("<="))
    }
}
