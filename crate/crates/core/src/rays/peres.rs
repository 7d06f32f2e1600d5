//! The Peres ray set, its three generators and the scripted derivation.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{contexts, element_count_of_orthoposet, ortho_closure, Ray, Scalar, DEFAULT_CLOSURE_CAP};
use crate::error::{Error, Result};
use crate::states::{enumerate_states, symmetric_seed};

/// (result, left operand, right operand, expression). Each row states that
/// the result ray is the `nor` of the two operand rays, and how the operands
/// arise from the generators `a`, `b`, `c`.
const DERIVATION: [(&str, &str, &str, &str); 30] = [
    ("0 0 1", "1 0 0", "1 1 0", "(a nor b)"),
    ("0 1 -1", "1 0 0", "r2 1 1", "(a nor c)"),
    ("0 1 0", "1 0 0", "0 0 1", "(a nor (a nor b))"),
    ("0 1 1", "1 0 0", "0 1 -1", "(a nor (a nor c))"),
    ("1 -1 0", "1 1 0", "0 0 1", "(b nor (a nor b))"),
    ("-1 r2 0", "r2 1 1", "0 0 1", "(c nor (a nor b))"),
    ("r2 -1 -1", "r2 1 1", "0 1 -1", "(c nor (a nor c))"),
    ("-1 0 r2", "r2 1 1", "0 1 0", "(c nor (a nor (a nor b)))"),
    ("r2 1 0", "0 0 1", "-1 r2 0", "((a nor b) nor (c nor (a nor b)))"),
    ("1 r2 0", "0 0 1", "r2 -1 -1", "((a nor b) nor (c nor (a nor c)))"),
    ("1 0 r2", "0 1 0", "r2 -1 -1", "((a nor (a nor b)) nor (c nor (a nor c)))"),
    ("r2 1 -1", "0 1 1", "-1 r2 0", "((a nor (a nor c)) nor (c nor (a nor b)))"),
    ("r2 0 1", "0 1 0", "-1 0 r2", "((a nor (a nor b)) nor (c nor (a nor (a nor b))))"),
    ("r2 -1 0", "0 0 1", "1 r2 0", "((a nor b) nor ((a nor b) nor (c nor (a nor c))))"),
    ("r2 -1 1", "0 1 1", "-1 0 r2", "((a nor (a nor c)) nor (c nor (a nor (a nor b))))"),
    ("-1 1 r2", "1 1 0", "r2 0 1", "(b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))"),
    ("0 r2 -1", "1 0 0", "-1 1 r2", "(a nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b))))))"),
    ("r2 0 -1", "0 1 0", "1 0 r2", "((a nor (a nor b)) nor ((a nor (a nor b)) nor (c nor (a nor c))))"),
    ("1 -1 r2", "1 1 0", "-1 1 r2", "(b nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b))))))"),
    ("0 1 r2", "1 0 0", "0 r2 -1", "(a nor (a nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))))"),
    ("0 r2 1", "1 0 0", "1 -1 r2", "(a nor (b nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))))"),
    ("-1 -1 r2", "1 -1 0", "r2 0 1", "((b nor (a nor b)) nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))"),
    ("0 -1 r2", "1 0 0", "0 r2 1", "(a nor (a nor (b nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b))))))))"),
    ("1 1 r2", "1 -1 0", "0 r2 -1", "((b nor (a nor b)) nor (a nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))))"),
    ("-1 r2 -1", "r2 1 0", "0 1 r2", "(((a nor b) nor (c nor (a nor b))) nor (a nor (a nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b))))))))"),
    ("-1 r2 1", "r2 1 0", "0 -1 r2", "(((a nor b) nor (c nor (a nor b))) nor (a nor (a nor (b nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))))))"),
    ("1 r2 -1", "r2 -1 0", "0 1 r2", "(((a nor b) nor ((a nor b) nor (c nor (a nor c)))) nor (a nor (a nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b))))))))"),
    ("-1 0 1", "0 1 0", "-1 r2 -1", "((a nor (a nor b)) nor (((a nor b) nor (c nor (a nor b))) nor (a nor (a nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))))))"),
    ("1 r2 1", "r2 -1 0", "0 -1 r2", "(((a nor b) nor ((a nor b) nor (c nor (a nor c)))) nor (a nor (a nor (b nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b)))))))))"),
    ("1 0 1", "0 1 0", "-1 r2 1", "((a nor (a nor b)) nor (((a nor b) nor (c nor (a nor b))) nor (a nor (a nor (b nor (b nor ((a nor (a nor b)) nor (c nor (a nor (a nor b))))))))))"),
];

fn literal(coords: &str) -> Ray {
    Ray::parse_coords(&coords.split_whitespace().collect::<Vec<_>>()).expect("valid ray literal")
}

/// The generators `a = (1,0,0)`, `b = (1,1,0)`, `c = (√2,1,1)`.
pub fn peres_generators() -> [Ray; 3] {
    [literal("1 0 0"), literal("1 1 0"), literal("r2 1 1")]
}

fn permutations3() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// All rays obtained from `base` by permuting coordinates and flipping signs.
fn signed_permutations(base: [Scalar; 3]) -> BTreeSet<Ray> {
    let mut out = BTreeSet::new();
    for perm in permutations3() {
        for signs in 0..8u8 {
            let coords = (0..3)
                .map(|i| {
                    let x = base[perm[i]].clone();
                    if signs >> i & 1 == 1 {
                        -x
                    } else {
                        x
                    }
                })
                .collect();
            out.insert(Ray::new(coords).expect("nonzero"));
        }
    }
    out
}

fn family(a: i64, b: i64, c_sqrt2: bool, c: i64) -> [Scalar; 3] {
    let third = if c_sqrt2 {
        Scalar::from_ints(0, c)
    } else {
        Scalar::from_int(c)
    };
    [Scalar::from_int(a), Scalar::from_int(b), third]
}

/// The 33 rays: signed coordinate permutations of (0,0,1), (0,1,1),
/// (0,1,√2) and (1,1,√2).
pub fn peres_rays() -> BTreeSet<Ray> {
    [
        family(0, 0, false, 1),
        family(0, 1, false, 1),
        family(0, 1, true, 1),
        family(1, 1, true, 1),
    ]
    .into_iter()
    .flat_map(signed_permutations)
    .collect()
}

/// The 17 orthogenerators: (0,0,1), (0,1,0) and all coordinate permutations
/// of (0,1,√2), (1,1,√2) and (1,-1,√2).
pub fn seventeen_orthogenerators() -> BTreeSet<Ray> {
    let mut out = BTreeSet::from([literal("0 0 1"), literal("0 1 0")]);
    for base in [family(0, 1, true, 1), family(1, 1, true, 1), family(1, -1, true, 1)] {
        for perm in permutations3() {
            let coords = perm.iter().map(|&i| base[i].clone()).collect();
            out.insert(Ray::new(coords).expect("nonzero"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Generator(char),
    Nor(Box<Expr>, Box<Expr>),
}

fn parse_expr(text: &str) -> Result<Expr> {
    let tokens: Vec<String> = text
        .replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(String::from)
        .collect();
    let mut pos = 0;
    let e = parse_tokens(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Derivation(format!("trailing input in `{text}`")));
    }
    Ok(e)
}

fn parse_tokens(tokens: &[String], pos: &mut usize) -> Result<Expr> {
    let bad = |msg: &str, at: usize| Error::Derivation(format!("{msg} at token {at}"));
    let tok = tokens.get(*pos).ok_or_else(|| bad("unexpected end", *pos))?;
    *pos += 1;
    match tok.as_str() {
        "a" | "b" | "c" => Ok(Expr::Generator(tok.chars().next().unwrap())),
        "(" => {
            let left = parse_tokens(tokens, pos)?;
            if tokens.get(*pos).map(String::as_str) != Some("nor") {
                return Err(bad("expected `nor`", *pos));
            }
            *pos += 1;
            let right = parse_tokens(tokens, pos)?;
            if tokens.get(*pos).map(String::as_str) != Some(")") {
                return Err(bad("expected `)`", *pos));
            }
            *pos += 1;
            Ok(Expr::Nor(Box::new(left), Box::new(right)))
        }
        _ => Err(bad("unexpected token", *pos - 1)),
    }
}

fn evaluate(e: &Expr, gens: &HashMap<char, Ray>) -> Result<Ray> {
    match e {
        Expr::Generator(g) => Ok(gens[g].clone()),
        Expr::Nor(l, r) => {
            let (l, r) = (evaluate(l, gens)?, evaluate(r, gens)?);
            l.nor(&r)
        }
    }
}

/// One evaluated line of the derivation script.
#[derive(Debug, Clone, Serialize)]
pub struct DerivationRow {
    pub expression: String,
    pub left: String,
    pub right: String,
    pub result: String,
}

/// Evaluates every script line from the generators, checking that both
/// operands and the result agree with the tabulated rays.
pub fn derivation_rows() -> Result<Vec<DerivationRow>> {
    let [a, b, c] = peres_generators();
    let gens = HashMap::from([('a', a), ('b', b), ('c', c)]);
    let mut rows = Vec::with_capacity(DERIVATION.len());
    for (line, &(result, left, right, expression)) in DERIVATION.iter().enumerate() {
        let Expr::Nor(l, r) = parse_expr(expression)? else {
            return Err(Error::Derivation(format!("line {}: not a nor expression", line + 1)));
        };
        let (lv, rv) = (evaluate(&l, &gens)?, evaluate(&r, &gens)?);
        let value = lv.nor(&rv)?;
        for (got, want, what) in [(&lv, left, "left operand"), (&rv, right, "right operand"), (&value, result, "result")] {
            if *got != literal(want) {
                return Err(Error::Derivation(format!(
                    "line {}: {what} of `{expression}` is {got}, table says ({want})",
                    line + 1
                )));
            }
        }
        rows.push(DerivationRow {
            expression: expression.to_string(),
            left: lv.label(),
            right: rv.label(),
            result: value.label(),
        });
    }
    Ok(rows)
}

/// The three generators together with every ray the script derives.
pub fn replay_derivation() -> Result<BTreeSet<Ray>> {
    let mut out: BTreeSet<Ray> = peres_generators().into_iter().collect();
    for row in derivation_rows()? {
        out.insert(literal(row.result.trim_matches(|c| c == '(' || c == ')')));
    }
    Ok(out)
}

/// Summary of the Kochen-Specker pipeline on the Peres configuration.
#[derive(Debug, Clone, Serialize)]
pub struct PeresReport {
    pub generated: usize,
    pub derivation_matches: bool,
    pub closure: usize,
    pub seventeen_close_to_same: bool,
    pub added_families: Vec<String>,
    pub contexts: usize,
    pub all_triads: bool,
    pub poset_elements: usize,
    pub states: usize,
    pub states_with_100_true: usize,
}

pub fn peres_report() -> Result<PeresReport> {
    let rays = peres_rays();
    let derived = replay_derivation()?;
    let closed = ortho_closure(&rays, DEFAULT_CLOSURE_CAP)?;
    let from_seventeen = ortho_closure(&seventeen_orthogenerators(), DEFAULT_CLOSURE_CAP)?;
    let added_families: BTreeSet<String> = closed
        .difference(&rays)
        .map(Ray::coordinate_family)
        .collect();
    let diagram = contexts(&closed)?;
    let seeded = symmetric_seed(&diagram, &literal("1 0 0").label())?;
    Ok(PeresReport {
        generated: rays.len(),
        derivation_matches: derived == rays,
        closure: closed.len(),
        seventeen_close_to_same: from_seventeen == closed,
        added_families: added_families.into_iter().collect(),
        contexts: diagram.contexts().len(),
        all_triads: diagram.contexts().iter().all(|c| c.len() == 3),
        poset_elements: element_count_of_orthoposet(&closed)?,
        states: enumerate_states(&diagram).len(),
        states_with_100_true: seeded.len(),
    })
}
