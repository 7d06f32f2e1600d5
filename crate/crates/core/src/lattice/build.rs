use super::{dedup_labels, Lattice, OrthoLattice};
use crate::error::{Error, Result};

fn atom_name(i: usize, count: usize) -> String {
    if count <= 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// The Boolean algebra 2^n on atoms `a, b, c, ...`.
///
/// Elements are indexed by bit mask; labels are `0`, `1` and set literals
/// such as `{a,c}`. Panics for `n > 12` (4096 elements is already past any
/// exhaustive scan this crate performs).
pub fn boolean(n: usize) -> OrthoLattice {
    assert!(n <= 12, "boolean algebra 2^{n} is too large");
    let size = 1usize << n;
    let full = size - 1;
    let labels: Vec<String> = (0..size)
        .map(|mask| {
            if mask == 0 {
                "0".to_string()
            } else if mask == full {
                "1".to_string()
            } else {
                let names: Vec<String> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| atom_name(i, n))
                    .collect();
                format!("{{{}}}", names.join(","))
            }
        })
        .collect();
    let mut leq = vec![false; size * size];
    for x in 0..size {
        for y in 0..size {
            leq[x * size + y] = x & y == x;
        }
    }
    let lattice = Lattice::from_order(labels, leq).expect("subset order is a lattice");
    let ortho = (0..size).map(|x| full ^ x).collect();
    OrthoLattice::new(lattice, ortho).expect("set complement is an orthocomplement")
}

/// The two-element Boolean algebra {0, 1}.
pub fn two() -> OrthoLattice {
    boolean(1)
}

/// The chain `0 < c1 < ... < c(n-2) < 1` with `n` elements, as a plain lattice.
pub fn chain(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::InvalidArgument("a bounded chain needs at least 2 elements".into()));
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => format!("c{i}"),
        })
        .collect();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in x..n {
            leq[x * n + y] = true;
        }
    }
    Lattice::from_order(labels, leq)
}

/// The "Chinese lantern" MO_n: `n` complementary atom pairs pasted at 0 and 1.
///
/// Element order is `0, p-, p+, q-, q+, ..., 1`, with `x-` and `x+`
/// complementary.
pub fn mo(n: usize) -> Result<OrthoLattice> {
    if n == 0 {
        return Err(Error::InvalidArgument("MO_n needs n >= 1".into()));
    }
    let size = 2 * n + 2;
    let one = size - 1;
    let mut labels = vec!["0".to_string()];
    for i in 0..n {
        let stem = if n <= 8 {
            char::from(b'p' + i as u8).to_string()
        } else {
            format!("a{}", i + 1)
        };
        labels.push(format!("{stem}-"));
        labels.push(format!("{stem}+"));
    }
    labels.push("1".to_string());
    let mut leq = vec![false; size * size];
    for x in 0..size {
        leq[x * size + x] = true;
        leq[x] = true;
        leq[x * size + one] = true;
    }
    let lattice = Lattice::from_order(labels, leq)?;
    let mut ortho = vec![0; size];
    ortho[0] = one;
    ortho[one] = 0;
    for i in 0..n {
        ortho[1 + 2 * i] = 2 + 2 * i;
        ortho[2 + 2 * i] = 1 + 2 * i;
    }
    OrthoLattice::new(lattice, ortho)
}

/// Horizontal sum: the two lattices glued at their least and greatest
/// elements only. Labels of the second summand are suffixed on collision.
pub fn horizontal_sum(l1: &OrthoLattice, l2: &OrthoLattice) -> Result<OrthoLattice> {
    if l1.len() < 2 || l2.len() < 2 {
        return Err(Error::InvalidArgument("horizontal sum of a one-element lattice".into()));
    }
    let mid1: Vec<usize> = (0..l1.len()).filter(|&x| x != l1.zero() && x != l1.one()).collect();
    let mid2: Vec<usize> = (0..l2.len()).filter(|&x| x != l2.zero() && x != l2.one()).collect();
    let size = mid1.len() + mid2.len() + 2;
    let one = size - 1;
    // new index of each old element
    let pos1 = |x: usize| -> usize {
        if x == l1.zero() {
            0
        } else if x == l1.one() {
            one
        } else {
            1 + mid1.iter().position(|&m| m == x).unwrap()
        }
    };
    let pos2 = |x: usize| -> usize {
        if x == l2.zero() {
            0
        } else if x == l2.one() {
            one
        } else {
            1 + mid1.len() + mid2.iter().position(|&m| m == x).unwrap()
        }
    };
    let mut labels = vec![String::new(); size];
    for x in 0..l1.len() {
        labels[pos1(x)] = l1.label(x).to_string();
    }
    for &x in &mid2 {
        labels[pos2(x)] = l2.label(x).to_string();
    }
    let labels = dedup_labels(labels);

    let mut leq = vec![false; size * size];
    let mut ortho = vec![0; size];
    for x in 0..l1.len() {
        ortho[pos1(x)] = pos1(l1.ortho(x));
        for y in 0..l1.len() {
            leq[pos1(x) * size + pos1(y)] = l1.leq(x, y);
        }
    }
    for x in 0..l2.len() {
        ortho[pos2(x)] = pos2(l2.ortho(x));
        for y in 0..l2.len() {
            if l2.leq(x, y) {
                leq[pos2(x) * size + pos2(y)] = true;
            }
        }
    }
    OrthoLattice::new(Lattice::from_order(labels, leq)?, ortho)
}

/// Direct product with componentwise order and complement. The element
/// `(x, y)` has index `x * l2.len() + y`.
pub fn product(l1: &OrthoLattice, l2: &OrthoLattice) -> Result<OrthoLattice> {
    let (n1, n2) = (l1.len(), l2.len());
    let size = n1 * n2;
    let labels = (0..size)
        .map(|i| format!("({},{})", l1.label(i / n2), l2.label(i % n2)))
        .collect();
    let mut leq = vec![false; size * size];
    for i in 0..size {
        for j in 0..size {
            leq[i * size + j] = l1.leq(i / n2, j / n2) && l2.leq(i % n2, j % n2);
        }
    }
    let ortho = (0..size)
        .map(|i| l1.ortho(i / n2) * n2 + l2.ortho(i % n2))
        .collect();
    OrthoLattice::new(Lattice::from_order(labels, leq)?, ortho)
}
