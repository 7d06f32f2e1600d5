//! Isomorphism testing by invariant signatures and backtracking.
//!
//! Each element gets an invariant (height, co-height, down-set size, up-set
//! size), refined by the colours of its covers and complement. Two
//! structures can only be isomorphic if their colour multisets agree; the
//! search then maps elements along the Hasse diagram and checks the order
//! (and complement, when present) against every element already placed.

use super::{Lattice, OrthoLattice};

type Invariant = (usize, usize, usize, usize);

fn invariants(l: &Lattice) -> Vec<Invariant> {
    let n = l.len();
    // co-height: longest chain from x up to 1
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&y| std::cmp::Reverse((0..n).filter(|&z| l.leq(z, y)).count()));
    let mut co = vec![0usize; n];
    for &y in &order {
        for z in 0..n {
            if l.lt(y, z) {
                co[y] = co[y].max(co[z] + 1);
            }
        }
    }
    (0..n)
        .map(|x| {
            let down = (0..n).filter(|&z| l.leq(z, x)).count();
            let up = (0..n).filter(|&z| l.leq(x, z)).count();
            (l.height(x), co[x], down, up)
        })
        .collect()
}

impl Lattice {
    /// Sorted multiset of element invariants; equal for isomorphic lattices.
    pub fn signature(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut sig = invariants(self);
        sig.sort_unstable();
        sig
    }

    /// An order isomorphism `self -> other` as an index map, if one exists.
    pub fn isomorphism_to(&self, other: &Lattice) -> Option<Vec<usize>> {
        find_isomorphism(self, other, None)
    }

    pub fn is_isomorphic(&self, other: &Lattice) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

impl OrthoLattice {
    /// An isomorphism preserving order and complement, if one exists.
    pub fn isomorphism_to(&self, other: &OrthoLattice) -> Option<Vec<usize>> {
        find_isomorphism(
            self.lattice(),
            other.lattice(),
            Some((self.ortho_map(), other.ortho_map())),
        )
    }

    pub fn is_isomorphic(&self, other: &OrthoLattice) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

/// Colour refinement over both structures at once: an element's colour is
/// refined by the colours of its upper covers, lower covers and complement
/// until the partition stops splitting. Colours are comparable across `a`
/// and `b`.
fn refined_colours(
    a: &Lattice,
    b: &Lattice,
    ortho: Option<(&[usize], &[usize])>,
) -> (Vec<usize>, Vec<usize>) {
    let covers = |l: &Lattice| -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = l.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (x, y) in l.hasse_edges() {
            up[x].push(y);
            down[y].push(x);
        }
        (up, down)
    };
    let (up_a, down_a) = covers(a);
    let (up_b, down_b) = covers(b);
    let mut ids = std::collections::HashMap::new();
    let mut intern = |key: Vec<usize>| {
        let next = ids.len();
        *ids.entry(key).or_insert(next)
    };
    let mut ca: Vec<usize> = invariants(a).into_iter().map(|(h, c, d, u)| intern(vec![h, c, d, u])).collect();
    let mut cb: Vec<usize> = invariants(b).into_iter().map(|(h, c, d, u)| intern(vec![h, c, d, u])).collect();
    let classes = |ca: &[usize], cb: &[usize]| {
        ca.iter().chain(cb).collect::<std::collections::HashSet<_>>().len()
    };
    let mut count = classes(&ca, &cb);
    loop {
        let mut ids = std::collections::HashMap::new();
        let mut step = |colours: &[usize], up: &[Vec<usize>], down: &[Vec<usize>], oc: Option<&[usize]>| {
            (0..colours.len())
                .map(|x| {
                    let mut u: Vec<usize> = up[x].iter().map(|&y| colours[y]).collect();
                    let mut d: Vec<usize> = down[x].iter().map(|&y| colours[y]).collect();
                    u.sort_unstable();
                    d.sort_unstable();
                    let mut key = vec![colours[x], oc.map_or(usize::MAX, |o| colours[o[x]]), u.len()];
                    key.extend(u);
                    key.extend(d);
                    let next = ids.len();
                    *ids.entry(key).or_insert(next)
                })
                .collect::<Vec<usize>>()
        };
        let na = step(&ca, &up_a, &down_a, ortho.map(|o| o.0));
        let nb = step(&cb, &up_b, &down_b, ortho.map(|o| o.1));
        let n = classes(&na, &nb);
        ca = na;
        cb = nb;
        if n == count {
            break;
        }
        count = n;
    }
    (ca, cb)
}

fn find_isomorphism(
    a: &Lattice,
    b: &Lattice,
    ortho: Option<(&[usize], &[usize])>,
) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let (col_a, col_b) = refined_colours(a, b, ortho);
    let mut sa = col_a.clone();
    let mut sb = col_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // Start from the rarest colour and grow along the Hasse diagram, so each
    // placed element is constrained by its already placed neighbours.
    let n = a.len();
    let class_size = |c: usize| col_a.iter().filter(|&&d| d == c).count();
    let mut neighbours = vec![Vec::new(); n];
    for (x, y) in a.hasse_edges() {
        neighbours[x].push(y);
        neighbours[y].push(x);
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut by_rarity: Vec<usize> = (0..n).collect();
    by_rarity.sort_by_key(|&x| (class_size(col_a[x]), x));
    for &start in &by_rarity {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let mut next: Vec<usize> = neighbours[x].iter().copied().filter(|&y| !seen[y]).collect();
            next.sort_by_key(|&y| (class_size(col_a[y]), y));
            for y in next {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(a, b, ortho, &col_a, &col_b, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &Lattice,
    b: &Lattice,
    ortho: Option<(&[usize], &[usize])>,
    inv_a: &[usize],
    inv_b: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in 0..b.len() {
        if used[y] || inv_a[x] != inv_b[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let v = map[u];
            a.leq(x, u) == b.leq(y, v) && a.leq(u, x) == b.leq(v, y)
        }) && match ortho {
            Some((oa, ob)) => {
                let xc = oa[x];
                (xc == x) == (ob[y] == y) && (map[xc] == usize::MAX || map[xc] == ob[y])
            }
            None => true,
        };
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if search(a, b, ortho, inv_a, inv_b, order, depth + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}
