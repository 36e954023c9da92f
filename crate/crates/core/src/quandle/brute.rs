use std::collections::HashMap;

use crate::abelian::permutation_cycle_type;

use super::{IsoMethod, IsoWitness, QuandleTable};

/// Per-element isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Profile {
    orbit_size: usize,
    /// Fixed points of the right translation by this element.
    column_fixed: usize,
    /// Number of `y` with `x^y = x`.
    row_fixed: usize,
    column_cycles: Vec<usize>,
}

fn profiles(t: &QuandleTable, orbit_of: &[usize], orbit_sizes: &[usize]) -> Vec<Profile> {
    let n = t.order();
    (0..n)
        .map(|x| {
            let col = t.column(x);
            Profile {
                orbit_size: orbit_sizes[orbit_of[x]],
                column_fixed: (0..n).filter(|&y| col[y] == y).count(),
                row_fixed: (0..n).filter(|&y| t.get(x, y) == x).count(),
                column_cycles: permutation_cycle_type(&col),
            }
        })
        .collect()
}

struct Side {
    table: QuandleTable,
    dual: QuandleTable,
    orbit_of: Vec<usize>,
    class: Vec<usize>,
}

impl Side {
    fn new(t: &QuandleTable, classes: &mut HashMap<Profile, usize>) -> Self {
        let orbits = t.orbits();
        let mut orbit_of = vec![0; t.order()];
        for (i, o) in orbits.iter().enumerate() {
            for &x in o {
                orbit_of[x] = i;
            }
        }
        let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        let class = profiles(t, &orbit_of, &sizes)
            .into_iter()
            .map(|p| {
                let next = classes.len();
                *classes.entry(p).or_insert(next)
            })
            .collect();
        Side { table: t.clone(), dual: t.dual(), orbit_of, class }
    }
}

/// Finds a quandle isomorphism `t1 -> t2` by exhaustive search.
///
/// Elements are matched only to elements with the same profile (orbit size,
/// translation fixed points and cycle type, row fixed points), orbits must
/// map consistently, and every choice is closed under the operation and its
/// dual before the next one. Exact: returns `None` only if no isomorphism
/// exists. Both tables must satisfy axiom (i).
pub fn brute_iso(t1: &QuandleTable, t2: &QuandleTable) -> Option<IsoWitness> {
    let n = t1.order();
    if n != t2.order() {
        return None;
    }
    let mut classes = HashMap::new();
    let a = Side::new(t1, &mut classes);
    let b = Side::new(t2, &mut classes);
    let mut count_a = vec![0usize; classes.len()];
    let mut count_b = vec![0usize; classes.len()];
    for x in 0..n {
        count_a[a.class[x]] += 1;
        count_b[b.class[x]] += 1;
    }
    if count_a != count_b {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (count_a[a.class[x]], x));

    let mut search = Search {
        a: &a,
        b: &b,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        assigned: Vec::new(),
        orbit_fwd: vec![(usize::MAX, 0); n],
        orbit_back: vec![(usize::MAX, 0); n],
    };
    if search.run(&order, 0) {
        let witness = IsoWitness { map: search.map, method: IsoMethod::BruteForce };
        debug_assert!(witness.verify(t1, t2));
        Some(witness)
    } else {
        None
    }
}

struct Search<'a> {
    a: &'a Side,
    b: &'a Side,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    /// Orbit of `t1` -> (orbit of `t2`, number of assigned elements in it).
    orbit_fwd: Vec<(usize, usize)>,
    orbit_back: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn bind_orbit(slot: &mut (usize, usize), target: usize) -> bool {
        if slot.1 == 0 {
            *slot = (target, 1);
            true
        } else if slot.0 == target {
            slot.1 += 1;
            true
        } else {
            false
        }
    }

    fn assign(&mut self, x: usize, u: usize) -> bool {
        let mut queue = vec![(x, u)];
        while let Some((x, u)) = queue.pop() {
            let cur = self.map[x];
            if cur == u {
                continue;
            }
            if cur != usize::MAX || self.used[u] || self.a.class[x] != self.b.class[u] {
                return false;
            }
            let (ox, ou) = (self.a.orbit_of[x], self.b.orbit_of[u]);
            let fwd = self.orbit_fwd[ox];
            let back = self.orbit_back[ou];
            if (fwd.1 > 0 && fwd.0 != ou) || (back.1 > 0 && back.0 != ox) {
                return false;
            }
            Self::bind_orbit(&mut self.orbit_fwd[ox], ou);
            Self::bind_orbit(&mut self.orbit_back[ou], ox);
            self.map[x] = u;
            self.used[u] = true;
            self.assigned.push(x);
            for &y in &self.assigned {
                let v = self.map[y];
                queue.push((self.a.table.get(x, y), self.b.table.get(u, v)));
                queue.push((self.a.table.get(y, x), self.b.table.get(v, u)));
                queue.push((self.a.dual.get(x, y), self.b.dual.get(u, v)));
                queue.push((self.a.dual.get(y, x), self.b.dual.get(v, u)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.assigned.drain(mark..) {
            let u = self.map[x];
            self.orbit_fwd[self.a.orbit_of[x]].1 -= 1;
            self.orbit_back[self.b.orbit_of[u]].1 -= 1;
            self.used[u] = false;
            self.map[x] = usize::MAX;
        }
    }

    fn run(&mut self, order: &[usize], mut i: usize) -> bool {
        while i < order.len() && self.map[order[i]] != usize::MAX {
            i += 1;
        }
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for u in 0..self.map.len() {
            if self.used[u] || self.a.class[x] != self.b.class[u] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(x, u) && self.run(order, i + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}
