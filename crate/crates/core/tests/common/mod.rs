//! Independent reference implementations used as test oracles.
#![allow(clippy::needless_range_loop)]
#![allow(dead_code)]

use std::collections::BTreeSet;

use stuquandle::algebra::{FiniteStuquandle, Op, OperationTable};
use stuquandle::presentation::{Coloring, Presentation};

pub type Rows = Vec<Vec<usize>>;

/// Tables as printed, in the order `*`, R1, R2, R3, R4.
pub struct Printed {
    pub name: &'static str,
    pub tables: [Rows; 5],
}

fn rows(r: &[&[usize]]) -> Rows {
    r.iter().map(|x| x.to_vec()).collect()
}

pub fn printed_x1() -> Printed {
    Printed {
        name: "X1_ex63",
        tables: [
            rows(&[&[0, 2, 0, 2], &[3, 1, 3, 1], &[2, 0, 2, 0], &[1, 3, 1, 3]]),
            rows(&[&[0, 3, 2, 1], &[2, 1, 0, 3], &[0, 3, 2, 1], &[2, 1, 0, 3]]),
            rows(&[&[0, 0, 0, 0], &[1, 1, 1, 1], &[2, 2, 2, 2], &[3, 3, 3, 3]]),
            rows(&[&[0, 2, 0, 2], &[3, 1, 3, 1], &[2, 0, 2, 0], &[1, 3, 1, 3]]),
            rows(&[&[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 2, 3]]),
        ],
    }
}

pub fn printed_x2() -> Printed {
    Printed {
        name: "X2_ex63",
        tables: [
            rows(&[&[0, 0, 0, 0], &[1, 1, 1, 1], &[2, 2, 2, 2], &[3, 3, 3, 3]]),
            rows(&[&[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 2, 3]]),
            rows(&[&[0, 0, 0, 0], &[1, 1, 1, 1], &[2, 2, 2, 2], &[3, 3, 3, 3]]),
            rows(&[&[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 2, 3]]),
            rows(&[&[0, 0, 0, 0], &[1, 1, 1, 1], &[2, 2, 2, 2], &[3, 3, 3, 3]]),
        ],
    }
}

/// Stated by formulas rather than printed tables.
pub fn printed_x71() -> Printed {
    let t = |f: fn(usize, usize) -> usize| (0..4).map(|x| (0..4).map(|y| f(x, y) % 4).collect()).collect();
    Printed {
        name: "X_ex71",
        tables: [
            t(|x, y| 3 * x + 2 * y),
            t(|x, y| x + 2 * y * y),
            t(|x, y| 2 * x * x + y),
            t(|x, _| 3 * x),
            t(|x, y| 2 * x + y),
        ],
    }
}

pub fn printed_x72() -> Printed {
    Printed {
        name: "X_ex72",
        tables: [
            rows(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]]),
            rows(&[&[0, 2, 2], &[0, 2, 2], &[0, 2, 2]]),
            rows(&[&[0, 0, 0], &[2, 2, 2], &[2, 2, 2]]),
            rows(&[&[0, 0, 0], &[1, 1, 1], &[0, 0, 0]]),
            rows(&[&[0, 1, 0], &[0, 1, 0], &[0, 1, 0]]),
        ],
    }
}

pub fn printed_x74() -> Printed {
    Printed {
        name: "X_ex74",
        tables: [
            rows(&[&[0, 0, 0, 0], &[1, 1, 1, 1], &[2, 2, 2, 2], &[3, 3, 3, 3]]),
            rows(&[&[0, 1, 2, 3], &[3, 0, 1, 2], &[2, 3, 0, 1], &[1, 2, 3, 0]]),
            rows(&[&[0, 3, 2, 1], &[1, 0, 3, 2], &[2, 1, 0, 3], &[3, 2, 1, 0]]),
            rows(&[&[0, 2, 0, 2], &[1, 3, 1, 3], &[2, 0, 2, 0], &[3, 1, 3, 1]]),
            rows(&[&[0, 1, 2, 3], &[2, 3, 0, 1], &[0, 1, 2, 3], &[2, 3, 0, 1]]),
        ],
    }
}

pub fn all_printed() -> Vec<Printed> {
    vec![printed_x1(), printed_x2(), printed_x71(), printed_x72(), printed_x74()]
}

impl Printed {
    pub fn build(&self) -> FiniteStuquandle {
        let t: Vec<OperationTable> = self.tables.iter().map(|r| OperationTable::from_rows(r).unwrap()).collect();
        FiniteStuquandle::new(t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone(), t[4].clone()).unwrap()
    }
}

pub fn table_rows(x: &FiniteStuquandle, op: Op) -> Rows {
    x.table(op).rows().map(|r| r.to_vec()).collect()
}

/// Naive check of all thirteen axioms straight from the definitions.
pub fn axioms_hold(n: usize, t: &[Rows; 5]) -> Result<(), String> {
    let [s, r1, r2, r3, r4] = t;
    let mut inv = vec![vec![usize::MAX; n]; n];
    for y in 0..n {
        for x in 0..n {
            let v = s[x][y];
            if inv[v][y] != usize::MAX {
                return Err(format!("column {y} not bijective"));
            }
            inv[v][y] = x;
        }
    }
    let i = |a: usize, b: usize| inv[a][b];
    let st = |a: usize, b: usize| s[a][b];
    for x in 0..n {
        if st(x, x) != x {
            return Err(format!("idempotency at {x}"));
        }
        for y in 0..n {
            let two = [
                ("eq4", r2[x][y] == r1[y][st(x, y)]),
                ("eq5", st(r1[x][y], r2[x][y]) == r2[y][st(x, y)]),
                ("eq6", st(r3[y][x], r4[y][x]) == r4[st(x, y)][y]),
                ("eq7", r4[y][x] == r3[st(x, y)][y]),
            ];
            for (name, ok) in two {
                if !ok {
                    return Err(format!("{name} at ({x},{y})"));
                }
            }
            for z in 0..n {
                let three = [
                    ("distributivity", st(st(x, y), z) == st(st(x, z), st(y, z))),
                    ("eq1", st(r1[i(x, y)][z], y) == r1[x][st(z, y)]),
                    ("eq2", r2[i(x, y)][z] == i(r2[x][st(z, y)], y)),
                    ("eq3", st(i(y, r1[x][z]), x) == i(st(y, r2[x][z]), z)),
                    ("eq8", r3[st(y, x)][z] == st(r3[y][i(z, x)], x)),
                    ("eq9", r4[y][i(z, x)] == i(r4[st(y, x)][z], x)),
                    ("eq10", i(st(x, r4[y][z]), y) == st(i(x, r3[y][z]), z)),
                ];
                for (name, ok) in three {
                    if !ok {
                        return Err(format!("{name} at ({x},{y},{z})"));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn tables_of(x: &FiniteStuquandle) -> [Rows; 5] {
    [Op::Star, Op::R1, Op::R2, Op::R3, Op::R4].map(|op| table_rows(x, op))
}

/// Every assignment in X^g, kept when all relations hold; lexicographic.
pub fn brute_colorings(p: &Presentation, x: &FiniteStuquandle) -> Vec<Coloring> {
    let g = p.generator_count();
    let n = x.size();
    let mut out = Vec::new();
    let mut v = vec![0usize; g];
    loop {
        if p.relations().iter().all(|r| v[r.out] == x.apply(r.op, v[r.lhs], v[r.rhs])) {
            out.push(Coloring(v.clone()));
        }
        let mut k = g;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            v[k] += 1;
            if v[k] < n {
                break;
            }
            v[k] = 0;
        }
    }
}

/// Fixpoint of applying all six operations to pairs of members.
pub fn brute_closure(x: &FiniteStuquandle, seed: &[usize]) -> Vec<usize> {
    let mut s: BTreeSet<usize> = seed.iter().copied().collect();
    loop {
        let mut next = s.clone();
        for &a in &s {
            for &b in &s {
                for op in Op::ALL {
                    next.insert(x.apply(op, a, b));
                }
            }
        }
        if next == s {
            return s.into_iter().collect();
        }
        s = next;
    }
}

/// `(r, c)` pairs per operation counted directly from the tables.
pub fn brute_profile(x: &FiniteStuquandle, e: usize) -> [(usize, usize); 5] {
    let n = x.size();
    [Op::Star, Op::R1, Op::R2, Op::R3, Op::R4].map(|op| {
        let r = (0..n).filter(|&y| x.apply(op, e, y) == e).count();
        let c = (0..n).filter(|&y| x.apply(op, y, e) == y).count();
        (r, c)
    })
}
