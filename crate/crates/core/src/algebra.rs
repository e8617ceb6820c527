//! Finite stuquandles on the carrier `{0, .., n-1}`.
//!
//! A stuquandle is a quandle `(X, *)` together with four binary maps
//! `R1..R4` satisfying the singquandle equations (eq1-eq5) and the stuck
//! equations (eq6-eq10). Every table is stored row = first argument,
//! column = second argument, so `table.get(x, y)` is `x op y`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

use crate::polynomial::element_profile;

/// Elements are canonical integers `0..n`.
pub type Element = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is outside the carrier 0..{n}")]
    EntryOutOfRange {
        row: Element,
        col: Element,
        value: Element,
        n: usize,
    },
    #[error("tables disagree on carrier size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("column {0} of the * table is not a bijection")]
    NonBijectiveColumn(Element),
    #[error("axiom {axiom} fails at (x, y, z) = ({}, {}, {})", witness[0], witness[1], witness[2])]
    AxiomViolation { axiom: Axiom, witness: [Element; 3] },
    #[error("{value} is not a unit modulo {modulus}")]
    NonUnit { value: i64, modulus: usize },
    #[error("element {element} is outside the carrier 0..{n}")]
    ElementOutOfRange { element: Element, n: usize },
}

/// The six binary operations of a stuquandle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Star,
    StarInv,
    R1,
    R2,
    R3,
    R4,
}

impl Op {
    pub const ALL: [Op; 6] = [Op::Star, Op::StarInv, Op::R1, Op::R2, Op::R3, Op::R4];

    /// The five operations a homomorphism has to preserve (`~*` follows from `*`).
    pub const PRIMARY: [Op; 5] = [Op::Star, Op::R1, Op::R2, Op::R3, Op::R4];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Star => "*",
            Op::StarInv => "~*",
            Op::R1 => "R1",
            Op::R2 => "R2",
            Op::R3 => "R3",
            Op::R4 => "R4",
        }
    }

    /// `*` and `~*` are written infix, the `R` maps as function calls.
    pub fn is_infix(self) -> bool {
        matches!(self, Op::Star | Op::StarInv)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "*" | "STAR" | "star" => Ok(Op::Star),
            "~*" | "STAR_INV" | "star_inv" => Ok(Op::StarInv),
            "R1" | "r1" => Ok(Op::R1),
            "R2" | "r2" => Ok(Op::R2),
            "R3" | "r3" => Ok(Op::R3),
            "R4" | "r4" => Ok(Op::R4),
            other => Err(format!("unknown operation `{other}`")),
        }
    }
}

/// The thirteen defining axioms, in the order they are verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `(x*y)*z = (x*z)*(y*z)`
    QuandleI,
    /// every column `x -> x*y` is a bijection
    QuandleII,
    /// `x*x = x`
    QuandleIII,
    Eq1,
    Eq2,
    Eq3,
    Eq4,
    Eq5,
    Eq6,
    Eq7,
    Eq8,
    Eq9,
    Eq10,
}

impl Axiom {
    pub const ALL: [Axiom; 13] = [
        Axiom::QuandleI,
        Axiom::QuandleII,
        Axiom::QuandleIII,
        Axiom::Eq1,
        Axiom::Eq2,
        Axiom::Eq3,
        Axiom::Eq4,
        Axiom::Eq5,
        Axiom::Eq6,
        Axiom::Eq7,
        Axiom::Eq8,
        Axiom::Eq9,
        Axiom::Eq10,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::QuandleI => "quandle-i",
            Axiom::QuandleII => "quandle-ii",
            Axiom::QuandleIII => "quandle-iii",
            Axiom::Eq1 => "eq1",
            Axiom::Eq2 => "eq2",
            Axiom::Eq3 => "eq3",
            Axiom::Eq4 => "eq4",
            Axiom::Eq5 => "eq5",
            Axiom::Eq6 => "eq6",
            Axiom::Eq7 => "eq7",
            Axiom::Eq8 => "eq8",
            Axiom::Eq9 => "eq9",
            Axiom::Eq10 => "eq10",
        }
    }

    /// Number of free variables; unused witness slots are reported as 0.
    fn arity(self) -> usize {
        match self {
            Axiom::QuandleII | Axiom::QuandleIII => 1,
            Axiom::Eq4 | Axiom::Eq5 | Axiom::Eq6 | Axiom::Eq7 => 2,
            _ => 3,
        }
    }

    fn holds(self, t: &Tables<'_>, x: Element, y: Element, z: Element) -> bool {
        let s = |a, b| t.star.get(a, b);
        let i = |a, b| t.star_inv.get(a, b);
        let r1 = |a, b| t.r1.get(a, b);
        let r2 = |a, b| t.r2.get(a, b);
        let r3 = |a, b| t.r3.get(a, b);
        let r4 = |a, b| t.r4.get(a, b);
        match self {
            Axiom::QuandleI => s(s(x, y), z) == s(s(x, z), s(y, z)),
            // checked separately while deriving the inverse table
            Axiom::QuandleII => true,
            Axiom::QuandleIII => s(x, x) == x,
            Axiom::Eq1 => s(r1(i(x, y), z), y) == r1(x, s(z, y)),
            Axiom::Eq2 => r2(i(x, y), z) == i(r2(x, s(z, y)), y),
            Axiom::Eq3 => s(i(y, r1(x, z)), x) == i(s(y, r2(x, z)), z),
            Axiom::Eq4 => r2(x, y) == r1(y, s(x, y)),
            Axiom::Eq5 => s(r1(x, y), r2(x, y)) == r2(y, s(x, y)),
            Axiom::Eq6 => s(r3(y, x), r4(y, x)) == r4(s(x, y), y),
            Axiom::Eq7 => r4(y, x) == r3(s(x, y), y),
            Axiom::Eq8 => r3(s(y, x), z) == s(r3(y, i(z, x)), x),
            Axiom::Eq9 => r4(y, i(z, x)) == i(r4(s(y, x), z), x),
            Axiom::Eq10 => i(s(x, r4(y, z)), y) == s(i(x, r3(y, z)), z),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// An `n x n` table of a binary operation on `{0, .., n-1}`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperationTable {
    n: usize,
    entries: Vec<Element>,
}

impl OperationTable {
    pub fn new(n: usize, entries: Vec<Element>) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if entries.len() != n * n {
            return Err(AlgebraError::TableShape {
                expected: n * n,
                found: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|&e| e >= n) {
            return Err(AlgebraError::EntryOutOfRange {
                row: pos / n,
                col: pos % n,
                value: entries[pos],
                n,
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<Element>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(AlgebraError::TableShape {
                expected: n * n,
                found: n * (n - 1) + bad.len(),
            });
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, f: impl Fn(Element, Element) -> Element) -> Result<Self, AlgebraError> {
        let entries = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self::new(n, entries)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: Element, y: Element) -> Element {
        self.entries[x * self.n + y]
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Element]> {
        self.entries.chunks(self.n)
    }

    /// The table of `x ~* y`, i.e. the inverse of each column bijection `x -> x*y`.
    pub fn column_inverse(&self) -> Result<OperationTable, AlgebraError> {
        let n = self.n;
        let mut inv = vec![usize::MAX; n * n];
        for y in 0..n {
            for x in 0..n {
                let v = self.get(x, y);
                let slot = &mut inv[v * n + y];
                if *slot != usize::MAX {
                    return Err(AlgebraError::NonBijectiveColumn(y));
                }
                *slot = x;
            }
        }
        Ok(Self { n, entries: inv })
    }

    /// Transport the table along the bijection `sigma`: the result maps
    /// `(sigma(x), sigma(y))` to `sigma(x op y)`.
    pub fn relabel(&self, sigma: &[Element]) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[sigma[x] * n + sigma[y]] = sigma[self.get(x, y)];
            }
        }
        Self { n, entries }
    }
}

struct Tables<'a> {
    star: &'a OperationTable,
    star_inv: &'a OperationTable,
    r1: &'a OperationTable,
    r2: &'a OperationTable,
    r3: &'a OperationTable,
    r4: &'a OperationTable,
}

fn check_axioms(t: &Tables<'_>) -> Result<(), AlgebraError> {
    let n = t.star.size();
    for axiom in Axiom::ALL {
        let (ys, zs) = match axiom.arity() {
            1 => (1, 1),
            2 => (n, 1),
            _ => (n, n),
        };
        for x in 0..n {
            for y in 0..ys {
                for z in 0..zs {
                    if !axiom.holds(t, x, y, z) {
                        return Err(AlgebraError::AxiomViolation {
                            axiom,
                            witness: [x, y, z],
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Check quandle axioms (i)-(iii) for a single table and return its `~*` table.
pub fn verify_quandle(star: &OperationTable) -> Result<OperationTable, AlgebraError> {
    let star_inv = star.column_inverse()?;
    let n = star.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if star.get(star.get(x, y), z) != star.get(star.get(x, z), star.get(y, z)) {
                    return Err(AlgebraError::AxiomViolation {
                        axiom: Axiom::QuandleI,
                        witness: [x, y, z],
                    });
                }
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| star.get(x, x) != x) {
        return Err(AlgebraError::AxiomViolation {
            axiom: Axiom::QuandleIII,
            witness: [x, 0, 0],
        });
    }
    Ok(star_inv)
}

/// A finite oriented stuquandle whose thirteen axioms have been verified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteStuquandle {
    star: OperationTable,
    star_inv: OperationTable,
    r1: OperationTable,
    r2: OperationTable,
    r3: OperationTable,
    r4: OperationTable,
}

impl FiniteStuquandle {
    /// Validate the tables exhaustively; the `~*` table is derived from `*`.
    pub fn new(
        star: OperationTable,
        r1: OperationTable,
        r2: OperationTable,
        r3: OperationTable,
        r4: OperationTable,
    ) -> Result<Self, AlgebraError> {
        let n = star.size();
        for t in [&r1, &r2, &r3, &r4] {
            if t.size() != n {
                return Err(AlgebraError::SizeMismatch(n, t.size()));
            }
        }
        let star_inv = star.column_inverse()?;
        check_axioms(&Tables {
            star: &star,
            star_inv: &star_inv,
            r1: &r1,
            r2: &r2,
            r3: &r3,
            r4: &r4,
        })?;
        Ok(Self {
            star,
            star_inv,
            r1,
            r2,
            r3,
            r4,
        })
    }

    /// Build from closures; every value is reduced into `0..n` by the caller.
    pub fn from_fns(
        n: usize,
        star: impl Fn(Element, Element) -> Element,
        r1: impl Fn(Element, Element) -> Element,
        r2: impl Fn(Element, Element) -> Element,
        r3: impl Fn(Element, Element) -> Element,
        r4: impl Fn(Element, Element) -> Element,
    ) -> Result<Self, AlgebraError> {
        Self::new(
            OperationTable::from_fn(n, star)?,
            OperationTable::from_fn(n, r1)?,
            OperationTable::from_fn(n, r2)?,
            OperationTable::from_fn(n, r3)?,
            OperationTable::from_fn(n, r4)?,
        )
    }

    /// The one-element stuquandle.
    pub fn singleton() -> Self {
        Self::from_fns(1, |_, _| 0, |_, _| 0, |_, _| 0, |_, _| 0, |_, _| 0)
            .expect("one-element structure satisfies every axiom")
    }

    pub fn size(&self) -> usize {
        self.star.size()
    }

    pub fn elements(&self) -> Range<Element> {
        0..self.size()
    }

    #[inline]
    pub fn apply(&self, op: Op, x: Element, y: Element) -> Element {
        self.table(op).get(x, y)
    }

    pub fn table(&self, op: Op) -> &OperationTable {
        match op {
            Op::Star => &self.star,
            Op::StarInv => &self.star_inv,
            Op::R1 => &self.r1,
            Op::R2 => &self.r2,
            Op::R3 => &self.r3,
            Op::R4 => &self.r4,
        }
    }

    /// The isomorphic copy obtained by renaming each `x` to `sigma[x]`.
    pub fn relabel(&self, sigma: &[Element]) -> Result<Self, AlgebraError> {
        check_permutation(sigma, self.size())?;
        Ok(Self {
            star: self.star.relabel(sigma),
            star_inv: self.star_inv.relabel(sigma),
            r1: self.r1.relabel(sigma),
            r2: self.r2.relabel(sigma),
            r3: self.r3.relabel(sigma),
            r4: self.r4.relabel(sigma),
        })
    }
}

fn check_permutation(sigma: &[Element], n: usize) -> Result<(), AlgebraError> {
    if sigma.len() != n {
        return Err(AlgebraError::TableShape {
            expected: n,
            found: sigma.len(),
        });
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(AlgebraError::ElementOutOfRange { element: s, n });
        }
    }
    Ok(())
}

/// Same as [`FiniteStuquandle::new`].
pub fn build_stuquandle(
    star: OperationTable,
    r1: OperationTable,
    r2: OperationTable,
    r3: OperationTable,
    r4: OperationTable,
) -> Result<FiniteStuquandle, AlgebraError> {
    FiniteStuquandle::new(star, r1, r2, r3, r4)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn modulus(n: usize) -> Result<i64, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::EmptyCarrier);
    }
    Ok(n as i64)
}

/// Linear map `(x, y) -> p x + q y` on `Z_n`.
fn linear(n: i64, p: i64, q: i64) -> impl Fn(Element, Element) -> Element {
    move |x, y| (p * x as i64 + q * y as i64).rem_euclid(n) as Element
}

/// Parameters of the affine family on `Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineParams {
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub e: i64,
}

/// `x*y = ax + (1-a)y`, `R1 = bx + (1-b)y`, `R2 = a(1-b)x + (1-a(1-b))y`,
/// `R3 = (1-e)x + ey`, `R4 = (1-a(1-e))x + a(1-e)y`, all mod `n`.
pub fn affine_stuquandle(p: &AffineParams) -> Result<FiniteStuquandle, AlgebraError> {
    let n = modulus(p.n)?;
    let (a, b, e) = (p.a.rem_euclid(n), p.b.rem_euclid(n), p.e.rem_euclid(n));
    if gcd(a, n) != 1 {
        return Err(AlgebraError::NonUnit { value: p.a, modulus: p.n });
    }
    FiniteStuquandle::from_fns(
        p.n,
        linear(n, a, 1 - a),
        linear(n, b, 1 - b),
        linear(n, a * (1 - b), 1 - a * (1 - b)),
        linear(n, 1 - e, e),
        linear(n, 1 - a * (1 - e), a * (1 - e)),
    )
}

/// Parameters of the Alexander family specialised to the `Z_n`-module `Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderParams {
    pub n: usize,
    pub t: i64,
    pub v: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl AlexanderParams {
    /// `alpha(a, b, c) = at + bv + ctv`, the coefficient driving `R1`/`R2`.
    pub fn alpha_positive(&self) -> i64 {
        self.a * self.t + self.b * self.v + self.c * self.t * self.v
    }

    /// `alpha(d, e, f) = dt + fv + etv`, the coefficient driving `R3`/`R4`.
    pub fn alpha_negative(&self) -> i64 {
        self.d * self.t + self.f * self.v + self.e * self.t * self.v
    }
}

pub fn alexander_stuquandle(p: &AlexanderParams) -> Result<FiniteStuquandle, AlgebraError> {
    let n = modulus(p.n)?;
    let t = p.t.rem_euclid(n);
    if gcd(t, n) != 1 {
        return Err(AlgebraError::NonUnit { value: p.t, modulus: p.n });
    }
    let ap = p.alpha_positive().rem_euclid(n);
    let an = p.alpha_negative().rem_euclid(n);
    FiniteStuquandle::from_fns(
        p.n,
        linear(n, t, 1 - t),
        linear(n, ap, 1 - ap),
        linear(n, t * (1 - ap), 1 - t * (1 - ap)),
        linear(n, 1 - an, an),
        linear(n, 1 - t * (1 - an), t * (1 - an)),
    )
}

/// A subset of a finite stuquandle, kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset<'a> {
    parent: &'a FiniteStuquandle,
    members: Vec<Element>,
}

impl<'a> Subset<'a> {
    pub fn new(
        parent: &'a FiniteStuquandle,
        members: impl IntoIterator<Item = Element>,
    ) -> Result<Self, AlgebraError> {
        let n = parent.size();
        let mut members: Vec<Element> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= n) {
            return Err(AlgebraError::ElementOutOfRange { element: bad, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { parent, members })
    }

    pub fn full(parent: &'a FiniteStuquandle) -> Self {
        Self {
            parent,
            members: parent.elements().collect(),
        }
    }

    pub fn parent(&self) -> &'a FiniteStuquandle {
        self.parent
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Closed under `*`, `~*` and `R1..R4`.
    pub fn is_substuquandle(&self) -> bool {
        self.members.iter().all(|&x| {
            self.members
                .iter()
                .all(|&y| Op::ALL.iter().all(|&op| self.contains(self.parent.apply(op, x, y))))
        })
    }

    /// The smallest superset closed under all operations.
    pub fn closure(&self) -> Subset<'a> {
        let x = self.parent;
        let mut inside = vec![false; x.size()];
        let mut members = Vec::with_capacity(x.size());
        for &m in &self.members {
            inside[m] = true;
            members.push(m);
        }
        // every pair (i, j) with max(i, j) < done has been expanded
        let mut done = 0;
        while done < members.len() {
            let new = members[done];
            let mut k = 0;
            while k <= done {
                let old = members[k];
                for op in Op::ALL {
                    for v in [x.apply(op, new, old), x.apply(op, old, new)] {
                        if !inside[v] {
                            inside[v] = true;
                            members.push(v);
                        }
                    }
                }
                k += 1;
            }
            done += 1;
        }
        members.sort_unstable();
        Subset {
            parent: x,
            members,
        }
    }
}

impl fmt::Display for Subset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

pub fn is_substuquandle(s: &Subset<'_>) -> bool {
    s.is_substuquandle()
}

pub fn substuquandle_closure<'a>(s: &Subset<'a>) -> Subset<'a> {
    s.closure()
}

/// Whether `f` (given as the list of images of `0..|X|`) preserves `*` and `R1..R4`.
pub fn is_homomorphism(f: &[Element], x: &FiniteStuquandle, y: &FiniteStuquandle) -> bool {
    if f.len() != x.size() || f.iter().any(|&v| v >= y.size()) {
        return false;
    }
    x.elements().all(|a| {
        x.elements().all(|b| {
            Op::PRIMARY
                .iter()
                .all(|&op| f[x.apply(op, a, b)] == y.apply(op, f[a], f[b]))
        })
    })
}

/// Search for an isomorphism `X -> Y`, returned as the image list of `0..|X|`.
///
/// Candidates for each element are restricted to elements of `Y` with the
/// same profile, which every isomorphism preserves.
pub fn is_isomorphic(x: &FiniteStuquandle, y: &FiniteStuquandle) -> Option<Vec<Element>> {
    let n = x.size();
    if n != y.size() {
        return None;
    }
    let px: Vec<_> = x.elements().map(|e| element_profile(x, e)).collect();
    let py: Vec<_> = y.elements().map(|e| element_profile(y, e)).collect();
    let (mut sx, mut sy) = (px.clone(), py.clone());
    sx.sort_unstable();
    sy.sort_unstable();
    if sx != sy {
        return None;
    }
    let candidates: Vec<Vec<Element>> = px
        .iter()
        .map(|p| y.elements().filter(|&e| py[e] == *p).collect())
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_isomorphism(x, y, &candidates, 0, &mut map, &mut used) {
        debug_assert!(is_homomorphism(&map, x, y));
        Some(map)
    } else {
        None
    }
}

fn extend_isomorphism(
    x: &FiniteStuquandle,
    y: &FiniteStuquandle,
    candidates: &[Vec<Element>],
    k: Element,
    map: &mut [Element],
    used: &mut [bool],
) -> bool {
    if k == map.len() {
        return true;
    }
    for &image in &candidates[k] {
        if used[image] {
            continue;
        }
        map[k] = image;
        used[image] = true;
        if consistent_through(x, y, k, map) && extend_isomorphism(x, y, candidates, k + 1, map, used) {
            return true;
        }
        used[image] = false;
    }
    map[k] = usize::MAX;
    false
}

/// Check every equation `f(a op b) = f(a) op f(b)` whose three elements are
/// all `<= k` and at least one of them equals `k`.
fn consistent_through(x: &FiniteStuquandle, y: &FiniteStuquandle, k: Element, map: &[Element]) -> bool {
    for a in 0..=k {
        for b in 0..=k {
            for op in Op::PRIMARY {
                let r = x.apply(op, a, b);
                if r > k || (a != k && b != k && r != k) {
                    continue;
                }
                if map[r] != y.apply(op, map[a], map[b]) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex71() -> FiniteStuquandle {
        FiniteStuquandle::from_fns(
            4,
            |x, y| (3 * x + 2 * y) % 4,
            |x, y| (x + 2 * y * y) % 4,
            |x, y| (2 * x * x + y) % 4,
            |x, _| (3 * x) % 4,
            |x, y| (2 * x + y) % 4,
        )
        .unwrap()
    }

    fn x1() -> FiniteStuquandle {
        FiniteStuquandle::from_fns(
            4,
            |x, y| (3 * x + 2 * y) % 4,
            |x, y| (2 * x + 3 * y) % 4,
            |x, _| x,
            |x, y| (3 * x + 2 * y) % 4,
            |_, y| y,
        )
        .unwrap()
    }

    fn x2() -> FiniteStuquandle {
        FiniteStuquandle::from_fns(4, |x, _| x, |_, y| y, |x, _| x, |_, y| y, |x, _| x).unwrap()
    }

    #[test]
    fn example_71_tables_validate() {
        let x = ex71();
        assert_eq!(x.size(), 4);
        assert_eq!(x.table(Op::R3).rows().next().unwrap(), &[0, 0, 0, 0]);
    }

    #[test]
    fn singleton_is_valid() {
        let x = FiniteStuquandle::singleton();
        assert_eq!(x.size(), 1);
        assert_eq!(x.apply(Op::StarInv, 0, 0), 0);
    }

    #[test]
    fn shift_breaks_idempotency_first() {
        let shift = OperationTable::from_fn(4, |x, _| (x + 1) % 4).unwrap();
        let proj = OperationTable::from_fn(4, |x, _| x).unwrap();
        let err = FiniteStuquandle::new(shift, proj.clone(), proj.clone(), proj.clone(), proj).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::AxiomViolation {
                axiom: Axiom::QuandleIII,
                witness: [0, 0, 0]
            }
        );
    }

    #[test]
    fn non_bijective_column_is_reported() {
        let star = OperationTable::from_rows(&[vec![0, 0], vec![1, 0]]).unwrap();
        let proj = OperationTable::from_fn(2, |x, _| x).unwrap();
        let err = FiniteStuquandle::new(star, proj.clone(), proj.clone(), proj.clone(), proj).unwrap_err();
        assert_eq!(err, AlgebraError::NonBijectiveColumn(1));
    }

    #[test]
    fn table_shape_errors() {
        assert_eq!(
            OperationTable::new(2, vec![0, 1, 1]).unwrap_err(),
            AlgebraError::TableShape { expected: 4, found: 3 }
        );
        assert!(matches!(
            OperationTable::new(2, vec![0, 1, 2, 0]).unwrap_err(),
            AlgebraError::EntryOutOfRange { row: 1, col: 0, value: 2, n: 2 }
        ));
        assert_eq!(OperationTable::new(0, vec![]).unwrap_err(), AlgebraError::EmptyCarrier);
    }

    #[test]
    fn affine_matches_x1_entrywise() {
        // expanding each affine formula mod 4 with a=3, b=2, e=2
        let x = affine_stuquandle(&AffineParams { n: 4, a: 3, b: 2, e: 2 }).unwrap();
        assert_eq!(x, x1());
    }

    #[test]
    fn affine_identity_parameters() {
        let x = affine_stuquandle(&AffineParams { n: 5, a: 1, b: 0, e: 0 }).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(x.apply(Op::Star, a, b), a);
                assert_eq!(x.apply(Op::R1, a, b), b);
                assert_eq!(x.apply(Op::R2, a, b), a);
                assert_eq!(x.apply(Op::R3, a, b), a);
                assert_eq!(x.apply(Op::R4, a, b), b);
            }
        }
    }

    #[test]
    fn affine_rejects_non_unit() {
        assert_eq!(
            affine_stuquandle(&AffineParams { n: 4, a: 2, b: 0, e: 0 }).unwrap_err(),
            AlgebraError::NonUnit { value: 2, modulus: 4 }
        );
    }

    #[test]
    fn alexander_reduces_to_affine() {
        let p = AlexanderParams { n: 4, t: 3, v: 0, a: 2, b: 0, c: 0, d: 2, e: 0, f: 0 };
        assert_eq!(p.alpha_positive().rem_euclid(4), 2);
        assert_eq!(p.alpha_negative().rem_euclid(4), 2);
        assert_eq!(alexander_stuquandle(&p).unwrap(), x1());

        let trivial = AlexanderParams { n: 3, t: 1, v: 0, a: 0, b: 0, c: 0, d: 0, e: 0, f: 0 };
        assert_eq!(alexander_stuquandle(&trivial).unwrap().size(), 3);

        let bad = AlexanderParams { n: 6, t: 2, v: 1, a: 1, b: 1, c: 1, d: 1, e: 1, f: 1 };
        assert_eq!(
            alexander_stuquandle(&bad).unwrap_err(),
            AlgebraError::NonUnit { value: 2, modulus: 6 }
        );
    }

    #[test]
    fn alexander_matches_affine_substitution_everywhere() {
        for n in 2..=6usize {
            for t in (1..n as i64).filter(|&t| gcd(t, n as i64) == 1) {
                for v in 0..n as i64 {
                    let p = AlexanderParams { n, t, v, a: 1, b: 2, c: 1, d: 0, e: 1, f: 2 };
                    let alex = alexander_stuquandle(&p).unwrap();
                    let aff = affine_stuquandle(&AffineParams {
                        n,
                        a: t,
                        b: p.alpha_positive(),
                        e: p.alpha_negative(),
                    })
                    .unwrap();
                    assert_eq!(alex, aff, "n={n} t={t} v={v}");
                }
            }
        }
    }

    #[test]
    fn substuquandle_checks() {
        let x = x1();
        assert!(Subset::new(&x, [1, 3]).unwrap().is_substuquandle());
        assert!(Subset::full(&x).is_substuquandle());
        let y = ex71();
        assert!(!Subset::new(&y, [1]).unwrap().is_substuquandle());
        assert!(Subset::new(&y, [9]).is_err());
    }

    #[test]
    fn closure_examples() {
        let y = ex71();
        let c = Subset::new(&y, [1]).unwrap().closure();
        // R3(1,1) = 3; then R1(1,3) = 1 + 18 = 3, R2(3,1) = 19 = 3, R1(3,1) = 5 = 1 ...
        assert!(c.contains(1) && c.contains(3));
        assert!(c.is_substuquandle());
        assert_eq!(c.members(), &[1, 3]);

        let x = x1();
        let s = Subset::new(&x, [1, 3]).unwrap();
        assert_eq!(s.closure(), s);

        let z = FiniteStuquandle::from_fns(3, |x, _| x, |_, y| y, |x, _| x, |_, y| y, |x, _| x).unwrap();
        assert_eq!(Subset::new(&z, [0]).unwrap().closure().members(), &[0]);
    }

    #[test]
    fn homomorphism_checks() {
        let x = ex71();
        let id: Vec<_> = x.elements().collect();
        assert!(is_homomorphism(&id, &x, &x));

        let one = FiniteStuquandle::singleton();
        assert!(is_homomorphism(&[0, 0, 0, 0], &x, &one));

        let mut bent = id.clone();
        bent[1] = 3;
        assert!(!is_homomorphism(&bent, &x, &x));
        assert!(!is_homomorphism(&[0, 1], &x, &x));
    }

    #[test]
    fn isomorphism_search() {
        let x = x1();
        assert_eq!(is_isomorphic(&x, &x), Some(vec![0, 1, 2, 3]));
        assert_eq!(is_isomorphic(&x1(), &x2()), None);
        assert_eq!(is_isomorphic(&x, &FiniteStuquandle::singleton()), None);

        let y = ex71();
        let sigma = [2, 0, 3, 1];
        let relabeled = y.relabel(&sigma).unwrap();
        let w = is_isomorphic(&y, &relabeled).expect("relabeling is an isomorphism");
        assert!(is_homomorphism(&w, &y, &relabeled));
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        assert!(x1().relabel(&[0, 0, 1, 2]).is_err());
        assert!(x1().relabel(&[0, 1]).is_err());
    }

    #[test]
    fn op_round_trips_through_text() {
        for op in Op::ALL {
            assert_eq!(op.symbol().parse::<Op>().unwrap(), op);
        }
        assert!("R5".parse::<Op>().is_err());
    }
}
