//! Exact sparse polynomials, element profiles and the stuquandle,
//! substuquandle and quandle polynomials.
//!
//! Variable `i = 1..5` is tied to the operation `*, R1, R2, R3, R4` in that
//! order; exponents of `s_i` count the `R^i` sets and exponents of `t_i`
//! count the `C^i` sets. Coefficients are `i64` throughout.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{verify_quandle, AlgebraError, Element, FiniteStuquandle, Op, OperationTable, Subset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolynomialError {
    #[error("subset {0} is not closed under the stuquandle operations")]
    NotClosed(String),
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

const PROFILE_OPS: [Op; 5] = [Op::Star, Op::R1, Op::R2, Op::R3, Op::R4];

/// `r[i]` = |R^{i+1}(x)| and `c[i]` = |C^{i+1}(x)|.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementProfile {
    pub r: [usize; 5],
    pub c: [usize; 5],
}

impl ElementProfile {
    pub fn monomial(&self) -> Monomial10 {
        let mut exps = [0u32; 10];
        for i in 0..5 {
            exps[2 * i] = self.r[i] as u32;
            exps[2 * i + 1] = self.c[i] as u32;
        }
        Monomial(exps)
    }
}

/// Rendered as `(r1,c1) (r2,c2) (r3,c3) (r4,c4) (r5,c5)`.
impl fmt::Display for ElementProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..5 {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({},{})", self.r[i], self.c[i])?;
        }
        Ok(())
    }
}

/// Counts, for each of `*, R1..R4`, the `y` acting trivially on `x`
/// (`x op y = x`) and the `y` that `x` acts trivially on (`y op x = y`).
pub fn element_profile(x: &FiniteStuquandle, e: Element) -> ElementProfile {
    let mut r = [0; 5];
    let mut c = [0; 5];
    for (i, op) in PROFILE_OPS.into_iter().enumerate() {
        let t = x.table(op);
        r[i] = x.elements().filter(|&y| t.get(e, y) == e).count();
        c[i] = x.elements().filter(|&y| t.get(y, e) == y).count();
    }
    ElementProfile { r, c }
}

pub fn element_profiles(x: &FiniteStuquandle) -> Vec<ElementProfile> {
    x.elements().map(|e| element_profile(x, e)).collect()
}

/// Exponent vector; ordering is lexicographic on the exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial<const N: usize>(pub [u32; N]);

pub type Monomial10 = Monomial<10>;

impl<const N: usize> Monomial<N> {
    pub fn one() -> Self {
        Monomial([0; N])
    }

    pub fn exponents(&self) -> &[u32; N] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

fn var_name(n: usize, i: usize) -> String {
    if n == 2 {
        ["s", "t"][i].to_string()
    } else {
        format!("{}{}", if i.is_multiple_of(2) { "s" } else { "t" }, i / 2 + 1)
    }
}

impl<const N: usize> fmt::Display for Monomial<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(N, i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with integer coefficients in `N` variables.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality. Canonical term order is descending on exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial<const N: usize> {
    terms: BTreeMap<Monomial<N>, i64>,
}

/// Polynomials in `s1, t1, .., s5, t5`.
pub type Polynomial10 = Polynomial<10>;

/// Polynomials in `s, t`.
pub type QuandlePolynomial = Polynomial<2>;

impl<const N: usize> Polynomial<N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn from_monomial(m: Monomial<N>, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn add_term(&mut self, m: Monomial<N>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(m).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial<N>) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<N>, i64)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn evaluate(&self, point: &[i64; N]) -> i64 {
        self.terms
            .iter()
            .map(|(m, &c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c, |acc, (&e, &v)| acc * v.pow(e))
            })
            .sum()
    }

    /// Value at `(1, .., 1)`, i.e. the sum of the coefficients.
    pub fn evaluate_at_ones(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl<const N: usize> AddAssign<&Polynomial<N>> for Polynomial<N> {
    fn add_assign(&mut self, rhs: &Polynomial<N>) {
        for (m, &c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl<const N: usize> Add<&Polynomial<N>> for Polynomial<N> {
    type Output = Polynomial<N>;

    fn add(mut self, rhs: &Polynomial<N>) -> Self::Output {
        self += rhs;
        self
    }
}

impl<const N: usize> Sub<&Polynomial<N>> for Polynomial<N> {
    type Output = Polynomial<N>;

    fn sub(mut self, rhs: &Polynomial<N>) -> Self::Output {
        for (m, &c) in &rhs.terms {
            self.add_term(*m, -c);
        }
        self
    }
}

impl<const N: usize> Neg for Polynomial<N> {
    type Output = Polynomial<N>;

    fn neg(self) -> Self::Output {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<const N: usize> FromIterator<Monomial<N>> for Polynomial<N> {
    fn from_iter<I: IntoIterator<Item = Monomial<N>>>(iter: I) -> Self {
        let mut p = Self::zero();
        for m in iter {
            p.add_term(m, 1);
        }
        p
    }
}

/// Canonical text: e.g. `4*s1^2*t1^2*s2*t2`, `0` for the zero polynomial.
impl<const N: usize> fmt::Display for Polynomial<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.unsigned_abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<const N: usize> FromStr for Polynomial<N> {
    type Err = PolynomialError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| PolynomialError::Parse {
            input: input.to_string(),
            reason,
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input".into()));
        }
        let names: Vec<String> = (0..N).map(|i| var_name(N, i)).collect();

        // split into signed terms
        let mut pieces: Vec<(i64, &str)> = Vec::new();
        let mut sign = 1;
        let mut start = 0;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if b == b'+' || b == b'-' {
                if i > start {
                    pieces.push((sign, &compact[start..i]));
                } else if i > 0 {
                    return Err(err("dangling sign".into()));
                }
                sign = if b == b'-' { -1 } else { 1 };
                start = i + 1;
            }
        }
        if start >= compact.len() {
            return Err(err("missing term".into()));
        }
        pieces.push((sign, &compact[start..]));

        let mut poly = Self::zero();
        for (sign, term) in pieces {
            let mut coeff: i64 = 1;
            let mut exps = [0u32; N];
            for (k, factor) in term.split('*').enumerate() {
                if factor.is_empty() {
                    return Err(err(format!("empty factor in `{term}`")));
                }
                if factor.bytes().all(|b| b.is_ascii_digit()) {
                    if k != 0 {
                        return Err(err(format!("coefficient must lead the term `{term}`")));
                    }
                    coeff = factor.parse().map_err(|e| err(format!("{e}")))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((name, exp)) => (name, exp.parse::<u32>().map_err(|e| err(format!("exponent `{exp}`: {e}")))?),
                    None => (factor, 1),
                };
                let idx = names
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| err(format!("unknown variable `{name}`")))?;
                exps[idx] += exp;
            }
            poly.add_term(Monomial(exps), sign * coeff);
        }
        Ok(poly)
    }
}

/// Sum over all elements of `s1^r1 t1^c1 ... s5^r5 t5^c5`.
pub fn stqp(x: &FiniteStuquandle) -> Polynomial10 {
    x.elements().map(|e| element_profile(x, e).monomial()).collect()
}

/// Sum over the members of a substuquandle, with every profile counted in
/// the parent structure.
pub fn sstqp(s: &Subset<'_>) -> Result<Polynomial10, PolynomialError> {
    if !s.is_substuquandle() {
        return Err(PolynomialError::NotClosed(s.to_string()));
    }
    Ok(sstqp_unchecked(s))
}

pub(crate) fn sstqp_unchecked(s: &Subset<'_>) -> Polynomial10 {
    let x = s.parent();
    s.members().iter().map(|&e| element_profile(x, e).monomial()).collect()
}

/// `sum_x s^{r(x)} t^{c(x)}` for a plain finite quandle.
pub fn quandle_polynomial(star: &OperationTable) -> Result<QuandlePolynomial, AlgebraError> {
    verify_quandle(star)?;
    let n = star.size();
    Ok((0..n)
        .map(|x| {
            let r = (0..n).filter(|&y| star.get(x, y) == x).count() as u32;
            let c = (0..n).filter(|&y| star.get(y, x) == y).count() as u32;
            Monomial([r, c])
        })
        .collect())
}

/// A multiset of substuquandle polynomials, keyed by canonical render.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhiMultiset {
    entries: BTreeMap<String, (Polynomial10, usize)>,
}

impl PhiMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: Polynomial10) {
        self.insert_many(p, 1);
    }

    pub fn insert_many(&mut self, p: Polynomial10, multiplicity: usize) {
        if multiplicity == 0 {
            return;
        }
        self.entries
            .entry(p.to_string())
            .or_insert_with(|| (p, 0))
            .1 += multiplicity;
    }

    pub fn multiplicity(&self, p: &Polynomial10) -> usize {
        self.entries.get(&p.to_string()).map_or(0, |e| e.1)
    }

    /// Total multiplicity (the number of colorings summarised).
    pub fn total(&self) -> usize {
        self.entries.values().map(|e| e.1).sum()
    }

    /// Number of distinct polynomials.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by the canonical render of their polynomial.
    pub fn iter(&self) -> impl Iterator<Item = (&Polynomial10, usize)> {
        self.entries.values().map(|(p, k)| (p, *k))
    }
}

impl FromIterator<Polynomial10> for PhiMultiset {
    fn from_iter<I: IntoIterator<Item = Polynomial10>>(iter: I) -> Self {
        let mut m = Self::new();
        for p in iter {
            m.insert(p);
        }
        m
    }
}

/// `k1*u^{P1} + k2*u^{P2} + ...`, or `0` when empty.
impl fmt::Display for PhiMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (render, (_, k))) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{k}*u^{{{render}}}")?;
        }
        Ok(())
    }
}

pub fn canonical_render<const N: usize>(p: &Polynomial<N>) -> String {
    p.to_string()
}

pub fn phi_render(m: &PhiMultiset) -> String {
    m.to_string()
}
