//! Stuck-link presentations, crossing diagrams, colorings by finite
//! stuquandles and the invariants built on them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Element, FiniteStuquandle, Op, Subset};
use crate::polynomial::{sstqp_unchecked, PhiMultiset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("{what} index {index} out of range (count {bound})")]
    IndexOutOfRange { what: &'static str, index: usize, bound: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// `out = op(lhs, rhs)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub out: usize,
    pub op: Op,
    pub lhs: usize,
    pub rhs: usize,
}

impl Relation {
    pub fn new(out: usize, op: Op, lhs: usize, rhs: usize) -> Self {
        Self { out, op, lhs, rhs }
    }

    pub fn holds(&self, x: &FiniteStuquandle, values: &[Element]) -> bool {
        values[self.out] == x.apply(self.op, values[self.lhs], values[self.rhs])
    }
}

/// Finitely presented stuquandle: named generators and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    generator_names: Vec<String>,
    relations: Vec<Relation>,
}

/// `a, b, .., z, g26, g27, ..`
pub fn default_generator_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

impl Presentation {
    pub fn new(name: impl Into<String>, generator_count: usize, relations: Vec<Relation>) -> Result<Self, PresentationError> {
        let names = (0..generator_count).map(default_generator_name).collect();
        Self::with_names(name, names, relations)
    }

    pub fn with_names(
        name: impl Into<String>,
        generator_names: Vec<String>,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for n in &generator_names {
            if !seen.insert(n.as_str()) {
                return Err(PresentationError::DuplicateName(n.clone()));
            }
        }
        let bound = generator_names.len();
        for r in &relations {
            for index in [r.out, r.lhs, r.rhs] {
                if index >= bound {
                    return Err(PresentationError::IndexOutOfRange { what: "generator", index, bound });
                }
            }
        }
        Ok(Self { name: name.into(), generator_names, relations })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// New generator `i` is old generator `order[i]`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self, PresentationError> {
        let g = self.generator_count();
        let mut new_index = vec![usize::MAX; g];
        for (i, &old) in order.iter().enumerate() {
            if old >= g {
                return Err(PresentationError::IndexOutOfRange { what: "generator", index: old, bound: g });
            }
            new_index[old] = i;
        }
        if order.len() != g || new_index.contains(&usize::MAX) {
            return Err(PresentationError::IndexOutOfRange { what: "permutation", index: order.len(), bound: g });
        }
        let names = order.iter().map(|&o| self.generator_names[o].clone()).collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation::new(new_index[r.out], r.op, new_index[r.lhs], new_index[r.rhs]))
            .collect();
        Self::with_names(self.name.clone(), names, relations)
    }

    /// Generators ordered by name; relation order is kept.
    pub fn sorted_by_name(&self) -> Self {
        let mut order: Vec<usize> = (0..self.generator_count()).collect();
        order.sort_by(|&a, &b| self.generator_names[a].cmp(&self.generator_names[b]));
        self.reorder(&order).expect("sorting yields a permutation")
    }

    pub fn relation_text(&self, r: &Relation) -> String {
        let n = |i: usize| self.generator_names[i].as_str();
        if r.op.is_infix() {
            format!("{} = {} {} {}", n(r.out), n(r.lhs), r.op.symbol(), n(r.rhs))
        } else {
            format!("{} = {}({}, {})", n(r.out), r.op.symbol(), n(r.lhs), n(r.rhs))
        }
    }

    /// Text form: optional `name:` line, a `generators:` line, then one
    /// relation per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.name.is_empty() {
            s.push_str(&format!("name: {}\n", self.name));
        }
        s.push_str(&format!("generators: {}\n", self.generator_names.join(", ")));
        for r in &self.relations {
            s.push_str(&self.relation_text(r));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self, PresentationError> {
        let mut name = String::new();
        let mut names: Option<Vec<String>> = None;
        let mut rels: Vec<(usize, String, Op, String, String)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("name:") {
                name = rest.trim().to_string();
            } else if let Some(rest) = line.strip_prefix("generators:") {
                let list: Vec<String> = rest
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                names = Some(list);
            } else {
                let (out, op, lhs, rhs) =
                    parse_relation(line).map_err(|reason| PresentationError::Parse { line: line_no, reason })?;
                rels.push((line_no, out, op, lhs, rhs));
            }
        }
        let names = names.ok_or(PresentationError::Parse { line: 0, reason: "missing `generators:` line".into() })?;
        let lookup = |s: &str| -> Result<usize, PresentationError> {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| PresentationError::UnknownGenerator(s.to_string()))
        };
        let mut relations = Vec::with_capacity(rels.len());
        for (_, out, op, lhs, rhs) in &rels {
            relations.push(Relation::new(lookup(out)?, *op, lookup(lhs)?, lookup(rhs)?));
        }
        Self::with_names(name, names, relations)
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_relation(line: &str) -> Result<(String, Op, String, String), String> {
    let (out, rhs) = line.split_once('=').ok_or("expected `=`")?;
    let out = out.trim();
    let rhs = rhs.trim();
    if !is_ident(out) {
        return Err(format!("bad generator `{out}`"));
    }
    let (op, a, b) = if let Some(open) = rhs.find('(') {
        let op: Op = rhs[..open].trim().parse()?;
        let args = rhs[open + 1..].strip_suffix(')').ok_or("expected `)`")?;
        let (a, b) = args.split_once(',').ok_or("expected two arguments")?;
        (op, a.trim(), b.trim())
    } else {
        let parts: Vec<&str> = rhs.split_whitespace().collect();
        match parts.as_slice() {
            [a, op, b] => (op.parse::<Op>()?, *a, *b),
            _ => return Err(format!("cannot read `{rhs}`")),
        }
    };
    if !op.is_infix() && rhs.find('(').is_none() {
        return Err(format!("{op} must be written in function form"));
    }
    for g in [a, b] {
        if !is_ident(g) {
            return Err(format!("bad generator `{g}`"));
        }
    }
    Ok((out.to_string(), op, a.to_string(), b.to_string()))
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_text(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "pos" | "positive" => Ok(Sign::Positive),
            "-" | "neg" | "negative" => Ok(Sign::Negative),
            other => Err(format!("unknown sign `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Crossing {
    Classical { sign: Sign, over: usize, under_in: usize, under_out: usize },
    Stuck { sign: Sign, in1: usize, in2: usize, out1: usize, out2: usize },
}

impl Crossing {
    fn arcs(&self) -> Vec<usize> {
        match *self {
            Crossing::Classical { over, under_in, under_out, .. } => vec![over, under_in, under_out],
            Crossing::Stuck { in1, in2, out1, out2, .. } => vec![in1, in2, out1, out2],
        }
    }

    fn map_arcs(&self, f: impl Fn(usize) -> usize) -> Self {
        match *self {
            Crossing::Classical { sign, over, under_in, under_out } => Crossing::Classical {
                sign,
                over: f(over),
                under_in: f(under_in),
                under_out: f(under_out),
            },
            Crossing::Stuck { sign, in1, in2, out1, out2 } => Crossing::Stuck {
                sign,
                in1: f(in1),
                in2: f(in2),
                out1: f(out1),
                out2: f(out2),
            },
        }
    }
}

/// First and last arc of an open strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrandEnds {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingDiagram {
    #[serde(default)]
    pub name: String,
    pub arc_count: usize,
    pub crossings: Vec<Crossing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub open_ends: Vec<StrandEnds>,
}

impl CrossingDiagram {
    pub fn new(name: impl Into<String>, arc_count: usize, crossings: Vec<Crossing>) -> Result<Self, PresentationError> {
        let d = Self { name: name.into(), arc_count, crossings, arc_names: None, open_ends: Vec::new() };
        d.validate()?;
        Ok(d)
    }

    pub fn with_arc_names(mut self, names: Vec<String>) -> Result<Self, PresentationError> {
        self.arc_names = Some(names);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        let bound = self.arc_count;
        let check = |index: usize| {
            if index >= bound {
                Err(PresentationError::IndexOutOfRange { what: "arc", index, bound })
            } else {
                Ok(())
            }
        };
        for c in &self.crossings {
            for a in c.arcs() {
                check(a)?;
            }
        }
        for e in &self.open_ends {
            check(e.start)?;
            check(e.end)?;
        }
        if let Some(names) = &self.arc_names {
            if names.len() != bound {
                return Err(PresentationError::IndexOutOfRange { what: "arc name", index: names.len(), bound });
            }
        }
        Ok(())
    }
}

/// Classical `(+, o, ui, uo)` gives `uo = ui * o`, `(-, ..)` gives
/// `uo = ui ~* o`; stuck `(+, i1, i2, o1, o2)` gives `o1 = R1(i1, i2)`,
/// `o2 = R2(i1, i2)` and the negative sign uses `R3`, `R4`.
pub fn compile(d: &CrossingDiagram) -> Result<Presentation, PresentationError> {
    d.validate()?;
    let mut relations = Vec::new();
    for c in &d.crossings {
        match *c {
            Crossing::Classical { sign, over, under_in, under_out } => {
                let op = match sign {
                    Sign::Positive => Op::Star,
                    Sign::Negative => Op::StarInv,
                };
                relations.push(Relation::new(under_out, op, under_in, over));
            }
            Crossing::Stuck { sign, in1, in2, out1, out2 } => {
                let (p, q) = match sign {
                    Sign::Positive => (Op::R1, Op::R2),
                    Sign::Negative => (Op::R3, Op::R4),
                };
                relations.push(Relation::new(out1, p, in1, in2));
                relations.push(Relation::new(out2, q, in1, in2));
            }
        }
    }
    match &d.arc_names {
        Some(names) => Presentation::with_names(d.name.clone(), names.clone(), relations),
        None => Presentation::new(d.name.clone(), d.arc_count, relations),
    }
}

/// Inserts a one-crossing kink at the terminal end of `arc`: the crossing
/// that consumed `arc` (or the strand end) now takes the new arc `x'`, with
/// `x' = x * x` (positive) or `x' = x ~* x` (negative).
pub fn add_kink(d: &CrossingDiagram, arc: usize, sign: Sign) -> Result<CrossingDiagram, PresentationError> {
    d.validate()?;
    if arc >= d.arc_count {
        return Err(PresentationError::IndexOutOfRange { what: "arc", index: arc, bound: d.arc_count });
    }
    let new = d.arc_count;
    let mut out = d.clone();
    out.arc_count += 1;
    if let Some(names) = &mut out.arc_names {
        let mut candidate = format!("{}'", names[arc]);
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        names.push(candidate);
    }
    if let Some(e) = out.open_ends.iter_mut().find(|e| e.end == arc) {
        e.end = new;
    } else {
        for c in out.crossings.iter_mut() {
            let hit = match c {
                Crossing::Classical { under_in, .. } if *under_in == arc => {
                    *under_in = new;
                    true
                }
                Crossing::Stuck { in1, .. } if *in1 == arc => {
                    *in1 = new;
                    true
                }
                Crossing::Stuck { in2, .. } if *in2 == arc => {
                    *in2 = new;
                    true
                }
                _ => false,
            };
            if hit {
                break;
            }
        }
    }
    out.crossings.push(Crossing::Classical { sign, over: arc, under_in: arc, under_out: new });
    Ok(out)
}

/// Identifies the two arcs of each pair, keeping the smaller index, and
/// renumbers the survivors in increasing order.
pub(crate) fn merge_arcs(d: &CrossingDiagram, pairs: &[(usize, usize)]) -> CrossingDiagram {
    let mut parent: Vec<usize> = (0..d.arc_count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    let roots: Vec<usize> = (0..d.arc_count).map(|x| find(&mut parent, x)).collect();
    let mut index = vec![usize::MAX; d.arc_count];
    let mut next = 0;
    for x in 0..d.arc_count {
        if roots[x] == x {
            index[x] = next;
            next += 1;
        }
    }
    let map = |x: usize| index[roots[x]];
    CrossingDiagram {
        name: d.name.clone(),
        arc_count: next,
        crossings: d.crossings.iter().map(|c| c.map_arcs(map)).collect(),
        arc_names: d
            .arc_names
            .as_ref()
            .map(|names| (0..d.arc_count).filter(|&x| roots[x] == x).map(|x| names[x].clone()).collect()),
        open_ends: Vec::new(),
    }
}

/// Generator assignment satisfying every relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<Element>);

impl Coloring {
    pub fn values(&self) -> &[Element] {
        &self.0
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// `{(0,0),(0,2)}`
pub fn render_colorings(colorings: &[Coloring]) -> String {
    let inner: Vec<String> = colorings.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

struct Search<'a> {
    p: &'a Presentation,
    x: &'a FiniteStuquandle,
}

impl Search<'_> {
    /// Fills in every value forced by the relations; false on contradiction.
    fn propagate(&self, vals: &mut [Option<Element>]) -> bool {
        loop {
            let mut changed = false;
            for r in self.p.relations() {
                match (vals[r.lhs], vals[r.rhs], vals[r.out]) {
                    (Some(l), Some(rr), o) => {
                        let v = self.x.apply(r.op, l, rr);
                        match o {
                            Some(o) if o != v => return false,
                            Some(_) => {}
                            None => {
                                vals[r.out] = Some(v);
                                changed = true;
                            }
                        }
                    }
                    // out = l * r  <=>  l = out ~* r, and dually
                    (None, Some(rr), Some(o)) if r.op.is_infix() => {
                        let back = if r.op == Op::Star { Op::StarInv } else { Op::Star };
                        vals[r.lhs] = Some(self.x.apply(back, o, rr));
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&self, mut vals: Vec<Option<Element>>, acc: &mut Vec<Coloring>) {
        if !self.propagate(&mut vals) {
            return;
        }
        match vals.iter().position(Option::is_none) {
            None => {
                let c: Vec<Element> = vals.into_iter().map(|v| v.unwrap()).collect();
                debug_assert!(self.p.relations().iter().all(|r| r.holds(self.x, &c)));
                acc.push(Coloring(c));
            }
            Some(g) => {
                for v in self.x.elements() {
                    let mut next = vals.clone();
                    next[g] = Some(v);
                    self.run(next, acc);
                }
            }
        }
    }
}

/// All colorings in lexicographic order.
pub fn enumerate_colorings(p: &Presentation, x: &FiniteStuquandle) -> Vec<Coloring> {
    let mut acc = Vec::new();
    Search { p, x }.run(vec![None; p.generator_count()], &mut acc);
    acc
}

/// Same output as [`enumerate_colorings`]; the value of the first generator
/// is split across up to `jobs` threads.
pub fn enumerate_colorings_jobs(p: &Presentation, x: &FiniteStuquandle, jobs: usize) -> Vec<Coloring> {
    let g = p.generator_count();
    if jobs <= 1 || g == 0 || x.size() < 2 {
        return enumerate_colorings(p, x);
    }
    let n = x.size();
    let workers = jobs.min(n);
    let search = Search { p, x };
    let mut parts: Vec<Vec<Coloring>> = vec![Vec::new(); n];
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let search = &search;
                s.spawn(move || {
                    (w..n)
                        .step_by(workers)
                        .map(|v| {
                            let mut vals = vec![None; g];
                            vals[0] = Some(v);
                            let mut acc = Vec::new();
                            search.run(vals, &mut acc);
                            (v, acc)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (v, acc) in h.join().expect("coloring worker panicked") {
                parts[v] = acc;
            }
        }
    });
    parts.into_iter().flatten().collect()
}

pub fn counting_invariant(p: &Presentation, x: &FiniteStuquandle) -> usize {
    enumerate_colorings(p, x).len()
}

/// Closure of the assigned values: the image of the induced homomorphism.
pub fn coloring_image<'a>(c: &Coloring, x: &'a FiniteStuquandle) -> Subset<'a> {
    Subset::new(x, c.0.iter().copied())
        .expect("coloring values lie in the carrier")
        .closure()
}

pub fn phi_of_colorings(colorings: &[Coloring], x: &FiniteStuquandle) -> PhiMultiset {
    let mut cache: HashMap<Vec<Element>, crate::polynomial::Polynomial10> = HashMap::new();
    let mut m = PhiMultiset::new();
    for c in colorings {
        let image = coloring_image(c, x);
        let p = cache
            .entry(image.members().to_vec())
            .or_insert_with(|| sstqp_unchecked(&image))
            .clone();
        m.insert(p);
    }
    m
}

pub fn phi_invariant(p: &Presentation, x: &FiniteStuquandle) -> PhiMultiset {
    phi_of_colorings(&enumerate_colorings(p, x), x)
}

pub fn phi_invariant_jobs(p: &Presentation, x: &FiniteStuquandle, jobs: usize) -> PhiMultiset {
    phi_of_colorings(&enumerate_colorings_jobs(p, x, jobs), x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinguished,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "DISTINGUISHED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub names: [String; 2],
    pub counting: [usize; 2],
    pub phi: [String; 2],
    pub verdict: Verdict,
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..2 {
            let name = if self.names[i].is_empty() { format!("#{}", i + 1) } else { self.names[i].clone() };
            writeln!(f, "{name}: counting = {}", self.counting[i])?;
            writeln!(f, "{name}: phi = {}", self.phi[i])?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

pub fn compare(p1: &Presentation, p2: &Presentation, x: &FiniteStuquandle) -> CompareReport {
    compare_jobs(p1, p2, x, 1)
}

pub fn compare_jobs(p1: &Presentation, p2: &Presentation, x: &FiniteStuquandle, jobs: usize) -> CompareReport {
    let a = phi_invariant_jobs(p1, x, jobs);
    let b = phi_invariant_jobs(p2, x, jobs);
    CompareReport {
        names: [p1.name().to_string(), p2.name().to_string()],
        counting: [a.total(), b.total()],
        verdict: if a == b { Verdict::Inconclusive } else { Verdict::Distinguished },
        phi: [a.to_string(), b.to_string()],
    }
}
