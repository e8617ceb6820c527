//! Built-in fixtures with their expected values, and the golden sweep that
//! recomputes every expectation.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{FiniteStuquandle, Subset};
use crate::polynomial::{element_profiles, sstqp, stqp};
use crate::presentation::{
    compile, enumerate_colorings, phi_of_colorings, render_colorings, Crossing, CrossingDiagram, Presentation, Sign,
};
use crate::rna::{to_presentation, ArcDiagram, StrandCrossing, Stripe};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Stuquandle,
    Presentation,
    ArcDiagram,
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureKind::Stuquandle => "stuquandle",
            FixtureKind::Presentation => "presentation",
            FixtureKind::ArcDiagram => "arc_diagram",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Stuquandle(FiniteStuquandle),
    Diagram(CrossingDiagram),
    Presentation(Presentation),
    ArcDiagram(ArcDiagram),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Stqp,
    Sstqp,
    Profiles,
    Colorings,
    Counting,
    Phi,
    Presentation,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Stqp => "stqp",
            Operation::Sstqp => "sstqp",
            Operation::Profiles => "profiles",
            Operation::Colorings => "colorings",
            Operation::Counting => "counting",
            Operation::Phi => "phi",
            Operation::Presentation => "presentation",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Operation::Stqp,
            Operation::Sstqp,
            Operation::Profiles,
            Operation::Colorings,
            Operation::Counting,
            Operation::Phi,
            Operation::Presentation,
        ]
        .into_iter()
        .find(|o| o.name() == s)
        .ok_or_else(|| format!("unknown operation `{s}`"))
    }
}

/// `target` is a subset like `1,3` for `sstqp`, a stuquandle fixture id
/// for `colorings`, `counting` and `phi`, and absent otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub operation: Operation,
    pub target: Option<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub id: String,
    pub kind: FixtureKind,
    pub payload: Payload,
    pub expected: Vec<Expectation>,
}

impl Fixture {
    pub fn stuquandle(&self) -> Option<&FiniteStuquandle> {
        match &self.payload {
            Payload::Stuquandle(x) => Some(x),
            _ => None,
        }
    }

    pub fn diagram(&self) -> Option<&CrossingDiagram> {
        match &self.payload {
            Payload::Diagram(d) => Some(d),
            _ => None,
        }
    }

    /// Compiled presentation for diagram, presentation and arc fixtures.
    pub fn presentation(&self) -> Option<Result<Presentation, String>> {
        match &self.payload {
            Payload::Stuquandle(_) => None,
            Payload::Diagram(d) => Some(compile(d).map_err(|e| e.to_string())),
            Payload::Presentation(p) => Some(Ok(p.clone())),
            Payload::ArcDiagram(a) => Some(to_presentation(a).map_err(|e| e.to_string())),
        }
    }

    pub fn expectation(&self, operation: Operation, target: Option<&str>) -> Option<&str> {
        self.expected
            .iter()
            .find(|e| e.operation == operation && e.target.as_deref() == target)
            .map(|e| e.value.as_str())
    }
}

/// One line per element: `x: (r1,c1) (r2,c2) (r3,c3) (r4,c4) (r5,c5)`.
pub fn render_profiles(x: &FiniteStuquandle) -> String {
    element_profiles(x)
        .iter()
        .enumerate()
        .map(|(e, p)| format!("{e}: {p}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub const FIXTURE_IDS: [&str; 12] = [
    "X1_ex63",
    "X2_ex63",
    "X_ex71",
    "X_ex72",
    "X_ex74",
    "unknot",
    "infinity_0_1_k_plus",
    "trefoil_2_1_k_minus",
    "K1_ex72",
    "K2_ex72",
    "rna_K1_ex74",
    "rna_K2_ex74",
];

pub fn list_fixtures() -> Vec<&'static str> {
    FIXTURE_IDS.to_vec()
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_IDS.iter().map(|id| fixture(id).expect("listed fixture exists")).collect()
}

fn exp(operation: Operation, target: Option<&str>, value: impl Into<String>) -> Expectation {
    Expectation { operation, target: target.map(str::to_string), value: value.into() }
}

fn profiles(lines: &[&str]) -> Expectation {
    let body: Vec<String> = lines.iter().enumerate().map(|(e, l)| format!("{e}: {l}")).collect();
    exp(Operation::Profiles, None, body.join("\n"))
}

fn stuquandle_fixture(id: &str, x: FiniteStuquandle, expected: Vec<Expectation>) -> Fixture {
    Fixture { id: id.into(), kind: FixtureKind::Stuquandle, payload: Payload::Stuquandle(x), expected }
}

fn zn(
    n: usize,
    star: fn(usize, usize) -> usize,
    r1: fn(usize, usize) -> usize,
    r2: fn(usize, usize) -> usize,
    r3: fn(usize, usize) -> usize,
    r4: fn(usize, usize) -> usize,
) -> FiniteStuquandle {
    FiniteStuquandle::from_fns(
        n,
        |x, y| star(x, y) % n,
        |x, y| r1(x, y) % n,
        |x, y| r2(x, y) % n,
        |x, y| r3(x, y) % n,
        |x, y| r4(x, y) % n,
    )
    .expect("catalog stuquandle satisfies the axioms")
}

fn diagram_fixture(id: &str, arcs: usize, crossings: Vec<Crossing>, expected: Vec<Expectation>) -> Fixture {
    let d = CrossingDiagram::new(id, arcs, crossings).expect("catalog diagram is well formed");
    Fixture { id: id.into(), kind: FixtureKind::Presentation, payload: Payload::Diagram(d), expected }
}

fn colored(target: &str, colorings: &str, counting: usize, phi: String) -> Vec<Expectation> {
    vec![
        exp(Operation::Colorings, Some(target), colorings),
        exp(Operation::Counting, Some(target), counting.to_string()),
        exp(Operation::Phi, Some(target), phi),
    ]
}

// Exponent polynomials appearing in the phi values.
const P71: &str = "s1^2*t1^2*s2^2*t2^4*s3*t3*s4^4*t4^2*s5*t5";
const P71_ODD: &str = "2*s1^2*t1^2*s2^2*s3*t3*t4^2*s5*t5";
const P72_0: &str = "s1^3*t1^3*s2*t2*s3^3*t3^2*s4^3*t4^2*s5^2*t5";
const P72_1: &str = "s1^3*t1^3*t2*t3^2*s4^3*t4^2*s5*t5";
const P72_2: &str = "s1^3*t1^3*s2^2*t2*s3^3*t3^2*t4^2*t5";
const P74_0: &str = "s1^4*t1^4*s2*t2^2*s3*t3^4*s4^2*t4^4*s5*t5";
const P74_2: &str = "s1^4*t1^4*s2*t2^2*s3*s4^2*t4^4*s5*t5";
const P74_ODD: &str = "s1^4*t1^4*s2*s3*s4^2*s5*t5";

pub fn fixture(id: &str) -> Result<Fixture, CatalogError> {
    use Sign::{Negative as N, Positive as P};
    let stuck = |sign, in1, in2, out1, out2| Crossing::Stuck { sign, in1, in2, out1, out2 };
    let classical = |sign, over, under_in, under_out| Crossing::Classical { sign, over, under_in, under_out };
    let f = match id {
        "X1_ex63" => stuquandle_fixture(
            id,
            zn(4, |x, y| 3 * x + 2 * y, |x, y| 2 * x + 3 * y, |x, _| x, |x, y| 3 * x + 2 * y, |_, y| y),
            vec![
                exp(Operation::Stqp, None, "4*s1^2*t1^2*s2*t2*s3^4*t3^4*s4^2*t4^2*s5*t5"),
                exp(Operation::Sstqp, Some("1,3"), "2*s1^2*t1^2*s2*t2*s3^4*t3^4*s4^2*t4^2*s5*t5"),
                profiles(&["(2,2) (1,1) (4,4) (2,2) (1,1)"; 4]),
            ],
        ),
        "X2_ex63" => stuquandle_fixture(
            id,
            zn(4, |x, _| x, |_, y| y, |x, _| x, |_, y| y, |x, _| x),
            vec![
                exp(Operation::Stqp, None, "4*s1^4*t1^4*s2*t2*s3^4*t3^4*s4*t4*s5^4*t5^4"),
                profiles(&["(4,4) (1,1) (4,4) (1,1) (4,4)"; 4]),
            ],
        ),
        "X_ex71" => stuquandle_fixture(
            id,
            zn(4, |x, y| 3 * x + 2 * y, |x, y| x + 2 * y * y, |x, y| 2 * x * x + y, |x, _| 3 * x, |x, y| 2 * x + y),
            vec![
                exp(Operation::Sstqp, Some("0,2"), format!("2*{P71}")),
                profiles(&[
                    "(2,2) (2,4) (1,1) (4,2) (1,1)",
                    "(2,2) (2,0) (1,1) (0,2) (1,1)",
                    "(2,2) (2,4) (1,1) (4,2) (1,1)",
                    "(2,2) (2,0) (1,1) (0,2) (1,1)",
                ]),
            ],
        ),
        "X_ex72" => stuquandle_fixture(
            id,
            zn(3, |x, _| x, |_, y| 2 * y * y, |x, _| 2 * x * x, |x, _| 2 * x + 2 * x * x, |_, y| 2 * y + 2 * y * y),
            vec![profiles(&[
                "(3,3) (1,1) (3,2) (3,2) (2,1)",
                "(3,3) (0,1) (0,2) (3,2) (1,1)",
                "(3,3) (2,1) (3,2) (0,2) (0,1)",
            ])],
        ),
        "X_ex74" => stuquandle_fixture(
            id,
            zn(4, |x, _| x, |x, y| 3 * x + y, |x, y| x + 3 * y, |x, y| x + 2 * y, |x, y| 2 * x + y),
            vec![profiles(&[
                "(4,4) (1,2) (1,4) (2,4) (1,1)",
                "(4,4) (1,0) (1,0) (2,0) (1,1)",
                "(4,4) (1,2) (1,0) (2,4) (1,1)",
                "(4,4) (1,0) (1,0) (2,0) (1,1)",
            ])],
        ),
        "unknot" => diagram_fixture(
            id,
            1,
            vec![],
            vec![
                exp(Operation::Presentation, None, "name: unknot\ngenerators: a\n"),
                exp(Operation::Counting, Some("X_ex71"), "4"),
                exp(Operation::Counting, Some("X_ex72"), "3"),
            ],
        ),
        "infinity_0_1_k_plus" => diagram_fixture(
            id,
            2,
            vec![stuck(P, 0, 1, 0, 1)],
            colored("X_ex71", "{(0,0),(0,2),(2,0),(2,2)}", 4, format!("2*u^{{2*{P71}}} + 2*u^{{{P71}}}")),
        ),
        "trefoil_2_1_k_minus" => diagram_fixture(id, 4, vec![classical(N, 1, 3, 0), stuck(N, 0, 2, 1, 3), classical(N, 0, 1, 2)], {
            let mut v = vec![exp(
                Operation::Presentation,
                None,
                "name: trefoil_2_1_k_minus\ngenerators: a, b, c, d\na = d ~* b\nb = R3(a, c)\nd = R4(a, c)\nc = b ~* a\n",
            )];
            v.extend(colored(
                "X_ex71",
                "{(0,0,0,0),(1,3,3,1),(2,2,2,2),(3,1,1,3)}",
                4,
                format!("2*u^{{{P71_ODD}}} + 2*u^{{{P71}}}"),
            ));
            v
        }),
        "K1_ex72" => diagram_fixture(
            id,
            4,
            vec![stuck(N, 2, 3, 0, 1), stuck(N, 0, 1, 2, 3)],
            colored(
                "X_ex72",
                "{(0,0,0,0),(0,1,0,1),(1,0,1,0),(1,1,1,1)}",
                4,
                format!("1*u^{{{P72_0}}} + 3*u^{{{P72_2} + {P72_0} + {P72_1}}}"),
            ),
        ),
        "K2_ex72" => diagram_fixture(
            id,
            4,
            vec![stuck(P, 3, 2, 0, 1), stuck(P, 1, 0, 2, 3)],
            colored(
                "X_ex72",
                "{(0,0,0,0),(0,2,0,2),(2,0,2,0),(2,2,2,2)}",
                4,
                format!("1*u^{{{P72_0}}} + 3*u^{{{P72_2} + {P72_0}}}"),
            ),
        ),
        "rna_K1_ex74" => {
            let a = ArcDiagram::new(
                id,
                vec![vec![1, 2, 3, 4]],
                vec![Stripe { strand_a: 0, strand_b: 0, position_a: 1, position_b: 3, sign: N }],
                vec![StrandCrossing { over_strand: 0, over_position: 4, under_strand: 0, under_position: 2, sign: P }],
            )
            .and_then(|a| a.with_labels(vec![vec!["a".into(), "b".into(), "c".into()]]))
            .expect("catalog arc diagram is well formed");
            let mut v = vec![exp(
                Operation::Presentation,
                None,
                "name: rna_K1_ex74\ngenerators: a, b, c\nb = R3(a, c)\na = R4(a, c)\nc = b * a\n",
            )];
            v.extend(colored(
                "X_ex74",
                "{(0,0,0),(1,3,3),(2,2,2),(3,1,1)}",
                4,
                format!("1*u^{{{P74_0}}} + 1*u^{{{P74_0} + {P74_2}}} + 2*u^{{{P74_0} + {P74_2} + 2*{P74_ODD}}}"),
            ));
            Fixture { id: id.into(), kind: FixtureKind::ArcDiagram, payload: Payload::ArcDiagram(a), expected: v }
        }
        "rna_K2_ex74" => {
            let a = ArcDiagram::new(
                id,
                vec![vec![1, 2], vec![1, 2]],
                vec![Stripe { strand_a: 0, strand_b: 1, position_a: 1, position_b: 1, sign: N }],
                vec![StrandCrossing { over_strand: 0, over_position: 2, under_strand: 1, under_position: 2, sign: P }],
            )
            .and_then(|a| a.with_labels(vec![vec!["b".into()], vec!["a".into(), "c".into()]]))
            .expect("catalog arc diagram is well formed");
            let mut v = vec![exp(
                Operation::Presentation,
                None,
                "name: rna_K2_ex74\ngenerators: a, b, c\nb = R3(b, a)\nc = R4(b, a)\na = c * b\n",
            )];
            v.extend(colored(
                "X_ex74",
                "{(0,0,0),(0,2,0),(2,0,2),(2,2,2)}",
                4,
                format!("1*u^{{{P74_0}}} + 3*u^{{{P74_0} + {P74_2}}}"),
            ));
            Fixture { id: id.into(), kind: FixtureKind::ArcDiagram, payload: Payload::ArcDiagram(a), expected: v }
        }
        _ => return Err(CatalogError::UnknownFixture(id.to_string())),
    };
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub fixture: String,
    pub operation: Operation,
    pub target: Option<String>,
    pub expected: String,
    pub actual: Result<String, String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.actual.as_deref() == Ok(self.expected.as_str())
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.fixture, self.operation)?;
        if let Some(t) = &self.target {
            write!(f, " [{t}]")?;
        }
        if !self.passed() {
            match &self.actual {
                Ok(a) => write!(f, "\n  expected: {:?}\n  actual:   {a:?}", self.expected)?,
                Err(e) => write!(f, "\n  error: {e}")?,
            }
        }
        Ok(())
    }
}

fn parse_subset(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| format!("bad subset element `{s}`: {e}")))
        .collect()
}

fn evaluate(f: &Fixture, e: &Expectation, fixtures: &[Fixture]) -> Result<String, String> {
    let target_stuquandle = || -> Result<&FiniteStuquandle, String> {
        let id = e.target.as_deref().ok_or("missing target")?;
        fixtures
            .iter()
            .find(|g| g.id == id)
            .and_then(Fixture::stuquandle)
            .ok_or_else(|| format!("target stuquandle `{id}` not loaded"))
    };
    let own_stuquandle = || f.stuquandle().ok_or_else(|| format!("{} is not a stuquandle", f.id));
    let own_presentation = || f.presentation().unwrap_or_else(|| Err(format!("{} has no presentation", f.id)));
    match e.operation {
        Operation::Stqp => Ok(stqp(own_stuquandle()?).to_string()),
        Operation::Sstqp => {
            let x = own_stuquandle()?;
            let members = parse_subset(e.target.as_deref().ok_or("missing subset")?)?;
            let s = Subset::new(x, members).map_err(|err| err.to_string())?;
            sstqp(&s).map(|p| p.to_string()).map_err(|err| err.to_string())
        }
        Operation::Profiles => Ok(render_profiles(own_stuquandle()?)),
        Operation::Presentation => Ok(own_presentation()?.to_text()),
        Operation::Colorings => Ok(render_colorings(&enumerate_colorings(&own_presentation()?, target_stuquandle()?))),
        Operation::Counting => Ok(enumerate_colorings(&own_presentation()?, target_stuquandle()?).len().to_string()),
        Operation::Phi => {
            let x = target_stuquandle()?;
            Ok(phi_of_colorings(&enumerate_colorings(&own_presentation()?, x), x).to_string())
        }
    }
}

/// Recomputes every expectation of `fixtures`; targets resolve among
/// `fixtures` themselves.
pub fn check(fixtures: &[Fixture]) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for f in fixtures {
        for e in &f.expected {
            out.push(CheckOutcome {
                fixture: f.id.clone(),
                operation: e.operation,
                target: e.target.clone(),
                expected: e.value.clone(),
                actual: evaluate(f, e, fixtures),
            });
        }
    }
    out
}
