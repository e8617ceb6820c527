//! JSON file formats for stuquandles, presentations, crossing diagrams and
//! arc diagrams.
//!
//! Stuquandle: `{"n": 4, "star": [[..], ..], "r1": .., "r4": ..}`; tables may
//! also be flat row-major arrays. Presentation: `{"name": .., "generators":
//! ["a", "b"] | 2, "relations": [{"out": "a", "op": "R1", "lhs": "a", "rhs":
//! "b"}]}` with generator references given by name or index. Arc diagram:
//! `{"strands": [[1, 2]], "stripes": [[0, 0, 1, 2, "-"]], "crossings": [..],
//! "labels": [["a"]]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteStuquandle, Op, OperationTable};
use crate::catalog::{FixtureKind, Payload};
use crate::presentation::{CrossingDiagram, Presentation, PresentationError, Relation, Sign};
use crate::rna::{ArcDiagram, RnaError, StrandCrossing, Stripe};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Rna(#[from] RnaError),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableRepr {
    Rows(Vec<Vec<Element>>),
    Flat(Vec<Element>),
}

impl TableRepr {
    fn into_table(self, n: usize) -> Result<OperationTable, AlgebraError> {
        match self {
            TableRepr::Rows(rows) => {
                if rows.len() != n {
                    return Err(AlgebraError::TableShape { expected: n, found: rows.len() });
                }
                OperationTable::from_rows(&rows)
            }
            TableRepr::Flat(entries) => OperationTable::new(n, entries),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StuquandleFile {
    n: usize,
    star: TableRepr,
    r1: TableRepr,
    r2: TableRepr,
    r3: TableRepr,
    r4: TableRepr,
    #[serde(default)]
    #[allow(dead_code)]
    name: Option<String>,
}

/// The five raw tables, before axiom checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawStuquandle {
    pub star: OperationTable,
    pub r1: OperationTable,
    pub r2: OperationTable,
    pub r3: OperationTable,
    pub r4: OperationTable,
}

impl RawStuquandle {
    pub fn build(self) -> Result<FiniteStuquandle, AlgebraError> {
        FiniteStuquandle::new(self.star, self.r1, self.r2, self.r3, self.r4)
    }
}

/// Parses the tables without checking the axioms.
pub fn parse_stuquandle_tables(json: &str) -> Result<RawStuquandle, FormatError> {
    let f: StuquandleFile = serde_json::from_str(json)?;
    Ok(RawStuquandle {
        star: f.star.into_table(f.n)?,
        r1: f.r1.into_table(f.n)?,
        r2: f.r2.into_table(f.n)?,
        r3: f.r3.into_table(f.n)?,
        r4: f.r4.into_table(f.n)?,
    })
}

pub fn parse_stuquandle(json: &str) -> Result<FiniteStuquandle, FormatError> {
    Ok(parse_stuquandle_tables(json)?.build()?)
}

/// One table row per line.
pub fn stuquandle_to_json(x: &FiniteStuquandle) -> String {
    let mut s = format!("{{\n  \"n\": {}", x.size());
    for (key, op) in [("star", Op::Star), ("r1", Op::R1), ("r2", Op::R2), ("r3", Op::R3), ("r4", Op::R4)] {
        s.push_str(&format!(",\n  \"{key}\": [\n"));
        let rows: Vec<String> = x
            .table(op)
            .rows()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("    [{}]", cells.join(", "))
            })
            .collect();
        s.push_str(&rows.join(",\n"));
        s.push_str("\n  ]");
    }
    s.push_str("\n}\n");
    s
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GeneratorRef {
    Index(usize),
    Name(String),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GeneratorsRepr {
    Count(usize),
    Names(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct RelationFile {
    out: GeneratorRef,
    op: String,
    lhs: GeneratorRef,
    rhs: GeneratorRef,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    name: String,
    generators: GeneratorsRepr,
    relations: Vec<RelationFile>,
}

pub fn parse_presentation(json: &str) -> Result<Presentation, FormatError> {
    let f: PresentationFile = serde_json::from_str(json)?;
    let names: Vec<String> = match f.generators {
        GeneratorsRepr::Count(g) => (0..g).map(crate::presentation::default_generator_name).collect(),
        GeneratorsRepr::Names(v) => v,
    };
    let resolve = |r: &GeneratorRef| -> Result<usize, FormatError> {
        match r {
            GeneratorRef::Index(i) => Ok(*i),
            GeneratorRef::Name(s) => names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| PresentationError::UnknownGenerator(s.clone()).into()),
        }
    };
    let mut relations = Vec::with_capacity(f.relations.len());
    for r in &f.relations {
        let op: Op = r.op.parse().map_err(FormatError::Schema)?;
        relations.push(Relation::new(resolve(&r.out)?, op, resolve(&r.lhs)?, resolve(&r.rhs)?));
    }
    Ok(Presentation::with_names(f.name, names, relations)?)
}

pub fn presentation_to_json(p: &Presentation) -> String {
    let names = p.generator_names();
    let f = PresentationFile {
        name: p.name().to_string(),
        generators: GeneratorsRepr::Names(names.to_vec()),
        relations: p
            .relations()
            .iter()
            .map(|r| RelationFile {
                out: GeneratorRef::Name(names[r.out].clone()),
                op: r.op.symbol().to_string(),
                lhs: GeneratorRef::Name(names[r.lhs].clone()),
                rhs: GeneratorRef::Name(names[r.rhs].clone()),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&f).expect("presentation serializes");
    s.push('\n');
    s
}

pub fn parse_crossing_diagram(json: &str) -> Result<CrossingDiagram, FormatError> {
    let d: CrossingDiagram = serde_json::from_str(json)?;
    d.validate()?;
    Ok(d)
}

pub fn crossing_diagram_to_json(d: &CrossingDiagram) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("diagram serializes");
    s.push('\n');
    s
}

/// Reads either a crossing diagram (has `arc_count`) or a presentation and
/// returns the presentation.
pub fn parse_presentation_or_diagram(json: &str) -> Result<Presentation, FormatError> {
    let v: Value = serde_json::from_str(json)?;
    if v.get("arc_count").is_some() {
        Ok(crate::presentation::compile(&parse_crossing_diagram(json)?)?)
    } else {
        parse_presentation(json)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcDiagramFile {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    name: String,
    strands: Vec<Vec<u32>>,
    #[serde(default)]
    stripes: Vec<(usize, usize, u32, u32, Sign)>,
    #[serde(default)]
    crossings: Vec<(usize, u32, usize, u32, Sign)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<String>>>,
}

pub fn parse_arc_diagram(json: &str) -> Result<ArcDiagram, FormatError> {
    let f: ArcDiagramFile = serde_json::from_str(json)?;
    let stripes = f
        .stripes
        .into_iter()
        .map(|(strand_a, strand_b, position_a, position_b, sign)| Stripe { strand_a, strand_b, position_a, position_b, sign })
        .collect();
    let crossings = f
        .crossings
        .into_iter()
        .map(|(over_strand, over_position, under_strand, under_position, sign)| StrandCrossing {
            over_strand,
            over_position,
            under_strand,
            under_position,
            sign,
        })
        .collect();
    let d = ArcDiagram::new(f.name, f.strands, stripes, crossings)?;
    Ok(match f.labels {
        Some(l) => d.with_labels(l)?,
        None => d,
    })
}

pub fn arc_diagram_to_json(a: &ArcDiagram) -> String {
    let f = ArcDiagramFile {
        name: a.name().to_string(),
        strands: a.strands().to_vec(),
        stripes: a
            .stripes()
            .iter()
            .map(|s| (s.strand_a, s.strand_b, s.position_a, s.position_b, s.sign))
            .collect(),
        crossings: a
            .crossings()
            .iter()
            .map(|c| (c.over_strand, c.over_position, c.under_strand, c.under_position, c.sign))
            .collect(),
        labels: a.labels().map(|l| l.to_vec()),
    };
    let mut s = serde_json::to_string_pretty(&f).expect("arc diagram serializes");
    s.push('\n');
    s
}

/// The payload of a fixture in its file format.
pub fn payload_to_json(p: &Payload) -> String {
    match p {
        Payload::Stuquandle(x) => stuquandle_to_json(x),
        Payload::Diagram(d) => crossing_diagram_to_json(d),
        Payload::Presentation(p) => presentation_to_json(p),
        Payload::ArcDiagram(a) => arc_diagram_to_json(a),
    }
}

/// Reads a payload of the given kind; presentations may be crossing diagrams.
pub fn payload_from_json(kind: FixtureKind, json: &str) -> Result<Payload, FormatError> {
    Ok(match kind {
        FixtureKind::Stuquandle => Payload::Stuquandle(parse_stuquandle(json)?),
        FixtureKind::ArcDiagram => Payload::ArcDiagram(parse_arc_diagram(json)?),
        FixtureKind::Presentation => {
            let v: Value = serde_json::from_str(json)?;
            if v.get("arc_count").is_some() {
                Payload::Diagram(parse_crossing_diagram(json)?)
            } else {
                Payload::Presentation(parse_presentation(json)?)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{affine_stuquandle, AffineParams};

    #[test]
    fn stuquandle_round_trip() {
        let x = affine_stuquandle(&AffineParams { n: 4, a: 3, b: 2, e: 2 }).unwrap();
        let text = stuquandle_to_json(&x);
        assert!(text.contains("\"star\": [\n    [0, 2, 0, 2],"));
        assert_eq!(parse_stuquandle(&text).unwrap(), x);
    }

    #[test]
    fn flat_tables_accepted() {
        let json = r#"{"n":1,"star":[0],"r1":[[0]],"r2":[0],"r3":[0],"r4":[0]}"#;
        assert_eq!(parse_stuquandle(json).unwrap(), FiniteStuquandle::singleton());
    }

    #[test]
    fn bad_stuquandle_files() {
        assert!(matches!(parse_stuquandle("{"), Err(FormatError::Json(_))));
        let short = r#"{"n":2,"star":[0,1,0],"r1":[0,0,0,0],"r2":[0,0,0,0],"r3":[0,0,0,0],"r4":[0,0,0,0]}"#;
        assert!(matches!(parse_stuquandle(short), Err(FormatError::Algebra(AlgebraError::TableShape { .. }))));
        let shift = r#"{"n":2,"star":[[1,1],[0,0]],"r1":[0,0,0,0],"r2":[0,0,0,0],"r3":[0,0,0,0],"r4":[0,0,0,0]}"#;
        assert!(matches!(parse_stuquandle(shift), Err(FormatError::Algebra(AlgebraError::AxiomViolation { .. }))));
    }

    #[test]
    fn presentation_round_trip_and_indices() {
        let json = r#"{"generators": 2, "relations": [{"out": 0, "op": "R1", "lhs": 0, "rhs": "b"}, {"out": "b", "op": "~*", "lhs": 1, "rhs": 0}]}"#;
        let p = parse_presentation(json).unwrap();
        assert_eq!(p.to_text(), "generators: a, b\na = R1(a, b)\nb = b ~* a\n");
        assert_eq!(parse_presentation(&presentation_to_json(&p)).unwrap(), p);
        assert!(parse_presentation(r#"{"generators": 1, "relations": [{"out": 0, "op": "R9", "lhs": 0, "rhs": 0}]}"#).is_err());
        assert!(parse_presentation(r#"{"generators": 1, "relations": [{"out": 3, "op": "*", "lhs": 0, "rhs": 0}]}"#).is_err());
    }

    #[test]
    fn diagram_round_trip() {
        let json = r#"{"arc_count": 2, "crossings": [{"type": "classical", "sign": "+", "over": 0, "under_in": 0, "under_out": 1}]}"#;
        let d = parse_crossing_diagram(json).unwrap();
        assert_eq!(parse_crossing_diagram(&crossing_diagram_to_json(&d)).unwrap(), d);
        let p = parse_presentation_or_diagram(json).unwrap();
        assert_eq!(p.to_text(), "generators: a, b\nb = a * a\n");
    }

    #[test]
    fn every_fixture_payload_round_trips() {
        for f in crate::catalog::all_fixtures() {
            let text = payload_to_json(&f.payload);
            assert_eq!(payload_from_json(f.kind, &text).unwrap(), f.payload, "{}", f.id);
        }
    }

    #[test]
    fn arc_diagram_round_trip() {
        let json = r#"{"strands": [[1, 2, 3, 4]], "stripes": [[0, 0, 1, 3, "-"]], "crossings": [[0, 4, 0, 2, "+"]], "labels": [["a", "b", "c"]]}"#;
        let a = parse_arc_diagram(json).unwrap();
        assert_eq!(parse_arc_diagram(&arc_diagram_to_json(&a)).unwrap(), a);
        assert!(parse_arc_diagram(r#"{"strands": [[1]], "stripes": [[0, 0, 1, 1, "+"]]}"#).is_err());
        assert!(parse_arc_diagram(r#"{"strands": [[1]], "stripes": [[0, 0, 1, 1, "x"]]}"#).is_err());
    }
}
