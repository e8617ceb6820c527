//! Arc diagrams of RNA foldings and their conversion to stuck links.
//!
//! Each strand is an ordered list of sites. A stripe bonds one site on
//! `strand_a` to one site on `strand_b` and becomes a stuck crossing whose
//! first input comes from the `strand_a` side. Classical crossings between
//! strands are part of the input geometry and are never invented here.
//! Stripe sites and under sites cut a strand into arcs; over sites do not.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FiniteStuquandle;
use crate::polynomial::PhiMultiset;
use crate::presentation::{
    compile, enumerate_colorings_jobs, merge_arcs, phi_of_colorings, Crossing, CrossingDiagram, Presentation,
    PresentationError, Sign, StrandEnds,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RnaError {
    #[error("malformed stripe or crossing: {0}")]
    MalformedStripe(String),
    #[error("dangling end: {0}")]
    DanglingEnd(String),
    #[error("bad labels: {0}")]
    Labels(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stripe {
    pub strand_a: usize,
    pub strand_b: usize,
    pub position_a: u32,
    pub position_b: u32,
    pub sign: Sign,
}

/// A classical crossing of one strand segment over another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrandCrossing {
    pub over_strand: usize,
    pub over_position: u32,
    pub under_strand: usize,
    pub under_position: u32,
    pub sign: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Site {
    StripeA(usize),
    StripeB(usize),
    Over(usize),
    Under(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcDiagram {
    name: String,
    strands: Vec<Vec<u32>>,
    stripes: Vec<Stripe>,
    crossings: Vec<StrandCrossing>,
    labels: Option<Vec<Vec<String>>>,
}

impl ArcDiagram {
    pub fn new(
        name: impl Into<String>,
        strands: Vec<Vec<u32>>,
        stripes: Vec<Stripe>,
        crossings: Vec<StrandCrossing>,
    ) -> Result<Self, RnaError> {
        let d = Self { name: name.into(), strands, stripes, crossings, labels: None };
        d.site_table()?;
        Ok(d)
    }

    /// Names for the arcs of each closed strand, in traversal order from the
    /// strand's start. A strand cut `k > 0` times needs `k` names, an uncut
    /// strand needs one. The compiled presentation orders generators by name.
    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self, RnaError> {
        let cuts = self.cut_counts()?;
        if labels.len() != cuts.len() {
            return Err(RnaError::Labels(format!("{} label lists for {} strands", labels.len(), cuts.len())));
        }
        let mut seen = BTreeSet::new();
        for (s, (ls, &k)) in labels.iter().zip(&cuts).enumerate() {
            if ls.len() != k.max(1) {
                return Err(RnaError::Labels(format!("strand {s} has {} arcs but {} labels", k.max(1), ls.len())));
            }
            for l in ls {
                if !seen.insert(l.as_str()) {
                    return Err(RnaError::Labels(format!("label `{l}` used twice")));
                }
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn strands(&self) -> &[Vec<u32>] {
        &self.strands
    }

    pub fn stripes(&self) -> &[Stripe] {
        &self.stripes
    }

    pub fn crossings(&self) -> &[StrandCrossing] {
        &self.crossings
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    fn cut_counts(&self) -> Result<Vec<usize>, RnaError> {
        let table = self.site_table()?;
        Ok(table
            .iter()
            .map(|sites| sites.iter().filter(|s| !matches!(s, Some(Site::Over(_)) | None)).count())
            .collect())
    }

    /// For each strand, the role of each site (`None` for unused sites).
    fn site_table(&self) -> Result<Vec<Vec<Option<Site>>>, RnaError> {
        let bad = |m: String| Err(RnaError::MalformedStripe(m));
        if self.strands.is_empty() {
            return bad("no strands".into());
        }
        let mut index: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        for (s, sites) in self.strands.iter().enumerate() {
            if sites.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("strand {s}: sites must be strictly increasing"));
            }
            for (k, &p) in sites.iter().enumerate() {
                index.insert((s, p), k);
            }
        }
        let mut table: Vec<Vec<Option<Site>>> = self.strands.iter().map(|s| vec![None; s.len()]).collect();
        let claim = |strand: usize, pos: u32, role: Site, table: &mut Vec<Vec<Option<Site>>>| {
            let Some(&k) = index.get(&(strand, pos)) else {
                return Err(RnaError::MalformedStripe(format!("strand {strand} has no site {pos}")));
            };
            if table[strand][k].is_some() {
                return Err(RnaError::MalformedStripe(format!("site {pos} on strand {strand} used twice")));
            }
            table[strand][k] = Some(role);
            Ok(())
        };
        for (i, st) in self.stripes.iter().enumerate() {
            if st.strand_a == st.strand_b && st.position_a == st.position_b {
                return bad(format!("stripe {i} bonds a site to itself"));
            }
            claim(st.strand_a, st.position_a, Site::StripeA(i), &mut table)?;
            claim(st.strand_b, st.position_b, Site::StripeB(i), &mut table)?;
        }
        for (i, c) in self.crossings.iter().enumerate() {
            claim(c.over_strand, c.over_position, Site::Over(i), &mut table)?;
            claim(c.under_strand, c.under_position, Site::Under(i), &mut table)?;
        }
        Ok(table)
    }
}

/// One stuck crossing per stripe and one classical crossing per strand
/// crossing. The result is open: every strand has a start and an end arc.
pub fn transform_t(a: &ArcDiagram) -> Result<CrossingDiagram, RnaError> {
    let table = a.site_table()?;
    let mut arc_count = 0;
    let mut open_ends = Vec::new();
    let mut names: Vec<String> = Vec::new();
    // arc entering / leaving each cutting site, arc passing each over site
    let mut into = BTreeMap::new();
    let mut from = BTreeMap::new();
    let mut over_arc = BTreeMap::new();
    for (s, sites) in table.iter().enumerate() {
        let start = arc_count;
        arc_count += 1;
        let mut cur = start;
        let mut piece = 0;
        let label = |j: usize| -> String {
            match &a.labels {
                Some(ls) => ls[s][j % ls[s].len()].clone(),
                None => String::new(),
            }
        };
        names.push(label(piece));
        for site in sites.iter().flatten() {
            match *site {
                Site::Over(c) => {
                    over_arc.insert(c, cur);
                }
                cut => {
                    into.insert(cut, cur);
                    cur = arc_count;
                    arc_count += 1;
                    piece += 1;
                    names.push(label(piece));
                    from.insert(cut, cur);
                }
            }
        }
        open_ends.push(StrandEnds { start, end: cur });
    }
    let mut crossings = Vec::new();
    for (i, st) in a.stripes.iter().enumerate() {
        let (ka, kb) = (Site::StripeA(i), Site::StripeB(i));
        crossings.push(Crossing::Stuck {
            sign: st.sign,
            in1: into[&ka],
            in2: into[&kb],
            out1: from[&ka],
            out2: from[&kb],
        });
    }
    for (i, c) in a.crossings.iter().enumerate() {
        let u = Site::Under(i);
        crossings.push(Crossing::Classical {
            sign: c.sign,
            over: over_arc[&i],
            under_in: into[&u],
            under_out: from[&u],
        });
    }
    let mut d = CrossingDiagram::new(a.name.clone(), arc_count, crossings)?;
    if a.labels.is_some() {
        d = d.with_arc_names(names)?;
    }
    d.open_ends = open_ends;
    Ok(d)
}

/// Joins the two ends of every strand listed in `strand_map`. The map must
/// name exactly the diagram's open ends.
pub fn self_closure(d: &CrossingDiagram, strand_map: &[StrandEnds]) -> Result<CrossingDiagram, RnaError> {
    if d.open_ends.is_empty() {
        return Err(RnaError::DanglingEnd("diagram has no open ends".into()));
    }
    for e in strand_map {
        if !d.open_ends.contains(e) {
            return Err(RnaError::DanglingEnd(format!("no open strand from arc {} to arc {}", e.start, e.end)));
        }
    }
    for e in &d.open_ends {
        if !strand_map.contains(e) {
            return Err(RnaError::DanglingEnd(format!("arc {} has no partner", e.end)));
        }
    }
    let pairs: Vec<(usize, usize)> = strand_map.iter().map(|e| (e.start, e.end)).collect();
    Ok(merge_arcs(d, &pairs))
}

/// Closes every strand of an open diagram onto itself.
pub fn close_all(d: &CrossingDiagram) -> Result<CrossingDiagram, RnaError> {
    self_closure(d, &d.open_ends.clone())
}

/// `T`, self-closure and compilation. With labels, generators are sorted by
/// label; without, they follow strand traversal order.
pub fn to_presentation(a: &ArcDiagram) -> Result<Presentation, RnaError> {
    let closed = close_all(&transform_t(a)?)?;
    let p = compile(&closed)?;
    Ok(if a.labels.is_some() { p.sorted_by_name() } else { p })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingInvariantReport {
    pub presentation: Presentation,
    pub counting: usize,
    pub phi: PhiMultiset,
}

pub fn folding_invariant(a: &ArcDiagram, x: &FiniteStuquandle) -> Result<FoldingInvariantReport, RnaError> {
    folding_invariant_jobs(a, x, 1)
}

pub fn folding_invariant_jobs(a: &ArcDiagram, x: &FiniteStuquandle, jobs: usize) -> Result<FoldingInvariantReport, RnaError> {
    let presentation = to_presentation(a)?;
    let colorings = enumerate_colorings_jobs(&presentation, x, jobs);
    let phi = phi_of_colorings(&colorings, x);
    Ok(FoldingInvariantReport { presentation, counting: colorings.len(), phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{enumerate_colorings, render_colorings};

    fn ex74() -> FiniteStuquandle {
        FiniteStuquandle::from_fns(
            4,
            |x, _| x,
            |x, y| (3 * x + y) % 4,
            |x, y| (x + 3 * y) % 4,
            |x, y| (x + 2 * y) % 4,
            |x, y| (2 * x + y) % 4,
        )
        .unwrap()
    }

    fn stripe(strand_a: usize, strand_b: usize, position_a: u32, position_b: u32, sign: Sign) -> Stripe {
        Stripe { strand_a, strand_b, position_a, position_b, sign }
    }

    fn cross(os: usize, op: u32, us: usize, up: u32, sign: Sign) -> StrandCrossing {
        StrandCrossing { over_strand: os, over_position: op, under_strand: us, under_position: up, sign }
    }

    fn first_folding() -> ArcDiagram {
        ArcDiagram::new(
            "k1",
            vec![vec![1, 2, 3, 4]],
            vec![stripe(0, 0, 1, 3, Sign::Negative)],
            vec![cross(0, 4, 0, 2, Sign::Positive)],
        )
        .unwrap()
        .with_labels(vec![vec!["a".into(), "b".into(), "c".into()]])
        .unwrap()
    }

    #[test]
    fn bare_strand_is_unknot() {
        let a = ArcDiagram::new("", vec![vec![]], vec![], vec![]).unwrap();
        let p = to_presentation(&a).unwrap();
        assert_eq!((p.generator_count(), p.relations().len()), (1, 0));
        let r = folding_invariant(&a, &FiniteStuquandle::singleton()).unwrap();
        assert_eq!(r.counting, 1);
    }

    #[test]
    fn one_stuck_crossing_per_stripe() {
        let d = transform_t(&first_folding()).unwrap();
        let stuck = d.crossings.iter().filter(|c| matches!(c, Crossing::Stuck { .. })).count();
        assert_eq!(stuck, 1);
        assert_eq!(d.arc_count, 4);
        assert_eq!(d.open_ends, vec![StrandEnds { start: 0, end: 3 }]);
    }

    #[test]
    fn first_folding_presentation_and_colorings() {
        let p = to_presentation(&first_folding()).unwrap();
        assert_eq!(p.to_text(), "name: k1\ngenerators: a, b, c\nb = R3(a, c)\na = R4(a, c)\nc = b * a\n");
        let cs = enumerate_colorings(&p, &ex74());
        assert_eq!(render_colorings(&cs), "{(0,0,0),(1,3,3),(2,2,2),(3,1,1)}");
    }

    #[test]
    fn closure_twice_is_dangling() {
        let d = transform_t(&first_folding()).unwrap();
        let map = d.open_ends.clone();
        let once = self_closure(&d, &map).unwrap();
        assert!(matches!(self_closure(&once, &map), Err(RnaError::DanglingEnd(_))));
        assert!(matches!(self_closure(&d, &[]), Err(RnaError::DanglingEnd(_))));
    }

    #[test]
    fn two_strands_close_separately() {
        let a = ArcDiagram::new("", vec![vec![1], vec![1]], vec![stripe(0, 1, 1, 1, Sign::Positive)], vec![]).unwrap();
        let d = close_all(&transform_t(&a).unwrap()).unwrap();
        assert_eq!(d.arc_count, 2);
        assert_eq!(d.crossings, vec![Crossing::Stuck { sign: Sign::Positive, in1: 0, in2: 1, out1: 0, out2: 1 }]);
    }

    #[test]
    fn malformed_inputs() {
        let dup = ArcDiagram::new("", vec![vec![1, 2]], vec![stripe(0, 0, 1, 1, Sign::Positive)], vec![]);
        assert!(matches!(dup, Err(RnaError::MalformedStripe(_))));
        let missing = ArcDiagram::new("", vec![vec![1, 2]], vec![stripe(0, 0, 1, 5, Sign::Positive)], vec![]);
        assert!(matches!(missing, Err(RnaError::MalformedStripe(_))));
        let unsorted = ArcDiagram::new("", vec![vec![2, 1]], vec![], vec![]);
        assert!(matches!(unsorted, Err(RnaError::MalformedStripe(_))));
        let reused = ArcDiagram::new(
            "",
            vec![vec![1, 2, 3]],
            vec![stripe(0, 0, 1, 2, Sign::Positive)],
            vec![cross(0, 3, 0, 2, Sign::Positive)],
        );
        assert!(matches!(reused, Err(RnaError::MalformedStripe(_))));
        let a = ArcDiagram::new("", vec![vec![1, 2]], vec![stripe(0, 0, 1, 2, Sign::Positive)], vec![]).unwrap();
        assert!(matches!(a.clone().with_labels(vec![vec!["a".into()]]), Err(RnaError::Labels(_))));
        assert!(matches!(a.with_labels(vec![vec!["a".into(), "a".into()]]), Err(RnaError::Labels(_))));
    }
}
