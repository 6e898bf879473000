//! Versioned JSON reports and their text and DOT renderings.

use std::fmt::Write;

use bottleneck_core::bottleneck::{BottleneckReport, Ladder, Theta};
use bottleneck_core::classify::{ClassReport, IntersectionReport};
use bottleneck_core::coarse::{CmtOutcome, FatReport, SweepReport};
use bottleneck_core::flow::{ConnectivityProfile, CutKind};
use bottleneck_core::{FamilySpec, Multigraph, VertexSet};
use serde::{Deserialize, Serialize};

use crate::dot::Highlight;
use crate::format::GraphDoc;

pub const SCHEMA: &str = "bottleneck-lab/report";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    BudgetExceeded,
}

/// Bounds left behind when an exhaustive search runs out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
    pub pairs_examined: u64,
    /// A ladder of width `lower`, when one was found.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Ladder>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: u32,
    pub command: String,
    pub seed: u64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDoc>,
    pub result: Outcome,
}

impl Report {
    pub fn new(command: &str, seed: u64, graph: Option<&Multigraph>, status: Status, result: Outcome) -> Self {
        Report {
            schema: SCHEMA.into(),
            version: VERSION,
            command: command.into(),
            seed,
            status,
            graph: graph.map(GraphDoc::of),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Analyze {
        label: String,
        edge_bottleneck: Option<usize>,
        point_bottleneck: Option<usize>,
        classification: ClassReport,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bottleneck: Option<BottleneckReport>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bounds: Option<Bounds>,
        connectivity: ConnectivityProfile,
    },
    Bottleneck {
        edge_bottleneck: Option<usize>,
        point_bottleneck: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edge: Option<BottleneckReport>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<BottleneckReport>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bounds: Option<Bounds>,
    },
    Classify(ClassReport),
    Ladder {
        width: usize,
        /// "found", "none" or "unknown".
        search: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ladder: Option<Ladder>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normalized: Option<Ladder>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<Theta>,
    },
    Fat {
        radius: usize,
        centers: usize,
        decision: FatReport,
        /// Search for a fat ladder of width `centers + 1`.
        ladder_search: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ladder: Option<Ladder>,
    },
    Cmt {
        x: VertexSet,
        y: VertexSet,
        centers: VertexSet,
        m_small: usize,
        m_fat: usize,
        bound: usize,
        outcome: CmtOutcome,
    },
    Sweep(SweepReport),
    Generate {
        family: FamilySpec,
        vertices: usize,
        edges: usize,
    },
    Oracle {
        edge_bottleneck: usize,
        point_bottleneck: usize,
        lambda_max: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cycles: Option<IntersectionReport>,
    },
    Verify {
        command: String,
        checked: usize,
        failures: Vec<String>,
    },
}

fn ladder_highlight(l: &Ladder) -> Highlight {
    Highlight {
        pole_x: Some(l.pole_x.clone()),
        pole_y: Some(l.pole_y.clone()),
        rungs: l.rungs.clone(),
        ..Highlight::default()
    }
}

fn report_highlight(r: &BottleneckReport) -> Highlight {
    let mut h = r.ladder.as_ref().map(ladder_highlight).unwrap_or_default();
    if let Some(c) = &r.cut {
        match c.kind {
            CutKind::EdgeCut => h.cut_edges = c.members.clone(),
            _ => h.cut_vertices = c.members.clone(),
        }
    }
    h
}

impl Outcome {
    /// Witness overlay for DOT output.
    pub fn highlight(&self) -> Highlight {
        match self {
            Outcome::Analyze { bottleneck, bounds, .. } => match (bottleneck, bounds) {
                (Some(b), _) => report_highlight(b),
                (None, Some(Bounds { ladder: Some(l), .. })) => ladder_highlight(l),
                _ => Highlight::default(),
            },
            Outcome::Bottleneck { edge, point, bounds, .. } => match (edge, point, bounds) {
                (Some(e), _, _) => report_highlight(e),
                (None, Some(p), _) => report_highlight(p),
                (None, None, Some(Bounds { ladder: Some(l), .. })) => ladder_highlight(l),
                _ => Highlight::default(),
            },
            Outcome::Ladder {
                ladder, normalized, theta, ..
            } => match (normalized.as_ref().or(ladder.as_ref()), theta) {
                (Some(l), _) => ladder_highlight(l),
                (None, Some(t)) => Highlight {
                    pole_x: Some(VertexSet::singleton(t.branch_u)),
                    pole_y: Some(VertexSet::singleton(t.branch_v)),
                    rungs: t.paths.clone(),
                    ..Highlight::default()
                },
                _ => Highlight::default(),
            },
            Outcome::Fat { decision, ladder, .. } => {
                let mut h = ladder.as_ref().map(ladder_highlight).unwrap_or_default();
                if let Some(w) = &decision.witness {
                    h.pole_x = Some(w.x.clone());
                    h.pole_y = Some(w.y.clone());
                    if let Some(c) = &w.centers {
                        h.centers = c.members().to_vec();
                    }
                }
                h
            }
            Outcome::Cmt { outcome, centers, .. } => {
                let mut h = ladder_highlight(&outcome.ladder);
                h.centers = centers.members().to_vec();
                h
            }
            _ => Highlight::default(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let opt = |v: &Option<usize>| v.map_or("unknown".to_string(), |v| v.to_string());
        match self {
            Outcome::Analyze {
                label,
                edge_bottleneck,
                point_bottleneck,
                bounds,
                connectivity,
                ..
            } => {
                writeln!(s, "label: {label}").unwrap();
                writeln!(s, "edge bottleneck: {}", opt(edge_bottleneck)).unwrap();
                writeln!(s, "point bottleneck: {}", opt(point_bottleneck)).unwrap();
                if let Some(b) = bounds {
                    writeln!(s, "bounds: [{}, {}]", b.lower, b.upper).unwrap();
                }
                writeln!(s, "lambda min/max: {} {}", connectivity.lambda_min, connectivity.lambda_max).unwrap();
            }
            Outcome::Bottleneck {
                edge_bottleneck,
                point_bottleneck,
                bounds,
                ..
            } => {
                writeln!(s, "edge bottleneck: {}", opt(edge_bottleneck)).unwrap();
                writeln!(s, "point bottleneck: {}", opt(point_bottleneck)).unwrap();
                if let Some(b) = bounds {
                    writeln!(s, "bounds: [{}, {}] after {} pairs", b.lower, b.upper, b.pairs_examined).unwrap();
                }
            }
            Outcome::Classify(r) => {
                writeln!(s, "label: {}", r.label.as_str()).unwrap();
                writeln!(s, "edge bottleneck: {}", opt(&r.edge_bottleneck)).unwrap();
            }
            Outcome::Ladder {
                width, search, ladder, ..
            } => {
                writeln!(s, "{width}-ladder: {search}").unwrap();
                if let Some(l) = ladder {
                    writeln!(s, "poles: {:?} {:?}", l.pole_x.members(), l.pole_y.members()).unwrap();
                    for r in &l.rungs {
                        writeln!(s, "rung: {:?}", r.vertices).unwrap();
                    }
                }
            }
            Outcome::Fat {
                radius,
                centers,
                decision,
                ladder_search,
                ..
            } => {
                let d = serde_json::to_value(decision.decision).unwrap();
                writeln!(s, "{radius}-fat {centers}-bottlenecked: {}", d.as_str().unwrap_or("?")).unwrap();
                writeln!(s, "{radius}-fat {}-ladder: {ladder_search}", centers + 1).unwrap();
            }
            Outcome::Cmt { outcome, m_fat, .. } => {
                writeln!(s, "{m_fat}-fat ladder of width {}", outcome.ladder.width()).unwrap();
                writeln!(s, "leftover components: {}", outcome.leftover_components).unwrap();
            }
            Outcome::Sweep(r) => {
                writeln!(s, "size M vertices ladder max_width decision work").unwrap();
                for row in &r.rows {
                    let d = serde_json::to_value(row.decision).unwrap();
                    writeln!(
                        s,
                        "{} {} {} {} {} {} {}",
                        row.size,
                        row.radius,
                        row.vertices,
                        row.ladder,
                        row.max_width,
                        d.as_str().unwrap_or("?"),
                        row.work
                    )
                    .unwrap();
                }
            }
            Outcome::Generate { family, vertices, edges } => {
                writeln!(s, "{}: {vertices} vertices, {edges} edges", family.family).unwrap();
            }
            Outcome::Oracle {
                edge_bottleneck,
                point_bottleneck,
                lambda_max,
                cycles,
            } => {
                writeln!(s, "edge bottleneck: {edge_bottleneck}").unwrap();
                writeln!(s, "point bottleneck: {point_bottleneck}").unwrap();
                writeln!(s, "lambda max: {lambda_max}").unwrap();
                if let Some(c) = cycles {
                    writeln!(s, "cycles: {} worst {:?}", c.cycle_count, c.worst).unwrap();
                }
            }
            Outcome::Verify {
                command,
                checked,
                failures,
            } => {
                writeln!(s, "{command}: {checked} witnesses checked, {} failures", failures.len()).unwrap();
                for f in failures {
                    writeln!(s, "  {f}").unwrap();
                }
            }
        }
        s
    }
}
