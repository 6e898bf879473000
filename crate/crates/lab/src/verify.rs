//! Re-validation of the witnesses stored in a report.

use bottleneck_core::bottleneck::{is_normal_four_ladder, BottleneckReport, Ladder};
use bottleneck_core::coarse::verify_fat_ladder;
use bottleneck_core::Multigraph;

use crate::report::{Outcome, Report};

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, what: &str, ok: Result<bool, String>) {
        self.checked += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => self.failures.push(format!("{what}: rejected")),
            Err(e) => self.failures.push(format!("{what}: {e}")),
        }
    }

    fn ladder(&mut self, what: &str, g: &Multigraph, l: &Ladder, width: Option<usize>) {
        self.check(what, l.validate(g).map(|_| true).map_err(|e| e.to_string()));
        if let Some(w) = width {
            self.check(&format!("{what} width"), Ok(l.width() == w));
        }
    }

    fn bottleneck(&mut self, what: &str, g: &Multigraph, r: &BottleneckReport, value: Option<usize>) {
        if let Some(l) = &r.ladder {
            self.ladder(&format!("{what} ladder"), g, l, value);
        }
        if let (Some(c), Some((x, y))) = (&r.cut, &r.cut_pair) {
            self.check(&format!("{what} cut"), c.separates(g, x, y).map_err(|e| e.to_string()));
            if let Some(v) = value {
                self.check(&format!("{what} cut size"), Ok(c.size() == v));
            }
        }
    }
}

/// Checks every witness in `report` against the graph it carries.
pub fn verify_report(report: &Report) -> Result<Outcome, String> {
    if let Outcome::Sweep(_) = report.result {
        return Ok(Outcome::Verify {
            command: report.command.clone(),
            checked: 0,
            failures: Vec::new(),
        });
    }
    let doc = report.graph.as_ref().ok_or("report carries no graph")?;
    let g = doc.to_graph().map_err(|e| e.to_string())?;
    let mut t = Tally::default();
    match &report.result {
        Outcome::Analyze {
            bottleneck,
            bounds,
            edge_bottleneck,
            ..
        } => {
            if let Some(b) = bottleneck {
                t.bottleneck("edge", &g, b, *edge_bottleneck);
            }
            if let Some(l) = bounds.as_ref().and_then(|b| b.ladder.as_ref()) {
                t.ladder("lower-bound ladder", &g, l, bounds.as_ref().map(|b| b.lower));
            }
        }
        Outcome::Bottleneck {
            edge,
            point,
            bounds,
            edge_bottleneck,
            point_bottleneck,
        } => {
            if let Some(e) = edge {
                t.bottleneck("edge", &g, e, *edge_bottleneck);
            }
            if let Some(p) = point {
                t.bottleneck("point", &g, p, *point_bottleneck);
            }
            if let Some(l) = bounds.as_ref().and_then(|b| b.ladder.as_ref()) {
                t.ladder("lower-bound ladder", &g, l, bounds.as_ref().map(|b| b.lower));
            }
        }
        Outcome::Ladder {
            width,
            ladder,
            normalized,
            theta,
            ..
        } => {
            if let Some(l) = ladder {
                t.ladder("ladder", &g, l, Some(*width));
            }
            if let Some(n) = normalized {
                t.ladder("normalized ladder", &g, n, Some(4));
                t.check("normalized poles are paths", Ok(is_normal_four_ladder(&g, n)));
            }
            if let Some(th) = theta {
                t.check("theta", th.validate(&g).map(|_| true).map_err(|e| e.to_string()));
            }
        }
        Outcome::Fat {
            radius,
            centers,
            decision,
            ladder,
            ..
        } => {
            if let Some(w) = &decision.witness {
                t.check("fat witness", w.validate(&g).map_err(|e| e.to_string()));
                if let Some(l) = &w.ladder {
                    t.check(
                        "fat witness ladder",
                        verify_fat_ladder(&g, l, *radius).map(|c| c.ok).map_err(|e| e.to_string()),
                    );
                }
            }
            if let Some(l) = ladder {
                t.ladder("fat ladder", &g, l, Some(centers + 1));
                t.check(
                    "fat ladder fatness",
                    verify_fat_ladder(&g, l, *radius).map(|c| c.ok).map_err(|e| e.to_string()),
                );
            }
        }
        Outcome::Cmt { outcome, m_fat, .. } => {
            t.ladder("constructed ladder", &g, &outcome.ladder, None);
            t.check(
                "constructed ladder fatness",
                verify_fat_ladder(&g, &outcome.ladder, *m_fat).map(|c| c.ok).map_err(|e| e.to_string()),
            );
        }
        Outcome::Classify(_) | Outcome::Generate { .. } | Outcome::Oracle { .. } | Outcome::Sweep(_) => {}
        Outcome::Verify { .. } => return Err("cannot verify a verification report".into()),
    }
    Ok(Outcome::Verify {
        command: report.command.clone(),
        checked: t.checked,
        failures: t.failures,
    })
}
