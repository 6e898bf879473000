//! Seeded generators for the graph families used by tests and sweeps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{cycle_intersection_oracle, IntersectionKind};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Path,
    Cycle,
    Dipole,
    DipoleSubdivision,
    Ladder,
    Grid,
    RandomTree,
    RandomCactus,
    RandomCutCactus,
    Complete,
    BinaryTreeWithLevelLinks,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Path,
        Family::Cycle,
        Family::Dipole,
        Family::DipoleSubdivision,
        Family::Ladder,
        Family::Grid,
        Family::RandomTree,
        Family::RandomCactus,
        Family::RandomCutCactus,
        Family::Complete,
        Family::BinaryTreeWithLevelLinks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Dipole => "dipole",
            Family::DipoleSubdivision => "dipole-subdivision",
            Family::Ladder => "ladder",
            Family::Grid => "grid",
            Family::RandomTree => "random-tree",
            Family::RandomCactus => "random-cactus",
            Family::RandomCutCactus => "random-cut-cactus",
            Family::Complete => "complete",
            Family::BinaryTreeWithLevelLinks => "binary-tree-with-level-links",
        }
    }

    /// Parameter names with their minimum values and defaults.
    pub fn params(self) -> &'static [(&'static str, i64, Option<i64>)] {
        match self {
            Family::Path => &[("n", 1, None)],
            Family::Cycle => &[("n", 3, None)],
            Family::Dipole => &[("n", 1, None)],
            Family::DipoleSubdivision => &[("n", 1, None), ("len", 0, Some(1))],
            Family::Ladder => &[
                ("width", 1, None),
                ("pole_len", 1, None),
                ("rung_len", 1, None),
                ("spacing", 0, None),
            ],
            Family::Grid => &[("rows", 1, None), ("cols", 1, None)],
            Family::RandomTree => &[("n", 1, None)],
            Family::RandomCactus => &[("n", 3, None)],
            Family::RandomCutCactus => &[("n", 4, None), ("chords", 1, Some(2))],
            Family::Complete => &[("n", 1, None)],
            Family::BinaryTreeWithLevelLinks => &[("depth", 0, None), ("levels", 0, Some(1))],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    #[serde(default)]
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec {
            family,
            params: BTreeMap::new(),
            seed: 0,
        }
    }

    pub fn param(mut self, name: &str, value: i64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Checked parameters, with defaults filled in.
    fn resolved(&self) -> Result<BTreeMap<&'static str, usize>> {
        let known = self.family.params();
        if let Some(name) = self.params.keys().find(|k| !known.iter().any(|(n, _, _)| n == k)) {
            return Err(Error::invalid(format!(
                "parameter `{name}` does not apply to family {}",
                self.family
            )));
        }
        let mut out = BTreeMap::new();
        for &(name, min, default) in known {
            let v = match (self.params.get(name), default) {
                (Some(&v), _) => v,
                (None, Some(d)) => d,
                (None, None) => {
                    return Err(Error::invalid(format!("family {} needs parameter `{name}`", self.family)))
                }
            };
            if v < min {
                return Err(Error::invalid(format!("parameter `{name}` must be at least {min}, got {v}")));
            }
            out.insert(name, v as usize);
        }
        Ok(out)
    }
}

/// Builds the family instance. Identical specs give identical edge lists.
pub fn generate(spec: &FamilySpec) -> Result<Multigraph> {
    let p = spec.resolved()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Path => {
            let n = p["n"];
            build(n, (1..n).map(|i| (i - 1, i)).collect())
        }
        Family::Cycle => {
            let n = p["n"];
            build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        Family::Dipole => build(2, (0..p["n"]).map(|_| (0, 1)).collect()),
        Family::DipoleSubdivision => {
            let (n, len) = (p["n"], p["len"]);
            let mut edges = Vec::new();
            let mut next = 2;
            for _ in 0..n {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, 1));
            }
            build(next, edges)
        }
        Family::Ladder => ladder(p["width"], p["pole_len"], p["rung_len"], p["spacing"]),
        Family::Grid => {
            let (rows, cols) = (p["rows"], p["cols"]);
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            build(rows * cols, edges)
        }
        Family::RandomTree => {
            let n = p["n"];
            build(n, (1..n).map(|i| (rng.gen_range(0..i), i)).collect())
        }
        Family::RandomCactus => {
            let (n, edges, _) = cactus(&mut rng, p["n"], 3);
            build(n, edges)
        }
        Family::RandomCutCactus => cut_cactus(&mut rng, p["n"], p["chords"]),
        Family::Complete => {
            let n = p["n"];
            build(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect())
        }
        Family::BinaryTreeWithLevelLinks => {
            let (depth, levels) = (p["depth"], p["levels"]);
            if levels > depth + 1 {
                return Err(Error::invalid(format!(
                    "parameter `levels` must be at most depth + 1 = {}, got {levels}",
                    depth + 1
                )));
            }
            let n = (1usize << (depth + 1)) - 1;
            let mut edges: Vec<(usize, usize)> = (1..n).map(|i| ((i - 1) / 2, i)).collect();
            for level in depth + 1 - levels..=depth {
                let start = (1usize << level) - 1;
                let end = (1usize << (level + 1)) - 1;
                edges.extend((start..end - 1).map(|i| (i, i + 1)));
            }
            build(n, edges)
        }
    }
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Result<Multigraph> {
    Multigraph::from_edges(n, edges)
}

/// Two pole paths `0..p` and `p..2p`; rung `i` has `r` interior vertices
/// and attaches at pole position `i * (s - 2)`, so neighboring rung
/// interiors are exactly `s` hops apart.
fn ladder(k: usize, p: usize, r: usize, s: usize) -> Result<Multigraph> {
    if k >= 2 && s < 2 {
        return Err(Error::invalid(format!(
            "parameter `spacing` must be at least 2 for width {k}, got {s}"
        )));
    }
    let gap = s.saturating_sub(2);
    let needed = (k - 1) * gap + 1;
    if p < needed {
        return Err(Error::invalid(format!(
            "parameter `pole_len` must be at least {needed} for width {k} and spacing {s}, got {p}"
        )));
    }
    let mut edges = Vec::new();
    for i in 1..p {
        edges.push((i - 1, i));
    }
    for i in 1..p {
        edges.push((p + i - 1, p + i));
    }
    for rung in 0..k {
        let pos = rung * gap;
        let base = 2 * p + rung * r;
        edges.push((pos, base));
        for j in 1..r {
            edges.push((base + j - 1, base + j));
        }
        edges.push((base + r - 1, p + pos));
    }
    build(2 * p + k * r, edges)
}

/// Random cactus on exactly `n` vertices: pendant edges and cycles hung at
/// random existing vertices. Also returns each cycle's vertices in order.
fn cactus(rng: &mut ChaCha8Rng, n: usize, min_cycle: usize) -> (usize, Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let mut edges = Vec::new();
    let mut cycles = Vec::new();
    let mut count = 1;
    while count < n {
        let at = rng.gen_range(0..count);
        let room = n - count;
        let cycle_len = if room + 1 >= min_cycle && (cycles.is_empty() || rng.gen_bool(0.6)) {
            rng.gen_range(min_cycle..=(min_cycle + 3).min(room + 1))
        } else {
            0
        };
        if cycle_len == 0 {
            edges.push((at, count));
            count += 1;
            continue;
        }
        let mut cyc = Vec::with_capacity(cycle_len);
        cyc.push(at);
        let mut prev = at;
        for _ in 1..cycle_len {
            edges.push((prev, count));
            cyc.push(count);
            prev = count;
            count += 1;
        }
        edges.push((prev, at));
        cycles.push(cyc);
    }
    (n, edges, cycles)
}

/// Random cactus with chords added across its cycles, keeping every pair
/// of cycles meeting in an empty or connected set.
fn cut_cactus(rng: &mut ChaCha8Rng, n: usize, chords: usize) -> Result<Multigraph> {
    let (n, mut edges, cycles) = cactus(rng, n, 4);
    let mut g = build(n, edges.clone())?;
    let long: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() >= 4).collect();
    let mut added = 0;
    let mut attempts = 0;
    while added < chords && attempts < 20 * chords && !long.is_empty() {
        attempts += 1;
        let cyc = long[rng.gen_range(0..long.len())];
        let len = cyc.len();
        let i = rng.gen_range(0..len);
        let j = (i + rng.gen_range(2..len - 1)) % len;
        let (a, b) = (cyc[i].min(cyc[j]), cyc[i].max(cyc[j]));
        if edges.contains(&(a, b)) || edges.contains(&(b, a)) {
            continue;
        }
        edges.push((a, b));
        let candidate = build(n, edges.clone())?;
        let keep = match cycle_intersection_oracle(&candidate, crate::classify::DEFAULT_CYCLE_CAP) {
            Ok(r) => r.worst <= IntersectionKind::ConnectedMultiVertex,
            Err(_) => false,
        };
        if keep {
            g = candidate;
            added += 1;
        } else {
            edges.pop();
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::bottleneck::Budget;
    use crate::classify::{classify_graph, ClassLabel};

    fn spec(f: Family, params: &[(&str, i64)]) -> FamilySpec {
        params.iter().fold(FamilySpec::new(f), |s, &(k, v)| s.param(k, v))
    }

    #[test]
    fn small_families() {
        let g = generate(&spec(Family::Cycle, &[("n", 6)])).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
        let g = generate(&spec(Family::Dipole, &[("n", 3)])).unwrap();
        assert_eq!((g.vertex_count(), g.edges().to_vec()), (2, vec![(0, 1); 3]));
        let g = generate(&spec(Family::BinaryTreeWithLevelLinks, &[("depth", 2), ("levels", 1)])).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 9));
    }

    #[test]
    fn ladder_shape() {
        let g = generate(&spec(
            Family::Ladder,
            &[("width", 3), ("pole_len", 9), ("rung_len", 2), ("spacing", 4)],
        ))
        .unwrap();
        assert_eq!(g.vertex_count(), 24);
        // first interior vertices of neighboring rungs are `spacing` apart
        assert_eq!(g.distances_from(&[18])[20], 4);
        let err = generate(&spec(
            Family::Ladder,
            &[("width", 3), ("pole_len", 3), ("rung_len", 2), ("spacing", 4)],
        ))
        .unwrap_err();
        assert!(format!("{err}").contains("pole_len"));
    }

    #[test]
    fn parameter_errors_name_the_parameter() {
        let err = generate(&spec(Family::Grid, &[("rows", 2)])).unwrap_err();
        assert!(format!("{err}").contains("cols"));
        let err = generate(&spec(Family::Path, &[("n", 3), ("m", 1)])).unwrap_err();
        assert!(format!("{err}").contains("`m`"));
        assert!("triangle".parse::<Family>().is_err());
    }

    #[test]
    fn random_families_are_deterministic_and_classified() {
        let b = Budget::default();
        for seed in 0..10 {
            let s = spec(Family::RandomCactus, &[("n", 25)]).seed(seed);
            assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
            let g = generate(&s).unwrap();
            assert_eq!(g.vertex_count(), 25);
            let label = classify_graph(&g, &b).unwrap().label;
            assert_eq!(label, ClassLabel::Cactus);
            let g = generate(&spec(Family::RandomCutCactus, &[("n", 20)]).seed(seed)).unwrap();
            assert_eq!(classify_graph(&g, &b).unwrap().label, ClassLabel::CutCactus);
            let g = generate(&spec(Family::RandomTree, &[("n", 30)]).seed(seed)).unwrap();
            assert_eq!(classify_graph(&g, &b).unwrap().label, ClassLabel::Tree);
        }
    }
}
