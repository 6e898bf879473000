//! `M`-fat ladders, `M`-fat bottlenecking, and the ladder construction used
//! to prove the coarse Menger-type theorem.
//!
//! Two vertex sets are `M`-disjoint when their hop distance is at least
//! `M`. `N_M(S)` is the set of vertices at distance strictly less than `M`
//! from `S`. A center set `S` separates `X` from `Y` when both
//! `X \ N_M(S)` and `Y \ N_M(S)` are nonempty and no component of
//! `G \ N_M(S)` meets both; swallowing a whole side does not count.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::bottleneck::{find_dipole_ladder, ladder_width_bound, Budget, Ladder, Search};
use crate::error::{Error, Result};
use crate::flow::vertex_flow_count;
use crate::gen::{generate, FamilySpec};
use crate::graph::{Multigraph, PathWitness, VertexSet, UNREACHABLE};
use crate::subsets::{bits, connected_subsets, mask_of, set_of, MaskGraph};

/// Largest graph for which `decide_fat_bottleneck` scans every pair.
pub const FAT_MAX_VERTICES: usize = 40;
/// Largest radius for the exhaustive decision.
pub const FAT_MAX_RADIUS: usize = 6;
/// Largest center count for the exhaustive decision.
pub const FAT_MAX_CENTERS: usize = 3;

/// Rung candidates collected per pole pair before the search gives up.
const RUNG_CANDIDATE_CAP: usize = 2048;
/// Pole pairs tried from geodesic seeds before the exhaustive scan.
const SEED_PAIR_CAP: u64 = 20_000;
const SEED_PARTNERS: usize = 4;
/// Center sets materialized for a separation scan.
const CENTER_SET_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FatViolation {
    PolesTooClose { distance: usize },
    RungsTooClose { a: usize, b: usize, distance: usize },
}

impl fmt::Display for FatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FatViolation::PolesTooClose { distance } => write!(f, "poles at distance {distance}"),
            FatViolation::RungsTooClose { a, b, distance } => {
                write!(f, "rungs {a} and {b} at distance {distance}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatCheck {
    pub ok: bool,
    pub violation: Option<FatViolation>,
}

/// Checks that the poles and all nonempty rung interiors are pairwise at
/// distance at least `m`. The ladder must be structurally valid.
pub fn verify_fat_ladder(g: &Multigraph, l: &Ladder, m: usize) -> Result<FatCheck> {
    let mut plain = l.clone();
    plain.fatness = None;
    plain.validate(g)?;
    let fail = |v| Ok(FatCheck { ok: false, violation: Some(v) });
    let d = g.set_distance(&l.pole_x, &l.pole_y)?;
    if d < m {
        return fail(FatViolation::PolesTooClose { distance: d });
    }
    for a in 0..l.rungs.len() {
        let ia = l.rungs[a].interior();
        if ia.is_empty() {
            continue;
        }
        let dist = g.distances_from(ia);
        for b in a + 1..l.rungs.len() {
            let ib = l.rungs[b].interior();
            if let Some(d) = ib.iter().map(|&v| dist[v]).min() {
                if d < m {
                    return fail(FatViolation::RungsTooClose { a, b, distance: d });
                }
            }
        }
    }
    Ok(FatCheck { ok: true, violation: None })
}

/// `N_radius(set)` as a mask.
fn ball(mg: &MaskGraph, set: u64, radius: usize) -> u64 {
    if radius == 0 {
        return 0;
    }
    let mut s = set;
    for _ in 1..radius {
        let next = s | mg.boundary(s);
        if next == s {
            break;
        }
        s = next;
    }
    s
}

/// Separation with the no-swallow rule; `removed` is `N_M(S)`.
fn separated(mg: &MaskGraph, removed: u64, x: u64, y: u64) -> bool {
    let (xr, yr) = (x & !removed, y & !removed);
    xr != 0 && yr != 0 && mg.reach(xr, !removed & mg.all()) & yr == 0
}

fn check_common(g: &Multigraph) -> Result<MaskGraph> {
    g.ensure_loopless()?;
    g.ensure_connected()?;
    MaskGraph::new(g)
}

/// Minimal connectors between two poles: induced paths whose first vertex
/// is the only one adjacent to `x` and whose last is the only one adjacent
/// to `y`, avoiding both poles. Returns the vertex sequences and whether
/// the list is complete.
fn rung_candidates(mg: &MaskGraph, x: u64, y: u64, cap: usize) -> (Vec<Vec<usize>>, bool) {
    let allowed = mg.all() & !(x | y);
    let near_x = mg.boundary(x) & allowed;
    let near_y = mg.boundary(y);
    let mut out = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    // per depth: remaining extension candidates
    let mut frames: Vec<u64> = Vec::new();
    for start in bits(near_x) {
        path.push(start);
        frames.push(if near_y >> start & 1 == 1 {
            out.push(path.clone());
            0
        } else {
            mg.adj[start] & allowed & !near_x
        });
        while let Some(top) = frames.len().checked_sub(1) {
            if out.len() > cap {
                return (out, false);
            }
            if frames[top] == 0 {
                frames.pop();
                path.pop();
                continue;
            }
            let w = frames[top].trailing_zeros() as usize;
            frames[top] &= frames[top] - 1;
            let earlier = path[..path.len() - 1].iter().fold(0u64, |a, &v| a | mg.adj[v] | 1 << v);
            let last = *path.last().unwrap();
            if earlier >> w & 1 == 1 || w == last {
                continue;
            }
            path.push(w);
            if near_y >> w & 1 == 1 {
                out.push(path.clone());
                frames.push(0);
            } else {
                frames.push(mg.adj[w] & allowed & !near_x);
            }
        }
    }
    (out, true)
}

/// Lexicographically first `k` pairwise compatible candidates.
fn compatible_clique(compat: &[Vec<u64>], k: usize) -> Option<Vec<usize>> {
    let c = compat.len();
    let words = c.div_ceil(64);
    let full: Vec<u64> = (0..words)
        .map(|w| if (w + 1) * 64 <= c { u64::MAX } else { (1u64 << (c - w * 64)) - 1 })
        .collect();
    let mut chosen = Vec::new();
    fn grow(compat: &[Vec<u64>], cand: &[u64], k: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        let remaining: u32 = cand.iter().map(|w| w.count_ones()).sum();
        if (remaining as usize) + chosen.len() < k {
            return false;
        }
        for (wi, &word) in cand.iter().enumerate() {
            for b in bits(word) {
                let i = wi * 64 + b;
                let mut next: Vec<u64> = cand.iter().zip(&compat[i]).map(|(a, b)| a & b).collect();
                // only later candidates, so each clique is tried once
                for (wj, w) in next.iter_mut().enumerate() {
                    if wj < wi {
                        *w = 0;
                    } else if wj == wi {
                        *w &= u64::MAX.checked_shl(b as u32 + 1).unwrap_or(0);
                    }
                }
                chosen.push(i);
                if grow(compat, &next, k, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    grow(compat, &full, k, &mut chosen).then_some(chosen)
}

enum RungSearch {
    Found(Vec<Vec<usize>>),
    Absent,
    Incomplete,
}

/// `k` rungs between fixed poles whose interiors are pairwise `m` apart (`m ≥ 2`).
fn fat_rungs(mg: &MaskGraph, x: u64, y: u64, k: usize, m: usize) -> RungSearch {
    let (cands, complete) = rung_candidates(mg, x, y, RUNG_CANDIDATE_CAP);
    if cands.len() < k {
        return if complete { RungSearch::Absent } else { RungSearch::Incomplete };
    }
    let masks: Vec<u64> = cands.iter().map(|p| p.iter().fold(0, |a, &v| a | 1 << v)).collect();
    let balls: Vec<u64> = masks.iter().map(|&s| ball(mg, s, m)).collect();
    let words = masks.len().div_ceil(64);
    let compat: Vec<Vec<u64>> = (0..masks.len())
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..masks.len() {
                if i != j && balls[i] & masks[j] == 0 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    match compatible_clique(&compat, k) {
        Some(ids) => RungSearch::Found(ids.into_iter().map(|i| cands[i].clone()).collect()),
        None if complete => RungSearch::Absent,
        None => RungSearch::Incomplete,
    }
}

fn assemble_ladder(g: &Multigraph, mg: &MaskGraph, x: u64, y: u64, interiors: Vec<Vec<usize>>, m: usize) -> Result<Ladder> {
    let mut rungs = Vec::with_capacity(interiors.len());
    for inner in interiors {
        let first = inner[0];
        let last = *inner.last().unwrap();
        let xe = (mg.adj[first] & x).trailing_zeros() as usize;
        let ye = (mg.adj[last] & y).trailing_zeros() as usize;
        let mut vs = vec![xe];
        vs.extend(inner);
        vs.push(ye);
        rungs.push(PathWitness::along(g, vs)?);
    }
    Ok(Ladder {
        pole_x: set_of(x),
        pole_y: set_of(y),
        rungs,
        fatness: Some(m),
    })
}

/// Lowest-id shortest path between two vertices.
fn geodesic(g: &Multigraph, a: usize, b: usize) -> Vec<usize> {
    let dist = g.distances_from(&[b]);
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        cur = g
            .neighbors(cur)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| dist[w] + 1 == dist[cur])
            .expect("connected");
        path.push(cur);
    }
    path
}

/// Searches for an `M`-fat ladder of width `k`, with the number of pole
/// pairs examined.
fn fat_ladder_search(g: &Multigraph, k: usize, m: usize, budget: &Budget) -> Result<(Search<Ladder>, u64)> {
    if k == 0 {
        return Err(Error::invalid("ladder width must be at least 1"));
    }
    let mg = check_common(g)?;
    if m <= 1 {
        // 1-fat is plain vertex-disjointness
        return Ok((
            match find_dipole_ladder(g, k, budget)? {
                Search::Found(mut l) => {
                    l.fatness = Some(m);
                    Search::Found(l)
                }
                other => other,
            },
            0,
        ));
    }
    if k > ladder_width_bound(g) {
        return Ok((Search::None, 0));
    }
    let n = mg.n;
    if k == 1 {
        for a in 0..n {
            let dist = g.distances_from(&[a]);
            if let Some(b) = (a + 1..n).find(|&b| dist[b] >= m) {
                let rung = PathWitness::along(g, geodesic(g, a, b))?;
                let l = Ladder {
                    pole_x: VertexSet::singleton(a),
                    pole_y: VertexSet::singleton(b),
                    rungs: vec![rung],
                    fatness: Some(m),
                };
                return Ok((Search::Found(l), 1));
            }
        }
        return Ok((Search::None, 0));
    }

    let mut pairs = 0u64;
    let mut incomplete = false;
    let mut try_pair = |x: u64, y: u64, pairs: &mut u64| -> Result<Option<Ladder>> {
        *pairs += 1;
        let side = (0..n)
            .map(|v| match (x >> v & 1, y >> v & 1) {
                (1, _) => crate::flow::Side::Source,
                (_, 1) => crate::flow::Side::Sink,
                _ => crate::flow::Side::Free,
            })
            .collect::<Vec<_>>();
        if vertex_flow_count(g, &side, k) < k {
            return Ok(None);
        }
        match fat_rungs(&mg, x, y, k, m) {
            RungSearch::Found(rs) => Ok(Some(assemble_ladder(g, &mg, x, y, rs, m)?)),
            RungSearch::Absent => Ok(None),
            RungSearch::Incomplete => {
                incomplete = true;
                Ok(None)
            }
        }
    };

    // seeds: geodesic poles, longest first
    let mut seeds: Vec<u64> = Vec::new();
    for a in 0..n {
        for b in a..n {
            seeds.push(geodesic(g, a, b).iter().fold(0, |s, &v| s | 1 << v));
        }
    }
    seeds.sort_by(|p, q| q.count_ones().cmp(&p.count_ones()).then(p.cmp(q)));
    seeds.dedup();
    let seed_balls: Vec<u64> = seeds.iter().map(|&s| ball(&mg, s, m)).collect();
    // each seed against the few longest seeds clear of its ball
    for i in 0..seeds.len() {
        let partners = (0..seeds.len())
            .filter(|&j| j != i && seed_balls[i] & seeds[j] == 0)
            .take(SEED_PARTNERS);
        for j in partners.collect::<Vec<_>>() {
            if let Some(l) = try_pair(seeds[i], seeds[j], &mut pairs)? {
                return Ok((Search::Found(l), pairs));
            }
        }
    }
    let mut seed_pairs = 0u64;
    'seeds: for i in 0..seeds.len() {
        for j in i + 1..seeds.len() {
            if seed_balls[i] & seeds[j] != 0 {
                continue;
            }
            seed_pairs += 1;
            if seed_pairs > SEED_PAIR_CAP {
                break 'seeds;
            }
            if let Some(l) = try_pair(seeds[i], seeds[j], &mut pairs)? {
                return Ok((Search::Found(l), pairs));
            }
        }
    }

    if n > FAT_MAX_VERTICES {
        return Ok((Search::Unknown { pairs_examined: pairs }, pairs));
    }
    let Some(subsets) = connected_subsets(&mg, budget.max_subsets) else {
        return Ok((Search::Unknown { pairs_examined: pairs }, pairs));
    };
    let mut scanned = 0u64;
    for (i, &x) in subsets.iter().enumerate() {
        let near = ball(&mg, x, m);
        for &y in &subsets[i + 1..] {
            if near & y != 0 {
                continue;
            }
            scanned += 1;
            if scanned > budget.max_pairs {
                return Ok((Search::Unknown { pairs_examined: pairs }, pairs));
            }
            if let Some(l) = try_pair(x, y, &mut pairs)? {
                return Ok((Search::Found(l), pairs));
            }
        }
    }
    let out = if incomplete { Search::Unknown { pairs_examined: pairs } } else { Search::None };
    Ok((out, pairs))
}

/// Searches for an `M`-fat ladder of width `k`.
///
/// Poles are tried first among pairs of geodesics, then over all pairs of
/// connected vertex sets at distance at least `M`. For each pole pair the
/// rungs are chosen among minimal induced connectors whose interiors are
/// pairwise `M` apart.
pub fn find_fat_ladder(g: &Multigraph, k: usize, m: usize, budget: &Budget) -> Result<Search<Ladder>> {
    fat_ladder_search(g, k, m, budget).map(|(s, _)| s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FatDecision {
    Yes,
    No,
    Unknown,
}

/// A pair `(X, Y)` with either the centers separating it or, for a no
/// answer, optionally the fat ladder whose poles it is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatWitness {
    pub x: VertexSet,
    pub y: VertexSet,
    pub radius: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centers: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Ladder>,
}

impl FatWitness {
    /// Re-checks the witness: pair admissibility and, when centers are
    /// given, that they avoid both sides and separate them.
    pub fn validate(&self, g: &Multigraph) -> Result<bool> {
        if !g.induces_connected(&self.x) || !g.induces_connected(&self.y) || !self.x.is_disjoint(&self.y) {
            return Ok(false);
        }
        if g.set_distance(&self.x, &self.y)? < self.radius {
            return Ok(false);
        }
        if let Some(s) = &self.centers {
            if !s.is_disjoint(&self.x) || !s.is_disjoint(&self.y) {
                return Ok(false);
            }
            let cut = crate::flow::CutCertificate {
                kind: crate::flow::CutKind::FatCut,
                members: s.members().to_vec(),
                radius: Some(self.radius),
            };
            return cut.separates(g, &self.x, &self.y);
        }
        if let Some(l) = &self.ladder {
            return Ok(verify_fat_ladder(g, l, self.radius)?.ok && l.pole_x == self.x && l.pole_y == self.y);
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatReport {
    pub decision: FatDecision,
    pub witness: Option<FatWitness>,
    pub pairs_examined: u64,
    pub center_sets: usize,
    /// Whether the yes/no answer came from a complete scan (yes) or a
    /// checked witness pair (no).
    pub exact: bool,
}

struct Centers {
    sets: Vec<(u64, u64)>,
    recent: Vec<usize>,
}

impl Centers {
    fn new(mg: &MaskGraph, m: usize, max_size: usize) -> Option<Self> {
        let balls = mg.balls(m);
        let mut sets = Vec::new();
        let mut combo: Vec<usize> = Vec::new();
        fn rec(
            n: usize,
            max: usize,
            start: usize,
            combo: &mut Vec<usize>,
            balls: &[u64],
            out: &mut Vec<(u64, u64)>,
        ) -> bool {
            if !combo.is_empty() {
                if out.len() >= CENTER_SET_CAP {
                    return false;
                }
                let s = combo.iter().fold(0u64, |a, &v| a | 1 << v);
                let nb = combo.iter().fold(0u64, |a, &v| a | balls[v]);
                out.push((s, nb));
            }
            if combo.len() == max {
                return true;
            }
            for v in start..n {
                combo.push(v);
                let ok = rec(n, max, v + 1, combo, balls, out);
                combo.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        if !rec(mg.n, max_size, 0, &mut combo, &balls, &mut sets) {
            return None;
        }
        // smaller center sets first, then lexicographic
        sets.sort_by_key(|&(s, _)| (s.count_ones(), bits(s).collect::<Vec<_>>()));
        Some(Centers { sets, recent: Vec::new() })
    }

    /// A center set separating the pair, preferring recent winners.
    fn find(&mut self, mg: &MaskGraph, x: u64, y: u64) -> Option<u64> {
        let xy = x | y;
        for r in 0..self.recent.len() {
            let (s, nb) = self.sets[self.recent[r]];
            if s & xy == 0 && separated(mg, nb, x, y) {
                let idx = self.recent.remove(r);
                self.recent.insert(0, idx);
                return Some(s);
            }
        }
        for (idx, &(s, nb)) in self.sets.iter().enumerate() {
            if s & xy == 0 && separated(mg, nb, x, y) {
                self.recent.insert(0, idx);
                self.recent.truncate(8);
                return Some(s);
            }
        }
        None
    }
}

/// Decides whether the graph is `M`-fat `n`-bottlenecked.
///
/// A no answer is certified by a pair that no set of at most `n` centers
/// separates; candidate pairs come first from fat `(n+1)`-ladders and far
/// vertex pairs. A yes answer needs a complete scan of all connected pairs
/// at distance at least `M`, done only within the exhaustive caps.
pub fn decide_fat_bottleneck(g: &Multigraph, m: usize, n: usize, budget: &Budget) -> Result<FatReport> {
    if n == 0 {
        return Err(Error::invalid("center count must be at least 1"));
    }
    let mg = check_common(g)?;
    let nv = mg.n;
    let unknown = |pairs: u64, center_sets: usize| FatReport {
        decision: FatDecision::Unknown,
        witness: None,
        pairs_examined: pairs,
        center_sets,
        exact: false,
    };
    let Some(mut centers) = Centers::new(&mg, m, n.min(nv)) else {
        return Ok(unknown(0, CENTER_SET_CAP));
    };
    let center_count = centers.sets.len();
    let mut pairs = 0u64;
    let no = |x: u64, y: u64, ladder: Option<Ladder>, pairs: u64| FatReport {
        decision: FatDecision::No,
        witness: Some(FatWitness {
            x: set_of(x),
            y: set_of(y),
            radius: m,
            centers: None,
            ladder,
        }),
        pairs_examined: pairs,
        center_sets: center_count,
        exact: true,
    };

    // candidate pairs from a fat (n+1)-ladder
    let ladder_budget = Budget { max_pairs: 0, ..*budget };
    if let (Search::Found(l), _) = fat_ladder_search(g, n + 1, m, &ladder_budget)? {
        let (x, y) = (mask_of(&l.pole_x), mask_of(&l.pole_y));
        pairs += 1;
        if centers.find(&mg, x, y).is_none() {
            return Ok(no(x, y, Some(l), pairs));
        }
    }
    // far vertex pairs
    let mut vertex_pairs = Vec::new();
    for u in 0..nv {
        let dist = g.distances_from(&[u]);
        for v in u + 1..nv {
            if dist[v] >= m.max(1) {
                vertex_pairs.push((dist[v], u, v));
            }
        }
    }
    vertex_pairs.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    for &(_, u, v) in &vertex_pairs {
        pairs += 1;
        if centers.find(&mg, 1 << u, 1 << v).is_none() {
            return Ok(no(1 << u, 1 << v, None, pairs));
        }
    }

    if nv > FAT_MAX_VERTICES || m > FAT_MAX_RADIUS || n > FAT_MAX_CENTERS {
        return Ok(unknown(pairs, center_count));
    }
    let Some(subsets) = connected_subsets(&mg, budget.max_subsets) else {
        return Ok(unknown(pairs, center_count));
    };
    let mut first_witness: Option<FatWitness> = None;
    let mut scanned = 0u64;
    for (i, &x) in subsets.iter().enumerate() {
        let near = ball(&mg, x, m) | x;
        for &y in &subsets[i + 1..] {
            if near & y != 0 {
                continue;
            }
            scanned += 1;
            pairs += 1;
            if scanned > budget.max_pairs {
                return Ok(unknown(pairs, center_count));
            }
            match centers.find(&mg, x, y) {
                None => return Ok(no(x, y, None, pairs)),
                Some(s) if first_witness.is_none() => {
                    first_witness = Some(FatWitness {
                        x: set_of(x),
                        y: set_of(y),
                        radius: m,
                        centers: Some(set_of(s)),
                        ladder: None,
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok(FatReport {
        decision: FatDecision::Yes,
        witness: first_witness,
        pairs_examined: pairs,
        center_sets: center_count,
        exact: true,
    })
}

/// Precondition failures of the ladder construction, one per proof step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CmtError {
    #[error("B = {b} must exceed 2(M+m+1) = {required}")]
    BoundTooSmall { b: usize, required: usize },
    #[error("the center set R is empty")]
    CenterCount,
    #[error("center {center} lies in X or Y")]
    CenterInPole { center: usize },
    #[error("pole {which} is empty or not connected")]
    PoleNotConnected { which: char },
    #[error("poles at distance {distance}, need at least B = {required}")]
    PolesTooClose { distance: usize, required: usize },
    #[error("N_m(R) does not separate X from Y")]
    NotSeparating,
    #[error("centers {a} and {b} at distance {distance}, need more than 2(B-m) = {required}")]
    CentersTooClose {
        a: usize,
        b: usize,
        distance: usize,
        required: usize,
    },
    #[error("{count} balls of radius B around {centers:?} separate X from Y")]
    BallsSeparate { count: usize, centers: Vec<usize> },
    #[error("rung around center {center} does not reach both poles")]
    MissingRung { center: usize },
    #[error("constructed ladder is not fat: {0}")]
    FatnessLost(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmtOutcome {
    pub ladder: Ladder,
    /// Center sets of size `|R| - 1` checked against the B-ball hypothesis.
    pub spot_checks: usize,
    /// Whether every center set of that size was checked.
    pub spot_check_complete: bool,
    /// Components of `N_{m+M+1}(R)` that contain no center.
    pub leftover_components: usize,
}

/// Separation with the no-swallow rule on arbitrary graphs.
fn separates_sets(g: &Multigraph, removed: &VertexSet, x: &VertexSet, y: &VertexSet) -> bool {
    let xr = x.difference(removed);
    let yr = y.difference(removed);
    if xr.is_empty() || yr.is_empty() {
        return false;
    }
    g.components_excluding(removed)
        .iter()
        .all(|c| c.is_disjoint(&xr) || c.is_disjoint(&yr))
}

fn cmt_fail<T>(e: CmtError) -> Result<T> {
    Err(Error::Cmt(e))
}

/// Builds an `M`-fat ladder with one rung per center of `R`, following the
/// proof of the coarse Menger-type theorem: rungs are the components of
/// `N_{m+M+1}(R)`, and each pole is `X` (resp. `Y`) together with the
/// components of `G \ N_{m+M}(R)` it meets.
///
/// `spot_checks` bounds how many center sets of size `|R| - 1` are tested
/// against the hypothesis that no such set of `B`-balls separates `X` from `Y`.
#[allow(clippy::too_many_arguments)]
pub fn cmt_construct_ladder(
    g: &Multigraph,
    x: &VertexSet,
    y: &VertexSet,
    r: &VertexSet,
    m_small: usize,
    m_fat: usize,
    b: usize,
    spot_checks: usize,
) -> Result<CmtOutcome> {
    g.ensure_loopless()?;
    g.ensure_connected()?;
    let required = 2 * (m_fat + m_small + 1);
    if b <= required {
        return cmt_fail(CmtError::BoundTooSmall { b, required });
    }
    if r.is_empty() {
        return cmt_fail(CmtError::CenterCount);
    }
    for (set, which) in [(x, 'X'), (y, 'Y')] {
        if set.is_empty() || set.validate(g).is_err() || !g.induces_connected(set) {
            return cmt_fail(CmtError::PoleNotConnected { which });
        }
    }
    r.validate(g)?;
    if let Some(c) = r.iter().find(|&c| x.contains(c) || y.contains(c)) {
        return cmt_fail(CmtError::CenterInPole { center: c });
    }
    let d = g.set_distance(x, y)?;
    if d < b {
        return cmt_fail(CmtError::PolesTooClose { distance: d, required: b });
    }
    if !separates_sets(g, &g.neighborhood(r, m_small)?, x, y) {
        return cmt_fail(CmtError::NotSeparating);
    }
    let centers = r.members();
    let far = 2 * (b - m_small);
    for (i, &a) in centers.iter().enumerate() {
        let dist = g.distances_from(&[a]);
        for &c in &centers[i + 1..] {
            if dist[c] <= far {
                return cmt_fail(CmtError::CentersTooClose {
                    a,
                    b: c,
                    distance: dist[c],
                    required: far,
                });
            }
        }
    }

    // spot-check: no |R|-1 balls of radius B separate X from Y
    let count = centers.len() - 1;
    let pool: Vec<usize> = (0..g.vertex_count()).filter(|&v| !x.contains(v) && !y.contains(v)).collect();
    let mut checked = 0usize;
    let mut complete = true;
    if count > 0 {
        let mut idx: Vec<usize> = (0..count).collect();
        loop {
            if checked >= spot_checks {
                complete = false;
                break;
            }
            if idx.iter().any(|&i| i >= pool.len()) {
                break;
            }
            let s = VertexSet::new(idx.iter().map(|&i| pool[i]));
            checked += 1;
            if separates_sets(g, &g.neighborhood(&s, b)?, x, y) {
                return cmt_fail(CmtError::BallsSeparate {
                    count,
                    centers: s.members().to_vec(),
                });
            }
            // next combination
            let mut pos = count;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if idx[pos] < pool.len() - (count - pos) {
                    idx[pos] += 1;
                    for q in pos + 1..count {
                        idx[q] = idx[q - 1] + 1;
                    }
                    pos = usize::MAX;
                    break;
                }
            }
            if pos != usize::MAX {
                break;
            }
        }
    }

    // rungs: the component of N_{m+M+1}(R) around each center
    let rung_zone = g.neighborhood(r, m_small + m_fat + 1)?;
    let outside_zone = VertexSet::new((0..g.vertex_count()).filter(|&v| !rung_zone.contains(v)));
    let zone_components = g.components_excluding(&outside_zone);
    let mut leftover = 0;
    let mut rung_sets: Vec<Option<VertexSet>> = vec![None; centers.len()];
    for comp in zone_components {
        let inside: Vec<usize> = (0..centers.len()).filter(|&i| comp.contains(centers[i])).collect();
        match inside.as_slice() {
            [] => leftover += 1,
            [i] => rung_sets[*i] = Some(comp),
            [i, j, ..] => {
                let (a, c) = (centers[*i], centers[*j]);
                return cmt_fail(CmtError::CentersTooClose {
                    a,
                    b: c,
                    distance: g.distances_from(&[a])[c],
                    required: far,
                });
            }
        }
    }

    // poles: X or Y plus the components of G \ N_{m+M}(R) they meet
    let core = g.neighborhood(r, m_small + m_fat)?;
    let pole_components = g.components_excluding(&core);
    let grow = |side: &VertexSet| {
        let mut out = side.clone();
        for c in &pole_components {
            if !c.is_disjoint(side) {
                out = out.union(c);
            }
        }
        out
    };
    let (px, py) = (grow(x), grow(y));

    let mut rungs = Vec::with_capacity(centers.len());
    for (i, set) in rung_sets.into_iter().enumerate() {
        let set = set.expect("every center lies in its own zone component");
        let inner = set.difference(&px).difference(&py);
        let path = rung_through(g, &px, &py, &inner).ok_or(CmtError::MissingRung { center: centers[i] })?;
        rungs.push(path);
    }
    let ladder = Ladder {
        pole_x: px,
        pole_y: py,
        rungs,
        fatness: Some(m_fat),
    };
    let check = verify_fat_ladder(g, &ladder, m_fat)?;
    if let Some(v) = check.violation {
        return cmt_fail(CmtError::FatnessLost(alloc::format!("{v}")));
    }
    Ok(CmtOutcome {
        ladder,
        spot_checks: checked,
        spot_check_complete: complete,
        leftover_components: leftover,
    })
}

/// Shortest path from `x` to `y` whose interior lies in `inner`.
fn rung_through(g: &Multigraph, x: &VertexSet, y: &VertexSet, inner: &VertexSet) -> Option<PathWitness> {
    let n = g.vertex_count();
    let mut parent = vec![UNREACHABLE; n];
    let mut queue = alloc::collections::VecDeque::new();
    for v in x.iter() {
        parent[v] = v;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if parent[w] != UNREACHABLE {
                continue;
            }
            if y.contains(w) {
                // only accept interiors inside the rung set
                if x.contains(v) && !inner.is_empty() {
                    continue;
                }
                let mut path = vec![w, v];
                let mut cur = v;
                while parent[cur] != cur {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return PathWitness::along(g, path).ok();
            }
            if inner.contains(w) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Outcome of one sweep cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub size: i64,
    pub radius: usize,
    pub vertices: usize,
    /// "found", "none" or "unknown" for a ladder of the requested width.
    pub ladder: String,
    /// Widest fat ladder found, scanning widths upward from 1.
    pub max_width: usize,
    pub decision: FatDecision,
    /// Pole pairs and separation pairs examined (deterministic work measure).
    pub work: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: FamilySpec,
    pub size_param: String,
    pub width: usize,
    pub rows: Vec<SweepRow>,
}

/// One `(size, M)` cell: widest fat ladder up to `k`, and the fat
/// bottleneck decision at `k - 1` centers.
pub fn sweep_cell(g: &Multigraph, size: i64, m: usize, k: usize, budget: &Budget) -> SweepRow {
    let mut work = 0u64;
    let mut max_width = 0;
    let mut ladder = "unknown";
    for w in 1..=k {
        match fat_ladder_search(g, w, m, budget) {
            Ok((Search::Found(_), p)) => {
                work += p;
                max_width = w;
                if w == k {
                    ladder = "found";
                }
            }
            Ok((Search::None, p)) => {
                work += p;
                ladder = "none";
                break;
            }
            Ok((Search::Unknown { .. }, p)) => {
                work += p;
                break;
            }
            Err(_) => break,
        }
    }
    let decision = match decide_fat_bottleneck(g, m, k.saturating_sub(1).max(1), budget) {
        Ok(r) => {
            work += r.pairs_examined;
            r.decision
        }
        Err(_) => FatDecision::Unknown,
    };
    SweepRow {
        size,
        radius: m,
        vertices: g.vertex_count(),
        ladder: ladder.into(),
        max_width,
        decision,
        work,
    }
}

/// The instances of a family with `size_param` set to each size.
pub fn sweep_instances(family: &FamilySpec, size_param: &str, sizes: &[i64]) -> Result<Vec<(i64, Multigraph)>> {
    sizes
        .iter()
        .map(|&s| {
            let mut spec = family.clone();
            spec.params.insert(size_param.into(), s);
            generate(&spec).map(|g| (s, g))
        })
        .collect()
}

/// Fat-ladder presence and fat bottlenecking over a grid of instance sizes
/// and radii. Cells that run out of budget are recorded as unknown.
pub fn asymptotic_sweep(
    family: &FamilySpec,
    size_param: &str,
    k: usize,
    radii: &[usize],
    sizes: &[i64],
    budget: &Budget,
) -> Result<SweepReport> {
    if k == 0 {
        return Err(Error::invalid("ladder width must be at least 1"));
    }
    let mut rows = Vec::new();
    for (s, g) in sweep_instances(family, size_param, sizes)? {
        for &m in radii {
            rows.push(sweep_cell(&g, s, m, k, budget));
        }
    }
    Ok(assemble_sweep(family, size_param, k, rows))
}

/// Sorts rows by `(size, M)` so the report does not depend on cell order.
pub fn assemble_sweep(family: &FamilySpec, size_param: &str, k: usize, rows: Vec<SweepRow>) -> SweepReport {
    let mut keyed: BTreeMap<(i64, usize), SweepRow> = BTreeMap::new();
    for r in rows {
        keyed.insert((r.size, r.radius), r);
    }
    SweepReport {
        family: family.clone(),
        size_param: size_param.into(),
        width: k,
        rows: keyed.into_values().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn budget() -> Budget {
        Budget {
            max_vertices: 10,
            max_pairs: 2_000_000,
            max_subsets: 1 << 16,
        }
    }

    #[test]
    fn c6_two_arc_ladder_is_two_fat() {
        let g = cycle(6);
        let l = find_dipole_ladder(&g, 2, &budget()).unwrap().found().unwrap();
        assert!(verify_fat_ladder(&g, &l, 2).unwrap().ok);
        let check = verify_fat_ladder(&g, &l, 4).unwrap();
        assert_eq!(check.violation, Some(FatViolation::PolesTooClose { distance: 3 }));
    }

    #[test]
    fn fat_ladder_in_long_cycle() {
        let g = cycle(24);
        let l = find_fat_ladder(&g, 2, 3, &budget()).unwrap().found().unwrap();
        assert!(verify_fat_ladder(&g, &l, 3).unwrap().ok);
        assert!(find_fat_ladder(&g, 3, 3, &budget()).unwrap().is_none());
        assert!(find_fat_ladder(&path(8), 2, 2, &budget()).unwrap().is_none());
    }

    #[test]
    fn adjacent_pairs_cannot_be_separated_at_radius_one() {
        let r = decide_fat_bottleneck(&path(9), 1, 1, &budget()).unwrap();
        assert_eq!(r.decision, FatDecision::No);
        let w = r.witness.unwrap();
        assert!(w.validate(&path(9)).unwrap());
        assert_eq!(path(9).set_distance(&w.x, &w.y).unwrap(), 1);
    }

    #[test]
    fn small_diameter_is_vacuously_bottlenecked() {
        let r = decide_fat_bottleneck(&path(4), 4, 1, &budget()).unwrap();
        assert_eq!((r.decision, r.witness), (FatDecision::Yes, None));
    }

    #[test]
    fn swallowing_a_side_does_not_separate() {
        // the only center between 0 and 2 in C4 swallows both
        let r = decide_fat_bottleneck(&cycle(4), 2, 1, &budget()).unwrap();
        assert_eq!(r.decision, FatDecision::No);
        let r = decide_fat_bottleneck(&cycle(12), 2, 2, &budget()).unwrap();
        assert_eq!(r.decision, FatDecision::No);
        assert!(r.witness.unwrap().validate(&cycle(12)).unwrap());
    }

    #[test]
    fn clique_search_is_lexicographic() {
        // 0-1 compatible, 1-2 compatible, 0-2 not
        let compat = vec![vec![0b010], vec![0b101], vec![0b010]];
        assert_eq!(compatible_clique(&compat, 2), Some(vec![0, 1]));
        assert_eq!(compatible_clique(&compat, 3), None);
    }
}
