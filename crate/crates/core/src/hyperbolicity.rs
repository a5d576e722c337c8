//! Hyperbolicity of weaves from their diagrams.
//!
//! An `m x n` weave with `m, n >= 1` is hyperbolic exactly when it is not
//! layered and no two parallel components (same kind, equal crossing
//! functions) can be made adjacent by interchanges. Both obstructions are
//! decided combinatorially:
//!
//! * layering: the layer digraph, with an edge from the lower to the upper
//!   component at every crossing, is not strongly connected;
//! * parallel pairs: two equal crossing functions `f` can be brought
//!   together iff one of the two cyclic arcs between them holds only
//!   components comparable with `f`. Components can cross an endpoint only
//!   when comparable with `f`, and an all-comparable arc can always be
//!   swept out past one endpoint.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::diagram::{comparable_bits, ComponentId, CrossingMatrix, Kind, Move, MoveSequence};
use crate::error::{Result, WeaveError};
use crate::isotopy::{swap_neighbours, Orbit};
use crate::scc;

/// Volume of the regular ideal octahedron (3.6638 to four decimals).
pub const V_OCT: f64 = 3.663_862_376_708_876;

/// Crossing digraph on all `m + n` components. Warps are vertices
/// `0..m`, wefts `m..m + n`. Each crossing contributes one edge pointing
/// from the lower component to the upper one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDigraph {
    m: usize,
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl LayerDigraph {
    pub fn new(matrix: &CrossingMatrix) -> Self {
        let (m, n) = matrix.shape();
        let mut adj = vec![Vec::new(); m + n];
        for i in 0..m {
            for j in 0..n {
                if matrix.get(i, j) {
                    adj[m + j].push(i);
                } else {
                    adj[i].push(m + j);
                }
            }
        }
        LayerDigraph { m, n, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n
    }

    pub fn component(&self, v: usize) -> ComponentId {
        if v < self.m {
            ComponentId::warp(v)
        } else {
            ComponentId::weft(v - self.m)
        }
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// Edges as (lower, upper) pairs.
    pub fn edges(&self) -> Vec<(ComponentId, ComponentId)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(v, out)| out.iter().map(move |&w| (v, w)))
            .map(|(v, w)| (self.component(v), self.component(w)))
            .collect()
    }

    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        scc::tarjan(&self.adj)
    }

    /// Strongly connected components in a bottom-to-top topological order.
    ///
    /// Among the components available at each step the next one is chosen
    /// by `pick`, which receives the candidates as `(least member, size)`
    /// sorted ascending and the previously emitted component.
    fn ordered_components<F>(&self, mut pick: F) -> Vec<Vec<usize>>
    where
        F: FnMut(&[(ComponentId, usize)], Option<&[usize]>) -> usize,
    {
        let comps = self.strongly_connected_components();
        let mut owner = vec![0; self.vertex_count()];
        for (k, comp) in comps.iter().enumerate() {
            for &v in comp {
                owner[v] = k;
            }
        }
        let mut indegree = vec![0usize; comps.len()];
        let mut succ = vec![Vec::new(); comps.len()];
        for (v, out) in self.adj.iter().enumerate() {
            for &w in out {
                if owner[v] != owner[w] {
                    succ[owner[v]].push(owner[w]);
                    indegree[owner[w]] += 1;
                }
            }
        }
        let least = |k: usize| self.component(comps[k][0]);
        let mut ready: BinaryHeap<Reverse<(ComponentId, usize)>> = (0..comps.len())
            .filter(|&k| indegree[k] == 0)
            .map(|k| Reverse((least(k), k)))
            .collect();
        let mut order: Vec<Vec<usize>> = Vec::with_capacity(comps.len());
        while !ready.is_empty() {
            let mut candidates: Vec<(ComponentId, usize)> =
                ready.drain().map(|Reverse(x)| x).collect();
            candidates.sort_unstable();
            let view: Vec<(ComponentId, usize)> =
                candidates.iter().map(|&(c, k)| (c, comps[k].len())).collect();
            let chosen = pick(&view, order.last().map(|c| c.as_slice()));
            let (_, k) = candidates.remove(chosen);
            ready.extend(candidates.into_iter().map(Reverse));
            for &s in &succ[k] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.push(Reverse((least(s), s)));
                }
            }
            order.push(comps[k].clone());
        }
        order
    }
}

/// Layering verdict with its witness: the strongly connected components
/// of the layer digraph, bottom to top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerVerdict {
    pub layered: bool,
    pub layers: Vec<Vec<ComponentId>>,
}

impl LayerVerdict {
    /// Checks the witness against the diagram: the layers partition the
    /// components, and every crossing between two layers has the component
    /// of the higher layer on top.
    pub fn verify(&self, matrix: &CrossingMatrix) -> bool {
        let (m, n) = matrix.shape();
        let mut level_warp = vec![usize::MAX; m];
        let mut level_weft = vec![usize::MAX; n];
        for (level, layer) in self.layers.iter().enumerate() {
            for c in layer {
                let slot = match c.kind {
                    Kind::Warp => level_warp.get_mut(c.index),
                    Kind::Weft => level_weft.get_mut(c.index),
                };
                match slot {
                    Some(s) if *s == usize::MAX => *s = level,
                    _ => return false,
                }
            }
        }
        if level_warp.contains(&usize::MAX) || level_weft.contains(&usize::MAX) {
            return false;
        }
        if self.layered != (self.layers.len() >= 2) {
            return false;
        }
        (0..m).all(|i| {
            (0..n).all(|j| {
                let (a, b) = (level_warp[i], level_weft[j]);
                a == b || (a > b) == matrix.get(i, j)
            })
        })
    }
}

pub fn layer_digraph(matrix: &CrossingMatrix) -> LayerDigraph {
    LayerDigraph::new(matrix)
}

/// Decides layeredness. The layers are ordered bottom to top; ties between
/// incomparable components are broken by the least contained component.
pub fn is_layered(matrix: &CrossingMatrix) -> Result<LayerVerdict> {
    if matrix.m() + matrix.n() == 0 {
        return Err(WeaveError::Degenerate {
            required: "at least one component",
            m: 0,
            n: 0,
        });
    }
    let graph = LayerDigraph::new(matrix);
    let layers: Vec<Vec<ComponentId>> = graph
        .ordered_components(|_, _| 0)
        .into_iter()
        .map(|comp| comp.into_iter().map(|v| graph.component(v)).collect())
        .collect();
    Ok(LayerVerdict {
        layered: layers.len() >= 2,
        layers,
    })
}

/// Strong connectivity of the layer digraph by bit-parallel search,
/// without building the graph. Requires `m + n <= 128`.
pub fn is_strongly_connected(matrix: &CrossingMatrix) -> bool {
    let (m, n) = matrix.shape();
    let total = m + n;
    if total <= 1 {
        return true;
    }
    let all: u128 = if total == 128 {
        u128::MAX
    } else {
        (1u128 << total) - 1
    };
    // Bit v of a set is vertex v: warps 0..m, wefts m..m+n.
    // Out-neighbours of warp i: wefts with c(i, j) = 0; of weft j: warps
    // with c(i, j) = 1. In-neighbours swap the two conditions.
    let rows: Vec<u64> = matrix.row_words().to_vec();
    let cols = matrix.columns();
    let weft_set = |word: u64, wanted: bool| -> u128 {
        let mut s = 0u128;
        for j in 0..n {
            if ((word >> (n - 1 - j)) & 1 == 1) == wanted {
                s |= 1u128 << (m + j);
            }
        }
        s
    };
    let warp_set = |word: u64, wanted: bool| -> u128 {
        let mut s = 0u128;
        for i in 0..m {
            if ((word >> (m - 1 - i)) & 1 == 1) == wanted {
                s |= 1u128 << i;
            }
        }
        s
    };
    let out_warp: Vec<u128> = rows.iter().map(|&r| weft_set(r, false)).collect();
    let in_warp: Vec<u128> = rows.iter().map(|&r| weft_set(r, true)).collect();
    let out_weft: Vec<u128> = cols.iter().map(|&c| warp_set(c, true)).collect();
    let in_weft: Vec<u128> = cols.iter().map(|&c| warp_set(c, false)).collect();

    let reach = |warp_nbrs: &[u128], weft_nbrs: &[u128]| -> u128 {
        let mut seen = 1u128;
        let mut frontier = 1u128;
        while frontier != 0 {
            let mut next = 0u128;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= if v < m {
                    warp_nbrs[v]
                } else {
                    weft_nbrs[v - m]
                };
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    };
    reach(&out_warp, &out_weft) == all && reach(&in_warp, &in_weft) == all
}

/// Two equal same-kind components that interchanges can make adjacent,
/// with the moves that do it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelWitness {
    pub kind: Kind,
    /// Original 0-based positions of the two components.
    pub pair: (usize, usize),
    /// Positions strictly between the pair on the side that is cleared.
    /// Empty for witnesses found by the orbit oracle.
    pub arc: Vec<usize>,
    pub moves: MoveSequence,
    /// Positions of the pair after replaying `moves`.
    pub adjacent_at: (usize, usize),
}

impl ParallelWitness {
    /// Replays the moves and checks that the pair ends cyclically adjacent
    /// with equal crossing functions.
    pub fn verify(&self, matrix: &CrossingMatrix) -> bool {
        let len = matrix.len_of(self.kind);
        let (p, q) = self.pair;
        if p >= len || q >= len || p == q {
            return false;
        }
        let vector = |m: &CrossingMatrix, k: usize| match self.kind {
            Kind::Warp => m.row(k),
            Kind::Weft => m.column(k),
        };
        if vector(matrix, p) != vector(matrix, q) {
            return false;
        }
        let Ok(end) = self.moves.replay(matrix) else {
            return false;
        };
        let pos = track_positions(&self.moves, self.kind, len);
        let (a, b) = (pos[p], pos[q]);
        (a, b) == self.adjacent_at
            && cyclically_adjacent(a, b, len)
            && vector(&end, a) == vector(&end, b)
    }
}

fn cyclically_adjacent(a: usize, b: usize, len: usize) -> bool {
    len >= 2 && a != b && ((a + 1) % len == b || (b + 1) % len == a)
}

/// Where each original position of `kind` ends after `moves`.
fn track_positions(moves: &MoveSequence, kind: Kind, len: usize) -> Vec<usize> {
    // at[k] = current position of original component k
    let mut at: Vec<usize> = (0..len).collect();
    for mv in moves.iter() {
        match (*mv, kind) {
            (Move::Translate { a, .. }, Kind::Warp) | (Move::Translate { b: a, .. }, Kind::Weft) => {
                for p in at.iter_mut() {
                    *p = (*p + len - a % len) % len;
                }
            }
            (Move::SwapWarps(i), Kind::Warp) | (Move::SwapWefts(i), Kind::Weft) => {
                let k = (i + 1) % len;
                for p in at.iter_mut() {
                    if *p == i {
                        *p = k;
                    } else if *p == k {
                        *p = i;
                    }
                }
            }
            _ => {}
        }
    }
    at
}

/// The arc criterion on one axis. Yields `(p, q, arc, forward)` for every
/// pair `p < q` with equal vectors and a clearable arc; `forward` is true
/// when the arc runs from `p` up to `q`.
fn clearable_pairs(vectors: &[u64]) -> Vec<(usize, usize, Vec<usize>, bool)> {
    let len = vectors.len();
    let mut out = Vec::new();
    for p in 0..len {
        for q in p + 1..len {
            let f = vectors[p];
            if vectors[q] != f {
                continue;
            }
            let forward: Vec<usize> = (p + 1..q).collect();
            if forward.iter().all(|&k| comparable_bits(vectors[k], f)) {
                out.push((p, q, forward, true));
                continue;
            }
            let backward: Vec<usize> = (q + 1..len).chain(0..p).collect();
            if backward.iter().all(|&k| comparable_bits(vectors[k], f)) {
                out.push((p, q, backward, false));
            }
        }
    }
    out
}

fn witness_from_arc(kind: Kind, len: usize, p: usize, q: usize, arc: Vec<usize>, forward: bool) -> ParallelWitness {
    let swap = |pos: usize| match kind {
        Kind::Warp => Move::SwapWarps(pos),
        Kind::Weft => Move::SwapWefts(pos),
    };
    // Sweep the arc past the endpoint it starts at: forward arcs move p up
    // towards q, backward arcs move q up (cyclically) towards p.
    let (mover, start) = if forward { (p, p) } else { (q, q) };
    let moves: MoveSequence = (0..arc.len()).map(|k| swap((start + k) % len)).collect();
    let end = (mover + arc.len()) % len;
    let adjacent_at = if forward { (end, q) } else { (p, end) };
    ParallelWitness {
        kind,
        pair: (p, q),
        arc,
        moves,
        adjacent_at,
    }
}

/// First parallel pair that interchanges can make adjacent, warps before
/// wefts, by the arc criterion. Polynomial in `m` and `n`.
pub fn parallel_pair_reachable(matrix: &CrossingMatrix) -> Option<ParallelWitness> {
    for kind in [Kind::Warp, Kind::Weft] {
        let vectors = match kind {
            Kind::Warp => matrix.row_words().to_vec(),
            Kind::Weft => matrix.columns(),
        };
        if let Some((p, q, arc, forward)) = clearable_pairs(&vectors).into_iter().next() {
            return Some(witness_from_arc(kind, vectors.len(), p, q, arc, forward));
        }
    }
    None
}

/// Presence-only version of [`parallel_pair_reachable`].
pub fn has_reachable_parallel_pair(matrix: &CrossingMatrix) -> bool {
    fn axis(v: &[u64]) -> bool {
        let len = v.len();
        (0..len).any(|p| {
            (p + 1..len).any(|q| {
                let f = v[p];
                v[q] == f
                    && ((p + 1..q).all(|k| comparable_bits(v[k], f))
                        || (q + 1..len).chain(0..p).all(|k| comparable_bits(v[k], f)))
            })
        })
    }
    axis(matrix.row_words()) || axis(&matrix.columns())
}

fn adjacent_equal(matrix: &CrossingMatrix) -> Option<(Kind, usize, usize)> {
    for kind in [Kind::Warp, Kind::Weft] {
        let vectors = match kind {
            Kind::Warp => matrix.row_words().to_vec(),
            Kind::Weft => matrix.columns(),
        };
        let len = vectors.len();
        let positions = if len == 2 { 1 } else if len < 2 { 0 } else { len };
        for i in 0..positions {
            let k = (i + 1) % len;
            if vectors[i] == vectors[k] {
                return Some((kind, i, k));
            }
        }
    }
    None
}

/// Brute-force counterpart of [`parallel_pair_reachable`]: breadth-first
/// search over the interchange orbit, stopping at the first state with two
/// cyclically adjacent equal rows or columns.
pub fn parallel_pair_oracle(matrix: &CrossingMatrix, cap: usize) -> Result<Option<ParallelWitness>> {
    let (orbit, hit) = Orbit::explore(matrix, cap, swap_neighbours, |s| adjacent_equal(s).is_some())?;
    let Some(id) = hit else {
        return Ok(None);
    };
    let state = &orbit.members()[id];
    let (kind, a, b) = adjacent_equal(state).expect("accepted state");
    let moves = orbit.path_to(state).expect("member");
    let len = matrix.len_of(kind);
    let pos = track_positions(&moves, kind, len);
    let original = |at: usize| pos.iter().position(|&x| x == at).expect("permutation");
    let (oa, ob) = (original(a), original(b));
    let (pair, adjacent_at) = if oa < ob {
        ((oa, ob), (a, b))
    } else {
        ((ob, oa), (b, a))
    };
    Ok(Some(ParallelWitness {
        kind,
        pair,
        arc: Vec::new(),
        moves,
        adjacent_at,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperbolicityVerdict {
    Hyperbolic,
    NotHyperbolicLayered(LayerVerdict),
    NotHyperbolicParallel(ParallelWitness),
    /// Weaves with no warps or no wefts.
    NotApplicable,
}

impl HyperbolicityVerdict {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, HyperbolicityVerdict::Hyperbolic)
    }

    /// Short machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            HyperbolicityVerdict::Hyperbolic => "hyperbolic",
            HyperbolicityVerdict::NotHyperbolicLayered(_) => "layered",
            HyperbolicityVerdict::NotHyperbolicParallel(_) => "parallel",
            HyperbolicityVerdict::NotApplicable => "not_applicable",
        }
    }

    /// JSON verdict:
    /// `{verdict, witness: {kind, indices, moves, layers}, volume_upper_bound}`
    /// with 1-based indices.
    pub fn to_json(&self, matrix: &CrossingMatrix) -> Value {
        let witness = match self {
            HyperbolicityVerdict::NotHyperbolicLayered(v) => json!({
                "kind": "layered",
                "indices": [],
                "moves": [],
                "layers": v.layers.iter()
                    .map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }),
            HyperbolicityVerdict::NotHyperbolicParallel(w) => json!({
                "kind": w.kind,
                "indices": [w.pair.0 + 1, w.pair.1 + 1],
                "arc": w.arc.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "moves": w.moves,
                "layers": [],
            }),
            _ => Value::Null,
        };
        json!({
            "verdict": self.tag(),
            "witness": witness,
            "volume_upper_bound": volume_upper_bound(matrix),
        })
    }
}

impl fmt::Display for HyperbolicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperbolicityVerdict::Hyperbolic => f.write_str("hyperbolic"),
            HyperbolicityVerdict::NotHyperbolicLayered(_) => f.write_str("not hyperbolic: layered"),
            HyperbolicityVerdict::NotHyperbolicParallel(_) => f.write_str("not hyperbolic: parallel"),
            HyperbolicityVerdict::NotApplicable => f.write_str("not applicable"),
        }
    }
}

pub fn is_hyperbolic(matrix: &CrossingMatrix) -> HyperbolicityVerdict {
    if matrix.is_degenerate() {
        return HyperbolicityVerdict::NotApplicable;
    }
    let layering = is_layered(matrix).expect("nondegenerate");
    if layering.layered {
        return HyperbolicityVerdict::NotHyperbolicLayered(layering);
    }
    match parallel_pair_reachable(matrix) {
        Some(w) => HyperbolicityVerdict::NotHyperbolicParallel(w),
        None => HyperbolicityVerdict::Hyperbolic,
    }
}

/// Allocation-light hyperbolicity test used by the census.
pub fn hyperbolic_flag(matrix: &CrossingMatrix) -> bool {
    !matrix.is_degenerate() && is_strongly_connected(matrix) && !has_reachable_parallel_pair(matrix)
}

/// Hyperbolic weaves admit a cone structure of angle pi along the weave,
/// so this coincides with hyperbolicity.
pub fn is_pi_hyperbolic(matrix: &CrossingMatrix) -> bool {
    is_hyperbolic(matrix).is_hyperbolic()
}

/// No cyclically adjacent pair of warps or of wefts is comparable. Implies
/// hyperbolicity. Needs `m, n >= 2`.
pub fn no_adjacent_comparable(matrix: &CrossingMatrix) -> Result<bool> {
    let (m, n) = matrix.shape();
    if m < 2 || n < 2 {
        return Err(WeaveError::Degenerate {
            required: "at least two warps and two wefts",
            m,
            n,
        });
    }
    Ok(no_adjacent_comparable_unchecked(matrix))
}

pub(crate) fn no_adjacent_comparable_unchecked(matrix: &CrossingMatrix) -> bool {
    let rows = matrix.row_words();
    let cols = matrix.columns();
    let clean = |v: &[u64]| (0..v.len()).all(|i| !comparable_bits(v[i], v[(i + 1) % v.len()]));
    clean(rows) && clean(&cols)
}

/// `mn * V_oct`, an upper bound for the hyperbolic volume of the weave.
pub fn volume_upper_bound(matrix: &CrossingMatrix) -> f64 {
    volume_bound(matrix.m(), matrix.n())
}

pub fn volume_bound(m: usize, n: usize) -> f64 {
    (m * n) as f64 * V_OCT
}

/// A strand of a piece: an original component, or the core of a collapsed
/// parallel family (by family id).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strand {
    Component(ComponentId),
    Family(usize),
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strand::Component(c) => c.fmt(f),
            Strand::Family(k) => write!(f, "family{}", k + 1),
        }
    }
}

impl Serialize for Strand {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn serialize_matrix<S: serde::Serializer>(m: &CrossingMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum JsjPiece {
    /// A sub-weave with no layering and no reachable parallel pair.
    HyperbolicWeave {
        #[serde(serialize_with = "serialize_matrix")]
        matrix: CrossingMatrix,
        warps: Vec<Strand>,
        wefts: Vec<Strand>,
    },
    /// An `m x 0` or `0 x n` weave.
    AxisOnlyWeave { kind: Kind, strands: Vec<Strand> },
    /// `k >= 2` parallel strands in a solid torus; outside it they are
    /// replaced by the single strand `family{id}`.
    SolidTorusParallelFamily {
        id: usize,
        kind: Kind,
        members: Vec<Strand>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsjReport {
    pub pieces: Vec<JsjPiece>,
}

impl JsjReport {
    /// Original components across all pieces, sorted, with multiplicity.
    pub fn original_components(&self) -> Vec<ComponentId> {
        let mut out: Vec<ComponentId> = self
            .pieces
            .iter()
            .flat_map(|p| match p {
                JsjPiece::HyperbolicWeave { warps, wefts, .. } => {
                    warps.iter().chain(wefts).copied().collect::<Vec<_>>()
                }
                JsjPiece::AxisOnlyWeave { strands, .. } => strands.clone(),
                JsjPiece::SolidTorusParallelFamily { members, .. } => members.clone(),
            })
            .filter_map(|s| match s {
                Strand::Component(c) => Some(c),
                Strand::Family(_) => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Every family core appears in exactly one piece other than its own.
    pub fn families_consistent(&self) -> bool {
        let ids: Vec<usize> = self
            .pieces
            .iter()
            .filter_map(|p| match p {
                JsjPiece::SolidTorusParallelFamily { id, .. } => Some(*id),
                _ => None,
            })
            .collect();
        let mut uses = vec![0usize; ids.len()];
        for p in &self.pieces {
            let strands: Vec<Strand> = match p {
                JsjPiece::HyperbolicWeave { warps, wefts, .. } => {
                    warps.iter().chain(wefts).copied().collect()
                }
                JsjPiece::AxisOnlyWeave { strands, .. } => strands.clone(),
                JsjPiece::SolidTorusParallelFamily { members, .. } => members.clone(),
            };
            for s in strands {
                if let Strand::Family(k) = s {
                    match uses.get_mut(k) {
                        Some(u) => *u += 1,
                        None => return false,
                    }
                }
            }
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted == (0..ids.len()).collect::<Vec<_>>() && uses.iter().all(|&u| u == 1)
    }
}

struct SubWeave {
    matrix: CrossingMatrix,
    warps: Vec<Strand>,
    wefts: Vec<Strand>,
}

impl SubWeave {
    fn restrict(&self, warps: &[usize], wefts: &[usize]) -> SubWeave {
        SubWeave {
            matrix: self.matrix.submatrix(warps, wefts),
            warps: warps.iter().map(|&i| self.warps[i]).collect(),
            wefts: wefts.iter().map(|&j| self.wefts[j]).collect(),
        }
    }
}

/// Layers for the decomposition: strongly connected components in a
/// topological order that keeps runs of lone same-kind components together,
/// each maximal run merged into one axis-only layer.
fn grouped_layers(matrix: &CrossingMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let graph = LayerDigraph::new(matrix);
    let m = matrix.m();
    let lone_kind = |comp: &[usize]| -> Option<Kind> {
        (comp.len() == 1).then(|| graph.component(comp[0]).kind)
    };
    let order = graph.ordered_components(|candidates, previous| {
        let Some(kind) = previous.and_then(lone_kind) else {
            return 0;
        };
        candidates
            .iter()
            .position(|&(c, size)| size == 1 && c.kind == kind)
            .unwrap_or(0)
    });
    let mut layers: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut run_kind: Option<Kind> = None;
    for comp in order {
        let this = lone_kind(&comp);
        let extend = this.is_some() && this == run_kind;
        if !extend {
            layers.push((Vec::new(), Vec::new()));
        }
        let layer = layers.last_mut().expect("pushed");
        for v in comp {
            if v < m {
                layer.0.push(v);
            } else {
                layer.1.push(v - m);
            }
        }
        run_kind = this;
    }
    for (warps, wefts) in &mut layers {
        warps.sort_unstable();
        wefts.sort_unstable();
    }
    layers
}

/// Union-find classes of clearable equal pairs on one axis, as sorted
/// position lists of size at least two.
fn parallel_families(vectors: &[u64]) -> Vec<Vec<usize>> {
    let len = vectors.len();
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for (p, q, _, _) in clearable_pairs(vectors) {
        let (a, b) = (find(&mut parent, p), find(&mut parent, q));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); len];
    for x in 0..len {
        let r = find(&mut parent, x);
        classes[r].push(x);
    }
    classes.into_iter().filter(|c| c.len() >= 2).collect()
}

fn decompose(sub: SubWeave, next_family: &mut usize, out: &mut Vec<JsjPiece>) {
    let (m, n) = sub.matrix.shape();
    if m + n == 0 {
        return;
    }
    let layers = grouped_layers(&sub.matrix);
    if layers.len() >= 2 {
        for (warps, wefts) in layers {
            decompose(sub.restrict(&warps, &wefts), next_family, out);
        }
        return;
    }

    let row_families = parallel_families(sub.matrix.row_words());
    let col_families = parallel_families(&sub.matrix.columns());
    if !row_families.is_empty() || !col_families.is_empty() {
        let mut families = Vec::new();
        let mut keep_warps: Vec<usize> = (0..m).collect();
        let mut keep_wefts: Vec<usize> = (0..n).collect();
        let mut warps = sub.warps.clone();
        let mut wefts = sub.wefts.clone();
        for (kind, classes) in [(Kind::Warp, &row_families), (Kind::Weft, &col_families)] {
            let (strands, keep) = match kind {
                Kind::Warp => (&mut warps, &mut keep_warps),
                Kind::Weft => (&mut wefts, &mut keep_wefts),
            };
            for class in classes {
                let id = *next_family;
                *next_family += 1;
                families.push(JsjPiece::SolidTorusParallelFamily {
                    id,
                    kind,
                    members: class.iter().map(|&k| strands[k]).collect(),
                });
                strands[class[0]] = Strand::Family(id);
                keep.retain(|k| !class[1..].contains(k));
            }
        }
        let reduced = SubWeave {
            matrix: sub.matrix.submatrix(&keep_warps, &keep_wefts),
            warps: keep_warps.iter().map(|&i| warps[i]).collect(),
            wefts: keep_wefts.iter().map(|&j| wefts[j]).collect(),
        };
        decompose(reduced, next_family, out);
        out.extend(families);
        return;
    }

    out.push(if n == 0 {
        JsjPiece::AxisOnlyWeave {
            kind: Kind::Warp,
            strands: sub.warps,
        }
    } else if m == 0 {
        JsjPiece::AxisOnlyWeave {
            kind: Kind::Weft,
            strands: sub.wefts,
        }
    } else {
        JsjPiece::HyperbolicWeave {
            matrix: sub.matrix,
            warps: sub.warps,
            wefts: sub.wefts,
        }
    });
}

/// Decomposition into pieces of the three possible kinds: split along the
/// layering, collapse interchange-reachable parallel families into one
/// strand, and repeat on every part until neither applies. Pieces are
/// listed bottom to top; family pieces follow the piece holding their core.
pub fn jsj_report(matrix: &CrossingMatrix) -> Result<JsjReport> {
    let (m, n) = matrix.shape();
    if m + n == 0 {
        return Err(WeaveError::Degenerate {
            required: "at least one component",
            m,
            n,
        });
    }
    let sub = SubWeave {
        matrix: matrix.clone(),
        warps: (0..m).map(|i| Strand::Component(ComponentId::warp(i))).collect(),
        wefts: (0..n).map(|j| Strand::Component(ComponentId::weft(j))).collect(),
    };
    let mut pieces = Vec::new();
    let mut next_family = 0;
    decompose(sub, &mut next_family, &mut pieces);
    Ok(JsjReport { pieces })
}
