//! Isotopy classes of weaving diagrams.
//!
//! Two diagrams represent isotopic weaves exactly when they are connected
//! by torus translations and interchanges of adjacent comparable
//! components. Equivalence is decided by breadth-first closure under those
//! moves; the representative of a class is the lexicographically least
//! member under row-major serialization.

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::{CrossingMatrix, Move, MoveSequence};
use crate::error::{Result, WeaveError};

/// Default number of states an orbit exploration may visit.
pub const DEFAULT_ORBIT_BUDGET: usize = 1_000_000;

/// All diagrams reachable from a seed, in breadth-first order, with the
/// move that first reached each one.
#[derive(Debug, Clone)]
pub struct Orbit {
    states: Vec<CrossingMatrix>,
    index: HashMap<CrossingMatrix, usize>,
    parent: Vec<Option<(usize, Move)>>,
}

impl Orbit {
    pub fn seed(&self) -> &CrossingMatrix {
        &self.states[0]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn contains(&self, m: &CrossingMatrix) -> bool {
        self.index.contains_key(m)
    }

    /// Members in discovery order; the seed comes first.
    pub fn members(&self) -> &[CrossingMatrix] {
        &self.states
    }

    /// Least member under row-major lexicographic order.
    pub fn min(&self) -> &CrossingMatrix {
        self.states.iter().min().expect("orbit contains its seed")
    }

    /// Moves taking the seed to `target` along the BFS tree, if `target` is
    /// a member. The path has minimal length among move sequences using the
    /// generators of the exploration.
    pub fn path_to(&self, target: &CrossingMatrix) -> Option<MoveSequence> {
        let mut at = *self.index.get(target)?;
        let mut moves = Vec::new();
        while let Some((prev, mv)) = self.parent[at] {
            moves.push(mv);
            at = prev;
        }
        moves.reverse();
        Some(MoveSequence(moves))
    }

    /// Breadth-first closure of `seed` under `neighbours`, stopping early
    /// once `stop` accepts a state. Returns the orbit explored so far and the
    /// index of the accepted state, if any.
    pub(crate) fn explore<N, S>(
        seed: &CrossingMatrix,
        cap: usize,
        mut neighbours: N,
        mut stop: S,
    ) -> Result<(Orbit, Option<usize>)>
    where
        N: FnMut(&CrossingMatrix, &mut Vec<(Move, CrossingMatrix)>),
        S: FnMut(&CrossingMatrix) -> bool,
    {
        let mut orbit = Orbit {
            states: vec![seed.clone()],
            index: HashMap::from([(seed.clone(), 0)]),
            parent: vec![None],
        };
        if stop(seed) {
            return Ok((orbit, Some(0)));
        }
        let mut buf = Vec::new();
        let mut head = 0;
        while head < orbit.states.len() {
            buf.clear();
            neighbours(&orbit.states[head], &mut buf);
            for (mv, next) in buf.drain(..) {
                if orbit.index.contains_key(&next) {
                    continue;
                }
                if orbit.states.len() >= cap {
                    return Err(WeaveError::BudgetExceeded(cap));
                }
                let id = orbit.states.len();
                let hit = stop(&next);
                orbit.index.insert(next.clone(), id);
                orbit.states.push(next);
                orbit.parent.push(Some((head, mv)));
                if hit {
                    return Ok((orbit, Some(id)));
                }
            }
            head += 1;
        }
        Ok((orbit, None))
    }
}

/// Legal interchanges of cyclically adjacent comparable warps and wefts.
/// With two components on an axis only one of the two equivalent swaps is
/// generated.
pub(crate) fn swap_neighbours(m: &CrossingMatrix, out: &mut Vec<(Move, CrossingMatrix)>) {
    let (rows, cols) = (m.m(), m.n());
    let warp_positions = match rows {
        0 | 1 => 0,
        2 => 1,
        r => r,
    };
    for i in 0..warp_positions {
        let mv = Move::SwapWarps(i);
        if let Ok(next) = m.apply(mv) {
            out.push((mv, next));
        }
    }
    let weft_positions = match cols {
        0 | 1 => 0,
        2 => 1,
        c => c,
    };
    if weft_positions > 0 {
        let columns = m.columns();
        for j in 0..weft_positions {
            let k = (j + 1) % cols;
            if crate::diagram::comparable_bits(columns[j], columns[k]) {
                out.push((Move::SwapWefts(j), m.swap_columns_unchecked(j, k)));
            }
        }
    }
}

/// Translation generators plus legal interchanges.
pub(crate) fn isotopy_neighbours(m: &CrossingMatrix, out: &mut Vec<(Move, CrossingMatrix)>) {
    out.push((Move::Translate { a: 1, b: 0 }, m.translate(1, 0)));
    out.push((Move::Translate { a: 0, b: 1 }, m.translate(0, 1)));
    swap_neighbours(m, out);
}

fn require_nondegenerate(m: &CrossingMatrix) -> Result<()> {
    if m.is_degenerate() {
        return Err(WeaveError::Degenerate {
            required: "at least one warp and one weft",
            m: m.m(),
            n: m.n(),
        });
    }
    Ok(())
}

/// Isotopy orbit of `m`. Exceeding `cap` (default
/// [`DEFAULT_ORBIT_BUDGET`]) is an error, never a truncated answer.
pub fn orbit(m: &CrossingMatrix, cap: Option<usize>) -> Result<Orbit> {
    require_nondegenerate(m)?;
    let cap = cap.unwrap_or(DEFAULT_ORBIT_BUDGET);
    Orbit::explore(m, cap, isotopy_neighbours, |_| false).map(|(orbit, _)| orbit)
}

/// Least member of an isotopy class and the size of the class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub matrix: CrossingMatrix,
    pub orbit_size: usize,
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CanonicalForm", 4)?;
        st.serialize_field("canonical", &self.matrix.to_string())?;
        st.serialize_field("m", &self.matrix.m())?;
        st.serialize_field("n", &self.matrix.n())?;
        st.serialize_field("orbit_size", &self.orbit_size)?;
        st.end()
    }
}

pub fn canonical_form(m: &CrossingMatrix) -> Result<CanonicalForm> {
    canonical_form_with_budget(m, DEFAULT_ORBIT_BUDGET)
}

pub fn canonical_form_with_budget(m: &CrossingMatrix, cap: usize) -> Result<CanonicalForm> {
    let orbit = orbit(m, Some(cap))?;
    Ok(CanonicalForm {
        matrix: orbit.min().clone(),
        orbit_size: orbit.len(),
    })
}

/// Whether `a` and `b` are isotopic. Diagrams of different shapes never
/// are; differing fingerprints reject without exploring.
pub fn is_isotopic(a: &CrossingMatrix, b: &CrossingMatrix) -> Result<bool> {
    match isotopy_witness(a, b) {
        Ok(_) => Ok(true),
        Err(WeaveError::NotIsotopic) => Ok(false),
        Err(e) => Err(e),
    }
}

/// A move sequence taking `a` to `b`.
pub fn isotopy_witness(a: &CrossingMatrix, b: &CrossingMatrix) -> Result<MoveSequence> {
    isotopy_witness_with_budget(a, b, DEFAULT_ORBIT_BUDGET)
}

pub fn isotopy_witness_with_budget(
    a: &CrossingMatrix,
    b: &CrossingMatrix,
    cap: usize,
) -> Result<MoveSequence> {
    require_nondegenerate(a)?;
    require_nondegenerate(b)?;
    if a.shape() != b.shape() || a.fingerprint() != b.fingerprint() {
        return Err(WeaveError::NotIsotopic);
    }
    let (orbit, hit) = Orbit::explore(a, cap, isotopy_neighbours, |s| s == b)?;
    match hit {
        Some(id) => Ok(orbit
            .path_to(&orbit.members()[id])
            .expect("accepted state is a member")),
        None => Err(WeaveError::NotIsotopic),
    }
}

/// The sixteen images of `m` under the group generated by warp reflection,
/// weft reflection, depth flip and warp/weft exchange. Images with the
/// exchange applied have shape `n x m`.
pub fn symmetry_images(m: &CrossingMatrix) -> Vec<CrossingMatrix> {
    let mut out = Vec::with_capacity(16);
    for mask in 0u8..16 {
        let mut x = m.clone();
        if mask & 1 != 0 {
            x = x.reflect_warps();
        }
        if mask & 2 != 0 {
            x = x.reflect_wefts();
        }
        if mask & 4 != 0 {
            x = x.complement();
        }
        if mask & 8 != 0 {
            x = x.transpose_dual();
        }
        out.push(x);
    }
    out
}

/// Representative of the homeomorphism class: the least isotopy canonical
/// form over all sixteen symmetry images, ordered by shape first and then
/// by row-major bits.
pub fn homeo_canonical_form(m: &CrossingMatrix) -> Result<CanonicalForm> {
    homeo_canonical_form_with_budget(m, DEFAULT_ORBIT_BUDGET)
}

pub fn homeo_canonical_form_with_budget(m: &CrossingMatrix, cap: usize) -> Result<CanonicalForm> {
    let mut best: Option<CanonicalForm> = None;
    for image in symmetry_images(m) {
        let cf = canonical_form_with_budget(&image, cap)?;
        if best.as_ref().is_none_or(|b| cf.matrix < b.matrix) {
            best = Some(cf);
        }
    }
    Ok(best.expect("sixteen images"))
}
