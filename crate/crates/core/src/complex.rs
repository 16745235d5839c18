//! The bigraded cochain complex of a tangle diagram.
//!
//! Circles carry `span{1, X}` with degrees `+1, -1`; arcs carry `span{w}`
//! with degree `-1`. The edge of the cube flipping bit `i` of state `s` has
//! sign `(-1)^(number of 1-bits of s below i)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ResolvedDiagram, SaddleKind, State, TangleDiagram};
use crate::linalg::{compose_check, Field, Gf2, Rational, SparseMatrix};

pub const DEFAULT_CROSSING_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("diagram has {count} crossings, above the cap of {cap}")]
    CrossingCap { count: usize, cap: usize },
    #[error("saddle {kind:?} cannot act on {labels:?}")]
    SaddleMismatch { kind: SaddleKind, labels: Vec<Label> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    One,
    X,
    /// The generator of an arc.
    W,
}

impl Label {
    pub fn degree(self) -> i32 {
        match self {
            Label::One => 1,
            Label::X | Label::W => -1,
        }
    }
}

/// `ℓ(s) - n₋`.
pub fn homological_degree(s: &State, n_minus: usize) -> i32 {
    s.ell() as i32 - n_minus as i32
}

/// `k + n₊ - n₋ + θ`.
pub fn quantum_degree(k: i32, n_plus: usize, n_minus: usize, theta: i32) -> i32 {
    k + n_plus as i32 - n_minus as i32 + theta
}

/// Image of the components touching one saddle, as a linear combination.
///
/// Fragments list the touched components: two circles for a merge, one
/// circle for a split, circle then arc for a circle-arc merge, one arc for
/// an arc-circle split, two arcs for a reconnection. Outputs list target
/// components the same way: one circle, two circles, one arc, arc then new
/// circle, two arcs.
pub fn apply_saddle(kind: SaddleKind, source: &[Label]) -> Result<Vec<(Vec<Label>, i64)>, ComplexError> {
    use Label::*;
    let out = match (kind, source) {
        (SaddleKind::MergeCircleCircle, [a, b]) if *a != W && *b != W => match (a, b) {
            (One, One) => vec![(vec![One], 1)],
            (One, X) | (X, One) => vec![(vec![X], 1)],
            _ => vec![],
        },
        (SaddleKind::SplitCircle, [One]) => vec![(vec![One, X], 1), (vec![X, One], 1)],
        (SaddleKind::SplitCircle, [X]) => vec![(vec![X, X], 1)],
        (SaddleKind::MergeCircleArc, [One, W]) => vec![(vec![W], 1)],
        (SaddleKind::MergeCircleArc, [X, W]) => vec![],
        (SaddleKind::SplitArcCircle, [W]) => vec![(vec![W, X], 1)],
        (SaddleKind::ReconnectArcArc, [W, W]) => vec![],
        _ => return Err(ComplexError::SaddleMismatch { kind, labels: source.to_vec() }),
    };
    Ok(out)
}

/// A basis element: a state plus a label on each of its circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorLabel {
    pub state: State,
    /// Labels of the circles in discovery order.
    pub circles: Vec<Label>,
    pub arcs: usize,
    pub theta: i32,
}

impl GeneratorLabel {
    fn from_mask(state: State, circle_count: usize, mask: u64, arcs: usize) -> GeneratorLabel {
        let circles: Vec<Label> =
            (0..circle_count).map(|j| if mask >> j & 1 == 1 { Label::X } else { Label::One }).collect();
        let theta = circles.iter().map(|l| l.degree()).sum::<i32>() - arcs as i32;
        GeneratorLabel { state, circles, arcs, theta }
    }

    /// Lexicographic key with circle 0 most significant and `1 < X`.
    fn order_key(&self) -> (u64, Vec<Label>) {
        (self.state.lex_key(), self.circles.clone())
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.state)?;
        for l in &self.circles {
            f.write_str(match l {
                Label::One => "1",
                Label::X => "X",
                Label::W => "w",
            })?;
        }
        for _ in 0..self.arcs {
            f.write_str("w")?;
        }
        Ok(())
    }
}

pub type Bigrading = (i32, i32);

/// One nonzero entry of the full differential, in generator terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialEntry {
    pub source: Bigrading,
    pub source_index: usize,
    pub target: Bigrading,
    pub target_index: usize,
    pub coefficient: i64,
}

#[derive(Clone, Debug)]
pub struct BigradedComplex {
    pub field: Field,
    pub n_plus: usize,
    pub n_minus: usize,
    blocks: BTreeMap<Bigrading, Vec<GeneratorLabel>>,
    /// `d^{k,q}` keyed by its source, rows indexing `C^{k+1,q}`.
    differentials: BTreeMap<Bigrading, SparseMatrix<i64>>,
}

struct StateData {
    state: State,
    resolved: ResolvedDiagram,
    /// Circle slot of each component.
    slot: Vec<Option<usize>>,
    /// A representative edge of each component with edges.
    rep_edge: Vec<usize>,
    /// `(k, q, index in block)` for every circle mask.
    position: Vec<(i32, i32, usize)>,
}

impl BigradedComplex {
    pub fn build(d: &TangleDiagram, field: Field) -> Result<BigradedComplex, ComplexError> {
        Self::build_capped(d, field, DEFAULT_CROSSING_CAP)
    }

    pub fn build_capped(d: &TangleDiagram, field: Field, cap: usize) -> Result<BigradedComplex, ComplexError> {
        let n = d.crossing_count();
        if n > cap {
            return Err(ComplexError::CrossingCap { count: n, cap });
        }
        let (n_plus, n_minus) = d.crossing_counts();
        let mut states: Vec<StateData> = State::all(n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|state| {
                let resolved = d.resolve_unchecked(&state);
                let mut slot = vec![None; resolved.components.len()];
                for (j, c) in resolved.circles().enumerate() {
                    slot[c] = Some(j);
                }
                let mut rep_edge = vec![usize::MAX; resolved.components.len()];
                for (e, &c) in resolved.component_of.iter().enumerate().rev() {
                    rep_edge[c] = e;
                }
                StateData { state, resolved, slot, rep_edge, position: Vec::new() }
            })
            .collect();

        let mut blocks: BTreeMap<Bigrading, Vec<GeneratorLabel>> = BTreeMap::new();
        for sd in &states {
            let c = sd.resolved.circle_count;
            let k = homological_degree(&sd.state, n_minus);
            for mask in 0..(1u64 << c) {
                let g = GeneratorLabel::from_mask(sd.state, c, mask, sd.resolved.arcs.len());
                let q = quantum_degree(k, n_plus, n_minus, g.theta);
                blocks.entry((k, q)).or_default().push(g);
            }
        }
        let mut index: HashMap<(u64, Vec<Label>), usize> = HashMap::new();
        for block in blocks.values_mut() {
            block.sort_by_key(GeneratorLabel::order_key);
            for (i, g) in block.iter().enumerate() {
                index.insert((g.state.packed(), g.circles.clone()), i);
            }
        }
        for sd in &mut states {
            let c = sd.resolved.circle_count;
            let k = homological_degree(&sd.state, n_minus);
            sd.position = (0..(1u64 << c))
                .map(|mask| {
                    let g = GeneratorLabel::from_mask(sd.state, c, mask, sd.resolved.arcs.len());
                    let q = quantum_degree(k, n_plus, n_minus, g.theta);
                    (k, q, index[&(g.state.packed(), g.circles)])
                })
                .collect();
        }

        let entries: Vec<DifferentialEntry> = states
            .par_iter()
            .map(|sd| edge_entries(d, &states, sd))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();

        let mut differentials: BTreeMap<Bigrading, SparseMatrix<i64>> = BTreeMap::new();
        for (&(k, q), block) in &blocks {
            if let Some(target) = blocks.get(&(k + 1, q)) {
                differentials.insert((k, q), SparseMatrix::zeros_int(target.len(), block.len()));
            }
        }
        for e in entries {
            assert_eq!(e.source.1, e.target.1, "saddle map changed the quantum degree");
            differentials
                .get_mut(&e.source)
                .expect("target block exists for every entry")
                .add_int(e.target_index, e.source_index, e.coefficient);
        }
        Ok(BigradedComplex { field, n_plus, n_minus, blocks, differentials })
    }

    pub fn blocks(&self) -> &BTreeMap<Bigrading, Vec<GeneratorLabel>> {
        &self.blocks
    }

    pub fn dim(&self, k: i32, q: i32) -> usize {
        self.blocks.get(&(k, q)).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    /// `d^{k,q}: C^{k,q} → C^{k+1,q}`, if both ends are nonzero.
    pub fn differential(&self, k: i32, q: i32) -> Option<&SparseMatrix<i64>> {
        self.differentials.get(&(k, q))
    }

    pub fn differentials(&self) -> &BTreeMap<Bigrading, SparseMatrix<i64>> {
        &self.differentials
    }

    /// Rank of `d^{k,q}` over the complex's field.
    pub fn rank(&self, k: i32, q: i32) -> usize {
        match self.differentials.get(&(k, q)) {
            None => 0,
            Some(m) => match self.field {
                Field::Rational => m.to_field::<Rational>().rank(),
                Field::Gf2 => m.to_field::<Gf2>().rank(),
            },
        }
    }

    /// Checks `d^{k+1,q} ∘ d^{k,q} = 0` over ℚ and GF(2) for every `(k,q)`.
    pub fn check_d_squared(&self) -> bool {
        self.differentials.iter().all(|(&(k, q), first)| match self.differentials.get(&(k + 1, q)) {
            None => true,
            Some(second) => {
                compose_check(&second.to_field::<Rational>(), &first.to_field::<Rational>()).unwrap_or(false)
                    && compose_check(&second.to_field::<Gf2>(), &first.to_field::<Gf2>()).unwrap_or(false)
            }
        })
    }

    /// Recomputes both degrees of every generator from its state and labels.
    pub fn check_gradings(&self) -> bool {
        self.blocks.iter().all(|(&(k, q), gens)| {
            gens.iter().all(|g| {
                let theta = g.circles.iter().map(|l| l.degree()).sum::<i32>() - g.arcs as i32;
                let gk = homological_degree(&g.state, self.n_minus);
                theta == g.theta && gk == k && quantum_degree(gk, self.n_plus, self.n_minus, theta) == q
            })
        })
    }

    /// Bigraded dimensions of the chain groups.
    pub fn dimensions(&self) -> BTreeMap<Bigrading, usize> {
        self.blocks.iter().map(|(&kq, g)| (kq, g.len())).collect()
    }

    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            field: self.field.name().to_owned(),
            n_plus: self.n_plus,
            n_minus: self.n_minus,
            blocks: self
                .blocks
                .iter()
                .map(|(&(k, q), gens)| BlockDump {
                    k,
                    q,
                    dim: gens.len(),
                    basis: gens.iter().map(ToString::to_string).collect(),
                    differential: self.differentials.get(&(k, q)).map(|m| MatrixDump {
                        rows: m.rows(),
                        cols: m.cols(),
                        entries: m.entries().map(|(r, c, &v)| (r, c, v)).collect(),
                    }),
                })
                .collect(),
        }
    }

    pub fn dump_json(&self) -> String {
        serde_json::to_string_pretty(&self.dump()).expect("complex dump serializes")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexDump {
    pub field: String,
    pub n_plus: usize,
    pub n_minus: usize,
    pub blocks: Vec<BlockDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDump {
    pub k: i32,
    pub q: i32,
    pub dim: usize,
    pub basis: Vec<String>,
    /// Map to `(k+1, q)`; absent when that block is empty.
    pub differential: Option<MatrixDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` triplets.
    pub entries: Vec<(usize, usize, i64)>,
}

/// All differential entries leaving the generators of one state.
fn edge_entries(
    d: &TangleDiagram,
    states: &[StateData],
    sd: &StateData,
) -> Result<Vec<DifferentialEntry>, ComplexError> {
    let mut out = Vec::new();
    let src = &sd.resolved;
    let free_loops = d.free_loops();
    for i in 0..sd.state.len() {
        if sd.state.bit(i) {
            continue;
        }
        let ports = d.crossings()[i].ports();
        let kind = crate::diagram::saddle_kind(src, ports);
        let td = &states[sd.state.with_bit(i).packed() as usize];
        let tgt = &td.resolved;
        let sign: i64 = if sd.state.ones_before(i).is_multiple_of(2) { 1 } else { -1 };

        let (a, b) = (src.component_of[ports[0]], src.component_of[ports[2]]);
        let (ta, tb) = (tgt.component_of[ports[0]], tgt.component_of[ports[2]]);
        let touched_src: Vec<usize> = match kind {
            SaddleKind::MergeCircleCircle | SaddleKind::ReconnectArcArc => vec![a, b],
            SaddleKind::SplitCircle | SaddleKind::SplitArcCircle => vec![a],
            SaddleKind::MergeCircleArc if src.is_circle(a) => vec![a, b],
            SaddleKind::MergeCircleArc => vec![b, a],
        };
        let touched_tgt: Vec<usize> = match kind {
            SaddleKind::MergeCircleCircle | SaddleKind::MergeCircleArc => vec![ta],
            SaddleKind::SplitCircle | SaddleKind::ReconnectArcArc => vec![ta, tb],
            SaddleKind::SplitArcCircle if tgt.is_circle(tb) => vec![ta, tb],
            SaddleKind::SplitArcCircle => vec![tb, ta],
        };
        // untouched circles keep their labels
        let src_edge_comps = src.components.len() - free_loops;
        let tgt_edge_comps = tgt.components.len() - free_loops;
        let carried: Vec<(usize, usize)> = (0..src.components.len())
            .filter(|c| src.is_circle(*c) && !touched_src.contains(c))
            .map(|c| {
                let t = if c >= src_edge_comps {
                    tgt_edge_comps + (c - src_edge_comps)
                } else {
                    tgt.component_of[sd.rep_edge[c]]
                };
                (sd.slot[c].expect("circle has a slot"), td.slot[t].expect("circle maps to a circle"))
            })
            .collect();

        for mask in 0..(1u64 << src.circle_count) {
            let label_of = |c: usize| match sd.slot[c] {
                Some(j) if mask >> j & 1 == 1 => Label::X,
                Some(_) => Label::One,
                None => Label::W,
            };
            let fragment: Vec<Label> = touched_src.iter().map(|&c| label_of(c)).collect();
            let image = apply_saddle(kind, &fragment)?;
            if image.is_empty() {
                continue;
            }
            let mut base = 0u64;
            for &(s, t) in &carried {
                base |= (mask >> s & 1) << t;
            }
            let (k, q, src_index) = sd.position[mask as usize];
            for (labels, coeff) in image {
                let mut tmask = base;
                for (&c, l) in touched_tgt.iter().zip(&labels) {
                    if let (Some(j), Label::X) = (td.slot[c], l) {
                        tmask |= 1 << j;
                    }
                }
                let (tk, tq, tgt_index) = td.position[tmask as usize];
                debug_assert_eq!(tk, k + 1);
                out.push(DifferentialEntry {
                    source: (k, q),
                    source_index: src_index,
                    target: (tk, tq),
                    target_index: tgt_index,
                    coefficient: sign * coeff,
                });
            }
        }
    }
    Ok(out)
}

/// Every nonzero differential entry, for tests that inspect the cube edges.
pub fn differential_entries(complex: &BigradedComplex) -> Vec<(GeneratorLabel, GeneratorLabel, i64)> {
    let mut out = Vec::new();
    for (&(k, q), m) in complex.differentials() {
        let src = &complex.blocks[&(k, q)];
        let tgt = &complex.blocks[&(k + 1, q)];
        for (r, c, &v) in m.entries() {
            out.push((src[c].clone(), tgt[r].clone(), v));
        }
    }
    out
}
