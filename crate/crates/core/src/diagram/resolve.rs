//! States of the cube of resolutions and the smoothings they produce.
//!
//! The 0-smoothing of a crossing joins ports `(0,1)` and `(2,3)`, the
//! 1-smoothing joins `(0,3)` and `(1,2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DiagramError, Endpoint, TangleDiagram};

/// A vertex of the cube `{0,1}^n`; bit `i` is the smoothing of crossing `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct State {
    bits: u64,
    len: u8,
}

impl State {
    pub const MAX_LEN: usize = 64;

    pub fn new(bits: u64, len: usize) -> State {
        assert!(len <= Self::MAX_LEN, "state length {len} exceeds {}", Self::MAX_LEN);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        State { bits: bits & mask, len: len as u8 }
    }

    pub fn zeros(len: usize) -> State {
        State::new(0, len)
    }

    pub fn from_bits(bits: &[bool]) -> State {
        let packed = bits.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        State::new(packed, bits.len())
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        i < self.len() && (self.bits >> i) & 1 == 1
    }

    pub fn packed(&self) -> u64 {
        self.bits
    }

    /// Height in the cube: number of 1-smoothings.
    pub fn ell(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn with_bit(&self, i: usize) -> State {
        State::new(self.bits | (1 << i), self.len())
    }

    /// Number of 1-bits at indices below `i`.
    pub fn ones_before(&self, i: usize) -> usize {
        (self.bits & ((1u64 << i) - 1)).count_ones() as usize
    }

    /// Lexicographic key with crossing 0 most significant.
    pub fn lex_key(&self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.len())
        }
    }

    pub fn all(len: usize) -> impl Iterator<Item = State> {
        assert!(len < 64);
        (0..(1u64 << len)).map(move |b| State::new(b, len))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Circle,
    /// Arc between two boundary indices, lower first.
    Arc(usize, usize),
}

/// A resolved state: disjoint circles and boundary-to-boundary arcs.
///
/// Components are ordered by their lowest edge id; crossing-free loops come
/// last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedDiagram {
    pub circle_count: usize,
    pub arcs: Vec<(usize, usize)>,
    pub component_of: Vec<usize>,
    pub components: Vec<ComponentKind>,
}

impl ResolvedDiagram {
    /// Component indices of circles in component order.
    pub fn circles(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.iter().enumerate().filter(|(_, k)| **k == ComponentKind::Circle).map(|(i, _)| i)
    }

    pub fn is_circle(&self, component: usize) -> bool {
        self.components[component] == ComponentKind::Circle
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SaddleKind {
    MergeCircleCircle,
    SplitCircle,
    MergeCircleArc,
    SplitArcCircle,
    ReconnectArcArc,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let n = parent[c];
        parent[c] = r;
        c = n;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        // keep the lower id as root so roots are component minima
        if ra < rb {
            parent[rb] = ra;
        } else {
            parent[ra] = rb;
        }
    }
}

impl TangleDiagram {
    fn check_state(&self, s: &State) -> Result<(), DiagramError> {
        if s.len() != self.crossing_count() {
            return Err(DiagramError::StateLength { expected: self.crossing_count(), got: s.len() });
        }
        Ok(())
    }

    pub fn resolve(&self, s: &State) -> Result<ResolvedDiagram, DiagramError> {
        self.check_state(s)?;
        Ok(self.resolve_unchecked(s))
    }

    pub(crate) fn resolve_unchecked(&self, s: &State) -> ResolvedDiagram {
        let n_edges = self.edges.len();
        let mut parent: Vec<usize> = (0..n_edges).collect();
        for (i, c) in self.crossings.iter().enumerate() {
            let p = c.ports;
            if s.bit(i) {
                union(&mut parent, p[0], p[3]);
                union(&mut parent, p[1], p[2]);
            } else {
                union(&mut parent, p[0], p[1]);
                union(&mut parent, p[2], p[3]);
            }
        }
        let mut comp_of_root = vec![usize::MAX; n_edges];
        let mut component_of = vec![0; n_edges];
        let mut bounds: Vec<Vec<usize>> = Vec::new();
        for (e, slot) in component_of.iter_mut().enumerate() {
            let r = find(&mut parent, e);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = bounds.len();
                bounds.push(Vec::new());
            }
            let comp = comp_of_root[r];
            *slot = comp;
            for end in [self.edges[e].tail, self.edges[e].head] {
                if let Endpoint::Boundary(b) = end {
                    bounds[comp].push(b);
                }
            }
        }
        let mut components: Vec<ComponentKind> = bounds
            .iter()
            .map(|b| match b.as_slice() {
                [] => ComponentKind::Circle,
                [x, y] => ComponentKind::Arc(*x.min(y), *x.max(y)),
                _ => unreachable!("a resolved component has 0 or 2 boundary ends"),
            })
            .collect();
        components.extend(std::iter::repeat_n(ComponentKind::Circle, self.free_loops));
        let arcs = components
            .iter()
            .filter_map(|k| match k {
                ComponentKind::Arc(a, b) => Some((*a, *b)),
                ComponentKind::Circle => None,
            })
            .collect();
        let circle_count = components.iter().filter(|k| **k == ComponentKind::Circle).count();
        ResolvedDiagram { circle_count, arcs, component_of, components }
    }

    /// Kind of the elementary cobordism from `s` to `s` with bit `i` set.
    pub fn saddle_type(&self, s: &State, i: usize) -> Result<SaddleKind, DiagramError> {
        self.check_state(s)?;
        if i >= self.crossing_count() {
            return Err(DiagramError::IndexOutOfRange { index: i, count: self.crossing_count() });
        }
        if s.bit(i) {
            return Err(DiagramError::BitAlreadySet(i));
        }
        let source = self.resolve_unchecked(s);
        let target = self.resolve_unchecked(&s.with_bit(i));
        let kind = saddle_kind(&source, self.crossings[i].ports);
        let expected_delta: isize = match kind {
            SaddleKind::MergeCircleCircle | SaddleKind::MergeCircleArc => -1,
            SaddleKind::SplitCircle | SaddleKind::SplitArcCircle => 1,
            SaddleKind::ReconnectArcArc => 0,
        };
        if target.circle_count as isize - source.circle_count as isize != expected_delta {
            return Err(DiagramError::NonPlanar(i));
        }
        Ok(kind)
    }
}

/// Classifies a 0 -> 1 saddle from the components touching the crossing in
/// the source resolution.
pub(crate) fn saddle_kind(source: &ResolvedDiagram, ports: [usize; 4]) -> SaddleKind {
    let a = source.component_of[ports[0]];
    let b = source.component_of[ports[2]];
    match (a == b, source.is_circle(a), source.is_circle(b)) {
        (true, true, _) => SaddleKind::SplitCircle,
        (true, false, _) => SaddleKind::SplitArcCircle,
        (false, true, true) => SaddleKind::MergeCircleCircle,
        (false, false, false) => SaddleKind::ReconnectArcArc,
        (false, _, _) => SaddleKind::MergeCircleArc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests::{TREFOIL, TYPE_1_1};

    #[test]
    fn state_basics() {
        let s = State::from_bits(&[true, false, true]);
        assert_eq!(s.ell(), 2);
        assert_eq!(s.to_string(), "101");
        assert_eq!(s.ones_before(2), 1);
        assert_eq!(s.lex_key(), 0b101);
        assert_eq!(State::from_bits(&[true, false]).lex_key(), 0b10);
    }

    #[test]
    fn one_crossing_resolutions() {
        let d = TangleDiagram::parse(TYPE_1_1).unwrap();
        let r0 = d.resolve(&State::zeros(1)).unwrap();
        let r1 = d.resolve(&State::new(1, 1)).unwrap();
        assert_eq!((r0.circle_count, r1.circle_count), (0, 0));
        // boundary a b c d sit at ports 0 1 2 3
        assert_eq!(r0.arcs, vec![(0, 1), (2, 3)]);
        assert_eq!(r1.arcs, vec![(0, 3), (1, 2)]);
        assert_eq!(d.saddle_type(&State::zeros(1), 0).unwrap(), SaddleKind::ReconnectArcArc);
    }

    #[test]
    fn trefoil_resolutions() {
        let d = TangleDiagram::parse(TREFOIL).unwrap();
        let counts: Vec<usize> = State::all(3).map(|s| d.resolve(&s).unwrap().circle_count).collect();
        // heights 0..3 of the left-handed trefoil carry 3, 2, 1, 2 circles
        assert_eq!(counts, vec![3, 2, 2, 1, 2, 1, 1, 2]);
        // the right-handed one starts from its two Seifert circles
        let right = d.mirror();
        assert_eq!(right.resolve(&State::zeros(3)).unwrap().circle_count, 2);
        assert_eq!(right.saddle_type(&State::zeros(3), 0).unwrap(), SaddleKind::MergeCircleCircle);
        assert_eq!(d.saddle_type(&State::zeros(3), 0).unwrap(), SaddleKind::MergeCircleCircle);
    }

    #[test]
    fn saddle_errors() {
        let d = TangleDiagram::parse(TYPE_1_1).unwrap();
        assert_eq!(d.saddle_type(&State::zeros(1), 1), Err(DiagramError::IndexOutOfRange { index: 1, count: 1 }));
        assert_eq!(d.saddle_type(&State::new(1, 1), 0), Err(DiagramError::BitAlreadySet(0)));
        assert_eq!(d.resolve(&State::zeros(2)), Err(DiagramError::StateLength { expected: 1, got: 2 }));
    }

    #[test]
    fn free_loops_are_circles() {
        let d = TangleDiagram::parse("O\nO\nA p q").unwrap();
        let r = d.resolve(&State::zeros(0)).unwrap();
        assert_eq!(r.circle_count, 2);
        assert_eq!(r.arcs, vec![(0, 1)]);
    }
}
