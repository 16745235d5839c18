//! Oriented planar tangle diagrams.
//!
//! A diagram is a set of 4-valent crossings joined by directed edges, plus
//! edges ending on an outer boundary circle, crossing-free arcs and
//! crossing-free loops. Crossing ports are numbered `0..4` counterclockwise
//! starting at the incoming under-strand, so the under-strand runs `0 -> 2`
//! and the over-strand joins ports `1` and `3`. A crossing is positive
//! (right-handed) when the over-strand enters at port `3` and leaves at
//! port `1`.

mod build;
mod json;
pub mod notation;
mod ops;
mod resolve;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use json::DiagramJson;
pub use notation::{CrossingDecl, Notation};
pub use ops::{Attachment, Placement};
pub use resolve::{ComponentKind, ResolvedDiagram, SaddleKind, State};
pub(crate) use resolve::saddle_kind;

pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Sign, String> {
        match v {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            _ => Err(format!("crossing sign must be 1 or -1, got {v}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Port { crossing: usize, port: usize },
    /// Index into [`TangleDiagram::boundary_points`].
    Boundary(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub tail: Endpoint,
    pub head: Endpoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    ports: [EdgeId; 4],
    sign: Sign,
}

impl Crossing {
    pub fn ports(&self) -> [EdgeId; 4] {
        self.ports
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("edge label `{label}` occurs {count} times (expected 1 or 2)")]
    PortDegree { label: String, count: usize },
    #[error("orientation inconsistency on edge `{label}`: {detail}")]
    Orientation { label: String, detail: String },
    #[error("crossing {crossing} (line {line}): declared sign {declared} contradicts edge orientations")]
    SignMismatch { crossing: usize, line: usize, declared: Sign },
    #[error("crossing {crossing} (line {line}): sign cannot be inferred; declare it as X+ or X-")]
    Underdetermined { crossing: usize, line: usize },
    #[error("edge `{0}` ends on the boundary but is missing from the boundary declaration")]
    Dangling(String),
    #[error("boundary label `{0}` is not the end of any edge")]
    UnknownBoundary(String),
    #[error("boundary label `{0}` declared twice")]
    DuplicateBoundary(String),
    #[error("state has {got} bits but the diagram has {expected} crossings")]
    StateLength { expected: usize, got: usize },
    #[error("crossing index {index} out of range for {count} crossings")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("state bit {0} is already 1")]
    BitAlreadySet(usize),
    #[error("saddle at crossing {0} does not change components as a planar saddle must")]
    NonPlanar(usize),
    #[error("no boundary point `{0}`")]
    NoSuchBoundary(String),
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

/// A component of the underlying (unresolved) diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    /// Edges in the order they are traversed along the orientation.
    pub edges: Vec<EdgeId>,
    pub closed: bool,
}

/// Identifier of an arc: the boundary label where it starts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcId(pub String);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleDiagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    free_loops: usize,
    boundary_points: Vec<String>,
}

impl TangleDiagram {
    pub fn parse(text: &str) -> Result<TangleDiagram, DiagramError> {
        Notation::parse(text)?.build()
    }

    /// Fully signed notation; parsing it yields an identical diagram.
    pub fn to_notation(&self) -> Notation {
        let crossings = self
            .crossings
            .iter()
            .map(|c| CrossingDecl {
                sign: Some(c.sign),
                labels: c.ports.map(|e| self.edges[e].label.clone()),
                line: 0,
            })
            .collect();
        let arcs = self
            .edges
            .iter()
            .filter_map(|e| match (e.tail, e.head) {
                (Endpoint::Boundary(p), Endpoint::Boundary(q)) => {
                    Some((self.boundary_points[p].clone(), self.boundary_points[q].clone()))
                }
                _ => None,
            })
            .collect();
        Notation {
            crossings,
            arcs,
            loops: self.free_loops,
            boundary: Some(self.boundary_points.clone()),
        }
    }

    pub fn serialize(&self) -> String {
        self.to_notation().render()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn free_arcs(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| matches!((e.tail, e.head), (Endpoint::Boundary(_), Endpoint::Boundary(_))))
            .count()
    }

    pub fn boundary_points(&self) -> &[String] {
        &self.boundary_points
    }

    pub fn boundary_index(&self, label: &str) -> Option<usize> {
        self.boundary_points.iter().position(|b| b == label)
    }

    /// Numbers of right-handed and left-handed crossings.
    pub fn crossing_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign == Sign::Positive).count();
        (pos, self.crossings.len() - pos)
    }

    /// Edge leaving crossing `c` through `port`'s opposite, i.e. the
    /// continuation of the strand entering at `port`.
    fn continuation(&self, endpoint: Endpoint) -> Option<EdgeId> {
        match endpoint {
            Endpoint::Port { crossing, port } => Some(self.crossings[crossing].ports[(port + 2) % 4]),
            Endpoint::Boundary(_) => None,
        }
    }

    /// Arcs first (ordered by the boundary position of their start), then
    /// closed components ordered by lowest edge id. Crossing-free loops are
    /// not included.
    pub fn strands(&self) -> Vec<Strand> {
        let mut seen = vec![false; self.edges.len()];
        let mut arcs: Vec<(usize, Strand)> = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if let Endpoint::Boundary(b) = e.tail {
                let mut edges = vec![id];
                seen[id] = true;
                let mut cur = id;
                while let Some(next) = self.continuation(self.edges[cur].head) {
                    seen[next] = true;
                    edges.push(next);
                    cur = next;
                }
                arcs.push((b, Strand { edges, closed: false }));
            }
        }
        arcs.sort_by_key(|(b, _)| *b);
        let mut out: Vec<Strand> = arcs.into_iter().map(|(_, s)| s).collect();
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            let mut edges = vec![start];
            seen[start] = true;
            let mut cur = start;
            loop {
                let next = self.continuation(self.edges[cur].head).expect("closed strand");
                if next == start {
                    break;
                }
                seen[next] = true;
                edges.push(next);
                cur = next;
            }
            out.push(Strand { edges, closed: true });
        }
        out
    }

    /// Strand index of every edge, in the indexing of [`Self::strands`].
    pub fn strand_of_edges(&self) -> (Vec<Strand>, Vec<usize>) {
        let strands = self.strands();
        let mut of = vec![usize::MAX; self.edges.len()];
        for (i, s) in strands.iter().enumerate() {
            for &e in &s.edges {
                of[e] = i;
            }
        }
        (strands, of)
    }

    /// `(under strand, over strand)` for every crossing.
    fn crossing_strands(&self, strand_of: &[usize]) -> Vec<(usize, usize)> {
        self.crossings.iter().map(|c| (strand_of[c.ports[0]], strand_of[c.ports[1]])).collect()
    }

    pub fn arc_id(&self, strand: &Strand) -> Option<ArcId> {
        match self.edges[strand.edges[0]].tail {
            Endpoint::Boundary(b) if !strand.closed => Some(ArcId(self.boundary_points[b].clone())),
            _ => None,
        }
    }

    /// Arc strands only, as `(id, strand)`, in boundary order of their start.
    pub fn arcs(&self) -> Vec<(ArcId, Strand)> {
        self.strands()
            .into_iter()
            .filter(|s| !s.closed)
            .map(|s| (self.arc_id(&s).expect("open strand starts on boundary"), s))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.boundary_points.len() / 2
    }

    /// True if the diagram has closed components (loops or circles through crossings).
    pub fn has_circles(&self) -> bool {
        self.free_loops > 0 || self.strands().iter().any(|s| s.closed)
    }

    /// Combinatorial simplicity test: no arc crosses itself or a circle,
    /// and the multigraph on arcs with one edge per arc-arc crossing is a
    /// forest without parallel edges.
    pub fn is_simple(&self) -> bool {
        let (strands, strand_of) = self.strand_of_edges();
        let mut parent: Vec<usize> = (0..strands.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let n = p[c];
                p[c] = r;
                c = n;
            }
            r
        }
        for (u, o) in self.crossing_strands(&strand_of) {
            let (u_arc, o_arc) = (!strands[u].closed, !strands[o].closed);
            if !u_arc && !o_arc {
                continue;
            }
            if u == o || u_arc != o_arc {
                return false;
            }
            let (ru, ro) = (find(&mut parent, u), find(&mut parent, o));
            if ru == ro {
                return false;
            }
            parent[ru] = ro;
        }
        true
    }

    /// Number of crossings each arc takes part in (a self-crossing counts once).
    pub fn arc_crossing_counts(&self) -> Vec<(ArcId, usize)> {
        let (strands, strand_of) = self.strand_of_edges();
        let mut counts = vec![0usize; strands.len()];
        for (u, o) in self.crossing_strands(&strand_of) {
            counts[u] += 1;
            if o != u {
                counts[o] += 1;
            }
        }
        strands
            .iter()
            .zip(counts)
            .filter(|(s, _)| !s.closed)
            .map(|(s, c)| (self.arc_id(s).expect("arc"), c))
            .collect()
    }

    /// An arc meeting the rest of the diagram in at most one crossing,
    /// earliest in boundary order.
    pub fn find_leaf_arc(&self) -> Option<ArcId> {
        self.arc_crossing_counts().into_iter().find(|(_, c)| *c <= 1).map(|(id, _)| id)
    }

    /// Crossings on the given arc.
    pub fn crossings_on(&self, arc: &ArcId) -> Option<Vec<usize>> {
        let (_, strand) = self.arcs().into_iter().find(|(id, _)| id == arc)?;
        let edges: BTreeSet<EdgeId> = strand.edges.iter().copied().collect();
        Some(
            self.crossings
                .iter()
                .enumerate()
                .filter(|(_, c)| c.ports.iter().any(|e| edges.contains(e)))
                .map(|(i, _)| i)
                .collect(),
        )
    }
}

impl fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TYPE_1_1: &str = "B a b c d\nX+ a b c d\n";
    pub(crate) const TREFOIL: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";
    // one horizontal arc crossed by two vertical arcs
    pub(crate) const TYPE_2_4: &str = "X+ a b a2 d\nX+ e f e2 b\n";

    #[test]
    fn free_loop_and_free_arc() {
        let d = TangleDiagram::parse("O").unwrap();
        assert_eq!((d.free_loops(), d.crossing_count(), d.free_arcs()), (1, 0, 0));
        let d = TangleDiagram::parse("A b1 b2").unwrap();
        assert_eq!(d.free_arcs(), 1);
        assert_eq!(d.boundary_points(), ["b1", "b2"]);
    }

    #[test]
    fn degree_violation() {
        let err = TangleDiagram::parse("X e1 e1 e1 e1").unwrap_err();
        assert_eq!(err, DiagramError::PortDegree { label: "e1".into(), count: 4 });
    }

    #[test]
    fn crossing_counts_and_mirror() {
        let d = TangleDiagram::parse(TYPE_1_1).unwrap();
        assert_eq!(d.crossing_counts(), (1, 0));
        assert_eq!(d.mirror().crossing_counts(), (0, 1));
        assert_eq!(TangleDiagram::parse("A p q").unwrap().crossing_counts(), (0, 0));
        // KnotTheory's 3_1 is the left-handed trefoil
        assert_eq!(TangleDiagram::parse(TREFOIL).unwrap().crossing_counts(), (0, 3));
    }

    #[test]
    fn round_trip_one_crossing() {
        let d = TangleDiagram::parse(TYPE_1_1).unwrap();
        let text = d.serialize();
        assert_eq!(text, TYPE_1_1);
        assert_eq!(TangleDiagram::parse(&text).unwrap(), d);
    }

    #[test]
    fn simplicity() {
        assert!(TangleDiagram::parse(TYPE_2_4).unwrap().is_simple());
        assert!(TangleDiagram::parse("A a b\nA c d\nA e f").unwrap().is_simple());
        // two arcs crossing twice
        let clasp = TangleDiagram::parse("X+ a b c d\nX+ c e f b").unwrap();
        assert_eq!(clasp.arcs().len(), 2);
        assert!(!clasp.is_simple());
        assert!(TangleDiagram::parse(TREFOIL).unwrap().has_circles());
    }

    #[test]
    fn leaf_arcs() {
        let d = TangleDiagram::parse(TYPE_2_4).unwrap();
        let counts = d.arc_crossing_counts();
        assert_eq!(counts.iter().map(|c| c.1).collect::<Vec<_>>().iter().sum::<usize>(), 4);
        let leaf = d.find_leaf_arc().unwrap();
        let on = d.crossings_on(&leaf).unwrap();
        assert_eq!(on.len(), 1);
        assert_eq!(TangleDiagram::parse("A p q").unwrap().find_leaf_arc(), Some(ArcId("p".into())));
        assert_eq!(TangleDiagram::parse("O").unwrap().find_leaf_arc(), None);
    }
}
