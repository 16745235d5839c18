//! JSON form of a diagram.
//!
//! ```json
//! {
//!   "boundary_points": ["a", "b", "c", "d"],
//!   "crossings": [{"ports": ["a", "b", "c", "d"], "sign": 1}],
//!   "edges": [{"label": "a", "tail": {"boundary": "a"}, "head": {"crossing": 0, "port": 0}}],
//!   "free_loops": 0
//! }
//! ```
//!
//! Ports are numbered 0..4 counterclockwise from the incoming under-strand.
//! `edges` lists every edge including crossing-free arcs; on input it must
//! agree with the edges derived from `crossings` and `boundary_points`.

use serde::{Deserialize, Serialize};

use super::{CrossingDecl, DiagramError, Endpoint, Notation, Sign, TangleDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub ports: [String; 4],
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndpointJson {
    Port { crossing: usize, port: usize },
    Boundary { boundary: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub label: String,
    pub tail: EndpointJson,
    pub head: EndpointJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub boundary_points: Vec<String>,
    pub crossings: Vec<CrossingJson>,
    pub edges: Vec<EdgeJson>,
    pub free_loops: usize,
}

impl From<&TangleDiagram> for DiagramJson {
    fn from(d: &TangleDiagram) -> DiagramJson {
        let endpoint = |e: Endpoint| match e {
            Endpoint::Port { crossing, port } => EndpointJson::Port { crossing, port },
            Endpoint::Boundary(b) => EndpointJson::Boundary { boundary: d.boundary_points[b].clone() },
        };
        DiagramJson {
            boundary_points: d.boundary_points.clone(),
            crossings: d
                .crossings
                .iter()
                .map(|c| CrossingJson { ports: c.ports.map(|e| d.edges[e].label.clone()), sign: c.sign })
                .collect(),
            edges: d
                .edges
                .iter()
                .map(|e| EdgeJson { label: e.label.clone(), tail: endpoint(e.tail), head: endpoint(e.head) })
                .collect(),
            free_loops: d.free_loops,
        }
    }
}

impl TryFrom<&DiagramJson> for TangleDiagram {
    type Error = DiagramError;

    fn try_from(j: &DiagramJson) -> Result<TangleDiagram, DiagramError> {
        let arcs = j
            .edges
            .iter()
            .filter_map(|e| match (&e.tail, &e.head) {
                (EndpointJson::Boundary { boundary: p }, EndpointJson::Boundary { boundary: q }) => {
                    Some((p.clone(), q.clone()))
                }
                _ => None,
            })
            .collect();
        let notation = Notation {
            crossings: j
                .crossings
                .iter()
                .map(|c| CrossingDecl { sign: Some(c.sign), labels: c.ports.clone(), line: 0 })
                .collect(),
            arcs,
            loops: j.free_loops,
            boundary: Some(j.boundary_points.clone()),
        };
        let d = notation.build()?;
        if DiagramJson::from(&d).edges != j.edges {
            return Err(DiagramError::Json("edge list disagrees with crossings and boundary".into()));
        }
        Ok(d)
    }
}

impl TangleDiagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DiagramJson::from(self)).expect("diagram JSON serializes")
    }

    pub fn from_json(text: &str) -> Result<TangleDiagram, DiagramError> {
        let j: DiagramJson = serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        TangleDiagram::try_from(&j)
    }
}
