//! Validation of a [`Notation`] into a [`TangleDiagram`], including sign
//! inference from edge orientations.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{Crossing, DiagramError, Edge, Endpoint, Notation, Sign, TangleDiagram};

#[derive(Clone, Copy, Debug)]
enum Occ {
    Port(usize, usize),
    ArcTail(usize),
    ArcHead,
}

/// Whether an edge end is incoming, as `value(node) xor parity` where node 0
/// is the constant `false` and node `c + 1` is "crossing `c` is negative".
fn incoming_role(occ: Occ) -> (usize, bool) {
    match occ {
        Occ::Port(_, 0) => (0, true),
        Occ::Port(_, 2) => (0, false),
        // over-strand enters at port 1 exactly when the crossing is negative
        Occ::Port(c, 1) => (c + 1, false),
        Occ::Port(c, 3) => (c + 1, true),
        Occ::Port(..) => unreachable!("port index"),
        Occ::ArcTail(_) => (0, false),
        Occ::ArcHead => (0, true),
    }
}

impl Notation {
    pub fn build(&self) -> Result<TangleDiagram, DiagramError> {
        let mut order: Vec<&str> = Vec::new();
        let mut occs: HashMap<&str, Vec<Occ>> = HashMap::new();
        for (c, decl) in self.crossings.iter().enumerate() {
            for (p, label) in decl.labels.iter().enumerate() {
                let entry = occs.entry(label.as_str()).or_default();
                if entry.is_empty() {
                    order.push(label);
                }
                entry.push(Occ::Port(c, p));
            }
        }
        for (a, (p, q)) in self.arcs.iter().enumerate() {
            for (label, occ) in [(p, Occ::ArcTail(a)), (q, Occ::ArcHead)] {
                let entry = occs.entry(label.as_str()).or_default();
                if entry.is_empty() {
                    order.push(label);
                }
                entry.push(occ);
            }
        }
        for label in &order {
            let list = &occs[label];
            let arc_end = list.iter().any(|o| !matches!(o, Occ::Port(..)));
            if list.len() > 2 || (arc_end && list.len() > 1) {
                return Err(DiagramError::PortDegree { label: (*label).to_owned(), count: list.len() });
            }
        }

        let signs = self.solve_orientation(&order, &occs)?;

        // boundary points: labels occurring once, in order of first appearance
        let natural: Vec<&str> = order.iter().copied().filter(|l| occs[l].len() == 1).collect();
        let boundary_points: Vec<String> = match &self.boundary {
            None => natural.iter().map(|s| (*s).to_owned()).collect(),
            Some(declared) => {
                let mut seen = HashSet::new();
                for b in declared {
                    if !seen.insert(b.as_str()) {
                        return Err(DiagramError::DuplicateBoundary(b.clone()));
                    }
                    if !natural.contains(&b.as_str()) {
                        return Err(DiagramError::UnknownBoundary(b.clone()));
                    }
                }
                if let Some(missing) = natural.iter().find(|l| !seen.contains(*l)) {
                    return Err(DiagramError::Dangling((*missing).to_owned()));
                }
                declared.clone()
            }
        };
        debug_assert!(boundary_points.len().is_multiple_of(2));
        let bindex: HashMap<&str, usize> =
            boundary_points.iter().enumerate().map(|(i, b)| (b.as_str(), i)).collect();

        let mut edges = Vec::new();
        let mut edge_of: HashMap<&str, usize> = HashMap::new();
        let mut ports = vec![[usize::MAX; 4]; self.crossings.len()];
        let is_in = |occ: Occ| {
            let (node, parity) = incoming_role(occ);
            let value = node != 0 && signs[node - 1] == Sign::Negative;
            value ^ parity
        };
        for label in &order {
            let list = &occs[label];
            let endpoint = |occ: Occ| match occ {
                Occ::Port(c, p) => Endpoint::Port { crossing: c, port: p },
                _ => unreachable!(),
            };
            let (tail, head) = match list.as_slice() {
                [Occ::ArcTail(_)] => {
                    let arc = match list[0] {
                        Occ::ArcTail(a) => a,
                        _ => unreachable!(),
                    };
                    let q = &self.arcs[arc].1;
                    (Endpoint::Boundary(bindex[label]), Endpoint::Boundary(bindex[q.as_str()]))
                }
                [Occ::ArcHead] => continue,
                [one] => {
                    let b = Endpoint::Boundary(bindex[label]);
                    if is_in(*one) {
                        (b, endpoint(*one))
                    } else {
                        (endpoint(*one), b)
                    }
                }
                [x, y] => {
                    if is_in(*x) {
                        (endpoint(*y), endpoint(*x))
                    } else {
                        (endpoint(*x), endpoint(*y))
                    }
                }
                _ => unreachable!(),
            };
            for occ in list {
                if let Occ::Port(c, p) = occ {
                    ports[*c][*p] = edges.len();
                }
            }
            edge_of.insert(label, edges.len());
            edges.push(Edge { label: (*label).to_owned(), tail, head });
        }

        // canonical edge order: crossing ports first, then free arcs
        let mut remap = vec![usize::MAX; edges.len()];
        let mut next = 0;
        for c in &ports {
            for &e in c {
                if remap[e] == usize::MAX {
                    remap[e] = next;
                    next += 1;
                }
            }
        }
        for (p, _) in &self.arcs {
            let e = edge_of[p.as_str()];
            remap[e] = next;
            next += 1;
        }
        let mut sorted: Vec<Option<Edge>> = vec![None; edges.len()];
        for (old, e) in edges.into_iter().enumerate() {
            sorted[remap[old]] = Some(e);
        }
        let edges: Vec<Edge> = sorted.into_iter().map(|e| e.expect("edge remap is a bijection")).collect();
        let crossings = ports
            .iter()
            .zip(&signs)
            .map(|(p, &sign)| Crossing { ports: p.map(|e| remap[e]), sign })
            .collect();

        Ok(TangleDiagram { crossings, edges, free_loops: self.loops, boundary_points })
    }

    fn solve_orientation(&self, order: &[&str], occs: &HashMap<&str, Vec<Occ>>) -> Result<Vec<Sign>, DiagramError> {
        let n = self.crossings.len();
        // adjacency: (neighbour, xor weight, edge label)
        let mut adj: Vec<Vec<(usize, bool, usize)>> = vec![Vec::new(); n + 1];
        for (li, label) in order.iter().enumerate() {
            if let [x, y] = occs[label].as_slice() {
                let (n1, p1) = incoming_role(*x);
                let (n2, p2) = incoming_role(*y);
                // exactly one end is incoming
                let w = !(p1 ^ p2);
                if n1 == n2 {
                    if w {
                        let detail = if p1 { "both ends are incoming" } else { "both ends are outgoing" };
                        return Err(DiagramError::Orientation { label: (*label).to_owned(), detail: detail.into() });
                    }
                    continue;
                }
                adj[n1].push((n2, w, li));
                adj[n2].push((n1, w, li));
            }
        }
        let mut value: Vec<Option<bool>> = vec![None; n + 1];
        let propagate = |start: usize, v: bool, value: &mut Vec<Option<bool>>| -> Result<(), DiagramError> {
            value[start] = Some(v);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let vu = value[u].expect("queued nodes are assigned");
                for &(w, weight, li) in &adj[u] {
                    let want = vu ^ weight;
                    match value[w] {
                        None => {
                            value[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(have) if have != want => {
                            return Err(DiagramError::Orientation {
                                label: order[li].to_owned(),
                                detail: "edge directions around a cycle of crossings disagree".into(),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
            Ok(())
        };
        propagate(0, false, &mut value)?;
        for (c, decl) in self.crossings.iter().enumerate() {
            if value[c + 1].is_none() {
                match decl.sign {
                    Some(s) => propagate(c + 1, s == Sign::Negative, &mut value)?,
                    None => return Err(DiagramError::Underdetermined { crossing: c, line: decl.line }),
                }
            }
        }
        let mut signs = Vec::with_capacity(n);
        for (c, decl) in self.crossings.iter().enumerate() {
            let sign = if value[c + 1].expect("all crossings assigned") { Sign::Negative } else { Sign::Positive };
            if let Some(declared) = decl.sign {
                if declared != sign {
                    return Err(DiagramError::SignMismatch { crossing: c, line: decl.line, declared });
                }
            }
            signs.push(sign);
        }
        Ok(signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infers_signs_of_trefoil() {
        let d = Notation::parse("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3").unwrap().build().unwrap();
        assert!(d.crossings().iter().all(|c| c.sign() == Sign::Negative));
        assert_eq!(d.boundary_points().len(), 0);
        assert_eq!(d.edges().len(), 6);
    }

    #[test]
    fn sign_mismatch_is_reported() {
        let err = TangleDiagram::parse("X 1 4 2 5\nX- 3 6 4 1\nX+ 5 2 6 3").unwrap_err();
        assert_eq!(err, DiagramError::SignMismatch { crossing: 2, line: 3, declared: Sign::Positive });
    }

    #[test]
    fn underdetermined_sign() {
        let err = TangleDiagram::parse("X a b c d").unwrap_err();
        assert_eq!(err, DiagramError::Underdetermined { crossing: 0, line: 1 });
    }

    #[test]
    fn orientation_conflict() {
        // edge x enters both crossings as the under-strand
        let err = TangleDiagram::parse("X+ x b c d\nX+ x f g h").unwrap_err();
        assert!(matches!(err, DiagramError::Orientation { ref label, .. } if label == "x"));
    }

    #[test]
    fn boundary_declaration_checks() {
        assert_eq!(
            TangleDiagram::parse("B a b c\nX+ a b c d").unwrap_err(),
            DiagramError::Dangling("d".into())
        );
        assert_eq!(
            TangleDiagram::parse("B a b c d z\nX+ a b c d").unwrap_err(),
            DiagramError::UnknownBoundary("z".into())
        );
        assert_eq!(TangleDiagram::parse("A p p").unwrap_err(), DiagramError::PortDegree { label: "p".into(), count: 2 });
        let d = TangleDiagram::parse("B d c b a\nX+ a b c d").unwrap();
        assert_eq!(d.boundary_points(), ["d", "c", "b", "a"]);
    }

    #[test]
    fn edge_directions_follow_sign() {
        let d = TangleDiagram::parse("X+ a b c d").unwrap();
        let e = |l: &str| d.edges().iter().find(|e| e.label == l).unwrap().clone();
        assert!(matches!(e("a").head, Endpoint::Port { port: 0, .. }));
        assert!(matches!(e("d").head, Endpoint::Port { port: 3, .. }));
        assert!(matches!(e("b").tail, Endpoint::Port { port: 1, .. }));
        let d = TangleDiagram::parse("X- a b c d").unwrap();
        let b = d.edges().iter().find(|e| e.label == "b").unwrap();
        assert!(matches!(b.head, Endpoint::Port { port: 1, .. }));
    }
}
