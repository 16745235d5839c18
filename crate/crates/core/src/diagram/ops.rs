//! Diagram surgery, done on the notation level and re-validated.

use std::collections::{HashMap, HashSet};

use super::{ArcId, CrossingDecl, DiagramError, Endpoint, Notation, Sign, TangleDiagram};

/// Whether an attached arc passes over or under the existing diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    Over,
    Under,
}

/// A new arc crossing the edge that ends at boundary point `boundary` once,
/// right next to the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub boundary: String,
    pub placement: Placement,
    pub sign: Sign,
}

fn rename(n: &mut Notation, from: &str, to: &str) {
    for c in &mut n.crossings {
        for l in &mut c.labels {
            if l == from {
                *l = to.to_owned();
            }
        }
    }
    for (p, q) in &mut n.arcs {
        if p == from {
            *p = to.to_owned();
        }
        if q == from {
            *q = to.to_owned();
        }
    }
    if let Some(b) = &mut n.boundary {
        for l in b {
            if l == from {
                *l = to.to_owned();
            }
        }
    }
}

fn fresh(taken: &HashSet<String>, base: &str) -> String {
    let mut s = format!("{base}'");
    while taken.contains(&s) {
        s.push('\'');
    }
    s
}

fn all_labels(n: &Notation) -> HashSet<String> {
    let mut set: HashSet<String> = n.crossings.iter().flat_map(|c| c.labels.iter().cloned()).collect();
    for (p, q) in &n.arcs {
        set.insert(p.clone());
        set.insert(q.clone());
    }
    set
}

// compass directions, counterclockwise from east
const E: usize = 0;
const N: usize = 1;
const W: usize = 2;
const S: usize = 3;

impl TangleDiagram {
    /// Reflection through the projection plane: every crossing switches.
    pub fn mirror(&self) -> TangleDiagram {
        let mut n = self.to_notation();
        for c in &mut n.crossings {
            let [a, b, cc, d] = c.labels.clone();
            let sign = c.sign.expect("serialized crossings are signed");
            c.labels = match sign {
                Sign::Positive => [d, a, b, cc],
                Sign::Negative => [b, cc, d, a],
            };
            c.sign = Some(sign.flip());
        }
        n.build().expect("mirror of a valid diagram is valid")
    }

    /// Reverses the orientation of the given strands (indices into
    /// [`Self::strands`]).
    pub fn reverse_strands(&self, which: &[usize]) -> TangleDiagram {
        let (strands, strand_of) = self.strand_of_edges();
        let flip: Vec<bool> = (0..strands.len()).map(|i| which.contains(&i)).collect();
        let mut n = self.to_notation();
        for (decl, c) in n.crossings.iter_mut().zip(&self.crossings) {
            let under = flip[strand_of[c.ports[0]]];
            let over = flip[strand_of[c.ports[1]]];
            if under {
                decl.labels.rotate_left(2);
            }
            if under != over {
                decl.sign = decl.sign.map(Sign::flip);
            }
        }
        let strand_of_label: HashMap<&str, usize> =
            self.edges.iter().enumerate().map(|(e, edge)| (edge.label.as_str(), strand_of[e])).collect();
        for (p, q) in &mut n.arcs {
            if flip[strand_of_label[p.as_str()]] {
                std::mem::swap(p, q);
            }
        }
        n.build().expect("reversal of a valid diagram is valid")
    }

    /// Side-by-side disjoint union; colliding labels of `other` get primes.
    pub fn disjoint_union(&self, other: &TangleDiagram) -> TangleDiagram {
        let mut left = self.to_notation();
        let mut right = other.to_notation();
        let mut taken = all_labels(&left);
        let right_labels: Vec<String> = {
            let mut v: Vec<String> = all_labels(&right).into_iter().collect();
            v.sort();
            v
        };
        let right_all: HashSet<String> = right_labels.iter().cloned().collect();
        for l in right_labels {
            if taken.contains(&l) {
                let mut new = fresh(&taken, &l);
                while right_all.contains(&new) {
                    taken.insert(new.clone());
                    new = fresh(&taken, &l);
                }
                rename(&mut right, &l, &new);
                taken.insert(new);
            } else {
                taken.insert(l);
            }
        }
        left.crossings.append(&mut right.crossings);
        left.arcs.append(&mut right.arcs);
        left.loops += right.loops;
        let mut boundary = left.boundary.take().unwrap_or_default();
        boundary.extend(right.boundary.take().unwrap_or_default());
        left.boundary = Some(boundary);
        left.build().expect("disjoint union of valid diagrams is valid")
    }

    /// Splits into connected components; each free loop and free arc is its
    /// own component.
    pub fn connected_components(&self) -> Vec<TangleDiagram> {
        let (strands, strand_of) = self.strand_of_edges();
        let mut parent: Vec<usize> = (0..strands.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in &self.crossings {
            let (a, b) = (find(&mut parent, strand_of[c.ports[0]]), find(&mut parent, strand_of[c.ports[1]]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let full = self.to_notation();
        let boundary = full.boundary.clone().unwrap_or_default();
        let mut groups: Vec<usize> = Vec::new();
        for s in 0..strands.len() {
            let r = find(&mut parent, s);
            if !groups.contains(&r) {
                groups.push(r);
            }
        }
        let mut out = Vec::new();
        for g in groups {
            let mut labels = HashSet::new();
            let mut ends = HashSet::new();
            for (e, edge) in self.edges.iter().enumerate() {
                if find(&mut parent, strand_of[e]) != g {
                    continue;
                }
                labels.insert(edge.label.clone());
                for end in [edge.tail, edge.head] {
                    if let Endpoint::Boundary(b) = end {
                        ends.insert(self.boundary_points[b].clone());
                    }
                }
            }
            let part = Notation {
                crossings: full.crossings.iter().filter(|c| labels.contains(&c.labels[0])).cloned().collect(),
                arcs: full.arcs.iter().filter(|(p, _)| labels.contains(p)).cloned().collect(),
                loops: 0,
                boundary: Some(boundary.iter().filter(|b| ends.contains(*b)).cloned().collect()),
            };
            out.push(part.build().expect("component of a valid diagram is valid"));
        }
        for _ in 0..self.free_loops {
            out.push(Notation { loops: 1, ..Notation::default() }.build().expect("loop"));
        }
        out
    }

    /// Deletes an arc that does not cross itself, splicing the strands it
    /// crossed.
    pub fn remove_arc(&self, arc: &ArcId) -> Result<TangleDiagram, DiagramError> {
        let (_, strand) = self
            .arcs()
            .into_iter()
            .find(|(id, _)| id == arc)
            .ok_or_else(|| DiagramError::NoSuchBoundary(arc.0.clone()))?;
        let arc_edges: HashSet<usize> = strand.edges.iter().copied().collect();
        let arc_labels: HashSet<String> = strand.edges.iter().map(|&e| self.edges[e].label.clone()).collect();
        let mut n = self.to_notation();
        let on_arc: Vec<usize> = (0..self.crossings.len())
            .filter(|&c| self.crossings[c].ports.iter().any(|e| arc_edges.contains(e)))
            .collect();
        for &c in &on_arc {
            let ports = self.crossings[c].ports;
            let under_on_arc = arc_edges.contains(&ports[0]);
            if under_on_arc && arc_edges.contains(&ports[1]) {
                return Err(DiagramError::Orientation {
                    label: arc.0.clone(),
                    detail: "cannot remove an arc that crosses itself".into(),
                });
            }
            let labels = n.crossings[c].labels.clone();
            let (in_label, out_label) = if under_on_arc {
                match self.crossings[c].sign {
                    Sign::Positive => (labels[3].clone(), labels[1].clone()),
                    Sign::Negative => (labels[1].clone(), labels[3].clone()),
                }
            } else {
                (labels[0].clone(), labels[2].clone())
            };
            let count = |l: &str| n.crossings.iter().flat_map(|d| d.labels.iter()).filter(|x| *x == l).count();
            let in_boundary = count(&in_label) == 1;
            let out_boundary = count(&out_label) == 1;
            // blank out this crossing so later renames skip it
            n.crossings[c].labels = [0, 1, 2, 3].map(|i| format!("\u{0}{c}.{i}"));
            if in_label == out_label {
                n.loops += 1;
            } else if in_boundary && out_boundary {
                n.arcs.push((in_label, out_label));
            } else if out_boundary {
                rename(&mut n, &in_label, &out_label);
            } else {
                rename(&mut n, &out_label, &in_label);
            }
        }
        let removed: HashSet<usize> = on_arc.iter().copied().collect();
        n.crossings = n.crossings.into_iter().enumerate().filter(|(i, _)| !removed.contains(i)).map(|(_, c)| c).collect();
        n.arcs.retain(|(p, _)| !arc_labels.contains(p));
        let (tail, head) = match (self.edges[strand.edges[0]].tail, self.edges[*strand.edges.last().expect("nonempty")].head) {
            (Endpoint::Boundary(t), Endpoint::Boundary(h)) => (t, h),
            _ => unreachable!("arc strands end on the boundary"),
        };
        if let Some(b) = &mut n.boundary {
            let (t, h) = (&self.boundary_points[tail], &self.boundary_points[head]);
            b.retain(|x| x != t && x != h);
        }
        n.build()
    }

    /// Adds a new arc crossing the edge at boundary point `boundary` once.
    /// The new crossing becomes crossing 0.
    pub fn attach_pendant_arc(&self, attach: &Attachment) -> Result<TangleDiagram, DiagramError> {
        let b = self.boundary_index(&attach.boundary).ok_or_else(|| DiagramError::NoSuchBoundary(attach.boundary.clone()))?;
        let edge = self
            .edges
            .iter()
            .find(|e| e.tail == Endpoint::Boundary(b) || e.head == Endpoint::Boundary(b))
            .expect("every boundary point ends an edge");
        let inward = edge.tail == Endpoint::Boundary(b);
        let mut n = self.to_notation();
        let mut taken = all_labels(&n);
        let b_label = attach.boundary.clone();
        let free = matches!((edge.tail, edge.head), (Endpoint::Boundary(_), Endpoint::Boundary(_)));
        let inner_label = if free {
            let (p, q) = n.arcs.iter().find(|(p, q)| *p == b_label || *q == b_label).cloned().expect("free arc");
            n.arcs.retain(|(x, _)| *x != p);
            if p == b_label { q } else { p }
        } else {
            let l = fresh(&taken, &b_label);
            taken.insert(l.clone());
            rename_port_only(&mut n, &b_label, &l);
            l
        };
        let west = fresh(&taken, &format!("{b_label}<"));
        taken.insert(west.clone());
        let east = fresh(&taken, &format!("{b_label}>"));

        let mut label_at = [String::new(), String::new(), String::new(), String::new()];
        label_at[S] = b_label.clone();
        label_at[N] = inner_label;
        label_at[W] = west.clone();
        label_at[E] = east.clone();

        let existing_in = if inward { S } else { N };
        let ports_and_sign = |new_in: usize| {
            let (under_in, over_in) = match attach.placement {
                Placement::Over => (existing_in, new_in),
                Placement::Under => (new_in, existing_in),
            };
            let order = [under_in, (under_in + 1) % 4, (under_in + 2) % 4, (under_in + 3) % 4];
            let sign = if order[3] == over_in { Sign::Positive } else { Sign::Negative };
            (order, sign)
        };
        let (mut order, mut sign) = ports_and_sign(W);
        if sign != attach.sign {
            (order, sign) = ports_and_sign(E);
        }
        let decl = CrossingDecl { sign: Some(sign), labels: order.map(|d| label_at[d].clone()), line: 0 };
        n.crossings.insert(0, decl);
        let mut boundary = n.boundary.take().unwrap_or_default();
        let pos = boundary.iter().position(|x| *x == b_label).expect("boundary label present");
        boundary.insert(pos + 1, east);
        boundary.insert(pos, west);
        n.boundary = Some(boundary);
        n.build()
    }
}

fn rename_port_only(n: &mut Notation, from: &str, to: &str) {
    for c in &mut n.crossings {
        for l in &mut c.labels {
            if l == from {
                *l = to.to_owned();
            }
        }
    }
}
