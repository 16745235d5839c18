//! Diagrams from plane curves, and random samplers built on them.
//!
//! Curves live in the unit disk; open curves start and end on the unit
//! circle. Crossings are the transverse intersections of segments, so every
//! generated diagram is planar by construction.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use rand::Rng;

use crate::diagram::{CrossingDecl, Notation, Sign, TangleDiagram};

pub type Point = (f64, f64);

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl Polyline {
    pub fn open(points: Vec<Point>) -> Polyline {
        Polyline { points, closed: false }
    }

    pub fn closed(points: Vec<Point>) -> Polyline {
        Polyline { points, closed: true }
    }

    fn segments(&self) -> Vec<(Point, Point)> {
        let p = &self.points;
        let mut segs: Vec<(Point, Point)> = p.windows(2).map(|w| (w[0], w[1])).collect();
        if self.closed {
            segs.push((p[p.len() - 1], p[0]));
        }
        segs
    }
}

fn cross(a: Point, b: Point) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

/// Parameters `(s, t)` of a proper intersection of two segments.
fn intersect(a: (Point, Point), b: (Point, Point)) -> Option<(f64, f64)> {
    let r = sub(a.1, a.0);
    let s = sub(b.1, b.0);
    let denom = cross(r, s);
    if denom.abs() < 1e-12 {
        return None;
    }
    let qp = sub(b.0, a.0);
    let t = cross(qp, s) / denom;
    let u = cross(qp, r) / denom;
    ((0.0..1.0).contains(&t) && (0.0..1.0).contains(&u) && t > 0.0 && u > 0.0).then_some((t, u))
}

/// A point where strand `strand` passes, at curve parameter `param`.
#[derive(Clone, Copy, Debug)]
struct Pass {
    strand: usize,
    param: f64,
    dir: Point,
}

/// Builds a diagram from curves; `over_first(i)` says whether, at the
/// `i`-th intersection found, the curve met first in input order is on top.
///
/// Edges are labelled `e0, e1, ...`; boundary points are listed
/// counterclockwise by angle.
pub fn diagram_from_polylines(lines: &[Polyline], mut over_first: impl FnMut(usize) -> bool) -> TangleDiagram {
    let segs: Vec<Vec<(Point, Point)>> = lines.iter().map(Polyline::segments).collect();
    // (under pass, over pass)
    let mut crossings: Vec<(Pass, Pass)> = Vec::new();
    for (a, sa) in segs.iter().enumerate() {
        for (b, sb) in segs.iter().enumerate().skip(a) {
            for (i, &x) in sa.iter().enumerate() {
                for (j, &y) in sb.iter().enumerate() {
                    if a == b && (j <= i + 1 || (lines[a].closed && i == 0 && j == sa.len() - 1)) {
                        continue;
                    }
                    if let Some((t, u)) = intersect(x, y) {
                        let pa = Pass { strand: a, param: i as f64 + t, dir: sub(x.1, x.0) };
                        let pb = Pass { strand: b, param: j as f64 + u, dir: sub(y.1, y.0) };
                        let idx = crossings.len();
                        crossings.push(if over_first(idx) { (pb, pa) } else { (pa, pb) });
                    }
                }
            }
        }
    }

    // passes along each strand in order: (param, crossing, is_over)
    let mut along: Vec<Vec<(f64, usize, bool)>> = vec![Vec::new(); lines.len()];
    for (c, (under, over)) in crossings.iter().enumerate() {
        along[under.strand].push((under.param, c, false));
        along[over.strand].push((over.param, c, true));
    }
    let mut next_label = 0;
    let mut label = || {
        next_label += 1;
        format!("e{}", next_label - 1)
    };
    // (in label, out label) of each crossing's under and over pass
    let mut labels: HashMap<(usize, bool), (String, String)> = HashMap::new();
    let mut notation = Notation::default();
    let mut boundary: Vec<(f64, String)> = Vec::new();
    let angle = |p: Point| p.1.atan2(p.0).rem_euclid(TAU);
    for (s, line) in lines.iter().enumerate() {
        let passes = &mut along[s];
        passes.sort_by(|x, y| x.0.total_cmp(&y.0));
        if passes.is_empty() {
            if line.closed {
                notation.loops += 1;
            } else {
                let (p, q) = (label(), label());
                boundary.push((angle(line.points[0]), p.clone()));
                boundary.push((angle(*line.points.last().expect("nonempty")), q.clone()));
                notation.arcs.push((p, q));
            }
            continue;
        }
        let edge_labels: Vec<String> = (0..passes.len() + usize::from(!line.closed)).map(|_| label()).collect();
        for (i, &(_, c, over)) in passes.iter().enumerate() {
            let (incoming, outgoing) = if line.closed {
                (edge_labels[(i + passes.len() - 1) % passes.len()].clone(), edge_labels[i].clone())
            } else {
                (edge_labels[i].clone(), edge_labels[i + 1].clone())
            };
            labels.insert((c, over), (incoming, outgoing));
        }
        if !line.closed {
            boundary.push((angle(line.points[0]), edge_labels[0].clone()));
            boundary.push((angle(*line.points.last().expect("nonempty")), edge_labels[passes.len()].clone()));
        }
    }
    for (c, (under, over)) in crossings.iter().enumerate() {
        let (ui, uo) = labels[&(c, false)].clone();
        let (oi, oo) = labels[&(c, true)].clone();
        let (sign, ports) = if cross(under.dir, over.dir) > 0.0 {
            (Sign::Negative, [ui, oi, uo, oo])
        } else {
            (Sign::Positive, [ui, oo, uo, oi])
        };
        notation.crossings.push(CrossingDecl { sign: Some(sign), labels: ports, line: c + 1 });
    }
    boundary.sort_by(|x, y| x.0.total_cmp(&y.0));
    notation.boundary = Some(boundary.into_iter().map(|(_, l)| l).collect());
    notation.build().expect("curves in general position give a valid diagram")
}

fn on_circle(theta: f64) -> Point {
    (theta.cos(), theta.sin())
}

fn in_disk<R: Rng>(rng: &mut R, radius: f64) -> Point {
    loop {
        let p = (rng.random_range(-radius..radius), rng.random_range(-radius..radius));
        if p.0 * p.0 + p.1 * p.1 < radius * radius {
            return p;
        }
    }
}

/// Random simple, circle-free tangle with `arcs` straight chords whose
/// crossing graph is a forest. Orientations and over/under are random.
pub fn random_simple_tangle<R: Rng>(rng: &mut R, arcs: usize) -> TangleDiagram {
    loop {
        let mut chords: Vec<(f64, f64)> = Vec::new();
        for _ in 0..arcs {
            chords.push((rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)));
        }
        let interleave = |a: (f64, f64), b: (f64, f64)| {
            let inside = |t: f64| (a.0.min(a.1)..a.0.max(a.1)).contains(&t);
            inside(b.0) != inside(b.1)
        };
        let mut parent: Vec<usize> = (0..arcs).collect();
        fn root(p: &[usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut forest = true;
        'pairs: for i in 0..arcs {
            for j in i + 1..arcs {
                if interleave(chords[i], chords[j]) {
                    let (ri, rj) = (root(&parent, i), root(&parent, j));
                    if ri == rj {
                        forest = false;
                        break 'pairs;
                    }
                    parent[ri] = rj;
                }
            }
        }
        if !forest {
            continue;
        }
        let lines: Vec<Polyline> =
            chords.iter().map(|&(a, b)| Polyline::open(vec![on_circle(a), on_circle(b)])).collect();
        return diagram_from_polylines(&lines, |_| rng.random_bool(0.5));
    }
}

/// Random diagram with a crossing count in `crossings`: a few open curves
/// with bends and some closed polygons, so self-crossings, circles and
/// repeated crossings all occur.
pub fn random_diagram<R: Rng>(rng: &mut R, crossings: RangeInclusive<usize>) -> TangleDiagram {
    loop {
        let open = rng.random_range(0..=3usize);
        let closed = rng.random_range(usize::from(open == 0)..=2usize);
        let mut lines = Vec::new();
        for _ in 0..open {
            let bends = rng.random_range(0..=2usize);
            let mut pts = vec![on_circle(rng.random_range(0.0..TAU))];
            pts.extend((0..bends).map(|_| in_disk(rng, 0.9)));
            pts.push(on_circle(rng.random_range(0.0..TAU)));
            lines.push(Polyline::open(pts));
        }
        for _ in 0..closed {
            let corners = rng.random_range(3..=5usize);
            let centre = in_disk(rng, 0.5);
            let r = rng.random_range(0.1..0.45);
            let pts = (0..corners).map(|_| {
                let d = in_disk(rng, r);
                (centre.0 + d.0, centre.1 + d.1)
            });
            lines.push(Polyline::closed(pts.collect()));
        }
        let d = diagram_from_polylines(&lines, |_| rng.random_bool(0.5));
        if crossings.contains(&d.crossing_count()) {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn two_chords_make_one_crossing() {
        let lines = [
            Polyline::open(vec![on_circle(0.0), on_circle(3.0)]),
            Polyline::open(vec![on_circle(1.5), on_circle(4.5)]),
        ];
        let d = diagram_from_polylines(&lines, |_| true);
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.boundary_points().len(), 4);
        assert!(d.is_simple());
    }

    #[test]
    fn kink_curve() {
        // a loop-the-loop open curve crosses itself once
        let lines = [Polyline::open(vec![(-1.0, 0.0), (0.5, 0.0), (0.5, 0.5), (0.0, 0.5), (0.0, -0.5), (0.0, -1.0)])];
        let d = diagram_from_polylines(&lines, |_| false);
        assert_eq!(d.crossing_count(), 1);
        assert!(!d.is_simple());
    }

    #[test]
    fn samplers_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let d = random_simple_tangle(&mut rng, n);
            assert_eq!(d.arc_count(), n);
            assert!(d.is_simple() && !d.has_circles());
        }
        for _ in 0..20 {
            assert!((2..=6).contains(&random_diagram(&mut rng, 2..=6).crossing_count()));
        }
    }
}
