//! Lagrangian projections of plat fronts.
//!
//! Resolution replaces every front crossing by a crossing whose over-strand is
//! the strand of lesser front slope, smooths every left cusp, and turns every
//! right cusp into a small loop with one crossing. The result is stored as a
//! 4-valent planar map: each vertex lists its four half-edges
//! counterclockwise, starting from the north-east slot of the drawing.
//!
//! ```text
//!   NW(1)     NE(0)
//!        \   /
//!         \ /        quadrant q_i lies between slot i and slot i+1
//!         / \
//!        /   \
//!   SW(2)     SE(3)
//! ```
//!
//! The over-strand always runs NW–SE.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::front::{FrontEvent, FrontWord};
use crate::Rational;

pub const NE: u8 = 0;
pub const NW: u8 = 1;
pub const SW: u8 = 2;
pub const SE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexKind {
    Crossing,
    CuspLoop,
}

/// One of the four half-edges at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HalfEdge {
    pub edge: usize,
    /// The knot leaves the vertex through this slot.
    pub outgoing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub event: usize,
    pub position: usize,
    pub slots: [HalfEdge; 4],
}

impl Vertex {
    pub fn is_over(slot: u8) -> bool {
        slot % 2 == 1
    }

    pub fn incoming_over(&self) -> u8 {
        if self.slots[NW as usize].outgoing {
            SE
        } else {
            NW
        }
    }

    pub fn outgoing_over(&self) -> u8 {
        (self.incoming_over() + 2) % 4
    }

    pub fn incoming_under(&self) -> u8 {
        if self.slots[NE as usize].outgoing {
            SW
        } else {
            NE
        }
    }

    pub fn outgoing_under(&self) -> u8 {
        (self.incoming_under() + 2) % 4
    }

    /// Writhe sign of the crossing.
    pub fn crossing_sign(&self) -> i32 {
        let dir = |s: u8| -> (i32, i32) {
            match s {
                NE => (1, 1),
                NW => (-1, 1),
                SW => (-1, -1),
                _ => (1, -1),
            }
        };
        let o = dir(self.outgoing_over());
        let u = dir(self.outgoing_under());
        (o.0 * u.1 - o.1 * u.0).signum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    /// `(vertex, slot)` the knot leaves from.
    pub tail: (usize, u8),
    /// `(vertex, slot)` the knot arrives at.
    pub head: (usize, u8),
    /// Drawing polyline from tail to head.
    #[serde(skip)]
    pub path: Vec<(Rational, Rational)>,
}

/// A directed edge; `forward` follows the knot orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn reverse(self) -> Dart {
        Dart {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    pub fn index(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }
}

/// One step of a face boundary: the face lies to the left of `dart`, which
/// ends at `vertex`; the face occupies quadrant `quadrant` there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FaceStep {
    pub dart: Dart,
    pub vertex: usize,
    pub quadrant: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub steps: Vec<FaceStep>,
    pub bounded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub vertex_coords: Vec<(Rational, Rational)>,
    pub face_area: Vec<Rational>,
    pub action: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianDiagram {
    pub name: Option<String>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub unbounded_face: usize,
    pub basepoint_edge: usize,
    /// `dart.index()` -> (face, step index).
    pub dart_face: Vec<(usize, usize)>,
    pub realization: Realization,
}

/// Quadrant sign convention.
///
/// `Standard` makes a quadrant positive when it is swept counterclockwise
/// from an over-strand half-edge to an under-strand half-edge; `Flipped` is
/// the opposite choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub enum QuadrantConvention {
    #[default]
    Standard,
    Flipped,
}

/// Reeb signs of the four quadrants of every vertex.
pub type QuadrantSigns = Vec<[i8; 4]>;

/// Classifies the quadrants of each crossing as positive or negative
/// punctures under `conv`.
pub fn classify_quadrants(diag: &LagrangianDiagram, conv: QuadrantConvention) -> QuadrantSigns {
    diag.vertices
        .iter()
        .map(|_| {
            let mut signs = [0i8; 4];
            for (q, s) in signs.iter_mut().enumerate() {
                let from_over = Vertex::is_over(q as u8) && !Vertex::is_over(((q + 1) % 4) as u8);
                let positive = match conv {
                    QuadrantConvention::Standard => from_over,
                    QuadrantConvention::Flipped => !from_over,
                };
                *s = if positive { 1 } else { -1 };
            }
            signs
        })
        .collect()
}

/// True when the Stokes sums of corner actions under `signs` reproduce every
/// bounded face area of the realization.
pub fn signs_match_realization(diag: &LagrangianDiagram, signs: &QuadrantSigns) -> bool {
    diag.faces.iter().enumerate().all(|(f, face)| {
        if !face.bounded {
            return true;
        }
        let sum = face.steps.iter().fold(Rational::zero(), |acc, st| {
            let l = &diag.realization.action[st.vertex];
            if signs[st.vertex][st.quadrant as usize] > 0 {
                acc + l
            } else {
                acc - l
            }
        });
        sum == diag.realization.face_area[f] && sum.is_positive()
    })
}

/// Picks the convention whose Reeb signs agree with the realization.
pub fn validated_convention(diag: &LagrangianDiagram) -> Result<QuadrantConvention> {
    for conv in [QuadrantConvention::Standard, QuadrantConvention::Flipped] {
        if signs_match_realization(diag, &classify_quadrants(diag, conv)) {
            return Ok(conv);
        }
    }
    Err(Error::Internal(
        "no quadrant convention is consistent with the realization".into(),
    ))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ResolveOptions {
    /// Orient the knot leftward at the basepoint instead of rightward.
    pub reverse_orientation: bool,
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

struct RawEdge {
    ends: [Option<(usize, u8)>; 2],
    path: VecDeque<(Rational, Rational)>,
}

#[derive(Clone, Copy)]
struct Stub {
    edge: usize,
    /// Which end of the raw edge is still dangling to the right.
    end: usize,
}

pub fn resolve(front: &FrontWord) -> Result<LagrangianDiagram> {
    resolve_with(front, ResolveOptions::default())
}

pub fn resolve_with(front: &FrontWord, opts: ResolveOptions) -> Result<LagrangianDiagram> {
    let mut raw: Vec<RawEdge> = Vec::new();
    let mut verts: Vec<(VertexKind, usize, usize)> = Vec::new();
    let mut coords: Vec<(Rational, Rational)> = Vec::new();
    let mut stubs: Vec<Stub> = Vec::new();
    // (gap, strand) -> stub, for locating the basepoint
    let mut gap_stubs: Vec<Vec<Stub>> = vec![Vec::new()];

    let event_x = |i: usize| rat(2 * (i as i64 + 1), 1);
    let level = |k: usize| rat(-(k as i64), 1);
    let mid_level = |k: usize| rat(-(2 * k as i64 + 1), 2);

    fn push_point(raw: &mut [RawEdge], st: Stub, p: (Rational, Rational)) {
        let e = &mut raw[st.edge];
        if st.end == 0 {
            e.path.push_front(p);
        } else {
            e.path.push_back(p);
        }
    }
    fn close(raw: &mut [RawEdge], st: Stub, at: (usize, u8), p: (Rational, Rational)) {
        push_point(raw, st, p);
        raw[st.edge].ends[st.end] = Some(at);
    }

    for (i, ev) in front.events.iter().enumerate() {
        let x = event_x(i);
        match *ev {
            FrontEvent::LeftCusp(k) => {
                let e = raw.len();
                let mut path = VecDeque::new();
                path.push_back((x.clone() - rat(1, 2), mid_level(k)));
                raw.push(RawEdge {
                    ends: [None, None],
                    path,
                });
                stubs.insert(k - 1, Stub { edge: e, end: 0 });
                stubs.insert(k, Stub { edge: e, end: 1 });
            }
            FrontEvent::Crossing(k) | FrontEvent::RightCusp(k) => {
                let v = verts.len();
                let is_cusp = matches!(ev, FrontEvent::RightCusp(_));
                let vx = if is_cusp {
                    x.clone() - rat(1, 2)
                } else {
                    x.clone()
                };
                let vp = (vx.clone(), mid_level(k));
                verts.push((
                    if is_cusp {
                        VertexKind::CuspLoop
                    } else {
                        VertexKind::Crossing
                    },
                    i,
                    k,
                ));
                coords.push(vp.clone());
                let top = stubs[k - 1];
                let bottom = stubs[k];
                close(&mut raw, top, (v, NW), vp.clone());
                close(&mut raw, bottom, (v, SW), vp.clone());
                if is_cusp {
                    let path: VecDeque<_> = [
                        vp.clone(),
                        (x.clone(), level(k)),
                        (x.clone() + rat(1, 2), mid_level(k)),
                        (x.clone(), level(k + 1)),
                        vp,
                    ]
                    .into_iter()
                    .collect();
                    raw.push(RawEdge {
                        ends: [Some((v, NE)), Some((v, SE))],
                        path,
                    });
                    stubs.drain(k - 1..=k);
                } else {
                    let e1 = raw.len();
                    raw.push(RawEdge {
                        ends: [Some((v, NE)), None],
                        path: [vp.clone()].into_iter().collect(),
                    });
                    let e2 = raw.len();
                    raw.push(RawEdge {
                        ends: [Some((v, SE)), None],
                        path: [vp].into_iter().collect(),
                    });
                    stubs[k - 1] = Stub { edge: e1, end: 1 };
                    stubs[k] = Stub { edge: e2, end: 1 };
                }
            }
        }
        let gx = x + rat(1, 1);
        for (pos, st) in stubs.iter().enumerate() {
            push_point(&mut raw, *st, (gx.clone(), level(pos + 1)));
        }
        gap_stubs.push(stubs.clone());
    }
    if raw.iter().any(|e| e.ends.iter().any(Option::is_none)) {
        return Err(Error::Internal("dangling edge after resolution".into()));
    }

    // slot -> (edge, end)
    let nv = verts.len();
    let mut slot_edge = vec![[(usize::MAX, 0usize); 4]; nv];
    for (e, re) in raw.iter().enumerate() {
        for (end, at) in re.ends.iter().enumerate() {
            let (v, s) = at.unwrap();
            slot_edge[v][s as usize] = (e, end);
        }
    }

    // Orient by walking from the basepoint.
    let bp = front.basepoint;
    let bp_stub = gap_stubs[bp.gap][bp.strand - 1];
    // Moving rightward along a stub heads toward its dangling end.
    let rightward_end = bp_stub.end;
    let start_end = if opts.reverse_orientation {
        rightward_end
    } else {
        1 - rightward_end
    };
    let mut tail_end = vec![usize::MAX; raw.len()];
    let (mut e, mut from) = (bp_stub.edge, start_end);
    let mut visited = 0;
    loop {
        if tail_end[e] != usize::MAX {
            if e == bp_stub.edge && from == start_end {
                break;
            }
            return Err(Error::Internal("orientation walk revisited an edge".into()));
        }
        tail_end[e] = from;
        visited += 1;
        let (v, s) = raw[e].ends[1 - from].unwrap();
        let (ne, nend) = slot_edge[v][((s + 2) % 4) as usize];
        e = ne;
        from = nend;
    }
    if visited != raw.len() {
        return Err(Error::Topology(
            "diagram has more than one component".into(),
        ));
    }

    let edges: Vec<Edge> = raw
        .into_iter()
        .enumerate()
        .map(|(e, re)| {
            let t = tail_end[e];
            let mut path: Vec<_> = re.path.into_iter().collect();
            if t == 1 {
                path.reverse();
            }
            Edge {
                tail: re.ends[t].unwrap(),
                head: re.ends[1 - t].unwrap(),
                path,
            }
        })
        .collect();

    let vertices: Vec<Vertex> = verts
        .iter()
        .enumerate()
        .map(|(v, &(kind, event, position))| {
            let mut slots = [HalfEdge {
                edge: 0,
                outgoing: false,
            }; 4];
            for s in 0..4u8 {
                let (e, _) = slot_edge[v][s as usize];
                slots[s as usize] = HalfEdge {
                    edge: e,
                    outgoing: edges[e].tail == (v, s),
                };
            }
            Vertex {
                kind,
                event,
                position,
                slots,
            }
        })
        .collect();

    // Trace faces: the face lies to the left of each dart.
    let ndarts = 2 * edges.len();
    let dart_head = |d: Dart| {
        if d.forward {
            edges[d.edge].head
        } else {
            edges[d.edge].tail
        }
    };
    let dart_leaving = |v: usize, s: u8| {
        let he = vertices[v].slots[s as usize];
        Dart {
            edge: he.edge,
            forward: he.outgoing,
        }
    };
    let mut dart_face = vec![(usize::MAX, 0); ndarts];
    let mut faces: Vec<Face> = Vec::new();
    for start in 0..ndarts {
        if dart_face[start].0 != usize::MAX {
            continue;
        }
        let mut d = Dart {
            edge: start / 2,
            forward: start % 2 == 0,
        };
        let f = faces.len();
        let mut steps = Vec::new();
        loop {
            dart_face[d.index()] = (f, steps.len());
            let (v, s) = dart_head(d);
            let q = (s + 3) % 4;
            steps.push(FaceStep {
                dart: d,
                vertex: v,
                quadrant: q,
            });
            d = dart_leaving(v, q);
            if d.index() == start {
                break;
            }
        }
        faces.push(Face {
            steps,
            bounded: true,
        });
    }

    // The face above the top strand of gap 1 is unbounded: it lies left of
    // the rightward dart there.
    let top = gap_stubs[1][0];
    let toward_dangling_is_forward = tail_end[top.edge] != top.end;
    let unbounded_dart = Dart {
        edge: top.edge,
        forward: toward_dangling_is_forward,
    };
    let unbounded_face = dart_face[unbounded_dart.index()].0;
    faces[unbounded_face].bounded = false;

    let v_count = vertices.len() as i64;
    let e_count = edges.len() as i64;
    let f_count = faces.len() as i64;
    if v_count - e_count + f_count != 2 {
        return Err(Error::Internal(format!(
            "Euler characteristic {} != 2",
            v_count - e_count + f_count
        )));
    }

    let realization = realize(&vertices, &faces, coords)?;

    Ok(LagrangianDiagram {
        name: front.name.clone(),
        vertices,
        edges,
        faces,
        unbounded_face,
        basepoint_edge: bp_stub.edge,
        dart_face,
        realization,
    })
}

/// In the resolved drawing the west and east quadrants of every vertex are
/// the positive punctures.
fn drawing_positive(q: u8) -> bool {
    q == NW || q == SE
}

/// Chooses chord actions left to right so that every bounded face gets
/// area at least 1.
///
/// Face areas follow from Stokes: the area of a face is the sum of the
/// actions at its positive corners minus those at its negative corners.
/// Every bounded face has its rightmost point at a positive corner, and all
/// other corners lie strictly to the left, so a left-to-right sweep fixes
/// each action once.
fn realize(
    vertices: &[Vertex],
    faces: &[Face],
    vertex_coords: Vec<(Rational, Rational)>,
) -> Result<Realization> {
    let nv = vertices.len();
    let mut by_top: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (f, face) in faces.iter().enumerate() {
        if !face.bounded {
            continue;
        }
        let top = face
            .steps
            .iter()
            .filter(|s| drawing_positive(s.quadrant))
            .map(|s| s.vertex)
            .max()
            .ok_or_else(|| Error::Internal(format!("face {f} has no positive corner")))?;
        if face.steps.iter().any(|s| s.vertex > top) {
            return Err(Error::Internal(format!(
                "face {f} has a corner right of its rightmost positive corner"
            )));
        }
        by_top.entry(top).or_default().push(f);
    }
    let mut action = vec![Rational::zero(); nv];
    for v in 0..nv {
        let mut value = Rational::one();
        for &f in by_top.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let mut rest = Rational::zero();
            let mut count = 0i64;
            for s in &faces[f].steps {
                let positive = drawing_positive(s.quadrant);
                if s.vertex == v && positive {
                    count += 1;
                } else if positive {
                    rest += &action[s.vertex];
                } else {
                    rest -= &action[s.vertex];
                }
            }
            // count * l + rest >= 1
            let need = (Rational::one() - rest) / Rational::from_integer(BigInt::from(count));
            let need = need.ceil();
            if need > value {
                value = need;
            }
        }
        action[v] = value;
    }
    let face_area = faces
        .iter()
        .map(|face| {
            face.steps.iter().fold(Rational::zero(), |acc, s| {
                if drawing_positive(s.quadrant) {
                    acc + &action[s.vertex]
                } else {
                    acc - &action[s.vertex]
                }
            })
        })
        .collect::<Vec<_>>();
    for (f, face) in faces.iter().enumerate() {
        if face.bounded && !face_area[f].is_positive() {
            return Err(Error::Internal(format!("face {f} has non-positive area")));
        }
    }
    Ok(Realization {
        vertex_coords,
        face_area,
        action,
    })
}

pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl LagrangianDiagram {
    pub fn crossing_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn writhe(&self) -> i32 {
        self.vertices.iter().map(Vertex::crossing_sign).sum()
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].bounded)
    }

    /// Face to the left of `d` and the step index of `d` in it.
    pub fn face_of(&self, d: Dart) -> (usize, usize) {
        self.dart_face[d.index()]
    }

    /// Chords are named `a1, a2, ...` left to right.
    pub fn chord_name(&self, v: usize) -> String {
        format!("a{}", v + 1)
    }

    pub fn to_json(&self) -> Value {
        let crossings: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vx)| {
                json!({
                    "id": v,
                    "name": self.chord_name(v),
                    "kind": vx.kind,
                    "event": vx.event,
                    "position": vx.position,
                    "half_edges": vx.slots.iter().enumerate().map(|(s, he)| json!({
                        "edge": he.edge,
                        "outgoing": he.outgoing,
                        "over": Vertex::is_over(s as u8),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, ed)| {
                json!({
                    "id": e,
                    "tail": [ed.tail.0, ed.tail.1],
                    "head": [ed.head.0, ed.head.1],
                })
            })
            .collect();
        let faces: Vec<Value> = self
            .faces
            .iter()
            .enumerate()
            .map(|(f, fc)| {
                json!({
                    "id": f,
                    "bounded": fc.bounded,
                    "boundary": fc.steps.iter().map(|s| json!({
                        "edge": s.dart.edge,
                        "forward": s.dart.forward,
                        "vertex": s.vertex,
                        "quadrant": s.quadrant,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let r = &self.realization;
        json!({
            "crossings": crossings,
            "edges": edges,
            "faces": faces,
            "basepoint_edge": self.basepoint_edge,
            "realization": {
                "vertex_coords": r.vertex_coords.iter()
                    .map(|(x, y)| json!([rational_string(x), rational_string(y)]))
                    .collect::<Vec<_>>(),
                "face_area": r.face_area.iter().enumerate()
                    .filter(|(f, _)| self.faces[*f].bounded)
                    .map(|(f, a)| json!({"face": f, "area": rational_string(a)}))
                    .collect::<Vec<_>>(),
                "action": r.action.iter().map(rational_string).collect::<Vec<_>>(),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::parse_front;

    fn diag(word: &str) -> LagrangianDiagram {
        resolve(&parse_front(word).unwrap()).unwrap()
    }

    #[test]
    fn unknot_has_one_crossing_and_three_faces() {
        let d = diag("l1 r1 bp 1.1");
        assert_eq!(d.vertices.len(), 1);
        assert_eq!(d.edges.len(), 2);
        assert_eq!(d.faces.len(), 3);
        assert_eq!(d.bounded_faces().count(), 2);
        assert_eq!(d.writhe(), -1);
    }

    #[test]
    fn trefoil_has_five_crossings() {
        let d = diag("l1 l1 x2 x2 x2 r1 r1");
        assert_eq!(d.vertices.len(), 5);
        // max-tb right-handed trefoil: tb = writhe = 1
        assert_eq!(d.writhe(), 1);
        let d2 = diag("l1 l1 x2 x2 x2 r2 r1");
        assert_eq!(d2.vertices.len(), 5);
    }

    #[test]
    fn unknot_quadrant_signs_alternate() {
        let d = diag("l1 r1");
        let s = classify_quadrants(&d, QuadrantConvention::Standard);
        assert_eq!(s[0], [-1, 1, -1, 1]);
        assert!(signs_match_realization(&d, &s));
        let flipped = classify_quadrants(&d, QuadrantConvention::Flipped);
        assert!(!signs_match_realization(&d, &flipped));
        assert_eq!(
            validated_convention(&d).unwrap(),
            QuadrantConvention::Standard
        );
    }

    #[test]
    fn positive_quadrants_are_vertically_opposite() {
        let d = diag("l1 l1 x2 x2 x2 r1 r1");
        for s in classify_quadrants(&d, QuadrantConvention::Standard) {
            assert_eq!(s.iter().filter(|&&x| x > 0).count(), 2);
            assert_eq!(s[0], s[2]);
            assert_eq!(s[1], s[3]);
        }
    }

    #[test]
    fn reversal_keeps_positive_quadrants() {
        let f = parse_front("l1 l1 x2 x2 x2 r1 r1").unwrap();
        let a = resolve(&f).unwrap();
        let b = resolve_with(
            &f,
            ResolveOptions {
                reverse_orientation: true,
            },
        )
        .unwrap();
        assert_eq!(
            classify_quadrants(&a, QuadrantConvention::Standard),
            classify_quadrants(&b, QuadrantConvention::Standard)
        );
        assert_eq!(a.writhe(), b.writhe());
    }

    #[test]
    fn serialization_is_deterministic() {
        let f = parse_front("l1 l1 x2 x2 x2 r1 r1").unwrap();
        let a = serde_json::to_string(&resolve(&f).unwrap().to_json()).unwrap();
        let b = serde_json::to_string(&resolve(&f).unwrap().to_json()).unwrap();
        assert_eq!(a, b);
    }
}
