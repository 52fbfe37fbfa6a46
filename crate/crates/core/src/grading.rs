//! Maslov gradings of Reeb chords, and the orientation shading at crossings.

use serde::Serialize;

use crate::diagram::{LagrangianDiagram, Vertex, VertexKind};
use crate::error::{Error, Result};
use crate::front::{FrontWord, Passage};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gradings {
    pub rotation: i64,
    /// Degree of each chord, indexed by diagram vertex.
    pub degrees: Vec<i64>,
    /// Degree of the homology variable `t`.
    pub t_degree: i64,
}

/// Rotation number: half the excess of downward over upward cusps.
pub fn rotation_number(front: &FrontWord, reverse: bool) -> i64 {
    let (mut down, mut up) = (0i64, 0i64);
    for p in front.traverse(reverse) {
        if let Passage::Cusp { down: d, .. } = p {
            if d {
                down += 1;
            } else {
                up += 1;
            }
        }
    }
    (down - up) / 2
}

/// Degrees of all chords of `diag`, the resolution of `front`.
///
/// A Maslov potential is carried along the knot from the basepoint, where it
/// is cut; it drops by one through a downward cusp and rises by one through
/// an upward cusp. A crossing chord has degree equal to the potential of the
/// over-strand minus the potential of the under-strand; a right-cusp chord
/// has degree 1.
pub fn chord_gradings(
    front: &FrontWord,
    diag: &LagrangianDiagram,
    reverse: bool,
) -> Result<Gradings> {
    let mut over_mu = vec![None; front.events.len()];
    let mut under_mu = vec![None; front.events.len()];
    let mut mu = 0i64;
    for p in front.traverse(reverse) {
        match p {
            Passage::Crossing { event, over } => {
                if over {
                    over_mu[event] = Some(mu);
                } else {
                    under_mu[event] = Some(mu);
                }
            }
            Passage::Cusp { down, .. } => mu += if down { -1 } else { 1 },
        }
    }
    let rotation = rotation_number(front, reverse);
    let mut degrees = Vec::with_capacity(diag.vertices.len());
    for v in &diag.vertices {
        let d = match v.kind {
            VertexKind::CuspLoop => 1,
            VertexKind::Crossing => match (over_mu[v.event], under_mu[v.event]) {
                (Some(o), Some(u)) => o - u,
                _ => {
                    return Err(Error::Internal(format!(
                        "crossing at event {} not passed twice",
                        v.event
                    )))
                }
            },
        };
        degrees.push(d);
    }
    let g = Gradings {
        rotation,
        degrees,
        t_degree: -2 * rotation,
    };
    check_parity(diag, &g)?;
    Ok(g)
}

/// A chord is even exactly when its crossing is positive.
pub fn check_parity(diag: &LagrangianDiagram, g: &Gradings) -> Result<()> {
    for (i, v) in diag.vertices.iter().enumerate() {
        let even = g.degrees[i].rem_euclid(2) == 0;
        if even != (v.crossing_sign() > 0) {
            return Err(Error::GradingMismatch(format!(
                "chord {} has degree {} but crossing sign {}",
                diag.chord_name(i),
                g.degrees[i],
                v.crossing_sign()
            )));
        }
    }
    Ok(())
}

/// Rule selecting the shaded quadrants used for orientation signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub enum ShadingRule {
    /// Even chords shade both quadrants next to the incoming over-strand;
    /// odd chords shade nothing.
    #[default]
    A,
    /// Even chords shade the quadrant between the incoming over-strand and
    /// the outgoing under-strand, odd chords the one between the incoming
    /// over-strand and the incoming under-strand.
    B,
}

pub type Shading = Vec<[bool; 4]>;

fn quadrant_between(a: u8, b: u8) -> usize {
    if (a + 1) % 4 == b {
        a as usize
    } else {
        debug_assert_eq!((b + 1) % 4, a);
        b as usize
    }
}

pub fn shade(diag: &LagrangianDiagram, g: &Gradings, rule: ShadingRule) -> Shading {
    diag.vertices
        .iter()
        .enumerate()
        .map(|(i, v)| shade_vertex(v, g.degrees[i].rem_euclid(2) == 0, rule))
        .collect()
}

fn shade_vertex(v: &Vertex, even: bool, rule: ShadingRule) -> [bool; 4] {
    let mut out = [false; 4];
    let io = v.incoming_over();
    match (rule, even) {
        (ShadingRule::A, true) => {
            out[io as usize] = true;
            out[((io + 3) % 4) as usize] = true;
        }
        (ShadingRule::A, false) => {}
        (ShadingRule::B, true) => out[quadrant_between(io, v.outgoing_under())] = true,
        (ShadingRule::B, false) => out[quadrant_between(io, v.incoming_under())] = true,
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::resolve;
    use crate::front::parse_front;

    fn grade(word: &str) -> Gradings {
        let f = parse_front(word).unwrap();
        let d = resolve(&f).unwrap();
        chord_gradings(&f, &d, false).unwrap()
    }

    #[test]
    fn unknot_chord_has_degree_one() {
        let g = grade("l1 r1");
        assert_eq!(g.degrees, vec![1]);
        assert_eq!(g.rotation, 0);
    }

    #[test]
    fn trefoil_degrees() {
        let mut d = grade("l1 l1 x2 x2 x2 r1 r1").degrees;
        d.sort();
        assert_eq!(d, vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn stabilized_unknot_has_rotation_one() {
        let g = grade("l1 l2 r1 r1");
        assert_eq!(g.rotation.abs(), 1);
        assert_eq!(g.t_degree, -2 * g.rotation);
        let f = parse_front("l1 l2 r1 r1").unwrap();
        assert_eq!(rotation_number(&f, true), -g.rotation);
    }

    #[test]
    fn shading_sizes() {
        let f = parse_front("l1 l1 x2 x2 x2 r1 r1").unwrap();
        let d = resolve(&f).unwrap();
        let g = chord_gradings(&f, &d, false).unwrap();
        for (i, s) in shade(&d, &g, ShadingRule::A).iter().enumerate() {
            let n = s.iter().filter(|&&b| b).count();
            assert_eq!(n, if g.degrees[i] % 2 == 0 { 2 } else { 0 });
        }
        for s in shade(&d, &g, ShadingRule::B) {
            assert_eq!(s.iter().filter(|&&b| b).count(), 1);
        }
    }
}
