//! Immersed disks with one positive corner.
//!
//! A disk is grown from one copy of the face containing its positive corner,
//! one side at a time. Every open side is either declared part of the disk
//! boundary or glued across its edge, to an open side of an existing copy or
//! to a fresh copy of the neighbouring face. Around each crossing the face
//! copies meeting there form a fan, a chain of corners linked through glued
//! sides; an immersed disk needs every fan to be a full turn of four corners,
//! a smooth boundary point of two, or a single convex corner.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{Dart, LagrangianDiagram, QuadrantSigns};
use crate::error::{Error, Result};
use crate::grading::Shading;
use crate::Rational;

pub mod brute;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Disk {
    pub positive: usize,
    /// Negative corners in counterclockwise order after the positive one.
    pub negatives: Vec<usize>,
    /// Every convex corner as `(vertex, quadrant)`, the positive one first.
    pub corners: Vec<(usize, u8)>,
    /// Signed count of passes through the basepoint.
    pub t_exp: i64,
    /// Face of each copy, copy 0 holding the positive corner.
    pub faces: Vec<usize>,
}

impl Disk {
    pub fn shaded_corners(&self, shading: &Shading) -> usize {
        self.corners
            .iter()
            .filter(|&&(v, q)| shading[v][q as usize])
            .count()
    }

    /// Orientation sign under `shading`.
    pub fn sign(&self, shading: &Shading) -> i64 {
        if self.shaded_corners(shading).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Comparison key independent of how the disk was found.
    pub fn key(&self) -> (usize, Vec<(usize, u8)>, i64) {
        (self.positive, self.corners.clone(), self.t_exp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Open,
    Boundary,
    Glued(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Open,
    Boundary,
}

#[derive(Debug, Clone, Copy)]
struct Fan {
    len: usize,
    cycle: bool,
    back: End,
    front: End,
}

/// Parameters of a disk search.
#[derive(Debug, Clone)]
pub struct DiskSearch<'a> {
    pub diag: &'a LagrangianDiagram,
    pub signs: &'a QuadrantSigns,
    /// Abort after visiting this many search states per generator.
    pub node_limit: usize,
}

#[derive(Clone)]
struct State {
    copies: Vec<usize>,
    sides: Vec<Vec<Side>>,
    area: Rational,
    neg: Rational,
}

struct Ctx<'a> {
    diag: &'a LagrangianDiagram,
    signs: &'a QuadrantSigns,
    budget: Rational,
    seed: usize,
    nodes: usize,
    node_limit: usize,
    found: Vec<Disk>,
}

impl<'a> DiskSearch<'a> {
    pub fn new(diag: &'a LagrangianDiagram, signs: &'a QuadrantSigns) -> Self {
        DiskSearch {
            diag,
            signs,
            node_limit: 5_000_000,
        }
    }

    /// All disks whose positive corner is at vertex `a`, sorted.
    pub fn disks_at(&self, a: usize) -> Result<Vec<Disk>> {
        let diag = self.diag;
        let mut out = Vec::new();
        for f in diag.bounded_faces() {
            for (j, st) in diag.faces[f].steps.iter().enumerate() {
                if st.vertex != a || self.signs[a][st.quadrant as usize] <= 0 {
                    continue;
                }
                let n = diag.faces[f].steps.len();
                let mut sides = vec![vec![Side::Open; n]];
                sides[0][j] = Side::Boundary;
                sides[0][(j + 1) % n] = Side::Boundary;
                let state = State {
                    copies: vec![f],
                    sides,
                    area: diag.realization.face_area[f].clone(),
                    neg: Rational::zero(),
                };
                let mut ctx = Ctx {
                    diag,
                    signs: self.signs,
                    budget: diag.realization.action[a].clone(),
                    seed: j,
                    nodes: 0,
                    node_limit: self.node_limit,
                    found: Vec::new(),
                };
                if state.area <= ctx.budget {
                    ctx.grow(state)?;
                }
                out.extend(ctx.found);
            }
        }
        out.sort();
        Ok(out)
    }

    /// All disks of the diagram, generators searched in parallel.
    pub fn all_disks(&self) -> Result<Vec<Disk>> {
        let per: Vec<Result<Vec<Disk>>> = (0..self.diag.vertices.len())
            .into_par_iter()
            .map(|a| self.disks_at(a))
            .collect();
        let mut out = Vec::new();
        for r in per {
            out.extend(r?);
        }
        Ok(out)
    }
}

impl<'a> Ctx<'a> {
    fn nsides(&self, st: &State, c: usize) -> usize {
        self.diag.faces[st.copies[c]].steps.len()
    }

    fn corner(&self, st: &State, c: usize, j: usize) -> (usize, u8) {
        let s = &self.diag.faces[st.copies[c]].steps[j];
        (s.vertex, s.quadrant)
    }

    fn dart(&self, st: &State, c: usize, j: usize) -> Dart {
        self.diag.faces[st.copies[c]].steps[j].dart
    }

    fn fan(&self, st: &State, c: usize, j: usize) -> Fan {
        let mut len = 1;
        let (mut cc, mut cj) = (c, j);
        // forward through out-sides
        let front = loop {
            let n = self.nsides(st, cc);
            match st.sides[cc][(cj + 1) % n] {
                Side::Open => break End::Open,
                Side::Boundary => break End::Boundary,
                Side::Glued(b, m) => {
                    if (b, m) == (c, j) {
                        return Fan {
                            len,
                            cycle: true,
                            back: End::Open,
                            front: End::Open,
                        };
                    }
                    cc = b;
                    cj = m;
                    len += 1;
                    if len > 5 {
                        break End::Open;
                    }
                }
            }
        };
        let (mut cc, mut cj) = (c, j);
        let back = loop {
            match st.sides[cc][cj] {
                Side::Open => break End::Open,
                Side::Boundary => break End::Boundary,
                Side::Glued(b, m) => {
                    let nb = self.nsides(st, b);
                    cc = b;
                    cj = (m + nb - 1) % nb;
                    len += 1;
                    if len > 5 {
                        break End::Open;
                    }
                }
            }
        };
        Fan {
            len,
            cycle: false,
            back,
            front,
        }
    }

    fn fan_ok(&self, st: &State, c: usize, j: usize) -> bool {
        let f = self.fan(st, c, j);
        if f.cycle {
            return f.len == 4;
        }
        if f.len >= 5 {
            return false;
        }
        match (f.back, f.front) {
            (End::Boundary, End::Boundary) => match f.len {
                1 => {
                    let (v, q) = self.corner(st, c, j);
                    (c == 0 && j == self.seed) || self.signs[v][q as usize] < 0
                }
                2 => true,
                _ => false,
            },
            (End::Boundary, End::Open) | (End::Open, End::Boundary) => f.len <= 2,
            (End::Open, End::Open) => true,
        }
    }

    fn corners_ok(&self, st: &State, c: usize, j: usize) -> bool {
        let n = self.nsides(st, c);
        self.fan_ok(st, c, j) && self.fan_ok(st, c, (j + n - 1) % n)
    }

    /// Newly completed negative corners next to side `(c, j)` once set to boundary.
    fn new_negatives(&self, st: &State, c: usize, j: usize) -> Rational {
        let n = self.nsides(st, c);
        let mut sum = Rational::zero();
        for (corner, other) in [(j, (j + 1) % n), ((j + n - 1) % n, (j + n - 1) % n)] {
            if c == 0 && corner == self.seed {
                continue;
            }
            if st.sides[c][other] == Side::Boundary {
                let (v, q) = self.corner(st, c, corner);
                if self.signs[v][q as usize] < 0 {
                    sum += &self.diag.realization.action[v];
                }
            }
        }
        sum
    }

    fn first_open(&self, st: &State) -> Option<(usize, usize)> {
        for (c, sides) in st.sides.iter().enumerate() {
            if let Some(j) = sides.iter().position(|s| *s == Side::Open) {
                return Some((c, j));
            }
        }
        None
    }

    fn grow(&mut self, st: State) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::SearchBudgetExceeded {
                bound: self.budget.to_string(),
            });
        }
        let Some((c, j)) = self.first_open(&st) else {
            if let Some(d) = self.finish(&st) {
                self.found.push(d);
            }
            return Ok(());
        };
        let d = self.dart(&st, c, j);
        let (nf, nj) = self.diag.face_of(d.reverse());

        // boundary
        {
            let extra = self.new_negatives(&st, c, j);
            let mut s = st.clone();
            s.sides[c][j] = Side::Boundary;
            s.neg += extra;
            if &s.area + &s.neg <= self.budget && self.corners_ok(&s, c, j) {
                self.grow(s)?;
            }
        }
        if !self.diag.faces[nf].bounded {
            return Ok(());
        }
        // glue to an existing open side
        for b in 0..st.copies.len() {
            if st.copies[b] != nf || st.sides[b][nj] != Side::Open || (b, nj) == (c, j) {
                continue;
            }
            let mut s = st.clone();
            s.sides[c][j] = Side::Glued(b, nj);
            s.sides[b][nj] = Side::Glued(c, j);
            if self.corners_ok(&s, c, j) && self.corners_ok(&s, b, nj) {
                self.grow(s)?;
            }
        }
        // glue to a new copy
        {
            let area = &st.area + &self.diag.realization.face_area[nf];
            if &area + &st.neg <= self.budget {
                let mut s = st;
                let b = s.copies.len();
                s.copies.push(nf);
                s.sides
                    .push(vec![Side::Open; self.diag.faces[nf].steps.len()]);
                s.sides[c][j] = Side::Glued(b, nj);
                s.sides[b][nj] = Side::Glued(c, j);
                s.area = area;
                if self.corners_ok(&s, c, j) && self.corners_ok(&s, b, nj) {
                    self.grow(s)?;
                }
            }
        }
        Ok(())
    }

    fn finish(&self, st: &State) -> Option<Disk> {
        // every fan and the Euler characteristic
        let mut fan_ids = BTreeSet::new();
        let mut glued = 0usize;
        let mut boundary = 0usize;
        for c in 0..st.copies.len() {
            let n = self.nsides(st, c);
            for j in 0..n {
                if !self.fan_ok(st, c, j) {
                    return None;
                }
                match st.sides[c][j] {
                    Side::Glued(..) => glued += 1,
                    Side::Boundary => boundary += 1,
                    Side::Open => return None,
                }
                fan_ids.insert(self.fan_id(st, c, j));
            }
        }
        let chi = fan_ids.len() as i64 - (glued / 2 + boundary) as i64 + st.copies.len() as i64;
        if chi != 1 {
            return None;
        }
        // walk the boundary from the positive corner
        let mut corners = vec![self.corner(st, 0, self.seed)];
        let mut negatives = Vec::new();
        let mut t_exp = 0i64;
        let n0 = self.nsides(st, 0);
        let (mut c, mut j) = (0usize, (self.seed + 1) % n0);
        let mut walked = 0usize;
        loop {
            walked += 1;
            let d = self.dart(st, c, j);
            if d.edge == self.diag.basepoint_edge {
                t_exp += if d.forward { 1 } else { -1 };
            }
            // the fan at the end of side (c, j)
            let mut len = 1;
            let (mut cc, mut cj) = (c, j);
            loop {
                let n = self.nsides(st, cc);
                match st.sides[cc][(cj + 1) % n] {
                    Side::Boundary => break,
                    Side::Glued(b, m) => {
                        cc = b;
                        cj = m;
                        len += 1;
                    }
                    Side::Open => return None,
                }
            }
            if (cc, cj) == (0, self.seed) {
                break;
            }
            if len == 1 {
                let corner = self.corner(st, cc, cj);
                negatives.push(corner.0);
                corners.push(corner);
            }
            let n = self.nsides(st, cc);
            c = cc;
            j = (cj + 1) % n;
        }
        if walked != boundary {
            return None;
        }
        Some(Disk {
            positive: corners[0].0,
            negatives,
            corners,
            t_exp,
            faces: st.copies.clone(),
        })
    }

    fn fan_id(&self, st: &State, c: usize, j: usize) -> (usize, usize) {
        let mut best = (c, j);
        let (mut cc, mut cj) = (c, j);
        for _ in 0..8 {
            let n = self.nsides(st, cc);
            match st.sides[cc][(cj + 1) % n] {
                Side::Glued(b, m) => {
                    cc = b;
                    cj = m;
                    best = best.min((cc, cj));
                }
                _ => break,
            }
        }
        let (mut cc, mut cj) = (c, j);
        for _ in 0..8 {
            match st.sides[cc][cj] {
                Side::Glued(b, m) => {
                    let nb = self.nsides(st, b);
                    cc = b;
                    cj = (m + nb - 1) % nb;
                    best = best.min((cc, cj));
                }
                _ => break,
            }
        }
        best
    }
}

/// Disks of `diag` under the Reeb signs `signs`.
pub fn find_disks(diag: &LagrangianDiagram, signs: &QuadrantSigns) -> Result<Vec<Disk>> {
    DiskSearch::new(diag, signs).all_disks()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{classify_quadrants, resolve, QuadrantConvention};
    use crate::front::parse_front;

    fn disks(word: &str) -> (LagrangianDiagram, Vec<Disk>) {
        let d = resolve(&parse_front(word).unwrap()).unwrap();
        let s = classify_quadrants(&d, QuadrantConvention::Standard);
        let disks = find_disks(&d, &s).unwrap();
        (d, disks)
    }

    #[test]
    fn unknot_has_two_disks() {
        let (_, ds) = disks("l1 r1");
        assert_eq!(ds.len(), 2);
        assert!(ds.iter().all(|d| d.negatives.is_empty()));
        let mut t: Vec<i64> = ds.iter().map(|d| d.t_exp).collect();
        t.sort();
        assert_eq!(t.iter().filter(|&&x| x == 0).count(), 1);
        assert_eq!(t.iter().map(|x| x.abs()).sum::<i64>(), 1);
    }

    #[test]
    fn disk_areas_match_actions() {
        let (d, ds) = disks("l1 l1 x2 x2 x2 r1 r1");
        assert!(!ds.is_empty());
        for disk in &ds {
            let area: Rational = disk
                .faces
                .iter()
                .map(|&f| d.realization.face_area[f].clone())
                .sum();
            let neg: Rational = disk
                .negatives
                .iter()
                .map(|&v| d.realization.action[v].clone())
                .sum();
            assert_eq!(area + neg, d.realization.action[disk.positive]);
        }
    }

    #[test]
    fn search_agrees_with_exhaustive_enumeration() {
        for word in [
            "l1 r1",
            "l1 l1 x2 x2 x2 r1 r1",
            "l1 l2 r1 r1",
            "l1 l1 x2 x2 x2 r2 r1",
        ] {
            let d = resolve(&parse_front(word).unwrap()).unwrap();
            let s = classify_quadrants(&d, QuadrantConvention::Standard);
            let mut a: Vec<_> = find_disks(&d, &s).unwrap().iter().map(Disk::key).collect();
            let mut b: Vec<_> = brute::brute_force_disks(&d, &s, 8)
                .iter()
                .map(Disk::key)
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{word}");
        }
    }
}
