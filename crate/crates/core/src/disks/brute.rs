//! Exhaustive disk enumeration used to cross-check the search.
//!
//! Picks a multiset of bounded faces within the action budget, then tries
//! every way of pairing up face sides across each edge, keeping the gluings
//! that form an immersed disk with a single positive corner. Exponential;
//! only for small diagrams.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use crate::diagram::{LagrangianDiagram, QuadrantSigns};
use crate::disks::Disk;
use crate::Rational;

type Glue = Option<Option<(usize, usize)>>;

struct Gluing<'a> {
    diag: &'a LagrangianDiagram,
    signs: &'a QuadrantSigns,
    a: usize,
    copies: Vec<usize>,
    sides: Vec<Vec<Glue>>,
}

#[derive(PartialEq)]
enum FanShape {
    Cycle(usize),
    /// Length and whether each end is a boundary side.
    Path(usize, bool, bool),
}

impl<'a> Gluing<'a> {
    fn n(&self, c: usize) -> usize {
        self.diag.faces[self.copies[c]].steps.len()
    }

    fn next(&self, c: usize, j: usize) -> Glue {
        self.sides[c][(j + 1) % self.n(c)]
    }

    fn prev(&self, c: usize, j: usize) -> Glue {
        self.sides[c][j].map(|g| g.map(|(b, m)| (b, (m + self.n(b) - 1) % self.n(b))))
    }

    fn shape(&self, c: usize, j: usize) -> FanShape {
        let mut len = 1;
        let mut cur = (c, j);
        let fwd_bdry = loop {
            match self.next(cur.0, cur.1) {
                None => break false,
                Some(None) => break true,
                Some(Some(nx)) => {
                    if nx == (c, j) {
                        return FanShape::Cycle(len);
                    }
                    cur = nx;
                    len += 1;
                    if len > 6 {
                        return FanShape::Path(len, false, false);
                    }
                }
            }
        };
        let mut cur = (c, j);
        let back_bdry = loop {
            match self.prev(cur.0, cur.1) {
                None => break false,
                Some(None) => break true,
                Some(Some(pv)) => {
                    cur = pv;
                    len += 1;
                    if len > 6 {
                        return FanShape::Path(len, false, false);
                    }
                }
            }
        };
        FanShape::Path(len, back_bdry, fwd_bdry)
    }

    fn is_positive(&self, c: usize, j: usize) -> bool {
        let st = &self.diag.faces[self.copies[c]].steps[j];
        self.signs[st.vertex][st.quadrant as usize] > 0
    }

    fn vertex(&self, c: usize, j: usize) -> usize {
        self.diag.faces[self.copies[c]].steps[j].vertex
    }

    fn partial_ok(&self) -> bool {
        for c in 0..self.copies.len() {
            for j in 0..self.n(c) {
                let ok = match self.shape(c, j) {
                    FanShape::Cycle(l) => l == 4,
                    FanShape::Path(l, true, true) => {
                        l == 2
                            || (l == 1 && (!self.is_positive(c, j) || self.vertex(c, j) == self.a))
                    }
                    FanShape::Path(l, true, false) | FanShape::Path(l, false, true) => l <= 2,
                    FanShape::Path(l, false, false) => l <= 4,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Returns the disk when the complete gluing is an immersed disk with
    /// one positive corner at `a`.
    fn finish(&self) -> Option<(Disk, String)> {
        let mut positive = Vec::new();
        let mut neg_action = Rational::zero();
        let mut fans = BTreeSet::new();
        let (mut glued, mut bdry) = (0usize, 0usize);
        for c in 0..self.copies.len() {
            for j in 0..self.n(c) {
                match self.shape(c, j) {
                    FanShape::Cycle(4) | FanShape::Path(2, true, true) => {}
                    FanShape::Path(1, true, true) => {
                        if self.is_positive(c, j) {
                            positive.push((c, j));
                        } else {
                            neg_action += &self.diag.realization.action[self.vertex(c, j)];
                        }
                    }
                    _ => return None,
                }
                fans.insert(self.fan_min(c, j));
                match self.sides[c][j] {
                    Some(Some(_)) => glued += 1,
                    Some(None) => bdry += 1,
                    None => return None,
                }
            }
        }
        if positive.len() != 1 || self.vertex(positive[0].0, positive[0].1) != self.a {
            return None;
        }
        let chi = fans.len() as i64 - (glued / 2 + bdry) as i64 + self.copies.len() as i64;
        if chi != 1 {
            return None;
        }
        let area: Rational = self
            .copies
            .iter()
            .map(|&f| self.diag.realization.face_area[f].clone())
            .sum();
        if area + neg_action != self.diag.realization.action[self.a] {
            return None;
        }
        // connectivity
        let mut seen = vec![false; self.copies.len()];
        let mut queue = VecDeque::from([positive[0].0]);
        seen[positive[0].0] = true;
        let mut order = Vec::new();
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for j in 0..self.n(c) {
                if let Some(Some((b, _))) = self.sides[c][j] {
                    if !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        if order.len() != self.copies.len() {
            return None;
        }
        // boundary walk from the positive corner
        let (pc, pj) = positive[0];
        let mut corners = vec![(self.vertex(pc, pj), self.quadrant(pc, pj))];
        let mut negatives = Vec::new();
        let mut t_exp = 0;
        let mut side = (pc, (pj + 1) % self.n(pc));
        let mut walked = 0;
        loop {
            walked += 1;
            let dart = self.diag.faces[self.copies[side.0]].steps[side.1].dart;
            if dart.edge == self.diag.basepoint_edge {
                t_exp += if dart.forward { 1 } else { -1 };
            }
            let mut cur = side;
            let mut len = 1;
            while let Some(Some(nx)) = self.next(cur.0, cur.1) {
                cur = nx;
                len += 1;
            }
            if cur == (pc, pj) {
                break;
            }
            if len == 1 {
                let v = self.vertex(cur.0, cur.1);
                negatives.push(v);
                corners.push((v, self.quadrant(cur.0, cur.1)));
            }
            side = (cur.0, (cur.1 + 1) % self.n(cur.0));
            if walked > bdry {
                return None;
            }
        }
        if walked != bdry {
            return None;
        }
        // canonical form: BFS from the positive copy, sides in order
        let mut label = vec![usize::MAX; self.copies.len()];
        let mut canon_order = vec![pc];
        label[pc] = 0;
        let mut k = 0;
        while k < canon_order.len() {
            let c = canon_order[k];
            for j in 0..self.n(c) {
                if let Some(Some((b, _))) = self.sides[c][j] {
                    if label[b] == usize::MAX {
                        label[b] = canon_order.len();
                        canon_order.push(b);
                    }
                }
            }
            k += 1;
        }
        let mut canon = format!("{pj};");
        for &c in &canon_order {
            canon.push_str(&format!("{}:", self.copies[c]));
            for j in 0..self.n(c) {
                match self.sides[c][j] {
                    Some(Some((b, m))) => canon.push_str(&format!("{}.{},", label[b], m)),
                    _ => canon.push_str("b,"),
                }
            }
            canon.push('|');
        }
        let disk = Disk {
            positive: self.a,
            negatives,
            corners,
            t_exp,
            faces: canon_order.iter().map(|&c| self.copies[c]).collect(),
        };
        Some((disk, canon))
    }

    fn quadrant(&self, c: usize, j: usize) -> u8 {
        self.diag.faces[self.copies[c]].steps[j].quadrant
    }

    fn fan_min(&self, c: usize, j: usize) -> (usize, usize) {
        let mut best = (c, j);
        let mut cur = (c, j);
        for _ in 0..6 {
            match self.next(cur.0, cur.1) {
                Some(Some(nx)) => {
                    cur = nx;
                    best = best.min(cur);
                }
                _ => break,
            }
        }
        let mut cur = (c, j);
        for _ in 0..6 {
            match self.prev(cur.0, cur.1) {
                Some(Some(pv)) => {
                    cur = pv;
                    best = best.min(cur);
                }
                _ => break,
            }
        }
        best
    }
}

/// Every disk of `diag` with positive corner `a`, found exhaustively.
/// Face multisets are limited to `max_copies` faces.
pub fn brute_force_disks_at(
    diag: &LagrangianDiagram,
    signs: &QuadrantSigns,
    a: usize,
    max_copies: usize,
) -> Vec<Disk> {
    let bounded: Vec<usize> = diag.bounded_faces().collect();
    let budget = diag.realization.action[a].clone();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut mult = vec![0usize; bounded.len()];
    enumerate_multisets(diag, &bounded, 0, budget, max_copies, &mut mult, &mut |m| {
        let copies: Vec<usize> = bounded
            .iter()
            .zip(m)
            .flat_map(|(&f, &k)| std::iter::repeat_n(f, k))
            .collect();
        let has_seed = copies.iter().any(|&f| {
            diag.faces[f]
                .steps
                .iter()
                .any(|s| s.vertex == a && signs[a][s.quadrant as usize] > 0)
        });
        if !has_seed {
            return;
        }
        let sides = copies
            .iter()
            .map(|&f| vec![None; diag.faces[f].steps.len()])
            .collect();
        let mut g = Gluing {
            diag,
            signs,
            a,
            copies,
            sides,
        };
        let edges: Vec<usize> = (0..diag.edges.len()).collect();
        glue_edges(&mut g, &edges, 0, &mut |g| {
            if let Some((d, canon)) = g.finish() {
                if seen.insert(canon) {
                    out.push(d);
                }
            }
        });
    });
    out.sort();
    out
}

pub fn brute_force_disks(
    diag: &LagrangianDiagram,
    signs: &QuadrantSigns,
    max_copies: usize,
) -> Vec<Disk> {
    (0..diag.vertices.len())
        .flat_map(|a| brute_force_disks_at(diag, signs, a, max_copies))
        .collect()
}

fn enumerate_multisets(
    diag: &LagrangianDiagram,
    faces: &[usize],
    i: usize,
    budget: Rational,
    copies_left: usize,
    mult: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if i == faces.len() {
        if mult.iter().any(|&k| k > 0) {
            visit(mult);
        }
        return;
    }
    let area = &diag.realization.face_area[faces[i]];
    let mut k = 0;
    let mut left = budget;
    loop {
        mult[i] = k;
        enumerate_multisets(
            diag,
            faces,
            i + 1,
            left.clone(),
            copies_left - k,
            mult,
            visit,
        );
        left -= area;
        k += 1;
        if left < Rational::zero() || k > copies_left {
            break;
        }
    }
    mult[i] = 0;
}

fn glue_edges(g: &mut Gluing<'_>, edges: &[usize], i: usize, visit: &mut dyn FnMut(&Gluing<'_>)) {
    if i == edges.len() {
        visit(g);
        return;
    }
    let e = edges[i];
    let fwd = crate::diagram::Dart {
        edge: e,
        forward: true,
    };
    let (lf, lj) = g.diag.face_of(fwd);
    let (rf, rj) = g.diag.face_of(fwd.reverse());
    let left: Vec<usize> = (0..g.copies.len()).filter(|&c| g.copies[c] == lf).collect();
    let right: Vec<usize> = (0..g.copies.len()).filter(|&c| g.copies[c] == rf).collect();
    let mut used = vec![false; right.len()];
    match_sides(g, &left, lj, &right, rj, 0, &mut used, &mut |g| {
        if g.partial_ok() {
            glue_edges(g, edges, i + 1, visit);
        }
    });
}

#[allow(clippy::too_many_arguments)]
fn match_sides(
    g: &mut Gluing<'_>,
    left: &[usize],
    lj: usize,
    right: &[usize],
    rj: usize,
    k: usize,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&mut Gluing<'_>),
) {
    if k == left.len() {
        // unmatched right sides become boundary
        for (r, &u) in right.iter().zip(used.iter()) {
            if !u {
                g.sides[*r][rj] = Some(None);
            }
        }
        visit(g);
        for (r, &u) in right.iter().zip(used.iter()) {
            if !u {
                g.sides[*r][rj] = None;
            }
        }
        return;
    }
    let l = left[k];
    g.sides[l][lj] = Some(None);
    match_sides(g, left, lj, right, rj, k + 1, used, visit);
    for ri in 0..right.len() {
        if used[ri] {
            continue;
        }
        used[ri] = true;
        let r = right[ri];
        g.sides[l][lj] = Some(Some((r, rj)));
        g.sides[r][rj] = Some(Some((l, lj)));
        match_sides(g, left, lj, right, rj, k + 1, used, visit);
        g.sides[r][rj] = None;
        used[ri] = false;
    }
    g.sides[l][lj] = None;
}
