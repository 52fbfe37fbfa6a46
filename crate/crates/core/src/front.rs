//! Plat-event encoding of Legendrian fronts.
//!
//! A front is read left to right as a word of events acting on strands that
//! are numbered from the top of the current vertical slice, starting at 1:
//!
//! * `l<k>` a left cusp inserting two new strands at positions `k`, `k+1`;
//! * `x<k>` a crossing of the strands at positions `k` and `k+1`;
//! * `r<k>` a right cusp joining the strands at positions `k` and `k+1`.
//!
//! Gap `g` is the slice after the first `g` events. `bp g.s` marks a point on
//! strand `s` of gap `g`; the knot is oriented to move rightward there.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrontEvent {
    LeftCusp(usize),
    Crossing(usize),
    RightCusp(usize),
}

impl FrontEvent {
    pub fn position(self) -> usize {
        match self {
            FrontEvent::LeftCusp(k) | FrontEvent::Crossing(k) | FrontEvent::RightCusp(k) => k,
        }
    }

    fn strand_delta(self) -> isize {
        match self {
            FrontEvent::LeftCusp(_) => 2,
            FrontEvent::Crossing(_) => 0,
            FrontEvent::RightCusp(_) => -2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Basepoint {
    pub gap: usize,
    pub strand: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrontWord {
    pub name: Option<String>,
    pub events: Vec<FrontEvent>,
    pub basepoint: Basepoint,
}

impl FrontWord {
    /// Builds and validates a front from its events. A missing basepoint
    /// defaults to the top strand right after the first left cusp.
    pub fn new(
        name: Option<String>,
        events: Vec<FrontEvent>,
        basepoint: Option<Basepoint>,
    ) -> Result<Self> {
        let front = FrontWord {
            name,
            events,
            basepoint: basepoint.unwrap_or(Basepoint { gap: 1, strand: 1 }),
        };
        front.validate()?;
        Ok(front)
    }

    /// Strand count of every gap, `0..=events.len()`.
    pub fn strand_counts(&self) -> Vec<usize> {
        let mut counts = Vec::with_capacity(self.events.len() + 1);
        let mut n: isize = 0;
        counts.push(0);
        for ev in &self.events {
            n += ev.strand_delta();
            counts.push(n.max(0) as usize);
        }
        counts
    }

    pub fn crossing_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, FrontEvent::Crossing(_)))
            .count()
    }

    pub fn right_cusp_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, FrontEvent::RightCusp(_)))
            .count()
    }

    pub fn validate(&self) -> Result<()> {
        if self.events.is_empty() {
            return Err(Error::Topology("empty front".into()));
        }
        let mut n = 0usize;
        for (i, ev) in self.events.iter().enumerate() {
            let k = ev.position();
            let ok = match ev {
                FrontEvent::LeftCusp(_) => k >= 1 && k <= n + 1,
                FrontEvent::Crossing(_) | FrontEvent::RightCusp(_) => k >= 1 && k < n,
            };
            if !ok {
                return Err(Error::Topology(format!(
                    "event {} ({}) out of range for {} strands",
                    i + 1,
                    event_token(*ev),
                    n
                )));
            }
            n = (n as isize + ev.strand_delta()) as usize;
        }
        if n != 0 {
            return Err(Error::Topology(format!("front ends with {n} open strands")));
        }
        let components = self.component_count();
        if components != 1 {
            return Err(Error::Topology(format!(
                "front has {components} components, expected a knot"
            )));
        }
        let counts = self.strand_counts();
        let bp = self.basepoint;
        if bp.gap == 0 || bp.gap >= counts.len() || bp.strand == 0 || bp.strand > counts[bp.gap] {
            return Err(Error::Topology(format!(
                "basepoint {}.{} is not on a strand",
                bp.gap, bp.strand
            )));
        }
        Ok(())
    }

    /// Number of closed components traced through the word.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = Vec::new();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut strands: Vec<usize> = Vec::new();
        for ev in &self.events {
            match *ev {
                FrontEvent::LeftCusp(k) => {
                    let a = parent.len();
                    parent.push(a);
                    strands.insert(k - 1, a);
                    strands.insert(k, a);
                }
                FrontEvent::Crossing(k) => strands.swap(k - 1, k),
                FrontEvent::RightCusp(k) => {
                    let a = strands.remove(k - 1);
                    let b = strands.remove(k - 1);
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        (0..parent.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }

    /// Walks once around the knot starting at the basepoint.
    ///
    /// The walk moves rightward at the basepoint, or leftward when `reverse`
    /// is set. Every crossing is passed twice and every cusp once.
    pub fn traverse(&self, reverse: bool) -> Vec<Passage> {
        let mut out = Vec::new();
        let start = (self.basepoint.gap, self.basepoint.strand, !reverse);
        let (mut gap, mut pos, mut right) = start;
        loop {
            if right {
                let idx = gap;
                match self.events[idx] {
                    FrontEvent::Crossing(c) => {
                        if pos == c {
                            out.push(Passage::Crossing {
                                event: idx,
                                over: true,
                            });
                            pos = c + 1;
                        } else if pos == c + 1 {
                            out.push(Passage::Crossing {
                                event: idx,
                                over: false,
                            });
                            pos = c;
                        }
                        gap += 1;
                    }
                    FrontEvent::LeftCusp(c) => {
                        if pos >= c {
                            pos += 2;
                        }
                        gap += 1;
                    }
                    FrontEvent::RightCusp(c) => {
                        if pos == c {
                            out.push(Passage::Cusp {
                                event: idx,
                                down: true,
                            });
                            pos = c + 1;
                            right = false;
                        } else if pos == c + 1 {
                            out.push(Passage::Cusp {
                                event: idx,
                                down: false,
                            });
                            pos = c;
                            right = false;
                        } else {
                            if pos > c + 1 {
                                pos -= 2;
                            }
                            gap += 1;
                        }
                    }
                }
            } else {
                let idx = gap - 1;
                match self.events[idx] {
                    FrontEvent::Crossing(c) => {
                        if pos == c {
                            out.push(Passage::Crossing {
                                event: idx,
                                over: false,
                            });
                            pos = c + 1;
                        } else if pos == c + 1 {
                            out.push(Passage::Crossing {
                                event: idx,
                                over: true,
                            });
                            pos = c;
                        }
                        gap -= 1;
                    }
                    FrontEvent::RightCusp(c) => {
                        if pos >= c {
                            pos += 2;
                        }
                        gap -= 1;
                    }
                    FrontEvent::LeftCusp(c) => {
                        if pos == c {
                            out.push(Passage::Cusp {
                                event: idx,
                                down: true,
                            });
                            pos = c + 1;
                            right = true;
                        } else if pos == c + 1 {
                            out.push(Passage::Cusp {
                                event: idx,
                                down: false,
                            });
                            pos = c;
                            right = true;
                        } else {
                            if pos > c + 1 {
                                pos -= 2;
                            }
                            gap -= 1;
                        }
                    }
                }
            }
            if (gap, pos, right) == start {
                break;
            }
        }
        out
    }
}

/// One singular point met while walking around the knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Passage {
    /// `over` is set when the walk is on the strand of lesser front slope,
    /// which becomes the over-strand of the resolved crossing.
    Crossing { event: usize, over: bool },
    /// `down` is set when the walk moves from the upper branch to the lower.
    Cusp { event: usize, down: bool },
}

fn event_token(ev: FrontEvent) -> String {
    match ev {
        FrontEvent::LeftCusp(k) => format!("l{k}"),
        FrontEvent::Crossing(k) => format!("x{k}"),
        FrontEvent::RightCusp(k) => format!("r{k}"),
    }
}

impl fmt::Display for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name {name}")?;
        }
        let words: Vec<String> = self.events.iter().map(|e| event_token(*e)).collect();
        writeln!(f, "{}", words.join(" "))?;
        writeln!(f, "bp {}.{}", self.basepoint.gap, self.basepoint.strand)
    }
}

impl std::str::FromStr for FrontWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_front(s)
    }
}

pub fn parse_front(text: &str) -> Result<FrontWord> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        tokens.extend(body.split_whitespace().map(|t| (lineno + 1, t)));
    }
    let syntax = |line: usize, token: &str, msg: &str| Error::Syntax {
        line,
        token: token.to_string(),
        msg: msg.to_string(),
    };
    let mut events = Vec::new();
    let mut basepoint = None;
    let mut name = None;
    let mut it = tokens.into_iter();
    while let Some((line, tok)) = it.next() {
        match tok {
            "bp" => {
                let (l2, arg) = it
                    .next()
                    .ok_or_else(|| syntax(line, tok, "expected <gap>.<strand> after bp"))?;
                let (g, s) = arg
                    .split_once('.')
                    .ok_or_else(|| syntax(l2, arg, "basepoint must be <gap>.<strand>"))?;
                let gap = g.parse().map_err(|_| syntax(l2, arg, "bad gap index"))?;
                let strand = s.parse().map_err(|_| syntax(l2, arg, "bad strand index"))?;
                if basepoint.replace(Basepoint { gap, strand }).is_some() {
                    return Err(syntax(l2, arg, "duplicate basepoint"));
                }
            }
            "name" => {
                let (l2, arg) = it
                    .next()
                    .ok_or_else(|| syntax(line, tok, "expected identifier after name"))?;
                if !arg
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
                {
                    return Err(syntax(l2, arg, "bad identifier"));
                }
                name = Some(arg.to_string());
            }
            _ => {
                let mut chars = tok.chars();
                let kind = chars.next().unwrap();
                let k: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| syntax(line, tok, "expected l<k>, x<k> or r<k>"))?;
                let ev = match kind {
                    'l' => FrontEvent::LeftCusp(k),
                    'x' => FrontEvent::Crossing(k),
                    'r' => FrontEvent::RightCusp(k),
                    _ => return Err(syntax(line, tok, "unknown token")),
                };
                events.push(ev);
            }
        }
    }
    FrontWord::new(name, events, basepoint)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_parses() {
        let f = parse_front("l1 r1 bp 1.1").unwrap();
        assert_eq!(
            f.events,
            vec![FrontEvent::LeftCusp(1), FrontEvent::RightCusp(1)]
        );
        assert_eq!(f.basepoint, Basepoint { gap: 1, strand: 1 });
    }

    #[test]
    fn trefoil_word_is_one_component_with_three_crossings() {
        let f = parse_front("l1 l1 x2 x2 x2 r2 r1 bp 1.1").unwrap();
        assert_eq!(f.component_count(), 1);
        assert_eq!(f.crossing_count(), 3);
        let std = parse_front("l1 l1 x2 x2 x2 r1 r1").unwrap();
        assert_eq!(std.crossing_count(), 3);
    }

    #[test]
    fn twisted_cusp_pair_is_a_knot() {
        // a crossing between the two branches of one cusp pair still closes up
        assert!(parse_front("l1 x1 r1").is_ok());
    }

    #[test]
    fn topology_errors() {
        assert!(matches!(
            parse_front("l1 l1 r1 r1"),
            Err(Error::Topology(_))
        ));
        assert!(matches!(parse_front("l1 x2 r1"), Err(Error::Topology(_))));
        assert!(matches!(parse_front("l1"), Err(Error::Topology(_))));
        assert!(matches!(parse_front(""), Err(Error::Topology(_))));
        assert!(matches!(
            parse_front("l1 r1 bp 1.3"),
            Err(Error::Topology(_))
        ));
        assert!(matches!(
            parse_front("l1 r1 bp 2.1"),
            Err(Error::Topology(_))
        ));
        assert!(matches!(parse_front("r1"), Err(Error::Topology(_))));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_front("l1 q2 r1"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_front("l1 r1 bp 11"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_front("lx r1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn comments_and_names() {
        let f = parse_front("# unknot\nname u0 # the simplest\nl1 r1\n").unwrap();
        assert_eq!(f.name.as_deref(), Some("u0"));
        let again = parse_front(&f.to_string()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn traversal_visits_every_crossing_twice() {
        let f = parse_front("l1 l1 x2 x2 x2 r1 r1").unwrap();
        let p = f.traverse(false);
        let crossings = p
            .iter()
            .filter(|x| matches!(x, Passage::Crossing { .. }))
            .count();
        let cusps = p
            .iter()
            .filter(|x| matches!(x, Passage::Cusp { .. }))
            .count();
        assert_eq!(crossings, 6);
        assert_eq!(cusps, 4);
    }
}
