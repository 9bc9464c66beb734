//! Crossingless planar diagrams: a perfect matching on boundary points plus
//! a number of disjoint circles.
//!
//! Four-ended diagrams number their boundary points `0 = NW, 1 = NE,
//! 2 = SE, 3 = SW`; tangles compose horizontally, the right ends of the left
//! factor glued to the left ends of the right factor.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Planar {
    boundary: usize,
    arcs: Vec<(usize, usize)>,
    circles: usize,
}

/// Where a piece of a traced diagram came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Arc { side: u8, index: usize },
    Circle { side: u8, index: usize },
    Closure(usize),
}

/// A glued or closed diagram together with the provenance of its arcs and
/// circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub planar: Planar,
    pub arc_pieces: Vec<Vec<Piece>>,
    pub circle_pieces: Vec<Vec<Piece>>,
}

/// How the four ends of a tangle are joined to make a closed diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Closure {
    /// Left ends capped together, right ends capped together.
    Plat,
    /// NW joined around to NE and SW to SE.
    Braid,
}

impl Closure {
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Closure::Plat => [(0, 3), (1, 2)],
            Closure::Braid => [(0, 1), (3, 2)],
        }
    }
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |p: usize| a.0 < p && p < a.1;
    inside(b.0) != inside(b.1)
}

impl Planar {
    pub fn new(boundary: usize, arcs: Vec<(usize, usize)>, circles: usize) -> Result<Self> {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        arcs.sort_unstable();
        let mut seen = vec![false; boundary];
        for &(a, b) in &arcs {
            if a == b || b >= boundary || seen[a] || seen[b] {
                return Err(Error::Shape(format!("not a perfect matching: {arcs:?}")));
            }
            seen[a] = true;
            seen[b] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Shape(format!("unmatched boundary point in {arcs:?}")));
        }
        for (i, &a) in arcs.iter().enumerate() {
            if arcs[i + 1..].iter().any(|&b| crosses(a, b)) {
                return Err(Error::Shape(format!("matching is not planar: {arcs:?}")));
            }
        }
        Ok(Planar { boundary, arcs, circles })
    }

    /// `)(`: NW–SW and NE–SE.
    pub fn vertical() -> Self {
        Planar { boundary: 4, arcs: vec![(0, 3), (1, 2)], circles: 0 }
    }

    /// `=`: NW–NE and SW–SE.
    pub fn horizontal() -> Self {
        Planar { boundary: 4, arcs: vec![(0, 1), (2, 3)], circles: 0 }
    }

    pub fn closed(circles: usize) -> Self {
        Planar { boundary: 0, arcs: Vec::new(), circles }
    }

    pub fn boundary(&self) -> usize {
        self.boundary
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn with_circles(&self, circles: usize) -> Self {
        Planar { circles, ..self.clone() }
    }

    pub fn arc_of_point(&self, p: usize) -> usize {
        self.arcs
            .iter()
            .position(|&(a, b)| a == p || b == p)
            .expect("boundary point without arc")
    }

    pub fn partner(&self, p: usize) -> usize {
        let (a, b) = self.arcs[self.arc_of_point(p)];
        if a == p {
            b
        } else {
            a
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.boundary == 4 && self.arcs == [(0, 3), (1, 2)]
    }

    pub fn is_horizontal(&self) -> bool {
        self.boundary == 4 && self.arcs == [(0, 1), (2, 3)]
    }

    /// Horizontal composition `self ∘ right` of four-ended diagrams.
    pub fn glue(&self, right: &Planar) -> Result<Traced> {
        if self.boundary != 4 || right.boundary != 4 {
            return Err(Error::Shape("horizontal gluing needs four-ended diagrams".into()));
        }
        let mut arcs = Vec::new();
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            arcs.push((a, b, Piece::Arc { side: 0, index: i }));
        }
        for (i, &(a, b)) in right.arcs.iter().enumerate() {
            arcs.push((a + 4, b + 4, Piece::Arc { side: 1, index: i }));
        }
        let links = vec![(1, 4, None), (2, 7, None)];
        let outer = vec![(0, 0), (5, 1), (6, 2), (3, 3)];
        let mut old = Vec::new();
        old.extend((0..self.circles).map(|i| Piece::Circle { side: 0, index: i }));
        old.extend((0..right.circles).map(|i| Piece::Circle { side: 1, index: i }));
        trace(8, &arcs, &links, &outer, 4, old)
    }

    /// Join boundary points in pairs, producing a closed diagram.
    pub fn close(&self, closure: Closure) -> Result<Traced> {
        if self.boundary != 4 {
            return Err(Error::Shape("closure needs a four-ended diagram".into()));
        }
        let arcs: Vec<_> = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| (a, b, Piece::Arc { side: 0, index: i }))
            .collect();
        let links: Vec<_> = closure
            .pairs()
            .iter()
            .enumerate()
            .map(|(j, &(p, q))| (p, q, Some(Piece::Closure(j))))
            .collect();
        let old = (0..self.circles).map(|i| Piece::Circle { side: 0, index: i }).collect();
        trace(4, &arcs, &links, &[], 0, old)
    }
}

/// Follow arcs and links. Every node lies on exactly one arc; every node
/// that is not an outer point has exactly one link.
fn trace(
    nodes: usize,
    arcs: &[(usize, usize, Piece)],
    links: &[(usize, usize, Option<Piece>)],
    outer: &[(usize, usize)],
    boundary: usize,
    old_circles: Vec<Piece>,
) -> Result<Traced> {
    let mut arc_at = vec![usize::MAX; nodes];
    for (i, &(a, b, _)) in arcs.iter().enumerate() {
        arc_at[a] = i;
        arc_at[b] = i;
    }
    let mut link_at: Vec<Option<(usize, Option<Piece>)>> = vec![None; nodes];
    for &(a, b, piece) in links {
        link_at[a] = Some((b, piece));
        link_at[b] = Some((a, piece));
    }
    let other = |i: usize, node: usize| {
        let (a, b, _) = arcs[i];
        if a == node {
            b
        } else {
            a
        }
    };
    let mut used = vec![false; arcs.len()];
    let mut out_arcs: Vec<((usize, usize), Vec<Piece>)> = Vec::new();
    for &(start, label) in outer {
        let mut node = start;
        let mut pieces = Vec::new();
        let end_label = loop {
            let i = arc_at[node];
            if used[i] {
                break None;
            }
            used[i] = true;
            pieces.push(arcs[i].2);
            let next = other(i, node);
            match link_at[next] {
                Some((w, piece)) => {
                    if let Some(p) = piece {
                        pieces.push(p);
                    }
                    node = w;
                }
                None => break outer.iter().find(|o| o.0 == next).map(|o| o.1),
            }
        };
        if let Some(end) = end_label {
            out_arcs.push(((label.min(end), label.max(end)), pieces));
        }
    }
    out_arcs.sort_by_key(|x| x.0);
    let mut circle_pieces: Vec<Vec<Piece>> = old_circles.into_iter().map(|p| vec![p]).collect();
    for start_arc in 0..arcs.len() {
        if used[start_arc] {
            continue;
        }
        let start = arcs[start_arc].0;
        let mut node = start;
        let mut pieces = Vec::new();
        loop {
            let i = arc_at[node];
            used[i] = true;
            pieces.push(arcs[i].2);
            let next = other(i, node);
            let (w, piece) = link_at[next].ok_or_else(|| Error::Shape("dangling arc".into()))?;
            if let Some(p) = piece {
                pieces.push(p);
            }
            node = w;
            if node == start {
                break;
            }
        }
        circle_pieces.push(pieces);
    }
    let planar = Planar::new(boundary, out_arcs.iter().map(|x| x.0).collect(), circle_pieces.len())?;
    Ok(Traced { planar, arc_pieces: out_arcs.into_iter().map(|x| x.1).collect(), circle_pieces })
}

impl fmt::Display for Planar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vertical() {
            write!(f, ")(")?;
        } else if self.is_horizontal() {
            write!(f, "=")?;
        } else if self.boundary > 0 {
            let arcs: Vec<String> = self.arcs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            write!(f, "[{}]", arcs.join(","))?;
        }
        match (self.boundary, self.circles) {
            (0, 0) => write!(f, "∅"),
            (_, 0) => Ok(()),
            (0, c) => write!(f, "O^{c}"),
            (_, c) => write!(f, "+O^{c}"),
        }
    }
}
