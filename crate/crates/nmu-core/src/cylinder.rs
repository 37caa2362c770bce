//! The cylinder poset Cyl_{k,n}: the plane modulo the translation (-k, n-k),
//! ordered componentwise via representatives. Finite convex windows carry
//! canonical row/column chain covers and support around-the-cylinder
//! detection for diamonds.

use crate::poset::{Diamond, Element, Poset};
use crate::sorting::{ChainCover, CoverPair};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CylError {
    #[error("cylinder parameters require 1 <= k < n, got k={0}, n={1}")]
    BadParams(i64, i64),
    #[error("cells are not convex: {0:?} < missing {1:?} < {2:?}")]
    NotConvex(CylCoord, CylCoord, CylCoord),
    #[error("cell {0:?} is not canonical for this cylinder")]
    NotCanonical(CylCoord),
    #[error("duplicate cell {0:?}")]
    DuplicateCell(CylCoord),
}

/// Canonical representative of an equivalence class of Cyl_{k,n}:
/// the unique member with 0 <= i <= k-1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CylCoord {
    pub i: i64,
    pub j: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub k: i64,
    pub n: i64,
}

impl Cylinder {
    pub fn new(k: i64, n: i64) -> Result<Cylinder, CylError> {
        if k < 1 || k >= n {
            return Err(CylError::BadParams(k, n));
        }
        Ok(Cylinder { k, n })
    }

    /// The shift applied by one application of the identification.
    fn period(&self) -> (i64, i64) {
        (-self.k, self.n - self.k)
    }

    /// Canonical representative of the class of (i, j).
    pub fn canonical(&self, i: i64, j: i64) -> CylCoord {
        let m = i.div_euclid(self.k);
        CylCoord {
            i: i - m * self.k,
            j: j + m * (self.n - self.k),
        }
    }

    pub fn is_canonical(&self, c: CylCoord) -> bool {
        0 <= c.i && c.i < self.k
    }

    /// a <= b iff some representative of b dominates a's representative
    /// componentwise. The shift range where domination is possible is finite.
    pub fn leq(&self, a: CylCoord, b: CylCoord) -> bool {
        let (di, dj) = self.period();
        // b + t*(di, dj) >= a  componentwise:
        //   b.i + t*di >= a.i   =>  t <= (b.i - a.i) / k
        //   b.j + t*dj >= a.j   =>  t >= (a.j - b.j) / (n - k)
        let t_max = (b.i - a.i).div_euclid(-di);
        let t_min = -(b.j - a.j).div_euclid(dj);
        t_min <= t_max
    }

    pub fn lt(&self, a: CylCoord, b: CylCoord) -> bool {
        a != b && self.leq(a, b)
    }

    /// Canonical forms of the two upper covers (i+1, j) and (i, j+1).
    /// Deduplicated (the two coincide only on the degenerate Cyl_{1,2}).
    pub fn upper_covers(&self, a: CylCoord) -> Vec<CylCoord> {
        let mut out = vec![self.canonical(a.i + 1, a.j), self.canonical(a.i, a.j + 1)];
        out.sort();
        out.dedup();
        out
    }

    pub fn lower_covers(&self, a: CylCoord) -> Vec<CylCoord> {
        let mut out = vec![self.canonical(a.i - 1, a.j), self.canonical(a.i, a.j - 1)];
        out.sort();
        out.dedup();
        out
    }

    /// All classes c with a <= c <= b.
    pub fn interval(&self, a: CylCoord, b: CylCoord) -> Vec<CylCoord> {
        let (di, dj) = self.period();
        let t_max = (b.i - a.i).div_euclid(-di);
        let t_min = -(b.j - a.j).div_euclid(dj);
        let mut out = BTreeSet::new();
        for t in t_min..=t_max {
            let (bi, bj) = (b.i + t * di, b.j + t * dj);
            for i in a.i..=bi {
                for j in a.j..=bj {
                    out.insert(self.canonical(i, j));
                }
            }
        }
        out.into_iter().collect()
    }
}

/// A finite convex subposet of Cyl_{k,n}. Cells are canonical coordinates in
/// lexicographic order; the derived poset labels them 1..=|cells| in that
/// order.
#[derive(Clone, Debug)]
pub struct CylWindow {
    pub cyl: Cylinder,
    cells: Vec<CylCoord>,
    poset: Poset,
}

impl CylWindow {
    /// Validate a convex window and derive its poset.
    pub fn new(cyl: Cylinder, cells: &[CylCoord]) -> Result<CylWindow, CylError> {
        let mut sorted = cells.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(CylError::DuplicateCell(w[0]));
            }
        }
        for &c in &sorted {
            if !cyl.is_canonical(c) {
                return Err(CylError::NotCanonical(c));
            }
        }
        // convexity: every class between two cells is a cell
        let in_cells = |c: CylCoord| sorted.binary_search(&c).is_ok();
        for &a in &sorted {
            for &b in &sorted {
                if !cyl.leq(a, b) {
                    continue;
                }
                for c in cyl.interval(a, b) {
                    if !in_cells(c) {
                        return Err(CylError::NotConvex(a, c, b));
                    }
                }
            }
        }
        // Hasse edges of the restricted order. By convexity these are step
        // successors, except that on degenerate cylinders (k = 1 or
        // n - k = 1) one step direction decomposes into the other and is
        // filtered out here.
        let mut covers = Vec::new();
        for (ai, &a) in sorted.iter().enumerate() {
            'pair: for (bi, &b) in sorted.iter().enumerate() {
                if !cyl.lt(a, b) {
                    continue;
                }
                for &z in &sorted {
                    if cyl.lt(a, z) && cyl.lt(z, b) {
                        continue 'pair;
                    }
                }
                covers.push((ai + 1, bi + 1));
            }
        }
        covers.sort_unstable();
        let poset = Poset::build(sorted.len(), &covers).expect("window poset is valid");
        Ok(CylWindow {
            cyl,
            cells: sorted,
            poset,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn cells(&self) -> &[CylCoord] {
        &self.cells
    }

    pub fn coord_of(&self, e: Element) -> CylCoord {
        self.cells[e - 1]
    }

    pub fn id_of(&self, c: CylCoord) -> Option<Element> {
        self.cells.binary_search(&c).ok().map(|i| i + 1)
    }

    /// The canonical row cover (steps increasing j) and column cover (steps
    /// increasing i), restricted to the window.
    pub fn canonical_cover_pair(&self) -> CoverPair {
        let rows = self.direction_cover(|c| self.cyl.canonical(c.i, c.j + 1));
        let cols = self.direction_cover(|c| self.cyl.canonical(c.i + 1, c.j));
        CoverPair::from_covers(rows, cols)
    }

    /// Row cover alone (used where the two directions must be distinguished).
    pub fn row_cover(&self) -> ChainCover {
        self.direction_cover(|c| self.cyl.canonical(c.i, c.j + 1))
    }

    pub fn col_cover(&self) -> ChainCover {
        self.direction_cover(|c| self.cyl.canonical(c.i + 1, c.j))
    }

    fn direction_cover(&self, step: impl Fn(CylCoord) -> CylCoord) -> ChainCover {
        // on degenerate cylinders one step direction is not a cover of the
        // order; such steps contribute singleton chains instead
        let succ: Vec<Option<Element>> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                self.id_of(step(c))
                    .filter(|&s| self.poset.is_cover(i + 1, s))
            })
            .collect();
        let mut has_pred = vec![false; self.cells.len()];
        for s in succ.iter().flatten() {
            has_pred[s - 1] = true;
        }
        let mut chains = Vec::new();
        for e in self.poset.elements() {
            if has_pred[e - 1] {
                continue;
            }
            let mut chain = vec![e];
            let mut cur = e;
            while let Some(nxt) = succ[cur - 1] {
                chain.push(nxt);
                cur = nxt;
            }
            chains.push(chain);
        }
        ChainCover::new(&self.poset, &chains).expect("directional chains form a cover")
    }

    /// True iff no assignment of planar preimages realizes all of the
    /// diamond's covers as covers in the plane: lift each chain from the
    /// minimum and compare the two lifts of the maximum.
    pub fn goes_around(&self, d: &Diamond) -> bool {
        let start = self.coord_of(d.min);
        let lift_a = self.lift_chain(start, &d.chain_a);
        let lift_b = self.lift_chain(start, &d.chain_b);
        lift_a != lift_b
    }

    fn lift_chain(&self, start: CylCoord, chain: &[Element]) -> (i64, i64) {
        let mut p = (start.i, start.j);
        for w in chain.windows(2) {
            let next = self.coord_of(w[1]);
            if self.cyl.canonical(p.0 + 1, p.1) == next {
                p = (p.0 + 1, p.1);
            } else if self.cyl.canonical(p.0, p.1 + 1) == next {
                p = (p.0, p.1 + 1);
            } else {
                unreachable!("consecutive chain elements must be cylinder covers");
            }
        }
        p
    }
}

/// A rectangle window anchored at the origin with the given numbers of rows
/// and columns. With rows <= k it lies within one fundamental domain.
pub fn rectangle_window(cyl: Cylinder, rows: i64, cols: i64) -> Result<CylWindow, CylError> {
    let mut cells = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            cells.push(cyl.canonical(i, j));
        }
    }
    CylWindow::new(cyl, &cells)
}

/// Enumerate the connected convex windows of Cyl_{k,n} with at most
/// `max_cells` cells, one representative per translation class.
pub fn enumerate_connected_windows(cyl: Cylinder, max_cells: usize) -> Vec<Vec<CylCoord>> {
    let mut seen: BTreeSet<Vec<CylCoord>> = BTreeSet::new();
    let mut convex: Vec<Vec<CylCoord>> = Vec::new();
    let origin = cyl.canonical(0, 0);
    let first = normalize_translation(cyl, &[origin]);
    let mut frontier = vec![first.clone()];
    seen.insert(first.clone());
    record_if_convex(cyl, &first, &mut convex);
    while let Some(cells) = frontier.pop() {
        if cells.len() == max_cells {
            continue;
        }
        let mut candidates = BTreeSet::new();
        for &c in &cells {
            for nb in cyl.upper_covers(c).into_iter().chain(cyl.lower_covers(c)) {
                if !cells.contains(&nb) {
                    candidates.insert(nb);
                }
            }
        }
        for cand in candidates {
            let mut next = cells.clone();
            next.push(cand);
            let norm = normalize_translation(cyl, &next);
            if seen.insert(norm.clone()) {
                record_if_convex(cyl, &norm, &mut convex);
                frontier.push(norm);
            }
        }
    }
    convex
}

fn record_if_convex(cyl: Cylinder, cells: &[CylCoord], out: &mut Vec<Vec<CylCoord>>) {
    if CylWindow::new(cyl, cells).is_ok() {
        out.push(cells.to_vec());
    }
}

/// Lexicographically minimal translate of a cell set (translations act as
/// automorphisms of the cylinder).
fn normalize_translation(cyl: Cylinder, cells: &[CylCoord]) -> Vec<CylCoord> {
    let mut best: Option<Vec<CylCoord>> = None;
    for &anchor in cells {
        let mut shifted: Vec<CylCoord> = cells
            .iter()
            .map(|&c| cyl.canonical(c.i - anchor.i, c.j - anchor.j))
            .collect();
        shifted.sort();
        if best.as_ref().map_or(true, |b| shifted < *b) {
            best = Some(shifted);
        }
    }
    best.unwrap()
}
