//! Chain covers, the chain-sort operator, and the definitional
//! non-messing-up verifier.

use crate::poset::{bit, set_of, Element, ElementSet, Labeling, Poset};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CoverError {
    #[error("element {0} appears in more than one chain")]
    Overlap(Element),
    #[error("consecutive chain entries ({0}, {1}) are not a cover relation")]
    NotSaturated(Element, Element),
    #[error("elements {0:?} are not covered by any chain")]
    NotCovering(Vec<Element>),
    #[error("chain element {0} out of range 1..={1}")]
    OutOfRange(Element, usize),
    #[error("chain is empty")]
    EmptyChain,
}

/// A set of disjoint saturated chains covering the elements of a poset.
/// Chains are stored min-to-max and sorted by their first element, so equal
/// covers compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainCover {
    chains: Vec<Vec<Element>>,
}

impl ChainCover {
    /// Validate chains against a poset: disjoint, saturated, covering.
    pub fn new(p: &Poset, chains: &[Vec<Element>]) -> Result<ChainCover, CoverError> {
        let mut seen: ElementSet = 0;
        for chain in chains {
            if chain.is_empty() {
                return Err(CoverError::EmptyChain);
            }
            for &e in chain {
                if e < 1 || e > p.n() {
                    return Err(CoverError::OutOfRange(e, p.n()));
                }
                if seen & bit(e) != 0 {
                    return Err(CoverError::Overlap(e));
                }
                seen |= bit(e);
            }
            for w in chain.windows(2) {
                if !p.is_cover(w[0], w[1]) {
                    return Err(CoverError::NotSaturated(w[0], w[1]));
                }
            }
        }
        if seen != p.all_mask() {
            let missing: Vec<Element> = p.elements().filter(|&e| seen & bit(e) == 0).collect();
            return Err(CoverError::NotCovering(missing));
        }
        let mut chains = chains.to_vec();
        chains.sort();
        Ok(ChainCover { chains })
    }

    pub fn chains(&self) -> &[Vec<Element>] {
        &self.chains
    }

    /// The chain containing element e, if validated against the right poset.
    pub fn chain_of(&self, e: Element) -> Option<&[Element]> {
        self.chains
            .iter()
            .find(|c| c.contains(&e))
            .map(|c| c.as_slice())
    }

    /// True iff the cover relation (u, v) lies inside some chain.
    pub fn contains_edge(&self, u: Element, v: Element) -> bool {
        self.chains
            .iter()
            .any(|c| c.windows(2).any(|w| w[0] == u && w[1] == v))
    }

    /// True iff some chain contains all elements of `s`.
    pub fn some_chain_contains(&self, s: ElementSet) -> bool {
        self.chains.iter().any(|c| set_of(c) & s == s)
    }
}

/// An unordered pair of chain covers. The two covers are stored in canonical
/// order so that swapped constructions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverPair {
    c1: ChainCover,
    c2: ChainCover,
}

/// Edge color with respect to a cover pair: in the first cover, the second,
/// or both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeColor {
    Red,
    Blue,
    Doubly,
}

impl CoverPair {
    pub fn new(p: &Poset, c1: &[Vec<Element>], c2: &[Vec<Element>]) -> Result<CoverPair, CoverError> {
        let a = ChainCover::new(p, c1)?;
        let b = ChainCover::new(p, c2)?;
        Ok(CoverPair::from_covers(a, b))
    }

    pub fn from_covers(a: ChainCover, b: ChainCover) -> CoverPair {
        if a <= b {
            CoverPair { c1: a, c2: b }
        } else {
            CoverPair { c1: b, c2: a }
        }
    }

    pub fn first(&self) -> &ChainCover {
        &self.c1
    }

    pub fn second(&self) -> &ChainCover {
        &self.c2
    }

    /// Color of a cover relation, or None if the edge is in neither cover.
    pub fn edge_color(&self, u: Element, v: Element) -> Option<EdgeColor> {
        match (self.c1.contains_edge(u, v), self.c2.contains_edge(u, v)) {
            (true, true) => Some(EdgeColor::Doubly),
            (true, false) => Some(EdgeColor::Red),
            (false, true) => Some(EdgeColor::Blue),
            (false, false) => None,
        }
    }
}

/// True iff every cover relation of `p` lies inside some chain of either cover.
pub fn edge_coverage(p: &Poset, pair: &CoverPair) -> bool {
    uncovered_edge(p, pair).is_none()
}

pub fn uncovered_edge(p: &Poset, pair: &CoverPair) -> Option<(Element, Element)> {
    p.covers()
        .iter()
        .copied()
        .find(|&(u, v)| !pair.c1.contains_edge(u, v) && !pair.c2.contains_edge(u, v))
}

/// Sort the labels along each chain of the cover: per chain, the multiset of
/// labels is reassigned in nondecreasing order from the chain's minimum.
pub fn chain_sort_values<T: Ord + Clone>(cover: &ChainCover, values: &[T]) -> Vec<T> {
    let mut out = values.to_vec();
    for chain in cover.chains() {
        let mut labels: Vec<T> = chain.iter().map(|&e| values[e - 1].clone()).collect();
        labels.sort();
        for (&e, l) in chain.iter().zip(labels) {
            out[e - 1] = l;
        }
    }
    out
}

pub fn chain_sort(_p: &Poset, cover: &ChainCover, lab: &[i64]) -> Labeling {
    chain_sort_values(cover, lab)
}

/// True iff every chain's labels are nondecreasing from min to max.
pub fn is_sorted_along<T: Ord>(cover: &ChainCover, values: &[T]) -> bool {
    first_unsorted_edge(cover, values).is_none()
}

fn first_unsorted_edge<T: Ord>(cover: &ChainCover, values: &[T]) -> Option<(Element, Element)> {
    for chain in cover.chains() {
        for w in chain.windows(2) {
            if values[w[0] - 1] > values[w[1] - 1] {
                return Some((w[0], w[1]));
            }
        }
    }
    None
}

/// Class of labelings the verifier enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// All bijections onto {1..n}, in lexicographic order.
    Permutations,
    /// All {0,1}-labelings, in increasing bitmask order.
    ZeroOne,
}

impl Mode {
    pub fn labeling_count(&self, n: usize) -> u64 {
        match self {
            Mode::Permutations => (1..=n as u64).product(),
            Mode::ZeroOne => 1u64 << n,
        }
    }

    /// The labeling at a given index in the mode's canonical order.
    pub fn labeling_at(&self, n: usize, idx: u64) -> Labeling {
        match self {
            Mode::ZeroOne => (0..n).map(|b| ((idx >> b) & 1) as i64).collect(),
            Mode::Permutations => {
                // lexicographic unranking via the factorial number system
                let mut avail: Vec<i64> = (1..=n as i64).collect();
                let mut rem = idx;
                let mut fact: u64 = (1..=n as u64).product();
                let mut out = Vec::with_capacity(n);
                for pos in 0..n {
                    fact /= (n - pos) as u64;
                    out.push(avail.remove((rem / fact) as usize));
                    rem %= fact;
                }
                out
            }
        }
    }
}

/// Why an NMU check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NmuFailure {
    /// An edge contained in neither cover.
    EdgeCoverage { edge: (Element, Element) },
    /// A concrete labeling for which sorting by the `sorted_first` cover and
    /// then the other leaves `violated_edge` out of order along the first.
    Counterexample {
        labeling: Labeling,
        sorted_first: u8,
        violated_edge: (Element, Element),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NmuVerdict {
    pub holds: bool,
    pub failure: Option<NmuFailure>,
    pub labelings_checked: u64,
    pub mode: Mode,
}

/// Check one labeling: for i = 1, 2, sort by cover i then by the other, and
/// report the first violated edge along cover i, if any.
fn check_labeling(pair: &CoverPair, lab: &[i64]) -> Option<(u8, (Element, Element))> {
    for (i, first, second) in [(1u8, &pair.c1, &pair.c2), (2u8, &pair.c2, &pair.c1)] {
        let once = chain_sort_values(first, lab);
        let twice = chain_sort_values(second, &once);
        if let Some(edge) = first_unsorted_edge(first, &twice) {
            return Some((i, edge));
        }
    }
    None
}

fn find_counterexample_seq(pair: &CoverPair, mode: Mode, n: usize) -> Option<(u64, u8, (Element, Element))> {
    let total = mode.labeling_count(n);
    (0..total).find_map(|idx| {
        let lab = mode.labeling_at(n, idx);
        check_labeling(pair, &lab).map(|(i, e)| (idx, i, e))
    })
}

#[cfg(feature = "parallel")]
fn find_counterexample_par(pair: &CoverPair, mode: Mode, n: usize) -> Option<(u64, u8, (Element, Element))> {
    use rayon::prelude::*;
    let total = mode.labeling_count(n);
    (0..total).into_par_iter().find_map_first(|idx| {
        let lab = mode.labeling_at(n, idx);
        check_labeling(pair, &lab).map(|(i, e)| (idx, i, e))
    })
}

fn verdict_from(
    mode: Mode,
    n: usize,
    found: Option<(u64, u8, (Element, Element))>,
) -> NmuVerdict {
    let total = mode.labeling_count(n);
    match found {
        None => NmuVerdict {
            holds: true,
            failure: None,
            labelings_checked: total,
            mode,
        },
        Some((idx, i, edge)) => NmuVerdict {
            holds: false,
            failure: Some(NmuFailure::Counterexample {
                labeling: mode.labeling_at(n, idx),
                sorted_first: i,
                violated_edge: edge,
            }),
            labelings_checked: idx + 1,
            mode,
        },
    }
}

fn edge_coverage_verdict(p: &Poset, pair: &CoverPair, mode: Mode) -> Option<NmuVerdict> {
    uncovered_edge(p, pair).map(|edge| NmuVerdict {
        holds: false,
        failure: Some(NmuFailure::EdgeCoverage { edge }),
        labelings_checked: 0,
        mode,
    })
}

/// Decide the non-messing-up property for this pair over the mode's labeling
/// class. The counterexample, when present, is the first in canonical
/// labeling order regardless of worker count.
pub fn nmu_check(p: &Poset, pair: &CoverPair, mode: Mode) -> NmuVerdict {
    #[cfg(feature = "parallel")]
    {
        nmu_check_par(p, pair, mode)
    }
    #[cfg(not(feature = "parallel"))]
    {
        nmu_check_seq(p, pair, mode)
    }
}

pub fn nmu_check_seq(p: &Poset, pair: &CoverPair, mode: Mode) -> NmuVerdict {
    if let Some(v) = edge_coverage_verdict(p, pair, mode) {
        return v;
    }
    verdict_from(mode, p.n(), find_counterexample_seq(pair, mode, p.n()))
}

#[cfg(feature = "parallel")]
pub fn nmu_check_par(p: &Poset, pair: &CoverPair, mode: Mode) -> NmuVerdict {
    if let Some(v) = edge_coverage_verdict(p, pair, mode) {
        return v;
    }
    verdict_from(mode, p.n(), find_counterexample_par(pair, mode, p.n()))
}

/// Restrict a chain cover to a subset of elements: each chain keeps its
/// elements inside `s` and is split wherever consecutive kept entries are not
/// a cover of the subposet. Fragments are re-validated as saturated chains.
pub fn restrict_cover(
    cover: &ChainCover,
    s: ElementSet,
    sub: &Poset,
    ids: &[Element],
) -> Result<ChainCover, CoverError> {
    let pos = |e: Element| ids.iter().position(|&x| x == e).map(|i| i + 1);
    let mut chains: Vec<Vec<Element>> = Vec::new();
    for chain in cover.chains() {
        let kept: Vec<Element> = chain
            .iter()
            .copied()
            .filter(|&e| s & bit(e) != 0)
            .filter_map(pos)
            .collect();
        if kept.is_empty() {
            continue;
        }
        let mut cur = vec![kept[0]];
        for &e in &kept[1..] {
            if sub.is_cover(*cur.last().unwrap(), e) {
                cur.push(e);
            } else {
                chains.push(std::mem::take(&mut cur));
                cur = vec![e];
            }
        }
        chains.push(cur);
    }
    ChainCover::new(sub, &chains)
}

/// Restrict a cover pair to a convex subset, returning the induced subposet,
/// the restricted pair, and the id mapping.
pub fn restrict_pair_to_convex(
    p: &Poset,
    pair: &CoverPair,
    s: ElementSet,
) -> Result<(Poset, CoverPair, Vec<Element>), CoverError> {
    let (sub, ids) = p.induced(s);
    let c1 = restrict_cover(&pair.c1, s, &sub, &ids)?;
    let c2 = restrict_cover(&pair.c2, s, &sub, &ids)?;
    Ok((sub, CoverPair::from_covers(c1, c2), ids))
}

/// The row and column covers of the grid poset from [`Poset::grid`].
pub fn grid_row_cover(p: &Poset, rows: usize, cols: usize) -> ChainCover {
    let chains: Vec<Vec<Element>> = (1..=rows)
        .map(|r| (1..=cols).map(|c| (r - 1) * cols + c).collect())
        .collect();
    ChainCover::new(p, &chains).expect("grid rows form a chain cover")
}

pub fn grid_col_cover(p: &Poset, rows: usize, cols: usize) -> ChainCover {
    let chains: Vec<Vec<Element>> = (1..=cols)
        .map(|c| (1..=rows).map(|r| (r - 1) * cols + c).collect())
        .collect();
    ChainCover::new(p, &chains).expect("grid columns form a chain cover")
}
