//! Element splitting, contraction of pipes to the most-reduced poset, and
//! colorings induced through a split.

use crate::poset::{Element, Poset};
use crate::sorting::{ChainCover, CoverError, CoverPair};

/// How a reduced poset's elements expand back into the original: element x of
/// the base splits into the saturated chain `image_chain[x - 1]` of length
/// `s[x - 1]`.
#[derive(Clone, Debug)]
pub struct SplitMap {
    base: Poset,
    s: Vec<usize>,
    image_chain: Vec<Vec<Element>>,
}

impl SplitMap {
    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn s(&self, x: Element) -> usize {
        self.s[x - 1]
    }

    pub fn image_chain(&self, x: Element) -> &[Element] {
        &self.image_chain[x - 1]
    }

    fn bottom(&self, x: Element) -> Element {
        self.image_chain[x - 1][0]
    }

    fn top(&self, x: Element) -> Element {
        *self.image_chain[x - 1].last().unwrap()
    }
}

/// A reduction P ~> P~ together with the split map that reconstructs P.
#[derive(Clone, Debug)]
pub struct ReductionWitness {
    original: Poset,
    split: SplitMap,
}

impl ReductionWitness {
    pub fn original(&self) -> &Poset {
        &self.original
    }

    pub fn reduced(&self) -> &Poset {
        &self.split.base
    }

    pub fn split(&self) -> &SplitMap {
        &self.split
    }

    /// Rebuild the original poset from the reduced poset and the split map.
    pub fn reconstruct(&self) -> Poset {
        let mut covers = Vec::new();
        for x in self.split.base.elements() {
            for w in self.split.image_chain(x).windows(2) {
                covers.push((w[0], w[1]));
            }
        }
        for &(u, v) in self.split.base.covers() {
            covers.push((self.split.top(u), self.split.bottom(v)));
        }
        Poset::build(self.original.n(), &covers).expect("reconstruction is valid")
    }

    /// Push a coloring of the reduced poset through the split: each reduced
    /// chain becomes the concatenation of the image chains of its elements,
    /// so intra-pipe edges end up in both covers.
    pub fn induce_pair(&self, pair: &CoverPair) -> Result<CoverPair, CoverError> {
        let c1 = self.induce_cover(pair.first())?;
        let c2 = self.induce_cover(pair.second())?;
        Ok(CoverPair::from_covers(c1, c2))
    }

    pub fn induce_cover(&self, cover: &ChainCover) -> Result<ChainCover, CoverError> {
        let chains: Vec<Vec<Element>> = cover
            .chains()
            .iter()
            .map(|chain| {
                chain
                    .iter()
                    .flat_map(|&x| self.split.image_chain(x).iter().copied())
                    .collect()
            })
            .collect();
        ChainCover::new(&self.original, &chains)
    }
}

/// Replace element x by a chain x_1 < ... < x_s: upper covers reattach to the
/// top of the chain, lower covers to the bottom. New elements take ids
/// x..x+s-1; ids above x shift up by s-1.
pub fn split_element(q: &Poset, x: Element, s: usize) -> Poset {
    assert!(s >= 1 && x >= 1 && x <= q.n());
    let shift = |e: Element| if e > x { e + s - 1 } else { e };
    let mut covers = Vec::new();
    for &(u, v) in q.covers() {
        let u2 = if u == x { x + s - 1 } else { shift(u) };
        let v2 = if v == x { x } else { shift(v) };
        covers.push((u2, v2));
    }
    for t in 0..s.saturating_sub(1) {
        covers.push((x + t, x + t + 1));
    }
    Poset::build(q.n() + s - 1, &covers).expect("split poset is valid")
}

/// An edge u < v is contractible when v is the unique upper cover of u and u
/// the unique lower cover of v; maximal runs of contractible edges are pipes.
fn contractible(p: &Poset, u: Element, v: Element) -> bool {
    p.upper_covers(u) == [v] && p.lower_covers(v) == [u]
}

/// The maximal pipes of p, each listed bottom to top, ordered by bottom
/// element. Every element lies in exactly one pipe (singletons included).
pub fn maximal_pipes(p: &Poset) -> Vec<Vec<Element>> {
    let mut succ: Vec<Option<Element>> = vec![None; p.n()];
    let mut has_pred = vec![false; p.n()];
    for &(u, v) in p.covers() {
        if contractible(p, u, v) {
            succ[u - 1] = Some(v);
            has_pred[v - 1] = true;
        }
    }
    let mut pipes = Vec::new();
    for e in p.elements() {
        if has_pred[e - 1] {
            continue;
        }
        let mut pipe = vec![e];
        let mut cur = e;
        while let Some(nxt) = succ[cur - 1] {
            pipe.push(nxt);
            cur = nxt;
        }
        pipes.push(pipe);
    }
    pipes
}

fn witness_from_pipes(p: &Poset, pipes: Vec<Vec<Element>>) -> ReductionWitness {
    let m = pipes.len();
    let mut pipe_of = vec![0usize; p.n()];
    for (idx, pipe) in pipes.iter().enumerate() {
        for &e in pipe {
            pipe_of[e - 1] = idx + 1;
        }
    }
    let mut covers = Vec::new();
    for &(u, v) in p.covers() {
        let (pu, pv) = (pipe_of[u - 1], pipe_of[v - 1]);
        if pu != pv {
            covers.push((pu, pv));
        }
    }
    covers.sort_unstable();
    covers.dedup();
    let base = Poset::build(m, &covers).expect("reduced poset is valid");
    let s: Vec<usize> = pipes.iter().map(|pipe| pipe.len()).collect();
    ReductionWitness {
        original: p.clone(),
        split: SplitMap {
            base,
            s,
            image_chain: pipes,
        },
    }
}

/// Contract every maximal pipe to a single element. The split map records the
/// pipe lengths and reconstructs the input exactly.
pub fn most_reduced(p: &Poset) -> ReductionWitness {
    witness_from_pipes(p, maximal_pipes(p))
}

/// All reductions of p: one witness per way of contracting each maximal pipe
/// into consecutive runs. Ordered by reduced size ascending, most reduced
/// first; the identity reduction (all runs of length 1) comes last.
pub fn all_reductions(p: &Poset) -> Vec<ReductionWitness> {
    let pipes = maximal_pipes(p);
    let composition_sets: Vec<Vec<Vec<usize>>> = pipes
        .iter()
        .map(|pipe| compositions(pipe.len()))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; pipes.len()];
    'all: loop {
        let mut split_pipes: Vec<Vec<Element>> = Vec::new();
        for (pi, pipe) in pipes.iter().enumerate() {
            let comp = &composition_sets[pi][choice[pi]];
            let mut at = 0usize;
            for &len in comp {
                split_pipes.push(pipe[at..at + len].to_vec());
                at += len;
            }
        }
        // deterministic ids: order segments by bottom element
        split_pipes.sort_by_key(|seg| seg[0]);
        out.push(witness_from_pipes(p, split_pipes));
        // advance the mixed-radix counter over composition choices
        let mut pos = 0;
        loop {
            if pos == pipes.len() {
                break 'all;
            }
            choice[pos] += 1;
            if choice[pos] < composition_sets[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
    let mut keyed: Vec<(usize, Vec<usize>, ReductionWitness)> = out
        .into_iter()
        .map(|w| (w.reduced().n(), w.split.s.clone(), w))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, w)| w).collect()
}

/// Ordered compositions of n, fewest parts first (so coarser contractions
/// are tried before finer ones).
fn compositions(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for first in (1..=rem).rev() {
            cur.push(first);
            rec(rem - first, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out.sort_by_key(|c| c.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sorting::{grid_col_cover, grid_row_cover, nmu_check, ChainCover, Mode};

    #[test]
    fn split_middle_of_three_chain() {
        let q = Poset::chain(3);
        let p = split_element(&q, 2, 2);
        assert_eq!(p, Poset::chain(4));
    }

    #[test]
    fn split_with_s_one_is_identity() {
        let q = Poset::grid(2, 2);
        assert_eq!(split_element(&q, 3, 1), q);
    }

    #[test]
    fn split_diamond_minimum_gives_bottom_chain() {
        let q = Poset::grid(2, 2); // 1 < 2, 1 < 3, 2 < 4, 3 < 4
        let p = split_element(&q, 1, 2);
        // expect: 1 < 2; 2 < 3, 2 < 4; 3 < 5, 4 < 5
        let expect = Poset::build(5, &[(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn chain_reduces_to_a_point() {
        let w = most_reduced(&Poset::chain(5));
        assert_eq!(w.reduced().n(), 1);
        assert_eq!(w.split().s(1), 5);
        assert_eq!(w.reconstruct(), Poset::chain(5));
    }

    #[test]
    fn diamond_is_already_reduced() {
        let w = most_reduced(&Poset::grid(2, 2));
        assert_eq!(w.reduced().n(), 4);
        assert!(w.reduced().elements().all(|x| w.split().s(x) == 1));
    }

    #[test]
    fn diamond_with_chains_reduces_to_diamond() {
        // diamond with bottom chain of length 2 and top chain of length 1:
        // w2 < w1 < x; x < a, x < b; a < y, b < y; y < z1
        let p = Poset::build(7, &[(1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 7)]).unwrap();
        let w = most_reduced(&p);
        assert_eq!(w.reduced().n(), 4);
        let s: Vec<usize> = w.reduced().elements().map(|x| w.split().s(x)).collect();
        let mut sorted = s.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 2, 3]); // min-side pipe s=3, max-side s=2
        assert_eq!(w.reconstruct(), p);
    }

    #[test]
    fn most_reduced_is_idempotent() {
        for p in [Poset::chain(6), Poset::grid(2, 3), Poset::grid(2, 2)] {
            let w = most_reduced(&p);
            let w2 = most_reduced(w.reduced());
            assert!(w2.reduced().elements().all(|x| w2.split().s(x) == 1));
        }
    }

    #[test]
    fn induced_coloring_identity_split() {
        let p = Poset::grid(3, 4);
        let w = most_reduced(&p); // grid has no pipes
        assert_eq!(w.reduced().n(), 12);
        let pair = CoverPair::from_covers(grid_row_cover(&p, 3, 4), grid_col_cover(&p, 3, 4));
        let induced = w.induce_pair(&pair).unwrap();
        assert_eq!(induced, pair);
    }

    #[test]
    fn induced_coloring_single_split_element() {
        // a single element with s = 3 becomes a 3-chain doubly covered
        let q = Poset::build(1, &[]).unwrap();
        let p3 = Poset::chain(3);
        let w = most_reduced(&p3);
        assert_eq!(w.reduced(), &q);
        let single = ChainCover::new(&q, &[vec![1]]).unwrap();
        let pair = CoverPair::from_covers(single.clone(), single);
        let induced = w.induce_pair(&pair).unwrap();
        assert_eq!(induced.first().chains(), &[vec![1, 2, 3]]);
        assert_eq!(induced.first(), induced.second());
    }

    #[test]
    fn induced_pair_through_corner_split_passes_nmu() {
        let g = Poset::grid(3, 4);
        // split corner 4: it is a side (not min or max) of its only diamond
        // {3, 4, 7, 8}, so a 2-chain split preserves the property
        let p = split_element(&g, 4, 2);
        let w = most_reduced(&p);
        assert_eq!(w.reconstruct(), p);
        assert_eq!(w.reduced().n(), 12);
        // the reduced poset is the grid again (up to the id ordering used here)
        let pair = CoverPair::from_covers(
            grid_row_cover(w.reduced(), 3, 4),
            grid_col_cover(w.reduced(), 3, 4),
        );
        let induced = w.induce_pair(&pair).unwrap();
        assert!(nmu_check(&p, &induced, Mode::ZeroOne).holds);
    }

    #[test]
    fn all_reductions_cover_compositions() {
        let p = Poset::chain(3);
        let rs = all_reductions(&p);
        // compositions of 3: (3), (2,1), (1,2), (1,1,1)
        assert_eq!(rs.len(), 4);
        assert_eq!(rs[0].reduced().n(), 1);
        assert_eq!(rs.last().unwrap().reduced().n(), 3);
        for r in &rs {
            assert_eq!(r.reconstruct(), p);
        }
    }
}
