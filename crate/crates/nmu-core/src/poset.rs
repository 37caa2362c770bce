//! Finite posets given by their Hasse diagram, with derived order relation,
//! convexity tests, diamond enumeration, and linear-extension machinery.
//!
//! Elements are dense integer ids `1..=n`. All order data is derived from the
//! cover relations at construction time; inputs containing transitively
//! implied covers are rejected rather than silently reduced.

use thiserror::Error;

/// Element id, `1..=n`.
pub type Element = usize;

/// A labeling of a poset: `values[e - 1]` is the label of element `e`.
pub type Labeling = Vec<i64>;

/// Bitmask subset of elements: bit `e - 1` set means element `e` is in the set.
pub type ElementSet = u64;

pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PosetError {
    #[error("element {0} out of range 1..={1}")]
    OutOfRange(Element, usize),
    #[error("cover ({0}, {1}) listed more than once")]
    DuplicateCover(Element, Element),
    #[error("cover digraph contains a cycle")]
    Cycle,
    #[error("cover ({0}, {1}) is transitively implied via {2}")]
    NotReduced(Element, Element, Element),
    #[error("poset has {0} elements, limit is {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("labeling is not a bijection onto 1..=n")]
    NotBijective,
}

/// A finite poset on elements `1..=n`, stored as its Hasse diagram plus the
/// derived reflexive-transitive order relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    covers: Vec<(Element, Element)>,
    /// `up[e-1]`: bitmask of f with e <= f (reflexive).
    up: Vec<ElementSet>,
    /// `down[e-1]`: bitmask of f with f <= e (reflexive).
    down: Vec<ElementSet>,
    upper: Vec<Vec<Element>>,
    lower: Vec<Vec<Element>>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers)
    }
}

pub fn bit(e: Element) -> ElementSet {
    1u64 << (e - 1)
}

pub fn set_of(elems: &[Element]) -> ElementSet {
    elems.iter().fold(0, |m, &e| m | bit(e))
}

pub fn elems_of(set: ElementSet) -> Vec<Element> {
    (1..=64).filter(|&e| set & bit(e) != 0).collect()
}

impl Poset {
    /// Build and validate a poset from cover relations.
    pub fn build(n: usize, covers: &[(Element, Element)]) -> Result<Poset, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let mut covers: Vec<(Element, Element)> = covers.to_vec();
        covers.sort_unstable();
        for w in covers.windows(2) {
            if w[0] == w[1] {
                return Err(PosetError::DuplicateCover(w[0].0, w[0].1));
            }
        }
        for &(u, v) in &covers {
            if u < 1 || u > n {
                return Err(PosetError::OutOfRange(u, n));
            }
            if v < 1 || v > n {
                return Err(PosetError::OutOfRange(v, n));
            }
            if u == v {
                return Err(PosetError::Cycle);
            }
        }
        let mut upper: Vec<Vec<Element>> = vec![Vec::new(); n];
        let mut lower: Vec<Vec<Element>> = vec![Vec::new(); n];
        for &(u, v) in &covers {
            upper[u - 1].push(v);
            lower[v - 1].push(u);
        }
        // Kahn topological sort to detect cycles.
        let mut indeg: Vec<usize> = (1..=n).map(|e| lower[e - 1].len()).collect();
        let mut queue: Vec<Element> = (1..=n).filter(|&e| indeg[e - 1] == 0).collect();
        let mut topo: Vec<Element> = Vec::with_capacity(n);
        while let Some(e) = queue.pop() {
            topo.push(e);
            for &f in &upper[e - 1] {
                indeg[f - 1] -= 1;
                if indeg[f - 1] == 0 {
                    queue.push(f);
                }
            }
        }
        if topo.len() != n {
            return Err(PosetError::Cycle);
        }
        // Reflexive-transitive closure, processing in reverse topological order.
        let mut up = vec![0u64; n];
        for &e in topo.iter().rev() {
            let mut m = bit(e);
            for &f in &upper[e - 1] {
                m |= up[f - 1];
            }
            up[e - 1] = m;
        }
        let mut down = vec![0u64; n];
        for e in 1..=n {
            for f in 1..=n {
                if up[f - 1] & bit(e) != 0 {
                    down[e - 1] |= bit(f);
                }
            }
        }
        // Reject covers that are transitively implied.
        for &(u, v) in &covers {
            for w in 1..=n {
                if w != u && w != v && up[u - 1] & bit(w) != 0 && up[w - 1] & bit(v) != 0 {
                    return Err(PosetError::NotReduced(u, v, w));
                }
            }
        }
        Ok(Poset {
            n,
            covers,
            up,
            down,
            upper,
            lower,
        })
    }

    /// The m-by-n grid poset (product of two chains), elements numbered
    /// row-major: element `(r-1)*cols + c` is cell (r, c).
    pub fn grid(rows: usize, cols: usize) -> Poset {
        let mut covers = Vec::new();
        let id = |r: usize, c: usize| (r - 1) * cols + c;
        for r in 1..=rows {
            for c in 1..=cols {
                if c < cols {
                    covers.push((id(r, c), id(r, c + 1)));
                }
                if r < rows {
                    covers.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Poset::build(rows * cols, &covers).expect("grid poset is valid")
    }

    /// An n-element chain 1 < 2 < ... < n.
    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|e| (e, e + 1)).collect();
        Poset::build(n, &covers).expect("chain poset is valid")
    }

    /// An n-element antichain.
    pub fn antichain(n: usize) -> Poset {
        Poset::build(n, &[]).expect("antichain poset is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<Element> {
        1..=self.n
    }

    pub fn all_mask(&self) -> ElementSet {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn covers(&self) -> &[(Element, Element)] {
        &self.covers
    }

    pub fn leq(&self, u: Element, v: Element) -> bool {
        self.up[u - 1] & bit(v) != 0
    }

    pub fn lt(&self, u: Element, v: Element) -> bool {
        u != v && self.leq(u, v)
    }

    pub fn is_cover(&self, u: Element, v: Element) -> bool {
        self.upper[u - 1].contains(&v)
    }

    pub fn upper_covers(&self, e: Element) -> &[Element] {
        &self.upper[e - 1]
    }

    pub fn lower_covers(&self, e: Element) -> &[Element] {
        &self.lower[e - 1]
    }

    /// Bitmask of elements f with e <= f (including e).
    pub fn up_mask(&self, e: Element) -> ElementSet {
        self.up[e - 1]
    }

    /// Bitmask of elements f with f <= e (including e).
    pub fn down_mask(&self, e: Element) -> ElementSet {
        self.down[e - 1]
    }

    /// True iff every element is covered by at most two elements and covers
    /// at most two elements.
    pub fn degree_bounds_ok(&self) -> bool {
        self.elements()
            .all(|e| self.upper[e - 1].len() <= 2 && self.lower[e - 1].len() <= 2)
    }

    /// True iff for all x, y in S and z with x < z < y, z is in S.
    pub fn is_convex(&self, s: ElementSet) -> bool {
        self.convexity_witness(s).is_none()
    }

    /// A triple (x, z, y) with x, y in S, x < z < y, z not in S, if one exists.
    pub fn convexity_witness(&self, s: ElementSet) -> Option<(Element, Element, Element)> {
        for z in self.elements() {
            if s & bit(z) != 0 {
                continue;
            }
            let below = self.down[z - 1] & !bit(z) & s;
            let above = self.up[z - 1] & !bit(z) & s;
            if below != 0 && above != 0 {
                let x = below.trailing_zeros() as usize + 1;
                let y = above.trailing_zeros() as usize + 1;
                return Some((x, z, y));
            }
        }
        None
    }

    /// Bitmasks of the connected components of the Hasse diagram, ordered by
    /// their smallest element.
    pub fn components(&self) -> Vec<ElementSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in self.elements() {
            if seen & bit(start) != 0 {
                continue;
            }
            let mut comp = 0u64;
            let mut stack = vec![start];
            while let Some(e) = stack.pop() {
                if comp & bit(e) != 0 {
                    continue;
                }
                comp |= bit(e);
                for &f in self.upper[e - 1].iter().chain(&self.lower[e - 1]) {
                    if comp & bit(f) == 0 {
                        stack.push(f);
                    }
                }
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subposet on the elements of `s`. Returns the subposet together
    /// with the original id of each new element (new id e corresponds to
    /// `ids[e - 1]`).
    pub fn induced(&self, s: ElementSet) -> (Poset, Vec<Element>) {
        let ids: Vec<Element> = self.elements().filter(|&e| s & bit(e) != 0).collect();
        let m = ids.len();
        let pos = |e: Element| ids.iter().position(|&x| x == e).unwrap() + 1;
        let mut covers = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let (u, v) = (ids[a], ids[b]);
                if !self.lt(u, v) {
                    continue;
                }
                // cover in the induced subposet: nothing of s strictly between
                let between = self.up[u - 1] & self.down[v - 1] & !bit(u) & !bit(v) & s;
                if between == 0 {
                    covers.push((pos(u), pos(v)));
                }
            }
        }
        let q = Poset::build(m, &covers).expect("induced subposet is valid");
        (q, ids)
    }

    /// Relabel the poset by a permutation: element e becomes `perm[e - 1]`.
    pub fn relabel(&self, perm: &[Element]) -> Poset {
        let covers: Vec<_> = self
            .covers
            .iter()
            .map(|&(u, v)| (perm[u - 1], perm[v - 1]))
            .collect();
        Poset::build(self.n, &covers).expect("relabeling preserves validity")
    }

    /// All saturated chains from x to y (inclusive), in lexicographic order.
    pub fn saturated_chains_between(&self, x: Element, y: Element) -> Vec<Vec<Element>> {
        let mut out = Vec::new();
        let mut path = vec![x];
        self.chains_dfs(y, &mut path, &mut out);
        out
    }

    fn chains_dfs(&self, y: Element, path: &mut Vec<Element>, out: &mut Vec<Vec<Element>>) {
        let cur = *path.last().unwrap();
        if cur == y {
            out.push(path.clone());
            return;
        }
        for &f in &self.upper[cur - 1] {
            if self.leq(f, y) {
                path.push(f);
                self.chains_dfs(y, path, out);
                path.pop();
            }
        }
    }

    /// All linear extensions as labelings by 1..=n, in a deterministic order
    /// (at each step the smallest available minimal element is tried first).
    pub fn linear_extensions(&self) -> Vec<Labeling> {
        let mut out = Vec::new();
        let mut lab = vec![0i64; self.n];
        self.ext_dfs(0u64, 1, &mut lab, &mut out);
        out
    }

    fn ext_dfs(&self, placed: ElementSet, rank: i64, lab: &mut Vec<i64>, out: &mut Vec<Labeling>) {
        if rank as usize > self.n {
            out.push(lab.clone());
            return;
        }
        for e in self.elements() {
            if placed & bit(e) != 0 {
                continue;
            }
            // e is minimal among unplaced iff everything strictly below is placed
            let below = self.down[e - 1] & !bit(e);
            if below & !placed != 0 {
                continue;
            }
            lab[e - 1] = rank;
            self.ext_dfs(placed | bit(e), rank + 1, lab, out);
            lab[e - 1] = 0;
        }
    }

    /// True iff the bijective labeling is order-preserving.
    pub fn is_linear_extension(&self, lab: &[i64]) -> Result<bool, PosetError> {
        if lab.len() != self.n {
            return Err(PosetError::NotBijective);
        }
        let mut seen = vec![false; self.n];
        for &v in lab {
            if v < 1 || v as usize > self.n || seen[v as usize - 1] {
                return Err(PosetError::NotBijective);
            }
            seen[v as usize - 1] = true;
        }
        Ok(self
            .covers
            .iter()
            .all(|&(u, v)| lab[u - 1] < lab[v - 1]))
    }
}

/// A diamond: two saturated chains from a common minimum to a common maximum,
/// intersecting only at the endpoints, whose union is convex. The attached
/// bottom and top chains (when present) satisfy the strict
/// "no other elements or relations" clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub min: Element,
    pub max: Element,
    /// Chain from min to max inclusive; lexicographically smaller of the two.
    pub chain_a: Vec<Element>,
    pub chain_b: Vec<Element>,
    /// Chain strictly below `min`, ascending; its last element is covered by `min`.
    pub bottom: Vec<Element>,
    /// Chain strictly above `max`, ascending; its first element covers `max`.
    pub top: Vec<Element>,
}

impl Diamond {
    pub fn element_set(&self) -> ElementSet {
        set_of(&self.chain_a) | set_of(&self.chain_b)
    }

    pub fn full_set(&self) -> ElementSet {
        self.element_set() | set_of(&self.bottom) | set_of(&self.top)
    }
}

/// Enumerate all diamonds of `p`, each reported once per unordered chain pair.
/// With `four_element_only`, restrict to diamonds {w < x, y < z} of exactly
/// four elements.
pub fn find_diamonds(p: &Poset, four_element_only: bool) -> Vec<Diamond> {
    let mut out = Vec::new();
    for x in p.elements() {
        for y in p.elements() {
            if !p.lt(x, y) {
                continue;
            }
            let chains = p.saturated_chains_between(x, y);
            for i in 0..chains.len() {
                for j in (i + 1)..chains.len() {
                    let (a, b) = (&chains[i], &chains[j]);
                    let sa = set_of(a);
                    let sb = set_of(b);
                    if sa & sb != bit(x) | bit(y) {
                        continue;
                    }
                    if four_element_only && (a.len() != 3 || b.len() != 3) {
                        continue;
                    }
                    if !p.is_convex(sa | sb) {
                        continue;
                    }
                    let mut diamond_edges: Vec<(Element, Element)> = Vec::new();
                    for c in [a, b] {
                        for w in c.windows(2) {
                            let e = (w[0], w[1]);
                            if !diamond_edges.contains(&e) {
                                diamond_edges.push(e);
                            }
                        }
                    }
                    let (bottom, top) = attached_chains(p, &diamond_edges, sa | sb, x, y);
                    out.push(Diamond {
                        min: x,
                        max: y,
                        chain_a: a.clone(),
                        chain_b: b.clone(),
                        bottom,
                        top,
                    });
                }
            }
        }
    }
    out
}

/// Maximal bottom and top chains attached to a diamond so that the whole
/// configuration is convex and its induced covers are exactly the diamond,
/// chain, and attachment edges ("no other elements or relations").
fn attached_chains(
    p: &Poset,
    diamond_edges: &[(Element, Element)],
    dset: ElementSet,
    x: Element,
    y: Element,
) -> (Vec<Element>, Vec<Element>) {
    let bottom = best_attached(p, diamond_edges, dset, x, y, false, &[]);
    let top = best_attached(p, diamond_edges, dset, x, y, true, &bottom);
    let bottom = best_attached(p, diamond_edges, dset, x, y, false, &top);
    (bottom, top)
}

fn best_attached(
    p: &Poset,
    diamond_edges: &[(Element, Element)],
    dset: ElementSet,
    x: Element,
    y: Element,
    upward: bool,
    other: &[Element],
) -> Vec<Element> {
    let mut best: Vec<Element> = Vec::new();
    let mut path: Vec<Element> = Vec::new();
    let anchor = if upward { y } else { x };
    attach_dfs(
        p, diamond_edges, dset, x, y, anchor, upward, other, &mut path, &mut best,
    );
    if upward {
        best
    } else {
        best.reverse();
        best
    }
}

#[allow(clippy::too_many_arguments)]
fn attach_dfs(
    p: &Poset,
    diamond_edges: &[(Element, Element)],
    dset: ElementSet,
    x: Element,
    y: Element,
    cur: Element,
    upward: bool,
    other: &[Element],
    path: &mut Vec<Element>,
    best: &mut Vec<Element>,
) {
    let next: Vec<Element> = if upward {
        p.upper_covers(cur).to_vec()
    } else {
        p.lower_covers(cur).to_vec()
    };
    for f in next {
        if (dset | set_of(path) | set_of(other)) & bit(f) != 0 {
            continue;
        }
        path.push(f);
        let (bottom, top) = if upward {
            // the upward path is already ascending
            (other.to_vec(), path.clone())
        } else {
            (
                {
                    let mut b = path.clone();
                    b.reverse();
                    b
                },
                other.to_vec(),
            )
        };
        if config_ok(p, diamond_edges, dset, x, y, &bottom, &top) {
            if path.len() > best.len() {
                *best = path.clone();
            }
            attach_dfs(
                p, diamond_edges, dset, x, y, f, upward, other, path, best,
            );
        }
        path.pop();
    }
}

/// The configuration diamond + bottom + top is convex and its induced covers
/// are exactly the stated edges.
fn config_ok(
    p: &Poset,
    diamond_edges: &[(Element, Element)],
    dset: ElementSet,
    x: Element,
    y: Element,
    bottom: &[Element],
    top: &[Element],
) -> bool {
    let full = dset | set_of(bottom) | set_of(top);
    if !p.is_convex(full) {
        return false;
    }
    let mut expected: Vec<(Element, Element)> = diamond_edges.to_vec();
    for w in bottom.windows(2) {
        expected.push((w[0], w[1]));
    }
    if let Some(&last) = bottom.last() {
        expected.push((last, x));
    }
    if let Some(&first) = top.first() {
        expected.push((y, first));
    }
    for w in top.windows(2) {
        expected.push((w[0], w[1]));
    }
    expected.sort_unstable();
    // convexity of `full` makes the induced covers exactly the ambient covers
    // with both endpoints inside
    let mut actual: Vec<(Element, Element)> = p
        .covers()
        .iter()
        .copied()
        .filter(|&(u, v)| full & bit(u) != 0 && full & bit(v) != 0)
        .collect();
    actual.sort_unstable();
    expected == actual
}
