//! The geometric lattice of flats, its opposite, modularity tests, and
//! order-isomorphism search on finite bounded posets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matroid::{Flat, Matroid, SubsetMask};

/// Cap on poset size for the quadratic predicates below.
pub const POSET_CAP: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    fn new(n: usize) -> Self {
        BitRow { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &BitRow) -> BitRow {
        BitRow { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }
}

/// A finite bounded poset with precomputed order, covers, and heights.
/// Flat lattices, opposite lattices, and extension lattices all reduce to
/// this table.
#[derive(Debug, Clone)]
pub struct Poset {
    n: usize,
    up: Vec<BitRow>,
    down: Vec<BitRow>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    height: Vec<usize>,
    labels: Vec<String>,
}

impl Poset {
    /// Builds the full order table from a reflexive comparison. Fails when
    /// the poset has no unique bottom or top.
    pub fn from_leq<F: Fn(usize, usize) -> bool>(
        n: usize,
        labels: Vec<String>,
        leq: F,
    ) -> Result<Poset> {
        if n == 0 {
            return Err(Error::Invalid("poset must be nonempty".into()));
        }
        if n > POSET_CAP {
            return Err(Error::Resource(format!("poset of {n} elements exceeds {POSET_CAP}")));
        }
        let mut up = vec![BitRow::new(n); n];
        let mut down = vec![BitRow::new(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.set(j);
                }
            }
        }
        for (j, row) in down.iter_mut().enumerate() {
            for i in 0..n {
                if leq(i, j) {
                    row.set(i);
                }
            }
        }
        let bottom = (0..n)
            .find(|&i| up[i].count() == n)
            .ok_or_else(|| Error::Invalid("poset has no bottom element".into()))?;
        let top = (0..n)
            .find(|&i| down[i].count() == n)
            .ok_or_else(|| Error::Invalid("poset has no top element".into()))?;
        let mut covers_up = vec![Vec::new(); n];
        let mut covers_down = vec![Vec::new(); n];
        for i in 0..n {
            for j in up[i].iter() {
                if j == i {
                    continue;
                }
                // j covers i iff nothing sits strictly between them
                let mut between = up[i].and(&down[j]);
                between.words[i / 64] &= !(1u64 << (i % 64));
                between.words[j / 64] &= !(1u64 << (j % 64));
                if between.count() == 0 {
                    covers_up[i].push(j);
                    covers_down[j].push(i);
                }
            }
        }
        // longest chain from the bottom, relaxed over covers
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&i| down[i].count());
        let mut height = vec![0usize; n];
        for &i in &order {
            for &j in &covers_up[i] {
                height[j] = height[j].max(height[i] + 1);
            }
        }
        Ok(Poset { n, up, down, covers_up, covers_down, bottom, top, height, labels })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn atoms(&self) -> &[usize] {
        &self.covers_up[self.bottom]
    }

    pub fn coatoms(&self) -> &[usize] {
        &self.covers_down[self.top]
    }

    pub fn covers_above(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    pub fn covers_below(&self, i: usize) -> &[usize] {
        &self.covers_down[i]
    }

    /// All cover pairs (lower, upper) in index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for &j in &self.covers_up[i] {
                pairs.push((i, j));
            }
        }
        pairs
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let common = self.down[i].and(&self.down[j]);
        let cand = common.iter().max_by_key(|&k| self.down[k].count())?;
        if self.down[cand] == common { Some(cand) } else { None }
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let common = self.up[i].and(&self.up[j]);
        let cand = common.iter().max_by_key(|&k| self.up[k].count())?;
        if self.up[cand] == common { Some(cand) } else { None }
    }

    /// The same elements with the order reversed; meet and join swap.
    pub fn opposite(&self) -> Poset {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_unstable_by_key(|&i| self.up[i].count());
        let mut height = vec![0usize; self.n];
        for &i in &order {
            for &j in &self.covers_down[i] {
                height[j] = height[j].max(height[i] + 1);
            }
        }
        Poset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
            covers_up: self.covers_down.clone(),
            covers_down: self.covers_up.clone(),
            bottom: self.top,
            top: self.bottom,
            height,
            labels: self.labels.clone(),
        }
    }
}

/// Why a poset failed the geometric-lattice test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometricViolation {
    /// A pair with no meet or join.
    NotLattice { x: usize, y: usize },
    /// A cover step that does not raise the height by one.
    NotGraded { lower: usize, upper: usize },
    /// An element that is not the join of the atoms below it.
    NotAtomic { element: usize },
    /// A pair violating "x covers x^y implies xvy covers y".
    NotSemimodular { x: usize, y: usize },
}

/// Tests graded + atomic + semimodular; `Err` carries the first witness.
pub fn is_geometric(p: &Poset) -> std::result::Result<(), GeometricViolation> {
    for (i, j) in p.cover_pairs() {
        if p.height(j) != p.height(i) + 1 {
            return Err(GeometricViolation::NotGraded { lower: i, upper: j });
        }
    }
    for x in 0..p.len() {
        let atoms_below: Vec<usize> =
            p.atoms().iter().copied().filter(|&a| p.leq(a, x)).collect();
        let mut join = p.bottom();
        for a in atoms_below {
            match p.join(join, a) {
                Some(j) => join = j,
                None => return Err(GeometricViolation::NotLattice { x: join, y: a }),
            }
        }
        if join != x {
            return Err(GeometricViolation::NotAtomic { element: x });
        }
    }
    for x in 0..p.len() {
        for y in 0..p.len() {
            let Some(meet) = p.meet(x, y) else {
                return Err(GeometricViolation::NotLattice { x, y });
            };
            let Some(join) = p.join(x, y) else {
                return Err(GeometricViolation::NotLattice { x, y });
            };
            if p.covers_above(meet).contains(&x) && !p.covers_above(y).contains(&join) {
                return Err(GeometricViolation::NotSemimodular { x, y });
            }
        }
    }
    Ok(())
}

/// The lattice of all flats of a simple matroid, ordered by inclusion.
#[derive(Debug, Clone)]
pub struct FlatLattice {
    flats: Vec<Flat>,
    index_of: HashMap<u32, usize>,
    matroid_rank: usize,
    poset: Poset,
}

fn flat_label(f: &Flat, m: usize) -> String {
    let mut bits = String::with_capacity(m);
    for e in 0..m {
        bits.push(if f.mask.contains(e) { '1' } else { '0' });
    }
    format!("{}:{}", f.rank, bits)
}

/// Builds the flat lattice of a simple matroid and verifies that meet is
/// intersection and join is the closure of the union. For ground sets of
/// at most 12 elements the geometric-lattice axioms are also checked.
pub fn build_lattice(m: &Matroid) -> Result<FlatLattice> {
    if !m.is_simple() {
        return Err(Error::NotSimple("simplify the matroid before building its flat lattice".into()));
    }
    let flats: Vec<Flat> = m.flats_by_rank().iter().flatten().copied().collect();
    if flats.len() > POSET_CAP {
        return Err(Error::Resource(format!("{} flats exceed the poset cap", flats.len())));
    }
    let labels = flats.iter().map(|f| flat_label(f, m.size())).collect();
    let poset = Poset::from_leq(flats.len(), labels, |i, j| {
        flats[i].mask.is_subset_of(flats[j].mask)
    })?;
    let index_of: HashMap<u32, usize> =
        flats.iter().enumerate().map(|(i, f)| (f.mask.bits(), i)).collect();
    for i in 0..flats.len() {
        for j in 0..flats.len() {
            let meet_mask = flats[i].mask.intersect(flats[j].mask);
            let meet_idx = *index_of.get(&meet_mask.bits()).ok_or_else(|| {
                Error::Internal(format!("intersection of flats {meet_mask} is not a flat"))
            })?;
            if poset.meet(i, j) != Some(meet_idx) {
                return Err(Error::Internal(format!(
                    "lattice meet disagrees with intersection at ({i},{j})"
                )));
            }
            let join_mask = m.closure(flats[i].mask.union(flats[j].mask)).mask;
            let join_idx = index_of[&join_mask.bits()];
            if poset.join(i, j) != Some(join_idx) {
                return Err(Error::Internal(format!(
                    "lattice join disagrees with closure at ({i},{j})"
                )));
            }
        }
    }
    if m.size() <= 12 {
        if let Err(v) = is_geometric(&poset) {
            return Err(Error::Internal(format!(
                "flat lattice is not geometric: {v:?}"
            )));
        }
    }
    Ok(FlatLattice { flats, index_of, matroid_rank: m.rank(), poset })
}

impl FlatLattice {
    #[inline]
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    #[inline]
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    #[inline]
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    #[inline]
    pub fn matroid_rank(&self) -> usize {
        self.matroid_rank
    }

    pub fn index_of(&self, mask: SubsetMask) -> Option<usize> {
        self.index_of.get(&mask.bits()).copied()
    }

    pub fn opposite(&self) -> OppositeLattice {
        OppositeLattice { flats: self.flats.clone(), poset: self.poset.opposite() }
    }
}

/// The flat lattice with its order reversed; the atoms are the
/// hyperplanes of the underlying matroid.
#[derive(Debug, Clone)]
pub struct OppositeLattice {
    flats: Vec<Flat>,
    poset: Poset,
}

impl OppositeLattice {
    #[inline]
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    #[inline]
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Reversing twice restores the original order table.
    pub fn opposite(&self) -> Poset {
        self.poset.opposite()
    }
}

/// Modular pair test on flats: rank(X v Y) + rank(X ^ Y) = rank(X) + rank(Y).
pub fn is_modular_pair(m: &Matroid, x: &Flat, y: &Flat) -> bool {
    let join = m.rank_of(x.mask.union(y.mask));
    let meet = m.rank_of(x.mask.intersect(y.mask));
    join + meet == x.rank + y.rank
}

/// Pairwise modularity over all flats, cross-checked against the
/// hyperplane count criterion |H(M)| = |E(M)| for simple matroids. A
/// disagreement between the two tests is a hard internal error.
pub fn is_modular(m: &Matroid) -> Result<bool> {
    if !m.is_simple() {
        return Err(Error::NotSimple("modularity test expects a simple matroid".into()));
    }
    let flats: Vec<Flat> = m.flats_by_rank().iter().flatten().copied().collect();
    let mut pairwise = true;
    'outer: for (i, x) in flats.iter().enumerate() {
        for y in &flats[i + 1..] {
            if !is_modular_pair(m, x, y) {
                pairwise = false;
                break 'outer;
            }
        }
    }
    let by_count = m.hyperplanes().len() == m.size();
    if pairwise != by_count {
        return Err(Error::Internal(format!(
            "modularity tests disagree: pairwise={pairwise}, |H|=|E| gives {by_count}"
        )));
    }
    Ok(pairwise)
}

type Profile = (usize, usize, usize, usize, usize);

fn profile(p: &Poset, i: usize) -> Profile {
    (
        p.height(i),
        p.covers_above(i).len(),
        p.covers_below(i).len(),
        p.up[i].count(),
        p.down[i].count(),
    )
}

struct IsoSearch<'a> {
    a: &'a Poset,
    b: &'a Poset,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl IsoSearch<'_> {
    fn backtrack(&self, depth: usize, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for &y in &self.candidates[x] {
            if used[y] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&prev| {
                self.a.leq(prev, x) == self.b.leq(image[prev], y)
                    && self.a.leq(x, prev) == self.b.leq(y, image[prev])
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if self.backtrack(depth + 1, image, used) {
                return true;
            }
            image[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
}

/// Order-preserving bijection between two posets, or `None`. The search
/// prunes on per-element (height, cover degree, up-set/down-set size)
/// profiles, rarest first.
pub fn lattice_iso(a: &Poset, b: &Poset) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let mut class_of: HashMap<Profile, Vec<usize>> = HashMap::new();
    for j in 0..n {
        class_of.entry(profile(b, j)).or_default().push(j);
    }
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        candidates.push(class_of.get(&profile(a, i))?.clone());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&i| (candidates[i].len(), i));
    let search = IsoSearch { a, b, order, candidates };
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search.backtrack(0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}
