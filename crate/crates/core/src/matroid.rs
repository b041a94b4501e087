//! Matroid construction and the standard derived objects: rank, closure,
//! flats, hyperplanes, circuits, cocircuits, duals, direct sums,
//! simplification, and connectivity.
//!
//! A matroid is backed either by a column matrix over GF(p) (the vector
//! matroid of the columns) or by an explicit basis list validated against
//! the exchange axiom. Ground sets are capped at [`GROUND_CAP`] elements
//! because flat and circuit enumeration are exponential.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::MatrixF;

/// Enumeration cap on the ground-set size.
pub const GROUND_CAP: usize = 20;

/// A ground set of `m` labeled elements 0..m-1, optionally with display
/// names.
#[derive(Debug, Clone)]
pub struct GroundSet {
    m: usize,
    names: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(m: usize) -> Result<Self> {
        if m > GROUND_CAP {
            return Err(Error::Resource(format!(
                "ground set of {m} elements exceeds the cap of {GROUND_CAP}"
            )));
        }
        Ok(GroundSet { m, names: None })
    }

    pub fn with_names(m: usize, names: Vec<String>) -> Result<Self> {
        let mut g = GroundSet::new(m)?;
        if names.len() != m {
            return Err(Error::Dimension(format!(
                "{} names for {m} elements",
                names.len()
            )));
        }
        g.names = Some(names);
        Ok(g)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn name(&self, e: usize) -> String {
        match &self.names {
            Some(names) => names[e].clone(),
            None => e.to_string(),
        }
    }
}

/// A fixed-width bit vector over a ground set; bit i is element i.
///
/// Masks order by their numeric value, which is the canonical order used
/// for all enumerated families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask {
    bits: u32,
}

impl SubsetMask {
    #[inline]
    pub const fn empty() -> Self {
        SubsetMask { bits: 0 }
    }

    #[inline]
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= 32);
        SubsetMask { bits: if m == 32 { u32::MAX } else { (1u32 << m) - 1 } }
    }

    #[inline]
    pub fn singleton(e: usize) -> Self {
        SubsetMask { bits: 1u32 << e }
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let mut bits = 0u32;
        for &i in indices {
            bits |= 1 << i;
        }
        SubsetMask { bits }
    }

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask { bits }
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.bits >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        SubsetMask { bits: self.bits | 1 << e }
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        SubsetMask { bits: self.bits & !(1 << e) }
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask { bits: self.bits | other.bits }
    }

    #[inline]
    pub fn intersect(self, other: Self) -> Self {
        SubsetMask { bits: self.bits & other.bits }
    }

    #[inline]
    pub fn minus(self, other: Self) -> Self {
        SubsetMask { bits: self.bits & !other.bits }
    }

    #[inline]
    pub fn complement(self, m: usize) -> Self {
        SubsetMask { bits: !self.bits & SubsetMask::full(m).bits }
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.bits >> i & 1 == 1)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `full(m)` with exactly `k` elements, in increasing
    /// mask order (Gosper's hack).
    pub fn subsets_of_size(m: usize, k: usize) -> impl Iterator<Item = SubsetMask> {
        let limit = SubsetMask::full(m).bits;
        let mut cur = if k == 0 { Some(0u32) } else { Some((1u32 << k) - 1) };
        std::iter::from_fn(move || {
            let v = cur?;
            if v > limit {
                cur = None;
                return None;
            }
            if v == 0 {
                cur = None;
                return Some(SubsetMask::empty());
            }
            let c = v & v.wrapping_neg();
            let r = v + c;
            cur = if r == 0 { None } else { Some((((r ^ v) >> 2) / c) | r) };
            Some(SubsetMask { bits: v })
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// A closed set together with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    pub mask: SubsetMask,
    pub rank: usize,
}

#[derive(Debug, Clone)]
enum Backend {
    Linear(MatrixF),
    Bases(Vec<SubsetMask>),
}

/// A matroid on a labeled ground set, with cached derived objects.
///
/// Immutable after construction; caches are write-once, so concurrent
/// readers always observe a consistent value.
#[derive(Debug, Clone)]
pub struct Matroid {
    ground: GroundSet,
    backend: Backend,
    rank: usize,
    loops: SubsetMask,
    circuits_cache: OnceLock<Vec<SubsetMask>>,
    flats_cache: OnceLock<Vec<Vec<Flat>>>,
}

impl Matroid {
    /// The vector matroid M[A]: element i is column i. If A does not have
    /// full row rank its rows are replaced by the nonzero rows of the
    /// reduced echelon form, so row count always equals the rank (rank-0
    /// matrices keep a single zero row).
    pub fn from_matrix(a: MatrixF) -> Result<Matroid> {
        let ground = GroundSet::new(a.cols())?;
        let ech = a.rref();
        let rank = ech.rank;
        let matrix = if rank == a.rows() {
            ech.matrix
        } else {
            let keep = rank.max(1);
            let mut data = Vec::with_capacity(keep * a.cols());
            for c in 0..a.cols() {
                data.extend_from_slice(&ech.matrix.column(c)[..keep]);
            }
            MatrixF::new(a.modulus(), keep, a.cols(), data)?
        };
        let loops = SubsetMask::from_indices(
            &(0..matrix.cols())
                .filter(|&c| matrix.column(c).iter().all(|&v| v == 0))
                .collect::<Vec<_>>(),
        );
        Ok(Matroid {
            ground,
            backend: Backend::Linear(matrix),
            rank,
            loops,
            circuits_cache: OnceLock::new(),
            flats_cache: OnceLock::new(),
        })
    }

    /// A matroid from an explicit basis family. The exchange axiom is
    /// verified over all ordered pairs; the first violating pair is
    /// reported on failure.
    pub fn from_bases(m: usize, bases: Vec<SubsetMask>) -> Result<Matroid> {
        let ground = GroundSet::new(m)?;
        Self::validate_bases(m, &bases)?;
        Ok(Self::assemble_from_bases(ground, bases))
    }

    /// Construction path for basis families already known to satisfy
    /// exchange (duals, direct sums, verified derived matroids).
    pub(crate) fn from_bases_unchecked(ground: GroundSet, bases: Vec<SubsetMask>) -> Matroid {
        debug_assert!(Self::validate_bases(ground.size(), &bases).is_ok());
        Self::assemble_from_bases(ground, bases)
    }

    fn validate_bases(m: usize, bases: &[SubsetMask]) -> Result<()> {
        let Some(first) = bases.first() else {
            return Err(Error::Invalid("basis list must be nonempty".into()));
        };
        let full = SubsetMask::full(m);
        let size = first.len();
        for b in bases {
            if !b.is_subset_of(full) {
                return Err(Error::Invalid(format!("basis {b} is not within the ground set")));
            }
            if b.len() != size {
                return Err(Error::Invalid(format!(
                    "bases must share one cardinality: {first} vs {b}"
                )));
            }
        }
        let set: std::collections::HashSet<u32> = bases.iter().map(|b| b.bits()).collect();
        for &b1 in bases {
            for &b2 in bases {
                for e in b1.minus(b2).iter() {
                    let stem = b1.without(e);
                    let ok = b2
                        .minus(b1)
                        .iter()
                        .any(|f| set.contains(&stem.with(f).bits()));
                    if !ok {
                        return Err(Error::NotMatroid(b1, b2));
                    }
                }
            }
        }
        Ok(())
    }

    fn assemble_from_bases(ground: GroundSet, mut bases: Vec<SubsetMask>) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].len();
        let m = ground.size();
        let covered = bases.iter().fold(SubsetMask::empty(), |acc, b| acc.union(*b));
        let loops = covered.complement(m);
        Matroid {
            ground,
            backend: Backend::Bases(bases),
            rank,
            loops,
            circuits_cache: OnceLock::new(),
            flats_cache: OnceLock::new(),
        }
    }

    #[inline]
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.ground.size()
    }

    /// Rank of the whole ground set.
    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.size())
    }

    #[inline]
    pub fn loops(&self) -> SubsetMask {
        self.loops
    }

    /// The representing matrix, when this matroid is linear.
    pub fn matrix(&self) -> Option<&MatrixF> {
        match &self.backend {
            Backend::Linear(a) => Some(a),
            Backend::Bases(_) => None,
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.backend, Backend::Linear(_))
    }

    /// Rank of a subset of the ground set.
    pub fn rank_of(&self, s: SubsetMask) -> usize {
        debug_assert!(s.is_subset_of(self.full_mask()));
        match &self.backend {
            Backend::Linear(a) => a.subset_rank(&s.indices()),
            Backend::Bases(bases) => {
                bases.iter().map(|b| b.intersect(s).len()).max().unwrap_or(0)
            }
        }
    }

    #[inline]
    pub fn is_independent(&self, s: SubsetMask) -> bool {
        self.rank_of(s) == s.len()
    }

    #[inline]
    pub fn is_basis(&self, s: SubsetMask) -> bool {
        s.len() == self.rank && self.is_independent(s)
    }

    /// The closure { e : rank(S + e) = rank(S) }; extensive, monotone, and
    /// idempotent.
    pub fn closure(&self, s: SubsetMask) -> Flat {
        let r = self.rank_of(s);
        let mut mask = s;
        for e in 0..self.size() {
            if !mask.contains(e) && self.rank_of(s.with(e)) == r {
                mask = mask.with(e);
            }
        }
        Flat { mask, rank: r }
    }

    /// All flats grouped by rank: layer k holds every rank-k flat in
    /// canonical mask order. Layer 0 is the closure of the empty set and
    /// layer rank(M) is the full ground set.
    pub fn flats_by_rank(&self) -> &Vec<Vec<Flat>> {
        self.flats_cache.get_or_init(|| {
            let mut layers: Vec<Vec<Flat>> = Vec::with_capacity(self.rank + 1);
            layers.push(vec![self.closure(SubsetMask::empty())]);
            for k in 0..self.rank {
                let mut next: Vec<SubsetMask> = Vec::new();
                for flat in &layers[k] {
                    for e in 0..self.size() {
                        if flat.mask.contains(e) {
                            continue;
                        }
                        next.push(self.closure(flat.mask.with(e)).mask);
                    }
                }
                next.sort_unstable();
                next.dedup();
                layers.push(next.into_iter().map(|mask| Flat { mask, rank: k + 1 }).collect());
            }
            layers
        })
    }

    /// The rank-(r-1) flats in canonical mask order.
    pub fn hyperplanes(&self) -> &[Flat] {
        if self.rank == 0 {
            return &[];
        }
        &self.flats_by_rank()[self.rank - 1]
    }

    /// All minimal dependent sets, by increasing size then mask order.
    pub fn circuits(&self) -> &[SubsetMask] {
        self.circuits_cache.get_or_init(|| {
            let mut circuits: Vec<SubsetMask> = Vec::new();
            // every (rank+1)-subset is dependent, so circuits are no larger
            for k in 1..=self.rank + 1 {
                if k > self.size() {
                    break;
                }
                for s in SubsetMask::subsets_of_size(self.size(), k) {
                    if circuits.iter().any(|c| c.is_subset_of(s)) {
                        continue;
                    }
                    if self.rank_of(s) < k {
                        circuits.push(s);
                    }
                }
            }
            circuits.sort_unstable_by_key(|c| (c.len(), *c));
            circuits
        })
    }

    /// Complements of the hyperplanes, in hyperplane order.
    pub fn cocircuits(&self) -> Vec<SubsetMask> {
        let m = self.size();
        self.hyperplanes().iter().map(|h| h.mask.complement(m)).collect()
    }

    /// All bases, in canonical mask order.
    pub fn bases(&self) -> Vec<SubsetMask> {
        match &self.backend {
            Backend::Bases(bases) => bases.clone(),
            Backend::Linear(_) => {
                SubsetMask::subsets_of_size(self.size(), self.rank)
                    .filter(|&s| self.is_independent(s))
                    .collect()
            }
        }
    }

    /// The dual matroid on the same labels. Linear matroids dualize via
    /// the kernel matrix of their representation; basis-backed matroids
    /// via basis complements.
    pub fn dual(&self) -> Matroid {
        match &self.backend {
            Backend::Linear(a) => {
                let kernel = a.kernel_basis();
                let p = a.modulus();
                let m = self.size();
                let matrix = if kernel.is_empty() {
                    MatrixF::zeros(p, 1, m)
                } else {
                    // rows of the dual representation = kernel basis of A
                    let mut data = Vec::with_capacity(kernel.len() * m);
                    for c in 0..m {
                        for v in &kernel {
                            data.push(v.entries()[c]);
                        }
                    }
                    MatrixF::new(p, kernel.len(), m, data).expect("kernel matrix is well formed")
                };
                Matroid::from_matrix(matrix).expect("dual stays within the ground cap")
            }
            Backend::Bases(bases) => {
                let m = self.size();
                let co: Vec<SubsetMask> = bases.iter().map(|b| b.complement(m)).collect();
                Matroid::from_bases_unchecked(GroundSet::new(m).unwrap(), co)
            }
        }
    }

    /// Direct sum; the second summand's elements are shifted past the
    /// first. rank(S) = rank(S n E1) + rank(S n E2).
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let m = self.size() + other.size();
        if m > GROUND_CAP {
            return Err(Error::Resource(format!(
                "direct sum has {m} elements, cap is {GROUND_CAP}"
            )));
        }
        let ground = GroundSet::new(m)?;
        match (&self.backend, &other.backend) {
            (Backend::Linear(a), Backend::Linear(b)) if a.modulus() == b.modulus() => {
                let rows = a.rows() + b.rows();
                let mut cols: Vec<Vec<u8>> = Vec::with_capacity(m);
                for c in 0..a.cols() {
                    let mut col = a.column(c).to_vec();
                    col.extend(std::iter::repeat_n(0, b.rows()));
                    cols.push(col);
                }
                for c in 0..b.cols() {
                    let mut col = vec![0u8; a.rows()];
                    col.extend_from_slice(b.column(c));
                    cols.push(col);
                }
                let matrix = MatrixF::from_columns(a.modulus(), rows, &cols)?;
                Matroid::from_matrix(matrix)
            }
            _ => {
                let shift = self.size();
                let mut bases = Vec::new();
                for b1 in self.bases() {
                    for b2 in other.bases() {
                        bases.push(SubsetMask::from_bits(b1.bits() | b2.bits() << shift));
                    }
                }
                Ok(Matroid::from_bases_unchecked(ground, bases))
            }
        }
    }

    /// Restriction to the elements of `keep`, relabeled 0..keep.len()-1 in
    /// increasing order. Returns the matroid and the old-to-new map.
    pub(crate) fn restrict(&self, keep: SubsetMask) -> (Matroid, Vec<Option<usize>>) {
        let kept = keep.indices();
        let mut map = vec![None; self.size()];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = Some(new);
        }
        let restricted = match &self.backend {
            Backend::Linear(a) => {
                let sub = a.select_columns(&kept);
                Matroid::from_matrix(sub).expect("restriction stays within caps")
            }
            Backend::Bases(bases) => {
                let r = self.rank_of(keep);
                let mut sub: Vec<SubsetMask> = bases
                    .iter()
                    .map(|b| b.intersect(keep))
                    .filter(|s| s.len() == r)
                    .map(|s| {
                        let mut bits = 0u32;
                        for e in s.iter() {
                            bits |= 1 << map[e].unwrap();
                        }
                        SubsetMask::from_bits(bits)
                    })
                    .collect();
                sub.sort_unstable();
                sub.dedup();
                Matroid::from_bases_unchecked(GroundSet::new(kept.len()).unwrap(), sub)
            }
        };
        (restricted, map)
    }

    /// Removes loops and keeps the least-index representative of every
    /// parallel class. The returned map sends old elements to new ones
    /// (loops to None).
    pub fn simplify(&self) -> (Matroid, Vec<Option<usize>>) {
        let mut keep = SubsetMask::empty();
        for e in 0..self.size() {
            if self.loops.contains(e) {
                continue;
            }
            let parallel_to_earlier = keep
                .iter()
                .any(|f| self.rank_of(SubsetMask::from_indices(&[e, f])) == 1);
            if !parallel_to_earlier {
                keep = keep.with(e);
            }
        }
        let (simple, map_keep) = self.restrict(keep);
        // loops map to None; parallel elements map to their representative
        let mut map = vec![None; self.size()];
        for e in 0..self.size() {
            if self.loops.contains(e) {
                continue;
            }
            if let Some(n) = map_keep[e] {
                map[e] = Some(n);
            } else {
                let rep = keep
                    .iter()
                    .find(|&f| self.rank_of(SubsetMask::from_indices(&[e, f])) == 1)
                    .expect("every nonloop has a kept representative");
                map[e] = map_keep[rep];
            }
        }
        (simple, map)
    }

    pub fn is_simple(&self) -> bool {
        if !self.loops.is_empty() {
            return false;
        }
        for e in 0..self.size() {
            for f in e + 1..self.size() {
                if self.rank_of(SubsetMask::from_indices(&[e, f])) < 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components of the nonloop elements: the transitive
    /// closure of "share a circuit". Coloops are singleton components.
    pub fn components(&self) -> Vec<SubsetMask> {
        let m = self.size();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for c in self.circuits() {
            let mut it = c.iter();
            if let Some(first) = it.next() {
                for e in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, e));
                    parent[a] = b;
                }
            }
        }
        let mut comps: Vec<SubsetMask> = Vec::new();
        let mut root_of: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for e in 0..m {
            if self.loops.contains(e) {
                continue;
            }
            let r = find(&mut parent, e);
            match root_of.get(&r) {
                Some(&i) => comps[i] = comps[i].with(e),
                None => {
                    root_of.insert(r, comps.len());
                    comps.push(SubsetMask::singleton(e));
                }
            }
        }
        comps.sort_unstable();
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.loops.is_empty() && self.components().len() == 1
    }

    /// The same matroid with element e renamed perm[e].
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.size(), "permutation must cover the ground set");
        let remap = |s: SubsetMask| {
            let mut out = SubsetMask::empty();
            for e in s.iter() {
                out = out.with(perm[e]);
            }
            out
        };
        match &self.backend {
            Backend::Linear(a) => {
                let mut new_to_old = vec![0usize; self.size()];
                for (old, &new) in perm.iter().enumerate() {
                    new_to_old[new] = old;
                }
                Matroid::from_matrix(a.select_columns(&new_to_old))
                    .expect("relabeling preserves validity")
            }
            Backend::Bases(bases) => {
                let new_bases: Vec<SubsetMask> = bases.iter().map(|&b| remap(b)).collect();
                Matroid::from_bases_unchecked(
                    GroundSet::new(self.size()).unwrap(),
                    new_bases,
                )
            }
        }
    }

    /// True when both matroids have the same size and identical rank on
    /// every subset. Exponential in the ground size.
    pub fn same_rank_function(&self, other: &Matroid) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let full = self.full_mask().bits();
        (0..=full).all(|bits| {
            let s = SubsetMask::from_bits(bits);
            self.rank_of(s) == other.rank_of(s)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn mask_basics() {
        let s = SubsetMask::from_indices(&[0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(2));
        assert!(!s.contains(1));
        assert_eq!(s.to_string(), "{0,2,5}");
        assert_eq!(s.complement(6), SubsetMask::from_indices(&[1, 3, 4]));
        let sizes: Vec<usize> =
            SubsetMask::subsets_of_size(4, 2).map(|m| m.len()).collect();
        assert_eq!(sizes.len(), 6);
        assert!(sizes.iter().all(|&k| k == 2));
        assert_eq!(SubsetMask::subsets_of_size(4, 0).count(), 1);
        assert_eq!(SubsetMask::subsets_of_size(4, 4).count(), 1);
    }

    #[test]
    fn fano_construction() {
        let fano = fixtures::fano();
        assert_eq!(fano.size(), 7);
        assert_eq!(fano.rank(), 3);
        assert!(fano.loops().is_empty());
        assert!(fano.is_simple());
    }

    #[test]
    fn zero_column_is_a_loop() {
        let p = crate::field::PrimeModulus::new(3).unwrap();
        let a = MatrixF::from_columns(p, 2, &[vec![1, 0], vec![0, 0], vec![0, 1]]).unwrap();
        let m = Matroid::from_matrix(a).unwrap();
        assert_eq!(m.loops(), SubsetMask::singleton(1));
    }

    #[test]
    fn generic_rank_two_columns_give_u24() {
        let p = crate::field::PrimeModulus::new(5).unwrap();
        let a = MatrixF::from_columns(p, 2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]])
            .unwrap();
        let m = Matroid::from_matrix(a).unwrap();
        assert_eq!(m.rank(), 2);
        for s in SubsetMask::subsets_of_size(4, 2) {
            assert!(m.is_independent(s));
        }
        for bits in 0..16u32 {
            let s = SubsetMask::from_bits(bits);
            assert_eq!(m.rank_of(s), s.len().min(2));
        }
    }

    #[test]
    fn from_bases_examples() {
        let u12 = Matroid::from_bases(2, vec![SubsetMask::singleton(0), SubsetMask::singleton(1)])
            .unwrap();
        assert_eq!(u12.rank(), 1);
        assert_eq!(u12.rank_of(SubsetMask::full(2)), 1);

        let all_pairs: Vec<SubsetMask> = SubsetMask::subsets_of_size(4, 2).collect();
        let u24 = Matroid::from_bases(4, all_pairs).unwrap();
        assert_eq!(u24.rank(), 2);
        assert_eq!(u24.circuits().len(), 4);
    }

    #[test]
    fn from_bases_rejects_non_matroid() {
        // {0,1} and {2,3} alone fail exchange
        let err = Matroid::from_bases(
            4,
            vec![SubsetMask::from_indices(&[0, 1]), SubsetMask::from_indices(&[2, 3])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotMatroid(_, _)));
    }

    #[test]
    fn vamos_is_a_matroid() {
        let v = fixtures::vamos();
        assert_eq!(v.size(), 8);
        assert_eq!(v.rank(), 4);
        assert_eq!(v.bases().len(), 65);
    }

    #[test]
    fn rank_examples() {
        let fano = fixtures::fano();
        assert_eq!(fano.rank_of(SubsetMask::empty()), 0);
        // elements 0,1,2 are the vectors 001, 010, 011: a line
        assert_eq!(fano.rank_of(SubsetMask::from_indices(&[0, 1, 2])), 2);
        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        assert_eq!(u24.rank_of(SubsetMask::from_indices(&[0, 1, 3])), 2);
    }

    #[test]
    fn closure_examples() {
        let fano = fixtures::fano();
        let line = fano.closure(SubsetMask::from_indices(&[0, 1]));
        assert_eq!(line.mask, SubsetMask::from_indices(&[0, 1, 2]));
        assert_eq!(line.rank, 2);
        let top = fano.closure(fano.full_mask());
        assert_eq!(top.mask, fano.full_mask());
        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        assert_eq!(u24.closure(SubsetMask::singleton(0)).mask, SubsetMask::singleton(0));
    }

    #[test]
    fn flats_layer_sizes() {
        let fano = fixtures::fano();
        let sizes: Vec<usize> = fano.flats_by_rank().iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![1, 7, 7, 1]);

        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        let sizes: Vec<usize> = u24.flats_by_rank().iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![1, 4, 1]);

        let pg23 = fixtures::pg(2, 3).unwrap();
        let sizes: Vec<usize> = pg23.flats_by_rank().iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![1, 13, 13, 1]);
    }

    #[test]
    fn hyperplane_examples() {
        let fano = fixtures::fano();
        let hyps = fano.hyperplanes();
        assert_eq!(hyps.len(), 7);
        assert!(hyps.iter().all(|h| h.mask.len() == 3));

        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        let hyps = u24.hyperplanes();
        assert_eq!(hyps.len(), 4);
        assert!(hyps.iter().all(|h| h.mask.len() == 1));

        let u11 = fixtures::uniform(1, 1, Some(2)).unwrap();
        assert_eq!(u11.hyperplanes().len(), 1);
        assert!(u11.hyperplanes()[0].mask.is_empty());
    }

    #[test]
    fn circuit_examples() {
        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        let circuits = u24.circuits();
        assert_eq!(circuits.len(), 4);
        assert!(circuits.iter().all(|c| c.len() == 3));

        let fano = fixtures::fano();
        let circuits = fano.circuits();
        let threes = circuits.iter().filter(|c| c.len() == 3).count();
        let fours = circuits.iter().filter(|c| c.len() == 4).count();
        assert_eq!((threes, fours), (7, 7));
        assert_eq!(circuits.len(), 14);
        // the 4-circuits are exactly the complements of the lines
        for c in circuits.iter().filter(|c| c.len() == 4) {
            let comp = c.complement(7);
            assert!(circuits.contains(&comp));
        }

        let u33 = fixtures::uniform(3, 3, Some(2)).unwrap();
        assert!(u33.circuits().is_empty());
    }

    #[test]
    fn cocircuits_are_hyperplane_complements() {
        let fano = fixtures::fano();
        let cocircuits = fano.cocircuits();
        assert_eq!(cocircuits.len(), 7);
        assert!(cocircuits.iter().all(|c| c.len() == 4));
        let u11 = fixtures::uniform(1, 1, Some(2)).unwrap();
        assert_eq!(u11.cocircuits(), vec![SubsetMask::singleton(0)]);
    }

    #[test]
    fn cocircuits_are_the_circuits_of_the_dual() {
        for m in [
            fixtures::fano(),
            fixtures::uniform(2, 4, Some(5)).unwrap(),
            fixtures::uniform(3, 5, Some(5)).unwrap(),
            fixtures::vamos(),
        ] {
            let mut cocircuits = m.cocircuits();
            cocircuits.sort_unstable();
            let mut dual_circuits = m.dual().circuits().to_vec();
            dual_circuits.sort_unstable();
            assert_eq!(cocircuits, dual_circuits);
        }
    }

    #[test]
    fn shared_types_are_thread_safe() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Matroid>();
        assert_send_sync::<crate::field::MatrixF>();
        assert_send_sync::<crate::lattice::FlatLattice>();
    }

    #[test]
    fn dual_examples() {
        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        assert!(u24.dual().same_rank_function(&u24));

        let u13 = fixtures::uniform(1, 3, Some(3)).unwrap();
        let dual = u13.dual();
        assert_eq!(dual.rank(), 2);
        assert!(dual.same_rank_function(&fixtures::uniform(2, 3, Some(3)).unwrap()));

        let fano = fixtures::fano();
        let dual = fano.dual();
        assert_eq!(dual.rank(), 4);
        let hyp_complements: Vec<SubsetMask> = fano.cocircuits();
        let dual_circuits: Vec<SubsetMask> = dual
            .circuits()
            .iter()
            .copied()
            .filter(|c| c.len() == 4)
            .collect();
        let mut expected = hyp_complements;
        expected.sort_unstable();
        assert_eq!(dual_circuits, expected);
    }

    #[test]
    fn dual_rank_identity_exhaustive() {
        for m in [
            fixtures::uniform(2, 4, Some(5)).unwrap(),
            fixtures::fano(),
            fixtures::vamos(),
        ] {
            let dual = m.dual();
            assert!(dual.dual().same_rank_function(&m));
            let n = m.size();
            let r = m.rank();
            for bits in 0..=SubsetMask::full(n).bits() {
                let s = SubsetMask::from_bits(bits);
                let co = s.complement(n);
                assert_eq!(dual.rank_of(s), s.len() + m.rank_of(co) - r);
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let u11 = fixtures::uniform(1, 1, Some(2)).unwrap();
        let sum = u11.direct_sum(&u11).unwrap();
        assert_eq!((sum.size(), sum.rank()), (2, 2));
        assert!(sum.circuits().is_empty());

        let u23 = fixtures::uniform(2, 3, Some(3)).unwrap();
        let sum = u23.direct_sum(&u23).unwrap();
        assert_eq!((sum.size(), sum.rank()), (6, 4));
        assert_eq!(sum.components().len(), 2);
        assert_eq!(sum.rank(), u23.rank() * 2);
    }

    #[test]
    fn simplify_examples() {
        let fano = fixtures::fano();
        let (simple, map) = fano.simplify();
        assert_eq!(simple.size(), 7);
        assert_eq!(map, (0..7).map(Some).collect::<Vec<_>>());

        let p = crate::field::PrimeModulus::new(3).unwrap();
        let a = MatrixF::from_columns(
            p,
            2,
            &[vec![1, 0], vec![2, 0], vec![0, 0], vec![0, 1]],
        )
        .unwrap();
        let m = Matroid::from_matrix(a).unwrap();
        let (simple, map) = m.simplify();
        assert_eq!(simple.size(), 2);
        assert_eq!(map, vec![Some(0), Some(0), None, Some(1)]);
        assert!(simple.is_simple());
    }

    #[test]
    fn component_examples() {
        let u23 = fixtures::uniform(2, 3, Some(3)).unwrap();
        let sum = u23.direct_sum(&u23).unwrap();
        let comps = sum.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));

        assert!(fixtures::fano().is_connected());

        let u33 = fixtures::uniform(3, 3, Some(2)).unwrap();
        assert_eq!(u33.components().len(), 3);
        assert!(!u33.is_connected());
    }

    #[test]
    fn rank_axioms_exhaustive_on_fixtures() {
        for m in [
            fixtures::fano(),
            fixtures::uniform(2, 4, Some(5)).unwrap(),
            fixtures::uniform(3, 4, Some(3)).unwrap(),
            fixtures::vamos(),
        ] {
            let n = m.size();
            let table: Vec<usize> =
                (0..=SubsetMask::full(n).bits()).map(|b| m.rank_of(SubsetMask::from_bits(b))).collect();
            for s in 0..table.len() {
                let sm = SubsetMask::from_bits(s as u32);
                assert!(table[s] <= sm.len());
                for t in 0..table.len() {
                    if s as u32 & t as u32 == s as u32 {
                        assert!(table[s] <= table[t]);
                    }
                    assert!(
                        table[s | t] + table[s & t] <= table[s] + table[t],
                        "submodularity fails"
                    );
                }
            }
        }
    }

    #[test]
    fn closure_axioms_and_exchange_small() {
        for m in [fixtures::uniform(2, 4, Some(5)).unwrap(), fixtures::fano()] {
            let n = m.size();
            let cl: Vec<SubsetMask> = (0..=SubsetMask::full(n).bits())
                .map(|b| m.closure(SubsetMask::from_bits(b)).mask)
                .collect();
            for bits in 0..cl.len() {
                let s = SubsetMask::from_bits(bits as u32);
                let c = cl[bits];
                assert!(s.is_subset_of(c));
                assert_eq!(cl[c.bits() as usize], c, "idempotence");
                for (t, &clt) in cl.iter().enumerate() {
                    if s.is_subset_of(SubsetMask::from_bits(t as u32)) {
                        assert!(c.is_subset_of(clt), "monotonicity");
                    }
                }
                // MacLane-Steinitz exchange
                for f in 0..n {
                    if s.contains(f) {
                        continue;
                    }
                    let with_f = cl[s.with(f).bits() as usize];
                    for e in with_f.minus(c).iter() {
                        let with_e = cl[s.with(e).bits() as usize];
                        assert!(with_e.contains(f), "exchange fails");
                    }
                }
            }
        }
    }

    #[test]
    fn circuit_elimination_on_fano() {
        let fano = fixtures::fano();
        let circuits = fano.circuits();
        for (i, &c1) in circuits.iter().enumerate() {
            for &c2 in &circuits[i + 1..] {
                for e in c1.intersect(c2).iter() {
                    let target = c1.union(c2).without(e);
                    assert!(
                        circuits.iter().any(|c| c.is_subset_of(target)),
                        "elimination fails for {c1} {c2} at {e}"
                    );
                }
            }
        }
    }
}
