//! Exact isomorphism testing for small matroids: an isomorphism-invariant
//! fingerprint for fast rejection, then a backtracking search for a
//! rank-preserving ground-set bijection.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, SubsetMask};

/// Ground-size cap for the bijection search.
pub const ISO_CAP: usize = 16;

/// Isomorphism-invariant summary of a matroid. Equal fingerprints are
/// necessary but NOT sufficient for isomorphism; the bijection search is
/// the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub size: usize,
    pub rank: usize,
    pub flats_per_rank: Vec<usize>,
    /// (circuit size, count), sorted by size.
    pub circuit_histogram: Vec<(usize, usize)>,
    /// Sorted per-element profiles; entry k of a profile counts the
    /// rank-k flats containing the element.
    pub element_profiles: Vec<Vec<usize>>,
}

fn profile_of(m: &Matroid, e: usize) -> Vec<usize> {
    m.flats_by_rank()
        .iter()
        .map(|layer| layer.iter().filter(|f| f.mask.contains(e)).count())
        .collect()
}

/// Deterministic, isomorphism-invariant summary.
pub fn fingerprint(m: &Matroid) -> Fingerprint {
    let mut histogram: HashMap<usize, usize> = HashMap::new();
    for c in m.circuits() {
        *histogram.entry(c.len()).or_insert(0) += 1;
    }
    let mut circuit_histogram: Vec<(usize, usize)> = histogram.into_iter().collect();
    circuit_histogram.sort_unstable();
    let mut element_profiles: Vec<Vec<usize>> = (0..m.size()).map(|e| profile_of(m, e)).collect();
    element_profiles.sort_unstable();
    Fingerprint {
        size: m.size(),
        rank: m.rank(),
        flats_per_rank: m.flats_by_rank().iter().map(|l| l.len()).collect(),
        circuit_histogram,
        element_profiles,
    }
}

struct SearchCtx<'a> {
    a: &'a Matroid,
    b: &'a Matroid,
    /// triple_a[i][j] bit k set iff {i,j,k} is dependent in a
    triple_a: Vec<Vec<u32>>,
    triple_b: Vec<Vec<u32>>,
    pair_a: Vec<u32>,
    pair_b: Vec<u32>,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
}

fn dependence_tables(m: &Matroid) -> (Vec<u32>, Vec<Vec<u32>>) {
    let n = m.size();
    let mut pair = vec![0u32; n];
    let mut triple = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if m.rank_of(SubsetMask::from_indices(&[i, j])) < 2 {
                pair[i] |= 1 << j;
                pair[j] |= 1 << i;
            }
            for k in j + 1..n {
                if m.rank_of(SubsetMask::from_indices(&[i, j, k])) < 3 {
                    triple[i][j] |= 1 << k;
                    triple[j][i] |= 1 << k;
                    triple[i][k] |= 1 << j;
                    triple[k][i] |= 1 << j;
                    triple[j][k] |= 1 << i;
                    triple[k][j] |= 1 << i;
                }
            }
        }
    }
    (pair, triple)
}

fn backtrack(
    ctx: &SearchCtx<'_>,
    depth: usize,
    image: &mut Vec<usize>,
    used: u32,
    mapped_a: SubsetMask,
    mapped_b: SubsetMask,
) -> bool {
    if depth == ctx.order.len() {
        return final_check(ctx.a, ctx.b, image);
    }
    let x = ctx.order[depth];
    'cand: for &y in &ctx.candidates[x] {
        if used >> y & 1 == 1 {
            continue;
        }
        if ctx.a.rank_of(SubsetMask::singleton(x)) != ctx.b.rank_of(SubsetMask::singleton(y)) {
            continue;
        }
        for &u in &ctx.order[..depth] {
            let v = image[u];
            if (ctx.pair_a[x] >> u & 1) != (ctx.pair_b[y] >> v & 1) {
                continue 'cand;
            }
        }
        for di in 0..depth {
            let u = ctx.order[di];
            for &u2 in &ctx.order[..di] {
                let (v, v2) = (image[u], image[u2]);
                if (ctx.triple_a[x][u] >> u2 & 1) != (ctx.triple_b[y][v] >> v2 & 1) {
                    continue 'cand;
                }
            }
        }
        let na = mapped_a.with(x);
        let nb = mapped_b.with(y);
        if ctx.a.rank_of(na) != ctx.b.rank_of(nb) {
            continue;
        }
        image[x] = y;
        if backtrack(ctx, depth + 1, image, used | 1 << y, na, nb) {
            return true;
        }
        image[x] = usize::MAX;
    }
    false
}

/// Exact criterion on a complete bijection: the image of every circuit of
/// `a` is dependent in `b` and the preimage of every circuit of `b` is
/// dependent in `a`.
fn final_check(a: &Matroid, b: &Matroid, image: &[usize]) -> bool {
    let map = |s: SubsetMask, f: &dyn Fn(usize) -> usize| {
        let mut out = SubsetMask::empty();
        for e in s.iter() {
            out = out.with(f(e));
        }
        out
    };
    let fwd = |e: usize| image[e];
    let mut preimage = vec![0usize; image.len()];
    for (e, &i) in image.iter().enumerate() {
        preimage[i] = e;
    }
    let bwd = |e: usize| preimage[e];
    a.circuits().iter().all(|&c| !b.is_independent(map(c, &fwd)))
        && b.circuits().iter().all(|&c| !a.is_independent(map(c, &bwd)))
}

/// Searches for a rank-preserving bijection between the ground sets.
///
/// Any returned bijection is re-verified on every subset for ground sets
/// of at most 10 elements and on 10^4 deterministic random subsets
/// otherwise; both matroids must have at most [`ISO_CAP`] elements.
pub fn matroid_iso(a: &Matroid, b: &Matroid) -> Result<Option<Vec<usize>>> {
    if a.size() > ISO_CAP || b.size() > ISO_CAP {
        return Err(Error::Resource(format!(
            "isomorphism search capped at {ISO_CAP} elements, got {} and {}",
            a.size(),
            b.size()
        )));
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(None);
    }
    let n = a.size();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let profiles_a: Vec<Vec<usize>> = (0..n).map(|e| profile_of(a, e)).collect();
    let profiles_b: Vec<Vec<usize>> = (0..n).map(|e| profile_of(b, e)).collect();
    let mut by_profile: HashMap<&[usize], Vec<usize>> = HashMap::new();
    for (j, p) in profiles_b.iter().enumerate() {
        by_profile.entry(p.as_slice()).or_default().push(j);
    }
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for p in &profiles_a {
        match by_profile.get(p.as_slice()) {
            Some(c) => candidates.push(c.clone()),
            None => return Ok(None),
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&i| (candidates[i].len(), i));
    let (pair_a, triple_a) = dependence_tables(a);
    let (pair_b, triple_b) = dependence_tables(b);
    let ctx = SearchCtx { a, b, triple_a, triple_b, pair_a, pair_b, candidates, order };
    let mut image = vec![usize::MAX; n];
    if !backtrack(&ctx, 0, &mut image, 0, SubsetMask::empty(), SubsetMask::empty()) {
        return Ok(None);
    }
    verify_bijection(a, b, &image)?;
    Ok(Some(image))
}

fn verify_bijection(a: &Matroid, b: &Matroid, image: &[usize]) -> Result<()> {
    let n = a.size();
    let map = |s: SubsetMask| {
        let mut out = SubsetMask::empty();
        for e in s.iter() {
            out = out.with(image[e]);
        }
        out
    };
    let check = |bits: u32| -> Result<()> {
        let s = SubsetMask::from_bits(bits);
        if a.rank_of(s) != b.rank_of(map(s)) {
            return Err(Error::Internal(format!(
                "bijection passed the circuit check but not rank equality at {s}"
            )));
        }
        Ok(())
    };
    if n <= 10 {
        for bits in 0..=SubsetMask::full(n).bits() {
            check(bits)?;
        }
    } else {
        let full = SubsetMask::full(n).bits();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..10_000 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            check((state as u32) & full)?;
        }
    }
    Ok(())
}
