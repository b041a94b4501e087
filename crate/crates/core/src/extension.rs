//! Linear subclasses and the extension lattice: all hyperplane families
//! closed under "any hyperplane through the shared rank-(r-2) intersection
//! of two members also belongs", ordered by inclusion, and the lambda map
//! identifying the opposite flat lattice with the extension lattice of a
//! modular matroid.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{is_modular, Poset};
use crate::matroid::{Flat, Matroid, SubsetMask};

/// Cap on the hyperplane count for subclass enumeration (2^13 subsets).
pub const SUBCLASS_CAP: usize = 13;

/// Witness that a hyperplane family is not a linear subclass: H1 and H2
/// belong, their intersection has rank r-2, H3 contains it but is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubclassViolation {
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
}

/// Pairs of hyperplane indices whose intersection has rank r-2, together
/// with the mask of all hyperplanes containing that intersection.
fn colink_table(m: &Matroid) -> Vec<(usize, usize, SubsetMask)> {
    let hyps = m.hyperplanes();
    let r = m.rank();
    let mut table = Vec::new();
    for i in 0..hyps.len() {
        for j in i + 1..hyps.len() {
            let inter = hyps[i].mask.intersect(hyps[j].mask);
            if m.rank_of(inter) + 2 != r {
                continue;
            }
            let mut through = SubsetMask::empty();
            for (k, h) in hyps.iter().enumerate() {
                if inter.is_subset_of(h.mask) {
                    through = through.with(k);
                }
            }
            table.push((i, j, through));
        }
    }
    table
}

/// Tests the linear-subclass closure condition for a set of hyperplane
/// indices; `Err` carries the violating triple.
pub fn is_linear_subclass(
    m: &Matroid,
    members: SubsetMask,
) -> std::result::Result<(), SubclassViolation> {
    for (i, j, through) in colink_table(m) {
        if members.contains(i) && members.contains(j) && !through.is_subset_of(members) {
            let h3 = through.minus(members).iter().next().expect("nonempty difference");
            return Err(SubclassViolation { h1: i, h2: j, h3 });
        }
    }
    Ok(())
}

/// The poset of all linear subclasses of a matroid, ordered by inclusion.
#[derive(Debug, Clone)]
pub struct ExtensionLattice {
    /// Each subclass as a mask over hyperplane indices, canonical order.
    subclasses: Vec<SubsetMask>,
    hyperplanes: Vec<Flat>,
    poset: Poset,
}

impl ExtensionLattice {
    pub fn len(&self) -> usize {
        self.subclasses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subclasses.is_empty()
    }

    pub fn subclasses(&self) -> &[SubsetMask] {
        &self.subclasses
    }

    pub fn hyperplanes(&self) -> &[Flat] {
        &self.hyperplanes
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn index_of(&self, members: SubsetMask) -> Option<usize> {
        self.subclasses.binary_search(&members).ok()
    }
}

/// Filters all 2^|H| hyperplane subsets by the subclass condition and
/// assembles the inclusion poset. Checked to contain the empty and full
/// families and to be closed under intersection.
pub fn enumerate_linear_subclasses(m: &Matroid) -> Result<ExtensionLattice> {
    let hyps: Vec<Flat> = m.hyperplanes().to_vec();
    if hyps.len() > SUBCLASS_CAP {
        return Err(Error::Resource(format!(
            "{} hyperplanes exceed the subclass enumeration cap of {SUBCLASS_CAP}",
            hyps.len()
        )));
    }
    let table = colink_table(m);
    let mut subclasses = Vec::new();
    'subset: for bits in 0..=SubsetMask::full(hyps.len()).bits() {
        let s = SubsetMask::from_bits(bits);
        for (i, j, through) in &table {
            if s.contains(*i) && s.contains(*j) && !through.is_subset_of(s) {
                continue 'subset;
            }
        }
        subclasses.push(s);
    }
    let present: std::collections::HashSet<u32> =
        subclasses.iter().map(|s| s.bits()).collect();
    if !present.contains(&SubsetMask::empty().bits())
        || !present.contains(&SubsetMask::full(hyps.len()).bits())
    {
        return Err(Error::Internal("extension lattice is missing its bounds".into()));
    }
    for &a in &subclasses {
        for &b in &subclasses {
            if !present.contains(&a.intersect(b).bits()) {
                return Err(Error::Internal(
                    "linear subclasses are not closed under intersection".into(),
                ));
            }
        }
    }
    let labels = subclasses.iter().map(|s| s.to_string()).collect();
    let poset = Poset::from_leq(subclasses.len(), labels, |i, j| {
        subclasses[i].is_subset_of(subclasses[j])
    })?;
    Ok(ExtensionLattice { subclasses, hyperplanes: hyps, poset })
}

/// The hyperplanes containing a given set, as a mask over hyperplane
/// indices: the lambda map evaluated at one flat.
pub fn hyperplanes_through(m: &Matroid, x: SubsetMask) -> SubsetMask {
    let mut out = SubsetMask::empty();
    for (i, h) in m.hyperplanes().iter().enumerate() {
        if x.is_subset_of(h.mask) {
            out = out.with(i);
        }
    }
    out
}

/// What the lambda map X -> { H : X is contained in H } does against the
/// enumerated extension lattice.
#[derive(Debug, Clone)]
pub struct LambdaReport {
    pub flat_count: usize,
    pub subclass_count: usize,
    /// flat index (canonical order) -> subclass index, when the image is
    /// a known subclass.
    pub map: Vec<Option<usize>>,
    pub images_are_subclasses: bool,
    pub injective: bool,
    pub surjective: bool,
    pub order_preserving: bool,
}

impl LambdaReport {
    pub fn is_isomorphism(&self) -> bool {
        self.images_are_subclasses && self.injective && self.surjective && self.order_preserving
    }
}

/// Evaluates lambda on every flat without assuming modularity; the
/// non-modular contrast cases show up as surjectivity failures.
pub fn lambda_analysis(m: &Matroid, ext: &ExtensionLattice) -> LambdaReport {
    let flats: Vec<Flat> = m.flats_by_rank().iter().flatten().copied().collect();
    let images: Vec<SubsetMask> = flats.iter().map(|f| hyperplanes_through(m, f.mask)).collect();
    let map: Vec<Option<usize>> = images.iter().map(|&img| ext.index_of(img)).collect();
    let images_are_subclasses = map.iter().all(|i| i.is_some());
    let mut seen: HashMap<u32, usize> = HashMap::new();
    let mut injective = true;
    for (i, img) in images.iter().enumerate() {
        if seen.insert(img.bits(), i).is_some() {
            injective = false;
        }
    }
    let surjective = {
        let hit: std::collections::HashSet<usize> = map.iter().flatten().copied().collect();
        hit.len() == ext.len()
    };
    // order preservation both ways: Y within X iff lambda(X) within lambda(Y)
    let mut order_preserving = true;
    for (i, x) in flats.iter().enumerate() {
        for (j, y) in flats.iter().enumerate() {
            let opposite_leq = y.mask.is_subset_of(x.mask);
            let image_leq = images[i].is_subset_of(images[j]);
            if opposite_leq != image_leq {
                order_preserving = false;
            }
        }
    }
    LambdaReport {
        flat_count: flats.len(),
        subclass_count: ext.len(),
        map,
        images_are_subclasses,
        injective,
        surjective,
        order_preserving,
    }
}

/// For a modular matroid, checks that lambda is an order-isomorphism from
/// the opposite flat lattice onto the extension lattice. A report that is
/// not an isomorphism refutes the modular-identification property.
pub fn lambda_map(m: &Matroid) -> Result<LambdaReport> {
    if !is_modular(m)? {
        return Err(Error::Invalid(
            "the lambda map is an isomorphism only for modular matroids".into(),
        ));
    }
    let ext = enumerate_linear_subclasses(m)?;
    Ok(lambda_analysis(m, &ext))
}
