//! Adjoint verification and construction: the hyperplane-set certificate,
//! the order-reversing flat map with its structural properties, type I
//! adjoints of represented matroids, adjoint-sequence iteration and
//! classification, and projective-geometry recognition.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::MatrixF;
use crate::iso::{fingerprint, matroid_iso, Fingerprint, ISO_CAP};
use crate::lattice::is_modular;
use crate::matroid::{Flat, Matroid, SubsetMask};

/// Witness that a candidate is *not* an adjoint of the base matroid.
#[derive(Debug, Clone)]
pub enum AdjointFailure {
    RankMismatch { base: usize, candidate: usize },
    /// The hyperplanes through `element`, pulled back through the
    /// labeling, are not a hyperplane of the candidate.
    NotAHyperplane { element: usize, pulled_back: SubsetMask },
}

/// Outcome of an adjoint check: a certificate or a concrete witness.
#[derive(Debug, Clone)]
pub enum AdjointCheck {
    Valid(Box<AdjointCertificate>),
    Invalid(AdjointFailure),
}

impl AdjointCheck {
    pub fn certificate(self) -> Result<AdjointCertificate> {
        match self {
            AdjointCheck::Valid(c) => Ok(*c),
            AdjointCheck::Invalid(f) => {
                Err(Error::Invalid(format!("candidate is not an adjoint: {f:?}")))
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, AdjointCheck::Valid(_))
    }
}

/// A verified adjoint pair: the base matroid M, the candidate N, and a
/// bijection from E(N) onto the hyperplanes of M under which every
/// hyperplane set H[e] pulls back to a hyperplane of N.
#[derive(Debug, Clone)]
pub struct AdjointCertificate {
    base: Matroid,
    candidate: Matroid,
    labeling: Vec<usize>,
    inverse_labeling: Vec<usize>,
    base_hyperplanes: Vec<Flat>,
    rank_equal: bool,
    element_flags: Vec<bool>,
}

impl AdjointCertificate {
    pub fn base(&self) -> &Matroid {
        &self.base
    }

    pub fn candidate(&self) -> &Matroid {
        &self.candidate
    }

    /// labeling[i] is the index (into `base_hyperplanes`) of the
    /// hyperplane carried by element i of the candidate.
    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    pub fn base_hyperplanes(&self) -> &[Flat] {
        &self.base_hyperplanes
    }

    /// The candidate element carrying hyperplane index h.
    pub fn element_of_hyperplane(&self, h: usize) -> usize {
        self.inverse_labeling[h]
    }

    pub fn rank_equal(&self) -> bool {
        self.rank_equal
    }

    pub fn element_flags(&self) -> &[bool] {
        &self.element_flags
    }

    /// The adjoint map on an arbitrary subset: the candidate elements
    /// whose hyperplanes contain `x`.
    pub fn phi(&self, x: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::empty();
        for (i, &h) in self.labeling.iter().enumerate() {
            if x.is_subset_of(self.base_hyperplanes[h].mask) {
                out = out.with(i);
            }
        }
        out
    }
}

/// Checks the finite adjoint characterization: rank(N) = rank(M) and, for
/// every non-loop e of M, the hyperplanes through e pull back through the
/// labeling to a hyperplane of N.
///
/// `labeling` must be a bijection from the elements of `candidate` onto
/// the hyperplane indices of `base`, and `base` must be loopless.
pub fn verify_adjoint(base: &Matroid, candidate: &Matroid, labeling: &[usize]) -> Result<AdjointCheck> {
    if !base.loops().is_empty() {
        return Err(Error::Invalid("adjoint checks require a loopless base matroid".into()));
    }
    let hyperplanes: Vec<Flat> = base.hyperplanes().to_vec();
    if labeling.len() != candidate.size() || candidate.size() != hyperplanes.len() {
        return Err(Error::Invalid(format!(
            "labeling must pair {} candidate elements with {} hyperplanes",
            candidate.size(),
            hyperplanes.len()
        )));
    }
    let mut inverse = vec![usize::MAX; hyperplanes.len()];
    for (i, &h) in labeling.iter().enumerate() {
        if h >= hyperplanes.len() || inverse[h] != usize::MAX {
            return Err(Error::Invalid("labeling is not a bijection onto the hyperplanes".into()));
        }
        inverse[h] = i;
    }
    if base.rank() != candidate.rank() {
        return Ok(AdjointCheck::Invalid(AdjointFailure::RankMismatch {
            base: base.rank(),
            candidate: candidate.rank(),
        }));
    }
    let r = candidate.rank();
    let mut element_flags = vec![false; base.size()];
    for (e, flag) in element_flags.iter_mut().enumerate() {
        let mut pulled = SubsetMask::empty();
        for (i, &h) in labeling.iter().enumerate() {
            if hyperplanes[h].mask.contains(e) {
                pulled = pulled.with(i);
            }
        }
        let is_hyperplane = candidate.rank_of(pulled) == r - 1
            && candidate.closure(pulled).mask == pulled;
        if !is_hyperplane {
            return Ok(AdjointCheck::Invalid(AdjointFailure::NotAHyperplane {
                element: e,
                pulled_back: pulled,
            }));
        }
        *flag = true;
    }
    Ok(AdjointCheck::Valid(Box::new(AdjointCertificate {
        base: base.clone(),
        candidate: candidate.clone(),
        labeling: labeling.to_vec(),
        inverse_labeling: inverse,
        base_hyperplanes: hyperplanes,
        rank_equal: true,
        element_flags,
    })))
}

/// The adjoint map evaluated on every flat of the base matroid, with its
/// structural properties verified: cover reversal, rank complementation,
/// meet/join exchange, modular-pair equality, and independence of labels
/// along strictly decreasing hyperplane-intersection chains.
#[derive(Debug, Clone)]
pub struct AdjointMap {
    /// (flat of M, phi(flat) as a flat mask of N), flats in canonical order.
    pub images: Vec<(Flat, SubsetMask)>,
}

pub fn adjoint_map(cert: &AdjointCertificate) -> Result<AdjointMap> {
    let m = cert.base();
    let n = cert.candidate();
    let r = m.rank();
    let flats: Vec<Flat> = m.flats_by_rank().iter().flatten().copied().collect();
    let images: Vec<(Flat, SubsetMask)> =
        flats.iter().map(|&f| (f, cert.phi(f.mask))).collect();
    let image_of: HashMap<u32, SubsetMask> =
        images.iter().map(|(f, img)| (f.mask.bits(), *img)).collect();

    let mut seen: HashSet<u32> = HashSet::new();
    for (flat, img) in &images {
        if !seen.insert(img.bits()) {
            return Err(Error::Internal(format!("adjoint map is not injective at {}", flat.mask)));
        }
        if n.closure(*img).mask != *img {
            return Err(Error::Internal(format!("phi({}) is not a flat of the candidate", flat.mask)));
        }
        if n.rank_of(*img) != r - flat.rank {
            return Err(Error::Internal(format!(
                "rank complementation fails at {}: expected {}, got {}",
                flat.mask,
                r - flat.rank,
                n.rank_of(*img)
            )));
        }
    }
    for (x, img_x) in &images {
        for (y, img_y) in &images {
            if x.mask.is_subset_of(y.mask) && !img_y.is_subset_of(*img_x) {
                return Err(Error::Internal("adjoint map does not reverse order".into()));
            }
            // cover reversal: ranks adjacent and containment strict
            if y.mask.is_subset_of(x.mask) && x.rank == y.rank + 1 {
                let (img_upper, img_lower) = (img_x, img_y);
                if !(img_upper.is_subset_of(*img_lower)
                    && n.rank_of(*img_lower) == n.rank_of(*img_upper) + 1)
                {
                    return Err(Error::Internal("cover reversal fails".into()));
                }
            }
            // meet of images = image of join
            let join = m.closure(x.mask.union(y.mask)).mask;
            if image_of[&join.bits()] != img_x.intersect(*img_y) {
                return Err(Error::Internal("phi(X v Y) differs from phi(X) ^ phi(Y)".into()));
            }
            // images form a modular pair in the candidate
            let meet_rank = n.rank_of(img_x.intersect(*img_y));
            let join_rank = n.rank_of(n.closure(img_x.union(*img_y)).mask);
            if n.rank_of(*img_x) + n.rank_of(*img_y) != meet_rank + join_rank {
                return Err(Error::Internal("images of flats are not a modular pair".into()));
            }
        }
    }
    check_decreasing_chains(cert)?;
    Ok(AdjointMap { images })
}

/// Walks every strictly decreasing hyperplane-intersection chain and
/// checks that its labels are independent in the candidate. States are
/// memoized on (intersection, label set), which collapses chain
/// reorderings.
fn check_decreasing_chains(cert: &AdjointCertificate) -> Result<()> {
    let n = cert.candidate();
    let hyps = cert.base_hyperplanes();
    let mut stack: Vec<(SubsetMask, SubsetMask)> = Vec::new();
    let mut visited: HashSet<(u32, u32)> = HashSet::new();
    for (h, flat) in hyps.iter().enumerate() {
        let labels = SubsetMask::singleton(cert.element_of_hyperplane(h));
        if visited.insert((flat.mask.bits(), labels.bits())) {
            stack.push((flat.mask, labels));
        }
    }
    while let Some((inter, labels)) = stack.pop() {
        if !n.is_independent(labels) {
            return Err(Error::Internal(format!(
                "labels {labels} of a decreasing hyperplane chain are dependent"
            )));
        }
        for (h, flat) in hyps.iter().enumerate() {
            let next = inter.intersect(flat.mask);
            if next == inter {
                continue; // not strictly decreasing
            }
            let next_labels = labels.with(cert.element_of_hyperplane(h));
            if visited.insert((next.bits(), next_labels.bits())) {
                stack.push((next, next_labels));
            }
        }
    }
    Ok(())
}

/// closure(B \ e): the unique hyperplane containing all of B but e.
pub fn fundamental_hyperplane(m: &Matroid, basis: SubsetMask, e: usize) -> Result<Flat> {
    if !basis.contains(e) {
        return Err(Error::Invalid(format!("element {e} is not in the basis {basis}")));
    }
    if !m.is_basis(basis) {
        return Err(Error::Invalid(format!("{basis} is not a basis")));
    }
    Ok(m.closure(basis.without(e)))
}

/// True when the fundamental hyperplanes of a basis, pulled back through
/// the certificate labeling, form a basis of the candidate. This must
/// hold for every basis; a false return is a refutation event.
pub fn check_fundamental_basis(cert: &AdjointCertificate, basis: SubsetMask) -> Result<bool> {
    let m = cert.base();
    let index_of: HashMap<u32, usize> = cert
        .base_hyperplanes()
        .iter()
        .enumerate()
        .map(|(i, f)| (f.mask.bits(), i))
        .collect();
    let mut labels = SubsetMask::empty();
    for e in basis.iter() {
        let h = fundamental_hyperplane(m, basis, e)?;
        let idx = *index_of
            .get(&h.mask.bits())
            .ok_or_else(|| Error::Internal(format!("closure {} is not a hyperplane", h.mask)))?;
        labels = labels.with(cert.element_of_hyperplane(idx));
    }
    Ok(cert.candidate().is_basis(labels))
}

/// A type I adjoint: the vector matroid of the hyperplane normal vectors,
/// labeled by the hyperplanes in canonical order, with its certificate.
#[derive(Debug, Clone)]
pub struct Sigma {
    pub matroid: Matroid,
    /// element i of sigma(M) carries hyperplane i of M
    pub labeling: Vec<usize>,
    pub certificate: AdjointCertificate,
}

/// Normal vectors of the column spans named by the masks: one column per
/// mask, each span required to have dimension rows - 1 so its orthogonal
/// kernel is a line. The empty mask is the degenerate rank-1 case.
pub(crate) fn hyperplane_normals(matrix: &MatrixF, masks: &[SubsetMask]) -> Result<MatrixF> {
    let r = matrix.rows();
    let mut normals: Vec<Vec<u8>> = Vec::with_capacity(masks.len());
    for mask in masks {
        let indices = mask.indices();
        if indices.is_empty() {
            if r != 1 {
                return Err(Error::Internal(format!(
                    "empty span has dimension 0, expected {}",
                    r - 1
                )));
            }
            normals.push(vec![1]);
            continue;
        }
        let span = matrix.select_columns(&indices);
        let kernel = span.transpose().kernel_basis();
        if kernel.len() != 1 {
            return Err(Error::Internal(format!(
                "columns {mask} span dimension {}, expected {}",
                r - kernel.len(),
                r - 1
            )));
        }
        normals.push(kernel[0].entries().to_vec());
    }
    MatrixF::from_columns(matrix.modulus(), r, &normals)
}

/// Computes the type I adjoint of a simple represented matroid: for each
/// hyperplane H, the columns of H span an (r-1)-dimensional space whose
/// one-dimensional orthogonal kernel yields the projectively normalized
/// normal vector; the adjoint is the vector matroid of those normals.
pub fn sigma(m: &Matroid) -> Result<Sigma> {
    let Some(matrix) = m.matrix() else {
        return Err(Error::Invalid("type I adjoints need a represented matroid".into()));
    };
    if !m.is_simple() {
        return Err(Error::NotSimple("type I adjoints are blind to loops and parallels; simplify first".into()));
    }
    let r = m.rank();
    if r == 0 {
        return Err(Error::Invalid("type I adjoint of a rank-0 matroid is undefined".into()));
    }
    debug_assert_eq!(matrix.rows(), r, "from_matrix keeps row count equal to the rank");
    let hyperplanes = m.hyperplanes().to_vec();
    let masks: Vec<SubsetMask> = hyperplanes.iter().map(|h| h.mask).collect();
    let sigma_matrix = hyperplane_normals(matrix, &masks)?;
    let adjoint = Matroid::from_matrix(sigma_matrix)?;
    let labeling: Vec<usize> = (0..hyperplanes.len()).collect();
    let certificate = match verify_adjoint(m, &adjoint, &labeling)? {
        AdjointCheck::Valid(c) => *c,
        AdjointCheck::Invalid(f) => {
            return Err(Error::Internal(format!(
                "type I adjoint failed its own certificate: {f:?}"
            )))
        }
    };
    Ok(Sigma { matroid: adjoint, labeling, certificate })
}

/// Structural classification of one matroid: a free point, a line, or a
/// finite projective geometry PG(rank-1, order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectiveClass {
    FreePoint,
    Line { size: usize },
    Geometry { rank: usize, order: u16 },
}

impl std::fmt::Display for ProjectiveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectiveClass::FreePoint => write!(f, "U_{{1,1}}"),
            ProjectiveClass::Line { size } => write!(f, "U_{{2,{size}}}"),
            ProjectiveClass::Geometry { rank, order } => write!(f, "PG({},{order})", rank - 1),
        }
    }
}

/// Recognizes simple matroids that are projective geometries: connected
/// modular matroids of rank at least 3 report their (rank, order), with
/// the line size and point count cross-checked; rank 1 and 2 report the
/// free point and line tags.
pub fn recognize_projective(m: &Matroid) -> Result<Option<ProjectiveClass>> {
    if !m.is_simple() {
        return Err(Error::NotSimple("projective recognition expects a simple matroid".into()));
    }
    match m.rank() {
        0 => Ok(None),
        1 => Ok(Some(ProjectiveClass::FreePoint)),
        2 => Ok(Some(ProjectiveClass::Line { size: m.size() })),
        r => {
            if !m.is_connected() || !is_modular(m)? {
                return Ok(None);
            }
            let lines = &m.flats_by_rank()[2];
            let line_size = lines[0].mask.len();
            if lines.iter().any(|l| l.mask.len() != line_size) || line_size < 3 {
                return Err(Error::Internal(
                    "modular connected matroid with unequal or short lines".into(),
                ));
            }
            let q = (line_size - 1) as u64;
            let expected: u64 = (0..r as u32).map(|k| q.pow(k)).sum();
            if m.size() as u64 != expected {
                return Err(Error::Internal(format!(
                    "point count {} does not match (q^r-1)/(q-1) = {expected} for q = {q}",
                    m.size()
                )));
            }
            Ok(Some(ProjectiveClass::Geometry { rank: r, order: q as u16 }))
        }
    }
}

/// One entry of an adjoint-sequence report.
#[derive(Debug, Clone)]
pub struct IterateRecord {
    pub index: usize,
    pub size: usize,
    pub rank: usize,
    pub modular: bool,
    pub projective: Option<ProjectiveClass>,
    pub fingerprint: Fingerprint,
}

/// How an adjoint sequence ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceVerdict {
    /// sigma^(k+1) is isomorphic to sigma^k.
    StabilizedAt(usize),
    /// sigma^(k+2) is isomorphic to sigma^k but sigma^(k+1) is not.
    TwoCycleAt(usize),
    /// An iteration, size, or isomorphism cap stopped the classification.
    CapExceeded { reason: String },
}

#[derive(Debug, Clone)]
pub struct SequenceReport {
    pub iterates: Vec<IterateRecord>,
    pub verdict: SequenceVerdict,
}

pub const DEFAULT_MAX_ITER: usize = 8;
pub const DEFAULT_SIZE_CAP: usize = 2000;

fn record(index: usize, m: &Matroid) -> Result<IterateRecord> {
    Ok(IterateRecord {
        index,
        size: m.size(),
        rank: m.rank(),
        modular: is_modular(m)?,
        projective: recognize_projective(m)?,
        fingerprint: fingerprint(m),
    })
}

fn iso_iterates(a: &Matroid, b: &Matroid) -> Result<Option<bool>> {
    if a.size() != b.size() {
        return Ok(Some(false));
    }
    if a.size() > ISO_CAP {
        return Ok(None); // undecidable at this scale
    }
    Ok(Some(matroid_iso(a, b)?.is_some()))
}

/// Iterates the type I adjoint until the sequence stabilizes, enters a
/// two-cycle, or hits a cap. Ground sizes must be non-decreasing two
/// steps apart; a violation is an internal error.
pub fn sigma_sequence(m: &Matroid, max_iter: usize, size_cap: usize) -> Result<SequenceReport> {
    sigma_sequence_with(m, max_iter, size_cap, iso_iterates)
}

/// Sequence classifier over an injectable isomorphism decision, so the
/// two-cycle branch stays testable without a fixture that cycles.
fn sigma_sequence_with<F>(
    m: &Matroid,
    max_iter: usize,
    size_cap: usize,
    mut iso: F,
) -> Result<SequenceReport>
where
    F: FnMut(&Matroid, &Matroid) -> Result<Option<bool>>,
{
    if m.matrix().is_none() {
        return Err(Error::Invalid("adjoint sequences need a represented matroid".into()));
    }
    if !m.is_simple() {
        return Err(Error::NotSimple("adjoint sequences expect a simple matroid".into()));
    }
    let mut iterates: Vec<Matroid> = vec![m.clone()];
    let mut records: Vec<IterateRecord> = vec![record(0, m)?];
    loop {
        let k = iterates.len() - 1;
        if k >= 2 && records[k].size < records[k - 2].size {
            return Err(Error::Internal(
                "ground sizes decreased two steps apart in an adjoint sequence".into(),
            ));
        }
        if k >= 1 {
            match iso(&iterates[k], &iterates[k - 1])? {
                Some(true) => {
                    return Ok(SequenceReport {
                        iterates: records,
                        verdict: SequenceVerdict::StabilizedAt(k - 1),
                    })
                }
                Some(false) => {}
                None => {
                    let reason =
                        format!("iterates of size {} exceed the isomorphism cap", records[k].size);
                    return Ok(SequenceReport {
                        iterates: records,
                        verdict: SequenceVerdict::CapExceeded { reason },
                    });
                }
            }
        }
        if k >= 2 {
            match iso(&iterates[k], &iterates[k - 2])? {
                Some(true) => {
                    return Ok(SequenceReport {
                        iterates: records,
                        verdict: SequenceVerdict::TwoCycleAt(k - 2),
                    })
                }
                Some(false) => {}
                None => {
                    let reason =
                        format!("iterates of size {} exceed the isomorphism cap", records[k].size);
                    return Ok(SequenceReport {
                        iterates: records,
                        verdict: SequenceVerdict::CapExceeded { reason },
                    });
                }
            }
        }
        if k == max_iter {
            return Ok(SequenceReport {
                iterates: records,
                verdict: SequenceVerdict::CapExceeded { reason: format!("iteration cap {max_iter}") },
            });
        }
        let next_size = iterates[k].hyperplanes().len();
        if next_size > size_cap {
            return Ok(SequenceReport {
                iterates: records,
                verdict: SequenceVerdict::CapExceeded {
                    reason: format!("next iterate has {next_size} elements, size cap is {size_cap}"),
                },
            });
        }
        let next = match sigma(&iterates[k]) {
            Ok(s) => s.matroid,
            Err(Error::Resource(msg)) => {
                return Ok(SequenceReport {
                    iterates: records,
                    verdict: SequenceVerdict::CapExceeded { reason: msg },
                })
            }
            Err(e) => return Err(e),
        };
        records.push(record(k + 1, &next)?);
        iterates.push(next);
    }
}

/// Certificate for a direct sum from certificates of the summands: the
/// hyperplanes of M1 + M2 are H1 + E2 and E1 + H2, and the inherited
/// labeling is re-verified from scratch.
pub fn compose_direct_sum_adjoint(
    cert1: &AdjointCertificate,
    cert2: &AdjointCertificate,
) -> Result<AdjointCheck> {
    let m1 = cert1.base();
    let m2 = cert2.base();
    let base = m1.direct_sum(m2)?;
    let candidate = cert1.candidate().direct_sum(cert2.candidate())?;
    let shift = m1.size();
    let full2 = SubsetMask::full(m2.size());
    let full1 = SubsetMask::full(shift);
    let index_of: HashMap<u32, usize> = base
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(i, f)| (f.mask.bits(), i))
        .collect();
    let mut labeling = Vec::with_capacity(candidate.size());
    for i in 0..cert1.candidate().size() {
        let h1 = cert1.base_hyperplanes()[cert1.labeling()[i]].mask;
        let mask = h1.union(SubsetMask::from_bits(full2.bits() << shift));
        let idx = *index_of.get(&mask.bits()).ok_or_else(|| {
            Error::Internal(format!("{mask} is not a hyperplane of the direct sum"))
        })?;
        labeling.push(idx);
    }
    for j in 0..cert2.candidate().size() {
        let h2 = cert2.base_hyperplanes()[cert2.labeling()[j]].mask;
        let mask = full1.union(SubsetMask::from_bits(h2.bits() << shift));
        let idx = *index_of.get(&mask.bits()).ok_or_else(|| {
            Error::Internal(format!("{mask} is not a hyperplane of the direct sum"))
        })?;
        labeling.push(idx);
    }
    verify_adjoint(&base, &candidate, &labeling)
}

/// The composition E(M) -> E(sigma^2 M) sending e to the element of the
/// second adjoint carrying the hyperplane H[e] of sigma(M). Independent
/// sets of M map to independent sets of sigma^2(M) along this map.
pub fn double_sigma_embedding(m: &Matroid) -> Result<(Vec<usize>, Matroid)> {
    let first = sigma(m)?;
    let second = sigma(&first.matroid)?;
    let index_of: HashMap<u32, usize> = first
        .matroid
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(i, f)| (f.mask.bits(), i))
        .collect();
    let mut map = Vec::with_capacity(m.size());
    for e in 0..m.size() {
        let pulled = first.certificate.phi(SubsetMask::singleton(e));
        let h = *index_of.get(&pulled.bits()).ok_or_else(|| {
            Error::Internal(format!("H[{e}] = {pulled} is not a hyperplane of the adjoint"))
        })?;
        map.push(second.certificate.element_of_hyperplane(h));
    }
    Ok((map, second.matroid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sigma_of_fano_is_fano() {
        let fano = fixtures::fano();
        let s = sigma(&fano).unwrap();
        assert_eq!(s.matroid.size(), 7);
        assert!(s.matroid.is_simple());
        assert!(matroid_iso(&fano, &s.matroid).unwrap().is_some());
    }

    #[test]
    fn sigma_of_u24_is_u24() {
        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        let s = sigma(&u24).unwrap();
        assert_eq!(s.matroid.size(), 4);
        assert!(matroid_iso(&u24, &s.matroid).unwrap().is_some());
    }

    #[test]
    fn sigma_size_is_hyperplane_count() {
        for m in [
            fixtures::fano(),
            fixtures::uniform(3, 4, Some(3)).unwrap(),
            fixtures::uniform(3, 6, Some(5)).unwrap(),
        ] {
            let s = sigma(&m).unwrap();
            assert_eq!(s.matroid.size(), m.hyperplanes().len());
            assert!(s.matroid.is_simple());
        }
    }

    #[test]
    fn sigma_rejects_non_simple_input() {
        let u12 = fixtures::uniform(1, 2, Some(3)).unwrap();
        assert!(matches!(sigma(&u12), Err(Error::NotSimple(_))));
        assert!(matches!(sigma(&fixtures::vamos()), Err(Error::Invalid(_))));
    }

    #[test]
    fn verify_adjoint_identity_labeling_on_u24() {
        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        // hyperplanes of U_{2,4} are the singletons, in element order
        let labeling: Vec<usize> = (0..4).collect();
        let check = verify_adjoint(&u24, &u24, &labeling).unwrap();
        assert!(check.is_valid());
    }

    #[test]
    fn verify_adjoint_rejects_wrong_candidate() {
        let fano = fixtures::fano();
        let u37 = fixtures::uniform(3, 7, Some(7)).unwrap();
        let labeling: Vec<usize> = (0..7).collect();
        match verify_adjoint(&fano, &u37, &labeling).unwrap() {
            AdjointCheck::Invalid(AdjointFailure::NotAHyperplane { element, pulled_back }) => {
                assert_eq!(pulled_back.len(), 3); // three lines through each point
                assert!(element < 7);
            }
            other => panic!("expected a hyperplane failure, got {other:?}"),
        }
    }

    #[test]
    fn verify_adjoint_rejects_bad_labelings() {
        let fano = fixtures::fano();
        let s = sigma(&fano).unwrap();
        assert!(verify_adjoint(&fano, &s.matroid, &[0, 0, 1, 2, 3, 4, 5]).is_err());
        assert!(verify_adjoint(&fano, &s.matroid, &[0, 1, 2]).is_err());
    }

    #[test]
    fn adjoint_map_properties_on_fano() {
        let fano = fixtures::fano();
        let s = sigma(&fano).unwrap();
        let map = adjoint_map(&s.certificate).unwrap();
        // phi(bottom) = everything, phi(top) = the empty flat
        let bottom = map.images.first().unwrap();
        assert_eq!(bottom.1, SubsetMask::full(7));
        let top = map.images.last().unwrap();
        assert_eq!(top.1, SubsetMask::empty());
        // each point maps to the three lines through it
        for (flat, img) in &map.images {
            if flat.rank == 1 {
                assert_eq!(img.len(), 3);
            }
        }
    }

    #[test]
    fn fundamental_hyperplane_examples() {
        let u24 = fixtures::uniform(2, 4, Some(5)).unwrap();
        let b = SubsetMask::from_indices(&[0, 1]);
        let h = fundamental_hyperplane(&u24, b, 1).unwrap();
        assert_eq!(h.mask, SubsetMask::singleton(0));

        let fano = fixtures::fano();
        // elements 0,1,3 are the unit vectors 001, 010, 100
        let b = SubsetMask::from_indices(&[0, 1, 3]);
        let h = fundamental_hyperplane(&fano, b, 3).unwrap();
        assert_eq!(h.mask, SubsetMask::from_indices(&[0, 1, 2]));
        for e in b.iter() {
            let h = fundamental_hyperplane(&fano, b, e).unwrap();
            assert!(b.without(e).is_subset_of(h.mask));
        }
        assert!(fundamental_hyperplane(&fano, b, 2).is_err());
    }

    #[test]
    fn fundamental_bases_hold_on_fano() {
        let fano = fixtures::fano();
        let s = sigma(&fano).unwrap();
        let bases = fano.bases();
        assert_eq!(bases.len(), 28);
        for b in bases {
            assert!(check_fundamental_basis(&s.certificate, b).unwrap());
        }
    }

    #[test]
    fn fundamental_bases_hold_on_pg23() {
        let pg23 = fixtures::pg(2, 3).unwrap();
        let s = sigma(&pg23).unwrap();
        for b in pg23.bases() {
            assert!(check_fundamental_basis(&s.certificate, b).unwrap());
            assert!(crate::derived::check_cocircuit_basis(&s.certificate, b).unwrap());
        }
    }

    #[test]
    fn recognize_projective_examples() {
        assert_eq!(
            recognize_projective(&fixtures::fano()).unwrap(),
            Some(ProjectiveClass::Geometry { rank: 3, order: 2 })
        );
        assert_eq!(
            recognize_projective(&fixtures::pg(2, 3).unwrap()).unwrap(),
            Some(ProjectiveClass::Geometry { rank: 3, order: 3 })
        );
        assert_eq!(recognize_projective(&fixtures::uniform(3, 4, Some(3)).unwrap()).unwrap(), None);
        assert_eq!(
            recognize_projective(&fixtures::uniform(1, 1, Some(2)).unwrap()).unwrap(),
            Some(ProjectiveClass::FreePoint)
        );
        assert_eq!(
            recognize_projective(&fixtures::uniform(2, 5, Some(7)).unwrap()).unwrap(),
            Some(ProjectiveClass::Line { size: 5 })
        );
    }

    #[test]
    fn sequence_fixes_fano_immediately() {
        let report = sigma_sequence(&fixtures::fano(), 8, 2000).unwrap();
        assert_eq!(report.verdict, SequenceVerdict::StabilizedAt(0));
        assert!(report.iterates[0].modular);
    }

    #[test]
    fn sequence_saturates_u34_to_pg23() {
        let u34 = fixtures::uniform(3, 4, Some(3)).unwrap();
        let report = sigma_sequence(&u34, 8, 2000).unwrap();
        let sizes: Vec<usize> = report.iterates.iter().map(|r| r.size).collect();
        assert_eq!(sizes[0], 4);
        assert_eq!(sizes[1], 6);
        let last = report.iterates.last().unwrap();
        assert_eq!(last.size, 13);
        assert_eq!(last.projective, Some(ProjectiveClass::Geometry { rank: 3, order: 3 }));
        match report.verdict {
            SequenceVerdict::StabilizedAt(k) => assert_eq!(k, report.iterates.len() - 2),
            ref v => panic!("expected stabilization, got {v:?}"),
        }
    }

    #[test]
    fn sequence_on_lines_is_constant() {
        let u25 = fixtures::uniform(2, 5, Some(7)).unwrap();
        let report = sigma_sequence(&u25, 4, 2000).unwrap();
        assert_eq!(report.verdict, SequenceVerdict::StabilizedAt(0));
        assert!(report.iterates.iter().all(|r| r.size == 5 && r.rank == 2));
    }

    #[test]
    fn two_cycle_branch_with_a_mocked_oracle() {
        // no represented desk-scale fixture genuinely two-cycles, so the
        // branch is driven by a scripted isomorphism decision: reject all
        // adjacent comparisons, accept the first two-apart comparison
        let u34 = fixtures::uniform(3, 4, Some(3)).unwrap();
        let mut calls = 0usize;
        // comparisons arrive adjacent-first per step: 1:(1,0) 2:(2,1) 3:(2,0)
        let report = sigma_sequence_with(&u34, 8, 2000, |_, _| {
            calls += 1;
            Ok(Some(calls == 3))
        })
        .unwrap();
        assert_eq!(report.verdict, SequenceVerdict::TwoCycleAt(0));
        assert_eq!(report.iterates.len(), 3);
    }

    #[test]
    fn sequence_respects_iteration_cap() {
        let u34 = fixtures::uniform(3, 4, Some(3)).unwrap();
        let report = sigma_sequence(&u34, 1, 2000).unwrap();
        assert!(matches!(report.verdict, SequenceVerdict::CapExceeded { .. }));
        let report = sigma_sequence(&u34, 8, 5).unwrap();
        assert!(matches!(report.verdict, SequenceVerdict::CapExceeded { .. }));
    }

    #[test]
    fn composed_adjoint_of_a_direct_sum() {
        let u23 = fixtures::uniform(2, 3, Some(3)).unwrap();
        let s = sigma(&u23).unwrap();
        let composed = compose_direct_sum_adjoint(&s.certificate, &s.certificate).unwrap();
        let cert = composed.certificate().unwrap();
        assert_eq!(cert.candidate().components().len(), 2);

        let u11 = fixtures::uniform(1, 1, Some(2)).unwrap();
        let s1 = sigma(&u11).unwrap();
        let composed = compose_direct_sum_adjoint(&s1.certificate, &s1.certificate).unwrap();
        let cert = composed.certificate().unwrap();
        assert_eq!(cert.candidate().size(), 2);
        assert_eq!(cert.base().hyperplanes().len(), 2);
    }

    #[test]
    fn sigma_preserves_component_counts() {
        let u23 = fixtures::uniform(2, 3, Some(2)).unwrap();
        let sum = fixtures::fano().direct_sum(&u23).unwrap();
        assert_eq!(sum.components().len(), 2);
        let s = sigma(&sum).unwrap();
        assert_eq!(s.matroid.components().len(), 2);
    }

    #[test]
    fn adjoint_map_verifies_on_a_non_modular_base() {
        let u34 = fixtures::uniform(3, 4, Some(3)).unwrap();
        let s = sigma(&u34).unwrap();
        let map = adjoint_map(&s.certificate).unwrap();
        assert_eq!(map.images.len(), 12); // 1 + 4 + 6 + 1 flats
    }

    #[test]
    fn embedding_into_second_adjoint_preserves_independence() {
        let u34 = fixtures::uniform(3, 4, Some(3)).unwrap();
        let (map, second) = double_sigma_embedding(&u34).unwrap();
        for bits in 0..=SubsetMask::full(4).bits() {
            let s = SubsetMask::from_bits(bits);
            if u34.is_independent(s) {
                let image = s.iter().fold(SubsetMask::empty(), |acc, e| acc.with(map[e]));
                assert!(second.is_independent(image));
            }
        }
    }
}
