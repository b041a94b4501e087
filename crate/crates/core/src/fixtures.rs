//! Built-in fixture catalogue.
//!
//! Every fixture name accepted by the CLI resolves here:
//! `fano`, `nonfano`, `vamos`, `pg:D,Q` (projective geometry over a prime Q),
//! `u:R,N` / `uniform:R,N` with an optional `:p=P` field, and direct sums
//! joined with `+`.

use crate::error::{Error, Result};
use crate::field::{MatrixF, PrimeModulus};
use crate::matroid::{GroundSet, Matroid, SubsetMask};

/// The Fano plane PG(2,2): all seven nonzero columns of GF(2)^3, column i
/// holding the binary digits of i+1.
pub fn fano() -> Matroid {
    let p = PrimeModulus::new(2).unwrap();
    let cols: Vec<Vec<u8>> = (1u8..=7).map(|v| vec![(v >> 2) & 1, (v >> 1) & 1, v & 1]).collect();
    let a = MatrixF::from_columns(p, 3, &cols).unwrap();
    Matroid::from_matrix(a).unwrap()
}

/// The non-Fano configuration: the same seven column patterns read over
/// GF(3), which frees the triple {011, 101, 110}.
pub fn nonfano() -> Matroid {
    let p = PrimeModulus::new(3).unwrap();
    let cols: Vec<Vec<u8>> = (1u8..=7).map(|v| vec![(v >> 2) & 1, (v >> 1) & 1, v & 1]).collect();
    let a = MatrixF::from_columns(p, 3, &cols).unwrap();
    Matroid::from_matrix(a).unwrap()
}

/// Projectively normalized representatives of the points of PG(dim, q),
/// in increasing base-q numeric order.
fn projective_points(dim: usize, q: PrimeModulus) -> Vec<Vec<u8>> {
    let r = dim + 1;
    let total = (q.get() as u64).pow(r as u32);
    let mut points = Vec::new();
    for code in 1..total {
        let mut v = vec![0u8; r];
        let mut rest = code;
        for i in (0..r).rev() {
            v[i] = (rest % q.get() as u64) as u8;
            rest /= q.get() as u64;
        }
        if v.iter().find(|&&e| e != 0) == Some(&1) {
            points.push(v);
        }
    }
    points
}

/// The projective geometry PG(dim, q) as the matroid of all its points;
/// q must be prime here. PG(2,2) coincides with the Fano plane.
pub fn pg(dim: usize, q: u16) -> Result<Matroid> {
    if dim == 0 {
        return Err(Error::Invalid("projective dimension must be at least 1".into()));
    }
    let p = PrimeModulus::new(q)?;
    let points = projective_points(dim, p);
    let a = MatrixF::from_columns(p, dim + 1, &points)?;
    Matroid::from_matrix(a)
}

/// Searches for `n` projective points of GF(p)^r with every r-subset
/// independent, in canonical point order; `None` when no such arc exists.
fn generic_arc(r: usize, n: usize, p: PrimeModulus) -> Option<Vec<Vec<u8>>> {
    let points = projective_points(r - 1, p);
    let modulus = p;
    fn extends(chosen: &[Vec<u8>], cand: &[u8], r: usize, p: PrimeModulus) -> bool {
        // the candidate must avoid the span of every (r-1)-subset of chosen
        let k = chosen.len();
        if k < r {
            let mut cols: Vec<Vec<u8>> = chosen.to_vec();
            cols.push(cand.to_vec());
            let m = MatrixF::from_columns(p, r, &cols).unwrap();
            return m.rref().rank == k + 1;
        }
        let subsets: Vec<SubsetMask> =
            SubsetMask::subsets_of_size(k, r - 1).collect();
        for s in subsets {
            let mut cols: Vec<Vec<u8>> = s.iter().map(|i| chosen[i].clone()).collect();
            cols.push(cand.to_vec());
            let m = MatrixF::from_columns(p, r, &cols).unwrap();
            if m.rref().rank < r {
                return false;
            }
        }
        true
    }
    fn search(
        points: &[Vec<u8>],
        start: usize,
        chosen: &mut Vec<Vec<u8>>,
        n: usize,
        r: usize,
        p: PrimeModulus,
    ) -> bool {
        if chosen.len() == n {
            return true;
        }
        for i in start..points.len() {
            if extends(chosen, &points[i], r, p) {
                chosen.push(points[i].clone());
                if search(points, i + 1, chosen, n, r, p) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if search(&points, 0, &mut chosen, n, r, modulus) {
        Some(chosen)
    } else {
        None
    }
}

/// The uniform matroid U_{r,n} as a vector matroid with generic columns.
///
/// For r = 1 the columns are n copies of (1). For r >= 2 the columns form
/// an n-arc found by deterministic search; with no prime given, the
/// smallest prime admitting an arc is used. Fails when no prime up to 251
/// works.
pub fn uniform(r: usize, n: usize, p: Option<u16>) -> Result<Matroid> {
    if r == 0 || n < r {
        return Err(Error::Invalid(format!("uniform matroid needs 1 <= rank <= size, got U_{{{r},{n}}}")));
    }
    if n > crate::matroid::GROUND_CAP {
        return Err(Error::Resource(format!("uniform matroid on {n} elements exceeds the cap")));
    }
    let build = |q: u16| -> Result<Option<Matroid>> {
        let modulus = PrimeModulus::new(q)?;
        if r == 1 {
            let cols = vec![vec![1u8]; n];
            let a = MatrixF::from_columns(modulus, 1, &cols)?;
            return Ok(Some(Matroid::from_matrix(a)?));
        }
        match generic_arc(r, n, modulus) {
            Some(cols) => {
                let a = MatrixF::from_columns(modulus, r, &cols)?;
                Ok(Some(Matroid::from_matrix(a)?))
            }
            None => Ok(None),
        }
    };
    match p {
        Some(q) => build(q)?.ok_or_else(|| {
            Error::Invalid(format!("no generic columns for U_{{{r},{n}}} over GF({q})"))
        }),
        None => {
            for q in [2u16, 3, 5, 7, 11, 13, 17, 19, 23] {
                if let Some(m) = build(q)? {
                    return Ok(m);
                }
            }
            Err(Error::Invalid(format!("no small prime admits generic columns for U_{{{r},{n}}}")))
        }
    }
}

/// The Vamos matroid: rank 4 on 8 elements, bases are all 4-subsets except
/// five circuit-hyperplanes pairing up {0,1},{2,3},{4,5},{6,7}.
pub fn vamos() -> Matroid {
    let missing: Vec<SubsetMask> = [
        [0, 1, 2, 3],
        [0, 1, 4, 5],
        [0, 1, 6, 7],
        [2, 3, 4, 5],
        [2, 3, 6, 7],
    ]
    .iter()
    .map(|q| SubsetMask::from_indices(q))
    .collect();
    let bases: Vec<SubsetMask> = SubsetMask::subsets_of_size(8, 4)
        .filter(|s| !missing.contains(s))
        .collect();
    Matroid::from_bases(8, bases).expect("the Vamos basis family satisfies exchange")
}

/// The free matroid on zero elements; the ground set of a derived matroid
/// with no circuits.
pub fn empty_matroid() -> Matroid {
    Matroid::from_bases_unchecked(GroundSet::new(0).unwrap(), vec![SubsetMask::empty()])
}

fn parse_two(nums: &str, what: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = nums.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Invalid(format!("{what} takes two comma-separated numbers, got '{nums}'")));
    }
    let a = parts[0]
        .parse::<usize>()
        .map_err(|_| Error::Invalid(format!("bad number '{}' in {what}", parts[0])))?;
    let b = parts[1]
        .parse::<usize>()
        .map_err(|_| Error::Invalid(format!("bad number '{}' in {what}", parts[1])))?;
    Ok((a, b))
}

fn parse_single(name: &str) -> Result<Matroid> {
    match name {
        "fano" => return Ok(fano()),
        "nonfano" => return Ok(nonfano()),
        "vamos" => return Ok(vamos()),
        _ => {}
    }
    let fields: Vec<&str> = name.split(':').collect();
    match fields[0] {
        "pg" if fields.len() == 2 => {
            let (d, q) = parse_two(fields[1], "pg")?;
            pg(d, q as u16)
        }
        "u" | "uniform" if fields.len() == 2 || fields.len() == 3 => {
            let (r, n) = parse_two(fields[1], "uniform")?;
            let p = match fields.get(2) {
                None => None,
                Some(f) => {
                    let q = f
                        .strip_prefix("p=")
                        .ok_or_else(|| Error::Invalid(format!("expected p=<prime>, got '{f}'")))?;
                    Some(q.parse::<u16>().map_err(|_| Error::Invalid(format!("bad prime '{q}'")))?)
                }
            };
            uniform(r, n, p)
        }
        _ => Err(Error::Invalid(format!("unknown fixture '{name}'"))),
    }
}

/// Resolves a catalogue name, with `+` building direct sums left to right.
pub fn parse_fixture(name: &str) -> Result<Matroid> {
    let mut parts = name.split('+');
    let first = parts.next().ok_or_else(|| Error::Invalid("empty fixture name".into()))?;
    let mut m = parse_single(first.trim())?;
    for part in parts {
        let next = parse_single(part.trim())?;
        m = m.direct_sum(&next)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg_sizes() {
        assert_eq!(pg(2, 2).unwrap().size(), 7);
        assert_eq!(pg(2, 3).unwrap().size(), 13);
        assert_eq!(pg(3, 2).unwrap().size(), 15);
        assert!(pg(2, 2).unwrap().same_rank_function(&fano()));
    }

    #[test]
    fn uniform_is_uniform() {
        for (r, n, p) in [(2, 4, Some(5)), (2, 5, Some(7)), (3, 4, Some(3)), (3, 6, None), (1, 2, Some(3))] {
            let m = uniform(r, n, p).unwrap();
            assert_eq!((m.rank(), m.size()), (r, n));
            for bits in 0..=SubsetMask::full(n).bits() {
                let s = SubsetMask::from_bits(bits);
                assert_eq!(m.rank_of(s), s.len().min(r), "U_{{{r},{n}}} rank at {s}");
            }
        }
    }

    #[test]
    fn uniform_rejects_impossible() {
        // the projective line over GF(2) has only 3 points
        assert!(uniform(2, 4, Some(2)).is_err());
        assert!(uniform(0, 3, Some(2)).is_err());
        assert!(uniform(3, 2, Some(2)).is_err());
    }

    #[test]
    fn nonfano_has_one_free_triple() {
        let nf = nonfano();
        let dependent_triples = SubsetMask::subsets_of_size(7, 3)
            .filter(|&s| nf.rank_of(s) == 2)
            .count();
        assert_eq!(dependent_triples, 6);
        // {011, 101, 110} = elements {2, 4, 5} is independent over GF(3)
        assert_eq!(nf.rank_of(SubsetMask::from_indices(&[2, 4, 5])), 3);
        let f = fano();
        assert_eq!(f.rank_of(SubsetMask::from_indices(&[2, 4, 5])), 2);
    }

    #[test]
    fn fixture_names_resolve() {
        assert_eq!(parse_fixture("fano").unwrap().size(), 7);
        assert_eq!(parse_fixture("u:2,4:p=5").unwrap().size(), 4);
        assert_eq!(parse_fixture("uniform:2,4:p=5").unwrap().size(), 4);
        assert_eq!(parse_fixture("pg:2,3").unwrap().size(), 13);
        let sum = parse_fixture("u:2,3+u:2,3").unwrap();
        assert_eq!((sum.size(), sum.rank()), (6, 4));
        assert!(parse_fixture("mystery").is_err());
        assert!(parse_fixture("u:2").is_err());
    }
}
