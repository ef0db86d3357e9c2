//! Faces of an affine monoid, prime ideals (optionally with an adjoined
//! zero), monoid dimension, and corner-fibre quotients.
//!
//! Faces are computed on the sharp part via the dual cone description; the
//! unit generators are adjoined back into every support. Each face carries
//! an integer supporting functional on the ambient canonical coordinates:
//! zero exactly on the face generators, strictly positive off them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cone;
use crate::lattice::{quotient_group, GroupElement};
use crate::monoid::{AffineMonoid, MonoidError};
use crate::ratlin;

/// Default rank cap for face enumeration.
pub const RANK_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FaceError {
    #[error("monoid is not sharp or weakly toric (cone of the sharp part is not pointed)")]
    NotPointed,
    #[error("cone dimension {dim} exceeds the configured limit {limit}")]
    ConeDimensionExceeded { dim: usize, limit: usize },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// generator indices of the carrier monoid lying on the face
    pub support: BTreeSet<usize>,
    /// supporting functional on ambient canonical coordinates
    pub functional: Vec<BigInt>,
    /// rank of the face inside the sharp part
    pub sharp_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// all strict inclusion pairs (i, j): faces[i] < faces[j]
    pub inclusions: Vec<(usize, usize)>,
    /// rank of the sharp part of the carrier monoid
    pub sharp_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub complement: Face,
    pub includes_zero: bool,
}

pub fn enumerate_faces(m: &AffineMonoid) -> Result<FaceLattice, FaceError> {
    enumerate_faces_limited(m, RANK_LIMIT)
}

pub fn enumerate_faces_limited(m: &AffineMonoid, limit: usize) -> Result<FaceLattice, FaceError> {
    let split = m.sharpen_split();
    let sharp = &split.sharp;
    let rank = sharp.ambient.free_rank;
    if rank > limit {
        return Err(FaceError::ConeDimensionExceeded { dim: rank, limit });
    }
    let free_gens = sharp.free_gens();
    let cone_faces = cone::face_lattice(&free_gens, rank).map_err(|e| match e {
        cone::ConeError::NotPointed => FaceError::NotPointed,
        cone::ConeError::HilbertBoundExceeded { cap } => {
            FaceError::Monoid(MonoidError::HilbertBoundExceeded { cap })
        }
    })?;

    // lift supporting functionals through the sharpening projection
    let proj = &split.projection.projection;
    let ambient_len = m.ambient.len();
    let faces: Vec<Face> = cone_faces
        .into_iter()
        .map(|cf| {
            let functional: Vec<BigInt> = (0..ambient_len)
                .map(|j| {
                    (0..rank)
                        .map(|i| &cf.functional[i] * proj.at(i, j))
                        .sum()
                })
                .collect();
            let span_rows: Vec<Vec<BigInt>> = cf
                .support
                .iter()
                .map(|&i| free_gens[i].clone())
                .collect();
            Face {
                sharp_rank: ratlin::rank_int(&span_rows),
                support: cf.support,
                functional,
            }
        })
        .collect();

    let mut inclusions = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate() {
            if i != j && a.support.is_subset(&b.support) && a.support != b.support {
                inclusions.push((i, j));
            }
        }
    }
    Ok(FaceLattice {
        faces,
        inclusions,
        sharp_rank: rank,
    })
}

/// Prime ideals as complements of faces. Without an adjoined zero, primes
/// are the complements of proper faces; with it, every face contributes
/// (the full monoid's complement is the prime {0}).
pub fn primes(m: &AffineMonoid, with_zero: bool) -> Result<Vec<PrimeIdeal>, FaceError> {
    let lattice = enumerate_faces(m)?;
    let n = m.gen_images.len();
    let full: BTreeSet<usize> = (0..n).collect();
    Ok(lattice
        .faces
        .into_iter()
        .filter(|f| with_zero || f.support != full)
        .map(|complement| PrimeIdeal {
            complement,
            includes_zero: with_zero,
        })
        .collect())
}

/// Longest chain of primes under strict inclusion. Prime inclusion is the
/// reverse of complement-face inclusion.
pub fn monoid_dimension(m: &AffineMonoid, with_zero: bool) -> Result<usize, FaceError> {
    let ps = primes(m, with_zero)?;
    // chain length by DP over reverse support inclusion
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(ps[i].complement.support.len()));
    let mut best = vec![0usize; ps.len()];
    let mut answer = 0;
    for (pos, &i) in order.iter().enumerate() {
        best[i] = 1;
        for &j in &order[..pos] {
            // prime j < prime i iff complement_j > complement_i
            if ps[i].complement.support.is_subset(&ps[j].complement.support)
                && ps[i].complement.support != ps[j].complement.support
                && best[j] + 1 > best[i]
            {
                best[i] = best[j] + 1;
            }
        }
        answer = answer.max(best[i]);
    }
    Ok(answer)
}

/// The corner fibre at a prime: the image of M in M^gp / <F>^gp where F is
/// the complement face.
pub fn corner_fiber(m: &AffineMonoid, p: &PrimeIdeal) -> AffineMonoid {
    let face_gens: Vec<GroupElement> = p
        .complement
        .support
        .iter()
        .map(|&i| m.gen_images[i].clone())
        .collect();
    let q = quotient_group(&m.ambient, &face_gens);
    AffineMonoid {
        ambient: q.group.clone(),
        gen_images: m.gen_images.iter().map(|g| q.project(g)).collect(),
        provenance: None,
    }
}

/// Face of the lattice whose support is exactly the given set, if any.
pub fn face_with_support<'a>(
    lattice: &'a FaceLattice,
    support: &BTreeSet<usize>,
) -> Option<&'a Face> {
    lattice.faces.iter().find(|f| &f.support == support)
}

/// Smallest face containing the given generator indices.
pub fn minimal_face_containing<'a>(
    lattice: &'a FaceLattice,
    indices: &BTreeSet<usize>,
) -> &'a Face {
    lattice
        .faces
        .iter()
        .filter(|f| indices.is_subset(&f.support))
        .min_by_key(|f| f.support.len())
        .expect("the full monoid contains everything")
}

#[allow(dead_code)]
fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AbelianGroupData;
    use crate::monoid::Membership;
    use num_traits::Signed;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn pyramid() -> AffineMonoid {
        AffineMonoid {
            ambient: AbelianGroupData::free(3),
            gen_images: vec![v(&[1, 0, 0]), v(&[0, 1, 1]), v(&[0, 1, 0]), v(&[1, 0, 1])],
            provenance: None,
        }
    }

    fn f_vector(l: &FaceLattice) -> Vec<usize> {
        let mut counts = vec![0usize; l.sharp_rank + 1];
        for f in &l.faces {
            counts[f.sharp_rank] += 1;
        }
        counts
    }

    #[test]
    fn faces_of_quadrant() {
        let l = enumerate_faces(&AffineMonoid::free(2)).unwrap();
        assert_eq!(l.faces.len(), 4);
        assert_eq!(f_vector(&l), vec![1, 2, 1]);
    }

    #[test]
    fn faces_of_pyramid() {
        let l = enumerate_faces(&pyramid()).unwrap();
        assert_eq!(f_vector(&l), vec![1, 4, 4, 1]);
        // supporting functional certificates
        let m = pyramid();
        for f in &l.faces {
            for (i, g) in m.gen_images.iter().enumerate() {
                let val = cone::dot(&f.functional, g);
                if f.support.contains(&i) {
                    assert!(val.is_zero());
                } else {
                    assert!(val.is_positive());
                }
            }
        }
    }

    #[test]
    fn faces_of_trivial() {
        let l = enumerate_faces(&AffineMonoid::trivial()).unwrap();
        assert_eq!(l.faces.len(), 1);
    }

    #[test]
    fn faces_with_units_adjoined() {
        // N x Z: unit generators belong to every face
        let m = AffineMonoid {
            ambient: AbelianGroupData::free(2),
            gen_images: vec![v(&[1, 0]), v(&[0, 1]), v(&[0, -1])],
            provenance: None,
        };
        let l = enumerate_faces(&m).unwrap();
        assert_eq!(l.faces.len(), 2);
        for f in &l.faces {
            assert!(f.support.contains(&1) && f.support.contains(&2));
        }
    }

    /// Brute-force oracle: a generator subset (closed under the support of
    /// its members) spans a face iff no sum of up to 6 generators with an
    /// index outside the subset lands inside the spanned submonoid.
    #[test]
    fn faces_vs_bruteforce() {
        let cases = vec![
            AffineMonoid::free(2),
            pyramid(),
            AffineMonoid {
                ambient: AbelianGroupData::free(2),
                gen_images: vec![v(&[1, 0]), v(&[1, 2])],
                provenance: None,
            },
            AffineMonoid {
                ambient: AbelianGroupData::free(2),
                gen_images: vec![v(&[2, 1]), v(&[1, 2]), v(&[1, 1])],
                provenance: None,
            },
        ];
        for m in cases {
            let n = m.gen_images.len();
            let got: BTreeSet<BTreeSet<usize>> = enumerate_faces(&m)
                .unwrap()
                .faces
                .into_iter()
                .map(|f| f.support)
                .collect();
            let mut brute: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
            for mask in 0..(1u32 << n) {
                let s: BTreeSet<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let sub = AffineMonoid {
                    ambient: m.ambient.clone(),
                    gen_images: s.iter().map(|&i| m.gen_images[i].clone()).collect(),
                    provenance: None,
                };
                // closure: every generator inside the submonoid is in s
                let closed = (0..n).all(|i| {
                    s.contains(&i)
                        || !matches!(
                            sub_member(&sub, &m.gen_images[i]),
                            Membership::Yes(_)
                        )
                });
                if !closed {
                    continue;
                }
                // face test on words of degree <= 6
                let mut face = true;
                let mut word = vec![0u64; n];
                'words: loop {
                    let deg: u64 = word.iter().sum();
                    if deg > 0 && word.iter().enumerate().any(|(i, &c)| c > 0 && !s.contains(&i)) {
                        let mut elem = m.ambient.zero();
                        for (i, &c) in word.iter().enumerate() {
                            let scaled = m.ambient.scalar_mul(&BigInt::from(c), &m.gen_images[i]);
                            elem = m.ambient.add(&elem, &scaled);
                        }
                        if matches!(sub_member(&sub, &elem), Membership::Yes(_)) {
                            face = false;
                        }
                    }
                    // next word of total degree <= 6
                    let mut c = 0;
                    loop {
                        if c == n {
                            break 'words;
                        }
                        word[c] += 1;
                        if word.iter().sum::<u64>() > 6 {
                            word[c] = 0;
                            c += 1;
                        } else {
                            break;
                        }
                    }
                    if !face {
                        break;
                    }
                }
                if face {
                    brute.insert(s);
                }
            }
            assert_eq!(got, brute, "monoid {:?}", m.gen_images);
        }
    }

    fn sub_member(sub: &AffineMonoid, p: &GroupElement) -> Membership {
        sub.membership(p, None)
    }

    #[test]
    fn primes_counts() {
        // N^k with zero: 2^k primes
        for k in 0..=4usize {
            let ps = primes(&AffineMonoid::free(k), true).unwrap();
            assert_eq!(ps.len(), 1 << k);
        }
        // N with zero and without
        assert_eq!(primes(&AffineMonoid::free(1), true).unwrap().len(), 2);
        assert_eq!(primes(&AffineMonoid::free(1), false).unwrap().len(), 1);
        // pyramid with zero: 10
        assert_eq!(primes(&pyramid(), true).unwrap().len(), 10);
    }

    #[test]
    fn dimension_fixtures() {
        assert_eq!(monoid_dimension(&AffineMonoid::trivial(), true).unwrap(), 1);
        for k in 0..=5usize {
            assert_eq!(monoid_dimension(&AffineMonoid::free(k), true).unwrap(), k + 1);
        }
        assert_eq!(monoid_dimension(&pyramid(), true).unwrap(), 4);
    }

    #[test]
    fn corner_fiber_fixtures() {
        // N^3, prime complement = face on {e1}: fibre N^2
        let m = AffineMonoid::free(3);
        let ps = primes(&m, true).unwrap();
        let p = ps
            .iter()
            .find(|p| p.complement.support == BTreeSet::from([0]))
            .unwrap();
        let f = corner_fiber(&m, p);
        assert_eq!(f.ambient, AbelianGroupData::free(2));
        assert_eq!(f.classify().unwrap().is_free, true);

        // P = {0}: complement is everything, fibre trivial
        let p0 = ps
            .iter()
            .find(|p| p.complement.support.len() == 3)
            .unwrap();
        assert!(corner_fiber(&m, p0).ambient.is_trivial());

        // pyramid at the ray <p1>: fibre is N^2
        let py = pyramid();
        let ps = primes(&py, true).unwrap();
        let p = ps
            .iter()
            .find(|p| p.complement.support == BTreeSet::from([0]))
            .unwrap();
        let f = corner_fiber(&py, p);
        let c = f.classify().unwrap();
        assert_eq!(c.rank, 2);
        assert!(c.is_free);
    }

    #[test]
    fn fiber_dimension_grading() {
        // dim(fiber with zero) = codim + 1 on the pyramid
        let py = pyramid();
        let lat = enumerate_faces(&py).unwrap();
        for p in primes(&py, true).unwrap() {
            let fiber = corner_fiber(&py, &p);
            let codim = lat.sharp_rank - p.complement.sharp_rank;
            assert_eq!(monoid_dimension(&fiber, true).unwrap(), codim + 1);
        }
    }
}
