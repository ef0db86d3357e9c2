//! Rational polyhedral cones over the integer lattice: double description,
//! polar cones, Hilbert bases and face lattices.
//!
//! Rays and functionals are primitive integer vectors. Cones that are not
//! full-dimensional are handled by restricting to the saturated lattice of
//! their span.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{smith_normal_form, IntMatrix};
use crate::ratlin;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("cone is not pointed")]
    NotPointed,
    #[error("hilbert basis candidate count exceeded cap {cap}")]
    HilbertBoundExceeded { cap: usize },
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divide out the gcd of the entries; zero vectors pass through.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

fn rat_floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// Rays and lineality of `{ x : a.x >= 0 for each a in inequalities }`.
///
/// Incremental double description over a shrinking lineality space; after
/// each cut, rays failing the active-constraint rank test are discarded, so
/// the returned rays are exactly the extreme rays modulo lineality.
pub fn dd_rays(
    inequalities: &[Vec<BigInt>],
    dim: usize,
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lines: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    for a in inequalities {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        let line_hit = lines.iter().position(|l| !dot(a, l).is_zero());
        if let Some(p) = line_hit {
            // The constraint cuts the lineality: one line becomes a ray, the
            // rest are projected onto the hyperplane.
            let mut l0 = lines.remove(p);
            if dot(a, &l0).is_negative() {
                for x in &mut l0 {
                    *x = -x.clone();
                }
            }
            let al0 = dot(a, &l0);
            for l in &mut lines {
                let al = dot(a, l);
                let projected: Vec<BigInt> = l
                    .iter()
                    .zip(&l0)
                    .map(|(li, l0i)| &al0 * li - &al * l0i)
                    .collect();
                *l = primitive(projected);
            }
            for r in &mut rays {
                let ar = dot(a, r);
                let projected: Vec<BigInt> = r
                    .iter()
                    .zip(&l0)
                    .map(|(ri, l0i)| &al0 * ri - &ar * l0i)
                    .collect();
                *r = primitive(projected);
            }
            rays.push(primitive(l0));
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
            if vals.iter().all(|v| !v.is_negative()) {
                processed.push(a.clone());
                continue;
            }
            let mut next: Vec<Vec<BigInt>> = Vec::new();
            for (r, v) in rays.iter().zip(&vals) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in rays.iter().zip(&vals) {
                if !vp.is_positive() {
                    continue;
                }
                for (n, vn) in rays.iter().zip(&vals) {
                    if !vn.is_negative() {
                        continue;
                    }
                    let combo: Vec<BigInt> = p
                        .iter()
                        .zip(n)
                        .map(|(pi, ni)| vp * ni - vn * pi)
                        .collect();
                    next.push(primitive(combo));
                }
            }
            rays = next;
        }
        processed.push(a.clone());
        rays = prune_rays(rays, &processed, &lines, dim);
    }
    (rays, lines)
}

/// Keep extreme rays only: active constraints must have rank
/// `dim - lineality - 1`, and parallel duplicates collapse.
fn prune_rays(
    rays: Vec<Vec<BigInt>>,
    processed: &[Vec<BigInt>],
    lines: &[Vec<BigInt>],
    dim: usize,
) -> Vec<Vec<BigInt>> {
    let needed = dim - lines.len() - 1;
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut out = Vec::new();
    for r in rays {
        if r.iter().all(|x| x.is_zero()) || seen.contains(&r) {
            continue;
        }
        let active: Vec<Vec<BigInt>> = processed
            .iter()
            .filter(|a| dot(a, &r).is_zero())
            .cloned()
            .collect();
        if ratlin::rank_int(&active) == needed {
            seen.insert(r.clone());
            out.push(r);
        }
    }
    out.sort();
    out
}

/// Generating set of the polar cone `{ l : l.g >= 0 for all g }`, including
/// plus/minus a basis of its lineality (the orthogonal complement of the
/// span of the generators). Membership in cone(gens) is equivalent to all
/// returned functionals being nonnegative.
pub fn polar_rays(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let (rays, lines) = dd_rays(gens, dim);
    let mut out = rays;
    for l in lines {
        let neg: Vec<BigInt> = l.iter().map(|x| -x.clone()).collect();
        out.push(l);
        out.push(neg);
    }
    out
}

/// `v` lies in the rational cone spanned by `gens`.
pub fn cone_member(polar: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    polar.iter().all(|ell| !dot(ell, v).is_negative())
}

/// Extreme rays and lineality of `cone(gens)`.
pub fn extreme_rays(gens: &[Vec<BigInt>], dim: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let polar = polar_rays(gens, dim);
    dd_rays(&polar, dim)
}

/// Saturated lattice of the rational span of a set of vectors, with a basis
/// and an integer coordinate projection.
#[derive(Clone, Debug)]
pub struct SpanLattice {
    pub dim: usize,
    pub basis: Vec<Vec<BigInt>>,
    proj: IntMatrix,
}

impl SpanLattice {
    pub fn of(vectors: &[Vec<BigInt>], dim: usize) -> SpanLattice {
        let a = IntMatrix::from_cols(dim, vectors);
        let snf = smith_normal_form(&a);
        let r = snf.diagonal.len();
        // columns of U^{-1} at the nonzero-diagonal rows form a saturated basis
        let uinv = invert_unimodular(&snf.u);
        let basis: Vec<Vec<BigInt>> = (0..r).map(|i| uinv.col(i)).collect();
        let mut proj = IntMatrix::zero(r, dim);
        for i in 0..r {
            for j in 0..dim {
                *proj.at_mut(i, j) = snf.u.at(i, j).clone();
            }
        }
        SpanLattice { dim, basis, proj }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn to_ambient(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.rank());
        let mut v = vec![BigInt::zero(); self.dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for i in 0..self.dim {
                v[i] += c * &b[i];
            }
        }
        v
    }

    /// Integer coordinates of `v`, provided `v` lies in the span.
    pub fn to_span(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let coords = self.proj.mul_vec(v);
        if self.to_ambient(&coords) == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Lift a functional on span coordinates to an ambient integer
    /// functional agreeing on the span.
    pub fn lift_functional(&self, ell: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(ell.len(), self.rank());
        (0..self.dim)
            .map(|j| {
                ell.iter()
                    .enumerate()
                    .map(|(i, c)| c * self.proj.at(i, j))
                    .sum()
            })
            .collect()
    }
}

fn invert_unimodular(m: &IntMatrix) -> IntMatrix {
    let rows: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| BigRational::from(m.at(i, j).clone()))
                .collect()
        })
        .collect();
    let n = m.rows;
    let mut aug: Vec<Vec<BigRational>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            let mut id = vec![BigRational::zero(); n];
            id[i] = BigRational::one();
            r.extend(id);
            r
        })
        .collect();
    let pivots = ratlin::rref(&mut aug);
    assert_eq!(pivots.len(), n, "matrix not invertible");
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let q = &aug[i][n + j];
            assert!(q.is_integer(), "inverse of unimodular matrix must be integral");
            *out.at_mut(i, j) = q.to_integer();
        }
    }
    out
}

/// Hilbert basis of `cone(gens)` intersected with the integer lattice.
///
/// Requires the cone to be pointed. Candidates come from lattice points of
/// half-open parallelepipeds over linearly independent generator subsets
/// (Caratheodory), then irreducibles are filtered in order of a strictly
/// positive functional. Aborts with `HilbertBoundExceeded` when the
/// candidate count passes `cap`.
pub fn hilbert_basis(
    gens: &[Vec<BigInt>],
    dim: usize,
    cap: usize,
) -> Result<Vec<Vec<BigInt>>, ConeError> {
    let gens: Vec<Vec<BigInt>> = {
        let mut set = BTreeSet::new();
        for g in gens {
            let p = primitive(g.clone());
            if !p.iter().all(|x| x.is_zero()) {
                set.insert(p);
            }
        }
        set.into_iter().collect()
    };
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let span = SpanLattice::of(&gens, dim);
    let k = span.rank();
    let sgens: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| span.to_span(g).expect("generator in own span"))
        .collect();

    let polar = polar_rays(&sgens, k);
    // pointed iff the polar is full-dimensional
    if ratlin::rank_int(&polar) != k {
        return Err(ConeError::NotPointed);
    }
    let ell0: Vec<BigInt> = (0..k)
        .map(|i| polar.iter().map(|p| p[i].clone()).sum())
        .collect();

    let mut candidates: BTreeSet<Vec<BigInt>> = sgens.iter().cloned().collect();
    let mut subset = Vec::new();
    enumerate_subsets(&sgens, k, 0, &mut subset, &mut candidates, cap)?;
    if candidates.len() > cap {
        return Err(ConeError::HilbertBoundExceeded { cap });
    }

    let mut ordered: Vec<(BigInt, Vec<BigInt>)> = candidates
        .into_iter()
        .map(|c| (dot(&ell0, &c), c))
        .collect();
    ordered.sort();

    let mut hb: Vec<Vec<BigInt>> = Vec::new();
    for (_, cand) in ordered {
        let reducible = hb.iter().any(|h| {
            let diff: Vec<BigInt> = cand.iter().zip(h).map(|(a, b)| a - b).collect();
            !diff.iter().all(|x| x.is_zero()) && cone_member(&polar, &diff)
        });
        if !reducible {
            hb.push(cand);
        }
    }

    let mut out: Vec<Vec<BigInt>> = hb.iter().map(|h| span.to_ambient(h)).collect();
    out.sort();
    Ok(out)
}

fn enumerate_subsets(
    sgens: &[Vec<BigInt>],
    k: usize,
    from: usize,
    subset: &mut Vec<usize>,
    candidates: &mut BTreeSet<Vec<BigInt>>,
    cap: usize,
) -> Result<(), ConeError> {
    if subset.len() == k {
        parallelepiped_points(sgens, subset, candidates, cap)?;
        return Ok(());
    }
    if sgens.len() - from < k - subset.len() {
        return Ok(());
    }
    for i in from..sgens.len() {
        subset.push(i);
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&j| sgens[j].clone()).collect();
        if ratlin::rank_int(&rows) == subset.len() {
            enumerate_subsets(sgens, k, i + 1, subset, candidates, cap)?;
        }
        subset.pop();
    }
    Ok(())
}

/// Nonzero lattice points of the half-open parallelepiped spanned by a
/// linearly independent k-subset, via coset representatives of Z^k / T Z^k.
fn parallelepiped_points(
    sgens: &[Vec<BigInt>],
    subset: &[usize],
    candidates: &mut BTreeSet<Vec<BigInt>>,
    cap: usize,
) -> Result<(), ConeError> {
    let k = subset.len();
    let cols: Vec<Vec<BigInt>> = subset.iter().map(|&j| sgens[j].clone()).collect();
    let t = IntMatrix::from_cols(k, &cols);
    let snf = smith_normal_form(&t);
    let uinv = invert_unimodular(&snf.u);
    let trat: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigRational::from(t.at(i, j).clone()))
                .collect()
        })
        .collect();

    let index: BigInt = snf.diagonal.iter().product();
    let index: usize = usize::try_from(&index)
        .ok()
        .filter(|&n| n <= cap)
        .ok_or(ConeError::HilbertBoundExceeded { cap })?;
    let _ = index;

    let mut digits = vec![BigInt::zero(); k];
    loop {
        // x = U^{-1} * digits is a coset representative
        let x = uinv.mul_vec(&digits);
        // shift into the half-open parallelepiped: subtract floor of the
        // rational coordinates with respect to the subset
        let b: Vec<BigRational> = x.iter().map(|v| BigRational::from(v.clone())).collect();
        let lam = ratlin::solve(&trat, &b).expect("independent subset");
        let mut shifted = x;
        for (j, l) in lam.iter().enumerate() {
            let f = rat_floor(l);
            if f.is_zero() {
                continue;
            }
            for i in 0..k {
                let d = &f * t.at(i, j);
                shifted[i] -= d;
            }
        }
        if !shifted.iter().all(|v| v.is_zero()) {
            candidates.insert(shifted);
            if candidates.len() > cap {
                return Err(ConeError::HilbertBoundExceeded { cap });
            }
        }
        // increment mixed-radix digits over the diagonal
        let mut carry = true;
        for i in 0..k {
            if !carry {
                break;
            }
            digits[i] += 1;
            if digits[i] >= snf.diagonal[i] {
                digits[i] = BigInt::zero();
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    Ok(())
}

/// A face of a pointed cone: the generator indices lying on it and an
/// integer supporting functional vanishing exactly on the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFace {
    pub support: BTreeSet<usize>,
    pub functional: Vec<BigInt>,
}

/// All faces of a pointed `cone(gens)` (including the cone itself and its
/// minimal face {0}), sorted by support cardinality then lexicographic
/// support.
pub fn face_lattice(gens: &[Vec<BigInt>], dim: usize) -> Result<Vec<ConeFace>, ConeError> {
    let nonzero: Vec<Vec<BigInt>> = gens.iter().filter(|g| !g.iter().all(|x| x.is_zero())).cloned().collect();
    let full: BTreeSet<usize> = (0..gens.len()).collect();
    if nonzero.is_empty() {
        return Ok(vec![ConeFace {
            support: full,
            functional: vec![BigInt::zero(); dim],
        }]);
    }
    let span = SpanLattice::of(&nonzero, dim);
    let k = span.rank();
    let sgens: Vec<Option<Vec<BigInt>>> = gens
        .iter()
        .map(|g| {
            if g.iter().all(|x| x.is_zero()) {
                None
            } else {
                Some(span.to_span(g).expect("generator in span"))
            }
        })
        .collect();
    let snonzero: Vec<Vec<BigInt>> = sgens.iter().flatten().cloned().collect();
    let polar = polar_rays(&snonzero, k);
    if ratlin::rank_int(&polar) != k {
        return Err(ConeError::NotPointed);
    }
    // facet normals with their supports; zero generators lie on every face
    let facet_supports: Vec<(Vec<BigInt>, BTreeSet<usize>)> = polar
        .iter()
        .map(|ell| {
            let sup: BTreeSet<usize> = (0..gens.len())
                .filter(|&i| match &sgens[i] {
                    None => true,
                    Some(g) => dot(ell, g).is_zero(),
                })
                .collect();
            (ell.clone(), sup)
        })
        .collect();

    let mut supports: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    supports.insert(full.clone());
    loop {
        let mut added = false;
        let current: Vec<BTreeSet<usize>> = supports.iter().cloned().collect();
        for s in &current {
            for (_, fs) in &facet_supports {
                let inter: BTreeSet<usize> = s.intersection(fs).cloned().collect();
                if supports.insert(inter) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    let mut faces: Vec<ConeFace> = supports
        .into_iter()
        .map(|support| {
            let mut ell = vec![BigInt::zero(); k];
            for (normal, fs) in &facet_supports {
                if support.is_subset(fs) {
                    for i in 0..k {
                        ell[i] += &normal[i];
                    }
                }
            }
            ConeFace {
                functional: span.lift_functional(&ell),
                support,
            }
        })
        .collect();
    faces.sort_by(|a, b| {
        (a.support.len(), &a.support).cmp(&(b.support.len(), &b.support))
    });
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dd_quadrant() {
        let (rays, lines) = dd_rays(&[v(&[1, 0]), v(&[0, 1])], 2);
        assert!(lines.is_empty());
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn dd_halfspace_keeps_lineality() {
        let (rays, lines) = dd_rays(&[v(&[1, 0, 0])], 3);
        assert_eq!(rays, vec![v(&[1, 0, 0])]);
        assert_eq!(lines.len(), 2);
    }

    #[test]
    fn dd_no_constraints() {
        let (rays, lines) = dd_rays(&[], 3);
        assert!(rays.is_empty());
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn polar_of_quadrant_is_quadrant() {
        let polar = polar_rays(&[v(&[1, 0]), v(&[0, 1])], 2);
        assert_eq!(polar, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn polar_detects_low_dimension() {
        // span of (1,1) only: polar contains the +-(1,-1) line
        let polar = polar_rays(&[v(&[1, 1])], 2);
        assert!(polar.len() >= 2);
        for p in &polar {
            assert!(!dot(p, &v(&[1, 1])).is_negative());
        }
        assert!(!cone_member(&polar, &v(&[1, 0])));
        assert!(cone_member(&polar, &v(&[2, 2])));
    }

    #[test]
    fn extreme_rays_drop_redundant_generators() {
        let (rays, lines) = extreme_rays(&[v(&[1, 0]), v(&[1, 1]), v(&[1, 2])], 2);
        assert!(lines.is_empty());
        assert_eq!(rays, vec![v(&[1, 0]), v(&[1, 2])]);
    }

    #[test]
    fn hilbert_quadrant() {
        let hb = hilbert_basis(&[v(&[1, 0]), v(&[0, 1])], 2, 10_000).unwrap();
        assert_eq!(hb, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn hilbert_interior_point_needed() {
        // classic: cone <(1,0),(1,2)> needs the interior generator (1,1)
        let hb = hilbert_basis(&[v(&[1, 0]), v(&[1, 2])], 2, 10_000).unwrap();
        assert_eq!(hb, vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
    }

    #[test]
    fn hilbert_scaled_generator_reduces() {
        let hb = hilbert_basis(&[v(&[2, 0]), v(&[0, 3])], 2, 10_000).unwrap();
        assert_eq!(hb, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn hilbert_low_dimensional() {
        let hb = hilbert_basis(&[v(&[2, 4])], 2, 10_000).unwrap();
        assert_eq!(hb, vec![v(&[1, 2])]);
    }

    #[test]
    fn hilbert_not_pointed() {
        assert_eq!(
            hilbert_basis(&[v(&[1, 0]), v(&[-1, 0])], 2, 10_000),
            Err(ConeError::NotPointed)
        );
    }

    #[test]
    fn hilbert_pyramid_cone() {
        let gens = [v(&[1, 0, 0]), v(&[0, 1, 1]), v(&[0, 1, 0]), v(&[1, 0, 1])];
        let hb = hilbert_basis(&gens, 3, 10_000).unwrap();
        let mut expect: Vec<Vec<BigInt>> = gens.to_vec();
        expect.sort();
        assert_eq!(hb, expect);
    }

    /// Brute-force oracle: in a cone inside the nonnegative orthant, the
    /// Hilbert basis restricted to a box equals the box elements that are
    /// not sums of two nonzero monoid elements.
    #[test]
    fn hilbert_vs_bruteforce() {
        let cases: Vec<Vec<Vec<BigInt>>> = vec![
            vec![v(&[1, 0]), v(&[1, 3])],
            vec![v(&[2, 1]), v(&[1, 2])],
            vec![v(&[1, 0, 0]), v(&[1, 1, 2]), v(&[0, 0, 1])],
        ];
        for gens in cases {
            let dim = gens[0].len();
            let hb = hilbert_basis(&gens, dim, 10_000).unwrap();
            let polar = polar_rays(&gens, dim);
            let n = 6i64;
            let mut members = Vec::new();
            let mut idx = vec![0i64; dim];
            loop {
                let p: Vec<BigInt> = idx.iter().map(|&x| BigInt::from(x)).collect();
                if !p.iter().all(|x| x.is_zero()) && cone_member(&polar, &p) {
                    members.push(p);
                }
                let mut c = 0;
                while c < dim {
                    idx[c] += 1;
                    if idx[c] > n {
                        idx[c] = 0;
                        c += 1;
                    } else {
                        break;
                    }
                }
                if c == dim {
                    break;
                }
            }
            let brute: Vec<Vec<BigInt>> = members
                .iter()
                .filter(|m| {
                    !members.iter().any(|a| {
                        members.iter().any(|b| {
                            a.iter()
                                .zip(b.iter())
                                .zip(m.iter())
                                .all(|((x, y), z)| x + y == *z)
                        })
                    })
                })
                .cloned()
                .collect();
            let hb_in_box: Vec<Vec<BigInt>> = hb
                .iter()
                .filter(|h| h.iter().all(|x| *x <= BigInt::from(n)))
                .cloned()
                .collect();
            let mut brute = brute;
            brute.sort();
            assert_eq!(hb_in_box, brute, "gens {:?}", gens);
        }
    }

    #[test]
    fn faces_of_quadrant() {
        let faces = face_lattice(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap();
        assert_eq!(faces.len(), 4);
        let sizes: Vec<usize> = faces.iter().map(|f| f.support.len()).collect();
        assert_eq!(sizes, vec![0, 1, 1, 2]);
        // supporting functionals vanish on the face and are positive off it
        for f in &faces {
            for (i, g) in [v(&[1, 0]), v(&[0, 1])].iter().enumerate() {
                let val = dot(&f.functional, g);
                if f.support.contains(&i) {
                    assert!(val.is_zero());
                } else {
                    assert!(val.is_positive());
                }
            }
        }
    }

    #[test]
    fn faces_of_pyramid_cone_census() {
        let gens = [v(&[1, 0, 0]), v(&[0, 1, 1]), v(&[0, 1, 0]), v(&[1, 0, 1])];
        let faces = face_lattice(&gens, 3).unwrap();
        let mut by_card = std::collections::BTreeMap::new();
        for f in &faces {
            *by_card.entry(f.support.len()).or_insert(0usize) += 1;
        }
        // vertex, 4 edges, 4 facets, full cone
        assert_eq!(faces.len(), 10);
        assert_eq!(by_card.get(&0), Some(&1));
        assert_eq!(by_card.get(&1), Some(&4));
        assert_eq!(by_card.get(&2), Some(&4));
        assert_eq!(by_card.get(&4), Some(&1));
    }

    #[test]
    fn faces_of_trivial_cone() {
        let faces = face_lattice(&[], 2).unwrap();
        assert_eq!(faces.len(), 1);
    }
}
