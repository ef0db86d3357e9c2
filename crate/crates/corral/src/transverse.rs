//! Corner germs of interior maps between local models: dual monoids,
//! b-/c-transversality, fibre products of germs, the corner grading law
//! i + l = j + k, and stratumwise strictness.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone;
use crate::faces::{self, FaceError};
use crate::lattice::{integer_kernel, IntMatrix};
use crate::monoid::{AffineMonoid, Membership, MonoidError, Tri, HILBERT_CAP};
use crate::ratlin;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransverseError {
    #[error("monoid is not sharp and toric")]
    NotSharpToric,
    #[error("invalid monoid morphism: {0}")]
    BadMorphism(String),
    #[error("b-jacobian invalid: {0}")]
    BadJacobian(String),
    #[error("germs do not share a target")]
    TargetMismatch,
    #[error("germs are not b-transverse")]
    NotBTransverse,
    #[error("germs are not c-transverse: {0}")]
    NotCTransverse(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Faces(#[from] FaceError),
}

/// The dual monoid Hom(P, N) of a sharp toric monoid, with the evaluation
/// pairing against the original generators.
#[derive(Clone, Debug)]
pub struct DualData {
    pub monoid: AffineMonoid,
    /// pairing[i][j] = <n_i, p_j> for dual generator n_i, generator p_j
    pub pairing: Vec<Vec<BigInt>>,
}

pub fn dual_monoid(p: &AffineMonoid) -> Result<DualData, TransverseError> {
    let c = p.classify()?;
    if !c.is_toric {
        return Err(TransverseError::NotSharpToric);
    }
    let r = p.rank();
    let gens = p.free_gens();
    let polar = cone::polar_rays(&gens, r);
    let hb = cone::hilbert_basis(&polar, r, HILBERT_CAP).map_err(MonoidError::from)?;
    let pairing = hb
        .iter()
        .map(|n| gens.iter().map(|g| cone::dot(n, g)).collect())
        .collect();
    Ok(DualData {
        monoid: AffineMonoid {
            ambient: crate::lattice::AbelianGroupData::free(r),
            gen_images: hb,
            provenance: None,
        },
        pairing,
    })
}

/// Germ of an interior map between local models X_{P_x} x R^{l_x} and
/// X_{P_z} x R^{l_z}: a monoid morphism phi: P_z -> P_x plus the b-Jacobian.
#[derive(Clone, Debug)]
pub struct GermMap {
    pub source: AffineMonoid,
    pub source_free: usize,
    pub target: AffineMonoid,
    pub target_free: usize,
    /// image in the source ambient of each target generator
    pub phi_gen_images: Vec<Vec<BigInt>>,
    /// induced map on groupifications, shape rank(P_x) x rank(P_z)
    pub phi_matrix: IntMatrix,
    /// rows: rank(P_z) + l_z, cols: rank(P_x) + l_x
    pub b_jacobian: Vec<Vec<BigRational>>,
}

impl GermMap {
    pub fn new(
        source: AffineMonoid,
        source_free: usize,
        target: AffineMonoid,
        target_free: usize,
        phi_gen_images: Vec<Vec<BigInt>>,
        b_jacobian: Vec<Vec<BigRational>>,
    ) -> Result<GermMap, TransverseError> {
        for m in [&source, &target] {
            if !m.classify()?.is_toric {
                return Err(TransverseError::NotSharpToric);
            }
        }
        let rx = source.rank();
        let rz = target.rank();
        if phi_gen_images.len() != target.gen_images.len() {
            return Err(TransverseError::BadMorphism(
                "one image per target generator required".into(),
            ));
        }
        for (j, img) in phi_gen_images.iter().enumerate() {
            if img.len() != rx {
                return Err(TransverseError::BadMorphism(format!(
                    "image {j} has wrong ambient dimension"
                )));
            }
            match source.membership(img, None) {
                Membership::Yes(_) => {}
                _ => {
                    return Err(TransverseError::BadMorphism(format!(
                        "image of generator {j} is not a member of the source monoid"
                    )))
                }
            }
        }

        // The ambient map A with A * (target gen) = image; consistency of
        // the solve is exactly well-definedness on the relation lattice.
        let tgens = target.free_gens();
        let rows: Vec<Vec<BigRational>> = tgens
            .iter()
            .map(|g| g.iter().map(|x| BigRational::from(x.clone())).collect())
            .collect();
        let mut phi_matrix = IntMatrix::zero(rx, rz);
        for i in 0..rx {
            let b: Vec<BigRational> = phi_gen_images
                .iter()
                .map(|img| BigRational::from(img[i].clone()))
                .collect();
            let a = ratlin::solve(&rows, &b).ok_or_else(|| {
                TransverseError::BadMorphism("images violate the target relations".into())
            })?;
            for (j, q) in a.iter().enumerate() {
                if !q.is_integer() {
                    return Err(TransverseError::BadMorphism(
                        "induced groupification map is not integral".into(),
                    ));
                }
                *phi_matrix.at_mut(i, j) = q.to_integer();
            }
        }
        // solve() picks one solution; verify it reproduces every image
        for (j, img) in phi_gen_images.iter().enumerate() {
            if phi_matrix.mul_vec(&tgens[j]) != *img {
                return Err(TransverseError::BadMorphism(format!(
                    "generator {j} image inconsistent with a linear map"
                )));
            }
        }

        if b_jacobian.len() != rz + target_free
            || b_jacobian.iter().any(|r| r.len() != rx + source_free)
        {
            return Err(TransverseError::BadJacobian("wrong shape".into()));
        }
        // corner-corner block must be the transpose of the ambient map
        for i in 0..rz {
            for j in 0..rx {
                if b_jacobian[i][j] != BigRational::from(phi_matrix.at(j, i).clone()) {
                    return Err(TransverseError::BadJacobian(format!(
                        "corner block entry ({i},{j}) differs from the monoid morphism"
                    )));
                }
            }
        }
        Ok(GermMap {
            source,
            source_free,
            target,
            target_free,
            phi_gen_images,
            phi_matrix,
            b_jacobian,
        })
    }

    /// Identity germ on X_P x R^l.
    pub fn identity(p: AffineMonoid, l: usize) -> Result<GermMap, TransverseError> {
        let r = p.rank();
        let images = p.free_gens();
        let mut jac = vec![vec![BigRational::zero(); r + l]; r + l];
        for (i, row) in jac.iter_mut().enumerate() {
            row[i] = BigRational::one();
        }
        GermMap::new(p.clone(), l, p, l, images, jac)
    }
}

fn check_shared_target(g: &GermMap, h: &GermMap) -> Result<(), TransverseError> {
    if g.target.ambient != h.target.ambient
        || g.target.gen_images != h.target.gen_images
        || g.target_free != h.target_free
    {
        return Err(TransverseError::TargetMismatch);
    }
    Ok(())
}

/// Full row rank of [B_g | B_h] over the rationals.
pub fn b_transverse(g: &GermMap, h: &GermMap) -> Result<bool, TransverseError> {
    check_shared_target(g, h)?;
    let rows = g.b_jacobian.len();
    let stacked: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r = g.b_jacobian[i].clone();
            r.extend(h.b_jacobian[i].iter().cloned());
            r
        })
        .collect();
    Ok(ratlin::rank(&stacked) == rows)
}

#[derive(Clone, Debug)]
pub struct CTransverseReport {
    pub is_b_transverse: bool,
    pub normal_surjective: bool,
    pub face_condition: bool,
    pub witness: String,
}

impl CTransverseReport {
    pub fn is_c_transverse(&self) -> bool {
        self.is_b_transverse && self.normal_surjective && self.face_condition
    }
}

/// The equalizer submonoid K of N_x x N_y together with its Hilbert basis
/// in ambient (lambda, mu) coordinates and the span restriction.
struct Equalizer {
    /// K in its saturated span coordinates (rank = rank K)
    monoid: AffineMonoid,
    /// Hilbert basis in Z^{rank P_x + rank P_y}
    hb_ambient: Vec<Vec<BigInt>>,
}

fn equalizer(g: &GermMap, h: &GermMap) -> Result<Equalizer, TransverseError> {
    let rx = g.source.rank();
    let ry = h.source.rank();
    let rz = g.target.rank();
    // lambda . phi_g = mu . phi_h: kernel of [A_g^T | -A_h^T]
    let mut n = IntMatrix::zero(rz, rx + ry);
    for i in 0..rz {
        for j in 0..rx {
            *n.at_mut(i, j) = g.phi_matrix.at(j, i).clone();
        }
        for j in 0..ry {
            *n.at_mut(i, rx + j) = -h.phi_matrix.at(j, i).clone();
        }
    }
    let kernel = integer_kernel(&n);
    if kernel.is_empty() {
        return Ok(Equalizer {
            monoid: AffineMonoid::trivial(),
            hb_ambient: Vec::new(),
        });
    }
    let span = cone::SpanLattice::of(&kernel, rx + ry);
    let k = span.rank();
    // inequalities: nonnegativity against every source generator
    let mut ineqs: Vec<Vec<BigInt>> = Vec::new();
    for p in g.source.free_gens() {
        let mut amb = p.clone();
        amb.extend(vec![BigInt::zero(); ry]);
        ineqs.push((0..k).map(|i| cone::dot(&amb, &span.basis[i])).collect());
    }
    for p in h.source.free_gens() {
        let mut amb = vec![BigInt::zero(); rx];
        amb.extend(p.clone());
        ineqs.push((0..k).map(|i| cone::dot(&amb, &span.basis[i])).collect());
    }
    let (rays, lines) = cone::dd_rays(&ineqs, k);
    debug_assert!(lines.is_empty(), "dual product cone is pointed");
    if rays.is_empty() {
        return Ok(Equalizer {
            monoid: AffineMonoid::trivial(),
            hb_ambient: Vec::new(),
        });
    }
    // restrict once more to the span of K itself so the generators present
    // the whole ambient group of the K monoid
    let kspan = cone::SpanLattice::of(&rays, k);
    let kappa = kspan.rank();
    let krays: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|r| kspan.to_span(r).expect("ray in own span"))
        .collect();
    let hb = cone::hilbert_basis(&krays, kappa, HILBERT_CAP).map_err(MonoidError::from)?;
    let hb_ambient = hb
        .iter()
        .map(|x| span.to_ambient(&kspan.to_ambient(x)))
        .collect();
    Ok(Equalizer {
        monoid: AffineMonoid {
            ambient: crate::lattice::AbelianGroupData::free(kappa),
            gen_images: hb,
            provenance: None,
        },
        hb_ambient,
    })
}

pub fn c_transverse(g: &GermMap, h: &GermMap) -> Result<CTransverseReport, TransverseError> {
    let is_b = b_transverse(g, h)?;
    let rx = g.source.rank();
    let ry = h.source.rank();
    let rz = g.target.rank();

    // normal surjectivity: Hom(P_x,R) + Hom(P_y,R) ->> Hom(P_z,R)
    let block: Vec<Vec<BigRational>> = (0..rz)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..rx)
                .map(|j| BigRational::from(g.phi_matrix.at(j, i).clone()))
                .collect();
            row.extend((0..ry).map(|j| BigRational::from(h.phi_matrix.at(j, i).clone())));
            row
        })
        .collect();
    let normal_surjective = ratlin::rank(&block) == rz;

    // face condition: the sum of K's Hilbert basis must be interior to the
    // product dual cone, i.e. positive against every extreme ray of the
    // source cones
    let eq = equalizer(g, h)?;
    let mut s = vec![BigInt::zero(); rx + ry];
    for v in &eq.hb_ambient {
        for i in 0..rx + ry {
            s[i] += &v[i];
        }
    }
    let mut face_condition = true;
    let mut witness = String::new();
    let (xrays, _) = cone::extreme_rays(&g.source.free_gens(), rx);
    let (yrays, _) = cone::extreme_rays(&h.source.free_gens(), ry);
    for r in &xrays {
        if !cone::dot(r, &s[..rx]).is_positive() {
            face_condition = false;
            witness = format!("K lies in the face of N_x dual to ray {:?}", r);
            break;
        }
    }
    if face_condition {
        for r in &yrays {
            if !cone::dot(r, &s[rx..]).is_positive() {
                face_condition = false;
                witness = format!("K lies in the face of N_y dual to ray {:?}", r);
                break;
            }
        }
    }
    if !is_b {
        witness = "not b-transverse".into();
    } else if !normal_surjective {
        witness = "corner-normal map is not surjective".into();
    } else if face_condition {
        witness = "sum of K's Hilbert basis is interior".into();
    }
    Ok(CTransverseReport {
        is_b_transverse: is_b,
        normal_surjective,
        face_condition,
        witness,
    })
}

#[derive(Clone, Debug)]
pub struct FibreProductGerm {
    /// equalizer monoid K in its span coordinates
    pub k_monoid: AffineMonoid,
    /// K's Hilbert basis as (lambda, mu) vectors
    pub k_hb_ambient: Vec<Vec<BigInt>>,
    /// the fibre-product corner monoid W = K^dual
    pub w_monoid: AffineMonoid,
    /// b-tangent dimension of W: nullity of [B_g | -B_h]
    pub dim_w: usize,
}

pub fn fibre_product_germ(g: &GermMap, h: &GermMap) -> Result<FibreProductGerm, TransverseError> {
    if !b_transverse(g, h)? {
        return Err(TransverseError::NotBTransverse);
    }
    let eq = equalizer(g, h)?;
    let w = if eq.monoid.ambient.is_trivial() {
        AffineMonoid::trivial()
    } else {
        dual_monoid(&eq.monoid)?.monoid
    };
    let rows = g.b_jacobian.len();
    let cols_g = g.b_jacobian.first().map_or(0, |r| r.len());
    let cols_h = h.b_jacobian.first().map_or(0, |r| r.len());
    let stacked: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r = g.b_jacobian[i].clone();
            r.extend(h.b_jacobian[i].iter().map(|x| -x.clone()));
            r
        })
        .collect();
    let dim_w = cols_g + cols_h - ratlin::rank(&stacked);
    Ok(FibreProductGerm {
        k_monoid: eq.monoid,
        k_hb_ambient: eq.hb_ambient,
        w_monoid: w,
        dim_w,
    })
}

/// One W-stratum row of the grading report: codimensions (i, j, k, l) in
/// W, X, Y, Z.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GradingRow {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

#[derive(Clone, Debug)]
pub struct GradingReport {
    pub rows: Vec<GradingRow>,
    /// |C_i(W)| per i, from the face lattice of W
    pub w_counts: Vec<usize>,
    /// the same counts recovered from compatible stratum pairs of X and Y
    pub crosstab_counts: Vec<usize>,
    pub law_holds: bool,
}

fn face_rank(gens: &[Vec<BigInt>], support: &BTreeSet<usize>) -> usize {
    let rows: Vec<Vec<BigInt>> = support.iter().map(|&i| gens[i].clone()).collect();
    ratlin::rank_int(&rows)
}

/// Preimage support of a source face under a germ: the target generators
/// whose image is annihilated by every functional cutting the face.
fn preimage_support(
    germ: &GermMap,
    face_functional: &[BigInt],
) -> BTreeSet<usize> {
    germ.phi_gen_images
        .iter()
        .enumerate()
        .filter(|(_, img)| cone::dot(face_functional, img).is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub fn corner_grading_check(g: &GermMap, h: &GermMap) -> Result<GradingReport, TransverseError> {
    let report = c_transverse(g, h)?;
    if !report.is_c_transverse() {
        return Err(TransverseError::NotCTransverse(report.witness));
    }
    let fp = fibre_product_germ(g, h)?;
    let rx = g.source.rank();
    let ry = h.source.rank();
    let rz = g.target.rank();
    let xgens = g.source.free_gens();
    let ygens = h.source.free_gens();
    let zgens = g.target.free_gens();

    let w_lattice = faces::enumerate_faces(&fp.w_monoid)?;
    let rank_w = w_lattice.sharp_rank;
    let w_gens = fp.w_monoid.free_gens();

    let mut rows = Vec::new();
    let mut w_counts = vec![0usize; rank_w + 1];
    for face in &w_lattice.faces {
        let i = rank_w - face.sharp_rank;
        w_counts[i] += 1;
        // polar face of K: Hilbert-basis elements vanishing against the
        // face's generators under the standard pairing of K with W = K^dual
        let polar: Vec<&Vec<BigInt>> = fp
            .k_monoid
            .gen_images
            .iter()
            .zip(&fp.k_hb_ambient)
            .filter(|(kspan, _)| {
                face.support
                    .iter()
                    .all(|&wi| cone::dot(kspan, &w_gens[wi]).is_zero())
            })
            .map(|(_, amb)| amb)
            .collect();
        let fx: BTreeSet<usize> = (0..xgens.len())
            .filter(|&p| polar.iter().all(|kap| cone::dot(&kap[..rx], &xgens[p]).is_zero()))
            .collect();
        let fy: BTreeSet<usize> = (0..ygens.len())
            .filter(|&p| polar.iter().all(|kap| cone::dot(&kap[rx..], &ygens[p]).is_zero()))
            .collect();
        let fz_g: BTreeSet<usize> = (0..zgens.len())
            .filter(|&p| {
                polar
                    .iter()
                    .all(|kap| cone::dot(&kap[..rx], &g.phi_gen_images[p]).is_zero())
            })
            .collect();
        let fz_h: BTreeSet<usize> = (0..zgens.len())
            .filter(|&p| {
                polar
                    .iter()
                    .all(|kap| cone::dot(&kap[rx..], &h.phi_gen_images[p]).is_zero())
            })
            .collect();
        if fz_g != fz_h {
            return Err(TransverseError::NotCTransverse(
                "stratum preimages along g and h disagree".into(),
            ));
        }
        let j = rx - face_rank(&xgens, &fx);
        let k = ry - face_rank(&ygens, &fy);
        let l = rz - face_rank(&zgens, &fz_g);
        rows.push(GradingRow { i, j, k, l });
    }
    rows.sort();
    let law_holds = rows.iter().all(|r| r.i + r.l == r.j + r.k);

    // Independent cross-tabulation: one W-stratum per compatible pair of X-
    // and Y-strata (equal Z-preimages), placed at i = j + k - l.
    let x_lattice = faces::enumerate_faces(&g.source)?;
    let y_lattice = faces::enumerate_faces(&h.source)?;
    let z_lattice = faces::enumerate_faces(&g.target)?;
    let mut crosstab_counts = vec![0usize; rank_w + 1];
    for fx in &x_lattice.faces {
        let pre_g = preimage_support(g, &fx.functional);
        for fy in &y_lattice.faces {
            let pre_h = preimage_support(h, &fy.functional);
            if pre_g != pre_h {
                continue;
            }
            let fz = faces::face_with_support(&z_lattice, &pre_g).ok_or_else(|| {
                TransverseError::NotCTransverse(
                    "common stratum preimage is not a face of the target".into(),
                )
            })?;
            let j = rx - fx.sharp_rank;
            let k = ry - fy.sharp_rank;
            let l = rz - fz.sharp_rank;
            let i = j + k - l;
            if i < crosstab_counts.len() {
                crosstab_counts[i] += 1;
            }
        }
    }
    Ok(GradingReport {
        rows,
        w_counts,
        crosstab_counts,
        law_holds,
    })
}

#[derive(Clone, Debug)]
pub struct StrictnessRow {
    pub support: BTreeSet<usize>,
    pub codim: usize,
    pub is_free: bool,
}

#[derive(Clone, Debug)]
pub struct StrictnessReport {
    pub rows: Vec<StrictnessRow>,
    pub sc: bool,
}

/// Per-stratum strictness of the fibre product: every corner fibre of the
/// W-monoid must be a free monoid for the result to have ordinary corners.
pub fn strict_corner_check(g: &GermMap, h: &GermMap) -> Result<StrictnessReport, TransverseError> {
    let report = c_transverse(g, h)?;
    if !report.is_c_transverse() {
        return Err(TransverseError::NotCTransverse(report.witness));
    }
    let fp = fibre_product_germ(g, h)?;
    let rank_w = fp.w_monoid.rank();
    let mut rows = Vec::new();
    let mut sc = true;
    for prime in faces::primes(&fp.w_monoid, true)? {
        let fiber = faces::corner_fiber(&fp.w_monoid, &prime);
        let c = fiber.classify()?;
        let is_free = c.is_free;
        sc &= is_free;
        rows.push(StrictnessRow {
            support: prime.complement.support.clone(),
            codim: rank_w - prime.complement.sharp_rank,
            is_free,
        });
    }
    Ok(StrictnessReport { rows, sc })
}

/// Bounded monoid isomorphism test for sharp toric monoids: invariants
/// first, then an exact search over Hilbert-basis matchings.
pub fn monoid_isomorphic(a: &AffineMonoid, b: &AffineMonoid) -> Result<Tri, TransverseError> {
    for m in [a, b] {
        if !m.classify()?.is_toric {
            return Err(TransverseError::NotSharpToric);
        }
    }
    if a.rank() != b.rank() {
        return Ok(Tri::No);
    }
    let r = a.rank();
    let hb_a = cone::hilbert_basis(&a.free_gens(), r, HILBERT_CAP).map_err(MonoidError::from)?;
    let hb_b = cone::hilbert_basis(&b.free_gens(), r, HILBERT_CAP).map_err(MonoidError::from)?;
    if hb_a.len() != hb_b.len() {
        return Ok(Tri::No);
    }
    if r == 0 {
        return Ok(Tri::Yes);
    }
    let fva = faces::enumerate_faces(a)?.faces.len();
    let fvb = faces::enumerate_faces(b)?.faces.len();
    if fva != fvb {
        return Ok(Tri::No);
    }
    // basis subset of hb_a
    let mut basis_idx = Vec::new();
    for (i, _) in hb_a.iter().enumerate() {
        let mut cand = basis_idx.clone();
        cand.push(i);
        let rows: Vec<Vec<BigInt>> = cand.iter().map(|&i| hb_a[i].clone()).collect();
        if ratlin::rank_int(&rows) == cand.len() {
            basis_idx = cand;
        }
        if basis_idx.len() == r {
            break;
        }
    }
    assert_eq!(basis_idx.len(), r, "hilbert basis spans");
    let n = hb_b.len();
    let mut arrangements = 1usize;
    for i in 0..r {
        arrangements = arrangements.saturating_mul(n - i);
    }
    if arrangements > 100_000 {
        return Ok(Tri::Unknown);
    }
    let mut assign = vec![usize::MAX; r];
    if try_assign(&hb_a, &hb_b, &basis_idx, 0, &mut assign, r) {
        Ok(Tri::Yes)
    } else {
        Ok(Tri::No)
    }
}

fn try_assign(
    hb_a: &[Vec<BigInt>],
    hb_b: &[Vec<BigInt>],
    basis_idx: &[usize],
    pos: usize,
    assign: &mut Vec<usize>,
    r: usize,
) -> bool {
    if pos == r {
        return check_assignment(hb_a, hb_b, basis_idx, assign, r);
    }
    for cand in 0..hb_b.len() {
        if assign[..pos].contains(&cand) {
            continue;
        }
        assign[pos] = cand;
        if try_assign(hb_a, hb_b, basis_idx, pos + 1, assign, r) {
            return true;
        }
    }
    assign[pos] = usize::MAX;
    false
}

/// Solve T * hb_a[basis_idx[p]] = hb_b[assign[p]], then accept iff T is
/// unimodular and maps the Hilbert basis of a bijectively onto that of b.
fn check_assignment(
    hb_a: &[Vec<BigInt>],
    hb_b: &[Vec<BigInt>],
    basis_idx: &[usize],
    assign: &[usize],
    r: usize,
) -> bool {
    // T = B * A^{-1} with columns from the matched vectors
    let a_cols: Vec<Vec<BigRational>> = (0..r)
        .map(|p| {
            hb_a[basis_idx[p]]
                .iter()
                .map(|x| BigRational::from(x.clone()))
                .collect()
        })
        .collect();
    // rows of the system: for each coordinate i of the target
    let sys: Vec<Vec<BigRational>> = (0..r)
        .map(|p| a_cols[p].clone())
        .collect();
    let mut t_rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..r {
        let rhs: Vec<BigRational> = (0..r)
            .map(|p| BigRational::from(hb_b[assign[p]][i].clone()))
            .collect();
        let Some(sol) = ratlin::solve(&sys, &rhs) else {
            return false;
        };
        if sol.iter().any(|q| !q.is_integer()) {
            return false;
        }
        t_rows.push(sol.iter().map(|q| q.to_integer()).collect());
    }
    let t = IntMatrix::from_rows(t_rows);
    let snf = crate::lattice::smith_normal_form(&t);
    if snf.diagonal.len() != r || !snf.diagonal.iter().product::<BigInt>().is_one() {
        return false;
    }
    // bijectivity on the Hilbert bases
    let image: BTreeSet<Vec<BigInt>> = hb_a.iter().map(|v| t.mul_vec(v)).collect();
    let target: BTreeSet<Vec<BigInt>> = hb_b.iter().cloned().collect();
    image == target
}
