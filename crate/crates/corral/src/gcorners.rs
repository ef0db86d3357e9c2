//! Local models for corners: a weakly toric monoid presents a binomial
//! variety in [0,infinity)^m, with depth stratification and the corner
//! decomposition graded by codimension.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::faces::{
    corner_fiber, enumerate_faces, primes, FaceError, FaceLattice, PrimeIdeal,
};
use crate::lattice::{integer_kernel, IntMatrix};
use crate::monoid::{AffineMonoid, MonoidError};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("monoid is not weakly toric")]
    NotWeaklyToric,
    #[error("point has a negative coordinate {index}")]
    NegativeCoordinate { index: usize },
    #[error("coordinate count {got}, model has {want} generators")]
    ArityMismatch { got: usize, want: usize },
    #[error("zero set of the point is not a face of the monoid")]
    NotAFacePoint,
    #[error(transparent)]
    Faces(#[from] FaceError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// X_P x R^l presented by binomial equations among the generator
/// coordinates.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub monoid: AffineMonoid,
    pub sharp: AffineMonoid,
    pub face_lattice: FaceLattice,
    pub split_rank: usize,
    /// kernel-lattice relations of the generator matrix, as multiplicative
    /// exponent pairs x^u = x^v
    pub binomial_relations: Vec<(Vec<u64>, Vec<u64>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointCheck {
    Ok,
    Violation { relation: usize, residual: f64 },
}

#[derive(Clone, Debug)]
pub struct CornerStratum {
    pub prime: PrimeIdeal,
    pub fiber: AffineMonoid,
    pub codim: usize,
}

#[derive(Clone, Debug)]
pub struct CornerDecomposition {
    pub strata: Vec<CornerStratum>,
    /// grading[k] = number of codimension-k strata
    pub grading: Vec<usize>,
}

pub fn build_local_model(p: &AffineMonoid) -> Result<LocalModel, ModelError> {
    let c = p.classify()?;
    if !c.is_weakly_toric {
        return Err(ModelError::NotWeaklyToric);
    }
    let split = p.sharpen_split();
    let face_lattice = enumerate_faces(p)?;
    let m = p.gen_images.len();
    let kernel = integer_kernel(&IntMatrix::from_cols(p.ambient.len(), &p.gen_images));
    let binomial_relations = kernel
        .into_iter()
        .map(|z| {
            // canonical orientation: first nonzero entry positive
            let z = match z.iter().find(|x| !x.is_zero()) {
                Some(x) if x.is_negative() => z.iter().map(|v| -v).collect(),
                _ => z,
            };
            let u: Vec<u64> = z
                .iter()
                .map(|x| x.max(&BigInt::zero()).to_u64().expect("small exponent"))
                .collect();
            let v: Vec<u64> = z
                .iter()
                .map(|x| (-x).max(BigInt::zero()).to_u64().expect("small exponent"))
                .collect();
            (u, v)
        })
        .collect::<Vec<_>>();
    debug_assert!(binomial_relations.iter().all(|(u, v)| u.len() == m && v.len() == m));
    Ok(LocalModel {
        monoid: p.clone(),
        sharp: split.sharp,
        face_lattice,
        split_rank: split.split_rank,
        binomial_relations,
    })
}

impl LocalModel {
    /// Full model dimension rank(P^sharp) + l.
    pub fn dim(&self) -> usize {
        self.face_lattice.sharp_rank + self.split_rank
    }

    pub fn n_coords(&self) -> usize {
        self.monoid.gen_images.len()
    }

    pub fn validate_point(&self, x: &[f64], tol: f64) -> Result<PointCheck, ModelError> {
        if x.len() != self.n_coords() {
            return Err(ModelError::ArityMismatch {
                got: x.len(),
                want: self.n_coords(),
            });
        }
        if let Some(i) = x.iter().position(|&c| c < 0.0) {
            return Err(ModelError::NegativeCoordinate { index: i });
        }
        for (idx, (u, v)) in self.binomial_relations.iter().enumerate() {
            let lhs: f64 = u
                .iter()
                .zip(x)
                .map(|(&e, &c)| c.powi(e as i32))
                .product();
            let rhs: f64 = v
                .iter()
                .zip(x)
                .map(|(&e, &c)| c.powi(e as i32))
                .product();
            let residual = (lhs - rhs).abs();
            if residual > tol * (1.0 + lhs.abs().max(rhs.abs())) {
                return Ok(PointCheck::Violation {
                    relation: idx,
                    residual,
                });
            }
        }
        Ok(PointCheck::Ok)
    }

    /// Depth of a validated point and the prime it lies on: the zero
    /// coordinates cut out a face complement.
    pub fn depth_at(&self, x: &[f64], tol: f64) -> Result<(usize, PrimeIdeal), ModelError> {
        match self.validate_point(x, tol)? {
            PointCheck::Ok => {}
            PointCheck::Violation { relation, residual } => {
                let _ = (relation, residual);
                return Err(ModelError::NotAFacePoint);
            }
        }
        let support: BTreeSet<usize> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > tol)
            .map(|(i, _)| i)
            .collect();
        let face = crate::faces::face_with_support(&self.face_lattice, &support)
            .ok_or(ModelError::NotAFacePoint)?
            .clone();
        let depth = self.face_lattice.sharp_rank - face.sharp_rank;
        Ok((
            depth,
            PrimeIdeal {
                complement: face,
                includes_zero: true,
            },
        ))
    }

    pub fn corner_decomposition(&self) -> Result<CornerDecomposition, ModelError> {
        let rank = self.face_lattice.sharp_rank;
        let ps = primes(&self.monoid, true)?;
        let mut strata = Vec::new();
        let mut grading = vec![0usize; rank + 1];
        for prime in ps {
            let fiber = corner_fiber(&self.monoid, &prime);
            let codim = rank - prime.complement.sharp_rank;
            grading[codim] += 1;
            strata.push(CornerStratum {
                prime,
                fiber,
                codim,
            });
        }
        Ok(CornerDecomposition { strata, grading })
    }
}
