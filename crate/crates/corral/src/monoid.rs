//! Finitely generated commutative monoids: presentations, groupification,
//! the reflection operations (integralize, torsion-free quotient, saturate,
//! sharpen) and the classification flags.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone;
use crate::lattice::{
    cokernel_group, default_bound, integer_kernel, quotient_group, solve_integer, solve_nonneg,
    AbelianGroupData, GroupElement, IntMatrix, SolveOutcome,
};
use crate::ratlin;
use crate::word;

/// Default cap for Hilbert-basis intermediate vectors.
pub const HILBERT_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("ambient group has torsion; apply the torsion-free quotient first")]
    NotTorsionFree,
    #[error("hilbert basis cap {cap} exceeded")]
    HilbertBoundExceeded { cap: usize },
    #[error("operation needs a weakly toric monoid")]
    NotWeaklyToric,
}

impl From<cone::ConeError> for MonoidError {
    fn from(e: cone::ConeError) -> Self {
        match e {
            cone::ConeError::HilbertBoundExceeded { cap } => {
                MonoidError::HilbertBoundExceeded { cap }
            }
            // saturation always sharpens internally, so a non-pointed cone
            // reaching a Hilbert computation is a logic error
            cone::ConeError::NotPointed => unreachable!("hilbert basis on non-pointed cone"),
        }
    }
}

/// A monoid given by generators and additive relations u = v in N^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub generator_names: Vec<String>,
    pub relations: Vec<(Vec<u64>, Vec<u64>)>,
}

impl MonoidPresentation {
    pub fn new(
        generator_names: Vec<String>,
        relations: Vec<(Vec<u64>, Vec<u64>)>,
    ) -> Result<Self, MonoidError> {
        let n = generator_names.len();
        let mut seen = std::collections::BTreeSet::new();
        for name in &generator_names {
            if !seen.insert(name) {
                return Err(MonoidError::InvalidPresentation(format!(
                    "duplicate generator name `{name}`"
                )));
            }
        }
        for (u, v) in &relations {
            if u.len() != n || v.len() != n {
                return Err(MonoidError::InvalidPresentation(
                    "relation arity mismatch".into(),
                ));
            }
        }
        Ok(MonoidPresentation {
            generator_names,
            relations,
        })
    }

    pub fn n_gens(&self) -> usize {
        self.generator_names.len()
    }

    /// Groupification Z^n / <u_i - v_i> with the generator images.
    pub fn groupify(&self) -> (AbelianGroupData, Vec<GroupElement>) {
        let n = self.n_gens();
        let cols: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|(u, v)| {
                (0..n)
                    .map(|i| BigInt::from(u[i]) - BigInt::from(v[i]))
                    .collect()
            })
            .collect();
        let ck = cokernel_group(&IntMatrix::from_cols(n, &cols));
        let images = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                ck.project(&e)
            })
            .collect();
        (ck.group, images)
    }

    /// Image of the presented monoid inside its groupification.
    pub fn integralize(&self) -> AffineMonoid {
        let (ambient, gen_images) = self.groupify();
        AffineMonoid {
            ambient,
            gen_images,
            provenance: Some(self.clone()),
        }
    }

    pub fn classify(&self, caps: &word::WordCaps) -> Result<MonoidClassification, MonoidError> {
        let integral = word::presentation_integral(self.n_gens(), &self.relations, caps);
        let mut c = self.integralize().classify()?;
        c.is_integral = integral;
        // the boolean flags certify properties of the presented monoid, and
        // each of these implies integrality; without that certificate they
        // only describe the integralization
        if integral != Tri::Yes {
            c.is_saturated = false;
            c.is_weakly_toric = false;
            c.is_toric = false;
            c.is_simplicial = false;
            c.is_free = false;
        }
        Ok(c)
    }
}

/// A finitely generated integral monoid: the submonoid of `ambient`
/// generated by `gen_images`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    pub ambient: AbelianGroupData,
    pub gen_images: Vec<GroupElement>,
    pub provenance: Option<MonoidPresentation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Vec<BigInt>),
    No,
    Unknown,
}

impl Membership {
    pub fn tri(&self) -> Tri {
        match self {
            Membership::Yes(_) => Tri::Yes,
            Membership::No => Tri::No,
            Membership::Unknown => Tri::Unknown,
        }
    }
}

/// Result of sharpening: unit group, sharp quotient, and the split rank.
#[derive(Clone, Debug)]
pub struct SharpSplit {
    pub units: AbelianGroupData,
    pub unit_gen_indices: Vec<usize>,
    pub sharp: AffineMonoid,
    /// projection of ambient onto the sharp ambient
    pub projection: crate::lattice::CokernelData,
    pub split_rank: usize,
}

/// Saturation with multiplicity witnesses: each new generator s carries an
/// n with n*s in the original monoid.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub monoid: AffineMonoid,
    pub witnesses: Vec<(GroupElement, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidClassification {
    pub is_integral: Tri,
    pub is_sharp: bool,
    pub is_torsion_free: bool,
    pub is_saturated: bool,
    pub is_weakly_toric: bool,
    pub is_toric: bool,
    pub is_simplicial: bool,
    pub is_free: bool,
    pub rank: usize,
}

impl AffineMonoid {
    /// The free monoid N^rank inside Z^rank.
    pub fn free(rank: usize) -> AffineMonoid {
        let ambient = AbelianGroupData::free(rank);
        let gen_images = (0..rank)
            .map(|i| {
                let mut e = ambient.zero();
                e[i] = BigInt::one();
                e
            })
            .collect();
        AffineMonoid {
            ambient,
            gen_images,
            provenance: None,
        }
    }

    pub fn trivial() -> AffineMonoid {
        AffineMonoid {
            ambient: AbelianGroupData::trivial(),
            gen_images: Vec::new(),
            provenance: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.ambient.free_rank
    }

    /// Free parts of the generator images (the data all cone computations
    /// run on).
    pub fn free_gens(&self) -> Vec<Vec<BigInt>> {
        self.gen_images
            .iter()
            .map(|g| self.ambient.free_part(g).to_vec())
            .collect()
    }

    /// Do the generators generate the ambient group? (type invariant)
    pub fn generates_ambient(&self) -> bool {
        let n = self.ambient.len();
        let mut cols: Vec<Vec<BigInt>> = self.gen_images.clone();
        cols.extend(self.ambient.presentation_columns());
        cokernel_group(&IntMatrix::from_cols(n, &cols)).group.is_trivial()
    }

    /// Certified bounded membership test.
    pub fn membership(&self, p: &GroupElement, bound: Option<&BigInt>) -> Membership {
        let p = self.ambient.reduce(p.clone());
        let default = default_bound(&p);
        let bound = bound.unwrap_or(&default);
        match solve_nonneg(&self.ambient, &self.gen_images, &p, bound) {
            SolveOutcome::Found(c) => Membership::Yes(c),
            SolveOutcome::NotFound => Membership::No,
            SolveOutcome::BoundExceeded => Membership::Unknown,
        }
    }

    /// Drop the torsion coordinates of the ambient group.
    pub fn torsion_free_quotient(&self) -> AffineMonoid {
        let r = self.ambient.free_rank;
        AffineMonoid {
            ambient: AbelianGroupData::free(r),
            gen_images: self.free_gens(),
            provenance: None,
        }
    }

    /// Unit group, sharp quotient and split rank. Units are exactly the
    /// generators whose negative is again a member; the candidate filter
    /// (free part in the cone lineality) makes the membership call cheap.
    pub fn sharpen_split(&self) -> SharpSplit {
        let r = self.ambient.free_rank;
        let free_gens = self.free_gens();
        let polar = cone::polar_rays(&free_gens, r);
        let mut unit_gen_indices = Vec::new();
        for (i, g) in self.gen_images.iter().enumerate() {
            let gf = self.ambient.free_part(g);
            let in_lineality = polar.iter().all(|ell| cone::dot(ell, gf).is_zero());
            if !in_lineality {
                continue;
            }
            if gf.iter().all(|x| x.is_zero()) {
                // torsion element: (order-1)*g is its inverse
                unit_gen_indices.push(i);
                continue;
            }
            let neg = self.ambient.neg(g);
            if let Membership::Yes(_) = self.membership(&neg, None) {
                unit_gen_indices.push(i);
            }
        }
        let unit_images: Vec<GroupElement> = unit_gen_indices
            .iter()
            .map(|&i| self.gen_images[i].clone())
            .collect();

        // abstract structure of the unit subgroup: Z^k modulo the relations
        // among the unit generators
        let k = unit_images.len();
        let units = {
            let n = self.ambient.len();
            let mut cols = unit_images.clone();
            cols.extend(self.ambient.presentation_columns());
            let kernel = integer_kernel(&IntMatrix::from_cols(n, &cols));
            let projected: Vec<Vec<BigInt>> =
                kernel.iter().map(|v| v[..k].to_vec()).collect();
            cokernel_group(&IntMatrix::from_cols(k, &projected)).group
        };

        let projection = quotient_group(&self.ambient, &unit_images);
        let sharp_gens: Vec<GroupElement> = self
            .gen_images
            .iter()
            .map(|g| projection.project(g))
            .collect();
        let sharp = AffineMonoid {
            ambient: projection.group.clone(),
            gen_images: sharp_gens,
            provenance: None,
        };
        SharpSplit {
            split_rank: units.free_rank,
            units,
            unit_gen_indices,
            sharp,
            projection,
        }
    }

    /// Generators of the saturation {p : n*p in M for some n >= 1} inside
    /// the ambient group. Works with torsion: the saturation contains the
    /// whole torsion subgroup whenever it contains anything over each free
    /// coset, and concretely equals {p : free(p) in cone(free gens)}.
    pub fn saturation_generators(&self, cap: usize) -> Result<Vec<GroupElement>, MonoidError> {
        let r = self.ambient.free_rank;
        let t = self.ambient.torsion_orders.len();
        let free_gens = self.free_gens();
        let mut out: Vec<GroupElement> = Vec::new();
        // torsion basis elements
        for j in 0..t {
            let mut e = self.ambient.zero();
            e[r + j] = BigInt::one();
            out.push(e);
        }
        let embed = |f: Vec<BigInt>| -> GroupElement {
            let mut e = vec![BigInt::zero(); r + t];
            e[..r].clone_from_slice(&f);
            e
        };
        let (_, lines) = cone::extreme_rays(&free_gens, r);
        if lines.is_empty() {
            for h in cone::hilbert_basis(&free_gens, r, cap)? {
                out.push(embed(h));
            }
        } else {
            // split off the lineality lattice, saturate the pointed quotient
            let lin = cone::SpanLattice::of(&lines, r);
            let free_group = AbelianGroupData::free(r);
            let q = quotient_group(&free_group, &lin.basis);
            let qgens: Vec<Vec<BigInt>> = free_gens.iter().map(|g| q.project(g)).collect();
            let qrank = q.group.free_rank;
            debug_assert!(q.group.torsion_orders.is_empty());
            let mut proj_rows = Vec::new();
            for i in 0..qrank {
                proj_rows.push(q.projection.row(i));
            }
            let proj = IntMatrix::from_rows(proj_rows);
            for h in cone::hilbert_basis(&qgens, qrank, cap)? {
                let lift = solve_integer(&proj, &h).expect("projection is surjective");
                out.push(embed(lift));
            }
            for b in &lin.basis {
                out.push(embed(b.clone()));
                out.push(embed(b.iter().map(|x| -x).collect()));
            }
        }
        Ok(out)
    }

    /// Saturate a torsion-free monoid; each added generator carries a
    /// root-multiplicity witness.
    pub fn saturate(&self, cap: usize) -> Result<Saturation, MonoidError> {
        if !self.ambient.torsion_orders.is_empty() {
            return Err(MonoidError::NotTorsionFree);
        }
        let gens = self.saturation_generators(cap)?;
        let free_gens = self.free_gens();
        let r = self.ambient.free_rank;
        let mut witnesses = Vec::new();
        for g in &gens {
            let n = caratheodory_multiple(&free_gens, self.ambient.free_part(g), r)
                .expect("saturation generator lies in the cone");
            witnesses.push((g.clone(), n));
        }
        Ok(Saturation {
            monoid: AffineMonoid {
                ambient: self.ambient.clone(),
                gen_images: gens,
                provenance: None,
            },
            witnesses,
        })
    }

    pub fn is_saturated(&self, cap: usize) -> Result<Tri, MonoidError> {
        let mut result = Tri::Yes;
        for g in self.saturation_generators(cap)? {
            match self.membership(&g, None) {
                Membership::Yes(_) => {}
                Membership::No => return Ok(Tri::No),
                Membership::Unknown => result = Tri::Unknown,
            }
        }
        Ok(result)
    }

    pub fn classify(&self) -> Result<MonoidClassification, MonoidError> {
        let rank = self.ambient.free_rank;
        let is_torsion_free = self.ambient.torsion_orders.is_empty();
        let split = self.sharpen_split();
        let is_sharp = split.units.is_trivial();
        let is_saturated = matches!(self.is_saturated(HILBERT_CAP)?, Tri::Yes);
        let is_weakly_toric = is_torsion_free && is_saturated;
        let is_toric = is_weakly_toric && is_sharp;
        let (mut is_simplicial, mut is_free) = (false, false);
        if is_toric {
            let free_gens = self.free_gens();
            let (rays, lines) = cone::extreme_rays(&free_gens, rank);
            debug_assert!(lines.is_empty());
            is_simplicial = rays.len() == rank;
            if is_simplicial {
                let hb = cone::hilbert_basis(&free_gens, rank, HILBERT_CAP)?;
                if hb.len() == rank {
                    let d = crate::lattice::smith_normal_form(&IntMatrix::from_cols(rank, &hb));
                    let vol: BigInt = d.diagonal.iter().product();
                    is_free = vol.is_one();
                }
            }
        }
        Ok(MonoidClassification {
            is_integral: Tri::Yes,
            is_sharp,
            is_torsion_free,
            is_saturated,
            is_weakly_toric,
            is_toric,
            is_simplicial,
            is_free,
            rank,
        })
    }

    /// Same submonoid of the same ambient group? (mutual membership)
    pub fn same_submonoid(&self, other: &AffineMonoid) -> Tri {
        assert_eq!(self.ambient, other.ambient);
        let mut result = Tri::Yes;
        for g in &other.gen_images {
            match self.membership(g, None) {
                Membership::Yes(_) => {}
                Membership::No => return Tri::No,
                Membership::Unknown => result = Tri::Unknown,
            }
        }
        for g in &self.gen_images {
            match other.membership(g, None) {
                Membership::Yes(_) => {}
                Membership::No => return Tri::No,
                Membership::Unknown => result = Tri::Unknown,
            }
        }
        result
    }
}

/// Smallest denominator-clearing multiple: an n >= 1 with n*s a nonnegative
/// integer combination of the generators, obtained from a rational conic
/// Caratheodory representation over a linearly independent subset.
fn caratheodory_multiple(gens: &[Vec<BigInt>], s: &[BigInt], dim: usize) -> Option<BigInt> {
    if s.iter().all(|x| x.is_zero()) {
        return Some(BigInt::one());
    }
    let k = ratlin::rank_int(gens);
    let mut best: Option<BigInt> = None;
    let mut subset: Vec<usize> = Vec::new();
    search_subsets(gens, s, dim, k, 0, &mut subset, &mut best);
    best
}

fn search_subsets(
    gens: &[Vec<BigInt>],
    s: &[BigInt],
    dim: usize,
    k: usize,
    from: usize,
    subset: &mut Vec<usize>,
    best: &mut Option<BigInt>,
) {
    if subset.len() == k {
        let cols: Vec<Vec<BigInt>> = subset.iter().map(|&i| gens[i].clone()).collect();
        let a: Vec<Vec<BigRational>> = (0..dim)
            .map(|r| cols.iter().map(|c| BigRational::from(c[r].clone())).collect())
            .collect();
        let b: Vec<BigRational> = s.iter().map(|x| BigRational::from(x.clone())).collect();
        if let Some(lam) = ratlin::solve(&a, &b) {
            // verify: independent subsets give the unique solution, but a
            // consistent solve with a negative entry is simply not a witness
            if lam.iter().all(|l| !l.is_negative()) {
                let mut n = BigInt::one();
                for l in &lam {
                    n = n.lcm(l.denom());
                }
                match best {
                    Some(b) if *b <= n => {}
                    _ => *best = Some(n),
                }
            }
        }
        return;
    }
    if gens.len() - from < k - subset.len() || best.is_some() {
        return;
    }
    for i in from..gens.len() {
        subset.push(i);
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&j| gens[j].clone()).collect();
        if ratlin::rank_int(&rows) == subset.len() {
            search_subsets(gens, s, dim, k, i + 1, subset, best);
        }
        subset.pop();
    }
}
