//! Smooth expressions with b-derivatives, finitely presented interior
//! rings with corners, and the numeric fibres of their b-cotangent modules
//! at real points, with pushout and corner exact-sequence checks.

use std::collections::BTreeSet;

use num_traits::{Signed as _, ToPrimitive};

use crate::faces::{self, FaceError, PrimeIdeal};
use crate::monoid::{MonoidError, MonoidPresentation};

/// Default relative threshold for numerical rank decisions.
pub const RANK_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum BCotError {
    #[error("point does not satisfy relation {relation}: residual {residual}")]
    InvalidPoint { relation: usize, residual: f64 },
    #[error("point has the wrong shape")]
    PointShape,
    #[error("expression references undeclared generator {0}")]
    BadGenerator(usize),
    #[error("point is not adapted to the stratum: interior generator {0}")]
    NotOnStratum(usize),
    #[error("stratum complement is not a face of the sharpened monoid")]
    NotAFace,
    #[error("sharpened monoid is not toric")]
    NotToric,
    #[error("interior relation {0} mixes the stratum and its complement")]
    NotAdapted(usize),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Faces(#[from] FaceError),
}

/// Expression fragment closed under b-differentiation: constants, sums,
/// products, negation and exponentials over real and interior generators.
#[derive(Clone, Debug, PartialEq)]
pub enum SmoothExpr {
    Const(f64),
    RealVar(usize),
    IntVar(usize),
    Sum(Box<SmoothExpr>, Box<SmoothExpr>),
    Prod(Box<SmoothExpr>, Box<SmoothExpr>),
    Neg(Box<SmoothExpr>),
    Exp(Box<SmoothExpr>),
}

impl SmoothExpr {
    pub fn zero() -> SmoothExpr {
        SmoothExpr::Const(0.0)
    }

    pub fn sum(a: SmoothExpr, b: SmoothExpr) -> SmoothExpr {
        SmoothExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: SmoothExpr, b: SmoothExpr) -> SmoothExpr {
        SmoothExpr::Prod(Box::new(a), Box::new(b))
    }

    pub fn neg(a: SmoothExpr) -> SmoothExpr {
        SmoothExpr::Neg(Box::new(a))
    }

    pub fn exp(a: SmoothExpr) -> SmoothExpr {
        SmoothExpr::Exp(Box::new(a))
    }

    pub fn max_vars(&self) -> (usize, usize) {
        match self {
            SmoothExpr::Const(_) => (0, 0),
            SmoothExpr::RealVar(a) => (a + 1, 0),
            SmoothExpr::IntVar(a) => (0, a + 1),
            SmoothExpr::Sum(a, b) | SmoothExpr::Prod(a, b) => {
                let (r1, i1) = a.max_vars();
                let (r2, i2) = b.max_vars();
                (r1.max(r2), i1.max(i2))
            }
            SmoothExpr::Neg(a) | SmoothExpr::Exp(a) => a.max_vars(),
        }
    }

    /// Renumber generators, e.g. when embedding into a coproduct.
    pub fn shift(&self, real_off: usize, int_off: usize) -> SmoothExpr {
        match self {
            SmoothExpr::Const(c) => SmoothExpr::Const(*c),
            SmoothExpr::RealVar(a) => SmoothExpr::RealVar(a + real_off),
            SmoothExpr::IntVar(a) => SmoothExpr::IntVar(a + int_off),
            SmoothExpr::Sum(a, b) => {
                SmoothExpr::sum(a.shift(real_off, int_off), b.shift(real_off, int_off))
            }
            SmoothExpr::Prod(a, b) => {
                SmoothExpr::prod(a.shift(real_off, int_off), b.shift(real_off, int_off))
            }
            SmoothExpr::Neg(a) => SmoothExpr::neg(a.shift(real_off, int_off)),
            SmoothExpr::Exp(a) => SmoothExpr::exp(a.shift(real_off, int_off)),
        }
    }

    /// Substitute 0 for the interior generators in `killed` and renumber
    /// the survivors according to `remap`.
    fn restrict(&self, killed: &BTreeSet<usize>, remap: &[usize]) -> SmoothExpr {
        match self {
            SmoothExpr::Const(c) => SmoothExpr::Const(*c),
            SmoothExpr::RealVar(a) => SmoothExpr::RealVar(*a),
            SmoothExpr::IntVar(a) => {
                if killed.contains(a) {
                    SmoothExpr::Const(0.0)
                } else {
                    SmoothExpr::IntVar(remap[*a])
                }
            }
            SmoothExpr::Sum(a, b) => {
                SmoothExpr::sum(a.restrict(killed, remap), b.restrict(killed, remap))
            }
            SmoothExpr::Prod(a, b) => {
                SmoothExpr::prod(a.restrict(killed, remap), b.restrict(killed, remap))
            }
            SmoothExpr::Neg(a) => SmoothExpr::neg(a.restrict(killed, remap)),
            SmoothExpr::Exp(a) => SmoothExpr::exp(a.restrict(killed, remap)),
        }
    }
}

/// Interior element in normal form y^alpha * exp(factor).
#[derive(Clone, Debug, PartialEq)]
pub struct InteriorExpr {
    pub alpha: Vec<u64>,
    pub factor: SmoothExpr,
}

impl InteriorExpr {
    pub fn monomial(alpha: Vec<u64>) -> InteriorExpr {
        InteriorExpr {
            alpha,
            factor: SmoothExpr::zero(),
        }
    }

    pub fn eval(&self, p: &RPoint) -> f64 {
        let mut v = self.factor.eval(p).exp();
        for (a, y) in self.alpha.iter().zip(&p.interiors) {
            v *= y.powi(*a as i32);
        }
        v
    }

    /// b-gradient of the logarithm: alpha on interior coordinates plus the
    /// b-gradient of the exp factor. No boundary limits are needed because
    /// the exponents enter linearly.
    pub fn log_bgrad(&self, p: &RPoint) -> Vec<f64> {
        let (_, mut g) = self.factor.eval_and_bderiv(p);
        for (a, slot) in self.alpha.iter().zip(&mut g[p.reals.len()..]) {
            *slot += *a as f64;
        }
        g
    }
}

/// Finitely presented interior ring with corners: free generators subject
/// to smooth relations f = 0 and interior relations g = h.
#[derive(Clone, Debug, PartialEq)]
pub struct CRingPresentation {
    pub real_names: Vec<String>,
    pub interior_names: Vec<String>,
    pub real_relations: Vec<SmoothExpr>,
    pub interior_relations: Vec<(InteriorExpr, InteriorExpr)>,
}

impl CRingPresentation {
    pub fn free(n_real: usize, n_interior: usize) -> CRingPresentation {
        CRingPresentation {
            real_names: (0..n_real).map(|i| format!("x{}", i + 1)).collect(),
            interior_names: (0..n_interior).map(|i| format!("y{}", i + 1)).collect(),
            real_relations: Vec::new(),
            interior_relations: Vec::new(),
        }
    }

    pub fn n_real(&self) -> usize {
        self.real_names.len()
    }

    pub fn n_interior(&self) -> usize {
        self.interior_names.len()
    }

    pub fn validate(&self) -> Result<(), BCotError> {
        let check = |r: usize, i: usize| {
            if r > self.n_real() {
                Err(BCotError::BadGenerator(r - 1))
            } else if i > self.n_interior() {
                Err(BCotError::BadGenerator(i - 1))
            } else {
                Ok(())
            }
        };
        for f in &self.real_relations {
            let (r, i) = f.max_vars();
            check(r, i)?;
        }
        for (g, h) in &self.interior_relations {
            if g.alpha.len() != self.n_interior() || h.alpha.len() != self.n_interior() {
                return Err(BCotError::PointShape);
            }
            let (r, i) = g.factor.max_vars();
            check(r, i)?;
            let (r, i) = h.factor.max_vars();
            check(r, i)?;
        }
        Ok(())
    }

    /// Sharpening of the interior part: the monoid presented by the
    /// exponent vectors of the interior relations (exp factors are units
    /// and die in the sharpening).
    pub fn sharpened_monoid(&self) -> Result<MonoidPresentation, MonoidError> {
        MonoidPresentation::new(
            self.interior_names.clone(),
            self.interior_relations
                .iter()
                .map(|(g, h)| (g.alpha.clone(), h.alpha.clone()))
                .collect(),
        )
    }
}

/// A candidate real point of a presentation, reals then interiors.
#[derive(Clone, Debug, PartialEq)]
pub struct RPoint {
    pub reals: Vec<f64>,
    pub interiors: Vec<f64>,
}

impl RPoint {
    pub fn new(reals: Vec<f64>, interiors: Vec<f64>) -> RPoint {
        RPoint { reals, interiors }
    }

    pub fn validate(&self, c: &CRingPresentation, tol: f64) -> Result<(), BCotError> {
        if self.reals.len() != c.n_real()
            || self.interiors.len() != c.n_interior()
            || self.interiors.iter().any(|y| *y < 0.0 || !y.is_finite())
            || self.reals.iter().any(|x| !x.is_finite())
        {
            return Err(BCotError::PointShape);
        }
        for (b, f) in c.real_relations.iter().enumerate() {
            let v = f.eval(self);
            if v.abs() > tol {
                return Err(BCotError::InvalidPoint {
                    relation: b,
                    residual: v.abs(),
                });
            }
        }
        for (b, (g, h)) in c.interior_relations.iter().enumerate() {
            let (vg, vh) = (g.eval(self), h.eval(self));
            let residual = (vg - vh).abs();
            if residual > tol * (1.0 + vg.abs().max(vh.abs())) {
                return Err(BCotError::InvalidPoint {
                    relation: c.real_relations.len() + b,
                    residual,
                });
            }
        }
        Ok(())
    }
}

impl SmoothExpr {
    pub fn eval(&self, p: &RPoint) -> f64 {
        match self {
            SmoothExpr::Const(c) => *c,
            SmoothExpr::RealVar(a) => p.reals[*a],
            SmoothExpr::IntVar(a) => p.interiors[*a],
            SmoothExpr::Sum(a, b) => a.eval(p) + b.eval(p),
            SmoothExpr::Prod(a, b) => a.eval(p) * b.eval(p),
            SmoothExpr::Neg(a) => -a.eval(p),
            SmoothExpr::Exp(a) => a.eval(p).exp(),
        }
    }

    /// Value together with the b-gradient (d/dx_a for real generators,
    /// y_a d/dy_a for interior ones), by forward-mode differentiation.
    /// Seeding the interior coordinates with y itself keeps the boundary
    /// case y = 0 exact: the operator y d/dy annihilates the fragment
    /// there instead of producing 0 * infinity.
    pub fn eval_and_bderiv(&self, p: &RPoint) -> (f64, Vec<f64>) {
        let n = p.reals.len() + p.interiors.len();
        match self {
            SmoothExpr::Const(c) => (*c, vec![0.0; n]),
            SmoothExpr::RealVar(a) => {
                let mut g = vec![0.0; n];
                g[*a] = 1.0;
                (p.reals[*a], g)
            }
            SmoothExpr::IntVar(a) => {
                let mut g = vec![0.0; n];
                g[p.reals.len() + *a] = p.interiors[*a];
                (p.interiors[*a], g)
            }
            SmoothExpr::Sum(a, b) => {
                let (va, mut ga) = a.eval_and_bderiv(p);
                let (vb, gb) = b.eval_and_bderiv(p);
                for (x, y) in ga.iter_mut().zip(&gb) {
                    *x += y;
                }
                (va + vb, ga)
            }
            SmoothExpr::Prod(a, b) => {
                let (va, ga) = a.eval_and_bderiv(p);
                let (vb, gb) = b.eval_and_bderiv(p);
                let g = ga
                    .iter()
                    .zip(&gb)
                    .map(|(x, y)| x * vb + va * y)
                    .collect();
                (va * vb, g)
            }
            SmoothExpr::Neg(a) => {
                let (v, mut g) = a.eval_and_bderiv(p);
                for x in &mut g {
                    *x = -*x;
                }
                (-v, g)
            }
            SmoothExpr::Exp(a) => {
                let (v, mut g) = a.eval_and_bderiv(p);
                let ev = v.exp();
                for x in &mut g {
                    *x *= ev;
                }
                (ev, g)
            }
        }
    }
}

/// Magnitudes of the R diagonal from a column-pivoted Householder QR,
/// in decreasing order; rank decisions read off this profile.
pub fn qr_diag_profile(rows: &[Vec<f64>]) -> Vec<f64> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    if m == 0 || n == 0 {
        return Vec::new();
    }
    // column-major working copy
    let mut a: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| rows[i][j]).collect()).collect();
    let steps = m.min(n);
    let mut diag = Vec::with_capacity(steps);
    for k in 0..steps {
        // pivot: remaining column with the largest tail norm
        let (pivot, norm) = (k..n)
            .map(|j| {
                let s: f64 = a[j][k..].iter().map(|x| x * x).sum();
                (j, s.sqrt())
            })
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        a.swap(k, pivot);
        if norm == 0.0 {
            diag.push(0.0);
            continue;
        }
        // Householder vector for column k
        let alpha = -a[k][k].signum() * norm;
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for col in a.iter_mut().skip(k) {
                let dot: f64 = col[k..].iter().zip(&v).map(|(x, y)| x * y).sum();
                let c = 2.0 * dot / vnorm2;
                for (x, y) in col[k..].iter_mut().zip(&v) {
                    *x -= c * y;
                }
            }
        }
        diag.push(a[k][k].abs());
    }
    diag
}

pub fn numerical_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let diag = qr_diag_profile(rows);
    let top = diag.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    diag.iter().take_while(|d| **d > tol * top).count()
}

/// Numeric fibre of the b-cotangent module at a point: one column per
/// generator (reals then interiors), one row per relation.
#[derive(Clone, Debug)]
pub struct BCotangentFibre {
    pub generator_labels: Vec<String>,
    pub gamma: Vec<Vec<f64>>,
    pub fibre_dim: usize,
    pub rank: usize,
    pub tolerance: f64,
    /// decreasing R-diagonal magnitudes of the rank factorization
    pub diag_profile: Vec<f64>,
}

impl BCotangentFibre {
    pub fn rank_at(&self, tol: f64) -> usize {
        let top = self.diag_profile.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return 0;
        }
        self.diag_profile.iter().take_while(|d| **d > tol * top).count()
    }
}

/// Relation rows of the fibre presentation: b-gradients of the real
/// relations, and differences of logarithmic b-gradients for the interior
/// relation pairs.
fn gamma_rows(c: &CRingPresentation, p: &RPoint) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(c.real_relations.len() + c.interior_relations.len());
    for f in &c.real_relations {
        rows.push(f.eval_and_bderiv(p).1);
    }
    for (g, h) in &c.interior_relations {
        let gg = g.log_bgrad(p);
        let gh = h.log_bgrad(p);
        rows.push(gg.iter().zip(&gh).map(|(x, y)| x - y).collect());
    }
    rows
}

pub fn bcotangent_fibre(
    c: &CRingPresentation,
    p: &RPoint,
    tol: f64,
) -> Result<BCotangentFibre, BCotError> {
    c.validate()?;
    p.validate(c, tol.max(1e-12) * 1e3)?;
    let gamma = gamma_rows(c, p);
    let diag = qr_diag_profile(&gamma);
    let top = diag.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        diag.iter().take_while(|d| **d > tol * top).count()
    };
    let n = c.n_real() + c.n_interior();
    let mut labels = c.real_names.clone();
    labels.extend(c.interior_names.iter().cloned());
    Ok(BCotangentFibre {
        generator_labels: labels,
        gamma,
        fibre_dim: n - rank,
        rank,
        tolerance: tol,
        diag_profile: diag,
    })
}

/// Generator-level morphism of presentations: one target expression per
/// source generator.
#[derive(Clone, Debug)]
pub struct PresentationMorphism {
    pub real_images: Vec<SmoothExpr>,
    pub interior_images: Vec<InteriorExpr>,
}

impl PresentationMorphism {
    /// Matrix of the induced map on b-cotangent fibres: one column per
    /// source generator, holding the b-gradient of its image at `p`.
    fn fibre_matrix_cols(&self, p: &RPoint) -> Vec<Vec<f64>> {
        let mut cols = Vec::new();
        for e in &self.real_images {
            cols.push(e.eval_and_bderiv(p).1);
        }
        for e in &self.interior_images {
            cols.push(e.log_bgrad(p));
        }
        cols
    }

    fn apply_point(&self, p: &RPoint, n_real: usize) -> RPoint {
        RPoint {
            reals: self.real_images.iter().map(|e| e.eval(p)).collect(),
            interiors: self.interior_images.iter().map(|e| e.eval(p)).collect(),
        }
        .tap_check(n_real)
    }
}

impl RPoint {
    fn tap_check(self, n_real: usize) -> RPoint {
        debug_assert_eq!(self.reals.len(), n_real);
        self
    }
}

/// Pushout presentation D ⊗_C E: disjoint generators of D and E, their
/// relations, and one gluing relation per generator of C.
pub fn pushout_presentation(
    c: &CRingPresentation,
    d: &CRingPresentation,
    e: &CRingPresentation,
    phi: &PresentationMorphism,
    psi: &PresentationMorphism,
) -> CRingPresentation {
    let (dr, di) = (d.n_real(), d.n_interior());
    let shift_int = |expr: &InteriorExpr| InteriorExpr {
        alpha: {
            let mut a = vec![0u64; di];
            a.extend(expr.alpha.iter().copied());
            a
        },
        factor: expr.factor.shift(dr, di),
    };
    let pad_int = |expr: &InteriorExpr| InteriorExpr {
        alpha: {
            let mut a = expr.alpha.clone();
            a.extend(vec![0u64; e.n_interior()]);
            a
        },
        factor: expr.factor.clone(),
    };
    let mut real_names = d.real_names.clone();
    real_names.extend(e.real_names.iter().map(|s| format!("{s}'")));
    let mut interior_names = d.interior_names.clone();
    interior_names.extend(e.interior_names.iter().map(|s| format!("{s}'")));
    let mut real_relations = d.real_relations.clone();
    real_relations.extend(e.real_relations.iter().map(|f| f.shift(dr, di)));
    let mut interior_relations: Vec<(InteriorExpr, InteriorExpr)> = d
        .interior_relations
        .iter()
        .map(|(g, h)| (pad_int(g), pad_int(h)))
        .collect();
    interior_relations.extend(
        e.interior_relations
            .iter()
            .map(|(g, h)| (shift_int(g), shift_int(h))),
    );
    for a in 0..c.n_real() {
        real_relations.push(SmoothExpr::sum(
            phi.real_images[a].clone(),
            SmoothExpr::neg(psi.real_images[a].shift(dr, di)),
        ));
    }
    for a in 0..c.n_interior() {
        interior_relations.push((
            pad_int(&phi.interior_images[a]),
            shift_int(&psi.interior_images[a]),
        ));
    }
    CRingPresentation {
        real_names,
        interior_names,
        real_relations,
        interior_relations,
    }
}

#[derive(Clone, Debug)]
pub struct PushoutReport {
    pub dim_c: usize,
    pub dim_d: usize,
    pub dim_e: usize,
    pub dim_f: usize,
    pub composition_zero: bool,
    pub exact_middle: bool,
    pub exact_right: bool,
    pub stable: bool,
}

impl PushoutReport {
    pub fn ok(&self) -> bool {
        self.composition_zero && self.exact_middle && self.exact_right
    }
}

/// dim of (span(extra vectors) + span(base rows)) / span(base rows)
fn dim_mod(extra: &[Vec<f64>], base: &[Vec<f64>], tol: f64) -> usize {
    let mut all = base.to_vec();
    all.extend_from_slice(extra);
    numerical_rank(&all, tol) - numerical_rank(base, tol)
}

fn pushout_ranks(
    c: &CRingPresentation,
    d: &CRingPresentation,
    e: &CRingPresentation,
    phi: &PresentationMorphism,
    psi: &PresentationMorphism,
    p_f: &RPoint,
    tol: f64,
) -> Result<PushoutReport, BCotError> {
    let (dr, di) = (d.n_real(), d.n_interior());
    let p_d = RPoint::new(p_f.reals[..dr].to_vec(), p_f.interiors[..di].to_vec());
    let p_e = RPoint::new(p_f.reals[dr..].to_vec(), p_f.interiors[di..].to_vec());
    let p_c = phi.apply_point(&p_d, c.n_real());
    let f = pushout_presentation(c, d, e, phi, psi);

    let fib_c = bcotangent_fibre(c, &p_c, tol)?;
    let fib_d = bcotangent_fibre(d, &p_d, tol)?;
    let fib_e = bcotangent_fibre(e, &p_e, tol)?;
    let fib_f = bcotangent_fibre(&f, p_f, tol)?;

    let nd = d.n_real() + d.n_interior();
    let ne = e.n_real() + e.n_interior();
    let nf = nd + ne;

    // first map: v -> (phi_* v, -psi_* v) into the D (+) E generator space
    let cols_phi = phi.fibre_matrix_cols(&p_d);
    let cols_psi = psi.fibre_matrix_cols(&p_e);
    let m1: Vec<Vec<f64>> = cols_phi
        .iter()
        .zip(&cols_psi)
        .map(|(a, b)| {
            let mut v = a.clone();
            v.extend(b.iter().map(|x| -x));
            v
        })
        .collect();
    // relation space of D (+) E inside R^{nf}
    let mut r_de: Vec<Vec<f64>> = Vec::new();
    for row in &fib_d.gamma {
        let mut v = row.clone();
        v.extend(vec![0.0; ne]);
        r_de.push(v);
    }
    for row in &fib_e.gamma {
        let mut v = vec![0.0; nd];
        v.extend_from_slice(row);
        r_de.push(v);
    }
    // second map: inclusion of D and E generators as F generators, which
    // interleaves the real and interior blocks
    let mut m2: Vec<Vec<f64>> = Vec::new();
    let idx_f = |is_e: bool, real: bool, a: usize| -> usize {
        match (real, is_e) {
            (true, false) => a,
            (true, true) => dr + a,
            (false, false) => f.n_real() + a,
            (false, true) => f.n_real() + di + a,
        }
    };
    for a in 0..d.n_real() {
        let mut v = vec![0.0; nf];
        v[idx_f(false, true, a)] = 1.0;
        m2.push(v);
    }
    for a in 0..d.n_interior() {
        let mut v = vec![0.0; nf];
        v[idx_f(false, false, a)] = 1.0;
        m2.push(v);
    }
    for a in 0..e.n_real() {
        let mut v = vec![0.0; nf];
        v[idx_f(true, true, a)] = 1.0;
        m2.push(v);
    }
    for a in 0..e.n_interior() {
        let mut v = vec![0.0; nf];
        v[idx_f(true, false, a)] = 1.0;
        m2.push(v);
    }
    // composite: image of each C generator pushed into F coordinates
    let composite: Vec<Vec<f64>> = m1
        .iter()
        .map(|col| {
            let mut v = vec![0.0; nf];
            for (src, w) in col.iter().enumerate() {
                for (dst, x) in m2[src].iter().enumerate() {
                    v[dst] += w * x;
                }
            }
            v
        })
        .collect();
    let composition_zero = dim_mod(&composite, &fib_f.gamma, tol) == 0;
    let im1 = dim_mod(&m1, &r_de, tol);
    let im2_on_f = dim_mod(&m2, &fib_f.gamma, tol);
    let ker2 = (fib_d.fibre_dim + fib_e.fibre_dim) - im2_on_f;
    let exact_middle = ker2 == im1;
    let exact_right = im2_on_f == fib_f.fibre_dim;
    Ok(PushoutReport {
        dim_c: fib_c.fibre_dim,
        dim_d: fib_d.fibre_dim,
        dim_e: fib_e.fibre_dim,
        dim_f: fib_f.fibre_dim,
        composition_zero,
        exact_middle,
        exact_right,
        stable: true,
    })
}

/// Exactness of the fibre sequence of a pushout of presentations at a
/// point of the pushout, by rank arithmetic at two tolerances.
pub fn pushout_sequence_check(
    c: &CRingPresentation,
    d: &CRingPresentation,
    e: &CRingPresentation,
    phi: &PresentationMorphism,
    psi: &PresentationMorphism,
    p_f: &RPoint,
    tol: f64,
) -> Result<PushoutReport, BCotError> {
    let mut report = pushout_ranks(c, d, e, phi, psi, p_f, tol)?;
    let check = pushout_ranks(c, d, e, phi, psi, p_f, 1e-10)?;
    report.stable = report.composition_zero == check.composition_zero
        && report.exact_middle == check.exact_middle
        && report.exact_right == check.exact_right;
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CornerSequenceReport {
    /// fibre dimension of the stratum ring
    pub dim_a: usize,
    /// fibre dimension of the ambient ring
    pub dim_b: usize,
    /// dimension of the conormal term: rank of the corner fibre at the prime
    pub dim_c: usize,
    pub left_injective: bool,
    pub middle_exact: bool,
    pub right_surjective: bool,
    pub well_defined: bool,
    pub stable: bool,
}

impl CornerSequenceReport {
    pub fn ok(&self) -> bool {
        self.dim_a + self.dim_c == self.dim_b
            && self.left_injective
            && self.middle_exact
            && self.right_surjective
            && self.well_defined
    }
}

fn corner_ranks(
    c: &CRingPresentation,
    prime_gens: &BTreeSet<usize>,
    p: &RPoint,
    tol: f64,
) -> Result<CornerSequenceReport, BCotError> {
    c.validate()?;
    let ni = c.n_interior();
    let nr = c.n_real();
    for a in prime_gens {
        if *a >= ni {
            return Err(BCotError::BadGenerator(*a));
        }
    }
    for a in 0..ni {
        let on_stratum = prime_gens.contains(&a);
        if on_stratum != (p.interiors[a] == 0.0) {
            return Err(BCotError::NotOnStratum(a));
        }
    }
    // the sharpened monoid and the face complementary to the prime
    let mp = c.sharpened_monoid()?;
    let aff = mp.integralize();
    let cls = aff.classify()?;
    if !cls.is_toric {
        return Err(BCotError::NotToric);
    }
    let lat = faces::enumerate_faces(&aff)?;
    let support: BTreeSet<usize> = (0..ni).filter(|a| !prime_gens.contains(a)).collect();
    let face = faces::face_with_support(&lat, &support)
        .ok_or(BCotError::NotAFace)?
        .clone();
    let fiber = faces::corner_fiber(
        &aff,
        &PrimeIdeal {
            complement: face,
            includes_zero: !prime_gens.is_empty(),
        },
    );
    let dim_c = fiber.rank();

    // the stratum ring: drop the prime's interior generators and set them
    // to zero in the remaining relations
    let mut remap = vec![usize::MAX; ni];
    let mut kept = Vec::new();
    for a in 0..ni {
        if !prime_gens.contains(&a) {
            remap[a] = kept.len();
            kept.push(a);
        }
    }
    let mut d = CRingPresentation {
        real_names: c.real_names.clone(),
        interior_names: kept.iter().map(|&a| c.interior_names[a].clone()).collect(),
        real_relations: c
            .real_relations
            .iter()
            .map(|f| f.restrict(prime_gens, &remap))
            .collect(),
        interior_relations: Vec::new(),
    };
    for (idx, (g, h)) in c.interior_relations.iter().enumerate() {
        let g_alive = g.alpha.iter().enumerate().all(|(a, e)| *e == 0 || !prime_gens.contains(&a));
        let h_alive = h.alpha.iter().enumerate().all(|(a, e)| *e == 0 || !prime_gens.contains(&a));
        if g_alive != h_alive {
            return Err(BCotError::NotAdapted(idx));
        }
        if g_alive {
            let reindex = |e: &InteriorExpr| InteriorExpr {
                alpha: kept.iter().map(|&a| e.alpha[a]).collect(),
                factor: e.factor.restrict(prime_gens, &remap),
            };
            d.interior_relations.push((reindex(g), reindex(h)));
        }
    }
    let p_d = RPoint::new(
        p.reals.clone(),
        kept.iter().map(|&a| p.interiors[a]).collect(),
    );

    let fib_b = bcotangent_fibre(c, p, tol)?;
    let fib_a = bcotangent_fibre(&d, &p_d, tol)?;
    let dim_a = fib_a.fibre_dim;
    let dim_b = fib_b.fibre_dim;

    // inclusion of the stratum generators into the ambient generator space
    let n_b = nr + ni;
    let mut incl: Vec<Vec<f64>> = Vec::new();
    for a in 0..nr {
        let mut v = vec![0.0; n_b];
        v[a] = 1.0;
        incl.push(v);
    }
    for &a in &kept {
        let mut v = vec![0.0; n_b];
        v[nr + a] = 1.0;
        incl.push(v);
    }
    let im1 = dim_mod(&incl, &fib_b.gamma, tol);
    let left_injective = im1 == dim_a;

    // quotient map onto the conormal term: interior generators go to the
    // free part of their class in the corner fibre group
    let mut q_cols: Vec<Vec<f64>> = vec![vec![0.0; dim_c]; n_b];
    for a in 0..ni {
        let class = fiber.ambient.free_part(&fiber.gen_images[a]);
        q_cols[nr + a] = class
            .iter()
            .map(|x| x.to_f64().unwrap_or(if x.is_positive() { f64::MAX } else { f64::MIN }))
            .collect();
    }
    let q_images: Vec<Vec<f64>> = q_cols.clone();
    let right_surjective = numerical_rank(&q_images, tol) == dim_c;
    // well-definedness: relation rows must map to zero in the quotient
    let mut well_defined = true;
    let apply_q = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; dim_c];
        for (a, w) in v.iter().enumerate() {
            for (slot, x) in out.iter_mut().zip(&q_cols[a]) {
                *slot += w * x;
            }
        }
        out
    };
    let scale: f64 = fib_b
        .gamma
        .iter()
        .flatten()
        .fold(1.0f64, |m, x| m.max(x.abs()));
    for row in &fib_b.gamma {
        if apply_q(row).iter().any(|x| x.abs() > tol * scale * 1e3) {
            well_defined = false;
        }
    }
    let composite_zero = incl
        .iter()
        .all(|v| apply_q(v).iter().all(|x| x.abs() <= tol * 1e3));
    let rank_q = numerical_rank(&q_images, tol);
    let ker2 = dim_b - rank_q.min(dim_b);
    let middle_exact = composite_zero && ker2 == im1;
    Ok(CornerSequenceReport {
        dim_a,
        dim_b,
        dim_c,
        left_injective,
        middle_exact,
        right_surjective,
        well_defined,
        stable: true,
    })
}

/// Exactness of 0 -> fibre(stratum ring) -> fibre(ambient ring) ->
/// conormal term -> 0 at a point lying on the stratum of a prime of the
/// sharpened monoid.
pub fn corner_sequence_check(
    c: &CRingPresentation,
    prime_gens: &BTreeSet<usize>,
    p: &RPoint,
    tol: f64,
) -> Result<CornerSequenceReport, BCotError> {
    let mut rep = corner_ranks(c, prime_gens, p, tol)?;
    let check = corner_ranks(c, prime_gens, p, 1e-10)?;
    rep.stable = rep.dim_a == check.dim_a
        && rep.dim_b == check.dim_b
        && rep.middle_exact == check.middle_exact;
    Ok(rep)
}

/// Central-difference validation of the b-gradient: linear steps for real
/// generators, multiplicative (log-coordinate) steps for interior ones.
/// Requires a strictly interior point.
pub fn finite_difference_check(e: &SmoothExpr, p: &RPoint) -> Result<f64, BCotError> {
    if p.interiors.iter().any(|y| *y <= 0.0) {
        return Err(BCotError::PointShape);
    }
    let (_, grad) = e.eval_and_bderiv(p);
    let h = 1e-6;
    let mut worst = 0.0f64;
    for a in 0..p.reals.len() {
        let mut hi = p.clone();
        let mut lo = p.clone();
        hi.reals[a] += h;
        lo.reals[a] -= h;
        let fd = (e.eval(&hi) - e.eval(&lo)) / (2.0 * h);
        worst = worst.max((fd - grad[a]).abs() / (1.0 + grad[a].abs()));
    }
    for a in 0..p.interiors.len() {
        let mut hi = p.clone();
        let mut lo = p.clone();
        hi.interiors[a] *= h.exp();
        lo.interiors[a] *= (-h).exp();
        let fd = (e.eval(&hi) - e.eval(&lo)) / (2.0 * h);
        let an = grad[p.reals.len() + a];
        worst = worst.max((fd - an).abs() / (1.0 + an.abs()));
    }
    Ok(worst)
}
