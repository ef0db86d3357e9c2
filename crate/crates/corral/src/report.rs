//! Command dispatch and deterministic reporting. JSON output uses sorted
//! keys so identical inputs yield byte-identical reports; the human form
//! is rendered from the same data.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bcotangent::{
    bcotangent_fibre, corner_sequence_check, BCotError, CRingPresentation, PresentationMorphism,
    RPoint, RANK_TOLERANCE,
};
use crate::doc::{Document, GermPairDoc, ParseError, Payload};
use crate::faces;
use crate::gcorners::{build_local_model, ModelError};
use crate::lattice::AbelianGroupData;
use crate::monoid::{AffineMonoid, MonoidClassification, MonoidError, Tri, HILBERT_CAP};
use crate::transverse::{
    b_transverse, c_transverse, corner_grading_check, fibre_product_germ, strict_corner_check,
    GermMap, TransverseError,
};
use crate::word::WordCaps;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    DomainError,
    ParseError,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::DomainError => 1,
            Status::ParseError => 2,
            Status::Unknown => 3,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::DomainError => "domain_error",
            Status::ParseError => "parse_error",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub tolerance: f64,
    pub status: Status,
    pub results: Value,
    pub warnings: Vec<String>,
    pub human: Vec<String>,
}

impl Report {
    pub fn render_json(&self) -> String {
        // serde_json's default map is ordered, so keys come out sorted
        let v = json!({
            "command": self.command,
            "format": 1,
            "results": self.results,
            "status": self.status.as_str(),
            "tolerance": self.tolerance,
            "warnings": self.warnings,
        });
        serde_json::to_string_pretty(&v).expect("report serialization")
    }

    pub fn render_human(&self, color: bool) -> String {
        let mut out = format!("corral {} (tol {:e})\n", self.command, self.tolerance);
        for line in &self.human {
            let line = if color {
                colorize(line)
            } else {
                line.clone()
            };
            out.push_str(&line);
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str("warning: ");
            out.push_str(w);
            out.push('\n');
        }
        if self.status != Status::Ok {
            out.push_str(&format!("status: {}\n", self.status.as_str()));
        }
        out
    }
}

fn colorize(line: &str) -> String {
    line.replace(": yes", ": \x1b[32myes\x1b[0m")
        .replace(": no", ": \x1b[31mno\x1b[0m")
        .replace(" pass", " \x1b[32mpass\x1b[0m")
        .replace(" fail", " \x1b[31mfail\x1b[0m")
}

pub struct Options {
    pub tolerance: f64,
    pub bound: Option<u64>,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            tolerance: RANK_TOLERANCE,
            bound: None,
        }
    }
}

fn report(command: &str, opts: &Options, status: Status, results: Value, human: Vec<String>) -> Report {
    Report {
        command: command.into(),
        tolerance: opts.tolerance,
        status,
        results,
        warnings: Vec::new(),
        human,
    }
}

fn error_report(command: &str, opts: &Options, status: Status, msg: String) -> Report {
    report(
        command,
        opts,
        status,
        json!({ "error": msg }),
        vec![format!("error: {msg}")],
    )
}

fn monoid_status(e: &MonoidError) -> Status {
    match e {
        MonoidError::HilbertBoundExceeded { .. } => Status::Unknown,
        _ => Status::DomainError,
    }
}

fn tri_str(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Unknown => "unknown",
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// kind filter: commands state which document kinds they accept
fn want_monoid(doc: &Document) -> Result<AffineMonoid, String> {
    match &doc.payload {
        Payload::MonoidPresentation(p) | Payload::LocalModel(p) => Ok(p.integralize()),
        Payload::AffineMonoid(m) => Ok(m.clone()),
        _ => Err(format!(
            "`{}` is a {}, expected a monoid document",
            doc.name,
            doc.kind()
        )),
    }
}

fn classification_json(c: &MonoidClassification) -> Value {
    json!({
        "free": yn(c.is_free),
        "integral": tri_str(c.is_integral),
        "rank": c.rank,
        "saturated": yn(c.is_saturated),
        "sharp": yn(c.is_sharp),
        "simplicial": yn(c.is_simplicial),
        "torsion_free": yn(c.is_torsion_free),
        "toric": yn(c.is_toric),
        "weakly_toric": yn(c.is_weakly_toric),
    })
}

fn group_desc(g: &AbelianGroupData) -> String {
    let mut parts = Vec::new();
    if g.free_rank > 0 {
        parts.push(format!("Z^{}", g.free_rank));
    }
    for d in &g.torsion_orders {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" (+) ")
    }
}

fn gens_json(m: &AffineMonoid) -> Value {
    Value::Array(
        m.gen_images
            .iter()
            .map(|g| {
                Value::Array(
                    g.iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn monoid_props(doc: &Document, opts: &Options) -> Report {
    let cmd = "monoid props";
    let classification = match &doc.payload {
        Payload::MonoidPresentation(p) | Payload::LocalModel(p) => {
            p.classify(&WordCaps::default())
        }
        Payload::AffineMonoid(m) => m.classify(),
        _ => {
            return error_report(
                cmd,
                opts,
                Status::ParseError,
                format!("`{}` is a {}, expected a monoid document", doc.name, doc.kind()),
            )
        }
    };
    let c = match classification {
        Ok(c) => c,
        Err(e) => return error_report(cmd, opts, monoid_status(&e), e.to_string()),
    };
    let status = if c.is_integral == Tri::Unknown {
        Status::Unknown
    } else {
        Status::Ok
    };
    let human = vec![
        format!("monoid: {}", doc.name),
        format!("rank: {}", c.rank),
        format!("integral: {}", tri_str(c.is_integral)),
        format!(
            "sharp: {}; torsion-free: {}; saturated: {}",
            yn(c.is_sharp),
            yn(c.is_torsion_free),
            yn(c.is_saturated)
        ),
        format!("weakly toric: {}; toric: {}", yn(c.is_weakly_toric), yn(c.is_toric)),
        format!("simplicial: {}; free: {}", yn(c.is_simplicial), yn(c.is_free)),
    ];
    report(
        cmd,
        opts,
        status,
        json!({ "classification": classification_json(&c), "name": doc.name }),
        human,
    )
}

pub fn monoid_reflect(doc: &Document, opts: &Options) -> Report {
    let cmd = "monoid reflect";
    let affine = match want_monoid(doc) {
        Ok(m) => m,
        Err(msg) => return error_report(cmd, opts, Status::ParseError, msg),
    };
    let mut human = vec![format!("monoid: {}", doc.name)];
    human.push(format!("groupification: {}", group_desc(&affine.ambient)));
    human.push(format!("integral generators: {}", affine.gen_images.len()));
    let tf = affine.torsion_free_quotient();
    human.push(format!("torsion-free quotient: rank {}", tf.rank()));
    let cap = opts.bound.map(|b| b as usize).unwrap_or(HILBERT_CAP);
    let sat = match tf.saturate(cap) {
        Ok(s) => s,
        Err(e) => return error_report(cmd, opts, monoid_status(&e), e.to_string()),
    };
    human.push(format!(
        "saturation: {} generators",
        sat.monoid.gen_images.len()
    ));
    let split = sat.monoid.sharpen_split();
    human.push(format!(
        "units: {}; sharp part: rank {} with {} generators",
        group_desc(&split.units),
        split.sharp.rank(),
        split.sharp.gen_images.len()
    ));
    let results = json!({
        "groupification": group_desc(&affine.ambient),
        "integral": { "gens": gens_json(&affine) },
        "name": doc.name,
        "saturated": {
            "gens": gens_json(&sat.monoid),
            "witnesses": sat.witnesses.iter().map(|(g, n)| json!({
                "element": g.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "multiple": n.to_string(),
            })).collect::<Vec<_>>(),
        },
        "sharp": {
            "gens": gens_json(&split.sharp),
            "rank": split.sharp.rank(),
            "units": group_desc(&split.units),
        },
        "torsion_free": { "gens": gens_json(&tf), "rank": tf.rank() },
    });
    report(cmd, opts, Status::Ok, results, human)
}

pub fn monoid_primes(doc: &Document, opts: &Options) -> Report {
    let cmd = "monoid primes";
    let affine = match want_monoid(doc) {
        Ok(m) => m,
        Err(msg) => return error_report(cmd, opts, Status::ParseError, msg),
    };
    let primes = match faces::primes(&affine, true) {
        Ok(p) => p,
        Err(e) => return error_report(cmd, opts, Status::DomainError, e.to_string()),
    };
    let dim = match faces::monoid_dimension(&affine, true) {
        Ok(d) => d,
        Err(e) => return error_report(cmd, opts, Status::DomainError, e.to_string()),
    };
    let mut rows = Vec::new();
    let mut human = vec![
        format!("monoid: {}", doc.name),
        format!("primes with zero: {}", primes.len()),
        format!("dimension: {dim}"),
    ];
    for p in &primes {
        let support: Vec<usize> = p.complement.support.iter().copied().collect();
        human.push(format!(
            "prime over face {:?} (face rank {})",
            support, p.complement.sharp_rank
        ));
        rows.push(json!({
            "face_rank": p.complement.sharp_rank,
            "face_support": support,
        }));
    }
    report(
        cmd,
        opts,
        Status::Ok,
        json!({ "dimension": dim, "name": doc.name, "primes": rows }),
        human,
    )
}

pub fn model_corners(doc: &Document, opts: &Options) -> Report {
    let cmd = "model corners";
    let affine = match want_monoid(doc) {
        Ok(m) => m,
        Err(msg) => return error_report(cmd, opts, Status::ParseError, msg),
    };
    let model = match build_local_model(&affine) {
        Ok(m) => m,
        Err(e) => {
            let status = match e {
                ModelError::Monoid(ref me) => monoid_status(me),
                _ => Status::DomainError,
            };
            return error_report(cmd, opts, status, e.to_string());
        }
    };
    let decomp = match model.corner_decomposition() {
        Ok(d) => d,
        Err(e) => return error_report(cmd, opts, Status::DomainError, e.to_string()),
    };
    let grading: Vec<String> = decomp
        .grading
        .iter()
        .enumerate()
        .map(|(i, c)| format!("C{i}:{c}"))
        .collect();
    let mut human = vec![
        format!("model: {} (dim {})", doc.name, model.dim()),
        format!("grading {}", grading.join(" ")),
    ];
    let mut rows = Vec::new();
    for s in &decomp.strata {
        let support: Vec<usize> = s.prime.complement.support.iter().copied().collect();
        human.push(format!(
            "stratum codim {}: face {:?}, fibre rank {}",
            s.codim,
            support,
            s.fiber.rank()
        ));
        rows.push(json!({
            "codim": s.codim,
            "face_support": support,
            "fibre_rank": s.fiber.rank(),
        }));
    }
    report(
        cmd,
        opts,
        Status::Ok,
        json!({
            "dim": model.dim(),
            "grading": decomp.grading,
            "name": doc.name,
            "strata": rows,
        }),
        human,
    )
}

fn transverse_status(e: &TransverseError) -> Status {
    match e {
        TransverseError::Monoid(me) => monoid_status(me),
        _ => Status::DomainError,
    }
}

/// Elaborate a germ-pair document into checked germ maps.
pub fn elaborate_germs(gp: &GermPairDoc) -> Result<(GermMap, GermMap), String> {
    let target = gp.target.integralize();
    let mut out = Vec::new();
    for m in &gp.maps {
        let source = m.source.integralize();
        let phi_images: Vec<Vec<BigInt>> = m
            .send
            .iter()
            .map(|coeffs| {
                let mut img = vec![BigInt::from(0); source.rank()];
                for (i, &c) in coeffs.iter().enumerate() {
                    let g = source.ambient.free_part(&source.gen_images[i]);
                    for (slot, x) in img.iter_mut().zip(g) {
                        *slot += x * BigInt::from(c);
                    }
                }
                img
            })
            .collect();
        let jac = m
            .jac
            .iter()
            .map(|row| row.to_vec())
            .collect();
        let germ = GermMap::new(
            source,
            m.source_free,
            target.clone(),
            gp.target_free,
            phi_images,
            jac,
        )
        .map_err(|e| format!("map `{}`: {e}", m.name))?;
        out.push(germ);
    }
    let h = out.pop().unwrap();
    let g = out.pop().unwrap();
    Ok((g, h))
}

pub fn germ_check(doc: &Document, opts: &Options) -> Report {
    let cmd = "germ check";
    let Payload::GermPair(gp) = &doc.payload else {
        return error_report(
            cmd,
            opts,
            Status::ParseError,
            format!("`{}` is a {}, expected a germ pair", doc.name, doc.kind()),
        );
    };
    let (g, h) = match elaborate_germs(gp) {
        Ok(p) => p,
        Err(msg) => return error_report(cmd, opts, Status::DomainError, msg),
    };
    let is_b = match b_transverse(&g, &h) {
        Ok(b) => b,
        Err(e) => return error_report(cmd, opts, transverse_status(&e), e.to_string()),
    };
    let rep = match c_transverse(&g, &h) {
        Ok(r) => r,
        Err(e) => return error_report(cmd, opts, transverse_status(&e), e.to_string()),
    };
    let c_desc = if rep.is_c_transverse() {
        "yes".to_string()
    } else if !rep.is_b_transverse {
        "no (not b-transverse)".to_string()
    } else if !rep.normal_surjective {
        "no (normal surjectivity)".to_string()
    } else {
        "no (face condition)".to_string()
    };
    let human = vec![
        format!("germ pair: {}", doc.name),
        format!("b-transverse: {}; c-transverse: {}", yn(is_b), c_desc),
        format!("witness: {}", rep.witness),
    ];
    report(
        cmd,
        opts,
        Status::Ok,
        json!({
            "b_transverse": yn(is_b),
            "c_transverse": yn(rep.is_c_transverse()),
            "face_condition": yn(rep.face_condition),
            "name": doc.name,
            "normal_surjective": yn(rep.normal_surjective),
            "witness": rep.witness,
        }),
        human,
    )
}

pub fn germ_product(doc: &Document, opts: &Options) -> Report {
    let cmd = "germ product";
    let Payload::GermPair(gp) = &doc.payload else {
        return error_report(
            cmd,
            opts,
            Status::ParseError,
            format!("`{}` is a {}, expected a germ pair", doc.name, doc.kind()),
        );
    };
    let (g, h) = match elaborate_germs(gp) {
        Ok(p) => p,
        Err(msg) => return error_report(cmd, opts, Status::DomainError, msg),
    };
    let fp = match fibre_product_germ(&g, &h) {
        Ok(f) => f,
        Err(e) => return error_report(cmd, opts, transverse_status(&e), e.to_string()),
    };
    let mut human = vec![
        format!("germ pair: {}", doc.name),
        format!(
            "fibre-product monoid W: rank {} with {} generators; dim W = {}",
            fp.w_monoid.rank(),
            fp.w_monoid.gen_images.len(),
            fp.dim_w
        ),
    ];
    let mut results = json!({
        "dim_w": fp.dim_w,
        "k_hilbert_basis": fp.k_hb_ambient.iter().map(|v| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "name": doc.name,
        "w_gens": gens_json(&fp.w_monoid),
        "w_rank": fp.w_monoid.rank(),
    });
    match corner_grading_check(&g, &h) {
        Ok(grading) => {
            let counts: Vec<String> = grading
                .w_counts
                .iter()
                .enumerate()
                .map(|(i, c)| format!("C{i}:{c}"))
                .collect();
            human.push(format!(
                "grading {} (law i+l=j+k: {})",
                counts.join(" "),
                if grading.law_holds { "pass" } else { "fail" }
            ));
            results["grading"] = json!({
                "crosstab_counts": grading.crosstab_counts,
                "law_holds": grading.law_holds,
                "rows": grading.rows.iter().map(|r| json!([r.i, r.j, r.k, r.l])).collect::<Vec<_>>(),
                "w_counts": grading.w_counts,
            });
            match strict_corner_check(&g, &h) {
                Ok(sc) => {
                    human.push(format!("strict corners: {}", yn(sc.sc)));
                    results["strict_corners"] = json!(yn(sc.sc));
                }
                Err(e) => {
                    return error_report(cmd, opts, transverse_status(&e), e.to_string())
                }
            }
        }
        Err(TransverseError::NotCTransverse(w)) => {
            human.push(format!("grading: skipped (not c-transverse: {w})"));
            results["grading"] = json!("not_c_transverse");
        }
        Err(e) => return error_report(cmd, opts, transverse_status(&e), e.to_string()),
    }
    report(cmd, opts, Status::Ok, results, human)
}

fn bcot_status(e: &BCotError) -> Status {
    match e {
        BCotError::Monoid(me) => monoid_status(me),
        _ => Status::DomainError,
    }
}

fn want_cring<'d>(doc: &'d Document, cmd: &str, opts: &Options) -> Result<&'d crate::doc::CringDoc, Report> {
    match &doc.payload {
        Payload::Cring(c) => Ok(c),
        _ => Err(error_report(
            cmd,
            opts,
            Status::ParseError,
            format!("`{}` is a {}, expected a ring presentation", doc.name, doc.kind()),
        )),
    }
}

fn want_point<'d>(doc: &'d Document, cmd: &str, opts: &Options) -> Result<&'d RPoint, Report> {
    match &doc.payload {
        Payload::Point(p) => Ok(p),
        _ => Err(error_report(
            cmd,
            opts,
            Status::ParseError,
            format!("`{}` is a {}, expected a point", doc.name, doc.kind()),
        )),
    }
}

pub fn bcot_fibre(ring_doc: &Document, point_doc: &Document, opts: &Options) -> Report {
    let cmd = "bcot fibre";
    let cring = match want_cring(ring_doc, cmd, opts) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let point = match want_point(point_doc, cmd, opts) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let fibre = match bcotangent_fibre(&cring.ring, point, opts.tolerance) {
        Ok(f) => f,
        Err(e) => return error_report(cmd, opts, bcot_status(&e), e.to_string()),
    };
    let stable = fibre.rank_at(1e-10) == fibre.rank;
    let human = vec![
        format!("ring: {}; point: {}", ring_doc.name, point_doc.name),
        format!(
            "fibre dim: {} (rank {} of {} generators)",
            fibre.fibre_dim,
            fibre.rank,
            fibre.generator_labels.len()
        ),
        format!("rank stable at 1e-10: {}", yn(stable)),
    ];
    report(
        cmd,
        opts,
        Status::Ok,
        json!({
            "diag_profile": fibre.diag_profile,
            "fibre_dim": fibre.fibre_dim,
            "gamma": fibre.gamma,
            "generators": fibre.generator_labels,
            "point": point_doc.name,
            "rank": fibre.rank,
            "ring": ring_doc.name,
            "stable": yn(stable),
        }),
        human,
    )
}

pub fn bcot_pushout(
    d_doc: &Document,
    e_doc: &Document,
    point_doc: &Document,
    opts: &Options,
) -> Report {
    let cmd = "bcot pushout";
    let d = match want_cring(d_doc, cmd, opts) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let e = match want_cring(e_doc, cmd, opts) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let point = match want_point(point_doc, cmd, opts) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let (Some(bd), Some(be)) = (&d.base, &e.base) else {
        return error_report(
            cmd,
            opts,
            Status::DomainError,
            "both rings need a `base` block describing the shared base ring".into(),
        );
    };
    if bd.real_names.len() != be.real_names.len()
        || bd.interior_names.len() != be.interior_names.len()
    {
        return error_report(
            cmd,
            opts,
            Status::DomainError,
            "the two base blocks declare different generator counts".into(),
        );
    }
    let base_ring = CRingPresentation {
        real_names: bd.real_names.clone(),
        interior_names: bd.interior_names.clone(),
        real_relations: Vec::new(),
        interior_relations: Vec::new(),
    };
    let phi = PresentationMorphism {
        real_images: bd.real_images.clone(),
        interior_images: bd.interior_images.clone(),
    };
    let psi = PresentationMorphism {
        real_images: be.real_images.clone(),
        interior_images: be.interior_images.clone(),
    };
    let rep = match crate::bcotangent::pushout_sequence_check(
        &base_ring,
        &d.ring,
        &e.ring,
        &phi,
        &psi,
        point,
        opts.tolerance,
    ) {
        Ok(r) => r,
        Err(err) => return error_report(cmd, opts, bcot_status(&err), err.to_string()),
    };
    let human = vec![
        format!(
            "pushout of {} and {} over their base, at {}",
            d_doc.name, e_doc.name, point_doc.name
        ),
        format!(
            "sequence {} -> {} (+) {} -> {} -> 0",
            rep.dim_c, rep.dim_d, rep.dim_e, rep.dim_f
        ),
        format!(
            "composition zero: {}; exact middle: {}; exact right: {}",
            yn(rep.composition_zero),
            yn(rep.exact_middle),
            yn(rep.exact_right)
        ),
        format!("exactness check: {}", if rep.ok() { "pass" } else { "fail" }),
    ];
    let mut r = report(
        cmd,
        opts,
        Status::Ok,
        json!({
            "composition_zero": yn(rep.composition_zero),
            "dims": [rep.dim_c, rep.dim_d, rep.dim_e, rep.dim_f],
            "exact_middle": yn(rep.exact_middle),
            "exact_right": yn(rep.exact_right),
            "ok": yn(rep.ok()),
            "stable": yn(rep.stable),
        }),
        human,
    );
    if !rep.stable {
        r.warnings
            .push("exactness verdict changes between tolerances 1e-8 and 1e-10".into());
    }
    r
}

pub fn bcot_corner_seq(ring_doc: &Document, point_doc: &Document, opts: &Options) -> Report {
    let cmd = "bcot corner-seq";
    let cring = match want_cring(ring_doc, cmd, opts) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let point = match want_point(point_doc, cmd, opts) {
        Ok(p) => p,
        Err(r) => return r,
    };
    // the prime is read off the point: interior generators that vanish
    let prime: BTreeSet<usize> = point
        .interiors
        .iter()
        .enumerate()
        .filter(|(_, y)| **y == 0.0)
        .map(|(i, _)| i)
        .collect();
    let rep = match corner_sequence_check(&cring.ring, &prime, point, opts.tolerance) {
        Ok(r) => r,
        Err(e) => return error_report(cmd, opts, bcot_status(&e), e.to_string()),
    };
    let prime_names: Vec<&str> = prime
        .iter()
        .map(|&i| cring.ring.interior_names[i].as_str())
        .collect();
    let human = vec![
        format!("ring: {}; point: {}", ring_doc.name, point_doc.name),
        format!("prime stratum: {{{}}}", prime_names.join(", ")),
        format!(
            "sequence 0 -> {} -> {} -> {} -> 0",
            rep.dim_a, rep.dim_b, rep.dim_c
        ),
        format!(
            "left injective: {}; middle exact: {}; right surjective: {}",
            yn(rep.left_injective),
            yn(rep.middle_exact),
            yn(rep.right_surjective)
        ),
        format!("exactness check: {}", if rep.ok() { "pass" } else { "fail" }),
    ];
    let mut r = report(
        cmd,
        opts,
        Status::Ok,
        json!({
            "dims": [rep.dim_a, rep.dim_b, rep.dim_c],
            "left_injective": yn(rep.left_injective),
            "middle_exact": yn(rep.middle_exact),
            "ok": yn(rep.ok()),
            "prime": prime.iter().copied().collect::<Vec<_>>(),
            "right_surjective": yn(rep.right_surjective),
            "stable": yn(rep.stable),
        }),
        human,
    );
    if !rep.stable {
        r.warnings
            .push("rank verdicts change between tolerances 1e-8 and 1e-10".into());
    }
    r
}

pub fn parse_error_report(command: &str, opts: &Options, file: &str, e: &ParseError) -> Report {
    error_report(
        command,
        opts,
        Status::ParseError,
        format!("{file}: {e}"),
    )
}

pub fn io_error_report(command: &str, opts: &Options, file: &str, e: &std::io::Error) -> Report {
    error_report(command, opts, Status::ParseError, format!("{file}: {e}"))
}
