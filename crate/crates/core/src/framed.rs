//! Framed representations of the tensor-power quiver: per-index-class
//! identification maps, their consistency checks, trivialization, and
//! the two functors relating them to Beilinson-quiver representations.
//!
//! Framing data is stored on a spanning set only: for each index class
//! with nonzero dimension, one invertible matrix per vertex relative to
//! the class basepoint (its lexicographically least vertex). The full
//! pairwise system phi(a,b) = phi(b) phi(a)^-1 is reconstructed on
//! demand, which keeps storage linear in the vertex count and makes the
//! composition identities hold by construction.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::quiver::{Quiver, QuiverKind};
use crate::rep::{RepMorphism, Representation};
use crate::scalar::Field;

/// Classes at most this large get the consistency condition checked
/// verbatim over all vertex triples; larger classes rely on the
/// equivalent spanning-set formulation.
pub const TRIPLE_CLASS_BOUND: usize = 12;

/// One inconsistency found by the framing checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FramingIssue {
    /// phi(b,c) . phi(a,b) differs from phi(a,c).
    Cocycle { a: String, b: String, c: String },
    /// phi(a,a) is not the identity.
    NotIdentity { a: String },
    /// Same-index same-label arrows that the framing fails to identify.
    ArrowCompat { index: u32, label: u8 },
}

impl fmt::Display for FramingIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FramingIssue::Cocycle { a, b, c } => {
                write!(f, "phi({b},{c}) . phi({a},{b}) != phi({a},{c})")
            }
            FramingIssue::NotIdentity { a } => write!(f, "phi({a},{a}) is not the identity"),
            FramingIssue::ArrowCompat { index, label } => write!(
                f,
                "arrows of index {index} with label {label} are not identified by the framing"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FramingReport {
    pub issues: Vec<FramingIssue>,
}

impl fmt::Display for FramingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "  {issue}")?;
        }
        Ok(())
    }
}

/// A representation of the tensor-power quiver together with framing
/// isomorphisms identifying the spaces within each index class.
#[derive(Debug, Clone, PartialEq)]
pub struct FramedRep<F: Field> {
    rep: Representation<F>,
    /// index class -> vertex -> map from the class basepoint's space.
    /// Only classes of nonzero dimension appear; the basepoint entry is
    /// always the identity.
    phi: BTreeMap<u32, BTreeMap<usize, Mat<F>>>,
}

/// Lexicographically least vertex of each index 0..n-1, the canonical
/// basepoints for trivialization and for the Beilinson-direction
/// functor.
pub fn default_basepoints(q: &Quiver) -> Result<Vec<usize>> {
    if q.kind() != QuiverKind::TensorPower {
        return Err(Error::Incompatible(format!(
            "basepoints are defined on tensor-power quivers, got {}",
            q.kind().as_str()
        )));
    }
    (0..q.n())
        .map(|i| {
            q.vertices_of_index(i)
                .first()
                .copied()
                .ok_or_else(|| Error::InternalInconsistency(format!("empty index class {i}")))
        })
        .collect()
}

fn check_basepoints(q: &Quiver, basepoints: &[usize]) -> Result<()> {
    if basepoints.len() != q.n() as usize {
        return Err(Error::InvalidParameter(format!(
            "expected {} basepoints, got {}",
            q.n(),
            basepoints.len()
        )));
    }
    for (i, &b) in basepoints.iter().enumerate() {
        if b >= q.vertices().len() {
            return Err(Error::InvalidParameter(format!("vertex index {b} out of range")));
        }
        if q.vertex(b).index() != i as u32 {
            return Err(Error::InvalidParameter(format!(
                "basepoint {} has index {}, expected {i}",
                q.vertex(b),
                q.vertex(b).index()
            )));
        }
    }
    Ok(())
}

/// Per-class dimension, requiring constancy within every index class
/// (framability of the underlying spaces).
fn class_dims(rep: &Representation<impl Field>) -> Result<Vec<usize>> {
    let q = rep.quiver();
    let mut out = Vec::with_capacity(q.max_index() as usize + 1);
    for k in 0..=q.max_index() {
        let class = q.vertices_of_index(k);
        let d = rep.dim(class[0]);
        for &vi in class {
            if rep.dim(vi) != d {
                return Err(Error::MalformedFraming(format!(
                    "index class {k} mixes dimensions {d} and {} (at {}); \
                     same-index spaces must be isomorphic",
                    rep.dim(vi),
                    q.vertex(vi)
                )));
            }
        }
        out.push(d);
    }
    Ok(out)
}

fn require_tensor(rep: &Representation<impl Field>) -> Result<()> {
    if rep.quiver().kind() != QuiverKind::TensorPower {
        return Err(Error::Incompatible(format!(
            "framed representations live on tensor-power quivers, got {}",
            rep.quiver().kind().as_str()
        )));
    }
    Ok(())
}

impl<F: Field> FramedRep<F> {
    /// Identity framings on every class. Requires per-class constant
    /// dimensions.
    pub fn with_trivial_framing(rep: Representation<F>) -> Result<Self> {
        require_tensor(&rep)?;
        let dims = class_dims(&rep)?;
        let q = rep.quiver().clone();
        let mut phi = BTreeMap::new();
        for (k, &d) in dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let class: BTreeMap<usize, Mat<F>> = q
                .vertices_of_index(k as u32)
                .iter()
                .map(|&vi| (vi, Mat::identity(d)))
                .collect();
            phi.insert(k as u32, class);
        }
        Ok(FramedRep { rep, phi })
    }

    /// Framings given relative to the class basepoints. A missing
    /// basepoint entry means the identity; any other missing vertex of
    /// a nonzero class is rejected.
    pub fn from_basepoint_framings(
        rep: Representation<F>,
        mut phi: BTreeMap<u32, BTreeMap<usize, Mat<F>>>,
    ) -> Result<Self> {
        require_tensor(&rep)?;
        let dims = class_dims(&rep)?;
        let q = rep.quiver().clone();
        for (k, &d) in dims.iter().enumerate() {
            let k32 = k as u32;
            if d == 0 {
                if phi.remove(&k32).is_some_and(|m| !m.is_empty()) {
                    return Err(Error::MalformedFraming(format!(
                        "framings given for zero-dimensional index class {k}"
                    )));
                }
                continue;
            }
            let class = phi.entry(k32).or_default();
            let base = q.vertices_of_index(k32)[0];
            class.entry(base).or_insert_with(|| Mat::identity(d));
            if class[&base] != Mat::identity(d) {
                return Err(Error::FramingViolated {
                    report: FramingReport {
                        issues: vec![FramingIssue::NotIdentity {
                            a: q.vertex(base).to_string(),
                        }],
                    },
                });
            }
            for &vi in q.vertices_of_index(k32) {
                let m = class.get(&vi).ok_or_else(|| {
                    Error::MalformedFraming(format!(
                        "no framing for vertex {} of index class {k}",
                        q.vertex(vi)
                    ))
                })?;
                if m.rows() != d || m.cols() != d {
                    return Err(Error::MalformedFraming(format!(
                        "framing at {} is {}x{}, expected {d}x{d}",
                        q.vertex(vi),
                        m.rows(),
                        m.cols()
                    )));
                }
                if m.inverse().is_none() {
                    return Err(Error::MalformedFraming(format!(
                        "framing at {} is singular",
                        q.vertex(vi)
                    )));
                }
            }
            if class.len() != q.vertices_of_index(k32).len() {
                return Err(Error::MalformedFraming(format!(
                    "framings for index class {k} name vertices outside the class"
                )));
            }
        }
        phi.retain(|_, m| !m.is_empty());
        Ok(FramedRep { rep, phi })
    }

    /// Framings given as explicit isomorphisms on ordered same-index
    /// pairs. The pairs must span each nonzero class; the resolved
    /// spanning system is then checked against every given pair, so an
    /// inconsistent (non-composing) assignment is reported rather than
    /// silently repaired.
    pub fn from_pairs(
        rep: Representation<F>,
        pairs: &[(usize, usize, Mat<F>)],
    ) -> Result<Self> {
        require_tensor(&rep)?;
        let dims = class_dims(&rep)?;
        let q = rep.quiver().clone();
        let mut issues = Vec::new();
        for (a, b, m) in pairs {
            let (ka, kb) = (q.vertex(*a).index(), q.vertex(*b).index());
            if ka != kb {
                return Err(Error::MalformedFraming(format!(
                    "pair ({}, {}) mixes index classes {ka} and {kb}",
                    q.vertex(*a),
                    q.vertex(*b)
                )));
            }
            let d = dims[ka as usize];
            if m.rows() != d || m.cols() != d || m.inverse().is_none() {
                return Err(Error::MalformedFraming(format!(
                    "pair ({}, {}) carries a non-invertible or misshaped matrix",
                    q.vertex(*a),
                    q.vertex(*b)
                )));
            }
            if a == b && *m != Mat::identity(d) {
                issues.push(FramingIssue::NotIdentity {
                    a: q.vertex(*a).to_string(),
                });
            }
        }
        if !issues.is_empty() {
            return Err(Error::FramingViolated {
                report: FramingReport { issues },
            });
        }

        // breadth-first extension from each basepoint along given pairs
        let mut phi: BTreeMap<u32, BTreeMap<usize, Mat<F>>> = BTreeMap::new();
        for (k, &d) in dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let k32 = k as u32;
            let class = q.vertices_of_index(k32);
            let base = class[0];
            let mut assigned: BTreeMap<usize, Mat<F>> = BTreeMap::new();
            assigned.insert(base, Mat::identity(d));
            let mut queue = vec![base];
            while let Some(v) = queue.pop() {
                for (a, b, m) in pairs {
                    let step = if *a == v && !assigned.contains_key(b) {
                        Some((*b, m.mul(&assigned[&v])))
                    } else if *b == v && !assigned.contains_key(a) {
                        Some((*a, m.inverse().expect("checked invertible").mul(&assigned[&v])))
                    } else {
                        None
                    };
                    if let Some((w, mat)) = step {
                        assigned.insert(w, mat);
                        queue.push(w);
                    }
                }
            }
            for &vi in class {
                if !assigned.contains_key(&vi) {
                    return Err(Error::MalformedFraming(format!(
                        "pairs do not span index class {k}: vertex {} unreached",
                        q.vertex(vi)
                    )));
                }
            }
            phi.insert(k32, assigned);
        }

        // every given pair must agree with the resolved system; a
        // mismatch is a broken composition phi(v,b) . phi(a,v) over
        // some path vertex v
        let fr = FramedRep { rep, phi };
        let mut issues = Vec::new();
        for (a, b, m) in pairs {
            if fr.phi_between(*a, *b)? != *m {
                let base = q.vertices_of_index(q.vertex(*a).index())[0];
                issues.push(FramingIssue::Cocycle {
                    a: q.vertex(*a).to_string(),
                    b: q.vertex(base).to_string(),
                    c: q.vertex(*b).to_string(),
                });
            }
        }
        if !issues.is_empty() {
            return Err(Error::FramingViolated {
                report: FramingReport { issues },
            });
        }
        Ok(fr)
    }

    pub fn rep(&self) -> &Representation<F> {
        &self.rep
    }

    pub fn framings(&self) -> &BTreeMap<u32, BTreeMap<usize, Mat<F>>> {
        &self.phi
    }

    pub fn is_trivially_framed(&self) -> bool {
        self.phi.values().all(|class| {
            class
                .values()
                .all(|m| *m == Mat::identity(m.rows()))
        })
    }

    /// phi(a,b): the identification E_a -> E_b, reconstructed from the
    /// spanning set.
    pub fn phi_between(&self, a: usize, b: usize) -> Result<Mat<F>> {
        let q = self.rep.quiver();
        let k = q.vertex(a).index();
        if q.vertex(b).index() != k {
            return Err(Error::Incompatible(format!(
                "{} and {} lie in different index classes",
                q.vertex(a),
                q.vertex(b)
            )));
        }
        let d = self.rep.dim(a);
        if d == 0 {
            return Ok(Mat::identity(0));
        }
        let class = &self.phi[&k];
        Ok(class[&b].mul(&class[&a].inverse().expect("framings are invertible")))
    }

    /// True when every positive-dimensional vertex has index at most
    /// `bound`.
    pub fn supported_within(&self, bound: u32) -> bool {
        let q = self.rep.quiver();
        self.rep
            .support()
            .iter()
            .all(|&vi| q.vertex(vi).index() <= bound)
    }

    /// Verifies the defining consistency condition: the underlying
    /// representation validates, the framings are invertible with the
    /// identity at basepoints, and same-label arrows between the same
    /// index classes are identified by the framings. Classes within
    /// `TRIPLE_CLASS_BOUND` additionally get the condition checked
    /// verbatim over all vertex triples.
    pub fn check(&self) -> Result<()> {
        if let Err(report) = self.rep.validate() {
            return Err(Error::RelationsViolated { report });
        }
        class_dims(&self.rep)?;
        let q = self.rep.quiver().clone();
        let mut issues = Vec::new();

        for (&k, class) in &self.phi {
            let base = q.vertices_of_index(k)[0];
            if class[&base] != Mat::identity(class[&base].rows()) {
                issues.push(FramingIssue::NotIdentity {
                    a: q.vertex(base).to_string(),
                });
            }
        }

        // spanning-set form of the arrow condition: the normalized
        // matrix phi(a')^-1 E(a,a') phi(a) must not depend on the arrow
        // within its (source index, label) group
        let mut normalized: BTreeMap<(u32, u8), (Mat<F>, bool)> = BTreeMap::new();
        for (ai, arrow) in q.arrows().iter().enumerate() {
            let (src, dst) = (arrow.source, arrow.target);
            if self.rep.dim(src) == 0 || self.rep.dim(dst) == 0 {
                continue;
            }
            let k = q.vertex(src).index();
            let phi_src = &self.phi[&k][&src];
            let phi_dst = &self.phi[&(k + 1)][&dst];
            let norm = phi_dst
                .inverse()
                .expect("framings are invertible")
                .mul(self.rep.mat(ai))
                .mul(phi_src);
            normalized
                .entry((k, arrow.label))
                .and_modify(|(m, ok)| {
                    if *ok && *m != norm {
                        *ok = false;
                    }
                })
                .or_insert((norm, true));
        }
        for ((k, label), (_, ok)) in &normalized {
            if !ok {
                issues.push(FramingIssue::ArrowCompat {
                    index: *k,
                    label: *label,
                });
            }
        }

        // verbatim condition over triples for small classes:
        // phi(a',c') E(a,a') = E(c,c') phi(b,c) phi(a,b)
        let small = self
            .phi
            .keys()
            .all(|k| q.vertices_of_index(*k).len() <= TRIPLE_CLASS_BOUND);
        if small {
            for (&k, _) in &self.phi {
                if !self.phi.contains_key(&(k + 1)) {
                    continue;
                }
                let class: Vec<usize> = q.vertices_of_index(k).to_vec();
                for &a in &class {
                    for &b in &class {
                        for &c in &class {
                            let composed =
                                self.phi_between(b, c)?.mul(&self.phi_between(a, b)?);
                            if composed != self.phi_between(a, c)? {
                                issues.push(FramingIssue::Cocycle {
                                    a: q.vertex(a).to_string(),
                                    b: q.vertex(b).to_string(),
                                    c: q.vertex(c).to_string(),
                                });
                                continue;
                            }
                            for label in 1..=q.n() as u8 {
                                let (Some(aa), Some(ca)) =
                                    (q.arrow_from(a, label), q.arrow_from(c, label))
                                else {
                                    continue;
                                };
                                let a2 = q.arrows()[aa].target;
                                let c2 = q.arrows()[ca].target;
                                if self.rep.dim(a2) == 0 {
                                    continue;
                                }
                                let lhs =
                                    self.phi_between(a2, c2)?.mul(self.rep.mat(aa));
                                let rhs = self.rep.mat(ca).mul(&composed);
                                if lhs != rhs {
                                    issues.push(FramingIssue::ArrowCompat {
                                        index: k,
                                        label,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        issues.dedup();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::FramingViolated {
                report: FramingReport { issues },
            })
        }
    }

    /// Rewrites the representation through the framings so that all of
    /// them become the identity, together with the isomorphism
    /// t_a = phi(a, basepoint of a's class) realizing it. Defined for
    /// representations supported on indices 0..n-1.
    pub fn trivialize(
        &self,
        basepoints: Option<&[usize]>,
    ) -> Result<(FramedRep<F>, FramedMorphism<F>)> {
        self.check()?;
        let q = self.rep.quiver().clone();
        let n = q.n();
        if !self.supported_within(n - 1) {
            return Err(Error::UnsupportedSupport(format!(
                "support reaches past index {}; trivialization needs indices 0..{}",
                n - 1,
                n - 1
            )));
        }
        let base = match basepoints {
            Some(b) => {
                check_basepoints(&q, b)?;
                b.to_vec()
            }
            None => default_basepoints(&q)?,
        };

        let mut dims = vec![0usize; q.vertices().len()];
        for (vi, v) in q.vertices().iter().enumerate() {
            let k = v.index();
            if k <= n - 1 {
                dims[vi] = self.rep.dim(base[k as usize]);
            }
        }
        let mut entries = Vec::new();
        for (ai, arrow) in q.arrows().iter().enumerate() {
            if dims[arrow.source] == 0 || dims[arrow.target] == 0 {
                continue;
            }
            let k = q.vertex(arrow.source).index() as usize;
            let to_base = self.phi_between(arrow.target, base[k + 1])?;
            let from_base = self.phi_between(base[k], arrow.source)?;
            entries.push((ai, to_base.mul(self.rep.mat(ai)).mul(&from_base)));
        }
        let rep = Representation::from_arrow_mats(q.clone(), dims, entries)?;
        let mut t_mats = Vec::with_capacity(q.vertices().len());
        for (vi, v) in q.vertices().iter().enumerate() {
            let k = v.index();
            if k <= n - 1 && self.rep.dim(vi) > 0 {
                t_mats.push(self.phi_between(vi, base[k as usize])?);
            } else {
                t_mats.push(Mat::zero(0, 0));
            }
        }
        let trivial = FramedRep::with_trivial_framing(rep)?;
        Ok((trivial, FramedMorphism { mats: t_mats }))
    }

    /// Exact equality after trivializing both sides at the default
    /// basepoints, the canonical equivalence test.
    pub fn equivalent(&self, other: &FramedRep<F>) -> Result<bool> {
        if !self.rep.quiver().is_compatible(other.rep.quiver()) {
            return Ok(false);
        }
        let (a, _) = self.trivialize(None)?;
        let (b, _) = other.trivialize(None)?;
        Ok(a.rep == b.rep)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.rep.to_json();
        let q = self.rep.quiver();
        let mut phi = Map::new();
        for (k, class) in &self.phi {
            let mut m = Map::new();
            for (vi, mat) in class {
                m.insert(q.vertex(*vi).to_string(), mat.to_json());
            }
            phi.insert(format!("index-{k}"), Value::Object(m));
        }
        v["phi"] = Value::Object(phi);
        v
    }

    /// A missing `"phi"` field means trivial framings.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rep = Representation::<F>::from_json(v)?;
        let q = rep.quiver().clone();
        let Some(phi_v) = v.get("phi") else {
            return FramedRep::with_trivial_framing(rep);
        };
        let obj = phi_v
            .as_object()
            .ok_or_else(|| Error::Json("framed: \"phi\" must be an object".into()))?;
        let mut phi: BTreeMap<u32, BTreeMap<usize, Mat<F>>> = BTreeMap::new();
        for (key, classes) in obj {
            let k: u32 = key
                .strip_prefix("index-")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    Error::Json(format!("framed: bad phi key {key:?}, expected \"index-k\""))
                })?;
            let entries = classes
                .as_object()
                .ok_or_else(|| Error::Json(format!("framed: phi[{key}] must be an object")))?;
            let mut class = BTreeMap::new();
            for (name, mv) in entries {
                let vertex = q.parse_vertex(name)?;
                let vi = q
                    .vertex_index(&vertex)
                    .ok_or_else(|| Error::NotFound(format!("vertex {name} not in quiver")))?;
                let d = rep.dim(vi);
                class.insert(vi, Mat::from_json(mv, d, d)?);
            }
            phi.insert(k, class);
        }
        FramedRep::from_basepoint_framings(rep, phi)
    }
}

/// Morphism of framed representations: one matrix per vertex,
/// intertwining the arrow matrices and commuting with the framings.
#[derive(Debug, Clone, PartialEq)]
pub struct FramedMorphism<F: Field> {
    pub mats: Vec<Mat<F>>,
}

impl<F: Field> FramedMorphism<F> {
    pub fn identity(fr: &FramedRep<F>) -> Self {
        FramedMorphism {
            mats: RepMorphism::identity(fr.rep()).mats,
        }
    }

    /// Intertwining plus framing-compatibility: the normalized matrix
    /// (phi^dst_b)^-1 f_b phi^src_b must not depend on b within each
    /// index class, which is the pairwise condition
    /// phi^dst(b,b') f_b phi^src(b',b) = f_b' over the spanning set.
    pub fn check(&self, src: &FramedRep<F>, dst: &FramedRep<F>) -> Result<()> {
        RepMorphism {
            mats: self.mats.clone(),
        }
        .check(src.rep(), dst.rep())?;
        let q = src.rep().quiver();
        for k in 0..=q.max_index() {
            let class = q.vertices_of_index(k);
            let mut norm: Option<Mat<F>> = None;
            for &vi in class {
                if src.rep().dim(vi) == 0 && dst.rep().dim(vi) == 0 {
                    continue;
                }
                let phi_src = if src.rep().dim(vi) > 0 {
                    src.phi[&k][&vi].clone()
                } else {
                    Mat::identity(0)
                };
                let phi_dst = if dst.rep().dim(vi) > 0 {
                    dst.phi[&k][&vi].clone()
                } else {
                    Mat::identity(0)
                };
                let m = phi_dst
                    .inverse()
                    .expect("framings are invertible")
                    .mul(&self.mats[vi])
                    .mul(&phi_src);
                match &norm {
                    None => norm = Some(m),
                    Some(prev) if *prev == m => {}
                    Some(_) => {
                        return Err(Error::Incompatible(format!(
                            "morphism is not framed-invariant on index class {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self, src: &FramedRep<F>, dst: &FramedRep<F>) -> bool {
        self.check(src, dst).is_ok()
            && self
                .mats
                .iter()
                .all(|m| m.rows() == m.cols() && (m.rows() == 0 || m.inverse().is_some()))
    }

    /// self after other, vertexwise.
    pub fn compose(&self, other: &FramedMorphism<F>) -> FramedMorphism<F> {
        FramedMorphism {
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(f, g)| f.mul(g))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Option<FramedMorphism<F>> {
        let mats = self
            .mats
            .iter()
            .map(|m| {
                if m.rows() == 0 && m.cols() == 0 {
                    Some(Mat::zero(0, 0))
                } else {
                    m.inverse()
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FramedMorphism { mats })
    }
}

/// Beilinson-to-tensor functor on objects: spaces pull back along the
/// index, arrow matrices along the label. Framings are identities.
pub fn functor_f<F: Field>(e: &Representation<F>) -> Result<FramedRep<F>> {
    let bq = e.quiver();
    if bq.kind() != QuiverKind::Beilinson {
        return Err(Error::Incompatible(format!(
            "expected a Beilinson-quiver representation, got {}",
            bq.kind().as_str()
        )));
    }
    if let Err(report) = e.validate() {
        return Err(Error::RelationsViolated { report });
    }
    let n = bq.n();
    let tq = Arc::new(Quiver::tensor_power(n)?);
    let mut dims = vec![0usize; tq.vertices().len()];
    for (vi, v) in tq.vertices().iter().enumerate() {
        let k = v.index();
        if k <= n - 1 {
            dims[vi] = e.dim(k as usize);
        }
    }
    let mut entries = Vec::new();
    for (ai, arrow) in tq.arrows().iter().enumerate() {
        if dims[arrow.source] == 0 || dims[arrow.target] == 0 {
            continue;
        }
        let i = tq.vertex(arrow.source).index() as usize;
        let bai = bq
            .arrow_from(i, arrow.label)
            .ok_or_else(|| Error::InternalInconsistency("missing Beilinson arrow".into()))?;
        entries.push((ai, e.mat(bai).clone()));
    }
    let rep = Representation::from_arrow_mats(tq, dims, entries)?;
    FramedRep::with_trivial_framing(rep)
}

/// Beilinson-to-tensor functor on morphisms: F(f)_a = f at a's index.
pub fn functor_f_morphism<F: Field>(
    f: &RepMorphism<F>,
    image_src: &FramedRep<F>,
) -> FramedMorphism<F> {
    let tq = image_src.rep().quiver();
    let n = tq.n();
    let mats = tq
        .vertices()
        .iter()
        .map(|v| {
            let k = v.index();
            if k <= n - 1 {
                f.mats[k as usize].clone()
            } else {
                Mat::zero(0, 0)
            }
        })
        .collect();
    FramedMorphism { mats }
}

/// Tensor-to-Beilinson functor at the default basepoints.
pub fn functor_g<F: Field>(fr: &FramedRep<F>) -> Result<Representation<F>> {
    let base = default_basepoints(fr.rep().quiver())?;
    functor_g_with(fr, &base)
}

/// Tensor-to-Beilinson functor: spaces at the basepoints, arrow
/// matrices conjugated to the basepoints through the framings. The
/// value is recomputed over every admissible arrow and must agree.
pub fn functor_g_with<F: Field>(
    fr: &FramedRep<F>,
    basepoints: &[usize],
) -> Result<Representation<F>> {
    fr.check()?;
    let q = fr.rep().quiver().clone();
    let n = q.n();
    if !fr.supported_within(n - 1) {
        return Err(Error::UnsupportedSupport(format!(
            "support reaches past index {}; the functor needs indices 0..{}",
            n - 1,
            n - 1
        )));
    }
    check_basepoints(&q, basepoints)?;
    let bq = Arc::new(Quiver::beilinson(n)?);
    let dims: Vec<usize> = basepoints.iter().map(|&b| fr.rep().dim(b)).collect();
    let mut entries = Vec::new();
    for i in 0..(n - 1) as usize {
        if dims[i] == 0 || dims[i + 1] == 0 {
            continue;
        }
        for label in 1..=n as u8 {
            let mut value: Option<Mat<F>> = None;
            for &src in q.vertices_of_index(i as u32) {
                let Some(ai) = q.arrow_from(src, label) else {
                    continue;
                };
                let dst = q.arrows()[ai].target;
                let m = fr
                    .phi_between(dst, basepoints[i + 1])?
                    .mul(fr.rep().mat(ai))
                    .mul(&fr.phi_between(basepoints[i], src)?);
                match &value {
                    None => value = Some(m),
                    Some(prev) if *prev == m => {}
                    Some(_) => {
                        return Err(Error::FramingViolated {
                            report: FramingReport {
                                issues: vec![FramingIssue::ArrowCompat {
                                    index: i as u32,
                                    label,
                                }],
                            },
                        });
                    }
                }
            }
            let value = value.ok_or_else(|| {
                Error::InternalInconsistency(format!("no arrow of label {label} at index {i}"))
            })?;
            let bai = bq
                .arrow_from(i, label)
                .ok_or_else(|| Error::InternalInconsistency("missing Beilinson arrow".into()))?;
            entries.push((bai, value));
        }
    }
    let out = Representation::from_arrow_mats(bq, dims, entries)?;
    if let Err(report) = out.validate() {
        return Err(Error::RelationsViolated { report });
    }
    Ok(out)
}

/// Tensor-to-Beilinson functor on morphisms: restriction to the
/// default basepoints.
pub fn functor_g_morphism<F: Field>(
    f: &FramedMorphism<F>,
    fr_src: &FramedRep<F>,
) -> Result<RepMorphism<F>> {
    let base = default_basepoints(fr_src.rep().quiver())?;
    Ok(RepMorphism {
        mats: base.iter().map(|&b| f.mats[b].clone()).collect(),
    })
}

/// Dimension one on every vertex of one index class, zero elsewhere,
/// with identity framings: the image of a Beilinson simple under the
/// functor when the class index is below n.
pub fn polysimple<F: Field>(tq: Arc<Quiver>, k: u32) -> Result<FramedRep<F>> {
    if k > tq.max_index() {
        return Err(Error::NotFound(format!("index class {k}")));
    }
    let mut dims = vec![0usize; tq.vertices().len()];
    for &vi in tq.vertices_of_index(k) {
        dims[vi] = 1;
    }
    let rep = Representation::from_arrow_mats(tq, dims, Vec::new())?;
    FramedRep::with_trivial_framing(rep)
}
