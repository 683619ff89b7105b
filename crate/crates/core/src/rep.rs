//! Quiver representations: relation validation, simples, direct sums,
//! thin representations, and subobject enumeration.
//!
//! For thin representations (all dimensions 0 or 1) subobjects are
//! exactly the supports closed under nonzero arrows, which makes
//! stability testing finite and exact.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::quiver::{Quiver, QuiverKind};
use crate::scalar::Field;

/// Cap on enumerated subobjects of one thin representation.
const SUBREP_CAP: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationViolation {
    pub source: String,
    pub target: String,
    pub labels: (u8, u8),
}

/// All commuting relations a representation fails, in quiver order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<RelationViolation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(
                f,
                "  {} -> {}: labels ({}, {}) do not commute",
                v.source, v.target, v.labels.0, v.labels.1
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Representation<F: Field> {
    quiver: Arc<Quiver>,
    dims: Vec<usize>,
    mats: Vec<Mat<F>>,
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.quiver.is_compatible(&other.quiver)
            && self.dims == other.dims
            && self.mats == other.mats
    }
}

impl<F: Field> Representation<F> {
    /// `mats[i]` belongs to arrow i and must have shape
    /// dims[target] x dims[source].
    pub fn new(quiver: Arc<Quiver>, dims: Vec<usize>, mats: Vec<Mat<F>>) -> Result<Self> {
        if dims.len() != quiver.vertices().len() {
            return Err(Error::MalformedRepresentation(format!(
                "got {} dimensions for {} vertices",
                dims.len(),
                quiver.vertices().len()
            )));
        }
        if mats.len() != quiver.arrows().len() {
            return Err(Error::MalformedRepresentation(format!(
                "got {} matrices for {} arrows",
                mats.len(),
                quiver.arrows().len()
            )));
        }
        for (i, m) in mats.iter().enumerate() {
            let a = &quiver.arrows()[i];
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::MalformedRepresentation(format!(
                    "arrow {} expects a {}x{} matrix, got {}x{}",
                    quiver.arrow_key(i),
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { quiver, dims, mats })
    }

    /// Zero matrices everywhere, then the listed arrows overridden.
    pub fn from_arrow_mats(
        quiver: Arc<Quiver>,
        dims: Vec<usize>,
        entries: Vec<(usize, Mat<F>)>,
    ) -> Result<Self> {
        let mut mats: Vec<Mat<F>> = quiver
            .arrows()
            .iter()
            .map(|a| Mat::zero(dims[a.target], dims[a.source]))
            .collect();
        for (idx, m) in entries {
            if idx >= mats.len() {
                return Err(Error::NotFound(format!("arrow index {idx}")));
            }
            mats[idx] = m;
        }
        Representation::new(quiver, dims, mats)
    }

    /// One-dimensional at `v`, zero elsewhere; has no proper nonzero
    /// subobjects.
    pub fn simple_at(quiver: Arc<Quiver>, vertex_idx: usize) -> Result<Self> {
        if vertex_idx >= quiver.vertices().len() {
            return Err(Error::NotFound(format!("vertex index {vertex_idx}")));
        }
        let mut dims = vec![0; quiver.vertices().len()];
        dims[vertex_idx] = 1;
        Representation::from_arrow_mats(quiver, dims, Vec::new())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, vertex_idx: usize) -> usize {
        self.dims[vertex_idx]
    }

    pub fn mat(&self, arrow_idx: usize) -> &Mat<F> {
        &self.mats[arrow_idx]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_object(&self) -> bool {
        self.total_dim() == 0
    }

    /// Vertex indices with nonzero dimension, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    /// Checks every commuting relation by multiplying out both paths.
    pub fn validate(&self) -> std::result::Result<(), ValidationReport> {
        let mut report = ValidationReport::default();
        for rel in self.quiver.relations() {
            let ((a1, a2), (b1, b2)) = self.quiver.relation_paths(rel);
            let lhs = self.mats[a2].mul(&self.mats[a1]);
            let rhs = self.mats[b2].mul(&self.mats[b1]);
            if lhs != rhs {
                report.violations.push(RelationViolation {
                    source: self.quiver.vertex(rel.source).to_string(),
                    target: self.quiver.vertex(rel.target).to_string(),
                    labels: rel.labels,
                });
            }
        }
        if report.violations.is_empty() {
            Ok(())
        } else {
            Err(report)
        }
    }

    pub fn direct_sum(&self, other: &Representation<F>) -> Result<Representation<F>> {
        if !self.quiver.is_compatible(&other.quiver) {
            return Err(Error::Incompatible(
                "direct sum of representations over different quivers".into(),
            ));
        }
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Representation::new(self.quiver.clone(), dims, mats)
    }

    pub fn to_json(&self) -> Value {
        let mut dims = Map::new();
        for (vi, &d) in self.dims.iter().enumerate() {
            if d > 0 {
                dims.insert(self.quiver.vertex(vi).to_string(), json!(d));
            }
        }
        let mut mats = Map::new();
        for (ai, m) in self.mats.iter().enumerate() {
            if m.rows() * m.cols() > 0 {
                mats.insert(self.quiver.arrow_key(ai), m.to_json());
            }
        }
        json!({
            "quiver": self.quiver.to_json(),
            "field": F::TAG.as_str(),
            "dims": dims,
            "mats": mats,
        })
    }

    /// Arrows between positive-dimensional vertices default to the zero
    /// matrix when absent from `mats`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let quiver = Arc::new(Quiver::from_json(
            v.get("quiver")
                .ok_or_else(|| Error::Json("representation: missing \"quiver\"".into()))?,
        )?);
        let field = v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("representation: missing \"field\"".into()))?;
        if field != F::TAG.as_str() {
            return Err(Error::FieldError(format!(
                "file is over {field}, expected {}",
                F::TAG
            )));
        }
        let mut dims = vec![0usize; quiver.vertices().len()];
        if let Some(dmap) = v.get("dims").and_then(Value::as_object) {
            for (name, dv) in dmap {
                let vertex = quiver.parse_vertex(name)?;
                let vi = vertex
                    .coords()
                    .len()
                    .eq(&quiver.vertex(0).coords().len())
                    .then(|| quiver.vertex_index(&vertex))
                    .flatten()
                    .ok_or_else(|| Error::NotFound(format!("vertex {name} not in quiver")))?;
                dims[vi] = dv
                    .as_u64()
                    .ok_or_else(|| Error::Json(format!("dims[{name}]: expected a natural")))?
                    as usize;
            }
        }
        let mut entries = Vec::new();
        if let Some(mmap) = v.get("mats").and_then(Value::as_object) {
            for (key, mv) in mmap {
                let ai = quiver.parse_arrow_key(key)?;
                let a = &quiver.arrows()[ai];
                let m = Mat::from_json(mv, dims[a.target], dims[a.source])?;
                entries.push((ai, m));
            }
        }
        Representation::from_arrow_mats(quiver, dims, entries)
    }
}

/// Morphism of representations: one matrix per vertex, intertwining
/// every arrow matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMorphism<F: Field> {
    pub mats: Vec<Mat<F>>,
}

impl<F: Field> RepMorphism<F> {
    pub fn identity(rep: &Representation<F>) -> Self {
        RepMorphism {
            mats: rep.dims().iter().map(|&d| Mat::identity(d)).collect(),
        }
    }

    pub fn check(&self, src: &Representation<F>, dst: &Representation<F>) -> Result<()> {
        if !src.quiver().is_compatible(dst.quiver()) {
            return Err(Error::Incompatible("morphism across different quivers".into()));
        }
        let q = src.quiver();
        if self.mats.len() != q.vertices().len() {
            return Err(Error::MalformedRepresentation(format!(
                "morphism has {} components for {} vertices",
                self.mats.len(),
                q.vertices().len()
            )));
        }
        for (vi, m) in self.mats.iter().enumerate() {
            if m.rows() != dst.dim(vi) || m.cols() != src.dim(vi) {
                return Err(Error::MalformedRepresentation(format!(
                    "morphism component at {} has shape {}x{}, expected {}x{}",
                    q.vertex(vi),
                    m.rows(),
                    m.cols(),
                    dst.dim(vi),
                    src.dim(vi)
                )));
            }
        }
        for (ai, a) in q.arrows().iter().enumerate() {
            let lhs = self.mats[a.target].mul(src.mat(ai));
            let rhs = dst.mat(ai).mul(&self.mats[a.source]);
            if lhs != rhs {
                return Err(Error::MalformedRepresentation(format!(
                    "morphism fails to intertwine arrow {}",
                    q.arrow_key(ai)
                )));
            }
        }
        Ok(())
    }
}

/// Support of a subobject of a thin representation: a set of vertex
/// indices closed under nonzero arrows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subrep {
    pub support: Vec<usize>,
}

impl Subrep {
    pub fn describe(&self, q: &Quiver) -> String {
        let names: Vec<String> = self
            .support
            .iter()
            .map(|&vi| q.vertex(vi).to_string())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A representation with all dimensions 0 or 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinRep<F: Field> {
    rep: Representation<F>,
}

impl<F: Field> ThinRep<F> {
    pub fn new(rep: Representation<F>) -> Result<Self> {
        if let Some(vi) = (0..rep.dims().len()).find(|&v| rep.dim(v) > 1) {
            return Err(Error::UnsupportedDimension(format!(
                "dimension {} at vertex {}; thin representations need 0 or 1",
                rep.dim(vi),
                rep.quiver().vertex(vi)
            )));
        }
        Ok(ThinRep { rep })
    }

    /// The thin representation of the Beilinson-style quiver whose
    /// every level matrix is the coordinate vector of `x`.
    pub fn from_point(quiver: Arc<Quiver>, x: &[F]) -> Result<Self> {
        if quiver.kind() != QuiverKind::Beilinson {
            return Err(Error::InvalidParameter(format!(
                "point representations live on the beilinson quiver, got {}",
                quiver.kind()
            )));
        }
        if x.len() != quiver.n() as usize {
            return Err(Error::InvalidParameter(format!(
                "point has {} coordinates, expected {}",
                x.len(),
                quiver.n()
            )));
        }
        if x.iter().all(Field::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let dims = vec![1; quiver.vertices().len()];
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| Mat::scalar(x[a.label as usize - 1].clone()))
            .collect();
        let rep = Representation::new(quiver, dims, mats)?;
        Ok(ThinRep { rep })
    }

    pub fn rep(&self) -> &Representation<F> {
        &self.rep
    }

    pub fn into_rep(self) -> Representation<F> {
        self.rep
    }

    pub fn support(&self) -> Vec<usize> {
        self.rep.support()
    }

    /// Scalar of an arrow, present when both endpoints have dimension 1.
    pub fn scalar(&self, arrow_idx: usize) -> Option<&F> {
        let a = &self.rep.quiver().arrows()[arrow_idx];
        if self.rep.dim(a.source) == 1 && self.rep.dim(a.target) == 1 {
            Some(self.rep.mat(arrow_idx).get(0, 0))
        } else {
            None
        }
    }

    /// All proper nonzero subobjects, i.e. nonempty proper subsets of
    /// the support closed under nonzero arrows. Sorted by size, then
    /// by support.
    pub fn proper_nonzero_subreps(&self) -> Result<Vec<Subrep>> {
        let q = self.rep.quiver();
        let support = self.support();
        if support.len() > 128 {
            return Err(Error::ResourceLimit(format!(
                "support of size {} exceeds the subobject enumeration bound 128",
                support.len()
            )));
        }
        // Decide vertices in decreasing index order so every nonzero
        // arrow target is decided before its source.
        let mut order = support.clone();
        order.sort_by_key(|&vi| std::cmp::Reverse(q.vertex(vi).index()));
        let pos_of: std::collections::HashMap<usize, usize> =
            order.iter().enumerate().map(|(p, &vi)| (vi, p)).collect();
        // required[p] = mask of positions that must be present when
        // order[p] is included
        let mut required = vec![0u128; order.len()];
        for (p, &vi) in order.iter().enumerate() {
            for &ai in q.arrows_from(vi) {
                let target = q.arrows()[ai].target;
                if let Some(s) = self.scalar(ai) {
                    if !s.is_zero() {
                        required[p] |= 1u128 << pos_of[&target];
                    }
                }
            }
        }
        let full: u128 = if order.len() == 128 {
            u128::MAX
        } else {
            (1u128 << order.len()) - 1
        };
        let mut masks = Vec::new();
        let mut stack = vec![(0usize, 0u128)];
        while let Some((p, mask)) = stack.pop() {
            if p == order.len() {
                if mask != 0 && mask != full {
                    masks.push(mask);
                    if masks.len() > SUBREP_CAP {
                        return Err(Error::ResourceLimit(format!(
                            "more than {SUBREP_CAP} subobjects"
                        )));
                    }
                }
                continue;
            }
            stack.push((p + 1, mask));
            if required[p] & mask == required[p] {
                stack.push((p + 1, mask | (1u128 << p)));
            }
        }
        let mut out: Vec<Subrep> = masks
            .into_iter()
            .map(|mask| {
                let mut s: Vec<usize> = order
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| mask & (1u128 << p) != 0)
                    .map(|(_, &vi)| vi)
                    .collect();
                s.sort_unstable();
                Subrep { support: s }
            })
            .collect();
        out.sort_by(|a, b| {
            a.support
                .len()
                .cmp(&b.support.len())
                .then_with(|| a.support.cmp(&b.support))
        });
        Ok(out)
    }

    /// Thin representations are isomorphic exactly when their supports
    /// and arrow zero-patterns agree and the nonzero scalars differ by
    /// a consistent per-vertex rescaling.
    pub fn is_isomorphic(&self, other: &ThinRep<F>) -> Result<bool> {
        let q = self.rep.quiver();
        if !q.is_compatible(other.rep.quiver()) {
            return Err(Error::Incompatible(
                "isomorphism test across different quivers".into(),
            ));
        }
        if self.support() != other.support() {
            return Ok(false);
        }
        let support = self.support();
        let in_support = |vi: usize| self.rep.dim(vi) == 1;
        let mut live_arrows = Vec::new();
        for &vi in &support {
            for &ai in q.arrows_from(vi) {
                if !in_support(q.arrows()[ai].target) {
                    continue;
                }
                let a = self.scalar(ai).unwrap();
                let b = other.scalar(ai).unwrap();
                if a.is_zero() != b.is_zero() {
                    return Ok(false);
                }
                if !a.is_zero() {
                    live_arrows.push(ai);
                }
            }
        }
        // spanning scaling over the nonzero-arrow graph
        let mut ratio: std::collections::HashMap<usize, F> =
            std::collections::HashMap::new();
        for &root in &support {
            if ratio.contains_key(&root) {
                continue;
            }
            ratio.insert(root, F::one());
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let cv = ratio[&v].clone();
                for &ai in live_arrows.iter() {
                    let arr = &q.arrows()[ai];
                    if arr.source == v && !ratio.contains_key(&arr.target) {
                        let a = self.scalar(ai).unwrap();
                        let b = other.scalar(ai).unwrap();
                        let c = b.mul(&cv).mul(&a.inv().expect("nonzero"));
                        ratio.insert(arr.target, c.clone());
                        queue.push_back(arr.target);
                    } else if arr.target == v && !ratio.contains_key(&arr.source) {
                        let a = self.scalar(ai).unwrap();
                        let b = other.scalar(ai).unwrap();
                        let c = cv.mul(a).mul(&b.inv().expect("nonzero"));
                        ratio.insert(arr.source, c.clone());
                        queue.push_back(arr.source);
                    }
                }
            }
        }
        for &ai in &live_arrows {
            let arr = &q.arrows()[ai];
            let a = self.scalar(ai).unwrap();
            let b = other.scalar(ai).unwrap();
            let lhs = ratio[&arr.target].mul(a);
            let rhs = b.mul(&ratio[&arr.source]);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
