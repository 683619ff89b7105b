//! Serre-de Rham complexes: symbol words over an anticommuting
//! exterior algebra, the complex built from a Beilinson-quiver
//! representation, the d^2 = 0 check, and point extraction.
//!
//! A symbol word is a chain of generators dx^label_level with strictly
//! increasing levels. Swapping the labels of two adjacent factors
//! flips the sign, so the normal form sorts the label sequence,
//! tracks the permutation parity, and cancels words with a repeated
//! label. The zero composite of consecutive differentials is then
//! exactly the commuting relations of the representation.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::quiver::QuiverKind;
use crate::rep::{RepMorphism, Representation, ThinRep};
use crate::scalar::{Field, FieldTag, C64_EPS};
use crate::stability::{StabilityFunction, StabilityVerdict};

/// A nonzero entry of a composite differential, evidence that d^2 != 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeFailure {
    /// Composite of differentials `level` and `level + 1`.
    pub level: usize,
    pub row: usize,
    pub col: usize,
    /// Label pair of one surviving word in the entry.
    pub labels: (u8, u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompositeReport {
    pub failures: Vec<CompositeFailure>,
}

impl fmt::Display for CompositeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.failures {
            writeln!(
                f,
                "  d_{} . d_{} entry ({}, {}): labels ({}, {}) survive",
                c.level + 1,
                c.level,
                c.row,
                c.col,
                c.labels.0,
                c.labels.1
            )?;
        }
        Ok(())
    }
}

/// Canonical symbol word: factors (level, label) with strictly
/// increasing levels and strictly increasing labels. Every raw word
/// normalizes to plus or minus one of these, or to zero.
pub type Word = Vec<(u8, u8)>;

/// Sorts the label sequence of a raw word into the canonical order.
/// Returns the canonical word and the sign, or None when a repeated
/// label cancels the word. Levels must already be strictly increasing;
/// the anticommutation rule moves labels across level slots.
pub fn normalize_word(factors: &[(u8, u8)]) -> Option<(Word, i8)> {
    for pair in factors.windows(2) {
        assert!(pair[0].0 < pair[1].0, "levels must be strictly increasing");
    }
    let levels: Vec<u8> = factors.iter().map(|f| f.0).collect();
    let mut labels: Vec<u8> = factors.iter().map(|f| f.1).collect();
    let mut sign = 1i8;
    // bubble sort counts the adjacent transpositions, i.e. the parity
    for i in 0..labels.len() {
        for j in 0..labels.len().saturating_sub(i + 1) {
            match labels[j].cmp(&labels[j + 1]) {
                std::cmp::Ordering::Greater => {
                    labels.swap(j, j + 1);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some((levels.into_iter().zip(labels).collect(), sign))
}

/// Finite sum of scalar multiples of canonical words.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolPoly<F: Field> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> SymbolPoly<F> {
    pub fn zero() -> Self {
        SymbolPoly {
            terms: BTreeMap::new(),
        }
    }

    /// coef times the (raw) word, normalized.
    pub fn term(coef: F, factors: &[(u8, u8)]) -> Self {
        let mut p = SymbolPoly::zero();
        p.add_term(coef, factors);
        p
    }

    pub fn add_term(&mut self, coef: F, factors: &[(u8, u8)]) {
        if coef.is_zero() {
            return;
        }
        let Some((word, sign)) = normalize_word(factors) else {
            return;
        };
        let signed = if sign < 0 { coef.neg() } else { coef };
        let entry = self
            .terms
            .entry(word)
            .and_modify(|c| *c = c.add(&signed))
            .or_insert(signed);
        if entry.is_zero() {
            let key: Vec<Word> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(w, _)| w.clone())
                .collect();
            for w in key {
                self.terms.remove(&w);
            }
        }
    }

    pub fn add(&self, rhs: &SymbolPoly<F>) -> SymbolPoly<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(c.clone(), w);
        }
        out
    }

    /// Composition self after rhs: factor lists concatenate with rhs's
    /// (lower) levels first, then normalize.
    pub fn compose(&self, rhs: &SymbolPoly<F>) -> SymbolPoly<F> {
        let mut out = SymbolPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut factors = wb.clone();
                factors.extend_from_slice(wa);
                out.add_term(ca.mul(cb), &factors);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, F> {
        &self.terms
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    json!({
                        "coef": c.to_json(),
                        "word": w.iter().map(|(lv, lb)| json!([lv, lb])).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

impl<F: Field> fmt::Display for SymbolPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (level, label) in w {
                write!(f, "*dx^{label}_{level}")?;
            }
        }
        Ok(())
    }
}

/// Matrix with symbol-polynomial entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolMat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<SymbolPoly<F>>,
}

impl<F: Field> SymbolMat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SymbolMat {
            rows,
            cols,
            data: vec![SymbolPoly::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &SymbolPoly<F> {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut SymbolPoly<F> {
        &mut self.data[r * self.cols + c]
    }

    pub fn compose(&self, rhs: &SymbolMat<F>) -> SymbolMat<F> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = SymbolMat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = SymbolPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(r, k).compose(rhs.get(k, c)));
                }
                *out.get_mut(r, c) = acc;
            }
        }
        out
    }
}

/// The symbolic chain complex of a Beilinson-quiver representation:
/// one slot per level with a formal twist label, and differentials
/// sum_j E^j_{i,i+1} (x) dx^j_i.
#[derive(Debug, Clone, PartialEq)]
pub struct SdrComplex<F: Field> {
    n: u32,
    dims: Vec<usize>,
    diffs: Vec<SymbolMat<F>>,
}

impl<F: Field> SdrComplex<F> {
    /// Validates the representation first, so the result is always a
    /// genuine complex.
    pub fn build(e: &Representation<F>) -> Result<Self> {
        if let Err(report) = e.validate() {
            return Err(Error::RelationsViolated { report });
        }
        SdrComplex::from_rep_unchecked(e)
    }

    /// Skips validation: the complex of a relation-violating
    /// representation fails `check`, which is the point of building it.
    pub fn from_rep_unchecked(e: &Representation<F>) -> Result<Self> {
        let q = e.quiver();
        if q.kind() != QuiverKind::Beilinson {
            return Err(Error::Incompatible(format!(
                "the complex is built from Beilinson-quiver representations, got {}",
                q.kind().as_str()
            )));
        }
        let n = q.n();
        let dims: Vec<usize> = (0..n as usize).map(|i| e.dim(i)).collect();
        let mut diffs = Vec::with_capacity(n as usize - 1);
        for i in 0..(n as usize - 1) {
            let mut d = SymbolMat::zero(dims[i + 1], dims[i]);
            for label in 1..=n as u8 {
                let ai = q
                    .arrow_from(i, label)
                    .ok_or_else(|| Error::InternalInconsistency("missing arrow".into()))?;
                let m = e.mat(ai);
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        d.get_mut(r, c)
                            .add_term(m.get(r, c).clone(), &[(i as u8, label)]);
                    }
                }
            }
            diffs.push(d);
        }
        Ok(SdrComplex { n, dims, diffs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, i: usize) -> &SymbolMat<F> {
        &self.diffs[i]
    }

    /// d^2 = 0: every composite of consecutive differentials must
    /// normalize away. A surviving word's labels name a violated
    /// commuting relation.
    pub fn check(&self) -> std::result::Result<(), CompositeReport> {
        let mut failures = Vec::new();
        for i in 0..self.diffs.len().saturating_sub(1) {
            let composite = self.diffs[i + 1].compose(&self.diffs[i]);
            for r in 0..composite.rows() {
                for c in 0..composite.cols() {
                    let entry = composite.get(r, c);
                    if let Some((word, _)) = entry.terms().iter().next() {
                        failures.push(CompositeFailure {
                            level: i,
                            row: r,
                            col: c,
                            labels: (word[0].1, word[1].1),
                        });
                    }
                }
            }
        }
        if failures.is_empty() {
            Ok(())
        } else {
            Err(CompositeReport { failures })
        }
    }

    /// Chain map induced by a morphism of representations: the same
    /// vertex matrices, slot by slot.
    pub fn chain_map(
        src: &Representation<F>,
        dst: &Representation<F>,
        f: &RepMorphism<F>,
    ) -> Result<Vec<Mat<F>>> {
        f.check(src, dst)?;
        Ok(f.mats.clone())
    }

    /// One formal slot name per level.
    pub fn slot_labels(&self) -> Vec<String> {
        (0..self.n).map(|i| format!("E_{i} (x) O_{}^{i}", self.n)).collect()
    }

    pub fn to_json(&self) -> Value {
        let diffs: Vec<Value> = self
            .diffs
            .iter()
            .map(|d| {
                let mut entries = Vec::new();
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        let p = d.get(r, c);
                        if !p.is_zero() {
                            entries.push(json!({
                                "row": r,
                                "col": c,
                                "terms": p.to_json(),
                            }));
                        }
                    }
                }
                Value::Array(entries)
            })
            .collect();
        json!({
            "n": self.n,
            "field": F::TAG.as_str(),
            "dims": self.dims,
            "differentials": diffs,
        })
    }
}

/// Point of projective space in exact normal form: the first nonzero
/// coordinate is scaled to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint<F: Field> {
    coords: Vec<F>,
}

/// sum_s x_s^n with n the coordinate count; homogeneous of degree n.
pub fn fermat_sum<F: Field>(coords: &[F]) -> F {
    let n = coords.len() as u32;
    coords
        .iter()
        .fold(F::zero(), |acc, x| acc.add(&x.pow(n)))
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(coords: Vec<F>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(Field::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("some coordinate is nonzero");
        let inv = lead.inv().ok_or_else(|| {
            Error::FieldError("leading coordinate is not invertible".into())
        })?;
        Ok(ProjectivePoint {
            coords: coords.iter().map(|c| c.mul(&inv)).collect(),
        })
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len()
    }

    pub fn fermat_value(&self) -> F {
        fermat_sum(&self.coords)
    }

    /// Exact fields: the value is zero. Floating: the value is within
    /// C64_EPS relative to sum |x_s|^n (at least 1 after normalization).
    pub fn is_on_fermat(&self) -> bool {
        let value = self.fermat_value();
        match F::TAG {
            FieldTag::C64 => {
                let n = self.coords.len() as i32;
                let scale: f64 = self.coords.iter().map(|c| c.abs_f64().powi(n)).sum();
                value.abs_f64() <= C64_EPS * scale
            }
            _ => value.is_zero(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "coords": self.coords.iter().map(Field::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let coords = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("point: missing \"coords\"".into()))?
            .iter()
            .map(F::from_json)
            .collect::<Result<Vec<_>>>()?;
        ProjectivePoint::new(coords)
    }

    /// "[x_1:...:x_n]" with Display coordinates.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = inner
            .split(':')
            .map(F::parse)
            .collect::<Result<Vec<_>>>()?;
        ProjectivePoint::new(coords)
    }
}

impl<F: Field> fmt::Display for ProjectivePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Where the complex of a stable thin representation lives.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportClass<F: Field> {
    /// On the hypersurface: the complex is supported at this point.
    PointOnFermat(ProjectivePoint<F>),
    /// Off the hypersurface: the restriction is the zero object; the
    /// would-be point is carried for reporting.
    ZeroObject(ProjectivePoint<F>),
}

impl<F: Field> SupportClass<F> {
    pub fn point(&self) -> &ProjectivePoint<F> {
        match self {
            SupportClass::PointOnFermat(p) | SupportClass::ZeroObject(p) => p,
        }
    }

    pub fn is_on_fermat(&self) -> bool {
        matches!(self, SupportClass::PointOnFermat(_))
    }
}

/// The scalars k_i with v_{i-1} = k_i v_i across levels, where v_i is
/// the vector of level-i arrow scalars. Stability forces them to exist
/// and be nonzero; the projective class of v_0 is the point.
pub fn extract_point<F: Field>(
    rep: &ThinRep<F>,
    z: &StabilityFunction,
) -> Result<ProjectivePoint<F>> {
    let q = rep.rep().quiver().clone();
    if q.kind() != QuiverKind::Beilinson {
        return Err(Error::Incompatible(format!(
            "point extraction runs on Beilinson-quiver representations, got {}",
            q.kind().as_str()
        )));
    }
    let n = q.n() as usize;
    if rep.support().len() != n {
        return Err(Error::UnsupportedSupport(format!(
            "full support required: {} of {n} vertices are nonzero",
            rep.support().len()
        )));
    }
    match z.is_stable(rep)? {
        StabilityVerdict::Stable => {}
        verdict => {
            return Err(Error::NotStable(format!(
                "point extraction needs a stable input, got {verdict:?}"
            )))
        }
    }
    let mut vectors: Vec<Vec<F>> = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut v = Vec::with_capacity(n);
        for label in 1..=q.n() as u8 {
            let ai = q
                .arrow_from(i, label)
                .ok_or_else(|| Error::InternalInconsistency("missing arrow".into()))?;
            v.push(
                rep.scalar(ai)
                    .cloned()
                    .ok_or_else(|| Error::InternalInconsistency("empty arrow matrix".into()))?,
            );
        }
        vectors.push(v);
    }
    // level proportionality: v_{i-1} = k_i v_i with k_i nonzero
    for i in 1..vectors.len() {
        let (prev, cur) = (&vectors[i - 1], &vectors[i]);
        let lead = cur.iter().position(|c| !c.is_zero()).ok_or_else(|| {
            Error::InternalInconsistency(format!("level {i} vector is zero in a stable object"))
        })?;
        if prev[lead].is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "levels {} and {i} are not proportional",
                i - 1
            )));
        }
        let k = prev[lead].mul(&cur[lead].inv().expect("nonzero lead"));
        for s in 0..cur.len() {
            if prev[s] != k.mul(&cur[s]) {
                return Err(Error::InternalInconsistency(format!(
                    "levels {} and {i} are not proportional at slot {}",
                    i - 1,
                    s + 1
                )));
            }
        }
    }
    ProjectivePoint::new(vectors[0].clone())
}

/// Runs the point extraction and tests the hypersurface membership.
pub fn classify_support<F: Field>(
    rep: &ThinRep<F>,
    z: &StabilityFunction,
) -> Result<SupportClass<F>> {
    let p = extract_point(rep, z)?;
    if p.is_on_fermat() {
        Ok(SupportClass::PointOnFermat(p))
    } else {
        Ok(SupportClass::ZeroObject(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::scalar::GaussianRational as Qi;
    use crate::scalar::C64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn qi(s: &str) -> Qi {
        <Qi as Field>::parse(s).unwrap()
    }

    fn thin(n: u32, coords: &[&str]) -> ThinRep<Qi> {
        let q = Arc::new(Quiver::beilinson(n).unwrap());
        let x: Vec<Qi> = coords.iter().map(|s| qi(s)).collect();
        ThinRep::from_point(q, &x).unwrap()
    }

    #[test]
    fn normalization_examples() {
        // single swap picks up a sign
        let (w, s) = normalize_word(&[(0, 2), (1, 1)]).unwrap();
        assert_eq!(w, vec![(0, 1), (1, 2)]);
        assert_eq!(s, -1);
        // already sorted
        let (w, s) = normalize_word(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(w, vec![(0, 1), (1, 2)]);
        assert_eq!(s, 1);
        // repeated label cancels
        assert!(normalize_word(&[(0, 3), (1, 3)]).is_none());
        // three factors, reversed labels: parity of 3 transpositions
        let (w, s) = normalize_word(&[(0, 3), (1, 2), (2, 1)]).unwrap();
        assert_eq!(w, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(s, -1);
    }

    #[test]
    fn normalization_is_confluent() {
        // random adjacent label swaps with tracked sign always land on
        // the same normal form
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let len = rng.gen_range(2..=4usize);
            let labels: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=4u8)).collect();
            let base: Vec<(u8, u8)> = labels
                .iter()
                .enumerate()
                .map(|(i, &lb)| (i as u8, lb))
                .collect();
            let expected = normalize_word(&base);
            let mut scrambled = labels.clone();
            let mut sign = 1i8;
            for _ in 0..rng.gen_range(0..8) {
                let j = rng.gen_range(0..len - 1);
                scrambled.swap(j, j + 1);
                sign = -sign;
            }
            let word: Vec<(u8, u8)> = scrambled
                .iter()
                .enumerate()
                .map(|(i, &lb)| (i as u8, lb))
                .collect();
            match (expected, normalize_word(&word)) {
                (None, None) => {}
                (Some((we, se)), Some((ws, ss))) => {
                    assert_eq!(we, ws);
                    assert_eq!(se, ss * sign);
                }
                other => panic!("confluence broken: {other:?}"),
            }
        }
    }

    #[test]
    fn poly_arithmetic_cancels() {
        let a = SymbolPoly::term(qi("1"), &[(0, 1), (1, 2)]);
        let b = SymbolPoly::term(qi("1"), &[(0, 2), (1, 1)]);
        // the two words are negatives of one another
        assert!(a.add(&b).is_zero());
        let c = SymbolPoly::term(qi("2"), &[(0, 1)]);
        let d = SymbolPoly::term(qi("3"), &[(1, 2)]);
        let prod = d.compose(&c);
        assert_eq!(
            prod,
            SymbolPoly::term(qi("6"), &[(0, 1), (1, 2)])
        );
        assert_eq!(format!("{prod}"), "(6)*dx^1_0*dx^2_1");
    }

    #[test]
    fn build_reads_off_the_formula() {
        let rep = thin(3, &["1", "-1", "0"]);
        let c = SdrComplex::build(rep.rep()).unwrap();
        assert_eq!(c.dims(), &[1, 1, 1]);
        assert_eq!(c.differential(0).rows(), 1);
        let d0 = c.differential(0).get(0, 0);
        let mut expected = SymbolPoly::term(qi("1"), &[(0, 1)]);
        expected.add_term(qi("-1"), &[(0, 2)]);
        assert_eq!(*d0, expected);
        assert!(c.check().is_ok());
    }

    #[test]
    fn zero_rep_gives_zero_complex() {
        let q = Arc::new(Quiver::beilinson(3).unwrap());
        let rep =
            Representation::<Qi>::from_arrow_mats(q, vec![0, 0, 0], Vec::new()).unwrap();
        let c = SdrComplex::build(&rep).unwrap();
        assert_eq!(c.dims(), &[0, 0, 0]);
        assert!(c.check().is_ok());
    }

    #[test]
    fn differential_shape_follows_dims() {
        // dims (2,1,1): differential 0 is 1x2 over level-0 symbols
        let q = Arc::new(Quiver::beilinson(3).unwrap());
        let mut entries = Vec::new();
        for label in 1..=3u8 {
            let a01 = q.arrow_from(0, label).unwrap();
            entries.push((a01, Mat::from_rows(vec![vec![qi("1"), qi("0")]]).unwrap()));
        }
        let rep = Representation::from_arrow_mats(q, vec![2, 1, 1], entries).unwrap();
        assert!(rep.validate().is_ok());
        let c = SdrComplex::build(&rep).unwrap();
        assert_eq!((c.differential(0).rows(), c.differential(0).cols()), (1, 2));
        for (lv, lb) in c.differential(0).get(0, 0).terms().keys().flatten() {
            assert_eq!(*lv, 0);
            assert!((1..=3).contains(lb));
        }
        assert!(c.check().is_ok());
    }

    #[test]
    fn broken_relations_fail_the_composite_check() {
        // E^1 and E^2 with non-commuting products across the levels
        let q = Arc::new(Quiver::beilinson(3).unwrap());
        let mut entries = Vec::new();
        for i in 0..2usize {
            for label in 1..=3u8 {
                let ai = q.arrow_from(i, label).unwrap();
                let v = match (i, label) {
                    (0, 1) => "1",
                    (0, 2) => "1",
                    (1, 1) => "1",
                    (1, 2) => "2",
                    _ => "0",
                };
                entries.push((ai, Mat::scalar(qi(v))));
            }
        }
        let rep = Representation::from_arrow_mats(q, vec![1, 1, 1], entries).unwrap();
        assert!(rep.validate().is_err());
        assert!(matches!(
            SdrComplex::build(&rep),
            Err(Error::RelationsViolated { .. })
        ));
        let c = SdrComplex::from_rep_unchecked(&rep).unwrap();
        let report = c.check().unwrap_err();
        assert_eq!(report.failures.len(), 1);
        let f = &report.failures[0];
        assert_eq!((f.level, f.row, f.col), (0, 0, 0));
        assert_eq!(f.labels, (1, 2));
    }

    #[test]
    fn two_slot_complex_is_vacuously_ok() {
        let rep = thin(2, &["1", "5"]);
        let c = SdrComplex::build(rep.rep()).unwrap();
        assert_eq!(c.diffs.len(), 1);
        assert!(c.check().is_ok());
    }

    #[test]
    fn random_reps_build_checking_complexes() {
        // products of levelwise scalars always satisfy the relations
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [3u32, 4] {
            let q = Arc::new(Quiver::beilinson(n).unwrap());
            for _ in 0..50 {
                let x: Vec<Qi> = (0..n)
                    .map(|_| {
                        let a = rng.gen_range(-3i64..=3);
                        let b = rng.gen_range(-3i64..=3);
                        Qi::from_parts(a, b)
                    })
                    .collect();
                if x.iter().all(Field::is_zero) {
                    continue;
                }
                let rep = ThinRep::from_point(q.clone(), &x).unwrap();
                let c = SdrComplex::build(rep.rep()).unwrap();
                assert!(c.check().is_ok());
            }
        }
    }

    #[test]
    fn chain_maps_are_vertex_matrices() {
        let rep = thin(3, &["1", "2", "3"]);
        let f = RepMorphism {
            mats: vec![Mat::scalar(qi("5")); 3],
        };
        let maps = SdrComplex::chain_map(rep.rep(), rep.rep(), &f).unwrap();
        assert_eq!(maps.len(), 3);
        let bad = RepMorphism {
            mats: vec![Mat::scalar(qi("5")), Mat::scalar(qi("1")), Mat::scalar(qi("5"))],
        };
        assert!(SdrComplex::chain_map(rep.rep(), rep.rep(), &bad).is_err());
    }

    #[test]
    fn projective_normal_form() {
        let p = ProjectivePoint::new(vec![qi("2"), qi("-2"), qi("0")]).unwrap();
        assert_eq!(p.coords(), &[qi("1"), qi("-1"), qi("0")]);
        let q = ProjectivePoint::new(vec![qi("-3"), qi("3"), qi("0")]).unwrap();
        assert_eq!(p, q);
        let r = ProjectivePoint::new(vec![qi("0"), qi("4"), qi("2")]).unwrap();
        assert_eq!(r.coords(), &[qi("0"), qi("1"), qi("1/2")]);
        assert!(matches!(
            ProjectivePoint::<Qi>::new(vec![qi("0"), qi("0")]),
            Err(Error::ZeroPoint)
        ));
        assert_eq!(format!("{p}"), "[1:-1:0]");
        assert_eq!(ProjectivePoint::<Qi>::parse("[1:-1:0]").unwrap(), p);
        assert_eq!(ProjectivePoint::<Qi>::parse("2:-2:0").unwrap(), p);
        let back = ProjectivePoint::<Qi>::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn fermat_values() {
        let p = ProjectivePoint::new(vec![qi("1"), qi("-1"), qi("0")]).unwrap();
        assert!(p.fermat_value().is_zero());
        assert!(p.is_on_fermat());
        let q = ProjectivePoint::new(vec![qi("1"), qi("2"), qi("1")]).unwrap();
        assert_eq!(q.fermat_value(), qi("10"));
        assert!(!q.is_on_fermat());
        let r = ProjectivePoint::new(vec![qi("1"), qi("i"), qi("1"), qi("i")]).unwrap();
        assert_eq!(r.fermat_value(), qi("4"));
        // homogeneity on raw coordinates
        let x = [qi("1"), qi("2"), qi("-1")];
        let lam = qi("3");
        let scaled: Vec<Qi> = x.iter().map(|c| c.mul(&lam)).collect();
        assert_eq!(fermat_sum(&scaled), lam.pow(3).mul(&fermat_sum(&x)));
        // scale invariance of the verdict comes from normalization
        let s1 = ProjectivePoint::new(x.to_vec()).unwrap();
        let s2 = ProjectivePoint::new(scaled).unwrap();
        assert_eq!(s1.is_on_fermat(), s2.is_on_fermat());
    }

    #[test]
    fn floating_on_locus_tolerance() {
        // x^3 + y^3 = 0 at y = -x, up to a sub-tolerance wobble
        let p = ProjectivePoint::new(vec![
            C64 { re: 1.0, im: 0.0 },
            C64 { re: -1.0, im: 1e-12 },
            C64 { re: 0.0, im: 0.0 },
        ])
        .unwrap();
        assert!(p.is_on_fermat());
        let q = ProjectivePoint::new(vec![
            C64 { re: 1.0, im: 0.0 },
            C64 { re: 1.0, im: 0.0 },
            C64 { re: 1.0, im: 0.0 },
        ])
        .unwrap();
        assert!(!q.is_on_fermat());
    }

    #[test]
    fn extraction_roundtrip() {
        let z = StabilityFunction::standard(3).unwrap();
        let p = extract_point(&thin(3, &["1", "-1", "0"]), &z).unwrap();
        assert_eq!(p.coords(), &[qi("1"), qi("-1"), qi("0")]);

        // level-1 scaled by 7: proportionality absorbs it
        let q = Arc::new(Quiver::beilinson(3).unwrap());
        let mut entries = Vec::new();
        let x = [qi("1"), qi("-1"), qi("0")];
        for i in 0..2usize {
            for label in 1..=3u8 {
                let ai = q.arrow_from(i, label).unwrap();
                let scale = if i == 1 { qi("7") } else { qi("1") };
                entries.push((ai, Mat::scalar(x[label as usize - 1].mul(&scale))));
            }
        }
        let rep = Representation::from_arrow_mats(q, vec![1, 1, 1], entries).unwrap();
        let rep = ThinRep::new(rep).unwrap();
        assert!(rep.rep().validate().is_ok());
        let p2 = extract_point(&rep, &z).unwrap();
        assert_eq!(p2, p);
    }

    #[test]
    fn extraction_guards() {
        let z = StabilityFunction::standard(3).unwrap();
        let q = Arc::new(Quiver::beilinson(3).unwrap());
        let simple = ThinRep::new(
            Representation::<Qi>::simple_at(q, 1).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            extract_point(&simple, &z),
            Err(Error::UnsupportedSupport(_))
        ));
        // full support but unstable under the mirror
        let rep = thin(3, &["1", "-1", "0"]);
        assert!(matches!(
            extract_point(&rep, &z.mirror()),
            Err(Error::NotStable(_))
        ));
    }

    #[test]
    fn classification_matches_fermat_arithmetic() {
        let z = StabilityFunction::standard(3).unwrap();
        let on = classify_support(&thin(3, &["1", "-1", "0"]), &z).unwrap();
        assert!(on.is_on_fermat());
        assert_eq!(on.point().coords()[1], qi("-1"));
        let off = classify_support(&thin(3, &["1", "1", "1"]), &z).unwrap();
        assert!(!off.is_on_fermat());
        let on2 = classify_support(&thin(3, &["0", "1", "-1"]), &z).unwrap();
        assert!(on2.is_on_fermat());
        assert_eq!(on2.point().coords(), &[qi("0"), qi("1"), qi("-1")]);
    }

    #[test]
    fn extraction_is_injective_on_nonisomorphic_inputs() {
        let z = StabilityFunction::standard(3).unwrap();
        let reps = [
            thin(3, &["1", "-1", "0"]),
            thin(3, &["0", "1", "-1"]),
            thin(3, &["1", "0", "-1"]),
            thin(3, &["2", "-2", "0"]),
        ];
        let points: Vec<_> = reps
            .iter()
            .map(|r| extract_point(r, &z).unwrap())
            .collect();
        // first and last are isomorphic (same projective class)
        assert_eq!(points[0], points[3]);
        assert!(reps[0].is_isomorphic(&reps[3]).unwrap());
        for i in 0..3 {
            for j in i + 1..3 {
                assert_ne!(points[i], points[j]);
                assert!(!reps[i].is_isomorphic(&reps[j]).unwrap());
            }
        }
    }

    #[test]
    fn complex_json_shape() {
        let rep = thin(3, &["1", "-1", "0"]);
        let c = SdrComplex::build(rep.rep()).unwrap();
        let v = c.to_json();
        assert_eq!(v["n"], 3);
        assert_eq!(v["dims"], json!([1, 1, 1]));
        let d0 = v["differentials"][0].as_array().unwrap();
        assert_eq!(d0.len(), 1);
        assert_eq!(d0[0]["row"], 0);
        // the zero third coordinate drops out of the terms
        assert_eq!(d0[0]["terms"].as_array().unwrap().len(), 2);
        assert_eq!(d0[0]["terms"][0]["word"], json!([[0, 1]]));
    }
}
