//! The three quiver families: linear A-type, its n-fold tensor power
//! with commuting-square relations, and the Beilinson-style quiver with
//! n parallel arrows per consecutive vertex pair.
//!
//! Vertices, arrows, and relations are stored in canonical
//! lexicographic order, so every enumeration in the crate is
//! deterministic.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default cap on n for tensor-power quivers (|V| = n^n).
pub const DEFAULT_MAX_TENSOR_N: u32 = 6;
/// Cap on n for the linear families, purely a sanity bound.
const MAX_LINEAR_N: u32 = 100;

/// A vertex: an n-tuple of coordinates for tensor quivers, a single
/// number for the linear families. Coordinates lie in [0, n-1];
/// the index of a vertex is the sum of its coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(Vec<u8>);

impl Vertex {
    pub fn new(coords: Vec<u8>) -> Self {
        Vertex(coords)
    }

    pub fn level(i: u8) -> Self {
        Vertex(vec![i])
    }

    pub fn coords(&self) -> &[u8] {
        &self.0
    }

    pub fn index(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }

    /// Parses the display form back into a vertex: a plain number for
    /// arity 1, a string of digits otherwise.
    pub fn parse(s: &str, arity: usize) -> Result<Self> {
        let s = s.trim();
        if arity == 1 {
            let v: u8 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {s:?}")))?;
            return Ok(Vertex(vec![v]));
        }
        if s.len() != arity || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!(
                "bad vertex {s:?}: expected {arity} digits"
            )));
        }
        Ok(Vertex(s.bytes().map(|b| b - b'0').collect()))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        for &c in &self.0 {
            debug_assert!(c < 10);
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An arrow; the label is the incremented coordinate j for tensor
/// quivers, the parallel-arrow label s in [1, n] for Beilinson, and 1
/// for the single arrows of the linear A-type quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: u8,
}

/// A commuting-square relation: the two length-2 paths out of `source`
/// applying `labels.0` and `labels.1` in either order are identified.
/// Canonical form has labels.0 < labels.1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub labels: (u8, u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuiverKind {
    DynkinA,
    TensorPower,
    Beilinson,
}

impl QuiverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuiverKind::DynkinA => "dynkinA",
            QuiverKind::TensorPower => "tensor",
            QuiverKind::Beilinson => "beilinson",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dynkinA" => Ok(QuiverKind::DynkinA),
            "tensor" => Ok(QuiverKind::TensorPower),
            "beilinson" => Ok(QuiverKind::Beilinson),
            other => Err(Error::InvalidParameter(format!(
                "unknown quiver kind {other:?}, expected tensor, beilinson, or dynkinA"
            ))),
        }
    }
}

impl fmt::Display for QuiverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug)]
pub struct Quiver {
    kind: QuiverKind,
    n: u32,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    vertex_lookup: HashMap<Vertex, usize>,
    arrow_lookup: HashMap<(usize, u8), usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
    index_classes: Vec<Vec<usize>>,
}

impl Quiver {
    /// Linear quiver 0 -> 1 -> ... -> n-1 with no relations.
    pub fn dynkin_a(n: u32) -> Result<Quiver> {
        check_linear_n(n)?;
        let vertices: Vec<Vertex> = (0..n as u8).map(Vertex::level).collect();
        let arrows = (0..n as usize - 1)
            .map(|i| Arrow {
                source: i,
                target: i + 1,
                label: 1,
            })
            .collect();
        Ok(Quiver::assemble(QuiverKind::DynkinA, n, vertices, arrows, Vec::new()))
    }

    /// n vertices, n parallel arrows labeled s = 1..n between each
    /// consecutive pair, and the commuting relations
    /// E^s_{i,i+1} E^s'_{i-1,i} = E^s'_{i,i+1} E^s_{i-1,i}.
    pub fn beilinson(n: u32) -> Result<Quiver> {
        check_linear_n(n)?;
        let vertices: Vec<Vertex> = (0..n as u8).map(Vertex::level).collect();
        let mut arrows = Vec::with_capacity((n * (n - 1)) as usize);
        for i in 0..n as usize - 1 {
            for s in 1..=n as u8 {
                arrows.push(Arrow {
                    source: i,
                    target: i + 1,
                    label: s,
                });
            }
        }
        let mut relations = Vec::new();
        for i in 1..n as usize - 1 {
            for p in 1..=n as u8 {
                for q in p + 1..=n as u8 {
                    relations.push(Relation {
                        source: i - 1,
                        target: i + 1,
                        labels: (p, q),
                    });
                }
            }
        }
        Ok(Quiver::assemble(QuiverKind::Beilinson, n, vertices, arrows, relations))
    }

    /// n-fold tensor power of the A-type quiver: vertices are n-tuples
    /// over [0, n-1], arrows increment one coordinate, and every pair
    /// of incrementable coordinates yields one commuting square.
    pub fn tensor_power(n: u32) -> Result<Quiver> {
        Quiver::tensor_power_with_limit(n, DEFAULT_MAX_TENSOR_N)
    }

    pub fn tensor_power_with_limit(n: u32, max_n: u32) -> Result<Quiver> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
        }
        if n > max_n {
            return Err(Error::ResourceLimit(format!(
                "tensor power n = {n} exceeds the bound {max_n} (|V| = n^n)"
            )));
        }
        let arity = n as usize;
        let top = (n - 1) as u8;
        let mut vertices = Vec::with_capacity((n as usize).pow(n));
        let mut coords = vec![0u8; arity];
        loop {
            vertices.push(Vertex(coords.clone()));
            // odometer increment in lexicographic order
            let mut pos = arity;
            while pos > 0 {
                pos -= 1;
                if coords[pos] < top {
                    coords[pos] += 1;
                    for c in coords.iter_mut().skip(pos + 1) {
                        *c = 0;
                    }
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
        let lookup: HashMap<Vertex, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        for (vi, v) in vertices.iter().enumerate() {
            let incrementable: Vec<u8> = (0..arity)
                .filter(|&j| v.0[j] < top)
                .map(|j| (j + 1) as u8)
                .collect();
            for &j in &incrementable {
                let mut t = v.0.clone();
                t[j as usize - 1] += 1;
                arrows.push(Arrow {
                    source: vi,
                    target: lookup[&Vertex(t)],
                    label: j,
                });
            }
            for (a, &p) in incrementable.iter().enumerate() {
                for &q in &incrementable[a + 1..] {
                    let mut t = v.0.clone();
                    t[p as usize - 1] += 1;
                    t[q as usize - 1] += 1;
                    relations.push(Relation {
                        source: vi,
                        target: lookup[&Vertex(t)],
                        labels: (p, q),
                    });
                }
            }
        }
        Ok(Quiver::assemble(QuiverKind::TensorPower, n, vertices, arrows, relations))
    }

    fn assemble(
        kind: QuiverKind,
        n: u32,
        vertices: Vec<Vertex>,
        arrows: Vec<Arrow>,
        relations: Vec<Relation>,
    ) -> Quiver {
        let vertex_lookup = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut arrow_lookup = HashMap::new();
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (ai, a) in arrows.iter().enumerate() {
            arrow_lookup.insert((a.source, a.label), ai);
            out_arrows[a.source].push(ai);
            in_arrows[a.target].push(ai);
        }
        let max_index = vertices.iter().map(Vertex::index).max().unwrap_or(0);
        let mut index_classes = vec![Vec::new(); max_index as usize + 1];
        for (vi, v) in vertices.iter().enumerate() {
            index_classes[v.index() as usize].push(vi);
        }
        Quiver {
            kind,
            n,
            vertices,
            arrows,
            relations,
            vertex_lookup,
            arrow_lookup,
            out_arrows,
            in_arrows,
            index_classes,
        }
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex(&self, idx: usize) -> &Vertex {
        &self.vertices[idx]
    }

    pub fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        self.vertex_lookup.get(v).copied()
    }

    /// Index (coordinate sum) of a vertex that must belong to the quiver.
    pub fn index_of(&self, v: &Vertex) -> Result<u32> {
        match self.vertex_lookup.get(v) {
            Some(_) => Ok(v.index()),
            None => Err(Error::NotFound(format!("vertex {v} not in quiver"))),
        }
    }

    /// Largest vertex index: n(n-1) for tensor powers, n-1 otherwise.
    pub fn max_index(&self) -> u32 {
        self.index_classes.len() as u32 - 1
    }

    pub fn vertices_of_index(&self, k: u32) -> &[usize] {
        self.index_classes
            .get(k as usize)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn arrow_from(&self, source: usize, label: u8) -> Option<usize> {
        self.arrow_lookup.get(&(source, label)).copied()
    }

    pub fn arrows_from(&self, source: usize) -> &[usize] {
        &self.out_arrows[source]
    }

    pub fn arrows_into(&self, target: usize) -> &[usize] {
        &self.in_arrows[target]
    }

    /// The label function on vertex pairs: 0 on the diagonal, the
    /// incremented coordinate across an arrow. Beilinson quivers have n
    /// parallel arrows per pair, so the label is ambiguous there.
    pub fn arrow_label(&self, a: &Vertex, b: &Vertex) -> Result<u8> {
        let ai = self
            .vertex_index(a)
            .ok_or_else(|| Error::NotFound(format!("vertex {a} not in quiver")))?;
        let bi = self
            .vertex_index(b)
            .ok_or_else(|| Error::NotFound(format!("vertex {b} not in quiver")))?;
        if ai == bi {
            return Ok(0);
        }
        let found: Vec<u8> = self.out_arrows[ai]
            .iter()
            .filter(|&&arrow| self.arrows[arrow].target == bi)
            .map(|&arrow| self.arrows[arrow].label)
            .collect();
        match found.len() {
            0 => Err(Error::NotAdjacent(format!("{a} -> {b}"))),
            1 => Ok(found[0]),
            _ => Err(Error::AmbiguousArrow(format!(
                "{} parallel arrows {a} -> {b}; labels are per-arrow here",
                found.len()
            ))),
        }
    }

    /// The two length-2 paths of a relation as arrow index pairs, in
    /// application order: first labels.0 then labels.1, and vice versa.
    pub fn relation_paths(&self, rel: &Relation) -> ((usize, usize), (usize, usize)) {
        let (p, q) = rel.labels;
        let first = |l1: u8, l2: u8| {
            let a1 = self.arrow_from(rel.source, l1).expect("relation path arrow");
            let mid = self.arrows[a1].target;
            let a2 = self.arrow_from(mid, l2).expect("relation path arrow");
            debug_assert_eq!(self.arrows[a2].target, rel.target);
            (a1, a2)
        };
        (first(p, q), first(q, p))
    }

    /// Serialized key for an arrow, `src>dst#label`.
    pub fn arrow_key(&self, arrow_idx: usize) -> String {
        let a = &self.arrows[arrow_idx];
        format!(
            "{}>{}#{}",
            self.vertices[a.source], self.vertices[a.target], a.label
        )
    }

    pub fn parse_arrow_key(&self, key: &str) -> Result<usize> {
        let bad = || Error::Parse(format!("bad arrow key {key:?}"));
        let (src, rest) = key.split_once('>').ok_or_else(bad)?;
        let (dst, label) = rest.split_once('#').ok_or_else(bad)?;
        let arity = self.vertices[0].coords().len();
        let src = Vertex::parse(src, arity)?;
        let dst = Vertex::parse(dst, arity)?;
        let label: u8 = label.parse().map_err(|_| bad())?;
        let si = self
            .vertex_index(&src)
            .ok_or_else(|| Error::NotFound(format!("vertex {src} not in quiver")))?;
        let ai = self
            .arrow_from(si, label)
            .ok_or_else(|| Error::NotFound(format!("no arrow {key}")))?;
        if self.vertices[self.arrows[ai].target] != dst {
            return Err(Error::NotFound(format!("no arrow {key}")));
        }
        Ok(ai)
    }

    pub fn parse_vertex(&self, s: &str) -> Result<Vertex> {
        Vertex::parse(s, self.vertices[0].coords().len())
    }

    pub fn is_compatible(&self, other: &Quiver) -> bool {
        self.kind == other.kind && self.n == other.n
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph {}_{} {{\n", self.kind.as_str(), self.n));
        out.push_str("  rankdir=LR;\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label={}];\n",
                self.vertices[a.source], self.vertices[a.target], a.label
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": self.kind.as_str(), "n": self.n })
    }

    pub fn from_json(v: &Value) -> Result<Quiver> {
        Quiver::from_json_with_limit(v, DEFAULT_MAX_TENSOR_N)
    }

    pub fn from_json_with_limit(v: &Value, max_n: u32) -> Result<Quiver> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Json("quiver: missing \"kind\"".into()))?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("quiver: missing \"n\"".into()))?
            as u32;
        match QuiverKind::parse(kind)? {
            QuiverKind::DynkinA => Quiver::dynkin_a(n),
            QuiverKind::Beilinson => Quiver::beilinson(n),
            QuiverKind::TensorPower => Quiver::tensor_power_with_limit(n, max_n),
        }
    }
}

fn check_linear_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    if n > MAX_LINEAR_N {
        return Err(Error::ResourceLimit(format!(
            "n = {n} exceeds the bound {MAX_LINEAR_N}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent commuting-square count: unordered pairs of
    /// same-source arrows with distinct targets that close at a common
    /// vertex via the swapped labels.
    fn brute_force_squares(q: &Quiver) -> usize {
        let mut count = 0;
        for v in 0..q.vertices().len() {
            let outs = q.arrows_from(v);
            for (i, &a1) in outs.iter().enumerate() {
                for &a2 in &outs[i + 1..] {
                    let (l1, t1) = (q.arrows()[a1].label, q.arrows()[a1].target);
                    let (l2, t2) = (q.arrows()[a2].label, q.arrows()[a2].target);
                    if t1 == t2 {
                        continue;
                    }
                    let close1 = q.arrow_from(t1, l2).map(|a| q.arrows()[a].target);
                    let close2 = q.arrow_from(t2, l1).map(|a| q.arrows()[a].target);
                    if close1.is_some() && close1 == close2 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn dynkin_counts() {
        for n in [2u32, 3, 5] {
            let q = Quiver::dynkin_a(n).unwrap();
            assert_eq!(q.vertices().len(), n as usize);
            assert_eq!(q.arrows().len(), n as usize - 1);
            assert!(q.relations().is_empty());
        }
        let q = Quiver::dynkin_a(3).unwrap();
        let arrows: Vec<(usize, usize)> =
            q.arrows().iter().map(|a| (a.source, a.target)).collect();
        assert_eq!(arrows, vec![(0, 1), (1, 2)]);
        assert!(Quiver::dynkin_a(1).is_err());
    }

    #[test]
    fn tensor_counts() {
        for n in [2u32, 3, 4, 5] {
            let q = Quiver::tensor_power(n).unwrap();
            let nn = n as usize;
            assert_eq!(q.vertices().len(), nn.pow(n));
            assert_eq!(q.arrows().len(), nn * (nn - 1) * nn.pow(n - 1));
            assert_eq!(q.relations().len(), brute_force_squares(&q));
        }
    }

    #[test]
    fn tensor_n2_square() {
        let q = Quiver::tensor_power(2).unwrap();
        assert_eq!(q.vertices().len(), 4);
        let arrows: HashSet<String> = (0..q.arrows().len()).map(|i| q.arrow_key(i)).collect();
        let expected: HashSet<String> = ["00>10#1", "00>01#2", "10>11#2", "01>11#1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(arrows, expected);
        assert_eq!(q.relations().len(), 1);
        let rel = &q.relations()[0];
        assert_eq!(rel.labels, (1, 2));
        let ((a1, a2), (b1, b2)) = q.relation_paths(rel);
        assert_eq!(q.arrows()[a1].label, 1);
        assert_eq!(q.arrows()[a2].label, 2);
        assert_eq!(q.arrows()[b1].label, 2);
        assert_eq!(q.arrows()[b2].label, 1);
        assert_eq!(q.arrows()[a2].target, q.arrows()[b2].target);
    }

    #[test]
    fn tensor_resource_guard() {
        assert!(matches!(
            Quiver::tensor_power(7),
            Err(Error::ResourceLimit(_))
        ));
        assert!(Quiver::tensor_power_with_limit(2, 7).is_ok());
    }

    #[test]
    fn beilinson_counts() {
        let q = Quiver::beilinson(5).unwrap();
        assert_eq!(q.vertices().len(), 5);
        assert_eq!(q.arrows().len(), 20);
        assert_eq!(q.relations().len(), 3 * 10);
        let q3 = Quiver::beilinson(3).unwrap();
        assert_eq!(q3.arrows().len(), 6);
        assert_eq!(q3.relations().len(), 3);
        assert!(q3.relations().iter().all(|r| r.source == 0 && r.target == 2));
        let q2 = Quiver::beilinson(2).unwrap();
        assert_eq!(q2.arrows().len(), 2);
        assert!(q2.relations().is_empty());
    }

    #[test]
    fn beilinson_relations_cover_unordered_pairs() {
        let q = Quiver::beilinson(4).unwrap();
        let mut seen = HashSet::new();
        for r in q.relations() {
            assert!(r.labels.0 < r.labels.1);
            assert!(seen.insert((r.source, r.labels)));
            // both orders of the pair produce valid paths to the target
            let ((a1, a2), (b1, b2)) = q.relation_paths(r);
            for a in [a1, a2, b1, b2] {
                assert!(a < q.arrows().len());
            }
        }
        assert_eq!(seen.len(), 2 * 6);
    }

    #[test]
    fn index_examples() {
        let q = Quiver::tensor_power(5).unwrap();
        assert_eq!(q.index_of(&Vertex::new(vec![0; 5])).unwrap(), 0);
        assert_eq!(q.index_of(&Vertex::new(vec![4; 5])).unwrap(), 20);
        assert_eq!(q.max_index(), 20);
        let q3 = Quiver::tensor_power(3).unwrap();
        assert_eq!(q3.index_of(&Vertex::new(vec![1, 0, 2])).unwrap(), 3);
        assert!(q3.index_of(&Vertex::new(vec![1, 0, 3])).is_err());
    }

    #[test]
    fn arrow_index_steps_by_one() {
        for q in [
            Quiver::tensor_power(3).unwrap(),
            Quiver::beilinson(4).unwrap(),
            Quiver::dynkin_a(5).unwrap(),
        ] {
            for a in q.arrows() {
                assert_eq!(
                    q.vertex(a.target).index(),
                    q.vertex(a.source).index() + 1
                );
            }
        }
    }

    #[test]
    fn arrow_label_examples() {
        let q = Quiver::tensor_power(3).unwrap();
        let v = |c: [u8; 3]| Vertex::new(c.to_vec());
        assert_eq!(q.arrow_label(&v([0, 0, 0]), &v([0, 1, 0])).unwrap(), 2);
        assert_eq!(q.arrow_label(&v([1, 1, 1]), &v([1, 1, 1])).unwrap(), 0);
        assert!(matches!(
            q.arrow_label(&v([0, 0, 0]), &v([0, 0, 2])),
            Err(Error::NotAdjacent(_))
        ));
        let b = Quiver::beilinson(3).unwrap();
        assert!(matches!(
            b.arrow_label(&Vertex::level(0), &Vertex::level(1)),
            Err(Error::AmbiguousArrow(_))
        ));
    }

    #[test]
    fn index_classes_partition() {
        let q = Quiver::tensor_power(3).unwrap();
        let total: usize = (0..=q.max_index())
            .map(|k| q.vertices_of_index(k).len())
            .sum();
        assert_eq!(total, q.vertices().len());
        assert_eq!(q.vertices_of_index(0), &[0]);
    }

    #[test]
    fn dot_output_is_stable() {
        let q = Quiver::dynkin_a(3).unwrap();
        let expected = "digraph dynkinA_3 {\n  rankdir=LR;\n  \"0\";\n  \"1\";\n  \"2\";\n  \"0\" -> \"1\" [label=1];\n  \"1\" -> \"2\" [label=1];\n}\n";
        assert_eq!(q.to_dot(), expected);
        let t = Quiver::tensor_power(2).unwrap();
        assert!(t.to_dot().contains("\"00\" -> \"01\" [label=2];"));
    }

    #[test]
    fn json_roundtrip() {
        for q in [
            Quiver::tensor_power(3).unwrap(),
            Quiver::beilinson(4).unwrap(),
            Quiver::dynkin_a(2).unwrap(),
        ] {
            let back = Quiver::from_json(&q.to_json()).unwrap();
            assert!(back.is_compatible(&q));
            assert_eq!(back.arrows().len(), q.arrows().len());
        }
        assert!(Quiver::from_json(&json!({"kind": "tensor"})).is_err());
        assert!(Quiver::from_json(&json!({"kind": "mystery", "n": 3})).is_err());
    }

    #[test]
    fn arrow_key_roundtrip() {
        let q = Quiver::tensor_power(3).unwrap();
        for i in 0..q.arrows().len() {
            let key = q.arrow_key(i);
            assert_eq!(q.parse_arrow_key(&key).unwrap(), i);
        }
        assert!(q.parse_arrow_key("000>001#1").is_err());
        let b = Quiver::beilinson(3).unwrap();
        assert_eq!(b.parse_arrow_key("0>1#3").unwrap(), 2);
    }
}
