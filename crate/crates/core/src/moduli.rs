//! Sampled moduli charts for the correspondence between stable thin
//! representations and points of the degree-n Fermat hypersurface.
//!
//! The "moduli space" here is a finite chart: a deduplicated, sorted
//! list of projective points together with their normal-form thin
//! representations and classification verdicts. Sampling is exact on
//! `Q` and `Qi` (parametric family plus bounded-height lattice search)
//! and numeric on `C64`.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::rep::ThinRep;
use crate::scalar::{Field, FieldTag};
use crate::sdr::{classify_support, fermat_sum, ProjectivePoint, SupportClass};
use crate::stability::{phase_cmp, StabilityFunction, StabilityVerdict};

/// Search ceiling for the exact samplers. Heights beyond this are
/// reachable through [`sample_fermat_points_with`].
pub const DEFAULT_MAX_HEIGHT: u32 = 3;
/// Cap on enumerated coordinate tuples per call, so a hopeless search
/// fails in bounded time instead of hanging.
pub const DEFAULT_TUPLE_BUDGET: usize = 2_000_000;

fn cmp_coords<F: Field>(a: &[F], b: &[F]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.canonical_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

fn sort_dedup_points<F: Field>(points: &mut Vec<ProjectivePoint<F>>) {
    points.sort_by(|p, q| cmp_coords(p.coords(), q.coords()));
    points.dedup_by(|p, q| p == q);
}

/// Fermat-locus points with all coordinates of the form a, ζ·a where
/// ζ^n = -1: the sum collapses to a^n·(1 + ζ^n) = 0.
fn parametric_points<F: Field>(n: u32) -> Vec<ProjectivePoint<F>> {
    let mut out = Vec::new();
    let nn = n as usize;
    for zeta in F::minus_one_nth_roots(n) {
        for i in 0..nn {
            for j in i + 1..nn {
                let mut coords = vec![F::zero(); nn];
                coords[i] = F::one();
                coords[j] = zeta.clone();
                if let Ok(p) = ProjectivePoint::new(coords) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Exhaustive search over projectively normalized tuples (leading
/// coordinate 1, the rest drawn from the height-h lattice). Appends
/// every tuple with vanishing Fermat sum.
fn lattice_points<F: Field>(
    n: u32,
    height: u32,
    budget: &mut usize,
    out: &mut Vec<ProjectivePoint<F>>,
) -> bool {
    let lattice = F::lattice(height);
    if lattice.is_empty() {
        return true;
    }
    let nn = n as usize;
    let powers: Vec<(F, F)> = lattice.iter().map(|x| (x.clone(), x.pow(n))).collect();
    for lead in 0..nn {
        let free = nn - 1 - lead;
        let tuples = powers.len().checked_pow(free as u32);
        match tuples {
            Some(t) if t <= *budget => *budget -= t,
            _ => return false,
        }
        let mut idx = vec![0usize; free];
        loop {
            let mut sum = F::one();
            for &k in &idx {
                sum = sum.add(&powers[k].1);
            }
            if sum.is_zero() {
                let mut coords = vec![F::zero(); nn];
                coords[lead] = F::one();
                for (slot, &k) in idx.iter().enumerate() {
                    coords[lead + 1 + slot] = powers[k].0.clone();
                }
                out.push(ProjectivePoint::new(coords).expect("leading coordinate is 1"));
            }
            // odometer increment
            let mut pos = free;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < powers.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&k| k == 0) {
                break;
            }
            if free == 0 {
                break;
            }
        }
    }
    true
}

fn sample_numeric_points<F: Field>(
    n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<ProjectivePoint<F>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nn = n as usize;
    let mut points: Vec<ProjectivePoint<F>> = Vec::new();
    let mut attempts = 0usize;
    while points.len() < count {
        attempts += 1;
        if attempts > 1000 * count + 1000 {
            return Err(Error::InternalInconsistency(
                "numeric Fermat sampler failed to converge".into(),
            ));
        }
        let mut coords: Vec<F> = (0..nn - 1).map(|_| F::random(&mut rng)).collect();
        let mut partial = F::zero();
        for x in &coords {
            partial = partial.add(&x.pow(n));
        }
        let last = match partial.neg().nth_root(n) {
            Some(r) => r,
            None => {
                return Err(Error::InvalidParameter(
                    "numeric sampling needs a field with numeric roots".into(),
                ))
            }
        };
        coords.push(last);
        let Ok(p) = ProjectivePoint::new(coords) else {
            continue;
        };
        if points.iter().any(|q| q == &p) {
            continue;
        }
        points.push(p);
    }
    sort_dedup_points(&mut points);
    Ok(points)
}

/// Samples `count` distinct projective points on the Fermat locus
/// x_1^n + ... + x_n^n = 0.
///
/// Exact fields search the parametric (a, ζ·a) family and the lattice
/// of bounded height; `C64` solves for the last coordinate with a
/// numeric n-th root. Output is sorted and deterministic in the seed.
pub fn sample_fermat_points<F: Field>(
    n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<ProjectivePoint<F>>> {
    sample_fermat_points_with(n, count, seed, DEFAULT_MAX_HEIGHT, DEFAULT_TUPLE_BUDGET)
}

/// [`sample_fermat_points`] with explicit search bounds for the exact
/// lattice stage.
pub fn sample_fermat_points_with<F: Field>(
    n: u32,
    count: usize,
    seed: u64,
    max_height: u32,
    tuple_budget: usize,
) -> Result<Vec<ProjectivePoint<F>>> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "the Fermat locus needs degree at least 2".into(),
        ));
    }
    if F::TAG == FieldTag::C64 {
        return sample_numeric_points(n, count, seed);
    }

    let mut points = parametric_points::<F>(n);
    let mut budget = tuple_budget;
    let mut searched_height = 0;
    for h in 1..=max_height {
        let mut found = Vec::new();
        if !lattice_points(n, h, &mut budget, &mut found) {
            break;
        }
        points.extend(found);
        searched_height = h;
        sort_dedup_points(&mut points);
        if points.len() >= count {
            break;
        }
    }
    sort_dedup_points(&mut points);
    if points.len() < count {
        return Err(Error::SearchExhausted {
            height: searched_height,
            detail: format!(
                "found {} of {count} requested Fermat points over {} for n={n}",
                points.len(),
                F::TAG.as_str()
            ),
        });
    }
    points.truncate(count);
    Ok(points)
}

/// Control points off the Fermat locus, for exercising the negative
/// direction of the support classification. Deterministic in the seed.
pub fn sample_off_fermat_points<F: Field>(
    n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<ProjectivePoint<F>>> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "the Fermat locus needs degree at least 2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nn = n as usize;
    let mut points: Vec<ProjectivePoint<F>> = Vec::new();
    // coordinate vectors first: Fermat sum is 1 there for every n
    for i in 0..nn {
        if points.len() == count {
            break;
        }
        let mut coords = vec![F::zero(); nn];
        coords[i] = F::one();
        points.push(ProjectivePoint::new(coords).expect("unit vector"));
    }
    let mut attempts = 0usize;
    while points.len() < count {
        attempts += 1;
        if attempts > 1000 * count + 1000 {
            return Err(Error::InternalInconsistency(
                "off-locus sampler failed to converge".into(),
            ));
        }
        let coords: Vec<F> = (0..nn).map(|_| F::random(&mut rng)).collect();
        if fermat_sum(&coords).is_zero() {
            continue;
        }
        let Ok(p) = ProjectivePoint::new(coords) else {
            continue;
        };
        if points.iter().any(|q| q == &p) {
            continue;
        }
        points.push(p);
    }
    sort_dedup_points(&mut points);
    Ok(points)
}

/// One chart row: a point, its normal-form thin representation, and
/// the classification verdict.
#[derive(Clone, Debug)]
pub struct ChartEntry<F: Field> {
    pub rep: ThinRep<F>,
    pub point: ProjectivePoint<F>,
    pub fermat_value: F,
    pub on_fermat: bool,
}

impl<F: Field> ChartEntry<F> {
    pub fn verdict(&self) -> &'static str {
        if self.on_fermat {
            "on-fermat"
        } else {
            "zero-object"
        }
    }
}

/// How a chart's points were produced; recorded so charts are
/// reproducible from their own header line.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub z: StabilityFunction,
    pub strategy: String,
    pub seed: Option<u64>,
}

/// A finite sampled chart of the moduli correspondence. Entries are
/// deduplicated by projective point and sorted; every entry's rep is
/// stable under the recorded stability function.
#[derive(Clone, Debug)]
pub struct ModuliChart<F: Field> {
    n: u32,
    entries: Vec<ChartEntry<F>>,
    semistable_excluded: Vec<String>,
    provenance: Provenance,
}

impl<F: Field> ModuliChart<F> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> &[ChartEntry<F>] {
        &self.entries
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Points reported stable-but-tied and therefore left out of the
    /// chart proper.
    pub fn semistable_excluded(&self) -> &[String] {
        &self.semistable_excluded
    }

    pub fn on_fermat_count(&self) -> usize {
        self.entries.iter().filter(|e| e.on_fermat).count()
    }

    /// JSON-lines rendering: optional provenance line, one line per
    /// entry, then a summary line. Byte-identical for identical input.
    pub fn to_jsonl(&self, with_provenance: bool) -> String {
        let mut lines = Vec::new();
        if with_provenance {
            lines.push(
                json!({
                    "provenance": {
                        "n": self.n,
                        "field": F::TAG.as_str(),
                        "z": self.provenance.z.to_json(),
                        "strategy": self.provenance.strategy,
                        "seed": self.provenance.seed,
                    }
                })
                .to_string(),
            );
        }
        for e in &self.entries {
            lines.push(
                json!({
                    "point": e.point.to_string(),
                    "coords": e.point.to_json(),
                    "fermat": e.fermat_value.to_json(),
                    "verdict": e.verdict(),
                    "rep": e.rep.rep().to_json(),
                })
                .to_string(),
            );
        }
        lines.push(
            json!({
                "summary": {
                    "entries": self.entries.len(),
                    "on_fermat": self.on_fermat_count(),
                    "zero_object": self.entries.len() - self.on_fermat_count(),
                    "semistable_excluded": self.semistable_excluded,
                }
            })
            .to_string(),
        );
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

fn require_decreasing_phases(z: &StabilityFunction) -> Result<()> {
    for k in 0..z.max_index() {
        if phase_cmp(z.charge(k), z.charge(k + 1)) != Ordering::Greater {
            return Err(Error::InvalidParameter(format!(
                "the pipeline needs strictly decreasing phases; indices {k} and {} break that",
                k + 1
            )));
        }
    }
    Ok(())
}

fn require_covers(z: &StabilityFunction, q: &Quiver) -> Result<()> {
    if !z.is_framed_invariant(q) {
        return Err(Error::Incompatible(format!(
            "stability function covers indices up to {}, quiver needs {}",
            z.max_index(),
            q.max_index()
        )));
    }
    Ok(())
}

/// Maps an unexpected verdict to the loud theorem-violation error; the
/// pipeline treats non-stable outcomes for point representations as
/// evidence of a bug, never as data.
fn stability_violation(context: &str, verdict: &StabilityVerdict) -> Option<Error> {
    match verdict {
        StabilityVerdict::Stable => None,
        StabilityVerdict::SemistableOnly { tie } => Some(Error::TheoremViolation(format!(
            "{context}: expected a stable object, found a phase tie with support {:?}",
            tie.support
        ))),
        StabilityVerdict::Unstable { witness } => Some(Error::TheoremViolation(format!(
            "{context}: expected a stable object, destabilized by support {:?}",
            witness.support
        ))),
    }
}

/// Runs every point through the representation/stability/support
/// pipeline and assembles the chart.
///
/// Each point becomes a thin representation; a representation that is
/// not stable under `z` is a theorem violation and aborts the run.
/// Strictly semistable verdicts are reported but excluded. Entries are
/// deduplicated projectively and sorted.
pub fn syz_pipeline<F: Field>(
    n: u32,
    z: &StabilityFunction,
    points: &[ProjectivePoint<F>],
    strategy: &str,
    seed: Option<u64>,
) -> Result<ModuliChart<F>> {
    let q = Arc::new(Quiver::beilinson(n)?);
    require_covers(z, &q)?;
    require_decreasing_phases(z)?;

    let mut entries: Vec<ChartEntry<F>> = Vec::new();
    let mut semistable_excluded = Vec::new();
    for p in points {
        if p.dim_ambient() != n as usize {
            return Err(Error::InvalidParameter(format!(
                "point {p} has {} coordinates, the degree-{n} chart needs {n}",
                p.dim_ambient()
            )));
        }
        let rep = ThinRep::from_point(q.clone(), p.coords())?;
        let verdict = z.is_stable(&rep)?;
        if let StabilityVerdict::SemistableOnly { .. } = verdict {
            semistable_excluded.push(p.to_string());
            continue;
        }
        if let Some(err) = stability_violation(&format!("point {p}"), &verdict) {
            return Err(err);
        }
        let class = classify_support(&rep, z)?;
        let point = match &class {
            SupportClass::PointOnFermat(p) | SupportClass::ZeroObject(p) => p.clone(),
        };
        let normal_rep = ThinRep::from_point(q.clone(), point.coords())?;
        entries.push(ChartEntry {
            fermat_value: point.fermat_value(),
            on_fermat: class.is_on_fermat(),
            rep: normal_rep,
            point,
        });
    }
    entries.sort_by(|a, b| cmp_coords(a.point.coords(), b.point.coords()));
    entries.dedup_by(|a, b| a.point == b.point);
    semistable_excluded.sort();
    semistable_excluded.dedup();
    Ok(ModuliChart {
        n,
        entries,
        semistable_excluded,
        provenance: Provenance {
            z: z.clone(),
            strategy: strategy.to_string(),
            seed,
        },
    })
}

/// One family member's verdicts on both sides of the mirror pair.
#[derive(Clone, Debug)]
pub struct MirrorRow {
    pub object: String,
    pub is_simple: bool,
    pub verdict_under_z: String,
    pub verdict_under_mirror: String,
    /// Destabilizing support under the mirror, when one exists.
    pub mirror_witness: Option<Vec<usize>>,
}

/// Side-by-side stability verdicts for a family of thin objects under
/// a stability function and its mirror.
#[derive(Clone, Debug)]
pub struct MirrorReport {
    pub n: u32,
    pub z: StabilityFunction,
    pub mirror_z: StabilityFunction,
    pub rows: Vec<MirrorRow>,
}

impl MirrorReport {
    /// True when the objects stable on both sides are exactly the
    /// simples.
    pub fn dichotomy_holds(&self) -> bool {
        self.rows.iter().all(|r| {
            let both = r.verdict_under_z == "stable" && r.verdict_under_mirror == "stable";
            both == r.is_simple
        })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "object": r.object,
                    "simple": r.is_simple,
                    "under_z": r.verdict_under_z,
                    "under_mirror": r.verdict_under_mirror,
                    "mirror_witness": r.mirror_witness,
                })
            })
            .collect();
        let simples = self.rows.iter().filter(|r| r.is_simple).count();
        json!({
            "n": self.n,
            "z": self.z.to_json(),
            "mirror": self.mirror_z.to_json(),
            "rows": rows,
            "summary": {
                "rows": self.rows.len(),
                "simples": simples,
                "non_simples": self.rows.len() - simples,
                "dichotomy_holds": self.dichotomy_holds(),
            }
        })
    }
}

fn verdict_name(v: &StabilityVerdict) -> &'static str {
    match v {
        StabilityVerdict::Stable => "stable",
        StabilityVerdict::SemistableOnly { .. } => "semistable-only",
        StabilityVerdict::Unstable { .. } => "unstable",
    }
}

/// The default mirror-report family: every simple, then every thin
/// representation built from a nonzero coordinate tuple over the small
/// alphabet {0, ±1, ±2} extended by ±i where the field has i.
pub fn default_mirror_family<F: Field>(n: u32) -> Result<Vec<(String, ThinRep<F>)>> {
    let q = Arc::new(Quiver::beilinson(n)?);
    let nn = n as usize;
    let mut family: Vec<(String, ThinRep<F>)> = Vec::new();
    for v in 0..nn {
        let rep = crate::rep::Representation::simple_at(q.clone(), v)?;
        family.push((format!("simple_{v}"), ThinRep::new(rep)?));
    }
    let mut alphabet = vec![
        F::zero(),
        F::one(),
        F::from_int(-1),
        F::from_int(2),
        F::from_int(-2),
    ];
    if let Some(i) = F::imaginary_unit() {
        alphabet.push(i.clone());
        alphabet.push(i.neg());
    }
    let mut idx = vec![0usize; nn];
    loop {
        if idx.iter().any(|&k| k != 0) {
            let coords: Vec<F> = idx.iter().map(|&k| alphabet[k].clone()).collect();
            let name = format!(
                "point ({})",
                coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            family.push((name, ThinRep::from_point(q.clone(), &coords)?));
        }
        let mut pos = nn;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < alphabet.len() {
                break;
            }
            idx[pos] = 0;
        }
        if idx.iter().all(|&k| k == 0) {
            break;
        }
    }
    Ok(family)
}

/// Tests a family of thin objects on both sides of the mirror pair and
/// checks the dichotomy: simples stable on both sides, everything else
/// stable under `z` at most, and never under the mirror.
///
/// Assertion failures surface as theorem violations; the report is
/// only returned when the family behaves as the theorem predicts.
pub fn mirror_report<F: Field>(
    n: u32,
    z: &StabilityFunction,
    family: Option<Vec<(String, ThinRep<F>)>>,
) -> Result<MirrorReport> {
    let q = Arc::new(Quiver::beilinson(n)?);
    require_covers(z, &q)?;
    require_decreasing_phases(z)?;
    let mirror = z.mirror();
    let family = match family {
        Some(f) => f,
        None => default_mirror_family::<F>(n)?,
    };

    let mut rows = Vec::with_capacity(family.len());
    for (name, rep) in &family {
        let vz = z.is_stable(rep)?;
        let vm = mirror.is_stable(rep)?;
        let is_simple = rep.rep().total_dim() == 1;
        let full_support = rep.support().len() == n as usize;
        if is_simple {
            if let Some(err) = stability_violation(&format!("{name} under Z"), &vz) {
                return Err(err);
            }
            if let Some(err) = stability_violation(&format!("{name} under mirror(Z)"), &vm) {
                return Err(err);
            }
        } else {
            if full_support {
                if let Some(err) = stability_violation(&format!("{name} under Z"), &vz) {
                    return Err(err);
                }
            }
            if verdict_name(&vm) == "stable" {
                return Err(Error::TheoremViolation(format!(
                    "{name} is a non-simple object stable under mirror(Z)"
                )));
            }
        }
        let mirror_witness = match &vm {
            StabilityVerdict::Unstable { witness } => Some(witness.support.clone()),
            _ => None,
        };
        rows.push(MirrorRow {
            object: name.clone(),
            is_simple,
            verdict_under_z: verdict_name(&vz).to_string(),
            verdict_under_mirror: verdict_name(&vm).to_string(),
            mirror_witness,
        });
    }
    Ok(MirrorReport {
        n,
        z: z.clone(),
        mirror_z: mirror,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Subrep;
    use crate::scalar::GaussianRational as Qi;
    use crate::scalar::C64;
    use num::BigRational;

    fn qi(s: &str) -> Qi {
        <Qi as Field>::parse(s).unwrap()
    }

    fn point_qi(coords: &[&str]) -> ProjectivePoint<Qi> {
        ProjectivePoint::new(coords.iter().map(|s| qi(s)).collect()).unwrap()
    }

    fn point_q(coords: &[i64]) -> ProjectivePoint<BigRational> {
        ProjectivePoint::new(
            coords
                .iter()
                .map(|&c| <BigRational as Field>::from_int(c))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cubic_sample_over_q_finds_the_three_lines() {
        let pts = sample_fermat_points::<BigRational>(3, 3, 0).unwrap();
        assert_eq!(pts.len(), 3);
        for want in [
            point_q(&[1, -1, 0]),
            point_q(&[1, 0, -1]),
            point_q(&[0, 1, -1]),
        ] {
            assert!(pts.iter().any(|p| *p == want), "missing {want}");
        }
        for p in &pts {
            assert!(p.fermat_value().is_zero());
        }
    }

    #[test]
    fn cubic_sample_rejects_near_misses() {
        // 27 + 64 − 125 = −34, so [3:4:−5] stays off every chart.
        let probe = point_q(&[3, 4, -5]);
        assert!(!probe.fermat_value().is_zero());
        let pts = sample_fermat_points::<BigRational>(3, 3, 0).unwrap();
        assert!(pts.iter().all(|p| *p != probe));
    }

    #[test]
    fn cubic_sample_over_q_exhausts_beyond_the_lines() {
        // x^3 + y^3 + z^3 = 0 has no further rational points at any
        // height, so asking for more must fail loudly.
        match sample_fermat_points::<BigRational>(3, 10, 0) {
            Err(Error::SearchExhausted { height, detail }) => {
                assert_eq!(height, DEFAULT_MAX_HEIGHT);
                assert!(detail.contains("found 3 of 10"), "{detail}");
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn quartic_samples_over_exact_fields_exhaust() {
        // Positive-definiteness kills the rational quartic; the
        // Gaussian quartic has no nontrivial zeros either.
        assert!(matches!(
            sample_fermat_points::<BigRational>(4, 1, 0),
            Err(Error::SearchExhausted { .. })
        ));
        match sample_fermat_points::<Qi>(4, 1, 0) {
            Err(Error::SearchExhausted { height, .. }) => assert!(height >= 2),
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn gaussian_cubic_sample_is_exact_and_deduplicated() {
        let pts = sample_fermat_points::<Qi>(3, 3, 0).unwrap();
        assert_eq!(pts.len(), 3);
        for p in &pts {
            assert!(p.fermat_value().is_zero());
            assert_eq!(p.coords().iter().filter(|c| !c.is_zero()).count(), 2);
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            assert_ne!(pts[a], pts[b]);
        }
    }

    #[test]
    fn gaussian_quadric_uses_the_parametric_family() {
        // n=2: z^2 = -1 has the two roots ±i, giving [1:±i].
        let pts = sample_fermat_points::<Qi>(2, 2, 0).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().any(|p| *p == point_qi(&["1", "i"])));
        assert!(pts.iter().any(|p| *p == point_qi(&["1", "-i"])));
    }

    #[test]
    fn numeric_quartic_sample_sits_on_the_locus() {
        let pts = sample_fermat_points::<C64>(4, 8, 7).unwrap();
        assert_eq!(pts.len(), 8);
        for p in &pts {
            assert!(p.fermat_value().abs_f64() <= 1e-9);
        }
        let again = sample_fermat_points::<C64>(4, 8, 7).unwrap();
        assert_eq!(pts.len(), again.len());
        for (a, b) in pts.iter().zip(again.iter()) {
            assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        }
    }

    #[test]
    fn off_locus_sampler_avoids_the_locus() {
        let pts = sample_off_fermat_points::<Qi>(3, 6, 5).unwrap();
        assert_eq!(pts.len(), 6);
        for p in &pts {
            assert!(!p.fermat_value().is_zero());
        }
        let again = sample_off_fermat_points::<Qi>(3, 6, 5).unwrap();
        assert_eq!(pts, again);
    }

    #[test]
    fn pipeline_matches_the_worked_cubic_verdicts() {
        let z = StabilityFunction::standard(3).unwrap();
        let points = vec![
            point_qi(&["1", "-1", "0"]),
            point_qi(&["0", "1", "-1"]),
            point_qi(&["1", "1", "1"]),
        ];
        let chart = syz_pipeline(3, &z, &points, "explicit", None).unwrap();
        assert_eq!(chart.entries().len(), 3);
        let verdicts: Vec<(String, &str)> = chart
            .entries()
            .iter()
            .map(|e| (e.point.to_string(), e.verdict()))
            .collect();
        assert_eq!(
            verdicts,
            vec![
                ("[0:1:-1]".to_string(), "on-fermat"),
                ("[1:-1:0]".to_string(), "on-fermat"),
                ("[1:1:1]".to_string(), "zero-object"),
            ]
        );
        assert_eq!(chart.on_fermat_count(), 2);
    }

    #[test]
    fn pipeline_deduplicates_scaled_points() {
        let z = StabilityFunction::standard(3).unwrap();
        let points = vec![point_qi(&["1", "-1", "0"]), point_qi(&["2", "-2", "0"])];
        let chart = syz_pipeline(3, &z, &points, "explicit", None).unwrap();
        assert_eq!(chart.entries().len(), 1);
        assert_eq!(chart.entries()[0].point, point_qi(&["1", "-1", "0"]));
    }

    #[test]
    fn empty_chart_is_fine_and_serializes() {
        let z = StabilityFunction::standard(3).unwrap();
        let chart = syz_pipeline::<Qi>(3, &z, &[], "explicit", Some(1)).unwrap();
        assert!(chart.entries().is_empty());
        let text = chart.to_jsonl(true);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("\"provenance\""));
        assert!(lines[1].contains("\"entries\":0"));
        assert_eq!(chart.to_jsonl(false).lines().count(), 1);
    }

    #[test]
    fn chart_roundtrips_points_through_extraction() {
        let z = StabilityFunction::standard(3).unwrap();
        let points = sample_fermat_points::<Qi>(3, 3, 0).unwrap();
        let chart = syz_pipeline(3, &z, &points, "lattice", Some(0)).unwrap();
        assert_eq!(chart.entries().len(), 3);
        for e in chart.entries() {
            let back = crate::sdr::extract_point(&e.rep, &z).unwrap();
            assert_eq!(back, e.point);
            assert!(e.on_fermat);
        }
    }

    #[test]
    fn chart_entries_are_pairwise_nonisomorphic() {
        let z = StabilityFunction::standard(3).unwrap();
        let mut points = sample_fermat_points::<Qi>(3, 3, 0).unwrap();
        points.extend(sample_off_fermat_points::<Qi>(3, 3, 9).unwrap());
        let chart = syz_pipeline(3, &z, &points, "mixed", Some(0)).unwrap();
        let entries = chart.entries();
        assert_eq!(entries.len(), 6);
        for a in 0..entries.len() {
            for b in a + 1..entries.len() {
                assert!(!entries[a].rep.is_isomorphic(&entries[b].rep).unwrap());
            }
        }
    }

    #[test]
    fn chart_output_is_byte_deterministic() {
        let z = StabilityFunction::standard(3).unwrap();
        let points = sample_fermat_points::<C64>(3, 5, 42).unwrap();
        let a = syz_pipeline(3, &z, &points, "numeric", Some(42))
            .unwrap()
            .to_jsonl(true);
        let points2 = sample_fermat_points::<C64>(3, 5, 42).unwrap();
        let b = syz_pipeline(3, &z, &points2, "numeric", Some(42))
            .unwrap()
            .to_jsonl(true);
        assert_eq!(a, b);
    }

    #[test]
    fn pipeline_rejects_increasing_phases() {
        let z = StabilityFunction::standard(3).unwrap().mirror();
        let points = vec![point_qi(&["1", "-1", "0"])];
        assert!(matches!(
            syz_pipeline(3, &z, &points, "explicit", None),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn violation_mapping_is_loud_for_nonstable_verdicts() {
        let tie = Subrep { support: vec![1] };
        assert!(stability_violation("ctx", &StabilityVerdict::Stable).is_none());
        let semi = stability_violation(
            "ctx",
            &StabilityVerdict::SemistableOnly { tie: tie.clone() },
        )
        .unwrap();
        assert!(matches!(semi, Error::TheoremViolation(_)));
        let unst = stability_violation("ctx", &StabilityVerdict::Unstable { witness: tie });
        assert!(matches!(unst, Some(Error::TheoremViolation(_))));
    }

    #[test]
    fn mirror_report_default_family_obeys_the_dichotomy() {
        let z = StabilityFunction::standard(3).unwrap();
        let report = mirror_report::<Qi>(3, &z, None).unwrap();
        assert_eq!(report.rows.len(), 3 + (7usize.pow(3) - 1));
        assert!(report.dichotomy_holds());
        for row in &report.rows {
            if row.is_simple {
                assert_eq!(row.verdict_under_z, "stable");
                assert_eq!(row.verdict_under_mirror, "stable");
            } else {
                assert_eq!(row.verdict_under_z, "stable");
                assert_eq!(row.verdict_under_mirror, "unstable");
                assert!(row.mirror_witness.is_some());
            }
        }
    }

    #[test]
    fn mirror_report_matches_the_worked_examples() {
        let z = StabilityFunction::standard(3).unwrap();
        let report = mirror_report::<Qi>(3, &z, None).unwrap();
        let s2 = report
            .rows
            .iter()
            .find(|r| r.object == "simple_2")
            .unwrap();
        assert_eq!(s2.verdict_under_mirror, "stable");
        let pt = report
            .rows
            .iter()
            .find(|r| r.object == "point (1,-1,0)")
            .unwrap();
        assert_eq!(pt.verdict_under_z, "stable");
        assert_eq!(pt.verdict_under_mirror, "unstable");
        assert_eq!(pt.mirror_witness.as_deref(), Some(&[2usize][..]));
    }

    #[test]
    fn mirror_report_json_summary_counts() {
        let z = StabilityFunction::standard(3).unwrap();
        let report = mirror_report::<BigRational>(3, &z, None).unwrap();
        assert_eq!(report.rows.len(), 3 + (5usize.pow(3) - 1));
        let json = report.to_json();
        assert_eq!(json["summary"]["rows"], 127);
        assert_eq!(json["summary"]["simples"], 3);
        assert_eq!(json["summary"]["dichotomy_holds"], true);
    }

    #[test]
    fn mirror_report_accepts_a_custom_family() {
        let z = StabilityFunction::standard(4).unwrap();
        let q = Arc::new(Quiver::beilinson(4).unwrap());
        let family = vec![
            (
                "s0".to_string(),
                ThinRep::new(crate::rep::Representation::<Qi>::simple_at(q.clone(), 0).unwrap())
                    .unwrap(),
            ),
            (
                "diag".to_string(),
                ThinRep::from_point(q, &[qi("1"), qi("i"), qi("0"), qi("-2")]).unwrap(),
            ),
        ];
        let report = mirror_report(4, &z, Some(family)).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.dichotomy_holds());
        assert_eq!(report.rows[1].verdict_under_mirror, "unstable");
    }
}
