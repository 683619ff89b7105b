//! Stability functions with charges in the strict upper half-plane,
//! constant on index classes; the mirror involution Z -> -conj(Z);
//! stability verdicts for thin representations; and exact wall
//! detection along linear segments between two stability functions.
//!
//! Phases are never compared through floating point: for charges z, w
//! in the upper half-plane, phase(z) < phase(w) exactly when
//! Im(conj(z) w) > 0, a sign of an exact rational.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::rep::{Representation, Subrep, ThinRep};
use crate::scalar::{Field, GaussianRational};
use crate::surd::{eval_quadratic, Surd};

/// Central charges are exact Gaussian rationals.
pub type Charge = GaussianRational;

/// Im(conj(a) b): positive exactly when b sits counterclockwise from a
/// (phases in (0, pi)).
pub fn cross(a: &Charge, b: &Charge) -> BigRational {
    &a.re * &b.im - &a.im * &b.re
}

/// Re(conj(a) b).
pub fn dot(a: &Charge, b: &Charge) -> BigRational {
    &a.re * &b.re + &a.im * &b.im
}

/// Exact phase comparison for upper-half-plane charges.
pub fn phase_cmp(a: &Charge, b: &Charge) -> Ordering {
    let c = cross(a, b);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// arg(z)/pi as a double, in (0,1) for upper-half-plane charges.
pub fn phase_f64(z: &Charge) -> f64 {
    let (re, im) = z.to_f64_pair();
    im.atan2(re) / std::f64::consts::PI
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityFunction {
    n: u32,
    charges: Vec<Charge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    /// Some subobject phase ties the total phase and none exceeds it.
    SemistableOnly { tie: Subrep },
    /// A maximal-phase proper subobject witnessing instability.
    Unstable { witness: Subrep },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallKind {
    /// Simple root: the witness comparison changes sign across t.
    Crossing,
    /// Double root: phases touch without exchanging order.
    Tangent,
}

#[derive(Debug, Clone)]
pub struct Wall {
    pub t: Surd,
    pub t_f64: f64,
    pub witness: Subrep,
    pub kind: WallKind,
}

fn rational_of(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact point on the unit circle with tan(theta/2) = u.
fn circle_point(u: BigRational) -> Charge {
    let u2 = &u * &u;
    let one: BigRational = One::one();
    let denom = &one + &u2;
    Charge::new((&one - &u2) / &denom, (&u + &u) / denom)
}

impl StabilityFunction {
    /// Default profile: charge k on the unit circle at phase
    /// (N+1-k)/(N+2), N = n(n-1), realized exactly through the
    /// rational parametrization ((1-u^2)/(1+u^2), 2u/(1+u^2)) with u
    /// the half-angle tangent rounded to the 1e-6 grid. Rounding
    /// preserves strict phase monotonicity because consecutive u gaps
    /// far exceed the grid.
    pub fn standard(n: u32) -> Result<StabilityFunction> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
        }
        let count = n * (n - 1) + 1;
        let mut charges = Vec::with_capacity(count as usize);
        for k in 0..count {
            let frac = (count - k) as f64 / (count + 1) as f64;
            let u = (std::f64::consts::PI * frac / 2.0).tan();
            let grid = (u * 1e6).round() as i64;
            charges.push(circle_point(rational_of(grid, 1_000_000)));
        }
        validate_profile(&charges)?;
        Ok(StabilityFunction { n, charges })
    }

    /// `standard(n)` when no profile is given; a caller profile must
    /// have length n(n-1)+1 with Im > 0 and strictly decreasing phases.
    pub fn make(n: u32, profile: Option<Vec<Charge>>) -> Result<StabilityFunction> {
        match profile {
            None => StabilityFunction::standard(n),
            Some(charges) => {
                if n < 2 {
                    return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
                }
                let expected = (n * (n - 1) + 1) as usize;
                if charges.len() != expected {
                    return Err(Error::InvalidStabilityFunction(format!(
                        "profile has {} charges, expected {expected}",
                        charges.len()
                    )));
                }
                validate_profile(&charges)?;
                Ok(StabilityFunction { n, charges })
            }
        }
    }

    /// General constructor: any nonempty upper-half-plane assignment,
    /// one charge per index class starting at 0. Phase monotonicity is
    /// not required here; `make` is the monotone entry point.
    pub fn from_charges(n: u32, charges: Vec<Charge>) -> Result<StabilityFunction> {
        if charges.is_empty() {
            return Err(Error::InvalidStabilityFunction("no charges".into()));
        }
        for (k, z) in charges.iter().enumerate() {
            if !z.im.is_positive() {
                return Err(Error::InvalidStabilityFunction(format!(
                    "Im(Z_{k}) must be strictly positive, got {z}"
                )));
            }
        }
        Ok(StabilityFunction { n, charges })
    }

    /// Builds the per-index function from a per-vertex charge file,
    /// requiring constancy on index classes (framed invariance) and
    /// upper-half-plane values.
    pub fn from_vertex_charges(
        q: &Quiver,
        charges: &BTreeMap<String, Charge>,
    ) -> Result<StabilityFunction> {
        let mut per_index: Vec<Option<Charge>> = vec![None; q.max_index() as usize + 1];
        for (vi, v) in q.vertices().iter().enumerate() {
            let name = v.to_string();
            let z = charges
                .get(&name)
                .ok_or_else(|| Error::NotFound(format!("no charge for vertex {name}")))?;
            let k = q.vertex(vi).index() as usize;
            match &per_index[k] {
                None => per_index[k] = Some(z.clone()),
                Some(existing) if existing == z => {}
                Some(existing) => {
                    return Err(Error::InvalidStabilityFunction(format!(
                        "index class {k} has differing charges {existing} and {z}; \
                         the assignment is not framed-invariant"
                    )));
                }
            }
        }
        let flat: Vec<Charge> = per_index.into_iter().map(|z| z.expect("class")).collect();
        StabilityFunction::from_charges(q.n(), flat)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn charges(&self) -> &[Charge] {
        &self.charges
    }

    pub fn charge(&self, index: u32) -> &Charge {
        &self.charges[index as usize]
    }

    pub fn max_index(&self) -> u32 {
        self.charges.len() as u32 - 1
    }

    /// Z -> -conj(Z). Total because charges live strictly above the
    /// real axis; phases map to 1 - phase, reversing the index order.
    pub fn mirror(&self) -> StabilityFunction {
        StabilityFunction {
            n: self.n,
            charges: self
                .charges
                .iter()
                .map(|z| Charge::new(-&z.re, z.im.clone()))
                .collect(),
        }
    }

    /// Constancy on index classes is structural here; this answers
    /// whether the function covers the quiver's index range.
    pub fn is_framed_invariant(&self, q: &Quiver) -> bool {
        q.max_index() <= self.max_index()
    }

    fn check_covers(&self, q: &Quiver) -> Result<()> {
        if q.max_index() > self.max_index() {
            return Err(Error::Incompatible(format!(
                "stability function covers indices up to {}, quiver needs {}",
                self.max_index(),
                q.max_index()
            )));
        }
        Ok(())
    }

    /// Sum of dims[v] * Z_index(v); undefined on the zero object.
    pub fn central_charge<F: Field>(&self, rep: &Representation<F>) -> Result<Charge> {
        if rep.is_zero_object() {
            return Err(Error::ZeroObject);
        }
        self.check_covers(rep.quiver())?;
        let mut total = Charge::zero();
        for (vi, &d) in rep.dims().iter().enumerate() {
            if d == 0 {
                continue;
            }
            let z = self.charge(rep.quiver().vertex(vi).index());
            let scale = BigRational::from(BigInt::from(d as i64));
            total = &total + &Charge::new(&z.re * &scale, &z.im * &scale);
        }
        Ok(total)
    }

    /// Charge of a thin subobject given by its support.
    pub fn charge_of_support(&self, q: &Quiver, support: &[usize]) -> Result<Charge> {
        if support.is_empty() {
            return Err(Error::ZeroObject);
        }
        self.check_covers(q)?;
        let mut total = Charge::zero();
        for &vi in support {
            total = &total + self.charge(q.vertex(vi).index());
        }
        Ok(total)
    }

    /// Stable when every proper nonzero subobject has strictly smaller
    /// phase; the returned witness or tie is a maximal-phase subobject.
    pub fn is_stable<F: Field>(&self, rep: &ThinRep<F>) -> Result<StabilityVerdict> {
        if let Err(report) = rep.rep().validate() {
            return Err(Error::RelationsViolated { report });
        }
        if rep.rep().is_zero_object() {
            return Err(Error::ZeroObject);
        }
        let q = rep.rep().quiver().clone();
        let total = self.charge_of_support(&q, &rep.support())?;
        let mut best: Option<(Charge, Subrep)> = None;
        for sub in rep.proper_nonzero_subreps()? {
            let z = self.charge_of_support(&q, &sub.support)?;
            let better = match &best {
                None => true,
                Some((bz, _)) => phase_cmp(&z, bz) == Ordering::Greater,
            };
            if better {
                best = Some((z, sub));
            }
        }
        Ok(match best {
            None => StabilityVerdict::Stable,
            Some((z, sub)) => match phase_cmp(&z, &total) {
                Ordering::Less => StabilityVerdict::Stable,
                Ordering::Equal => StabilityVerdict::SemistableOnly { tie: sub },
                Ordering::Greater => StabilityVerdict::Unstable { witness: sub },
            },
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "charges": self.charges.iter().map(Field::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<StabilityFunction> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("stability: missing \"n\"".into()))? as u32;
        let charges = v
            .get("charges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("stability: missing \"charges\"".into()))?
            .iter()
            .map(Charge::from_json)
            .collect::<Result<Vec<_>>>()?;
        StabilityFunction::from_charges(n, charges)
    }

    /// Scatter of the charges in the upper half-plane, one dot per
    /// index class, with the unit semicircle for reference.
    pub fn plot_svg(&self) -> String {
        let width = 480.0;
        let height = 300.0;
        let x = |re: f64| 20.0 + (re + 1.25) / 2.5 * (width - 40.0);
        let y = |im: f64| height - 30.0 - im / 1.25 * (height - 60.0);
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
        ));
        svg.push_str(&format!(
            "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
        ));
        svg.push_str(&format!(
            "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#999\"/>\n",
            x(-1.25),
            y(0.0),
            x(1.25),
            y(0.0)
        ));
        svg.push_str(&format!(
            "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#999\"/>\n",
            x(0.0),
            y(0.0),
            x(0.0),
            y(1.25)
        ));
        svg.push_str(&format!(
            "  <path d=\"M {:.1} {:.1} A {:.1} {:.1} 0 0 1 {:.1} {:.1}\" fill=\"none\" stroke=\"#ccc\"/>\n",
            x(-1.0),
            y(0.0),
            x(1.0) - x(0.0),
            y(0.0) - y(1.0),
            x(1.0),
            y(0.0)
        ));
        for (k, z) in self.charges.iter().enumerate() {
            let (re, im) = z.to_f64_pair();
            svg.push_str(&format!(
                "  <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3.5\" fill=\"#1f77b4\"/>\n",
                x(re),
                y(im)
            ));
            svg.push_str(&format!(
                "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\" fill=\"#333\">{k}</text>\n",
                x(re) + 5.0,
                y(im) - 5.0
            ));
        }
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"16\" font-size=\"12\" fill=\"#333\">n = {}, {} index classes</text>\n",
            20.0,
            self.n,
            self.charges.len()
        ));
        svg.push_str("</svg>\n");
        svg
    }
}

fn validate_profile(charges: &[Charge]) -> Result<()> {
    for (k, z) in charges.iter().enumerate() {
        if !z.im.is_positive() {
            return Err(Error::InvalidStabilityFunction(format!(
                "Im(Z_{k}) must be strictly positive, got {z}"
            )));
        }
    }
    for k in 0..charges.len().saturating_sub(1) {
        if phase_cmp(&charges[k], &charges[k + 1]) != Ordering::Greater {
            return Err(Error::InvalidStabilityFunction(format!(
                "phases must strictly decrease: phase(Z_{}) <= phase(Z_{})",
                k,
                k + 1
            )));
        }
    }
    Ok(())
}

/// Coefficients [c0, c1, c2] of the wall equation
/// Im(Z_t(sub) conj(Z_t(rep))) = c0 + c1 t + c2 t^2 along
/// Z_t = (1-t) Z0 + t Z1, plus the matching real-part coefficients
/// used for the Re > 0 side condition.
pub fn wall_quadratic<F: Field>(
    z0: &StabilityFunction,
    z1: &StabilityFunction,
    rep: &ThinRep<F>,
    sub: &Subrep,
) -> Result<([BigRational; 3], [BigRational; 3])> {
    let q = rep.rep().quiver().clone();
    let support = rep.support();
    let e0 = z0.charge_of_support(&q, &support)?;
    let e1 = z1.charge_of_support(&q, &support)?;
    let a0 = z0.charge_of_support(&q, &sub.support)?;
    let a1 = z1.charge_of_support(&q, &sub.support)?;
    let ed = &e1 - &e0;
    let ad = &a1 - &a0;
    let f = [
        cross(&e0, &a0),
        &cross(&e0, &ad) + &cross(&ed, &a0),
        cross(&ed, &ad),
    ];
    let g = [
        dot(&e0, &a0),
        &dot(&e0, &ad) + &dot(&ed, &a0),
        dot(&ed, &ad),
    ];
    Ok((f, g))
}

/// Real roots of c0 + c1 t + c2 t^2, each tagged by whether the sign
/// changes there. An identically zero polynomial yields no isolated
/// roots and returns empty.
pub(crate) fn solve_wall_quadratic(c: &[BigRational; 3]) -> Vec<(Surd, WallKind)> {
    let zero = rational_of(0, 1);
    if c[2] == zero {
        if c[1] == zero {
            return Vec::new();
        }
        let root = -&c[0] / &c[1];
        return vec![(Surd::rational(root), WallKind::Crossing)];
    }
    let disc = &c[1] * &c[1] - &(&c[0] * &c[2]) * &BigRational::from(BigInt::from(4));
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a = &c[2] + &c[2];
    let p = -&c[1] / &two_a;
    if disc == zero {
        return vec![(Surd::rational(p), WallKind::Tangent)];
    }
    let qcoef = rational_of(1, 1) / &two_a;
    let r1 = Surd::new(p.clone(), -&qcoef, disc.clone());
    let r2 = Surd::new(p, qcoef, disc);
    let mut roots = vec![(r1, WallKind::Crossing), (r2, WallKind::Crossing)];
    roots.sort_by(|a, b| a.0.cmp_exact(&b.0));
    roots
}

/// All t in the open interval (0,1) where some proper nonzero
/// subobject's phase meets the total phase along the linear segment
/// from `z0` to `z1`, solved exactly. Crossing walls flip the witness
/// comparison; tangent walls touch without flipping.
pub fn walls_on_segment<F: Field>(
    z0: &StabilityFunction,
    z1: &StabilityFunction,
    rep: &ThinRep<F>,
) -> Result<Vec<Wall>> {
    if z0.max_index() != z1.max_index() {
        return Err(Error::Incompatible(
            "segment endpoints cover different index ranges".into(),
        ));
    }
    if let Err(report) = rep.rep().validate() {
        return Err(Error::RelationsViolated { report });
    }
    if rep.rep().is_zero_object() {
        return Err(Error::ZeroObject);
    }
    let zero = Surd::rational(rational_of(0, 1));
    let one = Surd::rational(rational_of(1, 1));
    let mut walls = Vec::new();
    for sub in rep.proper_nonzero_subreps()? {
        let (f, g) = wall_quadratic(z0, z1, rep, &sub)?;
        for (root, kind) in solve_wall_quadratic(&f) {
            if root.cmp_exact(&zero) != Ordering::Greater
                || root.cmp_exact(&one) != Ordering::Less
            {
                continue;
            }
            if eval_quadratic(&g, &root).sign() != 1 {
                continue;
            }
            let t_f64 = root.to_f64();
            walls.push(Wall {
                t: root,
                t_f64,
                witness: sub.clone(),
                kind,
            });
        }
    }
    walls.sort_by(|a, b| {
        a.t.cmp_exact(&b.t)
            .then_with(|| a.witness.support.cmp(&b.witness.support))
    });
    Ok(walls)
}
