//! `fermata`: quivers with commuting relations, stability conditions,
//! framed representations, Serre-de Rham complexes, and the Fermat
//! moduli pipeline. JSON in, JSON out; exit 0 on success, 1 on domain
//! errors, 2 on usage errors, 3 when a theorem-level invariant breaks.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fermata_core::framed::{functor_f, functor_g, FramedRep};
use fermata_core::moduli::{
    default_mirror_family, mirror_report, sample_fermat_points_with, sample_off_fermat_points,
    syz_pipeline, DEFAULT_MAX_HEIGHT, DEFAULT_TUPLE_BUDGET,
};
use fermata_core::quiver::DEFAULT_MAX_TENSOR_N;
use fermata_core::sdr::{extract_point, fermat_sum, ProjectivePoint, SdrComplex};
use fermata_core::stability::walls_on_segment;
use fermata_core::{
    Charge, Error, Field, FieldTag, GaussianRational, Quiver, Rational, Representation, Result,
    StabilityFunction, StabilityVerdict, ThinRep, WallKind, C64,
};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qi")]
    Qi,
    #[value(name = "C64")]
    C64,
}

impl FieldArg {
    fn tag(self) -> FieldTag {
        match self {
            FieldArg::Q => FieldTag::Q,
            FieldArg::Qi => FieldTag::Qi,
            FieldArg::C64 => FieldTag::C64,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum QuiverArg {
    Tensor,
    Beilinson,
}

/// Run-wide configuration; validated before any computation and echoed
/// into the provenance block of composite outputs.
#[derive(Args, Debug, Clone)]
struct Config {
    /// Tensor arity / Fermat degree
    #[arg(long, global = true)]
    n: Option<u32>,

    /// Ground field for newly built objects
    #[arg(long, global = true, value_enum, default_value = "Qi", ignore_case = true)]
    field: FieldArg,

    /// Seed for every randomized stage
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance override for floating-field Fermat membership
    #[arg(long, global = true)]
    epsilon: Option<f64>,

    /// Resource bound for tensor-power quivers (|V| = n^n)
    #[arg(long, global = true)]
    max_n: Option<u32>,

    /// Write the payload to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Payload format where the command supports a choice
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Omit provenance blocks from composite outputs
    #[arg(long, global = true)]
    no_provenance: bool,
}

impl Config {
    fn validate(&self) -> std::result::Result<(), String> {
        if let Some(n) = self.n {
            if n < 2 {
                return Err(format!("--n must be at least 2, got {n}"));
            }
        }
        if let Some(eps) = self.epsilon {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(format!("--epsilon must be a positive number, got {eps}"));
            }
        }
        if let Some(m) = self.max_n {
            if m < 2 {
                return Err(format!("--max-n must be at least 2, got {m}"));
            }
        }
        Ok(())
    }

    fn require_n(&self) -> Result<u32> {
        self.n
            .ok_or_else(|| Error::InvalidParameter("this command needs --n".into()))
    }

    fn provenance(&self, strategy: &str) -> Value {
        json!({
            "n": self.n,
            "field": self.field.tag().as_str(),
            "seed": self.seed,
            "strategy": strategy,
        })
    }
}

#[derive(Parser)]
#[command(
    name = "fermata",
    version,
    about = "Quivers with commuting relations, stability conditions, and the Fermat moduli pipeline"
)]
struct Cli {
    #[command(flatten)]
    config: Config,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build tensor-power and point quivers
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Validate and construct representations
    #[command(subcommand)]
    Rep(RepCmd),
    /// Stability functions: profiles, mirrors, verdicts, walls
    #[command(subcommand)]
    Stability(StabilityCmd),
    /// Framed representations and the equivalence functors
    #[command(subcommand)]
    Framed(FramedCmd),
    /// Serre-de Rham complexes and point extraction
    #[command(subcommand)]
    Sdr(SdrCmd),
    /// Sampling, the moduli pipeline, and mirror reports
    #[command(subcommand)]
    Moduli(ModuliCmd),
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Construct a quiver and print it (JSON, or DOT with --format dot)
    Build {
        #[arg(long, value_enum, default_value = "tensor")]
        kind: QuiverArg,
    },
    /// Print the Graphviz DOT form
    ExportDot {
        #[arg(long, value_enum, default_value = "tensor")]
        kind: QuiverArg,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Check shapes and commuting relations of a representation file
    Validate {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Thin representation attached to a projective point
    FromPoint {
        /// Comma-separated coordinates, e.g. "1,-1,0" or "1/2,i,0"
        #[arg(long)]
        coords: String,
    },
}

#[derive(Subcommand)]
enum StabilityCmd {
    /// The standard decreasing-phase profile for --n (or a custom one)
    Make {
        /// JSON file with a charge array to use instead of the default
        #[arg(long, value_name = "FILE")]
        profile: Option<PathBuf>,
    },
    /// Reflect a stability function across the imaginary axis
    Mirror {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Stability verdict for a thin representation
    Check {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
    },
    /// Walls on the straight segment between two stability functions
    Walls {
        #[arg(long, value_name = "FILE")]
        z0: PathBuf,
        #[arg(long, value_name = "FILE")]
        z1: PathBuf,
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
    },
    /// Charge diagram as SVG
    PlotSvg {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
}

#[derive(Subcommand)]
enum FramedCmd {
    /// Verify the framing axioms on a framed representation file
    Check {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Rewrite with identity framings; prints the new framed rep and
    /// the comparison isomorphism
    Trivialize {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Comma-separated basepoint vertex ids, one per index class
        #[arg(long)]
        basepoints: Option<String>,
    },
    /// Point-quiver representation -> trivially framed tensor rep
    FunctorF {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Framed tensor rep -> point-quiver representation
    FunctorG {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Verify both composite identities starting from a framed rep
    Roundtrip {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
}

#[derive(Subcommand)]
enum SdrCmd {
    /// Serre-de Rham complex of a point-quiver representation
    Build {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Verify d^2 = 0 without assuming the relations hold
    Check {
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
    },
    /// Projective point of a stable full-support thin representation
    ExtractPoint {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Stability function file; defaults to the standard profile
        #[arg(long, value_name = "FILE")]
        z: Option<PathBuf>,
    },
    /// Fermat membership of a projective point, e.g. "1:-1:0"
    Fermat {
        #[arg(long)]
        point: String,
    },
}

#[derive(Subcommand)]
enum ModuliCmd {
    /// Sample projective points on (or off) the Fermat locus
    Sample {
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Sample controls off the locus instead
        #[arg(long)]
        off_locus: bool,
        /// Height bound for the exact lattice search
        #[arg(long)]
        max_height: Option<u32>,
    },
    /// Full chart: sample, build reps, verify stability, classify
    Pipeline {
        /// On-locus points to sample when --points is not given
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// JSON file with an array of point strings to use instead
        #[arg(long, value_name = "FILE")]
        points: Option<PathBuf>,
        /// Fraction of the chart reserved for off-locus controls
        #[arg(long, default_value_t = 0.25)]
        control_fraction: f64,
        /// Height bound for the exact lattice search
        #[arg(long)]
        max_height: Option<u32>,
    },
    /// Verdict table for the default family on both sides of the mirror
    MirrorReport,
}

enum Payload {
    Json(Value),
    Text(String),
}

struct Output {
    payload: Payload,
    code: u8,
}

impl Output {
    fn json(v: Value) -> Self {
        Output {
            payload: Payload::Json(v),
            code: 0,
        }
    }

    fn text(s: String) -> Self {
        Output {
            payload: Payload::Text(s),
            code: 0,
        }
    }

    fn failed_json(v: Value) -> Self {
        Output {
            payload: Payload::Json(v),
            code: 1,
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Json(format!("{} is not valid JSON: {e}", path.display())))
}

fn field_tag_of(v: &Value) -> Result<FieldTag> {
    match v.get("field").and_then(Value::as_str) {
        Some("Q") => Ok(FieldTag::Q),
        Some("Qi") => Ok(FieldTag::Qi),
        Some("C64") => Ok(FieldTag::C64),
        Some(other) => Err(Error::Json(format!("unknown field tag {other:?}"))),
        None => Err(Error::Json("missing \"field\" tag".into())),
    }
}

macro_rules! dispatch {
    ($tag:expr, $fun:ident($($args:expr),* $(,)?)) => {
        match $tag {
            FieldTag::Q => $fun::<Rational>($($args),*),
            FieldTag::Qi => $fun::<GaussianRational>($($args),*),
            FieldTag::C64 => $fun::<C64>($($args),*),
        }
    };
}

fn parse_coords<F: Field>(spec: &str) -> Result<Vec<F>> {
    spec.split(',')
        .map(|part| F::parse(part.trim()))
        .collect::<Result<Vec<F>>>()
}

fn parse_charges(v: &Value) -> Result<Vec<Charge>> {
    let arr = match v {
        Value::Array(a) => a.as_slice(),
        Value::Object(o) => o
            .get("charges")
            .and_then(Value::as_array)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Json("expected a charge array or a \"charges\" key".into()))?,
        _ => return Err(Error::Json("expected a charge array".into())),
    };
    arr.iter()
        .map(<GaussianRational as Field>::from_json)
        .collect()
}

fn verdict_json(verdict: &StabilityVerdict) -> Value {
    match verdict {
        StabilityVerdict::Stable => json!({"verdict": "stable"}),
        StabilityVerdict::SemistableOnly { tie } => {
            json!({"verdict": "semistable-only", "tie": tie.support})
        }
        StabilityVerdict::Unstable { witness } => {
            json!({"verdict": "unstable", "witness": witness.support})
        }
    }
}

fn build_quiver(config: &Config, kind: QuiverArg) -> Result<Quiver> {
    let n = config.require_n()?;
    match kind {
        QuiverArg::Tensor => {
            Quiver::tensor_power_with_limit(n, config.max_n.unwrap_or(DEFAULT_MAX_TENSOR_N))
        }
        QuiverArg::Beilinson => Quiver::beilinson(n),
    }
}

fn run_rep_validate<F: Field>(v: &Value) -> Result<Output> {
    let rep = Representation::<F>::from_json(v)?;
    match rep.validate() {
        Ok(()) => Ok(Output::json(json!({
            "valid": true,
            "dims": rep.dims(),
            "support": rep.support(),
        }))),
        Err(report) => Ok(Output::failed_json(json!({
            "valid": false,
            "report": report.to_string(),
        }))),
    }
}

fn run_rep_from_point<F: Field>(config: &Config, coords: &str) -> Result<Output> {
    let n = config.require_n()?;
    let q = std::sync::Arc::new(Quiver::beilinson(n)?);
    let coords = parse_coords::<F>(coords)?;
    let rep = ThinRep::from_point(q, &coords)?;
    Ok(Output::json(rep.rep().to_json()))
}

fn run_stability_check<F: Field>(z: &StabilityFunction, rep_v: &Value) -> Result<Output> {
    let rep = ThinRep::new(Representation::<F>::from_json(rep_v)?)?;
    Ok(Output::json(verdict_json(&z.is_stable(&rep)?)))
}

fn run_walls<F: Field>(
    z0: &StabilityFunction,
    z1: &StabilityFunction,
    rep_v: &Value,
) -> Result<Output> {
    let rep = ThinRep::new(Representation::<F>::from_json(rep_v)?)?;
    let walls = walls_on_segment(z0, z1, &rep)?;
    let rows: Vec<Value> = walls
        .iter()
        .map(|w| {
            json!({
                "t": w.t.to_json(),
                "t_f64": w.t_f64,
                "witness": w.witness.support,
                "kind": match w.kind {
                    WallKind::Crossing => "crossing",
                    WallKind::Tangent => "tangent",
                },
            })
        })
        .collect();
    Ok(Output::json(json!({"walls": rows})))
}

fn run_framed_check<F: Field>(v: &Value) -> Result<Output> {
    let fr = FramedRep::<F>::from_json(v)?;
    fr.check()?;
    Ok(Output::json(json!({"ok": true})))
}

fn run_framed_trivialize<F: Field>(v: &Value, basepoints: Option<&[usize]>) -> Result<Output> {
    let fr = FramedRep::<F>::from_json(v)?;
    let (triv, t) = fr.trivialize(basepoints)?;
    let mats: Vec<Value> = t.mats.iter().map(|m| m.to_json()).collect();
    Ok(Output::json(json!({
        "framed": triv.to_json(),
        "morphism": {"mats": mats},
    })))
}

fn run_functor_f<F: Field>(v: &Value) -> Result<Output> {
    let rep = Representation::<F>::from_json(v)?;
    Ok(Output::json(functor_f(&rep)?.to_json()))
}

fn run_functor_g<F: Field>(v: &Value) -> Result<Output> {
    let fr = FramedRep::<F>::from_json(v)?;
    Ok(Output::json(functor_g(&fr)?.to_json()))
}

fn run_framed_roundtrip<F: Field>(v: &Value) -> Result<Output> {
    let fr = FramedRep::<F>::from_json(v)?;
    fr.check()?;
    let g = functor_g(&fr)?;
    let g_after_f = functor_g(&functor_f(&g)?)? == g;
    let (triv, t) = fr.trivialize(None)?;
    let fg = functor_f(&g)?;
    let f_after_g = fg.rep() == triv.rep();
    let iso = t.check(&fr, &fg).is_ok() && t.is_isomorphism(&fr, &fg);
    if !(g_after_f && f_after_g && iso) {
        return Err(Error::TheoremViolation(format!(
            "equivalence identities failed: G(F(E))=E {g_after_f}, F(G(fr))=trivialize(fr) {f_after_g}, comparison isomorphism {iso}"
        )));
    }
    Ok(Output::json(json!({
        "g_after_f_identity": true,
        "f_after_g_matches_trivialization": true,
        "comparison_is_isomorphism": true,
    })))
}

fn run_sdr_build<F: Field>(v: &Value) -> Result<Output> {
    let rep = Representation::<F>::from_json(v)?;
    Ok(Output::json(SdrComplex::build(&rep)?.to_json()))
}

fn run_sdr_check<F: Field>(v: &Value) -> Result<Output> {
    let rep = Representation::<F>::from_json(v)?;
    let complex = SdrComplex::from_rep_unchecked(&rep)?;
    match complex.check() {
        Ok(()) => Ok(Output::json(json!({"ok": true, "dims": complex.dims()}))),
        Err(report) => {
            eprintln!("d^2 != 0:\n{report}");
            let failures: Vec<Value> = report
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "level": f.level,
                        "row": f.row,
                        "col": f.col,
                        "labels": [f.labels.0, f.labels.1],
                    })
                })
                .collect();
            Ok(Output::failed_json(json!({
                "ok": false,
                "failures": failures,
            })))
        }
    }
}

fn run_extract_point<F: Field>(v: &Value, z: &StabilityFunction) -> Result<Output> {
    let rep = ThinRep::new(Representation::<F>::from_json(v)?)?;
    let p = extract_point(&rep, z)?;
    Ok(Output::json(json!({
        "point": p.to_string(),
        "coords": p.to_json(),
        "fermat": p.fermat_value().to_json(),
        "on_fermat": p.is_on_fermat(),
    })))
}

fn run_fermat<F: Field>(config: &Config, spec: &str) -> Result<Output> {
    let p = ProjectivePoint::<F>::parse(spec)?;
    let value = fermat_sum(p.coords());
    let on = match (config.epsilon, F::TAG) {
        (Some(eps), FieldTag::C64) => value.abs_f64() <= eps,
        _ => p.is_on_fermat(),
    };
    Ok(Output::json(json!({
        "point": p.to_string(),
        "fermat": value.to_json(),
        "on_fermat": on,
    })))
}

fn run_moduli_sample<F: Field>(
    config: &Config,
    count: usize,
    off_locus: bool,
    max_height: Option<u32>,
) -> Result<Output> {
    let n = config.require_n()?;
    let points = if off_locus {
        sample_off_fermat_points::<F>(n, count, config.seed)?
    } else {
        sample_fermat_points_with::<F>(
            n,
            count,
            config.seed,
            max_height.unwrap_or(DEFAULT_MAX_HEIGHT),
            DEFAULT_TUPLE_BUDGET,
        )?
    };
    let rows: Vec<Value> = points
        .iter()
        .map(|p| json!({"point": p.to_string(), "coords": p.to_json()}))
        .collect();
    let mut payload = json!({"points": rows});
    if !config.no_provenance {
        let strategy = if off_locus { "off-locus" } else { "on-locus" };
        payload["provenance"] = config.provenance(strategy);
    }
    Ok(Output::json(payload))
}

fn run_moduli_pipeline<F: Field>(
    config: &Config,
    count: usize,
    points_file: Option<&Path>,
    control_fraction: f64,
    max_height: Option<u32>,
) -> Result<Output> {
    let n = config.require_n()?;
    if !(0.0..1.0).contains(&control_fraction) {
        return Err(Error::InvalidParameter(format!(
            "--control-fraction must lie in [0, 1), got {control_fraction}"
        )));
    }
    let z = StabilityFunction::standard(n)?;
    let (points, strategy) = match points_file {
        Some(path) => {
            let v = read_json(path)?;
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Json("points file must hold a JSON array".into()))?;
            let pts = arr
                .iter()
                .map(|entry| {
                    entry
                        .as_str()
                        .ok_or_else(|| {
                            Error::Json("points file entries must be strings like \"1:-1:0\"".into())
                        })
                        .and_then(ProjectivePoint::<F>::parse)
                })
                .collect::<Result<Vec<_>>>()?;
            (pts, "explicit".to_string())
        }
        None => {
            let mut pts = sample_fermat_points_with::<F>(
                n,
                count,
                config.seed,
                max_height.unwrap_or(DEFAULT_MAX_HEIGHT),
                DEFAULT_TUPLE_BUDGET,
            )?;
            let controls = ((count as f64) * control_fraction / (1.0 - control_fraction)).ceil()
                as usize;
            if controls > 0 {
                pts.extend(sample_off_fermat_points::<F>(n, controls, config.seed + 1)?);
            }
            (pts, format!("sampled+{controls}-controls", controls = controls))
        }
    };
    let chart = syz_pipeline(n, &z, &points, &strategy, Some(config.seed))?;
    Ok(Output::text(chart.to_jsonl(!config.no_provenance)))
}

fn run_mirror_report<F: Field>(config: &Config) -> Result<Output> {
    let n = config.require_n()?;
    let z = StabilityFunction::standard(n)?;
    let family = default_mirror_family::<F>(n)?;
    let report = mirror_report(n, &z, Some(family))?;
    let mut payload = report.to_json();
    if !config.no_provenance {
        payload["provenance"] = config.provenance("default-family");
    }
    Ok(Output::json(payload))
}

fn load_z(path: &Path) -> Result<StabilityFunction> {
    StabilityFunction::from_json(&read_json(path)?)
}

fn run(cli: &Cli) -> Result<Output> {
    let config = &cli.config;
    match &cli.command {
        Cmd::Quiver(cmd) => match cmd {
            QuiverCmd::Build { kind } => {
                let q = build_quiver(config, *kind)?;
                match config.format {
                    Format::Dot => Ok(Output::text(q.to_dot())),
                    _ => Ok(Output::json(q.to_json())),
                }
            }
            QuiverCmd::ExportDot { kind } => {
                Ok(Output::text(build_quiver(config, *kind)?.to_dot()))
            }
        },
        Cmd::Rep(cmd) => match cmd {
            RepCmd::Validate { r#in } => {
                let v = read_json(r#in)?;
                dispatch!(field_tag_of(&v)?, run_rep_validate(&v))
            }
            RepCmd::FromPoint { coords } => {
                dispatch!(config.field.tag(), run_rep_from_point(config, coords))
            }
        },
        Cmd::Stability(cmd) => match cmd {
            StabilityCmd::Make { profile } => {
                let n = config.require_n()?;
                let charges = match profile {
                    Some(path) => Some(parse_charges(&read_json(path)?)?),
                    None => None,
                };
                Ok(Output::json(StabilityFunction::make(n, charges)?.to_json()))
            }
            StabilityCmd::Mirror { r#in } => {
                Ok(Output::json(load_z(r#in)?.mirror().to_json()))
            }
            StabilityCmd::Check { r#in, rep } => {
                let z = load_z(r#in)?;
                let v = read_json(rep)?;
                dispatch!(field_tag_of(&v)?, run_stability_check(&z, &v))
            }
            StabilityCmd::Walls { z0, z1, rep } => {
                let z0 = load_z(z0)?;
                let z1 = load_z(z1)?;
                let v = read_json(rep)?;
                dispatch!(field_tag_of(&v)?, run_walls(&z0, &z1, &v))
            }
            StabilityCmd::PlotSvg { r#in } => Ok(Output::text(load_z(r#in)?.plot_svg())),
        },
        Cmd::Framed(cmd) => match cmd {
            FramedCmd::Check { r#in } => {
                let v = read_json(r#in)?;
                dispatch!(field_tag_of(&v)?, run_framed_check(&v))
            }
            FramedCmd::Trivialize { r#in, basepoints } => {
                let v = read_json(r#in)?;
                let base: Option<Vec<usize>> = match basepoints {
                    Some(spec) => Some(
                        spec.split(',')
                            .map(|p| {
                                p.trim().parse::<usize>().map_err(|e| {
                                    Error::InvalidParameter(format!(
                                        "bad basepoint {p:?}: {e}"
                                    ))
                                })
                            })
                            .collect::<Result<Vec<usize>>>()?,
                    ),
                    None => None,
                };
                dispatch!(
                    field_tag_of(&v)?,
                    run_framed_trivialize(&v, base.as_deref())
                )
            }
            FramedCmd::FunctorF { r#in } => {
                let v = read_json(r#in)?;
                dispatch!(field_tag_of(&v)?, run_functor_f(&v))
            }
            FramedCmd::FunctorG { r#in } => {
                let v = read_json(r#in)?;
                dispatch!(field_tag_of(&v)?, run_functor_g(&v))
            }
            FramedCmd::Roundtrip { r#in } => {
                let v = read_json(r#in)?;
                dispatch!(field_tag_of(&v)?, run_framed_roundtrip(&v))
            }
        },
        Cmd::Sdr(cmd) => match cmd {
            SdrCmd::Build { r#in } => {
                let v = read_json(r#in)?;
                dispatch!(field_tag_of(&v)?, run_sdr_build(&v))
            }
            SdrCmd::Check { rep } => {
                let v = read_json(rep)?;
                dispatch!(field_tag_of(&v)?, run_sdr_check(&v))
            }
            SdrCmd::ExtractPoint { r#in, z } => {
                let v = read_json(r#in)?;
                let z = match z {
                    Some(path) => load_z(path)?,
                    None => {
                        let n = v
                            .get("quiver")
                            .and_then(|q| q.get("n"))
                            .and_then(Value::as_u64)
                            .map(|m| m as u32)
                            .or(config.n)
                            .ok_or_else(|| {
                                Error::InvalidParameter(
                                    "cannot infer n; pass --n or --z".into(),
                                )
                            })?;
                        StabilityFunction::standard(n)?
                    }
                };
                dispatch!(field_tag_of(&v)?, run_extract_point(&v, &z))
            }
            SdrCmd::Fermat { point } => {
                dispatch!(config.field.tag(), run_fermat(config, point))
            }
        },
        Cmd::Moduli(cmd) => match cmd {
            ModuliCmd::Sample {
                count,
                off_locus,
                max_height,
            } => dispatch!(
                config.field.tag(),
                run_moduli_sample(config, *count, *off_locus, *max_height)
            ),
            ModuliCmd::Pipeline {
                count,
                points,
                control_fraction,
                max_height,
            } => dispatch!(
                config.field.tag(),
                run_moduli_pipeline(
                    config,
                    *count,
                    points.as_deref(),
                    *control_fraction,
                    *max_height
                )
            ),
            ModuliCmd::MirrorReport => {
                dispatch!(config.field.tag(), run_mirror_report(config))
            }
        },
    }
}

fn emit(config: &Config, payload: &Payload) -> std::io::Result<()> {
    let text = match payload {
        Payload::Json(v) => {
            let mut s = v.to_string();
            s.push('\n');
            s
        }
        Payload::Text(t) => {
            let mut t = t.clone();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
    };
    match &config.out {
        Some(path) => {
            fs::write(path, text)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// Subcommands that cannot run without --n (others read n from input files).
fn needs_n(cmd: &Cmd) -> bool {
    matches!(
        cmd,
        Cmd::Quiver(_)
            | Cmd::Rep(RepCmd::FromPoint { .. })
            | Cmd::Stability(StabilityCmd::Make { .. })
            | Cmd::Moduli(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = cli.config.validate() {
        eprintln!("usage error: {msg}");
        return ExitCode::from(2);
    }
    if needs_n(&cli.command) && cli.config.n.is_none() {
        eprintln!("usage error: this command needs --n");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(output) => {
            if emit(&cli.config, &output.payload).is_err() {
                eprintln!("error: cannot write output");
                return ExitCode::from(1);
            }
            ExitCode::from(output.code)
        }
        Err(err) => {
            eprintln!("error[{}]: {err}", err.kind());
            println!(
                "{}",
                json!({"error": {"kind": err.kind(), "message": err.to_string()}})
            );
            ExitCode::from(if err.is_theorem_violation() { 3 } else { 1 })
        }
    }
}
