//! Quivers with commuting relations, their representations, stability
//! conditions with a mirror involution, framed-invariant
//! representations, Serre-de Rham complexes over an anticommuting
//! symbol algebra, and a pipeline identifying stable thin
//! representations with points of the Fermat hypersurface.

pub mod error;
pub mod framed;
pub mod matrix;
pub mod moduli;
pub mod quiver;
pub mod rep;
pub mod scalar;
pub mod sdr;
pub mod stability;
pub mod surd;
pub mod testdata;

pub use error::{Error, Result};
pub use framed::{functor_f, functor_g, FramedMorphism, FramedRep};
pub use matrix::Mat;
pub use moduli::{
    mirror_report, sample_fermat_points, sample_off_fermat_points, syz_pipeline, MirrorReport,
    ModuliChart,
};
pub use quiver::{Quiver, QuiverKind, Vertex};
pub use rep::{Representation, Subrep, ThinRep};
pub use scalar::{C64, Field, FieldTag, GaussianRational, Rational};
pub use sdr::{
    classify_support, extract_point, ProjectivePoint, SdrComplex, SupportClass,
};
pub use stability::{Charge, StabilityFunction, StabilityVerdict, Wall, WallKind};
pub use surd::Surd;
