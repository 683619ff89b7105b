//! Seeded generators for exercising the library at scale: scalars,
//! invertible matrices, representations with prescribed structure, and
//! dressed framed representations. Everything is deterministic in the
//! seed so failures replay exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::framed::{FramedMorphism, FramedRep};
use crate::matrix::Mat;
use crate::quiver::Quiver;
use crate::rep::{Representation, ThinRep};
use crate::scalar::Field;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero_scalar<F: Field>(rng: &mut ChaCha8Rng) -> F {
    loop {
        let x = F::random(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Unit lower-triangular times nonzero diagonal times unit
/// upper-triangular: invertible by construction.
pub fn invertible_mat<F: Field>(rng: &mut ChaCha8Rng, dim: usize) -> Mat<F> {
    let mut lower = Mat::identity(dim);
    let mut upper = Mat::identity(dim);
    let mut diag = Mat::zero(dim, dim);
    for r in 0..dim {
        diag.set(r, r, nonzero_scalar(rng));
        for c in 0..r {
            lower.set(r, c, F::random(rng));
            upper.set(c, r, F::random(rng));
        }
    }
    lower.mul(&diag).mul(&upper)
}

/// A random nonzero coordinate tuple on the point quiver.
pub fn random_point_rep<F: Field>(
    rng: &mut ChaCha8Rng,
    q: &Arc<Quiver>,
) -> Result<ThinRep<F>> {
    let n = q.n() as usize;
    let mut coords: Vec<F> = (0..n).map(|_| F::random(rng)).collect();
    if coords.iter().all(Field::is_zero) {
        let slot = rng.gen_range(0..n);
        coords[slot] = nonzero_scalar(rng);
    }
    ThinRep::from_point(q.clone(), &coords)
}

/// Thin representation supported on an interval of vertices, with
/// proportional level vectors so the commuting relations hold.
pub fn random_interval_rep<F: Field>(
    rng: &mut ChaCha8Rng,
    q: &Arc<Quiver>,
) -> Result<Representation<F>> {
    let n = q.n() as usize;
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(a..n);
    let mut dims = vec![0usize; n];
    for d in dims.iter_mut().take(b + 1).skip(a) {
        *d = 1;
    }
    let mut v: Vec<F> = (0..n).map(|_| F::random(rng)).collect();
    if v.iter().all(Field::is_zero) {
        let slot = rng.gen_range(0..n);
        v[slot] = nonzero_scalar(rng);
    }
    let mut entries = Vec::new();
    for i in a..b {
        let level_scale: F = nonzero_scalar(rng);
        for (s, coord) in v.iter().enumerate() {
            let ai = q
                .arrow_from(i, (s + 1) as u8)
                .expect("point quiver has every label at every level");
            entries.push((ai, Mat::scalar(level_scale.mul(coord))));
        }
    }
    Representation::from_arrow_mats(q.clone(), dims, entries)
}

/// Direct sum of interval representations conjugated vertexwise by
/// random invertible matrices. Valid by construction; dimensions are
/// bounded by `max_summands`.
pub fn random_beilinson_rep<F: Field>(
    rng: &mut ChaCha8Rng,
    q: &Arc<Quiver>,
    max_summands: usize,
) -> Result<Representation<F>> {
    let summands = rng.gen_range(1..=max_summands.max(1));
    let mut rep = random_interval_rep(rng, q)?;
    for _ in 1..summands {
        rep = rep.direct_sum(&random_interval_rep(rng, q)?)?;
    }
    let dims = rep.dims().to_vec();
    let basis: Vec<Mat<F>> = dims.iter().map(|&d| invertible_mat(rng, d)).collect();
    let inverses: Vec<Mat<F>> = basis
        .iter()
        .map(|m| m.inverse().expect("constructed invertible"))
        .collect();
    let mats: Vec<Mat<F>> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arrow)| {
            basis[arrow.target]
                .mul(rep.mat(ai))
                .mul(&inverses[arrow.source])
        })
        .collect();
    Representation::new(q.clone(), dims, mats)
}

/// A framed representation together with its undressed form and the
/// dressing isomorphism between them: starting from the trivially
/// framed image of a random point-quiver representation, every vertex
/// is conjugated by a random invertible matrix and the framings are
/// adjusted to match.
pub fn random_framed<F: Field>(
    rng: &mut ChaCha8Rng,
    n: u32,
    max_summands: usize,
) -> Result<(FramedRep<F>, FramedRep<F>, FramedMorphism<F>)> {
    let bq = Arc::new(Quiver::beilinson(n)?);
    let e = random_beilinson_rep(rng, &bq, max_summands)?;
    let plain = crate::framed::functor_f(&e)?;
    let tq = plain.rep().quiver().clone();

    let dress: Vec<Mat<F>> = plain
        .rep()
        .dims()
        .iter()
        .map(|&d| invertible_mat(rng, d))
        .collect();
    let dress_inv: Vec<Mat<F>> = dress
        .iter()
        .map(|m| m.inverse().expect("constructed invertible"))
        .collect();

    let dims = plain.rep().dims().to_vec();
    let mats: Vec<Mat<F>> = tq
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arrow)| {
            dress[arrow.target]
                .mul(plain.rep().mat(ai))
                .mul(&dress_inv[arrow.source])
        })
        .collect();
    let dressed_rep = Representation::new(tq.clone(), dims, mats)?;

    let mut phi: BTreeMap<u32, BTreeMap<usize, Mat<F>>> = BTreeMap::new();
    for k in 0..=tq.max_index() {
        let class = tq.vertices_of_index(k);
        if class.is_empty() || dressed_rep.dim(class[0]) == 0 {
            continue;
        }
        let base = class[0];
        let base_inv = &dress_inv[base];
        let per_vertex: BTreeMap<usize, Mat<F>> = class
            .iter()
            .map(|&v| (v, dress[v].mul(base_inv)))
            .collect();
        phi.insert(k, per_vertex);
    }
    let dressed = FramedRep::from_basepoint_framings(dressed_rep, phi)?;
    let t = FramedMorphism { mats: dress };
    Ok((dressed, plain, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Qi;

    #[test]
    fn invertible_mats_invert() {
        let mut r = rng(3);
        for dim in 0..5 {
            let m: Mat<Qi> = invertible_mat(&mut r, dim);
            let inv = m.inverse().expect("invertible");
            assert_eq!(m.mul(&inv), Mat::identity(dim));
        }
    }

    #[test]
    fn generated_reps_validate() {
        let mut r = rng(4);
        for n in [3u32, 4] {
            let q = Arc::new(Quiver::beilinson(n).unwrap());
            for _ in 0..10 {
                let rep: Representation<Qi> = random_beilinson_rep(&mut r, &q, 2).unwrap();
                assert!(rep.validate().is_ok());
                assert!(rep.dims().iter().all(|&d| d <= 2));
            }
        }
    }

    #[test]
    fn generated_framed_triples_cohere() {
        let mut r = rng(5);
        for _ in 0..5 {
            let (dressed, plain, t) = random_framed::<Qi>(&mut r, 3, 2).unwrap();
            dressed.check().unwrap();
            plain.check().unwrap();
            t.check(&plain, &dressed).unwrap();
            assert!(t.is_isomorphism(&plain, &dressed));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let q = Arc::new(Quiver::beilinson(3).unwrap());
        let a: Representation<Qi> =
            random_beilinson_rep(&mut rng(9), &q, 2).unwrap();
        let b: Representation<Qi> =
            random_beilinson_rep(&mut rng(9), &q, 2).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
