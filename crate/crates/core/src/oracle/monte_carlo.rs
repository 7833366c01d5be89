use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::HaarError;
use crate::group::Group;
use crate::integrator::{check_indices, MomentSpec};
use crate::dim::Dim;

const CHUNK: usize = 1024;

/// A Monte Carlo estimate of the real part of a moment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarlo {
    pub estimate: f64,
    pub standard_error: f64,
    pub samples: usize,
}

impl MonteCarlo {
    /// Whether `exact` lies within `k` standard errors of the estimate.
    pub fn agrees_with(&self, exact: f64, k: f64) -> bool {
        (self.estimate - exact).abs() <= k * self.standard_error + 1e-12
    }
}

/// One Haar-distributed matrix, column-major. For Sp it is the `2d x 2d`
/// unitary form with rows and columns ordered `1..d, -1..-d`.
#[derive(Clone, Debug)]
pub struct HaarSample {
    group: Group,
    d: usize,
    size: usize,
    data: Vec<Complex64>,
}

impl HaarSample {
    pub fn size(&self) -> usize {
        self.size
    }

    fn position(&self, v: i64) -> usize {
        let a = v.unsigned_abs() as usize;
        if v > 0 {
            a - 1
        } else {
            debug_assert_eq!(self.group, Group::Symplectic);
            self.d + a - 1
        }
    }

    /// The entry `g[i,j]` in the index conventions of [`MomentSpec`].
    pub fn entry(&self, i: i64, j: i64) -> Complex64 {
        self.data[self.position(j) * self.size + self.position(i)]
    }
}

fn gaussian<R: Rng>(rng: &mut R, complex: bool) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
    Complex64::new(re, im)
}

fn orthonormalize(x: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for q in basis {
        let dot: Complex64 = q.iter().zip(x.iter()).map(|(a, b)| a.conj() * b).sum();
        for (xi, qi) in x.iter_mut().zip(q) {
            *xi -= dot * qi;
        }
    }
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for xi in x.iter_mut() {
        *xi /= norm;
    }
}

/// Gram-Schmidt on a Gaussian matrix: complex for U, real for O, and
/// quaternionic for Sp, where each new column `v = (a; b)` is paired with
/// `(-conj(b); conj(a))`.
pub fn sample_haar<R: Rng>(group: Group, d: usize, rng: &mut R) -> HaarSample {
    let size = if group == Group::Symplectic { 2 * d } else { d };
    let complex = group != Group::Orthogonal;
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(size);
    match group {
        Group::Symplectic => {
            let mut partners = Vec::with_capacity(d);
            for _ in 0..d {
                let mut x: Vec<Complex64> = (0..size).map(|_| gaussian(rng, true)).collect();
                orthonormalize(&mut x, &columns);
                orthonormalize(&mut x, &partners);
                let w: Vec<Complex64> = x[d..].iter().map(|b| -b.conj()).chain(x[..d].iter().map(|a| a.conj())).collect();
                columns.push(x);
                partners.push(w);
            }
            columns.extend(partners);
        }
        _ => {
            for _ in 0..size {
                let mut x: Vec<Complex64> = (0..size).map(|_| gaussian(rng, complex)).collect();
                orthonormalize(&mut x, &columns);
                columns.push(x);
            }
        }
    }
    HaarSample {
        group,
        d,
        size,
        data: columns.concat(),
    }
}

fn evaluate(spec: &MomentSpec, g: &HaarSample) -> f64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (i, j) in spec.i().iter().zip(spec.j()) {
        acc *= g.entry(*i, *j);
    }
    for (i, j) in spec.i_bar().iter().zip(spec.j_bar()) {
        acc *= g.entry(*i, *j).conj();
    }
    acc.re
}

/// Estimates a moment at dimension `d` from `samples` Haar matrices. Chunks
/// of samples run in parallel, each on its own ChaCha8 stream of `seed`, so
/// the result does not depend on the thread count.
pub fn monte_carlo_moment(spec: &MomentSpec, d: u32, samples: usize, seed: u64) -> Result<MonteCarlo, HaarError> {
    if d == 0 {
        return Err(HaarError::InvalidDimension("Monte Carlo needs d >= 1".into()));
    }
    if samples < 2 {
        return Err(HaarError::InvalidSpec("Monte Carlo needs at least two samples".into()));
    }
    check_indices(spec, Dim::Fixed(d))?;
    let chunks = samples.div_ceil(CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut s = 0.0;
            let mut s2 = 0.0;
            for _ in 0..count {
                let x = evaluate(spec, &sample_haar(spec.group(), d as usize, &mut rng));
                s += x;
                s2 += x * x;
            }
            (s, s2)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(MonteCarlo {
        estimate: mean,
        standard_error: (var / n).sqrt(),
        samples,
    })
}
