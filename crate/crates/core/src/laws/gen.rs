use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bang::{bang_to_json, BangElement, Ket, Space};
use crate::error::Result;
use crate::exact::{Scalar, VecQ};
use crate::poly::Polynomial;

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-3..=3), if rng.gen_bool(0.25) { 2 } else { 1 })
}

fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let c = small(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_vec(dim: usize, rng: &mut ChaCha8Rng) -> VecQ {
    VecQ::new((0..dim).map(|_| small(rng)).collect()).expect("dimension is positive")
}

/// One to three kets at two candidate points, each with at most
/// `max_tangents` tangents.
pub fn random_element(dim: usize, max_tangents: usize, rng: &mut ChaCha8Rng) -> Result<BangElement<VecQ>> {
    let points = [random_vec(dim, rng), random_vec(dim, rng)];
    let kets = rng.gen_range(1..=3);
    let mut raw = Vec::with_capacity(kets);
    for _ in 0..kets {
        let point = points[rng.gen_range(0..2)].clone();
        let s = rng.gen_range(0..=max_tangents);
        let tangents = (0..s).map(|_| random_vec(dim, rng)).collect();
        raw.push((nonzero(rng), Ket::new(point, tangents)));
    }
    BangElement::canonicalize(Space::Base(dim), raw)
}

/// At most four terms of total degree at most `max_degree`.
pub fn random_polynomial(nvars: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> Result<Polynomial> {
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut mono = vec![0u32; nvars];
            for _ in 0..rng.gen_range(0..=max_degree) {
                mono[rng.gen_range(0..nvars)] += 1;
            }
            (mono, nonzero(rng))
        })
        .collect::<Vec<_>>();
    Polynomial::from_terms(nvars, terms)
}

/// Inputs shared by the element laws.
#[derive(Clone, PartialEq, Eq)]
pub struct Sample {
    pub dim: usize,
    pub s: BangElement<VecQ>,
    pub t: BangElement<VecQ>,
    pub r: BangElement<VecQ>,
    pub v: VecQ,
    pub f: Polynomial,
    pub g: Polynomial,
}

impl Sample {
    pub fn draw(max_dim: usize, max_tangents: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
        let dim = rng.gen_range(1..=max_dim.max(1));
        Ok(Sample {
            dim,
            s: random_element(dim, max_tangents, rng)?,
            t: random_element(dim, max_tangents, rng)?,
            r: random_element(dim, max_tangents, rng)?,
            v: random_vec(dim, rng),
            f: random_polynomial(dim, 4, rng)?,
            g: random_polynomial(dim, 4, rng)?,
        })
    }

    /// Variants with one element replaced by one of its kets.
    pub(crate) fn single_ket_variants(&self) -> Vec<Sample> {
        let mut out = Vec::new();
        for slot in 0..3 {
            let x = [&self.s, &self.t, &self.r][slot];
            if x.len() < 2 {
                continue;
            }
            for (ket, _) in x.iter() {
                let mut next = self.clone();
                let single = x.of_ket(ket);
                *[&mut next.s, &mut next.t, &mut next.r][slot] = single;
                out.push(next);
            }
        }
        out
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim={} s={} t={} r={} v={} f={} g={}",
            self.dim,
            bang_to_json(&self.s),
            bang_to_json(&self.t),
            bang_to_json(&self.r),
            serde_json::to_string(&self.v).unwrap_or_default(),
            self.f,
            self.g
        )
    }
}
