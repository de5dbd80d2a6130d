//! Canonical observations of semantic values.
//!
//! A value is mapped to a finite linear combination of observation keys.
//! Coordinates of finite-dimensional values are read off exactly; maps are
//! applied to a deterministic family of probe inputs and the outputs are
//! observed recursively; kets are expanded multilinearly in their tangents
//! with the point observed as part of the key. Two values are extensionally
//! equal when their observations coincide.
//!
//! Probes into `!X` are kets `|y₁,…,y_s⟩_x` with `x, yᵢ` drawn from a
//! seeded generator of small rationals. Every tangent spent by a probe is
//! charged against [`ProbeConfig::tangent_budget`], shared by all nested
//! probes of one observation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BangVal, SemSpace, SemValue, TensorVal};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, VecQ};
use crate::lincomb::LinComb;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObsKey {
    Coord(usize),
    Probe(usize, Box<ObsKey>),
    Pair(Box<ObsKey>, Box<ObsKey>),
    Ket { point: Obs, tangents: Vec<ObsKey> },
}

pub type Obs = LinComb<ObsKey>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    pub seed: u64,
    /// Total number of tangents across nested ket probes.
    pub tangent_budget: usize,
    /// Probe kets per tangent count.
    pub samples: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            seed: DEFAULT_SEED,
            tangent_budget: 3,
            samples: 2,
        }
    }
}

fn too_deep(space: &SemSpace) -> Error {
    Error::Probe(format!(
        "space too deep for the configured probe depth: cannot generate inputs in {space}"
    ))
}

pub(crate) fn fnv(text: &str) -> u64 {
    text.bytes()
        .fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-3..=3), if rng.gen_bool(0.25) { 2 } else { 1 })
}

/// A random element of a space with coordinates.
pub fn random_point(space: &SemSpace, rng: &mut ChaCha8Rng) -> Result<SemValue> {
    match space {
        SemSpace::Base(n) => Ok(SemValue::Base(VecQ::new(
            (0..*n).map(|_| small_rational(rng)).collect(),
        )?)),
        SemSpace::Tensor(a, b) => Ok(TensorVal::pure(random_point(a, rng)?, random_point(b, rng)?).into()),
        _ => match space.matrix_shape() {
            Some((m, n)) => Ok(SemValue::Mat(Matrix::new(
                (0..n).map(|_| (0..m).map(|_| small_rational(rng)).collect()).collect(),
            )?)),
            None => Err(too_deep(space)),
        },
    }
}

/// The probe inputs for maps out of `space`, each with the tangents it
/// spends.
pub fn probe_inputs(space: &SemSpace, budget: usize, cfg: &ProbeConfig) -> Result<Vec<(SemValue, usize)>> {
    match space {
        SemSpace::Base(n) => Ok((0..*n).map(|i| (SemValue::Base(VecQ::unit(*n, i)), 0)).collect()),
        SemSpace::Tensor(a, b) => {
            let mut out = Vec::new();
            for (x, sx) in probe_inputs(a, budget, cfg)? {
                for (y, sy) in probe_inputs(b, budget - sx, cfg)? {
                    out.push((TensorVal::pure(x.clone(), y).into(), sx + sy));
                }
            }
            Ok(out)
        }
        SemSpace::Bang(a) => {
            let tag = format!("{space}/{budget}");
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv(&tag));
            let mut out = Vec::new();
            for s in 0..=budget {
                for _ in 0..cfg.samples {
                    let point = random_point(a, &mut rng)?;
                    let tangents = (0..s).map(|_| random_point(a, &mut rng)).collect::<Result<_>>()?;
                    out.push((BangVal::ket(point, tangents).into(), s));
                }
            }
            Ok(out)
        }
        SemSpace::Hom(..) => match space.matrix_shape() {
            Some((m, n)) => {
                let mut out = Vec::with_capacity(m * n);
                for i in 0..n {
                    for j in 0..m {
                        let mut rows = vec![vec![Scalar::zero(); m]; n];
                        rows[i][j] = Scalar::one();
                        out.push((SemValue::Mat(Matrix::new(rows)?), 0));
                    }
                }
                Ok(out)
            }
            None => Err(too_deep(space)),
        },
    }
}

fn coords(c: &[Scalar]) -> Obs {
    c.iter()
        .enumerate()
        .map(|(i, x)| (ObsKey::Coord(i), x.clone()))
        .collect()
}

/// The observation of `v`, probing with at most `budget` tangents.
pub fn observe(v: &SemValue, budget: usize, cfg: &ProbeConfig) -> Result<Obs> {
    match v {
        SemValue::Base(x) => Ok(coords(x.coords())),
        SemValue::Mat(m) => Ok(coords(m.entries())),
        SemValue::Tensor(t) => {
            let mut out = Obs::new();
            for (c, a, b) in &t.terms {
                let (oa, ob) = (observe(a, budget, cfg)?, observe(b, budget, cfg)?);
                for (ka, ca) in oa.iter() {
                    for (kb, cb) in ob.iter() {
                        out.add_term(ObsKey::Pair(Box::new(ka.clone()), Box::new(kb.clone())), &(c * ca) * cb);
                    }
                }
            }
            Ok(out)
        }
        SemValue::Bang(b) => {
            let mut out = Obs::new();
            for (c, k) in &b.terms {
                let point = observe(&k.point, budget, cfg)?;
                let mut partial: Vec<(Vec<ObsKey>, Scalar)> = vec![(Vec::new(), c.clone())];
                for t in &k.tangents {
                    let ot = observe(t, budget, cfg)?;
                    let mut next = Vec::with_capacity(partial.len() * ot.len());
                    for (keys, coeff) in &partial {
                        for (kt, ct) in ot.iter() {
                            let mut keys = keys.clone();
                            keys.push(kt.clone());
                            next.push((keys, coeff * ct));
                        }
                    }
                    partial = next;
                }
                for (mut tangents, coeff) in partial {
                    tangents.sort();
                    out.add_term(
                        ObsKey::Ket {
                            point: point.clone(),
                            tangents,
                        },
                        coeff,
                    );
                }
            }
            Ok(out)
        }
        SemValue::Map(m) => {
            let mut out = Obs::new();
            for (i, (input, spent)) in probe_inputs(&m.dom, budget, cfg)?.into_iter().enumerate() {
                let o = observe(&(m.f)(&input)?, budget - spent, cfg)?;
                for (k, c) in o.iter() {
                    out.add_term(ObsKey::Probe(i, Box::new(k.clone())), c.clone());
                }
            }
            Ok(out)
        }
    }
}

/// A description of the first observation on which `a` and `b` differ.
pub fn extensional_witness(a: &SemValue, b: &SemValue, cfg: &ProbeConfig) -> Result<Option<String>> {
    b.expect_space(&a.space())?;
    let diff = observe(a, cfg.tangent_budget, cfg)?.minus(&observe(b, cfg.tangent_budget, cfg)?);
    let witness = diff.iter().next().map(|(k, c)| format!("{} at {}", c, describe(k)));
    Ok(witness)
}

pub fn extensional_equal(a: &SemValue, b: &SemValue, cfg: &ProbeConfig) -> Result<bool> {
    Ok(extensional_witness(a, b, cfg)?.is_none())
}

fn describe(k: &ObsKey) -> String {
    match k {
        ObsKey::Coord(i) => format!("coordinate {i}"),
        ObsKey::Probe(i, rest) => format!("probe {i} / {}", describe(rest)),
        ObsKey::Pair(a, b) => format!("({}) ⊗ ({})", describe(a), describe(b)),
        ObsKey::Ket { point, tangents } => format!("ket with {} tangent(s) at point {:?}", tangents.len(), point),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn end() -> SemSpace {
        SemSpace::hom(SemSpace::Base(2), SemSpace::Base(2))
    }

    #[test]
    fn matrices_compare_exactly() {
        let cfg = ProbeConfig::default();
        let a: SemValue = Matrix::from_ints(&[&[1, 2], &[3, 4]]).into();
        let b: SemValue = Matrix::from_ints(&[&[1, 2], &[3, 5]]).into();
        assert!(extensional_equal(&a, &a.clone(), &cfg).unwrap());
        let w = extensional_witness(&a, &b, &cfg).unwrap().unwrap();
        assert!(w.contains("coordinate 3"), "{w}");
    }

    #[test]
    fn kets_are_multilinear_and_symmetric() {
        let cfg = ProbeConfig::default();
        let p: SemValue = Matrix::from_ints(&[&[1, 0], &[0, 2]]).into();
        let x: SemValue = Matrix::from_ints(&[&[1, 1], &[0, 0]]).into();
        let y: SemValue = Matrix::from_ints(&[&[0, 0], &[1, 0]]).into();
        let xy = BangVal::ket(p.clone(), vec![x.clone(), y.clone()]);
        let yx = BangVal::ket(p.clone(), vec![y.clone(), x.clone()]);
        assert!(extensional_equal(&xy.into(), &yx.into(), &cfg).unwrap());
        let sum = BangVal::ket(p.clone(), vec![x.add(&y).unwrap()]);
        let split: SemValue = SemValue::from(BangVal::ket(p.clone(), vec![x]))
            .add(&BangVal::ket(p.clone(), vec![y]).into())
            .unwrap();
        assert!(extensional_equal(&sum.into(), &split, &cfg).unwrap());
        let zero_tangent = BangVal::ket(p, vec![SemValue::zero(&end())]);
        assert!(observe(&zero_tangent.into(), 3, &cfg).unwrap().is_zero());
    }

    #[test]
    fn maps_are_probed() {
        let cfg = ProbeConfig::default();
        let dom = SemSpace::bang(end());
        let counit = |scale: i64| -> SemValue {
            SemValue::Map(super::super::MapVal {
                dom: dom.clone(),
                cod: SemSpace::Base(1),
                f: Arc::new(move |x| {
                    let c = x.as_bang()?.counit();
                    Ok(SemValue::Base(VecQ::new(vec![&c * &Scalar::from_int(scale)])?))
                }),
            })
        };
        assert!(extensional_equal(&counit(1), &counit(1), &cfg).unwrap());
        assert!(!extensional_equal(&counit(1), &counit(2), &cfg).unwrap());
    }

    #[test]
    fn probe_family_is_deterministic() {
        let cfg = ProbeConfig::default();
        let dom = SemSpace::bang(end());
        let a = probe_inputs(&dom, 2, &cfg).unwrap();
        let b = probe_inputs(&dom, 2, &cfg).unwrap();
        assert_eq!(a.len(), 6);
        for ((x, s), (y, t)) in a.iter().zip(&b) {
            assert_eq!(s, t);
            assert_eq!(observe(x, 0, &cfg).unwrap(), observe(y, 0, &cfg).unwrap());
        }
        let other = ProbeConfig { seed: 1, ..cfg.clone() };
        let c = probe_inputs(&dom, 2, &other).unwrap();
        assert_ne!(observe(&a[0].0, 0, &cfg).unwrap(), observe(&c[0].0, 0, &cfg).unwrap());
    }

    #[test]
    fn deep_spaces_are_rejected() {
        let cfg = ProbeConfig::default();
        let int = SemSpace::hom(SemSpace::bang(end()), end());
        assert!(matches!(
            probe_inputs(&SemSpace::bang(int), 1, &cfg),
            Err(Error::Probe(_))
        ));
    }
}
