use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sweedler::encodings::*;
use sweedler::exact::{Matrix, Scalar};
use sweedler::semantics::{
    denote_proof, derivative_eval, extensional_equal, extensional_witness, nl_eval, BangVal, ProbeConfig, SemValue,
};
use sweedler::syntax::{derivative_transform, Formula, Proof};

fn a() -> Formula {
    Formula::var("A", 2)
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix {
    let mut entry = || Scalar::new(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    Matrix::new(vec![vec![entry(), entry()], vec![entry(), entry()]]).unwrap()
}

fn closed(p: &Proof) -> SemValue {
    denote_proof(p).unwrap().eval(&[]).unwrap()
}

fn ket(point: &Matrix, tangents: &[Matrix]) -> SemValue {
    BangVal::ket(
        point.clone().into(),
        tangents.iter().cloned().map(SemValue::from).collect(),
    )
    .into()
}

fn mat(v: SemValue) -> Matrix {
    v.as_matrix().unwrap().clone()
}

#[test]
fn church_values_and_derivatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 0..=5 {
        let d = denote_proof(&church(n, &a())).unwrap();
        for _ in 0..5 {
            let (alpha, nu) = (random_matrix(&mut rng), random_matrix(&mut rng));
            assert_eq!(
                mat(nl_eval(&d, &alpha.clone().into()).unwrap()),
                church_oracle(n, &alpha).unwrap()
            );
            assert_eq!(
                mat(derivative_eval(&d, &alpha.clone().into(), &nu.clone().into()).unwrap()),
                church_derivative_oracle(n, &alpha, &nu).unwrap()
            );
        }
    }
}

#[test]
fn bint_matches_injection_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for s in BinSeq::all_up_to(3) {
        let v = closed(&bint(&s, &a()));
        for total in 0..=3 {
            for ns in 0..=total {
                let (gamma, delta) = (random_matrix(&mut rng), random_matrix(&mut rng));
                let alphas: Vec<Matrix> = (0..ns).map(|_| random_matrix(&mut rng)).collect();
                let betas: Vec<Matrix> = (0..total - ns).map(|_| random_matrix(&mut rng)).collect();
                let got = v
                    .apply(&ket(&gamma, &alphas))
                    .unwrap()
                    .apply(&ket(&delta, &betas))
                    .unwrap();
                let expected = bint_oracle(&s, &alphas, &gamma, &betas, &delta).unwrap();
                assert_eq!(mat(got), expected, "S={s} s={ns} r={}", total - ns);
            }
        }
    }
}

#[test]
fn repeat_doubles_and_differentiates() {
    let cfg = ProbeConfig::default();
    let d = denote_proof(&repeat_proof(&a())).unwrap();
    let seqs = BinSeq::all_up_to(2);
    for s in &seqs {
        let vs = closed(&bint(s, &a()));
        let doubled = nl_eval(&d, &vs).unwrap();
        let expected = closed(&bint(&s.concat(s), &a()));
        assert!(extensional_equal(&doubled, &expected, &cfg).unwrap(), "S={s}");
        for t in &seqs {
            let vt = closed(&bint(t, &a()));
            let deriv = derivative_eval(&d, &vs, &vt).unwrap();
            let sum = closed(&bint(&s.concat(t), &a()))
                .add(&closed(&bint(&t.concat(s), &a())))
                .unwrap();
            let w = extensional_witness(&deriv, &sum, &cfg).unwrap();
            assert!(w.is_none(), "S={s} T={t}: {w:?}");
        }
    }
}

#[test]
fn distinct_sequences_are_told_apart() {
    let cfg = ProbeConfig::default();
    let x = closed(&bint(&"01".parse().unwrap(), &a()));
    let y = closed(&bint(&"10".parse().unwrap(), &a()));
    assert!(extensional_witness(&x, &y, &cfg).unwrap().is_some());
}

#[test]
fn mult_derivative_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let x = random_matrix(&mut rng);
    let t = ket(&x, &[]);
    for n in 0..=3 {
        let d = denote_proof(&mult_by(n, &a())).unwrap();
        for l in 0..=3 {
            for m in 0..=3 {
                let (vl, vm) = (closed(&church_full(l, &a())), closed(&church_full(m, &a())));
                let got = mat(derivative_eval(&d, &vl, &vm).unwrap().apply(&t).unwrap());
                assert_eq!(got, mult_derivative_oracle(l, m, n, &x).unwrap(), "l={l} m={m} n={n}");
                let samples: Vec<Matrix> = (0..=n as i64)
                    .map(|h| {
                        let p = vl.add(&vm.scale(&Scalar::from_int(h))).unwrap();
                        mat(nl_eval(&d, &p).unwrap().apply(&t).unwrap())
                    })
                    .collect();
                assert_eq!(difference_quotient(&samples).unwrap(), got);
            }
        }
    }
}

#[test]
fn gamma_on_group_like_kets() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let d = denote_proof(&gamma_proof(&a())).unwrap();
    let x = random_matrix(&mut rng);
    let t = ket(&x, &[]);
    for l in 0..=3 {
        for m in 0..=2 {
            let (vl, vm) = (closed(&church_full(l, &a())), closed(&church_full(m, &a())));
            let at = vl.apply(&t).unwrap();
            let out = d.eval(&[t.clone(), BangVal::vacuum(vl.clone()).into()]).unwrap();
            let expected: SemValue = BangVal::vacuum(at.clone()).into();
            assert!(extensional_equal(&out, &expected, &ProbeConfig::default()).unwrap());
            let out = d
                .eval(&[t.clone(), BangVal::ket(vl.clone(), vec![vm.clone()]).into()])
                .unwrap();
            let expected: SemValue = BangVal::ket(at, vec![vm.apply(&t).unwrap()]).into();
            assert!(extensional_equal(&out, &expected, &ProbeConfig::default()).unwrap());
        }
    }
}

#[test]
fn derivative_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in 0..=4 {
        let p = church(n, &a());
        let dp = denote_proof(&derivative_transform(&p).unwrap()).unwrap();
        let d = denote_proof(&p).unwrap();
        let (alpha, nu) = (random_matrix(&mut rng), random_matrix(&mut rng));
        let via_rules = dp.eval(&[ket(&alpha, &[]), nu.clone().into()]).unwrap();
        let direct = derivative_eval(&d, &alpha.into(), &nu.into()).unwrap();
        assert_eq!(mat(via_rules), mat(direct));
    }
}
