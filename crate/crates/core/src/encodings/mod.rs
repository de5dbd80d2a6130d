//! Proof families over a base formula `A`, with `E = A ⊸ A`.

mod oracle;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::syntax::{Formula, Proof};

pub use oracle::{bint_oracle, church_derivative_oracle, church_oracle, difference_quotient, mult_derivative_oracle};

/// A binary sequence `a_l ⋯ a_1`, stored left to right as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinSeq(pub Vec<bool>);

impl BinSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &BinSeq) -> BinSeq {
        BinSeq(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Every sequence of length at most `max`, shortest first.
    pub fn all_up_to(max: usize) -> Vec<BinSeq> {
        let mut out = Vec::new();
        for len in 0..=max {
            for bits in 0..1u32 << len {
                out.push(BinSeq((0..len).rev().map(|i| bits >> i & 1 == 1).collect()));
            }
        }
        out
    }
}

impl FromStr for BinSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<BinSeq> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    offset: i,
                    message: format!("expected 0 or 1, found {c:?}"),
                }),
            })
            .collect::<Result<_>>()
            .map(BinSeq)
    }
}

impl fmt::Display for BinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

fn endo(a: &Formula) -> Formula {
    Formula::endo(a.clone())
}

/// `E, …, E ⊢ E` (n copies), denoting `(α₁, …, αₙ) ↦ αₙ ∘ ⋯ ∘ α₁`. For
/// `n = 0` this is `⊢ E`, denoting the identity.
pub fn comp_proof(n: usize, a: &Formula) -> Proof {
    if n == 0 {
        return Proof::lolli_r(Proof::axiom(a.clone()));
    }
    let mut body = Proof::axiom(a.clone());
    for _ in 0..n {
        body = Proof::lolli_l(0, Proof::axiom(a.clone()), body);
    }
    Proof::lolli_r(body)
}

fn derelict_all(n: usize, p: Proof) -> Proof {
    (0..n).fold(p, |p, i| Proof::der(i, p))
}

/// `!E ⊢ E`: the body of the Church numeral `n`.
pub fn church(n: usize, a: &Formula) -> Proof {
    if n == 0 {
        return Proof::weak(0, endo(a), comp_proof(0, a));
    }
    let p = derelict_all(n, comp_proof(n, a));
    (1..n).fold(p, |p, _| Proof::ctr(0, p))
}

/// `⊢ int_A`.
pub fn church_full(n: usize, a: &Formula) -> Proof {
    Proof::lolli_r(church(n, a))
}

/// `⊢ bint_A`. Copies for `0` positions are contracted into the first
/// argument, copies for `1` positions into the second; a missing kind is
/// weakened in.
pub fn bint(s: &BinSeq, a: &Formula) -> Proof {
    let e = endo(a);
    let l = s.len();
    let zeros: Vec<usize> = (0..l).filter(|&j| !s.0[j]).collect();
    let ones: Vec<usize> = (0..l).filter(|&j| s.0[j]).collect();
    let mut p = derelict_all(l, comp_proof(l, a));
    let perm: Vec<usize> = zeros.iter().chain(&ones).copied().collect();
    if perm.iter().enumerate().any(|(k, &j)| k != j) {
        p = Proof::exch(perm, p);
    }
    for _ in 1..zeros.len() {
        p = Proof::ctr(0, p);
    }
    let one_slot = zeros.len().min(1);
    for _ in 1..ones.len() {
        p = Proof::ctr(one_slot, p);
    }
    if zeros.is_empty() {
        p = Proof::weak(0, e.clone(), p);
    }
    if ones.is_empty() {
        p = Proof::weak(1, e, p);
    }
    if l > 0 {
        p = Proof::exch(vec![1, 0], p);
    }
    Proof::lolli_r(Proof::lolli_r(p))
}

/// `!bint_A ⊢ bint_A`, sending `|∅⟩_S` to `SS`.
pub fn repeat_proof(a: &Formula) -> Proof {
    let e = endo(a);
    let be = || Proof::axiom(Formula::bang(e.clone()));
    let l1 = Proof::lolli_l(0, be(), comp_proof(2, a));
    let l2 = Proof::lolli_l(1, be(), l1);
    let l3 = Proof::lolli_l(3, be(), l2);
    let l4 = Proof::lolli_l(4, be(), l3);
    // [r, b, r, b, bint, bint] → [r, r, b, b, bint, bint]
    let grouped = Proof::exch(vec![0, 2, 1, 3, 4, 5], l4);
    let contracted = Proof::ctr(1, Proof::ctr(0, grouped));
    let abstracted = Proof::lolli_r(Proof::lolli_r(Proof::exch(vec![1, 0, 2, 3], contracted)));
    Proof::ctr(0, Proof::der(0, Proof::der(1, abstracted)))
}

/// `!E, !int_A ⊢ !E`.
pub fn gamma_proof(a: &Formula) -> Proof {
    let e = endo(a);
    let app = Proof::lolli_l(0, Proof::axiom(Formula::bang(e.clone())), Proof::axiom(e));
    Proof::prom(Proof::der(1, app))
}

/// `!int_A, int_A ⊢ int_A`.
pub fn mult_proof(a: &Formula) -> Proof {
    Proof::lolli_r(Proof::lolli_l(0, gamma_proof(a), Proof::axiom(endo(a))))
}

/// `!int_A ⊢ int_A`: multiplication by `n`, by cutting against its numeral.
pub fn mult_by(n: usize, a: &Formula) -> Proof {
    Proof::cut(1, church_full(n, a), mult_proof(a))
}

/// Look up a bundled proof by name: `comp:N`, `church:N` (the body
/// `!E ⊢ E`), `church-full:N`, `bint:S`, `repeat`, `gamma`, `mult`,
/// `mult-by:N`.
pub fn named_proof(name: &str, a: &Formula) -> Result<Proof> {
    let (head, arg) = match name.split_once(':') {
        Some((h, x)) => (h, Some(x)),
        None => (name, None),
    };
    let number = || -> Result<usize> {
        arg.and_then(|x| x.parse().ok())
            .filter(|&n| n <= 12)
            .ok_or_else(|| Error::Json(format!("`{name}`: expected a count between 0 and 12")))
    };
    Ok(match head {
        "comp" => comp_proof(number()?, a),
        "church" => church(number()?, a),
        "church-full" => church_full(number()?, a),
        "mult-by" => mult_by(number()?, a),
        "bint" => bint(&arg.unwrap_or("").parse()?, a),
        "repeat" if arg.is_none() => repeat_proof(a),
        "gamma" if arg.is_none() => gamma_proof(a),
        "mult" if arg.is_none() => mult_proof(a),
        _ => return Err(Error::Json(format!("unknown bundled proof `{name}`"))),
    })
}

/// Names of the bundled proofs written out as golden files.
pub fn golden_names() -> Vec<String> {
    let mut names: Vec<String> = (0..=3).map(|n| format!("comp:{n}")).collect();
    names.extend((0..=3).map(|n| format!("church:{n}")));
    names.extend(["bint:", "bint:0", "bint:1", "bint:01", "bint:001", "bint:110"].map(String::from));
    names.extend(["repeat", "gamma", "mult", "mult-by:2"].map(String::from));
    names
}

/// File name for a bundled proof, e.g. `bint-001.sexp`, `bint-empty.sexp`.
pub fn golden_file_name(name: &str) -> String {
    let stem = match name.split_once(':') {
        Some((h, "")) => format!("{h}-empty"),
        Some((h, x)) => format!("{h}-{x}"),
        None => name.to_string(),
    };
    format!("{stem}.sexp")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{check_proof, Sequent};

    fn a() -> Formula {
        Formula::var("A", 2)
    }

    fn e() -> Formula {
        endo(&a())
    }

    fn concl(p: &Proof) -> Sequent {
        check_proof(p).unwrap().sequent().clone()
    }

    #[test]
    fn binseq_text() {
        let s: BinSeq = "001".parse().unwrap();
        assert_eq!(s.0, vec![false, false, true]);
        assert_eq!(s.to_string(), "001");
        assert!("012".parse::<BinSeq>().is_err());
        assert_eq!(BinSeq::all_up_to(2).len(), 7);
        assert_eq!(BinSeq::all_up_to(2)[3].to_string(), "00");
    }

    #[test]
    fn sequents() {
        let bang_e = Formula::bang(e());
        let int = Formula::int(a());
        let bint_f = Formula::bint(a());
        assert_eq!(concl(&comp_proof(0, &a())), Sequent::new(vec![], e()));
        assert_eq!(concl(&comp_proof(3, &a())), Sequent::new(vec![e(); 3], e()));
        for n in 0..=4 {
            assert_eq!(concl(&church(n, &a())), Sequent::new(vec![bang_e.clone()], e()));
            assert_eq!(concl(&church_full(n, &a())), Sequent::new(vec![], int.clone()));
        }
        for s in BinSeq::all_up_to(3) {
            assert_eq!(concl(&bint(&s, &a())), Sequent::new(vec![], bint_f.clone()), "{s}");
        }
        assert_eq!(
            concl(&repeat_proof(&a())),
            Sequent::new(vec![Formula::bang(bint_f.clone())], bint_f)
        );
        assert_eq!(
            concl(&gamma_proof(&a())),
            Sequent::new(vec![bang_e.clone(), Formula::bang(int.clone())], bang_e)
        );
        assert_eq!(
            concl(&mult_proof(&a())),
            Sequent::new(vec![Formula::bang(int.clone()), int.clone()], int.clone())
        );
        assert_eq!(
            concl(&mult_by(2, &a())),
            Sequent::new(vec![Formula::bang(int.clone())], int)
        );
    }

    #[test]
    fn displayed_trees() {
        // 2: two dereliction then one contraction over comp²
        let two = church(2, &a());
        assert!(matches!(two.rule, crate::syntax::Rule::Ctr(0)));
        assert_eq!(two.size(), 1 + 2 + 1 + 3 + 2);
        // 001: one contraction on the 0-copies
        let p = bint(&"001".parse().unwrap(), &a());
        let text = crate::syntax::print_proof(&p);
        assert_eq!(text.matches("(ctr").count(), 1);
        assert_eq!(text.matches("(weak").count(), 0);
        // empty: two weakenings then two abstractions
        let empty = crate::syntax::print_proof(&bint(&BinSeq::default(), &a()));
        assert!(empty.starts_with("(lolli-r\n  (lolli-r\n    (weak 1 "));
        assert_eq!(empty.matches("(weak").count(), 2);
    }

    #[test]
    fn names() {
        assert_eq!(
            named_proof("bint:001", &a()).unwrap(),
            bint(&"001".parse().unwrap(), &a())
        );
        assert_eq!(named_proof("bint:", &a()).unwrap(), bint(&BinSeq::default(), &a()));
        assert_eq!(named_proof("church:3", &a()).unwrap(), church(3, &a()));
        assert!(named_proof("church:x", &a()).is_err());
        assert!(named_proof("repeat:1", &a()).is_err());
        assert!(named_proof("nope", &a()).is_err());
        assert_eq!(golden_file_name("bint:"), "bint-empty.sexp");
        assert_eq!(golden_file_name("mult-by:2"), "mult-by-2.sexp");
        for n in golden_names() {
            check_proof(&named_proof(&n, &a()).unwrap()).unwrap();
        }
    }
}
