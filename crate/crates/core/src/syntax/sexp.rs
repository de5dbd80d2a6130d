//! S-expression proof files.
//!
//! ```text
//! formula := (pvar NAME DIM) | (lolli F F) | (tensor F F) | (bang F)
//! proof   := (axiom F) | (lolli-r P) | (lolli-l i P P) | (tensor-l i P)
//!          | (tensor-r P P) | (der i P) | (ctr i P) | (weak i F P) | (prom P)
//!          | (cut i P P) | (exch (i …) P) | (coder i P) | (coctr i P)
//!          | (coweak i F P)
//! ```
//!
//! `;` starts a comment running to the end of the line.

use std::fmt::Write;

use super::formula::Formula;
use super::proof::{Proof, Rule};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn offset(&self) -> usize {
        match self {
            Sexp::Atom(_, o) | Sexp::List(_, o) => *o,
        }
    }
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn read(text: &str) -> Result<Sexp> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip = |pos: &mut usize| loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b';' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    };
    fn parse(bytes: &[u8], text: &str, pos: &mut usize, skip: &dyn Fn(&mut usize)) -> Result<Sexp> {
        skip(pos);
        if *pos >= bytes.len() {
            return Err(err(*pos, "unexpected end of input"));
        }
        match bytes[*pos] {
            b'(' => {
                let start = *pos;
                *pos += 1;
                let mut items = Vec::new();
                loop {
                    skip(pos);
                    if *pos >= bytes.len() {
                        return Err(err(start, "unclosed '('"));
                    }
                    if bytes[*pos] == b')' {
                        *pos += 1;
                        return Ok(Sexp::List(items, start));
                    }
                    items.push(parse(bytes, text, pos, skip)?);
                }
            }
            b')' => Err(err(*pos, "unexpected ')'")),
            _ => {
                let start = *pos;
                while *pos < bytes.len()
                    && !bytes[*pos].is_ascii_whitespace()
                    && !matches!(bytes[*pos], b'(' | b')' | b';')
                {
                    *pos += 1;
                }
                Ok(Sexp::Atom(text[start..*pos].to_string(), start))
            }
        }
    }
    let e = parse(bytes, text, &mut pos, &skip)?;
    skip(&mut pos);
    if pos < bytes.len() {
        return Err(err(pos, "trailing input after proof"));
    }
    Ok(e)
}

fn list<'a>(e: &'a Sexp, what: &str) -> Result<(&'a str, &'a [Sexp], usize)> {
    match e {
        Sexp::List(items, off) => match items.first() {
            Some(Sexp::Atom(head, _)) => Ok((head.as_str(), &items[1..], *off)),
            _ => Err(err(*off, format!("expected ({what} …)"))),
        },
        Sexp::Atom(a, off) => Err(err(*off, format!("expected {what}, found atom {a:?}"))),
    }
}

fn atom(e: &Sexp) -> Result<&str> {
    match e {
        Sexp::Atom(a, _) => Ok(a),
        Sexp::List(_, off) => Err(err(*off, "expected an atom")),
    }
}

fn index(e: &Sexp) -> Result<usize> {
    atom(e)?
        .parse()
        .map_err(|_| err(e.offset(), "expected a non-negative position"))
}

fn arity(args: &[Sexp], n: usize, head: &str, off: usize) -> Result<()> {
    if args.len() != n {
        return Err(err(off, format!("`{head}` takes {n} arguments, found {}", args.len())));
    }
    Ok(())
}

fn formula(e: &Sexp) -> Result<Formula> {
    let (head, args, off) = list(e, "formula")?;
    match head {
        "pvar" => {
            arity(args, 2, head, off)?;
            let name = atom(&args[0])?.to_string();
            let dim: usize = atom(&args[1])?
                .parse()
                .map_err(|_| err(args[1].offset(), "expected a dimension"))?;
            if dim == 0 || dim > crate::exact::MAX_DIM {
                return Err(err(args[1].offset(), format!("dimension {dim} out of range")));
            }
            Ok(Formula::Var { name, dim })
        }
        "lolli" | "tensor" => {
            arity(args, 2, head, off)?;
            let (a, b) = (formula(&args[0])?, formula(&args[1])?);
            Ok(if head == "lolli" {
                Formula::lolli(a, b)
            } else {
                Formula::tensor(a, b)
            })
        }
        "bang" => {
            arity(args, 1, head, off)?;
            Ok(Formula::bang(formula(&args[0])?))
        }
        other => Err(err(off, format!("unknown connective `{other}`"))),
    }
}

fn proof(e: &Sexp) -> Result<Proof> {
    let (head, args, off) = list(e, "rule")?;
    let p = |i: usize| proof(&args[i]);
    Ok(match head {
        "axiom" => {
            arity(args, 1, head, off)?;
            Proof::axiom(formula(&args[0])?)
        }
        "lolli-r" => {
            arity(args, 1, head, off)?;
            Proof::lolli_r(p(0)?)
        }
        "lolli-l" => {
            arity(args, 3, head, off)?;
            Proof::lolli_l(index(&args[0])?, p(1)?, p(2)?)
        }
        "tensor-l" => {
            arity(args, 2, head, off)?;
            Proof::tensor_l(index(&args[0])?, p(1)?)
        }
        "tensor-r" => {
            arity(args, 2, head, off)?;
            Proof::tensor_r(p(0)?, p(1)?)
        }
        "der" | "ctr" | "coder" | "coctr" => {
            arity(args, 2, head, off)?;
            let (i, sub) = (index(&args[0])?, p(1)?);
            match head {
                "der" => Proof::der(i, sub),
                "ctr" => Proof::ctr(i, sub),
                "coder" => Proof::coder(i, sub),
                _ => Proof::coctr(i, sub),
            }
        }
        "weak" | "coweak" => {
            arity(args, 3, head, off)?;
            let (i, f, sub) = (index(&args[0])?, formula(&args[1])?, p(2)?);
            if head == "weak" {
                Proof::weak(i, f, sub)
            } else {
                Proof::coweak(i, f, sub)
            }
        }
        "prom" => {
            arity(args, 1, head, off)?;
            Proof::prom(p(0)?)
        }
        "cut" => {
            arity(args, 3, head, off)?;
            Proof::cut(index(&args[0])?, p(1)?, p(2)?)
        }
        "exch" => {
            arity(args, 2, head, off)?;
            let perm = match &args[0] {
                Sexp::List(items, _) => items.iter().map(index).collect::<Result<Vec<_>>>()?,
                other => return Err(err(other.offset(), "expected a permutation list")),
            };
            Proof::exch(perm, p(1)?)
        }
        other => return Err(err(off, format!("unknown rule `{other}`"))),
    })
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    formula(&read(text)?)
}

pub fn parse_proof(text: &str) -> Result<Proof> {
    proof(&read(text)?)
}

pub fn print_formula(f: &Formula) -> String {
    match f {
        Formula::Var { name, dim } => format!("(pvar {name} {dim})"),
        Formula::Tensor(a, b) => format!("(tensor {} {})", print_formula(a), print_formula(b)),
        Formula::Lolli(a, b) => format!("(lolli {} {})", print_formula(a), print_formula(b)),
        Formula::Bang(a) => format!("(bang {})", print_formula(a)),
    }
}

/// Render a proof, one rule per line, children indented by two spaces.
pub fn print_proof(p: &Proof) -> String {
    let mut out = String::new();
    write_proof(p, 0, &mut out);
    out.push('\n');
    out
}

fn write_proof(p: &Proof, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let _ = write!(out, "{pad}({}", p.rule.name());
    match &p.rule {
        Rule::Axiom(f) => {
            let _ = write!(out, " {})", print_formula(f));
            return;
        }
        Rule::LolliL(i)
        | Rule::TensorL(i)
        | Rule::Der(i)
        | Rule::Ctr(i)
        | Rule::Cut(i)
        | Rule::Coder(i)
        | Rule::Coctr(i) => {
            let _ = write!(out, " {i}");
        }
        Rule::Weak(i, f) | Rule::Coweak(i, f) => {
            let _ = write!(out, " {i} {}", print_formula(f));
        }
        Rule::Exchange(perm) => {
            let items: Vec<String> = perm.iter().map(usize::to_string).collect();
            let _ = write!(out, " ({})", items.join(" "));
        }
        Rule::LolliR | Rule::TensorR | Rule::Prom => {}
    }
    for sub in &p.premises {
        out.push('\n');
        write_proof(sub, depth + 1, out);
    }
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_proof() {
        let p = parse_proof("(axiom (pvar A 2))").unwrap();
        assert_eq!(p, Proof::axiom(Formula::var("A", 2)));
        assert_eq!(print_proof(&p), "(axiom (pvar A 2))\n");
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse_proof("; id\n( der 0 ; inner\n  (axiom (pvar A 1)) )").unwrap();
        assert_eq!(p, Proof::der(0, Proof::axiom(Formula::var("A", 1))));
    }

    #[test]
    fn unknown_rule_reports_location() {
        match parse_proof("(der 0\n  (axion (pvar A 2)))") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 9);
                assert!(message.contains("axion"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert!(parse_proof("(axiom (pvar A 2)").is_err());
        assert!(parse_proof("(axiom (pvar A 2)))").is_err());
        assert!(parse_proof("(der x (axiom (pvar A 2)))").is_err());
        assert!(parse_proof("(axiom (pvar A 0))").is_err());
        assert!(parse_proof("(exch 0 (axiom (pvar A 2)))").is_err());
        assert!(parse_proof("(lolli-r)").is_err());
    }

    #[test]
    fn every_rule_round_trips() {
        let a = Formula::var("A", 2);
        let b = Formula::var("B", 1);
        let inner = Proof::exch(
            vec![1, 0],
            Proof::tensor_l(
                0,
                Proof::tensor_r(
                    Proof::der(0, Proof::axiom(a.clone())),
                    Proof::lolli_l(0, Proof::axiom(a.clone()), Proof::axiom(a.clone())),
                ),
            ),
        );
        let p = Proof::cut(
            0,
            Proof::prom(Proof::weak(0, b.clone(), Proof::lolli_r(Proof::axiom(a.clone())))),
            Proof::coweak(0, b, Proof::coder(0, Proof::coctr(0, Proof::ctr(0, inner)))),
        );
        let text = print_proof(&p);
        assert!(text.starts_with("(cut 0\n  (prom\n    (weak 0 (pvar B 1)\n"));
        assert!(text.contains("\n          (exch (1 0)\n"));
        assert_eq!(parse_proof(&text).unwrap(), p);
    }
}
