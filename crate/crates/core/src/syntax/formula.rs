use std::fmt;

/// Formulas built from `⊗`, `⊸` and `!` over propositional variables. Each
/// variable carries the dimension of the vector space it denotes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var { name: String, dim: usize },
    Tensor(Box<Formula>, Box<Formula>),
    Lolli(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str, dim: usize) -> Formula {
        Formula::Var {
            name: name.to_string(),
            dim,
        }
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn lolli(a: Formula, b: Formula) -> Formula {
        Formula::Lolli(Box::new(a), Box::new(b))
    }

    pub fn bang(a: Formula) -> Formula {
        Formula::Bang(Box::new(a))
    }

    /// `A ⊸ A`.
    pub fn endo(a: Formula) -> Formula {
        Formula::lolli(a.clone(), a)
    }

    /// `int_A = !(A ⊸ A) ⊸ (A ⊸ A)`.
    pub fn int(a: Formula) -> Formula {
        let e = Formula::endo(a);
        Formula::lolli(Formula::bang(e.clone()), e)
    }

    /// `bint_A = !(A ⊸ A) ⊸ (!(A ⊸ A) ⊸ (A ⊸ A))`.
    pub fn bint(a: Formula) -> Formula {
        let e = Formula::endo(a);
        Formula::lolli(Formula::bang(e.clone()), Formula::lolli(Formula::bang(e.clone()), e))
    }

    pub fn unbang(&self) -> Option<&Formula> {
        match self {
            Formula::Bang(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_bang(&self) -> bool {
        matches!(self, Formula::Bang(_))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var { name, .. } => write!(f, "{name}"),
            Formula::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            Formula::Lolli(a, b) => write!(f, "({a} ⊸ {b})"),
            Formula::Bang(a) => write!(f, "!{a}"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Γ ⊢ B`, with an ordered context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub context: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(context: Vec<Formula>, conclusion: Formula) -> Sequent {
        Sequent { context, conclusion }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.context.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.context.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "⊢ {}", self.conclusion)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
