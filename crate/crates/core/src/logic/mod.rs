//! Resolver-logic formulas: quantifiers over words and resolvers followed
//! by an existential Presburger matrix over automaton values.

mod eval;
mod parse;
mod presburger;
mod tree;
mod vectors;

pub use eval::{evaluate, evaluate_with_cap, Binding, Evaluation, WitnessTree};
pub use parse::parse;
pub use presburger::{decide_presburger, SEARCH_BUDGET};
pub use tree::{
    build_tree_automaton, decide_by_tree, project, project_all, tree_emptiness, tree_emptiness_dual, Dim,
    ParityTreeAutomaton, Phase, TreeEmptiness, TreeState, TreeTransition, TreeVerdict, MAX_TREE_STATES,
};
pub use vectors::{value_vectors, ValueVector};

use std::fmt;

use thiserror::Error;

use crate::omega::OmegaError;
use crate::relations::RelationError;
use crate::resolver::ResolverError;

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable {0:?}")]
    Unbound(String),
    #[error("sort mismatch: {0}")]
    Sort(String),
    #[error("free integer variable {0:?}")]
    FreeInteger(String),
    #[error("integer quantifier under negation is outside the existential fragment")]
    NotExistential,
    #[error("unknown automaton {0:?}")]
    UnknownAutomaton(String),
    #[error("alphabet mismatch between bound automata")]
    AlphabetMismatch,
    #[error("small-solution bound {bound} over {vars} variables exceeds the search budget")]
    BoundOverflow { bound: u128, vars: usize },
    #[error("unknown label dimension {0:?}")]
    UnknownDimension(String),
    #[error("unsupported formula: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Resolver(#[from] ResolverError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Word,
    /// Resolvers of the named automaton.
    Resolver(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub quantifier: Quantifier,
    pub var: String,
    pub sort: Sort,
}

/// `val(A, f, w)`: indices of the resolver and word binders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValTerm {
    pub automaton: String,
    pub resolver: usize,
    pub word: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// Index into [`ResolverFormula::vals`].
    Val(usize),
    Int(u64),
    /// Integer variable bound by a matrix quantifier.
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(u64, Box<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn holds(self, x: i128, y: i128) -> bool {
        match self {
            CmpOp::Eq => x == y,
            CmpOp::Ne => x != y,
            CmpOp::Lt => x < y,
            CmpOp::Le => x <= y,
            CmpOp::Gt => x > y,
            CmpOp::Ge => x >= y,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matrix {
    True,
    False,
    Cmp(Term, CmpOp, Term),
    Not(Box<Matrix>),
    And(Box<Matrix>, Box<Matrix>),
    Or(Box<Matrix>, Box<Matrix>),
    /// Existential quantifier over naturals.
    Exists(String, Box<Matrix>),
}

impl Matrix {
    pub fn negate(self) -> Matrix {
        Matrix::Not(Box::new(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolverFormula {
    pub prefix: Vec<Binder>,
    pub matrix: Matrix,
    /// Distinct value terms in order of first occurrence.
    pub vals: Vec<ValTerm>,
}

impl ResolverFormula {
    /// Names of the automata the formula refers to.
    pub fn automata(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .prefix
            .iter()
            .filter_map(|b| match &b.sort {
                Sort::Resolver(a) => Some(a.clone()),
                Sort::Word => None,
            })
            .collect();
        v.dedup();
        let mut seen = std::collections::HashSet::new();
        v.retain(|a| seen.insert(a.clone()));
        v
    }

    /// Number of quantifier alternations in the prefix.
    pub fn alternations(&self) -> usize {
        self.prefix.windows(2).filter(|w| w[0].quantifier != w[1].quantifier).count()
    }

    /// The size measure `n + m + |φ|`: automata, word and resolver
    /// variables, and integer quantifiers of the matrix.
    pub fn size(&self) -> usize {
        fn q(m: &Matrix) -> usize {
            match m {
                Matrix::True | Matrix::False | Matrix::Cmp(..) => 0,
                Matrix::Not(x) => q(x),
                Matrix::And(x, y) | Matrix::Or(x, y) => q(x) + q(y),
                Matrix::Exists(_, x) => 1 + q(x),
            }
        }
        self.automata().len() + self.prefix.len() + q(&self.matrix)
    }
}

impl fmt::Display for ResolverFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.prefix {
            let q = match b.quantifier {
                Quantifier::Exists => "exists",
                Quantifier::Forall => "forall",
            };
            match &b.sort {
                Sort::Word => write!(f, "{q} {} . ", b.var)?,
                Sort::Resolver(a) => write!(f, "{q} {} in R({a}) . ", b.var)?,
            }
        }
        self.fmt_matrix(&self.matrix, f)
    }
}

impl ResolverFormula {
    fn fmt_term(&self, t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match t {
            Term::Val(i) => {
                let v = &self.vals[*i];
                write!(f, "val({},{},{})", v.automaton, self.prefix[v.resolver].var, self.prefix[v.word].var)
            }
            Term::Int(n) => write!(f, "{n}"),
            Term::Var(x) => f.write_str(x),
            Term::Add(a, b) => {
                f.write_str("(")?;
                self.fmt_term(a, f)?;
                f.write_str(" + ")?;
                self.fmt_term(b, f)?;
                f.write_str(")")
            }
            Term::Mul(k, a) => {
                write!(f, "{k}*")?;
                self.fmt_term(a, f)
            }
        }
    }

    fn fmt_matrix(&self, m: &Matrix, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match m {
            Matrix::True => f.write_str("true"),
            Matrix::False => f.write_str("false"),
            Matrix::Cmp(a, op, b) => {
                self.fmt_term(a, f)?;
                write!(f, " {} ", op.symbol())?;
                self.fmt_term(b, f)
            }
            Matrix::Not(x) => {
                f.write_str("!(")?;
                self.fmt_matrix(x, f)?;
                f.write_str(")")
            }
            Matrix::And(x, y) | Matrix::Or(x, y) => {
                let op = if matches!(m, Matrix::And(..)) { "&&" } else { "||" };
                f.write_str("(")?;
                self.fmt_matrix(x, f)?;
                write!(f, " {op} ")?;
                self.fmt_matrix(y, f)?;
                f.write_str(")")
            }
            Matrix::Exists(x, b) => {
                write!(f, "exists {x} in N . (")?;
                self.fmt_matrix(b, f)?;
                f.write_str(")")
            }
        }
    }
}
