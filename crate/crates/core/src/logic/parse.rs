//! Parser for the formula DSL.
//!
//! ```text
//! formula := binder* matrix
//! binder  := ("exists" | "forall") ident ["in" "R" "(" ident ")"] "."
//! matrix  := disj ["->" matrix]
//! disj    := conj (("||" | "or") conj)*
//! conj    := unary (("&&" | "and") unary)*
//! unary   := ("!" | "not") unary | "exists" ident "in" "N" "." matrix
//!          | "(" matrix ")" | "true" | "false" | term cmp term
//! term    := prod ("+" prod)*
//! prod    := atom ("*" atom)*          (one factor must be a literal)
//! atom    := nat | ident | "val" "(" ident "," ident "," ident ")" | "(" term ")"
//! cmp     := "=" | "==" | "!=" | "<" | "<=" | ">" | ">="
//! ```
//!
//! A binder without `in R(..)` quantifies over words. `#` starts a comment.

use super::{Binder, CmpOp, LogicError, Matrix, Quantifier, ResolverFormula, Sort, Term, ValTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

const SYMS: [&str; 17] = ["->", "&&", "||", "<=", ">=", "!=", "==", "(", ")", ",", ".", "+", "*", "<", ">", "=", "!"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let mut out = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[s..i].parse().map_err(|_| LogicError::Syntax { pos: s, msg: "number too large".into() })?;
            out.push((s, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'') {
                i += 1;
            }
            out.push((s, Tok::Ident(text[s..i].to_string())));
        } else if let Some(sym) = SYMS.iter().find(|s| text[i..].starts_with(**s)) {
            out.push((i, Tok::Sym(sym)));
            i += sym.len();
        } else {
            return Err(LogicError::Syntax { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    prefix: Vec<Binder>,
    vals: Vec<ValTerm>,
    ints: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LogicError> {
        Err(LogicError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == k)
    }

    fn sym(&mut self, s: &str) -> Result<(), LogicError> {
        if self.is_sym(s) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected {s:?}"))
        }
    }

    fn kw(&mut self, k: &str) -> Result<(), LogicError> {
        if self.is_kw(k) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected {k:?}"))
        }
    }

    fn ident(&mut self) -> Result<String, LogicError> {
        match self.peek() {
            Some(Tok::Ident(x)) => {
                let x = x.clone();
                self.i += 1;
                Ok(x)
            }
            _ => self.err("expected an identifier"),
        }
    }

    /// `exists x in N` starts a matrix quantifier rather than a binder.
    fn integer_binder_ahead(&self) -> bool {
        matches!(self.peek_at(2), Some(Tok::Ident(x)) if x == "in") && matches!(self.peek_at(3), Some(Tok::Ident(x)) if x == "N")
    }

    fn binders(&mut self) -> Result<(), LogicError> {
        loop {
            let q = if self.is_kw("exists") {
                Quantifier::Exists
            } else if self.is_kw("forall") {
                Quantifier::Forall
            } else {
                return Ok(());
            };
            if self.integer_binder_ahead() {
                if q == Quantifier::Forall {
                    return self.err("universal integer quantifiers are outside the existential fragment");
                }
                return Ok(());
            }
            self.i += 1;
            let at = self.pos();
            let var = self.ident()?;
            let sort = if self.is_kw("in") {
                self.i += 1;
                self.kw("R")?;
                self.sym("(")?;
                let a = self.ident()?;
                self.sym(")")?;
                Sort::Resolver(a)
            } else {
                Sort::Word
            };
            self.sym(".")?;
            if self.prefix.iter().any(|b| b.var == var) {
                return Err(LogicError::Syntax { pos: at, msg: format!("variable {var:?} bound twice") });
            }
            self.prefix.push(Binder { quantifier: q, var, sort });
        }
    }

    fn matrix(&mut self, positive: bool) -> Result<Matrix, LogicError> {
        let lhs = self.disj(positive)?;
        if self.is_sym("->") {
            self.i += 1;
            // Re-parse the antecedent polarity: `a -> b` is `!a || b`.
            let lhs = flip_check(lhs, positive)?;
            let rhs = self.matrix(positive)?;
            return Ok(Matrix::Or(Box::new(Matrix::Not(Box::new(lhs))), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disj(&mut self, positive: bool) -> Result<Matrix, LogicError> {
        let mut m = self.conj(positive)?;
        while self.is_sym("||") || self.is_kw("or") {
            self.i += 1;
            m = Matrix::Or(Box::new(m), Box::new(self.conj(positive)?));
        }
        Ok(m)
    }

    fn conj(&mut self, positive: bool) -> Result<Matrix, LogicError> {
        let mut m = self.unary(positive)?;
        while self.is_sym("&&") || self.is_kw("and") {
            self.i += 1;
            m = Matrix::And(Box::new(m), Box::new(self.unary(positive)?));
        }
        Ok(m)
    }

    fn unary(&mut self, positive: bool) -> Result<Matrix, LogicError> {
        if self.is_sym("!") || self.is_kw("not") {
            self.i += 1;
            return Ok(Matrix::Not(Box::new(self.unary(!positive)?)));
        }
        if self.is_kw("exists") || self.is_kw("forall") {
            if self.is_kw("forall") || !positive {
                return Err(LogicError::NotExistential);
            }
            self.i += 1;
            let x = self.ident()?;
            self.kw("in")?;
            self.kw("N")?;
            self.sym(".")?;
            self.ints.push(x.clone());
            let body = self.matrix(positive)?;
            self.ints.pop();
            return Ok(Matrix::Exists(x, Box::new(body)));
        }
        if self.is_kw("true") {
            self.i += 1;
            return Ok(Matrix::True);
        }
        if self.is_kw("false") {
            self.i += 1;
            return Ok(Matrix::False);
        }
        if self.is_sym("(") {
            let save = (self.i, self.vals.len());
            if let Ok(c) = self.comparison() {
                return Ok(c);
            }
            self.i = save.0;
            self.vals.truncate(save.1);
            self.i += 1;
            let m = self.matrix(positive)?;
            self.sym(")")?;
            return Ok(m);
        }
        self.comparison()
    }

    fn comparison(&mut self) -> Result<Matrix, LogicError> {
        let a = self.term()?;
        let op = match self.peek() {
            Some(Tok::Sym("=")) | Some(Tok::Sym("==")) => CmpOp::Eq,
            Some(Tok::Sym("!=")) => CmpOp::Ne,
            Some(Tok::Sym("<")) => CmpOp::Lt,
            Some(Tok::Sym("<=")) => CmpOp::Le,
            Some(Tok::Sym(">")) => CmpOp::Gt,
            Some(Tok::Sym(">=")) => CmpOp::Ge,
            _ => return self.err("expected a comparison"),
        };
        self.i += 1;
        let b = self.term()?;
        Ok(Matrix::Cmp(a, op, b))
    }

    fn term(&mut self) -> Result<Term, LogicError> {
        let mut t = self.prod()?;
        while self.is_sym("+") {
            self.i += 1;
            t = Term::Add(Box::new(t), Box::new(self.prod()?));
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term, LogicError> {
        let mut t = self.atom()?;
        while self.is_sym("*") {
            self.i += 1;
            let u = self.atom()?;
            t = match (t, u) {
                (Term::Int(k), u) => Term::Mul(k, Box::new(u)),
                (t, Term::Int(k)) => Term::Mul(k, Box::new(t)),
                _ => return self.err("multiplication needs a literal factor"),
            };
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, LogicError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Term::Int(n))
            }
            Some(Tok::Sym("(")) => {
                self.i += 1;
                let t = self.term()?;
                self.sym(")")?;
                Ok(t)
            }
            Some(Tok::Ident(x)) if x == "val" => {
                self.i += 1;
                self.sym("(")?;
                let a = self.ident()?;
                self.sym(",")?;
                let f = self.ident()?;
                self.sym(",")?;
                let w = self.ident()?;
                self.sym(")")?;
                let find = |v: &str| self.prefix.iter().position(|b| b.var == v);
                let fi = find(&f).ok_or_else(|| LogicError::Unbound(f.clone()))?;
                let wi = find(&w).ok_or_else(|| LogicError::Unbound(w.clone()))?;
                match &self.prefix[fi].sort {
                    Sort::Resolver(b) if *b == a => {}
                    Sort::Resolver(b) => return Err(LogicError::Sort(format!("{f} ranges over R({b}), not R({a})"))),
                    Sort::Word => return Err(LogicError::Sort(format!("{f} is a word variable"))),
                }
                if self.prefix[wi].sort != Sort::Word {
                    return Err(LogicError::Sort(format!("{w} is not a word variable")));
                }
                let v = ValTerm { automaton: a, resolver: fi, word: wi };
                let idx = match self.vals.iter().position(|x| *x == v) {
                    Some(i) => i,
                    None => {
                        self.vals.push(v);
                        self.vals.len() - 1
                    }
                };
                Ok(Term::Val(idx))
            }
            Some(Tok::Ident(x)) => {
                self.i += 1;
                if self.ints.contains(&x) {
                    Ok(Term::Var(x))
                } else if self.prefix.iter().any(|b| b.var == x) {
                    Err(LogicError::Sort(format!("{x} is not an integer")))
                } else {
                    Err(LogicError::FreeInteger(x))
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

/// Checks that an antecedent contains no integer quantifier (it is negated).
fn flip_check(m: Matrix, positive: bool) -> Result<Matrix, LogicError> {
    fn has_exists(m: &Matrix) -> bool {
        match m {
            Matrix::Exists(..) => true,
            Matrix::Not(x) => has_exists(x),
            Matrix::And(x, y) | Matrix::Or(x, y) => has_exists(x) || has_exists(y),
            _ => false,
        }
    }
    if positive && has_exists(&m) {
        return Err(LogicError::NotExistential);
    }
    Ok(m)
}

/// Parses a formula; `#` comments and blank lines are ignored.
pub fn parse(text: &str) -> Result<ResolverFormula, LogicError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, i: 0, end: text.len(), prefix: Vec::new(), vals: Vec::new(), ints: Vec::new() };
    p.binders()?;
    let matrix = p.matrix(true)?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(ResolverFormula { prefix: p.prefix, matrix, vals: p.vals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_formula() {
        let f = parse("forall f in R(A) . exists g in R(B) . forall w . val(A,f,w) <= val(B,g,w)").unwrap();
        let qs: Vec<_> = f.prefix.iter().map(|b| b.quantifier).collect();
        assert_eq!(qs, [Quantifier::Forall, Quantifier::Exists, Quantifier::Forall]);
        assert_eq!(f.vals.len(), 2);
        assert!(matches!(f.matrix, Matrix::Cmp(Term::Val(0), CmpOp::Le, Term::Val(1))));
        assert_eq!(f.alternations(), 2);
        assert_eq!(f.size(), 5);
    }

    #[test]
    fn hd_formula_and_smoke() {
        let hd = parse("exists g in R(A) . forall f in R(A) . forall w . val(A,f,w) <= val(A,g,w)").unwrap();
        assert_eq!(hd.automata(), ["A"]);
        let f = parse("exists f in R(A). exists w. val(A,f,w) >= 2").unwrap();
        assert_eq!(f.alternations(), 0);
        let round = parse(&f.to_string()).unwrap();
        assert_eq!(round, f);
    }

    #[test]
    fn integer_quantifiers_and_errors() {
        let f = parse("exists f in R(A) . exists w . exists n in N . val(A,f,w) = 2*n").unwrap();
        assert!(matches!(f.matrix, Matrix::Exists(..)));
        assert!(matches!(parse("exists w . val(A,f,w) = 1"), Err(LogicError::Unbound(_))));
        assert!(matches!(parse("exists f in R(A) . exists w . val(B,f,w) = 1"), Err(LogicError::Sort(_))));
        assert!(matches!(parse("exists f in R(A) . exists w . val(A,f,w) = n"), Err(LogicError::FreeInteger(_))));
        assert!(matches!(
            parse("exists f in R(A) . exists w . !(exists n in N . val(A,f,w) = n)"),
            Err(LogicError::NotExistential)
        ));
        assert!(matches!(parse("exists w . 1 <"), Err(LogicError::Syntax { .. })));
        let g = parse("exists f in R(A) . exists w . (val(A,f,w) + 1) * 2 >= 3 && (1 < 2 || false)").unwrap();
        assert!(matches!(g.matrix, Matrix::And(..)));
    }
}
