//! Expression syntax for polynomials and operator applications.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := 'x' nat | '0' | '1' | 'V(' nat ')' | 'Q(' nat ',' nat ')'
//!         | 'Sq(' nat ')' '{' expr '}' | 'Chi(' nat ')' '{' expr '}'
//!         | 'Word[' op (',' op)* ']' '{' expr '}' | '(' expr ')'
//! op     := 'Sq' nat | 'Chi' nat
//! ```
//!
//! Whitespace between tokens is ignored.

use std::fmt;

use thiserror::Error;

use crate::dickson::{dickson_q, v_poly, DicksonError};
use crate::f2poly::{F2Error, Polynomial};
use crate::steenrod::{chi_sq, sq, OpKind, OperatorWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `x<k>`, with `k >= 1`.
    Var(usize),
    Zero,
    One,
    V(usize),
    Q(usize, usize),
    /// At least two terms.
    Sum(Vec<Expr>),
    /// At least two factors.
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Sq(u32, Box<Expr>),
    Chi(u32, Box<Expr>),
    Word(OperatorWord, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: found {found}, expected {}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("x{index} needs --vars {index} or more (have {nvars})")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("{what} needs --vars {needed} or more (have {nvars})")]
    TooFewVariables {
        what: String,
        needed: usize,
        nvars: usize,
    },
    #[error("Q({n},{s}) is undefined: need 0 <= s <= n and n >= 1")]
    BadDickson { n: usize, s: usize },
    #[error(transparent)]
    Poly(#[from] F2Error),
    #[error(transparent)]
    Dickson(#[from] DicksonError),
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(&["'+'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        ParseError {
            line,
            column,
            found,
            expected: expected.to_vec(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    /// A keyword directly at the cursor, not followed by more letters.
    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let n = word.chars().count();
        let end = self.pos + n;
        if end <= self.chars.len()
            && self.chars[self.pos..end].iter().copied().eq(word.chars())
            && !self.chars.get(end).is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["number"]));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse::<u32>().map(u64::from).map_err(|_| {
            self.pos = start;
            self.error(&["number below 2^32"])
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.nat()? as u32;
            return Ok(Expr::Power(Box::new(base), e));
        }
        Ok(base)
    }

    fn braced(&mut self) -> Result<Box<Expr>, ParseError> {
        self.expect('{', "'{'")?;
        let e = self.expr()?;
        self.expect('}', "'}'")?;
        Ok(Box::new(e))
    }

    fn paren_nat(&mut self) -> Result<u64, ParseError> {
        self.expect('(', "'('")?;
        let k = self.nat()?;
        self.expect(')', "')'")?;
        Ok(k)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        const ATOMS: &[&str] = &[
            "'x<k>'", "'0'", "'1'", "'V('", "'Q('", "'Sq('", "'Chi('", "'Word['", "'('",
        ];
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let at = self.pos;
                let k = self.nat()?;
                if k == 0 {
                    self.pos = at;
                    return Err(self.error(&["variable index >= 1"]));
                }
                Ok(Expr::Var(k as usize))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')', "')'")?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                match self.nat()? {
                    0 => Ok(Expr::Zero),
                    1 => Ok(Expr::One),
                    _ => {
                        self.pos = at;
                        Err(self.error(&["'0'", "'1'"]))
                    }
                }
            }
            _ if self.keyword("V") => Ok(Expr::V(self.paren_nat()? as usize)),
            _ if self.keyword("Q") => {
                self.expect('(', "'('")?;
                let n = self.nat()? as usize;
                self.expect(',', "','")?;
                let s = self.nat()? as usize;
                self.expect(')', "')'")?;
                Ok(Expr::Q(n, s))
            }
            _ if self.keyword("Sq") => {
                let i = self.paren_nat()? as u32;
                Ok(Expr::Sq(i, self.braced()?))
            }
            _ if self.keyword("Chi") => {
                let i = self.paren_nat()? as u32;
                Ok(Expr::Chi(i, self.braced()?))
            }
            _ if self.keyword("Word") => {
                self.expect('[', "'['")?;
                let mut factors = Vec::new();
                loop {
                    let kind = if self.keyword("Sq") {
                        OpKind::Sq
                    } else if self.keyword("Chi") {
                        OpKind::ChiSq
                    } else {
                        return Err(self.error(&["'Sq'", "'Chi'"]));
                    };
                    factors.push((kind, self.nat()? as u32));
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(']', "']'")?;
                Ok(Expr::Word(OperatorWord::new(factors), self.braced()?))
            }
            _ => Err(self.error(ATOMS)),
        }
    }
}

impl Expr {
    fn is_atomic(&self) -> bool {
        !matches!(self, Expr::Sum(_) | Expr::Product(_) | Expr::Power(..))
    }

    /// Smallest variable count that covers every leaf.
    pub fn min_vars(&self) -> usize {
        match self {
            Expr::Var(k) | Expr::V(k) | Expr::Q(k, _) => *k,
            Expr::Zero | Expr::One => 0,
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().map(Expr::min_vars).max().unwrap_or(0),
            Expr::Power(e, _) | Expr::Sq(_, e) | Expr::Chi(_, e) | Expr::Word(_, e) => e.min_vars(),
        }
    }

    pub fn eval(&self, nvars: usize) -> Result<Polynomial, EvalError> {
        if nvars == 0 {
            return Err(F2Error::NoVariables.into());
        }
        Ok(match self {
            Expr::Var(k) => {
                if *k > nvars {
                    return Err(EvalError::VariableOutOfRange { index: *k, nvars });
                }
                Polynomial::var(nvars, k - 1)?
            }
            Expr::Zero => Polynomial::zero(nvars),
            Expr::One => Polynomial::one(nvars),
            Expr::V(n) => {
                if *n == 0 {
                    return Err(F2Error::NoVariables.into());
                }
                self.check_vars(*n, nvars)?;
                v_poly(*n)?.embed(nvars)?
            }
            Expr::Q(n, s) => {
                if *n == 0 || s > n {
                    return Err(EvalError::BadDickson { n: *n, s: *s });
                }
                self.check_vars(*n, nvars)?;
                dickson_q(*n, *s)?.embed(nvars)?
            }
            Expr::Sum(xs) => {
                let mut acc = Polynomial::zero(nvars);
                for x in xs {
                    acc = &acc + &x.eval(nvars)?;
                }
                acc
            }
            Expr::Product(xs) => {
                let mut acc = Polynomial::one(nvars);
                for x in xs {
                    acc = &acc * &x.eval(nvars)?;
                }
                acc
            }
            Expr::Power(e, k) => e.eval(nvars)?.try_pow(*k as u64)?,
            Expr::Sq(i, e) => sq(*i, &e.eval(nvars)?),
            Expr::Chi(i, e) => chi_sq(*i, &e.eval(nvars)?),
            Expr::Word(w, e) => w.apply(&e.eval(nvars)?),
        })
    }

    fn check_vars(&self, needed: usize, nvars: usize) -> Result<(), EvalError> {
        if needed > nvars {
            return Err(EvalError::TooFewVariables {
                what: self.to_string(),
                needed,
                nvars,
            });
        }
        Ok(())
    }
}

/// Canonical syntax; parsing the output gives back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(k) => write!(f, "x{k}"),
            Expr::Zero => write!(f, "0"),
            Expr::One => write!(f, "1"),
            Expr::V(n) => write!(f, "V({n})"),
            Expr::Q(n, s) => write!(f, "Q({n},{s})"),
            Expr::Sum(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    if matches!(x, Expr::Sum(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Expr::Product(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(x, Expr::Sum(_) | Expr::Product(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            Expr::Power(e, k) if e.is_atomic() => write!(f, "{e}^{k}"),
            Expr::Power(e, k) => write!(f, "({e})^{k}"),
            Expr::Sq(i, e) => write!(f, "Sq({i}){{{e}}}"),
            Expr::Chi(i, e) => write!(f, "Chi({i}){{{e}}}"),
            Expr::Word(w, e) => {
                write!(f, "Word[")?;
                for (k, (kind, i)) in w.factors().iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    match kind {
                        OpKind::Sq => write!(f, "Sq {i}")?,
                        OpKind::ChiSq => write!(f, "Chi {i}")?,
                    }
                }
                write!(f, "]{{{e}}}")
            }
        }
    }
}

/// Parse and evaluate in one go.
pub fn eval_str(
    text: &str,
    nvars: usize,
) -> Result<Polynomial, Box<dyn std::error::Error + Send + Sync>> {
    Ok(parse(text)?.eval(nvars)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let e = parse("x1^2*x2 + x3").unwrap();
        assert!(matches!(&e, Expr::Sum(xs) if xs.len() == 2));
        assert!(matches!(parse("Sq(1){Q(2,1)}").unwrap(), Expr::Sq(1, _)));
        assert!(matches!(
            parse(" Word[Sq 8, Chi 4]{ x1 }").unwrap(),
            Expr::Word(..)
        ));
    }

    #[test]
    fn error_positions() {
        let e = parse("Q(2,").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert_eq!(e.expected, vec!["number"]);
        assert_eq!(e.found, "end of input");
        let e = parse("x1 +\n  x0").unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
        let e = parse("x1 x2").unwrap_err();
        assert_eq!(e.column, 4);
        assert!(e.expected.contains(&"'*'"));
        assert!(parse("2").is_err());
        assert!(parse("Sqrt(1){x1}").is_err());
        assert!(parse("x99999999999").is_err());
    }

    #[test]
    fn evaluation() {
        let q20 = dickson_q(2, 0).unwrap();
        assert_eq!(eval_str("Sq(1){Q(2,1)}", 2).unwrap(), q20);
        assert_eq!(eval_str("V(2)", 2).unwrap().to_string(), "x1*x2 + x2^2");
        assert!(eval_str("0", 1).unwrap().is_zero());
        assert_eq!(
            eval_str("(x1 + x2)^2", 2).unwrap().to_string(),
            "x1^2 + x2^2"
        );
        assert_eq!(
            eval_str("Word[Sq 2, Sq 1]{x1}", 1).unwrap(),
            eval_str("x1^4", 1).unwrap()
        );
        assert_eq!(eval_str("Chi(2){x1}", 1).unwrap().to_string(), "0");
        assert_eq!(eval_str("Chi(1){x1}", 1).unwrap().to_string(), "x1^2");
    }

    #[test]
    fn too_few_variables() {
        assert!(matches!(
            parse("x3").unwrap().eval(2),
            Err(EvalError::VariableOutOfRange { index: 3, nvars: 2 })
        ));
        assert!(parse("Q(3,1)").unwrap().eval(2).is_err());
        assert!(parse("Q(2,3)").unwrap().eval(2).is_err());
        assert_eq!(parse("Sq(1){Q(3,1) + x4}").unwrap().min_vars(), 4);
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "x1^2*x2 + x3",
            "(x1 + x2)*(x1 + 1)",
            "((x1 + x2))^3",
            "(x1*x2)^2 + (x1 + (x2 + x3))",
            "Word[Sq 8, Chi 4]{V(3)*Q(3,0)^2}",
            "Chi(3){Sq(2){x1*x2}}",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }

    #[test]
    fn polynomial_display_is_valid_syntax() {
        let p = dickson_q(3, 0).unwrap();
        assert_eq!(eval_str(&p.to_string(), 3).unwrap(), p);
    }
}
