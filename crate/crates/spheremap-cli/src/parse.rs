//! Recursive-descent parser for polynomial expressions over the exact
//! scalar field. The accepted syntax:
//!
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)*
//! atom   := rational | 'i' | 'sqrt' '(' rational ')' | var | '(' expr ')'
//! var    := 'z' nat
//!
//! Rationals are unsigned `nat` or `nat/nat`; signs come from the term
//! level, so the printer never needs parenthesized negatives. Nothing
//! else is representable on purpose: `sqrt` of anything but a positive
//! rational literal is rejected up front.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use spheremap_core::{Poly, RadicalScalar, Rational};

#[derive(Clone, Debug)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(BigUint),
    Var(usize),
    Imag,
    Sqrt,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(n) => format!("number '{n}'"),
            Tok::Var(k) => format!("variable 'z{}'", k + 1),
            Tok::Imag => "'i'".into(),
            Tok::Sqrt => "'sqrt'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let col = pos + 1;
        let c = chars[pos];
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().collect();
                out.push((Tok::Nat(digits.parse().expect("digits")), col));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_alphabetic() {
                    pos += 1;
                }
                let word: String = chars[start..pos].iter().collect();
                match word.as_str() {
                    "i" => {
                        out.push((Tok::Imag, col));
                        continue;
                    }
                    "sqrt" => {
                        out.push((Tok::Sqrt, col));
                        continue;
                    }
                    "z" => {
                        let digit_start = pos;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        if pos == digit_start {
                            return Err(ParseError::new(
                                line,
                                col,
                                "expected a variable index after 'z'",
                            ));
                        }
                        let digits: String = chars[digit_start..pos].iter().collect();
                        let index: usize = digits.parse().map_err(|_| {
                            ParseError::new(line, col, "variable index out of range")
                        })?;
                        if index == 0 {
                            return Err(ParseError::new(
                                line,
                                col,
                                "unknown variable 'z0': indices start at 1",
                            ));
                        }
                        out.push((Tok::Var(index - 1), col));
                        continue;
                    }
                    _ => {
                        return Err(ParseError::new(
                            line,
                            col,
                            format!("unknown name '{word}'"),
                        ))
                    }
                }
            }
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    format!("unexpected character '{other}'"),
                ))
            }
        };
        out.push((tok, col));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    num_vars: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.end_column)
    }

    fn advance(&mut self) -> Option<Tok> {
        let tok = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                t.describe()
            ))),
            None => Err(self.error(format!("expected {}", want.describe()))),
        }
    }

    fn nat(&mut self, what: &str) -> Result<BigUint, ParseError> {
        match self.peek() {
            Some(Tok::Nat(_)) => {
                let Some(Tok::Nat(n)) = self.advance() else { unreachable!() };
                Ok(n)
            }
            Some(t) => {
                let t = t.describe();
                Err(self.error(format!("expected {what}, found {t}")))
            }
            None => Err(self.error(format!("expected {what}"))),
        }
    }

    /// nat ['/' nat], already knowing the next token is a Nat.
    fn rational(&mut self) -> Result<Rational, ParseError> {
        let numerator = self.nat("a number")?;
        let denominator = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let col = self.column();
            let d = self.nat("a denominator")?;
            if d.is_zero() {
                return Err(ParseError::new(self.line, col, "division by zero"));
            }
            d
        } else {
            BigUint::one()
        };
        Ok(Rational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(Tok::Nat(_)) => {
                let q = self.rational()?;
                Ok(Poly::constant(
                    self.num_vars,
                    RadicalScalar::from_rational(q),
                ))
            }
            Some(Tok::Imag) => {
                self.pos += 1;
                Ok(Poly::constant(self.num_vars, RadicalScalar::i()))
            }
            Some(Tok::Sqrt) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let col = self.column();
                if !matches!(self.peek(), Some(Tok::Nat(_))) {
                    return Err(ParseError::new(
                        self.line,
                        col,
                        "non-representable coefficient: sqrt takes a positive rational literal",
                    ));
                }
                let q = self.rational()?;
                if q.is_zero() {
                    return Err(ParseError::new(
                        self.line,
                        col,
                        "sqrt argument must be positive",
                    ));
                }
                self.expect(Tok::RParen)?;
                let root = RadicalScalar::sqrt_of_positive_rational(&q)
                    .expect("positive by construction");
                Ok(Poly::constant(self.num_vars, root))
            }
            Some(&Tok::Var(index)) => {
                if index >= self.num_vars {
                    return Err(self.error(format!(
                        "unknown variable 'z{}': the map has {} source variable{}",
                        index + 1,
                        self.num_vars,
                        if self.num_vars == 1 { "" } else { "s" }
                    )));
                }
                self.pos += 1;
                Ok(Poly::var(self.num_vars, index))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => {
                let t = t.describe();
                Err(self.error(format!("expected a value, found {t}")))
            }
            None => Err(self.error("expected a value")),
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let col = self.column();
            let e = self.nat("a nonnegative integer exponent")?;
            let e: u32 = e.to_u32().ok_or_else(|| {
                ParseError::new(self.line, col, "exponent too large")
            })?;
            base = base.pow(e);
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut product = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            product = &product * &self.factor()?;
        }
        Ok(product)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut total = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    total = &total + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    total = &total - &self.term()?;
                }
                _ => return Ok(total),
            }
        }
    }
}

/// Parses one polynomial expression in `num_vars` variables. `line` is
/// the 1-based document line used in error positions.
pub fn parse_expression(text: &str, num_vars: usize, line: usize) -> Result<Poly, ParseError> {
    let tokens = lex(text, line)?;
    if tokens.is_empty() {
        return Err(ParseError::new(line, 1, "empty expression"));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        num_vars,
        line,
        end_column: text.chars().count() + 1,
    };
    let poly = parser.expr()?;
    if let Some(t) = parser.peek() {
        let t = t.describe();
        return Err(parser.error(format!("unexpected {t} after the expression")));
    }
    Ok(poly)
}

/// Parses a standalone rational such as `5`, `1/4` or `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let trimmed = text.trim();
    let (negative, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, trimmed),
    };
    let (num_str, den_str) = match body.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (body, "1"),
    };
    let parse_nat = |s: &str| -> Result<BigUint, String> {
        if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("'{trimmed}' is not a rational number"));
        }
        Ok(s.parse().expect("digits"))
    };
    let numerator = parse_nat(num_str)?;
    let denominator = parse_nat(den_str)?;
    if denominator.is_zero() {
        return Err(format!("'{trimmed}' divides by zero"));
    }
    let mut q = Rational::new(BigInt::from(numerator), BigInt::from(denominator));
    if negative {
        q = -q;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spheremap_core::scalar::{rat, rat_int};
    use spheremap_core::Monomial;

    fn parse2(text: &str) -> Poly {
        parse_expression(text, 2, 1).unwrap()
    }

    #[test]
    fn parses_the_usual_shapes() {
        assert_eq!(parse2("z1"), Poly::var(2, 0));
        assert_eq!(
            parse2("2/5*sqrt(5)*z1^3"),
            Poly::term(
                2,
                Monomial::new(vec![3, 0]),
                RadicalScalar::sqrt_of_positive_rational(&rat(4, 5)).unwrap()
            )
        );
        assert_eq!(
            parse2("sqrt(2)*z1*z2"),
            Poly::term(
                2,
                Monomial::new(vec![1, 1]),
                RadicalScalar::sqrt_of_positive_rational(&rat_int(2)).unwrap()
            )
        );
        let sum = parse2("3 - 1/2*z1^2 + sqrt(2)*z1*z2");
        assert_eq!(sum.coeff(&Monomial::one(2)), RadicalScalar::from_int(3));
        assert_eq!(
            sum.coeff(&Monomial::new(vec![2, 0])),
            RadicalScalar::from_rational(rat(-1, 2))
        );
    }

    #[test]
    fn respects_precedence_and_parentheses() {
        assert_eq!(parse2("2*z1 + z2"), parse2("z2 + 2*z1"));
        assert_eq!(parse2("2*(z1 + z2)"), parse2("2*z1 + 2*z2"));
        assert_eq!(parse2("(z1 + z2)^2"), parse2("z1^2 + 2*z1*z2 + z2^2"));
        assert_eq!(parse2("-z1 + z2"), parse2("z2 - z1"));
        assert_eq!(
            parse2("(1/2 - 1/3*i)*sqrt(3)*z1"),
            parse2("1/2*sqrt(3)*z1 - 1/3*i*sqrt(3)*z1")
        );
    }

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(parse2("i*i + 1"), Poly::zero(2));
        assert_eq!(parse2("i^2"), parse2("0 - 1"));
    }

    #[test]
    fn reports_positions_and_causes() {
        let e = parse_expression("z1^-1", 2, 4).unwrap_err();
        assert_eq!((e.line, e.column), (4, 4));
        assert!(e.message.contains("exponent"));

        let e = parse_expression("sqrt(sqrt(2))", 2, 1).unwrap_err();
        assert!(e.message.contains("non-representable"));

        let e = parse_expression("z3 + z1", 2, 1).unwrap_err();
        assert!(e.message.contains("unknown variable 'z3'"));

        let e = parse_expression("z1 + + z2", 2, 1).unwrap_err();
        assert_eq!(e.column, 6);

        let e = parse_expression("1/0", 2, 1).unwrap_err();
        assert!(e.message.contains("division by zero"));

        assert!(parse_expression("", 2, 1).is_err());
        assert!(parse_expression("z1 z2", 2, 1).is_err());
    }

    #[test]
    fn rational_literals_cover_signs_and_fractions() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(" -3/2 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
