//! Canonical strings and JSON for polynomials.
//!
//! Grammar accepted by [`parse_polynomial`]:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | name | '(' expr ')'
//! exponent := integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Variables may carry half-integer exponents; parenthesized expressions
//! only nonnegative integer ones. Division is allowed by single terms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{AlgebraError, FactoredRational, LaurentPolynomial, Monomial, VariableSet, Q};

pub fn parse_polynomial(vars: &VariableSet, s: &str) -> Result<LaurentPolynomial, AlgebraError> {
    let mut p = Parser {
        vars,
        src: s.as_bytes(),
        text: s,
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    vars: &'a VariableSet,
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at byte {} of `{}`", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.as_term().is_none() {
                    return Err(self.error("division only by a single term"));
                }
                acc = acc.exact_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<LaurentPolynomial, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                if self.eat('^') {
                    let e = self.exponent()?;
                    if e < 0 || e % 2 != 0 {
                        return Err(self.error("only nonnegative integer powers of expressions"));
                    }
                    return Ok(inner.pow((e / 2) as u32));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(LaurentPolynomial::constant(self.vars.len(), Q::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.ident().to_string();
                let i = self
                    .vars
                    .index(&name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.clone()))?;
                let e = if self.eat('^') { self.exponent()? } else { 2 };
                let mut m = Monomial::one(self.vars.len());
                m.doubled_mut()[i] = e;
                Ok(LaurentPolynomial::monomial(m, Q::one()))
            }
            _ => {
                self.pos = start;
                Err(self.error("expected a number, variable or `(`"))
            }
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        for (off, c) in self.text[start..].char_indices() {
            if !(c.is_alphanumeric() || c == '_') {
                self.pos = start + off;
                return &self.text[start..self.pos];
            }
        }
        self.pos = self.src.len();
        &self.text[start..]
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<i64, AlgebraError> {
        let n = self.integer()?;
        i64::try_from(n).map_err(|_| self.error("exponent too large"))
    }

    /// Exponent in doubled units.
    fn exponent(&mut self) -> Result<i32, AlgebraError> {
        let (num, den) = if self.eat('(') {
            let neg = self.eat('-');
            let mut n = self.small_int()?;
            if neg {
                n = -n;
            }
            let d = if self.eat('/') { self.small_int()? } else { 1 };
            if !self.eat(')') {
                return Err(self.error("expected `)` after exponent"));
            }
            (n, d)
        } else {
            (self.small_int()?, 1)
        };
        if den == 0 || (2 * num) % den != 0 {
            return Err(self.error("exponent is not a multiple of 1/2"));
        }
        i32::try_from(2 * num / den).map_err(|_| self.error("exponent too large"))
    }
}

fn format_exponent(doubled: i32) -> String {
    let g = doubled.gcd(&super::EXP_DENOM);
    let (n, d) = (doubled / g, super::EXP_DENOM / g);
    match (n, d) {
        (1, 1) => String::new(),
        (n, 1) if n > 0 => format!("^{n}"),
        (n, 1) => format!("^({n})"),
        (n, d) => format!("^({n}/{d})"),
    }
}

/// `v1^(p/2) * v2 * ...`, or `1` for the trivial monomial.
pub fn format_monomial(vars: &VariableSet, m: &Monomial) -> String {
    let parts: Vec<String> = vars
        .names()
        .iter()
        .zip(m.doubled())
        .filter(|(_, e)| **e != 0)
        .map(|(n, e)| format!("{n}{}", format_exponent(*e)))
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    }
}

/// Canonical string: terms in increasing lexicographic monomial order.
pub fn format_polynomial(vars: &VariableSet, p: &LaurentPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&format_monomial(vars, m));
        } else {
            out.push_str(&format!("{a} * {}", format_monomial(vars, m)));
        }
    }
    out
}

/// `(prefactor) * (f1)^k1 * ...` with factors in canonical order.
pub fn format_factored(vars: &VariableSet, f: &FactoredRational) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let pre = LaurentPolynomial::monomial(f.monomial().clone(), f.scalar().clone());
    let mut out = format_polynomial(vars, &pre);
    for (p, m) in f.factors() {
        let e = if m < 0 { format!("({m})") } else { m.to_string() };
        out.push_str(&format!(" * ({})^{e}", format_polynomial(vars, p)));
    }
    out
}

fn rational_string(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn parse_rational(s: &str) -> Result<Q, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// JSON form `{"vars":[...],"terms":[{"e":[...],"c":"n/d"}]}`; `e` holds
/// the stored doubled exponents.
pub fn polynomial_to_json(vars: &VariableSet, p: &LaurentPolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({"e": m.doubled(), "c": rational_string(c)}))
        .collect();
    json!({"vars": vars.names(), "terms": terms})
}

pub fn polynomial_from_json(v: &Value) -> Result<(VariableSet, LaurentPolynomial), AlgebraError> {
    let bad = |m: &str| AlgebraError::Parse(format!("polynomial JSON: {m}"));
    let names: Vec<&str> = v["vars"]
        .as_array()
        .ok_or_else(|| bad("missing vars"))?
        .iter()
        .map(|n| n.as_str().ok_or_else(|| bad("variable name is not a string")))
        .collect::<Result<_, _>>()?;
    let vars = VariableSet::new(&names);
    let mut p = LaurentPolynomial::zero(vars.len());
    for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
        let e: Vec<i32> = t["e"]
            .as_array()
            .ok_or_else(|| bad("missing e"))?
            .iter()
            .map(|x| {
                x.as_i64()
                    .and_then(|x| i32::try_from(x).ok())
                    .ok_or_else(|| bad("exponent"))
            })
            .collect::<Result<_, _>>()?;
        if e.len() != vars.len() {
            return Err(bad("exponent length"));
        }
        let c = parse_rational(t["c"].as_str().ok_or_else(|| bad("missing c"))?)?;
        p.add_term(Monomial::from_doubled(e), c);
    }
    Ok((vars, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let v = VariableSet::new(&["t1", "t2", "k"]);
        let p = v.parse("3/2 * t1^(1/2) - t2^(-1) * k^3 + 1 - (t1 - 1)^2").unwrap();
        let s = format_polynomial(&v, &p);
        assert_eq!(s, "-t2^(-1) * k^3 + 3/2 * t1^(1/2) + 2 * t1 - t1^2");
        assert_eq!(v.parse(&s).unwrap(), p);
    }

    #[test]
    fn zero_and_constants() {
        let v = VariableSet::new(&["z"]);
        assert_eq!(format_polynomial(&v, &v.parse("z - z").unwrap()), "0");
        assert_eq!(format_polynomial(&v, &v.parse("-5").unwrap()), "-5");
    }

    #[test]
    fn json_round_trip() {
        let v = VariableSet::new(&["a", "h"]);
        let p = v.parse("a^(-1) - 7*h^(1/2)").unwrap();
        let j = polynomial_to_json(&v, &p);
        assert_eq!(j["terms"][0]["e"], json!([-2, 0]));
        assert_eq!(j["terms"][0]["c"], json!("1/1"));
        let (v2, p2) = polynomial_from_json(&j).unwrap();
        assert_eq!(v2, v);
        assert_eq!(p2, p);
    }

    #[test]
    fn rejects_bad_input() {
        let v = VariableSet::new(&["t"]);
        assert!(matches!(v.parse("t^(1/3)"), Err(AlgebraError::Parse(_))));
        assert!(matches!(v.parse("u"), Err(AlgebraError::UnknownVariable(_))));
        assert!(matches!(v.parse("(1+t)^(1/2)"), Err(AlgebraError::Parse(_))));
        assert!(matches!(v.parse("1 +"), Err(AlgebraError::Parse(_))));
    }
}
