//! Parsing of `--xi`, `--matrix` and `--n` inputs.

use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{invalid, Result};
use crate::extended::Extended;
use crate::matrix::{ReciprocalMatrix, XiParameters};
use crate::scalar::Scalar;

/// Conversion of an exact rational literal into a scalar backend.
pub trait FromLiteral: Scalar {
    fn from_literal(text: &str) -> Result<Self>;
}

impl FromLiteral for f64 {
    fn from_literal(text: &str) -> Result<Self> {
        text.parse::<f64>().or_else(|_| invalid(format!("malformed number {text:?}")))
    }
}

impl FromLiteral for crate::algebraic::Algebraic {
    fn from_literal(text: &str) -> Result<Self> {
        Self::parse(text)
    }
}

impl FromLiteral for Extended {
    fn from_literal(text: &str) -> Result<Self> {
        Extended::parse(text)
    }
}

/// Recursive-descent evaluator for `+ - * /`, parentheses, numeric literals
/// and the constants `sqrt3`, `sqrt5`, `phi`, `c7`, `c7_2`, `c7_3`
/// (`c7_j = 2cos(j pi/7)`).
struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    /// Next non-blank character, skipping the blanks.
    fn peek(&mut self) -> Option<char> {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        self.pos += self.text[self.pos..].chars().next().map_or(0, char::len_utf8);
    }

    fn expr<T: FromLiteral>(&mut self) -> Result<T> {
        let mut value = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            value = if op == '+' { value + rhs } else { value - rhs };
        }
        Ok(value)
    }

    fn term<T: FromLiteral>(&mut self) -> Result<T> {
        let mut value = self.factor()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.bump();
            let rhs: T = self.factor()?;
            if op == '*' {
                value = value * rhs;
            } else if rhs.is_zero() {
                return invalid(format!("division by zero in {:?}", self.text));
            } else {
                value = value / rhs;
            }
        }
        Ok(value)
    }

    fn factor<T: FromLiteral>(&mut self) -> Result<T> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(-self.factor::<T>()?)
            }
            Some('(') => {
                self.bump();
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return invalid(format!("missing ')' in {:?}", self.text));
                }
                self.bump();
                Ok(v)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let rest = &self.text[self.pos..];
                let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
                let name = &rest[..len];
                self.pos += len;
                match name {
                    "sqrt3" => Ok(T::sqrt3()),
                    "sqrt5" => Ok(T::from_int(2) * T::golden() - T::one()),
                    "phi" => Ok(T::golden()),
                    "c7" => Ok(T::two_cos_pi7(1)),
                    "c7_2" => Ok(T::two_cos_pi7(2)),
                    "c7_3" => Ok(T::two_cos_pi7(3)),
                    _ => invalid(format!("unknown constant {name:?}")),
                }
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let rest = &self.text[self.pos..];
                let mut len = 0;
                let bytes = rest.as_bytes();
                while len < bytes.len() {
                    let c = bytes[len] as char;
                    let exp_sign = (c == '-' || c == '+') && len > 0 && matches!(bytes[len - 1], b'e' | b'E');
                    if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exp_sign {
                        len += 1;
                    } else {
                        break;
                    }
                }
                self.pos += len;
                T::from_literal(&rest[..len])
            }
            _ => invalid(format!("malformed number {:?}", self.text)),
        }
    }
}

/// Evaluate one `--xi` entry.
pub fn parse_value<T: FromLiteral>(text: &str) -> Result<T> {
    let mut p = Parser { text, pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return invalid(format!("trailing characters in {text:?}"));
    }
    Ok(v)
}

/// Comma-separated `xi` values.
pub fn parse_xi_csv<T: FromLiteral>(csv: &str) -> Result<Vec<T>> {
    let values: Vec<T> = csv.split(',').map(parse_value).collect::<Result<_>>()?;
    if let Some(j) = values.iter().position(|v| !v.to_f64().is_finite() || v.to_f64() < 0.0) {
        return invalid(format!("xi_{} must be finite and nonnegative", j + 1));
    }
    Ok(values)
}

/// Significant digits of the longest decimal literal in `text`, counting
/// only literals with a decimal point.
pub fn literal_digits(text: &str) -> usize {
    text.split(|c: char| !(c.is_ascii_digit() || c == '.'))
        .filter(|t| t.contains('.'))
        .map(|t| t.chars().filter(char::is_ascii_digit).collect::<String>().trim_start_matches('0').len())
        .max()
        .unwrap_or(0)
}

/// The request, normalized: xi (kept as text when given literally) and a matrix.
#[derive(Debug, Clone)]
pub struct Input {
    pub xi: Vec<f64>,
    pub xi_text: Option<Vec<String>>,
    pub matrix: ReciprocalMatrix,
}

impl Input {
    pub fn n(&self) -> usize {
        self.matrix.dim()
    }

    /// `xi` in a scalar backend; exact when given as literals.
    pub fn xi_as<T: FromLiteral>(&self) -> Result<Vec<T>> {
        match &self.xi_text {
            Some(text) => text.iter().map(|t| parse_value(t)).collect(),
            None => self.xi.iter().map(|v| T::from_literal(&format!("{v:e}"))).collect(),
        }
    }
}

fn from_xi(xi: Vec<f64>, text: Option<Vec<String>>) -> Result<Input> {
    let params = XiParameters::new(xi.clone())?;
    Ok(Input { matrix: ReciprocalMatrix::from_xi(&params), xi, xi_text: text })
}

fn pair(v: &Value) -> Option<Complex64> {
    let a = v.as_array()?;
    match a.as_slice() {
        [re, im] => Some(Complex64::new(re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

/// `{"n": .., "superdiag": [[re, im], ..]}` or `{"xi": [..]}`, inline or in a file.
pub fn parse_matrix_json(arg: &str) -> Result<Input> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).or_else(|e| invalid(format!("cannot read {arg}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).or_else(|e| invalid(format!("malformed JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| crate::Error::InvalidInput("matrix JSON must be an object".into()))?;
    match (obj.get("xi"), obj.get("superdiag")) {
        (Some(_), Some(_)) => invalid("give either \"xi\" or \"superdiag\", not both"),
        (Some(xi), None) => {
            let xi: Option<Vec<f64>> = xi.as_array().and_then(|a| a.iter().map(Value::as_f64).collect());
            from_xi(xi.ok_or_else(|| crate::Error::InvalidInput("\"xi\" must be an array of numbers".into()))?, None)
        }
        (None, Some(sd)) => {
            let entries: Option<Vec<Complex64>> = sd.as_array().and_then(|a| a.iter().map(pair).collect());
            let entries = entries
                .ok_or_else(|| crate::Error::InvalidInput("\"superdiag\" must be an array of [re, im] pairs".into()))?;
            if let Some(n) = obj.get("n") {
                let n = n.as_u64().ok_or_else(|| crate::Error::InvalidInput("\"n\" must be an integer".into()))?;
                if n as usize != entries.len() + 1 {
                    return invalid(format!("n = {n} but superdiag has {} entries", entries.len()));
                }
            }
            let matrix = ReciprocalMatrix::from_superdiagonal(entries)?;
            Ok(Input { xi: matrix.xi().values().to_vec(), xi_text: None, matrix })
        }
        (None, None) => invalid("matrix JSON needs \"xi\" or \"superdiag\""),
    }
}

/// Random xi in `[0, 3)` for dimension `n`.
pub fn random_input(n: usize, seed: u64) -> Result<Input> {
    if n < 2 {
        return invalid(format!("n must be at least 2, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    from_xi((1..n).map(|_| rng.random_range(0.0..3.0)).collect(), None)
}

/// Exactly one of the three input forms.
pub fn resolve(xi: Option<&str>, matrix: Option<&str>, n: Option<usize>, seed: u64) -> Result<Input> {
    match (xi, matrix, n) {
        (Some(csv), None, None) => {
            let values: Vec<f64> = parse_xi_csv(csv)?;
            from_xi(values, Some(csv.split(',').map(|s| s.trim().to_string()).collect()))
        }
        (None, Some(m), None) => parse_matrix_json(m),
        (None, None, Some(n)) => random_input(n, seed),
        (None, None, None) => invalid("one of --xi, --matrix or --n is required"),
        _ => invalid("--xi, --matrix and --n are mutually exclusive"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::Algebraic;

    #[test]
    fn expressions() {
        let v: f64 = parse_value("1+sqrt3/2").unwrap();
        assert!((v - (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-15);
        let e: Algebraic = parse_value("1 + sqrt3/2").unwrap();
        assert_eq!(e, Algebraic::from_int(1) + Algebraic::sqrt3() / Algebraic::from_int(2));
        let e: Algebraic = parse_value("-(phi - 1/phi)").unwrap();
        assert_eq!(e, -Algebraic::from_int(1));
        let e: Algebraic = parse_value("0.801938").unwrap();
        assert_eq!(e, Algebraic::from_ratio(400969, 500000));
        let v: f64 = parse_value("2.5e-3").unwrap();
        assert_eq!(v, 2.5e-3);
        assert!(parse_value::<f64>("1/0").is_err());
        assert!(parse_value::<f64>("abc").is_err());
        assert!(parse_value::<f64>("1 2").is_err());
        assert_eq!(literal_digits("0.801938,1,0"), 6);
        assert_eq!(literal_digits("0.5,1+sqrt3/2"), 1);
        assert_eq!(literal_digits("2.80194"), 6);
    }

    #[test]
    fn input_forms() {
        assert_eq!(resolve(Some("1,0,1"), None, None, 0).unwrap().n(), 4);
        assert!(resolve(Some("1,-1,1"), None, None, 0).is_err());
        assert!(resolve(None, None, None, 0).is_err());
        assert!(resolve(Some("1"), Some("{}"), None, 0).is_err());
        let m = resolve(None, Some(r#"{"n": 3, "superdiag": [[2, 0], [0, 1]]}"#), None, 0).unwrap();
        assert!((m.xi[0] - 0.5625).abs() < 1e-15 && m.xi[1] == 0.0);
        assert!(resolve(None, Some(r#"{"n": 4, "superdiag": [[2, 0], [0, 1]]}"#), None, 0).is_err());
        assert!(resolve(None, Some(r#"{"xi": [1], "superdiag": [[1, 0]]}"#), None, 0).is_err());
        assert!(resolve(None, Some("{not json"), None, 0).is_err());
        assert!(resolve(None, Some(r#"{"superdiag": [[0, 0]]}"#), None, 0).is_err());
        let r = resolve(None, None, Some(5), 3).unwrap();
        assert_eq!(r.xi, resolve(None, None, Some(5), 3).unwrap().xi);
    }
}
