//! Text grammar for polynomial forms, e.g. `2/3 x^2 y dx^dz - w dy`.
//!
//! Variables are `x1..xN`, with `x y z w` as aliases for the first four;
//! differentials are the same names prefixed by `d`. Terms are separated
//! by `+` or `-`; within a term, factors are juxtaposed and the optional
//! differential part comes last as a `^`-joined chain.

use num::{BigInt, One};

use super::{Coeff, PolyForm};
use crate::error::FormsError;
use crate::linalg::Rational;

/// Parse a form in `n` variables.
pub fn parse_form(input: &str, n: usize) -> Result<PolyForm, FormsError> {
    let mut parser = Parser { input: input.as_bytes(), pos: 0, n };
    parser.form()
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> FormsError {
        FormsError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && (self.input[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.input.get(self.pos).map(|&b| b as char)
    }

    fn form(&mut self) -> Result<PolyForm, FormsError> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some('-') {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        let mut acc = self.term(negate)?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term(false)?;
                    acc = add_mixed(acc, t, self)?;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term(true)?;
                    acc = add_mixed(acc, t, self)?;
                }
                None => return Ok(acc),
                Some(c) => return Err(self.error(format!("unexpected character `{c}`"))),
            }
        }
    }

    fn term(&mut self, negate: bool) -> Result<PolyForm, FormsError> {
        self.skip_ws();
        let mut coeff = self.number()?.unwrap_or_else(<Rational as Coeff>::one);
        if negate {
            coeff = -coeff;
        }
        let mut exps = vec![0u32; self.n];
        let mut idx: Vec<u8> = Vec::new();
        loop {
            self.skip_ws();
            // Optional inline '*' separators.
            if self.peek() == Some('*') {
                self.pos += 1;
                continue;
            }
            let save = self.pos;
            if let Some(var) = self.differential()? {
                // A differential chain ends the term.
                let mut chain = vec![var];
                loop {
                    self.skip_ws();
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        match self.differential()? {
                            Some(v) => chain.push(v),
                            None => return Err(self.error("expected differential after `^`")),
                        }
                    } else {
                        break;
                    }
                }
                // Sort the chain, tracking the permutation sign; repeats
                // kill the term.
                let degree = chain.len();
                let mut inversions = 0usize;
                for i in 0..chain.len() {
                    for j in i + 1..chain.len() {
                        if chain[i] == chain[j] {
                            return Ok(PolyForm::zero(self.n, degree));
                        }
                        if chain[i] > chain[j] {
                            inversions += 1;
                        }
                    }
                }
                if inversions % 2 == 1 {
                    coeff = -coeff;
                }
                chain.sort_unstable();
                idx = chain;
                break;
            }
            self.pos = save;
            if let Some(var) = self.variable()? {
                let mut power = 1u32;
                self.skip_ws();
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    power = self
                        .integer()?
                        .ok_or_else(|| self.error("expected exponent after `^`"))?
                        .try_into()
                        .map_err(|_| self.error("exponent out of range"))?;
                }
                exps[var as usize] += power;
                continue;
            }
            if let Some(extra) = self.number()? {
                coeff *= extra;
                continue;
            }
            break;
        }
        Ok(build_term(self.n, exps, idx, coeff))
    }

    /// A differential token `dx`, `dy1`, ... Returns the variable index.
    fn differential(&mut self) -> Result<Option<u8>, FormsError> {
        let save = self.pos;
        if self.peek() != Some('d') {
            return Ok(None);
        }
        self.pos += 1;
        match self.variable()? {
            Some(v) => Ok(Some(v)),
            None => {
                self.pos = save;
                Ok(None)
            }
        }
    }

    /// A variable token: `x`, `y`, `z`, `w`, or `x<k>` (1-based).
    fn variable(&mut self) -> Result<Option<u8>, FormsError> {
        let Some(c) = self.peek() else { return Ok(None) };
        let base = match c {
            'x' => 0usize,
            'y' => 1,
            'z' => 2,
            'w' => 3,
            _ => return Ok(None),
        };
        self.pos += 1;
        // x3 style: digits immediately after, only for the `x` family.
        let digit_start = self.pos;
        while self.pos < self.input.len() && (self.input[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        let var = if self.pos > digit_start {
            if base != 0 {
                return Err(self.error("numbered variables use the x prefix (x1, x2, ...)"));
            }
            let k: usize = std::str::from_utf8(&self.input[digit_start..self.pos])
                .expect("ascii digits")
                .parse()
                .map_err(|_| self.error("bad variable number"))?;
            if k == 0 {
                return Err(self.error("variables are numbered from 1"));
            }
            k - 1
        } else {
            base
        };
        if var >= self.n {
            return Err(self.error(format!(
                "variable index {} out of range for dimension {}",
                var + 1,
                self.n
            )));
        }
        Ok(Some(var as u8))
    }

    fn integer(&mut self) -> Result<Option<i64>, FormsError> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.input.len() && (self.input[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Ok(None);
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).expect("ascii");
        text.parse::<i64>()
            .map(Some)
            .map_err(|_| self.error("integer out of range"))
    }

    /// A rational literal `p` or `p/q`.
    fn number(&mut self) -> Result<Option<Rational>, FormsError> {
        self.skip_ws();
        let Some(num) = self.integer()? else { return Ok(None) };
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            if let Some(den) = self.integer()? {
                if den == 0 {
                    return Err(self.error("zero denominator"));
                }
                return Ok(Some(Rational::new(BigInt::from(num), BigInt::from(den))));
            }
            self.pos = save;
        }
        Ok(Some(Rational::from_integer(BigInt::from(num))))
    }
}

fn add_mixed(a: PolyForm, b: PolyForm, p: &Parser) -> Result<PolyForm, FormsError> {
    if !a.is_zero() && !b.is_zero() && a.form_degree() != b.form_degree() {
        return Err(p.error(format!(
            "mixed form degrees {} and {}",
            a.form_degree(),
            b.form_degree()
        )));
    }
    Ok(a.add(&b))
}

fn build_term(n: usize, exps: Vec<u32>, written_idx: Vec<u8>, coeff: Rational) -> PolyForm {
    // written_idx arrived pre-sorted by insertion; recompute the sign of the
    // original chain order against sorted order is handled at insert time.
    if Coeff::is_zero(&coeff) {
        return PolyForm::zero(n, written_idx.len());
    }
    PolyForm::term(n, exps, written_idx, coeff)
}

/// Render a form in the same grammar.
pub fn format_form(form: &PolyForm) -> String {
    if form.is_zero() {
        return "0".to_string();
    }
    let var_name = |i: usize| -> String {
        if form.ambient_dim() <= 4 {
            ["x", "y", "z", "w"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    };
    let mut parts: Vec<String> = Vec::new();
    for (key, coeff) in form.terms() {
        let mut factors: Vec<String> = Vec::new();
        let body_empty =
            key.exps.iter().all(|&e| e == 0) && key.idx.is_empty();
        if !coeff.is_one() || body_empty {
            factors.push(crate::linalg::format_rational(coeff));
        }
        for (i, &e) in key.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(var_name(i)),
                _ => factors.push(format!("{}^{}", var_name(i), e)),
            }
        }
        if !key.idx.is_empty() {
            let chain: Vec<String> =
                key.idx.iter().map(|&i| format!("d{}", var_name(i as usize))).collect();
            factors.push(chain.join("^"));
        }
        parts.push(factors.join(" "));
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn parses_the_documented_example() {
        let form = parse_form("2/3 x^2 y dx^dz", 3).unwrap();
        assert_eq!(form, PolyForm::term(3, vec![2, 1, 0], vec![0, 2], ratio(2, 3)));
    }

    #[test]
    fn parses_sums_and_signs() {
        let form = parse_form("x dy - y dx", 2).unwrap();
        let expected = PolyForm::term(2, vec![1, 0], vec![1], rat(1))
            .add(&PolyForm::term(2, vec![0, 1], vec![0], rat(-1)));
        assert_eq!(form, expected);
    }

    #[test]
    fn parses_numbered_variables() {
        let form = parse_form("3 x1^2 x5 dx2^dx4", 5).unwrap();
        assert_eq!(
            form,
            PolyForm::term(5, vec![2, 0, 0, 0, 1], vec![1, 3], rat(3))
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_form("x dy + z", 2).is_err()); // z out of range
        assert!(parse_form("1/0 x", 2).is_err());
        assert!(parse_form("x dy + y", 2).is_err()); // mixed degrees
    }

    #[test]
    fn round_trips_through_format() {
        let source = "2/3 x^2 y dx^dz + 5 z dx^dy";
        let form = parse_form(source, 3).unwrap();
        let reparsed = parse_form(&format_form(&form), 3).unwrap();
        assert_eq!(form, reparsed);
    }

    #[test]
    fn repeated_differential_is_zero() {
        let form = parse_form("x dx^dx", 1).unwrap();
        assert!(form.is_zero());
    }
}
