use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalars; the ground field of every computation.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `3`, `-7`, `1/2`, `-22/7`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Writes `c*<body>` for a term in a sum, with the sign handled by the caller.
///
/// `abs_coeff` must be positive. An empty `body` means the constant term.
pub(crate) fn write_term(out: &mut String, first: bool, coeff: &Rat, body: &str) {
    let negative = coeff.is_negative();
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let abs = coeff.abs();
    if body.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&abs.to_string());
        out.push('*');
        out.push_str(body);
    }
}

/// Splits a sum expression into signed term strings, respecting parentheses.
pub(crate) fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    let mut prev_significant: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                current.push(ch);
            }
            // A sign directly after '^' or '(' belongs to an exponent, not the sum.
            '+' | '-'
                if depth == 0 && !matches!(prev_significant, Some('^') | Some('*') | Some('/')) =>
            {
                if !current.trim().is_empty() {
                    terms.push((negative, current.trim().to_string()));
                }
                current.clear();
                negative = ch == '-';
            }
            _ => current.push(ch),
        }
        if !ch.is_whitespace() {
            prev_significant = Some(ch);
        }
    }
    if !current.trim().is_empty() {
        terms.push((negative, current.trim().to_string()));
    }
    terms
}
