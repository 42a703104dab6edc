//! Flag-value parsing: complex numbers as `re,im`, lists split on `;`,
//! tiny inline function literals for the identity suite.

use deepzero_core::{FuncExpr, C64};

use crate::error::CliError;

pub fn parse_c64(s: &str) -> Result<C64, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("expected a complex 're,im', got '{s}'"));
    match parts.as_slice() {
        [re] => Ok(C64::new(re.parse().map_err(|_| bad())?, 0.0)),
        [re, im] => Ok(C64::new(
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

/// Semicolon-separated complex list: `re,im;re,im;...`
pub fn parse_c64_list(s: &str) -> Result<Vec<C64>, CliError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_c64)
        .collect()
}

/// Comma-separated reals.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("expected a number, got '{p}'")))
        })
        .collect()
}

/// Comma-separated nonnegative integers.
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("expected an integer, got '{p}'")))
        })
        .collect()
}

/// Inline function literal: `poly c0,c1,...` (real coefficients) or
/// `mono d`.
pub fn parse_inline_fn(s: &str) -> Result<FuncExpr, CliError> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("poly ") {
        let coeffs = parse_f64_list(rest)?;
        if coeffs.is_empty() {
            return Err(CliError::Usage("empty coefficient list".into()));
        }
        Ok(FuncExpr::poly_re(&coeffs))
    } else if let Some(rest) = s.strip_prefix("mono ") {
        let d: u32 = rest
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("expected a degree, got '{rest}'")))?;
        Ok(FuncExpr::monomial(d))
    } else {
        Err(CliError::Usage(format!(
            "expected 'poly c0,c1,...' or 'mono d', got '{s}'"
        )))
    }
}

pub fn c_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}
