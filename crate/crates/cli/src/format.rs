//! The code file format.
//!
//! ```text
//! # comment
//! p=2 r=2 k=2 n=3
//! row: 1,1 | 1,1 | 2
//! row: 2,1 | 1   | 1,1
//! ```
//!
//! Entries list coefficients in ascending degree, each in `[0, p^r)`.

use residual_core::{Error, PolyMatrix, RingContext, ZprPoly, ZprRational};

use crate::CliError;

fn parse_err(line: usize, reason: impl Into<String>) -> CliError {
    CliError::Parse { line, reason: reason.into() }
}

fn parse_int(line: usize, s: &str) -> Result<u64, CliError> {
    s.trim().parse().map_err(|_| parse_err(line, format!("expected an integer, found {:?}", s.trim())))
}

fn parse_poly(ctx: RingContext, line: usize, s: &str) -> Result<ZprPoly, CliError> {
    if s.trim().is_empty() {
        return Err(parse_err(line, "empty entry"));
    }
    let mut coeffs = Vec::new();
    for c in s.split(',') {
        let value = parse_int(line, c)?;
        if value >= ctx.modulus() {
            return Err(CliError::OutOfRangeCoefficient { line, value, modulus: ctx.modulus() });
        }
        coeffs.push(value);
    }
    Ok(ZprPoly::new(ctx, coeffs))
}

fn parse_header(line: usize, text: &str) -> Result<(RingContext, usize, usize), CliError> {
    let normalized = text.split('=').map(str::trim).collect::<Vec<_>>().join("=");
    let tokens: Vec<&str> = normalized.split_whitespace().collect();
    let keys = ["p", "r", "k", "n"];
    if tokens.len() != keys.len() {
        return Err(parse_err(line, "header must be `p=<int> r=<int> k=<int> n=<int>`"));
    }
    let mut values = [0u64; 4];
    for ((tok, key), slot) in tokens.iter().zip(keys).zip(values.iter_mut()) {
        let Some(v) = tok.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')) else {
            return Err(parse_err(line, format!("expected `{key}=<int>`, found {tok:?}")));
        };
        *slot = parse_int(line, v)?;
    }
    let [p, r, k, n] = values;
    let r = u32::try_from(r).map_err(|_| parse_err(line, "exponent out of range"))?;
    let ctx = RingContext::new(p, r).map_err(|e| match e {
        Error::NotPrime(p) => CliError::NotPrime(p),
        other => parse_err(line, other.to_string()),
    })?;
    if k == 0 || n == 0 || k > n {
        return Err(CliError::ShapeMismatch(format!("need 1 <= k <= n, got k={k} n={n}")));
    }
    Ok((ctx, k as usize, n as usize))
}

/// Parses a code file into a full-row-rank encoder.
pub fn parse_code_file(text: &str) -> Result<(RingContext, PolyMatrix), CliError> {
    let mut header = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((ctx, _, n)) = header else {
            header = Some(parse_header(line, content)?);
            continue;
        };
        let Some(body) = content.strip_prefix("row:") else {
            return Err(parse_err(line, "expected `row: e1 | ... | en`"));
        };
        let entries: Vec<&str> = body.split('|').collect();
        if entries.len() != n {
            return Err(CliError::ShapeMismatch(format!("line {line}: {} entries, header says n={n}", entries.len())));
        }
        rows.push(entries.into_iter().map(|e| parse_poly(ctx, line, e)).collect::<Result<Vec<_>, _>>()?);
    }
    let Some((ctx, k, n)) = header else {
        return Err(parse_err(1, "missing header"));
    };
    if rows.len() != k {
        return Err(CliError::ShapeMismatch(format!("{} rows, header says k={k}", rows.len())));
    }
    let g = PolyMatrix::from_rows(ctx, n, rows)?;
    if !g.is_full_row_rank() {
        return Err(Error::NotFullRank.into());
    }
    Ok((ctx, g))
}

/// Canonical text of an encoder; `parse_code_file` inverts it.
pub fn print_code_file(g: &PolyMatrix) -> String {
    let ctx = g.context();
    let mut out = format!("p={} r={} k={} n={}\n", ctx.p(), ctx.r(), g.rows(), g.cols());
    for row in g.row_vecs() {
        let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&format!("row: {}\n", entries.join(" | ")));
    }
    out
}

/// Parses `u1 | u2 | ...` where each entry is `num` or `num / den`, both as
/// ascending coefficient lists.
pub fn parse_rational_vector(ctx: RingContext, text: &str) -> Result<Vec<ZprRational>, CliError> {
    text.split('|')
        .map(|entry| {
            let mut parts = entry.split('/');
            let num = parse_poly(ctx, 1, parts.next().unwrap_or(""))?;
            let den = match parts.next() {
                None => ZprPoly::one(ctx),
                Some(d) => parse_poly(ctx, 1, d)?,
            };
            if parts.next().is_some() {
                return Err(parse_err(1, format!("too many `/` in {:?}", entry.trim())));
            }
            Ok(ZprRational::new(num, den)?)
        })
        .collect()
}
