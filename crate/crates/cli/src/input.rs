use fockb::algebra::{parse_rational, RMatrix, RVector, Rational};
use fockb::{Error, Result};

pub fn rational(s: &str) -> Result<Rational> {
    parse_rational(s.trim())
}

pub fn vector(s: &str, d: usize) -> Result<RVector> {
    let v: RVector = s.split(',').map(rational).collect::<Result<_>>()?;
    if v.len() != d {
        return Err(Error::Dimension(format!("vector {s:?} has {} entries, expected {d}", v.len())));
    }
    Ok(v)
}

/// `identity`, `zero`, or rows separated by `;` with entries separated by `,`.
pub fn matrix(s: &str, d: usize) -> Result<RMatrix> {
    let m = match s.trim() {
        "identity" | "id" | "I" => RMatrix::identity(d),
        "zero" | "0" => RMatrix::zeros(d),
        rows => RMatrix::from_rows(rows.split(';').map(|r| vector(r, d)).collect::<Result<_>>()?)?,
    };
    if m.dim() != d {
        return Err(Error::Dimension(format!("matrix {s:?} is not {d}x{d}")));
    }
    if !m.is_symmetric() {
        return Err(Error::Parameter(format!("matrix {s:?} is not symmetric")));
    }
    Ok(m)
}

/// Signs from a string over `+` and `-`.
pub fn signature(s: &str) -> Result<Vec<i8>> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' | '−' => Ok(-1),
            _ => Err(Error::Parse(format!("signature {s:?} must use only '+' and '-'"))),
        })
        .collect()
}

/// One value per factor: empty gives `default`, a single value is repeated.
pub fn per_factor<T: Clone>(
    raw: &[String],
    n: usize,
    what: &str,
    parse: impl Fn(&str) -> Result<T>,
    default: T,
) -> Result<Vec<T>> {
    match raw.len() {
        0 => Ok(vec![default; n]),
        1 => Ok(vec![parse(&raw[0])?; n]),
        k if k == n => raw.iter().map(|s| parse(s)).collect(),
        k => Err(Error::Dimension(format!("got {k} values for {what}, expected 1 or {n}"))),
    }
}
