//! Text file formats: posets, codes, and automorphism generator lists.
//! Parse errors carry the offending line number.

use posetmw::poset::Perm;
use posetmw::{FieldSpec, Poset};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Lines that carry content: trimmed, with comments and blanks skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Poset file: a line `n=<int>`, then zero or more relation lines `a<b`.
/// The pairs need not be covers; the transitive closure is taken.
pub fn parse_poset(text: &str) -> Result<Poset, ParseError> {
    let mut n: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("n=") {
            if n.is_some() {
                return fail(lineno, "duplicate n= line");
            }
            let value: usize = rest.trim().parse().map_err(|_| ParseError {
                line: lineno,
                message: format!("bad size {rest:?}"),
            })?;
            if value == 0 || value > 16 {
                return fail(lineno, "n must be between 1 and 16");
            }
            n = Some(value);
            continue;
        }
        let Some((a, b)) = line.split_once('<') else {
            return fail(lineno, format!("expected `a<b` or `n=...`, found {line:?}"));
        };
        let n = match n {
            Some(n) => n,
            None => return fail(lineno, "relation line before n="),
        };
        let a: usize = match a.trim().parse() {
            Ok(v) => v,
            Err(_) => return fail(lineno, format!("bad element {:?}", a.trim())),
        };
        let b: usize = match b.trim().parse() {
            Ok(v) => v,
            Err(_) => return fail(lineno, format!("bad element {:?}", b.trim())),
        };
        if a == 0 || a > n || b == 0 || b > n {
            return fail(lineno, format!("pair {a}<{b} outside 1..={n}"));
        }
        pairs.push((a, b));
    }
    let Some(n) = n else {
        return fail(0, "missing n= line");
    };
    Poset::from_covers(n, &pairs).map_err(|e| ParseError {
        line: 0,
        message: e.to_string(),
    })
}

pub struct ParsedCode {
    pub field: FieldSpec,
    pub n: usize,
    pub rows: Vec<Vec<u64>>,
}

/// Splits a prime power q into (p, m), if it is one.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = 0;
            let mut rest = q;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            return (rest == 1).then_some((p, m));
        }
        p += 1;
    }
    Some((q, 1))
}

/// Code file: `q=<int>`, optional `modulus=<c_m ... c_0>` (leading
/// coefficient first), `n=<int>`, `k=<int>`, then k rows of n entries.
pub fn parse_code(text: &str) -> Result<ParsedCode, ParseError> {
    let mut q: Option<(u64, u32, usize)> = None;
    let mut modulus: Option<(Vec<u64>, usize)> = None;
    let mut n: Option<usize> = None;
    let mut k: Option<usize> = None;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (lineno, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("q=") {
            let value: u64 = match rest.trim().parse() {
                Ok(v) => v,
                Err(_) => return fail(lineno, format!("bad field size {rest:?}")),
            };
            let Some((p, m)) = prime_power(value) else {
                return fail(lineno, format!("{value} is not a prime power"));
            };
            q = Some((p, m, lineno));
        } else if let Some(rest) = line.strip_prefix("modulus=") {
            let coeffs = parse_u64_list(rest).map_err(|t| ParseError {
                line: lineno,
                message: format!("bad coefficient {t:?}"),
            })?;
            modulus = Some((coeffs, lineno));
        } else if let Some(rest) = line.strip_prefix("n=") {
            match rest.trim().parse() {
                Ok(v) => n = Some(v),
                Err(_) => return fail(lineno, format!("bad length {rest:?}")),
            }
        } else if let Some(rest) = line.strip_prefix("k=") {
            match rest.trim().parse() {
                Ok(v) => k = Some(v),
                Err(_) => return fail(lineno, format!("bad row count {rest:?}")),
            }
        } else {
            let Some(n) = n else {
                return fail(lineno, "matrix row before n=");
            };
            let row = parse_u64_list(line).map_err(|t| ParseError {
                line: lineno,
                message: format!("bad entry {t:?}"),
            })?;
            if row.len() != n {
                return fail(
                    lineno,
                    format!("row has {} entries, expected {n}", row.len()),
                );
            }
            rows.push(row);
        }
    }
    let Some((p, m, q_line)) = q else {
        return fail(0, "missing q= line");
    };
    let Some(n) = n else {
        return fail(0, "missing n= line");
    };
    let Some(k) = k else {
        return fail(0, "missing k= line");
    };
    if rows.len() != k {
        return fail(0, format!("found {} rows, expected k={k}", rows.len()));
    }
    // The file lists the modulus leading coefficient first; the library
    // wants it constant term first.
    let little_endian: Option<Vec<u64>> = modulus.as_ref().map(|(c, _)| {
        let mut v = c.clone();
        v.reverse();
        v
    });
    let field = FieldSpec::new(p, m, little_endian.as_deref()).map_err(|e| ParseError {
        line: q_line,
        message: e.to_string(),
    })?;
    for (i, row) in rows.iter().enumerate() {
        for &x in row {
            if x >= field.q() {
                return fail(
                    0,
                    format!(
                        "entry {x} in row {} out of range for q={}",
                        i + 1,
                        field.q()
                    ),
                );
            }
        }
    }
    Ok(ParsedCode { field, n, rows })
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, String> {
    text.split([' ', '\t', ','])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| t.to_string()))
        .collect()
}

/// Subgroup file: one permutation per line in one-line notation (the
/// images of 1..n). The listed permutations are generators; the caller
/// closes them into a subgroup.
pub fn parse_perms(text: &str, n: usize) -> Result<Vec<Perm>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in content_lines(text) {
        let images = parse_u64_list(line).map_err(|t| ParseError {
            line: lineno,
            message: format!("bad image {t:?}"),
        })?;
        if images.len() != n {
            return fail(
                lineno,
                format!("permutation has {} images, expected {n}", images.len()),
            );
        }
        let perm =
            Perm::from_images(images.into_iter().map(|v| v as usize).collect()).map_err(|e| {
                ParseError {
                    line: lineno,
                    message: e.to_string(),
                }
            })?;
        out.push(perm);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let p = parse_poset("# demo\nn=5\n1<2\n2<3\n4<5\n").unwrap();
        assert_eq!(p.covers(), &[(1, 2), (2, 3), (4, 5)]);
        // Redundant relation pairs reduce to covers.
        let p = parse_poset("n=3\n1<2\n2<3\n1<3\n").unwrap();
        assert_eq!(p.covers(), &[(1, 2), (2, 3)]);
    }

    #[test]
    fn poset_diagnostics() {
        assert_eq!(parse_poset("1<2\nn=2\n").unwrap_err().line, 1);
        assert_eq!(parse_poset("n=2\n1<5\n").unwrap_err().line, 2);
        assert_eq!(parse_poset("n=2\nnope\n").unwrap_err().line, 2);
        assert!(parse_poset("n=2\n1<2\n2<1\n").is_err());
    }

    #[test]
    fn code_parsing() {
        let c = parse_code("q=2\nn=3\nk=2\n1 0 1\n0 1 1\n").unwrap();
        assert_eq!(c.field.q(), 2);
        assert_eq!(c.rows, vec![vec![1, 0, 1], vec![0, 1, 1]]);

        let c = parse_code("q=4\nmodulus=1 1 1\nn=2\nk=1\n2 3\n").unwrap();
        assert_eq!(c.field.q(), 4);
        assert_eq!(c.field.modulus(), &[1, 1, 1]);

        // Built-in modulus kicks in when none is given.
        let c = parse_code("q=9\nn=1\nk=1\n7\n").unwrap();
        assert_eq!(c.field.q(), 9);
        assert_eq!(c.field.modulus(), &[2, 2, 1]);

        // A user-supplied modulus overrides the built-in one. The file
        // lists x^2 + 1 leading coefficient first.
        let c = parse_code("q=9\nmodulus=1 0 1\nn=1\nk=1\n7\n").unwrap();
        assert_eq!(c.field.modulus(), &[1, 0, 1]);

        assert!(parse_code("q=6\nn=1\nk=0\n").is_err());
        assert!(parse_code("q=2\nn=2\nk=1\n1 0 1\n").is_err());
        assert!(parse_code("q=2\nn=2\nk=2\n1 0\n").is_err());
        assert!(parse_code("q=2\nn=2\nk=1\n1 5\n").is_err());
    }

    #[test]
    fn perm_parsing() {
        let perms = parse_perms("# gens\n2 1 4 3\n", 4).unwrap();
        assert_eq!(perms.len(), 1);
        assert_eq!(perms[0].images(), &[2, 1, 4, 3]);
        assert!(parse_perms("2 1\n", 3).is_err());
        assert!(parse_perms("1 1 2\n", 3).is_err());
    }
}
