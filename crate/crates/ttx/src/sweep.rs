//! Parsing of integral classes, class patterns in `k`, and sweep ranges.

/// `a*k + b` for one coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Linear {
    pub a: i64,
    pub b: i64,
}

impl Linear {
    pub fn at(&self, k: i64) -> i64 {
        self.a * k + self.b
    }
}

fn parse_term(t: &str) -> Result<Linear, String> {
    let bad = || format!("cannot parse `{t}` as an integer or a multiple of k");
    let t = t.trim();
    if let Some(coef) = t.strip_suffix('k') {
        let coef = coef.trim().trim_end_matches('*').trim();
        let a = match coef {
            "" | "+" => 1,
            "-" => -1,
            c => c.parse().map_err(|_| bad())?,
        };
        Ok(Linear { a, b: 0 })
    } else {
        Ok(Linear { a: 0, b: t.parse().map_err(|_| bad())? })
    }
}

/// One coordinate such as `3`, `k`, `k+1`, `2k-1` or `-k + 2`.
pub fn parse_linear(text: &str) -> Result<Linear, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty class coordinate".into());
    }
    let mut out = Linear { a: 0, b: 0 };
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*') {
            let term = parse_term(&s[start..i])?;
            out.a += term.a;
            out.b += term.b;
            start = i;
        }
    }
    Ok(out)
}

pub fn parse_pattern(text: &str) -> Result<Vec<Linear>, String> {
    text.split(',').map(parse_linear).collect()
}

/// A class without `k`.
pub fn parse_class(text: &str) -> Result<Vec<i64>, String> {
    let p = parse_pattern(text)?;
    if p.iter().any(|l| l.a != 0) {
        return Err(format!("class `{text}` mentions k; use --sweep with --family"));
    }
    Ok(p.iter().map(|l| l.b).collect())
}

/// `k=1..20` (inclusive) into the range bounds.
pub fn parse_sweep(text: &str) -> Result<(i64, i64), String> {
    let bad = || format!("sweep `{text}` is not of the form k=A..B");
    let (var, range) = text.split_once('=').ok_or_else(bad)?;
    if var.trim() != "k" {
        return Err(bad());
    }
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let hi = hi.trim_start_matches('=');
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms() {
        assert_eq!(parse_linear("k+1").unwrap(), Linear { a: 1, b: 1 });
        assert_eq!(parse_linear("2k - 1").unwrap(), Linear { a: 2, b: -1 });
        assert_eq!(parse_linear("-k").unwrap(), Linear { a: -1, b: 0 });
        assert_eq!(parse_linear("3*k+2").unwrap(), Linear { a: 3, b: 2 });
        assert_eq!(parse_linear("-4").unwrap(), Linear { a: 0, b: -4 });
        assert!(parse_linear("x").is_err());
    }

    #[test]
    fn classes_and_sweeps() {
        assert_eq!(parse_class("1,4").unwrap(), vec![1, 4]);
        assert_eq!(parse_class("-1, 0").unwrap(), vec![-1, 0]);
        assert!(parse_class("1,k").is_err());
        assert_eq!(parse_sweep("k=1..20").unwrap(), (1, 20));
        assert_eq!(parse_sweep("k=2..=5").unwrap(), (2, 5));
        assert!(parse_sweep("j=1..2").is_err());
        assert!(parse_sweep("k=5..2").is_err());
    }
}
