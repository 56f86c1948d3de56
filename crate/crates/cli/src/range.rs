//! Parameter lists on the command line: `5`, `2,3,5`, `2..36` (inclusive) or
//! any comma-separated mix of them.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeList(Vec<u64>);

impl RangeList {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn single(v: u64) -> Self {
        RangeList(vec![v])
    }

    pub fn span(lo: u64, hi: u64) -> Self {
        RangeList((lo..=hi).collect())
    }
}

impl FromStr for RangeList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("not a number: {t:?}"));
        let mut out = Vec::new();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            match part.split_once("..") {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                    if a > b {
                        return Err(format!("empty range {part}"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(num(part)?),
            }
        }
        if out.is_empty() {
            return Err("empty list".into());
        }
        out.sort_unstable();
        out.dedup();
        Ok(RangeList(out))
    }
}

impl fmt::Display for RangeList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_lists() {
        let r: RangeList = "7,2..4,3".parse().unwrap();
        assert_eq!(r.values(), &[2, 3, 4, 7]);
        assert_eq!("1..=3".parse::<RangeList>().unwrap().values(), &[1, 2, 3]);
        assert!("4..2".parse::<RangeList>().is_err());
        assert!("".parse::<RangeList>().is_err());
        assert!("x".parse::<RangeList>().is_err());
    }
}
