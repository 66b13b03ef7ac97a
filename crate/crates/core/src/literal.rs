//! The textual set literal `{i1,i2,…}` over flat element indices.

use thiserror::Error;

use crate::group::{Elem, GroupSpec};
use crate::set::GSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("malformed set literal: {0}")]
    Malformed(String),
    #[error("set literal is empty")]
    Empty,
    #[error("index {index} is outside a group of order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("index {0} appears more than once")]
    Duplicate(usize),
}

impl LiteralError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            LiteralError::Malformed(_) => "MALFORMED",
            LiteralError::Empty => "EMPTY_SET",
            LiteralError::OutOfRange { .. } => "OUT_OF_RANGE",
            LiteralError::Duplicate(_) => "DUPLICATE",
        }
    }
}

/// Parses `{i1,i2,…}`. Whitespace is ignored and the order of indices is
/// free; the result is the same set either way.
pub fn parse_set(text: &str, group: &GroupSpec) -> Result<GSet, LiteralError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| LiteralError::Malformed(format!("expected {{…}}, got {trimmed:?}")))?;
    if inner.trim().is_empty() {
        return Err(LiteralError::Empty);
    }
    let mut set = GSet::empty(group);
    for tok in inner.split(',') {
        let tok = tok.trim();
        if tok.is_empty() || !tok.bytes().all(|c| c.is_ascii_digit()) {
            return Err(LiteralError::Malformed(format!("bad index {tok:?}")));
        }
        let index: usize = tok.parse().map_err(|_| LiteralError::Malformed(format!("index {tok} overflows")))?;
        if index >= group.order() {
            return Err(LiteralError::OutOfRange { index, order: group.order() });
        }
        if !set.insert(index).expect("range checked") {
            return Err(LiteralError::Duplicate(index));
        }
    }
    Ok(set)
}

/// Canonical literal: sorted, comma separated, no spaces.
pub fn format_set(set: &GSet) -> String {
    set.to_string()
}

pub fn format_elems(elems: &[Elem]) -> String {
    let parts: Vec<String> = elems.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Parses a comma-separated list of cyclic orders such as `2,6`.
pub fn parse_orders(text: &str) -> Result<Vec<usize>, LiteralError> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| LiteralError::Malformed(format!("bad order {t:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: usize) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn accepted_literals() {
        let s = parse_set("{0,1,6,7}", &z(12)).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(format_set(&s), "{0,1,6,7}");
        let s = parse_set("  { 7, 0 ,6,1 } ", &z(12)).unwrap();
        assert_eq!(format_set(&s), "{0,1,6,7}");
    }

    #[test]
    fn error_codes_are_distinct() {
        let g = z(12);
        let cases = [
            ("{}", "EMPTY_SET"),
            ("{12}", "OUT_OF_RANGE"),
            ("{1,1}", "DUPLICATE"),
            ("0,1", "MALFORMED"),
            ("{1,,2}", "MALFORMED"),
            ("{-1}", "MALFORMED"),
            ("{a}", "MALFORMED"),
        ];
        for (text, code) in cases {
            assert_eq!(parse_set(text, &g).unwrap_err().code(), code, "{text}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(parse_orders("2,6").unwrap(), vec![2, 6]);
        assert_eq!(parse_orders("[12]").unwrap(), vec![12]);
        assert!(parse_orders("2,x").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(elems in proptest::collection::btree_set(0usize..40, 1..15), seed in any::<u64>()) {
            let g = z(40);
            let mut v: Vec<usize> = elems.iter().copied().collect();
            let k = v.len();
            v.rotate_left((seed as usize) % k);
            let text = format!("{{{}}}", v.iter().map(|x| format!(" {x}")).collect::<Vec<_>>().join(","));
            let s = parse_set(&text, &g).unwrap();
            let canon: Vec<usize> = elems.into_iter().collect();
            prop_assert_eq!(format_set(&s), format_elems(&canon));
            prop_assert_eq!(parse_set(&format_set(&s), &g).unwrap(), s);
        }
    }
}
