//! Weight literals such as `2w1+1d` or `w1 - w2 + 3d`: integer combinations
//! of the level-zero fundamental weights `ϖ_i` (`w<i>`) and `δ` (`d`).

use std::collections::BTreeMap;

use loom_core::rational::int;
use loom_core::{CartanData, Weight};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightLiteral {
    /// Coefficient of `ϖ_i`, keyed by `i`.
    pub fundamentals: BTreeMap<usize, i64>,
    /// Coefficient of `δ`; `Some` whenever a `d` term was written.
    pub delta: Option<i64>,
}

impl WeightLiteral {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| CliError::Config(format!("weight literal {text:?}: {why}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut out = WeightLiteral::default();
        let digits = |pos: &mut usize| {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            &s[start..*pos]
        };
        while pos < bytes.len() {
            let sign = match bytes[pos] {
                b'+' => {
                    pos += 1;
                    1
                }
                b'-' => {
                    pos += 1;
                    -1
                }
                _ if pos == 0 => 1,
                _ => return Err(bad("terms must be separated by + or -")),
            };
            let coeff = match digits(&mut pos) {
                "" => 1,
                d => d.parse::<i64>().map_err(|_| bad("coefficient out of range"))?,
            } * sign;
            match bytes.get(pos) {
                Some(b'w') => {
                    pos += 1;
                    let idx = digits(&mut pos);
                    if idx.is_empty() {
                        return Err(bad("w must be followed by an index"));
                    }
                    let idx: usize = idx.parse().map_err(|_| bad("index out of range"))?;
                    *out.fundamentals.entry(idx).or_insert(0) += coeff;
                }
                Some(b'd') => {
                    pos += 1;
                    *out.delta.get_or_insert(0) += coeff;
                }
                _ => return Err(bad("expected w<i> or d")),
            }
        }
        Ok(out)
    }

    /// `Σ c_i ϖ_i (+ c δ)`; affine iff a `d` term is present.
    pub fn to_weight(&self, cartan: &CartanData) -> Result<Weight, CliError> {
        let mut coeffs = vec![int(0); cartan.size()];
        for (&i, &c) in &self.fundamentals {
            if i == 0 || i > cartan.rank() {
                return Err(CliError::Config(format!("w{i} is not a fundamental weight of {}", cartan.cartan_type())));
            }
            coeffs[i] = int(c);
        }
        Ok(cartan.weight_from_fundamentals(&coeffs, self.delta.map(int))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms_and_whitespace() {
        let w = WeightLiteral::parse(" 2 w1 + 1d ").unwrap();
        assert_eq!(w.fundamentals, BTreeMap::from([(1, 2)]));
        assert_eq!(w.delta, Some(1));
        let w = WeightLiteral::parse("w1-w2-3d+w1").unwrap();
        assert_eq!(w.fundamentals, BTreeMap::from([(1, 2), (2, -1)]));
        assert_eq!(w.delta, Some(-3));
        assert_eq!(WeightLiteral::parse("-w2").unwrap().fundamentals, BTreeMap::from([(2, -1)]));
    }

    #[test]
    fn rejects_malformed_literals() {
        for s in ["", "2", "w", "2w1 3d", "w1+", "x1", "w1++d"] {
            assert!(WeightLiteral::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn builds_weights() {
        let c = CartanData::build("A", 1).unwrap();
        let w = WeightLiteral::parse("2w1+1d").unwrap().to_weight(&c).unwrap();
        assert_eq!(w, Weight::from_ints(&[-2, 2], Some(1)));
        let w = WeightLiteral::parse("w1").unwrap().to_weight(&c).unwrap();
        assert_eq!(w, Weight::from_ints(&[-1, 1], None));
        assert!(WeightLiteral::parse("w2").unwrap().to_weight(&c).is_err());
        assert!(WeightLiteral::parse("w0").unwrap().to_weight(&c).is_err());
    }
}
