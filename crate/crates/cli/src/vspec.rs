//! Parsing for the --v flag. Accepted forms: a (possibly negative)
//! integer, a generator power like beta^6 (also b^6 or β^6), a
//! coefficient list like 3,3 or [3,3], and B or auto to request the
//! eigenvalue-avoiding diagonal search.

use anyhow::{bail, Context};
use hull_codes::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VSpec {
    /// Scan the alphabet for a diagonal whose eigenvalues avoid -1.
    Search,
    Value(VExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VExpr {
    Int(i64),
    BetaPow(u64),
    Coeffs(Vec<u64>),
}

pub fn parse(text: &str) -> anyhow::Result<VSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("b") || t.eq_ignore_ascii_case("auto") {
        return Ok(VSpec::Search);
    }
    let lower = t.to_lowercase();
    for prefix in ["beta^", "b^", "β^"] {
        if let Some(exp) = lower.strip_prefix(prefix) {
            let k = exp
                .parse::<u64>()
                .with_context(|| format!("bad generator exponent in {text:?}"))?;
            return Ok(VSpec::Value(VExpr::BetaPow(k)));
        }
    }
    if let Ok(i) = t.parse::<i64>() {
        return Ok(VSpec::Value(VExpr::Int(i)));
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(t);
    let coeffs: Result<Vec<u64>, _> = inner.split(',').map(|c| c.trim().parse()).collect();
    match coeffs {
        Ok(c) if !c.is_empty() => Ok(VSpec::Value(VExpr::Coeffs(c))),
        _ => bail!(
            "cannot parse diagonal value {text:?}; pass an integer, beta^k, \
             a coefficient list, or B"
        ),
    }
}

impl VExpr {
    /// Evaluates in the alphabet; beta^k uses the supplied generator so
    /// that a --beta override carries through.
    pub fn resolve(&self, alphabet: &Field, beta: &FieldElement) -> anyhow::Result<FieldElement> {
        Ok(match self {
            VExpr::Int(i) => {
                let p = alphabet.characteristic() as i128;
                let rem = ((*i as i128 % p) + p) % p;
                alphabet.from_int(rem as u64)
            }
            VExpr::BetaPow(k) => beta.pow(*k as u128),
            VExpr::Coeffs(c) => alphabet.element_from_rep(c)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hull_codes::field::make_field;

    #[test]
    fn recognized_forms() {
        assert_eq!(parse("B").unwrap(), VSpec::Search);
        assert_eq!(parse("auto").unwrap(), VSpec::Search);
        assert_eq!(parse("0").unwrap(), VSpec::Value(VExpr::Int(0)));
        assert_eq!(parse("-1").unwrap(), VSpec::Value(VExpr::Int(-1)));
        assert_eq!(parse("b^8").unwrap(), VSpec::Value(VExpr::BetaPow(8)));
        assert_eq!(parse("beta^12").unwrap(), VSpec::Value(VExpr::BetaPow(12)));
        assert_eq!(parse("β^6").unwrap(), VSpec::Value(VExpr::BetaPow(6)));
        assert_eq!(parse("[3,3]").unwrap(), VSpec::Value(VExpr::Coeffs(vec![3, 3])));
        assert_eq!(parse("1, 2").unwrap(), VSpec::Value(VExpr::Coeffs(vec![1, 2])));
        assert!(parse("x+1").is_err());
        assert!(parse("b^").is_err());
    }

    #[test]
    fn resolution_in_the_25_element_field() {
        let f = make_field(5, 2).unwrap();
        let beta = f.primitive_element();
        assert_eq!(
            VExpr::BetaPow(6).resolve(&f, &beta).unwrap(),
            f.from_int(2)
        );
        assert_eq!(
            VExpr::Int(-1).resolve(&f, &beta).unwrap(),
            f.from_int(4)
        );
        assert_eq!(
            VExpr::Int(7).resolve(&f, &beta).unwrap(),
            f.from_int(2)
        );
        let b16 = VExpr::Coeffs(vec![3, 3]).resolve(&f, &beta).unwrap();
        assert_eq!(b16, beta.pow(16));
        assert!(VExpr::Coeffs(vec![1, 2, 3]).resolve(&f, &beta).is_err());
    }
}
