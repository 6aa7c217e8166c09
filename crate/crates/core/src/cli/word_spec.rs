//! The textual word specifications accepted on the command line.
//!
//! * `periodic:<bits>` — the periodic word with the given period;
//! * `mech:<p>,<q>,<d>,<r>[;rho=<a>/<b>]` — slope `(p + q√d)/r`;
//! * `mech:<a>/<b>[;rho=<c>/<e>]` — rational slope `a/b`;
//! * `fib` — `mech:3,-1,5,2`;
//! * `sub:fibonacci`, `sub:thue-morse` — substitution fixed points.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::words::{LetterWord, QuadraticIrrational, Slope, Substitution, WordSource};

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn int<T: std::str::FromStr>(s: &str, at: usize, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(at, format!("expected an integer {what}, found {s:?}")))
}

fn ratio(s: &str, at: usize) -> Result<Rational64> {
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| parse_err(at, format!("expected <num>/<den>, found {s:?}")))?;
    let n: i64 = int(num, at, "numerator")?;
    let d: i64 = int(den, at + num.len() + 1, "denominator")?;
    if d == 0 {
        return Err(parse_err(at + num.len() + 1, "zero denominator"));
    }
    Ok(Rational64::new(n, d))
}

pub fn parse_word_spec(s: &str) -> Result<WordSource> {
    if s == "fib" {
        return Ok(WordSource::fibonacci());
    }
    if let Some(bits) = s.strip_prefix("periodic:") {
        let pattern: LetterWord = bits.parse().map_err(|e| match e {
            Error::Parse { position, message } => parse_err(position + 9, message),
            other => other,
        })?;
        if pattern.is_empty() {
            return Err(parse_err(9, "periodic pattern must be nonempty"));
        }
        return WordSource::periodic(pattern);
    }
    if let Some(name) = s.strip_prefix("sub:") {
        return Substitution::from_name(name)
            .map(WordSource::Substitution)
            .ok_or_else(|| parse_err(4, format!("unknown substitution {name:?} (fibonacci, thue-morse)")));
    }
    if let Some(body) = s.strip_prefix("mech:") {
        let start = 5;
        let (slope_part, rho_part) = match body.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (body, None),
        };
        let alpha = if slope_part.contains('/') {
            Slope::Rational(ratio(slope_part, start)?)
        } else {
            let fields: Vec<&str> = slope_part.split(',').collect();
            if fields.len() != 4 {
                return Err(parse_err(start, "expected <p>,<q>,<d>,<r> or <num>/<den>"));
            }
            let mut at = start;
            let mut pos = Vec::new();
            for f in &fields {
                pos.push(at);
                at += f.len() + 1;
            }
            let p: i64 = int(fields[0], pos[0], "p")?;
            let q: i64 = int(fields[1], pos[1], "q")?;
            let d: u64 = int(fields[2], pos[2], "d")?;
            let r: i64 = int(fields[3], pos[3], "r")?;
            let irr = QuadraticIrrational::new(p, q, d, r).map_err(|e| parse_err(pos[1], e.to_string()))?;
            Slope::Quadratic(irr)
        };
        let rho = match rho_part {
            None => Rational64::from_integer(0),
            Some(r) => {
                let at = start + slope_part.len() + 1;
                let value = r
                    .strip_prefix("rho=")
                    .ok_or_else(|| parse_err(at, "expected rho=<num>/<den>"))?;
                ratio(value, at + 4)?
            }
        };
        return WordSource::mechanical(alpha, rho).map_err(|e| parse_err(start, e.to_string()));
    }
    Err(parse_err(
        0,
        format!("unknown word specification {s:?} (periodic:, mech:, fib, sub:)"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        assert_eq!(
            parse_word_spec("periodic:01").unwrap(),
            WordSource::Periodic("01".parse().unwrap())
        );
        let fib = parse_word_spec("mech:3,-1,5,2").unwrap();
        assert_eq!(fib, WordSource::fibonacci());
        assert!((fib.slope().to_f64() - 0.381966).abs() < 1e-6);
        assert_eq!(parse_word_spec("fib").unwrap(), fib);
        let r = parse_word_spec("mech:2/5;rho=1/3").unwrap();
        assert_eq!(r.spec_string(), "mech:2/5;rho=1/3");
        assert_eq!(
            parse_word_spec("sub:thue-morse").unwrap().spec_string(),
            "sub:thue-morse"
        );
        for ws in [fib, r, parse_word_spec("periodic:0010").unwrap()] {
            assert_eq!(parse_word_spec(&ws.spec_string()).unwrap(), ws);
        }
    }

    #[test]
    fn rejected_forms() {
        assert!(matches!(
            parse_word_spec("periodic:"),
            Err(Error::Parse { position: 9, .. })
        ));
        assert!(matches!(
            parse_word_spec("periodic:012"),
            Err(Error::Parse { position: 11, .. })
        ));
        assert!(matches!(
            parse_word_spec("mech:3,-1,x,2"),
            Err(Error::Parse { position: 10, .. })
        ));
        // α = (3 + √5)/2 > 1
        assert!(parse_word_spec("mech:3,1,5,2").is_err());
        assert!(parse_word_spec("mech:1,1,4,3").is_err());
        assert!(parse_word_spec("mech:3/2").is_err());
        assert!(parse_word_spec("sub:nope").is_err());
        assert!(matches!(parse_word_spec("xyz"), Err(Error::Parse { position: 0, .. })));
    }
}
