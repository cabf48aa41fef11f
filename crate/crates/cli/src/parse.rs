//! Value parsers for command-line strings. None of them evaluate expressions.

use std::path::PathBuf;

use spherical_core::complexmath::ComplexScalar;
use spherical_core::rankone::RankOneSpace;
use spherical_core::rootdata::{Multiplicity, RootDatum, SpectralParam, WeylElement, MAX_RANK};

use crate::CliError;

pub const MAX_GRID_POINTS: usize = 1_000_000;
pub const MAX_WORD_LEN: usize = 64;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_f64(text: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = text.trim().parse().map_err(|_| usage(format!("{what}: cannot parse {text:?} as a number")))?;
    if !v.is_finite() {
        return Err(usage(format!("{what}: {text:?} is not finite")));
    }
    Ok(v)
}

/// `re,im` or a bare real `re`.
pub fn parse_complex(text: &str) -> Result<ComplexScalar, CliError> {
    match text.split_once(',') {
        Some((re, im)) => Ok(ComplexScalar::new(parse_f64(re, "complex")?, parse_f64(im, "complex")?)),
        None => Ok(ComplexScalar::new(parse_f64(text, "complex")?, 0.0)),
    }
}

/// `start:stop:count`, endpoints included.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(usage(format!("grid {text:?}: expected start:stop:count")));
    };
    let start = parse_f64(start, "grid start")?;
    let stop = parse_f64(stop, "grid stop")?;
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| usage(format!("grid {text:?}: count must be a positive integer")))?;
    if count == 0 || count > MAX_GRID_POINTS {
        return Err(usage(format!("grid {text:?}: count must be in 1..={MAX_GRID_POINTS}")));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let span = stop - start;
    Ok((0..count).map(|k| if k + 1 == count { stop } else { start + span * k as f64 / (count - 1) as f64 }).collect())
}

/// `re,im;re,im;…`, one complex coordinate per simple root.
pub fn parse_lambda(text: &str) -> Result<SpectralParam, CliError> {
    let coords = text
        .split(';')
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() > MAX_RANK {
        return Err(usage(format!("lambda {text:?}: more than {MAX_RANK} coordinates")));
    }
    Ok(SpectralParam::new(coords))
}

/// `1,2,1` (commas or spaces). `e` or an empty string is the identity.
pub fn parse_word(text: &str) -> Result<WeylElement, CliError> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(WeylElement::identity());
    }
    let letters = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(k) if (1..=MAX_RANK).contains(&k) => Ok(k),
            _ => Err(usage(format!("word {text:?}: letters are integers in 1..={MAX_RANK}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if letters.len() > MAX_WORD_LEN {
        return Err(usage(format!("word {text:?}: longer than {MAX_WORD_LEN}")));
    }
    Ok(WeylElement::from_word(letters))
}

/// A parsed `--space` value.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    RankOne(RankOneSpace),
    Datum(RootDatum),
    File(PathBuf),
}

fn parse_u32_list(text: &str, n: usize, what: &str) -> Result<Vec<u32>, CliError> {
    let vals = text
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| usage(format!("{what}: {s:?} is not a non-negative integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != n {
        return Err(usage(format!("{what}: expected {n} integers")));
    }
    Ok(vals)
}

/// `h<n>`, `hn:<n>`, `rankone:<m_α>,<m_2α>` (alias `ranke1:`), `a2:<m>`,
/// `b2:<m_long>,<m_short>`, `bc2:<m_long>,<m_short>,<m_2short>`, or a path
/// to a root-datum JSON file (anything containing `/` or ending in `.json`).
pub fn parse_space(text: &str) -> Result<SpaceSpec, CliError> {
    let text = text.trim();
    let rank_one = |ma: u32, m2a: u32| {
        RankOneSpace::new(ma, m2a).map(SpaceSpec::RankOne).map_err(|e| usage(format!("space {text:?}: {e}")))
    };
    let datum = |d: Result<RootDatum, _>| d.map(SpaceSpec::Datum).map_err(|e| usage(format!("space {text:?}: {e}")));
    if text.contains('/') || text.ends_with(".json") {
        return Ok(SpaceSpec::File(PathBuf::from(text)));
    }
    if let Some(rest) = text.strip_prefix("hn:").or_else(|| text.strip_prefix('h')) {
        let n: u32 = rest.parse().map_err(|_| usage(format!("space {text:?}: expected h<n> with n ≥ 2")))?;
        if !(2..=1001).contains(&n) {
            return Err(usage(format!("space {text:?}: dimension must be in 2..=1001")));
        }
        return rank_one(n - 1, 0);
    }
    if let Some(rest) = text.strip_prefix("rankone:").or_else(|| text.strip_prefix("ranke1:")) {
        let v = parse_u32_list(rest, 2, "rank-one multiplicities")?;
        return rank_one(v[0], v[1]);
    }
    if let Some(rest) = text.strip_prefix("a2:") {
        let v = parse_u32_list(rest, 1, "a2 multiplicity")?;
        return datum(RootDatum::a2(v[0]));
    }
    if let Some(rest) = text.strip_prefix("b2:") {
        let v = parse_u32_list(rest, 2, "b2 multiplicities")?;
        return datum(RootDatum::b2(v[0], v[1]));
    }
    if let Some(rest) = text.strip_prefix("bc2:") {
        let v = parse_u32_list(rest, 3, "bc2 multiplicities")?;
        return datum(RootDatum::bc2(v[0], v[1], v[2]));
    }
    Err(usage(format!(
        "space {text:?}: expected h<n>, hn:<n>, rankone:<m_a>,<m_2a>, a2:<m>, b2:<l>,<s>, bc2:<l>,<s>,<2s> or a datum file"
    )))
}

/// A rank-one datum read from a file is treated as a rank-one space.
pub fn rank_one_of(datum: &RootDatum) -> Option<RankOneSpace> {
    if datum.rank() != 1 {
        return None;
    }
    let Multiplicity { m_alpha, m_2alpha } = datum.multiplicity(0);
    RankOneSpace::new(m_alpha, m_2alpha).ok()
}

/// Which `phi-eval` columns to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Methods {
    pub closed: bool,
    pub series: bool,
    pub quadrature: bool,
}

impl Methods {
    pub fn count(&self) -> usize {
        self.closed as usize + self.series as usize + self.quadrature as usize
    }
}

/// `closed,series,quadrature` in any order and subset.
pub fn parse_methods(text: &str) -> Result<Methods, CliError> {
    let mut m = Methods { closed: false, series: false, quadrature: false };
    for part in text.split(',').map(str::trim) {
        match part {
            "closed" => m.closed = true,
            "series" => m.series = true,
            "quadrature" | "quad" => m.quadrature = true,
            other => return Err(usage(format!("methods: unknown method {other:?} (closed, series, quadrature)"))),
        }
    }
    Ok(m)
}

pub fn format_complex(z: ComplexScalar) -> String {
    format!("{},{}", z.re, z.im)
}

pub fn format_lambda(lam: &SpectralParam) -> String {
    lam.coords().iter().map(|z| format_complex(*z)).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1,-0.5").unwrap(), ComplexScalar::new(1.0, -0.5));
        assert_eq!(parse_complex(" 2 ").unwrap(), ComplexScalar::new(2.0, 0.0));
        assert!(parse_complex("1,x").is_err());
        assert!(parse_complex("nan,0").is_err());
        assert!(parse_complex("1,2,3").is_err());
    }

    #[test]
    fn grid_endpoints() {
        assert_eq!(parse_grid("0:2:5").unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("3:9:1").unwrap(), vec![3.0]);
        assert_eq!(parse_grid("0:3:31").unwrap().len(), 31);
        for bad in ["0:1", "0:1:0", "0:1:-2", "a:1:2", "0:1:2:3"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn spaces() {
        let h2 = RankOneSpace::hyperbolic(2).unwrap();
        assert_eq!(parse_space("h2").unwrap(), SpaceSpec::RankOne(h2));
        assert_eq!(parse_space("hn:2").unwrap(), SpaceSpec::RankOne(h2));
        assert_eq!(parse_space("h3").unwrap(), SpaceSpec::RankOne(RankOneSpace::hyperbolic(3).unwrap()));
        assert_eq!(parse_space("rankone:4,3").unwrap(), parse_space("ranke1:4,3").unwrap());
        assert!(matches!(parse_space("a2:1").unwrap(), SpaceSpec::Datum(_)));
        assert!(matches!(parse_space("data/x.json").unwrap(), SpaceSpec::File(_)));
        for bad in ["h1", "h", "rankone:0,0", "rankone:1", "a2:", "sl3"] {
            assert!(parse_space(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn words_and_lambdas() {
        assert_eq!(parse_word("1,2,1").unwrap().word(), &[1, 2, 1]);
        assert_eq!(parse_word("1 2").unwrap().word(), &[1, 2]);
        assert_eq!(parse_word("e").unwrap().word_len(), 0);
        assert!(parse_word("0").is_err());
        let lam = parse_lambda("0.3,-0.2;1.1").unwrap();
        assert_eq!(lam.coords(), &[ComplexScalar::new(0.3, -0.2), ComplexScalar::new(1.1, 0.0)]);
        assert_eq!(format_lambda(&lam), "0.3,-0.2;1.1,0");
    }

    #[test]
    fn methods() {
        let m = parse_methods("closed,series").unwrap();
        assert_eq!(m, Methods { closed: true, series: true, quadrature: false });
        assert!(parse_methods("closed,magic").is_err());
    }

    proptest! {
        #[test]
        fn complex_round_trips(re in -1e6..1e6f64, im in -1e6..1e6f64) {
            let z = ComplexScalar::new(re, im);
            prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }

        #[test]
        fn parsers_never_panic(s in "\\PC{0,40}") {
            let _ = parse_complex(&s);
            let _ = parse_grid(&s);
            let _ = parse_lambda(&s);
            let _ = parse_word(&s);
            let _ = parse_space(&s);
            let _ = parse_methods(&s);
        }
    }
}
