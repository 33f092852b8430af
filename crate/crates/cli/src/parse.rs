//! Textual inputs: rationals, genus ranges and divisor classes.

use std::ops::RangeInclusive;

use moriwaki_core::divisor::{
    boundary_len, brill_noether_class, canonical_divisor, cornalba_harris, k_alpha, moriwaki_divisor,
    petri_hat_class, DivisorClass,
};
use moriwaki_core::rat::parse_rat;
use moriwaki_core::Rat;

use crate::error::CliError;
use crate::report::Provenance;

pub const MINUS_SIGN: char = '\u{2212}';

pub fn unshield(s: &str) -> String {
    s.replace(MINUS_SIGN, "-")
}

pub fn unshield_all(v: Vec<String>) -> Vec<String> {
    v.iter().map(|s| unshield(s)).collect()
}

pub fn rat(s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| CliError::Parse(e.to_string()))
}

/// `a..b`, inclusive at both ends.
pub fn genus_range(s: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Parse(format!("expected a range like 3..50, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(CliError::Parse(format!("empty range `{s}`")));
    }
    Ok(lo..=hi)
}

pub const NAMED_CLASSES: &str = "M, K, lambda, delta, delta_<i>, K_alpha:<rat>, BN, PetriHat, CH";

fn looks_numeric(s: &str) -> bool {
    s.trim_start_matches('-').chars().next().is_some_and(|c| c.is_ascii_digit())
}

/// A named class, or `a b_0 .. b_⌊g/2⌋` as separate arguments.
pub fn divisor(g: u32, args: &[String]) -> Result<(DivisorClass, Provenance), CliError> {
    match args {
        [] => Err(CliError::Parse(format!("expected a class name ({NAMED_CLASSES}) or coefficients"))),
        [name] if !looks_numeric(name) => named(g, name).map(|d| (d, Provenance::PaperFormula)),
        coeffs => {
            let expected = boundary_len(g) + 1;
            if coeffs.len() != expected {
                return Err(CliError::Parse(format!(
                    "genus {g} needs {expected} coefficients (a, b_0..b_{}), got {}",
                    expected - 2,
                    coeffs.len()
                )));
            }
            let vals = coeffs.iter().map(|c| rat(c)).collect::<Result<Vec<_>, _>>()?;
            let d = DivisorClass::new(g, vals[0].clone(), vals[1..].to_vec())?;
            Ok((d, Provenance::Input))
        }
    }
}

/// Comma-separated coefficients or a class name, as taken by `--divisor`.
pub fn divisor_flag(g: u32, s: &str) -> Result<(DivisorClass, Provenance), CliError> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    divisor(g, &parts)
}

pub fn named(g: u32, name: &str) -> Result<DivisorClass, CliError> {
    let d = match name {
        "M" => moriwaki_divisor(g)?,
        "K" => canonical_divisor(g)?,
        "lambda" => DivisorClass::lambda(g)?,
        "delta" => DivisorClass::delta(g)?,
        "BN" => brill_noether_class(g)?.base,
        "PetriHat" => petri_hat_class(g)?.base,
        "CH" => cornalba_harris(g)?,
        _ => {
            if let Some(i) = name.strip_prefix("delta_") {
                let i: usize = i.parse().map_err(|_| CliError::Parse(format!("bad boundary index in `{name}`")))?;
                DivisorClass::delta_i(g, i)?
            } else if let Some(a) = name.strip_prefix("K_alpha:") {
                k_alpha(g, &rat(a)?)?
            } else {
                return Err(CliError::Parse(format!("unknown class `{name}`; expected one of {NAMED_CLASSES}")));
            }
        }
    };
    Ok(d)
}
