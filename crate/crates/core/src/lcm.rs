//! Log canonical models `M̄_g(α)` along the ray `K_α = 13λ − (2−α)δ`, and
//! obstructions to Zariski decompositions.

use num_traits::{One, Signed};

use crate::cone::{classify_moriwaki, dual_curve, intersect, CurveClass, FacetId, MoriwakiClassification, Verdict};
use crate::divisor::{canonical_divisor, cornalba_harris, k_alpha, DivisorClass};
use crate::error::{Error, Result};
use crate::rat::{int, Rat};

/// `α* = (3g+8)/(8g+4)`: `K_α` is a strict M-divisor exactly when `α > α*`.
pub fn alpha_threshold(g: u32) -> Result<Rat> {
    if g < 3 {
        return Err(Error::GenusTooSmall(g));
    }
    let g = i64::from(g);
    Ok(int(3 * g + 8) / int(8 * g + 4))
}

/// Positivity facts on the `⟨λ, δ⟩` plane that are configured, not computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityConfig {
    /// `nef_bound·λ − δ` spans the nef section together with `λ`.
    pub nef_bound: Rat,
    /// Slope `s_g` of the effective cone, when known.
    pub slope: Option<Rat>,
}

impl Default for PositivityConfig {
    fn default() -> Self {
        Self { nef_bound: int(11), slope: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `α > α*`: `f_α` is an isomorphism over `M_g`.
    IsoOverMg,
    /// `α = α*`: `f_α` is defined over `M_g` and contracts `H̄_g`.
    ContractsHyperelliptic,
    /// `α < α*`: `H̄_g ⊆ B_−(K_α)`.
    HyperellipticInBminus,
}

pub const HYPERELLIPTIC_CAVEAT: &str = "whether f_alpha is undefined along the hyperelliptic locus is left open \
when that locus lies in a divisorial component of the stable base locus (only possible for g >= 4)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaClassification {
    pub genus: u32,
    pub alpha: Rat,
    pub regime: Regime,
    /// Known ample only at `α = 1`; known not ample when not nef.
    pub ample: Option<bool>,
    pub nef: bool,
    /// `None` when neither the cone nor the configured slope decides it.
    pub big: Option<bool>,
    pub alpha_star: Rat,
    /// `2 − 13/nef_bound`
    pub alpha_nef: Rat,
    /// `2 − 13/s_g`, when the slope is configured.
    pub alpha_psef: Option<Rat>,
    /// `13/(2−α)`
    pub ray_slope: Rat,
    pub moriwaki: MoriwakiClassification,
    /// `t` with `K_α = t·((8g+4)λ − gδ)`, when proportional.
    pub cornalba_harris_factor: Option<Rat>,
}

pub fn classify_alpha(g: u32, alpha: &Rat, config: &PositivityConfig) -> Result<AlphaClassification> {
    let ka = k_alpha(g, alpha)?;
    if !config.nef_bound.is_positive() {
        return Err(Error::InvalidConfig(format!("nef bound {} must be positive", config.nef_bound)));
    }
    let star = alpha_threshold(g)?;
    let regime = match alpha.cmp(&star) {
        std::cmp::Ordering::Greater => Regime::IsoOverMg,
        std::cmp::Ordering::Equal => Regime::ContractsHyperelliptic,
        std::cmp::Ordering::Less => Regime::HyperellipticInBminus,
    };
    let two = int(2);
    let ray_slope = int(13) / (&two - alpha);
    let alpha_nef = &two - int(13) / &config.nef_bound;
    let nef = *alpha >= alpha_nef;
    let ample = if alpha.is_one() {
        Some(true)
    } else if !nef {
        Some(false)
    } else {
        None
    };
    let alpha_psef = config.slope.as_ref().map(|s| &two - int(13) / s);
    let big = if regime == Regime::IsoOverMg {
        Some(true)
    } else {
        config.slope.as_ref().map(|s| ray_slope > *s)
    };
    Ok(AlphaClassification {
        genus: g,
        alpha: alpha.clone(),
        regime,
        ample,
        nef,
        big,
        alpha_star: star,
        alpha_nef,
        alpha_psef,
        ray_slope,
        moriwaki: classify_moriwaki(&ka),
        cornalba_harris_factor: ka.proportional_to(&cornalba_harris(g)?)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionVerdict {
    NoZariskiDecomposition,
    NoObstruction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionWitness {
    pub facet: FacetId,
    pub curve: CurveClass,
    /// `D·curve ≤ 0`
    pub pairing: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub subject: DivisorClass,
    pub kappa_hypothesis: bool,
    pub classification: MoriwakiClassification,
    pub verdict: ObstructionVerdict,
    pub witness: Option<ObstructionWitness>,
    pub narrative: String,
}

const NARRATIVE_OBSTRUCTED: &str = "assuming kappa(D) >= 1: a divisor with an R-CKM Zariski decomposition \
must satisfy the strict Moriwaki inequalities; this one does not, so it has no such decomposition";
const NARRATIVE_CANONICAL: &str = "for the canonical class this also means no K-non-positive birational \
morphism reaches a normal Q-Gorenstein model with nef canonical class; when K is big, any minimal model \
program on this space needs at least one flip";
const NARRATIVE_STRICT: &str = "the class satisfies the strict Moriwaki inequalities; no obstruction is detected";
const NARRATIVE_NO_KAPPA: &str = "kappa(D) >= 1 not asserted; the obstruction does not apply";

pub fn zariski_obstruction(d: &DivisorClass, kappa_at_least_one: bool) -> ObstructionReport {
    let g = d.genus();
    let classification = classify_moriwaki(d);
    let obstructed = kappa_at_least_one && classification.verdict != Verdict::StrictInterior;
    let witness = if obstructed {
        let facet = *classification
            .violated
            .iter()
            .next()
            .or_else(|| classification.active.iter().next())
            .expect("not strict, so some facet is violated or active");
        let curve = dual_curve(g, facet);
        let pairing = intersect(d, &curve).expect("same genus");
        debug_assert!(!pairing.is_positive());
        Some(ObstructionWitness { facet, curve, pairing })
    } else {
        None
    };
    let narrative = match (obstructed, classification.verdict) {
        (true, _) => {
            let is_canonical = canonical_divisor(g).map(|k| k == *d).unwrap_or(false);
            if is_canonical {
                format!("{NARRATIVE_OBSTRUCTED}. {NARRATIVE_CANONICAL}")
            } else {
                NARRATIVE_OBSTRUCTED.to_string()
            }
        }
        (false, Verdict::StrictInterior) => NARRATIVE_STRICT.to_string(),
        (false, _) => NARRATIVE_NO_KAPPA.to_string(),
    };
    ObstructionReport {
        subject: d.clone(),
        kappa_hypothesis: kappa_at_least_one,
        verdict: if obstructed {
            ObstructionVerdict::NoZariskiDecomposition
        } else {
            ObstructionVerdict::NoObstruction
        },
        classification,
        witness,
        narrative,
    }
}

/// `κ(M̄_g) ≥ 1` is known for `g ≥ 22`.
pub fn canonical_kappa_known(g: u32) -> bool {
    g >= 22
}

/// The slope of the Brill–Noether class, `6 + 12/(g+1)`, when `g+1` is composite.
pub fn brill_noether_slope(g: u32) -> Option<Rat> {
    crate::divisor::brill_noether_pair(g).map(|_| int(6) + int(12) / int(i64::from(g) + 1))
}

impl AlphaClassification {
    pub fn caveat(&self) -> Option<&'static str> {
        (self.regime == Regime::HyperellipticInBminus).then_some(HYPERELLIPTIC_CAVEAT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{moriwaki_divisor, DivisorClass};
    use crate::rat::frac;
    use num_traits::Zero;

    #[test]
    fn thresholds() {
        assert_eq!(alpha_threshold(3).unwrap(), frac(17, 28));
        assert_eq!(alpha_threshold(22).unwrap(), frac(37, 90));
        assert!(alpha_threshold(2).is_err());
        let mut prev = alpha_threshold(3).unwrap();
        for g in 4..=1000 {
            let t = alpha_threshold(g).unwrap();
            assert!(t < prev && t > frac(3, 8));
            prev = t;
        }
    }

    #[test]
    fn alpha_examples() {
        let cfg = PositivityConfig::default();
        let c = classify_alpha(3, &int(1), &cfg).unwrap();
        assert_eq!(c.regime, Regime::IsoOverMg);
        assert_eq!(c.ample, Some(true));
        assert!(c.nef);
        assert_eq!(c.alpha_nef, frac(9, 11));

        let c = classify_alpha(3, &frac(17, 28), &cfg).unwrap();
        assert_eq!(c.regime, Regime::ContractsHyperelliptic);
        assert_eq!(c.cornalba_harris_factor, Some(frac(13, 28)));
        assert_eq!(c.moriwaki.verdict, Verdict::Boundary);
        assert_eq!(c.big, None);

        let c = classify_alpha(3, &frac(1, 2), &cfg).unwrap();
        assert_eq!(c.regime, Regime::HyperellipticInBminus);
        assert_eq!(c.ample, Some(false));
        assert!(c.caveat().is_some());

        assert!(matches!(classify_alpha(3, &int(2), &cfg), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn bigness_from_slope() {
        let cfg = PositivityConfig { nef_bound: int(11), slope: brill_noether_slope(3) };
        // s_3 = 9 here and K_{α*} has slope 28/3 > 9
        let c = classify_alpha(3, &frac(17, 28), &cfg).unwrap();
        assert_eq!(c.big, Some(true));
        let c = classify_alpha(3, &int(0), &cfg).unwrap();
        assert_eq!(c.big, Some(false));
        assert_eq!(c.alpha_psef, Some(frac(5, 9)));
    }

    #[test]
    fn canonical_obstruction() {
        let k = canonical_divisor(22).unwrap();
        let r = zariski_obstruction(&k, true);
        assert_eq!(r.verdict, ObstructionVerdict::NoZariskiDecomposition);
        let w = r.witness.unwrap();
        assert_eq!(w.facet, FacetId::Delta(0));
        assert!(w.pairing.is_negative());
        assert!(r.narrative.contains("flip"));

        let r = zariski_obstruction(&k, false);
        assert_eq!(r.verdict, ObstructionVerdict::NoObstruction);
        assert!(r.witness.is_none());
    }

    #[test]
    fn moriwaki_obstructed_lambda_not() {
        let r = zariski_obstruction(&moriwaki_divisor(7).unwrap(), true);
        assert_eq!(r.verdict, ObstructionVerdict::NoZariskiDecomposition);
        assert!(r.witness.unwrap().pairing.is_zero());
        let r = zariski_obstruction(&DivisorClass::lambda(7).unwrap(), true);
        assert_eq!(r.verdict, ObstructionVerdict::NoObstruction);
    }

    #[test]
    fn bn_slopes() {
        assert_eq!(brill_noether_slope(24), Some(frac(162, 25)));
        assert_eq!(brill_noether_slope(4), None);
        assert!(!canonical_kappa_known(21));
        assert!(canonical_kappa_known(22));
    }
}
