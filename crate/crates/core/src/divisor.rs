//! Divisor classes on the span of `λ, δ_0, …, δ_⌊g/2⌋`.
//!
//! A class is stored as `(a; b_0, …, b_⌊g/2⌋)` meaning `D = aλ − Σ b_i δ_i`.
//! The stored `b_i` is therefore the *negated* natural coefficient of `δ_i`;
//! [`DivisorClass::natural_coefficients`] gives the other view.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::petri;
use crate::rat::{int, is_prime, Rat};

/// Number of boundary classes `δ_0..δ_⌊g/2⌋` for genus `g`.
pub fn boundary_len(g: u32) -> usize {
    (g / 2) as usize + 1
}

fn check_genus(g: u32) -> Result<()> {
    if g < 3 {
        Err(Error::GenusTooSmall(g))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    genus: u32,
    a: Rat,
    b: Vec<Rat>,
}

impl DivisorClass {
    pub fn new(genus: u32, a: Rat, b: Vec<Rat>) -> Result<Self> {
        check_genus(genus)?;
        let expected = boundary_len(genus);
        if b.len() != expected {
            return Err(Error::WrongCoefficientCount { genus, expected, got: b.len() });
        }
        Ok(Self { genus, a, b })
    }

    pub fn zero(genus: u32) -> Result<Self> {
        check_genus(genus)?;
        Ok(Self { genus, a: Rat::zero(), b: vec![Rat::zero(); boundary_len(genus)] })
    }

    /// The Hodge class `λ`.
    pub fn lambda(genus: u32) -> Result<Self> {
        let mut d = Self::zero(genus)?;
        d.a = Rat::one();
        Ok(d)
    }

    /// The total boundary `δ = Σ δ_i` (stored `b_i = −1`).
    pub fn delta(genus: u32) -> Result<Self> {
        check_genus(genus)?;
        Ok(Self { genus, a: Rat::zero(), b: vec![-Rat::one(); boundary_len(genus)] })
    }

    /// A single boundary class `δ_i`.
    pub fn delta_i(genus: u32, i: usize) -> Result<Self> {
        let mut d = Self::zero(genus)?;
        let hi = d.b.len() - 1;
        if i > hi {
            return Err(Error::IndexOutOfRange { index: i as u64, lo: 0, hi: hi as u64 });
        }
        d.b[i] = -Rat::one();
        Ok(d)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// The `λ`-coefficient.
    pub fn a(&self) -> &Rat {
        &self.a
    }

    /// Stored boundary coefficients (negated natural `δ_i`-coefficients).
    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    /// `(a, [−b_0, …])`: coefficients in the basis `λ, δ_0, …` without the sign flip.
    pub fn natural_coefficients(&self) -> (Rat, Vec<Rat>) {
        (self.a.clone(), self.b.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, t: &Rat) -> Self {
        Self {
            genus: self.genus,
            a: &self.a * t,
            b: self.b.iter().map(|x| x * t).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_genus(self, other)?;
        Ok(Self {
            genus: self.genus,
            a: &self.a + &other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_genus(self, other)?;
        Ok(Self {
            genus: self.genus,
            a: &self.a - &other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x - y).collect(),
        })
    }

    /// `a / min_i b_i`. Undefined unless every `b_i > 0`.
    pub fn slope(&self) -> Result<Rat> {
        if let Some((index, value)) = self.b.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(Error::NonpositiveBoundary { index, value: value.clone() });
        }
        let min = self.b.iter().min().expect("boundary_len >= 2");
        Ok(&self.a / min)
    }

    /// Returns `t > 0` with `self = t·other`, if there is one.
    pub fn proportional_to(&self, other: &Self) -> Result<Option<Rat>> {
        same_genus(self, other)?;
        if other.is_zero() {
            return Err(Error::ZeroClass);
        }
        let coords = |d: &Self| std::iter::once(d.a.clone()).chain(d.b.iter().cloned()).collect::<Vec<_>>();
        let (x, y) = (coords(self), coords(other));
        let pivot = y.iter().position(|v| !v.is_zero()).expect("nonzero class");
        let t = &x[pivot] / &y[pivot];
        if !t.is_positive() {
            return Ok(None);
        }
        let ok = x.iter().zip(&y).all(|(xi, yi)| *xi == yi * &t);
        Ok(ok.then_some(t))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a)?;
        for (i, x) in self.b.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{x}")?;
        }
        write!(f, ")")
    }
}

fn same_genus(x: &DivisorClass, y: &DivisorClass) -> Result<()> {
    if x.genus != y.genus {
        Err(Error::GenusMismatch(x.genus, y.genus))
    } else {
        Ok(())
    }
}

pub fn make_divisor(g: u32, a: Rat, b: Vec<Rat>) -> Result<DivisorClass> {
    DivisorClass::new(g, a, b)
}

/// `M = (8g+4)λ − gδ_0 − Σ 4i(g−i)δ_i`.
pub fn moriwaki_divisor(g: u32) -> Result<DivisorClass> {
    check_genus(g)?;
    let g64 = i64::from(g);
    let b = (0..boundary_len(g) as i64)
        .map(|i| if i == 0 { int(g64) } else { int(4 * i * (g64 - i)) })
        .collect();
    DivisorClass::new(g, int(8 * g64 + 4), b)
}

/// `K = 13λ − 2δ_0 − 3δ_1 − 2δ_2 − … − 2δ_⌊g/2⌋`.
pub fn canonical_divisor(g: u32) -> Result<DivisorClass> {
    check_genus(g)?;
    let b = (0..boundary_len(g)).map(|i| if i == 1 { int(3) } else { int(2) }).collect();
    DivisorClass::new(g, int(13), b)
}

/// `K_α = 13λ − (2−α)δ` for `α ∈ [0, 1]`.
pub fn k_alpha(g: u32, alpha: &Rat) -> Result<DivisorClass> {
    check_genus(g)?;
    if alpha.is_negative() || *alpha > Rat::one() {
        return Err(Error::AlphaOutOfRange(alpha.clone()));
    }
    let c = int(2) - alpha;
    DivisorClass::new(g, int(13), vec![c; boundary_len(g)])
}

/// The Cornalba–Harris class `(8g+4)λ − gδ`.
pub fn cornalba_harris(g: u32) -> Result<DivisorClass> {
    check_genus(g)?;
    DivisorClass::new(g, int(8 * i64::from(g) + 4), vec![int(i64::from(g)); boundary_len(g)])
}

pub fn linear_combination(terms: &[(Rat, DivisorClass)]) -> Result<DivisorClass> {
    let (first, rest) = terms.split_first().ok_or(Error::EmptyCombination)?;
    rest.iter().try_fold(first.1.scale(&first.0), |acc, (t, d)| acc.add(&d.scale(t)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// Brill–Noether divisor `D^r_s` with `(r+1)(s−1) = g+1`.
    BrillNoether { r: u32, s: u32 },
    /// Petri divisor `E^1_d` (`g = 2(d−1)`), with `f̂_i` in place of `f_i` for
    /// `i ≥ 3`. `gammas[j]` is `γ_{j+3}`.
    PetriHat { d: u32, gammas: Vec<Rat> },
}

/// A witness class `E ≡ αλ − Σ β_i δ_i`; `base.a()` is `α` and `base.b()` the `β_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessClass {
    pub base: DivisorClass,
    pub kind: WitnessKind,
}

impl WitnessClass {
    pub fn alpha(&self) -> &Rat {
        self.base.a()
    }

    pub fn betas(&self) -> &[Rat] {
        self.base.b()
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            WitnessKind::BrillNoether { .. } => "BrillNoether",
            WitnessKind::PetriHat { .. } => "PetriHat",
        }
    }
}

/// `(r, s)` with `(r+1)(s−1) = g+1`, `s ≥ 3`, `r ≥ 1`, smallest `s` first.
pub fn brill_noether_pair(g: u32) -> Option<(u32, u32)> {
    let n = g + 1;
    (2..n).filter(|m| n.is_multiple_of(*m) && n / m >= 2).map(|m| (n / m - 1, m + 1)).next()
}

/// `(g+3)λ − (g+1)/6 δ_0 − Σ i(g−i) δ_i`.
pub fn brill_noether_class(g: u32) -> Result<WitnessClass> {
    check_genus(g)?;
    let (r, s) = brill_noether_pair(g).ok_or(Error::GPlusOnePrime(g))?;
    let g64 = i64::from(g);
    let b = (0..boundary_len(g) as i64)
        .map(|i| if i == 0 { Rat::new(BigInt::from(g64 + 1), BigInt::from(6)) } else { int(i * (g64 - i)) })
        .collect();
    Ok(WitnessClass {
        base: DivisorClass::new(g, int(g64 + 3), b)?,
        kind: WitnessKind::BrillNoether { r, s },
    })
}

/// `(6d²+d−6)λ − f_0δ_0 − f_1δ_1 − f_2δ_2 − Σ_{i≥3} f̂_i δ_i` with `d = g/2 + 1`.
pub fn petri_hat_class(g: u32) -> Result<WitnessClass> {
    check_genus(g)?;
    if !is_prime(u64::from(g) + 1) {
        return Err(Error::GPlusOneNotPrime(g));
    }
    if g % 2 == 1 {
        return Err(Error::GenusOdd(g));
    }
    let d = g / 2 + 1;
    let d64 = i64::from(d);
    let mut b = vec![
        int(d64 * (d64 - 1)),
        petri::f1(d64),
        petri::f2(d64),
    ];
    for i in 3..d64 {
        b.push(petri::f_hat(d as u64, i as u64)?);
    }
    let gammas = if d >= 4 {
        petri::gamma_row(u64::from(d) - 1)
    } else {
        Vec::new()
    };
    Ok(WitnessClass {
        base: DivisorClass::new(g, int(6 * d64 * d64 + d64 - 6), b)?,
        kind: WitnessKind::PetriHat { d, gammas },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn make_divisor_validates() {
        let m = make_divisor(3, int(28), ints(&[3, 8])).unwrap();
        assert_eq!(m, moriwaki_divisor(3).unwrap());
        assert!(make_divisor(3, int(0), ints(&[0, 0])).unwrap().is_zero());
        assert_eq!(make_divisor(4, int(13), ints(&[2, 3, 2])).unwrap(), canonical_divisor(4).unwrap());
        assert_eq!(make_divisor(2, int(1), ints(&[0, 0])), Err(Error::GenusTooSmall(2)));
        assert!(matches!(
            make_divisor(4, int(1), ints(&[0, 0])),
            Err(Error::WrongCoefficientCount { expected: 3, got: 2, .. })
        ));
    }

    #[test]
    fn moriwaki_values() {
        assert_eq!(moriwaki_divisor(3).unwrap().to_string(), "(28; 3, 8)");
        assert_eq!(moriwaki_divisor(4).unwrap().to_string(), "(36; 4, 12, 16)");
        assert_eq!(moriwaki_divisor(5).unwrap().to_string(), "(44; 5, 16, 24)");
    }

    #[test]
    fn canonical_values() {
        assert_eq!(canonical_divisor(3).unwrap().to_string(), "(13; 2, 3)");
        let k22 = canonical_divisor(22).unwrap();
        assert_eq!(k22.b().len(), 12);
        assert_eq!(k22.b()[1], int(3));
        assert!(k22.b().iter().enumerate().all(|(i, x)| i == 1 || *x == int(2)));
    }

    #[test]
    fn k_alpha_values() {
        assert_eq!(k_alpha(3, &int(1)).unwrap().to_string(), "(13; 1, 1)");
        assert_eq!(k_alpha(3, &int(0)).unwrap().to_string(), "(13; 2, 2)");
        assert_eq!(k_alpha(3, &frac(17, 28)).unwrap().to_string(), "(13; 39/28, 39/28)");
        assert!(matches!(k_alpha(3, &int(2)), Err(Error::AlphaOutOfRange(_))));
        assert!(matches!(k_alpha(3, &frac(-1, 2)), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn brill_noether() {
        let w = brill_noether_class(3).unwrap();
        assert_eq!(w.base.to_string(), "(6; 2/3, 2)");
        assert_eq!(w.kind, WitnessKind::BrillNoether { r: 1, s: 3 });
        assert_eq!(brill_noether_class(5).unwrap().base.to_string(), "(8; 1, 4, 6)");
        assert_eq!(brill_noether_class(4), Err(Error::GPlusOnePrime(4)));
        // 12 = 2·6: smallest s is 3, r = 5
        assert_eq!(brill_noether_pair(11), Some((5, 3)));
        // 9 = 3·3
        assert_eq!(brill_noether_pair(8), Some((2, 4)));
    }

    #[test]
    fn petri_hat() {
        let w = petri_hat_class(4).unwrap();
        assert_eq!(w.base.to_string(), "(51; 6, 21, 27)");
        assert_eq!(w.kind, WitnessKind::PetriHat { d: 3, gammas: vec![] });
        let w = petri_hat_class(6).unwrap();
        assert_eq!(w.base.to_string(), "(94; 12, 50, 78, 84)");
        assert_eq!(w.kind, WitnessKind::PetriHat { d: 4, gammas: vec![int(4)] });
        assert_eq!(petri_hat_class(3), Err(Error::GPlusOneNotPrime(3)));
        assert_eq!(petri_hat_class(5), Err(Error::GPlusOneNotPrime(5)));
    }

    #[test]
    fn combinations() {
        let m = moriwaki_divisor(3).unwrap();
        let z = linear_combination(&[(int(1), m.clone()), (int(-1), m.clone())]).unwrap();
        assert!(z.is_zero());
        let scaled = linear_combination(&[(frac(1, 28), m.clone())]).unwrap();
        assert_eq!(scaled.to_string(), "(1; 3/28, 2/7)");
        let alpha = int(1);
        let k = linear_combination(&[
            (int(13), DivisorClass::lambda(3).unwrap()),
            (-(int(2) - &alpha), DivisorClass::delta(3).unwrap()),
        ])
        .unwrap();
        assert_eq!(k, k_alpha(3, &alpha).unwrap());
        assert_eq!(linear_combination(&[]), Err(Error::EmptyCombination));
        let m4 = moriwaki_divisor(4).unwrap();
        assert_eq!(
            linear_combination(&[(int(1), m), (int(1), m4)]),
            Err(Error::GenusMismatch(3, 4))
        );
    }

    #[test]
    fn slopes() {
        assert_eq!(brill_noether_class(5).unwrap().base.slope().unwrap(), int(8));
        assert_eq!(moriwaki_divisor(3).unwrap().slope().unwrap(), frac(28, 3));
        for g in 3..40u32 {
            let gi = i64::from(g);
            let star = frac(3 * gi + 8, 8 * gi + 4);
            let s = k_alpha(g, &star).unwrap().slope().unwrap();
            assert_eq!(s, frac(8 * gi + 4, gi));
        }
        assert!(matches!(
            DivisorClass::lambda(3).unwrap().slope(),
            Err(Error::NonpositiveBoundary { index: 0, .. })
        ));
    }

    #[test]
    fn proportionality() {
        let m = moriwaki_divisor(5).unwrap();
        assert_eq!(m.proportional_to(&m).unwrap(), Some(int(1)));
        let l = DivisorClass::lambda(3).unwrap();
        let d = DivisorClass::delta(3).unwrap();
        assert_eq!(l.proportional_to(&d).unwrap(), None);
        assert_eq!(m.scale(&int(-2)).proportional_to(&m).unwrap(), None);
        assert_eq!(l.proportional_to(&DivisorClass::zero(3).unwrap()), Err(Error::ZeroClass));
        let g = 7i64;
        let ka = k_alpha(7, &frac(3 * g + 8, 8 * g + 4)).unwrap();
        let ch = cornalba_harris(7).unwrap();
        assert_eq!(ka.proportional_to(&ch).unwrap(), Some(frac(13, 8 * g + 4)));
    }

    #[test]
    fn natural_view_flips_sign() {
        let m = moriwaki_divisor(3).unwrap();
        let (a, nat) = m.natural_coefficients();
        assert_eq!(a, int(28));
        assert_eq!(nat, ints(&[-3, -8]));
        assert_eq!(DivisorClass::delta_i(4, 2).unwrap().natural_coefficients().1, ints(&[0, 0, 1]));
        assert!(DivisorClass::delta_i(4, 3).is_err());
    }
}
