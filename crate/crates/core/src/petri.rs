//! Factorial machinery behind the Petri witness.
//!
//! With `k = d − 1`, `F = (2k−2)!/(k!(k−1)!)` and
//! `b_l = (2l)!(2k−2−2l)! / ((l+1)! l! (k−l)! (k−l+1)!)`,
//!
//! ```text
//! γ_i = (i−1)(i−2)F − Σ_{l=1}^{⌊(i−2)/2⌋} 2(i−1−2l) b_l        (3 ≤ i ≤ k)
//! ```
//!
//! Nonnegativity of every `γ_i` is what makes the Petri-hat witness effective.
//! It is established two ways: by direct evaluation, and through the chain
//! `c_i = (i−2)F − Σ_{l ≤ ⌊(i−2)/2⌋} b_l`, `d_i = c_i − c_{i−1}`, `v_h = b_h`,
//! the sign analysis of `N_{k,h}` and the `a_h`, `a'_h` ladders.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{int, Factorials, Rat, Surd};

/// `f_1 = (2d−3)(3d−2)`.
pub fn f1(d: i64) -> Rat {
    int((2 * d - 3) * (3 * d - 2))
}

/// `f_2 = 3(d−2)(4d−3)`.
pub fn f2(d: i64) -> Rat {
    int(3 * (d - 2) * (4 * d - 3))
}

/// `6d² + d − 6`, the `λ`-coefficient of the Petri class.
pub fn petri_lambda(d: i64) -> Rat {
    int(6 * d * d + d - 6)
}

/// `f̂_i = −i(i−2)f_1 + (i(i−1)/2) f_2`, a lower bound for `f_i` whenever `γ_i ≥ 0`.
pub fn f_hat(d: u64, i: u64) -> Result<Rat> {
    if d < 4 || i < 3 || i > d - 1 {
        return Err(Error::IndexOutOfRange { index: i, lo: 3, hi: d.saturating_sub(1) });
    }
    let (d, i) = (d as i64, i as i64);
    Ok(-int(i * (i - 2)) * f1(d) + Rat::new(BigInt::from(i * (i - 1)), BigInt::from(2)) * f2(d))
}

/// Precomputed factorial data for one value of `k`.
///
/// Everything is scaled by `S = ((k+1)!)²`, which clears every denominator
/// in the definition of `γ_i`, so the sums run over integers.
#[derive(Debug)]
pub struct GammaTable {
    k: u64,
    scale: BigInt,
    central_scaled: BigInt,
    b_scaled: Vec<BigInt>,
}

impl GammaTable {
    pub fn new(k: u64, fact: &Factorials) -> Self {
        assert!(k >= 2, "k must be at least 2");
        let kf1 = fact.get(k + 1);
        let scale = &kf1 * &kf1;
        let central_scaled = fact.get(2 * k - 2) * &scale / (fact.get(k) * fact.get(k - 1));
        let b_scaled = (0..=k / 2)
            .map(|l| {
                if 2 * l > 2 * k - 2 {
                    return BigInt::zero();
                }
                let num = fact.get(2 * l) * fact.get(2 * k - 2 - 2 * l) * &scale;
                let den = fact.get(l + 1) * fact.get(l) * fact.get(k - l) * fact.get(k - l + 1);
                debug_assert!(num.is_multiple_of(&den));
                num / den
            })
            .collect();
        Self { k, scale, central_scaled, b_scaled }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `F = (2k−2)!/(k!(k−1)!)`.
    pub fn central(&self) -> Rat {
        Rat::new(self.central_scaled.clone(), self.scale.clone())
    }

    /// `b_l` (equivalently `v_l`).
    pub fn b(&self, l: u64) -> Rat {
        Rat::new(self.b_scaled[l as usize].clone(), self.scale.clone())
    }

    /// Direct evaluation of `γ_i`.
    pub fn gamma(&self, i: u64) -> Result<Rat> {
        if i < 3 || i > self.k {
            return Err(Error::IndexOutOfRange { index: i, lo: 3, hi: self.k });
        }
        let mut acc = BigInt::from((i - 1) * (i - 2)) * &self.central_scaled;
        for l in 1..=(i - 2) / 2 {
            acc -= BigInt::from(2 * (i - 1 - 2 * l)) * &self.b_scaled[l as usize];
        }
        Ok(Rat::new(acc, self.scale.clone()))
    }

    /// `c_i = (i−2)F − Σ_{l=1}^{⌊(i−2)/2⌋} b_l` for `4 ≤ i ≤ k`, in order.
    pub fn c_chain(&self) -> Vec<Rat> {
        let mut prefix = BigInt::zero();
        let mut out = Vec::new();
        let mut l_done = 0u64;
        for i in 4..=self.k {
            while l_done < (i - 2) / 2 {
                l_done += 1;
                prefix += &self.b_scaled[l_done as usize];
            }
            let c = BigInt::from(i - 2) * &self.central_scaled - &prefix;
            out.push(Rat::new(c, self.scale.clone()));
        }
        out
    }
}

pub fn gamma(k: u64, i: u64) -> Result<Rat> {
    if k < 2 || i < 3 || i > k {
        return Err(Error::IndexOutOfRange { index: i, lo: 3, hi: k });
    }
    GammaTable::new(k, &Factorials::new()).gamma(i)
}

/// `[γ_3, …, γ_k]` by direct evaluation.
pub fn gamma_row(k: u64) -> Vec<Rat> {
    if k < 3 {
        return Vec::new();
    }
    let table = GammaTable::new(k, &Factorials::new());
    (3..=k).map(|i| table.gamma(i).expect("index in range")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ecco1Row {
    pub i: u64,
    /// `f̂_i`
    pub lhs: Rat,
    /// `(6d²+d−6) i (2d−2−i) / (4d−3)`
    pub rhs: Rat,
    pub holds: bool,
    /// The same inequality after clearing denominators:
    /// `24d³−92d²+109d−42 > (16d²−47d+30) i`.
    pub reduced_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ecco1Report {
    pub d: u64,
    pub rows: Vec<Ecco1Row>,
    /// `8d³ − 29d² + 32d − 12 > 0`, the `i = d − 1` worst case.
    pub worst_case_holds: bool,
}

impl Ecco1Report {
    /// Vacuously true when the index range is empty (`d = 3`).
    pub fn all_hold(&self) -> bool {
        self.worst_case_holds && self.rows.iter().all(|r| r.holds && r.reduced_holds)
    }
}

/// `f̂_i > (6d²+d−6) i (2d−2−i)/(4d−3)` for every `3 ≤ i ≤ d−1`.
pub fn check_ecco1(d: u64) -> Ecco1Report {
    let di = d as i64;
    let lam = petri_lambda(di);
    let big = |x: i64| BigInt::from(x);
    let rows = (3..d)
        .map(|i| {
            let ii = i as i64;
            let lhs = f_hat(d, i).expect("index in range");
            let rhs = &lam * int(ii * (2 * di - 2 - ii)) / int(4 * di - 3);
            let holds = lhs > rhs;
            let dd = big(di);
            let left = big(24) * &dd * &dd * &dd - big(92) * &dd * &dd + big(109) * &dd - big(42);
            let right = (big(16) * &dd * &dd - big(47) * &dd + big(30)) * big(ii);
            Ecco1Row { i, lhs, rhs, holds, reduced_holds: left > right }
        })
        .collect();
    let dd = BigInt::from(di);
    let worst = BigInt::from(8) * &dd * &dd * &dd - BigInt::from(29) * &dd * &dd
        + BigInt::from(32) * &dd
        - BigInt::from(12);
    Ecco1Report { d, rows, worst_case_holds: worst.is_positive() }
}

/// `N_{k,h} = −3k² + 13kh − 2k − 10h² + 6h − 2`.
pub fn n_kh(k: i64, h: i64) -> BigInt {
    BigInt::from(-3 * k * k + 13 * k * h - 2 * k - 10 * h * h + 6 * h - 2)
}

/// `N_{k,h}` in its unexpanded form `(2h−1)(k−h+2)(k−h+1) − (k−h)(2k−2h−1)(h+1)`.
pub fn n_kh_product(k: i64, h: i64) -> BigInt {
    BigInt::from((2 * h - 1) * (k - h + 2) * (k - h + 1) - (k - h) * (2 * k - 2 * h - 1) * (h + 1))
}

/// `C_{k,h} = 2(2h−2)!(2k−2h−2)! / (h!(h−1)!(k−h+1)!(k−h)!(h+1)(k−h+2)(k−h+1))`.
pub fn c_kh(k: u64, h: u64, fact: &Factorials) -> Rat {
    let r = fact.ratio(&[2 * h - 2, 2 * k - 2 * h - 2], &[h, h - 1, k - h + 1, k - h]);
    r * int(2) / int(((h + 1) * (k - h + 2) * (k - h + 1)) as i64)
}

/// The roots `k_1 ≤ k_2` of `N_{k,h} = 0` as a polynomial in `h`:
/// `(13k + 6 ∓ √(49k² + 76k − 44)) / 20`.
pub fn n_kh_roots(k: i64) -> (Surd, Surd) {
    let rational = Rat::new(BigInt::from(13 * k + 6), BigInt::from(20));
    let radicand = BigInt::from(49 * k * k + 76 * k - 44);
    let scale = Rat::new(BigInt::one(), BigInt::from(20));
    (
        Surd { rational: rational.clone(), coeff: -scale.clone(), radicand: radicand.clone() },
        Surd { rational, coeff: scale, radicand },
    )
}

/// `a_h = (4h+2)! h! (h+1)! (h+2)! (h+3)! / ((2h+2)!² (2h+1)! (2h)!)`.
pub fn a_h(h: u64, fact: &Factorials) -> Rat {
    fact.ratio(&[4 * h + 2, h, h + 1, h + 2, h + 3], &[2 * h + 2, 2 * h + 2, 2 * h + 1, 2 * h])
}

/// `S_h = (4h−2)! (h−1)! h! (h+1)! (h+2)! / ((2h)!² (2h−1)! (2h−2)!)`.
pub fn s_h(h: u64, fact: &Factorials) -> Rat {
    fact.ratio(&[4 * h - 2, h - 1, h, h + 1, h + 2], &[2 * h, 2 * h, 2 * h - 1, 2 * h - 2])
}

/// `T_h = (4h+1)(4h−1)(h+2)(h+3) / ((2h+1)²(2h−1)(2h+2))`, the ratio `a_h / a_{h−1}`.
pub fn t_h(h: u64) -> Rat {
    let h = h as i64;
    Rat::new(
        BigInt::from((4 * h + 1) * (4 * h - 1) * (h + 2) * (h + 3)),
        BigInt::from((2 * h + 1) * (2 * h + 1) * (2 * h - 1) * (2 * h + 2)),
    )
}

/// `a'_h = (4h+4)! h! (h+1)! (h+3)! (h+4)! / ((2h+3)! (2h+2)! (2h)! (2h+4)!)`.
pub fn a_prime_h(h: u64, fact: &Factorials) -> Rat {
    fact.ratio(&[4 * h + 4, h, h + 1, h + 3, h + 4], &[2 * h + 3, 2 * h + 2, 2 * h, 2 * h + 4])
}

/// `S'_h = (4h)! (h−1)! h! (h+2)! (h+3)! / ((2h+1)! (2h)! (2h−2)! (2h+2)!)`.
pub fn s_prime_h(h: u64, fact: &Factorials) -> Rat {
    fact.ratio(&[4 * h, h - 1, h, h + 2, h + 3], &[2 * h + 1, 2 * h, 2 * h - 2, 2 * h + 2])
}

/// `T'_h = (4h+3)(4h+1)(h+3)(h+4) / (2(2h+3)²(2h−1)(h+2))`.
pub fn t_prime_h(h: u64) -> Rat {
    let h = h as i64;
    Rat::new(
        BigInt::from((4 * h + 3) * (4 * h + 1) * (h + 3) * (h + 4)),
        BigInt::from(2 * (2 * h + 3) * (2 * h + 3) * (2 * h - 1) * (h + 2)),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderStep {
    pub h: u64,
    pub a: Rat,
    pub s: Rat,
    pub t: Rat,
    pub a_prime: Rat,
    pub s_prime: Rat,
    pub t_prime: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VhRecord {
    pub h: u64,
    pub v: Rat,
    /// `None` for `h = 2`.
    pub c_kh: Option<Rat>,
    pub n_kh: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub name: &'static str,
    pub holds: bool,
    /// Number of individual instances checked (0 means vacuous).
    pub checked: usize,
}

/// Full exact audit of the `γ_i ≥ 0` argument for one `k = d − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriAudit {
    pub d: u64,
    pub k: u64,
    pub central: Rat,
    /// `(i, γ_i)` for `3 ≤ i ≤ k`, direct evaluation.
    pub gammas: Vec<(u64, Rat)>,
    /// `(i, c_i)` for `4 ≤ i ≤ k`, closed form.
    pub c: Vec<(u64, Rat)>,
    /// `(i, d_i)` for `5 ≤ i ≤ k`.
    pub d_values: Vec<(u64, Rat)>,
    /// `h` ranges over `2..=⌊(k−2)/2⌋`.
    pub v: Vec<VhRecord>,
    pub k1: Surd,
    pub k2: Surd,
    pub ladder: Vec<LadderStep>,
    pub claims: Vec<Claim>,
}

impl PetriAudit {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

struct Claims(Vec<Claim>);

impl Claims {
    fn push<I: IntoIterator<Item = bool>>(&mut self, name: &'static str, checks: I) {
        let mut checked = 0;
        let mut holds = true;
        for ok in checks {
            checked += 1;
            holds &= ok;
        }
        self.0.push(Claim { name, holds, checked });
    }
}

pub fn reduction_chain(k: u64) -> Result<PetriAudit> {
    reduction_chain_with(k, &Factorials::new())
}

/// As [`reduction_chain`], sharing a factorial memo across calls.
pub fn reduction_chain_with(k: u64, fact: &Factorials) -> Result<PetriAudit> {
    if k < 3 {
        return Err(Error::KTooSmall(k));
    }
    let table = GammaTable::new(k, fact);
    let central = table.central();
    let two = int(2);
    let mut claims = Claims(Vec::new());

    let gammas: Vec<(u64, Rat)> = (3..=k).map(|i| (i, table.gamma(i).expect("in range"))).collect();
    let gamma_at = |i: u64| &gammas[(i - 3) as usize].1;
    let c: Vec<(u64, Rat)> = (4..=k).zip(table.c_chain()).collect();

    claims.push("gamma3_equals_2F", [*gamma_at(3) == &central * &two]);
    claims.push("gamma3_positive", [gamma_at(3).is_positive()]);
    claims.push("gamma_nonnegative", gammas.iter().map(|(_, g)| !g.is_negative()));
    claims.push(
        "c_is_half_gamma_difference",
        c.iter().map(|(i, ci)| *ci == (gamma_at(*i) - gamma_at(*i - 1)) / &two),
    );
    let mut running = gamma_at(3).clone();
    let mut telescoped = Vec::new();
    for (i, ci) in &c {
        running += ci * &two;
        telescoped.push(running == *gamma_at(*i));
    }
    claims.push("gamma_telescopes", telescoped);
    let c4_closed = (k >= 4).then(|| {
        fact.ratio(&[2 * k - 4], &[k, k - 1]) * int((2 * (2 * k - 2) * (2 * k - 3) - 1) as i64)
    });
    claims.push(
        "c4_closed_form",
        c4_closed.iter().map(|closed| *closed == c[0].1 && !closed.is_negative()),
    );
    claims.push("c_nonnegative", c.iter().map(|(_, ci)| !ci.is_negative()));

    let d_values: Vec<(u64, Rat)> = c.windows(2).map(|w| (w[1].0, &w[1].1 - &w[0].1)).collect();
    claims.push(
        "d_odd_equals_F",
        d_values.iter().filter(|(i, _)| i % 2 == 1).map(|(_, di)| *di == central),
    );
    claims.push(
        "d_even_equals_F_minus_v",
        d_values
            .iter()
            .filter(|(i, _)| i % 2 == 0)
            .map(|(i, di)| *di == &central - table.b((i - 2) / 2)),
    );
    claims.push("d_nonnegative", d_values.iter().map(|(_, di)| !di.is_negative()));

    let m = (k - 2) / 2;
    let mut v = Vec::new();
    for h in 2..=m {
        let vh = table.b(h);
        let (ckh, nkh) = if h >= 3 {
            (Some(c_kh(k, h, fact)), Some(n_kh(k as i64, h as i64)))
        } else {
            (None, None)
        };
        v.push(VhRecord { h, v: vh, c_kh: ckh, n_kh: nkh });
    }
    let v2_closed = (m >= 2).then(|| fact.ratio(&[2 * k - 6], &[k - 2, k - 1]) * &two);
    claims.push("v2_closed_form", v2_closed.iter().map(|x| *x == v[0].v));
    claims.push("v_bounded_by_F", v.iter().map(|r| r.v <= central));
    claims.push(
        "n_kh_forms_agree",
        (3..=m).map(|h| n_kh(k as i64, h as i64) == n_kh_product(k as i64, h as i64)),
    );
    claims.push(
        "v_difference_factors",
        v.windows(2).map(|w| {
            let (ckh, nkh) = (w[1].c_kh.as_ref().unwrap(), w[1].n_kh.as_ref().unwrap());
            &w[1].v - &w[0].v == ckh * Rat::from_integer(nkh.clone())
        }),
    );
    claims.push("c_kh_nonnegative", v.iter().filter_map(|r| r.c_kh.as_ref()).map(|c| !c.is_negative()));

    let (k1, k2) = n_kh_roots(k as i64);
    claims.push(
        "n_kh_sign_matches_roots",
        v.iter().filter_map(|r| r.n_kh.as_ref().map(|n| (r.h, n))).map(|(h, n)| {
            let hr = int(h as i64);
            let outside = k1.cmp_rat(&hr) != Ordering::Less || k2.cmp_rat(&hr) != Ordering::Greater;
            (!n.is_positive()) == outside
        }),
    );
    claims.push("k2_exceeds_range", (m >= 2).then(|| k2.cmp_rat(&int(m as i64)) == Ordering::Greater));
    claims.push(
        "v_peak_at_endpoints",
        (m >= 2).then(|| {
            let max = v.iter().map(|r| &r.v).max().unwrap();
            let ends = std::cmp::max(&v[0].v, &v[v.len() - 1].v);
            max == ends
        }),
    );

    let ladder: Vec<LadderStep> = (2..=m.max(2))
        .map(|h| LadderStep {
            h,
            a: a_h(h, fact),
            s: s_h(h, fact),
            t: t_h(h),
            a_prime: a_prime_h(h, fact),
            s_prime: s_prime_h(h, fact),
            t_prime: t_prime_h(h),
        })
        .collect();
    let one = Rat::one();
    claims.push("a2_at_least_one", [ladder[0].a >= one && ladder[0].a_prime >= one]);
    claims.push(
        "ladder_increments",
        ladder.windows(2).map(|w| {
            &w[1].a - &w[0].a == &w[1].s * (&w[1].t - &one)
                && &w[1].a_prime - &w[0].a_prime == &w[1].s_prime * (&w[1].t_prime - &one)
                && w[1].s == w[0].a
                && w[1].s_prime == w[0].a_prime
        }),
    );
    claims.push(
        "t_at_least_one",
        ladder.iter().skip(1).map(|s| s.t >= one && s.t_prime >= one),
    );
    claims.push(
        "endpoint_ratio_is_ladder",
        (m >= 2).then(|| {
            let ratio = &central / &v[v.len() - 1].v;
            let step = &ladder[ladder.len() - 1];
            if k.is_multiple_of(2) {
                ratio == step.a
            } else {
                ratio == step.a_prime
            }
        }),
    );

    Ok(PetriAudit {
        d: k + 1,
        k,
        central,
        gammas,
        c,
        d_values,
        v,
        k1,
        k2,
        ladder,
        claims: claims.0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialCheck {
    pub name: &'static str,
    pub variable: char,
    pub from: i64,
    pub to: i64,
    pub strict: bool,
    pub checked: usize,
    /// First `(argument, value)` where the inequality fails.
    pub first_failure: Option<(i64, i128)>,
}

impl PolynomialCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

type Poly = fn(i128) -> i128;

const POLYNOMIALS: [(&str, char, i64, bool, Poly); 6] = [
    ("2d^2-7d+6>0", 'd', 3, true, |d| 2 * d * d - 7 * d + 6),
    ("2d^3-9d^2+13d-6>0", 'd', 3, true, |d| 2 * d * d * d - 9 * d * d + 13 * d - 6),
    ("24d^3-124d^2+203d-102>0", 'd', 3, true, |d| {
        24 * d * d * d - 124 * d * d + 203 * d - 102
    }),
    ("8d^3-29d^2+32d-12>0", 'd', 3, true, |d| 8 * d * d * d - 29 * d * d + 32 * d - 12),
    ("56h^3+91h^2+h-4>=0", 'h', 2, false, |h| 56 * h * h * h + 91 * h * h + h - 4),
    ("56h^3+215h^2+207h+72>=0", 'h', 2, false, |h| {
        56 * h * h * h + 215 * h * h + 207 * h + 72
    }),
];

/// Checks each polynomial inequality of the argument at every integer in its
/// range, up to `max` (the variable starts at 3 for `d`, 2 for `h`).
pub fn polynomial_inequality_suite(max: i64) -> Vec<PolynomialCheck> {
    POLYNOMIALS
        .iter()
        .map(|&(name, variable, from, strict, p)| {
            let mut first_failure = None;
            let mut checked = 0;
            for x in from..=max {
                checked += 1;
                let val = p(i128::from(x));
                let ok = if strict { val > 0 } else { val >= 0 };
                if !ok && first_failure.is_none() {
                    first_failure = Some((x, val));
                }
            }
            PolynomialCheck { name, variable, from, to: max, strict, checked, first_failure }
        })
        .collect()
}
