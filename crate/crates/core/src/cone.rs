//! The Moriwaki cone: its facets, the dual curve classes, and what membership
//! says about base loci.
//!
//! A class `aλ − Σ b_i δ_i` is an M-divisor when
//!
//! ```text
//! a ≥ 0,   a ≥ (8g+4)/g · b_0,   a ≥ (2g+1)/(i(g−i)) · b_i   (1 ≤ i ≤ ⌊g/2⌋)
//! ```
//!
//! and a strict M-divisor when every inequality is strict. The cone is
//! simplicial with extremal rays `δ_0, …, δ_⌊g/2⌋` and `M`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::divisor::{boundary_len, moriwaki_divisor, DivisorClass};
use crate::error::{Error, Result};
use crate::rat::{int, primitive_pair, primitive_vector, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetId {
    NonnegA,
    Delta(usize),
}

impl fmt::Display for FacetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetId::NonnegA => write!(f, "NonnegA"),
            FacetId::Delta(i) => write!(f, "Delta{i}"),
        }
    }
}

pub fn facets(g: u32) -> Vec<FacetId> {
    std::iter::once(FacetId::NonnegA)
        .chain((0..boundary_len(g)).map(FacetId::Delta))
        .collect()
}

/// The ratio `c` in the facet inequality `a ≥ c · b_i`.
pub fn facet_bound(g: u32, i: usize) -> Rat {
    let g = i64::from(g);
    if i == 0 {
        Rat::new(BigInt::from(8 * g + 4), BigInt::from(g))
    } else {
        let i = i as i64;
        Rat::new(BigInt::from(2 * g + 1), BigInt::from(i * (g - i)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Outside,
    Boundary,
    StrictInterior,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoriwakiClassification {
    pub verdict: Verdict,
    pub violated: BTreeSet<FacetId>,
    pub active: BTreeSet<FacetId>,
}

impl MoriwakiClassification {
    fn from_signs(signs: impl Iterator<Item = (FacetId, std::cmp::Ordering)>) -> Self {
        use std::cmp::Ordering::*;
        let mut violated = BTreeSet::new();
        let mut active = BTreeSet::new();
        for (f, s) in signs {
            match s {
                Less => {
                    violated.insert(f);
                }
                Equal => {
                    active.insert(f);
                }
                Greater => {}
            }
        }
        let verdict = if !violated.is_empty() {
            Verdict::Outside
        } else if !active.is_empty() {
            Verdict::Boundary
        } else {
            Verdict::StrictInterior
        };
        Self { verdict, violated, active }
    }

    pub fn is_m_divisor(&self) -> bool {
        self.verdict != Verdict::Outside
    }
}

/// Evaluates every Moriwaki inequality exactly.
pub fn classify_moriwaki(d: &DivisorClass) -> MoriwakiClassification {
    let g = d.genus();
    let a = d.a();
    let signs = std::iter::once((FacetId::NonnegA, a.cmp(&Rat::zero()))).chain(
        d.b().iter()
            .enumerate()
            .map(|(i, b)| (FacetId::Delta(i), a.cmp(&(facet_bound(g, i) * b)))),
    );
    MoriwakiClassification::from_signs(signs)
}

/// A curve class, recorded by its intersection numbers `(λ·γ; δ_0·γ, …)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub genus: u32,
    pub lam: Rat,
    pub del: Vec<Rat>,
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.lam)?;
        for (i, x) in self.del.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{x}")?;
        }
        write!(f, ")")
    }
}

/// `D·γ = a(λ·γ) − Σ b_i (δ_i·γ)`.
pub fn intersect(d: &DivisorClass, gamma: &CurveClass) -> Result<Rat> {
    if d.genus() != gamma.genus {
        return Err(Error::GenusMismatch(d.genus(), gamma.genus));
    }
    let boundary: Rat = d.b().iter().zip(&gamma.del).map(|(b, x)| b * x).sum();
    Ok(d.a() * &gamma.lam - boundary)
}

/// The curve class dual to one facet, scaled to a primitive integer vector.
///
/// Only the dual-cone relation fixes these classes; the positive scale is a
/// normalization choice.
pub fn dual_curve(g: u32, facet: FacetId) -> CurveClass {
    let n = boundary_len(g);
    let gi = i64::from(g);
    let mut v = vec![Rat::zero(); n + 1];
    match facet {
        FacetId::NonnegA => v[0] = Rat::one(),
        FacetId::Delta(0) => {
            v[0] = int(gi);
            v[1] = int(8 * gi + 4);
        }
        FacetId::Delta(i) => {
            let ii = i as i64;
            v[0] = int(ii * (gi - ii));
            v[i + 1] = int(2 * gi + 1);
        }
    }
    let v = primitive_vector(&v);
    CurveClass { genus: g, lam: v[0].clone(), del: v[1..].to_vec() }
}

/// `C, C_0, …, C_⌊g/2⌋`, one per facet, in facet order.
pub fn moriwaki_curve_classes(g: u32) -> Result<Vec<CurveClass>> {
    if g < 3 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(facets(g).into_iter().map(|f| dual_curve(g, f)).collect())
}

/// Classification computed from the signs of `D·γ` over the dual curves.
pub fn classify_by_pairing(d: &DivisorClass) -> MoriwakiClassification {
    let g = d.genus();
    let signs = facets(g).into_iter().map(|f| {
        let p = intersect(d, &dual_curve(g, f)).expect("same genus");
        (f, p.cmp(&Rat::zero()))
    });
    MoriwakiClassification::from_signs(signs)
}

/// The extremal rays of the cone, each paired with the facet it does not lie on.
pub fn extremal_rays(g: u32) -> Result<Vec<(FacetId, DivisorClass)>> {
    let mut rays = vec![(FacetId::NonnegA, moriwaki_divisor(g)?)];
    for i in 0..boundary_len(g) {
        rays.push((FacetId::Delta(i), DivisorClass::delta_i(g, i)?));
    }
    Ok(rays)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialityReport {
    pub genus: u32,
    pub facet_count: usize,
    pub ray_count: usize,
    /// For each ray, the facets it lies on.
    pub incidences: Vec<(FacetId, BTreeSet<FacetId>)>,
    /// The ray × dual-curve pairing matrix is diagonal with positive diagonal,
    /// so the rays are linearly independent.
    pub pairing_diagonal: bool,
}

impl SimplicialityReport {
    pub fn is_simplicial(&self) -> bool {
        let dim = boundary_len(self.genus) + 1;
        self.facet_count == dim
            && self.ray_count == dim
            && self.pairing_diagonal
            && self.incidences.iter().all(|(own, on)| on.len() == dim - 1 && !on.contains(own))
    }
}

pub fn simpliciality(g: u32) -> Result<SimplicialityReport> {
    let fs = facets(g);
    let rays = extremal_rays(g)?;
    let curves: Vec<CurveClass> = fs.iter().map(|&f| dual_curve(g, f)).collect();
    let mut incidences = Vec::new();
    let mut diagonal = true;
    for (own, ray) in &rays {
        let c = classify_moriwaki(ray);
        incidences.push((*own, c.active.clone()));
        for (f, curve) in fs.iter().zip(&curves) {
            let p = intersect(ray, curve)?;
            diagonal &= if f == own { p.is_positive() } else { p.is_zero() };
        }
    }
    Ok(SimplicialityReport {
        genus: g,
        facet_count: fs.len(),
        ray_count: rays.len(),
        incidences,
        pairing_diagonal: diagonal,
    })
}

/// `D = β·M + E` with `β = a/(8g+4) ≥ 0` and `E` an effective boundary class.
pub fn moriwaki_decompose(d: &DivisorClass) -> Result<(Rat, DivisorClass)> {
    let c = classify_moriwaki(d);
    if !c.is_m_divisor() {
        let names: Vec<String> = c.violated.iter().map(ToString::to_string).collect();
        return Err(Error::NotAnMDivisor(names.join(",")));
    }
    let g = d.genus();
    let beta = d.a() / int(8 * i64::from(g) + 4);
    let e = d.sub(&moriwaki_divisor(g)?.scale(&beta))?;
    debug_assert!(e.a().is_zero() && e.b().iter().all(|x| !x.is_positive()));
    Ok((beta, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLocusStatement {
    /// `B_−(D) ⊆ ∂M̄_g`: an M-divisor on the boundary of the cone.
    BminusInBoundary,
    /// `B_+(D) ⊆ ∂M̄_g`: a strict M-divisor.
    BplusInBoundary,
    /// `B_+(D) = ∂M̄_g`: `a > 0` and `D − aλ` effective and supported on the boundary.
    BplusEqualsBoundary,
    /// `B_−(D)` meets `M_g`: not an M-divisor.
    BminusMeetsInterior,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocusPrediction {
    pub statement: BaseLocusStatement,
    pub justification: &'static str,
}

/// `a > 0` and every stored `b_i ≤ 0`.
pub fn is_satake_type(d: &DivisorClass) -> bool {
    d.a().is_positive() && d.b().iter().all(|b| !b.is_positive())
}

pub fn predict_base_locus(d: &DivisorClass) -> BaseLocusPrediction {
    use BaseLocusStatement::*;
    if is_satake_type(d) {
        return BaseLocusPrediction {
            statement: BplusEqualsBoundary,
            justification: "satake-type: lambda plus effective boundary; B+ is the exceptional locus of the Torelli map",
        };
    }
    let (statement, justification) = match classify_moriwaki(d).verdict {
        Verdict::StrictInterior => (BplusInBoundary, "strict-moriwaki-inequalities: B+ contained in boundary"),
        Verdict::Boundary => (BminusInBoundary, "moriwaki-inequalities: B- contained in boundary"),
        Verdict::Outside => (BminusMeetsInterior, "moriwaki-inequalities fail: B- meets the interior"),
    };
    BaseLocusPrediction { statement, justification }
}

/// A ray `aλ − bδ` in the section plane, primitive integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionRay {
    pub a: BigInt,
    pub b: BigInt,
}

impl SectionRay {
    fn from_rats(a: &Rat, b: &Rat) -> Self {
        let (a, b) = primitive_pair(a, b);
        Self { a, b }
    }

    pub fn as_class(&self, g: u32) -> Result<DivisorClass> {
        let b = Rat::from_integer(self.b.clone());
        DivisorClass::new(g, Rat::from_integer(self.a.clone()), vec![b; boundary_len(g)])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionRays {
    pub genus: u32,
    /// `(λ, δ)`.
    pub plane: (DivisorClass, DivisorClass),
    pub nef: [SectionRay; 2],
    pub moriwaki: [SectionRay; 2],
    /// The facet that cuts the Moriwaki section.
    pub moriwaki_binding: FacetId,
    /// Absent when the slope of `M̄_g` is not configured.
    pub psef: Option<[SectionRay; 2]>,
}

/// The three cones cut by the plane `⟨λ, δ⟩`, in coordinates `(a, b)` for `aλ − bδ`.
pub fn cone_section(g: u32, slope: Option<&Rat>, nef_bound: &Rat) -> Result<SectionRays> {
    if g < 3 {
        return Err(Error::GenusTooSmall(g));
    }
    if !nef_bound.is_positive() {
        return Err(Error::InvalidConfig(format!("nef bound {nef_bound} must be positive")));
    }
    if let Some(s) = slope.filter(|s| !s.is_positive()) {
        return Err(Error::InvalidConfig(format!("slope {s} must be positive")));
    }
    let one = Rat::one();
    let delta_ray = SectionRay::from_rats(&Rat::zero(), &-one.clone());
    let (binding, bound) = (0..boundary_len(g))
        .map(|i| (FacetId::Delta(i), facet_bound(g, i)))
        .fold(None::<(FacetId, Rat)>, |best, (f, b)| match best {
            Some((_, ref cur)) if *cur >= b => best,
            _ => Some((f, b)),
        })
        .expect("at least one boundary facet");
    Ok(SectionRays {
        genus: g,
        plane: (DivisorClass::lambda(g)?, DivisorClass::delta(g)?),
        nef: [SectionRay::from_rats(&one, &Rat::zero()), SectionRay::from_rats(nef_bound, &one)],
        moriwaki: [delta_ray.clone(), SectionRay::from_rats(&bound, &one)],
        moriwaki_binding: binding,
        psef: slope.map(|s| [delta_ray, SectionRay::from_rats(s, &one)]),
    })
}
