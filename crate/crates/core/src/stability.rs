//! Twisted Chern characters, slopes, tilt central charges, Bogomolov
//! discriminants, the explicit Gieseker/tilt thresholds and wall solving.
//!
//! Everything is exact. Thresholds are returned squared (`N²`) so that no
//! square roots of rationals are ever taken; callers compare `k²` against
//! them. For a class `E` we write `a = ω·ch₁^D(E)`, `r = ch₀(E)`,
//! `μ = a/(ω² r)` and `Δ̄ = a² − 2ω² r ch₂^D(E)`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Gram, OrbifoldMukaiVector};
use crate::rational::{rat, ExtendedRational, Rational};

/// Numerical Chern data `(ch₀, ch₁, ch₂)` with an optional maximal
/// Harder–Narasimhan slope annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalClass {
    pub ch0: i64,
    pub ch1: Vec<Rational>,
    pub ch2: Rational,
    pub mu_plus: Option<ExtendedRational>,
}

impl NumericalClass {
    pub fn new(ch0: i64, ch1: Vec<Rational>, ch2: Rational) -> Self {
        NumericalClass {
            ch0,
            ch1,
            ch2,
            mu_plus: None,
        }
    }

    pub fn with_mu_plus(mut self, mu_plus: ExtendedRational) -> Self {
        self.mu_plus = Some(mu_plus);
        self
    }

    /// Chern data of an orbifold Mukai vector: `ch = v/√td` with
    /// `√td = (1, 0, χ(𝒪)/2)`. Marks do not enter `ch₁` in the NS basis.
    pub fn from_orbifold(v: &OrbifoldMukaiVector, chi_o: &Rational) -> Self {
        let r = rat(v.r);
        NumericalClass::new(
            v.r,
            v.beta.iter().map(|&b| rat(b)).collect(),
            rat(v.n) - r * chi_o / rat(2),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        NumericalClass::new(
            self.ch0 + other.ch0,
            self.ch1.iter().zip(&other.ch1).map(|(a, b)| a + b).collect(),
            &self.ch2 + &other.ch2,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        NumericalClass::new(
            self.ch0 - other.ch0,
            self.ch1.iter().zip(&other.ch1).map(|(a, b)| a - b).collect(),
            &self.ch2 - &other.ch2,
        )
    }

    pub fn scale(&self, t: i64) -> Self {
        let tq = rat(t);
        NumericalClass::new(
            self.ch0 * t,
            self.ch1.iter().map(|a| a * &tq).collect(),
            &self.ch2 * &tq,
        )
    }
}

/// The polarization `ω` and the twist `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub omega: Vec<Rational>,
    pub twist: Vec<Rational>,
}

impl Polarization {
    /// Rejects `ω² ≤ 0` and shape mismatches.
    pub fn new(omega: Vec<Rational>, twist: Vec<Rational>, gram: &Gram) -> Result<Self> {
        if twist.len() != omega.len() {
            return Err(Error::DimensionMismatch {
                context: "twist",
                expected: omega.len(),
                found: twist.len(),
            });
        }
        let w2 = gram.pair(&omega, &omega)?;
        if !w2.is_positive() {
            return Err(Error::NotAmple(w2.to_string()));
        }
        Ok(Polarization { omega, twist })
    }

    pub fn untwisted(omega: Vec<Rational>, gram: &Gram) -> Result<Self> {
        let twist = vec![Rational::zero(); omega.len()];
        Polarization::new(omega, twist, gram)
    }

    pub fn omega_squared(&self, gram: &Gram) -> Result<Rational> {
        gram.pair(&self.omega, &self.omega)
    }
}

/// `σ_{k,D}` data: polarization plus `k > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityParams {
    pub polarization: Polarization,
    pub k: Rational,
}

impl StabilityParams {
    pub fn new(polarization: Polarization, k: Rational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::Domain(format!("k must be positive, got {k}")));
        }
        Ok(StabilityParams { polarization, k })
    }
}

/// A value of the central charge `Z = re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralChargeValue {
    pub re: Rational,
    pub im: Rational,
}

impl CentralChargeValue {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// In the semi-closed upper half plane `{im > 0} ∪ {im = 0, re < 0}`.
    pub fn in_upper_half_plane(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_negative())
    }

    pub fn add(&self, other: &Self) -> Self {
        CentralChargeValue {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
}

/// A squared threshold `N² ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ThresholdSquared(Rational);

impl ThresholdSquared {
    fn clamped(q: Rational) -> Self {
        ThresholdSquared(if q.is_negative() { Rational::zero() } else { q })
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Whether `k² ≥ N²`.
    pub fn admits(&self, k_squared: &Rational) -> bool {
        k_squared >= &self.0
    }
}

/// Outcome of solving `ν_{k,D}(c1) = ν_{k,D}(c2)` for `k²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Wall {
    /// A unique positive `k²`.
    At(Rational),
    /// The slopes agree for every `k`.
    AlwaysEqual,
    /// No positive solution.
    None,
}

impl Wall {
    pub fn k_squared(&self) -> Option<&Rational> {
        match self {
            Wall::At(q) => Some(q),
            _ => None,
        }
    }
}

fn check_shape(c: &NumericalClass, gram: &Gram) -> Result<()> {
    if c.ch1.len() != gram.rank() {
        return Err(Error::DimensionMismatch {
            context: "ch1",
            expected: gram.rank(),
            found: c.ch1.len(),
        });
    }
    Ok(())
}

/// `ch^D = e^{−D}·ch = (ch₀, ch₁ − D ch₀, ch₂ − D·ch₁ + (D²/2) ch₀)`.
pub fn twist_chern(c: &NumericalClass, twist: &[Rational], gram: &Gram) -> Result<NumericalClass> {
    check_shape(c, gram)?;
    let r = rat(c.ch0);
    let ch1: Vec<Rational> = c.ch1.iter().zip(twist).map(|(x, d)| x - d * &r).collect();
    let d_ch1 = gram.pair(twist, &c.ch1)?;
    let d2 = gram.pair(twist, twist)?;
    let ch2 = &c.ch2 - d_ch1 + d2 * &r / rat(2);
    Ok(NumericalClass {
        ch0: c.ch0,
        ch1,
        ch2,
        mu_plus: c.mu_plus.clone(),
    })
}

/// Twisted numerics `(r, ω·ch₁^D, ch₂^D, ω²)`.
struct Twisted {
    r: Rational,
    a: Rational,
    ch2: Rational,
    w2: Rational,
}

fn twisted(c: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<Twisted> {
    let t = twist_chern(c, &pol.twist, gram)?;
    Ok(Twisted {
        r: rat(t.ch0),
        a: gram.pair(&pol.omega, &t.ch1)?,
        ch2: t.ch2,
        w2: pol.omega_squared(gram)?,
    })
}

/// `μ_{ω,D} = ω·ch₁^D / (ω² ch₀)`, or `+∞` for `ch₀ = 0`.
pub fn slope_mu(c: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<ExtendedRational> {
    let t = twisted(c, pol, gram)?;
    if t.r.is_zero() {
        return Ok(ExtendedRational::PosInfinity);
    }
    Ok(ExtendedRational::Finite(t.a / (t.w2 * t.r)))
}

/// `Z_{k,D} = −ch₂^D + (k²/2) ω² ch₀ + i ω·ch₁^D`.
pub fn central_charge(c: &NumericalClass, params: &StabilityParams, gram: &Gram) -> Result<CentralChargeValue> {
    let t = twisted(c, &params.polarization, gram)?;
    let k2 = &params.k * &params.k;
    Ok(CentralChargeValue {
        re: -t.ch2 + k2 * t.w2 * t.r / rat(2),
        im: t.a,
    })
}

/// `ν_{k,D} = (ch₂^D − (k²/2) ω² ch₀) / ω·ch₁^D`, or `+∞` when the
/// denominator vanishes.
pub fn tilt_slope(c: &NumericalClass, params: &StabilityParams, gram: &Gram) -> Result<ExtendedRational> {
    let t = twisted(c, &params.polarization, gram)?;
    if t.a.is_zero() {
        return Ok(ExtendedRational::PosInfinity);
    }
    let k2 = &params.k * &params.k;
    Ok(ExtendedRational::Finite((t.ch2 - k2 * t.w2 * t.r / rat(2)) / t.a))
}

/// `Δ̄ = (ω·ch₁^D)² − 2 ω² ch₀ ch₂^D`.
pub fn discriminant_bar(c: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<Rational> {
    let t = twisted(c, pol, gram)?;
    Ok(&t.a * &t.a - rat(2) * t.w2 * t.r * t.ch2)
}

pub fn bogomolov_bar_ok(c: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<bool> {
    Ok(!discriminant_bar(c, pol, gram)?.is_negative())
}

/// `Δ = (ch₁^D)² − 2 ch₀ ch₂^D`.
pub fn discriminant_plain(c: &NumericalClass, twist: &[Rational], gram: &Gram) -> Result<Rational> {
    let t = twist_chern(c, twist, gram)?;
    Ok(gram.pair(&t.ch1, &t.ch1)? - rat(2) * rat(t.ch0) * t.ch2)
}

pub fn bogomolov_ok(c: &NumericalClass, twist: &[Rational], gram: &Gram) -> Result<bool> {
    Ok(!discriminant_plain(c, twist, gram)?.is_negative())
}

/// `L² ω² ≤ (L·ω)²`; errors unless `ω² > 0`.
pub fn hodge_index_check(l: &[Rational], omega: &[Rational], gram: &Gram) -> Result<bool> {
    let w2 = gram.pair(omega, omega)?;
    if !w2.is_positive() {
        return Err(Error::NotAmple(w2.to_string()));
    }
    let l2 = gram.pair(l, l)?;
    let lw = gram.pair(l, omega)?;
    Ok(l2 * w2 <= &lw * &lw)
}

fn require_torsion_free_positive(t: &Twisted) -> Result<()> {
    if !t.r.is_positive() {
        return Err(Error::Domain(format!("threshold needs ch0 > 0, got {}", t.r)));
    }
    if !t.a.is_positive() {
        return Err(Error::Domain(format!("threshold needs omega.ch1^D > 0, got {}", t.a)));
    }
    Ok(())
}

/// Squared threshold above which `ν_{k,D}`-semistability of a sheaf with
/// these numerics forces `G_{ω,D}`-semistability:
///
/// `N² = a³/(ω²)² + 2 r (μ⁺ − μ) ch₂^D`, clamped at 0.
pub fn threshold_gieseker_from_tilt(c: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<ThresholdSquared> {
    let mu_plus = match &c.mu_plus {
        None => return Err(Error::Domain("mu_plus annotation is required".into())),
        Some(ExtendedRational::PosInfinity) => {
            return Err(Error::Domain("mu_plus must be finite for a torsion-free class".into()))
        }
        Some(ExtendedRational::Finite(q)) => q.clone(),
    };
    let t = twisted(c, pol, gram)?;
    require_torsion_free_positive(&t)?;
    let mu = &t.a / (&t.w2 * &t.r);
    if mu_plus < mu {
        return Err(Error::Domain(format!("mu_plus {mu_plus} is below the slope {mu}")));
    }
    let cube = &t.a * &t.a * &t.a / (&t.w2 * &t.w2);
    let n2 = cube + rat(2) * &t.r * (mu_plus - mu) * &t.ch2;
    Ok(ThresholdSquared::clamped(n2))
}

/// `N₀² = max{Δ̄/(ω² r) − μ² r/(ω² + r), 0}`: above it the tilt-maximal
/// destabilizing subobject of a Gieseker-semistable sheaf is a subsheaf.
pub fn subsheaf_threshold(c: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<ThresholdSquared> {
    let t = twisted(c, pol, gram)?;
    require_torsion_free_positive(&t)?;
    let mu = &t.a / (&t.w2 * &t.r);
    let disc = &t.a * &t.a - rat(2) * &t.w2 * &t.r * &t.ch2;
    let n0 = disc / (&t.w2 * &t.r) - &mu * &mu * &t.r / (&t.w2 + &t.r);
    Ok(ThresholdSquared::clamped(n0))
}

/// Squared threshold above which a `G_{ω,D}`-semistable sheaf with these
/// numerics is `ν_{k,D}`-semistable:
///
/// `N² = max{μ³ ω² r² − 2 μ r ch₂^D, N₀²}`.
pub fn threshold_tilt_from_gieseker(c: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<ThresholdSquared> {
    let t = twisted(c, pol, gram)?;
    require_torsion_free_positive(&t)?;
    let mu = &t.a / (&t.w2 * &t.r);
    let first = &mu * &mu * &mu * &t.w2 * &t.r * &t.r - rat(2) * &mu * &t.r * &t.ch2;
    let n0 = subsheaf_threshold(c, pol, gram)?;
    Ok(ThresholdSquared::clamped(first).max(n0))
}

/// Solves `ν_{k,D}(c1) = ν_{k,D}(c2)`, which is linear in `k²`:
///
/// `ch₂₁ a₂ − ch₂₂ a₁ = (k²/2) ω² (r₁ a₂ − r₂ a₁)`.
///
/// When exactly one of the `aᵢ` vanishes that slope is `+∞` and the other is
/// finite, so there is no wall.
pub fn wall_k_squared(c1: &NumericalClass, c2: &NumericalClass, pol: &Polarization, gram: &Gram) -> Result<Wall> {
    let t1 = twisted(c1, pol, gram)?;
    let t2 = twisted(c2, pol, gram)?;
    match (t1.a.is_zero(), t2.a.is_zero()) {
        (true, true) => return Err(Error::Domain("both tilt slopes are +inf; there is no wall".into())),
        (true, false) | (false, true) => return Ok(Wall::None),
        _ => {}
    }
    let lhs = &t1.ch2 * &t2.a - &t2.ch2 * &t1.a;
    let coeff = &t1.w2 / rat(2) * (&t1.r * &t2.a - &t2.r * &t1.a);
    if coeff.is_zero() {
        return Ok(if lhs.is_zero() { Wall::AlwaysEqual } else { Wall::None });
    }
    let k2 = lhs / coeff;
    Ok(if k2.is_positive() { Wall::At(k2) } else { Wall::None })
}

/// Gieseker reduced Hilbert polynomial, normalized to leading coefficient 1,
/// highest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHilbertPolynomial(pub Vec<Rational>);

impl ReducedHilbertPolynomial {
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }
}

impl PartialOrd for ReducedHilbertPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares the normalized polynomials as values for `m ≫ 0`: the higher
/// degree is smaller (it is divided by a faster-growing leading term), and
/// equal degrees compare lexicographically from the top.
impl Ord for ReducedHilbertPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// `G_{ω,D}(E, m) = (ω²/2) m² + (a/r) m + ch₂^D/r + χ(𝒪)` for `r > 0`,
/// `a m + ch₂^D` for torsion classes with `a > 0`, and the constant
/// polynomial for zero-dimensional classes. The result is divided by its
/// leading coefficient.
pub fn reduced_hilbert_poly(
    c: &NumericalClass,
    pol: &Polarization,
    gram: &Gram,
    chi_o: &Rational,
) -> Result<ReducedHilbertPolynomial> {
    let t = twisted(c, pol, gram)?;
    let coeffs = if t.r.is_positive() {
        let lead = &t.w2 / rat(2);
        vec![rat(1), &t.a / &t.r / &lead, (&t.ch2 / &t.r + chi_o) / &lead]
    } else if t.r.is_zero() && t.a.is_positive() {
        vec![rat(1), &t.ch2 / &t.a]
    } else if t.r.is_zero() && c.ch1.iter().all(Zero::is_zero) {
        vec![rat(1)]
    } else {
        return Err(Error::Domain(format!(
            "no Hilbert polynomial for class with ch0 = {}, omega.ch1^D = {}",
            t.r, t.a
        )));
    };
    Ok(ReducedHilbertPolynomial(coeffs))
}

/// Same ray in the semi-closed upper half plane, via exact cross products.
pub fn phase_equal(z1: &CentralChargeValue, z2: &CentralChargeValue) -> Result<bool> {
    if z1.is_zero() || z2.is_zero() {
        return Err(Error::Domain("phase of zero central charge".into()));
    }
    let cross = &z1.re * &z2.im - &z2.re * &z1.im;
    if !cross.is_zero() {
        return Ok(false);
    }
    // collinear: same ray iff the dot product is positive
    let dot = &z1.re * &z2.re + &z1.im * &z2.im;
    Ok(dot.is_positive())
}
