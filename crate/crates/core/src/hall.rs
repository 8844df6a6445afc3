//! Combinatorial logarithm and exponential over ordered decompositions of a
//! class, with a pluggable associative algebra standing in for the Hall
//! algebra:
//!
//! `ε(v) = Σ_{v₁+⋯+v_ℓ = v} ((−1)^{ℓ−1}/ℓ) δ(v₁) ⋆ ⋯ ⋆ δ(v_ℓ)`,
//! `δ(v) = Σ_{v₁+⋯+v_ℓ = v} (1/ℓ!) ε(v₁) ⋆ ⋯ ⋆ ε(v_ℓ)`.
//!
//! The sums run over *ordered* tuples whose parts all match the total class
//! (same reduced Hilbert polynomial, or same phase of `Z`). Finiteness is
//! imposed by an explicit coordinate box supplied by the caller.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::config::SurfaceConfig;
use crate::error::{Error, Result};
use crate::lattice::{Gram, OrbifoldMukaiVector};
use crate::rational::{rat, Rational};
use crate::stability::{
    central_charge, phase_equal, reduced_hilbert_poly, NumericalClass, Polarization, StabilityParams,
};

/// Model of the effective cone: `r > 0`, or `r = 0` and `ω·β > 0`, or
/// `r = 0`, `β = 0`, `𝔪 = 0` and `n > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveCone {
    omega: Vec<Rational>,
    gram: Gram,
}

impl EffectiveCone {
    pub fn new(omega: Vec<Rational>, gram: Gram) -> Result<Self> {
        let w2 = gram.pair(&omega, &omega)?;
        if !w2.is_positive() {
            return Err(Error::NotAmple(w2.to_string()));
        }
        Ok(EffectiveCone { omega, gram })
    }

    /// Uses the config's ample class.
    pub fn from_config(config: &SurfaceConfig) -> Result<Self> {
        let omega = config
            .ample
            .clone()
            .ok_or_else(|| Error::InvalidConfig("config has no ample class".into()))?;
        EffectiveCone::new(omega, config.ns_gram.clone())
    }

    pub fn omega_degree(&self, v: &OrbifoldMukaiVector) -> Result<Rational> {
        let beta: Vec<Rational> = v.beta.iter().map(|&b| rat(b)).collect();
        self.gram.pair(&self.omega, &beta)
    }

    pub fn contains(&self, v: &OrbifoldMukaiVector) -> Result<bool> {
        if v.r != 0 {
            return Ok(v.r > 0);
        }
        let deg = self.omega_degree(v)?;
        if !deg.is_zero() {
            return Ok(deg.is_positive());
        }
        let ch1_zero = v.beta.iter().all(|&b| b == 0) && v.marks.iter().flatten().all(|&m| m == 0);
        Ok(ch1_zero && v.n > 0)
    }
}

/// An associative unital algebra over `Q`.
pub trait HallAlgebra {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, q: &Rational, a: &Self::Elem) -> Self::Elem;

    fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Self::Elem>) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        factors.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// Checks associativity and left/right distributivity on every triple drawn
/// from `samples`.
pub fn probe_algebra<A: HallAlgebra>(alg: &A, samples: &[A::Elem]) -> bool {
    for a in samples {
        for b in samples {
            for c in samples {
                let ab_c = alg.mul(&alg.mul(a, b), c);
                let a_bc = alg.mul(a, &alg.mul(b, c));
                if ab_c != a_bc {
                    return false;
                }
                let left = alg.mul(a, &alg.add(b, c));
                if left != alg.add(&alg.mul(a, b), &alg.mul(a, c)) {
                    return false;
                }
                let right = alg.mul(&alg.add(a, b), c);
                if right != alg.add(&alg.mul(a, c), &alg.mul(b, c)) {
                    return false;
                }
            }
        }
    }
    true
}

/// `Q` itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScalarAlgebra;

impl HallAlgebra for ScalarAlgebra {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn scale(&self, q: &Rational, a: &Rational) -> Rational {
        q * a
    }
}

/// 2×2 rational matrices, row-major: a small noncommutative test algebra.
#[derive(Debug, Clone, Copy, Default)]
pub struct Matrix2Algebra;

pub type Matrix2 = [Rational; 4];

impl HallAlgebra for Matrix2Algebra {
    type Elem = Matrix2;

    fn zero(&self) -> Matrix2 {
        std::array::from_fn(|_| Rational::zero())
    }
    fn one(&self) -> Matrix2 {
        [rat(1), rat(0), rat(0), rat(1)]
    }
    fn add(&self, a: &Matrix2, b: &Matrix2) -> Matrix2 {
        std::array::from_fn(|i| &a[i] + &b[i])
    }
    fn mul(&self, a: &Matrix2, b: &Matrix2) -> Matrix2 {
        [
            &a[0] * &b[0] + &a[1] * &b[2],
            &a[0] * &b[1] + &a[1] * &b[3],
            &a[2] * &b[0] + &a[3] * &b[2],
            &a[2] * &b[1] + &a[3] * &b[3],
        ]
    }
    fn scale(&self, q: &Rational, a: &Matrix2) -> Matrix2 {
        std::array::from_fn(|i| q * &a[i])
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn weighted_sum<K, A>(
    alg: &A,
    values: &BTreeMap<K, A::Elem>,
    decompositions: &[Vec<K>],
    weight: impl Fn(usize) -> Rational,
) -> Result<A::Elem>
where
    K: Ord + Debug,
    A: HallAlgebra,
{
    let mut total = alg.zero();
    for tuple in decompositions {
        let mut factors = Vec::with_capacity(tuple.len());
        for part in tuple {
            let x = values
                .get(part)
                .ok_or_else(|| Error::MissingValue(format!("{part:?}")))?;
            factors.push(x);
        }
        let term = alg.product(factors);
        total = alg.add(&total, &alg.scale(&weight(tuple.len()), &term));
    }
    Ok(total)
}

/// `ε(v)` from `δ` over the given ordered decompositions of `v`.
pub fn hall_log<K, A>(alg: &A, delta: &BTreeMap<K, A::Elem>, decompositions: &[Vec<K>]) -> Result<A::Elem>
where
    K: Ord + Debug,
    A: HallAlgebra,
{
    weighted_sum(alg, delta, decompositions, |l| {
        let sign = if l % 2 == 1 { 1 } else { -1 };
        Rational::new(BigInt::from(sign), BigInt::from(l))
    })
}

/// `δ(v)` from `ε` over the given ordered decompositions of `v`.
pub fn hall_exp<K, A>(alg: &A, epsilon: &BTreeMap<K, A::Elem>, decompositions: &[Vec<K>]) -> Result<A::Elem>
where
    K: Ord + Debug,
    A: HallAlgebra,
{
    weighted_sum(alg, epsilon, decompositions, |l| {
        Rational::new(BigInt::one(), factorial(l))
    })
}

/// Applies [`hall_log`] at every grade of a prefix, using `decompose` to
/// list the ordered decompositions of each grade.
pub fn hall_log_prefix<K, A, F>(
    alg: &A,
    delta: &BTreeMap<K, A::Elem>,
    grades: &[K],
    decompose: F,
) -> Result<BTreeMap<K, A::Elem>>
where
    K: Ord + Debug + Clone,
    A: HallAlgebra,
    F: Fn(&K) -> Result<Vec<Vec<K>>>,
{
    grades
        .iter()
        .map(|g| Ok((g.clone(), hall_log(alg, delta, &decompose(g)?)?)))
        .collect()
}

/// Applies [`hall_exp`] at every grade of a prefix.
pub fn hall_exp_prefix<K, A, F>(
    alg: &A,
    epsilon: &BTreeMap<K, A::Elem>,
    grades: &[K],
    decompose: F,
) -> Result<BTreeMap<K, A::Elem>>
where
    K: Ord + Debug + Clone,
    A: HallAlgebra,
    F: Fn(&K) -> Result<Vec<Vec<K>>>,
{
    grades
        .iter()
        .map(|g| Ok((g.clone(), hall_exp(alg, epsilon, &decompose(g)?)?)))
        .collect()
}

/// Ordered compositions of `n ≥ 1` into positive parts, lexicographic.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        if first == n {
            out.push(vec![n]);
        } else {
            for mut tail in compositions(n - first) {
                tail.insert(0, first);
                out.push(tail);
            }
        }
    }
    out
}

/// Equivalence test between a part and the total class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matcher {
    /// Equal reduced Hilbert polynomials.
    ReducedHilbert {
        polarization: Polarization,
        chi_o: Rational,
    },
    /// Equal phase of `Z_{k,D}`.
    Phase { params: StabilityParams, chi_o: Rational },
}

impl Matcher {
    pub fn matches(&self, part: &OrbifoldMukaiVector, total: &OrbifoldMukaiVector, gram: &Gram) -> Result<bool> {
        match self {
            Matcher::ReducedHilbert { polarization, chi_o } => {
                let p = NumericalClass::from_orbifold(part, chi_o);
                let t = NumericalClass::from_orbifold(total, chi_o);
                let (Ok(pp), Ok(pt)) = (
                    reduced_hilbert_poly(&p, polarization, gram, chi_o),
                    reduced_hilbert_poly(&t, polarization, gram, chi_o),
                ) else {
                    return Ok(false);
                };
                Ok(pp == pt)
            }
            Matcher::Phase { params, chi_o } => {
                let zp = central_charge(&NumericalClass::from_orbifold(part, chi_o), params, gram)?;
                let zt = central_charge(&NumericalClass::from_orbifold(total, chi_o), params, gram)?;
                if zp.is_zero() || zt.is_zero() {
                    return Ok(false);
                }
                phase_equal(&zp, &zt)
            }
        }
    }
}

/// Inclusive per-coordinate bounds in the flattened `(r, β, 𝔪, n)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl CoordBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                context: "box bounds",
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] > hi[i]) {
            return Err(Error::Domain(format!("empty box in coordinate {i}")));
        }
        Ok(CoordBox { lo, hi })
    }

    /// `[min(0, v_i), max(0, v_i)]` per coordinate.
    pub fn spanned_by(v: &OrbifoldMukaiVector) -> Self {
        let c = v.coords();
        CoordBox {
            lo: c.iter().map(|&x| x.min(0)).collect(),
            hi: c.iter().map(|&x| x.max(0)).collect(),
        }
    }

    pub fn contains(&self, coords: &[i64]) -> bool {
        coords.len() == self.lo.len()
            && coords
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// All integer points, lexicographic.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for (lo, hi) in self.lo.iter().zip(&self.hi) {
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
            for prefix in &out {
                for x in *lo..=*hi {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

/// Cone vectors of the box that match `v`; sorted.
pub fn candidate_parts(
    v: &OrbifoldMukaiVector,
    matcher: &Matcher,
    cone: &EffectiveCone,
    bounds: &CoordBox,
    config: &SurfaceConfig,
) -> Result<Vec<OrbifoldMukaiVector>> {
    let mut out = Vec::new();
    for p in bounds.points() {
        let w = OrbifoldMukaiVector::from_coords(&p, config)?;
        if cone.contains(&w)? && matcher.matches(&w, v, &config.ns_gram)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Upper bound on the number of parts in any decomposition of `v` into
/// elements of `parts`, by counting along the cone's lexicographic grading
/// `(r, ω·β, n)`.
fn max_length(v: &OrbifoldMukaiVector, parts: &[OrbifoldMukaiVector], cone: &EffectiveCone) -> Result<usize> {
    let mut ranked = Vec::new();
    let mut curves = Vec::new();
    let mut points = Vec::new();
    for p in parts {
        if p.r > 0 {
            ranked.push(p);
        } else if cone.omega_degree(p)?.is_positive() {
            curves.push(p);
        } else {
            points.push(p);
        }
    }
    let n_ranked = if ranked.is_empty() { 0 } else { v.r.max(0) as usize };
    let min_deg = ranked
        .iter()
        .map(|p| cone.omega_degree(p))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .unwrap_or_else(Rational::zero)
        .min(Rational::zero());
    let mut n_curves = 0usize;
    if !curves.is_empty() {
        let step = curves
            .iter()
            .map(|p| cone.omega_degree(p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .expect("nonempty");
        let budget = cone.omega_degree(v)? - rat(n_ranked as i64) * min_deg;
        if budget.is_positive() {
            n_curves = usize::try_from((budget / step).floor().to_integer()).unwrap_or(usize::MAX);
        }
    }
    let mut n_points = 0usize;
    if !points.is_empty() {
        let min_n = parts.iter().map(|p| p.n).min().unwrap_or(0).min(0);
        let budget = v.n - (n_ranked + n_curves) as i64 * min_n;
        n_points = budget.max(0) as usize;
    }
    Ok(n_ranked + n_curves + n_points)
}

/// All ordered tuples of matching cone vectors in the box summing to `v`,
/// sorted lexicographically.
pub fn enumerate_decompositions(
    v: &OrbifoldMukaiVector,
    matcher: &Matcher,
    cone: &EffectiveCone,
    bounds: &CoordBox,
    config: &SurfaceConfig,
) -> Result<Vec<Vec<OrbifoldMukaiVector>>> {
    v.conform(config)?;
    if bounds.lo.len() != config.coordinate_count() {
        return Err(Error::DimensionMismatch {
            context: "box bounds",
            expected: config.coordinate_count(),
            found: bounds.lo.len(),
        });
    }
    if !cone.contains(v)? {
        return Err(Error::Domain(format!("{v} is not in the effective cone")));
    }
    if !bounds.contains(&v.coords()) {
        return Err(Error::Domain(format!("box does not contain {v}")));
    }
    let parts = candidate_parts(v, matcher, cone, bounds, config)?;
    let limit = max_length(v, &parts, cone)?;
    let mut out = Vec::new();
    let mut stack = Vec::new();
    extend(v, &parts, cone, limit, &mut stack, &mut out)?;
    out.sort();
    Ok(out)
}

fn extend(
    rest: &OrbifoldMukaiVector,
    parts: &[OrbifoldMukaiVector],
    cone: &EffectiveCone,
    depth_left: usize,
    stack: &mut Vec<OrbifoldMukaiVector>,
    out: &mut Vec<Vec<OrbifoldMukaiVector>>,
) -> Result<()> {
    if depth_left == 0 {
        return Ok(());
    }
    for p in parts {
        let remaining = rest.sub(p);
        if remaining.is_zero() {
            let mut t = stack.clone();
            t.push(p.clone());
            out.push(t);
        } else if depth_left > 1 && cone.contains(&remaining)? {
            stack.push(p.clone());
            extend(&remaining, parts, cone, depth_left - 1, stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}
