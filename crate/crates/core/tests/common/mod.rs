//! Random inputs and independent oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's algorithms: series come
//! from literal products of binomial expansions, pairings from an explicitly
//! assembled Gram matrix, decompositions from plain generate-and-filter.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use orbimukai_core::hall::{CoordBox, EffectiveCone, Matcher};
use orbimukai_core::lattice::{Gram, OrbifoldMukaiVector, RootKind, SingularPointData};
use orbimukai_core::rational::{rat, ratio};
use orbimukai_core::{Polarization, Rational, StabilityParams, SurfaceConfig};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const KINDS: [RootKind; 9] = [
    RootKind::A(1),
    RootKind::A(2),
    RootKind::A(3),
    RootKind::A(4),
    RootKind::D(4),
    RootKind::D(5),
    RootKind::E6,
    RootKind::E7,
    RootKind::E8,
];

/// An even NS lattice with `e₁² > 0`, the ample class `e₁`, and up to three
/// kinds of singular points.
pub fn random_config(rng: &mut TestRng) -> SurfaceConfig {
    let rho = rng.gen_range(1..=3);
    let mut rows = vec![vec![0i64; rho]; rho];
    for i in 0..rho {
        rows[i][i] = if i == 0 {
            2 * rng.gen_range(1..=3)
        } else {
            2 * rng.gen_range(-2..=1)
        };
        for j in 0..i {
            let x = rng.gen_range(-2..=2);
            rows[i][j] = x;
            rows[j][i] = x;
        }
    }
    let n_kinds = rng.gen_range(0..=3);
    let mut kinds = KINDS.to_vec();
    kinds.shuffle(rng);
    let points = kinds[..n_kinds]
        .iter()
        .map(|&k| SingularPointData::new(k, rng.gen_range(1..=2)).unwrap())
        .collect();
    let mut ample = vec![rat(0); rho];
    ample[0] = rat(1);
    SurfaceConfig::new(
        format!("random-{rho}-{n_kinds}"),
        Gram::new(rows).unwrap(),
        points,
        ratio(rng.gen_range(0..=8), rng.gen_range(1..=2)),
        Some(ample),
    )
    .unwrap()
}

pub fn random_vector(rng: &mut TestRng, config: &SurfaceConfig, bound: i64) -> OrbifoldMukaiVector {
    let coords: Vec<i64> = (0..config.coordinate_count())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    OrbifoldMukaiVector::from_coords(&coords, config).unwrap()
}

fn cartan_edges(kind: RootKind) -> (usize, Vec<(usize, usize)>) {
    match kind {
        RootKind::A(n) => (n, (1..n).map(|i| (i, i + 1)).collect()),
        RootKind::D(n) => {
            let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i, i + 1)).collect();
            e.push((n - 2, n));
            (n, e)
        }
        RootKind::E6 | RootKind::E7 | RootKind::E8 => {
            let n = match kind {
                RootKind::E6 => 6,
                RootKind::E7 => 7,
                _ => 8,
            };
            let mut e = vec![(1, 3), (2, 4)];
            e.extend((3..n).map(|i| (i, i + 1)));
            (n, e)
        }
    }
}

/// Cartan matrix from the Dynkin diagram's edge list, 1-based labels.
pub fn oracle_cartan(kind: RootKind) -> Vec<Vec<i64>> {
    let (n, edges) = cartan_edges(kind);
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

pub const E8_CARTAN: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

/// The whole lattice on flattened coordinates, assembled entry by entry.
pub fn oracle_full_gram(config: &SurfaceConfig) -> Vec<Vec<i64>> {
    let dim = config.coordinate_count();
    let rho = config.ns_rank();
    let mut g = vec![vec![0i64; dim]; dim];
    g[0][dim - 1] = -1;
    g[dim - 1][0] = -1;
    for i in 0..rho {
        for j in 0..rho {
            g[1 + i][1 + j] = config.ns_gram.get(i, j);
        }
    }
    let mut at = 1 + rho;
    for p in &config.singular_points {
        let c = oracle_cartan(p.root_system.kind());
        for _ in 0..p.count {
            for i in 0..c.len() {
                for j in 0..c.len() {
                    g[at + i][at + j] = -c[i][j];
                }
            }
            at += c.len();
        }
    }
    g
}

pub fn oracle_pairing(config: &SurfaceConfig, v: &[i64], w: &[i64]) -> BigInt {
    let g = oracle_full_gram(config);
    let mut acc = BigInt::zero();
    for i in 0..v.len() {
        for j in 0..w.len() {
            acc += BigInt::from(v[i]) * BigInt::from(g[i][j]) * BigInt::from(w[j]);
        }
    }
    acc
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `Π_{m=1}^{N} (1 − q^m)^e mod q^{N+1}`, multiplying in the binomial
/// expansion of each factor.
pub fn oracle_series(e: i64, order: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for m in 1..=order {
        let mut factor = vec![BigInt::zero(); order + 1];
        let mut j = 0usize;
        while j * m <= order {
            let c = if e >= 0 {
                let ju = j as u64;
                if ju > e as u64 {
                    BigInt::zero()
                } else {
                    binomial(e as u64, ju)
                }
            } else {
                binomial(e.unsigned_abs() + j as u64 - 1, j as u64)
            };
            let sign = if e >= 0 && j % 2 == 1 { -1 } else { 1 };
            factor[j * m] = c * sign;
            j += 1;
        }
        let mut next = vec![BigInt::zero(); order + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in factor.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    next[i + k] += a * b;
                }
            }
        }
        acc = next;
    }
    acc
}

/// `J(k v₀) = Σ_{j | k} χ(Hilb^{⟨(k/j)v₀, (k/j)v₀⟩/2 + 1}) / j²` for
/// primitive `v₀`, from the oracle series and the oracle pairing.
pub fn oracle_joyce_multiple(config: &SurfaceConfig, v0: &[i64], k: i64, hilb: &[BigInt]) -> Rational {
    let mut total = Rational::zero();
    for j in 1..=k {
        if k % j != 0 {
            continue;
        }
        let w: Vec<i64> = v0.iter().map(|x| x * (k / j)).collect();
        let d: BigInt = oracle_pairing(config, &w, &w) / 2 + 1;
        let chi = if d < BigInt::zero() {
            BigInt::zero()
        } else {
            hilb[usize::try_from(&d).unwrap()].clone()
        };
        total += Rational::new(chi, BigInt::from(j * j));
    }
    total
}

/// Every ordered tuple of matching cone vectors in a nonnegative box that
/// sums to `v`. Parts in a nonnegative box are nonzero with nonnegative
/// coordinates, so no tuple is longer than the coordinate sum of `v`.
pub fn oracle_decompositions(
    v: &OrbifoldMukaiVector,
    matcher: &Matcher,
    cone: &EffectiveCone,
    bounds: &CoordBox,
    config: &SurfaceConfig,
) -> BTreeSet<Vec<Vec<i64>>> {
    assert!(bounds.lo.iter().all(|&x| x >= 0), "oracle needs a nonnegative box");
    let target = v.coords();
    let max_len: i64 = target.iter().sum();
    let mut parts = Vec::new();
    for p in bounds.points() {
        let w = OrbifoldMukaiVector::from_coords(&p, config).unwrap();
        if cone.contains(&w).unwrap() && matcher.matches(&w, v, &config.ns_gram).unwrap() {
            parts.push(p);
        }
    }
    let mut out = BTreeSet::new();
    let mut frontier: Vec<(Vec<Vec<i64>>, Vec<i64>)> = vec![(vec![], vec![0; target.len()])];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (tuple, sum) in &frontier {
            for p in &parts {
                let s: Vec<i64> = sum.iter().zip(p).map(|(a, b)| a + b).collect();
                if s.iter().zip(&target).any(|(a, b)| a > b) {
                    continue;
                }
                let mut t = tuple.clone();
                t.push(p.clone());
                if s == target {
                    out.insert(t.clone());
                }
                next.push((t, s));
            }
        }
        frontier = next;
    }
    out
}

/// Integral NS lattices with an integral ample class.
pub fn polarized_lattices() -> Vec<(Gram, Vec<Rational>)> {
    let g = |rows: Vec<Vec<i64>>| Gram::new(rows).unwrap();
    vec![
        (g(vec![vec![2]]), vec![rat(1)]),
        (g(vec![vec![4]]), vec![rat(1)]),
        (g(vec![vec![2, 1], vec![1, -2]]), vec![rat(1), rat(0)]),
        (g(vec![vec![0, 1], vec![1, 0]]), vec![rat(1), rat(1)]),
        (g(vec![vec![2, 0], vec![0, -2]]), vec![rat(2), rat(1)]),
    ]
}

/// Counts from the wall/threshold audit over random torsion-free classes.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct WallAudit {
    pub classes: usize,
    pub candidates: usize,
    pub finite_walls: usize,
    pub violations: Vec<String>,
    pub equal_slope_walls: usize,
    pub gieseker_case_one: usize,
}

/// For random classes `E` with `μ⁺ = μ` and `Δ̄ ≥ 0`, enumerates candidate
/// subclasses `F` in a box and checks every finite wall `W(F, E)` against
/// both thresholds under the hypotheses of the corresponding argument:
///
/// - tilt-from-Gieseker, case (1): `0 < μ(F) < μ(E)`,
///   `0 < ω·ch₁^D(F) < ω·ch₁^D(E)`, Bogomolov for `F` and `E − F`;
/// - case (2), equal slopes: no finite wall may exist;
/// - Gieseker-from-tilt, case (1): `μ(E) < μ(F) ≤ μ⁺(E)`, which is empty
///   when `μ⁺ = μ`.
pub fn wall_audit(rng: &mut TestRng, n_classes: usize) -> WallAudit {
    use orbimukai_core::stability::{
        bogomolov_bar_ok, slope_mu, threshold_gieseker_from_tilt, threshold_tilt_from_gieseker, wall_k_squared,
    };
    use orbimukai_core::{ExtendedRational, NumericalClass, Polarization, Wall};

    let lattices = polarized_lattices();
    let mut audit = WallAudit::default();
    while audit.classes < n_classes {
        let (gram, omega) = lattices.choose(rng).unwrap().clone();
        let rho = gram.rank();
        let twist: Vec<Rational> = (0..rho)
            .map(|_| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
            .collect();
        let pol = Polarization::new(omega, twist, &gram).unwrap();
        let e = NumericalClass::new(
            rng.gen_range(1..=3),
            (0..rho).map(|_| rat(rng.gen_range(-3..=3))).collect(),
            ratio(rng.gen_range(-8..=8), 2),
        );
        let Ok(ExtendedRational::Finite(mu_e)) = slope_mu(&e, &pol, &gram) else {
            continue;
        };
        if !mu_e.is_positive() || !bogomolov_bar_ok(&e, &pol, &gram).unwrap() {
            continue;
        }
        let e = e.with_mu_plus(ExtendedRational::Finite(mu_e.clone()));
        let n2_tilt = threshold_tilt_from_gieseker(&e, &pol, &gram).unwrap();
        let n2_gieseker = threshold_gieseker_from_tilt(&e, &pol, &gram).unwrap();
        audit.classes += 1;

        let w2 = pol.omega_squared(&gram).unwrap();
        let a_e = &mu_e * &w2 * rat(e.ch0);
        let ch1_range: Vec<Vec<i64>> = CoordBox::new(vec![-3; rho], vec![3; rho]).unwrap().points();
        for rk in 1..=e.ch0 + 1 {
            for ch1 in &ch1_range {
                for half in -12..=12 {
                    let f = NumericalClass::new(rk, ch1.iter().map(|&x| rat(x)).collect(), ratio(half, 2));
                    let ExtendedRational::Finite(mu_f) = slope_mu(&f, &pol, &gram).unwrap() else {
                        unreachable!("rk > 0")
                    };
                    if !mu_f.is_positive() {
                        continue;
                    }
                    let a_f = &mu_f * &w2 * rat(rk);
                    let quotient = e.sub(&f);
                    if mu_f > mu_e && ExtendedRational::Finite(mu_f.clone()) <= *e.mu_plus.as_ref().unwrap() {
                        audit.gieseker_case_one += 1;
                        if let Wall::At(k2) = wall_k_squared(&f, &e, &pol, &gram).unwrap() {
                            if !(k2 < *n2_gieseker.value()) {
                                audit.violations.push(format!("gieseker: E={e:?} F={f:?} k2={k2}"));
                            }
                        }
                    }
                    if mu_f == mu_e {
                        if let Wall::At(k2) = wall_k_squared(&f, &e, &pol, &gram).unwrap() {
                            audit.equal_slope_walls += 1;
                            audit.violations.push(format!("equal slopes: E={e:?} F={f:?} k2={k2}"));
                        }
                        continue;
                    }
                    if !(mu_f < mu_e && a_f < a_e) {
                        continue;
                    }
                    if !bogomolov_bar_ok(&f, &pol, &gram).unwrap() || !bogomolov_bar_ok(&quotient, &pol, &gram).unwrap()
                    {
                        continue;
                    }
                    audit.candidates += 1;
                    if let Wall::At(k2) = wall_k_squared(&f, &e, &pol, &gram).unwrap() {
                        audit.finite_walls += 1;
                        if !(k2 < *n2_tilt.value()) {
                            audit.violations.push(format!(
                                "tilt: E={e:?} F={f:?} pol={pol:?} k2={k2} N2={}",
                                n2_tilt.value()
                            ));
                        }
                    }
                }
            }
        }
    }
    audit
}

pub fn small_config(rng: &mut TestRng) -> SurfaceConfig {
    let points = if rng.gen_bool(0.5) {
        vec![SingularPointData::new(RootKind::A(1), 1).unwrap()]
    } else {
        vec![]
    };
    SurfaceConfig::new(
        "small",
        Gram::new(vec![vec![2 * rng.gen_range(1..=2)]]).unwrap(),
        points,
        rat(2),
        Some(vec![rat(1)]),
    )
    .unwrap()
}

pub fn random_matcher(rng: &mut TestRng, c: &SurfaceConfig) -> Matcher {
    let pol = Polarization::untwisted(c.ample.clone().unwrap(), &c.ns_gram).unwrap();
    if rng.gen_bool(0.5) {
        Matcher::ReducedHilbert {
            polarization: pol,
            chi_o: c.chi_o.clone(),
        }
    } else {
        Matcher::Phase {
            params: StabilityParams::new(pol, ratio(rng.gen_range(1..=4), rng.gen_range(1..=2))).unwrap(),
            chi_o: c.chi_o.clone(),
        }
    }
}

/// A class in the cone with small nonnegative coordinates and a box around it.
pub fn random_instance(rng: &mut TestRng) -> (SurfaceConfig, OrbifoldMukaiVector, CoordBox, Matcher) {
    let c = small_config(rng);
    let matcher = random_matcher(rng, &c);
    loop {
        let coords: Vec<i64> = (0..c.coordinate_count()).map(|_| rng.gen_range(0..=2)).collect();
        let v = OrbifoldMukaiVector::from_coords(&coords, &c).unwrap();
        let cone = EffectiveCone::from_config(&c).unwrap();
        if !cone.contains(&v).unwrap() || coords.iter().sum::<i64>() > 6 {
            continue;
        }
        let hi: Vec<i64> = coords.iter().map(|x| x + rng.gen_range(0..=1)).collect();
        let bounds = CoordBox::new(vec![0; coords.len()], hi).unwrap();
        return (c, v, bounds, matcher);
    }
}
