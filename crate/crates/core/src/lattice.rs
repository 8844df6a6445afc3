//! Mukai-lattice and ADE root-lattice arithmetic.
//!
//! Orbifold Mukai vectors live in the integral model
//! `Z ⊕ NS ⊕ (⊕_i Z^{rank Δ(i)}) ⊕ Z`, with coordinates ordered
//! `(r, β, 𝔪(1), …, 𝔪(s), n)`. The NS block pairs through the NS gram, each
//! mark block through the negated Cartan matrix of its root system, and the
//! blocks are mutually orthogonal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::SurfaceConfig;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gram {
    rank: usize,
    entries: Vec<i64>,
}

impl Gram {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::Domain("gram matrix must have rank >= 1".into()));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::NotSquare {
                    row,
                    expected: rank,
                    found: r.len(),
                });
            }
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Asymmetric {
                        i,
                        j,
                        a: rows[i][j],
                        b: rows[j][i],
                    });
                }
            }
        }
        Ok(Gram {
            rank,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(values: &[i64]) -> Result<Self> {
        let n = values.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { values[i] } else { 0 }).collect())
            .collect();
        Gram::new(rows)
    }

    /// Block-diagonal sum of the given matrices.
    pub fn block_diagonal<'a>(blocks: impl IntoIterator<Item = &'a Gram>) -> Result<Self> {
        let blocks: Vec<&Gram> = blocks.into_iter().collect();
        let n: usize = blocks.iter().map(|b| b.rank).sum();
        let mut rows = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rank {
                for j in 0..b.rank {
                    rows[offset + i][offset + j] = b.get(i, j);
                }
            }
            offset += b.rank;
        }
        Gram::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(|c| c.to_vec()).collect()
    }

    pub fn negated(&self) -> Gram {
        Gram {
            rank: self.rank,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn scaled(&self, t: i64) -> Gram {
        Gram {
            rank: self.rank,
            entries: self.entries.iter().map(|x| x * t).collect(),
        }
    }

    fn check_len(&self, context: &'static str, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.rank,
                found: len,
            });
        }
        Ok(())
    }

    /// `xᵀ G y` over the integers.
    pub fn pair_int(&self, x: &[i64], y: &[i64]) -> Result<BigInt> {
        self.check_len("integer pairing", x.len())?;
        self.check_len("integer pairing", y.len())?;
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, yj) in y.iter().enumerate() {
                row += BigInt::from(self.get(i, j)) * BigInt::from(*yj);
            }
            acc += row * BigInt::from(*xi);
        }
        Ok(acc)
    }

    /// `xᵀ G y` over the rationals.
    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_len("rational pairing", x.len())?;
        self.check_len("rational pairing", y.len())?;
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, yj) in y.iter().enumerate() {
                let g = self.get(i, j);
                if g != 0 {
                    row += yj * Rational::from_integer(BigInt::from(g));
                }
            }
            acc += row * xi;
        }
        Ok(acc)
    }

    /// `(positive, negative, zero)` counts of the diagonalized form.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let n = self.rank;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(BigInt::from(self.get(i, j))))
                    .collect()
            })
            .collect();
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(j) = ((k + 1)..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = ((k + 1)..n).find(|&j| !a[k][j].is_zero()) {
                    // congruence by e_k -> e_k + e_j makes the pivot 2 a_kj
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[k][c] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[k] += v;
                    }
                }
            }
            let p = a[k][k].clone();
            if p.is_zero() {
                zero += 1;
                continue;
            }
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &p;
                for c in k..n {
                    let v = &f * &a[k][c];
                    a[i][c] -= v;
                }
                for r in k..n {
                    let v = &f * &a[r][k];
                    a[r][i] -= v;
                }
            }
        }
        (pos, neg, zero)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.inertia() == (self.rank, 0, 0)
    }

    /// Signature `(1, rank − 1)`, the shape of a Néron–Severi lattice.
    pub fn is_hyperbolic(&self) -> bool {
        self.inertia() == (1, self.rank - 1, 0)
    }
}

/// Simply-laced Dynkin types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl RootKind {
    pub fn rank(self) -> usize {
        match self {
            RootKind::A(n) | RootKind::D(n) => n,
            RootKind::E6 => 6,
            RootKind::E7 => 7,
            RootKind::E8 => 8,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            RootKind::A(0) => Err(Error::InvalidRootSystem("A_n needs n >= 1".into())),
            RootKind::D(n) if n < 4 => Err(Error::InvalidRootSystem(format!("D_n needs n >= 4, got D{n}"))),
            _ => Ok(()),
        }
    }

    /// Edges of the Dynkin diagram in Bourbaki node labels (0-based here).
    ///
    /// * `A_n`: chain 1–2–…–n.
    /// * `D_n`: chain 1–…–(n−2), with n−1 and n both attached to n−2.
    /// * `E_6,7,8`: chain 1–3–4–…–n, with 2 attached to 4.
    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            RootKind::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            RootKind::D(n) => {
                let mut e: Vec<_> = (1..n - 2).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            RootKind::E6 | RootKind::E7 | RootKind::E8 => {
                let n = self.rank();
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::A(n) => write!(f, "A{n}"),
            RootKind::D(n) => write!(f, "D{n}"),
            RootKind::E6 => write!(f, "E6"),
            RootKind::E7 => write!(f, "E7"),
            RootKind::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for RootKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownRootKind(s.to_string());
        let t = s.trim().trim_start_matches(['_']);
        let (head, tail) = t.split_at(t.len().min(1));
        let tail = tail.trim_start_matches('_');
        let n: usize = tail.parse().map_err(|_| unknown())?;
        let kind = match head {
            "A" | "a" => RootKind::A(n),
            "D" | "d" => RootKind::D(n),
            "E" | "e" => match n {
                6 => RootKind::E6,
                7 => RootKind::E7,
                8 => RootKind::E8,
                _ => return Err(unknown()),
            },
            _ => return Err(unknown()),
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// An ADE root system with its Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSystemData {
    kind: RootKind,
    cartan: Gram,
}

impl RootSystemData {
    pub fn new(kind: RootKind) -> Result<Self> {
        kind.validate()?;
        let n = kind.rank();
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in kind.edges() {
            rows[i][j] = -1;
            rows[j][i] = -1;
        }
        Ok(RootSystemData {
            kind,
            cartan: Gram::new(rows)?,
        })
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn cartan(&self) -> &Gram {
        &self.cartan
    }

    /// Checks the Cartan invariants: diagonal 2, off-diagonal in {0, −1},
    /// positive definite.
    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        if self.cartan.rank() != n {
            return Err(Error::InvalidRootSystem("rank mismatch".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.cartan.get(i, j);
                let ok = if i == j { c == 2 } else { c == 0 || c == -1 };
                if !ok {
                    return Err(Error::InvalidRootSystem(format!("bad Cartan entry ({i},{j}) = {c}")));
                }
            }
        }
        if !self.cartan.is_positive_definite() {
            return Err(Error::InvalidRootSystem("Cartan not positive definite".into()));
        }
        Ok(())
    }
}

/// `count` identical singular points of one ADE type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularPointData {
    pub root_system: RootSystemData,
    pub count: usize,
}

impl SingularPointData {
    pub fn new(kind: RootKind, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidConfig("singular point count must be >= 1".into()));
        }
        Ok(SingularPointData {
            root_system: RootSystemData::new(kind)?,
            count,
        })
    }
}

/// `m1ᵀ · C · m2` for the Cartan matrix `C` of `rs`.
pub fn root_pairing(m1: &[i64], m2: &[i64], rs: &RootSystemData) -> Result<BigInt> {
    rs.cartan.pair_int(m1, m2)
}

/// `D_𝔪² = −Σ_i (𝔪(i)|𝔪(i))_{Δ(i)}` over the expanded point list.
pub fn d_m_squared(marks: &[Vec<i64>], points: &[&RootSystemData]) -> Result<BigInt> {
    if marks.len() != points.len() {
        return Err(Error::DimensionMismatch {
            context: "mark blocks",
            expected: points.len(),
            found: marks.len(),
        });
    }
    let mut acc = BigInt::zero();
    for (m, rs) in marks.iter().zip(points) {
        acc -= root_pairing(m, m, rs)?;
    }
    Ok(acc)
}

/// A Mukai vector `(r, β, n)` on a smooth surface.
///
/// `n` is rational so that vectors built from non-integral Chern data can be
/// represented when explicitly allowed; counting operations require
/// [`MukaiVector::is_integral`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MukaiVector {
    pub r: i64,
    pub beta: Vec<i64>,
    pub n: Rational,
}

impl MukaiVector {
    pub fn new(r: i64, beta: Vec<i64>, n: i64) -> Self {
        MukaiVector {
            r,
            beta,
            n: Rational::from_integer(n.into()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.n.is_integer()
    }

    /// Integer coordinates `(r, β…, n)`, if integral.
    pub fn integral_coords(&self) -> Result<Vec<i64>> {
        if !self.is_integral() {
            return Err(Error::NonIntegral(self.n.to_string()));
        }
        let n = i64::try_from(self.n.to_integer()).map_err(|_| Error::Domain("n out of range".into()))?;
        let mut c = Vec::with_capacity(self.beta.len() + 2);
        c.push(self.r);
        c.extend_from_slice(&self.beta);
        c.push(n);
        Ok(c)
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.r)?;
        for b in &self.beta {
            write!(f, ", {b}")?;
        }
        write!(f, ", {})", self.n)
    }
}

/// `⟨v1, v2⟩ = β1·β2 − r1 n2 − r2 n1`.
pub fn mukai_pairing(v1: &MukaiVector, v2: &MukaiVector, lattice: &Gram) -> Result<Rational> {
    let bb = lattice.pair_int(&v1.beta, &v2.beta)?;
    let r1 = Rational::from_integer(v1.r.into());
    let r2 = Rational::from_integer(v2.r.into());
    Ok(Rational::from_integer(bb) - r1 * &v2.n - r2 * &v1.n)
}

/// `v = Ch·√td_S`. On a K3 surface `√td = (1, 0, 1)`, so only `n` shifts.
///
/// A non-integral `n` is an error unless `allow_rational_n` is set.
pub fn mukai_vector_from_chern(ch0: i64, ch1: Vec<i64>, ch2: &Rational, allow_rational_n: bool) -> Result<MukaiVector> {
    let n = Rational::from_integer(ch0.into()) + ch2;
    if !allow_rational_n && !n.is_integer() {
        return Err(Error::NonIntegral(n.to_string()));
    }
    Ok(MukaiVector { r: ch0, beta: ch1, n })
}

/// An element of the integral model of `Γ₀^G`.
///
/// The derived ordering is lexicographic on `(r, β, 𝔪, n)`, which is the
/// flattened coordinate order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbifoldMukaiVector {
    pub r: i64,
    pub beta: Vec<i64>,
    pub marks: Vec<Vec<i64>>,
    pub n: i64,
}

impl OrbifoldMukaiVector {
    pub fn new(r: i64, beta: Vec<i64>, marks: Vec<Vec<i64>>, n: i64) -> Self {
        OrbifoldMukaiVector { r, beta, marks, n }
    }

    /// The zero vector shaped for `config`.
    pub fn zero(config: &SurfaceConfig) -> Self {
        OrbifoldMukaiVector {
            r: 0,
            beta: vec![0; config.ns_rank()],
            marks: config.mark_ranks().into_iter().map(|k| vec![0; k]).collect(),
            n: 0,
        }
    }

    pub fn coords(&self) -> Vec<i64> {
        let mut c = vec![self.r];
        c.extend_from_slice(&self.beta);
        for m in &self.marks {
            c.extend_from_slice(m);
        }
        c.push(self.n);
        c
    }

    /// Rebuilds a vector from flattened coordinates shaped by `config`.
    pub fn from_coords(coords: &[i64], config: &SurfaceConfig) -> Result<Self> {
        let ranks = config.mark_ranks();
        let expected = config.coordinate_count();
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                context: "orbifold vector coordinates",
                expected,
                found: coords.len(),
            });
        }
        let rho = config.ns_rank();
        let beta = coords[1..1 + rho].to_vec();
        let mut at = 1 + rho;
        let mut marks = Vec::with_capacity(ranks.len());
        for k in ranks {
            marks.push(coords[at..at + k].to_vec());
            at += k;
        }
        Ok(OrbifoldMukaiVector {
            r: coords[0],
            beta,
            marks,
            n: coords[at],
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        self.map(|x| x * k)
    }

    /// Exact division by `k`; `None` if some coordinate is not divisible.
    pub fn divide(&self, k: i64) -> Option<Self> {
        if k == 0 || self.coords().iter().any(|c| c % k != 0) {
            return None;
        }
        Some(self.map(|x| x / k))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        OrbifoldMukaiVector {
            r: f(self.r),
            beta: self.beta.iter().map(|&x| f(x)).collect(),
            marks: self.marks.iter().map(|m| m.iter().map(|&x| f(x)).collect()).collect(),
            n: f(self.n),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        OrbifoldMukaiVector {
            r: f(self.r, other.r),
            beta: self.beta.iter().zip(&other.beta).map(|(&a, &b)| f(a, b)).collect(),
            marks: self
                .marks
                .iter()
                .zip(&other.marks)
                .map(|(x, y)| x.iter().zip(y).map(|(&a, &b)| f(a, b)).collect())
                .collect(),
            n: f(self.n, other.n),
        }
    }

    /// Checks the vector's shape against `config`.
    pub fn conform(&self, config: &SurfaceConfig) -> Result<()> {
        if self.beta.len() != config.ns_rank() {
            return Err(Error::DimensionMismatch {
                context: "beta",
                expected: config.ns_rank(),
                found: self.beta.len(),
            });
        }
        let ranks = config.mark_ranks();
        if self.marks.len() != ranks.len() {
            return Err(Error::DimensionMismatch {
                context: "mark blocks",
                expected: ranks.len(),
                found: self.marks.len(),
            });
        }
        for (m, &k) in self.marks.iter().zip(&ranks) {
            if m.len() != k {
                return Err(Error::DimensionMismatch {
                    context: "mark block",
                    expected: k,
                    found: m.len(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for OrbifoldMukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `⟨v1, v2⟩_orb = β1·β2 − Σ_i (𝔪1(i)|𝔪2(i)) − r1 n2 − r2 n1`.
pub fn orbifold_pairing(
    v1: &OrbifoldMukaiVector,
    v2: &OrbifoldMukaiVector,
    config: &SurfaceConfig,
) -> Result<Rational> {
    v1.conform(config)?;
    v2.conform(config)?;
    let mut acc = config.ns_gram.pair_int(&v1.beta, &v2.beta)?;
    for ((m1, m2), rs) in v1.marks.iter().zip(&v2.marks).zip(config.points()) {
        acc -= root_pairing(m1, m2, rs)?;
    }
    acc -= BigInt::from(v1.r) * BigInt::from(v2.n);
    acc -= BigInt::from(v2.r) * BigInt::from(v1.n);
    Ok(Rational::from_integer(acc))
}

/// `χ(E, F) = −⟨v(E), v(F)⟩_orb`.
pub fn euler_pairing(v1: &OrbifoldMukaiVector, v2: &OrbifoldMukaiVector, config: &SurfaceConfig) -> Result<Rational> {
    orbifold_pairing(v1, v2, config).map(|q| -q)
}

/// Integer self-pairing; errors if the result is not even.
pub(crate) fn even_self_pairing(v: &OrbifoldMukaiVector, config: &SurfaceConfig) -> Result<BigInt> {
    let p = orbifold_pairing(v, v, config)?.to_integer();
    if p.is_odd() {
        return Err(Error::OddSelfPairing(p.to_string()));
    }
    Ok(p)
}

/// gcd of all coordinates; errors on the zero vector.
pub fn coordinate_gcd(coords: &[i64]) -> Result<u64> {
    let g = coords.iter().fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(g)
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All `k ≥ 1` dividing every coordinate of `v`, ascending.
pub fn vector_divisors(v: &OrbifoldMukaiVector) -> Result<Vec<u64>> {
    Ok(divisors(coordinate_gcd(&v.coords())?))
}
