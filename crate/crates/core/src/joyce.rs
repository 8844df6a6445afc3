//! Joyce invariants through the multiple cover formula
//!
//! `J(v) = Σ_{k | v} (1/k²) · χ(Hilb^{⟨v/k, v/k⟩/2 + 1}(Y))`,
//!
//! with `χ(Hilb^d) = 0` for `d < 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::config::SurfaceConfig;
use crate::error::{Error, Result};
use crate::hall::EffectiveCone;
use crate::lattice::{
    coordinate_gcd, divisors, even_self_pairing, mukai_pairing, vector_divisors, Gram, MukaiVector, OrbifoldMukaiVector,
};
use crate::rational::Rational;
use crate::series::hilb_euler_k3;

/// `χ(Hilb^d(K3))` with the empty-scheme convention for `d < 0`.
pub fn hilb_euler_or_zero(d: &BigInt) -> BigInt {
    if d.is_negative() {
        return BigInt::zero();
    }
    let d = usize::try_from(d).expect("Hilbert index too large for the series table");
    hilb_euler_k3(d)
}

fn cover_term(self_pairing: BigInt, k: u64) -> Rational {
    let d = self_pairing / 2 + 1;
    let k2 = BigInt::from(k) * BigInt::from(k);
    Rational::new(hilb_euler_or_zero(&d), k2)
}

/// `J(v)` on the orbifold side.
pub fn joyce_invariant(v: &OrbifoldMukaiVector, config: &SurfaceConfig) -> Result<Rational> {
    v.conform(config)?;
    let mut total = Rational::zero();
    for k in vector_divisors(v)? {
        let w = v.divide(k as i64).expect("k divides every coordinate");
        total += cover_term(even_self_pairing(&w, config)?, k);
    }
    Ok(total)
}

/// `J̄(v) = 2·J(v)`.
pub fn joyce_invariant_compactified(v: &OrbifoldMukaiVector, config: &SurfaceConfig) -> Result<Rational> {
    joyce_invariant(v, config).map(|j| j * Rational::from_integer(BigInt::from(2)))
}

/// The same formula evaluated on an integral Mukai vector of `Y`.
pub fn joyce_invariant_on_resolution(v: &MukaiVector, lattice: &Gram) -> Result<Rational> {
    let coords = v.integral_coords()?;
    let mut total = Rational::zero();
    for k in divisors(coordinate_gcd(&coords)?) {
        let k_i = k as i64;
        let w = MukaiVector::new(
            v.r / k_i,
            v.beta.iter().map(|b| b / k_i).collect(),
            coords[coords.len() - 1] / k_i,
        );
        let p = mukai_pairing(&w, &w, lattice)?.to_integer();
        if p.is_odd() {
            return Err(Error::OddSelfPairing(p.to_string()));
        }
        total += cover_term(p, k);
    }
    Ok(total)
}

/// `J(v)` for effective `v`, `J(−v)` for anti-effective `v`, and `0` when
/// neither `v` nor `−v` lies in the cone.
pub fn joyce_sign_extension(v: &OrbifoldMukaiVector, config: &SurfaceConfig, cone: &EffectiveCone) -> Result<Rational> {
    if cone.contains(v)? {
        joyce_invariant(v, config)
    } else if cone.contains(&v.neg())? {
        joyce_invariant(&v.neg(), config)
    } else {
        Ok(Rational::zero())
    }
}
