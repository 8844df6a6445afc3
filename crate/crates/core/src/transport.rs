//! Transport of orbifold Mukai vectors to the crepant resolution `Y`.
//!
//! `NS(Y)` is the orthogonal sum of the pulled-back NS lattice and one
//! negated Cartan block per singular point, spanned by the exceptional
//! curves. In the integral model the transport map is pure coordinate
//! repackaging: `r`, `β`, `n` pass through and the marks become the
//! exceptional-curve coordinates.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::config::SurfaceConfig;
use crate::error::{Error, Result};
use crate::lattice::{d_m_squared, even_self_pairing, Gram, MukaiVector, OrbifoldMukaiVector, RootSystemData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedLattice {
    base: Gram,
    blocks: Vec<RootSystemData>,
    total: Gram,
}

impl ResolvedLattice {
    pub fn base_gram(&self) -> &Gram {
        &self.base
    }

    pub fn blocks(&self) -> &[RootSystemData] {
        &self.blocks
    }

    /// `diag(base, −C_1, …, −C_s)`.
    pub fn total_gram(&self) -> &Gram {
        &self.total
    }
}

/// Builds `NS(Y)`; blocks follow the config's point order.
pub fn resolved_lattice(config: &SurfaceConfig) -> Result<ResolvedLattice> {
    let blocks: Vec<RootSystemData> = config.points().cloned().collect();
    for b in &blocks {
        b.validate()?;
    }
    let negated: Vec<Gram> = blocks.iter().map(|b| b.cartan().negated()).collect();
    let total = Gram::block_diagonal(std::iter::once(&config.ns_gram).chain(negated.iter()))?;
    Ok(ResolvedLattice {
        base: config.ns_gram.clone(),
        blocks,
        total,
    })
}

/// `Φ_* v`: the `Y`-side Mukai vector over [`ResolvedLattice::total_gram`].
pub fn transport_vector(v: &OrbifoldMukaiVector, config: &SurfaceConfig) -> Result<MukaiVector> {
    v.conform(config)?;
    let mut beta = v.beta.clone();
    for m in &v.marks {
        beta.extend_from_slice(m);
    }
    Ok(MukaiVector::new(v.r, beta, v.n))
}

/// Hilbert-scheme index data of a class.
///
/// `d = ⟨v, v⟩/2 + 1` is the number of points on `Y`; `n = d − D_𝔪²/2` is the
/// count on the orbifold side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbIndex {
    pub n: BigInt,
    pub marks: Vec<Vec<i64>>,
    pub d: BigInt,
}

impl HilbIndex {
    /// `Hilb^d` is empty for `d < 0`.
    pub fn is_empty(&self) -> bool {
        self.d < BigInt::from(0)
    }
}

pub fn hilb_index(v: &OrbifoldMukaiVector, config: &SurfaceConfig) -> Result<HilbIndex> {
    let self_pairing = even_self_pairing(v, config)?;
    let d = self_pairing.div_floor(&BigInt::from(2)) + 1;
    let points: Vec<&RootSystemData> = config.points().collect();
    let dm2 = d_m_squared(&v.marks, &points)?;
    if dm2.is_odd() {
        return Err(Error::Domain(format!("D_m^2 = {dm2} is odd")));
    }
    let n = &d - dm2 / 2;
    Ok(HilbIndex {
        n,
        marks: v.marks.clone(),
        d,
    })
}
