//! Surface configurations: the NS gram of the quotient, its singular points,
//! `χ(𝒪)` and an optional ample class.
//!
//! JSON schema (rationals are `"p/q"` strings):
//!
//! ```json
//! {
//!   "name": "nikulin",
//!   "ns_gram": [[2]],
//!   "singular_points": [{"type": "A1", "count": 8}],
//!   "chi_O": "2",
//!   "ample": ["1"]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Gram, RootKind, RootSystemData, SingularPointData};
use crate::rational::{parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceConfig {
    pub name: String,
    pub ns_gram: Gram,
    pub singular_points: Vec<SingularPointData>,
    pub chi_o: Rational,
    pub ample: Option<Vec<Rational>>,
}

impl SurfaceConfig {
    pub fn new(
        name: impl Into<String>,
        ns_gram: Gram,
        singular_points: Vec<SingularPointData>,
        chi_o: Rational,
        ample: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let config = SurfaceConfig {
            name: name.into(),
            ns_gram,
            singular_points,
            chi_o,
            ample,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        for p in &self.singular_points {
            if p.count == 0 {
                return Err(Error::InvalidConfig("singular point count must be >= 1".into()));
            }
            p.root_system.validate()?;
        }
        if let Some(w) = &self.ample {
            if w.len() != self.ns_rank() {
                return Err(Error::DimensionMismatch {
                    context: "ample",
                    expected: self.ns_rank(),
                    found: w.len(),
                });
            }
            let w2 = self.ns_gram.pair(w, w)?;
            if w2 <= rat(0) {
                return Err(Error::NotAmple(w2.to_string()));
            }
        }
        Ok(())
    }

    pub fn ns_rank(&self) -> usize {
        self.ns_gram.rank()
    }

    /// Root systems, one entry per individual point (counts expanded).
    pub fn points(&self) -> impl Iterator<Item = &RootSystemData> {
        self.singular_points
            .iter()
            .flat_map(|p| std::iter::repeat_n(&p.root_system, p.count))
    }

    pub fn mark_ranks(&self) -> Vec<usize> {
        self.points().map(|rs| rs.rank()).collect()
    }

    /// Number of flattened coordinates `(r, β, 𝔪, n)`.
    pub fn coordinate_count(&self) -> usize {
        2 + self.ns_rank() + self.mark_ranks().iter().sum::<usize>()
    }

    /// Config with `8 × A₁`: the quotient of a K3 surface by a Nikulin
    /// involution. The NS part is the rank-one lattice `⟨2⟩` with ample
    /// generator.
    pub fn builtin_nikulin() -> Self {
        SurfaceConfig::new(
            "nikulin",
            Gram::new(vec![vec![2]]).expect("static gram"),
            vec![SingularPointData::new(RootKind::A(1), 8).expect("static point data")],
            rat(2),
            Some(vec![rat(1)]),
        )
        .expect("builtin config is valid")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "nikulin" => Some(Self::builtin_nikulin()),
            _ => None,
        }
    }

    pub fn to_document(&self) -> ConfigDocument {
        ConfigDocument {
            name: self.name.clone(),
            ns_gram: self.ns_gram.rows(),
            singular_points: self
                .singular_points
                .iter()
                .map(|p| PointDocument {
                    kind: p.root_system.kind().to_string(),
                    count: p.count,
                })
                .collect(),
            chi_o: Some(self.chi_o.to_string()),
            ample: self.ample.as_ref().map(|w| w.iter().map(|q| q.to_string()).collect()),
        }
    }

    pub fn from_document(doc: ConfigDocument) -> Result<Self> {
        let ns_gram = Gram::new(doc.ns_gram).map_err(|e| match e {
            Error::Asymmetric { .. } => e,
            other => Error::InvalidConfig(format!("ns_gram: {other}")),
        })?;
        let mut points = Vec::with_capacity(doc.singular_points.len());
        for p in doc.singular_points {
            let kind: RootKind = p.kind.parse()?;
            points.push(SingularPointData::new(kind, p.count)?);
        }
        let chi_o = match doc.chi_o {
            Some(s) => parse_rational(&s)?,
            None => rat(2),
        };
        let ample = doc
            .ample
            .map(|w| w.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .transpose()?;
        SurfaceConfig::new(doc.name, ns_gram, points, chi_o, ample)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("config serializes")
    }
}

/// Parses and validates a JSON config document.
pub fn load_config(text: &str) -> Result<SurfaceConfig> {
    let doc: ConfigDocument = serde_json::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
    SurfaceConfig::from_document(doc)
}

/// The serialized form of [`SurfaceConfig`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub name: String,
    pub ns_gram: Vec<Vec<i64>>,
    #[serde(default)]
    pub singular_points: Vec<PointDocument>,
    #[serde(rename = "chi_O", default, skip_serializing_if = "Option::is_none")]
    pub chi_o: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    #[serde(rename = "type")]
    pub kind: String,
    pub count: usize,
}
