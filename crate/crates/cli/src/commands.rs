use std::fs;

use orbimukai_core::hall::{enumerate_decompositions, CoordBox, EffectiveCone, Matcher};
use orbimukai_core::lattice::orbifold_pairing;
use orbimukai_core::series::{product_power_series, product_power_series_naive};
use orbimukai_core::stability::{
    central_charge, slope_mu, subsheaf_threshold, threshold_gieseker_from_tilt, threshold_tilt_from_gieseker,
    tilt_slope, wall_k_squared,
};
use orbimukai_core::transport::{hilb_index, transport_vector};
use orbimukai_core::{
    joyce_invariant, joyce_invariant_compactified, load_config, Error, NumericalClass, OrbifoldMukaiVector,
    Polarization, Rational, Result, StabilityParams, SurfaceConfig, Wall,
};
use serde_json::{json, Value};

use crate::args::{Algorithm, Command, ConfigArg, MatcherKind, PolarizationArgs};
use crate::report::{big_json, int_array, Field, Report};

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Series {
            order,
            exponent,
            algorithm,
        } => {
            let s = match algorithm {
                Algorithm::Fast => product_power_series(*exponent, *order),
                Algorithm::Naive => product_power_series_naive(*exponent, *order),
            };
            let lines: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            let json = Value::Array(lines.iter().map(|c| json!(c)).collect());
            Ok(Report::Lines(lines, json))
        }
        Command::Pairing { config, v, w } => {
            let config = load(config)?;
            let v = OrbifoldMukaiVector::from_coords(v, &config)?;
            let w = OrbifoldMukaiVector::from_coords(w, &config)?;
            Ok(Report::fields()
                .push("pairing", Field::Rat(orbifold_pairing(&v, &w, &config)?))
                .build())
        }
        Command::Joyce { config, v } => {
            let config = load(config)?;
            let v = OrbifoldMukaiVector::from_coords(v, &config)?;
            Ok(Report::fields()
                .push("J", Field::Rat(joyce_invariant(&v, &config)?))
                .push("Jbar", Field::Rat(joyce_invariant_compactified(&v, &config)?))
                .build())
        }
        Command::Transport { config, v } => {
            let config = load(config)?;
            let v = OrbifoldMukaiVector::from_coords(v, &config)?;
            let y = transport_vector(&v, &config)?;
            let h = hilb_index(&v, &config)?;
            let y_coords = y.integral_coords()?;
            let marks_text = format!("{:?}", h.marks);
            let marks_json = Value::Array(h.marks.iter().map(|m| int_array(m)).collect());
            Ok(Report::fields()
                .push("v_Y", Field::Structured(y.to_string(), int_array(&y_coords)))
                .push("d", Field::Structured(h.d.to_string(), big_json(&h.d)))
                .push("n", Field::Structured(h.n.to_string(), big_json(&h.n)))
                .push("marks", Field::Structured(marks_text, marks_json))
                .push("empty", Field::Bool(h.is_empty()))
                .build())
        }
        Command::Walls { config, c1, c2, pol } => {
            let config = load(config)?;
            let p = polarization(&config, pol)?;
            let c1 = class(c1, &config)?;
            let c2 = class(c2, &config)?;
            let field = match wall_k_squared(&c1, &c2, &p, &config.ns_gram)? {
                Wall::At(k2) => Field::Rat(k2),
                Wall::AlwaysEqual => Field::Text("always".into()),
                Wall::None => Field::Text("none".into()),
            };
            Ok(Report::fields().push("k^2", field).build())
        }
        Command::Thresholds {
            config,
            class: c,
            pol,
            mu_plus,
        } => {
            let config = load(config)?;
            let p = polarization(&config, pol)?;
            let mut c = class(c, &config)?;
            let mu = slope_mu(&c, &p, &config.ns_gram)?;
            c.mu_plus = Some(mu_plus.clone().unwrap_or_else(|| mu.clone()));
            let g = &config.ns_gram;
            Ok(Report::fields()
                .push("mu", Field::Ext(mu))
                .push(
                    "N^2 gieseker_from_tilt",
                    Field::Rat(threshold_gieseker_from_tilt(&c, &p, g)?.value().clone()),
                )
                .push(
                    "N^2 tilt_from_gieseker",
                    Field::Rat(threshold_tilt_from_gieseker(&c, &p, g)?.value().clone()),
                )
                .push("N0^2", Field::Rat(subsheaf_threshold(&c, &p, g)?.value().clone()))
                .build())
        }
        Command::Decomp {
            config,
            v,
            matcher,
            bounds,
            pol,
            k,
        } => {
            let config = load(config)?;
            let v = OrbifoldMukaiVector::from_coords(v, &config)?;
            let p = polarization(&config, pol)?;
            let cone = EffectiveCone::new(p.omega.clone(), config.ns_gram.clone())?;
            let m = match matcher {
                MatcherKind::Hilbert => Matcher::ReducedHilbert {
                    polarization: p,
                    chi_o: config.chi_o.clone(),
                },
                MatcherKind::Phase => {
                    let k = k
                        .clone()
                        .ok_or_else(|| Error::Domain("the phase matcher needs --k".into()))?;
                    Matcher::Phase {
                        params: StabilityParams::new(p, k)?,
                        chi_o: config.chi_o.clone(),
                    }
                }
            };
            let bounds = bounds.clone().unwrap_or_else(|| CoordBox::spanned_by(&v));
            let tuples = enumerate_decompositions(&v, &m, &cone, &bounds, &config)?;
            let lines = tuples
                .iter()
                .map(|t| t.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" + "))
                .collect();
            let json = Value::Array(
                tuples
                    .iter()
                    .map(|t| Value::Array(t.iter().map(|p| int_array(&p.coords())).collect()))
                    .collect(),
            );
            Ok(Report::Lines(lines, json))
        }
        Command::Slope {
            config,
            class: c,
            pol,
            k,
        } => {
            let config = load(config)?;
            let p = polarization(&config, pol)?;
            let c = class(c, &config)?;
            let mut report = Report::fields().push("mu", Field::Ext(slope_mu(&c, &p, &config.ns_gram)?));
            if let Some(k) = k {
                let params = StabilityParams::new(p, k.clone())?;
                report = report.push("nu", Field::Ext(tilt_slope(&c, &params, &config.ns_gram)?));
            }
            Ok(report.build())
        }
        Command::Charge {
            config,
            class: c,
            pol,
            k,
        } => {
            let config = load(config)?;
            let params = StabilityParams::new(polarization(&config, pol)?, k.clone())?;
            let c = class(c, &config)?;
            let z = central_charge(&c, &params, &config.ns_gram)?;
            Ok(Report::fields()
                .push("re", Field::Rat(z.re))
                .push("im", Field::Rat(z.im))
                .build())
        }
        Command::Config { config } => {
            let config = load(config)?;
            let json: Value = serde_json::from_str(&config.to_json()).expect("config json");
            Ok(Report::Lines(vec![config.to_json()], json))
        }
    }
}

fn load(arg: &ConfigArg) -> Result<SurfaceConfig> {
    if let Some(name) = arg.path.strip_prefix("builtin:") {
        return SurfaceConfig::builtin(name)
            .ok_or_else(|| Error::InvalidConfig(format!("no builtin config named '{name}'")));
    }
    let text =
        fs::read_to_string(&arg.path).map_err(|e| Error::ConfigParse(format!("cannot read {}: {e}", arg.path)))?;
    load_config(&text)
}

fn polarization(config: &SurfaceConfig, args: &PolarizationArgs) -> Result<Polarization> {
    let omega = match (&args.omega, &config.ample) {
        (Some(w), _) => w.clone(),
        (None, Some(w)) => w.clone(),
        (None, None) => {
            return Err(Error::Domain(
                "no ample class: pass --omega or add 'ample' to the config".into(),
            ))
        }
    };
    let twist = args
        .twist
        .clone()
        .unwrap_or_else(|| vec![Rational::from_integer(0.into()); omega.len()]);
    if omega.len() != config.ns_rank() {
        return Err(Error::DimensionMismatch {
            context: "omega",
            expected: config.ns_rank(),
            found: omega.len(),
        });
    }
    Polarization::new(omega, twist, &config.ns_gram)
}

/// `ch0, ch1..., ch2` in the NS basis.
fn class(coords: &[Rational], config: &SurfaceConfig) -> Result<NumericalClass> {
    let expected = config.ns_rank() + 2;
    if coords.len() != expected {
        return Err(Error::DimensionMismatch {
            context: "class (ch0, ch1..., ch2)",
            expected,
            found: coords.len(),
        });
    }
    let ch0 = &coords[0];
    if !ch0.is_integer() {
        return Err(Error::Domain(format!("ch0 must be an integer, got {ch0}")));
    }
    let ch0 = i64::try_from(ch0.to_integer()).map_err(|_| Error::Domain("ch0 out of range".into()))?;
    Ok(NumericalClass::new(
        ch0,
        coords[1..expected - 1].to_vec(),
        coords[expected - 1].clone(),
    ))
}
