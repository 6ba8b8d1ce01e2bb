use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use super::area::{area_density, isoperimetric_ratio, isoperimetrix, AreaDefinition, PiScaled};
use super::jung::{jung_constant, JungConfig, JungEstimate};
use super::polygon::PolygonalNorm;
use crate::error::Result;
use crate::scalar::{int, ratio_to_f64, render_rational};

/// A scalar with its decimal value and, when known, an exact rendering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Value {
    pub decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl Value {
    pub fn float(decimal: f64) -> Self {
        Value {
            decimal,
            exact: None,
        }
    }

    pub fn rational(r: &BigRational) -> Self {
        Value {
            decimal: ratio_to_f64(r),
            exact: Some(render_rational(r)),
        }
    }

    pub fn pi_scaled(p: &PiScaled) -> Self {
        Value {
            decimal: p.to_f64(),
            exact: Some(p.render()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: Value,
    pub hi: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormInvariantReport {
    pub self_perimeter: Value,
    pub jung: Enclosure,
    pub alpha_v: Enclosure,
    pub densities: BTreeMap<AreaDefinition, Value>,
    pub isoperimetrix_vertices: Vec<[String; 2]>,
    pub isoperimetric_ratio: BTreeMap<AreaDefinition, Value>,
}

/// `α_V = 1/(J·length(∂B))`, with the enclosure of `J` propagated.
pub fn alpha_v(norm: &PolygonalNorm, jung: &JungEstimate) -> Enclosure {
    let p = norm.self_perimeter();
    match &jung.exact {
        Some(j) => {
            let a = Value::rational(&(int(1) / (j * &p)));
            Enclosure {
                lo: a.clone(),
                hi: a,
            }
        }
        None => {
            let pf = ratio_to_f64(&p);
            Enclosure {
                lo: Value::float(1.0 / (jung.hi * pf)),
                hi: Value::float(1.0 / (jung.lo * pf)),
            }
        }
    }
}

pub fn jung_enclosure(jung: &JungEstimate) -> Enclosure {
    match &jung.exact {
        Some(j) => Enclosure {
            lo: Value::rational(j),
            hi: Value::rational(j),
        },
        None => Enclosure {
            lo: Value::float(jung.lo),
            hi: Value::float(jung.hi),
        },
    }
}

pub fn norm_invariants(norm: &PolygonalNorm, config: &JungConfig) -> Result<NormInvariantReport> {
    let jung = jung_constant(norm, config)?;
    let iso = isoperimetrix(norm);
    Ok(NormInvariantReport {
        self_perimeter: Value::rational(&norm.self_perimeter()),
        jung: jung_enclosure(&jung),
        alpha_v: alpha_v(norm, &jung),
        densities: AreaDefinition::ALL
            .iter()
            .map(|mu| (*mu, Value::pi_scaled(&area_density(norm, *mu))))
            .collect(),
        isoperimetrix_vertices: iso
            .vertices()
            .iter()
            .map(|p| [render_rational(&p[0]), render_rational(&p[1])])
            .collect(),
        isoperimetric_ratio: AreaDefinition::ALL
            .iter()
            .map(|mu| (*mu, Value::pi_scaled(&isoperimetric_ratio(norm, *mu))))
            .collect(),
    })
}
