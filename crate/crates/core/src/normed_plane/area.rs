use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polygon::{cross, sub, PolygonalNorm};
use crate::error::{Error, Result};
use crate::scalar::{int, ratio_to_f64, render_rational};

/// Normalization of two-dimensional area on a normed plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AreaDefinition {
    #[serde(rename = "b")]
    Hausdorff,
    #[serde(rename = "ht")]
    HolmesThompson,
    #[serde(rename = "m*")]
    MassStar,
}

impl AreaDefinition {
    pub const ALL: [AreaDefinition; 3] = [
        AreaDefinition::Hausdorff,
        AreaDefinition::HolmesThompson,
        AreaDefinition::MassStar,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            AreaDefinition::Hausdorff => "b",
            AreaDefinition::HolmesThompson => "ht",
            AreaDefinition::MassStar => "m*",
        }
    }
}

impl fmt::Display for AreaDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AreaDefinition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b" | "hausdorff" => Ok(AreaDefinition::Hausdorff),
            "ht" | "holmes_thompson" | "holmes-thompson" => Ok(AreaDefinition::HolmesThompson),
            "m*" | "mstar" | "mass_star" | "mass-star" => Ok(AreaDefinition::MassStar),
            other => Err(Error::Parse(format!("unknown area definition `{other}`"))),
        }
    }
}

/// An exact value of the form `coeff · π^pi_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaled {
    pub coeff: BigRational,
    pub pi_power: i32,
}

impl PiScaled {
    pub fn rational(coeff: BigRational) -> Self {
        PiScaled { coeff, pi_power: 0 }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.coeff) * PI.powi(self.pi_power)
    }

    pub fn mul(&self, o: &PiScaled) -> PiScaled {
        PiScaled {
            coeff: &self.coeff * &o.coeff,
            pi_power: self.pi_power + o.pi_power,
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> PiScaled {
        PiScaled {
            coeff: &self.coeff * r,
            pi_power: self.pi_power,
        }
    }

    /// Renders as e.g. `1/4·π^-1`.
    pub fn render(&self) -> String {
        let c = render_rational(&self.coeff);
        match self.pi_power {
            0 => c,
            1 => format!("{c}·π"),
            p => format!("{c}·π^{p}"),
        }
    }
}

/// Unit-set area handed to [`jacobian2`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitSetArea {
    Finite(f64),
    Unbounded,
}

/// Jacobian of a seminorm on ℝ²: `π / |{s <= 1}|`, or 0 for a degenerate
/// seminorm whose unit set is unbounded.
pub fn jacobian2(area: UnitSetArea) -> Result<f64> {
    match area {
        UnitSetArea::Unbounded => Ok(0.0),
        UnitSetArea::Finite(a) if a > 0.0 && a.is_finite() => Ok(PI / a),
        UnitSetArea::Finite(a) => Err(Error::InvalidInput(format!(
            "unit set area must be positive, got {a}"
        ))),
    }
}

/// Minimum-area parallelogram enclosing the unit ball.
///
/// Both side directions of an optimal parallelogram can be taken parallel
/// to polygon edges; for edge directions `e_i`, `e_j` with support values
/// `s_i = max cross(e_i, v)` the parallelogram has area
/// `4·s_i·s_j / |cross(e_i, e_j)|`.
pub fn min_enclosing_parallelogram(norm: &PolygonalNorm) -> (BigRational, usize, usize) {
    let v = norm.vertices();
    let n = v.len();
    let h = n / 2;
    let edges: Vec<_> = (0..h).map(|i| sub(&v[(i + 1) % n], &v[i])).collect();
    let support: Vec<BigRational> = edges
        .iter()
        .map(|e| v.iter().map(|p| cross(e, p)).max().expect("vertices"))
        .collect();
    let mut best: Option<(BigRational, usize, usize)> = None;
    for i in 0..h {
        for j in i + 1..h {
            let c = cross(&edges[i], &edges[j]).abs();
            if c.is_zero() {
                continue;
            }
            let area = int(4) * &support[i] * &support[j] / c;
            if best.as_ref().is_none_or(|(b, _, _)| area < *b) {
                best = Some((area, i, j));
            }
        }
    }
    best.expect("at least two edge directions")
}

/// The constant `c` with `μ_V = c · Lebesgue` in the polygon's coordinates.
pub fn area_density(norm: &PolygonalNorm, mu: AreaDefinition) -> PiScaled {
    match mu {
        AreaDefinition::Hausdorff => PiScaled {
            coeff: int(1) / norm.area(),
            pi_power: 1,
        },
        AreaDefinition::HolmesThompson => PiScaled {
            coeff: norm.polar_dual().area(),
            pi_power: -1,
        },
        AreaDefinition::MassStar => {
            let (p, _, _) = min_enclosing_parallelogram(norm);
            PiScaled::rational(int(4) / p)
        }
    }
}

/// The isoperimetrix: the polar dual rotated by +90°, at unit scale.
pub fn isoperimetrix(norm: &PolygonalNorm) -> PolygonalNorm {
    norm.polar_dual().rotated_90()
}

/// Norm-perimeter of the isoperimetrix; equals `2·|B°|`.
pub fn isoperimetrix_perimeter(norm: &PolygonalNorm) -> BigRational {
    norm.perimeter_of(isoperimetrix(norm).vertices())
}

/// `μ(I_V) / length(∂I_V)²` with the length measured in the norm.
pub fn isoperimetric_ratio(norm: &PolygonalNorm, mu: AreaDefinition) -> PiScaled {
    let iso = isoperimetrix(norm);
    let perimeter = norm.perimeter_of(iso.vertices());
    area_density(norm, mu).mul_rational(&(iso.area() / (&perimeter * &perimeter)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn jacobian_examples() {
        assert!((jacobian2(UnitSetArea::Finite(PI)).unwrap() - 1.0).abs() < 1e-15);
        assert!((jacobian2(UnitSetArea::Finite(4.0)).unwrap() - PI / 4.0).abs() < 1e-15);
        assert_eq!(jacobian2(UnitSetArea::Unbounded).unwrap(), 0.0);
        assert!(jacobian2(UnitSetArea::Finite(-1.0)).is_err());
    }

    #[test]
    fn square_densities() {
        let sq = PolygonalNorm::square();
        let b = area_density(&sq, AreaDefinition::Hausdorff);
        assert_eq!(b, PiScaled { coeff: rat(1, 4), pi_power: 1 });
        let m = area_density(&sq, AreaDefinition::MassStar);
        assert_eq!(m, PiScaled::rational(int(1)));
        let ht = area_density(&sq, AreaDefinition::HolmesThompson);
        assert_eq!(ht, PiScaled { coeff: int(2), pi_power: -1 });
    }

    #[test]
    fn square_isoperimetrix_is_the_diamond() {
        let sq = PolygonalNorm::square();
        assert_eq!(isoperimetrix(&sq), PolygonalNorm::diamond());
        assert_eq!(isoperimetrix_perimeter(&sq), int(4));
        assert_eq!(
            isoperimetric_ratio(&sq, AreaDefinition::MassStar),
            PiScaled::rational(rat(1, 8))
        );
        assert_eq!(
            isoperimetric_ratio(&sq, AreaDefinition::HolmesThompson),
            PiScaled { coeff: rat(1, 4), pi_power: -1 }
        );
    }

    #[test]
    fn parses_tags() {
        for mu in AreaDefinition::ALL {
            assert_eq!(mu.tag().parse::<AreaDefinition>().unwrap(), mu);
        }
        assert!("x".parse::<AreaDefinition>().is_err());
    }
}
