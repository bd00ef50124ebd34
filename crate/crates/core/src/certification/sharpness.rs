//! Sharpness probes: perturb one component of a sharp triple in the
//! direction that would tighten the bound and look for a point where the
//! perturbed bound crosses arctan.

use serde::Serialize;

use super::{oracle_relative_error, Grid};
use crate::bounds::{ShaferCoefficients, Side};
use crate::constants::{CERTIFICATION_MARGIN, UNIT_ROUNDOFF};
use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::series::{series_coefficients, SeriesTarget};

pub const EPSILON_LADDER: [f64; 3] = [1e-1, 1e-2, 1e-3];

const SCAN_LO: f64 = 1e-6;
const SCAN_HI: f64 = 1e6;
const SCAN_POINTS: usize = 100_000;

/// Expansion coefficients closer than this (relative) count as equal.
const COEFF_TIE: f64 = 32.0 * UNIT_ROUNDOFF;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    Origin,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SharpnessWitness {
    /// A sampled `x` where the perturbed bound is on the wrong side of
    /// arctan by more than the certification margin.
    Scan { x: f64, margin: f64 },
    /// The first differing expansion coefficient (of `x^order` at the
    /// origin, `x^-order` at infinity) puts the perturbed bound on the wrong
    /// side of arctan in the limit.
    Asymptotic {
        region: Region,
        order: u32,
        perturbed: f64,
        reference: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharpnessProbe {
    pub side: Side,
    pub component: usize,
    pub epsilon: f64,
    pub witness: Option<SharpnessWitness>,
}

/// Shrinks (lower triple) or grows (upper triple) component `component`
/// (1, 2 or 3) by the relative amount `epsilon` and searches for a
/// violation. `epsilon = 0` probes the unperturbed triple.
pub fn probe_sharpness(
    oracle: &Oracle,
    side: Side,
    component: usize,
    epsilon: f64,
) -> Result<Option<SharpnessWitness>> {
    if !(1..=3).contains(&component) {
        return Err(Error::InvalidComponent(component));
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let factor = match side {
        Side::Lower => 1.0 - epsilon,
        Side::Upper => 1.0 + epsilon,
    };
    let perturbed = side
        .coefficients()
        .with_scaled_component(component, factor)?;

    let xs = Grid::LogUniform
        .points(SCAN_LO, SCAN_HI, SCAN_POINTS)
        .expect("static scan range is valid");
    for x in xs {
        let margin = oracle_relative_error(&oracle.atan(x), perturbed.eval(x), side);
        if margin < -CERTIFICATION_MARGIN {
            return Ok(Some(SharpnessWitness::Scan { x, margin }));
        }
    }
    Ok(asymptotic_witness(&perturbed, side))
}

/// Compares expansion coefficients with arctan's, leading term first.
fn asymptotic_witness(c: &ShaferCoefficients, side: Side) -> Option<SharpnessWitness> {
    let ours = c.series();
    let reference = series_coefficients(SeriesTarget::Reference).expect("arctan has a series");

    let origin = ours
        .taylor
        .iter()
        .zip(reference.taylor)
        .zip([1u32, 3, 5])
        .map(|((&p, r), order)| (Region::Origin, order, p, r));

    // arctan has no x^-2 term
    let mut ref_at_infinity = [0.0; 3];
    for term in reference.asymptotic {
        if let Some(slot) = ref_at_infinity.get_mut(term.power as usize) {
            *slot = term.coeff;
        }
    }
    let infinity = ours.asymptotic.iter().map(|t| {
        (
            Region::Infinity,
            t.power,
            t.coeff,
            ref_at_infinity[t.power as usize],
        )
    });

    for region_terms in [origin.collect::<Vec<_>>(), infinity.collect::<Vec<_>>()] {
        for (region, order, p, r) in region_terms {
            let diff = p - r;
            if diff.abs() <= COEFF_TIE * p.abs().max(r.abs()).max(1.0) {
                continue;
            }
            let wrong_side = match side {
                Side::Lower => diff > 0.0,
                Side::Upper => diff < 0.0,
            };
            if wrong_side {
                return Some(SharpnessWitness::Asymptotic {
                    region,
                    order,
                    perturbed: p,
                    reference: r,
                });
            }
            break;
        }
    }
    None
}

/// All six components at every epsilon of [`EPSILON_LADDER`].
pub fn sharpness_ladder(oracle: &Oracle) -> Vec<SharpnessProbe> {
    let mut out = Vec::with_capacity(18);
    for side in [Side::Lower, Side::Upper] {
        for component in 1..=3 {
            for epsilon in EPSILON_LADDER {
                let witness = probe_sharpness(oracle, side, component, epsilon)
                    .expect("ladder arguments are valid");
                out.push(SharpnessProbe {
                    side,
                    component,
                    epsilon,
                    witness,
                });
            }
        }
    }
    out
}
