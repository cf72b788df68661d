//! Bound repair. Each baseline keeps the constraint handling of its
//! original design: clamping for classic DE/ES/PSO, midpoint-to-bound for
//! the adaptive DEs.

use crate::{Problem, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairRule {
    /// Set the violating coordinate to the violated bound.
    Clamp,
    /// Set the violating coordinate to the midpoint of the violated bound
    /// and the parent's coordinate.
    MidpointToBound,
    /// Reflect the violating coordinate across the violated bound
    /// (clamped afterwards in case the violation exceeds the box width).
    Reflect,
}

/// Repair `x` into the problem box. `parent` must itself be in bounds.
pub fn repair_bounds<T: Scalar>(
    mut x: Vec<T>,
    parent: &[T],
    problem: &Problem<T>,
    rule: RepairRule,
) -> Vec<T> {
    debug_assert_eq!(x.len(), parent.len());
    let two = T::from_f64_c(2.0);
    for j in 0..x.len() {
        let lo = problem.lower()[j];
        let hi = problem.upper()[j];
        if x[j] >= lo && x[j] <= hi {
            continue;
        }
        let violated = if x[j] < lo { lo } else { hi };
        x[j] = match rule {
            RepairRule::Clamp => violated,
            RepairRule::MidpointToBound => (violated + parent[j]) / two,
            RepairRule::Reflect => {
                let reflected = two * violated - x[j];
                if reflected < lo {
                    lo
                } else if reflected > hi {
                    hi
                } else {
                    reflected
                }
            }
        };
    }
    x
}
