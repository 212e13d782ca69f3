//! Centralized numerical tolerances.
//!
//! Every residual check in the crate routes through one of these knobs so
//! that acceptance thresholds are auditable in a single place.

/// Tolerance bundle threaded through all constructions and checks.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Residual bound for structural identities: bracket closure, metric
    /// invariance, involution laws, projector and eigenvector residuals.
    pub structural: f64,
    /// Clustering width for eigenvalue tuples and for the residuals of the
    /// rotation relations between paired root-space bases.
    pub cluster: f64,
    /// Width for deciding membership of a phase in the half-pi lattice.
    pub lattice: f64,
    /// Multiplier defining the ambiguity band `[lattice, guard * lattice)`;
    /// a phase landing inside the band is a hard error, never a guess.
    pub guard: f64,
    /// Merge width for coincident curvature vectors and offsets.
    pub vector_merge: f64,
    /// Seed for the deterministic random draws used by generic-combination
    /// eigendecompositions, regular-witness selection and sample grids.
    pub seed: u64,
    /// Number of fresh random draws attempted before giving up.
    pub retries: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: 1e-9,
            cluster: 1e-7,
            lattice: 1e-9,
            guard: 10.0,
            vector_merge: 1e-8,
            seed: 0x5eed_0001,
            retries: 5,
        }
    }
}

impl Tolerances {
    /// Same tolerances with a different lattice width (CLI `--tol`).
    pub fn with_lattice(mut self, lattice: f64) -> Self {
        self.lattice = lattice;
        self
    }

    /// Distance from `x` to the nearest point of the lattice `step * Z`.
    pub fn lattice_distance(x: f64, step: f64) -> f64 {
        let r = x.rem_euclid(step);
        r.min(step - r)
    }

    /// Classify a distance to a lattice: `Ok(true)` on the lattice,
    /// `Ok(false)` safely off it, `Err(d)` inside the ambiguity band.
    pub fn lattice_member(&self, x: f64, step: f64) -> std::result::Result<bool, f64> {
        let d = Self::lattice_distance(x, step);
        if d < self.lattice {
            Ok(true)
        } else if d < self.guard * self.lattice {
            Err(d)
        } else {
            Ok(false)
        }
    }
}
