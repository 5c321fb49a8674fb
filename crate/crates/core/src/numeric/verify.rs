//! Sampling driver for the almost-positivity check on `O^5`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{diag_a, CheegerMetric};
use super::o5::{
    distance_to_torus, flat_plane_at_torus, min_flatness, plane_residual, principal_angle,
    random_su3, torus_point, torus_tangents, DistanceSearch, Plane, CERT_FLATNESS_TOL,
    CERT_HORIZONTAL_TOL,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct O5Config {
    pub nu: f64,
    pub samples: usize,
    pub restarts: usize,
    pub seed: u64,
    pub torus_points: usize,
    /// Samples closer than this to the flat torus are not counted as off-torus.
    pub off_torus_distance: f64,
    pub distance_search: DistanceSearch,
}

impl Default for O5Config {
    fn default() -> Self {
        Self {
            nu: 0.5,
            samples: 1000,
            restarts: 64,
            seed: 42,
            torus_points: 50,
            off_torus_distance: 0.05,
            distance_search: DistanceSearch::default(),
        }
    }
}

/// Thresholds applied to the measured quantities.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct O5Tolerances {
    pub torus_flatness: f64,
    pub certificate_flatness: f64,
    pub certificate_horizontality: f64,
    /// Restart minima below this count as flat planes for uniqueness.
    pub flat_value: f64,
    pub uniqueness_angle: f64,
    pub tangency_angle: f64,
    pub containment: f64,
}

impl Default for O5Tolerances {
    fn default() -> Self {
        Self {
            torus_flatness: 1e-12,
            certificate_flatness: CERT_FLATNESS_TOL,
            certificate_horizontality: CERT_HORIZONTAL_TOL,
            flat_value: 1e-10,
            uniqueness_angle: 1e-3,
            tangency_angle: 1e-4,
            containment: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct O5Checks {
    pub off_torus_positive: bool,
    pub torus_flat: bool,
    pub certificates: bool,
    pub uniqueness: bool,
    pub tangency: bool,
    pub containment: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct O5Report {
    pub config: O5Config,
    pub tolerances: O5Tolerances,
    pub off_torus_samples: usize,
    pub near_torus_samples: usize,
    /// Smallest minimum flatness over the off-torus samples.
    pub off_torus_min_flatness: f64,
    /// Quotient distance of the sample attaining that minimum.
    pub off_torus_min_distance: f64,
    pub torus_max_flatness: f64,
    pub certificate_max_flatness: f64,
    pub certificate_max_horizontality: f64,
    pub uniqueness_max_angle: f64,
    pub tangency_max_angle: f64,
    /// Distance from `diag(i, i, -2i)` to the searched flat planes; held to
    /// the uniqueness tolerance.
    pub searched_containment_max: f64,
    /// Distance from `diag(i, i, -2i)` to the certificate planes.
    pub certificate_containment_max: f64,
    pub checks: O5Checks,
}

impl O5Report {
    pub fn passed(&self) -> bool {
        let c = &self.checks;
        c.off_torus_positive && c.torus_flat && c.certificates && c.uniqueness && c.tangency && c.containment
    }
}

// splitmix64 finalizer; decorrelates per-sample seeds
fn mix(seed: u64, k: u64) -> u64 {
    let mut z = seed ^ k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct TorusCheck {
    min_value: f64,
    cert_flat: f64,
    cert_horizontal: f64,
    max_angle: f64,
    tangency: f64,
    searched_containment: f64,
    cert_containment: f64,
}

fn check_torus_point(s: f64, t: f64, cfg: &O5Config, m: &CheegerMetric, tol: &O5Tolerances, k: u64) -> Result<TorusCheck> {
    let cert = flat_plane_at_torus(s, t, m)?;
    let flat = Plane { a: cert.a, b: cert.b };
    let found = min_flatness(&torus_point(s, t), m, cfg.restarts, mix(cfg.seed ^ 0x5EED, k))?;
    let mut max_angle = 0f64;
    let mut searched_containment = 0f64;
    for (v, p) in &found.restarts {
        if *v < tol.flat_value {
            max_angle = max_angle.max(principal_angle(p, &flat, m));
            searched_containment = searched_containment.max(plane_residual(&diag_a(), p, m));
        }
    }
    let tangency = principal_angle(&torus_tangents(s, t, m)?, &flat, m);
    Ok(TorusCheck {
        min_value: found.value,
        cert_flat: cert.flatness_residual,
        cert_horizontal: cert.horizontality_residual,
        max_angle,
        tangency,
        searched_containment,
        cert_containment: plane_residual(&diag_a(), &flat, m),
    })
}

/// [`verify_o5_with`] at the default tolerances.
pub fn verify_o5(cfg: &O5Config) -> Result<O5Report> {
    verify_o5_with(cfg, &O5Tolerances::default())
}

/// Samples Haar-random points, measures their distance to the flat torus and
/// their least flatness; then checks the torus itself.
pub fn verify_o5_with(cfg: &O5Config, tol: &O5Tolerances) -> Result<O5Report> {
    let m = CheegerMetric::new(cfg.nu)?;
    let tol = *tol;
    if cfg.samples == 0 && cfg.torus_points == 0 {
        return Err(Error::InvalidArgument("nothing to sample".into()));
    }

    let sampled: Vec<(f64, f64)> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64)> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i);
            let g = random_su3(&mut rng);
            let d = distance_to_torus(&g, &cfg.distance_search);
            let v = min_flatness(&g, &m, cfg.restarts, mix(cfg.seed, i))?.value;
            Ok((d, v))
        })
        .collect::<Result<_>>()?;

    let mut off = 0;
    let mut best = (f64::INFINITY, f64::NAN);
    for &(d, v) in &sampled {
        if d > cfg.off_torus_distance {
            off += 1;
            if v < best.0 {
                best = (v, d);
            }
        }
    }

    let mut trng = ChaCha8Rng::seed_from_u64(cfg.seed);
    trng.set_stream(u64::MAX);
    let params: Vec<(f64, f64)> = (0..cfg.torus_points)
        .map(|_| {
            let tau = std::f64::consts::TAU;
            (trng.random::<f64>() * tau, trng.random::<f64>() * tau)
        })
        .collect();
    let torus: Vec<TorusCheck> = params
        .par_iter()
        .enumerate()
        .map(|(k, &(s, t))| check_torus_point(s, t, cfg, &m, &tol, k as u64))
        .collect::<Result<_>>()?;

    let fold = |f: fn(&TorusCheck) -> f64| torus.iter().map(f).fold(0f64, f64::max).abs();
    let torus_max_flatness = fold(|c| c.min_value);
    let certificate_max_flatness = fold(|c| c.cert_flat);
    let certificate_max_horizontality = fold(|c| c.cert_horizontal);
    let uniqueness_max_angle = fold(|c| c.max_angle);
    let tangency_max_angle = fold(|c| c.tangency);
    let searched_containment_max = fold(|c| c.searched_containment);
    let certificate_containment_max = fold(|c| c.cert_containment);

    let checks = O5Checks {
        off_torus_positive: off > 0 && best.0 > 0.0,
        torus_flat: torus_max_flatness < tol.torus_flatness,
        certificates: certificate_max_flatness < tol.certificate_flatness
            && certificate_max_horizontality < tol.certificate_horizontality,
        uniqueness: uniqueness_max_angle < tol.uniqueness_angle,
        tangency: tangency_max_angle < tol.tangency_angle,
        // the flat planes are degenerate minima, so searched planes are only
        // located to about the fourth root of machine precision
        containment: certificate_containment_max < tol.containment
            && searched_containment_max < tol.uniqueness_angle,
    };
    Ok(O5Report {
        config: *cfg,
        tolerances: tol,
        off_torus_samples: off,
        near_torus_samples: cfg.samples - off,
        off_torus_min_flatness: best.0,
        off_torus_min_distance: best.1,
        torus_max_flatness,
        certificate_max_flatness,
        certificate_max_horizontality,
        uniqueness_max_angle,
        tangency_max_angle,
        searched_containment_max,
        certificate_containment_max,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let cfg = O5Config {
            samples: 20,
            restarts: 8,
            torus_points: 4,
            ..O5Config::default()
        };
        let r = verify_o5(&cfg).unwrap();
        assert!(r.passed(), "{r:#?}");
    }
}
