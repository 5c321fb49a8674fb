//! Curvature of `O^5 = SU(3)//SU(2)` under the Cheeger-deformed metric.
//!
//! `SU(2)` acts by `g -> psi_1(h) g psi_2(h)^-1`, where `psi_1` is the
//! upper-left block and `psi_2` the copy of `SO(3)` with Lie algebra `K`.
//! A horizontal plane projects to a flat plane of the quotient iff it is flat
//! upstairs, and by the Cheeger-deformation lemma that means
//! `[A, B] = [A^K, B^K] = 0`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::algebra::{
    bracket, diag_a, i1, i2, j1, j2, k1, k2, project_k, psi_quaternion, psi_torus,
    CheegerMetric, Su3Element, Su3GroupElement, M3,
};
use crate::error::{Error, Result};

/// Acceptance tolerance for the flatness of a constructed certificate.
pub const CERT_FLATNESS_TOL: f64 = 1e-18;
/// Acceptance tolerance for the horizontality of a constructed certificate.
pub const CERT_HORIZONTAL_TOL: f64 = 1e-10;

/// Vectors `psi(C) - Ad(g^-1) C` for `C = I_1, J_1, K_1`.
pub fn vertical_basis(g: &Su3GroupElement) -> [Su3Element; 3] {
    let gi = g.inverse();
    [(i1(), i2()), (j1(), j2()), (k1(), k2())].map(|(c, p)| p - gi.ad(&c))
}

// Coordinates in which the deformed metric is Euclidean: y = sqrt(w) x.
fn to_y(x: &Su3Element, m: &CheegerMetric) -> [f64; 8] {
    let w = m.weights();
    let c = x.coords();
    std::array::from_fn(|k| c[k] * w[k].sqrt())
}

fn from_y(y: &[f64; 8], m: &CheegerMetric) -> Su3Element {
    let w = m.weights();
    Su3Element::from_coords(&std::array::from_fn(|k| y[k] / w[k].sqrt()))
}

fn dot(x: &[f64; 8], y: &[f64; 8]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn axpy(y: &mut [f64; 8], a: f64, x: &[f64; 8]) {
    for k in 0..8 {
        y[k] += a * x[k];
    }
}

/// Gram-Schmidt with reorthogonalization; vectors below `floor` are dropped.
fn orthonormalize(vs: &[[f64; 8]], against: &[[f64; 8]], floor: f64) -> Vec<[f64; 8]> {
    let mut out: Vec<[f64; 8]> = Vec::new();
    for v in vs {
        let mut u = *v;
        for _ in 0..2 {
            for e in against.iter().chain(out.iter()) {
                let a = dot(&u, e);
                axpy(&mut u, -a, e);
            }
        }
        let n = dot(&u, &u).sqrt();
        if n > floor {
            out.push(u.map(|x| x / n));
        }
    }
    out
}

fn vertical_y(g: &Su3GroupElement, m: &CheegerMetric) -> Result<Vec<[f64; 8]>> {
    let v: Vec<[f64; 8]> = vertical_basis(g).iter().map(|x| to_y(x, m)).collect();
    let out = orthonormalize(&v, &[], 1e-8);
    if out.len() != 3 {
        return Err(Error::CertificateFailure(format!(
            "vertical space has rank {} at g",
            out.len()
        )));
    }
    Ok(out)
}

/// Orthonormal basis, in the deformed metric, of the horizontal space at `g`.
pub fn horizontal_basis(g: &Su3GroupElement, m: &CheegerMetric) -> Result<[Su3Element; 5]> {
    let v = vertical_y(g, m)?;
    // feed the standard axes, most horizontal first
    let mut axes: Vec<[f64; 8]> = (0..8)
        .map(|k| std::array::from_fn(|j| if j == k { 1.0 } else { 0.0 }))
        .collect();
    let residual = |e: &[f64; 8]| 1.0 - v.iter().map(|u| dot(e, u).powi(2)).sum::<f64>();
    axes.sort_by(|a, b| residual(b).total_cmp(&residual(a)));
    let h = orthonormalize(&axes, &v, 1e-6);
    if h.len() != 5 {
        return Err(Error::CertificateFailure(format!(
            "horizontal space has dimension {}",
            h.len()
        )));
    }
    Ok(std::array::from_fn(|k| from_y(&h[k], m)))
}

/// Horizontal part of `x` at `g`.
pub fn horizontal_projection(
    g: &Su3GroupElement,
    x: &Su3Element,
    m: &CheegerMetric,
) -> Result<Su3Element> {
    let v = vertical_y(g, m)?;
    let mut y = to_y(x, m);
    for _ in 0..2 {
        for e in &v {
            let a = dot(&y, e);
            axpy(&mut y, -a, e);
        }
    }
    Ok(from_y(&y, m))
}

/// `|[A, B]|^2 + |[A^K, B^K]|^2`, in the bi-invariant norm.
pub fn flatness(a: &Su3Element, b: &Su3Element) -> f64 {
    bracket(a, b).norm_sq() + bracket(&project_k(a), &project_k(b)).norm_sq()
}

/// The torus of points carrying a flat plane, parametrized by `(s, theta)`.
pub fn torus_point(s: f64, theta: f64) -> Su3GroupElement {
    let a = Complex64::new(3f64.sqrt() / 2.0, 0.0);
    let b = Complex64::from_polar(0.5, s);
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let u = M3::new(a, b, o, -b.conj(), a, o, o, o, one);
    let w = Complex64::from_polar(1.0, theta);
    let d = M3::from_diagonal(&nalgebra::Vector3::new(w, w, (w * w).conj()));
    Su3GroupElement::from_raw(u * d)
}

/// A flat horizontal plane `span{A, B}` at `g` with its residuals.
#[derive(Debug, Clone, Serialize)]
pub struct FlatPlaneCertificate {
    pub g: Su3GroupElement,
    pub a: Su3Element,
    pub b: Su3Element,
    pub flatness_residual: f64,
    /// Largest normalized deformed inner product of `A` or `B` with a
    /// vertical vector.
    pub horizontality_residual: f64,
}

impl FlatPlaneCertificate {
    pub fn accepted(&self, flat_tol: f64, horizontal_tol: f64) -> bool {
        self.flatness_residual < flat_tol && self.horizontality_residual < horizontal_tol
    }
}

fn horizontality_residual(g: &Su3GroupElement, xs: &[Su3Element], m: &CheegerMetric) -> Result<f64> {
    let v = vertical_y(g, m)?;
    let mut worst = 0f64;
    for x in xs {
        let y = to_y(x, m);
        let n = dot(&y, &y).sqrt();
        for e in &v {
            worst = worst.max(dot(&y, e).abs() / n);
        }
    }
    Ok(worst)
}

/// The explicit flat plane at `torus_point(s, theta)`: `A = diag(i, i, -2i)`
/// and `B = [[ri, z, 0], [-conj z, -ri, 0], 0]` with `z = i e^{is}` solving
/// `a^2 z + 3 b^2 conj z = 0` and `r = -2 Im(conj(a z) b) / (nu (|a|^2 + 3|b|^2))`.
pub fn flat_plane_at_torus(s: f64, theta: f64, m: &CheegerMetric) -> Result<FlatPlaneCertificate> {
    let g = torus_point(s, theta);
    let a = Complex64::new(3f64.sqrt() / 2.0, 0.0);
    let b = Complex64::from_polar(0.5, s);
    let z = Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, s);
    let r = -2.0 * ((a * z).conj() * b).im / (m.nu() * (a.norm_sqr() + 3.0 * b.norm_sqr()));
    let o = Complex64::new(0.0, 0.0);
    let ri = Complex64::new(0.0, r);
    let bm = Su3Element::from_raw(M3::new(ri, z, o, -z.conj(), -ri, o, o, o, o));
    let am = diag_a();
    let cert = FlatPlaneCertificate {
        g,
        a: am,
        b: bm,
        flatness_residual: flatness(&am, &bm),
        horizontality_residual: horizontality_residual(&g, &[am, bm], m)?,
    };
    if !cert.accepted(CERT_FLATNESS_TOL, CERT_HORIZONTAL_TOL) {
        return Err(Error::CertificateFailure(format!(
            "flat plane at ({s}, {theta}): flatness {:e}, horizontality {:e}",
            cert.flatness_residual, cert.horizontality_residual
        )));
    }
    Ok(cert)
}

/// A horizontal 2-plane, stored as a deformed-orthonormal pair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Plane {
    pub a: Su3Element,
    pub b: Su3Element,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinFlatness {
    pub value: f64,
    pub plane: Plane,
    /// Final value and plane of every restart, in restart order.
    pub restarts: Vec<(f64, Plane)>,
}

/// `flatness` restricted to the horizontal space, as a quartic form in the
/// coefficients of an orthonormal horizontal basis.
struct FlatnessForm {
    basis: [Su3Element; 5],
    // br[i][j] = coords of [h_i, h_j], bk[i][j] = coords of [h_i^K, h_j^K]
    br: [[[f64; 8]; 5]; 5],
    bk: [[[f64; 8]; 5]; 5],
}

impl FlatnessForm {
    fn new(basis: [Su3Element; 5]) -> Self {
        let hk = basis.map(|h| project_k(&h));
        let br = std::array::from_fn(|i| std::array::from_fn(|j| bracket(&basis[i], &basis[j]).coords()));
        let bk = std::array::from_fn(|i| std::array::from_fn(|j| bracket(&hk[i], &hk[j]).coords()));
        Self { basis, br, bk }
    }

    /// The quadratic form `beta -> f(alpha, beta)`.
    fn partial(&self, alpha: &[f64; 5]) -> DMatrix<f64> {
        let mut mr = [[0f64; 8]; 5];
        let mut mk = [[0f64; 8]; 5];
        for j in 0..5 {
            for i in 0..5 {
                axpy(&mut mr[j], alpha[i], &self.br[i][j]);
                axpy(&mut mk[j], alpha[i], &self.bk[i][j]);
            }
        }
        DMatrix::from_fn(5, 5, |j, l| dot(&mr[j], &mr[l]) + dot(&mk[j], &mk[l]))
    }

    // from the residual, not the quadratic form, which cancels badly near 0
    fn value(&self, alpha: &[f64; 5], beta: &[f64; 5]) -> f64 {
        self.residual(alpha, beta).iter().map(|x| x * x).sum()
    }

    fn element(&self, x: &[f64; 5]) -> Su3Element {
        let mut out = Su3Element::zero();
        for (k, h) in self.basis.iter().enumerate() {
            out = out + x[k] * *h;
        }
        out
    }

    /// Best unit `beta` orthogonal to `alpha` for the form at `alpha`.
    fn best_partner(&self, alpha: &[f64; 5]) -> [f64; 5] {
        let s = self.partial(alpha);
        // orthonormal basis of alpha^perp
        let axes: Vec<[f64; 8]> = (0..5)
            .map(|k| std::array::from_fn(|j| if j == k { 1.0 } else { 0.0 }))
            .collect();
        let a8: [f64; 8] = std::array::from_fn(|j| if j < 5 { alpha[j] } else { 0.0 });
        let u = orthonormalize(&axes, &[a8], 1e-6);
        let n = u.len();
        let um = DMatrix::from_fn(5, n, |i, k| u[k][i]);
        let red = um.transpose() * &s * &um;
        let eig = SymmetricEigen::new(red);
        let kmin = eig.eigenvalues.imin();
        let v = eig.eigenvectors.column(kmin);
        let beta = &um * v;
        let nb = beta.norm();
        std::array::from_fn(|i| beta[i] / nb)
    }
}

const MAX_SWEEPS: usize = 300;
const MAX_POLISH: usize = 200;

impl FlatnessForm {
    /// Residual vector `([A, B], [A^K, B^K])` in coordinates.
    fn residual(&self, alpha: &[f64; 5], beta: &[f64; 5]) -> [f64; 16] {
        let mut r = [0f64; 16];
        for i in 0..5 {
            for j in 0..5 {
                let w = alpha[i] * beta[j];
                for c in 0..8 {
                    r[c] += w * self.br[i][j][c];
                    r[c + 8] += w * self.bk[i][j][c];
                }
            }
        }
        r
    }
}

fn orthonormal_pair(alpha: &[f64; 5], beta: &[f64; 5]) -> Option<([f64; 5], [f64; 5])> {
    let pad = |x: &[f64; 5]| -> [f64; 8] { std::array::from_fn(|j| if j < 5 { x[j] } else { 0.0 }) };
    let u = orthonormalize(&[pad(alpha), pad(beta)], &[], 1e-12);
    if u.len() < 2 {
        return None;
    }
    let cut = |x: &[f64; 8]| -> [f64; 5] { std::array::from_fn(|j| x[j]) };
    Some((cut(&u[0]), cut(&u[1])))
}

/// Levenberg-Marquardt on the residual, moving the plane along
/// `Hom(P, P^perp)`. The minimum is degenerate, so this only converges
/// linearly, but much faster than the alternating sweeps near the end.
fn polish(form: &FlatnessForm, mut alpha: [f64; 5], mut beta: [f64; 5]) -> (f64, [f64; 5], [f64; 5]) {
    let mut val = form.value(&alpha, &beta);
    let mut damping = 1e-6;
    for _ in 0..MAX_POLISH {
        if val < 1e-30 {
            break;
        }
        let axes: Vec<[f64; 8]> = (0..5)
            .map(|k| std::array::from_fn(|j| if j == k { 1.0 } else { 0.0 }))
            .collect();
        let pad = |x: &[f64; 5]| -> [f64; 8] { std::array::from_fn(|j| if j < 5 { x[j] } else { 0.0 }) };
        let u = orthonormalize(&axes, &[pad(&alpha), pad(&beta)], 1e-6);
        let n = u.len();
        let mut jac = DMatrix::<f64>::zeros(16, 2 * n);
        for (k, uk) in u.iter().enumerate() {
            let uk: [f64; 5] = std::array::from_fn(|j| uk[j]);
            let da = form.residual(&uk, &beta);
            let db = form.residual(&alpha, &uk);
            for c in 0..16 {
                jac[(c, k)] = da[c];
                jac[(c, n + k)] = db[c];
            }
        }
        let r = nalgebra::DVector::from_column_slice(&form.residual(&alpha, &beta));
        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * &r;
        let mut accepted = false;
        while damping < 1e8 {
            let mut lhs = jtj.clone();
            for k in 0..2 * n {
                lhs[(k, k)] += damping;
            }
            let Some(step) = lhs.cholesky().map(|ch| ch.solve(&(-&jtr))) else {
                damping *= 10.0;
                continue;
            };
            let mut na = alpha;
            let mut nb = beta;
            for (k, uk) in u.iter().enumerate() {
                for j in 0..5 {
                    na[j] += step[k] * uk[j];
                    nb[j] += step[n + k] * uk[j];
                }
            }
            if let Some((na, nb)) = orthonormal_pair(&na, &nb) {
                let nv = form.value(&na, &nb);
                if nv < val {
                    alpha = na;
                    beta = nb;
                    val = nv;
                    damping = (damping / 10.0).max(1e-15);
                    accepted = true;
                    break;
                }
            }
            damping *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    (val, alpha, beta)
}

fn descend(form: &FlatnessForm, alpha0: [f64; 5]) -> (f64, [f64; 5], [f64; 5]) {
    let mut alpha = alpha0;
    let mut beta = form.best_partner(&alpha);
    let mut val = form.value(&alpha, &beta);
    for _ in 0..MAX_SWEEPS {
        let na = form.best_partner(&beta);
        let nb = form.best_partner(&na);
        let nv = form.value(&na, &nb);
        if nv >= val {
            break;
        }
        let small = val - nv <= 1e-12 * val;
        alpha = na;
        beta = nb;
        val = nv;
        if small {
            break;
        }
    }
    polish(form, alpha, beta)
}

fn unit_gaussian5(rng: &mut ChaCha8Rng) -> [f64; 5] {
    loop {
        let x: [f64; 5] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        if n > 1e-8 {
            return x.map(|t| t / n);
        }
    }
}

/// Minimizes `flatness` over horizontal 2-planes at `g` by alternating exact
/// minimization over the two vectors of an orthonormal pair, from `restarts`
/// random starts. Restart `k` draws from stream `k` of a generator seeded by
/// `seed`, so the result does not depend on scheduling.
pub fn min_flatness(
    g: &Su3GroupElement,
    m: &CheegerMetric,
    restarts: usize,
    seed: u64,
) -> Result<MinFlatness> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be at least 1".into()));
    }
    let form = FlatnessForm::new(horizontal_basis(g, m)?);
    let runs: Vec<(f64, Plane)> = (0..restarts)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let (v, a, b) = descend(&form, unit_gaussian5(&mut rng));
            (
                v,
                Plane {
                    a: form.element(&a),
                    b: form.element(&b),
                },
            )
        })
        .collect();
    let best = runs
        .iter()
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("restarts >= 1");
    Ok(MinFlatness {
        value: best.0,
        plane: best.1,
        restarts: runs,
    })
}

/// Largest principal angle between two planes, in the deformed metric.
pub fn principal_angle(p: &Plane, q: &Plane, m: &CheegerMetric) -> f64 {
    let basis = |x: &Plane| orthonormalize(&[to_y(&x.a, m), to_y(&x.b, m)], &[], 1e-12);
    let (u, v) = (basis(p), basis(q));
    if u.len() < 2 || v.len() < 2 {
        return std::f64::consts::FRAC_PI_2;
    }
    let c = nalgebra::Matrix2::from_fn(|i, j| dot(&u[i], &v[j]));
    let smin = c.singular_values().min().clamp(0.0, 1.0);
    smin.acos()
}

/// Deformed-norm distance from `x` to the plane, relative to `|x|`.
pub fn plane_residual(x: &Su3Element, p: &Plane, m: &CheegerMetric) -> f64 {
    let u = orthonormalize(&[to_y(&p.a, m), to_y(&p.b, m)], &[], 1e-12);
    let mut y = to_y(x, m);
    let n = dot(&y, &y).sqrt();
    for e in &u {
        let a = dot(&y, e);
        axpy(&mut y, -a, e);
    }
    dot(&y, &y).sqrt() / n
}

/// Horizontal projections of the coordinate tangents `g^-1 dg/ds` and
/// `g^-1 dg/dtheta` at `torus_point(s, theta)`.
pub fn torus_tangents(s: f64, theta: f64, m: &CheegerMetric) -> Result<Plane> {
    let g = torus_point(s, theta);
    let gi = g.inverse();
    let db = Complex64::new(0.0, 1.0) * Complex64::from_polar(0.5, s);
    let o = Complex64::new(0.0, 0.0);
    let w = Complex64::from_polar(1.0, theta);
    let d = M3::from_diagonal(&nalgebra::Vector3::new(w, w, (w * w).conj()));
    let du = M3::new(o, db, o, -db.conj(), o, o, o, o, o);
    let ds = Su3Element::from_raw(gi.matrix() * du * d);
    Ok(Plane {
        a: horizontal_projection(&g, &ds, m)?,
        b: horizontal_projection(&g, &diag_a(), m)?,
    })
}

/// Counts `t = 2 pi k / n`, `n <= orders`, with `exp(t I)` fixing `g`.
pub fn stabilizer_check(g: &Su3GroupElement, orders: u32) -> usize {
    let mut count = 0;
    for n in 1..=orders.max(1) {
        for k in 0..n {
            if num_integer::gcd(k, n) != 1 && !(k == 0 && n == 1) {
                continue;
            }
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let (p1, p2) = psi_torus(t);
            if (p1 * g.matrix() * p2.adjoint() - g.matrix()).norm() < 1e-9 {
                count += 1;
            }
        }
    }
    count
}

/// Haar-random element of `SU(3)`.
pub fn random_su3<R: Rng>(rng: &mut R) -> Su3GroupElement {
    let mut z = M3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            z[(i, j)] = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..3 {
        let d = r[(j, j)];
        let ph = d / d.norm();
        for i in 0..3 {
            q[(i, j)] *= ph;
        }
    }
    let det = q.determinant();
    let fix = Complex64::from_polar(1.0, -det.arg() / 3.0);
    Su3GroupElement::from_raw(q * fix)
}

/// Tolerances of the quotient-distance search, echoed into reports.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DistanceSearch {
    pub s_steps: usize,
    pub theta_steps: usize,
    pub refine_from: usize,
    pub final_step: f64,
}

impl Default for DistanceSearch {
    fn default() -> Self {
        Self {
            s_steps: 24,
            theta_steps: 48,
            refine_from: 4,
            final_step: 1e-7,
        }
    }
}

/// The 120 unit quaternions of the binary icosahedral group.
fn icosians() -> Vec<[f64; 4]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = Vec::new();
    for k in 0..4 {
        for s in [1.0, -1.0] {
            let mut q = [0.0; 4];
            q[k] = s;
            out.push(q);
        }
    }
    for m in 0..16 {
        out.push(std::array::from_fn(|k| if m >> k & 1 == 1 { -0.5 } else { 0.5 }));
    }
    let even = [
        [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2], [1, 0, 3, 2], [1, 2, 0, 3], [1, 3, 2, 0],
        [2, 0, 1, 3], [2, 1, 3, 0], [2, 3, 0, 1], [3, 0, 2, 1], [3, 1, 0, 2], [3, 2, 1, 0],
    ];
    let base = [phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0];
    for perm in even {
        for m in 0..8 {
            let signed: [f64; 4] =
                std::array::from_fn(|k| if k < 3 && m >> k & 1 == 1 { -base[k] } else { base[k] });
            let mut q = [0.0; 4];
            for k in 0..4 {
                q[perm[k]] = signed[k];
            }
            out.push(q);
        }
    }
    out
}

fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

// |psi_1(q) g psi_2(q)^-1 - torus_point(s, theta)|_F^2
fn orbit_gap(g: &M3, q: [f64; 4], s: f64, theta: f64) -> f64 {
    let (p1, p2) = psi_quaternion(q);
    let x = p1 * g * p2.adjoint();
    let t = torus_point(s, theta);
    (6.0 - 2.0 * (t.matrix().adjoint() * x).trace().re).max(0.0)
}

/// Frobenius distance, in the quotient, from `g` to the flat torus: the
/// minimum over the `SU(2)` orbit of `g` and over `(s, theta)`. Coarse grid
/// over the binary icosahedral group and a `(s, theta)` lattice, then
/// compass search from the best few grid points.
pub fn distance_to_torus(g: &Su3GroupElement, search: &DistanceSearch) -> f64 {
    use std::f64::consts::TAU;
    let gm = g.matrix();
    let a = 3f64.sqrt() / 2.0;
    let mut grid: Vec<(f64, [f64; 4], f64, f64)> = Vec::new();
    for q in icosians() {
        let (p1, p2) = psi_quaternion(q);
        let x = p1 * gm * p2.adjoint();
        let mut best = (f64::INFINITY, 0.0, 0.0);
        for si in 0..search.s_steps {
            let s = TAU * si as f64 / search.s_steps as f64;
            let b = Complex64::from_polar(0.5, s);
            // tr(T^* x) = conj(w) (u^* x)_{00} + conj(w) (u^* x)_{11} + w^2 x_{22}
            let ax = |i: usize| x[(0, i)] * a - x[(1, i)] * b;
            let bx = |i: usize| x[(0, i)] * b.conj() + x[(1, i)] * a;
            let alpha = ax(0) + bx(1);
            let beta = x[(2, 2)];
            for ti in 0..search.theta_steps {
                let theta = TAU * ti as f64 / search.theta_steps as f64;
                let w = Complex64::from_polar(1.0, theta);
                let tr = (w.conj() * alpha + w * w * beta).re;
                let gap = 6.0 - 2.0 * tr;
                if gap < best.0 {
                    best = (gap, s, theta);
                }
            }
        }
        grid.push((best.0, q, best.1, best.2));
    }
    grid.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut best = f64::INFINITY;
    for &(_, q0, s0, t0) in grid.iter().take(search.refine_from) {
        best = best.min(refine(gm, q0, s0, t0, search.final_step));
    }
    best.sqrt()
}

fn refine(g: &M3, mut q: [f64; 4], mut s: f64, mut theta: f64, final_step: f64) -> f64 {
    let mut val = orbit_gap(g, q, s, theta);
    let mut step = 0.1;
    while step > final_step {
        let mut moved = false;
        for dir in 0..5 {
            for sign in [1.0, -1.0] {
                let h = sign * step;
                let (nq, ns, nt) = match dir {
                    0..=2 => {
                        let mut e = [1.0, 0.0, 0.0, 0.0];
                        e[dir + 1] = h / 2.0;
                        (quat_mul(q, e), s, theta)
                    }
                    3 => (q, s + h, theta),
                    _ => (q, s, theta + h),
                };
                let nv = orbit_gap(g, nq, ns, nt);
                if nv < val {
                    let n = nq.iter().map(|x| x * x).sum::<f64>().sqrt();
                    q = nq.map(|x| x / n);
                    s = ns;
                    theta = nt;
                    val = nv;
                    moved = true;
                }
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    val
}
