//! Deterministic cross-section sampling of cones and seeded random instance
//! generators for property tests.
//!
//! Cross-sections are built from the extreme rays, a simplex grid over
//! convex combinations of the spanning directions, and (if the budget is not
//! yet exhausted) seeded random combinations. Everything is reproducible
//! from the `SampleSpec`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{GeometryError, PolyCone, VRep};
use crate::process::{ConvexProcess, LinearProcess, ProcessError};
use crate::scalar::{unit, Scalar};

/// How to sample a unit cross-section.
#[derive(Clone, Copy, Debug)]
pub struct SampleSpec {
    /// Target number of sample points.
    pub count: usize,
    /// Seed for the random fill-in stage.
    pub seed: u64,
    /// Grid levels for the simplex mesh over the spanning directions.
    pub mesh_levels: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { count: 1000, seed: 0, mesh_levels: 16 }
    }
}

impl SampleSpec {
    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Unit vectors covering the cross-section `{x ∈ C : |x| = 1}`.
///
/// Extreme rays and `±lineality` directions come first and are always
/// present; the trivial cone yields an empty sample.
pub fn cross_section<S: Scalar>(
    cone: &PolyCone<S>,
    spec: &SampleSpec,
) -> Result<Vec<Vec<S>>, GeometryError> {
    let dirs = cone.spanning_directions()?;
    if dirs.is_empty() {
        return Ok(Vec::new());
    }
    let tol = cone.cfg().tol_geom;
    let mut out: Vec<Vec<S>> = Vec::new();
    let push = |v: Vec<S>, out: &mut Vec<Vec<S>>| {
        let dup = out.iter().any(|q| {
            q.iter().zip(&v).map(|(&a, &b)| (a - b) * (a - b)).sum::<S>().sqrt() <= tol
        });
        if !dup {
            out.push(v);
        }
    };
    for d in &dirs {
        if let Some(u) = unit(d, cone.cfg().tol_pivot) {
            push(u, &mut out);
        }
    }
    // Simplex grid over convex combinations of the spanning directions.
    let k = dirs.len();
    if k > 1 {
        let levels = spec.mesh_levels.max(1);
        let mut weights = vec![0usize; k];
        grid_combinations(&dirs, &mut weights, 0, levels, &mut |point| {
            if out.len() < spec.count {
                if let Some(u) = unit(point, cone.cfg().tol_pivot) {
                    push(u, &mut out);
                }
            }
        });
    }
    // Seeded random fill to reach the requested count.
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut attempts = 0usize;
    while out.len() < spec.count && attempts < spec.count * 4 {
        attempts += 1;
        let mut p = vec![S::zero(); cone.dim()];
        for d in &dirs {
            let w = S::of(-(rng.gen::<f64>().max(1e-12)).ln());
            for (pi, &di) in p.iter_mut().zip(d) {
                *pi = *pi + w * di;
            }
        }
        if let Some(u) = unit(&p, cone.cfg().tol_pivot) {
            push(u, &mut out);
        }
    }
    out.truncate(spec.count.max(dirs.len()));
    Ok(out)
}

fn grid_combinations<S: Scalar, F: FnMut(&[S])>(
    dirs: &[Vec<S>],
    weights: &mut [usize],
    idx: usize,
    remaining: usize,
    emit: &mut F,
) {
    if idx == dirs.len() - 1 {
        weights[idx] = remaining;
        let dim = dirs[0].len();
        let mut p = vec![S::zero(); dim];
        for (w, d) in weights.iter().zip(dirs) {
            let wf = S::of(*w as f64);
            for (pi, &di) in p.iter_mut().zip(d) {
                *pi = *pi + wf * di;
            }
        }
        emit(&p);
        return;
    }
    for w in 0..=remaining {
        weights[idx] = w;
        grid_combinations(dirs, weights, idx + 1, remaining - w, emit);
    }
}

/// Random cone from `k` generators with entries in `(-1, 1)`.
pub fn random_cone<S: Scalar>(rng: &mut ChaCha8Rng, dim: usize, max_rays: usize) -> PolyCone<S> {
    let k = rng.gen_range(1..=max_rays.max(1));
    let rays: Vec<Vec<S>> = (0..k)
        .map(|_| (0..dim).map(|_| S::of(rng.gen_range(-1.0..1.0))).collect())
        .collect();
    PolyCone::from_generators(dim, rays).expect("random generators are well formed")
}

/// Random cone in inequality form with `k` rows.
pub fn random_hrep_cone<S: Scalar>(rng: &mut ChaCha8Rng, dim: usize, max_rows: usize) -> PolyCone<S> {
    let k = rng.gen_range(1..=max_rows.max(1));
    let rows: Vec<Vec<S>> = (0..k)
        .map(|_| (0..dim).map(|_| S::of(rng.gen_range(-1.0..1.0))).collect())
        .collect();
    PolyCone::from_hrep(dim, rows, Vec::new()).expect("random rows are well formed")
}

/// Random subspace of the given dimension.
pub fn random_subspace<S: Scalar>(rng: &mut ChaCha8Rng, dim: usize, sub_dim: usize) -> PolyCone<S> {
    let basis: Vec<Vec<S>> = (0..sub_dim)
        .map(|_| (0..dim).map(|_| S::of(rng.gen_range(-1.0..1.0))).collect())
        .collect();
    PolyCone::subspace(dim, basis).expect("random basis is well formed")
}

/// Random convex process given by a random graph cone in `R^{2n}`.
pub fn random_process<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, max_rays: usize) -> ConvexProcess<S> {
    let graph = random_cone(rng, 2 * n, max_rays);
    ConvexProcess::new(n, graph).expect("graph dimension matches")
}

/// Random linear process: a random subspace graph.
pub fn random_linear_process<S: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> LinearProcess<S> {
    let sub_dim = rng.gen_range(1..=n.max(1));
    let graph = random_subspace(rng, 2 * n, sub_dim);
    LinearProcess::try_from_process(ConvexProcess::new(n, graph).expect("dimension matches"))
        .expect("subspace graph is linear")
}

/// Random strict process `H(x) = A x + K` with `|A| <= rho` (spectral bound
/// via row-sum scaling) and a small random input cone.
pub fn random_strict_process<S: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    rho: f64,
) -> ConvexProcess<S> {
    let mut a: Vec<Vec<f64>> =
        (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    // Frobenius norm bounds the spectral norm.
    let fro: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    if fro > 0.0 {
        let scale = rho / fro;
        for row in a.iter_mut() {
            for v in row.iter_mut() {
                *v *= scale;
            }
        }
    }
    let a_s: Vec<Vec<S>> = a.iter().map(|r| r.iter().map(|&v| S::of(v)).collect()).collect();
    let max_rays = rng.gen_range(1..=n);
    let k = random_cone(rng, n, max_rays);
    ConvexProcess::from_affine_map(&a_s, &k, None).expect("dimensions match")
}

/// Random convex process whose domain satisfies `dom H + R_- = R^n`,
/// obtained by augmenting a random graph with `(d, 0)` generators until the
/// sum condition holds.
pub fn random_domain_condition_process<S: Scalar>(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_rays: usize,
) -> Result<ConvexProcess<S>, ProcessError> {
    let mut graph = random_cone::<S>(rng, 2 * n, max_rays);
    for _ in 0..2 * n + 2 {
        let h = ConvexProcess::new(n, graph.clone())?;
        if h.check_domain_condition()? {
            return Ok(h);
        }
        let dom = h.domain()?;
        let r_minus = h.minimal_linear()?.reachable()?;
        let missing = dom.sum(&r_minus)?.polar(crate::geometry::PolarSign::Negative);
        // The sum cone plus the spanning directions of its polar covers all
        // of space, so grafting each direction into the domain via a
        // generator (d, 0) makes the condition hold.
        let mut rays = graph.vrep()?.rays;
        let lineality = graph.vrep()?.lineality;
        for d in missing.spanning_directions()? {
            let mut g = d.clone();
            g.extend(std::iter::repeat(S::zero()).take(n));
            rays.push(g);
        }
        graph = PolyCone::from_parts(
            2 * n,
            Some(VRep { rays, lineality }),
            None,
            *graph.cfg(),
        )?;
    }
    let h = ConvexProcess::new(n, graph)?;
    if h.check_domain_condition()? {
        Ok(h)
    } else {
        Err(ProcessError::Internal("domain-condition augmentation did not terminate".into()))
    }
}
