//! Scale-windowed dimension certificates.
//!
//! Finite point sets always have Nagata dimension 0 in the limit, so every
//! certificate here is quantified over a finite scale window: dimension-zero
//! evidence means the chain-component constant stays bounded across the
//! window, and "dimension >= 1 behavior" means chains whose diameters grow
//! through the window.

use crate::chains::{component_diameter, s_chain_components};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::metric::{MetricKind, RatioSequence};
use crate::point::{Point, PointSet2D};
use num_complex::Complex64;
use serde::Serialize;

/// Relative slack used by floating-point comparisons of certificate bounds.
pub const CERT_REL_TOL: f64 = 1e-12;

/// A finite geometric grid of scales s_i = s_min * gamma^i <= s_max.
#[derive(Clone, Debug, Serialize)]
pub struct ScaleGrid {
    pub s_min: f64,
    pub s_max: f64,
    pub ratio: f64,
}

impl ScaleGrid {
    pub fn new(s_min: f64, s_max: f64, ratio: f64) -> Result<Self> {
        if !(s_min > 0.0) || !(s_max > s_min) || !(ratio > 1.0) {
            return Err(Error::Domain(format!(
                "invalid scale grid: s_min={} s_max={} ratio={}",
                s_min, s_max, ratio
            )));
        }
        let grid = ScaleGrid { s_min, s_max, ratio };
        if grid.scales().len() < 3 {
            return Err(Error::Domain("scale grid must contain at least 3 scales".into()));
        }
        Ok(grid)
    }

    pub fn scales(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut s = self.s_min;
        while s <= self.s_max * (1.0 + CERT_REL_TOL) {
            out.push(s);
            s *= self.ratio;
        }
        out
    }
}

/// Default pass threshold when the caller has no better guidance: four times
/// the theoretical constant when one is known, else forty.
pub fn default_c_max(theoretical: Option<f64>) -> f64 {
    4.0 * theoretical.unwrap_or(10.0)
}

/// Scale-windowed dimension-zero evidence: the largest component
/// diameter-to-scale ratio across the grid.
#[derive(Clone, Debug, Serialize)]
pub struct Ndim0Certificate {
    pub grid: ScaleGrid,
    /// max component diameter / s, one entry per grid scale.
    pub per_scale_ratio: Vec<f64>,
    /// The certificate constant: the maximum of `per_scale_ratio`.
    pub constant: f64,
    pub c_max: f64,
    pub pass: bool,
}

/// Compute the dimension-zero certificate of `ps` over `grid`.
pub fn ndim0_certificate(
    ps: &PointSet2D,
    grid: &ScaleGrid,
    metric: &MetricKind,
    c_max: f64,
) -> Result<Ndim0Certificate> {
    let mut per_scale_ratio = Vec::new();
    for s in grid.scales() {
        let dec = s_chain_components(ps, s, metric)?;
        per_scale_ratio.push(dec.max_diameter() / s);
    }
    let constant = per_scale_ratio.iter().copied().fold(0.0, f64::max);
    Ok(Ndim0Certificate {
        grid: grid.clone(),
        per_scale_ratio,
        constant,
        c_max,
        pass: constant <= c_max,
    })
}

/// The explicit cover of the geometric sequence {lambda^1, ..,
/// lambda^n_points} at scale `s`: one block holding the first N terms (N
/// chosen so lambda^(N-1)(lambda-1) <= s < lambda^N(lambda-1)) and
/// singletons beyond, with bound constant lambda/(lambda-1).
pub fn exp_sequence_cover(lambda: f64, n_points: usize, s: f64) -> Result<(PointSet2D, Cover)> {
    if !(lambda > 1.0) {
        return Err(Error::Domain(format!("lambda must exceed 1, got {}", lambda)));
    }
    if !(s > 0.0) {
        return Err(Error::Domain(format!("scale must be positive, got {}", s)));
    }
    if n_points == 0 {
        return Err(Error::Domain("need at least one point".into()));
    }
    let top = lambda.powi(n_points as i32);
    if !top.is_finite() {
        return Err(Error::Capability(format!(
            "lambda^{} overflows f64",
            n_points
        )));
    }
    let points: Vec<f64> = (1..=n_points as i32).map(|k| lambda.powi(k)).collect();
    let ps = PointSet2D::from_reals(points)?;

    // Largest N >= 0 with lambda^(N-1)(lambda-1) <= s, capped at n_points.
    let mut n_join = 0usize;
    while n_join < n_points && lambda.powi(n_join as i32) * (lambda - 1.0) <= s {
        n_join += 1;
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    if n_join >= 1 {
        blocks.push((0..n_join).collect());
    }
    for i in n_join..n_points {
        blocks.push(vec![i]);
    }
    let c = lambda / (lambda - 1.0);
    let cover = Cover::new(blocks, s, c, 1, &ps)?;
    Ok((ps, cover))
}

/// Scale-windowed dimension >= 1 evidence: delta-chains with strictly
/// increasing (positive) diameters.
#[derive(Clone, Debug)]
pub struct ChainGrowthWitness {
    pub delta: f64,
    /// Index paths with consecutive gaps <= delta (vertices may repeat where
    /// a walk backtracks).
    pub chains: Vec<Vec<usize>>,
    /// Strictly increasing diameters, one per chain.
    pub diameters: Vec<f64>,
}

impl ChainGrowthWitness {
    pub fn max_diameter(&self) -> f64 {
        self.diameters.last().copied().unwrap_or(0.0)
    }
}

/// Extract `min_chains` delta-chains with strictly increasing positive
/// diameters, if they exist.
///
/// Greedy: each delta-component is chain-connected, so a spanning walk of
/// its threshold graph is a delta-chain; prefixes of the walks supply
/// intermediate diameters.
pub fn chain_growth_witness(
    ps: &PointSet2D,
    delta: f64,
    min_chains: usize,
) -> Result<Option<ChainGrowthWitness>> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("delta must be positive, got {}", delta)));
    }
    if min_chains == 0 {
        return Err(Error::Domain("min_chains must be at least 1".into()));
    }
    let metric = MetricKind::Euclidean;
    let dec = s_chain_components(ps, delta, &metric)?;

    // Candidate (diameter, component, walk prefix length).
    struct Candidate {
        diam: f64,
        comp: usize,
        prefix_len: usize,
    }
    let mut walks: Vec<Vec<usize>> = Vec::with_capacity(dec.components.len());
    let mut candidates: Vec<Candidate> = Vec::new();
    for (c, comp) in dec.components.iter().enumerate() {
        let walk = spanning_walk(ps, comp, delta)?;
        let increases = prefix_diameter_increases(ps, &walk);
        for (prefix_len, diam) in increases {
            if diam > 0.0 {
                candidates.push(Candidate { diam, comp: c, prefix_len });
            }
        }
        walks.push(walk);
    }
    candidates.sort_by(|a, b| a.diam.partial_cmp(&b.diam).unwrap_or(std::cmp::Ordering::Equal));
    candidates.dedup_by(|a, b| a.diam == b.diam);
    if candidates.len() < min_chains {
        return Ok(None);
    }
    let chosen = &candidates[candidates.len() - min_chains..];
    let chains: Vec<Vec<usize>> =
        chosen.iter().map(|c| walks[c.comp][..c.prefix_len].to_vec()).collect();
    let diameters: Vec<f64> = chosen.iter().map(|c| c.diam).collect();
    Ok(Some(ChainGrowthWitness { delta, chains, diameters }))
}

/// A walk through the threshold graph of `comp` (consecutive steps within
/// `delta`) visiting every vertex.
fn spanning_walk(ps: &PointSet2D, comp: &[usize], delta: f64) -> Result<Vec<usize>> {
    if comp.len() == 1 {
        return Ok(vec![comp[0]]);
    }
    // All-real components are chains in sorted order.
    let mut reals: Vec<(f64, usize)> = Vec::with_capacity(comp.len());
    let mut all_real = true;
    for &i in comp {
        match ps.point(i) {
            Point::Finite(z) if z.im == 0.0 => reals.push((z.re, i)),
            _ => {
                all_real = false;
                break;
            }
        }
    }
    if all_real {
        reals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        return Ok(reals.into_iter().map(|(_, i)| i).collect());
    }

    // General case: DFS over the threshold graph, recording backtracks so
    // consecutive walk entries are always graph-adjacent.
    let k = comp.len();
    let pos: std::collections::HashMap<usize, usize> =
        comp.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for a in 0..k {
        let za = ps.point(comp[a]).as_finite().ok_or_else(|| {
            Error::Domain("chain witnesses require finite points".into())
        })?;
        for b in (a + 1)..k {
            let zb = ps.point(comp[b]).as_finite().unwrap();
            if (za - zb).norm() <= delta {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    let _ = pos;
    let mut walk: Vec<usize> = Vec::with_capacity(2 * k);
    let mut visited = vec![false; k];
    // Iterative DFS storing (vertex, next neighbor cursor).
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    visited[0] = true;
    walk.push(comp[0]);
    while let Some((v, cursor)) = stack.last_mut() {
        let v = *v;
        let mut advanced = false;
        while *cursor < adj[v].len() {
            let u = adj[v][*cursor];
            *cursor += 1;
            if !visited[u] {
                visited[u] = true;
                walk.push(comp[u]);
                stack.push((u, 0));
                advanced = true;
                break;
            }
        }
        if !advanced {
            stack.pop();
            if let Some(&(parent, _)) = stack.last() {
                walk.push(comp[parent]);
            }
        }
    }
    Ok(walk)
}

/// (prefix length, diameter) at every strict increase of the prefix
/// diameter along the walk.
fn prefix_diameter_increases(ps: &PointSet2D, walk: &[usize]) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    let mut diam: f64 = 0.0;
    // Fast path: real points in sorted order.
    let sorted_real = walk.windows(2).all(|w| match (ps.point(w[0]), ps.point(w[1])) {
        (Point::Finite(a), Point::Finite(b)) => a.im == 0.0 && b.im == 0.0 && a.re <= b.re,
        _ => false,
    });
    if sorted_real && !walk.is_empty() {
        let first = ps.point(walk[0]).as_finite().unwrap().re;
        for (idx, &i) in walk.iter().enumerate() {
            let d = ps.point(i).as_finite().unwrap().re - first;
            if d > diam {
                diam = d;
                out.push((idx + 1, diam));
            }
        }
        return out;
    }
    let mut seen: Vec<Complex64> = Vec::new();
    for (idx, &i) in walk.iter().enumerate() {
        let z = match ps.point(i) {
            Point::Finite(z) => z,
            Point::Infinity => continue,
        };
        if seen.iter().any(|&w| w == z) {
            continue;
        }
        let mut grew = false;
        for &w in &seen {
            let d = (z - w).norm();
            if d > diam {
                diam = d;
                grew = true;
            }
        }
        seen.push(z);
        if grew {
            out.push((idx + 1, diam));
        }
    }
    out
}

/// Certificate that a point sequence satisfies d(x_{k+1}, o) >= lambda *
/// d(x_k, o), together with the induced ultrametric's bi-Lipschitz bounds.
#[derive(Clone, Debug, Serialize)]
pub struct RatioSequenceCertificate {
    pub basepoint: (f64, f64),
    pub lambda: f64,
    pub checked: bool,
    pub bi_lip_lower: f64,
    pub bi_lip_upper: f64,
    /// The registered sequence, present exactly when `checked`.
    #[serde(skip)]
    pub sequence: Option<RatioSequence>,
}

/// Check the ratio condition for `ps` around basepoint `o` and, when it
/// holds, register the sequence for `MetricKind::UltrametricRatio` after
/// verifying the strong triangle inequality and both bi-Lipschitz bounds.
///
/// Points must already be sorted by distance from `o` with no ties; the
/// ratio comparison carries a 1e-12 relative slack so that sequences like
/// {e^k} at lambda = e are not rejected for a final-ulp rounding.
pub fn ratio_sequence_certificate(
    ps: &PointSet2D,
    o: Complex64,
    lambda: f64,
) -> Result<RatioSequenceCertificate> {
    if !(lambda > 1.0) {
        return Err(Error::Domain(format!("lambda must exceed 1, got {}", lambda)));
    }
    let mut points = Vec::with_capacity(ps.len());
    for p in ps.iter() {
        match p {
            Point::Finite(z) => points.push(z),
            Point::Infinity => {
                return Err(Error::Domain("ratio sequences cannot contain infinity".into()))
            }
        }
    }
    let radii: Vec<f64> = points.iter().map(|z| (z - o).norm()).collect();
    for w in radii.windows(2) {
        if w[1] == w[0] {
            return Err(Error::Domain(
                "tied distances from the basepoint: the ultrametric is ill-defined".into(),
            ));
        }
        if w[1] < w[0] {
            return Err(Error::Domain("points are not sorted by distance from the basepoint".into()));
        }
    }
    let checked = radii.windows(2).all(|w| w[1] >= lambda * w[0] * (1.0 - CERT_REL_TOL));
    let bi_lip_lower = lambda / (lambda + 1.0);
    let bi_lip_upper = lambda / (lambda - 1.0);
    let mut cert = RatioSequenceCertificate {
        basepoint: (o.re, o.im),
        lambda,
        checked,
        bi_lip_lower,
        bi_lip_upper,
        sequence: None,
    };
    if !checked {
        return Ok(cert);
    }
    let seq = RatioSequence::new(o, lambda, points.clone());
    verify_strong_triangle(&seq)?;
    verify_bi_lipschitz(&points, &seq, bi_lip_lower, bi_lip_upper)?;
    cert.sequence = Some(seq);
    Ok(cert)
}

/// d_U(x, z) <= max(d_U(x, y), d_U(y, z)) with no tolerance.  Exhaustive for
/// small sequences, deterministically strided beyond that.
fn verify_strong_triangle(seq: &RatioSequence) -> Result<()> {
    let n = seq.len();
    let mut check = |m: usize, nn: usize, p: usize| -> Result<()> {
        let lhs = seq.ultrametric(m, nn);
        let rhs = seq.ultrametric(m, p).max(seq.ultrametric(p, nn));
        if lhs > rhs {
            return Err(Error::ConstructionViolation(format!(
                "strong triangle failed on indices ({}, {}, {})",
                m, nn, p
            )));
        }
        Ok(())
    };
    if n <= 300 {
        for m in 0..n {
            for nn in (m + 1)..n {
                for p in 0..n {
                    check(m, nn, p)?;
                }
            }
        }
    } else {
        let stride = (n / 64).max(1);
        for m in (0..n).step_by(stride) {
            for nn in (m + 1..n).step_by(stride) {
                for p in (0..n).step_by(stride) {
                    check(m, nn, p)?;
                }
            }
        }
    }
    Ok(())
}

fn verify_bi_lipschitz(
    points: &[Complex64],
    seq: &RatioSequence,
    lower: f64,
    upper: f64,
) -> Result<()> {
    let n = points.len();
    for m in 0..n {
        for nn in (m + 1)..n {
            let d = (points[m] - points[nn]).norm();
            let du = seq.ultrametric(m, nn);
            let ok_lower = lower * d <= du * (1.0 + CERT_REL_TOL);
            let ok_upper = du <= upper * d * (1.0 + CERT_REL_TOL);
            if !ok_lower || !ok_upper {
                return Err(Error::ConstructionViolation(format!(
                    "bi-Lipschitz bound failed on pair ({}, {}): d={} d_U={}",
                    m, nn, d, du
                )));
            }
        }
    }
    Ok(())
}

/// Greedy covering counts and the fitted covering exponent.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringExponent {
    pub center: (f64, f64),
    pub big_r: f64,
    /// (radius, greedy net count) per requested radius.
    pub counts: Vec<(f64, usize)>,
    /// Least-squares slope of log N against log(R/r).
    pub s_hat: f64,
}

/// Farthest-point net counts N(center, R, r) for each r in `r_list`
/// (strictly decreasing, all below `big_r`) and the least-squares covering
/// exponent.
///
/// The net is grown farthest-point-first from the lowest-index point inside
/// the ball, so counts are deterministic; the prefix of the insertion order
/// whose insertion distances exceed r is an r-covering of the members.
pub fn covering_exponent(
    ps: &PointSet2D,
    center: Complex64,
    big_r: f64,
    r_list: &[f64],
) -> Result<CoveringExponent> {
    if r_list.len() < 2 {
        return Err(Error::Domain("need at least 2 radii to fit an exponent".into()));
    }
    if !(big_r > 0.0) {
        return Err(Error::Domain("outer radius must be positive".into()));
    }
    for w in r_list.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::Domain("radii must be strictly decreasing".into()));
        }
    }
    if !(r_list[0] < big_r) || !(*r_list.last().unwrap() > 0.0) {
        return Err(Error::Domain("radii must lie in (0, R)".into()));
    }
    let members: Vec<Complex64> = ps
        .iter()
        .filter_map(|p| p.as_finite())
        .filter(|z| (z - center).norm() <= big_r)
        .collect();
    if members.is_empty() {
        return Err(Error::Domain("no points inside the ball".into()));
    }
    let r_min = *r_list.last().unwrap();

    // Farthest-point traversal with incremental minimum distances.  Points
    // whose distance to the net drops below the smallest requested radius
    // can never be inserted again, so they are retired from the scan.
    let m = members.len();
    let mut min_dist: Vec<f64> = members.iter().map(|z| (z - members[0]).norm()).collect();
    let mut active: Vec<u32> = (1..m as u32).collect();
    let mut insertion: Vec<f64> = vec![f64::INFINITY];
    let mut last_added = members[0];
    loop {
        let mut far = r_min;
        let mut arg: Option<u32> = None;
        let mut write = 0usize;
        for read in 0..active.len() {
            let i = active[read] as usize;
            let nd = (members[i] - last_added).norm();
            if nd < min_dist[i] {
                min_dist[i] = nd;
            }
            if min_dist[i] > r_min {
                active[write] = active[read];
                write += 1;
                if min_dist[i] > far {
                    far = min_dist[i];
                    arg = Some(active[read]);
                }
            }
        }
        active.truncate(write);
        let Some(arg) = arg else { break };
        insertion.push(far);
        last_added = members[arg as usize];
        min_dist[arg as usize] = 0.0;
    }

    let counts: Vec<(f64, usize)> = r_list
        .iter()
        .map(|&r| (r, insertion.iter().filter(|&&d| d > r).count()))
        .collect();

    // OLS slope of ln N on ln(R/r).
    let xs: Vec<f64> = counts.iter().map(|(r, _)| (big_r / r).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|(_, n)| (*n as f64).ln()).collect();
    let xbar = xs.iter().sum::<f64>() / xs.len() as f64;
    let ybar = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let s_hat = if sxx == 0.0 { 0.0 } else { sxy / sxx };

    Ok(CoveringExponent { center: (center.re, center.im), big_r, counts, s_hat })
}
