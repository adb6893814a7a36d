//! Covers with bound and multiplicity verification.
//!
//! A cover is cs-bounded when every block has diameter <= c*s; its
//! s-multiplicity is the largest number of blocks a single set of diameter
//! <= s can meet.  The default verifier bounds the multiplicity by the
//! clique number of the block-proximity graph (blocks joined when their
//! inter-block distance is <= s); an exhaustive mode computes the exact
//! value for small covers.

use crate::error::{Error, Result};
use crate::metric::{distance, MetricKind};
use crate::point::PointSet2D;

/// An indexed family of blocks (index sets into a point set) with scale
/// parameters.
#[derive(Clone, Debug)]
pub struct Cover {
    pub blocks: Vec<Vec<usize>>,
    pub scale_s: f64,
    pub bound_c: f64,
    /// The claimed s-multiplicity bound n + 1.
    pub claimed_multiplicity: usize,
}

impl Cover {
    /// Validates that the blocks are nonempty and jointly cover every point
    /// index of `ps`.
    pub fn new(
        blocks: Vec<Vec<usize>>,
        scale_s: f64,
        bound_c: f64,
        claimed_multiplicity: usize,
        ps: &PointSet2D,
    ) -> Result<Self> {
        if !(scale_s > 0.0) {
            return Err(Error::Domain(format!("cover scale must be positive, got {}", scale_s)));
        }
        if !(bound_c >= 1.0) {
            return Err(Error::Domain(format!("bound constant must be >= 1, got {}", bound_c)));
        }
        if claimed_multiplicity < 1 {
            return Err(Error::Domain("claimed multiplicity must be >= 1".into()));
        }
        let mut covered = vec![false; ps.len()];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Domain(format!("block {} is empty", b)));
            }
            for &i in block {
                if i >= ps.len() {
                    return Err(Error::Domain(format!(
                        "block {} references point {} outside the set (len {})",
                        b,
                        i,
                        ps.len()
                    )));
                }
                covered[i] = true;
            }
        }
        if let Some(missing) = covered.iter().position(|&c| !c) {
            return Err(Error::Domain(format!("point {} is not covered by any block", missing)));
        }
        Ok(Cover { blocks, scale_s, bound_c, claimed_multiplicity })
    }
}

/// How the reported multiplicity relates to the true s-multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum MultiplicityMode {
    /// Exhaustive search over point selections: the exact value.
    Exact,
    /// Clique number of the block-proximity graph: an upper bound in
    /// general, exact for s-disjoint covers.
    CliqueUpperBound,
}

#[derive(Clone, Debug)]
pub struct CoverVerdict {
    /// Every block has diameter <= c*s.
    pub bounded: bool,
    pub multiplicity_upper: usize,
    /// Block indices witnessing the multiplicity when it exceeds the claim.
    pub witness: Option<Vec<usize>>,
    pub mode: MultiplicityMode,
}

/// Verify boundedness and bound the s-multiplicity via the block-proximity
/// clique number.
pub fn verify_cover(ps: &PointSet2D, cover: &Cover, metric: &MetricKind) -> Result<CoverVerdict> {
    let adj = proximity_graph(ps, cover, metric)?;
    let clique = max_clique(&adj);
    let bounded = blocks_bounded(ps, cover, metric)?;
    let multiplicity_upper = clique.len();
    let witness = (multiplicity_upper > cover.claimed_multiplicity).then_some(clique);
    Ok(CoverVerdict { bounded, multiplicity_upper, witness, mode: MultiplicityMode::CliqueUpperBound })
}

/// Exact s-multiplicity by exhaustive search over one-point-per-block
/// selections; limited to covers with at most 20 blocks.
pub fn verify_cover_exact(ps: &PointSet2D, cover: &Cover, metric: &MetricKind) -> Result<CoverVerdict> {
    const MAX_BLOCKS: usize = 20;
    if cover.blocks.len() > MAX_BLOCKS {
        return Err(Error::Capability(format!(
            "exact multiplicity supports at most {} blocks, got {}",
            MAX_BLOCKS,
            cover.blocks.len()
        )));
    }
    let bounded = blocks_bounded(ps, cover, metric)?;
    let (multiplicity_upper, best) = exact_multiplicity(ps, cover, metric)?;
    let witness = (multiplicity_upper > cover.claimed_multiplicity).then_some(best);
    Ok(CoverVerdict { bounded, multiplicity_upper, witness, mode: MultiplicityMode::Exact })
}

fn blocks_bounded(ps: &PointSet2D, cover: &Cover, metric: &MetricKind) -> Result<bool> {
    let limit = cover.bound_c * cover.scale_s;
    for block in &cover.blocks {
        let d = crate::chains::component_diameter(ps, block, metric)?;
        if d > limit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn inter_block_distance(
    ps: &PointSet2D,
    a: &[usize],
    b: &[usize],
    metric: &MetricKind,
) -> Result<f64> {
    let mut best = f64::INFINITY;
    for &i in a {
        for &j in b {
            best = best.min(distance(ps.point(i), ps.point(j), metric)?);
        }
    }
    Ok(best)
}

fn proximity_graph(ps: &PointSet2D, cover: &Cover, metric: &MetricKind) -> Result<Vec<Vec<bool>>> {
    let n = cover.blocks.len();
    if n == 0 {
        return Err(Error::Domain("cover has no blocks".into()));
    }
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = inter_block_distance(ps, &cover.blocks[i], &cover.blocks[j], metric)?;
            if d <= cover.scale_s {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    Ok(adj)
}

/// Branch-and-bound maximum clique; block counts are desk-scale and the
/// paper's covers are nearly edge-free.
fn max_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    let degree: Vec<usize> = (0..n).map(|i| adj[i].iter().filter(|&&e| e).count()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(degree[i]));

    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();

    fn expand(
        adj: &[Vec<bool>],
        candidates: &[usize],
        current: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if current.len() + candidates.len() <= best.len() {
            return;
        }
        if candidates.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        for (pos, &v) in candidates.iter().enumerate() {
            if current.len() + (candidates.len() - pos) <= best.len() {
                return;
            }
            current.push(v);
            let next: Vec<usize> =
                candidates[pos + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
            expand(adj, &next, current, best);
            current.pop();
        }
    }

    expand(adj, &order, &mut current, &mut best);
    best.sort_unstable();
    best
}

/// Exact s-multiplicity: the largest set of blocks from which one point per
/// block can be chosen with all pairwise distances <= s (equivalently, a set
/// of diameter <= s meeting all of them).
fn exact_multiplicity(
    ps: &PointSet2D,
    cover: &Cover,
    metric: &MetricKind,
) -> Result<(usize, Vec<usize>)> {
    // Precompute pairwise point distances among points appearing in blocks.
    let n_blocks = cover.blocks.len();
    let s = cover.scale_s;
    let mut best: Vec<usize> = Vec::new();
    let mut chosen_points: Vec<usize> = Vec::new();
    let mut chosen_blocks: Vec<usize> = Vec::new();

    fn compatible(
        ps: &PointSet2D,
        metric: &MetricKind,
        chosen: &[usize],
        candidate: usize,
        s: f64,
    ) -> Result<bool> {
        for &p in chosen {
            if distance(ps.point(p), ps.point(candidate), metric)? > s {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn search(
        ps: &PointSet2D,
        cover: &Cover,
        metric: &MetricKind,
        block: usize,
        chosen_points: &mut Vec<usize>,
        chosen_blocks: &mut Vec<usize>,
        best: &mut Vec<usize>,
        s: f64,
    ) -> Result<()> {
        let n_blocks = cover.blocks.len();
        if chosen_blocks.len() + (n_blocks - block) <= best.len() {
            return Ok(());
        }
        if block == n_blocks {
            if chosen_blocks.len() > best.len() {
                *best = chosen_blocks.clone();
            }
            return Ok(());
        }
        // Include `block` with some compatible point.
        for &p in &cover.blocks[block] {
            if compatible(ps, metric, chosen_points, p, s)? {
                chosen_points.push(p);
                chosen_blocks.push(block);
                search(ps, cover, metric, block + 1, chosen_points, chosen_blocks, best, s)?;
                chosen_points.pop();
                chosen_blocks.pop();
            }
        }
        // Skip `block`.
        search(ps, cover, metric, block + 1, chosen_points, chosen_blocks, best, s)?;
        Ok(())
    }

    if n_blocks == 0 {
        return Err(Error::Domain("cover has no blocks".into()));
    }
    search(ps, cover, metric, 0, &mut chosen_points, &mut chosen_blocks, &mut best, s)?;
    let size = best.len().max(1);
    Ok((size, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricKind;

    fn geometric_points() -> PointSet2D {
        PointSet2D::from_reals([2.0, 4.0, 8.0, 16.0, 32.0]).unwrap()
    }

    /// Brute-force s-multiplicity over all point subsets (oracle for tiny sets).
    fn multiplicity_oracle(ps: &PointSet2D, cover: &Cover, metric: &MetricKind) -> usize {
        let n = ps.len();
        assert!(n <= 16);
        let mut best = 0usize;
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let diam = crate::chains::component_diameter(ps, &subset, metric).unwrap();
            if diam <= cover.scale_s {
                let met = cover
                    .blocks
                    .iter()
                    .filter(|b| b.iter().any(|i| subset.contains(i)))
                    .count();
                best = best.max(met);
            }
        }
        best
    }

    #[test]
    fn geometric_cover_at_scale_two() {
        // Blocks {{2,4},{8},{16},{32}} with c = 2 at s = 2.
        let ps = geometric_points();
        let cover =
            Cover::new(vec![vec![0, 1], vec![2], vec![3], vec![4]], 2.0, 2.0, 1, &ps).unwrap();
        let verdict = verify_cover(&ps, &cover, &MetricKind::Euclidean).unwrap();
        assert!(verdict.bounded);
        assert_eq!(verdict.multiplicity_upper, 1);
        assert!(verdict.witness.is_none());
        assert_eq!(multiplicity_oracle(&ps, &cover, &MetricKind::Euclidean), 1);
    }

    #[test]
    fn single_block_cover_is_trivially_fine() {
        let ps = geometric_points();
        let cover = Cover::new(vec![vec![0, 1, 2, 3, 4]], 30.0, 1.0, 1, &ps).unwrap();
        let verdict = verify_cover(&ps, &cover, &MetricKind::Euclidean).unwrap();
        assert!(verdict.bounded);
        assert_eq!(verdict.multiplicity_upper, 1);
    }

    #[test]
    fn close_blocks_have_multiplicity_two() {
        let ps = PointSet2D::from_reals([0.0, 0.5]).unwrap();
        let cover = Cover::new(vec![vec![0], vec![1]], 1.0, 1.0, 1, &ps).unwrap();
        let verdict = verify_cover(&ps, &cover, &MetricKind::Euclidean).unwrap();
        assert_eq!(verdict.multiplicity_upper, 2);
        assert_eq!(verdict.witness, Some(vec![0, 1]));
    }

    #[test]
    fn empty_cover_rejected() {
        let ps = geometric_points();
        let cover = Cover { blocks: vec![], scale_s: 1.0, bound_c: 1.0, claimed_multiplicity: 1 };
        assert!(verify_cover(&ps, &cover, &MetricKind::Euclidean).is_err());
    }

    #[test]
    fn clique_bound_can_exceed_exact_multiplicity() {
        // Pairwise-close blocks with no single <=s-diameter set meeting all
        // three: the straddling block {0, 4} is near both singletons, but
        // {1} and {3} are 2 > s apart only jointly reachable through it.
        let ps = PointSet2D::from_reals([0.0, 1.0, 3.0, 4.0]).unwrap();
        let cover = Cover::new(vec![vec![0, 3], vec![1], vec![2]], 2.0, 2.0, 1, &ps).unwrap();
        let clique = verify_cover(&ps, &cover, &MetricKind::Euclidean).unwrap();
        let exact = verify_cover_exact(&ps, &cover, &MetricKind::Euclidean).unwrap();
        assert_eq!(clique.multiplicity_upper, 3);
        assert_eq!(exact.multiplicity_upper, 2);
        assert_eq!(exact.multiplicity_upper, multiplicity_oracle(&ps, &cover, &MetricKind::Euclidean));
        assert!(exact.multiplicity_upper <= clique.multiplicity_upper);
        assert_eq!(exact.mode, MultiplicityMode::Exact);
    }

    #[test]
    fn exact_mode_matches_subset_oracle_on_random_covers() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let n = rng.gen_range(4..10);
            let pts: Vec<f64> = {
                let mut v = Vec::new();
                while v.len() < n {
                    let x: f64 = rng.gen_range(0.0..6.0);
                    if v.iter().all(|&y: &f64| (y - x).abs() > 1e-6) {
                        v.push(x);
                    }
                }
                v
            };
            let ps = PointSet2D::from_reals(pts).unwrap();
            let n_blocks = rng.gen_range(2..=4usize.min(n));
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n_blocks];
            for i in 0..n {
                blocks[rng.gen_range(0..n_blocks)].push(i);
            }
            blocks.retain(|b| !b.is_empty());
            let s = rng.gen_range(0.3..3.0);
            let cover = Cover::new(blocks, s, 100.0, 1, &ps).unwrap();
            let exact = verify_cover_exact(&ps, &cover, &MetricKind::Euclidean).unwrap();
            assert_eq!(
                exact.multiplicity_upper,
                multiplicity_oracle(&ps, &cover, &MetricKind::Euclidean)
            );
        }
    }

    #[test]
    fn s_disjoint_covers_report_multiplicity_one() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            // Clusters of diameter < 0.4 spaced > s = 1 apart.
            let mut pts = Vec::new();
            let mut blocks = Vec::new();
            let mut base = 0.0;
            for _ in 0..rng.gen_range(2..6) {
                let k = rng.gen_range(1..4);
                let mut block = Vec::new();
                for _ in 0..k {
                    block.push(pts.len());
                    pts.push(base + rng.gen_range(0.0..0.4));
                }
                blocks.push(block);
                base += rng.gen_range(1.5..3.0);
            }
            let ps = PointSet2D::from_reals(pts).unwrap();
            let cover = Cover::new(blocks, 1.0, 1.0, 1, &ps).unwrap();
            let verdict = verify_cover(&ps, &cover, &MetricKind::Euclidean).unwrap();
            assert_eq!(verdict.multiplicity_upper, 1);
        }
    }
}
