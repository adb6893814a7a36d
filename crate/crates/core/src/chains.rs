//! s-chains and s-chain components: the connected components of the graph
//! joining points at distance <= s.

use crate::error::{Error, Result};
use crate::metric::{distance, MetricKind};
use crate::point::{Point, PointSet2D};

/// The partition of a point set into s-chain components, with exact
/// per-component diameters.
#[derive(Clone, Debug)]
pub struct ChainDecomposition {
    pub scale: f64,
    /// Components as index sets, each sorted; components ordered by their
    /// smallest member index.
    pub components: Vec<Vec<usize>>,
    pub diameters: Vec<f64>,
}

impl ChainDecomposition {
    /// Component id of each point index.
    pub fn component_of(&self, n_points: usize) -> Vec<usize> {
        let mut owner = vec![usize::MAX; n_points];
        for (c, comp) in self.components.iter().enumerate() {
            for &i in comp {
                owner[i] = c;
            }
        }
        owner
    }

    pub fn max_diameter(&self) -> f64 {
        self.diameters.iter().copied().fold(0.0, f64::max)
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Decompose `ps` into its s-chain components under `metric`.
///
/// Components are exactly the transitive closure of the <=s adjacency
/// relation; ordering is deterministic (by smallest member index).
pub fn s_chain_components(ps: &PointSet2D, s: f64, metric: &MetricKind) -> Result<ChainDecomposition> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("chain scale must be positive, got {}", s)));
    }
    let n = ps.len();
    let mut uf = UnionFind::new(n);
    match metric {
        MetricKind::Euclidean => {
            if ps.contains_infinity() {
                return Err(Error::Domain(
                    "the point at infinity has no Euclidean distance".into(),
                ));
            }
            // Sweep points sorted by real part: any edge has |re_i - re_j| <= s.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| {
                let za = ps.point(a).as_finite().unwrap();
                let zb = ps.point(b).as_finite().unwrap();
                za.re.partial_cmp(&zb.re).unwrap_or(std::cmp::Ordering::Equal)
            });
            for i in 0..n {
                let zi = ps.point(order[i]).as_finite().unwrap();
                for j in (i + 1)..n {
                    let zj = ps.point(order[j]).as_finite().unwrap();
                    if zj.re - zi.re > s {
                        break;
                    }
                    if (zi - zj).norm() <= s {
                        uf.union(order[i], order[j]);
                    }
                }
            }
        }
        _ => {
            for i in 0..n {
                for j in (i + 1)..n {
                    if distance(ps.point(i), ps.point(j), metric)? <= s {
                        uf.union(i, j);
                    }
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of_root: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for i in 0..n {
        let root = uf.find(i);
        let g = *group_of_root.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    // Indices were visited in order, so each group is sorted and groups are
    // already ordered by smallest member.
    let diameters = groups
        .iter()
        .map(|comp| component_diameter(ps, comp, metric))
        .collect::<Result<Vec<f64>>>()?;
    Ok(ChainDecomposition { scale: s, components: groups, diameters })
}

/// Exact diameter of an index subset under `metric`.
///
/// O(k) for all-real sets under the Euclidean metric, O(k^2) otherwise.
pub fn component_diameter(ps: &PointSet2D, comp: &[usize], metric: &MetricKind) -> Result<f64> {
    if comp.len() < 2 {
        return Ok(0.0);
    }
    if matches!(metric, MetricKind::Euclidean) {
        let mut all_real = true;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &i in comp {
            match ps.point(i) {
                Point::Finite(z) if z.im == 0.0 => {
                    lo = lo.min(z.re);
                    hi = hi.max(z.re);
                }
                _ => {
                    all_real = false;
                    break;
                }
            }
        }
        if all_real {
            return Ok(hi - lo);
        }
    }
    let mut diam: f64 = 0.0;
    for (a, &i) in comp.iter().enumerate() {
        for &j in comp[a + 1..].iter() {
            diam = diam.max(distance(ps.point(i), ps.point(j), metric)?);
        }
    }
    Ok(diam)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reach_oracle(ps: &PointSet2D, s: f64, metric: &MetricKind) -> Vec<Vec<bool>> {
        // Floyd-Warshall-style transitive closure of the <=s adjacency.
        let n = ps.len();
        let mut reach = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                reach[i][j] =
                    i == j || distance(ps.point(i), ps.point(j), metric).unwrap() <= s;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        reach
    }

    #[test]
    fn threshold_graph_example() {
        let ps = PointSet2D::from_reals([0.0, 1.0, 2.0, 10.0]).unwrap();
        let dec = s_chain_components(&ps, 1.0, &MetricKind::Euclidean).unwrap();
        assert_eq!(dec.components, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(dec.diameters, vec![2.0, 0.0]);
    }

    #[test]
    fn scale_at_least_diameter_gives_one_component() {
        let ps = PointSet2D::from_complex(
            [(0.0, 0.0), (3.0, 4.0), (-2.0, 1.0)]
                .map(|(re, im)| num_complex::Complex64::new(re, im)),
        )
        .unwrap();
        let dec = s_chain_components(&ps, 10.0, &MetricKind::Euclidean).unwrap();
        assert_eq!(dec.components.len(), 1);
    }

    #[test]
    fn matches_brute_force_closure_on_random_sets() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let pts: Vec<num_complex::Complex64> = (0..50)
                .map(|_| num_complex::Complex64::new(rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0)))
                .collect();
            let ps = PointSet2D::from_complex(pts).unwrap();
            let dec = s_chain_components(&ps, 0.3, &MetricKind::Euclidean).unwrap();
            let reach = reach_oracle(&ps, 0.3, &MetricKind::Euclidean);
            let owner = dec.component_of(ps.len());
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    assert_eq!(owner[i] == owner[j], reach[i][j], "pair ({}, {})", i, j);
                }
            }
        }
    }

    #[test]
    fn monotone_refinement_in_scale() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let pts: Vec<num_complex::Complex64> = (0..60)
            .map(|_| num_complex::Complex64::new(rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0)))
            .collect();
        let ps = PointSet2D::from_complex(pts).unwrap();
        let fine = s_chain_components(&ps, 0.2, &MetricKind::Euclidean).unwrap();
        let coarse = s_chain_components(&ps, 0.5, &MetricKind::Euclidean).unwrap();
        let coarse_owner = coarse.component_of(ps.len());
        for comp in &fine.components {
            let c = coarse_owner[comp[0]];
            assert!(comp.iter().all(|&i| coarse_owner[i] == c));
        }
    }
}
