//! Seeded, order-independent k-means over 3-D points.
//!
//! Points are processed in a canonical value-sorted order, so any input
//! permutation of the same multiset produces the same clusters. Seeding is
//! k-means++ from a ChaCha stream; a handful of restarts keeps the objective
//! near the global optimum on small instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RESTARTS: u64 = 4;
const RESTART_STRIDE: u64 = 0x9e37_79b9_7f4a_7c15;

pub type Point = [f64; 3];

fn dist2(a: &Point, b: &Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    dx * dx + dy * dy + dz * dz
}

fn cmp_points(a: &Point, b: &Point) -> std::cmp::Ordering {
    a[0].total_cmp(&b[0])
        .then(a[1].total_cmp(&b[1]))
        .then(a[2].total_cmp(&b[2]))
}

/// Within-cluster sum of squared distances to cluster means.
pub fn within_cluster_ss(points: &[Point], partition: &[Vec<usize>]) -> f64 {
    let mut total = 0.0;
    for cluster in partition {
        if cluster.is_empty() {
            continue;
        }
        let mut mean = [0.0f64; 3];
        for &i in cluster {
            for d in 0..3 {
                mean[d] += points[i][d];
            }
        }
        for m in &mut mean {
            *m /= cluster.len() as f64;
        }
        for &i in cluster {
            total += dist2(&points[i], &mean);
        }
    }
    total
}

/// Cluster `points` into at most `k` groups; returns disjoint index sets
/// covering every point, ordered by cluster mean.
///
/// When fewer than `k` distinct values exist, the effective cluster count
/// drops to the distinct count.
pub fn cluster(points: &[Point], k: usize, seed: u64, max_iters: usize) -> Vec<Vec<usize>> {
    assert!(!points.is_empty(), "cluster requires at least one point");
    assert!(k >= 1, "cluster requires k >= 1");

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| cmp_points(&points[a], &points[b]));
    let sorted: Vec<Point> = order.iter().map(|&i| points[i]).collect();

    let distinct = 1 + sorted
        .windows(2)
        .filter(|w| cmp_points(&w[0], &w[1]) != std::cmp::Ordering::Equal)
        .count();
    let k_eff = k.min(distinct);

    let mut best: Option<(f64, Vec<usize>, usize)> = None;
    for restart in 0..RESTARTS {
        let restart_seed = seed.wrapping_add(restart.wrapping_mul(RESTART_STRIDE));
        let (mut assignments, centers) = lloyd(&sorted, k_eff, restart_seed, max_iters);
        hartigan_refine(&sorted, &mut assignments, centers, max_iters);
        let objective = objective_of(&sorted, &assignments, centers);
        if best.as_ref().is_none_or(|(b, _, _)| objective < *b) {
            best = Some((objective, assignments, centers));
        }
    }
    let (_, assignments, centers) = best.expect("at least one restart");

    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); centers];
    for (pos, &cluster_idx) in assignments.iter().enumerate() {
        clusters[cluster_idx].push(order[pos]);
    }
    clusters.retain(|c| !c.is_empty());
    for c in &mut clusters {
        c.sort_unstable();
    }
    // Canonical output order: by cluster mean, accumulated over
    // value-sorted members so the key is permutation-stable to the bit.
    let mut keyed: Vec<(Point, Vec<usize>)> = clusters
        .into_iter()
        .map(|c| {
            let mut values: Vec<Point> = c.iter().map(|&i| points[i]).collect();
            values.sort_by(cmp_points);
            let mut mean = [0.0f64; 3];
            for v in &values {
                for d in 0..3 {
                    mean[d] += v[d];
                }
            }
            for m in &mut mean {
                *m /= c.len() as f64;
            }
            (mean, c)
        })
        .collect();
    keyed.sort_by(|a, b| cmp_points(&a.0, &b.0));
    keyed.into_iter().map(|(_, c)| c).collect()
}

/// Single-point improvement sweeps (Hartigan-style) after Lloyd converges.
///
/// Moving point p from cluster A to B changes the objective by
/// nB/(nB+1) * |p - muB|^2 - nA/(nA-1) * |p - muA|^2, which can be negative
/// even at a Lloyd fixed point. Sweeps run in canonical point order and
/// apply the first improving move, so the result stays deterministic.
fn hartigan_refine(points: &[Point], assignments: &mut [usize], k: usize, max_sweeps: usize) {
    let n = points.len();
    let mut counts = vec![0usize; k];
    let mut sums = vec![[0.0f64; 3]; k];
    for (i, &a) in assignments.iter().enumerate() {
        counts[a] += 1;
        for d in 0..3 {
            sums[a][d] += points[i][d];
        }
    }
    let dist2_to_mean = |p: &Point, sum: &[f64; 3], count: usize| {
        let c = count as f64;
        let dx = p[0] - sum[0] / c;
        let dy = p[1] - sum[1] / c;
        let dz = p[2] - sum[2] / c;
        dx * dx + dy * dy + dz * dz
    };
    for _ in 0..max_sweeps.max(1) {
        let mut improved = false;
        for i in 0..n {
            let a = assignments[i];
            let p = &points[i];
            let removal_gain = if counts[a] > 1 {
                counts[a] as f64 / (counts[a] - 1) as f64 * dist2_to_mean(p, &sums[a], counts[a])
            } else {
                0.0 // singleton cluster: its removal frees no variance
            };
            let mut best_target = a;
            let mut best_delta = -1e-12;
            for b in 0..k {
                if b == a || counts[b] == 0 {
                    continue;
                }
                let add_cost =
                    counts[b] as f64 / (counts[b] + 1) as f64 * dist2_to_mean(p, &sums[b], counts[b]);
                let delta = add_cost - removal_gain;
                if delta < best_delta {
                    best_delta = delta;
                    best_target = b;
                }
            }
            if best_target != a {
                counts[a] -= 1;
                counts[best_target] += 1;
                for d in 0..3 {
                    sums[a][d] -= p[d];
                    sums[best_target][d] += p[d];
                }
                assignments[i] = best_target;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

fn objective_of(points: &[Point], assignments: &[usize], centers: usize) -> f64 {
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); centers];
    for (i, &a) in assignments.iter().enumerate() {
        groups[a].push(i);
    }
    within_cluster_ss(points, &groups)
}

/// One Lloyd run with k-means++ seeding; points must be in canonical order.
fn lloyd(points: &[Point], k: usize, seed: u64, max_iters: usize) -> (Vec<usize>, usize) {
    let n = points.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // k-means++: the first center is uniform, later ones are drawn with
    // probability proportional to squared distance from the chosen set.
    // Points identical to an existing center carry zero weight, so centers
    // are always distinct values.
    let mut centers: Vec<Point> = Vec::with_capacity(k);
    centers.push(points[rng.random_range(0..n)]);
    let mut d2: Vec<f64> = points.iter().map(|p| dist2(p, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        if total <= 0.0 {
            break;
        }
        let mut threshold = rng.random::<f64>() * total;
        let mut chosen = n - 1;
        for (i, &w) in d2.iter().enumerate() {
            threshold -= w;
            if threshold <= 0.0 {
                chosen = i;
                break;
            }
        }
        let c = points[chosen];
        for (i, p) in points.iter().enumerate() {
            let d = dist2(p, &c);
            if d < d2[i] {
                d2[i] = d;
            }
        }
        centers.push(c);
    }
    let k = centers.len();

    let mut assignments = vec![0usize; n];
    for _ in 0..max_iters.max(1) {
        // Assignment step; ties go to the lowest center index.
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let mut best = 0;
            let mut best_d = dist2(p, &centers[0]);
            for (c, center) in centers.iter().enumerate().skip(1) {
                let d = dist2(p, center);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            if assignments[i] != best {
                assignments[i] = best;
                changed = true;
            }
        }

        // Update step.
        let mut sums = vec![[0.0f64; 3]; k];
        let mut counts = vec![0usize; k];
        for (i, p) in points.iter().enumerate() {
            let a = assignments[i];
            counts[a] += 1;
            for d in 0..3 {
                sums[a][d] += p[d];
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                // Re-seed an emptied cluster at the point farthest from its
                // current center (first such point in canonical order).
                let far = (0..n)
                    .max_by(|&a, &b| {
                        dist2(&points[a], &centers[assignments[a]])
                            .total_cmp(&dist2(&points[b], &centers[assignments[b]]))
                    })
                    .expect("non-empty points");
                centers[c] = points[far];
                changed = true;
            } else {
                for d in 0..3 {
                    centers[c][d] = sums[c][d] / counts[c] as f64;
                }
            }
        }

        if !changed {
            break;
        }
    }
    (assignments, k)
}
