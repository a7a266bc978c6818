//! Minimum-cost perfect matching on a square cost matrix.

/// Exact assignment is used up to this size, greedy matching with swap repair above.
pub const EXACT_LIMIT: usize = 512;

/// Cost differences below this make two assignments indistinguishable.
pub const AMBIGUITY_TOL: f64 = 1e-14;

const REPAIR_PASSES: usize = 20;

/// `assignment[row] = column` minimising the total cost; `cost[row][col]`.
pub fn solve(cost: &[Vec<f64>]) -> Vec<usize> {
    if cost.len() <= EXACT_LIMIT {
        hungarian(cost)
    } else {
        let mut a = greedy(cost);
        repair(cost, &mut a);
        a
    }
}

pub fn total_cost(cost: &[Vec<f64>], assignment: &[usize]) -> f64 {
    assignment.iter().enumerate().map(|(r, &c)| cost[r][c]).sum()
}

/// Shortest augmenting path method with row and column potentials, `O(n^3)`.
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based internal indexing, column 0 is a sentinel.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r0 = owner[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let cur = cost[r0 - 1][col - 1] - u[r0] - v[col];
                if cur < minv[col] {
                    minv[col] = cur;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for col in 0..=n {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            owner[col0] = owner[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for col in 1..=n {
        assignment[owner[col] - 1] = col - 1;
    }
    assignment
}

/// Cheapest-edge-first matching.
pub fn greedy(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let mut edges: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect();
    edges.sort_by(|a, b| cost[a.0][a.1].total_cmp(&cost[b.0][b.1]));
    let mut row_of = vec![usize::MAX; n];
    let mut col_taken = vec![false; n];
    let mut left = n;
    for (r, c) in edges {
        if row_of[r] == usize::MAX && !col_taken[c] {
            row_of[r] = c;
            col_taken[c] = true;
            left -= 1;
            if left == 0 {
                break;
            }
        }
    }
    row_of
}

/// Pairwise swaps while any swap lowers the total cost.
pub fn repair(cost: &[Vec<f64>], assignment: &mut [usize]) {
    let n = assignment.len();
    for _ in 0..REPAIR_PASSES {
        let mut improved = false;
        for i in 0..n {
            for k in i + 1..n {
                let (ci, ck) = (assignment[i], assignment[k]);
                if cost[i][ck] + cost[k][ci] < cost[i][ci] + cost[k][ck] - AMBIGUITY_TOL {
                    assignment.swap(i, k);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}

/// Whether exchanging the partners of some pair changes the total cost by less than the tolerance.
pub fn is_ambiguous(cost: &[Vec<f64>], assignment: &[usize]) -> bool {
    let n = assignment.len();
    for i in 0..n {
        for k in i + 1..n {
            let (ci, ck) = (assignment[i], assignment[k]);
            let diff = cost[i][ck] + cost[k][ci] - cost[i][ci] - cost[k][ck];
            if diff.abs() < AMBIGUITY_TOL {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn hungarian_matches_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=6);
            let cost: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
            let best = permutations(n)
                .iter()
                .map(|p| total_cost(&cost, p))
                .fold(f64::INFINITY, f64::min);
            let a = hungarian(&cost);
            let mut seen = a.clone();
            seen.sort();
            assert_eq!(seen, (0..n).collect::<Vec<_>>());
            assert!((total_cost(&cost, &a) - best).abs() < 1e-12);
        }
    }

    #[test]
    fn greedy_with_repair_finds_easy_optimum() {
        // points on a line matched to slightly perturbed copies
        let n = 40;
        let cost: Vec<Vec<f64>> = (0..n)
            .map(|r| (0..n).map(|c| (r as f64 - (c as f64 + 0.1)).abs()).collect())
            .collect();
        let mut a = greedy(&cost);
        repair(&cost, &mut a);
        assert_eq!(a, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn ties_are_ambiguous() {
        let cost = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert!(is_ambiguous(&cost, &hungarian(&cost)));
        let cost = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(!is_ambiguous(&cost, &hungarian(&cost)));
    }
}
