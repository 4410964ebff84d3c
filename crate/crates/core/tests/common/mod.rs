//! Reference implementations that do not share code paths with the library:
//! brute-force canonical keys, Pólya class counts, a fraction-free
//! determinant, backtracking isomorphism and seeded random graphs.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cospec::{CharPoly, Graph};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Index of the pair `u < v` in the column-major upper triangle.
pub fn pair_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    v * (v - 1) / 2 + u
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// Edge mask of `g` over [`pairs`].
pub fn edge_mask(g: &Graph) -> u64 {
    g.edges().fold(0, |acc, (u, v)| acc | 1 << pair_index(u, v))
}

/// For each permutation, where each pair index goes.
pub fn pair_maps(n: usize) -> Vec<Vec<usize>> {
    let ps = pairs(n);
    permutations(n).into_iter().map(|p| ps.iter().map(|&(u, v)| pair_index(p[u], p[v])).collect()).collect()
}

/// Smallest image of an edge mask under every vertex permutation.
pub fn brute_key(mask: u64, maps: &[Vec<usize>]) -> u64 {
    maps.iter()
        .map(|m| {
            let mut out = 0u64;
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                out |= 1 << m[i];
                bits &= bits - 1;
            }
            out
        })
        .min()
        .unwrap()
}

/// Classes per edge count on `n` vertices, by brute force over every edge
/// subset. Feasible for `n <= 6`.
pub fn brute_class_counts(n: usize) -> Vec<u64> {
    let maps = pair_maps(n);
    let np = n * n.saturating_sub(1) / 2;
    let mut keys: Vec<std::collections::HashSet<u64>> = vec![Default::default(); np + 1];
    for mask in 0u64..(1 << np) {
        keys[mask.count_ones() as usize].insert(brute_key(mask, &maps));
    }
    keys.iter().map(|s| s.len() as u64).collect()
}

/// Pólya/Burnside count of graphs on `n` vertices by edge count: the average
/// over all vertex permutations of the number of fixed edge sets.
pub fn polya_counts(n: usize) -> Vec<u64> {
    let np = n * n.saturating_sub(1) / 2;
    let mut total = vec![0u128; np + 1];
    let mut perms = 0u128;
    for m in pair_maps(n) {
        perms += 1;
        let mut seen = vec![false; np];
        let mut poly = vec![0u128; np + 1];
        poly[0] = 1;
        for start in 0..np {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = m[i];
                len += 1;
            }
            for d in (len..=np).rev() {
                poly[d] += poly[d - len];
            }
        }
        for (t, p) in total.iter_mut().zip(poly) {
            *t += p;
        }
    }
    total
        .into_iter()
        .map(|t| {
            assert_eq!(t % perms, 0);
            (t / perms) as u64
        })
        .collect()
}

/// Builds a graph from an edge mask over [`pairs`].
pub fn from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Bareiss fraction-free determinant.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(x I - A)` at an integer point.
pub fn char_det_at(g: &Graph, x: i64) -> BigInt {
    let n = g.n_vertices();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(x)
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    det(m)
}

/// Checks a polynomial of degree `n` against `det(xI - A)` at `n + 1`
/// points, which determines it.
pub fn agrees_with_determinant(g: &Graph, p: &CharPoly) -> bool {
    let n = g.n_vertices();
    p.degree() == n && (0..=n as i64).map(|k| k - n as i64 / 2).all(|k| p.eval(&BigInt::from(k)) == char_det_at(g, k))
}

/// Backtracking isomorphism test with degree pruning.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n_vertices();
    if n != b.n_vertices() || a.edge_count() != b.edge_count() {
        return false;
    }
    if a.degree_sequence().sorted_desc() != b.degree_sequence().sorted_desc() {
        return false;
    }
    fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == a.n_vertices() {
            return true;
        }
        for w in 0..b.n_vertices() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            if (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w)) {
                used[w] = true;
                map.push(w);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    extend(a, b, &mut Vec::with_capacity(n), &mut vec![false; n])
}

/// `G(n, p)` from a seeded generator.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected graphs on `lo..=hi` vertices, rejection-sampled.
pub fn random_connected(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = r.gen_range(lo..=hi);
        let p = r.gen_range(0.25..0.9);
        let g = random_graph(&mut r, n, p);
        if g.is_connected() == Ok(true) {
            out.push(g);
        }
    }
    out
}

/// Groups graphs by `(edges, sorted degrees)`; isomorphic graphs always
/// share a bucket.
pub fn buckets(graphs: &[Graph]) -> BTreeMap<(usize, Vec<usize>), Vec<&Graph>> {
    let mut map: BTreeMap<_, Vec<&Graph>> = BTreeMap::new();
    for g in graphs {
        map.entry((g.edge_count(), g.degree_sequence().sorted_desc())).or_default().push(g);
    }
    map
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|k| {
            partitions(n - k, k).into_iter().map(move |mut p| {
                p.insert(0, k);
                p
            })
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// As [`polya_counts`], summing over cycle types instead of permutations, so
/// it reaches `n = 11`.
pub fn polya_counts_by_cycle_type(n: usize) -> Vec<u64> {
    let np = n * n.saturating_sub(1) / 2;
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut total = vec![0u128; np + 1];
    for p in partitions(n, n) {
        // size of the conjugacy class: n! / prod(k^m_k m_k!)
        let mut z = 1u128;
        let mut i = 0;
        while i < p.len() {
            let k = p[i];
            let mult = p[i..].iter().take_while(|&&x| x == k).count();
            z *= (k as u128).pow(mult as u32) * fact(mult);
            i += mult;
        }
        let mut cycles = Vec::new();
        for (i, &a) in p.iter().enumerate() {
            if a % 2 == 1 {
                cycles.extend(std::iter::repeat_n(a, (a - 1) / 2));
            } else {
                cycles.extend(std::iter::repeat_n(a, (a - 2) / 2));
                cycles.push(a / 2);
            }
            for &b in &p[i + 1..] {
                let g = gcd(a, b);
                cycles.extend(std::iter::repeat_n(a * b / g, g));
            }
        }
        let mut poly = vec![0u128; np + 1];
        poly[0] = 1;
        for len in cycles {
            for d in (len..=np).rev() {
                poly[d] += poly[d - len];
            }
        }
        let weight = fact(n) / z;
        for (t, c) in total.iter_mut().zip(poly) {
            *t += weight * c;
        }
    }
    total
        .into_iter()
        .map(|t| {
            assert_eq!(t % fact(n), 0);
            (t / fact(n)) as u64
        })
        .collect()
}
