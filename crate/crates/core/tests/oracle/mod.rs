//! Brute-force reference implementations used to cross-check the library.
//! Everything here works from raw edge lists; nothing calls the search code
//! it is checking.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Edges = Vec<(usize, usize)>;

pub fn all_pairs(n: usize) -> Edges {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Every labeled graph on `n` vertices, as edge lists.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Edges> {
    let pairs = all_pairs(n);
    (0u64..1 << pairs.len()).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Edges {
    all_pairs(n).into_iter().filter(|_| rng.random_bool(p)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size of a largest matching, by trying every way to treat the lowest free vertex.
pub fn brute_matching_number(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![0u64; n];
    for &(a, b) in edges {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    fn go(adj: &[u64], free: u64) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = go(adj, rest);
        let mut nb = adj[v] & rest;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            best = best.max(1 + go(adj, rest & !(1 << u)));
        }
        best
    }
    go(&adj, if n == 64 { u64::MAX } else { (1 << n) - 1 })
}

/// Sizes of the connected components of the graph restricted to `alive`.
pub fn component_sizes(n: usize, edges: &[(usize, usize)], alive: &[bool]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(a, b) in edges {
        if alive[a] && alive[b] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut size = vec![0usize; n];
    for v in (0..n).filter(|&v| alive[v]) {
        let r = find(&mut parent, v);
        size[r] += 1;
    }
    size.into_iter().filter(|&s| s > 0).collect()
}

/// Odd order and `o(G - S) <= |S|` for every nonempty `S`.
pub fn gallai_factor_critical(n: usize, edges: &[(usize, usize)]) -> bool {
    if n % 2 == 0 {
        return false;
    }
    (1u64..1 << n).all(|s| {
        let alive: Vec<bool> = (0..n).map(|v| s >> v & 1 == 0).collect();
        let odd = component_sizes(n, edges, &alive).iter().filter(|&&c| c % 2 == 1).count();
        odd <= s.count_ones() as usize
    })
}

/// Every `G - v` has a perfect matching, checked by brute-force matching.
pub fn definition_factor_critical(n: usize, edges: &[(usize, usize)]) -> bool {
    n % 2 == 1
        && (0..n).all(|v| {
            let rest: Edges = edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
            let relabel = |x: usize| if x > v { x - 1 } else { x };
            let rest: Edges = rest.into_iter().map(|(a, b)| (relabel(a), relabel(b))).collect();
            2 * brute_matching_number(n - 1, &rest) == n - 1
        })
}

pub fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(a, b) in edges {
        d[a] += 1;
        d[b] += 1;
    }
    d
}

/// All labeled graphs with exactly this degree per vertex, by filtering
/// edge subsets of the right size.
pub fn graphs_by_filter(seq: &[usize]) -> Vec<Edges> {
    let n = seq.len();
    let m: usize = seq.iter().sum::<usize>() / 2;
    let pairs = all_pairs(n);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(pairs: &[(usize, usize)], from: usize, m: usize, chosen: &mut Edges, seq: &[usize], out: &mut Vec<Edges>) {
        if chosen.len() == m {
            if degrees(seq.len(), chosen) == seq {
                out.push(chosen.clone());
            }
            return;
        }
        for i in from..pairs.len() {
            if pairs.len() - i < m - chosen.len() {
                break;
            }
            chosen.push(pairs[i]);
            go(pairs, i + 1, m, chosen, seq, out);
            chosen.pop();
        }
    }
    go(&pairs, 0, m, &mut chosen, seq, &mut out);
    out
}

/// Hamiltonian cycle by trying every ordering that starts at vertex 0.
pub fn brute_hamiltonian(n: usize, edges: &[(usize, usize)]) -> bool {
    let has = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let mut rest: Vec<usize> = (1..n).collect();
    fn permute(rest: &mut Vec<usize>, k: usize, check: &dyn Fn(&[usize]) -> bool) -> bool {
        if k == rest.len() {
            return check(rest);
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            if permute(rest, k + 1, check) {
                return true;
            }
            rest.swap(k, i);
        }
        false
    }
    let check = |order: &[usize]| {
        let mut cyc = vec![0];
        cyc.extend_from_slice(order);
        (0..n).all(|i| has(cyc[i], cyc[(i + 1) % n]))
    };
    n >= 3 && permute(&mut rest, 0, &check)
}

/// All triples of `[n]` in colex order.
pub fn all_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for c in 0..n {
        for b in 0..c {
            for a in 0..b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Colex rank computed by position in [`all_triples`].
pub fn triple_index(n: usize) -> std::collections::HashMap<[usize; 3], usize> {
    all_triples(n).into_iter().enumerate().map(|(i, t)| (t, i)).collect()
}

/// Largest star at `v` found by backtracking over disjoint link pairs.
pub fn brute_max_star(triples: &[[usize; 3]], v: usize) -> usize {
    let rays: Vec<(usize, usize)> = triples
        .iter()
        .filter(|t| t.contains(&v))
        .map(|t| {
            let o: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
            (o[0], o[1])
        })
        .collect();
    fn go(rays: &[(usize, usize)], from: usize, used: u64) -> usize {
        let mut best = 0;
        for i in from..rays.len() {
            let (a, b) = rays[i];
            if used & (1 << a | 1 << b) == 0 {
                best = best.max(1 + go(rays, i + 1, used | 1 << a | 1 << b));
            }
        }
        best
    }
    go(&rays, 0, 0)
}

pub fn brute_star_free(n: usize, triples: &[[usize; 3]], k: usize) -> bool {
    (0..n).all(|v| brute_max_star(triples, v) < k)
}

/// `f(n,k)` by trying every subset of triples (n <= 6).
pub fn brute_f(n: usize, k: usize) -> usize {
    let all = all_triples(n);
    assert!(all.len() <= 20);
    let mut best = 0;
    for mask in 0u32..1 << all.len() {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let chosen: Vec<[usize; 3]> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        if brute_star_free(n, &chosen, k) {
            best = size;
        }
    }
    best
}

/// Every copy of the `s`-star in `K_n^3`: sets of `s` triples through a
/// common core whose other pairs are disjoint, as sorted triple-index lists.
pub fn brute_star_copies(n: usize, s: usize) -> Vec<Vec<usize>> {
    let all = all_triples(n);
    let mut out = std::collections::BTreeSet::new();
    for core in 0..n {
        let through: Vec<usize> = (0..all.len()).filter(|&i| all[i].contains(&core)).collect();
        let mut chosen = Vec::new();
        fn go(
            all: &[[usize; 3]],
            through: &[usize],
            from: usize,
            s: usize,
            core: usize,
            chosen: &mut Vec<usize>,
            out: &mut std::collections::BTreeSet<Vec<usize>>,
        ) {
            if chosen.len() == s {
                let mut seen = vec![];
                let ok = chosen.iter().all(|&i| {
                    all[i].iter().filter(|&&x| x != core).all(|&x| {
                        let fresh = !seen.contains(&x);
                        seen.push(x);
                        fresh
                    })
                });
                if ok {
                    let mut c = chosen.clone();
                    c.sort_unstable();
                    out.insert(c);
                }
                return;
            }
            for j in from..through.len() {
                chosen.push(through[j]);
                go(all, through, j + 1, s, core, chosen, out);
                chosen.pop();
            }
        }
        go(&all, &through, 0, s, core, &mut chosen, &mut out);
    }
    out.into_iter().collect()
}

/// Some star copy carrying `s` distinct colors.
pub fn brute_has_rainbow_star(colors: &[usize], copies: &[Vec<usize>]) -> bool {
    copies.iter().any(|c| {
        let mut cols: Vec<usize> = c.iter().map(|&i| colors[i]).collect();
        cols.sort_unstable();
        cols.dedup();
        cols.len() == c.len()
    })
}

/// `(2s-1)!!` times `C(m, 2s)`: the number of `s`-matchings of `K_m`.
pub fn matchings_in_complete(m: usize, s: usize) -> usize {
    if 2 * s > m {
        return 0;
    }
    let mut c = 1usize;
    for i in 0..2 * s {
        c = c * (m - i) / (i + 1);
    }
    let double_fact: usize = (1..2 * s).step_by(2).product();
    c * double_fact
}

/// Random 3-graph thinned until `k`-star-free: while a star exists, delete
/// one of its rays at random.
pub fn random_star_free(rng: &mut ChaCha8Rng, n: usize, k: usize, density: f64) -> starbench::ThreeGraph {
    use starbench::star::find_k_star;
    let triples: Vec<starbench::Triple> = all_triples(n)
        .into_iter()
        .filter(|_| rng.random_bool(density))
        .map(|[a, b, c]| starbench::Triple::new(a, b, c).unwrap())
        .collect();
    let mut f = starbench::ThreeGraph::from_triples(n, triples).unwrap();
    while let Some(w) = find_k_star(&f, k) {
        let ray = w.rays[rng.random_range(0..w.rays.len())];
        f = f.remove_edges(&[ray]).unwrap();
    }
    f
}

pub fn raw_triples(f: &starbench::ThreeGraph) -> Vec<[usize; 3]> {
    f.edges().iter().map(|t| t.vertices()).collect()
}

/// All labeled graphs whose degree multiset equals `seq`'s, from the edge
/// subsets of the right size.
pub fn graphs_by_multiset(seq: &[usize]) -> Vec<Edges> {
    let n = seq.len();
    let m: usize = seq.iter().sum::<usize>() / 2;
    let mut want = seq.to_vec();
    want.sort_unstable();
    all_graphs(n)
        .filter(|e| e.len() == m)
        .filter(|e| {
            let mut d = degrees(n, e);
            d.sort_unstable();
            d == want
        })
        .collect()
}

/// `W_v` in sixths, from pair frequencies counted directly on the triples and
/// the rule table applied to the pairs in descending-frequency order.
pub fn vertex_weights_sixths(n: usize, triples: &[[usize; 3]], k: usize) -> Vec<i64> {
    let mut z = std::collections::HashMap::new();
    for t in triples {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *z.entry((a, b)).or_insert(0usize) += 1;
        }
    }
    // 0 = A, 1 = B, 2 = C
    let class = |p: (usize, usize)| {
        let f = z[&p];
        if f >= 2 * k - 1 {
            0
        } else if f >= k {
            1
        } else {
            2
        }
    };
    let mut w = vec![0i64; n];
    for t in triples {
        let mut pairs = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
        pairs.sort_by_key(|p| std::cmp::Reverse(z[p]));
        let cls = pairs.map(class);
        let share: [i64; 3] = if cls[2] != 2 || cls[0] != 0 {
            [2, 2, 2]
        } else if cls[1] == 2 {
            [6, 0, 0]
        } else {
            [3, 3, 0]
        };
        let mut sum = 0;
        for (p, s) in pairs.iter().zip(share) {
            let v = t.iter().copied().find(|&x| x != p.0 && x != p.1).unwrap();
            w[v] += s;
            sum += s;
        }
        assert_eq!(sum, 6);
    }
    w
}

/// Whether some core has `s` disjoint link pairs whose triples carry
/// distinct colors. `color` maps a sorted triple to its color.
pub fn rainbow_star_exists(n: usize, s: usize, color: &dyn Fn([usize; 3]) -> usize) -> bool {
    fn go(rays: &[((usize, usize), usize)], from: usize, need: usize, used: u64, cols: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        for i in from..rays.len() {
            let ((a, b), c) = rays[i];
            if used & (1 << a | 1 << b) != 0 || cols.contains(&c) {
                continue;
            }
            cols.push(c);
            if go(rays, i + 1, need - 1, used | 1 << a | 1 << b, cols) {
                return true;
            }
            cols.pop();
        }
        false
    }
    (0..n).any(|v| {
        let rays: Vec<((usize, usize), usize)> = all_pairs(n)
            .into_iter()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| {
                let mut t = [a, b, v];
                t.sort_unstable();
                ((a, b), color(t))
            })
            .collect();
        go(&rays, 0, s, 0, &mut Vec::new())
    })
}
