//! Independent oracles used by the integration suites. Everything here
//! recomputes values through routes disjoint from the library's own
//! implementation paths: exact characteristic polynomials with Sturm-chain
//! root isolation for eigenvalues, blind labeled enumeration for
//! isomorphism classes, permutation search for isomorphism, and Prüfer
//! sequences for trees.

#![allow(dead_code)]

use std::collections::HashSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

use specrad_core::graph::{CanonicalForm, Graph};

/// Coefficients of the characteristic polynomial of the adjacency matrix,
/// exactly, index = degree. Faddeev-LeVerrier over i128; every division is
/// exact for integer matrices.
pub fn char_poly(g: &Graph) -> Vec<i128> {
    let n = g.order();
    let a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(g.has_edge(i, j) && i != j)).collect())
        .collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    if n == 0 {
        return coeffs;
    }
    let mut m = a.clone();
    let trace = |m: &Vec<Vec<i128>>| (0..n).map(|i| m[i][i]).sum::<i128>();
    coeffs[n - 1] = -trace(&m);
    for k in 2..=n {
        // m = a * (m + c_{n-k+1} I)
        let mut shifted = m.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += coeffs[n - k + 1];
        }
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i128;
                for (l, row) in shifted.iter().enumerate() {
                    acc += a[i][l] * row[j];
                }
                next[i][j] = acc;
            }
        }
        m = next;
        coeffs[n - k] = -trace(&m) / k as i128;
    }
    coeffs
}

type Poly = Vec<BigRational>;

fn poly_from_ints(coeffs: &[i128]) -> Poly {
    coeffs
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect()
}

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn poly_eval(p: &Poly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let db = b.len() - 1;
    debug_assert!(db >= 1, "divisor must be non-constant");
    let mut r = a.clone();
    loop {
        poly_trim(&mut r);
        let dr = r.len() - 1;
        if dr < db || (r.len() == 1 && r[0].is_zero()) {
            return r;
        }
        let factor = &r[dr] / &b[db];
        for i in 0..=db {
            let sub = &factor * &b[i];
            r[dr - db + i] -= sub;
        }
        r.pop(); // leading term is now exactly zero
    }
}

fn sturm_chain(p: Poly) -> Vec<Poly> {
    let mut chain = vec![p];
    let mut d = poly_derivative(&chain[0]);
    poly_trim(&mut d);
    if d.len() == 1 && d[0].is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let k = chain.len();
        if chain[k - 1].len() == 1 {
            break; // reached a constant
        }
        let mut rem = poly_rem(&chain[k - 2], &chain[k - 1]);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
        for c in rem.iter_mut() {
            *c = -c.clone();
        }
        chain.push(rem);
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &BigRational) -> usize {
    let mut variations = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = poly_eval(p, x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                variations += 1;
            }
        }
        last = Some(s);
    }
    variations
}

/// Distinct roots of the chain's polynomial in the half-open interval
/// `(a, b]`.
fn roots_in(chain: &[Poly], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Largest adjacency eigenvalue by characteristic-polynomial root
/// bracketing: Sturm counts isolate the top root, bisection narrows it to
/// about 1e-12. Completely independent of the power-iteration path.
pub fn mu_charpoly_oracle(g: &Graph) -> f64 {
    let n = g.order();
    let p = poly_from_ints(&char_poly(g));
    let chain = sturm_chain(p);
    let hi_bound = BigRational::from_integer(BigInt::from(n as i64 + 1));
    let mut lo = -(n as f64) - 1.0;
    let mut hi = n as f64 + 1.0;
    for _ in 0..70 {
        let mid = 0.5 * (lo + hi);
        let mid_r = BigRational::from_float(mid).expect("finite");
        // Landing exactly on a root (where sign counting degenerates, since
        // chain entries can share it) still certifies largest root >= mid.
        if poly_eval(&chain[0], &mid_r).is_zero()
            || roots_in(&chain, &mid_r, &hi_bound) >= 1
        {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every isomorphism class on `n` vertices, by blind labeled enumeration
/// of all edge masks plus canonical-form dedup. Tractable for `n <= 6`.
pub fn labeled_class_forms(n: usize) -> HashSet<CanonicalForm> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut forms = HashSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| (mask >> b) & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        forms.insert(g.canonical_form().unwrap());
    }
    forms
}

/// Isomorphism by explicit permutation search over all `n!` relabelings.
pub fn isomorphic_by_permutation(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if b.order() != n {
        return false;
    }
    if a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    permute_search(a, b, &mut perm, 0)
}

fn permute_search(a: &Graph, b: &Graph, perm: &mut Vec<usize>, pos: usize) -> bool {
    let n = a.order();
    if pos == n {
        for u in 0..n {
            for v in (u + 1)..n {
                if a.has_edge(u, v) != b.has_edge(perm[u], perm[v]) {
                    return false;
                }
            }
        }
        return true;
    }
    for i in pos..n {
        perm.swap(pos, i);
        // Partial consistency against already-placed vertices.
        let consistent = (0..pos).all(|u| a.has_edge(u, pos) == b.has_edge(perm[u], perm[pos]));
        if consistent && permute_search(a, b, perm, pos + 1) {
            perm.swap(pos, i);
            return true;
        }
        perm.swap(pos, i);
    }
    false
}

/// Decodes a Prüfer sequence into its labeled tree.
pub fn tree_from_prufer(seq: &[usize], t: usize) -> Graph {
    assert!(t >= 2);
    let mut degree = vec![1usize; t];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(t - 1);
    let mut used = vec![false; t];
    for &v in seq {
        let leaf = (0..t).find(|&u| degree[u] == 1 && !used[u]).unwrap();
        used[leaf] = true;
        degree[leaf] -= 1;
        degree[v] -= 1;
        edges.push((leaf, v));
    }
    let rest: Vec<usize> = (0..t).filter(|&u| degree[u] == 1 && !used[u]).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(t, &edges).unwrap()
}

/// Every isomorphism class of trees on `t` vertices via Prüfer sequences.
/// Tractable for `t <= 8`.
pub fn prufer_tree_forms(t: usize) -> HashSet<CanonicalForm> {
    let mut forms = HashSet::new();
    if t == 1 {
        forms.insert(Graph::edgeless(1).unwrap().canonical_form().unwrap());
        return forms;
    }
    let len = t - 2;
    let total = (t as u64).pow(len as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push((c % t as u64) as usize);
            c /= t as u64;
        }
        forms.insert(tree_from_prufer(&seq, t).canonical_form().unwrap());
    }
    forms
}

/// Seeded random graph for randomized suites.
pub fn random_graph(rng: &mut impl rand::Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Seeded random connected graph: a random spanning tree plus random
/// extra edges.
pub fn random_connected_graph(rng: &mut impl rand::Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}
