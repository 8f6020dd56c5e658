//! Naive reference implementations used as oracles by the integration
//! tests. Nothing here calls into the library's algorithms: relations are
//! plain sets of coordinate pairs and every axiom is checked literally.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use tsys::{Edge, Grid, TransferSystem, TsysDocument};

pub type V = (usize, usize);
pub type Rel = BTreeSet<(V, V)>;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture_doc(name: &str) -> TsysDocument {
    let path = fixture_path(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
    tsys::parse_tsys(&text).unwrap()
}

pub fn fixture(name: &str) -> TransferSystem {
    fixture_doc(name).to_system().unwrap()
}

pub fn vertices(r: usize, s: usize) -> Vec<V> {
    let mut out = Vec::new();
    for i in 0..=r {
        for j in 0..=s {
            out.push((i, j));
        }
    }
    out
}

pub fn le(a: V, b: V) -> bool {
    a.0 <= b.0 && a.1 <= b.1
}

pub fn meet(a: V, b: V) -> V {
    (a.0.min(b.0), a.1.min(b.1))
}

/// Strict comparable pairs in lexicographic order.
pub fn candidates(r: usize, s: usize) -> Vec<(V, V)> {
    let vs = vertices(r, s);
    let mut out = Vec::new();
    for &a in &vs {
        for &b in &vs {
            if a != b && le(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Adds the diagonal to a set of strict edges.
pub fn reflexive(r: usize, s: usize, strict: &Rel) -> Rel {
    let mut out = strict.clone();
    for v in vertices(r, s) {
        out.insert((v, v));
    }
    out
}

/// Literal check of the axioms on a reflexive relation.
pub fn is_transfer_system(r: usize, s: usize, rel: &Rel) -> bool {
    let vs = vertices(r, s);
    for &(a, b) in rel {
        if !le(a, b) {
            return false;
        }
        for &(c, d) in rel {
            if b == c && !rel.contains(&(a, d)) {
                return false;
            }
        }
        for &w in &vs {
            if !rel.contains(&(meet(a, w), meet(b, w))) {
                return false;
            }
        }
    }
    vs.iter().all(|&v| rel.contains(&(v, v)))
}

/// Every transfer system by filtering all subsets of the candidate edges.
pub fn naive_enumerate(r: usize, s: usize) -> Vec<Rel> {
    let cands = candidates(r, s);
    assert!(cands.len() <= 20, "naive enumeration is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << cands.len()) {
        let strict: Rel = cands
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let rel = reflexive(r, s, &strict);
        if is_transfer_system(r, s, &rel) {
            out.push(rel);
        }
    }
    out
}

/// Compatibility straight from the definition.
pub fn naive_compatible(r: usize, s: usize, t: &Rel, tp: &Rel) -> bool {
    if !t.is_subset(tp) {
        return false;
    }
    let vs = vertices(r, s);
    for &(b, a) in t {
        for &c in &vs {
            if le(c, a) && tp.contains(&(meet(b, c), b)) && !tp.contains(&(c, a)) {
                return false;
            }
        }
    }
    true
}

/// Reflexive relation of a library transfer system.
pub fn to_rel(t: &TransferSystem) -> Rel {
    let g = t.grid();
    let strict: Rel = t
        .edges()
        .into_iter()
        .map(|e| ((e.src.i, e.src.j), (e.dst.i, e.dst.j)))
        .collect();
    reflexive(g.r, g.s, &strict)
}

pub fn edges_of(list: &[(V, V)]) -> Vec<Edge> {
    list.iter().map(|&(a, b)| tsys::edge(a, b)).collect()
}

pub fn grid_of(t: &TransferSystem) -> Grid {
    t.grid()
}

/// Catalan numbers by the recurrence `C(n+1) = sum C(k) C(n-k)`.
pub fn catalan_rec(n: usize) -> u128 {
    let mut c = vec![1u128];
    for m in 0..n {
        let next = (0..=m).map(|k| c[k] * c[m - k]).sum();
        c.push(next);
    }
    c[n]
}

pub fn binom(n: u128, k: u128) -> u128 {
    let mut acc = 1u128;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// `C(3m+1, m) / (3m+1)`.
pub fn fuss31(m: u128) -> u128 {
    binom(3 * m + 1, m) / (3 * m + 1)
}
