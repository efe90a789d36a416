//! Brute-force face counts for the associahedra and cyclohedra.

use std::collections::{BTreeSet, HashMap};

/// Planar trees with `leaves` leaves and `nodes` internal nodes, every
/// internal node having at least two children.
pub fn planar_trees(leaves: usize, nodes: usize, memo: &mut HashMap<(usize, usize), u64>) -> u64 {
    if leaves == 1 {
        return u64::from(nodes == 0);
    }
    if nodes == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&(leaves, nodes)) {
        return v;
    }
    // forests: sequences of >= 2 trees with the given totals
    let mut forests: HashMap<(usize, usize, usize), u64> = HashMap::new();
    forests.insert((0, 0, 0), 1);
    let mut total = 0;
    for len in 1..=leaves {
        let prev: Vec<_> = forests
            .iter()
            .filter(|(k, _)| k.0 == len - 1)
            .map(|(k, v)| (*k, *v))
            .collect();
        for ((_, l0, m0), c0) in prev {
            for l in 1..=leaves - l0 {
                for m in 0..=(nodes - 1 - m0.min(nodes - 1)) {
                    if l0 + l > leaves || m0 + m > nodes - 1 {
                        continue;
                    }
                    let t = planar_trees(l, m, memo);
                    if t > 0 {
                        *forests.entry((len, l0 + l, m0 + m)).or_default() += c0 * t;
                    }
                }
            }
        }
        if len >= 2 {
            total += forests.get(&(len, leaves, nodes - 1)).copied().unwrap_or(0);
        }
    }
    memo.insert((leaves, nodes), total);
    total
}

pub fn k_oracle(n: usize) -> Vec<u64> {
    let mut memo = HashMap::new();
    let d = n - 2;
    (0..=d)
        .map(|dim| planar_trees(n, n - 1 - dim, &mut memo))
        .collect()
}

enum Piece {
    Proper(BTreeSet<usize>),
    Full(usize),
}

fn compatible(n: usize, a: &Piece, b: &Piece) -> bool {
    match (a, b) {
        (Piece::Proper(s), Piece::Proper(t)) => {
            s.is_subset(t) || t.is_subset(s) || s.is_disjoint(t)
        }
        (Piece::Proper(s), Piece::Full(p)) | (Piece::Full(p), Piece::Proper(s)) => {
            !(s.contains(p) && s.contains(&((p + n - 1) % n)))
        }
        _ => false,
    }
}

fn w_pieces(n: usize) -> Vec<Piece> {
    let mut seen = BTreeSet::new();
    let mut pieces = Vec::new();
    for start in 0..n {
        for len in 2..n {
            let s: BTreeSet<usize> = (0..len).map(|i| (start + i) % n).collect();
            if seen.insert(s.clone()) {
                pieces.push(Piece::Proper(s));
            }
        }
        pieces.push(Piece::Full(start));
    }
    pieces
}

pub fn w_oracle(n: usize) -> Vec<u64> {
    let pieces = w_pieces(n);
    let d = n - 1;
    let mut f = vec![0u64; d + 1];
    fn rec(i: usize, n: usize, pieces: &[Piece], clique: &mut Vec<usize>, f: &mut [u64], d: usize) {
        if i == pieces.len() {
            f[d - clique.len()] += 1;
            return;
        }
        rec(i + 1, n, pieces, clique, f, d);
        if clique.len() < d
            && clique
                .iter()
                .all(|&j| compatible(n, &pieces[j], &pieces[i]))
        {
            clique.push(i);
            rec(i + 1, n, pieces, clique, f, d);
            clique.pop();
        }
    }
    rec(0, n, &pieces, &mut Vec::new(), &mut f, d);
    f
}

pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
