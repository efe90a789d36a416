//! Faces of the associahedra `K_n` and cyclohedra `W_n`.
//!
//! A face of `K_n` is a set of pairwise nested-or-disjoint intervals of
//! `{1,…,n}`; a face of `W_n` is a set of nested-or-disjoint cyclic arcs of
//! `{0,…,n-1}` together with at most one full arc, which is recorded by its
//! starting index (the basepoint).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{domain, Error, Result};

/// Largest arity accepted by the enumerators.
pub const MAX_ARITY: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PolytopeKind {
    #[serde(rename = "K")]
    Associahedron,
    #[serde(rename = "W")]
    Cyclohedron,
}

impl PolytopeKind {
    pub fn letter(self) -> char {
        match self {
            PolytopeKind::Associahedron => 'K',
            PolytopeKind::Cyclohedron => 'W',
        }
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            PolytopeKind::Associahedron => n.saturating_sub(2),
            PolytopeKind::Cyclohedron => n.saturating_sub(1),
        }
    }

    /// Number of vertices of the polytope of arity `n`.
    pub fn vertex_count(self, n: usize) -> u128 {
        match self {
            PolytopeKind::Associahedron => catalan(n.saturating_sub(1)),
            PolytopeKind::Cyclohedron => binomial(2 * n as u64 - 2, n as u64 - 1),
        }
    }
}

impl std::str::FromStr for PolytopeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" | "k" | "associahedron" => Ok(PolytopeKind::Associahedron),
            "W" | "w" | "cyclohedron" => Ok(PolytopeKind::Cyclohedron),
            _ => Err(Error::Parse(format!(
                "unknown polytope kind '{s}' (expected K or W)"
            ))),
        }
    }
}

pub(crate) fn catalan(k: usize) -> u128 {
    binomial(2 * k as u64, k as u64) / (k as u128 + 1)
}

fn check_arity(n: usize) -> Result<()> {
    if n < 2 {
        return domain(format!("arity must be at least 2, got {n}"));
    }
    if n > MAX_ARITY {
        return domain(format!(
            "arity {n} exceeds the enumeration limit {MAX_ARITY}"
        ));
    }
    Ok(())
}

fn nested_or_disjoint(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)
}

/// Non-crossing bracketing of `n` symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bracketing {
    n: usize,
    /// Intervals `(a, b)`, 1-based and inclusive, in canonical order.
    brackets: Vec<(usize, usize)>,
}

impl Bracketing {
    pub fn new(n: usize, mut brackets: Vec<(usize, usize)>) -> Result<Self> {
        if n < 2 {
            return domain(format!("arity must be at least 2, got {n}"));
        }
        for &(a, b) in &brackets {
            if a < 1 || b > n || b < a || b - a + 1 < 2 || b - a + 1 > n - 1 {
                return domain(format!(
                    "bracket ({a},{b}) is not a proper interval of 1..{n}"
                ));
            }
        }
        sort_canonical(&mut brackets);
        if brackets.windows(2).any(|w| w[0] == w[1]) {
            return domain("duplicate bracket");
        }
        for (i, &(a, b)) in brackets.iter().enumerate() {
            for &(c, d) in &brackets[i + 1..] {
                let nested = (a <= c && d <= b) || (c <= a && b <= d);
                if !nested && !(b < c || d < a) {
                    return domain(format!("brackets ({a},{b}) and ({c},{d}) cross"));
                }
            }
        }
        if brackets.len() > n - 2 {
            return domain("too many brackets for the arity");
        }
        Ok(Bracketing { n, brackets })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn brackets(&self) -> &[(usize, usize)] {
        &self.brackets
    }

    pub fn dim(&self) -> usize {
        self.n - 2 - self.brackets.len()
    }
}

/// Lexicographic by left endpoint, then by length.
fn sort_canonical(v: &mut [(usize, usize)]) {
    v.sort_by_key(|&(a, b)| (a, b));
}

/// A proper cyclic arc `{start, start+1, …, start+len-1}` mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub start: usize,
    pub len: usize,
}

impl Arc {
    pub fn elements(&self, n: usize) -> BTreeSet<usize> {
        (0..self.len).map(|i| (self.start + i) % n).collect()
    }

    pub fn end(&self, n: usize) -> usize {
        (self.start + self.len - 1) % n
    }

    /// Whether the arc contains both `b-1` and `b`, i.e. crosses the cut
    /// in front of `b`.
    pub fn crosses_cut(&self, n: usize, b: usize) -> bool {
        let s = self.elements(n);
        s.contains(&b) && s.contains(&((b + n - 1) % n))
    }
}

/// Nested arc system on the cycle `{0,…,n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicBracketing {
    n: usize,
    basepoint: Option<usize>,
    arcs: Vec<Arc>,
}

impl CyclicBracketing {
    pub fn new(n: usize, mut arcs: Vec<Arc>, basepoint: Option<usize>) -> Result<Self> {
        if n < 2 {
            return domain(format!("arity must be at least 2, got {n}"));
        }
        if let Some(b) = basepoint {
            if b >= n {
                return domain(format!("basepoint {b} out of range 0..{n}"));
            }
        }
        for a in &arcs {
            if a.start >= n || a.len < 2 || a.len > n - 1 {
                return domain(format!(
                    "arc starting at {} of length {} is not a proper arc of W_{n}",
                    a.start, a.len
                ));
            }
        }
        arcs.sort();
        if arcs.windows(2).any(|w| w[0] == w[1]) {
            return domain("duplicate arc");
        }
        let sets: Vec<_> = arcs.iter().map(|a| a.elements(n)).collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if !nested_or_disjoint(&sets[i], &sets[j]) {
                    return domain("arcs cross");
                }
            }
            if let Some(b) = basepoint {
                if arcs[i].crosses_cut(n, b) {
                    return domain(format!("arc crosses the basepoint {b} of the full arc"));
                }
            }
        }
        let count = arcs.len() + usize::from(basepoint.is_some());
        if count > n - 1 {
            return domain("too many arcs for the arity");
        }
        Ok(CyclicBracketing { n, basepoint, arcs })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn dim(&self) -> usize {
        self.n - 1 - self.arcs.len() - usize::from(self.basepoint.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceBracketing {
    Linear(Bracketing),
    Cyclic(CyclicBracketing),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FaceJson", into = "FaceJson")]
pub struct FaceDescriptor {
    kind: PolytopeKind,
    bracketing: FaceBracketing,
    dim: usize,
}

impl FaceDescriptor {
    pub fn associahedron(b: Bracketing) -> Self {
        let dim = b.dim();
        FaceDescriptor {
            kind: PolytopeKind::Associahedron,
            bracketing: FaceBracketing::Linear(b),
            dim,
        }
    }

    pub fn cyclohedron(b: CyclicBracketing) -> Self {
        let dim = b.dim();
        FaceDescriptor {
            kind: PolytopeKind::Cyclohedron,
            bracketing: FaceBracketing::Cyclic(b),
            dim,
        }
    }

    pub fn top(kind: PolytopeKind, n: usize) -> Result<Self> {
        Ok(match kind {
            PolytopeKind::Associahedron => Self::associahedron(Bracketing::new(n, vec![])?),
            PolytopeKind::Cyclohedron => Self::cyclohedron(CyclicBracketing::new(n, vec![], None)?),
        })
    }

    pub fn kind(&self) -> PolytopeKind {
        self.kind
    }

    pub fn bracketing(&self) -> &FaceBracketing {
        &self.bracketing
    }

    pub fn arity(&self) -> usize {
        match &self.bracketing {
            FaceBracketing::Linear(b) => b.n,
            FaceBracketing::Cyclic(c) => c.n,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.kind.dim(self.arity()) - self.dim
    }
}

impl fmt::Display for FaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{} ", self.kind.letter(), self.arity())?;
        match &self.bracketing {
            FaceBracketing::Linear(b) => {
                if b.brackets.is_empty() {
                    write!(f, "top")?;
                }
                let parts: Vec<String> = b
                    .brackets
                    .iter()
                    .map(|&(a, c)| {
                        format!(
                            "({})",
                            (a..=c).map(|i| i.to_string()).collect::<Vec<_>>().join("")
                        )
                    })
                    .collect();
                write!(f, "{}", parts.join(""))?;
            }
            FaceBracketing::Cyclic(c) => {
                if c.arcs.is_empty() && c.basepoint.is_none() {
                    write!(f, "top")?;
                }
                if let Some(b) = c.basepoint {
                    write!(f, "[full@{b}]")?;
                }
                for a in &c.arcs {
                    let s: Vec<String> = (0..a.len)
                        .map(|i| ((a.start + i) % c.n).to_string())
                        .collect();
                    write!(f, "{{{}}}", s.join(","))?;
                }
            }
        }
        write!(f, " dim {}", self.dim)
    }
}

#[derive(Serialize, Deserialize)]
struct FaceJson {
    kind: PolytopeKind,
    n: usize,
    brackets: Vec<[usize; 2]>,
    basepoint: Option<usize>,
    dim: usize,
}

impl From<FaceDescriptor> for FaceJson {
    fn from(f: FaceDescriptor) -> Self {
        let n = f.arity();
        let (brackets, basepoint) = match &f.bracketing {
            FaceBracketing::Linear(b) => (b.brackets.iter().map(|&(a, c)| [a, c]).collect(), None),
            FaceBracketing::Cyclic(c) => (
                c.arcs.iter().map(|a| [a.start, a.end(n)]).collect(),
                c.basepoint,
            ),
        };
        FaceJson {
            kind: f.kind,
            n,
            brackets,
            basepoint,
            dim: f.dim,
        }
    }
}

impl TryFrom<FaceJson> for FaceDescriptor {
    type Error = Error;

    fn try_from(j: FaceJson) -> Result<Self> {
        let face = match j.kind {
            PolytopeKind::Associahedron => {
                if j.basepoint.is_some() {
                    return domain("faces of K_n carry no basepoint");
                }
                let br = j.brackets.iter().map(|&[a, b]| (a, b)).collect();
                FaceDescriptor::associahedron(Bracketing::new(j.n, br)?)
            }
            PolytopeKind::Cyclohedron => {
                let n = j.n;
                let mut arcs = Vec::new();
                for &[a, b] in &j.brackets {
                    if n == 0 || a >= n || b >= n {
                        return domain(format!("arc [{a},{b}] out of range for W_{n}"));
                    }
                    arcs.push(Arc {
                        start: a,
                        len: (b + n - a) % n + 1,
                    });
                }
                FaceDescriptor::cyclohedron(CyclicBracketing::new(n, arcs, j.basepoint)?)
            }
        };
        if face.dim != j.dim {
            return domain(format!(
                "declared dimension {} disagrees with the bracketing (dimension {})",
                j.dim, face.dim
            ));
        }
        Ok(face)
    }
}

/// All sets of brackets forming a subtree on the leaves `lo..=hi`, the
/// node's own interval excluded. Each child block is either one leaf or a
/// bracket carrying its own subtree.
fn linear_subtrees(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    // blocks must number at least two, so a single block spanning lo..=hi is excluded
    fn rec(
        pos: usize,
        lo: usize,
        hi: usize,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if pos > hi {
            out.push(acc.clone());
            return;
        }
        for end in pos..=hi {
            if pos == lo && end == hi {
                continue;
            }
            if end == pos {
                rec(end + 1, lo, hi, acc, out);
                continue;
            }
            for inner in linear_subtrees(pos, end) {
                let mark = acc.len();
                acc.push((pos, end));
                acc.extend(inner);
                rec(end + 1, lo, hi, acc, out);
                acc.truncate(mark);
            }
        }
    }
    rec(lo, lo, hi, &mut Vec::new(), &mut out);
    out
}

fn all_faces(kind: PolytopeKind, n: usize) -> Result<Vec<FaceDescriptor>> {
    check_arity(n)?;
    let mut faces = Vec::new();
    match kind {
        PolytopeKind::Associahedron => {
            for br in linear_subtrees(1, n) {
                faces.push(FaceDescriptor::associahedron(Bracketing::new(n, br)?));
            }
        }
        PolytopeKind::Cyclohedron => {
            // full arc at b: a linear tree on b, b+1, …, b+n-1
            for b in 0..n {
                for br in linear_subtrees(0, n - 1) {
                    let arcs = br
                        .iter()
                        .map(|&(x, y)| Arc {
                            start: (b + x) % n,
                            len: y - x + 1,
                        })
                        .collect();
                    faces.push(FaceDescriptor::cyclohedron(CyclicBracketing::new(
                        n,
                        arcs,
                        Some(b),
                    )?));
                }
            }
            // no full arc: disjoint maximal arcs, each with a linear subtree
            for maximal in disjoint_arc_families(n) {
                let mut families: Vec<Vec<Arc>> = vec![Vec::new()];
                for a in &maximal {
                    let mut next = Vec::new();
                    for inner in linear_subtrees(0, a.len - 1) {
                        for fam in &families {
                            let mut f = fam.clone();
                            f.push(*a);
                            f.extend(inner.iter().map(|&(x, y)| Arc {
                                start: (a.start + x) % n,
                                len: y - x + 1,
                            }));
                            next.push(f);
                        }
                    }
                    families = next;
                }
                for arcs in families {
                    faces.push(FaceDescriptor::cyclohedron(CyclicBracketing::new(
                        n, arcs, None,
                    )?));
                }
            }
        }
    }
    faces.sort();
    Ok(faces)
}

/// Families of pairwise disjoint proper arcs on the `n`-cycle.
fn disjoint_arc_families(n: usize) -> Vec<Vec<Arc>> {
    let mut arcs = Vec::new();
    for start in 0..n {
        for len in 2..n {
            arcs.push(Arc { start, len });
        }
    }
    let sets: Vec<_> = arcs.iter().map(|a| a.elements(n)).collect();
    let mut out = Vec::new();
    fn rec(
        i: usize,
        arcs: &[Arc],
        sets: &[BTreeSet<usize>],
        used: &mut BTreeSet<usize>,
        acc: &mut Vec<Arc>,
        out: &mut Vec<Vec<Arc>>,
    ) {
        if i == arcs.len() {
            out.push(acc.clone());
            return;
        }
        rec(i + 1, arcs, sets, used, acc, out);
        if sets[i].is_disjoint(used) {
            used.extend(&sets[i]);
            acc.push(arcs[i]);
            rec(i + 1, arcs, sets, used, acc, out);
            acc.pop();
            for x in &sets[i] {
                used.remove(x);
            }
        }
    }
    rec(
        0,
        &arcs,
        &sets,
        &mut BTreeSet::new(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Faces of the given codimension, in canonical order.
pub fn enumerate_faces(kind: PolytopeKind, n: usize, codim: usize) -> Result<Vec<FaceDescriptor>> {
    check_arity(n)?;
    let d = kind.dim(n);
    if codim > d {
        return domain(format!(
            "codimension {codim} exceeds dim {}_{n} = {d}",
            kind.letter()
        ));
    }
    Ok(all_faces(kind, n)?
        .into_iter()
        .filter(|f| f.dim == d - codim)
        .collect())
}

/// Number of faces in each dimension, starting with the vertices.
pub fn f_vector(kind: PolytopeKind, n: usize) -> Result<Vec<u64>> {
    let mut f = vec![0u64; kind.dim(n) + 1];
    for face in all_faces(kind, n)? {
        f[face.dim] += 1;
    }
    Ok(f)
}

/// Euler characteristic of the boundary sphere, computed from the faces.
pub fn euler_char_boundary(kind: PolytopeKind, n: usize) -> Result<i64> {
    check_arity(n)?;
    let d = kind.dim(n);
    if d == 0 {
        return domain(format!(
            "{}_{n} is a point and has empty boundary",
            kind.letter()
        ));
    }
    let f = f_vector(kind, n)?;
    Ok(f[..d]
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum())
}

/// One factor `K_r` or `W_r` of a product decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub kind: PolytopeKind,
    pub r: usize,
}

impl Factor {
    pub fn dim(&self) -> usize {
        self.kind.dim(self.r)
    }

    pub fn vertex_count(&self) -> u128 {
        self.kind.vertex_count(self.r)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind.letter(), self.r)
    }
}

/// Number of children of the node spanning `outer` elements whose maximal
/// sub-brackets have the given sizes.
fn children(outer: usize, maximal_sizes: impl Iterator<Item = usize>) -> usize {
    outer - maximal_sizes.map(|s| s - 1).sum::<usize>()
}

/// Product decomposition of a proper face: the root factor first, then one
/// factor per bracket in canonical order.
pub fn facet_factors(face: &FaceDescriptor) -> Result<Vec<Factor>> {
    if face.codim() == 0 {
        return domain("the top face has no facet decomposition");
    }
    let k = |r| Factor {
        kind: PolytopeKind::Associahedron,
        r,
    };
    let mut out = Vec::new();
    match &face.bracketing {
        FaceBracketing::Linear(b) => {
            let sets: Vec<BTreeSet<usize>> =
                b.brackets.iter().map(|&(x, y)| (x..=y).collect()).collect();
            let all: BTreeSet<usize> = (1..=b.n).collect();
            out.push(k(node_children(&all, &sets)));
            for s in &sets {
                out.push(k(node_children(s, &sets)));
            }
        }
        FaceBracketing::Cyclic(c) => {
            let sets: Vec<BTreeSet<usize>> = c.arcs.iter().map(|a| a.elements(c.n)).collect();
            let all: BTreeSet<usize> = (0..c.n).collect();
            let r = node_children(&all, &sets);
            match c.basepoint {
                Some(_) => out.push(k(r)),
                None => out.push(Factor {
                    kind: PolytopeKind::Cyclohedron,
                    r,
                }),
            }
            for s in &sets {
                out.push(k(node_children(s, &sets)));
            }
        }
    }
    Ok(out)
}

fn node_children(node: &BTreeSet<usize>, sets: &[BTreeSet<usize>]) -> usize {
    let inside: Vec<&BTreeSet<usize>> = sets
        .iter()
        .filter(|s| s.len() < node.len() && s.is_subset(node))
        .collect();
    let maximal = inside
        .iter()
        .filter(|s| !inside.iter().any(|t| t.len() > s.len() && s.is_subset(t)));
    children(node.len(), maximal.map(|s| s.len()))
}

/// The `n` facets of `W_n` isomorphic to `K_n`, one per basepoint.
pub fn cyclic_kn_copies(n: usize) -> Result<Vec<FaceDescriptor>> {
    if n < 2 {
        return domain(format!("arity must be at least 2, got {n}"));
    }
    (0..n)
        .map(|b| {
            Ok(FaceDescriptor::cyclohedron(CyclicBracketing::new(
                n,
                vec![],
                Some(b),
            )?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use PolytopeKind::*;

    #[test]
    fn small_f_vectors() {
        assert_eq!(f_vector(Associahedron, 2).unwrap(), vec![1]);
        assert_eq!(f_vector(Associahedron, 4).unwrap(), vec![5, 5, 1]);
        assert_eq!(f_vector(Cyclohedron, 2).unwrap(), vec![2, 1]);
        assert_eq!(f_vector(Cyclohedron, 3).unwrap(), vec![6, 6, 1]);
        assert_eq!(f_vector(Associahedron, 5).unwrap()[0], 14);
    }

    #[test]
    fn factors() {
        let f = FaceDescriptor::associahedron(Bracketing::new(5, vec![(2, 4)]).unwrap());
        assert_eq!(
            facet_factors(&f).unwrap(),
            vec![
                Factor {
                    kind: Associahedron,
                    r: 3
                };
                2
            ]
        );
        let w = FaceDescriptor::cyclohedron(
            CyclicBracketing::new(3, vec![Arc { start: 1, len: 2 }], None).unwrap(),
        );
        assert_eq!(
            facet_factors(&w).unwrap(),
            vec![
                Factor {
                    kind: Cyclohedron,
                    r: 2
                },
                Factor {
                    kind: Associahedron,
                    r: 2
                }
            ]
        );
        assert!(facet_factors(&FaceDescriptor::top(Associahedron, 4).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        for face in enumerate_faces(Cyclohedron, 4, 2).unwrap() {
            let s = serde_json::to_string(&face).unwrap();
            let back: FaceDescriptor = serde_json::from_str(&s).unwrap();
            assert_eq!(back, face);
        }
        let bad = r#"{"kind":"K","n":4,"brackets":[[1,2]],"basepoint":null,"dim":0}"#;
        assert!(serde_json::from_str::<FaceDescriptor>(bad).is_err());
    }
}
