//! Root systems of types A to G: Cartan data, coordinates, Weyl group words and
//! connected subsets of the Dynkin diagram.
//!
//! Vertices are numbered `1..=n` in Bourbaki order. Internally matrices are
//! indexed from 0. The Cartan convention is `cartan[i][j] = (α_i, α_j^∨)`, so
//! that `α_i = Σ_j cartan[i][j] ϖ_j`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::linalg::{det_int, invert, to_rational};
use crate::{factorial, q, qi, Error, Result, Q};

/// Default bound on the Weyl group order for explicit enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Dynkin type letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn as_char(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => TypeLabel::A,
            'B' => TypeLabel::B,
            'C' => TypeLabel::C,
            'D' => TypeLabel::D,
            'E' => TypeLabel::E,
            'F' => TypeLabel::F,
            'G' => TypeLabel::G,
            _ => return None,
        })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A type letter together with a rank, parsed from strings such as `"E6"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub label: TypeLabel,
    pub rank: usize,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let label = chars
            .next()
            .and_then(TypeLabel::from_char)
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        validate_rank(label, rank)?;
        Ok(CartanType { label, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.rank)
    }
}

/// Checks that `(label, rank)` names an irreducible ambient root system.
///
/// Type D is accepted from rank 4 on; D2 and D3 are isomorphic to A1×A1 and A3.
pub fn validate_rank(label: TypeLabel, rank: usize) -> Result<()> {
    let ok = match label {
        TypeLabel::A | TypeLabel::B | TypeLabel::C => (1..=64).contains(&rank),
        TypeLabel::D => (4..=64).contains(&rank),
        TypeLabel::E => (6..=8).contains(&rank),
        TypeLabel::F => rank == 4,
        TypeLabel::G => rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidRank {
            label: label.as_char(),
            rank,
        })
    }
}

/// Cartan matrix of a type read off the Dynkin diagram, with 0-based indices.
///
/// Accepts D from rank 2 so that sub-diagrams can be described uniformly.
pub fn standard_cartan(label: TypeLabel, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::InvalidRank {
        label: label.as_char(),
        rank,
    };
    let n = rank;
    match label {
        TypeLabel::D if n < 2 => return Err(bad()),
        TypeLabel::D => {}
        _ => validate_rank(label, rank)?,
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let simple = |c: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        c[a][b] = -1;
        c[b][a] = -1;
    };
    match label {
        TypeLabel::A => (0..n.saturating_sub(1)).for_each(|k| simple(&mut c, k, k + 1)),
        TypeLabel::B | TypeLabel::C => {
            (0..n.saturating_sub(2)).for_each(|k| simple(&mut c, k, k + 1));
            if n >= 2 {
                let (long_to_short, short_to_long) = if label == TypeLabel::B {
                    ((n - 2, n - 1), (n - 1, n - 2))
                } else {
                    ((n - 1, n - 2), (n - 2, n - 1))
                };
                c[long_to_short.0][long_to_short.1] = -2;
                c[short_to_long.0][short_to_long.1] = -1;
            }
        }
        TypeLabel::D => {
            if n >= 3 {
                (0..n - 3).for_each(|k| simple(&mut c, k, k + 1));
                simple(&mut c, n - 3, n - 2);
                simple(&mut c, n - 3, n - 1);
            }
        }
        TypeLabel::E => {
            let mut edges = vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
            (7..=n).for_each(|k| edges.push((k - 1, k)));
            for (a, b) in edges {
                simple(&mut c, a - 1, b - 1);
            }
        }
        TypeLabel::F => {
            simple(&mut c, 0, 1);
            c[1][2] = -2;
            c[2][1] = -1;
            simple(&mut c, 2, 3);
        }
        TypeLabel::G => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    Ok(c)
}

/// Closed-form Weyl group order (product of the degrees).
pub fn weyl_order_formula(label: TypeLabel, rank: usize) -> BigInt {
    let n = rank;
    match label {
        TypeLabel::A => factorial(n + 1),
        TypeLabel::B | TypeLabel::C => (BigInt::one() << n) * factorial(n),
        TypeLabel::D => (BigInt::one() << (n - 1)) * factorial(n),
        TypeLabel::E => BigInt::from(match n {
            6 => 51_840u64,
            7 => 2_903_040,
            _ => 696_729_600,
        }),
        TypeLabel::F => BigInt::from(1152),
        TypeLabel::G => BigInt::from(12),
    }
}

/// Simple roots in an orthonormal basis, with the ambient dimension.
fn orthonormal_simple_roots(label: TypeLabel, n: usize) -> (Vec<Vec<Q>>, usize) {
    let unit = |dim: usize, k: usize| -> Vec<Q> {
        (0..dim)
            .map(|j| if j == k { qi(1) } else { qi(0) })
            .collect()
    };
    let diff = |dim: usize, a: usize, b: usize| -> Vec<Q> {
        (0..dim)
            .map(|j| {
                if j == a {
                    qi(1)
                } else if j == b {
                    qi(-1)
                } else {
                    qi(0)
                }
            })
            .collect()
    };
    match label {
        TypeLabel::A => ((0..n).map(|i| diff(n + 1, i, i + 1)).collect(), n + 1),
        TypeLabel::B | TypeLabel::C | TypeLabel::D => {
            let mut roots: Vec<Vec<Q>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let last = match label {
                TypeLabel::B => unit(n, n - 1),
                TypeLabel::C => unit(n, n - 1).into_iter().map(|x| x * qi(2)).collect(),
                _ => (0..n)
                    .map(|j| if j + 2 >= n { qi(1) } else { qi(0) })
                    .collect(),
            };
            roots.push(last);
            (roots, n)
        }
        TypeLabel::E => {
            let mut roots = vec![
                (0..8)
                    .map(|j| if j == 0 || j == 7 { q(1, 2) } else { q(-1, 2) })
                    .collect(),
                (0..8).map(|j| if j < 2 { qi(1) } else { qi(0) }).collect(),
            ];
            for k in 3..=n {
                roots.push(diff(8, k - 2, k - 3));
            }
            (roots, 8)
        }
        TypeLabel::F => (
            vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![q(1, 2), q(-1, 2), q(-1, 2), q(-1, 2)],
            ],
            4,
        ),
        TypeLabel::G => (
            vec![vec![qi(1), qi(-1), qi(0)], vec![qi(-2), qi(1), qi(1)]],
            3,
        ),
    }
}

fn dot(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// Subset of Dynkin vertices as a bitmask; vertex `v` is bit `v - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub fn empty() -> Self {
        SubsetMask(0)
    }

    /// All vertices `1..=n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=64).contains(&v), "vertex {v} out of range");
        SubsetMask(1u64 << (v - 1))
    }

    pub fn from_vertices(vs: &[usize]) -> Self {
        vs.iter().fold(SubsetMask::empty(), |m, &v| {
            m.union(SubsetMask::singleton(v))
        })
    }

    /// Vertices `a..=b`.
    pub fn interval(a: usize, b: usize) -> Self {
        SubsetMask::from_vertices(&(a..=b).collect::<Vec<_>>())
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=64).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(self, v: usize) -> Self {
        self.union(SubsetMask::singleton(v))
    }

    pub fn remove(self, v: usize) -> Self {
        SubsetMask(self.0 & !SubsetMask::singleton(v).0)
    }

    pub fn union(self, o: Self) -> Self {
        SubsetMask(self.0 | o.0)
    }

    pub fn intersect(self, o: Self) -> Self {
        SubsetMask(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        SubsetMask(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min_vertex(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vs.join(","))
    }
}

/// A word in the simple reflections; letters are vertex numbers `1..=n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Matrix of the element on weight coordinates: column `j` is `w(ϖ_j)`.
    pub fn weight_matrix(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        let n = rs.rank;
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let mut lam = vec![0i64; n];
            lam[j] = 1;
            let img = rs.apply_word_weight(&self.letters, &lam);
            for (i, x) in img.into_iter().enumerate() {
                m[i][j] = x;
            }
        }
        m
    }

    /// Image of an ambient vector, applying the letters right to left.
    pub fn act_ambient(&self, rs: &RootSystem, x: &[Q]) -> Vec<Q> {
        let mut v = x.to_vec();
        for &b in self.letters.iter().rev() {
            v = rs.reflect_ambient(&v, b - 1);
        }
        v
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&l| l < 10) {
            let s: String = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{s}")
        } else {
            let s: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

/// An irreducible root system with exact coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// `cartan[i][j] = (α_i, α_j^∨)`, 0-based.
    pub cartan: Vec<Vec<i64>>,
    /// Simple roots in the orthonormal ambient basis.
    pub simple_roots: Vec<Vec<Q>>,
    /// Fundamental weights in the orthonormal ambient basis.
    pub fund_weights: Vec<Vec<Q>>,
    pub ambient_dim: usize,
    /// Positive roots in simple-root coordinates, ordered by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    adjacency: Vec<u64>,
}

/// Builds the root system of the given type and rank.
pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    validate_rank(label, rank)?;
    let (simple_roots, ambient_dim) = orthonormal_simple_roots(label, rank);
    let n = rank;
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = qi(2) * dot(&simple_roots[i], &simple_roots[j])
                / dot(&simple_roots[j], &simple_roots[j]);
            if !v.is_integer() {
                return Err(Error::Internal(format!(
                    "non-integral Cartan entry at ({i},{j})"
                )));
            }
            cartan[i][j] = i64::try_from(v.to_integer())
                .map_err(|_| Error::Internal("Cartan entry overflow".into()))?;
        }
    }
    let inv = invert(&to_rational(&cartan))
        .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
    let fund_weights: Vec<Vec<Q>> = (0..n)
        .map(|k| {
            (0..ambient_dim)
                .map(|c| (0..n).fold(Q::zero(), |acc, i| acc + &inv[k][i] * &simple_roots[i][c]))
                .collect()
        })
        .collect();
    let adjacency = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && cartan[i][j] != 0)
                .fold(0u64, |m, j| m | 1u64 << j)
        })
        .collect();
    let mut rs = RootSystem {
        type_label: label,
        rank,
        cartan,
        simple_roots,
        fund_weights,
        ambient_dim,
        positive_roots: Vec::new(),
        adjacency,
    };
    rs.positive_roots = rs.compute_positive_roots();
    Ok(rs)
}

impl RootSystem {
    pub fn cartan_type(&self) -> CartanType {
        CartanType {
            label: self.type_label,
            rank: self.rank,
        }
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.rank)
    }

    /// Standard inner product of two ambient vectors.
    pub fn inner(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, y)
    }

    /// Reflection `s_i` on an ambient vector, `i` 0-based.
    pub fn reflect_ambient(&self, x: &[Q], i: usize) -> Vec<Q> {
        let a = &self.simple_roots[i];
        let c = qi(2) * dot(x, a) / dot(a, a);
        x.iter().zip(a).map(|(xv, av)| xv - &c * av).collect()
    }

    /// Reflection `s_i` in weight coordinates, `i` 0-based.
    pub fn reflect_weight(&self, lam: &[i64], i: usize) -> Vec<i64> {
        let li = lam[i];
        lam.iter()
            .zip(&self.cartan[i])
            .map(|(&l, &c)| l - li * c)
            .collect()
    }

    /// Reflection `s_i` in simple-root coordinates, `i` 0-based.
    pub fn reflect_root(&self, beta: &[i64], i: usize) -> Vec<i64> {
        let pairing: i64 = (0..self.rank).map(|k| beta[k] * self.cartan[k][i]).sum();
        let mut out = beta.to_vec();
        out[i] -= pairing;
        out
    }

    /// `w(λ)` in weight coordinates for a word with 1-based letters.
    pub fn apply_word_weight(&self, letters: &[usize], lam: &[i64]) -> Vec<i64> {
        letters
            .iter()
            .rev()
            .fold(lam.to_vec(), |v, &b| self.reflect_weight(&v, b - 1))
    }

    /// `w(β)` in simple-root coordinates for a word with 1-based letters.
    pub fn apply_word_root(&self, letters: &[usize], beta: &[i64]) -> Vec<i64> {
        letters
            .iter()
            .rev()
            .fold(beta.to_vec(), |v, &b| self.reflect_root(&v, b - 1))
    }

    /// Whether two vertices (1-based) are joined in the Dynkin diagram.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.adjacency[u - 1] >> (v - 1) & 1 == 1
    }

    /// Neighbours of a vertex (1-based) as a mask.
    pub fn neighbors(&self, v: usize) -> SubsetMask {
        SubsetMask(self.adjacency[v - 1])
    }

    /// Vertices adjacent to some vertex of `mask` but outside it.
    pub fn boundary(&self, mask: SubsetMask) -> SubsetMask {
        mask.vertices()
            .into_iter()
            .fold(SubsetMask::empty(), |m, v| m.union(self.neighbors(v)))
            .difference(mask)
    }

    /// Order of `s_i s_j` (1-based vertices).
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i - 1][j - 1] * self.cartan[j - 1][i - 1] {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        }
    }

    /// `(α_i, α_i) / 2` for each simple root.
    pub fn half_norms(&self) -> Vec<Q> {
        self.simple_roots
            .iter()
            .map(|a| dot(a, a) / qi(2))
            .collect()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if (1..=self.rank).contains(&v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                rank: self.rank,
            })
        }
    }

    pub fn check_mask(&self, m: SubsetMask) -> Result<()> {
        if m.is_subset(self.full_mask()) {
            Ok(())
        } else {
            Err(Error::InvalidSubset(format!(
                "{m} is not inside 1..={}",
                self.rank
            )))
        }
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let r = self.reflect_root(&b, i);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        pos
    }
}

/// Whether a root in simple-root coordinates is positive.
pub fn is_positive_root(beta: &[i64]) -> bool {
    beta.iter().all(|&c| c >= 0) && beta.iter().any(|&c| c > 0)
}

/// Exact determinant of the Cartan matrix.
pub fn cartan_det(rs: &RootSystem) -> BigInt {
    det_int(&rs.cartan)
}

/// Weyl group order, tagged with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOrder {
    pub value: BigInt,
    /// True when the closed-form product of degrees was used instead of enumeration.
    pub formula_derived: bool,
}

/// `|W|` by enumeration when the order is at most `cap`, otherwise from the degrees.
pub fn weyl_order(rs: &RootSystem, cap: u64) -> WeylOrder {
    let formula = weyl_order_formula(rs.type_label, rs.rank);
    if formula <= BigInt::from(cap) {
        WeylOrder {
            value: BigInt::from(enumerate_group_size(rs)),
            formula_derived: false,
        }
    } else {
        WeylOrder {
            value: formula,
            formula_derived: true,
        }
    }
}

/// `|W| / det(C)` from the closed-form order.
pub fn volume_normalizer(rs: &RootSystem) -> Q {
    Q::new(weyl_order_formula(rs.type_label, rs.rank), cartan_det(rs))
}

/// Counts the Weyl group by walking the orbit of a regular dominant weight.
pub fn enumerate_group_size(rs: &RootSystem) -> u64 {
    let rho = vec![1i64; rs.rank];
    orbit_fold(rs, &rho, || 0u64, |c, _| c + 1, |a, b| a + b)
}

fn orbit_children(rs: &RootSystem, x: &[i64], out: &mut Vec<Vec<i64>>) {
    for i in 0..x.len() {
        if x[i] > 0 && (0..i).all(|k| x[k] - x[i] * rs.cartan[i][k] > 0) {
            out.push(rs.reflect_weight(x, i));
        }
    }
}

/// Folds over the Weyl orbit of a regular dominant weight (all coordinates positive).
///
/// Each orbit point has a unique parent `s_j(y)` with `j` the first negative
/// coordinate of `y`, so the orbit is a tree walked without a visited set.
/// Subtrees are processed in parallel; `reduce` must be associative and commutative.
pub fn orbit_fold<T, I, F, R>(rs: &RootSystem, start: &[i64], identity: I, fold: F, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, &[i64]) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    assert!(
        start.iter().all(|&c| c > 0),
        "orbit start must be regular dominant"
    );
    let mut acc = identity();
    let mut frontier = vec![start.to_vec()];
    while !frontier.is_empty() && frontier.len() < 512 {
        let mut next = Vec::new();
        for x in &frontier {
            acc = fold(acc, x);
            orbit_children(rs, x, &mut next);
        }
        frontier = next;
    }
    let rest = frontier
        .into_par_iter()
        .map(|root| {
            let mut local = identity();
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                local = fold(local, &x);
                orbit_children(rs, &x, &mut stack);
            }
            local
        })
        .reduce(&identity, &reduce);
    reduce(acc, rest)
}

/// Images `w(α_k)` of all simple roots under a growing word, in root coordinates.
#[derive(Clone, Debug)]
pub struct WordWalker<'a> {
    rs: &'a RootSystem,
    cols: Vec<Vec<i64>>,
}

impl<'a> WordWalker<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let n = rs.rank;
        let cols = (0..n)
            .map(|k| (0..n).map(|j| i64::from(j == k)).collect())
            .collect();
        WordWalker { rs, cols }
    }

    /// `w(α_i)` for the current prefix `w`, `i` 1-based.
    pub fn image(&self, i: usize) -> &[i64] {
        &self.cols[i - 1]
    }

    /// Replaces `w` by `w s_i`, `i` 1-based.
    pub fn push(&mut self, i: usize) {
        let i0 = i - 1;
        let ci = self.cols[i0].clone();
        for k in 0..self.rs.rank {
            let c = self.rs.cartan[k][i0];
            if c != 0 {
                for (x, y) in self.cols[k].iter_mut().zip(&ci) {
                    *x -= c * y;
                }
            }
        }
    }
}

/// The roots `r(j) = s_{b_1} ⋯ s_{b_{j-1}}(α_{b_j})` of a word, in root coordinates.
pub fn inversion_roots(rs: &RootSystem, letters: &[usize]) -> Vec<Vec<i64>> {
    let mut walker = WordWalker::new(rs);
    letters
        .iter()
        .map(|&b| {
            let r = walker.image(b).to_vec();
            walker.push(b);
            r
        })
        .collect()
}

/// Whether the word is reduced, i.e. every `r(j)` is positive.
pub fn is_reduced(rs: &RootSystem, letters: &[usize]) -> bool {
    inversion_roots(rs, letters)
        .iter()
        .all(|r| is_positive_root(r))
}

/// Length of the group element represented by a word.
pub fn element_length(rs: &RootSystem, letters: &[usize]) -> usize {
    rs.positive_roots
        .iter()
        .filter(|b| !is_positive_root(&rs.apply_word_root(letters, b)))
        .count()
}

fn check_word(rs: &RootSystem, letters: &[usize]) -> Result<()> {
    letters.iter().try_for_each(|&l| rs.check_vertex(l))
}

/// Nonempty connected vertex subsets ordered by size, then by bitmask.
pub fn connected_subsets(rs: &RootSystem) -> Vec<SubsetMask> {
    let n = rs.rank;
    let mut out: Vec<SubsetMask> = Vec::new();
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    let mut layer: Vec<SubsetMask> = (1..=n).map(SubsetMask::singleton).collect();
    while !layer.is_empty() {
        layer.sort();
        out.extend(layer.iter().copied());
        let mut next = Vec::new();
        for &m in &layer {
            for v in rs.boundary(m).vertices() {
                let grown = m.insert(v);
                if seen.insert(grown) {
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    out
}

/// Maximal connected components, ordered by smallest vertex.
pub fn connected_components(rs: &RootSystem, mask: SubsetMask) -> Vec<SubsetMask> {
    let mut rest = mask;
    let mut comps = Vec::new();
    while let Some(v) = rest.min_vertex() {
        let mut comp = SubsetMask::singleton(v);
        loop {
            let grown = comp.union(rs.boundary(comp).intersect(mask));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        comps.push(comp);
        rest = rest.difference(comp);
    }
    comps
}

pub fn is_connected(rs: &RootSystem, mask: SubsetMask) -> bool {
    !mask.is_empty() && connected_components(rs, mask).len() == 1
}

/// Lexicographically smallest reduced word of the longest element of `W_K`.
///
/// Built greedily: any reduced word of an element of `W_K` extends to one of
/// `w_K`, so the smallest letter that increases the length is always safe.
pub fn longest_element(rs: &RootSystem, k: SubsetMask) -> Result<WeylWord> {
    rs.check_mask(k)?;
    if k.is_empty() {
        return Err(Error::InvalidSubset("empty subset".into()));
    }
    let verts = k.vertices();
    let mut walker = WordWalker::new(rs);
    let mut letters = Vec::new();
    while let Some(&i) = verts.iter().find(|&&i| is_positive_root(walker.image(i))) {
        letters.push(i);
        walker.push(i);
    }
    Ok(WeylWord::new(letters))
}

/// All reduced words of `w`, generated by braid moves from the given reduced word.
pub fn reduced_words(rs: &RootSystem, w: &WeylWord) -> Result<BTreeSet<Vec<usize>>> {
    check_word(rs, &w.letters)?;
    if !is_reduced(rs, &w.letters) {
        return Err(Error::NotReduced(w.letters.clone()));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.letters.clone());
    queue.push_back(w.letters.clone());
    while let Some(word) = queue.pop_front() {
        for p in 0..word.len().saturating_sub(1) {
            let (i, j) = (word[p], word[p + 1]);
            if i == j {
                continue;
            }
            let m = rs.braid_order(i, j);
            if p + m > word.len() {
                continue;
            }
            let alternating = (0..m).all(|t| word[p + t] == if t % 2 == 0 { i } else { j });
            if alternating {
                let mut moved = word.clone();
                for t in 0..m {
                    moved[p + t] = if t % 2 == 0 { j } else { i };
                }
                if seen.insert(moved.clone()) {
                    queue.push_back(moved);
                }
            }
        }
    }
    Ok(seen)
}

/// A connected sub-diagram identified with a standard Dynkin type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentType {
    pub label: TypeLabel,
    pub rank: usize,
    /// `beta[a]` is the ambient vertex carrying the standard label `a + 1`.
    pub beta: Vec<usize>,
}

/// All bijections `β ↦ ambient vertex` from `0..r` onto `vertices` that carry
/// `target` (a β-indexed Cartan matrix) onto the ambient Cartan entries.
pub fn diagram_isomorphisms(
    rs: &RootSystem,
    vertices: &[usize],
    target: &[Vec<i64>],
) -> Vec<Vec<usize>> {
    let r = vertices.len();
    if target.len() != r {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut assign: Vec<usize> = Vec::with_capacity(r);
    let mut used = vec![false; r];
    fn go(
        rs: &RootSystem,
        vertices: &[usize],
        target: &[Vec<i64>],
        assign: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let a = assign.len();
        if a == vertices.len() {
            out.push(assign.clone());
            return;
        }
        for idx in 0..vertices.len() {
            if used[idx] {
                continue;
            }
            let v = vertices[idx];
            let fits = assign.iter().enumerate().all(|(b, &u)| {
                rs.cartan[v - 1][u - 1] == target[a][b] && rs.cartan[u - 1][v - 1] == target[b][a]
            });
            if fits {
                used[idx] = true;
                assign.push(v);
                go(rs, vertices, target, assign, used, out);
                assign.pop();
                used[idx] = false;
            }
        }
    }
    go(rs, vertices, target, &mut assign, &mut used, &mut out);
    out
}

/// Sort key for ambient vertices when breaking ties between labelings: the
/// branch vertex 2 of an E diagram is read last, as in the diagram's main chain.
pub fn vertex_order_key(rs: &RootSystem, v: usize) -> usize {
    if rs.type_label == TypeLabel::E && v == 2 {
        usize::MAX
    } else {
        v
    }
}

/// Compares labelings by their ambient vertex sequences under [`vertex_order_key`].
pub fn labeling_key(rs: &RootSystem, beta: &[usize]) -> Vec<usize> {
    beta.iter().map(|&v| vertex_order_key(rs, v)).collect()
}

/// Identifies the Dynkin type of a connected subset and its canonical labeling.
pub fn component_type(rs: &RootSystem, k: SubsetMask) -> Result<ComponentType> {
    if !is_connected(rs, k) {
        return Err(Error::InvalidSubset(format!("{k} is not connected")));
    }
    let verts = k.vertices();
    let r = verts.len();
    let mut candidates = vec![(TypeLabel::A, r)];
    if r >= 2 {
        candidates.push((TypeLabel::B, r));
        candidates.push((TypeLabel::C, r));
    }
    if r >= 4 {
        candidates.push((TypeLabel::D, r));
    }
    if (6..=8).contains(&r) {
        candidates.push((TypeLabel::E, r));
    }
    if r == 4 {
        candidates.push((TypeLabel::F, 4));
    }
    if r == 2 {
        candidates.push((TypeLabel::G, 2));
    }
    for (label, rank) in candidates {
        let target = standard_cartan(label, rank)?;
        let isos = diagram_isomorphisms(rs, &verts, &target);
        if let Some(beta) = isos.into_iter().min_by_key(|b| labeling_key(rs, b)) {
            return Ok(ComponentType { label, rank, beta });
        }
    }
    Err(Error::Internal(format!(
        "sub-diagram {k} matches no Dynkin type"
    )))
}

/// Number of reduced words of `v_K` for a connected `K` of the given type.
pub fn red_count_for_type(label: TypeLabel) -> usize {
    match label {
        TypeLabel::D => 2,
        TypeLabel::E => 3,
        _ => 1,
    }
}

/// The Coxeter-type element `v_K`: per component, the product of the simple
/// reflections in the component's standard order; components by smallest vertex.
pub fn v_k(rs: &RootSystem, k: SubsetMask) -> Result<WeylWord> {
    rs.check_mask(k)?;
    if k.is_empty() {
        return Err(Error::InvalidSubset("empty subset".into()));
    }
    let mut letters = Vec::new();
    for comp in connected_components(rs, k) {
        letters.extend(component_type(rs, comp)?.beta);
    }
    Ok(WeylWord::new(letters))
}
