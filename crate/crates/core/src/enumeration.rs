//! Enumeration of primitive hyperbolic conjugacy classes of `PSL(2, Z)` by
//! trace, i.e. of modular knots ordered by length.
//!
//! Each class has a unique aperiodic necklace over `{L, R}`; its least
//! rotation is a Lyndon word, so the search walks the prenecklace tree
//! (Fredricksen-Kessler-Maiorana order) and prunes with the trace bound.
//! Subtrees below a fixed split depth are handed to a worker pool and merged
//! by sorting, so the output does not depend on the worker count.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::ExactInt;
use crate::sl2::{canonical_necklace, spectral, word_to_matrix, LRNecklace, LRWord, Letter, Mat2, SpectralData};

/// Default exhaustive-oracle guard: words up to length `guard - 2` are listed.
pub const DEFAULT_ORACLE_GUARD: u64 = 24;
/// Prefix length at which the search tree is split across workers.
pub const DEFAULT_SPLIT_DEPTH: usize = 12;

/// One primitive hyperbolic class (one modular knot).
#[derive(Clone, Debug, PartialEq)]
pub struct ClassRecord {
    pub necklace: LRNecklace,
    pub rep: Mat2<BigInt>,
    pub spectral: SpectralData<BigInt, f64>,
}

impl ClassRecord {
    pub fn from_necklace(necklace: LRNecklace) -> Self {
        let rep = word_to_matrix::<BigInt>(necklace.word());
        Self::with_rep(necklace, rep)
    }

    fn with_rep(necklace: LRNecklace, rep: Mat2<BigInt>) -> Self {
        let spectral = spectral(&rep).expect("necklaces with both letters are hyperbolic");
        ClassRecord { necklace, rep, spectral }
    }

    pub fn trace(&self) -> &BigInt {
        &self.spectral.trace
    }

    pub fn length(&self) -> f64 {
        self.spectral.length
    }

    /// Recheck every record invariant from scratch.
    pub fn validate(&self) -> Result<()> {
        let canon = canonical_necklace(self.necklace.word())?;
        if canon != self.necklace {
            return Err(Error::InvalidParams(format!("{} is not canonical", self.necklace)));
        }
        let rep = word_to_matrix::<BigInt>(self.necklace.word());
        if rep != self.rep {
            return Err(Error::InvalidParams(format!("representative of {} mismatched", self.necklace)));
        }
        let s = spectral(&rep)?;
        if s != self.spectral {
            return Err(Error::InvalidParams(format!("spectral data of {} mismatched", self.necklace)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationParams {
    /// Strict upper bound on the trace.
    pub trace_bound: u64,
    pub worker_count: usize,
    pub split_depth: usize,
}

impl EnumerationParams {
    pub fn new(trace_bound: u64, worker_count: usize) -> Result<Self> {
        if trace_bound < 3 {
            return Err(Error::InvalidParams(format!("trace bound {trace_bound} < 3")));
        }
        if worker_count == 0 {
            return Err(Error::InvalidParams("worker count must be positive".into()));
        }
        Ok(EnumerationParams { trace_bound, worker_count, split_depth: DEFAULT_SPLIT_DEPTH })
    }

    pub fn with_split_depth(mut self, depth: usize) -> Self {
        self.split_depth = depth.max(1);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Walk only prenecklaces; prune a prefix once no proper extension can
    /// stay below the bound.
    Prenecklace,
    /// Walk every word starting with `L`, pruning only on the prefix trace
    /// and the length bound `len <= bound - 2`; canonicity is checked at the
    /// leaves.
    Plain,
}

#[derive(Clone)]
struct Node<T> {
    word: Vec<Letter>,
    mat: Mat2<T>,
    period: usize,
}

struct Walker<T> {
    bound: T,
    bound_u64: u64,
    strategy: SearchStrategy,
}

impl<T: ExactInt> Walker<T> {
    fn root(&self) -> Node<T> {
        Node { word: vec![Letter::L], mat: Mat2::gen_l(), period: 1 }
    }

    fn is_output(&self, node: &Node<T>) -> bool {
        let n = node.word.len();
        if n < 2 || node.mat.trace() >= self.bound {
            return false;
        }
        match self.strategy {
            SearchStrategy::Prenecklace => node.period == n,
            SearchStrategy::Plain => {
                let w = LRWord::new(node.word.clone()).expect("nonempty");
                matches!(canonical_necklace(&w), Ok(c) if c.word() == &w)
            }
        }
    }

    fn may_extend(&self, node: &Node<T>) -> bool {
        match self.strategy {
            // Any Lyndon extension w.u ends in R, so with U = (p q; r s),
            // p, s, q >= 1: tr(WU) >= a + d + c.
            SearchStrategy::Prenecklace => {
                let m = &node.mat;
                m.a().clone() + m.c().clone() + m.d().clone() < self.bound
            }
            SearchStrategy::Plain => {
                node.mat.trace() < self.bound && (node.word.len() as u64) < self.bound_u64 - 2
            }
        }
    }

    fn children(&self, node: &Node<T>) -> Vec<Node<T>> {
        if !self.may_extend(node) {
            return Vec::new();
        }
        let n = node.word.len();
        let options: Vec<(Letter, usize)> = match self.strategy {
            SearchStrategy::Prenecklace => {
                let prev = node.word[n - node.period];
                let mut v = vec![(prev, node.period)];
                if prev == Letter::L {
                    v.push((Letter::R, n + 1));
                }
                v
            }
            SearchStrategy::Plain => vec![(Letter::L, 0), (Letter::R, 0)],
        };
        options
            .into_iter()
            .map(|(letter, period)| {
                let mut word = node.word.clone();
                word.push(letter);
                let mut mat = node.mat.clone();
                mat.push(letter);
                Node { word, mat, period }
            })
            .collect()
    }

    fn walk(&self, node: &Node<T>, out: &mut Vec<(Vec<Letter>, Mat2<T>)>) {
        if self.is_output(node) {
            out.push((node.word.clone(), node.mat.clone()));
        }
        for child in self.children(node) {
            self.walk(&child, out);
        }
    }

    /// Outputs above `depth` plus the open nodes at `depth`.
    fn frontier(&self, depth: usize) -> (Vec<(Vec<Letter>, Mat2<T>)>, Vec<Node<T>>) {
        let mut shallow = Vec::new();
        let mut open = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(node) = stack.pop() {
            if node.word.len() >= depth {
                open.push(node);
                continue;
            }
            if self.is_output(&node) {
                shallow.push((node.word.clone(), node.mat.clone()));
            }
            stack.extend(self.children(&node));
        }
        (shallow, open)
    }
}

fn run_walk<T: ExactInt>(p: &EnumerationParams, strategy: SearchStrategy) -> Result<Vec<ClassRecord>> {
    let bound = T::from_u64(p.trace_bound)
        .ok_or_else(|| Error::InvalidParams(format!("trace bound {} too large", p.trace_bound)))?;
    let walker = Walker { bound, bound_u64: p.trace_bound, strategy };
    let (mut found, open) = walker.frontier(p.split_depth);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(p.worker_count)
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    let deep: Vec<Vec<(Vec<Letter>, Mat2<T>)>> = pool.install(|| {
        open.par_iter()
            .map(|node| {
                let mut out = Vec::new();
                walker.walk(node, &mut out);
                out
            })
            .collect()
    });
    found.extend(deep.into_iter().flatten());

    let mut records: Vec<ClassRecord> = pool.install(|| {
        found
            .into_par_iter()
            .map(|(word, mat)| {
                let necklace = canonical_necklace(&LRWord::new(word).expect("nonempty"))
                    .expect("search emits canonical aperiodic words");
                let [a, b, c, d] = mat.entries().map(|x| x.to_bigint().expect("integer"));
                let rep = Mat2::new(a, b, c, d).expect("product of generators");
                ClassRecord::with_rep(necklace, rep)
            })
            .collect()
    });
    sort_records(&mut records);
    if records.is_empty() {
        log::info!("no primitive hyperbolic classes with trace < {}", p.trace_bound);
    }
    Ok(records)
}

fn sort_records(records: &mut [ClassRecord]) {
    records.sort_by(|x, y| x.trace().cmp(y.trace()).then_with(|| x.necklace.cmp(&y.necklace)));
}

/// All primitive hyperbolic classes with `2 < trace < trace_bound`, sorted by
/// `(trace, necklace)`.
pub fn enumerate_classes(p: &EnumerationParams) -> Result<Vec<ClassRecord>> {
    enumerate_classes_with(p, SearchStrategy::Prenecklace)
}

pub fn enumerate_classes_with(p: &EnumerationParams, strategy: SearchStrategy) -> Result<Vec<ClassRecord>> {
    // Entries of a visited prefix stay below bound^2.
    if p.trace_bound < (1 << 31) {
        run_walk::<i64>(p, strategy)
    } else {
        run_walk::<BigInt>(p, strategy)
    }
}

/// Exhaustive oracle: every word of length `2..=trace_bound - 2`, canonicalised
/// and deduplicated. Refuses bounds above `DEFAULT_ORACLE_GUARD`.
pub fn brute_force_classes(trace_bound: u64) -> Result<Vec<ClassRecord>> {
    brute_force_classes_guarded(trace_bound, DEFAULT_ORACLE_GUARD)
}

pub fn brute_force_classes_guarded(trace_bound: u64, guard: u64) -> Result<Vec<ClassRecord>> {
    if trace_bound > guard {
        return Err(Error::OracleBoundExceeded { bound: trace_bound, guard });
    }
    let mut seen = BTreeSet::new();
    let max_len = trace_bound.saturating_sub(2) as usize;
    for len in 2..=max_len {
        for mask in 0u64..(1u64 << len) {
            let letters: Vec<Letter> = (0..len)
                .map(|i| if mask >> i & 1 == 0 { Letter::L } else { Letter::R })
                .collect();
            let word = LRWord::new(letters).expect("nonempty");
            let trace = word_to_matrix::<i64>(&word).trace();
            if (trace as u64) >= trace_bound {
                continue;
            }
            if let Ok(n) = canonical_necklace(&word) {
                seen.insert(n);
            }
        }
    }
    let mut records: Vec<ClassRecord> = seen.into_iter().map(ClassRecord::from_necklace).collect();
    sort_records(&mut records);
    Ok(records)
}

/// All classes with geodesic length `< length_bound`, sorted by `(length, necklace)`.
pub fn classes_by_length(length_bound: f64, worker_count: usize) -> Result<Vec<ClassRecord>> {
    if !(length_bound > 0.0) || !length_bound.is_finite() {
        return Err(Error::InvalidParams(format!("length bound {length_bound}")));
    }
    // l < L  <=>  trace < e^{L/2} + e^{-L/2}
    let half = length_bound / 2.0;
    let trace_cap = half.exp() + (-half).exp();
    let trace_bound = (trace_cap.floor() as u64 + 2).max(3);
    let params = EnumerationParams::new(trace_bound, worker_count)?;
    let mut records: Vec<ClassRecord> = enumerate_classes(&params)?
        .into_iter()
        .filter(|r| r.length() < length_bound)
        .collect();
    records.sort_by(|x, y| {
        x.length()
            .total_cmp(&y.length())
            .then_with(|| x.necklace.cmp(&y.necklace))
    });
    Ok(records)
}

/// Semi-decision for conjugacy in `PSL(2, Z)`: searches conjugators that are
/// words of length `<= depth` in `L, R, L^-1, R^-1`. `false` only means none
/// was found.
pub fn are_conjugate_oracle<T: ExactInt>(m1: &Mat2<T>, m2: &Mat2<T>, depth: usize) -> bool {
    if m1.trace().abs() != m2.trace().abs() {
        return false;
    }
    let gens = [
        Mat2::<T>::gen_l(),
        Mat2::gen_r(),
        Mat2::gen_l().inverse(),
        Mat2::gen_r().inverse(),
    ];
    let mut visited: HashSet<Mat2<T>> = HashSet::new();
    let mut queue = VecDeque::new();
    visited.insert(Mat2::identity());
    queue.push_back((Mat2::identity(), 0usize));
    while let Some((p, len)) = queue.pop_front() {
        let conj = &(&p * m1) * &p.inverse();
        if conj.eq_projective(m2) {
            return true;
        }
        if len == depth {
            continue;
        }
        for g in &gens {
            let next = &p * g;
            if visited.insert(next.clone()) {
                queue.push_back((next, len + 1));
            }
        }
    }
    false
}

/// Trace as `u64`, for callers that know the bound is small.
pub fn trace_u64(r: &ClassRecord) -> u64 {
    r.trace().to_u64().expect("trace fits in u64")
}
