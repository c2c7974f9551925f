//! Matchings on `[n]`: set partitions into arcs (pairs) and isolated
//! vertices, with their crossing and nesting statistics.
//!
//! A crossing is a pair of arcs `(a,b)`, `(c,d)` with `a < c < b < d`, or an
//! arc `(a,b)` with an isolated vertex `c`, `a < c < b`. A nesting is a pair
//! of arcs nested either way, or an arc `(a,b)` with an isolated vertex
//! `c < a`. The moment statistic is `stat(M) = cros(M) + 2 nest(M)`.
//!
//! Enumeration branches on the leftmost unmatched vertex (isolated, or
//! paired with each admissible later vertex), which yields disjoint subtrees
//! and a deterministic order. Statistics are accumulated incrementally
//! during construction; the quadratic post-pass [`Matching::stats`] is kept
//! as the oracle for the incremental counters.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::qcore::number::{binomial, double_factorial, BigInt};

/// A partial pairing of `{1..n}`; vertices not covered by an arc are
/// isolated. Arcs are stored `(opener, closer)` with `opener < closer`,
/// sorted by opener.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

/// Crossing/nesting/closer-count statistics of one matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MatchStats {
    pub cros: u64,
    pub nest: u64,
    /// Number of closers `<= j` for the `j` this was computed against.
    pub cl_le_j: u64,
}

impl MatchStats {
    pub fn stat(&self) -> u64 {
        self.cros + 2 * self.nest
    }
}

impl Matching {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        let m = Matching { n, arcs };
        m.validate();
        m
    }

    fn validate(&self) {
        let mut seen = vec![false; self.n + 1];
        for &(a, b) in &self.arcs {
            assert!(a < b && b <= self.n && a >= 1, "bad arc ({a},{b})");
            assert!(!seen[a] && !seen[b], "vertex reused in ({a},{b})");
            seen[a] = true;
            seen[b] = true;
        }
    }

    /// Isolated vertices, ascending.
    pub fn isolated(&self) -> Vec<usize> {
        let mut covered = vec![false; self.n + 1];
        for &(a, b) in &self.arcs {
            covered[a] = true;
            covered[b] = true;
        }
        (1..=self.n).filter(|&v| !covered[v]).collect()
    }

    /// Quadratic reference computation of the statistics, straight from the
    /// definitions.
    pub fn stats(&self, j: usize) -> MatchStats {
        let mut s = MatchStats::default();
        let iso = self.isolated();
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            for &(c, d) in &self.arcs[i + 1..] {
                // arcs sorted by opener, so a < c
                if c < b && b < d {
                    s.cros += 1;
                } else if c < b && d < b {
                    s.nest += 1;
                }
            }
            for &v in &iso {
                if a < v && v < b {
                    s.cros += 1;
                } else if v < a {
                    s.nest += 1;
                }
            }
            if b <= j {
                s.cl_le_j += 1;
            }
        }
        s
    }
}

impl fmt::Display for Matching {
    /// Dump form `n=7 arcs=(1,6)(2,4)(3,7)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} arcs=", self.n)?;
        for &(a, b) in &self.arcs {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Enumeration refused because the search space exceeds the budget.
#[derive(Clone, Debug, PartialEq)]
pub struct EnumError {
    pub required: BigInt,
    pub budget: u64,
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration of {} matchings exceeds budget {}",
            self.required, self.budget
        )
    }
}

impl std::error::Error for EnumError {}

/// |Mat_{a,b}| = binom(a, 2b) (2b - 1)!!.
pub fn matching_count(a: usize, b: usize) -> BigInt {
    if 2 * b > a {
        return BigInt::zero();
    }
    binomial(a as i64, 2 * b as i64) * double_factorial(2 * b as i64 - 1)
}

pub(crate) fn check_budget(a: usize, b: usize, budget: u64) -> Result<(), EnumError> {
    let required = matching_count(a, b);
    if required > BigInt::from(budget) {
        return Err(EnumError { required, budget });
    }
    Ok(())
}

/// Incremental enumeration state shared by the visitor and the iterator.
///
/// When vertex `v` (the leftmost free one) is decided, every earlier vertex
/// is already decided, so each pair statistic is charged to its later
/// member:
/// - isolated `v`: one crossing per decided arc with closer `> v`;
/// - arc `(v, w)`: one nesting per decided isolated vertex, one crossing per
///   decided closer in `(v, w)`, one nesting per decided closer `> w`.
struct Frame {
    v: usize,
    /// Free vertices after `v` at the time `v` was decided.
    later: Vec<usize>,
    /// 0 = isolated, i >= 1 = paired with `later[i-1]`.
    choice: usize,
    cros_added: u64,
    nest_added: u64,
}

/// Depth-first enumeration core. Calls `visit(arcs, cros, nest)` once per
/// matching in Mat_{a,b} (restricted to closers > `first_open` when
/// `first_open > 0`), with arcs sorted by opener.
pub fn visit_matchings(
    a: usize,
    b: usize,
    first_open: usize,
    mut visit: impl FnMut(&[(usize, usize)], u64, u64),
) {
    if 2 * b > a {
        return;
    }
    let mut used = vec![false; a + 1];
    let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(b);
    let mut closers: Vec<usize> = Vec::with_capacity(b);
    rec(
        a,
        b,
        first_open,
        1,
        0,
        0,
        0,
        &mut used,
        &mut arcs,
        &mut closers,
        &mut visit,
    );
}

#[allow(clippy::too_many_arguments)]
fn rec(
    a: usize,
    b: usize,
    first_open: usize,
    from: usize,
    iso_count: u64,
    cros: u64,
    nest: u64,
    used: &mut Vec<bool>,
    arcs: &mut Vec<(usize, usize)>,
    closers: &mut Vec<usize>,
    visit: &mut impl FnMut(&[(usize, usize)], u64, u64),
) {
    // leftmost free vertex
    let mut v = from;
    while v <= a && used[v] {
        v += 1;
    }
    if v > a {
        if arcs.len() == b {
            visit(arcs, cros, nest);
        }
        return;
    }
    let free_after: Vec<usize> = (v + 1..=a).filter(|&w| !used[w]).collect();
    let need = b - arcs.len();
    // prune: remaining free vertices (incl. v) must host `need` arcs
    if 2 * need > free_after.len() + 1 {
        return;
    }

    // branch 1: v isolated
    {
        let dc = closers.iter().filter(|&&c| c > v).count() as u64;
        used[v] = true;
        rec(
            a,
            b,
            first_open,
            v + 1,
            iso_count + 1,
            cros + dc,
            nest,
            used,
            arcs,
            closers,
            visit,
        );
        used[v] = false;
    }

    // branch 2: v opens an arc to each admissible later vertex
    if need > 0 {
        for &w in &free_after {
            if w <= first_open {
                continue; // no closer may land in 1..=first_open
            }
            let dcros = closers.iter().filter(|&&c| v < c && c < w).count() as u64;
            let dnest = iso_count + closers.iter().filter(|&&c| c > w).count() as u64;
            used[v] = true;
            used[w] = true;
            arcs.push((v, w));
            closers.push(w);
            rec(
                a,
                b,
                first_open,
                v + 1,
                iso_count,
                cros + dcros,
                nest + dnest,
                used,
                arcs,
                closers,
                visit,
            );
            closers.pop();
            arcs.pop();
            used[v] = false;
            used[w] = false;
        }
    }
}

/// Lazy stream over Mat_{a,b} (optionally restricted to closers
/// `> first_open`), in the same deterministic order as [`visit_matchings`].
pub fn enumerate_matchings(
    a: usize,
    b: usize,
    first_open: Option<usize>,
) -> MatchingIter {
    MatchingIter::new(a, b, first_open.unwrap_or(0))
}

/// Iterator form of the leftmost-free-vertex enumeration.
pub struct MatchingIter {
    a: usize,
    b: usize,
    first_open: usize,
    used: Vec<bool>,
    arcs: Vec<(usize, usize)>,
    stack: Vec<Frame>,
    iso_count: u64,
    cros: u64,
    nest: u64,
    done: bool,
    /// A fresh iterator must descend before emitting.
    primed: bool,
}

impl MatchingIter {
    fn new(a: usize, b: usize, first_open: usize) -> Self {
        MatchingIter {
            a,
            b,
            first_open,
            used: vec![false; a + 1],
            arcs: Vec::new(),
            stack: Vec::new(),
            iso_count: 0,
            cros: 0,
            nest: 0,
            done: 2 * b > a,
            primed: false,
        }
    }

    /// Current statistics alongside the most recently yielded matching.
    pub fn current_stats(&self) -> MatchStats {
        MatchStats { cros: self.cros, nest: self.nest, cl_le_j: 0 }
    }

    fn leftmost_free(&self) -> Option<usize> {
        (1..=self.a).find(|&v| !self.used[v])
    }

    /// Apply the choice currently designated by the top frame. Returns false
    /// if the frame has no further choices.
    fn apply_top(&mut self) -> bool {
        let frame = self.stack.last_mut().unwrap();
        let v = frame.v;
        loop {
            if frame.choice == 0 {
                frame.choice = 1;
                // feasibility of the isolated branch
                let need = self.b - self.arcs.len();
                if 2 * need <= frame.later.len() {
                    let dc = self
                        .arcs
                        .iter()
                        .filter(|&&(_, c)| c > v)
                        .count() as u64;
                    frame.cros_added = dc;
                    frame.nest_added = 0;
                    self.used[v] = true;
                    self.iso_count += 1;
                    self.cros += dc;
                    return true;
                }
                continue;
            }
            let idx = frame.choice - 1;
            if idx >= frame.later.len() || self.arcs.len() == self.b {
                return false;
            }
            frame.choice += 1;
            let w = frame.later[idx];
            if self.used[w] || w <= self.first_open {
                continue;
            }
            let dcros = self
                .arcs
                .iter()
                .filter(|&&(_, c)| v < c && c < w)
                .count() as u64;
            let dnest = self.iso_count
                + self.arcs.iter().filter(|&&(_, c)| c > w).count() as u64;
            frame.cros_added = dcros;
            frame.nest_added = dnest;
            self.used[v] = true;
            self.used[w] = true;
            self.arcs.push((v, w));
            self.cros += dcros;
            self.nest += dnest;
            return true;
        }
    }

    /// Undo the effect of the top frame's applied choice.
    fn undo_top(&mut self) {
        let frame = self.stack.last().unwrap();
        let v = frame.v;
        if frame.choice == 1 {
            // isolated was applied
            self.used[v] = false;
            self.iso_count -= 1;
        } else {
            let (a, w) = self.arcs.pop().unwrap();
            debug_assert_eq!(a, v);
            self.used[v] = false;
            self.used[w] = false;
            self.nest -= frame.nest_added;
        }
        self.cros -= frame.cros_added;
    }

    /// Descend until a complete matching is formed. Returns false when the
    /// whole tree is exhausted.
    fn advance(&mut self) -> bool {
        loop {
            match self.leftmost_free() {
                None => {
                    if self.arcs.len() == self.b {
                        return true;
                    }
                    // dead leaf (can't happen with the feasibility prune,
                    // but keep the backtrack path total)
                    if !self.backtrack() {
                        return false;
                    }
                }
                Some(v) => {
                    let later: Vec<usize> =
                        (v + 1..=self.a).filter(|&w| !self.used[w]).collect();
                    self.stack.push(Frame {
                        v,
                        later,
                        choice: 0,
                        cros_added: 0,
                        nest_added: 0,
                    });
                    if !self.apply_top() {
                        self.stack.pop();
                        if !self.backtrack() {
                            return false;
                        }
                    }
                }
            }
        }
    }

    /// Pop exhausted frames, re-applying the next sibling choice where one
    /// exists. Returns false when the root is exhausted.
    fn backtrack(&mut self) -> bool {
        while !self.stack.is_empty() {
            self.undo_top();
            if self.apply_top() {
                return true;
            }
            self.stack.pop();
        }
        false
    }
}

impl Iterator for MatchingIter {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        let found = if !self.primed {
            self.primed = true;
            self.advance()
        } else if self.backtrack() {
            self.advance()
        } else {
            false
        };
        if !found {
            self.done = true;
            return None;
        }
        Some(Matching { n: self.a, arcs: self.arcs.clone() })
    }
}

/// Exact count cross-check helper used in tests and budget estimates.
pub fn count_enumerated(a: usize, b: usize, first_open: usize) -> u64 {
    let mut n = 0u64;
    visit_matchings(a, b, first_open, |_, _, _| n += 1);
    n
}

/// f64 view of the unrestricted count (for quick budget heuristics).
pub fn matching_count_f64(a: usize, b: usize) -> f64 {
    matching_count(a, b).to_f64().unwrap_or(f64::INFINITY)
}
