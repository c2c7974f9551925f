//! Generating-function sums over matchings, and the exact identities they
//! are checked against.

use crate::qcore::number::{BigInt, BigRat};
use crate::qcore::poly::QPoly;
use crate::qcore::qfuncs::{q_binomial, q_double_factorial, q_factorial};

use super::matching::{check_budget, visit_matchings, EnumError};

/// Default refusal threshold for enumeration sizes. The largest acceptance
/// case is |Mat_{15,5}| ~ 2.8e6, so this leaves ample headroom while still
/// stopping accidental explosions.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Left- and right-hand side of one exact identity, kept for witness
/// reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub lhs: QPoly,
    pub rhs: QPoly,
}

impl IdentityCheck {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn counts_to_poly(counts: &[u64]) -> QPoly {
    let mut p = QPoly::zero();
    for (stat, &c) in counts.iter().enumerate() {
        if c > 0 {
            p += &QPoly::monomial(BigRat::from_integer(BigInt::from(c)), stat as i64);
        }
    }
    p
}

fn stat_capacity(vertices: usize) -> usize {
    // stat = cros + 2 nest <= 2 * C(parts, 2) <= vertices * (vertices - 1)
    vertices * vertices.max(1)
}

/// The oracle value of the per-polynomial q-moment:
/// sum over Mat^{>j}_{2p+j, p} of q^{cros + 2 nest}.
pub fn matching_sum(p: usize, j: usize, budget: u64) -> Result<QPoly, EnumError> {
    let a = 2 * p + j;
    check_budget(a, p, budget)?;
    let mut counts = vec![0u64; stat_capacity(a) + 1];
    visit_matchings(a, p, j, |_, cros, nest| {
        counts[(cros + 2 * nest) as usize] += 1;
    });
    Ok(counts_to_poly(&counts))
}

/// Sum over all of Mat_{a,b} of q^{stat}; equals
/// `[a choose 2b]_q [2b-1]_q!!`.
pub fn matching_stat_sum_all(a: usize, b: usize, budget: u64) -> Result<QPoly, EnumError> {
    check_budget(a, b, budget)?;
    let mut counts = vec![0u64; stat_capacity(a) + 1];
    visit_matchings(a, b, 0, |_, cros, nest| {
        counts[(cros + 2 * nest) as usize] += 1;
    });
    Ok(counts_to_poly(&counts))
}

/// Refined positive identity: the class of Mat^{>j}_{2p+j,p} with exactly
/// `i` arcs touching the first `j` vertices sums to the single l = i term of
/// the positive moment formula,
/// `q^{(j-i)(2p-i) + i(i-1)/2} [j choose i]_q [2p]_q! / ([2p-2i]_q!! [i]_q!)`.
pub fn refined_identity_check(
    p: usize,
    j: usize,
    i: usize,
    budget: u64,
) -> Result<IdentityCheck, EnumError> {
    let a = 2 * p + j;
    check_budget(a, p, budget)?;
    let mut counts = vec![0u64; stat_capacity(a) + 1];
    visit_matchings(a, p, j, |arcs, cros, nest| {
        let low = arcs.iter().filter(|&&(o, _)| o <= j).count();
        if low == i {
            counts[(cros + 2 * nest) as usize] += 1;
        }
    });
    let lhs = counts_to_poly(&counts);
    let rhs = if i <= p.min(j) {
        let exponent = ((j - i) * (2 * p - i) + i * i.saturating_sub(1) / 2) as i64;
        let num = q_factorial(2 * p as u64);
        let den = &q_double_factorial(2 * (p - i) as i64) * &q_factorial(i as u64);
        let ratio = num.div_exact(&den);
        (&q_binomial(j as u64, i as u64, 1) * &ratio).shift(exponent)
    } else {
        QPoly::zero()
    };
    Ok(IdentityCheck { lhs, rhs })
}

/// Marked-closer identity over unrestricted matchings:
/// `sum_{Mat_{2p+j,p}} q^{stat(M)} [cl^{<=j}(M) choose r]_{q^2}
///   = [j choose 2r]_q [2r-1]_q!! [j+2p-2r choose 2p-2r]_q [2p-2r-1]_q!!`.
///
/// Conjectural (verified here at small orders, not proven), so this
/// reports rather than asserts.
pub fn marked_closer_check(
    p: usize,
    j: usize,
    r: usize,
    budget: u64,
) -> Result<IdentityCheck, EnumError> {
    let a = 2 * p + j;
    check_budget(a, p, budget)?;
    // counts[stat][cl] over all matchings
    let cap = stat_capacity(a) + 1;
    let mut counts = vec![vec![0u64; p + 1]; cap];
    visit_matchings(a, p, 0, |arcs, cros, nest| {
        let cl = arcs.iter().filter(|&&(_, c)| c <= j).count();
        counts[(cros + 2 * nest) as usize][cl] += 1;
    });
    let marked: Vec<QPoly> = (0..=p)
        .map(|cl| q_binomial(cl as u64, r as u64, 2))
        .collect();
    let mut lhs = QPoly::zero();
    for (stat, row) in counts.iter().enumerate() {
        for (cl, &c) in row.iter().enumerate() {
            if c > 0 {
                lhs += &marked[cl]
                    .scale(&BigRat::from_integer(BigInt::from(c)))
                    .shift(stat as i64);
            }
        }
    }
    let rhs = if 2 * r <= j && r <= p {
        let mut rhs = q_binomial(j as u64, 2 * r as u64, 1);
        rhs *= &q_double_factorial(2 * r as i64 - 1);
        rhs *= &q_binomial((j + 2 * p - 2 * r) as u64, (2 * p - 2 * r) as u64, 1);
        rhs *= &q_double_factorial(2 * (p - r) as i64 - 1);
        rhs
    } else {
        QPoly::zero()
    };
    Ok(IdentityCheck { lhs, rhs })
}
