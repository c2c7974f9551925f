//! Motzkin paths and their weighted sums.
//!
//! A North-East step has weight 1, an East step of height `k` has weight
//! `b_k`, a South-East step of height `k` has weight `lambda_k`, where the
//! height of a step is the height it starts from. The weighted sum over
//! `Mot_{n,j,j}` with the recurrence weights of an orthogonal family is the
//! per-polynomial moment increment of that family.

use crate::polyrec::Coeff;

/// One step of a Motzkin path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// North-East: height + 1.
    Up,
    /// East: height unchanged.
    Level,
    /// South-East: height - 1.
    Down,
}

/// A Motzkin path: start height plus steps, never dipping below zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotzkinPath {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl MotzkinPath {
    pub fn new(start: usize, steps: Vec<Step>) -> Self {
        let p = MotzkinPath { start, steps };
        assert!(p.heights().is_some(), "path dips below zero");
        p
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> usize {
        *self.heights().expect("valid path").last().unwrap()
    }

    /// Height profile including both endpoints, or None if it goes negative.
    pub fn heights(&self) -> Option<Vec<usize>> {
        let mut h = self.start as i64;
        let mut out = vec![self.start];
        for s in &self.steps {
            h += match s {
                Step::Up => 1,
                Step::Level => 0,
                Step::Down => -1,
            };
            if h < 0 {
                return None;
            }
            out.push(h as usize);
        }
        Some(out)
    }
}

/// Brute-force weighted sum over `Mot_{length, start, end}`:
/// every path is walked step by step and its weight product accumulated.
pub fn motzkin_weighted_sum<C: Coeff>(
    length: usize,
    start: usize,
    end: usize,
    b: impl Fn(usize) -> C,
    lambda: impl Fn(usize) -> C,
) -> C {
    let mut total = C::zero();
    walk(length, start, end, C::one(), &b, &lambda, &mut total);
    total
}

fn walk<C: Coeff>(
    remaining: usize,
    height: usize,
    end: usize,
    weight: C,
    b: &impl Fn(usize) -> C,
    lambda: &impl Fn(usize) -> C,
    total: &mut C,
) {
    if remaining == 0 {
        if height == end {
            *total = total.clone() + weight;
        }
        return;
    }
    // reachability prune keeps the blowup at 3^length honest but affordable
    let dist = height.abs_diff(end);
    if dist > remaining {
        return;
    }
    walk(remaining - 1, height + 1, end, weight.clone(), b, lambda, total);
    walk(
        remaining - 1,
        height,
        end,
        weight.clone() * b(height),
        b,
        lambda,
        total,
    );
    if height > 0 {
        walk(
            remaining - 1,
            height - 1,
            end,
            weight * lambda(height),
            b,
            lambda,
            total,
        );
    }
}

/// Enumerate all of `Mot_{length, start, end}` (test-scale sizes only).
pub fn enumerate_paths(length: usize, start: usize, end: usize) -> Vec<MotzkinPath> {
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(length);
    fn go(
        remaining: usize,
        height: usize,
        end: usize,
        start: usize,
        steps: &mut Vec<Step>,
        out: &mut Vec<MotzkinPath>,
    ) {
        if remaining == 0 {
            if height == end {
                out.push(MotzkinPath::new(start, steps.clone()));
            }
            return;
        }
        for s in [Step::Up, Step::Level, Step::Down] {
            if s == Step::Down && height == 0 {
                continue;
            }
            steps.push(s);
            let h = match s {
                Step::Up => height + 1,
                Step::Level => height,
                Step::Down => height - 1,
            };
            go(remaining - 1, h, end, start, steps, out);
            steps.pop();
        }
    }
    go(length, start, end, start, &mut steps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_weights_ground_cases() {
        // length 4, 0 -> 0, b = 0, lambda_k = k: the two Dyck paths UUDD and
        // UDUD weigh 2 and 1
        let v = motzkin_weighted_sum(4, 0, 0, |_| 0.0f64, |k| k as f64);
        assert_eq!(v, 3.0);
        // length 2 at start = end = j: 2j + 1
        let v = motzkin_weighted_sum(2, 2, 2, |_| 0.0f64, |k| k as f64);
        assert_eq!(v, 5.0);
        // odd length with b = 0 dies on parity
        let v = motzkin_weighted_sum(3, 1, 1, |_| 0.0f64, |k| k as f64);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn motzkin_numbers_from_unit_weights() {
        // all-ones weights count Motzkin paths: 1, 1, 2, 4, 9, 21, 51
        let want = [1.0, 1.0, 2.0, 4.0, 9.0, 21.0, 51.0];
        for (n, w) in want.iter().enumerate() {
            let v = motzkin_weighted_sum(n, 0, 0, |_| 1.0f64, |_| 1.0f64);
            assert_eq!(v, *w, "n = {n}");
            assert_eq!(enumerate_paths(n, 0, 0).len() as f64, *w);
        }
    }

    #[test]
    fn path_validation() {
        let p = MotzkinPath::new(1, vec![Step::Down, Step::Up, Step::Up]);
        assert_eq!(p.end(), 2);
        assert_eq!(p.heights().unwrap(), vec![1, 0, 1, 2]);
        assert_eq!(p.len(), 3);
    }

    #[test]
    #[should_panic(expected = "below zero")]
    fn negative_height_rejected() {
        let _ = MotzkinPath::new(0, vec![Step::Down]);
    }
}
