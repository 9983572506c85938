//! Decreasing sequences of compact convex sets: tail limits with convergence
//! certification, and the limit-arithmetic laws (sum of limits, scalar
//! convergence, uniqueness).

use std::sync::Arc;

use crate::convex::ConvexSet;
use crate::error::Error;
use crate::laws::{LawId, LawReport};

/// A lazily evaluated sequence of sets. Generators must be pure: the same
/// index always yields the same set.
#[derive(Clone)]
pub struct SetSequence {
    gen: Arc<dyn Fn(u32) -> Result<ConvexSet, Error> + Send + Sync>,
    declared_decreasing: bool,
}

impl std::fmt::Debug for SetSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetSequence")
            .field("declared_decreasing", &self.declared_decreasing)
            .finish_non_exhaustive()
    }
}

impl SetSequence {
    pub fn new<F>(declared_decreasing: bool, gen: F) -> Self
    where
        F: Fn(u32) -> Result<ConvexSet, Error> + Send + Sync + 'static,
    {
        SetSequence {
            gen: Arc::new(gen),
            declared_decreasing,
        }
    }

    /// Sequence declared (and later lazily checked) to be decreasing.
    pub fn decreasing<F>(gen: F) -> Self
    where
        F: Fn(u32) -> Result<ConvexSet, Error> + Send + Sync + 'static,
    {
        SetSequence::new(true, gen)
    }

    pub fn term(&self, n: u32) -> Result<ConvexSet, Error> {
        (self.gen)(n)
    }

    pub fn declared_decreasing(&self) -> bool {
        self.declared_decreasing
    }
}

/// Consecutive Hausdorff gaps of a sequence run, with the index of the term
/// that was returned and whether the stopping tolerance was reached.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub gaps: Vec<f64>,
    pub terminal_index: u32,
    pub converged: bool,
}

/// True iff `term(n+1)` is contained in `term(n)` within `tol` for all
/// `n < probe_depth`.
pub fn decreasing_check(seq: &SetSequence, probe_depth: u32, tol: f64) -> Result<bool, Error> {
    let mut prev = seq.term(0)?;
    for n in 0..probe_depth {
        let next = seq.term(n + 1)?;
        if !prev.contains(&next, tol)? {
            return Ok(false);
        }
        prev = next;
    }
    Ok(true)
}

fn tail_limit_impl(
    seq: &SetSequence,
    max_depth: u32,
    tol: f64,
    enforce_decreasing: bool,
) -> Result<(ConvexSet, ConvergenceTrace), Error> {
    let mut gaps = Vec::new();
    let mut prev = seq.term(0)?;
    for n in 0..max_depth {
        let next = seq.term(n + 1)?;
        if enforce_decreasing {
            let violation = prev.inclusion_gap(&next)?;
            if violation > tol {
                return Err(Error::NotDecreasing {
                    index: n,
                    gap: violation,
                });
            }
        }
        let gap = prev.hausdorff(&next)?;
        gaps.push(gap);
        if gap <= tol {
            return Ok((
                prev,
                ConvergenceTrace {
                    gaps,
                    terminal_index: n,
                    converged: true,
                },
            ));
        }
        prev = next;
    }
    Ok((
        prev,
        ConvergenceTrace {
            gaps,
            terminal_index: max_depth,
            converged: false,
        },
    ))
}

/// Stabilised tail of a decreasing sequence: the first term whose gap to its
/// successor is at most `tol`, which over-approximates the intersection of
/// the whole sequence by at most the remaining tail of gaps.
///
/// The decreasing precondition is re-checked on the fly (with slack `tol`);
/// a violation reports the offending index.
pub fn tail_limit(
    seq: &SetSequence,
    max_depth: u32,
    tol: f64,
) -> Result<(ConvexSet, ConvergenceTrace), Error> {
    tail_limit_impl(seq, max_depth, tol, true)
}

/// [`tail_limit`] without the decreasing precondition; diagnostic mode for
/// inputs that are only approximately nested (e.g. perturbed maps).
pub fn tail_limit_unchecked(
    seq: &SetSequence,
    max_depth: u32,
    tol: f64,
) -> Result<(ConvexSet, ConvergenceTrace), Error> {
    tail_limit_impl(seq, max_depth, tol, false)
}

/// Certifies that limits distribute over Minkowski sums: the tail of
/// `A_n + B_n` against the sum of the tails.
///
/// Inner tail limits run at `tol / 8` so that the residual stopping errors
/// (a geometric tail each for dyadically contracting sequences) stay well
/// inside the reported tolerance.
pub fn check_limit_sum(
    seq_a: &SetSequence,
    seq_b: &SetSequence,
    max_depth: u32,
    tol: f64,
) -> Result<LawReport, Error> {
    let inner_tol = tol / 8.0;
    let sum_seq = {
        let a = seq_a.clone();
        let b = seq_b.clone();
        SetSequence::decreasing(move |n| a.term(n)?.minkowski_sum(&b.term(n)?))
    };
    let (lhs, lhs_trace) = tail_limit(&sum_seq, max_depth, inner_tol)?;
    let (la, _) = tail_limit(seq_a, max_depth, inner_tol)?;
    let (lb, _) = tail_limit(seq_b, max_depth, inner_tol)?;
    let rhs = la.minkowski_sum(&lb)?;
    let gap = lhs.hausdorff(&rhs)?;
    Ok(LawReport::from_gap(
        LawId::LimitSum,
        format!(
            "sum sequence stabilised at index {} (converged: {})",
            lhs_trace.terminal_index, lhs_trace.converged
        ),
        gap,
        tol,
    ))
}

/// Certifies the limit arithmetic of scalar multiples: `s_n A -> s A`, the
/// induced sum convergence `s_n A + s_n B -> s A + s B`, and uniqueness (two
/// candidate limits within `tol` of the sequence differ by at most `2 tol`).
///
/// The scaled sequences need not be nested, so gaps are measured directly
/// against the limit rather than through `tail_limit`.
pub fn law_limit_arithmetic<S>(
    a: &ConvexSet,
    b: &ConvexSet,
    s_seq: S,
    s: f64,
    max_depth: u32,
    tol: f64,
) -> Result<Vec<LawReport>, Error>
where
    S: Fn(u32) -> f64,
{
    let limit_a = a.scale(s);
    let limit_b = b.scale(s);
    let limit_sum = limit_a.minkowski_sum(&limit_b)?;

    let mut scalar_gap_at_end = f64::INFINITY;
    let mut sum_gap_at_end = f64::INFINITY;
    let mut first_candidate: Option<ConvexSet> = None;
    let mut last_term: Option<ConvexSet> = None;
    for n in 0..=max_depth {
        let sn = s_seq(n);
        let term_a = a.scale(sn);
        let term_sum = term_a.minkowski_sum(&b.scale(sn))?;
        scalar_gap_at_end = term_a.hausdorff(&limit_a)?;
        sum_gap_at_end = term_sum.hausdorff(&limit_sum)?;
        if scalar_gap_at_end <= tol && first_candidate.is_none() {
            first_candidate = Some(term_a.clone());
        }
        if n == max_depth {
            last_term = Some(term_a);
        }
    }

    let mut reports = vec![
        LawReport::from_gap(
            LawId::LimitScalar,
            format!("s = {s}, A = {}", crate::laws::describe(a)),
            scalar_gap_at_end,
            tol,
        ),
        LawReport::from_gap(
            LawId::LimitSumConvergence,
            format!(
                "s = {s}, A = {}, B = {}",
                crate::laws::describe(a),
                crate::laws::describe(b)
            ),
            sum_gap_at_end,
            tol,
        ),
    ];

    if let (Some(c1), Some(c2)) = (first_candidate, last_term) {
        if scalar_gap_at_end <= tol {
            let mutual = c1.hausdorff(&c2)?;
            reports.push(LawReport::from_gap(
                LawId::LimitUniqueness,
                "two tolerance-certified candidates for the same limit".to_string(),
                mutual,
                2.0 * tol,
            ));
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::IntervalBox;

    fn interval_seq<F>(f: F) -> SetSequence
    where
        F: Fn(u32) -> (f64, f64) + Send + Sync + 'static,
    {
        SetSequence::decreasing(move |n| {
            let (lo, hi) = f(n);
            ConvexSet::interval(lo, hi)
        })
    }

    #[test]
    fn nested_intervals_are_decreasing() {
        let seq = interval_seq(|n| (0.0, 1.0 + 1.0 / (n + 1) as f64));
        assert!(decreasing_check(&seq, 20, 1e-12).unwrap());
    }

    #[test]
    fn oscillating_intervals_are_not_decreasing() {
        // [0, 1 + (-1)^n / n] oscillates: n = 1 gives [0, 0], n = 2 gives [0, 1.5].
        let seq = interval_seq(|n| {
            let n = (n + 1) as f64;
            (0.0, 1.0 + (-1.0f64).powi(n as i32) / n)
        });
        assert!(!decreasing_check(&seq, 5, 1e-12).unwrap());
    }

    #[test]
    fn constant_sequence_converges_immediately() {
        let seq = interval_seq(|_| (2.0, 5.0));
        assert!(decreasing_check(&seq, 10, 0.0).unwrap());
        let (limit, trace) = tail_limit(&seq, 40, 1e-9).unwrap();
        assert_eq!(limit, ConvexSet::interval(2.0, 5.0).unwrap());
        assert_eq!(trace.terminal_index, 0);
        assert!(trace.converged);
    }

    #[test]
    fn dyadic_interval_tail_limit() {
        // [0, 1 + 2^-n] -> [0, 1], stopping by index 21 or so.
        let seq = interval_seq(|n| (0.0, 1.0 + 2f64.powi(-(n as i32))));
        let (limit, trace) = tail_limit(&seq, 40, 1e-6).unwrap();
        assert!(trace.converged);
        assert!(trace.terminal_index <= 25, "index {}", trace.terminal_index);
        let target = ConvexSet::interval(0.0, 1.0).unwrap();
        assert!(limit.hausdorff(&target).unwrap() <= 2e-6);
    }

    #[test]
    fn slowly_shrinking_square_reaches_its_limit() {
        // (1 + 1/n) S -> S for the unit square: harmonic contraction, so the
        // stopping rule needs a deep run and a tight tolerance before the
        // terminal term is within 1e-6 of the limit.
        let square = IntervalBox::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let seq = {
            let square = square.clone();
            SetSequence::decreasing(move |n| {
                Ok(ConvexSet::Box(square.scale(1.0 + 1.0 / (n + 1) as f64)))
            })
        };
        let (limit, trace) = tail_limit(&seq, 3_000_000, 5e-13).unwrap();
        assert!(trace.converged);
        let gap = limit.hausdorff(&ConvexSet::Box(square)).unwrap();
        assert!(gap <= 1e-6, "gap {gap}");
    }

    #[test]
    fn non_decreasing_sequence_names_the_violating_index() {
        // Shrinks by 1 per step, then jumps back out at term 3.
        let seq = interval_seq(|n| if n == 3 { (0.0, 9.0) } else { (0.0, 4.0 - n as f64) });
        let err = tail_limit(&seq, 10, 1e-9).unwrap_err();
        match err {
            Error::NotDecreasing { index, .. } => assert_eq!(index, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn limit_sum_distributes_for_interval_sequences() {
        // A_n = [0, 1 + 2^-n], B_n = [-2^-n, 2]: both sides converge to [0, 3].
        let a = interval_seq(|n| (0.0, 1.0 + 2f64.powi(-(n as i32))));
        let b = interval_seq(|n| (-(2f64.powi(-(n as i32))), 2.0));
        let report = check_limit_sum(&a, &b, 60, 1e-6).unwrap();
        assert!(report.passed(), "gap {}", report.gap);

        let constant_a = interval_seq(|_| (1.0, 2.0));
        let constant_b = interval_seq(|_| (-1.0, 0.5));
        let report = check_limit_sum(&constant_a, &constant_b, 10, 1e-9).unwrap();
        assert_eq!(report.gap, 0.0);
    }

    #[test]
    fn scaled_triangle_sequences_converge_to_scaled_sum() {
        use crate::convex::{hull2, Point2};
        let t = ConvexSet::Poly(
            hull2(&[
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
            ])
            .unwrap(),
        );
        let s = ConvexSet::Poly(
            hull2(&[
                Point2::new(0.0, 0.0),
                Point2::new(0.0, 2.0),
                Point2::new(-1.0, 0.0),
            ])
            .unwrap(),
        );
        let seq_a = {
            let t = t.clone();
            SetSequence::decreasing(move |n| Ok(t.scale(1.0 + 2f64.powi(-(n as i32)))))
        };
        let seq_b = {
            let s = s.clone();
            SetSequence::decreasing(move |n| Ok(s.scale(1.0 + 2f64.powi(-(n as i32)))))
        };
        let report = check_limit_sum(&seq_a, &seq_b, 60, 1e-6).unwrap();
        assert!(report.passed(), "gap {}", report.gap);
    }

    #[test]
    fn limit_arithmetic_dyadic_box_scaling() {
        let square = ConvexSet::Box(IntervalBox::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap());
        let b = ConvexSet::Box(IntervalBox::new(vec![0.0, 0.0], vec![2.0, 1.0]).unwrap());
        let reports = law_limit_arithmetic(
            &square,
            &b,
            |n| 1.0 - 2f64.powi(-(n as i32)),
            1.0,
            23,
            1e-6,
        )
        .unwrap();
        // Gap at depth n for the square is exactly 2^-n * sqrt(2); it first
        // drops below 1e-6 at n = 21.
        let expected = 2f64.powi(-23) * 2f64.sqrt();
        let scalar = &reports[0];
        assert_eq!(scalar.law, LawId::LimitScalar);
        assert!((scalar.gap - expected).abs() < 1e-9, "gap {}", scalar.gap);
        assert!(reports.iter().all(LawReport::passed));
    }

    #[test]
    fn limit_arithmetic_zero_sequence() {
        let square = ConvexSet::Box(IntervalBox::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap());
        let reports = law_limit_arithmetic(&square, &square, |_| 0.0, 0.0, 5, 1e-9).unwrap();
        for r in &reports {
            assert!(r.passed());
            assert_eq!(r.gap, 0.0);
        }
    }
}
