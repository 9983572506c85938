//! The decomposition engine: from set-valued maps F, G, H satisfying
//! `F(ax + by + c) = A G(x) + B H(y) + C`, recover the additive core `F0`,
//! the constant sets `alpha`, `beta`, `K`, and certify the defining
//! identities numerically.
//!
//! The core is obtained as the dyadic tail limit of `2^-n G1(2^n x)` for the
//! normalised map `G1 = G - g0` (any anchor `g0` in `G(0)` works; the limit
//! is anchor-invariant). The reported core absorbs the factor `A`, so that
//! the certified identities read
//!
//! ```text
//! F(x + c)  = F0(x / a) + K
//! A G(x)    = F0(x) + A alpha
//! B H(x)    = F0(b x / a) + B beta
//! F0(x + y) = F0(x) + F0(y)
//! ```
//!
//! with `alpha = G(0)`, `beta = H(0)` and `K = A alpha + B beta + F0(0) + C`.

use std::sync::Arc;

use crate::batch;
use crate::convex::{ConvexSet, Point};
use crate::error::Error;
use crate::laws::{LawId, LawReport};
use crate::limits::{tail_limit, tail_limit_unchecked, ConvergenceTrace, SetSequence};

/// Domain of a set-valued map: the whole vector space, or the closed
/// positive orthant (where genuinely set-valued additive cores live).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainMode {
    Vector,
    PositiveCone,
}

const CONE_SLACK: f64 = 1e-9;

/// An evaluable map from domain points to convex sets. Evaluation is pure;
/// the same point always yields the same set.
#[derive(Clone)]
pub struct SetValuedMap {
    eval: Arc<dyn Fn(&Point) -> Result<ConvexSet, Error> + Send + Sync>,
    domain: DomainMode,
    domain_dim: usize,
    value_dim: usize,
}

impl std::fmt::Debug for SetValuedMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SetValuedMap")
            .field("domain", &self.domain)
            .field("domain_dim", &self.domain_dim)
            .field("value_dim", &self.value_dim)
            .finish_non_exhaustive()
    }
}

impl SetValuedMap {
    pub fn new<F>(domain: DomainMode, domain_dim: usize, value_dim: usize, eval: F) -> Self
    where
        F: Fn(&Point) -> Result<ConvexSet, Error> + Send + Sync + 'static,
    {
        SetValuedMap {
            eval: Arc::new(eval),
            domain,
            domain_dim,
            value_dim,
        }
    }

    pub fn evaluate(&self, x: &Point) -> Result<ConvexSet, Error> {
        if x.dim() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                got: x.dim(),
            });
        }
        if self.domain == DomainMode::PositiveCone && x.coords().iter().any(|c| *c < -CONE_SLACK)
        {
            return Err(Error::OutsideDomain {
                point: x.coords().to_vec(),
                reason: "map is declared on the positive cone".to_string(),
            });
        }
        (self.eval)(x)
    }

    pub fn domain_mode(&self) -> DomainMode {
        self.domain
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    /// The translate `x -> M(x) - t` of this map.
    pub fn translate_values(&self, t: &[f64]) -> SetValuedMap {
        let inner = self.clone();
        let shift: Vec<f64> = t.iter().map(|c| -c).collect();
        SetValuedMap::new(self.domain, self.domain_dim, self.value_dim, move |x| {
            inner.evaluate(x)?.translate(&shift)
        })
    }

    /// The map `x -> s * M(x)`.
    pub fn scale_values(&self, s: f64) -> SetValuedMap {
        let inner = self.clone();
        SetValuedMap::new(self.domain, self.domain_dim, self.value_dim, move |x| {
            Ok(inner.evaluate(x)?.scale(s))
        })
    }
}

/// The scalars and constant sets of the equation
/// `F(ax + by + c) = A G(x) + B H(y) + C`.
#[derive(Debug, Clone)]
pub struct PexiderParams {
    pub a: f64,
    pub b: f64,
    pub big_a: f64,
    pub big_b: f64,
    pub c: Point,
    pub constant: ConvexSet,
}

impl PexiderParams {
    pub fn new(
        a: f64,
        b: f64,
        big_a: f64,
        big_b: f64,
        c: Point,
        constant: ConvexSet,
    ) -> Result<Self, Error> {
        for (name, v) in [("a", a), ("b", b), ("A", big_a), ("B", big_b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid_parameter(
                    name,
                    format!("must be a positive real, got {v}"),
                ));
            }
        }
        Ok(PexiderParams {
            a,
            b,
            big_a,
            big_b,
            c,
            constant,
        })
    }

    pub fn domain_dim(&self) -> usize {
        self.c.dim()
    }

    pub fn value_dim(&self) -> usize {
        self.constant.dim()
    }
}

/// Result of probing the halving property `G(2x) in 2 G(x)`.
#[derive(Debug, Clone)]
pub struct HalvingCheck {
    pub passed: bool,
    /// First violating sample and its containment gap, when failed.
    pub witness: Option<(Point, f64)>,
}

/// Recovered decomposition: the (A-scaled) additive core, the constant sets,
/// and the certification residuals once `verify_decomposition` has run.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub f0: SetValuedMap,
    pub alpha: ConvexSet,
    pub beta: ConvexSet,
    pub k: ConvexSet,
    pub residuals: Option<Residuals>,
    pub traces: Vec<(Point, ConvergenceTrace)>,
}

/// Max Hausdorff gaps of the four certified identities.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Residuals {
    /// `F(x + c)` against `F0(x / a) + K`.
    pub shift: f64,
    /// `A G(x)` against `F0(x) + A alpha`.
    pub g_identity: f64,
    /// `B H(x)` against `F0(b x / a) + B beta`.
    pub h_identity: f64,
    /// `F0(x1 + x2)` against `F0(x1) + F0(x2)`.
    pub additivity: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.shift
            .max(self.g_identity)
            .max(self.h_identity)
            .max(self.additivity)
    }
}

/// Translates G and H so that their values at 0 contain the origin, using
/// the deterministic anchor of each carrier (box centroid, polytope vertex
/// average, grid Steiner point). Returns the normalised maps and anchors.
pub fn normalize_at_zero(
    g: &SetValuedMap,
    h: &SetValuedMap,
) -> Result<(SetValuedMap, SetValuedMap, Point, Point), Error> {
    let g0 = g.evaluate(&Point::zero(g.domain_dim()))?.anchor_point();
    let h0 = h.evaluate(&Point::zero(h.domain_dim()))?.anchor_point();
    Ok((
        g.translate_values(&g0),
        h.translate_values(&h0),
        Point::new(g0)?,
        Point::new(h0)?,
    ))
}

/// Like [`normalize_at_zero`] but with caller-chosen anchors, which must lie
/// in `G(0)` resp. `H(0)`. The recovered core is anchor-invariant; only the
/// constant sets shift.
pub fn normalize_with_anchors(
    g: &SetValuedMap,
    h: &SetValuedMap,
    g0: &Point,
    h0: &Point,
) -> Result<(SetValuedMap, SetValuedMap), Error> {
    let g_at_zero = g.evaluate(&Point::zero(g.domain_dim()))?;
    if g_at_zero.dist_point(g0.coords()) > 1e-9 {
        return Err(Error::invalid_parameter("g0", "anchor must lie in G(0)"));
    }
    let h_at_zero = h.evaluate(&Point::zero(h.domain_dim()))?;
    if h_at_zero.dist_point(h0.coords()) > 1e-9 {
        return Err(Error::invalid_parameter("h0", "anchor must lie in H(0)"));
    }
    Ok((
        g.translate_values(g0.coords()),
        h.translate_values(h0.coords()),
    ))
}

/// Probes `G(2x) in 2 G(x)` (within `tol`) at every sample; stops at the
/// first violation and reports it.
pub fn check_halving(
    g: &SetValuedMap,
    samples: &[Point],
    tol: f64,
) -> Result<HalvingCheck, Error> {
    for x in samples {
        let doubled = g.evaluate(&x.scale(2.0))?;
        let twice = g.evaluate(x)?.scale(2.0);
        let gap = twice.inclusion_gap(&doubled)?;
        if gap > tol {
            return Ok(HalvingCheck {
                passed: false,
                witness: Some((x.clone(), gap)),
            });
        }
    }
    Ok(HalvingCheck {
        passed: true,
        witness: None,
    })
}

fn dyadic_sequence(g: &SetValuedMap, x: &Point) -> SetSequence {
    let g = g.clone();
    let x = x.clone();
    SetSequence::decreasing(move |n| {
        let xn = x.scale(2f64.powi(n as i32));
        Ok(g.evaluate(&xn)?.scale(2f64.powi(-(n as i32))))
    })
}

/// The dyadic core at `x`: tail limit of `2^-n G(2^n x)` for a normalised
/// map `G` (one with `0` in `G(0)`). The sequence must be decreasing; a
/// violation at depth `n` is reported as a halving failure naming `n`.
///
/// Note the returned set is the *reduced* core `F0 / A`; the engine scales
/// by `A` when assembling a [`Decomposition`].
pub fn compute_f0(
    g_normalized: &SetValuedMap,
    x: &Point,
    depth: u32,
    tol: f64,
) -> Result<(ConvexSet, ConvergenceTrace), Error> {
    tail_limit(&dyadic_sequence(g_normalized, x), depth, tol).map_err(|e| match e {
        Error::NotDecreasing { index, gap } => Error::HalvingViolation {
            depth: index,
            witness: x.coords().to_vec(),
            gap,
        },
        other => other,
    })
}

/// Diagnostic variant of [`compute_f0`] that tolerates approximately nested
/// sequences (perturbed inputs) and still reports a trace.
pub fn compute_f0_unchecked(
    g_normalized: &SetValuedMap,
    x: &Point,
    depth: u32,
    tol: f64,
) -> Result<(ConvexSet, ConvergenceTrace), Error> {
    tail_limit_unchecked(&dyadic_sequence(g_normalized, x), depth, tol)
}

/// Cross-checks the recovered reduced core against the two other dyadic
/// routes: `A F0(x)` must match both the tail of `2^-n F(a 2^n x + c)` and
/// `B` times the tail of `2^-n H1(2^n a x / b)` (H1 normalised).
///
/// The F-route sequence is nested only up to a vanishing translate of the
/// constant, so both routes run without the decreasing precondition.
pub fn cross_consistency(
    f: &SetValuedMap,
    h_normalized: &SetValuedMap,
    f0_reduced: &SetValuedMap,
    p: &PexiderParams,
    samples: &[Point],
    depth: u32,
    tol: f64,
) -> Result<LawReport, Error> {
    let gap = batch::try_max_map(samples, |x| {
        let lhs = f0_reduced.evaluate(x)?.scale(p.big_a);

        let f_seq = {
            let f = f.clone();
            let x = x.clone();
            let a = p.a;
            let c = p.c.clone();
            SetSequence::new(false, move |n| {
                let arg = x.scale(a * 2f64.powi(n as i32)).add(&c);
                Ok(f.evaluate(&arg)?.scale(2f64.powi(-(n as i32))))
            })
        };
        let (f_limit, _) = tail_limit_unchecked(&f_seq, depth, tol / 8.0)?;
        let gap_f = lhs.hausdorff(&f_limit)?;

        let h_seq = {
            let h = h_normalized.clone();
            let x = x.clone();
            let ratio = p.a / p.b;
            SetSequence::new(false, move |n| {
                let arg = x.scale(ratio * 2f64.powi(n as i32));
                Ok(h.evaluate(&arg)?.scale(2f64.powi(-(n as i32))))
            })
        };
        let (h_limit, _) = tail_limit_unchecked(&h_seq, depth, tol / 8.0)?;
        let gap_h = lhs.hausdorff(&h_limit.scale(p.big_b))?;

        Ok(gap_f.max(gap_h))
    })?;
    Ok(LawReport::from_gap(
        LawId::CrossConsistency,
        format!("{} samples, depth {depth}", samples.len()),
        gap,
        tol,
    ))
}

/// Reads off the constant sets: `alpha = G(0)`, `beta = H(0)` and
/// `K = A alpha + B beta + F0(0) + C`. `f0` is the A-scaled core map.
pub fn extract_constants(
    g: &SetValuedMap,
    h: &SetValuedMap,
    f0: &SetValuedMap,
    p: &PexiderParams,
) -> Result<Decomposition, Error> {
    let alpha = g.evaluate(&Point::zero(g.domain_dim()))?;
    let beta = h.evaluate(&Point::zero(h.domain_dim()))?;
    let f0_zero = f0.evaluate(&Point::zero(f0.domain_dim()))?;
    let k = alpha
        .scale(p.big_a)
        .minkowski_sum(&beta.scale(p.big_b))?
        .minkowski_sum(&f0_zero)?
        .minkowski_sum(&p.constant)?;
    Ok(Decomposition {
        f0: f0.clone(),
        alpha,
        beta,
        k,
        residuals: None,
        traces: Vec::new(),
    })
}

/// Measures the four decomposition identities over the samples and returns
/// the decomposition with residuals filled in.
pub fn verify_decomposition(
    f: &SetValuedMap,
    g: &SetValuedMap,
    h: &SetValuedMap,
    dec: Decomposition,
    p: &PexiderParams,
    samples: &[Point],
    pair_samples: &[(Point, Point)],
) -> Result<Decomposition, Error> {
    let f0 = &dec.f0;

    let shift = batch::try_max_map(samples, |x| {
        let lhs = f.evaluate(&x.add(&p.c))?;
        let rhs = f0.evaluate(&x.scale(1.0 / p.a))?.minkowski_sum(&dec.k)?;
        lhs.hausdorff(&rhs)
    })?;

    let g_identity = batch::try_max_map(samples, |x| {
        let lhs = g.evaluate(x)?.scale(p.big_a);
        let rhs = f0.evaluate(x)?.minkowski_sum(&dec.alpha.scale(p.big_a))?;
        lhs.hausdorff(&rhs)
    })?;

    let h_identity = batch::try_max_map(samples, |x| {
        let lhs = h.evaluate(x)?.scale(p.big_b);
        let rhs = f0
            .evaluate(&x.scale(p.b / p.a))?
            .minkowski_sum(&dec.beta.scale(p.big_b))?;
        lhs.hausdorff(&rhs)
    })?;

    let additivity = batch::try_max_map(pair_samples, |(x1, x2)| {
        let lhs = f0.evaluate(&x1.add(x2))?;
        let rhs = f0.evaluate(x1)?.minkowski_sum(&f0.evaluate(x2)?)?;
        lhs.hausdorff(&rhs)
    })?;

    Ok(Decomposition {
        residuals: Some(Residuals {
            shift,
            g_identity,
            h_identity,
            additivity,
        }),
        ..dec
    })
}

/// The replication identity
/// `F(n a x + c) + (n-1) A G(0) = F(a x + c) + (n-1) A G(x)`,
/// which every solution triple satisfies for all natural `n` (trivially for
/// `n = 1`).
pub fn verify_induction_identity(
    f: &SetValuedMap,
    g: &SetValuedMap,
    p: &PexiderParams,
    x: &Point,
    n: u32,
    tol: f64,
) -> Result<LawReport, Error> {
    if n < 1 {
        return Err(Error::invalid_parameter("n", "must be at least 1"));
    }
    let weight = (n - 1) as f64 * p.big_a;
    let lhs = f
        .evaluate(&x.scale(n as f64 * p.a).add(&p.c))?
        .minkowski_sum(&g.evaluate(&Point::zero(g.domain_dim()))?.scale(weight))?;
    let rhs = f
        .evaluate(&x.scale(p.a).add(&p.c))?
        .minkowski_sum(&g.evaluate(x)?.scale(weight))?;
    let gap = lhs.hausdorff(&rhs)?;
    Ok(LawReport::from_gap(
        LawId::InductionIdentity,
        format!("n = {n}, x = {x}"),
        gap,
        tol,
    ))
}

/// Largest violation of the defining equation over a grid of `(x, y)` pairs:
/// `max hausdorff(F(ax + by + c), A G(x) + B H(y) + C)`.
pub fn residual_scan(
    f: &SetValuedMap,
    g: &SetValuedMap,
    h: &SetValuedMap,
    p: &PexiderParams,
    sample_pairs: &[(Point, Point)],
) -> Result<f64, Error> {
    batch::try_max_map(sample_pairs, |(x, y)| {
        let arg = x.scale(p.a).add(&y.scale(p.b)).add(&p.c);
        let lhs = f.evaluate(&arg)?;
        let rhs = g
            .evaluate(x)?
            .scale(p.big_a)
            .minkowski_sum(&h.evaluate(y)?.scale(p.big_b))?
            .minkowski_sum(&p.constant)?;
        lhs.hausdorff(&rhs)
    })
}

/// Uniform sample grid for a domain: symmetric around the origin in vector
/// mode, the nonnegative orthant in cone mode. `per_axis` points per axis
/// (so `per_axis^2` samples for two-dimensional domains), always containing
/// the origin and, in vector mode, every point's mirror image.
pub fn sample_grid(mode: DomainMode, dim: usize, per_axis: usize, extent: f64) -> Vec<Point> {
    let axis: Vec<f64> = match mode {
        DomainMode::Vector => {
            let half = (per_axis / 2) as i64;
            (-half..=half)
                .map(|k| extent * k as f64 / half.max(1) as f64)
                .collect()
        }
        DomainMode::PositiveCone => (0..per_axis)
            .map(|k| extent * k as f64 / (per_axis - 1).max(1) as f64)
            .collect(),
    };
    match dim {
        1 => axis.iter().map(|x| Point::scalar(*x)).collect(),
        _ => {
            let mut pts = Vec::with_capacity(axis.len() * axis.len());
            for x in &axis {
                for y in &axis {
                    pts.push(Point::new(vec![*x, *y]).expect("grid coordinates are finite"));
                }
            }
            pts
        }
    }
}

/// Deterministic pair selection from a sample grid: strided pairs capped at
/// `max_pairs`, plus mirror pairs `(x, -x)` in vector mode.
pub fn sample_pairs(samples: &[Point], mode: DomainMode, max_pairs: usize) -> Vec<(Point, Point)> {
    let n = samples.len();
    let mut pairs = Vec::new();
    if n == 0 {
        return pairs;
    }
    let budget = max_pairs.max(1);
    let stride = (n * n / budget).max(1);
    let mut idx = 0;
    while idx < n * n && pairs.len() < budget {
        let (i, j) = (idx / n, idx % n);
        pairs.push((samples[i].clone(), samples[j].clone()));
        idx += stride;
    }
    if mode == DomainMode::Vector {
        for x in samples.iter().take(20) {
            pairs.push((x.clone(), x.neg()));
        }
    }
    pairs
}

/// Knobs for the end-to-end pipeline.
#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub depth: u32,
    pub tol: f64,
    pub per_axis: usize,
    pub extent: f64,
    pub induction_max: u32,
    pub max_pairs: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            depth: 25,
            tol: 1e-6,
            per_axis: 21,
            extent: 2.0,
            induction_max: 8,
            max_pairs: 60,
        }
    }
}

/// Everything the end-to-end run produces.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub decomposition: Decomposition,
    pub halving_g: HalvingCheck,
    pub halving_h: HalvingCheck,
    pub induction: Vec<LawReport>,
    pub scan_residual: f64,
    pub samples: Vec<Point>,
    pub pass: bool,
}

/// Full recovery-and-certification run:
/// normalise, probe halving, compute the core with a trace per sample,
/// extract constants, measure the four identities, the replication identity
/// for small `n`, and the residual scan of the defining equation.
///
/// Halving failures do not abort the run: the engine falls back to the
/// unchecked dyadic tail so that perturbed inputs still produce finite,
/// reported residuals (and a failing verdict).
pub fn run_pipeline(
    f: &SetValuedMap,
    g: &SetValuedMap,
    h: &SetValuedMap,
    p: &PexiderParams,
    opts: &PipelineOptions,
) -> Result<PipelineOutcome, Error> {
    let mode = g.domain_mode();
    let m = g.domain_dim();
    let samples = sample_grid(mode, m, opts.per_axis, opts.extent);
    let pairs = sample_pairs(&samples, mode, opts.max_pairs);

    let (g1, h1, _g0, _h0) = normalize_at_zero(g, h)?;
    let halving_g = check_halving(&g1, &samples, opts.tol)?;
    let halving_h = check_halving(&h1, &samples, opts.tol)?;
    let strict = halving_g.passed && halving_h.passed;

    let f0_reduced = {
        let g1 = g1.clone();
        let depth = opts.depth;
        let tol = opts.tol;
        SetValuedMap::new(mode, m, g.value_dim(), move |x| {
            let r = if strict {
                compute_f0(&g1, x, depth, tol)?
            } else {
                compute_f0_unchecked(&g1, x, depth, tol)?
            };
            Ok(r.0)
        })
    };
    let f0 = f0_reduced.scale_values(p.big_a);

    let traces = batch::try_map_indexed(samples.len(), |i| {
        let x = &samples[i];
        let r = if strict {
            compute_f0(&g1, x, opts.depth, opts.tol)?
        } else {
            compute_f0_unchecked(&g1, x, opts.depth, opts.tol)?
        };
        Ok((x.clone(), r.1))
    })?;

    let mut dec = extract_constants(g, h, &f0, p)?;
    dec.traces = traces;
    let dec = verify_decomposition(f, g, h, dec, p, &samples, &pairs)?;

    let induction_x = samples
        .iter()
        .filter(|x| x.coords().iter().any(|c| c.abs() > 1e-9))
        .max_by(|a, b| {
            let na: f64 = a.coords().iter().map(|c| c * c).sum();
            let nb: f64 = b.coords().iter().map(|c| c * c).sum();
            na.total_cmp(&nb)
        })
        .cloned()
        .unwrap_or_else(|| Point::zero(m));
    let induction = (1..=opts.induction_max)
        .map(|n| verify_induction_identity(f, g, p, &induction_x, n, opts.tol))
        .collect::<Result<Vec<_>, _>>()?;

    let scan_residual = residual_scan(f, g, h, p, &pairs)?;

    let residual_max = dec
        .residuals
        .as_ref()
        .map(Residuals::max)
        .unwrap_or(f64::INFINITY);
    let pass = strict
        && residual_max <= opts.tol
        && induction.iter().all(LawReport::passed)
        && scan_residual <= opts.tol;

    Ok(PipelineOutcome {
        decomposition: dec,
        halving_g,
        halving_h,
        induction,
        scan_residual,
        samples,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::IntervalBox;

    fn singleton_map(slope: f64) -> SetValuedMap {
        SetValuedMap::new(DomainMode::Vector, 1, 1, move |x| {
            ConvexSet::singleton(&[slope * x.coords()[0]])
        })
    }

    /// G(x) = {2x} + [0, 1].
    fn affine_interval_map() -> SetValuedMap {
        SetValuedMap::new(DomainMode::Vector, 1, 1, |x| {
            let t = 2.0 * x.coords()[0];
            ConvexSet::interval(t, t + 1.0)
        })
    }

    #[test]
    fn normalize_moves_anchor_to_origin() {
        // G(0) = [2, 3]: centroid anchor 2.5, G1(0) = [-0.5, 0.5].
        let g = SetValuedMap::new(DomainMode::Vector, 1, 1, |x| {
            let t = x.coords()[0];
            ConvexSet::interval(t + 2.0, t + 3.0)
        });
        let h = singleton_map(1.0);
        let (g1, _h1, g0, h0) = normalize_at_zero(&g, &h).unwrap();
        assert_eq!(g0.coords(), &[2.5]);
        assert_eq!(h0.coords(), &[0.0]);
        let at_zero = g1.evaluate(&Point::zero(1)).unwrap();
        assert_eq!(at_zero, ConvexSet::interval(-0.5, 0.5).unwrap());
    }

    #[test]
    fn normalize_singleton_anchor_is_the_point() {
        let g = SetValuedMap::new(DomainMode::Vector, 1, 1, |x| {
            ConvexSet::singleton(&[x.coords()[0] + 4.0])
        });
        let (g1, _, g0, _) = normalize_at_zero(&g, &singleton_map(1.0)).unwrap();
        assert_eq!(g0.coords(), &[4.0]);
        let at_zero = g1.evaluate(&Point::zero(1)).unwrap();
        assert_eq!(at_zero, ConvexSet::singleton(&[0.0]).unwrap());
    }

    #[test]
    fn halving_holds_for_affine_interval_map() {
        let samples: Vec<Point> = (-5..=5).map(|k| Point::scalar(k as f64 * 0.5)).collect();
        let check = check_halving(&affine_interval_map(), &samples, 1e-9).unwrap();
        assert!(check.passed);
    }

    #[test]
    fn halving_fails_for_quadratic_with_witness() {
        // G(x) = {x^2}: G(2) = {4} is not inside 2 G(1) = {2}.
        let g = SetValuedMap::new(DomainMode::Vector, 1, 1, |x| {
            let t = x.coords()[0];
            ConvexSet::singleton(&[t * t])
        });
        let samples = vec![Point::scalar(1.0), Point::scalar(2.0)];
        let check = check_halving(&g, &samples, 1e-9).unwrap();
        assert!(!check.passed);
        let (witness, gap) = check.witness.unwrap();
        assert_eq!(witness.coords(), &[1.0]);
        assert!((gap - 2.0).abs() < 1e-12, "gap {gap}");
    }

    #[test]
    fn compute_f0_contracts_affine_interval_map() {
        // G1(x) = {2x} + [-0.5, 0.5]; dyadic terms {2x} + 2^-n [-0.5, 0.5].
        let (g1, _, _, _) =
            normalize_at_zero(&affine_interval_map(), &singleton_map(1.0)).unwrap();
        let (f0_at_1, trace) = compute_f0(&g1, &Point::scalar(1.0), 25, 1e-7).unwrap();
        assert!(trace.converged);
        let target = ConvexSet::singleton(&[2.0]).unwrap();
        assert!(f0_at_1.hausdorff(&target).unwrap() < 1e-5);
        // Dyadic contraction of the trace.
        for w in trace.gaps.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn compute_f0_is_exact_for_singletons_and_cones() {
        let g = singleton_map(1.0);
        let (f0, trace) = compute_f0(&g, &Point::scalar(3.0), 20, 1e-9).unwrap();
        assert_eq!(f0, ConvexSet::singleton(&[3.0]).unwrap());
        assert_eq!(trace.terminal_index, 0);

        // Cone map x * [1, 2]: all dyadic terms coincide.
        let cone = SetValuedMap::new(DomainMode::PositiveCone, 1, 1, |x| {
            Ok(ConvexSet::Box(
                IntervalBox::interval(1.0, 2.0).unwrap().scale(x.coords()[0]),
            ))
        });
        let (f0, trace) = compute_f0(&cone, &Point::scalar(3.0), 20, 1e-9).unwrap();
        assert!(
            f0.hausdorff(&ConvexSet::interval(3.0, 6.0).unwrap())
                .unwrap()
                < 1e-12
        );
        assert_eq!(trace.terminal_index, 0);
    }

    #[test]
    fn compute_f0_names_depth_on_halving_violation() {
        let g = SetValuedMap::new(DomainMode::Vector, 1, 1, |x| {
            let t = x.coords()[0];
            ConvexSet::singleton(&[t * t])
        });
        let err = compute_f0(&g, &Point::scalar(1.0), 10, 1e-9).unwrap_err();
        assert!(
            matches!(err, Error::HalvingViolation { depth: 0, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn cone_domain_rejects_negative_points() {
        let cone = SetValuedMap::new(DomainMode::PositiveCone, 1, 1, |x| {
            ConvexSet::singleton(&[x.coords()[0]])
        });
        assert!(matches!(
            cone.evaluate(&Point::scalar(-1.0)),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn induction_identity_n1_is_bitwise_trivial() {
        let g = affine_interval_map();
        let f = SetValuedMap::new(DomainMode::Vector, 1, 1, |x| {
            let t = x.coords()[0];
            ConvexSet::interval(t, t + 9.0)
        });
        let p = PexiderParams::new(
            1.0,
            1.0,
            2.0,
            3.0,
            Point::scalar(0.0),
            ConvexSet::interval(0.0, 1.0).unwrap(),
        )
        .unwrap();
        let r = verify_induction_identity(&f, &g, &p, &Point::scalar(0.7), 1, 1e-12).unwrap();
        assert_eq!(r.gap, 0.0);
        assert!(verify_induction_identity(&f, &g, &p, &Point::scalar(1.0), 0, 1e-9).is_err());
    }

    #[test]
    fn sample_grids_are_symmetric_or_positive() {
        let v = sample_grid(DomainMode::Vector, 1, 21, 2.0);
        assert_eq!(v.len(), 21);
        assert!(v.iter().any(|p| p.coords()[0] == 0.0));
        for p in &v {
            let mirrored = p.neg();
            assert!(v.iter().any(|q| q == &mirrored));
        }
        let c = sample_grid(DomainMode::PositiveCone, 2, 5, 1.0);
        assert_eq!(c.len(), 25);
        assert!(c.iter().all(|p| p.coords().iter().all(|x| *x >= 0.0)));
    }
}
