//! Ground-truth scenario construction: pick an additive core and constant
//! sets, build the solution triple (F, G, H) that satisfies the defining
//! equation exactly, and optionally perturb it to produce controlled
//! near-solutions for the stability diagnostics.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::convex::{ConvexSet, Point, SetLiteral, SupportGrid, DEFAULT_DIRECTIONS};
use crate::decompose::{DomainMode, PexiderParams, SetValuedMap};
use crate::error::Error;

/// SplitMix64; used to derive independent substreams from one seed.
pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Additive core families.
///
/// `SingletonLinear` is `x -> {L x}`, additive on the whole space.
/// `ConeCombination` is `x -> x_1 K_1 + ... + x_m K_m`, additive on the
/// positive cone (where scalar splitting is an equality).
#[derive(Debug, Clone)]
pub enum CoreSpec {
    SingletonLinear { matrix: Vec<Vec<f64>> },
    ConeCombination { sets: Vec<ConvexSet> },
}

impl CoreSpec {
    pub fn domain_dim(&self) -> usize {
        match self {
            CoreSpec::SingletonLinear { matrix } => matrix.first().map_or(0, Vec::len),
            CoreSpec::ConeCombination { sets } => sets.len(),
        }
    }

    pub fn value_dim(&self) -> usize {
        match self {
            CoreSpec::SingletonLinear { matrix } => matrix.len(),
            CoreSpec::ConeCombination { sets } => sets.first().map_or(0, ConvexSet::dim),
        }
    }

    /// The natural domain for this core family.
    pub fn default_domain(&self) -> DomainMode {
        match self {
            CoreSpec::SingletonLinear { .. } => DomainMode::Vector,
            CoreSpec::ConeCombination { .. } => DomainMode::PositiveCone,
        }
    }
}

/// Builds the additive core map of a [`CoreSpec`]; additivity holds exactly
/// by construction on the declared domain.
pub fn gen_core(spec: &CoreSpec, domain: DomainMode) -> Result<SetValuedMap, Error> {
    let m = spec.domain_dim();
    let d = spec.value_dim();
    if !(1..=2).contains(&m) {
        return Err(Error::invalid_parameter(
            "core",
            format!("domain dimension must be 1 or 2, got {m}"),
        ));
    }
    if !(1..=2).contains(&d) {
        return Err(Error::invalid_parameter(
            "core",
            format!("value dimension must be 1 or 2, got {d}"),
        ));
    }
    match spec {
        CoreSpec::SingletonLinear { matrix } => {
            if matrix.iter().any(|row| row.len() != m) {
                return Err(Error::invalid_parameter("core.matrix", "ragged rows"));
            }
            if matrix.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::invalid_parameter(
                    "core.matrix",
                    "entries must be finite",
                ));
            }
            let matrix = matrix.clone();
            Ok(SetValuedMap::new(domain, m, d, move |x| {
                let y: Vec<f64> = matrix
                    .iter()
                    .map(|row| row.iter().zip(x.coords()).map(|(l, c)| l * c).sum())
                    .collect();
                ConvexSet::singleton(&y)
            }))
        }
        CoreSpec::ConeCombination { sets } => {
            if domain != DomainMode::PositiveCone {
                return Err(Error::invalid_parameter(
                    "core",
                    "a cone combination core is additive only on the positive cone",
                ));
            }
            if sets.iter().any(|s| s.dim() != d) {
                return Err(Error::invalid_parameter(
                    "core.sets",
                    "all generating sets must share one ambient dimension",
                ));
            }
            let sets = sets.clone();
            Ok(SetValuedMap::new(domain, m, d, move |x| {
                let mut acc = sets[0].scale(x.coords()[0]);
                for (xi, k) in x.coords().iter().zip(&sets).skip(1) {
                    acc = acc.minkowski_sum(&k.scale(*xi))?;
                }
                Ok(acc)
            }))
        }
    }
}

/// Assembles the exact solution triple for a given core and constants:
///
/// ```text
/// G(x) = (1/A) F0(x) + alpha
/// H(y) = (1/B) F0(b y / a) + beta
/// F(z) = A G((z - c)/a) + B H(0) + C
/// ```
///
/// `F` is only constrained (and only evaluable) on the affine image
/// `{a x + b y + c}`; the canonical preimage `y = 0` defines it there, and
/// the domain check of `G` rejects anything else.
pub fn build_solution(
    f0: &SetValuedMap,
    alpha: &ConvexSet,
    beta: &ConvexSet,
    p: &PexiderParams,
) -> Result<(SetValuedMap, SetValuedMap, SetValuedMap), Error> {
    let m = f0.domain_dim();
    let d = f0.value_dim();
    for (name, dim) in [("alpha", alpha.dim()), ("beta", beta.dim()), ("C", p.value_dim())] {
        if dim != d {
            return Err(Error::invalid_parameter(
                name,
                format!("ambient dimension {dim} does not match the core's {d}"),
            ));
        }
    }
    if p.domain_dim() != m {
        return Err(Error::invalid_parameter(
            "c",
            format!(
                "translation dimension {} does not match the core's domain {m}",
                p.domain_dim()
            ),
        ));
    }
    let mode = f0.domain_mode();

    let g = {
        let f0 = f0.clone();
        let alpha = alpha.clone();
        let inv_a = 1.0 / p.big_a;
        SetValuedMap::new(mode, m, d, move |x| {
            f0.evaluate(x)?.scale(inv_a).minkowski_sum(&alpha)
        })
    };
    let h = {
        let f0 = f0.clone();
        let beta = beta.clone();
        let inv_b = 1.0 / p.big_b;
        let ratio = p.b / p.a;
        SetValuedMap::new(mode, m, d, move |y| {
            f0.evaluate(&y.scale(ratio))?
                .scale(inv_b)
                .minkowski_sum(&beta)
        })
    };
    let f = {
        let g = g.clone();
        let h = h.clone();
        let p = p.clone();
        // The affine image is validated through G's domain check, so F itself
        // carries no orthant restriction.
        SetValuedMap::new(DomainMode::Vector, m, d, move |z| {
            let x = z.add(&p.c.neg()).scale(1.0 / p.a);
            let gx = g.evaluate(&x)?.scale(p.big_a);
            let h0 = h.evaluate(&Point::zero(m))?.scale(p.big_b);
            gx.minkowski_sum(&h0)?.minkowski_sum(&p.constant)
        })
    };
    Ok((f, g, h))
}

/// Outward support perturbation: every evaluated set is sampled onto a
/// support grid, each direction receives independent uniform noise in
/// `[0, eps)`, and the data is re-convexified (tightened to the induced
/// polyhedron). The result contains the original set and lies within `eps`
/// of it; noise is deterministic per (point, seed).
pub fn perturb(map: &SetValuedMap, eps: f64, seed: u64) -> Result<SetValuedMap, Error> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::invalid_parameter("eps", "must be finite and >= 0"));
    }
    if eps == 0.0 {
        return Ok(map.clone());
    }
    let inner = map.clone();
    let directions = if map.value_dim() == 1 {
        2
    } else {
        DEFAULT_DIRECTIONS
    };
    Ok(SetValuedMap::new(
        map.domain_mode(),
        map.domain_dim(),
        map.value_dim(),
        move |x| {
            let grid = inner.evaluate(x)?.to_grid(directions);
            let mut key = splitmix64(seed ^ 0x5851_F42D_4C95_7F2D);
            for c in x.coords() {
                key = splitmix64(key ^ c.to_bits());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(key);
            let values: Vec<f64> = grid
                .values()
                .iter()
                .map(|v| v + eps * rng.gen::<f64>())
                .collect();
            Ok(ConvexSet::Grid(SupportGrid::from_values(
                grid.dim(),
                values,
            )?))
        },
    ))
}

/// Wire schema for a core family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoreSpecLiteral {
    SingletonLinear { matrix: Vec<Vec<f64>> },
    ConeCombination { sets: Vec<SetLiteral> },
}

impl CoreSpecLiteral {
    pub fn to_core(&self) -> Result<CoreSpec, Error> {
        match self {
            CoreSpecLiteral::SingletonLinear { matrix } => Ok(CoreSpec::SingletonLinear {
                matrix: matrix.clone(),
            }),
            CoreSpecLiteral::ConeCombination { sets } => Ok(CoreSpec::ConeCombination {
                sets: sets
                    .iter()
                    .map(SetLiteral::to_set)
                    .collect::<Result<_, _>>()?,
            }),
        }
    }
}

/// Wire schema for the equation parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsLiteral {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
    #[serde(rename = "B")]
    pub big_b: f64,
    pub c: Vec<f64>,
    #[serde(rename = "C")]
    pub constant: SetLiteral,
}

impl ParamsLiteral {
    pub fn to_params(&self) -> Result<PexiderParams, Error> {
        PexiderParams::new(
            self.a,
            self.b,
            self.big_a,
            self.big_b,
            Point::new(self.c.clone())?,
            self.constant.to_set()?,
        )
    }
}

/// A full scenario: core, constants, parameters, perturbation level, seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub core: CoreSpecLiteral,
    pub alpha: SetLiteral,
    pub beta: SetLiteral,
    pub params: ParamsLiteral,
    #[serde(default)]
    pub perturb_eps: f64,
    #[serde(default)]
    pub seed: u64,
    /// Defaults to the core family's natural domain.
    #[serde(default)]
    pub domain: Option<DomainMode>,
}

/// A scenario realised as maps, with the ground truth kept alongside.
#[derive(Debug, Clone)]
pub struct BuiltScenario {
    pub f: SetValuedMap,
    pub g: SetValuedMap,
    pub h: SetValuedMap,
    pub f0_true: SetValuedMap,
    pub alpha_true: ConvexSet,
    pub beta_true: ConvexSet,
    pub k_true: ConvexSet,
    pub params: PexiderParams,
    pub domain: DomainMode,
}

/// Realises a [`ScenarioSpec`]: builds the core and the exact solution
/// triple, derives the ground-truth constants, and applies the requested
/// perturbation (independent noise streams for F, G and H).
pub fn build_scenario(spec: &ScenarioSpec) -> Result<BuiltScenario, Error> {
    let core = spec.core.to_core()?;
    let domain = spec.domain.unwrap_or_else(|| core.default_domain());
    let f0 = gen_core(&core, domain)?;
    let alpha = spec.alpha.to_set()?;
    let beta = spec.beta.to_set()?;
    let params = spec.params.to_params()?;
    let (f, g, h) = build_solution(&f0, &alpha, &beta, &params)?;

    let f0_zero = f0.evaluate(&Point::zero(f0.domain_dim()))?;
    let k_true = alpha
        .scale(params.big_a)
        .minkowski_sum(&beta.scale(params.big_b))?
        .minkowski_sum(&f0_zero)?
        .minkowski_sum(&params.constant)?;

    let (f, g, h) = if spec.perturb_eps > 0.0 {
        (
            perturb(&f, spec.perturb_eps, splitmix64(spec.seed))?,
            perturb(&g, spec.perturb_eps, splitmix64(spec.seed ^ 1))?,
            perturb(&h, spec.perturb_eps, splitmix64(spec.seed ^ 2))?,
        )
    } else {
        (f, g, h)
    };

    Ok(BuiltScenario {
        f,
        g,
        h,
        f0_true: f0,
        alpha_true: alpha,
        beta_true: beta,
        k_true,
        params,
        domain,
    })
}
