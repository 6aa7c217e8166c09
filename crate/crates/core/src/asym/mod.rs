//! The entropy function Φ and the closed forms built on it, with numeric
//! cross-checks and finite-`n` checks of the codimension bounds.
//!
//! Transcendental values are evaluated at [`PRECISION`] bits; comparisons
//! against exact integers use [`Real::approx_cmp`].

mod bounds;
mod partition;
mod real;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::words::{QuadraticNumber, Slope};

pub use bounds::{bounds_report, fit_power_bound, BoundEntry, BoundReport, CodimTable, PowerFit, TableConfig};
pub use partition::{hook_dim, partitions_of, Partition};
pub use real::{Real, PRECISION, RELATIVE_SLACK_BITS};

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

pub(crate) fn biguint_to_real(v: &BigUint) -> Real {
    let digits = v.to_u64_digits();
    let base = Real::from_u128(1u128 << 64);
    digits
        .iter()
        .rev()
        .fold(Real::zero(), |acc, &d| acc.mul(&base).add(&Real::from_u128(d as u128)))
}

/// A point of the closed simplex `{x ∈ ℝ^d : x_i ≥ 0, Σ x_i = 1}`, `d ≥ 2`.
#[derive(Clone, Debug)]
pub struct SimplexPoint(Vec<Real>);

impl SimplexPoint {
    /// Coordinates must be nonnegative and sum to 1 within `1e−12`.
    pub fn new(coords: Vec<Real>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::invalid("a simplex point needs at least two coordinates"));
        }
        if coords.iter().any(|x| x.is_negative()) {
            return Err(Error::invalid("simplex coordinates must be nonnegative"));
        }
        let sum = coords.iter().fold(Real::zero(), |s, x| s.add(x));
        if (sum.to_f64() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("simplex coordinates must sum to 1"));
        }
        Ok(SimplexPoint(coords))
    }

    pub fn from_f64s(coords: &[f64]) -> Result<Self> {
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("simplex coordinates must be finite"));
        }
        SimplexPoint::new(coords.iter().map(|&x| Real::from_f64(x)).collect())
    }

    /// `(x, 1 − x)` for `0 ≤ x ≤ 1`.
    pub fn binary(x: Real) -> Result<Self> {
        let y = Real::one().sub(&x);
        SimplexPoint::new(vec![x, y])
    }

    pub fn coordinates(&self) -> &[Real] {
        &self.0
    }
}

/// `Φ(x) = Π x_i^{−x_i} = exp(−Σ x_i ln x_i)`, with `0^0 = 1`.
pub fn phi(point: &SimplexPoint) -> Real {
    let s = point
        .0
        .iter()
        .filter(|x| !x.is_zero())
        .fold(Real::zero(), |s, x| s.add(&x.mul(&x.ln())));
    s.neg().exp()
}

/// `Φ(x, 1 − x)` for `0 ≤ x ≤ 1`.
pub fn phi2(x: &Real) -> Result<Real> {
    Ok(phi(&SimplexPoint::binary(x.clone())?))
}

/// `β = 1/(m + α)`, exactly.
pub fn beta_exact(m: u32, alpha: &Slope) -> Result<QuadraticNumber> {
    if m < 2 {
        return Err(Error::invalid("m must be at least 2"));
    }
    let a = alpha.number();
    if a.signum() == std::cmp::Ordering::Less || a >= QuadraticNumber::from_integer(1) {
        return Err(Error::invalid("the slope must lie in [0, 1)"));
    }
    Ok(a.add(&QuadraticNumber::from_integer(m as i128)).recip())
}

/// `β = 1/(m + α)`.
pub fn beta(m: u32, alpha: &Slope) -> Result<Real> {
    Ok(Real::from_quadratic(&beta_exact(m, alpha)?))
}

/// `β` of an algebra.
pub fn beta_of(spec: &AlgebraSpec) -> Real {
    Real::from_quadratic(&spec.beta())
}

/// `n`-th roots of a sequence and their first differences.
#[derive(Clone, Debug, Serialize)]
pub struct RootSequence {
    pub ns: Vec<usize>,
    pub roots: Vec<Real>,
    pub differences: Vec<Real>,
}

/// `c_n^{1/n}` for `values[i] = c_{start + i}`.
pub fn root_sequence(start: usize, values: &[BigUint]) -> Result<RootSequence> {
    if start == 0 {
        return Err(Error::invalid("the sequence must be indexed from n ≥ 1"));
    }
    let mut roots = Vec::with_capacity(values.len());
    for (i, v) in values.iter().enumerate() {
        if v == &BigUint::ZERO {
            return Err(Error::invalid(format!("entry at n = {} is not positive", start + i)));
        }
        let n = Real::from_u128((start + i) as u128);
        roots.push(biguint_to_real(v).ln().div(&n).exp());
    }
    let differences = roots.windows(2).map(|w| w[1].sub(&w[0])).collect();
    Ok(RootSequence {
        ns: (start..start + values.len()).collect(),
        roots,
        differences,
    })
}

/// `C(n, k)` between its Stirling bounds `(1/n²)Φ((n−k)/n)^n` and `n·Φ((n−k)/n)^n`.
#[derive(Clone, Debug, Serialize)]
pub struct Sandwich {
    pub n: usize,
    pub k: usize,
    pub lower: Real,
    #[serde(serialize_with = "crate::codim::as_string")]
    pub binom: BigUint,
    pub upper: Real,
    pub holds: bool,
}

pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut r = BigUint::from(1u32);
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

/// `Φ((n − k)/n)^n`.
pub fn phi_power(n: usize, k: usize) -> Result<Real> {
    if n == 0 || k > n {
        return Err(Error::invalid("need 0 ≤ k ≤ n and n ≥ 1"));
    }
    Ok(phi2(&Real::from_ratio((n - k) as i128, n as i128))?.powi(n))
}

pub fn binomial_phi_sandwich(n: usize, k: usize) -> Result<Sandwich> {
    let p = phi_power(n, k)?;
    let nn = Real::from_u128(n as u128);
    let lower = p.div(&nn.mul(&nn));
    let upper = p.mul(&nn);
    let binom = binomial_big(n, k);
    let b = biguint_to_real(&binom);
    let holds = lower.le(&b) && b.le(&upper);
    Ok(Sandwich {
        n,
        k,
        lower,
        binom,
        upper,
        holds,
    })
}

fn check_gamma(gamma: f64) -> Result<Real> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::invalid("γ must be a positive finite number"));
    }
    Ok(Real::from_f64(gamma))
}

/// The maximum of `Φ(x₁, x₂, x₃)` on the slice `x₃ = γx₂`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstrainedMax {
    pub gamma: f64,
    /// `ρ = γ^{γ/(1+γ)}/(1+γ)`.
    pub rho: Real,
    /// The maximizing first coordinate `x̃ = ρ/(1+ρ)`.
    pub xtilde: Real,
    /// `(1+γ)/γ^{γ/(1+γ)} + 1`.
    pub maximum: Real,
    /// `1/x̃`, which equals the maximum.
    pub inverse_xtilde: Real,
}

pub fn lemma9_max(gamma: f64) -> Result<ConstrainedMax> {
    let g = check_gamma(gamma)?;
    let one = Real::one();
    let g1 = one.add(&g);
    let power = g.powf(&g.div(&g1));
    let rho = power.div(&g1);
    let xtilde = rho.div(&one.add(&rho));
    let maximum = g1.div(&power).add(&one);
    let inverse_xtilde = one.div(&xtilde);
    Ok(ConstrainedMax {
        gamma,
        rho,
        xtilde,
        maximum,
        inverse_xtilde,
    })
}

/// Smallest argument tolerance accepted by [`numeric_max_phi_constrained`]:
/// about the square root of the double-precision epsilon, below which a
/// derivative-free search cannot resolve the maximizer.
pub const MIN_NUMERIC_TOL: f64 = 1e-8;

/// `ln Φ(x, (1−x)/(1+γ), γ(1−x)/(1+γ))` in double precision.
fn constrained_entropy(x: f64, gamma: f64) -> f64 {
    let x2 = (1.0 - x) / (1.0 + gamma);
    let x3 = gamma * x2;
    [x, x2, x3].iter().filter(|&&t| t > 0.0).map(|&t| -t * t.ln()).sum()
}

/// Golden-section maximization of `Φ` on the slice `x₃ = γx₂` over the
/// first coordinate; returns `(argmax, maximum)`.
pub fn numeric_max_phi_constrained(gamma: f64, tol: f64) -> Result<(f64, f64)> {
    check_gamma(gamma)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if tol < MIN_NUMERIC_TOL {
        return Err(Error::invalid(format!(
            "tolerance {tol:e} is below {MIN_NUMERIC_TOL:e}, the resolution of double-precision search"
        )));
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (constrained_entropy(c, gamma), constrained_entropy(d, gamma));
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = constrained_entropy(c, gamma);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = constrained_entropy(d, gamma);
        }
    }
    let x = (lo + hi) / 2.0;
    Ok((x, constrained_entropy(x, gamma).exp()))
}

/// Both sides of `(1+γ)/γ^{γ/(1+γ)} = Φ(θ)`, `θ = γ/(γ+1)`.
#[derive(Clone, Debug, Serialize)]
pub struct PhiIdentity {
    pub gamma: f64,
    pub theta: Real,
    pub lhs: Real,
    pub rhs: Real,
    pub difference: Real,
}

pub fn remark1_identity(gamma: f64) -> Result<PhiIdentity> {
    let g = check_gamma(gamma)?;
    let g1 = Real::one().add(&g);
    let theta = g.div(&g1);
    let lhs = g1.div(&g.powf(&theta));
    let rhs = phi2(&theta)?;
    let difference = lhs.sub(&rhs).abs();
    Ok(PhiIdentity {
        gamma,
        theta,
        lhs,
        rhs,
        difference,
    })
}

/// The identity on a grid of `γ`, with the monotonicity of `Φ(θ)` in `γ`
/// over the grid points in `(0, 1]`.
#[derive(Clone, Debug, Serialize)]
pub struct PhiIdentityGrid {
    pub entries: Vec<PhiIdentity>,
    pub max_difference: Real,
    pub strictly_increasing: bool,
}

pub fn phi_identity_grid(gammas: &[f64]) -> Result<PhiIdentityGrid> {
    let entries = gammas
        .iter()
        .map(|&g| remark1_identity(g))
        .collect::<Result<Vec<_>>>()?;
    let max_difference = entries.iter().fold(Real::zero(), |m, e| m.max(&e.difference));
    let mut unit: Vec<&PhiIdentity> = entries.iter().filter(|e| e.gamma <= 1.0).collect();
    unit.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
    let strictly_increasing = unit
        .windows(2)
        .all(|w| w[0].gamma == w[1].gamma || w[0].rhs.lt(&w[1].rhs));
    Ok(PhiIdentityGrid {
        entries,
        max_difference,
        strictly_increasing,
    })
}

/// `γ ∈ {0.1, 0.2, …, 2.0}`.
pub fn gamma_grid() -> Vec<f64> {
    (1..=20).map(|i| i as f64 / 10.0).collect()
}
