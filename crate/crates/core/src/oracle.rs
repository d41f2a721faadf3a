//! Finite-difference reference spectra for the radial equation.
//!
//! The radial operator `−(ℏ²/2m) d²/dr² + V + L²/(2mr²)` is discretized with
//! the three-point second difference and Dirichlet ends, and the resulting
//! symmetric tridiagonal matrix is diagonalized by Sturm-sequence bisection.
//! On a logarithmic grid `r = eˣ` the substitution `u = e^{x/2}φ` followed
//! by the similarity `ψ = rφ` keeps the matrix symmetric tridiagonal.

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::angular::langer_m2;
use crate::error::{Result, WkbError};
use crate::potential::{PotentialSpec, QuantumNumbers, UnitsContext};
use crate::quantizer::{Quantizer, SearchDomain};
use crate::spectra::{ClosedFormSpectrum, SpectrumVariant};

/// Smallest admissible number of interior grid points.
pub const MIN_POINTS: usize = 200;
/// Interior points used when no grid is given.
pub const DEFAULT_POINTS: usize = 4000;
/// Relative amplitude an eigenvector may keep near the outer wall.
pub const DECAY_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

/// `points` interior nodes strictly between `r_min` and `r_max`, where the
/// Dirichlet conditions are imposed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    points: usize,
    spacing: Spacing,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize, spacing: Spacing) -> Result<Self> {
        if !(r_min > 0.0 && r_min.is_finite()) {
            return Err(WkbError::domain(format!("grid r_min must be positive, got {r_min}")));
        }
        if !(r_max > r_min && r_max.is_finite()) {
            return Err(WkbError::domain(format!("grid needs r_min < r_max, got {r_min} and {r_max}")));
        }
        if points < MIN_POINTS {
            return Err(WkbError::domain(format!("grid needs at least {MIN_POINTS} points, got {points}")));
        }
        Ok(Self { r_min, r_max, points, spacing })
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Step in `r` (uniform) or in `ln r` (logarithmic).
    pub fn step(&self) -> f64 {
        match self.spacing {
            Spacing::Uniform => (self.r_max - self.r_min) / (self.points + 1) as f64,
            Spacing::Logarithmic => (self.r_max / self.r_min).ln() / (self.points + 1) as f64,
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (1..=self.points)
            .map(|i| match self.spacing {
                Spacing::Uniform => self.r_min + i as f64 * h,
                Spacing::Logarithmic => self.r_min * (i as f64 * h).exp(),
            })
            .collect()
    }

    /// Same interval with the step halved (`P → 2P + 1`).
    pub fn refined(&self) -> Self {
        Self { points: 2 * self.points + 1, ..*self }
    }

    /// Outer end pushed out (twice the span, or twice `r_max` on a log
    /// grid) at the same step.
    pub fn widened(&self) -> Self {
        let h = self.step();
        let (r_max, span) = match self.spacing {
            Spacing::Uniform => {
                let r_max = self.r_min + 2.0 * (self.r_max - self.r_min);
                (r_max, r_max - self.r_min)
            }
            Spacing::Logarithmic => {
                let r_max = 2.0 * self.r_max;
                (r_max, (r_max / self.r_min).ln())
            }
        };
        let points = ((span / h).round() as usize).saturating_sub(1).max(self.points);
        Self { r_max, points, ..*self }
    }

    /// A grid reaching well past the outer turning point of level
    /// `n_levels − 1`: the WKB tunnelling exponent from that point to
    /// `r_max` is at least 30.
    pub fn for_levels(
        spec: &PotentialSpec,
        l: u32,
        n_levels: usize,
        units: &UnitsContext,
        points: usize,
    ) -> Result<Self> {
        let scale = spec.length_scale(units);
        let (lo, hi) = spec.radial_support();
        let spacing = match spec {
            PotentialSpec::Coulomb { .. } | PotentialSpec::Hulthen { .. } => Spacing::Logarithmic,
            _ => Spacing::Uniform,
        };
        if let PotentialSpec::Tabulated(_) = spec {
            let pad = 1e-9 * (hi - lo);
            return Self::new(lo.max(0.0) + pad, hi - pad, points, spacing);
        }
        // a Dirichlet wall at r_min raises a level by (ℏ²/2m)u'(0)²r_min
        let r_min = match spacing {
            Spacing::Logarithmic => 1e-9 * scale,
            Spacing::Uniform => 1e-12 * scale,
        };
        let r_max = outer_reach(spec, l, n_levels, units).unwrap_or(60.0 * scale * n_levels.max(1) as f64);
        Self::new(r_min, r_max.max(10.0 * scale), points, spacing)
    }
}

fn outer_reach(spec: &PotentialSpec, l: u32, n_levels: usize, units: &UnitsContext) -> Option<f64> {
    let q = Quantizer::new(*units);
    let m2 = langer_m2(l, units);
    let top = n_levels.saturating_sub(1) as u32;
    let sol = q.solve_2tp(spec, m2, top, SearchDomain::Radial, None).ok()?;
    let &(a, b) = sol.structure.intervals.last()?;
    let step = 0.02 * (b - a).max(spec.length_scale(units));
    let kappa = |r: f64| {
        let p2 = crate::potential::effective_p2(spec, m2, sol.energy, units, r).ok()?;
        Some((-p2).max(0.0).sqrt() / units.hbar())
    };
    let (mut r, mut exponent, mut prev) = (b, 0.0, 0.0);
    for _ in 0..200_000 {
        let next = kappa(r + step)?;
        exponent += 0.5 * step * (prev + next);
        prev = next;
        r += step;
        if exponent >= 30.0 {
            return Some(r);
        }
    }
    None
}

/// Centrifugal coefficient used in the discretized operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CentrifugalVariant {
    /// `l(l+1)ℏ²`
    Ll1,
    /// `(l+½)²ℏ²`
    LangerHalfSquared,
}

impl CentrifugalVariant {
    pub fn coefficient(&self, l: u32, units: &UnitsContext) -> f64 {
        match self {
            Self::Ll1 => {
                let lf = l as f64;
                lf * (lf + 1.0) * units.hbar() * units.hbar()
            }
            Self::LangerHalfSquared => langer_m2(l, units),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Ll1 => "ll1",
            Self::LangerHalfSquared => "langer",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Richardson-extrapolated eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub centrifugal_variant: CentrifugalVariant,
    /// Coarse grid actually used (after any widening).
    pub grid: RadialGrid,
    /// `|E_fine − E_coarse| / 3` per level.
    pub refinement_estimate: Vec<f64>,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
}

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e`
/// (`e[i]` couples `i` and `i+1`).
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.d.len() {
            let off = if i == 0 { 0.0 } else { self.e[i - 1] * self.e[i - 1] / q };
            q = self.d[i] - x - off;
            if q == 0.0 {
                q = -f64::EPSILON * (self.d[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.d.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.e[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.e[i].abs() } else { 0.0 };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    /// Eigenvalue `k` (zero-based, ascending) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The lowest `n` eigenvalues, ascending.
    pub fn lowest(&self, n: usize) -> Vec<f64> {
        (0..n.min(self.d.len())).map(|k| self.eigenvalue(k)).collect()
    }

    /// Eigenvector for an (accurate) eigenvalue by two steps of inverse
    /// iteration, scaled to unit maximum.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.d.len();
        let shift = lambda + 1e-12 * lambda.abs().max(1e-300);
        let mut x = vec![1.0; n];
        for _ in 0..2 {
            // Thomas algorithm on (T − σ)y = x
            let mut c = vec![0.0; n];
            let mut y = vec![0.0; n];
            let guard = |denom: f64, i: usize| {
                let tiny = f64::EPSILON * (self.d[i] - shift).abs().max(f64::MIN_POSITIVE);
                if denom.abs() < tiny {
                    tiny.copysign(denom)
                } else {
                    denom
                }
            };
            let mut denom = guard(self.d[0] - shift, 0);
            c[0] = if n > 1 { self.e[0] / denom } else { 0.0 };
            y[0] = x[0] / denom;
            for i in 1..n {
                denom = guard(self.d[i] - shift - self.e[i - 1] * c[i - 1], i);
                c[i] = if i + 1 < n { self.e[i] / denom } else { 0.0 };
                y[i] = (x[i] - self.e[i - 1] * y[i - 1]) / denom;
            }
            for i in (0..n - 1).rev() {
                y[i] -= c[i] * y[i + 1];
            }
            let norm = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            x = y.into_iter().map(|v| v / norm).collect();
        }
        x
    }
}

/// The discretized radial operator on `grid`.
pub fn radial_matrix(
    spec: &PotentialSpec,
    l: u32,
    variant: CentrifugalVariant,
    units: &UnitsContext,
    grid: &RadialGrid,
) -> Result<Tridiagonal> {
    let kin = units.hbar() * units.hbar() / (2.0 * units.mass());
    let l2 = variant.coefficient(l, units);
    let h = grid.step();
    let r = grid.nodes();
    let mut d = Vec::with_capacity(r.len());
    for &ri in &r {
        let v = spec.value(ri, units)? + l2 / (2.0 * units.mass() * ri * ri);
        d.push(match grid.spacing {
            Spacing::Uniform => 2.0 * kin / (h * h) + v,
            Spacing::Logarithmic => kin * (2.0 / (h * h) + 0.25) / (ri * ri) + v,
        });
    }
    let e = r
        .windows(2)
        .map(|w| match grid.spacing {
            Spacing::Uniform => -kin / (h * h),
            Spacing::Logarithmic => -kin / (h * h * w[0] * w[1]),
        })
        .collect();
    Ok(Tridiagonal { d, e })
}

/// Lowest `n_levels` eigenvalues on a single grid, no extrapolation.
pub fn raw_eigenvalues(
    spec: &PotentialSpec,
    l: u32,
    variant: CentrifugalVariant,
    units: &UnitsContext,
    grid: &RadialGrid,
    n_levels: usize,
) -> Result<Vec<f64>> {
    Ok(radial_matrix(spec, l, variant, units, grid)?.lowest(n_levels))
}

/// Largest relative amplitude of `u` over the outermost 2% of the grid;
/// the inner end is not checked because `u ∝ r^{l+1}` is cut off by the
/// Dirichlet wall at `r_min` by construction.
fn outer_tail(t: &Tridiagonal, lambda: f64, grid: &RadialGrid) -> f64 {
    let mut v = t.eigenvector(lambda);
    if grid.spacing == Spacing::Logarithmic {
        // stored vector is √r·u
        v.iter_mut().zip(grid.nodes()).for_each(|(x, r)| *x /= r.sqrt());
    }
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let n = v.len();
    let tail = (n / 50).max(1);
    v[n - tail..].iter().fold(0.0f64, |m, x| m.max(x.abs())) / max
}

/// Lowest `n_levels` eigenvalues of the radial operator with one
/// Richardson step between `grid` and its refinement.
pub fn diagonalize_radial(
    spec: &PotentialSpec,
    l: u32,
    variant: CentrifugalVariant,
    units: &UnitsContext,
    grid: RadialGrid,
    n_levels: usize,
) -> Result<OracleResult> {
    if n_levels == 0 {
        return Err(WkbError::domain("n_levels must be positive"));
    }
    let mut grid = grid;
    let mut coarse = None;
    for attempt in 0..2 {
        let t = radial_matrix(spec, l, variant, units, &grid)?;
        let values = t.lowest(n_levels);
        let worst = values
            .iter()
            .enumerate()
            .map(|(i, &e)| (i, outer_tail(&t, e, &grid)))
            .find(|&(_, tail)| !(tail < DECAY_THRESHOLD));
        match worst {
            None => {
                coarse = Some(values);
                break;
            }
            Some((level, _)) if attempt == 1 => {
                return Err(WkbError::DomainTooSmall { level, r_max: grid.r_max });
            }
            Some(_) => grid = grid.widened(),
        }
    }
    let coarse = coarse.expect("loop either breaks with values or returns");
    let fine = raw_eigenvalues(spec, l, variant, units, &grid.refined(), n_levels)?;
    let eigenvalues: Vec<f64> = coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
    let refinement_estimate = coarse.iter().zip(&fine).map(|(c, f)| (f - c).abs() / 3.0).collect();
    Ok(OracleResult { eigenvalues, centrifugal_variant: variant, grid, refinement_estimate, coarse, fine })
}

/// [`diagonalize_radial`] on a [`RadialGrid::for_levels`] grid. Levels
/// from the first one that fails the decay check upwards are continuum
/// states of the box; they are dropped, so fewer than `n_levels`
/// eigenvalues may come back.
pub fn diagonalize_bound(
    spec: &PotentialSpec,
    l: u32,
    variant: CentrifugalVariant,
    units: &UnitsContext,
    n_levels: usize,
    points: usize,
) -> Result<OracleResult> {
    let run = |n| {
        RadialGrid::for_levels(spec, l, n, units, points)
            .and_then(|g| diagonalize_radial(spec, l, variant, units, g, n))
    };
    match run(n_levels) {
        Err(WkbError::DomainTooSmall { level, .. }) if level > 0 => run(level),
        other => other,
    }
}

/// One row of [`compare_methods`]; `None` marks a method that failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n_r: u32,
    pub l: u32,
    pub closed: Option<f64>,
    /// Second closed form where one exists (Morse with `M`).
    pub closed_alt: Option<f64>,
    pub quadrature: Option<f64>,
    pub oracle_ll1: Option<f64>,
    pub oracle_langer: Option<f64>,
    pub errors: Vec<String>,
}

impl ComparisonRow {
    fn delta(a: Option<f64>, b: Option<f64>) -> Option<f64> {
        Some(a? - b?)
    }

    pub fn delta_quadrature_closed(&self) -> Option<f64> {
        Self::delta(self.quadrature, self.closed)
    }

    pub fn delta_alt_closed(&self) -> Option<f64> {
        Self::delta(self.closed_alt, self.closed)
    }

    pub fn delta_oracle_ll1_closed(&self) -> Option<f64> {
        Self::delta(self.oracle_ll1, self.closed)
    }

    pub fn delta_oracle_langer_closed(&self) -> Option<f64> {
        Self::delta(self.oracle_langer, self.closed)
    }

    pub fn delta_quadrature_oracle_ll1(&self) -> Option<f64> {
        Self::delta(self.quadrature, self.oracle_ll1)
    }

    /// Largest magnitude among the deltas that are available.
    pub fn max_abs_delta(&self) -> Option<f64> {
        [self.delta_quadrature_closed(), self.delta_oracle_ll1_closed(), self.delta_quadrature_oracle_ll1()]
            .into_iter()
            .flatten()
            .map(f64::abs)
            .reduce(f64::max)
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_none()
            && self.closed_alt.is_none()
            && self.quadrature.is_none()
            && self.oracle_ll1.is_none()
            && self.oracle_langer.is_none()
    }
}

fn closed_pair(spec: &PotentialSpec, units: &UnitsContext) -> (Option<ClosedFormSpectrum>, Option<ClosedFormSpectrum>) {
    match spec {
        PotentialSpec::Tabulated(_) => (None, None),
        PotentialSpec::Morse { .. } => (
            ClosedFormSpectrum::new(spec.clone(), SpectrumVariant::MorseNoCentrifugal, *units).ok(),
            ClosedFormSpectrum::new(spec.clone(), SpectrumVariant::MorseWithM, *units).ok(),
        ),
        _ => (ClosedFormSpectrum::new(spec.clone(), SpectrumVariant::Standard, *units).ok(), None),
    }
}

/// Closed form, quadrature and both oracle variants side by side.
pub fn compare_methods(
    spec: &PotentialSpec,
    l: u32,
    n_r_range: RangeInclusive<u32>,
    units: &UnitsContext,
) -> Vec<ComparisonRow> {
    compare_methods_with(spec, l, n_r_range, &Quantizer::new(*units), DEFAULT_POINTS)
}

pub fn compare_methods_with(
    spec: &PotentialSpec,
    l: u32,
    n_r_range: RangeInclusive<u32>,
    quantizer: &Quantizer,
    points: usize,
) -> Vec<ComparisonRow> {
    let units = quantizer.units;
    let (closed, alt) = closed_pair(spec, &units);
    let n_levels = *n_r_range.end() as usize + 1;
    let oracle = |variant| diagonalize_bound(spec, l, variant, &units, n_levels, points);
    let ll1 = oracle(CentrifugalVariant::Ll1);
    let langer = oracle(CentrifugalVariant::LangerHalfSquared);

    n_r_range
        .map(|n_r| {
            let mut errors = Vec::new();
            let mut keep = |tag: &str, r: Result<f64>| match r {
                Ok(v) => Some(v),
                Err(e) => {
                    errors.push(format!("{tag}: {e}"));
                    None
                }
            };
            let closed_v = match &closed {
                Some(c) => keep("closed", c.energy(n_r, l)),
                None => None,
            };
            let alt_v = match &alt {
                Some(c) => keep("closed_alt", c.energy(n_r, l)),
                None => None,
            };
            let quad =
                keep("quadrature", quantizer.quantize_2tp(spec, QuantumNumbers::radial(n_r, l)).map(|lvl| lvl.energy));
            let pick =
                |r: &Result<OracleResult>| match r {
                    Ok(o) => o.eigenvalues.get(n_r as usize).copied().ok_or_else(|| {
                        WkbError::NoBoundState(format!("level {n_r} does not decay inside the oracle box"))
                    }),
                    Err(e) => Err(e.clone()),
                };
            let o1 = keep("oracle_ll1", pick(&ll1));
            let o2 = keep("oracle_langer", pick(&langer));
            ComparisonRow {
                n_r,
                l,
                closed: closed_v,
                closed_alt: alt_v,
                quadrature: quad,
                oracle_ll1: o1,
                oracle_langer: o2,
                errors,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;

    const U: UnitsContext = UnitsContext::NATURAL;

    #[test]
    fn grid_validation() {
        assert!(RadialGrid::new(0.0, 1.0, 400, Spacing::Uniform).is_err());
        assert!(RadialGrid::new(1.0, 1.0, 400, Spacing::Uniform).is_err());
        assert!(RadialGrid::new(0.1, 1.0, 199, Spacing::Uniform).is_err());
        let g = RadialGrid::new(1e-4, 60.0, 400, Spacing::Logarithmic).unwrap();
        assert_relative_eq!(g.refined().step(), 0.5 * g.step(), max_relative = 1e-14);
        let w = RadialGrid::new(0.5, 10.5, 999, Spacing::Uniform).unwrap().widened();
        assert_eq!((w.r_max(), w.points()), (20.5, 1999));
    }

    #[test]
    fn sturm_bisection_matches_dense_solver() {
        let n = 40;
        let d: Vec<f64> = (0..n).map(|i| ((i * 7 % 11) as f64) - 3.0).collect();
        let e: Vec<f64> = (0..n - 1).map(|i| 0.5 + (i % 3) as f64).collect();
        let t = Tridiagonal { d: d.clone(), e: e.clone() };
        let mut dense = DMatrix::zeros(n, n);
        for i in 0..n {
            dense[(i, i)] = d[i];
            if i + 1 < n {
                dense[(i, i + 1)] = e[i];
                dense[(i + 1, i)] = e[i];
            }
        }
        let mut want: Vec<f64> = dense.symmetric_eigen().eigenvalues.iter().copied().collect();
        want.sort_by(f64::total_cmp);
        let got = t.lowest(n);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "{g} {w}");
        }
        let v = t.eigenvector(got[3]);
        let residual = (0..n)
            .map(|i| {
                let mut s = (d[i] - got[3]) * v[i];
                if i > 0 {
                    s += e[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += e[i] * v[i + 1];
                }
                s.abs()
            })
            .fold(0.0, f64::max);
        assert!(residual < 1e-10);
    }

    #[test]
    fn oscillator_ll1_levels() {
        let spec = PotentialSpec::oscillator(1.0).unwrap();
        let g = RadialGrid::for_levels(&spec, 0, 3, &U, DEFAULT_POINTS).unwrap();
        let o = diagonalize_radial(&spec, 0, CentrifugalVariant::Ll1, &U, g, 3).unwrap();
        for (e, want) in o.eigenvalues.iter().zip([1.5, 3.5, 5.5]) {
            assert!((e - want).abs() < 1e-4, "{e}");
        }
        assert!(o.eigenvalues.windows(2).all(|w| w[1] > w[0]));
        assert!(o.refinement_estimate.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn coulomb_ll1_ground_state() {
        let spec = PotentialSpec::coulomb(1.0).unwrap();
        let g = RadialGrid::new(1e-9, 60.0, DEFAULT_POINTS, Spacing::Logarithmic).unwrap();
        let o = diagonalize_radial(&spec, 0, CentrifugalVariant::Ll1, &U, g, 1).unwrap();
        assert!((o.eigenvalues[0] + 0.5).abs() < 1e-6, "{:?}", o);
        // the wall at r_min shifts the level by (ℏ²/2m)u'(0)²r_min = 2r_min
        let g = RadialGrid::new(1e-4, 60.0, DEFAULT_POINTS, Spacing::Logarithmic).unwrap();
        let o = diagonalize_radial(&spec, 0, CentrifugalVariant::Ll1, &U, g, 1).unwrap();
        assert!((o.eigenvalues[0] + 0.5 - 2e-4).abs() < 1e-6, "{:?}", o);
    }

    #[test]
    fn too_small_box_is_widened_then_rejected() {
        let spec = PotentialSpec::oscillator(1.0).unwrap();
        let g = RadialGrid::new(1e-3, 5.0, 400, Spacing::Uniform).unwrap();
        let o = diagonalize_radial(&spec, 0, CentrifugalVariant::Ll1, &U, g, 1).unwrap();
        assert!(o.grid.r_max() > 5.0);
        let g = RadialGrid::new(1e-3, 1.0, 400, Spacing::Uniform).unwrap();
        assert!(matches!(
            diagonalize_radial(&spec, 0, CentrifugalVariant::Ll1, &U, g, 1),
            Err(WkbError::DomainTooSmall { .. })
        ));
    }

    #[test]
    fn compare_coulomb_rows() {
        let spec = PotentialSpec::coulomb(1.0).unwrap();
        let rows = compare_methods(&spec, 0, 0..=2, &U);
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert!(row.max_abs_delta().unwrap() < 1e-3, "{row:?}");
            assert!(row.errors.is_empty());
        }
    }
}
