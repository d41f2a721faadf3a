//! Turning points, phase-space integrals and energy root-finding.
//!
//! Two quantization conditions are supported:
//!
//! * one classically allowed interval: `∫ p dr = πℏ(n_r + ½)`;
//! * `k` disjoint intervals summed: `Σᵢ ∫ p dr = πℏ(N + μ/4)` with the
//!   Maslov index `μ = 2k` and `N` the total node count over all intervals.
//!
//! `p = √(2m(E − V) − M²/r²)`; with `M² > 0` the point `r = 0` is never
//! inside an allowed interval.

use std::f64::consts::PI;

use serde::Serialize;

use crate::angular::langer_m2;
use crate::error::{Result, WkbError};
use crate::potential::{EffectiveMomentumSquared, PotentialSpec, QuantumNumbers, UnitsContext};
use crate::quadrature::{integrate_between_turning_points, Tolerance, MAX_ORDER};

/// Numerical knobs shared by the quantizers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative agreement between successive Gauss–Legendre orders.
    pub quad_rel: f64,
    /// Highest Gauss–Legendre order before reporting failure.
    pub quad_max_order: usize,
    /// Allowed quantization-condition mismatch, in units of πℏ.
    pub root_residual: f64,
    /// Points in the initial turning-point scan.
    pub scan_points: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { quad_rel: 1e-12, quad_max_order: MAX_ORDER, root_residual: 1e-9, scan_points: 2048 }
    }
}

/// Where to look for classically allowed intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SearchDomain {
    /// `(1e−6, 1e3)` times the potential's length scale, widened outwards
    /// while the momentum is still real at the outer edge.
    Radial,
    /// An explicit `(r_min, r_max)` with `r_min > 0`.
    RadialRange(f64, f64),
    /// A range that may include `r < 0`, for potentials that continue to
    /// negative `r`. The point `r = 0` is excluded when `M² > 0`.
    Signed(f64, f64),
}

/// Ordered classically allowed intervals at one energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurningStructure {
    pub energy: f64,
    pub intervals: Vec<(f64, f64)>,
}

impl TurningStructure {
    /// Number of intervals (cuts).
    pub fn k(&self) -> usize {
        self.intervals.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseIntegral {
    pub value: f64,
    pub energy: f64,
    pub interval_values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    #[serde(rename = "quadrature_2tp")]
    Quadrature2TP,
    QuadratureMultiWell,
    Oracle,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature2TP => "quadrature_2tp",
            Method::QuadratureMultiWell => "quadrature_multiwell",
            Method::Oracle => "oracle",
        }
    }
}

/// A bound-state energy and how well it satisfies its quantization
/// condition (`residual` is in units of πℏ; zero for closed forms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub method: Method,
    pub residual: f64,
}

/// Raw root-finding result before it is tagged with quantum numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub energy: f64,
    pub residual: f64,
    pub structure: TurningStructure,
}

/// Phase-integral quantizer for a fixed choice of units and tolerances.
#[derive(Debug, Clone, Copy, Default)]
pub struct Quantizer {
    pub units: UnitsContext,
    pub tol: Tolerances,
}

struct Scan {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Quantizer {
    pub fn new(units: UnitsContext) -> Self {
        Self { units, tol: Tolerances::default() }
    }

    pub fn with_tolerances(units: UnitsContext, tol: Tolerances) -> Self {
        Self { units, tol }
    }

    /// Relative target from the tolerances, with an absolute floor well
    /// under the root tolerance so near-empty wells (action ~ rounding
    /// noise) still converge.
    pub(crate) fn quad_tolerance(&self) -> Tolerance {
        Tolerance {
            rel: self.tol.quad_rel,
            abs: 1e-4 * self.tol.root_residual * PI * self.units.hbar(),
            max_order: self.tol.quad_max_order,
        }
    }

    fn p2<'a>(&self, spec: &'a PotentialSpec, m2: f64, energy: f64) -> EffectiveMomentumSquared<'a> {
        EffectiveMomentumSquared::new(spec, m2, energy, self.units)
    }

    /// Splits the domain into scan segments: logarithmic on `r > 0`,
    /// uniform on `r < 0` (or uniform throughout when `M² = 0` and the
    /// domain straddles the origin).
    fn segments(&self, spec: &PotentialSpec, m2: f64, energy: f64, domain: SearchDomain) -> Result<Vec<Scan>> {
        let scale = spec.length_scale(&self.units);
        let (sup_lo, sup_hi) = spec.radial_support();
        match domain {
            SearchDomain::Radial => {
                let mut lo = (1e-6 * scale).max(sup_lo);
                let mut hi = (1e3 * scale).min(sup_hi);
                let f = self.p2(spec, m2, energy);
                // widen while the momentum is still real at an edge
                let mut guard = 0;
                while hi < sup_hi && f.value(hi)? > 0.0 && guard < 12 {
                    hi = (hi * 10.0).min(sup_hi);
                    guard += 1;
                }
                guard = 0;
                while lo > sup_lo && f.value(lo)? > 0.0 && guard < 12 {
                    lo = (lo / 10.0).max(sup_lo);
                    guard += 1;
                }
                Ok(vec![Scan { lo, hi, log: true }])
            }
            SearchDomain::RadialRange(lo, hi) => {
                if !(lo > 0.0 && hi > lo) {
                    return Err(WkbError::domain(format!("invalid radial search range ({lo}, {hi})")));
                }
                Ok(vec![Scan { lo, hi, log: true }])
            }
            SearchDomain::Signed(lo, hi) => {
                if !(hi > lo) {
                    return Err(WkbError::domain(format!("invalid search range ({lo}, {hi})")));
                }
                if lo < 0.0 && !spec.supports_signed_domain() {
                    return Err(WkbError::domain(format!(
                        "the {} potential does not continue to r < 0",
                        spec.kind().name()
                    )));
                }
                let eps = 1e-6 * scale;
                if m2 == 0.0 || lo >= 0.0 || hi <= 0.0 {
                    if lo > 0.0 {
                        return Ok(vec![Scan { lo, hi, log: true }]);
                    }
                    return Ok(vec![Scan { lo, hi, log: false }]);
                }
                Ok(vec![Scan { lo, hi: -eps, log: false }, Scan { lo: eps, hi, log: true }])
            }
        }
    }

    fn grid(seg: &Scan, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if seg.log {
                    (seg.lo.ln() + t * (seg.hi.ln() - seg.lo.ln())).exp().clamp(seg.lo, seg.hi)
                } else {
                    (seg.lo + t * (seg.hi - seg.lo)).clamp(seg.lo, seg.hi)
                }
            })
            .collect()
    }

    /// Bisects a sign change of `p²` between `a` and `b` down to adjacent
    /// floats.
    fn polish(&self, f: &EffectiveMomentumSquared<'_>, mut a: f64, mut b: f64) -> Result<f64> {
        let fa = f.value_signed(a)?;
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b {
                break;
            }
            let fm = f.value_signed(mid)?;
            if fm == 0.0 {
                return Ok(mid);
            }
            if (fm > 0.0) == (fa > 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(0.5 * (a + b))
    }

    fn scan_intervals(&self, f: &EffectiveMomentumSquared<'_>, segments: &[Scan], n: usize) -> Result<Vec<(f64, f64)>> {
        let mut intervals = Vec::new();
        for seg in segments {
            let mut xs = Self::grid(seg, n);
            let mut vals = xs.iter().map(|&x| f.value_signed(x)).collect::<Result<Vec<_>>>()?;
            if vals[0] > 0.0 || vals[vals.len() - 1] > 0.0 {
                return Err(WkbError::domain(format!(
                    "classically allowed region at E = {} reaches the search boundary [{}, {}]",
                    f.energy, seg.lo, seg.hi
                )));
            }
            // narrow wells can hide between grid points: refine every
            // discrete local maximum of p² that is still negative
            let mut extra = Vec::new();
            for i in 1..xs.len() - 1 {
                if vals[i] <= 0.0 && vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] {
                    let peak = |x| f.value_signed(x).unwrap_or(f64::NEG_INFINITY);
                    let (x, v) = golden_max(peak, xs[i - 1], xs[i + 1], seg.log);
                    if v > 0.0 && x != xs[i] {
                        extra.push((x, v));
                    }
                }
            }
            if !extra.is_empty() {
                let mut merged: Vec<(f64, f64)> = xs.iter().copied().zip(vals.iter().copied()).chain(extra).collect();
                merged.sort_by(|a, b| a.0.total_cmp(&b.0));
                (xs, vals) = merged.into_iter().unzip();
            }
            let mut left = None;
            for i in 0..xs.len() - 1 {
                let (v0, v1) = (vals[i], vals[i + 1]);
                if v0 <= 0.0 && v1 > 0.0 {
                    left = Some(self.polish(f, xs[i], xs[i + 1])?);
                } else if v0 > 0.0 && v1 <= 0.0 {
                    let right = self.polish(f, xs[i], xs[i + 1])?;
                    let l = left.take().expect("scan starts in a forbidden region");
                    intervals.push((l, right));
                }
            }
        }
        Ok(intervals)
    }

    /// All classically allowed intervals at energy `energy`.
    pub fn find_turning_structure(
        &self,
        spec: &PotentialSpec,
        m2: f64,
        energy: f64,
        domain: SearchDomain,
    ) -> Result<TurningStructure> {
        let f = self.p2(spec, m2, energy);
        let segments = self.segments(spec, m2, energy, domain)?;
        let mut n = self.tol.scan_points;
        let mut intervals = self.scan_intervals(&f, &segments, n)?;
        // double the grid until the interval count is stable
        loop {
            let finer = self.scan_intervals(&f, &segments, 2 * n)?;
            if finer.len() == intervals.len() || n >= 1 << 17 {
                intervals = finer;
                break;
            }
            intervals = finer;
            n *= 2;
        }
        if intervals.is_empty() {
            return Err(WkbError::NoAllowedRegion { energy });
        }
        Ok(TurningStructure { energy, intervals })
    }

    /// `∫ p dr` over each interval of `structure`, summed.
    pub fn phase_integral(&self, spec: &PotentialSpec, m2: f64, structure: &TurningStructure) -> Result<PhaseIntegral> {
        let f = self.p2(spec, m2, structure.energy);
        let mut interval_values = Vec::with_capacity(structure.intervals.len());
        for &(a, b) in &structure.intervals {
            interval_values.push(self.interval_action(&f, a, b)?);
        }
        Ok(PhaseIntegral { value: interval_values.iter().sum(), energy: structure.energy, interval_values })
    }

    /// Action over one interval. Intervals spanning many decades away from
    /// the origin are cut into pieces of bounded ratio so the `1/r²` pole
    /// stays far from every piece.
    pub(crate) fn interval_action(&self, f: &EffectiveMomentumSquared<'_>, a: f64, b: f64) -> Result<f64> {
        let integrand = |r: f64| f.value_signed(r).map(|v| v.max(0.0).sqrt()).unwrap_or(0.0);
        let mut total = 0.0;
        for (lo, hi) in graded_pieces(a, b) {
            let q = integrate_between_turning_points("phase_integral", lo, hi, self.quad_tolerance(), integrand)?;
            total += q.value;
        }
        Ok(total)
    }

    /// Phase integral at `energy`, zero when there is no allowed region.
    fn action_at(
        &self,
        spec: &PotentialSpec,
        m2: f64,
        energy: f64,
        domain: SearchDomain,
    ) -> Result<(f64, Option<TurningStructure>)> {
        match self.find_turning_structure(spec, m2, energy, domain) {
            Ok(s) => Ok((self.phase_integral(spec, m2, &s)?.value, Some(s))),
            Err(WkbError::NoAllowedRegion { .. }) => Ok((0.0, None)),
            Err(e) => Err(e),
        }
    }

    /// Minimum of `V + M²/(2m r²)` over the domain.
    pub fn effective_minimum(&self, spec: &PotentialSpec, m2: f64, domain: SearchDomain) -> Result<f64> {
        let m = self.units.mass();
        let veff = |r: f64| -> f64 {
            match spec.value_continued(r, &self.units) {
                Ok(v) if r != 0.0 => v + m2 / (2.0 * m * r * r),
                Ok(v) if m2 == 0.0 => v,
                _ => f64::INFINITY,
            }
        };
        // energy only matters for widening the radial range; use a deep one
        let segments = match domain {
            SearchDomain::Radial => {
                let scale = spec.length_scale(&self.units);
                let (s_lo, s_hi) = spec.radial_support();
                vec![Scan { lo: (1e-6 * scale).max(s_lo), hi: (1e3 * scale).min(s_hi), log: true }]
            }
            _ => self.segments(spec, m2, f64::NEG_INFINITY, domain)?,
        };
        let mut best = (f64::INFINITY, 0.0, None::<(f64, f64, bool)>);
        for seg in &segments {
            let xs = Self::grid(seg, 4 * self.tol.scan_points);
            for i in 0..xs.len() {
                let v = veff(xs[i]);
                if v < best.0 {
                    let lo = xs[i.saturating_sub(1)];
                    let hi = xs[(i + 1).min(xs.len() - 1)];
                    best = (v, xs[i], Some((lo, hi, seg.log)));
                }
            }
        }
        let (_, _, Some((lo, hi, log))) = best else {
            return Err(WkbError::domain("effective potential is not finite anywhere in the domain"));
        };
        let (_, neg) = golden_max(|x| -veff(x), lo, hi, log);
        Ok((-neg).min(best.0))
    }

    /// Root of `F(E) − target` for an increasing phase function `F`.
    ///
    /// Starts from the effective minimum; the upper end is either the
    /// dissociation threshold approached geometrically or, for confining
    /// potentials, grown geometrically.
    fn solve(
        &self,
        spec: &PotentialSpec,
        m2: f64,
        target: f64,
        domain: SearchDomain,
        bracket: Option<(f64, f64)>,
        operation: &'static str,
    ) -> Result<(f64, f64, TurningStructure)> {
        let hbar = self.units.hbar();
        let eval = |e: f64| self.action_at(spec, m2, e, domain);

        let (mut lo, mut hi) = match bracket {
            Some(b) => b,
            None => {
                let e_min = self.effective_minimum(spec, m2, domain)?;
                let lo = e_min + 1e-12 * e_min.abs().max(f64::MIN_POSITIVE);
                let scale = spec.length_scale(&self.units);
                let natural = hbar * hbar / (self.units.mass() * scale * scale);
                let hi = match spec.asymptote() {
                    Some(threshold) if threshold > e_min => {
                        let gap = threshold - e_min;
                        let mut found = None;
                        for j in 1..=60 {
                            let e = threshold - gap * 0.25f64.powi(j);
                            if e <= lo {
                                continue;
                            }
                            match eval(e) {
                                Ok((v, _)) if v > target => {
                                    found = Some(e);
                                    break;
                                }
                                Ok(_) => {}
                                Err(WkbError::QuadratureFailure { .. }) | Err(WkbError::Domain(_)) => break,
                                Err(err) => return Err(err),
                            }
                        }
                        match found {
                            Some(e) => e,
                            None => {
                                return Err(WkbError::NoBoundState(format!(
                                    "{operation}: phase integral stays below {:.6} πℏ up to the dissociation threshold {threshold}",
                                    target / (PI * hbar)
                                )))
                            }
                        }
                    }
                    Some(_) => return Err(WkbError::NoBoundState(format!("{operation}: no well below the threshold"))),
                    None => {
                        let step = natural.max(e_min.abs()).max(f64::MIN_POSITIVE);
                        let mut found = None;
                        for j in 0..200 {
                            let e = e_min + step * 2f64.powi(j);
                            if eval(e)?.0 > target {
                                found = Some(e);
                                break;
                            }
                        }
                        found.ok_or_else(|| WkbError::RootNotConverged {
                            operation,
                            detail: "could not bracket the quantization condition".into(),
                        })?
                    }
                };
                (lo, hi)
            }
        };
        let mut f_lo = eval(lo)?.0 - target;
        let mut f_hi = eval(hi)?.0 - target;
        if f_lo > 0.0 || f_hi < 0.0 {
            return Err(WkbError::NoBoundState(format!(
                "{operation}: quantization condition not bracketed by [{lo}, {hi}]"
            )));
        }

        // bisection, then Illinois-modified regula falsi for the polish
        let tol_abs = self.tol.root_residual * PI * hbar;
        for _ in 0..60 {
            if (hi - lo) <= 1e-6 * lo.abs().max(hi.abs()) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let f_mid = eval(mid)?.0 - target;
            if f_mid <= 0.0 {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        let mut side = 0i8;
        let mut best = if f_lo.abs() < f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
        for _ in 0..100 {
            if best.1.abs() <= 1e-3 * tol_abs {
                break;
            }
            let mut x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            if !(x > lo && x < hi) {
                x = 0.5 * (lo + hi);
            }
            if x == lo || x == hi {
                break;
            }
            let fx = eval(x)?.0 - target;
            if fx.abs() < best.1.abs() {
                best = (x, fx);
            }
            if fx <= 0.0 {
                lo = x;
                f_lo = fx;
                if side == -1 {
                    f_hi *= 0.5;
                }
                side = -1;
            } else {
                hi = x;
                f_hi = fx;
                if side == 1 {
                    f_lo *= 0.5;
                }
                side = 1;
            }
        }
        let (energy, resid) = best;
        let residual = resid / (PI * hbar);
        if residual.abs() >= self.tol.root_residual {
            return Err(WkbError::RootNotConverged {
                operation,
                detail: format!("residual {residual:e} πℏ at E = {energy}"),
            });
        }
        let structure = self.find_turning_structure(spec, m2, energy, domain)?;
        Ok((energy, residual, structure))
    }

    /// Single-interval condition `∫ p dr = πℏ(n_r + ½)` at a given `M²`.
    pub fn solve_2tp(
        &self,
        spec: &PotentialSpec,
        m2: f64,
        n_r: u32,
        domain: SearchDomain,
        bracket: Option<(f64, f64)>,
    ) -> Result<Solution> {
        let target = PI * self.units.hbar() * (n_r as f64 + 0.5);
        let (energy, residual, structure) = self.solve(spec, m2, target, domain, bracket, "quantize_2tp")?;
        if structure.k() != 1 {
            return Err(WkbError::StructureMismatch { expected: 1, found: structure.k() });
        }
        Ok(Solution { energy, residual, structure })
    }

    /// [`Quantizer::solve_2tp`] with `M² = (l + ½)²ℏ²`.
    pub fn quantize_2tp(&self, spec: &PotentialSpec, qn: QuantumNumbers) -> Result<EnergyLevel> {
        let m2 = langer_m2(qn.l(), &self.units);
        let s = self.solve_2tp(spec, m2, qn.n_r(), SearchDomain::Radial, None)?;
        Ok(EnergyLevel { qn, energy: s.energy, method: Method::Quadrature2TP, residual: s.residual })
    }

    /// Multi-interval condition `Σ ∫ p dr = πℏ(N + k/2)` where `N` is the
    /// total node count over the `k` intervals.
    ///
    /// The summed action is continuous and increasing in `E` (a new interval
    /// opens with zero action), so the root is unique; if the structure at
    /// that root does not have `k` intervals, no energy with `k` intervals
    /// satisfies the condition either.
    pub fn solve_multiwell(
        &self,
        spec: &PotentialSpec,
        m2: f64,
        n_total: u32,
        k: usize,
        domain: SearchDomain,
    ) -> Result<Solution> {
        let target = PI * self.units.hbar() * (n_total as f64 + 0.5 * k as f64);
        let (energy, residual, structure) = self.solve(spec, m2, target, domain, None, "quantize_multiwell")?;
        if structure.k() != k {
            return Err(WkbError::StructureMismatch { expected: k, found: structure.k() });
        }
        Ok(Solution { energy, residual, structure })
    }

    /// Multi-well level with `n_r` nodes on each of the `k` intervals
    /// (`N = k·n_r`) and `M² = (l + ½)²ℏ²`.
    pub fn quantize_multiwell(
        &self,
        spec: &PotentialSpec,
        qn: QuantumNumbers,
        k: usize,
        domain: SearchDomain,
    ) -> Result<EnergyLevel> {
        let m2 = langer_m2(qn.l(), &self.units);
        let s = self.solve_multiwell(spec, m2, k as u32 * qn.n_r(), k, domain)?;
        Ok(EnergyLevel { qn, energy: s.energy, method: Method::QuadratureMultiWell, residual: s.residual })
    }
}

/// Pieces of `[a, b]` whose end ratios stay below 8 when the interval lies
/// on one side of the origin.
fn graded_pieces(a: f64, b: f64) -> Vec<(f64, f64)> {
    const RATIO: f64 = 8.0;
    if a > 0.0 && b / a > 2.0 * RATIO {
        let mut cuts = vec![a];
        let mut x = a * RATIO;
        while x * 2.0 < b {
            cuts.push(x);
            x *= RATIO;
        }
        cuts.push(b);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    } else if b < 0.0 && a / b > 2.0 * RATIO {
        graded_pieces(-b, -a).into_iter().rev().map(|(l, h)| (-h, -l)).collect()
    } else {
        vec![(a, b)]
    }
}

/// Golden-section maximization of `f` on `[a, b]` (in `ln x` when `log`).
fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, log: bool) -> (f64, f64) {
    let (to, from): (fn(f64) -> f64, fn(f64) -> f64) = if log { (f64::ln, f64::exp) } else { (|x| x, |x| x) };
    let g = |t: f64| f(from(t));
    let inv = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (to(a), to(b));
    let mut c = hi - inv * (hi - lo);
    let mut d = lo + inv * (hi - lo);
    let (mut fc, mut fd) = (g(c), g(d));
    for _ in 0..200 {
        if (hi - lo).abs() <= 1e-15 * (lo.abs() + hi.abs()).max(1e-300) {
            break;
        }
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv * (hi - lo);
            fc = g(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv * (hi - lo);
            fd = g(d);
        }
    }
    let t = 0.5 * (lo + hi);
    (from(t), g(t))
}
