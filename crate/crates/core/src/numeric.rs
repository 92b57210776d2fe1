//! Floating-point evaluators for the explicit leaf-preserving maps.
//!
//! All maps here keep horizontal lines: the returned `y` is the input `y`
//! bit for bit.
//!
//! `sigma` is the smooth odd diffeomorphism `t / sqrt(1 + t^2)` of the line
//! onto `(-1, 1)`. [`merge_homeo_raw`] squeezes the line `y = 0` onto
//! `(-1, 1)` and, on every other line, follows `sigma` on `|x| <= 1/|y|` and
//! its tangent lines outside. That map moves points arbitrarily close to
//! `|y| = 1`, so [`merge_homeo_banded`] blends it with the identity to get a
//! map supported in `|y| < 1/2`, and [`chain_homeo`] repeats the banded map
//! around every even integer level.

use std::fmt::Write as _;

use crate::model::AffineMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("point ({x}, {y}) is outside the domain")]
    OutOfDomain { x: f64, y: f64 },
    #[error("time parameter {0} is outside [0, 1]")]
    BadT(f64),
    #[error("invalid piecewise-linear map: {0}")]
    BadMap(String),
    #[error("invalid grid: {0}")]
    BadGrid(String),
}

impl NumericError {
    pub fn code(&self) -> &'static str {
        match self {
            NumericError::OutOfDomain { .. } => "OUT_OF_DOMAIN",
            NumericError::BadT(_) => "BAD_T",
            NumericError::BadMap(_) => "BAD_MAP",
            NumericError::BadGrid(_) => "BAD_GRID",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    fn check_finite(self) -> Result<Self, NumericError> {
        if self.x.is_finite() && self.y.is_finite() {
            Ok(self)
        } else {
            Err(NumericError::OutOfDomain { x: self.x, y: self.y })
        }
    }

    fn check_strip(self) -> Result<Self, NumericError> {
        let p = self.check_finite()?;
        if p.y.abs() < 1.0 {
            Ok(p)
        } else {
            Err(NumericError::OutOfDomain { x: p.x, y: p.y })
        }
    }
}

pub fn sigma(t: f64) -> f64 {
    t / (1.0 + t * t).sqrt()
}

pub fn sigma_prime(t: f64) -> f64 {
    (1.0 + t * t).powf(-1.5)
}

/// The strip-merging homeomorphism of `R x (-1, 1)` onto the strip with the
/// two rays `|x| >= 1` of the line `y = 0` removed.
pub fn merge_homeo_raw(p: Point2) -> Result<Point2, NumericError> {
    let p = p.check_strip()?;
    Ok(Point2 { x: raw_x(p.x, p.y), y: p.y })
}

fn raw_x(x: f64, y: f64) -> f64 {
    if y == 0.0 {
        return sigma(x);
    }
    let knot = 1.0 / y.abs();
    if x <= -knot {
        sigma_prime(-knot) * (x + knot) + sigma(-knot)
    } else if x <= knot {
        sigma(x)
    } else {
        sigma_prime(knot) * (x - knot) + sigma(knot)
    }
}

/// `rho(y) x + (1 - rho(y)) raw(x, y)` with `rho(y) = min(2|y|, 1)`.
pub fn merge_homeo_banded(p: Point2) -> Result<Point2, NumericError> {
    let p = p.check_strip()?;
    if p.y.abs() >= 0.5 {
        return Ok(p);
    }
    let rho = 2.0 * p.y.abs();
    Ok(Point2 { x: rho * p.x + (1.0 - rho) * raw_x(p.x, p.y), y: p.y })
}

/// Banded merge map repeated around every line `y = 2n`.
pub fn chain_homeo(p: Point2) -> Result<Point2, NumericError> {
    let p = p.check_finite()?;
    let level = 2.0 * (p.y / 2.0).round_ties_even();
    let local = p.y - level;
    if local.abs() >= 0.5 {
        return Ok(p);
    }
    let q = merge_homeo_banded(Point2 { x: p.x, y: local })?;
    Ok(Point2 { x: q.x, y: p.y })
}

/// Monotone piecewise-linear map of the line, continued affinely past its
/// first and last breakpoints with the adjacent slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct PlMonotoneMap {
    inputs: Vec<f64>,
    outputs: Vec<f64>,
}

impl PlMonotoneMap {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, NumericError> {
        if points.len() < 2 {
            return Err(NumericError::BadMap("need at least two breakpoints".into()));
        }
        if points.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(NumericError::BadMap("breakpoints must be finite".into()));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(NumericError::BadMap("inputs must be strictly increasing".into()));
        }
        let up = points.windows(2).all(|w| w[1].1 > w[0].1);
        let down = points.windows(2).all(|w| w[1].1 < w[0].1);
        if !up && !down {
            return Err(NumericError::BadMap("outputs must be strictly monotone".into()));
        }
        let (inputs, outputs) = points.into_iter().unzip();
        Ok(PlMonotoneMap { inputs, outputs })
    }

    pub fn identity() -> Self {
        PlMonotoneMap { inputs: vec![0.0, 1.0], outputs: vec![0.0, 1.0] }
    }

    /// `x -> slope * x + intercept`; panics on a zero slope.
    pub fn affine(slope: f64, intercept: f64) -> Self {
        assert!(slope != 0.0 && slope.is_finite());
        PlMonotoneMap { inputs: vec![0.0, 1.0], outputs: vec![intercept, slope + intercept] }
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.inputs.iter().copied().zip(self.outputs.iter().copied())
    }

    pub fn is_increasing(&self) -> bool {
        self.outputs[1] > self.outputs[0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.inputs.len();
        // segment index: clamp to the first/last segment for the affine tails
        let seg = match self.inputs.partition_point(|&a| a <= x) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let (x0, x1) = (self.inputs[seg], self.inputs[seg + 1]);
        let (y0, y1) = (self.outputs[seg], self.outputs[seg + 1]);
        if x == x0 {
            return y0;
        }
        if x == x1 {
            return y1;
        }
        y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    }
}

/// `lambda(x, y)`: increasing PL maps attached to horizontal levels and
/// interpolated linearly in `y` between them, constant beyond the extreme
/// levels.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaFamily {
    rows: Vec<(f64, PlMonotoneMap)>,
}

impl LambdaFamily {
    pub fn new(rows: Vec<(f64, PlMonotoneMap)>) -> Result<Self, NumericError> {
        if rows.is_empty() {
            return Err(NumericError::BadMap("family needs at least one level".into()));
        }
        if rows.windows(2).any(|w| w[1].0 <= w[0].0) || rows.iter().any(|(y, _)| !y.is_finite()) {
            return Err(NumericError::BadMap("levels must be finite and strictly increasing".into()));
        }
        if rows.iter().any(|(_, m)| !m.is_increasing()) {
            return Err(NumericError::BadMap("every level map must be increasing".into()));
        }
        Ok(LambdaFamily { rows })
    }

    pub fn constant(map: PlMonotoneMap) -> Result<Self, NumericError> {
        Self::new(vec![(0.0, map)])
    }

    pub fn identity() -> Self {
        LambdaFamily { rows: vec![(0.0, PlMonotoneMap::identity())] }
    }

    pub fn levels(&self) -> &[(f64, PlMonotoneMap)] {
        &self.rows
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let k = self.rows.partition_point(|(level, _)| *level <= y);
        if k == 0 {
            return self.rows[0].1.eval(x);
        }
        if k == self.rows.len() {
            return self.rows[k - 1].1.eval(x);
        }
        let (y0, lo) = (&self.rows[k - 1].0, &self.rows[k - 1].1);
        let (y1, hi) = (&self.rows[k].0, &self.rows[k].1);
        let s = (y - y0) / (y1 - y0);
        (1.0 - s) * lo.eval(x) + s * hi.eval(x)
    }
}

fn check_t(t: f64) -> Result<(), NumericError> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(NumericError::BadT(t))
    }
}

/// `((1 - t) lambda(x, y) + t x, y)`: straight-line path from `lambda` to the
/// identity.
pub fn contraction_isotopy(lambda: &LambdaFamily, p: Point2, t: f64) -> Result<Point2, NumericError> {
    check_t(t)?;
    let p = p.check_finite()?;
    Ok(Point2 { x: (1.0 - t) * lambda.eval(p.x, p.y) + t * p.x, y: p.y })
}

/// `(lambda(x, y), t y + (1 - t) mu(y))`: straightens the vertical part while
/// freezing the horizontal one.
pub fn q_deformation_isotopy(lambda: &LambdaFamily, mu: &PlMonotoneMap, p: Point2, t: f64) -> Result<Point2, NumericError> {
    check_t(t)?;
    let p = p.check_finite()?;
    Ok(Point2 { x: lambda.eval(p.x, p.y), y: t * p.y + (1.0 - t) * mu.eval(p.y) })
}

/// Largest `|phi(G_t(x)) - G'_t(phi(x))|` over the sample grid, where
/// `G_t = (1 - t) lambda_src + t id` and likewise for `G'_t`.
pub fn equivariance_residual(phi: &AffineMap, lambda_src: &PlMonotoneMap, lambda_dst: &PlMonotoneMap, ts: &[f64], xs: &[f64]) -> f64 {
    let (slope, intercept) = (phi.slope.to_f64(), phi.intercept.to_f64());
    let phi = |v: f64| slope * v + intercept;
    let mut worst = 0.0f64;
    for &t in ts {
        for &x in xs {
            let left = phi((1.0 - t) * lambda_src.eval(x) + t * x);
            let px = phi(x);
            let right = (1.0 - t) * lambda_dst.eval(px) + t * px;
            worst = worst.max((left - right).abs());
        }
    }
    worst
}

/// A map that can be sampled on a grid.
#[derive(Debug, Clone)]
pub enum MapSpec {
    Identity,
    Raw,
    Banded,
    Chain,
    Contraction { lambda: LambdaFamily, t: f64 },
    QDeformation { lambda: LambdaFamily, mu: PlMonotoneMap, t: f64 },
}

impl MapSpec {
    pub fn eval(&self, p: Point2) -> Result<Point2, NumericError> {
        match self {
            MapSpec::Identity => p.check_finite(),
            MapSpec::Raw => merge_homeo_raw(p),
            MapSpec::Banded => merge_homeo_banded(p),
            MapSpec::Chain => chain_homeo(p),
            MapSpec::Contraction { lambda, t } => contraction_isotopy(lambda, p, *t),
            MapSpec::QDeformation { lambda, mu, t } => q_deformation_isotopy(lambda, mu, p, *t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// `i`-th of `n` evenly spaced points from `lo` to `hi`, both ends exact.
    fn coord(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * (i as f64 / (n - 1) as f64)
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        Self::coord(self.x_range.0, self.x_range.1, i, self.nx)
    }

    pub fn y(&self, j: usize) -> f64 {
        Self::coord(self.y_range.0, self.y_range.1, j, self.ny)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledGrid {
    pub spec: GridSpec,
    /// Row-major: `inputs[j * nx + i]` is `(x_i, y_j)`.
    pub inputs: Vec<Point2>,
    pub values: Vec<Point2>,
}

impl SampledGrid {
    pub fn row(&self, j: usize) -> &[Point2] {
        &self.values[j * self.spec.nx..(j + 1) * self.spec.nx]
    }
}

pub fn sample_map(map: &MapSpec, spec: GridSpec) -> Result<SampledGrid, NumericError> {
    if spec.nx < 2 || spec.ny < 2 {
        return Err(NumericError::BadGrid("need at least 2 samples in each direction".into()));
    }
    let ranges = [spec.x_range.0, spec.x_range.1, spec.y_range.0, spec.y_range.1];
    if ranges.iter().any(|v| !v.is_finite()) || spec.x_range.0 > spec.x_range.1 || spec.y_range.0 > spec.y_range.1 {
        return Err(NumericError::BadGrid("ranges must be finite with lo <= hi".into()));
    }
    let mut inputs = Vec::with_capacity(spec.nx * spec.ny);
    let mut values = Vec::with_capacity(spec.nx * spec.ny);
    for j in 0..spec.ny {
        let y = spec.y(j);
        for i in 0..spec.nx {
            let p = Point2::new(spec.x(i), y);
            values.push(map.eval(p)?);
            inputs.push(p);
        }
    }
    Ok(SampledGrid { spec, inputs, values })
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// `x,y,xp,yp` with 17 significant digits.
pub fn emit_csv(grid: &SampledGrid) -> String {
    let mut out = String::from("x,y,xp,yp\n");
    for (p, q) in grid.inputs.iter().zip(&grid.values) {
        let _ = writeln!(out, "{},{},{},{}", num(p.x), num(p.y), num(q.x), num(q.y));
    }
    out
}

/// One polyline per grid row, drawn in a viewBox spanning the grid ranges
/// with `y` pointing up.
pub fn emit_svg(grid: &SampledGrid) -> String {
    let (x0, x1) = grid.spec.x_range;
    let (y0, y1) = grid.spec.y_range;
    let w = (x1 - x0).max(f64::MIN_POSITIVE);
    let h = (y1 - y0).max(f64::MIN_POSITIVE);
    let stroke = w.max(h) / 500.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        num(x0),
        num(-y1),
        num(w),
        num(h)
    );
    let _ = writeln!(out, "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\">", num(stroke));
    for j in 0..grid.spec.ny {
        let pts: Vec<String> = grid.row(j).iter().map(|q| format!("{},{}", num(q.x), num(q.y))).collect();
        let _ = writeln!(out, "<polyline points=\"{}\"/>", pts.join(" "));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(0.0), 0.0);
        assert!((sigma(1.0) - FRAC_1_SQRT_2).abs() < 1e-15);
        for t in [0.3, 1.7, 12.0, 1e5] {
            assert_eq!(sigma(-t), -sigma(t));
            assert!(sigma(t).abs() < 1.0);
            assert!(sigma_prime(t) > 0.0);
        }
    }

    #[test]
    fn raw_examples() {
        assert_eq!(merge_homeo_raw(Point2::new(0.0, 0.0)).unwrap(), Point2::new(0.0, 0.0));
        let q = merge_homeo_raw(Point2::new(1.0, 0.0)).unwrap();
        assert!((q.x - FRAC_1_SQRT_2).abs() < 1e-15);
        // knot at 1/0.8 = 1.25, point beyond it takes the tangent line
        let q = merge_homeo_raw(Point2::new(3.0, 0.8)).unwrap();
        let knot: f64 = 1.25;
        let expect = (1.0 + knot * knot).powf(-1.5) * (3.0 - knot) + knot / (1.0 + knot * knot).sqrt();
        assert!((q.x - expect).abs() < 1e-15);
        assert_eq!(q.y, 0.8);
        assert!(matches!(merge_homeo_raw(Point2::new(0.0, 1.0)), Err(NumericError::OutOfDomain { .. })));
        assert!(matches!(merge_homeo_raw(Point2::new(f64::NAN, 0.0)), Err(NumericError::OutOfDomain { .. })));
    }

    #[test]
    fn banded_examples() {
        assert_eq!(merge_homeo_banded(Point2::new(5.0, 0.9)).unwrap(), Point2::new(5.0, 0.9));
        let q = merge_homeo_banded(Point2::new(1.0, 0.0)).unwrap();
        assert!((q.x - FRAC_1_SQRT_2).abs() < 1e-15);
        // 1/|y| = 4 puts x = 2 inside the sigma branch
        let q = merge_homeo_banded(Point2::new(2.0, 0.25)).unwrap();
        assert!((q.x - (0.5 * 2.0 + 0.5 * 2.0 / 5f64.sqrt())).abs() < 1e-15);
        assert!(merge_homeo_banded(Point2::new(0.0, -1.0)).is_err());
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain_homeo(Point2::new(7.0, 1.0)).unwrap(), Point2::new(7.0, 1.0));
        let q = chain_homeo(Point2::new(1.0, 2.0)).unwrap();
        assert!((q.x - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(q.y, 2.0);
        // band edges take the identity
        assert_eq!(chain_homeo(Point2::new(3.0, -4.5)).unwrap(), Point2::new(3.0, -4.5));
        let q = chain_homeo(Point2::new(3.0, -4.2)).unwrap();
        let local = merge_homeo_banded(Point2::new(3.0, -4.2 + 4.0)).unwrap();
        assert_eq!(q.x, local.x);
    }

    #[test]
    fn pl_map_eval_and_tails() {
        let m = PlMonotoneMap::new(vec![(0.0, 0.0), (1.0, 2.0), (3.0, 3.0)]).unwrap();
        assert_eq!(m.eval(0.5), 1.0);
        assert_eq!(m.eval(2.0), 2.5);
        assert_eq!(m.eval(-1.0), -2.0);
        assert_eq!(m.eval(5.0), 4.0);
        assert_eq!(m.eval(3.0), 3.0);
        let d = PlMonotoneMap::new(vec![(0.0, 1.0), (1.0, -1.0)]).unwrap();
        assert!(!d.is_increasing());
        assert_eq!(d.eval(2.0), -3.0);
        assert!(PlMonotoneMap::new(vec![(0.0, 0.0)]).is_err());
        assert!(PlMonotoneMap::new(vec![(0.0, 0.0), (0.0, 1.0)]).is_err());
        assert!(PlMonotoneMap::new(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)]).is_err());
    }

    #[test]
    fn lambda_family_interpolates() {
        let f = LambdaFamily::new(vec![(-1.0, PlMonotoneMap::identity()), (1.0, PlMonotoneMap::affine(3.0, 0.0))]).unwrap();
        assert_eq!(f.eval(2.0, -5.0), 2.0);
        assert_eq!(f.eval(2.0, 0.0), 4.0);
        assert_eq!(f.eval(2.0, 1.0), 6.0);
        assert!(LambdaFamily::constant(PlMonotoneMap::affine(-1.0, 0.0)).is_err());
    }

    #[test]
    fn contraction_examples() {
        let lam = LambdaFamily::constant(PlMonotoneMap::affine(2.0, 0.0)).unwrap();
        let p = Point2::new(1.0, 0.0);
        assert_eq!(contraction_isotopy(&lam, p, 0.5).unwrap(), Point2::new(1.5, 0.0));
        assert_eq!(contraction_isotopy(&lam, p, 1.0).unwrap(), p);
        assert_eq!(contraction_isotopy(&lam, p, 0.0).unwrap(), Point2::new(2.0, 0.0));
        assert_eq!(contraction_isotopy(&lam, p, 1.5), Err(NumericError::BadT(1.5)));
        assert!(contraction_isotopy(&lam, p, f64::NAN).is_err());
    }

    #[test]
    fn q_deformation_examples() {
        let lam = LambdaFamily::constant(PlMonotoneMap::affine(2.0, 1.0)).unwrap();
        let mu = PlMonotoneMap::new(vec![(-1.0, -1.0), (0.0, -0.5), (1.0, 1.0)]).unwrap();
        let p = Point2::new(0.5, 0.5);
        assert_eq!(q_deformation_isotopy(&lam, &mu, p, 0.0).unwrap(), Point2::new(2.0, 0.25));
        assert_eq!(q_deformation_isotopy(&lam, &mu, p, 1.0).unwrap(), Point2::new(2.0, 0.5));
        let id = PlMonotoneMap::new(vec![(-1.0, -1.0), (1.0, 1.0)]).unwrap();
        let a = q_deformation_isotopy(&lam, &id, p, 0.0).unwrap();
        for t in [0.25, 0.5, 0.75, 1.0] {
            assert_eq!(q_deformation_isotopy(&lam, &id, p, t).unwrap(), a);
        }
        assert!(q_deformation_isotopy(&lam, &mu, p, -0.1).is_err());
    }

    #[test]
    fn equivariance_examples() {
        let ts: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let xs: Vec<f64> = (-20..=20).map(|k| k as f64 / 2.0).collect();
        let lam = PlMonotoneMap::new(vec![(0.0, 1.0), (1.0, 4.0), (2.0, 4.5)]).unwrap();
        assert_eq!(equivariance_residual(&AffineMap::identity(), &lam, &lam, &ts, &xs), 0.0);

        let phi = AffineMap { slope: 2.into(), intercept: 1.into() };
        let ly = PlMonotoneMap::affine(1.0, 3.0);
        let lx = PlMonotoneMap::affine(1.0, 6.0);
        assert!(equivariance_residual(&phi, &ly, &lx, &ts, &xs) <= 1e-12);
        // off by one at t = 0, shrinking linearly to zero at t = 1
        let bad = PlMonotoneMap::affine(1.0, 5.0);
        assert!((equivariance_residual(&phi, &ly, &bad, &ts, &xs) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampling_and_output() {
        let spec = GridSpec { x_range: (-1.0, 1.0), y_range: (0.0, 0.5), nx: 2, ny: 2 };
        let g = sample_map(&MapSpec::Identity, spec).unwrap();
        let csv = emit_csv(&g);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,y,xp,yp");
        assert_eq!(lines.len(), 5);
        for l in &lines[1..] {
            let f: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
            assert_eq!((f[0], f[1]), (f[2], f[3]));
        }
        assert_eq!(lines[1], "-1.0000000000000000e0,0.0000000000000000e0,-1.0000000000000000e0,0.0000000000000000e0");

        let row = GridSpec { x_range: (-10.0, 10.0), y_range: (0.9, 0.9), nx: 11, ny: 2 };
        let g = sample_map(&MapSpec::Banded, row).unwrap();
        assert_eq!(g.values, g.inputs);

        let g = sample_map(&MapSpec::Chain, GridSpec { x_range: (-50.0, 50.0), y_range: (0.0, 0.0), nx: 101, ny: 2 }).unwrap();
        assert!(g.values.iter().all(|q| q.x > -1.0 && q.x < 1.0));

        let svg = emit_svg(&g);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(sample_map(&MapSpec::Raw, GridSpec { x_range: (0.0, 1.0), y_range: (0.0, 1.0), nx: 2, ny: 2 }).is_err());
        assert!(sample_map(&MapSpec::Raw, GridSpec { x_range: (0.0, 1.0), y_range: (0.0, 0.5), nx: 1, ny: 2 }).is_err());
    }
}
