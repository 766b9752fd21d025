//! Adaptive quadrature with change-of-variables for improper integrals.
//!
//! The workhorse is an adaptive 15-point Gauss-Kronrod rule with interval
//! bisection. Infinite and half-infinite ranges are mapped to compact ones
//! with the tangent substitution `x = tan(theta)`, which is what keeps
//! Cauchy-type tails tractable: naive truncation converges too slowly for
//! polynomial tails.

/// Kronrod abscissae for the 7-15 pair, positive half.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

/// Gauss weights for the embedded 7-point rule (odd Kronrod indices).
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut result_kronrod = fc * WGK[7];
    let mut result_gauss = fc * WG[3];

    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        result_kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let integral = result_kronrod * half;
    let err = ((result_kronrod - result_gauss) * half).abs();
    (integral, err)
}

struct Adaptive<'a, F> {
    f: &'a F,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
}

impl<F: Fn(f64) -> f64> Adaptive<'_, F> {
    fn run(&self, a: f64, b: f64, depth: u32, whole_scale: f64) -> f64 {
        let (value, err) = gk15(self.f, a, b);
        let budget = self.abs_tol.max(self.rel_tol * whole_scale) * (b - a).abs() / whole_span();
        if err <= budget || depth >= self.max_depth || !value.is_finite() {
            return value;
        }
        let mid = 0.5 * (a + b);
        self.run(a, mid, depth + 1, whole_scale) + self.run(mid, b, depth + 1, whole_scale)
    }
}

// Error budgets are distributed proportionally to interval length relative
// to the (notional) full span. Using 1.0 makes budgets per-subinterval
// stricter as intervals shrink, which is what we want.
fn whole_span() -> f64 {
    1.0
}

/// Integrate `f` over the finite interval `[a, b]` to roughly `tol`
/// absolute accuracy.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (rough, _) = gk15(&f, a, b);
    let scale = rough.abs().max(1e-300);
    let adaptive = Adaptive {
        f: &f,
        abs_tol: tol,
        rel_tol: tol,
        max_depth: 48,
    };
    // Seed with a few panels so a symmetric integrand cannot fool the
    // top-level error estimate.
    let n0 = 8;
    let mut total = 0.0;
    for i in 0..n0 {
        let x0 = a + (b - a) * i as f64 / n0 as f64;
        let x1 = a + (b - a) * (i + 1) as f64 / n0 as f64;
        total += adaptive.run(x0, x1, 0, scale);
    }
    total
}

/// Integrate `f` over the whole real line via `x = tan(theta)`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> f64 {
    let g = |theta: f64| {
        let c = theta.cos();
        if c.abs() < 1e-300 {
            return 0.0;
        }
        let x = theta.tan();
        let v = f(x) / (c * c);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let h = std::f64::consts::FRAC_PI_2;
    integrate(g, -h, h, tol)
}

/// Integrate `f` over `[a, +inf)` via `x = a + tan(theta)`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    let g = |theta: f64| {
        let c = theta.cos();
        if c.abs() < 1e-300 {
            return 0.0;
        }
        let x = a + theta.tan();
        let v = f(x) / (c * c);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, std::f64::consts::FRAC_PI_2, tol)
}

/// Integrate `g` over the open unit interval `(0, 1)` with the logistic
/// substitution `u = 1/(1+e^{-t})`, which spreads endpoint mass over the
/// real line. Suitable for quantile integrands with integrable endpoint
/// singularities.
pub fn integrate_unit_interval<F: Fn(f64) -> f64>(g: F, tol: f64) -> f64 {
    let h = |t: f64| {
        let u = 1.0 / (1.0 + (-t).exp());
        let du = u * (1.0 - u);
        if du == 0.0 {
            return 0.0;
        }
        let v = g(u) * du;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate_real_line(h, tol)
}

/// Golden-section search for the minimum of a unimodal function on `[a, b]`.
///
/// Returns `(argmin, min)`. Tolerance is on the argument.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, x_tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > x_tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Monotone root bracketing + bisection for `f(x) = target` with `f`
/// nondecreasing. `lo` and `hi` must bracket the root.
pub fn monotone_invert<F: Fn(f64) -> f64>(f: F, target: f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < tol * (1.0 + mid.abs()) {
            return mid;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
