//! Analytic tail bookkeeping.
//!
//! Divergent moments and divergent Rényi integrals are detected by comparing
//! tail exponents, never by quadrature: truncated quadrature cannot tell
//! slow convergence from divergence. Each 1D spec therefore carries a
//! [`TailProfile`] describing the asymptotics of `-log f` on each side.

/// Dominant growth of `-log f(x)` as `|x| -> inf` on one side:
/// `-log f(x) ~ gauss * x^2/2 + lin * |x| + logpow * log|x|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tail {
    pub gauss: f64,
    pub lin: f64,
    pub logpow: f64,
}

impl Tail {
    pub fn scaled(q: f64, l: f64, k: f64) -> Self {
        Tail {
            gauss: q,
            lin: l,
            logpow: k,
        }
    }

    fn combine(a: &Tail, b: &Tail, wa: f64, wb: f64) -> Tail {
        Tail {
            gauss: wa * a.gauss + wb * b.gauss,
            lin: wa * a.lin + wb * b.lin,
            logpow: wa * a.logpow + wb * b.logpow,
        }
    }

    /// Is `e^{-(this growth)}` integrable towards infinity?
    fn integrable(&self) -> bool {
        if self.gauss != 0.0 {
            return self.gauss > 0.0;
        }
        if self.lin != 0.0 {
            return self.lin > 0.0;
        }
        self.logpow > 1.0
    }

    /// Does `e^{-(this growth)}` kill any fixed polynomial weight?
    fn beats_polynomials(&self) -> bool {
        self.gauss > 0.0 || (self.gauss == 0.0 && self.lin > 0.0)
    }
}

/// Support interval plus one-sided tails of a 1D density. The `left`/`right`
/// fields are meaningful only when the corresponding endpoint is infinite.
#[derive(Debug, Clone, Copy)]
pub struct TailProfile {
    pub lo: f64,
    pub hi: f64,
    pub left: Tail,
    pub right: Tail,
}

impl TailProfile {
    /// Is `E|X|^p` finite? Checks each infinite tail of the density against
    /// the polynomial weight `|x|^p`.
    pub fn abs_moment_finite(&self, p: f64) -> bool {
        let side = |t: &Tail, infinite: bool| {
            !infinite || t.beats_polynomials() || t.logpow > p + 1.0
        };
        side(&self.left, self.lo.is_infinite()) && side(&self.right, self.hi.is_infinite())
    }

    /// Is `E[e^{c |X|^2 / 2}]` finite for `c > 0`?
    pub fn exp_quadratic_finite(&self, c: f64) -> bool {
        let side = |t: &Tail, infinite: bool| {
            if !infinite {
                return true;
            }
            let shifted = Tail {
                gauss: t.gauss - c,
                ..*t
            };
            shifted.integrable()
        };
        side(&self.left, self.lo.is_infinite()) && side(&self.right, self.hi.is_infinite())
    }
}

const SUPPORT_EPS: f64 = 1e-12;

/// Analytic finiteness test for `D_p(f || g)`.
///
/// Rules: disjoint supports are infinite for every order; for `p >= 1` the
/// support of `f` must be contained in that of `g`, and the combined tail
/// `p * tail_f + (1-p) * tail_g` must be integrable at every infinite end;
/// `p = 1` needs `f`'s tails to dominate the polynomial growth of
/// `-log g`.
pub fn renyi_finite(f: &TailProfile, g: &TailProfile, p: f64) -> bool {
    let overlap = f.lo.max(g.lo) < f.hi.min(g.hi) - SUPPORT_EPS;
    if !overlap {
        return false;
    }
    if p < 1.0 {
        // The integrand f^p g^{1-p} is dominated by max(f, g) and the
        // integral is strictly positive on the overlap.
        return true;
    }
    let contained = f.lo >= g.lo - SUPPORT_EPS && f.hi <= g.hi + SUPPORT_EPS;
    if !contained {
        return false;
    }
    if p == 1.0 {
        // KL: need E_f[ -log g(X) ] < inf. The weight -log g grows at most
        // quadratically (gauss), linearly (lin) or logarithmically.
        let side = |tf: &Tail, tg: &Tail, infinite: bool| {
            if !infinite || tf.beats_polynomials() {
                return true;
            }
            // f has a polynomial tail |x|^{-logpow}.
            if tg.gauss > 0.0 {
                tf.logpow > 3.0 // weight ~ x^2
            } else if tg.lin > 0.0 {
                tf.logpow > 2.0 // weight ~ |x|
            } else {
                true // weight ~ log|x|
            }
        };
        return side(&f.left, &g.left, f.lo.is_infinite())
            && side(&f.right, &g.right, f.hi.is_infinite());
    }
    // p > 1: integrand exp(-(p*(-log f) + (1-p)*(-log g))).
    let side = |tf: &Tail, tg: &Tail, infinite: bool| {
        !infinite || Tail::combine(tf, tg, p, 1.0 - p).integrable()
    };
    side(&f.left, &g.left, f.lo.is_infinite()) && side(&f.right, &g.right, f.hi.is_infinite())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(var: f64) -> TailProfile {
        let t = Tail::scaled(1.0 / var, 0.0, 0.0);
        TailProfile {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            left: t,
            right: t,
        }
    }

    fn cauchy_type(beta: f64) -> TailProfile {
        let t = Tail::scaled(0.0, 0.0, 1.0 + beta);
        TailProfile {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            left: t,
            right: t,
        }
    }

    fn exponential_centered() -> TailProfile {
        TailProfile {
            lo: -1.0,
            hi: f64::INFINITY,
            left: Tail::scaled(0.0, 0.0, 0.0),
            right: Tail::scaled(0.0, 1.0, 0.0),
        }
    }

    #[test]
    fn cauchy_moments() {
        let p = cauchy_type(3.0);
        assert!(p.abs_moment_finite(2.0));
        assert!(!p.abs_moment_finite(3.0)); // fourth moment of (1+x^2)^{-2} via p >= beta
        assert!(!p.abs_moment_finite(4.0));
    }

    #[test]
    fn exp_quadratic_gaussian_threshold() {
        let g = gaussian(1.0);
        assert!(g.exp_quadratic_finite(0.5));
        assert!(!g.exp_quadratic_finite(1.0));
        assert!(!g.exp_quadratic_finite(1.5));
        assert!(!cauchy_type(3.0).exp_quadratic_finite(0.01));
        assert!(!exponential_centered().exp_quadratic_finite(0.01));
    }

    #[test]
    fn exponential_vs_gaussian_renyi() {
        let e = exponential_centered();
        let g = gaussian(1.0);
        assert!(renyi_finite(&e, &g, 1.0));
        assert!(!renyi_finite(&e, &g, 1.5));
        assert!(!renyi_finite(&e, &g, 2.0));
    }

    #[test]
    fn gaussian_pair_orders() {
        // D_p(N(0,4) || N(0,1)): finite iff p/4 + 1 - p > 0, i.e. p < 4/3.
        let wide = gaussian(4.0);
        let std = gaussian(1.0);
        assert!(renyi_finite(&wide, &std, 1.2));
        assert!(!renyi_finite(&wide, &std, 1.5));
        assert!(renyi_finite(&std, &wide, 3.0));
    }

    #[test]
    fn support_rules() {
        let u01 = TailProfile {
            lo: 0.0,
            hi: 1.0,
            left: Tail::scaled(0.0, 0.0, 0.0),
            right: Tail::scaled(0.0, 0.0, 0.0),
        };
        let u56 = TailProfile {
            lo: 5.0,
            hi: 6.0,
            ..u01
        };
        let g = gaussian(1.0);
        // Disjoint supports: infinite at every order.
        assert!(!renyi_finite(&u01, &u56, 0.5));
        assert!(!renyi_finite(&u01, &u56, 2.0));
        // Gaussian not contained in [0,1]: infinite for p >= 1, fine below.
        assert!(!renyi_finite(&g, &u01, 1.0));
        assert!(renyi_finite(&g, &u01, 0.5));
        // Uniform against Gaussian is finite at every order.
        assert!(renyi_finite(&u01, &g, 7.0));
    }
}
