//! The explicit constants and comparison bounds: the closed-form
//! minimization, the moment constant C(p,s), the density/tail constants,
//! the Grünbaum-type mass bound and the five comparison theorems.
//!
//! Run with: cargo run --example bounds_and_constants

use convexmetrics::bounds::{
    const_c, const_c0, const_c2, const_d0, grunbaum_lower, minimize_lemma, tail_bound_deviation,
    thm_kl_from_tv, thm_tv_from_bl, thm_w1_from_bl, thm_wq_from_wp, varentropy_bound,
};
use convexmetrics::measures::kappa_from_s;
use convexmetrics::BoundConfig;

fn main() -> convexmetrics::Result<()> {
    println!("closed-form inf_{{t >= M}} (A t^m + B/t^p):");
    println!("  A=B=m=p=1, M=0.5 -> {}", minimize_lemma(1.0, 1.0, 1.0, 1.0, 0.5)?);
    println!("  A=B=m=p=1, M=2   -> {} (constraint binds)", minimize_lemma(1.0, 1.0, 1.0, 1.0, 2.0)?);

    println!("\nGrünbaum-type lower bound (1+s)^(-1/s) on P(X >= EX), increasing in s:");
    for s in [-0.5, -1.0 / 3.0, 0.0, 1.0] {
        println!("  s = {s:>7.4} -> {:.6}", grunbaum_lower(s)?);
    }

    let s = -0.25;
    let n = 1;
    println!("\nexplicit constants at n = {n}, s = {s}:");
    println!("  C(2, s)      = {:.6}", const_c(2.0, s)?);
    println!("  d_0          = {:.6}", const_d0(n, s)?);
    println!("  c_0          = {:.6e}", const_c0(n, s)?);
    println!("  c_2          = {:.6}", const_c2(s)?);
    println!("  kappa        = {:.6}", kappa_from_s(s, n)?);
    println!("  varentropy   <= {:.6}", varentropy_bound(n, kappa_from_s(s, n)?)?);

    let cfg = BoundConfig::default();
    let tail = tail_bound_deviation(10.0, 4, -0.25, &cfg);
    println!("\ntail bound P(|X| >= 10), n=4, s=-0.25: {:.6} (vacuous: {})", tail.value, tail.vacuous);

    println!("\ncomparison theorems at n=1, s=-0.2 (all constant slots at 1):");
    let tv = thm_tv_from_bl(0.1, 1, -0.2, &cfg);
    println!("  d_TV <= {:.6} from d_BL = 0.1       [{}]", tv.value, tv.formula_id);
    let w1 = thm_w1_from_bl(0.1, 1, -0.2, &cfg);
    println!("  W_1  <= {:.6} from d_BL = 0.1       [{}]", w1.value, w1.formula_id);
    let wq = thm_wq_from_wp(0.5, 1.0, 2.0, 1, -0.2, &cfg);
    println!("  W_2  <= {:.6} from W_1 = 0.5        [{}]", wq.value, wq.formula_id);
    let kl = thm_kl_from_tv(0.2, 1, -0.2, &cfg);
    println!("  KL   <= {:.6} from d_TV = 0.2       [{}]", kl.value, kl.formula_id);
    Ok(())
}
