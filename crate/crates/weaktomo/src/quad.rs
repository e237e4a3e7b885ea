//! Adaptive Simpson quadrature, used as an independent numerical oracle for
//! the closed-form probabilities and the channel integrals. The integrands in
//! this crate are smooth Gaussian products, for which Simpson bisection with
//! Richardson correction converges fast.

const MAX_DEPTH: u32 = 48;

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    ((b - a) / 6.0 * (fa + 4.0 * fm + fb), mid, fm)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    mid: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let (left, lm, flm) = simpson(f, a, fa, mid, fm);
    let (right, rm, frm) = simpson(f, mid, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, fa, mid, fm, lm, flm, left, 0.5 * tol, depth - 1)
        + refine(f, mid, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
}

/// Integrates `f` over [a, b] to roughly absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, mid, fm) = simpson(f, a, fa, b, fb);
    refine(f, a, fa, b, fb, mid, fm, whole, tol, MAX_DEPTH)
}
