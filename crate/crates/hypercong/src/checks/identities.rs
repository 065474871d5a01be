//! Exact identity checkers: quantities that must vanish identically (not
//! merely to high p-adic order), plus the harmonic reflection congruence.

use super::*;
use crate::hyperg::{harmonic, rising, terminating_hyper};
use crate::poly::pochhammer_shift_poly;

/// Terminating-series vanishing with integer parameters: for a > m_1+...+m_r
/// (all m_i >= 0), the series with tops [-a, 1+m_1, ..., 1+m_r] and unit
/// bottoms sums to exactly zero.
pub fn check_karlsson_minton(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "karlsson_minton";
    let a = params.a;
    let m_list = params.m_list.clone().unwrap_or_default();
    if a < 1 {
        return Verdict::skip(id, params, Claim::ExactZero, "a must be at least 1");
    }
    let m_sum: u64 = m_list.iter().sum();
    if a <= m_sum {
        return Verdict::skip(
            id,
            params,
            Claim::ExactZero,
            format!("need a > sum(m_i) = {m_sum}, got a = {a}"),
        );
    }
    let mut echo = params.clone();
    echo.m_list = Some(m_list.clone());

    let top: Vec<Rational> = std::iter::once(rat_int(-(a as i64)))
        .chain(m_list.iter().map(|&m| rat_int(1 + m as i64)))
        .collect();
    let bottom = vec![rat_int(1); m_list.len()];
    match terminating_hyper(&top, &bottom, &rat_int(1)) {
        Ok(value) => exact_zero_verdict(id, echo, value, exact_only_note(ctx)),
        Err(e) => error_verdict(id, echo, Claim::ExactZero, &e),
    }
}

/// Row symmetry of binomial coefficients with an odd-power twist: for odd m
/// and even r, `sum_{k=0}^{m} (-1)^k binom(m, k)^{r+1}` vanishes exactly
/// (the k and m-k terms cancel in pairs).
pub fn check_sign_symmetry(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "sign_symmetry";
    let Some(m) = params.m else {
        return Verdict::skip(id, params, Claim::ExactZero, "m is required");
    };
    if m < 1 || m % 2 == 0 {
        return Verdict::skip(
            id,
            params,
            Claim::ExactZero,
            format!("m = {m} must be odd and positive"),
        );
    }
    let r = params.r;
    if !r.is_multiple_of(2) {
        return Verdict::skip(
            id,
            params,
            Claim::ExactZero,
            format!("r = {r} must be even"),
        );
    }
    match alternating_binomial_power_sum(&RationalField, &rat_int(m as i64), r + 1, m) {
        Ok(value) => exact_zero_verdict(id, params.clone(), value, exact_only_note(ctx)),
        Err(e) => error_verdict(id, params.clone(), Claim::ExactZero, &SeriesError::from(e)),
    }
}

/// Harmonic reflection under the summation weight: for 0 <= a < p/2,
/// `sum u_k^{2r+1} H_k ≡ -sum u_k^{2r+1} H_{2a+k-1} (mod p)` with
/// `u_k = (2a)_k/(1)_k`, summed over 0 <= k <= p-2a.
pub fn check_harmonic_weighted(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "harmonic_weighted";
    let (p, r, a) = (params.p, params.r, params.a);
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    if 2 * a >= p {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("a = {a} outside 0 <= a < p/2"),
        );
    }
    let (with_shift, with_plain) = weighted_ratio_sums(p, a, 2 * r + 1);
    // LHS - RHS where RHS = -sum u^{2r+1} H_{2a+k-1}.
    let value = with_plain + with_shift;
    let mut note = exact_only_note(ctx);
    if a == 0 {
        push_note(&mut note, "a = 0 relies on the H_{-1} = 0 convention");
    }
    valuation_verdict(
        id,
        params.clone(),
        ctx,
        p,
        Evaluated {
            exact: Some(value),
            modular: None,
        },
        false,
        note,
    )
}

/// The derivative bookkeeping identity: the coefficient of x in `(m - x)_k`
/// equals `(m)_k (H_{m-1} - H_{m+k-1})` exactly.
pub fn check_derivative_identity(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "derivative_identity";
    let (Some(m), Some(k)) = (params.m, params.k) else {
        return Verdict::skip(id, params, Claim::ExactZero, "m and k are required");
    };
    if m < 1 {
        return Verdict::skip(id, params, Claim::ExactZero, "m must be at least 1");
    }
    let lhs = pochhammer_shift_poly(m as i64, k).linear_coeff();
    let rhs = rising(&RationalField, &rat_int(m as i64), k)
        * (harmonic(m as i64 - 1) - harmonic((m + k) as i64 - 1));
    exact_zero_verdict(id, params.clone(), lhs - rhs, exact_only_note(ctx))
}
