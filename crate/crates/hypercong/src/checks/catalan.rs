//! Catalan-number congruences at primes p ≡ 1 (mod 4): the half-range cube
//! sum against the constant 8, and the equivalent (-1/2)-parameter series.

use super::*;
use crate::arith::rat;
use crate::hyperg::catalan;
use num_integer::Integer;

fn catalan_gate(id: &str, params: &CheckParams, ctx: &RunCtx) -> Option<Verdict> {
    let p = params.p;
    if !is_odd_prime(p) {
        return Some(Verdict::skip(id, params, ctx.claim, "p must be an odd prime"));
    }
    if p % 4 != 1 {
        return Some(Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("p = {p} is 3 mod 4; the congruence needs p = 1 mod 4"),
        ));
    }
    None
}

/// `sum_{k=0}^{(p-1)/2} C_k^3 / 64^k - 8` must have v_p >= 2 when
/// p = 1 (mod 4), where C_k is the k-th Catalan number.
pub fn check_catalan_mod_p2(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "catalan_mod_p2";
    if let Some(v) = catalan_gate(id, params, ctx) {
        return v;
    }
    let p = params.p;
    let mut sum = Rational::zero();
    let mut pow64 = Rational::one();
    for k in 0..=(p - 1) / 2 {
        let c = catalan(k);
        sum += Rational::from_integer(&c * &c * &c) / &pow64;
        pow64 *= rat_int(64);
    }
    let value = sum - rat_int(8);
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
        exact_only_note(ctx),
    )
}

/// The full-range series with three -1/2 top parameters:
/// `sum_{k=0}^{p-1} (-1/2)_k^3 / (1)_k^3` must have v_p >= 2 when
/// p = 1 (mod 4). Also cross-checks its equivalence with
/// [`check_catalan_mod_p2`]: the two must pass or fail together, and the
/// bridge rests on the tail fact C_k = 0 (mod p) for (p+1)/2 <= k <= p-2,
/// which is verified directly.
pub fn check_half_cube(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "3f2_half";
    if let Some(v) = catalan_gate(id, params, ctx) {
        return v;
    }
    let p = params.p;

    // Tail fact bridging the two formulations.
    let bigp = BigInt::from(p);
    for k in p.div_ceil(2)..=p - 2 {
        if !catalan(k).mod_floor(&bigp).is_zero() {
            let mut echo = params.clone();
            echo.k = Some(k);
            return Verdict {
                check_id: id.to_owned(),
                params: echo,
                claimed: ctx.claim,
                observed: None,
                residual: None,
                status: Status::Fail,
                note: Some(format!("tail fact broken: C_{k} is a unit mod {p}")),
            };
        }
    }

    let spec = HyperSeriesSpec::balanced_unit(rat(-1, 2), 3, p - 1);
    let eval = match evaluate_series(&spec, p, None, ctx) {
        Ok(eval) => eval,
        Err(e) => return error_verdict(id, params.clone(), ctx.claim, &e),
    };
    let mut verdict = valuation_verdict(id, params.clone(), ctx, p, eval, false, None);

    // Equivalence: this congruence and the Catalan form stand or fall
    // together, so their statuses must agree.
    let sibling = check_catalan_mod_p2(params, &RunCtx::new(Mode::Rational, ctx.claim));
    if verdict.status != sibling.status {
        verdict.status = Status::Fail;
        push_note(
            &mut verdict.note,
            format!("equivalence broken: catalan_mod_p2 reports {}", sibling.status),
        );
    } else {
        push_note(
            &mut verdict.note,
            "agrees with catalan_mod_p2; tail Catalan numbers vanish mod p",
        );
    }
    verdict
}
