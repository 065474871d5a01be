//! The proof-chain checkers: every intermediate step connecting the shift
//! polynomials ψ and φ to the headline congruence is verified on its own —
//! the shifted-series vanishing mod p, the four routes to φ′(0), and the
//! Taylor step that lifts ψ′(0) ≡ 0 to the mod-p² statement.

use super::*;
use crate::hyperg::rising;
use crate::poly::{phi_poly, psi_poly};

/// Series with shifted parameters: tops `2a - s_i p` (one per `s_vec` entry,
/// 2r+1 of them) and bottoms `1 + t_j p` (2r of them), truncated at p-1,
/// must vanish mod p for ANY integer shifts. Missing vectors default to all
/// zeros. Every run also verifies the anchor case `s_i = 1, t_j = 0`, which
/// is exactly zero (the full terminating series ψ(p)).
pub fn check_shifted_congruence(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "shifted_congruence";
    let (p, r, a) = (params.p, params.r, params.a);
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    if a < 1 || 2 * a > p - 1 {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("a = {a} outside 1 <= 2a <= p-1"),
        );
    }
    let slots = 2 * r as usize + 1;
    let s_vec = params.s_vec.clone().unwrap_or_else(|| vec![0; slots]);
    let t_vec = params.t_vec.clone().unwrap_or_else(|| vec![0; slots - 1]);
    if s_vec.len() != slots || t_vec.len() != slots - 1 {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!(
                "need {slots} top shifts and {} bottom shifts, got {} and {}",
                slots - 1,
                s_vec.len(),
                t_vec.len()
            ),
        );
    }
    let mut echo = params.clone();
    echo.s_vec = Some(s_vec.clone());
    echo.t_vec = Some(t_vec.clone());

    // Anchor: all s_i = 1, t_j = 0 makes the series terminate inside the
    // truncation window and sum to exactly zero.
    let anchor = HyperSeriesSpec::balanced_unit(
        rat_int(2 * a as i64 - p as i64),
        slots,
        p - 1,
    );
    match trunc_hyper(&anchor, &RationalField) {
        Ok(v) if v.is_zero() => {}
        Ok(v) => {
            return Verdict {
                check_id: id.to_owned(),
                params: echo,
                claimed: ctx.claim,
                observed: None,
                residual: None,
                status: Status::Fail,
                note: Some(format!("anchor series should vanish exactly, got {v}")),
            };
        }
        Err(e) => return error_verdict(id, echo, ctx.claim, &e),
    }

    let top: Vec<Rational> = s_vec
        .iter()
        .map(|&si| rat_int(2 * a as i64 - si * p as i64))
        .collect();
    let bottom: Vec<Rational> = t_vec
        .iter()
        .map(|&tj| rat_int(1 + tj * p as i64))
        .collect();
    let spec = match HyperSeriesSpec::new(top, bottom, Rational::one(), p - 1) {
        Ok(spec) => spec,
        Err(e) => return error_verdict(id, echo, ctx.claim, &e),
    };
    match evaluate_series(&spec, p, None, ctx) {
        Ok(eval) => valuation_verdict(
            id,
            echo,
            ctx,
            p,
            eval,
            false,
            Some("anchor case vanishes exactly".to_owned()),
        ),
        Err(e) => error_verdict(id, echo, ctx.claim, &e),
    }
}

/// Closed-form tail for φ(2p): `-sum_{k=0}^{p-2a} term(p+k)` together with
/// the k = 0 term (the unit factor), computed incrementally.
fn phi_2p_closed_form(p: u64, a: u64, r: u32) -> (Rational, Rational) {
    let x0 = rat_int(2 * a as i64 - 2 * p as i64);
    let mut shifted = rising(&RationalField, &x0, p); // (2a-2p)_{p+k}
    let mut plain = rising(&RationalField, &rat_int(2 * a as i64), p); // (2a)_{p+k}
    let mut unit = rising(&RationalField, &Rational::one(), p); // (1)_{p+k}
    let mut sum = Rational::zero();
    let mut unit_factor = Rational::zero();
    for k in 0..=(p - 2 * a) {
        let term = &shifted * plain.pow(2 * r as i32) / unit.pow(2 * r as i32 + 1);
        if k == 0 {
            unit_factor = term.clone();
        }
        sum += term;
        let i = (p + k) as i64;
        shifted *= rat_int(2 * a as i64 - 2 * p as i64 + i);
        plain *= rat_int(2 * a as i64 + i);
        unit *= rat_int(1 + i);
    }
    (-sum, unit_factor)
}

/// φ′(0) computed four ways — formal derivative, the harmonic-weighted sum,
/// the difference quotient (φ(2p) - φ(0))/(2p), and 2r times the weighted
/// sum — with all pairwise congruences mod p verified, plus the closed form
/// for φ(2p), the unit-factor residue -1, and ψ′(0) = (2r+1)·φ′(0). PASS
/// requires φ′(0) ≡ 0 (mod p).
pub fn check_phi_prime_chain(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "phi_prime_chain";
    let (p, r, a) = (params.p, params.r, params.a);
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    if r < 1 {
        return Verdict::skip(id, params, ctx.claim, "r must be at least 1");
    }
    if !in_theorem_range(p, r, a) {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("a = {a} outside 1 <= a(2r+1) < p+r"),
        );
    }
    if (2 * r as u64 + 1).is_multiple_of(p) {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("p divides 2r+1 = {}; the unit-factor step degenerates", 2 * r + 1),
        );
    }

    let phi = phi_poly(p, a, r);
    let psi = psi_poly(p, a, r);
    let d_formal = phi.derivative().eval(&Rational::zero());
    let (with_shift, _) = weighted_ratio_sums(p, a, 2 * r + 1);
    let neg_s = -&with_shift;
    let two_r_s = rat_int(2 * r as i64) * &with_shift;
    let phi_0 = phi.eval(&Rational::zero());
    let phi_2p = phi.eval(&rat_int(2 * p as i64));
    let dq = (&phi_2p - &phi_0) / rat_int(2 * p as i64);

    let fail = |echo: CheckParams, note: String| Verdict {
        check_id: id.to_owned(),
        params: echo,
        claimed: ctx.claim,
        observed: None,
        residual: None,
        status: Status::Fail,
        note: Some(note),
    };

    // Sub-check: the terminating closed form reproduces φ(2p) exactly, and
    // its k = 0 term is a unit congruent to -1 mod p.
    let (closed, unit_factor) = phi_2p_closed_form(p, a, r);
    if closed != phi_2p {
        return fail(
            params.clone(),
            format!("closed form {closed} disagrees with direct evaluation {phi_2p}"),
        );
    }
    match reduce_mod(&unit_factor, p) {
        Ok(res) if res.value() == p - 1 => {}
        other => {
            return fail(
                params.clone(),
                format!("unit factor {unit_factor} is not -1 mod {p} ({other:?})"),
            );
        }
    }

    // Sub-check: all four routes agree mod p.
    let routes = [
        ("formal derivative", &d_formal),
        ("negated weighted sum", &neg_s),
        ("difference quotient", &dq),
        ("2r times weighted sum", &two_r_s),
    ];
    for (i, (name_a, val_a)) in routes.iter().enumerate() {
        for (name_b, val_b) in routes.iter().skip(i + 1) {
            if !congruent_mod(val_a, val_b, p, 1) {
                return fail(
                    params.clone(),
                    format!("{name_a} and {name_b} disagree mod {p}: {val_a} vs {val_b}"),
                );
            }
        }
    }

    // Sub-check: the derivative relation pinning ψ′(0) to φ′(0).
    let psi_prime_0 = psi.derivative().eval(&Rational::zero());
    if psi_prime_0 != rat_int(2 * r as i64 + 1) * &d_formal {
        return fail(
            params.clone(),
            format!("psi'(0) = {psi_prime_0} is not (2r+1) * phi'(0) = (2r+1) * {d_formal}"),
        );
    }

    let mut note = exact_only_note(ctx);
    push_note(
        &mut note,
        "all four routes to phi'(0) agree mod p; closed form matches phi(2p); \
         unit factor is -1 mod p; psi'(0) = (2r+1) phi'(0)",
    );
    valuation_verdict(
        id,
        params.clone(),
        ctx,
        p,
        Evaluated {
            exact: Some(d_formal),
            modular: None,
        },
        false,
        note,
    )
}

/// Taylor expansion of ψ at a multiple of p: with α = 2a + s·p,
/// `ψ(sp) - (s-1)·p·ψ′(0)` must have v_p >= 2, tying the lift parameter to
/// the derivative at zero.
pub fn check_taylor_step(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "taylor_step";
    let (p, r, a, s) = (params.p, params.r, params.a, params.s);
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    if r < 1 {
        return Verdict::skip(id, params, ctx.claim, "r must be at least 1");
    }
    if !in_theorem_range(p, r, a) {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("a = {a} outside 1 <= a(2r+1) < p+r"),
        );
    }
    if s >= p {
        return Verdict::skip(id, params, ctx.claim, format!("s = {s} outside 0 <= s < p"));
    }

    let psi = psi_poly(p, a, r);
    let at_sp = psi.eval(&rat_int((s * p) as i64));
    let linear = rat_int(s as i64 - 1) * rat_int(p as i64) * psi.derivative().eval(&Rational::zero());
    let value = at_sp - linear;
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ctx(e: i64) -> RunCtx {
        RunCtx::new(Mode::Rational, Claim::MinValuation(e))
    }

    fn shifted_params(p: u64, r: u32, a: u64, s: &[i64], t: &[i64]) -> CheckParams {
        CheckParams {
            p,
            r,
            a,
            s_vec: Some(s.to_vec()),
            t_vec: Some(t.to_vec()),
            ..Default::default()
        }
    }

    #[test]
    fn shifted_congruence_anchor_is_exact_zero() {
        let params = shifted_params(5, 1, 1, &[1, 1, 1], &[0, 0]);
        let v = check_shifted_congruence(&params, &ctx(1));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.observed, Some(Observed::Valuation(Valuation::Infinite)));
    }

    #[test]
    fn shifted_congruence_mixed_shifts() {
        // Tops -8, 2, -3 and bottoms 6, 1, truncated at 4:
        // terms 1 + 8 + 12 + 4 + 0 = 25.
        let params = shifted_params(5, 1, 1, &[2, 0, 1], &[1, 0]);
        let v = check_shifted_congruence(&params, &ctx(1));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.observed, Some(Observed::Valuation(Valuation::Finite(2))));
        assert_eq!(v.residual, Some(rat_int(5)));

        // Negative shifts are fine: the bottoms stay units mod p.
        let params = shifted_params(5, 1, 1, &[-1, 0, 1], &[-1, 0]);
        let v = check_shifted_congruence(&params, &ctx(1));
        assert_eq!(v.status, Status::Pass, "{v}");
    }

    #[test]
    fn shifted_congruence_zero_shift_is_plain_series() {
        // All-zero shifts at p=7, a=1, r=1: the plain sum 784 = 7^2 * 16.
        let params = shifted_params(7, 1, 1, &[0, 0, 0], &[0, 0]);
        let v = check_shifted_congruence(&params, &ctx(1));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.observed, Some(Observed::Valuation(Valuation::Finite(2))));
        assert_eq!(v.residual, Some(rat_int(112)));

        // Missing vectors default to zero shifts.
        let v = check_shifted_congruence(&CheckParams::pras(7, 1, 1, 0), &ctx(1));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.params.s_vec, Some(vec![0, 0, 0]));
        assert_eq!(v.params.t_vec, Some(vec![0, 0]));
    }

    #[test]
    fn shifted_congruence_modes_agree() {
        let params = shifted_params(5, 1, 1, &[2, 0, 1], &[1, 0]);
        for mode in [Mode::Modular, Mode::CrossCheck] {
            let v = check_shifted_congruence(&params, &RunCtx::new(mode, Claim::MinValuation(1)));
            assert_eq!(v.status, Status::Pass, "{v}");
            assert_eq!(v.observed.unwrap().valuation_lower_bound(), Some(2));
        }
    }

    #[test]
    fn shifted_congruence_gates() {
        let v = check_shifted_congruence(&shifted_params(8, 1, 1, &[0, 0, 0], &[0, 0]), &ctx(1));
        assert_eq!(v.status, Status::Skip);
        let v = check_shifted_congruence(&shifted_params(5, 1, 3, &[0, 0, 0], &[0, 0]), &ctx(1));
        assert_eq!(v.status, Status::Skip);
        let v = check_shifted_congruence(&shifted_params(5, 1, 1, &[0, 0], &[0, 0]), &ctx(1));
        assert_eq!(v.status, Status::Skip);
        assert!(v.note.unwrap().contains("3 top shifts"));
    }

    #[test]
    fn shifted_congruence_r_zero_single_top() {
        // r = 0: one top, no bottoms; still vanishes mod p.
        let params = shifted_params(7, 0, 2, &[3], &[]);
        let v = check_shifted_congruence(&params, &ctx(1));
        assert_eq!(v.status, Status::Pass, "{v}");
    }

    #[test]
    fn phi_prime_chain_small_case() {
        // Frozen intermediate values for (p, a, r) = (5, 1, 1).
        assert_eq!(
            phi_poly(5, 1, 1).derivative().eval(&Rational::zero()),
            rat(-1025, 4)
        );
        assert_eq!(weighted_ratio_sums(5, 1, 3).0, rat(1175, 6));
        assert_eq!(
            (phi_poly(5, 1, 1).eval(&rat_int(10)) - phi_poly(5, 1, 1).eval(&Rational::zero()))
                / rat_int(10),
            rat_int(85)
        );
        let (closed, unit) = phi_2p_closed_form(5, 1, 1);
        assert_eq!(closed, rat_int(1075));
        assert_eq!(unit, rat_int(-2016));

        let v = check_phi_prime_chain(&CheckParams::pras(5, 1, 1, 0), &ctx(1));
        assert_eq!(v.status, Status::Pass, "{v}");
        assert_eq!(v.observed, Some(Observed::Valuation(Valuation::Finite(2))));
        assert_eq!(v.residual, Some(rat(-205, 4)));
        assert!(v.note.unwrap().contains("unit factor"));
    }

    #[test]
    fn phi_prime_chain_more_primes() {
        // 2p - 2a = 10 exceeds 2r(2a-1) = 6, so the closed form terminates.
        let v = check_phi_prime_chain(&CheckParams::pras(7, 1, 2, 0), &ctx(1));
        assert_eq!(v.status, Status::Pass, "{v}");
        let v = check_phi_prime_chain(&CheckParams::pras(5, 3, 1, 0), &ctx(1));
        assert_eq!(v.status, Status::Pass, "{v}");
        let v = check_phi_prime_chain(&CheckParams::pras(11, 2, 2, 0), &ctx(1));
        assert_eq!(v.status, Status::Pass, "{v}");
    }

    #[test]
    fn phi_prime_chain_gates() {
        // 2r+1 = 5 = p: the degenerate case is skipped, not failed.
        let v = check_phi_prime_chain(&CheckParams::pras(5, 2, 1, 0), &ctx(1));
        assert_eq!(v.status, Status::Skip);
        assert!(v.note.unwrap().contains("divides"));
        // Out of the theorem range: a(2r+1) = 6 is not < 6.
        let v = check_phi_prime_chain(&CheckParams::pras(5, 1, 2, 0), &ctx(1));
        assert_eq!(v.status, Status::Skip);
        let v = check_phi_prime_chain(&CheckParams::pras(5, 0, 1, 0), &ctx(1));
        assert_eq!(v.status, Status::Skip);
    }

    #[test]
    fn taylor_step_vanishing_and_generic() {
        // s = 1: psi(p) = 0 and the linear term carries (s-1) = 0.
        let v = check_taylor_step(&CheckParams::pras(5, 1, 1, 1), &ctx(2));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.observed, Some(Observed::Valuation(Valuation::Infinite)));

        // s = 0: psi(0) + p psi'(0) = 225 + 5 * (-3075/4) = -14475/4.
        let v = check_taylor_step(&CheckParams::pras(5, 1, 1, 0), &ctx(2));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.observed, Some(Observed::Valuation(Valuation::Finite(2))));
        assert_eq!(v.residual, Some(rat(-579, 4)));

        let v = check_taylor_step(&CheckParams::pras(7, 1, 1, 3), &ctx(2));
        assert_eq!(v.status, Status::Pass, "{v}");
    }

    #[test]
    fn taylor_step_all_lifts() {
        for p in [5u64, 7, 11] {
            for s in 0..p {
                let v = check_taylor_step(&CheckParams::pras(p, 1, 1, s), &ctx(2));
                assert_eq!(v.status, Status::Pass, "{v}");
            }
        }
    }

    #[test]
    fn taylor_step_gates() {
        let v = check_taylor_step(&CheckParams::pras(5, 1, 1, 5), &ctx(2));
        assert_eq!(v.status, Status::Skip);
        let v = check_taylor_step(&CheckParams::pras(5, 1, 2, 0), &ctx(2));
        assert_eq!(v.status, Status::Skip);
    }
}
