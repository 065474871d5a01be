//! Checkers for the central family of vanishing congruences: balanced
//! truncated series at integer (or rational) lifts of the residue class 2a.

use super::*;

/// The headline congruence: for p odd prime, r >= 1 and 1 <= a with
/// a(2r+1) < p + r, the (2r+1)-fold balanced series at any lift α ≡ 2a
/// (mod p), truncated at p - 1, vanishes mod p².
pub fn check_main_theorem(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "main_theorem";
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
            format!("a = {a} outside 1 <= a < (p+r)/(2r+1) for p={p}, r={r}"),
        );
    }
    let alpha = match resolve_lift(params, p, 2 * a as i64) {
        Ok(alpha) => alpha,
        Err(reason) => return Verdict::skip(id, params, ctx.claim, reason),
    };
    let spec = HyperSeriesSpec::balanced_unit(alpha, 2 * r as usize + 1, p - 1);
    match evaluate_series(&spec, p, None, ctx) {
        Ok(eval) => valuation_verdict(id, params.clone(), ctx, p, eval, false, None),
        Err(e) => error_verdict(id, params.clone(), ctx.claim, &e),
    }
}

/// The conjectured r >= 2 variant phrased through binomial coefficients:
/// `sum_{k=0}^{p-1} (-1)^k binom(x, k)^{2r+1} ≡ 0 (mod p²)` for
/// x ≡ -2a (mod p) with 1 <= a <= (p+1)/(2r+1). Evaluated along two routes —
/// the alternating binomial sum and the balanced series with tops -x — which
/// must agree exactly.
pub fn check_sun_conjecture(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "sun_conjecture";
    let (p, r) = (params.p, params.r);
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    if r < 2 {
        return Verdict::skip(id, params, ctx.claim, "r must be at least 2");
    }

    // Resolve the lift x ≡ -2a (mod p) and the residue-class index a.
    let (x, a) = match &params.x {
        Some(x) => {
            let Some(t) = residue_class_mod_p(x, p) else {
                return Verdict::skip(id, params, ctx.claim, "x must be a p-adic integer");
            };
            // 2a ≡ -x (mod p): recover a as a residue in 0..p.
            let half = Residue::new(2, p).inv().expect("2 is a unit mod odd p");
            let a = ((-Residue::new(t, p)) * half).value();
            if a == 0 {
                return Verdict::skip(id, params, ctx.claim, "no valid a for this x");
            }
            (x.clone(), a)
        }
        None => {
            let a = params.a;
            if a < 1 {
                return Verdict::skip(id, params, ctx.claim, "a must be at least 1");
            }
            match resolve_lift(params, p, -(2 * a as i64)) {
                Ok(x) => (x, a),
                Err(reason) => return Verdict::skip(id, params, ctx.claim, reason),
            }
        }
    };
    // Sun's range is non-strict: a(2r+1) <= p + 1.
    if (a as u128) * (2 * r as u128 + 1) > p as u128 + 1 {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("a = {a} outside 1 <= a <= (p+1)/(2r+1) for p={p}, r={r}"),
        );
    }

    let mut echo = params.clone();
    echo.a = a;
    let slots = 2 * r + 1;
    let series_spec = HyperSeriesSpec::balanced_unit(-&x, slots as usize, p - 1);

    // Evaluate both routes in each requested world and insist they agree.
    let mut eval = match evaluate_series(&series_spec, p, None, ctx) {
        Ok(ev) => ev,
        Err(err) => return error_verdict(id, echo, ctx.claim, &err),
    };
    if let Some(series_exact) = &eval.exact {
        let binom =
            match alternating_binomial_power_sum(&RationalField, &x, slots, p - 1) {
                Ok(v) => v,
                Err(err) => return error_verdict(id, echo, ctx.claim, &SeriesError::from(err)),
            };
        if &binom != series_exact {
            return Verdict {
                check_id: id.to_owned(),
                params: echo,
                claimed: ctx.claim,
                observed: None,
                residual: None,
                status: Status::Fail,
                note: Some(format!(
                    "evaluation routes disagree: binomial form {binom}, series form {series_exact}"
                )),
            };
        }
        eval.exact = Some(binom);
    }
    if let Some(series_mod) = &eval.modular {
        let ring = ResidueRing::new(series_mod.modulus());
        let binom = match alternating_binomial_power_sum(&ring, &x, slots, p - 1) {
            Ok(v) => v,
            Err(err) => return error_verdict(id, echo, ctx.claim, &SeriesError::from(err)),
        };
        if &binom != series_mod {
            return Verdict {
                check_id: id.to_owned(),
                params: echo,
                claimed: ctx.claim,
                observed: None,
                residual: None,
                status: Status::Fail,
                note: Some(format!(
                    "evaluation routes disagree mod {}: binomial form {}, series form {}",
                    series_mod.modulus(),
                    binom.value(),
                    series_mod.value()
                )),
            };
        }
    }
    valuation_verdict(
        id,
        echo,
        ctx,
        p,
        eval,
        false,
        Some("binomial and series routes agree".to_owned()),
    )
}

/// Exploratory measurement of `sum_{k=0}^{p-1} (-1)^k binom(x, k)^3` for
/// x ≡ -2a (mod p), 1 <= a <= (p-1)/3. The nominal claimed exponent is 3,
/// but observed small-prime valuations sit at 2, so this checker records
/// data instead of passing or failing.
pub fn check_binomial_cube(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "binomial_cube";
    let p = params.p;
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    let x = match &params.x {
        Some(x) => x.clone(),
        None => {
            if params.a < 1 {
                return Verdict::skip(id, params, ctx.claim, "a must be at least 1");
            }
            match resolve_lift(params, p, -(2 * params.a as i64)) {
                Ok(x) => x,
                Err(reason) => return Verdict::skip(id, params, ctx.claim, reason),
            }
        }
    };
    let Some(t) = residue_class_mod_p(&x, p) else {
        return Verdict::skip(id, params, ctx.claim, "x must be a p-adic integer");
    };
    let half = Residue::new(2, p).inv().expect("2 is a unit mod odd p");
    let a = ((-Residue::new(t, p)) * half).value();
    if a < 1 || a > (p - 1) / 3 {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("no a in 1 <= a <= (p-1)/3 with x ≡ -2a (mod {p})"),
        );
    }
    let mut echo = params.clone();
    echo.a = a;

    let e = ctx.exponent();
    let wants_exact = matches!(ctx.mode, Mode::Rational | Mode::CrossCheck);
    let modulus = u32::try_from(e + 1).ok().and_then(|exp| p.checked_pow(exp));
    let wants_modular = matches!(ctx.mode, Mode::Modular | Mode::CrossCheck) && modulus.is_some();
    let wants_exact = wants_exact || !wants_modular;

    let exact = if wants_exact {
        match alternating_binomial_power_sum(&RationalField, &x, 3, p - 1) {
            Ok(v) => Some(v),
            Err(err) => return error_verdict(id, echo, ctx.claim, &SeriesError::from(err)),
        }
    } else {
        None
    };
    let modular = if wants_modular {
        let ring = ResidueRing::new(modulus.unwrap());
        match alternating_binomial_power_sum(&ring, &x, 3, p - 1) {
            Ok(v) => Some(v),
            Err(err) => return error_verdict(id, echo, ctx.claim, &SeriesError::from(err)),
        }
    } else {
        None
    };
    valuation_verdict(
        id,
        echo,
        ctx,
        p,
        Evaluated { exact, modular },
        true,
        Some("exploratory: observed valuation recorded, claim not enforced".to_owned()),
    )
}

/// The np-fold variant: for odd n >= 1 and 1 <= a <= (p-1)/2, the series
/// with np identical tops α ≡ 2a (mod p) and np - 1 unit bottoms, truncated
/// at p - 1, vanishes mod p². The depth makes p | (number of tops choose
/// half), so no range condition on a beyond 2a <= p - 1 is needed.
pub fn check_np_series(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "np_series";
    let p = params.p;
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    let Some(n) = params.n else {
        return Verdict::skip(id, params, ctx.claim, "n (odd multiplier) is required");
    };
    if n % 2 == 0 || n < 1 {
        return Verdict::skip(id, params, ctx.claim, format!("n = {n} must be odd"));
    }
    let a = params.a;
    if a < 1 || 2 * a > p - 1 {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("a = {a} outside 1 <= a <= (p-1)/2"),
        );
    }
    let alpha = match resolve_lift(params, p, 2 * a as i64) {
        Ok(alpha) => alpha,
        Err(reason) => return Verdict::skip(id, params, ctx.claim, reason),
    };
    let slots = (n * p) as usize;
    let spec = HyperSeriesSpec::balanced_unit(alpha, slots, p - 1);
    match evaluate_series(&spec, p, None, ctx) {
        Ok(eval) => valuation_verdict(id, params.clone(), ctx, p, eval, false, None),
        Err(e) => error_verdict(id, params.clone(), ctx.claim, &e),
    }
}

/// Depth reduction: with h = (p-1)/2 and r* the least positive residue of r
/// mod h, the (2r+1)-fold series vanishes mod p² whenever a is in range for
/// r*. Cross-checks the underlying mechanism: the harmonic-weighted sums for
/// exponents 2r+1 and 2r*+1 agree mod p.
pub fn check_exponent_reduction(params: &CheckParams, ctx: &RunCtx) -> Verdict {
    let id = "exponent_reduction";
    let (p, r, a) = (params.p, params.r, params.a);
    if !is_odd_prime(p) {
        return Verdict::skip(id, params, ctx.claim, "p must be an odd prime");
    }
    if r < 1 {
        return Verdict::skip(id, params, ctx.claim, "r must be at least 1");
    }
    let h = (p - 1) / 2;
    let rstar = r as u64 % h;
    if rstar == 0 {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("(p-1)/2 = {h} divides r = {r}; no reduced exponent"),
        );
    }
    let rstar = rstar as u32;
    if !in_theorem_range(p, rstar, a) {
        return Verdict::skip(
            id,
            params,
            ctx.claim,
            format!("a = {a} outside 1 <= a < (p+r*)/(2r*+1) with r* = {rstar}"),
        );
    }
    let alpha = match resolve_lift(params, p, 2 * a as i64) {
        Ok(alpha) => alpha,
        Err(reason) => return Verdict::skip(id, params, ctx.claim, reason),
    };

    // Mechanism cross-check (exact, cheap): the phi'(0)-style weighted sums
    // for r and r* are congruent mod p by Fermat's little theorem.
    let (sum_r, _) = weighted_ratio_sums(p, a, 2 * r + 1);
    let (sum_rstar, _) = weighted_ratio_sums(p, a, 2 * rstar + 1);
    if !congruent_mod(&sum_r, &sum_rstar, p, 1) {
        return Verdict {
            check_id: id.to_owned(),
            params: params.clone(),
            claimed: ctx.claim,
            observed: None,
            residual: None,
            status: Status::Fail,
            note: Some(format!(
                "weighted sums for r and r* = {rstar} disagree mod {p}: {sum_r} vs {sum_rstar}"
            )),
        };
    }

    let spec = HyperSeriesSpec::balanced_unit(alpha, 2 * r as usize + 1, p - 1);
    match evaluate_series(&spec, p, None, ctx) {
        Ok(eval) => valuation_verdict(
            id,
            params.clone(),
            ctx,
            p,
            eval,
            false,
            Some(format!("weighted sums for r and r* = {rstar} agree mod p")),
        ),
        Err(e) => error_verdict(id, params.clone(), ctx.claim, &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn ctx(mode: Mode, claim: Claim) -> RunCtx {
        RunCtx::new(mode, claim)
    }

    fn rational_ctx(e: i64) -> RunCtx {
        ctx(Mode::Rational, Claim::MinValuation(e))
    }

    #[test]
    fn main_theorem_golden_cases() {
        // p=7, r=1, a=1, s=0: value 784 = 16·49, exact valuation 2.
        let v = check_main_theorem(&CheckParams::pras(7, 1, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(
            v.observed,
            Some(Observed::Valuation(Valuation::Finite(2)))
        );
        assert_eq!(v.residual, Some(rat_int(16)));

        // p=5, r=1, a=1, s=1 (α = 7): value 9876000, v_5 = 3 >= 2.
        let v = check_main_theorem(&CheckParams::pras(5, 1, 1, 1), &rational_ctx(2));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(
            v.observed,
            Some(Observed::Valuation(Valuation::Finite(3)))
        );
        assert_eq!(v.residual, Some(rat(9_876_000, 25)));

        // p=5, r=1, a=2: out of range (2·3 >= 5+1).
        let v = check_main_theorem(&CheckParams::pras(5, 1, 2, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip);
    }

    #[test]
    fn main_theorem_modes_agree() {
        for (p, r, a, s) in [(7u64, 1u32, 1u64, 0u64), (11, 2, 1, 3), (13, 1, 2, 12)] {
            let params = CheckParams::pras(p, r, a, s);
            let exact = check_main_theorem(&params, &rational_ctx(2));
            let modular =
                check_main_theorem(&params, &ctx(Mode::Modular, Claim::MinValuation(2)));
            let cross =
                check_main_theorem(&params, &ctx(Mode::CrossCheck, Claim::MinValuation(2)));
            assert_eq!(exact.status, Status::Pass);
            assert_eq!(modular.status, Status::Pass);
            assert_eq!(cross.status, Status::Pass);
            // A modular observation is either the same exact valuation or a
            // lower bound the exact valuation satisfies.
            let ve = exact.observed.unwrap().valuation_lower_bound();
            let vm = modular.observed.unwrap().valuation_lower_bound();
            assert!(vm.unwrap() <= ve.unwrap_or(i64::MAX));
        }
    }

    #[test]
    fn main_theorem_gates() {
        let v = check_main_theorem(&CheckParams::pras(9, 1, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip); // 9 is not prime
        let v = check_main_theorem(&CheckParams::pras(7, 0, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip); // r = 0
        let v = check_main_theorem(&CheckParams::pras(7, 1, 1, 7), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip); // s out of range
        let mut params = CheckParams::pras(7, 1, 1, 0);
        params.x = Some(rat_int(3)); // 3 is not ≡ 2 mod 7
        let v = check_main_theorem(&params, &rational_ctx(2));
        assert_eq!(v.status, Status::Skip);
    }

    #[test]
    fn main_theorem_accepts_rational_lift() {
        // α = 2 + 49·(3/4): a 7-adic integer ≡ 2 (mod 49), so the verdict
        // must match the integer lift α = 2.
        let mut params = CheckParams::pras(7, 1, 1, 0);
        params.x = Some(rat_int(2) + rat(3 * 49, 4));
        let v = check_main_theorem(&params, &rational_ctx(2));
        assert_eq!(v.status, Status::Pass);
        let w = check_main_theorem(&CheckParams::pras(7, 1, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, w.status);
    }

    #[test]
    fn sun_conjecture_examples() {
        // p=11, r=2, x=-2: sum of (k+1)^5 over k=0..10 is 381876 = 2^2·3·11^2·263.
        let mut params = CheckParams::pras(11, 2, 0, 0);
        params.x = Some(rat_int(-2));
        let v = check_sun_conjecture(&params, &rational_ctx(2));
        assert_eq!(v.status, Status::Pass, "{v}");
        assert_eq!(v.params.a, 1); // derived from x
        assert_eq!(
            v.observed,
            Some(Observed::Valuation(Valuation::Finite(2)))
        );

        // p=7, r=3: x=-2 has a=1 with 1·7 <= 8 — runs; x=-4 has a=2, 14 > 8 — SKIP.
        let mut params = CheckParams::pras(7, 3, 0, 0);
        params.x = Some(rat_int(-2));
        assert_eq!(check_sun_conjecture(&params, &rational_ctx(2)).status, Status::Pass);
        params.x = Some(rat_int(-4));
        assert_eq!(check_sun_conjecture(&params, &rational_ctx(2)).status, Status::Skip);

        // r = 1 is outside the conjecture.
        let v = check_sun_conjecture(&CheckParams::pras(11, 1, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip);
    }

    #[test]
    fn sun_conjecture_lift_sweep() {
        // x = -2 + 5t for t in {0,1,2}: identical statuses.
        let statuses: Vec<Status> = (0..3)
            .map(|t| {
                let mut params = CheckParams::pras(5, 2, 0, 0);
                params.x = Some(rat_int(-2 + 5 * t));
                check_sun_conjecture(&params, &rational_ctx(2)).status
            })
            .collect();
        assert_eq!(statuses, vec![Status::Pass; 3]);
    }

    #[test]
    fn sun_conjecture_modular_matches_exact() {
        let mut params = CheckParams::pras(11, 2, 0, 0);
        params.x = Some(rat_int(-2));
        let exact = check_sun_conjecture(&params, &rational_ctx(2));
        let modular = check_sun_conjecture(&params, &ctx(Mode::Modular, Claim::MinValuation(2)));
        let cross = check_sun_conjecture(&params, &ctx(Mode::CrossCheck, Claim::MinValuation(2)));
        assert_eq!(exact.status, modular.status);
        assert_eq!(cross.status, Status::Pass);
    }

    #[test]
    fn binomial_cube_is_exploratory_data() {
        // p=7, x=-2: sum is 784 with v_7 = 2, below the nominal claim of 3 —
        // recorded as DATA, never FAIL.
        let mut params = CheckParams::pras(7, 0, 0, 0);
        params.x = Some(rat_int(-2));
        let v = check_binomial_cube(&params, &rational_ctx(3));
        assert_eq!(v.status, Status::Data);
        assert_eq!(
            v.observed,
            Some(Observed::Valuation(Valuation::Finite(2)))
        );
        assert_eq!(v.params.a, 1);
        // residual = 784 / 7^3.
        assert_eq!(v.residual, Some(rat(784, 343)));

        // p=5, x=-2: sum 225 = 9·25, v_5 = 2.
        let mut params = CheckParams::pras(5, 0, 0, 0);
        params.x = Some(rat_int(-2));
        let v = check_binomial_cube(&params, &rational_ctx(3));
        assert_eq!(v.status, Status::Data);
        assert_eq!(
            v.observed,
            Some(Observed::Valuation(Valuation::Finite(2)))
        );

        // p=7, x=0: no a in range.
        let mut params = CheckParams::pras(7, 0, 0, 0);
        params.x = Some(rat_int(0));
        assert_eq!(check_binomial_cube(&params, &rational_ctx(3)).status, Status::Skip);
    }

    #[test]
    fn np_series_examples() {
        // p=3, n=1, a=1, s=0: 1 + 8 + 27 = 36 = 4·9, v_3 = 2.
        let mut params = CheckParams::pras(3, 1, 1, 0);
        params.n = Some(1);
        let v = check_np_series(&params, &rational_ctx(2));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(
            v.observed,
            Some(Observed::Valuation(Valuation::Finite(2)))
        );

        // p=3, n=3: nine tops; sum of (k+1)^9 for k=0..2 is 20196 = 2^2·3^3·11·17.
        let mut params = CheckParams::pras(3, 3, 1, 0);
        params.n = Some(3);
        let v = check_np_series(&params, &rational_ctx(2));
        assert_eq!(v.status, Status::Pass);
        assert_eq!(
            v.observed,
            Some(Observed::Valuation(Valuation::Finite(3)))
        );

        // p=5, n=1, a=2, s=1: α = 9, five tops.
        let mut params = CheckParams::pras(5, 1, 2, 1);
        params.n = Some(1);
        let v = check_np_series(&params, &rational_ctx(2));
        assert_eq!(v.status, Status::Pass, "{v}");

        // Even n gates out; missing n gates out.
        let mut params = CheckParams::pras(5, 2, 1, 0);
        params.n = Some(2);
        assert_eq!(check_np_series(&params, &rational_ctx(2)).status, Status::Skip);
        let params = CheckParams::pras(5, 1, 1, 0);
        assert_eq!(check_np_series(&params, &rational_ctx(2)).status, Status::Skip);
    }

    #[test]
    fn exponent_reduction_examples() {
        // p=5, r=3: r* = 3 mod 2 = 1, a = 1 < 6/3 = 2 — PASS.
        let v = check_exponent_reduction(&CheckParams::pras(5, 3, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Pass, "{v}");

        // p=5, r=2: (p-1)/2 = 2 divides r — SKIP.
        let v = check_exponent_reduction(&CheckParams::pras(5, 2, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip);

        // p=7, r=4, s=2: r* = 1, a = 1 < 8/3 — PASS.
        let v = check_exponent_reduction(&CheckParams::pras(7, 4, 1, 2), &rational_ctx(2));
        assert_eq!(v.status, Status::Pass, "{v}");

        // p=3: h = 1 divides everything.
        let v = check_exponent_reduction(&CheckParams::pras(3, 2, 1, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip);
    }

    #[test]
    fn exponent_reduction_widened_range() {
        // p=13, r=7: r* = 1, so a may go up to a < 14/3, i.e. a in {1,...,4},
        // even though the unreduced theorem range would stop at a(15) < 20.
        for a in 1..=4 {
            let v = check_exponent_reduction(&CheckParams::pras(13, 7, a, 0), &rational_ctx(2));
            assert_eq!(v.status, Status::Pass, "a={a}: {v}");
        }
        let v = check_exponent_reduction(&CheckParams::pras(13, 7, 5, 0), &rational_ctx(2));
        assert_eq!(v.status, Status::Skip);
    }
}
