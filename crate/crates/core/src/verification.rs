//! Exact polynomial identity checks between hammock networks and their duals.
//!
//! Every identity is checked coefficient by coefficient on integer
//! polynomials; nothing is sampled or compared with a tolerance.

use serde_json::{json, Value};

use crate::duality::{verify_corollary1, verify_theorem1};
use crate::error::Result;
use crate::lattice::{build_hammock, Kind};
use crate::limits::{Engine, Limits};
use crate::poly::IntPoly;
use crate::reliability::{reliability, resolve_engine, ReliabilityPolynomial};
use crate::report::VerificationReport;

/// Engine choice and ceilings shared by all checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub engine: Engine,
    pub limits: Limits,
}

impl VerifyOptions {
    fn polynomial(&self, l: i64, w: i64, kind: Kind) -> Result<ReliabilityPolynomial> {
        let net = build_hammock(l, w, kind)?;
        reliability(&net, self.engine, &self.limits)
    }

    fn engine_name(&self, l: i64, w: i64, kind: Kind) -> Result<String> {
        let net = build_hammock(l, w, kind)?;
        Ok(resolve_engine(&net, self.engine, &self.limits).to_string())
    }
}

fn coeffs_json(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn poly_json(p: &ReliabilityPolynomial) -> Value {
    coeffs_json(&p.expanded())
}

/// `h^(i)_{l,w}(p) + h^(2/i)_{w,l}(1 - p) - 1` must vanish identically.
pub fn verify_duality_identity(l: i64, w: i64, kind: Kind, opts: &VerifyOptions) -> Result<VerificationReport> {
    let h = opts.polynomial(l, w, kind)?;
    let transposed = opts.polynomial(w, l, kind.flip())?;
    let residual = &(&h.expanded() + &transposed.expanded().reflect()) - &IntPoly::one();

    let mut report = VerificationReport::new("duality_identity")
        .param("l", l)
        .param("w", w)
        .param("kind", kind.number())
        .param("engine", opts.engine_name(l, w, kind)?);
    report.count("nonzero_residual_coefficients", residual.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count());
    report.detail("h", poly_json(&h));
    report.detail("h_transposed_dual_kind", poly_json(&transposed));
    report.detail("residual", coeffs_json(&residual));
    if !residual.is_zero() {
        report.fail(coeffs_json(&residual));
    }
    Ok(report)
}

/// `h(p) + h(1 - p) - 1 = 0` for the `(2k+1) x (2k+1)` hammock, and
/// `h(1/2) = 1/2`.
pub fn verify_self_symmetry(k: i64, opts: &VerifyOptions) -> Result<VerificationReport> {
    let side = 2 * k + 1;
    let h = opts.polynomial(side, side, Kind::First)?;
    let residual = &(&h.expanded() + &h.expanded().reflect()) - &IntPoly::one();
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let at_half = h.eval(&half)?;

    let mut report = VerificationReport::new("self_symmetry")
        .param("k", k)
        .param("l", side)
        .param("w", side)
        .param("engine", opts.engine_name(side, side, Kind::First)?);
    report.detail("h", poly_json(&h));
    report.detail("residual", coeffs_json(&residual));
    report.detail("h_at_half", at_half.to_string());
    if !residual.is_zero() {
        report.fail(coeffs_json(&residual));
    }
    if at_half != half {
        report.fail(json!({"h_at_half": at_half.to_string()}));
    }
    Ok(report)
}

/// `b_k = 0` for `k < l`, `h(1) = 1`, and `h^(k)(1) = 0` for `1 <= k < w`.
pub fn verify_derivative_orders(l: i64, w: i64, kind: Kind, opts: &VerifyOptions) -> Result<VerificationReport> {
    let h = opts.polynomial(l, w, kind)?;
    let mut report = VerificationReport::new("derivative_orders")
        .param("l", l)
        .param("w", w)
        .param("kind", kind.number())
        .param("engine", opts.engine_name(l, w, kind)?);
    check_derivative_orders(&h, &mut report);
    Ok(report)
}

/// The derivative-order conditions for an already computed polynomial.
pub fn check_derivative_orders(h: &ReliabilityPolynomial, report: &mut VerificationReport) {
    let (l, w) = (h.length(), h.width());
    let b = h.coefficients();
    let one = num_bigint::BigInt::from(1);

    let low: Vec<String> = b[..l.min(b.len())].iter().map(ToString::to_string).collect();
    report.detail("low_coefficients", low);
    if let Some(k) = b[..l.min(b.len())].iter().position(|c| !num_traits::Zero::is_zero(c)) {
        report.fail(json!({"coefficient": k, "value": b[k].to_string()}));
    }

    let poly = h.expanded();
    let at_one = poly.eval_int(&one);
    report.detail("h_at_1", at_one.to_string());
    if at_one != one {
        report.fail(json!({"h_at_1": at_one.to_string()}));
    }

    let derivs: Vec<String> = (1..w).map(|k| poly.nth_derivative(k).eval_int(&one).to_string()).collect();
    for (k, d) in (1..w).zip(&derivs) {
        if d != "0" {
            report.fail(json!({"derivative_order": k, "value_at_1": d}));
        }
    }
    report.detail("derivatives_at_1", derivs);
}

/// Kinds 1 and 2 must agree when `l` or `w` is odd. When both are even the
/// two networks are expected to differ; agreement there is reported as
/// unexpected but does not fail the check.
pub fn verify_remark1(l: i64, w: i64, opts: &VerifyOptions) -> Result<VerificationReport> {
    let first = opts.polynomial(l, w, Kind::First)?;
    let second = opts.polynomial(l, w, Kind::Second)?;
    let mut report = VerificationReport::new("remark1")
        .param("l", l)
        .param("w", w)
        .param("engine", opts.engine_name(l, w, Kind::First)?);
    report.detail("h_kind1", poly_json(&first));
    report.detail("h_kind2", poly_json(&second));

    let lowest_difference = first
        .pathset_counts()
        .iter()
        .zip(second.pathset_counts())
        .position(|(a, b)| a != b);
    let both_even = l % 2 == 0 && w % 2 == 0;
    report.detail("expectation", if both_even { "differ" } else { "identical" });
    report.detail("lowest_differing_index", json!(lowest_difference));
    if both_even {
        report.detail("unexpected", lowest_difference.is_none());
    } else if let Some(i) = lowest_difference {
        report.fail(json!({
            "index": i,
            "kind1": first.pathset_counts()[i].to_string(),
            "kind2": second.pathset_counts()[i].to_string(),
        }));
    }
    Ok(report)
}

/// Which checks a suite run includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Theorem1,
    Corollary1,
    DualityIdentity,
    SelfSymmetry,
    DerivativeOrders,
    Remark1,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Theorem1,
        Check::Corollary1,
        Check::DualityIdentity,
        Check::SelfSymmetry,
        Check::DerivativeOrders,
        Check::Remark1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Corollary1 => "corollary1",
            Check::DualityIdentity => "duality_identity",
            Check::SelfSymmetry => "self_symmetry",
            Check::DerivativeOrders => "derivative_orders",
            Check::Remark1 => "remark1",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// Runs the selected checks over `1..=max_l` x `1..=max_w`, in a fixed
/// order. Grid points beyond a check's ceiling are skipped, not failed; the
/// exhaustive checks stop at their edge ceilings and the polynomial checks
/// at whatever the chosen engine can reach.
pub fn run_suite(max_l: i64, max_w: i64, checks: &[Check], opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    let grid: Vec<(i64, i64)> = (1..=max_l).flat_map(|l| (1..=max_w).map(move |w| (l, w))).collect();
    let fits = |r: &Result<VerificationReport>| !matches!(r, Err(e) if e.is_resource_limit());

    for &check in Check::ALL.iter().filter(|c| checks.contains(c)) {
        match check {
            Check::SelfSymmetry => {
                let mut k = 0;
                while 2 * k < max_l.min(max_w) {
                    let r = verify_self_symmetry(k, opts);
                    if fits(&r) {
                        reports.push(r?);
                    }
                    k += 1;
                }
            }
            Check::Remark1 => {
                for &(l, w) in &grid {
                    let r = verify_remark1(l, w, opts);
                    if fits(&r) {
                        reports.push(r?);
                    }
                }
            }
            _ => {
                for &(l, w) in &grid {
                    for kind in Kind::BOTH {
                        let r = match check {
                            Check::Theorem1 => verify_theorem1(l, w, kind, &opts.limits),
                            Check::Corollary1 => verify_corollary1(l, w, kind, &opts.limits),
                            Check::DualityIdentity => verify_duality_identity(l, w, kind, opts),
                            Check::DerivativeOrders => verify_derivative_orders(l, w, kind, opts),
                            Check::SelfSymmetry | Check::Remark1 => unreachable!(),
                        };
                        if fits(&r) {
                            reports.push(r?);
                        }
                    }
                }
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn duality_identity_examples() {
        for (l, w, kind) in [(2, 3, Kind::First), (3, 2, Kind::Second), (1, 1, Kind::First), (2, 2, Kind::First)] {
            let r = verify_duality_identity(l, w, kind, &opts()).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.details["residual"], json!([]));
        }
    }

    #[test]
    fn self_symmetry_examples() {
        let r = verify_self_symmetry(1, &opts()).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["h_at_half"], "1/2");
        assert_eq!(
            r.details["h"],
            json!(["0", "0", "0", "8", "-6", "-6", "0", "12", "-9", "2"])
        );
        assert!(verify_self_symmetry(0, &opts()).unwrap().pass);
    }

    #[test]
    fn derivative_orders_examples() {
        let r = verify_derivative_orders(3, 2, Kind::First, &opts()).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["low_coefficients"], json!(["0", "0", "0"]));
        assert_eq!(r.details["derivatives_at_1"], json!(["0"]));
        let r = verify_derivative_orders(2, 3, Kind::First, &opts()).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["derivatives_at_1"], json!(["0", "0"]));
        let r = verify_derivative_orders(1, 1, Kind::First, &opts()).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["derivatives_at_1"], json!([]));
    }

    #[test]
    fn derivative_orders_detects_violation() {
        let net = build_hammock(2, 2, Kind::First).unwrap();
        // 2p - p^2 is not a 2x2 hammock polynomial: b_1 != 0.
        let bogus = ReliabilityPolynomial::from_pathset_counts(
            &net,
            vec![0.into(), 2.into(), 1.into(), 0.into(), 0.into()],
        );
        let mut report = VerificationReport::new("derivative_orders");
        check_derivative_orders(&bogus, &mut report);
        assert!(!report.pass);
        assert!(report.witness.is_some());
    }

    #[test]
    fn remark1_examples() {
        let r = verify_remark1(3, 2, &opts()).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["lowest_differing_index"], Value::Null);
        let r = verify_remark1(2, 2, &opts()).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["h_kind1"], json!(["0", "0", "4", "-4", "1"]));
        assert_eq!(r.details["h_kind2"], json!(["0", "0", "2", "0", "-1"]));
        assert_eq!(r.details["lowest_differing_index"], json!(2));
        assert_eq!(r.details["unexpected"], json!(false));
        assert!(verify_remark1(1, 1, &opts()).unwrap().pass);
    }

    #[test]
    fn suite_is_reproducible() {
        let a = run_suite(2, 3, &Check::ALL, &opts()).unwrap();
        let b = run_suite(2, 3, &Check::ALL, &opts()).unwrap();
        assert!(a.iter().all(|r| r.pass));
        let text_a: Vec<String> = a.iter().map(VerificationReport::to_json_string).collect();
        let text_b: Vec<String> = b.iter().map(VerificationReport::to_json_string).collect();
        assert_eq!(text_a, text_b);
        // 6 grid points x 2 kinds for four checks, 1 symmetry case, 6 remark1 cases
        assert_eq!(a.len(), 4 * 12 + 1 + 6);
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::from_name(c.name()), Some(c));
        }
        assert_eq!(Check::from_name("nope"), None);
    }
}
