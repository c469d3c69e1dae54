//! One function per subcommand. Each returns a [`Report`]; library errors
//! are folded into the verdict rather than propagated.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use siegelkit::diophantine::{self, Branch, ThueInstance};
use siegelkit::families::{self, FamilySpec};
use siegelkit::measure::{self, MeasureOutcome, Variant};
use siegelkit::poly::IntPoly;
use siegelkit::rat::{self, parse_bigint, parse_rational, rat_to_string};
use siegelkit::target::ApproxTarget;
use siegelkit::{irreducible, siegel, zero, Error, RInterval, Result};

use crate::cli::{
    AuxArgs, ComputeArgs, CorollaryArgs, CountLedgerArgs, CountSearchArgs, FamilyKind, RootsArgs, SuiteArgs, TargetArgs,
    ThueArgs, ThueSearchArgs, ValidateArgs, WorksheetArgs,
};
use crate::config::RunConfig;
use crate::report::{Enclosure, Report};
use crate::search;
use crate::suites;

/// Runs `body`; an error becomes the report's verdict.
fn guarded(mut r: Report, body: impl FnOnce(&mut Report) -> Result<()>) -> Report {
    if let Err(e) = body(&mut r) {
        r.fail_with(&e);
    }
    r
}

fn enc(x: &RInterval) -> Value {
    serde_json::to_value(Enclosure::of(x)).expect("serializable")
}

fn real_target(t: &TargetArgs, cfg: &RunConfig) -> Result<ApproxTarget> {
    let f = IntPoly::parse(&t.minpoly)?;
    let near = parse_rational(&t.near)?;
    let policy = cfg.policy();
    if f.deg0() < 2 || irreducible::certify_mod_p(&f, irreducible::DEFAULT_PRIME_LIMIT).is_certified() {
        return ApproxTarget::real_root_near(&f, &near, &policy);
    }
    // no prime works: try the family hypothesis with a = -c_{d-1}
    let a = -f.coeff(f.deg0() - 1);
    let fam = decompose(&f, &a).and_then(|(p, q)| FamilySpec::new(p, q, a, &policy));
    match fam.map(|fam| families::irreducibility_certificate(&fam)) {
        Ok(irr) if irr.is_certified() => ApproxTarget::real_root_with(&f, &near, irr, &policy),
        _ => ApproxTarget::real_root_near(&f, &near, &policy),
    }
}

fn family(kind: FamilyKind, d: usize, a: BigInt, sign: i64, cfg: &RunConfig) -> Result<FamilySpec> {
    match kind {
        FamilyKind::Bombieri => FamilySpec::bombieri(d, a, sign, &cfg.policy()),
        FamilyKind::Circular => FamilySpec::circular(d, a, sign, &cfg.policy()),
    }
}

fn variant(kind: FamilyKind) -> Variant {
    match kind {
        FamilyKind::Bombieri => Variant::Bombieri,
        FamilyKind::Circular => Variant::Circular,
    }
}

/// The threshold exponent `y` with `a₀ <= 2^{y d}` claimed for a family.
pub fn a0_exponent(kind: FamilyKind) -> u64 {
    match kind {
        FamilyKind::Bombieri => 1196,
        FamilyKind::Circular => 164,
    }
}

pub fn measure_compute(a: &ComputeArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("measure compute");
    r.input("minpoly", &a.target.minpoly)
        .input("near", &a.target.near)
        .input("e", a.e)
        .input("epsilon", &a.epsilon)
        .input("p0", &a.p0)
        .input("q0", &a.q0);
    guarded(r, |r| {
        let t = real_target(&a.target, cfg)?;
        let eps = measure::parse_epsilon(&a.epsilon, cfg.precision_bits_start.max(128))?;
        let (p0, q0) = (parse_bigint(&a.p0)?, parse_bigint(&a.q0)?);
        r.result("theta", enc(&t.re)).result("height", enc(&t.height));
        match measure::compute_measure(&t, a.e, &eps, &p0, &q0, &cfg.policy())? {
            MeasureOutcome::Applicable(m) => {
                r.result("applicable", true)
                    .result("gap", enc(&m.gap))
                    .result("kappa", enc(&m.kappa))
                    .result("kappa_upper", rat_to_string(m.kappa_upper()))
                    .result("log2_c", enc(&m.log2_c))
                    .result("log2_c_tilde", enc(&m.log2_c_tilde))
                    .result("log2_lambda", enc(&m.log2_lambda))
                    .result("log2_big_c", enc(&m.log2_big_c))
                    .result("bits", m.bits);
                let zero = RInterval::zero(m.bits);
                r.check("log2_lambda_positive", Some(Enclosure::of(&m.log2_lambda)), Some(Enclosure::of(&zero)), m.log2_lambda.gt_q(&BigRational::zero()));
            }
            MeasureOutcome::NotApplicable { log2_lambda, gap } => {
                r.result("applicable", false).result("gap", enc(&gap)).result("log2_lambda", enc(&log2_lambda));
                let zero = RInterval::zero(log2_lambda.bits());
                r.check("log2_lambda_positive", Some(Enclosure::of(&log2_lambda)), Some(Enclosure::of(&zero)), false);
            }
        }
        Ok(())
    })
}

pub fn measure_worksheet(a: &WorksheetArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("measure worksheet");
    r.input("family", format!("{:?}", a.family).to_lowercase())
        .input("d", a.d)
        .input("a", &a.a)
        .input("sign", a.sign)
        .input("eta", &a.eta);
    guarded(r, |r| {
        let f = family(a.family, a.d, parse_bigint(&a.a)?, a.sign, cfg)?;
        let eta = parse_rational(&a.eta)?;
        let w = measure::effective_lower_worksheet(&f, &eta, &cfg.policy())?;
        r.result("d0", w.d0)
            .result("d_hat", rat_to_string(&w.d_hat))
            .result("r", enc(&w.r))
            .result("r_prime", enc(&w.r_prime))
            .result("lp", w.lp.to_string())
            .result("f_d", enc(&w.f_d))
            .result("lambda", enc(&w.lambda))
            .result("log2_lambda0", enc(&w.log2_lambda0))
            .result("kappa_hat", enc(&w.kappa_hat))
            .result("kappa", enc(&w.kappa))
            .result("kappa_a", w.kappa_a.as_ref().map(enc).unwrap_or(Value::Null))
            .result("c1", enc(&w.c1_thm))
            .result("c2", enc(&w.c2_thm))
            .result("epsilon0_d", enc(&w.epsilon0_d))
            .result("log2_a0_minus_1", enc(&w.log2_a0_minus_1))
            .result("log2_big_c", enc(&w.log2_big_c))
            .result("a_at_least_a0", w.a_at_least_a0)
            .result("kappa_claim_certified", w.kappa_claim_certified);
        for c in &w.checks {
            r.flag(c.name, c.holds);
        }
        r.flag("a_at_least_a0", w.a_at_least_a0);
        Ok(())
    })
}

pub fn measure_corollary(a: &CorollaryArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("measure corollary");
    r.input("variant", format!("{:?}", a.variant).to_lowercase()).input("d", a.d).input("eta", &a.eta);
    guarded(r, |r| {
        let eta = parse_rational(&a.eta)?;
        let c = measure::corollary_constants(variant(a.variant), a.d, &eta, cfg.precision_bits_start.max(128))?;
        let y = a0_exponent(a.variant);
        let yd = rat::q((y * a.d) as i64, 1);
        r.result("kappa_hat", enc(&c.kappa_hat))
            .result("kappa_upper", rat_to_string(&c.kappa_upper))
            .result("log2_a0_minus_1", rat_to_string(&c.log2_a0_minus_1))
            .result("a0_bound", format!("2^({y}*{})", a.d))
            .result("c_log2_coefficient", c.c_pow2.to_string())
            .result("c_log2a_coefficient", c.c_pow_a.to_string());
        r.flag("kappa_hat_below_22_94", c.kappa_hat_below_22_94)
            .flag("factor_form_certified", c.factor_certified)
            .flag("general_a0_within_factor", c.general_a0_within_factor);
        r.check(
            "a0_at_most_pow2",
            Some(Enclosure::exact(&(&c.log2_a0_minus_1 + BigRational::one()))),
            Some(Enclosure::exact(&yd)),
            c.a0_at_most_pow2(&yd),
        );
        Ok(())
    })
}

pub fn aux(a: &AuxArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("aux");
    r.input("minpoly", &a.target.minpoly)
        .input("near", &a.target.near)
        .input("k", a.k)
        .input("e", a.e)
        .input("epsilon", &a.epsilon);
    guarded(r, |r| {
        let t = real_target(&a.target, cfg)?;
        let eps = RInterval::point(parse_rational(&a.epsilon)?, cfg.precision_bits_start.max(128));
        let p = siegel::construct_aux_poly(&t, a.k, a.e, &eps)?;
        let vanishes = siegel::vanishing_data(&t.field, &p.p, a.k).iter().all(|x| x.is_zero());
        r.result("big_d", p.big_d)
            .result("terms", p.p.num_terms())
            .result("size", p.p.size().to_string())
            .result("size_bound", enc(&p.size_bound))
            .result("siegel_bound", enc(&p.siegel_bound))
            .result("raw_max_norm", p.raw_max_norm.to_string())
            .result("minimal", p.minimal)
            .result("removed_factor", p.removed_factor.to_string())
            .result("vanishing_hash", p.vanishing_hash.clone())
            .result("coefficients", serde_json::to_value(p.p.to_sparse_map()).expect("map"));
        r.flag("vanishes_to_order_k", vanishes)
            .check("size_within_bound", Some(Enclosure::int(&p.p.size())), Some(Enclosure::of(&p.size_bound)), p.size_within_bound())
            .flag("y_primitive", p.is_y_primitive());
        if let (Some(xi), Some(eta)) = (&a.xi, &a.eta_point) {
            let (xi, eta) = (parse_rational(xi)?, parse_rational(eta)?);
            let c = zero::nonvanishing_index(&p, &xi, &eta, &t)?;
            r.result("nonvanishing_index", c.l).result("nonvanishing_value", rat_to_string(&c.value));
            r.check(
                "index_within_cap",
                Some(Enclosure::int(&BigInt::from(c.l))),
                Some(Enclosure::of(&c.l_cap)),
                c.l_cap.ge_q(&rat::q(c.l as i64, 1)),
            );
        }
        Ok(())
    })
}

/// Splits a monic `A` as `(t - a) Q + A(a)`.
fn decompose(f: &IntPoly, a: &BigInt) -> Result<(IntPoly, IntPoly)> {
    if !f.is_monic() || f.deg0() < 2 {
        return Err(Error::ParameterViolation("need a monic polynomial of degree >= 2".into()));
    }
    let lin = IntPoly::linear_root(a);
    let (quot, _, _) = f.pseudo_divmod(&lin);
    let rem = f.sub(&quot.mul(&lin));
    Ok((rem, quot))
}

pub fn roots(a: &RootsArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("roots");
    r.input("minpoly", &a.minpoly);
    if let Some(x) = &a.a {
        r.input("a", x);
    }
    guarded(r, |r| {
        let f = IntPoly::parse(&a.minpoly)?;
        let d = f.deg0();
        let av = match &a.a {
            Some(s) => parse_bigint(s)?,
            None if d >= 1 => -f.coeff(d - 1),
            None => return Err(Error::ParameterViolation("constant polynomial".into())),
        };
        let (p, qp) = decompose(&f, &av)?;
        let fam = FamilySpec::new(p.clone(), qp.clone(), av.clone(), &cfg.policy())?;
        let h = families::hypothesis_check(&fam)?;
        r.result("a", av.to_string())
            .result("p", p.to_string())
            .result("q", qp.to_string())
            .result("r", enc(&fam.r))
            .result("hypothesis_margin", enc(&h.margin));
        r.flag("hypothesis", h.holds);
        if !h.holds {
            return Ok(());
        }
        let portrait = families::localize_roots(&fam, &cfg.policy())?;
        let bits = portrait.bits;
        let clusters: Vec<Value> = portrait
            .small_roots
            .iter()
            .map(|c| json!({ "count": c.count, "modulus": enc(&c.modulus(bits)) }))
            .collect();
        let sandwich = portrait.height_sandwich(&fam)?;
        r.result("xi", enc(&portrait.xi))
            .result("xi_minus_a", enc(&portrait.gap))
            .result("xi_height", enc(&portrait.xi_height))
            .result("small_roots", Value::Array(clusters))
            .result("irreducibility", format!("{:?}", portrait.irreducibility))
            .result("bits", bits);
        r.flag("small_root_count", portrait.small_count() == d - 1)
            .check("xi_within_one_of_a", Some(Enclosure::of(&portrait.gap)), Some(Enclosure::int(&BigInt::one())), portrait.gap.lt_q(&rat::q(1, 1)))
            .flag("height_sandwich", sandwich)
            .flag("irreducible", portrait.irreducibility.is_certified());
        Ok(())
    })
}

fn thue_instance(t: &ThueArgs) -> Result<ThueInstance> {
    let a = parse_bigint(&t.a)?;
    match t.form {
        FamilyKind::Bombieri => Ok(ThueInstance::bombieri(t.d, a, parse_bigint(&t.m)?)),
        FamilyKind::Circular => ThueInstance::circular(t.d, a),
    }
}

fn echo_thue(r: &mut Report, t: &ThueArgs) {
    r.input("form", format!("{:?}", t.form).to_lowercase()).input("d", t.d).input("a", &t.a);
    if t.form == FamilyKind::Bombieri {
        r.input("m", &t.m);
    }
}

fn bound_json(b: &diophantine::SolutionBound) -> Value {
    json!({
        "branch": match b.branch { Branch::LargeA => "large_a", Branch::SmallA => "small_a" },
        "is_zero": b.is_zero,
        "log2_bound": b.log2_bound.as_ref().map(enc),
        "log2_log2_bound": b.log2_log2_bound.as_ref().map(enc),
    })
}

pub fn thue_bound(a: &ThueArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("thue bound");
    echo_thue(&mut r, a);
    guarded(r, |r| {
        let inst = thue_instance(a)?;
        let b = diophantine::thue_bound(&inst, cfg.precision_bits_start.max(128))?;
        r.result("bound", bound_json(&b));
        r.flag("derivation_certified", b.derivation_certified);
        Ok(())
    })
}

fn solutions_json(s: &[search::Solution]) -> Value {
    Value::Array(s.iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect())
}

pub fn thue_search(a: &ThueSearchArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("thue search");
    echo_thue(&mut r, &a.thue);
    r.input("box", a.bound).input("shards", a.shards).input("dual", a.dual);
    guarded(r, |r| {
        let inst = thue_instance(&a.thue)?;
        let out = search::sharded_search(&inst, a.bound, a.shards, cfg.search_box_cap)?;
        r.result("solutions", solutions_json(&out.solutions)).result("solution_hash", out.hash.clone());
        r.flag("all_verified", out.solutions.iter().all(|(x, y)| inst.is_solution(x, y)));
        if a.dual {
            let dual = search::dual_search(&inst, a.bound, cfg.search_box_cap)?;
            r.flag("dual_scan_agrees", dual == out.solutions);
        }
        if inst.form == diophantine::Form::Bombieri && inst.m.is_one() {
            let known = in_box(diophantine::known_bombieri_solutions(&inst.a), a.bound);
            r.flag("known_solutions_found", known.iter().all(|s| out.solutions.contains(s)));
        }
        if inst.form == diophantine::Form::Circular {
            r.flag("pm_symmetry", diophantine::pairs_are_symmetric(&inst, &out.solutions));
        }
        if let Ok(b) = diophantine::thue_bound(&inst, cfg.precision_bits_start.max(128)) {
            r.flag("within_bound", diophantine::verify_within_bound(&out.solutions, &b, 128)?);
        }
        Ok(())
    })
}

fn in_box(s: Vec<search::Solution>, bound: u64) -> Vec<search::Solution> {
    let b = BigInt::from(bound);
    s.into_iter().filter(|(x, y)| x.abs() <= b && y.abs() <= b).collect()
}

pub fn count_ledger(a: &CountLedgerArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("count ledger");
    let a_str = a.a.clone().unwrap_or_else(|| format!("2^{}", 164 * a.d));
    r.input("d", a.d).input("a", &a_str);
    guarded(r, |r| {
        let av = parse_bigint(&a_str)?;
        let l = diophantine::count_bound(a.d, &av, cfg.precision_bits_start.max(128));
        r.result("max_large_pairs", l.max_large_pairs)
            .result("y_zero_solutions", l.y_zero_solutions)
            .result("bound", l.bound);
        r.flag("hypothesis", l.hypothesis_ok);
        for e in &l.entries {
            r.flag(e.name, e.holds);
        }
        Ok(())
    })
}

pub fn count_search(a: &CountSearchArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("count search");
    r.input("d", a.d).input("a", &a.a).input("box", a.bound).input("shards", a.shards);
    guarded(r, |r| {
        let inst = ThueInstance::circular(a.d, parse_bigint(&a.a)?)?;
        let out = search::sharded_search(&inst, a.bound, a.shards, cfg.search_box_cap)?;
        let known = in_box(diophantine::known_circular_solutions(a.d, &inst.a), a.bound);
        r.result("solutions", solutions_json(&out.solutions))
            .result("solution_hash", out.hash.clone())
            .result("count", out.solutions.len());
        r.flag("known_solutions_found", known.iter().all(|s| out.solutions.contains(s)))
            .flag("pm_symmetry", diophantine::pairs_are_symmetric(&inst, &out.solutions));
        Ok(())
    })
}

pub fn validate(a: &ValidateArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("validate");
    r.input("minpoly", &a.target.minpoly).input("near", &a.target.near).input("depth", a.depth);
    if a.liouville {
        r.input("liouville", true);
    } else {
        r.input("kappa", a.kappa.as_deref().unwrap_or("")).input("log2c", &a.log2c);
    }
    guarded(r, |r| {
        let t = real_target(&a.target, cfg)?;
        let (log2c, kappa) = if a.liouville {
            let (c, d) = measure::liouville_constant(&t)?;
            let l = RInterval::point(c, 128).log2()?;
            (l.hi().clone(), rat::q(d as i64, 1))
        } else {
            let k = a.kappa.as_deref().ok_or_else(|| Error::ParameterViolation("--kappa or --liouville is required".into()))?;
            (parse_rational(&a.log2c)?, parse_rational(k)?)
        };
        let c = measure::check_measure_on_convergents(&t, &log2c, &kappa, a.depth, &cfg.policy())?;
        let rows: Vec<Value> = c
            .convergents
            .iter()
            .zip(&c.log2_slacks)
            .map(|((p, q), s)| json!({ "p": p.to_string(), "q": q.to_string(), "log2_slack": enc(s) }))
            .collect();
        r.result("kappa", rat_to_string(&kappa))
            .result("log2_c", rat_to_string(&log2c))
            .result("convergents", Value::Array(rows))
            .result("min_log2_slack", crate::report::decimal(&c.min_log2_slack, false));
        r.check(
            "slack_at_least_one",
            Some(Enclosure::exact(&c.min_log2_slack)),
            Some(Enclosure::exact(&BigRational::zero())),
            c.holds,
        );
        if let Some(path) = &a.csv {
            let mut s = String::from("q,log2_slack_lo\n");
            for ((_, q), sl) in c.convergents.iter().zip(&c.log2_slacks) {
                let _ = writeln!(s, "{q},{}", crate::report::decimal(sl.lo(), false));
            }
            std::fs::write(path, s).map_err(|e| Error::ParameterViolation(format!("csv {}: {e}", path.display())))?;
        }
        Ok(())
    })
}

pub fn suite(a: &SuiteArgs, cfg: &RunConfig) -> Report {
    let mut r = Report::new("suite");
    let ids: Vec<u32> = if a.criteria.is_empty() { (1..=10).collect() } else { a.criteria.clone() };
    r.input("criteria", ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
        .input("seed", cfg.seed);
    let mut details = serde_json::Map::new();
    for id in ids {
        let o = suites::run_criterion(id, cfg);
        details.insert(format!("criterion_{id}"), json!({ "title": o.title, "pass": o.pass, "notes": o.notes }));
        r.flag(&format!("criterion_{id}"), o.pass);
    }
    r.results = Value::Object(details);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_recovers_the_family() {
        let f = IntPoly::parse("t^3-5*t^2+1").unwrap();
        let (p, q) = decompose(&f, &BigInt::from(5)).unwrap();
        assert_eq!(p, IntPoly::one());
        assert_eq!(q, IntPoly::from_i64(&[0, 0, 1]));
        assert!(decompose(&IntPoly::from_i64(&[1, 2]), &BigInt::from(1)).is_err());
    }
}
