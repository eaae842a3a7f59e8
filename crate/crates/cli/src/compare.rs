use depletion_analytics::Depletion;
use levy_core::{LevyModel, ModelSpec};
use serde::Serialize;
use simulation_oracle::{estimate, estimate_transform, DepletionRecord, Estimate};

use crate::analyze::{depletion, options};
use crate::args::{CompareArgs, Quantity};
use crate::simulate::experiment;
use crate::{Failure, Outputs};

/// Relative tolerance of exact-identity rows.
const EXACT_TOL: f64 = 1e-12;

/// One line of the comparison table. Exact rows have no standard error.
#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub check: String,
    pub analytic: f64,
    pub monte_carlo: f64,
    pub std_error: Option<f64>,
    pub z: Option<f64>,
    pub pass: bool,
}

impl CompareRow {
    fn statistical(check: impl Into<String>, analytic: f64, e: Estimate, limit: f64) -> Self {
        let z = e.z_score(analytic);
        CompareRow {
            check: check.into(),
            analytic,
            monte_carlo: e.mean,
            std_error: Some(e.std_error),
            z: Some(z),
            pass: z.abs() <= limit,
        }
    }

    fn exact(check: impl Into<String>, analytic: f64, target: f64) -> Self {
        CompareRow {
            check: check.into(),
            analytic,
            monte_carlo: target,
            std_error: None,
            z: None,
            pass: (analytic - target).abs() <= EXACT_TOL * target.abs().max(1.0),
        }
    }
}

// The simulated model, with the harness override of the safety loading.
fn simulated_model(args: &CompareArgs, spec: &ModelSpec) -> Result<ModelSpec, Failure> {
    let Some(theta) = args.sim_loading else { return Ok(spec.clone()) };
    let model = match spec.model {
        LevyModel::CramerLundbergExp { poisson_intensity, claim_rate, .. } => {
            LevyModel::cramer_lundberg(poisson_intensity, claim_rate, theta)
        }
        LevyModel::GammaRisk { gamma_shape, gamma_rate, .. } => LevyModel::gamma_risk(gamma_shape, gamma_rate, theta),
        _ => return Err(Failure::usage("--sim-loading needs a model with a safety loading")),
    };
    ModelSpec { model, x: spec.x }.validate().map_err(|e| Failure::usage(e.to_string()))
}

fn indicator(records: &[DepletionRecord], f: impl Fn(&DepletionRecord) -> bool) -> Estimate {
    estimate(records.iter().map(|r| if f(r) { 1.0 } else { 0.0 })).expect("experiments have records")
}

fn field(records: &[DepletionRecord], f: impl Fn(&DepletionRecord) -> f64) -> Result<Estimate, Failure> {
    estimate(records.iter().map(f)).ok_or_else(|| Failure::usage("no paths satisfy the conditioning event"))
}

/// Empirical quantile (lower) of a sample.
fn quantile(xs: &[f64], p: f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v[((p * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1]
}

fn rows(args: &CompareArgs, spec: &ModelSpec, d: &Depletion, records: &[DepletionRecord]) -> Result<Vec<CompareRow>, Failure> {
    let quantity = args.quantity;
    let fail = |e| Failure::analytics(quantity.kernel(), e);
    let (x, a, limit) = (spec.x, args.model.a, args.z_limit);
    let mut rows = Vec::new();
    match quantity {
        Quantity::RuinBefore => {
            let p = d.ruin_probability(x).map_err(fail)?;
            rows.push(CompareRow::statistical("P(ruin before drawdown)", p, indicator(records, |r| r.ruined_before), limit));
        }
        Quantity::LawPredrawdown => {
            let law = d.predrawdown_record().map_err(fail)?;
            let mean = law.mean().map_err(fail)?;
            rows.push(CompareRow::statistical("E[Y(tau_a-)]", mean, field(records, |r| r.predrawdown_record)?, limit));
            if spec.model.bounded_variation() {
                let atom: f64 = law.atoms().iter().filter(|t| t.location == 0.0).map(|t| t.weight).sum();
                let zero = if matches!(spec.model, LevyModel::CramerLundbergExp { .. }) {
                    0.0
                } else {
                    args.sim.dt * spec.model.premium_rate()
                };
                let hits = indicator(records, |r| if zero == 0.0 { r.predrawdown_record == 0.0 } else { r.predrawdown_record < zero });
                rows.push(CompareRow::statistical("P(Y(tau_a-) = 0)", atom, hits, limit));
            }
        }
        Quantity::LawOvershoot => {
            let mean = d.overshoot().and_then(|l| l.mean()).map_err(fail)?;
            rows.push(CompareRow::statistical("E[overshoot]", mean, field(records, |r| r.overshoot)?, limit));
        }
        Quantity::LawMax => {
            let mean = d.max_level(x).and_then(|l| l.mean()).map_err(fail)?;
            rows.push(CompareRow::statistical("E[max level]", mean, field(records, |r| r.max_level)?, limit));
        }
        Quantity::LtBivariate => {
            let (q, r) = (args.q.unwrap_or(0.5), args.r.unwrap_or(0.25));
            let v = d.bivariate_laplace(q, r).map_err(fail)?;
            let e = estimate_transform(records, q, r).expect("experiments have records");
            rows.push(CompareRow::statistical(format!("E[exp(-{q} tau_a - {r} gbar)]"), v, e, limit));
        }
        Quantity::LtSpeed => {
            let q = args.q.unwrap_or(0.5);
            let v = d.laplace_speed(q).map_err(fail)?;
            rows.push(CompareRow::statistical(format!("E[exp(-{q} speed)]"), v, field(records, |r| (-q * r.speed).exp())?, limit));
        }
        Quantity::LtGbar => {
            let r = args.r.unwrap_or(0.25);
            let v = d.laplace_gbar(r).map_err(fail)?;
            rows.push(CompareRow::statistical(format!("E[exp(-{r} gbar)]"), v, field(records, |x| (-r * x.gbar).exp())?, limit));
        }
        Quantity::CdfTau | Quantity::CdfSpeed => {
            let speed = quantity == Quantity::CdfSpeed;
            let sample: Vec<f64> = records.iter().map(|r| if speed { r.speed } else { r.tau_a }).collect();
            let name = if speed { "speed" } else { "tau_a" };
            // quartiles of the part above the atom at 0
            let atom = sample.iter().filter(|&&v| v == 0.0).count() as f64 / sample.len() as f64;
            for p in [0.25, 0.5, 0.75] {
                let t = quantile(&sample, atom + (1.0 - atom) * p);
                let curve = if speed { d.speed_cdf(&[t]) } else { d.tau_cdf(&[t]) }.map_err(fail)?;
                if curve.unresolved_below.is_some() {
                    return Err(Failure::Numerical {
                        kernel: quantity.kernel().into(),
                        detail: format!("CDF at t = {t} could not be resolved"),
                    });
                }
                let f = curve.grid.values()[0];
                let e = indicator(records, |r| (if speed { r.speed } else { r.tau_a }) <= t);
                rows.push(CompareRow::statistical(format!("P({name} <= {t:.6})"), f, e, limit));
            }
        }
        Quantity::ConditionalLaws => {
            let laws = d.conditional_laws(x).map_err(fail)?;
            let ok: Vec<DepletionRecord> = records.iter().filter(|r| !r.ruined_before).copied().collect();
            rows.push(CompareRow::statistical(
                "P(no ruin before drawdown)",
                laws.no_ruin_probability,
                indicator(records, |r| !r.ruined_before),
                limit,
            ));
            let mean = |l: &depletion_analytics::DepletionLaw| l.mean().map_err(fail);
            rows.push(CompareRow::statistical(
                "E[overshoot | no ruin]",
                mean(&laws.overshoot)?,
                field(&ok, |r| r.overshoot)?,
                limit,
            ));
            rows.push(CompareRow::statistical(
                "E[max level | no ruin]",
                mean(&laws.max_level)?,
                field(&ok, |r| r.max_level)?,
                limit,
            ));
            rows.push(CompareRow::statistical(
                "E[Y(tau_a-) | no ruin]",
                mean(&laws.predrawdown_record)?,
                field(&ok, |r| r.predrawdown_record)?,
                limit,
            ));
        }
    }
    if let LevyModel::StableRisk { stability, .. } = spec.model {
        rows.push(CompareRow::exact("lambda(a,0)*a = alpha-1", d.log_derivative() * a, stability - 1.0));
    }
    Ok(rows)
}

fn format_table(rows: &[CompareRow]) -> String {
    let width = rows.iter().map(|r| r.check.chars().count()).max().unwrap_or(5).max(5);
    let mut s = format!("{:<width$}  {:>14}  {:>14}  {:>11}  {:>8}  status\n", "check", "analytic", "monte_carlo", "std_error", "z");
    for r in rows {
        let se = r.std_error.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "exact".into());
        let z = r.z.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into());
        s += &format!(
            "{:<width$}  {:>14.8}  {:>14.8}  {:>11}  {:>8}  {}\n",
            r.check,
            r.analytic,
            r.monte_carlo,
            se,
            z,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
    s
}

/// Prints the table and returns the outputs (with --out) and the failed
/// checks.
pub fn run(args: &CompareArgs, spec: &ModelSpec) -> Result<(Option<Outputs>, Vec<String>), Failure> {
    if !(args.z_limit > 0.0) {
        return Err(Failure::usage(format!("--z-limit must be positive, got {}", args.z_limit)));
    }
    let kernel = args.quantity.kernel();
    let d = depletion(spec, args.model.a, &options(args.tol, false)?, kernel)?;
    let e = experiment(&simulated_model(args, spec)?, args.model.a, &args.sim)?;
    let rows = rows(args, spec, &d, &e.records)?;
    print!("{}", format_table(&rows));
    let out = match &args.out {
        Some(dir) => {
            let mut out = Outputs::new(dir)?;
            out.write_records("compare.csv", &rows)?;
            out.write_json("compare.json", &rows)?;
            Some(out)
        }
        None => None,
    };
    let failed = rows.iter().filter(|r| !r.pass).map(|r| r.check.clone()).collect();
    Ok((out, failed))
}
