use depletion_analytics::{CdfCurve, Depletion, DepletionLaw, DepletionOptions};
use levy_core::ModelSpec;
use scale_kernel::ScaleOptions;
use serde_json::{json, Value};
use special_functions::Tail;

use crate::args::{AnalyzeArgs, Quantity};
use crate::{Failure, Outputs};

const DEFAULT_Q: [f64; 5] = [0.0, 0.25, 0.5, 1.0, 2.0];
const DEFAULT_R: [f64; 4] = [0.0, 0.25, 0.5, 1.0];

pub(crate) fn options(tol: f64, gamma_inversion: bool) -> Result<DepletionOptions, Failure> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Failure::usage(format!("--tol must be positive, got {tol}")));
    }
    Ok(DepletionOptions {
        tol,
        scale: ScaleOptions { allow_gamma_inversion: gamma_inversion, ..ScaleOptions::default() },
        ..DepletionOptions::default()
    })
}

pub(crate) fn depletion(spec: &ModelSpec, a: f64, opts: &DepletionOptions, kernel: &str) -> Result<Depletion, Failure> {
    Depletion::new(&spec.model, a, opts).map_err(|e| Failure::analytics(kernel, e))
}

pub fn run(args: &AnalyzeArgs, spec: &ModelSpec) -> Result<Outputs, Failure> {
    if args.points < 2 {
        return Err(Failure::usage(format!("--points must be at least 2, got {}", args.points)));
    }
    let quantity = args.quantity;
    let kernel = quantity.kernel();
    let fail = |e| Failure::analytics(kernel, e);
    let d = depletion(spec, args.model.a, &options(args.tol, args.gamma_inversion)?, kernel)?;
    let x = spec.x;
    let a = args.model.a;
    let mut out = Outputs::new(&args.out)?;
    let name = quantity.name();
    let meta = json!({ "quantity": name, "model_id": spec.model.model_id(), "a": a, "x": x });
    match quantity {
        Quantity::RuinBefore => {
            let p = d.ruin_probability(x).map_err(fail)?;
            out.write_csv(
                &format!("{name}.csv"),
                &["x", "a", "ruin_probability", "no_ruin_probability"],
                &[vec![Some(x), Some(a), Some(p), Some(1.0 - p)]],
            )?;
            out.write_json(&format!("{name}.json"), &meta)?;
        }
        Quantity::LawPredrawdown | Quantity::LawOvershoot | Quantity::LawMax => {
            let law = match quantity {
                Quantity::LawPredrawdown => d.predrawdown_record(),
                Quantity::LawOvershoot => d.overshoot(),
                _ => d.max_level(x),
            }
            .map_err(fail)?;
            let side = write_law(&mut out, name, &law, args.points, args.tail_mass, kernel)?;
            out.write_json(&format!("{name}.json"), &side)?;
        }
        Quantity::LtBivariate | Quantity::LtSpeed | Quantity::LtGbar => {
            let qs = args.q.map(|q| vec![q]).unwrap_or_else(|| DEFAULT_Q.to_vec());
            let rs = args.r.map(|r| vec![r]).unwrap_or_else(|| DEFAULT_R.to_vec());
            let mut rows = Vec::new();
            match quantity {
                Quantity::LtBivariate => {
                    for &q in &qs {
                        for &r in &rs {
                            rows.push(vec![Some(q), Some(r), Some(d.bivariate_laplace(q, r).map_err(fail)?)]);
                        }
                    }
                }
                Quantity::LtSpeed => {
                    for &q in &qs {
                        rows.push(vec![Some(q), None, Some(d.laplace_speed(q).map_err(fail)?)]);
                    }
                }
                _ => {
                    for &r in &rs {
                        rows.push(vec![None, Some(r), Some(d.laplace_gbar(r).map_err(fail)?)]);
                    }
                }
            }
            out.write_csv(&format!("{name}.csv"), &["q", "r", "value"], &rows)?;
            out.write_json(&format!("{name}.json"), &meta)?;
        }
        Quantity::CdfTau | Quantity::CdfSpeed => {
            let speed = quantity == Quantity::CdfSpeed;
            let cdf = |times: &[f64]| if speed { d.speed_cdf(times) } else { d.tau_cdf(times) };
            let t_max = match args.t_max {
                Some(t) if t > 0.0 && t.is_finite() => t,
                Some(t) => return Err(Failure::usage(format!("--t-max must be positive, got {t}"))),
                None => cdf_range(&cdf).map_err(fail)?,
            };
            let times: Vec<f64> = (0..=args.points).map(|i| t_max * i as f64 / args.points as f64).collect();
            let curve: CdfCurve = cdf(&times).map_err(fail)?;
            let rows: Vec<_> = curve.grid.iter().map(|(t, v)| vec![Some(t), Some(v)]).collect();
            out.write_csv(&format!("{name}.csv"), &["t", "cdf"], &rows)?;
            let mut side = meta;
            side["atom"] = json!(curve.atom);
            side["t_max"] = json!(t_max);
            side["unresolved_below"] = json!(curve.unresolved_below);
            out.write_json(&format!("{name}.json"), &side)?;
        }
        Quantity::ConditionalLaws => {
            let laws = d.conditional_laws(x).map_err(fail)?;
            let mut sides = Vec::new();
            for (stem, law) in [
                ("conditional-predrawdown", &laws.predrawdown_record),
                ("conditional-overshoot", &laws.overshoot),
                ("conditional-max", &laws.max_level),
            ] {
                sides.push(write_law(&mut out, stem, law, args.points, args.tail_mass, kernel)?);
            }
            let mut side = meta;
            side["no_ruin_probability"] = json!(laws.no_ruin_probability);
            side["laws"] = Value::Array(sides);
            out.write_json(&format!("{name}.json"), &side)?;
        }
    }
    Ok(out)
}

// Smallest power of two at which the CDF reaches 0.999.
fn cdf_range<F>(cdf: &F) -> depletion_analytics::Result<f64>
where
    F: Fn(&[f64]) -> depletion_analytics::Result<CdfCurve>,
{
    let mut t = 1.0;
    for _ in 0..40 {
        let c = cdf(&[t])?;
        if c.grid.values()[0] >= 0.999 {
            return Ok(t);
        }
        t *= 2.0;
    }
    Ok(t)
}

// Writes `<stem>.csv` with (y, density) and returns the law's metadata.
fn write_law(
    out: &mut Outputs,
    stem: &str,
    law: &DepletionLaw,
    points: usize,
    tail_mass: Option<f64>,
    kernel: &str,
) -> Result<Value, Failure> {
    let fail = |e| Failure::analytics(kernel, e);
    let m = law.measure();
    let upper = if m.upper().is_finite() {
        m.upper()
    } else {
        let p = tail_mass.unwrap_or(match m.tail() {
            Some(Tail::Power { .. }) => 1e-3,
            _ => 1e-9,
        });
        if !(p > 0.0 && p < 1.0) {
            return Err(Failure::usage(format!("--tail-mass must lie in (0, 1), got {p}")));
        }
        law.quantile(1.0 - p).map_err(fail)?
    };
    let grid = m.sample_density(upper, points).map_err(|e| fail(e.into()))?;
    // singular points (the stable overshoot at 0) are left empty
    let rows: Vec<_> = grid.iter().map(|(y, f)| vec![Some(y), f.is_finite().then_some(f)]).collect();
    let singular: Vec<f64> = grid.iter().filter(|(_, f)| !f.is_finite()).map(|(y, _)| y).collect();
    out.write_csv(&format!("{stem}.csv"), &["y", "density"], &rows)?;
    let beyond = if m.upper().is_finite() { 0.0 } else { (1.0 - law.cdf(upper).map_err(fail)?).max(0.0) };
    Ok(json!({
        "file": format!("{stem}.csv"),
        "quantity": law.quantity,
        "conditioning": law.conditioning,
        "model_id": law.model_id,
        "a": law.a,
        "x": law.x,
        "atoms": law.atoms(),
        "grid": { "lower": m.lower(), "upper": upper, "intervals": points },
        "mass_beyond_grid": beyond,
        "density_undefined_at": singular,
        "mean": law.mean().map_err(fail)?,
    }))
}
