use crate::{DepletionRecord, Estimate};

/// Sample mean and standard error (n − 1 normalization). None when empty.
pub fn estimate<I: IntoIterator<Item = f64>>(samples: I) -> Option<Estimate> {
    let xs: Vec<f64> = samples.into_iter().collect();
    let n = xs.len();
    if n == 0 {
        return None;
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let std_error = if n > 1 {
        let ss: f64 = xs.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (n - 1) as f64 / n as f64).sqrt()
    } else {
        0.0
    };
    Some(Estimate { mean, std_error, n })
}

/// Empirical E[e^{−q·τa − r·Ḡ}]. None when there are no records.
pub fn estimate_transform(records: &[DepletionRecord], q: f64, r: f64) -> Option<Estimate> {
    estimate(records.iter().map(|rec| {
        let e = q * rec.tau_a + r * rec.gbar;
        if e == 0.0 {
            1.0
        } else {
            (-e).exp()
        }
    }))
}

/// Kolmogorov–Smirnov distance sup|F_n − F| of a sample to a continuous CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}

/// P(K > λ) for the Kolmogorov distribution.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=200 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 * sum.abs() {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov–Smirnov statistic and its asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let ne = (n * m / (n + m)).sqrt();
    (d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kolmogorov_quantiles() {
        assert!((kolmogorov_survival(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_survival(1.6276) - 0.01).abs() < 1e-4);
    }

    #[test]
    fn uniform_grid_is_close_to_uniform() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        assert!((ks_distance(&xs, |x| x) - 0.0005).abs() < 1e-12);
        let (d, p) = ks_two_sample(&xs, &xs);
        assert_eq!(d, 0.0);
        assert_eq!(p, 1.0);
    }

    #[test]
    fn constant_sample_has_zero_error() {
        let e = estimate([2.0; 5]).unwrap();
        assert_eq!((e.mean, e.std_error, e.n), (2.0, 0.0, 5));
        assert!(estimate(std::iter::empty()).is_none());
    }
}
