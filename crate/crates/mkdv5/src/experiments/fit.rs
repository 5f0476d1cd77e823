//! Least-squares power-law fits on log₂–log₂ data.

use serde::{Deserialize, Serialize};

/// Fitted slope of log₂(y) against log₂(x) with residual information.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub quantity: String,
    /// The raw sweep values (x, y).
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of log₂(y) around the fit line.
    pub rms_residual: f64,
    /// Half-width of a ±2·se(slope) confidence interval.
    pub slope_ci: f64,
}

/// Fit log₂(y) = slope·log₂(x) + intercept by least squares.
///
/// Needs at least 3 points with positive x and y; fewer (or degenerate) data
/// return `None`, which reports surface as "fit columns empty".
pub fn fit_log2_slope(quantity: &str, points: &[(f64, f64)]) -> Option<SlopeFit> {
    let data: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|&(x, y)| (x.log2(), y.log2()))
        .collect();
    let n = data.len();
    if n < 3 {
        return None;
    }
    let nf = n as f64;
    let sx: f64 = data.iter().map(|p| p.0).sum();
    let sy: f64 = data.iter().map(|p| p.1).sum();
    let sxx: f64 = data.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = data.iter().map(|p| p.0 * p.1).sum();
    let denom = nf * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    let slope = (nf * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / nf;
    let rss: f64 = data
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let rms = (rss / nf).sqrt();
    let se = if n > 2 {
        (rss / (nf - 2.0) / (sxx - sx * sx / nf)).sqrt()
    } else {
        f64::NAN
    };
    Some(SlopeFit {
        quantity: quantity.to_string(),
        points: points.to_vec(),
        slope,
        intercept,
        rms_residual: rms,
        slope_ci: 2.0 * se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_recovered() {
        let pts: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0]
            .iter()
            .map(|&n: &f64| (n, 3.0 * n.powf(-2.5)))
            .collect();
        let fit = fit_log2_slope("q", &pts).unwrap();
        assert!((fit.slope + 2.5).abs() < 1e-12);
        assert!(fit.rms_residual < 1e-12);
    }

    #[test]
    fn too_few_points_is_none() {
        assert!(fit_log2_slope("q", &[(2.0, 1.0), (4.0, 0.5)]).is_none());
    }

    #[test]
    fn nonpositive_values_filtered() {
        let pts = vec![(8.0, 1.0), (16.0, 0.0), (32.0, 0.25), (64.0, 0.0625)];
        // only 3 usable points remain
        let fit = fit_log2_slope("q", &pts).unwrap();
        assert!(fit.slope < 0.0);
    }
}
