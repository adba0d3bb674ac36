//! Closed-form threshold heuristics.

/// Threshold from N malignant sets of t+1 locations: N^(−1/t).
pub fn threshold_from_sets(n_sets: f64, t: u32) -> f64 {
    n_sets.powf(-1.0 / t as f64)
}

/// Natural log of the binomial coefficient C(a, b).
pub fn ln_binomial(a: u64, b: u64) -> f64 {
    if b > a {
        return f64::NEG_INFINITY;
    }
    let b = b.min(a - b);
    (1..=b).map(|i| ((a - b + i) as f64 / i as f64).ln()).sum()
}

/// C(A_mal, t+1)^(−1/t) with A_mal = αn and t = δn, evaluated directly.
pub fn binomial_threshold(a_mal: u64, t: u64) -> f64 {
    (-ln_binomial(a_mal, t + 1) / t as f64).exp()
}

/// Large-n limit of the binomial threshold to leading order: δ/(eα).
pub fn asymptotic_threshold(alpha: f64, delta: f64) -> f64 {
    delta / (std::f64::consts::E * alpha)
}

/// Encoded error rate projected from a pseudo-threshold:
/// p1 ≈ p0 (p0/pTh)^t.
pub fn project_p1(p0: f64, p_th: f64, t: u32) -> f64 {
    p0 * (p0 / p_th).powi(t as i32)
}
