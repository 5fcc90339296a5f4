use super::ObservablesError;

/// Reference lower bound for the center of a star of stars to be
/// reinfected during a zero phase:
///
/// `q = e^{-3α} · e^{-8/3} · (1 - e^{-1/3}) · e^{-2λ/3}`.
pub fn center_reinfection_q(alpha: f64, lambda: f64) -> f64 {
    let window = -(-1.0f64 / 3.0).exp_m1();
    (-3.0 * alpha - 8.0 / 3.0 - 2.0 * lambda / 3.0).exp() * window
}

/// Probability that a ±1 walk stepping up with probability `p_up` falls
/// `down_gap` before it rises `up_gap`.
pub fn gambler_ruin_prob(p_up: f64, down_gap: u32, up_gap: u32) -> Result<f64, ObservablesError> {
    if !(p_up > 0.0 && p_up < 1.0) {
        return Err(ObservablesError::InvalidParameter(format!("p_up must be in (0, 1), got {p_up}")));
    }
    if down_gap == 0 && up_gap == 0 {
        return Err(ObservablesError::InvalidParameter("both gaps are zero".into()));
    }
    if down_gap == 0 {
        return Ok(1.0);
    }
    if up_gap == 0 {
        return Ok(0.0);
    }
    let (d, u) = (f64::from(down_gap), f64::from(up_gap));
    let total = d + u;
    if p_up == 0.5 {
        return Ok(u / total);
    }
    // Both branches keep the ratio below one so the powers cannot overflow.
    if p_up > 0.5 {
        let r = (1.0 - p_up) / p_up;
        Ok((r.powf(d) - r.powf(total)) / (1.0 - r.powf(total)))
    } else {
        let rho = p_up / (1.0 - p_up);
        Ok((1.0 - rho.powf(u)) / (1.0 - rho.powf(total)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_values() {
        let q0 = center_reinfection_q(0.0, 0.0);
        assert!((q0 - 0.019_696_382_854_937_59).abs() < 1e-15);
        assert!(center_reinfection_q(50.0, 0.0) < 1e-60);
        let grid: Vec<f64> = (0..20).map(|k| f64::from(k) * 0.25).collect();
        let axes: [fn(f64) -> f64; 2] = [|x| center_reinfection_q(x, 0.0), |x| center_reinfection_q(0.0, x)];
        for q in axes {
            assert!(grid.windows(2).all(|w| q(w[1]) < q(w[0])));
        }
    }

    #[test]
    fn ruin_examples() {
        assert!((gambler_ruin_prob(0.6, 2, 2).unwrap() - 20.0 / 65.0).abs() < 1e-15);
        assert_eq!(gambler_ruin_prob(0.5, 1, 1).unwrap(), 0.5);
        assert!(gambler_ruin_prob(0.6, 400, 400).unwrap() < 1e-60);
        assert!((gambler_ruin_prob(0.4, 2, 2).unwrap() - 45.0 / 65.0).abs() < 1e-15);
        assert!(gambler_ruin_prob(1.0, 1, 1).is_err());
        assert!(gambler_ruin_prob(0.7, 0, 0).is_err());
        assert_eq!(gambler_ruin_prob(0.7, 0, 3).unwrap(), 1.0);
    }
}
