use num_complex::Complex64;

/// Classical fixed-step RK4 over `t ∈ [0, 1]` on a flat complex vector.
/// `after_step` sees the state at the end of every step.
pub(crate) fn integrate<F, G>(y: &mut [Complex64], steps: usize, mut rhs: F, mut after_step: G)
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
    G: FnMut(&[Complex64]),
{
    let n = y.len();
    let h = 1.0 / steps as f64;
    let mut k1 = vec![Complex64::new(0.0, 0.0); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();

    for step in 0..steps {
        let t = step as f64 * h;
        rhs(t, y, &mut k1);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + h * k3[i];
        }
        rhs(t + h, &tmp, &mut k4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        after_step(y);
    }
}
