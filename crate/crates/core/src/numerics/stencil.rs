//! Finite-difference weights and local polynomial interpolation on sampled
//! profiles.

/// Fornberg's algorithm: weights for the `order`-th derivative at `x0` from
/// values at `nodes`.
pub fn fd_weights(x0: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Points used for the derivative stencil.
const FD_WIDTH: usize = 9;

/// First derivative of uniformly spaced samples with spacing `h`.
///
/// `periodic` treats `values` as one period without the repeated endpoint
/// and uses centered stencils everywhere; otherwise stencils are shifted
/// inward near the ends.
pub fn derivative(values: &[f64], h: f64, periodic: bool) -> Vec<f64> {
    let n = values.len();
    let half = FD_WIDTH / 2;
    if periodic {
        let offsets: Vec<f64> = (0..FD_WIDTH).map(|k| k as f64 - half as f64).collect();
        let w = fd_weights(0.0, &offsets, 1);
        return (0..n)
            .map(|i| {
                w.iter()
                    .enumerate()
                    .map(|(k, wk)| wk * values[(i + n * FD_WIDTH + k - half) % n])
                    .sum::<f64>()
                    / h
            })
            .collect();
    }
    let width = FD_WIDTH.min(n);
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(width / 2).min(n - width);
            let offsets: Vec<f64> = (start..start + width).map(|k| k as f64 - i as f64).collect();
            let w = fd_weights(0.0, &offsets, 1);
            w.iter().zip(&values[start..start + width]).map(|(a, b)| a * b).sum::<f64>() / h
        })
        .collect()
}

/// Points used for local interpolation.
const INTERP_WIDTH: usize = 10;

/// Evaluates a uniformly sampled function (`values[k]` at `t0 + k h`) at `t`
/// by Lagrange interpolation on the nearest nodes. With `period = Some(p)`
/// the samples cover `[t0, t0 + p)` and indices wrap.
pub fn interpolate(values: &[f64], t0: f64, h: f64, period: Option<f64>, t: f64) -> f64 {
    let n = values.len();
    let width = INTERP_WIDTH.min(n);
    let (u, wrap) = match period {
        Some(p) => ((t - t0).rem_euclid(p) / h, true),
        None => ((t - t0) / h, false),
    };
    let base = u.floor() as isize - (width as isize / 2 - 1);
    let base = if wrap { base } else { base.clamp(0, (n - width) as isize) };
    let nodes: Vec<(f64, f64)> = (0..width as isize)
        .map(|k| {
            let idx = base + k;
            let v = if wrap { values[idx.rem_euclid(n as isize) as usize] } else { values[idx as usize] };
            (idx as f64, v)
        })
        .collect();
    if let Some(&(_, v)) = nodes.iter().find(|(x, _)| *x == u) {
        return v;
    }
    // barycentric form on equispaced nodes
    let mut num = 0.0;
    let mut den = 0.0;
    let mut w = 1.0;
    for (k, (x, v)) in nodes.iter().enumerate() {
        if k > 0 {
            w *= -((width - k) as f64) / k as f64;
        }
        let term = w / (u - x);
        num += term * v;
        den += term;
    }
    num / den
}
