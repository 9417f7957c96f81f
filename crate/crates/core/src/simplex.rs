//! Derivative-free Nelder–Mead minimization.

/// Reflection, expansion, contraction and shrink coefficients plus stopping rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Stop once every vertex lies within `tolerance * (1 + |x_best|)` of the best one.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            tolerance: 1e-9,
            max_iterations: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Best objective value after each iteration.
    pub history: Vec<f64>,
}

fn relative_diameter(vertices: &[(Vec<f64>, f64)]) -> f64 {
    let best = &vertices[0].0;
    let scale = 1.0 + best.iter().map(|v| v * v).sum::<f64>().sqrt();
    vertices[1..]
        .iter()
        .map(|(x, _)| x.iter().zip(best).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
        / scale
}

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimizes `f` from `x0`; the initial simplex is `x0` plus one vertex per
/// coordinate displaced by `steps[k]`. NaN objective values are treated as +inf.
pub fn minimize<F>(mut f: F, x0: &[f64], steps: &[f64], opts: &SimplexOptions) -> SimplexOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    assert_eq!(steps.len(), dim, "one step per coordinate");
    let mut eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut vertices: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    vertices.push((x0.to_vec(), eval(x0)));
    for k in 0..dim {
        let mut x = x0.to_vec();
        x[k] += steps[k];
        let v = eval(&x);
        vertices.push((x, v));
    }
    let sort = |v: &mut Vec<(Vec<f64>, f64)>| v.sort_by(|a, b| a.1.total_cmp(&b.1));
    sort(&mut vertices);

    let mut history = Vec::new();
    let mut iterations = 0;
    let mut converged = relative_diameter(&vertices) < opts.tolerance;
    while !converged && iterations < opts.max_iterations {
        iterations += 1;
        let worst = vertices[dim].clone();
        let second_worst = vertices[dim - 1].1;
        let best = vertices[0].1;
        let centroid: Vec<f64> = (0..dim)
            .map(|k| vertices[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
            .collect();

        let xr = lerp(&centroid, &worst.0, -opts.reflection);
        let fr = eval(&xr);
        let mut shrink = false;
        if fr < best {
            let xe = lerp(&centroid, &xr, opts.expansion);
            let fe = eval(&xe);
            vertices[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < second_worst {
            vertices[dim] = (xr, fr);
        } else if fr < worst.1 {
            let xc = lerp(&centroid, &xr, opts.contraction);
            let fc = eval(&xc);
            if fc <= fr {
                vertices[dim] = (xc, fc);
            } else {
                shrink = true;
            }
        } else {
            let xc = lerp(&centroid, &worst.0, opts.contraction);
            let fc = eval(&xc);
            if fc < worst.1 {
                vertices[dim] = (xc, fc);
            } else {
                shrink = true;
            }
        }
        if shrink {
            let anchor = vertices[0].0.clone();
            for v in vertices.iter_mut().skip(1) {
                let x = lerp(&anchor, &v.0, opts.shrink);
                let fx = eval(&x);
                *v = (x, fx);
            }
        }
        sort(&mut vertices);
        history.push(vertices[0].1);
        converged = relative_diameter(&vertices) < opts.tolerance;
    }
    let (x, value) = vertices.swap_remove(0);
    SimplexOutcome {
        x,
        value,
        iterations,
        converged,
        history,
    }
}
