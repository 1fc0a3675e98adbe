//! Nelder–Mead simplex minimisation with a hard evaluation budget.
//!
//! Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
//! The initial simplex is `x0` plus `step` along each coordinate. The run
//! stops when the spread `max f − min f` over the simplex drops below
//! `tolerance` or the budget is spent; the best point ever evaluated is
//! returned either way.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub step: f64,
    pub tolerance: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            step: 0.1,
            tolerance: 1e-8,
            max_evals: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Counts evaluations and remembers the best point seen.
struct Budgeted<F> {
    f: F,
    evals: usize,
    max: usize,
    best_x: Vec<f64>,
    best_f: f64,
}

impl<F, E> Budgeted<F>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
{
    /// `Ok(None)` once the budget is exhausted.
    fn eval(&mut self, x: &[f64]) -> Result<Option<f64>, E> {
        if self.evals >= self.max {
            return Ok(None);
        }
        let v = (self.f)(x)?;
        self.evals += 1;
        // NaN never becomes the best point.
        if v < self.best_f || self.best_x.is_empty() && !v.is_nan() {
            self.best_f = v;
            self.best_x = x.to_vec();
        }
        Ok(Some(v))
    }
}

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    // from + t (to - from)
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

pub fn minimize<F, E>(f: F, x0: &[f64], opts: NelderMeadOptions) -> Result<NelderMeadResult, E>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
{
    let mut obj = Budgeted {
        f,
        evals: 0,
        max: opts.max_evals.max(1),
        best_x: Vec::new(),
        best_f: f64::INFINITY,
    };
    let finish = |obj: Budgeted<F>, converged: bool, x0: &[f64]| {
        let x = if obj.best_x.is_empty() { x0.to_vec() } else { obj.best_x };
        NelderMeadResult {
            x,
            f: obj.best_f,
            evals: obj.evals,
            converged,
        }
    };

    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    match obj.eval(x0)? {
        Some(v) => simplex.push((x0.to_vec(), v)),
        None => return Ok(finish(obj, false, x0)),
    }
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += opts.step;
        match obj.eval(&x)? {
            Some(v) => simplex.push((x, v)),
            None => return Ok(finish(obj, false, x0)),
        }
    }
    if dim == 0 {
        return Ok(finish(obj, true, x0));
    }

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let f_best = simplex[0].1;
        let f_worst = simplex[dim].1;
        let f_second = simplex[dim - 1].1;
        if f_worst - f_best < opts.tolerance {
            return Ok(finish(obj, true, x0));
        }

        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let worst = simplex[dim].0.clone();

        let xr = lerp(&centroid, &worst, -REFLECT);
        let Some(fr) = obj.eval(&xr)? else { break };

        if fr < f_best {
            let xe = lerp(&centroid, &xr, EXPAND);
            let Some(fe) = obj.eval(&xe)? else { break };
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < f_second {
            simplex[dim] = (xr, fr);
            continue;
        }

        let (xc, outside) = if fr < f_worst {
            (lerp(&centroid, &xr, CONTRACT), true)
        } else {
            (lerp(&centroid, &worst, CONTRACT), false)
        };
        let Some(fc) = obj.eval(&xc)? else { break };
        let accept = if outside { fc <= fr } else { fc < f_worst };
        if accept {
            simplex[dim] = (xc, fc);
            continue;
        }

        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = lerp(&best, &vertex.0, SHRINK);
            let Some(v) = obj.eval(&x)? else {
                return Ok(finish(obj, false, x0));
            };
            *vertex = (x, v);
        }
    }
    Ok(finish(obj, false, x0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn rosenbrock(x: &[f64]) -> Result<f64, Infallible> {
        Ok((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2))
    }

    #[test]
    fn finds_rosenbrock_minimum() {
        let opts = NelderMeadOptions {
            step: 0.5,
            tolerance: 1e-14,
            max_evals: 5000,
        };
        let r = minimize(rosenbrock, &[-1.2, 1.0], opts).unwrap();
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-3 && (r.x[1] - 1.0).abs() < 1e-3, "{r:?}");
    }

    #[test]
    fn budget_of_one_evaluates_start_only() {
        let opts = NelderMeadOptions {
            max_evals: 1,
            ..Default::default()
        };
        let r = minimize(rosenbrock, &[0.0, 0.0], opts).unwrap();
        assert_eq!(r.evals, 1);
        assert_eq!(r.x, vec![0.0, 0.0]);
        assert_eq!(r.f, 1.0);
        assert!(!r.converged);
    }

    #[test]
    fn never_exceeds_budget_and_never_worsens() {
        for budget in [2, 3, 7, 50, 333] {
            let opts = NelderMeadOptions {
                max_evals: budget,
                ..Default::default()
            };
            let r = minimize(rosenbrock, &[-1.0, 2.0], opts).unwrap();
            assert!(r.evals <= budget);
            assert!(r.f <= rosenbrock(&[-1.0, 2.0]).unwrap());
        }
    }

    #[test]
    fn propagates_errors() {
        let r = minimize(|_: &[f64]| Err::<f64, _>("boom"), &[1.0], NelderMeadOptions::default());
        assert_eq!(r.unwrap_err(), "boom");
    }
}
