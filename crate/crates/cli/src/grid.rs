//! Parameter grids: `x`, `x,y,z`, `start:stop:count` and `logspace:a:b:k`,
//! all inclusive of both endpoints.

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("not a number: `{s}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: `{s}`"))
    }
}

fn parse_count(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("grid count must be a positive integer, got `{s}`")),
    }
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|k| if k == count - 1 { stop } else { start + step * k as f64 })
        .collect()
}

/// Real-valued grid.
pub fn parse_reals(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("logspace:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [a, b, k] = parts[..] else {
            return Err(format!("expected logspace:a:b:k, got `{spec}`"));
        };
        let exps = linspace(parse_real(a)?, parse_real(b)?, parse_count(k)?);
        return Ok(exps.into_iter().map(|e| 10f64.powf(e)).collect());
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("expected start:stop:count, got `{spec}`"));
        };
        return Ok(linspace(parse_real(start)?, parse_real(stop)?, parse_count(count)?));
    }
    let values: Vec<f64> = spec.split(',').map(parse_real).collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err("empty grid".into());
    }
    Ok(values)
}

/// Grid of positive integers (indices, section sizes).
pub fn parse_indices(spec: &str) -> Result<Vec<u64>, String> {
    parse_reals(spec)?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 && v < 2f64.powi(53) {
                Ok(v as u64)
            } else {
                Err(format!("expected a positive integer, got {v} in `{spec}`"))
            }
        })
        .collect()
}
