//! Disk cache for solved series, keyed by truncation order and invalidated
//! by the solver version string. Location: `$PLANAR_CACHE_DIR`, defaulting
//! to a `planar-cache` directory under the system temp dir.

use super::{solve_system, CubicSystemSolution, PowerSeries, SolveError};
use num::{BigInt, BigRational};
use std::path::PathBuf;
use std::str::FromStr;

pub fn cache_dir() -> PathBuf {
    match std::env::var_os("PLANAR_CACHE_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => std::env::temp_dir().join("planar-cache"),
    }
}

fn cache_path(order: usize) -> PathBuf {
    cache_dir().join(format!("cubic-series-N{order}.json"))
}

fn series_to_json(s: &PowerSeries) -> serde_json::Value {
    serde_json::Value::Array(
        s.coeffs()
            .iter()
            .map(|c| serde_json::json!([c.numer().to_string(), c.denom().to_string()]))
            .collect(),
    )
}

fn series_from_json(v: &serde_json::Value, order: usize) -> Result<PowerSeries, SolveError> {
    let arr = v.as_array().ok_or_else(|| SolveError::Cache("series not an array".into()))?;
    if arr.len() != order + 1 {
        return Err(SolveError::Cache("series length mismatch".into()));
    }
    let mut coeffs = Vec::with_capacity(arr.len());
    for pair in arr {
        let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
            SolveError::Cache("coefficient is not a [num, den] pair".into())
        })?;
        let num = BigInt::from_str(p[0].as_str().unwrap_or_default())
            .map_err(|e| SolveError::Cache(e.to_string()))?;
        let den = BigInt::from_str(p[1].as_str().unwrap_or_default())
            .map_err(|e| SolveError::Cache(e.to_string()))?;
        coeffs.push(BigRational::new(num, den));
    }
    Ok(PowerSeries::from_coeffs(coeffs))
}

/// Full cache-file payload for a solution.
pub fn solution_to_json(sol: &CubicSystemSolution) -> serde_json::Value {
    serde_json::json!({
        "version": crate::SOLVER_VERSION,
        "order": sol.order,
        "series": {
            "B": series_to_json(&sol.b),
            "C": series_to_json(&sol.c),
            "D": series_to_json(&sol.d),
            "S": series_to_json(&sol.s),
            "P": series_to_json(&sol.p),
            "H": series_to_json(&sol.h),
            "u": series_to_json(&sol.u),
            "G1": series_to_json(&sol.g1),
            "G0": series_to_json(&sol.g0),
        },
    })
}

fn solution_from_json(v: &serde_json::Value) -> Result<CubicSystemSolution, SolveError> {
    if v["version"].as_str() != Some(crate::SOLVER_VERSION) {
        return Err(SolveError::Cache("solver version mismatch".into()));
    }
    let order =
        v["order"].as_u64().ok_or_else(|| SolveError::Cache("missing order".into()))? as usize;
    let s = &v["series"];
    Ok(CubicSystemSolution {
        order,
        b: series_from_json(&s["B"], order)?,
        c: series_from_json(&s["C"], order)?,
        d: series_from_json(&s["D"], order)?,
        s: series_from_json(&s["S"], order)?,
        p: series_from_json(&s["P"], order)?,
        h: series_from_json(&s["H"], order)?,
        u: series_from_json(&s["u"], order)?,
        g1: series_from_json(&s["G1"], order)?,
        g0: series_from_json(&s["G0"], order)?,
    })
}

/// Load the order-`n` solution from the disk cache, or solve and store it.
/// A stale or unreadable cache entry is recomputed and overwritten.
pub fn load_or_solve(n: usize) -> Result<CubicSystemSolution, SolveError> {
    let path = cache_path(n);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
            if let Ok(sol) = solution_from_json(&value) {
                if sol.order == n {
                    return Ok(sol);
                }
            }
        }
    }
    let sol = solve_system(n)?;
    if std::fs::create_dir_all(cache_dir()).is_ok() {
        let _ = std::fs::write(&path, serde_json::to_string(&solution_to_json(&sol)).unwrap());
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_round_trip() {
        let sol = solve_system(10).unwrap();
        let json = solution_to_json(&sol);
        let back = solution_from_json(&json).unwrap();
        assert_eq!(back, sol);
    }
}
