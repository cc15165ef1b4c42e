//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Points cross the boundary as flat `f64` arrays: sphere points as
//! consecutive `(x, y, z)` triples, 2×2 SPD matrices as `(a11, a12, a22)`.

use manifolds::apps::{
    bezier_eval, riemannian_mean_gd, riemannian_mean_interp, BezierSpec, MeanConfig,
};
use manifolds::{shortest_geodesic, Manifold, Sphere, SymmetricPositiveDefinite};
use nalgebra::{DMatrix, SymmetricEigen};
use wasm_bindgen::prelude::*;

const INPUT_TOL: f64 = 1e-9;

fn sphere_points(flat: &[f64]) -> Result<Vec<DMatrix<f64>>, String> {
    if !flat.len().is_multiple_of(3) || flat.is_empty() {
        return Err(format!("expected xyz triples, got {} numbers", flat.len()));
    }
    let sphere = Sphere::new(2);
    flat.chunks(3)
        .map(|c| {
            let v = DMatrix::from_column_slice(3, 1, c);
            let n = v.norm();
            if n == 0.0 || !n.is_finite() {
                return Err(format!("cannot place {c:?} on the sphere"));
            }
            let p = v / n;
            sphere
                .check_point(&p, INPUT_TOL)
                .map_err(|e| e.to_string())?;
            Ok(p)
        })
        .collect()
}

fn flatten(points: &[DMatrix<f64>]) -> Vec<f64> {
    points.iter().flat_map(|p| p.iter().copied()).collect()
}

/// `samples` points of the sphere Bézier curve with the given control
/// points (normalized to unit length), for `t` evenly spaced in `[0, 1]`.
pub fn sphere_bezier_curve(control: &[f64], samples: usize) -> Result<Vec<f64>, String> {
    let sphere = Sphere::new(2);
    let spec = BezierSpec::new(sphere_points(control)?).map_err(|e| e.to_string())?;
    let samples = samples.max(2);
    let curve: Result<Vec<_>, _> = (0..samples)
        .map(|k| bezier_eval(&sphere, &spec, k as f64 / (samples - 1) as f64))
        .collect();
    Ok(flatten(&curve.map_err(|e| e.to_string())?))
}

/// All intermediate De Casteljau points at `t`, level by level: the control
/// points, then the `n` points of the first contraction, down to the single
/// curve point.
pub fn sphere_de_casteljau(control: &[f64], t: f64) -> Result<Vec<f64>, String> {
    if !(0.0..=1.0).contains(&t) {
        return Err(format!("t = {t} is outside [0, 1]"));
    }
    let sphere = Sphere::new(2);
    let mut level = sphere_points(control)?;
    if level.len() < 2 {
        return Err("need at least 2 control points".into());
    }
    let mut out = flatten(&level);
    while level.len() > 1 {
        level = level
            .windows(2)
            .map(|w| shortest_geodesic(&sphere, &w[0], &w[1], t))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        out.extend(flatten(&level));
    }
    Ok(out)
}

/// Gradient-descent mean, geodesic-interpolation mean and the number of
/// descent iterations, as `[gd xyz, interpolation xyz, iterations]`.
pub fn sphere_means(points: &[f64]) -> Result<Vec<f64>, String> {
    let sphere = Sphere::new(2);
    let pts = sphere_points(points)?;
    let gd = riemannian_mean_gd(&sphere, &pts, None, &MeanConfig::default())
        .map_err(|e| e.to_string())?;
    let interp = riemannian_mean_interp(&sphere, &pts, None).map_err(|e| e.to_string())?;
    let mut out = flatten(&[gd.mean, interp]);
    out.push(gd.iterations as f64);
    Ok(out)
}

fn spd2(entries: &[f64]) -> Result<DMatrix<f64>, String> {
    let [a11, a12, a22] = entries else {
        return Err(format!(
            "expected (a11, a12, a22), got {} numbers",
            entries.len()
        ));
    };
    let m = DMatrix::from_row_slice(2, 2, &[*a11, *a12, *a12, *a22]);
    SymmetricPositiveDefinite::new(2)
        .check_point(&m, INPUT_TOL)
        .map_err(|e| e.to_string())?;
    Ok(m)
}

/// Ellipses `{x : xᵀ P⁻¹ x = 1}` for `steps` points `P` evenly spaced along
/// the affine-invariant geodesic from `a` to `b`, each as
/// `(major semi-axis, minor semi-axis, angle of the major axis)`.
pub fn spd_geodesic_ellipses(a: &[f64], b: &[f64], steps: usize) -> Result<Vec<f64>, String> {
    let spd = SymmetricPositiveDefinite::new(2);
    let (p, q) = (spd2(a)?, spd2(b)?);
    let steps = steps.max(2);
    let mut out = Vec::with_capacity(3 * steps);
    for k in 0..steps {
        let t = k as f64 / (steps - 1) as f64;
        let m = shortest_geodesic(&spd, &p, &q, t).map_err(|e| e.to_string())?;
        let eig = SymmetricEigen::new(m);
        let (major, minor) = if eig.eigenvalues[0] >= eig.eigenvalues[1] {
            (0, 1)
        } else {
            (1, 0)
        };
        let axis = eig.eigenvectors.column(major);
        out.push(eig.eigenvalues[major].sqrt());
        out.push(eig.eigenvalues[minor].sqrt());
        out.push(axis[1].atan2(axis[0]));
    }
    Ok(out)
}

/// Affine-invariant distance between two 2×2 SPD matrices.
pub fn spd_distance(a: &[f64], b: &[f64]) -> Result<f64, String> {
    Ok(SymmetricPositiveDefinite::new(2).distance(&spd2(a)?, &spd2(b)?))
}

#[wasm_bindgen(js_name = sphereBezierCurve)]
pub fn js_sphere_bezier_curve(control: &[f64], samples: usize) -> Result<Vec<f64>, JsError> {
    sphere_bezier_curve(control, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sphereDeCasteljau)]
pub fn js_sphere_de_casteljau(control: &[f64], t: f64) -> Result<Vec<f64>, JsError> {
    sphere_de_casteljau(control, t).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sphereMeans)]
pub fn js_sphere_means(points: &[f64]) -> Result<Vec<f64>, JsError> {
    sphere_means(points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = spdGeodesicEllipses)]
pub fn js_spd_geodesic_ellipses(a: &[f64], b: &[f64], steps: usize) -> Result<Vec<f64>, JsError> {
    spd_geodesic_ellipses(a, b, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = spdDistance)]
pub fn js_spd_distance(a: &[f64], b: &[f64]) -> Result<f64, JsError> {
    spd_distance(a, b).map_err(|e| JsError::new(&e))
}
