//! Minkowski bilinear form with signature `(+++-)` and time at index 3,
//! plus boost construction and eta-orthonormalization.

use nalgebra::{Matrix4, Vector3, Vector4};

/// The metric tensor `diag(1, 1, 1, -1)`.
pub fn eta_matrix() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0))
}

/// `u1 v1 + u2 v2 + u3 v3 - u4 v4`.
pub fn eta(u: &Vector4<f64>, v: &Vector4<f64>) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]
}

/// Max-norm residual of the pseudo-orthogonality condition `L^T eta L = eta`.
pub fn lorentz_residual(l: &Matrix4<f64>) -> f64 {
    let res = l.transpose() * eta_matrix() * l - eta_matrix();
    res.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Symmetric boost with the given spatial direction and rapidity.
pub fn boost(direction: &Vector3<f64>, rapidity: f64) -> Matrix4<f64> {
    let n = direction.normalize();
    let ch = rapidity.cosh();
    let sh = rapidity.sinh();
    let mut l = Matrix4::identity();
    for i in 0..3 {
        for j in 0..3 {
            l[(i, j)] = if i == j { 1.0 } else { 0.0 } + (ch - 1.0) * n[i] * n[j];
        }
        l[(i, 3)] = sh * n[i];
        l[(3, i)] = sh * n[i];
    }
    l[(3, 3)] = ch;
    l
}

/// Gram-Schmidt with respect to eta, run on the columns. The time column is
/// normalized first so that a matrix near SO+(3,1) projects back onto it.
pub fn eta_orthonormalize(l: &Matrix4<f64>) -> Matrix4<f64> {
    let mut cols: Vec<Vector4<f64>> = (0..4).map(|i| l.column(i).into_owned()).collect();
    let t = cols[3];
    let t = t / (-eta(&t, &t)).abs().sqrt();
    cols[3] = if t[3] < 0.0 { -t } else { t };
    for i in 0..3 {
        let mut v = cols[i];
        v += eta(&v, &cols[3]) * cols[3];
        for j in 0..i {
            v -= eta(&v, &cols[j]) * cols[j];
        }
        cols[i] = v / eta(&v, &v).sqrt();
    }
    Matrix4::from_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn boost_is_pseudo_orthogonal() {
        let l = boost(&Vector3::new(1.0, 2.0, -0.5), 1.3);
        assert!(lorentz_residual(&l) < 1e-14);
        assert!(l[(3, 3)] >= 1.0);
    }

    #[test]
    fn eta_signature() {
        let e1 = Vector4::new(1.0, 0.0, 0.0, 0.0);
        let e4 = Vector4::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(eta(&e1, &e1), 1.0);
        assert_eq!(eta(&e4, &e4), -1.0);
        assert_eq!(eta(&e1, &e4), 0.0);
    }

    #[test]
    fn orthonormalize_repairs_drift() {
        let mut l = boost(&Vector3::new(0.3, -1.0, 0.7), 0.9);
        l[(0, 1)] += 1e-7;
        l[(2, 3)] -= 2e-7;
        let repaired = eta_orthonormalize(&l);
        assert!(lorentz_residual(&repaired) < 1e-13);
        let drift = (repaired - l).abs().max();
        assert_abs_diff_eq!(drift, 0.0, epsilon = 1e-5);
    }
}
