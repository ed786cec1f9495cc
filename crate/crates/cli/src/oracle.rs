//! Hermite quadrature nodes as an independent reference for the real zeros
//! when `a = -n - 1/2`.

use nalgebra::DMatrix;

/// `n` for `a = -n - 1/2`, if `a` is such a value.
pub fn hermite_degree(a: f64) -> Option<u32> {
    let n = -a - 0.5;
    (n >= 1.0 && n == n.round() && n <= f64::from(u32::MAX)).then_some(n as u32)
}

/// Zeros of `He_n`, the zeros of `U(-n - 1/2, .)`, in increasing order: the
/// eigenvalues of the Jacobi matrix with off-diagonal entries `sqrt(k)`.
pub fn hermite_nodes(n: u32) -> Vec<f64> {
    let n = n as usize;
    let mut t = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64).sqrt();
        t[(k - 1, k)] = b;
        t[(k, k - 1)] = b;
    }
    let mut nodes: Vec<f64> = t.symmetric_eigen().eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        assert_eq!(hermite_degree(-30.5), Some(30));
        assert_eq!(hermite_degree(-6.2), None);
        assert_eq!(hermite_degree(-0.5), None);
        let x = hermite_nodes(2);
        assert!((x[1] - 1.0).abs() < 1e-15 && (x[0] + 1.0).abs() < 1e-15);
        let x = hermite_nodes(3);
        assert!(x[1].abs() < 1e-15 && (x[2] - 3f64.sqrt()).abs() < 1e-14);
    }
}
