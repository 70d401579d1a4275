use crate::scalar::Real;

/// Symmetric 3-point rule on the reference triangle `(0,0) (1,0) (0,1)`,
/// exact for quadratics. Entries are `(ξ, η, weight)`; weights sum to the
/// reference area 1/2.
pub const TRI3_POINTS: [(f64, f64, f64); 3] = [
    (1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0),
    (2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0),
    (1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0),
];

/// Quadratic shape functions at `(ξ, η)`: corners 1..3, then mid-sides
/// 1-2, 2-3, 3-1.
pub fn shape_functions<T: Real>(xi: T, eta: T) -> [T; 6] {
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let l1 = T::one() - xi - eta;
    let (l2, l3) = (xi, eta);
    [
        l1 * (two * l1 - T::one()),
        l2 * (two * l2 - T::one()),
        l3 * (two * l3 - T::one()),
        four * l1 * l2,
        four * l2 * l3,
        four * l3 * l1,
    ]
}

/// `(∂N/∂ξ, ∂N/∂η)` at `(ξ, η)`.
pub fn shape_derivatives<T: Real>(xi: T, eta: T) -> ([T; 6], [T; 6]) {
    let four = T::lit(4.0);
    let l1 = T::one() - xi - eta;
    let z = T::zero();
    let dxi = [
        -(four * l1 - T::one()),
        four * xi - T::one(),
        z,
        four * (l1 - xi),
        four * eta,
        -four * eta,
    ];
    let deta = [
        -(four * l1 - T::one()),
        z,
        four * eta - T::one(),
        -four * xi,
        four * xi,
        four * (l1 - eta),
    ];
    (dxi, deta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(f: impl Fn(f64, f64) -> f64) -> f64 {
        TRI3_POINTS.iter().map(|&(x, y, w)| w * f(x, y)).sum()
    }

    #[test]
    fn rule_integrates_quadratics_exactly() {
        // ∫ x^a y^b over the reference triangle = a! b! / (a + b + 2)!
        let cases: [(i32, i32, f64); 6] = [
            (0, 0, 0.5),
            (1, 0, 1.0 / 6.0),
            (0, 1, 1.0 / 6.0),
            (2, 0, 1.0 / 12.0),
            (1, 1, 1.0 / 24.0),
            (0, 2, 1.0 / 12.0),
        ];
        for (a, b, exact) in cases {
            let got = integrate(|x, y| x.powi(a) * y.powi(b));
            assert!((got - exact).abs() < 1e-15, "x^{a} y^{b}: {got} vs {exact}");
        }
    }

    #[test]
    fn partition_of_unity_and_kronecker() {
        let nodes: [(f64, f64); 6] = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.5, 0.0), (0.5, 0.5), (0.0, 0.5)];
        for (i, &(x, y)) in nodes.iter().enumerate() {
            let n = shape_functions(x, y);
            for (j, &v) in n.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-15);
            }
        }
        let (dx, dy) = shape_derivatives(0.3, 0.2);
        assert!(dx.iter().sum::<f64>().abs() < 1e-14);
        assert!(dy.iter().sum::<f64>().abs() < 1e-14);
        let n: f64 = shape_functions(0.3, 0.2).iter().sum();
        assert!((n - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let (x, y, h): (f64, f64, f64) = (0.27, 0.31, 1e-6);
        let (dx, dy) = shape_derivatives(x, y);
        let (p, m) = (shape_functions(x + h, y), shape_functions(x - h, y));
        let (py, my) = (shape_functions(x, y + h), shape_functions(x, y - h));
        for i in 0..6 {
            assert!(((p[i] - m[i]) / (2.0 * h) - dx[i]).abs() < 1e-8);
            assert!(((py[i] - my[i]) / (2.0 * h) - dy[i]).abs() < 1e-8);
        }
    }
}
