//! Structured tri6 mesh of a square plate with a quarter hole at the origin.
//!
//! Nodes sit on a `(2 n_r + 1) × (2 n_θ + 1)` grid. Radial lines run from
//! the hole to the outer boundary, which is parametrized by arc length
//! along the right and top edges so that edge midside nodes are true
//! midpoints. Each grid cell is split into two triangles.

use std::f64::consts::FRAC_PI_2;

use qdd_core::fem_core::{ElementKind, Mesh};
use qdd_core::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PlateGeometry {
    pub side: f64,
    pub radius: f64,
    pub thickness: f64,
    /// Pressure on the right edge (MPa), pushing in −x.
    pub pressure: f64,
    pub n_radial: usize,
    pub n_angular: usize,
    /// Length ratio of the outermost to the innermost radial element.
    pub grading: f64,
}

impl Default for PlateGeometry {
    fn default() -> Self {
        Self {
            side: 20.0,
            radius: 4.0,
            thickness: 1.0,
            pressure: 400.0,
            n_radial: 5,
            n_angular: 8,
            grading: 1.0,
        }
    }
}

fn outer_point(side: f64, s: f64) -> [f64; 2] {
    if s <= 0.5 {
        [side, side * 2.0 * s]
    } else {
        [side * (2.0 - 2.0 * s), side]
    }
}

/// Position of grid line `i` (of `2 n` half-steps) along a radial line,
/// element lengths growing geometrically by `grading` overall; midside
/// lines sit halfway between their corner lines.
fn radial_fraction(i: usize, n: usize, grading: f64) -> f64 {
    let corner = |a: usize| -> f64 {
        if n == 1 || (grading - 1.0).abs() < 1e-12 {
            return a as f64 / n as f64;
        }
        let q = grading.powf(1.0 / (n - 1) as f64);
        (q.powi(a as i32) - 1.0) / (q.powi(n as i32) - 1.0)
    };
    if i % 2 == 0 {
        corner(i / 2)
    } else {
        0.5 * (corner(i / 2) + corner(i / 2 + 1))
    }
}

pub fn plate_with_hole(g: &PlateGeometry) -> Result<Mesh<f64>> {
    if !(g.radius > 0.0 && g.radius < g.side) || !(g.thickness > 0.0) || !(g.grading > 0.0) {
        return Err(Error::InvalidParameter("need 0 < radius < side and positive thickness".into()));
    }
    // the right/top corner must be a grid node
    if g.n_radial == 0 || g.n_angular < 2 || g.n_angular % 2 != 0 {
        return Err(Error::InvalidParameter("need n_radial >= 1 and an even n_angular >= 2".into()));
    }
    let (nr, nt) = (2 * g.n_radial + 1, 2 * g.n_angular + 1);
    let id = |i: usize, k: usize| k * nr + i;
    let mut nodes = Vec::with_capacity(nr * nt);
    for k in 0..nt {
        let s = k as f64 / (nt - 1) as f64;
        let theta = s * FRAC_PI_2;
        let inner = if k == nt - 1 {
            [0.0, g.radius]
        } else {
            [g.radius * theta.cos(), g.radius * theta.sin()]
        };
        let outer = outer_point(g.side, s);
        for i in 0..nr {
            let t = radial_fraction(i, g.n_radial, g.grading);
            nodes.push([
                inner[0] + t * (outer[0] - inner[0]),
                inner[1] + t * (outer[1] - inner[1]),
            ]);
        }
    }

    let mut elements = Vec::with_capacity(2 * g.n_radial * g.n_angular);
    for b in 0..g.n_angular {
        for a in 0..g.n_radial {
            let (i, k) = (2 * a, 2 * b);
            elements.push(vec![
                id(i, k),
                id(i + 2, k),
                id(i + 2, k + 2),
                id(i + 1, k),
                id(i + 2, k + 1),
                id(i + 1, k + 1),
            ]);
            elements.push(vec![
                id(i, k),
                id(i + 2, k + 2),
                id(i, k + 2),
                id(i + 1, k + 1),
                id(i + 1, k + 2),
                id(i, k + 1),
            ]);
        }
    }

    let mut dirichlet = Vec::new();
    for i in 0..nr {
        dirichlet.push((2 * id(i, nt - 1), 0.0)); // ux on the left edge
        dirichlet.push((2 * id(i, 0) + 1, 0.0)); // uy on the bottom edge
    }

    // consistent loads of a uniform traction on quadratic edges
    let mut loads = vec![0.0; 2 * nodes.len()];
    let edge = nr - 1;
    for b in 0..g.n_angular / 2 {
        let (n0, n1, n2) = (id(edge, 2 * b), id(edge, 2 * b + 1), id(edge, 2 * b + 2));
        let len = nodes[n2][1] - nodes[n0][1];
        let f = -g.pressure * g.thickness * len;
        loads[2 * n0] += f / 6.0;
        loads[2 * n1] += f * 4.0 / 6.0;
        loads[2 * n2] += f / 6.0;
    }

    let mesh = Mesh {
        nodes,
        elements,
        kind: ElementKind::Tri6,
        section: g.thickness,
        dirichlet,
        loads,
    };
    mesh.validate()?;
    Ok(mesh)
}
