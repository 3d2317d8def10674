//! Newton polyhedra and their compact faces, Newton numbers, and Newton
//! non-degeneracy tests.
//!
//! Face enumeration works over candidate supporting covectors built from
//! small subsets of the vertex set (triples of vertices, pairs plus a
//! coordinate direction, plain coordinate directions). Every facet normal of
//! conv(support) + R^n_+ arises this way, so minsets of candidate sums
//! enumerate the full compact face lattice without any external geometry
//! dependency. Supports here are tiny, so the cubic scan is cheap.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::local::{torus_system_solve, OracleConfig};
use crate::poly::{rat, Exponents, Polynomial, Rational, UniPoly};

/// A compact face of the Newton boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    /// Vertices of the face (each a vertex of the polyhedron), sorted.
    pub vertices: Vec<Exponents>,
    /// A primitive covector with strictly positive entries whose minimum set
    /// is exactly this face. For top-dimensional faces this is the unique
    /// supporting normal; for lower faces it is a witness.
    pub covector: Vec<u64>,
    /// The minimum of the covector over the polyhedron.
    pub d_value: u64,
    /// Lattice-normalized volume: 1 for vertices, lattice length for edges,
    /// Euclidean area over the covolume of the plane lattice for 2-faces.
    pub lattice_volume: Rational,
}

impl Face {
    /// True when the support point lies on this face.
    pub fn contains_point(&self, p: &Exponents) -> bool {
        dot_u(&self.covector, p) == self.d_value
    }
}

/// The Newton polyhedron conv(support) + R^n_+ together with all compact
/// faces of its boundary.
#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    arity: usize,
    vertices: Vec<Exponents>,
    faces: Vec<Face>,
    /// Valid inequalities (candidate normals and their minima over the
    /// vertex set); includes every facet, so membership tests are exact.
    inequalities: Vec<([i64; 3], i64)>,
}

fn dot(n: &[i64; 3], p: &Exponents) -> i64 {
    (0..3).map(|i| n[i] * p.0[i] as i64).sum()
}

fn dot_u(n: &[u64], p: &Exponents) -> u64 {
    n.iter()
        .enumerate()
        .map(|(i, &c)| c * p.0[i] as u64)
        .sum()
}

fn primitive(mut v: [i64; 3]) -> [i64; 3] {
    let mut g = 0i64;
    for c in v {
        g = g.gcd(&c);
    }
    if g > 1 {
        for c in v.iter_mut() {
            *c /= g;
        }
    }
    v
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn diff(a: &Exponents, b: &Exponents) -> [i64; 3] {
    [
        a.0[0] as i64 - b.0[0] as i64,
        a.0[1] as i64 - b.0[1] as i64,
        a.0[2] as i64 - b.0[2] as i64,
    ]
}

impl NewtonPolyhedron {
    /// Builds the polyhedron of a nonzero polynomial.
    pub fn new(f: &Polynomial) -> Result<NewtonPolyhedron> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let arity = f.arity();
        let support = f.support();
        let vertices = minimal_generators(&support, arity);
        let inequalities = valid_inequalities(&vertices, arity);
        let faces = enumerate_faces(&vertices, &inequalities, arity);
        Ok(NewtonPolyhedron {
            arity,
            vertices,
            faces,
            inequalities,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vertices(&self) -> &[Exponents] {
        &self.vertices
    }

    /// All compact faces, sorted by (dim, vertex list).
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    /// The unique top-dimensional compact face, when there is exactly one.
    pub fn unique_top_face(&self) -> Option<&Face> {
        let mut it = self.faces_of_dim(self.arity - 1);
        let first = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some(first)
        }
    }

    /// Exact membership test for conv(support) + R^n_+.
    pub fn contains(&self, p: &Exponents) -> bool {
        self.inequalities.iter().all(|(n, min)| dot(n, p) >= *min)
    }

    /// Whether the other polyhedron is contained in this one.
    pub fn contains_polyhedron(&self, other: &NewtonPolyhedron) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Compares Newton boundaries: equal vertex sets give equal polyhedra.
    pub fn same_boundary(&self, other: &NewtonPolyhedron) -> bool {
        self.arity == other.arity && self.vertices == other.vertices
    }
}

/// Minimal generators of conv(S) + R^n_+: points not dominated by the hull
/// of the others.
fn minimal_generators(support: &[Exponents], arity: usize) -> Vec<Exponents> {
    // Quick pre-filter: drop points componentwise-dominated by another.
    let mut pts: Vec<Exponents> = Vec::new();
    'outer: for &s in support {
        for &t in support {
            if t != s && (0..3).all(|i| t.0[i] <= s.0[i]) {
                continue 'outer;
            }
        }
        pts.push(s);
    }
    let mut out = Vec::new();
    for (i, &s) in pts.iter().enumerate() {
        let rest: Vec<Exponents> = pts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &t)| t)
            .collect();
        if rest.is_empty() {
            out.push(s);
            continue;
        }
        let ineq = valid_inequalities(&rest, arity);
        let inside = ineq.iter().all(|(n, min)| dot(n, &s) >= *min);
        if !inside {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Valid inequalities n.x >= min for conv(pts) + R^n_+, including every
/// facet normal. Candidates come from point triples, point pairs plus an
/// axis, and the axes themselves, keeping only componentwise-nonnegative
/// normals.
fn valid_inequalities(pts: &[Exponents], arity: usize) -> Vec<([i64; 3], i64)> {
    let mut normals: Vec<[i64; 3]> = Vec::new();
    let axes: &[[i64; 3]] = match arity {
        2 => &[[1, 0, 0], [0, 1, 0]],
        3 => &[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        _ => &[[1, 0, 0]],
    };
    for a in axes {
        normals.push(*a);
    }
    if arity == 2 {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = diff(&pts[i], &pts[j]);
                let n = [-d[1], d[0], 0];
                push_oriented(&mut normals, n);
            }
        }
    } else if arity == 3 {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let dij = diff(&pts[i], &pts[j]);
                for k in j + 1..pts.len() {
                    let n = cross(dij, diff(&pts[i], &pts[k]));
                    push_oriented(&mut normals, n);
                }
                for a in axes {
                    let n = cross(dij, *a);
                    push_oriented(&mut normals, n);
                }
            }
        }
    }
    normals.sort();
    normals.dedup();
    let mut out = Vec::new();
    for n in normals {
        let min = pts.iter().map(|p| dot(&n, p)).min().unwrap();
        out.push((n, min));
    }
    out
}

fn push_oriented(normals: &mut Vec<[i64; 3]>, n: [i64; 3]) {
    if n == [0, 0, 0] {
        return;
    }
    if n.iter().all(|&c| c >= 0) {
        normals.push(primitive(n));
    } else if n.iter().all(|&c| c <= 0) {
        normals.push(primitive([-n[0], -n[1], -n[2]]));
    }
}

fn minset(pts: &[Exponents], n: &[i64; 3]) -> (i64, Vec<Exponents>) {
    let min = pts.iter().map(|p| dot(n, p)).min().unwrap();
    let set = pts.iter().filter(|p| dot(n, p) == min).copied().collect();
    (min, set)
}

/// Dimension of the affine hull of a point set; points come from a vertex
/// scan, so the incremental independence test stays within rank three.
fn affine_dim(pts: &[Exponents]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let base = pts[0];
    let mut basis: Vec<[i64; 3]> = Vec::new();
    for p in &pts[1..] {
        let d = diff(p, &base);
        if independent_with(&basis, d) {
            basis.push(d);
            if basis.len() == 3 {
                break;
            }
        }
    }
    basis.len()
}

fn independent_with(basis: &[[i64; 3]], d: [i64; 3]) -> bool {
    match basis.len() {
        0 => d != [0, 0, 0],
        1 => cross(basis[0], d) != [0, 0, 0],
        2 => {
            let n = cross(basis[0], basis[1]);
            n[0] * d[0] + n[1] * d[1] + n[2] * d[2] != 0
        }
        _ => false,
    }
}

fn is_strictly_positive(n: &[i64; 3], arity: usize) -> bool {
    (0..arity).all(|i| n[i] > 0)
}

fn enumerate_faces(
    vertices: &[Exponents],
    inequalities: &[([i64; 3], i64)],
    arity: usize,
) -> Vec<Face> {
    let mut faces: Vec<Face> = Vec::new();
    let mut seen: Vec<Vec<Exponents>> = Vec::new();

    // Top-dimensional compact faces: minsets of strictly positive candidate
    // normals with boundary dimension arity - 1.
    for (n, _) in inequalities {
        if !is_strictly_positive(n, arity) {
            continue;
        }
        let (min, set) = minset(vertices, n);
        if affine_dim(&set) != arity - 1 {
            continue;
        }
        if seen.contains(&set) {
            continue;
        }
        seen.push(set.clone());
        faces.push(make_face(arity - 1, set, *n, min, arity));
    }

    // Compact edges in three variables: for each vertex pair, the sum of all
    // tight valid inequalities supports the smallest face containing the
    // pair, and strict positivity of the sum is exactly compactness.
    if arity == 3 {
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let (a, b) = (vertices[i], vertices[j]);
                let mut q = [0i64; 3];
                for (n, min) in inequalities {
                    if dot(n, &a) == *min && dot(n, &b) == *min {
                        for t in 0..3 {
                            q[t] += n[t];
                        }
                    }
                }
                if !is_strictly_positive(&q, arity) {
                    continue;
                }
                let (min, set) = minset(vertices, &q);
                if affine_dim(&set) != 1 || set.len() != 2 {
                    continue;
                }
                if !set.contains(&a) || !set.contains(&b) {
                    continue;
                }
                if seen.contains(&set) {
                    continue;
                }
                seen.push(set.clone());
                faces.push(make_face(1, set, primitive(q), min, arity));
            }
        }
    }

    // Vertices: the sum of all tight valid inequalities is a strictly
    // positive witness precisely because each vertex is a compact face.
    for &v in vertices {
        let mut q = [0i64; 3];
        for (n, min) in inequalities {
            if dot(n, &v) == *min {
                for t in 0..3 {
                    q[t] += n[t];
                }
            }
        }
        debug_assert!(is_strictly_positive(&q, arity));
        let q = primitive(q);
        let min = dot(&q, &v);
        debug_assert_eq!(minset(vertices, &q).1, vec![v]);
        faces.push(make_face(0, vec![v], q, min, arity));
    }

    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    faces
}

fn make_face(
    dim: usize,
    mut vertices: Vec<Exponents>,
    normal: [i64; 3],
    min: i64,
    arity: usize,
) -> Face {
    vertices.sort();
    let covector: Vec<u64> = normal[..arity].iter().map(|&c| c as u64).collect();
    let lattice_volume = match dim {
        0 => rat(1),
        1 => {
            let d = diff(&vertices[1], &vertices[0]);
            let mut g = 0i64;
            for c in d {
                g = g.gcd(&c);
            }
            rat(g)
        }
        _ => {
            // Fan triangulation from the first vertex; each triangle
            // contributes |cross| / (2 |normal|) = |g| / 2 where
            // cross = g * normal.
            let base = vertices[0];
            let ordered = polygon_order(&vertices, &normal);
            let mut total = Rational::zero();
            for w in ordered.windows(2) {
                let c = cross(diff(&w[0], &base), diff(&w[1], &base));
                let g = component_ratio(c, normal);
                total += Rational::new(g.abs().into(), 2.into());
            }
            total
        }
    };
    Face {
        dim,
        vertices,
        covector,
        d_value: min as u64,
        lattice_volume,
    }
}

/// The vertices other than the fan base, sorted in convex-position order
/// around the base within the face plane.
fn polygon_order(vertices: &[Exponents], normal: &[i64; 3]) -> Vec<Exponents> {
    let base = vertices[0];
    let mut rest: Vec<Exponents> = vertices[1..].to_vec();
    rest.sort_by(|p, q| {
        let c = cross(diff(p, &base), diff(q, &base));
        let s = c[0] * normal[0] + c[1] * normal[1] + c[2] * normal[2];
        s.cmp(&0).reverse()
    });
    rest
}

/// g with c = g * n (c parallel to the primitive normal n).
fn component_ratio(c: [i64; 3], n: [i64; 3]) -> i64 {
    for i in 0..3 {
        if n[i] != 0 {
            debug_assert_eq!(c[i] % n[i], 0);
            return c[i] / n[i];
        }
    }
    0
}

/// Sum of the terms of f whose exponents lie on the face.
pub fn face_function(f: &Polynomial, face: &Face) -> Result<Polynomial> {
    let mut out = Polynomial::zero(f.arity());
    for (e, c) in f.terms() {
        if face.contains_point(e) {
            out.add_term(*e, c.clone());
        }
    }
    if out.is_zero() {
        return Err(Error::InvalidInput(
            "face is not incident to the polynomial".into(),
        ));
    }
    Ok(out)
}

/// True when the Newton polyhedron meets every coordinate axis, i.e. each
/// variable has a pure power in the support.
pub fn is_convenient(f: &Polynomial) -> bool {
    if f.is_zero() {
        return false;
    }
    (0..f.arity()).all(|i| axis_intercept(f, i).is_some())
}

/// Smallest pure-power exponent of variable i, when one exists.
pub fn axis_intercept(f: &Polynomial, i: usize) -> Option<u32> {
    f.terms()
        .filter(|(e, _)| (0..f.arity()).all(|j| j == i || e.get(j) == 0))
        .map(|(e, _)| e.get(i))
        .min()
}

/// Kouchnirenko Newton number in two variables: 2V - a - b + 1.
pub fn newton_number_2d(f: &Polynomial) -> Result<i64> {
    if f.arity() != 2 {
        return Err(Error::Arity {
            expected: 2,
            got: f.arity(),
        });
    }
    let a = axis_intercept(f, 0).ok_or(Error::NotConvenient { var: 0 })?;
    let b = axis_intercept(f, 1).ok_or(Error::NotConvenient { var: 1 })?;
    let v2 = area_under_boundary_doubled(f)?;
    Ok(v2 - a as i64 - b as i64 + 1)
}

/// Twice the area between the axes and the Newton boundary of a convenient
/// 2-variable polynomial.
fn area_under_boundary_doubled(f: &Polynomial) -> Result<i64> {
    let np = NewtonPolyhedron::new(f)?;
    let mut pts: Vec<(i64, i64)> = np
        .vertices()
        .iter()
        .map(|e| (e.get(0) as i64, e.get(1) as i64))
        .collect();
    pts.sort();
    // Walk the staircase from (0, b) down to (a, 0), closing through the
    // origin.
    let mut poly = vec![(0i64, 0i64)];
    poly.extend(pts.iter());
    let mut doubled = 0i64;
    for i in 0..poly.len() {
        let (x0, y0) = poly[i];
        let (x1, y1) = poly[(i + 1) % poly.len()];
        doubled += x0 * y1 - x1 * y0;
    }
    Ok(doubled.abs())
}

/// Kouchnirenko Newton number in three variables: 3! V3 - 2! V2 + V1 - 1.
pub fn newton_number_3d(f: &Polynomial) -> Result<i64> {
    if f.arity() != 3 {
        return Err(Error::Arity {
            expected: 3,
            got: f.arity(),
        });
    }
    for i in 0..3 {
        if axis_intercept(f, i).is_none() {
            return Err(Error::NotConvenient { var: i });
        }
    }
    let np = NewtonPolyhedron::new(f)?;
    // 6 V3: cones over the compact 2-faces, fan-triangulated.
    let mut six_v3 = 0i64;
    for face in np.faces_of_dim(2) {
        let base = face.vertices[0];
        let normal = [
            face.covector[0] as i64,
            face.covector[1] as i64,
            face.covector[2] as i64,
        ];
        let ordered = polygon_order(&face.vertices, &normal);
        for w in ordered.windows(2) {
            six_v3 += det3(&base, &w[0], &w[1]).abs();
        }
    }
    // 2 V2: areas under the restrictions to the coordinate planes.
    let mut two_v2 = 0i64;
    for drop_var in (0..3).rev() {
        let restricted = f.substitute_value(drop_var, &Rational::zero());
        if restricted.is_zero() {
            return Err(Error::NotConvenient { var: drop_var });
        }
        two_v2 += area_under_boundary_doubled(&restricted)?;
    }
    let v1: i64 = (0..3).map(|i| axis_intercept(f, i).unwrap() as i64).sum();
    Ok(six_v3 - two_v2 + v1 - 1)
}

fn det3(a: &Exponents, b: &Exponents, c: &Exponents) -> i64 {
    let m = [
        [a.0[0] as i64, a.0[1] as i64, a.0[2] as i64],
        [b.0[0] as i64, b.0[1] as i64, b.0[2] as i64],
        [c.0[0] as i64, c.0[1] as i64, c.0[2] as i64],
    ];
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Newton number of a possibly non-convenient polynomial, stabilized by
/// adding high pure powers of every variable and raising the exponent until
/// two consecutive values agree.
pub fn newton_number_stabilized(f: &Polynomial, n_cap: u32) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let maxcoord = f
        .support()
        .iter()
        .map(|e| (0..f.arity()).map(|i| e.get(i)).max().unwrap())
        .max()
        .unwrap();
    let start = 2 * maxcoord + 3;
    let mut prev: Option<i64> = None;
    let mut n = start;
    loop {
        let mut g = f.clone();
        for i in 0..f.arity() {
            if axis_intercept(f, i).is_none_or(|a| a > n) {
                let mut e = [0u32; 3];
                e[i] = n;
                g.add_term(Exponents(e), rat(1));
            }
        }
        let nu = newton_number(&g)?;
        if prev == Some(nu) {
            return Ok(nu);
        }
        if n > start + n_cap {
            return Err(Error::CapExceeded(format!(
                "newton number did not stabilize below exponent {n}"
            )));
        }
        prev = Some(nu);
        n += 5;
    }
}

/// Newton number by the convenient Kouchnirenko formulas, chosen by arity.
pub fn newton_number(f: &Polynomial) -> Result<i64> {
    match f.arity() {
        2 => newton_number_2d(f),
        3 => newton_number_3d(f),
        _ => Err(Error::Arity {
            expected: 2,
            got: f.arity(),
        }),
    }
}

/// Non-degeneracy of the face function of an edge: written as a monomial
/// times a univariate polynomial in the edge parameter, the latter must be
/// square-free. Its roots all lie in the torus since the endpoint
/// coefficients are nonzero.
pub fn nd_check_edge(f: &Polynomial, edge: &Face) -> Result<bool> {
    if edge.dim != 1 {
        return Err(Error::InvalidInput("face is not an edge".into()));
    }
    let ff = face_function(f, edge)?;
    let a = edge.vertices[0];
    let d = diff(&edge.vertices[1], &a);
    let mut g = 0i64;
    for c in d {
        g = g.gcd(&c);
    }
    let w = [d[0] / g, d[1] / g, d[2] / g];
    let mut coeffs = vec![Rational::zero(); g as usize + 1];
    for (e, c) in ff.terms() {
        let delta = diff(e, &a);
        let k = (0..3).find(|&i| w[i] != 0).map(|i| delta[i] / w[i]).unwrap();
        debug_assert!((0..3).all(|i| delta[i] == k * w[i]));
        coeffs[k as usize] = c.clone();
    }
    let p = UniPoly::new(coeffs);
    let gcd = p.gcd(&p.derivative());
    Ok(gcd.degree() == Some(0))
}

/// Non-degeneracy of a two-dimensional face: the face function must have no
/// critical point in the torus. Since the face function is weighted
/// homogeneous, every torus critical orbit meets the slice z = 1, so the
/// test reduces to emptiness of {G, dG/du, dG/dv} on the torus for
/// G(u, v) = f_face(u, v, 1).
pub fn nd_check_2face(f: &Polynomial, face: &Face) -> Result<bool> {
    if face.dim != 2 {
        return Err(Error::InvalidInput("face is not two-dimensional".into()));
    }
    let ff = face_function(f, face)?;
    let g = ff.substitute_value(2, &rat(1));
    if g.is_zero() {
        return Err(Error::InvalidInput(
            "face function vanished on the slice".into(),
        ));
    }
    let system = [g.clone(), g.partial_derivative(0), g.partial_derivative(1)];
    match torus_system_solve(&system) {
        Ok(summary) => Ok(summary.is_empty()),
        // A positive-dimensional torus critical set is degenerate a fortiori.
        Err(Error::PositiveDimensional) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Dispatches the non-degeneracy test by face dimension; vertex face
/// functions are monomials and always pass.
pub fn nd_check_face(f: &Polynomial, face: &Face) -> Result<bool> {
    match face.dim {
        0 => Ok(true),
        1 => nd_check_edge(f, face),
        _ => nd_check_2face(f, face),
    }
}

/// Newton non-degeneracy on every compact face.
pub fn is_newton_nondegenerate(f: &Polynomial) -> Result<bool> {
    let np = NewtonPolyhedron::new(f)?;
    for face in np.faces() {
        if !nd_check_face(f, face)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Milnor number through the rank oracle, erroring when it fails to
/// stabilize below the cap.
pub fn milnor_via_oracle(f: &Polynomial, cfg: &OracleConfig) -> Result<u64> {
    let r = crate::local::milnor_rank_oracle(f, cfg)?;
    r.colength
        .ok_or_else(|| Error::CapExceeded("oracle did not stabilize".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p2(s: &str) -> Polynomial {
        parse(s, &["x", "y"]).unwrap()
    }
    fn p3(s: &str) -> Polynomial {
        parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn polyhedron_cusp() {
        let np = NewtonPolyhedron::new(&p2("x^2 + y^3")).unwrap();
        assert_eq!(
            np.vertices(),
            &[Exponents::new(&[2, 0]), Exponents::new(&[0, 3])]
        );
        let edges: Vec<_> = np.faces_of_dim(1).collect();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].covector, vec![3, 2]);
        assert_eq!(edges[0].d_value, 6);
        assert_eq!(edges[0].lattice_volume, rat(1));
    }

    #[test]
    fn polyhedron_sphere() {
        let np = NewtonPolyhedron::new(&p3("x^2 + y^2 + z^2")).unwrap();
        let top: Vec<_> = np.faces_of_dim(2).collect();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].covector, vec![1, 1, 1]);
        assert_eq!(top[0].d_value, 2);
        assert_eq!(top[0].lattice_volume, rat(2));
        assert_eq!(np.faces_of_dim(1).count(), 3);
        assert_eq!(np.faces_of_dim(0).count(), 3);
        for e in np.faces_of_dim(1) {
            assert_eq!(e.lattice_volume, rat(2));
        }
    }

    #[test]
    fn polyhedron_without_top_face() {
        let np =
            NewtonPolyhedron::new(&parse("u^4*v*w + u^5", &["u", "v", "w"]).unwrap()).unwrap();
        assert_eq!(np.faces_of_dim(2).count(), 0);
        assert_eq!(np.faces_of_dim(1).count(), 1);
        assert_eq!(np.faces_of_dim(0).count(), 2);
        let e = np.faces_of_dim(1).next().unwrap();
        assert_eq!(e.covector, vec![2, 1, 1]);
        assert_eq!(e.d_value, 10);
    }

    #[test]
    fn face_function_examples() {
        // The face may come from shared pair data rather than f itself: the
        // operation keeps exactly the terms lying on it.
        let f = p2("x^2 + y^3 + x*y");
        let np = NewtonPolyhedron::new(&p2("x^2 + y^3")).unwrap();
        let edge = np.faces_of_dim(1).next().unwrap();
        assert_eq!(face_function(&f, edge).unwrap(), p2("x^2 + y^3"));

        let f = p3("x^2 + y^2 + z^2");
        let np = NewtonPolyhedron::new(&f).unwrap();
        let top = np.unique_top_face().unwrap();
        assert_eq!(face_function(&f, top).unwrap(), f);

        let f = p3("x^4 + y^5 + z^10");
        let np = NewtonPolyhedron::new(&f).unwrap();
        let v = np
            .faces_of_dim(0)
            .find(|fc| fc.vertices[0] == Exponents::new(&[4, 0, 0]))
            .unwrap();
        assert_eq!(face_function(&f, v).unwrap(), p3("x^4"));
    }

    #[test]
    fn convenient_examples() {
        assert!(is_convenient(&p2("x^2 + y^3")));
        assert!(!is_convenient(&p2("x^3 + x*y^3")));
        assert!(is_convenient(&p3("x^2 + y^2 + z^2")));
    }

    #[test]
    fn newton_number_2d_examples() {
        assert_eq!(newton_number_2d(&p2("x^2 + y^3")).unwrap(), 2);
        assert_eq!(newton_number_2d(&p2("x^3 + y^4")).unwrap(), 6);
        assert_eq!(newton_number_2d(&p2("x^3 + x*y + y^3")).unwrap(), 1);
        assert!(matches!(
            newton_number_2d(&p2("x^3 + x*y^3")),
            Err(Error::NotConvenient { var: 1 })
        ));
    }

    #[test]
    fn newton_number_3d_examples() {
        assert_eq!(newton_number_3d(&p3("x^2 + y^2 + z^2")).unwrap(), 1);
        assert_eq!(newton_number_3d(&p3("x^2 + y^3 + z^6")).unwrap(), 10);
        for (a, b, c) in [(2u32, 3u32, 4u32), (3, 3, 3), (2, 5, 6)] {
            let f = parse(&format!("x^{a} + y^{b} + z^{c}"), &["x", "y", "z"]).unwrap();
            assert_eq!(
                newton_number_3d(&f).unwrap(),
                ((a - 1) * (b - 1) * (c - 1)) as i64
            );
        }
    }

    #[test]
    fn stabilized_newton_number() {
        assert_eq!(newton_number_stabilized(&p2("x^3 + x*y^3"), 60).unwrap(), 7);
        assert_eq!(newton_number_stabilized(&p2("x^2 + y^3"), 60).unwrap(), 2);
    }

    #[test]
    fn nd_edge_examples() {
        let f = p2("x^2 + y^3");
        let np = NewtonPolyhedron::new(&f).unwrap();
        assert!(nd_check_edge(&f, np.faces_of_dim(1).next().unwrap()).unwrap());

        let f = p2("x^2 + 2*x*y + y^2");
        let np = NewtonPolyhedron::new(&f).unwrap();
        assert!(!nd_check_edge(&f, np.faces_of_dim(1).next().unwrap()).unwrap());

        let f = p2("x^4 + y^6");
        let np = NewtonPolyhedron::new(&f).unwrap();
        let e = np.faces_of_dim(1).next().unwrap();
        assert_eq!(e.lattice_volume, rat(2));
        assert!(nd_check_edge(&f, e).unwrap());
    }

    #[test]
    fn nd_2face_examples() {
        let f = p3("x^2 + y^2 + z^2");
        let np = NewtonPolyhedron::new(&f).unwrap();
        assert!(nd_check_2face(&f, np.unique_top_face().unwrap()).unwrap());

        let f = p3("(x + y + z)^2");
        let np = NewtonPolyhedron::new(&f).unwrap();
        assert!(!nd_check_2face(&f, np.unique_top_face().unwrap()).unwrap());

        // Two transverse conics: degenerate on the top face, non-degenerate
        // on every proper face.
        let f = p3("(x^2 + 2*y^2 - z^2)*(2*x^2 + y^2 - z^2)");
        let np = NewtonPolyhedron::new(&f).unwrap();
        let top = np.unique_top_face().unwrap();
        assert!(!nd_check_2face(&f, top).unwrap());
        for e in np.faces_of_dim(1) {
            assert!(nd_check_edge(&f, e).unwrap(), "edge {:?}", e.vertices);
        }
    }

    #[test]
    fn membership() {
        let np = NewtonPolyhedron::new(&p3("x^2 + y^3 + z^6")).unwrap();
        assert!(np.contains(&Exponents::new(&[2, 0, 0])));
        assert!(np.contains(&Exponents::new(&[1, 1, 1])));
        assert!(np.contains(&Exponents::new(&[0, 0, 7])));
        assert!(!np.contains(&Exponents::new(&[1, 0, 0])));
        assert!(!np.contains(&Exponents::new(&[0, 2, 1])));
    }

    #[test]
    fn nd_invariant_under_variable_permutation() {
        // Swap x and z in a 3-variable polynomial and check the edge and
        // face verdicts move along.
        let f = p3("x^2 + y^3 + z^6 + x*y*z");
        let g = p3("z^2 + y^3 + x^6 + x*y*z");
        for (h, other) in [(&f, &g), (&g, &f)] {
            let np = NewtonPolyhedron::new(h).unwrap();
            let np_other = NewtonPolyhedron::new(other).unwrap();
            assert_eq!(np.faces().len(), np_other.faces().len());
            let verdict: Vec<bool> = np
                .faces()
                .iter()
                .map(|fc| nd_check_face(h, fc).unwrap())
                .collect();
            let mut verdict_other: Vec<bool> = np_other
                .faces()
                .iter()
                .map(|fc| nd_check_face(other, fc).unwrap())
                .collect();
            verdict_other.sort();
            let mut v = verdict.clone();
            v.sort();
            assert_eq!(v, verdict_other);
        }
    }
}
