use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::groebner::IdealBasis;
use crate::exactalg::order::MonomialOrder;
use crate::exactalg::poly::MultiPoly;

/// A compact edge of the Newton polygon: the line `u·i + v·j = d` with
/// weight `u` on the `x`-exponent `i` and `v` on the `y`-exponent `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub u: u32,
    pub v: u32,
    pub d: u32,
    /// Endpoints `(i, j)`: upper-left first.
    pub start: (u32, u32),
    pub end: (u32, u32),
}

impl Face {
    pub fn value(&self, i: u32, j: u32) -> u32 {
        self.u * i + self.v * j
    }

    /// Number of lattice segments on the edge.
    pub fn length(&self) -> u32 {
        (self.end.0 - self.start.0) / self.v
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {})", self.u, self.v, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDiagram {
    /// Support points `(i, j)` for monomials `x^i y^j`, sorted.
    pub support: Vec<(u32, u32)>,
    /// Boundary vertices from the `y`-axis side to the `x`-axis side.
    pub vertices: Vec<(u32, u32)>,
    /// Compact faces ordered from the `y`-axis side (decreasing slope steepness).
    pub faces: Vec<Face>,
}

impl NewtonDiagram {
    /// `(i, j)` lies on or above every face line.
    pub fn on_or_above(&self, i: u32, j: u32) -> bool {
        self.faces.iter().all(|f| f.value(i, j) >= f.d)
    }

    /// Whether the diagram meets both coordinate axes.
    pub fn is_convenient(&self) -> bool {
        self.vertices.first().is_some_and(|v| v.0 == 0) && self.vertices.last().is_some_and(|v| v.1 == 0)
    }

    /// ASCII picture, `y` exponent up, `x` exponent right.
    pub fn ascii(&self) -> String {
        let imax = self.support.iter().map(|p| p.0).max().unwrap_or(0);
        let jmax = self.support.iter().map(|p| p.1).max().unwrap_or(0);
        let mut out = String::new();
        for j in (0..=jmax).rev() {
            out.push_str(&format!("{j:>3} "));
            for i in 0..=imax {
                let c = if self.vertices.contains(&(i, j)) {
                    '@'
                } else if self.support.contains(&(i, j)) {
                    'o'
                } else if self.faces.iter().any(|f| f.value(i, j) == f.d && i >= f.start.0 && i <= f.end.0) {
                    '+'
                } else {
                    '.'
                };
                out.push(c);
            }
            out.push('\n');
        }
        out
    }
}

fn xy(f: &MultiPoly) -> Result<MultiPoly> {
    f.with_vars(&["x", "y"])
        .map_err(|_| Error::pre(format!("expected a polynomial in x, y; got variables {:?}", f.support_vars())))
}

/// Newton diagram of `f ∈ ℚ[x, y]` with `f(0,0) = 0`.
pub fn newton_diagram(f: &MultiPoly) -> Result<NewtonDiagram> {
    let f = xy(f)?;
    if f.is_zero() {
        return Err(Error::pre("newton_diagram of the zero polynomial"));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::pre("f is a unit at the origin"));
    }
    let mut support: Vec<(u32, u32)> = f.terms().map(|(m, _)| (m[0], m[1])).collect();
    support.sort();
    let imin = support.iter().map(|p| p.0).min().unwrap();
    let start = support.iter().filter(|p| p.0 == imin).min_by_key(|p| p.1).copied().unwrap();
    let jmin = support.iter().map(|p| p.1).min().unwrap();
    let end = support.iter().filter(|p| p.1 == jmin).min_by_key(|p| p.0).copied().unwrap();
    let mut vertices = vec![start];
    let mut faces = Vec::new();
    let mut cur = start;
    while cur != end {
        // next vertex: steepest descent, farthest on ties
        let mut best: Option<(u32, u32)> = None;
        for &q in &support {
            if q.0 <= cur.0 || q.1 >= cur.1 {
                continue;
            }
            best = Some(match best {
                None => q,
                Some(b) => {
                    // compare (cur.1 - q.1)/(q.0 - cur.0) against b
                    let lhs = (cur.1 - q.1) as u64 * (b.0 - cur.0) as u64;
                    let rhs = (cur.1 - b.1) as u64 * (q.0 - cur.0) as u64;
                    if lhs > rhs || (lhs == rhs && q.0 > b.0) {
                        q
                    } else {
                        b
                    }
                }
            });
        }
        let q = best.expect("end vertex is reachable");
        let di = q.0 - cur.0;
        let dj = cur.1 - q.1;
        let g = di.gcd(&dj);
        let (u, v) = (dj / g, di / g);
        faces.push(Face { u, v, d: u * cur.0 + v * cur.1, start: cur, end: q });
        vertices.push(q);
        cur = q;
    }
    Ok(NewtonDiagram { support, vertices, faces })
}

/// The part of `f` on the face line.
pub fn face_polynomial(f: &MultiPoly, face: &Face) -> MultiPoly {
    MultiPoly::from_terms(
        f.vars(),
        f.terms().filter(|(m, _)| face.value(m[0], m[1]) == face.d).map(|(m, c)| (m.clone(), c.clone())),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Semiquasihomogeneous: one face meeting both axes, isolated singularity.
    Sqh(Face),
    /// Newton non-degenerate with several faces.
    Nnd,
    Degenerate {
        face: Face,
        reason: String,
    },
}

impl Classification {
    pub fn is_nnd(&self) -> bool {
        !matches!(self, Classification::Degenerate { .. })
    }

    pub fn label(&self) -> String {
        match self {
            Classification::Sqh(f) => format!("SQH{f}"),
            Classification::Nnd => "NND".into(),
            Classification::Degenerate { .. } => "degenerate".into(),
        }
    }
}

/// A face polynomial is nondegenerate when its partials have no common zero
/// on the torus: `⟨∂_x g, ∂_y g, 1 − z·x·y⟩` is the unit ideal.
pub fn face_is_nondegenerate(g: &MultiPoly) -> bool {
    let vars = ["x", "y", "z"];
    let g = g.with_vars(&vars).unwrap();
    let xyz = MultiPoly::monomial(&vars, &[1, 1, 1], num_traits::One::one());
    let gens = vec![g.derivative("x"), g.derivative("y"), &MultiPoly::one(&vars) - &xyz];
    let gens: Vec<MultiPoly> = gens.into_iter().filter(|p| !p.is_zero()).collect();
    IdealBasis::new(&vars, gens, MonomialOrder::DegRevLex).map(|b| b.is_unit_ideal()).unwrap_or(false)
}

/// SQH / NND / degenerate classification of a plane curve germ.
pub fn classify(f: &MultiPoly) -> Result<Classification> {
    let f = xy(f)?;
    let nd = newton_diagram(&f)?;
    if f.terms().all(|(m, _)| m[0] >= 1) {
        return Err(Error::pre("x divides f; Newton non-degeneracy needs x, y not dividing f"));
    }
    if f.terms().all(|(m, _)| m[1] >= 1) {
        return Err(Error::pre("y divides f; Newton non-degeneracy needs x, y not dividing f"));
    }
    for face in &nd.faces {
        let g = face_polynomial(&f, face);
        if !face_is_nondegenerate(&g) {
            return Ok(Classification::Degenerate {
                face: *face,
                reason: format!("face polynomial {} is singular on the torus", g.to_text()),
            });
        }
    }
    Ok(if nd.faces.len() == 1 { Classification::Sqh(nd.faces[0]) } else { Classification::Nnd })
}
