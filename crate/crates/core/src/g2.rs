//! The exceptional Lie algebra `g2 = V + sl3 + V^t` with `V = C^3`.
//!
//! Brackets, for `x` in `sl3` and `v, w` in `V` (columns):
//!
//! ```text
//! [x, v]   = x v              [x, w^t]   = -w^t x
//! [v, w]   = 2 (v x w)^t      [v^t, w^t] = 2 v x w
//! [v, w^t] = -3 v w^t + (w^t v) Id
//! ```
//!
//! The basis is fixed once ([`BasisElement::ALL`]) so that adjoint matrices,
//! Gram matrices and reports are deterministic.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_traits::Zero;

use crate::linalg::DenseMatrix;
use crate::roots::Weight;
use crate::scalar::Field;
use crate::Error;

pub const DIM: usize = 14;

/// The fourteen basis vectors, in matrix/report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    E1,
    E2,
    E3,
    F1,
    F2,
    F3,
    E12,
    E13,
    E21,
    E23,
    E31,
    E32,
    /// `E11 - E22`
    Ha,
    /// `E22 - E33`
    Hb,
}

use BasisElement::*;

impl BasisElement {
    pub const ALL: [BasisElement; DIM] = [
        E1, E2, E3, F1, F2, F3, E12, E13, E21, E23, E31, E32, Ha, Hb,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            E1 => "e1",
            E2 => "e2",
            E3 => "e3",
            F1 => "f1",
            F2 => "f2",
            F3 => "f3",
            E12 => "E12",
            E13 => "E13",
            E21 => "E21",
            E23 => "E23",
            E31 => "E31",
            E32 => "E32",
            Ha => "E11-E22",
            Hb => "E22-E33",
        }
    }

    /// Weight in `(alpha, beta)` coordinates, `alpha = a1`, `beta = a2 - a1`.
    ///
    /// `e_i` has weight `a_i`, `f_i` has `-a_i`, `E_ij` has `a_i - a_j`.
    pub fn weight(self) -> Weight {
        let a = |i: usize| A_COORDS[i];
        
        match self {
            E1 => a(0),
            E2 => a(1),
            E3 => a(2),
            F1 => -a(0),
            F2 => -a(1),
            F3 => -a(2),
            E12 => a(0) - a(1),
            E13 => a(0) - a(2),
            E21 => a(1) - a(0),
            E23 => a(1) - a(2),
            E31 => a(2) - a(0),
            E32 => a(2) - a(1),
            Ha | Hb => Weight::ZERO,
        }
    }

    pub fn is_cartan(self) -> bool {
        matches!(self, Ha | Hb)
    }

    /// The basis vector spanning the root space of `w`, if `w` is a root.
    pub fn for_root(w: Weight) -> Option<BasisElement> {
        if w == Weight::ZERO {
            return None;
        }
        Self::ALL.into_iter().find(|b| b.weight() == w)
    }
}

/// `a1, a2, a3` in `(alpha, beta)` coordinates. `a1 + a2 + a3 = 0`.
pub const A_COORDS: [Weight; 3] = [Weight::new(1, 0), Weight::new(1, 1), Weight::new(-2, -1)];

/// Evaluates a weight on the diagonal Cartan element `diag(h1, h2, h3)`.
pub fn weight_on_diagonal<S: Field>(w: Weight, diag: &[S; 3]) -> S {
    // alpha(h) = h1, beta(h) = h2 - h1.
    S::from_int(w.a) * diag[0].clone() + S::from_int(w.b) * (diag[1].clone() - diag[0].clone())
}

/// A vector of `g2` in the fixed basis.
#[derive(Clone, PartialEq)]
pub struct G2Element<S> {
    coeffs: [S; DIM],
}

/// Block decomposition `(v, x, w)` with `v` in `V`, `x` in `sl3` as a full
/// 3x3 matrix, and `w` the row vector of the `V^t` part.
#[derive(Clone, Debug, PartialEq)]
pub struct Parts<S> {
    pub v: [S; 3],
    pub x: [[S; 3]; 3],
    pub w: [S; 3],
}

impl<S: Field> G2Element<S> {
    pub fn zero() -> Self {
        G2Element {
            coeffs: std::array::from_fn(|_| S::zero()),
        }
    }

    pub fn basis(b: BasisElement) -> Self {
        let mut x = Self::zero();
        x.coeffs[b.index()] = S::one();
        x
    }

    pub fn from_coeffs(coeffs: [S; DIM]) -> Self {
        G2Element { coeffs }
    }

    pub fn from_slice(v: &[S]) -> Result<Self, Error> {
        if v.len() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                found: v.len(),
            });
        }
        Ok(G2Element {
            coeffs: std::array::from_fn(|i| v[i].clone()),
        })
    }

    /// Sum of `c * basis` terms.
    pub fn combination(terms: &[(i64, BasisElement)]) -> Self {
        let mut x = Self::zero();
        for &(c, b) in terms {
            x.coeffs[b.index()] = x.coeffs[b.index()].clone() + S::from_int(c);
        }
        x
    }

    /// Diagonal Cartan element `diag(d1, d2, d3)`; requires zero trace.
    pub fn cartan(diag: [S; 3]) -> Result<Self, Error> {
        let tr = diag[0].clone() + diag[1].clone() + diag[2].clone();
        if !tr.is_zero() {
            return Err(Error::StructureMismatch(format!(
                "Cartan element has trace {tr}, expected 0"
            )));
        }
        let mut x = Self::zero();
        x.coeffs[Ha.index()] = diag[0].clone();
        x.coeffs[Hb.index()] = -diag[2].clone();
        Ok(x)
    }

    pub fn coeffs(&self) -> &[S; DIM] {
        &self.coeffs
    }

    pub fn to_vec(&self) -> Vec<S> {
        self.coeffs.to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        G2Element {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() * c.clone()),
        }
    }

    pub fn parts(&self) -> Parts<S> {
        let c = &self.coeffs;
        let z = S::zero;
        let ha = c[Ha.index()].clone();
        let hb = c[Hb.index()].clone();
        Parts {
            v: [c[0].clone(), c[1].clone(), c[2].clone()],
            x: [
                [ha.clone(), c[E12.index()].clone(), c[E13.index()].clone()],
                [c[E21.index()].clone(), hb.clone() - ha, c[E23.index()].clone()],
                [c[E31.index()].clone(), c[E32.index()].clone(), z() - hb],
            ],
            w: [c[3].clone(), c[4].clone(), c[5].clone()],
        }
    }

    /// Inverse of [`G2Element::parts`]; the `sl3` block must be traceless.
    pub fn from_parts(p: &Parts<S>) -> Result<Self, Error> {
        let x = &p.x;
        let mut out = Self::cartan([x[0][0].clone(), x[1][1].clone(), x[2][2].clone()])?;
        for (i, b) in [E1, E2, E3].into_iter().enumerate() {
            out[b] = p.v[i].clone();
        }
        for (i, b) in [F1, F2, F3].into_iter().enumerate() {
            out[b] = p.w[i].clone();
        }
        out[E12] = x[0][1].clone();
        out[E13] = x[0][2].clone();
        out[E21] = x[1][0].clone();
        out[E23] = x[1][2].clone();
        out[E31] = x[2][0].clone();
        out[E32] = x[2][1].clone();
        Ok(out)
    }

    /// Diagonal of the Cartan component.
    pub fn cartan_diagonal(&self) -> [S; 3] {
        let p = self.parts();
        [p.x[0][0].clone(), p.x[1][1].clone(), p.x[2][2].clone()]
    }

    /// Projection onto the coordinates of weight `w` (the zero weight
    /// selects the Cartan part).
    pub fn weight_component(&self, w: Weight) -> Self {
        G2Element {
            coeffs: std::array::from_fn(|i| {
                if BasisElement::ALL[i].weight() == w {
                    self.coeffs[i].clone()
                } else {
                    S::zero()
                }
            }),
        }
    }

    pub fn support(&self) -> Vec<BasisElement> {
        BasisElement::ALL
            .into_iter()
            .filter(|b| !self.coeffs[b.index()].is_zero())
            .collect()
    }
}

/// Every weight of the adjoint representation, zero last.
pub fn adjoint_weights() -> Vec<Weight> {
    let mut ws: Vec<Weight> = Vec::new();
    for b in BasisElement::ALL {
        if !ws.contains(&b.weight()) {
            ws.push(b.weight());
        }
    }
    ws
}

fn cross<S: Field>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    let m = |i: usize, j: usize| a[i].clone() * b[j].clone();
    [m(1, 2) - m(2, 1), m(2, 0) - m(0, 2), m(0, 1) - m(1, 0)]
}

fn mat_mul<S: Field>(a: &[[S; 3]; 3], b: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

/// `[v, w^t] = -3 v w^t + (w^t v) Id`.
fn column_row_bracket<S: Field>(v: &[S; 3], w: &[S; 3]) -> [[S; 3]; 3] {
    let pairing = (0..3).fold(S::zero(), |acc, k| acc + v[k].clone() * w[k].clone());
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let outer = S::from_int(-3) * v[i].clone() * w[j].clone();
            if i == j {
                outer + pairing.clone()
            } else {
                outer
            }
        })
    })
}

/// Lie bracket of `g2`.
pub fn bracket<S: Field>(x: &G2Element<S>, y: &G2Element<S>) -> G2Element<S> {
    let p = x.parts();
    let q = y.parts();
    let two = S::from_int(2);

    let xy = mat_mul(&p.x, &q.x);
    let yx = mat_mul(&q.x, &p.x);
    let vw_pq = column_row_bracket(&p.v, &q.w);
    let vw_qp = column_row_bracket(&q.v, &p.w);
    let x = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            xy[i][j].clone() - yx[i][j].clone() + vw_pq[i][j].clone() - vw_qp[i][j].clone()
        })
    });

    let cw = cross(&p.w, &q.w);
    let v = std::array::from_fn(|i| {
        let act = (0..3).fold(S::zero(), |acc, k| {
            acc + p.x[i][k].clone() * q.v[k].clone() - q.x[i][k].clone() * p.v[k].clone()
        });
        act + two.clone() * cw[i].clone()
    });

    let cv = cross(&p.v, &q.v);
    let w = std::array::from_fn(|j| {
        let act = (0..3).fold(S::zero(), |acc, k| {
            acc + p.w[k].clone() * q.x[k][j].clone() - q.w[k].clone() * p.x[k][j].clone()
        });
        act + two.clone() * cv[j].clone()
    });

    G2Element::from_parts(&Parts { v, x, w }).expect("brackets land in sl3")
}

/// Matrix of `y -> [x, y]` in the fixed basis.
pub fn ad_matrix<S: Field>(x: &G2Element<S>) -> DenseMatrix<S> {
    let columns: Vec<G2Element<S>> = BasisElement::ALL
        .iter()
        .map(|&b| bracket(x, &G2Element::basis(b)))
        .collect();
    DenseMatrix::from_fn(DIM, DIM, |i, j| columns[j].coeffs[i].clone())
}

/// `trace(ad x . ad y)`.
pub fn killing<S: Field>(x: &G2Element<S>, y: &G2Element<S>) -> S {
    trace_of_product(&ad_matrix(x), &ad_matrix(y))
}

fn trace_of_product<S: Field>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> S {
    let n = a.rows();
    let mut acc = S::zero();
    for i in 0..n {
        for k in 0..n {
            let l = &a[(i, k)];
            let r = &b[(k, i)];
            if !l.is_zero() && !r.is_zero() {
                acc = acc + l.clone() * r.clone();
            }
        }
    }
    acc
}

/// Gram matrix of the Killing form, computed once from adjoint traces.
#[derive(Clone, Debug)]
pub struct KillingForm<S: Field> {
    gram: DenseMatrix<S>,
}

impl<S: Field> KillingForm<S> {
    pub fn new() -> Self {
        let ads: Vec<DenseMatrix<S>> = BasisElement::ALL
            .iter()
            .map(|&b| ad_matrix(&G2Element::basis(b)))
            .collect();
        let gram = DenseMatrix::from_fn(DIM, DIM, |i, j| trace_of_product(&ads[i], &ads[j]));
        KillingForm { gram }
    }

    pub fn gram(&self) -> &DenseMatrix<S> {
        &self.gram
    }

    pub fn pair(&self, x: &G2Element<S>, y: &G2Element<S>) -> S {
        let gy = self.gram.mul_vec(&y.coeffs);
        crate::linalg::dot(&x.coeffs, &gy)
    }

    /// Row vector `z -> (x, z)`.
    pub fn covector(&self, x: &G2Element<S>) -> Vec<S> {
        self.gram.transpose().mul_vec(&x.coeffs)
    }
}

impl<S: Field> Default for KillingForm<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// The closed formula `6 sum a_i b_i - 2 sum_{i != j} a_i b_j` for the
/// Killing form on diagonal Cartan elements.
pub fn cartan_killing_formula<S: Field>(a: &[S; 3], b: &[S; 3]) -> S {
    let mut acc = S::zero();
    for i in 0..3 {
        for j in 0..3 {
            let c = if i == j { 6 } else { -2 };
            acc = acc + S::from_int(c) * a[i].clone() * b[j].clone();
        }
    }
    acc
}

/// The Cartan element `H_w` with `(H_w, h) = w(h)` for all Cartan `h`.
pub fn cartan_dual<S: Field>(kf: &KillingForm<S>, w: Weight) -> G2Element<S> {
    let ha = G2Element::basis(Ha);
    let hb = G2Element::basis(Hb);
    let gram = DenseMatrix::from_fn(2, 2, |i, j| {
        let x = if i == 0 { &ha } else { &hb };
        let y = if j == 0 { &ha } else { &hb };
        kf.pair(x, y)
    });
    let rhs = [
        weight_on_diagonal(w, &ha.cartan_diagonal()),
        weight_on_diagonal(w, &hb.cartan_diagonal()),
    ];
    let c = gram
        .solve(&rhs)
        .expect("2x2 system")
        .expect("Killing form is nondegenerate on the Cartan");
    &ha.scale(&c[0]) + &hb.scale(&c[1])
}

/// `||w||^2` for the form induced on weights by the Killing form.
pub fn weight_norm<S: Field>(kf: &KillingForm<S>, w: Weight) -> S {
    let h = cartan_dual(kf, w);
    kf.pair(&h, &h)
}

/// `exp(t ad x) = sum_k t^k / k! (ad x)^k` for nilpotent `ad x`.
pub fn exp_ad_nilpotent<S: Field>(x: &G2Element<S>, t: &S) -> Result<DenseMatrix<S>, Error> {
    let n = ad_matrix(x);
    if n.nilpotency_index().is_none() {
        return Err(Error::NonNilpotent(format!("{x}")));
    }
    let mut out = DenseMatrix::identity(DIM);
    let mut term = DenseMatrix::identity(DIM);
    for k in 1..=DIM {
        term = (&term * &n).scale(&(t.clone() / S::from_int(k as i64)));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// The functional `x -> (rep, x)`.
#[derive(Clone, Debug)]
pub struct LinearFunctional<S: Field> {
    representing: G2Element<S>,
    form: KillingForm<S>,
}

impl<S: Field> LinearFunctional<S> {
    pub fn new(representing: G2Element<S>, form: KillingForm<S>) -> Self {
        LinearFunctional { representing, form }
    }

    pub fn representing(&self) -> &G2Element<S> {
        &self.representing
    }

    pub fn eval(&self, x: &G2Element<S>) -> S {
        self.form.pair(&self.representing, x)
    }
}

/// Plain-text dump of all fourteen adjoint matrices.
pub fn adjoint_table<S: Field>() -> String {
    let mut out = String::new();
    let header: Vec<&str> = BasisElement::ALL.iter().map(|b| b.name()).collect();
    out.push_str(&format!("# basis order: {}\n", header.join(" ")));
    for b in BasisElement::ALL {
        out.push_str(&format!("\nad({})\n", b.name()));
        out.push_str(&ad_matrix(&G2Element::<S>::basis(b)).to_string());
    }
    out
}

impl serde::Serialize for BasisElement {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        s.serialize_str(self.name())
    }
}

impl<S> Index<BasisElement> for G2Element<S> {
    type Output = S;
    fn index(&self, b: BasisElement) -> &S {
        &self.coeffs[b as usize]
    }
}

impl<S> IndexMut<BasisElement> for G2Element<S> {
    fn index_mut(&mut self, b: BasisElement) -> &mut S {
        &mut self.coeffs[b as usize]
    }
}

impl<S: Field> Add for &G2Element<S> {
    type Output = G2Element<S>;
    fn add(self, rhs: &G2Element<S>) -> G2Element<S> {
        G2Element {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()),
        }
    }
}

impl<S: Field> Sub for &G2Element<S> {
    type Output = G2Element<S>;
    fn sub(self, rhs: &G2Element<S>) -> G2Element<S> {
        G2Element {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()),
        }
    }
}

impl<S: Field> Neg for &G2Element<S> {
    type Output = G2Element<S>;
    fn neg(self) -> G2Element<S> {
        G2Element {
            coeffs: std::array::from_fn(|i| -self.coeffs[i].clone()),
        }
    }
}

impl<S: Field> fmt::Display for G2Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = BasisElement::ALL
            .iter()
            .filter(|b| !self[**b].is_zero())
            .map(|b| format!("{}*{}", self[*b], b.name()))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<S: Field> fmt::Debug for G2Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G2Element({self})")
    }
}
