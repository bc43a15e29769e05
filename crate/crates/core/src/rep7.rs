//! The seven-dimensional representation, its invariant form, the symplectic
//! space `C^7 (x) C^2` with the Borel action, and the linear-side orbit
//! count (characteristic zero via orbit dimensions, plus a brute-force
//! finite-field oracle).
//!
//! Basis of `C^7`, in order: `v, w, t~, v~, w~, t, u`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::g2::{bracket, weight_on_diagonal, BasisElement, DIM};
use crate::linalg::{dot, DenseMatrix};
use crate::roots::{Weight, ALPHA, BETA};
use crate::scalar::{fmt_rat, int, is_prime, rat, Field, Fp};
use crate::{Element, Error, Matrix, Result, Q};

use BasisElement::*;

pub const N: usize = 7;

pub const LABELS: [&str; N] = ["v", "w", "t~", "v~", "w~", "t", "u"];

const V: usize = 0;
const W: usize = 1;
const TT: usize = 2;
const VT: usize = 3;
const WT: usize = 4;
const T: usize = 5;
const U: usize = 6;

/// Weights `-a3, a2, -a1, a3, -a2, a1, 0` in `(alpha, beta)` coordinates.
pub const WEIGHTS: [Weight; N] = [
    Weight::new(2, 1),
    Weight::new(1, 1),
    Weight::new(-1, 0),
    Weight::new(-2, -1),
    Weight::new(-1, -1),
    Weight::new(1, 0),
    Weight::new(0, 0),
];

/// Positive roots of the linear-side Borel, with `v` highest.
pub const BOREL_ROOT_VECTORS: [BasisElement; 6] = [E1, E2, F3, E12, E13, E23];

/// The eight basis vectors of the linear-side Borel subalgebra of `g2`.
pub const BOREL: [BasisElement; 8] = [E1, E2, F3, E12, E13, E23, Ha, Hb];

/// `(source, target, coefficient)`: the basis vector `source` goes to
/// `coefficient * target`.
type Action = [(usize, usize, i64)];

const F1_ACTION: &Action = &[(V, W, 1), (U, TT, 2), (T, U, 1), (WT, VT, -1)];
const F3_ACTION: &Action = &[(TT, W, 1), (WT, T, -1), (VT, U, -1), (U, V, -2)];
/// Weight-compatible transitions of `f2`, coefficients unknown.
const F2_TRANSITIONS: [(usize, usize); 4] = [(V, T), (W, U), (TT, VT), (U, WT)];

fn action_matrix(a: &Action) -> Matrix {
    let mut m = Matrix::zeros(N, N);
    for &(src, dst, c) in a {
        m[(dst, src)] = int(c);
    }
    m
}

fn transition(src: usize, dst: usize) -> Matrix {
    let mut m = Matrix::zeros(N, N);
    m[(dst, src)] = Q::one();
    m
}

fn half(m: &Matrix) -> Matrix {
    m.scale(&rat(1, 2))
}

/// Diagonal action of the Cartan element `diag(d1, d2, d3)`.
pub fn cartan_action(diag: &[Q; 3]) -> Matrix {
    Matrix::from_fn(N, N, |i, j| {
        if i == j {
            weight_on_diagonal(WEIGHTS[i], diag)
        } else {
            Q::zero()
        }
    })
}

/// How each basis element is generated from `f1, f2, f3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generation {
    /// One of `f1, f2, f3`.
    Generator,
    /// `e_k = 1/2 [f_i, f_j]` for cyclic `(i, j, k)`.
    HalfBracket(BasisElement, BasisElement),
    /// `E_ij = -1/3 [e_i, f_j]`.
    ThirdBracket(BasisElement, BasisElement),
    /// `-1/3 ([e_i, f_i] - [e_j, f_j])`.
    CartanDifference(usize, usize),
}

fn e_of(i: usize) -> BasisElement {
    [E1, E2, E3][i]
}

fn f_of(i: usize) -> BasisElement {
    [F1, F2, F3][i]
}

pub fn generation_table() -> [(BasisElement, Generation); DIM] {
    use Generation::*;
    [
        (F1, Generator),
        (F2, Generator),
        (F3, Generator),
        (E1, HalfBracket(F2, F3)),
        (E2, HalfBracket(F3, F1)),
        (E3, HalfBracket(F1, F2)),
        (E12, ThirdBracket(E1, F2)),
        (E13, ThirdBracket(E1, F3)),
        (E21, ThirdBracket(E2, F1)),
        (E23, ThirdBracket(E2, F3)),
        (E31, ThirdBracket(E3, F1)),
        (E32, ThirdBracket(E3, F2)),
        (Ha, CartanDifference(0, 1)),
        (Hb, CartanDifference(1, 2)),
    ]
}

/// Evaluates a generation rule with any bracket, so the same table can be
/// checked inside `g2` and applied to matrices.
fn generate<X: Clone>(
    rule: Generation,
    target: BasisElement,
    known: &BTreeMap<BasisElement, X>,
    br: &impl Fn(&X, &X) -> X,
    scale: &impl Fn(&X, Q) -> X,
    sub: &impl Fn(&X, &X) -> X,
) -> X {
    match rule {
        Generation::Generator => known[&target].clone(),
        Generation::HalfBracket(a, b) => scale(&br(&known[&a], &known[&b]), rat(1, 2)),
        Generation::ThirdBracket(a, b) => scale(&br(&known[&a], &known[&b]), rat(-1, 3)),
        Generation::CartanDifference(i, j) => {
            let x = br(&known[&e_of(i)], &known[&f_of(i)]);
            let y = br(&known[&e_of(j)], &known[&f_of(j)]);
            scale(&sub(&x, &y), rat(-1, 3))
        }
    }
}

/// Runs the generation table inside `g2` and returns the basis elements it
/// fails to reproduce.
pub fn generation_table_mismatches() -> Vec<BasisElement> {
    let mut known: BTreeMap<BasisElement, Element> = BTreeMap::new();
    let mut bad = Vec::new();
    for (b, rule) in generation_table() {
        let x = generate(
            rule,
            b,
            &known_or_basis(&known, b),
            &|x: &Element, y: &Element| bracket(x, y),
            &|x: &Element, c: Q| x.scale(&c),
            &|x: &Element, y: &Element| x - y,
        );
        if x != Element::basis(b) {
            bad.push(b);
        }
        known.insert(b, x);
    }
    bad
}

fn known_or_basis(
    known: &BTreeMap<BasisElement, Element>,
    b: BasisElement,
) -> BTreeMap<BasisElement, Element> {
    let mut k = known.clone();
    k.entry(b).or_insert_with(|| Element::basis(b));
    k
}

/// Fourteen `7 x 7` matrices, indexed by [`BasisElement::index`].
#[derive(Clone, Debug)]
pub struct Rep7 {
    matrices: Vec<Matrix>,
    /// Solved coefficients of `f2` on `v->t, w->u, t~->v~, u->w~`.
    pub f2_coefficients: [Q; 4],
}

impl Rep7 {
    pub fn rho(&self, b: BasisElement) -> &Matrix {
        &self.matrices[b.index()]
    }

    /// `rho` extended linearly.
    pub fn act(&self, x: &Element) -> Matrix {
        BasisElement::ALL
            .iter()
            .filter(|b| !x[**b].is_zero())
            .fold(Matrix::zeros(N, N), |acc, b| &acc + &self.rho(*b).scale(&x[*b]))
    }

    /// Basis pairs `(x, y)` with `rho([x, y]) != [rho x, rho y]`.
    pub fn homomorphism_failures(&self) -> Vec<(BasisElement, BasisElement)> {
        let mut bad = Vec::new();
        for (i, &x) in BasisElement::ALL.iter().enumerate() {
            for &y in &BasisElement::ALL[i + 1..] {
                let lhs = self.act(&bracket(&Element::basis(x), &Element::basis(y)));
                if lhs != self.rho(x).commutator(self.rho(y)) {
                    bad.push((x, y));
                }
            }
        }
        bad
    }

    /// Basis elements whose matrix moves a weight line anywhere other than
    /// the line shifted by its root.
    pub fn weight_incompatible(&self) -> Vec<BasisElement> {
        BasisElement::ALL
            .into_iter()
            .filter(|&b| {
                let m = self.rho(b);
                (0..N).any(|dst| {
                    (0..N).any(|src| {
                        !m[(dst, src)].is_zero() && WEIGHTS[dst] != WEIGHTS[src] + b.weight()
                    })
                })
            })
            .collect()
    }

    /// Dimension of the joint kernel of the Cartan matrices.
    pub fn zero_weight_dimension(&self) -> usize {
        let ha = self.rho(Ha);
        let hb = self.rho(Hb);
        let stacked = Matrix::from_fn(2 * N, N, |i, j| {
            if i < N {
                ha[(i, j)].clone()
            } else {
                hb[(i - N, j)].clone()
            }
        });
        stacked.kernel_basis().len()
    }

    /// Plain-text table of all fourteen matrices.
    pub fn dump(&self) -> String {
        let mut out = format!("# basis of C^7: {}\n", LABELS.join(" "));
        for b in BasisElement::ALL {
            out.push_str(&format!("\nrho({})\n{}", b.name(), self.rho(b)));
        }
        out
    }
}

/// `M0 + sum x_k M_k`.
#[derive(Clone, Debug)]
struct Affine {
    constant: Matrix,
    linear: Vec<Matrix>,
}

impl Affine {
    fn constant(m: Matrix, unknowns: usize) -> Self {
        Affine {
            constant: m,
            linear: vec![Matrix::zeros(N, N); unknowns],
        }
    }

    /// Product with a constant matrix on either side.
    fn bracket_const(&self, c: &Matrix, const_on_right: bool) -> Affine {
        let br = |m: &Matrix| {
            if const_on_right {
                m.commutator(c)
            } else {
                c.commutator(m)
            }
        };
        Affine {
            constant: br(&self.constant),
            linear: self.linear.iter().map(br).collect(),
        }
    }

    fn scale(&self, q: &Q) -> Affine {
        Affine {
            constant: self.constant.scale(q),
            linear: self.linear.iter().map(|m| m.scale(q)).collect(),
        }
    }

    fn sub_const(&self, c: &Matrix) -> Affine {
        Affine {
            constant: &self.constant - c,
            linear: self.linear.clone(),
        }
    }

    /// Rows `(A | -b)` of the entrywise equations `self = 0`.
    fn equations(&self) -> Vec<(Vec<Q>, Q)> {
        (0..N * N)
            .map(|k| {
                let (i, j) = (k / N, k % N);
                let row = self.linear.iter().map(|m| m[(i, j)].clone()).collect();
                (row, -self.constant[(i, j)].clone())
            })
            .filter(|(row, rhs): &(Vec<Q>, Q)| !rhs.is_zero() || row.iter().any(|c| !c.is_zero()))
            .collect()
    }
}

/// Solves for `rho(f2)` and generates the remaining matrices.
///
/// With `f2` unknown, `e1 = 1/2 [f2, f3]`, `e3 = 1/2 [f1, f2]` are affine in
/// the unknowns and `e2 = 1/2 [f3, f1]` is known, so each relation
/// `[e_i, f_i] = -3 E_ii + Id` is affine as well.
pub fn build_rep7() -> Result<Rep7> {
    let f1 = action_matrix(F1_ACTION);
    let f3 = action_matrix(F3_ACTION);
    let k = F2_TRANSITIONS.len();
    let f2 = Affine {
        constant: Matrix::zeros(N, N),
        linear: F2_TRANSITIONS.iter().map(|&(s, d)| transition(s, d)).collect(),
    };
    let e1 = f2.bracket_const(&f3, true).scale(&rat(1, 2));
    let e3 = f2.bracket_const(&f1, false).scale(&rat(1, 2));
    let e2 = half(&f3.commutator(&f1));

    let cartan = |i: usize| {
        let mut d = [Q::one(), Q::one(), Q::one()];
        d[i] = int(-2);
        cartan_action(&d)
    };
    let constraints = [
        e1.bracket_const(&f1, true).sub_const(&cartan(0)),
        f2.bracket_const(&e2, false).sub_const(&cartan(1)),
        e3.bracket_const(&f3, true).sub_const(&cartan(2)),
        Affine::constant(Matrix::zeros(N, N), k),
    ];
    let eqs: Vec<(Vec<Q>, Q)> = constraints.iter().flat_map(Affine::equations).collect();
    let a = Matrix::from_rows(&eqs.iter().map(|(r, _)| r.clone()).collect::<Vec<_>>())?;
    let b: Vec<Q> = eqs.iter().map(|(_, c)| c.clone()).collect();
    let Some(x) = a.solve(&b)? else {
        return Err(Error::NoSolution(format!("{} equations in {k} unknowns", eqs.len())));
    };
    let family = a.kernel_basis().len();
    if family > 0 {
        return Err(Error::AmbiguousSolution(family));
    }

    let f2m = F2_TRANSITIONS
        .iter()
        .zip(&x)
        .fold(Matrix::zeros(N, N), |acc, (&(s, d), c)| &acc + &transition(s, d).scale(c));

    let mut known: BTreeMap<BasisElement, Matrix> = BTreeMap::new();
    known.insert(F1, f1);
    known.insert(F2, f2m);
    known.insert(F3, f3);
    for (b, rule) in generation_table() {
        let m = generate(
            rule,
            b,
            &known,
            &|x: &Matrix, y: &Matrix| x.commutator(y),
            &|x: &Matrix, c: Q| x.scale(&c),
            &|x: &Matrix, y: &Matrix| x - y,
        );
        known.insert(b, m);
    }
    let matrices = BasisElement::ALL.iter().map(|b| known[b].clone()).collect();
    Ok(Rep7 {
        matrices,
        f2_coefficients: std::array::from_fn(|i| x[i].clone()),
    })
}

/// Symmetric bilinear form on `C^7`.
#[derive(Clone, Debug)]
pub struct InvariantForm {
    pub gram: Matrix,
}

impl InvariantForm {
    /// Polarization of `q = u^2 - 4 v v~ - 4 w w~ - 4 t t~` read as a form on
    /// the same basis: `B(v, v~) = -2`, `B(u, u) = 1`.
    pub fn quadric_polarization() -> Self {
        let mut g = Matrix::zeros(N, N);
        for (a, b) in [(V, VT), (W, WT), (T, TT)] {
            g[(a, b)] = int(-2);
            g[(b, a)] = int(-2);
        }
        g[(U, U)] = int(1);
        InvariantForm { gram: g }
    }

    /// The invariant form on `C^7`.
    ///
    /// `q` is a symmetric tensor, i.e. a form on the dual space, so the form
    /// on `C^7` itself is the inverse Gram matrix, rescaled to integers:
    /// `B(v, v~) = B(w, w~) = B(t, t~) = -2`, `B(u, u) = 4`.
    pub fn standard() -> Self {
        let q = Self::quadric_polarization().gram;
        let cols: Vec<Vec<Q>> = (0..N)
            .map(|j| {
                let e: Vec<Q> = (0..N).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
                q.solve(&e).expect("square").expect("invertible")
            })
            .collect();
        let inv = Matrix::from_columns(N, &cols).expect("square");
        InvariantForm {
            gram: inv.scale(&int(4)),
        }
    }

    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, &self.gram.mul_vec(y))
    }

    /// Generators `x` with `rho(x)^T B + B rho(x) != 0`.
    pub fn invariance_failures(&self, rep: &Rep7) -> Vec<BasisElement> {
        BasisElement::ALL
            .into_iter()
            .filter(|&b| !invariance_defect(&self.gram, rep.rho(b)).is_zero())
            .collect()
    }
}

/// `A^T B + B A`.
pub fn invariance_defect(b: &Matrix, a: &Matrix) -> Matrix {
    &(&a.transpose() * b) + &(b * a)
}

fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    let n = a.rows();
    Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)].clone(),
        (true, false) => b[(i, j - n)].clone(),
        (false, true) => c[(i - n, j)].clone(),
        (false, false) => d[(i - n, j - n)].clone(),
    })
}

/// `C^7 (x) C^2` with basis `x_i (x) e1` (indices `0..7`, the Lagrangian
/// `L`) followed by `x_i (x) e2` (indices `7..14`, the Lagrangian `L'`).
#[derive(Clone, Debug)]
pub struct Symplectic14 {
    pub form: InvariantForm,
    pub omega: Matrix,
    /// Eight `g2` Borel generators then `E11 - E22`, `E12` of `sl2`.
    pub borel: Vec<(String, Matrix)>,
}

impl Symplectic14 {
    pub fn new(rep: &Rep7, form: InvariantForm) -> Self {
        let z = Matrix::zeros(N, N);
        let id = Matrix::identity(N);
        let b = &form.gram;
        let omega = block(&z, b, &-b, &z);
        let mut borel: Vec<(String, Matrix)> = BOREL
            .iter()
            .map(|&x| (x.name().to_string(), block(rep.rho(x), &z, &z, rep.rho(x))))
            .collect();
        borel.push(("sl2:E11-E22".into(), block(&id, &z, &z, &-&id)));
        borel.push(("sl2:E12".into(), block(&z, &id, &z, &z)));
        Symplectic14 { form, omega, borel }
    }

    pub fn omega(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, &self.omega.mul_vec(y))
    }

    /// Borel generators that fail `A^T omega + omega A = 0`.
    pub fn non_symplectic_generators(&self) -> Vec<String> {
        self.borel
            .iter()
            .filter(|(_, a)| !invariance_defect(&self.omega, a).is_zero())
            .map(|(n, _)| n.clone())
            .collect()
    }

    /// `H_A(x) = 1/2 omega(x, A x)`.
    pub fn hamiltonian(&self, a: &Matrix, x: &[Q]) -> Q {
        self.omega(x, &a.mul_vec(x)) * rat(1, 2)
    }

    pub fn moment_zero_check(&self, point: &[Q]) -> bool {
        self.borel
            .iter()
            .all(|(_, a)| self.hamiltonian(a, point).is_zero())
    }

    /// Conditions (i) `B(z', z') = 0`, (ii) `B(z, z') = 0`,
    /// (iii) `B(A z, z') = B(z, A z')` for the `g2` Borel.
    pub fn conormal_conditions(&self, rep: &Rep7, zprime: &[Q], z: &[Q]) -> bool {
        let b = &self.form;
        b.pair(zprime, zprime).is_zero()
            && b.pair(z, zprime).is_zero()
            && BOREL.iter().all(|&x| {
                let a = rep.rho(x);
                b.pair(&a.mul_vec(z), zprime) == b.pair(z, &a.mul_vec(zprime))
            })
    }
}

/// `z (x) e1 + z' (x) e2`.
pub fn tensor_point(zprime: &[Q], z: &[Q]) -> Vec<Q> {
    z.iter().chain(zprime).cloned().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiCheck {
    pub pairs: usize,
    pub form_failures: Vec<(usize, usize)>,
    pub non_equivariant: Vec<String>,
    /// `omega(v (x) e2, v~ (x) e1)` as evaluated on both sides.
    pub sample_value: String,
}

impl PhiCheck {
    pub fn holds(&self) -> bool {
        self.form_failures.is_empty() && self.non_equivariant.is_empty()
    }
}

/// Compares `omega` on `L' + L` with
/// `Omega(([y1], x1), ([y2], x2)) = omega(x1, y2) - omega(x2, y1)` on `T*V`,
/// and checks that the `g2` Borel preserves both Lagrangians.
pub fn phi_symplectomorphism_check(sp: &Symplectic14) -> PhiCheck {
    let n = 2 * N;
    let unit = |i: usize| -> Vec<Q> { (0..n).map(|k| if k == i { Q::one() } else { Q::zero() }).collect() };
    // L component (x) and L' component (y) of a vector.
    let split = |p: &[Q]| -> (Vec<Q>, Vec<Q>) {
        let x = (0..n).map(|k| if k < N { p[k].clone() } else { Q::zero() }).collect();
        let y = (0..n).map(|k| if k >= N { p[k].clone() } else { Q::zero() }).collect();
        (x, y)
    };
    let big_omega = |p: &[Q], q: &[Q]| {
        let (x1, y1) = split(p);
        let (x2, y2) = split(q);
        sp.omega(&x1, &y2) - sp.omega(&x2, &y1)
    };
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if sp.omega(&unit(i), &unit(j)) != big_omega(&unit(i), &unit(j)) {
                failures.push((i, j));
            }
        }
    }
    let non_equivariant = sp.borel[..BOREL.len()]
        .iter()
        .filter(|(_, a)| {
            (0..n).any(|i| (0..n).any(|j| (i < N) != (j < N) && !a[(i, j)].is_zero()))
        })
        .map(|(name, _)| name.clone())
        .collect();
    let (p, q) = (unit(N + V), unit(VT));
    let lhs = sp.omega(&p, &q);
    let rhs = big_omega(&p, &q);
    PhiCheck {
        pairs: n * n,
        form_failures: failures,
        non_equivariant,
        sample_value: format!("{} = {}", fmt_rat(&lhs), fmt_rat(&rhs)),
    }
}

/// Rank of `A -> rho(A) x` on the `g2` Borel.
pub fn orbit_dimension(rep: &Rep7, x: &[Q]) -> usize {
    let cols: Vec<Vec<Q>> = BOREL.iter().map(|&b| rep.rho(b).mul_vec(x)).collect();
    Matrix::from_columns(N, &cols).expect("length 7").rank()
}

pub fn unit7(i: usize) -> Vec<Q> {
    (0..N).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedLine {
    pub label: &'static str,
    pub weight: Weight,
    pub orbit_dimension: usize,
}

/// Weight lines on which `B` vanishes, with their Borel orbit dimensions.
pub fn tfixed_isotropic_lines(rep: &Rep7, form: &InvariantForm) -> Vec<FixedLine> {
    (0..N)
        .filter(|&i| form.pair(&unit7(i), &unit7(i)).is_zero())
        .map(|i| FixedLine {
            label: LABELS[i],
            weight: WEIGHTS[i],
            orbit_dimension: orbit_dimension(rep, &unit7(i)),
        })
        .collect()
}

/// Small-height rational in `[-10, 10]` with denominator at most 10.
fn small_rational(rng: &mut ChaCha8Rng) -> Q {
    rat(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

fn random_vector(rng: &mut ChaCha8Rng) -> Vec<Q> {
    (0..N).map(|_| small_rational(rng)).collect()
}

/// A random point of the cone `B(z, z) = 0`: free coordinates, then `v~`
/// solved from `v v~ = (B(u,u)/4) u^2 - w w~ - t t~`.
pub fn random_cone_point(form: &InvariantForm, rng: &mut ChaCha8Rng) -> Vec<Q> {
    let mut z = random_vector(rng);
    if z[V].is_zero() {
        z[V] = Q::one();
    }
    z[VT] = Q::zero();
    let rest = form.pair(&z, &z);
    let coeff = form.gram[(V, VT)].clone() * int(2) * z[V].clone();
    z[VT] = -rest / coeff;
    z
}

/// Basis of the `z` with `(z', z)` conormal: the kernel of `z -> B(z, .)`
/// on `z'` and `rho(A) z'` for the Borel generators.
pub fn conormal_fiber(rep: &Rep7, form: &InvariantForm, zprime: &[Q]) -> Vec<Vec<Q>> {
    let mut rows = vec![form.gram.mul_vec(zprime)];
    for &b in &BOREL {
        rows.push(form.gram.mul_vec(&rep.rho(b).mul_vec(zprime)));
    }
    Matrix::from_rows(&rows).expect("rectangular").kernel_basis()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EquivalenceSummary {
    pub members_sampled: usize,
    pub non_members_sampled: usize,
    pub members_confirmed: usize,
    pub discrepancies: usize,
    /// Moment-zero points whose `z'` missed the cone.
    pub cone_violations: usize,
}

/// Samples conormal points from constructed fibers and generic perturbed
/// points, and compares [`Symplectic14::conormal_conditions`] with
/// [`Symplectic14::moment_zero_check`] on each.
pub fn sample_equivalence(rep: &Rep7, sp: &Symplectic14, samples: usize, seed: u64) -> EquivalenceSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = EquivalenceSummary::default();
    let record = |s: &mut EquivalenceSummary, zp: &[Q], z: &[Q]| {
        let conormal = sp.conormal_conditions(rep, zp, z);
        let moment = sp.moment_zero_check(&tensor_point(zp, z));
        if conormal != moment {
            s.discrepancies += 1;
        }
        if moment && !sp.form.pair(zp, zp).is_zero() {
            s.cone_violations += 1;
        }
        conormal
    };
    for _ in 0..samples {
        let zp = random_cone_point(&sp.form, &mut rng);
        let fiber = conormal_fiber(rep, &sp.form, &zp);
        let z = fiber.iter().fold(vec![Q::zero(); N], |acc, k| {
            let c = small_rational(&mut rng);
            acc.iter().zip(k).map(|(a, b)| a.clone() + c.clone() * b.clone()).collect()
        });
        s.members_sampled += 1;
        if record(&mut s, &zp, &z) {
            s.members_confirmed += 1;
        }
    }
    for i in 0..samples {
        // Alternate between fully random pairs and members nudged off the fiber.
        let (zp, z) = if i % 2 == 0 {
            (random_vector(&mut rng), random_vector(&mut rng))
        } else {
            let zp = random_cone_point(&sp.form, &mut rng);
            let mut z = random_vector(&mut rng);
            z[U] = z[U].clone() + Q::one();
            (zp, z)
        };
        s.non_members_sampled += 1;
        record(&mut s, &zp, &z);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCountResult {
    pub prime: u64,
    pub points: usize,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
}

pub const SUPPORTED_PRIMES: [u64; 4] = [3, 5, 7, 11];

/// Number of `B(F_p)`-orbits on the quadric cone `Q(F_p)`.
pub fn count_orbits_mod_p(rep: &Rep7, form: &InvariantForm, p: u64) -> Result<OrbitCountResult> {
    if p < 3 {
        return Err(Error::BadPrime {
            prime: p,
            reason: "p >= 3 required".into(),
        });
    }
    if !is_prime(p) {
        return Err(Error::BadPrime {
            prime: p,
            reason: "not prime".into(),
        });
    }
    match p {
        3 => orbits_over::<3>(rep, form),
        5 => orbits_over::<5>(rep, form),
        7 => orbits_over::<7>(rep, form),
        11 => orbits_over::<11>(rep, form),
        _ => Err(Error::BadPrime {
            prime: p,
            reason: format!("unsupported, choose from {SUPPORTED_PRIMES:?}"),
        }),
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

fn reduce<const P: u64>(m: &Matrix) -> Result<DenseMatrix<Fp<P>>> {
    m.try_map(Fp::<P>::from_rational).ok_or(Error::BadPrime {
        prime: P,
        reason: "denominator divisible by p".into(),
    })
}

/// `exp(c N)` for nilpotent `N`, requiring `k!` invertible along the way.
fn exp_nilpotent<const P: u64>(n: &DenseMatrix<Fp<P>>, c: Fp<P>) -> Result<DenseMatrix<Fp<P>>> {
    let mut out = DenseMatrix::identity(N);
    let mut term = DenseMatrix::identity(N);
    for k in 1..=N as u64 {
        term = &term * n;
        if term.is_zero() {
            return Ok(out);
        }
        if k >= P {
            return Err(Error::BadPrime {
                prime: P,
                reason: format!("nilpotency order exceeds p ({k}! not invertible)"),
            });
        }
        term = term.scale(&(c / Fp::new(k as i64)));
        out = &out + &term;
    }
    Ok(out)
}

fn orbits_over<const P: u64>(rep: &Rep7, form: &InvariantForm) -> Result<OrbitCountResult> {
    let b = reduce::<P>(&form.gram)?;
    let mut gens: Vec<DenseMatrix<Fp<P>>> = Vec::new();
    for &x in &BOREL_ROOT_VECTORS {
        let nil = reduce::<P>(rep.rho(x))?;
        for c in 1..P {
            gens.push(exp_nilpotent(&nil, Fp::new(c as i64))?);
        }
    }
    let g = Fp::<P>::primitive_root();
    let g_inv = g.inverse().expect("nonzero");
    for coroot in [ALPHA, BETA] {
        gens.push(DenseMatrix::from_fn(N, N, |i, j| {
            if i != j {
                return Fp::zero();
            }
            let k = WEIGHTS[i].coroot_pairing(coroot);
            if k >= 0 {
                g.pow(k as u64)
            } else {
                g_inv.pow((-k) as u64)
            }
        }));
    }
    let gens: Vec<[[u64; N]; N]> = gens
        .iter()
        .map(|m| std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)].value())))
        .collect();
    let bq: [[u64; N]; N] = std::array::from_fn(|i| std::array::from_fn(|j| b[(i, j)].value()));

    let total = (P as usize).pow(N as u32);
    let decode = |mut code: usize| -> [u64; N] {
        std::array::from_fn(|_| {
            let d = (code % P as usize) as u64;
            code /= P as usize;
            d
        })
    };
    let encode = |x: &[u64; N]| -> usize { x.iter().rev().fold(0, |acc, &d| acc * P as usize + d as usize) };

    let mut on_cone = vec![false; total];
    let mut cone = Vec::new();
    for code in 0..total {
        let x = decode(code);
        let mut q = 0u64;
        for i in 0..N {
            if x[i] == 0 {
                continue;
            }
            let bx: u64 = (0..N).map(|j| bq[i][j] * x[j]).sum::<u64>() % P;
            q = (q + x[i] * bx) % P;
        }
        if q == 0 {
            on_cone[code] = true;
            cone.push(code);
        }
    }

    let mut uf = UnionFind::new(total);
    for &code in &cone {
        let x = decode(code);
        for m in &gens {
            let y: [u64; N] = std::array::from_fn(|i| (0..N).map(|j| m[i][j] * x[j]).sum::<u64>() % P);
            let image = encode(&y);
            debug_assert!(on_cone[image], "generators preserve the cone");
            uf.union(code as u32, image as u32);
        }
    }
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for &code in &cone {
        *sizes.entry(uf.find(code as u32)).or_default() += 1;
    }
    let mut orbit_sizes: Vec<usize> = sizes.into_values().collect();
    orbit_sizes.sort_unstable();
    Ok(OrbitCountResult {
        prime: P,
        points: cone.len(),
        orbit_count: orbit_sizes.len(),
        orbit_sizes,
    })
}
