//! The `G2` root lattice in simple-root coordinates, its Weyl group, and
//! polarizations (positive systems).
//!
//! Coordinates are `(m1, m2)` for `m1 * alpha + m2 * beta`, with the integer
//! form `(alpha, alpha) = 2`, `(beta, beta) = 6`, `(alpha, beta) = -3`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// A lattice vector `a * alpha + b * beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    /// The invariant form.
    pub fn dot(self, other: Weight) -> i64 {
        2 * self.a * other.a + 6 * self.b * other.b - 3 * (self.a * other.b + self.b * other.a)
    }

    pub fn norm(self) -> i64 {
        self.dot(self)
    }

    /// `<self, delta^vee> = 2 (self, delta) / (delta, delta)`.
    pub fn coroot_pairing(self, delta: Weight) -> i64 {
        let num = 2 * self.dot(delta);
        let den = delta.norm();
        debug_assert_eq!(num % den, 0, "non-integral pairing");
        num / den
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.a, -self.b)
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: Weight) -> Weight {
        Weight::new(self * w.a, self * w.b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: i64, s: &str| match c {
            1 => s.to_string(),
            -1 => format!("-{s}"),
            c => format!("{c}{s}"),
        };
        match (self.a, self.b) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "{}", term(a, "α")),
            (0, b) => write!(f, "{}", term(b, "β")),
            (a, b) => {
                let sign = if b > 0 { "+" } else { "-" };
                write!(f, "{}{}{}", term(a, "α"), sign, term(b.abs(), "β"))
            }
        }
    }
}

pub const ALPHA: Weight = Weight::new(1, 0);
pub const BETA: Weight = Weight::new(0, 1);
/// `gamma = 2 alpha + beta`.
pub const GAMMA: Weight = Weight::new(2, 1);

const POSITIVE_ROOTS: [Weight; 6] = [
    Weight::new(1, 0),
    Weight::new(0, 1),
    Weight::new(1, 1),
    Weight::new(2, 1),
    Weight::new(3, 1),
    Weight::new(3, 2),
];

/// A root of `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(Weight);

impl Root {
    pub fn new(w: Weight) -> Option<Root> {
        is_root(w).then_some(Root(w))
    }

    pub fn weight(self) -> Weight {
        self.0
    }

    pub fn is_long(self) -> bool {
        self.0.norm() == 6
    }
}

impl Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(-self.0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_root(w: Weight) -> bool {
    POSITIVE_ROOTS.contains(&w) || POSITIVE_ROOTS.contains(&-w)
}

/// The twelve roots: the six listed positive ones followed by their negatives.
pub fn enumerate_roots() -> Vec<Root> {
    POSITIVE_ROOTS
        .iter()
        .map(|&w| Root(w))
        .chain(POSITIVE_ROOTS.iter().map(|&w| Root(-w)))
        .collect()
}

/// A lattice automorphism as a 2x2 integer matrix acting on coordinate
/// columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylElement {
    pub matrix: [[i64; 2]; 2],
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement {
        matrix: [[1, 0], [0, 1]],
    };

    /// Reflection `x -> x - <x, delta^vee> delta`.
    pub fn reflection(delta: Weight) -> Self {
        let image = |w: Weight| w - w.coroot_pairing(delta) * delta;
        let c0 = image(ALPHA);
        let c1 = image(BETA);
        WeylElement {
            matrix: [[c0.a, c1.a], [c0.b, c1.b]],
        }
    }

    pub fn apply(&self, w: Weight) -> Weight {
        let m = &self.matrix;
        Weight::new(m[0][0] * w.a + m[0][1] * w.b, m[1][0] * w.a + m[1][1] * w.b)
    }

    pub fn apply_root(&self, r: Root) -> Root {
        Root::new(self.apply(r.0)).expect("Weyl elements permute roots")
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let a = &self.matrix;
        let b = &other.matrix;
        WeylElement {
            matrix: std::array::from_fn(|i| {
                std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])
            }),
        }
    }

    pub fn determinant(&self) -> i64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// Closure of `{s_alpha, s_beta}` under composition, breadth-first from the
/// identity. The order is deterministic.
pub fn generate_weyl() -> Vec<WeylElement> {
    let gens = [WeylElement::reflection(ALPHA), WeylElement::reflection(BETA)];
    let mut seen = BTreeSet::new();
    let mut out = vec![WeylElement::IDENTITY];
    seen.insert(WeylElement::IDENTITY);
    let mut i = 0;
    while i < out.len() {
        let w = out[i];
        for g in &gens {
            let next = g.compose(&w);
            if seen.insert(next) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

/// Whether `elems` is closed under composition and inverses.
pub fn is_group(elems: &[WeylElement]) -> bool {
    let set: BTreeSet<WeylElement> = elems.iter().copied().collect();
    set.contains(&WeylElement::IDENTITY)
        && elems.iter().all(|a| {
            elems.iter().all(|b| set.contains(&a.compose(b)))
                && elems
                    .iter()
                    .any(|b| a.compose(b) == WeylElement::IDENTITY)
        })
}

/// A six-element positive system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Polarization {
    roots: BTreeSet<Root>,
}

impl Polarization {
    /// Validates the positive-system invariants.
    pub fn new(roots: impl IntoIterator<Item = Root>) -> Option<Polarization> {
        let p = Polarization {
            roots: roots.into_iter().collect(),
        };
        p.is_valid().then_some(p)
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.roots.iter().copied()
    }

    pub fn contains(&self, w: Weight) -> bool {
        Root::new(w).is_some_and(|r| self.roots.contains(&r))
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn opposite(&self) -> Polarization {
        Polarization {
            roots: self.roots.iter().map(|&r| -r).collect(),
        }
    }

    pub fn image(&self, w: &WeylElement) -> Polarization {
        Polarization {
            roots: self.roots.iter().map(|&r| w.apply_root(r)).collect(),
        }
    }

    pub fn is_half_system(&self) -> bool {
        self.roots.len() == 6 && self.roots.iter().all(|&r| !self.roots.contains(&-r))
    }

    pub fn is_closed(&self) -> bool {
        self.roots.iter().all(|&x| {
            self.roots.iter().all(|&y| {
                let s = x.0 + y.0;
                !is_root(s) || self.contains(s)
            })
        })
    }

    /// An integer functional `(c1, c2)` with `c1 m1 + c2 m2 > 0` on every
    /// member, by search over `|c| <= 20`.
    pub fn separating_functional(&self) -> Option<(i64, i64)> {
        (-20..=20)
            .flat_map(|c1| (-20..=20).map(move |c2| (c1, c2)))
            .find(|&(c1, c2)| self.roots.iter().all(|r| c1 * r.0.a + c2 * r.0.b > 0))
    }

    pub fn is_valid(&self) -> bool {
        self.is_half_system() && self.is_closed() && self.separating_functional().is_some()
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.roots.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Positive system of the slice-side Borel: the weights of
/// `u6 = span(E31, f1, E21, e2, E23, f3)`.
pub fn base_positive_system() -> Polarization {
    let ws = [
        Weight::new(-3, -1),
        Weight::new(-1, 0),
        Weight::new(0, 1),
        Weight::new(1, 1),
        Weight::new(2, 1),
        Weight::new(3, 2),
    ];
    Polarization::new(ws.into_iter().map(|w| Root::new(w).expect("root")))
        .expect("u6 weights form a positive system")
}

/// `w(base)` for every Weyl element, in [`generate_weyl`] order.
pub fn all_polarizations() -> Vec<(WeylElement, Polarization)> {
    let base = base_positive_system();
    generate_weyl()
        .into_iter()
        .map(|w| {
            let p = base.image(&w);
            (w, p)
        })
        .collect()
}

/// A combination `i delta + j eps` that is a root although at least one of
/// `(i-1) delta + j eps`, `i delta + (j-1) eps` is neither a root nor zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootStringCase {
    pub delta: Weight,
    pub eps: Weight,
    pub i: i64,
    pub j: i64,
    pub combination: Weight,
    pub drop_delta_is_root: bool,
    pub drop_eps_is_root: bool,
}

/// Scans all ordered pairs of linearly independent roots and all
/// `i, j >= 1` (bounded by 4, beyond any root string length in `G2`).
pub fn root_string_cases() -> Vec<RootStringCase> {
    let roots = enumerate_roots();
    let mut out = Vec::new();
    for &d in &roots {
        for &e in &roots {
            if d == e || d == -e {
                continue;
            }
            for i in 1..=4 {
                for j in 1..=4 {
                    let c = i * d.0 + j * e.0;
                    if !is_root(c) || (i == 1 && j == 1) {
                        continue;
                    }
                    let ok = |w: Weight| w == Weight::ZERO || is_root(w);
                    out.push(RootStringCase {
                        delta: d.0,
                        eps: e.0,
                        i,
                        j,
                        combination: c,
                        drop_delta_is_root: ok((i - 1) * d.0 + j * e.0),
                        drop_eps_is_root: ok(i * d.0 + (j - 1) * e.0),
                    });
                }
            }
        }
    }
    out
}

/// Every root `i delta + j eps` with `i + j >= 3` has a predecessor
/// `(i-1) delta + j eps` or `i delta + (j-1) eps` that is again a root, so it
/// is reached from `delta + eps` by adding `delta` or `eps` one step at a time
/// through roots.
pub fn verify_root_addition_lemma() -> bool {
    root_string_cases()
        .iter()
        .all(|c| c.drop_delta_is_root || c.drop_eps_is_root)
}

/// Cases where *both* predecessors fail to be roots or zero. These exist
/// in `G2` (e.g. `3 alpha + beta` with `3 alpha` not a root), so the stronger
/// "both predecessors" reading does not hold.
pub fn root_string_counterexamples_to_both() -> Vec<RootStringCase> {
    root_string_cases()
        .into_iter()
        .filter(|c| !(c.drop_delta_is_root && c.drop_eps_is_root))
        .collect()
}
