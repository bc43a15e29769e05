//! Suite runner and report serialization.
//!
//! Check names are stable identifiers; downstream tooling selects checks by
//! name. A check whose prerequisite failed is reported as `skipped`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::g2::{self, bracket, BasisElement, G2Element, KillingForm, A_COORDS};
use crate::linalg::DenseMatrix;
use crate::rep7::{self, InvariantForm, Rep7, Symplectic14, SUPPORTED_PRIMES};
use crate::roots::{self, ALPHA};
use crate::scalar::{fmt_rat, int, is_prime, rat};
use crate::slice::{self, LemmaCheck, SliceData};
use crate::{Element, Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Combinatorics,
    Slice,
    Linear,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Algebra, Suite::Combinatorics, Suite::Slice, Suite::Linear];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "algebra" => Ok(Suite::Algebra),
            "combinatorics" => Ok(Suite::Combinatorics),
            "slice" => Ok(Suite::Slice),
            "linear" => Ok(Suite::Linear),
            other => Err(Error::Config(format!("unknown suite '{other}'"))),
        }
    }
}

/// Parses `all` or a comma-separated suite list.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let set: BTreeSet<Suite> = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(Suite::from_str)
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub suites: Vec<Suite>,
    pub primes: Vec<u64>,
    /// Seeded slice points for the `omega'` rank check.
    pub rank_samples: usize,
    /// Samples per direction for the conormal / moment-map comparison.
    pub conormal_samples: usize,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Record wall-clock milliseconds per check. Off by default so that
    /// reports are byte-stable.
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            suites: Suite::ALL.to_vec(),
            primes: vec![3, 5, 7],
            rank_samples: 10,
            conormal_samples: 100,
            seed: 42,
            format: Format::Text,
            out: None,
            timings: false,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        if self.rank_samples == 0 || self.conormal_samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.primes.is_empty() && self.runs(Suite::Linear) {
            return Err(Error::Config("no primes given".into()));
        }
        for &p in &self.primes {
            if p < 3 {
                return Err(Error::Config(format!("prime {p}: p >= 3 required")));
            }
            if !is_prime(p) {
                return Err(Error::Config(format!("{p} is not prime")));
            }
            if !SUPPORTED_PRIMES.contains(&p) {
                return Err(Error::Config(format!(
                    "prime {p} unsupported, choose from {SUPPORTED_PRIMES:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn runs(&self, s: Suite) -> bool {
        self.suites.contains(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub millis: u64,
    pub details: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Headline {
    pub slice_total: Option<usize>,
    pub linear_total: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: Config,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub headline: Headline,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// What a check computed: its rendering, verdict and payload.
struct Outcome {
    actual: String,
    pass: bool,
    details: Value,
}

impl Outcome {
    fn eq(expected: &str, actual: impl ToString, details: Value) -> Outcome {
        let actual = actual.to_string();
        Outcome {
            pass: actual == expected,
            actual,
            details,
        }
    }

    fn lemma(check: &LemmaCheck) -> Outcome {
        Outcome {
            actual: check.holds.to_string(),
            pass: check.holds,
            details: serde_json::to_value(check).expect("serializable"),
        }
    }
}

struct Runner {
    timings: bool,
    checks: Vec<CheckResult>,
}

impl Runner {
    fn run(&mut self, name: &str, expected: &str, f: impl FnOnce() -> Result<Outcome>) -> bool {
        debug_assert!(self.checks.iter().all(|c| c.name != name), "duplicate {name}");
        let start = Instant::now();
        let (status, actual, details) = match f() {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.actual, o.details),
            Err(e) => (Status::Fail, format!("error: {e}"), Value::Null),
        };
        let millis = if self.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            status,
            expected: expected.to_string(),
            actual,
            millis,
            details,
        });
        status == Status::Pass
    }

    fn skip(&mut self, name: &str, expected: &str, because: &str) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            status: Status::Skipped,
            expected: expected.to_string(),
            actual: String::new(),
            millis: 0,
            details: json!({ "prerequisite_failed": because }),
        });
    }
}

/// Runs the selected suites in dependency order.
pub fn run_suite(config: &Config) -> Result<VerificationReport> {
    config.validate()?;
    let mut r = Runner {
        timings: config.timings,
        checks: Vec::new(),
    };
    let mut headline = Headline::default();
    if config.runs(Suite::Algebra) {
        algebra_suite(&mut r);
    }
    if config.runs(Suite::Combinatorics) {
        combinatorics_suite(&mut r);
    }
    if config.runs(Suite::Slice) {
        headline.slice_total = slice_suite(&mut r, config);
    }
    if config.runs(Suite::Linear) {
        headline.linear_total = linear_suite(&mut r, config);
    }
    let count = |s: Status| r.checks.iter().filter(|c| c.status == s).count();
    let summary = Summary {
        total: r.checks.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
    };
    Ok(VerificationReport {
        config: config.clone(),
        checks: r.checks,
        summary,
        headline,
    })
}

fn basis() -> Vec<Element> {
    BasisElement::ALL.iter().map(|&b| Element::basis(b)).collect()
}

fn algebra_suite(r: &mut Runner) {
    r.run("linalg.identity_rank", "3", || {
        Ok(Outcome::eq("3", DenseMatrix::<Q>::identity(3).rank(), Value::Null))
    });
    r.run("linalg.ad_f1_rank_kernel", "rank 8, kernel 6, verified", || {
        let m = g2::ad_matrix(&-&Element::basis(BasisElement::F1));
        let ker = m.kernel_basis();
        let verified = ker.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero));
        let actual = format!(
            "rank {}, kernel {}, {}",
            m.rank(),
            ker.len(),
            if verified { "verified" } else { "NOT verified" }
        );
        Ok(Outcome::eq("rank 8, kernel 6, verified", actual, Value::Null))
    });
    r.run("g2.antisymmetry", "196 pairs, 0 failures", || {
        let b = basis();
        let fails = b
            .iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .filter(|(x, y)| bracket(x, y) != -&bracket(y, x))
            .count();
        Ok(Outcome::eq("196 pairs, 0 failures", format!("196 pairs, {fails} failures"), Value::Null))
    });
    r.run("g2.jacobi", "2744 triples, 0 failures", || {
        let b = basis();
        let mut fails = 0;
        for x in &b {
            for y in &b {
                for z in &b {
                    let s = &(&bracket(x, &bracket(y, z)) + &bracket(y, &bracket(z, x))) + &bracket(z, &bracket(x, y));
                    if !s.is_zero() {
                        fails += 1;
                    }
                }
            }
        }
        Ok(Outcome::eq("2744 triples, 0 failures", format!("2744 triples, {fails} failures"), Value::Null))
    });
    r.run("g2.killing_invariance", "2744 triples, 0 failures", || {
        let kf = KillingForm::<Q>::new();
        let b = basis();
        let mut fails = 0;
        for x in &b {
            for y in &b {
                let xy = bracket(x, y);
                for z in &b {
                    if !(kf.pair(&xy, z) + kf.pair(y, &bracket(x, z))).is_zero() {
                        fails += 1;
                    }
                }
            }
        }
        Ok(Outcome::eq("2744 triples, 0 failures", format!("2744 triples, {fails} failures"), Value::Null))
    });
    r.run("g2.killing_nondegenerate", "14", || {
        Ok(Outcome::eq("14", KillingForm::<Q>::new().gram().rank(), Value::Null))
    });
    r.run("g2.killing_weight_norms", "|a_i|^2 = 1/12, |a_i - a_j|^2 = 1/4", || {
        let kf = KillingForm::<Q>::new();
        let mut short = BTreeSet::new();
        let mut long = BTreeSet::new();
        for i in 0..3 {
            short.insert(fmt_rat(&g2::weight_norm(&kf, A_COORDS[i])));
            for j in 0..3 {
                if i != j {
                    long.insert(fmt_rat(&g2::weight_norm(&kf, A_COORDS[i] - A_COORDS[j])));
                }
            }
        }
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        Ok(Outcome::eq(
            "|a_i|^2 = 1/12, |a_i - a_j|^2 = 1/4",
            format!("|a_i|^2 = {}, |a_i - a_j|^2 = {}", join(&short), join(&long)),
            Value::Null,
        ))
    });
    r.run("g2.killing_cartan_formula", "agrees on 9 Cartan pairs", || {
        let diags = [[int(1), int(-1), int(0)], [int(0), int(1), int(-1)], [int(2), int(-1), int(-1)]];
        let kf = KillingForm::<Q>::new();
        let mut agree = 0;
        for a in &diags {
            for b in &diags {
                let x = G2Element::cartan(a.clone())?;
                let y = G2Element::cartan(b.clone())?;
                if kf.pair(&x, &y) == g2::cartan_killing_formula(a, b) {
                    agree += 1;
                }
            }
        }
        Ok(Outcome::eq("agrees on 9 Cartan pairs", format!("agrees on {agree} Cartan pairs"), Value::Null))
    });
}

fn combinatorics_suite(r: &mut Runner) {
    r.run("roots.count", "12", || Ok(Outcome::eq("12", roots::enumerate_roots().len(), Value::Null)));
    r.run("weyl.order", "12", || {
        let w = roots::generate_weyl();
        let actual = if roots::is_group(&w) { w.len().to_string() } else { "not a group".into() };
        Ok(Outcome::eq("12", actual, Value::Null))
    });
    r.run("polarizations.count", "12", || {
        let all = roots::all_polarizations();
        let distinct: BTreeSet<_> = all.iter().map(|(_, p)| p.clone()).collect();
        let valid = all.iter().all(|(_, p)| p.is_valid());
        let actual = if valid { distinct.len().to_string() } else { "invalid polarization".into() };
        Ok(Outcome::eq("12", actual, Value::Null))
    });
    r.run("polarizations.minus_alpha_split", "omit 6 / contain 6", || {
        let all = roots::all_polarizations();
        let omit = all.iter().filter(|(_, p)| !p.contains(-ALPHA)).count();
        Ok(Outcome::eq(
            "omit 6 / contain 6",
            format!("omit {omit} / contain {}", all.len() - omit),
            Value::Null,
        ))
    });
    r.run("roots.addition_chain", "true", || {
        let literal = roots::root_string_counterexamples_to_both();
        Ok(Outcome::eq(
            "true",
            roots::verify_root_addition_lemma(),
            json!({
                "note": "each root i*d + j*e (i + j >= 3) has a predecessor that is a root; \
                         requiring both predecessors fails in G2",
                "both_predecessors_counterexamples": literal.len(),
                "examples": literal.iter().take(4).collect::<Vec<_>>(),
            }),
        ))
    });
    r.run("combinatorics.relevancy_criteria_agree", "12 of 12", || {
        let data = slice::build_slice_data()?;
        let count = slice::count_relevant_orbits(&data)?;
        Ok(Outcome::eq("12 of 12", format!("{} of 12", count.records.len()), Value::Null))
    });
}

fn slice_suite(r: &mut Runner, config: &Config) -> Option<usize> {
    let names = [
        ("slice.build", "ok"),
        ("slice.omega_minus1", "true"),
        ("slice.psi_conditions", "true"),
        ("slice.lemma_incl", "true"),
        ("slice.ml_formula", "true"),
        ("slice.contracting_weights", "true"),
        ("slice.count_relevant_orbits.base", "6"),
        ("slice.count_relevant_orbits.complementary", "1"),
        ("slice.count_relevant_orbits.total", "7"),
        ("slice.omega_prime_rank", "20 at e and at all sampled points"),
    ];
    let data: Option<SliceData> = match slice::build_slice_data() {
        Ok(d) => Some(d),
        Err(e) => {
            r.run(names[0].0, names[0].1, || Err(e));
            None
        }
    };
    let Some(data) = data else {
        for (n, e) in &names[1..] {
            r.skip(n, e, "slice.build");
        }
        return None;
    };
    r.run("slice.build", "ok", || {
        Ok(Outcome::eq(
            "ok",
            "ok",
            json!({
                "grading_dims": data.grading.dims(),
                "psi(f1)": fmt_rat(&data.psi.eval(&Element::basis(BasisElement::F1))),
                "ker_ad_f": data.subalgebras.ker_ad_f.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        ))
    });
    r.run("slice.omega_minus1", "true", || Ok(Outcome::lemma(&slice::omega_minus1_check(&data))));
    r.run("slice.psi_conditions", "true", || Ok(Outcome::lemma(&slice::verify_psi_conditions(&data))));
    r.run("slice.lemma_incl", "true", || Ok(Outcome::lemma(&slice::verify_lemma_incl(&data))));
    r.run("slice.ml_formula", "true", || Ok(Outcome::lemma(&slice::verify_ml_formula(&data))));
    r.run("slice.contracting_weights", "true", || Ok(Outcome::lemma(&slice::verify_contracting_weights(&data))));

    let mut total = None;
    match slice::count_relevant_orbits(&data) {
        Ok(c) => {
            let records = serde_json::to_value(&c.records).expect("serializable");
            r.run("slice.count_relevant_orbits.base", "6", || Ok(Outcome::eq("6", c.base, records)));
            r.run("slice.count_relevant_orbits.complementary", "1", || {
                Ok(Outcome::eq("1", c.complementary, Value::Null))
            });
            r.run("slice.count_relevant_orbits.total", "7", || {
                Ok(Outcome::eq(
                    "7",
                    c.total,
                    json!({ "scope": "Lie-level hypotheses and the numeric count; the variety-level reduction is not certified" }),
                ))
            });
            total = Some(c.total);
        }
        Err(e) => {
            let msg = e.to_string();
            r.run("slice.count_relevant_orbits.base", "6", || Err(e));
            r.skip("slice.count_relevant_orbits.complementary", "1", &msg);
            r.skip("slice.count_relevant_orbits.total", "7", &msg);
        }
    }
    let expected = "20 at e and at all sampled points";
    r.run("slice.omega_prime_rank", expected, || {
        let samples = slice::omega_prime_ranks(&data, config.rank_samples, config.seed)?;
        let ok = samples.iter().all(|s| s.rank == 20 && s.antisymmetric);
        let actual = if ok {
            expected.to_string()
        } else {
            format!("ranks {:?}", samples.iter().map(|s| s.rank).collect::<Vec<_>>())
        };
        Ok(Outcome::eq(expected, actual, json!({ "seed": config.seed, "samples": samples })))
    });
    total
}

fn linear_suite(r: &mut Runner, config: &Config) -> Option<usize> {
    let mut dependents: Vec<(String, String)> = [
        ("rep7.homomorphism", "91 pairs, 0 failures"),
        ("rep7.explicit_actions", "true"),
        ("rep7.weights", "compatible, zero weight dim 1"),
        ("rep7.invariant_form", "14 generators, 0 failures"),
        ("rep7.symplectic_form", "rank 14, 10 symplectic generators"),
        ("rep7.phi_symplectomorphism", "true"),
        ("rep7.conormal_moment_equivalence", "0 discrepancies"),
        ("rep7.orbit_dimensions", "6 lines, dims distinct"),
        ("rep7.orbit_dimension_scaling", "invariant"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    for p in &config.primes {
        dependents.push((format!("rep7.orbits_mod_p.{p}"), "7".into()));
    }
    dependents.push(("rep7.orbits_mod_p.consistent".into(), "true".into()));
    dependents.push(("linear.total".into(), "7".into()));

    let rep = match rep7::build_rep7() {
        Ok(rep) => rep,
        Err(e) => {
            r.run("rep7.build", "unique solution", || Err(e));
            for (n, x) in &dependents {
                r.skip(n, x, "rep7.build");
            }
            return None;
        }
    };
    r.run("rep7.build", "unique solution", || {
        let f2: std::collections::BTreeMap<String, String> = ["v->t", "w->u", "t~->v~", "u->w~"]
            .iter()
            .zip(&rep.f2_coefficients)
            .map(|(k, v)| (k.to_string(), fmt_rat(v)))
            .collect();
        Ok(Outcome::eq(
            "unique solution",
            "unique solution",
            json!({
                "f2": f2,
                "generation_table_mismatches": rep7::generation_table_mismatches().len(),
            }),
        ))
    });
    let form = InvariantForm::standard();
    linear_checks(r, config, &rep, form)
}

fn linear_checks(r: &mut Runner, config: &Config, rep: &Rep7, form: InvariantForm) -> Option<usize> {
    use BasisElement::*;
    r.run("rep7.homomorphism", "91 pairs, 0 failures", || {
        let f = rep.homomorphism_failures();
        Ok(Outcome::eq(
            "91 pairs, 0 failures",
            format!("91 pairs, {} failures", f.len()),
            json!(f.iter().map(|(a, b)| format!("{},{}", a.name(), b.name())).collect::<Vec<_>>()),
        ))
    });
    r.run("rep7.explicit_actions", "true", || {
        let f1 = rep.rho(F1);
        let f3 = rep.rho(F3);
        // (matrix, source, target, coefficient) in the v w t~ v~ w~ t u basis.
        let expected = [
            (f1, 0, 1, 1),
            (f1, 6, 2, 2),
            (f1, 5, 6, 1),
            (f1, 4, 3, -1),
            (f3, 2, 1, 1),
            (f3, 4, 5, -1),
            (f3, 3, 6, -1),
            (f3, 6, 0, -2),
        ];
        let entries_ok = expected.iter().all(|(m, s, t, c)| m[(*t, *s)] == int(*c));
        let nonzero = |m: &crate::Matrix| m.entries().iter().filter(|x| !x.is_zero()).count();
        let ok = entries_ok && nonzero(f1) == 4 && nonzero(f3) == 4;
        Ok(Outcome::eq("true", ok, Value::Null))
    });
    r.run("rep7.weights", "compatible, zero weight dim 1", || {
        let bad = rep.weight_incompatible();
        let actual = format!(
            "{}, zero weight dim {}",
            if bad.is_empty() { "compatible" } else { "incompatible" },
            rep.zero_weight_dimension()
        );
        Ok(Outcome::eq("compatible, zero weight dim 1", actual, Value::Null))
    });
    r.run("rep7.invariant_form", "14 generators, 0 failures", || {
        let fails = form.invariance_failures(rep);
        let literal = InvariantForm::quadric_polarization().invariance_failures(rep);
        Ok(Outcome::eq(
            "14 generators, 0 failures",
            format!("14 generators, {} failures", fails.len()),
            json!({
                "gram_nonzero": "B(v,v~) = B(w,w~) = B(t,t~) = -2, B(u,u) = 4",
                "note": "the coefficients of q read directly as a form on C^7 (B(u,u) = 1) fail invariance; q is a form on the dual",
                "direct_reading_failures": literal.iter().map(|b| b.name()).collect::<Vec<_>>(),
            }),
        ))
    });
    let sp = Symplectic14::new(rep, form.clone());
    r.run("rep7.symplectic_form", "rank 14, 10 symplectic generators", || {
        let bad = sp.non_symplectic_generators();
        let actual = format!(
            "rank {}, {} symplectic generators",
            if sp.omega.is_antisymmetric() { sp.omega.rank() } else { 0 },
            sp.borel.len() - bad.len()
        );
        Ok(Outcome::eq("rank 14, 10 symplectic generators", actual, Value::Null))
    });
    r.run("rep7.phi_symplectomorphism", "true", || {
        let c = rep7::phi_symplectomorphism_check(&sp);
        Ok(Outcome::eq("true", c.holds(), serde_json::to_value(&c).expect("serializable")))
    });
    r.run("rep7.conormal_moment_equivalence", "0 discrepancies", || {
        let s = rep7::sample_equivalence(rep, &sp, config.conormal_samples, config.seed);
        let ok = s.discrepancies == 0 && s.cone_violations == 0 && s.members_confirmed == s.members_sampled;
        let actual = if ok {
            "0 discrepancies".to_string()
        } else {
            format!("{} discrepancies", s.discrepancies + s.cone_violations + s.members_sampled - s.members_confirmed)
        };
        Ok(Outcome::eq("0 discrepancies", actual, json!({ "seed": config.seed, "summary": s })))
    });

    let lines = rep7::tfixed_isotropic_lines(rep, &form);
    let dims: BTreeSet<usize> = lines.iter().map(|l| l.orbit_dimension).collect();
    let distinct = dims.len() == lines.len();
    r.run("rep7.orbit_dimensions", "6 lines, dims distinct", || {
        let actual = format!("{} lines, dims {}", lines.len(), if distinct { "distinct" } else { "repeated" });
        Ok(Outcome::eq("6 lines, dims distinct", actual, serde_json::to_value(&lines).expect("serializable")))
    });
    r.run("rep7.orbit_dimension_scaling", "invariant", || {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut bad = 0;
        let mut points: Vec<Vec<Q>> = (0..rep7::N).map(rep7::unit7).collect();
        for _ in 0..config.rank_samples {
            points.push(rep7::random_cone_point(&form, &mut rng));
        }
        for x in &points {
            let mut lambda = rat(rng.gen_range(-10..=10), rng.gen_range(1..=10));
            if lambda.is_zero() {
                lambda = int(1);
            }
            let scaled: Vec<Q> = x.iter().map(|c| c.clone() * lambda.clone()).collect();
            if rep7::orbit_dimension(rep, &scaled) != rep7::orbit_dimension(rep, x) {
                bad += 1;
            }
        }
        Ok(Outcome::eq("invariant", if bad == 0 { "invariant" } else { "varies" }, json!({ "points": points.len() })))
    });

    let mut counts = Vec::new();
    for &p in &config.primes {
        r.run(&format!("rep7.orbits_mod_p.{p}"), "7", || {
            let res = rep7::count_orbits_mod_p(rep, &form, p)?;
            let sums = res.orbit_sizes.iter().sum::<usize>() == res.points;
            let origin = res.orbit_sizes.first() == Some(&1)
                && res.orbit_sizes.iter().filter(|&&s| s == 1).count() == 1;
            let divisible = res.orbit_sizes.iter().skip(1).all(|s| s % (p as usize - 1) == 0);
            counts.push(res.orbit_count);
            let mut o = Outcome::eq(
                "7",
                res.orbit_count,
                json!({
                    "result": res,
                    "sizes_sum_to_points": sums,
                    "origin_singleton": origin,
                    "nonzero_sizes_divisible_by_p_minus_1": divisible,
                    "characteristic_zero_count": 7,
                }),
            );
            o.pass &= sums && origin && divisible;
            Ok(o)
        });
    }
    r.run("rep7.orbits_mod_p.consistent", "true", || {
        let same = counts.len() == config.primes.len() && counts.windows(2).all(|w| w[0] == w[1]);
        Ok(Outcome::eq("true", same, json!({ "counts": counts })))
    });
    let total = distinct.then_some(lines.len() + 1);
    r.run("linear.total", "7", || {
        let actual = total.map_or("undetermined".to_string(), |t| t.to_string());
        Ok(Outcome::eq("7", actual, json!({ "isotropic_fixed_lines": lines.len(), "origin": 1 })))
    });
    total
}

/// Serializes the report in the configured format.
pub fn emit(report: &VerificationReport, config: &Config) -> String {
    match config.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

fn emit_text(report: &VerificationReport) -> String {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &report.checks {
        out.push_str(&format!("{}  {:width$}  expected: {}", c.status, c.name, c.expected));
        if c.status != Status::Pass {
            out.push_str(&format!("  actual: {}", c.actual));
        }
        if report.config.timings {
            out.push_str(&format!("  ({} ms)", c.millis));
        }
        out.push('\n');
    }
    let s = &report.summary;
    out.push_str(&format!(
        "\n{} checks: {} passed, {} failed, {} skipped\n",
        s.total, s.passed, s.failed, s.skipped
    ));
    let show = |v: Option<usize>| v.map_or("-".to_string(), |n| n.to_string());
    out.push_str(&format!(
        "slice components: {}   linear components: {}\n",
        show(report.headline.slice_total),
        show(report.headline.linear_total)
    ));
    out
}

/// Writes `body` to `config.out`, or stdout when no path is set.
pub fn write_output(config: &Config, body: &str) -> Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, body).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
