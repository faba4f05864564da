//! Seeded property suites.
//!
//! Every trial draws from its own generator, seeded from the run seed, the
//! suite and the trial index, so a report depends only on the options and can
//! be reproduced trial by trial. A suite can also be run on a single input
//! read from JSON.

use std::fmt::Write as _;

use loopspace_core::bridge::{self, check_restriction_compat, phi, phi_psi_iso, psi, psi_on_morphism, CommutingTuple};
use loopspace_core::diagrams::{curry, hom_dim, hom_space, uncurry, DiagMorphism, Diagram};
use loopspace_core::groebner::{buchberger, GroebnerBasis};
use loopspace_core::homotopy::{
    self, compare_derived, koszul_resolution, swap, swap_map, unswap, ChainComplex, ChainMap, DiagramHost, Host,
};
use loopspace_core::polymods::{ext_tor_mod, hom_mod, same_quotient, DerivedFunctor, ModMorphism, ModulePresentation};
use loopspace_core::random::{self, SeededRng};
use loopspace_core::smallcat::FinPresCat;
use loopspace_core::smith::{invariant_factors, smith_normal_form};
use loopspace_core::{Field, Matrix, MonomialOrder, Poly, PolyMatrix, PolyRing};
use serde_json::{json, Value};

use crate::error::{schema, CliError};
use crate::json::{self, Complex, Context, Object};
use crate::oracle::{self, Dense, DenseMatrix};

type Res<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Roundtrip,
    Homset,
    Derived,
    Swap,
    Explaw,
    Restriction,
    Kernels,
    Koszul,
    Classical,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Roundtrip,
        Suite::Homset,
        Suite::Derived,
        Suite::Classical,
        Suite::Swap,
        Suite::Explaw,
        Suite::Restriction,
        Suite::Kernels,
        Suite::Koszul,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Homset => "homset",
            Suite::Derived => "derived",
            Suite::Swap => "swap",
            Suite::Explaw => "explaw",
            Suite::Restriction => "restriction",
            Suite::Kernels => "kernels",
            Suite::Koszul => "koszul",
            Suite::Classical => "classical",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Roundtrip | Suite::Kernels => 200,
            Suite::Homset | Suite::Explaw => 100,
            Suite::Derived | Suite::Swap | Suite::Restriction | Suite::Koszul => 50,
            Suite::Classical => 1,
        }
    }

    pub fn default_max_dim(self) -> usize {
        match self {
            Suite::Roundtrip => 6,
            Suite::Homset | Suite::Derived | Suite::Restriction | Suite::Kernels => 5,
            Suite::Swap | Suite::Koszul => 4,
            Suite::Explaw => 3,
            Suite::Classical => 4,
        }
    }

    fn index(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub ctx: Context,
    pub seed: u64,
    pub trials: Option<usize>,
    pub max_dim: Option<usize>,
    /// Highest Ext/Tor degree compared by the derived suite on file input.
    pub max_degree: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { ctx: Context::default(), seed: 0, trials: None, max_dim: None, max_degree: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub trial: usize,
    pub check: &'static str,
    pub detail: String,
    pub input: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    /// `None` for a single input read from a file.
    pub seed: Option<u64>,
    pub trials: usize,
    pub trials_passed: usize,
    pub checks: Vec<CheckTally>,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.trials_passed == self.trials && self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn check(&self, name: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let origin = match self.seed {
            Some(seed) => format!("seed {seed}"),
            None => "file input".to_string(),
        };
        let _ = writeln!(s, "verify {}: {origin}, {} trials", self.suite.name(), self.trials);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(s, "  {:<width$}  {:>6}  {:>6}", "check", "passed", "failed");
        for c in &self.checks {
            let _ = writeln!(s, "  {:<width$}  {:>6}  {:>6}", c.name, c.passed, c.failed);
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "result: {verdict} {}/{} trials", self.trials_passed, self.trials);
        if let Some(cx) = &self.counterexample {
            let _ = writeln!(s, "first counterexample: trial {}, check {}: {}", cx.trial, cx.check, cx.detail);
            let _ = writeln!(s, "{}", serde_json::to_string(&cx.input).expect("serializable"));
        }
        s
    }
}

/// Outcome of one check: `Err` carries what went wrong.
type Verdict = Result<(), String>;

fn expect(ok: bool, detail: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

/// Checks recorded for one trial.
struct Trial {
    input: Value,
    results: Vec<(&'static str, Verdict)>,
}

impl Trial {
    fn new() -> Self {
        Trial { input: Value::Null, results: Vec::new() }
    }

    fn check(&mut self, name: &'static str, f: impl FnOnce() -> Res<Verdict>) {
        let v = match f() {
            Ok(v) => v,
            Err(e) => Err(format!("{}: {e}", e.kind())),
        };
        self.results.push((name, v));
    }
}

struct Tally {
    checks: Vec<CheckTally>,
    trials: usize,
    trials_passed: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: Vec::new(), trials: 0, trials_passed: 0, counterexample: None }
    }

    fn add(&mut self, index: usize, t: Trial) {
        self.trials += 1;
        let mut ok = true;
        for (name, v) in t.results {
            let slot = match self.checks.iter().position(|c| c.name == name) {
                Some(i) => i,
                None => {
                    self.checks.push(CheckTally { name, passed: 0, failed: 0 });
                    self.checks.len() - 1
                }
            };
            match v {
                Ok(()) => self.checks[slot].passed += 1,
                Err(detail) => {
                    ok = false;
                    self.checks[slot].failed += 1;
                    if self.counterexample.is_none() {
                        self.counterexample = Some(Counterexample { trial: index, check: name, detail, input: t.input.clone() });
                    }
                }
            }
        }
        if ok {
            self.trials_passed += 1;
        }
    }

    fn finish(self, suite: Suite, seed: Option<u64>) -> SuiteReport {
        SuiteReport {
            suite,
            seed,
            trials: self.trials,
            trials_passed: self.trials_passed,
            checks: self.checks,
            counterexample: self.counterexample,
        }
    }
}

fn trial_seed(seed: u64, suite: Suite, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (suite.index() << 48) ^ index as u64
}

/// Runs the seeded random battery of one suite.
pub fn run_suite(suite: Suite, opts: &Options) -> Res<SuiteReport> {
    let trials = opts.trials.unwrap_or(suite.default_trials());
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let max_dim = opts.max_dim.unwrap_or(suite.default_max_dim());
    let field = opts.ctx.field;
    let mut tally = Tally::new();
    let count = if suite == Suite::Classical { 1 } else { trials };
    for index in 0..count {
        let mut rng = SeededRng::new(trial_seed(opts.seed, suite, index));
        let mut t = Trial::new();
        random_trial(suite, &mut t, &mut rng, index, field, max_dim, opts);
        tally.add(index, t);
    }
    Ok(tally.finish(suite, Some(opts.seed)))
}

fn random_trial(suite: Suite, t: &mut Trial, rng: &mut SeededRng, index: usize, field: Field, max_dim: usize, opts: &Options) {
    match suite {
        Suite::Roundtrip => {
            let n = 1 + rng.below(2) as usize;
            let x = random::commuting_tuple(rng, field, n, max_dim);
            if index % 2 == 1 {
                let n = 1 + rng.below(2) as usize;
                let m = random::fd_presentation(rng, field, n, max_dim.min(4));
                t.input = json!({ "tuple": json::encode_tuple(&x), "presentation": json::encode_presentation(&m) });
                roundtrip_tuple(t, &x);
                roundtrip_presentation(t, &m);
            } else {
                t.input = json::encode_tuple(&x);
                roundtrip_tuple(t, &x);
            }
        }
        Suite::Homset => {
            let x = random::commuting_tuple(rng, field, 1, max_dim);
            let y = random::commuting_tuple(rng, field, 1, max_dim);
            t.input = pair_json(&x, &y);
            homset_checks(t, &x, &y, Some(rng));
        }
        Suite::Derived => {
            let x = random::commuting_tuple(rng, field, 1, max_dim);
            let y = random::commuting_tuple(rng, field, 1, max_dim);
            if index % 5 < 3 {
                let small = max_dim.min(3);
                let (x2, y2) = (random::commuting_tuple(rng, field, 2, small), random::commuting_tuple(rng, field, 2, small));
                t.input = json!({ "one_variable": pair_json(&x, &y), "two_variables": pair_json(&x2, &y2) });
                derived_checks(t, &x, &y, 2);
                derived_checks(t, &x2, &y2, 2);
            } else {
                t.input = pair_json(&x, &y);
                derived_checks(t, &x, &y, 2);
            }
        }
        Suite::Swap => {
            let lo = rng.range(-2, 2);
            let c = random::lambda_complex(rng, field, lo, 4, max_dim);
            let map = (index % 5 < 2).then(|| random::chain_map(rng, &c));
            t.input = json::encode_loop_complex(&c);
            swap_checks(t, &c, map.as_ref());
        }
        Suite::Explaw => {
            let lambda = FinPresCat::make_loop(1).expect("one loop");
            if index.is_multiple_of(2) {
                let x = random::lambda_arrow_diagram(rng, field, max_dim);
                t.input = diagram_json(&x);
                explaw_checks(t, &lambda, &FinPresCat::arrow_category(), &x);
            } else {
                let x = random::lambda_square_diagram(rng, field, max_dim);
                t.input = diagram_json(&x);
                explaw_checks(t, &lambda, &lambda, &x);
            }
        }
        Suite::Restriction => {
            let x = random::commuting_tuple(rng, field, 1, max_dim);
            t.input = json::encode_tuple(&x);
            restriction_checks(t, &x, &[1 + index % 3]);
        }
        Suite::Kernels => {
            let m = random::snf_matrix(rng, field, max_dim, 3);
            if index.is_multiple_of(2) {
                let nvars = 2 + rng.below(2) as usize;
                let order = if rng.chance(1, 2) { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
                let ring = PolyRing::new(field, nvars, order);
                let gens = random::ideal(rng, ring, 3, if nvars == 2 { 3 } else { 2 });
                let probes: Vec<Poly> = (0..3).map(|_| random::poly(rng, ring, 4, 4)).collect();
                t.input = json!({ "snf": json::encode_snf_input(&m), "gb": json::encode_ideal(&ring, &gens) });
                snf_checks(t, &m);
                groebner_checks(t, &gens, order, &probes);
            } else {
                t.input = json::encode_snf_input(&m);
                snf_checks(t, &m);
            }
        }
        Suite::Koszul => {
            let n = 1 + rng.below(2) as usize;
            let x = random::commuting_tuple(rng, field, n, max_dim);
            t.input = json::encode_tuple(&x);
            koszul_checks(t, &x);
        }
        Suite::Classical => {
            t.input = json!({ "field": json::FieldJson::encode(field), "max_power": opts.max_dim.unwrap_or(4) });
            classical_checks(t, field, opts.max_dim.unwrap_or(4));
        }
    }
}

/// Runs one suite on a single input.
pub fn run_instance(suite: Suite, input: &Value, opts: &Options) -> Res<SuiteReport> {
    let ctx = &opts.ctx;
    let mut t = Trial::new();
    t.input = input.clone();
    match suite {
        Suite::Roundtrip => match json::decode_object(input, ctx)? {
            Object::Tuple(x) => roundtrip_tuple(&mut t, &x),
            Object::Module(m) => roundtrip_presentation(&mut t, &m),
        },
        Suite::Homset => {
            let (x, y) = json::decode_tuple_pair(input, ctx)?;
            homset_checks(&mut t, &x, &y, None);
        }
        Suite::Derived => {
            let (x, y) = json::decode_tuple_pair(input, ctx)?;
            derived_checks(&mut t, &x, &y, opts.max_degree);
        }
        Suite::Swap => match json::decode_complex(input, ctx)? {
            Complex::Loops(c) => swap_checks(&mut t, &c, Some(&ChainMap::identity(&c))),
            Complex::Modules(_) => return Err(schema("the swap suite needs a complex with host \"loops\"")),
        },
        Suite::Explaw => {
            let x = json::decode_tuple(input, ctx)?;
            if x.n() != 2 {
                return Err(schema("the exponential law suite reads a commuting pair (n = 2)"));
            }
            let lambda = FinPresCat::make_loop(1)?;
            let shape = FinPresCat::product(&lambda, &lambda);
            let d = Diagram::new(shape, x.field(), vec![x.dim()], x.mats().to_vec())?;
            explaw_checks(&mut t, &lambda, &lambda, &d);
        }
        Suite::Restriction => {
            let x = json::decode_tuple(input, ctx)?;
            restriction_checks(&mut t, &x, &[1, 2, 3]);
        }
        Suite::Kernels => {
            if input.get("matrix").is_some() {
                let m = serde_json::from_value::<json::SnfJson>(input.clone())?.decode(ctx)?;
                snf_checks(&mut t, &m);
            } else if input.get("polys").is_some() {
                let (ring, gens) = serde_json::from_value::<json::IdealJson>(input.clone())?.decode(ctx)?;
                let probes = pair_products(&gens);
                groebner_checks(&mut t, &gens, ring.order, &probes);
            } else {
                return Err(schema("the kernels suite reads {\"matrix\": ...} or {\"polys\": ...}"));
            }
        }
        Suite::Koszul => {
            let x = json::decode_tuple(input, ctx)?;
            koszul_checks(&mut t, &x);
        }
        Suite::Classical => return Err(CliError::Usage("the classical suite takes no input file".into())),
    }
    let mut tally = Tally::new();
    tally.add(0, t);
    Ok(tally.finish(suite, None))
}

fn pair_json(x: &CommutingTuple, y: &CommutingTuple) -> Value {
    json!({ "left": json::encode_tuple(x), "right": json::encode_tuple(y) })
}

fn diagram_json(x: &Diagram) -> Value {
    json!({
        "objects": x.shape().objects(),
        "dims": x.dims(),
        "mats": x.mats().iter().map(json::encode_matrix).collect::<Vec<_>>(),
    })
}

fn pair_products(gens: &[Poly]) -> Vec<Poly> {
    let mut out: Vec<Poly> = gens.to_vec();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            out.push(a.mul(b).add(a));
        }
    }
    out
}

fn to_dense(fs: &[Poly]) -> Vec<Dense> {
    fs.iter().map(Dense::from_poly).collect()
}

fn roundtrip_tuple(t: &mut Trial, x: &CommutingTuple) {
    t.check("psi_phi_certified", || {
        let iso = bridge::psi_phi_iso(x)?;
        if iso.dst() != &x.to_diagram() {
            return Ok(Err("certificate has the wrong endpoints".into()));
        }
        let Some(inv) = iso.inverse() else {
            return Ok(Err("certificate is not invertible".into()));
        };
        let one = iso.compose(&inv)? == DiagMorphism::identity(iso.dst());
        let two = inv.compose(&iso)? == DiagMorphism::identity(iso.src());
        if !(one && two) {
            return Ok(Err("certificate composites are not identities".into()));
        }
        // the certificate's source must be the staircase tuple itself
        let back = psi(&phi(x))?;
        Ok(expect(iso.src() == &back.to_diagram(), || format!("dim Ψ(Φ(x)) = {}, dim x = {}", back.dim(), x.dim())))
    });
}

fn roundtrip_presentation(t: &mut Trial, m: &ModulePresentation) {
    t.check("phi_psi_certified", || {
        let (forward, back) = phi_psi_iso(m)?;
        let one = forward.compose(&back)?.equals(&ModMorphism::identity(m))?;
        let two = back.compose(&forward)?.equals(&ModMorphism::identity(forward.src()))?;
        Ok(expect(one && two, || "certificate composites are not identities".into()))
    });
    if m.ring().nvars == 1 {
        t.check("invariant_factors_preserved", || {
            let a = invariant_factors(m)?;
            let b = invariant_factors(&phi(&psi(m)?))?;
            Ok(expect(a == b, || format!("{:?} vs {:?}", a.factors, b.factors)))
        });
        t.check("invariant_factors_oracle", || {
            let x = psi(m)?;
            let ours = to_dense(&invariant_factors(m)?.factors);
            let theirs = oracle::tuple_invariant_factors(&x.mats()[0]);
            Ok(expect(ours == theirs, || "determinantal divisors disagree with the Smith form".into()))
        });
    }
}

fn homset_checks(t: &mut Trial, x: &CommutingTuple, y: &CommutingTuple, rng: Option<&mut SeededRng>) {
    t.check("hom_dims_agree", || {
        let d = hom_dim(&x.to_diagram(), &y.to_diagram())?;
        let m = hom_mod(&phi(x), &phi(y))?.dim;
        Ok(expect(d == m, || format!("diagram side {d}, module side {m}")))
    });
    if x.n() == 1 && y.n() == 1 {
        t.check("hom_dim_oracle", || {
            let d = hom_dim(&x.to_diagram(), &y.to_diagram())?;
            let o = oracle::gcd_pairing(
                &oracle::tuple_invariant_factors(&x.mats()[0]),
                &oracle::tuple_invariant_factors(&y.mats()[0]),
            );
            Ok(expect(d == o, || format!("hom dimension {d}, gcd formula {o}")))
        });
    }
    let (dx, dy) = (x.to_diagram(), y.to_diagram());
    let sample: Res<Vec<DiagMorphism>> = match rng {
        Some(rng) => Ok(vec![random::hom_element(rng, &dx, &dy)]),
        None => hom_space(&dx, &dy).map_err(CliError::from),
    };
    t.check("transport_natural", || {
        let (ix, iy) = (bridge::psi_phi_iso(x)?, bridge::psi_phi_iso(y)?);
        for f in sample? {
            let g = psi_on_morphism(&bridge::phi_on_morphism(&f)?)?;
            if iy.compose(&g)? != f.compose(&ix)? {
                return Ok(Err("Ψ(Φ(f)) does not match f under the canonical isomorphisms".into()));
            }
        }
        Ok(Ok(()))
    });
}

fn derived_checks(t: &mut Trial, x: &CommutingTuple, y: &CommutingTuple, max_degree: usize) {
    let rows = compare_derived(x, y, max_degree);
    let n = x.n();
    t.check(if n == 1 { "derived_agree_one_variable" } else { "derived_agree_two_variables" }, || {
        let rows = rows.clone()?;
        let bad: Vec<String> = rows
            .iter()
            .filter(|r| !r.agrees())
            .map(|r| format!("{:?}^{}: {} vs {}", r.functor, r.degree, r.diagram_side, r.module_side))
            .collect();
        Ok(expect(bad.is_empty(), || bad.join("; ")))
    });
    if n == 1 {
        t.check("module_side_vanishes_above_one", || {
            let rows = rows.clone()?;
            let bad = rows.iter().any(|r| r.degree >= 2 && r.module_side != 0);
            Ok(expect(!bad, || "nonzero module-side Ext or Tor in degree 2".into()))
        });
        t.check("gcd_formula_oracle", || {
            let rows = rows.clone()?;
            let o = oracle::gcd_pairing(
                &oracle::tuple_invariant_factors(&x.mats()[0]),
                &oracle::tuple_invariant_factors(&y.mats()[0]),
            );
            let bad = rows.iter().any(|r| r.degree <= 1 && r.diagram_side != o);
            Ok(expect(!bad, || format!("gcd formula gives {o} in degrees 0 and 1")))
        });
    }
}

fn swap_checks(t: &mut Trial, c: &ChainComplex<DiagramHost>, map: Option<&ChainMap<DiagramHost>>) {
    t.check("swap_round_trip", || {
        let back = unswap(&swap(c)?)?;
        Ok(expect(&back == c, || "unswap(swap(c)) differs from c".into()))
    });
    t.check("homology_objectwise", || {
        let direct = homotopy::homology_dims_per_object(c)?;
        let swapped = swap(c)?;
        for (o, cx) in swapped.complexes.iter().enumerate() {
            let dims = cx.homology_dims()?;
            let expected: Vec<usize> = direct.iter().map(|row| row[o]).collect();
            if dims != expected {
                return Ok(Err(format!("object {o}: {dims:?} through swap, {expected:?} directly")));
            }
        }
        Ok(Ok(()))
    });
    if let Some(f) = map {
        t.check("quasi_iso_preserved", || {
            let whole = f.is_quasi_iso()?;
            let mut parts = true;
            for g in swap_map(f)? {
                parts &= g.is_quasi_iso()?;
            }
            Ok(expect(whole == parts, || format!("quasi-iso {whole} before swap, {parts} after")))
        });
    }
}

fn explaw_checks(t: &mut Trial, left: &FinPresCat, right: &FinPresCat, x: &Diagram) {
    t.check("curry_uncurry", || {
        let c = curry(left, right, x)?;
        c.validate()?;
        let back = uncurry(&c)?;
        back.validate()?;
        Ok(expect(&back == x, || "uncurry(curry(x)) differs from x".into()))
    });
    t.check("uncurry_curry", || {
        let c = curry(left, right, x)?;
        let again = curry(left, right, &uncurry(&c)?)?;
        Ok(expect(again == c, || "curry(uncurry(c)) differs from c".into()))
    });
}

fn restriction_checks(t: &mut Trial, x: &CommutingTuple, powers: &[usize]) {
    for &m in powers {
        t.check("restriction_compatible", || {
            let r = check_restriction_compat(m, x)?;
            Ok(expect(r.isomorphic, || format!("m = {m}: {:?} vs {:?}", r.diagram_side.factors, r.module_side.factors)))
        });
        t.check("restriction_keeps_dimension", || {
            let r = check_restriction_compat(m, x)?;
            let dims = (r.diagram_side.dimension(), r.module_side.dimension());
            Ok(expect(dims == (Some(x.dim()), Some(x.dim())), || format!("m = {m}: dimensions {dims:?}")))
        });
    }
}

fn snf_checks(t: &mut Trial, m: &PolyMatrix) {
    let field = m.ring().field;
    let snf = smith_normal_form(m);
    t.check("snf_product", || {
        let r = snf.clone()?;
        Ok(expect(r.u.mul(m).mul(&r.v) == r.d, || "u·m·v ≠ d".into()))
    });
    t.check("snf_unimodular", || {
        let r = snf.clone()?;
        let du = DenseMatrix::from_poly_matrix(&r.u).determinant(field);
        let dv = DenseMatrix::from_poly_matrix(&r.v).determinant(field);
        Ok(expect(du.is_nonzero_constant() && dv.is_nonzero_constant(), || "a transform has non-unit determinant".into()))
    });
    t.check("snf_divisibility_chain", || {
        let r = snf.clone()?;
        let d = &r.d;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j && !d.get(i, j).is_zero() {
                    return Ok(Err(format!("off-diagonal entry at ({i}, {j})")));
                }
            }
        }
        let diag = to_dense(&r.diagonal());
        for w in diag.windows(2) {
            if !w[0].divides(&w[1]) {
                return Ok(Err("diagonal is not a divisibility chain".into()));
            }
        }
        Ok(expect(diag.iter().all(|p| p.is_zero() || p.monic() == *p), || "diagonal entry not monic".into()))
    });
    t.check("snf_minors_gcd", || {
        let r = snf.clone()?;
        let dm = DenseMatrix::from_poly_matrix(m);
        let diag = to_dense(&r.diagonal());
        let mut prod = Dense::constant(field, field.one());
        for (k, d) in diag.iter().enumerate() {
            prod = prod.mul(d);
            if dm.minors_gcd(field, k + 1) != prod.monic() {
                return Ok(Err(format!("gcd of {}-minors differs from d₁⋯d_{}", k + 1, k + 1)));
            }
        }
        Ok(Ok(()))
    });
}

fn groebner_checks(t: &mut Trial, gens: &[Poly], order: MonomialOrder, probes: &[Poly]) {
    let gb: Res<GroebnerBasis> = buchberger(gens, order).map_err(CliError::from);
    let polys = gb.as_ref().map(GroebnerBasis::polys).map_err(|e| e.to_string());
    t.check("s_pairs_reduce_to_zero", || {
        let ps = polys.clone().map_err(CliError::Schema)?;
        Ok(expect(oracle::s_pairs_reduce_to_zero(&ps), || "an S-polynomial has nonzero remainder".into()))
    });
    t.check("generators_reduce_to_zero", || {
        let ps = polys.clone().map_err(CliError::Schema)?;
        Ok(expect(gens.iter().all(|g| oracle::divide(g, &ps).is_zero()), || "an input generator is not in the span".into()))
    });
    t.check("normal_form_idempotent", || {
        let ps = polys.clone().map_err(CliError::Schema)?;
        let gb = gb.as_ref().map_err(|e| CliError::Schema(e.to_string()))?;
        for f in probes.iter().chain(gens) {
            let f = f.with_order(order);
            let nf = gb.normal_form_poly(&f)?;
            if gb.normal_form_poly(&nf)? != nf {
                return Ok(Err(format!("normal form of {f} is not fixed")));
            }
            if oracle::divide(&f, &ps) != nf {
                return Ok(Err(format!("normal form of {f} differs from the textbook remainder")));
            }
        }
        Ok(Ok(()))
    });
}

fn koszul_checks(t: &mut Trial, x: &CommutingTuple) {
    let k = koszul_resolution(x);
    t.check("koszul_positive_homology_vanishes", || {
        let k = k.clone()?;
        for i in 1..=k.hi() {
            let h = k.homology(i)?;
            if !k.host().is_zero_object(&h)? {
                return Ok(Err(format!("H_{i} ≠ 0")));
            }
        }
        Ok(Ok(()))
    });
    t.check("koszul_h0_is_phi", || {
        let k = k.clone()?;
        let h0 = k.homology(0)?;
        let same = h0.gens() == x.dim() && same_quotient(&h0, &phi(x))?;
        let dim = k.host().dimension(&h0)?;
        Ok(expect(same && dim == x.dim(), || format!("H₀ has dimension {dim}, Φ(x) has {}", x.dim())))
    });
}

fn classical_checks(t: &mut Trial, field: Field, max_power: usize) {
    t.check("ext_residue_field_two_variables", || {
        let ring = PolyRing::new(field, 2, MonomialOrder::DegRevLex);
        let k = ModulePresentation::cyclic(ring, &[Poly::var(ring, 0), Poly::var(ring, 1)]);
        let module: Vec<usize> =
            (0..=2).map(|i| Ok(ext_tor_mod(&k, &k, i, DerivedFunctor::Ext)?.dimension)).collect::<Res<_>>()?;
        let point = one_dim(field, 2)?;
        let diagram: Vec<usize> =
            (0..=2).map(|i| Ok(homotopy::ext_diagram_side(&point, &point, i)?)).collect::<Res<_>>()?;
        Ok(expect(module == [1, 2, 1] && diagram == [1, 2, 1], || format!("module {module:?}, diagram {diagram:?}")))
    });
    for (name, which) in [("ext1_cyclic_is_min", DerivedFunctor::Ext), ("tor1_cyclic_is_min", DerivedFunctor::Tor)] {
        t.check(name, || {
            let ring = PolyRing::univariate(field);
            for a in 1..=max_power {
                for b in 1..=max_power {
                    let pa = ModulePresentation::cyclic(ring, &[Poly::var(ring, 0).pow(a as u32)]);
                    let pb = ModulePresentation::cyclic(ring, &[Poly::var(ring, 0).pow(b as u32)]);
                    let module = ext_tor_mod(&pa, &pb, 1, which)?.dimension;
                    let (ja, jb) = (jordan(field, a)?, jordan(field, b)?);
                    let diagram = match which {
                        DerivedFunctor::Ext => homotopy::ext_diagram_side(&ja, &jb, 1)?,
                        DerivedFunctor::Tor => homotopy::tor_diagram_side(&ja, &jb, 1)?,
                    };
                    let gcd = Dense::power_of_t(field, a).gcd(&Dense::power_of_t(field, b)).degree().unwrap_or(0);
                    if module != a.min(b) || diagram != a.min(b) || gcd != a.min(b) {
                        return Ok(Err(format!("a = {a}, b = {b}: module {module}, diagram {diagram}, gcd {gcd}")));
                    }
                }
            }
            Ok(Ok(()))
        });
    }
}

fn one_dim(field: Field, n: usize) -> Res<CommutingTuple> {
    Ok(CommutingTuple::new(field, 1, vec![Matrix::zeros(field, 1, 1); n])?)
}

/// Nilpotent Jordan block of size `a`, i.e. `k[T]/(T^a)`.
fn jordan(field: Field, a: usize) -> Res<CommutingTuple> {
    let m = Matrix::from_fn(field, a, a, |i, j| if i + 1 == j { field.one() } else { field.zero() });
    Ok(CommutingTuple::new(field, a, vec![m])?)
}

/// Runs `suite`, or every suite for `None`, on random inputs.
pub fn run_all(opts: &Options) -> Res<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, opts)).collect()
}
