//! Seeded instance generation, verification suites and JSON reports.
//!
//! Instances within a suite run on the rayon pool; reports are assembled in
//! instance order, so output is byte-identical for a fixed seed unless
//! timings are requested.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use cyclic_higgs::clifford::{clifford_iso_check, commutator_trace_check, fiber_clifford_report, EVEN_BASIS_NAMES};
use cyclic_higgs::correspondence::{check_divisor_relation, divisor_of_function, forward_spectral_data, round_trip};
use cyclic_higgs::higgs::{
    common_component_check, from_spectral_module, random_cyclic_data, to_spectral_module, verify_loop_relation, verify_support,
    CyclicHiggsData,
};
use cyclic_higgs::json::{xt_to_json, FieldJson};
use cyclic_higgs::polyalg::roots::mth_roots;
use cyclic_higgs::quiver::{pushforward_kernel_check, spans_diagonal_image, truncated_center, CyclicQuiver};
use cyclic_higgs::reduction::{fiber_at, matrix_iso, rank_check, simplicity_check};
use cyclic_higgs::{Error, Field, Scalar, XTPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

/// Process exit codes.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Unsupported(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Failed(_) => EXIT_FAIL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Unsupported(s) => write!(f, "unsupported: {s}"),
            CliError::Failed(s) => write!(f, "failed: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::CharacteristicTwo => CliError::Unsupported(e.to_string()),
            Error::Parse(_) | Error::Shape(_) | Error::InvalidField(_) | Error::NonSquare { .. } | Error::MismatchedQuiver(..) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceFilter {
    /// Equal dims and a smooth irreducible common curve.
    SmoothIrreducible,
}

impl FromStr for InstanceFilter {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "smooth" | "smooth-irreducible" => Ok(InstanceFilter::SmoothIrreducible),
            _ => Err(CliError::Usage(format!("unknown filter {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub field: Field,
    pub dims: Vec<usize>,
    pub degree_cap: usize,
    pub seed: u64,
    pub filter: Option<InstanceFilter>,
    pub retry_budget: usize,
}

impl InstanceSpec {
    pub fn new(field: Field, dims: Vec<usize>, degree_cap: usize, seed: u64) -> Self {
        InstanceSpec { field, dims, degree_cap, seed, filter: None, retry_budget: 100 }
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }
}

pub fn passes_filter(h: &CyclicHiggsData, filter: InstanceFilter) -> bool {
    match filter {
        InstanceFilter::SmoothIrreducible => forward_spectral_data(h).is_ok(),
    }
}

/// Deterministic in `spec`; retries draw fresh entries from the same stream.
pub fn random_instance(spec: &InstanceSpec) -> Result<CyclicHiggsData, CliError> {
    if spec.dims.is_empty() || spec.dims.contains(&0) {
        return Err(CliError::Usage(format!("dims must be nonempty and positive, got {:?}", spec.dims)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.retry_budget.max(1) {
        let h = random_cyclic_data(spec.field, &spec.dims, spec.degree_cap, &mut rng)?;
        match spec.filter {
            Some(f) if !passes_filter(&h, f) => continue,
            _ => return Ok(h),
        }
    }
    Err(CliError::Failed(format!("filter exhausted the retry budget of {} draws", spec.retry_budget)))
}

/// Independent per-instance seed.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng.gen()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: Value) -> Self {
        Check { name: name.into(), pass, witness, millis: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub field: FieldJson,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, field: Field, seed: u64, checks: Vec<Check>) -> Self {
        Report { suite: suite.to_string(), field: field.into(), seed, pass: checks.iter().all(|c| c.pass), checks }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("{}: {passed}/{} checks passed\n", self.suite, self.checks.len()));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Center,
    Reduce,
    Spectral,
    Correspond,
    Clifford,
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "center" => Ok(Suite::Center),
            "reduce" => Ok(Suite::Reduce),
            "spectral" => Ok(Suite::Spectral),
            "correspond" => Ok(Suite::Correspond),
            "clifford" => Ok(Suite::Clifford),
            _ => Err(CliError::Usage(format!("unknown suite {s:?}"))),
        }
    }
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Center => "center",
            Suite::Reduce => "reduce",
            Suite::Spectral => "spectral",
            Suite::Correspond => "correspond",
            Suite::Clifford => "clifford",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub field: Field,
    pub seed: u64,
    /// Number of random instances; `None` picks the suite default.
    pub count: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub timing: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { field: Field::default_prime(), seed: 0, count: None, m: None, n: None, timing: false }
    }
}

fn timed(timing: bool, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let mut c = f();
    if timing {
        c.millis = Some(start.elapsed().as_millis() as u64);
    }
    c
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Report, CliError> {
    let checks = match suite {
        Suite::Center => center_suite(opts)?,
        Suite::Reduce => reduce_suite(opts),
        Suite::Spectral => spectral_suite(opts),
        Suite::Correspond => correspond_suite(opts),
        Suite::Clifford => clifford_suite(opts)?,
    };
    Ok(Report::new(suite.name(), opts.field, opts.seed, checks))
}

pub fn center_check(field: Field, m: usize, n: usize) -> Result<Check, CliError> {
    let quiver = CyclicQuiver::new(m)?;
    let tc = truncated_center(quiver, field, n);
    let expected = n / m + 1;
    let diagonal = spans_diagonal_image(quiver, field, n, &tc.basis);
    let pass = tc.basis.len() == expected && diagonal && tc.is_free_over_cap();
    Ok(Check::new(
        format!("center m={m} N={n}"),
        pass,
        json!({"dimension": tc.basis.len(), "expected": expected, "diagonal_image": diagonal, "free_over_cap": tc.is_free_over_cap()}),
    ))
}

pub fn pushforward_check(field: Field, m: usize, n: usize) -> Result<Check, CliError> {
    let r = pushforward_kernel_check(CyclicQuiver::new(m)?, field, n)?;
    Ok(Check::new(
        format!("pushforward m={m} N={n}"),
        r.holds(),
        json!({"box_dimension": r.box_dimension, "kernel_dimension": r.kernel_dimension, "ideal_dimension": r.ideal_dimension, "ideal_in_kernel": r.ideal_in_kernel}),
    ))
}

fn center_suite(opts: &SuiteOptions) -> Result<Vec<Check>, CliError> {
    let ms: Vec<usize> = opts.m.map_or_else(|| (1..=4).collect(), |m| vec![m]);
    let mut checks = Vec::new();
    for &m in &ms {
        let n = opts.n.unwrap_or(3 * m);
        checks.push(timed(opts.timing, || center_check(opts.field, m, n).unwrap_or_else(|e| Check::new("center", false, json!(e.to_string())))));
    }
    for &m in ms.iter().filter(|&&m| m <= 3) {
        checks.push(timed(opts.timing, || pushforward_check(opts.field, m, 2 * m).unwrap_or_else(|e| Check::new("pushforward", false, json!(e.to_string())))));
    }
    Ok(checks)
}

/// A finite field small enough for exhaustive fiber scans.
pub fn scan_field(field: Field) -> Field {
    match field {
        Field::Prime(p) if p <= 101 => field,
        _ => Field::prime(7).expect("7 is prime"),
    }
}

/// Simplicity against `t0 ≠ 0` for every `t0` in `field`. A fiber of `Â(1)`
/// is the field itself, so `m = 1` is simple everywhere.
pub fn simplicity_scan(field: Field, m: usize) -> Check {
    let mut mismatches = Vec::new();
    for t0 in field.elements().expect("finite field") {
        let expected = m == 1 || !t0.is_zero();
        if simplicity_check(&fiber_at(m, &field.zero(), &t0)) != expected {
            mismatches.push(t0.to_string());
        }
    }
    Check::new(format!("simplicity m={m} over {field}"), mismatches.is_empty(), json!({"mismatches": mismatches}))
}

/// `matrix_iso` at every `t0 ≠ 0` with an `m`-th root and every such root.
pub fn matrix_iso_scan(field: Field, m: usize) -> Check {
    let (mut verified, mut failed) = (0usize, Vec::new());
    for t0 in field.elements().expect("finite field").filter(|t| !t.is_zero()) {
        let fiber = fiber_at(m, &field.zero(), &t0);
        for s0 in mth_roots(&t0, m).unwrap_or_default() {
            match matrix_iso(&fiber, &s0) {
                Ok(iso) if iso.verified => verified += 1,
                _ => failed.push(format!("t0={t0} s0={s0}")),
            }
        }
    }
    Check::new(format!("matrix_iso m={m} over {field}"), failed.is_empty() && verified > 0, json!({"verified": verified, "failed": failed}))
}

fn reduce_suite(opts: &SuiteOptions) -> Vec<Check> {
    let mut checks: Vec<Check> = (1..=6)
        .map(|m| Check::new(format!("rank m={m}"), rank_check(m) == m * m, json!({"rank": rank_check(m)})))
        .collect();
    let scan = scan_field(opts.field);
    for m in 1..=3 {
        checks.push(timed(opts.timing, || matrix_iso_scan(scan, m)));
    }
    for m in 1..=4 {
        checks.push(timed(opts.timing, || simplicity_scan(scan, m)));
    }
    checks
}

fn scalar_string(s: &Scalar) -> String {
    s.to_string()
}

/// Loop relation, support and exact round trip for one random instance.
pub fn spectral_instance_check(field: Field, seed: u64, index: usize) -> Check {
    let s = instance_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let m = rng.gen_range(1..=4);
    let dims: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
    let spec = InstanceSpec::new(field, dims.clone(), 2, rng.gen());
    let name = format!("spectral instance {index}");
    let h = match random_instance(&spec) {
        Ok(h) => h,
        Err(e) => return Check::new(name, false, json!({"error": e.to_string()})),
    };
    let sq = to_spectral_module(&h);
    let loop_ok = verify_loop_relation(&sq);
    let support_ok = (0..m).all(|i| verify_support(&sq, i));
    let round_ok = from_spectral_module(&sq).map(|h2| h2 == h).unwrap_or(false);
    Check::new(name, loop_ok && support_ok && round_ok, json!({"dims": dims, "loop_relation": loop_ok, "support": support_ok, "round_trip": round_ok}))
}

/// Strict coincidence of the spectral curves for dims `(p, …, p)`.
pub fn equal_dims_curve_check(field: Field, seed: u64, index: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, index));
    let m = rng.gen_range(1..=4);
    let p = rng.gen_range(1..=3);
    let h = random_instance(&InstanceSpec::new(field, vec![p; m], 2, rng.gen())).expect("dims are positive");
    let r = common_component_check(&h);
    let pass = r.strict && r.q.iter().all(|&q| q == 0);
    Check::new(format!("common curve (p={p}, m={m}) instance {index}"), pass, json!({"q": r.q, "strict": r.strict}))
}

/// `(q_i, squarefree match)` for dims `(p+1, p, …, p)`.
pub fn unequal_dims_profile(field: Field, seed: u64, index: usize) -> (Vec<usize>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, index).wrapping_add(1));
    let m = rng.gen_range(2..=4);
    let p = rng.gen_range(1..=2);
    let mut dims = vec![p; m];
    dims[0] += 1;
    let h = random_instance(&InstanceSpec::new(field, dims, 2, rng.gen())).expect("dims are positive");
    let r = common_component_check(&h);
    (r.q, r.squarefree_match)
}

fn spectral_suite(opts: &SuiteOptions) -> Vec<Check> {
    let count = opts.count.unwrap_or(100);
    let mut checks: Vec<Check> = (0..count)
        .into_par_iter()
        .map(|i| timed(opts.timing, || spectral_instance_check(opts.field, opts.seed, i)))
        .collect();
    checks.extend((0..count).into_par_iter().map(|i| equal_dims_curve_check(opts.field, opts.seed, i)).collect::<Vec<_>>());
    let profiles: Vec<(Vec<usize>, bool)> =
        (0..count.div_ceil(2)).into_par_iter().map(|i| unequal_dims_profile(opts.field, opts.seed, i)).collect();
    let squarefree = profiles.iter().filter(|(_, s)| *s).count();
    let q0_positive = profiles.iter().filter(|(q, _)| q[0] >= 1).count();
    // distribution only: genericity can fail, so no count is asserted
    checks.push(Check::new(
        "unequal dims distribution",
        true,
        json!({"instances": profiles.len(), "squarefree_match": squarefree, "q0_at_least_1": q0_positive}),
    ));
    checks
}

/// One random instance of the supported regime: divisor relation and round trip.
pub fn correspond_instance_check(field: Field, seed: u64, index: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, index));
    let p = rng.gen_range(1..=2);
    let m = rng.gen_range(1..=3);
    let mut spec = InstanceSpec::new(field, vec![p; m], 1, rng.gen());
    spec.filter = Some(InstanceFilter::SmoothIrreducible);
    let name = format!("correspond instance {index} (p={p}, m={m})");
    let h = match random_instance(&spec) {
        Ok(h) => h,
        Err(e) => return Check::new(name, false, json!({"error": e.to_string()})),
    };
    let run = || -> cyclic_higgs::Result<Value> {
        let sd = forward_spectral_data(&h)?;
        let relation = check_divisor_relation(&sd.divisors, &sd.c)?;
        let lengths: Vec<usize> = sd.divisors.iter().map(|d| d.length()).collect();
        let div_t = divisor_of_function(&XTPoly::t(field), &sd.c)?.length();
        let rt = round_trip(&h, cyclic_higgs::correspondence::DEFAULT_INTERTWINER_DEGREE)?;
        Ok(json!({
            "p": p,
            "m": m,
            "c": xt_to_json(&sd.c),
            "relation": relation,
            "lengths": lengths,
            "length_div_t": div_t,
            "spectral_invariants_equal": rt.spectral_invariants_equal,
            "intertwiner_found": rt.intertwiner_found(),
        }))
    };
    match run() {
        Ok(w) => {
            let lengths_ok = w["lengths"].as_array().map(|l| l.iter().filter_map(Value::as_u64).sum::<u64>()) == w["length_div_t"].as_u64();
            let intertwiner_ok = p != 1 || w["intertwiner_found"] == true;
            let pass = w["relation"] == true && lengths_ok && w["spectral_invariants_equal"] == true && intertwiner_ok;
            Check::new(name, pass, w)
        }
        Err(e) => Check::new(name, false, json!({"error": e.to_string()})),
    }
}

fn correspond_suite(opts: &SuiteOptions) -> Vec<Check> {
    let count = opts.count.unwrap_or(20);
    (0..count)
        .into_par_iter()
        .map(|i| timed(opts.timing, || correspond_instance_check(opts.field, opts.seed, i)))
        .collect()
}

fn element_strings(v: &[XTPoly]) -> Value {
    json!(v.iter().map(xt_to_json).collect::<Vec<_>>())
}

fn clifford_suite(opts: &SuiteOptions) -> Result<Vec<Check>, CliError> {
    let field = opts.field;
    let r = clifford_iso_check(field)?;
    let mut checks: Vec<Check> = r
        .products
        .iter()
        .map(|p| {
            Check::new(
                format!("product b{:?} * b{:?}", p.left, p.right),
                p.holds(),
                json!({"basis": EVEN_BASIS_NAMES, "expected": element_strings(&p.expected), "actual": element_strings(&p.actual)}),
            )
        })
        .collect();
    checks.push(Check::new("discriminant is unit * t", r.discriminant_is_unit_t, json!({"discriminant": xt_to_json(&r.discriminant)})));
    checks.push(Check::new("even Clifford associativity", r.associative, json!({"triples": 64})));
    checks.push(Check::new("unit and bijectivity", r.unit_preserved && r.bijective, json!({"unit": r.unit_preserved, "bijective": r.bijective})));
    checks.push(Check::new(
        "Peirce search",
        r.peirce.unique_up_to_units,
        json!({"dim_01": r.peirce.dim_01, "dim_10": r.peirce.dim_10}),
    ));
    checks.push(Check::new("commutator traces", commutator_trace_check(field, &[])?, json!({"pairs": 16})));
    let scan = scan_field(field);
    let verdicts = scan
        .elements()
        .expect("finite field")
        .map(|t0| fiber_clifford_report(&t0))
        .collect::<cyclic_higgs::Result<Vec<_>>>()?;
    let bad: Vec<String> = verdicts.iter().filter(|v| !v.consistent()).map(|v| scalar_string(&v.t0)).collect();
    checks.push(Check::new(format!("fiber verdicts over {scan}"), bad.is_empty(), json!({"inconsistent": bad})));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_instance_is_deterministic() {
        let spec = InstanceSpec::new(Field::default_prime(), vec![2, 1], 2, 1);
        let a = random_instance(&spec).unwrap();
        assert_eq!(a, random_instance(&spec).unwrap());
        assert_eq!(a.phi()[0].shape(), (1, 2));
        assert_eq!(a.phi()[1].shape(), (2, 1));
    }

    #[test]
    fn smooth_filter_on_rank_one_pairs() {
        let mut spec = InstanceSpec::new(Field::default_prime(), vec![1, 1], 1, 5);
        spec.filter = Some(InstanceFilter::SmoothIrreducible);
        let h = random_instance(&spec).unwrap();
        assert!(passes_filter(&h, InstanceFilter::SmoothIrreducible));
    }

    #[test]
    fn exhausted_filter_is_reported() {
        // unequal dims never reach the supported regime
        let mut spec = InstanceSpec::new(Field::default_prime(), vec![2, 1], 1, 0);
        spec.filter = Some(InstanceFilter::SmoothIrreducible);
        spec.retry_budget = 5;
        assert_eq!(random_instance(&spec).unwrap_err().exit_code(), EXIT_FAIL);
        let zero_dim = InstanceSpec::new(Field::default_prime(), vec![1, 0], 1, 0);
        assert_eq!(random_instance(&zero_dim).unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn center_suite_example() {
        let opts = SuiteOptions { m: Some(2), n: Some(4), ..Default::default() };
        let r = run_suite(Suite::Center, &opts).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks[0].witness["dimension"], 3);
    }

    #[test]
    fn clifford_suite_has_sixteen_products() {
        let r = run_suite(Suite::Clifford, &SuiteOptions::default()).unwrap();
        assert!(r.pass, "{}", r.summary());
        assert_eq!(r.checks.iter().filter(|c| c.name.starts_with("product")).count(), 16);
    }

    #[test]
    fn reports_are_byte_identical() {
        let opts = SuiteOptions { count: Some(4), seed: 9, ..Default::default() };
        let a = run_suite(Suite::Correspond, &opts).unwrap().to_json();
        assert_eq!(a, run_suite(Suite::Correspond, &opts).unwrap().to_json());
        assert!(!a.contains("millis"));
    }

    #[test]
    fn unknown_suite_is_a_usage_error() {
        assert_eq!(Suite::from_str("nope").unwrap_err().exit_code(), EXIT_USAGE);
    }
}
