//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion runs the matching verification suite with the default
//! trial counts and seed 0, then checks that every property held and that the
//! expected number of instances was actually exercised.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use loopspace::verify::{run_suite, Options, Suite, SuiteReport};

struct Criterion {
    number: usize,
    title: &'static str,
    suite: Suite,
    /// `(check, number of instances it must have passed)`.
    counts: &'static [(&'static str, usize)],
    time_limit: Option<Duration>,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        number: 1,
        title: "round trips through modules and tuples are certified isomorphisms",
        suite: Suite::Roundtrip,
        counts: &[("psi_phi_certified", 200), ("phi_psi_certified", 100)],
        time_limit: Some(Duration::from_secs(30)),
    },
    Criterion {
        number: 2,
        title: "hom spaces have equal dimension on both sides",
        suite: Suite::Homset,
        counts: &[("hom_dims_agree", 100), ("hom_dim_oracle", 100)],
        time_limit: None,
    },
    Criterion {
        number: 3,
        title: "Ext and Tor agree between Koszul and Groebner pipelines",
        suite: Suite::Derived,
        counts: &[
            ("derived_agree_one_variable", 50),
            ("module_side_vanishes_above_one", 50),
            ("derived_agree_two_variables", 30),
        ],
        time_limit: None,
    },
    Criterion {
        number: 4,
        title: "classical Ext and Tor dimensions",
        suite: Suite::Classical,
        counts: &[("ext_residue_field_two_variables", 1), ("ext1_cyclic_is_min", 1), ("tor1_cyclic_is_min", 1)],
        time_limit: None,
    },
    Criterion {
        number: 5,
        title: "swapping complexes of diagrams and diagrams of complexes",
        suite: Suite::Swap,
        counts: &[("swap_round_trip", 50), ("homology_objectwise", 50), ("quasi_iso_preserved", 20)],
        time_limit: None,
    },
    Criterion {
        number: 6,
        title: "curry and uncurry are inverse",
        suite: Suite::Explaw,
        counts: &[("curry_uncurry", 100), ("uncurry_curry", 100)],
        time_limit: None,
    },
    Criterion {
        number: 7,
        title: "restriction along powers matches restriction of scalars",
        suite: Suite::Restriction,
        counts: &[("restriction_compatible", 50)],
        time_limit: None,
    },
    Criterion {
        number: 8,
        title: "Smith forms and Groebner bases are certified",
        suite: Suite::Kernels,
        counts: &[
            ("snf_product", 200),
            ("snf_unimodular", 200),
            ("snf_divisibility_chain", 200),
            ("snf_minors_gcd", 200),
            ("s_pairs_reduce_to_zero", 100),
            ("normal_form_idempotent", 100),
        ],
        time_limit: None,
    },
    Criterion {
        number: 9,
        title: "Koszul complexes resolve the tuple's module",
        suite: Suite::Koszul,
        counts: &[("koszul_positive_homology_vanishes", 50), ("koszul_h0_is_phi", 50)],
        time_limit: None,
    },
];

fn judge(c: &Criterion, report: &SuiteReport, elapsed: Duration) -> Result<String, String> {
    for &(name, want) in c.counts {
        let got = report.check(name).map_or(0, |t| t.passed);
        let failed = report.check(name).map_or(0, |t| t.failed);
        if failed > 0 || got != want {
            return Err(format!("{name}: {got} passed, {failed} failed, expected {want}"));
        }
    }
    if !report.passed() {
        let cx = report.counterexample.as_ref().map_or(String::new(), |c| format!("{}: {}", c.check, c.detail));
        return Err(format!("suite failed: {cx}"));
    }
    if let Some(limit) = c.time_limit {
        if elapsed > limit {
            return Err(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()));
        }
    }
    let summary: Vec<String> = c.counts.iter().map(|(n, k)| format!("{n} {k}/{k}")).collect();
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let opts = Options::default();
    let start = Instant::now();
    let mut all_ok = true;
    for c in &CRITERIA {
        let t0 = Instant::now();
        let result = run_suite(c.suite, &opts).map_err(|e| e.to_string());
        let elapsed = t0.elapsed();
        let verdict = result.and_then(|r| judge(c, &r, elapsed));
        match verdict {
            Ok(summary) => println!("criterion {}: PASS {} [{summary}] ({:.1}s)", c.number, c.title, elapsed.as_secs_f64()),
            Err(why) => {
                all_ok = false;
                println!("criterion {}: FAIL {} [{why}] ({:.1}s)", c.number, c.title, elapsed.as_secs_f64());
            }
        }
    }
    let total = start.elapsed();
    let in_budget = total <= Duration::from_secs(120);
    println!(
        "all suites: {:.1}s ({})",
        total.as_secs_f64(),
        if in_budget { "within the two minute budget" } else { "over the two minute budget" }
    );
    if all_ok && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
