//! Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
//! any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tangle_kh::complex::{differential_entries, quantum_degree, BigradedComplex};
use tangle_kh::diagram::{Attachment, Placement, Sign, TangleDiagram};
use tangle_kh::generate::{random_diagram, random_simple_tangle};
use tangle_kh::homology::{graded_euler_state_sum, jones_specialization, poincare_of};
use tangle_kh::linalg::Field;
use tangle_kh::reduction::{arc_reduction_theorem_details, generator_expansion, reduce};
use tangle_kh::tables::{fixtures, verify_tables, RowStatus, Table};

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(number: u32, name: &str, budget: Option<Duration>, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed < b);
    let ok = outcome.ok && in_time;
    let timing = match budget {
        Some(b) => format!("{:.2} s, budget {} s", elapsed.as_secs_f64(), b.as_secs()),
        None => format!("{:.2} s", elapsed.as_secs_f64()),
    };
    println!("{} criterion {number} {name}: {} [{timing}]", if ok { "PASS" } else { "FAIL" }, outcome.detail);
    ok
}

fn table_rows(table: Table) -> Outcome {
    let reports = verify_tables(Some(table), Field::Rational).expect("fixtures are under the cap");
    let mut bad = Vec::new();
    let mut flagged = 0;
    for r in &reports {
        match (&r.status, r.entry.corrected.is_some()) {
            (RowStatus::Pass, false) => {}
            (RowStatus::Discrepancy, true) => {
                flagged += 1;
                println!("    flagged: {r}");
            }
            _ => bad.push(r.to_string()),
        }
    }
    for b in &bad {
        println!("    {b}");
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!(
            "{} of {} rows exact, {flagged} flagged rows match the closed form instead of the printed typo",
            reports.len() - bad.len() - flagged,
            reports.len()
        ),
    }
}

fn arc_reduction_sweep() -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for (name, d) in fixtures().into_iter().filter(|(_, d)| d.crossing_count() <= 4) {
        for boundary in d.boundary_points() {
            for sign in [Sign::Positive, Sign::Negative] {
                for placement in [Placement::Over, Placement::Under] {
                    let attach = Attachment { boundary: boundary.clone(), placement, sign };
                    let check = arc_reduction_theorem_details(&d, &attach, Field::Rational).expect("attachable");
                    cases += 1;
                    if !check.holds() {
                        failures.push(format!("{name} at {boundary} {sign:?} {placement:?}"));
                    }
                }
            }
        }
    }
    for f in &failures {
        println!("    mismatch: {f}");
    }
    Outcome { ok: failures.is_empty() && cases > 0, detail: format!("{} of {cases} pendant-arc extensions match", cases - failures.len()) }
}

fn simple_tangles() -> Vec<TangleDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..200)
        .map(|_| {
            let arcs = rng.random_range(1..=6);
            random_simple_tangle(&mut rng, arcs)
        })
        .collect()
}

fn random_diagrams() -> Vec<TangleDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..200).map(|_| random_diagram(&mut rng, 0..=6)).collect()
}

fn closed_form() -> Outcome {
    let tangles = simple_tangles();
    let mismatches = tangles
        .iter()
        .filter(|d| reduce(d).expect("simple").1 != poincare_of(d, Field::Rational).expect("small"))
        .count();
    let crossings: usize = tangles.iter().map(TangleDiagram::crossing_count).sum();
    Outcome {
        ok: mismatches == 0,
        detail: format!("{} of {} simple tangles agree ({crossings} crossings in total)", tangles.len() - mismatches, tangles.len()),
    }
}

fn euler() -> Outcome {
    let diagrams: Vec<TangleDiagram> = fixtures().into_iter().map(|(_, d)| d).chain(random_diagrams()).collect();
    let mismatches = diagrams
        .iter()
        .filter(|d| jones_specialization(&poincare_of(d, Field::Rational).unwrap()) != graded_euler_state_sum(d))
        .count();
    let simple = diagrams.iter().filter(|d| d.is_simple() && !d.has_circles()).count();
    Outcome {
        ok: mismatches == 0,
        detail: format!("{} of {} diagrams agree ({simple} simple)", diagrams.len() - mismatches, diagrams.len()),
    }
}

fn structure() -> Outcome {
    let diagrams: Vec<TangleDiagram> =
        fixtures().into_iter().map(|(_, d)| d).chain(random_diagrams()).chain(simple_tangles()).collect();
    let mut complexes = 0;
    let mut entries = 0;
    let mut bad = 0;
    for d in &diagrams {
        for field in [Field::Rational, Field::Gf2] {
            let c = BigradedComplex::build(d, field).unwrap();
            complexes += 1;
            let mut ok = c.check_d_squared() && c.check_gradings();
            for (src, tgt, _) in differential_entries(&c) {
                entries += 1;
                let q = |g: &tangle_kh::complex::GeneratorLabel, k: i32| quantum_degree(k, c.n_plus, c.n_minus, g.theta);
                let k = src.state.ell() as i32 - c.n_minus as i32;
                ok &= tgt.state.ell() == src.state.ell() + 1 && q(&src, k) == q(&tgt, k + 1);
            }
            bad += usize::from(!ok);
        }
    }
    let mut triples = 0;
    let mut bad_totals = 0;
    for crossings in 0..=10usize {
        for n_plus in 0..=crossings {
            for arcs in (crossings + 1)..=(crossings + 3) {
                triples += 1;
                let m = generator_expansion(arcs, n_plus, crossings - n_plus).unwrap();
                bad_totals += usize::from(m.total() != 1u64 << crossings);
            }
        }
    }
    Outcome {
        ok: bad == 0 && bad_totals == 0,
        detail: format!(
            "{} of {complexes} complexes satisfy d∘d = 0 and preserve q on {entries} entries; {} of {triples} expansions total 2^(n+ + n-)",
            complexes - bad,
            triples - bad_totals
        ),
    }
}

fn multiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for _ in 0..50 {
        let a = random_diagram(&mut rng, 0..=3);
        let b = random_diagram(&mut rng, 0..=3);
        let p = |d: &TangleDiagram| poincare_of(d, Field::Rational).unwrap();
        bad += usize::from(p(&a.disjoint_union(&b)) != &p(&a) * &p(&b));
    }
    Outcome { ok: bad == 0, detail: format!("{} of 50 random pairs multiply", 50 - bad) }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "Table 1", Some(secs(1)), || table_rows(Table::One)),
        run(2, "Table 2", Some(secs(5)), || table_rows(Table::Two)),
        run(3, "arc reduction theorem", Some(secs(60)), arc_reduction_sweep),
        run(4, "closed form vs brute force", Some(secs(60)), closed_form),
        run(5, "Euler oracle", None, euler),
        run(6, "structural invariants", None, structure),
        run(7, "disjoint-union multiplicativity", None, multiplicativity),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed} of {} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
