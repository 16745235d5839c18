use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tangle_kh::complex::{differential_entries, BigradedComplex};
use tangle_kh::diagram::{State, TangleDiagram};
use tangle_kh::generate::{random_diagram, random_simple_tangle};
use tangle_kh::homology::{betti, graded_euler_state_sum, jones_specialization, poincare_of, poincare_polynomial};
use tangle_kh::linalg::{Field, Gf2, Rational, SparseMatrix};
use tangle_kh::reduction::{generator_expansion, reduce, simple_poincare};

fn diagram(seed: u64, max_crossings: usize) -> TangleDiagram {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), 1..=max_crossings)
}

fn small_matrix(seed: u64) -> Vec<Vec<i64>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (r, c) = (rng.random_range(1..6), rng.random_range(1..6));
    (0..r).map(|_| (0..c).map(|_| rng.random_range(-1..=1)).collect()).collect()
}

fn to_q(m: &[Vec<i64>]) -> SparseMatrix<Rational> {
    SparseMatrix::<i64>::from_dense_int(m).to_field()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(seed in any::<u64>()) {
        let m = to_q(&small_matrix(seed));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rational_rank_dominates_gf2_rank(seed in any::<u64>()) {
        let m = SparseMatrix::<i64>::from_dense_int(&small_matrix(seed));
        prop_assert!(m.to_field::<Rational>().rank() >= m.to_field::<Gf2>().rank());
    }

    #[test]
    fn elimination_reproduces_rows(seed in any::<u64>()) {
        let m = to_q(&small_matrix(seed));
        let e = m.eliminate();
        prop_assert_eq!(e.rank, m.rank());
        prop_assert_eq!(e.lower.mul(&e.upper).unwrap(), m);
    }

    #[test]
    fn serialize_round_trips(seed in any::<u64>()) {
        let d = diagram(seed, 6);
        prop_assert_eq!(TangleDiagram::parse(&d.serialize()).unwrap(), d.clone());
        prop_assert_eq!(TangleDiagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn resolutions_match_boundary(seed in any::<u64>()) {
        let d = diagram(seed, 5);
        let n = d.crossing_count();
        for s in State::all(n) {
            let r = d.resolve(&s).unwrap();
            let mut ends: Vec<usize> = r.arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
            ends.sort_unstable();
            prop_assert_eq!(ends, (0..d.boundary_points().len()).collect::<Vec<_>>());
            prop_assert!(r.circle_count >= d.free_loops());
            for i in (0..n).filter(|&i| !s.bit(i)) {
                let kind = d.saddle_type(&s, i).unwrap();
                let after = d.resolve(&s.with_bit(i)).unwrap().circle_count as i64;
                let delta = after - r.circle_count as i64;
                prop_assert!(delta.abs() <= 1);
                prop_assert_eq!(delta == 0, kind == tangle_kh::diagram::SaddleKind::ReconnectArcArc);
            }
        }
    }

    #[test]
    fn complexes_are_complexes(seed in any::<u64>()) {
        let d = diagram(seed, 6);
        let c = BigradedComplex::build(&d, Field::Rational).unwrap();
        prop_assert!(c.check_d_squared());
        prop_assert!(c.check_gradings());
        for (src, tgt, _) in differential_entries(&c) {
            let q = |g: &tangle_kh::complex::GeneratorLabel| {
                g.state.ell() as i32 - c.n_minus as i32 + c.n_plus as i32 - c.n_minus as i32 + g.theta
            };
            prop_assert_eq!(q(&src), q(&tgt));
            prop_assert_eq!(tgt.state.ell(), src.state.ell() + 1);
        }
        let expected: usize = State::all(d.crossing_count())
            .map(|s| 1usize << d.resolve(&s).unwrap().circle_count)
            .sum();
        prop_assert_eq!(c.total_dim(), expected);
    }

    #[test]
    fn euler_identity(seed in any::<u64>()) {
        let d = diagram(seed, 6);
        let p = poincare_of(&d, Field::Rational).unwrap();
        prop_assert_eq!(jones_specialization(&p), graded_euler_state_sum(&d));
        let (n_plus, n_minus) = d.crossing_counts();
        for ((k, _), coef) in p.terms() {
            prop_assert!(coef > 0);
            prop_assert!(-(n_minus as i32) <= k && k <= n_plus as i32);
        }
        let b = betti(&BigradedComplex::build(&d, Field::Rational).unwrap());
        prop_assert_eq!(p.eval_one(), b.total() as i64);
    }

    #[test]
    fn gf2_euler_identity(seed in any::<u64>()) {
        let d = diagram(seed, 5);
        let p = poincare_of(&d, Field::Gf2).unwrap();
        prop_assert_eq!(jones_specialization(&p), graded_euler_state_sum(&d));
    }

    #[test]
    fn closed_form_matches_brute_force(seed in any::<u64>(), arcs in 1usize..=5) {
        let d = random_simple_tangle(&mut ChaCha8Rng::seed_from_u64(seed), arcs);
        let (trace, poly) = reduce(&d).unwrap();
        prop_assert_eq!(trace.steps.len(), arcs);
        prop_assert!(trace.steps.last().unwrap().residual.arc_count() == 0);
        let (n_plus, n_minus) = d.crossing_counts();
        prop_assert_eq!(&poly, &simple_poincare(arcs, n_plus, n_minus).unwrap());
        prop_assert_eq!(poly, poincare_of(&d, Field::Rational).unwrap());
    }

    #[test]
    fn disjoint_union_dimensions_convolve(a in any::<u64>(), b in any::<u64>()) {
        let (d1, d2) = (diagram(a, 3), diagram(b, 3));
        let u = d1.disjoint_union(&d2);
        let dims = |d: &TangleDiagram| BigradedComplex::build(d, Field::Rational).unwrap().dimensions();
        let (x, y) = (dims(&d1), dims(&d2));
        let mut conv = std::collections::BTreeMap::new();
        for (&(k, q), &m) in &x {
            for (&(l, r), &n) in &y {
                *conv.entry((k + l, q + r)).or_insert(0) += m * n;
            }
        }
        prop_assert_eq!(dims(&u), conv);
        let p = |d: &TangleDiagram| poincare_polynomial(&betti(&BigradedComplex::build(d, Field::Rational).unwrap()));
        prop_assert_eq!(p(&u), &p(&d1) * &p(&d2));
    }

    #[test]
    fn mirror_negates_bigradings(seed in any::<u64>()) {
        // with N arcs the quantum grading reflects about -N
        let d = diagram(seed, 5);
        let shift = 2 * d.arc_count() as i32;
        let p = poincare_of(&d, Field::Rational).unwrap();
        let m = poincare_of(&d.mirror(), Field::Rational).unwrap();
        let reflected = tangle_kh::homology::LaurentPoly2::from_terms(p.terms().map(|((k, q), c)| ((-k, -q - shift), c)));
        prop_assert_eq!(m, reflected);
    }

    #[test]
    fn reduction_order_does_not_matter(arcs in 1usize..=6, split in 0usize..=5) {
        let crossings = (arcs - 1).min(split);
        for n_plus in 0..=crossings {
            let n_minus = crossings - n_plus;
            let m = generator_expansion(arcs, n_plus, n_minus).unwrap();
            prop_assert_eq!(m.total(), 1u64 << crossings);
            prop_assert_eq!(m.to_poly(), simple_poincare(arcs, n_plus, n_minus).unwrap());
        }
    }
}

#[test]
fn simple_tangle_crossing_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for arcs in 1..=7 {
        for _ in 0..10 {
            let d = random_simple_tangle(&mut rng, arcs);
            assert!(d.crossing_count() < arcs);
            assert!(d.find_leaf_arc().is_some());
        }
    }
}
