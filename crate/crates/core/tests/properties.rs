mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rootsig::combin::{binomial, lcm_up_to};
use rootsig::eulerian::{cyclic_ascents_descents, eulerian_row};
use rootsig::quasi::{complement_count, complement_count_affine, fit_quasipolynomial};
use rootsig::tutte::{BaseCase, CaseTally};
use rootsig::*;

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        (
            Just(r),
            Just(c),
            prop::collection::vec(-bound..=bound, r * c),
        )
    })
}

fn square_strategy(n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, n), n)
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    IntMatrix::new(rows.len(), rows[0].len(), flat).unwrap()
}

fn shuffled(len: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..len).collect();
    p.shuffle(&mut rng);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_matches_laplace(rows in (1usize..=5).prop_flat_map(|n| square_strategy(n, 9))) {
        let m = from_rows(&rows);
        prop_assert_eq!(m.determinant().unwrap(), BigInt::from(laplace_det(&rows)));
    }

    #[test]
    fn determinant_alternating_and_multilinear(
        rows in square_strategy(4, 7),
        extra in prop::collection::vec(-7i64..=7, 4),
        (a, b) in (0usize..4, 0usize..4),
        scale in -5i64..=5,
    ) {
        let det = |r: &Vec<Vec<i64>>| from_rows(r).determinant().unwrap();
        let base = det(&rows);
        // swap two columns
        if a != b {
            let swapped: Vec<Vec<i64>> = rows.iter().map(|r| {
                let mut r = r.clone();
                r.swap(a, b);
                r
            }).collect();
            prop_assert_eq!(det(&swapped), -base.clone());
        }
        // column a -> scale * column a + extra
        let replaced: Vec<Vec<i64>> = rows.iter().zip(&extra).map(|(r, &e)| {
            let mut r = r.clone();
            r[a] = e;
            r
        }).collect();
        let mixed: Vec<Vec<i64>> = rows.iter().zip(&extra).map(|(r, &e)| {
            let mut r = r.clone();
            r[a] = scale * r[a] + e;
            r
        }).collect();
        prop_assert_eq!(det(&mixed), base * scale + det(&replaced));
    }

    #[test]
    fn rank_matches_rational_elimination((r, c, e) in matrix_strategy(6, 4)) {
        let m = IntMatrix::new(r, c, e).unwrap();
        prop_assert_eq!(m.rank(), rational_rank(&rows_of(&m)));
        prop_assert_eq!(m.smith_normal_form().rank(), m.rank());
    }

    #[test]
    fn smith_invariant_under_permutations((r, c, e) in matrix_strategy(5, 6), seed in any::<u64>()) {
        let m = IntMatrix::new(r, c, e).unwrap();
        let rp = shuffled(r, seed);
        let cp = shuffled(c, seed.wrapping_add(1));
        let permuted = m.select_rows(&rp).unwrap().select_columns(&cp);
        prop_assert_eq!(m.smith_normal_form(), permuted.smith_normal_form());
        let d = m.smith_normal_form().divisors;
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn multiplicity_is_abs_det(rows in (1usize..=4).prop_flat_map(|n| square_strategy(n, 5))) {
        let m = from_rows(&rows);
        let det = laplace_det(&rows);
        if det != 0 {
            prop_assert_eq!(m.arithmetic_multiplicity(), BigInt::from(det.abs()));
        }
    }

    #[test]
    fn signature_methods_agree_on_random_tuples(
        n in 5usize..=6,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 7),
    ) {
        let roots = positive_roots(n).unwrap();
        let chosen: Vec<_> = picks[..n + 1].iter().map(|i| roots[i.index(roots.len())]).collect();
        let t = RootTuple::new(n, chosen).unwrap();
        prop_assert_eq!(signature_cofactor(&t).unwrap(), signature_graph(&t).unwrap());
    }

    #[test]
    fn circuit_rank_is_edges_minus_matrix_rank(
        n in 1usize..=6,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
    ) {
        let roots = positive_roots(n).unwrap();
        let chosen: Vec<_> = picks.iter().map(|i| roots[i.index(roots.len())]).collect();
        let t = RootTuple::new(n, chosen.clone()).unwrap();
        let cols: Vec<Vec<i64>> = chosen.iter().map(|r| root_column(r.i(), r.j(), n)).collect();
        let rows: Vec<Vec<i64>> = (0..n).map(|k| cols.iter().map(|c| c[k]).collect()).collect();
        // rank of the incidence columns is v - c
        prop_assert_eq!(t.to_graph().circuit_rank(), chosen.len() - rational_rank(&rows));
    }
}

#[test]
fn lemma_determinants_in_unit_range() {
    for n in 1..=5 {
        let roots = positive_roots(n).unwrap();
        let mut seen = [false; 3];
        for_each_subset(roots.len(), n, |idx| {
            let t = RootTuple::new(n, idx.iter().map(|&k| roots[k]).collect()).unwrap();
            let d = t.coefficient_matrix().determinant().unwrap();
            let v = i128::try_from(d).unwrap();
            assert!((-1..=1).contains(&v), "n = {n}, {idx:?}: det {v}");
            seen[(v + 1) as usize] = true;
        });
        if n >= 3 {
            assert!(seen.iter().all(|&s| s), "n = {n}: every value occurs");
        }
    }
}

#[test]
fn independence_iff_forest() {
    for n in 1..=4 {
        let roots = positive_roots(n).unwrap();
        for mask in 1u32..(1 << roots.len()) {
            let chosen: Vec<_> = (0..roots.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| roots[k])
                .collect();
            let cols: Vec<Vec<i64>> = chosen
                .iter()
                .map(|r| root_column(r.i(), r.j(), n))
                .collect();
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|k| cols.iter().map(|c| c[k]).collect())
                .collect();
            let independent = rational_rank(&rows) == chosen.len();
            let t = RootTuple::new(n, chosen).unwrap();
            assert_eq!(
                independent,
                t.to_graph().is_forest(),
                "n = {n}, mask {mask:b}"
            );
        }
    }
}

#[test]
fn signature_invariant_under_reordering() {
    for n in 1..=4 {
        let roots = positive_roots(n).unwrap();
        for_each_subset(roots.len(), n + 1, |idx| {
            let base: Vec<_> = idx.iter().map(|&k| roots[k]).collect();
            let expect = signature_cofactor(&RootTuple::new(n, base.clone()).unwrap()).unwrap();
            for_each_permutation(n + 1, |p| {
                let t = RootTuple::new(n, p.iter().map(|&k| base[k]).collect()).unwrap();
                assert_eq!(
                    signature_cofactor(&t).unwrap(),
                    expect,
                    "n = {n}, {idx:?} permuted {p:?}"
                );
            });
        });
    }
}

#[test]
fn methods_agree_exhaustively_and_cycle_length() {
    for n in 1..=5 {
        let roots = positive_roots(n).unwrap();
        for_each_subset(roots.len(), n + 1, |idx| {
            let t = RootTuple::new(n, idx.iter().map(|&k| roots[k]).collect()).unwrap();
            let c = signature_cofactor(&t).unwrap();
            assert_eq!(c, signature_graph(&t).unwrap(), "n = {n}, {idx:?}");
            if !c.is_degenerate() {
                let cycle = t
                    .to_graph()
                    .unique_cycle()
                    .expect("nonzero signature has a cycle");
                assert_eq!(c.a() + c.b(), cycle.len());
                assert!((3..=n + 1).contains(&cycle.len()));
            }
        });
    }
}

#[test]
fn census_matches_closed_form_small_n() {
    for n in 2..=5 {
        let census = census_bruteforce(n, &CensusOptions::default()).unwrap();
        for s in rootsig::signature::valid_pairs(n) {
            assert_eq!(
                BigInt::from(census.get(s.a(), s.b())),
                s_formula(n, s.a(), s.b()),
                "n = {n}, {s}"
            );
        }
        let roots = (n * (n + 1) / 2) as i64;
        assert_eq!(BigInt::from(census.total()), binomial(roots, n as i64 + 1));
    }
}

#[test]
fn census_is_schedule_independent() {
    for method in [Method::Graph, Method::Cofactor] {
        let one = census_bruteforce(
            5,
            &CensusOptions {
                method,
                workers: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let many = census_bruteforce(
            5,
            &CensusOptions {
                method,
                workers: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, many);
    }
}

#[test]
fn partition_identity() {
    for n in 1..=8 {
        for x in 1..=5 {
            let lhs =
                partition_identity_lhs(n, x, rootsig::signature::DEFAULT_PARTITION_CAP).unwrap();
            let rhs = BigInt::from(x) * BigInt::from(x + n as i64).pow(n as u32 - 1);
            assert_eq!(lhs, rhs, "n = {n}, x = {x}");
            assert_eq!(partition_identity_rhs(n, x), rhs);
        }
    }
}

#[test]
fn eulerian_rows_palindromic_with_factorial_sums() {
    for n in 1..=12 {
        let row = eulerian_row(n);
        let rev: Vec<_> = row.iter().rev().cloned().collect();
        assert_eq!(row, rev, "n = {n}");
        assert_eq!(row.iter().sum::<BigInt>(), factorial(n as u64));
    }
}

#[test]
fn cyclic_eulerian_by_permutations() {
    for n in 2..=10 {
        let mut tally = vec![0u64; n + 1];
        for_each_permutation(n, |p| tally[cyclic_ascents_descents(p).1] += 1);
        for (k, &count) in tally.iter().enumerate() {
            assert_eq!(
                cyclic_eulerian(n, k),
                BigInt::from(count),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn tau_row_sums_and_symmetry() {
    for n in 1..=6usize {
        for d in 1..=4i64 {
            let ni = n as i64;
            let mut sum = BigInt::zero();
            for k in 0..=ni * d + 2 {
                let t = tau(n, k, d);
                assert_eq!(t, tau_brute(n, k, d), "tau({n},{k},{d})");
                assert_eq!(t, tau(n, ni * (d + 1) - k, d), "symmetry at ({n},{k},{d})");
                sum += t;
            }
            assert_eq!(sum, BigInt::from(d).pow(n as u32));
        }
    }
}

#[test]
fn balance_counts_match_enumeration() {
    for a in 1..=4usize {
        for b in 1..=5 - a {
            for l in -2..=2i64 {
                for m in l..=2i64 {
                    let span = (m - l) * (a + b) as i64;
                    for k in 1..=span + 2 {
                        assert_eq!(
                            abs_balance_count(a, b, k, l, m),
                            balance_brute(a, b, k, l, m),
                            "a={a} b={b} k={k} [{l},{m}]"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn delta_three_by_brute_force() {
    let roots = positive_roots(3).unwrap();
    let mut count = 0;
    for_each_subset(roots.len(), 3, |idx| {
        let cols: Vec<Vec<i64>> = idx
            .iter()
            .map(|&k| root_column(roots[k].i(), roots[k].j(), 3))
            .collect();
        count += u32::from(laplace_det(&cols) != 0);
    });
    assert_eq!(count, 16);
    assert_eq!(delta(3), BigInt::from(16));
}

fn families(n: usize) -> Vec<DeformationSpec> {
    let mut out = vec![DeformationSpec::Ish { n }];
    for m in 1..=2 {
        out.push(DeformationSpec::Shi { n, m });
        out.push(DeformationSpec::Catalan { n, m });
        out.push(DeformationSpec::Linial { n, m });
    }
    for l in -1..=1 {
        for m in l..=1 {
            out.push(DeformationSpec::Uniform { n, l, m });
        }
    }
    out
}

#[test]
fn deformation_rank_and_primitivity() {
    for n in 1..=4 {
        for spec in families(n) {
            let d = spec.build().unwrap();
            assert_eq!(rational_rank(&rows_of(d.matrix())), n + 1, "{spec:?}");
            assert!(d.is_primitive(), "{spec:?}");
            for col in d.matrix().columns() {
                let g = col.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
                assert_eq!(g, 1);
            }
        }
        for m in 1..=3 {
            assert_eq!(
                build_shi(n, m).unwrap(),
                build_uniform(n, 1 - m, m).unwrap()
            );
            assert_eq!(
                build_catalan(n, m).unwrap(),
                build_uniform(n, -m, m).unwrap()
            );
            assert_eq!(build_linial(n, m).unwrap(), build_uniform(n, 1, m).unwrap());
        }
    }
}

fn signed_minors(cols: &[Vec<i64>], n: usize) -> Vec<i128> {
    // d_k = (-1)^k det of the root part with column k removed (1-based k)
    (0..cols.len())
        .map(|k| {
            let rest: Vec<Vec<i64>> = cols
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != k)
                .map(|(_, c)| c[..n].to_vec())
                .collect();
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|r| rest.iter().map(|c| c[r]).collect())
                .collect();
            let det = laplace_det(&rows);
            if (k + 1) % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

#[test]
fn tutte_formula_matches_oracle() {
    for (n, l, m) in [
        (1, 0, 1),
        (2, 0, 1),
        (2, -1, 1),
        (2, 1, 1),
        (3, 0, 1),
        (2, 0, 2),
        (1, -1, 2),
    ] {
        let brute = tutte11_bruteforce(&build_uniform(n, l, m).unwrap(), 0).unwrap();
        let formula = tutte11_formula(n, l, m, Mode::Corrected).unwrap();
        assert!(
            formula.same_values(&brute),
            "({n},{l},{m}): {formula:?} vs {brute:?}"
        );
        assert_eq!(formula.cases, brute.cases, "({n},{l},{m}) per case");
    }
}

#[test]
fn case_invariants_per_base() {
    for (n, l, m) in [
        (1, 0, 1),
        (2, 0, 1),
        (2, -1, 1),
        (2, 1, 1),
        (3, 0, 1),
        (2, 0, 2),
    ] {
        let dm = build_uniform(n, l, m).unwrap();
        let bases = enumerate_bases(&dm, 2).unwrap();
        let d = m - l + 1;
        let mut case2 = CaseTally::default();
        for b in &bases {
            let cols: Vec<Vec<i64>> = b
                .column_indices
                .iter()
                .map(|&c| dm.matrix().column(c))
                .collect();
            let det = laplace_det(
                &(0..=n)
                    .map(|r| cols.iter().map(|c| c[r]).collect())
                    .collect::<Vec<_>>(),
            );
            assert_eq!(det.unsigned_abs() as u64, b.multiplicity);
            match b.case {
                BaseCase::Duplicate => {
                    case2.bases += 1;
                    case2.arith += b.multiplicity;
                }
                BaseCase::Unicyclic => {
                    let roots: Vec<PositiveRoot> = b
                        .column_indices
                        .iter()
                        .map(|&c| match dm.labels()[c] {
                            ColumnLabel::Root { root, .. } => root,
                            ColumnLabel::Cone => unreachable!("case 3 has no cone column"),
                        })
                        .collect();
                    let t = RootTuple::new(n, roots).unwrap();
                    let g = t.to_graph();
                    assert!(g.is_connected() && g.circuit_rank() == 1, "{b:?}");
                    // Laplace along the last row
                    let minors = signed_minors(&cols, n);
                    let plus = minors.iter().filter(|&&v| v == 1).count();
                    let minus = minors.iter().filter(|&&v| v == -1).count();
                    assert_eq!(Signature::new(plus, minus), signature_graph(&t).unwrap());
                    let e: i128 = cols
                        .iter()
                        .zip(&minors)
                        .map(|(c, &s)| -(c[n] as i128) * s)
                        .sum();
                    assert_eq!(e.unsigned_abs() as u64, b.multiplicity);
                    assert!((1..=(m * n as i64 - l) as u64).contains(&b.multiplicity));
                }
                BaseCase::Cone => assert_eq!(b.multiplicity, 1),
            }
        }
        let nd = BigInt::from(n) * delta(n) * BigInt::from(d).pow(n as u32 - 1);
        let count: BigInt = (1..=m - l).map(|k| BigInt::from(d - k)).sum();
        let arith: BigInt = (1..=m - l).map(|k| BigInt::from(k * (d - k))).sum();
        assert_eq!(case2.bases, &nd * count, "({n},{l},{m}) case 2 count");
        assert_eq!(case2.arith, nd * arith, "({n},{l},{m}) case 2 arith");
    }
}

#[test]
fn bases_are_schedule_independent() {
    let dm = build_uniform(3, 0, 1).unwrap();
    assert_eq!(
        enumerate_bases(&dm, 1).unwrap(),
        enumerate_bases(&dm, 4).unwrap()
    );
}

#[test]
fn periods_divide_and_fitted_period_is_minimal() {
    let specs = [
        DeformationSpec::Uniform { n: 2, l: 0, m: 1 },
        DeformationSpec::Uniform { n: 2, l: -1, m: 1 },
        DeformationSpec::Uniform { n: 1, l: 0, m: 2 },
        DeformationSpec::Uniform { n: 2, l: 1, m: 1 },
        DeformationSpec::Ish { n: 2 },
    ];
    for spec in specs {
        let dm = spec.build().unwrap();
        let rho = lcm_period_exact(dm.matrix(), 22, 0).unwrap();
        let mu = mu_period_bound(&dm, 0).unwrap();
        assert!((&mu % &rho).is_zero(), "{spec:?}: rho {rho} mu {mu}");
        // fit with the larger period and check the classes collapse to rho
        let r: u64 = mu.clone().try_into().unwrap();
        let qmax = r * (dm.n() as u64 + 6);
        let qp = fit_quasipolynomial(dm.matrix(), r, qmax, 0).unwrap();
        assert_eq!(BigInt::from(qp.minimum_period()), rho, "{spec:?}");
    }
}

#[test]
fn point_counts_match_grid() {
    for spec in [
        DeformationSpec::Uniform { n: 2, l: -1, m: 1 },
        DeformationSpec::Ish { n: 2 },
    ] {
        let dm = spec.build().unwrap();
        let cols = dm.matrix().columns();
        let zeros = vec![0; cols.len()];
        for q in 1..=8 {
            assert_eq!(
                complement_count(dm.matrix(), q as u64, 0),
                grid_count(&cols, &zeros, q)
            );
        }
        let (top, rhs) = dm.affine_part();
        for q in 1..=8 {
            assert_eq!(
                complement_count_affine(&top, &rhs, q as u64, 1),
                grid_count(&top.columns(), &rhs, q)
            );
        }
    }
}

#[test]
fn cone_counts_are_affine_counts_times_t_minus_one() {
    for (n, m) in [(2, 1), (3, 1), (2, 2)] {
        let dm = build_shi(n, m).unwrap();
        let (top, rhs) = dm.affine_part();
        for p in [101u64, 103] {
            let cone = complement_count(dm.matrix(), p, 0);
            let affine = complement_count_affine(&top, &rhs, p, 0);
            assert_eq!(cone, (p - 1) * affine, "Shi n={n} m={m} at p={p}");
        }
    }
}

#[test]
fn closed_form_periods() {
    assert_eq!(period_formula(3, 0, 1).unwrap(), lcm_up_to(3));
    assert_eq!(period_formula_ish(3).unwrap(), BigInt::from(6));
    assert!(period_formula(1, 0, 0).unwrap().is_one());
}
