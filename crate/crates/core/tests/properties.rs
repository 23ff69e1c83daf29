use nichols_zn::braiding::{canonical_form, gdd_of, permutation_similar, BraidingMatrix, Gdd, GddDoc};
use nichols_zn::classify::{weyl_reflect, weyl_reflect_gdd};
use nichols_zn::modarith::{
    crt_combine, gcd, is_prime, legendre, pow_mod, solve_quadratic, sqrt_mod_prime_power, QuadCongruence,
};
use nichols_zn::realize::{
    mixed_chain_solvable, mixed_chain_system, oracle_realize, oracle_realize_matrix, realize_gdd, BilinearSystem,
    Budget,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

const ODD_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn matrix(max_n: u64, max_rank: usize) -> impl Strategy<Value = BraidingMatrix> {
    (1..=max_n, 1..=max_rank).prop_flat_map(|(n, r)| {
        prop::collection::vec(0..n, r * r).prop_map(move |e| {
            let rows: Vec<Vec<i64>> = e.chunks(r).map(|c| c.iter().map(|&x| x as i64).collect()).collect();
            BraidingMatrix::from_rows(n, &rows).unwrap()
        })
    })
}

fn gdd(min_rank: usize, max_rank: usize, max_n: u64) -> impl Strategy<Value = Gdd> {
    (2..=max_n, min_rank..=max_rank).prop_flat_map(|(n, r)| {
        let pairs = r * (r - 1) / 2;
        (prop::collection::vec(0..n, r), prop::collection::vec(0..n, pairs)).prop_map(move |(d, e)| {
            let diag: Vec<i64> = d.iter().map(|&x| x as i64).collect();
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..r {
                for j in i + 1..r {
                    edges.push(((i, j), e[k] as i64));
                    k += 1;
                }
            }
            Gdd::new(n, &diag, &edges).unwrap()
        })
    })
}

fn permutation(r: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..r).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quadratic_solver_matches_enumeration(m in 1..=2000u64, a in -3000i64..3000, b in -3000i64..3000, c in -3000i64..3000) {
        let q = QuadCongruence::new(a, b, c, m);
        let expected: Vec<u64> = (0..m).filter(|&x| q.holds(x as i64)).collect();
        let got = solve_quadratic(&q).unwrap();
        prop_assert_eq!(got.residues(), expected.as_slice());
    }

    #[test]
    fn legendre_is_multiplicative_and_euler(pi in 0..ODD_PRIMES.len(), a in -500i64..500, b in -500i64..500) {
        let p = ODD_PRIMES[pi];
        let (la, lb, lab) = (legendre(a, p).unwrap(), legendre(b, p).unwrap(), legendre(a * b, p).unwrap());
        prop_assert_eq!(lab, la * lb);
        let euler = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
        let expected = match euler { 0 => 0, 1 => 1, _ => -1 };
        prop_assert_eq!(la, expected);
    }

    #[test]
    fn crt_satisfies_every_congruence(moduli in subsequence(vec![4u64, 9, 5, 7, 11, 13], 1..=4), seed in any::<u64>()) {
        let constraints: Vec<(u64, u64)> = moduli.iter().enumerate().map(|(i, &m)| ((seed >> (8 * i)) % m, m)).collect();
        let (x, modulus) = crt_combine(&constraints).unwrap();
        prop_assert_eq!(modulus, moduli.iter().product::<u64>());
        for (r, m) in constraints {
            prop_assert_eq!(x % m, r);
        }
    }

    #[test]
    fn lifted_square_roots_are_all_the_roots(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), k in 1u32..=5, a in 1i64..10_000) {
        prop_assume!(a % p as i64 != 0);
        let pk = p.pow(k);
        let got = sqrt_mod_prime_power(a, p, k).unwrap();
        let expected: Vec<u64> = (0..pk).filter(|&x| (x * x) % pk == a as u64 % pk).collect();
        prop_assert_eq!(got.residues(), expected.as_slice());
    }

    #[test]
    fn similarity_is_an_equivalence(b in matrix(12, 4), s1 in permutation(4), s2 in permutation(4)) {
        let r = b.rank();
        let (s1, s2): (Vec<usize>, Vec<usize>) = (s1.into_iter().filter(|&i| i < r).collect(), s2.into_iter().filter(|&i| i < r).collect());
        let c = b.permuted(&s1);
        let d = c.permuted(&s2);
        prop_assert!(permutation_similar(&b, &b).is_some());
        let sigma = permutation_similar(&b, &c);
        prop_assert!(sigma.is_some());
        let sigma = sigma.unwrap();
        prop_assert_eq!(b.permuted(&sigma), c.clone());
        prop_assert!(permutation_similar(&c, &b).is_some());
        prop_assert!(permutation_similar(&b, &d).is_some());
    }

    #[test]
    fn canonical_form_is_idempotent_and_invariant(b in matrix(12, 4), s in permutation(4)) {
        let s: Vec<usize> = s.into_iter().filter(|&i| i < b.rank()).collect();
        let c = canonical_form(&b);
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert_eq!(canonical_form(&b.permuted(&s)), c.clone());
        prop_assert!(permutation_similar(&b, &c).is_some());
    }

    #[test]
    fn gdd_of_matrix_sums_off_diagonal(b in matrix(30, 4)) {
        let g = gdd_of(&b);
        let n = b.modulus();
        for i in 0..b.rank() {
            prop_assert_eq!(g.diag(i), b.get(i, i));
            for j in i + 1..b.rank() {
                prop_assert_eq!(g.edge(i, j), (b.get(i, j) + b.get(j, i)) % n);
            }
        }
        prop_assert_eq!(gdd_of(&g.to_matrix()), g);
    }

    #[test]
    fn gdd_document_round_trips(g in gdd(1, 4, 40)) {
        let json = serde_json::to_string(&g).unwrap();
        let doc: GddDoc = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(doc.into_gdd().unwrap(), g);
    }

    #[test]
    fn reflection_is_an_involution(g in gdd(2, 4, 24), i in 0usize..4) {
        prop_assume!(i < g.rank());
        if let Ok(h) = weyl_reflect_gdd(&g, i) {
            prop_assert_eq!(weyl_reflect_gdd(&h, i).unwrap(), g);
        }
    }

    #[test]
    fn reflection_preserves_realizability(n in 2..=24u64, x in prop::collection::vec(0u64..24, 2..=3), y in prop::collection::vec(0u64..24, 3), i in 0usize..3) {
        let r = x.len();
        prop_assume!(i < r);
        let x: Vec<u64> = x.iter().map(|v| v % n).collect();
        let y: Vec<u64> = y[..r].iter().map(|v| v % n).collect();
        let b = BraidingMatrix::outer(n, &x, &y);
        if let Ok(reflected) = weyl_reflect(&b, i) {
            prop_assert!(oracle_realize_matrix(&reflected, Budget::default()).unwrap().is_some());
            prop_assert!(realize_gdd(&gdd_of(&reflected), Budget::default()).unwrap().is_some());
        }
    }

    #[test]
    fn structured_realizer_agrees_with_oracle(g in gdd(2, 3, 12)) {
        let fast = realize_gdd(&g, Budget::default()).unwrap();
        let slow = oracle_realize(&BilinearSystem::new(g.clone()), Budget::default()).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(w) = fast {
            prop_assert!(w.satisfies(&BilinearSystem::new(g)));
        }
    }

    #[test]
    fn mixed_chain_criterion_matches_search(m in 2u64..=12, mp in 2u64..=12, s in 1i64..12, sp in 1i64..12) {
        prop_assume!(gcd(s as u64, m) == 1 && gcd(sp as u64, mp) == 1);
        let n = nichols_zn::modarith::lcm(2, nichols_zn::modarith::lcm(m, mp));
        let Ok(system) = mixed_chain_system(m, mp, s, sp, n) else { return Ok(()) };
        let predicted = mixed_chain_solvable(m, mp, s, sp, n).unwrap();
        let found = oracle_realize(&system, Budget::default()).unwrap().is_some();
        prop_assert_eq!(predicted, found);
    }

    #[test]
    fn prime_test_agrees_with_trial_division(n in 0u64..5000) {
        let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), naive);
    }
}
