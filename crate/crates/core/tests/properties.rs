mod common;

use proptest::prelude::*;

use ybe::brace::{check_inverse_components, check_lambda_product_expansion, find_braces};
use ybe::io::{emit_solution, parse_solution};
use ybe::perm::{close_group, Perm};
use ybe::power::{psi_apply, psi_inverse_apply, TupleCodec};
use ybe::solution::{enumerate_solutions, verify, Solution};

fn perm(m: usize) -> impl Strategy<Value = Perm> {
    Just((0..m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

fn perm_triple(max_degree: usize) -> impl Strategy<Value = (Perm, Perm, Perm)> {
    (1usize..=max_degree).prop_flat_map(|m| (perm(m), perm(m), perm(m)))
}

fn corpus() -> Vec<Solution> {
    (1..=3).flat_map(|m| enumerate_solutions(m, 4).unwrap()).collect()
}

/// A corpus solution, two permutations of its points and a tuple.
fn psi_case() -> impl Strategy<Value = (Solution, Perm, Perm, Vec<usize>)> {
    let corpus = corpus();
    (0..corpus.len(), 2usize..=5).prop_flat_map(move |(i, n)| {
        let s = corpus[i].clone();
        let m = s.size();
        (Just(s), perm(m), perm(m), proptest::collection::vec(0..m, n))
    })
}

proptest! {
    #[test]
    fn codec_round_trip(m in 1usize..=7, n in 1usize..=4, seed in any::<usize>()) {
        let codec = TupleCodec::new(m, n, 4096).unwrap();
        let code = seed % codec.size();
        let tuple = codec.decode(code);
        prop_assert_eq!(&tuple, &common::decode(m, n, code));
        prop_assert_eq!(codec.encode(&tuple).unwrap(), code);
    }

    #[test]
    fn compose_is_associative((p, q, r) in perm_triple(8)) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        let expected = common::compose(p.images(), &common::compose(q.images(), r.images()));
        prop_assert_eq!(left.images(), expected.as_slice());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_order((p, _, _) in perm_triple(8)) {
        let id = Perm::identity(p.degree()).unwrap();
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.order(), common::perm_order(p.images()));
    }

    #[test]
    fn closure_order_divides_factorial((p, q, _) in perm_triple(5)) {
        let m = p.degree();
        let g = close_group(&[p.clone(), q.clone()], 1_000_000).unwrap();
        prop_assert_eq!(g.order(), common::closure(&[p.images().to_vec(), q.images().to_vec()], m).len());
        prop_assert_eq!((1..=m).product::<usize>() % g.order(), 0);
    }

    #[test]
    fn psi_is_a_homomorphism((s, tau, xi, ybar) in psi_case()) {
        let sigma = s.sigmas();
        let composite = tau.compose(&xi).unwrap();
        let direct = psi_apply(sigma, &composite, &ybar).unwrap();
        let staged = psi_apply(sigma, &tau, &psi_apply(sigma, &xi, &ybar).unwrap()).unwrap();
        prop_assert_eq!(&direct, &staged);
        prop_assert_eq!(psi_inverse_apply(sigma, &composite, &direct).unwrap(), ybar);
    }

    #[test]
    fn braid_checks_agree_on_any_table(table in (1usize..=3).prop_flat_map(|m| proptest::collection::vec(perm(m), m))) {
        let rows: Vec<Vec<usize>> = table.iter().map(|p| p.images().to_vec()).collect();
        let gamma = ybe::solution::derive_gamma(&table);
        let report = verify(&rows, &gamma);
        prop_assert!(report.braid_checks_consistent());
        let r = common::r_table(&rows, &gamma);
        prop_assert_eq!(report.all_pass(), common::is_solution(&r));
    }

    #[test]
    fn solution_text_round_trip(i in 0usize..18, pi_seed in any::<u64>()) {
        let corpus = corpus();
        let s = &corpus[i % corpus.len()];
        let m = s.size();
        let perms = common::all_perms(m);
        let pi = &perms[(pi_seed % perms.len() as u64) as usize];
        let rows: Vec<Vec<usize>> = s.sigmas().iter().map(|p| p.images().to_vec()).collect();
        let relabeled = common::relabel(&rows, pi);
        let t = Solution::from_sigma(relabeled.into_iter().map(|r| Perm::new(r).unwrap()).collect()).unwrap();
        prop_assert_eq!(parse_solution(&emit_solution(&t)).unwrap(), t);
    }

    #[test]
    fn product_expansion_on_random_tuples(
        k in 1usize..=4,
        pick in any::<usize>(),
        raw in proptest::collection::vec((any::<usize>(), any::<usize>()), 1..=4),
    ) {
        let braces = find_braces(k).unwrap();
        let b = &braces[pick % braces.len()];
        let xbar: Vec<usize> = raw.iter().map(|&(x, _)| x % k).collect();
        let ybar: Vec<usize> = raw.iter().map(|&(_, y)| y % k).collect();
        prop_assert!(check_lambda_product_expansion(b, &xbar, &ybar).unwrap());
        prop_assert!(check_inverse_components(b, &xbar, &ybar).unwrap());
    }
}
