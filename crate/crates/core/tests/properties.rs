use proptest::prelude::*;

use zbrng::exact::{format_cyc, parse_cyc, rat_frac, rat_kernel, rat_rank, CycNum, Matrix, Rat};
use zbrng::generators::{
    gen_kronecker, gen_paley, gen_sylvester, group_ring, group_ring_smatrix, hadamard2, GroupSpec,
};
use zbrng::hadamard::{equiv_screen, reconstruct_exact, ring_from_hadamard, HadamardMatrix, Screen};
use zbrng::quotients::{fannsc_lift, order2_quotient, quotient_verify};
use zbrng::ring::{involutions, FusionRing, RingElement};
use zbrng::spectra::{
    closed_subset_heuristic, involution_from_smatrix, smatrix_from_tensor, verlinde_tensor, SMatrix,
};

fn cyc() -> impl Strategy<Value = CycNum> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec((-4i64..=4, 1i64..=3), 12))
        .prop_map(|(q, cs)| {
            let mut acc = CycNum::zero();
            for (e, (n, d)) in cs.into_iter().take(q as usize).enumerate() {
                let term = CycNum::root(q, e as i64).unwrap().scale(&rat_frac(n, d));
                acc = &acc + &term;
            }
            acc
        })
}

fn orders() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(2u32..=5, 1..=2)
}

// b_g b_h = b_{g+h} in the indexing of GroupSpec
fn group_tensor(g: &GroupSpec) -> Vec<i64> {
    let n = g.size();
    let mut t = vec![0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (g.digits(i), g.digits(j));
            let sum: Vec<u32> = a
                .iter()
                .zip(&b)
                .zip(g.orders())
                .map(|((x, y), m)| (x + y) % m)
                .collect();
            t[(i * n + j) * n + g.index(&sum)] = 1;
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, CycNum::one());
        }
        let z = (&a * &b).to_complex() - a.to_complex() * b.to_complex();
        prop_assert!(z.norm() < 1e-9 * (1.0 + a.to_complex().norm() * b.to_complex().norm()));
    }

    #[test]
    fn literal_round_trip(a in cyc()) {
        let text = format_cyc(&a);
        prop_assert_eq!(parse_cyc(&text).unwrap(), a);
    }

    #[test]
    fn kernel_and_rank(rows in 1usize..=5, cols in 1usize..=6, seed in prop::collection::vec(-3i64..=3, 30)) {
        let data: Vec<Rat> = seed.iter().take(rows * cols).map(|&x| rat_frac(x, 1)).collect();
        let m = Matrix::new(rows, cols, data).unwrap();
        let k = rat_kernel(&m);
        prop_assert_eq!(rat_rank(&m) + k.len(), cols);
        for v in &k {
            for r in 0..rows {
                let dot: Rat = (0..cols).map(|c| m.get(r, c) * &v[c]).sum();
                prop_assert_eq!(dot, rat_frac(0, 1));
            }
        }
    }

    #[test]
    fn trace_of_dual_is_conjugate(m in 2u32..=7, coeffs in prop::collection::vec((-3i64..=3, -3i64..=3), 7)) {
        let ring = group_ring(&GroupSpec::new(vec![m]).unwrap()).unwrap();
        let n = m as usize;
        let z = CycNum::root(4, 1).unwrap();
        let r: Vec<CycNum> = coeffs[..n]
            .iter()
            .map(|&(a, b)| &CycNum::from_int(a) + &z.scale(&rat_frac(b, 1)))
            .collect();
        let mut dual = vec![CycNum::zero(); n];
        for i in 0..n {
            dual[ring.tilde()[i]] = r[i].conj();
        }
        let t = ring.trace(&RingElement { coeffs: r }).unwrap();
        let td = ring.trace(&RingElement { coeffs: dual }).unwrap();
        prop_assert_eq!(td, t.conj());
    }

    #[test]
    fn subgroup_subrings_verify(m in 2u32..=12, d in 1u32..=12) {
        prop_assume!(m % d == 0);
        let ring = group_ring(&GroupSpec::new(vec![m]).unwrap()).unwrap();
        let set: Vec<usize> = (0..m).step_by(d as usize).map(|x| x as usize).collect();
        let sub = ring.subring(&set).unwrap();
        prop_assert!(sub.verify_axioms().all_passed());
        prop_assert_eq!(sub.rank(), (m / d) as usize);
    }

    #[test]
    fn verlinde_round_trip(orders in orders()) {
        let g = GroupSpec::new(orders).unwrap();
        let s = group_ring_smatrix(&g).unwrap();
        let t = verlinde_tensor(&s).unwrap();
        prop_assert_eq!(&t.tensor, &group_tensor(&g));
        let ring = FusionRing::new(g.size(), t.tensor.clone(), involution_from_smatrix(&s, 1e-8).unwrap()).unwrap();
        let back = smatrix_from_tensor(&ring, 1e-8).unwrap();
        prop_assert_eq!(verlinde_tensor(&back).unwrap().tensor, t.tensor);
    }

    #[test]
    fn heuristic_returns_closed_sets(orders in orders()) {
        let g = GroupSpec::new(orders).unwrap();
        let s = group_ring_smatrix(&g).unwrap();
        let ring = group_ring(&g).unwrap();
        let res = closed_subset_heuristic(&s, 1e-8).unwrap();
        prop_assert!(res.sets.contains(&(0..g.size()).collect()));
        for set in &res.sets {
            prop_assert!(ring.is_closed_subset(set));
        }
        for set in &res.rejected {
            prop_assert!(!ring.is_closed_subset(set));
        }
    }

    #[test]
    fn involutions_square_to_identity(orders in orders()) {
        let g = GroupSpec::new(orders).unwrap();
        let p = involution_from_smatrix(&group_ring_smatrix(&g).unwrap(), 1e-8).unwrap();
        for i in 0..p.len() {
            prop_assert_eq!(p[p[i]], i);
        }
    }

    #[test]
    fn order_two_quotients_are_rings(m in 2u32..=6) {
        let g = GroupSpec::new(vec![2, m]).unwrap();
        let ring = group_ring(&g).unwrap();
        let q = order2_quotient(&ring, g.index(&[1, 0])).unwrap();
        prop_assert!(q.algebra.check_axioms().is_ok());
        prop_assert!(q.algebra.is_nonnegative());
        prop_assert_eq!(q.algebra.rank(), m as usize);
    }

    #[test]
    fn hadamard_reconstruction_and_screen(which in 0usize..5, perm_seed in prop::collection::vec(0usize..1000, 16)) {
        let h = hadamards().swap_remove(which);
        let n = h.n();
        let mut perm: Vec<usize> = (0..n).collect();
        for (i, &r) in perm_seed.iter().take(n).enumerate() {
            perm.swap(i, i + r % (n - i));
        }
        let p = h.permute_columns(&perm).unwrap();
        prop_assert_eq!(equiv_screen(&h, &p).unwrap(), Screen::Indistinguishable);
        let ring = ring_from_hadamard(&p).unwrap();
        let back = reconstruct_exact(&ring).unwrap();
        let rebuilt = ring_from_hadamard(&back).unwrap();
        prop_assert_eq!(rebuilt.tensor(), ring.tensor());
    }
}

fn hadamards() -> Vec<HadamardMatrix> {
    vec![
        gen_sylvester(2).unwrap(),
        gen_sylvester(3).unwrap(),
        gen_paley(7).unwrap(),
        gen_paley(11).unwrap(),
        gen_kronecker(&hadamard2(), &gen_paley(7).unwrap()).unwrap(),
    ]
}

#[test]
fn every_involution_squares_to_identity() {
    for n in 1..=6 {
        for p in involutions(n) {
            assert!((0..n).all(|i| p[p[i]] == i));
        }
    }
}

#[test]
fn sign_lifts_verify() {
    for h in [gen_sylvester(2).unwrap(), gen_sylvester(3).unwrap(), gen_paley(7).unwrap()] {
        let k = h.k() as i64;
        let rows: Vec<Vec<i64>> = h.rows().iter().map(|r| r.iter().map(|x| k * x).collect()).collect();
        let s = SMatrix::from_ints(&rows).unwrap();
        let lift = fannsc_lift(&s, 4096).unwrap();
        assert!(lift.lifted.is_nonnegative());
        assert!(quotient_verify(&lift, &ring_from_hadamard(&h).unwrap()));
    }
}
