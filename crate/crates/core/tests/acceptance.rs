use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use zbrng::exact::{rat_frac, CycNum, Matrix, Rat};
use zbrng::generators::{
    exterior_square, fixture_ds3, fixture_ext2_printed, fixture_monoid, gen_kronecker, gen_paley,
    gen_sylvester, group_ring, group_ring_smatrix, hadamard2, kac_peterson_a1, GroupSpec,
};
use zbrng::hadamard::{
    f2_algebra_check, f2_algebra_tensor, had_closed_subsets, multiset_census, parity_check, profile,
    reconstruct_exact, reconstruct_mod3, ring_from_hadamard, sum_squares_check, tensor_mod3,
    triangular_bound, wmatrix, xi_sets, HadamardMatrix,
};
use zbrng::quotients::{fannsc_lift, inside_scaled_group_ring, order2_quotient, quotient_verify};
use zbrng::ring::{find_valid_involution, involutions, FusionRing, RingElement};
use zbrng::spectra::{
    closed_subset_heuristic, hermitian_orthogonality_check, involution_from_smatrix,
    row_orthogonality_check, smatrix_from_tensor, verlinde_tensor, SMatrix,
};

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

const TOL: f64 = 1e-8;

fn z3() -> FusionRing {
    group_ring(&GroupSpec::new(vec![3]).unwrap()).unwrap()
}

fn paley12() -> HadamardMatrix {
    gen_paley(11).unwrap()
}

fn ring_from_smatrix(s: &SMatrix) -> std::result::Result<FusionRing, String> {
    let t = ok(verlinde_tensor(s))?;
    let tilde = ok(involution_from_smatrix(s, TOL))?;
    ok(FusionRing::new(t.n, t.tensor, tilde))
}

fn ext2_smatrix() -> SMatrix {
    let SMatrix::Exact(c) = group_ring_smatrix(&GroupSpec::new(vec![2, 2]).unwrap()).unwrap() else {
        unreachable!()
    };
    SMatrix::exact(exterior_square(&c).unwrap()).unwrap()
}

fn trace_triple() -> Check {
    let ring = z3();
    let r = RingElement::from_ints(&[-1, -1, 1]);
    let mut p = r.clone();
    let mut got = Vec::new();
    for _ in 0..3 {
        got.push(ok(ring.trace(&p))?);
        p = ok(ring.multiply(&p, &r))?;
    }
    let want: Vec<CycNum> = [-1, -1, 5].iter().map(|&x| CycNum::from_int(x)).collect();
    ensure!(got == want, "traces {got:?}");
    Ok(())
}

// same multiset of rows after some column permutation
fn equal_up_to_permutation(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let n = a.len();
    let target: BTreeSet<(Vec<i64>, usize)> = multiset(b);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let pa: Vec<Vec<i64>> = a.iter().map(|r| perm.iter().map(|&c| r[c]).collect()).collect();
        if multiset(&pa) == target {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn multiset(rows: &[Vec<i64>]) -> BTreeSet<(Vec<i64>, usize)> {
    let mut out = BTreeSet::new();
    for r in rows {
        let mut c = 0;
        while out.contains(&(r.clone(), c)) {
            c += 1;
        }
        out.insert((r.clone(), c));
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn exterior_square_fixture() -> Check {
    let s = ext2_smatrix();
    let ring = ring_from_smatrix(&s)?;
    let report = ring.verify_axioms();
    ensure!(report.all_passed(), "axioms: {report:?}");
    let mut e: Vec<Rat> = ring.identity_rational().ok_or("no rational identity")?.to_vec();
    e.sort();
    let mut want = vec![rat_frac(-1, 2), rat_frac(-1, 4), rat_frac(-1, 4), rat_frac(0, 1), rat_frac(0, 1), rat_frac(0, 1)];
    want.sort();
    ensure!(e == want, "identity coefficients {e:?}");
    let ints = s.as_integers().ok_or("not integral")?;
    ensure!(
        equal_up_to_permutation(&ints, &fixture_ext2_printed()),
        "does not match the printed matrix up to permutation"
    );
    Ok(())
}

fn monoid_rejected() -> Check {
    let s = ok(SMatrix::from_ints(&fixture_monoid()))?;
    let t = ok(verlinde_tensor(&s))?;
    ensure!(
        ok(find_valid_involution(4, &t.tensor))?.is_none(),
        "an involution satisfies the axioms"
    );
    ensure!(!hermitian_orthogonality_check(&s, TOL).orthogonal, "rows are orthogonal");
    for tilde in involutions(4) {
        ensure!(
            !ok(row_orthogonality_check(&s, &tilde, TOL))?.orthogonal,
            "rows orthogonal for {tilde:?}"
        );
    }
    Ok(())
}

fn verlinde_round_trip() -> Check {
    let ext2 = ring_from_smatrix(&ext2_smatrix())?;
    let paley = ok(ring_from_hadamard(&paley12()))?;
    for (name, ring) in [("Z/3", z3()), ("Paley 12", paley), ("exterior square", ext2)] {
        let s = ok(smatrix_from_tensor(&ring, TOL))?;
        let t = ok(verlinde_tensor(&s))?;
        ensure!(t.tensor == ring.tensor(), "{name}: tensor differs");
        let o = ok(row_orthogonality_check(&s, ring.tilde(), 1e-9))?;
        ensure!(o.orthogonal, "{name}: deviation {}", o.max_deviation);
        ensure!(s.is_exact() || o.max_deviation < 1e-9, "{name}: deviation {}", o.max_deviation);
    }
    Ok(())
}

fn ds3_fixture() -> Check {
    let rows = fixture_ds3();
    let t = ok(verlinde_tensor(&ok(SMatrix::from_ints(&rows))?))?;
    ensure!(t.nonnegative, "negative constants");
    let dot: i64 = rows[0].iter().zip(&rows[1]).map(|(a, b)| a * b).sum();
    ensure!(dot == 8, "row0 . row1 = {dot}");
    Ok(())
}

fn brute_closed_subsets(ring: &FusionRing) -> BTreeSet<Vec<usize>> {
    let n = ring.rank();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let inside = |x: usize| mask >> x & 1 == 1;
        let closed = (0..n).filter(|&i| inside(i)).all(|i| {
            (0..n)
                .filter(|&j| inside(j))
                .all(|j| (0..n).all(|m| inside(m) || ring.constant(i, j, m) == 0))
        });
        if closed {
            out.insert((0..n).filter(|&i| inside(i)).collect());
        }
    }
    out
}

fn hadamard12() -> Check {
    let h = paley12();
    let ring = ok(ring_from_hadamard(&h))?;
    let n = 12;
    for i in 1..n {
        for j in 1..n {
            for m in 1..n {
                if i != j && j != m && i != m {
                    let c = ring.constant(i, j, m);
                    ensure!(c == 1 || c == -1, "N[{i}][{j}][{m}] = {c}");
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let sq: i64 = (0..n).map(|m| ring.constant(i, j, m).pow(2)).sum();
            ensure!(sq == 9 && sum_squares_check(&ring, i, j), "sum of squares at ({i},{j}) is {sq}");
        }
    }
    let got: BTreeSet<Vec<usize>> = ok(had_closed_subsets(&ring))?.into_iter().collect();
    let oracle = brute_closed_subsets(&ring);
    ensure!(got == oracle, "closed subsets {got:?} vs oracle {oracle:?}");
    ensure!(oracle.len() == 13, "{} closed subsets", oracle.len());
    let census = multiset_census(&ring);
    ensure!(
        census.len() == 1 && census.len() as u128 == ok(triangular_bound(3))?,
        "census {census:?}"
    );
    let p = ok(profile(&h))?;
    ensure!(p.keys().all(|k| k % 8 == 4), "profile keys {p:?}");
    ensure!(p.values().sum::<u64>() == 495, "profile total");
    Ok(())
}

fn wmatrices() -> Check {
    let ring = ok(ring_from_hadamard(&paley12()))?;
    for i in 1..12 {
        let w = ok(wmatrix(&ring, i))?;
        ensure!(w.len() == 20 && w.iter().all(|r| r.len() == 20), "W_{i} shape");
        ensure!(w.iter().flatten().all(|&x| x == 1 || x == -1), "W_{i} entries");
        for a in 0..20 {
            for b in 0..20 {
                let d: i64 = (0..20).map(|c| w[a][c] * w[b][c]).sum();
                ensure!(d == if a == b { 20 } else { 0 }, "W_{i} W_{i}^T at ({a},{b}) is {d}");
            }
        }
    }
    Ok(())
}

fn exact_reconstruction() -> Check {
    for h in [paley12(), ok(gen_sylvester(4))?] {
        let ring = ok(ring_from_hadamard(&h))?;
        let back = ok(reconstruct_exact(&ring))?;
        ensure!(back.sorted_rows() == h.sorted_rows(), "order {} differs", h.n());
    }
    Ok(())
}

fn mod3_reconstruction() -> Check {
    let h = ok(gen_sylvester(4))?;
    let ring = ok(ring_from_hadamard(&h))?;
    let got = ok(reconstruct_mod3(16, &tensor_mod3(&ring), 4))?;
    let reduce = |rows: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        let mut r: Vec<Vec<i64>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.rem_euclid(3)).collect())
            .collect();
        r.sort();
        r
    };
    ensure!(reduce(got) == reduce(h.rows()), "rows differ mod 3");
    Ok(())
}

fn nonnegative_lift() -> Check {
    let h = paley12();
    // the ring of H has s-matrix k H
    let rows: Vec<Vec<i64>> = h.rows().iter().map(|r| r.iter().map(|x| 3 * x).collect()).collect();
    let s = ok(SMatrix::from_ints(&rows))?;
    let lift = ok(fannsc_lift(&s, 4096))?;
    let alg = &lift.lifted;
    ensure!(alg.is_nonnegative(), "negative lifted constant");
    ensure!(alg.rank() <= 1024, "|H| = {}", alg.rank());
    let one = lift.distinguished[0];
    ensure!(
        lift.vectors[one].iter().all(|e| *e == Some(0)),
        "column 0 is not the identity vector"
    );
    for (i, &x) in lift.distinguished.iter().enumerate() {
        let p = alg.product(x, x);
        ensure!(p == [(one as u32, 3)], "x_v{i}^2 = {p:?}");
    }
    ensure!(inside_scaled_group_ring(&lift, 3), "not inside 3 Z[H]");
    ensure!(quotient_verify(&lift, &ok(ring_from_hadamard(&h))?), "quotient_verify failed");
    Ok(())
}

fn order2() -> Check {
    let g = ok(GroupSpec::new(vec![2, 3]))?;
    let ring = ok(group_ring(&g))?;
    let q = ok(order2_quotient(&ring, g.index(&[1, 0])))?;
    ensure!(q.algebra.dense_tensor() == z3().tensor(), "quotient differs from Z/3");
    ensure!(q.algebra.is_nonnegative(), "negative constants");
    Ok(())
}

fn a1_oracle(k: i64, a: i64, b: i64, c: i64) -> i64 {
    i64::from((a - b).abs() <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0)
}

fn kac_peterson() -> Check {
    for level in 1..=8u32 {
        let s = ok(kac_peterson_a1(level))?;
        let t = ok(verlinde_tensor(&s))?;
        ensure!(t.max_deviation < 1e-6, "level {level}: deviation {}", t.max_deviation);
        let n = level as usize + 1;
        let k = level as i64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let want = a1_oracle(k, a as i64, b as i64, c as i64);
                    ensure!(t.constant(a, b, c) == want, "level {level}: N[{a}][{b}][{c}]");
                }
            }
        }
    }
    Ok(())
}

// Closedness straight from the rational Verlinde sums.
fn rational_closed(s: &Matrix<Rat>, inv: &Matrix<Rat>, set: &[usize]) -> bool {
    let n = s.rows();
    set.iter().all(|&i| {
        set.iter().all(|&j| {
            (0..n).filter(|m| !set.contains(m)).all(|m| {
                (0..n)
                    .map(|l| s.get(l, i) * s.get(l, j) * inv.get(m, l))
                    .sum::<Rat>()
                    == Rat::from_integer(0.into())
            })
        })
    })
}

fn heuristic_28() -> Check {
    let SMatrix::Exact(c) = ok(group_ring_smatrix(&ok(GroupSpec::new(vec![2, 2, 2]))?))? else {
        return Err("expected an exact table".into());
    };
    let s = ok(SMatrix::exact(ok(exterior_square(&c))?))?;
    ensure!(s.n() == 28, "size {}", s.n());
    let found = ok(closed_subset_heuristic(&s, TOL))?;
    ensure!(!found.sets.is_empty(), "no subsets returned");
    let r = s.as_rational().ok_or("not rational")?;
    let inv = ok(r.inverse())?;
    for set in &found.sets {
        ensure!(rational_closed(&r, &inv, set), "{set:?} is not closed");
    }
    Ok(())
}

fn generated_hadamards() -> std::result::Result<Vec<HadamardMatrix>, String> {
    let mut out = Vec::new();
    for m in 2..=4 {
        out.push(ok(gen_sylvester(m))?);
    }
    for q in [3, 7, 11, 19] {
        out.push(ok(gen_paley(q))?);
    }
    let h2 = hadamard2();
    out.push(ok(gen_kronecker(&h2, &ok(gen_paley(3))?))?);
    out.push(ok(gen_kronecker(&h2, &ok(gen_paley(7))?))?);
    out.push(ok(gen_kronecker(&h2, &h2))?);
    Ok(out)
}

fn xi_invariants() -> Check {
    for h in generated_hadamards()? {
        let n = h.n();
        ensure!(n <= 20, "order {n}");
        let k = n / 4;
        let ring = ok(ring_from_hadamard(&h))?;
        let xi: Vec<BTreeSet<usize>> = xi_sets(&h).into_iter().map(|s| s.into_iter().collect()).collect();
        ensure!(xi[0].is_empty(), "xi_0 nonempty");
        for i in 1..n {
            ensure!(xi[i].len() == 2 * k, "order {n}: |xi_{i}| = {}", xi[i].len());
            for j in 1..n {
                if i == j {
                    continue;
                }
                let ij: BTreeSet<usize> = xi[i].intersection(&xi[j]).copied().collect();
                ensure!(ij.len() == k, "order {n}: |xi_{i} & xi_{j}| = {}", ij.len());
                for m in 1..n {
                    if m == i || m == j {
                        continue;
                    }
                    let t = ij.intersection(&xi[m]).count() as i64;
                    ensure!(
                        ring.constant(i, j, m) == k as i64 - 2 * t,
                        "order {n}: N[{i}][{j}][{m}]"
                    );
                }
            }
        }
        if k % 2 == 1 && k > 1 {
            ensure!(ok(parity_check(&ring))?, "order {n}: parity");
        }
    }
    for k in [3, 5] {
        ensure!(f2_algebra_check(4 * k, &ok(f2_algebra_tensor(k))?), "F2 algebra for k = {k}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Duration, fn() -> Check)> = vec![
        ("Z/3 trace triple", Duration::from_secs(1), trace_triple),
        ("exterior-square fixture", Duration::from_secs(1), exterior_square_fixture),
        ("monoid non-example", Duration::from_secs(1), monoid_rejected),
        ("Verlinde round trip", Duration::from_secs(5), verlinde_round_trip),
        ("D(S3)/I fixture", Duration::from_secs(1), ds3_fixture),
        ("Hadamard 12x12", Duration::from_secs(10), hadamard12),
        ("W-matrices", Duration::from_secs(2), wmatrices),
        ("exact reconstruction", Duration::from_secs(10), exact_reconstruction),
        ("mod-3 reconstruction", Duration::from_secs(10), mod3_reconstruction),
        ("nonnegative lift", Duration::from_secs(30), nonnegative_lift),
        ("order-2 quotient", Duration::from_secs(1), order2),
        ("Kac-Peterson A1 levels 1-8", Duration::from_secs(5), kac_peterson),
        ("heuristic on the 28x28 exterior square", Duration::from_secs(60), heuristic_28),
        ("xi-set and parity invariants", Duration::from_secs(30), xi_invariants),
    ];
    let mut failed = 0;
    for (idx, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = res.and_then(|()| {
            if took <= limit {
                Ok(())
            } else {
                Err(format!("took longer than {limit:?}"))
            }
        });
        match res {
            Ok(()) => println!("PASS {:>2} {name} ({took:.2?})", idx + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {e}", idx + 1);
            }
        }
    }
    println!("acceptance: {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
