//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::io::Write as _;
use std::panic;
use std::process::{Command, Stdio};
use std::time::Instant;

use geoarith::convergence::{
    chain_extract, check_arith_convergent, check_arith_summable, classify_eventually_zero,
    linear_combine_check, summable_chain_extract,
};
use geoarith::divisor::{
    dirichlet_convolve, dirichlet_identity, divisor_mobius_sum, gcd, ArithFn, DirichletIdentity,
    DirichletUnit, Mobius, Tabulated,
};
use geoarith::transform::{
    emit_m_matrix, emit_w_matrix, gmatmul, m_transform, q_transform, r_transform, w_transform,
};
use geoarith::{GReal, GSeq, Mode, Space, Tolerance, Verdict};
use geoarith_cli::format::{chain_line, report_line};
use geoarith_cli::{write_gseq, Repr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXACT: Mode = Mode::Exact(Tolerance::EXACT);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_int_seq(rng: &mut ChaCha8Rng, len: usize) -> GSeq {
    GSeq::from_fn(len, |_| GReal::from_int(rng.gen_range(-9..=9))).unwrap()
}

fn random_real_seq(rng: &mut ChaCha8Rng, len: usize) -> GSeq {
    GSeq::from_fn(len, |_| GReal::from_exponent(rng.gen_range(-10.0..10.0)).unwrap()).unwrap()
}

fn random_scalar(rng: &mut ChaCha8Rng) -> GReal {
    GReal::from_exponent(rng.gen_range(-5.0..5.0)).unwrap()
}

fn rel_agree(got: f64, want: f64) -> bool {
    if got.is_infinite() || want.is_infinite() {
        return got == want;
    }
    (got - want).abs() <= 1e-12 * got.abs().max(want.abs())
}

/// 1. Field oracle.
fn field_oracle() {
    let mut r = rng(1);
    for _ in 0..10_000 {
        let v = r.gen_range(-20.0f64..20.0).exp();
        let w = r.gen_range(-20.0f64..20.0).exp();
        let (x, y) = (GReal::from_value(v).unwrap(), GReal::from_value(w).unwrap());
        let (lv, lw) = (v.ln(), w.ln());
        assert!(rel_agree(x.gadd(y).value(), (lv + lw).exp()), "⊕ {v} {w}");
        assert!(rel_agree(x.gsub(y).value(), (lv - lw).exp()), "⊖ {v} {w}");
        assert!(rel_agree(x.gmul(y).value(), (lv * lw).exp()), "⊙ {v} {w}");
        assert!(rel_agree(x.gdiv(y).unwrap().value(), (lv / lw).exp()), "⊘ {v} {w}");
    }
    // exact identities on exponents that are multiples of 2^-10 in [-20, 20]
    let dyadic = |r: &mut ChaCha8Rng| GReal::from_exponent(r.gen_range(-20480i32..=20480) as f64 / 1024.0).unwrap();
    for _ in 0..10_000 {
        let (x, y, z) = (dyadic(&mut r), dyadic(&mut r), dyadic(&mut r));
        assert_eq!(x + y, y + x);
        assert_eq!(x * y, y * x);
        assert_eq!((x + y) + z, x + (y + z));
        assert_eq!((x * y) * z, x * (y * z));
        assert_eq!(x * (y + z), x * y + x * z);
        assert_eq!(x + GReal::ZERO, x);
        assert_eq!(x * GReal::ONE, x);
        assert_eq!(x + (-x), GReal::ZERO);
        let k = r.gen_range(-20i32..=20);
        let p = GReal::from_exponent(2f64.powi(k)).unwrap();
        assert_eq!(p * p.ginv().unwrap(), GReal::ONE);
    }
}

/// 2. Divisor sums of the geometric Möbius function.
fn mobius_lemma() {
    for n in 1..=10_000 {
        let want = if n == 1 { GReal::ONE } else { GReal::ZERO };
        assert_eq!(divisor_mobius_sum(n).unwrap(), want, "n={n}");
    }
}

/// 3. Dirichlet algebra.
fn dirichlet_algebra() {
    const N: usize = 512;
    let mut r = rng(3);
    let mu = Tabulated::memoize(&Mobius::default(), N).unwrap();
    for n in 1..=N {
        assert_eq!(dirichlet_convolve(&DirichletUnit, &mu, n).unwrap(), dirichlet_identity(n));
        assert_eq!(dirichlet_convolve(&mu, &DirichletUnit, n).unwrap(), dirichlet_identity(n));
    }
    let table = |r: &mut ChaCha8Rng| Tabulated::from_fn(N, |_| GReal::from_int(r.gen_range(-9..=9)));
    let fns: Vec<Tabulated> = (0..100).map(|_| table(&mut r)).collect();
    for (i, f) in fns.iter().enumerate() {
        let g = &fns[(i + 1) % fns.len()];
        let h = &fns[(i + 2) % fns.len()];
        let fg = Tabulated::from_fn(N, |n| dirichlet_convolve(f, g, n).unwrap());
        let gh = Tabulated::from_fn(N, |n| dirichlet_convolve(g, h, n).unwrap());
        for n in 1..=N {
            assert_eq!(fg.eval(n).unwrap(), dirichlet_convolve(g, f, n).unwrap());
            assert_eq!(
                dirichlet_convolve(&fg, h, n).unwrap(),
                dirichlet_convolve(f, &gh, n).unwrap()
            );
            assert_eq!(dirichlet_convolve(f, &DirichletIdentity, n).unwrap(), f.eval(n).unwrap());
            assert_eq!(dirichlet_convolve(&DirichletIdentity, f, n).unwrap(), f.eval(n).unwrap());
        }
    }
}

/// 4. Möbius inversion roundtrip.
fn inversion_roundtrip() {
    let mut r = rng(4);
    for _ in 0..100 {
        let f = random_int_seq(&mut r, 512);
        assert_eq!(m_transform(&w_transform(&f)), f);
    }
    for _ in 0..100 {
        let f = random_real_seq(&mut r, 512);
        let back = m_transform(&w_transform(&f));
        for (a, b) in back.iter().zip(f.iter()) {
            assert!((a.exponent() - b.exponent()).abs() <= 1e-9);
        }
    }
}

/// 5. Matrix identity and convergent rows.
fn matrix_identity() {
    for n in [16, 64, 256] {
        let w = emit_w_matrix(n).unwrap();
        let m = emit_m_matrix(n).unwrap();
        assert!(gmatmul(&w, &m).unwrap().is_identity(), "W·M, N={n}");
        assert!(gmatmul(&m, &w).unwrap().is_identity(), "M·W, N={n}");
        for i in 1..=n {
            let row = GSeq::new(w.row(i).to_vec()).unwrap();
            let report = check_arith_convergent(&row, EXACT, None).unwrap();
            assert_eq!(report.witness, Some(i), "row {i}, N={n}");
        }
    }
}

/// 6. Golden examples, byte-exact in exponent representation.
fn golden_examples() {
    let ramp = GSeq::from_fn(12, |i| GReal::from_int(i as i64)).unwrap();
    let q1 = q_transform(&ramp, 1).unwrap();
    assert_eq!(write_gseq(&q1, Repr::Exponent), "1\n".repeat(12));
    assert_eq!(
        report_line(&check_arith_convergent(&q1, EXACT, None).unwrap()),
        "space=AC verdict=consistent witness=1 residual=e^0 N=12 mode=exact"
    );

    let alt = |len| GSeq::from_fn(len, |i| GReal::from_int(if i % 2 == 1 { 1 } else { 2 })).unwrap();
    assert_eq!(
        report_line(&check_arith_convergent(&alt(12), EXACT, None).unwrap()),
        "space=AC verdict=consistent witness=2 residual=e^0 N=12 mode=exact"
    );
    assert_eq!(
        chain_line(&chain_extract(&alt(16), &[2, 4, 8, 16], Tolerance::EXACT).unwrap()),
        "chain=2,4,8,16 extracted=e^2,e^2,e^2,e^2 cauchy=true limit=e^2"
    );

    let f = GSeq::from_fn(6, |i| GReal::from_int(i as i64)).unwrap();
    let rn = |n| write_gseq(&r_transform(&f, n).unwrap(), Repr::Exponent);
    assert_eq!(rn(1), "1\n0\n0\n0\n0\n0\n");
    assert_eq!(rn(2), "1\n2\n0\n0\n0\n0\n");
    assert_eq!(rn(3), "1\n0\n3\n0\n0\n0\n");

    let head = GSeq::from_fn(12, |i| GReal::from_int(if i <= 2 { 1 } else { 0 })).unwrap();
    assert_eq!(
        report_line(&check_arith_summable(&head, EXACT, None).unwrap()),
        "space=AS verdict=consistent witness=2 residual=e^0 N=12 mode=exact"
    );
    assert_eq!(
        report_line(&classify_eventually_zero(&head, Tolerance::EXACT)),
        "space=PHI verdict=consistent witness=2 residual=e^0 N=12 mode=exact"
    );
}

/// 7. Pullbacks, restrictions and the AS/AC bridge.
fn theorem_properties() {
    const N: usize = 64;
    let mut r = rng(7);
    for trial in 0..50 {
        let f = if trial % 2 == 0 { random_int_seq(&mut r, N) } else { random_real_seq(&mut r, N) };
        for n in 1..=64 {
            let q = check_arith_convergent(&q_transform(&f, n).unwrap(), EXACT, None).unwrap();
            assert!(q.is_consistent() && q.witness.unwrap() <= n, "Q_{n}");
            let rf = r_transform(&f, n).unwrap();
            let phi = classify_eventually_zero(&rf, Tolerance::EXACT);
            assert!(phi.is_consistent() && phi.witness.unwrap() <= n, "R_{n} in PHI");
            assert!(check_arith_summable(&rf, EXACT, None).unwrap().is_consistent(), "R_{n} in AS");
        }
        let lhs = check_arith_summable(&f, EXACT, None).unwrap();
        let rhs = check_arith_convergent(&w_transform(&f), EXACT, None).unwrap();
        assert_eq!(lhs.verdict, rhs.verdict);
        assert_eq!(lhs.witness, rhs.witness);
        assert_eq!(lhs.max_residual, rhs.max_residual);
    }
}

/// 8. Closure under geometric linear combinations.
fn linearity_closure() {
    const N: usize = 64;
    let mut r = rng(8);
    for trial in 0..100 {
        let n = r.gen_range(1..=N);
        let u = random_real_seq(&mut r, N);
        let v = random_real_seq(&mut r, N);
        let (a, b) = (random_scalar(&mut r), random_scalar(&mut r));
        let (space, f, g) = if trial % 2 == 0 {
            (Space::AC, q_transform(&u, n).unwrap(), q_transform(&v, n).unwrap())
        } else {
            (Space::AS, r_transform(&u, n).unwrap(), r_transform(&v, n).unwrap())
        };
        let report = linear_combine_check(&f, &g, a, b, space, EXACT).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent, "{space:?} n={n}");
        assert!(report.witness.unwrap() <= n);
    }
}

/// A random divisibility chain inside `1..=limit`, grown by factors of at
/// least 2 until it cannot grow, then held at its last element for as many
/// steps again. A chain confined to `1..=limit` is eventually constant, and
/// the window shows that constant tail.
fn random_chain(r: &mut ChaCha8Rng, limit: usize) -> Vec<usize> {
    let mut chain = vec![r.gen_range(1..=limit.min(8))];
    loop {
        let last = *chain.last().unwrap();
        if last * 2 > limit {
            break;
        }
        chain.push(last * r.gen_range(2..=limit / last));
    }
    let last = *chain.last().unwrap();
    let grown = chain.len();
    chain.extend(std::iter::repeat_n(last, grown));
    chain
}

/// 9. Chain extraction along divisibility chains.
fn chain_theorems() {
    const N: usize = 96;
    let mut r = rng(9);
    let mut ac_seen = 0;
    let mut as_seen = 0;
    for trial in 0..40 {
        let n = r.gen_range(1..=N);
        let u = if trial % 2 == 0 { random_int_seq(&mut r, N) } else { random_real_seq(&mut r, N) };
        let g = q_transform(&u, n).unwrap();
        let ac = check_arith_convergent(&g, EXACT, None).unwrap();
        assert!(ac.is_consistent());
        let witness = ac.witness.unwrap();
        ac_seen += 1;
        let f = if trial % 2 == 0 { m_transform(&g) } else { r_transform(&u, n).unwrap() };
        let as_report = check_arith_summable(&f, EXACT, None).unwrap();
        assert!(as_report.is_consistent());
        as_seen += 1;
        for _ in 0..20 {
            let chain = random_chain(&mut r, N);
            let c = chain_extract(&g, &chain, Tolerance::EXACT).unwrap();
            assert!(c.is_cauchy, "AC chain {chain:?}");
            // past the point where gcd(witness, n_k) settles the terms agree
            let settled = gcd(witness, *chain.last().unwrap());
            for (k, &nk) in chain.iter().enumerate() {
                if gcd(witness, nk) == settled {
                    assert_eq!(c.extracted.at(k + 1), c.limit.unwrap());
                }
            }
            let s = summable_chain_extract(&f, &chain, Tolerance::new(1e-9).unwrap()).unwrap();
            assert!(s.is_cauchy, "AS chain {chain:?}");
        }
    }
    assert_eq!((ac_seen, as_seen), (40, 40));
}

fn cli(args: &[&str], stdin: &[u8]) -> std::process::Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_geoarith"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn geoarith");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

/// 10. Command-line behaviour.
fn cli_behaviour() {
    let mut r = rng(10);
    for len in [1, 7, 64, 300] {
        let f = random_int_seq(&mut r, len);
        let text = write_gseq(&f, Repr::Exponent);
        let summed = cli(&["wsum"], text.as_bytes());
        assert_eq!(summed.status.code(), Some(0));
        let back = cli(&["minvert"], &summed.stdout);
        assert_eq!(back.status.code(), Some(0));
        assert_eq!(back.stdout, text.as_bytes());
    }
    let verify = cli(&["verify-inversion", "--size", "64"], b"");
    assert_eq!(verify.status.code(), Some(0));
    assert_eq!(verify.stdout, b"PASS\n");
    let bad = cli(&["wsum"], b"1\n2\nnot-a-number\n4\n");
    assert_eq!(bad.status.code(), Some(2));
    let stderr = String::from_utf8(bad.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
    let neg = cli(&["--repr", "value", "check-ac"], b"1\n-2\n");
    assert_eq!(neg.status.code(), Some(2));
    assert!(String::from_utf8(neg.stderr).unwrap().contains("line 2"));
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("field oracle", field_oracle),
        ("Möbius divisor-sum lemma", mobius_lemma),
        ("Dirichlet algebra", dirichlet_algebra),
        ("Möbius inversion roundtrip", inversion_roundtrip),
        ("W/M matrix identity", matrix_identity),
        ("golden examples", golden_examples),
        ("pullback/restriction theorems", theorem_properties),
        ("linearity closure", linearity_closure),
        ("chain theorems", chain_theorems),
        ("command line", cli_behaviour),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let ok = panic::catch_unwind(check).is_ok();
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {} ({:.2}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {} failed in {:.2}s",
        criteria.len() - failed,
        failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
