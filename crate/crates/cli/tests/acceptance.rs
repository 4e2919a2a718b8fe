//! Acceptance suite: one test per top-level claim of the laboratory, each
//! ending in a single `criterion N (...): PASS` line (visible with
//! `--nocapture`).  A failed assertion fails the criterion's test, so the
//! harness summary doubles as the pass/fail report.

use std::path::Path;
use std::process::Command;

use stbc_lab::codes::{
    fgd_ren_code, herm_basis_code, natarajan_g2_code, ryggz_basis_set, validate_weight_set,
    HermFlavor, WeightSet,
};
use stbc_lab::decoder::{
    brute_force_ml, complexity_scan, multigroup_decode, rank_deficient_decode,
    simulate_transmission, SignalSet,
};
use stbc_lab::equiv::{
    build_equiv_channel, extended_channel_rank_check, f_rank, group_orthogonality,
    hermitian_kernel_check, pinned_coordinate_kernel_check, predict_rank, rank_additivity_check,
    rank_monte_carlo, FamilyParams,
};
use stbc_lab::io::channel_from_json;
use stbc_lab::linalg::{
    complex_rank, numerical_rank, qr_decompose, sample_channel, ComplexMatrix, RandomSource,
    RealMatrix, DEFAULT_RANK_TOL,
};

/// Entries at or below this fraction of the largest entry count as zero when
/// rendering a triangular factor's structural pattern.
const MASK_TOL: f64 = 1e-9;

fn load_fixture(name: &str) -> ComplexMatrix {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    let text = std::fs::read_to_string(&path).expect("fixture file is readable");
    channel_from_json(&text).expect("fixture holds a valid channel")
}

/// Renders each row of `r` as a string of `a` (structurally nonzero) and `0`.
fn zero_pattern(r: &RealMatrix) -> Vec<String> {
    let scale = r.max_abs();
    (0..r.rows())
        .map(|i| {
            (0..r.cols())
                .map(|j| if r.get(i, j).abs() > MASK_TOL * scale { 'a' } else { '0' })
                .collect()
        })
        .collect()
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn criterion_1_hermitian_rank_law() {
    let rng = RandomSource::new(7);
    for n in [2usize, 3, 4, 8] {
        let w = herm_basis_code(n, HermFlavor::UnitaryHermitian).unwrap();
        for m in 1..=n + 1 {
            let predicted = if m < n { f_rank(n, m) } else { n * n };
            assert_eq!(predicted, predict_rank(&FamilyParams::HermBasis { n }, m).total);
            let stats = rank_monte_carlo(&w, m, 200, predicted, &rng);
            assert_eq!(stats.match_fraction, 1.0, "herm({n}) M={m}: {stats:?}");
            assert_eq!((stats.min_rank, stats.max_rank), (predicted, predicted));
        }
    }
    assert_eq!(f_rank(3, 2), 8);
    assert_eq!(f_rank(4, 3), 15);

    // The same law through the command-line front end.
    let out = Command::new(env!("CARGO_BIN_EXE_stbc-lab"))
        .args([
            "rank", "--family", "herm", "--n", "3", "--m", "1,2,3,4", "--trials", "200",
            "--seed", "7", "--no-timestamp",
        ])
        .output()
        .expect("rank command runs");
    assert!(out.status.success(), "rank command exited with {:?}", out.status);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.contains("herm(3),3,3,9,2,200,8,8,8,1.000000"), "unexpected CSV:\n{csv}");

    println!("criterion 1 (hermitian-basis rank law): PASS");
}

#[test]
fn criterion_2_fast_group_decodable_reproduction() {
    let w = fgd_ren_code();
    let h = load_fixture("h_fgd_ren_m3.json");
    let ec = build_equiv_channel(&w, &h).unwrap();
    assert_eq!(numerical_rank(&ec.g, DEFAULT_RANK_TOL), 16);

    // Unpivoted triangular factor: 17th column dependent, 8 zero rows, and
    // the staircase fill pattern of this fixture reproduced exactly.
    let f = qr_decompose(&ec.g, false);
    let scale = f.r.max_abs();
    for d in 0..16 {
        assert!(f.r.get(d, d).abs() > MASK_TOL * scale, "diagonal {d} vanished");
    }
    assert!(f.r.get(16, 16).abs() <= MASK_TOL * scale, "17th column is not dependent");
    let zero_rows = (0..f.r.rows())
        .filter(|&i| (0..f.r.cols()).all(|j| f.r.get(i, j).abs() <= MASK_TOL * scale))
        .count();
    assert_eq!(zero_rows, 8);
    let expected = [
        "a0000000000000000",
        "0a0000aa0000aaaaa",
        "00a000a0aaa00a0aa",
        "000a000aaa0aa00aa",
        "0000a0aaa0aa00aa0",
        "00000a000aaaaaaa0",
        "000000aaaaaaaaaaa",
        "0000000aaaaaaaaaa",
        "00000000aaaaaaaaa",
        "000000000aaaaaaaa",
        "0000000000aaaaaaa",
        "00000000000aaaaaa",
        "000000000000aaaaa",
        "0000000000000aaaa",
        "00000000000000aaa",
        "000000000000000aa",
        "00000000000000000",
        "00000000000000000",
        "00000000000000000",
        "00000000000000000",
        "00000000000000000",
        "00000000000000000",
        "00000000000000000",
        "00000000000000000",
    ];
    assert_eq!(zero_pattern(&f.r), expected);

    let rng = RandomSource::new(7);
    assert_eq!(rank_monte_carlo(&w, 3, 200, 16, &rng).match_fraction, 1.0);
    for m in [4usize, 5] {
        assert_eq!(rank_monte_carlo(&w, m, 200, 17, &rng).match_fraction, 1.0, "M={m}");
    }

    println!("criterion 2 (fast-group-decodable code on the shipped channel): PASS");
}

#[test]
fn criterion_3_two_group_code_reproduction() {
    let w = natarajan_g2_code(3).unwrap();
    let h = load_fixture("h_natarajan_g2_m2.json");
    let ec = build_equiv_channel(&w, &h).unwrap();
    assert_eq!(numerical_rank(&ec.g, DEFAULT_RANK_TOL), 18);

    let per: Vec<usize> =
        ec.group_blocks.iter().map(|b| numerical_rank(b, DEFAULT_RANK_TOL)).collect();
    assert_eq!(per, vec![9, 9]);
    assert!(rank_additivity_check(&ec, DEFAULT_RANK_TOL));

    // Group-2 columns are orthogonal to every group-1 direction, so the
    // upper-right 10 x 10 block of the unpivoted factor vanishes.
    let f = qr_decompose(&ec.g, false);
    let scale = f.r.max_abs();
    for i in 0..10 {
        for j in 10..20 {
            assert!(f.r.get(i, j).abs() <= MASK_TOL * scale, "R[{i}][{j}] should vanish");
        }
    }

    println!("criterion 3 (two-group code on the shipped channel): PASS");
}

#[test]
fn criterion_4_ryggz_basis_rank_formula() {
    let rng = RandomSource::new(7);
    for (n, t) in [(2usize, 6usize), (4, 8)] {
        let w = ryggz_basis_set(n, t).unwrap();
        for m in 1..=n {
            let predicted = (t - 2 * n) * n.min(m) + f_rank(n, m) + 1;
            assert_eq!(predicted, predict_rank(&FamilyParams::RyggzBasis { n, t }, m).total);
            let stats = rank_monte_carlo(&w, m, 200, predicted, &rng);
            assert_eq!(stats.match_fraction, 1.0, "ryggz-basis({n},{t}) M={m}: {stats:?}");
        }
    }
    assert_eq!((8 - 2 * 4) * 4usize.min(3) + f_rank(4, 3) + 1, 16);

    println!("criterion 4 (ryggz-basis rank formula): PASS");
}

#[test]
fn criterion_5_kernel_dimension_suite() {
    let rng = RandomSource::new(7);
    for (n, m) in [(3usize, 2usize), (4, 2), (4, 3), (6, 4)] {
        let a = hermitian_kernel_check(n, m, 100, &rng).unwrap();
        assert_eq!(a.expected, (n - m) * (n - m));
        assert!(a.all_match(), "hermitian kernel ({n},{m}): {a:?}");

        let b = pinned_coordinate_kernel_check(n, m, 100, &rng).unwrap();
        assert_eq!(b.expected, 2 * (n - m) - 1);
        assert!(b.all_match(), "pinned-coordinate kernel ({n},{m}): {b:?}");

        let c = extended_channel_rank_check(n, m, 100, &rng).unwrap();
        assert_eq!(c.expected, m + 1);
        assert!(c.all_match(), "extended channel rank ({n},{m}): {c:?}");
    }

    println!("criterion 5 (kernel-dimension suite): PASS");
}

/// Decodes `instances` noisy blocks and checks both practical decoders
/// against the exhaustive oracle: identical estimates, costs within 1e-9
/// relative, and the conditioned enumeration exactly `q^(K - K')` wide.
fn assert_oracle_equivalence(w: &WeightSet, m: usize, q: usize, instances: usize, seed: u64) {
    let sig = SignalSet::pam(q).unwrap();
    let root = RandomSource::new(seed);
    let grouped_applies = w.group_count() > 1;
    for i in 0..instances {
        let mut child = root.child(i as u64);
        let h = sample_channel(w.n, m, &mut child);
        let inst = simulate_transmission(w, &h, None, &sig, 10.0, &mut child).unwrap();
        let ec = build_equiv_channel(w, &h).unwrap();

        let oracle = brute_force_ml(&ec.g, &inst.y, &sig).unwrap();
        let fast = rank_deficient_decode(&ec.g, &inst.y, &sig).unwrap();
        assert_eq!(fast.s_hat, oracle.s_hat, "{} q={q} instance {i}", w.name);
        assert!(
            rel_close(fast.cost, oracle.cost),
            "{} q={q} instance {i}: cost {} vs oracle {}",
            w.name,
            fast.cost,
            oracle.cost
        );

        let k_prime = numerical_rank(&ec.g, DEFAULT_RANK_TOL);
        assert_eq!(fast.outer_candidates, (q as u64).pow((w.k - k_prime) as u32));

        if grouped_applies {
            let grouped = multigroup_decode(&ec, &inst.y, &sig, None).unwrap();
            assert_eq!(grouped.s_hat, oracle.s_hat, "{} q={q} instance {i} grouped", w.name);
            assert!(rel_close(grouped.cost, oracle.cost));
        }
    }
}

#[test]
fn criterion_6_decoder_oracle_equivalence() {
    let herm2 = herm_basis_code(2, HermFlavor::UnitaryHermitian).unwrap();
    assert_oracle_equivalence(&herm2, 1, 2, 500, 7);
    assert_oracle_equivalence(&herm2, 1, 4, 500, 8);

    let herm3 = herm_basis_code(3, HermFlavor::UnitaryHermitian).unwrap();
    assert_oracle_equivalence(&herm3, 2, 2, 500, 9);

    let nat3 = natarajan_g2_code(3).unwrap();
    assert_oracle_equivalence(&nat3, 2, 2, 200, 10);

    println!("criterion 6 (decoder oracle equivalence): PASS");
}

#[test]
fn criterion_7_conditioned_enumeration_complexity() {
    let rng = RandomSource::new(7);
    let qs = [2usize, 4, 8];

    let herm4 = herm_basis_code(4, HermFlavor::UnitaryHermitian).unwrap();
    for p in &complexity_scan(&herm4, 3, &qs, 5, 20.0, &rng).unwrap() {
        assert_eq!((p.k_prime, p.exponent), (15, 1), "herm(4) M=3 q={}", p.q);
        assert_eq!(p.outer_candidates, p.q as u64);
    }

    let nat3 = natarajan_g2_code(3).unwrap();
    for p in &complexity_scan(&nat3, 2, &qs, 5, 20.0, &rng).unwrap() {
        assert_eq!(p.per_group_exponents, vec![1, 1], "natarajan-g2(3) q={}", p.q);
        assert_eq!((p.k_prime, p.exponent), (18, 2));
        assert_eq!(p.outer_candidates, (p.q as u64).pow(2));
    }

    let ryggz = ryggz_basis_set(4, 8).unwrap();
    for p in &complexity_scan(&ryggz, 3, &qs, 5, 20.0, &rng).unwrap() {
        assert_eq!((p.k_prime, p.exponent), (16, 1), "ryggz-basis(4,8) M=3 q={}", p.q);
        assert_eq!(p.outer_candidates, p.q as u64);
    }

    let points = complexity_scan(&herm4, 2, &qs, 3, 20.0, &rng).unwrap();
    let outers: Vec<u64> = points.iter().map(|p| p.outer_candidates).collect();
    assert_eq!(outers, vec![16, 256, 4096]);
    for p in &points {
        assert_eq!((p.k_prime, p.exponent), (12, 4), "herm(4) M=2 q={}", p.q);
    }

    println!("criterion 7 (conditioned-enumeration complexity law): PASS");
}

#[test]
fn criterion_8_structural_invariants() {
    let mut shipped: Vec<WeightSet> = vec![fgd_ren_code()];
    for n in [2usize, 3, 4, 8] {
        shipped.push(herm_basis_code(n, HermFlavor::UnitaryHermitian).unwrap());
        shipped.push(herm_basis_code(n, HermFlavor::Standard).unwrap());
    }
    for n in [2usize, 3] {
        shipped.push(natarajan_g2_code(n).unwrap());
    }
    for (n, t) in [(2usize, 6usize), (4, 8)] {
        shipped.push(ryggz_basis_set(n, t).unwrap());
    }
    for w in &shipped {
        let report = validate_weight_set(w);
        assert!(report.pass, "{} failed validation: {report:?}", w.name);
        if let Some(hr) = report.max_cross_group_hr {
            assert!(hr < 1e-12, "{}: cross-group residual {hr}", w.name);
        }
    }

    // Column blocks of different groups stay orthogonal for random channels.
    let root = RandomSource::new(7);
    for (w, m) in [(fgd_ren_code(), 3usize), (natarajan_g2_code(3).unwrap(), 2)] {
        for trial in 0..100u64 {
            let mut child = root.child(trial);
            let h = sample_channel(w.n, m, &mut child);
            let ec = build_equiv_channel(&w, &h).unwrap();
            let coherence = group_orthogonality(&ec).unwrap();
            assert!(coherence < 1e-9, "{} trial {trial}: coherence {coherence}", w.name);
        }
    }

    // rank(G) is unchanged by invertible recombination of the symbols and by
    // an invertible matrix applied to every weight matrix from the left.
    let herm3 = herm_basis_code(3, HermFlavor::UnitaryHermitian).unwrap();
    let nat3 = natarajan_g2_code(3).unwrap();
    for (w, m) in [(herm3, 2usize), (nat3, 2)] {
        let mut child = root.child(1_000);
        let h = sample_channel(w.n, m, &mut child);
        let ec = build_equiv_channel(&w, &h).unwrap();
        let base = numerical_rank(&ec.g, DEFAULT_RANK_TOL);
        for trial in 0..100u64 {
            let mut rng = root.child(2_000 + trial);

            let c = RealMatrix::from_fn(w.k, w.k, |_, _| rng.normal());
            assert_eq!(numerical_rank(&c, DEFAULT_RANK_TOL), w.k, "recombination not invertible");
            assert_eq!(numerical_rank(&ec.g.mul(&c), DEFAULT_RANK_TOL), base, "{}", w.name);

            let u = sample_channel(w.t, w.t, &mut rng);
            assert_eq!(complex_rank(&u, DEFAULT_RANK_TOL), w.t, "left factor not invertible");
            let recoded = WeightSet {
                name: w.name.clone(),
                t: w.t,
                n: w.n,
                k: w.k,
                matrices: w.matrices.iter().map(|a| u.mul(a)).collect(),
                groups: w.groups.clone(),
            };
            let ec2 = build_equiv_channel(&recoded, &h).unwrap();
            assert_eq!(numerical_rank(&ec2.g, DEFAULT_RANK_TOL), base, "{}", w.name);
        }
    }

    println!("criterion 8 (structural invariants): PASS");
}
