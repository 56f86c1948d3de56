//! Acceptance suite. Each criterion runs under its time limit and prints one
//! PASS/FAIL line; the test fails if any criterion does.
//!
//! cargo test --release -p arone-cli --test acceptance -- --nocapture

use std::time::{Duration, Instant};

use arone_cli::{cmd_table, cmd_verify, Cache, Context, Format, RangeList, Suite, VerifyRanges};
use arone_core::arith;
use arone_core::complex::{self, ComplexHandle};
use arone_core::homology::{self, snf, AbelianGroup, GradedGroup, LocalRing, SparseIntMatrix};
use arone_core::kunneth;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use serde_json::Value;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Ext^i(a, S^d o a) for d = 1..9, i = 0..8, transcribed from the published table.
const TABLE: [[&str; 9]; 9] = [
    ["Z", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "Z/2", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "Z/3", "Z/2", "0", "0", "0", "0", "0", "0"],
    ["0", "Z/2", "Z/3", "Z/2", "0", "0", "0", "0", "0"],
    ["0", "Z/5", "Z/2", "0", "Z/2", "0", "0", "0", "0"],
    ["0", "0", "Z/10", "Z/6", "0", "Z/2", "0", "0", "0"],
    ["0", "Z/7", "0", "Z/2", "Z/6", "0", "Z/2", "0", "0"],
    ["0", "Z/2", "Z/7", "Z/2", "Z/2", "Z/2", "0", "Z/2", "0"],
    ["0", "Z/3", "Z/2", "0", "Z/2", "Z/6", "Z/2", "0", "Z/2"],
];

/// H^2 for d = 1..36, transcribed from the published table.
const H2_TABLE: [&str; 36] = [
    "0", "0", "Z/2", "Z/3", "Z/2", "Z/2 + Z/5", "0", "Z/7", "Z/2", "Z/2 + Z/3", "0", "Z/2 + Z/3 + Z/11",
    "0", "Z/13", "0", "0", "Z/2", "Z/2 + Z/17", "0", "Z/2 + Z/19", "0", "0", "0", "Z/2 + Z/23",
    "0", "Z/5", "0", "Z/3", "0", "Z/3 + Z/5 + Z/29", "0", "Z/31", "Z/2", "Z/2", "0", "Z/2 + Z/3",
];

fn group(s: &str) -> AbelianGroup {
    s.parse().expect("group literal")
}

fn graded(entries: &[(usize, &str)]) -> GradedGroup {
    let mut g = GradedGroup::new();
    for (k, s) in entries {
        g.insert(*k, group(s));
    }
    g
}

fn ranges(d: &str) -> VerifyRanges {
    VerifyRanges { d: Some(d.parse().unwrap()), ..Default::default() }
}

/// Runs a verify suite and returns its reports, failing on any non-passing one.
fn suite(suite: Suite, r: &VerifyRanges) -> Result<Vec<Value>, String> {
    let out = cmd_verify(&Context::default(), suite, r).map_err(|e| format!("{suite:?}: {e}"))?;
    let reports: Vec<Value> = out.stdout.lines().map(|l| serde_json::from_str(l).expect("json line")).collect();
    for rep in &reports {
        ensure!(rep["verdict"] == "pass", "{suite:?} failed: {rep}");
    }
    ensure!(out.code == 0, "{suite:?} exited with {}", out.code);
    ensure!(!reports.is_empty(), "{suite:?} produced no reports");
    Ok(reports)
}

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&q| (2..q).take_while(|k| k * k <= q).all(|k| q % k != 0)).collect()
}

/// `{p : d = p^n (p^m + 1), n >= 0, m >= 1}` by exhaustive search.
fn j_oracle(d: u64) -> Vec<u64> {
    primes_below(d)
        .into_iter()
        .filter(|&p| {
            let mut q = 1;
            while q <= d {
                let mut r = p;
                while q * (r + 1) <= d {
                    if q * (r + 1) == d {
                        return true;
                    }
                    r *= p;
                }
                q *= p;
            }
            false
        })
        .collect()
}

fn pascal_row_gcd(d: u64) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..d {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row[1..d as usize].iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn criterion_1() -> Check {
    let md = cmd_table(&Context::default(), 9, 8, Format::Markdown).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<String>> = md
        .lines()
        .skip(2)
        .map(|l| l.trim_matches('|').split('|').map(|c| c.trim().to_string()).collect())
        .collect();
    ensure!(rows.len() == 9, "expected 9 rows, got {}", rows.len());
    let mut nonzero = 0;
    for (d, (row, expected)) in rows.iter().zip(TABLE.iter()).enumerate() {
        ensure!(row[0] == (d + 1).to_string(), "row label {}", row[0]);
        for (i, (got, want)) in row[1..].iter().zip(expected.iter()).enumerate() {
            ensure!(got == want, "d={} i={i}: computed {got}, table says {want}", d + 1);
            nonzero += usize::from(*want != "0");
        }
    }
    let csv = cmd_table(&Context::default(), 6, 5, Format::Csv).map_err(|e| e.to_string())?;
    ensure!(csv.lines().last() == Some("6,0,0,Z/10,Z/6,0,Z/2"), "csv row 6: {:?}", csv.lines().last());
    let json = cmd_table(&Context::default(), 2, 3, Format::Json).map_err(|e| e.to_string())?;
    ensure!(json.trim() == r#"{"1":{"0":"Z"},"2":{"1":"Z/2"}}"#, "json shape: {json}");
    Ok(format!("{nonzero} nonzero cells match, including Z/10 and Z/6 at d=6"))
}

fn criterion_2() -> Check {
    let reports = suite(Suite::H1, &ranges("2..64"))?;
    ensure!(reports.len() == 63, "expected 63 reports");
    for (rep, d) in reports.iter().zip(2u64..) {
        let gcd = pascal_row_gcd(d);
        let expected = if gcd.is_one() { AbelianGroup::zero() } else { AbelianGroup::cyclic(u64::try_from(&gcd).unwrap()) };
        ensure!(group(rep["computed"].as_str().unwrap()) == expected, "d={d}: {}", rep["computed"]);
        let h = ComplexHandle::new(d as usize).unwrap();
        ensure!(homology::homology_at(&h, 1).unwrap() == expected, "d={d}: direct homology disagrees");
        ensure!(rep["witnesses"][0]["value"] == gcd.to_string(), "d={d}: gcd witness {}", rep["witnesses"][0]);
        match arith::prime_power(d) {
            Some((p, _)) => {
                ensure!(expected == AbelianGroup::cyclic(p), "d={d} prime power but H^1 = {expected}");
                let w = &rep["witnesses"][1];
                ensure!(
                    w["ok"] == true && w["value"].as_str().unwrap().ends_with(&format!("[order {p}]")),
                    "d={d}: generator witness {w}"
                );
            }
            None => ensure!(expected.is_zero(), "d={d}: not a prime power but H^1 = {expected}"),
        }
    }
    Ok("H^1 = Z/gcd_k C(d,k) for 2 <= d <= 64, generators of order p certified".into())
}

fn criterion_3() -> Check {
    let reports = suite(Suite::H2, &ranges("2..48"))?;
    for (rep, d) in reports.iter().zip(2usize..) {
        let computed = group(rep["computed"].as_str().unwrap());
        let from_j = j_oracle(d as u64).iter().fold(AbelianGroup::zero(), |g, &p| g.direct_sum(&AbelianGroup::cyclic(p)));
        ensure!(computed == from_j, "d={d}: {computed} but J_d gives {from_j}");
        if d <= 36 {
            ensure!(computed == group(H2_TABLE[d - 1]), "d={d}: {computed} vs table {}", H2_TABLE[d - 1]);
        }
        let witnesses = rep["witnesses"].as_array().unwrap();
        ensure!(witnesses.len() >= j_oracle(d as u64).len(), "d={d}: missing generator witnesses");
    }
    let pick = |d: usize| group(reports[d - 2]["computed"].as_str().unwrap()).to_string();
    Ok(format!("d=12: {}, d=16: {}, d=30: {}; 2 <= d <= 48 match J_d", pick(12), pick(16), pick(30)))
}

fn criterion_4() -> Check {
    let reports = suite(Suite::Top, &ranges("2..12"))?;
    for (rep, d) in reports.iter().zip(2usize..) {
        let all = homology::homology_all(d).unwrap();
        ensure!(all.get(d - 1) == group("Z/2"), "d={d}: H^(d-1) = {}", all.get(d - 1));
        let sub = if d == 3 || d == 4 { group("Z/3") } else { AbelianGroup::zero() };
        if d >= 3 {
            ensure!(all.get(d - 2) == sub, "d={d}: H^(d-2) = {}", all.get(d - 2));
        }
        let names: Vec<&str> = rep["witnesses"].as_array().unwrap().iter().map(|w| w["name"].as_str().unwrap()).collect();
        ensure!(names.iter().any(|n| n.starts_with("<>^c")), "d={d}: no top generator witness");
    }
    Ok("H^{d-1} = Z/2 via <>^c, H^{d-2} as stated, u_m identities exact for 2 <= d <= 12".into())
}

fn criterion_5() -> Check {
    let r = VerifyRanges {
        d: Some("2..20".parse().unwrap()),
        p: Some("2,3,5".parse().unwrap()),
        big_n: Some("1..3".parse().unwrap()),
        ..Default::default()
    };
    let h1 = suite(Suite::Modpn, &r)?;
    suite(Suite::Z1, &r)?;
    for rep in &h1 {
        let (p, d) = (rep["params"]["p"].as_u64().unwrap(), rep["params"]["d"].as_u64().unwrap());
        let member = j_oracle(d).contains(&p) || arith::prime_power(d).is_some_and(|(q, _)| q == p);
        let expected = if member { AbelianGroup::cyclic(p) } else { AbelianGroup::zero() };
        ensure!(group(rep["computed"].as_str().unwrap()) == expected, "p={p} d={d}: {}", rep["computed"]);
    }
    // the two routes, compared explicitly
    for p in [2u64, 3, 5] {
        for n in 1..=3 {
            let ring = LocalRing::new(p, n).unwrap();
            for d in 2..=20 {
                let h = ComplexHandle::new(d).unwrap();
                let mut direct = homology::local_homology(&h, ring, 1).unwrap().orders();
                let mut uct = homology::homology_mod_pn_uct(&h, ring, 1).unwrap();
                direct.sort_unstable();
                uct.sort_unstable();
                ensure!(direct == uct, "p={p} N={n} d={d}: direct {direct:?} vs UCT {uct:?}");
            }
        }
    }
    Ok(format!("{} (p, N, d) cases; local SNF and universal coefficients agree", h1.len()))
}

fn criterion_6() -> Check {
    let kummer = VerifyRanges { p: Some("2,3,5,7,11,13".parse().unwrap()), n: Some(RangeList::single(200)), ..Default::default() };
    suite(Suite::Kummer, &kummer)?;
    let granville = VerifyRanges {
        p: Some("2,3,5,7".parse().unwrap()),
        big_n: Some("1..4".parse().unwrap()),
        n: Some(RangeList::single(120)),
        ..Default::default()
    };
    suite(Suite::Granville, &granville)?;
    let theta = VerifyRanges { p: Some("2,3,5,7".parse().unwrap()), d: Some(RangeList::single(200)), ..Default::default() };
    suite(Suite::Theta, &theta)?;
    Ok("Kummer p <= 13 n <= 200, Granville p <= 7 N <= 4 n <= 120, theta p <= 7 d <= 200".into())
}

fn criterion_7() -> Check {
    let published = [
        (2, graded(&[(0, "Z")])),
        (3, graded(&[(1, "Z/2 + Z/2")])),
        (4, graded(&[(1, "Z/3 + Z/3 + Z/2"), (2, "Z/2 + Z/2 + Z/2")])),
        (5, graded(&[(1, "Z/2 + Z/2"), (2, "Z/3 + Z/3 + Z/2 + Z/2"), (3, "Z/2 + Z/2 + Z/2 + Z/2")])),
    ];
    for (d, expected) in &published {
        let got = kunneth::ext_tensorpower_sd(2, *d).unwrap();
        ensure!(&got == expected, "d={d}: {got} vs {expected}");
    }
    suite(Suite::Kunneth, &ranges("2..5"))?;
    suite(Suite::Lambda, &ranges("1..12"))?;
    for d in 1..=12usize {
        for c in 1..=d {
            let g = kunneth::ext_tensorpower_lambda(c, d).unwrap();
            let rank = (0..c - 1).fold(1u64, |acc, i| acc * (d - 1 - i) as u64 / (i + 1) as u64);
            ensure!(g == graded(&[(d - c, &format!("Z^{rank}"))]), "c={c} d={d}: {g}");
        }
    }
    Ok("four tensor-square lists reproduced; exterior ranks C(d-1,c-1) for c <= d <= 12".into())
}

fn criterion_8() -> Check {
    let r = VerifyRanges { d: Some("2,3,4,5,8,9".parse().unwrap()), rank: Some(2), ..Default::default() };
    let reports = suite(Suite::Hopf, &r)?;
    let mut total = 0;
    for rep in &reports {
        let d = rep["params"]["d"].as_u64().unwrap();
        let p = arith::prime_power(d).unwrap().0;
        ensure!(rep["computed"] == format!("lambda = -1/{p}"), "d={d}: {}", rep["computed"]);
        let name = rep["witnesses"][0]["name"].as_str().unwrap();
        total += name.split_whitespace().next().unwrap().parse::<usize>().unwrap();
    }
    Ok(format!("{total} relation instances hold (padding <= 2); lambda = -1/p is not integral"))
}

type Dense = Vec<Vec<BigInt>>;

/// Textbook dense Smith normal form, independent of the library's sparse one.
fn naive_invariant_factors(mut a: Dense) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let best = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((bi, bj)) = best else { return out };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            match (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero())) {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn dense_mul(a: &Dense, b: &Dense, cols: usize) -> Dense {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, r)| x * &r[j]).sum())
                .collect()
        })
        .collect()
}

fn random_matrices(count: usize) -> Vec<Vec<Vec<i64>>> {
    use proptest::prelude::*;
    let sparse = (1..=40usize, 1..=40usize).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![7 => Just(0i64), 3 => -9i64..=9, 1 => -500i64..=500];
        proptest::collection::vec(proptest::collection::vec(entry, c), r)
    });
    let low_rank = (1..=40usize, 1..=40usize, 1..=6usize).prop_flat_map(|(r, c, k)| {
        (
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, k), r),
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), k),
        )
            .prop_map(move |(l, rr)| {
                (0..r).map(|i| (0..c).map(|j| (0..k).map(|t| l[i][t] * rr[t][j]).sum()).collect()).collect()
            })
    });
    let strategy = prop_oneof![sparse, low_rank];
    let mut runner = TestRunner::deterministic();
    (0..count).map(|_| strategy.new_tree(&mut runner).unwrap().current()).collect()
}

fn criterion_9() -> Check {
    // delta o delta = 0, integrally and localized (the localized matrices are dense)
    for d in 1..=12usize {
        let h = ComplexHandle::new(d).unwrap();
        for k in 0..d.saturating_sub(1) {
            ensure!(homology::check_delta_squared(&h, k), "d={d} k={k}");
        }
    }
    for p in [2u64, 3, 5] {
        for n in 1..=3u32 {
            for d in 2..=12usize {
                for k in 0..d.saturating_sub(2) {
                    let a = complex::localized_differential_matrix(p, n, d, k).unwrap();
                    let b = complex::localized_differential_matrix(p, n, d, k + 1).unwrap();
                    ensure!(b.mul(&a).is_zero(), "localized p={p} N={n} d={d} k={k}");
                }
            }
        }
    }

    // U A V = D on 1000 random matrices against the dense oracle
    let mats = random_matrices(1000);
    for (idx, m) in mats.iter().enumerate() {
        let a = SparseIntMatrix::from_dense(m);
        let s = snf::smith_normal_form(&a, true);
        let t = s.transforms.as_ref().unwrap();
        let dense_a: Dense = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let uav = dense_mul(&dense_mul(&t.left.to_dense(), &dense_a, a.cols), &t.right.to_dense(), a.cols);
        ensure!(uav == s.diagonal_matrix().to_dense(), "matrix {idx}: U A V != D");
        ensure!(s.invariant_factors == naive_invariant_factors(dense_a), "matrix {idx}: invariant factors differ");
    }

    // universal coefficients: |H^k(AC (x) Z/p^N)| = |H^k (x) Z/p^N| |Tor(H^{k+1}, Z/p^N)|,
    // in degree 1 for every case of criterion 5 and in all degrees up to d = 12
    let mut tuples = 0;
    for d in 2..=20usize {
        let h = ComplexHandle::new(d).unwrap();
        let degrees: Vec<usize> = if d <= 12 { (0..d).collect() } else { vec![1] };
        let integral = |k: usize| if k < d { homology::homology_at(&h, k).unwrap() } else { AbelianGroup::zero() };
        for k in degrees {
            let (hk, hk1) = (integral(k), integral(k + 1));
            for p in [2u64, 3, 5] {
                for n in 1..=3u32 {
                    let coeff = AbelianGroup::cyclic(p.pow(n));
                    let ring = LocalRing::new(p, n).unwrap();
                    let expected = hk.tensor(&coeff).direct_sum(&hk1.tor(&coeff)).order().unwrap();
                    let direct = homology::local_homology(&h, ring, k).unwrap().cardinality();
                    ensure!(direct == expected, "p={p} N={n} d={d} k={k}: {direct} vs {expected}");
                    tuples += 1;
                }
            }
        }
    }

    // cache: cold, warm and disabled runs are byte-identical
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cached = Context { cache: Some(Cache::new(dir.path())), ..Context::default() };
    let plain = cmd_table(&Context::default(), 8, 7, Format::Json).map_err(|e| e.to_string())?;
    let cold = cmd_table(&cached, 8, 7, Format::Json).map_err(|e| e.to_string())?;
    let warm = cmd_table(&cached, 8, 7, Format::Json).map_err(|e| e.to_string())?;
    ensure!(plain == cold && cold == warm, "cache changed the output");
    let cache = Cache::new(dir.path());
    let params = serde_json::json!({ "d": 8 });
    let stored = homology::homology_all(8).unwrap().to_json();
    cache.put("homology_all", &params, &stored).map_err(|e| e.to_string())?;
    ensure!(cache.get("homology_all", &params).as_ref() == Some(&stored), "round trip changed the value");
    ensure!(Cache::new(dir.path()).with_version("0.0.0-old").get("homology_all", &params).is_none(), "version not in key");

    Ok(format!("delta^2 = 0; 1000 Smith forms; {tuples} UCT tuples; cache round trip deterministic"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, u64, fn() -> Check); 9] = [
        (1, "table reproduction", 10, criterion_1),
        (2, "H^1 law", 60, criterion_2),
        (3, "H^2 law", 300, criterion_3),
        (4, "top degrees", 300, criterion_4),
        (5, "mod p^N theorem", 120, criterion_5),
        (6, "arithmetic identities", 120, criterion_6),
        (7, "Kunneth products", 30, criterion_7),
        (8, "Hopf extension", 120, criterion_8),
        (9, "property suites", 180, criterion_9),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let limit = Duration::from_secs(limit);
        let verdict = match outcome {
            Ok(msg) if took <= limit => format!("[PASS] criterion {id} ({name}): {msg} [{took:.2?} < {limit:?}]"),
            Ok(msg) => format!("[FAIL] criterion {id} ({name}): {msg} but took {took:.2?}, limit {limit:?}"),
            Err(msg) => format!("[FAIL] criterion {id} ({name}): {msg} [{took:.2?}]"),
        };
        println!("{verdict}");
        if verdict.starts_with("[FAIL]") {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
