#![allow(dead_code)]

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

/// Rank by plain Gaussian elimination, kept separate from the library's linear algebra.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let t = rows[r][j].clone() * f.clone();
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// `(file stem, contents)` for every `*.model` in a directory, sorted by name.
pub fn fixtures_in(dir: &std::path::Path) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "model"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

pub fn fixtures() -> Vec<(String, String)> {
    fixtures_in(&fixture_dir())
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs one acceptance criterion, prints its verdict line and fails the test on error or overrun.
pub fn criterion(n: u32, what: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let res = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let (ok, detail) = match &res {
        Ok(d) => (in_time, d.clone()),
        Err(e) => (false, e.clone()),
    };
    println!(
        "criterion {n:>2} {} {what}: {detail} [{:.3}s, limit {:.0}s]",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(res.is_ok(), "criterion {n}: {detail}");
    assert!(in_time, "criterion {n}: {elapsed:?} exceeds {limit:?}");
}
