#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use multider::{CycloField, CycloScalar, MultiArrangement};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multider"))
}

/// Run the binary with a private group cache.
pub fn run(cache: &Path, args: &[&str]) -> Output {
    bin().env("MULTIDER_CACHE", cache).args(args).output().expect("spawn multider")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

pub fn exponents(v: &serde_json::Value) -> Option<Vec<u32>> {
    v["exponents"].as_array().map(|a| a.iter().map(|x| x.as_u64().unwrap() as u32).collect())
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn schema() -> serde_json::Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

pub fn schema_errors(report: &serde_json::Value) -> Vec<String> {
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    validator.iter_errors(report).map(|e| e.to_string()).collect()
}

fn small_scalar(rng: &mut ChaCha8Rng, f: &'static CycloField) -> CycloScalar {
    let a = f.int(rng.gen_range(-3..=3));
    if f.conductor() == 1 {
        a
    } else {
        &a + &(&f.int(rng.gen_range(-3..=3)) * &f.zeta_pow(1))
    }
}

/// Essential rank-2 multi-arrangement with at most `max_planes` hyperplanes
/// and |ν| ≤ `max_total`.
pub fn random_rank2(rng: &mut ChaCha8Rng, f: &'static CycloField, max_planes: usize, max_total: u32) -> MultiArrangement {
    loop {
        let k = rng.gen_range(2..=max_planes);
        let mut budget = max_total;
        let mut raw = Vec::new();
        for i in 0..k {
            let left = (k - i - 1) as u32;
            if budget <= left {
                break;
            }
            let m = rng.gen_range(1..=(budget - left).min(5));
            budget -= m;
            raw.push((vec![small_scalar(rng, f), small_scalar(rng, f)], m));
        }
        raw.retain(|(v, _)| v.iter().any(|c| !c.is_zero()));
        let Ok(a) = MultiArrangement::normalize(f, 2, raw) else { continue };
        if a.rank() == 2 && a.total_multiplicity() <= max_total as u64 {
            return a;
        }
    }
}

/// A rank-1 or rank-2 arrangement in one or two variables.
pub fn random_small(rng: &mut ChaCha8Rng, f: &'static CycloField) -> MultiArrangement {
    if rng.gen_bool(0.3) {
        MultiArrangement::normalize(f, 1, vec![(vec![f.one()], rng.gen_range(1..=4))]).unwrap()
    } else {
        random_rank2(rng, f, 3, 6)
    }
}
