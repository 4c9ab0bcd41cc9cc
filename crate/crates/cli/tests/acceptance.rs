//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the lines are always shown by `cargo test`.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{exponents, fixture, json, random_rank2, random_small, run, schema_errors};
use multider::algebra::monomials_of_degree;
use multider::derivations::{hilbert_consistency, parse_der, saito_check, write_der, FreenessCertificate};
use multider::{
    builtin_group, free_basis_search, monomial_group_arrangement, CycloField, Derivation, MultiArrangement, Poly,
    SearchOptions,
};

struct Suite {
    dir: tempfile::TempDir,
    results: Vec<(u32, bool)>,
    /// Certificates for the Hilbert check, with a label.
    certs: Vec<(String, MultiArrangement, FreenessCertificate)>,
}

impl Suite {
    fn cache(&self) -> &Path {
        self.dir.path()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn check(&mut self, n: u32, title: &str, f: impl FnOnce(&mut Suite) -> Result<String, String>) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(self))).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let ok = outcome.is_ok();
        let msg = outcome.unwrap_or_else(|e| e);
        println!("{} {n:>2} {title}: {msg} ({secs:.2} s)", if ok { "PASS" } else { "FAIL" });
        self.results.push((n, ok));
    }

    fn arrangement_file(&self, group: &str) -> Result<String, String> {
        let p = self.path(&format!("{}.marr", group.to_lowercase()));
        if !p.exists() {
            let out = run(self.cache(), &["group", group, "--out", p.to_str().unwrap()]);
            if !out.status.success() {
                return Err(format!("group {group} exited {:?}", out.status.code()));
            }
        }
        Ok(p.to_str().unwrap().to_string())
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn braces(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn verify_fixture(s: &mut Suite, group: &str, der: &str, want: &[u32], limit: Duration) -> Result<String, String> {
    let marr = s.arrangement_file(group)?;
    let start = Instant::now();
    let out = run(s.cache(), &["verify", &marr, fixture(der).to_str().unwrap(), "--json"]);
    let took = start.elapsed();
    let report = json(&out);
    ensure(out.status.code() == Some(0), || format!("exit {:?}: {}", out.status.code(), report["detail"]))?;
    ensure(schema_errors(&report).is_empty(), || "report violates schema".into())?;
    let e = exponents(&report).ok_or("no exponents")?;
    let sum: u32 = e.iter().sum();
    let arr = MultiArrangement::from_marr(&fs::read_to_string(&marr).unwrap()).unwrap();
    ensure(e == want, || format!("exponents {}", braces(&e)))?;
    ensure(sum as u64 == arr.total_multiplicity(), || format!("sum {sum} != |rho|"))?;
    ensure(took < limit, || format!("took {took:?}, target {limit:?}"))?;
    Ok(format!("exit 0, exponents {}, sum {sum} = |rho|", braces(&e)))
}

fn search(
    s: &mut Suite,
    group: &str,
    want: &[u32],
    extra: &[&str],
    limit: Option<Duration>,
) -> Result<String, String> {
    let marr = s.arrangement_file(group)?;
    let der = s.path(&format!("{}_found.der", group.to_lowercase()));
    let mut args = vec!["free", &marr, "--json", "--emit-basis", der.to_str().unwrap()];
    args.extend_from_slice(extra);
    let start = Instant::now();
    let out = run(s.cache(), &args);
    let took = start.elapsed();
    let report = json(&out);
    ensure(out.status.code() == Some(0), || format!("exit {:?}: {}", out.status.code(), report["outcome"]))?;
    ensure(schema_errors(&report).is_empty(), || "report violates schema".into())?;
    let e = exponents(&report).ok_or("no exponents")?;
    ensure(e == want, || format!("exponents {}", braces(&e)))?;
    if let Some(limit) = limit {
        ensure(took < limit, || format!("took {took:?}, target {limit:?}"))?;
    }
    // independent re-verification, once through the binary and once in-process
    let v = run(s.cache(), &["verify", &marr, der.to_str().unwrap(), "--json"]);
    ensure(v.status.code() == Some(0), || "emitted basis fails verify".into())?;
    ensure(exponents(&json(&v)).as_deref() == Some(want), || "verify disagrees".into())?;
    let arr = MultiArrangement::from_marr(&fs::read_to_string(&marr).unwrap()).unwrap();
    let (_, _, basis) = parse_der(&fs::read_to_string(&der).unwrap()).map_err(|e| e.to_string())?;
    let cert = saito_check(&basis, &arr).map_err(|e| e.to_string())?;
    let sum: u32 = e.iter().sum();
    s.certs.push((group.to_string(), arr, cert));
    Ok(format!(
        "exponents {}, sum {sum}, certificate re-verified, search {:.1} s",
        braces(&e),
        took.as_secs_f64()
    ))
}

fn golden_counts(s: &mut Suite) -> Result<String, String> {
    let want = [("G25", 12, 24), ("G26", 21, 33), ("G32", 40, 80)];
    for (g, h, rho) in want {
        let out = run(s.cache(), &["group", g, "--json"]);
        let r = json(&out);
        ensure(out.status.success(), || format!("group {g} failed"))?;
        let got = (r["detail"]["hyperplanes"].as_u64(), r["detail"]["rho"].as_u64());
        ensure(got == (Some(h), Some(rho)), || format!("{g}: {got:?}"))?;
    }
    let g26 = builtin_group("G26", Some(s.cache())).map_err(|e| e.to_string())?;
    let orders: BTreeMap<u32, usize> = g26.reflection_orders();
    ensure(orders == BTreeMap::from([(2, 9), (3, 24)]), || format!("G26 reflection orders {orders:?}"))?;
    let mut compared = 0;
    for r in 1..=4u32 {
        for p in (1..=r).filter(|p| r % p == 0) {
            for l in 1..=3usize {
                let name = format!("G({r},{p},{l})");
                let from_group = builtin_group(&name, None)
                    .and_then(|g| g.reflection_arrangement())
                    .map_err(|e| format!("{name}: {e}"))?;
                let closed = monomial_group_arrangement(r, p, l).map_err(|e| format!("{name}: {e}"))?;
                ensure(from_group == closed, || format!("{name} differs"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("12/21/40 hyperplanes, |rho| 24/33/80, G26 9+24 reflections, {compared} monomial groups agree"))
}

fn rank_two(s: &mut Suite) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fields = [CycloField::get(1).unwrap(), CycloField::get(3).unwrap()];
    for i in 0..200 {
        let f = fields[i % 2];
        let a = random_rank2(&mut rng, f, 5, 12);
        let out = free_basis_search(&a, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let cert = out.certificate().ok_or_else(|| format!("case {i} undetermined:\n{}", a.to_marr()))?;
        let sum: u64 = cert.degrees.iter().map(|&d| d as u64).sum();
        ensure(sum == a.total_multiplicity(), || format!("case {i}: sum {sum}"))?;
        s.certs.push((format!("rank-2 case {i}"), a, cert.clone()));
    }
    Ok("200/200 certified over Q and Q(zeta_3), sums equal |nu|".into())
}

fn hilbert(s: &mut Suite) -> Result<String, String> {
    let labels: Vec<&str> = ["G25", "G26", "G32"]
        .into_iter()
        .filter(|g| s.certs.iter().any(|(l, _, _)| l == g))
        .collect();
    ensure(labels.len() == 3, || format!("certificates available only for {labels:?}"))?;
    ensure(s.certs.len() == 203, || format!("{} certificates collected", s.certs.len()))?;
    let mut degrees = 0;
    for (label, arr, cert) in &s.certs {
        let top = cert.degrees.iter().max().copied().unwrap_or(0) + 3;
        let report = hilbert_consistency(cert, arr, top).map_err(|e| e.to_string())?;
        if let Some(bad) = report.rows.iter().find(|r| r.predicted != r.computed) {
            return Err(format!(
                "{label}: degree {} has dimension {} but exponents predict {}",
                bad.degree, bad.computed, bad.predicted
            ));
        }
        degrees += report.rows.len();
    }
    Ok(format!("{} certificates, {degrees} graded pieces, all equal", s.certs.len()))
}

fn product_rule(_: &mut Suite) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fields = [CycloField::get(1).unwrap(), CycloField::get(3).unwrap()];
    let opts = SearchOptions::default();
    for i in 0..20 {
        let f = fields[i % 2];
        let (a, b) = (random_small(&mut rng, f), random_small(&mut rng, f));
        let ea = free_basis_search(&a, &opts).map_err(|e| e.to_string())?.exponents().ok_or("factor undetermined")?;
        let eb = free_basis_search(&b, &opts).map_err(|e| e.to_string())?.exponents().ok_or("factor undetermined")?;
        let prod = a.product(&b).map_err(|e| e.to_string())?;
        let ep = free_basis_search(&prod, &opts).map_err(|e| e.to_string())?.exponents();
        let mut union = [ea, eb].concat();
        union.sort_unstable();
        ensure(ep.as_ref() == Some(&union), || format!("pair {i}: {ep:?} vs {union:?}"))?;
    }
    Ok("20/20 products have the union of factor exponents".into())
}

/// Add 1 to one coefficient of one basis element.
fn perturb(rng: &mut ChaCha8Rng, basis: &[Derivation]) -> (Vec<Derivation>, String) {
    let i = rng.gen_range(0..basis.len());
    let j = rng.gen_range(0..basis[i].nvars());
    let f = &basis[i].coeffs()[j];
    let (field, l) = (f.field(), f.nvars());
    let monos = monomials_of_degree(l, basis[i].pdeg().unwrap());
    let m = if f.is_zero() || rng.gen_bool(0.25) {
        monos[rng.gen_range(0..monos.len())]
    } else {
        f.terms()[rng.gen_range(0..f.len())].0
    };
    let bump = Poly::monomial(l, m, field.one());
    let mut coeffs = basis[i].coeffs().to_vec();
    coeffs[j] = &coeffs[j] + &bump;
    let mut out = basis.to_vec();
    out[i] = Derivation::new(coeffs).unwrap();
    (out, format!("derivation {}, D_{}, {}", i + 1, j + 1, bump))
}

fn negative_control(s: &mut Suite) -> Result<String, String> {
    let marr = s.arrangement_file("G25")?;
    let (field, l, basis) = parse_der(&fs::read_to_string(fixture("g25.der")).unwrap()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let der = s.path("perturbed.der");
    for k in 0..20 {
        let (bad, what) = perturb(&mut rng, &basis);
        fs::write(&der, write_der(field, l, &bad)).unwrap();
        let out = run(s.cache(), &["verify", &marr, der.to_str().unwrap(), "--json"]);
        let r = json(&out);
        ensure(out.status.code() == Some(1), || format!("perturbation {k} ({what}) exit {:?}", out.status.code()))?;
        let named = r["hyperplane_table"].as_array().unwrap().iter().filter(|h| h["ok"] == false).count();
        ensure(named > 0, || format!("perturbation {k} ({what}): {} but no hyperplane named", r["detail"]))?;
    }
    Ok("20/20 perturbations rejected with exit 1 and a violated hyperplane".into())
}

fn main() {
    let mut s = Suite {
        dir: tempfile::tempdir().expect("tempdir"),
        results: Vec::new(),
        certs: Vec::new(),
    };
    s.check(1, "fixture verification G25", |s| {
        verify_fixture(s, "G25", "g25.der", &[8, 8, 8], Duration::from_secs(5))
    });
    s.check(2, "fixture verification G26", |s| {
        verify_fixture(s, "G26", "g26.der", &[10, 10, 13], Duration::from_secs(10))
    });
    s.check(3, "search G25", |s| search(s, "G25", &[8, 8, 8], &[], Some(Duration::from_secs(600))));
    s.check(4, "search G26", |s| search(s, "G26", &[10, 10, 13], &[], Some(Duration::from_secs(1200))));
    s.check(5, "search G32 (--allow-long)", |s| search(s, "G32", &[20, 20, 20, 20], &["--allow-long"], None));
    s.check(6, "group golden counts", golden_counts);
    s.check(7, "rank-2 totality", rank_two);
    s.check(8, "Hilbert consistency", hilbert);
    s.check(9, "product rule", product_rule);
    s.check(10, "negative control", negative_control);
    let failed: Vec<u32> = s.results.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    println!("{} of {} criteria passed", s.results.len() - failed.len(), s.results.len());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
